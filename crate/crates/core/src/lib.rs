//! Almost-cyclic matrices over finite fields, Sylow exponents of classical
//! groups, and the dimension-versus-order screening used to rule out
//! representations of groups of Lie type.

pub mod bounds;
pub mod fixtures;
pub mod formats;
pub mod gf;
pub mod groupscan;
pub mod matgf;
pub mod numth;
pub mod poly;
pub mod predicate;

pub use gf::{Fel, Field, GfError};
pub use matgf::{Mat, MatError};
pub use poly::{LinearPower, Poly, PolyError};
pub use predicate::{is_almost_cyclic, oracle_is_almost_cyclic, AccycError, Mode, Verdict};
