//! Explicit matrix groups: closure enumeration, random elements, per-order
//! almost-cyclicity surveys and brute-force Sylow exponents.

use thiserror::Error;

use crate::gf::Field;
use crate::matgf::{Mat, MatError};
use crate::predicate::AccycError;

pub mod closure;
pub mod kernel;
pub mod oracle;
pub mod random;
pub mod scan;

pub use closure::{closure_enumerate, Closure};
pub use oracle::{eta_oracle, eta_oracle_sl, frobenius_matrix, linear_group_orders, max_p_order, restrict_scalars, OrderStats};
pub use random::random_elements;
pub use scan::{scan_almost_cyclic, Policy, ScanOptions, ScanReport};

/// Default element cap for closure enumeration.
pub const DEFAULT_CLOSURE_CAP: usize = 2_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ScanError {
    #[error("generator {0} is singular")]
    SingularGenerator(usize),
    #[error("closure exceeds {cap} elements")]
    CapExceeded { cap: usize },
    #[error("no generators")]
    NoGenerators,
    #[error("generators must be square matrices of one size over one field")]
    ShapeMismatch,
    #[error("sample count must be at least 1")]
    ZeroCount,
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Accyc(#[from] AccycError),
}

/// A matrix group given by generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GroupSpec {
    field: Field,
    dim: usize,
    gens: Vec<Mat>,
    pub name: Option<String>,
    pub order: Option<u64>,
}

impl GroupSpec {
    pub fn new(gens: Vec<Mat>, name: Option<String>, order: Option<u64>) -> Result<GroupSpec, ScanError> {
        let first = gens.first().ok_or(ScanError::NoGenerators)?;
        let (field, dim) = (first.field().clone(), first.rows());
        for (i, g) in gens.iter().enumerate() {
            if !g.is_square() || g.rows() != dim || g.field() != &field {
                return Err(ScanError::ShapeMismatch);
            }
            if !g.is_invertible() {
                return Err(ScanError::SingularGenerator(i));
            }
        }
        Ok(GroupSpec { field, dim, gens, name, order })
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn gens(&self) -> &[Mat] {
        &self.gens
    }

    pub fn label(&self) -> String {
        self.name.clone().unwrap_or_else(|| format!("<{} generators>", self.gens.len()))
    }

    /// Conjugate every generator by `c`: `g -> c^-1 g c`.
    pub fn conjugate(&self, c: &Mat) -> Result<GroupSpec, ScanError> {
        let ci = c.inverse()?;
        let gens = self
            .gens
            .iter()
            .map(|g| ci.mul(g).and_then(|x| x.mul(c)))
            .collect::<Result<Vec<_>, _>>()?;
        GroupSpec::new(gens, self.name.clone(), self.order)
    }
}

/// `|GL_n(q)|`, or `None` on overflow.
pub fn gl_order(n: u32, q: u64) -> Option<u64> {
    let qn = q.checked_pow(n)?;
    (0..n).try_fold(1u64, |acc, i| acc.checked_mul(qn - q.checked_pow(i)?))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spec_validation() {
        let f = Field::prime(3).unwrap();
        assert_eq!(GroupSpec::new(vec![], None, None), Err(ScanError::NoGenerators));
        let sing = Mat::zero(&f, 2, 2);
        assert_eq!(
            GroupSpec::new(vec![Mat::identity(&f, 2), sing], None, None),
            Err(ScanError::SingularGenerator(1))
        );
        let other = Mat::identity(&Field::prime(5).unwrap(), 2);
        assert_eq!(
            GroupSpec::new(vec![Mat::identity(&f, 2), other], None, None),
            Err(ScanError::ShapeMismatch)
        );
    }

    #[test]
    fn gl_orders() {
        assert_eq!(gl_order(2, 2), Some(6));
        assert_eq!(gl_order(3, 2), Some(168));
        assert_eq!(gl_order(3, 5), Some(1_488_000));
        assert_eq!(gl_order(40, 1 << 20), None);
    }
}
