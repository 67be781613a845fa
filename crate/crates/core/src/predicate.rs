//! The almost-cyclicity test.
//!
//! A square matrix is almost cyclic when it is similar to `diag(a Id_k, M1)`
//! with `M1` cyclic. [`Mode::Appendix`] reproduces the classical shortcut: the
//! quotient `charpoly / minpoly` is 1 or a power of a single linear factor.
//! That shortcut is exact for semisimple matrices only; [`Mode::Strict`] adds a
//! Jordan-block count that makes it exact in general.

use std::fmt;

use thiserror::Error;

use crate::matgf::{Mat, MatError};
use crate::poly::{LinearPower, PolyError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AccycError {
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error("minimal polynomial does not divide the characteristic polynomial")]
    MinpolyNotDividing,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Mode {
    Strict,
    Appendix,
}

impl Mode {
    pub fn name(self) -> &'static str {
        match self {
            Mode::Strict => "strict",
            Mode::Appendix => "appendix",
        }
    }
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl std::str::FromStr for Mode {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "strict" => Ok(Mode::Strict),
            "appendix" => Ok(Mode::Appendix),
            other => Err(format!("unknown mode {other:?} (expected strict or appendix)")),
        }
    }
}

/// How a verdict was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Method {
    Strict,
    Appendix,
    InvariantFactors,
}

impl fmt::Display for Method {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Method::Strict => "strict",
            Method::Appendix => "appendix",
            Method::InvariantFactors => "oracle",
        })
    }
}

/// An eigenvalue in the base field with its multiplicities.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Eigen {
    pub lambda: u32,
    pub algebraic: usize,
    pub geometric: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Verdict {
    pub almost_cyclic: bool,
    pub mode: Method,
    /// Eigenvalue of the scalar block, present exactly when `k >= 1`.
    pub alpha: Option<u32>,
    /// Multiplicity of `x - alpha` in `charpoly / minpoly`.
    pub k: usize,
    pub is_cyclic: bool,
    pub is_scalar: bool,
    pub eig_mults: Vec<Eigen>,
}

impl Verdict {
    /// `<name>: almost_cyclic=.. mode=.. alpha=.. k=.. cyclic=.. scalar=..`
    pub fn report_line(&self, name: &str) -> String {
        let alpha = self.alpha.map_or_else(|| "-".to_string(), |a| a.to_string());
        format!(
            "{name}: almost_cyclic={} mode={} alpha={alpha} k={} cyclic={} scalar={}",
            self.almost_cyclic, self.mode, self.k, self.is_cyclic, self.is_scalar
        )
    }
}

fn square(m: &Mat) -> Result<(), AccycError> {
    if m.is_square() {
        Ok(())
    } else {
        Err(MatError::NotSquare { rows: m.rows(), cols: m.cols() }.into())
    }
}

pub fn is_almost_cyclic(m: &Mat, mode: Mode) -> Result<Verdict, AccycError> {
    square(m)?;
    let cp = m.charpoly()?;
    let mp = m.minpoly()?;
    let quotient = cp.div_exact(&mp)?.ok_or(AccycError::MinpolyNotDividing)?;
    let eig_mults = eigen_profile(m)?;
    let is_scalar = m.scalar_value().is_some();
    let method = match mode {
        Mode::Strict => Method::Strict,
        Mode::Appendix => Method::Appendix,
    };
    let (almost_cyclic, alpha, k) = match quotient.is_power_of_linear()? {
        LinearPower::Constant => (true, None, 0),
        LinearPower::NotAPower => (false, None, 0),
        LinearPower::Power { alpha, k } => {
            let ok = match mode {
                Mode::Appendix => true,
                Mode::Strict => blocks_of_size_two_or_more(m, alpha)? <= 1,
            };
            (ok, Some(alpha), k)
        }
    };
    Ok(Verdict {
        almost_cyclic,
        mode: method,
        alpha,
        k,
        is_cyclic: quotient.is_one(),
        is_scalar,
        eig_mults,
    })
}

/// Number of Jordan blocks of size at least 2 for eigenvalue `alpha`.
fn blocks_of_size_two_or_more(m: &Mat, alpha: u32) -> Result<usize, AccycError> {
    let n1 = m.sub_scalar(alpha)?;
    let n2 = n1.mul(&n1)?;
    Ok(n2.nullity() - n1.nullity())
}

/// Reference decision from the invariant factors: almost cyclic iff every
/// factor but the last equals the same `x - alpha`.
pub fn oracle_is_almost_cyclic(m: &Mat) -> Result<Verdict, AccycError> {
    square(m)?;
    let factors = m.invariant_factors()?;
    let t = factors.len();
    let is_scalar = m.scalar_value().is_some();
    let eig_mults = eigen_profile(m)?;
    let mut verdict = Verdict {
        almost_cyclic: true,
        mode: Method::InvariantFactors,
        alpha: None,
        k: 0,
        is_cyclic: t <= 1,
        is_scalar,
        eig_mults,
    };
    if t > 1 {
        let first = &factors[0];
        let uniform = first.degree() == Some(1) && factors[..t - 1].iter().all(|f| f == first);
        if uniform {
            verdict.alpha = Some(m.field().neg(first.coeff(0)));
            verdict.k = t - 1;
        } else {
            verdict.almost_cyclic = false;
        }
    }
    Ok(verdict)
}

/// Eigenvalues in the base field with algebraic and geometric multiplicity.
pub fn eigen_profile(m: &Mat) -> Result<Vec<Eigen>, AccycError> {
    square(m)?;
    let cp = m.charpoly()?;
    if m.rows() == 0 {
        return Ok(Vec::new());
    }
    cp.roots_in_field()?
        .into_iter()
        .map(|(lambda, algebraic)| {
            let geometric = m.sub_scalar(lambda)?.nullity();
            Ok(Eigen { lambda, algebraic, geometric })
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gf::Field;

    fn f(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    fn both(m: &Mat) -> (bool, bool) {
        (
            is_almost_cyclic(m, Mode::Appendix).unwrap().almost_cyclic,
            is_almost_cyclic(m, Mode::Strict).unwrap().almost_cyclic,
        )
    }

    #[test]
    fn diagonal_examples() {
        let f7 = f(7);
        assert_eq!(both(&Mat::diag(&f7, &[1, 1, 2, 2])), (false, false));
        let v = is_almost_cyclic(&Mat::diag(&f7, &[1, 1, 1, 2]), Mode::Strict).unwrap();
        assert!(v.almost_cyclic);
        assert_eq!((v.alpha, v.k, v.is_cyclic), (Some(1), 2, false));
    }

    #[test]
    fn paired_jordan_blocks_separate_the_modes() {
        let f2 = f(2);
        let j = Mat::jordan(&f2, 2, 1);
        let jj = Mat::block_diag(&[j.clone(), j.clone()]).unwrap();
        assert_eq!(both(&jj), (true, false));
        assert!(!oracle_is_almost_cyclic(&jj).unwrap().almost_cyclic);
        let jj1 = Mat::block_diag(&[j.clone(), j, Mat::identity(&f2, 1)]).unwrap();
        assert!(!oracle_is_almost_cyclic(&jj1).unwrap().almost_cyclic);
        assert!(!is_almost_cyclic(&jj1, Mode::Strict).unwrap().almost_cyclic);
    }

    #[test]
    fn scalar_and_companion() {
        let f5 = f(5);
        let s = Mat::scalar(&f5, 3, 4);
        let v = is_almost_cyclic(&s, Mode::Strict).unwrap();
        assert!(v.almost_cyclic && v.is_scalar);
        let o = oracle_is_almost_cyclic(&s).unwrap();
        assert_eq!((o.almost_cyclic, o.alpha, o.k), (true, Some(4), 2));
        let g = crate::poly::Poly::new(&f5, vec![2, 0, 1, 1]);
        let c = Mat::companion(&g).unwrap();
        let v = oracle_is_almost_cyclic(&c).unwrap();
        assert!(v.almost_cyclic && v.is_cyclic && v.alpha.is_none());
    }

    #[test]
    fn eigen_profile_examples() {
        let e = |lambda, algebraic, geometric| Eigen { lambda, algebraic, geometric };
        assert_eq!(eigen_profile(&Mat::identity(&f(3), 5)).unwrap(), vec![e(1, 5, 5)]);
        assert_eq!(eigen_profile(&Mat::jordan(&f(2), 3, 0)).unwrap(), vec![e(0, 3, 1)]);
        assert_eq!(
            eigen_profile(&Mat::diag(&f(5), &[1, 1, 2])).unwrap(),
            vec![e(1, 2, 2), e(2, 1, 1)]
        );
    }

    #[test]
    fn report_line_format() {
        let v = is_almost_cyclic(&Mat::diag(&f(7), &[1, 1, 1, 2]), Mode::Strict).unwrap();
        assert_eq!(
            v.report_line("m.gfmat"),
            "m.gfmat: almost_cyclic=true mode=strict alpha=1 k=2 cyclic=false scalar=false"
        );
    }

    #[test]
    fn rejects_rectangular() {
        let m = Mat::zero(&f(2), 2, 3);
        assert!(is_almost_cyclic(&m, Mode::Strict).is_err());
        assert!(oracle_is_almost_cyclic(&m).is_err());
    }
}
