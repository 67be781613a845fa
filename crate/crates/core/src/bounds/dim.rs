//! Lower bounds for the degree of a nontrivial cross-characteristic
//! projective representation of a classical group.

use std::fmt;
use std::str::FromStr;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::BoundsError;

/// Lower-bound formulas. `Md6*` hold for every nontrivial representation,
/// `Gmst2*` for the non-Weil ones. `Md6_5` and `Gmst2C` read `n` as half the
/// natural dimension, as do `Md6_4`, `Md6_6`, `Md6_7` and `Md6_8`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum DimFormula {
    /// `PSL_2(q)`
    Md6_1,
    /// `PSL_n(q)`
    Md6_2,
    /// `PSU_n(q)`
    Md6_3,
    /// `PSp_2n(q)`, q odd
    Md6_4,
    /// `Sp_2n(q)`, q even
    Md6_5,
    /// `Omega_2n+1(q)`
    Md6_6,
    /// `POmega+_2n(q)`
    Md6_7,
    /// `POmega-_2n(q)`
    Md6_8,
    /// non-Weil `PSL_n(q)`
    Gmst2A,
    /// non-Weil `PSU_n(q)`, n >= 5
    Gmst2B1,
    /// non-Weil `PSU_4(q)`
    Gmst2B2,
    /// non-Weil `PSU_3(q)`
    Gmst2B3,
    /// non-Weil `PSp_2n(q)`
    Gmst2C,
    /// Minimal degree `2^e (2^(2e+1) - 1)` of `2B2(2^(2e+1))`.
    Suzuki,
}

impl DimFormula {
    pub const ALL: [DimFormula; 14] = [
        DimFormula::Md6_1,
        DimFormula::Md6_2,
        DimFormula::Md6_3,
        DimFormula::Md6_4,
        DimFormula::Md6_5,
        DimFormula::Md6_6,
        DimFormula::Md6_7,
        DimFormula::Md6_8,
        DimFormula::Gmst2A,
        DimFormula::Gmst2B1,
        DimFormula::Gmst2B2,
        DimFormula::Gmst2B3,
        DimFormula::Gmst2C,
        DimFormula::Suzuki,
    ];

    pub fn id(self) -> &'static str {
        match self {
            DimFormula::Md6_1 => "md6.1",
            DimFormula::Md6_2 => "md6.2",
            DimFormula::Md6_3 => "md6.3",
            DimFormula::Md6_4 => "md6.4",
            DimFormula::Md6_5 => "md6.5",
            DimFormula::Md6_6 => "md6.6",
            DimFormula::Md6_7 => "md6.7",
            DimFormula::Md6_8 => "md6.8",
            DimFormula::Gmst2A => "gmst2.A",
            DimFormula::Gmst2B1 => "gmst2.B1",
            DimFormula::Gmst2B2 => "gmst2.B2",
            DimFormula::Gmst2B3 => "gmst2.B3",
            DimFormula::Gmst2C => "gmst2.C",
            DimFormula::Suzuki => "ho-exc.2B2",
        }
    }

    /// The rank parameter the formula is pinned to, if any.
    pub fn fixed_n(self) -> Option<u64> {
        match self {
            DimFormula::Md6_1 => Some(2),
            DimFormula::Gmst2B3 => Some(3),
            DimFormula::Gmst2B2 => Some(4),
            _ => None,
        }
    }

    /// The finitely many `(n, q)` values where a printed constant replaces
    /// the formula.
    pub fn overrides(self) -> &'static [(u64, u64, u64)] {
        match self {
            DimFormula::Md6_1 => &[(2, 4, 2), (2, 9, 3)],
            DimFormula::Md6_2 => &[(3, 2, 2), (3, 4, 4), (4, 2, 7), (4, 3, 26)],
            DimFormula::Md6_3 => &[(4, 2, 4), (4, 3, 6)],
            DimFormula::Md6_5 => &[(2, 2, 2)],
            DimFormula::Md6_6 => &[(3, 3, 27)],
            DimFormula::Md6_7 => &[(4, 2, 8)],
            DimFormula::Md6_8 => &[(4, 2, 32), (4, 4, 1026), (5, 2, 151), (5, 3, 2376)],
            DimFormula::Gmst2A => &[(4, 3, 26), (6, 2, 61), (6, 3, 362)],
            _ => &[],
        }
    }
}

impl fmt::Display for DimFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.id())
    }
}

impl FromStr for DimFormula {
    type Err = BoundsError;
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DimFormula::ALL
            .into_iter()
            .find(|d| d.id() == s)
            .ok_or_else(|| BoundsError::UnknownFormula(s.to_string()))
    }
}

/// How `kappa` in the non-Weil `PSL_n` bound is chosen.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Kappa {
    /// `kappa = 1`, the weakest bound.
    #[default]
    WorstCase,
    /// `kappa = 1` iff `ell` divides `(q^(n-2) - 1)/(q - 1)`.
    Ell(u64),
}

fn int(n: u64) -> BigInt {
    BigInt::from(n)
}

fn domain(formula: DimFormula, n: u64, q: &BigInt, why: &str) -> BoundsError {
    BoundsError::OutOfDomain(format!("{formula} at n={n}, q={q}: {why}"))
}

fn check_prime_power(formula: DimFormula, n: u64, q: &BigInt) -> Result<(), BoundsError> {
    let ok = match u64::try_from(q) {
        Ok(v) => crate::gf::prime_power(v).is_some(),
        // Too large to factor cheaply; only derived towers reach this.
        Err(_) => q > &BigInt::one(),
    };
    if ok {
        Ok(())
    } else {
        Err(domain(formula, n, q, "q is not a prime power"))
    }
}

/// Exact lower bound. `n` is ignored by formulas with a fixed rank unless it
/// contradicts that rank.
pub fn dim_lower(formula: DimFormula, n: u64, q: &BigInt, kappa: Kappa) -> Result<BigInt, BoundsError> {
    check_prime_power(formula, n, q)?;
    if let Some(fixed) = formula.fixed_n() {
        if n != fixed && n != 0 {
            return Err(domain(formula, n, q, &format!("rank is fixed at {fixed}")));
        }
    }
    let n = formula.fixed_n().unwrap_or(n);
    if let Ok(qs) = u64::try_from(q) {
        if let Some(&(_, _, v)) = formula.overrides().iter().find(|o| o.0 == n && o.1 == qs) {
            return Ok(int(v));
        }
    }
    let odd = q.is_odd();
    let one = BigInt::one();
    let qp = |e: u64| q.pow(e as u32);
    let need = |cond: bool, why: &str| if cond { Ok(()) } else { Err(domain(formula, n, q, why)) };
    let v = match formula {
        DimFormula::Md6_1 => {
            need(q >= &int(4), "needs q >= 4")?;
            (q - 1) / if odd { 2 } else { 1 }
        }
        DimFormula::Md6_2 => {
            need(n > 2, "needs n > 2")?;
            (qp(n) - 1) / (q - 1) - 2
        }
        DimFormula::Md6_3 => {
            need(n > 2, "needs n > 2")?;
            if n % 2 == 1 {
                (qp(n) - q) / (q + 1)
            } else {
                (qp(n) - 1) / (q + 1)
            }
        }
        DimFormula::Md6_4 => {
            need(n > 1 && odd, "needs n > 1 and q odd")?;
            (qp(n) - 1) / 2
        }
        DimFormula::Md6_5 => {
            need(n > 1 && !odd, "needs n > 1 and q even")?;
            q * (qp(n) - 1) * (qp(n - 1) - 1) / (2 * (q + 1))
        }
        DimFormula::Md6_6 => {
            need(n > 2 && odd, "needs n > 2 and q odd")?;
            if q == &int(3) {
                (qp(n) - 1) * (qp(n) - 3) / 8
            } else {
                (qp(2 * n) - 1) / (q * q - 1) - 2
            }
        }
        DimFormula::Md6_7 => {
            need(n > 3, "needs n > 3")?;
            if q < &int(4) {
                (qp(n) - 1) * (qp(n - 1) - 1) / (q * q - 1)
            } else {
                (qp(n) - 1) * (qp(n - 1) + q) / (q * q - 1) - 2
            }
        }
        DimFormula::Md6_8 => {
            need(n > 3, "needs n > 3")?;
            q * (qp(n) + 1) * (qp(n - 2) - 1) / (q * q - 1) - 1
        }
        DimFormula::Gmst2A => {
            need(n >= 3, "needs n >= 3")?;
            if let Ok(qs) = u64::try_from(q) {
                need(!matches!((n, qs), (3, 2) | (3, 4) | (4, 2)), "excluded pair")?;
            }
            match n {
                3 => (q - 1) * (q * q - 1) / (q - 1u32).gcd(&int(3)),
                4 => (q - 1) * (qp(3) - 1) / (q - 1u32).gcd(&int(2)),
                _ => {
                    let kappa = match kappa {
                        Kappa::WorstCase => one.clone(),
                        Kappa::Ell(ell) => {
                            let t: BigInt = (qp(n - 2) - 1) / (q - 1);
                            if (t % int(ell)).is_zero() {
                                one.clone()
                            } else {
                                BigInt::zero()
                            }
                        }
                    };
                    (qp(n - 1) - 1) * ((qp(n - 2) - q) / (q - 1) - kappa)
                }
            }
        }
        DimFormula::Gmst2B1 => {
            need(n >= 5, "needs n >= 5")?;
            need(!(n == 6 && q == &int(2)), "excluded pair")?;
            let tail = if n % 2 == 1 { qp(n - 2) - q } else { qp(n - 2) - 1 };
            qp(n - 2) * (q - 1) * tail / (q + 1)
        }
        DimFormula::Gmst2B2 => {
            need(q > &int(3), "needs q > 3")?;
            let base = (q * q + 1) * (q * q - q + 1);
            if odd {
                (base - 2) / 2
            } else {
                base - 1
            }
        }
        DimFormula::Gmst2B3 => {
            need(q >= &int(5), "needs q >= 5")?;
            if ((q + 1u32) % 3u32).is_zero() {
                (q - 1) * (q * q + 3 * q + 2) / 6
            } else {
                (2 * qp(3) - q * q + 2 * q - 3) / 3
            }
        }
        DimFormula::Gmst2C => {
            need(n >= 2, "needs n >= 2")?;
            need(!(n == 3 && q == &int(2)), "excluded pair")?;
            (qp(n) - 1) * (qp(n) - q) / (2 * (q + 1))
        }
        DimFormula::Suzuki => {
            let e = suzuki_e(q).ok_or_else(|| domain(formula, n, q, "q must be 2^(2e+1), e >= 1"))?;
            int(2).pow(e as u32) * (q - 1)
        }
    };
    debug_assert!(v >= one, "{formula} gave {v} at n={n} q={q}");
    Ok(v)
}

/// `e` with `q = 2^(2e+1)`, `e >= 1`.
pub fn suzuki_e(q: &BigInt) -> Option<u64> {
    if q <= &int(2) || q.is_odd() {
        return None;
    }
    let bits = q.bits();
    let pow2 = int(1) << (bits - 1);
    (q == &pow2 && (bits - 1) % 2 == 1).then(|| (bits - 2) / 2)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn d(f: &str, n: u64, q: u64) -> BigInt {
        dim_lower(f.parse().unwrap(), n, &int(q), Kappa::WorstCase).unwrap()
    }

    #[test]
    fn printed_examples() {
        assert_eq!(d("md6.2", 3, 5), int(29));
        assert_eq!(d("gmst2.A", 3, 5), int(96));
        assert_eq!(d("gmst2.C", 2, 5), int(40));
    }

    #[test]
    fn overrides_win() {
        assert_eq!(d("md6.1", 2, 9), int(3));
        assert_eq!(d("md6.1", 2, 11), int(5));
        assert_eq!(d("md6.2", 4, 3), int(26));
        assert_eq!(d("md6.8", 5, 3), int(2376));
        assert_eq!(d("gmst2.A", 6, 3), int(362));
    }

    #[test]
    fn domains() {
        let f = |s: &str, n, q| dim_lower(s.parse().unwrap(), n, &int(q), Kappa::WorstCase);
        assert!(f("gmst2.A", 3, 4).is_err());
        assert!(f("gmst2.B1", 6, 2).is_err());
        assert!(f("md6.4", 2, 4).is_err());
        assert!(f("md6.1", 2, 6).is_err());
        assert!(f("gmst2.B3", 4, 5).is_err());
        assert!("md6.9".parse::<DimFormula>().is_err());
    }

    #[test]
    fn kappa_modes() {
        let q = int(2);
        // (2^3 - 1)/(2 - 1) = 7, so kappa = 1 exactly when ell = 7.
        let worst = dim_lower(DimFormula::Gmst2A, 5, &q, Kappa::WorstCase).unwrap();
        let seven = dim_lower(DimFormula::Gmst2A, 5, &q, Kappa::Ell(7)).unwrap();
        let three = dim_lower(DimFormula::Gmst2A, 5, &q, Kappa::Ell(3)).unwrap();
        assert_eq!(worst, int(75));
        assert_eq!(seven, worst);
        assert_eq!(three, int(90));
    }

    #[test]
    fn suzuki_degrees() {
        assert_eq!(suzuki_e(&int(8)), Some(1));
        assert_eq!(suzuki_e(&int(32)), Some(2));
        assert_eq!(suzuki_e(&int(16)), None);
        assert_eq!(d("ho-exc.2B2", 0, 8), int(14));
        assert_eq!(d("ho-exc.2B2", 0, 32), int(124));
    }

    #[test]
    fn symplectic_even_matches_non_weil_form() {
        for n in 2..8 {
            for q in [2u64, 4, 8, 16] {
                if (n, q) == (2, 2) || (n, q) == (3, 2) {
                    continue;
                }
                assert_eq!(d("md6.5", n, q), d("gmst2.C", n, q));
            }
        }
    }
}
