//! p-parts, `e_p(q)`, Sylow exponents of linear groups, and element-order caps
//! for groups of Lie type. All values are exact.

use std::fmt;

use num_bigint::BigUint;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, ToPrimitive, Zero};
use thiserror::Error;

use crate::gf::{is_prime, prime_power};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NumthError {
    #[error("{p} divides {q}")]
    NotCoprime { p: u64, q: BigUint },
    #[error("out of domain: {0}")]
    OutOfDomain(String),
    #[error("tower mismatch: {0}")]
    TowerMismatch(String),
}

fn big(n: u64) -> BigUint {
    BigUint::from(n)
}

/// `value = p^m`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PPow {
    pub p: u64,
    pub m: u32,
    pub value: BigUint,
}

/// The p-part of `m`, the largest power of `p` dividing it. `m` must be positive.
pub fn vp(m: &BigUint, p: u64) -> PPow {
    assert!(!m.is_zero(), "p-part of zero is undefined");
    let pb = big(p);
    let mut rest = m.clone();
    let mut e = 0u32;
    loop {
        let (quot, r) = rest.div_rem(&pb);
        if !r.is_zero() {
            break;
        }
        rest = quot;
        e += 1;
    }
    PPow { p, m: e, value: pb.pow(e) }
}

fn p_part(m: &BigUint, p: u64) -> BigUint {
    vp(m, p).value
}

/// For odd `p`, the least `i > 0` with `p | q^i - 1`. For `p = 2`, 1 when
/// `4 | q - 1` and 2 otherwise.
pub fn e_p(q: &BigUint, p: u64) -> Result<u64, NumthError> {
    let r = (q % big(p)).to_u64().expect("residue fits");
    if r == 0 {
        return Err(NumthError::NotCoprime { p, q: q.clone() });
    }
    if p == 2 {
        let r4 = (q % big(4u64)).to_u64().expect("residue fits");
        return Ok(if r4 == 1 { 1 } else { 2 });
    }
    let mut x = r;
    let mut i = 1;
    while x != 1 {
        x = x * r % p;
        i += 1;
    }
    Ok(i)
}

/// Exponent of a Sylow p-subgroup of `GL_n(q)`.
///
/// For `p` coprime to `q` this is `p^l |q^e - 1|_p` with `e = e_p(q)` and
/// `p^l e <= n < p^(l+1) e`, or 1 when `e > n`. For `p | q` the Sylow subgroup
/// is unitriangular and the exponent is the least `p^s >= n`.
pub fn eta_gl(p: u64, n: u64, q: &BigUint) -> BigUint {
    if n == 0 {
        return BigUint::one();
    }
    if (q % big(p)).is_zero() {
        let mut s = BigUint::one();
        while s < big(n) {
            s *= p;
        }
        return s;
    }
    // GL_1(q) is cyclic of order q - 1; the e_2 convention does not cover it.
    if p == 2 && n == 1 {
        return p_part(&(q - 1u32), 2);
    }
    let e = e_p(q, p).expect("coprime");
    if e > n {
        return BigUint::one();
    }
    let mut l = 0u32;
    while p.pow(l + 1) * e <= n {
        l += 1;
    }
    let value = big(p).pow(l) * p_part(&(q.pow(e as u32) - 1u32), p);
    if p == 2 {
        debug_assert_eq!(value, eta_gl_two_form(n, q));
    }
    value
}

/// `2^t |q -+ 1|_2` with `2^t <= n < 2^(t+1)`, for odd `q` and `n >= 2`.
fn eta_gl_two_form(n: u64, q: &BigUint) -> BigUint {
    let t = 63 - n.leading_zeros();
    let r4 = (q % big(4)).to_u64().expect("residue fits");
    let part = if r4 == 1 { p_part(&(q - 1u32), 2) } else { p_part(&(q + 1u32), 2) };
    big(2).pow(t) * part
}

/// Exponent of a Sylow p-subgroup of `SL_n(q)`.
///
/// Equal to the `GL_n(q)` value except when `p` is odd, `n` is a power of `p`
/// and `p | q - 1`: then every p-element is reducible and the exponent drops
/// to that of `GL_{n/p}(q)`. Odd `q` with `p = 2` is not covered.
pub fn eta_sl(p: u64, n: u64, q: &BigUint) -> Result<BigUint, NumthError> {
    if n <= 1 {
        return Ok(BigUint::one());
    }
    if (q % big(p)).is_zero() {
        return Ok(eta_gl(p, n, q));
    }
    if p == 2 {
        return Err(NumthError::OutOfDomain(format!("SL_{n}({q}) at p = 2 with q odd")));
    }
    let n_is_p_power = prime_power(n).is_some_and(|(r, _)| r == p);
    let p_divides_q_minus_1 = ((q - 1u32) % big(p)).is_zero();
    if n_is_p_power && p_divides_q_minus_1 {
        Ok(eta_gl(p, n / p, q))
    } else {
        Ok(eta_gl(p, n, q))
    }
}

/// Which simplification of the field-automorphism formula applies.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Collapse {
    /// `p | q`: the exponent is `p^k` times that of `G(q)`.
    ScalesByPk,
    /// `p` odd and coprime to `q`: the automorphisms do not raise the exponent.
    Unchanged,
    /// `p = 2`, `q` odd: unchanged for the linear families only.
    UnchangedForLinear,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FieldAutExponent {
    pub q: BigUint,
    /// `p^(k-i) eta_p(G(q0^(p^i)))` for `i = 0..=k`.
    pub terms: Vec<BigUint>,
    pub exponent: BigUint,
    pub collapse: Collapse,
    /// The value the collapse rule predicts.
    pub collapsed: BigUint,
}

/// Sylow p-exponent of `G(q) . Psi` with `q = q0^(p^k)` and `Psi` the field
/// automorphisms of order `p^k`: the maximum of `p^(k-i) eta_p(G(q0^(p^i)))`.
pub fn eta_with_field_auts(
    p: u64,
    base: impl Fn(&BigUint) -> Result<BigUint, NumthError>,
    q0: &BigUint,
    k: u32,
) -> Result<FieldAutExponent, NumthError> {
    if k == 0 {
        return Err(NumthError::TowerMismatch("tower height must be positive".into()));
    }
    let r = q0
        .to_u64()
        .and_then(prime_power)
        .map(|(r, _)| r)
        .ok_or_else(|| NumthError::TowerMismatch(format!("{q0} is not a prime power")))?;
    if !is_prime(p) {
        return Err(NumthError::TowerMismatch(format!("{p} is not prime")));
    }
    let mut terms = Vec::with_capacity(k as usize + 1);
    for i in 0..=k {
        let qi = q0.pow(p.pow(i) as u32);
        terms.push(big(p).pow(k - i) * base(&qi)?);
    }
    let exponent = terms.iter().max().cloned().expect("k + 1 terms");
    let q = q0.pow(p.pow(k) as u32);
    let at_q = base(&q)?;
    let (collapse, collapsed) = if r == p {
        (Collapse::ScalesByPk, big(p).pow(k) * at_q)
    } else if p > 2 {
        (Collapse::Unchanged, at_q)
    } else {
        (Collapse::UnchangedForLinear, at_q)
    };
    Ok(FieldAutExponent { q, terms, exponent, collapse, collapsed })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Classical {
    Psl,
    Psu,
    /// `PSp_{2n}(q)`; the parameter `n` is half the natural dimension.
    Psp,
}

impl fmt::Display for Classical {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Classical::Psl => "PSL",
            Classical::Psu => "PSU",
            Classical::Psp => "PSp",
        })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Exceptional {
    /// `2B2(2^(2e+1))`
    Suzuki,
    G2,
    /// `2G2(3^(2e+1))`
    Ree,
    /// `3D4(q)`
    Triality,
    F4,
    /// `2F4(2^(2e+1))`
    ReeF4,
    E6,
    /// `2E6(q)`
    TwistedE6,
    E7,
    E8,
}

impl Exceptional {
    pub const ALL: [Exceptional; 10] = [
        Exceptional::Suzuki,
        Exceptional::G2,
        Exceptional::Ree,
        Exceptional::Triality,
        Exceptional::F4,
        Exceptional::ReeF4,
        Exceptional::E6,
        Exceptional::TwistedE6,
        Exceptional::E7,
        Exceptional::E8,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Exceptional::Suzuki => "2B2",
            Exceptional::G2 => "G2",
            Exceptional::Ree => "2G2",
            Exceptional::Triality => "3D4",
            Exceptional::F4 => "F4",
            Exceptional::ReeF4 => "2F4",
            Exceptional::E6 => "E6",
            Exceptional::TwistedE6 => "2E6",
            Exceptional::E7 => "E7",
            Exceptional::E8 => "E8",
        }
    }

    pub fn from_tag(tag: &str) -> Option<Exceptional> {
        Exceptional::ALL.into_iter().find(|e| e.tag() == tag)
    }

    /// Untwisted Lie rank, the `m` in the generic `alpha <= m + 3` bound.
    pub fn untwisted_rank(self) -> u64 {
        match self {
            Exceptional::Suzuki | Exceptional::G2 | Exceptional::Ree => 2,
            Exceptional::Triality | Exceptional::F4 | Exceptional::ReeF4 => 4,
            Exceptional::E6 | Exceptional::TwistedE6 => 6,
            Exceptional::E7 => 7,
            Exceptional::E8 => 8,
        }
    }
}

/// An upper bound for element orders in `Aut L`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderCap {
    pub family: String,
    pub n: Option<u64>,
    pub q: u64,
    pub cap: BigRational,
    pub citation: &'static str,
}

fn rat(n: BigUint) -> BigRational {
    BigRational::from_integer(n.into())
}

fn require_prime_power(q: u64) -> Result<(u64, u32), NumthError> {
    prime_power(q).ok_or_else(|| NumthError::OutOfDomain(format!("{q} is not a prime power")))
}

/// Element-order cap for `Aut L`, `L` classical. For `PSp` the cap
/// `q^(n+1)/(q-1)` is kept as an exact fraction.
pub fn mu_classical(family: Classical, n: u64, q: u64) -> Result<OrderCap, NumthError> {
    require_prime_power(q)?;
    let min_n = match family {
        Classical::Psl | Classical::Psp => 2,
        Classical::Psu => 3,
    };
    if n < min_n {
        return Err(NumthError::OutOfDomain(format!("{family} needs n >= {min_n}, got {n}")));
    }
    let qb = big(q);
    let nn = n as u32;
    let cap = match family {
        Classical::Psl => rat((qb.pow(nn) - 1u32) / (q - 1)),
        Classical::Psu if n % 2 == 1 && is_prime(q) => rat(qb.pow(nn - 1) + q),
        Classical::Psu if n % 2 == 1 => rat(qb.pow(nn - 1) - 1u32),
        Classical::Psu if q > 2 => rat(qb.pow(nn - 1) + 1u32),
        Classical::Psu => rat(big(4) * (big(2).pow(nn - 3) + 1u32)),
        Classical::Psp => BigRational::new(qb.pow(nn + 1).into(), (q - 1).into()),
    };
    Ok(OrderCap {
        family: family.to_string(),
        n: Some(n),
        q,
        cap,
        citation: "classical-max-order",
    })
}

/// Element-order cap for `Aut L`, `L` exceptional of Lie type over `GF(q)`.
pub fn order_cap_exceptional(family: Exceptional, q: u64) -> Result<OrderCap, NumthError> {
    let (r, e) = require_prime_power(q)?;
    let qb = big(q);
    let e64 = e as u64;
    let odd_power = |base: u64| -> Result<u32, NumthError> {
        if r == base && e % 2 == 1 && e >= 3 {
            Ok((e - 1) / 2)
        } else {
            Err(NumthError::OutOfDomain(format!(
                "{} needs q = {base}^(2e+1) with e >= 1, got {q}",
                family.tag()
            )))
        }
    };
    let cap: BigUint = match family {
        Exceptional::Suzuki => {
            let s = odd_power(2)?;
            big(2 * s as u64 + 1) * (big(2).pow(2 * s + 1) + big(2).pow(s + 1) + 1u32)
        }
        Exceptional::G2 if r == 3 => big(2 * e64) * (&qb * &qb + &qb + 1u32),
        Exceptional::G2 => big(e64) * (&qb * &qb + &qb + 1u32),
        Exceptional::Ree => {
            let s = odd_power(3)?;
            big(2 * s as u64 + 1) * (big(3).pow(2 * s + 1) + big(3).pow(s + 1) + 1u32)
        }
        Exceptional::Triality => big(3 * e64) * (qb.pow(3) - 1u32) * (&qb + 1u32),
        Exceptional::F4 => &qb * (qb.pow(3) - 1u32) * (&qb + 1u32),
        Exceptional::ReeF4 => {
            let s = odd_power(2)?;
            let two = big(2);
            big(2 * s as u64 + 1)
                * (two.pow(4 * s + 2)
                    + two.pow(3 * s + 2)
                    + two.pow(2 * s + 1)
                    + two.pow(s + 1)
                    + 1u32)
        }
        Exceptional::E6 => qb.pow(2) * (qb.pow(3) + 1u32) * (qb.pow(2) + &qb + 1u32),
        Exceptional::TwistedE6 => {
            &qb * (&qb + 1u32) * (qb.pow(2) + 1u32) * (qb.pow(3) - 1u32)
        }
        Exceptional::E7 => &qb * (&qb + 1u32) * (qb.pow(2) + 1u32) * (qb.pow(4) + 1u32),
        Exceptional::E8 => &qb * (&qb + 1u32) * (qb.pow(2) + &qb + 1u32) * (qb.pow(5) - 1u32),
    };
    Ok(OrderCap {
        family: family.tag().to_string(),
        n: None,
        q,
        cap: rat(cap),
        citation: "exceptional-max-order",
    })
}
