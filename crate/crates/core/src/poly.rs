//! Dense univariate polynomials over a [`Field`].

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use thiserror::Error;

use crate::gf::{Field, GfError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PolyError {
    #[error("division by the zero polynomial")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("polynomial is not monic")]
    NotMonic,
    #[error("the zero polynomial has no roots list")]
    ZeroPolynomial,
    #[error("cannot parse coefficient {0:?}")]
    BadToken(String),
    #[error(transparent)]
    Field(#[from] GfError),
}

/// Coefficients are stored low degree first with a nonzero last entry.
/// The zero polynomial has no coefficients and degree `None`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly {
    field: Field,
    coeffs: Vec<u32>,
}

/// Outcome of [`Poly::is_power_of_linear`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum LinearPower {
    Constant,
    Power { alpha: u32, k: usize },
    NotAPower,
}

impl Poly {
    pub fn new(field: &Field, mut coeffs: Vec<u32>) -> Poly {
        debug_assert!(coeffs.iter().all(|&c| field.contains(c)));
        while coeffs.last() == Some(&0) {
            coeffs.pop();
        }
        Poly { field: field.clone(), coeffs }
    }

    pub fn zero(field: &Field) -> Poly {
        Poly { field: field.clone(), coeffs: Vec::new() }
    }

    pub fn constant(field: &Field, c: u32) -> Poly {
        Poly::new(field, vec![c])
    }

    pub fn one(field: &Field) -> Poly {
        Poly::constant(field, 1)
    }

    pub fn x(field: &Field) -> Poly {
        Poly::new(field, vec![0, 1])
    }

    /// `x - alpha`.
    pub fn linear(field: &Field, alpha: u32) -> Poly {
        Poly::new(field, vec![field.neg(alpha), 1])
    }

    /// Parses space-separated coefficient encodings, low degree first.
    pub fn parse(field: &Field, text: &str) -> Result<Poly, PolyError> {
        let mut coeffs = Vec::new();
        for tok in text.split_whitespace() {
            let v: u64 = tok.parse().map_err(|_| PolyError::BadToken(tok.to_string()))?;
            coeffs.push(field.check(v)?);
        }
        Ok(Poly::new(field, coeffs))
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    pub fn coeff(&self, i: usize) -> u32 {
        self.coeffs.get(i).copied().unwrap_or(0)
    }

    /// Degree, with `None` standing for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs == [1]
    }

    pub fn lead(&self) -> u32 {
        self.coeffs.last().copied().unwrap_or(0)
    }

    pub fn is_monic(&self) -> bool {
        self.lead() == 1
    }

    fn same(&self, other: &Poly) -> Result<(), PolyError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(PolyError::FieldMismatch)
        }
    }

    pub fn try_add(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same(other)?;
        Ok(self + other)
    }

    pub fn try_sub(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same(other)?;
        Ok(self - other)
    }

    pub fn try_mul(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same(other)?;
        Ok(self * other)
    }

    pub fn scale(&self, c: u32) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&a| f.mul(a, c)).collect())
    }

    pub fn monic(&self) -> Poly {
        if self.is_zero() {
            return self.clone();
        }
        let inv = self.field.inv(self.lead()).expect("nonzero leading coefficient");
        self.scale(inv)
    }

    pub fn pow(&self, mut n: u64) -> Poly {
        let mut acc = Poly::one(&self.field);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = &acc * &base;
            }
            n >>= 1;
            if n > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    /// Quotient and remainder with `deg r < deg g`.
    pub fn divrem(&self, g: &Poly) -> Result<(Poly, Poly), PolyError> {
        self.same(g)?;
        let Some(dg) = g.degree() else {
            return Err(PolyError::DivisionByZero);
        };
        let f = &self.field;
        let lead_inv = f.inv(g.lead())?;
        let mut r = self.coeffs.clone();
        if r.len() <= dg {
            return Ok((Poly::zero(f), self.clone()));
        }
        let mut quot = vec![0u32; r.len() - dg];
        for d in (dg..r.len()).rev() {
            let c = f.mul(r[d], lead_inv);
            if c == 0 {
                continue;
            }
            quot[d - dg] = c;
            for (i, &gc) in g.coeffs.iter().enumerate() {
                let idx = d - dg + i;
                r[idx] = f.sub(r[idx], f.mul(c, gc));
            }
        }
        r.truncate(dg);
        Ok((Poly::new(f, quot), Poly::new(f, r)))
    }

    pub fn rem(&self, g: &Poly) -> Result<Poly, PolyError> {
        Ok(self.divrem(g)?.1)
    }

    /// Divides when `g` is known to divide `self`; returns `None` otherwise.
    pub fn div_exact(&self, g: &Poly) -> Result<Option<Poly>, PolyError> {
        let (quot, r) = self.divrem(g)?;
        Ok(r.is_zero().then_some(quot))
    }

    pub fn divides(&self, f: &Poly) -> Result<bool, PolyError> {
        Ok(f.rem(self)?.is_zero())
    }

    /// Monic greatest common divisor; `gcd(0, 0) = 0`.
    pub fn gcd(&self, other: &Poly) -> Result<Poly, PolyError> {
        self.same(other)?;
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.rem(&b)?;
            a = b;
            b = r;
        }
        Ok(a.monic())
    }

    /// Monic least common multiple of two nonzero polynomials.
    pub fn lcm(&self, other: &Poly) -> Result<Poly, PolyError> {
        let g = self.gcd(other)?;
        if g.is_zero() {
            return Ok(g);
        }
        let quot = self.div_exact(&g)?.expect("gcd divides its argument");
        Ok((&quot * other).monic())
    }

    /// Formal derivative; `d(x^p)/dx = 0` in characteristic p.
    pub fn derivative(&self) -> Poly {
        let f = &self.field;
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(i, &c)| f.mul(c, f.from_int(i as i64)))
            .collect();
        Poly::new(f, coeffs)
    }

    pub fn eval(&self, x: u32) -> u32 {
        let f = &self.field;
        self.coeffs.iter().rev().fold(0, |acc, &c| f.add(f.mul(acc, x), c))
    }

    /// True when `self` has no repeated factor over the algebraic closure.
    /// A vanishing derivative means `self` is a p-th power, hence not squarefree.
    pub fn is_squarefree(&self) -> Result<bool, PolyError> {
        if self.degree().unwrap_or(0) == 0 {
            return Ok(true);
        }
        Ok(self.gcd(&self.derivative())?.is_one())
    }

    /// Roots lying in the base field, with multiplicities, in encoding order.
    pub fn roots_in_field(&self) -> Result<Vec<(u32, usize)>, PolyError> {
        let Some(deg) = self.degree() else {
            return Err(PolyError::ZeroPolynomial);
        };
        let mut out = Vec::new();
        let mut found = 0;
        for a in self.field.elements() {
            if found == deg {
                break;
            }
            if self.eval(a) != 0 {
                continue;
            }
            let lin = Poly::linear(&self.field, a);
            let mut rest = self.clone();
            let mut mult = 0;
            while let Some(quot) = rest.div_exact(&lin)? {
                rest = quot;
                mult += 1;
            }
            found += mult;
            out.push((a, mult));
        }
        Ok(out)
    }

    /// Decides whether a monic `f` equals `(x - alpha)^deg f` for some `alpha`
    /// in the base field.
    pub fn is_power_of_linear(&self) -> Result<LinearPower, PolyError> {
        if !self.is_monic() {
            return Err(PolyError::NotMonic);
        }
        let d = self.coeffs.len() - 1;
        if d == 0 {
            return Ok(LinearPower::Constant);
        }
        let f = &self.field;
        let p = f.p() as usize;
        // (x - a)^d has x^(d-1) coefficient -d*a; usable when p does not divide d.
        let alpha = if d % p != 0 {
            let dd = f.from_int(d as i64);
            f.neg(f.div(self.coeffs[d - 1], dd)?)
        } else {
            match f.elements().find(|&a| self.eval(a) == 0) {
                Some(a) => a,
                None => return Ok(LinearPower::NotAPower),
            }
        };
        if Poly::linear(f, alpha).pow(d as u64) == *self {
            Ok(LinearPower::Power { alpha, k: d })
        } else {
            Ok(LinearPower::NotAPower)
        }
    }

    /// Coefficient encodings separated by spaces, low degree first.
    pub fn to_coeff_string(&self) -> String {
        let parts: Vec<String> = self.coeffs.iter().map(|c| c.to_string()).collect();
        parts.join(" ")
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.field, self)
    }
}

impl fmt::Display for Poly {
    fn fmt(&self, out: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(out, "0");
        }
        let mut first = true;
        for (i, &c) in self.coeffs.iter().enumerate().rev() {
            if c == 0 {
                continue;
            }
            if !first {
                write!(out, " + ")?;
            }
            first = false;
            match (i, c) {
                (0, _) => write!(out, "{c}")?,
                (1, 1) => write!(out, "x")?,
                (1, _) => write!(out, "{c}*x")?,
                (_, 1) => write!(out, "x^{i}")?,
                _ => write!(out, "{c}*x^{i}")?,
            }
        }
        Ok(())
    }
}

fn assert_same(a: &Poly, b: &Poly) {
    assert!(a.field == b.field, "polynomials over different fields");
}

impl Add for &Poly {
    type Output = Poly;
    fn add(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.add(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Sub for &Poly {
    type Output = Poly;
    fn sub(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        let f = &self.field;
        let n = self.coeffs.len().max(rhs.coeffs.len());
        Poly::new(f, (0..n).map(|i| f.sub(self.coeff(i), rhs.coeff(i))).collect())
    }
}

impl Neg for &Poly {
    type Output = Poly;
    fn neg(self) -> Poly {
        let f = &self.field;
        Poly::new(f, self.coeffs.iter().map(|&c| f.neg(c)).collect())
    }
}

impl Mul for &Poly {
    type Output = Poly;
    fn mul(self, rhs: &Poly) -> Poly {
        assert_same(self, rhs);
        let f = &self.field;
        if self.is_zero() || rhs.is_zero() {
            return Poly::zero(f);
        }
        let mut out = vec![0u32; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            if a == 0 {
                continue;
            }
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                out[i + j] = f.add(out[i + j], f.mul(a, b));
            }
        }
        Poly::new(f, out)
    }
}
