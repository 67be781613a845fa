//! Finite fields GF(p^k) with p^k at most 2^20.
//!
//! Elements are encoded as integers `e = c_0 + c_1 p + ... + c_{k-1} p^{k-1}`
//! where `c_i` are the coordinates in the polynomial basis `1, x, ..., x^{k-1}`.
//! All arithmetic goes through [`Field`], which owns log/exp tables.

use std::fmt;
use std::sync::Arc;

use thiserror::Error;

/// Largest supported field order.
pub const MAX_ORDER: u64 = 1 << 20;

const NO_LOG: u32 = u32::MAX;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GfError {
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("extension degree must be at least 1")]
    ZeroDegree,
    #[error("field order {p}^{k} exceeds 2^20")]
    TooLarge { p: u64, k: u32 },
    #[error("modulus is reducible over GF({0})")]
    ReducibleModulus(u32),
    #[error("modulus must be monic of degree {expected} with coefficients below p, got {found:?}")]
    DegreeMismatch { expected: u32, found: Vec<u32> },
    #[error("division by zero")]
    DivisionByZero,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error("encoding {rep} is out of range for GF({q})")]
    EncodingOutOfRange { rep: u64, q: u32 },
    #[error("GF({from}) is not a subfield of GF({to})")]
    NotASubfield { from: u32, to: u32 },
}

struct Inner {
    p: u32,
    k: u32,
    q: u32,
    modulus: Vec<u32>,
    // exp has length 2(q-1) so that log sums never need a reduction.
    exp: Vec<u32>,
    log: Vec<u32>,
    // Zech logarithms, only for odd p with k > 1.
    zech: Vec<u32>,
}

/// A finite field context. Cheap to clone and safe to share across threads.
#[derive(Clone)]
pub struct Field(Arc<Inner>);

impl PartialEq for Field {
    fn eq(&self, other: &Self) -> bool {
        Arc::ptr_eq(&self.0, &other.0)
            || (self.0.p == other.0.p && self.0.modulus == other.0.modulus)
    }
}

impl Eq for Field {}

impl std::hash::Hash for Field {
    fn hash<H: std::hash::Hasher>(&self, state: &mut H) {
        self.0.p.hash(state);
        self.0.modulus.hash(state);
    }
}

impl fmt::Debug for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({}^{}, modulus {:?})", self.0.p, self.0.k, self.0.modulus)
    }
}

impl fmt::Display for Field {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "GF({})", self.0.q)
    }
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Returns `(p, k)` with `n = p^k`, or `None` if `n` is not a prime power.
pub fn prime_power(n: u64) -> Option<(u64, u32)> {
    if n < 2 {
        return None;
    }
    let mut p = 2u64;
    while p * p <= n && n % p != 0 {
        p += 1;
    }
    if n % p != 0 {
        return Some((n, 1));
    }
    let (mut m, mut k) = (n, 0u32);
    while m % p == 0 {
        m /= p;
        k += 1;
    }
    (m == 1).then_some((p, k))
}

fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

impl Field {
    /// Creates GF(p^k). Without an explicit modulus the lexicographically least
    /// monic irreducible of degree `k` is used, comparing coefficients from the
    /// constant term upwards.
    pub fn new(p: u64, k: u32, modulus: Option<&[u32]>) -> Result<Field, GfError> {
        if !is_prime(p) {
            return Err(GfError::NotPrime(p));
        }
        if k == 0 {
            return Err(GfError::ZeroDegree);
        }
        let q = (p as u128).checked_pow(k).filter(|&q| q <= MAX_ORDER as u128);
        let Some(q) = q else {
            return Err(GfError::TooLarge { p, k });
        };
        let p32 = p as u32;
        let modulus = match modulus {
            Some(m) => {
                if m.len() != k as usize + 1 || m[k as usize] != 1 || m.iter().any(|&c| c >= p32) {
                    return Err(GfError::DegreeMismatch { expected: k, found: m.to_vec() });
                }
                if !zp::is_irreducible(m, p32) {
                    return Err(GfError::ReducibleModulus(p32));
                }
                m.to_vec()
            }
            None => zp::least_irreducible(k, p32),
        };
        Ok(Field(Arc::new(Inner::build(p32, k, q as u32, modulus))))
    }

    pub fn prime(p: u64) -> Result<Field, GfError> {
        Field::new(p, 1, None)
    }

    /// GF(q) for a prime power `q`, default modulus.
    pub fn with_order(q: u64) -> Result<Field, GfError> {
        let (p, k) = prime_power(q).ok_or(GfError::NotPrime(q))?;
        Field::new(p, k, None)
    }

    pub fn p(&self) -> u32 {
        self.0.p
    }

    pub fn k(&self) -> u32 {
        self.0.k
    }

    pub fn q(&self) -> u32 {
        self.0.q
    }

    /// Modulus coefficients, low degree first, monic.
    pub fn modulus(&self) -> &[u32] {
        &self.0.modulus
    }

    pub fn contains(&self, rep: u32) -> bool {
        rep < self.0.q
    }

    pub fn check(&self, rep: u64) -> Result<u32, GfError> {
        if rep < self.0.q as u64 {
            Ok(rep as u32)
        } else {
            Err(GfError::EncodingOutOfRange { rep, q: self.0.q })
        }
    }

    /// Image of an integer in the prime subfield.
    pub fn from_int(&self, n: i64) -> u32 {
        n.rem_euclid(self.0.p as i64) as u32
    }

    /// The generator of the multiplicative group used for the tables.
    pub fn primitive(&self) -> u32 {
        self.0.exp[1 % self.0.exp.len().max(1)]
    }

    /// Discrete log to the base [`Field::primitive`]. `None` for zero.
    pub fn log(&self, a: u32) -> Option<u32> {
        let l = self.0.log[a as usize];
        (l != NO_LOG).then_some(l)
    }

    /// `primitive^i`.
    pub fn exp(&self, i: u64) -> u32 {
        self.0.exp[(i % (self.0.q as u64 - 1)) as usize]
    }

    #[inline]
    pub fn add(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.k == 1 {
            let s = a + b;
            if s >= f.p {
                s - f.p
            } else {
                s
            }
        } else if f.p == 2 {
            a ^ b
        } else if a == 0 {
            b
        } else if b == 0 {
            a
        } else {
            let la = f.log[a as usize];
            let lb = f.log[b as usize];
            let d = if lb >= la { lb - la } else { lb + f.q - 1 - la };
            let z = f.zech[d as usize];
            if z == NO_LOG {
                0
            } else {
                f.exp[(la + z) as usize]
            }
        }
    }

    #[inline]
    pub fn neg(&self, a: u32) -> u32 {
        let f = &*self.0;
        if a == 0 || f.p == 2 {
            a
        } else if f.k == 1 {
            f.p - a
        } else {
            f.exp[(f.log[a as usize] + (f.q - 1) / 2) as usize]
        }
    }

    #[inline]
    pub fn sub(&self, a: u32, b: u32) -> u32 {
        self.add(a, self.neg(b))
    }

    #[inline]
    pub fn mul(&self, a: u32, b: u32) -> u32 {
        let f = &*self.0;
        if f.k == 1 {
            ((a as u64 * b as u64) % f.p as u64) as u32
        } else if a == 0 || b == 0 {
            0
        } else {
            f.exp[(f.log[a as usize] + f.log[b as usize]) as usize]
        }
    }

    pub fn inv(&self, a: u32) -> Result<u32, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let f = &*self.0;
        let l = f.log[a as usize];
        Ok(f.exp[((f.q - 1 - l) % (f.q - 1)) as usize])
    }

    pub fn div(&self, a: u32, b: u32) -> Result<u32, GfError> {
        Ok(self.mul(a, self.inv(b)?))
    }

    pub fn pow(&self, a: u32, n: u64) -> u32 {
        if a == 0 {
            return u32::from(n == 0);
        }
        let f = &*self.0;
        let m = (f.q - 1) as u64;
        let e = (f.log[a as usize] as u64 * (n % m)) % m;
        f.exp[e as usize]
    }

    pub fn frobenius(&self, a: u32) -> u32 {
        self.pow(a, self.0.p as u64)
    }

    /// Multiplicative order of a nonzero element.
    pub fn order_of(&self, a: u32) -> Result<u64, GfError> {
        if a == 0 {
            return Err(GfError::DivisionByZero);
        }
        let m = (self.0.q - 1) as u64;
        let l = self.0.log[a as usize] as u64;
        Ok(m / num_integer::gcd(m, l))
    }

    /// Polynomial-basis coordinates of an encoding, low degree first.
    pub fn coords(&self, mut a: u32) -> Vec<u32> {
        let p = self.0.p;
        (0..self.0.k)
            .map(|_| {
                let c = a % p;
                a /= p;
                c
            })
            .collect()
    }

    pub fn from_coords(&self, coords: &[u32]) -> u32 {
        coords.iter().rev().fold(0, |acc, &c| acc * self.0.p + c)
    }

    pub fn elements(&self) -> std::ops::Range<u32> {
        0..self.0.q
    }

    pub fn elem(&self, rep: u32) -> Result<Fel, GfError> {
        Fel::new(self, rep)
    }

    /// Table sending each encoding of `self` to its image in `target`, where
    /// the generator `x` maps to the least root of `self`'s modulus.
    pub fn embedding_into(&self, target: &Field) -> Result<Vec<u32>, GfError> {
        let not_sub = GfError::NotASubfield { from: self.q(), to: target.q() };
        if self.p() != target.p() || target.k() % self.k() != 0 {
            return Err(not_sub);
        }
        let eval = |x: u32| {
            self.modulus().iter().rev().fold(0, |acc, &c| target.add(target.mul(acc, x), c))
        };
        let beta = target.elements().find(|&x| eval(x) == 0).ok_or(not_sub)?;
        let powers: Vec<u32> = (0..self.k()).map(|i| target.pow(beta, i as u64)).collect();
        Ok(self
            .elements()
            .map(|e| {
                self.coords(e)
                    .iter()
                    .zip(&powers)
                    .fold(0, |acc, (&c, &b)| target.add(acc, target.mul(c, b)))
            })
            .collect())
    }
}

impl Inner {
    fn build(p: u32, k: u32, q: u32, modulus: Vec<u32>) -> Inner {
        let slow = SlowArith { p, k, modulus: &modulus };
        let m = (q - 1) as u64;
        let factors = prime_factors(m);
        let is_generator = |g: u32| factors.iter().all(|&r| slow.pow(g, m / r) != 1);
        let start = if k == 1 { 1 } else { p };
        let g = (start..q)
            .chain(1..start)
            .find(|&g| g != 0 && is_generator(g))
            .expect("a finite field has a primitive element");
        let n = (q - 1) as usize;
        let mut exp = vec![0u32; 2 * n.max(1)];
        let mut log = vec![NO_LOG; q as usize];
        let mut x = 1u32;
        for i in 0..n {
            exp[i] = x;
            exp[i + n] = x;
            log[x as usize] = i as u32;
            x = slow.mul(x, g);
        }
        if n == 1 {
            exp[1] = 1;
        }
        let zech = if p != 2 && k > 1 {
            (0..n)
                .map(|i| {
                    let s = slow.add(1, exp[i]);
                    if s == 0 {
                        NO_LOG
                    } else {
                        log[s as usize]
                    }
                })
                .collect()
        } else {
            Vec::new()
        };
        Inner { p, k, q, modulus, exp, log, zech }
    }
}

/// Table-free arithmetic used while the tables are being built.
struct SlowArith<'a> {
    p: u32,
    k: u32,
    modulus: &'a [u32],
}

impl SlowArith<'_> {
    fn digits(&self, mut a: u32) -> Vec<u64> {
        (0..self.k)
            .map(|_| {
                let c = a % self.p;
                a /= self.p;
                c as u64
            })
            .collect()
    }

    fn undigits(&self, d: &[u64]) -> u32 {
        d.iter().rev().fold(0u32, |acc, &c| acc * self.p + c as u32)
    }

    fn add(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let s: Vec<u64> =
            self.digits(a).iter().zip(self.digits(b)).map(|(x, y)| (x + y) % p).collect();
        self.undigits(&s)
    }

    fn mul(&self, a: u32, b: u32) -> u32 {
        let p = self.p as u64;
        let k = self.k as usize;
        if k == 1 {
            return ((a as u64 * b as u64) % p) as u32;
        }
        if p == 2 {
            return self.mul_binary(a, b);
        }
        let (da, db) = (self.digits(a), self.digits(b));
        let mut prod = vec![0u64; 2 * k - 1];
        for (i, x) in da.iter().enumerate() {
            for (j, y) in db.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        for d in (k..prod.len()).rev() {
            let c = prod[d];
            if c != 0 {
                for (i, &m) in self.modulus[..k].iter().enumerate() {
                    let t = prod[d - k + i] + (p - c) * m as u64;
                    prod[d - k + i] = t % p;
                }
                prod[d] = 0;
            }
        }
        self.undigits(&prod[..k])
    }

    fn mul_binary(&self, a: u32, b: u32) -> u32 {
        let k = self.k;
        let m = self.from_bits(self.modulus);
        let mut prod = 0u64;
        for i in 0..k {
            if (b >> i) & 1 == 1 {
                prod ^= (a as u64) << i;
            }
        }
        for d in (k..2 * k).rev() {
            if (prod >> d) & 1 == 1 {
                prod ^= m << (d - k);
            }
        }
        prod as u32
    }

    fn from_bits(&self, coeffs: &[u32]) -> u64 {
        coeffs.iter().rev().fold(0u64, |acc, &c| (acc << 1) | c as u64)
    }

    fn pow(&self, a: u32, mut n: u64) -> u32 {
        let (mut base, mut acc) = (a, 1u32);
        while n > 0 {
            if n & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            n >>= 1;
        }
        acc
    }
}

/// Polynomials over the prime field, as coefficient vectors low degree first.
/// Only used to pick and validate moduli.
mod zp {
    fn trim(mut v: Vec<u64>) -> Vec<u64> {
        while v.last() == Some(&0) {
            v.pop();
        }
        v
    }

    fn inv(a: u64, p: u64) -> u64 {
        let (mut acc, mut base, mut e) = (1u64, a % p, p - 2);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p;
            }
            base = base * base % p;
            e >>= 1;
        }
        acc
    }

    fn rem(a: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        let mut r = trim(a.to_vec());
        let dm = m.len() - 1;
        let lead_inv = inv(m[dm], p);
        while r.len() > dm {
            let d = r.len() - 1;
            let c = r[d] * lead_inv % p;
            for i in 0..=dm {
                r[d - dm + i] = (r[d - dm + i] + (p - c) * m[i]) % p;
            }
            r = trim(r);
        }
        r
    }

    fn mulmod(a: &[u64], b: &[u64], m: &[u64], p: u64) -> Vec<u64> {
        if a.is_empty() || b.is_empty() {
            return Vec::new();
        }
        let mut prod = vec![0u64; a.len() + b.len() - 1];
        for (i, x) in a.iter().enumerate() {
            for (j, y) in b.iter().enumerate() {
                prod[i + j] = (prod[i + j] + x * y) % p;
            }
        }
        rem(&prod, m, p)
    }

    fn gcd(a: &[u64], b: &[u64], p: u64) -> Vec<u64> {
        let (mut a, mut b) = (trim(a.to_vec()), trim(b.to_vec()));
        while !b.is_empty() {
            let r = rem(&a, &b, p);
            a = b;
            b = r;
        }
        a
    }

    pub fn is_irreducible(f: &[u32], p: u32) -> bool {
        let p = p as u64;
        let f: Vec<u64> = f.iter().map(|&c| c as u64).collect();
        let k = f.len() - 1;
        if k == 1 {
            return true;
        }
        // x^(p^i) - x shares a factor with f iff f has a factor of degree dividing i.
        let x = rem(&[0, 1], &f, p);
        let mut xp = x.clone();
        for _ in 1..=k / 2 {
            let mut acc = vec![1u64];
            let mut base = xp.clone();
            let mut e = p;
            while e > 0 {
                if e & 1 == 1 {
                    acc = mulmod(&acc, &base, &f, p);
                }
                base = mulmod(&base, &base, &f, p);
                e >>= 1;
            }
            xp = acc;
            let mut diff = xp.clone();
            diff.resize(diff.len().max(2), 0);
            diff[1] = (diff[1] + p - 1) % p;
            if gcd(&f, &diff, p).len() > 1 {
                return false;
            }
        }
        true
    }

    pub fn least_irreducible(k: u32, p: u32) -> Vec<u32> {
        let k = k as usize;
        let total = (p as u64).pow(k as u32);
        for idx in 0..total {
            // c_0 is the most significant position in the ordering.
            let mut f = vec![0u32; k + 1];
            let mut t = idx;
            for i in (0..k).rev() {
                f[i] = (t % p as u64) as u32;
                t /= p as u64;
            }
            f[k] = 1;
            if is_irreducible(&f, p) {
                return f;
            }
        }
        unreachable!("irreducible polynomials exist in every degree")
    }
}

/// A field element that carries its field, for API boundaries where operands
/// from different fields must be rejected.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Fel {
    field: Field,
    rep: u32,
}

impl Fel {
    pub fn new(field: &Field, rep: u32) -> Result<Fel, GfError> {
        field.check(rep as u64)?;
        Ok(Fel { field: field.clone(), rep })
    }

    pub fn rep(&self) -> u32 {
        self.rep
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    fn same(&self, other: &Fel) -> Result<(), GfError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(GfError::FieldMismatch)
        }
    }

    fn wrap(&self, rep: u32) -> Fel {
        Fel { field: self.field.clone(), rep }
    }

    pub fn add(&self, other: &Fel) -> Result<Fel, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.add(self.rep, other.rep)))
    }

    pub fn sub(&self, other: &Fel) -> Result<Fel, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.sub(self.rep, other.rep)))
    }

    pub fn mul(&self, other: &Fel) -> Result<Fel, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.mul(self.rep, other.rep)))
    }

    pub fn div(&self, other: &Fel) -> Result<Fel, GfError> {
        self.same(other)?;
        Ok(self.wrap(self.field.div(self.rep, other.rep)?))
    }

    pub fn neg(&self) -> Fel {
        self.wrap(self.field.neg(self.rep))
    }

    pub fn inv(&self) -> Result<Fel, GfError> {
        Ok(self.wrap(self.field.inv(self.rep)?))
    }

    pub fn pow(&self, n: u64) -> Fel {
        self.wrap(self.field.pow(self.rep, n))
    }

    pub fn frobenius(&self) -> Fel {
        self.wrap(self.field.frobenius(self.rep))
    }
}

impl fmt::Display for Fel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.rep)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn default_moduli() {
        assert_eq!(Field::new(2, 1, None).unwrap().modulus(), &[0, 1]);
        assert_eq!(Field::new(2, 2, None).unwrap().modulus(), &[1, 1, 1]);
        // x^2+1 splits mod 5; x^2+x+1 has non-square discriminant -3.
        assert_eq!(Field::new(5, 2, None).unwrap().modulus(), &[1, 1, 1]);
        assert_eq!(Field::new(3, 2, None).unwrap().modulus(), &[1, 0, 1]);
        // (c0, c1, c2) = (1, 0, 1) precedes (1, 1, 0).
        assert_eq!(Field::new(2, 3, None).unwrap().modulus(), &[1, 0, 1, 1]);
    }

    #[test]
    fn creation_errors() {
        assert_eq!(Field::new(4, 1, None).unwrap_err(), GfError::NotPrime(4));
        assert_eq!(
            Field::new(2, 2, Some(&[0, 0, 1])).unwrap_err(),
            GfError::ReducibleModulus(2)
        );
        assert!(matches!(
            Field::new(2, 2, Some(&[1, 1])),
            Err(GfError::DegreeMismatch { .. })
        ));
        assert!(matches!(Field::new(2, 21, None), Err(GfError::TooLarge { .. })));
        let explicit = Field::new(2, 2, Some(&[1, 1, 1])).unwrap();
        assert_eq!(explicit, Field::new(2, 2, None).unwrap());
    }

    #[test]
    fn small_products() {
        let f7 = Field::prime(7).unwrap();
        assert_eq!(f7.mul(3, 5), 1);
        let f4 = Field::new(2, 2, None).unwrap();
        assert_eq!(f4.mul(2, 2), 3);
        let f5 = Field::prime(5).unwrap();
        assert_eq!(f5.frobenius(2), 2);
        assert_eq!(f5.inv(0), Err(GfError::DivisionByZero));
    }

    #[test]
    fn zech_addition_matches_digits() {
        let f = Field::new(3, 3, None).unwrap();
        for a in f.elements() {
            for b in f.elements() {
                let expect: Vec<u32> =
                    f.coords(a).iter().zip(f.coords(b)).map(|(x, y)| (x + y) % 3).collect();
                assert_eq!(f.add(a, b), f.from_coords(&expect));
            }
        }
    }

    #[test]
    fn field_axioms_small_orders() {
        for q in [2u64, 3, 4, 5, 7, 8, 9, 16, 25, 27, 32, 49, 64] {
            let f = Field::with_order(q).unwrap();
            let els: Vec<u32> = f.elements().collect();
            for &a in &els {
                assert_eq!(f.add(a, f.neg(a)), 0);
                if a != 0 {
                    assert_eq!(f.mul(a, f.inv(a).unwrap()), 1);
                }
                for &b in &els {
                    assert_eq!(f.add(a, b), f.add(b, a));
                    assert_eq!(f.mul(a, b), f.mul(b, a));
                    let fab = f.frobenius(f.add(a, b));
                    assert_eq!(fab, f.add(f.frobenius(a), f.frobenius(b)));
                    for &c in &els {
                        assert_eq!(f.mul(a, f.add(b, c)), f.add(f.mul(a, b), f.mul(a, c)));
                        assert_eq!(f.add(f.add(a, b), c), f.add(a, f.add(b, c)));
                        assert_eq!(f.mul(f.mul(a, b), c), f.mul(a, f.mul(b, c)));
                    }
                }
            }
        }
    }

    #[test]
    fn multiplicative_group_is_cyclic() {
        for q in 2u64..=4096 {
            if prime_power(q).is_none() {
                continue;
            }
            let f = Field::with_order(q).unwrap();
            let found = (1..f.q()).any(|a| {
                // Order by repeated multiplication, independent of the tables.
                let mut x = a;
                let mut n = 1u64;
                while x != 1 {
                    x = f.mul(x, a);
                    n += 1;
                }
                n == q - 1
            });
            assert!(found, "GF({q})");
        }
    }

    #[test]
    fn checked_elements_reject_mixing() {
        let f4 = Field::with_order(4).unwrap();
        let f5 = Field::with_order(5).unwrap();
        let a = f4.elem(2).unwrap();
        let b = f5.elem(2).unwrap();
        assert_eq!(a.add(&b), Err(GfError::FieldMismatch));
        assert_eq!(a.mul(&a).unwrap().rep(), 3);
        assert!(f4.elem(4).is_err());
    }
}
