//! Dense matrices over a [`Field`]: arithmetic, rank, characteristic and
//! minimal polynomials, invariant factors and element orders.

use std::fmt;

use thiserror::Error;

use crate::gf::{Field, GfError};
use crate::poly::{Poly, PolyError};

/// Default cap for [`Mat::element_order`].
pub const DEFAULT_ORDER_CAP: u64 = 1_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MatError {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },
    #[error("matrix is singular")]
    Singular,
    #[error("operands belong to different fields")]
    FieldMismatch,
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// Row-major matrix of canonical element encodings.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    data: Vec<u32>,
}

impl Mat {
    pub fn new(field: &Field, rows: usize, cols: usize, data: Vec<u32>) -> Result<Mat, MatError> {
        if data.len() != rows * cols {
            return Err(MatError::DimensionMismatch(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        for &e in &data {
            field.check(e as u64)?;
        }
        Ok(Mat { field: field.clone(), rows, cols, data })
    }

    pub fn from_rows(field: &Field, rows: &[Vec<u32>]) -> Result<Mat, MatError> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(MatError::DimensionMismatch("ragged rows".into()));
        }
        Mat::new(field, rows.len(), cols, rows.concat())
    }

    pub fn zero(field: &Field, rows: usize, cols: usize) -> Mat {
        Mat { field: field.clone(), rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(field: &Field, n: usize) -> Mat {
        Mat::scalar(field, n, 1)
    }

    pub fn scalar(field: &Field, n: usize, c: u32) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 0..n {
            m.data[i * n + i] = c;
        }
        m
    }

    pub fn diag(field: &Field, entries: &[u32]) -> Mat {
        let n = entries.len();
        let mut m = Mat::zero(field, n, n);
        for (i, &c) in entries.iter().enumerate() {
            m.data[i * n + i] = c;
        }
        m
    }

    /// Jordan block `J_n(lambda)` with ones on the superdiagonal.
    pub fn jordan(field: &Field, n: usize, lambda: u32) -> Mat {
        let mut m = Mat::scalar(field, n, lambda);
        for i in 0..n.saturating_sub(1) {
            m.data[i * n + i + 1] = 1;
        }
        m
    }

    /// Companion matrix of a monic polynomial of degree at least 1.
    pub fn companion(f: &Poly) -> Result<Mat, MatError> {
        if !f.is_monic() || f.degree() == Some(0) {
            return Err(PolyError::NotMonic.into());
        }
        let field = f.field();
        let n = f.degree().unwrap_or(0);
        let mut m = Mat::zero(field, n, n);
        for i in 1..n {
            m.data[i * n + i - 1] = 1;
        }
        for i in 0..n {
            m.data[i * n + n - 1] = field.neg(f.coeff(i));
        }
        Ok(m)
    }

    pub fn block_diag(blocks: &[Mat]) -> Result<Mat, MatError> {
        let Some(first) = blocks.first() else {
            return Err(MatError::DimensionMismatch("no blocks".into()));
        };
        let field = first.field.clone();
        let rows: usize = blocks.iter().map(|b| b.rows).sum();
        let cols: usize = blocks.iter().map(|b| b.cols).sum();
        let mut m = Mat::zero(&field, rows, cols);
        let (mut r0, mut c0) = (0, 0);
        for b in blocks {
            if b.field != field {
                return Err(MatError::FieldMismatch);
            }
            for i in 0..b.rows {
                for j in 0..b.cols {
                    m.data[(r0 + i) * cols + c0 + j] = b.get(i, j);
                }
            }
            r0 += b.rows;
            c0 += b.cols;
        }
        Ok(m)
    }

    pub fn field(&self) -> &Field {
        &self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[u32] {
        &self.data
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u32 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u32) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[u32] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    fn require_square(&self) -> Result<usize, MatError> {
        if self.is_square() {
            Ok(self.rows)
        } else {
            Err(MatError::NotSquare { rows: self.rows, cols: self.cols })
        }
    }

    fn same_field(&self, other: &Mat) -> Result<(), MatError> {
        if self.field == other.field {
            Ok(())
        } else {
            Err(MatError::FieldMismatch)
        }
    }

    pub fn is_identity(&self) -> bool {
        self.scalar_value() == Some(1)
    }

    /// `Some(c)` when the matrix equals `c * Id`.
    pub fn scalar_value(&self) -> Option<u32> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let c = if n == 0 { 1 } else { self.data[0] };
        let ok = (0..n).all(|i| (0..n).all(|j| self.get(i, j) == if i == j { c } else { 0 }));
        ok.then_some(c)
    }

    pub fn add(&self, other: &Mat) -> Result<Mat, MatError> {
        self.zip_with(other, |f, a, b| f.add(a, b))
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat, MatError> {
        self.zip_with(other, |f, a, b| f.sub(a, b))
    }

    fn zip_with(&self, other: &Mat, op: impl Fn(&Field, u32, u32) -> u32) -> Result<Mat, MatError> {
        self.same_field(other)?;
        if (self.rows, self.cols) != (other.rows, other.cols) {
            return Err(MatError::DimensionMismatch(format!(
                "{}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = &self.field;
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| op(f, a, b)).collect();
        Ok(Mat { field: f.clone(), rows: self.rows, cols: self.cols, data })
    }

    pub fn scalar_mul(&self, c: u32) -> Mat {
        let f = &self.field;
        let data = self.data.iter().map(|&a| f.mul(a, c)).collect();
        Mat { field: f.clone(), rows: self.rows, cols: self.cols, data }
    }

    /// `self - lambda * Id`.
    pub fn sub_scalar(&self, lambda: u32) -> Result<Mat, MatError> {
        let n = self.require_square()?;
        let mut m = self.clone();
        for i in 0..n {
            let v = self.field.sub(m.get(i, i), lambda);
            m.set(i, i, v);
        }
        Ok(m)
    }

    pub fn transpose(&self) -> Mat {
        let mut m = Mat::zero(&self.field, self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.data[j * self.rows + i] = self.get(i, j);
            }
        }
        m
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat, MatError> {
        self.same_field(other)?;
        if self.cols != other.rows {
            return Err(MatError::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    /// Product without dimension or field checks.
    pub fn mul_unchecked(&self, other: &Mat) -> Mat {
        let f = &self.field;
        let (n, m, l) = (self.rows, self.cols, other.cols);
        let mut data = vec![0u32; n * l];
        if f.k() == 1 {
            // Entries are below 2^20, so 2^24 products fit in a u64 accumulator.
            let p = f.p() as u64;
            let mut acc = vec![0u64; l];
            for i in 0..n {
                acc.iter_mut().for_each(|a| *a = 0);
                for t in 0..m {
                    let a = self.data[i * m + t] as u64;
                    if a == 0 {
                        continue;
                    }
                    let row = &other.data[t * l..(t + 1) * l];
                    for (slot, &b) in acc.iter_mut().zip(row) {
                        *slot += a * b as u64;
                    }
                }
                for (d, &a) in data[i * l..(i + 1) * l].iter_mut().zip(&acc) {
                    *d = (a % p) as u32;
                }
            }
        } else {
            for i in 0..n {
                for t in 0..m {
                    let a = self.data[i * m + t];
                    if a == 0 {
                        continue;
                    }
                    for j in 0..l {
                        let d = &mut data[i * l + j];
                        *d = f.add(*d, f.mul(a, other.data[t * l + j]));
                    }
                }
            }
        }
        Mat { field: f.clone(), rows: n, cols: l, data }
    }

    /// `self * v` for a column vector `v`.
    pub fn mul_vec(&self, v: &[u32]) -> Vec<u32> {
        let f = &self.field;
        (0..self.rows)
            .map(|i| {
                self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| f.add(acc, f.mul(a, b)))
            })
            .collect()
    }

    pub fn pow(&self, mut n: u64) -> Result<Mat, MatError> {
        let dim = self.require_square()?;
        let mut acc = Mat::identity(&self.field, dim);
        let mut base = self.clone();
        while n > 0 {
            if n & 1 == 1 {
                acc = acc.mul_unchecked(&base);
            }
            n >>= 1;
            if n > 0 {
                base = base.mul_unchecked(&base);
            }
        }
        Ok(acc)
    }

    /// Row echelon form in place; returns the pivot columns.
    fn echelon(&mut self) -> Vec<usize> {
        let f = self.field.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..cols {
            if r == rows {
                break;
            }
            let Some(pr) = (r..rows).find(|&i| self.get(i, c) != 0) else {
                continue;
            };
            if pr != r {
                for j in 0..cols {
                    self.data.swap(pr * cols + j, r * cols + j);
                }
            }
            let inv = f.inv(self.get(r, c)).expect("pivot is nonzero");
            for j in c..cols {
                let v = f.mul(self.get(r, j), inv);
                self.set(r, j, v);
            }
            for i in r + 1..rows {
                let t = self.get(i, c);
                if t == 0 {
                    continue;
                }
                for j in c..cols {
                    let v = f.sub(self.get(i, j), f.mul(t, self.get(r, j)));
                    self.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        self.clone().echelon().len()
    }

    pub fn nullity(&self) -> usize {
        self.cols - self.rank()
    }

    pub fn rank_nullity(&self) -> (usize, usize) {
        let r = self.rank();
        (r, self.cols - r)
    }

    pub fn inverse(&self) -> Result<Mat, MatError> {
        let n = self.require_square()?;
        let f = &self.field;
        let mut aug = Mat::zero(f, n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug.set(i, j, self.get(i, j));
            }
            aug.set(i, n + i, 1);
        }
        let pivots = aug.echelon();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(MatError::Singular);
        }
        for c in (0..n).rev() {
            for i in 0..c {
                let t = aug.get(i, c);
                if t == 0 {
                    continue;
                }
                for j in c..2 * n {
                    let v = f.sub(aug.get(i, j), f.mul(t, aug.get(c, j)));
                    aug.set(i, j, v);
                }
            }
        }
        let mut inv = Mat::zero(f, n, n);
        for i in 0..n {
            for j in 0..n {
                inv.set(i, j, aug.get(i, n + j));
            }
        }
        Ok(inv)
    }

    pub fn is_invertible(&self) -> bool {
        self.is_square() && self.rank() == self.rows
    }

    /// `(-1)^n` times the constant term of the characteristic polynomial.
    pub fn determinant(&self) -> Result<u32, MatError> {
        let n = self.require_square()?;
        let c0 = self.charpoly()?.coeff(0);
        Ok(if n % 2 == 1 { self.field.neg(c0) } else { c0 })
    }

    /// `det(x Id - A)` via reduction to upper Hessenberg form.
    pub fn charpoly(&self) -> Result<Poly, MatError> {
        let n = self.require_square()?;
        let f = self.field.clone();
        let mut h = self.clone();
        for j in 0..n.saturating_sub(2) {
            let Some(piv) = (j + 1..n).find(|&i| h.get(i, j) != 0) else {
                continue;
            };
            if piv != j + 1 {
                for c in 0..n {
                    h.data.swap(piv * n + c, (j + 1) * n + c);
                }
                for r in 0..n {
                    h.data.swap(r * n + piv, r * n + j + 1);
                }
            }
            let inv = f.inv(h.get(j + 1, j)).expect("pivot is nonzero");
            for r in j + 2..n {
                let t = f.mul(h.get(r, j), inv);
                if t == 0 {
                    continue;
                }
                for c in 0..n {
                    let v = f.sub(h.get(r, c), f.mul(t, h.get(j + 1, c)));
                    h.set(r, c, v);
                }
                for rr in 0..n {
                    let v = f.add(h.get(rr, j + 1), f.mul(t, h.get(rr, r)));
                    h.set(rr, j + 1, v);
                }
            }
        }
        // 1-based recurrence over the leading principal submatrices.
        let hh = |i: usize, j: usize| h.get(i - 1, j - 1);
        let mut ps: Vec<Poly> = vec![Poly::one(&f)];
        for m in 1..=n {
            let mut pm = &Poly::linear(&f, hh(m, m)) * &ps[m - 1];
            let mut t = 1u32;
            for i in (1..m).rev() {
                t = f.mul(t, hh(i + 1, i));
                let c = f.mul(hh(i, m), t);
                if c != 0 {
                    pm = &pm - &ps[i - 1].scale(c);
                }
            }
            ps.push(pm);
        }
        Ok(ps.pop().expect("recurrence is nonempty"))
    }

    /// Monic minimal polynomial: the lcm of the order polynomials of the
    /// standard basis vectors.
    pub fn minpoly(&self) -> Result<Poly, MatError> {
        let n = self.require_square()?;
        let f = self.field.clone();
        let mut result = Poly::one(&f);
        for start in 0..n {
            if result.degree() == Some(n) {
                break;
            }
            let mut v = vec![0u32; n];
            v[start] = 1;
            let ord = self.order_poly(v);
            result = result.lcm(&ord)?;
        }
        debug_assert!(n == 0 || result.divides(&self.charpoly()?)?);
        Ok(result)
    }

    /// Monic polynomial `g` of least degree with `g(A) v = 0`.
    fn order_poly(&self, v: Vec<u32>) -> Poly {
        let f = &self.field;
        let n = self.rows;
        // Each basis entry: (normalized vector, pivot index, polynomial g with g(A) v = vector).
        let mut basis: Vec<(Vec<u32>, usize, Poly)> = Vec::new();
        let mut w = v;
        let mut xj = Poly::one(f);
        loop {
            let mut g = xj.clone();
            let mut r = w.clone();
            for (bv, piv, bp) in &basis {
                let c = r[*piv];
                if c == 0 {
                    continue;
                }
                for (x, &y) in r.iter_mut().zip(bv) {
                    *x = f.sub(*x, f.mul(c, y));
                }
                g = &g - &bp.scale(c);
            }
            match r.iter().position(|&x| x != 0) {
                None => return g,
                Some(piv) => {
                    let inv = f.inv(r[piv]).expect("pivot is nonzero");
                    r.iter_mut().for_each(|x| *x = f.mul(*x, inv));
                    basis.push((r, piv, g.scale(inv)));
                }
            }
            debug_assert!(basis.len() <= n);
            w = self.mul_vec(&w);
            xj = &xj * &Poly::x(f);
        }
    }

    /// Invariant factors `f_1 | ... | f_t` of the matrix, from the Smith
    /// normal form of `x Id - A` over the polynomial ring.
    pub fn invariant_factors(&self) -> Result<Vec<Poly>, MatError> {
        let n = self.require_square()?;
        let f = self.field.clone();
        let mut m: Vec<Vec<Poly>> = (0..n)
            .map(|i| {
                (0..n)
                    .map(|j| {
                        let c = f.neg(self.get(i, j));
                        if i == j {
                            Poly::new(&f, vec![c, 1])
                        } else {
                            Poly::constant(&f, c)
                        }
                    })
                    .collect()
            })
            .collect();
        for k in 0..n {
            loop {
                let mut best: Option<(usize, usize, usize)> = None;
                for (i, row) in m.iter().enumerate().skip(k) {
                    for (j, e) in row.iter().enumerate().skip(k) {
                        if let Some(d) = e.degree() {
                            if best.map_or(true, |(_, _, bd)| d < bd) {
                                best = Some((i, j, d));
                            }
                        }
                    }
                }
                let Some((bi, bj, _)) = best else {
                    break;
                };
                m.swap(k, bi);
                for row in m.iter_mut() {
                    row.swap(k, bj);
                }
                let pivot = m[k][k].clone();
                let mut clean = true;
                for i in k + 1..n {
                    if m[i][k].is_zero() {
                        continue;
                    }
                    let (quot, r) = m[i][k].divrem(&pivot)?;
                    clean &= r.is_zero();
                    for j in k..n {
                        let t = &quot * &m[k][j];
                        m[i][j] = &m[i][j] - &t;
                    }
                }
                for j in k + 1..n {
                    if m[k][j].is_zero() {
                        continue;
                    }
                    let (quot, r) = m[k][j].divrem(&pivot)?;
                    clean &= r.is_zero();
                    for row in m.iter_mut().skip(k) {
                        let t = &quot * &row[k];
                        row[j] = &row[j] - &t;
                    }
                }
                if !clean {
                    continue;
                }
                let bad = (k + 1..n).find(|&i| {
                    (k + 1..n).any(|j| !m[i][j].is_zero() && !pivot.divides(&m[i][j]).unwrap_or(false))
                });
                match bad {
                    Some(i) => {
                        for j in k..n {
                            m[k][j] = &m[k][j] + &m[i][j];
                        }
                    }
                    None => break,
                }
            }
        }
        let factors: Vec<Poly> = (0..n)
            .map(|i| m[i][i].monic())
            .filter(|p| p.degree().unwrap_or(0) > 0)
            .collect();
        Ok(factors)
    }

    /// Least `n <= cap` with `A^n = Id`, or `None` beyond the cap.
    pub fn element_order(&self, cap: u64) -> Result<Option<u64>, MatError> {
        let n = self.require_square()?;
        if !self.is_invertible() {
            return Err(MatError::Singular);
        }
        if let Some(factors) = exponent_bound(self.field.p() as u64, self.field.q() as u64, n) {
            // The order divides the exponent of GL_n(q); strip surplus primes.
            let mut order: u64 = factors.iter().map(|&(r, e)| r.pow(e)).product();
            for &(r, e) in &factors {
                for _ in 0..e {
                    if self.pow(order / r)?.is_identity() {
                        order /= r;
                    } else {
                        break;
                    }
                }
            }
            return Ok((order <= cap).then_some(order));
        }
        let mut x = self.clone();
        let mut k = 1u64;
        while !x.is_identity() {
            if k >= cap {
                return Ok(None);
            }
            x = x.mul_unchecked(self);
            k += 1;
        }
        Ok(Some(k))
    }

    /// Re-expresses the matrix over a field containing its own.
    pub fn base_change(&self, target: &Field) -> Result<Mat, MatError> {
        let map = self.field.embedding_into(target)?;
        let data = self.data.iter().map(|&e| map[e as usize]).collect();
        Ok(Mat { field: target.clone(), rows: self.rows, cols: self.cols, data })
    }
}

impl fmt::Debug for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Mat {}x{} over {}", self.rows, self.cols, self.field)?;
        for i in 0..self.rows {
            let row: Vec<String> = self.row(i).iter().map(u32::to_string).collect();
            writeln!(f, "  {}", row.join(" "))?;
        }
        Ok(())
    }
}

/// Prime factorisation of a multiple of the exponent of `GL_n(q)`:
/// the least power of `p` that is at least `n`, times `lcm(q^i - 1)` over
/// `i <= n`. `None` when the numbers get too large to factor by trial division.
fn exponent_bound(p: u64, q: u64, n: usize) -> Option<Vec<(u64, u32)>> {
    let mut factors: std::collections::BTreeMap<u64, u32> = std::collections::BTreeMap::new();
    let mut pe = 0u32;
    while p.checked_pow(pe)? < n as u64 {
        pe += 1;
    }
    if pe > 0 {
        factors.insert(p, pe);
    }
    let mut qi = 1u64;
    for _ in 0..n {
        qi = qi.checked_mul(q)?;
        if qi > 1 << 40 {
            return None;
        }
        let mut m = qi - 1;
        let mut d = 2u64;
        while d * d <= m {
            let mut e = 0;
            while m % d == 0 {
                m /= d;
                e += 1;
            }
            if e > 0 {
                let slot = factors.entry(d).or_insert(0);
                *slot = (*slot).max(e);
            }
            d += 1;
        }
        if m > 1 {
            factors.entry(m).or_insert(1);
        }
    }
    factors.iter().try_fold(1u64, |acc, (&r, &e)| acc.checked_mul(r.checked_pow(e)?))?;
    Some(factors.into_iter().collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(q: u64) -> Field {
        Field::with_order(q).unwrap()
    }

    fn m(field: &Field, rows: &[&[u32]]) -> Mat {
        Mat::from_rows(field, &rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    fn poly(field: &Field, c: &[u32]) -> Poly {
        Poly::new(field, c.to_vec())
    }

    #[test]
    fn arithmetic_examples() {
        let f2 = f(2);
        let a = m(&f2, &[&[1, 1], &[1, 0]]);
        assert_eq!(a.pow(2).unwrap(), m(&f2, &[&[0, 1], &[1, 1]]));
        let f5 = f(5);
        assert_eq!(Mat::diag(&f5, &[2, 3]).sub_scalar(2).unwrap(), Mat::diag(&f5, &[0, 1]));
        assert!(matches!(a.mul(&Mat::zero(&f2, 3, 3)), Err(MatError::DimensionMismatch(_))));
    }

    #[test]
    fn rank_examples() {
        assert_eq!(Mat::identity(&f(7), 4).rank_nullity(), (4, 0));
        assert_eq!(Mat::zero(&f(3), 3, 5).rank_nullity(), (0, 5));
        assert_eq!(m(&f(2), &[&[1, 1], &[1, 1]]).rank_nullity(), (1, 1));
    }

    #[test]
    fn inverse_round_trip() {
        let f9 = f(9);
        let a = m(&f9, &[&[1, 2, 3], &[0, 5, 7], &[4, 0, 8]]);
        let inv = a.inverse().unwrap();
        assert!(a.mul(&inv).unwrap().is_identity());
        assert_eq!(m(&f9, &[&[1, 1], &[1, 1]]).inverse(), Err(MatError::Singular));
    }

    #[test]
    fn determinant_examples() {
        let f7 = f(7);
        assert_eq!(Mat::diag(&f7, &[2, 3, 4]).determinant().unwrap(), 3);
        assert_eq!(m(&f7, &[&[0, 1], &[1, 0]]).determinant().unwrap(), 6);
        assert_eq!(m(&f(2), &[&[1, 1], &[1, 1]]).determinant().unwrap(), 0);
    }

    #[test]
    fn charpoly_examples() {
        let f2 = f(2);
        let g = poly(&f2, &[1, 1, 0, 1]);
        assert_eq!(Mat::companion(&g).unwrap().charpoly().unwrap(), g);
        let f5 = f(5);
        assert_eq!(Mat::identity(&f5, 3).charpoly().unwrap(), poly(&f5, &[4, 3, 2, 1]));
        let f7 = f(7);
        let expect = &Poly::linear(&f7, 1) * &Poly::linear(&f7, 2);
        assert_eq!(Mat::diag(&f7, &[1, 2]).charpoly().unwrap(), expect);
        assert!(matches!(Mat::zero(&f7, 2, 3).charpoly(), Err(MatError::NotSquare { .. })));
    }

    #[test]
    fn charpoly_needs_row_swaps() {
        // Zero subdiagonal entry forces a pivot search during the reduction.
        let f3 = f(3);
        let a = m(&f3, &[&[1, 2, 0, 1], &[0, 1, 1, 0], &[1, 0, 2, 2], &[2, 1, 0, 0]]);
        let cp = a.charpoly().unwrap();
        assert_eq!(cp.degree(), Some(4));
        let mut acc = Mat::zero(&f3, 4, 4);
        for (i, &c) in cp.coeffs().iter().enumerate() {
            acc = acc.add(&a.pow(i as u64).unwrap().scalar_mul(c)).unwrap();
        }
        assert_eq!(acc, Mat::zero(&f3, 4, 4));
    }

    #[test]
    fn minpoly_examples() {
        let f5 = f(5);
        assert_eq!(Mat::scalar(&f5, 4, 3).minpoly().unwrap(), Poly::linear(&f5, 3));
        let f2 = f(2);
        let j = Mat::jordan(&f2, 2, 0);
        let jj = Mat::block_diag(&[j.clone(), j]).unwrap();
        assert_eq!(jj.minpoly().unwrap(), poly(&f2, &[0, 0, 1]));
        let g = poly(&f5, &[1, 0, 3, 4, 1]);
        assert_eq!(Mat::companion(&g).unwrap().minpoly().unwrap(), g);
    }

    #[test]
    fn invariant_factor_examples() {
        let f2 = f(2);
        let j = Mat::jordan(&f2, 2, 1);
        let jj = Mat::block_diag(&[j.clone(), j]).unwrap();
        let sq = poly(&f2, &[1, 0, 1]);
        assert_eq!(jj.invariant_factors().unwrap(), vec![sq.clone(), sq]);
        let f5 = f(5);
        let l1 = Poly::linear(&f5, 1);
        assert_eq!(
            Mat::diag(&f5, &[1, 1, 2]).invariant_factors().unwrap(),
            vec![l1.clone(), &l1 * &Poly::linear(&f5, 2)]
        );
        let g = poly(&f2, &[1, 1, 0, 0, 1]);
        assert_eq!(Mat::companion(&g).unwrap().invariant_factors().unwrap(), vec![g]);
    }

    #[test]
    fn element_order_examples() {
        let f2 = f(2);
        assert_eq!(Mat::identity(&f2, 3).element_order(10).unwrap(), Some(1));
        assert_eq!(m(&f2, &[&[1, 1], &[1, 0]]).element_order(10).unwrap(), Some(3));
        assert_eq!(Mat::jordan(&f(3), 2, 1).element_order(10).unwrap(), Some(3));
        assert_eq!(Mat::jordan(&f(3), 2, 0).element_order(10), Err(MatError::Singular));
        let f7 = f(7);
        assert_eq!(Mat::diag(&f7, &[3]).element_order(5).unwrap(), None);
    }

    #[test]
    fn element_order_matches_repeated_multiplication() {
        for q in [3u64, 4, 5] {
            let fq = f(q);
            let qq = fq.q();
            for code in 0..(qq as u64).pow(4) {
                let data: Vec<u32> = (0..4).map(|i| ((code / (qq as u64).pow(i)) % qq as u64) as u32).collect();
                let a = Mat::new(&fq, 2, 2, data).unwrap();
                if !a.is_invertible() {
                    continue;
                }
                let mut x = a.clone();
                let mut naive = 1;
                while !x.is_identity() {
                    x = x.mul_unchecked(&a);
                    naive += 1;
                }
                assert_eq!(a.element_order(u64::MAX).unwrap(), Some(naive));
            }
        }
    }

    #[test]
    fn base_change_preserves_products() {
        let f2 = f(2);
        let f16 = f(16);
        let a = m(&f2, &[&[1, 1], &[1, 0]]);
        let b = a.base_change(&f16).unwrap();
        assert_eq!(b.pow(3).unwrap(), Mat::identity(&f16, 2));
        let f4 = f(4);
        let c = m(&f4, &[&[2, 1], &[3, 0]]);
        let d = c.base_change(&f16).unwrap();
        assert_eq!(c.charpoly().unwrap().degree(), d.charpoly().unwrap().degree());
        assert_eq!(
            c.mul(&c).unwrap().base_change(&f16).unwrap(),
            d.mul(&d).unwrap()
        );
        assert!(c.base_change(&f(8)).is_err());
    }
}
