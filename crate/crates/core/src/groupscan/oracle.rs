//! Brute-force Sylow exponents by enumerating every matrix of a small linear
//! group, plus helpers that realise field automorphisms as matrices over the
//! prime field.

use std::collections::BTreeMap;

use super::kernel::Kernel;
use super::{gl_order, ScanError};
use crate::gf::{Field, GfError};
use crate::matgf::{Mat, MatError};

/// Element orders of an enumerated group.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct OrderStats {
    pub group_order: u64,
    pub histogram: BTreeMap<u64, u64>,
}

impl OrderStats {
    /// Largest `p`-part of an element order, i.e. the exponent of a Sylow
    /// `p`-subgroup.
    pub fn eta(&self, p: u64) -> u64 {
        max_p_order(self.histogram.keys().copied(), p)
    }
}

pub fn max_p_order(orders: impl IntoIterator<Item = u64>, p: u64) -> u64 {
    orders
        .into_iter()
        .map(|mut o| {
            let mut part = 1;
            while o % p == 0 {
                o /= p;
                part *= p;
            }
            part
        })
        .max()
        .unwrap_or(1)
}

/// Order histogram of `GL_n(q)`, or of `SL_n(q)` when `special` is set.
pub fn linear_group_orders(n: usize, q: u64, special: bool, cap: u64) -> Result<OrderStats, ScanError> {
    let gl = gl_order(n as u32, q).filter(|&o| o <= cap).ok_or(ScanError::CapExceeded { cap: cap as usize })?;
    let field = Field::with_order(q).map_err(MatError::from)?;
    let kernel = Kernel::new(&field, n);
    let total = q.pow((n * n) as u32);
    let mut entries = vec![0u32; n * n];
    let mut scratch = Vec::new();
    let mut histogram = BTreeMap::new();
    let mut group_order = 0;
    for idx in 0..total {
        let mut r = idx;
        for e in entries.iter_mut() {
            *e = (r % q) as u32;
            r /= q;
        }
        let det = kernel.det(&entries, &mut scratch);
        if det == 0 || (special && det != 1) {
            continue;
        }
        group_order += 1;
        let o = kernel.order(&entries, gl).expect("element order divides |GL_n(q)|");
        *histogram.entry(o).or_insert(0) += 1;
    }
    Ok(OrderStats { group_order, histogram })
}

/// Exponent of a Sylow `p`-subgroup of `GL_n(q)` by full enumeration.
pub fn eta_oracle(n: usize, q: u64, p: u64, cap: u64) -> Result<u64, ScanError> {
    Ok(linear_group_orders(n, q, false, cap)?.eta(p))
}

/// As [`eta_oracle`] for `SL_n(q)`.
pub fn eta_oracle_sl(n: usize, q: u64, p: u64, cap: u64) -> Result<u64, ScanError> {
    Ok(linear_group_orders(n, q, true, cap)?.eta(p))
}

/// The matrix over the prime field of `v -> m v` on `GF(p^k)^n`, in the basis
/// `x^j e_i` ordered by `i` then `j`.
pub fn restrict_scalars(m: &Mat) -> Result<Mat, MatError> {
    let f = m.field();
    let k = f.k() as usize;
    let prime = Field::prime(f.p() as u64)?;
    let (r, c) = (m.rows(), m.cols());
    let mut out = Mat::zero(&prime, r * k, c * k);
    for j in 0..c {
        for b in 0..k {
            // image of x^b e_j is column j of m times x^b
            let xb = f.from_coords(&unit(k, b));
            for i in 0..r {
                let coords = f.coords(f.mul(m.get(i, j), xb));
                for (a, &v) in coords.iter().enumerate() {
                    out.set(i * k + a, j * k + b, v);
                }
            }
        }
    }
    Ok(out)
}

fn unit(k: usize, b: usize) -> Vec<u32> {
    let mut v = vec![0; k];
    v[b] = 1;
    v
}

/// The prime-field matrix of the Frobenius map applied to every coordinate
/// of `GF(p^k)^n`.
pub fn frobenius_matrix(field: &Field, n: usize) -> Result<Mat, GfError> {
    let k = field.k() as usize;
    let prime = Field::prime(field.p() as u64)?;
    let mut out = Mat::zero(&prime, n * k, n * k);
    for b in 0..k {
        let image = field.coords(field.frobenius(field.from_coords(&unit(k, b))));
        for i in 0..n {
            for (a, &v) in image.iter().enumerate() {
                out.set(i * k + a, i * k + b, v);
            }
        }
    }
    Ok(out)
}
