//! Allocation-free square-matrix arithmetic on raw entry slices, and the
//! packed keys used to store group elements.

use std::hash::Hash;

use crate::gf::Field;

/// Multiplication, identity tests and element orders for `n x n` matrices
/// stored row-major as canonical encodings.
#[derive(Clone, Debug)]
pub struct Kernel {
    pub field: Field,
    pub n: usize,
    prime: Option<u64>,
}

impl Kernel {
    pub fn new(field: &Field, n: usize) -> Kernel {
        let prime = (field.k() == 1).then(|| field.p() as u64);
        Kernel { field: field.clone(), n, prime }
    }

    pub fn identity(&self) -> Vec<u32> {
        let mut v = vec![0; self.n * self.n];
        for i in 0..self.n {
            v[i * self.n + i] = 1;
        }
        v
    }

    pub fn is_identity(&self, a: &[u32]) -> bool {
        let n = self.n;
        a.iter().enumerate().all(|(idx, &x)| x == u32::from(idx / n == idx % n))
    }

    /// `out = a * b`.
    pub fn mul(&self, a: &[u32], b: &[u32], out: &mut [u32]) {
        let n = self.n;
        match self.prime {
            Some(p) => {
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = 0u64;
                        for t in 0..n {
                            acc += a[i * n + t] as u64 * b[t * n + j] as u64;
                        }
                        out[i * n + j] = (acc % p) as u32;
                    }
                }
            }
            None => {
                let f = &self.field;
                for i in 0..n {
                    for j in 0..n {
                        let mut acc = 0;
                        for t in 0..n {
                            acc = f.add(acc, f.mul(a[i * n + t], b[t * n + j]));
                        }
                        out[i * n + j] = acc;
                    }
                }
            }
        }
    }

    /// Least `k <= cap` with `a^k = 1`.
    pub fn order(&self, a: &[u32], cap: u64) -> Option<u64> {
        let mut x = a.to_vec();
        let mut y = vec![0; a.len()];
        let mut k = 1;
        while !self.is_identity(&x) {
            if k >= cap {
                return None;
            }
            self.mul(&x, a, &mut y);
            std::mem::swap(&mut x, &mut y);
            k += 1;
        }
        Some(k)
    }

    /// Determinant by elimination on a scratch copy.
    pub fn det(&self, a: &[u32], scratch: &mut Vec<u32>) -> u32 {
        let f = &self.field;
        let n = self.n;
        scratch.clear();
        scratch.extend_from_slice(a);
        let mut det = 1;
        for c in 0..n {
            let Some(pr) = (c..n).find(|&r| scratch[r * n + c] != 0) else {
                return 0;
            };
            if pr != c {
                for j in 0..n {
                    scratch.swap(pr * n + j, c * n + j);
                }
                det = f.neg(det);
            }
            let pivot = scratch[c * n + c];
            det = f.mul(det, pivot);
            let inv = f.inv(pivot).expect("pivot is nonzero");
            for r in c + 1..n {
                let t = f.mul(scratch[r * n + c], inv);
                if t == 0 {
                    continue;
                }
                for j in c..n {
                    scratch[r * n + j] = f.sub(scratch[r * n + j], f.mul(t, scratch[c * n + j]));
                }
            }
        }
        det
    }
}

/// Bits per entry so that every encoding below `q` fits.
pub fn entry_bits(q: u32) -> u32 {
    32 - (q - 1).leading_zeros()
}

/// A packed matrix usable as a hash key.
pub trait Key: Hash + Eq + Clone + Send + Sync {
    fn pack(entries: &[u32], bits: u32) -> Self;
    fn unpack(&self, bits: u32, out: &mut [u32]);
}

impl Key for u128 {
    fn pack(entries: &[u32], bits: u32) -> u128 {
        entries.iter().rev().fold(0u128, |acc, &e| (acc << bits) | e as u128)
    }

    fn unpack(&self, bits: u32, out: &mut [u32]) {
        let mask = (1u128 << bits) - 1;
        let mut v = *self;
        for o in out.iter_mut() {
            *o = (v & mask) as u32;
            v >>= bits;
        }
    }
}

impl Key for Box<[u64]> {
    fn pack(entries: &[u32], bits: u32) -> Box<[u64]> {
        let total = entries.len() * bits as usize;
        let mut words = vec![0u64; total.div_ceil(64)];
        for (i, &e) in entries.iter().enumerate() {
            let pos = i * bits as usize;
            let (w, off) = (pos / 64, pos % 64);
            words[w] |= (e as u64) << off;
            if off + bits as usize > 64 {
                words[w + 1] |= (e as u64) >> (64 - off);
            }
        }
        words.into_boxed_slice()
    }

    fn unpack(&self, bits: u32, out: &mut [u32]) {
        let mask = (1u64 << bits) - 1;
        for (i, o) in out.iter_mut().enumerate() {
            let pos = i * bits as usize;
            let (w, off) = (pos / 64, pos % 64);
            let mut v = self[w] >> off;
            if off + bits as usize > 64 {
                v |= self[w + 1] << (64 - off);
            }
            *o = (v & mask) as u32;
        }
    }
}
