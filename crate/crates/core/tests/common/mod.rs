#![allow(dead_code)]

use accyc::{Field, Mat, Poly};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const SMALL_Q: [u64; 7] = [2, 3, 4, 5, 7, 8, 9];

pub fn field(q: u64) -> Field {
    Field::with_order(q).unwrap()
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

pub fn random_mat(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let data = (0..n * n).map(|_| rng.gen_range(0..f.q())).collect();
    Mat::new(f, n, n, data).unwrap()
}

pub fn random_invertible(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    loop {
        let m = random_mat(f, n, rng);
        if m.is_invertible() {
            return m;
        }
    }
}

/// A random conjugate of a block diagonal sum of Jordan blocks whose
/// eigenvalues come from a small pool, so repeated eigenvalues are common.
pub fn structured_mat(f: &Field, n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let pool: Vec<u32> = (0..2).map(|_| rng.gen_range(0..f.q())).collect();
    let mut blocks = Vec::new();
    let mut left = n;
    while left > 0 {
        let size = rng.gen_range(1..=left.min(3));
        blocks.push(Mat::jordan(f, size, pool[rng.gen_range(0..pool.len())]));
        left -= size;
    }
    let d = Mat::block_diag(&blocks).unwrap();
    let p = random_invertible(f, n, rng);
    p.mul(&d).unwrap().mul(&p.inverse().unwrap()).unwrap()
}

/// `f(m)` by Horner's rule.
pub fn eval_at(f: &Poly, m: &Mat) -> Mat {
    let n = m.rows();
    let mut acc = Mat::zero(m.field(), n, n);
    for &c in f.coeffs().iter().rev() {
        acc = acc.mul(m).unwrap().add(&Mat::scalar(m.field(), n, c)).unwrap();
    }
    acc
}

/// Every square matrix of size `n` over `f`, in encoding order.
pub fn all_matrices(f: &Field, n: usize) -> impl Iterator<Item = Mat> + '_ {
    let q = f.q() as u64;
    let total = q.pow((n * n) as u32);
    (0..total).map(move |mut code| {
        let data = (0..n * n)
            .map(|_| {
                let v = (code % q) as u32;
                code /= q;
                v
            })
            .collect();
        Mat::new(f, n, n, data).unwrap()
    })
}
