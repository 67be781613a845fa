//! Reproducible random group elements by product replacement.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::kernel::Kernel;
use super::{GroupSpec, ScanError};
use crate::matgf::Mat;

const SLOTS: usize = 10;
const BURN_IN: usize = 60;

/// `count` elements from a product-replacement walk seeded by `seed`.
pub fn random_elements(spec: &GroupSpec, count: usize, seed: u64) -> Result<Vec<Mat>, ScanError> {
    if count == 0 {
        return Err(ScanError::ZeroCount);
    }
    let kernel = Kernel::new(spec.field(), spec.dim());
    let gens = spec.gens();
    let mut slots: Vec<Vec<u32>> = (0..SLOTS.max(gens.len())).map(|i| gens[i % gens.len()].data().to_vec()).collect();
    let mut acc = kernel.identity();
    let mut tmp = acc.clone();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut step = |slots: &mut Vec<Vec<u32>>, acc: &mut Vec<u32>| {
        let i = rng.gen_range(0..slots.len());
        let mut j = rng.gen_range(0..slots.len() - 1);
        if j >= i {
            j += 1;
        }
        if rng.gen::<bool>() {
            kernel.mul(&slots[i], &slots[j], &mut tmp);
        } else {
            kernel.mul(&slots[j], &slots[i], &mut tmp);
        }
        slots[i].copy_from_slice(&tmp);
        kernel.mul(acc, &slots[i], &mut tmp);
        acc.copy_from_slice(&tmp);
    };
    for _ in 0..BURN_IN {
        step(&mut slots, &mut acc);
    }
    let mut out = Vec::with_capacity(count);
    for _ in 0..count {
        step(&mut slots, &mut acc);
        out.push(Mat::new(spec.field(), spec.dim(), spec.dim(), acc.clone())?);
    }
    Ok(out)
}
