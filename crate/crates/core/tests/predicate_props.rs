//! Properties of the almost-cyclicity test.

mod common;

use accyc::{is_almost_cyclic, oracle_is_almost_cyclic, Mat, Mode};
use common::*;
use proptest::prelude::*;
use rand::Rng;

fn verdict(m: &Mat, mode: Mode) -> bool {
    is_almost_cyclic(m, mode).unwrap().almost_cyclic
}

fn case(q: u64, n: usize, seed: u64) -> Mat {
    let f = field(q);
    let mut r = rng(seed);
    if seed % 3 == 0 {
        random_mat(&f, n, &mut r)
    } else {
        structured_mat(&f, n, &mut r)
    }
}

fn strategy() -> impl Strategy<Value = (u64, usize, u64)> {
    (0..SMALL_Q.len(), 1usize..=6, any::<u64>()).prop_map(|(i, n, s)| (SMALL_Q[i], n, s))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(1000))]

    #[test]
    fn nonzero_scalar_multiples_share_the_verdict((q, n, seed) in strategy()) {
        let m = case(q, n, seed);
        let f = m.field().clone();
        for c in f.elements().skip(1) {
            let cm = m.scalar_mul(c);
            for mode in [Mode::Strict, Mode::Appendix] {
                prop_assert_eq!(verdict(&cm, mode), verdict(&m, mode));
            }
        }
    }

    #[test]
    fn conjugates_share_the_verdict((q, n, seed) in strategy()) {
        let m = case(q, n, seed);
        let p = random_invertible(m.field(), n, &mut rng(seed ^ 0x5eed));
        let c = p.mul(&m).unwrap().mul(&p.inverse().unwrap()).unwrap();
        for mode in [Mode::Strict, Mode::Appendix] {
            prop_assert_eq!(verdict(&c, mode), verdict(&m, mode));
        }
        prop_assert_eq!(verdict(&m, Mode::Strict), oracle_is_almost_cyclic(&m).unwrap().almost_cyclic);
    }

    #[test]
    fn diagonal_blocks_inherit_the_verdict((q, n, seed) in strategy(), split in 1usize..6) {
        prop_assume!(n >= 2);
        let k = 1 + split % (n - 1);
        let f = field(q);
        let mut r = rng(seed);
        let a = case(q, k, r.gen());
        let d = case(q, n - k, r.gen());
        let mut m = Mat::block_diag(&[a.clone(), d.clone()]).unwrap();
        for i in 0..k {
            for j in k..n {
                if r.gen_bool(0.5) {
                    m.set(i, j, r.gen_range(0..f.q()));
                }
            }
        }
        if verdict(&m, Mode::Strict) {
            prop_assert!(verdict(&a, Mode::Strict));
            prop_assert!(verdict(&d, Mode::Strict));
        }
    }
}

#[test]
fn every_3x3_matrix_over_gf2_is_almost_cyclic() {
    let f = field(2);
    for m in all_matrices(&f, 3) {
        assert!(verdict(&m, Mode::Strict));
    }
}
