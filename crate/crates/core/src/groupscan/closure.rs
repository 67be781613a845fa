//! Breadth-first closure of a generated matrix group.

use std::collections::BTreeMap;

use indexmap::IndexSet;

use super::kernel::{entry_bits, Kernel, Key};
use super::{GroupSpec, ScanError};
use crate::gf::Field;
use crate::matgf::Mat;

#[derive(Clone, Debug)]
enum Store {
    Small(IndexSet<u128>),
    Large(IndexSet<Box<[u64]>>),
}

/// Every element of a finite matrix group, in breadth-first discovery order
/// starting from the identity.
#[derive(Clone, Debug)]
pub struct Closure {
    kernel: Kernel,
    bits: u32,
    store: Store,
}

fn bfs<K: Key>(kernel: &Kernel, bits: u32, gens: &[Vec<u32>], cap: usize) -> Result<IndexSet<K>, ScanError> {
    let mut set: IndexSet<K> = IndexSet::new();
    set.insert(K::pack(&kernel.identity(), bits));
    let mut cur = kernel.identity();
    let mut prod = cur.clone();
    let mut next = 0;
    while next < set.len() {
        set[next].unpack(bits, &mut cur);
        next += 1;
        for g in gens {
            kernel.mul(&cur, g, &mut prod);
            if set.insert(K::pack(&prod, bits)) && set.len() > cap {
                return Err(ScanError::CapExceeded { cap });
            }
        }
    }
    Ok(set)
}

/// Enumerate the group, failing once more than `cap` elements are found.
pub fn closure_enumerate(spec: &GroupSpec, cap: usize) -> Result<Closure, ScanError> {
    let kernel = Kernel::new(spec.field(), spec.dim());
    let bits = entry_bits(spec.field().q());
    let gens: Vec<Vec<u32>> = spec.gens().iter().map(|g| g.data().to_vec()).collect();
    let store = if spec.dim() * spec.dim() * bits as usize <= 128 {
        Store::Small(bfs(&kernel, bits, &gens, cap)?)
    } else {
        Store::Large(bfs(&kernel, bits, &gens, cap)?)
    };
    Ok(Closure { kernel, bits, store })
}

impl Closure {
    pub fn len(&self) -> usize {
        match &self.store {
            Store::Small(s) => s.len(),
            Store::Large(s) => s.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn field(&self) -> &Field {
        &self.kernel.field
    }

    pub fn dim(&self) -> usize {
        self.kernel.n
    }

    pub fn kernel(&self) -> &Kernel {
        &self.kernel
    }

    /// Raw entries of element `i`.
    pub fn entries(&self, i: usize, out: &mut [u32]) {
        match &self.store {
            Store::Small(s) => s[i].unpack(self.bits, out),
            Store::Large(s) => s[i].unpack(self.bits, out),
        }
    }

    pub fn get(&self, i: usize) -> Mat {
        let mut e = vec![0; self.dim() * self.dim()];
        self.entries(i, &mut e);
        Mat::new(self.field(), self.dim(), self.dim(), e).expect("stored entries are valid")
    }

    pub fn iter(&self) -> impl Iterator<Item = Mat> + '_ {
        (0..self.len()).map(|i| self.get(i))
    }

    pub fn contains(&self, m: &Mat) -> bool {
        if m.field() != self.field() || m.rows() != self.dim() || m.cols() != self.dim() {
            return false;
        }
        match &self.store {
            Store::Small(s) => s.contains(&u128::pack(m.data(), self.bits)),
            Store::Large(s) => s.contains(&<Box<[u64]>>::pack(m.data(), self.bits)),
        }
    }

    /// Element orders with multiplicities.
    pub fn order_histogram(&self) -> BTreeMap<u64, u64> {
        let mut hist = BTreeMap::new();
        let mut e = vec![0; self.dim() * self.dim()];
        let cap = self.len() as u64;
        for i in 0..self.len() {
            self.entries(i, &mut e);
            let o = self.kernel.order(&e, cap).expect("element order divides the group order");
            *hist.entry(o).or_insert(0) += 1;
        }
        hist
    }
}
