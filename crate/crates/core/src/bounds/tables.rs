//! Fixed numeric checks: the elementary inequalities comparing degree bounds
//! with `n(q-1)`, and the table of per-group bounds for `|g|`, `alpha(g)` and
//! the degree.

use std::collections::BTreeSet;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::dim::{dim_lower, DimFormula, Kappa};
use crate::gf::prime_power;
use crate::numth::{mu_classical, Classical};

fn int(n: u64) -> BigInt {
    BigInt::from(n)
}

fn qpow(q: u64, e: u64) -> BigInt {
    int(q).pow(e as u32)
}

/// One strict inequality `lhs(n,q) > rhs(n,q)` with its printed exceptions.
pub struct No2Case {
    pub label: &'static str,
    pub ns: &'static [u64],
    pub odd_q_only: bool,
    lhs: fn(u64, u64) -> BigInt,
    rhs: fn(u64, u64) -> BigInt,
    /// Values of `q` where the inequality is allowed (and required) to fail.
    pub exceptions: &'static [u64],
}

fn linear(n: u64, q: u64) -> BigInt {
    (qpow(q, n) - 1) / (q - 1) - 2
}

fn unitary_odd(n: u64, q: u64) -> BigInt {
    (qpow(q, n) - q) / (q + 1)
}

fn unitary_even(n: u64, q: u64) -> BigInt {
    (qpow(q, n) - 1) / (q + 1)
}

fn half(n: u64, q: u64) -> BigInt {
    (qpow(q, n) - 1) / 2
}

pub const NO2_CASES: [No2Case; 9] = [
    No2Case { label: "1: n>=5", ns: &[5, 6, 7, 8, 9, 10, 11, 12], odd_q_only: false, lhs: linear, rhs: |n, q| int(n * (q - 1)), exceptions: &[] },
    No2Case { label: "1: n=3", ns: &[3], odd_q_only: false, lhs: linear, rhs: |_, q| int(4 * (q - 1)), exceptions: &[] },
    No2Case { label: "1: n=4", ns: &[4], odd_q_only: false, lhs: linear, rhs: |_, q| int(7 * (q - 1)), exceptions: &[] },
    No2Case { label: "2: n>=3", ns: &[3, 4, 5, 6, 7, 8, 9, 10, 11, 12], odd_q_only: true, lhs: half, rhs: |n, q| int(2 * n * (q - 1)), exceptions: &[] },
    No2Case { label: "2: n=2", ns: &[2], odd_q_only: true, lhs: half, rhs: |_, q| int(6 * (q - 1)), exceptions: &[3, 5, 7, 9, 11] },
    No2Case { label: "3: n>=5 odd", ns: &[5, 7, 9, 11], odd_q_only: false, lhs: unitary_odd, rhs: |n, q| int(n * (q - 1)), exceptions: &[] },
    No2Case { label: "3: n=3", ns: &[3], odd_q_only: false, lhs: unitary_odd, rhs: |_, q| int(4 * (q - 1)), exceptions: &[2, 3, 4] },
    No2Case { label: "4: n>=6 even", ns: &[6, 8, 10, 12], odd_q_only: false, lhs: unitary_even, rhs: |n, q| int(n * (q - 1)), exceptions: &[] },
    No2Case { label: "4: n=4", ns: &[4], odd_q_only: false, lhs: unitary_even, rhs: |_, q| int(6 * (q - 1)), exceptions: &[2] },
];

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct No2Result {
    pub label: &'static str,
    pub checked: usize,
    pub violations: BTreeSet<(u64, u64)>,
    pub expected: BTreeSet<(u64, u64)>,
}

impl No2Result {
    pub fn pass(&self) -> bool {
        self.violations == self.expected
    }
}

impl No2Case {
    pub fn holds(&self, n: u64, q: u64) -> bool {
        (self.lhs)(n, q) > (self.rhs)(n, q)
    }

    /// Sweep prime powers `q <= q_max` and every listed `n`.
    pub fn check(&self, q_max: u64) -> No2Result {
        let qs: Vec<u64> = (2..=q_max)
            .filter(|&q| prime_power(q).is_some() && (!self.odd_q_only || q % 2 == 1))
            .collect();
        let mut violations = BTreeSet::new();
        let mut expected = BTreeSet::new();
        for &n in self.ns {
            for &q in &qs {
                if !self.holds(n, q) {
                    violations.insert((n, q));
                }
                if self.exceptions.contains(&q) {
                    expected.insert((n, q));
                }
            }
        }
        No2Result { label: self.label, checked: self.ns.len() * qs.len(), violations, expected }
    }
}

pub fn no2_inequalities(q_max: u64) -> Vec<No2Result> {
    NO2_CASES.iter().map(|c| c.check(q_max)).collect()
}

/// One row of the bounds table for the leftover linear, unitary and
/// symplectic groups. `n` is the rank parameter (half the dimension for
/// `PSp`).
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct TableRow {
    pub family: Classical,
    pub n: u64,
    pub q: u64,
    pub order_cap: u64,
    pub alpha: u64,
    pub dim: u64,
}

const fn row(family: Classical, n: u64, q: u64, order_cap: u64, alpha: u64, dim: u64) -> TableRow {
    TableRow { family, n, q, order_cap, alpha, dim }
}

use Classical::{Psl, Psp, Psu};

pub const LEFTOVER_TABLE: [TableRow; 25] = [
    row(Psl, 3, 5, 31, 3, 96),
    row(Psl, 3, 7, 19, 4, 96),
    row(Psl, 3, 13, 61, 4, 672),
    row(Psl, 4, 4, 17, 6, 189),
    row(Psl, 4, 5, 31, 6, 248),
    row(Psl, 4, 7, 25, 6, 1026),
    row(Psl, 4, 9, 41, 6, 2912),
    row(Psl, 4, 11, 61, 6, 6650),
    row(Psl, 4, 13, 61, 6, 13176),
    row(Psu, 3, 5, 8, 3, 28),
    row(Psu, 3, 8, 19, 3, 105),
    row(Psu, 3, 11, 37, 3, 260),
    row(Psu, 3, 17, 32, 3, 912),
    row(Psu, 4, 4, 17, 6, 220),
    row(Psu, 4, 5, 13, 6, 272),
    row(Psu, 4, 7, 43, 6, 1074),
    row(Psu, 4, 9, 64, 6, 2992),
    row(Psu, 4, 11, 64, 6, 6770),
    row(Psu, 5, 3, 61, 5, 324),
    row(Psu, 7, 2, 43, 7, 320),
    row(Psp, 2, 7, 25, 5, 126),
    row(Psp, 2, 9, 41, 5, 288),
    row(Psp, 2, 11, 61, 5, 550),
    row(Psp, 3, 3, 13, 6, 78),
    row(Psp, 4, 3, 41, 8, 780),
];

impl TableRow {
    pub fn name(&self) -> String {
        let dim = if self.family == Classical::Psp { 2 * self.n } else { self.n };
        format!("{}{}({})", self.family, dim, self.q)
    }

    pub fn non_weil_formula(&self) -> DimFormula {
        match (self.family, self.n) {
            (Classical::Psl, _) => DimFormula::Gmst2A,
            (Classical::Psu, 3) => DimFormula::Gmst2B3,
            (Classical::Psu, 4) => DimFormula::Gmst2B2,
            (Classical::Psu, _) => DimFormula::Gmst2B1,
            (Classical::Psp, _) => DimFormula::Gmst2C,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TableCheck {
    pub row: TableRow,
    /// `alpha * (cap - 1) < dim`
    pub rules_out: bool,
    /// The printed degree equals the non-Weil bound.
    pub dim_matches: bool,
    /// The printed order cap does not exceed the generic cap.
    pub cap_within_mu: bool,
}

impl TableCheck {
    pub fn pass(&self) -> bool {
        self.rules_out && self.dim_matches && self.cap_within_mu
    }
}

pub fn check_leftover_table() -> Vec<TableCheck> {
    LEFTOVER_TABLE
        .iter()
        .map(|row| {
            let lhs = int(row.alpha) * (int(row.order_cap) - 1);
            let formula = dim_lower(row.non_weil_formula(), row.n, &int(row.q), Kappa::WorstCase);
            let mu = mu_classical(row.family, row.n, row.q).map(|c| c.cap);
            TableCheck {
                row: *row,
                rules_out: lhs < int(row.dim),
                dim_matches: formula.is_ok_and(|d| d == int(row.dim)),
                cap_within_mu: mu.is_ok_and(|m| BigRational::from_integer(int(row.order_cap)) <= m),
            }
        })
        .collect()
}


#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn no2_exceptions_match() {
        for r in no2_inequalities(64) {
            assert!(r.pass(), "{}: {:?} vs {:?}", r.label, r.violations, r.expected);
        }
    }

    #[test]
    fn no2_printed_examples() {
        let item3 = NO2_CASES.iter().find(|c| c.label == "3: n=3").unwrap().check(64);
        let qs: Vec<u64> = item3.violations.iter().map(|&(_, q)| q).collect();
        assert_eq!(qs, vec![2, 3, 4]);
        let item2 = NO2_CASES.iter().find(|c| c.label == "2: n=2").unwrap().check(64);
        let qs: Vec<u64> = item2.violations.iter().map(|&(_, q)| q).collect();
        assert_eq!(qs, vec![3, 5, 7, 9, 11]);
    }

    #[test]
    fn leftover_table_is_consistent() {
        let checks = check_leftover_table();
        assert_eq!(checks.len(), 25);
        for c in checks {
            assert!(c.pass(), "{} {:?}", c.row.name(), c);
        }
    }
}
