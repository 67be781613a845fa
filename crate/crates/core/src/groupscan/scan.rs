//! Per-fingerprint almost-cyclicity surveys of a matrix group.
//!
//! Elements are grouped by `(order, charpoly)`. This fingerprint is constant
//! on conjugacy classes but can merge several classes, so verdicts within a
//! fingerprint that disagree are reported as inconsistent rather than
//! combined.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;
use std::hash::{Hash, Hasher};

use super::closure::closure_enumerate;
use super::random::random_elements;
use super::{GroupSpec, ScanError};
use crate::gf::prime_power;
use crate::matgf::Mat;
use crate::predicate::{is_almost_cyclic, Mode};

/// Which element orders are surveyed. The default keeps prime-power orders
/// other than 2 that are coprime to the characteristic.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Policy {
    pub include_two: bool,
    pub include_char: bool,
    /// Survey every order above 1, prime power or not.
    pub all_orders: bool,
}

impl Policy {
    pub fn admits(&self, order: u64, p: u64) -> bool {
        if order == 1 {
            return false;
        }
        if self.all_orders {
            return true;
        }
        prime_power(order).is_some()
            && (self.include_two || order != 2)
            && (self.include_char || order % p != 0)
    }

    /// Parse a comma-separated flag list: `default`, `include-2`,
    /// `include-char`, `all`.
    pub fn parse(s: &str) -> Result<Policy, String> {
        let mut p = Policy::default();
        for flag in s.split(',').map(str::trim).filter(|f| !f.is_empty()) {
            match flag {
                "default" => {}
                "include-2" => p.include_two = true,
                "include-char" => p.include_char = true,
                "all" => p.all_orders = true,
                other => return Err(format!("unknown policy flag {other:?}")),
            }
        }
        Ok(p)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ScanOptions {
    /// Closure cap; larger groups are sampled.
    pub cap: usize,
    pub samples: usize,
    pub seed: u64,
    /// Sample even when the closure would fit.
    pub force_sampled: bool,
}

impl Default for ScanOptions {
    fn default() -> Self {
        ScanOptions { cap: 200_000, samples: 2000, seed: 1, force_sampled: false }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FingerprintStats {
    pub order: u64,
    /// Characteristic polynomial coefficients, constant term first.
    pub charpoly: Vec<u32>,
    pub charpoly_text: String,
    pub samples: u64,
    pub strict_true: u64,
    pub strict_false: u64,
    pub appendix_true: u64,
    pub appendix_false: u64,
    pub witness_hash: u64,
    pub witness: Mat,
}

/// `Some(v)` when every sample gave `v`.
fn uniform(t: u64, f: u64) -> Option<bool> {
    match (t, f) {
        (_, 0) => Some(true),
        (0, _) => Some(false),
        _ => None,
    }
}

impl FingerprintStats {
    pub fn strict(&self) -> Option<bool> {
        uniform(self.strict_true, self.strict_false)
    }

    pub fn appendix(&self) -> Option<bool> {
        uniform(self.appendix_true, self.appendix_false)
    }

    pub fn verdict(&self, mode: Mode) -> Option<bool> {
        match mode {
            Mode::Strict => self.strict(),
            Mode::Appendix => self.appendix(),
        }
    }

    pub fn inconsistent(&self) -> bool {
        self.strict().is_none() || self.appendix().is_none()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScanReport {
    pub name: String,
    pub mode: Mode,
    /// True when every group element was examined.
    pub complete: bool,
    pub group_order: Option<u64>,
    pub examined: u64,
    pub surveyed: u64,
    pub fingerprints: BTreeMap<(u64, Vec<u32>), FingerprintStats>,
}

fn verdict_text(v: Option<bool>) -> &'static str {
    match v {
        Some(true) => "true",
        Some(false) => "false",
        None => "INCONSISTENT",
    }
}

impl ScanReport {
    /// True when every surveyed fingerprint is almost cyclic in the report's
    /// mode.
    pub fn all_almost_cyclic(&self) -> bool {
        self.fingerprints.values().all(|s| s.verdict(self.mode) == Some(true))
    }

    pub fn orders(&self) -> BTreeSet<u64> {
        self.fingerprints.keys().map(|k| k.0).collect()
    }

    /// Problems with a claim that every element of each order in `orders`
    /// is almost cyclic: missing orders, failing or mixed fingerprints.
    pub fn check_orders(&self, orders: &[u64]) -> Vec<String> {
        let mut problems = Vec::new();
        for &o in orders {
            let fps: Vec<&FingerprintStats> = self.fingerprints.values().filter(|s| s.order == o).collect();
            if fps.is_empty() {
                problems.push(format!("no surveyed element of order {o}"));
            }
            for s in fps {
                if s.verdict(self.mode) != Some(true) {
                    problems.push(format!(
                        "order {o} charpoly {}: {}",
                        s.charpoly_text,
                        verdict_text(s.verdict(self.mode))
                    ));
                }
            }
        }
        problems
    }

    /// Plain text, one line per fingerprint.
    pub fn render(&self) -> String {
        let mut out = String::new();
        let order = self.group_order.map_or("?".to_string(), |o| o.to_string());
        let _ = writeln!(
            out,
            "group {} order={} mode={} complete={} examined={} surveyed={} fingerprints={}",
            self.name,
            order,
            self.mode,
            self.complete,
            self.examined,
            self.surveyed,
            self.fingerprints.len()
        );
        for s in self.fingerprints.values() {
            let _ = writeln!(
                out,
                "order={} charpoly={} samples={} strict={} appendix={} witness={:016x}",
                s.order,
                s.charpoly_text,
                s.samples,
                verdict_text(s.strict()),
                verdict_text(s.appendix()),
                s.witness_hash
            );
        }
        out
    }

    /// Tab-separated, with a header row.
    pub fn render_tsv(&self) -> String {
        let mut out = String::from("order\tcharpoly\tsamples\tstrict\tappendix\twitness\n");
        for s in self.fingerprints.values() {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}\t{:016x}",
                s.order,
                s.charpoly_text,
                s.samples,
                verdict_text(s.strict()),
                verdict_text(s.appendix()),
                s.witness_hash
            );
        }
        out
    }
}

fn matrix_hash(m: &Mat) -> u64 {
    let mut h = DefaultHasher::new();
    m.data().hash(&mut h);
    h.finish()
}

fn survey(
    report: &mut ScanReport,
    elements: impl Iterator<Item = Mat>,
    policy: &Policy,
    order_cap: u64,
) -> Result<(), ScanError> {
    for m in elements {
        report.examined += 1;
        let p = m.field().p() as u64;
        let Some(order) = m.element_order(order_cap)? else {
            continue;
        };
        if !policy.admits(order, p) {
            continue;
        }
        report.surveyed += 1;
        let cp = m.charpoly()?;
        let strict = is_almost_cyclic(&m, Mode::Strict)?.almost_cyclic;
        let appendix = is_almost_cyclic(&m, Mode::Appendix)?.almost_cyclic;
        let key = (order, cp.coeffs().to_vec());
        let entry = report.fingerprints.entry(key).or_insert_with(|| FingerprintStats {
            order,
            charpoly: cp.coeffs().to_vec(),
            charpoly_text: cp.to_string(),
            samples: 0,
            strict_true: 0,
            strict_false: 0,
            appendix_true: 0,
            appendix_false: 0,
            witness_hash: matrix_hash(&m),
            witness: m.clone(),
        });
        entry.samples += 1;
        if strict {
            entry.strict_true += 1;
        } else {
            entry.strict_false += 1;
        }
        if appendix {
            entry.appendix_true += 1;
        } else {
            entry.appendix_false += 1;
        }
    }
    Ok(())
}

/// Survey the group exhaustively when its closure fits `opts.cap`, and by
/// `opts.samples` random elements otherwise.
pub fn scan_almost_cyclic(spec: &GroupSpec, mode: Mode, policy: &Policy, opts: &ScanOptions) -> Result<ScanReport, ScanError> {
    let mut report = ScanReport {
        name: spec.label(),
        mode,
        complete: false,
        group_order: spec.order,
        examined: 0,
        surveyed: 0,
        fingerprints: BTreeMap::new(),
    };
    let closure = if opts.force_sampled {
        None
    } else {
        match closure_enumerate(spec, opts.cap) {
            Ok(c) => Some(c),
            Err(ScanError::CapExceeded { .. }) => None,
            Err(e) => return Err(e),
        }
    };
    match closure {
        Some(c) => {
            let n = c.len() as u64;
            report.group_order = Some(n);
            report.complete = true;
            survey(&mut report, c.iter(), policy, n)?;
        }
        None => {
            let cap = spec.order.unwrap_or(crate::matgf::DEFAULT_ORDER_CAP);
            let elems = random_elements(spec, opts.samples, opts.seed)?;
            survey(&mut report, elems.into_iter(), policy, cap)?;
        }
    }
    Ok(report)
}
