//! Sweeping a rule over its grid and checking survivor lists.

use std::collections::BTreeSet;

use num_bigint::{BigInt, BigUint};
use num_rational::BigRational;
use num_traits::{One, ToPrimitive};
use rayon::prelude::*;

use super::alpha::{alpha_upper, Family};
use super::dim::{dim_lower, Kappa};
use super::registry::{format_set, parse_registry, CapId, Cmp, Grid, Rhs, Rule};
use super::BoundsError;
use crate::numth::{mu_classical, order_cap_exceptional, Classical, Exceptional};

/// The registry shipped with the crate.
pub const SHIPPED_REGISTRY: &str = include_str!("../../data/registry.txt");

pub fn shipped_rules() -> Vec<Rule> {
    parse_registry(SHIPPED_REGISTRY).expect("shipped registry parses")
}

/// Exact values behind one verdict.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    pub point: Vec<(String, u64)>,
    pub q: BigInt,
    pub n: u64,
    pub dim: BigInt,
    pub alpha: u64,
    /// Citation key of the alpha bound, or `override` for a rule-specific
    /// value that the taxonomy cannot derive.
    pub alpha_source: String,
    pub cap: BigRational,
    pub rhs: BigRational,
    pub cmp: Cmp,
    pub survives: bool,
}

impl Certificate {
    /// Recompute the verdict from the stored values.
    pub fn recheck(&self) -> bool {
        let lhs = BigRational::from_integer(self.dim.clone());
        match self.cmp {
            Cmp::Le => lhs <= self.rhs,
            Cmp::Lt => lhs < self.rhs,
        }
    }

    pub fn line(&self) -> String {
        let pt: Vec<String> = self.point.iter().map(|(v, x)| format!("{v}={x}")).collect();
        let op = match (self.survives, self.cmp) {
            (true, Cmp::Le) => "<=",
            (true, Cmp::Lt) => "<",
            (false, Cmp::Le) => ">",
            (false, Cmp::Lt) => ">=",
        };
        format!(
            "{} dim={} {op} rhs={} alpha={} ({}) cap={}",
            pt.join(" "),
            self.dim,
            self.rhs,
            self.alpha,
            self.alpha_source,
            self.cap
        )
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ScreenReport {
    pub rule_id: String,
    pub free_vars: Vec<String>,
    pub survivors: BTreeSet<Vec<u64>>,
    pub certificates: Vec<Certificate>,
    pub window_points: usize,
    /// Window points that satisfy the inequality.
    pub window_violations: Vec<Certificate>,
    /// Points where the rule could not be evaluated.
    pub errors: Vec<String>,
}

impl ScreenReport {
    pub fn ok(&self) -> bool {
        self.window_violations.is_empty() && self.errors.is_empty()
    }
}

fn big(n: u64) -> BigInt {
    BigInt::from(n)
}

fn rat(n: BigInt) -> BigRational {
    BigRational::from_integer(n)
}

struct Env<'a> {
    grid: &'a Grid,
    point: &'a [u64],
}

impl Env<'_> {
    fn get(&self, v: &str) -> Option<u64> {
        self.grid.index(v).map(|i| self.point[i])
    }

    fn need(&self, v: &str) -> Result<u64, BoundsError> {
        self.get(v).ok_or_else(|| BoundsError::OutOfDomain(format!("grid has no variable {v}")))
    }

    fn q(&self, family: Family) -> Result<BigInt, BoundsError> {
        if let Some(q) = self.get("q") {
            return Ok(big(q));
        }
        if family == Family::Exceptional(Exceptional::Suzuki) {
            if let Some(e) = self.get("e") {
                return Ok(BigInt::one() << (2 * e + 1));
            }
        }
        match (self.get("q0"), self.get("p"), self.get("m")) {
            (Some(q0), Some(p), Some(m)) => {
                let exp = BigUint::from(p).pow(m as u32);
                let exp = exp.to_u32().ok_or_else(|| BoundsError::OutOfDomain("tower too tall".into()))?;
                Ok(big(q0).pow(exp))
            }
            _ => Err(BoundsError::OutOfDomain("cannot derive q from the grid".into())),
        }
    }
}

fn small_q(q: &BigInt) -> Result<u64, BoundsError> {
    q.to_u64().ok_or_else(|| BoundsError::OutOfDomain(format!("q={q} is too large for this cap")))
}

fn cap_value(cap: CapId, env: &Env, n: u64, q: &BigInt) -> Result<BigRational, BoundsError> {
    let pow = |b: u64, e: u64| big(b).pow(e as u32);
    Ok(match cap {
        CapId::MuPsl => mu_classical(Classical::Psl, n, small_q(q)?)?.cap,
        CapId::MuPsu => mu_classical(Classical::Psu, n, small_q(q)?)?.cap,
        CapId::MuPsp => mu_classical(Classical::Psp, n, small_q(q)?)?.cap,
        CapId::T22Semisimple => {
            let (q0, p, m) = (env.need("q0")?, env.need("p")?, env.need("m")?);
            rat(pow(p, m) * (q0 + 1))
        }
        CapId::T22TwoOdd => {
            let (q0, m) = (env.need("q0")?, env.need("m")?);
            rat(pow(2, m + 1) * (q0 + 1))
        }
        CapId::T22TwoEven => rat(pow(2, env.need("m")? + 1)),
        CapId::LuTwo => {
            let qs = small_q(q)?;
            if !qs.is_power_of_two() || qs < 2 {
                return Err(BoundsError::OutOfDomain(format!("lu.2 needs q a power of 2, got {qs}")));
            }
            let a = qs.trailing_zeros() as u64;
            let m = a.trailing_zeros() as u64;
            if n < 2 {
                return Err(BoundsError::OutOfDomain("lu.2 needs n >= 2".into()));
            }
            // 2^t < n <= 2^(t+1)
            let t = 63 - (n - 1).leading_zeros() as u64;
            rat(pow(2, t + m + 2))
        }
        CapId::Exceptional(e) => order_cap_exceptional(e, small_q(q)?)?.cap,
    })
}

fn evaluate(rule: &Rule, grid: &Grid, point: &[u64]) -> Result<Certificate, BoundsError> {
    let env = Env { grid, point };
    let q = env.q(rule.family)?;
    let n = env.get("n").or(rule.dim.fixed_n()).unwrap_or(0);
    let kappa = rule.ell.map_or(Kappa::WorstCase, Kappa::Ell);
    let dim = dim_lower(rule.dim, n, &q, kappa)?;
    let (alpha, alpha_source) = match rule.alpha_override(grid, point) {
        Some(a) => (a, "override".to_string()),
        None => {
            if let Ok(a) = rule.alpha.parse::<u64>() {
                (a, "fixed".to_string())
            } else {
                let b = alpha_upper(rule.family, n, q.to_u64().unwrap_or(u64::MAX), &rule.alpha)?;
                (b.value, b.citation.to_string())
            }
        }
    };
    let cap = cap_value(rule.cap, &env, n, &q)?;
    let factor = match rule.rhs {
        Rhs::Uu3 => &cap - BigRational::one(),
        Rhs::AlphaCap => cap.clone(),
    };
    let rhs = factor * rat(big(alpha));
    let mut cert = Certificate {
        point: grid.vars.iter().map(|(v, _)| v.clone()).zip(point.iter().copied()).collect(),
        q,
        n,
        dim,
        alpha,
        alpha_source,
        cap,
        rhs,
        cmp: rule.cmp,
        survives: false,
    };
    cert.survives = cert.recheck();
    Ok(cert)
}

fn sweep(rule: &Rule, grid: &Grid) -> Vec<Result<Certificate, String>> {
    let points: Vec<Vec<u64>> = grid.points().into_iter().filter(|p| rule.admits(grid, p)).collect();
    points
        .par_iter()
        .map(|p| {
            evaluate(rule, grid, p).map_err(|e| {
                let at: Vec<String> = grid.vars.iter().zip(p).map(|((v, _), x)| format!("{v}={x}")).collect();
                format!("{}: {e}", at.join(" "))
            })
        })
        .collect()
}

/// Sweep `rule` over its grid, or over `grid` when given, and check that
/// every window point fails.
pub fn screen(rule: &Rule, grid: Option<&Grid>) -> ScreenReport {
    let grid = grid.unwrap_or(&rule.grid);
    let mut report = ScreenReport {
        rule_id: rule.id.clone(),
        free_vars: grid.free_vars().iter().map(|s| s.to_string()).collect(),
        survivors: BTreeSet::new(),
        certificates: Vec::new(),
        window_points: 0,
        window_violations: Vec::new(),
        errors: Vec::new(),
    };
    for (res, point) in sweep(rule, grid).into_iter().zip(grid.points().into_iter().filter(|p| rule.admits(grid, p))) {
        match res {
            Ok(c) => {
                if c.survives {
                    report.survivors.insert(grid.free_part(&point));
                }
                report.certificates.push(c);
            }
            Err(e) => report.errors.push(e),
        }
    }
    for w in &rule.windows {
        for res in sweep(rule, w) {
            report.window_points += 1;
            match res {
                Ok(c) if c.survives => report.window_violations.push(c),
                Ok(_) => {}
                Err(e) => report.errors.push(format!("window {e}")),
            }
        }
    }
    report
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FixtureResult {
    pub rule_id: String,
    pub expected: BTreeSet<Vec<u64>>,
    pub report: ScreenReport,
    pub missing: BTreeSet<Vec<u64>>,
    pub unexpected: BTreeSet<Vec<u64>>,
}

impl FixtureResult {
    pub fn pass(&self) -> bool {
        self.missing.is_empty() && self.unexpected.is_empty() && self.report.ok()
    }

    pub fn summary(&self) -> String {
        let r = &self.report;
        if self.pass() {
            return format!(
                "PASS {} survivors={} window={}/{} fail",
                self.rule_id,
                format_set(&r.survivors),
                r.window_points,
                r.window_points
            );
        }
        let mut parts = Vec::new();
        if !self.missing.is_empty() {
            parts.push(format!("missing={}", format_set(&self.missing)));
        }
        if !self.unexpected.is_empty() {
            parts.push(format!("unexpected={}", format_set(&self.unexpected)));
        }
        if !r.window_violations.is_empty() {
            let pts: Vec<String> = r
                .window_violations
                .iter()
                .map(|c| c.point.iter().map(|(v, x)| format!("{v}={x}")).collect::<Vec<_>>().join(" "))
                .collect();
            parts.push(format!("WINDOW_VIOLATION [{}]", pts.join("; ")));
        }
        if !r.errors.is_empty() {
            parts.push(format!("errors=[{}]", r.errors.join("; ")));
        }
        format!("FAIL {} {}", self.rule_id, parts.join(" "))
    }
}

pub fn verify_rule(rule: &Rule) -> FixtureResult {
    let report = screen(rule, None);
    FixtureResult {
        rule_id: rule.id.clone(),
        missing: rule.expect.difference(&report.survivors).cloned().collect(),
        unexpected: report.survivors.difference(&rule.expect).cloned().collect(),
        expected: rule.expect.clone(),
        report,
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SuiteReport {
    pub results: Vec<FixtureResult>,
    pub warnings: Vec<String>,
}

impl SuiteReport {
    pub fn pass(&self) -> bool {
        self.results.iter().all(FixtureResult::pass)
    }

    pub fn failures(&self) -> impl Iterator<Item = &FixtureResult> {
        self.results.iter().filter(|r| !r.pass())
    }
}

/// Check every rule's survivor set and window. An empty registry passes
/// with a warning.
pub fn verify_fixture_suite(rules: &[Rule]) -> SuiteReport {
    let mut warnings = Vec::new();
    if rules.is_empty() {
        warnings.push("registry is empty; nothing verified".to_string());
    }
    SuiteReport { results: rules.iter().map(verify_rule).collect(), warnings }
}

/// Convenience for reports: the survivors rendered over the free variables.
pub fn describe_survivors(report: &ScreenReport) -> String {
    let names = match report.free_vars.as_slice() {
        [v] => v.clone(),
        vs => format!("({})", vs.join(",")),
    };
    format!("{names} in {}", format_set(&report.survivors))
}
