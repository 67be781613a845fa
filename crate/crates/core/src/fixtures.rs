//! Bundled fixture data and the aggregate check behind `fixtures verify`.
//!
//! A bundle is the screening registry, a list of exact order histograms of
//! small matrix groups, and the recorded occurrences of almost cyclic
//! elements in cross-characteristic representations of groups of Lie type. Histograms are checked by
//! closure; cases that name a witness group file are checked by a sampled
//! strict scan; the others are validated structurally.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::{self, Write as _};
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::bounds::{check_leftover_table, no2_inequalities, parse_registry, shipped_rules, verify_fixture_suite, Rule};
use crate::formats::parse_group;
use crate::groupscan::{closure_enumerate, scan_almost_cyclic, Policy, ScanOptions};
use crate::predicate::Mode;

pub const SHIPPED_HISTOGRAMS: &str = include_str!("../data/fixtures/histograms.txt");
pub const SHIPPED_OCCURRENCES: &str = include_str!("../data/fixtures/occurrences.txt");

/// Group files shipped with the crate, by file name.
pub const BUNDLED_GROUPS: &[(&str, &str)] = &[
    ("gl2_2.group", include_str!("../data/groups/gl2_2.group")),
    ("gl2_3.group", include_str!("../data/groups/gl2_3.group")),
    ("sl2_3.group", include_str!("../data/groups/sl2_3.group")),
    ("gl3_2.group", include_str!("../data/groups/gl3_2.group")),
    ("sp6_2_f3.group", include_str!("../data/groups/sp6_2_f3.group")),
];

/// Closures above this many elements are skipped in quick mode.
pub const QUICK_LIMIT: u64 = 100_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FixtureError {
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("group file {0:?} not found")]
    MissingGroup(String),
    #[error("{0}")]
    Io(String),
}

fn perr(line: usize, msg: impl Into<String>) -> FixtureError {
    FixtureError::Parse { line, msg: msg.into() }
}

fn parse_list(line: usize, s: &str) -> Result<Vec<u64>, FixtureError> {
    s.split(',')
        .map(|t| t.trim().parse().map_err(|_| perr(line, format!("bad integer {t:?}"))))
        .collect()
}

fn content_lines(text: &str) -> impl Iterator<Item = (usize, &str)> {
    text.lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.split('#').next().unwrap_or("").trim()))
        .filter(|(_, l)| !l.is_empty())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct HistogramFixture {
    pub name: String,
    pub group_file: String,
    pub expected: BTreeMap<u64, u64>,
    pub line: usize,
}

impl HistogramFixture {
    pub fn total(&self) -> u64 {
        self.expected.values().sum()
    }
}

pub fn parse_histograms(text: &str) -> Result<Vec<HistogramFixture>, FixtureError> {
    let mut out: Vec<HistogramFixture> = Vec::new();
    for (line, l) in content_lines(text) {
        let toks: Vec<&str> = l.split_whitespace().collect();
        if toks[0] != "histogram" || toks.len() < 4 {
            return Err(perr(line, "expected `histogram <name> <group file> <order>:<count> ...`"));
        }
        let mut expected = BTreeMap::new();
        for t in &toks[3..] {
            let (o, c) = t.split_once(':').ok_or_else(|| perr(line, format!("bad entry {t:?}")))?;
            let o: u64 = o.parse().map_err(|_| perr(line, format!("bad order {o:?}")))?;
            let c: u64 = c.parse().map_err(|_| perr(line, format!("bad count {c:?}")))?;
            if expected.insert(o, c).is_some() {
                return Err(perr(line, format!("order {o} listed twice")));
            }
        }
        if out.iter().any(|h| h.name == toks[1]) {
            return Err(perr(line, format!("duplicate histogram {}", toks[1])));
        }
        out.push(HistogramFixture { name: toks[1].into(), group_file: toks[2].into(), expected, line });
    }
    Ok(out)
}

/// Characteristics of the representation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum EllSpec {
    Any,
    Only(Vec<u64>),
    Except(Vec<u64>),
}

impl EllSpec {
    pub fn admits(&self, ell: u64) -> bool {
        match self {
            EllSpec::Any => true,
            EllSpec::Only(v) => v.contains(&ell),
            EllSpec::Except(v) => !v.contains(&ell),
        }
    }
}

impl fmt::Display for EllSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let join = |v: &[u64]| v.iter().map(u64::to_string).collect::<Vec<_>>().join(",");
        match self {
            EllSpec::Any => f.write_str("any"),
            EllSpec::Only(v) => f.write_str(&join(v)),
            EllSpec::Except(v) => write!(f, "!{}", join(v)),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Orders {
    All,
    List(Vec<u64>),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Scope {
    /// The named group is the simple group; G is generated by it and g.
    Simple,
    /// The named group is G itself.
    Whole,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Occurrence {
    pub id: String,
    pub group: String,
    pub scope: Scope,
    pub dims: Vec<u64>,
    pub ell: EllSpec,
    pub orders: Orders,
    pub classes: Vec<String>,
    /// Orders realised only outside the simple group.
    pub outer: Vec<u64>,
    pub witness: Option<String>,
    pub witness_orders: Vec<u64>,
    pub line: usize,
}

const CASE_KEYS: [&str; 9] = ["group", "scope", "dim", "ell", "orders", "classes", "outer", "witness", "witness_orders"];

pub fn parse_occurrences(text: &str) -> Result<Vec<Occurrence>, FixtureError> {
    let mut out: Vec<Occurrence> = Vec::new();
    for (line, l) in content_lines(text) {
        let mut toks = l.split_whitespace();
        if toks.next() != Some("case") {
            return Err(perr(line, "expected `case <id> key=value ...`"));
        }
        let id = toks.next().ok_or_else(|| perr(line, "missing case id"))?.to_string();
        let mut kv = BTreeMap::new();
        for t in toks {
            let (k, v) = t.split_once('=').ok_or_else(|| perr(line, format!("bad field {t:?}")))?;
            if !CASE_KEYS.contains(&k) {
                return Err(perr(line, format!("unknown key {k:?}")));
            }
            if kv.insert(k, v).is_some() {
                return Err(perr(line, format!("key {k:?} repeated")));
            }
        }
        let req = |k: &str| kv.get(k).copied().ok_or_else(|| perr(line, format!("missing {k}")));
        let list_or_dash = |k: &str| -> Result<Vec<u64>, FixtureError> {
            match req(k)? {
                "-" => Ok(Vec::new()),
                s => parse_list(line, s),
            }
        };
        let scope = match req("scope")? {
            "L" => Scope::Simple,
            "G" => Scope::Whole,
            s => return Err(perr(line, format!("scope {s:?} is not L or G"))),
        };
        let ell = match req("ell")? {
            "any" => EllSpec::Any,
            s => match s.strip_prefix('!') {
                Some(rest) => EllSpec::Except(parse_list(line, rest)?),
                None => EllSpec::Only(parse_list(line, s)?),
            },
        };
        let orders = match req("orders")? {
            "all" => Orders::All,
            _ => Orders::List(list_or_dash("orders")?),
        };
        let classes = match req("classes")? {
            "-" => Vec::new(),
            s => s.split(',').map(str::to_string).collect(),
        };
        let witness = kv.get("witness").map(|s| s.to_string());
        let witness_orders = match kv.get("witness_orders") {
            Some(s) => parse_list(line, s)?,
            None => Vec::new(),
        };
        if witness.is_some() != !witness_orders.is_empty() {
            return Err(perr(line, "witness and witness_orders go together"));
        }
        if let (Orders::List(os), false) = (&orders, witness_orders.is_empty()) {
            if let Some(o) = witness_orders.iter().find(|o| !os.contains(o)) {
                return Err(perr(line, format!("witness order {o} not among the listed orders")));
            }
        }
        let case = Occurrence {
            id,
            group: req("group")?.to_string(),
            scope,
            dims: parse_list(line, req("dim")?)?,
            ell,
            orders,
            classes,
            outer: list_or_dash("outer")?,
            witness,
            witness_orders,
            line,
        };
        if matches!(&case.orders, Orders::List(v) if v.is_empty()) && case.classes.is_empty() && case.outer.is_empty() {
            return Err(perr(line, "case names no elements"));
        }
        if out.iter().any(|c| c.id == case.id) {
            return Err(perr(line, format!("duplicate case {}", case.id)));
        }
        out.push(case);
    }
    Ok(out)
}

/// Where group files named by fixtures are looked up.
#[derive(Clone, Debug, Default)]
pub struct GroupResolver {
    /// Directory of the fixture file; `None` uses only the bundled files.
    pub base: Option<PathBuf>,
}

impl GroupResolver {
    pub fn read(&self, name: &str) -> Result<String, FixtureError> {
        if let Some(base) = &self.base {
            let path = base.join(name);
            if path.exists() {
                return std::fs::read_to_string(&path).map_err(|e| FixtureError::Io(format!("{}: {e}", path.display())));
            }
        }
        let file = Path::new(name).file_name().and_then(|f| f.to_str()).unwrap_or(name);
        BUNDLED_GROUPS
            .iter()
            .find(|(n, _)| *n == file)
            .map(|(_, text)| text.to_string())
            .ok_or_else(|| FixtureError::MissingGroup(name.to_string()))
    }
}

pub struct Bundle {
    pub rules: Vec<Rule>,
    pub histograms: Vec<HistogramFixture>,
    pub cases: Vec<Occurrence>,
    pub histogram_groups: GroupResolver,
    pub case_groups: GroupResolver,
}

impl Bundle {
    pub fn shipped() -> Bundle {
        Bundle {
            rules: shipped_rules(),
            histograms: parse_histograms(SHIPPED_HISTOGRAMS).expect("shipped histograms parse"),
            cases: parse_occurrences(SHIPPED_OCCURRENCES).expect("shipped cases parse"),
            histogram_groups: GroupResolver::default(),
            case_groups: GroupResolver::default(),
        }
    }

    /// The shipped bundle with any of its three files replaced.
    pub fn load(registry: Option<&Path>, histograms: Option<&Path>, cases: Option<&Path>) -> Result<Bundle, FixtureError> {
        let read = |p: &Path| std::fs::read_to_string(p).map_err(|e| FixtureError::Io(format!("{}: {e}", p.display())));
        let mut b = Bundle::shipped();
        if let Some(p) = registry {
            b.rules = parse_registry(&read(p)?).map_err(|e| FixtureError::Io(format!("{}: {e}", p.display())))?;
        }
        if let Some(p) = histograms {
            b.histograms = parse_histograms(&read(p)?)?;
            b.histogram_groups.base = p.parent().map(Path::to_path_buf);
        }
        if let Some(p) = cases {
            b.cases = parse_occurrences(&read(p)?)?;
            b.case_groups.base = p.parent().map(Path::to_path_buf);
        }
        Ok(b)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    Skip,
}

impl fmt::Display for Status {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Status::Pass => "PASS",
            Status::Fail => "FAIL",
            Status::Skip => "SKIP",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Item {
    pub kind: &'static str,
    pub id: String,
    pub status: Status,
    pub detail: String,
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Aggregate {
    pub items: Vec<Item>,
    pub warnings: Vec<String>,
}

impl Aggregate {
    pub fn pass(&self) -> bool {
        self.items.iter().all(|i| i.status != Status::Fail)
    }

    pub fn failures(&self) -> impl Iterator<Item = &Item> {
        self.items.iter().filter(|i| i.status == Status::Fail)
    }

    fn count(&self, s: Status) -> usize {
        self.items.iter().filter(|i| i.status == s).count()
    }

    pub fn summary(&self) -> String {
        format!(
            "SUMMARY pass={} fail={} skip={}",
            self.count(Status::Pass),
            self.count(Status::Fail),
            self.count(Status::Skip)
        )
    }

    pub fn render(&self) -> String {
        let mut out = String::new();
        for w in &self.warnings {
            let _ = writeln!(out, "WARNING {w}");
        }
        for i in &self.items {
            let _ = writeln!(out, "{} {} {} {}", i.status, i.kind, i.id, i.detail);
        }
        let _ = writeln!(out, "{}", self.summary());
        out
    }

    pub fn render_tsv(&self) -> String {
        let mut out = String::from("status\tkind\tid\tdetail\n");
        for i in &self.items {
            let _ = writeln!(out, "{}\t{}\t{}\t{}", i.status, i.kind, i.id, i.detail);
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct VerifyOptions {
    pub quick: bool,
    pub samples: usize,
    pub seed: u64,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions { quick: false, samples: 2000, seed: 1 }
    }
}

fn format_hist(h: &BTreeMap<u64, u64>) -> String {
    h.iter().map(|(o, c)| format!("{o}:{c}")).collect::<Vec<_>>().join(" ")
}

fn check_histogram(h: &HistogramFixture, resolver: &GroupResolver, opts: &VerifyOptions) -> Item {
    let item = |status, detail: String| Item { kind: "histogram", id: h.name.clone(), status, detail };
    if opts.quick && h.total() > QUICK_LIMIT {
        return item(Status::Skip, format!("order {} above quick limit", h.total()));
    }
    let spec = match resolver.read(&h.group_file).map_err(|e| e.to_string()).and_then(|t| parse_group(&t).map_err(|e| e.to_string())) {
        Ok(s) => s,
        Err(e) => return item(Status::Fail, format!("cannot load {}: {e}", h.group_file)),
    };
    let cap = (h.total() as usize).max(1).saturating_mul(2);
    let closure = match closure_enumerate(&spec, cap) {
        Ok(c) => c,
        Err(e) => return item(Status::Fail, format!("closure: {e}")),
    };
    let got = closure.order_histogram();
    if got == h.expected {
        item(Status::Pass, format!("order={} {}", closure.len(), format_hist(&got)))
    } else {
        let orders: BTreeSet<u64> = got.keys().chain(h.expected.keys()).copied().collect();
        let diffs: Vec<String> = orders
            .into_iter()
            .filter_map(|o| {
                let (e, g) = (h.expected.get(&o).copied().unwrap_or(0), got.get(&o).copied().unwrap_or(0));
                (e != g).then(|| format!("{o}:expected={e},found={g}"))
            })
            .collect();
        item(Status::Fail, format!("mismatch {}", diffs.join(" ")))
    }
}

fn check_case(c: &Occurrence, resolver: &GroupResolver, opts: &VerifyOptions) -> Item {
    let item = |status, detail: String| Item { kind: "case", id: c.id.clone(), status, detail };
    let Some(file) = &c.witness else {
        return item(Status::Pass, format!("{} dim={:?} ell={} recorded", c.group, c.dims, c.ell));
    };
    let spec = match resolver.read(file).map_err(|e| e.to_string()).and_then(|t| parse_group(&t).map_err(|e| e.to_string())) {
        Ok(s) => s,
        Err(e) => return item(Status::Fail, format!("cannot load {file}: {e}")),
    };
    if !c.dims.contains(&(spec.dim() as u64)) {
        return item(Status::Fail, format!("witness has dimension {}, case lists {:?}", spec.dim(), c.dims));
    }
    let policy = Policy { include_two: true, include_char: true, all_orders: false };
    let scan_opts = ScanOptions { cap: 0, samples: opts.samples, seed: opts.seed, force_sampled: true };
    match scan_almost_cyclic(&spec, Mode::Strict, &policy, &scan_opts) {
        Ok(r) => {
            let problems = r.check_orders(&c.witness_orders);
            if problems.is_empty() {
                item(Status::Pass, format!("{} sampled={} orders {:?} strict-almost-cyclic", c.group, r.examined, c.witness_orders))
            } else {
                item(Status::Fail, problems.join("; "))
            }
        }
        Err(e) => item(Status::Fail, format!("scan: {e}")),
    }
}

/// Every registry rule, table row, inequality family, histogram and case,
/// one item each.
pub fn verify_bundle(b: &Bundle, opts: &VerifyOptions) -> Aggregate {
    let mut agg = Aggregate::default();
    let suite = verify_fixture_suite(&b.rules);
    agg.warnings.extend(suite.warnings.iter().cloned());
    for r in &suite.results {
        let status = if r.pass() { Status::Pass } else { Status::Fail };
        let summary = r.summary();
        let detail = summary.splitn(3, ' ').nth(2).unwrap_or("").to_string();
        agg.items.push(Item { kind: "rule", id: r.rule_id.clone(), status, detail });
    }
    for t in check_leftover_table() {
        let status = if t.pass() { Status::Pass } else { Status::Fail };
        let detail = format!(
            "rules_out={} dim_matches={} cap_within_mu={}",
            t.rules_out, t.dim_matches, t.cap_within_mu
        );
        agg.items.push(Item { kind: "table", id: t.row.name(), status, detail });
    }
    for r in no2_inequalities(if opts.quick { 200 } else { 1000 }) {
        let status = if r.pass() { Status::Pass } else { Status::Fail };
        let detail = format!("checked={} violations={:?}", r.checked, r.violations);
        agg.items.push(Item { kind: "no2", id: r.label.to_string(), status, detail });
    }
    for h in &b.histograms {
        agg.items.push(check_histogram(h, &b.histogram_groups, opts));
    }
    for c in &b.cases {
        agg.items.push(check_case(c, &b.case_groups, opts));
    }
    if b.histograms.is_empty() {
        agg.warnings.push("no histogram fixtures".into());
    }
    agg
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn shipped_files_parse() {
        let b = Bundle::shipped();
        assert_eq!(b.histograms.len(), 5);
        assert_eq!(b.cases.len(), 59);
        assert_eq!(b.cases.iter().filter(|c| c.witness.is_some()).count(), 1);
        for (name, _) in BUNDLED_GROUPS {
            assert!(GroupResolver::default().read(name).is_ok());
        }
    }

    #[test]
    fn case_parsing() {
        let c = &parse_occurrences("case x group=G scope=L dim=8 ell=!3,7 orders=7 classes=- outer=8").unwrap()[0];
        assert_eq!(c.ell, EllSpec::Except(vec![3, 7]));
        assert!(c.ell.admits(2) && !c.ell.admits(7));
        assert_eq!((c.scope, c.outer.clone()), (Scope::Simple, vec![8]));
        let bad = [
            "case x group=G scope=Q dim=8 ell=any orders=7 classes=- outer=-",
            "case x group=G scope=G dim=8 ell=any orders=- classes=- outer=-",
            "case x group=G scope=G dim=8 ell=any orders=7 classes=- outer=- witness=a.group",
            "case x group=G scope=G dim=8 ell=any orders=7 classes=- outer=- witness=a witness_orders=5",
            "case x group=G scope=G dim=8 ell=any orders=7 classes=- outer=- colour=red",
        ];
        for b in bad {
            assert!(parse_occurrences(b).is_err(), "{b}");
        }
    }

    #[test]
    fn histogram_parsing() {
        let h = parse_histograms("histogram A a.group 1:1 2:3 3:2\n").unwrap();
        assert_eq!(h[0].total(), 6);
        assert!(parse_histograms("histogram A a.group 1:1 1:2\n").is_err());
        assert!(parse_histograms("histogram A a.group\n").is_err());
    }

    #[test]
    fn small_histograms_and_mutation() {
        let mut b = Bundle::shipped();
        b.cases.clear();
        b.rules.clear();
        b.histograms.retain(|h| h.total() <= 200);
        let agg = verify_bundle(&b, &VerifyOptions { quick: true, ..Default::default() });
        assert!(agg.pass(), "{}", agg.render());
        b.histograms[1].expected.insert(4, 5);
        let agg = verify_bundle(&b, &VerifyOptions { quick: true, ..Default::default() });
        let failed: Vec<&str> = agg.failures().map(|i| i.id.as_str()).collect();
        assert_eq!(failed, vec!["SL2(3)"]);
    }
}
