//! The text registry of screening rules.
//!
//! ```text
//! rule psl3-nonweil
//! family PSL
//! grid n=3 q=pp:5..200
//! dim gmst2.A
//! alpha any
//! cap mu.psl
//! expect {5,7,13}
//! window n=3 q=pp:201..1000
//! cite nonweil-linear
//! ```
//!
//! Value specs: `7`, `a..b`, `pp:a..b` (prime powers), `prime:a..b`,
//! `list:a,b,c`. Optional keys: `where` (`odd(v)`, `even(v)`,
//! `coprime(a,b)`), `exclude v=x w=y`, `override v=x .. alpha=k`, `rhs`
//! (`uu3` for `alpha*(cap-1)`, `alpha-cap` for `alpha*cap`), `cmp` (`le` or
//! `lt`), `ell`.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use num_integer::Integer;

use super::alpha::Family;
use super::dim::DimFormula;
use super::BoundsError;
use crate::gf::{is_prime, prime_power};
use crate::numth::Exceptional;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ValueSpec {
    Fixed(u64),
    Range(u64, u64),
    PrimePowers(u64, u64),
    Primes(u64, u64),
    List(Vec<u64>),
}

impl ValueSpec {
    pub fn values(&self) -> Vec<u64> {
        match self {
            ValueSpec::Fixed(v) => vec![*v],
            ValueSpec::Range(a, b) => (*a..=*b).collect(),
            ValueSpec::PrimePowers(a, b) => (*a..=*b).filter(|&v| prime_power(v).is_some()).collect(),
            ValueSpec::Primes(a, b) => (*a..=*b).filter(|&v| is_prime(v)).collect(),
            ValueSpec::List(v) => v.clone(),
        }
    }

    pub fn is_fixed(&self) -> bool {
        matches!(self, ValueSpec::Fixed(_))
    }
}

impl fmt::Display for ValueSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            ValueSpec::Fixed(v) => write!(f, "{v}"),
            ValueSpec::Range(a, b) => write!(f, "{a}..{b}"),
            ValueSpec::PrimePowers(a, b) => write!(f, "pp:{a}..{b}"),
            ValueSpec::Primes(a, b) => write!(f, "prime:{a}..{b}"),
            ValueSpec::List(v) => {
                let items: Vec<String> = v.iter().map(u64::to_string).collect();
                write!(f, "list:{}", items.join(","))
            }
        }
    }
}

fn parse_range(s: &str) -> Result<(u64, u64), String> {
    let (a, b) = s.split_once("..").ok_or_else(|| format!("expected a..b, got {s:?}"))?;
    let a = a.parse().map_err(|_| format!("bad bound {a:?}"))?;
    let b = b.parse().map_err(|_| format!("bad bound {b:?}"))?;
    if a > b {
        return Err(format!("empty range {s}"));
    }
    Ok((a, b))
}

impl FromStr for ValueSpec {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        if let Some(r) = s.strip_prefix("pp:") {
            let (a, b) = parse_range(r)?;
            Ok(ValueSpec::PrimePowers(a, b))
        } else if let Some(r) = s.strip_prefix("prime:") {
            let (a, b) = parse_range(r)?;
            Ok(ValueSpec::Primes(a, b))
        } else if let Some(r) = s.strip_prefix("list:") {
            r.split(',')
                .map(|t| t.parse().map_err(|_| format!("bad list entry {t:?}")))
                .collect::<Result<_, _>>()
                .map(ValueSpec::List)
        } else if s.contains("..") {
            let (a, b) = parse_range(s)?;
            Ok(ValueSpec::Range(a, b))
        } else {
            s.parse().map(ValueSpec::Fixed).map_err(|_| format!("bad value spec {s:?}"))
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Filter {
    Odd(String),
    Even(String),
    Coprime(String, String),
}

impl Filter {
    fn keeps(&self, grid: &Grid, point: &[u64]) -> bool {
        let get = |v: &str| grid.index(v).map(|i| point[i]);
        match self {
            Filter::Odd(v) => get(v).is_none_or(|x| x % 2 == 1),
            Filter::Even(v) => get(v).is_none_or(|x| x % 2 == 0),
            Filter::Coprime(a, b) => match (get(a), get(b)) {
                (Some(x), Some(y)) => x.gcd(&y) == 1,
                _ => true,
            },
        }
    }
}

impl fmt::Display for Filter {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Filter::Odd(v) => write!(f, "odd({v})"),
            Filter::Even(v) => write!(f, "even({v})"),
            Filter::Coprime(a, b) => write!(f, "coprime({a},{b})"),
        }
    }
}

impl FromStr for Filter {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let (name, rest) = s.split_once('(').ok_or_else(|| format!("bad filter {s:?}"))?;
        let args: Vec<String> = rest
            .strip_suffix(')')
            .ok_or_else(|| format!("bad filter {s:?}"))?
            .split(',')
            .map(|a| a.trim().to_string())
            .collect();
        match (name, args.as_slice()) {
            ("odd", [v]) => Ok(Filter::Odd(v.clone())),
            ("even", [v]) => Ok(Filter::Even(v.clone())),
            ("coprime", [a, b]) => Ok(Filter::Coprime(a.clone(), b.clone())),
            _ => Err(format!("unknown filter {s:?}")),
        }
    }
}

/// Named variables with value specs, swept as a cartesian product in
/// declaration order.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct Grid {
    pub vars: Vec<(String, ValueSpec)>,
}

impl Grid {
    pub fn index(&self, name: &str) -> Option<usize> {
        self.vars.iter().position(|(v, _)| v == name)
    }

    /// Names of the variables that take more than one value.
    pub fn free_vars(&self) -> Vec<&str> {
        self.vars.iter().filter(|(_, s)| !s.is_fixed()).map(|(v, _)| v.as_str()).collect()
    }

    /// All points, each listing every variable's value in declaration order.
    pub fn points(&self) -> Vec<Vec<u64>> {
        let mut out = vec![Vec::new()];
        for (_, spec) in &self.vars {
            let vals = spec.values();
            out = out
                .into_iter()
                .flat_map(|p| {
                    vals.iter().map(move |&v| {
                        let mut p = p.clone();
                        p.push(v);
                        p
                    })
                })
                .collect();
        }
        out
    }

    /// Project a full point onto the free variables.
    pub fn free_part(&self, point: &[u64]) -> Vec<u64> {
        self.vars
            .iter()
            .zip(point)
            .filter(|((_, s), _)| !s.is_fixed())
            .map(|(_, &v)| v)
            .collect()
    }
}

impl fmt::Display for Grid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.vars.iter().map(|(v, s)| format!("{v}={s}")).collect();
        f.write_str(&parts.join(" "))
    }
}

impl FromStr for Grid {
    type Err = String;
    fn from_str(s: &str) -> Result<Self, String> {
        let mut vars: Vec<(String, ValueSpec)> = Vec::new();
        for tok in s.split_whitespace() {
            let (name, spec) = tok.split_once('=').ok_or_else(|| format!("expected var=spec, got {tok:?}"))?;
            if vars.iter().any(|(v, _)| v == name) {
                return Err(format!("variable {name} given twice"));
            }
            vars.push((name.to_string(), spec.parse()?));
        }
        if vars.is_empty() {
            return Err("empty grid".into());
        }
        Ok(Grid { vars })
    }
}

/// Which side of the inequality multiplies the cap.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Rhs {
    /// `alpha * (cap - 1)`
    #[default]
    Uu3,
    /// `alpha * cap`
    AlphaCap,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum Cmp {
    #[default]
    Le,
    Lt,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CapId {
    MuPsl,
    MuPsu,
    MuPsp,
    /// `p^m (q0 + 1)` for semisimple `p`-elements outside `PGL_2(q)`.
    T22Semisimple,
    /// `2^(m+1) (q0 + 1)` for 2-elements, q odd.
    T22TwoOdd,
    /// `2^(m+1)` for 2-elements, q even.
    T22TwoEven,
    /// `2^(t+m+2)` for 2-elements of linear and unitary groups.
    LuTwo,
    Exceptional(Exceptional),
}

impl CapId {
    pub fn id(self) -> String {
        match self {
            CapId::MuPsl => "mu.psl".into(),
            CapId::MuPsu => "mu.psu".into(),
            CapId::MuPsp => "mu.psp".into(),
            CapId::T22Semisimple => "t22.semisimple".into(),
            CapId::T22TwoOdd => "t22.2-odd".into(),
            CapId::T22TwoEven => "t22.2-even".into(),
            CapId::LuTwo => "lu.2".into(),
            CapId::Exceptional(e) => format!("exc.{}", e.tag()),
        }
    }
}

impl fmt::Display for CapId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.id())
    }
}

impl FromStr for CapId {
    type Err = BoundsError;
    fn from_str(s: &str) -> Result<Self, BoundsError> {
        Ok(match s {
            "mu.psl" => CapId::MuPsl,
            "mu.psu" => CapId::MuPsu,
            "mu.psp" => CapId::MuPsp,
            "t22.semisimple" => CapId::T22Semisimple,
            "t22.2-odd" => CapId::T22TwoOdd,
            "t22.2-even" => CapId::T22TwoEven,
            "lu.2" => CapId::LuTwo,
            other => other
                .strip_prefix("exc.")
                .and_then(Exceptional::from_tag)
                .map(CapId::Exceptional)
                .ok_or_else(|| BoundsError::UnknownCap(s.to_string()))?,
        })
    }
}

/// A point-specific `alpha` taken from a case analysis rather than from the
/// descriptor taxonomy.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlphaOverride {
    pub at: Vec<(String, u64)>,
    pub alpha: u64,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Rule {
    pub id: String,
    pub family: Family,
    pub grid: Grid,
    pub filters: Vec<Filter>,
    pub excludes: Vec<Vec<(String, u64)>>,
    pub dim: DimFormula,
    pub alpha: String,
    pub overrides: Vec<AlphaOverride>,
    pub cap: CapId,
    pub rhs: Rhs,
    pub cmp: Cmp,
    pub ell: Option<u64>,
    /// Survivor tuples over the grid's free variables.
    pub expect: BTreeSet<Vec<u64>>,
    pub windows: Vec<Grid>,
    pub cite: String,
    /// 1-based line of the `rule` header.
    pub line: usize,
}

fn matches_at(grid: &Grid, point: &[u64], at: &[(String, u64)]) -> bool {
    at.iter().all(|(v, x)| grid.index(v).is_some_and(|i| point[i] == *x))
}

impl Rule {
    /// Whether `point` of `grid` passes the rule's filters and exclusions.
    pub fn admits(&self, grid: &Grid, point: &[u64]) -> bool {
        self.filters.iter().all(|f| f.keeps(grid, point))
            && !self.excludes.iter().any(|e| matches_at(grid, point, e))
    }

    pub fn alpha_override(&self, grid: &Grid, point: &[u64]) -> Option<u64> {
        self.overrides.iter().find(|o| matches_at(grid, point, &o.at)).map(|o| o.alpha)
    }

    pub fn grid_points(&self) -> Vec<Vec<u64>> {
        self.grid.points().into_iter().filter(|p| self.admits(&self.grid, p)).collect()
    }
}

/// Format a tuple over the free variables: `5` or `(5,2)`.
pub fn format_tuple(t: &[u64]) -> String {
    match t {
        [x] => x.to_string(),
        _ => {
            let parts: Vec<String> = t.iter().map(u64::to_string).collect();
            format!("({})", parts.join(","))
        }
    }
}

pub fn format_set<'a>(set: impl IntoIterator<Item = &'a Vec<u64>>) -> String {
    let parts: Vec<String> = set.into_iter().map(|t| format_tuple(t)).collect();
    format!("{{{}}}", parts.join(","))
}

fn parse_set(s: &str, arity: usize) -> Result<BTreeSet<Vec<u64>>, String> {
    let inner = s
        .trim()
        .strip_prefix('{')
        .and_then(|r| r.strip_suffix('}'))
        .ok_or_else(|| format!("expected {{...}}, got {s:?}"))?;
    let mut out = BTreeSet::new();
    let mut rest = inner.trim();
    while !rest.is_empty() {
        let (item, tail) = if let Some(r) = rest.strip_prefix('(') {
            let close = r.find(')').ok_or("unclosed tuple")?;
            (&r[..close], r[close + 1..].trim_start())
        } else {
            match rest.find(',') {
                Some(i) => (&rest[..i], &rest[i..]),
                None => (rest, ""),
            }
        };
        let tuple: Vec<u64> = item
            .split(',')
            .map(|t| t.trim().parse().map_err(|_| format!("bad set entry {t:?}")))
            .collect::<Result<_, _>>()?;
        if tuple.len() != arity {
            return Err(format!("entry {item:?} has {} values, the grid has {arity} free variables", tuple.len()));
        }
        out.insert(tuple);
        rest = tail.strip_prefix(',').unwrap_or(tail).trim_start();
    }
    Ok(out)
}

fn parse_assignments(s: &str) -> Result<Vec<(String, u64)>, String> {
    s.split_whitespace()
        .map(|tok| {
            let (v, x) = tok.split_once('=').ok_or_else(|| format!("expected var=value, got {tok:?}"))?;
            let x = x.parse().map_err(|_| format!("bad value in {tok:?}"))?;
            Ok((v.to_string(), x))
        })
        .collect()
}

#[derive(Default)]
struct Draft {
    id: String,
    line: usize,
    family: Option<Family>,
    grid: Option<Grid>,
    filters: Vec<Filter>,
    excludes: Vec<Vec<(String, u64)>>,
    dim: Option<DimFormula>,
    alpha: Option<String>,
    overrides: Vec<AlphaOverride>,
    cap: Option<CapId>,
    rhs: Rhs,
    cmp: Cmp,
    ell: Option<u64>,
    expect: Option<(String, usize)>,
    windows: Vec<Grid>,
    cite: Option<String>,
}

fn perr(line: usize, msg: impl Into<String>) -> BoundsError {
    BoundsError::Parse { line, msg: msg.into() }
}

impl Draft {
    fn finish(self) -> Result<Rule, BoundsError> {
        let line = self.line;
        let missing = |k: &str| perr(line, format!("rule {} lacks `{k}`", self.id));
        let grid = self.grid.clone().ok_or_else(|| missing("grid"))?;
        let (expect_text, expect_line) = self.expect.clone().ok_or_else(|| missing("expect"))?;
        let arity = grid.free_vars().len();
        let expect = parse_set(&expect_text, arity).map_err(|m| perr(expect_line, m))?;
        if self.windows.is_empty() {
            return Err(missing("window"));
        }
        let rule = Rule {
            family: self.family.ok_or_else(|| missing("family"))?,
            dim: self.dim.ok_or_else(|| missing("dim"))?,
            alpha: self.alpha.clone().ok_or_else(|| missing("alpha"))?,
            cap: self.cap.ok_or_else(|| missing("cap"))?,
            cite: self.cite.clone().ok_or_else(|| missing("cite"))?,
            id: self.id,
            grid,
            filters: self.filters,
            excludes: self.excludes,
            overrides: self.overrides,
            rhs: self.rhs,
            cmp: self.cmp,
            ell: self.ell,
            expect,
            windows: self.windows,
            line,
        };
        let points: BTreeSet<Vec<u64>> =
            rule.grid_points().iter().map(|p| rule.grid.free_part(p)).collect();
        if let Some(stray) = rule.expect.iter().find(|t| !points.contains(*t)) {
            return Err(perr(
                expect_line,
                format!("expected survivor {} of rule {} is not a grid point", format_tuple(stray), rule.id),
            ));
        }
        Ok(rule)
    }
}

/// Parse a registry. Rule ids must be unique.
pub fn parse_registry(text: &str) -> Result<Vec<Rule>, BoundsError> {
    let mut rules: Vec<Rule> = Vec::new();
    let mut draft: Option<Draft> = None;
    for (i, raw) in text.lines().enumerate() {
        let ln = i + 1;
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (key, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        if key == "rule" {
            if rest.is_empty() {
                return Err(perr(ln, "rule needs an id"));
            }
            if let Some(d) = draft.take() {
                rules.push(d.finish()?);
            }
            if rules.iter().any(|r| r.id == rest) {
                return Err(perr(ln, format!("duplicate rule {rest}")));
            }
            draft = Some(Draft { id: rest.to_string(), line: ln, ..Draft::default() });
            continue;
        }
        let d = draft.as_mut().ok_or_else(|| perr(ln, format!("`{key}` outside a rule stanza")))?;
        let dup = |present: bool| if present { Err(perr(ln, format!("`{key}` given twice"))) } else { Ok(()) };
        match key {
            "family" => {
                dup(d.family.is_some())?;
                d.family = Some(rest.parse().map_err(|e: BoundsError| perr(ln, e.to_string()))?);
            }
            "grid" => {
                dup(d.grid.is_some())?;
                d.grid = Some(rest.parse().map_err(|m| perr(ln, m))?);
            }
            "window" => d.windows.push(rest.parse().map_err(|m| perr(ln, m))?),
            "where" => {
                for tok in rest.split_whitespace() {
                    d.filters.push(tok.parse().map_err(|m| perr(ln, m))?);
                }
            }
            "exclude" => d.excludes.push(parse_assignments(rest).map_err(|m| perr(ln, m))?),
            "dim" => {
                dup(d.dim.is_some())?;
                d.dim = Some(rest.parse().map_err(|e: BoundsError| perr(ln, e.to_string()))?);
            }
            "alpha" => {
                dup(d.alpha.is_some())?;
                d.alpha = Some(rest.to_string());
            }
            "override" => {
                let mut at = parse_assignments(rest).map_err(|m| perr(ln, m))?;
                let pos = at.iter().position(|(v, _)| v == "alpha").ok_or_else(|| perr(ln, "override needs alpha=<value>"))?;
                let alpha = at.remove(pos).1;
                d.overrides.push(AlphaOverride { at, alpha });
            }
            "cap" => {
                dup(d.cap.is_some())?;
                d.cap = Some(rest.parse().map_err(|e: BoundsError| perr(ln, e.to_string()))?);
            }
            "rhs" => {
                d.rhs = match rest {
                    "uu3" => Rhs::Uu3,
                    "alpha-cap" => Rhs::AlphaCap,
                    _ => return Err(perr(ln, format!("unknown rhs {rest:?}"))),
                }
            }
            "cmp" => {
                d.cmp = match rest {
                    "le" => Cmp::Le,
                    "lt" => Cmp::Lt,
                    _ => return Err(perr(ln, format!("unknown cmp {rest:?}"))),
                }
            }
            "ell" => d.ell = Some(rest.parse().map_err(|_| perr(ln, format!("bad ell {rest:?}")))?),
            "expect" => {
                dup(d.expect.is_some())?;
                d.expect = Some((rest.to_string(), ln));
            }
            "cite" => {
                dup(d.cite.is_some())?;
                d.cite = Some(rest.to_string());
            }
            other => return Err(perr(ln, format!("unknown key `{other}`"))),
        }
    }
    if let Some(d) = draft {
        rules.push(d.finish()?);
    }
    Ok(rules)
}

#[cfg(test)]
mod tests {
    use super::*;

    const ONE: &str = "\
rule demo            # comment
family PSL
grid n=3 q=pp:5..20
where odd(q)
exclude q=9
dim gmst2.A
alpha any
cap mu.psl
expect {5,7}
window n=3 q=pp:21..30
cite demo-key
";

    #[test]
    fn parses_a_stanza() {
        let rules = parse_registry(ONE).unwrap();
        assert_eq!(rules.len(), 1);
        let r = &rules[0];
        assert_eq!(r.grid.free_vars(), vec!["q"]);
        let qs: Vec<u64> = r.grid_points().iter().map(|p| p[1]).collect();
        assert_eq!(qs, vec![5, 7, 11, 13, 17, 19]);
        assert_eq!(r.expect.len(), 2);
        assert_eq!(r.cite, "demo-key");
    }

    #[test]
    fn sets_and_specs() {
        let s = parse_set("{(5,2), (7,2)}", 2).unwrap();
        assert_eq!(format_set(&s), "{(5,2),(7,2)}");
        assert!(parse_set("{}", 3).unwrap().is_empty());
        assert!(parse_set("{(5,2)}", 1).is_err());
        assert_eq!("prime:3..13".parse::<ValueSpec>().unwrap().values(), vec![3, 5, 7, 11, 13]);
        assert_eq!("list:4,8".parse::<ValueSpec>().unwrap().values(), vec![4, 8]);
        assert!("5..3".parse::<ValueSpec>().is_err());
    }

    #[test]
    fn rejects_malformed() {
        assert!(parse_registry("family PSL\n").is_err());
        assert!(parse_registry(&ONE.replace("cite demo-key\n", "")).is_err());
        assert!(parse_registry(&ONE.replace("{5,7}", "{5,9}")).is_err());
        assert!(parse_registry(&format!("{ONE}{ONE}")).is_err());
        assert!(parse_registry(&ONE.replace("mu.psl", "mu.foo")).is_err());
        assert!(parse_registry(&ONE.replace("gmst2.A", "nope")).is_err());
        assert!(parse_registry("").unwrap().is_empty());
    }
}
