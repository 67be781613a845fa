//! `accyc`: almost-cyclicity tests, group scans, screening and fixtures.
//!
//! Exit status 0 when every requested check passes, 1 when a check fails,
//! 2 for usage and input errors.

use std::path::PathBuf;
use std::process::ExitCode;

use accyc::bounds::{describe_survivors, screen, shipped_rules, parse_registry, verify_rule, Grid};
use accyc::fixtures::{verify_bundle, Bundle, VerifyOptions};
use accyc::formats::{ingest, IngestRecord};
use accyc::groupscan::{closure_enumerate, scan_almost_cyclic, GroupSpec, Policy, ScanOptions, DEFAULT_CLOSURE_CAP};
use accyc::numth::{eta_gl, eta_sl, mu_classical, order_cap_exceptional, Classical, Exceptional};
use accyc::{is_almost_cyclic, Mode};
use anyhow::{anyhow, bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigUint;

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Plain,
    Tsv,
}

#[derive(Parser)]
#[command(name = "accyc", version, about = "Almost-cyclic matrices and the screening of groups of Lie type")]
struct Cli {
    #[arg(long, value_enum, default_value = "plain", global = true)]
    format: Format,
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Decide almost-cyclicity of every matrix in a gfmat, MeatAxe or group file.
    TestMatrix {
        file: PathBuf,
        #[arg(long, default_value = "strict")]
        mode: Mode,
        /// Fail unless every verdict equals this value.
        #[arg(long)]
        expect: Option<bool>,
    },
    /// Survey the element fingerprints of the group generated by a file's matrices.
    Scan {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value = "strict")]
        mode: Mode,
        /// Comma-separated: default, include-2, include-char, all.
        #[arg(long, default_value = "default")]
        policy: String,
        #[arg(long, default_value_t = 1)]
        seed: u64,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        /// Largest closure enumerated before switching to sampling.
        #[arg(long, default_value_t = 200_000)]
        cap: usize,
        /// Sample even when the closure would fit.
        #[arg(long)]
        sampled: bool,
        /// Fail unless every surveyed element of these orders is almost cyclic.
        #[arg(long, value_delimiter = ',')]
        require_orders: Vec<u64>,
        /// Fail unless every surveyed fingerprint is almost cyclic.
        #[arg(long)]
        require_all: bool,
    },
    /// Run one screening rule over its grid, or over an override grid.
    Screen {
        #[arg(long)]
        rule: String,
        #[arg(long)]
        grid: Option<String>,
        #[arg(long)]
        registry: Option<PathBuf>,
        /// Print one certificate per grid point.
        #[arg(long)]
        certificates: bool,
    },
    /// Bundled fixture checks.
    Fixtures {
        #[command(subcommand)]
        action: FixturesCmd,
    },
    /// Largest p-power element order in GL_n(q), or SL_n(q) with --sl.
    Eta {
        p: u64,
        n: u64,
        q: u64,
        #[arg(long)]
        sl: bool,
    },
    /// Upper bound on element orders in Aut L for PSL, PSU, PSp (n is half the
    /// dimension) or an exceptional tag such as 2B2, G2, E8.
    Cap {
        family: String,
        /// `n q` for classical families, `q` alone for exceptional ones.
        #[arg(num_args = 1..=2, required = true)]
        params: Vec<u64>,
    },
    /// Enumerate the group generated by a file's matrices and print its order histogram.
    Enumerate {
        #[arg(long)]
        gens: PathBuf,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_CAP)]
        cap: usize,
    },
}

#[derive(Subcommand)]
enum FixturesCmd {
    /// Check the registry, tables, histograms and occurrences; one line per item.
    Verify {
        #[arg(long)]
        registry: Option<PathBuf>,
        #[arg(long)]
        histograms: Option<PathBuf>,
        /// Recorded occurrences of almost cyclic elements.
        #[arg(long)]
        occurrences: Option<PathBuf>,
        /// Skip closures above 100000 elements.
        #[arg(long)]
        quick: bool,
        #[arg(long, default_value_t = 2000)]
        samples: usize,
        #[arg(long, default_value_t = 1)]
        seed: u64,
    },
}

/// Failure of a requested check, as opposed to an input error.
#[derive(Debug)]
struct CheckFailed;

impl std::fmt::Display for CheckFailed {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str("check failed")
    }
}

impl std::error::Error for CheckFailed {}

fn outcome(ok: bool) -> Result<()> {
    if ok {
        Ok(())
    } else {
        Err(CheckFailed.into())
    }
}

fn load(path: &PathBuf) -> Result<IngestRecord> {
    let rec = ingest(path)?;
    for w in &rec.warnings {
        eprintln!("warning: {}: {w}", rec.source);
    }
    Ok(rec)
}

fn group_of(path: &PathBuf) -> Result<GroupSpec> {
    let rec = load(path)?;
    match rec.group {
        Some(g) => Ok(g),
        None => Ok(GroupSpec::new(rec.mats, path.file_stem().map(|s| s.to_string_lossy().into_owned()), None)?),
    }
}

fn run(cli: Cli) -> Result<()> {
    let tsv = cli.format == Format::Tsv;
    match cli.cmd {
        Cmd::TestMatrix { file, mode, expect } => {
            let rec = load(&file)?;
            let mut ok = true;
            if tsv {
                println!("name\talmost_cyclic\tmode\talpha\tk\tcyclic\tscalar");
            }
            for (i, m) in rec.mats.iter().enumerate() {
                let v = is_almost_cyclic(m, mode)?;
                let name = if rec.mats.len() == 1 { rec.source.clone() } else { format!("{}[{i}]", rec.source) };
                if tsv {
                    let alpha = v.alpha.map_or("-".to_string(), |a| a.to_string());
                    println!("{name}\t{}\t{}\t{alpha}\t{}\t{}\t{}", v.almost_cyclic, v.mode, v.k, v.is_cyclic, v.is_scalar);
                } else {
                    println!("{}", v.report_line(&name));
                }
                ok &= expect.map_or(true, |e| e == v.almost_cyclic);
            }
            outcome(ok)
        }
        Cmd::Scan { gens, mode, policy, seed, samples, cap, sampled, require_orders, require_all } => {
            let policy = Policy::parse(&policy).map_err(|e| anyhow!(e))?;
            let spec = group_of(&gens)?;
            let opts = ScanOptions { cap, samples, seed, force_sampled: sampled };
            let report = scan_almost_cyclic(&spec, mode, &policy, &opts)?;
            print!("{}", if tsv { report.render_tsv() } else { report.render() });
            let problems = report.check_orders(&require_orders);
            for p in &problems {
                println!("FAIL {p}");
            }
            outcome(problems.is_empty() && (!require_all || report.all_almost_cyclic()))
        }
        Cmd::Screen { rule, grid, registry, certificates } => {
            let rules = match registry {
                Some(p) => parse_registry(&std::fs::read_to_string(&p).with_context(|| p.display().to_string())?)?,
                None => shipped_rules(),
            };
            let r = rules.iter().find(|r| r.id == rule).ok_or_else(|| anyhow!("no rule {rule:?}"))?;
            let grid: Option<Grid> = grid.map(|g| g.parse()).transpose().map_err(|e| anyhow!("grid: {e}"))?;
            let report = screen(r, grid.as_ref());
            if tsv {
                println!("point\tq\tn\tdim\talpha\tcap\trhs\tsurvives");
                for c in &report.certificates {
                    let pt: Vec<String> = c.point.iter().map(|(k, v)| format!("{k}={v}")).collect();
                    println!("{}\t{}\t{}\t{}\t{}\t{}\t{}\t{}", pt.join(","), c.q, c.n, c.dim, c.alpha, c.cap, c.rhs, c.survives);
                }
            } else {
                println!("rule {} {}", r.id, describe_survivors(&report));
                if certificates {
                    for c in &report.certificates {
                        println!("{}", c.line());
                    }
                }
                for e in &report.errors {
                    println!("ERROR {e}");
                }
            }
            if grid.is_some() {
                outcome(report.ok())
            } else {
                let result = verify_rule(r);
                if !tsv {
                    println!("{}", result.summary());
                }
                outcome(result.pass())
            }
        }
        Cmd::Fixtures { action: FixturesCmd::Verify { registry, histograms, occurrences, quick, samples, seed } } => {
            let bundle = Bundle::load(registry.as_deref(), histograms.as_deref(), occurrences.as_deref())?;
            let agg = verify_bundle(&bundle, &VerifyOptions { quick, samples, seed });
            print!("{}", if tsv { agg.render_tsv() } else { agg.render() });
            outcome(agg.pass())
        }
        Cmd::Eta { p, n, q, sl } => {
            let qb = BigUint::from(q);
            let v = if sl { eta_sl(p, n, &qb)? } else { eta_gl(p, n, &qb) };
            println!("{v}");
            Ok(())
        }
        Cmd::Cap { family, params } => {
            let (n, q) = match params[..] {
                [q] => (None, q),
                [n, q] => (Some(n), q),
                _ => bail!("expected `n q` or `q`"),
            };
            let cap = match (family.as_str(), n) {
                ("PSL" | "psl", Some(n)) => mu_classical(Classical::Psl, n, q)?,
                ("PSU" | "psu", Some(n)) => mu_classical(Classical::Psu, n, q)?,
                ("PSp" | "psp", Some(n)) => mu_classical(Classical::Psp, n, q)?,
                (tag, None) => {
                    let e = Exceptional::from_tag(tag).ok_or_else(|| anyhow!("unknown family {tag:?}"))?;
                    order_cap_exceptional(e, q)?
                }
                (tag, Some(_)) => bail!("family {tag:?} takes no rank parameter, or is unknown"),
            };
            if tsv {
                println!("family\tn\tq\tcap\tcitation");
                println!("{}\t{}\t{}\t{}\t{}", cap.family, n.map_or("-".into(), |n| n.to_string()), q, cap.cap, cap.citation);
            } else {
                println!("{} [{}]", cap.cap, cap.citation);
            }
            Ok(())
        }
        Cmd::Enumerate { gens, cap } => {
            let spec = group_of(&gens)?;
            let closure = closure_enumerate(&spec, cap)?;
            let hist = closure.order_histogram();
            if tsv {
                println!("order\tcount");
                for (o, c) in &hist {
                    println!("{o}\t{c}");
                }
            } else {
                let h: Vec<String> = hist.iter().map(|(o, c)| format!("{o}:{c}")).collect();
                println!("group {} order={} histogram {}", spec.label(), closure.len(), h.join(" "));
            }
            match spec.order {
                Some(o) if o != closure.len() as u64 => {
                    println!("FAIL declared order {o}");
                    outcome(false)
                }
                _ => Ok(()),
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) if e.is::<CheckFailed>() => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
