//! Text formats for matrices and generator lists.
//!
//! * `gfmat p k rows cols` followed by `rows*cols` canonical encodings.
//! * MeatAxe ASCII mode 1: `1 q rows cols`, then the entries; for `q < 10`
//!   each entry is a single digit and digits may run together.
//! * Group files: `group p k dim ngen [name] [order]` followed by `ngen`
//!   matrices of `dim*dim` entries each.
//!
//! `#` starts a comment in gfmat and group files.

use std::fmt::Write as _;
use std::path::Path;

use thiserror::Error;

use crate::gf::{prime_power, Field, GfError};
use crate::groupscan::{GroupSpec, ScanError};
use crate::matgf::{Mat, MatError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum FormatError {
    #[error("bad header: {0}")]
    BadHeader(String),
    #[error("entry {value} out of range for GF({q})")]
    EntryOutOfRange { value: u64, q: u64 },
    #[error("expected {expected} entries, found {found}")]
    CountMismatch { expected: usize, found: usize },
    #[error("unsupported MeatAxe mode {0} (only mode 1 matrices are read)")]
    UnsupportedMode(u64),
    #[error("bad entry {0:?}")]
    BadEntry(String),
    #[error("unrecognised file format")]
    UnknownFormat,
    #[error("{0}")]
    Io(String),
    #[error(transparent)]
    Field(#[from] GfError),
    #[error(transparent)]
    Mat(#[from] MatError),
    #[error(transparent)]
    Group(#[from] ScanError),
}

fn strip_comments(text: &str) -> String {
    text.lines().map(|l| l.split('#').next().unwrap_or("")).collect::<Vec<_>>().join("\n")
}

fn header_int(tok: Option<&str>, what: &str) -> Result<u64, FormatError> {
    let tok = tok.ok_or_else(|| FormatError::BadHeader(format!("missing {what}")))?;
    tok.parse().map_err(|_| FormatError::BadHeader(format!("{what} {tok:?} is not an integer")))
}

fn entries<'a>(tokens: impl Iterator<Item = &'a str>, q: u64) -> Result<Vec<u32>, FormatError> {
    tokens
        .map(|t| {
            let v: u64 = t.parse().map_err(|_| FormatError::BadEntry(t.to_string()))?;
            if v >= q {
                Err(FormatError::EntryOutOfRange { value: v, q })
            } else {
                Ok(v as u32)
            }
        })
        .collect()
}

fn field_from(p: u64, k: u64) -> Result<Field, FormatError> {
    let k = u32::try_from(k).map_err(|_| FormatError::BadHeader(format!("degree {k} too large")))?;
    Ok(Field::new(p, k, None)?)
}

pub fn parse_gfmat(text: &str) -> Result<Mat, FormatError> {
    let clean = strip_comments(text);
    let mut toks = clean.split_whitespace();
    if toks.next() != Some("gfmat") {
        return Err(FormatError::BadHeader("expected `gfmat p k rows cols`".into()));
    }
    let p = header_int(toks.next(), "p")?;
    let k = header_int(toks.next(), "k")?;
    let rows = header_int(toks.next(), "rows")? as usize;
    let cols = header_int(toks.next(), "cols")? as usize;
    let field = field_from(p, k)?;
    let data = entries(toks, field.q() as u64)?;
    if data.len() != rows * cols {
        return Err(FormatError::CountMismatch { expected: rows * cols, found: data.len() });
    }
    Ok(Mat::new(&field, rows, cols, data)?)
}

fn body(m: &Mat) -> String {
    let mut out = String::new();
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(u32::to_string).collect();
        let _ = writeln!(out, "{}", row.join(" "));
    }
    out
}

pub fn write_gfmat(m: &Mat) -> String {
    let f = m.field();
    format!("gfmat {} {} {} {}\n{}", f.p(), f.k(), m.rows(), m.cols(), body(m))
}

/// A MeatAxe matrix and any caveats about its interpretation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MeatAxeMatrix {
    pub mat: Mat,
    pub warnings: Vec<String>,
}

pub fn parse_meataxe_ascii(text: &str) -> Result<MeatAxeMatrix, FormatError> {
    let mut lines = text.lines().skip_while(|l| l.trim().is_empty());
    let header = lines.next().ok_or_else(|| FormatError::BadHeader("empty file".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.len() != 4 {
        return Err(FormatError::BadHeader(format!("expected four integers, got {header:?}")));
    }
    let mode = header_int(Some(head[0]), "mode")?;
    if mode != 1 {
        return Err(FormatError::UnsupportedMode(mode));
    }
    let q = header_int(Some(head[1]), "q")?;
    let rows = header_int(Some(head[2]), "rows")? as usize;
    let cols = header_int(Some(head[3]), "cols")? as usize;
    let (p, k) = prime_power(q).ok_or_else(|| FormatError::BadHeader(format!("q={q} is not a prime power")))?;
    let field = Field::new(p, k, None)?;
    let rest: Vec<&str> = lines.collect();
    let data = if q < 10 {
        let digits: Vec<String> = rest
            .iter()
            .flat_map(|l| l.chars().filter(|c| !c.is_whitespace()))
            .map(String::from)
            .collect();
        entries(digits.iter().map(String::as_str), q)?
    } else {
        entries(rest.iter().flat_map(|l| l.split_whitespace()), q)?
    };
    if data.len() != rows * cols {
        return Err(FormatError::CountMismatch { expected: rows * cols, found: data.len() });
    }
    let mut warnings = Vec::new();
    if k > 1 {
        warnings.push(format!(
            "GF({q}) entries read as polynomial-basis encodings over modulus {:?}",
            field.modulus()
        ));
    }
    Ok(MeatAxeMatrix { mat: Mat::new(&field, rows, cols, data)?, warnings })
}

pub fn write_meataxe_ascii(m: &Mat) -> String {
    let q = m.field().q();
    let mut out = format!("1 {q} {} {}\n", m.rows(), m.cols());
    for i in 0..m.rows() {
        let row: Vec<String> = m.row(i).iter().map(u32::to_string).collect();
        let sep = if q < 10 { "" } else { " " };
        let _ = writeln!(out, "{}", row.join(sep));
    }
    out
}

pub fn parse_group(text: &str) -> Result<GroupSpec, FormatError> {
    let clean = strip_comments(text);
    let mut lines = clean.lines().filter(|l| !l.trim().is_empty());
    let header = lines.next().ok_or_else(|| FormatError::BadHeader("empty file".into()))?;
    let head: Vec<&str> = header.split_whitespace().collect();
    if head.first() != Some(&"group") || !(5..=7).contains(&head.len()) {
        return Err(FormatError::BadHeader("expected `group p k dim ngen [name] [order]`".into()));
    }
    let p = header_int(Some(head[1]), "p")?;
    let k = header_int(Some(head[2]), "k")?;
    let dim = header_int(Some(head[3]), "dim")? as usize;
    let ngen = header_int(Some(head[4]), "ngen")? as usize;
    let name = head.get(5).map(|s| s.to_string());
    let order = head.get(6).map(|s| header_int(Some(s), "order")).transpose()?;
    let field = field_from(p, k)?;
    let data = entries(lines.flat_map(|l| l.split_whitespace()), field.q() as u64)?;
    let per = dim * dim;
    if data.len() != per * ngen {
        return Err(FormatError::CountMismatch { expected: per * ngen, found: data.len() });
    }
    let gens = data
        .chunks(per.max(1))
        .take(ngen)
        .map(|c| Mat::new(&field, dim, dim, c.to_vec()))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(GroupSpec::new(gens, name, order)?)
}

pub fn write_group(spec: &GroupSpec) -> String {
    let f = spec.field();
    let mut out = format!("group {} {} {} {}", f.p(), f.k(), spec.dim(), spec.gens().len());
    if let Some(name) = &spec.name {
        let _ = write!(out, " {name}");
        if let Some(o) = spec.order {
            let _ = write!(out, " {o}");
        }
    }
    out.push('\n');
    for g in spec.gens() {
        out.push('\n');
        out.push_str(&body(g));
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Format {
    Gfmat,
    MeatAxe,
    Group,
}

/// Matrices read from one file.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IngestRecord {
    pub source: String,
    pub format: Format,
    pub field: Field,
    pub mats: Vec<Mat>,
    pub warnings: Vec<String>,
    /// Present for group files.
    pub group: Option<GroupSpec>,
}

/// Parse text whose format is detected from its first token.
pub fn ingest_text(source: &str, text: &str) -> Result<IngestRecord, FormatError> {
    let first = strip_comments(text).split_whitespace().next().map(str::to_string);
    let rec = |format, mats: Vec<Mat>, warnings, group| {
        let field = mats.first().map(|m: &Mat| m.field().clone()).ok_or(FormatError::UnknownFormat)?;
        Ok(IngestRecord { source: source.to_string(), format, field, mats, warnings, group })
    };
    match first.as_deref() {
        Some("gfmat") => rec(Format::Gfmat, vec![parse_gfmat(text)?], Vec::new(), None),
        Some("group") => {
            let g = parse_group(text)?;
            rec(Format::Group, g.gens().to_vec(), Vec::new(), Some(g))
        }
        Some(t) if t.chars().all(|c| c.is_ascii_digit()) => {
            let m = parse_meataxe_ascii(text)?;
            rec(Format::MeatAxe, vec![m.mat], m.warnings, None)
        }
        _ => Err(FormatError::UnknownFormat),
    }
}

pub fn ingest(path: &Path) -> Result<IngestRecord, FormatError> {
    let text = std::fs::read_to_string(path).map_err(|e| FormatError::Io(format!("{}: {e}", path.display())))?;
    ingest_text(&path.display().to_string(), &text)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gfmat_examples() {
        let m = parse_gfmat("gfmat 2 1 2 2\n1 0\n0 1\n").unwrap();
        assert!(m.is_identity());
        assert_eq!(
            parse_gfmat("gfmat 2 1 1 1\n7\n"),
            Err(FormatError::EntryOutOfRange { value: 7, q: 2 })
        );
        assert_eq!(
            parse_gfmat("gfmat 3 1 2 2\n1 0 2\n"),
            Err(FormatError::CountMismatch { expected: 4, found: 3 })
        );
        assert!(matches!(parse_gfmat("gfmat 4 1 1 1\n0"), Err(FormatError::Field(_))));
        assert!(matches!(parse_gfmat("matrix 2 1 1 1\n0"), Err(FormatError::BadHeader(_))));
    }

    #[test]
    fn gfmat_round_trip() {
        let f = Field::with_order(9).unwrap();
        let m = Mat::from_rows(&f, &[vec![0, 8, 3], vec![4, 1, 7]]).unwrap();
        assert_eq!(parse_gfmat(&write_gfmat(&m)).unwrap(), m);
    }

    #[test]
    fn meataxe_examples() {
        let m = parse_meataxe_ascii("1 2 3 3\n100\n010\n001\n").unwrap();
        assert!(m.mat.is_identity() && m.warnings.is_empty());
        let m = parse_meataxe_ascii("1 11 1 2\n10 3\n").unwrap();
        assert_eq!(m.mat.row(0), &[10, 3]);
        assert_eq!(parse_meataxe_ascii("2 2 3 3\n100\n"), Err(FormatError::UnsupportedMode(2)));
        assert!(matches!(parse_meataxe_ascii("1 3 2 2\n012\n"), Err(FormatError::CountMismatch { .. })));
        assert!(matches!(parse_meataxe_ascii("1 6 1 1\n0\n"), Err(FormatError::BadHeader(_))));
        // Line wrapping is free.
        let m = parse_meataxe_ascii("1 3 2 3\n01\n2 1\n02\n").unwrap();
        assert_eq!(m.mat.data(), &[0, 1, 2, 1, 0, 2]);
        let m = parse_meataxe_ascii("1 4 1 2\n23\n").unwrap();
        assert_eq!(m.warnings.len(), 1);
        assert_eq!(parse_meataxe_ascii(&write_meataxe_ascii(&m.mat)).unwrap().mat, m.mat);
    }

    #[test]
    fn group_round_trip() {
        let text = "group 2 1 2 2 GL2(2) 6\n# generators\n1 1\n0 1\n\n0 1\n1 0\n";
        let g = parse_group(text).unwrap();
        assert_eq!(g.gens().len(), 2);
        assert_eq!((g.name.as_deref(), g.order), (Some("GL2(2)"), Some(6)));
        assert_eq!(parse_group(&write_group(&g)).unwrap(), g);
        assert!(matches!(
            parse_group("group 2 1 2 1\n0 0\n0 0\n"),
            Err(FormatError::Group(ScanError::SingularGenerator(0)))
        ));
    }

    #[test]
    fn detection() {
        assert_eq!(ingest_text("a", "gfmat 2 1 1 1\n1").unwrap().format, Format::Gfmat);
        assert_eq!(ingest_text("b", "1 2 1 1\n1").unwrap().format, Format::MeatAxe);
        assert_eq!(ingest_text("c", "hello").unwrap_err(), FormatError::UnknownFormat);
    }
}
