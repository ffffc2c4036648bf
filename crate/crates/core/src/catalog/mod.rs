//! Smooth Fano polytope datasets for dimensions 2 to 4 and reproduction of
//! the stability tables.
//!
//! The datasets are compiled into the crate. Setting `DINGSTAB_DATA` to a
//! directory with the same layout (`dim<n>/*.poly`, `dim<n>/expected.tsv`)
//! reads that directory instead.

mod format;

use std::collections::BTreeMap;
use std::fs;
use std::path::PathBuf;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::exact::Rational;
use crate::polytope::VPolytope;
use crate::stability::{check_fano, Analysis, StabilityReport, Verdict};

pub use format::{load_polytope, parse_polytope, write_polytope, Convention, PolytopeFile};

mod embedded {
    include!(concat!(env!("OUT_DIR"), "/embedded.rs"));
}

pub const DATA_ENV: &str = "DINGSTAB_DATA";

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum DataSource {
    Embedded,
    Directory(PathBuf),
}

impl DataSource {
    /// `DINGSTAB_DATA` if set, else the embedded data.
    pub fn from_env() -> Self {
        match std::env::var_os(DATA_ENV) {
            Some(dir) if !dir.is_empty() => DataSource::Directory(dir.into()),
            _ => DataSource::Embedded,
        }
    }

    /// `(file name, contents)` for every file of one dimension, sorted by
    /// name.
    fn files(&self, dim: usize) -> Result<Vec<(String, String)>> {
        let prefix = format!("dim{dim}/");
        let mut out: Vec<(String, String)> = match self {
            DataSource::Embedded => embedded::EMBEDDED
                .iter()
                .filter_map(|(path, text)| {
                    path.strip_prefix(&prefix)
                        .map(|name| (name.to_string(), text.to_string()))
                })
                .collect(),
            DataSource::Directory(root) => {
                let dir = root.join(format!("dim{dim}"));
                let Ok(read) = fs::read_dir(&dir) else {
                    return Err(Error::MissingDataset(dim));
                };
                let mut files = Vec::new();
                for entry in read {
                    let path = entry.map_err(|e| Error::Io(e.to_string()))?.path();
                    let name = path
                        .file_name()
                        .unwrap_or_default()
                        .to_string_lossy()
                        .into_owned();
                    if name.ends_with(".poly") || name == "expected.tsv" {
                        let text = fs::read_to_string(&path)
                            .map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
                        files.push((name, text));
                    }
                }
                files
            }
        };
        if !out.iter().any(|(n, _)| n.ends_with(".poly")) {
            return Err(Error::MissingDataset(dim));
        }
        out.sort();
        Ok(out)
    }
}

#[derive(Debug, Clone)]
pub struct CatalogEntry {
    /// `dim<n>/<file stem>`.
    pub id: String,
    pub label: Option<String>,
    pub polytope: VPolytope,
    pub expected_mabuchi: Option<Rational>,
    pub expected_verdict: Option<Verdict>,
}

/// One row of an `expected.tsv` file.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExpectedRow {
    pub id: String,
    pub mabuchi: Rational,
    pub verdict: Verdict,
}

#[derive(Debug, Clone)]
pub struct Dataset {
    pub dim: usize,
    pub entries: Vec<CatalogEntry>,
    pub expected: Vec<ExpectedRow>,
}

/// Parses `id<TAB>M<TAB>verdict` lines; `#` lines are comments.
pub fn parse_expected(text: &str) -> Result<Vec<ExpectedRow>> {
    let mut rows = Vec::new();
    for (idx, line) in text.lines().enumerate() {
        let line_no = idx + 1;
        if line.trim().is_empty() || line.trim_start().starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = line.split('\t').collect();
        let bad = |column: usize, message: String| Error::Parse {
            line: line_no,
            column,
            message,
        };
        if fields.len() != 3 {
            return Err(bad(
                1,
                format!("expected 3 tab-separated fields, got {}", fields.len()),
            ));
        }
        let col2 = fields[0].chars().count() + 2;
        let col3 = col2 + fields[1].chars().count() + 1;
        let mabuchi = fields[1].parse().map_err(|e| bad(col2, format!("{e}")))?;
        let verdict = fields[2].trim_end().parse().map_err(|e| bad(col3, e))?;
        rows.push(ExpectedRow {
            id: fields[0].to_string(),
            mabuchi,
            verdict,
        });
    }
    Ok(rows)
}

fn entry_from_file(id: String, file: &PolytopeFile) -> Result<CatalogEntry> {
    let polytope = load_polytope(file)?;
    let expected_mabuchi = file.expected_mabuchi();
    let expected_verdict = file.expected_verdict();
    if let (Some(m), Some(v)) = (&expected_mabuchi, expected_verdict) {
        if Verdict::from_mabuchi(m) != v {
            return Err(Error::Invariant(format!(
                "{id}: expected verdict {v} disagrees with expected Mabuchi constant {m}"
            )));
        }
    }
    Ok(CatalogEntry {
        id,
        label: file.label().map(str::to_string),
        polytope,
        expected_mabuchi,
        expected_verdict,
    })
}

/// Loads one dimension, ordered by the `index` key and then by id.
pub fn load_dataset(dim: usize, source: &DataSource) -> Result<Dataset> {
    let mut keyed = Vec::new();
    let mut expected = Vec::new();
    for (name, text) in source.files(dim)? {
        if name == "expected.tsv" {
            expected = parse_expected(&text)?;
            continue;
        }
        let stem = name.trim_end_matches(".poly");
        let file = parse_polytope(&text)?;
        if file.dim != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: file.dim,
            });
        }
        let index = file
            .get("index")
            .and_then(|v| v.parse::<u64>().ok())
            .unwrap_or(u64::MAX);
        keyed.push((index, format!("dim{dim}/{stem}"), file));
    }
    keyed.sort_by(|a, b| (a.0, &a.1).cmp(&(b.0, &b.1)));
    let entries = keyed
        .par_iter()
        .map(|(_, id, file)| entry_from_file(id.clone(), file))
        .collect::<Result<Vec<_>>>()?;
    Ok(Dataset {
        dim,
        entries,
        expected,
    })
}

/// Multiset comparison of two value lists.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct ValueMatch {
    pub matched: bool,
    pub unmatched_computed: Vec<Rational>,
    pub unmatched_expected: Vec<Rational>,
}

pub fn match_by_value(computed: &[Rational], expected: &[Rational]) -> ValueMatch {
    let mut counts: BTreeMap<&Rational, i64> = BTreeMap::new();
    for v in computed {
        *counts.entry(v).or_default() += 1;
    }
    for v in expected {
        *counts.entry(v).or_default() -= 1;
    }
    let mut unmatched_computed = Vec::new();
    let mut unmatched_expected = Vec::new();
    for (v, c) in counts {
        for _ in 0..c.max(0) {
            unmatched_computed.push(v.clone());
        }
        for _ in 0..(-c).max(0) {
            unmatched_expected.push(v.clone());
        }
    }
    ValueMatch {
        matched: unmatched_computed.is_empty() && unmatched_expected.is_empty(),
        unmatched_computed,
        unmatched_expected,
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableRow {
    pub id: String,
    pub label: Option<String>,
    pub mabuchi: Rational,
    pub verdict: Verdict,
}

/// Numbers of uniformly polystable, boundary and unstable rows.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct VerdictCounts {
    pub uniformly_polystable: usize,
    pub boundary: usize,
    pub unstable: usize,
}

impl VerdictCounts {
    pub fn of(verdicts: impl IntoIterator<Item = Verdict>) -> Self {
        let mut c = VerdictCounts::default();
        for v in verdicts {
            match v {
                Verdict::UniformlyPolystable => c.uniformly_polystable += 1,
                Verdict::PolystableBoundary => c.boundary += 1,
                Verdict::Unstable => c.unstable += 1,
            }
        }
        c
    }
}

/// A row whose id appears in both the computed and the expected table but
/// with different values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RowMismatch {
    pub id: String,
    pub computed: (Rational, Verdict),
    pub expected: (Rational, Verdict),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TableDiff {
    pub row_mismatches: Vec<RowMismatch>,
    pub values: ValueMatch,
    pub computed_counts: VerdictCounts,
    pub expected_counts: VerdictCounts,
}

impl TableDiff {
    pub fn is_match(&self) -> bool {
        self.row_mismatches.is_empty()
            && self.values.matched
            && self.computed_counts == self.expected_counts
    }
}

#[derive(Debug, Clone)]
pub struct TableReport {
    pub dim: usize,
    pub rows: Vec<TableRow>,
    pub diff: TableDiff,
}

pub fn diff_table(rows: &[TableRow], expected: &[ExpectedRow]) -> TableDiff {
    let by_id: BTreeMap<&str, &ExpectedRow> = expected.iter().map(|r| (r.id.as_str(), r)).collect();
    let row_mismatches = rows
        .iter()
        .filter_map(|r| {
            let e = by_id.get(r.id.as_str())?;
            (e.mabuchi != r.mabuchi || e.verdict != r.verdict).then(|| RowMismatch {
                id: r.id.clone(),
                computed: (r.mabuchi.clone(), r.verdict),
                expected: (e.mabuchi.clone(), e.verdict),
            })
        })
        .collect();
    let computed: Vec<Rational> = rows.iter().map(|r| r.mabuchi.clone()).collect();
    let wanted: Vec<Rational> = expected.iter().map(|r| r.mabuchi.clone()).collect();
    TableDiff {
        row_mismatches,
        values: match_by_value(&computed, &wanted),
        computed_counts: VerdictCounts::of(rows.iter().map(|r| r.verdict)),
        expected_counts: VerdictCounts::of(expected.iter().map(|r| r.verdict)),
    }
}

/// Classifies every entry, in catalog order.
pub fn classify_dataset(data: &Dataset) -> Result<Vec<(String, StabilityReport)>> {
    data.entries
        .par_iter()
        .map(|e| {
            check_fano(&e.polytope, false)?;
            let report = Analysis::new(e.polytope.clone())?.report()?;
            Ok((e.id.clone(), report))
        })
        .collect()
}

/// Classifies a whole dimension and compares with its `expected.tsv`. `jobs`
/// bounds the worker count; output order never depends on it.
pub fn reproduce_table(
    dim: usize,
    source: &DataSource,
    jobs: Option<usize>,
) -> Result<TableReport> {
    let run = || -> Result<TableReport> {
        let data = load_dataset(dim, source)?;
        let reports = classify_dataset(&data)?;
        let rows: Vec<TableRow> = data
            .entries
            .iter()
            .zip(reports)
            .map(|(e, (_, r))| TableRow {
                id: e.id.clone(),
                label: e.label.clone(),
                mabuchi: r.mabuchi,
                verdict: r.verdict,
            })
            .collect();
        let diff = diff_table(&rows, &data.expected);
        Ok(TableReport { dim, rows, diff })
    };
    match jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(|e| Error::Io(e.to_string()))?
            .install(run),
        None => run(),
    }
}
