//! `dingstab`: relative Ding stability of toric Fano manifolds.

mod output;

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Parser, Subcommand};
use dingstab_core::catalog::{load_polytope, parse_polytope, reproduce_table, DataSource};
use dingstab_core::exact::{RatVector, Rational};
use dingstab_core::polytope::VPolytope;
use dingstab_core::stability::{check_fano, AffineFunction, Analysis, PLConvexFunction};
use dingstab_core::Error;

use output::{Format, Record};

#[derive(Parser)]
#[command(name = "dingstab", version, about)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(clap::Args)]
struct Input {
    /// Polytope file (`dim`, `convention`, `vertex` lines).
    file: PathBuf,
    /// Accept reflexive polytopes that are not Delzant.
    #[arg(long)]
    orbifold: bool,
    #[arg(long, value_enum, default_value = "text")]
    format: Format,
}

#[derive(Subcommand)]
enum Command {
    /// Mabuchi constant, verdict and destabilizer.
    Classify(Input),
    /// Volume, moments and extremal affine function.
    Theta(Input),
    /// Relative Ding invariant and reduced J-norm of a PL convex function.
    #[command(visible_alias = "jnorm")]
    Ding {
        #[command(flatten)]
        input: Input,
        /// Pieces `a1,...,an,c;a1,...,an,c;...` of `max_k (a_k . x + c_k)`.
        #[arg(long = "pl", allow_hyphen_values = true)]
        pieces: String,
    },
    /// Classify a whole catalog dimension; rows are `id<TAB>M<TAB>verdict`.
    Table {
        #[arg(long, value_parser = clap::value_parser!(u8).range(2..=4))]
        dim: u8,
        /// Compare with `expected.tsv`; exit 4 on any difference.
        #[arg(long)]
        diff: bool,
        /// Worker threads (default: all cores).
        #[arg(long)]
        jobs: Option<usize>,
    },
}

enum Failure {
    Core(Error),
    Usage(String),
    Mismatch,
    Other(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(Error::Parse { .. } | Error::DimensionMismatch { .. })
            | Failure::Usage(_) => 2,
            Failure::Core(
                Error::NotFano(_)
                | Error::NotReflexive
                | Error::OriginNotInterior
                | Error::DegeneratePolytope,
            ) => 3,
            Failure::Mismatch => 4,
            _ => 1,
        }
    }
}

type Outcome = std::result::Result<(), Failure>;

fn load(input: &Input) -> std::result::Result<VPolytope, Failure> {
    let text = fs::read_to_string(&input.file)
        .map_err(|e| Failure::Other(format!("{}: {e}", input.file.display())))?;
    let p = load_polytope(&parse_polytope(&text)?)?;
    check_fano(&p, input.orbifold)?;
    Ok(p)
}

fn parse_pieces(spec: &str, n: usize) -> std::result::Result<PLConvexFunction, Failure> {
    let mut pieces = Vec::new();
    for (k, piece) in spec.split(';').enumerate() {
        let entries: Vec<&str> = piece.split(',').map(str::trim).collect();
        if entries.len() != n + 1 {
            return Err(Failure::Usage(format!(
                "piece {}: expected {} comma-separated values, got {}",
                k + 1,
                n + 1,
                entries.len()
            )));
        }
        let mut values = Vec::with_capacity(n + 1);
        for (i, e) in entries.iter().enumerate() {
            let v: Rational = e.parse().map_err(|err| {
                Failure::Usage(format!("piece {}, entry {}: {err}", k + 1, i + 1))
            })?;
            values.push(v);
        }
        let c = values.pop().expect("n + 1 entries");
        pieces.push(AffineFunction::new(RatVector::new(values), c));
    }
    Ok(PLConvexFunction::new(pieces)?)
}

fn theta_fields(r: &mut Record, theta: &AffineFunction) {
    r.list("a", theta.a.iter()).scalar("c", &theta.c);
}

fn classify(input: &Input) -> Outcome {
    let report = Analysis::new(load(input)?)?.report()?;
    let mut r = Record::default();
    theta_fields(&mut r, &report.theta);
    r.scalar("mabuchi", &report.mabuchi)
        .list("witness", report.witness.iter())
        .scalar("verdict", report.verdict);
    if let Some(f) = &report.destabilizer {
        r.scalar("destabilizer", f);
    }
    print!("{}", r.render(input.format));
    Ok(())
}

fn theta(input: &Input) -> Outcome {
    let a = Analysis::new(load(input)?)?;
    let n = a.dim();
    let m = &a.moments;
    let mut r = Record::default();
    r.scalar("vol", &m.vol);
    for i in 0..n {
        r.scalar(format!("m1[{}]", i + 1), &m.m1[i]);
    }
    for i in 0..n {
        for j in 0..n {
            r.scalar(format!("m2[{}][{}]", i + 1, j + 1), m.m2.get(i, j));
        }
    }
    theta_fields(&mut r, &a.theta);
    print!("{}", r.render(input.format));
    Ok(())
}

fn ding(input: &Input, spec: &str) -> Outcome {
    let p = load(input)?;
    let f = parse_pieces(spec, p.dim())?;
    let a = Analysis::new(p)?;
    let mut r = Record::default();
    r.scalar("I_theta", a.ding(&f)?)
        .scalar("jnorm", a.jnorm(&f)?);
    print!("{}", r.render(input.format));
    Ok(())
}

fn table(dim: usize, diff: bool, jobs: Option<usize>) -> Outcome {
    let report = reproduce_table(dim, &DataSource::from_env(), jobs)?;
    for row in &report.rows {
        println!("{}\t{}\t{}", row.id, row.mabuchi, row.verdict);
    }
    if !diff {
        return Ok(());
    }
    let d = &report.diff;
    for m in &d.row_mismatches {
        eprintln!(
            "{}: computed {} {}, expected {} {}",
            m.id, m.computed.0, m.computed.1, m.expected.0, m.expected.1
        );
    }
    for v in &d.values.unmatched_computed {
        eprintln!("computed value not expected: {v}");
    }
    for v in &d.values.unmatched_expected {
        eprintln!("expected value not computed: {v}");
    }
    let counts = |c: dingstab_core::catalog::VerdictCounts| {
        format!(
            "{} uniformly_polystable, {} boundary, {} unstable",
            c.uniformly_polystable, c.boundary, c.unstable
        )
    };
    eprintln!("computed: {}", counts(d.computed_counts));
    eprintln!("expected: {}", counts(d.expected_counts));
    if d.is_match() {
        eprintln!("match");
        Ok(())
    } else {
        eprintln!("mismatch");
        Err(Failure::Mismatch)
    }
}

fn run(cli: Cli) -> Outcome {
    match &cli.command {
        Command::Classify(input) => classify(input),
        Command::Theta(input) => theta(input),
        Command::Ding { input, pieces } => ding(input, pieces),
        Command::Table { dim, diff, jobs } => table(*dim as usize, *diff, *jobs),
    }
}

fn describe(f: &Failure, file: Option<&Path>) -> String {
    let prefix = file
        .map(|p| format!("{}: ", p.display()))
        .unwrap_or_default();
    match f {
        Failure::Core(e) => format!("{prefix}{e}"),
        Failure::Usage(m) => format!("invalid piece specification: {m}"),
        Failure::Mismatch => "table differs from expected values".into(),
        Failure::Other(m) => m.clone(),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let file = match &cli.command {
        Command::Classify(i) | Command::Theta(i) | Command::Ding { input: i, .. } => {
            Some(i.file.clone())
        }
        Command::Table { .. } => None,
    };
    match run(cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(f) => {
            if !matches!(f, Failure::Mismatch) {
                eprintln!("dingstab: {}", describe(&f, file.as_deref()));
            }
            ExitCode::from(f.exit_code())
        }
    }
}
