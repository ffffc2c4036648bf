//! Writes the smooth Fano catalog of one dimension as `.poly` files.
//!
//! Usage: `fano-enum <dim> [out-dir]`. Without an output directory the
//! classes are only counted.

use std::fmt::Write as _;
use std::path::PathBuf;

use fano_enum::{enumerate, normal_form};

/// Fans pinned to a label by direct construction.
fn pinned(dim: usize) -> Vec<(&'static str, Vec<Vec<i64>>)> {
    let simplex = |d: usize| {
        let mut v: Vec<Vec<i64>> = (0..d)
            .map(|i| (0..d).map(|j| i64::from(i == j)).collect())
            .collect();
        v.push(vec![-1; d]);
        v
    };
    let s = |k: usize| {
        let all = [
            vec![1, 0],
            vec![0, 1],
            vec![-1, -1],
            vec![1, 1],
            vec![-1, 0],
            vec![0, -1],
        ];
        all[..3 + k].to_vec()
    };
    let sum = |a: &[Vec<i64>], b: &[Vec<i64>]| {
        let (da, db) = (a[0].len(), b[0].len());
        let mut out = Vec::new();
        for v in a {
            let mut w = v.clone();
            w.extend(std::iter::repeat_n(0, db));
            out.push(w);
        }
        for v in b {
            let mut w = vec![0; da];
            w.extend(v);
            out.push(w);
        }
        out
    };
    match dim {
        2 => vec![
            ("Delta2", simplex(2)),
            ("Delta1xDelta1", sum(&simplex(1), &simplex(1))),
            ("S1", s(1)),
            ("S2", s(2)),
            ("S3", s(3)),
        ],
        3 => vec![("Delta3", simplex(3))],
        4 => vec![
            ("Delta4", simplex(4)),
            (
                "D6",
                vec![
                    vec![1, 0, 0, 0],
                    vec![0, 1, 0, 0],
                    vec![0, 0, 1, 0],
                    vec![0, 0, 0, 1],
                    vec![0, 0, 0, -1],
                    vec![-1, -1, 0, 1],
                    vec![0, 0, -1, 1],
                ],
            ),
            ("S2xS2", sum(&s(2), &s(2))),
            ("S2xS3", sum(&s(2), &s(3))),
            ("S3xS3", sum(&s(3), &s(3))),
        ],
        _ => Vec::new(),
    }
}

fn main() {
    let mut args = std::env::args().skip(1);
    let dim: usize = match args.next().and_then(|s| s.parse().ok()) {
        Some(d) => d,
        None => {
            eprintln!("usage: fano-enum <dim> [out-dir]");
            std::process::exit(2);
        }
    };
    let out_dir = args.next().map(PathBuf::from);
    let start = std::time::Instant::now();
    let classes = enumerate(dim);
    eprintln!(
        "dim {dim}: {} classes in {:?}",
        classes.len(),
        start.elapsed()
    );
    let Some(out_dir) = out_dir else { return };

    let labels: Vec<_> = pinned(dim)
        .into_iter()
        .map(|(name, fan)| (name, normal_form(dim, &fan), fan))
        .collect();
    std::fs::create_dir_all(&out_dir).expect("create output directory");
    for (k, class) in classes.iter().enumerate() {
        let pin = labels.iter().find(|(_, nf, _)| *nf == class.vertices);
        let label = pin.map(|(name, _, _)| *name);
        // pinned fans keep their constructed coordinates
        let vertices = pin.map_or(&class.vertices, |(_, _, fan)| fan);
        let stem = label.map_or_else(|| format!("f{:03}", k + 1), str::to_string);
        let mut text = String::new();
        writeln!(text, "# smooth Fano {dim}-polytope, generated by fano-enum").unwrap();
        writeln!(text, "dim {dim}").unwrap();
        writeln!(text, "convention fan").unwrap();
        writeln!(text, "index {}", k + 1).unwrap();
        if let Some(label) = label {
            writeln!(text, "label {label}").unwrap();
        }
        for v in vertices {
            let coords: Vec<String> = v.iter().map(i64::to_string).collect();
            writeln!(text, "vertex {}", coords.join(" ")).unwrap();
        }
        std::fs::write(out_dir.join(format!("{stem}.poly")), text).expect("write polytope file");
    }
    for (name, nf, _) in &labels {
        if !classes.iter().any(|c| c.vertices == *nf) {
            eprintln!("warning: pinned polytope {name} not found");
        }
    }
}
