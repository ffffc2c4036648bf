//! The `.poly` text format.
//!
//! ```text
//! # comment
//! dim 2
//! convention fan
//! label S1
//! vertex 1 0
//! vertex 0 1
//! vertex -1 -1
//! vertex 1 1
//! ```

use std::fmt;
use std::str::FromStr;

use crate::error::{Error, Result};
use crate::exact::{RatVector, Rational};
use crate::polytope::VPolytope;
use crate::stability::Verdict;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Convention {
    /// Vertices of the moment polytope itself.
    Moment,
    /// Vertices of the dual (fan) polytope.
    Fan,
}

impl fmt::Display for Convention {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Convention::Moment => "moment",
            Convention::Fan => "fan",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolytopeFile {
    pub dim: usize,
    pub convention: Convention,
    pub vertices: Vec<Vec<i64>>,
    /// Every other `key value` line, in file order.
    pub metadata: Vec<(String, String)>,
}

impl PolytopeFile {
    pub fn get(&self, key: &str) -> Option<&str> {
        self.metadata
            .iter()
            .find(|(k, _)| k == key)
            .map(|(_, v)| v.as_str())
    }

    pub fn label(&self) -> Option<&str> {
        self.get("label")
    }

    pub fn expected_mabuchi(&self) -> Option<Rational> {
        self.get("expected_mabuchi").and_then(|v| v.parse().ok())
    }

    pub fn expected_verdict(&self) -> Option<Verdict> {
        self.get("expected_verdict").and_then(|v| v.parse().ok())
    }
}

struct Token<'a> {
    text: &'a str,
    column: usize,
}

fn tokens(line: &str) -> Vec<Token<'_>> {
    let mut out = Vec::new();
    let mut start: Option<usize> = None;
    for (i, ch) in line
        .char_indices()
        .chain(std::iter::once((line.len(), ' ')))
    {
        match (ch.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push(Token {
                    text: &line[s..i],
                    column: line[..s].chars().count() + 1,
                });
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    out
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Parses the text format. Vertex entries must be integers.
pub fn parse_polytope(text: &str) -> Result<PolytopeFile> {
    let mut dim: Option<usize> = None;
    let mut convention: Option<Convention> = None;
    let mut vertices = Vec::new();
    let mut metadata = Vec::new();
    let mut last_line = 0;

    for (idx, raw) in text.lines().enumerate() {
        let line_no = idx + 1;
        last_line = line_no;
        let line = raw.split('#').next().unwrap_or("");
        let toks = tokens(line);
        let Some(key) = toks.first() else { continue };
        let args = &toks[1..];
        let end_col = line.trim_end().chars().count() + 1;

        if dim.is_none() {
            if key.text != "dim" {
                return Err(err(line_no, key.column, "expected `dim <n>`"));
            }
            let [n] = args else {
                return Err(err(line_no, end_col, "`dim` takes one argument"));
            };
            match n.text.parse::<usize>() {
                Ok(d) if d > 0 => dim = Some(d),
                _ => {
                    return Err(err(
                        line_no,
                        n.column,
                        format!("invalid dimension `{}`", n.text),
                    ))
                }
            }
            continue;
        }
        if convention.is_none() {
            if key.text != "convention" {
                return Err(err(line_no, key.column, "expected `convention moment|fan`"));
            }
            let [c] = args else {
                return Err(err(line_no, end_col, "`convention` takes one argument"));
            };
            convention = Some(match c.text {
                "moment" => Convention::Moment,
                "fan" => Convention::Fan,
                other => {
                    return Err(err(
                        line_no,
                        c.column,
                        format!("unknown convention `{other}`"),
                    ))
                }
            });
            continue;
        }

        match key.text {
            "vertex" => {
                let n = dim.expect("set above");
                let mut v = Vec::with_capacity(n);
                for t in args {
                    let x = t.text.parse::<i64>().map_err(|_| {
                        err(line_no, t.column, format!("`{}` is not an integer", t.text))
                    })?;
                    v.push(x);
                }
                if v.len() != n {
                    return Err(Error::DimensionMismatch {
                        expected: n,
                        got: v.len(),
                    });
                }
                vertices.push(v);
            }
            "dim" | "convention" => {
                return Err(err(
                    line_no,
                    key.column,
                    format!("duplicate `{}`", key.text),
                ));
            }
            k => {
                let Some(first) = args.first() else {
                    return Err(err(line_no, end_col, format!("`{k}` needs a value")));
                };
                let start = line
                    .char_indices()
                    .nth(first.column - 1)
                    .map_or(0, |(i, _)| i);
                let value = line[start..].trim_end().to_string();
                match k {
                    "expected_mabuchi" => {
                        Rational::from_str(&value)
                            .map_err(|e| err(line_no, first.column, e.to_string()))?;
                    }
                    "expected_verdict" => {
                        Verdict::from_str(&value).map_err(|e| err(line_no, first.column, e))?;
                    }
                    _ => {}
                }
                metadata.push((k.to_string(), value));
            }
        }
    }

    let Some(dim) = dim else {
        return Err(err(last_line.max(1), 1, "missing `dim` line"));
    };
    let Some(convention) = convention else {
        return Err(err(last_line.max(1), 1, "missing `convention` line"));
    };
    Ok(PolytopeFile {
        dim,
        convention,
        vertices,
        metadata,
    })
}

/// Moment polytope of a parsed file, dualizing fan-convention data.
pub fn load_polytope(file: &PolytopeFile) -> Result<VPolytope> {
    let points: Vec<RatVector> = file
        .vertices
        .iter()
        .map(|v| RatVector::from_ints(v))
        .collect();
    let hull = VPolytope::from_vertices(points)?;
    match file.convention {
        Convention::Moment => Ok(hull),
        Convention::Fan => {
            let dual = hull.dual()?;
            if !dual.is_integral() {
                return Err(Error::NotReflexive);
            }
            Ok(dual)
        }
    }
}

/// Renders a file back to text; parsing the output gives the same file.
pub fn write_polytope(file: &PolytopeFile) -> String {
    let mut out = format!("dim {}\nconvention {}\n", file.dim, file.convention);
    for (k, v) in &file.metadata {
        out.push_str(&format!("{k} {v}\n"));
    }
    for v in &file.vertices {
        let coords: Vec<String> = v.iter().map(i64::to_string).collect();
        out.push_str(&format!("vertex {}\n", coords.join(" ")));
    }
    out
}
