use std::env;
use std::fs;
use std::path::{Path, PathBuf};

fn main() {
    let root = Path::new(&env::var("CARGO_MANIFEST_DIR").unwrap()).join("../../data");
    println!("cargo:rerun-if-changed={}", root.display());
    let mut out = String::from("pub(crate) static EMBEDDED: &[(&str, &str)] = &[\n");
    for dim in ["dim2", "dim3", "dim4"] {
        let dir = root.join(dim);
        println!("cargo:rerun-if-changed={}", dir.display());
        let Ok(read) = fs::read_dir(&dir) else {
            continue;
        };
        let mut files: Vec<PathBuf> = read.filter_map(|e| e.ok().map(|e| e.path())).collect();
        files.sort();
        for f in files {
            let name = f.file_name().unwrap().to_string_lossy().into_owned();
            if name.ends_with(".poly") || name == "expected.tsv" {
                let abs = fs::canonicalize(&f).unwrap();
                out.push_str(&format!(
                    "    ({:?}, include_str!({:?})),\n",
                    format!("{dim}/{name}"),
                    abs.display().to_string()
                ));
            }
        }
    }
    out.push_str("];\n");
    let dest = Path::new(&env::var("OUT_DIR").unwrap()).join("embedded.rs");
    fs::write(dest, out).unwrap();
}
