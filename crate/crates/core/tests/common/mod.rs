#![allow(dead_code)]

use std::fs;
use std::path::{Path, PathBuf};

/// Every `.json` file under tests/fixtures, sorted by path.
pub fn bundled_corpus() -> Vec<(PathBuf, String)> {
    let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures");
    let mut paths = Vec::new();
    let mut stack = vec![dir];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(d).unwrap() {
            let p = e.unwrap().path();
            if p.is_dir() {
                stack.push(p);
            } else if p.extension().is_some_and(|x| x == "json") {
                paths.push(p);
            }
        }
    }
    paths.sort();
    paths
        .into_iter()
        .map(|p| {
            let text = fs::read_to_string(&p).unwrap();
            (p, text)
        })
        .collect()
}

/// A table with every single byte plus a few multi-byte entries.
pub fn table_text() -> String {
    let mut out = String::new();
    for b in 0..=255u8 {
        out.push_str(&format!("{b}\t{b:02x}\n"));
    }
    for (i, s) in ["th", "the", "in", "ing", "Ro", "boto"].iter().enumerate() {
        out.push_str(&format!("{}\t{}\n", 256 + i, hex::encode(s)));
    }
    out
}
