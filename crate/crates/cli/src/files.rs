//! Input discovery, per-file fan-out and ordered output writing.

use std::fs;
use std::path::{Path, PathBuf};

use anyhow::Context;
use walkdir::WalkDir;

use crate::Usage;

pub struct Input {
    pub path: PathBuf,
    /// Path below the output directory: relative to the input directory, or
    /// the bare file name for files named on the command line.
    pub rel: PathBuf,
}

impl Input {
    pub fn read(&self) -> anyhow::Result<String> {
        fs::read_to_string(&self.path).with_context(|| format!("reading {}", self.path.display()))
    }

    pub fn read_bytes(&self) -> anyhow::Result<Vec<u8>> {
        fs::read(&self.path).with_context(|| format!("reading {}", self.path.display()))
    }

    /// `rel` with its extension replaced.
    pub fn output(&self, ext: &str) -> PathBuf {
        self.rel.with_extension(ext)
    }

    /// `rel` with `.suffix.ext` in place of its extension.
    pub fn output_with(&self, suffix: &str, ext: &str) -> PathBuf {
        let stem = self.rel.file_stem().unwrap_or_default().to_string_lossy();
        self.rel.with_file_name(format!("{stem}.{suffix}.{ext}"))
    }
}

/// Files named directly, plus files under named directories whose extension
/// is in `exts`. Sorted by path.
pub fn collect(paths: &[PathBuf], exts: &[&str]) -> Result<Vec<Input>, Usage> {
    if paths.is_empty() {
        return Err(Usage("no input files".into()));
    }
    let mut out = Vec::new();
    for p in paths {
        if p.is_dir() {
            for e in WalkDir::new(p).sort_by_file_name() {
                let e = e.map_err(|e| Usage(e.to_string()))?;
                let matches = e.path().extension().and_then(|x| x.to_str()).is_some_and(|x| exts.contains(&x));
                if e.file_type().is_file() && matches {
                    out.push(Input {
                        rel: e.path().strip_prefix(p).unwrap().to_path_buf(),
                        path: e.path().to_path_buf(),
                    });
                }
            }
        } else if p.is_file() {
            out.push(Input {
                rel: PathBuf::from(p.file_name().unwrap()),
                path: p.clone(),
            });
        } else {
            return Err(Usage(format!("{}: no such file or directory", p.display())));
        }
    }
    out.sort_by(|a, b| a.path.cmp(&b.path));
    Ok(out)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Ok,
    /// Filtered out by design, e.g. a file `clean` refuses to keep.
    Rejected,
    Failed,
}

impl Status {
    fn word(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Rejected => "rejected",
            Status::Failed => "error",
        }
    }
}

pub struct Outcome {
    pub status: Status,
    pub outputs: Vec<(PathBuf, Vec<u8>)>,
    pub detail: String,
}

impl Outcome {
    pub fn ok(outputs: Vec<(PathBuf, Vec<u8>)>, detail: impl Into<String>) -> Self {
        Outcome {
            status: Status::Ok,
            outputs,
            detail: detail.into(),
        }
    }

    pub fn rejected(detail: impl Into<String>) -> Self {
        Outcome {
            status: Status::Rejected,
            outputs: Vec::new(),
            detail: detail.into(),
        }
    }
}

/// Where per-file outputs are written.
#[derive(Clone, Copy)]
pub enum Dest<'a> {
    /// Below a directory, keeping the input layout.
    Dir(&'a Path),
    /// Next to each input, with `.tag` before the extension when given.
    Beside(Option<&'static str>),
}

impl<'a> Dest<'a> {
    pub fn new(out: Option<&'a Path>, tag: Option<&'static str>) -> Self {
        out.map_or(Dest::Beside(tag), Dest::Dir)
    }

    fn resolve(self, input: &Input, rel: &Path) -> PathBuf {
        match self {
            Dest::Dir(d) => d.join(rel),
            Dest::Beside(tag) => {
                let name = rel.file_name().unwrap_or_default().to_string_lossy();
                let name = match (tag, name.rsplit_once('.')) {
                    (Some(t), Some((stem, ext))) => format!("{stem}.{t}.{ext}"),
                    (Some(t), None) => format!("{name}.{t}"),
                    (None, _) => name.into_owned(),
                };
                input.path.with_file_name(name)
            }
        }
    }
}

/// Runs `f` on every input, in parallel when enabled, keeping input order.
pub fn process<T, F>(inputs: &[Input], f: F) -> Vec<anyhow::Result<T>>
where
    T: Send,
    F: Fn(&Input) -> anyhow::Result<T> + Sync + Send,
{
    lottie_tok::corpus::map(inputs, f)
}

/// [`process`] then [`report`].
pub fn run<F>(inputs: &[Input], dest: Dest, f: F) -> usize
where
    F: Fn(&Input) -> anyhow::Result<Outcome> + Sync + Send,
{
    report(inputs, process(inputs, f), Some(dest))
}

/// Writes outputs and one tab-separated line per file in input order, then
/// a summary line. Output writing happens here, on one thread. Returns the
/// number of failed files.
pub fn report(inputs: &[Input], results: Vec<anyhow::Result<Outcome>>, dest: Option<Dest>) -> usize {
    let mut counts = [0usize; 3];
    for (input, r) in inputs.iter().zip(results) {
        let mut r = r.unwrap_or_else(|e| Outcome {
            status: Status::Failed,
            outputs: Vec::new(),
            detail: format!("{e:#}"),
        });
        let mut written = Vec::new();
        if let Some(dest) = dest {
            for (rel, bytes) in &r.outputs {
                let path = dest.resolve(input, rel);
                match write(&path, bytes) {
                    Ok(()) => written.push(path.display().to_string()),
                    Err(e) => {
                        r.status = Status::Failed;
                        r.detail = format!("{e:#}");
                        break;
                    }
                }
            }
        }
        counts[r.status as usize] += 1;
        let outputs = if written.is_empty() { "-".to_string() } else { written.join(",") };
        out!("{}\t{}\t{}\t{}", r.status.word(), input.path.display(), outputs, one_line(&r.detail));
    }
    out!("summary\t{}\t{}\t{}\t{}", inputs.len(), counts[0], counts[1], counts[2]);
    counts[Status::Failed as usize]
}

pub fn write(path: &Path, bytes: &[u8]) -> anyhow::Result<()> {
    if let Some(parent) = path.parent() {
        fs::create_dir_all(parent).with_context(|| format!("creating {}", parent.display()))?;
    }
    fs::write(path, bytes).with_context(|| format!("writing {}", path.display()))
}

fn one_line(s: &str) -> String {
    s.replace(['\t', '\n'], " ")
}
