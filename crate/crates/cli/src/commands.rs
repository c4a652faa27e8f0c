use std::fs;
use std::path::{Path, PathBuf};

use anyhow::{bail, Context};
use serde_json::json;

use lottie_tok::corpus::corpus_stats;
use lottie_tok::lint::{failure_histogram, lint_str, report_json};
use lottie_tok::model::{parse_lottie, serialize_lottie};
use lottie_tok::motion::{
    cluster_signatures, extract_signature, inject_motion, read_templates, svg_to_static_lottie, synth_basic_motion,
    write_templates, BasicMotion, InjectParams, SynthParams,
};
use lottie_tok::pipeline::{clean_str, normalize as normalize_animation, NormalizeConfig, Verdict};
use lottie_tok::tokenizer::{collect_stats, decode, encode_with_report, ByteTokenizer, TableTokenizer, TextTokenizer, TokenFile};
use lottie_tok::vocab::{build_vocab, BuildConfig, CorpusStats, VocabSpec, DEFAULT_TEXT_REGION};

use crate::files::{self, collect, Dest, Outcome};
use crate::{Codec, Usage};

const JSON: &[&str] = &["json"];

fn usage(e: impl std::fmt::Display) -> Usage {
    Usage(e.to_string())
}

fn text_tokenizer(choice: &str) -> Result<Box<dyn TextTokenizer>, Usage> {
    match choice.split_once(':') {
        None if choice == "builtin" => Ok(Box::new(ByteTokenizer)),
        Some(("external", path)) => {
            let text = fs::read_to_string(path).map_err(|e| Usage(format!("{path}: {e}")))?;
            Ok(Box::new(TableTokenizer::from_table_str(&text).map_err(|e| Usage(format!("{path}: {e}")))?))
        }
        _ => Err(Usage(format!("unknown text tokenizer {choice:?}; expected builtin or external:FILE"))),
    }
}

impl Codec {
    fn load(&self) -> Result<(VocabSpec, Box<dyn TextTokenizer>), Usage> {
        let vocab = match &self.vocab {
            None => VocabSpec::default(),
            Some(p) => {
                let text = fs::read_to_string(p).map_err(|e| Usage(format!("{}: {e}", p.display())))?;
                VocabSpec::from_file_str(&text).map_err(|e| Usage(format!("{}: {e}", p.display())))?
            }
        };
        let tt = text_tokenizer(&self.text_tokenizer)?;
        if tt.vocab_size() > vocab.text_size {
            return Err(Usage(format!(
                "text tokenizer has {} ids but the vocabulary's text region holds {}",
                tt.vocab_size(),
                vocab.text_size
            )));
        }
        Ok((vocab, tt))
    }
}

fn json_bytes(a: &lottie_tok::model::Animation) -> Vec<u8> {
    let mut s = serialize_lottie(a);
    s.push('\n');
    s.into_bytes()
}

pub fn clean(inputs: &[PathBuf], out: Option<&Path>) -> Result<usize, Usage> {
    let inputs = collect(inputs, JSON)?;
    Ok(files::run(&inputs, Dest::new(out, Some("clean")), |i| {
        let (a, report) = clean_str(&i.read()?);
        let detail = format!(
            "removed_layers={} removed_assets={} stripped_expressions={}",
            report.removed_layers.len(),
            report.removed_assets.len(),
            report.stripped_expressions
        );
        Ok(match (a, report.verdict) {
            (Some(a), Verdict::Kept) => Outcome::ok(vec![(i.output("json"), json_bytes(&a))], detail),
            (_, Verdict::Rejected(why)) => Outcome::rejected(why.to_string()),
            (None, Verdict::Kept) => unreachable!("kept files have an animation"),
        })
    }))
}

pub fn normalize(inputs: &[PathBuf], out: Option<&Path>, canvas: u32, time_range: f64) -> Result<usize, Usage> {
    let cfg = NormalizeConfig {
        canvas,
        time_range_max: time_range,
    };
    if canvas == 0 || !(time_range > 0.0 && time_range.is_finite()) {
        return Err(Usage("--canvas and --time-range must be positive".into()));
    }
    let inputs = collect(inputs, JSON)?;
    Ok(files::run(&inputs, Dest::new(out, Some("norm")), |i| {
        let a = parse_lottie(&i.read()?)?;
        let n = normalize_animation(&a, &cfg)?;
        let detail = format!("{}x{} -> {canvas}x{canvas}", a.width, a.height);
        Ok(Outcome::ok(vec![(i.output("json"), json_bytes(&n))], detail))
    }))
}

pub fn tokenize(inputs: &[PathBuf], out: Option<&Path>, codec: &Codec, binary: bool) -> Result<usize, Usage> {
    let (vocab, tt) = codec.load()?;
    let inputs = collect(inputs, JSON)?;
    Ok(files::run(&inputs, Dest::new(out, None), |i| {
        let a = parse_lottie(&i.read()?)?;
        let (seq, clamped) = encode_with_report(&a, &vocab, &*tt)?;
        let file = TokenFile::from_seqs(std::slice::from_ref(&seq))?;
        let mut bytes = Vec::new();
        if binary {
            file.write_binary(&mut bytes)?;
        } else {
            file.write_text(&mut bytes)?;
        }
        let ext = if binary { "tokb" } else { "tok" };
        Ok(Outcome::ok(
            vec![(i.output(ext), bytes)],
            format!("tokens={} clamped={clamped}", seq.ids.len()),
        ))
    }))
}

pub fn detokenize(inputs: &[PathBuf], out: Option<&Path>, codec: &Codec) -> Result<usize, Usage> {
    let (vocab, tt) = codec.load()?;
    let inputs = collect(inputs, &["tok", "tokb"])?;
    Ok(files::run(&inputs, Dest::new(out, Some("detok")), |i| {
        let bytes = i.read_bytes()?;
        let file = if bytes.starts_with(b"LTOK") {
            TokenFile::read_binary(&bytes[..])?
        } else {
            TokenFile::read_text(&bytes[..])?
        };
        let seqs = file.seqs();
        if seqs.is_empty() {
            bail!("no samples");
        }
        let mut outputs = Vec::new();
        for (n, s) in seqs.iter().enumerate() {
            let a = decode(s, &vocab, &*tt).with_context(|| format!("sample {n}"))?;
            let name = if seqs.len() == 1 { i.output("json") } else { i.output_with(&n.to_string(), "json") };
            outputs.push((name, json_bytes(&a)));
        }
        Ok(Outcome::ok(outputs, format!("samples={}", seqs.len())))
    }))
}

pub fn augment(
    inputs: &[PathBuf],
    out: Option<&Path>,
    template: Option<PathBuf>,
    basic: Option<String>,
    seed: Option<u64>,
    duration: Option<f64>,
    magnitude: f64,
) -> Result<usize, Usage> {
    if duration.is_some_and(|d| !(d > 0.0 && d.is_finite())) {
        return Err(Usage("--duration must be positive".into()));
    }
    let inputs = collect(inputs, JSON)?;
    if let Some(name) = basic {
        let kind = BasicMotion::from_name(&name).ok_or_else(|| {
            let names: Vec<_> = BasicMotion::ALL.iter().map(|k| k.name()).collect();
            Usage(format!("unknown motion {name:?}; expected one of {}", names.join(", ")))
        })?;
        let params = SynthParams {
            seed: seed.unwrap_or(0),
            duration,
        };
        return Ok(files::run(&inputs, Dest::new(out, None), |i| {
            let a = synth_basic_motion(&parse_lottie(&i.read()?)?, kind, &params)?;
            let label = extract_signature(&a).label();
            Ok(Outcome::ok(vec![(i.output_with(kind.name(), "json"), json_bytes(&a))], label))
        }));
    }
    let path = template.expect("clap requires --template or --basic");
    let text = fs::read_to_string(&path).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    let templates = read_templates(&text).map_err(|e| Usage(format!("{}: {e}", path.display())))?;
    if templates.is_empty() {
        return Err(Usage(format!("{}: no templates", path.display())));
    }
    let params = InjectParams {
        duration,
        magnitude,
        seed,
    };
    Ok(files::run(&inputs, Dest::new(out, None), |i| {
        let a = parse_lottie(&i.read()?)?;
        let mut outputs = Vec::new();
        for (n, t) in templates.iter().enumerate() {
            let b = inject_motion(&a, t, &params).with_context(|| format!("template {n} ({})", t.label))?;
            outputs.push((i.output_with(&format!("t{n}"), "json"), json_bytes(&b)));
        }
        Ok(Outcome::ok(outputs, format!("templates={}", templates.len())))
    }))
}

pub fn svg_import(inputs: &[PathBuf], out: Option<&Path>) -> Result<usize, Usage> {
    let inputs = collect(inputs, &["svg"])?;
    Ok(files::run(&inputs, Dest::new(out, None), |i| {
        let a = svg_to_static_lottie(&i.read()?)?;
        let detail = format!("{}x{} layers={}", a.width, a.height, a.layers.len());
        Ok(Outcome::ok(vec![(i.output("json"), json_bytes(&a))], detail))
    }))
}

/// Returns the number of files with error diagnostics or read failures.
pub fn lint(inputs: &[PathBuf], as_json: bool) -> Result<usize, Usage> {
    let inputs = collect(inputs, JSON)?;
    let results = files::process(&inputs, |i| Ok(lint_str(&i.read()?)));
    let failing = results
        .iter()
        .filter(|r| r.as_ref().map_or(true, |d| d.iter().any(|d| d.is_error())))
        .count();
    if as_json {
        let reports: Vec<_> = inputs
            .iter()
            .zip(&results)
            .map(|(i, r)| match r {
                Ok(d) => {
                    let mut v = report_json(d);
                    v["file"] = json!(i.path.display().to_string());
                    v
                }
                Err(e) => json!({"file": i.path.display().to_string(), "read_error": format!("{e:#}")}),
            })
            .collect();
        let diags: Vec<_> = results.iter().filter_map(|r| r.as_ref().ok().cloned()).collect();
        let histogram: Vec<_> = failure_histogram(&diags)
            .into_iter()
            .map(|(code, count, percent)| json!({"code": code.name(), "count": count, "percent": percent}))
            .collect();
        let doc = json!({"files": reports, "failing_files": failing, "histogram": histogram});
        out!("{}", serde_json::to_string_pretty(&doc).unwrap());
    } else {
        for (i, r) in inputs.iter().zip(&results) {
            match r {
                Ok(diags) => diags.iter().for_each(|d| out!("{}\t{d}", i.path.display())),
                Err(e) => out!("{}\tread error: {e:#}", i.path.display()),
            }
        }
        out!("summary\t{}\t{}", inputs.len(), failing);
    }
    Ok(failing)
}

pub fn vocab_build(
    inputs: &[PathBuf],
    q_lo: f64,
    q_hi: f64,
    text_region: Option<u32>,
    text_tokenizer_choice: &str,
    out: &Path,
) -> Result<usize, Usage> {
    let tt = text_tokenizer(text_tokenizer_choice)?;
    let text_region = text_region.unwrap_or(DEFAULT_TEXT_REGION.max(tt.vocab_size()));
    if text_region < tt.vocab_size() {
        return Err(Usage(format!("--text-region {text_region} is smaller than the text tokenizer's {} ids", tt.vocab_size())));
    }
    let cfg = BuildConfig {
        q_lo,
        q_hi,
        text_region,
        defaults_for_missing: true,
    };
    let inputs = collect(inputs, JSON)?;
    let per_file = files::process(&inputs, |i| {
        let mut s = CorpusStats::new();
        collect_stats(&parse_lottie(&i.read()?)?, &mut s)?;
        Ok(s)
    });
    let mut stats = CorpusStats::new();
    let mut outcomes = Vec::new();
    for r in per_file {
        outcomes.push(r.map(|s| {
            stats.merge(s);
            Outcome::ok(Vec::new(), "")
        }));
    }
    let failed = files::report(&inputs, outcomes, None);
    let vocab = build_vocab(&stats, &cfg).map_err(usage)?;
    files::write(out, vocab.to_file_string().as_bytes()).map_err(|e| Usage(format!("{e:#}")))?;
    out!("vocab\t{}\t{}\t{}", out.display(), vocab.version, vocab.size());
    Ok(failed)
}

pub fn templates(inputs: &[PathBuf], k: usize, seed: u64, out: &Path) -> Result<usize, Usage> {
    let inputs = collect(inputs, JSON)?;
    let sigs = files::process(&inputs, |i| Ok(extract_signature(&parse_lottie(&i.read()?)?)));
    let mut moving = Vec::new();
    let outcomes: Vec<_> = sigs
        .into_iter()
        .map(|r| {
            r.map(|s| {
                if s.is_static() {
                    return Outcome::rejected("static");
                }
                let label = s.label();
                moving.push(s);
                Outcome::ok(Vec::new(), label)
            })
        })
        .collect();
    let failed = files::report(&inputs, outcomes, None);
    if moving.is_empty() {
        eprintln!("error: no animated inputs to cluster");
        return Ok(failed.max(1));
    }
    let clustering = match cluster_signatures(&moving, k, seed) {
        Ok(c) => c,
        Err(e) => {
            eprintln!("error: {e}");
            return Ok(failed.max(1));
        }
    };
    files::write(out, write_templates(&clustering.templates).as_bytes()).map_err(|e| Usage(format!("{e:#}")))?;
    for t in &clustering.templates {
        out!("template\t{}\t{}", t.cluster_size, t.label);
    }
    Ok(failed)
}

pub fn stats(inputs: &[PathBuf], codec: &Codec) -> Result<usize, Usage> {
    let (vocab, tt) = codec.load()?;
    let inputs = collect(inputs, JSON)?;
    // Unreadable files count as parse failures, like malformed ones.
    let docs: Vec<String> = files::process(&inputs, |i| i.read())
        .into_iter()
        .map(|r| r.unwrap_or_default())
        .collect();
    out!("{}", corpus_stats(&docs, &vocab, &*tt).to_tsv().trim_end());
    Ok(0)
}
