//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! nonzero if any fails.

mod common;

use std::collections::HashSet;
use std::time::{Duration, Instant};

use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};
use serde_json::{json, Value};

use lottie_tok::corpus::corpus_stats;
use lottie_tok::fixtures::{self, Focus};
use lottie_tok::lint::{lint, lint_str, LintCode};
use lottie_tok::model::*;
use lottie_tok::motion::*;
use lottie_tok::pipeline::{fit, normalize, NormalizeConfig};
use lottie_tok::tokenizer::{canonical_equal_by, decode, encode, ByteTokenizer};
use lottie_tok::vocab::{ParamType, VocabSpec};

struct Outcome {
    ok: bool,
    detail: String,
}

fn outcome(ok: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        ok,
        detail: detail.into(),
    }
}

fn step_tol(vocab: &VocabSpec) -> impl Fn(ParamType) -> f64 + '_ {
    |ty| vocab.region(ty).step()
}

fn token_round_trip() -> Outcome {
    let vocab = VocabSpec::default();
    let tt = ByteTokenizer;
    let start = Instant::now();
    let mut valid = 0;
    let mut mismatches = 0;
    let mut kinds = HashSet::new();
    let mut seed = 0u64;
    while valid < 1000 {
        let a = fixtures::generate_with(seed, Focus::cycle(seed as usize));
        seed += 1;
        let Ok(t) = encode(&a, &vocab, &tt) else { continue };
        let Ok(d) = decode(&t, &vocab, &tt) else { continue };
        valid += 1;
        kinds.extend(d.all_layers().map(|l| l.kind()));
        if encode(&d, &vocab, &tt).as_ref() != Ok(&t) {
            mismatches += 1;
        }
    }
    let elapsed = start.elapsed();
    outcome(
        mismatches == 0 && kinds.len() == 5 && elapsed < Duration::from_secs(10),
        format!("{valid} seqs, {mismatches} mismatches, {} layer kinds, {elapsed:.2?} (limit 10s)", kinds.len()),
    )
}

fn shape_types(items: &[ShapeNode], out: &mut HashSet<ShapeType>) {
    for n in items {
        out.insert(n.kind.shape_type());
        if let ShapeKind::Group(g) = &n.kind {
            shape_types(&g.items, out);
        }
    }
}

fn animation_round_trip() -> Outcome {
    let vocab = VocabSpec::default();
    let tt = ByteTokenizer;
    let files: Vec<Animation> = (0..200).map(fixtures::corpus_file).collect();
    let mut kinds = HashSet::new();
    let mut shapes = HashSet::new();
    let (mut masks, mut effects) = (false, false);
    for a in &files {
        for l in a.all_layers() {
            kinds.insert(l.kind());
            masks |= !l.masks.is_empty();
            effects |= !l.effects.is_empty();
            if let Some(s) = l.shapes() {
                shape_types(s, &mut shapes);
            }
        }
    }
    let covered = kinds.len() == 5 && shapes.len() == ShapeType::ALL.len() && masks && effects;

    let start = Instant::now();
    let passed = files
        .iter()
        .filter(|a| {
            encode(a, &vocab, &tt)
                .and_then(|t| decode(&t, &vocab, &tt))
                .is_ok_and(|b| canonical_equal_by(a, &b, step_tol(&vocab)))
        })
        .count();
    let elapsed = start.elapsed();
    outcome(
        covered && passed == files.len() && elapsed < Duration::from_secs(30),
        format!(
            "{passed}/{} canonical_equal, coverage {} layer kinds / {} shape kinds / masks {masks} / effects {effects}, {elapsed:.2?} (limit 30s)",
            files.len(),
            kinds.len(),
            shapes.len()
        ),
    )
}

fn quantization_bound() -> Outcome {
    let vocab = VocabSpec::default();
    let mut runner = TestRunner::new(Config {
        cases: 100_000,
        failure_persistence: None,
        ..Config::default()
    });
    let strategy = (0..ParamType::ALL.len(), 0.0..=1.0f64, any::<u32>());
    let result = runner.run(&strategy, |(i, u, k)| {
        let ty = ParamType::ALL[i];
        let r = vocab.region(ty);
        let x = r.min + u * (r.max - r.min);
        let (tok, clamped) = vocab.quantize(x, ty);
        let back = vocab.dequantize(tok, ty).unwrap().unwrap();
        prop_assert!(!clamped);
        prop_assert!((back - x).abs() <= r.step(), "{ty} x={x} back={back}");
        let steps = (r.hi() - r.lo()) as u32 + 1;
        let g = (r.lo() + (k % steps) as i64) as f64 / r.scale;
        let (tok, _) = vocab.quantize(g, ty);
        prop_assert_eq!(vocab.dequantize(tok, ty).unwrap(), Some(g));
        Ok::<(), TestCaseError>(())
    });
    match result {
        Ok(()) => outcome(true, "100000 cases, 0 violations"),
        Err(e) => outcome(false, format!("violation: {e}")),
    }
}

fn vocab_disjointness() -> Outcome {
    let vocab = VocabSpec::default();
    let intervals = vocab.intervals();
    let mut shared = 0;
    for id in 0..vocab.size() {
        let owners = intervals.iter().filter(|(_, lo, hi)| (*lo..=*hi).contains(&id)).count();
        if owners != 1 {
            shared += 1;
        }
    }
    let reported = vocab.overlaps().len();
    outcome(
        shared == 0 && reported == 0,
        format!("{} ids over {} intervals, {shared} ids not owned exactly once, {reported} overlaps reported", vocab.size(), intervals.len()),
    )
}

fn compression() -> Outcome {
    let docs: Vec<String> = common::bundled_corpus().into_iter().map(|(_, t)| t).collect();
    let r = corpus_stats(&docs, &VocabSpec::default(), &ByteTokenizer);
    let ratio = r.compression_vs_minified();
    outcome(
        r.encode_failures == 0 && r.parse_failures == 0 && ratio >= 3.0,
        format!(
            "{} files: {} command tokens vs {} minified byte tokens, {ratio:.2}x (target >= 3x)",
            r.files, r.command_tokens, r.minified_json_tokens
        ),
    )
}

/// Maps global time `g` to `k * g + b`.
fn retime(a: &Animation, k: f64, b: f64) -> Animation {
    let mut out = a.clone();
    out.in_point = k * a.in_point + b;
    out.out_point = k * a.out_point + b;
    let scale_layer = |l: &mut Layer, b: f64| {
        l.in_point = k * l.in_point + b;
        l.out_point = k * l.out_point + b;
        l.start_time = Some(k * l.start_time() + b);
        LayerTracks::of(l).for_each_time(|t| *t *= k);
    };
    for l in &mut out.layers {
        scale_layer(l, b);
    }
    for asset in &mut out.assets {
        for l in &mut asset.layers {
            scale_layer(l, 0.0);
        }
    }
    out
}

/// Root-timeline times: layer in/out/start points and keyframe times.
fn root_times(a: &Animation) -> Vec<f64> {
    let mut out = vec![a.in_point, a.out_point];
    for l in &a.layers {
        out.extend([l.in_point, l.out_point, l.start_time()]);
        let (st, sr) = (l.start_time(), l.stretch());
        let mut l = l.clone();
        LayerTracks::of(&mut l).for_each_time(|t| out.push(*t * sr + st));
    }
    out
}

fn normalization() -> Outcome {
    let cfg = NormalizeConfig::default();
    let mut inputs: Vec<Animation> = common::bundled_corpus().iter().map(|(_, t)| parse_lottie(t).unwrap()).collect();
    let canvases = [(1920.0, 1080.0), (1080.0, 1920.0), (800.0, 600.0), (512.0, 512.0), (100.0, 300.0)];
    let timings = [(1.0, 0.0), (2.5, 0.0), (0.5, 12.0), (4.0, 30.0)];
    for i in 0..40 {
        let mut a = retime(&fixtures::corpus_file(200 + i), timings[i % 4].0, timings[i % 4].1);
        (a.width, a.height) = canvases[i % 5];
        inputs.push(a);
    }
    let mut bad_canvas = 0;
    let mut bad_time = 0;
    let mut not_idempotent = 0;
    for a in &inputs {
        let n = normalize(a, &cfg).unwrap();
        if n.width != 512.0 || n.height != 512.0 {
            bad_canvas += 1;
        }
        if root_times(&n).iter().any(|t| !(-1e-9..=60.0 + 1e-9).contains(t)) {
            bad_time += 1;
        }
        if normalize(&n, &cfg).unwrap() != n {
            not_idempotent += 1;
        }
    }

    let (_, off) = fit(1920.0, 1080.0, 512.0);
    let mut hd = Animation::empty("5.7.0", 30.0, 0.0, 60.0, 1920.0, 1080.0);
    hd.layers.push(Layer::new(LayerPayload::Null, 1, 0.0, 60.0));
    let n = normalize(&hd, &cfg).unwrap();
    let fit_offset = n.layers.iter().find_map(|l| match &l.transform.position {
        Some(Position::Combined(p)) if l.parent.is_none() => p.static_value().map(|v| v[1]),
        _ => None,
    });
    outcome(
        bad_canvas + bad_time + not_idempotent == 0 && off == [0.0, 112.0] && fit_offset == Some(112.0),
        format!(
            "{} files: {bad_canvas} wrong canvas, {bad_time} times outside [0, 60], {not_idempotent} not idempotent; 1920x1080 offset {off:?}, fit layer y {fit_offset:?}",
            inputs.len()
        ),
    )
}

fn mutation_base() -> Value {
    json!({
        "v": "5.7.0", "fr": 30, "ip": 0, "op": 60, "w": 512, "h": 512,
        "fonts": {"list": [{"fName": "Inter-Bold", "fFamily": "Inter", "fStyle": "Bold", "ascent": 72}]},
        "layers": [
            {"ty": 4, "ind": 1, "ip": 0, "op": 60, "st": 0,
             "ks": {"p": {"a": 0, "k": [256, 256]}, "s": {"a": 0, "k": [100, 100]}, "o": {"a": 0, "k": 100}},
             "shapes": [{"ty": "gr", "it": [
                 {"ty": "rc", "p": {"a": 0, "k": [0, 0]}, "s": {"a": 0, "k": [80, 80]}, "r": {"a": 0, "k": 0}},
                 {"ty": "fl", "c": {"a": 0, "k": [1, 0, 0, 1]}, "o": {"a": 0, "k": 100}},
                 {"ty": "tr", "p": {"a": 0, "k": [0, 0]}}
             ]}]},
            {"ty": 5, "ind": 2, "ip": 0, "op": 60, "st": 0, "ks": {},
             "t": {"d": {"k": [{"t": 0, "s": {"f": "Inter-Bold", "s": 24, "t": "Hi", "j": 0, "fc": [0, 0, 0]}}]}}}
        ]
    })
}

fn lint_mutations() -> Outcome {
    let base = mutation_base();
    let mutations: [(LintCode, fn(&mut Value)); 9] = [
        (LintCode::SchemaViolation, |v| v["fr"] = json!("thirty")),
        (LintCode::EmptyLayers, |v| v["layers"] = json!([])),
        (LintCode::MissingStyle, |v| {
            v["layers"][0]["shapes"][0]["it"].as_array_mut().unwrap().remove(1);
        }),
        (LintCode::TemporalVisibility, |v| v["layers"][0]["ip"] = json!(100)),
        (LintCode::OpacityCollapse, |v| v["layers"][0]["ks"]["o"]["k"] = json!(1)),
        (LintCode::ScaleCollapse, |v| v["layers"][0]["ks"]["s"]["k"] = json!([1, 1])),
        (LintCode::OffCanvas, |v| v["layers"][0]["ks"]["p"]["k"] = json!([5000, 5000])),
        (LintCode::DanglingRef, |v| v["layers"][1]["parent"] = json!(99)),
        (LintCode::FontMissing, |v| {
            v.as_object_mut().unwrap().remove("fonts");
        }),
    ];
    let mut failures = Vec::new();
    if !lint_str(&base.to_string()).is_empty() {
        failures.push("base file is not clean".to_string());
    }
    for (code, mutate) in mutations {
        let mut v = base.clone();
        mutate(&mut v);
        let codes: HashSet<LintCode> = lint_str(&v.to_string()).iter().map(|d| d.code).collect();
        if codes != HashSet::from([code]) {
            failures.push(format!("{} gave {codes:?}", code.name()));
        }
    }
    let corpus = common::bundled_corpus();
    let errors: usize = corpus.iter().map(|(_, t)| lint_str(t).iter().filter(|d| d.is_error()).count()).sum();
    outcome(
        failures.is_empty() && errors == 0,
        format!(
            "9 mutations, {} mismatched{}; {errors} errors on {} clean files",
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(" ({})", failures.join("; ")) },
            corpus.len()
        ),
    )
}

const ICON: &str = r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 24 24">
  <g fill="#1e88e5"><circle cx="12" cy="9" r="4"/><path d="M4 21 C4 16 8 14 12 14 C16 14 20 16 20 21 Z"/></g>
  <rect x="17" y="3" width="4" height="4" fill="#ff7043" stroke="#000" stroke-width="0.5"/>
</svg>"##;

fn static_icon() -> Animation {
    normalize(&svg_to_static_lottie(ICON).unwrap(), &NormalizeConfig::default()).unwrap()
}

fn motion_loop() -> Outcome {
    let base = static_icon();
    let mut failures = Vec::new();
    let mut lint_errors = 0;
    for kind in BasicMotion::ALL {
        for seed in 0..5 {
            let params = SynthParams { seed, duration: None };
            let a = synth_basic_motion(&base, kind, &params).unwrap();
            let sig = extract_signature(&a);
            if classify(&sig) != Some(kind) {
                failures.push(format!("{} seed {seed} classified as {:?}", kind.name(), classify(&sig)));
            }
            let again = synth_basic_motion(&base, kind, &params).unwrap();
            if serialize_lottie(&again) != serialize_lottie(&a) {
                failures.push(format!("{} seed {seed} synth not deterministic", kind.name()));
            }
            let tmpl = MotionTemplate::from_signature(&sig, 1);
            let ip = InjectParams {
                seed: Some(seed),
                ..InjectParams::default()
            };
            let injected = inject_motion(&base, &tmpl, &ip).unwrap();
            if serialize_lottie(&inject_motion(&base, &tmpl, &ip).unwrap()) != serialize_lottie(&injected) {
                failures.push(format!("{} seed {seed} inject not deterministic", kind.name()));
            }
            lint_errors += lint(&a).iter().chain(&lint(&injected)).filter(|d| d.is_error()).count();
        }
    }
    outcome(
        failures.is_empty() && lint_errors == 0,
        format!(
            "7 kinds x 5 seeds: {} failures{}; {lint_errors} lint errors on synthesized and injected files",
            failures.len(),
            if failures.is_empty() { String::new() } else { format!(" ({})", failures.join("; ")) }
        ),
    )
}

fn cluster_recovery() -> Outcome {
    let base = static_icon();
    let mut sigs = Vec::new();
    let mut labels = Vec::new();
    for seed in 0..12 {
        for (kind, label) in [(BasicMotion::Rotate, "rotation"), (BasicMotion::Fade, "fade")] {
            let params = SynthParams {
                seed,
                duration: Some(20.0 + 3.0 * seed as f64),
            };
            sigs.push(extract_signature(&synth_basic_motion(&base, kind, &params).unwrap()));
            labels.push(label);
        }
    }
    match cluster_signatures(&sigs, 2, 0) {
        Ok(c) => {
            let p = purity(&c.assignments, &labels);
            outcome(p == 1.0, format!("{} signatures, k=2, purity {p}", sigs.len()))
        }
        Err(e) => outcome(false, e.to_string()),
    }
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("token round trip", token_round_trip),
        ("animation round trip", animation_round_trip),
        ("quantization bound", quantization_bound),
        ("vocabulary disjointness", vocab_disjointness),
        ("compression", compression),
        ("normalization", normalization),
        ("lint mutation suite", lint_mutations),
        ("motion closed loop", motion_loop),
        ("cluster recovery", cluster_recovery),
    ];
    let mut failed = 0;
    for (name, run) in criteria {
        let o = run();
        println!("{} {name}: {}", if o.ok { "PASS" } else { "FAIL" }, o.detail);
        failed += !o.ok as usize;
    }
    println!("acceptance: {} passed, {failed} failed", criteria.len() - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
