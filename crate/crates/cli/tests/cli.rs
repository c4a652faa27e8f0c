use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use lottie_tok::model::parse_lottie;
use lottie_tok::tokenizer::canonical_equal_by;
use lottie_tok::vocab::VocabSpec;
use tempfile::TempDir;

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_lottie-tok"));
    c.env_remove("LOTTIE_TOK_THREADS");
    c
}

fn run(args: &[&dyn AsRef<std::ffi::OsStr>]) -> Output {
    let mut c = bin();
    for a in args {
        c.arg(a);
    }
    c.output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn fixtures() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/fixtures")
}

fn golden_vocab() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/tests/golden/default.vocab")
}

fn json_files(dir: &Path) -> Vec<PathBuf> {
    let mut v: Vec<PathBuf> = walk(dir).into_iter().filter(|p| p.extension().is_some_and(|e| e == "json")).collect();
    v.sort();
    v
}

fn walk(dir: &Path) -> Vec<PathBuf> {
    let mut out = Vec::new();
    for e in fs::read_dir(dir).unwrap() {
        let p = e.unwrap().path();
        if p.is_dir() {
            out.extend(walk(&p));
        } else {
            out.push(p);
        }
    }
    out.sort();
    out
}

fn summary(o: &Output) -> Vec<usize> {
    let s = stdout(o);
    let line = s.lines().rev().find(|l| l.starts_with("summary\t")).expect("summary line");
    line.split('\t').skip(1).map(|x| x.parse().unwrap()).collect()
}

const EMPTY_LAYERS: &str = r#"{"v":"5.7.0","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[]}"#;

const ICON: &str = r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 24 24" width="24" height="24">
<rect x="4" y="4" width="16" height="16" fill="#3366cc"/>
<circle cx="12" cy="12" r="4" fill="#ffffff"/>
</svg>"##;

#[test]
fn usage_errors_exit_two() {
    let missing = run(&[&"lint", &"/no/such/path"]);
    assert_eq!(missing.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&missing.stderr).contains("no such file"));

    assert_eq!(run(&[&"lint"]).status.code(), Some(2));
    assert_eq!(run(&[&"frobnicate"]).status.code(), Some(2));

    let bad_threads = bin().args(["lint"]).arg(fixtures()).env("LOTTIE_TOK_THREADS", "0").output().unwrap();
    assert_eq!(bad_threads.status.code(), Some(2));

    let d = TempDir::new().unwrap();
    let bad_motion = run(&[&"augment", &fixtures().join("kitchen_sink.json"), &"-o", &d.path(), &"--basic", &"wobble"]);
    assert_eq!(bad_motion.status.code(), Some(2));
}

#[test]
fn lint_exit_codes() {
    let clean = run(&[&"lint", &fixtures()]);
    assert_eq!(clean.status.code(), Some(0), "{}", stdout(&clean));
    assert_eq!(summary(&clean), vec![50, 0]);

    let d = TempDir::new().unwrap();
    let f = d.path().join("empty.json");
    fs::write(&f, EMPTY_LAYERS).unwrap();
    let o = run(&[&"lint", &f]);
    assert_eq!(o.status.code(), Some(1));
    let s = stdout(&o);
    let diags: Vec<&str> = s.lines().filter(|l| !l.starts_with("summary\t")).collect();
    assert_eq!(diags.len(), 1, "{s}");
    assert!(diags[0].contains("EmptyLayers"), "{s}");

    let j = run(&[&"lint", &"--json", &f]);
    assert_eq!(j.status.code(), Some(1));
    let v: serde_json::Value = serde_json::from_slice(&j.stdout).unwrap();
    assert_eq!(v["failing_files"], 1);
}

#[test]
fn tokenize_detokenize_round_trip() {
    let d = TempDir::new().unwrap();
    let (tok, dec) = (d.path().join("tok"), d.path().join("dec"));
    for format in ["ids", "bin"] {
        let t = run(&[&"tokenize", &fixtures(), &"-o", &tok, &"--format", &format]);
        assert_eq!(t.status.code(), Some(0), "{}", stdout(&t));
        let x = run(&[&"detokenize", &tok, &"-o", &dec]);
        assert_eq!(x.status.code(), Some(0), "{}", stdout(&x));
        assert_eq!(summary(&x)[1], 50);
        fs::remove_dir_all(&tok).unwrap();
    }
    let vocab = VocabSpec::default();
    let originals = json_files(&fixtures());
    assert_eq!(originals.len(), 50);
    for orig in originals {
        let rel = orig.strip_prefix(fixtures()).unwrap();
        let a = parse_lottie(&fs::read_to_string(&orig).unwrap()).unwrap();
        let b = parse_lottie(&fs::read_to_string(dec.join(rel)).unwrap()).unwrap();
        assert!(canonical_equal_by(&a, &b, |ty| vocab.region(ty).step()), "{}", rel.display());
    }
}

#[test]
fn outputs_beside_inputs() {
    let d = TempDir::new().unwrap();
    let a = d.path().join("a.json");
    fs::copy(fixtures().join("kitchen_sink.json"), &a).unwrap();
    assert_eq!(run(&[&"tokenize", &a]).status.code(), Some(0));
    assert!(d.path().join("a.tok").exists());
    assert_eq!(run(&[&"detokenize", &d.path().join("a.tok")]).status.code(), Some(0));
    assert_eq!(run(&[&"clean", &a]).status.code(), Some(0));
    assert_eq!(run(&[&"normalize", &a]).status.code(), Some(0));
    let vocab = VocabSpec::default();
    let original = parse_lottie(&fs::read_to_string(&a).unwrap()).unwrap();
    let back = parse_lottie(&fs::read_to_string(d.path().join("a.detok.json")).unwrap()).unwrap();
    assert!(canonical_equal_by(&original, &back, |ty| vocab.region(ty).step()));
    for name in ["a.clean.json", "a.norm.json"] {
        assert!(d.path().join(name).exists(), "{name}");
    }
}

#[test]
fn stats_on_shape_only_files() {
    let d = TempDir::new().unwrap();
    for n in 1..=10 {
        let layers: Vec<String> = (1..=n)
            .map(|i| format!(r#"{{"ty":4,"ind":{i},"ip":0,"op":60,"st":0,"ks":{{}},"shapes":[]}}"#))
            .collect();
        let doc = format!(
            r#"{{"v":"5.7.0","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[{}]}}"#,
            layers.join(",")
        );
        fs::write(d.path().join(format!("f{n:02}.json")), doc).unwrap();
    }
    let o = run(&[&"stats", &d.path()]);
    assert_eq!(o.status.code(), Some(0));
    let s = stdout(&o);
    assert!(s.contains("files\t10\n"), "{s}");
    assert!(s.contains("layer_type\tshape\t100.0\n"), "{s}");
    assert!(s.contains("layer_count_mean\t5.50\n"), "{s}");
    assert!(s.contains("layer_count_max\t10\n"), "{s}");
}

#[test]
fn stats_counts_unparseable_files() {
    let d = TempDir::new().unwrap();
    fs::write(d.path().join("a.json"), EMPTY_LAYERS).unwrap();
    fs::write(d.path().join("b.json"), "{").unwrap();
    let o = run(&[&"stats", &d.path()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("parse_failures\t1\n"));
}

#[test]
fn thread_count_does_not_change_results() {
    let d = TempDir::new().unwrap();
    let mut seen = Vec::new();
    for n in ["1", "4"] {
        let out = d.path().join(n);
        let o = bin()
            .args(["tokenize"])
            .arg(fixtures())
            .arg("-o")
            .arg(&out)
            .env("LOTTIE_TOK_THREADS", n)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        let text = stdout(&o).replace(&out.display().to_string(), "OUT");
        let files: Vec<(PathBuf, Vec<u8>)> = walk(&out)
            .into_iter()
            .map(|p| (p.strip_prefix(&out).unwrap().to_path_buf(), fs::read(&p).unwrap()))
            .collect();
        seen.push((text, files));
    }
    assert_eq!(seen[0], seen[1]);
}

#[test]
fn pipeline_chain_lints_clean() {
    let d = TempDir::new().unwrap();
    let p = |s: &str| d.path().join(s);
    let steps: [&[&dyn AsRef<std::ffi::OsStr>]; 4] = [
        &[&"clean", &fixtures(), &"-o", &p("clean")],
        &[&"normalize", &p("clean"), &"-o", &p("norm")],
        &[&"tokenize", &p("norm"), &"-o", &p("tok")],
        &[&"detokenize", &p("tok"), &"-o", &p("dec")],
    ];
    for args in steps {
        let o = run(args);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert_eq!(summary(&o)[3], 0);
    }
    let l = run(&[&"lint", &p("dec")]);
    assert_eq!(l.status.code(), Some(0), "{}", stdout(&l));
    assert_eq!(summary(&l), vec![50, 0]);
}

#[test]
fn clean_rejections_are_not_failures() {
    let d = TempDir::new().unwrap();
    let f = d.path().join("bad.json");
    fs::write(&f, r#"{"layers":"nope"}"#).unwrap();
    let o = run(&[&"clean", &f, &"-o", &d.path().join("out")]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).starts_with("rejected\t"));
    assert_eq!(summary(&o), vec![1, 0, 1, 0]);
}

#[test]
fn full_range_vocab_never_clamps() {
    let d = TempDir::new().unwrap();
    let v = d.path().join("full.vocab");
    let b = run(&[&"vocab-build", &fixtures(), &"-o", &v, &"--q-lo", &"0", &"--q-hi", &"1"]);
    assert_eq!(b.status.code(), Some(0), "{}", stdout(&b));
    let t = run(&[&"tokenize", &fixtures(), &"-o", &d.path().join("tok"), &"--vocab", &v]);
    assert_eq!(t.status.code(), Some(0));
    let s = stdout(&t);
    let rows: Vec<&str> = s.lines().filter(|l| l.starts_with("ok\t")).collect();
    assert_eq!(rows.len(), 50);
    assert!(rows.iter().all(|l| l.ends_with(" clamped=0")), "{s}");
    assert_ne!(fs::read_to_string(&v).unwrap(), fs::read_to_string(golden_vocab()).unwrap());
}

#[test]
fn built_vocab_drives_the_codec() {
    let d = TempDir::new().unwrap();
    let v = d.path().join("corpus.vocab");
    assert_eq!(run(&[&"vocab-build", &fixtures(), &"-o", &v]).status.code(), Some(0));
    let tok = d.path().join("tok");
    let t = run(&[&"tokenize", &fixtures(), &"-o", &tok, &"--vocab", &v]);
    assert_eq!(t.status.code(), Some(0));
    let wrong = run(&[&"detokenize", &tok, &"-o", &d.path().join("x")]);
    assert_eq!(wrong.status.code(), Some(1), "vocabulary mismatch must fail");
    let right = run(&[&"detokenize", &tok, &"-o", &d.path().join("y"), &"--vocab", &v]);
    assert_eq!(right.status.code(), Some(0));
}

#[test]
fn svg_icon_to_motion() {
    let d = TempDir::new().unwrap();
    let p = |s: &str| d.path().join(s);
    fs::create_dir(p("svg")).unwrap();
    fs::write(p("svg/icon.svg"), ICON).unwrap();
    assert_eq!(run(&[&"svg-import", &p("svg"), &"-o", &p("lottie")]).status.code(), Some(0));
    assert_eq!(run(&[&"normalize", &p("lottie"), &"-o", &p("norm")]).status.code(), Some(0));
    for kind in ["rotate", "fade", "move-h"] {
        let o = run(&[&"augment", &p("norm"), &"-o", &p("moving"), &"--basic", &kind, &"--seed", &"3"]);
        assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
        assert!(p(&format!("moving/icon.{kind}.json")).exists());
    }
    let lint = run(&[&"lint", &p("moving")]);
    assert_eq!(lint.status.code(), Some(0), "{}", stdout(&lint));

    let t = run(&[&"templates", &p("moving"), &"-k", &"3", &"-o", &p("t.templates")]);
    assert_eq!(t.status.code(), Some(0), "{}", stdout(&t));
    let a = run(&[&"augment", &p("norm"), &"-o", &p("templated"), &"--template", &p("t.templates")]);
    assert_eq!(a.status.code(), Some(0), "{}", stdout(&a));
    assert_eq!(json_files(&p("templated")).len(), 3);
    assert_eq!(run(&[&"lint", &p("templated")]).status.code(), Some(0));

    let again = run(&[&"augment", &p("moving"), &"-o", &p("twice"), &"--basic", &"zoom"]);
    assert_eq!(again.status.code(), Some(1), "already animated inputs fail");
}
