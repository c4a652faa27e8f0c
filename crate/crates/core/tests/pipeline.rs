mod common;

use lottie_tok::fixtures;
use lottie_tok::lint::lint;
use lottie_tok::model::*;
use lottie_tok::pipeline::*;
use lottie_tok::tokenizer::{decode, encode, ByteTokenizer};
use lottie_tok::vocab::VocabSpec;
use proptest::prelude::*;

#[test]
fn clean_normalize_tokenize_detokenize_lint_has_no_errors() {
    let vocab = VocabSpec::default();
    let cfg = NormalizeConfig::default();
    for (path, text) in common::bundled_corpus() {
        let (cleaned, report) = clean_str(&text);
        assert!(report.is_kept(), "{}: {:?}", path.display(), report.verdict);
        let n = normalize(&cleaned.unwrap(), &cfg).unwrap();
        let back = decode(&encode(&n, &vocab, &ByteTokenizer).unwrap(), &vocab, &ByteTokenizer).unwrap();
        let errors: Vec<_> = lint(&back).into_iter().filter(|d| d.is_error()).collect();
        assert!(errors.is_empty(), "{}: {errors:?}", path.display());
    }
}

#[test]
fn cleaning_a_clean_file_keeps_every_layer() {
    for (path, text) in common::bundled_corpus() {
        let (cleaned, report) = clean_str(&text);
        assert!(report.removed_layers.is_empty(), "{}", path.display());
        assert_eq!(cleaned.unwrap(), parse_lottie(&text).unwrap(), "{}", path.display());
    }
}

#[test]
fn unsupported_layers_are_removed_and_files_without_content_rejected() {
    let text = r#"{"v":"5.7.0","fr":30,"ip":0,"op":60,"w":512,"h":512,
        "assets":[{"id":"img","p":"a.png","w":10,"h":10}],
        "layers":[{"ty":2,"ind":1,"refId":"img","ip":0,"op":60,"st":0,"ks":{}},
                  {"ty":3,"ind":2,"ip":0,"op":60,"st":0,"ks":{}}]}"#;
    let (a, report) = clean_str(text);
    let a = a.unwrap();
    assert_eq!(report.removed_layers.len(), 1);
    assert_eq!(report.removed_assets, vec!["img".to_string()]);
    assert_eq!(a.layers.len(), 1);
    let (none, report) = clean_str("{\"v\":1");
    assert!(none.is_none() && !report.is_kept());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn normalization_is_idempotent_and_fits_the_canvas(
        seed in 0usize..500,
        w in 16u32..4000,
        h in 16u32..4000,
        ip in 0u32..100,
        len in 1u32..600,
    ) {
        let mut a = fixtures::corpus_file(seed);
        (a.width, a.height) = (w as f64, h as f64);
        a.in_point = ip as f64;
        a.out_point = (ip + len) as f64;
        let cfg = NormalizeConfig::default();
        let n = normalize(&a, &cfg).unwrap();
        prop_assert_eq!((n.width, n.height, n.in_point, n.out_point), (512.0, 512.0, 0.0, 60.0));
        prop_assert!(n.layers.iter().all(|l| (0.0..=60.0).contains(&l.in_point) && (0.0..=60.0).contains(&l.out_point)));
        prop_assert_eq!(normalize(&n, &cfg).unwrap(), n);
    }

    #[test]
    fn fit_centres_the_scaled_canvas(w in 1.0..5000.0f64, h in 1.0..5000.0f64) {
        let (r, [x, y]) = fit(w, h, 512.0);
        prop_assert!((w * r).max(h * r) <= 512.0 + 1e-9);
        prop_assert!(((w * r).max(h * r) - 512.0).abs() < 1e-9);
        prop_assert!((2.0 * x + w * r - 512.0).abs() < 1e-9);
        prop_assert!((2.0 * y + h * r - 512.0).abs() < 1e-9);
    }
}

#[test]
fn hd_canvas_is_letterboxed_by_112() {
    assert_eq!(fit(1920.0, 1080.0, 512.0), (512.0 / 1920.0, [0.0, 112.0]));
    assert_eq!(fit(1080.0, 1920.0, 512.0).1, [112.0, 0.0]);
}
