use lottie_tok::lint::lint;
use lottie_tok::model::*;
use lottie_tok::motion::*;
use lottie_tok::pipeline::{normalize, NormalizeConfig};
use proptest::prelude::*;

const ICON: &str = r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 48 48">
  <g transform="translate(24 24) rotate(45)"><rect x="-10" y="-10" width="20" height="20" rx="3" fill="#43a047"/></g>
  <ellipse cx="10" cy="38" rx="6" ry="4" fill="none" stroke="rgb(20, 40, 60)" stroke-width="2"/>
  <polyline points="30,40 36,34 42,40" stroke="black" fill="none"/>
</svg>"##;

fn icon() -> Animation {
    normalize(&svg_to_static_lottie(ICON).unwrap(), &NormalizeConfig::default()).unwrap()
}

#[test]
fn imported_svg_is_static_and_lint_clean() {
    let a = icon();
    assert!(lint(&a).iter().all(|d| !d.is_error()), "{:?}", lint(&a));
    assert!(extract_signature(&a).is_static());
    assert_eq!(extract_signature(&a).label(), "static");
}

#[test]
fn gradients_are_rejected() {
    let svg = r#"<svg xmlns="http://www.w3.org/2000/svg"><defs><linearGradient id="g"/></defs><rect width="4" height="4" fill="url(#g)"/></svg>"#;
    assert!(matches!(svg_to_static_lottie(svg), Err(SvgError::UnsupportedSvgFeature(_))));
}

#[test]
fn templates_survive_their_file_format_and_reinject() {
    let base = icon();
    let sigs: Vec<MotionSignature> = [BasicMotion::MoveV, BasicMotion::Zoom, BasicMotion::Combined2]
        .iter()
        .flat_map(|k| (0..4).map(move |s| (*k, s)))
        .map(|(k, seed)| extract_signature(&synth_basic_motion(&base, k, &SynthParams { seed, duration: None }).unwrap()))
        .collect();
    let c = cluster_signatures(&sigs, 3, 1).unwrap();
    let text = write_templates(&c.templates);
    let read = read_templates(&text).unwrap();
    assert_eq!(read.len(), 3);
    assert_eq!(read.iter().map(|t| t.cluster_size).sum::<usize>(), sigs.len());
    for (t, orig) in read.iter().zip(&c.templates) {
        assert_eq!(t.label, orig.label);
        let a = inject_motion(&base, t, &InjectParams::default()).unwrap();
        let sig = extract_signature(&a);
        assert_eq!(sig.active(), extract_signature(&inject_motion(&base, orig, &InjectParams::default()).unwrap()).active());
        assert!(lint(&a).iter().all(|d| !d.is_error()));
    }
}

#[test]
fn animating_twice_is_refused() {
    let a = synth_basic_motion(&icon(), BasicMotion::Rotate, &SynthParams::default()).unwrap();
    assert!(matches!(
        synth_basic_motion(&a, BasicMotion::Fade, &SynthParams::default()),
        Err(MotionError::AlreadyAnimated(_))
    ));
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(40))]

    #[test]
    fn every_seed_classifies_as_its_kind(seed in any::<u64>(), k in 0usize..7, dur in prop::option::of(8.0..60.0f64)) {
        let kind = BasicMotion::ALL[k];
        let a = synth_basic_motion(&icon(), kind, &SynthParams { seed, duration: dur }).unwrap();
        prop_assert_eq!(classify(&extract_signature(&a)), Some(kind));
        prop_assert!(lint(&a).iter().all(|d| !d.is_error()));
        prop_assert_eq!(parse_lottie(&serialize_lottie(&a)).unwrap(), a);
    }

    #[test]
    fn distance_is_symmetric(s1 in any::<u64>(), s2 in any::<u64>(), k1 in 0usize..7, k2 in 0usize..7) {
        let base = icon();
        let a = extract_signature(&synth_basic_motion(&base, BasicMotion::ALL[k1], &SynthParams { seed: s1, duration: None }).unwrap());
        let b = extract_signature(&synth_basic_motion(&base, BasicMotion::ALL[k2], &SynthParams { seed: s2, duration: None }).unwrap());
        prop_assert_eq!(signature_distance(&a, &b), signature_distance(&b, &a));
        prop_assert_eq!(signature_distance(&a, &a), 0.0);
    }
}
