mod common;

use lottie_tok::corpus::*;
use lottie_tok::model::*;
use lottie_tok::tokenizer::ByteTokenizer;
use lottie_tok::vocab::VocabSpec;

fn shape_only(n: usize) -> String {
    let mut a = Animation::empty("5.7.0", 30.0, 0.0, 60.0, 512.0, 512.0);
    for i in 0..n {
        a.layers.push(Layer::new(LayerPayload::Shape(Vec::new()), i as i64 + 1, 0.0, 60.0));
    }
    serialize_lottie(&a)
}

#[test]
fn shape_only_corpus_is_all_shape() {
    let docs: Vec<String> = (1..=10).map(shape_only).collect();
    let r = corpus_stats(&docs, &VocabSpec::default(), &ByteTokenizer);
    assert_eq!(r.files, 10);
    assert_eq!(r.layer_kind_percent(LayerKind::Shape), 100.0);
    assert_eq!(r.layer_count_max, 10);
    assert_eq!(r.layer_count_mean(), 5.5);
}

#[test]
fn bundled_corpus_stats() {
    let docs: Vec<String> = common::bundled_corpus().into_iter().map(|(_, t)| t).collect();
    let r = corpus_stats(&docs, &VocabSpec::default(), &ByteTokenizer);
    assert_eq!(r.parse_failures, 0);
    assert_eq!(r.nesting_depth.get(&3), Some(&1));
    assert_eq!(r.nesting_depth.values().sum::<usize>(), r.files);
    assert_eq!(r.durations.iter().sum::<usize>(), r.files);
    let percent: f64 = [LayerKind::Precomp, LayerKind::Solid, LayerKind::Null, LayerKind::Shape, LayerKind::Text]
        .into_iter()
        .map(|k| r.layer_kind_percent(k))
        .sum();
    assert!((percent - 100.0).abs() < 1e-9);
}

#[test]
fn parallel_and_serial_agree_on_the_bundled_corpus() {
    let docs: Vec<String> = common::bundled_corpus().into_iter().map(|(_, t)| t).collect();
    let vocab = VocabSpec::default();
    let par = map(&docs, |d| lottie_tok::tokenizer::token_stats(d, &vocab, &ByteTokenizer).unwrap());
    let ser = map_serial(&docs, |d| lottie_tok::tokenizer::token_stats(d, &vocab, &ByteTokenizer).unwrap());
    assert_eq!(par, ser);
}
