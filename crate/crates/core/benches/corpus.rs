use criterion::{black_box, criterion_group, criterion_main, BenchmarkId, Criterion};

use lottie_tok::corpus::{map, map_serial};
use lottie_tok::fixtures;
use lottie_tok::model::{parse_lottie, serialize_lottie};
use lottie_tok::pipeline::{normalize, NormalizeConfig};
use lottie_tok::tokenizer::{encode, ByteTokenizer};
use lottie_tok::vocab::VocabSpec;

/// parse -> normalize -> encode, the per-file work of `tokenize`.
fn process(text: &str, vocab: &VocabSpec) -> usize {
    let a = parse_lottie(text).unwrap();
    let n = normalize(&a, &NormalizeConfig::default()).unwrap();
    encode(&n, vocab, &ByteTokenizer).unwrap().ids.len()
}

fn bench(c: &mut Criterion) {
    let vocab = VocabSpec::default();
    let mut group = c.benchmark_group("tokenize_corpus");
    for n in [64, 256] {
        let docs: Vec<String> = (0..n).map(|i| serialize_lottie(&fixtures::corpus_file(i))).collect();
        group.bench_with_input(BenchmarkId::new("serial", n), &docs, |b, docs| {
            b.iter(|| black_box(map_serial(docs, |d| process(d, &vocab))))
        });
        group.bench_with_input(BenchmarkId::new("parallel", n), &docs, |b, docs| {
            b.iter(|| black_box(map(docs, |d| process(d, &vocab))))
        });
    }
    group.finish();
}

criterion_group!(benches, bench);
criterion_main!(benches);
