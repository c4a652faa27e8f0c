use super::*;
use crate::model::{parse_lottie, LayerKind};

const SINK: &str = include_str!("../../tests/fixtures/kitchen_sink.json");

fn sink() -> Animation {
    parse_lottie(SINK).unwrap()
}

fn empty() -> Animation {
    parse_lottie(r#"{"v":"5.12.1","fr":25,"ip":0,"op":50,"w":512,"h":512,"layers":[]}"#).unwrap()
}

#[test]
fn commands_round_trip_exactly() {
    let a = sink();
    let seq = to_command_sequence(&a).unwrap();
    assert_eq!(from_command_sequence(&seq).unwrap(), a);
}

#[test]
fn every_command_kind_is_exercised() {
    let seq = to_command_sequence(&sink()).unwrap();
    let kinds = seq.kinds();
    for k in CommandKind::all() {
        assert!(kinds.contains(k), "{k} missing");
    }
}

#[test]
fn layers_travel_in_reverse() {
    let seq = to_command_sequence(&sink()).unwrap();
    let layers: Vec<_> = seq
        .commands
        .iter()
        .filter_map(|c| match c.kind {
            CommandKind::Layer(k) => Some(k),
            _ => None,
        })
        .collect();
    assert_eq!(
        &layers[..5],
        &[LayerKind::Precomp, LayerKind::Null, LayerKind::Solid, LayerKind::Text, LayerKind::Shape]
    );
}

#[test]
fn tokens_round_trip_within_grid() {
    let a = sink();
    let vocab = VocabSpec::default();
    let t = encode(&a, &vocab, &ByteTokenizer).unwrap();
    let b = decode(&t, &vocab, &ByteTokenizer).unwrap();
    assert!(canonical_equal(&a, &b, 1.0 / 255.0 + 1e-12));
    // A decoded animation encodes back to the same ids.
    assert_eq!(encode(&b, &vocab, &ByteTokenizer).unwrap(), t);
}

#[test]
fn empty_animation_is_nine_ids() {
    let vocab = VocabSpec::default();
    let t = encode(&empty(), &vocab, &ByteTokenizer).unwrap();
    assert_eq!(t.ids.len(), 9);
    assert_eq!(t.ids[0], vocab.command_token(CommandKind::Meta));
}

#[test]
fn unpackable_version_travels_as_text() {
    let mut a = empty();
    a.version = "6.0".into();
    let vocab = VocabSpec::default();
    let t = encode(&a, &vocab, &ByteTokenizer).unwrap();
    assert_eq!(t.ids.len(), 9 + 1 + 3);
    assert_eq!(decode(&t, &vocab, &ByteTokenizer).unwrap().version, "6.0");
}

#[test]
fn dump_shows_version_string() {
    let seq = to_command_sequence(&empty()).unwrap();
    assert!(seq.dump().starts_with("animation v=\"5.12.1\" fr=25 ip=0 op=50"));
}

#[test]
fn long_text_is_chunked() {
    let mut a = empty();
    a.name = Some("x".repeat(COUNT_MAX as usize * 2 + 5));
    let vocab = VocabSpec::default();
    let t = encode(&a, &vocab, &ByteTokenizer).unwrap();
    assert_eq!(t.ids.len(), 9 - 1 + 3 + 2 * COUNT_MAX as usize + 5);
    assert_eq!(decode(&t, &vocab, &ByteTokenizer).unwrap(), a);
    a.name = Some("y".repeat(COUNT_MAX as usize));
    let t = encode(&a, &vocab, &ByteTokenizer).unwrap();
    assert_eq!(decode(&t, &vocab, &ByteTokenizer).unwrap(), a);
}

#[test]
fn version_mismatch_is_rejected() {
    let vocab = VocabSpec::default();
    let mut t = encode(&empty(), &vocab, &ByteTokenizer).unwrap();
    t.vocab_version = "0000000000000000".into();
    assert!(matches!(
        decode(&t, &vocab, &ByteTokenizer),
        Err(TokenizerError::VersionMismatch { .. })
    ));
}

#[test]
fn structural_errors() {
    let vocab = VocabSpec::default();
    let t = encode(&sink(), &vocab, &ByteTokenizer).unwrap();
    let tt = &ByteTokenizer;

    assert_eq!(decode_ids(&[], &vocab, tt), Err(TokenizerError::MissingMeta));
    assert_eq!(decode_ids(&t.ids[1..], &vocab, tt), Err(TokenizerError::MissingMeta));

    let truncated = &t.ids[..t.ids.len() - 1];
    assert!(matches!(
        decode_ids(truncated, &vocab, tt),
        Err(TokenizerError::UnbalancedNesting { .. })
    ));

    let mut bad = t.ids.clone();
    bad[1] = vocab.size() + 7;
    assert!(matches!(
        decode_ids(&bad, &vocab, tt),
        Err(TokenizerError::TokenOutOfRange { position: 1, .. })
    ));

    let mut trailing = t.ids.clone();
    trailing.push(vocab.command_token(CommandKind::End));
    assert!(matches!(
        decode_ids(&trailing, &vocab, tt),
        Err(TokenizerError::TokenOutOfRange { .. })
    ));
}

#[test]
fn command_arity_is_checked() {
    let mut seq = to_command_sequence(&sink()).unwrap();
    seq.commands[1].params.pop();
    assert!(matches!(
        from_command_sequence(&seq),
        Err(TokenizerError::ArityMismatch { position: 1, .. })
    ));

    let mut seq = to_command_sequence(&sink()).unwrap();
    let end = seq.kinds().iter().position(|k| *k == CommandKind::End).unwrap();
    seq.commands.remove(end);
    assert!(matches!(
        from_command_sequence(&seq),
        Err(TokenizerError::UnbalancedNesting { .. })
    ));
}

#[test]
fn oversized_lists_are_rejected() {
    let mut a = empty();
    let layer = crate::model::Layer::new(crate::model::LayerPayload::Null, 1, 0.0, 10.0);
    a.layers.push(layer);
    if let Some(crate::model::Position::Combined(_)) | None = a.layers[0].transform.position {
        a.layers[0].transform.position = Some(crate::model::Position::Combined(crate::model::Property::fixed(vec![
            0.0;
            COUNT_MAX as usize + 1
        ])));
    }
    assert!(matches!(
        to_command_sequence(&a),
        Err(TokenizerError::CountTooLarge { count: 1024, .. })
    ));
}

#[test]
fn non_canonical_extras_are_rejected() {
    let mut a = empty();
    a.extras.insert("k".into(), serde_json::json!(1));
    let mut seq = to_command_sequence(&a).unwrap();
    let extra = seq.commands.iter_mut().find(|c| c.kind == CommandKind::Extra).unwrap();
    extra.texts[0] = Some("{ \"k\": 1 }".into());
    assert!(matches!(
        from_command_sequence(&seq),
        Err(TokenizerError::InvalidValue { .. })
    ));
}

#[test]
fn clamping_is_counted() {
    let mut a = empty();
    a.width = 5000.0;
    let (t, clamped) = encode_with_report(&a, &VocabSpec::default(), &ByteTokenizer).unwrap();
    assert_eq!(clamped, 1);
    assert_eq!(decode(&t, &VocabSpec::default(), &ByteTokenizer).unwrap().width, 1024.0);
}

#[test]
fn canonical_equal_respects_tolerance() {
    let a = sink();
    let mut b = a.clone();
    b.layers[2].in_point += 0.01;
    assert!(!canonical_equal(&a, &b, 0.0));
    assert!(canonical_equal(&a, &b, 0.02));
    let mut c = a.clone();
    c.layers[2].index = Some(99);
    assert!(!canonical_equal(&a, &c, 1.0));
}

#[test]
fn stats_report_compression() {
    let r = token_stats(SINK, &VocabSpec::default(), &ByteTokenizer).unwrap();
    assert!(r.raw_json_tokens >= r.minified_json_tokens);
    assert!(r.compression_vs_raw() > 1.0);
}

#[test]
fn table_tokenizer_must_fit_text_region() {
    let mut table: String = (0..256).map(|b| format!("{b}\t{b:02x}\n")).collect();
    table.push_str("256\t6c61\n");
    let tt = TableTokenizer::from_table_str(&table).unwrap();
    assert!(matches!(
        encode(&empty(), &VocabSpec::default(), &tt),
        Err(TokenizerError::TextRegionTooSmall { .. })
    ));
    let ranges: Vec<_> = ParamType::ALL
        .iter()
        .map(|t| {
            let (a, b, s) = t.default_range();
            (*t, a, b, s)
        })
        .collect();
    let vocab = VocabSpec::layout(&ranges, 512);
    let t = encode(&sink(), &vocab, &tt).unwrap();
    assert_eq!(t.text_tokenizer, tt.id());
    let b = decode(&t, &vocab, &tt).unwrap();
    assert_eq!(encode(&b, &vocab, &tt).unwrap(), t);
}
