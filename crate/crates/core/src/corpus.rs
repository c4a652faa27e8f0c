//! Per-file corpus processing and corpus statistics.

use std::collections::{BTreeMap, HashMap};
use std::fmt::Write as _;

use crate::model::*;
use crate::tokenizer::{token_stats, TextTokenizer};
use crate::vocab::VocabSpec;

/// Maps `f` over `items` in order, in parallel when the `parallel` feature
/// is on.
pub fn map<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    I: Sync,
    O: Send,
    F: Fn(&I) -> O + Sync + Send,
{
    #[cfg(feature = "parallel")]
    {
        use rayon::prelude::*;
        items.par_iter().map(f).collect()
    }
    #[cfg(not(feature = "parallel"))]
    {
        map_serial(items, f)
    }
}

/// Maps `f` over `items` on the calling thread.
pub fn map_serial<I, O, F>(items: &[I], f: F) -> Vec<O>
where
    F: Fn(&I) -> O,
{
    items.iter().map(f).collect()
}

/// Upper bounds (exclusive) of the duration buckets, in seconds.
pub const DURATION_BUCKETS: [f64; 6] = [1.0, 2.0, 3.0, 5.0, 10.0, f64::INFINITY];

#[derive(Debug, Clone, PartialEq, Default)]
pub struct StatsReport {
    pub files: usize,
    pub parse_failures: usize,
    /// Layers of each kind, counting precomp asset layers.
    pub layer_kinds: BTreeMap<&'static str, usize>,
    /// Files by deepest precomp nesting; a file with only root layers is depth 1.
    pub nesting_depth: BTreeMap<usize, usize>,
    /// Files per entry of [`DURATION_BUCKETS`].
    pub durations: [usize; 6],
    pub layer_count_total: usize,
    pub layer_count_max: usize,
    pub raw_json_tokens: usize,
    pub minified_json_tokens: usize,
    pub command_tokens: usize,
    pub clamped_values: usize,
    /// Files that parsed but could not be encoded.
    pub encode_failures: usize,
}

impl StatsReport {
    pub fn parsed(&self) -> usize {
        self.files - self.parse_failures
    }

    pub fn layer_kind_percent(&self, kind: LayerKind) -> f64 {
        let total: usize = self.layer_kinds.values().sum();
        if total == 0 {
            return 0.0;
        }
        100.0 * *self.layer_kinds.get(kind.label()).unwrap_or(&0) as f64 / total as f64
    }

    pub fn layer_count_mean(&self) -> f64 {
        match self.parsed() {
            0 => 0.0,
            n => self.layer_count_total as f64 / n as f64,
        }
    }

    pub fn compression_vs_minified(&self) -> f64 {
        self.minified_json_tokens as f64 / self.command_tokens.max(1) as f64
    }

    pub fn compression_vs_raw(&self) -> f64 {
        self.raw_json_tokens as f64 / self.command_tokens.max(1) as f64
    }

    fn merge(&mut self, o: StatsReport) {
        self.files += o.files;
        self.parse_failures += o.parse_failures;
        for (k, v) in o.layer_kinds {
            *self.layer_kinds.entry(k).or_default() += v;
        }
        for (k, v) in o.nesting_depth {
            *self.nesting_depth.entry(k).or_default() += v;
        }
        for (a, b) in self.durations.iter_mut().zip(o.durations) {
            *a += b;
        }
        self.layer_count_total += o.layer_count_total;
        self.layer_count_max = self.layer_count_max.max(o.layer_count_max);
        self.raw_json_tokens += o.raw_json_tokens;
        self.minified_json_tokens += o.minified_json_tokens;
        self.command_tokens += o.command_tokens;
        self.clamped_values += o.clamped_values;
        self.encode_failures += o.encode_failures;
    }

    /// `key<TAB>value` lines.
    pub fn to_tsv(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "files\t{}", self.files);
        let _ = writeln!(out, "parse_failures\t{}", self.parse_failures);
        for kind in [LayerKind::Precomp, LayerKind::Solid, LayerKind::Null, LayerKind::Shape, LayerKind::Text] {
            let _ = writeln!(out, "layer_type\t{}\t{:.1}", kind.label(), self.layer_kind_percent(kind));
        }
        for (depth, n) in &self.nesting_depth {
            let _ = writeln!(out, "nesting_depth\t{depth}\t{n}");
        }
        let mut lo = 0.0;
        for (hi, n) in DURATION_BUCKETS.iter().zip(self.durations) {
            let _ = writeln!(out, "duration_s\t{lo}-{hi}\t{n}");
            lo = *hi;
        }
        let _ = writeln!(out, "layer_count_mean\t{:.2}", self.layer_count_mean());
        let _ = writeln!(out, "layer_count_max\t{}", self.layer_count_max);
        let _ = writeln!(out, "raw_json_tokens\t{}", self.raw_json_tokens);
        let _ = writeln!(out, "minified_json_tokens\t{}", self.minified_json_tokens);
        let _ = writeln!(out, "command_tokens\t{}", self.command_tokens);
        let _ = writeln!(out, "compression_vs_minified\t{:.2}", self.compression_vs_minified());
        let _ = writeln!(out, "clamped_values\t{}", self.clamped_values);
        let _ = writeln!(out, "encode_failures\t{}", self.encode_failures);
        out
    }
}

/// Deepest chain of precomp references starting from the root layers.
pub fn nesting_depth(a: &Animation) -> usize {
    let assets: HashMap<&str, &PrecompAsset> = a.assets.iter().map(|x| (x.id.as_str(), x)).collect();
    fn depth<'a>(layers: &'a [Layer], assets: &HashMap<&str, &'a PrecompAsset>, seen: &mut Vec<&'a str>) -> usize {
        let mut best = 1;
        for l in layers {
            if let LayerPayload::Precomp(p) = &l.payload {
                let Some(asset) = assets.get(p.ref_id.as_str()) else { continue };
                if seen.contains(&p.ref_id.as_str()) {
                    continue;
                }
                seen.push(&asset.id);
                best = best.max(1 + depth(&asset.layers, assets, seen));
                seen.pop();
            }
        }
        best
    }
    depth(&a.layers, &assets, &mut Vec::new())
}

fn file_stats(text: &str, vocab: &VocabSpec, tt: &dyn TextTokenizer) -> StatsReport {
    let mut r = StatsReport {
        files: 1,
        ..StatsReport::default()
    };
    let a = match parse_lottie(text) {
        Ok(a) => a,
        Err(_) => {
            r.parse_failures = 1;
            return r;
        }
    };
    let mut count = 0;
    for l in a.all_layers() {
        *r.layer_kinds.entry(l.kind().label()).or_default() += 1;
        count += 1;
    }
    r.layer_count_total = count;
    r.layer_count_max = count;
    r.nesting_depth.insert(nesting_depth(&a), 1);
    let seconds = (a.out_point - a.in_point) / a.frame_rate;
    let bucket = DURATION_BUCKETS.iter().position(|b| seconds < *b).unwrap_or(DURATION_BUCKETS.len() - 1);
    r.durations[bucket] = 1;
    match token_stats(text, vocab, tt) {
        Ok(e) => {
            r.raw_json_tokens = e.raw_json_tokens;
            r.minified_json_tokens = e.minified_json_tokens;
            r.command_tokens = e.command_tokens;
            r.clamped_values = e.clamped_values;
        }
        Err(_) => r.encode_failures = 1,
    }
    r
}

/// Statistics over raw JSON documents. Unparseable files are counted, not
/// fatal.
pub fn corpus_stats<S: AsRef<str> + Sync>(docs: &[S], vocab: &VocabSpec, tt: &(dyn TextTokenizer + Sync)) -> StatsReport {
    map(docs, |d| file_stats(d.as_ref(), vocab, tt))
        .into_iter()
        .fold(StatsReport::default(), |mut acc, r| {
            acc.merge(r);
            acc
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::tokenizer::ByteTokenizer;

    fn doc(layers: &[i64]) -> String {
        let ls: Vec<String> = layers
            .iter()
            .enumerate()
            .map(|(i, ty)| {
                let extra = if *ty == 4 { r#","shapes":[]"# } else { "" };
                format!(r#"{{"ty":{ty},"ind":{},"ip":0,"op":60,"st":0,"ks":{{}}{extra}}}"#, i + 1)
            })
            .collect();
        format!(r#"{{"v":"5.7.0","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[{}]}}"#, ls.join(","))
    }

    #[test]
    fn known_composition() {
        let docs = vec![doc(&[4, 4]), doc(&[4, 3]), "not json".to_string()];
        let r = corpus_stats(&docs, &VocabSpec::default(), &ByteTokenizer);
        assert_eq!((r.files, r.parse_failures), (3, 1));
        assert_eq!(r.layer_kind_percent(LayerKind::Shape), 75.0);
        assert_eq!(r.layer_kind_percent(LayerKind::Null), 25.0);
        assert_eq!(r.layer_count_mean(), 2.0);
        assert_eq!(r.durations[2], 2);
        assert_eq!(r.nesting_depth.get(&1), Some(&2));
        assert!(r.to_tsv().contains("layer_type\tshape\t75.0\n"));
    }

    #[test]
    fn precomp_in_precomp_is_depth_three() {
        assert_eq!(nesting_depth(&fixtures::nested_precomp()), 3);
    }

    #[test]
    fn serial_and_parallel_agree() {
        let docs: Vec<String> = (0..20).map(|i| serialize_lottie(&fixtures::corpus_file(i))).collect();
        let vocab = VocabSpec::default();
        let a = map(&docs, |d| file_stats(d, &vocab, &ByteTokenizer));
        let b = map_serial(&docs, |d| file_stats(d, &vocab, &ByteTokenizer));
        assert_eq!(a, b);
    }
}
