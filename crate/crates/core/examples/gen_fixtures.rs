//! Regenerates the bundled fixture corpus and the golden default vocab.
//!
//! cargo run -p lottie-tok --example gen_fixtures

use std::fs;
use std::path::Path;

use lottie_tok::fixtures;
use lottie_tok::model::serialize_lottie;
use lottie_tok::vocab::VocabSpec;

const FILES: usize = 48;

fn main() -> std::io::Result<()> {
    let root = Path::new(env!("CARGO_MANIFEST_DIR")).join("tests");
    let corpus = root.join("fixtures/corpus");
    fs::create_dir_all(&corpus)?;
    for i in 0..FILES {
        fs::write(corpus.join(format!("gen_{i:03}.json")), serialize_lottie(&fixtures::corpus_file(i)))?;
    }
    fs::write(corpus.join("nested_precomp.json"), serialize_lottie(&fixtures::nested_precomp()))?;
    fs::create_dir_all(root.join("golden"))?;
    fs::write(root.join("golden/default.vocab"), VocabSpec::default().to_file_string())?;
    Ok(())
}
