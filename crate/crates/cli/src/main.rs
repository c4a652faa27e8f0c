//! `lottie-tok`: batch cleaning, normalization, tokenization, augmentation,
//! linting and statistics for Lottie corpora.
//!
//! Every subcommand takes files and/or directories. Directories are walked
//! recursively and processed in sorted path order. Per-file results are
//! printed as `status<TAB>input<TAB>outputs<TAB>detail` lines followed by
//! `summary<TAB>files<TAB>ok<TAB>rejected<TAB>failed`.
//!
//! Per-file outputs go below `--out` when given, else next to each input;
//! `clean`, `normalize` and `detokenize` then tag their outputs
//! (`a.clean.json`, `a.norm.json`, `a.detok.json`).
//!
//! Exit codes: 2 for usage errors, 1 if any file failed, 0 otherwise.
//! `LOTTIE_TOK_THREADS` sets the worker count.

use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};

/// `println!` that ignores a closed stdout, so `| head` does not abort
/// file writing.
macro_rules! out {
    ($($t:tt)*) => {{
        use std::io::Write as _;
        let _ = writeln!(std::io::stdout().lock(), $($t)*);
    }};
}

mod commands;
mod files;

/// A problem with the invocation rather than with an input file.
#[derive(Debug)]
pub struct Usage(pub String);

#[derive(Parser)]
#[command(name = "lottie-tok", version, about = "Lottie corpus pipeline: clean, normalize, tokenize, augment, lint")]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Args)]
struct Inputs {
    /// Input files or directories.
    #[arg(required = true)]
    inputs: Vec<PathBuf>,
}

#[derive(Args)]
struct PerFile {
    #[command(flatten)]
    inputs: Inputs,
    /// Output directory; input directory structure is kept below it.
    /// Without it, outputs are written next to their inputs.
    #[arg(short, long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct Codec {
    /// Vocabulary file; the built-in default vocabulary if omitted.
    #[arg(long)]
    vocab: Option<PathBuf>,
    /// `builtin` (one id per byte) or `external:FILE` (an id<TAB>hex table).
    #[arg(long, default_value = "builtin")]
    text_tokenizer: String,
}

#[derive(Clone, Copy, ValueEnum)]
enum TokenFormat {
    /// Text: a header line, then space-separated ids.
    Ids,
    /// Little-endian binary.
    Bin,
}

#[derive(Subcommand)]
enum Cmd {
    /// Drop unsupported layers and assets, strip expressions, reject
    /// files that cannot be parameterized.
    Clean(PerFile),
    /// Fit onto a square canvas and rescale the timeline.
    Normalize {
        #[command(flatten)]
        io: PerFile,
        #[arg(long, default_value_t = 512)]
        canvas: u32,
        /// Length of the output timeline in frames.
        #[arg(long, default_value_t = 60.0)]
        time_range: f64,
    },
    /// Encode animations as token files (`.tok` or `.tokb`).
    Tokenize {
        #[command(flatten)]
        io: PerFile,
        #[command(flatten)]
        codec: Codec,
        #[arg(long, value_enum, default_value = "ids")]
        format: TokenFormat,
    },
    /// Decode token files back to Lottie JSON.
    Detokenize {
        #[command(flatten)]
        io: PerFile,
        #[command(flatten)]
        codec: Codec,
    },
    /// Add motion to static files, from a template file or a basic motion.
    Augment {
        #[command(flatten)]
        io: PerFile,
        /// Motion template file; every template is applied to every input.
        #[arg(long, required_unless_present = "basic", conflicts_with = "basic")]
        template: Option<PathBuf>,
        /// One of move-h, move-v, zoom, rotate, fade, combined2, combined3.
        #[arg(long)]
        basic: Option<String>,
        /// Parameter seed for --basic (default 0); magnitude jitter for --template.
        #[arg(long)]
        seed: Option<u64>,
        /// Motion length in frames; the whole timeline if omitted.
        #[arg(long)]
        duration: Option<f64>,
        /// Template magnitude multiplier.
        #[arg(long, default_value_t = 1.0, conflicts_with = "basic")]
        magnitude: f64,
    },
    /// Convert static SVG icons to Lottie.
    SvgImport(PerFile),
    /// Check renderability; prints `file<TAB>L<level> <code> <path>: <message>`.
    Lint {
        #[command(flatten)]
        inputs: Inputs,
        /// Print one JSON report instead of lines.
        #[arg(long)]
        json: bool,
    },
    /// Build a vocabulary from the value ranges seen in a corpus.
    VocabBuild {
        #[command(flatten)]
        inputs: Inputs,
        #[arg(long, default_value_t = 0.001)]
        q_lo: f64,
        #[arg(long, default_value_t = 0.999)]
        q_hi: f64,
        /// Text region size; at least the text tokenizer's vocabulary.
        #[arg(long)]
        text_region: Option<u32>,
        #[arg(long, default_value = "builtin")]
        text_tokenizer: String,
        /// Vocabulary file to write.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Cluster the motion of animated files into templates.
    Templates {
        #[command(flatten)]
        inputs: Inputs,
        /// Number of templates.
        #[arg(short, long)]
        k: usize,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Template file to write.
        #[arg(short, long)]
        out: PathBuf,
    },
    /// Corpus statistics as key<TAB>value lines. Unparseable files are counted.
    Stats {
        #[command(flatten)]
        inputs: Inputs,
        #[command(flatten)]
        codec: Codec,
    },
}

fn threads() -> Result<(), Usage> {
    let Ok(v) = std::env::var("LOTTIE_TOK_THREADS") else {
        return Ok(());
    };
    let n: usize = v
        .parse()
        .ok()
        .filter(|n| *n > 0)
        .ok_or_else(|| Usage(format!("LOTTIE_TOK_THREADS must be a positive integer, got {v:?}")))?;
    #[cfg(feature = "parallel")]
    rayon::ThreadPoolBuilder::new()
        .num_threads(n)
        .build_global()
        .map_err(|e| Usage(e.to_string()))?;
    #[cfg(not(feature = "parallel"))]
    let _ = n;
    Ok(())
}

fn run(cmd: Cmd) -> Result<usize, Usage> {
    use commands as c;
    match cmd {
        Cmd::Clean(io) => c::clean(&io.inputs.inputs, io.out.as_deref()),
        Cmd::Normalize { io, canvas, time_range } => c::normalize(&io.inputs.inputs, io.out.as_deref(), canvas, time_range),
        Cmd::Tokenize { io, codec, format } => {
            c::tokenize(&io.inputs.inputs, io.out.as_deref(), &codec, matches!(format, TokenFormat::Bin))
        }
        Cmd::Detokenize { io, codec } => c::detokenize(&io.inputs.inputs, io.out.as_deref(), &codec),
        Cmd::Augment {
            io,
            template,
            basic,
            seed,
            duration,
            magnitude,
        } => c::augment(&io.inputs.inputs, io.out.as_deref(), template, basic, seed, duration, magnitude),
        Cmd::SvgImport(io) => c::svg_import(&io.inputs.inputs, io.out.as_deref()),
        Cmd::Lint { inputs, json } => c::lint(&inputs.inputs, json),
        Cmd::VocabBuild {
            inputs,
            q_lo,
            q_hi,
            text_region,
            text_tokenizer,
            out,
        } => c::vocab_build(&inputs.inputs, q_lo, q_hi, text_region, &text_tokenizer, &out),
        Cmd::Templates { inputs, k, seed, out } => c::templates(&inputs.inputs, k, seed, &out),
        Cmd::Stats { inputs, codec } => c::stats(&inputs.inputs, &codec),
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match threads().and_then(|()| run(cli.cmd)) {
        Ok(0) => ExitCode::SUCCESS,
        Ok(_) => ExitCode::from(1),
        Err(Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}
