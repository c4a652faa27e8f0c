//! Reversible encoding between animations, structured command sequences,
//! and flat token id sequences.
//!
//! ```
//! use lottie_tok::{model::parse_lottie, tokenizer, vocab::VocabSpec};
//! let a = parse_lottie(r#"{"v":"5.7.0","fr":30,"ip":0,"op":60,"w":512,"h":512,"layers":[]}"#).unwrap();
//! let vocab = VocabSpec::default();
//! let tt = tokenizer::ByteTokenizer;
//! let tokens = tokenizer::encode(&a, &vocab, &tt).unwrap();
//! assert_eq!(tokens.ids.len(), 9);
//! assert_eq!(tokenizer::decode(&tokens, &vocab, &tt).unwrap(), a);
//! ```

mod commands;
mod io;
mod text;
mod walk;

use serde_json::Value;

pub use commands::{Command, CommandKind, CommandSeq, Param};
pub use io::{TokenFile, TokenFileError};
pub use text::{ByteTokenizer, TableError, TableTokenizer, TextTokenizer};

use crate::model::{parse_value, to_value, Animation, ModelError};
use crate::vocab::{unpack_version, CorpusStats, ParamType, TokenClass, VocabSpec, COUNT_MAX};
use walk::Walker;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TokenizerError {
    #[error("sequence does not start with META")]
    MissingMeta,
    #[error("arity mismatch at {position}: {detail}")]
    ArityMismatch { position: usize, detail: String },
    #[error("unbalanced nesting at {position}: {detail}")]
    UnbalancedNesting { position: usize, detail: String },
    #[error("token {token} at {position} is not a valid {expected}")]
    TokenOutOfRange { position: usize, expected: String, token: u32 },
    #[error("vocab or tokenizer mismatch: sequence has {found}, expected {expected}")]
    VersionMismatch { expected: String, found: String },
    #[error("count {count} exceeds {max}")]
    CountTooLarge { count: usize, max: usize },
    #[error("text tokenizer has {size} ids but the text region holds {region}")]
    TextRegionTooSmall { size: u32, region: u32 },
    #[error("invalid value at {position}: {detail}")]
    InvalidValue { position: usize, detail: String },
    #[error("decoded animation is invalid: {0}")]
    Model(#[from] ModelError),
}

/// Token ids plus the vocab and text tokenizer that produced them.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TokenSeq {
    pub ids: Vec<u32>,
    pub vocab_version: String,
    pub text_tokenizer: String,
}

// ---------------------------------------------------------------------------
// backends

struct CommandWriter {
    commands: Vec<Command>,
}

impl Walker for CommandWriter {
    fn writing(&self) -> bool {
        true
    }

    fn begin(&mut self, kind: CommandKind) -> Result<(), TokenizerError> {
        self.commands.push(Command::new(kind));
        Ok(())
    }

    fn peek(&mut self) -> Result<Option<CommandKind>, TokenizerError> {
        Ok(None)
    }

    fn num(&mut self, name: &'static str, ty: ParamType, v: &mut Option<f64>) -> Result<(), TokenizerError> {
        self.commands.last_mut().unwrap().params.push(Param { name, ty, value: *v });
        Ok(())
    }

    fn text(&mut self, v: &mut Option<String>) -> Result<(), TokenizerError> {
        self.commands.last_mut().unwrap().texts.push(v.clone());
        Ok(())
    }

    fn end_of_input(&mut self) -> Result<(), TokenizerError> {
        Ok(())
    }

    fn invalid(&self, detail: &str) -> TokenizerError {
        TokenizerError::InvalidValue {
            position: self.commands.len().saturating_sub(1),
            detail: detail.to_string(),
        }
    }
}

struct CommandReader<'s> {
    commands: &'s [Command],
    /// Index of the next command to consume.
    next: usize,
    params: usize,
    texts: usize,
}

impl CommandReader<'_> {
    fn current(&self) -> Option<&Command> {
        self.next.checked_sub(1).map(|i| &self.commands[i])
    }

    fn check_consumed(&self) -> Result<(), TokenizerError> {
        if let Some(c) = self.current() {
            if self.params != c.params.len() || self.texts != c.texts.len() {
                return Err(TokenizerError::ArityMismatch {
                    position: self.next - 1,
                    detail: format!(
                        "{} has {} params and {} texts, schema uses {} and {}",
                        c.kind,
                        c.params.len(),
                        c.texts.len(),
                        self.params,
                        self.texts
                    ),
                });
            }
        }
        Ok(())
    }

    fn arity(&self, detail: String) -> TokenizerError {
        TokenizerError::ArityMismatch {
            position: self.next.saturating_sub(1),
            detail,
        }
    }
}

impl Walker for CommandReader<'_> {
    fn writing(&self) -> bool {
        false
    }

    fn begin(&mut self, kind: CommandKind) -> Result<(), TokenizerError> {
        self.check_consumed()?;
        let position = self.next;
        match self.commands.get(position) {
            None if position == 0 => return Err(TokenizerError::MissingMeta),
            None => {
                return Err(TokenizerError::UnbalancedNesting {
                    position,
                    detail: format!("sequence ends where {kind} is required"),
                })
            }
            Some(c) if c.kind != kind => {
                return Err(if position == 0 {
                    TokenizerError::MissingMeta
                } else if matches!(kind, CommandKind::End | CommandKind::GroupEnd) {
                    TokenizerError::UnbalancedNesting {
                        position,
                        detail: format!("{} found where {kind} closes the block", c.kind),
                    }
                } else {
                    TokenizerError::ArityMismatch {
                        position,
                        detail: format!("{} found where {kind} is required", c.kind),
                    }
                })
            }
            Some(_) => {}
        }
        self.next += 1;
        self.params = 0;
        self.texts = 0;
        Ok(())
    }

    fn peek(&mut self) -> Result<Option<CommandKind>, TokenizerError> {
        Ok(self.commands.get(self.next).map(|c| c.kind))
    }

    fn num(&mut self, name: &'static str, ty: ParamType, v: &mut Option<f64>) -> Result<(), TokenizerError> {
        let c = self.current().unwrap();
        match c.params.get(self.params) {
            Some(p) if p.ty == ty => {
                if p.value.is_some_and(|x| !x.is_finite()) {
                    return Err(self.invalid("non-finite parameter"));
                }
                *v = p.value;
                self.params += 1;
                Ok(())
            }
            Some(p) => Err(self.arity(format!("{} param {} has type {}, schema expects {name}: {ty}", c.kind, self.params, p.ty))),
            None => Err(self.arity(format!("{} lacks param {name}", c.kind))),
        }
    }

    fn text(&mut self, v: &mut Option<String>) -> Result<(), TokenizerError> {
        let c = self.current().unwrap();
        match c.texts.get(self.texts) {
            Some(t) => {
                *v = t.clone();
                self.texts += 1;
                Ok(())
            }
            None => Err(self.arity(format!("{} lacks text group {}", c.kind, self.texts))),
        }
    }

    fn end_of_input(&mut self) -> Result<(), TokenizerError> {
        self.check_consumed()?;
        if self.next < self.commands.len() {
            return Err(TokenizerError::UnbalancedNesting {
                position: self.next,
                detail: format!("trailing {}", self.commands[self.next].kind),
            });
        }
        Ok(())
    }

    fn invalid(&self, detail: &str) -> TokenizerError {
        TokenizerError::InvalidValue {
            position: self.next.saturating_sub(1),
            detail: detail.to_string(),
        }
    }
}

struct TokenReader<'s> {
    ids: &'s [u32],
    pos: usize,
    vocab: &'s VocabSpec,
    tt: &'s dyn TextTokenizer,
}

impl TokenReader<'_> {
    fn next_token(&mut self, inside: &str) -> Result<u32, TokenizerError> {
        let t = *self.ids.get(self.pos).ok_or_else(|| TokenizerError::UnbalancedNesting {
            position: self.pos,
            detail: format!("sequence ends inside {inside}"),
        })?;
        self.pos += 1;
        Ok(t)
    }

    fn out_of_range(&self, expected: impl Into<String>) -> TokenizerError {
        TokenizerError::TokenOutOfRange {
            position: self.pos - 1,
            expected: expected.into(),
            token: self.ids[self.pos - 1],
        }
    }
}

impl Walker for TokenReader<'_> {
    fn writing(&self) -> bool {
        false
    }

    fn begin(&mut self, kind: CommandKind) -> Result<(), TokenizerError> {
        if self.pos >= self.ids.len() {
            return Err(if self.pos == 0 {
                TokenizerError::MissingMeta
            } else {
                TokenizerError::UnbalancedNesting {
                    position: self.pos,
                    detail: format!("sequence ends where {kind} is required"),
                }
            });
        }
        let t = self.next_token("command")?;
        match self.vocab.classify(t) {
            TokenClass::Command(k) if k == kind => Ok(()),
            _ if self.pos == 1 => Err(TokenizerError::MissingMeta),
            TokenClass::Command(_) if matches!(kind, CommandKind::End | CommandKind::GroupEnd) => {
                Err(TokenizerError::UnbalancedNesting {
                    position: self.pos - 1,
                    detail: format!("command found where {kind} closes the block"),
                })
            }
            _ => Err(self.out_of_range(format!("command {kind}"))),
        }
    }

    fn peek(&mut self) -> Result<Option<CommandKind>, TokenizerError> {
        Ok(match self.ids.get(self.pos).map(|&t| self.vocab.classify(t)) {
            Some(TokenClass::Command(k)) => Some(k),
            _ => None,
        })
    }

    fn num(&mut self, name: &'static str, ty: ParamType, v: &mut Option<f64>) -> Result<(), TokenizerError> {
        let t = self.next_token(name)?;
        *v = self
            .vocab
            .dequantize(t, ty)
            .map_err(|_| self.out_of_range(ty.name()))?;
        Ok(())
    }

    fn text(&mut self, v: &mut Option<String>) -> Result<(), TokenizerError> {
        let start = self.pos;
        let mut ids = Vec::new();
        let mut first = true;
        loop {
            let mut n = None;
            self.num("text.len", ParamType::Count, &mut n)?;
            let n = match n {
                None if first => {
                    *v = None;
                    return Ok(());
                }
                None => return Err(self.invalid("text continuation without length")),
                Some(n) => n as u32,
            };
            first = false;
            for _ in 0..n {
                let t = self.next_token("text")?;
                match self.vocab.classify(t) {
                    TokenClass::Text(local) => ids.push(local),
                    _ => return Err(self.out_of_range("text")),
                }
            }
            if n < COUNT_MAX {
                break;
            }
        }
        let s = self.tt.decode(&ids).ok_or_else(|| TokenizerError::InvalidValue {
            position: start,
            detail: "text ids do not decode".into(),
        })?;
        if self.tt.encode(&s) != ids {
            return Err(TokenizerError::InvalidValue {
                position: start,
                detail: "text is not in the tokenizer's canonical segmentation".into(),
            });
        }
        *v = Some(s);
        Ok(())
    }

    fn end_of_input(&mut self) -> Result<(), TokenizerError> {
        if self.pos < self.ids.len() {
            self.pos += 1;
            return Err(self.out_of_range("end of sequence"));
        }
        Ok(())
    }

    fn invalid(&self, detail: &str) -> TokenizerError {
        TokenizerError::InvalidValue {
            position: self.pos.saturating_sub(1),
            detail: detail.to_string(),
        }
    }
}

// ---------------------------------------------------------------------------
// public API

/// Animation to structured commands. Fails only on lists longer than the
/// count limit.
pub fn to_command_sequence(a: &Animation) -> Result<CommandSeq, TokenizerError> {
    let mut w = CommandWriter { commands: Vec::new() };
    walk::animation(&mut w, &mut a.clone())?;
    Ok(CommandSeq { commands: w.commands })
}

/// Structured commands back to an animation, validated like parsed input.
pub fn from_command_sequence(seq: &CommandSeq) -> Result<Animation, TokenizerError> {
    let mut r = CommandReader {
        commands: &seq.commands,
        next: 0,
        params: 0,
        texts: 0,
    };
    let mut a = blank_animation();
    walk::animation(&mut r, &mut a)?;
    validated(a)
}

/// Flat ids for a command sequence. Also returns how many numeric values
/// were clamped to their region.
pub fn commands_to_ids(
    seq: &CommandSeq,
    vocab: &VocabSpec,
    tt: &dyn TextTokenizer,
) -> Result<(Vec<u32>, usize), TokenizerError> {
    if tt.vocab_size() > vocab.text_size {
        return Err(TokenizerError::TextRegionTooSmall {
            size: tt.vocab_size(),
            region: vocab.text_size,
        });
    }
    let mut ids = Vec::new();
    let mut clamped = 0;
    let mut push = |ids: &mut Vec<u32>, v: Option<f64>, ty| {
        let (t, c) = vocab.quantize_opt(v, ty);
        clamped += c as usize;
        ids.push(t);
    };
    for c in &seq.commands {
        ids.push(vocab.command_token(c.kind));
        for p in &c.params {
            push(&mut ids, p.value, p.ty);
        }
        for t in &c.texts {
            let Some(s) = t else {
                push(&mut ids, None, ParamType::Count);
                continue;
            };
            let local = tt.encode(s);
            let mut chunks = local.chunks(COUNT_MAX as usize);
            loop {
                let chunk = chunks.next().unwrap_or(&[]);
                push(&mut ids, Some(chunk.len() as f64), ParamType::Count);
                ids.extend(chunk.iter().map(|&i| vocab.text_base + i));
                if chunk.len() < COUNT_MAX as usize {
                    break;
                }
            }
        }
    }
    Ok((ids, clamped))
}

/// Encodes an animation. Values outside the vocab ranges are clamped; use
/// [`encode_with_report`] to count them.
pub fn encode(a: &Animation, vocab: &VocabSpec, tt: &dyn TextTokenizer) -> Result<TokenSeq, TokenizerError> {
    encode_with_report(a, vocab, tt).map(|(s, _)| s)
}

pub fn encode_with_report(
    a: &Animation,
    vocab: &VocabSpec,
    tt: &dyn TextTokenizer,
) -> Result<(TokenSeq, usize), TokenizerError> {
    let seq = to_command_sequence(a)?;
    let (ids, clamped) = commands_to_ids(&seq, vocab, tt)?;
    Ok((
        TokenSeq {
            ids,
            vocab_version: vocab.version.clone(),
            text_tokenizer: tt.id().to_string(),
        },
        clamped,
    ))
}

/// Decodes after checking the sequence was made with this vocab and tokenizer.
pub fn decode(tokens: &TokenSeq, vocab: &VocabSpec, tt: &dyn TextTokenizer) -> Result<Animation, TokenizerError> {
    if tokens.vocab_version != vocab.version {
        return Err(TokenizerError::VersionMismatch {
            expected: vocab.version.clone(),
            found: tokens.vocab_version.clone(),
        });
    }
    if tokens.text_tokenizer != tt.id() {
        return Err(TokenizerError::VersionMismatch {
            expected: tt.id().to_string(),
            found: tokens.text_tokenizer.clone(),
        });
    }
    decode_ids(&tokens.ids, vocab, tt)
}

/// Decodes bare ids without a provenance check.
pub fn decode_ids(ids: &[u32], vocab: &VocabSpec, tt: &dyn TextTokenizer) -> Result<Animation, TokenizerError> {
    let mut r = TokenReader {
        ids,
        pos: 0,
        vocab,
        tt,
    };
    let mut a = blank_animation();
    walk::animation(&mut r, &mut a)?;
    validated(a)
}

fn blank_animation() -> Animation {
    Animation::empty("", 0.0, 0.0, 0.0, 0.0, 0.0)
}

fn validated(a: Animation) -> Result<Animation, TokenizerError> {
    Ok(parse_value(&to_value(&a))?)
}

/// Structural equality through the command form: discrete parameters,
/// texts and command order must match exactly, continuous parameters
/// within `tol`.
pub fn canonical_equal(a: &Animation, b: &Animation, tol: f64) -> bool {
    canonical_equal_by(a, b, |_| tol)
}

/// [`canonical_equal`] with a tolerance per parameter type, e.g. each
/// region's step.
pub fn canonical_equal_by(a: &Animation, b: &Animation, tol: impl Fn(ParamType) -> f64) -> bool {
    let (Ok(x), Ok(y)) = (to_command_sequence(a), to_command_sequence(b)) else {
        return false;
    };
    x.commands.len() == y.commands.len()
        && x.commands.iter().zip(&y.commands).all(|(c, d)| {
            c.kind == d.kind
                && c.texts == d.texts
                && c.params.len() == d.params.len()
                && c.params.iter().zip(&d.params).all(|(p, q)| {
                    p.ty == q.ty
                        && match (p.value, q.value) {
                            (None, None) => true,
                            (Some(u), Some(v)) if p.ty.is_structural() => u == v,
                            (Some(u), Some(v)) => (u - v).abs() <= tol(p.ty),
                            _ => false,
                        }
                })
        })
}

/// Adds every numeric parameter of `a` to `stats`.
pub fn collect_stats(a: &Animation, stats: &mut CorpusStats) -> Result<(), TokenizerError> {
    for c in to_command_sequence(a)?.commands {
        for p in c.params {
            if let Some(v) = p.value {
                stats.add(p.ty, v);
            }
        }
    }
    Ok(())
}

/// Sizes of one animation under different serializations, all counted in
/// text-tokenizer ids except `command_tokens`.
#[derive(Debug, Clone, PartialEq)]
pub struct EfficiencyReport {
    pub raw_json_tokens: usize,
    pub minified_json_tokens: usize,
    pub dump_tokens: usize,
    pub command_tokens: usize,
    pub command_count: usize,
    pub clamped_values: usize,
}

impl EfficiencyReport {
    pub fn compression_vs_raw(&self) -> f64 {
        self.raw_json_tokens as f64 / self.command_tokens.max(1) as f64
    }

    pub fn compression_vs_minified(&self) -> f64 {
        self.minified_json_tokens as f64 / self.command_tokens.max(1) as f64
    }
}

/// Measures `raw` (the JSON text as given) against its command encoding.
pub fn token_stats(raw: &str, vocab: &VocabSpec, tt: &dyn TextTokenizer) -> Result<EfficiencyReport, TokenizerError> {
    let value: Value = serde_json::from_str(raw).map_err(|e| ModelError::MalformedJson(e.to_string()))?;
    let a = parse_value(&value)?;
    let seq = to_command_sequence(&a)?;
    let (ids, clamped) = commands_to_ids(&seq, vocab, tt)?;
    Ok(EfficiencyReport {
        raw_json_tokens: tt.encode(raw).len(),
        minified_json_tokens: tt.encode(&serde_json::to_string(&value).unwrap()).len(),
        dump_tokens: tt.encode(&seq.dump()).len(),
        command_tokens: ids.len(),
        command_count: seq.commands.len(),
        clamped_values: clamped,
    })
}

/// Display form of a schema version parameter.
pub(crate) fn version_label(packed: f64) -> String {
    unpack_version(packed as u32)
}

#[cfg(test)]
mod tests;
