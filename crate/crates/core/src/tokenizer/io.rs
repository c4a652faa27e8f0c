//! Token files: a line-oriented text form and a compact binary form.
//!
//! Text form: a header `#lottie-tok v<vocab version> tt=<tokenizer id>`,
//! then one sample per line as space-separated ids.
//!
//! Binary form: magic `LTOK`, format byte 1, the vocab version and
//! tokenizer id as u16-length-prefixed UTF-8, then per sample a u32 length
//! followed by that many u32 ids. All integers little-endian.

use std::io::{self, BufRead, Read, Write};

use super::TokenSeq;

const MAGIC: &[u8; 4] = b"LTOK";
const FORMAT: u8 = 1;

#[derive(Debug, thiserror::Error)]
pub enum TokenFileError {
    #[error(transparent)]
    Io(#[from] io::Error),
    #[error("token file: {0}")]
    Format(String),
    #[error("samples disagree on vocab or tokenizer")]
    MixedProvenance,
}

/// Samples sharing one vocab and text tokenizer.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct TokenFile {
    pub vocab_version: String,
    pub text_tokenizer: String,
    pub samples: Vec<Vec<u32>>,
}

impl TokenFile {
    pub fn from_seqs(seqs: &[TokenSeq]) -> Result<Self, TokenFileError> {
        let Some(first) = seqs.first() else {
            return Ok(TokenFile::default());
        };
        if seqs
            .iter()
            .any(|s| s.vocab_version != first.vocab_version || s.text_tokenizer != first.text_tokenizer)
        {
            return Err(TokenFileError::MixedProvenance);
        }
        Ok(TokenFile {
            vocab_version: first.vocab_version.clone(),
            text_tokenizer: first.text_tokenizer.clone(),
            samples: seqs.iter().map(|s| s.ids.clone()).collect(),
        })
    }

    pub fn seqs(&self) -> Vec<TokenSeq> {
        self.samples
            .iter()
            .map(|ids| TokenSeq {
                ids: ids.clone(),
                vocab_version: self.vocab_version.clone(),
                text_tokenizer: self.text_tokenizer.clone(),
            })
            .collect()
    }

    pub fn write_text<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "#lottie-tok v{} tt={}", self.vocab_version, self.text_tokenizer)?;
        for s in &self.samples {
            let line: Vec<String> = s.iter().map(u32::to_string).collect();
            writeln!(out, "{}", line.join(" "))?;
        }
        out.flush()
    }

    pub fn read_text<R: BufRead>(input: R) -> Result<Self, TokenFileError> {
        let mut lines = input.lines();
        let header = lines.next().ok_or_else(|| TokenFileError::Format("empty file".into()))??;
        let rest = header
            .strip_prefix("#lottie-tok v")
            .ok_or_else(|| TokenFileError::Format("missing header".into()))?;
        let (version, tt) = rest
            .split_once(" tt=")
            .ok_or_else(|| TokenFileError::Format("header lacks tt=".into()))?;
        let mut samples = Vec::new();
        for (i, line) in lines.enumerate() {
            let line = line?;
            let ids = line
                .split_ascii_whitespace()
                .map(str::parse)
                .collect::<Result<Vec<u32>, _>>()
                .map_err(|e| TokenFileError::Format(format!("line {}: {e}", i + 2)))?;
            samples.push(ids);
        }
        Ok(TokenFile {
            vocab_version: version.to_string(),
            text_tokenizer: tt.to_string(),
            samples,
        })
    }

    pub fn write_binary<W: Write>(&self, mut out: W) -> io::Result<()> {
        out.write_all(MAGIC)?;
        out.write_all(&[FORMAT])?;
        for s in [&self.vocab_version, &self.text_tokenizer] {
            let len = u16::try_from(s.len()).map_err(|_| io::Error::new(io::ErrorKind::InvalidInput, "header string too long"))?;
            out.write_all(&len.to_le_bytes())?;
            out.write_all(s.as_bytes())?;
        }
        for sample in &self.samples {
            out.write_all(&(sample.len() as u32).to_le_bytes())?;
            for id in sample {
                out.write_all(&id.to_le_bytes())?;
            }
        }
        out.flush()
    }

    pub fn read_binary<R: Read>(mut input: R) -> Result<Self, TokenFileError> {
        let mut buf = Vec::new();
        input.read_to_end(&mut buf)?;
        let mut cur = Cursor { buf: &buf, pos: 0 };
        if cur.take(4)? != MAGIC {
            return Err(TokenFileError::Format("bad magic".into()));
        }
        if cur.take(1)?[0] != FORMAT {
            return Err(TokenFileError::Format("unsupported format version".into()));
        }
        let mut header = Vec::new();
        for _ in 0..2 {
            let len = u16::from_le_bytes(cur.take(2)?.try_into().unwrap()) as usize;
            let s = std::str::from_utf8(cur.take(len)?)
                .map_err(|_| TokenFileError::Format("header is not UTF-8".into()))?;
            header.push(s.to_string());
        }
        let mut samples = Vec::new();
        while cur.pos < buf.len() {
            let n = cur.u32()? as usize;
            let mut ids = Vec::with_capacity(n.min(1 << 20));
            for _ in 0..n {
                ids.push(cur.u32()?);
            }
            samples.push(ids);
        }
        let text_tokenizer = header.pop().unwrap();
        let vocab_version = header.pop().unwrap();
        Ok(TokenFile {
            vocab_version,
            text_tokenizer,
            samples,
        })
    }
}

struct Cursor<'a> {
    buf: &'a [u8],
    pos: usize,
}

impl<'a> Cursor<'a> {
    fn take(&mut self, n: usize) -> Result<&'a [u8], TokenFileError> {
        let end = self.pos + n;
        let s = self
            .buf
            .get(self.pos..end)
            .ok_or_else(|| TokenFileError::Format("truncated".into()))?;
        self.pos = end;
        Ok(s)
    }

    fn u32(&mut self) -> Result<u32, TokenFileError> {
        Ok(u32::from_le_bytes(self.take(4)?.try_into().unwrap()))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sample() -> TokenFile {
        TokenFile {
            vocab_version: "0123456789abcdef".into(),
            text_tokenizer: "bytes".into(),
            samples: vec![vec![0, 5, 70000], vec![], vec![1]],
        }
    }

    #[test]
    fn text_round_trip() {
        let mut out = Vec::new();
        sample().write_text(&mut out).unwrap();
        assert!(String::from_utf8_lossy(&out).starts_with("#lottie-tok v0123456789abcdef tt=bytes\n0 5 70000\n"));
        assert_eq!(TokenFile::read_text(&out[..]).unwrap(), sample());
    }

    #[test]
    fn binary_round_trip() {
        let mut out = Vec::new();
        sample().write_binary(&mut out).unwrap();
        assert_eq!(&out[..4], b"LTOK");
        assert_eq!(TokenFile::read_binary(&out[..]).unwrap(), sample());
        assert!(TokenFile::read_binary(&out[..out.len() - 1]).is_err());
    }
}
