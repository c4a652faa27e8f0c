//! Text tokenizers for the string fields carried inside token sequences.

use std::collections::HashMap;

use sha2::{Digest, Sha256};

/// Maps strings to ids in `0..vocab_size()` and back.
pub trait TextTokenizer: Send + Sync {
    /// Identifier recorded in token files; decoding checks it.
    fn id(&self) -> &str;
    fn vocab_size(&self) -> u32;
    fn encode(&self, s: &str) -> Vec<u32>;
    /// `None` when the ids are out of range or do not form valid UTF-8.
    fn decode(&self, ids: &[u32]) -> Option<String>;
}

/// One id per UTF-8 byte.
#[derive(Debug, Clone, Copy, Default)]
pub struct ByteTokenizer;

impl TextTokenizer for ByteTokenizer {
    fn id(&self) -> &str {
        "bytes"
    }

    fn vocab_size(&self) -> u32 {
        256
    }

    fn encode(&self, s: &str) -> Vec<u32> {
        s.bytes().map(u32::from).collect()
    }

    fn decode(&self, ids: &[u32]) -> Option<String> {
        let bytes = ids.iter().map(|&i| u8::try_from(i).ok()).collect::<Option<Vec<u8>>>()?;
        String::from_utf8(bytes).ok()
    }
}

#[derive(Debug, thiserror::Error)]
#[error("tokenizer table line {line}: {message}")]
pub struct TableError {
    pub line: usize,
    pub message: String,
}

/// Byte-sequence table with greedy longest-match encoding.
///
/// File format: one `id<TAB>hex-bytes` entry per line. Every single byte
/// must have an entry so that any string can be encoded.
#[derive(Debug, Clone)]
pub struct TableTokenizer {
    id: String,
    entries: Vec<Vec<u8>>,
    lookup: HashMap<Vec<u8>, u32>,
    longest: usize,
}

impl TableTokenizer {
    pub fn from_table_str(text: &str) -> Result<Self, TableError> {
        let err = |line: usize, message: &str| TableError {
            line,
            message: message.to_string(),
        };
        let mut pairs = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_no = i + 1;
            if line.trim().is_empty() {
                continue;
            }
            let (id, bytes) = line.split_once('\t').ok_or_else(|| err(line_no, "expected id<TAB>hex"))?;
            let id: u32 = id.trim().parse().map_err(|_| err(line_no, "bad id"))?;
            let bytes = hex::decode(bytes.trim()).map_err(|_| err(line_no, "bad hex"))?;
            if bytes.is_empty() {
                return Err(err(line_no, "empty entry"));
            }
            pairs.push((id, bytes));
        }
        let n = pairs.len();
        let mut entries = vec![Vec::new(); n];
        let mut lookup = HashMap::new();
        for (line, (id, bytes)) in pairs.into_iter().enumerate() {
            let slot = entries
                .get_mut(id as usize)
                .ok_or_else(|| err(line + 1, "ids must be 0..n without gaps"))?;
            if !slot.is_empty() {
                return Err(err(line + 1, "duplicate id"));
            }
            if lookup.insert(bytes.clone(), id).is_some() {
                return Err(err(line + 1, "duplicate byte sequence"));
            }
            *slot = bytes;
        }
        if let Some(b) = (0..=255u8).find(|b| !lookup.contains_key(&vec![*b])) {
            return Err(err(0, &format!("byte {b:#04x} has no entry")));
        }
        let digest = Sha256::digest(text.as_bytes());
        Ok(TableTokenizer {
            id: format!("ext-{}", hex::encode(&digest[..8])),
            longest: entries.iter().map(Vec::len).max().unwrap_or(1),
            entries,
            lookup,
        })
    }
}

impl TextTokenizer for TableTokenizer {
    fn id(&self) -> &str {
        &self.id
    }

    fn vocab_size(&self) -> u32 {
        self.entries.len() as u32
    }

    fn encode(&self, s: &str) -> Vec<u32> {
        let bytes = s.as_bytes();
        let mut out = Vec::new();
        let mut i = 0;
        while i < bytes.len() {
            let max = self.longest.min(bytes.len() - i);
            let (len, id) = (1..=max)
                .rev()
                .find_map(|n| self.lookup.get(&bytes[i..i + n]).map(|id| (n, *id)))
                .expect("single bytes are always present");
            out.push(id);
            i += len;
        }
        out
    }

    fn decode(&self, ids: &[u32]) -> Option<String> {
        let mut bytes = Vec::new();
        for &id in ids {
            bytes.extend_from_slice(self.entries.get(id as usize)?);
        }
        String::from_utf8(bytes).ok()
    }
}
