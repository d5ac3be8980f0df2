//! Text pipeline: normalization, tokenization, vocabulary indexing,
//! fixed-length encoding.
//!
//! All functions are pure; a [`Vocabulary`] is immutable after
//! construction and safe to share across threads.

use std::collections::HashMap;
use std::io::{BufRead, Write};
use std::path::Path;

use crate::error::{Error, Result};

/// Reserved index for pre-padding.
pub const PAD_INDEX: usize = 0;
/// Reserved index for out-of-vocabulary tokens.
pub const OOV_INDEX: usize = 1;

fn is_kept(c: char) -> bool {
    let arabic_letter = ('\u{0600}'..='\u{06FF}').contains(&c) && c.is_alphabetic();
    let arabic_digit = ('\u{0660}'..='\u{0669}').contains(&c) || ('\u{06F0}'..='\u{06F9}').contains(&c);
    arabic_letter || arabic_digit || c.is_ascii_digit()
}

/// Strips everything but Arabic letters, Arabic-Indic/ASCII digits, and
/// spaces. Dropped characters become separators; whitespace runs collapse
/// to a single space and the result is trimmed.
pub fn normalize(text: &str) -> String {
    let mapped: String = text.chars().map(|c| if is_kept(c) { c } else { ' ' }).collect();
    let mut out = String::with_capacity(mapped.len());
    for word in mapped.split_whitespace() {
        if !out.is_empty() {
            out.push(' ');
        }
        out.push_str(word);
    }
    out
}

/// Splits normalized text on spaces. Never yields empty tokens.
pub fn tokenize(text: &str) -> Vec<String> {
    text.split_whitespace().map(str::to_owned).collect()
}

/// Fixed-length integer encoding of one review.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EncodedSequence {
    /// Exactly `max_len` indices, pre-padded with [`PAD_INDEX`].
    pub indices: Vec<usize>,
    /// Token count before padding/truncation.
    pub original_token_count: usize,
}

/// Frequency-ranked token-to-index map. Indices start at 2; 0 and 1 are
/// reserved for padding and OOV.
#[derive(Debug, Clone)]
pub struct Vocabulary {
    token_to_index: HashMap<String, usize>,
    max_size: usize,
}

impl Vocabulary {
    /// Ranks tokens by descending corpus frequency (ties broken by first
    /// occurrence) and keeps the top `max_size`.
    pub fn build<S: AsRef<str>>(corpus: &[Vec<S>], max_size: usize) -> Vocabulary {
        assert!(max_size >= 1, "max_size must be at least 1");
        let mut stats: HashMap<&str, (u64, usize)> = HashMap::new();
        let mut order = 0usize;
        for doc in corpus {
            for tok in doc {
                let tok = tok.as_ref();
                let entry = stats.entry(tok).or_insert_with(|| {
                    let e = (0, order);
                    order += 1;
                    e
                });
                entry.0 += 1;
            }
        }
        let mut ranked: Vec<(&str, (u64, usize))> = stats.into_iter().collect();
        ranked.sort_by(|a, b| b.1 .0.cmp(&a.1 .0).then(a.1 .1.cmp(&b.1 .1)));
        let token_to_index = ranked
            .into_iter()
            .take(max_size)
            .enumerate()
            .map(|(i, (tok, _))| (tok.to_owned(), i + 2))
            .collect();
        Vocabulary { token_to_index, max_size }
    }

    /// Builds from explicit `(token, index)` pairs, e.g. a loaded file.
    /// Rejects reserved or duplicate indices and duplicate tokens.
    pub fn from_entries(entries: Vec<(String, usize)>) -> Result<Vocabulary> {
        let mut token_to_index = HashMap::with_capacity(entries.len());
        let mut seen = std::collections::HashSet::with_capacity(entries.len());
        let mut max_index = 1;
        for (tok, idx) in entries {
            if idx < 2 {
                return Err(Error::data(format!("reserved index {idx} assigned to `{tok}`")));
            }
            if !seen.insert(idx) {
                return Err(Error::data(format!("duplicate index {idx}")));
            }
            if token_to_index.insert(tok.clone(), idx).is_some() {
                return Err(Error::data(format!("duplicate token `{tok}`")));
            }
            max_index = max_index.max(idx);
        }
        Ok(Vocabulary { token_to_index, max_size: max_index - 1 })
    }

    pub fn len(&self) -> usize {
        self.token_to_index.len()
    }

    pub fn is_empty(&self) -> bool {
        self.token_to_index.is_empty()
    }

    pub fn max_size(&self) -> usize {
        self.max_size
    }

    pub fn index_of(&self, token: &str) -> Option<usize> {
        self.token_to_index.get(token).copied()
    }

    /// Row count for an embedding table covering every assignable index.
    pub fn table_rows(&self) -> usize {
        self.token_to_index.values().copied().max().unwrap_or(1) + 1
    }

    /// Maps tokens through the vocabulary (missing -> [`OOV_INDEX`]),
    /// keeps the last `max_len` tokens of longer sequences, and pre-pads
    /// shorter ones with [`PAD_INDEX`].
    pub fn encode_and_pad<S: AsRef<str>>(&self, tokens: &[S], max_len: usize) -> EncodedSequence {
        assert!(max_len >= 1, "max_len must be at least 1");
        let start = tokens.len().saturating_sub(max_len);
        let mut indices = vec![PAD_INDEX; max_len];
        let pad = max_len - (tokens.len() - start);
        for (slot, tok) in indices[pad..].iter_mut().zip(&tokens[start..]) {
            *slot = self.index_of(tok.as_ref()).unwrap_or(OOV_INDEX);
        }
        EncodedSequence { indices, original_token_count: tokens.len() }
    }

    /// Writes `<token>\t<index>` lines sorted by index.
    pub fn save<W: Write>(&self, mut w: W) -> Result<()> {
        let mut entries: Vec<(&str, usize)> =
            self.token_to_index.iter().map(|(t, i)| (t.as_str(), *i)).collect();
        entries.sort_by_key(|&(_, i)| i);
        for (tok, idx) in entries {
            writeln!(w, "{tok}\t{idx}")?;
        }
        Ok(())
    }

    pub fn load<R: BufRead>(r: R) -> Result<Vocabulary> {
        let mut entries = Vec::new();
        for (lineno, line) in r.lines().enumerate() {
            let line = line?;
            if line.is_empty() {
                continue;
            }
            let (tok, idx) = line
                .split_once('\t')
                .ok_or_else(|| Error::data_at(lineno + 1, "expected `token\\tindex`"))?;
            let idx: usize = idx
                .parse()
                .map_err(|_| Error::data_at(lineno + 1, format!("bad index `{idx}`")))?;
            entries.push((tok.to_owned(), idx));
        }
        Vocabulary::from_entries(entries)
    }

    pub fn save_to_path(&self, path: &Path) -> Result<()> {
        let mut buf = Vec::new();
        self.save(&mut buf)?;
        std::fs::write(path, buf)?;
        Ok(())
    }

    pub fn load_from_path(path: &Path) -> Result<Vocabulary> {
        let file = std::fs::File::open(path)?;
        Vocabulary::load(std::io::BufReader::new(file))
    }
}
