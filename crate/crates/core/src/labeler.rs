//! Edge signs from message text and survey ratings.
//!
//! Text scoring is sentence based. Each sentence takes the majority polarity
//! of its lexicon matches (ties and no matches are neutral) and is flipped
//! once if it contains any negation term. A document scores the sum of its
//! sentence polarities divided by its sentence count.

use std::collections::{HashMap, HashSet};
use std::io::BufRead;

#[cfg(feature = "parallel")]
use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::graph::SignedEdge;
use crate::records::{Payload, RawEdgeRecord};

pub const SAMPLE_SENTIMENT: &str = include_str!("../data/sample_sentiment.tsv");
pub const SAMPLE_VIRTUE_VICE: &str = include_str!("../data/sample_virtue_vice.tsv");
pub const SAMPLE_NEGATIONS: &str = include_str!("../data/sample_negations.txt");

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LexiconEntry {
    pub polarity: i8,
    pub category: Option<String>,
}

/// Term polarities keyed by lowercased surface form and optional POS tag.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Lexicon {
    name: String,
    entries: HashMap<(String, Option<String>), LexiconEntry>,
    negations: HashSet<String>,
}

fn parse_polarity(s: &str) -> Option<i8> {
    match s.to_ascii_lowercase().as_str() {
        "+" | "+1" | "1" | "positive" | "virtue" => Some(1),
        "-" | "-1" | "negative" | "vice" => Some(-1),
        "0" | "neutral" => Some(0),
        _ => None,
    }
}

fn content_lines<R: BufRead>(reader: R) -> impl Iterator<Item = Result<(u64, String)>> {
    reader.lines().enumerate().filter_map(|(i, line)| match line {
        Err(e) => Some(Err(e.into())),
        Ok(line) => {
            let t = line.trim();
            (!t.is_empty() && !t.starts_with('#')).then(|| Ok((i as u64 + 1, line)))
        }
    })
}

impl Lexicon {
    pub fn new(name: impl Into<String>) -> Self {
        Lexicon {
            name: name.into(),
            ..Self::default()
        }
    }

    /// Parses `term<TAB>pos-or-*<TAB>polarity[<TAB>category]` lines.
    pub fn from_tsv<R: BufRead>(name: impl Into<String>, reader: R) -> Result<Self> {
        let mut lex = Lexicon::new(name);
        for item in content_lines(reader) {
            let (line, text) = item?;
            let bad = |reason: &str| Error::MalformedLine {
                line,
                reason: reason.to_owned(),
            };
            let cols: Vec<&str> = text.split('\t').map(str::trim).collect();
            if !(3..=4).contains(&cols.len()) || cols[0].is_empty() {
                return Err(bad("expected term, POS, polarity and optional category"));
            }
            let pos = (cols[1] != "*" && !cols[1].is_empty()).then(|| cols[1]);
            let polarity = parse_polarity(cols[2]).ok_or_else(|| bad("unrecognised polarity"))?;
            let category = cols.get(3).filter(|c| !c.is_empty()).map(|c| c.to_string());
            if !lex.insert_entry(cols[0], pos, polarity, category) {
                return Err(bad("duplicate (term, POS) entry"));
            }
        }
        Ok(lex)
    }

    /// Reads one negation term per line.
    pub fn load_negations<R: BufRead>(&mut self, reader: R) -> Result<()> {
        for item in content_lines(reader) {
            let (_, term) = item?;
            self.negations.insert(term.trim().to_lowercase());
        }
        Ok(())
    }

    /// Toy sentiment lexicon with the sample negation list.
    pub fn sample_sentiment() -> Self {
        Self::sample("sample-sentiment", SAMPLE_SENTIMENT)
    }

    /// Toy virtue/vice lexicon with the sample negation list.
    pub fn sample_virtue_vice() -> Self {
        Self::sample("sample-virtue-vice", SAMPLE_VIRTUE_VICE)
    }

    fn sample(name: &str, tsv: &str) -> Self {
        let mut lex = Lexicon::from_tsv(name, tsv.as_bytes()).expect("bundled lexicon parses");
        lex.load_negations(SAMPLE_NEGATIONS.as_bytes())
            .expect("bundled negations parse");
        lex
    }

    fn insert_entry(&mut self, term: &str, pos: Option<&str>, polarity: i8, category: Option<String>) -> bool {
        let key = (term.to_lowercase(), pos.map(str::to_owned));
        if self.entries.contains_key(&key) {
            return false;
        }
        self.entries.insert(key, LexiconEntry { polarity, category });
        true
    }

    /// Adds or replaces an entry.
    pub fn insert(&mut self, term: &str, pos: Option<&str>, polarity: i8) -> &mut Self {
        self.entries.insert(
            (term.to_lowercase(), pos.map(str::to_owned)),
            LexiconEntry {
                polarity: polarity.signum(),
                category: None,
            },
        );
        self
    }

    pub fn add_negation(&mut self, term: &str) -> &mut Self {
        self.negations.insert(term.to_lowercase());
        self
    }

    pub fn clear_negations(&mut self) -> &mut Self {
        self.negations.clear();
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn is_negation(&self, token: &str) -> bool {
        self.negations.contains(token)
    }

    /// POS-specific entries match only tokens carrying that tag; untagged
    /// entries match any token.
    pub fn lookup(&self, token: &Token) -> Option<&LexiconEntry> {
        if let Some(pos) = &token.pos {
            if let Some(e) = self.entries.get(&(token.text.clone(), Some(pos.clone()))) {
                return Some(e);
            }
        }
        self.entries.get(&(token.text.clone(), None))
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Token {
    pub text: String,
    pub pos: Option<String>,
}

impl Token {
    pub fn new(text: impl Into<String>) -> Self {
        Token {
            text: text.into(),
            pos: None,
        }
    }

    pub fn tagged(text: impl Into<String>, pos: impl Into<String>) -> Self {
        Token {
            text: text.into(),
            pos: Some(pos.into()),
        }
    }
}

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric()
}

/// Splits text after `.`, `!` or `?` runs that are followed by whitespace
/// or the end of input.
fn split_sentences(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut start = 0;
    let mut chars = text.char_indices().peekable();
    while let Some((_, c)) = chars.next() {
        if !is_terminal(c) {
            continue;
        }
        while let Some(&(_, next)) = chars.peek() {
            if is_terminal(next) || matches!(next, '"' | '\'' | ')' | '\u{201d}' | '\u{2019}') {
                chars.next();
            } else {
                break;
            }
        }
        match chars.peek() {
            None => {
                out.push(&text[start..]);
                start = text.len();
            }
            Some(&(i, next)) if next.is_whitespace() => {
                out.push(&text[start..i]);
                start = i;
            }
            _ => {}
        }
    }
    if start < text.len() {
        out.push(&text[start..]);
    }
    out
}

fn words(sentence: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut current = String::new();
    let mut chars = sentence.chars().peekable();
    while let Some(c) = chars.next() {
        if is_word_char(c) {
            current.extend(c.to_lowercase());
        } else if matches!(c, '\'' | '\u{2019}')
            && !current.is_empty()
            && chars.peek().is_some_and(|&n| is_word_char(n))
        {
            // keep word-internal apostrophes: don't, isn't
            current.push('\'');
        } else if !current.is_empty() {
            tokens.push(Token::new(std::mem::take(&mut current)));
        }
    }
    if !current.is_empty() {
        tokens.push(Token::new(current));
    }
    tokens
}

/// Rule-based sentence split and lowercased word tokenization. Sentences
/// without any word are dropped.
pub fn tokenize(text: &str) -> Vec<Vec<Token>> {
    split_sentences(text)
        .into_iter()
        .map(words)
        .filter(|s| !s.is_empty())
        .collect()
}

/// Tokenizes pre-annotated `word/TAG` text. A token whose word is terminal
/// punctuation (`./.`) or ends in it closes the sentence.
pub fn tokenize_tagged(text: &str) -> Vec<Vec<Token>> {
    let mut sentences = Vec::new();
    let mut current = Vec::new();
    for item in text.split_whitespace() {
        let (word, tag) = match item.rsplit_once('/') {
            Some((w, t)) if !w.is_empty() && !t.is_empty() => (w, Some(t)),
            _ => (item, None),
        };
        let closes = word.ends_with(is_terminal);
        let core = word.trim_matches(|c: char| !is_word_char(c) && c != '\'');
        if !core.is_empty() {
            current.push(Token {
                text: core.to_lowercase(),
                pos: tag.map(str::to_owned),
            });
        }
        if closes && !current.is_empty() {
            sentences.push(std::mem::take(&mut current));
        }
    }
    if !current.is_empty() {
        sentences.push(current);
    }
    sentences
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct SentenceScore {
    pub positive_matches: u32,
    pub negative_matches: u32,
    pub negated: bool,
    pub polarity: i8,
}

pub fn score_sentence(tokens: &[Token], lex: &Lexicon) -> SentenceScore {
    let mut pos = 0;
    let mut neg = 0;
    let mut negated = false;
    for tok in tokens {
        if lex.is_negation(&tok.text) {
            negated = true;
        }
        match lex.lookup(tok).map(|e| e.polarity) {
            Some(1) => pos += 1,
            Some(-1) => neg += 1,
            _ => {}
        }
    }
    let majority = (pos as i64 - neg as i64).signum() as i8;
    SentenceScore {
        positive_matches: pos,
        negative_matches: neg,
        negated,
        polarity: if negated { -majority } else { majority },
    }
}

fn score_sentences(sentences: &[Vec<Token>], lex: &Lexicon) -> f64 {
    if sentences.is_empty() {
        return 0.0;
    }
    let sum: i64 = sentences
        .iter()
        .map(|s| score_sentence(s, lex).polarity as i64)
        .sum();
    sum as f64 / sentences.len() as f64
}

/// Sum of sentence polarities over sentence count, in `[-1, 1]`.
pub fn score_document(text: &str, lex: &Lexicon) -> f64 {
    score_sentences(&tokenize(text), lex)
}

/// Drops everything from the first line containing `marker` onwards.
pub fn strip_quoted<'a>(text: &'a str, marker: &str) -> &'a str {
    let mut offset = 0;
    for line in text.split_inclusive('\n') {
        if line.contains(marker) {
            return &text[..offset];
        }
        offset += line.len();
    }
    text
}

/// Text scoring options around a lexicon.
#[derive(Clone, Debug)]
pub struct TextLabeler {
    pub lexicon: Lexicon,
    /// Quoted-thread marker; text below it is ignored. Off when `None`.
    pub strip_marker: Option<String>,
    /// Treat payloads as pre-annotated `word/TAG` text.
    pub tagged: bool,
}

impl TextLabeler {
    pub fn new(lexicon: Lexicon) -> Self {
        TextLabeler {
            lexicon,
            strip_marker: None,
            tagged: false,
        }
    }

    pub fn score(&self, text: &str) -> f64 {
        let text = match &self.strip_marker {
            Some(m) => strip_quoted(text, m),
            None => text,
        };
        let sentences = if self.tagged {
            tokenize_tagged(text)
        } else {
            tokenize(text)
        };
        score_sentences(&sentences, &self.lexicon)
    }

    /// Replaces every text payload by its score, keeping record order.
    /// Zero scores stay in the output for later neutral removal.
    pub fn label(&self, records: &[RawEdgeRecord]) -> Result<Vec<RawEdgeRecord>> {
        if let Some(index) = records
            .iter()
            .position(|r| !matches!(r.payload, Payload::Text(_)))
        {
            return Err(Error::PayloadKind {
                index,
                expected: "text",
            });
        }
        let one = |r: &RawEdgeRecord| {
            let Payload::Text(text) = &r.payload else { unreachable!() };
            RawEdgeRecord {
                source: r.source.clone(),
                target: r.target.clone(),
                payload: Payload::Score(self.score(text)),
                timestamp: r.timestamp,
            }
        };
        #[cfg(feature = "parallel")]
        let out = records.par_iter().map(one).collect();
        #[cfg(not(feature = "parallel"))]
        let out = records.iter().map(one).collect();
        Ok(out)
    }
}

pub fn label_text_edges(records: &[RawEdgeRecord], lex: &Lexicon) -> Result<Vec<RawEdgeRecord>> {
    TextLabeler::new(lex.clone()).label(records)
}

pub const DEFAULT_TRUST_THRESHOLD: i64 = 3;

/// Ratings at or above `threshold` become `+1` edges, the rest `-1`.
pub fn label_survey_edges(records: &[RawEdgeRecord], threshold: i64) -> Result<Vec<SignedEdge>> {
    records
        .iter()
        .enumerate()
        .map(|(index, r)| {
            let Payload::Rating(rating) = r.payload else {
                return Err(Error::PayloadKind {
                    index,
                    expected: "rating",
                });
            };
            if !(1..=5).contains(&rating) {
                return Err(Error::RatingOutOfRange { index, rating });
            }
            let weight = if rating >= threshold { 1.0 } else { -1.0 };
            let edge = SignedEdge::new(r.source.as_str(), r.target.as_str(), weight).unwrap();
            Ok(match r.timestamp {
                Some(t) => edge.with_timestamp(t),
                None => edge,
            })
        })
        .collect()
}
