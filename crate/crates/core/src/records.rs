//! Raw edge records and the file formats that carry them.
//!
//! * signed edgelist: CSV `source,target,weight[,t]`, `#` comment lines
//! * message records: JSON lines with one of `text`, `rating` or `weight`,
//!   plus optional ordinal `t`
//! * alias map: TSV `alias<TAB>canonical`

use std::collections::HashMap;
use std::io::{BufRead, Read, Write};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::SignedEdge;

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Payload {
    Score(f64),
    Rating(i64),
    Text(String),
}

impl Payload {
    pub fn kind(&self) -> &'static str {
        match self {
            Payload::Score(_) => "numeric",
            Payload::Rating(_) => "rating",
            Payload::Text(_) => "text",
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct RawEdgeRecord {
    pub source: String,
    pub target: String,
    pub payload: Payload,
    pub timestamp: Option<u64>,
}

impl RawEdgeRecord {
    pub fn new(source: impl Into<String>, target: impl Into<String>, payload: Payload) -> Self {
        RawEdgeRecord {
            source: source.into(),
            target: target.into(),
            payload,
            timestamp: None,
        }
    }

    pub fn score(source: impl Into<String>, target: impl Into<String>, score: f64) -> Self {
        Self::new(source, target, Payload::Score(score))
    }

    pub fn with_timestamp(mut self, t: u64) -> Self {
        self.timestamp = Some(t);
        self
    }
}

/// Drops zero-score records and converts the rest into signed edges.
pub fn drop_neutral(records: &[RawEdgeRecord]) -> Result<Vec<SignedEdge>> {
    let mut edges = Vec::with_capacity(records.len());
    for (index, rec) in records.iter().enumerate() {
        let Payload::Score(score) = rec.payload else {
            return Err(Error::PayloadKind {
                index,
                expected: "numeric",
            });
        };
        if !score.is_finite() {
            return Err(Error::MalformedRecord {
                index,
                reason: format!("non-finite score {score}"),
            });
        }
        if let Some(edge) = SignedEdge::new(rec.source.as_str(), rec.target.as_str(), score) {
            edges.push(match rec.timestamp {
                Some(t) => edge.with_timestamp(t),
                None => edge,
            });
        }
    }
    Ok(edges)
}

#[derive(Debug, Deserialize)]
struct EdgeRow {
    source: String,
    target: String,
    weight: f64,
    #[serde(default)]
    t: Option<u64>,
}

fn csv_error(err: csv::Error) -> Error {
    match err.position() {
        Some(pos) => Error::MalformedLine {
            line: pos.line(),
            reason: err.to_string(),
        },
        None => Error::Csv(err),
    }
}

/// Reads a signed edgelist. Zero weights are kept; see [`drop_neutral`].
pub fn read_edgelist<R: Read>(reader: R) -> Result<Vec<RawEdgeRecord>> {
    let mut rdr = csv::ReaderBuilder::new()
        .comment(Some(b'#'))
        .trim(csv::Trim::All)
        .from_reader(reader);
    let headers = rdr.headers().map_err(csv_error)?.clone();
    let names: Vec<&str> = headers.iter().collect();
    if names.len() < 3 || names[..3] != ["source", "target", "weight"] {
        return Err(Error::MalformedLine {
            line: 1,
            reason: format!("expected header `source,target,weight`, found `{}`", names.join(",")),
        });
    }
    let mut records = Vec::new();
    for row in rdr.deserialize::<EdgeRow>() {
        let row = row.map_err(csv_error)?;
        records.push(RawEdgeRecord {
            source: row.source,
            target: row.target,
            payload: Payload::Score(row.weight),
            timestamp: row.t,
        });
    }
    Ok(records)
}

/// Writes numeric records as a signed edgelist. The `t` column appears only
/// when some record carries a timestamp.
pub fn write_edgelist<W: Write>(writer: W, records: &[RawEdgeRecord]) -> Result<()> {
    let with_t = records.iter().any(|r| r.timestamp.is_some());
    let mut wtr = csv::Writer::from_writer(writer);
    if with_t {
        wtr.write_record(["source", "target", "weight", "t"])?;
    } else {
        wtr.write_record(["source", "target", "weight"])?;
    }
    for (index, rec) in records.iter().enumerate() {
        let Payload::Score(w) = rec.payload else {
            return Err(Error::PayloadKind {
                index,
                expected: "numeric",
            });
        };
        let w = w.to_string();
        if with_t {
            let t = rec.timestamp.map(|t| t.to_string()).unwrap_or_default();
            wtr.write_record([rec.source.as_str(), rec.target.as_str(), w.as_str(), t.as_str()])?;
        } else {
            wtr.write_record([rec.source.as_str(), rec.target.as_str(), w.as_str()])?;
        }
    }
    wtr.flush()?;
    Ok(())
}

#[derive(Debug, Deserialize, Serialize)]
struct JsonRecord {
    source: String,
    target: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    text: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    rating: Option<i64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    weight: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    t: Option<u64>,
}

/// Reads JSON-lines records. Blank lines are skipped; every record must
/// carry the same payload kind.
pub fn read_jsonl<R: BufRead>(reader: R) -> Result<Vec<RawEdgeRecord>> {
    let mut records: Vec<RawEdgeRecord> = Vec::new();
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        let lineno = i as u64 + 1;
        if line.trim().is_empty() {
            continue;
        }
        let bad = |reason: String| Error::MalformedLine {
            line: lineno,
            reason,
        };
        let rec: JsonRecord = serde_json::from_str(&line).map_err(|e| bad(e.to_string()))?;
        let payload = match (rec.text, rec.rating, rec.weight) {
            (Some(text), None, None) => Payload::Text(text),
            (None, Some(rating), None) => Payload::Rating(rating),
            (None, None, Some(weight)) => Payload::Score(weight),
            _ => {
                return Err(bad(
                    "record needs exactly one of `text`, `rating`, `weight`".into(),
                ))
            }
        };
        if let Some(first) = records.first() {
            if first.payload.kind() != payload.kind() {
                return Err(bad(format!(
                    "{} payload in a {} record stream",
                    payload.kind(),
                    first.payload.kind()
                )));
            }
        }
        records.push(RawEdgeRecord {
            source: rec.source,
            target: rec.target,
            payload,
            timestamp: rec.t,
        });
    }
    Ok(records)
}

pub fn write_jsonl<W: Write>(mut writer: W, records: &[RawEdgeRecord]) -> Result<()> {
    for rec in records {
        let mut json = JsonRecord {
            source: rec.source.clone(),
            target: rec.target.clone(),
            text: None,
            rating: None,
            weight: None,
            t: rec.timestamp,
        };
        match &rec.payload {
            Payload::Text(s) => json.text = Some(s.clone()),
            Payload::Rating(r) => json.rating = Some(*r),
            Payload::Score(w) => json.weight = Some(*w),
        }
        serde_json::to_writer(&mut writer, &json)?;
        writer.write_all(b"\n")?;
    }
    Ok(())
}

/// Maps alternative node ids onto a canonical id.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AliasMap {
    map: HashMap<String, String>,
}

impl AliasMap {
    pub fn from_tsv<R: BufRead>(reader: R) -> Result<Self> {
        let mut map = HashMap::new();
        for (i, line) in reader.lines().enumerate() {
            let line = line?;
            let trimmed = line.trim_end_matches(['\r', '\n']);
            if trimmed.trim().is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let mut cols = trimmed.split('\t');
            match (cols.next(), cols.next(), cols.next()) {
                (Some(alias), Some(canonical), None)
                    if !alias.trim().is_empty() && !canonical.trim().is_empty() =>
                {
                    map.insert(alias.trim().to_owned(), canonical.trim().to_owned());
                }
                _ => {
                    return Err(Error::MalformedLine {
                        line: i as u64 + 1,
                        reason: "expected `alias<TAB>canonical`".into(),
                    })
                }
            }
        }
        Ok(AliasMap { map })
    }

    pub fn insert(&mut self, alias: impl Into<String>, canonical: impl Into<String>) {
        self.map.insert(alias.into(), canonical.into());
    }

    pub fn resolve<'a>(&'a self, id: &'a str) -> &'a str {
        self.map.get(id).map(String::as_str).unwrap_or(id)
    }

    pub fn apply(&self, records: &mut [RawEdgeRecord]) {
        for rec in records {
            if let Some(c) = self.map.get(&rec.source) {
                rec.source = c.clone();
            }
            if let Some(c) = self.map.get(&rec.target) {
                rec.target = c.clone();
            }
        }
    }

    pub fn len(&self) -> usize {
        self.map.len()
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }
}
