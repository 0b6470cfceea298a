//! JSON-lines corpora and prediction files.
//!
//! Corpus lines: `{"id": "1", "text": "...", "label": "positive",
//! "annotated": "path/to/file.conll"}` with `label` and `annotated`
//! optional. Prediction lines: `{"id": "1", "label": "neutral"}`; extra
//! fields are ignored. Ids may be JSON strings or integers.

use std::collections::{HashMap, HashSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::EvalError;
use crate::engine::sentistrength::DualScore;
use crate::engine::socal::SocalScore;
use crate::SentimentLabel;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CorpusRecord {
    pub id: String,
    pub text: String,
    pub label: Option<SentimentLabel>,
    /// Annotated-token file holding this record's document.
    pub annotated: Option<String>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum LabelPolicy {
    /// Every record needs a gold label.
    Required,
    /// Unlabeled records are admitted (classification only).
    Optional,
}

#[derive(Deserialize)]
struct RawRecord {
    id: Value,
    #[serde(default)]
    text: Option<String>,
    #[serde(default)]
    label: Option<String>,
    #[serde(default)]
    annotated: Option<String>,
}

fn id_text(id: &Value, line: usize) -> Result<String, EvalError> {
    match id {
        Value::String(s) if !s.is_empty() => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        _ => Err(EvalError::Json {
            line,
            message: "`id` must be a non-empty string or a number".to_string(),
        }),
    }
}

fn parse_label(token: Option<&str>, line: usize) -> Result<Option<SentimentLabel>, EvalError> {
    token
        .map(|t| {
            t.parse().map_err(|_| EvalError::UnknownLabel {
                line,
                token: t.to_string(),
            })
        })
        .transpose()
}

fn json_lines(input: &str) -> impl Iterator<Item = (usize, &str)> {
    input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty())
}

pub fn load_corpus(input: &str, policy: LabelPolicy) -> Result<Vec<CorpusRecord>, EvalError> {
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for (line, text) in json_lines(input) {
        let raw: RawRecord = serde_json::from_str(text).map_err(|e| EvalError::Json {
            line,
            message: e.to_string(),
        })?;
        let id = id_text(&raw.id, line)?;
        if !seen.insert(id.clone()) {
            return Err(EvalError::DuplicateId { line, id });
        }
        let label = parse_label(raw.label.as_deref(), line)?;
        if label.is_none() && policy == LabelPolicy::Required {
            return Err(EvalError::MissingLabel { line, id });
        }
        out.push(CorpusRecord {
            id,
            text: raw.text.unwrap_or_default(),
            label,
            annotated: raw.annotated,
        });
    }
    Ok(out)
}

/// Engine-specific score attached to a prediction.
#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(untagged)]
pub enum ScoreDetail {
    Socal(SocalScore),
    Dual(DualScore),
}

#[derive(Debug, Clone, PartialEq)]
pub struct Prediction {
    pub doc_id: String,
    pub label: SentimentLabel,
    pub detail: Option<ScoreDetail>,
    pub system: String,
}

#[derive(Deserialize)]
struct RawPrediction {
    id: Value,
    label: Option<String>,
}

/// Loads predictions for exactly the ids in `corpus_ids`, returned in
/// corpus order.
pub fn load_predictions(
    input: &str,
    system: &str,
    corpus_ids: &[String],
) -> Result<Vec<Prediction>, EvalError> {
    let position: HashMap<&str, usize> = corpus_ids
        .iter()
        .enumerate()
        .map(|(i, id)| (id.as_str(), i))
        .collect();
    let mut slots: Vec<Option<SentimentLabel>> = vec![None; corpus_ids.len()];
    for (line, text) in json_lines(input) {
        let raw: RawPrediction = serde_json::from_str(text).map_err(|e| EvalError::Json {
            line,
            message: e.to_string(),
        })?;
        let id = id_text(&raw.id, line)?;
        let label =
            parse_label(raw.label.as_deref(), line)?.ok_or_else(|| EvalError::MissingLabel {
                line,
                id: id.clone(),
            })?;
        let &at = position
            .get(id.as_str())
            .ok_or_else(|| EvalError::UnknownId {
                line,
                id: id.clone(),
            })?;
        if slots[at].replace(label).is_some() {
            return Err(EvalError::DuplicateId { line, id });
        }
    }

    let missing: Vec<String> = slots
        .iter()
        .zip(corpus_ids)
        .filter(|(s, _)| s.is_none())
        .map(|(_, id)| id.clone())
        .collect();
    if !missing.is_empty() {
        return Err(EvalError::MissingIds(missing));
    }
    Ok(slots
        .into_iter()
        .zip(corpus_ids)
        .map(|(label, id)| Prediction {
            doc_id: id.clone(),
            label: label.expect("all slots filled"),
            detail: None,
            system: system.to_string(),
        })
        .collect())
}

#[derive(Serialize)]
struct PredictionLine<'a> {
    id: &'a str,
    label: SentimentLabel,
    #[serde(skip_serializing_if = "Option::is_none")]
    system: Option<&'a str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    score: Option<&'a ScoreDetail>,
}

/// One JSON line per prediction; `verbose` adds the system name and score
/// detail.
pub fn render_predictions(preds: &[Prediction], verbose: bool) -> String {
    let mut out = String::new();
    for p in preds {
        let line = PredictionLine {
            id: &p.doc_id,
            label: p.label,
            system: verbose.then_some(p.system.as_str()),
            score: if verbose { p.detail.as_ref() } else { None },
        };
        out.push_str(&serde_json::to_string(&line).expect("prediction lines serialize"));
        out.push('\n');
    }
    out
}
