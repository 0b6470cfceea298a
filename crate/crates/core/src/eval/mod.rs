//! Corpus and prediction I/O, macro F1, and agreement analysis.

mod agreement;
mod corpus;
mod metrics;

pub use agreement::{
    agreement_partition, AgreementPattern, AgreementReport, AgreementSubset, SystemF1,
};
pub use corpus::{
    load_corpus, load_predictions, render_predictions, CorpusRecord, LabelPolicy, Prediction,
    ScoreDetail,
};
pub use metrics::{
    macro_f1, macro_f1_with, ClassMetrics, ConfusionMatrix, EvaluationReport, ZeroDivision,
};

pub use crate::SentimentLabel;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum EvalError {
    #[error("line {line}: {message}")]
    Json { line: usize, message: String },
    #[error("line {line}: duplicate id {id:?}")]
    DuplicateId { line: usize, id: String },
    #[error("line {line}: unknown label {token:?} (expected positive, negative or neutral)")]
    UnknownLabel { line: usize, token: String },
    #[error("line {line}: record {id:?} has no label")]
    MissingLabel { line: usize, id: String },
    #[error("line {line}: id {id:?} is not in the corpus")]
    UnknownId { line: usize, id: String },
    #[error("{} corpus ids have no prediction: {}", .0.len(), preview(.0))]
    MissingIds(Vec<String>),
    #[error("gold and predicted sequences differ in length ({gold} vs {pred})")]
    LengthMismatch { gold: usize, pred: usize },
    #[error("cannot evaluate an empty label sequence")]
    Empty,
    #[error("prediction set {system:?} does not cover the corpus in order")]
    Coverage { system: String },
}

fn preview(ids: &[String]) -> String {
    const SHOWN: usize = 20;
    let mut s = ids
        .iter()
        .take(SHOWN)
        .map(String::as_str)
        .collect::<Vec<_>>()
        .join(", ");
    if ids.len() > SHOWN {
        s.push_str(", …");
    }
    s
}

/// Four decimals, the precision reports use for scores.
pub(crate) fn fmt_score(v: f64) -> String {
    format!("{v:.4}")
}
