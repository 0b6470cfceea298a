use std::fmt::Write as _;

use serde::Serialize;

use super::{fmt_score, ConfusionMatrix, CorpusRecord, EvalError, Prediction, ZeroDivision};
use crate::SentimentLabel;

/// How the labels of three systems (A, B, C) relate on one document.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AgreementPattern {
    /// A = B = C
    AllMatched,
    /// A = B ≠ C
    FirstSecond,
    /// C = A ≠ B
    ThirdFirst,
    /// C = B ≠ A
    ThirdSecond,
    /// A, B and C pairwise different
    NoneMatched,
}

impl AgreementPattern {
    pub const ALL: [AgreementPattern; 5] = [
        AgreementPattern::AllMatched,
        AgreementPattern::FirstSecond,
        AgreementPattern::ThirdFirst,
        AgreementPattern::ThirdSecond,
        AgreementPattern::NoneMatched,
    ];

    pub fn of(a: SentimentLabel, b: SentimentLabel, c: SentimentLabel) -> AgreementPattern {
        match (a == b, c == a, c == b) {
            (true, true, _) => AgreementPattern::AllMatched,
            (true, false, _) => AgreementPattern::FirstSecond,
            (false, true, _) => AgreementPattern::ThirdFirst,
            (false, false, true) => AgreementPattern::ThirdSecond,
            (false, false, false) => AgreementPattern::NoneMatched,
        }
    }

    fn index(self) -> usize {
        AgreementPattern::ALL
            .iter()
            .position(|&p| p == self)
            .expect("listed")
    }

    pub fn title(self, systems: &[String; 3]) -> String {
        let [a, b, c] = systems;
        match self {
            AgreementPattern::AllMatched => "All matched".to_string(),
            AgreementPattern::FirstSecond => format!("{b} & {a} matched"),
            AgreementPattern::ThirdFirst => format!("{c} & {a} matched"),
            AgreementPattern::ThirdSecond => format!("{c} & {b} matched"),
            AgreementPattern::NoneMatched => "All didn't match".to_string(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SystemF1 {
    pub system: String,
    pub macro_f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementSubset {
    pub pattern: AgreementPattern,
    pub title: String,
    pub size: usize,
    /// Share of the corpus, rounded to one decimal.
    pub percent: f64,
    /// Mean character length; absent for an empty subset.
    pub avg_length: Option<f64>,
    /// Macro F1 per system in input order; absent without gold labels or
    /// for an empty subset.
    pub f1: Option<Vec<SystemF1>>,
    /// Corpus positions of the members.
    #[serde(skip)]
    pub members: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct AgreementReport {
    pub systems: [String; 3],
    pub corpus_size: usize,
    pub gold_available: bool,
    pub subsets: Vec<AgreementSubset>,
}

impl AgreementReport {
    pub fn subset(&self, pattern: AgreementPattern) -> &AgreementSubset {
        &self.subsets[pattern.index()]
    }

    /// Columns: set, per-system F1 (third, second, first system), set size
    /// with percentage, average text length.
    pub fn to_tsv(&self) -> String {
        let [a, b, c] = &self.systems;
        let mut out = format!("Set\t{c}\t{b}\t{a}\tSet size\tAverage text length, sym.\n");
        for s in &self.subsets {
            let f1_cells: Vec<String> = match &s.f1 {
                Some(v) => [2, 1, 0]
                    .iter()
                    .map(|&i| fmt_score(v[i].macro_f1))
                    .collect(),
                None => vec!["—".to_string(); 3],
            };
            let len = s
                .avg_length
                .map(|l| format!("{}", l.round() as u64))
                .unwrap_or_else(|| "—".to_string());
            let _ = writeln!(
                out,
                "{}\t{}\t{} ({:.1}%)\t{}",
                s.title,
                f1_cells.join("\t"),
                s.size,
                s.percent,
                len
            );
        }
        out
    }
}

fn check_coverage(corpus: &[CorpusRecord], preds: &[Prediction]) -> Result<(), EvalError> {
    let aligned =
        preds.len() == corpus.len() && preds.iter().zip(corpus).all(|(p, r)| p.doc_id == r.id);
    if aligned {
        Ok(())
    } else {
        Err(EvalError::Coverage {
            system: preds.first().map(|p| p.system.clone()).unwrap_or_default(),
        })
    }
}

/// Splits the corpus into the five agreement subsets of three prediction
/// sets, each aligned with `corpus`.
///
/// F1 columns are computed only when every record has a gold label.
/// Systems that agree on a subset receive identical scores there.
pub fn agreement_partition(
    corpus: &[CorpusRecord],
    predictions: [&[Prediction]; 3],
    systems: [String; 3],
) -> Result<AgreementReport, EvalError> {
    for preds in predictions {
        check_coverage(corpus, preds)?;
    }
    let mut members: [Vec<usize>; 5] = Default::default();
    for i in 0..corpus.len() {
        let [a, b, c] = predictions.map(|p| p[i].label);
        members[AgreementPattern::of(a, b, c).index()].push(i);
    }

    let gold: Option<Vec<SentimentLabel>> = corpus.iter().map(|r| r.label).collect();
    let n = corpus.len();
    let subsets = AgreementPattern::ALL
        .iter()
        .zip(members)
        .map(|(&pattern, idx)| {
            let size = idx.len();
            let percent = if n == 0 {
                0.0
            } else {
                (size as f64 * 1000.0 / n as f64).round() / 10.0
            };
            let avg_length = (size > 0).then(|| {
                idx.iter()
                    .map(|&i| corpus[i].text.chars().count())
                    .sum::<usize>() as f64
                    / size as f64
            });
            let f1 = gold.as_ref().filter(|_| size > 0).map(|gold| {
                predictions
                    .iter()
                    .zip(&systems)
                    .map(|(preds, name)| {
                        let m = ConfusionMatrix::from_pairs(
                            idx.iter().map(|&i| (gold[i], preds[i].label)),
                        );
                        SystemF1 {
                            system: name.clone(),
                            macro_f1: m.macro_f1(ZeroDivision::Zero),
                        }
                    })
                    .collect()
            });
            AgreementSubset {
                pattern,
                title: pattern.title(&systems),
                size,
                percent,
                avg_length,
                f1,
                members: idx,
            }
        })
        .collect();

    Ok(AgreementReport {
        systems,
        corpus_size: n,
        gold_available: gold.is_some(),
        subsets,
    })
}
