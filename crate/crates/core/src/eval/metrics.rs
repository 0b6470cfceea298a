use std::fmt::Write as _;

use serde::Serialize;

use super::{fmt_score, EvalError};
use crate::SentimentLabel;

/// Value given to a `0/0` precision, recall or F1.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ZeroDivision {
    #[default]
    Zero,
    One,
}

impl ZeroDivision {
    fn ratio(self, num: f64, den: f64) -> f64 {
        if den == 0.0 {
            match self {
                ZeroDivision::Zero => 0.0,
                ZeroDivision::One => 1.0,
            }
        } else {
            num / den
        }
    }
}

/// Counts indexed `[gold][predicted]` in [`SentimentLabel::ALL`] order.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ConfusionMatrix {
    counts: [[usize; 3]; 3],
}

impl ConfusionMatrix {
    pub fn from_pairs(pairs: impl IntoIterator<Item = (SentimentLabel, SentimentLabel)>) -> Self {
        let mut m = ConfusionMatrix::default();
        for (g, p) in pairs {
            m.add(g, p);
        }
        m
    }

    pub fn add(&mut self, gold: SentimentLabel, pred: SentimentLabel) {
        self.counts[gold.index()][pred.index()] += 1;
    }

    pub fn count(&self, gold: SentimentLabel, pred: SentimentLabel) -> usize {
        self.counts[gold.index()][pred.index()]
    }

    pub fn total(&self) -> usize {
        self.counts.iter().flatten().sum()
    }

    pub fn class_metrics(&self, label: SentimentLabel, zero: ZeroDivision) -> ClassMetrics {
        let i = label.index();
        let tp = self.counts[i][i] as f64;
        let predicted: usize = (0..3).map(|g| self.counts[g][i]).sum();
        let support: usize = self.counts[i].iter().sum();
        let precision = zero.ratio(tp, predicted as f64);
        let recall = zero.ratio(tp, support as f64);
        let f1 = zero.ratio(2.0 * precision * recall, precision + recall);
        ClassMetrics {
            class: label,
            precision,
            recall,
            f1,
            support,
        }
    }

    /// Unweighted mean of the three per-class F1 values.
    pub fn macro_f1(&self, zero: ZeroDivision) -> f64 {
        SentimentLabel::ALL
            .iter()
            .map(|&l| self.class_metrics(l, zero).f1)
            .sum::<f64>()
            / 3.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ClassMetrics {
    pub class: SentimentLabel,
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
    pub support: usize,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EvaluationReport {
    pub system: String,
    /// Positive, negative, neutral.
    pub classes: Vec<ClassMetrics>,
    pub macro_f1: f64,
    pub corpus_size: usize,
}

impl EvaluationReport {
    pub fn from_matrix(
        system: &str,
        matrix: &ConfusionMatrix,
        zero: ZeroDivision,
    ) -> EvaluationReport {
        let classes: Vec<ClassMetrics> = SentimentLabel::ALL
            .iter()
            .map(|&l| matrix.class_metrics(l, zero))
            .collect();
        let macro_f1 = classes.iter().map(|c| c.f1).sum::<f64>() / 3.0;
        EvaluationReport {
            system: system.to_string(),
            classes,
            macro_f1,
            corpus_size: matrix.total(),
        }
    }

    pub fn class(&self, label: SentimentLabel) -> &ClassMetrics {
        &self.classes[label.index()]
    }

    /// `system, class, precision, recall, F1` rows followed by the macro
    /// row.
    pub fn to_tsv(&self) -> String {
        let mut out = String::from("system\tclass\tprecision\trecall\tF1\n");
        for c in &self.classes {
            let _ = writeln!(
                out,
                "{}\t{}\t{}\t{}\t{}",
                self.system,
                c.class,
                fmt_score(c.precision),
                fmt_score(c.recall),
                fmt_score(c.f1)
            );
        }
        let _ = writeln!(
            out,
            "{}\tmacro\t\t\t{}",
            self.system,
            fmt_score(self.macro_f1)
        );
        out
    }
}

/// Macro F1 with `0/0 := 0`.
pub fn macro_f1(
    gold: &[SentimentLabel],
    pred: &[SentimentLabel],
) -> Result<EvaluationReport, EvalError> {
    macro_f1_with(gold, pred, ZeroDivision::Zero)
}

pub fn macro_f1_with(
    gold: &[SentimentLabel],
    pred: &[SentimentLabel],
    zero: ZeroDivision,
) -> Result<EvaluationReport, EvalError> {
    if gold.len() != pred.len() {
        return Err(EvalError::LengthMismatch {
            gold: gold.len(),
            pred: pred.len(),
        });
    }
    if gold.is_empty() {
        return Err(EvalError::Empty);
    }
    let m = ConfusionMatrix::from_pairs(gold.iter().copied().zip(pred.iter().copied()));
    Ok(EvaluationReport::from_matrix("", &m, zero))
}
