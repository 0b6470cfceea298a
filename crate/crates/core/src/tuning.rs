//! Threshold fitting by exhaustive grid search on macro F1.
//!
//! Documents are scored once; every grid point is then evaluated against
//! the cached score table. Grid points are evaluated in parallel and the
//! winner is chosen with a fixed tie-break, so results do not depend on the
//! number of worker threads.

use std::cmp::Ordering;
use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering as AtomicOrdering};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::engine::sentistrength::{
    DecisionScale, DualScore, SentiStrengthEngine, SentiStrengthThresholds,
};
use crate::engine::socal::{SocalEngine, SocalThresholds};
use crate::eval::{ConfusionMatrix, ZeroDivision};
use crate::text::Document;
use crate::SentimentLabel;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum TuningError {
    #[error("training corpus is empty")]
    EmptyCorpus,
    #[error("{docs} documents but {labels} gold labels")]
    LengthMismatch { docs: usize, labels: usize },
    #[error("grid range for {0} has no points")]
    EmptyGrid(&'static str),
    #[error("invalid grid range {0:?} (expected START:END:STEP with STEP > 0)")]
    InvalidRange(String),
    #[error("no grid point satisfies the threshold constraints")]
    NoValidPair,
}

/// Inclusive `start..=end` range walked in `step` increments. Points are
/// rounded to nine decimals so that `0.1 * 3` lands on `0.3`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridRange {
    pub start: f64,
    pub end: f64,
    pub step: f64,
}

impl GridRange {
    pub const fn new(start: f64, end: f64, step: f64) -> GridRange {
        GridRange { start, end, step }
    }

    pub fn points(&self) -> Vec<f64> {
        if !(self.start.is_finite()
            && self.end.is_finite()
            && self.step.is_finite()
            && self.step > 0.0)
            || self.start > self.end
        {
            return Vec::new();
        }
        let count = ((self.end - self.start) / self.step + 1e-9).floor() as usize + 1;
        (0..count)
            .map(|i| ((self.start + i as f64 * self.step) * 1e9).round() / 1e9)
            .collect()
    }

    fn nonempty_points(&self, name: &'static str) -> Result<Vec<f64>, TuningError> {
        let p = self.points();
        if p.is_empty() {
            Err(TuningError::EmptyGrid(name))
        } else {
            Ok(p)
        }
    }
}

impl fmt::Display for GridRange {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}:{}", self.start, self.end, self.step)
    }
}

impl FromStr for GridRange {
    type Err = TuningError;

    /// `START:END:STEP`
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<f64> = s
            .split(':')
            .map(|p| p.trim().parse::<f64>())
            .collect::<Result<_, _>>()
            .map_err(|_| TuningError::InvalidRange(s.to_string()))?;
        match parts[..] {
            [start, end, step] if step > 0.0 && step.is_finite() => {
                Ok(GridRange { start, end, step })
            }
            _ => Err(TuningError::InvalidRange(s.to_string())),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SocalGrid {
    pub t_pos: GridRange,
    pub t_neg: GridRange,
}

impl Default for SocalGrid {
    fn default() -> Self {
        SocalGrid {
            t_pos: GridRange::new(0.0, 3.0, 0.1),
            t_neg: GridRange::new(-3.0, 0.0, 0.1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentiStrengthGrid {
    pub k_neut: GridRange,
    pub k: GridRange,
}

impl Default for SentiStrengthGrid {
    fn default() -> Self {
        SentiStrengthGrid {
            k_neut: GridRange::new(0.0, 3.0, 0.1),
            k: GridRange::new(0.1, 3.0, 0.1),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GridPoint<T> {
    #[serde(flatten)]
    pub thresholds: T,
    pub macro_f1: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TuningResult<T> {
    pub best: T,
    pub best_macro_f1: f64,
    /// Engine invocations made while building the score table.
    pub documents_scored: usize,
    pub trace: Vec<GridPoint<T>>,
}

fn check_labels(n: usize, gold: &[SentimentLabel]) -> Result<(), TuningError> {
    if n != gold.len() {
        return Err(TuningError::LengthMismatch {
            docs: n,
            labels: gold.len(),
        });
    }
    if n == 0 {
        return Err(TuningError::EmptyCorpus);
    }
    Ok(())
}

/// Evaluates every candidate and keeps the best one. `prefer(a, b)` returns
/// `Less` when `a` should win an F1 tie against `b`.
fn search<T, C, P>(
    candidates: Vec<T>,
    classify: C,
    gold: &[SentimentLabel],
    prefer: P,
) -> Result<(T, f64, Vec<GridPoint<T>>), TuningError>
where
    T: Copy + Send + Sync,
    C: Fn(&T, usize) -> SentimentLabel + Sync,
    P: Fn(&T, &T) -> Ordering,
{
    let trace: Vec<GridPoint<T>> = candidates
        .into_par_iter()
        .map(|th| {
            let m = ConfusionMatrix::from_pairs(
                gold.iter().enumerate().map(|(i, &g)| (g, classify(&th, i))),
            );
            GridPoint {
                thresholds: th,
                macro_f1: m.macro_f1(ZeroDivision::Zero),
            }
        })
        .collect();
    let best = trace
        .iter()
        .min_by(|a, b| {
            b.macro_f1
                .partial_cmp(&a.macro_f1)
                .unwrap_or(Ordering::Equal)
                .then_with(|| prefer(&a.thresholds, &b.thresholds))
        })
        .ok_or(TuningError::NoValidPair)?;
    Ok((best.thresholds, best.macro_f1, trace))
}

/// Fits `(t_pos, t_neg)` on precomputed scores. Only pairs with
/// `t_neg <= t_pos` are evaluated; ties go to the smallest `t_pos`, then the
/// largest `t_neg`.
pub fn fit_socal(
    scores: &[f64],
    gold: &[SentimentLabel],
    grid: &SocalGrid,
) -> Result<TuningResult<SocalThresholds>, TuningError> {
    check_labels(scores.len(), gold)?;
    let pos = grid.t_pos.nonempty_points("t_pos")?;
    let neg = grid.t_neg.nonempty_points("t_neg")?;
    let candidates: Vec<SocalThresholds> = pos
        .iter()
        .flat_map(|&p| {
            neg.iter()
                .filter_map(move |&n| SocalThresholds::new(p, n).ok())
        })
        .collect();
    let (best, best_macro_f1, trace) = search(
        candidates,
        |th, i| th.classify(scores[i]),
        gold,
        |a, b| {
            a.t_pos
                .partial_cmp(&b.t_pos)
                .unwrap_or(Ordering::Equal)
                .then_with(|| b.t_neg.partial_cmp(&a.t_neg).unwrap_or(Ordering::Equal))
        },
    )?;
    Ok(TuningResult {
        best,
        best_macro_f1,
        documents_scored: 0,
        trace,
    })
}

/// Fits `(k_neut, k)` on precomputed dual scores; ties go to the smallest
/// `k_neut`, then the smallest `k`.
pub fn fit_sentistrength(
    scores: &[DualScore],
    gold: &[SentimentLabel],
    grid: &SentiStrengthGrid,
    scale: DecisionScale,
) -> Result<TuningResult<SentiStrengthThresholds>, TuningError> {
    check_labels(scores.len(), gold)?;
    let kn = grid.k_neut.nonempty_points("k_neut")?;
    let k = grid.k.nonempty_points("k")?;
    let candidates: Vec<SentiStrengthThresholds> = kn
        .iter()
        .flat_map(|&a| {
            k.iter()
                .filter_map(move |&b| SentiStrengthThresholds::new(a, b).ok())
        })
        .collect();
    let (best, best_macro_f1, trace) = search(
        candidates,
        |th, i| th.classify(scores[i], scale),
        gold,
        |a, b| {
            a.k_neut
                .partial_cmp(&b.k_neut)
                .unwrap_or(Ordering::Equal)
                .then_with(|| a.k.partial_cmp(&b.k).unwrap_or(Ordering::Equal))
        },
    )?;
    Ok(TuningResult {
        best,
        best_macro_f1,
        documents_scored: 0,
        trace,
    })
}

fn score_all<S: Send, F: Fn(&Document) -> S + Sync>(
    docs: &[Document],
    score: F,
) -> (Vec<S>, usize) {
    let calls = AtomicUsize::new(0);
    let scores = docs
        .par_iter()
        .map(|d| {
            calls.fetch_add(1, AtomicOrdering::Relaxed);
            score(d)
        })
        .collect();
    (scores, calls.into_inner())
}

pub fn tune_socal(
    docs: &[Document],
    gold: &[SentimentLabel],
    engine: &SocalEngine<'_>,
    grid: &SocalGrid,
) -> Result<TuningResult<SocalThresholds>, TuningError> {
    check_labels(docs.len(), gold)?;
    let (scores, calls) = score_all(docs, |d| engine.score(d).value);
    let mut result = fit_socal(&scores, gold, grid)?;
    result.documents_scored = calls;
    Ok(result)
}

pub fn tune_sentistrength(
    docs: &[Document],
    gold: &[SentimentLabel],
    engine: &SentiStrengthEngine<'_>,
    grid: &SentiStrengthGrid,
    scale: DecisionScale,
) -> Result<TuningResult<SentiStrengthThresholds>, TuningError> {
    check_labels(docs.len(), gold)?;
    let (scores, calls) = score_all(docs, |d| engine.score(d));
    let mut result = fit_sentistrength(&scores, gold, grid, scale)?;
    result.documents_scored = calls;
    Ok(result)
}
