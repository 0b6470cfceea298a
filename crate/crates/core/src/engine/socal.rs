//! Semantic-orientation scoring.
//!
//! Each lexicon match contributes its weight, scaled by the preceding
//! modifier chain and shifted towards the opposite polarity when negated.
//! Sentences with an irrealis marker or a question mark, and quoted tokens,
//! contribute nothing. With part-of-speech information available only
//! content words (noun, adjective, verb, adverb) count for single-word keys.
//! The document score is the mean of all contributions.

use serde::{Deserialize, Serialize};

use super::{find_matches, is_irrealis, DEFAULT_LOOKBACK};
use crate::lexicon::{Lexicon, MarkerLists, MAX_WEIGHT};
use crate::text::Document;
use crate::SentimentLabel;

/// Default negation shift.
pub const DEFAULT_NEGATION_SHIFT: f64 = 4.0;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SocalConfig {
    pub negation_shift: f64,
    pub lookback: usize,
}

impl Default for SocalConfig {
    fn default() -> Self {
        SocalConfig {
            negation_shift: DEFAULT_NEGATION_SHIFT,
            lookback: DEFAULT_LOOKBACK,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum AppliedRule {
    Modifier { lemma: String, delta: f64 },
    Negation { lemma: String, shift: f64 },
    Clamp { from: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Contribution {
    pub sentence: usize,
    pub token: usize,
    pub key: String,
    pub base_weight: f64,
    pub adjusted_weight: f64,
    pub rules: Vec<AppliedRule>,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct SocalScore {
    pub value: f64,
    pub contributions: Vec<Contribution>,
}

impl SocalScore {
    /// Mean of the adjusted weights, 0 without contributions.
    pub fn from_contributions(contributions: Vec<Contribution>) -> SocalScore {
        let value = if contributions.is_empty() {
            0.0
        } else {
            contributions.iter().map(|c| c.adjusted_weight).sum::<f64>()
                / contributions.len() as f64
        };
        SocalScore {
            value,
            contributions,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SocalThresholds {
    pub t_pos: f64,
    pub t_neg: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid SO-CAL thresholds t_pos={t_pos}, t_neg={t_neg}: need finite values with t_neg <= t_pos")]
pub struct InvalidSocalThresholds {
    pub t_pos: f64,
    pub t_neg: f64,
}

impl SocalThresholds {
    pub fn new(t_pos: f64, t_neg: f64) -> Result<SocalThresholds, InvalidSocalThresholds> {
        if t_pos.is_finite() && t_neg.is_finite() && t_neg <= t_pos {
            Ok(SocalThresholds { t_pos, t_neg })
        } else {
            Err(InvalidSocalThresholds { t_pos, t_neg })
        }
    }

    /// `s >= t_pos` is positive, `s <= t_neg` negative, anything strictly
    /// between neutral. When `t_pos == t_neg == s` the positive case wins.
    pub fn classify(&self, s: f64) -> SentimentLabel {
        if s >= self.t_pos {
            SentimentLabel::Positive
        } else if s <= self.t_neg {
            SentimentLabel::Negative
        } else {
            SentimentLabel::Neutral
        }
    }
}

pub fn classify_socal(score: &SocalScore, th: &SocalThresholds) -> SentimentLabel {
    th.classify(score.value)
}

#[derive(Debug, Clone, Copy)]
pub struct SocalEngine<'a> {
    lexicon: &'a Lexicon,
    markers: &'a MarkerLists,
    config: SocalConfig,
}

impl<'a> SocalEngine<'a> {
    pub fn new(lexicon: &'a Lexicon, markers: &'a MarkerLists) -> Self {
        SocalEngine {
            lexicon,
            markers,
            config: SocalConfig::default(),
        }
    }

    pub fn with_config(mut self, config: SocalConfig) -> Self {
        self.config = config;
        self
    }

    pub fn config(&self) -> &SocalConfig {
        &self.config
    }

    pub fn score(&self, doc: &Document) -> SocalScore {
        let mut contributions = Vec::new();
        for (si, sentence) in doc.sentences().iter().enumerate() {
            if is_irrealis(sentence, self.markers) {
                continue;
            }
            let tokens = sentence.tokens();
            let found = find_matches(sentence, self.lexicon, self.markers);
            for m in &found.matches {
                let span = &tokens[m.start..m.start + m.len];
                if span.iter().any(|t| t.in_quotes()) {
                    continue;
                }
                if doc.pos_available() && !m.entry.is_phrase() {
                    let pos = span[0].pos();
                    if !pos.is_content() || m.entry.pos.is_some_and(|p| p != pos) {
                        continue;
                    }
                }

                let base = m.entry.weight;
                let mut weight = base;
                let mut rules = Vec::new();
                for (lemma, delta) in found.modifier_chain(sentence, m.start, self.markers) {
                    weight *= 1.0 + delta;
                    rules.push(AppliedRule::Modifier {
                        lemma: lemma.to_string(),
                        delta,
                    });
                }
                if let Some(lemma) =
                    found.negation(sentence, m.start, self.markers, self.config.lookback)
                {
                    let shift = self.config.negation_shift;
                    weight = if weight > 0.0 {
                        weight - shift
                    } else {
                        weight + shift
                    };
                    rules.push(AppliedRule::Negation {
                        lemma: lemma.to_string(),
                        shift,
                    });
                }
                if weight.abs() > MAX_WEIGHT {
                    rules.push(AppliedRule::Clamp { from: weight });
                    weight = weight.clamp(-MAX_WEIGHT, MAX_WEIGHT);
                }
                contributions.push(Contribution {
                    sentence: si,
                    token: m.start,
                    key: m.entry.key_text(),
                    base_weight: base,
                    adjusted_weight: weight,
                    rules,
                });
            }
        }
        SocalScore::from_contributions(contributions)
    }
}

/// Scores with default configuration.
pub fn score_document(doc: &Document, lexicon: &Lexicon, markers: &MarkerLists) -> SocalScore {
    SocalEngine::new(lexicon, markers).score(doc)
}
