//! Dual positive/negative strength scoring.
//!
//! Each match becomes an integer strength in `1..=5`: the rounded absolute
//! weight, moved one step per modifier in the preceding chain (up for
//! intensifiers, down for downtoners). A negation in the lookback window
//! flips the polarity the strength counts towards. Sentence and document
//! strengths are maxima per polarity, with 1 as the floor.

use serde::{Deserialize, Serialize};

use super::{find_matches, DEFAULT_LOOKBACK};
use crate::lexicon::{Lexicon, MarkerLists};
use crate::text::Document;
use crate::SentimentLabel;

pub const MIN_STRENGTH: u8 = 1;
pub const MAX_STRENGTH: u8 = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DualScore {
    pub s_pos: u8,
    /// Magnitude of the negative strength.
    pub s_neg: u8,
}

impl DualScore {
    pub const NEUTRAL: DualScore = DualScore { s_pos: 1, s_neg: 1 };

    /// `None` unless both components lie in `1..=5`.
    pub fn new(s_pos: u8, s_neg: u8) -> Option<DualScore> {
        let ok = |v: u8| (MIN_STRENGTH..=MAX_STRENGTH).contains(&v);
        (ok(s_pos) && ok(s_neg)).then_some(DualScore { s_pos, s_neg })
    }

    /// All 25 valid scores.
    pub fn all() -> impl Iterator<Item = DualScore> {
        (MIN_STRENGTH..=MAX_STRENGTH).flat_map(|p| {
            (MIN_STRENGTH..=MAX_STRENGTH).map(move |n| DualScore { s_pos: p, s_neg: n })
        })
    }

    pub fn swapped(self) -> DualScore {
        DualScore {
            s_pos: self.s_neg,
            s_neg: self.s_pos,
        }
    }
}

/// Whether the decision rule sees the scores shifted down by the baseline 1
/// (`Offset`, the default) or as reported (`Raw`).
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DecisionScale {
    #[default]
    Offset,
    Raw,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SentiStrengthThresholds {
    pub k_neut: f64,
    pub k: f64,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
#[error("invalid SentiStrength thresholds k_neut={k_neut}, k={k}: need k_neut >= 0 and k > 0")]
pub struct InvalidSentiStrengthThresholds {
    pub k_neut: f64,
    pub k: f64,
}

impl SentiStrengthThresholds {
    pub fn new(k_neut: f64, k: f64) -> Result<Self, InvalidSentiStrengthThresholds> {
        if k_neut.is_finite() && k.is_finite() && k_neut >= 0.0 && k > 0.0 {
            Ok(SentiStrengthThresholds { k_neut, k })
        } else {
            Err(InvalidSentiStrengthThresholds { k_neut, k })
        }
    }

    /// Neutral when both strengths are at most `k_neut`; otherwise positive
    /// if `s_pos > k * s_neg`, else negative.
    pub fn classify(&self, score: DualScore, scale: DecisionScale) -> SentimentLabel {
        let base = match scale {
            DecisionScale::Offset => 1.0,
            DecisionScale::Raw => 0.0,
        };
        let pos = f64::from(score.s_pos) - base;
        let neg = f64::from(score.s_neg) - base;
        if pos <= self.k_neut && neg <= self.k_neut {
            SentimentLabel::Neutral
        } else if pos > self.k * neg {
            SentimentLabel::Positive
        } else {
            SentimentLabel::Negative
        }
    }
}

pub fn classify_sentistrength(
    score: DualScore,
    th: &SentiStrengthThresholds,
    scale: DecisionScale,
) -> SentimentLabel {
    th.classify(score, scale)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SentiStrengthConfig {
    pub lookback: usize,
}

impl Default for SentiStrengthConfig {
    fn default() -> Self {
        SentiStrengthConfig {
            lookback: DEFAULT_LOOKBACK,
        }
    }
}

/// `round(|weight|)` clamped to `1..=5`, rounding halves away from zero.
pub fn weight_strength(weight: f64) -> i32 {
    (weight.abs().round() as i32).clamp(i32::from(MIN_STRENGTH), i32::from(MAX_STRENGTH))
}

#[derive(Debug, Clone, Copy)]
pub struct SentiStrengthEngine<'a> {
    lexicon: &'a Lexicon,
    markers: &'a MarkerLists,
    config: SentiStrengthConfig,
}

impl<'a> SentiStrengthEngine<'a> {
    pub fn new(lexicon: &'a Lexicon, markers: &'a MarkerLists) -> Self {
        SentiStrengthEngine {
            lexicon,
            markers,
            config: SentiStrengthConfig::default(),
        }
    }

    pub fn with_config(mut self, config: SentiStrengthConfig) -> Self {
        self.config = config;
        self
    }

    pub fn score(&self, doc: &Document) -> DualScore {
        let mut doc_score = DualScore::NEUTRAL;
        for sentence in doc.sentences() {
            let mut pos = MIN_STRENGTH;
            let mut neg = MIN_STRENGTH;
            let found = find_matches(sentence, self.lexicon, self.markers);
            for m in &found.matches {
                let steps: i32 = found
                    .modifier_chain(sentence, m.start, self.markers)
                    .iter()
                    .map(|&(_, delta)| {
                        if delta > 0.0 {
                            1
                        } else if delta < 0.0 {
                            -1
                        } else {
                            0
                        }
                    })
                    .sum();
                let strength = (weight_strength(m.entry.weight) + steps)
                    .clamp(i32::from(MIN_STRENGTH), i32::from(MAX_STRENGTH))
                    as u8;
                let negated = found
                    .negation(sentence, m.start, self.markers, self.config.lookback)
                    .is_some();
                if m.entry.is_positive() != negated {
                    pos = pos.max(strength);
                } else {
                    neg = neg.max(strength);
                }
            }
            doc_score.s_pos = doc_score.s_pos.max(pos);
            doc_score.s_neg = doc_score.s_neg.max(neg);
        }
        doc_score
    }
}

/// Scores with default configuration.
pub fn dual_score(doc: &Document, lexicon: &Lexicon, markers: &MarkerLists) -> DualScore {
    SentiStrengthEngine::new(lexicon, markers).score(doc)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::tokenize_fallback;
    use proptest::prelude::*;

    fn markers() -> MarkerLists {
        MarkerLists::from_texts("очень\t0.25\nслегка\t-0.5\n", "не\n", "").unwrap()
    }

    fn score(text: &str, lex: &Lexicon) -> DualScore {
        dual_score(&tokenize_fallback(text, "t"), lex, &markers())
    }

    #[test]
    fn single_negative_word() {
        let lex = Lexicon::build("t", [("ужасный", -4.0)]);
        assert_eq!(score("ужасный", &lex), DualScore { s_pos: 1, s_neg: 4 });
    }

    #[test]
    fn per_polarity_max() {
        let lex = Lexicon::build("t", [("хорошо", 2.0), ("плохо", -3.0)]);
        assert_eq!(
            score("хорошо плохо", &lex),
            DualScore { s_pos: 2, s_neg: 3 }
        );
    }

    #[test]
    fn negation_transfers_polarity() {
        let lex = Lexicon::build("t", [("плохо", -3.0)]);
        assert_eq!(score("не плохо", &lex), DualScore { s_pos: 3, s_neg: 1 });
    }

    #[test]
    fn modifiers_step_strength() {
        let lex = Lexicon::build("t", [("хорошо", 2.0), ("отлично", 5.0)]);
        assert_eq!(score("очень хорошо", &lex).s_pos, 3);
        assert_eq!(score("слегка хорошо", &lex).s_pos, 1);
        assert_eq!(score("очень отлично", &lex).s_pos, 5);
    }

    #[test]
    fn max_over_sentences() {
        let lex = Lexicon::build("t", [("хорошо", 2.0), ("отлично", 4.0), ("плохо", -3.0)]);
        assert_eq!(
            score("хорошо. отлично плохо. плохо", &lex),
            DualScore { s_pos: 4, s_neg: 3 }
        );
    }

    #[test]
    fn empty_document_is_neutral_baseline() {
        assert_eq!(score("", &Lexicon::empty("e")), DualScore::NEUTRAL);
    }

    #[test]
    fn strength_rounding() {
        assert_eq!(weight_strength(0.2), 1);
        assert_eq!(weight_strength(2.5), 3);
        assert_eq!(weight_strength(-2.5), 3);
        assert_eq!(weight_strength(2.49), 2);
        assert_eq!(weight_strength(-5.0), 5);
    }

    #[test]
    fn decision_rule_examples() {
        let th = SentiStrengthThresholds::new(0.6, 1.1).unwrap();
        let off = DecisionScale::Offset;
        assert_eq!(
            th.classify(DualScore::NEUTRAL, off),
            SentimentLabel::Neutral
        );
        assert_eq!(
            th.classify(DualScore { s_pos: 4, s_neg: 2 }, off),
            SentimentLabel::Positive
        );
        assert_eq!(
            th.classify(DualScore { s_pos: 2, s_neg: 5 }, off),
            SentimentLabel::Negative
        );
        // on the raw scale (1, 1) is no longer below k_neut = 0.6
        assert_eq!(
            th.classify(DualScore::NEUTRAL, DecisionScale::Raw),
            SentimentLabel::Negative
        );
    }

    #[test]
    fn thresholds_validated() {
        assert!(SentiStrengthThresholds::new(-0.1, 1.0).is_err());
        assert!(SentiStrengthThresholds::new(0.0, 0.0).is_err());
        assert!(SentiStrengthThresholds::new(0.0, 0.1).is_ok());
    }

    #[test]
    fn swap_symmetry_at_unit_k() {
        for k_neut in [0.0, 0.6, 1.5, 2.0, 3.5, 10.0] {
            let th = SentiStrengthThresholds::new(k_neut, 1.0).unwrap();
            for scale in [DecisionScale::Offset, DecisionScale::Raw] {
                for s in DualScore::all().filter(|s| s.s_pos != s.s_neg) {
                    assert_eq!(
                        th.classify(s.swapped(), scale),
                        th.classify(s, scale).mirrored()
                    );
                }
            }
        }
    }

    #[test]
    fn ties_follow_the_otherwise_branch() {
        // swapping a tie changes nothing, so a non-neutral tie stays negative
        let th = SentiStrengthThresholds::new(0.6, 1.0).unwrap();
        assert_eq!(
            th.classify(DualScore { s_pos: 3, s_neg: 3 }, DecisionScale::Offset),
            SentimentLabel::Negative
        );
    }

    #[test]
    fn monotone_in_positive_strength_when_k_at_most_one() {
        for k_neut in [0.0, 0.5, 1.0, 2.0, 4.0] {
            for k in [0.1, 0.5, 1.0] {
                let th = SentiStrengthThresholds::new(k_neut, k).unwrap();
                for neg in 1..=5 {
                    let labels: Vec<SentimentLabel> = (1..=5)
                        .map(|p| {
                            th.classify(
                                DualScore {
                                    s_pos: p,
                                    s_neg: neg,
                                },
                                DecisionScale::Offset,
                            )
                        })
                        .collect();
                    assert!(
                        labels.windows(2).all(|w| w[0] <= w[1]),
                        "{k_neut} {k} {labels:?}"
                    );
                }
            }
        }
    }

    #[test]
    fn large_k_can_move_neutral_to_negative() {
        // ŝ = (0, 2) is neutral under k_neut = 2; raising s_pos to ŝ = (3, 2)
        // leaves the neutral region but 3 > 2 * 2 fails
        let th = SentiStrengthThresholds::new(2.0, 2.0).unwrap();
        assert_eq!(
            th.classify(DualScore { s_pos: 1, s_neg: 3 }, DecisionScale::Offset),
            SentimentLabel::Neutral
        );
        assert_eq!(
            th.classify(DualScore { s_pos: 4, s_neg: 3 }, DecisionScale::Offset),
            SentimentLabel::Negative
        );
    }

    proptest! {
        #[test]
        fn components_stay_in_range(
            weights in prop::collection::vec(-5.0f64..=5.0, 1..6),
            picks in prop::collection::vec((0usize..10, any::<bool>(), any::<bool>()), 0..30),
        ) {
            let words = ["а", "б", "в", "г", "д", "е"];
            let pairs: Vec<(&str, f64)> = weights.iter().enumerate().map(|(i, w)| (words[i], *w)).collect();
            let lex = Lexicon::build("p", pairs);
            let all = ["а", "б", "в", "г", "д", "е", "очень", "слегка", "не", "."];
            let text: Vec<&str> = picks.iter().map(|(i, _, _)| all[*i]).collect();
            let s = score(&text.join(" "), &lex);
            prop_assert!(DualScore::new(s.s_pos, s.s_neg).is_some());
        }
    }
}
