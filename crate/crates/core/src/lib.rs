//! Lexicon-based sentiment analysis for Russian text.
//!
//! The crate provides two rule engines over lemmatized token streams:
//!
//! - [`engine::socal`]: a semantic-orientation calculator that averages
//!   lexicon weights adjusted by modifiers, negation shifts and irrealis
//!   blocking, then maps the single score to a label with two thresholds.
//! - [`engine::sentistrength`]: a dual-strength scorer that reports a
//!   positive and a negative strength in `1..=5` and maps the pair to a
//!   label with the `k_neut`/`k` rule.
//!
//! Around the engines sit lexicon preparation ([`lexicon`]: cleaning,
//! voting combination, statistics, marker lists), threshold fitting
//! ([`tuning`]), and evaluation ([`eval`]: corpus/prediction I/O, macro F1,
//! and the five-way agreement partition across three systems).
//!
//! ```
//! use lexsent::engine::socal::{classify_socal, SocalEngine, SocalThresholds};
//! use lexsent::lexicon::{Lexicon, MarkerLists};
//! use lexsent::text::tokenize_fallback;
//! use lexsent::SentimentLabel;
//!
//! let lexicon = Lexicon::build("toy", [("хорошо", 3.0)]);
//! let markers = MarkerLists::default();
//! let doc = tokenize_fallback("Очень хорошо!", "1");
//!
//! let score = SocalEngine::new(&lexicon, &markers).score(&doc);
//! assert_eq!(score.value, 3.0);
//!
//! let th = SocalThresholds::new(0.4, -1.1).unwrap();
//! assert_eq!(classify_socal(&score, &th), SentimentLabel::Positive);
//! ```

pub mod cli;
pub mod engine;
pub mod eval;
mod label;
pub mod lexicon;
pub mod text;
pub mod tuning;

pub use label::{ParseLabelError, SentimentLabel};
