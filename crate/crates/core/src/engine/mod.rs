//! Rule engines and the lexicon matching they share.
//!
//! Both engines walk each sentence left to right, taking the longest
//! lexicon key that starts at the current token. Marker lemmas never start
//! a single-word match, though they may be part of a phrase. For each match
//! the engines look back for a contiguous modifier chain and for a negation
//! within a small window where modifiers do not count towards the window.

pub mod sentistrength;
pub mod socal;

use crate::lexicon::{Lexicon, LexiconEntry, MarkerLists};
use crate::text::Sentence;

/// Default negation lookback, in non-modifier tokens.
pub const DEFAULT_LOOKBACK: usize = 3;

#[derive(Debug, Clone, Copy)]
pub(crate) struct Match<'l> {
    pub start: usize,
    pub len: usize,
    pub entry: &'l LexiconEntry,
}

/// Lexicon matches of one sentence with the mask of consumed tokens.
pub(crate) struct SentenceMatches<'l> {
    pub matches: Vec<Match<'l>>,
    consumed: Vec<bool>,
}

pub(crate) fn find_matches<'l>(
    sentence: &Sentence,
    lexicon: &'l Lexicon,
    markers: &MarkerLists,
) -> SentenceMatches<'l> {
    let lemmas: Vec<&str> = sentence.tokens().iter().map(|t| t.lemma()).collect();
    let mut consumed = vec![false; lemmas.len()];
    let mut matches = Vec::new();
    let mut i = 0;
    while i < lemmas.len() {
        match lexicon.longest_match(&lemmas[i..]) {
            Some((1, _)) if markers.is_marker(lemmas[i]) => i += 1,
            Some((len, entry)) => {
                consumed[i..i + len].iter_mut().for_each(|c| *c = true);
                matches.push(Match {
                    start: i,
                    len,
                    entry,
                });
                i += len;
            }
            None => i += 1,
        }
    }
    SentenceMatches { matches, consumed }
}

impl SentenceMatches<'_> {
    /// Contiguous modifiers right before `start`, left to right.
    pub fn modifier_chain<'s>(
        &self,
        sentence: &'s Sentence,
        start: usize,
        markers: &MarkerLists,
    ) -> Vec<(&'s str, f64)> {
        let tokens = sentence.tokens();
        let mut chain = Vec::new();
        let mut j = start;
        while j > 0 {
            j -= 1;
            if self.consumed[j] {
                break;
            }
            match markers.modifier(tokens[j].lemma()) {
                Some(delta) => chain.push((tokens[j].lemma(), delta)),
                None => break,
            }
        }
        chain.reverse();
        chain
    }

    /// Closest negation among the `lookback` non-modifier tokens before
    /// `start`. Tokens consumed by other matches count towards the window
    /// but never negate.
    pub fn negation<'s>(
        &self,
        sentence: &'s Sentence,
        start: usize,
        markers: &MarkerLists,
        lookback: usize,
    ) -> Option<&'s str> {
        let tokens = sentence.tokens();
        let mut counted = 0;
        let mut j = start;
        while j > 0 && counted < lookback {
            j -= 1;
            let lemma = tokens[j].lemma();
            if !self.consumed[j] {
                if markers.modifier(lemma).is_some() {
                    continue;
                }
                if markers.is_negation(lemma) {
                    return Some(lemma);
                }
            }
            counted += 1;
        }
        None
    }
}

/// True when the sentence holds an irrealis marker or a question mark.
pub(crate) fn is_irrealis(sentence: &Sentence, markers: &MarkerLists) -> bool {
    sentence
        .tokens()
        .iter()
        .any(|t| t.is_question_mark() || markers.is_irrealis(t.lemma()))
}
