//! Canonical token streams.
//!
//! Both engines consume [`Document`]s: sentences of lemmatized tokens with a
//! coarse part of speech. Documents come either from a pre-annotated
//! CoNLL-style stream ([`parse_annotated`]) or from plain text through the
//! naive [`tokenize_fallback`], which knows nothing about parts of speech.
//!
//! Annotated format, one token per line:
//!
//! ```text
//! # doc = 17
//! # text = Хороший фильм.
//! Хороший	хороший	ADJ
//! фильм	фильм	NOUN
//! .	.	PUNCT
//!
//! ```
//!
//! Columns are `FORM LEMMA UPOS` separated by tabs; full 10-column CoNLL-U
//! lines are accepted too (multiword ranges and empty nodes are skipped).
//! A blank line ends a sentence. Several `# text` lines are joined with a
//! newline; without any, the raw text is the space-join of the surfaces.

use std::collections::HashSet;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};
use unicode_segmentation::UnicodeSegmentation;

/// Coarse part of speech. Anything outside the four content classes is
/// `Other`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "UPPERCASE")]
pub enum Pos {
    Noun,
    Adj,
    Verb,
    Adv,
    Other,
}

impl Pos {
    /// Maps a universal POS tag. Unknown tags become `Other`.
    pub fn from_upos(tag: &str) -> Pos {
        match tag.trim().to_ascii_uppercase().as_str() {
            "NOUN" => Pos::Noun,
            "ADJ" => Pos::Adj,
            "VERB" => Pos::Verb,
            "ADV" => Pos::Adv,
            _ => Pos::Other,
        }
    }

    pub fn is_content(self) -> bool {
        !matches!(self, Pos::Other)
    }

    pub fn as_upos(self) -> &'static str {
        match self {
            Pos::Noun => "NOUN",
            Pos::Adj => "ADJ",
            Pos::Verb => "VERB",
            Pos::Adv => "ADV",
            Pos::Other => "X",
        }
    }
}

/// Lowercases and folds `ё` to `е`, including the decomposed
/// `е` + combining diaeresis spelling.
pub fn fold_lemma(s: &str) -> String {
    let lower = s.to_lowercase();
    let mut out = String::with_capacity(lower.len());
    let mut chars = lower.chars().peekable();
    while let Some(c) = chars.next() {
        match c {
            'ё' => out.push('е'),
            'е' => {
                out.push('е');
                while chars.peek() == Some(&'\u{308}') {
                    chars.next();
                }
            }
            _ => out.push(c),
        }
    }
    out
}

fn is_question_surface(surface: &str) -> bool {
    surface.chars().any(|c| c == '?' || c == '？')
        && surface
            .chars()
            .all(|c| !c.is_alphanumeric() && !c.is_whitespace())
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Quote {
    Straight,
    OpenGuillemet,
    CloseGuillemet,
    OpenCurly,
    CloseCurly,
}

fn quote_kind(surface: &str) -> Option<Quote> {
    match surface {
        "\"" => Some(Quote::Straight),
        "«" => Some(Quote::OpenGuillemet),
        "»" => Some(Quote::CloseGuillemet),
        "“" => Some(Quote::OpenCurly),
        "”" => Some(Quote::CloseCurly),
        _ => None,
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Token {
    surface: String,
    lemma: String,
    pos: Pos,
    is_question_mark: bool,
    in_quotes: bool,
}

impl Token {
    /// Builds a token, folding the lemma. An empty lemma falls back to the
    /// folded surface. Question-mark tokens are forced to `Pos::Other`.
    ///
    /// Returns `None` when both surface and lemma are empty.
    pub fn new(surface: &str, lemma: &str, pos: Pos) -> Option<Token> {
        let mut folded = fold_lemma(lemma);
        if folded.is_empty() {
            folded = fold_lemma(surface);
        }
        if folded.is_empty() {
            return None;
        }
        let is_question_mark = is_question_surface(surface);
        Some(Token {
            surface: surface.to_string(),
            lemma: folded,
            pos: if is_question_mark { Pos::Other } else { pos },
            is_question_mark,
            in_quotes: false,
        })
    }

    pub fn surface(&self) -> &str {
        &self.surface
    }

    pub fn lemma(&self) -> &str {
        &self.lemma
    }

    pub fn pos(&self) -> Pos {
        self.pos
    }

    pub fn is_question_mark(&self) -> bool {
        self.is_question_mark
    }

    pub fn in_quotes(&self) -> bool {
        self.in_quotes
    }
}

/// Non-empty run of tokens; the scope of irrealis blocking and of
/// per-sentence strength aggregation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Sentence {
    tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(tokens: Vec<Token>) -> Option<Sentence> {
        if tokens.is_empty() {
            None
        } else {
            Some(Sentence { tokens })
        }
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        self.tokens.is_empty()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Document {
    id: String,
    sentences: Vec<Sentence>,
    raw_text: String,
    char_length: usize,
    pos_available: bool,
}

impl Document {
    /// Quote spans are marked across the whole document.
    pub fn new(
        id: impl Into<String>,
        mut sentences: Vec<Sentence>,
        raw_text: impl Into<String>,
        pos_available: bool,
    ) -> Document {
        mark_quotes(&mut sentences);
        let raw_text = raw_text.into();
        Document {
            id: id.into(),
            char_length: raw_text.chars().count(),
            sentences,
            raw_text,
            pos_available,
        }
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn sentences(&self) -> &[Sentence] {
        &self.sentences
    }

    pub fn raw_text(&self) -> &str {
        &self.raw_text
    }

    /// Characters (not bytes) of the raw text.
    pub fn char_length(&self) -> usize {
        self.char_length
    }

    /// False for documents produced without morphological annotation.
    pub fn pos_available(&self) -> bool {
        self.pos_available
    }

    pub fn token_count(&self) -> usize {
        self.sentences.iter().map(Sentence::len).sum()
    }

    /// Replaces the raw text, keeping tokens as they are.
    pub fn with_raw_text(mut self, raw_text: impl Into<String>) -> Document {
        self.raw_text = raw_text.into();
        self.char_length = self.raw_text.chars().count();
        self
    }

    pub fn with_id(mut self, id: impl Into<String>) -> Document {
        self.id = id.into();
        self
    }
}

/// Marks tokens strictly between paired quotes. Unpaired quotes mark
/// nothing. Guillemets and curly quotes nest; a straight quote closes an
/// open straight quote and opens one otherwise.
fn mark_quotes(sentences: &mut [Sentence]) {
    let positions: Vec<(usize, usize, Quote)> = sentences
        .iter()
        .enumerate()
        .flat_map(|(s, sent)| {
            sent.tokens
                .iter()
                .enumerate()
                .filter_map(move |(t, tok)| quote_kind(&tok.surface).map(|q| (s, t, q)))
        })
        .collect();
    if positions.is_empty() {
        return;
    }

    let mut stack: Vec<(usize, usize, Quote)> = Vec::new();
    let mut spans = Vec::new();
    for (s, t, q) in positions {
        let opener = match q {
            Quote::Straight => {
                if stack.last().map(|o| o.2) == Some(Quote::Straight) {
                    Some(Quote::Straight)
                } else {
                    stack.push((s, t, q));
                    None
                }
            }
            Quote::OpenGuillemet | Quote::OpenCurly => {
                stack.push((s, t, q));
                None
            }
            Quote::CloseGuillemet => Some(Quote::OpenGuillemet),
            Quote::CloseCurly => Some(Quote::OpenCurly),
        };
        if let Some(want) = opener {
            if let Some(i) = stack.iter().rposition(|o| o.2 == want) {
                let open = stack[i];
                stack.truncate(i);
                spans.push(((open.0, open.1), (s, t)));
            }
        }
    }

    for (start, end) in spans {
        for (s, sent) in sentences.iter_mut().enumerate() {
            if s < start.0 || s > end.0 {
                continue;
            }
            for (t, tok) in sent.tokens.iter_mut().enumerate() {
                if (s, t) > start && (s, t) < end {
                    tok.in_quotes = true;
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum AnnotatedError {
    #[error("line {line}: expected 3 or 10 tab-separated columns, found {found}")]
    Columns { line: usize, found: usize },
    #[error("line {line}: empty FORM column")]
    EmptyForm { line: usize },
    #[error("line {line}: token outside a document block (missing `# doc = <id>`)")]
    OutsideDocument { line: usize },
    #[error("line {line}: document {id:?} has no tokens")]
    EmptyDocument { line: usize, id: String },
    #[error("line {line}: empty document id")]
    EmptyId { line: usize },
    #[error("line {line}: duplicate document id {id:?}")]
    DuplicateId { line: usize, id: String },
}

/// Value of a `key = value` comment, with one space after `=` stripped.
fn comment_value<'a>(comment: &'a str, key: &str) -> Option<&'a str> {
    let rest = comment.strip_prefix(key)?;
    let rest = rest.trim_start_matches([' ', '\t']);
    let rest = rest.strip_prefix('=')?;
    Some(rest.strip_prefix(' ').unwrap_or(rest))
}

struct PendingDoc {
    id: String,
    start_line: usize,
    text: Option<String>,
    sentences: Vec<Sentence>,
    current: Vec<Token>,
    pos_seen: bool,
}

impl PendingDoc {
    fn end_sentence(&mut self) {
        if let Some(s) = Sentence::new(std::mem::take(&mut self.current)) {
            self.sentences.push(s);
        }
    }

    fn finish(mut self) -> Result<Document, AnnotatedError> {
        self.end_sentence();
        if self.sentences.is_empty() {
            return Err(AnnotatedError::EmptyDocument {
                line: self.start_line,
                id: self.id,
            });
        }
        let raw = match self.text {
            Some(t) => t,
            None => self
                .sentences
                .iter()
                .flat_map(|s| s.tokens.iter().map(|t| t.surface.as_str()))
                .collect::<Vec<_>>()
                .join(" "),
        };
        Ok(Document::new(self.id, self.sentences, raw, self.pos_seen))
    }
}

/// Parses an annotated-token stream into documents, one per `# doc` block.
pub fn parse_annotated(input: &str) -> Result<Vec<Document>, AnnotatedError> {
    let mut docs = Vec::new();
    let mut seen = HashSet::new();
    let mut pending: Option<PendingDoc> = None;

    for (idx, raw_line) in input.split('\n').enumerate() {
        let line_no = idx + 1;
        let line = raw_line.strip_suffix('\r').unwrap_or(raw_line);

        if let Some(comment) = line.strip_prefix('#') {
            let comment = comment.trim_start();
            let new_id =
                comment_value(comment, "doc").or_else(|| comment_value(comment, "newdoc id"));
            if let Some(id) = new_id {
                let id = id.trim();
                if id.is_empty() {
                    return Err(AnnotatedError::EmptyId { line: line_no });
                }
                if !seen.insert(id.to_string()) {
                    return Err(AnnotatedError::DuplicateId {
                        line: line_no,
                        id: id.to_string(),
                    });
                }
                if let Some(doc) = pending.take() {
                    docs.push(doc.finish()?);
                }
                pending = Some(PendingDoc {
                    id: id.to_string(),
                    start_line: line_no,
                    text: None,
                    sentences: Vec::new(),
                    current: Vec::new(),
                    pos_seen: false,
                });
            } else if let Some(text) = comment_value(comment, "text") {
                let doc = pending
                    .as_mut()
                    .ok_or(AnnotatedError::OutsideDocument { line: line_no })?;
                match &mut doc.text {
                    Some(t) => {
                        t.push('\n');
                        t.push_str(text);
                    }
                    None => doc.text = Some(text.to_string()),
                }
            }
            continue;
        }

        if line.trim().is_empty() {
            if let Some(doc) = pending.as_mut() {
                doc.end_sentence();
            }
            continue;
        }

        let cols: Vec<&str> = line.split('\t').collect();
        let (form, lemma, upos) = match cols.len() {
            3 => (cols[0], cols[1], cols[2]),
            10 => {
                if cols[0].contains(['-', '.']) {
                    continue;
                }
                (cols[1], cols[2], cols[3])
            }
            n => {
                return Err(AnnotatedError::Columns {
                    line: line_no,
                    found: n,
                })
            }
        };
        if form.is_empty() {
            return Err(AnnotatedError::EmptyForm { line: line_no });
        }
        let doc = pending
            .as_mut()
            .ok_or(AnnotatedError::OutsideDocument { line: line_no })?;
        let lemma = if lemma == "_" { "" } else { lemma };
        let upos = upos.trim();
        if upos != "_" {
            doc.pos_seen = true;
        }
        let token = Token::new(form, lemma, Pos::from_upos(upos))
            .ok_or(AnnotatedError::EmptyForm { line: line_no })?;
        doc.current.push(token);
    }

    if let Some(doc) = pending.take() {
        docs.push(doc.finish()?);
    }
    Ok(docs)
}

/// Serializes documents in the annotated format accepted by
/// [`parse_annotated`].
pub fn write_annotated(docs: &[Document]) -> String {
    let mut out = String::new();
    for doc in docs {
        let _ = writeln!(out, "# doc = {}", doc.id);
        for line in doc.raw_text.split('\n') {
            let _ = writeln!(out, "# text = {line}");
        }
        for sentence in &doc.sentences {
            for tok in &sentence.tokens {
                let upos = if !doc.pos_available {
                    "_"
                } else if tok.pos == Pos::Other && tok.surface.chars().all(|c| !c.is_alphanumeric())
                {
                    "PUNCT"
                } else {
                    tok.pos.as_upos()
                };
                let _ = writeln!(out, "{}\t{}\t{}", tok.surface, tok.lemma, upos);
            }
            out.push('\n');
        }
    }
    out
}

fn is_sentence_end(seg: &str) -> bool {
    matches!(seg, "." | "!" | "…" | "！" | "。")
}

fn is_hyphen(seg: &str) -> bool {
    matches!(seg, "-" | "‐")
}

/// Tokenizes plain text on Unicode word boundaries.
///
/// Sentences end at `.`, `!`, `?` and newlines. Lemmas are the folded
/// surfaces and every token is `Pos::Other`; the document reports
/// `pos_available() == false`. Question marks stay as tokens so the
/// irrealis rule can see them, and so do quote characters, which delimit
/// quoted spans. Hyphenated words such as `кто-нибудь` are kept whole.
/// Other punctuation is dropped.
pub fn tokenize_fallback(raw: &str, id: &str) -> Document {
    let mut sentences = Vec::new();
    let mut current: Vec<Token> = Vec::new();
    let mut last_was_word = false;
    let mut hyphen_pending = false;

    let flush = |current: &mut Vec<Token>, sentences: &mut Vec<Sentence>| {
        if let Some(s) = Sentence::new(std::mem::take(current)) {
            sentences.push(s);
        }
    };

    for seg in raw.split_word_bounds() {
        if seg.chars().any(char::is_alphanumeric) {
            if hyphen_pending {
                if let Some(prev) = current.last_mut() {
                    prev.surface.push('-');
                    prev.surface.push_str(seg);
                    prev.lemma.push('-');
                    prev.lemma.push_str(&fold_lemma(seg));
                }
            } else if let Some(tok) = Token::new(seg, seg, Pos::Other) {
                current.push(tok);
            }
            hyphen_pending = false;
            last_was_word = true;
            continue;
        }

        hyphen_pending = last_was_word && is_hyphen(seg);
        last_was_word = false;
        if hyphen_pending {
            continue;
        }

        if seg.chars().all(char::is_whitespace) {
            if seg.contains('\n') {
                flush(&mut current, &mut sentences);
            }
        } else if is_question_surface(seg) {
            current.extend(Token::new(seg, seg, Pos::Other));
            flush(&mut current, &mut sentences);
        } else if is_sentence_end(seg) {
            flush(&mut current, &mut sentences);
        } else if quote_kind(seg).is_some() {
            current.extend(Token::new(seg, seg, Pos::Other));
        }
    }
    flush(&mut current, &mut sentences);

    Document::new(id, sentences, raw, false)
}
