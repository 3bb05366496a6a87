//! Script-level Persian text handling: normalization, sentence
//! segmentation, and tokenization.
//!
//! Everything here is pure; lexicon-driven stages live in [`crate::lexicon`].

use std::collections::HashMap;
use std::sync::OnceLock;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Zero-width non-joiner, the "virtual space" of Persian orthography.
pub const ZWNJ: char = '\u{200C}';

/// Sentence terminators: ASCII full stop / bang / question mark, Arabic
/// question mark and semicolon, and newline.
pub const SENTENCE_TERMINATORS: &[char] = &['.', '!', '?', '\u{061F}', '\u{061B}', '\n'];

/// Non-ASCII punctuation recognized by the tokenizer (ASCII punctuation is
/// handled via `char::is_ascii_punctuation`).
const EXTRA_PUNCT: &[char] = &[
    '\u{060C}', // ، comma
    '\u{061B}', // ؛ semicolon
    '\u{061F}', // ؟ question mark
    '\u{066A}', // ٪ percent
    '\u{066B}', // ٫ decimal separator
    '\u{066C}', // ٬ thousands separator
    '\u{06D4}', // ۔ full stop
    '\u{00AB}', // «
    '\u{00BB}', // »
    '\u{2018}', '\u{2019}', '\u{201C}', '\u{201D}', // curly quotes
    '\u{2013}', '\u{2014}', '\u{2015}', // dashes
    '\u{2026}', // ellipsis
    '\u{2039}', '\u{203A}', // single angle quotes
];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum DocRole {
    Original,
    Suspicious,
}

/// One UTF-8 input document. Ids must be unique within a corpus; the corpus
/// loader enforces that.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct RawDocument {
    pub id: String,
    pub text: String,
    pub role: DocRole,
}

impl RawDocument {
    pub fn new(id: impl Into<String>, text: impl Into<String>, role: DocRole) -> Self {
        Self { id: id.into(), text: text.into(), role }
    }
}

/// One sentence of a document, terminator stripped.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Sentence {
    pub text: String,
    pub index: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum TokenKind {
    Word,
    Number,
    Punctuation,
}

/// A token plus the annotations later pipeline stages attach to it.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Token {
    pub surface: String,
    pub kind: TokenKind,
    pub stem: Option<String>,
    pub lemma: Option<String>,
    pub pos: Option<String>,
    pub canonical: Option<String>,
}

impl Token {
    pub fn new(surface: impl Into<String>, kind: TokenKind) -> Self {
        Self { surface: surface.into(), kind, stem: None, lemma: None, pos: None, canonical: None }
    }

    pub fn word(surface: impl Into<String>) -> Self {
        Self::new(surface, TokenKind::Word)
    }

    pub fn number(surface: impl Into<String>) -> Self {
        Self::new(surface, TokenKind::Number)
    }

    pub fn punct(surface: impl Into<String>) -> Self {
        Self::new(surface, TokenKind::Punctuation)
    }
}

/// Character rewrite table applied by [`Normalizer`]: each entry maps a
/// codepoint to a replacement or deletes it.
#[derive(Debug, Clone, Default)]
pub struct CharMap {
    map: HashMap<char, Option<char>>,
}

impl CharMap {
    /// The shipped default: Arabic yeh/kaf unified to their Persian forms,
    /// kashida removed.
    pub fn builtin() -> Self {
        Self::parse(include_str!("../data/charmap.tsv"), "builtin charmap")
            .expect("builtin charmap is valid")
    }

    /// Parse the on-disk format: one `<from-hex><TAB><to-hex-or-DELETE>`
    /// per line, `#` comments. Targets may not themselves be mapped, so a
    /// single pass reaches a fixed point.
    pub fn parse(content: &str, filename: &str) -> Result<Self> {
        let mut map = HashMap::new();
        for (idx, raw) in content.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: String| Error::BadResource {
                file: filename.to_string(),
                line: idx + 1,
                reason,
            };
            let mut parts = line.split('\t');
            let from = parts
                .next()
                .ok_or_else(|| bad("missing source codepoint".into()))?;
            let to = parts
                .next()
                .ok_or_else(|| bad("missing target codepoint".into()))?;
            let from = parse_codepoint(from).ok_or_else(|| bad(format!("bad codepoint '{from}'")))?;
            let to = if to == "DELETE" {
                None
            } else {
                Some(parse_codepoint(to).ok_or_else(|| bad(format!("bad codepoint '{to}'")))?)
            };
            map.insert(from, to);
        }
        // Reject chains (a→b, b→c) so that applying the map once is idempotent.
        for to in map.values().flatten() {
            if map.contains_key(to) {
                return Err(Error::BadResource {
                    file: filename.to_string(),
                    line: 0,
                    reason: format!("target U+{:04X} is itself mapped; chains are not allowed", *to as u32),
                });
            }
        }
        Ok(Self { map })
    }

    fn apply(&self, c: char) -> Option<char> {
        match self.map.get(&c) {
            Some(mapped) => *mapped,
            None => Some(c),
        }
    }
}

fn parse_codepoint(s: &str) -> Option<char> {
    let s = s.trim().trim_start_matches("U+").trim_start_matches("0x");
    u32::from_str_radix(s, 16).ok().and_then(char::from_u32)
}

/// Persian normalizer: codepoint unification, whitespace cleanup, and
/// virtual-space (ZWNJ) repair for a configurable affix list.
#[derive(Debug, Clone)]
pub struct Normalizer {
    char_map: CharMap,
    /// Standalone words joined to the *following* word with ZWNJ (e.g. the
    /// verbal prefixes).
    join_prefixes: Vec<String>,
    /// Standalone words joined to the *preceding* word with ZWNJ (e.g. the
    /// plural suffix written with a space).
    join_suffixes: Vec<String>,
}

impl Normalizer {
    pub fn new(char_map: CharMap, join_prefixes: Vec<String>, join_suffixes: Vec<String>) -> Self {
        Self { char_map, join_prefixes, join_suffixes }
    }

    pub fn with_char_map(char_map: CharMap) -> Self {
        Self {
            char_map,
            join_prefixes: vec!["می".to_string(), "نمی".to_string()],
            join_suffixes: vec!["ها".to_string(), "های".to_string()],
        }
    }

    pub fn normalize(&self, text: &str) -> String {
        // 1. codepoint rewrites, and collapse runs of spaces/tabs.
        let mut mapped = String::with_capacity(text.len());
        let mut pending_space = false;
        for c in text.chars() {
            let Some(c) = self.char_map.apply(c) else { continue };
            if c == ' ' || c == '\t' {
                pending_space = true;
                continue;
            }
            if pending_space {
                mapped.push(' ');
                pending_space = false;
            }
            mapped.push(c);
        }

        // 2. virtual-space repair, line by line so newlines survive.
        let mut out = String::with_capacity(mapped.len());
        let mut first_line = true;
        for line in mapped.split('\n') {
            if !first_line {
                out.push('\n');
            }
            first_line = false;
            self.join_line(line, &mut out);
        }

        // 3. trim.
        out.trim().to_string()
    }

    fn join_line(&self, line: &str, out: &mut String) {
        let mut words: Vec<String> = Vec::new();
        for frag in line.split(' ').filter(|f| !f.is_empty()) {
            if let Some(prev) = words.last_mut() {
                let prefix_join = self.join_prefixes.iter().any(|p| p == prev)
                    && frag.chars().next().is_some_and(is_word_char);
                let suffix_join = self.join_suffixes.iter().any(|s| s == frag)
                    && prev.chars().last().is_some_and(is_word_char);
                if prefix_join || suffix_join {
                    prev.push(ZWNJ);
                    prev.push_str(frag);
                    continue;
                }
            }
            words.push(frag.to_string());
        }
        for (i, w) in words.iter().enumerate() {
            if i > 0 {
                out.push(' ');
            }
            out.push_str(w);
        }
    }
}

impl Default for Normalizer {
    fn default() -> Self {
        Self::with_char_map(CharMap::builtin())
    }
}

/// Normalize with the shipped default tables. Lexicon loaders use this to
/// force entries onto the same footing as pipeline text.
pub fn normalize(text: &str) -> String {
    static DEFAULT: OnceLock<Normalizer> = OnceLock::new();
    DEFAULT.get_or_init(Normalizer::default).normalize(text)
}

/// Split normalized text into sentences. Terminators are dropped, empty
/// segments are skipped, indices are consecutive from zero.
pub fn segment_sentences(text: &str) -> Vec<Sentence> {
    text.split(SENTENCE_TERMINATORS)
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .enumerate()
        .map(|(index, s)| Sentence { text: s.to_string(), index })
        .collect()
}

fn is_digit_char(c: char) -> bool {
    c.is_ascii_digit() || ('\u{0660}'..='\u{0669}').contains(&c) || ('\u{06F0}'..='\u{06F9}').contains(&c)
}

fn is_punct_char(c: char) -> bool {
    c.is_ascii_punctuation() || EXTRA_PUNCT.contains(&c)
}

fn is_word_char(c: char) -> bool {
    !c.is_whitespace() && !is_digit_char(c) && !is_punct_char(c)
}

/// Tokenize one sentence (or any normalized text). Whitespace separates
/// tokens, each punctuation character is its own token, maximal digit runs
/// become `Number` tokens, and ZWNJ stays word-internal.
pub fn tokenize(text: &str) -> Vec<Token> {
    let mut tokens = Vec::new();
    let mut run = String::new();
    let mut run_kind: Option<TokenKind> = None;

    let mut flush = |run: &mut String, run_kind: &mut Option<TokenKind>, tokens: &mut Vec<Token>| {
        if let Some(kind) = run_kind.take() {
            tokens.push(Token::new(std::mem::take(run), kind));
        }
    };

    for c in text.chars() {
        if c.is_whitespace() {
            flush(&mut run, &mut run_kind, &mut tokens);
        } else if is_punct_char(c) {
            flush(&mut run, &mut run_kind, &mut tokens);
            tokens.push(Token::punct(c.to_string()));
        } else {
            let kind = if is_digit_char(c) { TokenKind::Number } else { TokenKind::Word };
            if run_kind != Some(kind) {
                flush(&mut run, &mut run_kind, &mut tokens);
                run_kind = Some(kind);
            }
            run.push(c);
        }
    }
    flush(&mut run, &mut run_kind, &mut tokens);
    tokens
}

/// Tokenize a [`Sentence`].
pub fn tokenize_sentence(sentence: &Sentence) -> Vec<Token> {
    tokenize(&sentence.text)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn normalize_inserts_zwnj_after_verbal_prefix() {
        assert_eq!(normalize("می روم"), "می\u{200C}روم");
        assert_eq!(normalize("نمی روم"), "نمی\u{200C}روم");
    }

    #[test]
    fn normalize_empty_is_fixed_point() {
        assert_eq!(normalize(""), "");
    }

    #[test]
    fn normalize_maps_arabic_yeh_and_collapses_spaces() {
        // "علي" with Arabic yeh U+064A, then two spaces.
        let input = "عل\u{064A}  رفت";
        let expected = "عل\u{06CC} رفت";
        assert_eq!(normalize(input), expected);
    }

    #[test]
    fn normalize_maps_arabic_kaf_and_drops_kashida() {
        assert_eq!(normalize("\u{0643}ار"), "\u{06A9}ار");
        assert_eq!(normalize("کتاـب"), "کتاب");
    }

    #[test]
    fn normalize_joins_detached_plural_suffix() {
        assert_eq!(normalize("پردازنده ها"), "پردازنده\u{200C}ها");
    }

    #[test]
    fn normalize_keeps_newlines() {
        assert_eq!(normalize("الف \t ب\nج"), "الف ب\nج");
    }

    #[test]
    fn segment_splits_on_full_stop() {
        let got = segment_sentences("الف رفت. ب آمد");
        assert_eq!(got.len(), 2);
        assert_eq!(got[0], Sentence { text: "الف رفت".into(), index: 0 });
        assert_eq!(got[1], Sentence { text: "ب آمد".into(), index: 1 });
    }

    #[test]
    fn segment_empty_and_terminator_only() {
        assert!(segment_sentences("").is_empty());
        assert!(segment_sentences("؟!.").is_empty());
    }

    #[test]
    fn segment_without_terminator_is_one_sentence() {
        let got = segment_sentences("سلام");
        assert_eq!(got.len(), 1);
        assert_eq!(got[0].text, "سلام");
    }

    #[test]
    fn tokenize_splits_punctuation_and_keeps_zwnj() {
        let got = tokenize("می\u{200C}روم، حالا");
        assert_eq!(
            got,
            vec![
                Token::word("می\u{200C}روم"),
                Token::punct("،"),
                Token::word("حالا"),
            ]
        );
    }

    #[test]
    fn tokenize_digit_runs_become_numbers() {
        assert_eq!(tokenize("۱۲۳"), vec![Token::number("۱۲۳")]);
        assert_eq!(tokenize("abc42"), vec![Token::word("abc"), Token::number("42")]);
        // All three digit scripts classify as Number.
        assert_eq!(tokenize("42 ٧ ۹"), vec![
            Token::number("42"),
            Token::number("٧"),
            Token::number("۹"),
        ]);
    }

    #[test]
    fn tokenize_empty() {
        assert!(tokenize("").is_empty());
    }

    #[test]
    fn charmap_rejects_chained_mappings() {
        let err = CharMap::parse("0061\t0062\n0062\t0063\n", "test").unwrap_err();
        assert!(matches!(err, Error::BadResource { .. }));
    }

    /// Character pool biased toward the scripts and separators the
    /// normalizer actually has rules for.
    fn persianish() -> impl Strategy<Value = String> {
        let ch = prop_oneof![
            Just(' '),
            Just('\t'),
            Just('\n'),
            Just(ZWNJ),
            Just('\u{064A}'), // Arabic yeh
            Just('\u{0643}'), // Arabic kaf
            Just('\u{0640}'), // kashida
            Just('،'),
            Just('.'),
            Just('؟'),
            prop::char::range('آ', 'ی'),
            prop::char::range('۰', '۹'),
            prop::char::range('a', 'z'),
            prop::char::range('0', '9'),
        ];
        prop::collection::vec(ch, 0..40).prop_map(|v| v.into_iter().collect())
    }

    proptest! {
        #[test]
        fn normalize_is_idempotent(s in persianish()) {
            let once = normalize(&s);
            prop_assert_eq!(normalize(&once), once);
        }

        #[test]
        fn normalize_output_is_clean(s in persianish()) {
            let out = normalize(&s);
            prop_assert!(!out.contains("  "));
            prop_assert!(!out.contains('\u{064A}'));
            prop_assert!(!out.contains('\u{0643}'));
        }

        #[test]
        fn tokenize_conserves_non_whitespace(s in persianish()) {
            let norm = normalize(&s);
            let tokens = tokenize(&norm);
            let rebuilt: String = tokens.iter().map(|t| t.surface.as_str()).collect();
            let expected: String = norm.chars().filter(|c| !c.is_whitespace()).collect();
            prop_assert_eq!(rebuilt, expected);
        }

        #[test]
        fn segmentation_loses_only_terminator_tokens(s in persianish()) {
            let norm = normalize(&s);
            let mut whole: Vec<String> = tokenize(&norm)
                .into_iter()
                .filter(|t| t.kind != TokenKind::Punctuation || !t.surface.chars().all(|c| SENTENCE_TERMINATORS.contains(&c)))
                .map(|t| t.surface)
                .collect();
            let mut per_sentence: Vec<String> = segment_sentences(&norm)
                .iter()
                .flat_map(tokenize_sentence)
                .map(|t| t.surface)
                .collect();
            whole.sort();
            per_sentence.sort();
            prop_assert_eq!(whole, per_sentence);
        }
    }
}
