//! Lexicon-driven token transformations: stop-word removal, stemming,
//! lemmatization, number replacement, synonym canonicalization, and POS
//! tagging.
//!
//! Lexicons are immutable after load; every operation is a pure function of
//! (input, lexicon).

use std::collections::{HashMap, HashSet};

use crate::error::{Error, Result};
use crate::text::{normalize, Token, TokenKind, ZWNJ};

/// The two stop-list sizes under test.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum StopWordDepth {
    Shallow,
    Deep,
}

/// A stop-word table at one depth. The deep table always contains every
/// shallow entry; [`StopWordTable::load_pair`] unions them to keep that
/// invariant independent of the files on disk.
#[derive(Debug, Clone)]
pub struct StopWordTable {
    pub depth: StopWordDepth,
    words: HashSet<String>,
}

impl StopWordTable {
    pub fn new(depth: StopWordDepth, words: impl IntoIterator<Item = String>) -> Self {
        let words = words.into_iter().map(|w| normalize(&w)).collect();
        Self { depth, words }
    }

    /// Parse two one-word-per-line files into the (shallow, deep) pair.
    pub fn load_pair(shallow: &str, deep: &str) -> (Self, Self) {
        let shallow_words: Vec<String> = parse_word_lines(shallow);
        let mut deep_words = parse_word_lines(deep);
        deep_words.extend(shallow_words.iter().cloned());
        (
            Self::new(StopWordDepth::Shallow, shallow_words),
            Self::new(StopWordDepth::Deep, deep_words),
        )
    }

    pub fn contains(&self, word: &str) -> bool {
        self.words.contains(word)
    }

    pub fn len(&self) -> usize {
        self.words.len()
    }

    pub fn is_empty(&self) -> bool {
        self.words.is_empty()
    }

    pub fn is_superset_of(&self, other: &Self) -> bool {
        self.words.is_superset(&other.words)
    }
}

fn parse_word_lines(content: &str) -> Vec<String> {
    content
        .lines()
        .map(str::trim)
        .filter(|l| !l.is_empty() && !l.starts_with('#'))
        .map(|l| normalize(l))
        .collect()
}

/// Drop Word tokens whose surface is in the table; order is preserved and
/// Number/Punctuation tokens always pass through.
pub fn remove_stop_words(tokens: Vec<Token>, table: &StopWordTable) -> Vec<Token> {
    tokens
        .into_iter()
        .filter(|t| t.kind != TokenKind::Word || !table.contains(&t.surface))
        .collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AffixSide {
    Suffix,
    Prefix,
}

#[derive(Debug, Clone)]
struct StemRule {
    pattern: String,
    replacement: String,
    side: AffixSide,
    pattern_chars: usize,
}

/// Ordered affix-stripping rules. Rules are tried longest-pattern-first
/// (file order breaks ties) and re-applied until no rule fits, so stacked
/// affixes come off one at a time. A rule only fires if the result keeps at
/// least `min_stem_len` characters, which also guarantees stems are never
/// empty.
#[derive(Debug, Clone)]
pub struct StemRuleSet {
    rules: Vec<StemRule>,
    min_stem_len: usize,
}

impl StemRuleSet {
    pub const DEFAULT_MIN_STEM_LEN: usize = 2;

    /// Parse `<pattern><TAB><replacement><TAB><affix-side>` lines.
    /// Replacements must be strictly shorter than their patterns so that
    /// repeated application terminates.
    pub fn parse(content: &str, filename: &str) -> Result<Self> {
        let mut rules = Vec::new();
        for (idx, raw) in content.lines().enumerate() {
            let line = raw.trim_end_matches(['\r', '\n']);
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let bad = |reason: String| Error::BadResource {
                file: filename.to_string(),
                line: idx + 1,
                reason,
            };
            let fields: Vec<&str> = line.split('\t').collect();
            if fields.len() != 3 {
                return Err(bad(format!("expected 3 tab-separated fields, got {}", fields.len())));
            }
            let pattern = fields[0].to_string();
            let replacement = fields[1].to_string();
            let side = match fields[2].trim() {
                "suffix" => AffixSide::Suffix,
                "prefix" => AffixSide::Prefix,
                other => return Err(bad(format!("affix side must be suffix|prefix, got '{other}'"))),
            };
            if pattern.is_empty() {
                return Err(bad("empty pattern".into()));
            }
            let pattern_chars = pattern.chars().count();
            if replacement.chars().count() >= pattern_chars {
                return Err(bad("replacement must be shorter than pattern".into()));
            }
            rules.push(StemRule { pattern, replacement, side, pattern_chars });
        }
        // Longest pattern wins; file order decides among equal lengths.
        rules.sort_by(|a, b| b.pattern_chars.cmp(&a.pattern_chars));
        Ok(Self { rules, min_stem_len: Self::DEFAULT_MIN_STEM_LEN })
    }

    pub fn with_min_stem_len(mut self, min: usize) -> Self {
        self.min_stem_len = min.max(1);
        self
    }

    /// Reduce one word to its stem. Unknown shapes come back unchanged.
    pub fn stem(&self, word: &str) -> String {
        let mut current = word.to_string();
        loop {
            let mut applied = false;
            for rule in &self.rules {
                let candidate = match rule.side {
                    AffixSide::Suffix => current
                        .strip_suffix(&rule.pattern)
                        .map(|rest| format!("{rest}{}", rule.replacement)),
                    AffixSide::Prefix => current
                        .strip_prefix(&rule.pattern)
                        .map(|rest| format!("{}{rest}", rule.replacement)),
                };
                if let Some(next) = candidate {
                    let next = next.trim_matches(ZWNJ).to_string();
                    if next.chars().count() >= self.min_stem_len {
                        current = next;
                        applied = true;
                        break;
                    }
                }
            }
            if !applied {
                return current;
            }
        }
    }
}

/// Inflected form → dictionary base form.
#[derive(Debug, Clone, Default)]
pub struct LemmaLexicon {
    mapping: HashMap<String, String>,
}

impl LemmaLexicon {
    /// Parse `<form><TAB><lemma>` lines. Every lemma value is inserted as a
    /// key mapping to itself so the lexicon is idempotent.
    pub fn parse(content: &str, filename: &str) -> Result<Self> {
        let mut mapping = HashMap::new();
        for (idx, raw) in content.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let Some((form, lemma)) = line.split_once('\t') else {
                return Err(Error::BadResource {
                    file: filename.to_string(),
                    line: idx + 1,
                    reason: "expected <form><TAB><lemma>".into(),
                });
            };
            let form = normalize(form);
            let lemma = normalize(lemma);
            mapping.insert(lemma.clone(), lemma.clone());
            mapping.insert(form, lemma);
        }
        Ok(Self { mapping })
    }

    /// The dictionary base form, or the word itself when unknown.
    pub fn lemmatize(&self, word: &str) -> String {
        self.mapping.get(word).cloned().unwrap_or_else(|| word.to_string())
    }

    pub fn len(&self) -> usize {
        self.mapping.len()
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }
}

/// Word → canonical synset head. Multiword entries are stored ZWNJ-joined
/// and matched after a merge pre-pass over adjacent tokens.
#[derive(Debug, Clone, Default)]
pub struct SynonymLexicon {
    mapping: HashMap<String, String>,
    /// Longest key measured in ZWNJ-separated parts; bounds the merge window.
    max_key_parts: usize,
}

impl SynonymLexicon {
    /// Parse one synset per line, tab-separated, first entry canonical.
    /// Spaces inside an entry are normalized to ZWNJ.
    pub fn parse(content: &str, filename: &str) -> Result<Self> {
        let mut mapping = HashMap::new();
        let mut max_key_parts = 1;
        for (idx, raw) in content.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let entries: Vec<String> = line
                .split('\t')
                .map(|e| normalize(e).replace(' ', &ZWNJ.to_string()))
                .filter(|e| !e.is_empty())
                .collect();
            if entries.len() < 2 {
                return Err(Error::BadResource {
                    file: filename.to_string(),
                    line: idx + 1,
                    reason: "a synset needs a canonical head and at least one synonym".into(),
                });
            }
            let head = entries[0].clone();
            for entry in &entries {
                max_key_parts = max_key_parts.max(entry.split(ZWNJ).count());
                mapping.insert(entry.clone(), head.clone());
            }
        }
        Ok(Self { mapping, max_key_parts })
    }

    pub fn canonical(&self, word: &str) -> Option<&str> {
        self.mapping.get(word).map(String::as_str)
    }

    pub fn entries(&self) -> impl Iterator<Item = (&str, &str)> {
        self.mapping.iter().map(|(k, v)| (k.as_str(), v.as_str()))
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }
}

/// Rewrite Word tokens to their synset heads. Adjacent Word tokens that
/// jointly form a multiword key (joined by ZWNJ) are merged first, so
/// "صفحه کلید" and "کیبورد" end up as the same single token.
pub fn canonicalize_synonyms(tokens: Vec<Token>, lex: &SynonymLexicon) -> Vec<Token> {
    let mut out: Vec<Token> = Vec::with_capacity(tokens.len());
    let mut i = 0;
    while i < tokens.len() {
        let token = &tokens[i];
        if token.kind == TokenKind::Word && lex.max_key_parts > 1 {
            let mut merged = None;
            let max_span = lex.max_key_parts.min(tokens.len() - i);
            for span in (2..=max_span).rev() {
                if tokens[i..i + span].iter().any(|t| t.kind != TokenKind::Word) {
                    continue;
                }
                let joined = tokens[i..i + span]
                    .iter()
                    .map(|t| t.surface.as_str())
                    .collect::<Vec<_>>()
                    .join(&ZWNJ.to_string());
                if let Some(head) = lex.canonical(&joined) {
                    let mut tok = Token::word(joined.clone());
                    tok.canonical = Some(head.to_string());
                    merged = Some((tok, span));
                    break;
                }
            }
            if let Some((tok, span)) = merged {
                out.push(tok);
                i += span;
                continue;
            }
        }
        let mut tok = token.clone();
        if tok.kind == TokenKind::Word {
            if let Some(head) = lex.canonical(&tok.surface) {
                tok.canonical = Some(head.to_string());
            }
        }
        out.push(tok);
        i += 1;
    }
    out
}

/// Replace every Number token's surface with the placeholder "#".
pub fn replace_numbers(tokens: Vec<Token>) -> Vec<Token> {
    tokens
        .into_iter()
        .map(|mut t| {
            if t.kind == TokenKind::Number {
                t.surface = "#".to_string();
            }
            t
        })
        .collect()
}

/// Word → grammatical tag, with a closed tag inventory and a default for
/// unknown words.
#[derive(Debug, Clone)]
pub struct PosLexicon {
    mapping: HashMap<String, String>,
    default_tag: String,
}

impl PosLexicon {
    pub const TAG_INVENTORY: &'static [&'static str] =
        &["N", "V", "ADJ", "ADV", "PRO", "PREP", "CONJ", "NUM", "PUNC", "X"];
    pub const DEFAULT_TAG: &'static str = "N";
    pub const NUMBER_TAG: &'static str = "NUM";
    pub const PUNCT_TAG: &'static str = "PUNC";

    /// Parse `<word><TAB><tag>` lines; tags outside the inventory are
    /// rejected.
    pub fn parse(content: &str, filename: &str) -> Result<Self> {
        let mut mapping = HashMap::new();
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
            let Some((word, tag)) = line.split_once('\t') else {
                return Err(bad("expected <word><TAB><tag>".into()));
            };
            let tag = tag.trim();
            if !Self::TAG_INVENTORY.contains(&tag) {
                return Err(bad(format!("tag '{tag}' is not in the inventory")));
            }
            mapping.insert(normalize(word), tag.to_string());
        }
        Ok(Self { mapping, default_tag: Self::DEFAULT_TAG.to_string() })
    }

    pub fn tag(&self, word: &str) -> &str {
        self.mapping.get(word).map_or(&self.default_tag, String::as_str)
    }

    pub fn is_empty(&self) -> bool {
        self.mapping.is_empty()
    }
}

/// Annotate every token with a tag: lexicon lookup (or the default tag) for
/// words, fixed tags for numbers and punctuation.
pub fn pos_tag(tokens: Vec<Token>, lex: &PosLexicon) -> Vec<Token> {
    tokens
        .into_iter()
        .map(|mut t| {
            t.pos = Some(match t.kind {
                TokenKind::Word => lex.tag(&t.surface).to_string(),
                TokenKind::Number => PosLexicon::NUMBER_TAG.to_string(),
                TokenKind::Punctuation => PosLexicon::PUNCT_TAG.to_string(),
            });
            t
        })
        .collect()
}
