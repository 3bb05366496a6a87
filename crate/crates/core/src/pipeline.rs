//! Stage orchestration: apply a configured subset of preprocessing stages
//! to a document and emit the comparison-ready term sequence.
//!
//! Stage order is fixed: normalize → sentence segmentation → tokenize →
//! stop-word removal → number replacement → synonym canonicalization →
//! lemmatize → stem → POS tag → term rendering. Disabled stages are
//! identity. Synonym rewriting runs before morphological reduction so
//! synset keys still match surface forms; when stemming and lemmatization
//! are both on, the lemma is computed first and the stem is taken from the
//! lemma.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lexicon::{
    canonicalize_synonyms, pos_tag, remove_stop_words, replace_numbers, StopWordDepth,
};
use crate::resources::Resources;
use crate::similarity::MetricSpec;
use crate::text::{segment_sentences, tokenize, tokenize_sentence, RawDocument, Token, TokenKind};

/// Stop-word removal switch: off, or one of the two table depths.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StopWordMode {
    Off,
    Shallow,
    Deep,
}

impl StopWordMode {
    fn as_str(self) -> &'static str {
        match self {
            StopWordMode::Off => "off",
            StopWordMode::Shallow => "shallow",
            StopWordMode::Deep => "deep",
        }
    }

    fn parse(s: &str) -> Option<Self> {
        match s {
            "off" => Some(Self::Off),
            "shallow" => Some(Self::Shallow),
            "deep" => Some(Self::Deep),
            _ => None,
        }
    }
}

/// One preprocessing combination: nine stage switches plus the similarity
/// metric it feeds. Tokenization is always on; comparison needs tokens.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PipelineConfig {
    pub normalizing: bool,
    pub stop_word: StopWordMode,
    pub sentence_segmentation: bool,
    pub tokenization: bool,
    pub stemming: bool,
    pub lemmatization: bool,
    pub number_replacement: bool,
    pub synonym_recognition: bool,
    pub pos_tagging: bool,
    pub metric: MetricSpec,
}

impl PipelineConfig {
    /// Everything optional off; the minimal valid combination.
    pub fn minimal(metric: MetricSpec) -> Self {
        Self {
            normalizing: false,
            stop_word: StopWordMode::Off,
            sentence_segmentation: false,
            tokenization: true,
            stemming: false,
            lemmatization: false,
            number_replacement: false,
            synonym_recognition: false,
            pos_tagging: false,
            metric,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !self.tokenization {
            return Err(Error::InvalidConfig(
                "tokenization must be true; comparison requires tokens".into(),
            ));
        }
        Ok(())
    }

    /// Canonical `key = value` serialization; also the fingerprint input.
    pub fn to_kv_string(&self) -> String {
        format!(
            "normalizing = {}\nstop_word = {}\nsentence_segmentation = {}\ntokenization = {}\nstemming = {}\nlemmatization = {}\nnumber_replacement = {}\nsynonym_recognition = {}\npos_tagging = {}\nmetric = {}\n",
            self.normalizing,
            self.stop_word.as_str(),
            self.sentence_segmentation,
            self.tokenization,
            self.stemming,
            self.lemmatization,
            self.number_replacement,
            self.synonym_recognition,
            self.pos_tagging,
            self.metric,
        )
    }

    /// Parse the flat `key = value` format. All ten keys are required and
    /// no key may repeat or be unknown.
    pub fn from_kv_string(content: &str) -> Result<Self> {
        let mut cfg = Self::minimal(MetricSpec::lcs());
        let mut seen = [false; 10];
        for (idx, raw) in content.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let bad = |reason: String| Error::InvalidConfig(format!("line {}: {reason}", idx + 1));
            let Some((key, value)) = line.split_once('=') else {
                return Err(bad("expected 'key = value'".into()));
            };
            let (key, value) = (key.trim(), value.trim());
            let parse_bool = |v: &str| -> Result<bool> {
                match v {
                    "true" => Ok(true),
                    "false" => Ok(false),
                    other => Err(Error::InvalidConfig(format!(
                        "line {}: expected true|false, got '{other}'",
                        idx + 1
                    ))),
                }
            };
            let slot = match key {
                "normalizing" => {
                    cfg.normalizing = parse_bool(value)?;
                    0
                }
                "stop_word" => {
                    cfg.stop_word = StopWordMode::parse(value)
                        .ok_or_else(|| bad(format!("expected off|shallow|deep, got '{value}'")))?;
                    1
                }
                "sentence_segmentation" => {
                    cfg.sentence_segmentation = parse_bool(value)?;
                    2
                }
                "tokenization" => {
                    cfg.tokenization = parse_bool(value)?;
                    3
                }
                "stemming" => {
                    cfg.stemming = parse_bool(value)?;
                    4
                }
                "lemmatization" => {
                    cfg.lemmatization = parse_bool(value)?;
                    5
                }
                "number_replacement" => {
                    cfg.number_replacement = parse_bool(value)?;
                    6
                }
                "synonym_recognition" => {
                    cfg.synonym_recognition = parse_bool(value)?;
                    7
                }
                "pos_tagging" => {
                    cfg.pos_tagging = parse_bool(value)?;
                    8
                }
                "metric" => {
                    cfg.metric = value.parse()?;
                    9
                }
                other => return Err(bad(format!("unknown key '{other}'"))),
            };
            if seen[slot] {
                return Err(bad(format!("duplicate key '{key}'")));
            }
            seen[slot] = true;
        }
        if let Some(missing) = seen.iter().position(|s| !s) {
            const KEYS: [&str; 10] = [
                "normalizing",
                "stop_word",
                "sentence_segmentation",
                "tokenization",
                "stemming",
                "lemmatization",
                "number_replacement",
                "synonym_recognition",
                "pos_tagging",
                "metric",
            ];
            return Err(Error::InvalidConfig(format!("missing key '{}'", KEYS[missing])));
        }
        cfg.validate()?;
        Ok(cfg)
    }

    /// Parse the equivalent JSON object.
    pub fn from_json(content: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(content)?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Stable 64-bit FNV-1a hash of the canonical serialization, as hex.
    /// Used to guarantee two term sequences were produced alike.
    pub fn fingerprint(&self) -> String {
        const OFFSET: u64 = 0xcbf2_9ce4_8422_2325;
        const PRIME: u64 = 0x0000_0100_0000_01b3;
        let mut hash = OFFSET;
        for byte in self.to_kv_string().bytes() {
            hash ^= u64::from(byte);
            hash = hash.wrapping_mul(PRIME);
        }
        format!("{hash:016x}")
    }
}

/// The comparison-ready output of a pipeline run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TermSequence {
    pub terms: Vec<String>,
    pub source_id: String,
    pub fingerprint: String,
}

/// Resolve one token to its comparison term under the given config:
/// stem if stemming is on, else lemma if lemmatization is on, else the
/// canonical synonym or the surface; a `/TAG` suffix when POS tagging is on.
pub fn render_term(token: &Token, config: &PipelineConfig) -> String {
    let base = if config.stemming && token.stem.is_some() {
        token.stem.as_deref().unwrap()
    } else if config.lemmatization && token.lemma.is_some() {
        token.lemma.as_deref().unwrap()
    } else {
        token.canonical.as_deref().unwrap_or(&token.surface)
    };
    match (&token.pos, config.pos_tagging) {
        (Some(tag), true) => format!("{base}/{tag}"),
        _ => base.to_string(),
    }
}

/// Render all non-punctuation tokens in order.
pub fn render_terms(tokens: &[Token], config: &PipelineConfig) -> Vec<String> {
    tokens
        .iter()
        .filter(|t| t.kind != TokenKind::Punctuation)
        .map(|t| render_term(t, config))
        .collect()
}

/// Run the configured stages over one document.
pub fn run_pipeline(
    doc: &RawDocument,
    config: &PipelineConfig,
    resources: &Resources,
) -> Result<TermSequence> {
    config.validate()?;

    let text = if config.normalizing {
        resources.normalizer.normalize(&doc.text)
    } else {
        doc.text.clone()
    };

    let mut tokens: Vec<Token> = if config.sentence_segmentation {
        segment_sentences(&text)
            .iter()
            .flat_map(|s| tokenize_sentence(s))
            .collect()
    } else {
        tokenize(&text)
    };

    match config.stop_word {
        StopWordMode::Off => {}
        StopWordMode::Shallow => {
            tokens = remove_stop_words(tokens, resources.stop_words(StopWordDepth::Shallow)?);
        }
        StopWordMode::Deep => {
            tokens = remove_stop_words(tokens, resources.stop_words(StopWordDepth::Deep)?);
        }
    }

    if config.number_replacement {
        tokens = replace_numbers(tokens);
    }

    if config.synonym_recognition {
        tokens = canonicalize_synonyms(tokens, resources.synonyms()?);
    }

    if config.lemmatization {
        let lemmas = resources.lemmas()?;
        for t in tokens.iter_mut().filter(|t| t.kind == TokenKind::Word) {
            let input = t.canonical.as_deref().unwrap_or(&t.surface);
            t.lemma = Some(lemmas.lemmatize(input));
        }
    }

    if config.stemming {
        let rules = resources.stems()?;
        for t in tokens.iter_mut().filter(|t| t.kind == TokenKind::Word) {
            let input = t
                .lemma
                .as_deref()
                .or(t.canonical.as_deref())
                .unwrap_or(&t.surface);
            t.stem = Some(rules.stem(input));
        }
    }

    if config.pos_tagging {
        tokens = pos_tag(tokens, resources.pos()?);
    }

    Ok(TermSequence {
        terms: render_terms(&tokens, config),
        source_id: doc.id.clone(),
        fingerprint: config.fingerprint(),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::DocRole;

    fn doc(text: &str) -> RawDocument {
        RawDocument::new("doc", text, DocRole::Original)
    }

    fn norm_tok_config() -> PipelineConfig {
        let mut cfg = PipelineConfig::minimal(MetricSpec::ngram_jaccard(2).unwrap());
        cfg.normalizing = true;
        cfg
    }

    #[test]
    fn pipeline_normalize_and_tokenize_only() {
        let res = Resources::bare();
        let got = run_pipeline(&doc("می روم."), &norm_tok_config(), &res).unwrap();
        assert_eq!(got.terms, vec!["می\u{200C}روم"]);
    }

    #[test]
    fn pipeline_empty_document() {
        let res = Resources::bare();
        let got = run_pipeline(&doc(""), &norm_tok_config(), &res).unwrap();
        assert!(got.terms.is_empty());
    }

    #[test]
    fn pipeline_all_optional_off_equals_tokenizer_surfaces() {
        let res = Resources::bare();
        let mut cfg = norm_tok_config();
        let text = "الف ۱۲ رفت، می روم";
        let got = run_pipeline(&doc(text), &cfg, &res).unwrap();
        let expected: Vec<String> = tokenize(&crate::text::normalize(text))
            .into_iter()
            .filter(|t| t.kind != TokenKind::Punctuation)
            .map(|t| t.surface)
            .collect();
        assert_eq!(got.terms, expected);
        // Sentence segmentation on/off does not change the terms.
        cfg.sentence_segmentation = true;
        let segmented = run_pipeline(&doc(text), &cfg, &res).unwrap();
        assert_eq!(segmented.terms, got.terms);
    }

    #[test]
    fn pipeline_is_deterministic() {
        let res = Resources::builtin();
        let mut cfg = norm_tok_config();
        cfg.stop_word = StopWordMode::Deep;
        cfg.stemming = true;
        cfg.lemmatization = true;
        cfg.synonym_recognition = true;
        cfg.pos_tagging = true;
        cfg.number_replacement = true;
        let d = doc("دانشجویان با کیبورد متن های خود را می نویسند. سرعت اینترنت در سال ۲۰۱۹ بیشتر شد.");
        let a = run_pipeline(&d, &cfg, &res).unwrap();
        let b = run_pipeline(&d, &cfg, &res).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn number_replacement_erases_digit_differences() {
        let res = Resources::bare();
        let mut cfg = norm_tok_config();
        cfg.number_replacement = true;
        let a = run_pipeline(&doc("قیمت ۱۲۳ تومان"), &cfg, &res).unwrap();
        let b = run_pipeline(&doc("قیمت 999 تومان"), &cfg, &res).unwrap();
        assert_eq!(a.terms, b.terms);
        assert_eq!(a.terms[1], "#");
    }

    #[test]
    fn missing_resource_is_reported() {
        let res = Resources::bare();
        let mut cfg = norm_tok_config();
        cfg.synonym_recognition = true;
        let err = run_pipeline(&doc("الف"), &cfg, &res).unwrap_err();
        assert!(matches!(err, Error::ResourceMissing { stage: "synonym recognition", .. }));
    }

    #[test]
    fn render_term_precedence() {
        let mut cfg = norm_tok_config();
        cfg.stemming = true;
        let mut tok = Token::word("پردازنده\u{200C}ها");
        tok.stem = Some("پردازنده".into());
        assert_eq!(render_term(&tok, &cfg), "پردازنده");

        let mut cfg = norm_tok_config();
        cfg.pos_tagging = true;
        let mut tok = Token::word("رفت");
        tok.pos = Some("V".into());
        assert_eq!(render_term(&tok, &cfg), "رفت/V");

        let mut tok = Token::number("#");
        tok.pos = Some("NUM".into());
        assert_eq!(render_term(&tok, &cfg), "#/NUM");
    }

    #[test]
    fn kv_round_trip_and_validation() {
        let mut cfg = PipelineConfig::minimal("2gram+clough".parse().unwrap());
        cfg.normalizing = true;
        cfg.stop_word = StopWordMode::Deep;
        cfg.lemmatization = true;
        let text = cfg.to_kv_string();
        let parsed = PipelineConfig::from_kv_string(&text).unwrap();
        assert_eq!(parsed, cfg);
        assert_eq!(parsed.fingerprint(), cfg.fingerprint());

        let rejected = PipelineConfig::from_kv_string(&text.replace(
            "tokenization = true",
            "tokenization = false",
        ));
        assert!(matches!(rejected, Err(Error::InvalidConfig(_))));

        let missing = PipelineConfig::from_kv_string("normalizing = true\n");
        assert!(matches!(missing, Err(Error::InvalidConfig(_))));
    }

    #[test]
    fn json_round_trip() {
        let mut cfg = PipelineConfig::minimal("3gram+jaccard".parse().unwrap());
        cfg.stop_word = StopWordMode::Shallow;
        let json = serde_json::to_string(&cfg).unwrap();
        assert!(json.contains("\"3gram+jaccard\""));
        assert!(json.contains("\"shallow\""));
        let parsed = PipelineConfig::from_json(&json).unwrap();
        assert_eq!(parsed, cfg);
    }

    #[test]
    fn fingerprints_differ_between_configs() {
        let a = PipelineConfig::minimal("lcs".parse().unwrap());
        let mut b = a.clone();
        b.normalizing = true;
        assert_ne!(a.fingerprint(), b.fingerprint());
    }
}
