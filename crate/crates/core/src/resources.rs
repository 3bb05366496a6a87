//! Loaded lexicons and the normalizer, shared read-only by every pipeline
//! run.
//!
//! Resources come either compiled in ([`Resources::builtin`]) or from a
//! directory of UTF-8 files ([`Resources::load_dir`]) using the same
//! formats. A missing file leaves that lexicon absent; enabling the
//! corresponding stage then fails with [`Error::ResourceMissing`].

use std::fs;
use std::path::Path;

use crate::error::{Error, Result};
use crate::lexicon::{LemmaLexicon, PosLexicon, StemRuleSet, StopWordDepth, StopWordTable, SynonymLexicon};
use crate::text::{CharMap, Normalizer};

/// Expected file names inside a resources directory.
pub const CHARMAP_FILE: &str = "charmap.tsv";
pub const STOPWORDS_SHALLOW_FILE: &str = "stopwords_shallow.txt";
pub const STOPWORDS_DEEP_FILE: &str = "stopwords_deep.txt";
pub const SYNONYMS_FILE: &str = "synonyms.tsv";
pub const STEMS_FILE: &str = "stems.tsv";
pub const LEMMAS_FILE: &str = "lemmas.tsv";
pub const POS_FILE: &str = "pos.tsv";

#[derive(Debug, Clone)]
pub struct Resources {
    pub normalizer: Normalizer,
    stop_shallow: Option<StopWordTable>,
    stop_deep: Option<StopWordTable>,
    synonyms: Option<SynonymLexicon>,
    stems: Option<StemRuleSet>,
    lemmas: Option<LemmaLexicon>,
    pos: Option<PosLexicon>,
}

impl Resources {
    /// A normalizer only; every lexicon-backed stage will report
    /// `ResourceMissing`. Useful as a base for tests.
    pub fn bare() -> Self {
        Self {
            normalizer: Normalizer::default(),
            stop_shallow: None,
            stop_deep: None,
            synonyms: None,
            stems: None,
            lemmas: None,
            pos: None,
        }
    }

    /// The lexicons shipped with the crate.
    pub fn builtin() -> Self {
        let (shallow, deep) = StopWordTable::load_pair(
            include_str!("../data/stopwords_shallow.txt"),
            include_str!("../data/stopwords_deep.txt"),
        );
        Self {
            normalizer: Normalizer::default(),
            stop_shallow: Some(shallow),
            stop_deep: Some(deep),
            synonyms: Some(
                SynonymLexicon::parse(include_str!("../data/synonyms.tsv"), SYNONYMS_FILE)
                    .expect("builtin synonyms are valid"),
            ),
            stems: Some(
                StemRuleSet::parse(include_str!("../data/stems.tsv"), STEMS_FILE)
                    .expect("builtin stem rules are valid"),
            ),
            lemmas: Some(
                LemmaLexicon::parse(include_str!("../data/lemmas.tsv"), LEMMAS_FILE)
                    .expect("builtin lemmas are valid"),
            ),
            pos: Some(
                PosLexicon::parse(include_str!("../data/pos.tsv"), POS_FILE)
                    .expect("builtin pos lexicon is valid"),
            ),
        }
    }

    /// Load a resources directory. Absent files leave the lexicon
    /// unavailable rather than falling back to the builtin data, so a
    /// directory always means exactly what it contains.
    pub fn load_dir(dir: &Path) -> Result<Self> {
        if !dir.is_dir() {
            return Err(Error::BadResource {
                file: dir.display().to_string(),
                line: 0,
                reason: "not a directory".into(),
            });
        }
        let read = |name: &str| -> Result<Option<String>> {
            let path = dir.join(name);
            if !path.exists() {
                return Ok(None);
            }
            Ok(Some(fs::read_to_string(&path).map_err(|e| Error::BadResource {
                file: path.display().to_string(),
                line: 0,
                reason: e.to_string(),
            })?))
        };

        let normalizer = match read(CHARMAP_FILE)? {
            Some(content) => Normalizer::with_char_map(CharMap::parse(&content, CHARMAP_FILE)?),
            None => Normalizer::default(),
        };
        let (stop_shallow, stop_deep) =
            match (read(STOPWORDS_SHALLOW_FILE)?, read(STOPWORDS_DEEP_FILE)?) {
                (Some(s), Some(d)) => {
                    let (shallow, deep) = StopWordTable::load_pair(&s, &d);
                    (Some(shallow), Some(deep))
                }
                (Some(s), None) => {
                    let (shallow, _) = StopWordTable::load_pair(&s, "");
                    (Some(shallow), None)
                }
                (None, Some(d)) => {
                    let (_, deep) = StopWordTable::load_pair("", &d);
                    (None, Some(deep))
                }
                (None, None) => (None, None),
            };
        Ok(Self {
            normalizer,
            stop_shallow,
            stop_deep,
            synonyms: read(SYNONYMS_FILE)?
                .map(|c| SynonymLexicon::parse(&c, SYNONYMS_FILE))
                .transpose()?,
            stems: read(STEMS_FILE)?
                .map(|c| StemRuleSet::parse(&c, STEMS_FILE))
                .transpose()?,
            lemmas: read(LEMMAS_FILE)?
                .map(|c| LemmaLexicon::parse(&c, LEMMAS_FILE))
                .transpose()?,
            pos: read(POS_FILE)?
                .map(|c| PosLexicon::parse(&c, POS_FILE))
                .transpose()?,
        })
    }

    pub fn stop_words(&self, depth: StopWordDepth) -> Result<&StopWordTable> {
        let (slot, resource) = match depth {
            StopWordDepth::Shallow => (&self.stop_shallow, "shallow stop-word table"),
            StopWordDepth::Deep => (&self.stop_deep, "deep stop-word table"),
        };
        slot.as_ref()
            .ok_or(Error::ResourceMissing { stage: "stop-word removal", resource })
    }

    pub fn synonyms(&self) -> Result<&SynonymLexicon> {
        self.synonyms
            .as_ref()
            .ok_or(Error::ResourceMissing { stage: "synonym recognition", resource: "synonym lexicon" })
    }

    pub fn stems(&self) -> Result<&StemRuleSet> {
        self.stems
            .as_ref()
            .ok_or(Error::ResourceMissing { stage: "stemming", resource: "stem rule set" })
    }

    pub fn lemmas(&self) -> Result<&LemmaLexicon> {
        self.lemmas
            .as_ref()
            .ok_or(Error::ResourceMissing { stage: "lemmatization", resource: "lemma lexicon" })
    }

    pub fn pos(&self) -> Result<&PosLexicon> {
        self.pos
            .as_ref()
            .ok_or(Error::ResourceMissing { stage: "pos tagging", resource: "pos lexicon" })
    }

    pub fn with_synonyms(mut self, lex: SynonymLexicon) -> Self {
        self.synonyms = Some(lex);
        self
    }

    pub fn with_lemmas(mut self, lex: LemmaLexicon) -> Self {
        self.lemmas = Some(lex);
        self
    }

    pub fn with_stems(mut self, rules: StemRuleSet) -> Self {
        self.stems = Some(rules);
        self
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn builtin_resources_are_complete() {
        let r = Resources::builtin();
        assert!(r.stop_words(StopWordDepth::Shallow).is_ok());
        assert!(r.stop_words(StopWordDepth::Deep).is_ok());
        assert!(r.synonyms().is_ok());
        assert!(r.stems().is_ok());
        assert!(r.lemmas().is_ok());
        assert!(r.pos().is_ok());
        // The shipped deep table really is a superset of the shallow one.
        let shallow = r.stop_words(StopWordDepth::Shallow).unwrap();
        let deep = r.stop_words(StopWordDepth::Deep).unwrap();
        assert!(deep.is_superset_of(shallow));
        assert!(shallow.len() >= 30 && deep.len() >= 150);
    }

    #[test]
    fn bare_resources_report_missing() {
        let r = Resources::bare();
        let err = r.synonyms().unwrap_err();
        assert!(err.is_resource_error());
        assert!(err.to_string().contains("synonym"));
    }

    #[test]
    fn load_dir_on_crate_data_matches_builtin_shape() {
        let dir = Path::new(env!("CARGO_MANIFEST_DIR")).join("data");
        let r = Resources::load_dir(&dir).unwrap();
        assert!(r.synonyms().is_ok());
        assert!(r.stems().is_ok());
        assert!(r.lemmas().is_ok());
        assert!(r.pos().is_ok());
        assert!(r.stop_words(StopWordDepth::Deep).is_ok());
    }

    #[test]
    fn load_dir_rejects_missing_directory() {
        let err = Resources::load_dir(Path::new("/nonexistent/resources")).unwrap_err();
        assert!(err.is_resource_error());
    }

    #[test]
    fn load_dir_with_partial_files() {
        let tmp = tempfile::tempdir().unwrap();
        std::fs::write(tmp.path().join(SYNONYMS_FILE), "خانه\tمنزل\n").unwrap();
        let r = Resources::load_dir(tmp.path()).unwrap();
        assert!(r.synonyms().is_ok());
        assert!(r.stems().is_err());
        assert!(r.stop_words(StopWordDepth::Shallow).is_err());
    }
}
