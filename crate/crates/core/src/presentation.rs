//! Finitely presented groups with a marked meridian generator.

use std::fmt;
use std::str::FromStr;

use serde::Serialize;
use thiserror::Error;

use crate::word::{Word, WordParseError};

/// Where a presentation came from.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Provenance {
    Wirtinger,
    Schubert,
    Derived,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PresentationError {
    #[error("presentation needs at least one generator")]
    NoGenerators,
    #[error("relator {relator} uses a{generator} but only {count} generators exist")]
    GeneratorOutOfRange {
        relator: usize,
        generator: usize,
        count: usize,
    },
    #[error("meridian a{0} is not a generator")]
    BadMeridian(usize),
    #[error("malformed presentation text: {0}")]
    Malformed(String),
    #[error(transparent)]
    Word(#[from] WordParseError),
}

/// `< a1, ..., ak | r1, r2, ... >` together with the index of the meridian
/// generator (1-based). Relators are stored cyclically reduced; empty
/// relators are kept so per-crossing bookkeeping survives.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct MarkedPresentation {
    generator_count: usize,
    relators: Vec<Word>,
    meridian: usize,
    provenance: Provenance,
}

impl MarkedPresentation {
    pub fn new(
        generator_count: usize,
        relators: Vec<Word>,
        meridian: usize,
        provenance: Provenance,
    ) -> Result<Self, PresentationError> {
        if generator_count == 0 {
            return Err(PresentationError::NoGenerators);
        }
        if meridian == 0 || meridian > generator_count {
            return Err(PresentationError::BadMeridian(meridian));
        }
        for (i, r) in relators.iter().enumerate() {
            let g = r.max_generator();
            if g > generator_count {
                return Err(PresentationError::GeneratorOutOfRange {
                    relator: i,
                    generator: g,
                    count: generator_count,
                });
            }
        }
        Ok(MarkedPresentation {
            generator_count,
            relators: relators.iter().map(Word::cyclic_reduce).collect(),
            meridian,
            provenance,
        })
    }

    pub fn generator_count(&self) -> usize {
        self.generator_count
    }

    pub fn relators(&self) -> &[Word] {
        &self.relators
    }

    /// 1-based index of the marked meridian.
    pub fn meridian(&self) -> usize {
        self.meridian
    }

    pub fn meridian_word(&self) -> Word {
        Word::generator(self.meridian)
    }

    pub fn provenance(&self) -> Provenance {
        self.provenance
    }

    /// Relators with empty words removed.
    pub fn nontrivial_relators(&self) -> impl Iterator<Item = &Word> {
        self.relators.iter().filter(|r| !r.is_empty())
    }

    /// A copy with `extra` appended (cyclically reduced) and provenance
    /// set to [`Provenance::Derived`].
    pub fn with_relators<I: IntoIterator<Item = Word>>(&self, extra: I) -> Self {
        let mut out = self.clone();
        out.relators
            .extend(extra.into_iter().map(|w| w.cyclic_reduce()));
        out.provenance = Provenance::Derived;
        for r in &out.relators {
            assert!(r.max_generator() <= out.generator_count);
        }
        out
    }

    /// A copy with the relator list replaced.
    pub fn with_relator_list(&self, relators: Vec<Word>) -> Self {
        MarkedPresentation::new(
            self.generator_count,
            relators,
            self.meridian,
            Provenance::Derived,
        )
        .expect("relators drawn from the same generating set")
    }

    /// Sorted relator list, usable as a multiset key.
    pub fn relator_multiset(&self) -> Vec<Word> {
        let mut r = self.relators.clone();
        r.sort();
        r
    }

    /// Whether `w` only mentions generators of this presentation.
    pub fn accepts(&self, w: &Word) -> bool {
        w.max_generator() <= self.generator_count
    }
}

impl fmt::Display for MarkedPresentation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("< ")?;
        for g in 1..=self.generator_count {
            if g > 1 {
                f.write_str(", ")?;
            }
            write!(f, "a{g}")?;
        }
        f.write_str(" |")?;
        for (i, r) in self.relators.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, " {r}")?;
        }
        f.write_str(" >")
    }
}

impl FromStr for MarkedPresentation {
    type Err = PresentationError;

    /// Parses the rendered form `< a1, a2 | w1, w2 >`. The meridian is `a1`
    /// and provenance is `Derived`.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let body = s
            .trim()
            .strip_prefix('<')
            .and_then(|b| b.strip_suffix('>'))
            .ok_or_else(|| PresentationError::Malformed("missing angle brackets".into()))?;
        let (gens, rels) = body
            .split_once('|')
            .ok_or_else(|| PresentationError::Malformed("missing '|'".into()))?;
        let gens: Vec<&str> = gens.split(',').map(str::trim).collect();
        for (i, g) in gens.iter().enumerate() {
            if *g != format!("a{}", i + 1) {
                return Err(PresentationError::Malformed(format!(
                    "generator {} should be a{}",
                    g,
                    i + 1
                )));
            }
        }
        let relators = if rels.trim().is_empty() {
            Vec::new()
        } else {
            rels.split(',')
                .map(|r| r.parse::<Word>())
                .collect::<Result<Vec<_>, _>>()?
        };
        MarkedPresentation::new(gens.len(), relators, 1, Provenance::Derived)
    }
}
