//! Twist-spun 2-knot groups, with or without unknotted `P^2` summands.
//!
//! For a knot group `< a1..ak | R >` with meridian `a1`, the `n`-twist spun
//! sphere has group `< a1..ak | R, a1^n ai a1^-n ai^-1 (i != 1) >`, and a
//! connected sum with `P1(+-2)` adds `a1^2`.

use std::fmt;

use thiserror::Error;

use crate::codec::{parse_knot, CodecError, KnotNotation};
use crate::presentation::MarkedPresentation;
use crate::wirtinger::{longitude_word, schubert_longitude, schubert_presentation, wirtinger_presentation};
use crate::word::Word;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SpinError {
    #[error("twist relators for n = {n} not found in the presentation")]
    ParityMismatch { n: u32 },
    #[error("presentation lacks the meridian-square relator")]
    MissingMeridianSquare,
    #[error("unsupported summand P{genus}({euler:+})")]
    InvalidSummand { genus: u8, euler: i8 },
    #[error("meridian power must be at least 1")]
    ZeroPower,
}

/// A classical knot together with its group presentation and a preferred
/// longitude word based at the meridian.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Knot {
    name: String,
    notation: KnotNotation,
    presentation: MarkedPresentation,
    longitude: Word,
    expected_det: Option<u64>,
}

impl Knot {
    pub fn new(name: impl Into<String>, notation: KnotNotation) -> Self {
        let (presentation, longitude) = match &notation {
            KnotNotation::Diagram(d) => (wirtinger_presentation(d), longitude_word(d, 1)),
            KnotNotation::TwoBridge(f) => (schubert_presentation(f), schubert_longitude(f)),
        };
        Knot {
            name: name.into(),
            notation,
            presentation,
            longitude,
            expected_det: None,
        }
    }

    pub fn parse(name: impl Into<String>, text: &str) -> Result<Self, CodecError> {
        Ok(Knot::new(name, parse_knot(text)?))
    }

    /// Records an expected determinant. It takes precedence over the one
    /// read off a fraction, so a wrong record is caught downstream.
    pub fn with_determinant(mut self, det: Option<u64>) -> Self {
        self.expected_det = det;
        self
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn notation(&self) -> &KnotNotation {
        &self.notation
    }

    pub fn presentation(&self) -> &MarkedPresentation {
        &self.presentation
    }

    pub fn longitude(&self) -> &Word {
        &self.longitude
    }

    pub fn is_two_bridge(&self) -> bool {
        matches!(self.notation, KnotNotation::TwoBridge(_))
    }

    /// The recorded determinant, else `p` for a fraction `p/q`.
    pub fn determinant(&self) -> Option<u64> {
        match &self.notation {
            _ if self.expected_det.is_some() => self.expected_det,
            KnotNotation::TwoBridge(f) => Some(f.determinant()),
            KnotNotation::Diagram(_) => None,
        }
    }
}

/// The relator `a_m^n a_i a_m^-n a_i^-1`, cyclically reduced.
pub fn twist_relator(meridian: usize, i: usize, n: u32) -> Word {
    Word::power(meridian, n as i64)
        .concat(&Word::generator(i))
        .concat(&Word::power(meridian, -(n as i64)))
        .concat(&Word::power(i, -1))
        .cyclic_reduce()
}

/// Appends the twist relators for every non-meridian generator. For `n = 0`
/// they are all trivial and nothing is appended.
pub fn twist_spin_presentation(p: &MarkedPresentation, n: u32) -> MarkedPresentation {
    let m = p.meridian();
    let extra: Vec<Word> = (1..=p.generator_count())
        .filter(|&i| i != m)
        .map(|i| twist_relator(m, i, n))
        .filter(|w| !w.is_empty())
        .collect();
    p.with_relators(extra)
}

/// Connected sum with an unknotted projective plane: adds `a_m^2`.
pub fn connect_sum_rp2(p: &MarkedPresentation) -> MarkedPresentation {
    p.with_relators([Word::power(p.meridian(), 2)])
}

/// Adds `a_m^m`.
pub fn meridian_power_quotient(p: &MarkedPresentation, m: u32) -> Result<MarkedPresentation, SpinError> {
    if m == 0 {
        return Err(SpinError::ZeroPower);
    }
    Ok(p.with_relators([Word::power(p.meridian(), m as i64)]))
}

/// Rewrites the `n`-twist relators of a presentation containing `a_m^2`:
/// for odd `n` each becomes the commutator `[a_m, a_i]`, for even `n` each
/// is dropped. All other relators keep their order; commutators go last.
pub fn parity_reduce(p: &MarkedPresentation, n: u32) -> Result<MarkedPresentation, SpinError> {
    let m = p.meridian();
    let square = Word::power(m, 2);
    if !p.relators().contains(&square) {
        return Err(SpinError::MissingMeridianSquare);
    }
    let others: Vec<usize> = (1..=p.generator_count()).filter(|&i| i != m).collect();
    let mut remaining: Vec<Option<&Word>> = p.relators().iter().map(Some).collect();
    for &i in &others {
        let t = twist_relator(m, i, n);
        if t.is_empty() {
            continue;
        }
        // Take the last occurrence: twist relators are appended after R.
        let slot = remaining
            .iter()
            .rposition(|r| *r == Some(&t))
            .ok_or(SpinError::ParityMismatch { n })?;
        remaining[slot] = None;
    }
    let mut relators: Vec<Word> = remaining.into_iter().flatten().cloned().collect();
    if n % 2 == 1 {
        relators.extend(
            others
                .iter()
                .map(|&i| Word::commutator(&Word::generator(m), &Word::generator(i))),
        );
    }
    Ok(p.with_relator_list(relators))
}

/// An unknotted non-orientable summand `P_g(e)`. The sign of the Euler
/// number is recorded but does not change the group.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ProjectivePlane {
    genus: u8,
    euler: i8,
}

impl ProjectivePlane {
    pub fn new(genus: u8, euler: i8) -> Result<Self, SpinError> {
        if !matches!(genus, 1 | 3) || !matches!(euler, 2 | -2) {
            return Err(SpinError::InvalidSummand { genus, euler });
        }
        Ok(ProjectivePlane { genus, euler })
    }

    pub fn genus(&self) -> u8 {
        self.genus
    }

    pub fn euler(&self) -> i8 {
        self.euler
    }
}

impl fmt::Display for ProjectivePlane {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "P{}({:+})", self.genus, self.euler)
    }
}

/// `tau^n K # P_g1(e1) # ...`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SurfaceKnotSpec {
    knot: Knot,
    twist: u32,
    summands: Vec<ProjectivePlane>,
}

impl SurfaceKnotSpec {
    /// The `n`-twist spun sphere of `knot`.
    pub fn tau(knot: Knot, twist: u32) -> Self {
        SurfaceKnotSpec {
            knot,
            twist,
            summands: Vec::new(),
        }
    }

    pub fn connect_sum(mut self, genus: u8, euler: i8) -> Result<Self, SpinError> {
        self.summands.push(ProjectivePlane::new(genus, euler)?);
        Ok(self)
    }

    pub fn knot(&self) -> &Knot {
        &self.knot
    }

    pub fn twist(&self) -> u32 {
        self.twist
    }

    pub fn summands(&self) -> &[ProjectivePlane] {
        &self.summands
    }

    /// Group of the complement. Every unknotted `P_g(+-2)` summand adds the
    /// same relator `a1^2`, so repeated summands add it once.
    pub fn presentation(&self) -> MarkedPresentation {
        let spun = twist_spin_presentation(self.knot.presentation(), self.twist);
        if self.summands.is_empty() {
            spun
        } else {
            connect_sum_rp2(&spun)
        }
    }
}

impl fmt::Display for SurfaceKnotSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "tau^{} {}", self.twist, self.knot.name())?;
        for s in &self.summands {
            write!(f, " # {s}")?;
        }
        Ok(())
    }
}
