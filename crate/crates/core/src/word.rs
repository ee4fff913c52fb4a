//! Words in a free group on generators `a1, a2, ...`.

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

/// A word in the free group. Letters are signed 1-based generator indices:
/// `3` stands for `a3` and `-3` for `a3^-1`. Zero is never a letter.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Word(Vec<i32>);

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordParseError {
    #[error("unexpected token {0:?} in word")]
    BadToken(String),
    #[error("generator index must be positive in {0:?}")]
    ZeroGenerator(String),
}

impl Word {
    /// Builds a word from raw letters without reducing it.
    ///
    /// Panics if a letter is zero.
    pub fn new(letters: Vec<i32>) -> Self {
        assert!(letters.iter().all(|&l| l != 0), "zero is not a letter");
        Word(letters)
    }

    pub fn empty() -> Self {
        Word(Vec::new())
    }

    /// The word `a_g`.
    pub fn generator(g: usize) -> Self {
        Word::power(g, 1)
    }

    /// The word `a_g^e`.
    pub fn power(g: usize, e: i64) -> Self {
        assert!(g >= 1, "generators are 1-based");
        let letter = if e >= 0 { g as i32 } else { -(g as i32) };
        Word(vec![letter; e.unsigned_abs() as usize])
    }

    /// `[x, y] = x y x^-1 y^-1`, freely reduced.
    pub fn commutator(x: &Word, y: &Word) -> Word {
        x.concat(y).concat(&x.inverse()).concat(&y.inverse()).free_reduce()
    }

    pub fn letters(&self) -> &[i32] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn inverse(&self) -> Word {
        Word(self.0.iter().rev().map(|&l| -l).collect())
    }

    /// Concatenation, without reduction.
    pub fn concat(&self, other: &Word) -> Word {
        let mut letters = Vec::with_capacity(self.len() + other.len());
        letters.extend_from_slice(&self.0);
        letters.extend_from_slice(&other.0);
        Word(letters)
    }

    /// Cancels adjacent `x x^-1` pairs until none remain.
    pub fn free_reduce(&self) -> Word {
        let mut out: Vec<i32> = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if out.last() == Some(&-l) {
                out.pop();
            } else {
                out.push(l);
            }
        }
        Word(out)
    }

    /// Free reduction followed by stripping cancelling first/last letter pairs.
    pub fn cyclic_reduce(&self) -> Word {
        let reduced = self.free_reduce().0;
        let (mut lo, mut hi) = (0, reduced.len());
        while hi - lo >= 2 && reduced[lo] == -reduced[hi - 1] {
            lo += 1;
            hi -= 1;
        }
        Word(reduced[lo..hi].to_vec())
    }

    pub fn is_freely_reduced(&self) -> bool {
        self.0.windows(2).all(|p| p[0] != -p[1])
    }

    pub fn is_cyclically_reduced(&self) -> bool {
        self.is_freely_reduced()
            && (self.len() < 2 || self.0[0] != -self.0[self.len() - 1])
    }

    /// The cyclic rotation starting at position `k`.
    pub fn rotate(&self, k: usize) -> Word {
        if self.is_empty() {
            return Word::empty();
        }
        let k = k % self.len();
        let mut letters = self.0[k..].to_vec();
        letters.extend_from_slice(&self.0[..k]);
        Word(letters)
    }

    pub fn exponent_sum(&self, g: usize) -> i64 {
        self.0
            .iter()
            .map(|&l| match l.unsigned_abs() as usize == g {
                true => l.signum() as i64,
                false => 0,
            })
            .sum()
    }

    /// Sum of all exponents, i.e. the image in the abelianization of a
    /// presentation whose generators are all conjugate.
    pub fn total_exponent(&self) -> i64 {
        self.0.iter().map(|&l| l.signum() as i64).sum()
    }

    /// Number of occurrences of `a_g^{+-1}`.
    pub fn occurrences(&self, g: usize) -> usize {
        self.0.iter().filter(|l| l.unsigned_abs() as usize == g).count()
    }

    /// Largest generator index used, or 0 for the empty word.
    pub fn max_generator(&self) -> usize {
        self.0.iter().map(|l| l.unsigned_abs() as usize).max().unwrap_or(0)
    }

    /// Replaces every occurrence of `a_g` by `image` (and `a_g^-1` by its
    /// inverse). The result is not reduced.
    pub fn substitute(&self, g: usize, image: &Word) -> Word {
        let inv = image.inverse();
        let mut letters = Vec::with_capacity(self.len());
        for &l in &self.0 {
            if l.unsigned_abs() as usize == g {
                letters.extend_from_slice(if l > 0 { &image.0 } else { &inv.0 });
            } else {
                letters.push(l);
            }
        }
        Word(letters)
    }

    /// Applies `f` to every generator index, keeping signs.
    pub fn relabel(&self, f: impl Fn(usize) -> usize) -> Word {
        Word(
            self.0
                .iter()
                .map(|&l| {
                    let g = f(l.unsigned_abs() as usize) as i32;
                    if l > 0 {
                        g
                    } else {
                        -g
                    }
                })
                .collect(),
        )
    }
}

/// Free reduction as a free function.
pub fn free_reduce(w: &Word) -> Word {
    w.free_reduce()
}

impl From<Vec<i32>> for Word {
    fn from(letters: Vec<i32>) -> Self {
        Word::new(letters)
    }
}

impl fmt::Display for Word {
    /// Renders runs of a repeated letter as powers: `a1^2 a2^-1`. The empty
    /// word renders as `1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_empty() {
            return f.write_str("1");
        }
        let mut first = true;
        let mut i = 0;
        while i < self.0.len() {
            let l = self.0[i];
            let mut run = 1;
            while i + run < self.0.len() && self.0[i + run] == l {
                run += 1;
            }
            if !first {
                f.write_str(" ")?;
            }
            first = false;
            let e = run as i64 * l.signum() as i64;
            if e == 1 {
                write!(f, "a{}", l.unsigned_abs())?;
            } else {
                write!(f, "a{}^{}", l.unsigned_abs(), e)?;
            }
            i += run;
        }
        Ok(())
    }
}

impl FromStr for Word {
    type Err = WordParseError;

    /// Parses whitespace-separated factors `aN` or `aN^E`; `1` is the empty
    /// word.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let mut letters = Vec::new();
        for tok in s.split_whitespace() {
            if tok == "1" {
                continue;
            }
            let body = tok
                .strip_prefix('a')
                .ok_or_else(|| WordParseError::BadToken(tok.to_string()))?;
            let (gen, exp) = match body.split_once('^') {
                Some((g, e)) => (g, e),
                None => (body, "1"),
            };
            let g: u32 = gen
                .parse()
                .map_err(|_| WordParseError::BadToken(tok.to_string()))?;
            if g == 0 {
                return Err(WordParseError::ZeroGenerator(tok.to_string()));
            }
            let e: i64 = exp
                .parse()
                .map_err(|_| WordParseError::BadToken(tok.to_string()))?;
            letters.extend(Word::power(g as usize, e).0);
        }
        Ok(Word(letters))
    }
}
