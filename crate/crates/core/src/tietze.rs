//! Tietze simplification restricted to moves that keep the group unchanged:
//! eliminating a generator that occurs once in some relator, replacing a
//! relator by a shorter one obtained by substituting another relator, and
//! dropping trivial or duplicate relators. The marked meridian is never
//! eliminated.

use std::collections::BTreeSet;

use num_integer::Integer;
use thiserror::Error;

use crate::presentation::MarkedPresentation;
use crate::word::Word;

/// The work budget ran out; `best` is the simplification reached so far.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("tietze budget exceeded")]
pub struct BudgetExceeded {
    pub best: MarkedPresentation,
}

struct State {
    alive: Vec<bool>,
    relators: Vec<Word>,
    meridian: usize,
    budget: u64,
}

/// Canonical representative of a relator up to rotation and inversion.
fn relator_key(w: &Word) -> Word {
    let inv = w.inverse();
    (0..w.len().max(1))
        .flat_map(|k| [w.rotate(k), inv.rotate(k)])
        .min()
        .unwrap_or_default()
}

/// If `w` only uses one generator, that generator and the exponent.
fn as_power(w: &Word) -> Option<(usize, i64)> {
    let g = w.letters().first()?.unsigned_abs() as usize;
    (w.occurrences(g) == w.len()).then(|| (g, w.exponent_sum(g)))
}

impl State {
    fn charge(&mut self, units: u64) -> bool {
        if self.budget < units {
            self.budget = 0;
            false
        } else {
            self.budget -= units;
            true
        }
    }

    /// Reduce, merge powers of one generator, drop empties and duplicates.
    fn normalize(&mut self) {
        let mut powers: Vec<i64> = vec![0; self.alive.len() + 1];
        let mut seen = BTreeSet::new();
        let mut out = Vec::new();
        for r in self.relators.drain(..) {
            let r = r.cyclic_reduce();
            if r.is_empty() {
                continue;
            }
            if let Some((g, e)) = as_power(&r) {
                powers[g] = powers[g].gcd(&e);
                continue;
            }
            if seen.insert(relator_key(&r)) {
                out.push(r);
            }
        }
        let mut power_relators: Vec<Word> = powers
            .iter()
            .enumerate()
            .filter(|(_, &e)| e != 0)
            .map(|(g, &e)| Word::power(g, e))
            .collect();
        power_relators.append(&mut out);
        self.relators = power_relators;
    }

    /// Shortest relator defining a non-meridian generator, lowest generator
    /// index on ties.
    fn eliminate_one(&mut self) -> Option<bool> {
        let mut best: Option<(usize, usize, usize)> = None;
        for (i, r) in self.relators.iter().enumerate() {
            for g in 1..self.alive.len() + 1 {
                if g == self.meridian || !self.alive[g - 1] || r.occurrences(g) != 1 {
                    continue;
                }
                let key = (r.len(), g, i);
                if best.is_none_or(|b| key < b) {
                    best = Some(key);
                }
            }
        }
        let (_, g, i) = best?;
        let r = self.relators.remove(i);
        let pos = r
            .letters()
            .iter()
            .position(|l| l.unsigned_abs() as usize == g)
            .expect("generator occurs once");
        let rotated = r.rotate(pos);
        // rotated = g^e C, so g = C^-1 when e = 1 and g = C when e = -1.
        let rest = Word::new(rotated.letters()[1..].to_vec());
        let image = if rotated.letters()[0] > 0 {
            rest.inverse()
        } else {
            rest
        };
        let cost: usize = self.relators.iter().map(Word::len).sum::<usize>() * image.len().max(1);
        if !self.charge(cost as u64 + 1) {
            self.relators.insert(i, r);
            return Some(false);
        }
        for rel in &mut self.relators {
            *rel = rel.substitute(g, &image).cyclic_reduce();
        }
        self.alive[g - 1] = false;
        Some(true)
    }

    /// Replaces some relator by a strictly shorter one using another
    /// relator: if a cyclic conjugate of `s^{+-1}` splits as `u v` with
    /// `|u| > |v|` and `u` occurs cyclically in `r`, swap `u` for `v^-1`.
    fn substitute_one(&mut self) -> Option<bool> {
        let n = self.relators.len();
        for ti in 0..n {
            for si in 0..n {
                if si == ti {
                    continue;
                }
                let target = self.relators[ti].clone();
                let source = self.relators[si].clone();
                if source.len() < 2 || target.is_empty() {
                    continue;
                }
                if !self.charge((target.len() * source.len()) as u64 * 2) {
                    return Some(false);
                }
                if let Some(shorter) = shorten(&target, &source) {
                    self.relators[ti] = shorter;
                    return Some(true);
                }
            }
        }
        None
    }

    fn finish(self, template: &MarkedPresentation) -> MarkedPresentation {
        let mut new_index = vec![0usize; self.alive.len() + 1];
        let mut count = 0;
        for (slot, &alive) in new_index[1..].iter_mut().zip(&self.alive) {
            if alive {
                count += 1;
                *slot = count;
            }
        }
        let relators = self
            .relators
            .iter()
            .map(|r| r.relabel(|g| new_index[g]))
            .collect();
        MarkedPresentation::new(
            count,
            relators,
            new_index[self.meridian],
            template.provenance(),
        )
        .expect("relabelled presentation is well formed")
    }
}

fn shorten(target: &Word, source: &Word) -> Option<Word> {
    let tl = target.len();
    let doubled: Vec<i32> = target.letters().iter().chain(target.letters()).copied().collect();
    for s in [source.clone(), source.inverse()] {
        let sl = s.len();
        for k in 0..sl {
            let rot = s.rotate(k);
            // Longest prefix first.
            for ul in (sl / 2 + 1..=sl.min(tl)).rev() {
                let u = &rot.letters()[..ul];
                let v = Word::new(rot.letters()[ul..].to_vec());
                for start in 0..tl {
                    if doubled[start..start + ul] == *u {
                        let rest: Vec<i32> = doubled[start + ul..start + tl].to_vec();
                        let candidate = v.inverse().concat(&Word::new(rest)).cyclic_reduce();
                        if candidate.len() < tl {
                            return Some(candidate);
                        }
                    }
                }
            }
        }
    }
    None
}

/// Simplifies `p` with at most `budget` units of rewriting work.
pub fn tietze_simplify(
    p: &MarkedPresentation,
    budget: u64,
) -> Result<MarkedPresentation, BudgetExceeded> {
    let mut st = State {
        alive: vec![true; p.generator_count()],
        relators: p.relators().to_vec(),
        meridian: p.meridian(),
        budget,
    };
    loop {
        st.normalize();
        if !st.charge(st.relators.len() as u64 + 1) {
            return Err(BudgetExceeded {
                best: st.finish(p),
            });
        }
        match st.eliminate_one() {
            Some(true) => continue,
            Some(false) => return Err(BudgetExceeded { best: st.finish(p) }),
            None => {}
        }
        match st.substitute_one() {
            Some(true) => continue,
            Some(false) => return Err(BudgetExceeded { best: st.finish(p) }),
            None => break,
        }
    }
    Ok(st.finish(p))
}
