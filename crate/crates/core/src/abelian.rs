//! Abelian invariants via integer Smith normal form.

use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use crate::presentation::MarkedPresentation;

/// Dense integer matrix with arbitrary-precision entries.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (r, row) in rows.iter().enumerate() {
            assert_eq!(row.len(), cols, "ragged matrix");
            for (c, v) in row.iter().enumerate() {
                m[(r, c)] = v.clone().into();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn row(&self, r: usize) -> &[BigInt] {
        &self.data[r * self.cols..(r + 1) * self.cols]
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for c in 0..self.cols {
                self.data.swap(a * self.cols + c, b * self.cols + c);
            }
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        if a != b {
            for r in 0..self.rows {
                self.data.swap(r * self.cols + a, r * self.cols + b);
            }
        }
    }

    /// row[dst] -= k * row[src]
    fn sub_row(&mut self, dst: usize, src: usize, k: &BigInt) {
        for c in 0..self.cols {
            let v = &self.data[src * self.cols + c] * k;
            self.data[dst * self.cols + c] -= v;
        }
    }

    /// col[dst] -= k * col[src]
    fn sub_col(&mut self, dst: usize, src: usize, k: &BigInt) {
        for r in 0..self.rows {
            let v = &self.data[r * self.cols + src] * k;
            self.data[r * self.cols + dst] -= v;
        }
    }

    /// Nonzero diagonal of the Smith normal form: positive entries with
    /// `d1 | d2 | ...`.
    pub fn smith_diagonal(&self) -> Vec<BigInt> {
        let mut m = self.clone();
        let mut diag = Vec::new();
        let size = m.rows.min(m.cols);
        for t in 0..size {
            let Some((pr, pc)) = m.min_abs_entry(t) else {
                break;
            };
            m.swap_rows(t, pr);
            m.swap_cols(t, pc);
            loop {
                let pivot = m[(t, t)].clone();
                let mut dirty = false;
                for r in t + 1..m.rows {
                    if !m[(r, t)].is_zero() {
                        let q = m[(r, t)].div_floor(&pivot);
                        m.sub_row(r, t, &q);
                        dirty |= !m[(r, t)].is_zero();
                    }
                }
                for c in t + 1..m.cols {
                    if !m[(t, c)].is_zero() {
                        let q = m[(t, c)].div_floor(&pivot);
                        m.sub_col(c, t, &q);
                        dirty |= !m[(t, c)].is_zero();
                    }
                }
                if dirty {
                    // A smaller remainder sits in row or column t.
                    let (pr, pc) = m.min_abs_in_cross(t);
                    m.swap_rows(t, pr);
                    m.swap_cols(t, pc);
                    continue;
                }
                // Pivot must divide the rest; otherwise fold the offending
                // row into row t and go again.
                let bad = (t + 1..m.rows).find(|&r| {
                    (t + 1..m.cols).any(|c| !(&m[(r, c)] % &pivot).is_zero())
                });
                match bad {
                    Some(r) => {
                        let minus_one = -BigInt::one();
                        m.sub_row(t, r, &minus_one);
                    }
                    None => break,
                }
            }
            diag.push(m[(t, t)].abs());
        }
        diag
    }

    fn min_abs_entry(&self, t: usize) -> Option<(usize, usize)> {
        let mut best: Option<(usize, usize)> = None;
        for r in t..self.rows {
            for c in t..self.cols {
                let v = &self[(r, c)];
                if v.is_zero() {
                    continue;
                }
                if best.is_none_or(|(br, bc)| v.abs() < self[(br, bc)].abs()) {
                    best = Some((r, c));
                }
            }
        }
        best
    }

    fn min_abs_in_cross(&self, t: usize) -> (usize, usize) {
        let mut best = (t, t);
        let cand = (t..self.rows)
            .map(|r| (r, t))
            .chain((t..self.cols).map(|c| (t, c)));
        for (r, c) in cand {
            let v = &self[(r, c)];
            if !v.is_zero() && (self[best].is_zero() || v.abs() < self[best].abs()) {
                best = (r, c);
            }
        }
        best
    }
}

impl std::ops::Index<(usize, usize)> for IntMatrix {
    type Output = BigInt;
    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        &self.data[r * self.cols + c]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        &mut self.data[r * self.cols + c]
    }
}

/// Relator-by-generator exponent-sum matrix.
pub fn relation_matrix(p: &MarkedPresentation) -> IntMatrix {
    let mut m = IntMatrix::zeros(p.relators().len(), p.generator_count());
    for (r, w) in p.relators().iter().enumerate() {
        for g in 1..=p.generator_count() {
            m[(r, g - 1)] = BigInt::from(w.exponent_sum(g));
        }
    }
    m
}

/// Torsion coefficients `d1 | d2 | ...` (each at least 2) and free rank.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AbelianInvariants {
    pub torsion: Vec<BigInt>,
    pub free_rank: usize,
}

impl AbelianInvariants {
    pub fn from_matrix(m: &IntMatrix) -> Self {
        let diag = m.smith_diagonal();
        let rank = diag.len();
        AbelianInvariants {
            torsion: diag.into_iter().filter(|d| !d.is_one()).collect(),
            free_rank: m.cols() - rank,
        }
    }

    /// `Z/n` for a single torsion factor and no free part.
    pub fn is_cyclic_of_order(&self, n: u64) -> bool {
        self.free_rank == 0 && self.torsion == [BigInt::from(n)]
    }

    /// Infinite cyclic.
    pub fn is_z(&self) -> bool {
        self.free_rank == 1 && self.torsion.is_empty()
    }
}

impl fmt::Display for AbelianInvariants {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.torsion.iter().map(|d| format!("Z/{d}")).collect();
        match self.free_rank {
            0 => {}
            1 => parts.push("Z".into()),
            r => parts.push(format!("Z^{r}")),
        }
        if parts.is_empty() {
            f.write_str("0")
        } else {
            f.write_str(&parts.join(" + "))
        }
    }
}

/// Abelianization of the presented group.
pub fn abelian_invariants(p: &MarkedPresentation) -> AbelianInvariants {
    AbelianInvariants::from_matrix(&relation_matrix(p))
}
