//! Independent oracles for the integration tests. Nothing here calls the
//! library's enumerator or Smith normal form.

#![allow(dead_code)]

use std::collections::{HashSet, VecDeque};

use twistspin::{MarkedPresentation, Word};

fn col(letter: i32) -> usize {
    let g = letter.unsigned_abs() as usize - 1;
    if letter > 0 {
        2 * g
    } else {
        2 * g + 1
    }
}

/// Closure of the Cayley graph from the identity. Define the first missing
/// edge in creation order, then rescan every relator at every vertex until
/// nothing changes, merging vertices naively by rewriting the whole graph.
/// Slow and simple on purpose. `None` once `cap` vertices were created.
pub fn closure_order(p: &MarkedPresentation, cap: usize) -> Option<usize> {
    let k = p.generator_count();
    let rels: Vec<Vec<i32>> = p
        .relators()
        .iter()
        .filter(|r| !r.is_empty())
        .map(|r| r.letters().to_vec())
        .collect();
    let mut g = Graph {
        edges: vec![vec![None; 2 * k]],
        alive: vec![true],
    };
    loop {
        loop {
            let mut changed = false;
            for v in 0..g.edges.len() {
                for r in &rels {
                    if g.alive[v] && g.scan(v, r) {
                        changed = true;
                    }
                }
            }
            if !changed {
                break;
            }
        }
        let hole = (0..g.edges.len())
            .filter(|&v| g.alive[v])
            .find_map(|v| (0..2 * k).find(|&c| g.edges[v][c].is_none()).map(|c| (v, c)));
        match hole {
            None => return Some(g.alive.iter().filter(|&&a| a).count()),
            Some((v, c)) => {
                if g.edges.len() >= cap {
                    return None;
                }
                let w = g.edges.len();
                g.edges.push(vec![None; 2 * k]);
                g.alive.push(true);
                g.edges[v][c] = Some(w);
                g.edges[w][c ^ 1] = Some(v);
            }
        }
    }
}

struct Graph {
    edges: Vec<Vec<Option<usize>>>,
    alive: Vec<bool>,
}

impl Graph {
    /// Reads `r` from `v` forwards and backwards; returns whether anything
    /// was learned.
    fn scan(&mut self, v: usize, r: &[i32]) -> bool {
        let mut f = v;
        let mut i = 0;
        while i < r.len() {
            match self.edges[f][col(r[i])] {
                Some(x) => f = x,
                None => break,
            }
            i += 1;
        }
        if i == r.len() {
            if f != v {
                self.merge(f, v);
                return true;
            }
            return false;
        }
        let mut b = v;
        let mut j = r.len();
        while j > i {
            match self.edges[b][col(-r[j - 1])] {
                Some(x) => b = x,
                None => break,
            }
            j -= 1;
        }
        if j == i {
            if f != b {
                self.merge(f, b);
                return true;
            }
            false
        } else if j == i + 1 {
            self.edges[f][col(r[i])] = Some(b);
            self.edges[b][col(-r[i])] = Some(f);
            true
        } else {
            false
        }
    }

    fn merge(&mut self, a: usize, b: usize) {
        let mut queue = VecDeque::from([(a, b)]);
        while let Some((x, y)) = queue.pop_front() {
            if x == y || !self.alive[x] || !self.alive[y] {
                // Already merged: both were rewritten to a survivor.
                continue;
            }
            let (lo, hi) = (x.min(y), x.max(y));
            self.alive[hi] = false;
            for row in self.edges.iter_mut() {
                for e in row.iter_mut() {
                    if *e == Some(hi) {
                        *e = Some(lo);
                    }
                }
            }
            for (c, e) in std::mem::take(&mut self.edges[hi]).into_iter().enumerate() {
                let Some(t) = e else { continue };
                match self.edges[lo][c] {
                    None => self.edges[lo][c] = Some(t),
                    Some(u) if u != t => queue.push_back((u, t)),
                    _ => {}
                }
            }
            let width = self.edges[lo].len();
            self.edges[hi] = vec![None; width];
            // Pending pairs naming `hi` now mean `lo`.
            for pair in queue.iter_mut() {
                if pair.0 == hi {
                    pair.0 = lo;
                }
                if pair.1 == hi {
                    pair.1 = lo;
                }
            }
        }
    }
}

/// A permutation of `0..n`, acting on the right: `(x * y)(i) = y(x(i))`.
pub type Perm = Vec<u8>;

pub fn identity(n: usize) -> Perm {
    (0..n as u8).collect()
}

pub fn mul(x: &Perm, y: &Perm) -> Perm {
    x.iter().map(|&i| y[i as usize]).collect()
}

pub fn inv(x: &Perm) -> Perm {
    let mut out = vec![0; x.len()];
    for (i, &j) in x.iter().enumerate() {
        out[j as usize] = i as u8;
    }
    out
}

pub fn eval(w: &Word, images: &[Perm], n: usize) -> Perm {
    let mut acc = identity(n);
    for &l in w.letters() {
        let g = &images[l.unsigned_abs() as usize - 1];
        acc = if l > 0 { mul(&acc, g) } else { mul(&acc, &inv(g)) };
    }
    acc
}

/// Size of the group generated by `gens`, by closing under right
/// multiplication.
pub fn closure_size(gens: &[Perm]) -> usize {
    let n = gens.first().map_or(0, Vec::len);
    let mut seen = HashSet::from([identity(n)]);
    let mut queue = VecDeque::from([identity(n)]);
    while let Some(x) = queue.pop_front() {
        for g in gens {
            let y = mul(&x, g);
            if seen.insert(y.clone()) {
                queue.push_back(y);
            }
        }
    }
    seen.len()
}

/// All permutations of `0..n` (n small).
pub fn symmetric_group(n: usize) -> Vec<Perm> {
    fn go(prefix: &mut Perm, n: usize, out: &mut Vec<Perm>) {
        if prefix.len() == n {
            out.push(prefix.clone());
            return;
        }
        for i in 0..n as u8 {
            if !prefix.contains(&i) {
                prefix.push(i);
                go(prefix, n, out);
                prefix.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(&mut Vec::new(), n, &mut out);
    out
}

/// Reflections `i -> c - i (mod p)` of the regular `p`-gon.
pub fn dihedral_reflections(p: usize) -> Vec<Perm> {
    (0..p)
        .map(|c| (0..p).map(|i| ((c + p - i) % p) as u8).collect())
        .collect()
}

/// Every homomorphism sending the meridian to `meridian_image` and the
/// other generators into `pool`, found by backtracking. A relator in which
/// only one generator is still free, occurring once, fixes that generator.
pub fn homomorphisms(
    p: &MarkedPresentation,
    meridian_image: &Perm,
    pool: &[Perm],
) -> Vec<Vec<Perm>> {
    let k = p.generator_count();
    let n = meridian_image.len();
    let rels: Vec<Word> = p.nontrivial_relators().cloned().collect();
    let mut start = vec![None; k];
    start[p.meridian() - 1] = Some(meridian_image.clone());
    let mut out = Vec::new();
    search(&rels, start, pool, n, &mut out);
    out
}

/// Images with unassigned generators read as the identity.
fn partial(assigned: &[Option<Perm>], n: usize) -> Vec<Perm> {
    assigned.iter().map(|a| a.clone().unwrap_or_else(|| identity(n))).collect()
}

fn search(rels: &[Word], mut assigned: Vec<Option<Perm>>, pool: &[Perm], n: usize, out: &mut Vec<Vec<Perm>>) {
    // Propagate.
    loop {
        let mut progress = false;
        for r in rels {
            let free: Vec<usize> = (1..=assigned.len())
                .filter(|&g| r.occurrences(g) > 0 && assigned[g - 1].is_none())
                .collect();
            match free.as_slice() {
                [] => {
                    if eval(r, &partial(&assigned, n), n) != identity(n) {
                        return;
                    }
                }
                [g] if r.occurrences(*g) == 1 => {
                    let pos = r.letters().iter().position(|l| l.unsigned_abs() as usize == *g).unwrap();
                    let rot = r.rotate(pos);
                    let rest = Word::new(rot.letters()[1..].to_vec());
                    // g^e rest = 1.
                    let value = inv(&eval(&rest, &partial(&assigned, n), n));
                    assigned[*g - 1] = Some(if rot.letters()[0] > 0 { value } else { inv(&value) });
                    progress = true;
                }
                _ => {}
            }
        }
        if !progress {
            break;
        }
    }
    // Branch inside the relator closest to being determined.
    let free_in = |r: &Word| -> Vec<usize> {
        (1..=assigned.len())
            .filter(|&g| r.occurrences(g) > 0 && assigned[g - 1].is_none())
            .collect()
    };
    let pick = rels
        .iter()
        .map(free_in)
        .filter(|f| !f.is_empty())
        .min_by_key(Vec::len)
        .map(|f| f[0] - 1)
        .or_else(|| assigned.iter().position(Option::is_none));
    match pick {
        None => out.push(assigned.into_iter().map(Option::unwrap).collect()),
        Some(g) => {
            for x in pool {
                let mut next = assigned.clone();
                next[g] = Some(x.clone());
                search(rels, next, pool, n, out);
            }
        }
    }
}

/// Rank of an integer matrix over the prime field `F_p`.
pub fn rank_mod(rows: &[Vec<i64>], p: i64) -> usize {
    let mut m: Vec<Vec<i64>> = rows
        .iter()
        .map(|r| r.iter().map(|x| x.rem_euclid(p)).collect())
        .collect();
    let cols = m.first().map_or(0, Vec::len);
    let mut rank = 0;
    for c in 0..cols {
        let Some(piv) = (rank..m.len()).find(|&r| m[r][c] != 0) else { continue };
        m.swap(rank, piv);
        let inv_piv = pow_mod(m[rank][c], p - 2, p);
        for r in 0..m.len() {
            if r != rank && m[r][c] != 0 {
                let f = m[r][c] * inv_piv % p;
                let pivot_row = m[rank].clone();
                for (x, y) in m[r].iter_mut().zip(&pivot_row).take(cols) {
                    *x = (*x - f * y).rem_euclid(p);
                }
            }
        }
        rank += 1;
    }
    rank
}

fn pow_mod(mut b: i64, mut e: i64, p: i64) -> i64 {
    let mut acc = 1;
    b %= p;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % p;
        }
        b = b * b % p;
        e >>= 1;
    }
    acc
}

fn cycle_type(x: &Perm) -> Vec<usize> {
    let mut seen = vec![false; x.len()];
    let mut out = Vec::new();
    for i in 0..x.len() {
        let mut j = i;
        let mut len = 0;
        while !seen[j] {
            seen[j] = true;
            j = x[j] as usize;
            len += 1;
        }
        if len > 0 {
            out.push(len);
        }
    }
    out.sort_unstable();
    out
}

/// One representative per non-identity conjugacy class of `S_n`.
pub fn class_representatives(n: usize) -> Vec<Perm> {
    let mut types = Vec::new();
    let mut reps = Vec::new();
    for g in symmetric_group(n) {
        let t = cycle_type(&g);
        if g != identity(n) && !types.contains(&t) {
            types.push(t);
            reps.push(g);
        }
    }
    reps
}

pub fn conjugacy_class(rep: &Perm) -> Vec<Perm> {
    let class: std::collections::BTreeSet<Perm> = symmetric_group(rep.len())
        .iter()
        .map(|g| mul(&mul(&inv(g), rep), g))
        .collect();
    class.into_iter().collect()
}
