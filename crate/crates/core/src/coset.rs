//! Todd-Coxeter coset enumeration (HLT strategy).
//!
//! Columns of a coset table are indexed `2(g-1)` for `a_g` and `2(g-1)+1`
//! for `a_g^-1`. Cosets are 0-based internally; coset 0 is the subgroup
//! itself. Coincidences are resolved with a union-find forest (smaller
//! index wins) and a FIFO queue. Completed tables are compacted and
//! renumbered in breadth-first order, so equal groups give equal tables.

use std::collections::{BTreeSet, VecDeque};
use std::fmt::Write as _;

use serde::Serialize;

use crate::presentation::MarkedPresentation;
use crate::word::Word;

const NONE: u32 = u32::MAX;

/// Resource limits for one enumeration.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct Limits {
    /// Maximum number of simultaneously live cosets.
    pub max_cosets: usize,
    /// Maximum number of coset definitions (table rows ever allocated).
    pub max_definitions: usize,
}

impl Default for Limits {
    fn default() -> Self {
        Limits::with_max_cosets(1_000_000)
    }
}

impl Limits {
    pub fn with_max_cosets(max_cosets: usize) -> Self {
        assert!(max_cosets > 0, "limits must be positive");
        Limits {
            max_cosets,
            max_definitions: max_cosets.saturating_mul(2),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Outcome {
    Index(usize),
    Overflow,
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Serialize)]
pub struct Statistics {
    pub cosets_defined: usize,
    pub max_live: usize,
    pub coincidences: usize,
}

#[derive(Clone, Debug)]
pub struct EnumerationResult {
    pub outcome: Outcome,
    pub table: CosetTable,
    pub stats: Statistics,
}

fn column(letter: i32) -> usize {
    2 * (letter.unsigned_abs() as usize - 1) + usize::from(letter < 0)
}

/// Action of the generators on cosets. `None` marks an undefined entry of a
/// partial table.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct CosetTable {
    generators: usize,
    rows: Vec<Vec<Option<usize>>>,
    complete: bool,
}

impl CosetTable {
    /// Builds a table from explicit rows (one entry per column). The table is
    /// marked complete when every entry is defined.
    pub fn from_rows(generators: usize, rows: Vec<Vec<Option<usize>>>) -> Self {
        assert!(rows.iter().all(|r| r.len() == 2 * generators));
        let complete = rows.iter().all(|r| r.iter().all(Option::is_some));
        CosetTable {
            generators,
            rows,
            complete,
        }
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    /// Number of cosets.
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn is_complete(&self) -> bool {
        self.complete
    }

    pub fn rows(&self) -> &[Vec<Option<usize>>] {
        &self.rows
    }

    /// Image of `coset` under one letter.
    pub fn act(&self, coset: usize, letter: i32) -> Option<usize> {
        self.rows[coset][column(letter)]
    }

    /// Image of `coset` under a word, if every step is defined.
    pub fn trace(&self, coset: usize, w: &Word) -> Option<usize> {
        w.letters()
            .iter()
            .try_fold(coset, |c, &l| self.act(c, l))
    }

    /// Text matrix of the action, one row per coset, 1-based.
    pub fn dump(&self) -> String {
        let mut out = String::from("coset");
        for g in 1..=self.generators {
            let _ = write!(out, " a{g} a{g}^-1");
        }
        out.push('\n');
        for (c, row) in self.rows.iter().enumerate() {
            let _ = write!(out, "{}", c + 1);
            for e in row {
                match e {
                    Some(d) => {
                        let _ = write!(out, " {}", d + 1);
                    }
                    None => out.push_str(" -"),
                }
            }
            out.push('\n');
        }
        out
    }
}

struct Enumerator {
    cols: usize,
    table: Vec<u32>,
    parent: Vec<u32>,
    queue: VecDeque<u32>,
    live: usize,
    limits: Limits,
    stats: Statistics,
}

struct Overflowed;

impl Enumerator {
    fn new(generators: usize, limits: Limits) -> Self {
        let cols = 2 * generators;
        Enumerator {
            cols,
            table: vec![NONE; cols],
            parent: vec![0],
            queue: VecDeque::new(),
            live: 1,
            limits,
            stats: Statistics {
                cosets_defined: 1,
                max_live: 1,
                coincidences: 0,
            },
        }
    }

    fn rows(&self) -> usize {
        self.parent.len()
    }

    #[inline]
    fn get(&self, c: u32, x: usize) -> u32 {
        self.table[c as usize * self.cols + x]
    }

    #[inline]
    fn set(&mut self, c: u32, x: usize, d: u32) {
        self.table[c as usize * self.cols + x] = d;
    }

    fn is_live(&self, c: u32) -> bool {
        self.parent[c as usize] == c
    }

    fn define(&mut self, c: u32, x: usize) -> Result<(), Overflowed> {
        if self.live >= self.limits.max_cosets || self.rows() >= self.limits.max_definitions {
            return Err(Overflowed);
        }
        let d = self.rows() as u32;
        self.parent.push(d);
        self.table.extend(std::iter::repeat_n(NONE, self.cols));
        self.set(c, x, d);
        self.set(d, x ^ 1, c);
        self.live += 1;
        self.stats.cosets_defined += 1;
        self.stats.max_live = self.stats.max_live.max(self.live);
        Ok(())
    }

    fn rep(&mut self, c: u32) -> u32 {
        let mut root = c;
        while self.parent[root as usize] != root {
            root = self.parent[root as usize];
        }
        let mut cur = c;
        while self.parent[cur as usize] != root {
            let next = self.parent[cur as usize];
            self.parent[cur as usize] = root;
            cur = next;
        }
        root
    }

    fn merge(&mut self, a: u32, b: u32) {
        let (a, b) = (self.rep(a), self.rep(b));
        if a == b {
            return;
        }
        let (lo, hi) = if a < b { (a, b) } else { (b, a) };
        self.parent[hi as usize] = lo;
        self.queue.push_back(hi);
        self.live -= 1;
        self.stats.coincidences += 1;
    }

    fn coincidence(&mut self, a: u32, b: u32) {
        self.merge(a, b);
        while let Some(g) = self.queue.pop_front() {
            for x in 0..self.cols {
                let d = self.get(g, x);
                if d == NONE {
                    continue;
                }
                self.set(d, x ^ 1, NONE);
                let mu = self.rep(g);
                let nu = self.rep(d);
                let mu_x = self.get(mu, x);
                if mu_x != NONE {
                    self.merge(nu, mu_x);
                } else {
                    let nu_inv = self.get(nu, x ^ 1);
                    if nu_inv != NONE {
                        self.merge(mu, nu_inv);
                    } else {
                        self.set(mu, x, nu);
                        self.set(nu, x ^ 1, mu);
                    }
                }
            }
        }
    }

    fn scan_and_fill(&mut self, alpha: u32, w: &[usize]) -> Result<(), Overflowed> {
        let r = w.len();
        let (mut f, mut b) = (alpha, alpha);
        let (mut i, mut j) = (0usize, r);
        loop {
            while i < r && self.get(f, w[i]) != NONE {
                f = self.get(f, w[i]);
                i += 1;
            }
            if i >= r {
                if f != alpha {
                    self.coincidence(f, alpha);
                }
                return Ok(());
            }
            while j > i && self.get(b, w[j - 1] ^ 1) != NONE {
                b = self.get(b, w[j - 1] ^ 1);
                j -= 1;
            }
            if j < i + 1 {
                self.coincidence(f, b);
                return Ok(());
            } else if j == i + 1 {
                // Deduction closes the gap.
                self.set(f, w[i], b);
                self.set(b, w[i] ^ 1, f);
                return Ok(());
            } else {
                self.define(f, w[i])?;
            }
        }
    }

    fn run(&mut self, relators: &[Vec<usize>], subgroup: &[Vec<usize>]) -> Result<(), Overflowed> {
        for w in subgroup {
            self.scan_and_fill(0, w)?;
        }
        let mut alpha = 0u32;
        while (alpha as usize) < self.rows() {
            for w in relators {
                if !self.is_live(alpha) {
                    break;
                }
                self.scan_and_fill(alpha, w)?;
            }
            if self.is_live(alpha) {
                for x in 0..self.cols {
                    if self.get(alpha, x) == NONE {
                        self.define(alpha, x)?;
                    }
                }
            }
            alpha += 1;
        }
        Ok(())
    }

    /// Live cosets renumbered: breadth-first from coset 0 when `bfs`,
    /// otherwise in index order.
    fn compact(&mut self, generators: usize, bfs: bool) -> CosetTable {
        let n = self.rows();
        let mut order: Vec<u32> = Vec::with_capacity(self.live);
        let mut number = vec![NONE; n];
        if bfs {
            number[0] = 0;
            order.push(0);
            let mut head = 0;
            while head < order.len() {
                let c = order[head];
                head += 1;
                for x in 0..self.cols {
                    let d = self.get(c, x);
                    if d == NONE {
                        continue;
                    }
                    let d = self.rep(d);
                    if number[d as usize] == NONE {
                        number[d as usize] = order.len() as u32;
                        order.push(d);
                    }
                }
            }
        } else {
            for c in 0..n as u32 {
                if self.is_live(c) {
                    number[c as usize] = order.len() as u32;
                    order.push(c);
                }
            }
        }
        let rows = order
            .iter()
            .map(|&c| {
                (0..self.cols)
                    .map(|x| {
                        let d = self.get(c, x);
                        if d == NONE {
                            None
                        } else {
                            let d = self.rep(d);
                            Some(number[d as usize] as usize)
                        }
                    })
                    .collect()
            })
            .collect();
        CosetTable::from_rows(generators, rows)
    }
}

/// Enumerates the cosets of the subgroup generated by `subgroup` in the
/// group presented by `p`.
///
/// Panics if a subgroup word mentions a generator outside `p`.
pub fn enumerate(p: &MarkedPresentation, subgroup: &[Word], lim: Limits) -> EnumerationResult {
    for w in subgroup {
        assert!(p.accepts(w), "subgroup word {w} uses unknown generators");
    }
    let to_cols = |w: &Word| -> Vec<usize> { w.letters().iter().map(|&l| column(l)).collect() };
    let relators: Vec<Vec<usize>> = p.nontrivial_relators().map(to_cols).collect();
    let subgroup: Vec<Vec<usize>> = subgroup
        .iter()
        .map(|w| w.free_reduce())
        .filter(|w| !w.is_empty())
        .map(|w| to_cols(&w))
        .collect();
    let mut e = Enumerator::new(p.generator_count(), lim);
    match e.run(&relators, &subgroup) {
        Ok(()) => {
            let table = e.compact(p.generator_count(), true);
            debug_assert!(table.is_complete());
            EnumerationResult {
                outcome: Outcome::Index(table.len()),
                table,
                stats: e.stats,
            }
        }
        Err(Overflowed) => {
            // Overflow only happens in `define`, never mid-coincidence, so
            // the queue is empty here.
            debug_assert!(e.queue.is_empty());
            let mut table = e.compact(p.generator_count(), false);
            table.complete = false;
            EnumerationResult {
                outcome: Outcome::Overflow,
                table,
                stats: e.stats,
            }
        }
    }
}

/// Order of a group, when coset enumeration over the trivial subgroup
/// finishes.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum OrderOutcome {
    Order(usize),
    Overflow,
}

impl OrderOutcome {
    pub fn value(self) -> Option<usize> {
        match self {
            OrderOutcome::Order(n) => Some(n),
            OrderOutcome::Overflow => None,
        }
    }
}

impl std::fmt::Display for OrderOutcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            OrderOutcome::Order(n) => write!(f, "{n}"),
            OrderOutcome::Overflow => f.write_str("overflow"),
        }
    }
}

/// Complete regular representation (cosets of the trivial subgroup), or
/// `None` on overflow.
pub fn regular_table(p: &MarkedPresentation, lim: Limits) -> Option<CosetTable> {
    let res = enumerate(p, &[], lim);
    match res.outcome {
        Outcome::Index(_) => Some(res.table),
        Outcome::Overflow => None,
    }
}

pub fn group_order(p: &MarkedPresentation, lim: Limits) -> OrderOutcome {
    match enumerate(p, &[], lim).outcome {
        Outcome::Index(n) => OrderOutcome::Order(n),
        Outcome::Overflow => OrderOutcome::Overflow,
    }
}

/// Three-valued answer to a word problem.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Triviality {
    True,
    False,
    Unknown,
}

impl Triviality {
    pub fn is_true(self) -> bool {
        self == Triviality::True
    }
}

impl std::fmt::Display for Triviality {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Triviality::True => "true",
            Triviality::False => "false",
            Triviality::Unknown => "unknown",
        })
    }
}

/// Word problem in a complete regular table: the action is free, so a word
/// is the identity iff it fixes coset 0.
pub fn word_is_trivial_in(table: &CosetTable, w: &Word) -> Triviality {
    match table.trace(0, w) {
        Some(0) => Triviality::True,
        Some(_) => Triviality::False,
        None => Triviality::Unknown,
    }
}

pub fn word_is_trivial(p: &MarkedPresentation, w: &Word, lim: Limits) -> Triviality {
    match regular_table(p, lim) {
        Some(t) => word_is_trivial_in(&t, w),
        None => Triviality::Unknown,
    }
}

/// Closure of `start` under right multiplication by the words in `gens`.
fn right_closure(table: &CosetTable, start: impl IntoIterator<Item = usize>, gens: &[Word]) -> BTreeSet<usize> {
    let mut seen: BTreeSet<usize> = BTreeSet::new();
    let mut stack: Vec<usize> = Vec::new();
    for c in start {
        if seen.insert(c) {
            stack.push(c);
        }
    }
    while let Some(c) = stack.pop() {
        for h in gens {
            let d = table.trace(c, h).expect("complete table");
            if seen.insert(d) {
                stack.push(d);
            }
        }
    }
    seen
}

/// Compares the double cosets `H x H` and `H y H` inside the finite group
/// given by a complete regular table. Elements are identified with cosets
/// of the trivial subgroup.
///
/// Panics if the table is incomplete.
pub fn double_coset_equal(t: &CosetTable, h: &[Word], x: &Word, y: &Word) -> bool {
    assert!(t.is_complete(), "double cosets need a complete table");
    let subgroup = right_closure(t, [0], h);
    let double = |w: &Word| {
        let left: Vec<usize> = subgroup
            .iter()
            .map(|&s| t.trace(s, w).expect("complete table"))
            .collect();
        right_closure(t, left, h)
    };
    double(x) == double(y)
}

/// Re-checks a complete table from scratch: every column is a permutation,
/// `a_g` and `a_g^-1` columns are mutually inverse, every relator fixes
/// every coset and every subgroup word fixes coset 0.
pub fn verify_table(t: &CosetTable, p: &MarkedPresentation, subgroup: &[Word]) -> bool {
    if !t.is_complete() || t.generators() != p.generator_count() || t.is_empty() {
        return false;
    }
    let n = t.len();
    for g in 1..=t.generators() as i32 {
        let mut hit = vec![false; n];
        for c in 0..n {
            let Some(d) = t.act(c, g) else { return false };
            if d >= n || hit[d] || t.act(d, -g) != Some(c) {
                return false;
            }
            hit[d] = true;
        }
    }
    for r in p.relators() {
        for c in 0..n {
            if t.trace(c, r) != Some(c) {
                return false;
            }
        }
    }
    subgroup.iter().all(|w| t.trace(0, w) == Some(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn pres(text: &str) -> MarkedPresentation {
        text.parse().unwrap()
    }

    #[test]
    fn cyclic_two() {
        let p = pres("< a1 | a1^2 >");
        let res = enumerate(&p, &[], Limits::default());
        assert_eq!(res.outcome, Outcome::Index(2));
        assert!(verify_table(&res.table, &p, &[]));
        assert_eq!(group_order(&p, Limits::default()), OrderOutcome::Order(2));
        assert_eq!(res.table.dump(), "coset a1 a1^-1\n1 2 2\n2 1 1\n");
    }

    #[test]
    fn dihedral_six() {
        let p = pres("< a1, a2 | a1^2, a2^2, a1 a2 a1 a2 a1 a2 >");
        let res = enumerate(&p, &[], Limits::default());
        assert_eq!(res.outcome, Outcome::Index(6));
        assert!(verify_table(&res.table, &p, &[]));
    }

    #[test]
    fn infinite_overflows() {
        let res = enumerate(&pres("< a1 | >"), &[], Limits::with_max_cosets(1000));
        assert_eq!(res.outcome, Outcome::Overflow);
        assert!(!res.table.is_complete());
        assert!(res.stats.max_live <= 1000);
    }

    #[test]
    fn subgroup_index() {
        let p = pres("< a1, a2 | a1^2, a2^2, a1 a2 a1 a2 a1 a2 >");
        let res = enumerate(&p, &[Word::generator(1)], Limits::default());
        assert_eq!(res.outcome, Outcome::Index(3));
        assert!(verify_table(&res.table, &p, &[Word::generator(1)]));
        assert!(!verify_table(&res.table, &p, &[Word::generator(2)]));
    }

    #[test]
    fn word_problem() {
        let p = pres("< a1 | a1^2 >");
        let lim = Limits::default();
        assert_eq!(word_is_trivial(&p, &Word::power(1, 2), lim), Triviality::True);
        assert_eq!(word_is_trivial(&p, &Word::generator(1), lim), Triviality::False);
        assert_eq!(
            word_is_trivial(&pres("< a1 | >"), &Word::generator(1), Limits::with_max_cosets(50)),
            Triviality::Unknown
        );
    }

    #[test]
    fn corrupted_table_rejected() {
        let p = pres("< a1, a2 | a1^2, a2^2, a1 a2 a1 a2 a1 a2 >");
        let t = regular_table(&p, Limits::default()).unwrap();
        let mut rows = t.rows().to_vec();
        let tmp = rows[0][0];
        rows[0][0] = rows[1][0];
        rows[1][0] = tmp;
        let bad = CosetTable::from_rows(2, rows);
        assert!(!verify_table(&bad, &p, &[]));
    }

    #[test]
    fn double_cosets() {
        let p = pres("< a1, a2 | a1^2, a2^2, a1 a2 a1 a2 a1 a2 >");
        let t = regular_table(&p, Limits::default()).unwrap();
        let all = [Word::generator(1), Word::generator(2)];
        assert!(double_coset_equal(&t, &all, &Word::generator(1), &Word::empty()));
        let x = Word::new(vec![1, 2]);
        assert!(double_coset_equal(&t, &[Word::generator(1)], &x, &x));
        // In S3 with H = <(12)>, H a2 H has 4 elements and H = H 1 H has 2.
        assert!(!double_coset_equal(&t, &[Word::generator(1)], &Word::generator(2), &Word::empty()));
        assert!(double_coset_equal(&t, &[Word::generator(1)], &Word::generator(1), &Word::empty()));
    }

    #[test]
    fn standardized_tables_are_canonical() {
        let a = pres("< a1, a2 | a1^2, a2^2, a1 a2 a1 a2 a1 a2 >");
        let b = pres("< a1, a2 | a2 a1 a2 a1 a2 a1, a2^2, a1^2 >");
        assert_eq!(
            regular_table(&a, Limits::default()),
            regular_table(&b, Limits::default())
        );
    }
}
