//! Knot-group presentations and longitude words.
//!
//! Wirtinger generators are the over-arcs of a diagram (maximal strands
//! running between two undercrossings). At a crossing with over-arc `o`,
//! incoming under-arc `x` and outgoing under-arc `y`, the relator is
//! `y o^-s x^-1 o^s` for crossing sign `s`, i.e. `y = o^-s x o^s`. Walking
//! once around the knot from arc `b` and multiplying the over-arc
//! generators `o^s` in order therefore gives a word commuting with `a_b`.

use crate::codec::{KnotDiagram, TwoBridgeFraction};
use crate::presentation::{MarkedPresentation, Provenance};
use crate::word::Word;

/// Over-arc numbering of a diagram.
#[derive(Clone, Debug)]
struct OverArcs {
    /// Over-arc (1-based) containing each edge, indexed by edge label - 1.
    of_edge: Vec<usize>,
    /// First edge of each over-arc, indexed by arc - 1.
    start: Vec<usize>,
    /// Undercrossing at the end of each edge, if any.
    ends_under: Vec<Option<usize>>,
}

impl OverArcs {
    fn new(d: &KnotDiagram) -> Self {
        let edges = d.arc_count();
        let mut ends_under = vec![None; edges];
        let mut starts_arc = vec![false; edges];
        for (i, c) in d.crossings().iter().enumerate() {
            ends_under[c.under_in - 1] = Some(i);
            starts_arc[c.under_out - 1] = true;
        }
        if d.crossing_count() == 0 {
            return OverArcs {
                of_edge: vec![1],
                start: vec![1],
                ends_under,
            };
        }
        let mut pred = vec![0usize; edges];
        for e in 1..=edges {
            pred[d.successor(e) - 1] = e;
        }
        // Back up from edge 1 to the start of its arc, so edge 1 lies on a1.
        let mut first = 1;
        while !starts_arc[first - 1] {
            first = pred[first - 1];
        }
        let mut of_edge = vec![0usize; edges];
        let mut start = vec![first];
        let mut e = first;
        loop {
            of_edge[e - 1] = start.len();
            let next = d.successor(e);
            if next == first {
                break;
            }
            if ends_under[e - 1].is_some() {
                start.push(next);
            }
            e = next;
        }
        OverArcs {
            of_edge,
            start,
            ends_under,
        }
    }

    fn arc(&self, edge: usize) -> usize {
        self.of_edge[edge - 1]
    }
}

/// Number of over-arcs (Wirtinger generators) of a diagram.
pub fn over_arc_count(d: &KnotDiagram) -> usize {
    OverArcs::new(d).start.len()
}

/// One generator per over-arc, one relator per crossing, meridian `a1`.
pub fn wirtinger_presentation(d: &KnotDiagram) -> MarkedPresentation {
    let arcs = OverArcs::new(d);
    let relators = d
        .crossings()
        .iter()
        .map(|c| {
            let s = c.sign.value();
            let o = arcs.arc(c.over_in);
            Word::generator(arcs.arc(c.under_out))
                .concat(&Word::power(o, -s))
                .concat(&Word::power(arcs.arc(c.under_in), -1))
                .concat(&Word::power(o, s))
        })
        .collect();
    MarkedPresentation::new(arcs.start.len(), relators, 1, Provenance::Wirtinger)
        .expect("wirtinger relators use over-arc generators")
}

/// Preferred longitude based at over-arc `base_arc` (1-based): the over-arc
/// generators met at undercrossings along one circuit, each to the power of
/// the crossing sign, followed by `a_base^-writhe`. Freely reduced.
///
/// Panics if `base_arc` is not an over-arc of `d`.
pub fn longitude_word(d: &KnotDiagram, base_arc: usize) -> Word {
    let arcs = OverArcs::new(d);
    assert!(
        (1..=arcs.start.len()).contains(&base_arc),
        "base arc {base_arc} out of range"
    );
    if d.crossing_count() == 0 {
        return Word::empty();
    }
    let first = arcs.start[base_arc - 1];
    let mut letters = Vec::new();
    let mut e = first;
    loop {
        if let Some(c) = arcs.ends_under[e - 1] {
            let cr = d.crossings()[c];
            letters.extend(Word::power(arcs.arc(cr.over_in), cr.sign.value()).letters());
        }
        e = d.successor(e);
        if e == first {
            break;
        }
    }
    Word::new(letters)
        .concat(&Word::power(base_arc, -d.writhe()))
        .free_reduce()
}

/// Sum of crossing signs.
pub fn writhe(d: &KnotDiagram) -> i64 {
    d.writhe()
}

/// The word `w = b^e1 a^e2 b^e3 ... a^e(p-1)` with `e_i = (-1)^floor(i q / p)`,
/// using `a = a1`, `b = a2`. An even `q` is replaced by `p - q` first (the
/// mirror image, whose group is the same).
pub fn schubert_word(f: &TwoBridgeFraction) -> Word {
    let p = f.p();
    let q = if f.q().is_multiple_of(2) { p - f.q() } else { f.q() };
    let letters = (1..p)
        .map(|i| {
            let g = if i % 2 == 1 { 2 } else { 1 };
            if ((i * q) / p).is_multiple_of(2) {
                g
            } else {
                -g
            }
        })
        .collect();
    Word::new(letters)
}

/// `< a, b | a w b^-1 w^-1 >`; the unknot `1/1` gives `< a1 | >`.
pub fn schubert_presentation(f: &TwoBridgeFraction) -> MarkedPresentation {
    if f.p() == 1 {
        return MarkedPresentation::new(1, Vec::new(), 1, Provenance::Schubert)
            .expect("one generator");
    }
    let w = schubert_word(f);
    let relator = Word::generator(1)
        .concat(&w)
        .concat(&Word::power(2, -1))
        .concat(&w.inverse());
    MarkedPresentation::new(2, vec![relator], 1, Provenance::Schubert)
        .expect("two generators")
}

/// Longitude commuting with `a` in the Schubert presentation:
/// `w w~ a^(-2 sigma)` where `w~` is `w` read backwards and `sigma` its
/// exponent sum.
pub fn schubert_longitude(f: &TwoBridgeFraction) -> Word {
    if f.p() == 1 {
        return Word::empty();
    }
    let w = schubert_word(f);
    let reversed = Word::new(w.letters().iter().rev().copied().collect());
    w.concat(&reversed)
        .concat(&Word::power(1, -2 * w.total_exponent()))
        .free_reduce()
}
