//! Textual knot notations and the combinatorial diagram they describe.
//!
//! Three grammars are accepted, all whitespace-insensitive:
//!
//! * `PD[X(i,j,k,l), ...]`: planar diagram code. Each tuple lists the four
//!   edge labels meeting at a crossing, counterclockwise, starting with the
//!   incoming under-strand. For the trefoil
//!   `PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]` the first crossing reads
//!
//!   ```text
//!            2
//!            ^
//!     5 -----|----- 4        under-strand 1 -> 2 (bottom to top)
//!            |               over-strand  4 -> 5 (right to left)
//!            1
//!   ```
//!
//!   An over-strand entering through the fourth slot (`l -> j`) gives a
//!   positive crossing, entering through the second (`j -> l`) a negative
//!   one.
//! * `BR[s; w1 w2 ...]`: closure of an `s`-strand braid, letter `i` a
//!   positive crossing of strands `i, i+1`, `-i` a negative one.
//! * `TB[p/q]`: the 2-bridge knot with fraction `p/q`.

use std::fmt;

use num_integer::Integer;
use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CodecError {
    #[error("malformed syntax: {0}")]
    MalformedSyntax(String),
    #[error("arity error: crossing {crossing} has {len} labels, expected 4")]
    ArityError { crossing: usize, len: usize },
    #[error("bad arc labels: {0}")]
    LabelError(String),
    #[error("diagram has more than one component")]
    MultiComponent,
    #[error("strand orientation is inconsistent at crossing {0}")]
    InconsistentOrientation(usize),
    #[error("braid letter {letter} out of range for {strands} strands")]
    LetterOutOfRange { letter: i64, strands: usize },
    #[error("p = {0} is even: the 2-bridge fraction describes a link")]
    EvenP(i64),
    #[error("gcd({p}, {q}) != 1")]
    NotCoprime { p: i64, q: i64 },
    #[error("fraction {p}/{q} out of range (need p >= 1, 0 < q < p, or 1/1)")]
    OutOfRange { p: i64, q: i64 },
}

/// Sign of a crossing (right-handed positive).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Sign {
    Positive,
    Negative,
}

impl Sign {
    pub fn value(self) -> i64 {
        match self {
            Sign::Positive => 1,
            Sign::Negative => -1,
        }
    }
}

/// One crossing of an oriented diagram. Labels are 1-based edge labels.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct Crossing {
    pub under_in: usize,
    pub under_out: usize,
    pub over_in: usize,
    pub over_out: usize,
    pub sign: Sign,
}

impl Crossing {
    /// The PD tuple in counterclockwise order from the incoming under-strand.
    pub fn pd_tuple(&self) -> [usize; 4] {
        match self.sign {
            Sign::Positive => [self.under_in, self.over_out, self.under_out, self.over_in],
            Sign::Negative => [self.under_in, self.over_in, self.under_out, self.over_out],
        }
    }
}

/// An oriented one-component knot diagram. Its "arcs" are the edges of the
/// underlying 4-valent graph, labelled `1..=arc_count`; a diagram without
/// crossings has a single arc.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct KnotDiagram {
    arc_count: usize,
    crossings: Vec<Crossing>,
    successor: Vec<usize>,
}

impl KnotDiagram {
    pub fn unknot() -> Self {
        KnotDiagram {
            arc_count: 1,
            crossings: Vec::new(),
            successor: vec![1],
        }
    }

    /// Validates PD tuples and orients them.
    pub fn from_pd_tuples(tuples: &[Vec<usize>]) -> Result<Self, CodecError> {
        for (c, t) in tuples.iter().enumerate() {
            if t.len() != 4 {
                return Err(CodecError::ArityError {
                    crossing: c,
                    len: t.len(),
                });
            }
        }
        if tuples.is_empty() {
            return Ok(KnotDiagram::unknot());
        }
        let edges = 2 * tuples.len();
        let mut slots: Vec<Vec<(usize, usize)>> = vec![Vec::new(); edges + 1];
        for (c, t) in tuples.iter().enumerate() {
            for (s, &label) in t.iter().enumerate() {
                if label == 0 || label > edges {
                    return Err(CodecError::LabelError(format!(
                        "label {label} outside 1..={edges}"
                    )));
                }
                slots[label].push((c, s));
            }
        }
        if let Some(label) = (1..=edges).find(|&l| slots[l].len() != 2) {
            return Err(CodecError::LabelError(format!(
                "label {label} appears {} times",
                slots[label].len()
            )));
        }

        // Walk the strand: leave a crossing through some slot, arrive at
        // the label's other slot, leave through the opposite slot.
        let mut under_in = vec![0usize; tuples.len()];
        let mut under_out = vec![0usize; tuples.len()];
        let mut over_in = vec![0usize; tuples.len()];
        let mut over_out = vec![0usize; tuples.len()];
        let mut sign = vec![Sign::Positive; tuples.len()];
        let mut successor = vec![0usize; edges];

        let start = tuples[0][2];
        let mut leaving = (0usize, 2usize);
        let mut label = start;
        let mut visited = 0;
        loop {
            visited += 1;
            if visited > edges {
                return Err(CodecError::MultiComponent);
            }
            let arrive = if slots[label][0] == leaving {
                slots[label][1]
            } else {
                slots[label][0]
            };
            let (c, s) = arrive;
            let exit = (s + 2) % 4;
            let next = tuples[c][exit];
            match s {
                0 => {
                    under_in[c] = label;
                    under_out[c] = next;
                }
                2 => return Err(CodecError::InconsistentOrientation(c)),
                _ => {
                    over_in[c] = label;
                    over_out[c] = next;
                    sign[c] = if s == 3 { Sign::Positive } else { Sign::Negative };
                }
            }
            successor[label - 1] = next;
            leaving = (c, exit);
            label = next;
            if label == start {
                break;
            }
        }
        if visited != edges {
            return Err(CodecError::MultiComponent);
        }
        let crossings = (0..tuples.len())
            .map(|c| Crossing {
                under_in: under_in[c],
                under_out: under_out[c],
                over_in: over_in[c],
                over_out: over_out[c],
                sign: sign[c],
            })
            .collect();
        Ok(KnotDiagram {
            arc_count: edges,
            crossings,
            successor,
        })
    }

    pub fn arc_count(&self) -> usize {
        self.arc_count
    }

    pub fn crossings(&self) -> &[Crossing] {
        &self.crossings
    }

    pub fn crossing_count(&self) -> usize {
        self.crossings.len()
    }

    /// Next arc along the orientation.
    pub fn successor(&self, arc: usize) -> usize {
        self.successor[arc - 1]
    }

    pub fn writhe(&self) -> i64 {
        self.crossings.iter().map(|c| c.sign.value()).sum()
    }

    /// Canonical text form, always in PD grammar.
    pub fn render(&self) -> String {
        let body: Vec<String> = self
            .crossings
            .iter()
            .map(|c| {
                let [i, j, k, l] = c.pd_tuple();
                format!("X({i},{j},{k},{l})")
            })
            .collect();
        format!("PD[{}]", body.join(","))
    }
}

impl fmt::Display for KnotDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Writhe of a diagram.
pub fn writhe(d: &KnotDiagram) -> i64 {
    d.writhe()
}

fn strip_call<'a>(text: &'a str, head: &str) -> Result<&'a str, CodecError> {
    text.strip_prefix(head)
        .and_then(|t| t.strip_prefix('['))
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| CodecError::MalformedSyntax(format!("expected {head}[...]")))
}

fn compact(text: &str) -> String {
    text.chars().filter(|c| !c.is_whitespace()).collect()
}

/// Parses `PD[X(i,j,k,l), ...]`.
pub fn parse_pd(text: &str) -> Result<KnotDiagram, CodecError> {
    let text = compact(text);
    let mut rest = strip_call(&text, "PD")?;
    let mut tuples = Vec::new();
    while !rest.is_empty() {
        let inner = rest
            .strip_prefix("X(")
            .ok_or_else(|| CodecError::MalformedSyntax(format!("expected X(...) at {rest:?}")))?;
        let close = inner
            .find(')')
            .ok_or_else(|| CodecError::MalformedSyntax("unclosed X(".into()))?;
        let labels = inner[..close]
            .split(',')
            .map(|s| {
                s.parse::<usize>()
                    .map_err(|_| CodecError::MalformedSyntax(format!("bad label {s:?}")))
            })
            .collect::<Result<Vec<_>, _>>()?;
        tuples.push(labels);
        rest = &inner[close + 1..];
        if let Some(r) = rest.strip_prefix(',') {
            if r.is_empty() {
                return Err(CodecError::MalformedSyntax("trailing comma".into()));
            }
            rest = r;
        } else if !rest.is_empty() {
            return Err(CodecError::MalformedSyntax(format!("unexpected {rest:?}")));
        }
    }
    KnotDiagram::from_pd_tuples(&tuples)
}

/// A braid word on `strand_count` strands.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BraidSpec {
    pub strand_count: usize,
    pub letters: Vec<i64>,
}

impl BraidSpec {
    pub fn new(strand_count: usize, letters: Vec<i64>) -> Result<Self, CodecError> {
        if strand_count == 0 {
            return Err(CodecError::MalformedSyntax("strand count must be positive".into()));
        }
        for &l in &letters {
            if l == 0 || l.unsigned_abs() as usize >= strand_count {
                return Err(CodecError::LetterOutOfRange {
                    letter: l,
                    strands: strand_count,
                });
            }
        }
        let spec = BraidSpec {
            strand_count,
            letters,
        };
        if !spec.closure_is_knot() {
            return Err(CodecError::MultiComponent);
        }
        Ok(spec)
    }

    /// Whether the strand permutation is one cycle.
    fn closure_is_knot(&self) -> bool {
        let mut perm: Vec<usize> = (0..self.strand_count).collect();
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            perm.swap(i, i + 1);
        }
        // perm[pos] = starting strand now at pos; follow position 0.
        let mut pos = 0;
        let mut len = 0;
        loop {
            pos = perm[pos];
            len += 1;
            if pos == 0 {
                break;
            }
        }
        len == self.strand_count
    }

    /// The closed-braid diagram, edges relabelled consecutively along the
    /// orientation starting from strand 1 at the bottom.
    pub fn closure(&self) -> KnotDiagram {
        if self.letters.is_empty() {
            return KnotDiagram::unknot();
        }
        let s = self.strand_count;
        let mut current: Vec<usize> = (0..s).collect();
        let mut next_edge = s;
        let mut raw = Vec::with_capacity(self.letters.len());
        for &l in &self.letters {
            let i = l.unsigned_abs() as usize - 1;
            let (left, right) = (current[i], current[i + 1]);
            let (new_left, new_right) = (next_edge, next_edge + 1);
            next_edge += 2;
            // The strand from the left moves right and vice versa; on a
            // positive letter the left-to-right strand passes over.
            let crossing = if l > 0 {
                [right, new_left, left, new_right, 1]
            } else {
                [left, new_right, right, new_left, 0]
            };
            raw.push(crossing);
            current[i] = new_left;
            current[i + 1] = new_right;
        }
        // Closing the braid glues the top end at position p to the bottom
        // end at position p.
        let mut alias: Vec<usize> = (0..next_edge).collect();
        for (p, &top) in current.iter().enumerate() {
            alias[top] = p;
        }
        let resolve = |e: usize| alias[e];
        let mut succ = vec![usize::MAX; next_edge];
        for c in &raw {
            succ[resolve(c[0])] = resolve(c[1]);
            succ[resolve(c[2])] = resolve(c[3]);
        }
        let mut label = vec![0usize; next_edge];
        let mut e = resolve(0);
        let mut n = 0;
        loop {
            n += 1;
            label[e] = n;
            e = succ[e];
            if e == resolve(0) {
                break;
            }
        }
        let tuples: Vec<Vec<usize>> = raw
            .iter()
            .map(|c| {
                let (ui, uo, oi, oo) = (
                    label[resolve(c[0])],
                    label[resolve(c[1])],
                    label[resolve(c[2])],
                    label[resolve(c[3])],
                );
                let cr = Crossing {
                    under_in: ui,
                    under_out: uo,
                    over_in: oi,
                    over_out: oo,
                    sign: if c[4] == 1 { Sign::Positive } else { Sign::Negative },
                };
                cr.pd_tuple().to_vec()
            })
            .collect();
        KnotDiagram::from_pd_tuples(&tuples).expect("braid closure is a valid knot diagram")
    }

    pub fn render(&self) -> String {
        let letters: Vec<String> = self.letters.iter().map(i64::to_string).collect();
        format!("BR[{}; {}]", self.strand_count, letters.join(" "))
    }
}

/// Parses `BR[s; w1 w2 ...]` and returns the braid (validated).
pub fn parse_braid_spec(text: &str) -> Result<BraidSpec, CodecError> {
    let text = text.trim();
    let inner = text
        .strip_prefix("BR")
        .map(str::trim_start)
        .and_then(|t| t.strip_prefix('['))
        .and_then(|t| t.strip_suffix(']'))
        .ok_or_else(|| CodecError::MalformedSyntax("expected BR[s; ...]".into()))?;
    let (strands, word) = inner
        .split_once(';')
        .ok_or_else(|| CodecError::MalformedSyntax("missing ';' in braid".into()))?;
    let strand_count: usize = strands
        .trim()
        .parse()
        .map_err(|_| CodecError::MalformedSyntax(format!("bad strand count {strands:?}")))?;
    let letters = word
        .split(|c: char| c.is_whitespace() || c == ',')
        .filter(|t| !t.is_empty())
        .map(|t| {
            t.parse::<i64>()
                .map_err(|_| CodecError::MalformedSyntax(format!("bad braid letter {t:?}")))
        })
        .collect::<Result<Vec<_>, _>>()?;
    BraidSpec::new(strand_count, letters)
}

/// Parses `BR[s; w1 w2 ...]` into the diagram of its closure.
pub fn parse_braid(text: &str) -> Result<KnotDiagram, CodecError> {
    parse_braid_spec(text).map(|b| b.closure())
}

/// A 2-bridge knot `p/q`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct TwoBridgeFraction {
    p: u64,
    q: u64,
}

impl TwoBridgeFraction {
    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn q(&self) -> u64 {
        self.q
    }

    /// Determinant of the knot.
    pub fn determinant(&self) -> u64 {
        self.p
    }

    pub fn render(&self) -> String {
        format!("TB[{}/{}]", self.p, self.q)
    }
}

impl fmt::Display for TwoBridgeFraction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// Validates a 2-bridge fraction.
pub fn two_bridge(p: i64, q: i64) -> Result<TwoBridgeFraction, CodecError> {
    let in_range = (p == 1 && q == 1) || (p >= 1 && 0 < q && q < p);
    if !in_range {
        return Err(CodecError::OutOfRange { p, q });
    }
    if p % 2 == 0 {
        return Err(CodecError::EvenP(p));
    }
    if p.gcd(&q) != 1 {
        return Err(CodecError::NotCoprime { p, q });
    }
    Ok(TwoBridgeFraction {
        p: p as u64,
        q: q as u64,
    })
}

/// Parses `TB[p/q]`; a bare `p/q` is accepted too.
pub fn parse_two_bridge(text: &str) -> Result<TwoBridgeFraction, CodecError> {
    let text = compact(text);
    let inner = match text.strip_prefix("TB") {
        Some(_) => strip_call(&text, "TB")?,
        None => text.as_str(),
    };
    let (p, q) = inner
        .split_once('/')
        .ok_or_else(|| CodecError::MalformedSyntax("expected p/q".into()))?;
    let p: i64 = p
        .parse()
        .map_err(|_| CodecError::MalformedSyntax(format!("bad numerator {p:?}")))?;
    let q: i64 = q
        .parse()
        .map_err(|_| CodecError::MalformedSyntax(format!("bad denominator {q:?}")))?;
    two_bridge(p, q)
}

/// Any supported knot input.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum KnotNotation {
    Diagram(KnotDiagram),
    TwoBridge(TwoBridgeFraction),
}

impl KnotNotation {
    pub fn render(&self) -> String {
        match self {
            KnotNotation::Diagram(d) => d.render(),
            KnotNotation::TwoBridge(f) => f.render(),
        }
    }
}

/// Dispatches on the `PD`, `BR` or `TB` prefix.
pub fn parse_knot(text: &str) -> Result<KnotNotation, CodecError> {
    let t = text.trim_start();
    if t.starts_with("PD") {
        parse_pd(t).map(KnotNotation::Diagram)
    } else if t.starts_with("BR") {
        parse_braid(t).map(KnotNotation::Diagram)
    } else if t.starts_with("TB") {
        parse_two_bridge(t).map(KnotNotation::TwoBridge)
    } else {
        Err(CodecError::MalformedSyntax(format!(
            "unknown notation {:?} (expected PD[..], BR[..] or TB[..])",
            t.chars().take(12).collect::<String>()
        )))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    pub const TREFOIL: &str = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";

    #[test]
    fn trefoil_pd() {
        let d = parse_pd(TREFOIL).unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        // Hand trace: under 1->2 with over 4->5, under 3->4 with over 6->1,
        // under 5->6 with over 2->3. Each over-strand enters through j.
        let c0 = d.crossings()[0];
        assert_eq!((c0.under_in, c0.under_out, c0.over_in, c0.over_out), (1, 2, 4, 5));
        let c1 = d.crossings()[1];
        assert_eq!((c1.under_in, c1.under_out, c1.over_in, c1.over_out), (3, 4, 6, 1));
        assert!(d.crossings().iter().all(|c| c.sign == Sign::Negative));
        assert_eq!(d.writhe(), -3);
        for a in 1..=6 {
            assert_eq!(d.successor(a), a % 6 + 1);
        }
    }

    #[test]
    fn whitespace_insensitive() {
        let d = parse_pd(" PD[ X(1, 4,2,5), X(3,6,4,1) ,X(5,2,6,3) ] ").unwrap();
        assert_eq!(d, parse_pd(TREFOIL).unwrap());
    }

    #[test]
    fn empty_pd_is_unknot() {
        let d = parse_pd("PD[]").unwrap();
        assert_eq!(d.crossing_count(), 0);
        assert_eq!(d.arc_count(), 1);
        assert_eq!(d.successor(1), 1);
    }

    #[test]
    fn pd_errors() {
        assert!(matches!(
            parse_pd("PD[X(1,2,3)]"),
            Err(CodecError::ArityError { crossing: 0, len: 3 })
        ));
        assert!(matches!(parse_pd("PD[X(1,2,3,4)]"), Err(CodecError::LabelError(_))));
        assert!(matches!(parse_pd("PD[X(1,1,1,2)]"), Err(CodecError::LabelError(_))));
        assert!(matches!(parse_pd("PD[X(1,2"), Err(CodecError::MalformedSyntax(_))));
        assert!(matches!(parse_pd("XD[]"), Err(CodecError::MalformedSyntax(_))));
        assert!(matches!(parse_pd("PD[X(1,a,2,2)]"), Err(CodecError::MalformedSyntax(_))));
        // Under-strand closes on itself: a two-component picture.
        assert!(matches!(parse_pd("PD[X(1,2,1,2)]"), Err(CodecError::MultiComponent)));
        // Hopf link.
        assert!(matches!(
            parse_pd("PD[X(4,1,3,2),X(2,3,1,4)]"),
            Err(CodecError::MultiComponent) | Err(CodecError::InconsistentOrientation(_))
        ));
    }

    #[test]
    fn kinks() {
        let pos = parse_pd("PD[X(1,1,2,2)]").unwrap();
        assert_eq!(pos.crossings()[0].sign, Sign::Positive);
        assert_eq!(pos.writhe(), 1);
        let neg = parse_pd("PD[X(1,2,2,1)]").unwrap();
        assert_eq!(neg.crossings()[0].sign, Sign::Negative);
        assert_eq!(writhe(&neg), -1);
    }

    #[test]
    fn braid_trefoil() {
        let d = parse_braid("BR[2; 1 1 1]").unwrap();
        assert_eq!(d.crossing_count(), 3);
        assert_eq!(d.arc_count(), 6);
        assert_eq!(d.writhe(), 3);
    }

    #[test]
    fn braid_edge_cases() {
        assert_eq!(parse_braid("BR[1;]").unwrap(), KnotDiagram::unknot());
        assert_eq!(parse_braid("BR[2;]"), Err(CodecError::MultiComponent));
        assert_eq!(parse_braid("BR[3; 1 1]"), Err(CodecError::MultiComponent));
        assert!(matches!(
            parse_braid("BR[2; 2]"),
            Err(CodecError::LetterOutOfRange { letter: 2, strands: 2 })
        ));
        assert!(matches!(parse_braid("BR[2 1 1]"), Err(CodecError::MalformedSyntax(_))));
        let d = parse_braid("BR[3; 1 -2 1 -2]").unwrap();
        assert_eq!(d.writhe(), 0);
        assert_eq!(d.arc_count(), 8);
    }

    #[test]
    fn two_bridge_validation() {
        assert_eq!(two_bridge(3, 1).unwrap().p(), 3);
        assert_eq!(two_bridge(1, 1).unwrap().q(), 1);
        assert_eq!(two_bridge(4, 1), Err(CodecError::EvenP(4)));
        assert_eq!(two_bridge(9, 3), Err(CodecError::NotCoprime { p: 9, q: 3 }));
        assert_eq!(two_bridge(5, 5), Err(CodecError::OutOfRange { p: 5, q: 5 }));
        assert_eq!(two_bridge(0, 1), Err(CodecError::OutOfRange { p: 0, q: 1 }));
        assert_eq!(parse_two_bridge("TB[ 5/3 ]").unwrap(), two_bridge(5, 3).unwrap());
        assert_eq!(parse_two_bridge("7/3").unwrap().render(), "TB[7/3]");
    }

    #[test]
    fn dispatch() {
        assert!(matches!(parse_knot(TREFOIL), Ok(KnotNotation::Diagram(_))));
        assert!(matches!(parse_knot("TB[3/1]"), Ok(KnotNotation::TwoBridge(_))));
        assert!(matches!(parse_knot("BR[2; 1 1 1]"), Ok(KnotNotation::Diagram(_))));
        assert!(parse_knot("DT[4 6 2]").is_err());
    }
}
