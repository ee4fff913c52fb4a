//! Knot groups, twist spins and `P^2` summands as finite presentations,
//! with coset enumeration, Smith normal form and Tietze moves to compute
//! with them.

pub mod abelian;
pub mod codec;
pub mod corpus;
pub mod coset;
pub mod presentation;
pub mod tietze;
pub mod spin;
pub mod verify;
pub mod wirtinger;
pub mod word;

pub use abelian::{abelian_invariants, relation_matrix, AbelianInvariants, IntMatrix};
pub use codec::{
    parse_braid, parse_knot, parse_pd, parse_two_bridge, two_bridge, CodecError, Crossing,
    KnotDiagram, KnotNotation, Sign, TwoBridgeFraction,
};
pub use coset::{
    double_coset_equal, enumerate, group_order, regular_table, verify_table, word_is_trivial,
    CosetTable, EnumerationResult, Limits, OrderOutcome, Outcome, Triviality,
};
pub use presentation::{MarkedPresentation, Provenance};
pub use tietze::{tietze_simplify, BudgetExceeded};
pub use spin::{
    connect_sum_rp2, meridian_power_quotient, parity_reduce, twist_spin_presentation, Knot,
    SpinError, SurfaceKnotSpec,
};
pub use verify::{
    boyle_witness_search, verify_lemma2, verify_lemma2_even, verify_lemma2_odd,
    verify_theorem1_group_level, Verdict, VerificationReport, VerifyError,
};
pub use wirtinger::{longitude_word, schubert_presentation, wirtinger_presentation, writhe};
pub use word::{free_reduce, Word};
