mod common;

use twistspin::coset::word_is_trivial_in;
use twistspin::verify::ReportKind;
use twistspin::*;

const TREFOIL: &str = "PD[X(1,4,2,5),X(3,6,4,1),X(5,2,6,3)]";

fn lim() -> Limits {
    Limits::with_max_cosets(100_000)
}

fn knot(text: &str) -> Knot {
    Knot::parse(text, text).unwrap()
}

fn corpus_knot(name: &str) -> Knot {
    corpus::knots().into_iter().find(|k| k.name() == name).unwrap()
}

fn g2(k: &Knot, n: u32) -> MarkedPresentation {
    SurfaceKnotSpec::tau(k.clone(), n).connect_sum(1, 2).unwrap().presentation()
}

#[test]
fn braid_trefoil_matches_pd_trefoil() {
    let pd = knot(TREFOIL);
    let br = knot("BR[2; 1 1 1]");
    let tb = knot("TB[3/1]");
    for other in [&br, &tb] {
        assert_eq!(abelian_invariants(pd.presentation()), abelian_invariants(other.presentation()));
        for n in 0..=4 {
            assert_eq!(group_order(&g2(&pd, n), lim()), group_order(&g2(other, n), lim()));
        }
        for m in 2..=4 {
            let a = meridian_power_quotient(pd.presentation(), m).unwrap();
            let b = meridian_power_quotient(other.presentation(), m).unwrap();
            assert_eq!(group_order(&a, lim()), group_order(&b, lim()));
        }
    }
}

#[test]
fn kink_simplifies_to_the_unknot_group() {
    for text in ["PD[X(1,1,2,2)]", "PD[X(1,2,2,1)]"] {
        let k = knot(text);
        let simple = tietze_simplify(k.presentation(), 1000).unwrap();
        assert_eq!(simple.to_string(), "< a1 | >");
        assert!(k.longitude().is_empty());
    }
}

#[test]
fn odd_twist_simplifies_to_z2() {
    for k in [knot(TREFOIL), knot("TB[3/1]")] {
        let simple = tietze_simplify(&g2(&k, 3), 100_000).unwrap();
        assert_eq!(simple.to_string(), "< a1 | a1^2 >");
    }
}

#[test]
fn relation_matrices() {
    use twistspin::abelian::relation_matrix;
    let m = relation_matrix(&"< a1 | a1^2 >".parse().unwrap());
    assert_eq!((m.rows(), m.cols()), (1, 1));
    assert_eq!(m.row(0)[0], 2.into());
    let m = relation_matrix(&"< a1, a2 | a1 a2 a1^-1 a2^-1 >".parse().unwrap());
    assert!(m.row(0).iter().all(|x| *x == 0.into()));
    let m = relation_matrix(knot(TREFOIL).presentation());
    assert_eq!((m.rows(), m.cols()), (3, 3));
    for r in 0..3 {
        let sum: num_bigint::BigInt = m.row(r).iter().sum();
        assert_eq!(sum, 0.into());
    }
    assert!(abelian_invariants(&g2(&knot(TREFOIL), 2)).is_cyclic_of_order(2));
}

/// Any single Wirtinger relator follows from the others.
#[test]
fn one_wirtinger_relator_is_redundant() {
    for k in [corpus_knot("3_1"), corpus_knot("4_1")] {
        let p = k.presentation();
        let baseline: Vec<OrderOutcome> = (0..=3)
            .map(|n| group_order(&g2(&k, n), lim()))
            .chain([group_order(&meridian_power_quotient(p, 3).unwrap(), lim())])
            .collect();
        for drop in 0..p.relators().len() {
            let mut rels = p.relators().to_vec();
            rels.remove(drop);
            let q = MarkedPresentation::new(p.generator_count(), rels, 1, Provenance::Derived).unwrap();
            let kq = q.clone();
            let orders: Vec<OrderOutcome> = (0..=3)
                .map(|n| group_order(&connect_sum_rp2(&twist_spin_presentation(&kq, n)), lim()))
                .chain([group_order(&meridian_power_quotient(&q, 3).unwrap(), lim())])
                .collect();
            assert_eq!(orders, baseline, "{} without relator {drop}", k.name());
            assert!(abelian_invariants(&q).is_z());
        }
    }
}

#[test]
fn twist_spin_constructions() {
    let k = knot(TREFOIL);
    let p = k.presentation();
    assert_eq!(twist_spin_presentation(p, 0).relators(), p.relators());
    let t2 = twist_spin_presentation(p, 2);
    assert_eq!(t2.relators().len(), 5);
    for r in &t2.relators()[3..] {
        assert_eq!(r.len(), 6);
    }
    let unknot: MarkedPresentation = "< a1 | >".parse().unwrap();
    let s = connect_sum_rp2(&unknot);
    assert_eq!(s.to_string(), "< a1 | a1^2 >");
    assert_eq!(group_order(&s, lim()), OrderOutcome::Order(2));
    assert_eq!(group_order(&connect_sum_rp2(&twist_spin_presentation(p, 3)), lim()), OrderOutcome::Order(2));
    assert_eq!(group_order(&connect_sum_rp2(&twist_spin_presentation(p, 2)), lim()), OrderOutcome::Order(6));
}

#[test]
fn spin_with_no_twist_is_the_knot_group() {
    for k in corpus::knots() {
        let p = k.presentation();
        let s = twist_spin_presentation(p, 0);
        assert_eq!(abelian_invariants(&s), abelian_invariants(p));
        for m in [2, 3] {
            let a = group_order(&meridian_power_quotient(p, m).unwrap(), lim());
            let b = group_order(&meridian_power_quotient(&s, m).unwrap(), lim());
            assert_eq!(a, b);
        }
    }
}

#[test]
fn meridian_power_quotients() {
    for k in corpus::knots() {
        let p = k.presentation();
        let q1 = meridian_power_quotient(p, 1).unwrap();
        assert_eq!(group_order(&q1, lim()), OrderOutcome::Order(1));
        assert_eq!(meridian_power_quotient(p, 2).unwrap(), connect_sum_rp2(p));
        for n in 0..=4 {
            let spun = twist_spin_presentation(p, n);
            assert_eq!(
                connect_sum_rp2(&spun).relator_multiset(),
                meridian_power_quotient(&spun, 2).unwrap().relator_multiset()
            );
        }
    }
    assert_eq!(
        group_order(&meridian_power_quotient(knot(TREFOIL).presentation(), 2).unwrap(), lim()),
        OrderOutcome::Order(6)
    );
    assert!(meridian_power_quotient(knot(TREFOIL).presentation(), 0).is_err());
}

#[test]
fn parity_reduction() {
    let k = knot(TREFOIL);
    let r: Vec<Word> = k.presentation().relators().to_vec();
    let a1 = Word::generator(1);
    let odd = parity_reduce(&g2(&k, 3), 3).unwrap();
    let mut expected = r.clone();
    expected.push(Word::power(1, 2));
    expected.push(Word::commutator(&a1, &Word::generator(2)));
    expected.push(Word::commutator(&a1, &Word::generator(3)));
    assert_eq!(odd.relators(), expected.as_slice());

    let even = parity_reduce(&g2(&k, 2), 2).unwrap();
    let mut expected = r;
    expected.push(Word::power(1, 2));
    assert_eq!(even.relators(), expected.as_slice());
    assert_eq!(parity_reduce(&g2(&k, 0), 0).unwrap(), even);

    // The n = 3 relators are not the n = 5 ones.
    assert_eq!(parity_reduce(&g2(&k, 3), 5), Err(SpinError::ParityMismatch { n: 5 }));
    assert_eq!(
        parity_reduce(&twist_spin_presentation(k.presentation(), 3), 3),
        Err(SpinError::MissingMeridianSquare)
    );
    for n in [1, 3, 5, 7] {
        assert_eq!(parity_reduce(&g2(&k, n), n).unwrap(), odd);
    }
}

#[test]
fn lemma2_examples() {
    let r = verify_lemma2_odd(&knot(TREFOIL), 3, lim()).unwrap();
    assert_eq!((r.verdict, r.order), (Verdict::Pass, OrderOutcome::Order(2)));
    assert_eq!(r.abelian, "Z/2");
    let r = verify_lemma2_odd(&knot("TB[5/3]"), 5, lim()).unwrap();
    assert_eq!((r.verdict, r.order), (Verdict::Pass, OrderOutcome::Order(2)));
    assert_eq!(
        verify_lemma2_odd(&knot(TREFOIL), 2, lim()).unwrap_err(),
        VerifyError::ParityMismatch { n: 2 }
    );

    let r = verify_lemma2_even(&knot("TB[3/1]"), 2, lim()).unwrap();
    assert_eq!((r.verdict, r.order), (Verdict::Pass, OrderOutcome::Order(6)));
    assert_eq!(r.longitude_trivial, Triviality::True);
    assert_eq!(r.double_coset, Some(true));
    let r = verify_lemma2_even(&knot("TB[5/3]"), 4, lim()).unwrap();
    assert_eq!((r.verdict, r.order), (Verdict::Pass, OrderOutcome::Order(10)));
    assert_eq!(r.longitude_trivial, Triviality::True);
    let r = verify_lemma2_even(&knot("TB[1/1]"), 0, lim()).unwrap();
    assert_eq!((r.verdict, r.order), (Verdict::Pass, OrderOutcome::Order(2)));
    assert_eq!(r.kind, ReportKind::Lemma2Even);
}

#[test]
fn every_corpus_knot_passes_lemma2() {
    for k in corpus::knots() {
        for n in 0..=7 {
            let r = verify_lemma2(&k, n, lim()).unwrap();
            assert_eq!(r.verdict, Verdict::Pass, "{} n = {n}: {:?}", k.name(), r.checks);
            assert_eq!(r.abelian, "Z/2");
            let expected = if n % 2 == 1 { 2 } else { 2 * k.determinant().unwrap() as usize };
            assert_eq!(r.order, OrderOutcome::Order(expected));
        }
    }
}

#[test]
fn wrong_determinant_fails() {
    let k = knot("TB[5/3]").with_determinant(Some(7));
    let r = verify_lemma2_even(&k, 2, lim()).unwrap();
    assert_eq!(r.verdict, Verdict::Fail);
}

#[test]
fn theorem1_examples() {
    let r = verify_theorem1_group_level(&knot(TREFOIL), 3, lim()).unwrap();
    assert_eq!((r.verdict, r.order), (Verdict::Pass, OrderOutcome::Order(2)));
    let r = verify_theorem1_group_level(&knot("TB[5/3]"), 2, lim()).unwrap();
    assert_eq!((r.verdict, r.order), (Verdict::Pass, OrderOutcome::Order(10)));
    let r = verify_theorem1_group_level(&knot(TREFOIL), 1, lim()).unwrap();
    assert_eq!((r.verdict, r.order), (Verdict::Pass, OrderOutcome::Order(2)));
    assert!(r.notes.iter().any(|n| n.contains("group-level")));
}

#[test]
fn witness_search() {
    let trefoil = knot(TREFOIL);
    let r = boyle_witness_search(&trefoil, 3, [2], lim()).unwrap();
    assert_eq!(r.witness, None);
    assert_eq!(r.entries[0].longitude_trivial, Triviality::True);

    let r = boyle_witness_search(&knot("PD[]"), 3, 2..=6, lim()).unwrap();
    assert_eq!(r.witness, None);

    // Frozen regression: the first quotient with a surviving longitude.
    for k in [trefoil, knot("TB[3/1]")] {
        let r = boyle_witness_search(&k, 3, 3..=6, lim()).unwrap();
        let w = r.witness.expect("witness at m = 3");
        assert_eq!((w.m, w.order), (3, OrderOutcome::Order(24)));
        assert_eq!(w.longitude_trivial, Triviality::False);
        // Cross-check the completing quotient with the closure oracle.
        let q = meridian_power_quotient(&twist_spin_presentation(k.presentation(), 3), 3).unwrap();
        assert_eq!(common::closure_order(&q, 5000), Some(24));
        let t = regular_table(&q, lim()).unwrap();
        assert_eq!(word_is_trivial_in(&t, k.longitude()), Triviality::False);
    }
    assert_eq!(
        boyle_witness_search(&knot(TREFOIL), 2, [2], lim()).unwrap_err(),
        VerifyError::TwistTooSmall(2)
    );
}

#[test]
fn surface_knot_spec() {
    let spec = SurfaceKnotSpec::tau(knot("TB[3/1]"), 3).connect_sum(3, -2).unwrap();
    assert_eq!(spec.to_string(), "tau^3 TB[3/1] # P3(-2)");
    let twice = spec.clone().connect_sum(1, 2).unwrap();
    assert_eq!(twice.presentation(), spec.presentation());
    assert_eq!(
        SurfaceKnotSpec::tau(knot("TB[3/1]"), 1).connect_sum(2, 2).unwrap_err(),
        SpinError::InvalidSummand { genus: 2, euler: 2 }
    );
    assert!(SurfaceKnotSpec::tau(knot("TB[3/1]"), 1).connect_sum(1, 1).is_err());
}
