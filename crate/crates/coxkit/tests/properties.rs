//! Property suites: ring laws for the exact scalars, round-trips for the
//! graph formats, representation invariants, and rewriting confluence.

use std::sync::Arc;

use coxkit::artin::{self, ArtinWord};
use coxkit::coxeter::{CoxeterSystem, RootVec, Word};
use coxkit::graph::{CoxeterGraph, Label};
use coxkit::scalar::{CycScalar, ScalarContext, Sign};
use coxkit::va::{self, PairKind, VALetter, VAWord};

use proptest::prelude::*;

fn ctx() -> Arc<ScalarContext> {
    ScalarContext::for_labels([3u64, 4])
}

fn arb_scalar() -> impl Strategy<Value = CycScalar> {
    // real elements: random rational combinations of 1, 2cos(pi/3), 2cos(pi/4)
    // and their products
    (
        proptest::collection::vec((-20i64..=20, 1i64..=4), 3),
        0usize..4,
    )
        .prop_map(|(coeffs, twist)| {
            let ctx = ctx();
            let c3 = CycScalar::two_cos(&ctx, 3).unwrap();
            let c4 = CycScalar::two_cos(&ctx, 4).unwrap();
            let c12 = CycScalar::two_cos(&ctx, 12).unwrap();
            let basis = [CycScalar::one(&ctx), c4, c12];
            let mut acc = CycScalar::zero(&ctx);
            for ((num, den), b) in coeffs.into_iter().zip(basis.iter()) {
                let r = num_rational::BigRational::new(num.into(), den.into());
                acc = acc.add(&b.scale(&r));
            }
            for _ in 0..twist {
                acc = acc.mul(&c3.add(&CycScalar::one(&ctx)));
            }
            acc
        })
}

proptest! {
    #[test]
    fn scalar_ring_laws(a in arb_scalar(), b in arb_scalar(), c in arb_scalar()) {
        prop_assert_eq!(a.add(&b), b.add(&a));
        prop_assert_eq!(a.mul(&b), b.mul(&a));
        prop_assert_eq!(a.add(&b).add(&c), a.add(&b.add(&c)));
        prop_assert_eq!(a.mul(&b).mul(&c), a.mul(&b.mul(&c)));
        prop_assert_eq!(a.mul(&b.add(&c)), a.mul(&b).add(&a.mul(&c)));
        prop_assert_eq!(a.sub(&a), CycScalar::zero(a.context()));
    }

    #[test]
    fn scalar_sign_consistency(a in arb_scalar()) {
        let s = a.sign_or_zero();
        let t = a.neg().sign_or_zero();
        match s {
            Sign::Zero => prop_assert_eq!(t, Sign::Zero),
            Sign::Positive => prop_assert_eq!(t, Sign::Negative),
            Sign::Negative => prop_assert_eq!(t, Sign::Positive),
        }
        prop_assert!(matches!(a.mul(&a).sign_or_zero(), Sign::Zero | Sign::Positive));
    }

    #[test]
    fn scalar_inverse_when_nonzero(a in arb_scalar()) {
        if !a.is_zero() {
            let inv = a.inverse().unwrap();
            prop_assert_eq!(a.mul(&inv), CycScalar::one(a.context()));
        }
    }
}

fn arb_graph() -> impl Strategy<Value = CoxeterGraph> {
    (1usize..=5).prop_flat_map(|n| {
        let pairs = n * (n - 1) / 2;
        proptest::collection::vec(0usize..6, pairs).prop_map(move |labels| {
            let names: Vec<String> = (0..n).map(|i| format!("g{i}")).collect();
            let table = [
                Label::Finite(2),
                Label::Finite(3),
                Label::Finite(4),
                Label::Finite(5),
                Label::Finite(6),
                Label::Infinity,
            ];
            let mut edges = Vec::new();
            let mut k = 0;
            for i in 0..n {
                for j in i + 1..n {
                    let l = table[labels[k]];
                    k += 1;
                    if l != Label::Finite(2) {
                        edges.push((names[i].clone(), names[j].clone(), l));
                    }
                }
            }
            CoxeterGraph::new(names, &edges).unwrap()
        })
    })
}

proptest! {
    #[test]
    fn graph_round_trips(g in arb_graph()) {
        prop_assert_eq!(&CoxeterGraph::parse(&g.emit_text()).unwrap(), &g);
        prop_assert_eq!(&CoxeterGraph::parse(&g.emit_json()).unwrap(), &g);
    }
}

fn b3() -> CoxeterSystem {
    CoxeterSystem::new(CoxeterGraph::parse("vertices x y z\nedge x y 4\nedge y z 3\n").unwrap())
}

fn arb_vector() -> impl Strategy<Value = Vec<i64>> {
    proptest::collection::vec(-5i64..=5, 3)
}

proptest! {
    #[test]
    fn reflections_preserve_the_form(v in arb_vector(), u in arb_vector(), s in 0usize..3) {
        let sys = b3();
        let mk = |c: &[i64]| RootVec::new(
            c.iter().map(|&x| CycScalar::from_integer(sys.context(), x)).collect());
        let (v, u) = (mk(&v), mk(&u));
        let lhs = sys.inner(&sys.reflect(s, &v), &sys.reflect(s, &u));
        prop_assert_eq!(lhs, sys.inner(&v, &u));
    }

    #[test]
    fn element_of_respects_defining_relations(
        prefix in proptest::collection::vec(0usize..3, 0..6),
        suffix in proptest::collection::vec(0usize..3, 0..6),
        which in 0usize..4,
    ) {
        let sys = b3();
        // apply one defining relation in the middle of the word
        let (lhs, rhs): (Vec<usize>, Vec<usize>) = match which {
            0 => (vec![0, 0], vec![]),                  // involution
            1 => (vec![1, 2, 1], vec![2, 1, 2]),        // braid, m = 3
            2 => (vec![0, 1, 0, 1], vec![1, 0, 1, 0]),  // braid, m = 4
            _ => (vec![0, 2], vec![2, 0]),              // commutation
        };
        let w1: Vec<usize> = prefix.iter().chain(lhs.iter()).chain(suffix.iter()).copied().collect();
        let w2: Vec<usize> = prefix.iter().chain(rhs.iter()).chain(suffix.iter()).copied().collect();
        prop_assert_eq!(sys.element_of(&Word(w1)), sys.element_of(&Word(w2)));
    }

    #[test]
    fn reduced_words_are_canonical(letters in proptest::collection::vec(0usize..3, 0..10)) {
        let sys = b3();
        let el = sys.element_of(&Word(letters.clone()));
        let red = sys.reduced_word(&el);
        prop_assert!(red.len() <= letters.len());
        prop_assert_eq!(sys.element_of(&red), el);
        // canonical: reducing the reduced word is the identity operation
        prop_assert_eq!(&sys.reduced_word(&sys.element_of(&red)), &red);
    }
}

fn arb_artin_word() -> impl Strategy<Value = ArtinWord> {
    proptest::collection::vec((0usize..3, prop_oneof![Just(1i8), Just(-1i8)]), 0..12)
        .prop_map(ArtinWord)
}

proptest! {
    #[test]
    fn omega_is_move_invariant(w in arb_artin_word(), pos in 0usize..12, which in 0usize..3) {
        let sys = b3();
        let at = pos.min(w.len());
        let mut letters = w.0.clone();
        match which {
            0 => {
                // free insertion
                letters.splice(at..at, [(1, 1), (1, -1)]);
            }
            1 => {
                // braid insertion: sigma_y sigma_z sigma_y (sigma_z sigma_y sigma_z)^-1
                letters.splice(
                    at..at,
                    [(1, 1), (2, 1), (1, 1), (2, -1), (1, -1), (2, -1)],
                );
            }
            _ => {
                // free reduction of the whole word
                letters = artin::free_reduce(&w).0;
            }
        }
        let moved = ArtinWord(letters);
        prop_assert_eq!(artin::omega(&sys, &moved), artin::omega(&sys, &w));
    }

    #[test]
    fn free_reduction_is_confluent(
        w in arb_artin_word(),
        order in proptest::collection::vec(0usize..32, 0..40),
    ) {
        // cancel adjacent inverse pairs in an arbitrary order; the fixpoint
        // must match the stack-based reduction
        let mut letters = w.0.clone();
        let mut picks = order.into_iter();
        loop {
            let sites: Vec<usize> = (0..letters.len().saturating_sub(1))
                .filter(|&i| letters[i].0 == letters[i + 1].0 && letters[i].1 == -letters[i + 1].1)
                .collect();
            if sites.is_empty() {
                break;
            }
            let pick = picks.next().unwrap_or(0) % sites.len();
            let at = sites[pick];
            letters.drain(at..at + 2);
        }
        prop_assert_eq!(ArtinWord(letters), artin::free_reduce(&w));
    }
}

fn arb_va_word() -> impl Strategy<Value = VAWord> {
    proptest::collection::vec(
        prop_oneof![
            (0usize..2, prop_oneof![Just(1i8), Just(-1i8)])
                .prop_map(|(s, e)| VALetter::Sigma(s, e)),
            (0usize..2).prop_map(VALetter::Tau),
        ],
        0..12,
    )
    .prop_map(VAWord)
}

proptest! {
    #[test]
    fn projections_match_normal_pairs(w in arb_va_word()) {
        let sys = CoxeterSystem::new(
            CoxeterGraph::parse("vertices x y\nedge x y 4\n").unwrap());
        let roots = sys.enumerate_roots(None).unwrap();
        let ctx = va::VaContext::new(&sys, &roots);
        for kind in [PairKind::K, PairKind::P] {
            let pair = ctx.normal_pair(&w, kind).unwrap();
            prop_assert_eq!(&pair.coxeter, &va::project(&sys, &w, kind));
        }
    }

    #[test]
    fn va_free_reduction_is_idempotent(w in arb_va_word()) {
        let once = va::free_reduce_va(&w);
        prop_assert_eq!(&va::free_reduce_va(&once), &once);
        // reduction never changes the two projections
        let sys = CoxeterSystem::new(
            CoxeterGraph::parse("vertices x y\nedge x y 4\n").unwrap());
        for kind in [PairKind::K, PairKind::P] {
            prop_assert_eq!(
                va::project(&sys, &once, kind),
                va::project(&sys, &w, kind)
            );
        }
    }
}
