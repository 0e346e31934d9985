use std::collections::BTreeMap;

use num_bigint::BigInt;
use proptest::prelude::*;
use proptest::sample::subsequence;

use schubcalc::bpd::{droop_closure, enumerate_bpds, enumerate_bpds_in};
use schubcalc::perm::all_permutations;
use schubcalc::pipedream::{enumerate_pds, enumerate_pds_in};
use schubcalc::poly::Monomial;
use schubcalc::puzzle::builders::{bpd_board, bpd_rule, pd_board, pd_rule};
use schubcalc::puzzle::solver::check_solution;
use schubcalc::puzzle::ybe::ybe_check_oriented;
use schubcalc::puzzle::{solve, TileCatalog, YbeValuations};
use schubcalc::schubert::{schubert_along, schubert_double, schubert_single};
use schubcalc::{Permutation, Polynomial};

fn perm(max_n: usize) -> impl Strategy<Value = Permutation> {
    (1..=max_n)
        .prop_flat_map(|n| Just((1..=n as u32).collect::<Vec<_>>()).prop_shuffle())
        .prop_map(|v| Permutation::from_one_line(&v).unwrap())
}

fn perm_in(n: usize) -> impl Strategy<Value = Permutation> {
    Just((1..=n as u32).collect::<Vec<_>>())
        .prop_shuffle()
        .prop_map(|v| Permutation::from_one_line(&v).unwrap())
}

fn poly() -> impl Strategy<Value = Polynomial> {
    let term = (
        -4i64..=4,
        prop::collection::vec(0u32..3, 4),
        prop::collection::vec(0u32..2, 2),
    )
        .prop_map(|(c, x, y)| (c, Monomial::new(x, y)));
    prop::collection::vec(term, 0..5).prop_map(Polynomial::from_terms)
}

fn points() -> impl Strategy<Value = (Vec<i64>, Vec<i64>)> {
    (
        prop::collection::vec(-5i64..=5, 5),
        prop::collection::vec(-5i64..=5, 3),
    )
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn inverse_is_two_sided(w in perm(6)) {
        let inv = w.inverse();
        prop_assert!(w.multiply(&inv).is_identity());
        prop_assert!(inv.multiply(&w).is_identity());
        prop_assert_eq!(inv.inverse(), w.clone());
        prop_assert_eq!(inv.length(), w.length());
    }

    #[test]
    fn composition_is_function_composition(u in perm_in(5), v in perm_in(5), i in 1usize..=5) {
        prop_assert_eq!(u.multiply(&v).apply(i), u.apply(v.apply(i)));
    }

    #[test]
    fn display_round_trips(w in perm(7)) {
        prop_assert_eq!(w.to_string().parse::<Permutation>().unwrap(), w);
    }

    #[test]
    fn reduced_words_multiply_to_w(w in perm(5).prop_filter("short", |w| w.length() <= 6)) {
        let words = w.reduced_words();
        prop_assert!(!words.is_empty());
        prop_assert!(words.contains(&w.min_reduced_word()));
        for word in words {
            prop_assert_eq!(word.len(), w.length());
            prop_assert_eq!(Permutation::from_word(&word), w.clone());
        }
    }

    #[test]
    fn factorizations_are_symmetric(w in perm(5)) {
        let f = w.reduced_factorizations();
        let g = w.inverse().reduced_factorizations();
        let mut mapped: Vec<_> = f.iter().map(|(u, v)| (v.inverse(), u.inverse())).collect();
        mapped.sort();
        prop_assert_eq!(mapped, g);
        if !w.is_identity() {
            prop_assert!(f.len() >= 2);
        }
        for (u, v) in &f {
            prop_assert_eq!(u.multiply(v), w.clone());
            prop_assert_eq!(u.length() + v.length(), w.length());
        }
    }

    #[test]
    fn bruhat_refines_length(u in perm_in(5), w in perm_in(5)) {
        if u.bruhat_lt(&w) {
            prop_assert!(u.length() < w.length());
            prop_assert!(!w.bruhat_leq(&u));
        }
        prop_assert!(u.bruhat_leq(&u));
        prop_assert!(Permutation::identity().bruhat_leq(&u));
        prop_assert!(u.bruhat_leq(&Permutation::longest_element(5).unwrap()));
    }

    #[test]
    fn bruhat_is_transitive(a in perm_in(4), b in perm_in(4), c in perm_in(4)) {
        if a.bruhat_leq(&b) && b.bruhat_leq(&c) {
            prop_assert!(a.bruhat_leq(&c));
        }
    }

    #[test]
    fn ring_laws(f in poly(), g in poly(), h in poly()) {
        prop_assert_eq!(&f + &g, &g + &f);
        prop_assert_eq!(&f * &g, &g * &f);
        prop_assert_eq!(&(&f + &g) + &h, &f + &(&g + &h));
        prop_assert_eq!(&(&f * &g) * &h, &f * &(&g * &h));
        prop_assert_eq!(&f * &(&g + &h), &(&f * &g) + &(&f * &h));
        prop_assert!((&f - &f).is_zero());
        prop_assert_eq!(&f * &Polynomial::one(), f.clone());
    }

    #[test]
    fn evaluation_is_a_homomorphism(f in poly(), g in poly(), (x, y) in points()) {
        prop_assert_eq!((&f * &g).evaluate(&x, &y), f.evaluate(&x, &y) * g.evaluate(&x, &y));
        prop_assert_eq!((&f + &g).evaluate(&x, &y), f.evaluate(&x, &y) + g.evaluate(&x, &y));
    }

    #[test]
    fn text_round_trips(f in poly()) {
        prop_assert_eq!(f.to_string().parse::<Polynomial>().unwrap(), f);
    }

    #[test]
    fn demazure_is_nilpotent(f in poly(), i in 1usize..4) {
        prop_assert!(f.demazure(i).demazure(i).is_zero());
    }

    #[test]
    fn demazure_braid(f in poly(), i in 1usize..3) {
        let lhs = f.demazure(i).demazure(i + 1).demazure(i);
        let rhs = f.demazure(i + 1).demazure(i).demazure(i + 1);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn demazure_commutes_far_apart(f in poly(), i in 1usize..5, j in 1usize..5) {
        prop_assume!(i.abs_diff(j) >= 2);
        prop_assert_eq!(f.demazure(i).demazure(j), f.demazure(j).demazure(i));
    }

    #[test]
    fn twisted_leibniz(f in poly(), g in poly(), i in 1usize..4) {
        let lhs = (&f * &g).demazure(i);
        let rhs = &(&f.demazure(i) * &g) + &(&f.swap_x(i) * &g.demazure(i));
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn swap_is_an_involution(f in poly(), i in 1usize..4) {
        prop_assert_eq!(f.swap_x(i).swap_x(i), f.clone());
        prop_assert_eq!(f.demazure(i).swap_x(i), f.demazure(i));
    }

    #[test]
    fn demazure_times_difference(f in poly(), i in 1usize..4) {
        // (x_i - x_{i+1}) d_i f = f - s_i f
        let diff = &Polynomial::x(i) - &Polynomial::x(i + 1);
        prop_assert_eq!(&diff * &f.demazure(i), &f - &f.swap_x(i));
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn schubert_is_stable(w in perm(4)) {
        let n = w.size().max(1);
        for m in [n, n + 1] {
            let w0 = Permutation::longest_element(m).unwrap();
            let word = w.inverse().multiply(&w0).min_reduced_word();
            prop_assert_eq!(schubert_along(&w, m, &word, false).unwrap(), schubert_single(&w));
        }
        prop_assert_eq!(schubert_double(&w, 4).unwrap(), schubert_double(&w, 5).unwrap());
    }

    #[test]
    fn schubert_is_independent_of_the_word(w in perm_in(4), pick in any::<prop::sample::Index>()) {
        let target = w.inverse().multiply(&Permutation::longest_element(4).unwrap());
        let words: Vec<_> = target.reduced_words().into_iter().collect();
        let word = pick.get(&words);
        prop_assert_eq!(schubert_along(&w, 4, word, true).unwrap(), schubert_double(&w, 4).unwrap());
    }

    #[test]
    fn schubert_shape(w in perm(5)) {
        let s = schubert_single(&w);
        prop_assert!(s.is_homogeneous(w.length() as u32));
        let lead = Monomial::new(w.code().iter().map(|&c| c as u32).collect(), vec![]);
        prop_assert_eq!(s.coefficient(&lead), 1);
        prop_assert!(s.terms().all(|(_, c)| c > 0));
        let n = w.size().max(1);
        prop_assert_eq!(schubert_double(&w, n).unwrap().set_y_zero(), s);
    }

    #[test]
    fn pipe_dreams(w in perm(5)) {
        let n = w.size().max(1);
        let pds = enumerate_pds_in(&w, n);
        for pd in &pds {
            prop_assert!(pd.is_reduced());
            prop_assert_eq!(pd.permutation(), w.clone());
        }
        let single: Polynomial = pds.iter().map(|p| p.weight_single()).sum();
        prop_assert_eq!(single, schubert_single(&w));
        prop_assert_eq!(enumerate_pds(&w).len(), pds.len());
    }

    #[test]
    fn bumpless_pipe_dreams(w in perm(5)) {
        let n = w.size().max(1);
        let bpds = enumerate_bpds_in(&w, n);
        for b in &bpds {
            prop_assert_eq!(b.blanks().len(), w.length());
            prop_assert_eq!(b.permutation().unwrap(), w.clone());
        }
        let mut a = enumerate_bpds(&w);
        let mut b = droop_closure(&w);
        a.sort();
        b.sort();
        prop_assert_eq!(a, b);
        let double: Polynomial = bpds.iter().map(|b| b.weight_double()).sum();
        prop_assert_eq!(double, schubert_double(&w, n).unwrap());
    }

    #[test]
    fn pipe_dream_and_bumpless_values_agree(w in perm_in(4), (x, y) in points()) {
        let pd: BigInt = enumerate_pds_in(&w, 4).iter().map(|p| p.weight_double().evaluate(&x, &y)).sum();
        let bpd: BigInt = enumerate_bpds_in(&w, 4).iter().map(|b| b.weight_double().evaluate(&x, &y)).sum();
        prop_assert_eq!(pd, bpd);
    }
}

#[test]
fn pipe_dreams_partition_reduced_subsets() {
    use schubcalc::pipedream::all_reduced_pds;
    for n in 1..=4 {
        let by_perm: usize = all_permutations(n)
            .map(|w| enumerate_pds_in(&w, n).len())
            .sum();
        assert_eq!(by_perm, all_reduced_pds(n).len());
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn puzzle_solutions_conserve_and_are_acyclic(w in perm_in(4), double in any::<bool>()) {
        let cat = TileCatalog::full();
        for (board, rule) in [
            (pd_board(4, double), pd_rule(&w, 4).unwrap()),
            (bpd_board(4, double), bpd_rule(&w, 4).unwrap()),
        ] {
            for s in solve(&board, &rule, &cat).unwrap() {
                prop_assert!(check_solution(&board, &cat, &s).is_ok());
            }
        }
    }

    #[test]
    fn ybe_verdict_is_symmetric_under_swap(keep in subsequence((0..15usize).collect::<Vec<_>>(), 4..=15)) {
        let full = TileCatalog::full();
        let lean: Vec<usize> = full
            .tiles
            .iter()
            .enumerate()
            .filter(|(_, t)| t.orientation != schubcalc::puzzle::Orientation::Square)
            .map(|(i, _)| i)
            .collect();
        let mut tiles: Vec<_> = keep.iter().filter_map(|&k| lean.get(k)).map(|&i| full.tiles[i].clone()).collect();
        tiles.extend(TileCatalog::bpd().tiles);
        let cat = TileCatalog { name: None, passes: vec![], tiles };
        let v = YbeValuations::standard(1);
        let a = ybe_check_oriented(&cat, &v, true, false).unwrap();
        let b = ybe_check_oriented(&cat, &v, true, true).unwrap();
        let verdicts = |r: &schubcalc::puzzle::YbeReport| -> BTreeMap<_, _> {
            let mut m = BTreeMap::new();
            for c in &r.cases {
                let e = m.entry(c.boundary.clone()).or_insert(true);
                *e &= c.equal;
            }
            m
        };
        prop_assert_eq!(verdicts(&a), verdicts(&b));
        prop_assert_eq!(a.passed, b.passed);
    }
}
