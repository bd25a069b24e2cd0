//! Property tests for the relabeling invariants and format round trips.

use antiflag::classify::canonical_form;
use antiflag::construct2::{build_d1, build_d2, expected_params_c2, C2Variant};
use antiflag::designs::chunked_pointwise_family;
use antiflag::graphs::{verify_dsrg, Digraph};
use proptest::prelude::*;

fn digraph(max_n: usize) -> impl Strategy<Value = Digraph> {
    (1..=max_n).prop_flat_map(|n| {
        proptest::collection::vec(any::<bool>(), n * n).prop_map(move |bits| {
            let entries: Vec<u8> = bits.into_iter().map(u8::from).collect();
            Digraph::from_matrix(n, &entries).unwrap()
        })
    })
}

fn with_permutation(max_n: usize) -> impl Strategy<Value = (Digraph, Vec<usize>)> {
    digraph(max_n).prop_flat_map(|g| {
        let n = g.order();
        Just((0..n).collect::<Vec<usize>>())
            .prop_shuffle()
            .prop_map(move |perm| (g.clone(), perm))
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    /// Certificates are invariant under vertex relabeling.
    #[test]
    fn certificates_are_relabeling_invariant((g, perm) in with_permutation(8)) {
        let relabeled = g.relabel(&perm);
        prop_assert_eq!(
            canonical_form(&g).certificate,
            canonical_form(&relabeled).certificate
        );
    }

    /// The verifier accepts a graph iff it accepts every relabeling, with
    /// identical parameters.
    #[test]
    fn verification_commutes_with_relabeling((g, perm) in with_permutation(8)) {
        let relabeled = g.relabel(&perm);
        match (verify_dsrg(&g), verify_dsrg(&relabeled)) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.params, b.params),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "verdicts differ: {a:?} vs {b:?}"),
        }
    }

    /// DSRG parameters are transpose-invariant (the class is closed under
    /// orientation reversal).
    #[test]
    fn transpose_preserves_verification(g in digraph(8)) {
        match (verify_dsrg(&g), verify_dsrg(&g.transpose())) {
            (Ok(a), Ok(b)) => prop_assert_eq!(a.params, b.params),
            (Err(_), Err(_)) => {}
            (a, b) => prop_assert!(false, "verdicts differ: {a:?} vs {b:?}"),
        }
    }

    /// digraph01 text round-trips bit-exactly, loops included.
    #[test]
    fn digraph01_round_trip(g in digraph(12)) {
        let text = g.to_digraph01();
        let back = Digraph::parse_digraph01(&text).unwrap();
        prop_assert_eq!(back.to_matrix(), g.to_matrix());
        prop_assert_eq!(back.to_digraph01(), text);
    }

    /// Transpose is an involution on any graph; complement (`J - I - A`)
    /// is an involution on loopless graphs, which is its domain.
    #[test]
    fn transform_involutions(g in digraph(10)) {
        prop_assert_eq!(g.transpose().transpose().to_matrix(), g.to_matrix());
        let loopless = {
            let n = g.order();
            let mut m = g.to_matrix();
            for i in 0..n {
                m[i * n + i] = 0;
            }
            Digraph::from_matrix(n, &m).unwrap()
        };
        prop_assert_eq!(
            loopless.complement().complement().to_matrix(),
            loopless.to_matrix()
        );
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    /// Exhaustive oracle for the automorphism machinery: on graphs small
    /// enough to enumerate every relabeling, |Aut(G)| times the number of
    /// distinct relabeled matrices equals n!.
    #[test]
    fn automorphism_order_against_brute_force(g in digraph(6)) {
        let n = g.order();
        let mut distinct = std::collections::HashSet::new();
        let mut perm: Vec<usize> = (0..n).collect();
        permute_all(&mut perm, 0, &mut |p| {
            distinct.insert(g.relabel(p).to_matrix());
        });
        let factorial: u128 = (1..=n as u128).product();
        let order = antiflag::classify::automorphism_group(&g).order();
        prop_assert_eq!(order * distinct.len() as u128, factorial);
    }
}

fn permute_all(items: &mut Vec<usize>, k: usize, f: &mut impl FnMut(&[usize])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute_all(items, k + 1, f);
        items.swap(k, i);
    }
}

/// Every stored fixture keeps its certificate under 100 seeded random
/// relabelings.
#[test]
fn fixture_certificates_survive_relabeling() {
    use rand::seq::SliceRandom;
    use rand::SeedableRng;
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
    for name in antiflag::fixtures::FIXTURE_NAMES {
        let g = antiflag::fixtures::load_fixture(name).unwrap();
        let base = canonical_form(&g).certificate;
        let n = g.order();
        for _ in 0..100 {
            let mut perm: Vec<usize> = (0..n).collect();
            perm.shuffle(&mut rng);
            assert_eq!(
                canonical_form(&g.relabel(&perm)).certificate,
                base,
                "{name} certificate changed under relabeling"
            );
        }
    }
}

/// Admissible small parameter tuples for the chunked family.
fn admissible_tuple() -> impl Strategy<Value = (usize, usize, usize, usize)> {
    let pool: Vec<(usize, usize, usize, usize)> = {
        let mut out = Vec::new();
        for n in 3usize..=16 {
            for s in 2..n {
                if n * s > 64 {
                    continue;
                }
                for l in 1..=(n - 2) {
                    for d in 1..s {
                        if d * (n - 1) == l * s {
                            out.push((n, s, l, d));
                        }
                    }
                }
            }
        }
        out
    };
    proptest::sample::select(pool)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    /// Every valid family builds graphs verifying with exactly the closed
    /// formulas, for both variants.
    #[test]
    fn built_graphs_match_the_formulas((n, s, l, d) in admissible_tuple()) {
        let family = chunked_pointwise_family(n, s, l, d).unwrap();
        let d1 = build_d1(&family).unwrap();
        let expected = expected_params_c2(n, s, l, d, C2Variant::D1, 1).unwrap();
        prop_assert_eq!(verify_dsrg(&d1).unwrap().params, expected);

        let d2 = build_d2(&family).unwrap();
        let expected = expected_params_c2(n, s, l, d, C2Variant::D2, 1).unwrap();
        prop_assert_eq!(verify_dsrg(&d2).unwrap().params, expected);
    }
}
