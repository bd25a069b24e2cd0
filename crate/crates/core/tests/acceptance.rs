//! Acceptance suite: every criterion of the reproduction catalog as one test
//! with a pass/fail line. All assertions are exact; the stated per-criterion
//! runtime limits are enforced.

use antiflag::classify::{
    are_isomorphic, automorphism_group, canonical_form, classify_family,
    orbits_under_point_relabeling, recognize_group,
};
use antiflag::construct1::{
    b1_choices_from_index, b1_relaxed_space, build_c1_a1, build_c1_b1, build_c1_b1_relaxed,
    build_c1_general, build_c1_general_from, default_pi, expected_params_c1, C1Mode,
};
use antiflag::construct2::{blow_up, build_d1, build_d2, expected_params_c2, C2Variant};
use antiflag::designs::{
    chunked_pointwise_family, projective_plane_family, PartitionFamilySpace,
};
use antiflag::fixtures::{load_fixture, ten_point_design, t4_relation_table};
use antiflag::graphs::{verify_dsrg, verify_srg, Digraph, DsrgParams};
use antiflag::schemes::{orbital_scheme, AssociationScheme, DecompositionOutcome, FuseOutcome};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use std::collections::{BTreeSet, HashSet};
use std::time::Instant;

fn assert_verifies(graph: &Digraph, expected: DsrgParams, what: &str) {
    let check = verify_dsrg(graph)
        .unwrap_or_else(|w| panic!("{what}: verification failed with witness: {w}"));
    assert_eq!(check.params, expected, "{what}: wrong parameters");
}

#[test]
fn criterion_01_general_construction() {
    let start = Instant::now();
    let expected = DsrgParams::new(100, 40, 18, 13, 18);

    let default_graph = build_c1_general(2, 5, 2, 2).expect("default build");
    assert_verifies(&default_graph, expected, "default (r=2,q=5,a=2,b=2)");

    let table_graph = build_c1_general_from(&ten_point_design()).expect("explicit build");
    assert_verifies(&table_graph, expected, "published 10-point design");

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 5.0, "runtime {elapsed:?} ≥ 5 s");
    println!("criterion 1: PASS — both (100,40,18,13,18) builds verified in {elapsed:?}");
}

#[test]
fn criterion_02_b1_parameter_sweep() {
    let start = Instant::now();
    let rows = [(3usize, 5usize), (3, 6), (3, 8), (3, 9), (3, 11), (3, 12), (5, 3), (6, 3)];
    for (q, r) in rows {
        let expected = expected_params_c1(C1Mode::B1, r, q, q - 1, 1).expect("row params");
        let graph = build_c1_b1(r, q).expect("b=1 build");
        assert_verifies(&graph, expected, &format!("b=1 row (q={q}, r={r})"));
    }
    // spot-check the two rows called out explicitly
    assert_eq!(
        expected_params_c1(C1Mode::B1, 5, 3, 2, 1).unwrap(),
        DsrgParams::new(45, 30, 22, 19, 22)
    );
    assert_eq!(
        expected_params_c1(C1Mode::B1, 3, 6, 5, 1).unwrap(),
        DsrgParams::new(108, 90, 80, 74, 80)
    );

    for (q, r, expected) in [
        (3, 5, DsrgParams::new(90, 60, 44, 38, 44)),
        (3, 6, DsrgParams::new(108, 72, 52, 46, 52)),
    ] {
        let base = build_c1_b1(r, q).expect("b=1 build");
        let doubled = blow_up(&base, C2Variant::D1, 2).expect("m=2 blow-up");
        assert_verifies(&doubled, expected, &format!("m=2 blow-up of (q={q}, r={r})"));
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "runtime {elapsed:?} ≥ 60 s");
    println!("criterion 2: PASS — 8 sweep rows and 2 blow-up rows verified in {elapsed:?}");
}

#[test]
fn criterion_03_orientation_asymmetry() {
    let graph = build_c1_b1(2, 3).expect("b=1 build");
    assert_verifies(&graph, DsrgParams::new(18, 12, 10, 7, 10), "(r=2,q=3)");
    assert!(
        are_isomorphic(&graph, &graph.transpose()).is_none(),
        "graph must not be isomorphic to its transpose"
    );
    println!("criterion 3: PASS — (18,12,10,7,10) verified, not isomorphic to its transpose");
}

#[test]
fn criterion_04_relaxed_enumeration_classes() {
    let total = b1_relaxed_space(3, 2).expect("space");
    assert_eq!(total, 64, "relaxed choice space");
    let mut graphs = Vec::new();
    for index in 0..total {
        let graph = build_c1_b1_relaxed(3, 2, &b1_choices_from_index(3, 2, index))
            .expect("relaxed build");
        assert_verifies(&graph, DsrgParams::new(12, 6, 4, 2, 4), "relaxed instance");
        graphs.push(graph);
    }

    let report = classify_family(graphs, 2);
    assert_eq!(report.classes.len(), 7, "class count");

    // published per-matrix rows: (class size, aut order, aut name)
    let fixture_rows = [
        (4usize, 12u128, "D12"),
        (6, 8, "D8"),
        (12, 4, "C2×C2"),
        (12, 4, "C2×C2"),
        (4, 12, "D12"),
        (2, 24, "S4"),
        (24, 2, "C2"),
    ];
    let fixtures: Vec<Digraph> = (1..=7)
        .map(|i| load_fixture(&format!("N{i}")).expect("fixture"))
        .collect();

    let mut matched_fixture = [false; 7];
    for class in &report.classes {
        let idx = (0..7)
            .find(|&i| are_isomorphic(&class.representative, &fixtures[i]).is_some())
            .expect("class representative must match one of N1..N7");
        assert!(!matched_fixture[idx], "two classes matched N{}", idx + 1);
        matched_fixture[idx] = true;
        let (size, aut_order, aut_name) = fixture_rows[idx];
        assert_eq!(class.size(), size, "size of the class matching N{}", idx + 1);
        assert_eq!(
            class.automorphisms.order(),
            aut_order,
            "Aut order of the class matching N{}",
            idx + 1
        );
        assert_eq!(
            class.aut_name,
            aut_name,
            "Aut name of the class matching N{}",
            idx + 1
        );
    }
    assert!(matched_fixture.iter().all(|&m| m), "every fixture matched");
    println!(
        "criterion 4: PASS — 64 verified graphs, 7 classes with the published sizes and \
         automorphism groups, all matching N1..N7 (transpose closure asserted separately)"
    );
}

/// The published transpose-closure count for the 64 relaxed graphs. This
/// assertion is stated as published and is expected to FAIL: the class
/// matching the fifth published matrix is isomorphic to its own transpose
/// (witness permutation [0,11,8,3,4,10,9,7,2,6,5,1] maps it onto its
/// reverse, verified both by the canonical-form engine and by an independent
/// backtracking search), so adjoining transposes yields 13 classes, not 14.
/// Removing or weakening this test would hide a real discrepancy in the
/// source tables; the other twelve classes and every other published number
/// in this family are reproduced exactly.
#[test]
fn criterion_04_transpose_closure_as_published() {
    let total = b1_relaxed_space(3, 2).expect("space");
    let graphs: Vec<Digraph> = (0..total)
        .map(|index| {
            build_c1_b1_relaxed(3, 2, &b1_choices_from_index(3, 2, index)).expect("relaxed build")
        })
        .collect();
    let report = classify_family(graphs, 2);
    let self_transpose: Vec<String> = report
        .classes
        .iter()
        .filter(|c| c.self_transpose)
        .map(|c| format!("size {} Aut {}", c.size(), c.aut_name))
        .collect();
    assert_eq!(
        report.classes_with_transposes, 14,
        "published count not reproducible: adjoining transposes yields {} classes because \
         one class is self-transpose ({:?}); the published claim that all seven \
         orientation-reversing conjugates are new graphs fails for exactly that class",
        report.classes_with_transposes, self_transpose
    );
    println!("criterion 4 (transpose closure): PASS — 14 classes after adjoining transposes");
}

#[test]
fn criterion_05_a1_construction() {
    let start = Instant::now();
    for (r, q, expected) in [
        (3usize, 2usize, DsrgParams::new(12, 6, 4, 2, 4)),
        (5, 2, DsrgParams::new(20, 10, 6, 4, 6)),
        (5, 3, DsrgParams::new(90, 30, 11, 8, 11)),
        (6, 3, DsrgParams::new(108, 36, 13, 10, 13)),
    ] {
        let built = build_c1_a1(r, q, &default_pi(r, q)).expect("a=1 build");
        assert_verifies(&built.graph, expected, &format!("a=1 (r={r}, q={q})"));
    }
    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 30.0, "runtime {elapsed:?} ≥ 30 s");
    println!("criterion 5: PASS — four a=1 rows verified in {elapsed:?}");
}

#[test]
fn criterion_06_orbit_classification() {
    let start = Instant::now();
    let space = PartitionFamilySpace::new(5, 2, 2).expect("space");
    assert_eq!(space.len(), 243, "family count");
    let families: Vec<_> = space.iter().collect();

    let orbits = orbits_under_point_relabeling(&families, 5).expect("orbits");
    assert_eq!(orbits.len(), 7, "orbit count");
    let mut observed: Vec<(usize, u128, String)> = orbits
        .iter()
        .map(|o| (o.size, o.stabilizer.order(), o.stabilizer_name.clone()))
        .collect();
    observed.sort();
    let mut expected_rows = vec![
        (15usize, 8u128, "D8".to_string()),
        (30, 4, "C2×C2".to_string()),
        (60, 2, "C2".to_string()),
        (6, 20, "C5⋊C4".to_string()),
        (60, 2, "C2".to_string()),
        (60, 2, "C2".to_string()),
        (12, 10, "D10".to_string()),
    ];
    expected_rows.sort();
    assert_eq!(observed, expected_rows, "orbit sizes and stabilizers");

    let mut graphs = Vec::new();
    for family in &families {
        let graph = build_d1(family).expect("D1 build");
        assert_verifies(&graph, DsrgParams::new(10, 4, 2, 1, 2), "family graph");
        graphs.push(graph);
    }

    // families in one orbit produce isomorphic graphs (exhaustive)
    let certificates: Vec<Vec<u8>> = graphs
        .iter()
        .map(|g| canonical_form(g).certificate)
        .collect();
    for orbit in &orbits {
        let first = &certificates[orbit.members[0]];
        for &member in &orbit.members {
            assert_eq!(
                &certificates[member], first,
                "same-orbit families must give isomorphic graphs"
            );
        }
    }

    let report = classify_family(graphs, 2);
    assert_eq!(report.classes.len(), 7, "graph class count");
    assert_eq!(report.classes_with_transposes, 13, "classes after transposes");

    let self_transpose: Vec<_> = report.classes.iter().filter(|c| c.self_transpose).collect();
    assert_eq!(self_transpose.len(), 1, "exactly one self-transpose class");
    let t7 = load_fixture("T7").expect("fixture");
    assert!(
        are_isomorphic(&self_transpose[0].representative, &t7).is_some(),
        "the self-transpose representative matches fixture T7"
    );

    // none of the 13 classes matches the three sporadic graphs
    let sporadic: Vec<Vec<u8>> = {
        let j8 = load_fixture("J8").expect("fixture");
        let j9 = load_fixture("J9").expect("fixture");
        vec![
            canonical_form(&j8).certificate,
            canonical_form(&j9).certificate,
            canonical_form(&j8.transpose()).certificate,
        ]
    };
    let mut thirteen: HashSet<Vec<u8>> = HashSet::new();
    for class in &report.classes {
        thirteen.insert(class.certificate.clone());
        thirteen.insert(canonical_form(&class.representative.transpose()).certificate);
    }
    assert_eq!(thirteen.len(), 13);
    for cert in &sporadic {
        assert!(!thirteen.contains(cert), "a sporadic graph was constructed");
    }

    let elapsed = start.elapsed();
    assert!(elapsed.as_secs_f64() < 60.0, "runtime {elapsed:?} ≥ 60 s");
    println!(
        "criterion 6: PASS — 243 families, 7 orbits with published stabilizers, 13 classes \
         with transposes, T7 self-transpose, sporadic graphs absent ({elapsed:?})"
    );
}

#[test]
fn criterion_07_scheme_suite() {
    let t4 = load_fixture("T4").expect("fixture");
    let aut = automorphism_group(&t4);
    assert_eq!(aut.order(), 20, "Aut order");
    assert_eq!(recognize_group(&aut), "C5⋊C4", "Aut recognition");
    assert!(aut.is_transitive(), "vertex transitivity");

    let scheme = orbital_scheme(&aut).expect("orbital scheme");
    assert_eq!(scheme.class_count(), 5, "nondiagonal classes");
    assert!(!scheme.is_commutative(), "scheme must be non-commutative");

    let (n, flat) = t4_relation_table();
    let published = AssociationScheme::from_relation_matrix(n, &flat).expect("published scheme");
    assert!(
        scheme.matches_up_to_relabeling(&published),
        "orbital scheme equals the published relation table up to relabeling"
    );

    // the published fusion {{1,3,4},{2,5}} is feasible and symmetric 2-class
    let fused = match published.fuse(&[vec![1, 3, 4], vec![2, 5]]).expect("fuse") {
        FuseOutcome::Scheme(s) => s,
        FuseOutcome::Infeasible { witness, detail } => {
            panic!("published fusion infeasible at {witness:?}: {detail}")
        }
    };
    assert_eq!(fused.class_count(), 2);
    let first_relation = fused.relation_digraph(1);
    assert!(first_relation.is_symmetric(), "fused relation is symmetric");
    let srg = verify_srg(&first_relation).expect("fused relation graph");
    assert_eq!((srg.v, srg.k, srg.lambda, srg.mu), (10, 6, 3, 4));

    // symmetrization gives the same SRG
    let sym = t4.symmetrize();
    let srg = verify_srg(&sym).expect("symmetrized graph");
    assert_eq!((srg.v, srg.k, srg.lambda, srg.mu), (10, 6, 3, 4));

    // its complement is the Petersen graph, cross-checked against an
    // independent Kneser construction
    let petersen = kneser_petersen();
    let complement = sym.complement();
    let srg = verify_srg(&complement).expect("complement graph");
    assert_eq!((srg.v, srg.k, srg.lambda, srg.mu), (10, 3, 0, 1));
    assert!(
        are_isomorphic(&complement, &petersen).is_some(),
        "complement must be the Petersen graph"
    );

    // Relation decompositions. The prose labeling and the printed table
    // disagree by a swap of two class names, so the four set-level claims
    // are asserted under one single consistent relabeling of {1..5}.
    let classes_of = |g: &Digraph| -> BTreeSet<usize> {
        match published.relation_decomposition(g).expect("decomposition") {
            DecompositionOutcome::Classes(set) => set,
            DecompositionOutcome::Mismatch { x, y, detail } => {
                panic!("not a union of classes at ({x},{y}): {detail}")
            }
        }
    };
    let edge_classes = classes_of(&t4);
    let transpose_classes = classes_of(&t4.transpose());
    let sym_classes = classes_of(&sym);
    let petersen_classes = classes_of(&complement);
    let relabeling = find_class_relabeling(&[
        (&edge_classes, &[1, 3]),
        (&transpose_classes, &[1, 4]),
        (&sym_classes, &[1, 3, 4]),
        (&petersen_classes, &[2, 5]),
    ])
    .expect("a consistent class relabeling must realize all four published edge sets");
    // under that relabeling the published fusion grouping maps onto itself
    let grouping_preimage: Vec<Vec<usize>> = [[1usize, 3, 4].as_slice(), &[2, 5]]
        .iter()
        .map(|group| {
            (1..=5)
                .filter(|&c| group.contains(&relabeling[c]))
                .collect()
        })
        .collect();
    assert!(
        matches!(
            published.fuse(&grouping_preimage).expect("fuse"),
            FuseOutcome::Scheme(_)
        ),
        "published fusion grouping must stay feasible under the relabeling"
    );

    println!(
        "criterion 7: PASS — Aut C5⋊C4 of order 20, 5-class non-commutative scheme matching \
         the published table, fusion to SRG-(10,6,3,4), Petersen complement"
    );
}

/// Search for one bijection of `{1..5}` mapping every observed class set to
/// its published counterpart; returns `relabeling[old] = new`.
fn find_class_relabeling(
    constraints: &[(&BTreeSet<usize>, &[usize])],
) -> Option<Vec<usize>> {
    let mut perm = [1usize, 2, 3, 4, 5];
    let mut found: Option<Vec<usize>> = None;
    permute(&mut perm, 0, &mut |p| {
        if found.is_some() {
            return;
        }
        let ok = constraints.iter().all(|(observed, published)| {
            let mapped: BTreeSet<usize> = observed.iter().map(|&c| p[c - 1]).collect();
            mapped == published.iter().copied().collect()
        });
        if ok {
            let mut relabeling = vec![0usize; 6];
            for (i, &v) in p.iter().enumerate() {
                relabeling[i + 1] = v;
            }
            found = Some(relabeling);
        }
    });
    found
}

fn permute(items: &mut [usize; 5], k: usize, f: &mut impl FnMut(&[usize; 5])) {
    if k == items.len() {
        f(items);
        return;
    }
    for i in k..items.len() {
        items.swap(k, i);
        permute(items, k + 1, f);
        items.swap(k, i);
    }
}

fn kneser_petersen() -> Digraph {
    let pairs: Vec<(usize, usize)> = (0..5)
        .flat_map(|a| ((a + 1)..5).map(move |b| (a, b)))
        .collect();
    let mut g = Digraph::empty(10);
    for (i, &(a, b)) in pairs.iter().enumerate() {
        for (j, &(c, d)) in pairs.iter().enumerate() {
            if i != j && a != c && a != d && b != c && b != d {
                g.add_edge(i, j);
            }
        }
    }
    g
}

#[test]
fn criterion_08_randomized_construction_ii() {
    // all admissible (n, s, l, d) with ns ≤ 200, shuffled with a fixed seed
    let mut admissible = Vec::new();
    for n in 3usize..=100 {
        for s in 2..n {
            if n * s > 200 {
                continue;
            }
            for l in 1..=(n - 2) {
                for d in 1..s {
                    if d * (n - 1) == l * s {
                        admissible.push((n, s, l, d));
                    }
                }
            }
        }
    }
    assert!(admissible.len() >= 20, "admissible tuple pool");
    let mut rng = ChaCha8Rng::seed_from_u64(20260811);
    admissible.shuffle(&mut rng);

    for &(n, s, l, d) in admissible.iter().take(20) {
        let family = chunked_pointwise_family(n, s, l, d).expect("family");
        let what = format!("(n={n},s={s},l={l},d={d})");

        let d1 = build_d1(&family).expect("D1");
        let expected = expected_params_c2(n, s, l, d, C2Variant::D1, 1).unwrap();
        assert_verifies(&d1, expected, &format!("D1 {what}"));
        assert_eq!(expected.t, expected.mu, "D1 must have t = μ for {what}");

        let d2 = build_d2(&family).expect("D2");
        let expected = expected_params_c2(n, s, l, d, C2Variant::D2, 1).unwrap();
        assert_verifies(&d2, expected, &format!("D2 {what}"));

        for m in [2usize, 3] {
            if m * n * s > 400 {
                continue;
            }
            let blown = blow_up(&d1, C2Variant::D1, m).expect("D1 blow-up");
            let expected = expected_params_c2(n, s, l, d, C2Variant::D1, m).unwrap();
            assert_verifies(&blown, expected, &format!("D1 {what} m={m}"));

            let blown = blow_up(&d1, C2Variant::D2, m).expect("D2 blow-up");
            let expected = expected_params_c2(n, s, l, d, C2Variant::D2, m).unwrap();
            assert_verifies(&blown, expected, &format!("D2 {what} m={m}"));
        }
    }
    println!("criterion 8: PASS — 20 randomized families, D1/D2 and m∈{{2,3}} blow-ups exact");
}

#[test]
fn criterion_09_projective_planes() {
    for (order, d1, d2) in [
        (
            2usize,
            DsrgParams::new(21, 6, 2, 1, 2),
            DsrgParams::new(21, 8, 4, 3, 3),
        ),
        (
            3,
            DsrgParams::new(52, 12, 3, 2, 3),
            DsrgParams::new(52, 15, 6, 5, 4),
        ),
    ] {
        let family = projective_plane_family(order).expect("plane family");
        let g1 = build_d1(&family).expect("D1");
        assert_verifies(&g1, d1, &format!("plane order {order} D1"));
        let g2 = build_d2(&family).expect("D2");
        assert_verifies(&g2, d2, &format!("plane order {order} D2"));
    }
    println!("criterion 9: PASS — plane orders 2 and 3 verified for both variants");
}

/// Stretch criterion (lower bound, seeded sampling with certificate dedup).
/// The first point's partition is pinned — every isomorphism class keeps a
/// representative in that slice — and samples are drawn until 1985 distinct
/// certificates appear. Expected runtime is tens of seconds; the budget is
/// capped at 60k samples.
#[test]
fn criterion_10_lower_bound_14_6_3_2_3() {
    let start = Instant::now();
    let space = PartitionFamilySpace::new(7, 2, 3).expect("space");
    assert_eq!(space.len(), 10_000_000u128, "family space size");

    let target = 1985usize;
    let budget = 60_000usize;
    let indices = antiflag::cli::sample_indices(&space, 7237, budget, true);
    let graphs = indices.into_iter().map(|idx| {
        let family = space.family(idx);
        let graph = build_d1(&family).expect("D1");
        debug_assert_eq!(
            verify_dsrg(&graph).expect("verifies").params,
            DsrgParams::new(14, 6, 3, 2, 3)
        );
        graph
    });
    let (distinct, consumed) = antiflag::classify::distinct_certificates(graphs, Some(target));
    assert!(
        distinct >= target,
        "found only {distinct} distinct certificates in {budget} samples"
    );
    // all sampled graphs carry the expected parameters; spot-check one
    let one = build_d1(&space.family(0)).expect("D1");
    assert_verifies(&one, DsrgParams::new(14, 6, 3, 2, 3), "family 0");
    println!(
        "criterion 10: PASS — {distinct} distinct certificates after {consumed} samples \
         in {:?}",
        start.elapsed()
    );
}
