//! Reference adjacency matrices and configurations transcribed from the
//! published tables, embedded as version-controlled data files.
//!
//! `N1..N7` are the seven 12-vertex graphs of the relaxed `b = 1`
//! enumeration; `T1..T7` the seven 10-vertex orbit representatives with
//! their antiflag labels; `J8`/`J9` the two sporadic 10-vertex graphs not
//! produced by the constructions (the third is the transpose of `J8`).
//! Point labels in the sources are 1-based (with 0 standing for 10 in the
//! 10-point table); all data here is translated to 0-based.

use crate::designs::{GroupedDesign, PointwiseFamily};
use crate::graphs::Digraph;
use crate::io::{design_from_json, labels_from_json, relation_grid_from_text};
use crate::{Error, Result};
use serde::Deserialize;

const N_MATRICES: [&str; 7] = [
    include_str!("../data/n1.d01"),
    include_str!("../data/n2.d01"),
    include_str!("../data/n3.d01"),
    include_str!("../data/n4.d01"),
    include_str!("../data/n5.d01"),
    include_str!("../data/n6.d01"),
    include_str!("../data/n7.d01"),
];

const T_MATRICES: [&str; 7] = [
    include_str!("../data/t1.d01"),
    include_str!("../data/t2.d01"),
    include_str!("../data/t3.d01"),
    include_str!("../data/t4.d01"),
    include_str!("../data/t5.d01"),
    include_str!("../data/t6.d01"),
    include_str!("../data/t7.d01"),
];

const T_LABELS: [&str; 7] = [
    include_str!("../data/t1.labels.json"),
    include_str!("../data/t2.labels.json"),
    include_str!("../data/t3.labels.json"),
    include_str!("../data/t4.labels.json"),
    include_str!("../data/t5.labels.json"),
    include_str!("../data/t6.labels.json"),
    include_str!("../data/t7.labels.json"),
];

const J8: &str = include_str!("../data/j8.d01");
const J9: &str = include_str!("../data/j9.d01");
const TEN_POINT_DESIGN: &str = include_str!("../data/ten_point_design.json");
const ORBIT_REPRESENTATIVES: &str = include_str!("../data/orbit_representative_families.json");
const T4_SCHEME_RELATIONS: &str = include_str!("../data/t4_scheme_relations.txt");

pub const FIXTURE_NAMES: [&str; 16] = [
    "N1", "N2", "N3", "N4", "N5", "N6", "N7", "T1", "T2", "T3", "T4", "T5", "T6", "T7", "J8",
    "J9",
];

/// Load a transcribed matrix by name (`N1..N7`, `T1..T7`, `J8`, `J9`).
/// The `T` fixtures carry their antiflag labels.
pub fn load_fixture(name: &str) -> Result<Digraph> {
    let upper = name.to_ascii_uppercase();
    let parse_indexed = |family: &[&str; 7], idx_char: u8| -> Result<usize> {
        let _ = family;
        let idx = (idx_char as char)
            .to_digit(10)
            .filter(|&d| (1..=7).contains(&d))
            .ok_or_else(|| Error::Parameter(format!("unknown fixture {name:?}")))?;
        Ok(idx as usize - 1)
    };
    match upper.as_bytes() {
        [b'N', c] => {
            let idx = parse_indexed(&N_MATRICES, *c)?;
            Digraph::parse_digraph01(N_MATRICES[idx])
        }
        [b'T', c] => {
            let idx = parse_indexed(&T_MATRICES, *c)?;
            let mut g = Digraph::parse_digraph01(T_MATRICES[idx])?;
            g.set_labels(labels_from_json(T_LABELS[idx])?)?;
            Ok(g)
        }
        b"J8" => Digraph::parse_digraph01(J8),
        b"J9" => Digraph::parse_digraph01(J9),
        _ => Err(Error::Parameter(format!("unknown fixture {name:?}"))),
    }
}

/// The explicit 10-point grouped design of the worked `(100,40,18,13,18)`
/// example.
pub fn ten_point_design() -> GroupedDesign {
    design_from_json(TEN_POINT_DESIGN).expect("embedded design parses")
}

#[derive(Deserialize)]
struct FamiliesFile {
    n_points: usize,
    configurations: Vec<Vec<Vec<Vec<usize>>>>,
}

/// The seven orbit-representative configurations on 5 points.
pub fn orbit_representative_families() -> Vec<PointwiseFamily> {
    let raw: FamiliesFile = serde_json::from_str(ORBIT_REPRESENTATIVES).expect("embedded families parse");
    raw.configurations
        .into_iter()
        .map(|owner_blocks| PointwiseFamily {
            n_points: raw.n_points,
            owner_blocks,
            per_point_params: None,
        })
        .collect()
}

/// The published 5-class relation matrix on the 10 vertices of `D(𝒯₄)`,
/// in the same vertex order as fixture `T4`.
pub fn t4_relation_table() -> (usize, Vec<u16>) {
    relation_grid_from_text(T4_SCHEME_RELATIONS).expect("embedded relation grid parses")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graphs::{verify_dsrg, DsrgParams};

    #[test]
    fn all_n_fixtures_verify() {
        for i in 1..=7 {
            let g = load_fixture(&format!("N{i}")).unwrap();
            assert_eq!(
                verify_dsrg(&g).unwrap().params,
                DsrgParams::new(12, 6, 4, 2, 4),
                "N{i}"
            );
        }
    }

    #[test]
    fn all_t_fixtures_verify() {
        for i in 1..=7 {
            let g = load_fixture(&format!("T{i}")).unwrap();
            assert_eq!(
                verify_dsrg(&g).unwrap().params,
                DsrgParams::new(10, 4, 2, 1, 2),
                "T{i}"
            );
        }
    }

    #[test]
    fn j_fixtures_verify() {
        for name in ["J8", "J9"] {
            let g = load_fixture(name).unwrap();
            assert_eq!(
                verify_dsrg(&g).unwrap().params,
                DsrgParams::new(10, 4, 2, 1, 2),
                "{name}"
            );
        }
    }

    /// The transcribed T matrices must agree with the antiflag rule applied
    /// to their own transcribed labels: edge (u, w) iff point(u) ∈ block(w).
    /// A typo in either the matrix or the labels would surface here.
    #[test]
    fn t_matrices_match_their_labels() {
        for i in 1..=7 {
            let g = load_fixture(&format!("T{i}")).unwrap();
            let labels = g.labels().expect("T fixtures are labeled");
            let n = g.order();
            for u in 0..n {
                for w in 0..n {
                    let expected = u != w && labels[w].block.contains(&labels[u].point);
                    assert_eq!(g.has_edge(u, w), expected, "T{i} entry ({u},{w})");
                }
            }
        }
    }

    #[test]
    fn ten_point_design_is_valid() {
        let design = ten_point_design();
        design.validate().unwrap();
        assert_eq!(design.n_points(), 10);
    }

    #[test]
    fn orbit_representative_families_validate() {
        let families = orbit_representative_families();
        assert_eq!(families.len(), 7);
        for f in &families {
            f.validate().unwrap();
        }
    }

    #[test]
    fn relation_grid_shape() {
        let (n, flat) = t4_relation_table();
        assert_eq!(n, 10);
        assert_eq!(flat.len(), 100);
        assert_eq!(flat.iter().copied().max(), Some(5));
    }

    #[test]
    fn complement_of_a_12_vertex_fixture_verifies() {
        let g = load_fixture("N1").unwrap();
        let c = g.complement();
        assert_eq!(
            verify_dsrg(&c).unwrap().params,
            DsrgParams::new(12, 5, 3, 2, 2)
        );
    }

    #[test]
    fn stored_ten_vertex_graphs_are_pairwise_non_isomorphic() {
        use crate::classify::canonical_form;
        let mut graphs: Vec<crate::graphs::Digraph> = (1..=7)
            .map(|i| load_fixture(&format!("T{i}")).unwrap())
            .collect();
        let j8 = load_fixture("J8").unwrap();
        graphs.push(j8.transpose());
        graphs.push(j8);
        graphs.push(load_fixture("J9").unwrap());
        let certs: std::collections::HashSet<Vec<u8>> = graphs
            .iter()
            .map(|g| canonical_form(g).certificate)
            .collect();
        assert_eq!(certs.len(), 10);
    }

    #[test]
    fn unknown_fixture_names_error() {
        assert!(load_fixture("N8").is_err());
        assert!(load_fixture("X1").is_err());
    }
}
