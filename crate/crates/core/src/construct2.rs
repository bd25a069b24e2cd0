//! Construction II: digraphs on the antiflags of a pointwise family, in the
//! pure variant `D1`, the reflexive-within-a-point variant `D2`, and their
//! `m`-copy blow-ups.

use crate::designs::PointwiseFamily;
use crate::graphs::{verify_dsrg, Digraph, DsrgParams, VertexLabel};
use crate::{Error, Result};

/// Which adjacency rule a graph (or blow-up) follows.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C2Variant {
    /// `(g,B) → (g',B')` iff `g ∈ B'`
    D1,
    /// additionally `(g,B) → (g,B')` for distinct blocks of the same point
    D2,
}

/// Vertices `(g, B)` with `B ∈ 𝓑_g`, edges by the antiflag rule `g ∈ B'`.
/// Loopless because every block omits its owner. Shared by both
/// constructions; Construction I families are not per-point regular, so no
/// per-point validation happens here.
pub(crate) fn antiflag_digraph(family: &PointwiseFamily) -> Result<Digraph> {
    let n = family.n_points;
    let mut labels: Vec<VertexLabel> = Vec::with_capacity(family.vertex_count());
    for (g, blocks) in family.owner_blocks.iter().enumerate() {
        for (bi, block) in blocks.iter().enumerate() {
            if block.contains(&g) {
                return Err(Error::Construction(format!(
                    "block {bi} of point {g} contains its own point; vertices must be antiflags"
                )));
            }
            if block.iter().any(|&p| p >= n) {
                return Err(Error::Construction(format!(
                    "block {bi} of point {g} leaves the point set"
                )));
            }
            labels.push(VertexLabel::new(g, block.clone()));
        }
    }
    let v = labels.len();
    let mut graph = Digraph::empty(v);
    let mut membership = vec![false; n];
    for (w, target) in labels.iter().enumerate() {
        membership.fill(false);
        for &p in &target.block {
            membership[p] = true;
        }
        for (u, source) in labels.iter().enumerate() {
            if u != w && membership[source.point] {
                graph.add_edge(u, w);
            }
        }
    }
    graph.set_labels(labels)?;
    Ok(graph)
}

/// `D1(𝒯)`: antiflag adjacency only.
pub fn build_d1(family: &PointwiseFamily) -> Result<Digraph> {
    family.validate()?;
    antiflag_digraph(family)
}

/// `D2(𝒯)`: antiflag adjacency plus all edges between distinct blocks of the
/// same point.
pub fn build_d2(family: &PointwiseFamily) -> Result<Digraph> {
    family.validate()?;
    let mut graph = antiflag_digraph(family)?;
    let labels = graph.labels().expect("antiflag labels").to_vec();
    for (u, lu) in labels.iter().enumerate() {
        for (w, lw) in labels.iter().enumerate() {
            if u != w && lu.point == lw.point {
                graph.add_edge(u, w);
            }
        }
    }
    Ok(graph)
}

/// Replace every vertex by `m` tagged instances. The `D1` rule keeps only
/// antiflag edges; the `D2` rule additionally joins every pair of distinct
/// instances sharing a point (which is what matches the stated blow-up
/// degree `m(ls+s)-1`). The input must carry antiflag labels; for `D1` the
/// input must verify with `t = μ` first.
pub fn blow_up(graph: &Digraph, variant: C2Variant, m: usize) -> Result<Digraph> {
    if m == 0 {
        return Err(Error::Parameter("copy multiplicity m must be ≥ 1".into()));
    }
    let labels = graph
        .labels()
        .ok_or_else(|| Error::Construction("blow-up needs (point, block) vertex labels".into()))?
        .to_vec();
    if variant == C2Variant::D1 {
        let check = verify_dsrg(graph)
            .map_err(|w| Error::Construction(format!("blow-up input is not a DSRG: {w}")))?;
        if check.params.t != check.params.mu {
            return Err(Error::Construction(format!(
                "D1 blow-up needs t = μ, but input verifies as {}",
                check.params
            )));
        }
    }

    let v = labels.len();
    let mut out_labels = Vec::with_capacity(v * m);
    for copy in 0..m {
        for label in &labels {
            let mut tagged = label.clone();
            tagged.copy = copy;
            out_labels.push(tagged);
        }
    }
    let n_points = labels.iter().map(|l| l.point).max().unwrap_or(0) + 1;
    let mut big = Digraph::empty(v * m);
    let mut membership = vec![false; n_points];
    for (w, target) in out_labels.iter().enumerate() {
        membership.fill(false);
        for &p in &target.block {
            membership[p] = true;
        }
        for (u, source) in out_labels.iter().enumerate() {
            if u == w {
                continue;
            }
            let edge = membership[source.point]
                || (variant == C2Variant::D2 && source.point == target.point);
            if edge {
                big.add_edge(u, w);
            }
        }
    }
    big.set_labels(out_labels)?;
    Ok(big)
}

/// Closed-form parameters for `D1`/`D2` and their `m`-copy blow-ups on a
/// family with per-point parameters `(n-1, s, l, d)`.
pub fn expected_params_c2(
    n: usize,
    s: usize,
    l: usize,
    d: usize,
    variant: C2Variant,
    m: usize,
) -> Result<DsrgParams> {
    if n < 2 || s == 0 || l == 0 || d == 0 || m == 0 {
        return Err(Error::Parameter(format!(
            "parameters must be positive with n ≥ 2; got (n,s,l,d,m) = ({n},{s},{l},{d},{m})"
        )));
    }
    if d * (n - 1) != l * s {
        return Err(Error::Parameter(format!(
            "d(n-1) = {} must equal ls = {}",
            d * (n - 1),
            l * s
        )));
    }
    Ok(match variant {
        C2Variant::D1 => DsrgParams::new(m * n * s, m * l * s, m * l * d, m * (l - 1) * d, m * l * d),
        C2Variant::D2 => DsrgParams::new(
            m * n * s,
            m * (l * s + s) - 1,
            m * (l * d + s) - 1,
            m * (l * d + s) - 2,
            m * (l + 1) * d,
        ),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::designs::{chunked_pointwise_family, projective_plane_family};
    use crate::graphs::verify_dsrg;

    #[test]
    fn d1_small_partition_family() {
        let fam = chunked_pointwise_family(5, 2, 2, 1).unwrap();
        let g = build_d1(&fam).unwrap();
        let check = verify_dsrg(&g).unwrap();
        assert_eq!(check.params, DsrgParams::new(10, 4, 2, 1, 2));
        assert_eq!(
            check.params,
            expected_params_c2(5, 2, 2, 1, C2Variant::D1, 1).unwrap()
        );
    }

    #[test]
    fn d1_formula_not_wishful_thinking() {
        // (n=7,s=3,l=2,d=1): the verifier, not intuition, fixes the tuple
        let fam = chunked_pointwise_family(7, 3, 2, 1).unwrap();
        let g = build_d1(&fam).unwrap();
        assert_eq!(
            verify_dsrg(&g).unwrap().params,
            DsrgParams::new(21, 6, 2, 1, 2)
        );
    }

    #[test]
    fn d2_small_partition_family() {
        let fam = chunked_pointwise_family(5, 2, 2, 1).unwrap();
        let g = build_d2(&fam).unwrap();
        assert_eq!(
            verify_dsrg(&g).unwrap().params,
            DsrgParams::new(10, 5, 3, 2, 3)
        );
    }

    #[test]
    fn d2_with_replication_two() {
        let fam = chunked_pointwise_family(4, 3, 2, 2).unwrap();
        let g = build_d2(&fam).unwrap();
        let expected = expected_params_c2(4, 3, 2, 2, C2Variant::D2, 1).unwrap();
        assert_eq!(verify_dsrg(&g).unwrap().params, expected);
        assert_eq!(expected, DsrgParams::new(12, 8, 6, 5, 6));
    }

    #[test]
    fn d1_with_replication_two() {
        let fam = chunked_pointwise_family(4, 3, 2, 2).unwrap();
        let g = build_d1(&fam).unwrap();
        let expected = expected_params_c2(4, 3, 2, 2, C2Variant::D1, 1).unwrap();
        assert_eq!(expected, DsrgParams::new(12, 6, 4, 2, 4));
        assert_eq!(verify_dsrg(&g).unwrap().params, expected);
    }

    #[test]
    fn fano_plane_graphs() {
        let fam = projective_plane_family(2).unwrap();
        let d1 = build_d1(&fam).unwrap();
        assert_eq!(
            verify_dsrg(&d1).unwrap().params,
            DsrgParams::new(21, 6, 2, 1, 2)
        );
        let d2 = build_d2(&fam).unwrap();
        assert_eq!(
            verify_dsrg(&d2).unwrap().params,
            DsrgParams::new(21, 8, 4, 3, 3)
        );
    }

    #[test]
    fn d2_formula_case_39() {
        let expected = expected_params_c2(13, 3, 4, 1, C2Variant::D2, 1).unwrap();
        assert_eq!(expected, DsrgParams::new(39, 14, 6, 5, 5));
        let fam = chunked_pointwise_family(13, 3, 4, 1).unwrap();
        let g = build_d2(&fam).unwrap();
        assert_eq!(verify_dsrg(&g).unwrap().params, expected);
    }

    #[test]
    fn formula_row_14_6_3_2_3() {
        assert_eq!(
            expected_params_c2(7, 2, 3, 1, C2Variant::D1, 1).unwrap(),
            DsrgParams::new(14, 6, 3, 2, 3)
        );
    }

    #[test]
    fn blow_up_identity_case() {
        let fam = chunked_pointwise_family(5, 2, 2, 1).unwrap();
        let g = build_d1(&fam).unwrap();
        let same = blow_up(&g, C2Variant::D1, 1).unwrap();
        assert_eq!(same.to_matrix(), g.to_matrix());
    }

    #[test]
    fn blow_up_paper_rows() {
        let fam = chunked_pointwise_family(3, 2, 1, 1).unwrap();
        let d1 = build_d1(&fam).unwrap();
        let doubled = blow_up(&d1, C2Variant::D1, 2).unwrap();
        assert_eq!(
            verify_dsrg(&doubled).unwrap().params,
            DsrgParams::new(12, 4, 2, 0, 2)
        );
        let d2_doubled = blow_up(&d1, C2Variant::D2, 2).unwrap();
        assert_eq!(
            verify_dsrg(&d2_doubled).unwrap().params,
            DsrgParams::new(12, 7, 5, 4, 4)
        );
    }

    #[test]
    fn blow_up_requires_labels() {
        let fam = chunked_pointwise_family(5, 2, 2, 1).unwrap();
        let mut g = build_d1(&fam).unwrap();
        g.clear_labels();
        assert!(blow_up(&g, C2Variant::D1, 2).is_err());
    }

    #[test]
    fn d1_rows_depend_only_on_the_point() {
        let fam = chunked_pointwise_family(7, 3, 2, 1).unwrap();
        let g = build_d1(&fam).unwrap();
        let labels = g.labels().unwrap().to_vec();
        let m = g.to_matrix();
        let n = g.order();
        for u in 0..n {
            for w in 0..n {
                if labels[u].point == labels[w].point {
                    assert_eq!(m[u * n..(u + 1) * n], m[w * n..(w + 1) * n]);
                }
            }
        }
    }
}
