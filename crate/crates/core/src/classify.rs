//! Canonical forms, isomorphism classes, automorphism groups, and orbits of
//! configuration families under point relabeling.

mod canon;
mod perm;

pub use perm::{recognize_group, PermGroup, Permutation, StabChain};

use crate::designs::PointwiseFamily;
use crate::graphs::Digraph;
use crate::{Error, Result};
use std::collections::{HashMap, HashSet, VecDeque};

/// A relabeling-invariant certificate plus the relabeling that achieves it.
/// Equal certificates characterize isomorphic digraphs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CanonicalForm {
    pub certificate: Vec<u8>,
    /// maps each vertex to its canonical position
    pub relabeling: Permutation,
}

pub fn canonical_form(g: &Digraph) -> CanonicalForm {
    let canon = canon::canonicalize(&canon::EdgeColoring::from_digraph(g));
    CanonicalForm {
        certificate: canon.certificate,
        relabeling: Permutation::from_images(canon.relabeling).expect("canonical relabeling"),
    }
}

/// Canonical form of an edge-coloured square matrix (colours `0..=max`,
/// colour 0 treated as background). Used for association-scheme relation
/// matrices.
pub fn canonical_form_colored(n: usize, colors: &[u8]) -> CanonicalForm {
    let canon = canon::canonicalize(&canon::EdgeColoring::from_colors(n, colors));
    CanonicalForm {
        certificate: canon.certificate,
        relabeling: Permutation::from_images(canon.relabeling).expect("canonical relabeling"),
    }
}

/// Isomorphism test with witness: `Some(p)` maps `g` onto `h` exactly, i.e.
/// `g.relabel(p) == h`.
pub fn are_isomorphic(g: &Digraph, h: &Digraph) -> Option<Permutation> {
    if g.order() != h.order() {
        return None;
    }
    let cg = canonical_form(g);
    let ch = canonical_form(h);
    if cg.certificate != ch.certificate {
        return None;
    }
    let witness = cg.relabeling.then(&ch.relabeling.inverse());
    debug_assert_eq!(g.relabel(witness.images()).to_matrix(), h.to_matrix());
    Some(witness)
}

/// The full automorphism group, generated by the permutations discovered
/// during the canonical search.
pub fn automorphism_group(g: &Digraph) -> PermGroup {
    let canon = canon::canonicalize(&canon::EdgeColoring::from_digraph(g));
    let gens = canon
        .generators
        .into_iter()
        .map(|imgs| Permutation::from_images(imgs).expect("automorphism"))
        .collect();
    PermGroup::new(g.order(), gens).expect("automorphism group")
}

/// One isomorphism class of an input stream.
#[derive(Debug, Clone)]
pub struct IsoClass {
    pub certificate: Vec<u8>,
    pub representative: Digraph,
    /// indices of the input graphs in this class
    pub members: Vec<usize>,
    pub automorphisms: PermGroup,
    pub aut_name: String,
    pub self_transpose: bool,
}

impl IsoClass {
    pub fn size(&self) -> usize {
        self.members.len()
    }
}

#[derive(Debug, Clone)]
pub struct IsoClassReport {
    pub classes: Vec<IsoClass>,
    pub total: usize,
    /// number of classes after adjoining the transpose of every input graph
    pub classes_with_transposes: usize,
}

/// Group a stream of digraphs by canonical certificate. `jobs > 1` fans the
/// certificate computation out over that many threads; results are merged in
/// input order, so the report is deterministic either way.
pub fn classify_family(graphs: Vec<Digraph>, jobs: usize) -> IsoClassReport {
    let certs = certificates_of(&graphs, jobs.max(1));

    let mut order: Vec<Vec<u8>> = Vec::new();
    let mut by_cert: HashMap<Vec<u8>, Vec<usize>> = HashMap::new();
    for (idx, (cert, _)) in certs.iter().enumerate() {
        let entry = by_cert.entry(cert.clone()).or_default();
        if entry.is_empty() {
            order.push(cert.clone());
        }
        entry.push(idx);
    }

    let mut all: HashSet<Vec<u8>> = HashSet::new();
    for (cert, tcert) in &certs {
        all.insert(cert.clone());
        all.insert(tcert.clone());
    }

    let total = graphs.len();
    let classes = order
        .into_iter()
        .map(|cert| {
            let members = by_cert.remove(&cert).expect("class members");
            let rep_idx = members[0];
            let representative = graphs[rep_idx].clone();
            let automorphisms = automorphism_group(&representative);
            let aut_name = recognize_group(&automorphisms);
            let self_transpose = certs[rep_idx].0 == certs[rep_idx].1;
            IsoClass {
                certificate: cert,
                representative,
                members,
                automorphisms,
                aut_name,
                self_transpose,
            }
        })
        .collect();

    IsoClassReport {
        classes,
        total,
        classes_with_transposes: all.len(),
    }
}

/// `(certificate, transpose certificate)` per graph, preserving input order.
fn certificates_of(graphs: &[Digraph], jobs: usize) -> Vec<(Vec<u8>, Vec<u8>)> {
    let work = |g: &Digraph| {
        (
            canonical_form(g).certificate,
            canonical_form(&g.transpose()).certificate,
        )
    };
    if jobs <= 1 || graphs.len() < 2 {
        return graphs.iter().map(work).collect();
    }
    let chunk = graphs.len().div_ceil(jobs);
    let mut out: Vec<(Vec<u8>, Vec<u8>)> = Vec::with_capacity(graphs.len());
    std::thread::scope(|scope| {
        let handles: Vec<_> = graphs
            .chunks(chunk)
            .map(|part| scope.spawn(move || part.iter().map(work).collect::<Vec<_>>()))
            .collect();
        for h in handles {
            out.extend(h.join().expect("certificate worker"));
        }
    });
    out
}

/// Count distinct certificates in a stream, optionally stopping once a
/// target is reached. Used for lower-bound sampling over large family
/// spaces.
pub fn distinct_certificates<I: IntoIterator<Item = Digraph>>(
    graphs: I,
    stop_at: Option<usize>,
) -> (usize, usize) {
    let mut seen = HashSet::new();
    let mut consumed = 0;
    for g in graphs {
        consumed += 1;
        seen.insert(canonical_form(&g).certificate);
        if let Some(target) = stop_at {
            if seen.len() >= target {
                break;
            }
        }
    }
    (seen.len(), consumed)
}

/// Relabel the points of a family: blocks map elementwise and each per-point
/// family follows its point. Block lists are re-sorted so that equal
/// families compare equal as labeled objects.
pub fn relabel_family(family: &PointwiseFamily, perm: &Permutation) -> PointwiseFamily {
    let n = family.n_points;
    assert_eq!(perm.degree(), n);
    let mut owner_blocks: Vec<Vec<Vec<usize>>> = vec![Vec::new(); n];
    for g in 0..n {
        let mut blocks: Vec<Vec<usize>> = family.owner_blocks[g]
            .iter()
            .map(|b| {
                let mut nb: Vec<usize> = b.iter().map(|&p| perm.apply(p)).collect();
                nb.sort_unstable();
                nb
            })
            .collect();
        blocks.sort();
        owner_blocks[perm.apply(g)] = blocks;
    }
    PointwiseFamily {
        n_points: n,
        owner_blocks,
        per_point_params: family.per_point_params,
    }
}

fn family_key(family: &PointwiseFamily) -> Vec<Vec<Vec<usize>>> {
    family
        .owner_blocks
        .iter()
        .map(|blocks| {
            let mut sorted = blocks.clone();
            sorted.sort();
            sorted
        })
        .collect()
}

/// An orbit of the symmetric group acting on pointwise families.
#[derive(Debug, Clone)]
pub struct FamilyOrbit {
    pub representative: PointwiseFamily,
    /// full group-orbit size (not just the input members)
    pub size: usize,
    /// indices of the input families lying in this orbit
    pub members: Vec<usize>,
    pub stabilizer: PermGroup,
    pub stabilizer_name: String,
}

/// Partition input families into orbits of `S_n` relabeling the points.
/// Orbit sizes are full group-orbit sizes; stabilizers are found by direct
/// search over `S_n`, which is why `n > 8` is refused (use certificate
/// sampling for larger spaces).
pub fn orbits_under_point_relabeling(
    families: &[PointwiseFamily],
    n: usize,
) -> Result<Vec<FamilyOrbit>> {
    if n > 8 {
        return Err(Error::Parameter(format!(
            "orbit analysis enumerates all {n}! point relabelings; n > 8 is refused — \
             use certificate sampling instead"
        )));
    }
    for f in families {
        if f.n_points != n {
            return Err(Error::Parameter(format!(
                "family on {} points in an orbit run over {n} points",
                f.n_points
            )));
        }
    }

    let mut gens: Vec<Permutation> = Vec::new();
    if n >= 2 {
        let mut swap: Vec<usize> = (0..n).collect();
        swap.swap(0, 1);
        gens.push(Permutation::from_images(swap)?);
        let cycle: Vec<usize> = (0..n).map(|i| (i + 1) % n).collect();
        gens.push(Permutation::from_images(cycle)?);
    }

    let mut index_of_key: HashMap<Vec<Vec<Vec<usize>>>, Vec<usize>> = HashMap::new();
    for (idx, family) in families.iter().enumerate() {
        index_of_key.entry(family_key(family)).or_default().push(idx);
    }

    let mut visited: HashSet<Vec<Vec<Vec<usize>>>> = HashSet::new();
    let mut orbits = Vec::new();
    for family in families {
        let key = family_key(family);
        if visited.contains(&key) {
            continue;
        }
        // BFS closure under the S_n generators
        let mut orbit_keys = HashSet::new();
        orbit_keys.insert(key.clone());
        let mut queue = VecDeque::from([family.clone()]);
        while let Some(f) = queue.pop_front() {
            for g in &gens {
                let image = relabel_family(&f, g);
                if orbit_keys.insert(family_key(&image)) {
                    queue.push_back(image);
                }
            }
        }
        let size = orbit_keys.len();
        let mut members: Vec<usize> = orbit_keys
            .iter()
            .filter_map(|k| index_of_key.get(k))
            .flatten()
            .copied()
            .collect();
        members.sort_unstable();
        visited.extend(orbit_keys);

        let stabilizer = stabilizer_of(family, n)?;
        let stabilizer_name = recognize_group(&stabilizer);
        orbits.push(FamilyOrbit {
            representative: family.clone(),
            size,
            members,
            stabilizer,
            stabilizer_name,
        });
    }
    Ok(orbits)
}

fn stabilizer_of(family: &PointwiseFamily, n: usize) -> Result<PermGroup> {
    let key = family_key(family);
    let mut gens: Vec<Permutation> = Vec::new();
    let mut chain = StabChain::build(n, &gens);
    let mut images: Vec<usize> = (0..n).collect();
    permute_all(&mut images, 0, &mut |p| {
        let perm = Permutation::from_images(p.to_vec()).expect("permutation");
        if perm.is_identity() || chain.contains(&perm) {
            return;
        }
        if family_key(&relabel_family(family, &perm)) == key {
            gens.push(perm);
            chain = StabChain::build(n, &gens);
        }
    });
    PermGroup::new(n, gens)
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
