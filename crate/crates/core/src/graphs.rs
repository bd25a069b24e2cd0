//! Dense digraphs and exact verification of the (directed) strong regularity
//! identities.
//!
//! A digraph is strongly regular with parameters `(v, k, t, λ, μ)` when
//! `JA = AJ = kJ` and `A² = tI + λA + μ(J − I − A)` hold over the integers.
//! The verifier computes `A²` exactly via row bitsets and popcounts; no
//! floating point enters this module.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Vertex annotation carried by constructed graphs: the antiflag `(point, block)`
/// plus a copy tag for blow-ups.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct VertexLabel {
    pub point: usize,
    pub block: Vec<usize>,
    #[serde(default)]
    pub copy: usize,
}

impl VertexLabel {
    pub fn new(point: usize, block: Vec<usize>) -> Self {
        VertexLabel {
            point,
            block,
            copy: 0,
        }
    }
}

/// Loopless 0/1 digraph stored as dense bitset rows (row = out-neighbours).
///
/// Loops are representable so that arbitrary input files can be loaded and
/// rejected with a witness by the verifiers instead of failing at parse time.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Digraph {
    n: usize,
    words: usize,
    bits: Vec<u64>,
    labels: Option<Vec<VertexLabel>>,
}

impl fmt::Debug for Digraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Digraph(n={})", self.n)
    }
}

impl Digraph {
    pub fn empty(n: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        Digraph {
            n,
            words,
            bits: vec![0; n * words],
            labels: None,
        }
    }

    /// Build from a row-major 0/1 byte matrix.
    pub fn from_matrix(n: usize, entries: &[u8]) -> Result<Self> {
        if entries.len() != n * n {
            return Err(Error::Format(format!(
                "adjacency matrix needs {} entries, got {}",
                n * n,
                entries.len()
            )));
        }
        let mut g = Digraph::empty(n);
        for i in 0..n {
            for j in 0..n {
                match entries[i * n + j] {
                    0 => {}
                    1 => g.add_edge(i, j),
                    other => {
                        return Err(Error::Format(format!(
                            "entry ({i},{j}) is {other}, expected 0 or 1"
                        )))
                    }
                }
            }
        }
        Ok(g)
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn add_edge(&mut self, from: usize, to: usize) {
        debug_assert!(from < self.n && to < self.n);
        self.bits[from * self.words + to / 64] |= 1u64 << (to % 64);
    }

    pub fn has_edge(&self, from: usize, to: usize) -> bool {
        self.bits[from * self.words + to / 64] >> (to % 64) & 1 == 1
    }

    fn row(&self, i: usize) -> &[u64] {
        &self.bits[i * self.words..(i + 1) * self.words]
    }

    pub fn out_degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn in_degree(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| self.has_edge(i, j)).count()
    }

    pub fn edge_count(&self) -> usize {
        (0..self.n).map(|i| self.out_degree(i)).sum()
    }

    pub fn has_loop(&self) -> Option<usize> {
        (0..self.n).find(|&i| self.has_edge(i, i))
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.n).all(|i| (0..i).all(|j| self.has_edge(i, j) == self.has_edge(j, i)))
    }

    pub fn labels(&self) -> Option<&[VertexLabel]> {
        self.labels.as_deref()
    }

    pub fn set_labels(&mut self, labels: Vec<VertexLabel>) -> Result<()> {
        if labels.len() != self.n {
            return Err(Error::Format(format!(
                "{} labels for {} vertices",
                labels.len(),
                self.n
            )));
        }
        self.labels = Some(labels);
        Ok(())
    }

    pub fn clear_labels(&mut self) {
        self.labels = None;
    }

    /// Adjacency as a row-major 0/1 byte matrix.
    pub fn to_matrix(&self) -> Vec<u8> {
        let mut out = vec![0u8; self.n * self.n];
        for i in 0..self.n {
            for j in 0..self.n {
                if self.has_edge(i, j) {
                    out[i * self.n + j] = 1;
                }
            }
        }
        out
    }

    /// The orientation-reversing conjugate `Aᵀ`; labels follow the vertices.
    pub fn transpose(&self) -> Digraph {
        let mut g = Digraph::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.has_edge(i, j) {
                    g.add_edge(j, i);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// `J − I − A`: edges flipped off the diagonal.
    pub fn complement(&self) -> Digraph {
        let mut g = Digraph::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if i != j && !self.has_edge(i, j) {
                    g.add_edge(i, j);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Elementwise OR of `A` and `Aᵀ` (the underlying undirected graph).
    pub fn symmetrize(&self) -> Digraph {
        let mut g = Digraph::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.has_edge(i, j) || self.has_edge(j, i) {
                    g.add_edge(i, j);
                }
            }
        }
        g.labels = self.labels.clone();
        g
    }

    /// Relabel vertices: vertex `v` moves to position `perm[v]`.
    pub fn relabel(&self, perm: &[usize]) -> Digraph {
        assert_eq!(perm.len(), self.n);
        let mut g = Digraph::empty(self.n);
        for i in 0..self.n {
            for j in 0..self.n {
                if self.has_edge(i, j) {
                    g.add_edge(perm[i], perm[j]);
                }
            }
        }
        if let Some(labels) = &self.labels {
            let mut moved = labels.clone();
            for (v, lab) in labels.iter().enumerate() {
                moved[perm[v]] = lab.clone();
            }
            g.labels = Some(moved);
        }
        g
    }

    /// `A²[i][j]` for all pairs, as counts: `|out(i) ∩ in(j)|` by popcount.
    pub fn paths_of_length_two(&self) -> Vec<u32> {
        let t = self.transpose();
        let mut out = vec![0u32; self.n * self.n];
        for i in 0..self.n {
            let ri = self.row(i);
            for j in 0..self.n {
                let tj = t.row(j);
                let mut acc = 0u32;
                for w in 0..self.words {
                    acc += (ri[w] & tj[w]).count_ones();
                }
                out[i * self.n + j] = acc;
            }
        }
        out
    }

    /// Serialize in the `digraph01` text format: first line the order, then
    /// one line of contiguous `0`/`1` characters per row. Round-trips
    /// bit-exactly.
    pub fn to_digraph01(&self) -> String {
        let mut s = String::with_capacity((self.n + 1) * (self.n + 1));
        s.push_str(&self.n.to_string());
        s.push('\n');
        for i in 0..self.n {
            for j in 0..self.n {
                s.push(if self.has_edge(i, j) { '1' } else { '0' });
            }
            s.push('\n');
        }
        s
    }

    pub fn parse_digraph01(text: &str) -> Result<Digraph> {
        let mut lines = text.lines();
        let header = lines
            .next()
            .ok_or_else(|| Error::Format("empty digraph01 input".into()))?;
        let n: usize = header
            .trim()
            .parse()
            .map_err(|_| Error::Format(format!("bad vertex count line {header:?}")))?;
        let mut g = Digraph::empty(n);
        for i in 0..n {
            let line = lines
                .next()
                .ok_or_else(|| Error::Format(format!("missing row {i} of {n}")))?;
            let row = line.trim();
            if row.len() != n {
                return Err(Error::Format(format!(
                    "row {i} has {} characters, expected {n}",
                    row.len()
                )));
            }
            for (j, c) in row.chars().enumerate() {
                match c {
                    '0' => {}
                    '1' => g.add_edge(i, j),
                    _ => {
                        return Err(Error::Format(format!(
                            "row {i} column {j}: {c:?} is not 0/1"
                        )))
                    }
                }
            }
        }
        if let Some(extra) = lines.find(|l| !l.trim().is_empty()) {
            return Err(Error::Format(format!("trailing content {extra:?}")));
        }
        Ok(g)
    }
}

/// Parameters `(v, k, t, λ, μ)` of a directed strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct DsrgParams {
    pub v: usize,
    pub k: usize,
    pub t: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl DsrgParams {
    pub fn new(v: usize, k: usize, t: usize, lambda: usize, mu: usize) -> Self {
        DsrgParams { v, k, t, lambda, mu }
    }

    /// Range sanity only: `0 ≤ t ≤ k < v`.
    pub fn in_range(&self) -> bool {
        self.t <= self.k && self.k < self.v
    }
}

impl fmt::Display for DsrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{},{})",
            self.v, self.k, self.t, self.lambda, self.mu
        )
    }
}

/// Parameters `(v, k, λ, μ)` of a strongly regular graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SrgParams {
    pub v: usize,
    pub k: usize,
    pub lambda: usize,
    pub mu: usize,
}

impl fmt::Display for SrgParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{},{},{})", self.v, self.k, self.lambda, self.mu)
    }
}

/// Accepted cases that the identity alone cannot distinguish from genuinely
/// directed graphs: `t = k` is an undirected SRG in disguise, `t = 0` a
/// doubly regular tournament.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Degeneracy {
    SrgLike,
    TournamentLike,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DsrgVerification {
    pub params: DsrgParams,
    pub degeneracy: Option<Degeneracy>,
}

/// Witness for a failed DSRG check; carries the first violating entry.
#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum DsrgRejection {
    #[error("vertex {vertex} has a loop")]
    Loop { vertex: usize },
    #[error("degenerate: graph has no edges (k = 0)")]
    Empty,
    #[error("out-degree of vertex {vertex} is {got}, expected k = {expected}")]
    OutDegree {
        vertex: usize,
        got: usize,
        expected: usize,
    },
    #[error("in-degree of vertex {vertex} is {got}, expected k = {expected}")]
    InDegree {
        vertex: usize,
        got: usize,
        expected: usize,
    },
    #[error("A²[{vertex},{vertex}] = {got}, expected t = {expected}")]
    Diagonal {
        vertex: usize,
        got: u32,
        expected: u32,
    },
    #[error("A²[{from},{to}] = {got}, expected {expected} (pair adjacent: {adjacent})")]
    OffDiagonal {
        from: usize,
        to: usize,
        got: u32,
        expected: u32,
        adjacent: bool,
    },
}

/// Check the DSRG identity exactly and return the parameters read off the
/// graph, or the first witness against them.
///
/// `t`, `λ`, `μ` are taken from the first diagonal entry, the first edge and
/// the first non-edge of `A²`, then every entry is checked against them.
/// When the graph is complete (`A = J − I`) there is no non-edge to read `μ`
/// from and `μ := λ` is reported.
pub fn verify_dsrg(g: &Digraph) -> std::result::Result<DsrgVerification, DsrgRejection> {
    let n = g.order();
    if let Some(vertex) = g.has_loop() {
        return Err(DsrgRejection::Loop { vertex });
    }
    if n == 0 {
        return Err(DsrgRejection::Empty);
    }
    let k = g.out_degree(0);
    if k == 0 {
        return Err(DsrgRejection::Empty);
    }
    for v in 0..n {
        let out = g.out_degree(v);
        if out != k {
            return Err(DsrgRejection::OutDegree {
                vertex: v,
                got: out,
                expected: k,
            });
        }
    }
    for v in 0..n {
        let ind = g.in_degree(v);
        if ind != k {
            return Err(DsrgRejection::InDegree {
                vertex: v,
                got: ind,
                expected: k,
            });
        }
    }

    let sq = g.paths_of_length_two();
    let t = sq[0];
    for v in 1..n {
        if sq[v * n + v] != t {
            return Err(DsrgRejection::Diagonal {
                vertex: v,
                got: sq[v * n + v],
                expected: t,
            });
        }
    }

    let mut lambda: Option<u32> = None;
    let mut mu: Option<u32> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let val = sq[i * n + j];
            let slot = if g.has_edge(i, j) { &mut lambda } else { &mut mu };
            match slot {
                None => *slot = Some(val),
                Some(expected) if *expected != val => {
                    return Err(DsrgRejection::OffDiagonal {
                        from: i,
                        to: j,
                        got: val,
                        expected: *expected,
                        adjacent: g.has_edge(i, j),
                    })
                }
                _ => {}
            }
        }
    }
    let lambda = lambda.expect("k > 0 guarantees an edge");
    let mu = mu.unwrap_or(lambda);

    let params = DsrgParams::new(n, k, t as usize, lambda as usize, mu as usize);
    let degeneracy = if params.t == params.k {
        Some(Degeneracy::SrgLike)
    } else if params.t == 0 {
        Some(Degeneracy::TournamentLike)
    } else {
        None
    };
    Ok(DsrgVerification { params, degeneracy })
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error, Serialize, Deserialize)]
pub enum SrgRejection {
    #[error("vertex {vertex} has a loop")]
    Loop { vertex: usize },
    #[error("adjacency not symmetric at ({i},{j})")]
    Asymmetric { i: usize, j: usize },
    #[error("degenerate: graph has no edges (k = 0)")]
    Empty,
    #[error("degree of vertex {vertex} is {got}, expected k = {expected}")]
    Degree {
        vertex: usize,
        got: usize,
        expected: usize,
    },
    #[error("common neighbours of ({i},{j}) = {got}, expected {expected} (pair adjacent: {adjacent})")]
    CommonNeighbours {
        i: usize,
        j: usize,
        got: u32,
        expected: u32,
        adjacent: bool,
    },
}

/// Exact SRG check (`A² = kI + λA + μ(J − I − A)`) for symmetric graphs.
pub fn verify_srg(g: &Digraph) -> std::result::Result<SrgParams, SrgRejection> {
    let n = g.order();
    if let Some(vertex) = g.has_loop() {
        return Err(SrgRejection::Loop { vertex });
    }
    for i in 0..n {
        for j in 0..i {
            if g.has_edge(i, j) != g.has_edge(j, i) {
                return Err(SrgRejection::Asymmetric { i, j });
            }
        }
    }
    if n == 0 {
        return Err(SrgRejection::Empty);
    }
    let k = g.out_degree(0);
    if k == 0 {
        return Err(SrgRejection::Empty);
    }
    for v in 0..n {
        let deg = g.out_degree(v);
        if deg != k {
            return Err(SrgRejection::Degree {
                vertex: v,
                got: deg,
                expected: k,
            });
        }
    }
    let sq = g.paths_of_length_two();
    let mut lambda: Option<u32> = None;
    let mut mu: Option<u32> = None;
    for i in 0..n {
        for j in 0..n {
            if i == j {
                continue;
            }
            let val = sq[i * n + j];
            let slot = if g.has_edge(i, j) { &mut lambda } else { &mut mu };
            match slot {
                None => *slot = Some(val),
                Some(expected) if *expected != val => {
                    return Err(SrgRejection::CommonNeighbours {
                        i,
                        j,
                        got: val,
                        expected: *expected,
                        adjacent: g.has_edge(i, j),
                    })
                }
                _ => {}
            }
        }
    }
    let lambda = lambda.expect("k > 0 guarantees an edge");
    let mu = mu.unwrap_or(lambda);
    Ok(SrgParams {
        v: n,
        k,
        lambda: lambda as usize,
        mu: mu as usize,
    })
}
