//! Canonical labeling search: iterated colour refinement plus backtracking
//! over colour cells, pruned by partial-certificate comparison and by the
//! automorphisms discovered at equal leaves.
//!
//! The certificate is the lexicographically minimal row-major matrix byte
//! string over the leaves of the (pruned) search tree. Edge colours are kept
//! as bitset layers so refinement signatures reduce to masked popcounts; a
//! plain digraph is the single-layer case and association-scheme relation
//! matrices use one layer per class.

use crate::graphs::Digraph;
use std::cmp::Ordering;

/// Square edge-coloured matrix split into per-colour adjacency bitsets.
/// Colour 0 is the background and gets no layer.
pub(crate) struct EdgeColoring {
    n: usize,
    words: usize,
    /// per colour `c ≥ 1`: out rows then in rows, each `n * words` words
    out: Vec<Vec<u64>>,
    inn: Vec<Vec<u64>>,
}

impl EdgeColoring {
    pub fn from_digraph(g: &Digraph) -> Self {
        let n = g.order();
        let mut ec = EdgeColoring::blank(n, 1);
        for i in 0..n {
            for j in 0..n {
                if g.has_edge(i, j) {
                    ec.set(0, i, j);
                }
            }
        }
        ec
    }

    /// `colors` is row-major with entries in `0..=max`; one layer per
    /// nonzero colour.
    pub fn from_colors(n: usize, colors: &[u8]) -> Self {
        assert_eq!(colors.len(), n * n);
        let max = colors.iter().copied().max().unwrap_or(0) as usize;
        let mut ec = EdgeColoring::blank(n, max);
        for i in 0..n {
            for j in 0..n {
                let c = colors[i * n + j] as usize;
                if c > 0 {
                    ec.set(c - 1, i, j);
                }
            }
        }
        ec
    }

    fn blank(n: usize, layers: usize) -> Self {
        let words = n.div_ceil(64).max(1);
        EdgeColoring {
            n,
            words,
            out: vec![vec![0; n * words]; layers],
            inn: vec![vec![0; n * words]; layers],
        }
    }

    fn set(&mut self, layer: usize, i: usize, j: usize) {
        self.out[layer][i * self.words + j / 64] |= 1 << (j % 64);
        self.inn[layer][j * self.words + i / 64] |= 1 << (i % 64);
    }

    fn color(&self, i: usize, j: usize) -> u8 {
        for (l, layer) in self.out.iter().enumerate() {
            if layer[i * self.words + j / 64] >> (j % 64) & 1 == 1 {
                return l as u8 + 1;
            }
        }
        0
    }
}

pub(crate) struct Canon {
    /// `[n as le u64][layer count][row-major colours under the canonical labeling]`
    pub certificate: Vec<u8>,
    /// original vertex -> canonical position
    pub relabeling: Vec<usize>,
    /// automorphism generators as image lists
    pub generators: Vec<Vec<usize>>,
}

pub(crate) fn canonicalize(ec: &EdgeColoring) -> Canon {
    let n = ec.n;
    let mut header = Vec::with_capacity(9 + n * n);
    header.extend_from_slice(&(n as u64).to_le_bytes());
    header.push(ec.out.len() as u8);
    if n == 0 {
        return Canon {
            certificate: header,
            relabeling: vec![],
            generators: vec![],
        };
    }

    let mut search = Search {
        ec,
        best: None,
        best_labeling: Vec::new(),
        gens: Vec::new(),
    };
    let mut root: Partition = vec![(0..n as u32).collect()];
    search.refine(&mut root);
    let mut path = Vec::new();
    search.node(&root, &mut path);

    let labeling = search.best_labeling;
    let mut relabeling = vec![0usize; n];
    for (pos, &v) in labeling.iter().enumerate() {
        relabeling[v as usize] = pos;
    }
    let mut certificate = header;
    certificate.extend_from_slice(&search.best.expect("at least one leaf"));
    Canon {
        certificate,
        relabeling,
        generators: search
            .gens
            .into_iter()
            .map(|g| g.into_iter().map(|v| v as usize).collect())
            .collect(),
    }
}

type Partition = Vec<Vec<u32>>;

struct Search<'a> {
    ec: &'a EdgeColoring,
    best: Option<Vec<u8>>,
    best_labeling: Vec<u32>,
    gens: Vec<Vec<u32>>,
}

impl Search<'_> {
    /// Split cells by per-colour in/out degrees towards every cell until the
    /// partition is equitable. Sub-cells are ordered by ascending signature,
    /// which keeps the result independent of the input vertex numbering.
    fn refine(&self, part: &mut Partition) {
        let words = self.ec.words;
        let layers = self.ec.out.len();
        let mut mask = vec![0u64; words];
        'restart: loop {
            for t in 0..part.len() {
                mask.fill(0);
                for &v in &part[t] {
                    mask[v as usize / 64] |= 1 << (v % 64);
                }
                for c in 0..part.len() {
                    if part[c].len() < 2 {
                        continue;
                    }
                    let mut sigs: Vec<(Vec<u32>, u32)> = part[c]
                        .iter()
                        .map(|&u| {
                            let mut sig = Vec::with_capacity(2 * layers);
                            for l in 0..layers {
                                let row = &self.ec.out[l]
                                    [u as usize * words..(u as usize + 1) * words];
                                sig.push(
                                    row.iter()
                                        .zip(&mask)
                                        .map(|(a, b)| (a & b).count_ones())
                                        .sum(),
                                );
                                let row = &self.ec.inn[l]
                                    [u as usize * words..(u as usize + 1) * words];
                                sig.push(
                                    row.iter()
                                        .zip(&mask)
                                        .map(|(a, b)| (a & b).count_ones())
                                        .sum(),
                                );
                            }
                            (sig, u)
                        })
                        .collect();
                    if sigs.windows(2).all(|w| w[0].0 == w[1].0) {
                        continue;
                    }
                    sigs.sort();
                    let mut groups: Vec<Vec<u32>> = Vec::new();
                    for (i, (sig, u)) in sigs.iter().enumerate() {
                        if i == 0 || *sig != sigs[i - 1].0 {
                            groups.push(Vec::new());
                        }
                        groups.last_mut().unwrap().push(*u);
                    }
                    part.splice(c..=c, groups);
                    continue 'restart;
                }
            }
            return;
        }
    }

    fn node(&mut self, part: &Partition, path: &mut Vec<u32>) {
        if self.best.is_some() && self.prefix_cmp(part) == Ordering::Greater {
            return;
        }
        if part.iter().all(|c| c.len() == 1) {
            self.leaf(part);
            return;
        }

        let smallest = part
            .iter()
            .map(|c| c.len())
            .filter(|&l| l > 1)
            .min()
            .unwrap();
        let t = part.iter().position(|c| c.len() == smallest).unwrap();
        let cell = part[t].clone();

        let mut explored: Vec<u32> = Vec::new();
        for &v in &cell {
            if self.in_explored_orbit(v, &explored, path) {
                continue;
            }
            explored.push(v);
            let mut child: Partition = Vec::with_capacity(part.len() + 1);
            child.extend_from_slice(&part[..t]);
            child.push(vec![v]);
            child.push(cell.iter().copied().filter(|&u| u != v).collect());
            child.extend_from_slice(&part[t + 1..]);
            self.refine(&mut child);
            path.push(v);
            self.node(&child, path);
            path.pop();
        }
    }

    /// True when `v` lies in the orbit of an already explored sibling under
    /// the automorphisms found so far that fix the current path pointwise.
    fn in_explored_orbit(&self, v: u32, explored: &[u32], path: &[u32]) -> bool {
        if explored.is_empty() || self.gens.is_empty() {
            return false;
        }
        let n = self.ec.n;
        let mut parent: Vec<u32> = (0..n as u32).collect();
        fn find(parent: &mut [u32], x: u32) -> u32 {
            let mut root = x;
            while parent[root as usize] != root {
                root = parent[root as usize];
            }
            let mut cur = x;
            while parent[cur as usize] != root {
                let next = parent[cur as usize];
                parent[cur as usize] = root;
                cur = next;
            }
            root
        }
        let mut any = false;
        for g in &self.gens {
            if path.iter().any(|&p| g[p as usize] != p) {
                continue;
            }
            any = true;
            for u in 0..n as u32 {
                let (a, b) = (find(&mut parent, u), find(&mut parent, g[u as usize]));
                if a != b {
                    parent[a as usize] = b;
                }
            }
        }
        if !any {
            return false;
        }
        let rv = find(&mut parent, v);
        explored.iter().any(|&e| find(&mut parent, e) == rv)
    }

    /// Rows of the leading singleton cells are fully determined at an
    /// equitable node (adjacency to a cell is constant across the cell), so
    /// they can be compared against the current best certificate.
    fn prefix_cmp(&self, part: &Partition) -> Ordering {
        let best = self.best.as_ref().unwrap();
        let n = self.ec.n;
        let mut idx = 0;
        for cell in part {
            if cell.len() != 1 {
                break;
            }
            let v = cell[0] as usize;
            for other in part {
                let color = self.ec.color(v, other[0] as usize);
                for _ in 0..other.len() {
                    match color.cmp(&best[idx]) {
                        Ordering::Equal => idx += 1,
                        ord => return ord,
                    }
                }
            }
            debug_assert_eq!(idx % n, 0);
        }
        Ordering::Equal
    }

    fn leaf(&mut self, part: &Partition) {
        let n = self.ec.n;
        let labeling: Vec<u32> = part.iter().map(|c| c[0]).collect();
        let mut bytes = Vec::with_capacity(n * n);
        for &vi in &labeling {
            for &vj in &labeling {
                bytes.push(self.ec.color(vi as usize, vj as usize));
            }
        }
        match &self.best {
            None => {
                self.best = Some(bytes);
                self.best_labeling = labeling;
            }
            Some(best) => match bytes.cmp(best) {
                Ordering::Less => {
                    self.best = Some(bytes);
                    self.best_labeling = labeling;
                }
                Ordering::Equal => {
                    let mut images = vec![0u32; n];
                    for (i, &v) in self.best_labeling.iter().enumerate() {
                        images[v as usize] = labeling[i];
                    }
                    if images.iter().enumerate().any(|(i, &v)| i as u32 != v) {
                        self.gens.push(images);
                    }
                }
                Ordering::Greater => {}
            },
        }
    }
}
