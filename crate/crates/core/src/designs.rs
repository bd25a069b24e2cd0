//! Tactical configurations and the block families feeding both constructions.
//!
//! Points are 0-based everywhere; blocks are strictly sorted point lists.
//! Block lists keep construction order, so two configurations are equal only
//! as labeled objects — isomorphism questions belong to `classify`.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::fmt;

/// Parameters `(v̄, b̄, k̄, r̄)` of a tactical configuration.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct TcParams {
    pub points: usize,
    pub blocks: usize,
    pub block_size: usize,
    pub replication: usize,
}

impl fmt::Display for TcParams {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "({},{},{},{})",
            self.points, self.blocks, self.block_size, self.replication
        )
    }
}

/// A point set `{0..n_points-1}` with a multiset of equally sized blocks in
/// which every point occurs equally often.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TacticalConfig {
    pub n_points: usize,
    pub blocks: Vec<Vec<usize>>,
    pub params: TcParams,
}

impl TacticalConfig {
    /// Wrap raw data, reading `k̄` off the first block and `r̄` off point 0.
    /// Use [`validate_tactical_config`] to check the invariants.
    pub fn new(n_points: usize, blocks: Vec<Vec<usize>>) -> TacticalConfig {
        let block_size = blocks.first().map_or(0, Vec::len);
        let replication = blocks.iter().filter(|b| b.contains(&0)).count();
        let params = TcParams {
            points: n_points,
            blocks: blocks.len(),
            block_size,
            replication,
        };
        TacticalConfig {
            n_points,
            blocks,
            params,
        }
    }
}

/// One violated invariant together with its witness.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub enum Violation {
    BlockNotSorted { block: usize },
    PointOutOfRange { block: usize, point: usize },
    BlockSize { block: usize, size: usize, expected: usize },
    Replication { point: usize, count: usize, expected: usize },
    Counting { lhs: usize, rhs: usize },
    ParamMismatch { field: &'static str, stored: usize, actual: usize },
}

impl fmt::Display for Violation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Violation::BlockNotSorted { block } => {
                write!(f, "block {block} is not strictly sorted")
            }
            Violation::PointOutOfRange { block, point } => {
                write!(f, "block {block} contains out-of-range point {point}")
            }
            Violation::BlockSize {
                block,
                size,
                expected,
            } => write!(f, "block {block} has {size} points, expected k̄ = {expected}"),
            Violation::Replication {
                point,
                count,
                expected,
            } => write!(f, "point {point} lies in {count} blocks, expected r̄ = {expected}"),
            Violation::Counting { lhs, rhs } => {
                write!(f, "double counting fails: v̄·r̄ = {lhs} but b̄·k̄ = {rhs}")
            }
            Violation::ParamMismatch {
                field,
                stored,
                actual,
            } => write!(f, "stored {field} = {stored} but data gives {actual}"),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ValidationReport {
    pub violations: Vec<Violation>,
}

impl ValidationReport {
    pub fn ok(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Check every `TacticalConfig` invariant, reporting all violations with
/// witnesses instead of failing on the first.
pub fn validate_tactical_config(cfg: &TacticalConfig) -> ValidationReport {
    let mut violations = Vec::new();
    for (bi, block) in cfg.blocks.iter().enumerate() {
        if !block.windows(2).all(|w| w[0] < w[1]) {
            violations.push(Violation::BlockNotSorted { block: bi });
        }
        for &p in block {
            if p >= cfg.n_points {
                violations.push(Violation::PointOutOfRange { block: bi, point: p });
            }
        }
        if block.len() != cfg.params.block_size {
            violations.push(Violation::BlockSize {
                block: bi,
                size: block.len(),
                expected: cfg.params.block_size,
            });
        }
    }
    let mut counts = vec![0usize; cfg.n_points];
    for block in &cfg.blocks {
        for &p in block {
            if p < cfg.n_points {
                counts[p] += 1;
            }
        }
    }
    for (point, &count) in counts.iter().enumerate() {
        if count != cfg.params.replication {
            violations.push(Violation::Replication {
                point,
                count,
                expected: cfg.params.replication,
            });
        }
    }
    if cfg.params.points != cfg.n_points {
        violations.push(Violation::ParamMismatch {
            field: "points",
            stored: cfg.params.points,
            actual: cfg.n_points,
        });
    }
    if cfg.params.blocks != cfg.blocks.len() {
        violations.push(Violation::ParamMismatch {
            field: "blocks",
            stored: cfg.params.blocks,
            actual: cfg.blocks.len(),
        });
    }
    let lhs = cfg.params.points * cfg.params.replication;
    let rhs = cfg.params.blocks * cfg.params.block_size;
    if lhs != rhs {
        violations.push(Violation::Counting { lhs, rhs });
    }
    ValidationReport { violations }
}

/// The cyclic `(q, q, a, a)` configuration: block `i` is
/// `{i, i+1, …, i+a-1}` modulo `q`.
pub fn cyclic_block_family(q: usize, a: usize) -> Result<TacticalConfig> {
    if a == 0 || q == 0 || a > q {
        return Err(Error::Parameter(format!(
            "cyclic block family needs 1 ≤ a ≤ q, got q = {q}, a = {a}"
        )));
    }
    let blocks = (0..q)
        .map(|i| {
            let mut block: Vec<usize> = (0..a).map(|c| (i + c) % q).collect();
            block.sort_unstable();
            block
        })
        .collect();
    Ok(TacticalConfig::new(q, blocks))
}

/// Per-point block parameters `(s, l, d)` of a uniform pointwise family.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct PerPointParams {
    pub blocks_per_point: usize,
    pub block_size: usize,
    pub replication: usize,
}

/// For each point `g`, a list of blocks over `P \ {g}` — the substrate of
/// the antiflag constructions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PointwiseFamily {
    pub n_points: usize,
    /// `owner_blocks[g]` is the family attached to point `g`.
    pub owner_blocks: Vec<Vec<Vec<usize>>>,
    /// Present when every per-point family is a tactical configuration with
    /// the same `(n-1, s, l, d)`.
    pub per_point_params: Option<PerPointParams>,
}

impl PointwiseFamily {
    pub fn vertex_count(&self) -> usize {
        self.owner_blocks.iter().map(Vec::len).sum()
    }

    /// The per-point family as a tactical configuration over `P \ {g}`,
    /// relabeled to contiguous 0-based points.
    pub fn per_point_config(&self, g: usize) -> TacticalConfig {
        let ground: Vec<usize> = (0..self.n_points).filter(|&p| p != g).collect();
        let index_of = |p: usize| ground.binary_search(&p).expect("point in ground set");
        let blocks = self.owner_blocks[g]
            .iter()
            .map(|b| b.iter().map(|&p| index_of(p)).collect())
            .collect();
        TacticalConfig::new(self.n_points - 1, blocks)
    }

    /// Validate the Construction II invariants: every block omits its owner
    /// and every per-point family is a `(n-1, s, l, d)` tactical
    /// configuration with `d(n-1) = l·s`.
    pub fn validate(&self) -> Result<()> {
        if self.owner_blocks.len() != self.n_points {
            return Err(Error::Construction(format!(
                "{} per-point families for {} points",
                self.owner_blocks.len(),
                self.n_points
            )));
        }
        let mut shape: Option<(usize, usize, usize)> = None;
        for g in 0..self.n_points {
            for (bi, block) in self.owner_blocks[g].iter().enumerate() {
                if block.contains(&g) {
                    return Err(Error::Construction(format!(
                        "block {bi} of point {g} contains its own point"
                    )));
                }
            }
            let cfg = self.per_point_config(g);
            let report = validate_tactical_config(&cfg);
            if !report.ok() {
                return Err(Error::Construction(format!(
                    "family of point {g} is not a tactical configuration: {}",
                    report.violations[0]
                )));
            }
            let this = (
                cfg.params.blocks,
                cfg.params.block_size,
                cfg.params.replication,
            );
            match shape {
                None => shape = Some(this),
                Some(expected) if expected != this => {
                    return Err(Error::Construction(format!(
                        "family of point {g} has parameters {this:?}, others have {expected:?}"
                    )))
                }
                _ => {}
            }
        }
        let (s, l, d) = shape.unwrap_or((0, 0, 0));
        if d * (self.n_points - 1) != l * s {
            return Err(Error::Construction(format!(
                "d(n-1) = {} but ls = {}",
                d * (self.n_points - 1),
                l * s
            )));
        }
        Ok(())
    }
}

/// Deterministic pointwise family: list `P \ {g}` in increasing order,
/// concatenate `d` cyclic repetitions, and cut into `s` chunks of length `l`.
/// With `d = 1` this is a partition of `P \ {g}` into consecutive runs.
pub fn chunked_pointwise_family(
    n: usize,
    s: usize,
    l: usize,
    d: usize,
) -> Result<PointwiseFamily> {
    if n < 2 || s == 0 || l == 0 || d == 0 {
        return Err(Error::Parameter(format!(
            "chunked family needs n ≥ 2 and positive s, l, d; got ({n},{s},{l},{d})"
        )));
    }
    if d * (n - 1) != l * s {
        return Err(Error::Parameter(format!(
            "d(n-1) = {} must equal ls = {}",
            d * (n - 1),
            l * s
        )));
    }
    if l > n - 2 {
        return Err(Error::Parameter(format!(
            "block size l = {l} exceeds n-2 = {}",
            n - 2
        )));
    }
    if d >= s {
        return Err(Error::Parameter(format!("need d < s, got d = {d}, s = {s}")));
    }
    let owner_blocks = (0..n)
        .map(|g| {
            let others: Vec<usize> = (0..n).filter(|&p| p != g).collect();
            (0..s)
                .map(|chunk| {
                    let mut block: Vec<usize> = (0..l)
                        .map(|off| others[(chunk * l + off) % (n - 1)])
                        .collect();
                    block.sort_unstable();
                    block
                })
                .collect()
        })
        .collect();
    Ok(PointwiseFamily {
        n_points: n,
        owner_blocks,
        per_point_params: Some(PerPointParams {
            blocks_per_point: s,
            block_size: l,
            replication: d,
        }),
    })
}

/// All partitions of `{0..m-1}` into `cells` unordered cells of size `size`,
/// each partition listed with its cells sorted by least element.
fn partitions_of(m: usize, cells: usize, size: usize) -> Vec<Vec<Vec<usize>>> {
    assert_eq!(m, cells * size);
    let mut out = Vec::new();
    let mut used = vec![false; m];
    let mut current: Vec<Vec<usize>> = Vec::new();
    fn rec(
        used: &mut Vec<bool>,
        current: &mut Vec<Vec<usize>>,
        out: &mut Vec<Vec<Vec<usize>>>,
        size: usize,
        cells: usize,
    ) {
        let Some(anchor) = used.iter().position(|&u| !u) else {
            out.push(current.clone());
            return;
        };
        if current.len() == cells {
            return;
        }
        used[anchor] = true;
        let mut cell = vec![anchor];
        fn choose(
            start: usize,
            cell: &mut Vec<usize>,
            used: &mut Vec<bool>,
            current: &mut Vec<Vec<usize>>,
            out: &mut Vec<Vec<Vec<usize>>>,
            size: usize,
            cells: usize,
        ) {
            if cell.len() == size {
                current.push(cell.clone());
                rec(used, current, out, size, cells);
                current.pop();
                return;
            }
            for p in start..used.len() {
                if !used[p] {
                    used[p] = true;
                    cell.push(p);
                    choose(p + 1, cell, used, current, out, size, cells);
                    cell.pop();
                    used[p] = false;
                }
            }
        }
        choose(anchor + 1, &mut cell, used, current, out, size, cells);
        used[anchor] = false;
    }
    rec(&mut used, &mut current, &mut out, size, cells);
    out
}

/// The exhaustive space of `d = 1` pointwise families: each point
/// independently picks a partition of `P \ {g}` into `s` cells of size `l`.
/// Families are addressable by index, so the stream can be restarted or
/// partitioned across workers.
pub struct PartitionFamilySpace {
    pub n: usize,
    s: usize,
    l: usize,
    /// partitions of an (n-1)-element index set, shared by every point
    shapes: Vec<Vec<Vec<usize>>>,
}

impl PartitionFamilySpace {
    pub fn new(n: usize, s: usize, l: usize) -> Result<PartitionFamilySpace> {
        if n < 2 || l * s != n - 1 {
            return Err(Error::Parameter(format!(
                "partition family space needs ls = n-1; got n = {n}, s = {s}, l = {l}"
            )));
        }
        Ok(PartitionFamilySpace {
            n,
            s,
            l,
            shapes: partitions_of(n - 1, s, l),
        })
    }

    /// Number of partitions available per point.
    pub fn choices_per_point(&self) -> usize {
        self.shapes.len()
    }

    pub fn len(&self) -> u128 {
        (self.shapes.len() as u128).pow(self.n as u32)
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    /// The family at `index`, decoding one base-`c` digit per point (point 0
    /// is the least significant digit).
    pub fn family(&self, index: u128) -> PointwiseFamily {
        let c = self.shapes.len() as u128;
        let mut idx = index;
        let owner_blocks = (0..self.n)
            .map(|g| {
                let digit = (idx % c) as usize;
                idx /= c;
                let others: Vec<usize> = (0..self.n).filter(|&p| p != g).collect();
                self.shapes[digit]
                    .iter()
                    .map(|cell| cell.iter().map(|&i| others[i]).collect())
                    .collect()
            })
            .collect();
        PointwiseFamily {
            n_points: self.n,
            owner_blocks,
            per_point_params: Some(PerPointParams {
                blocks_per_point: self.s,
                block_size: self.l,
                replication: 1,
            }),
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = PointwiseFamily> + '_ {
        (0..self.len()).map(|i| self.family(i))
    }
}

/// Check whether `n` is prime by trial division; projective planes are only
/// built over prime fields here.
fn is_prime(n: usize) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// The pointwise family of the projective plane of prime order `n`: for each
/// point `p`, the blocks are the lines through `p` with `p` removed. The
/// result has `n²+n+1` points with per-point parameters
/// `(s, l, d) = (n+1, n, 1)`.
pub fn projective_plane_family(n: usize) -> Result<PointwiseFamily> {
    if !is_prime(n) {
        return Err(Error::Parameter(format!(
            "projective plane order {n} is not prime; only prime orders are supported"
        )));
    }
    // homogeneous coordinates over F_n, normalized so the first nonzero
    // coordinate is 1; the same list serves as points and lines
    let mut coords: Vec<[usize; 3]> = Vec::new();
    for x in 0..n {
        for y in 0..n {
            for z in 0..n {
                let v = [x, y, z];
                if v == [0, 0, 0] {
                    continue;
                }
                let first = v.iter().find(|&&c| c != 0).unwrap();
                if *first == 1 {
                    coords.push(v);
                }
            }
        }
    }
    coords.sort_unstable();
    let total = n * n + n + 1;
    debug_assert_eq!(coords.len(), total);
    let incident = |p: &[usize; 3], line: &[usize; 3]| {
        (p[0] * line[0] + p[1] * line[1] + p[2] * line[2]).is_multiple_of(n)
    };
    let owner_blocks = (0..total)
        .map(|pi| {
            coords
                .iter()
                .filter(|line| incident(&coords[pi], line))
                .map(|line| {
                    (0..total)
                        .filter(|&qi| qi != pi && incident(&coords[qi], line))
                        .collect()
                })
                .collect()
        })
        .collect();
    Ok(PointwiseFamily {
        n_points: total,
        owner_blocks,
        per_point_params: Some(PerPointParams {
            blocks_per_point: n + 1,
            block_size: n,
            replication: 1,
        }),
    })
}

/// The grouped design of Construction I: a partition of `rq` points into `r`
/// groups of size `q`, per-group `(q, q, a, a)` block families, spanning
/// blocks pairing one block from every group, and per-point partitions of the
/// home group remainder into `b` cells of size `a`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GroupedDesign {
    pub r: usize,
    pub q: usize,
    pub a: usize,
    pub b: usize,
    pub groups: Vec<Vec<usize>>,
    pub group_blocks: Vec<Vec<Vec<usize>>>,
    pub spanning_blocks: Vec<Vec<usize>>,
    pub x_partitions: Vec<Vec<Vec<usize>>>,
}

impl GroupedDesign {
    pub fn n_points(&self) -> usize {
        self.r * self.q
    }

    pub fn group_of(&self, point: usize) -> Option<usize> {
        self.groups.iter().position(|g| g.contains(&point))
    }

    /// Check every hypothesis the construction relies on, naming the first
    /// violated one.
    pub fn validate(&self) -> Result<()> {
        let n = self.n_points();
        let fail = |msg: String| Err(Error::Construction(msg));
        if self.q < 2 || self.r < 2 {
            return fail(format!("need r ≥ 2 and q ≥ 2, got r = {}, q = {}", self.r, self.q));
        }
        if self.a * self.b != self.q - 1 {
            return fail(format!(
                "q - 1 = {} must equal a·b = {}",
                self.q - 1,
                self.a * self.b
            ));
        }
        if self.groups.len() != self.r {
            return fail(format!("{} groups, expected r = {}", self.groups.len(), self.r));
        }
        let mut seen = vec![false; n];
        for (j, group) in self.groups.iter().enumerate() {
            if group.len() != self.q {
                return fail(format!("group {j} has {} points, expected q = {}", group.len(), self.q));
            }
            for &p in group {
                if p >= n || seen[p] {
                    return fail(format!("groups do not partition the point set at point {p}"));
                }
                seen[p] = true;
            }
        }
        if self.group_blocks.len() != self.r {
            return fail(format!(
                "{} group block families, expected r = {}",
                self.group_blocks.len(),
                self.r
            ));
        }
        for (j, family) in self.group_blocks.iter().enumerate() {
            let cfg_points = &self.groups[j];
            if family.len() != self.q {
                return fail(format!(
                    "group {j} has {} blocks, expected q = {}",
                    family.len(),
                    self.q
                ));
            }
            let mut counts = vec![0usize; n];
            for block in family {
                if block.len() != self.a {
                    return fail(format!(
                        "a block of group {j} has size {}, expected a = {}",
                        block.len(),
                        self.a
                    ));
                }
                for &p in block {
                    if !cfg_points.contains(&p) {
                        return fail(format!("block of group {j} leaves the group at point {p}"));
                    }
                    counts[p] += 1;
                }
            }
            for &p in cfg_points {
                if counts[p] != self.a {
                    return fail(format!(
                        "point {p} occurs {} times in group {j}'s blocks, expected a = {}",
                        counts[p], self.a
                    ));
                }
            }
        }
        if self.spanning_blocks.len() != self.q {
            return fail(format!(
                "{} spanning blocks, expected q = {}",
                self.spanning_blocks.len(),
                self.q
            ));
        }
        for (j, family) in self.group_blocks.iter().enumerate() {
            // the multiset {B_i ∩ G_j} must equal the multiset of group blocks
            let mut remaining: Vec<Vec<usize>> = family.clone();
            for (i, spanning) in self.spanning_blocks.iter().enumerate() {
                if spanning.len() != self.r * self.a {
                    return fail(format!(
                        "spanning block {i} has size {}, expected ra = {}",
                        spanning.len(),
                        self.r * self.a
                    ));
                }
                let mut inter: Vec<usize> = spanning
                    .iter()
                    .copied()
                    .filter(|p| self.groups[j].contains(p))
                    .collect();
                inter.sort_unstable();
                match remaining.iter().position(|blk| *blk == inter) {
                    Some(pos) => {
                        remaining.remove(pos);
                    }
                    None => {
                        return fail(format!(
                            "spanning block {i} meets group {j} in {inter:?}, which is not an \
                             unused block of that group"
                        ))
                    }
                }
            }
        }
        if self.x_partitions.len() != n {
            return fail(format!(
                "{} x-partitions, expected one per point ({n})",
                self.x_partitions.len()
            ));
        }
        for g in 0..n {
            let h = self
                .group_of(g)
                .ok_or_else(|| Error::Construction(format!("point {g} is in no group")))?;
            let cells = &self.x_partitions[g];
            if cells.len() != self.b {
                return fail(format!(
                    "x-partition of point {g} has {} cells, expected b = {}",
                    cells.len(),
                    self.b
                ));
            }
            let mut covered: Vec<usize> = Vec::new();
            for cell in cells {
                if cell.len() != self.a {
                    return fail(format!(
                        "x-partition cell of point {g} has size {}, expected a = {}",
                        cell.len(),
                        self.a
                    ));
                }
                covered.extend_from_slice(cell);
            }
            covered.sort_unstable();
            let mut expected: Vec<usize> = self.groups[h]
                .iter()
                .copied()
                .filter(|&p| p != g)
                .collect();
            expected.sort_unstable();
            if covered != expected {
                return fail(format!(
                    "x-partition of point {g} does not partition its group remainder"
                ));
            }
        }
        Ok(())
    }
}
