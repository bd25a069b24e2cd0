//! Construction I: digraphs on antiflags of grouped designs, in three forms —
//! general (`q-1 = ab`), `b = 1` (with an optional per-point relaxed pairing)
//! and `a = 1` (transversal blocks selected through a part map π).

use crate::construct2::antiflag_digraph;
use crate::designs::{cyclic_block_family, GroupedDesign, PointwiseFamily};
use crate::graphs::{Digraph, DsrgParams};
use crate::{Error, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum C1Mode {
    General,
    B1,
    A1,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Pairing {
    #[default]
    Strict,
    Relaxed,
}

/// Guard against inputs far beyond desk scale.
fn check_scale(vertices: usize) -> Result<()> {
    const MAX_VERTICES: usize = 200_000;
    if vertices > MAX_VERTICES {
        return Err(Error::Parameter(format!(
            "construction would produce {vertices} vertices; limit is {MAX_VERTICES}"
        )));
    }
    Ok(())
}

fn check_rq(r: usize, q: usize) -> Result<()> {
    if r < 2 || q < 2 {
        return Err(Error::Parameter(format!(
            "need r ≥ 2 and q ≥ 2, got r = {r}, q = {q}"
        )));
    }
    Ok(())
}

/// The deterministic default inputs: contiguous groups, cyclic `(q, q, a, a)`
/// block families shifted into each group, the i-th blocks paired into the
/// i-th spanning block, and each point's group remainder chunked cyclically
/// starting after the point.
pub fn default_grouped_design(r: usize, q: usize, a: usize, b: usize) -> Result<GroupedDesign> {
    check_rq(r, q)?;
    if a == 0 || b == 0 || a * b != q - 1 {
        return Err(Error::Parameter(format!(
            "q - 1 = {} must equal a·b with positive factors, got a = {a}, b = {b}",
            q - 1
        )));
    }
    let groups: Vec<Vec<usize>> = (0..r).map(|j| (j * q..(j + 1) * q).collect()).collect();
    let cyclic = cyclic_block_family(q, a)?;
    let group_blocks: Vec<Vec<Vec<usize>>> = (0..r)
        .map(|j| {
            cyclic
                .blocks
                .iter()
                .map(|block| {
                    let mut shifted: Vec<usize> = block.iter().map(|&p| j * q + p).collect();
                    shifted.sort_unstable();
                    shifted
                })
                .collect()
        })
        .collect();
    let spanning_blocks: Vec<Vec<usize>> = (0..q)
        .map(|i| {
            let mut block: Vec<usize> = (0..r).flat_map(|j| group_blocks[j][i].clone()).collect();
            block.sort_unstable();
            block
        })
        .collect();
    let x_partitions: Vec<Vec<Vec<usize>>> = (0..r * q)
        .map(|g| {
            let h = g / q;
            let t = g % q;
            // group remainder in cyclic order starting just after g
            let order: Vec<usize> = (1..q).map(|i| h * q + (t + i) % q).collect();
            (0..b)
                .map(|cell| {
                    let mut chunk: Vec<usize> = order[cell * a..(cell + 1) * a].to_vec();
                    chunk.sort_unstable();
                    chunk
                })
                .collect()
        })
        .collect();
    let design = GroupedDesign {
        r,
        q,
        a,
        b,
        groups,
        group_blocks,
        spanning_blocks,
        x_partitions,
    };
    design.validate()?;
    Ok(design)
}

/// The antiflag family of a grouped design: for a point `g` in group `h`,
/// the blocks are `X_{gl} ∪ (B_j \ G_h)` over all cells `l` and spanning
/// blocks `j`.
pub fn c1_family(design: &GroupedDesign) -> Result<PointwiseFamily> {
    design.validate()?;
    let n = design.n_points();
    let owner_blocks = (0..n)
        .map(|g| {
            let h = design.group_of(g).expect("validated design");
            let home = &design.groups[h];
            design.x_partitions[g]
                .iter()
                .flat_map(|x_cell| {
                    design.spanning_blocks.iter().map(move |spanning| {
                        let mut block: Vec<usize> = x_cell
                            .iter()
                            .copied()
                            .chain(
                                spanning
                                    .iter()
                                    .copied()
                                    .filter(|p| !home.contains(p)),
                            )
                            .collect();
                        block.sort_unstable();
                        block
                    })
                })
                .collect()
        })
        .collect();
    Ok(PointwiseFamily {
        n_points: n,
        owner_blocks,
        per_point_params: None,
    })
}

/// General Construction I from explicit inputs.
pub fn build_c1_general_from(design: &GroupedDesign) -> Result<Digraph> {
    check_scale(design.r * design.q * design.q * design.b)?;
    antiflag_digraph(&c1_family(design)?)
}

/// General Construction I with the deterministic default inputs.
pub fn build_c1_general(r: usize, q: usize, a: usize, b: usize) -> Result<Digraph> {
    build_c1_general_from(&default_grouped_design(r, q, a, b)?)
}

/// Per-point pairing choices for the relaxed `b = 1` mode: for each point,
/// one permutation index (base `q!`) per non-home group beyond the first,
/// which stays fixed as the reference.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct B1Choices {
    pub per_point: Vec<Vec<usize>>,
}

impl B1Choices {
    pub fn strict(r: usize, q: usize) -> B1Choices {
        let _ = q;
        B1Choices {
            per_point: vec![vec![0; r.saturating_sub(2)]; r * q],
        }
    }
}

fn factorial(n: usize) -> u128 {
    (1..=n as u128).product()
}

/// Number of relaxed choice vectors: `(q!)^{(r-2)·rq}`.
pub fn b1_relaxed_space(r: usize, q: usize) -> Result<u128> {
    check_rq(r, q)?;
    Ok(factorial(q).pow(((r - 2) * r * q) as u32))
}

/// Decode a choice vector from its index (point-major, then group-major,
/// digits base `q!`).
pub fn b1_choices_from_index(r: usize, q: usize, mut index: u128) -> B1Choices {
    let base = factorial(q);
    let per_point = (0..r * q)
        .map(|_| {
            (0..r.saturating_sub(2))
                .map(|_| {
                    let digit = (index % base) as usize;
                    index /= base;
                    digit
                })
                .collect()
        })
        .collect();
    B1Choices { per_point }
}

/// Permutation of `0..n` at `index` in the factorial number system.
fn perm_from_index(n: usize, mut index: usize) -> Vec<usize> {
    let mut fact = vec![1usize; n.max(1)];
    for i in 1..n {
        fact[i] = fact[i - 1] * i;
    }
    let mut available: Vec<usize> = (0..n).collect();
    let mut out = Vec::with_capacity(n);
    for pos in (0..n).rev() {
        let digit = index / fact[pos];
        index %= fact[pos];
        out.push(available.remove(digit));
    }
    out
}

/// The `b = 1` antiflag family. Group block families are forced (all
/// `(q-1)`-subsets, canonically ordered by omitted point) and the home cell
/// is the whole group remainder; the choices re-align the other groups'
/// subsets per point.
pub fn b1_family(r: usize, q: usize, choices: &B1Choices) -> Result<PointwiseFamily> {
    check_rq(r, q)?;
    let n = r * q;
    if choices.per_point.len() != n {
        return Err(Error::Parameter(format!(
            "{} per-point choices for {n} points",
            choices.per_point.len()
        )));
    }
    let bound = factorial(q) as usize;
    // P_{f,i} = G_f minus its i-th element
    let subset = |f: usize, i: usize| -> Vec<usize> {
        (0..q).filter(|&x| x != i).map(|x| f * q + x).collect()
    };
    let mut owner_blocks = Vec::with_capacity(n);
    for g in 0..n {
        let h = g / q;
        let free = &choices.per_point[g];
        if free.len() != r - 2 {
            return Err(Error::Parameter(format!(
                "point {g} has {} group choices, expected r - 2 = {}",
                free.len(),
                r - 2
            )));
        }
        if let Some(&bad) = free.iter().find(|&&c| c >= bound) {
            return Err(Error::Parameter(format!(
                "choice {bad} for point {g} out of range (< q! = {bound})"
            )));
        }
        let others: Vec<usize> = (0..r).filter(|&f| f != h).collect();
        let sigmas: Vec<Vec<usize>> = others
            .iter()
            .enumerate()
            .map(|(idx, _)| {
                if idx == 0 {
                    (0..q).collect()
                } else {
                    perm_from_index(q, free[idx - 1])
                }
            })
            .collect();
        let home_rest: Vec<usize> = (0..q).map(|x| h * q + x).filter(|&p| p != g).collect();
        let blocks = (0..q)
            .map(|j| {
                let mut block = home_rest.clone();
                for (idx, &f) in others.iter().enumerate() {
                    block.extend(subset(f, sigmas[idx][j]));
                }
                block.sort_unstable();
                block
            })
            .collect();
        owner_blocks.push(blocks);
    }
    Ok(PointwiseFamily {
        n_points: n,
        owner_blocks,
        per_point_params: None,
    })
}

/// `b = 1` Construction I with strict pairing (one global spanning family).
pub fn build_c1_b1(r: usize, q: usize) -> Result<Digraph> {
    build_c1_b1_relaxed(r, q, &B1Choices::strict(r, q))
}

/// `b = 1` Construction I with explicit per-point pairing choices. Relaxed
/// outputs fall outside the theorem's hypotheses, so callers are expected to
/// re-verify them.
pub fn build_c1_b1_relaxed(r: usize, q: usize, choices: &B1Choices) -> Result<Digraph> {
    check_scale(r * q * q)?;
    antiflag_digraph(&b1_family(r, q, choices)?)
}

/// Outcome of the `a = 1` construction; a non-injective part map is reported
/// as a warning, not an error, and the verifier has the final word.
#[derive(Debug, Clone)]
pub struct A1Build {
    pub graph: Digraph,
    pub pi_injective: bool,
    pub warning: Option<String>,
}

/// Default part map: `π(i) = i mod q^{r-2}`, injective whenever `rq ≤ w`.
pub fn default_pi(r: usize, q: usize) -> Vec<usize> {
    let w = q.pow((r - 2) as u32);
    (0..r * q).map(|i| i % w).collect()
}

/// The part `𝓑_{i,c}` of the diagonal-line partition: blocks through `i`
/// whose coordinate tuples over the other groups (in group order) are
/// `(x, x+c_1, …, x+c_{r-2})` for `x ∈ Z_q`.
pub fn a1_part(r: usize, q: usize, point: usize, part: usize) -> Vec<Vec<usize>> {
    let h = point / q;
    let others: Vec<usize> = (0..r).filter(|&f| f != h).collect();
    // digits of the part index, base q, one per group beyond the first
    let mut c = Vec::with_capacity(r.saturating_sub(2));
    let mut rest = part;
    for _ in 0..r.saturating_sub(2) {
        c.push(rest % q);
        rest /= q;
    }
    (0..q)
        .map(|x| {
            let mut block = vec![point];
            for (idx, &f) in others.iter().enumerate() {
                let coord = if idx == 0 { x } else { (x + c[idx - 1]) % q };
                block.push(f * q + coord);
            }
            block.sort_unstable();
            block
        })
        .collect()
}

/// The `a = 1` antiflag family `𝓒_g^π = ⋃_{i ∈ G_h \ {g}} 𝓑_{i,π(i)}`.
pub fn a1_family(r: usize, q: usize, pi: &[usize]) -> Result<PointwiseFamily> {
    check_rq(r, q)?;
    let n = r * q;
    let w = q.pow((r - 2) as u32);
    if pi.len() != n {
        return Err(Error::Parameter(format!(
            "π must assign a part to each of the {n} points, got {}",
            pi.len()
        )));
    }
    if let Some(&bad) = pi.iter().find(|&&p| p >= w) {
        return Err(Error::Parameter(format!(
            "π value {bad} out of range (< q^(r-2) = {w})"
        )));
    }
    let owner_blocks = (0..n)
        .map(|g| {
            let h = g / q;
            (0..q)
                .map(|x| h * q + x)
                .filter(|&i| i != g)
                .flat_map(|i| a1_part(r, q, i, pi[i]))
                .collect()
        })
        .collect();
    Ok(PointwiseFamily {
        n_points: n,
        owner_blocks,
        per_point_params: None,
    })
}

pub fn build_c1_a1(r: usize, q: usize, pi: &[usize]) -> Result<A1Build> {
    check_rq(r, q)?;
    check_scale(r * q * q * (q - 1))?;
    let w = q.pow((r - 2) as u32);
    let graph = antiflag_digraph(&a1_family(r, q, pi)?)?;
    let mut seen = vec![false; w];
    let mut injective = true;
    for &p in pi {
        if seen[p] {
            injective = false;
        }
        seen[p] = true;
    }
    let warning = if r * q > w {
        Some(format!(
            "π cannot be injective: rq = {} exceeds q^(r-2) = {w}; parameters are taken from \
             the verifier",
            r * q
        ))
    } else if !injective {
        Some("π is not injective".to_string())
    } else {
        None
    };
    Ok(A1Build {
        graph,
        pi_injective: injective,
        warning,
    })
}

/// Closed-form parameter tuples for the three modes. All three agree with
/// the single family `(r(1+ab)²b, r(1+ab)ab, ra²b+a, ra²b+a-ab-1, ra²b+a)`
/// under `q = 1 + ab`.
pub fn expected_params_c1(
    mode: C1Mode,
    r: usize,
    q: usize,
    a: usize,
    b: usize,
) -> Result<DsrgParams> {
    check_rq(r, q)?;
    match mode {
        C1Mode::General => {
            if a == 0 || b == 0 || a * b != q - 1 {
                return Err(Error::Parameter(format!(
                    "general mode needs a·b = q - 1, got a = {a}, b = {b}, q = {q}"
                )));
            }
            let t = a * (r * (q - 1) + 1);
            Ok(DsrgParams::new(
                r * q * q * b,
                r * q * (q - 1),
                t,
                q * (a - 1) + (r - 1) * (q - 1) * a,
                t,
            ))
        }
        C1Mode::B1 => {
            if a != q - 1 || b != 1 {
                return Err(Error::Parameter(format!(
                    "b = 1 mode forces a = q - 1; got a = {a}, b = {b}"
                )));
            }
            let t = (q - 1) * (r * q - r + 1);
            Ok(DsrgParams::new(
                r * q * q,
                r * q * (q - 1),
                t,
                r * (q - 1) * (q - 1) - 1,
                t,
            ))
        }
        C1Mode::A1 => {
            if a != 1 || b != q - 1 {
                return Err(Error::Parameter(format!(
                    "a = 1 mode forces b = q - 1; got a = {a}, b = {b}"
                )));
            }
            let t = r * q - r + 1;
            Ok(DsrgParams::new(
                r * q * q * (q - 1),
                r * q * (q - 1),
                t,
                r * q - r - q + 1,
                t,
            ))
        }
    }
}
