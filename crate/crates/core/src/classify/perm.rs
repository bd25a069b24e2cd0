//! Permutations, permutation groups with exact order computation, and
//! small-group recognition.

use crate::{Error, Result};
use serde::{Deserialize, Serialize};
use std::collections::{HashMap, HashSet, VecDeque};

/// A permutation of `{0..n-1}` given by its image list.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation {
            images: (0..degree).collect(),
        }
    }

    pub fn from_images(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &img in &images {
            if img >= n || seen[img] {
                return Err(Error::Parameter(format!(
                    "image list {images:?} is not a permutation of 0..{n}"
                )));
            }
            seen[img] = true;
        }
        Ok(Permutation { images })
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn apply(&self, point: usize) -> usize {
        self.images[point]
    }

    pub fn is_identity(&self) -> bool {
        self.images.iter().enumerate().all(|(i, &v)| i == v)
    }

    /// `self` then `other`: `(self * other)(x) = other(self(x))`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation {
            images: self.images.iter().map(|&v| other.images[v]).collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut images = vec![0; self.images.len()];
        for (i, &v) in self.images.iter().enumerate() {
            images[v] = i;
        }
        Permutation { images }
    }

    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let n = self.images.len();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = vec![start];
            seen[start] = true;
            let mut cur = self.images[start];
            while cur != start {
                seen[cur] = true;
                cycle.push(cur);
                cur = self.images[cur];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }

    /// Multiplicative order (lcm of cycle lengths).
    pub fn element_order(&self) -> usize {
        self.cycles()
            .iter()
            .map(|c| c.len())
            .fold(1usize, lcm)
    }
}

fn lcm(a: usize, b: usize) -> usize {
    a / gcd(a, b) * b
}

fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// A stabilizer chain built by the deterministic Schreier–Sims procedure;
/// gives exact group order and membership tests.
#[derive(Debug, Clone)]
pub struct StabChain {
    degree: usize,
    base: Vec<usize>,
    strong: Vec<Vec<Permutation>>,
    transversals: Vec<HashMap<usize, Permutation>>,
}

impl StabChain {
    pub fn build(degree: usize, generators: &[Permutation]) -> StabChain {
        let mut chain = StabChain {
            degree,
            base: Vec::new(),
            strong: Vec::new(),
            transversals: Vec::new(),
        };
        for g in generators {
            chain.extend_inner(g);
        }
        chain.close();
        chain
    }

    pub fn order(&self) -> u128 {
        self.transversals
            .iter()
            .map(|t| t.len() as u128)
            .product()
    }

    pub fn contains(&self, perm: &Permutation) -> bool {
        self.sift(perm).is_identity()
    }

    /// Strip `perm` through the chain; identity result means membership.
    fn sift(&self, perm: &Permutation) -> Permutation {
        let mut residue = perm.clone();
        for (level, &beta) in self.base.iter().enumerate() {
            let image = residue.apply(beta);
            match self.transversals[level].get(&image) {
                Some(rep) => residue = residue.then(&rep.inverse()),
                None => return residue,
            }
        }
        residue
    }

    fn extend_inner(&mut self, perm: &Permutation) -> bool {
        let residue = self.sift(perm);
        if residue.is_identity() {
            return false;
        }
        // residue fixes base points of every level whose transversal absorbed
        // it; attach it at the first level whose base point it moves
        let mut level = 0;
        while level < self.base.len() && residue.apply(self.base[level]) == self.base[level] {
            level += 1;
        }
        if level == self.base.len() {
            let moved = (0..self.degree)
                .find(|&p| residue.apply(p) != p)
                .expect("non-identity residue moves a point");
            self.base.push(moved);
            self.strong.push(Vec::new());
            self.transversals.push(HashMap::new());
        }
        for l in 0..=level {
            self.strong[l].push(residue.clone());
        }
        for l in 0..=level {
            self.rebuild_transversal(l);
        }
        true
    }

    fn rebuild_transversal(&mut self, level: usize) {
        let beta = self.base[level];
        let mut transversal = HashMap::new();
        transversal.insert(beta, Permutation::identity(self.degree));
        let mut queue = VecDeque::from([beta]);
        while let Some(p) = queue.pop_front() {
            let rep = transversal[&p].clone();
            for g in &self.strong[level] {
                let q = g.apply(p);
                if let std::collections::hash_map::Entry::Vacant(e) = transversal.entry(q) {
                    e.insert(rep.then(g));
                    queue.push_back(q);
                }
            }
        }
        self.transversals[level] = transversal;
    }

    /// Process Schreier generators until every level is closed.
    fn close(&mut self) {
        'restart: loop {
            for level in 0..self.base.len() {
                let points: Vec<usize> = self.transversals[level].keys().copied().collect();
                for p in points {
                    let rep = self.transversals[level][&p].clone();
                    for g in self.strong[level].clone() {
                        let image = g.apply(p);
                        let to_image = self.transversals[level][&image].clone();
                        let schreier = rep.then(&g).then(&to_image.inverse());
                        if !self.sift(&schreier).is_identity() && self.extend_inner(&schreier) {
                            continue 'restart;
                        }
                    }
                }
            }
            return;
        }
    }
}

/// A permutation group given by generators, with its order computed exactly.
#[derive(Debug, Clone)]
pub struct PermGroup {
    degree: usize,
    generators: Vec<Permutation>,
    chain: StabChain,
}

impl PermGroup {
    pub fn new(degree: usize, generators: Vec<Permutation>) -> Result<PermGroup> {
        for g in &generators {
            if g.degree() != degree {
                return Err(Error::Parameter(format!(
                    "generator degree {} does not match group degree {degree}",
                    g.degree()
                )));
            }
        }
        let generators: Vec<Permutation> =
            generators.into_iter().filter(|g| !g.is_identity()).collect();
        let chain = StabChain::build(degree, &generators);
        Ok(PermGroup {
            degree,
            generators,
            chain,
        })
    }

    pub fn trivial(degree: usize) -> PermGroup {
        PermGroup::new(degree, vec![]).expect("trivial group")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn generators(&self) -> &[Permutation] {
        &self.generators
    }

    pub fn order(&self) -> u128 {
        self.chain.order()
    }

    pub fn contains(&self, perm: &Permutation) -> bool {
        perm.degree() == self.degree && self.chain.contains(perm)
    }

    pub fn orbit(&self, point: usize) -> Vec<usize> {
        let mut seen = vec![false; self.degree];
        seen[point] = true;
        let mut queue = VecDeque::from([point]);
        let mut orbit = vec![point];
        while let Some(p) = queue.pop_front() {
            for g in &self.generators {
                let q = g.apply(p);
                if !seen[q] {
                    seen[q] = true;
                    orbit.push(q);
                    queue.push_back(q);
                }
            }
        }
        orbit.sort_unstable();
        orbit
    }

    pub fn is_transitive(&self) -> bool {
        self.degree == 0 || self.orbit(0).len() == self.degree
    }

    /// Enumerate all elements when the order does not exceed `cap`.
    pub fn elements(&self, cap: usize) -> Option<Vec<Permutation>> {
        if self.order() > cap as u128 {
            return None;
        }
        let mut seen = HashSet::new();
        let id = Permutation::identity(self.degree);
        seen.insert(id.clone());
        let mut queue = VecDeque::from([id]);
        let mut out: Vec<Permutation> = Vec::new();
        while let Some(p) = queue.pop_front() {
            out.push(p.clone());
            for g in &self.generators {
                let q = p.then(g);
                if seen.insert(q.clone()) {
                    queue.push_back(q);
                }
            }
        }
        Some(out)
    }
}

/// Name the isomorphism type of a small group from its order, abelianness and
/// element-order multiset; orders > 24 or unmatched shapes fall back to
/// `"order-N unrecognized"`.
pub fn recognize_group(group: &PermGroup) -> String {
    let order = group.order();
    if order == 1 {
        return "C1".to_string();
    }
    let fallback = format!("order-{order} unrecognized");
    if order > 24 {
        return fallback;
    }
    let order = order as usize;
    let elements = match group.elements(24) {
        Some(e) => e,
        None => return fallback,
    };
    let element_orders: Vec<usize> = elements.iter().map(|e| e.element_order()).collect();
    let count_of = |k: usize| element_orders.iter().filter(|&&o| o == k).count();

    if element_orders.contains(&order) {
        return format!("C{order}");
    }
    if order == 4 {
        return "C2×C2".to_string();
    }
    // dihedral of order 2m: a rotation of order m plus a reflection inverting it
    if order.is_multiple_of(2) && order >= 6 {
        let m = order / 2;
        if let Some(r) = elements.iter().find(|e| e.element_order() == m) {
            let mut powers = Vec::with_capacity(m);
            let mut cur = Permutation::identity(group.degree());
            for _ in 0..m {
                powers.push(cur.clone());
                cur = cur.then(r);
            }
            let r_inv = r.inverse();
            for s in &elements {
                if s.element_order() == 2
                    && !powers.contains(s)
                    && s.then(r).then(s) == r_inv
                {
                    return format!("D{order}");
                }
            }
        }
    }
    if order == 20 && count_of(2) == 5 && count_of(4) == 10 && count_of(5) == 4 {
        return "C5⋊C4".to_string();
    }
    if order == 24 && count_of(2) == 9 && count_of(3) == 8 && count_of(4) == 6 {
        return "S4".to_string();
    }
    fallback
}
