//! Steiner distances and Steiner (k,l)-eccentricities of trees.
//!
//! The Steiner distance of a vertex set is the edge count of the unique
//! minimal subtree containing it. The (k,l)-eccentricity of an l-set `S` is
//! the largest Steiner distance of a k-superset of `S`; it is computed here by
//! greedy farthest-vertex augmentation and checked against direct
//! enumeration of all supersets.

use itertools::Itertools;
use num_bigint::BigInt;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::scalar::{big_to_scalar, binomial, binomial_u64, Scalar};
use crate::tree::{Tree, VertexSet};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct KLParams {
    pub k: usize,
    pub l: usize,
}

impl KLParams {
    pub fn new(k: usize, l: usize) -> Result<Self> {
        if k < 2 || l > k {
            return Err(Error::BadParams { k, l });
        }
        Ok(KLParams { k, l })
    }

    pub fn check_order(&self, n: usize) -> Result<()> {
        if self.k > n {
            return Err(Error::KTooLarge { k: self.k, n });
        }
        Ok(())
    }

    /// All valid `(k, l)` for a tree of order `n`, ordered by `k` then `l`.
    pub fn grid(n: usize) -> impl Iterator<Item = KLParams> {
        (2..=n).flat_map(|k| (0..=k).map(move |l| KLParams { k, l }))
    }
}

/// An optimal witness for a Steiner (k,l)-eccentricity query.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct EccResult {
    pub value: usize,
    pub witness: VertexSet,
    pub witness_subtree: VertexSet,
    pub eccentric_vertices: VertexSet,
}

pub fn steiner_distance(t: &Tree, set: &VertexSet) -> Result<usize> {
    Ok(t.spanning_subtree(set)?.len() - 1)
}

fn steiner_distance_unchecked(t: &Tree, members: &[usize], keep: &mut [bool]) -> usize {
    keep.fill(true);
    t.prune_into(members, keep);
    keep.iter().filter(|&&b| b).count() - 1
}

/// Mutable state for farthest-vertex augmentation.
struct Augmenter<'a> {
    tree: &'a Tree,
    in_subtree: Vec<bool>,
    in_witness: Vec<bool>,
    dist: Vec<usize>,
    parent: Vec<usize>,
    queue: Vec<usize>,
}

impl<'a> Augmenter<'a> {
    fn new(tree: &'a Tree) -> Self {
        let n = tree.order();
        Augmenter {
            tree,
            in_subtree: vec![false; n],
            in_witness: vec![false; n],
            dist: vec![0; n],
            parent: vec![0; n],
            queue: Vec::with_capacity(n),
        }
    }

    /// Seeds with `set`; returns its Steiner distance.
    fn seed_set(&mut self, set: &[usize]) -> usize {
        self.in_witness.fill(false);
        self.in_subtree.fill(true);
        self.tree.prune_into(set, &mut self.in_subtree);
        for &v in set {
            self.in_witness[v] = true;
        }
        self.in_subtree.iter().filter(|&&b| b).count() - 1
    }

    /// Seeds with the two ends of a diametrical path; returns the diameter.
    fn seed_diameter(&mut self) -> usize {
        let (a, b) = self.tree.diametrical_pair();
        self.seed_set(&[a, b])
    }

    /// Adds the vertex farthest from the current subtree (smallest id on ties)
    /// and returns `(vertex, gain)`, or `None` when every vertex is a witness.
    fn step(&mut self) -> Option<(usize, usize)> {
        let n = self.tree.order();
        self.queue.clear();
        for v in 0..n {
            if self.in_subtree[v] {
                self.dist[v] = 0;
                self.parent[v] = v;
                self.queue.push(v);
            } else {
                self.dist[v] = usize::MAX;
            }
        }
        let mut head = 0;
        while head < self.queue.len() {
            let u = self.queue[head];
            head += 1;
            for &w in self.tree.neighbors(u) {
                if self.dist[w] == usize::MAX {
                    self.dist[w] = self.dist[u] + 1;
                    self.parent[w] = u;
                    self.queue.push(w);
                }
            }
        }
        let mut best: Option<usize> = None;
        for v in 0..n {
            if !self.in_witness[v] && best.is_none_or(|b| self.dist[v] > self.dist[b]) {
                best = Some(v);
            }
        }
        let v = best?;
        let gain = self.dist[v];
        self.in_witness[v] = true;
        let mut cur = v;
        while !self.in_subtree[cur] {
            self.in_subtree[cur] = true;
            cur = self.parent[cur];
        }
        Some((v, gain))
    }
}

fn check_query(t: &Tree, set: &VertexSet, p: KLParams) -> Result<()> {
    p.check_order(t.order())?;
    if set.len() != p.l {
        return Err(Error::BadSetSize {
            expected: p.l,
            found: set.len(),
        });
    }
    t.check_set(set)
}

/// Steiner (k,l)-eccentricity of `set` with an optimal witness.
pub fn steiner_kl_eccentricity(t: &Tree, set: &VertexSet, p: KLParams) -> Result<EccResult> {
    check_query(t, set, p)?;
    let mut aug = Augmenter::new(t);
    let (mut value, seeded) = if set.is_empty() {
        (aug.seed_diameter(), 2)
    } else {
        (aug.seed_set(set.as_slice()), set.len())
    };
    for _ in seeded..p.k {
        let (_, gain) = aug.step().expect("k <= n leaves a vertex to add");
        value += gain;
    }
    let witness = VertexSet::from_mask(&aug.in_witness);
    let witness_subtree = VertexSet::from_mask(&aug.in_subtree);
    let eccentric_vertices = witness.difference(set);
    Ok(EccResult {
        value,
        witness,
        witness_subtree,
        eccentric_vertices,
    })
}

/// Exhaustive maximum over all k-supersets of `set`. Exponential; meant for
/// small trees.
pub fn steiner_kl_eccentricity_oracle(t: &Tree, set: &VertexSet, p: KLParams) -> Result<usize> {
    check_query(t, set, p)?;
    Ok(oracle_unchecked(t, set.as_slice(), p.k, None))
}

/// Maximum Steiner distance over k-supersets of `set`, optionally restricting
/// the added vertices to `pool`.
pub(crate) fn oracle_unchecked(t: &Tree, set: &[usize], k: usize, pool: Option<&[usize]>) -> usize {
    let n = t.order();
    let rest: Vec<usize> = match pool {
        Some(pool) => pool.iter().copied().filter(|v| !set.contains(v)).collect(),
        None => (0..n).filter(|v| !set.contains(v)).collect(),
    };
    let mut keep = vec![true; n];
    let mut members = Vec::with_capacity(k);
    let mut best = 0;
    for extra in rest.iter().copied().combinations(k - set.len()) {
        members.clear();
        members.extend_from_slice(set);
        members.extend(extra);
        best = best.max(steiner_distance_unchecked(t, &members, &mut keep));
    }
    best
}

/// Exact average of the (k,l)-eccentricity over all l-subsets.
pub fn avg_steiner_kl_ecc<F: Scalar>(t: &Tree, p: KLParams) -> Result<F> {
    p.check_order(t.order())?;
    let n = t.order();
    let mut aug = Augmenter::new(t);
    let mut total = 0u64;
    if p.l == 0 {
        total = diameter_value(&mut aug, p.k) as u64;
    } else {
        for set in (0..n).combinations(p.l) {
            let mut value = aug.seed_set(&set);
            for _ in p.l..p.k {
                value += aug.step().expect("k <= n").1;
            }
            total += value as u64;
        }
    }
    Ok(F::ratio(total, binomial_u64(n, p.l)))
}

fn diameter_value(aug: &mut Augmenter<'_>, k: usize) -> usize {
    let mut value = aug.seed_diameter();
    for _ in 2..k {
        value += aug.step().expect("k <= n").1;
    }
    value
}

pub fn steiner_k_diameter(t: &Tree, k: usize) -> Result<usize> {
    let p = KLParams::new(k, 0)?;
    p.check_order(t.order())?;
    Ok(diameter_value(&mut Augmenter::new(t), k))
}

/// Minimum (k,l)-eccentricity over all l-subsets.
pub fn steiner_kl_radius(t: &Tree, p: KLParams) -> Result<usize> {
    p.check_order(t.order())?;
    let mut aug = Augmenter::new(t);
    if p.l == 0 {
        return Ok(diameter_value(&mut aug, p.k));
    }
    let mut best = usize::MAX;
    for set in (0..t.order()).combinations(p.l) {
        let mut value = aug.seed_set(&set);
        for _ in p.l..p.k {
            value += aug.step().expect("k <= n").1;
        }
        best = best.min(value);
    }
    Ok(best)
}

/// Steiner k-Wiener index, summed edge by edge: an edge lies in the subtree
/// of a k-set unless the set sits entirely on one side of it.
pub fn steiner_wiener(t: &Tree, k: usize) -> Result<BigInt> {
    KLParams::new(k, k)?.check_order(t.order())?;
    let n = t.order();
    let parent = t.parents_from(0);
    let order = t.bfs_order(0);
    let mut size = vec![1u64; n];
    for &v in order.iter().rev().filter(|&&v| v != 0) {
        size[parent[v]] += size[v];
    }
    let all = binomial(n as u64, k as u64);
    let mut total = BigInt::zero();
    for v in 1..n {
        let below = size[v];
        total += &all - binomial(below, k as u64) - binomial(n as u64 - below, k as u64);
    }
    Ok(total)
}

/// Sums of (k,l)-eccentricities over all l-subsets, for every valid `(k, l)`.
///
/// One greedy run per l-set yields the values for every `k` at once, since the
/// greedy gains form a non-increasing sequence whose prefix sums are the
/// eccentricities. Intended for trees small enough to enumerate `2^n` subsets.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EccTable {
    n: usize,
    sums: Vec<Vec<u64>>,
}

impl EccTable {
    pub fn new(t: &Tree) -> EccTable {
        let n = t.order();
        let mut sums = vec![vec![0u64; n + 1]; n + 1];
        let mut aug = Augmenter::new(t);
        if n >= 2 {
            let mut value = aug.seed_diameter();
            sums[2][0] = value as u64;
            for k in 3..=n {
                value += aug.step().expect("k <= n").1;
                sums[k][0] = value as u64;
            }
        }
        for l in 1..=n {
            for set in (0..n).combinations(l) {
                let mut value = aug.seed_set(&set);
                if l >= 2 {
                    sums[l][l] += value as u64;
                }
                for k in (l + 1)..=n {
                    value += aug.step().expect("k <= n").1;
                    if k >= 2 {
                        sums[k][l] += value as u64;
                    }
                }
            }
        }
        EccTable { n, sums }
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn sum(&self, p: KLParams) -> u64 {
        self.sums[p.k][p.l]
    }

    pub fn average<F: Scalar>(&self, p: KLParams) -> F {
        F::ratio(self.sums[p.k][p.l], binomial_u64(self.n, p.l))
    }
}

/// Closed form of the average (k,l)-eccentricity of the path on `n > k`
/// vertices. For `(k, l) = (2, 1)` this is the exact value
/// `floor(n(3n-2)/4) / n`.
pub fn closed_form_path<F: Scalar>(n: usize, p: KLParams) -> Result<F> {
    if n <= p.k {
        return Err(Error::BadRange(format!("path closed form needs n > k (n = {n}, k = {})", p.k)));
    }
    let (n64, k64) = (n as u64, p.k as u64);
    Ok(match p.k - p.l {
        0 => F::ratio((k64 - 1) * (n64 + 1), k64 + 1),
        1 if p.k == 2 => F::ratio(n64 * (3 * n64 - 2) / 4, n64),
        1 => {
            let mut total = BigInt::zero();
            for d in (p.k - 2)..n {
                let h = (n - 1 - d).div_ceil(2);
                let pair_term = n * n - n - d * d + d + 2 * h * (n - d - h);
                total += binomial(d as u64 - 1, k64 - 3) * BigInt::from(pair_term / 2);
            }
            big_to_scalar::<F>(&total) / big_to_scalar::<F>(&binomial(n64, k64 - 1))
        }
        _ => F::from_count(n64 - 1),
    })
}

/// The integer `floor((3n-2)/4)` sometimes quoted for the average
/// eccentricity of a path. It disagrees with the exact value for most `n`;
/// kept so the discrepancy can be reported.
pub fn path_average_eccentricity_floor_formula(n: usize) -> u64 {
    (3 * n as u64).saturating_sub(2) / 4
}

/// Closed form of the average (k,l)-eccentricity of the star `K_{1,n-1}`.
pub fn closed_form_star<F: Scalar>(n: usize, p: KLParams) -> Result<F> {
    if p.k > n || n < 2 {
        return Err(Error::BadRange(format!("star closed form needs 2 <= k <= n (n = {n}, k = {})", p.k)));
    }
    let n64 = n as u64;
    if p.k == n {
        return Ok(F::from_count(n64 - 1));
    }
    Ok(F::from_count(p.k as u64) - F::ratio(p.l as u64, n64))
}
