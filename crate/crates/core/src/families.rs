//! Constructors for the extremal tree families and the two dominance orders
//! on their signatures.
//!
//! Labelling conventions are fixed so that generated edge lists are
//! reproducible: paths run `0..n`, stars and starlike trees have their centre
//! at `0` with arms laid out in signature order, and caterpillars number the
//! spine `u_0..u_d` as `0..=d` before the extra leaves (in spine order).

use serde::Serialize;

use crate::error::{Error, Result};
use crate::tree::Tree;

pub fn path(n: usize) -> Result<Tree> {
    if n == 0 {
        return Err(Error::BadRange("path needs n >= 1".into()));
    }
    let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
    Tree::from_edges(n, &edges)
}

pub fn star(n: usize) -> Result<Tree> {
    if n < 2 {
        return Err(Error::BadRange("star needs n >= 2".into()));
    }
    let edges: Vec<_> = (1..n).map(|v| (0, v)).collect();
    Tree::from_edges(n, &edges)
}

/// Arm lengths of a starlike tree, non-increasing, at least two arms.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct StarlikeSignature(Vec<usize>);

impl StarlikeSignature {
    pub fn new(arms: Vec<usize>) -> Result<Self> {
        if arms.len() < 2 {
            return Err(Error::BadSignature("a starlike tree needs at least two arms".into()));
        }
        if arms.contains(&0) {
            return Err(Error::BadSignature("arm lengths must be positive".into()));
        }
        if arms.windows(2).any(|w| w[0] < w[1]) {
            return Err(Error::BadSignature(format!("{arms:?} is not non-increasing")));
        }
        Ok(StarlikeSignature(arms))
    }

    pub fn arms(&self) -> &[usize] {
        &self.0
    }

    /// Order of the tree the signature describes.
    pub fn order(&self) -> usize {
        1 + self.0.iter().sum::<usize>()
    }
}

/// Starlike tree with the given arms. Two arms give a path.
pub fn starlike(sig: &StarlikeSignature) -> Result<Tree> {
    let n = sig.order();
    let mut edges = Vec::with_capacity(n - 1);
    let mut next = 1;
    for &len in sig.arms() {
        let mut prev = 0;
        for _ in 0..len {
            edges.push((prev, next));
            prev = next;
            next += 1;
        }
    }
    Tree::from_edges(n, &edges)
}

/// Arms of the balanced starlike tree `BS(n, p)`.
pub fn balanced_arms(n: usize, p: usize) -> Result<StarlikeSignature> {
    if p < 2 || p + 1 > n {
        return Err(Error::BadRange(format!("balanced starlike needs 2 <= p <= n-1 (n = {n}, p = {p})")));
    }
    let (q, r) = ((n - 1) / p, (n - 1) % p);
    let arms = (0..p).map(|i| if i < r { q + 1 } else { q }).collect();
    StarlikeSignature::new(arms)
}

pub fn balanced_starlike(n: usize, p: usize) -> Result<Tree> {
    starlike(&balanced_arms(n, p)?)
}

/// Arms of the broom `B(n, delta)`: one arm of `n - delta`, the rest single
/// edges.
pub fn broom_arms(n: usize, delta: usize) -> Result<StarlikeSignature> {
    if delta < 3 || delta + 1 > n {
        return Err(Error::BadRange(format!("broom needs 3 <= delta <= n-1 (n = {n}, delta = {delta})")));
    }
    let mut arms = vec![1; delta];
    arms[0] = n - delta;
    StarlikeSignature::new(arms)
}

pub fn broom(n: usize, delta: usize) -> Result<Tree> {
    starlike(&broom_arms(n, delta)?)
}

/// Extra pendant counts `(p_1, ..., p_{d-1})` on a spine of length `d`.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize)]
pub struct CaterpillarSignature {
    d: usize,
    attach: Vec<usize>,
}

impl CaterpillarSignature {
    pub fn new(d: usize, attach: Vec<usize>) -> Result<Self> {
        if d < 2 {
            return Err(Error::BadSignature("caterpillar diameter must be at least 2".into()));
        }
        if attach.len() != d - 1 {
            return Err(Error::BadSignature(format!(
                "diameter {d} needs {} attachment counts, got {}",
                d - 1,
                attach.len()
            )));
        }
        Ok(CaterpillarSignature { d, attach })
    }

    pub fn diameter(&self) -> usize {
        self.d
    }

    pub fn attach(&self) -> &[usize] {
        &self.attach
    }

    pub fn order(&self) -> usize {
        self.d + 1 + self.attach.iter().sum::<usize>()
    }
}

pub fn caterpillar(n: usize, sig: &CaterpillarSignature) -> Result<Tree> {
    if sig.order() != n {
        return Err(Error::BadSignature(format!(
            "attachments sum to {}, expected n - d - 1 = {}",
            sig.order() - sig.d - 1,
            n as isize - sig.d as isize - 1
        )));
    }
    let d = sig.d;
    let mut edges: Vec<_> = (1..=d).map(|v| (v - 1, v)).collect();
    let mut next = d + 1;
    for (i, &count) in sig.attach.iter().enumerate() {
        for _ in 0..count {
            edges.push((i + 1, next));
            next += 1;
        }
    }
    let tree = Tree::from_edges(n, &edges)?;
    let found = tree.diameter();
    if found != d {
        return Err(Error::DiameterChanged { expected: d, found });
    }
    Ok(tree)
}

fn check_caterpillar_range(n: usize, d: usize, s: usize) -> Result<usize> {
    if d < 2 || d + 1 > n {
        return Err(Error::BadRange(format!("need 2 <= d <= n-1 (n = {n}, d = {d})")));
    }
    let extra = n - d - 1;
    if s > extra {
        return Err(Error::BadRange(format!("s = {s} exceeds n - d - 1 = {extra}")));
    }
    Ok(extra)
}

/// Attachment counts of the central caterpillar `T^C_{n,d}(s)`. For even `d`
/// every extra leaf sits at the spine centre and `s` is ignored; `None`
/// selects `s = 0`.
pub fn central_signature(n: usize, d: usize, s: Option<usize>) -> Result<CaterpillarSignature> {
    let s = if d.is_multiple_of(2) { 0 } else { s.unwrap_or(0) };
    let extra = check_caterpillar_range(n, d, s)?;
    let mut attach = vec![0; d - 1];
    if d.is_multiple_of(2) {
        attach[d / 2 - 1] += extra;
    } else {
        attach[d / 2 - 1] += s;
        attach[d / 2] += extra - s;
    }
    CaterpillarSignature::new(d, attach)
}

pub fn central_caterpillar(n: usize, d: usize, s: Option<usize>) -> Result<Tree> {
    caterpillar(n, &central_signature(n, d, s)?)
}

/// Attachment counts of the double comet `D(n, s, n-d-1-s)`: `s` leaves at
/// `u_1`, the rest at `u_{d-1}`.
pub fn double_comet_signature(n: usize, d: usize, s: Option<usize>) -> Result<CaterpillarSignature> {
    let s = s.unwrap_or(0);
    let extra = check_caterpillar_range(n, d, s)?;
    let mut attach = vec![0; d - 1];
    attach[0] += s;
    attach[d - 2] += extra - s;
    CaterpillarSignature::new(d, attach)
}

pub fn double_comet(n: usize, d: usize, s: Option<usize>) -> Result<Tree> {
    caterpillar(n, &double_comet_signature(n, d, s)?)
}

/// `y ≺ x`: equal totals and every proper prefix sum of `x` at least the
/// corresponding prefix sum of `y`.
pub fn starlike_dominates(x: &StarlikeSignature, y: &StarlikeSignature) -> Result<bool> {
    let (x, y) = (x.arms(), y.arms());
    if x.len() != y.len() {
        return Err(Error::LengthMismatch(x.len(), y.len()));
    }
    let (mut sx, mut sy) = (0, 0);
    for i in 0..x.len() {
        sx += x[i];
        sy += y[i];
        if i + 1 < x.len() && sx < sy {
            return Ok(false);
        }
    }
    Ok(sx == sy)
}

/// `x ▷ y`: equal totals, and for every `1 <= j < floor(d/2)` the first `j`
/// counts of `x` from either spine end sum to at least those of `y`.
pub fn caterpillar_dominates(x: &CaterpillarSignature, y: &CaterpillarSignature) -> Result<bool> {
    if x.d != y.d {
        return Err(Error::LengthMismatch(x.attach.len(), y.attach.len()));
    }
    let (a, b) = (&x.attach, &y.attach);
    let last = a.len() - 1;
    let (mut left_x, mut left_y, mut right_x, mut right_y) = (0, 0, 0, 0);
    for j in 1..(x.d / 2) {
        left_x += a[j - 1];
        left_y += b[j - 1];
        right_x += a[last + 1 - j];
        right_y += b[last + 1 - j];
        if left_x < left_y || right_x < right_y {
            return Ok(false);
        }
    }
    Ok(a.iter().sum::<usize>() == b.iter().sum::<usize>())
}

/// All starlike signatures with `p` arms on `n` vertices, in descending
/// lexicographic order.
pub fn starlike_signatures(n: usize, p: usize) -> Vec<StarlikeSignature> {
    fn fill(remaining: usize, parts: usize, cap: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if parts == 0 {
            if remaining == 0 {
                out.push(cur.clone());
            }
            return;
        }
        let hi = cap.min(remaining + 1 - parts);
        let lo = remaining.div_ceil(parts);
        for first in (lo..=hi).rev() {
            cur.push(first);
            fill(remaining - first, parts - 1, first, cur, out);
            cur.pop();
        }
    }
    if p < 2 || n < p + 1 {
        return Vec::new();
    }
    let mut out = Vec::new();
    fill(n - 1, p, n - 1, &mut Vec::new(), &mut out);
    out.into_iter().map(StarlikeSignature).collect()
}

/// All caterpillar signatures of order `n` and diameter `d`, in lexicographic
/// order of the attachment tuple.
pub fn caterpillar_signatures(n: usize, d: usize) -> Vec<CaterpillarSignature> {
    fn fill(remaining: usize, slots: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if slots == 1 {
            cur.push(remaining);
            out.push(cur.clone());
            cur.pop();
            return;
        }
        for first in 0..=remaining {
            cur.push(first);
            fill(remaining - first, slots - 1, cur, out);
            cur.pop();
        }
    }
    if d < 2 || d + 1 > n {
        return Vec::new();
    }
    let mut out = Vec::new();
    fill(n - d - 1, d - 1, &mut Vec::new(), &mut out);
    out.into_iter()
        .map(|attach| CaterpillarSignature { d, attach })
        .collect()
}
