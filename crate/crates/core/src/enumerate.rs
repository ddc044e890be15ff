//! Tree generators.
//!
//! [`FreeTrees`] walks canonical level sequences (rooted-tree successor steps
//! with jumps that skip non-canonical free trees), producing exactly one tree
//! per isomorphism class. [`labeled_trees`] decodes every Prüfer sequence and
//! serves as an independent oracle for the free-tree counts.

use crate::error::{Error, Result};
use crate::tree::Tree;

/// Iterator over the non-isomorphic free trees of order `n`, in a fixed
/// deterministic order.
#[derive(Debug, Clone)]
pub struct FreeTrees {
    n: usize,
    layout: Option<Vec<usize>>,
    single_pending: bool,
}

pub fn free_trees(n: usize) -> FreeTrees {
    let layout = (n >= 2).then(|| {
        // the path rooted at its centre
        let mut l: Vec<usize> = (0..=n / 2).collect();
        l.extend(1..n.div_ceil(2));
        l
    });
    FreeTrees {
        n,
        layout,
        single_pending: n == 1,
    }
}

pub fn free_trees_vec(n: usize) -> Vec<Tree> {
    free_trees(n).collect()
}

impl Iterator for FreeTrees {
    type Item = Tree;

    fn next(&mut self) -> Option<Tree> {
        if self.single_pending {
            self.single_pending = false;
            return Some(Tree::single_vertex());
        }
        let layout = self.layout.take()?;
        let valid = next_free_layout(layout)?;
        let tree = layout_to_tree(&valid);
        self.layout = next_rooted_layout(&valid, None);
        debug_assert_eq!(tree.order(), self.n);
        Some(tree)
    }
}

/// One rooted-tree successor step on a level sequence. With `p = None` the
/// pivot is the last position with level greater than one.
fn next_rooted_layout(prev: &[usize], p: Option<usize>) -> Option<Vec<usize>> {
    let p = p.unwrap_or_else(|| {
        let mut p = prev.len() - 1;
        while prev[p] == 1 {
            p -= 1;
        }
        p
    });
    if p == 0 {
        return None;
    }
    let mut q = p - 1;
    while prev[q] != prev[p] - 1 {
        q -= 1;
    }
    let mut next = prev.to_vec();
    for i in p..next.len() {
        next[i] = next[i - p + q];
    }
    Some(next)
}

/// Splits a level sequence into the first subtree of the root (levels
/// shifted up by one) and the remainder with the root.
fn split_layout(layout: &[usize]) -> (Vec<usize>, Vec<usize>) {
    let m = layout
        .iter()
        .enumerate()
        .skip(1)
        .filter(|&(_, &level)| level == 1)
        .map(|(i, _)| i)
        .nth(1)
        .unwrap_or(layout.len());
    let left = layout[1..m].iter().map(|&x| x - 1).collect();
    let mut rest = vec![0];
    rest.extend_from_slice(&layout[m..]);
    (left, rest)
}

/// Advances `candidate` to the next level sequence that is the canonical
/// representative of a free tree (the root is the centre and the first
/// subtree does not dominate the rest).
fn next_free_layout(mut candidate: Vec<usize>) -> Option<Vec<usize>> {
    loop {
        let (left, rest) = split_layout(&candidate);
        let left_height = left.iter().copied().max().unwrap_or(0);
        let rest_height = rest.iter().copied().max().unwrap_or(0);
        let mut valid = rest_height >= left_height;
        if valid
            && rest_height == left_height
            && (left.len() > rest.len() || (left.len() == rest.len() && left > rest))
        {
            valid = false;
        }
        if valid {
            return Some(candidate);
        }
        let p = left.len();
        let mut next = next_rooted_layout(&candidate, Some(p))?;
        if candidate[p] > 2 {
            let (new_left, _) = split_layout(&next);
            let new_left_height = new_left.iter().copied().max().unwrap_or(0);
            let len = next.len();
            for (offset, level) in (1..=new_left_height + 1).enumerate() {
                next[len - (new_left_height + 1) + offset] = level;
            }
        }
        candidate = next;
    }
}

fn layout_to_tree(layout: &[usize]) -> Tree {
    let n = layout.len();
    let mut last_at_level = vec![0usize; n + 1];
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for (v, &level) in layout.iter().enumerate() {
        if v > 0 {
            edges.push((last_at_level[level - 1], v));
        }
        last_at_level[level] = v;
    }
    Tree::from_edges(n, &edges).expect("level sequences describe trees")
}

/// Decodes a Prüfer sequence over `0..n` (length `n - 2`).
pub fn prufer_decode(n: usize, seq: &[usize]) -> Result<Tree> {
    if n < 2 || seq.len() != n - 2 {
        return Err(Error::BadRange(format!("Prüfer sequence of length {} for n = {n}", seq.len())));
    }
    if let Some(&bad) = seq.iter().find(|&&v| v >= n) {
        return Err(Error::VertexOutOfRange { vertex: bad, n });
    }
    let mut degree = vec![1usize; n];
    for &v in seq {
        degree[v] += 1;
    }
    let mut edges = Vec::with_capacity(n - 1);
    for &v in seq {
        let leaf = (0..n).find(|&u| degree[u] == 1).expect("a leaf always exists");
        edges.push((leaf, v));
        degree[leaf] -= 1;
        degree[v] -= 1;
    }
    let rest: Vec<usize> = (0..n).filter(|&u| degree[u] == 1).collect();
    edges.push((rest[0], rest[1]));
    Tree::from_edges(n, &edges)
}

/// All `n^(n-2)` labelled trees on `n` vertices, `2 <= n <= 9`.
pub fn labeled_trees(n: usize) -> Result<impl Iterator<Item = Tree>> {
    if !(2..=9).contains(&n) {
        return Err(Error::BadRange(format!("labelled enumeration needs 2 <= n <= 9, got {n}")));
    }
    let len = n - 2;
    let total = (n as u64).pow(len as u32);
    Ok((0..total).map(move |mut code| {
        let mut seq = vec![0usize; len];
        for slot in seq.iter_mut().rev() {
            *slot = (code % n as u64) as usize;
            code /= n as u64;
        }
        prufer_decode(n, &seq).expect("every sequence decodes")
    }))
}
