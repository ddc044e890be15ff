//! Immutable free trees on vertices `0..n`.
//!
//! Adjacency lists are kept sorted so that every traversal, tie-break and
//! report derived from a [`Tree`] is independent of edge insertion order.

use std::collections::VecDeque;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A strictly increasing list of vertex ids.
#[derive(Debug, Clone, Default, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct VertexSet(Vec<usize>);

impl VertexSet {
    /// Builds a set from arbitrary ids, rejecting duplicates.
    pub fn new(mut members: Vec<usize>) -> Result<Self> {
        members.sort_unstable();
        if let Some(w) = members.windows(2).find(|w| w[0] == w[1]) {
            return Err(Error::DuplicateVertex(w[0]));
        }
        Ok(VertexSet(members))
    }

    pub fn empty() -> Self {
        VertexSet(Vec::new())
    }

    pub(crate) fn from_sorted(members: Vec<usize>) -> Self {
        debug_assert!(members.windows(2).all(|w| w[0] < w[1]));
        VertexSet(members)
    }

    pub(crate) fn from_mask(mask: &[bool]) -> Self {
        VertexSet(
            mask.iter()
                .enumerate()
                .filter_map(|(v, &m)| m.then_some(v))
                .collect(),
        )
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, v: usize) -> bool {
        self.0.binary_search(&v).is_ok()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.0
    }

    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &VertexSet) -> bool {
        self.0.iter().all(|&v| other.contains(v))
    }

    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        VertexSet(self.iter().filter(|&v| !other.contains(v)).collect())
    }
}

impl FromIterator<usize> for VertexSet {
    /// Collects ids, silently dropping duplicates.
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        let mut members: Vec<usize> = iter.into_iter().collect();
        members.sort_unstable();
        members.dedup();
        VertexSet(members)
    }
}

impl fmt::Display for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, "}}")
    }
}

/// A path given as its vertex sequence; endpoints are `vertices[0]` and the
/// last element.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct TreePath {
    pub start: usize,
    pub end: usize,
    pub vertices: Vec<usize>,
}

impl TreePath {
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() <= 1
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ShapeTag {
    Path,
    Star,
    Starlike,
    Caterpillar,
    Broom,
    General,
}

/// Shape of a tree. Starlike and broom signatures are the arm lengths in
/// non-increasing order; a caterpillar signature is the number of extra
/// leaves at each internal spine vertex, read from the end that gives the
/// lexicographically smaller tuple.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct ShapeClass {
    pub tag: ShapeTag,
    pub signature: Option<Vec<usize>>,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tree {
    adj: Vec<Vec<usize>>,
}

impl Tree {
    /// Validates an edge list on `n` vertices.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Tree> {
        if n == 0 {
            return Err(Error::NotATree("a tree needs at least one vertex".into()));
        }
        if edges.len() != n - 1 {
            return Err(Error::NotATree(format!(
                "{} edges for {} vertices (expected {})",
                edges.len(),
                n,
                n - 1
            )));
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::NotATree(format!("self-loop at {u}")));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        for (u, list) in adj.iter_mut().enumerate() {
            list.sort_unstable();
            if let Some(w) = list.windows(2).find(|w| w[0] == w[1]) {
                return Err(Error::NotATree(format!("duplicate edge {u}-{}", w[0])));
            }
        }
        let tree = Tree { adj };
        if tree.distances_from(0).iter().any(|&d| d == usize::MAX) {
            return Err(Error::NotATree("graph is disconnected".into()));
        }
        Ok(tree)
    }

    pub fn single_vertex() -> Tree {
        Tree {
            adj: vec![Vec::new()],
        }
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn leaves(&self) -> VertexSet {
        VertexSet((0..self.order()).filter(|&v| self.degree(v) == 1).collect())
    }

    pub fn leaf_count(&self) -> usize {
        (0..self.order()).filter(|&v| self.degree(v) == 1).count()
    }

    /// Edges as `(u, v)` with `u < v`, sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.order().saturating_sub(1));
        for (u, list) in self.adj.iter().enumerate() {
            out.extend(list.iter().filter(|&&v| u < v).map(|&v| (u, v)));
        }
        out
    }

    pub fn check_vertex(&self, v: usize) -> Result<()> {
        if v < self.order() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange {
                vertex: v,
                n: self.order(),
            })
        }
    }

    pub fn check_set(&self, set: &VertexSet) -> Result<()> {
        set.iter().try_for_each(|v| self.check_vertex(v))
    }

    /// Hop counts from `v`, by breadth-first search.
    pub fn distances_from(&self, v: usize) -> Vec<usize> {
        let mut dist = vec![usize::MAX; self.order()];
        dist[v] = 0;
        let mut queue = VecDeque::from([v]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if dist[w] == usize::MAX {
                    dist[w] = dist[u] + 1;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// BFS parents toward `root` (`parent[root] == root`).
    pub(crate) fn parents_from(&self, root: usize) -> Vec<usize> {
        let mut parent = vec![usize::MAX; self.order()];
        parent[root] = root;
        let mut queue = VecDeque::from([root]);
        while let Some(u) = queue.pop_front() {
            for &w in &self.adj[u] {
                if parent[w] == usize::MAX {
                    parent[w] = u;
                    queue.push_back(w);
                }
            }
        }
        parent
    }

    pub fn distance(&self, u: usize, v: usize) -> usize {
        self.distances_from(u)[v]
    }

    pub fn path_between(&self, u: usize, v: usize) -> Vec<usize> {
        let parent = self.parents_from(v);
        let mut path = vec![u];
        let mut cur = u;
        while cur != v {
            cur = parent[cur];
            path.push(cur);
        }
        path
    }

    pub fn eccentricity(&self, v: usize) -> usize {
        self.distances_from(v).into_iter().max().unwrap_or(0)
    }

    /// `max { d(v, u) : u in set }`.
    pub fn set_eccentricity(&self, v: usize, set: &VertexSet) -> Result<usize> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        self.check_set(set)?;
        let dist = self.distances_from(v);
        Ok(set.iter().map(|u| dist[u]).max().unwrap_or(0))
    }

    pub fn eccentricities(&self) -> Vec<usize> {
        (0..self.order()).map(|v| self.eccentricity(v)).collect()
    }

    pub fn diameter(&self) -> usize {
        // Double sweep: the farthest vertex from anywhere is a diameter end.
        let first = self.distances_from(0);
        let a = argmax_first(&first);
        self.eccentricity(a)
    }

    pub fn radius(&self) -> usize {
        self.eccentricities().into_iter().min().unwrap_or(0)
    }

    /// The endpoints of one diametrical path, chosen by a double sweep with
    /// smallest-id tie-breaking.
    pub fn diametrical_pair(&self) -> (usize, usize) {
        let a = argmax_first(&self.distances_from(0));
        let b = argmax_first(&self.distances_from(a));
        (a, b)
    }

    /// Every path of length `diameter`, once per unordered endpoint pair,
    /// smaller endpoint first.
    pub fn diametrical_paths(&self) -> Vec<TreePath> {
        let diam = self.diameter();
        let mut out = Vec::new();
        if self.order() == 1 {
            return vec![TreePath {
                start: 0,
                end: 0,
                vertices: vec![0],
            }];
        }
        for u in 0..self.order() {
            if self.degree(u) != 1 {
                continue;
            }
            let dist = self.distances_from(u);
            for v in (u + 1)..self.order() {
                if dist[v] == diam {
                    out.push(TreePath {
                        start: u,
                        end: v,
                        vertices: self.path_between(u, v),
                    });
                }
            }
        }
        out
    }

    pub fn diametrical_path_count(&self) -> usize {
        if self.order() == 1 {
            return 1;
        }
        let diam = self.diameter();
        let leaves = self.leaves();
        leaves
            .iter()
            .map(|u| {
                let dist = self.distances_from(u);
                leaves.iter().filter(|&v| v > u && dist[v] == diam).count()
            })
            .sum()
    }

    /// Vertices of the unique minimal subtree containing `set`, found by
    /// pruning leaves that are not in `set`.
    pub fn spanning_subtree(&self, set: &VertexSet) -> Result<VertexSet> {
        if set.is_empty() {
            return Err(Error::EmptySet);
        }
        self.check_set(set)?;
        let mut keep = vec![true; self.order()];
        self.prune_into(set.as_slice(), &mut keep);
        Ok(VertexSet::from_mask(&keep))
    }

    /// Clears `keep[v]` for every vertex outside the minimal subtree spanning
    /// `terminals`; `keep` must start all true.
    pub(crate) fn prune_into(&self, terminals: &[usize], keep: &mut [bool]) {
        let n = self.order();
        let mut terminal = vec![false; n];
        for &v in terminals {
            terminal[v] = true;
        }
        let mut deg: Vec<usize> = self.adj.iter().map(Vec::len).collect();
        let mut stack: Vec<usize> = (0..n).filter(|&v| deg[v] <= 1 && !terminal[v]).collect();
        while let Some(v) = stack.pop() {
            if !keep[v] {
                continue;
            }
            keep[v] = false;
            for &w in &self.adj[v] {
                if keep[w] {
                    deg[w] -= 1;
                    if deg[w] <= 1 && !terminal[w] {
                        stack.push(w);
                    }
                }
            }
        }
    }

    /// One or two centroid vertices, ascending.
    pub fn centroids(&self) -> Vec<usize> {
        let n = self.order();
        let parent = self.parents_from(0);
        let order = self.bfs_order(0);
        let mut size = vec![1usize; n];
        for &v in order.iter().rev() {
            if v != 0 {
                size[parent[v]] += size[v];
            }
        }
        let mut best = Vec::new();
        let mut best_weight = usize::MAX;
        for v in 0..n {
            let mut heaviest = n - size[v];
            for &w in &self.adj[v] {
                if parent[w] == v && w != v {
                    heaviest = heaviest.max(size[w]);
                }
            }
            match heaviest.cmp(&best_weight) {
                std::cmp::Ordering::Less => {
                    best_weight = heaviest;
                    best = vec![v];
                }
                std::cmp::Ordering::Equal => best.push(v),
                std::cmp::Ordering::Greater => {}
            }
        }
        best
    }

    pub(crate) fn bfs_order(&self, root: usize) -> Vec<usize> {
        let mut seen = vec![false; self.order()];
        seen[root] = true;
        let mut order = vec![root];
        let mut i = 0;
        while i < order.len() {
            let u = order[i];
            for &w in &self.adj[u] {
                if !seen[w] {
                    seen[w] = true;
                    order.push(w);
                }
            }
            i += 1;
        }
        order
    }

    /// AHU parenthesis encoding of the tree rooted at `root`.
    pub fn rooted_code(&self, root: usize) -> String {
        let parent = self.parents_from(root);
        let order = self.bfs_order(root);
        let mut codes: Vec<String> = vec![String::new(); self.order()];
        for &v in order.iter().rev() {
            let mut children: Vec<String> = self.adj[v]
                .iter()
                .filter(|&&w| parent[w] == v && w != v)
                .map(|&w| std::mem::take(&mut codes[w]))
                .collect();
            children.sort_unstable();
            let mut code = String::with_capacity(2 + children.iter().map(String::len).sum::<usize>());
            code.push('(');
            for c in children {
                code.push_str(&c);
            }
            code.push(')');
            codes[v] = code;
        }
        std::mem::take(&mut codes[root])
    }

    /// Isomorphism-invariant code: the rooted encoding at the centroid, or the
    /// smaller of the two encodings when there are two centroids.
    pub fn canonical_code(&self) -> String {
        self.centroids()
            .into_iter()
            .map(|c| self.rooted_code(c))
            .min()
            .expect("every tree has a centroid")
    }

    pub fn is_isomorphic(&self, other: &Tree) -> bool {
        self.order() == other.order() && self.canonical_code() == other.canonical_code()
    }

    pub fn is_path(&self) -> bool {
        self.max_degree() <= 2
    }

    pub fn is_star(&self) -> bool {
        let n = self.order();
        n >= 2 && self.max_degree() == n - 1
    }

    pub fn classify_shape(&self) -> ShapeClass {
        let n = self.order();
        if self.is_path() {
            return ShapeClass {
                tag: ShapeTag::Path,
                signature: None,
            };
        }
        if self.is_star() {
            return ShapeClass {
                tag: ShapeTag::Star,
                signature: None,
            };
        }
        let branching: Vec<usize> = (0..n).filter(|&v| self.degree(v) >= 3).collect();
        if let [center] = branching[..] {
            let mut arms: Vec<usize> = self.adj[center]
                .iter()
                .map(|&w| self.arm_length(center, w).expect("starlike arms are paths"))
                .collect();
            arms.sort_unstable_by(|a, b| b.cmp(a));
            let tag = if arms.iter().filter(|&&a| a > 1).count() <= 1 {
                ShapeTag::Broom
            } else {
                ShapeTag::Starlike
            };
            return ShapeClass {
                tag,
                signature: Some(arms),
            };
        }
        if let Some(sig) = self.caterpillar_signature() {
            return ShapeClass {
                tag: ShapeTag::Caterpillar,
                signature: Some(sig),
            };
        }
        ShapeClass {
            tag: ShapeTag::General,
            signature: None,
        }
    }

    /// Length of the pendant path leaving `from` through `first`, if the walk
    /// only meets degree-2 vertices before reaching a leaf.
    pub(crate) fn arm_length(&self, from: usize, first: usize) -> Option<usize> {
        self.arm_vertices(from, first).map(|arm| arm.len())
    }

    /// Vertices of the pendant path from `from` through `first` (excluding
    /// `from`), ending at a leaf.
    pub(crate) fn arm_vertices(&self, from: usize, first: usize) -> Option<Vec<usize>> {
        let mut arm = vec![first];
        let (mut prev, mut cur) = (from, first);
        loop {
            match self.degree(cur) {
                1 => return Some(arm),
                2 => {
                    let next = if self.adj[cur][0] == prev {
                        self.adj[cur][1]
                    } else {
                        self.adj[cur][0]
                    };
                    prev = cur;
                    cur = next;
                    arm.push(cur);
                }
                _ => return None,
            }
        }
    }

    /// Attachment counts along the spine if the non-leaf vertices form a path.
    fn caterpillar_signature(&self) -> Option<Vec<usize>> {
        let n = self.order();
        let internal: Vec<usize> = (0..n).filter(|&v| self.degree(v) >= 2).collect();
        let is_internal = |v: usize| self.degree(v) >= 2;
        let mut ends = Vec::new();
        for &v in &internal {
            let inner = self.adj[v].iter().filter(|&&w| is_internal(w)).count();
            if inner > 2 {
                return None;
            }
            if inner <= 1 {
                ends.push(v);
            }
        }
        let start = *ends.first()?;
        let mut spine = vec![start];
        let mut prev = usize::MAX;
        let mut cur = start;
        while let Some(&next) = self.adj[cur]
            .iter()
            .find(|&&w| is_internal(w) && w != prev)
        {
            prev = cur;
            cur = next;
            spine.push(cur);
        }
        if spine.len() != internal.len() {
            return None;
        }
        // u_1..u_{d-1}; each has two neighbours on the full diametrical path
        let counts: Vec<usize> = spine.iter().map(|&v| self.degree(v) - 2).collect();
        let reversed: Vec<usize> = counts.iter().rev().copied().collect();
        Some(counts.min(reversed))
    }

    /// Renders the edge-list text format (one `u v` line per edge).
    pub fn to_edge_list(&self) -> String {
        let mut out = String::new();
        if self.order() == 1 {
            out.push_str("# single vertex\n");
        }
        for (u, v) in self.edges() {
            out.push_str(&format!("{u} {v}\n"));
        }
        out
    }

    /// Parses the edge-list text format. `n` is one more than the largest id;
    /// a file with no edges describes the single-vertex tree.
    pub fn parse_edge_list(text: &str) -> Result<Tree> {
        let mut edges = Vec::new();
        let mut max_id = 0usize;
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let parts: Vec<&str> = line.split_whitespace().collect();
            if parts.len() != 2 {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected two vertex ids, found {:?}", line),
                });
            }
            let mut ids = [0usize; 2];
            for (slot, part) in ids.iter_mut().zip(&parts) {
                *slot = part.parse().map_err(|_| Error::Parse {
                    line: i + 1,
                    msg: format!("not a nonnegative integer: {part:?}"),
                })?;
            }
            max_id = max_id.max(ids[0]).max(ids[1]);
            edges.push((ids[0], ids[1]));
        }
        if edges.is_empty() {
            return Ok(Tree::single_vertex());
        }
        Tree::from_edges(max_id + 1, &edges)
    }

    /// Rebuilds the tree after replacing edges; used by the rewrite rules.
    pub(crate) fn rewire(&self, remove: &[(usize, usize)], add: &[(usize, usize)]) -> Result<Tree> {
        let norm = |(a, b): (usize, usize)| (a.min(b), a.max(b));
        let removed: Vec<(usize, usize)> = remove.iter().copied().map(norm).collect();
        let mut edges: Vec<(usize, usize)> = self
            .edges()
            .into_iter()
            .filter(|e| !removed.contains(e))
            .collect();
        if edges.len() + removed.len() != self.order() - 1 {
            return Err(Error::NotATree("rewire removes a missing edge".into()));
        }
        edges.extend(add.iter().copied().map(norm));
        Tree::from_edges(self.order(), &edges)
    }
}

fn argmax_first(values: &[usize]) -> usize {
    let mut best = 0;
    for (i, &v) in values.iter().enumerate() {
        if v > values[best] {
            best = i;
        }
    }
    best
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p5() -> Tree {
        Tree::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap()
    }

    fn k13() -> Tree {
        Tree::from_edges(4, &[(0, 1), (1, 2), (1, 3)]).unwrap()
    }

    fn set(v: &[usize]) -> VertexSet {
        VertexSet::new(v.to_vec()).unwrap()
    }

    #[test]
    fn build_small_trees() {
        let p2 = Tree::from_edges(2, &[(0, 1)]).unwrap();
        assert_eq!(p2.order(), 2);
        assert_eq!(k13().max_degree(), 3);
    }

    #[test]
    fn reject_malformed_edge_lists() {
        let cycle = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 0)]);
        assert!(matches!(cycle, Err(Error::NotATree(_))));
        let dup = Tree::from_edges(3, &[(0, 1), (1, 0)]);
        assert!(matches!(dup, Err(Error::NotATree(_))));
        let loop_ = Tree::from_edges(3, &[(0, 0), (1, 2)]);
        assert!(matches!(loop_, Err(Error::NotATree(_))));
        let disconnected = Tree::from_edges(4, &[(0, 1), (0, 1), (2, 3)]);
        assert!(disconnected.is_err());
        let range = Tree::from_edges(2, &[(0, 2)]);
        assert!(matches!(range, Err(Error::VertexOutOfRange { .. })));
        let count = Tree::from_edges(3, &[(0, 1)]);
        assert!(matches!(count, Err(Error::NotATree(_))));
    }

    #[test]
    fn distances() {
        assert_eq!(p5().distances_from(0), vec![0, 1, 2, 3, 4]);
        assert_eq!(p5().distances_from(2), vec![2, 1, 0, 1, 2]);
        assert_eq!(k13().distances_from(1), vec![1, 0, 1, 1]);
    }

    #[test]
    fn eccentricities() {
        assert_eq!(p5().eccentricity(0), 4);
        assert_eq!(p5().eccentricity(2), 2);
        assert_eq!(k13().eccentricity(1), 1);
        assert_eq!(p5().set_eccentricity(0, &set(&[2, 3, 4])), Ok(4));
        assert_eq!(p5().set_eccentricity(2, &set(&[2])), Ok(0));
        assert_eq!(k13().set_eccentricity(0, &set(&[2, 3])), Ok(2));
        assert_eq!(
            p5().set_eccentricity(0, &VertexSet::empty()),
            Err(Error::EmptySet)
        );
    }

    #[test]
    fn diameter_radius_paths() {
        assert_eq!(p5().diameter(), 4);
        assert_eq!(p5().radius(), 2);
        assert_eq!(p5().diametrical_paths().len(), 1);
        assert_eq!(p5().diametrical_paths()[0].vertices, vec![0, 1, 2, 3, 4]);
        assert_eq!(k13().diameter(), 2);
        assert_eq!(k13().radius(), 1);
        let paths = k13().diametrical_paths();
        assert_eq!(paths.len(), 3);
        assert!(paths.iter().all(|p| p.start < p.end && p.len() == 2));
        assert_eq!(k13().diametrical_path_count(), 3);
    }

    #[test]
    fn diametrical_paths_match_pair_brute_force() {
        let t = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (2, 6)]).unwrap();
        let diam = t.diameter();
        let mut brute = 0;
        for u in 0..7 {
            for v in (u + 1)..7 {
                if t.distance(u, v) == diam {
                    brute += 1;
                }
            }
        }
        assert_eq!(t.diametrical_paths().len(), brute);
        assert_eq!(t.diametrical_path_count(), brute);
    }

    #[test]
    fn spanning_subtrees() {
        assert_eq!(p5().spanning_subtree(&set(&[0, 4])).unwrap(), set(&[0, 1, 2, 3, 4]));
        assert_eq!(k13().spanning_subtree(&set(&[0, 2, 3])).unwrap(), set(&[0, 1, 2, 3]));
        assert_eq!(p5().spanning_subtree(&set(&[1, 3])).unwrap(), set(&[1, 2, 3]));
        assert_eq!(p5().spanning_subtree(&set(&[3])).unwrap(), set(&[3]));
        assert_eq!(p5().spanning_subtree(&VertexSet::empty()), Err(Error::EmptySet));
    }

    #[test]
    fn leaves_and_degrees() {
        assert_eq!(p5().leaves(), set(&[0, 4]));
        assert_eq!(p5().max_degree(), 2);
        assert_eq!(k13().leaves().len(), 3);
        assert_eq!(k13().degree(1), 3);
    }

    #[test]
    fn canonical_codes() {
        let relabeled = Tree::from_edges(4, &[(3, 0), (3, 1), (3, 2)]).unwrap();
        assert_eq!(k13().canonical_code(), relabeled.canonical_code());
        let p4 = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_ne!(p4.canonical_code(), k13().canonical_code());
        let p4b = Tree::from_edges(4, &[(2, 0), (0, 3), (3, 1)]).unwrap();
        assert_eq!(p4.canonical_code(), p4b.canonical_code());
        assert_eq!(Tree::single_vertex().canonical_code(), "()");
    }

    #[test]
    fn centroid_of_even_path_is_two_vertices() {
        let p4 = Tree::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(p4.centroids(), vec![1, 2]);
        assert_eq!(p5().centroids(), vec![2]);
    }

    #[test]
    fn shape_classification() {
        let p7 = Tree::from_edges(7, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 6)]).unwrap();
        assert_eq!(p7.classify_shape().tag, ShapeTag::Path);
        assert_eq!(k13().classify_shape().tag, ShapeTag::Star);
        // B(9,6): arm of 3 plus five single leaves
        let broom = Tree::from_edges(
            9,
            &[(0, 1), (1, 2), (2, 3), (0, 4), (0, 5), (0, 6), (0, 7), (0, 8)],
        )
        .unwrap();
        let shape = broom.classify_shape();
        assert_eq!(shape.tag, ShapeTag::Broom);
        assert_eq!(shape.signature, Some(vec![3, 1, 1, 1, 1, 1]));
        assert_eq!(broom.diameter(), 4);
        let caterpillar = Tree::from_edges(
            10,
            &[(0, 1), (1, 2), (2, 3), (1, 4), (4, 5), (4, 6), (6, 7), (2, 8), (8, 9)],
        )
        .unwrap();
        assert_eq!(caterpillar.classify_shape().tag, ShapeTag::Caterpillar);
        let general = Tree::from_edges(
            9,
            &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6), (4, 7), (4, 8)],
        )
        .unwrap();
        assert_eq!(general.classify_shape().tag, ShapeTag::General);
    }

    #[test]
    fn edge_list_round_trip() {
        let text = "# a star\n0 1\n\n1 2\n 1   3 \n";
        let t = Tree::parse_edge_list(text).unwrap();
        assert_eq!(t, k13());
        assert_eq!(Tree::parse_edge_list(&t.to_edge_list()).unwrap(), t);
        assert!(matches!(
            Tree::parse_edge_list("0 1\n1 x\n"),
            Err(Error::Parse { line: 2, .. })
        ));
        assert!(Tree::parse_edge_list("0 1\n1 2\n2 0\n").is_err());
        assert_eq!(Tree::parse_edge_list("# nothing\n").unwrap().order(), 1);
    }
}
