//! Tree rewrites that move eccentricity mass around.
//!
//! A [`SigmaForm`] cuts a tree into a root part `Y` at `v0`, a bare path
//! `v0 .. vs` whose internal vertices have degree two, and two groups of
//! branches `X` and `Z` at `vs`. The forward rewrite moves `Z` from `vs` to
//! `v0`; the inverse rewrite moves it back. A [`PQSite`] is a vertex with two
//! pendant arms, and the (p,q) rewrite shortens one arm by a vertex and
//! lengthens the other.

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize, Serializer};

use crate::error::{Error, Result};
use crate::metrics::{avg_steiner_kl_ecc, KLParams};
use crate::scalar::serialize_ratio;
use crate::tree::Tree;
use crate::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SigmaVariant {
    Plain,
    Diametrical,
    Leaf,
    Degree,
}

impl SigmaVariant {
    pub const ALL: [SigmaVariant; 4] = [
        SigmaVariant::Plain,
        SigmaVariant::Diametrical,
        SigmaVariant::Leaf,
        SigmaVariant::Degree,
    ];

    pub fn short_name(self) -> &'static str {
        match self {
            SigmaVariant::Plain => "plain",
            SigmaVariant::Diametrical => "d",
            SigmaVariant::Leaf => "l",
            SigmaVariant::Degree => "delta",
        }
    }
}

impl FromStr for SigmaVariant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "plain" => Ok(SigmaVariant::Plain),
            "d" | "diametrical" => Ok(SigmaVariant::Diametrical),
            "l" | "leaf" => Ok(SigmaVariant::Leaf),
            "delta" | "degree" => Ok(SigmaVariant::Degree),
            other => Err(Error::BadRange(format!("unknown sigma variant `{other}`"))),
        }
    }
}

/// Whether `Z` currently hangs at `vs` (forward) or at `v0` (inverse).
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Forward,
    Inverse,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Part {
    Y,
    P,
    X,
    Z,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SigmaForm {
    tree: Tree,
    direction: Direction,
    v0: usize,
    vs: usize,
    path: Vec<usize>,
    z_roots: Vec<usize>,
    part: Vec<Part>,
    variant: SigmaVariant,
    relaxed: bool,
    eps_y: usize,
    eps_x: usize,
    eps_z: usize,
    size_y: usize,
    size_x: usize,
}

/// BFS from `start` that never enters a vertex in `blocked`; returns
/// `(vertex, distance)` pairs including `start`.
fn region(t: &Tree, start: usize, blocked: &[usize]) -> Vec<(usize, usize)> {
    let mut seen = vec![false; t.order()];
    seen[start] = true;
    for &b in blocked {
        seen[b] = true;
    }
    let mut out = vec![(start, 0)];
    let mut queue = VecDeque::from([(start, 0)]);
    while let Some((v, d)) = queue.pop_front() {
        for &w in t.neighbors(v) {
            if !seen[w] {
                seen[w] = true;
                out.push((w, d + 1));
                queue.push_back((w, d + 1));
            }
        }
    }
    out
}

fn depth(cells: &[(usize, usize)]) -> usize {
    cells.iter().map(|&(_, d)| d).max().unwrap_or(0)
}

impl SigmaForm {
    /// Builds the decomposition for `v0`, `vs` and the branch roots of `Z`
    /// at the anchor (`vs` when forward, `v0` when inverse). Only the
    /// structure is checked here; see [`SigmaForm::validate`].
    pub fn new(
        tree: &Tree,
        direction: Direction,
        v0: usize,
        vs: usize,
        z_roots: &[usize],
        variant: SigmaVariant,
        relaxed: bool,
    ) -> Result<SigmaForm> {
        tree.check_vertex(v0)?;
        tree.check_vertex(vs)?;
        if v0 == vs {
            return Err(Error::InvalidForm("v0 and vs coincide".into()));
        }
        let path = tree.path_between(v0, vs);
        let s = path.len() - 1;
        if path[1..s].iter().any(|&v| tree.degree(v) != 2) {
            return Err(Error::InvalidForm(format!(
                "the path {v0}..{vs} has an internal vertex of degree other than 2"
            )));
        }
        let (anchor, anchor_inner) = match direction {
            Direction::Forward => (vs, path[s - 1]),
            Direction::Inverse => (v0, path[1]),
        };
        let z_roots: Vec<usize> = z_roots.iter().copied().collect::<BTreeSet<_>>().into_iter().collect();
        if z_roots.is_empty() {
            return Err(Error::InvalidForm("Z is empty".into()));
        }
        for &r in &z_roots {
            if r == anchor_inner || !tree.neighbors(anchor).contains(&r) {
                return Err(Error::InvalidForm(format!("{r} does not root a branch at {anchor}")));
            }
        }

        let mut y_blocked = vec![path[1]];
        let mut x_blocked = vec![path[s - 1]];
        match direction {
            Direction::Forward => x_blocked.extend_from_slice(&z_roots),
            Direction::Inverse => y_blocked.extend_from_slice(&z_roots),
        }
        let y = region(tree, v0, &y_blocked);
        let x = region(tree, vs, &x_blocked);
        let z_blocked: Vec<usize> = tree
            .neighbors(anchor)
            .iter()
            .copied()
            .filter(|w| !z_roots.contains(w))
            .collect();
        let z = region(tree, anchor, &z_blocked);

        let mut part = vec![Part::P; tree.order()];
        for &(v, _) in &y {
            part[v] = Part::Y;
        }
        for &(v, _) in &x {
            part[v] = Part::X;
        }
        for &(v, _) in &z[1..] {
            part[v] = Part::Z;
        }
        Ok(SigmaForm {
            tree: tree.clone(),
            direction,
            v0,
            vs,
            path,
            z_roots,
            part,
            variant,
            relaxed,
            eps_y: depth(&y),
            eps_x: depth(&x),
            eps_z: depth(&z),
            size_y: y.len(),
            size_x: x.len(),
        })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn v0(&self) -> usize {
        self.v0
    }

    pub fn vs(&self) -> usize {
        self.vs
    }

    /// `v0 = path[0], .., path[s] = vs`.
    pub fn path_vertices(&self) -> &[usize] {
        &self.path
    }

    pub fn z_roots(&self) -> &[usize] {
        &self.z_roots
    }

    pub fn part(&self, v: usize) -> Part {
        self.part[v]
    }

    pub fn parts(&self) -> &[Part] {
        &self.part
    }

    pub fn variant(&self) -> SigmaVariant {
        self.variant
    }

    pub fn relaxed(&self) -> bool {
        self.relaxed
    }

    /// Eccentricity of `v0` inside `Y`.
    pub fn eps_y(&self) -> usize {
        self.eps_y
    }

    /// Eccentricity of `vs` inside `X`.
    pub fn eps_x(&self) -> usize {
        self.eps_x
    }

    /// Depth of `Z` below its anchor.
    pub fn eps_z(&self) -> usize {
        self.eps_z
    }

    pub fn y_size(&self) -> usize {
        self.size_y
    }

    pub fn x_size(&self) -> usize {
        self.size_x
    }

    /// Branch roots at `vs` that stay behind (forward) or sit there already
    /// (inverse).
    fn x_roots(&self) -> Vec<usize> {
        let inner = self.path[self.path.len() - 2];
        self.tree
            .neighbors(self.vs)
            .iter()
            .copied()
            .filter(|&w| w != inner && self.part[w] == Part::X)
            .collect()
    }

    /// Whether `X ∪ {vs}` is `{vs}` or a path ending at `vs`.
    fn x_is_pendant_path(&self) -> bool {
        match self.x_roots().as_slice() {
            [] => true,
            [r] => self.tree.arm_vertices(self.vs, *r).is_some(),
            _ => false,
        }
    }

    fn diametrical_ok(&self) -> bool {
        let far_side = |v: usize| match self.direction {
            Direction::Forward => matches!(self.part[v], Part::X | Part::Z),
            Direction::Inverse => self.part[v] != Part::Y,
        };
        self.tree.diametrical_paths().iter().any(|p| {
            (self.part[p.start] == Part::Y && far_side(p.end))
                || (self.part[p.end] == Part::Y && far_side(p.start))
        })
    }

    /// Whether the restriction of `variant` holds, ignoring the form's own
    /// variant tag.
    pub fn satisfies(&self, variant: SigmaVariant) -> bool {
        match variant {
            SigmaVariant::Plain => true,
            SigmaVariant::Leaf => self.size_x > 1,
            SigmaVariant::Degree => self.x_is_pendant_path(),
            SigmaVariant::Diametrical => self.diametrical_ok(),
        }
    }

    /// `|Y| >= |X|`.
    pub fn size_condition_holds(&self) -> bool {
        self.size_y >= self.size_x
    }

    /// Checks the eccentricity condition, the size condition (unless
    /// relaxed) and the variant restriction.
    pub fn validate(&self) -> Result<()> {
        if self.eps_y < self.eps_x.max(self.eps_z) {
            return Err(Error::InvalidForm(format!(
                "eccentricity condition fails: eps_Y(v0) = {} < max(eps_X(vs) = {}, eps_Z = {})",
                self.eps_y, self.eps_x, self.eps_z
            )));
        }
        if !self.relaxed && self.size_y < self.size_x {
            return Err(Error::InvalidForm(format!(
                "size condition fails: |Y| = {} < |X| = {}",
                self.size_y, self.size_x
            )));
        }
        if !self.satisfies(self.variant) {
            return Err(Error::InvalidForm(format!(
                "restriction of the {:?} variant fails",
                self.variant
            )));
        }
        Ok(())
    }

    pub fn is_valid(&self) -> bool {
        self.validate().is_ok()
    }

    fn moved_edges(&self) -> (Vec<(usize, usize)>, Vec<(usize, usize)>) {
        let (from, to) = match self.direction {
            Direction::Forward => (self.vs, self.v0),
            Direction::Inverse => (self.v0, self.vs),
        };
        let remove = self.z_roots.iter().map(|&r| (from, r)).collect();
        let add = self.z_roots.iter().map(|&r| (to, r)).collect();
        (remove, add)
    }
}

impl fmt::Display for SigmaForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let arrow = match self.direction {
            Direction::Forward => "sigma",
            Direction::Inverse => "sigma-inv",
        };
        let roots: Vec<String> = self.z_roots.iter().map(|r| r.to_string()).collect();
        write!(
            f,
            "{arrow}[{}] v0={} vs={} s={} Z-roots={{{}}} |Y|={} |X|={} eps=({},{},{})",
            self.variant.short_name(),
            self.v0,
            self.vs,
            self.path.len() - 1,
            roots.join(","),
            self.size_y,
            self.size_x,
            self.eps_y,
            self.eps_x,
            self.eps_z
        )?;
        if self.relaxed {
            write!(f, " relaxed")?;
        }
        Ok(())
    }
}

/// Vertices reachable from `v0` along paths whose internal vertices have
/// degree two, in increasing order.
fn path_partners(t: &Tree, v0: usize) -> Vec<usize> {
    let mut out = Vec::new();
    for &first in t.neighbors(v0) {
        let (mut prev, mut cur) = (v0, first);
        loop {
            out.push(cur);
            if t.degree(cur) != 2 {
                break;
            }
            let next = t.neighbors(cur).iter().copied().find(|&w| w != prev).expect("degree two");
            prev = cur;
            cur = next;
        }
    }
    out.sort_unstable();
    out
}

/// Nonempty subsets of `items`, sorted lexicographically.
fn nonempty_subsets(items: &[usize]) -> Vec<Vec<usize>> {
    let m = items.len();
    let mut out: Vec<Vec<usize>> = (1u64..(1u64 << m))
        .map(|mask| {
            (0..m)
                .filter(|&i| mask >> i & 1 == 1)
                .map(|i| items[i])
                .collect()
        })
        .collect();
    out.sort();
    out
}

fn find_forms(t: &Tree, direction: Direction, variant: SigmaVariant, relaxed: bool) -> Vec<SigmaForm> {
    let mut out = Vec::new();
    for v0 in 0..t.order() {
        for vs in path_partners(t, v0) {
            let path = t.path_between(v0, vs);
            let s = path.len() - 1;
            let (anchor, inner) = match direction {
                Direction::Forward => (vs, path[s - 1]),
                Direction::Inverse => (v0, path[1]),
            };
            let mut branches: Vec<usize> =
                t.neighbors(anchor).iter().copied().filter(|&w| w != inner).collect();
            branches.sort_unstable();
            if branches.is_empty() {
                continue;
            }
            if direction == Direction::Forward {
                // every branch at vs ends up in X or Z, so each must fit under eps_Y
                let eps_y = depth(&region(t, v0, &[path[1]]));
                let too_deep = branches
                    .iter()
                    .any(|&r| 1 + depth(&region(t, r, &[vs])) > eps_y);
                if too_deep {
                    continue;
                }
            }
            for z in nonempty_subsets(&branches) {
                let form = SigmaForm::new(t, direction, v0, vs, &z, variant, relaxed)
                    .expect("enumerated decompositions are well formed");
                if form.is_valid() {
                    out.push(form);
                }
            }
        }
    }
    out
}

/// All valid forward forms of `t` for the variant, ordered by
/// `(v0, vs, Z roots)`.
pub fn find_sigma_forms(t: &Tree, variant: SigmaVariant, relaxed: bool) -> Vec<SigmaForm> {
    find_forms(t, Direction::Forward, variant, relaxed)
}

/// All valid inverse forms of `t`: `Z` hangs at `v0` and moving it to `vs`
/// undoes a forward rewrite.
pub fn find_sigma_inverse_forms(t: &Tree, variant: SigmaVariant, relaxed: bool) -> Vec<SigmaForm> {
    find_forms(t, Direction::Inverse, variant, relaxed)
}

/// Moves `Z` from `vs` to `v0`.
pub fn apply_sigma(f: &SigmaForm) -> Result<Tree> {
    if f.direction != Direction::Forward {
        return Err(Error::InvalidForm("expected a forward form".into()));
    }
    f.validate()?;
    let (remove, add) = f.moved_edges();
    f.tree.rewire(&remove, &add)
}

/// Moves `Z` from `v0` to `vs`.
pub fn apply_sigma_inverse(f: &SigmaForm) -> Result<Tree> {
    if f.direction != Direction::Inverse {
        return Err(Error::InvalidForm("expected an inverse form".into()));
    }
    f.validate()?;
    let (remove, add) = f.moved_edges();
    f.tree.rewire(&remove, &add)
}

/// A vertex `w` with two pendant arms. Arms list their vertices outward from
/// `w`, excluding `w`, and end at a leaf.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PQSite {
    tree: Tree,
    w: usize,
    arm_p: Vec<usize>,
    arm_q: Vec<usize>,
    base_nontrivial: bool,
}

impl PQSite {
    /// The site at `w` whose arms start at `first_p` and `first_q`.
    pub fn new(tree: &Tree, w: usize, first_p: usize, first_q: usize) -> Result<PQSite> {
        tree.check_vertex(w)?;
        if first_p == first_q {
            return Err(Error::InvalidSite("the two arms coincide".into()));
        }
        let arm = |first: usize| {
            if !tree.neighbors(w).contains(&first) {
                return Err(Error::InvalidSite(format!("{first} is not adjacent to {w}")));
            }
            tree.arm_vertices(w, first)
                .ok_or_else(|| Error::InvalidSite(format!("no pendant path from {w} through {first}")))
        };
        let arm_p = arm(first_p)?;
        let arm_q = arm(first_q)?;
        Ok(PQSite {
            tree: tree.clone(),
            w,
            base_nontrivial: tree.degree(w) > 2,
            arm_p,
            arm_q,
        })
    }

    pub fn tree(&self) -> &Tree {
        &self.tree
    }

    pub fn w(&self) -> usize {
        self.w
    }

    pub fn arm_p(&self) -> &[usize] {
        &self.arm_p
    }

    pub fn arm_q(&self) -> &[usize] {
        &self.arm_q
    }

    pub fn p(&self) -> usize {
        self.arm_p.len()
    }

    pub fn q(&self) -> usize {
        self.arm_q.len()
    }

    /// `w` has a neighbour outside both arms.
    pub fn base_nontrivial(&self) -> bool {
        self.base_nontrivial
    }

    /// The same site with the roles of the arms exchanged.
    pub fn swapped(&self) -> PQSite {
        PQSite {
            arm_p: self.arm_q.clone(),
            arm_q: self.arm_p.clone(),
            ..self.clone()
        }
    }
}

impl fmt::Display for PQSite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "pq w={} p={} q={} arm_p={:?} arm_q={:?}{}",
            self.w,
            self.p(),
            self.q(),
            self.arm_p,
            self.arm_q,
            if self.base_nontrivial { "" } else { " trivial-base" }
        )
    }
}

/// Every vertex with at least two pendant arms, with each unordered pair of
/// its arms. Degree-two vertices only qualify when they are centres, so a
/// path contributes the sites at its centre(s).
pub fn find_pq_sites(t: &Tree) -> Vec<PQSite> {
    let radius = t.radius();
    let mut out = Vec::new();
    for w in 0..t.order() {
        let deg = t.degree(w);
        if deg < 2 || (deg == 2 && t.eccentricity(w) != radius) {
            continue;
        }
        let mut firsts: Vec<usize> = t
            .neighbors(w)
            .iter()
            .copied()
            .filter(|&u| t.arm_vertices(w, u).is_some())
            .collect();
        firsts.sort_unstable();
        for (i, &a) in firsts.iter().enumerate() {
            for &b in &firsts[i + 1..] {
                out.push(PQSite::new(t, w, a, b).expect("arms were just found"));
            }
        }
    }
    out
}

/// Moves the leaf of `arm_q` to the end of `arm_p`: arm lengths go from
/// `(p, q)` to `(p + 1, q - 1)`.
pub fn apply_pq(site: &PQSite) -> Result<Tree> {
    let t = &site.tree;
    let check = |arm: &[usize]| {
        !arm.is_empty() && t.neighbors(site.w).contains(&arm[0]) && t.arm_vertices(site.w, arm[0]).as_deref() == Some(arm)
    };
    if !check(&site.arm_p) || !check(&site.arm_q) || site.arm_p[0] == site.arm_q[0] {
        return Err(Error::InvalidSite(site.to_string()));
    }
    let q = site.q();
    let leaf = site.arm_q[q - 1];
    let prev = if q >= 2 { site.arm_q[q - 2] } else { site.w };
    let target = site.arm_p[site.p() - 1];
    t.rewire(&[(prev, leaf)], &[(target, leaf)])
}

/// One rewrite in a normalization run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteStep {
    pub descriptor: String,
    pub code: String,
    #[serde(serialize_with = "serialize_ratio")]
    pub value: Rational,
    pub edges: Vec<(usize, usize)>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum NormalTarget {
    Star,
    Path,
}

/// A run of rewrites with the average eccentricity after each step.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct RewriteTrace {
    pub target: NormalTarget,
    pub params: KLParams,
    pub initial_code: String,
    #[serde(serialize_with = "serialize_ratio")]
    pub initial_value: Rational,
    pub steps: Vec<RewriteStep>,
    #[serde(serialize_with = "serialize_tree")]
    pub terminal: Tree,
}

fn serialize_tree<S: Serializer>(t: &Tree, serializer: S) -> std::result::Result<S::Ok, S::Error> {
    t.edges().serialize(serializer)
}

impl RewriteTrace {
    /// Values along the run, starting with the input tree.
    pub fn values(&self) -> Vec<Rational> {
        std::iter::once(self.initial_value.clone())
            .chain(self.steps.iter().map(|s| s.value.clone()))
            .collect()
    }
}

fn star_measure(t: &Tree) -> (usize, usize) {
    (t.diameter(), t.diametrical_path_count())
}

/// Applies diametrical forward rewrites until the tree is a star. Each step
/// takes the first form (in `(v0, vs, Z roots)` order) that lowers the
/// diameter, or keeps it and lowers the number of diametrical paths.
pub fn normalize_to_star(t: &Tree, p: KLParams) -> Result<RewriteTrace> {
    normalize(t, p, NormalTarget::Star)
}

/// Applies diametrical inverse rewrites until the tree is a path. Each step
/// takes the first form that raises the diameter.
pub fn normalize_to_path(t: &Tree, p: KLParams) -> Result<RewriteTrace> {
    normalize(t, p, NormalTarget::Path)
}

fn normalize(t: &Tree, p: KLParams, target: NormalTarget) -> Result<RewriteTrace> {
    p.check_order(t.order())?;
    let mut trace = RewriteTrace {
        target,
        params: p,
        initial_code: t.canonical_code(),
        initial_value: avg_steiner_kl_ecc(t, p)?,
        steps: Vec::new(),
        terminal: t.clone(),
    };
    let mut current = t.clone();
    loop {
        let done = match target {
            NormalTarget::Star => current.diameter() <= 2,
            NormalTarget::Path => current.is_path(),
        };
        if done {
            break;
        }
        let next = match target {
            NormalTarget::Star => {
                let before = star_measure(&current);
                find_sigma_forms(&current, SigmaVariant::Diametrical, false)
                    .into_iter()
                    .find_map(|f| {
                        let after = apply_sigma(&f).expect("found forms are valid");
                        (star_measure(&after) < before).then(|| (f.to_string(), after))
                    })
            }
            NormalTarget::Path => {
                let before = current.diameter();
                find_sigma_inverse_forms(&current, SigmaVariant::Diametrical, false)
                    .into_iter()
                    .find_map(|f| {
                        let after = apply_sigma_inverse(&f).expect("found forms are valid");
                        (after.diameter() > before).then(|| (f.to_string(), after))
                    })
            }
        };
        let Some((descriptor, after)) = next else {
            return Err(Error::Stalled(format!(
                "no progressing diametrical form on {}",
                current.canonical_code()
            )));
        };
        trace.steps.push(RewriteStep {
            descriptor,
            code: after.canonical_code(),
            value: avg_steiner_kl_ecc(&after, p)?,
            edges: after.edges(),
        });
        current = after;
    }
    trace.terminal = current;
    Ok(trace)
}
