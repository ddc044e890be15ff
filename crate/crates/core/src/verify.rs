//! Exhaustive sweeps that check the extremal bounds on every tree of small
//! order.
//!
//! A sweep walks the non-isomorphic trees of each order in enumeration
//! order, compares exact eccentricity sums, and folds the outcomes into one
//! [`ResultRow`] per `(suite, n, k, l)`. Work is spread over a rayon pool of
//! the requested size; results are collected in order and folded serially, so
//! the report does not depend on the worker count.
//!
//! Within one `(n, k, l)` every compared average has the same denominator
//! `C(n, l)`, so comparisons are done on the integer sums.

use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::str::FromStr;
use std::time::Instant;

use itertools::Itertools;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::enumerate::{free_trees_vec, labeled_trees};
use crate::error::{Error, Result};
use crate::families::{
    balanced_starlike, broom, caterpillar, caterpillar_dominates, caterpillar_signatures,
    central_caterpillar, double_comet, path, star, starlike, starlike_dominates,
    starlike_signatures,
};
use crate::metrics::{
    closed_form_path, closed_form_star, oracle_unchecked, path_average_eccentricity_floor_formula,
    steiner_kl_eccentricity, steiner_wiener, EccTable, KLParams,
};
use crate::scalar::{binomial, binomial_u64, ratio_string, Scalar};
use crate::transforms::{
    apply_pq, apply_sigma, apply_sigma_inverse, find_pq_sites, find_sigma_forms,
    find_sigma_inverse_forms, SigmaVariant,
};
use crate::tree::{ShapeTag, Tree, VertexSet};
use crate::Rational;

/// Number of non-isomorphic free trees of order `n`, for `n = 1..=16`.
pub const FREE_TREE_COUNTS: [u64; 16] = [
    1, 1, 1, 2, 3, 6, 11, 23, 47, 106, 235, 551, 1301, 3159, 7741, 19320,
];

/// Largest order for which path and star tables are built in the closed-form
/// suite; beyond it only the `(2,1)` rows are checked, via eccentricity sums.
const TABLE_LIMIT: usize = 14;
/// Largest order swept over all trees by the closed-form suite.
const ALL_TREES_LIMIT: usize = 10;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Suite {
    Enumeration,
    Oracle,
    ClosedForms,
    Sandwich,
    Sigma,
    Pq,
    Leaves,
    Maxdeg,
    Diameter,
    Caterpillar,
    Starlike,
    BroomChain,
    Sw,
}

impl Suite {
    /// Every suite, in the order `all` runs them.
    pub const ALL: [Suite; 13] = [
        Suite::Enumeration,
        Suite::Oracle,
        Suite::ClosedForms,
        Suite::Sandwich,
        Suite::Sigma,
        Suite::Pq,
        Suite::Leaves,
        Suite::Maxdeg,
        Suite::Diameter,
        Suite::Caterpillar,
        Suite::Starlike,
        Suite::BroomChain,
        Suite::Sw,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Enumeration => "enumeration",
            Suite::Oracle => "oracle",
            Suite::ClosedForms => "closed-forms",
            Suite::Sandwich => "sandwich",
            Suite::Sigma => "sigma",
            Suite::Pq => "pq",
            Suite::Leaves => "leaves",
            Suite::Maxdeg => "maxdeg",
            Suite::Diameter => "diameter",
            Suite::Caterpillar => "caterpillar",
            Suite::Starlike => "starlike",
            Suite::BroomChain => "broom-chain",
            Suite::Sw => "sw",
        }
    }
}

impl fmt::Display for Suite {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Suite {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Suite::ALL
            .into_iter()
            .find(|suite| suite.name() == s)
            .ok_or_else(|| Error::BadRange(format!("unknown suite `{s}`")))
    }
}

/// Which suites to run and over what range.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SweepSpec {
    /// Empty means every suite.
    pub suites: Vec<Suite>,
    pub min_n: usize,
    pub max_n: usize,
    pub k: Option<usize>,
    pub l: Option<usize>,
    pub max_k: Option<usize>,
    pub workers: usize,
}

impl SweepSpec {
    pub fn new(suite: Option<Suite>, max_n: usize) -> SweepSpec {
        SweepSpec {
            suites: suite.into_iter().collect(),
            min_n: 1,
            max_n,
            k: None,
            l: None,
            max_k: None,
            workers: 1,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.max_n == 0 || self.min_n > self.max_n {
            return Err(Error::BadRange(format!(
                "empty order range {}..={}",
                self.min_n, self.max_n
            )));
        }
        if self.workers == 0 {
            return Err(Error::BadRange("at least one worker is needed".into()));
        }
        if let Some(k) = self.k {
            if k < 2 || k > self.max_n {
                return Err(Error::BadParams { k, l: self.l.unwrap_or(0) });
            }
            if let Some(l) = self.l {
                KLParams::new(k, l)?;
            }
        }
        if let (None, Some(l)) = (self.k, self.l) {
            if l > self.max_n {
                return Err(Error::BadParams { k: self.max_n, l });
            }
        }
        if matches!(self.max_k, Some(m) if m < 2) {
            return Err(Error::BadRange("max k must be at least 2".into()));
        }
        Ok(())
    }

    fn suites(&self) -> Vec<Suite> {
        if self.suites.is_empty() {
            Suite::ALL.to_vec()
        } else {
            self.suites.clone()
        }
    }

    fn orders(&self, lowest: usize) -> std::ops::RangeInclusive<usize> {
        self.min_n.max(lowest)..=self.max_n
    }

    fn accepts(&self, p: KLParams) -> bool {
        self.k.is_none_or(|k| k == p.k)
            && self.l.is_none_or(|l| l == p.l)
            && self.max_k.is_none_or(|m| p.k <= m)
    }

    /// Parameter pairs for trees of order `n`, by `k` then `l`.
    pub fn grid(&self, n: usize) -> Vec<KLParams> {
        KLParams::grid(n).filter(|&p| self.accepts(p)).collect()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Status {
    Pass,
    Finding,
    Fail,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Pass => "pass",
            Status::Finding => "finding",
            Status::Fail => "fail",
        }
    }
}

/// The relation a claim asserts between `lhs` and `rhs`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Relation {
    #[serde(rename = ">=")]
    Ge,
    #[serde(rename = "<=")]
    Le,
    #[serde(rename = ">")]
    Gt,
    #[serde(rename = "=")]
    Eq,
    #[serde(rename = "!=")]
    Ne,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Ge => ">=",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Eq => "=",
            Relation::Ne => "!=",
        }
    }

    pub fn holds<T: Ord>(self, lhs: &T, rhs: &T) -> bool {
        match self {
            Relation::Ge => lhs >= rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counterexample {
    pub edges: Vec<(usize, usize)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub other_edges: Option<Vec<(usize, usize)>>,
    pub lhs: String,
    pub rhs: String,
    pub relation: Relation,
    pub claim: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

/// Outcome of one suite at one order and parameter pair.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResultRow {
    pub suite: Suite,
    pub n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    pub status: Status,
    pub cases: u64,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<Counterexample>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub finding: Option<Counterexample>,
    /// Number of violating cases per failed claim.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub violations: BTreeMap<String, u64>,
    /// Number of finding cases per probed claim.
    #[serde(default, skip_serializing_if = "BTreeMap::is_empty")]
    pub findings: BTreeMap<String, u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpecSummary {
    pub suite: String,
    pub min_n: usize,
    pub max_n: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub k: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub l: Option<usize>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub max_k: Option<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VerificationReport {
    pub tool_version: String,
    pub spec: SpecSummary,
    pub results: Vec<ResultRow>,
    pub elapsed_ms: u64,
}

impl VerificationReport {
    /// `fail` if any row failed, else `finding` if any row has a finding.
    pub fn status(&self) -> Status {
        self.results
            .iter()
            .map(|r| r.status)
            .max()
            .unwrap_or(Status::Pass)
    }

    pub fn rows(&self, suite: Suite) -> impl Iterator<Item = &ResultRow> {
        self.results.iter().filter(move |r| r.suite == suite)
    }

    pub fn first_failure(&self) -> Option<&ResultRow> {
        self.results.iter().find(|r| r.status == Status::Fail)
    }

    pub fn total_cases(&self) -> u64 {
        self.results.iter().map(|r| r.cases).sum()
    }

    /// Violations of `claim` summed over all rows.
    pub fn violations_of(&self, claim: &str) -> u64 {
        self.results.iter().filter_map(|r| r.violations.get(claim)).sum()
    }

    /// Finding cases of `claim` summed over all rows.
    pub fn findings_of(&self, claim: &str) -> u64 {
        self.results.iter().filter_map(|r| r.findings.get(claim)).sum()
    }
}

type RowKey = (usize, Option<usize>, Option<usize>);

#[derive(Debug, Clone, Default)]
struct Tally {
    cases: u64,
    fail: Option<Counterexample>,
    finding: Option<Counterexample>,
    violations: BTreeMap<String, u64>,
    findings: BTreeMap<String, u64>,
    note: Option<String>,
}

impl Tally {
    fn absorb(&mut self, other: Tally) {
        self.cases += other.cases;
        for (claim, count) in other.violations {
            *self.violations.entry(claim).or_default() += count;
        }
        for (claim, count) in other.findings {
            *self.findings.entry(claim).or_default() += count;
        }
        if self.fail.is_none() {
            self.fail = other.fail;
        }
        if self.finding.is_none() {
            self.finding = other.finding;
        }
        if self.note.is_none() {
            self.note = other.note;
        }
    }
}

/// Collects outcomes keyed by row.
#[derive(Debug, Default)]
struct Ledger {
    rows: BTreeMap<RowKey, Tally>,
}

fn key(n: usize, p: Option<KLParams>) -> RowKey {
    (n, p.map(|p| p.k), p.map(|p| p.l))
}

struct Claim<'a> {
    name: &'a str,
    tree: &'a Tree,
    other: Option<&'a Tree>,
}

impl<'a> Claim<'a> {
    fn on(name: &'a str, tree: &'a Tree) -> Self {
        Claim { name, tree, other: None }
    }

    fn against(mut self, other: &'a Tree) -> Self {
        self.other = Some(other);
        self
    }

    fn build(&self, lhs: String, rhs: String, relation: Relation, detail: Option<String>) -> Counterexample {
        Counterexample {
            edges: self.tree.edges(),
            other_edges: self.other.map(Tree::edges),
            lhs,
            rhs,
            relation,
            claim: self.name.to_string(),
            detail,
        }
    }
}

fn average_string(sum: u64, n: usize, l: usize) -> String {
    ratio_string(&Rational::ratio(sum, binomial_u64(n, l)))
}

impl Ledger {
    fn tally(&mut self, n: usize, p: Option<KLParams>) -> &mut Tally {
        self.rows.entry(key(n, p)).or_default()
    }

    fn record(&mut self, n: usize, p: Option<KLParams>, outcome: Option<Counterexample>, finding: bool) {
        let tally = self.tally(n, p);
        tally.cases += 1;
        if let Some(c) = outcome {
            if finding {
                *tally.findings.entry(c.claim.clone()).or_default() += 1;
                tally.finding.get_or_insert(c);
            } else {
                *tally.violations.entry(c.claim.clone()).or_default() += 1;
                tally.fail.get_or_insert(c);
            }
        }
    }

    /// Compares two eccentricity sums at the same `(n, k, l)`.
    fn compare(&mut self, n: usize, p: KLParams, claim: Claim<'_>, relation: Relation, lhs: u64, rhs: u64) {
        let outcome = (!relation.holds(&lhs, &rhs)).then(|| {
            claim.build(average_string(lhs, n, p.l), average_string(rhs, n, p.l), relation, None)
        });
        self.record(n, Some(p), outcome, false);
    }

    /// Like [`Ledger::compare`] but a violation is a finding.
    fn probe(&mut self, n: usize, p: KLParams, claim: Claim<'_>, relation: Relation, lhs: u64, rhs: u64, detail: Option<String>) {
        let outcome = (!relation.holds(&lhs, &rhs)).then(|| {
            claim.build(average_string(lhs, n, p.l), average_string(rhs, n, p.l), relation, detail)
        });
        self.record(n, Some(p), outcome, true);
    }

    fn compare_raw(&mut self, n: usize, p: Option<KLParams>, claim: Claim<'_>, relation: Relation, lhs: String, rhs: String, holds: bool) {
        let outcome = (!holds).then(|| claim.build(lhs, rhs, relation, None));
        self.record(n, p, outcome, false);
    }

    fn note(&mut self, n: usize, p: Option<KLParams>, note: String) {
        self.tally(n, p).note.get_or_insert(note);
    }

    fn absorb(&mut self, other: Ledger) {
        for (k, t) in other.rows {
            self.rows.entry(k).or_default().absorb(t);
        }
    }

    fn into_rows(self, suite: Suite) -> Vec<ResultRow> {
        self.rows
            .into_iter()
            .map(|((n, k, l), t)| {
                let status = if t.fail.is_some() {
                    Status::Fail
                } else if t.finding.is_some() {
                    Status::Finding
                } else {
                    Status::Pass
                };
                ResultRow {
                    suite,
                    n,
                    k,
                    l,
                    status,
                    cases: t.cases,
                    counterexample: t.fail,
                    finding: t.finding,
                    violations: t.violations,
                    findings: t.findings,
                    note: t.note,
                }
            })
            .collect()
    }
}

/// All trees of one order with their tables, indexed by canonical code.
struct Catalog {
    n: usize,
    trees: Vec<Tree>,
    tables: Vec<EccTable>,
    index: HashMap<String, usize>,
}

impl Catalog {
    fn build(n: usize) -> Catalog {
        let trees = free_trees_vec(n);
        let tables: Vec<EccTable> = trees.par_iter().map(EccTable::new).collect();
        let index = trees
            .iter()
            .enumerate()
            .map(|(i, t)| (t.canonical_code(), i))
            .collect();
        Catalog { n, trees, tables, index }
    }

    fn table_of(&self, t: &Tree) -> &EccTable {
        &self.tables[self.index[&t.canonical_code()]]
    }

    fn sum(&self, t: &Tree, p: KLParams) -> u64 {
        self.table_of(t).sum(p)
    }

    /// Runs `f` on every tree in parallel and folds the ledgers in
    /// enumeration order.
    fn sweep<F>(&self, f: F) -> Ledger
    where
        F: Fn(usize, &Tree, &EccTable, &mut Ledger) + Sync,
    {
        let parts: Vec<Ledger> = (0..self.trees.len())
            .into_par_iter()
            .map(|i| {
                let mut ledger = Ledger::default();
                f(i, &self.trees[i], &self.tables[i], &mut ledger);
                ledger
            })
            .collect();
        let mut out = Ledger::default();
        for part in parts {
            out.absorb(part);
        }
        out
    }
}

/// Runs the requested suites.
pub fn run_sweep(spec: &SweepSpec) -> Result<VerificationReport> {
    spec.validate()?;
    let started = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(spec.workers)
        .build()
        .map_err(|e| Error::BadRange(format!("cannot start worker pool: {e}")))?;
    let suites = spec.suites();
    let results = pool.install(|| {
        let mut results = Vec::new();
        let mut catalogs: BTreeMap<usize, Catalog> = BTreeMap::new();
        for &suite in &suites {
            results.extend(run_suite(suite, spec, &mut catalogs));
        }
        results
    });
    let suite_name = if spec.suites.is_empty() {
        "all".to_string()
    } else {
        suites.iter().map(|s| s.name()).join(",")
    };
    Ok(VerificationReport {
        tool_version: env!("CARGO_PKG_VERSION").to_string(),
        spec: SpecSummary {
            suite: suite_name,
            min_n: spec.min_n,
            max_n: spec.max_n,
            k: spec.k,
            l: spec.l,
            max_k: spec.max_k,
        },
        results,
        elapsed_ms: started.elapsed().as_millis() as u64,
    })
}

fn catalog(catalogs: &mut BTreeMap<usize, Catalog>, n: usize) -> &Catalog {
    catalogs.entry(n).or_insert_with(|| Catalog::build(n))
}

fn run_suite(suite: Suite, spec: &SweepSpec, catalogs: &mut BTreeMap<usize, Catalog>) -> Vec<ResultRow> {
    let mut rows = Vec::new();
    match suite {
        Suite::Enumeration => {
            for n in spec.orders(1) {
                rows.extend(check_enumeration(n).into_rows(suite));
            }
        }
        Suite::ClosedForms => {
            for n in spec.orders(2) {
                let mut ledger = check_closed_forms(spec, n);
                if n <= ALL_TREES_LIMIT {
                    ledger.absorb(check_few_leaves(spec, catalog(catalogs, n)));
                }
                rows.extend(ledger.into_rows(suite));
            }
        }
        Suite::Caterpillar => {
            for n in spec.orders(4) {
                rows.extend(check_caterpillar(spec, n).into_rows(suite));
            }
        }
        Suite::Starlike => {
            for n in spec.orders(3) {
                rows.extend(check_starlike_majorization(spec, n).into_rows(suite));
            }
        }
        _ => {
            for n in spec.orders(2) {
                let cat = catalog(catalogs, n);
                let ledger = match suite {
                    Suite::Oracle => check_oracle(spec, cat),
                    Suite::Sandwich => check_sandwich(spec, cat),
                    Suite::Sigma => check_sigma(spec, cat),
                    Suite::Pq => check_pq(spec, cat),
                    Suite::Leaves => check_fixed_leaves(spec, cat),
                    Suite::Maxdeg => check_fixed_maxdeg(spec, cat),
                    Suite::Diameter => check_fixed_diameter(spec, cat),
                    Suite::BroomChain => check_broom_chain(spec, cat),
                    Suite::Sw => check_sw_bounds(spec, cat),
                    _ => unreachable!("handled above"),
                };
                rows.extend(ledger.into_rows(suite));
            }
        }
    }
    rows
}

/// Generator counts against the known sequence, and agreement with the
/// Prüfer oracle for `n <= 8`.
fn check_enumeration(n: usize) -> Ledger {
    let mut ledger = Ledger::default();
    let trees = free_trees_vec(n);
    let codes: std::collections::BTreeSet<String> = trees.iter().map(Tree::canonical_code).collect();
    let anchor = path(n).expect("n >= 1");
    ledger.compare_raw(
        n,
        None,
        Claim::on("generated trees are pairwise non-isomorphic", &anchor),
        Relation::Eq,
        codes.len().to_string(),
        trees.len().to_string(),
        codes.len() == trees.len(),
    );
    if let Some(&expected) = FREE_TREE_COUNTS.get(n - 1) {
        ledger.compare_raw(
            n,
            None,
            Claim::on("number of free trees", &anchor),
            Relation::Eq,
            trees.len().to_string(),
            expected.to_string(),
            trees.len() as u64 == expected,
        );
    }
    if (2..=8).contains(&n) {
        let oracle: std::collections::BTreeSet<String> = labeled_trees(n)
            .expect("2 <= n <= 8")
            .map(|t| t.canonical_code())
            .collect();
        ledger.compare_raw(
            n,
            None,
            Claim::on("generator matches Prüfer classes", &anchor),
            Relation::Eq,
            codes.len().to_string(),
            oracle.len().to_string(),
            codes == oracle,
        );
    }
    ledger
}

/// Greedy eccentricities against exhaustive search, set by set.
fn check_oracle(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    let grid = spec.grid(n);
    cat.sweep(|_, t, table, ledger| {
        for &p in &grid {
            let mut oracle_sum = 0u64;
            let mut mismatch = None;
            for set in (0..n).combinations(p.l) {
                let oracle = oracle_unchecked(t, &set, p.k, None);
                let vs = VertexSet::from_sorted(set.clone());
                let greedy = steiner_kl_eccentricity(t, &vs, p).expect("valid query").value;
                oracle_sum += oracle as u64;
                if greedy != oracle && mismatch.is_none() {
                    mismatch = Some((vs, greedy, oracle));
                }
            }
            let outcome = mismatch.map(|(set, greedy, oracle)| {
                Claim::on("greedy eccentricity equals exhaustive search", t).build(
                    greedy.to_string(),
                    oracle.to_string(),
                    Relation::Eq,
                    Some(format!("set {set}")),
                )
            });
            ledger.record(n, Some(p), outcome, false);
            ledger.compare(n, p, Claim::on("table sum equals exhaustive sum", t), Relation::Eq, table.sum(p), oracle_sum);
        }
    })
}

fn path_eccentricity_sum(n: usize) -> u64 {
    path(n).expect("n >= 1").eccentricities().iter().map(|&e| e as u64).sum()
}

/// Closed forms for paths and stars against brute force, and the printed
/// `(2,1)` path formula as an erratum probe.
fn check_closed_forms(spec: &SweepSpec, n: usize) -> Ledger {
    let mut ledger = Ledger::default();
    let p_tree = path(n).expect("n >= 2");
    let s_tree = star(n).expect("n >= 2");
    let p21 = KLParams { k: 2, l: 1 };
    if n > TABLE_LIMIT {
        if spec.accepts(p21) {
            let brute = Rational::ratio(path_eccentricity_sum(n), n as u64);
            path_21_rows(&mut ledger, n, &p_tree, &brute);
            let star_brute = Rational::ratio(s_tree.eccentricities().iter().map(|&e| e as u64).sum(), n as u64);
            let closed: Rational = closed_form_star(n, p21).expect("valid");
            ledger.compare_raw(n, Some(p21), Claim::on("star closed form", &s_tree), Relation::Eq, ratio_string(&closed), ratio_string(&star_brute), closed == star_brute);
        }
        return ledger;
    }
    let path_table = EccTable::new(&p_tree);
    let star_table = EccTable::new(&s_tree);
    for p in spec.grid(n) {
        let brute: Rational = path_table.average(p);
        if p.k < n {
            let closed: Rational = closed_form_path(n, p).expect("k < n");
            ledger.compare_raw(n, Some(p), Claim::on("path closed form", &p_tree), Relation::Eq, ratio_string(&closed), ratio_string(&brute), closed == brute);
        } else {
            let expected = Rational::from_count(n as u64 - 1);
            ledger.compare_raw(n, Some(p), Claim::on("path value at k = n", &p_tree), Relation::Eq, ratio_string(&brute), ratio_string(&expected), brute == expected);
        }
        if p == p21 {
            path_21_rows(&mut ledger, n, &p_tree, &brute);
        }
        let star_brute: Rational = star_table.average(p);
        let star_closed: Rational = closed_form_star(n, p).expect("valid");
        ledger.compare_raw(n, Some(p), Claim::on("star closed form", &s_tree), Relation::Eq, ratio_string(&star_closed), ratio_string(&star_brute), star_closed == star_brute);
    }
    ledger
}

fn path_21_rows(ledger: &mut Ledger, n: usize, p_tree: &Tree, brute: &Rational) {
    let p21 = KLParams { k: 2, l: 1 };
    let corrected = Rational::ratio((n * (3 * n - 2) / 4) as u64, n as u64);
    ledger.compare_raw(n, Some(p21), Claim::on("path (2,1) value floor(n(3n-2)/4)/n", p_tree), Relation::Eq, ratio_string(&corrected), ratio_string(brute), &corrected == brute);
    let literal = Rational::from_count(path_average_eccentricity_floor_formula(n));
    let outcome = (&literal != brute).then(|| {
        Claim::on("path (2,1) value printed as floor((3n-2)/4)", p_tree).build(
            ratio_string(&literal),
            ratio_string(brute),
            Relation::Eq,
            Some("erratum: the printed form drops the factor n inside the floor".into()),
        )
    });
    ledger.record(n, Some(p21), outcome, true);
}

/// Every tree with at most `k - l` leaves has average `n - 1`.
fn check_few_leaves(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    let grid = spec.grid(n);
    cat.sweep(|_, t, table, ledger| {
        for &p in &grid {
            if t.leaf_count() <= p.k - p.l {
                let target = (n as u64 - 1) * binomial_u64(n, p.l);
                ledger.compare(n, p, Claim::on("few leaves give average n - 1", t), Relation::Eq, table.sum(p), target);
            }
        }
    })
}

/// Star below every tree, path above.
fn check_sandwich(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    let grid = spec.grid(n);
    let s_tree = star(n).expect("n >= 2");
    let p_tree = path(n).expect("n >= 2");
    let star_table = cat.table_of(&s_tree).clone();
    let path_table = cat.table_of(&p_tree).clone();
    cat.sweep(|_, t, table, ledger| {
        for &p in &grid {
            ledger.compare(n, p, Claim::on("star lower bound", t).against(&s_tree), Relation::Ge, table.sum(p), star_table.sum(p));
            ledger.compare(n, p, Claim::on("path upper bound", t).against(&p_tree), Relation::Le, table.sum(p), path_table.sum(p));
        }
    })
}

/// Forward rewrites never raise the average and inverse rewrites never lower
/// it; forms that only hold without the size condition are checked for
/// `k > l`. Forms with `eps_X(vs) = eps_Y(v0)` must keep the value for
/// `k > l`.
fn check_sigma(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    let grid = spec.grid(n);
    cat.sweep(|_, t, table, ledger| {
        for f in find_sigma_forms(t, SigmaVariant::Plain, true) {
            let after = apply_sigma(&f).expect("found forms are valid");
            let after_table = cat.table_of(&after);
            let detail = f.to_string();
            let variants: Vec<&str> = SigmaVariant::ALL
                .into_iter()
                .filter(|&v| f.satisfies(v))
                .map(SigmaVariant::short_name)
                .collect();
            if f.satisfies(SigmaVariant::Leaf) && f.size_condition_holds() {
                ledger.compare_raw(n, None, Claim::on("leaf rewrite keeps the leaf count", t).against(&after), Relation::Eq, after.leaf_count().to_string(), t.leaf_count().to_string(), after.leaf_count() == t.leaf_count());
            }
            if f.satisfies(SigmaVariant::Degree) && f.size_condition_holds() {
                ledger.compare_raw(n, None, Claim::on("degree rewrite keeps the maximum degree from dropping", t).against(&after), Relation::Ge, after.max_degree().to_string(), t.max_degree().to_string(), after.max_degree() >= t.max_degree());
            }
            for &p in &grid {
                if !f.size_condition_holds() && p.k == p.l {
                    continue;
                }
                let (before, now) = (table.sum(p), after_table.sum(p));
                if before < now {
                    let c = Claim::on("forward rewrite does not raise the average", t).against(&after).build(
                        average_string(before, n, p.l),
                        average_string(now, n, p.l),
                        Relation::Ge,
                        Some(format!("{detail} variants {}", variants.join(","))),
                    );
                    ledger.record(n, Some(p), Some(c), false);
                } else {
                    ledger.record(n, Some(p), None, false);
                }
                if f.eps_x() == f.eps_y() && p.k > p.l {
                    ledger.compare(n, p, Claim::on("balanced rewrite keeps the average", t).against(&after), Relation::Eq, before, now);
                }
            }
        }
        for f in find_sigma_inverse_forms(t, SigmaVariant::Plain, true) {
            let after = apply_sigma_inverse(&f).expect("found forms are valid");
            let after_table = cat.table_of(&after);
            for &p in &grid {
                if !f.size_condition_holds() && p.k == p.l {
                    continue;
                }
                ledger.compare(n, p, Claim::on("inverse rewrite does not lower the average", t).against(&after), Relation::Le, table.sum(p), after_table.sum(p));
            }
        }
    })
}

/// The (p,q) trichotomy. Strictness for `q >= p + 2` is only claimed with a
/// nontrivial base and `n > k`; equality there is a finding.
fn check_pq(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    let grid = spec.grid(n);
    cat.sweep(|_, t, table, ledger| {
        for site in find_pq_sites(t) {
            for s in [site.clone(), site.swapped()] {
                let after = apply_pq(&s).expect("found sites are valid");
                let (p_len, q_len) = (s.p(), s.q());
                if q_len == p_len + 1 {
                    ledger.compare_raw(n, None, Claim::on("(p,p+1) rewrite gives an isomorphic tree", t).against(&after), Relation::Eq, after.canonical_code(), t.canonical_code(), after.canonical_code() == t.canonical_code());
                    continue;
                }
                let after_table = cat.table_of(&after);
                for &p in &grid {
                    let (before, now) = (table.sum(p), after_table.sum(p));
                    if q_len >= p_len + 2 {
                        ledger.compare(n, p, Claim::on("(p,q) rewrite with q >= p+2 does not raise the average", t).against(&after), Relation::Ge, before, now);
                        if s.base_nontrivial() && n > p.k {
                            let region = if p.l == 0 {
                                "l = 0"
                            } else if t.leaf_count() <= p.k - p.l {
                                "#leaves <= k - l"
                            } else {
                                "#leaves > k - l, l >= 1"
                            };
                            ledger.probe(n, p, Claim::on("(p,q) rewrite with q >= p+2 strictly lowers the average", t).against(&after), Relation::Gt, before, now, Some(format!("{s}; region {region}")));
                        }
                    } else {
                        ledger.compare(n, p, Claim::on("(p,q) rewrite with q <= p does not lower the average", t).against(&after), Relation::Le, before, now);
                    }
                }
            }
        }
    })
}

fn broom_or_path(n: usize, delta: usize) -> Tree {
    if delta <= 2 {
        path(n).expect("n >= 2")
    } else {
        broom(n, delta).expect("3 <= delta <= n - 1")
    }
}

fn family_tables(trees: impl IntoIterator<Item = (usize, Tree)>) -> BTreeMap<usize, (Tree, EccTable)> {
    trees
        .into_iter()
        .map(|(key, t)| {
            let table = EccTable::new(&t);
            (key, (t, table))
        })
        .collect()
}

/// Balanced starlike below and broom above for a fixed number of leaves; the
/// broom bound for all trees only when `k > l`, and for starlike trees at
/// every `(k,l)`.
fn check_fixed_leaves(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    if n < 3 {
        return Ledger::default();
    }
    let grid = spec.grid(n);
    let lower = family_tables((2..n).map(|p| (p, balanced_starlike(n, p).expect("2 <= p <= n - 1"))));
    let upper = family_tables((2..n).map(|p| (p, broom_or_path(n, p))));
    cat.sweep(|_, t, table, ledger| {
        let leaves = t.leaf_count();
        let (bs, bs_table) = &lower[&leaves];
        let (b, b_table) = &upper[&leaves];
        let is_starlike = matches!(t.classify_shape().tag, ShapeTag::Starlike | ShapeTag::Broom | ShapeTag::Star | ShapeTag::Path);
        for &p in &grid {
            ledger.compare(n, p, Claim::on("balanced starlike lower bound for fixed leaves", t).against(bs), Relation::Ge, table.sum(p), bs_table.sum(p));
            if p.k > p.l {
                ledger.compare(n, p, Claim::on("broom upper bound for fixed leaves", t).against(b), Relation::Le, table.sum(p), b_table.sum(p));
            } else if is_starlike {
                ledger.compare(n, p, Claim::on("broom upper bound for starlike trees", t).against(b), Relation::Le, table.sum(p), b_table.sum(p));
            }
        }
    })
}

/// Broom upper bound for a fixed maximum degree.
fn check_fixed_maxdeg(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    if n < 3 {
        return Ledger::default();
    }
    let grid = spec.grid(n);
    let upper = family_tables((2..n).map(|d| (d, broom_or_path(n, d))));
    cat.sweep(|_, t, table, ledger| {
        let (b, b_table) = &upper[&t.max_degree()];
        for &p in &grid {
            ledger.compare(n, p, Claim::on("broom upper bound for fixed maximum degree", t).against(b), Relation::Le, table.sum(p), b_table.sum(p));
        }
    })
}

/// Central caterpillar lower bounds for a fixed diameter and for a fixed
/// radius.
fn check_fixed_diameter(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    if n < 3 {
        return Ledger::default();
    }
    let grid = spec.grid(n);
    let central = family_tables((2..n).map(|d| (d, central_caterpillar(n, d, None).expect("2 <= d <= n - 1"))));
    cat.sweep(|_, t, table, ledger| {
        let (c, c_table) = &central[&t.diameter()];
        let r = t.radius();
        let by_radius = (r >= 2).then(|| &central[&(2 * r - 1)]);
        for &p in &grid {
            ledger.compare(n, p, Claim::on("central caterpillar lower bound for fixed diameter", t).against(c), Relation::Ge, table.sum(p), c_table.sum(p));
            if let Some((c, c_table)) = by_radius {
                ledger.compare(n, p, Claim::on("central caterpillar lower bound for fixed radius", t).against(c), Relation::Ge, table.sum(p), c_table.sum(p));
            }
        }
    })
}

/// Caterpillar sandwich, the `▷` monotonicity, and invariance of the central
/// caterpillar and double comet under the split parameter.
fn check_caterpillar(spec: &SweepSpec, n: usize) -> Ledger {
    let grid = spec.grid(n);
    let mut ledger = Ledger::default();
    let mut cache: HashMap<String, EccTable> = HashMap::new();
    let mut sum = |t: &Tree, p: KLParams| cache.entry(t.canonical_code()).or_insert_with(|| EccTable::new(t)).sum(p);
    for d in 3..n {
        let sigs = caterpillar_signatures(n, d);
        let trees: Vec<Tree> = sigs.iter().map(|s| caterpillar(n, s).expect("valid signature")).collect();
        let low = central_caterpillar(n, d, None).expect("d <= n - 1");
        let high = double_comet(n, d, None).expect("d <= n - 1");
        let comets: Vec<Tree> = (0..n - d).map(|s| double_comet(n, d, Some(s)).expect("s <= n - d - 1")).collect();
        for &p in &grid {
            let (low_sum, high_sum) = (sum(&low, p), sum(&high, p));
            let (best, best_sum) = comets
                .iter()
                .map(|c| (c, sum(c, p)))
                .max_by_key(|&(_, v)| v)
                .expect("at least one split");
            for t in &trees {
                let v = sum(t, p);
                ledger.compare(n, p, Claim::on("central caterpillar below every caterpillar", t).against(&low), Relation::Ge, v, low_sum);
                ledger.compare(n, p, Claim::on("double comet above every caterpillar", t).against(&high), Relation::Le, v, high_sum);
                ledger.compare(n, p, Claim::on("double comet with the best split above every caterpillar", t).against(best), Relation::Le, v, best_sum);
            }
            for (i, x) in sigs.iter().enumerate() {
                for (j, y) in sigs.iter().enumerate() {
                    if i != j && caterpillar_dominates(x, y).expect("same diameter") {
                        let (vx, vy) = (sum(&trees[i], p), sum(&trees[j], p));
                        ledger.compare(n, p, Claim::on("caterpillar order is monotone", &trees[i]).against(&trees[j]), Relation::Ge, vx, vy);
                    }
                }
            }
            let extra = n - d - 1;
            if d % 2 == 1 {
                let base = sum(&low, p);
                for s in 1..=extra {
                    let t = central_caterpillar(n, d, Some(s)).expect("s <= n - d - 1");
                    let v = sum(&t, p);
                    ledger.compare(n, p, Claim::on("central caterpillar value does not depend on the split", &t).against(&low), Relation::Eq, v, base);
                }
            }
            let base = sum(&high, p);
            for s in 1..=extra {
                let t = double_comet(n, d, Some(s)).expect("s <= n - d - 1");
                let v = sum(&t, p);
                ledger.compare(n, p, Claim::on("double comet value does not depend on the split", &t).against(&high), Relation::Eq, v, base);
            }
        }
    }
    ledger
}

/// Starlike trees ordered by `≺`: the dominating signature has the larger
/// average, with equality only for isomorphic trees (violations of the
/// equality clause are findings).
fn check_starlike_majorization(spec: &SweepSpec, n: usize) -> Ledger {
    let grid = spec.grid(n);
    let mut ledger = Ledger::default();
    for arms in 2..n {
        let sigs = starlike_signatures(n, arms);
        let trees: Vec<Tree> = sigs.iter().map(|s| starlike(s).expect("valid signature")).collect();
        let tables: Vec<EccTable> = trees.par_iter().map(EccTable::new).collect();
        let codes: Vec<String> = trees.iter().map(Tree::canonical_code).collect();
        for &p in &grid {
            for (i, x) in sigs.iter().enumerate() {
                for (j, y) in sigs.iter().enumerate() {
                    if i == j || !starlike_dominates(x, y).expect("same length") {
                        continue;
                    }
                    let (vx, vy) = (tables[i].sum(p), tables[j].sum(p));
                    ledger.compare(n, p, Claim::on("starlike majorization is monotone", &trees[i]).against(&trees[j]), Relation::Ge, vx, vy);
                    if codes[i] != codes[j] {
                        let region = if trees[i].leaf_count() <= p.k - p.l { "#leaves <= k - l" } else { "#leaves > k - l" };
                        ledger.probe(n, p, Claim::on("starlike majorization is strict for non-isomorphic trees", &trees[i]).against(&trees[j]), Relation::Ne, vx, vy, Some(format!("{:?} vs {:?}; region {region}", x.arms(), y.arms())));
                    }
                }
            }
        }
    }
    ledger
}

/// The broom chain from the path down to the star, and the second-largest
/// value over all trees.
fn check_broom_chain(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    let mut ledger = Ledger::default();
    if n < 4 {
        return ledger;
    }
    let chain: Vec<Tree> = (2..n).map(|d| broom_or_path(n, d)).collect();
    let path_tree = path(n).expect("n >= 4");
    for p in spec.grid(n) {
        for w in chain.windows(2) {
            ledger.compare(n, p, Claim::on("broom chain is non-increasing", &w[0]).against(&w[1]), Relation::Ge, cat.sum(&w[0], p), cat.sum(&w[1], p));
        }
        let top = cat.sum(&path_tree, p);
        let mut below: Vec<(u64, usize)> = cat
            .tables
            .iter()
            .enumerate()
            .map(|(i, t)| (t.sum(p), i))
            .filter(|&(v, _)| v < top)
            .collect();
        let delta = 3.max(p.k - p.l + 1);
        if below.is_empty() || delta > n - 1 {
            continue;
        }
        below.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        let second = below[0].0;
        let ties = below.iter().filter(|&&(v, _)| v == second).count();
        let candidate = broom(n, delta).expect("3 <= delta <= n - 1");
        let landscape: Vec<String> = below
            .iter()
            .map(|&(v, _)| v)
            .dedup_with_count()
            .take(3)
            .map(|(count, v)| format!("{} x{count}", average_string(v, n, p.l)))
            .collect();
        let note = format!(
            "top {} (path); below it: {}; trees at the second value: {ties}",
            average_string(top, n, p.l),
            landscape.join(", ")
        );
        ledger.note(n, Some(p), note);
        ledger.probe(n, p, Claim::on("broom B(n, max(3, k-l+1)) attains the second largest value", &candidate).against(&cat.trees[below[0].1]), Relation::Eq, cat.sum(&candidate, p), second, None);
    }
    ledger
}

/// Steiner Wiener index: agreement with the `(k,k)` eccentricity sum, the
/// general bounds with their extremal trees, and the family bounds.
fn check_sw_bounds(spec: &SweepSpec, cat: &Catalog) -> Ledger {
    let n = cat.n;
    let ks: Vec<usize> = (2..=n)
        .filter(|&k| spec.k.is_none_or(|x| x == k) && spec.max_k.is_none_or(|m| k <= m))
        .collect();
    if n < 3 {
        return Ledger::default();
    }
    let by_delta = family_tables((2..n).map(|d| (d, broom_or_path(n, d))));
    let by_leaves = family_tables((2..n).map(|p| (p, balanced_starlike(n, p).expect("2 <= p <= n - 1"))));
    let by_diam = family_tables((2..n).map(|d| (d, central_caterpillar(n, d, None).expect("2 <= d <= n - 1"))));
    cat.sweep(|_, t, table, ledger| {
        for &k in &ks {
            let p = KLParams { k, l: k };
            let sw = steiner_wiener(t, k).expect("k <= n");
            let via_table = table.sum(p);
            ledger.compare_raw(n, Some(p), Claim::on("edge-cut Steiner Wiener index equals the (k,k) sum", t), Relation::Eq, sw.to_string(), via_table.to_string(), sw == via_table.into());
            let lower = binomial(n as u64 - 1, k as u64 - 1) * (n as u64 - 1);
            let upper = binomial(n as u64 + 1, k as u64 + 1) * (k as u64 - 1);
            ledger.compare_raw(n, Some(p), Claim::on("Steiner Wiener lower bound", t), Relation::Ge, sw.to_string(), lower.to_string(), sw >= lower);
            ledger.compare_raw(n, Some(p), Claim::on("Steiner Wiener upper bound", t), Relation::Le, sw.to_string(), upper.to_string(), sw <= upper);
            for (bound, extremal, name) in [(&lower, t.is_star(), "star"), (&upper, t.is_path(), "path")] {
                if &sw == bound && !extremal {
                    let c = Claim::on("Steiner Wiener bounds are attained only by the star and the path", t).build(
                        sw.to_string(),
                        bound.to_string(),
                        Relation::Ne,
                        Some(format!("attains the {name} bound; at k = n every tree has Steiner Wiener index n - 1")),
                    );
                    ledger.record(n, Some(p), Some(c), true);
                }
            }
            let (b, b_table) = &by_delta[&t.max_degree()];
            ledger.compare(n, p, Claim::on("Steiner Wiener broom bound for fixed maximum degree", t).against(b), Relation::Le, via_table, b_table.sum(p));
            let (bs, bs_table) = &by_leaves[&t.leaf_count()];
            ledger.compare(n, p, Claim::on("Steiner Wiener balanced starlike bound for fixed leaves", t).against(bs), Relation::Ge, via_table, bs_table.sum(p));
            let (c, c_table) = &by_diam[&t.diameter()];
            ledger.compare(n, p, Claim::on("Steiner Wiener central caterpillar bound for fixed diameter", t).against(c), Relation::Ge, via_table, c_table.sum(p));
        }
    })
}
