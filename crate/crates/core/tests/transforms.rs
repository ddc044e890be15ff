use std::collections::HashMap;

use steinecc::enumerate::free_trees;
use steinecc::families::{path, star};
use steinecc::transforms::{
    apply_pq, apply_sigma, apply_sigma_inverse, find_pq_sites, find_sigma_forms,
    find_sigma_inverse_forms, normalize_to_path, normalize_to_star, SigmaVariant,
};
use steinecc::{EccTable, KLParams, Rational, Tree};

struct Tables(HashMap<String, EccTable>);

impl Tables {
    fn new() -> Self {
        Tables(HashMap::new())
    }

    fn get(&mut self, t: &Tree) -> &EccTable {
        self.0.entry(t.canonical_code()).or_insert_with(|| EccTable::new(t))
    }

    fn value(&mut self, t: &Tree, p: KLParams) -> Rational {
        self.get(t).average(p)
    }
}

fn grid(n: usize) -> Vec<KLParams> {
    KLParams::grid(n).collect()
}

#[test]
fn sigma_never_increases_and_inverse_never_decreases() {
    let mut tables = Tables::new();
    let mut checked = 0usize;
    for n in 3..=8 {
        for t in free_trees(n) {
            for variant in SigmaVariant::ALL {
                for relaxed in [false, true] {
                    for f in find_sigma_forms(&t, variant, relaxed) {
                        let after = apply_sigma(&f).unwrap();
                        assert_eq!(after.order(), n);
                        for p in grid(n) {
                            if relaxed && p.k == p.l {
                                continue;
                            }
                            let before_v = tables.value(&t, p);
                            let after_v = tables.value(&after, p);
                            assert!(before_v >= after_v, "forward {f} on {:?} at {p:?}: {before_v} < {after_v}", t.edges());
                            if f.eps_x() == f.eps_y() && p.k > p.l {
                                assert_eq!(before_v, after_v, "equality case {f} at {p:?}");
                            }
                            checked += 1;
                        }
                    }
                    for f in find_sigma_inverse_forms(&t, variant, relaxed) {
                        let after = apply_sigma_inverse(&f).unwrap();
                        for p in grid(n) {
                            if relaxed && p.k == p.l {
                                continue;
                            }
                            let before_v = tables.value(&t, p);
                            let after_v = tables.value(&after, p);
                            assert!(before_v <= after_v, "inverse {f} on {:?} at {p:?}: {before_v} > {after_v}", t.edges());
                            checked += 1;
                        }
                    }
                }
            }
        }
    }
    assert!(checked > 0);
}

#[test]
fn variant_side_conditions_hold() {
    for n in 3..=9 {
        for t in free_trees(n) {
            for f in find_sigma_forms(&t, SigmaVariant::Leaf, false) {
                assert_eq!(apply_sigma(&f).unwrap().leaf_count(), t.leaf_count(), "{f}");
            }
            for f in find_sigma_forms(&t, SigmaVariant::Degree, false) {
                assert!(apply_sigma(&f).unwrap().max_degree() >= t.max_degree(), "{f}");
            }
        }
    }
}

#[test]
fn existence_of_forward_and_inverse_forms() {
    for n in 4..=10 {
        for t in free_trees(n) {
            assert_eq!(find_sigma_forms(&t, SigmaVariant::Plain, false).is_empty(), t.is_star());
            assert_eq!(find_sigma_inverse_forms(&t, SigmaVariant::Plain, false).is_empty(), t.is_path());
            assert_eq!(find_sigma_forms(&t, SigmaVariant::Diametrical, false).is_empty(), t.is_star());
            assert_eq!(find_sigma_inverse_forms(&t, SigmaVariant::Diametrical, false).is_empty(), t.is_path());
        }
    }
}

#[test]
fn normalization_reaches_star_and_path() {
    for n in 2..=9 {
        let p = KLParams::new(2, 1).unwrap();
        for t in free_trees(n) {
            let down = normalize_to_star(&t, p).unwrap();
            assert_eq!(down.terminal.canonical_code(), star(n).unwrap().canonical_code());
            assert!(down.values().windows(2).all(|w| w[0] >= w[1]));
            let mut prev = (t.diameter(), t.diametrical_path_count());
            for step in &down.steps {
                let tree = Tree::from_edges(n, &step.edges).unwrap();
                let now = (tree.diameter(), tree.diametrical_path_count());
                assert!(now < prev, "{}", step.descriptor);
                prev = now;
            }
            let up = normalize_to_path(&t, p).unwrap();
            assert_eq!(up.terminal.canonical_code(), path(n).unwrap().canonical_code());
            assert!(up.values().windows(2).all(|w| w[0] <= w[1]));
        }
    }
}

#[test]
fn normalization_traces_are_monotone_for_every_parameter_pair() {
    for n in 4..=7 {
        for t in free_trees(n) {
            for p in grid(n) {
                let down = normalize_to_star(&t, p).unwrap();
                assert!(down.values().windows(2).all(|w| w[0] >= w[1]));
                let up = normalize_to_path(&t, p).unwrap();
                assert!(up.values().windows(2).all(|w| w[0] <= w[1]));
            }
        }
    }
}

#[test]
fn pq_trichotomy_inequalities() {
    let mut tables = Tables::new();
    let mut strict_gaps = 0usize;
    for n in 3..=10 {
        for t in free_trees(n) {
            for site in find_pq_sites(&t) {
                for s in [site.clone(), site.swapped()] {
                    let after = apply_pq(&s).unwrap();
                    assert_eq!(after.order(), n);
                    let (p_len, q_len) = (s.p(), s.q());
                    if q_len == p_len + 1 {
                        assert_eq!(after.canonical_code(), t.canonical_code(), "{s}");
                        continue;
                    }
                    for p in grid(n).into_iter().filter(|p| p.k <= 4 && p.k < n) {
                        let before_v = tables.value(&t, p);
                        let after_v = tables.value(&after, p);
                        if q_len >= p_len + 2 {
                            assert!(before_v >= after_v, "{s} at {p:?}");
                            if s.base_nontrivial() && before_v == after_v {
                                strict_gaps += 1;
                            }
                        } else {
                            assert!(before_v <= after_v, "{s} at {p:?}");
                        }
                    }
                }
            }
        }
    }
    assert!(strict_gaps > 0);
}

#[test]
fn pq_strict_decrease_can_fail_on_a_nontrivial_base() {
    // S(3,1,1) -> S(2,2,1): strict at (2,1) but equal at (3,1)
    let t = Tree::from_edges(6, &[(0, 1), (0, 2), (0, 3), (3, 4), (4, 5)]).unwrap();
    let site = find_pq_sites(&t)
        .into_iter()
        .map(|s| if s.p() > s.q() { s.swapped() } else { s })
        .find(|s| (s.p(), s.q()) == (1, 3))
        .unwrap();
    assert!(site.base_nontrivial());
    let after = apply_pq(&site).unwrap();
    let mut tables = Tables::new();
    let p21 = KLParams::new(2, 1).unwrap();
    let p31 = KLParams::new(3, 1).unwrap();
    assert!(tables.value(&t, p21) > tables.value(&after, p21));
    assert_eq!(tables.value(&t, p31), tables.value(&after, p31));
    assert_eq!(tables.value(&t, p31), "9/2".parse::<Rational>().unwrap());
}
