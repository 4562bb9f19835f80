use super::*;
use crate::gadgets::{gen_hamilton_clique, gen_theta};
use crate::graph::catalog::{all_graphs, connected_graphs_up_to};
use crate::graph::families::*;
use crate::graph::is_triangulated;
use crate::lists::verify_choice;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn ab(g: &Graph, a: usize, b: usize) -> bool {
    is_ab_choosable(g, ChoosabilityQuery::new(a, b).unwrap(), &Budget::new(u64::MAX))
        .unwrap()
        .0
}

/// Independent choice search: every combination of `b`-subsets, no pruning.
fn naive_choice_exists(g: &Graph, s: &ListAssignment, b: usize) -> bool {
    fn subsets(list: &[Color], b: usize) -> Vec<ColorSet> {
        if b == 0 {
            return vec![ColorSet::new()];
        }
        let mut out = Vec::new();
        for (i, &c) in list.iter().enumerate() {
            for mut rest in subsets(&list[i + 1..], b - 1) {
                rest.insert(c);
                out.push(rest);
            }
        }
        out
    }
    fn rec(g: &Graph, order: &[Vertex], opts: &BTreeMap<Vertex, Vec<ColorSet>>, c: &mut Choice) -> bool {
        let Some((&v, rest)) = order.split_first() else {
            return true;
        };
        for set in &opts[&v] {
            if g.neighbors(v).iter().all(|w| c.get(*w).is_none_or(|o| o.is_disjoint(set))) {
                c.insert(v, set.clone());
                if rec(g, rest, opts, c) {
                    return true;
                }
                c.0.remove(&v);
            }
        }
        false
    }
    let opts: BTreeMap<Vertex, Vec<ColorSet>> = g
        .vertices()
        .map(|v| (v, subsets(&s.0[&v].iter().copied().collect::<Vec<_>>(), b)))
        .collect();
    let order: Vec<Vertex> = g.vertices().collect();
    rec(g, &order, &opts, &mut Choice::new())
}

#[test]
fn choosability_examples() {
    assert!(ab(&cycle(4), 2, 1));
    let (ok, w) = is_ab_choosable(&cycle(3), ChoosabilityQuery::new(2, 1).unwrap(), &Budget::default()).unwrap();
    assert!(!ok);
    assert_eq!(w.verdict, Verdict::BadAssignment);
    assert!(w.assignment.iter().all(|(_, l)| l.len() == 2));
    assert!(!naive_choice_exists(&cycle(3), &w.assignment, 1));

    let k33 = complete_bipartite(3, 3);
    let (ok, w) = is_ab_choosable(&k33, ChoosabilityQuery::new(2, 1).unwrap(), &Budget::default()).unwrap();
    assert!(!ok);
    assert!(w.assignment.iter().all(|(_, l)| l.len() == 2));
    assert!(!naive_choice_exists(&k33, &w.assignment, 1));
}

#[test]
fn positive_witness_carries_a_valid_choice() {
    let g = gen_theta(2, 2, 2).unwrap();
    let (ok, w) = is_ab_choosable(&g, ChoosabilityQuery::new(4, 2).unwrap(), &Budget::default()).unwrap();
    assert!(ok);
    assert!(verify_choice(&g, &w.assignment, w.choice.as_ref().unwrap(), 2));
    let json = serde_json::to_value(&w).unwrap();
    assert_eq!(json["verdict"], "choosable");
}

#[test]
fn f_choosability_examples() {
    let k2 = complete(2);
    let ones = BTreeMap::from([(0, 1), (1, 1)]);
    let (ok, w) = is_f_choosable(&k2, &ones, &Budget::default()).unwrap();
    assert!(!ok);
    assert_eq!(w.assignment.get(0), w.assignment.get(1));
    let twos = BTreeMap::from([(0, 2), (1, 2)]);
    assert!(is_f_choosable(&k2, &twos, &Budget::default()).unwrap().0);
    let alt = BTreeMap::from([(0, 2), (1, 3), (2, 2), (3, 3)]);
    assert!(is_f_choosable(&cycle(4), &alt, &Budget::default()).unwrap().0);
    assert!(is_f_choosable(&k2, &BTreeMap::from([(0, 1)]), &Budget::default()).is_err());
}

#[test]
fn ch_k_examples() {
    let b = Budget::new(u64::MAX);
    assert_eq!(ch_k(&complete_bipartite(2, 4), 1, &b).unwrap(), 3);
    assert_eq!(ch_k(&cycle(5), 1, &b).unwrap(), 3);
    assert_eq!(ch_k(&complete(3), 2, &b).unwrap(), 6);
}

#[test]
fn strong_choosability_examples() {
    let b = Budget::new(u64::MAX);
    assert!(is_strongly_k_choosable(&matching(2), 2, &b).unwrap());
    assert!(is_strongly_k_choosable(&complete(2), 2, &b).unwrap());
    assert!(is_strongly_k_choosable(&Graph::empty(4), 2, &b).unwrap());
    // A triangle plus a disjoint vertex is not strongly 2-choosable: pair the spare vertex
    // with nothing and the triangle already needs 3 colors.
    let mut g = complete(3);
    g.add_vertex(3);
    assert!(!is_strongly_k_choosable(&g, 2, &b).unwrap());
}

#[test]
fn maximal_partitions_cover_every_bounded_family() {
    let parts = maximal_bounded_partitions(&[0, 1, 2, 3], 2);
    // the three perfect matchings
    assert_eq!(parts.len(), 3);
    let parts = maximal_bounded_partitions(&[0, 1, 2], 2);
    assert_eq!(parts.len(), 3);
    assert!(parts.iter().all(|p| p.len() == 2));
}

#[test]
fn budget_is_enforced() {
    let g = complete_bipartite(3, 3);
    let r = is_ab_choosable(&g, ChoosabilityQuery::new(3, 1).unwrap(), &Budget::new(10));
    assert_eq!(r.unwrap_err(), Error::BudgetExceeded(10));
    assert!(ChoosabilityQuery::new(1, 2).is_err());
}

#[test]
fn solver_agrees_with_naive_search() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    let graphs = [cycle(5), complete(4), complete_bipartite(2, 3), petersen(), path(4)];
    for g in &graphs {
        for b in 1..=2 {
            for _ in 0..150 {
                let size = b + 1 + (g.max_degree() > 3) as usize;
                let pool: Vec<Color> = (0..size + 3).collect();
                let s = ListAssignment::from_lists(
                    g.vertices()
                        .map(|v| (v, pool.choose_multiple(&mut rng, size).copied().collect::<Vec<_>>())),
                );
                let found = find_choice(g, &s, b, &Budget::new(u64::MAX)).unwrap();
                if g.order() <= 6 {
                    assert_eq!(found.is_some(), naive_choice_exists(g, &s, b));
                }
                if let Some(c) = found {
                    assert!(verify_choice(g, &s, &c, b));
                }
            }
        }
    }
}

#[test]
fn reductions_agree_on_small_graphs() {
    for n in 1..=4 {
        for g in all_graphs(n) {
            for a in 1..=3 {
                for b in 1..=a {
                    let q = ChoosabilityQuery::new(a, b).unwrap();
                    let run = |r| is_ab_choosable_with(&g, q, r, &Budget::new(u64::MAX)).unwrap().0;
                    let full = run(Reduction::Full);
                    assert_eq!(full, run(Reduction::Orbit), "{g:?} ({a}:{b})");
                    assert_eq!(full, run(Reduction::FirstUse), "{g:?} ({a}:{b})");
                    if n <= 3 && a <= 2 {
                        assert_eq!(full, run(Reduction::Raw), "{g:?} ({a}:{b})");
                    }
                }
            }
        }
    }
}

#[test]
fn bad_witnesses_are_certified() {
    for g in connected_graphs_up_to(5) {
        for (a, b) in [(2, 1), (3, 1), (4, 2)] {
            let (ok, w) = is_ab_choosable(&g, ChoosabilityQuery::new(a, b).unwrap(), &Budget::new(u64::MAX)).unwrap();
            assert!(w.assignment.iter().all(|(_, l)| l.len() == a));
            if ok {
                assert!(verify_choice(&g, &w.assignment, w.choice.as_ref().unwrap(), b));
            } else {
                assert!(!naive_choice_exists(&g, &w.assignment, b));
            }
        }
    }
}

#[test]
fn choosability_is_monotone_in_list_size() {
    for n in 1..=5 {
        for g in all_graphs(n) {
            for b in 1..=2 {
                let mut prev = false;
                for a in b..=4 {
                    let now = ab(&g, a, b);
                    assert!(!prev || now, "{g:?} ({a}:{b})");
                    prev = now;
                }
            }
        }
    }
}

#[test]
fn ch_k_at_least_k_omega_with_equality_on_chordal_graphs() {
    for g in connected_graphs_up_to(4) {
        let omega = crate::graph::clique_number(&g);
        for k in 1..=2 {
            let c = ch_k(&g, k, &Budget::new(u64::MAX)).unwrap();
            assert!(c >= k * omega);
            if is_triangulated(&g).is_some() {
                assert_eq!(c, k * omega, "{g:?}");
            }
        }
    }
}

#[test]
fn coloring_helpers() {
    let b = Budget::new(u64::MAX);
    assert_eq!(chromatic_number(&petersen(), &b).unwrap(), 3);
    assert_eq!(chromatic_number(&cycle(7), &b).unwrap(), 3);
    assert_eq!(chromatic_number(&complete_bipartite(3, 4), &b).unwrap(), 2);
    assert!(k_coloring(&complete(4), 3, &b).unwrap().is_none());
    let c = k_coloring(&gen_hamilton_clique(1, 3).unwrap(), 3, &b).unwrap();
    assert!(c.is_some());
}
