//! The 2-choosable family: polynomial recognition, an exact `(4:2)` chooser on its members,
//! the compatibility calculus for 2-subsets of 4-lists, and the block blow-up that turns a
//! `(2mk:mk)` choice into a `2m`-list coloring.

mod calculus;
pub mod checks;

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{classify_core, components, core_with_trace, theta_decomposition, Graph, Vertex};
use crate::lists::{Choice, Color, ColorSet, ListAssignment};

pub use calculus::{
    classify_special, comp_sequence, good_subsets, incomp_k22, two_subsets, FourSetSequence,
    K22Report, Pair, PairRelation, SpecialTag, POSITION_PAIRS,
};

/// True iff every component's core is `K1`, an even cycle, or `Θ_{2,2,2m}`.
pub fn is_2_choosable(g: &Graph) -> bool {
    components(g).iter().all(|part| {
        classify_core(&g.induced(part)).is_ok_and(|c| c.is_two_choosable_family())
    })
}

fn pairs_of(list: &ColorSet) -> Vec<ColorSet> {
    let v: Vec<Color> = list.iter().copied().collect();
    let mut out = Vec::new();
    for i in 0..v.len() {
        for j in i + 1..v.len() {
            out.push([v[i], v[j]].into_iter().collect());
        }
    }
    out
}

/// 2-subsets for `path`, each disjoint from its predecessor, the first from `start`, the last
/// from `end`.
fn chain(s: &ListAssignment, path: &[Vertex], start: &ColorSet, end: &ColorSet) -> Option<Vec<ColorSet>> {
    let Some((&first, _)) = path.split_first() else {
        return start.is_disjoint(end).then(Vec::new);
    };
    // layer[i]: candidates at path[i] with index of a compatible predecessor
    let mut layers: Vec<Vec<(ColorSet, usize)>> = vec![pairs_of(&s.0[&first])
        .into_iter()
        .filter(|c| c.is_disjoint(start))
        .map(|c| (c, 0))
        .collect()];
    for &v in &path[1..] {
        let prev = layers.last().unwrap();
        let layer: Vec<(ColorSet, usize)> = pairs_of(&s.0[&v])
            .into_iter()
            .filter_map(|c| prev.iter().position(|(p, _)| p.is_disjoint(&c)).map(|i| (c, i)))
            .collect();
        layers.push(layer);
    }
    let mut idx = layers.last().unwrap().iter().position(|(c, _)| c.is_disjoint(end))?;
    let mut out = Vec::with_capacity(path.len());
    for layer in layers.iter().rev() {
        out.push(layer[idx].0.clone());
        idx = layer[idx].1;
    }
    out.reverse();
    Some(out)
}

fn cycle_order(c: &Graph) -> Vec<Vertex> {
    let start = c.vertices().next().unwrap();
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = *c.neighbors(start).first().unwrap();
    while cur != start {
        order.push(cur);
        let next = *c.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    order
}

fn choose_core(core: &Graph, s: &ListAssignment) -> Option<Choice> {
    let mut out = Choice::new();
    if core.order() == 1 {
        let v = core.vertices().next().unwrap();
        out.insert(v, pairs_of(&s.0[&v]).into_iter().next()?);
        return Some(out);
    }
    if let Some((u, v, paths)) = theta_decomposition(core) {
        for cu in pairs_of(&s.0[&u]) {
            for cv in pairs_of(&s.0[&v]) {
                let found: Option<Vec<Vec<ColorSet>>> = paths.iter().map(|p| chain(s, p, &cu, &cv)).collect();
                if let Some(found) = found {
                    out.insert(u, cu);
                    out.insert(v, cv);
                    for (p, sets) in paths.iter().zip(found) {
                        out.0.extend(p.iter().copied().zip(sets));
                    }
                    return Some(out);
                }
            }
        }
        return None;
    }
    let order = cycle_order(core);
    for c0 in pairs_of(&s.0[&order[0]]) {
        if let Some(sets) = chain(s, &order[1..], &c0, &c0) {
            out.insert(order[0], c0);
            out.0.extend(order[1..].iter().copied().zip(sets));
            return Some(out);
        }
    }
    None
}

/// A `(4:2)` choice on a 2-choosable graph: each core is solved exactly over 2-subset states,
/// then stripped leaves are served in reverse order.
pub fn choose_42(g: &Graph, s: &ListAssignment) -> Result<Choice> {
    s.check_sizes(g, |_| 4)?;
    if !is_2_choosable(g) {
        return Err(Error::NotTwoChoosable);
    }
    let mut out = Choice::new();
    for part in components(g) {
        let trace = core_with_trace(&g.induced(&part));
        let c = choose_core(&trace.core, s).ok_or(Error::NotTwoChoosable)?;
        out.0.extend(c.0);
        for &(v, u) in trace.removed.iter().rev() {
            let free: ColorSet = s.0[&v].difference(&out.0[&u]).copied().take(2).collect();
            out.insert(v, free);
        }
    }
    Ok(out)
}

/// `T(v)`: color `c` becomes the block `k·c .. k·c + k`.
pub fn blowup_lists(s: &ListAssignment, k: usize) -> ListAssignment {
    ListAssignment(
        s.iter()
            .map(|(v, list)| (v, list.iter().flat_map(|&c| c * k..c * k + k).collect()))
            .collect(),
    )
}

/// Turns a `(2mk:mk)` choice over blown-up lists into a proper coloring: each vertex takes the
/// smallest color whose block it holds a strict majority of.
pub fn blowup_reduce(g: &Graph, m: usize, k: usize, choice: &Choice) -> Result<BTreeMap<Vertex, Color>> {
    if k % 2 == 0 || m == 0 {
        return Err(Error::InvalidParameter(format!("need odd k and positive m, got k = {k}, m = {m}")));
    }
    let mut f = BTreeMap::new();
    for v in g.vertices() {
        let chosen = choice.get(v).ok_or(Error::MissingList(v))?;
        if chosen.len() != m * k {
            return Err(Error::SizeMismatch(format!("vertex {v} holds {} colors, expected {}", chosen.len(), m * k)));
        }
        let mut counts: BTreeMap<Color, usize> = BTreeMap::new();
        for &x in chosen {
            *counts.entry(x / k).or_default() += 1;
        }
        let c = counts
            .iter()
            .find(|&(_, &n)| 2 * n > k)
            .map(|(&c, _)| c)
            .ok_or(Error::NoMajorityBlock(v))?;
        f.insert(v, c);
    }
    Ok(f)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gadgets::gen_theta;
    use crate::graph::catalog::connected_graphs_up_to;
    use crate::graph::families::*;
    use crate::lists::verify_choice;
    use crate::oracle::{find_choice, is_ab_choosable, Budget, ChoosabilityQuery};
    use proptest::prelude::*;

    fn lists(g: &Graph, raw: &[&[Color]]) -> ListAssignment {
        ListAssignment::from_lists(g.vertices().zip(raw.iter().map(|l| l.to_vec())))
    }

    #[test]
    fn decision_examples() {
        assert!(is_2_choosable(&cycle(6)));
        assert!(is_2_choosable(&complete_bipartite(2, 3)));
        assert!(!is_2_choosable(&complete_bipartite(3, 3)));
        assert!(!is_2_choosable(&cycle(5)));
        assert!(is_2_choosable(&path(5)));
        assert!(is_2_choosable(&Graph::empty(3)));
        assert!(is_2_choosable(&gen_theta(2, 2, 4).unwrap()));
        assert!(!is_2_choosable(&gen_theta(2, 4, 4).unwrap()));
        let mut two = cycle(4);
        two.add_shifted(&cycle(6), 10);
        assert!(is_2_choosable(&two));
        two.add_shifted(&complete(3), 20);
        assert!(!is_2_choosable(&two));
    }

    #[test]
    fn decision_matches_oracle_on_small_graphs() {
        for g in connected_graphs_up_to(5) {
            let (ok, _) = is_ab_choosable(&g, ChoosabilityQuery::new(2, 1).unwrap(), &Budget::new(u64::MAX)).unwrap();
            assert_eq!(is_2_choosable(&g), ok, "{g:?}");
        }
    }

    #[test]
    fn uniform_c4_alternates_complements() {
        let g = cycle(4);
        let s = ListAssignment::uniform(&g, 1..=4);
        let c = choose_42(&g, &s).unwrap();
        assert!(verify_choice(&g, &s, &c, 2));
        assert_eq!(c.get(0), c.get(2));
        let both: ColorSet = c.get(0).unwrap().union(c.get(1).unwrap()).copied().collect();
        assert_eq!(both.len(), 4);
    }

    #[test]
    fn choose_42_rejects_outside_family() {
        let g = complete_bipartite(3, 3);
        let s = ListAssignment::uniform(&g, 0..4);
        assert_eq!(choose_42(&g, &s).unwrap_err(), Error::NotTwoChoosable);
        let small = ListAssignment::uniform(&cycle(4), 0..3);
        assert!(matches!(choose_42(&cycle(4), &small), Err(Error::ListTooSmall { .. })));
    }

    #[test]
    fn choose_42_with_pendant_trees() {
        // C6 with a path hanging off vertex 0 and a leaf on vertex 3
        let mut g = cycle(6);
        for v in 6..9 {
            g.add_vertex(v);
        }
        g.add_edge(0, 6);
        g.add_edge(6, 7);
        g.add_edge(3, 8);
        let s = lists(
            &g,
            &[
                &[1, 2, 3, 4],
                &[1, 2, 3, 5],
                &[1, 2, 4, 5],
                &[2, 3, 4, 6],
                &[1, 3, 5, 6],
                &[2, 4, 5, 6],
                &[1, 2, 3, 4],
                &[1, 2, 3, 4],
                &[3, 4, 5, 6],
            ],
        );
        let c = choose_42(&g, &s).unwrap();
        assert!(verify_choice(&g, &s, &c, 2));
    }

    #[test]
    fn blowup_examples() {
        let g = complete(2);
        let s = lists(&g, &[&[1, 2], &[2, 3]]);
        let t = blowup_lists(&s, 3);
        assert_eq!(t.get(0).unwrap().len(), 6);
        // every (6:3) choice over the blocks reduces to a proper coloring from S
        let t0: Vec<Color> = t.get(0).unwrap().iter().copied().collect();
        let mut count = 0;
        for m0 in 0u32..64 {
            if m0.count_ones() != 3 {
                continue;
            }
            let c0: ColorSet = (0..6).filter(|i| m0 >> i & 1 == 1).map(|i| t0[i]).collect();
            let rest: Vec<Color> = t.get(1).unwrap().difference(&c0).copied().collect();
            if rest.len() < 3 {
                continue;
            }
            let c1: ColorSet = rest[..3].iter().copied().collect();
            let choice = Choice(BTreeMap::from([(0, c0), (1, c1)]));
            assert!(verify_choice(&g, &t, &choice, 3));
            let f = blowup_reduce(&g, 1, 3, &choice).unwrap();
            assert_ne!(f[&0], f[&1]);
            assert!(s.get(0).unwrap().contains(&f[&0]) && s.get(1).unwrap().contains(&f[&1]));
            count += 1;
        }
        assert!(count > 0);
        let single = Choice(BTreeMap::from([(0, ColorSet::from([2])), (1, ColorSet::from([3]))]));
        assert_eq!(blowup_reduce(&g, 1, 1, &single).unwrap(), BTreeMap::from([(0, 2), (1, 3)]));
        assert!(blowup_reduce(&g, 1, 2, &single).is_err());
    }

    #[test]
    fn blowup_on_c4_extracts_list_colorings() {
        let g = cycle(4);
        let budget = Budget::new(u64::MAX);
        for raw in [[[0, 1], [1, 2], [2, 3], [3, 0]], [[0, 1], [0, 1], [0, 1], [0, 1]], [[0, 1], [0, 2], [1, 2], [0, 2]]] {
            let s = ListAssignment::from_lists(raw.iter().enumerate().map(|(v, l)| (v, l.to_vec())));
            let t = blowup_lists(&s, 3);
            let c = find_choice(&g, &t, 3, &budget).unwrap().unwrap();
            let f = blowup_reduce(&g, 1, 3, &c).unwrap();
            for (u, v) in g.edges() {
                assert_ne!(f[&u], f[&v]);
            }
            assert!(g.vertices().all(|v| s.get(v).unwrap().contains(&f[&v])));
        }
    }

    proptest! {
        #[test]
        fn choose_42_always_verifies(
            which in 0usize..4,
            raw in prop::collection::vec(prop::sample::subsequence((0..7).collect::<Vec<Color>>(), 4), 8),
        ) {
            let g = [cycle(4), cycle(6), gen_theta(2, 2, 2).unwrap(), gen_theta(2, 2, 4).unwrap()][which].clone();
            let s = ListAssignment::from_lists(g.vertices().zip(raw.iter().cloned()));
            let c = choose_42(&g, &s).unwrap();
            prop_assert!(verify_choice(&g, &s, &c, 2));
        }
    }
}
