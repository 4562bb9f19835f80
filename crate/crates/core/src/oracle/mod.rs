//! Exhaustive decision procedures: (a:b)-, f- and strong choosability, `ch_k`, and exact
//! list choosers and colorers for small graphs.

mod enumerate;
mod solve;

use std::cell::Cell;
use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{clique_number, components, is_connected, Graph, Vertex};
use crate::lists::{Choice, Color, ColorSet, ListAssignment};
pub use crate::lists::verify_choice;
use enumerate::{for_each_assignment, Flow};
use solve::{solve, Dense};

/// Default node budget shared by enumeration leaves and solver nodes.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

/// Node counter with a hard limit.
#[derive(Clone, Debug)]
pub struct Budget {
    limit: u64,
    used: Cell<u64>,
}

impl Budget {
    pub fn new(limit: u64) -> Self {
        Self {
            limit,
            used: Cell::new(0),
        }
    }

    pub fn used(&self) -> u64 {
        self.used.get()
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub(crate) fn spend(&self, n: u64) -> Result<()> {
        self.used.set(self.used.get() + n);
        if self.used.get() > self.limit {
            Err(Error::BudgetExceeded(self.limit))
        } else {
            Ok(())
        }
    }
}

impl Default for Budget {
    fn default() -> Self {
        Self::new(DEFAULT_BUDGET)
    }
}

/// How aggressively list assignments are pruned by symmetry and dominance.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Reduction {
    Raw,
    FirstUse,
    Orbit,
    #[default]
    Full,
}

/// `(a:b)` with `1 <= b <= a`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ChoosabilityQuery {
    pub a: usize,
    pub b: usize,
}

impl ChoosabilityQuery {
    pub fn new(a: usize, b: usize) -> Result<Self> {
        if b == 0 || b > a {
            return Err(Error::InvalidParameter(format!("need 1 <= b <= a, got a = {a}, b = {b}")));
        }
        Ok(Self { a, b })
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Choosable,
    BadAssignment,
}

/// Outcome certificate: a bad assignment, or a sample assignment with its choice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Witness {
    pub assignment: ListAssignment,
    pub verdict: Verdict,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub choice: Option<Choice>,
}

/// Dense copy of one component, positions in maximum-cardinality-search order.
struct Component {
    dense: Dense,
    ids: Vec<Vertex>,
}

fn mcs_order(g: &Graph, part: &BTreeSet<Vertex>) -> Vec<Vertex> {
    let mut order = Vec::with_capacity(part.len());
    let mut placed = BTreeSet::new();
    while placed.len() < part.len() {
        let v = *part
            .iter()
            .filter(|v| !placed.contains(*v))
            .max_by_key(|&&v| {
                let weight = g.neighbors(v).iter().filter(|w| placed.contains(*w)).count();
                (weight, g.degree(v), std::cmp::Reverse(v))
            })
            .unwrap();
        placed.insert(v);
        order.push(v);
    }
    order
}

impl Component {
    fn new(g: &Graph, part: &BTreeSet<Vertex>) -> Result<Self> {
        if part.len() > 64 {
            return Err(Error::InvalidParameter("components above 64 vertices are out of reach".into()));
        }
        let ids = mcs_order(g, part);
        let pos: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let adj = ids
            .iter()
            .map(|v| g.neighbors(*v).iter().fold(0u64, |m, w| m | 1 << pos[w]))
            .collect();
        Ok(Self {
            dense: Dense { adj },
            ids,
        })
    }

    fn lists_out(&self, lists: &[u128], offset: Color) -> ListAssignment {
        ListAssignment(
            self.ids
                .iter()
                .zip(lists)
                .map(|(&v, &m)| (v, mask_colors(m, offset)))
                .collect(),
        )
    }
}

fn mask_colors(mut m: u128, offset: Color) -> ColorSet {
    let mut out = ColorSet::new();
    while m != 0 {
        out.insert(offset + m.trailing_zeros() as Color);
        m &= m - 1;
    }
    out
}

fn check_sizes(sizes: impl Iterator<Item = usize>) -> Result<Vec<usize>> {
    let sizes: Vec<usize> = sizes.collect();
    if sizes.iter().sum::<usize>() > 128 {
        return Err(Error::InvalidParameter("more than 128 colors in play".into()));
    }
    Ok(sizes)
}

/// Vertices that can always be served last: `size(v) >= b·(deg(v) + 1)` among those left.
fn peelable(g: &Graph, size: &impl Fn(Vertex) -> usize, b: usize) -> BTreeSet<Vertex> {
    let mut left: BTreeSet<Vertex> = g.vertices().collect();
    let mut out = BTreeSet::new();
    while let Some(v) = left
        .iter()
        .copied()
        .find(|&v| size(v) >= b * (g.neighbors(v).intersection(&left).count() + 1))
    {
        left.remove(&v);
        out.insert(v);
    }
    out
}

/// Calls `visit` on list assignments of a connected graph with `|S(v)| = size(v)`, one per
/// orbit under color renaming with `Reduction::Orbit`. Stops early when `visit` returns false.
/// Returns the number of assignments visited.
pub fn for_each_list_assignment(
    g: &Graph,
    size: impl Fn(Vertex) -> usize,
    reduction: Reduction,
    budget: &Budget,
    mut visit: impl FnMut(&ListAssignment) -> bool,
) -> Result<u64> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    if !is_connected(g) {
        return Err(Error::DisconnectedInput(components(g).len()));
    }
    let part: BTreeSet<Vertex> = g.vertices().collect();
    let comp = Component::new(g, &part)?;
    let sizes = check_sizes(comp.ids.iter().map(|&v| size(v)))?;
    let mut count = 0;
    let mut inner = |lists: &[u128]| -> Result<Flow> {
        count += 1;
        Ok(if visit(&comp.lists_out(lists, 0)) { Flow::Continue } else { Flow::Stop })
    };
    for_each_assignment(&comp.dense, &sizes, reduction, budget, &mut inner)?;
    Ok(count)
}

/// Decides whether every assignment with `|S(v)| = size(v)` admits a `b`-fold choice.
pub fn decide_sizes(
    g: &Graph,
    size: impl Fn(Vertex) -> usize,
    b: usize,
    reduction: Reduction,
    budget: &Budget,
) -> Result<(bool, Witness)> {
    let peeled = if reduction == Reduction::Full {
        peelable(g, &size, b)
    } else {
        BTreeSet::new()
    };
    let rest: BTreeSet<Vertex> = g.vertices().filter(|v| !peeled.contains(v)).collect();
    let (ok, mut w) = decide_unpeeled(g, &g.induced(&rest), &size, b, reduction, budget)?;
    if let Some(choice) = w.choice.as_mut() {
        let mut offset = w.assignment.all_colors().last().map_or(0, |c| c + 1);
        for &v in &peeled {
            let list: ColorSet = (offset..offset + size(v)).collect();
            offset += size(v);
            choice.insert(v, list.iter().copied().take(b).collect());
            w.assignment.insert(v, list);
        }
    }
    Ok((ok, w))
}

fn decide_unpeeled(
    g: &Graph,
    core: &Graph,
    size: &impl Fn(Vertex) -> usize,
    b: usize,
    reduction: Reduction,
    budget: &Budget,
) -> Result<(bool, Witness)> {
    let mut assignment = ListAssignment::new();
    let mut choice = Choice::new();
    let mut offset = 0;
    for part in components(core) {
        let comp = Component::new(core, &part)?;
        let sizes = check_sizes(comp.ids.iter().map(|&v| size(v)))?;
        let mut found_bad: Option<Vec<u128>> = None;
        let mut sample: Option<(Vec<u128>, Vec<u128>)> = None;
        let mut visit = |lists: &[u128]| -> Result<Flow> {
            match solve(&comp.dense, lists, b, budget)? {
                Some(c) => {
                    if sample.is_none() {
                        sample = Some((lists.to_vec(), c));
                    }
                    Ok(Flow::Continue)
                }
                None => {
                    found_bad = Some(lists.to_vec());
                    Ok(Flow::Stop)
                }
            }
        };
        for_each_assignment(&comp.dense, &sizes, reduction, budget, &mut visit)?;
        if let Some(lists) = found_bad {
            assignment.0.extend(comp.lists_out(&lists, offset).0);
            offset += lists.iter().fold(0u128, |m, l| m | l).count_ones() as usize;
            for v in g.vertices() {
                if !assignment.0.contains_key(&v) {
                    assignment.insert(v, (offset..offset + size(v)).collect());
                    offset += size(v);
                }
            }
            return Ok((
                false,
                Witness {
                    assignment,
                    verdict: Verdict::BadAssignment,
                    choice: None,
                },
            ));
        }
        let (lists, chosen) = sample.expect("at least one assignment is enumerated");
        assignment.0.extend(comp.lists_out(&lists, offset).0);
        for (&v, &m) in comp.ids.iter().zip(&chosen) {
            choice.insert(v, mask_colors(m, offset));
        }
        offset += lists.iter().fold(0u128, |m, l| m | l).count_ones() as usize;
    }
    Ok((
        true,
        Witness {
            assignment,
            verdict: Verdict::Choosable,
            choice: Some(choice),
        },
    ))
}

/// `(a:b)`-choosability by exhaustive search over list assignments up to color relabeling.
pub fn is_ab_choosable(g: &Graph, q: ChoosabilityQuery, budget: &Budget) -> Result<(bool, Witness)> {
    is_ab_choosable_with(g, q, Reduction::Full, budget)
}

pub fn is_ab_choosable_with(
    g: &Graph,
    q: ChoosabilityQuery,
    reduction: Reduction,
    budget: &Budget,
) -> Result<(bool, Witness)> {
    decide_sizes(g, |_| q.a, q.b, reduction, budget)
}

/// Whether every assignment with `|S(v)| = f(v)` admits a proper coloring from the lists.
pub fn is_f_choosable(g: &Graph, f: &BTreeMap<Vertex, usize>, budget: &Budget) -> Result<(bool, Witness)> {
    for v in g.vertices() {
        match f.get(&v) {
            Some(&x) if x >= 1 => {}
            Some(_) => return Err(Error::InvalidParameter(format!("f({v}) must be positive"))),
            None => return Err(Error::InvalidParameter(format!("f({v}) missing"))),
        }
    }
    decide_sizes(g, |v| f[&v], 1, Reduction::Full, budget)
}

/// Least `n` with `g` `(n:k)`-choosable, searching upward from `k·ω(g)`.
pub fn ch_k(g: &Graph, k: usize, budget: &Budget) -> Result<usize> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let mut n = (k * clique_number(g)).max(k);
    loop {
        if is_ab_choosable(g, ChoosabilityQuery::new(n, k)?, budget)?.0 {
            return Ok(n);
        }
        n += 1;
    }
}

/// A `b`-fold choice from the given lists, if one exists.
pub fn find_choice(g: &Graph, s: &ListAssignment, b: usize, budget: &Budget) -> Result<Option<Choice>> {
    let colors: Vec<Color> = g
        .vertices()
        .map(|v| s.list(v).map(|l| l.iter().copied().collect::<Vec<_>>()))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .flatten()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if colors.len() > 128 {
        return Err(Error::InvalidParameter("more than 128 distinct colors".into()));
    }
    let index: BTreeMap<Color, usize> = colors.iter().enumerate().map(|(i, &c)| (c, i)).collect();
    let mut choice = Choice::new();
    for part in components(g) {
        let comp = Component::new(g, &part)?;
        let lists: Vec<u128> = comp
            .ids
            .iter()
            .map(|v| s.0[v].iter().fold(0u128, |m, c| m | 1 << index[c]))
            .collect();
        match solve(&comp.dense, &lists, b, budget)? {
            Some(chosen) => {
                for (&v, &m) in comp.ids.iter().zip(&chosen) {
                    choice.insert(v, mask_colors(m, 0).into_iter().map(|i| colors[i]).collect());
                }
            }
            None => return Ok(None),
        }
    }
    Ok(Some(choice))
}

/// Proper coloring with colors `0..k`, if one exists.
pub fn k_coloring(g: &Graph, k: usize, budget: &Budget) -> Result<Option<BTreeMap<Vertex, Color>>> {
    if k > 128 {
        return Err(Error::InvalidParameter("more than 128 colors".into()));
    }
    let s = ListAssignment::uniform(g, 0..k);
    Ok(find_choice(g, &s, 1, budget)?.map(|c| c.iter().map(|(v, set)| (v, *set.first().unwrap())).collect()))
}

pub fn chromatic_number(g: &Graph, budget: &Budget) -> Result<usize> {
    let mut k = clique_number(g);
    while k_coloring(g, k, budget)?.is_none() {
        k += 1;
    }
    Ok(k)
}

/// Set partitions of `vertices` into blocks of size at most `k` where no two blocks fit
/// together in one block of size `k`.
pub fn maximal_bounded_partitions(vertices: &[Vertex], k: usize) -> Vec<Vec<Vec<Vertex>>> {
    fn rec(rest: &[Vertex], k: usize, blocks: &mut Vec<Vec<Vertex>>, out: &mut Vec<Vec<Vec<Vertex>>>) {
        let Some((&v, tail)) = rest.split_first() else {
            let sizes: Vec<usize> = blocks.iter().map(Vec::len).collect();
            let maximal = (0..sizes.len()).all(|i| (i + 1..sizes.len()).all(|j| sizes[i] + sizes[j] > k));
            if maximal {
                out.push(blocks.clone());
            }
            return;
        };
        for i in 0..blocks.len() {
            if blocks[i].len() < k {
                blocks[i].push(v);
                rec(tail, k, blocks, out);
                blocks[i].pop();
            }
        }
        blocks.push(vec![v]);
        rec(tail, k, blocks, out);
        blocks.pop();
    }
    let mut out = Vec::new();
    rec(vertices, k, &mut Vec::new(), &mut out);
    out
}

/// `[g, V_1, ..., V_r]`, checked for `k`-choosability over every family of disjoint parts of
/// size at most `k`. Coarser families add edges, so maximal ones suffice.
pub fn is_strongly_k_choosable(g: &Graph, k: usize, budget: &Budget) -> Result<bool> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    let ids: Vec<Vertex> = g.vertices().collect();
    let mut seen: BTreeSet<Vec<(Vertex, Vertex)>> = BTreeSet::new();
    for parts in maximal_bounded_partitions(&ids, k) {
        let sets: Vec<BTreeSet<Vertex>> = parts.into_iter().map(|p| p.into_iter().collect()).collect();
        let h = crate::strong::augment(g, &sets)?;
        if !seen.insert(h.edges().collect()) {
            continue;
        }
        if !is_ab_choosable(&h, ChoosabilityQuery::new(k, 1)?, budget)?.0 {
            return Ok(false);
        }
    }
    Ok(true)
}

#[cfg(test)]
mod tests;
