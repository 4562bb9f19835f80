//! Kernels of odd-cycle-free digraphs and the kernel-driven multi-chooser built on them.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use crate::error::{Error, Result};
use crate::graph::theta_decomposition;
use crate::graph::{
    components, find_even_hole_or_theta, is_complete, is_cycle, is_triangulated, odd_directed_cycle, scc, Digraph,
    Graph, Vertex,
};
use crate::lists::{smallest, Choice, Color, ColorSet, ListAssignment};
use crate::orientation::{orient_degeneracy, Orientation};

/// Independent set `K` such that every vertex outside `K` has an out-neighbor in `K`.
///
/// Repeatedly takes every sink of what is left, or when there is none a sink strongly
/// connected component split by BFS depth parity (keeping the side of its smallest vertex),
/// and discards every in-neighbor of the taken vertices.
pub fn kernel(d: &Digraph) -> Result<BTreeSet<Vertex>> {
    if let Some(cycle) = odd_directed_cycle(d) {
        return Err(Error::OddCycle(cycle));
    }
    Ok(kernel_unchecked(d))
}

fn kernel_unchecked(d: &Digraph) -> BTreeSet<Vertex> {
    kernel_within(d, d.vertices().collect())
}

/// Kernel of the subdigraph induced by `alive`.
fn kernel_within(d: &Digraph, mut alive: BTreeSet<Vertex>) -> BTreeSet<Vertex> {
    let mut k = BTreeSet::new();
    while !alive.is_empty() {
        let sinks: Vec<Vertex> = alive
            .iter()
            .copied()
            .filter(|&v| d.out_neighbors(v).is_disjoint(&alive))
            .collect();
        let side = if sinks.is_empty() {
            let sub = d.induced(&alive);
            let parts = scc(&sub);
            parity_side(&sub, parts.components.last().expect("non-empty digraph"))
        } else {
            sinks
        };
        let taken: BTreeSet<Vertex> = side.iter().copied().collect();
        alive.retain(|&u| !taken.contains(&u) && d.out_neighbors(u).is_disjoint(&taken));
        k.extend(side);
    }
    k
}

/// Vertices of the strongly connected `comp` at even BFS depth from its smallest vertex.
fn parity_side(d: &Digraph, comp: &[Vertex]) -> Vec<Vertex> {
    let members: BTreeSet<Vertex> = comp.iter().copied().collect();
    let root = *members.first().unwrap();
    let mut depth = BTreeMap::from([(root, 0usize)]);
    let mut queue = VecDeque::from([root]);
    while let Some(u) = queue.pop_front() {
        for &w in d.out_neighbors(u) {
            if members.contains(&w) && !depth.contains_key(&w) {
                depth.insert(w, depth[&u] + 1);
                queue.push_back(w);
            }
        }
    }
    debug_assert!(members
        .iter()
        .all(|&u| d.out_neighbors(u).iter().filter(|w| members.contains(w)).all(|w| depth[w] % 2 != depth[&u] % 2)));
    members.into_iter().filter(|v| depth[v] % 2 == 0).collect()
}

/// Choice with iteration count, as produced by the multi-chooser.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiChoice {
    pub choice: Choice,
    pub iterations: usize,
}

/// `k` colors per vertex, disjoint along every arc, from lists with
/// `|S(v)| >= k(d⁺(v) + 1)`. Each round takes the smallest remaining color held by an
/// unsaturated vertex and awards it to a kernel of the vertices carrying it.
pub fn kernel_multichoice(d: &Digraph, k: usize, s: &ListAssignment) -> Result<Choice> {
    kernel_multichoice_ranked(d, k, s, |c| c as u64).map(|m| m.choice)
}

/// As [`kernel_multichoice`], picking the remaining color of least `rank` (ties by value).
pub fn kernel_multichoice_ranked(
    d: &Digraph,
    k: usize,
    s: &ListAssignment,
    rank: impl Fn(Color) -> u64,
) -> Result<MultiChoice> {
    check_list_sizes(d, k, s)?;
    KernelChooser::new(d)?.run(k, s, rank)
}

fn check_list_sizes(d: &Digraph, k: usize, s: &ListAssignment) -> Result<()> {
    for v in d.vertices() {
        let found = s.list(v)?.len();
        let needed = k * (d.out_degree(v) + 1);
        if found < needed {
            return Err(Error::ListTooSmall { vertex: v, needed, found });
        }
    }
    Ok(())
}

/// The multi-chooser bound to one digraph, checked once for odd directed cycles.
#[derive(Clone, Debug)]
pub struct KernelChooser<'a> {
    d: &'a Digraph,
    ids: Vec<Vertex>,
    /// Out-neighborhoods as bitmasks over `ids`, for digraphs of at most 64 vertices.
    out: Option<Vec<u64>>,
}

impl<'a> KernelChooser<'a> {
    pub fn new(d: &'a Digraph) -> Result<Self> {
        if let Some(cycle) = odd_directed_cycle(d) {
            return Err(Error::OddCycle(cycle));
        }
        let ids: Vec<Vertex> = d.vertices().collect();
        let out = (ids.len() <= 64).then(|| {
            let pos: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
            ids.iter()
                .map(|&v| d.out_neighbors(v).iter().fold(0u64, |m, w| m | 1 << pos[w]))
                .collect()
        });
        Ok(Self { d, ids, out })
    }

    pub fn choose(&self, k: usize, s: &ListAssignment) -> Result<Choice> {
        self.choose_ranked(k, s, |c| c as u64).map(|m| m.choice)
    }

    pub fn choose_ranked(&self, k: usize, s: &ListAssignment, rank: impl Fn(Color) -> u64) -> Result<MultiChoice> {
        check_list_sizes(self.d, k, s)?;
        self.run(k, s, rank)
    }

    fn run(&self, k: usize, s: &ListAssignment, rank: impl Fn(Color) -> u64) -> Result<MultiChoice> {
        match &self.out {
            Some(out) => Ok(self.run_dense(out, k, s, rank)),
            None => Ok(self.run_sparse(k, s, rank)),
        }
    }

    fn run_sparse(&self, k: usize, s: &ListAssignment, rank: impl Fn(Color) -> u64) -> MultiChoice {
        let d = self.d;
        let mut order: Vec<Color> = d
            .vertices()
            .flat_map(|v| s.0[&v].iter().copied())
            .collect::<ColorSet>()
            .into_iter()
            .collect();
        order.sort_by_key(|&c| (rank(c), c));
        let mut chosen: BTreeMap<Vertex, ColorSet> = d.vertices().map(|v| (v, ColorSet::new())).collect();
        let mut unsaturated: BTreeSet<Vertex> = if k == 0 { BTreeSet::new() } else { d.vertices().collect() };
        let mut iterations = 0;
        // a color no unsaturated vertex holds stays unheld, so one pass in rank order suffices
        for c in order {
            if unsaturated.is_empty() {
                break;
            }
            let carriers: BTreeSet<Vertex> = unsaturated.iter().copied().filter(|v| s.0[v].contains(&c)).collect();
            if carriers.is_empty() {
                continue;
            }
            for v in kernel_within(d, carriers) {
                let set = chosen.get_mut(&v).unwrap();
                set.insert(c);
                if set.len() == k {
                    unsaturated.remove(&v);
                }
            }
            iterations += 1;
            assert!(iterations <= k * d.order(), "iteration bound exceeded");
        }
        assert!(unsaturated.is_empty(), "an unsaturated vertex always keeps an unused color");
        MultiChoice {
            choice: Choice(chosen),
            iterations,
        }
    }

    /// Same rounds as the sparse path, on bitmasks.
    fn run_dense(&self, out: &[u64], k: usize, s: &ListAssignment, rank: impl Fn(Color) -> u64) -> MultiChoice {
        let mut holders: BTreeMap<Color, u64> = BTreeMap::new();
        for (i, v) in self.ids.iter().enumerate() {
            for &c in &s.0[v] {
                *holders.entry(c).or_default() |= 1 << i;
            }
        }
        let mut order: Vec<(Color, u64)> = holders.into_iter().collect();
        order.sort_by_key(|&(c, _)| (rank(c), c));
        let n = self.ids.len();
        let mut chosen: Vec<ColorSet> = vec![ColorSet::new(); n];
        let mut unsaturated: u64 = if k == 0 || n == 0 { 0 } else { u64::MAX >> (64 - n) };
        let mut iterations = 0;
        for (c, held) in order {
            if unsaturated == 0 {
                break;
            }
            let carriers = held & unsaturated;
            if carriers == 0 {
                continue;
            }
            let mut won = self.kernel_mask(out, carriers);
            while won != 0 {
                let i = won.trailing_zeros() as usize;
                won &= won - 1;
                chosen[i].insert(c);
                if chosen[i].len() == k {
                    unsaturated &= !(1 << i);
                }
            }
            iterations += 1;
            assert!(iterations <= k * n, "iteration bound exceeded");
        }
        assert!(unsaturated == 0, "an unsaturated vertex always keeps an unused color");
        MultiChoice {
            choice: Choice(self.ids.iter().copied().zip(chosen).collect()),
            iterations,
        }
    }

    fn kernel_mask(&self, out: &[u64], mut alive: u64) -> u64 {
        let mut k = 0;
        while alive != 0 {
            let mut sinks = 0;
            let mut rest = alive;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if out[i] & alive == 0 {
                    sinks |= 1 << i;
                }
            }
            if sinks == 0 {
                let left: BTreeSet<Vertex> = self.mask_ids(alive).collect();
                let pos: BTreeMap<Vertex, usize> = self.ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                return kernel_within(self.d, left).iter().fold(k, |m, v| m | 1 << pos[v]);
            }
            k |= sinks;
            let mut keep = 0;
            let mut rest = alive & !sinks;
            while rest != 0 {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                if out[i] & sinks == 0 {
                    keep |= 1 << i;
                }
            }
            alive = keep;
        }
        k
    }

    fn mask_ids(&self, mut m: u64) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::from_fn(move || {
            (m != 0).then(|| {
                let i = m.trailing_zeros() as usize;
                m &= m - 1;
                self.ids[i]
            })
        })
    }
}

/// Multi-choice along a fixed orientation of `g`.
pub fn choose_via_orientation(g: &Graph, orient: &Orientation, k: usize, s: &ListAssignment) -> Result<Choice> {
    if orient.base() != g {
        return Err(Error::InvalidGraph("orientation belongs to another graph".into()));
    }
    kernel_multichoice(orient.digraph(), k, s)
}

/// `k` colors per vertex of a chordal graph from lists of `k·ω(g)` colors.
pub fn choose_chordal(g: &Graph, k: usize, s: &ListAssignment) -> Result<Choice> {
    let peo = is_triangulated(g).ok_or(Error::NotChordal)?;
    let mut later: BTreeSet<Vertex> = g.vertices().collect();
    let mut omega = 0;
    for v in peo {
        later.remove(&v);
        omega = omega.max(1 + g.neighbors(v).intersection(&later).count());
    }
    s.check_sizes(g, |_| k * omega)?;
    if g.is_empty() {
        return Ok(Choice::new());
    }
    let orient = orient_degeneracy(g, omega - 1).expect("chordal graphs are (ω−1)-degenerate");
    kernel_multichoice(orient.digraph(), k, s)
}

/// `k` colors per vertex from lists of `kΔ(g)` colors, for a connected graph that is neither
/// complete nor an odd cycle.
pub fn choose_brooks(g: &Graph, k: usize, s: &ListAssignment) -> Result<Choice> {
    let comps = components(g).len();
    if comps != 1 {
        return Err(Error::DisconnectedInput(comps));
    }
    if is_complete(g) {
        return Err(Error::NotApplicable("graph is complete".into()));
    }
    if is_cycle(g) && g.order() % 2 == 1 {
        return Err(Error::NotApplicable("graph is an odd cycle".into()));
    }
    let delta = g.max_degree();
    s.check_sizes(g, |_| k * delta)?;
    if !g.is_regular() {
        let orient = orient_degeneracy(g, delta - 1).expect("connected non-regular graphs are (Δ−1)-degenerate");
        return kernel_multichoice(orient.digraph(), k, s);
    }
    let h = find_even_hole_or_theta(g)
        .ok_or_else(|| Error::NotApplicable("no induced even cycle with at most one chord".into()))?;
    let mut choice = Choice::new();
    for v in outward_order(g, &h) {
        let taken: ColorSet = g
            .neighbors(v)
            .iter()
            .filter_map(|w| choice.get(*w))
            .flatten()
            .copied()
            .collect();
        let free: ColorSet = s.0[&v].difference(&taken).copied().collect();
        choice.insert(v, smallest(&free, k));
    }
    // Lists on H: drop colors of chosen outside neighbors, then keep exactly k·d_H(v).
    let mut lists = ListAssignment::new();
    for v in h.vertices() {
        let taken: ColorSet = g
            .neighbors(v)
            .iter()
            .filter_map(|w| choice.get(*w))
            .flatten()
            .copied()
            .collect();
        let free: ColorSet = s.0[&v].difference(&taken).copied().collect();
        lists.insert(v, smallest(&free, k * h.degree(v)));
    }
    let inner = if is_cycle(&h) {
        let order = cycle_order(&h);
        kernel_multichoice(Orientation::cyclic(&h, &order)?.digraph(), k, &lists)?
    } else {
        choose_theta_degree(&h, k, &lists)
    };
    choice.0.extend(inner.0);
    Ok(choice)
}

/// Vertices outside `h` by decreasing distance from `h` (ties by id).
fn outward_order(g: &Graph, h: &Graph) -> Vec<Vertex> {
    let mut dist: BTreeMap<Vertex, usize> = h.vertices().map(|v| (v, 0)).collect();
    let mut queue: VecDeque<Vertex> = h.vertices().collect();
    while let Some(u) = queue.pop_front() {
        for &w in g.neighbors(u) {
            if !dist.contains_key(&w) {
                dist.insert(w, dist[&u] + 1);
                queue.push_back(w);
            }
        }
    }
    let mut outside: Vec<Vertex> = g.vertices().filter(|v| !h.contains(*v)).collect();
    outside.sort_by_key(|v| (std::cmp::Reverse(dist[v]), *v));
    outside
}

fn cycle_order(h: &Graph) -> Vec<Vertex> {
    let start = h.vertices().next().unwrap();
    let mut order = vec![start];
    let mut prev = start;
    let mut cur = *h.neighbors(start).first().unwrap();
    while cur != start {
        order.push(cur);
        let next = *h.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
        prev = cur;
        cur = next;
    }
    order
}

/// Degree-choosability of a theta graph whose lists have exactly `k·d(v)` colors.
///
/// `u` takes colors missing from its neighbor `z1` on a path of length at least two, then
/// the x-path, y-path, `v` and the reversed z-path each avoid their earlier neighbors.
pub fn choose_theta_degree(h: &Graph, k: usize, s: &ListAssignment) -> Choice {
    let (u, v, mut paths) = theta_decomposition(h).expect("theta graph");
    paths.sort_by_key(|p| p.len());
    let [x, y, mut z] = paths;
    debug_assert!(!z.is_empty());
    z.reverse();
    let mut choice = Choice::new();
    let z1 = *z.last().unwrap();
    let own: ColorSet = s.0[&u].difference(&s.0[&z1]).copied().collect();
    choice.insert(u, smallest(&own, k));
    for w in x.into_iter().chain(y).chain([v]).chain(z) {
        let taken: ColorSet = h
            .neighbors(w)
            .iter()
            .filter_map(|n| choice.get(*n))
            .flatten()
            .copied()
            .collect();
        let free: ColorSet = s.0[&w].difference(&taken).copied().collect();
        choice.insert(w, smallest(&free, k));
    }
    choice
}
