use std::collections::{BTreeMap, BTreeSet, VecDeque};

use serde::{Deserialize, Serialize};

use super::{Digraph, Graph, Vertex};
use crate::error::{Error, Result};

pub fn components(g: &Graph) -> Vec<BTreeSet<Vertex>> {
    let mut seen = BTreeSet::new();
    let mut out = Vec::new();
    for s in g.vertices() {
        if seen.contains(&s) {
            continue;
        }
        let mut comp = BTreeSet::from([s]);
        let mut queue = VecDeque::from([s]);
        seen.insert(s);
        while let Some(v) = queue.pop_front() {
            for &w in g.neighbors(v) {
                if seen.insert(w) {
                    comp.insert(w);
                    queue.push_back(w);
                }
            }
        }
        out.push(comp);
    }
    out
}

pub fn is_connected(g: &Graph) -> bool {
    components(g).len() <= 1
}

/// True when `g` is connected, has at least three vertices and no cut vertex.
pub fn articulation_free(g: &Graph) -> bool {
    if g.order() < 3 || !is_connected(g) {
        return false;
    }
    g.vertices().all(|v| {
        let mut h = g.clone();
        h.remove_vertex(v);
        is_connected(&h)
    })
}

pub fn is_complete(g: &Graph) -> bool {
    let n = g.order();
    g.vertices().all(|v| g.degree(v) + 1 == n)
}

/// Connected, 2-regular, at least three vertices.
pub fn is_cycle(g: &Graph) -> bool {
    g.order() >= 3 && g.vertices().all(|v| g.degree(v) == 2) && is_connected(g)
}

/// Two-coloring of `g` if one exists; the side containing the smaller id of each component comes first.
pub fn bipartition(g: &Graph) -> Option<(BTreeSet<Vertex>, BTreeSet<Vertex>)> {
    let mut side: BTreeMap<Vertex, bool> = BTreeMap::new();
    for s in g.vertices() {
        if side.contains_key(&s) {
            continue;
        }
        side.insert(s, false);
        let mut queue = VecDeque::from([s]);
        while let Some(v) = queue.pop_front() {
            let sv = side[&v];
            for &w in g.neighbors(v) {
                match side.get(&w) {
                    Some(&sw) if sw == sv => return None,
                    Some(_) => {}
                    None => {
                        side.insert(w, !sv);
                        queue.push_back(w);
                    }
                }
            }
        }
    }
    let left = side.iter().filter(|(_, &s)| !s).map(|(&v, _)| v).collect();
    let right = side.iter().filter(|(_, &s)| s).map(|(&v, _)| v).collect();
    Some((left, right))
}

/// A maximum clique (Bron–Kerbosch with pivoting).
pub fn max_clique(g: &Graph) -> BTreeSet<Vertex> {
    fn expand(
        g: &Graph,
        r: &mut Vec<Vertex>,
        mut p: BTreeSet<Vertex>,
        mut x: BTreeSet<Vertex>,
        best: &mut Vec<Vertex>,
    ) {
        if p.is_empty() && x.is_empty() {
            if r.len() > best.len() {
                *best = r.clone();
            }
            return;
        }
        if r.len() + p.len() <= best.len() {
            return;
        }
        let pivot = p
            .union(&x)
            .max_by_key(|&&u| g.neighbors(u).intersection(&p).count())
            .copied()
            .unwrap();
        let candidates: Vec<Vertex> = p.difference(g.neighbors(pivot)).copied().collect();
        for v in candidates {
            let nv = g.neighbors(v);
            r.push(v);
            expand(
                g,
                r,
                p.intersection(nv).copied().collect(),
                x.intersection(nv).copied().collect(),
                best,
            );
            r.pop();
            p.remove(&v);
            x.insert(v);
        }
    }
    let mut best = Vec::new();
    expand(g, &mut Vec::new(), g.vertices().collect(), BTreeSet::new(), &mut best);
    best.into_iter().collect()
}

pub fn clique_number(g: &Graph) -> usize {
    max_clique(g).len()
}

/// Result of iterated leaf deletion.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CoreTrace {
    pub core: Graph,
    /// Deleted vertices in deletion order, each with its unique neighbor at deletion time.
    pub removed: Vec<(Vertex, Vertex)>,
}

/// Deletes degree-1 vertices (smallest id first) until none is left.
pub fn core_with_trace(g: &Graph) -> CoreTrace {
    let mut h = g.clone();
    let mut leaves: BTreeSet<Vertex> = h.vertices().filter(|&v| h.degree(v) == 1).collect();
    let mut removed = Vec::new();
    while let Some(v) = leaves.pop_first() {
        if !h.contains(v) || h.degree(v) != 1 {
            continue;
        }
        let u = *h.neighbors(v).first().unwrap();
        h.remove_vertex(v);
        removed.push((v, u));
        match h.degree(u) {
            1 => {
                leaves.insert(u);
            }
            _ => {
                leaves.remove(&u);
            }
        }
    }
    CoreTrace { core: h, removed }
}

pub fn core(g: &Graph) -> Graph {
    core_with_trace(g).core
}

/// Shape of a connected graph's core with respect to the 2-choosable family.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(tag = "tag", content = "m")]
pub enum CoreClass {
    K1,
    /// Cycle on `2m + 2` vertices.
    EvenCycle(usize),
    /// Theta graph with paths of lengths 2, 2 and `2m`.
    Theta(usize),
    Other,
}

impl CoreClass {
    pub fn is_two_choosable_family(self) -> bool {
        !matches!(self, CoreClass::Other)
    }
}

pub fn classify_core(g: &Graph) -> Result<CoreClass> {
    let comps = components(g).len();
    if comps > 1 {
        return Err(Error::DisconnectedInput(comps));
    }
    if g.is_empty() {
        return Ok(CoreClass::Other);
    }
    let c = core(g);
    if c.order() == 1 {
        return Ok(CoreClass::K1);
    }
    if is_cycle(&c) {
        let n = c.order();
        return Ok(if n % 2 == 0 {
            CoreClass::EvenCycle((n - 2) / 2)
        } else {
            CoreClass::Other
        });
    }
    Ok(match theta_paths(&c) {
        Some(mut lengths) => {
            lengths.sort_unstable();
            match lengths[..] {
                [2, 2, l] if l % 2 == 0 => CoreClass::Theta(l / 2),
                _ => CoreClass::Other,
            }
        }
        None => CoreClass::Other,
    })
}

/// Path lengths of a theta graph: exactly two degree-3 hubs, all else degree 2,
/// three internally disjoint hub-to-hub paths covering everything.
pub(crate) fn theta_paths(g: &Graph) -> Option<[usize; 3]> {
    theta_decomposition(g).map(|(_, _, paths)| {
        [paths[0].len() + 1, paths[1].len() + 1, paths[2].len() + 1]
    })
}

/// Hubs `(u, v)` and the interior vertex sequences of the three paths, each ordered from `u`.
pub(crate) fn theta_decomposition(g: &Graph) -> Option<(Vertex, Vertex, [Vec<Vertex>; 3])> {
    let hubs: Vec<Vertex> = g.vertices().filter(|&v| g.degree(v) == 3).collect();
    if hubs.len() != 2 || g.vertices().any(|v| g.degree(v) != 2 && g.degree(v) != 3) {
        return None;
    }
    let (u, v) = (hubs[0], hubs[1]);
    let mut paths: Vec<Vec<Vertex>> = Vec::new();
    let mut covered = 2;
    for &start in g.neighbors(u) {
        let mut interior = Vec::new();
        let (mut prev, mut cur) = (u, start);
        while cur != v {
            if cur == u || g.degree(cur) != 2 {
                return None;
            }
            interior.push(cur);
            let next = *g.neighbors(cur).iter().find(|&&w| w != prev).unwrap();
            prev = cur;
            cur = next;
        }
        covered += interior.len();
        paths.push(interior);
    }
    if covered != g.order() {
        return None;
    }
    let paths: [Vec<Vertex>; 3] = paths.try_into().ok()?;
    Some((u, v, paths))
}

/// Line graph; vertex `i` stands for the `i`-th edge of `g.edges()`.
pub fn line_graph(g: &Graph) -> Graph {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let mut incident: BTreeMap<Vertex, Vec<usize>> = BTreeMap::new();
    for (i, &(u, v)) in edges.iter().enumerate() {
        incident.entry(u).or_default().push(i);
        incident.entry(v).or_default().push(i);
    }
    let mut l = Graph::empty(edges.len());
    for ids in incident.values() {
        for (a, &i) in ids.iter().enumerate() {
            for &j in &ids[a + 1..] {
                l.add_edge(i, j);
            }
        }
    }
    l
}

/// Perfect elimination ordering by repeated removal of the smallest simplicial vertex,
/// or `None` when the graph is not chordal.
pub fn is_triangulated(g: &Graph) -> Option<Vec<Vertex>> {
    let mut h = g.clone();
    let mut order = Vec::with_capacity(g.order());
    while !h.is_empty() {
        let v = h.vertices().find(|&v| {
            let ns: Vec<Vertex> = h.neighbors(v).iter().copied().collect();
            ns.iter()
                .enumerate()
                .all(|(i, &a)| ns[i + 1..].iter().all(|&b| h.has_edge(a, b)))
        })?;
        h.remove_vertex(v);
        order.push(v);
    }
    Some(order)
}

/// Strongly connected components.
#[derive(Clone, Debug)]
pub struct Scc {
    /// Components in topological order of the condensation (sources first).
    pub components: Vec<Vec<Vertex>>,
    pub component_of: BTreeMap<Vertex, usize>,
    /// Acyclic digraph on component indices.
    pub condensation: Digraph,
}

/// Kosaraju's algorithm.
pub fn scc(d: &Digraph) -> Scc {
    let mut visited = BTreeSet::new();
    let mut finish = Vec::with_capacity(d.order());
    for s in d.vertices() {
        if !visited.insert(s) {
            continue;
        }
        let mut stack: Vec<(Vertex, Vec<Vertex>)> =
            vec![(s, d.out_neighbors(s).iter().rev().copied().collect())];
        while let Some((v, pending)) = stack.last_mut() {
            match pending.pop() {
                Some(w) => {
                    if visited.insert(w) {
                        let next = d.out_neighbors(w).iter().rev().copied().collect();
                        stack.push((w, next));
                    }
                }
                None => {
                    finish.push(*v);
                    stack.pop();
                }
            }
        }
    }
    let rev = d.reversed();
    let mut component_of = BTreeMap::new();
    let mut components = Vec::new();
    for &s in finish.iter().rev() {
        if component_of.contains_key(&s) {
            continue;
        }
        let id = components.len();
        let mut comp = vec![s];
        component_of.insert(s, id);
        let mut i = 0;
        while i < comp.len() {
            let v = comp[i];
            for &w in rev.out_neighbors(v) {
                if let std::collections::btree_map::Entry::Vacant(e) = component_of.entry(w) {
                    e.insert(id);
                    comp.push(w);
                }
            }
            i += 1;
        }
        comp.sort_unstable();
        components.push(comp);
    }
    let mut condensation = Digraph::from_arcs(components.len(), &[]);
    for (u, v) in d.arcs() {
        let (cu, cv) = (component_of[&u], component_of[&v]);
        if cu != cv {
            condensation.add_arc(cu, cv);
        }
    }
    Scc {
        components,
        component_of,
        condensation,
    }
}

fn bfs_tree(
    d: &Digraph,
    members: &BTreeSet<Vertex>,
    root: Vertex,
) -> BTreeMap<Vertex, (usize, Option<Vertex>)> {
    let mut info = BTreeMap::from([(root, (0usize, None))]);
    let mut queue = VecDeque::from([root]);
    while let Some(v) = queue.pop_front() {
        let dv = info[&v].0;
        for &w in d.out_neighbors(v) {
            if members.contains(&w) && !info.contains_key(&w) {
                info.insert(w, (dv + 1, Some(v)));
                queue.push_back(w);
            }
        }
    }
    info
}

fn tree_path(info: &BTreeMap<Vertex, (usize, Option<Vertex>)>, to: Vertex) -> Vec<Vertex> {
    let mut path = vec![to];
    let mut cur = to;
    while let Some(p) = info[&cur].1 {
        path.push(p);
        cur = p;
    }
    path.reverse();
    path
}

/// Splits an odd closed walk (first vertex not repeated at the end) into simple
/// cycles and returns an odd one.
fn odd_cycle_in_walk(walk: &[Vertex]) -> Vec<Vertex> {
    let mut stack: Vec<Vertex> = Vec::new();
    let mut pos: BTreeMap<Vertex, usize> = BTreeMap::new();
    for &v in walk.iter().chain(std::iter::once(&walk[0])) {
        if let Some(&p) = pos.get(&v) {
            let cycle: Vec<Vertex> = stack.drain(p + 1..).collect();
            let mut cyc = vec![v];
            cyc.extend(cycle);
            for w in &cyc[1..] {
                pos.remove(w);
            }
            if cyc.len() % 2 == 1 {
                return cyc;
            }
        } else {
            pos.insert(v, stack.len());
            stack.push(v);
        }
    }
    unreachable!("an odd closed walk contains an odd simple cycle")
}

/// Some odd directed simple cycle, listed in arc order, if one exists.
///
/// A strongly connected digraph has an odd cycle exactly when BFS depth parity
/// from a root is violated by some arc inside the component.
pub fn odd_directed_cycle(d: &Digraph) -> Option<Vec<Vertex>> {
    let parts = scc(d);
    for comp in &parts.components {
        if comp.len() < 2 {
            continue;
        }
        let members: BTreeSet<Vertex> = comp.iter().copied().collect();
        let root = comp[0];
        let from_root = bfs_tree(d, &members, root);
        let to_root = bfs_tree(&d.reversed(), &members, root);
        for &u in comp {
            for &w in d.out_neighbors(u) {
                if !members.contains(&w) {
                    continue;
                }
                if (from_root[&u].0 + 1 + from_root[&w].0) % 2 == 0 {
                    continue;
                }
                // Return path w ~> root, read off the reversed BFS tree.
                let mut back = tree_path(&to_root, w);
                back.reverse();
                let mut via_arc = tree_path(&from_root, u);
                via_arc.extend(&back[..back.len() - 1]);
                let mut direct = tree_path(&from_root, w);
                direct.pop();
                direct.extend(&back[..back.len() - 1]);
                let walk = if via_arc.len() % 2 == 1 { via_arc } else { direct };
                let cycle = odd_cycle_in_walk(&walk);
                debug_assert!(is_directed_cycle(d, &cycle));
                return Some(cycle);
            }
        }
    }
    None
}

pub(crate) fn is_directed_cycle(d: &Digraph, cycle: &[Vertex]) -> bool {
    let distinct: BTreeSet<_> = cycle.iter().collect();
    !cycle.is_empty()
        && distinct.len() == cycle.len()
        && (0..cycle.len()).all(|i| d.has_arc(cycle[i], cycle[(i + 1) % cycle.len()]))
}

fn is_even_hole_or_chorded(h: &Graph) -> bool {
    let n = h.order();
    if n < 4 || n % 2 == 1 || !is_connected(h) {
        return false;
    }
    if is_cycle(h) {
        return true;
    }
    if h.size() != n + 1 {
        return false;
    }
    let hubs: Vec<Vertex> = h.vertices().filter(|&v| h.degree(v) == 3).collect();
    if hubs.len() != 2 || !h.has_edge(hubs[0], hubs[1]) {
        return false;
    }
    let mut rest = h.clone();
    rest.adj.get_mut(&hubs[0]).unwrap().remove(&hubs[1]);
    rest.adj.get_mut(&hubs[1]).unwrap().remove(&hubs[0]);
    is_cycle(&rest)
}

/// Smallest induced subgraph that is an even cycle, chordless or with exactly one chord.
/// Exhaustive over vertex subsets of increasing even size.
pub fn find_even_hole_or_theta(g: &Graph) -> Option<Graph> {
    let ids: Vec<Vertex> = g.vertices().collect();
    let n = ids.len();
    let mut size = 4;
    while size <= n {
        let mut pick: Vec<usize> = (0..size).collect();
        loop {
            let keep: BTreeSet<Vertex> = pick.iter().map(|&i| ids[i]).collect();
            let h = g.induced(&keep);
            if is_even_hole_or_chorded(&h) {
                return Some(h);
            }
            // next combination
            let mut i = size;
            while i > 0 && pick[i - 1] == n - size + i - 1 {
                i -= 1;
            }
            if i == 0 {
                break;
            }
            pick[i - 1] += 1;
            for j in i..size {
                pick[j] = pick[j - 1] + 1;
            }
        }
        size += 2;
    }
    None
}

/// Checked variant: `g` must be 2-connected, not complete and not an odd cycle.
pub fn find_even_cycle_or_theta(g: &Graph) -> Result<Graph> {
    if !articulation_free(g) {
        return Err(Error::NotApplicable("graph is not 2-connected".into()));
    }
    if is_complete(g) {
        return Err(Error::NotApplicable("graph is complete".into()));
    }
    if is_cycle(g) && g.order() % 2 == 1 {
        return Err(Error::NotApplicable("graph is an odd cycle".into()));
    }
    find_even_hole_or_theta(g)
        .ok_or_else(|| Error::NotApplicable("no even hole or one-chord even cycle".into()))
}
