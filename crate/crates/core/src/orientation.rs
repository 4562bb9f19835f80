//! Maximum subgraph density and the orientations fed to the kernel chooser.

use std::collections::{BTreeMap, BTreeSet, VecDeque};

use num_rational::Ratio;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Digraph, Graph, Vertex};

/// An orientation of every edge of `base`, exactly one direction each.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Orientation {
    #[serde(skip)]
    base: Graph,
    #[serde(flatten)]
    digraph: Digraph,
}

impl Orientation {
    pub fn new(base: &Graph, arcs: &[(Vertex, Vertex)]) -> Result<Self> {
        let mut d = Digraph::new();
        for v in base.vertices() {
            d.add_vertex(v);
        }
        for &(u, v) in arcs {
            if !base.has_edge(u, v) {
                return Err(Error::InvalidGraph(format!("arc {u}->{v} is not an edge")));
            }
            if d.has_arc(v, u) || !d.add_arc(u, v) {
                return Err(Error::InvalidGraph(format!("edge {{{u},{v}}} oriented twice")));
            }
        }
        if d.arc_count() != base.size() {
            return Err(Error::InvalidGraph("some edge has no direction".into()));
        }
        Ok(Self {
            base: base.clone(),
            digraph: d,
        })
    }

    /// Both directions of every edge of a cycle `v0 -> v1 -> ... -> v0`, given in order.
    pub fn cyclic(base: &Graph, order: &[Vertex]) -> Result<Self> {
        let arcs: Vec<_> = (0..order.len())
            .map(|i| (order[i], order[(i + 1) % order.len()]))
            .collect();
        Self::new(base, &arcs)
    }

    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn digraph(&self) -> &Digraph {
        &self.digraph
    }

    pub fn max_out_degree(&self) -> usize {
        self.digraph.max_out_degree()
    }
}

struct FlowNet {
    head: Vec<usize>,
    cap: Vec<u64>,
    adj: Vec<Vec<usize>>,
}

impl FlowNet {
    fn new(n: usize) -> Self {
        Self {
            head: Vec::new(),
            cap: Vec::new(),
            adj: vec![Vec::new(); n],
        }
    }

    fn add(&mut self, u: usize, v: usize, c: u64) -> usize {
        let id = self.head.len();
        self.head.push(v);
        self.cap.push(c);
        self.adj[u].push(id);
        self.head.push(u);
        self.cap.push(0);
        self.adj[v].push(id + 1);
        id
    }

    /// Dinic's algorithm.
    fn max_flow(&mut self, s: usize, t: usize) -> u64 {
        let n = self.adj.len();
        let mut total = 0;
        loop {
            let mut level = vec![usize::MAX; n];
            level[s] = 0;
            let mut q = VecDeque::from([s]);
            while let Some(u) = q.pop_front() {
                for &e in &self.adj[u] {
                    let v = self.head[e];
                    if self.cap[e] > 0 && level[v] == usize::MAX {
                        level[v] = level[u] + 1;
                        q.push_back(v);
                    }
                }
            }
            if level[t] == usize::MAX {
                return total;
            }
            let mut it = vec![0; n];
            loop {
                let f = self.augment(s, t, u64::MAX, &level, &mut it);
                if f == 0 {
                    break;
                }
                total += f;
            }
        }
    }

    fn augment(&mut self, u: usize, t: usize, limit: u64, level: &[usize], it: &mut [usize]) -> u64 {
        if u == t {
            return limit;
        }
        while it[u] < self.adj[u].len() {
            let e = self.adj[u][it[u]];
            let v = self.head[e];
            if self.cap[e] > 0 && level[v] == level[u] + 1 {
                let f = self.augment(v, t, limit.min(self.cap[e]), level, it);
                if f > 0 {
                    self.cap[e] -= f;
                    self.cap[e ^ 1] += f;
                    return f;
                }
            }
            it[u] += 1;
        }
        0
    }
}

/// Splits `per_edge` units of every edge between its endpoints with at most `per_vertex`
/// units per vertex. Returns, per edge, the units given to its first endpoint, if feasible.
fn edge_split(g: &Graph, per_edge: u64, per_vertex: u64) -> Option<Vec<((Vertex, Vertex), u64)>> {
    let edges: Vec<(Vertex, Vertex)> = g.edges().collect();
    let index: BTreeMap<Vertex, usize> = g.vertices().enumerate().map(|(i, v)| (v, i)).collect();
    let m = edges.len();
    let (s, t) = (0, 1);
    let edge_node = |i: usize| 2 + i;
    let vertex_node = |v: Vertex| 2 + m + index[&v];
    let mut net = FlowNet::new(2 + m + g.order());
    let mut to_first = Vec::with_capacity(m);
    for (i, &(u, v)) in edges.iter().enumerate() {
        net.add(s, edge_node(i), per_edge);
        to_first.push(net.add(edge_node(i), vertex_node(u), per_edge));
        net.add(edge_node(i), vertex_node(v), per_edge);
    }
    for v in g.vertices() {
        net.add(vertex_node(v), t, per_vertex);
    }
    if net.max_flow(s, t) != per_edge * m as u64 {
        return None;
    }
    Some(
        edges
            .into_iter()
            .zip(to_first)
            .map(|(e, id)| (e, per_edge - net.cap[id]))
            .collect(),
    )
}

/// `M(G)`: the largest `|E(H)| / |V(H)|` over non-empty subgraphs `H`, as an exact rational.
///
/// `M(G) <= p/q` iff each edge can send `q` units to its endpoints with at most `p`
/// per vertex; the smallest feasible candidate `e/v` is the answer.
pub fn density_m(g: &Graph) -> Result<Ratio<u64>> {
    if g.is_empty() {
        return Err(Error::EmptyGraph);
    }
    let (n, m) = (g.order() as u64, g.size() as u64);
    let candidates: Vec<Ratio<u64>> = (1..=n)
        .flat_map(|v| (0..=m).map(move |e| Ratio::new(e, v)))
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let feasible = |r: &Ratio<u64>| edge_split(g, *r.denom(), *r.numer()).is_some();
    // The largest candidate (m/1) is always feasible.
    let idx = candidates.partition_point(|r| !feasible(r));
    Ok(candidates[idx])
}

/// An orientation with every out-degree at most `d`, which exists iff `M(g) <= d`.
pub fn orient_bounded_outdegree(g: &Graph, d: usize) -> Option<Orientation> {
    let split = edge_split(g, 1, d as u64)?;
    let arcs: Vec<_> = split
        .into_iter()
        .map(|((u, v), to_u)| if to_u == 1 { (u, v) } else { (v, u) })
        .collect();
    Some(Orientation::new(g, &arcs).expect("flow assigns each edge once"))
}

/// Acyclic orientation with out-degrees at most `d`, by repeatedly removing a minimum-degree
/// vertex (smallest id on ties) and pointing its remaining edges away from it.
/// `None` when some induced subgraph has minimum degree above `d`.
pub fn orient_degeneracy(g: &Graph, d: usize) -> Option<Orientation> {
    degeneracy_removal(g, d).map(|(_, o)| o)
}

/// Removal order together with the orientation built from it.
pub fn degeneracy_removal(g: &Graph, d: usize) -> Option<(Vec<Vertex>, Orientation)> {
    let mut h = g.clone();
    let mut arcs = Vec::with_capacity(g.size());
    let mut order = Vec::with_capacity(g.order());
    while !h.is_empty() {
        let v = h.vertices().min_by_key(|&v| (h.degree(v), v)).unwrap();
        if h.degree(v) > d {
            return None;
        }
        arcs.extend(h.neighbors(v).iter().map(|&w| (v, w)));
        h.remove_vertex(v);
        order.push(v);
    }
    Some((order, Orientation::new(g, &arcs).expect("each edge oriented once")))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::catalog::all_graphs;
    use crate::graph::families::*;
    use crate::graph::is_triangulated;

    /// Exhaustive oracle: induced subgraphs attain the maximum density.
    fn brute_density(g: &Graph) -> Ratio<u64> {
        let ids: Vec<Vertex> = g.vertices().collect();
        let mut best = Ratio::new(0, 1);
        for mask in 1u32..(1 << ids.len()) {
            let keep: BTreeSet<Vertex> = (0..ids.len())
                .filter(|i| mask >> i & 1 == 1)
                .map(|i| ids[i])
                .collect();
            let h = g.induced(&keep);
            best = best.max(Ratio::new(h.size() as u64, h.order() as u64));
        }
        best
    }

    #[test]
    fn density_examples() {
        assert_eq!(density_m(&path(5)).unwrap(), Ratio::new(4, 5));
        assert_eq!(density_m(&complete(4)).unwrap(), Ratio::new(3, 2));
        assert_eq!(density_m(&cycle(6)).unwrap(), Ratio::new(1, 1));
        assert_eq!(density_m(&Graph::new()), Err(Error::EmptyGraph));
        assert_eq!(density_m(&Graph::empty(3)).unwrap(), Ratio::new(0, 1));
    }

    #[test]
    fn density_matches_exhaustive_oracle() {
        for n in 1..=6 {
            for g in all_graphs(n) {
                assert_eq!(density_m(&g).unwrap(), brute_density(&g), "{g:?}");
            }
        }
    }

    #[test]
    fn bounded_outdegree_iff_density() {
        for n in 1..=6 {
            for g in all_graphs(n) {
                let m = density_m(&g).unwrap();
                for d in 0..=3usize {
                    let o = orient_bounded_outdegree(&g, d);
                    assert_eq!(o.is_some(), m <= Ratio::from_integer(d as u64));
                    if let Some(o) = o {
                        assert!(o.max_out_degree() <= d);
                        assert_eq!(o.digraph().arc_count(), g.size());
                    }
                }
            }
        }
    }

    #[test]
    fn bounded_outdegree_examples() {
        let o = orient_bounded_outdegree(&cycle(4), 1).unwrap();
        assert!(o.digraph().vertices().all(|v| o.digraph().out_degree(v) == 1));
        assert!(orient_bounded_outdegree(&complete(4), 1).is_none());
        let cube = hypercube(3);
        assert!(orient_bounded_outdegree(&cube, 2).unwrap().max_out_degree() <= 2);
        let g = grid(4, 5);
        assert!(orient_bounded_outdegree(&g, 2).is_some());
    }

    #[test]
    fn degeneracy_examples() {
        let t = path(6);
        let o = orient_degeneracy(&t, 1).unwrap();
        assert!(o.max_out_degree() <= 1);
        assert!(o.digraph().topological_order().is_some());
        assert!(orient_degeneracy(&complete(4), 2).is_none());
        // chordal graph: two triangles sharing an edge plus a pendant
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (0, 2), (1, 3), (2, 3), (3, 4)]);
        assert!(is_triangulated(&g).is_some());
        assert!(orient_degeneracy(&g, 2).is_some());
    }

    #[test]
    fn degeneracy_orientation_is_acyclic_and_consistent() {
        for n in 1..=6 {
            for g in all_graphs(n) {
                for d in 0..=4 {
                    if let Some((order, o)) = degeneracy_removal(&g, d) {
                        assert!(o.digraph().topological_order().is_some());
                        assert!(o.max_out_degree() <= d);
                        let pos: BTreeMap<Vertex, usize> =
                            order.iter().enumerate().map(|(i, &v)| (v, i)).collect();
                        // Arcs point from earlier-removed to later-removed vertices.
                        assert!(o.digraph().arcs().all(|(u, v)| pos[&u] < pos[&v]));
                    }
                }
            }
        }
    }

    #[test]
    fn orientation_rejects_double_direction() {
        let g = complete(2);
        assert!(Orientation::new(&g, &[(0, 1), (1, 0)]).is_err());
        assert!(Orientation::new(&g, &[]).is_err());
    }
}
