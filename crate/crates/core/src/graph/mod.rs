//! Undirected and directed simple graphs over non-negative integer vertex ids.
//!
//! Both types keep their adjacency in ordered maps so that iteration order,
//! serialization and every algorithm built on top are deterministic.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub mod catalog;
pub mod families;
mod structure;

pub use structure::{
    articulation_free, bipartition, classify_core, clique_number, components, core,
    core_with_trace, find_even_cycle_or_theta, find_even_hole_or_theta, is_complete,
    is_connected, is_cycle, is_triangulated, line_graph, max_clique, odd_directed_cycle, scc,
    CoreClass, CoreTrace, Scc,
};
pub(crate) use structure::theta_decomposition;

pub type Vertex = usize;

/// Undirected simple graph.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "GraphJson", into = "GraphJson")]
pub struct Graph {
    adj: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct GraphJson {
    vertices: Vec<Vertex>,
    edges: Vec<[Vertex; 2]>,
}

impl TryFrom<GraphJson> for Graph {
    type Error = Error;

    fn try_from(raw: GraphJson) -> Result<Self> {
        let mut g = Graph::new();
        for v in raw.vertices {
            if !g.add_vertex(v) {
                return Err(Error::InvalidGraph(format!("vertex {v} declared twice")));
            }
        }
        for [u, v] in raw.edges {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !g.contains(u) || !g.contains(v) {
                return Err(Error::InvalidGraph(format!(
                    "edge [{u},{v}] uses an undeclared vertex"
                )));
            }
            if !g.add_edge(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate edge [{u},{v}]")));
            }
        }
        Ok(g)
    }
}

impl From<Graph> for GraphJson {
    fn from(g: Graph) -> Self {
        GraphJson {
            vertices: g.vertices().collect(),
            edges: g.edges().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Graph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Graph on vertices `0..n` with no edges.
    pub fn empty(n: usize) -> Self {
        Self {
            adj: (0..n).map(|v| (v, BTreeSet::new())).collect(),
        }
    }

    /// Builds a graph on `0..n` from an edge list. Panics on loops; repeated edges collapse.
    pub fn from_edges(n: usize, edges: &[(Vertex, Vertex)]) -> Self {
        let mut g = Self::empty(n);
        for &(u, v) in edges {
            assert!(u != v, "self-loop at {u}");
            g.add_vertex(u);
            g.add_vertex(v);
            g.add_edge(u, v);
        }
        g
    }

    /// Returns false if the vertex already existed.
    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.adj.contains_key(&v) {
            return false;
        }
        self.adj.insert(v, BTreeSet::new());
        true
    }

    /// Adds an edge between two existing, distinct vertices. Returns false if it was present.
    pub fn add_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v, "self-loop at {u}");
        assert!(self.contains(u) && self.contains(v), "edge endpoint missing");
        let fresh = self.adj.get_mut(&u).unwrap().insert(v);
        self.adj.get_mut(&v).unwrap().insert(u);
        fresh
    }

    /// Returns false if the edge was absent.
    pub fn remove_edge(&mut self, u: Vertex, v: Vertex) -> bool {
        let had = self.adj.get_mut(&u).is_some_and(|n| n.remove(&v));
        if had {
            self.adj.get_mut(&v).unwrap().remove(&u);
        }
        had
    }

    pub fn remove_vertex(&mut self, v: Vertex) {
        if let Some(nbrs) = self.adj.remove(&v) {
            for u in nbrs {
                self.adj.get_mut(&u).unwrap().remove(&v);
            }
        }
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.adj.contains_key(&v)
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn order(&self) -> usize {
        self.adj.len()
    }

    pub fn size(&self) -> usize {
        self.adj.values().map(BTreeSet::len).sum::<usize>() / 2
    }

    pub fn is_empty(&self) -> bool {
        self.adj.is_empty()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.adj.keys().copied()
    }

    /// Each edge once, as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .flat_map(|(&u, ns)| ns.range(u + 1..).map(move |&v| (u, v)))
    }

    pub fn neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.adj[&v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[&v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn min_degree(&self) -> usize {
        self.adj.values().map(BTreeSet::len).min().unwrap_or(0)
    }

    pub fn is_regular(&self) -> bool {
        self.max_degree() == self.min_degree()
    }

    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Graph {
        Graph {
            adj: self
                .adj
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, ns)| (v, ns.intersection(keep).copied().collect()))
                .collect(),
        }
    }

    /// Disjoint union where `other`'s vertices are shifted by `offset`.
    pub fn add_shifted(&mut self, other: &Graph, offset: Vertex) {
        for v in other.vertices() {
            self.add_vertex(v + offset);
        }
        for (u, v) in other.edges() {
            self.add_edge(u + offset, v + offset);
        }
    }

    /// Relabels vertices to `0..n` in increasing id order; returns the graph and the old ids.
    pub fn compact(&self) -> (Graph, Vec<Vertex>) {
        let ids: Vec<Vertex> = self.vertices().collect();
        let index: BTreeMap<Vertex, usize> = ids.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let edges: Vec<_> = self.edges().map(|(u, v)| (index[&u], index[&v])).collect();
        (Graph::from_edges(ids.len(), &edges), ids)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("graph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidGraph(e.to_string()))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("graph G {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.edges() {
            let _ = writeln!(out, "  {u} -- {v};");
        }
        out.push_str("}\n");
        out
    }
}

/// Directed simple graph; arcs `u -> v` and `v -> u` may coexist.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "DigraphJson", into = "DigraphJson")]
pub struct Digraph {
    out: BTreeMap<Vertex, BTreeSet<Vertex>>,
}

#[derive(Serialize, Deserialize)]
struct DigraphJson {
    vertices: Vec<Vertex>,
    arcs: Vec<[Vertex; 2]>,
}

impl TryFrom<DigraphJson> for Digraph {
    type Error = Error;

    fn try_from(raw: DigraphJson) -> Result<Self> {
        let mut d = Digraph::new();
        for v in raw.vertices {
            if !d.add_vertex(v) {
                return Err(Error::InvalidGraph(format!("vertex {v} declared twice")));
            }
        }
        for [u, v] in raw.arcs {
            if u == v {
                return Err(Error::InvalidGraph(format!("self-loop at {u}")));
            }
            if !d.contains(u) || !d.contains(v) {
                return Err(Error::InvalidGraph(format!(
                    "arc [{u},{v}] uses an undeclared vertex"
                )));
            }
            if !d.add_arc(u, v) {
                return Err(Error::InvalidGraph(format!("duplicate arc [{u},{v}]")));
            }
        }
        Ok(d)
    }
}

impl From<Digraph> for DigraphJson {
    fn from(d: Digraph) -> Self {
        DigraphJson {
            vertices: d.vertices().collect(),
            arcs: d.arcs().map(|(u, v)| [u, v]).collect(),
        }
    }
}

impl Digraph {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn from_arcs(n: usize, arcs: &[(Vertex, Vertex)]) -> Self {
        let mut d = Digraph {
            out: (0..n).map(|v| (v, BTreeSet::new())).collect(),
        };
        for &(u, v) in arcs {
            d.add_vertex(u);
            d.add_vertex(v);
            d.add_arc(u, v);
        }
        d
    }

    /// Directed cycle `0 -> 1 -> ... -> n-1 -> 0`.
    pub fn directed_cycle(n: usize) -> Self {
        let arcs: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Self::from_arcs(n, &arcs)
    }

    pub fn add_vertex(&mut self, v: Vertex) -> bool {
        if self.out.contains_key(&v) {
            return false;
        }
        self.out.insert(v, BTreeSet::new());
        true
    }

    pub fn add_arc(&mut self, u: Vertex, v: Vertex) -> bool {
        assert!(u != v, "self-loop at {u}");
        assert!(self.contains(v), "arc head missing");
        self.out.get_mut(&u).expect("arc tail missing").insert(v)
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.out.contains_key(&v)
    }

    pub fn has_arc(&self, u: Vertex, v: Vertex) -> bool {
        self.out.get(&u).is_some_and(|n| n.contains(&v))
    }

    pub fn order(&self) -> usize {
        self.out.len()
    }

    pub fn arc_count(&self) -> usize {
        self.out.values().map(BTreeSet::len).sum()
    }

    pub fn vertices(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.out.keys().copied()
    }

    pub fn arcs(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.out
            .iter()
            .flat_map(|(&u, ns)| ns.iter().map(move |&v| (u, v)))
    }

    pub fn out_neighbors(&self, v: Vertex) -> &BTreeSet<Vertex> {
        &self.out[&v]
    }

    pub fn out_degree(&self, v: Vertex) -> usize {
        self.out[&v].len()
    }

    pub fn max_out_degree(&self) -> usize {
        self.out.values().map(BTreeSet::len).max().unwrap_or(0)
    }

    pub fn induced(&self, keep: &BTreeSet<Vertex>) -> Digraph {
        Digraph {
            out: self
                .out
                .iter()
                .filter(|(v, _)| keep.contains(v))
                .map(|(&v, ns)| (v, ns.intersection(keep).copied().collect()))
                .collect(),
        }
    }

    pub fn reversed(&self) -> Digraph {
        let mut r = Digraph {
            out: self.vertices().map(|v| (v, BTreeSet::new())).collect(),
        };
        for (u, v) in self.arcs() {
            r.add_arc(v, u);
        }
        r
    }

    /// Underlying undirected graph (antiparallel arcs merge into one edge).
    pub fn underlying(&self) -> Graph {
        let mut g = Graph::new();
        for v in self.vertices() {
            g.add_vertex(v);
        }
        for (u, v) in self.arcs() {
            g.add_edge(u, v);
        }
        g
    }

    /// Kahn topological order, `None` if there is a directed cycle.
    pub fn topological_order(&self) -> Option<Vec<Vertex>> {
        let mut indeg: BTreeMap<Vertex, usize> = self.vertices().map(|v| (v, 0)).collect();
        for (_, v) in self.arcs() {
            *indeg.get_mut(&v).unwrap() += 1;
        }
        let mut ready: BTreeSet<Vertex> =
            indeg.iter().filter(|(_, &d)| d == 0).map(|(&v, _)| v).collect();
        let mut order = Vec::with_capacity(self.order());
        while let Some(v) = ready.pop_first() {
            order.push(v);
            for &w in &self.out[&v] {
                let d = indeg.get_mut(&w).unwrap();
                *d -= 1;
                if *d == 0 {
                    ready.insert(w);
                }
            }
        }
        (order.len() == self.order()).then_some(order)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("digraph serializes")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s).map_err(|e| Error::InvalidGraph(e.to_string()))
    }

    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph D {\n");
        for v in self.vertices() {
            let _ = writeln!(out, "  {v};");
        }
        for (u, v) in self.arcs() {
            let _ = writeln!(out, "  {u} -> {v};");
        }
        out.push_str("}\n");
        out
    }
}
