//! Deterministic generators for the fixed examples and the hardness / lower-bound constructions.
//!
//! Copies are numbered row-major and occupy consecutive id blocks; auxiliary vertices
//! (apex, `u`, `v`) get the highest ids.

use std::collections::{BTreeMap, BTreeSet};

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::families::complete_multipartite;
use crate::graph::{bipartition, Graph, Vertex};

/// `Θ_{a,b,c}`: hubs `u = 0` and `v = 1` joined by three internally disjoint paths of
/// lengths `a`, `b`, `c`. Interior vertices follow in path order.
pub fn gen_theta(a: usize, b: usize, c: usize) -> Result<Graph> {
    let lens = [a, b, c];
    if lens.contains(&0) {
        return Err(Error::NotSimple("path of length 0".into()));
    }
    if lens.iter().filter(|&&l| l == 1).count() > 1 {
        return Err(Error::NotSimple("two parallel edges between the hubs".into()));
    }
    let n = a + b + c - 1;
    let mut g = Graph::empty(n);
    let mut next = 2;
    for len in lens {
        let mut prev = 0;
        for _ in 1..len {
            g.add_edge(prev, next);
            prev = next;
            next += 1;
        }
        g.add_edge(prev, 1);
    }
    Ok(g)
}

/// Index of every vertex of `g` inside its sorted vertex list.
fn positions(g: &Graph) -> BTreeMap<Vertex, usize> {
    g.vertices().enumerate().map(|(i, v)| (v, i)).collect()
}

/// `copies` disjoint copies of `g`; vertex `w` of copy `i` becomes `i·n + idx(w)`.
fn disjoint_copies(g: &Graph, copies: usize) -> Graph {
    let (compact, _) = g.compact();
    let n = compact.order();
    let mut h = Graph::new();
    for i in 0..copies {
        h.add_shifted(&compact, i * n);
    }
    h
}

/// `|V|` disjoint copies of `g` plus an apex joined to every vertex; the apex is `n²`.
pub fn gen_apex_tower(g: &Graph) -> Graph {
    let n = g.order();
    let mut h = disjoint_copies(g, n);
    let apex = n * n;
    h.add_vertex(apex);
    for w in 0..apex {
        h.add_edge(apex, w);
    }
    h
}

fn check_sides(g: &Graph, x: &BTreeSet<Vertex>, y: &BTreeSet<Vertex>) -> Result<()> {
    let covers = g.vertices().all(|v| x.contains(&v) != y.contains(&v));
    let declared = x.iter().chain(y).all(|&v| g.contains(v));
    let crossing = g.edges().all(|(a, b)| x.contains(&a) != x.contains(&b));
    if covers && declared && crossing {
        Ok(())
    } else {
        Err(Error::NotBipartite)
    }
}

/// Nine copies `G_{i,j}` of a bipartite `g` plus `u` (joined to the `f = 2` vertices on the
/// `X` side of every copy) and `v` (likewise on the `Y` side). `u = 9n`, `v = 9n + 1`.
pub fn gen_bg23_gadget(
    g: &Graph,
    f: &BTreeMap<Vertex, usize>,
    sides: (&BTreeSet<Vertex>, &BTreeSet<Vertex>),
) -> Result<Graph> {
    check_sides(g, sides.0, sides.1)?;
    for v in g.vertices() {
        match f.get(&v) {
            Some(2 | 3) => {}
            Some(&x) => return Err(Error::InvalidParameter(format!("f({v}) = {x} not in {{2,3}}"))),
            None => return Err(Error::InvalidParameter(format!("f({v}) missing"))),
        }
    }
    Ok(join_two_hubs(g, 9, sides, |w| f[&w] == 2))
}

/// `(k+1)^4` copies of a bipartite `g` plus `u` joined to every `X` vertex and `v` joined to
/// every `Y` vertex.
pub fn gen_bgk_gadget(g: &Graph, k: usize, sides: (&BTreeSet<Vertex>, &BTreeSet<Vertex>)) -> Result<Graph> {
    if k < 3 {
        return Err(Error::InvalidParameter(format!("k = {k} must be at least 3")));
    }
    check_sides(g, sides.0, sides.1)?;
    Ok(join_two_hubs(g, (k + 1).pow(4), sides, |_| true))
}

fn join_two_hubs(
    g: &Graph,
    copies: usize,
    (x, _): (&BTreeSet<Vertex>, &BTreeSet<Vertex>),
    joined: impl Fn(Vertex) -> bool,
) -> Graph {
    let n = g.order();
    let pos = positions(g);
    let mut h = disjoint_copies(g, copies);
    let (u, v) = (copies * n, copies * n + 1);
    h.add_vertex(u);
    h.add_vertex(v);
    for i in 0..copies {
        for w in g.vertices().filter(|&w| joined(w)) {
            let hub = if x.contains(&w) { u } else { v };
            h.add_edge(hub, i * n + pos[&w]);
        }
    }
    h
}

/// Base graph of the strong-chromatic lower bound together with its three parts.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StrongLower {
    pub graph: Graph,
    pub parts: [BTreeSet<Vertex>; 3],
}

/// Classes `A, B1, B2, C1, C2, D1, D2, E` in consecutive id ranges, edges `A × (B1 ∪ B2)` and
/// `D1 × D2`, parts `B1 ∪ C1 ∪ D1`, `B2 ∪ C2 ∪ D2`, `A ∪ E`. The base graph has maximum
/// degree `d` and each part has `2d − 1` vertices.
pub fn gen_strong_lower(d: usize) -> Result<StrongLower> {
    if d < 2 {
        return Err(Error::InvalidParameter(format!("d = {d} must be at least 2")));
    }
    let r = d / 2;
    // A, B1, B2, C1, C2, D1, D2, E
    let sizes = if d % 2 == 0 {
        [2 * r, r, r, r - 1, r - 1, 2 * r, 2 * r, 2 * r - 1]
    } else {
        [2 * r + 1, r + 1, r, r - 1, r, 2 * r + 1, 2 * r + 1, 2 * r]
    };
    let mut classes: Vec<Vec<Vertex>> = Vec::new();
    let mut next = 0;
    for s in sizes {
        classes.push((next..next + s).collect());
        next += s;
    }
    let [a, b1, b2, c1, c2, d1, d2, e] = [0, 1, 2, 3, 4, 5, 6, 7].map(|i| &classes[i]);
    let mut g = Graph::empty(next);
    for &x in a {
        for &y in b1.iter().chain(b2) {
            g.add_edge(x, y);
        }
    }
    for &x in d1 {
        for &y in d2 {
            g.add_edge(x, y);
        }
    }
    let union = |parts: &[&Vec<Vertex>]| parts.iter().flat_map(|p| p.iter().copied()).collect();
    Ok(StrongLower {
        graph: g,
        parts: [union(&[b1, c1, d1]), union(&[b2, c2, d2]), union(&[a, e])],
    })
}

/// Cycle `0, 1, ..., 3kn − 1` plus `n` disjoint `3k`-cliques `{j, j + n, j + 2n, ...}`.
/// The cliques share no edge with the cycle, so the result is `(3k+1)`-regular.
pub fn gen_hamilton_clique(k: usize, n: usize) -> Result<Graph> {
    if k == 0 || n < 2 {
        return Err(Error::DegenerateParameters(format!("k = {k}, n = {n}; need k >= 1, n >= 2")));
    }
    let len = 3 * k * n;
    let mut g = Graph::empty(len);
    for i in 0..len {
        g.add_edge(i, (i + 1) % len);
    }
    for j in 0..n {
        let clique: Vec<Vertex> = (0..3 * k).map(|t| j + t * n).collect();
        for (i, &x) in clique.iter().enumerate() {
            for &y in &clique[i + 1..] {
                g.add_edge(x, y);
            }
        }
    }
    Ok(g)
}

/// `K_{2,4}` (sides `0..2` and `2..6`) plus an apex `6` joined to all six vertices.
pub fn gen_k24_prime() -> Graph {
    gen_apex_tower_single(&complete_multipartite(&[2, 4]))
}

fn gen_apex_tower_single(g: &Graph) -> Graph {
    let mut h = g.clone();
    let apex = g.order();
    h.add_vertex(apex);
    for w in 0..apex {
        h.add_edge(apex, w);
    }
    h
}

/// A named generator with its parameters.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GadgetSpec {
    ApexTower { base: Graph },
    BipartiteHardness23 { base: Graph, f: BTreeMap<Vertex, usize> },
    BipartiteHardnessK { base: Graph, k: usize },
    StrongLowerBound { d: usize },
    HamiltonCliqueRegular { k: usize, n: usize },
    ThetaGraph { a: usize, b: usize, c: usize },
    CompleteMultipartite { sizes: Vec<usize> },
    K24Prime,
}

/// Generated graph plus the parts of a clique augmentation, when the family has them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Gadget {
    #[serde(flatten)]
    pub graph: Graph,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    pub parts: Vec<BTreeSet<Vertex>>,
}

/// Family names and parameter synopsis, as listed by the CLI.
pub const FAMILIES: &[(&str, &str)] = &[
    ("apex-tower", "--graph FILE"),
    ("bipartite-hardness-23", "--graph FILE --f v:size,..."),
    ("bipartite-hardness-k", "--graph FILE --k K"),
    ("strong-lower-bound", "--d D"),
    ("hamilton-clique", "--k K --n N"),
    ("theta", "--a A --b B --c C"),
    ("complete-multipartite", "--sizes S1,S2,..."),
    ("k24-prime", ""),
];

impl GadgetSpec {
    pub fn build(&self) -> Result<Gadget> {
        let plain = |graph| Gadget { graph, parts: Vec::new() };
        let sides = |g: &Graph| bipartition(g).ok_or(Error::NotBipartite);
        Ok(match self {
            Self::ApexTower { base } => plain(gen_apex_tower(base)),
            Self::BipartiteHardness23 { base, f } => {
                let (x, y) = sides(base)?;
                plain(gen_bg23_gadget(base, f, (&x, &y))?)
            }
            Self::BipartiteHardnessK { base, k } => {
                let (x, y) = sides(base)?;
                plain(gen_bgk_gadget(base, *k, (&x, &y))?)
            }
            Self::StrongLowerBound { d } => {
                let s = gen_strong_lower(*d)?;
                Gadget {
                    graph: s.graph,
                    parts: s.parts.to_vec(),
                }
            }
            Self::HamiltonCliqueRegular { k, n } => plain(gen_hamilton_clique(*k, *n)?),
            Self::ThetaGraph { a, b, c } => plain(gen_theta(*a, *b, *c)?),
            Self::CompleteMultipartite { sizes } => plain(complete_multipartite(sizes)),
            Self::K24Prime => plain(gen_k24_prime()),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::families::{complete, complete_bipartite, cycle, path};
    use crate::graph::{classify_core, CoreClass};

    fn degree_multiset(g: &Graph) -> Vec<usize> {
        let mut d: Vec<usize> = g.vertices().map(|v| g.degree(v)).collect();
        d.sort_unstable();
        d
    }

    #[test]
    fn theta_examples() {
        let t = gen_theta(2, 2, 2).unwrap();
        assert_eq!(degree_multiset(&t), degree_multiset(&complete_bipartite(2, 3)));
        assert_eq!(bipartition(&t).map(|(x, y)| (x.len(), y.len())), Some((2, 3)));
        let t = gen_theta(2, 2, 4).unwrap();
        assert_eq!(t.order(), 7);
        assert_eq!((t.degree(0), t.degree(1)), (3, 3));
        assert!((2..7).all(|v| t.degree(v) == 2));
        assert_eq!(classify_core(&t).unwrap(), CoreClass::Theta(2));
        let t = gen_theta(1, 2, 2).unwrap();
        assert_eq!((t.order(), t.size()), (4, 5));
        assert!(matches!(gen_theta(1, 1, 3), Err(Error::NotSimple(_))));
        assert!(matches!(gen_theta(0, 2, 3), Err(Error::NotSimple(_))));
    }

    #[test]
    fn apex_tower_counts() {
        assert_eq!(gen_apex_tower(&Graph::empty(1)), complete(2));
        let h = gen_apex_tower(&complete(2));
        assert_eq!((h.order(), h.size()), (5, 2 + 4));
        let h = gen_apex_tower(&cycle(4));
        assert_eq!((h.order(), h.size()), (17, 16 + 16));
        assert_eq!(h.degree(16), 16);
    }

    #[test]
    fn bg23_counts() {
        let k2 = complete(2);
        let (x, y) = (BTreeSet::from([0]), BTreeSet::from([1]));
        let twos = BTreeMap::from([(0, 2), (1, 2)]);
        let w = gen_bg23_gadget(&k2, &twos, (&x, &y)).unwrap();
        assert_eq!(w.order(), 20);
        assert_eq!((w.degree(18), w.degree(19)), (9, 9));
        assert!(bipartition(&w).is_some());
        let threes = BTreeMap::from([(0, 3), (1, 3)]);
        let w = gen_bg23_gadget(&k2, &threes, (&x, &y)).unwrap();
        assert_eq!((w.degree(18), w.degree(19)), (0, 0));
        let bad = (BTreeSet::from([0, 1]), BTreeSet::new());
        assert_eq!(gen_bg23_gadget(&k2, &twos, (&bad.0, &bad.1)), Err(Error::NotBipartite));
        let p = path(4);
        let (x, y) = bipartition(&p).unwrap();
        let f = BTreeMap::from([(0, 2), (1, 3), (2, 2), (3, 3)]);
        let w = gen_bg23_gadget(&p, &f, (&x, &y)).unwrap();
        assert_eq!(w.order(), 9 * 4 + 2);
        assert!(bipartition(&w).is_some());
    }

    #[test]
    fn bgk_counts() {
        let k2 = complete(2);
        let (x, y) = (BTreeSet::from([0]), BTreeSet::from([1]));
        let w = gen_bgk_gadget(&k2, 3, (&x, &y)).unwrap();
        assert_eq!(w.order(), 514);
        assert_eq!(w.degree(512), 256);
        assert!(bipartition(&w).is_some());
        assert!(gen_bgk_gadget(&k2, 2, (&x, &y)).is_err());
    }

    #[test]
    fn strong_lower_shapes() {
        for (d, n) in [(2, 9), (3, 15), (4, 21), (5, 27)] {
            let s = gen_strong_lower(d).unwrap();
            assert_eq!(s.graph.order(), n);
            assert_eq!(s.graph.max_degree(), d);
            for p in &s.parts {
                assert_eq!(p.len(), 2 * d - 1);
            }
            let all: BTreeSet<Vertex> = s.parts.iter().flatten().copied().collect();
            assert_eq!(all.len(), n);
        }
        assert!(gen_strong_lower(1).is_err());
    }

    #[test]
    fn hamilton_clique_regular() {
        for (k, n, deg) in [(1, 2, 4), (1, 3, 4), (2, 2, 7), (2, 3, 7)] {
            let g = gen_hamilton_clique(k, n).unwrap();
            assert_eq!(g.order(), 3 * k * n);
            assert!(g.is_regular());
            assert_eq!(g.min_degree(), deg);
        }
        // k = 1, n = 2 is the octahedron.
        assert_eq!(
            degree_multiset(&gen_hamilton_clique(1, 2).unwrap()),
            degree_multiset(&complete_multipartite(&[2, 2, 2]))
        );
        assert!(gen_hamilton_clique(1, 1).is_err());
        assert!(gen_hamilton_clique(0, 3).is_err());
    }

    #[test]
    fn k24_prime_shape() {
        let g = gen_k24_prime();
        assert_eq!((g.order(), g.size()), (7, 14));
        assert!(bipartition(&g).is_none());
    }

    #[test]
    fn generators_are_deterministic() {
        let specs = [
            GadgetSpec::StrongLowerBound { d: 3 },
            GadgetSpec::HamiltonCliqueRegular { k: 1, n: 3 },
            GadgetSpec::ThetaGraph { a: 2, b: 3, c: 4 },
            GadgetSpec::ApexTower { base: path(3) },
            GadgetSpec::BipartiteHardnessK { base: path(2), k: 3 },
        ];
        for s in specs {
            let a = serde_json::to_string(&s.build().unwrap()).unwrap();
            let b = serde_json::to_string(&s.build().unwrap()).unwrap();
            assert_eq!(a, b);
        }
    }
}
