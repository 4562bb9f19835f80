//! Las Vegas choosers that split the colors at random among the classes of a proper coloring.
//!
//! Attempt `i` draws from a ChaCha8 stream keyed by `(seed, i)`, so results depend only on
//! the seed and never on how many attempts ran before.

use std::collections::{BTreeMap, BTreeSet};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::families::complete_multipartite;
use crate::graph::{Graph, Vertex};
use crate::lists::{smallest, verify_choice, Choice, Color, ColorSet, ListAssignment};
use crate::oracle::{chromatic_number, k_coloring, Budget};

/// Seed and retry limit for a randomized chooser.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomBudget {
    pub seed: u64,
    pub max_attempts: u32,
}

impl RandomBudget {
    pub fn new(seed: u64, max_attempts: u32) -> Result<Self> {
        if max_attempts == 0 {
            return Err(Error::InvalidParameter("max_attempts must be at least 1".into()));
        }
        Ok(Self { seed, max_attempts })
    }

    fn rng(&self, attempt: u32) -> ChaCha8Rng {
        let mut rng = ChaCha8Rng::seed_from_u64(self.seed);
        rng.set_stream(attempt as u64);
        rng
    }
}

/// A verified choice and the attempt (1-based) that produced it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomChoice {
    pub choice: Choice,
    pub attempts: u32,
    pub seed: u64,
}

/// A graph with its vertices split into independent classes.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PartitionedGraph {
    graph: Graph,
    classes: Vec<BTreeSet<Vertex>>,
}

impl PartitionedGraph {
    pub fn new(graph: Graph, classes: Vec<BTreeSet<Vertex>>) -> Result<Self> {
        let mut seen = BTreeSet::new();
        for class in &classes {
            for &v in class {
                if !graph.contains(v) {
                    return Err(Error::UnknownVertex(v));
                }
                if !seen.insert(v) {
                    return Err(Error::OverlappingParts(v));
                }
                if graph.neighbors(v).iter().any(|w| class.contains(w)) {
                    return Err(Error::InvalidParameter(format!("class containing {v} is not independent")));
                }
            }
        }
        if let Some(v) = graph.vertices().find(|v| !seen.contains(v)) {
            return Err(Error::InvalidParameter(format!("vertex {v} is in no class")));
        }
        Ok(Self { graph, classes })
    }

    /// Classes from a proper coloring, in color order.
    pub fn from_coloring(graph: Graph, coloring: &BTreeMap<Vertex, Color>) -> Result<Self> {
        let mut by: BTreeMap<Color, BTreeSet<Vertex>> = BTreeMap::new();
        for v in graph.vertices() {
            let c = coloring.get(&v).ok_or(Error::MissingList(v))?;
            by.entry(*c).or_default().insert(v);
        }
        Self::new(graph, by.into_values().collect())
    }

    pub fn graph(&self) -> &Graph {
        &self.graph
    }

    pub fn classes(&self) -> &[BTreeSet<Vertex>] {
        &self.classes
    }
}

fn positive(k: usize) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    Ok(())
}

fn all_colors(s: &ListAssignment, vertices: impl Iterator<Item = Vertex>) -> ColorSet {
    vertices.filter_map(|v| s.get(v)).flatten().copied().collect()
}

fn retry(
    budget: RandomBudget,
    mut attempt: impl FnMut(&mut ChaCha8Rng) -> Option<Choice>,
    accept: impl Fn(&Choice) -> bool,
) -> Result<RandomChoice> {
    for i in 0..budget.max_attempts {
        let mut rng = budget.rng(i);
        if let Some(choice) = attempt(&mut rng) {
            if accept(&choice) {
                return Ok(RandomChoice {
                    choice,
                    attempts: i + 1,
                    seed: budget.seed,
                });
            }
        }
    }
    Err(Error::Exhausted(budget.max_attempts))
}

/// Each color goes to a uniformly random class; a vertex takes `k` of its colors sent to its
/// own class.
pub fn choose_by_partition(
    pg: &PartitionedGraph,
    k: usize,
    s: &ListAssignment,
    budget: RandomBudget,
) -> Result<RandomChoice> {
    positive(k)?;
    for v in pg.graph.vertices() {
        s.list(v)?;
    }
    let colors = all_colors(s, pg.graph.vertices());
    let r = pg.classes.len();
    retry(
        budget,
        |rng| {
            let f: BTreeMap<Color, usize> = colors.iter().map(|&c| (c, rng.gen_range(0..r))).collect();
            let mut out = Choice::new();
            for (i, class) in pg.classes.iter().enumerate() {
                for &v in class {
                    let own: ColorSet = s.0[&v].iter().copied().filter(|c| f[c] == i).collect();
                    if own.len() < k {
                        return None;
                    }
                    out.insert(v, smallest(&own, k));
                }
            }
            Some(out)
        },
        |c| verify_choice(&pg.graph, s, c, k),
    )
}

/// Vertex classes of `K_{m_1, ..., m_r}` as laid out by [`complete_multipartite`].
fn consecutive_classes(sizes: &[usize]) -> Vec<Vec<Vertex>> {
    let mut next = 0;
    sizes
        .iter()
        .map(|&m| {
            let class: Vec<Vertex> = (next..next + m).collect();
            next += m;
            class
        })
        .collect()
}

fn average(classes: &[Vec<Vertex>]) -> f64 {
    classes.iter().map(Vec::len).sum::<usize>() as f64 / classes.len() as f64
}

/// Colors for `classes` drawn from `allowed`. With at most as many classes as their average
/// size, colors are split uniformly; otherwise the classes are halved and each color goes to
/// half `j` with weight `r_j (k + ln t_j)`, then each half recurses.
fn split(
    classes: &[Vec<Vertex>],
    allowed: &ColorSet,
    k: usize,
    s: &ListAssignment,
    rng: &mut ChaCha8Rng,
    out: &mut Choice,
) -> bool {
    let r = classes.len();
    let own = |v: Vertex, keep: &dyn Fn(Color) -> bool| -> ColorSet {
        s.0[&v].iter().copied().filter(|&c| allowed.contains(&c) && keep(c)).collect()
    };
    if r == 1 || r as f64 <= average(classes) {
        let f: BTreeMap<Color, usize> = allowed.iter().map(|&c| (c, rng.gen_range(0..r))).collect();
        for (i, class) in classes.iter().enumerate() {
            for &v in class {
                let mine = own(v, &|c| f[&c] == i);
                if mine.len() < k {
                    return false;
                }
                out.insert(v, smallest(&mine, k));
            }
        }
        return true;
    }
    let (left, right) = classes.split_at(r.div_ceil(2));
    let weight = |half: &[Vec<Vertex>]| half.len() as f64 * (k as f64 + average(half).ln());
    let (w1, w2) = (weight(left), weight(right));
    let p1 = w1 / (w1 + w2);
    let mut first = ColorSet::new();
    let mut second = ColorSet::new();
    for &c in allowed {
        if rng.gen_bool(p1) {
            first.insert(c);
        } else {
            second.insert(c);
        }
    }
    split(left, &first, k, s, rng, out) && split(right, &second, k, s, rng, out)
}

/// `k`-fold choice on `K_{m_1, ..., m_r}` (vertices numbered class by class) by recursive
/// random splitting of the colors.
pub fn choose_multipartite(
    class_sizes: &[usize],
    k: usize,
    s: &ListAssignment,
    budget: RandomBudget,
) -> Result<RandomChoice> {
    positive(k)?;
    if class_sizes.is_empty() || class_sizes.iter().any(|&m| m < 2) {
        return Err(Error::InvalidParameter("class sizes must be at least 2".into()));
    }
    let g = complete_multipartite(class_sizes);
    for v in g.vertices() {
        s.list(v)?;
    }
    let classes = consecutive_classes(class_sizes);
    let colors = all_colors(s, g.vertices());
    retry(
        budget,
        |rng| {
            let mut out = Choice::new();
            split(&classes, &colors, k, s, rng, &mut out).then_some(out)
        },
        |c| verify_choice(&g, s, c, k),
    )
}

/// Embeds `g` in the complete multipartite graph over a minimum proper coloring, each class
/// padded by one vertex carrying a copy of a class member's list, and chooses there.
pub fn embed_and_choose(
    g: &Graph,
    k: usize,
    s: &ListAssignment,
    budget: RandomBudget,
    search: &Budget,
) -> Result<RandomChoice> {
    positive(k)?;
    if g.is_empty() {
        return Ok(RandomChoice {
            choice: Choice::new(),
            attempts: 1,
            seed: budget.seed,
        });
    }
    for v in g.vertices() {
        s.list(v)?;
    }
    let chi = chromatic_number(g, search)?;
    let coloring = k_coloring(g, chi, search)?.expect("chromatic number admits a coloring");
    let mut classes: Vec<Vec<Vertex>> = vec![Vec::new(); chi];
    for (&v, &c) in &coloring {
        classes[c].push(v);
    }
    classes.retain(|c| !c.is_empty());
    let mut lists = ListAssignment::new();
    let mut back: BTreeMap<Vertex, Vertex> = BTreeMap::new();
    let mut next = 0;
    let mut sizes = Vec::new();
    for class in &classes {
        for &v in class {
            lists.insert(next, s.0[&v].clone());
            back.insert(next, v);
            next += 1;
        }
        lists.insert(next, s.0[&class[0]].clone());
        next += 1;
        sizes.push(class.len() + 1);
    }
    let mut rc = choose_multipartite(&sizes, k, &lists, budget)?;
    rc.choice = Choice(
        rc.choice
            .0
            .into_iter()
            .filter_map(|(i, c)| back.get(&i).map(|&v| (v, c)))
            .collect(),
    );
    debug_assert!(verify_choice(g, s, &rc.choice, k));
    Ok(rc)
}
