//! Color lists `S(v)` and chosen subsets `C(v)`.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

pub type Color = usize;
pub type ColorSet = BTreeSet<Color>;

/// Per-vertex color lists. Serialized as a JSON object from vertex id to sorted color array.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct ListAssignment(pub BTreeMap<Vertex, ColorSet>);

impl ListAssignment {
    pub fn new() -> Self {
        Self::default()
    }

    /// The same list on every vertex of `g`.
    pub fn uniform(g: &Graph, colors: impl IntoIterator<Item = Color>) -> Self {
        let list: ColorSet = colors.into_iter().collect();
        Self(g.vertices().map(|v| (v, list.clone())).collect())
    }

    pub fn from_lists<I, L>(lists: I) -> Self
    where
        I: IntoIterator<Item = (Vertex, L)>,
        L: IntoIterator<Item = Color>,
    {
        Self(
            lists
                .into_iter()
                .map(|(v, l)| (v, l.into_iter().collect()))
                .collect(),
        )
    }

    pub fn get(&self, v: Vertex) -> Option<&ColorSet> {
        self.0.get(&v)
    }

    pub fn list(&self, v: Vertex) -> Result<&ColorSet> {
        self.0.get(&v).ok_or(Error::MissingList(v))
    }

    pub fn insert(&mut self, v: Vertex, colors: ColorSet) {
        self.0.insert(v, colors);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &ColorSet)> {
        self.0.iter().map(|(&v, l)| (v, l))
    }

    pub fn all_colors(&self) -> ColorSet {
        self.0.values().flatten().copied().collect()
    }

    /// Every vertex of `g` must have a list of at least `need(v)` colors.
    pub fn check_sizes(&self, g: &Graph, need: impl Fn(Vertex) -> usize) -> Result<()> {
        for v in g.vertices() {
            let found = self.list(v)?.len();
            let needed = need(v);
            if found < needed {
                return Err(Error::ListTooSmall {
                    vertex: v,
                    needed,
                    found,
                });
            }
        }
        Ok(())
    }

    pub fn restrict(&self, keep: impl Fn(Vertex) -> bool) -> Self {
        Self(
            self.0
                .iter()
                .filter(|(&v, _)| keep(v))
                .map(|(&v, l)| (v, l.clone()))
                .collect(),
        )
    }
}

/// Chosen color subsets, one per vertex.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Choice(pub BTreeMap<Vertex, ColorSet>);

impl Choice {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn get(&self, v: Vertex) -> Option<&ColorSet> {
        self.0.get(&v)
    }

    pub fn insert(&mut self, v: Vertex, colors: ColorSet) {
        self.0.insert(v, colors);
    }

    pub fn iter(&self) -> impl Iterator<Item = (Vertex, &ColorSet)> {
        self.0.iter().map(|(&v, l)| (v, l))
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Proper coloring as a single-color choice.
    pub fn from_coloring(coloring: &BTreeMap<Vertex, Color>) -> Self {
        Self(
            coloring
                .iter()
                .map(|(&v, &c)| (v, BTreeSet::from([c])))
                .collect(),
        )
    }

    pub fn restrict(&self, keep: impl Fn(Vertex) -> bool) -> Self {
        Self(
            self.0
                .iter()
                .filter(|(&v, _)| keep(v))
                .map(|(&v, l)| (v, l.clone()))
                .collect(),
        )
    }
}

/// Smallest `k` colors of a list.
pub(crate) fn smallest(colors: &ColorSet, k: usize) -> ColorSet {
    colors.iter().take(k).copied().collect()
}

/// Checks subset containment, exact size `b` and edge disjointness on every vertex of `g`.
pub fn verify_choice(g: &Graph, s: &ListAssignment, c: &Choice, b: usize) -> bool {
    for v in g.vertices() {
        let (Some(list), Some(chosen)) = (s.get(v), c.get(v)) else {
            return false;
        };
        if chosen.len() != b || !chosen.is_subset(list) {
            return false;
        }
    }
    g.edges().all(|(u, v)| c.0[&u].is_disjoint(&c.0[&v]))
}
