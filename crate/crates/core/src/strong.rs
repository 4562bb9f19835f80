//! Clique augmentations `[G, V_1, ..., V_r]`, partitions of set families with disjoint chosen
//! subsets, and the constructions that lift strong colorability and choosability.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::lists::{smallest, Choice, Color, ColorSet, ListAssignment};
use crate::oracle::{find_choice, k_coloring, Budget};

/// `[g, V_1, ..., V_r]`: `g` plus a clique on every part.
pub fn augment(base: &Graph, parts: &[BTreeSet<Vertex>]) -> Result<Graph> {
    check_parts(base, parts)?;
    let mut h = base.clone();
    for p in parts {
        let members: Vec<Vertex> = p.iter().copied().collect();
        for (i, &x) in members.iter().enumerate() {
            for &y in &members[i + 1..] {
                if !h.has_edge(x, y) {
                    h.add_edge(x, y);
                }
            }
        }
    }
    Ok(h)
}

fn check_parts(base: &Graph, parts: &[BTreeSet<Vertex>]) -> Result<()> {
    let mut seen = BTreeSet::new();
    for p in parts {
        for &v in p {
            if !base.contains(v) {
                return Err(Error::UnknownVertex(v));
            }
            if !seen.insert(v) {
                return Err(Error::OverlappingParts(v));
            }
        }
    }
    Ok(())
}

/// Ordered family of color sets.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct SetFamily {
    pub sets: Vec<ColorSet>,
}

impl SetFamily {
    pub fn new(sets: Vec<ColorSet>) -> Self {
        Self { sets }
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    fn require(&self, count: usize, size: usize) -> Result<()> {
        if self.sets.len() != count {
            return Err(Error::SizeMismatch(format!("expected {count} sets, got {}", self.sets.len())));
        }
        if let Some(s) = self.sets.iter().find(|s| s.len() != size) {
            return Err(Error::SizeMismatch(format!("expected sets of size {size}, got {s:?}")));
        }
        Ok(())
    }
}

/// Two groups of set indices with a chosen subset per set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilySplit {
    /// `k` indices, each with a `k`-subset.
    pub first: Vec<usize>,
    /// `l` indices, each with an `l`-subset.
    pub second: Vec<usize>,
    /// Chosen subset, indexed like the input.
    pub chosen: Vec<ColorSet>,
}

/// Splits `k + l` sets of size `k + l` into `k` and `l` of them with chosen `k`- and
/// `l`-subsets, no chosen subset of the first group meeting one of the second.
///
/// Colors move one at a time, in increasing order, from `A` (initially everything) to `B`
/// until at most `k` sets keep more than `k` colors in `A`. Then sets with more than `k` in
/// `A` go first, those with more than `l` in `B` second, and the balanced rest fill the first
/// group before the second.
pub fn split_family(f: &SetFamily, k: usize, l: usize) -> Result<FamilySplit> {
    if k == 0 || l == 0 {
        return Err(Error::InvalidParameter("k and l must be positive".into()));
    }
    f.require(k + l, k + l)?;
    let colors: Vec<Color> = f.sets.iter().flatten().copied().collect::<BTreeSet<_>>().into_iter().collect();
    let heavy_a = |a: &BTreeSet<Color>| f.sets.iter().filter(|s| s.intersection(a).count() > k).count();
    let mut a: BTreeSet<Color> = colors.iter().copied().collect();
    let mut prev = heavy_a(&a);
    let mut crossed = false;
    for &c in &colors {
        a.remove(&c);
        let now = heavy_a(&a);
        if prev > k && now <= k {
            crossed = true;
            break;
        }
        prev = now;
    }
    assert!(crossed, "sweep never crossed the threshold");
    let b: BTreeSet<Color> = colors.iter().copied().filter(|c| !a.contains(c)).collect();
    let mut first = Vec::with_capacity(k);
    let mut second = Vec::with_capacity(l);
    let mut middle = Vec::new();
    for (i, s) in f.sets.iter().enumerate() {
        let in_a = s.intersection(&a).count();
        if in_a > k {
            first.push(i);
        } else if s.len() - in_a > l {
            second.push(i);
        } else {
            middle.push(i);
        }
    }
    debug_assert!(first.len() <= k && second.len() < l);
    for i in middle {
        if first.len() < k {
            first.push(i);
        } else {
            second.push(i);
        }
    }
    first.sort_unstable();
    second.sort_unstable();
    let mut chosen = vec![ColorSet::new(); f.len()];
    for &i in &first {
        chosen[i] = smallest(&f.sets[i].intersection(&a).copied().collect(), k);
    }
    for &i in &second {
        chosen[i] = smallest(&f.sets[i].intersection(&b).copied().collect(), l);
    }
    Ok(FamilySplit { first, second, chosen })
}

/// `m` groups of `k` set indices with a chosen `k`-subset per set; chosen subsets of
/// different groups are disjoint.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FamilyPartition {
    pub groups: Vec<Vec<usize>>,
    pub chosen: Vec<ColorSet>,
}

/// Partitions `km` sets of size `km` by peeling off `k` sets at a time with [`split_family`]
/// and recursing on the remaining sets' chosen subsets.
pub fn partition_family(f: &SetFamily, k: usize, m: usize) -> Result<FamilyPartition> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidParameter("k and m must be positive".into()));
    }
    f.require(k * m, k * m)?;
    let mut groups = Vec::with_capacity(m);
    let mut chosen = vec![ColorSet::new(); f.len()];
    let mut ids: Vec<usize> = (0..f.len()).collect();
    let mut current = f.clone();
    for level in (1..=m).rev() {
        if level == 1 {
            for (j, s) in current.sets.iter().enumerate() {
                chosen[ids[j]] = smallest(s, k);
            }
            groups.push(ids.clone());
            break;
        }
        let split = split_family(&current, k, k * (level - 1))?;
        for &j in &split.first {
            chosen[ids[j]] = split.chosen[j].clone();
        }
        groups.push(split.first.iter().map(|&j| ids[j]).collect());
        current = SetFamily::new(split.second.iter().map(|&j| split.chosen[j].clone()).collect());
        ids = split.second.iter().map(|&j| ids[j]).collect();
    }
    Ok(FamilyPartition { groups, chosen })
}

/// Decides `k`-colorability of augmented graphs, returning a coloring with colors `0..k`.
pub trait ColoringOracle {
    fn k_color(&mut self, g: &Graph, k: usize) -> Result<Option<BTreeMap<Vertex, Color>>>;
}

/// Chooses one color per vertex from given lists on augmented graphs.
pub trait ListChooser {
    fn choose(&mut self, g: &Graph, s: &ListAssignment) -> Result<Option<Choice>>;
}

/// Exhaustive backtracking for both roles.
#[derive(Debug, Default)]
pub struct Exhaustive {
    pub budget: Budget,
}

impl ColoringOracle for Exhaustive {
    fn k_color(&mut self, g: &Graph, k: usize) -> Result<Option<BTreeMap<Vertex, Color>>> {
        k_coloring(g, k, &self.budget)
    }
}

impl ListChooser for Exhaustive {
    fn choose(&mut self, g: &Graph, s: &ListAssignment) -> Result<Option<Choice>> {
        find_choice(g, s, 1, &self.budget)
    }
}

/// A `(k + 1)`-coloring of `[g, V_1, ..., V_r]` for parts of size at most `k + 1`, from two
/// `k`-colorings of augmentations by parts of size at most `k`.
///
/// Round one drops the smallest vertex from every full part. In the resulting coloring each
/// shrunken full part is a `k`-clique, so color 0 appears on exactly one of its vertices; those
/// vertices form `S`, independent in the full augmentation. Round two drops `S` from the full
/// parts, and `S` gets color `k`.
pub fn strong_color_lift(
    g: &Graph,
    parts: &[BTreeSet<Vertex>],
    k: usize,
    oracle: &mut impl ColoringOracle,
) -> Result<BTreeMap<Vertex, Color>> {
    if k == 0 {
        return Err(Error::InvalidParameter("k must be positive".into()));
    }
    check_parts(g, parts)?;
    if let Some(p) = parts.iter().find(|p| p.len() > k + 1) {
        return Err(Error::SizeMismatch(format!("part {p:?} exceeds {} vertices", k + 1)));
    }
    let full: Vec<usize> = (0..parts.len()).filter(|&i| parts[i].len() == k + 1).collect();
    let mut shrunk: Vec<BTreeSet<Vertex>> = parts.to_vec();
    for &i in &full {
        let c = *shrunk[i].first().unwrap();
        shrunk[i].remove(&c);
    }
    let first = oracle.k_color(&augment(g, &shrunk)?, k)?.ok_or(Error::OracleRefused)?;
    let s: BTreeSet<Vertex> = full
        .iter()
        .map(|&i| *shrunk[i].iter().find(|v| first[v] == 0).expect("a k-clique uses every color"))
        .collect();
    let mut rest: Vec<BTreeSet<Vertex>> = parts.to_vec();
    for &i in &full {
        rest[i].retain(|v| !s.contains(v));
    }
    let second = oracle.k_color(&augment(g, &rest)?, k)?.ok_or(Error::OracleRefused)?;
    Ok(g.vertices().map(|v| (v, if s.contains(&v) { k } else { second[&v] })).collect())
}

/// A list coloring of `[g, V_1, ..., V_r]` from `km`-lists, parts of size at most `km`.
///
/// Each part's lists are partitioned with [`partition_family`] (short parts padded with
/// dummy sets of fresh colors) into `m` sub-parts of size at most `k` with `k`-lists that are
/// disjoint across sub-parts; the chooser then colors `g` augmented by all sub-parts from
/// those `k`-lists. Vertices outside every part keep their `k` smallest colors.
pub fn strong_choice_scale(
    g: &Graph,
    parts: &[BTreeSet<Vertex>],
    k: usize,
    m: usize,
    chooser: &mut impl ListChooser,
    s: &ListAssignment,
) -> Result<Choice> {
    if k == 0 || m == 0 {
        return Err(Error::InvalidParameter("k and m must be positive".into()));
    }
    check_parts(g, parts)?;
    let km = k * m;
    if let Some(p) = parts.iter().find(|p| p.len() > km) {
        return Err(Error::SizeMismatch(format!("part {p:?} exceeds {km} vertices")));
    }
    s.check_sizes(g, |_| km)?;
    let trimmed: BTreeMap<Vertex, ColorSet> = g.vertices().map(|v| (v, smallest(&s.0[&v], km))).collect();
    let fresh_start = trimmed.values().flatten().max().map_or(0, |c| c + 1);
    let dummy: ColorSet = (fresh_start..fresh_start + km).collect();
    let mut sub_parts = Vec::new();
    let mut small = ListAssignment::new();
    for part in parts {
        let members: Vec<Vertex> = part.iter().copied().collect();
        let mut sets: Vec<ColorSet> = members.iter().map(|v| trimmed[v].clone()).collect();
        sets.resize(km, dummy.clone());
        let fp = partition_family(&SetFamily::new(sets), k, m)?;
        for group in &fp.groups {
            let sub: BTreeSet<Vertex> = group.iter().filter_map(|&j| members.get(j).copied()).collect();
            if !sub.is_empty() {
                sub_parts.push(sub);
            }
        }
        for (j, &v) in members.iter().enumerate() {
            small.insert(v, fp.chosen[j].clone());
        }
    }
    for v in g.vertices() {
        if small.get(v).is_none() {
            small.insert(v, smallest(&trimmed[&v], k));
        }
    }
    let h = augment(g, &sub_parts)?;
    chooser.choose(&h, &small)?.ok_or(Error::ChooserRefused)
}

/// The clique-cover form: `parts` must partition the vertices into sets of exactly `km`.
pub fn strong_choice_cover(
    g: &Graph,
    parts: &[BTreeSet<Vertex>],
    k: usize,
    m: usize,
    chooser: &mut impl ListChooser,
    s: &ListAssignment,
) -> Result<Choice> {
    let covered: usize = parts.iter().map(BTreeSet::len).sum();
    if parts.iter().any(|p| p.len() != k * m) || covered != g.order() {
        return Err(Error::SizeMismatch(format!("parts must cover all vertices in blocks of {}", k * m)));
    }
    strong_choice_scale(g, parts, k, m, chooser, s)
}
