//! Compatibility of 2-subsets along sequences of 4-sets, and on `K_{2,2}`.
//!
//! A relation between the 2-subsets of two 4-sets is kept internally as six row masks: row `i`
//! is the `i`-th position pair of the left universe, bit `j` the `j`-th of the right one.

use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::lists::{Color, ColorSet};

/// Position pairs of a 4-sequence, in the fixed order used by row masks.
pub const POSITION_PAIRS: [(usize, usize); 6] = [(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];

/// A 2-subset, smaller color first.
pub type Pair = [Color; 2];

pub(crate) type Rows = [u8; 6];

fn pair_index(a: usize, b: usize) -> usize {
    let (a, b) = if a < b { (a, b) } else { (b, a) };
    POSITION_PAIRS.iter().position(|&p| p == (a, b)).unwrap()
}

fn pair_of(set: &[Color; 4], i: usize) -> Pair {
    let (p, q) = POSITION_PAIRS[i];
    let (a, b) = (set[p], set[q]);
    if a < b {
        [a, b]
    } else {
        [b, a]
    }
}

/// The six 2-subsets of a 4-set, in position-pair order.
pub fn two_subsets(set: &[Color; 4]) -> [Pair; 6] {
    std::array::from_fn(|i| pair_of(set, i))
}

/// `A_1, ..., A_m`: sequences of 4 distinct colors where positions matter.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct FourSetSequence {
    sets: Vec<[Color; 4]>,
}

impl FourSetSequence {
    pub fn new(sets: Vec<[Color; 4]>) -> Result<Self> {
        if sets.is_empty() {
            return Err(Error::InvalidParameter("a sequence needs at least one 4-set".into()));
        }
        for s in &sets {
            if s.iter().collect::<BTreeSet<_>>().len() != 4 {
                return Err(Error::InvalidParameter(format!("{s:?} repeats a color")));
            }
        }
        Ok(Self { sets })
    }

    /// Realigns unordered 4-lists greedily from the first: shared colors keep their position,
    /// new colors fill the free positions in increasing order.
    pub fn aligned(lists: &[ColorSet]) -> Result<Self> {
        let mut sets: Vec<[Color; 4]> = Vec::with_capacity(lists.len());
        for list in lists {
            if list.len() != 4 {
                return Err(Error::SizeMismatch(format!("expected a 4-list, got {list:?}")));
            }
            let next = match sets.last() {
                None => {
                    let v: Vec<Color> = list.iter().copied().collect();
                    [v[0], v[1], v[2], v[3]]
                }
                Some(prev) => {
                    let mut slot: [Option<Color>; 4] = [None; 4];
                    for (p, c) in prev.iter().enumerate() {
                        if list.contains(c) {
                            slot[p] = Some(*c);
                        }
                    }
                    let mut fresh = list.iter().filter(|c| !prev.contains(c));
                    slot.map(|s| s.unwrap_or_else(|| *fresh.next().unwrap()))
                }
            };
            sets.push(next);
        }
        Self::new(sets)
    }

    pub fn sets(&self) -> &[[Color; 4]] {
        &self.sets
    }

    pub fn len(&self) -> usize {
        self.sets.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }

    /// Every color shared by consecutive sets sits at the same position in both.
    pub fn is_valid(&self) -> bool {
        self.sets.windows(2).all(|w| {
            (0..4).all(|p| match w[1].iter().position(|&c| c == w[0][p]) {
                Some(q) => q == p,
                None => true,
            })
        })
    }

    /// Valid, and a color entering at step `i + 1` appears nowhere before.
    pub fn is_legal(&self) -> bool {
        self.is_valid()
            && (1..self.sets.len()).all(|i| {
                let earlier: BTreeSet<Color> = self.sets[..i].iter().flatten().copied().collect();
                self.sets[i]
                    .iter()
                    .all(|c| self.sets[i - 1].contains(c) || !earlier.contains(c))
            })
    }

    /// Positions whose entry differs between some consecutive pair.
    pub fn changed_positions(&self) -> [bool; 4] {
        std::array::from_fn(|p| self.sets.windows(2).any(|w| w[0][p] != w[1][p]))
    }

    pub fn change_count(&self) -> usize {
        self.changed_positions().iter().filter(|&&b| b).count()
    }

    /// Contiguous piece `A_i..A_j`, 0-based and inclusive.
    pub fn window(&self, i: usize, j: usize) -> Self {
        Self {
            sets: self.sets[i..=j].to_vec(),
        }
    }
}

/// Set of pairs `(C, D)` of 2-subsets of `left` and `right`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct PairRelation {
    pub left: [Color; 4],
    pub right: [Color; 4],
    pub pairs: BTreeSet<(Pair, Pair)>,
}

impl PairRelation {
    pub(crate) fn from_rows(left: [Color; 4], right: [Color; 4], rows: &Rows) -> Self {
        let (lp, rp) = (two_subsets(&left), two_subsets(&right));
        let mut pairs = BTreeSet::new();
        for (i, &row) in rows.iter().enumerate() {
            for (j, &d) in rp.iter().enumerate() {
                if row >> j & 1 == 1 {
                    pairs.insert((lp[i], d));
                }
            }
        }
        Self { left, right, pairs }
    }

    pub(crate) fn rows(&self) -> Rows {
        let (lp, rp) = (two_subsets(&self.left), two_subsets(&self.right));
        let mut rows = [0u8; 6];
        for (c, d) in &self.pairs {
            let (Some(i), Some(j)) = (lp.iter().position(|p| p == c), rp.iter().position(|p| p == d)) else {
                continue;
            };
            rows[i] |= 1 << j;
        }
        rows
    }

    pub fn len(&self) -> usize {
        self.pairs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }

    /// `c(H)`: the right 2-subsets related to `h`.
    pub fn fan(&self, h: Pair) -> BTreeSet<Pair> {
        self.pairs.iter().filter(|(c, _)| *c == h).map(|&(_, d)| d).collect()
    }

    /// Fan sizes of the six left 2-subsets, largest first.
    pub fn degree_sequence(&self) -> [usize; 6] {
        degree_sequence(&self.rows())
    }

    pub fn classify(&self) -> SpecialTag {
        classify_rows(&self.rows())
    }
}

pub(crate) fn degree_sequence(rows: &Rows) -> [usize; 6] {
    let mut d = rows.map(|r| r.count_ones() as usize);
    d.sort_unstable_by(|a, b| b.cmp(a));
    d
}

/// Whether a relation is special, and its two parity properties when it is.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct SpecialTag {
    pub is_special: bool,
    pub has_p1: bool,
    pub has_p2: bool,
}

/// Structural test: degree sequence (6,5,5,3,3,1); the two rows of degree 3 share one element
/// and have the same fan; that fan is a star or a triangle; and of the pair formed by their
/// private elements and its complement, one has degree 1 and the other degree 6.
/// P1 is a star fan, P2 degree 1 on the pair of private elements.
pub(crate) fn classify_rows(rows: &Rows) -> SpecialTag {
    let no = SpecialTag::default();
    if degree_sequence(rows) != [6, 5, 5, 3, 3, 1] {
        return no;
    }
    let threes: Vec<usize> = (0..6).filter(|&i| rows[i].count_ones() == 3).collect();
    let (h, g) = (POSITION_PAIRS[threes[0]], POSITION_PAIRS[threes[1]]);
    let hs = [h.0, h.1];
    let gs = [g.0, g.1];
    let shared: Vec<usize> = hs.iter().copied().filter(|x| gs.contains(x)).collect();
    if shared.len() != 1 || rows[threes[0]] != rows[threes[1]] {
        return no;
    }
    let one = shared[0];
    let two = if hs[0] == one { hs[1] } else { hs[0] };
    let three = if gs[0] == one { gs[1] } else { gs[0] };
    let four = (0..4).find(|x| ![one, two, three].contains(x)).unwrap();
    let fan = rows[threes[0]];
    let members: Vec<(usize, usize)> = (0..6).filter(|j| fan >> j & 1 == 1).map(|j| POSITION_PAIRS[j]).collect();
    let star = (0..4).any(|x| members.iter().all(|&(a, b)| a == x || b == x));
    let covered: BTreeSet<usize> = members.iter().flat_map(|&(a, b)| [a, b]).collect();
    let triangle = covered.len() == 3;
    if !star && !triangle {
        return no;
    }
    let d23 = rows[pair_index(two, three)].count_ones();
    let d14 = rows[pair_index(one, four)].count_ones();
    if !matches!((d23, d14), (1, 6) | (6, 1)) {
        return no;
    }
    SpecialTag {
        is_special: true,
        has_p1: star,
        has_p2: d23 == 1,
    }
}

pub fn classify_special(rel: &PairRelation) -> SpecialTag {
    rel.classify()
}

fn disjoint_mask(a: &[Color; 4], i: usize, b: &[Color; 4]) -> u8 {
    let (p, q) = POSITION_PAIRS[i];
    let mut m = 0;
    for (j, &(r, s)) in POSITION_PAIRS.iter().enumerate() {
        if ![b[r], b[s]].iter().any(|c| *c == a[p] || *c == a[q]) {
            m |= 1 << j;
        }
    }
    m
}

/// Row `i`: position pairs of `A_m` reachable from pair `i` of `A_1` by a chain of pairwise
/// disjoint 2-subsets. The one-set sequence relates each pair to itself.
pub(crate) fn comp_rows(sets: &[[Color; 4]]) -> Rows {
    let mut reach: Rows = std::array::from_fn(|i| 1 << i);
    for w in sets.windows(2) {
        let step: [u8; 6] = std::array::from_fn(|i| disjoint_mask(&w[0], i, &w[1]));
        for r in reach.iter_mut() {
            let mut next = 0;
            for (i, s) in step.iter().enumerate() {
                if *r >> i & 1 == 1 {
                    next |= s;
                }
            }
            *r = next;
        }
    }
    reach
}

/// Compatible pairs `(C_1, C_m)`.
pub fn comp_sequence(seq: &FourSetSequence) -> PairRelation {
    let sets = seq.sets();
    PairRelation::from_rows(sets[0], sets[sets.len() - 1], &comp_rows(sets))
}

/// 2-subsets of `A_1` compatible with every 2-subset of `A_m`.
pub fn good_subsets(seq: &FourSetSequence) -> Vec<Pair> {
    let rows = comp_rows(seq.sets());
    let pairs = two_subsets(&seq.sets()[0]);
    (0..6).filter(|&i| rows[i] == 0b11_1111).map(|i| pairs[i]).collect()
}

/// Incompatible pairs on `K_{2,2}` with sides `{x1, x2}`, `{y1, y2}`, and the bad subsets.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct K22Report {
    pub incomp: PairRelation,
    /// 2-subsets of `S(x1)` compatible with no 2-subset of `S(x2)`.
    pub bad_x1: Vec<Pair>,
    pub bad_x2: Vec<Pair>,
    /// Both sides have a bad subset.
    pub defected: bool,
}

pub(crate) fn incomp_rows(sx1: &[Color; 4], sx2: &[Color; 4], sy: [&[Color; 4]; 2]) -> Rows {
    std::array::from_fn(|i| {
        let c = pair_of(sx1, i);
        let mut row = 0;
        for j in 0..6 {
            let d = pair_of(sx2, j);
            let blocked = sy
                .iter()
                .any(|s| s.iter().filter(|x| !c.contains(x) && !d.contains(x)).count() < 2);
            if blocked {
                row |= 1 << j;
            }
        }
        row
    })
}

pub fn incomp_k22(sx1: [Color; 4], sx2: [Color; 4], sy1: [Color; 4], sy2: [Color; 4]) -> K22Report {
    let mut sx1 = sx1;
    let mut sx2 = sx2;
    sx1.sort_unstable();
    sx2.sort_unstable();
    let rows = incomp_rows(&sx1, &sx2, [&sy1, &sy2]);
    let left = two_subsets(&sx1);
    let right = two_subsets(&sx2);
    let bad_x1: Vec<Pair> = (0..6).filter(|&i| rows[i] == 0b11_1111).map(|i| left[i]).collect();
    let bad_x2: Vec<Pair> = (0..6)
        .filter(|&j| rows.iter().all(|r| r >> j & 1 == 1))
        .map(|j| right[j])
        .collect();
    let defected = !bad_x1.is_empty() && !bad_x2.is_empty();
    K22Report {
        incomp: PairRelation::from_rows(sx1, sx2, &rows),
        bad_x1,
        bad_x2,
        defected,
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    const ALL: u8 = 0b11_1111;

    fn perms4() -> Vec<[usize; 4]> {
        let mut out = Vec::new();
        for a in 0..4 {
            for b in 0..4 {
                for c in 0..4 {
                    for d in 0..4 {
                        let p = [a, b, c, d];
                        if p.iter().collect::<BTreeSet<_>>().len() == 4 {
                            out.push(p);
                        }
                    }
                }
            }
        }
        out
    }

    /// Literal reading of the definition under every relabeling of both universes:
    /// label `l` on the left sits at position `sigma[l - 1]`, label `5 + l` on the right at
    /// `tau[l]`. Returns (special, P1, P2).
    fn special_by_relabeling(rows: &Rows) -> (bool, bool, bool) {
        let deg = |h: (usize, usize)| rows[pair_index(h.0, h.1)].count_ones();
        let mut found = (false, false, false);
        for sigma in perms4() {
            let lab = |l: usize| sigma[l - 1];
            let h = (lab(1), lab(2));
            let g = (lab(1), lab(3));
            if degree_sequence(rows) != [6, 5, 5, 3, 3, 1] || deg(h) != 3 || deg(g) != 3 {
                continue;
            }
            let fan_h = rows[pair_index(h.0, h.1)];
            if fan_h != rows[pair_index(g.0, g.1)] {
                continue;
            }
            let d23 = deg((lab(2), lab(3)));
            let d14 = deg((lab(1), lab(4)));
            if !matches!((d23, d14), (1, 6) | (6, 1)) {
                continue;
            }
            for tau in perms4() {
                let r = |a: usize, b: usize| 1u8 << pair_index(tau[a - 5], tau[b - 5]);
                let star = r(5, 6) | r(5, 7) | r(5, 8);
                let tri = r(5, 6) | r(5, 7) | r(6, 7);
                if fan_h == star || fan_h == tri {
                    found.0 = true;
                    found.1 |= fan_h == star;
                    found.2 |= d23 == 1;
                }
            }
        }
        found
    }

    fn naive_comp(sets: &[[Color; 4]]) -> BTreeSet<(Pair, Pair)> {
        fn walk(sets: &[[Color; 4]], i: usize, cur: Pair, out: &mut BTreeSet<Pair>) {
            if i == sets.len() {
                out.insert(cur);
                return;
            }
            for d in two_subsets(&sets[i]) {
                if !d.iter().any(|c| cur.contains(c)) {
                    walk(sets, i + 1, d, out);
                }
            }
        }
        let mut rel = BTreeSet::new();
        for c in two_subsets(&sets[0]) {
            let mut ends = BTreeSet::new();
            walk(sets, 1, c, &mut ends);
            rel.extend(ends.into_iter().map(|d| (c, d)));
        }
        rel
    }

    fn seq(sets: &[[Color; 4]]) -> FourSetSequence {
        FourSetSequence::new(sets.to_vec()).unwrap()
    }

    #[test]
    fn repeated_set_relates_complements() {
        let a = [1, 2, 3, 4];
        let rel = comp_sequence(&seq(&[a, a]));
        assert_eq!(rel.len(), 6);
        for (c, d) in &rel.pairs {
            let mut u: Vec<Color> = c.iter().chain(d).copied().collect();
            u.sort_unstable();
            assert_eq!(u, vec![1, 2, 3, 4]);
        }
        assert!(good_subsets(&seq(&[a, a])).is_empty());
        assert_eq!(good_subsets(&seq(&[a, [5, 6, 7, 8]])).len(), 6);
        assert_eq!(comp_sequence(&seq(&[a])).len(), 6);
    }

    #[test]
    fn k22_examples() {
        let r = incomp_k22([1, 2, 4, 5], [1, 3, 4, 5], [1, 2, 3, 4], [1, 2, 3, 5]);
        assert!(r.defected);
        assert_eq!(r.bad_x1, vec![[1, 2]]);
        assert_eq!(r.bad_x2, vec![[1, 3]]);
        let tag = r.incomp.classify();
        assert_eq!(
            tag,
            SpecialTag {
                is_special: true,
                has_p1: true,
                has_p2: true
            }
        );

        let r = incomp_k22([1, 2, 5, 6], [3, 4, 5, 6], [1, 2, 3, 4], [1, 3, 5, 6]);
        assert_eq!(r.incomp.degree_sequence(), [6, 5, 5, 3, 2, 2]);
        assert!(!r.incomp.classify().is_special);

        let r = incomp_k22([1, 2, 4, 6], [3, 4, 5, 6], [1, 2, 3, 4], [1, 3, 5, 6]);
        assert_eq!(r.incomp.len(), 21);
    }

    #[test]
    fn empty_relation_is_not_special() {
        let rel = PairRelation::from_rows([0, 1, 2, 3], [4, 5, 6, 7], &[0; 6]);
        assert_eq!(rel.classify(), SpecialTag::default());
        assert_eq!(rel.degree_sequence(), [0; 6]);
    }

    #[test]
    fn relation_round_trips_through_rows() {
        let r = incomp_k22([1, 2, 4, 5], [1, 3, 4, 5], [1, 2, 3, 4], [1, 2, 3, 5]);
        assert_eq!(PairRelation::from_rows(r.incomp.left, r.incomp.right, &r.incomp.rows()), r.incomp);
        assert_eq!(r.incomp.fan([1, 2]).len(), 6);
        let json = serde_json::to_string(&r.incomp).unwrap();
        assert_eq!(serde_json::from_str::<PairRelation>(&json).unwrap(), r.incomp);
    }

    #[test]
    fn alignment_keeps_shared_positions() {
        let lists: Vec<ColorSet> = [vec![1, 2, 3, 4], vec![2, 5, 4, 9], vec![9, 7, 8, 6]]
            .into_iter()
            .map(|v| v.into_iter().collect())
            .collect();
        let s = FourSetSequence::aligned(&lists).unwrap();
        assert!(s.is_valid());
        assert_eq!(s.sets()[1], [5, 2, 9, 4]);
        assert_eq!(s.sets()[2][2], 9);
        assert!(!seq(&[[1, 2, 3, 4], [2, 1, 3, 4]]).is_valid());
        assert!(!seq(&[[1, 2, 3, 4], [5, 2, 3, 4], [1, 2, 3, 4]]).is_legal());
        assert!(FourSetSequence::new(vec![[1, 1, 2, 3]]).is_err());
        assert!(FourSetSequence::new(vec![]).is_err());
    }

    /// Every 6x6 relation reachable from rows of small Hamming weight patterns plus the
    /// incompatibility relations of all K_{2,2} families over 6 colors.
    #[test]
    fn structural_classification_matches_relabeling_search() {
        let mut seen = BTreeSet::new();
        let sets: Vec<[Color; 4]> = (0u32..64)
            .filter(|m| m.count_ones() == 4)
            .map(|m| {
                let v: Vec<Color> = (0..6).filter(|i| m >> i & 1 == 1).collect();
                [v[0], v[1], v[2], v[3]]
            })
            .collect();
        for a in &sets {
            for b in &sets {
                for c in &sets {
                    seen.insert(incomp_rows(&[0, 1, 2, 3], a, [b, c]));
                }
            }
        }
        let mut specials = 0;
        for rows in &seen {
            let tag = classify_rows(rows);
            let (s, p1, p2) = special_by_relabeling(rows);
            assert_eq!((tag.is_special, tag.has_p1, tag.has_p2), (s, s && p1, s && p2), "{rows:?}");
            specials += s as usize;
        }
        assert!(specials > 0);
    }

    proptest! {
        #[test]
        fn classification_agrees_on_random_relations(rows in prop::array::uniform6(0u8..64)) {
            let tag = classify_rows(&rows);
            let (s, p1, p2) = special_by_relabeling(&rows);
            prop_assert_eq!((tag.is_special, tag.has_p1, tag.has_p2), (s, s && p1, s && p2));
        }

        #[test]
        fn special_shapes_classify_under_any_relabeling(
            star in any::<bool>(),
            low23 in any::<bool>(),
            si in 0usize..24,
            ti in 0usize..24,
        ) {
            let (sigma, tau) = (perms4()[si], perms4()[ti]);
            // degrees 6,5,5 on the rows outside H, G and the 1-row
            let mut rows = [ALL; 6];
            let lab = |l: usize| sigma[l - 1];
            let r = |a: usize, b: usize| 1u8 << pair_index(tau[a - 5], tau[b - 5]);
            let fan = if star { r(5, 6) | r(5, 7) | r(5, 8) } else { r(5, 6) | r(5, 7) | r(6, 7) };
            rows[pair_index(lab(1), lab(2))] = fan;
            rows[pair_index(lab(1), lab(3))] = fan;
            let (one_row, six_row) = if low23 { ((2, 3), (1, 4)) } else { ((1, 4), (2, 3)) };
            rows[pair_index(lab(one_row.0), lab(one_row.1))] = r(7, 8);
            rows[pair_index(lab(six_row.0), lab(six_row.1))] = ALL;
            let five = ALL & !r(5, 6);
            rows[pair_index(lab(2), lab(4))] = five;
            rows[pair_index(lab(3), lab(4))] = five;
            let tag = classify_rows(&rows);
            prop_assert_eq!(tag, SpecialTag { is_special: true, has_p1: star, has_p2: low23 });
        }

        #[test]
        fn dynamic_programming_matches_chain_enumeration(
            raw in prop::collection::vec(prop::sample::subsequence((0..8).collect::<Vec<Color>>(), 4), 1..=5),
            shuffles in prop::collection::vec(0usize..24, 5),
        ) {
            let p = perms4();
            let sets: Vec<[Color; 4]> = raw
                .iter()
                .zip(&shuffles)
                .map(|(v, &s)| std::array::from_fn(|i| v[p[s][i]]))
                .collect();
            let rows = comp_rows(&sets);
            let rel = PairRelation::from_rows(sets[0], *sets.last().unwrap(), &rows);
            prop_assert_eq!(rel.pairs, naive_comp(&sets));
        }
    }
}
