//! Enumeration of list assignments with prescribed sizes, at several symmetry reductions.

use super::solve::Dense;
use super::{Budget, Reduction};
use crate::error::Result;

/// What the visitor wants after seeing an assignment.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub(crate) enum Flow {
    Continue,
    Stop,
}

pub(crate) type Visitor<'a> = dyn FnMut(&[u128]) -> Result<Flow> + 'a;

/// Calls `visit` on list assignments (bitmask per position) with `|S(v)| = sizes[v]`.
///
/// * `Raw`: every tuple of `sizes[v]`-subsets of the universe `0..Σ sizes`.
/// * `FirstUse`: new colors appear in increasing order, so two assignments differing by a
///   color permutation that preserves first use are both visited only once.
/// * `Orbit`: one assignment per orbit under color permutations. Colors are grouped by the set of
///   earlier positions holding them and each position picks a count from every group.
/// * `Full`: `Orbit`, restricted to assignments where every color's holders induce a connected
///   subgraph and no two colors have disjoint, adjacent holder sets. Splitting a color along the
///   components of its holders gives an equivalent instance, and merging two colors with
///   disjoint holder sets gives a harder one, so these assignments decide choosability.
pub(crate) fn for_each_assignment(
    g: &Dense,
    sizes: &[usize],
    reduction: Reduction,
    budget: &Budget,
    visit: &mut Visitor<'_>,
) -> Result<Flow> {
    match reduction {
        Reduction::Raw => raw(g, sizes, budget, visit),
        Reduction::FirstUse => first_use(sizes, budget, visit),
        Reduction::Orbit | Reduction::Full => {
            let mut e = Orbit {
                g,
                sizes,
                full: reduction == Reduction::Full,
                budget,
                visit,
            };
            e.rec(0, &mut Vec::new())
        }
    }
}

fn next_combination(pick: &mut [u32], universe: u32) -> bool {
    let k = pick.len();
    let mut i = k;
    while i > 0 && pick[i - 1] == universe - (k - i) as u32 - 1 {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    pick[i - 1] += 1;
    for j in i..k {
        pick[j] = pick[j - 1] + 1;
    }
    true
}

fn mask_of(pick: &[u32]) -> u128 {
    pick.iter().fold(0, |m, &c| m | 1 << c)
}

fn raw(g: &Dense, sizes: &[usize], budget: &Budget, visit: &mut Visitor<'_>) -> Result<Flow> {
    let universe: u32 = sizes.iter().sum::<usize>() as u32;
    let n = g.n();
    let mut picks: Vec<Vec<u32>> = sizes.iter().map(|&s| (0..s as u32).collect()).collect();
    loop {
        budget.spend(1)?;
        let lists: Vec<u128> = picks.iter().map(|p| mask_of(p)).collect();
        if visit(&lists)? == Flow::Stop {
            return Ok(Flow::Stop);
        }
        let mut v = n;
        loop {
            if v == 0 {
                return Ok(Flow::Continue);
            }
            v -= 1;
            if next_combination(&mut picks[v], universe) {
                break;
            }
            picks[v] = (0..sizes[v] as u32).collect();
        }
    }
}

fn first_use(sizes: &[usize], budget: &Budget, visit: &mut Visitor<'_>) -> Result<Flow> {
    fn rec(
        i: usize,
        used: u32,
        sizes: &[usize],
        lists: &mut Vec<u128>,
        budget: &Budget,
        visit: &mut Visitor<'_>,
    ) -> Result<Flow> {
        if i == sizes.len() {
            budget.spend(1)?;
            return visit(lists);
        }
        let a = sizes[i] as u32;
        for old in (0..=a.min(used)).rev() {
            let fresh = a - old;
            let mut pick: Vec<u32> = (0..old).collect();
            loop {
                let mask = mask_of(&pick) | (((1u128 << fresh) - 1) << used);
                lists.push(mask);
                let flow = rec(i + 1, used + fresh, sizes, lists, budget, visit)?;
                lists.pop();
                if flow == Flow::Stop {
                    return Ok(Flow::Stop);
                }
                if old == 0 || !next_combination(&mut pick, used) {
                    break;
                }
            }
        }
        Ok(Flow::Continue)
    }
    rec(0, 0, sizes, &mut Vec::new(), budget, visit)
}

struct Orbit<'a, 'v> {
    g: &'a Dense,
    sizes: &'a [usize],
    full: bool,
    budget: &'a Budget,
    visit: &'a mut Visitor<'v>,
}

/// Whether `m` lies inside one component of the subgraph induced by `m | extra`.
fn connected_within(g: &Dense, m: u64, extra: u64) -> bool {
    let allowed = m | extra;
    let mut seen = m & m.wrapping_neg();
    let mut frontier = seen;
    while frontier != 0 {
        let v = frontier.trailing_zeros() as usize;
        frontier &= frontier - 1;
        let new = g.adj[v] & allowed & !seen;
        seen |= new;
        frontier |= new;
    }
    m & !seen == 0
}

impl Orbit<'_, '_> {
    /// Classes are `(holders, count)` over positions `< i`.
    fn rec(&mut self, i: usize, classes: &mut Vec<(u64, u32)>) -> Result<Flow> {
        let n = self.g.n();
        if i == n {
            return self.leaf(classes);
        }
        let future = if i + 1 >= 64 { 0 } else { !0u64 << (i + 1) } & low_mask(n);
        let a = self.sizes[i] as u32;
        let mut next: Vec<(u64, u32)> = Vec::with_capacity(classes.len() * 2 + 1);
        self.split(i, 0, a, future, classes, &mut next)
    }

    fn split(
        &mut self,
        i: usize,
        ci: usize,
        left: u32,
        future: u64,
        classes: &[(u64, u32)],
        next: &mut Vec<(u64, u32)>,
    ) -> Result<Flow> {
        if ci == classes.len() {
            let len = next.len();
            if left > 0 {
                next.push((1 << i, left));
            }
            let flow = self.rec(i + 1, next);
            next.truncate(len);
            return flow;
        }
        let (m, cnt) = classes[ci];
        let bit = 1u64 << i;
        for j in (0..=cnt.min(left)).rev() {
            let len = next.len();
            if j > 0 {
                next.push((m | bit, j));
            }
            if j < cnt {
                next.push((m, cnt - j));
            }
            let viable = !self.full
                || ((j == 0 || connected_within(self.g, m | bit, future))
                    && (j == cnt || connected_within(self.g, m, future)));
            let flow = if viable {
                self.split(i, ci + 1, left - j, future, classes, next)?
            } else {
                Flow::Continue
            };
            next.truncate(len);
            if flow == Flow::Stop {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }

    fn leaf(&mut self, classes: &[(u64, u32)]) -> Result<Flow> {
        if self.full {
            for (x, &(m, _)) in classes.iter().enumerate() {
                let nb = neighborhood(self.g, m);
                for &(m2, _) in &classes[x + 1..] {
                    if m & m2 == 0 && nb & m2 != 0 {
                        return Ok(Flow::Continue);
                    }
                }
            }
        }
        self.budget.spend(1)?;
        let mut lists = vec![0u128; self.g.n()];
        let mut color = 0;
        for &(m, cnt) in classes {
            for _ in 0..cnt {
                let mut h = m;
                while h != 0 {
                    let v = h.trailing_zeros() as usize;
                    h &= h - 1;
                    lists[v] |= 1 << color;
                }
                color += 1;
            }
        }
        (self.visit)(&lists)
    }
}

fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        !0
    } else {
        (1 << n) - 1
    }
}

fn neighborhood(g: &Dense, m: u64) -> u64 {
    let mut out = 0;
    let mut h = m;
    while h != 0 {
        let v = h.trailing_zeros() as usize;
        h &= h - 1;
        out |= g.adj[v];
    }
    out
}
