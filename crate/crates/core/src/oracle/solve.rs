//! Backtracking search for a `b`-fold choice from fixed lists on a dense graph.

use super::Budget;
use crate::error::Result;

/// Graph on positions `0..n` with adjacency bitmasks.
#[derive(Clone, Debug)]
pub(crate) struct Dense {
    pub adj: Vec<u64>,
}

impl Dense {
    pub fn n(&self) -> usize {
        self.adj.len()
    }
}

/// Colors `c` and `c'` are interchangeable at a search node when the same vertices hold them
/// and the same already-decided vertices use them, so only counts per such group are tried.
struct Search<'a> {
    g: &'a Dense,
    lists: &'a [u128],
    b: u32,
    order: Vec<usize>,
    holders: Vec<u64>,
    chosen: Vec<u128>,
    done: u64,
    budget: &'a Budget,
}

impl Search<'_> {
    fn blocked(&self, v: usize) -> u128 {
        let mut m = 0;
        let mut nb = self.g.adj[v] & self.done;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            m |= self.chosen[w];
        }
        m
    }

    fn users(&self, c: usize) -> u64 {
        let mut m = 0;
        let mut d = self.done;
        while d != 0 {
            let w = d.trailing_zeros() as usize;
            d &= d - 1;
            if self.chosen[w] >> c & 1 == 1 {
                m |= 1 << w;
            }
        }
        m
    }

    fn run(&mut self, idx: usize) -> Result<bool> {
        if idx == self.order.len() {
            return Ok(true);
        }
        let v = self.order[idx];
        let avail = self.lists[v] & !self.blocked(v);
        if avail.count_ones() < self.b {
            return Ok(false);
        }
        let mut groups: Vec<((u64, u64), Vec<u32>)> = Vec::new();
        let mut rest = avail;
        while rest != 0 {
            let c = rest.trailing_zeros();
            rest &= rest - 1;
            let key = (self.holders[c as usize], self.users(c as usize));
            match groups.iter_mut().find(|(k, _)| *k == key) {
                Some((_, cs)) => cs.push(c),
                None => groups.push((key, vec![c])),
            }
        }
        let sizes: Vec<u32> = groups.iter().map(|(_, cs)| cs.len() as u32).collect();
        let mut counts = vec![0u32; groups.len()];
        self.try_counts(idx, v, &groups, &sizes, &mut counts, 0, self.b)
    }

    #[allow(clippy::too_many_arguments)]
    fn try_counts(
        &mut self,
        idx: usize,
        v: usize,
        groups: &[((u64, u64), Vec<u32>)],
        sizes: &[u32],
        counts: &mut [u32],
        gi: usize,
        left: u32,
    ) -> Result<bool> {
        if left == 0 {
            let mut set = 0u128;
            for (g, &j) in groups.iter().zip(counts.iter()) {
                for &c in &g.1[..j as usize] {
                    set |= 1 << c;
                }
            }
            return self.descend(idx, v, set);
        }
        if gi == groups.len() {
            return Ok(false);
        }
        let tail: u32 = sizes[gi + 1..].iter().sum();
        let hi = left.min(sizes[gi]);
        let lo = left.saturating_sub(tail);
        for j in (lo..=hi).rev() {
            counts[gi] = j;
            if self.try_counts(idx, v, groups, sizes, counts, gi + 1, left - j)? {
                return Ok(true);
            }
        }
        counts[gi] = 0;
        Ok(false)
    }

    fn descend(&mut self, idx: usize, v: usize, set: u128) -> Result<bool> {
        self.budget.spend(1)?;
        self.chosen[v] = set;
        self.done |= 1 << v;
        let mut ok = true;
        let mut nb = self.g.adj[v] & !self.done;
        while nb != 0 {
            let w = nb.trailing_zeros() as usize;
            nb &= nb - 1;
            if (self.lists[w] & !self.blocked(w)).count_ones() < self.b {
                ok = false;
                break;
            }
        }
        if ok && self.run(idx + 1)? {
            return Ok(true);
        }
        self.done &= !(1 << v);
        self.chosen[v] = 0;
        Ok(false)
    }
}

/// A `b`-subset of every list, disjoint on edges, if one exists.
pub(crate) fn solve(g: &Dense, lists: &[u128], b: usize, budget: &Budget) -> Result<Option<Vec<u128>>> {
    let n = g.n();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by_key(|&v| (std::cmp::Reverse(g.adj[v].count_ones()), v));
    let mut holders = vec![0u64; 128];
    for (v, &l) in lists.iter().enumerate() {
        let mut m = l;
        while m != 0 {
            let c = m.trailing_zeros() as usize;
            m &= m - 1;
            holders[c] |= 1 << v;
        }
    }
    if b == 0 {
        return Ok(Some(vec![0; n]));
    }
    let mut s = Search {
        g,
        lists,
        b: b as u32,
        order,
        holders,
        chosen: vec![0; n],
        done: 0,
        budget,
    };
    Ok(if s.run(0)? { Some(s.chosen) } else { None })
}
