//! Exhaustive catalogs of small graphs up to isomorphism.
//!
//! Graphs on `n <= 7` vertices are encoded as edge bitmasks over the pairs
//! `(i, j)`, `i < j`. The canonical code is the minimum mask over all vertex
//! permutations that list vertices in non-increasing degree order.

use std::collections::BTreeSet;

use super::{is_connected, Graph};

pub const MAX_ORDER: usize = 7;

fn pair_index(i: usize, j: usize) -> usize {
    let (a, b) = if i < j { (i, j) } else { (j, i) };
    b * (b - 1) / 2 + a
}

fn degrees(n: usize, code: u32) -> Vec<usize> {
    let mut deg = vec![0; n];
    for b in 0..n {
        for a in 0..b {
            if code >> pair_index(a, b) & 1 == 1 {
                deg[a] += 1;
                deg[b] += 1;
            }
        }
    }
    deg
}

fn relabel(n: usize, code: u32, perm: &[usize]) -> u32 {
    let mut out = 0;
    for b in 0..n {
        for a in 0..b {
            if code >> pair_index(a, b) & 1 == 1 {
                out |= 1 << pair_index(perm[a], perm[b]);
            }
        }
    }
    out
}

fn next_permutation(xs: &mut [usize]) -> bool {
    if xs.len() < 2 {
        return false;
    }
    let mut i = xs.len() - 1;
    while i > 0 && xs[i - 1] >= xs[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = xs.len() - 1;
    while xs[j] <= xs[i - 1] {
        j -= 1;
    }
    xs.swap(i - 1, j);
    xs[i..].reverse();
    true
}

fn canonical(n: usize, code: u32) -> u32 {
    let deg = degrees(n, code);
    // Target slots: vertices sorted by degree (descending); blocks of equal degree.
    let mut by_deg: Vec<usize> = (0..n).collect();
    by_deg.sort_by_key(|&v| std::cmp::Reverse(deg[v]));
    let mut blocks: Vec<Vec<usize>> = Vec::new();
    for &v in &by_deg {
        match blocks.last_mut() {
            Some(b) if deg[b[0]] == deg[v] => b.push(v),
            _ => blocks.push(vec![v]),
        }
    }
    for b in &mut blocks {
        b.sort_unstable();
    }
    let mut best = u32::MAX;
    let mut perm = vec![0; n];
    loop {
        let mut slot = 0;
        for b in &blocks {
            for &v in b {
                perm[v] = slot;
                slot += 1;
            }
        }
        best = best.min(relabel(n, code, &perm));
        // Advance the block permutations like an odometer.
        let mut k = blocks.len();
        loop {
            if k == 0 {
                return best;
            }
            k -= 1;
            if next_permutation(&mut blocks[k]) {
                break;
            }
            blocks[k].sort_unstable();
        }
    }
}

fn to_graph(n: usize, code: u32) -> Graph {
    let mut g = Graph::empty(n);
    for b in 0..n {
        for a in 0..b {
            if code >> pair_index(a, b) & 1 == 1 {
                g.add_edge(a, b);
            }
        }
    }
    g
}

fn codes(n: usize) -> BTreeSet<u32> {
    assert!(n <= MAX_ORDER, "catalog limited to {MAX_ORDER} vertices");
    let mut level: BTreeSet<u32> = BTreeSet::from([0]);
    for m in 2..=n {
        let mut next = BTreeSet::new();
        for &code in &level {
            for nbrs in 0u32..(1 << (m - 1)) {
                let mut c = code;
                for a in 0..m - 1 {
                    if nbrs >> a & 1 == 1 {
                        c |= 1 << pair_index(a, m - 1);
                    }
                }
                next.insert(canonical(m, c));
            }
        }
        level = next;
    }
    if n == 0 {
        BTreeSet::new()
    } else {
        level
    }
}

/// All graphs on `n` vertices (ids `0..n`), one per isomorphism class.
pub fn all_graphs(n: usize) -> Vec<Graph> {
    codes(n).into_iter().map(|c| to_graph(n, c)).collect()
}

/// All connected graphs on `n` vertices up to isomorphism.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    all_graphs(n).into_iter().filter(is_connected).collect()
}

/// Connected graphs on `1..=max_n` vertices up to isomorphism.
pub fn connected_graphs_up_to(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn known_counts() {
        // OEIS A000088 and A001349.
        let all: Vec<usize> = (1..=6).map(|n| all_graphs(n).len()).collect();
        assert_eq!(all, vec![1, 2, 4, 11, 34, 156]);
        let conn: Vec<usize> = (1..=6).map(|n| connected_graphs(n).len()).collect();
        assert_eq!(conn, vec![1, 1, 2, 6, 21, 112]);
    }

    #[test]
    fn canonical_is_relabeling_invariant() {
        let c = 0b101101;
        let base = canonical(4, c);
        let mut perm = vec![0, 1, 2, 3];
        while next_permutation(&mut perm) {
            assert_eq!(canonical(4, relabel(4, c, &perm)), base);
        }
    }
}
