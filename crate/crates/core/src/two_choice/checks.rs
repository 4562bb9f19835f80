//! Exhaustive and randomized checks of the compatibility calculus.
//!
//! Sequences are enumerated up to renaming colors: the first set is `(0, 1, 2, 3)` and each
//! fresh color is the smallest unused one.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use super::calculus::{classify_rows, comp_rows, degree_sequence, incomp_rows, Rows};
use crate::lists::Color;

const ALL: u8 = 0b11_1111;
const KEPT_VIOLATIONS: usize = 10;

/// Outcome of one property check.
#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CheckReport {
    pub name: String,
    pub instances: u64,
    pub violation_count: u64,
    /// The first few violating instances.
    pub violations: Vec<String>,
}

impl CheckReport {
    fn new(name: &str) -> Self {
        Self {
            name: name.to_string(),
            ..Self::default()
        }
    }

    fn record(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.violation_count += 1;
            if self.violations.len() < KEPT_VIOLATIONS {
                self.violations.push(describe());
            }
        }
    }

    pub fn passed(&self) -> bool {
        self.violation_count == 0 && self.instances > 0
    }
}

fn total(rows: &Rows) -> u32 {
    rows.iter().map(|r| r.count_ones()).sum()
}

fn good_count(rows: &Rows) -> usize {
    rows.iter().filter(|&&r| r == ALL).count()
}

/// Calls `visit` on every valid sequence of length `1..=max_len` over at most `max_colors`
/// colors, up to renaming. With `legal`, entering colors are always fresh.
pub fn for_each_valid_sequence(
    max_len: usize,
    max_colors: usize,
    legal: bool,
    visit: &mut dyn FnMut(&[[Color; 4]]),
) {
    fn extend(
        seq: &mut Vec<[Color; 4]>,
        used: usize,
        max_len: usize,
        max_colors: usize,
        legal: bool,
        visit: &mut dyn FnMut(&[[Color; 4]]),
    ) {
        visit(seq);
        if seq.len() == max_len {
            return;
        }
        let prev = *seq.last().unwrap();
        let mut next = prev;
        fill(0, &prev, &mut next, used, 0, seq, max_len, max_colors, legal, visit);
    }

    #[allow(clippy::too_many_arguments)]
    fn fill(
        p: usize,
        prev: &[Color; 4],
        next: &mut [Color; 4],
        used: usize,
        fresh: usize,
        seq: &mut Vec<[Color; 4]>,
        max_len: usize,
        max_colors: usize,
        legal: bool,
        visit: &mut dyn FnMut(&[[Color; 4]]),
    ) {
        if p == 4 {
            seq.push(*next);
            extend(seq, used + fresh, max_len, max_colors, legal, visit);
            seq.pop();
            return;
        }
        next[p] = prev[p];
        fill(p + 1, prev, next, used, fresh, seq, max_len, max_colors, legal, visit);
        if !legal {
            for c in 0..used {
                if !prev.contains(&c) && !next[..p].contains(&c) {
                    next[p] = c;
                    fill(p + 1, prev, next, used, fresh, seq, max_len, max_colors, legal, visit);
                }
            }
        }
        if used + fresh < max_colors {
            next[p] = used + fresh;
            fill(p + 1, prev, next, used, fresh + 1, seq, max_len, max_colors, legal, visit);
        }
        next[p] = prev[p];
    }

    let mut seq = vec![[0, 1, 2, 3]];
    extend(&mut seq, 4, max_len, max_colors.max(4), legal, visit);
}

fn changes(seq: &[[Color; 4]]) -> usize {
    (0..4).filter(|&p| seq.windows(2).any(|w| w[0][p] != w[1][p])).count()
}

/// Defected `K_{2,2}` families of 4-lists over `max_colors` colors: each side has exactly one bad
/// subset, and the incompatible pairs are special with both parity properties, or have degree
/// sequence (6,5,5,3,2,2), or number 21.
pub fn check_defected_k22(max_colors: usize) -> CheckReport {
    let mut report = CheckReport::new("defected K22 families");
    let sets: Vec<[Color; 4]> = (0u32..1 << max_colors)
        .filter(|m| m.count_ones() == 4)
        .map(|m| {
            let v: Vec<Color> = (0..max_colors).filter(|i| m >> i & 1 == 1).collect();
            [v[0], v[1], v[2], v[3]]
        })
        .collect();
    let sx1 = [0, 1, 2, 3];
    for sx2 in &sets {
        for sy1 in &sets {
            for sy2 in &sets {
                let rows = incomp_rows(&sx1, sx2, [sy1, sy2]);
                let bad1 = good_count(&rows);
                let bad2 = (0..6).filter(|&j| rows.iter().all(|r| r >> j & 1 == 1)).count();
                if bad1 == 0 || bad2 == 0 {
                    continue;
                }
                let tag = classify_rows(&rows);
                let shape = (tag.is_special && tag.has_p1 && tag.has_p2)
                    || degree_sequence(&rows) == [6, 5, 5, 3, 2, 2]
                    || total(&rows) == 21;
                report.record(bad1 == 1 && bad2 == 1 && shape, || {
                    format!("S(x1)={sx1:?} S(x2)={sx2:?} S(y1)={sy1:?} S(y2)={sy2:?}: bad {bad1}/{bad2}, rows {rows:?}")
                });
            }
        }
    }
    report
}

/// For legal `A1, A2, A2, A3`, compatibility equals that of `A1, A3`.
pub fn check_repeat_collapse(max_colors: usize) -> CheckReport {
    let mut report = CheckReport::new("repeated middle set collapses");
    for_each_valid_sequence(3, max_colors, true, &mut |seq| {
        if let [a1, a2, a3] = seq {
            let long = comp_rows(&[*a1, *a2, *a2, *a3]);
            let short = comp_rows(&[*a1, *a3]);
            report.record(long == short, || format!("{seq:?}"));
        }
    });
    report
}

fn windows_never_exceed(seq: &[[Color; 4]], report: &mut CheckReport) {
    let full = comp_rows(seq);
    let (fc, fg) = (total(&full), good_count(&full));
    for i in 0..seq.len() {
        for j in i..seq.len() {
            let w = comp_rows(&seq[i..=j]);
            report.record(total(&w) <= fc && good_count(&w) <= fg, || {
                format!("{seq:?} window {i}..={j}")
            });
        }
    }
}

/// Compatible pairs and good subsets never outnumber those of the full sequence, for every
/// contiguous window: exhaustively up to `exhaustive_len`, then on `samples` random valid
/// sequences of length up to `random_len`.
pub fn check_window_monotonicity(
    exhaustive_len: usize,
    random_len: usize,
    samples: usize,
    seed: u64,
) -> CheckReport {
    let mut report = CheckReport::new("window monotonicity");
    for_each_valid_sequence(exhaustive_len, 8, false, &mut |seq| windows_never_exceed(seq, &mut report));
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..samples {
        let len = rng.gen_range(1..=random_len);
        let seq = random_valid_sequence(&mut rng, len, 8);
        windows_never_exceed(&seq, &mut report);
    }
    report
}

/// Random valid sequence over colors `0..colors`: each position keeps its color or switches
/// to one absent from the previous set.
pub fn random_valid_sequence(rng: &mut impl Rng, len: usize, colors: usize) -> Vec<[Color; 4]> {
    let mut first: Vec<Color> = (0..colors).collect();
    for i in 0..4 {
        let j = rng.gen_range(i..colors);
        first.swap(i, j);
    }
    let mut seq = vec![[first[0], first[1], first[2], first[3]]];
    while seq.len() < len {
        let prev = *seq.last().unwrap();
        let mut next = prev;
        for p in 0..4 {
            if rng.gen_bool(0.5) {
                let options: Vec<Color> = (0..colors)
                    .filter(|c| !prev.contains(c) && !next.contains(c))
                    .collect();
                if !options.is_empty() {
                    next[p] = options[rng.gen_range(0..options.len())];
                }
            }
        }
        seq.push(next);
    }
    seq
}

/// Repeating the first set keeps a special relation special, keeps P1 and flips P2; repeating
/// the last keeps it special, flips P1 and keeps P2. Over every valid sequence with special
/// compatibility, up to `max_len` sets.
pub fn check_end_repeat_flips(max_len: usize, max_colors: usize) -> CheckReport {
    let mut report = CheckReport::new("end repetition flips parity properties");
    for_each_valid_sequence(max_len, max_colors, false, &mut |seq| {
        let tag = classify_rows(&comp_rows(seq));
        if !tag.is_special {
            return;
        }
        let mut front = vec![seq[0]];
        front.extend_from_slice(seq);
        let mut back = seq.to_vec();
        back.push(*seq.last().unwrap());
        let f = classify_rows(&comp_rows(&front));
        let b = classify_rows(&comp_rows(&back));
        let ok = f.is_special
            && f.has_p1 == tag.has_p1
            && f.has_p2 != tag.has_p2
            && b.is_special
            && b.has_p1 != tag.has_p1
            && b.has_p2 == tag.has_p2;
        report.record(ok, || format!("{seq:?}: {tag:?} -> front {f:?}, back {b:?}"));
    });
    report
}

/// Valid sequences of odd length at least 3 changing in at least 3 positions have a good
/// subset, and either at least 3 good subsets, more than 23 compatible pairs, or special
/// compatibility with exactly one of P1, P2.
pub fn check_odd_sequences(max_len: usize, max_colors: usize) -> CheckReport {
    let mut report = CheckReport::new("odd sequences with three changing positions");
    for_each_valid_sequence(max_len, max_colors, false, &mut |seq| {
        if seq.len() < 3 || seq.len() % 2 == 0 || changes(seq) < 3 {
            return;
        }
        let rows = comp_rows(seq);
        let good = good_count(&rows);
        let tag = classify_rows(&rows);
        let ok = good >= 1
            && (good >= 3 || total(&rows) > 23 || (tag.is_special && tag.has_p1 != tag.has_p2));
        report.record(ok, || {
            format!("{seq:?}: good {good}, |comp| {}, {tag:?}", total(&rows))
        });
    });
    report
}
