//! Acceptance bundles: each criterion runs a fixed battery of checks and reports pass or fail
//! with instance counts and timing.

use std::collections::{BTreeMap, BTreeSet};
use std::time::Instant;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gadgets::{gen_hamilton_clique, gen_k24_prime, gen_strong_lower, gen_theta};
use crate::graph::catalog::connected_graphs_up_to;
use crate::graph::families::{complete_multipartite, cycle};
use crate::graph::{clique_number, is_triangulated, odd_directed_cycle, Graph, Vertex};
use crate::kernel::{choose_chordal, kernel_multichoice, KernelChooser};
use crate::lists::{verify_choice, Color, ColorSet, ListAssignment};
use crate::oracle::{
    ch_k, find_choice, for_each_list_assignment, is_ab_choosable, k_coloring, Budget, ChoosabilityQuery, Reduction,
    Verdict,
};
use crate::orientation::{density_m, orient_bounded_outdegree, orient_degeneracy, Orientation};
use crate::random::{choose_by_partition, choose_multipartite, PartitionedGraph, RandomBudget};
use crate::strong::{augment, partition_family, split_family, SetFamily};
use crate::two_choice::checks::{
    check_defected_k22, check_end_repeat_flips, check_odd_sequences, check_repeat_collapse,
    check_window_monotonicity, CheckReport,
};
use crate::two_choice::{blowup_lists, blowup_reduce, choose_42, is_2_choosable};

/// Suite names accepted by [`run_suite`].
pub const SUITES: &[&str] = &["oracle-cross-check", "section5-lemmas", "section7-partitions", "gadget-verify"];

/// Criteria covered by each suite, in run order.
pub fn suite_criteria(name: &str) -> Result<&'static [u32]> {
    match name {
        "oracle-cross-check" => Ok(&[1, 2, 3, 4, 6, 9, 10, 11]),
        "section5-lemmas" => Ok(&[5]),
        "section7-partitions" => Ok(&[8]),
        "gadget-verify" => Ok(&[7]),
        other => Err(Error::UnknownSuite(other.to_string())),
    }
}

const KEPT_FAILURES: usize = 10;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct CriterionReport {
    pub id: u32,
    pub title: String,
    pub passed: bool,
    pub instances: u64,
    pub failure_count: u64,
    /// The first few failures.
    pub failures: Vec<String>,
    pub millis: u64,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize)]
pub struct SuiteReport {
    pub suite: String,
    pub criteria: Vec<CriterionReport>,
}

impl SuiteReport {
    pub fn passed(&self) -> bool {
        self.criteria.iter().all(|c| c.passed)
    }
}

#[derive(Default)]
struct Tally {
    instances: u64,
    failure_count: u64,
    failures: Vec<String>,
}

impl Tally {
    fn check(&mut self, ok: bool, describe: impl FnOnce() -> String) {
        self.instances += 1;
        if !ok {
            self.fail(describe());
        }
    }

    fn fail(&mut self, what: String) {
        self.failure_count += 1;
        if self.failures.len() < KEPT_FAILURES {
            self.failures.push(what);
        }
    }

    fn absorb(&mut self, r: &CheckReport) {
        self.instances += r.instances;
        if !r.passed() {
            self.failure_count += r.violation_count.max(1);
            for v in &r.violations {
                if self.failures.len() < KEPT_FAILURES {
                    self.failures.push(format!("{}: {v}", r.name));
                }
            }
            if r.instances == 0 {
                self.failures.push(format!("{}: no instances", r.name));
            }
        }
    }

    /// Records an error as a failure instead of propagating it.
    fn guard<T>(&mut self, what: &str, r: Result<T>) -> Option<T> {
        match r {
            Ok(x) => Some(x),
            Err(e) => {
                self.instances += 1;
                self.fail(format!("{what}: {e}"));
                None
            }
        }
    }
}

pub fn criterion_title(id: u32) -> &'static str {
    match id {
        1 => "kernel multichooser on odd-cycle-free orientations of small connected graphs",
        2 => "2-choosability decision agrees with the (2:1) oracle up to 6 vertices",
        3 => "even cycles are (2k:k)-choosable and the kernel chooser serves every assignment",
        4 => "small thetas are (4:2)-choosable, the (4:2) chooser serves every assignment, K33 is not 2-choosable",
        5 => "compatibility calculus properties",
        6 => "choice numbers of K24, K24 plus apex, C5 and the cycle-with-triangles graph",
        7 => "strong chromatic lower-bound gadgets are not colorable",
        8 => "set family splits and partitions keep chosen subsets disjoint",
        9 => "chordal graphs have k-th choice number k times clique number",
        10 => "randomized choosers on the shipped instances",
        11 => "(6:3)-choosable implies 2-choosable, and blow-up reduction yields colorings",
        _ => "unknown criterion",
    }
}

/// Runs criterion `id` (1 to 11).
pub fn run_criterion(id: u32) -> CriterionReport {
    let start = Instant::now();
    let mut t = Tally::default();
    match id {
        1 => kernel_on_orientations(&mut t),
        2 => two_choosability_decision(&mut t),
        3 => even_cycles(&mut t),
        4 => thetas_and_k33(&mut t),
        5 => calculus(&mut t),
        6 => choice_numbers(&mut t),
        7 => strong_lower_gadgets(&mut t),
        8 => family_partitions(&mut t),
        9 => chordal(&mut t),
        10 => random_instances(&mut t),
        11 => blowup(&mut t),
        _ => t.fail(format!("no criterion {id}")),
    }
    CriterionReport {
        id,
        title: criterion_title(id).to_string(),
        passed: t.failure_count == 0 && t.instances > 0,
        instances: t.instances,
        failure_count: t.failure_count,
        failures: t.failures,
        millis: start.elapsed().as_millis() as u64,
    }
}

pub fn run_suite(name: &str) -> Result<SuiteReport> {
    let ids = suite_criteria(name)?;
    Ok(SuiteReport {
        suite: name.to_string(),
        criteria: ids.iter().map(|&i| run_criterion(i)).collect(),
    })
}

fn unlimited() -> Budget {
    Budget::new(u64::MAX)
}

fn random_lists(g: &Graph, size: usize, pool: usize, rng: &mut ChaCha8Rng) -> ListAssignment {
    let colors: Vec<Color> = (0..pool).collect();
    ListAssignment(
        g.vertices()
            .map(|v| (v, colors.choose_multiple(rng, size).copied().collect()))
            .collect(),
    )
}

/// Orientation of `g` without odd directed cycles and with the least out-degree found among
/// the density-optimal orientation and degeneracy orientations.
fn odd_free_orientation(g: &Graph) -> Option<Orientation> {
    let m = density_m(g).ok()?;
    let d = m.ceil().to_integer() as usize;
    if let Some(o) = orient_bounded_outdegree(g, d) {
        if odd_directed_cycle(o.digraph()).is_none() {
            return Some(o);
        }
    }
    (0..g.order()).find_map(|d| orient_degeneracy(g, d))
}

fn kernel_on_orientations(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for g in connected_graphs_up_to(5) {
        let Some(o) = odd_free_orientation(&g) else {
            t.fail(format!("no orientation for {}", g.to_json()));
            continue;
        };
        let d = o.max_out_degree();
        for k in 1..=2 {
            let size = k * (d + 1);
            for _ in 0..200 {
                let s = random_lists(&g, size, size + 3, &mut rng);
                let ok = matches!(kernel_multichoice(o.digraph(), k, &s), Ok(c) if verify_choice(&g, &s, &c, k));
                t.check(ok, || format!("k = {k} on {} with {}", g.to_json(), serde_json::to_string(&s).unwrap()));
            }
        }
    }
}

fn two_choosability_decision(t: &mut Tally) {
    let q = ChoosabilityQuery { a: 2, b: 1 };
    for g in connected_graphs_up_to(6) {
        if let Some((oracle, _)) = t.guard("oracle", is_ab_choosable(&g, q, &unlimited())) {
            let decided = is_2_choosable(&g);
            t.check(oracle == decided, || format!("{}: oracle {oracle}, decision {decided}", g.to_json()));
        }
    }
}

fn even_cycles(t: &mut Tally) {
    for n in [4, 6, 8] {
        let g = cycle(n);
        for k in 1..=2 {
            let q = ChoosabilityQuery { a: 2 * k, b: k };
            if let Some((ok, _)) = t.guard("oracle", is_ab_choosable(&g, q, &unlimited())) {
                t.check(ok, || format!("C{n} not ({}:{k})-choosable", 2 * k));
            }
        }
    }
    for n in [4, 6] {
        let g = cycle(n);
        let order: Vec<Vertex> = (0..n).collect();
        let o = Orientation::cyclic(&g, &order).expect("cycle order");
        let chooser = KernelChooser::new(o.digraph()).expect("even cycle");
        for k in 1..=2 {
            let mut bad = Vec::new();
            let r = for_each_list_assignment(&g, |_| 2 * k, Reduction::Orbit, &unlimited(), |s| {
                let ok = matches!(chooser.choose(k, s), Ok(c) if verify_choice(&g, s, &c, k));
                if !ok {
                    bad.push(serde_json::to_string(s).unwrap());
                }
                true
            });
            if let Some(count) = t.guard("enumeration", r) {
                t.instances += count;
                for b in bad {
                    t.fail(format!("C{n}, k = {k}: {b}"));
                }
            }
        }
    }
}

/// Whether no choice of one color per vertex from `s` is proper, by trying every combination.
fn no_proper_choice(g: &Graph, s: &ListAssignment) -> bool {
    let vs: Vec<Vertex> = g.vertices().collect();
    let lists: Vec<Vec<Color>> = vs.iter().map(|v| s.0[v].iter().copied().collect()).collect();
    let mut idx = vec![0usize; vs.len()];
    loop {
        let pick: BTreeMap<Vertex, Color> = vs.iter().zip(&idx).enumerate().map(|(i, (&v, &j))| (v, lists[i][j])).collect();
        if g.edges().all(|(u, v)| pick[&u] != pick[&v]) {
            return false;
        }
        let mut i = 0;
        while i < idx.len() {
            idx[i] += 1;
            if idx[i] < lists[i].len() {
                break;
            }
            idx[i] = 0;
            i += 1;
        }
        if i == idx.len() {
            return true;
        }
    }
}

fn thetas_and_k33(t: &mut Tally) {
    let q = ChoosabilityQuery { a: 4, b: 2 };
    // the relabeling orbits of the larger theta number in the tens of millions
    for (a, b, c, reduction) in [(2, 2, 2, Reduction::Orbit), (2, 2, 4, Reduction::Full)] {
        let g = gen_theta(a, b, c).expect("theta parameters");
        if let Some((ok, _)) = t.guard("oracle", is_ab_choosable(&g, q, &unlimited())) {
            t.check(ok, || format!("theta {a},{b},{c} not (4:2)-choosable"));
        }
        let mut bad = Vec::new();
        let r = for_each_list_assignment(&g, |_| 4, reduction, &unlimited(), |s| {
            let ok = matches!(choose_42(&g, s), Ok(ch) if verify_choice(&g, s, &ch, 2));
            if !ok {
                bad.push(serde_json::to_string(s).unwrap());
            }
            true
        });
        if let Some(count) = t.guard("enumeration", r) {
            t.instances += count;
            for s in bad {
                t.fail(format!("theta {a},{b},{c}: {s}"));
            }
        }
    }
    let k33 = complete_multipartite(&[3, 3]);
    if let Some((ok, w)) = t.guard("oracle", is_ab_choosable(&k33, ChoosabilityQuery { a: 2, b: 1 }, &unlimited())) {
        let certified = !ok
            && w.verdict == Verdict::BadAssignment
            && w.assignment.check_sizes(&k33, |_| 2).is_ok()
            && no_proper_choice(&k33, &w.assignment);
        t.check(certified, || format!("K33 witness not certified: {}", serde_json::to_string(&w).unwrap()));
    }
}

fn calculus(t: &mut Tally) {
    for r in [
        check_defected_k22(8),
        check_repeat_collapse(8),
        check_window_monotonicity(4, 6, 2000, 11),
        check_end_repeat_flips(4, 8),
        check_odd_sequences(5, 8),
    ] {
        t.absorb(&r);
    }
}

fn choice_numbers(t: &mut Tally) {
    let cases = [
        ("K24", complete_multipartite(&[2, 4])),
        ("K24 plus apex", gen_k24_prime()),
        ("C5", cycle(5)),
        ("cycle with triangles", gen_hamilton_clique(1, 2).expect("parameters")),
    ];
    for (name, g) in cases {
        if let Some(ch) = t.guard(name, ch_k(&g, 1, &unlimited())) {
            t.check(ch == 3, || format!("ch({name}) = {ch}"));
        }
    }
}

fn strong_lower_gadgets(t: &mut Tally) {
    for d in [2, 3] {
        let lower = gen_strong_lower(d).expect("d >= 2");
        let shape = lower.graph.max_degree() == d && lower.parts.iter().all(|p| p.len() == 2 * d - 1);
        t.check(shape, || format!("d = {d}: unexpected gadget shape"));
        let h = augment(&lower.graph, &lower.parts).expect("disjoint parts");
        let colors = 2 * d - 1;
        if d == 2 {
            t.check(!any_coloring_by_enumeration(&h, colors), || format!("d = {d}: {colors}-coloring found"));
        } else if let Some(c) = t.guard("coloring search", k_coloring(&h, colors, &unlimited())) {
            t.check(c.is_none(), || format!("d = {d}: {colors}-coloring found"));
        }
    }
}

/// Tries all `colors^n` assignments.
fn any_coloring_by_enumeration(g: &Graph, colors: usize) -> bool {
    let vs: Vec<Vertex> = g.vertices().collect();
    let pos: BTreeMap<Vertex, usize> = vs.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let edges: Vec<(usize, usize)> = g.edges().map(|(u, v)| (pos[&u], pos[&v])).collect();
    let total = colors.pow(vs.len() as u32);
    (0..total).any(|mut code| {
        let mut c = vec![0; vs.len()];
        for x in c.iter_mut() {
            *x = code % colors;
            code /= colors;
        }
        edges.iter().all(|&(u, v)| c[u] != c[v])
    })
}

fn split_holds(f: &SetFamily, k: usize, l: usize) -> Result<bool> {
    let r = split_family(f, k, l)?;
    let mut all: Vec<usize> = r.first.iter().chain(&r.second).copied().collect();
    all.sort_unstable();
    let sized = |ids: &[usize], want: usize| {
        ids.iter().all(|&i| r.chosen[i].len() == want && r.chosen[i].is_subset(&f.sets[i]))
    };
    Ok(all == (0..f.len()).collect::<Vec<_>>()
        && r.first.len() == k
        && r.second.len() == l
        && sized(&r.first, k)
        && sized(&r.second, l)
        && r.first.iter().all(|&i| r.second.iter().all(|&j| r.chosen[i].is_disjoint(&r.chosen[j]))))
}

fn partition_holds(f: &SetFamily, k: usize, m: usize) -> Result<bool> {
    let p = partition_family(f, k, m)?;
    let mut all: Vec<usize> = p.groups.iter().flatten().copied().collect();
    all.sort_unstable();
    let across = p.groups.iter().enumerate().all(|(a, ga)| {
        p.groups[a + 1..]
            .iter()
            .all(|gb| ga.iter().all(|&i| gb.iter().all(|&j| p.chosen[i].is_disjoint(&p.chosen[j]))))
    });
    Ok(all == (0..f.len()).collect::<Vec<_>>()
        && p.groups.len() == m
        && p.groups.iter().all(|g| g.len() == k)
        && (0..f.len()).all(|i| p.chosen[i].len() == k && p.chosen[i].is_subset(&f.sets[i]))
        && across)
}

/// Families of `count` sets of size `size` over at most `max_colors` colors, colors numbered in
/// order of first appearance.
pub fn for_each_family(count: usize, size: usize, max_colors: usize, visit: &mut dyn FnMut(&SetFamily)) {
    fn rec(
        sets: &mut Vec<ColorSet>,
        used: usize,
        count: usize,
        size: usize,
        max_colors: usize,
        visit: &mut dyn FnMut(&SetFamily),
    ) {
        if sets.len() == count {
            visit(&SetFamily::new(sets.clone()));
            return;
        }
        for old in 0..=size.min(used) {
            let fresh = size - old;
            if used + fresh > max_colors {
                continue;
            }
            let mut pick: Vec<usize> = (0..old).collect();
            loop {
                let mut s: ColorSet = pick.iter().copied().collect();
                s.extend(used..used + fresh);
                sets.push(s);
                rec(sets, used + fresh, count, size, max_colors, visit);
                sets.pop();
                let mut i = old;
                while i > 0 && pick[i - 1] == used - (old - i) - 1 {
                    i -= 1;
                }
                if i == 0 {
                    break;
                }
                pick[i - 1] += 1;
                for j in i..old {
                    pick[j] = pick[j - 1] + 1;
                }
            }
        }
    }
    rec(&mut Vec::new(), 0, count, size, max_colors, visit);
}

fn family_partitions(t: &mut Tally) {
    for n in 2..=4 {
        for_each_family(n, n, 8, &mut |f| {
            for k in 1..n {
                let ok = split_holds(f, k, n - k).unwrap_or(false);
                t.check(ok, || format!("split k = {k}, l = {}: {:?}", n - k, f.sets));
            }
            for k in (1..n).filter(|k| n % k == 0) {
                let ok = partition_holds(f, k, n / k).unwrap_or(false);
                t.check(ok, || format!("partition k = {k}, m = {}: {:?}", n / k, f.sets));
            }
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(8);
    let palette: Vec<Color> = (0..12).collect();
    let shapes: Vec<(usize, usize)> = (1..=5).flat_map(|k| (1..=6 - k).map(move |l| (k, l))).collect();
    let blocks: Vec<(usize, usize)> = (1..=6).flat_map(|k| (1..=6 / k).map(move |m| (k, m))).filter(|&(k, m)| k * m >= 2).collect();
    for i in 0..10_000 {
        let family = |n: usize, rng: &mut ChaCha8Rng| {
            SetFamily::new((0..n).map(|_| palette.choose_multiple(rng, n).copied().collect()).collect())
        };
        if i % 2 == 0 {
            let (k, l) = shapes[rng.gen_range(0..shapes.len())];
            let f = family(k + l, &mut rng);
            let ok = split_holds(&f, k, l).unwrap_or(false);
            t.check(ok, || format!("split k = {k}, l = {l}: {:?}", f.sets));
        } else {
            let (k, m) = blocks[rng.gen_range(0..blocks.len())];
            let f = family(k * m, &mut rng);
            let ok = partition_holds(&f, k, m).unwrap_or(false);
            t.check(ok, || format!("partition k = {k}, m = {m}: {:?}", f.sets));
        }
    }
}

fn chordal(t: &mut Tally) {
    let mut rng = ChaCha8Rng::seed_from_u64(9);
    for g in connected_graphs_up_to(5) {
        if is_triangulated(&g).is_none() {
            continue;
        }
        let omega = clique_number(&g);
        for k in 1..=2 {
            if let Some(ch) = t.guard("oracle", ch_k(&g, k, &unlimited())) {
                t.check(ch == k * omega, || format!("ch_{k}({}) = {ch}, expected {}", g.to_json(), k * omega));
            }
            for _ in 0..20 {
                let s = random_lists(&g, k * omega, k * omega + 3, &mut rng);
                let ok = matches!(choose_chordal(&g, k, &s), Ok(c) if verify_choice(&g, &s, &c, k));
                t.check(ok, || format!("choose_chordal k = {k} on {}", g.to_json()));
            }
        }
    }
}

/// Which chooser an instance exercises.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum InstanceKind {
    /// `graph` with independent `classes`.
    Partition,
    /// Complete multipartite graph with `class_sizes`.
    Multipartite,
}

/// One entry of the shipped randomized-chooser instance set.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct RandomInstance {
    pub name: String,
    pub kind: InstanceKind,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<Graph>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub classes: Vec<BTreeSet<Vertex>>,
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub class_sizes: Vec<usize>,
    pub k: usize,
    pub seed: u64,
    pub lists: ListAssignment,
}

const SHIPPED: &str = include_str!("../data/random_instances.json");

pub fn shipped_random_instances() -> Vec<RandomInstance> {
    serde_json::from_str(SHIPPED).expect("shipped instances parse")
}

impl RandomInstance {
    pub fn graph(&self) -> Result<Graph> {
        match self.kind {
            InstanceKind::Partition => self.graph.clone().ok_or(Error::InvalidParameter("partition instance without graph".into())),
            InstanceKind::Multipartite => Ok(complete_multipartite(&self.class_sizes)),
        }
    }

    /// Runs the matching chooser and returns its JSON output after verifying the choice.
    pub fn run(&self, max_attempts: u32) -> Result<String> {
        let g = self.graph()?;
        let budget = RandomBudget::new(self.seed, max_attempts)?;
        let rc = match self.kind {
            InstanceKind::Partition => {
                let pg = PartitionedGraph::new(g.clone(), self.classes.clone())?;
                choose_by_partition(&pg, self.k, &self.lists, budget)?
            }
            InstanceKind::Multipartite => choose_multipartite(&self.class_sizes, self.k, &self.lists, budget)?,
        };
        if !verify_choice(&g, &self.lists, &rc.choice, self.k) {
            return Err(Error::InvalidParameter("chooser returned an unverified choice".into()));
        }
        Ok(serde_json::to_string(&rc).expect("choice serializes"))
    }
}

fn random_instances(t: &mut Tally) {
    for inst in shipped_random_instances() {
        let name = inst.name.clone();
        let first = t.guard(&name, inst.run(64));
        let second = t.guard(&name, inst.run(64));
        if let (Some(a), Some(b)) = (first, second) {
            t.check(a == b, || format!("{name}: outputs differ between runs"));
        }
    }
}

fn blowup(t: &mut Tally) {
    let q63 = ChoosabilityQuery { a: 6, b: 3 };
    let q21 = ChoosabilityQuery { a: 2, b: 1 };
    for g in connected_graphs_up_to(4) {
        let Some((six, _)) = t.guard("oracle (6:3)", is_ab_choosable(&g, q63, &unlimited())) else { continue };
        let Some((two, _)) = t.guard("oracle (2:1)", is_ab_choosable(&g, q21, &unlimited())) else { continue };
        t.check(!six || two, || format!("{} is (6:3)- but not (2:1)-choosable", g.to_json()));
        let mut failures = Vec::new();
        let mut fed = 0;
        let r = for_each_list_assignment(&g, |_| 2, Reduction::Orbit, &unlimited(), |s| {
            let big = blowup_lists(s, 3);
            if let Ok(Some(choice)) = find_choice(&g, &big, 3, &unlimited()) {
                fed += 1;
                let ok = match blowup_reduce(&g, 1, 3, &choice) {
                    Ok(c) => g.edges().all(|(u, v)| c[&u] != c[&v]) && g.vertices().all(|v| s.0[&v].contains(&c[&v])),
                    Err(_) => false,
                };
                if !ok {
                    failures.push(serde_json::to_string(s).unwrap());
                }
            }
            true
        });
        if t.guard("enumeration", r).is_some() {
            t.instances += fed;
            for f in failures {
                t.fail(format!("{}: {f}", g.to_json()));
            }
        }
    }
}
