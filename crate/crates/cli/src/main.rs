use std::collections::{BTreeMap, BTreeSet};
use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use choosability::gadgets::{GadgetSpec, FAMILIES};
use choosability::graph::{classify_core, components, core, CoreClass};
use choosability::kernel::{choose_brooks, choose_chordal, choose_via_orientation, kernel};
use choosability::oracle::{ch_k, find_choice, is_ab_choosable, is_f_choosable, Budget, ChoosabilityQuery, DEFAULT_BUDGET};
use choosability::orientation::{density_m, orient_bounded_outdegree, orient_degeneracy};
use choosability::random::{embed_and_choose, RandomBudget};
use choosability::strong::{strong_choice_scale, strong_color_lift, Exhaustive};
use choosability::suites::{run_suite, SUITES};
use choosability::two_choice::{choose_42, is_2_choosable};
use choosability::{Digraph, Error, Graph, ListAssignment, Vertex};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

#[derive(Parser)]
#[command(name = "choosability", version, about = "List coloring and (a:b)-choosability toolkit")]
struct Cli {
    /// Search node budget for exact computations.
    #[arg(long, global = true, env = "CHOOSABILITY_BUDGET", default_value_t = DEFAULT_BUDGET)]
    budget: u64,
    /// Write the JSON result here instead of standard output.
    #[arg(long, global = true)]
    out: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide (a:b)-choosability, or f-choosability with --f.
    Check {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, required_unless_present = "f")]
        a: Option<usize>,
        #[arg(long, default_value_t = 1)]
        b: usize,
        /// Per-vertex list sizes, as `v:size,v:size,...`.
        #[arg(long, conflicts_with = "a")]
        f: Option<String>,
    },
    /// Compute the k-th choice number.
    Chk {
        #[arg(long)]
        graph: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
    },
    /// Choose k colors per vertex from given lists.
    Choose {
        #[arg(long)]
        graph: PathBuf,
        /// JSON object from vertex to color list.
        #[arg(long)]
        lists: PathBuf,
        #[arg(long, default_value_t = 1)]
        k: usize,
        #[arg(long, value_enum, default_value_t = Method::Exact)]
        method: Method,
        #[command(flatten)]
        random: RandomArgs,
    },
    /// Find a kernel of a digraph with no odd directed cycle.
    Kernel {
        /// Digraph JSON with `vertices` and `arcs`.
        #[arg(long)]
        graph: PathBuf,
    },
    /// Orient a graph with bounded out-degree.
    Orient {
        #[arg(long)]
        graph: PathBuf,
        /// Out-degree bound; the least possible one when omitted.
        #[arg(long)]
        d: Option<usize>,
        /// Build an acyclic orientation by repeated minimum-degree removal.
        #[arg(long)]
        acyclic: bool,
    },
    /// Core (leaves deleted repeatedly) and its classification.
    Core {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Decide 2-choosability from the cores of the components.
    TwoChoosable {
        #[arg(long)]
        graph: PathBuf,
    },
    /// Generate a gadget graph, or `gadget list`.
    Gadget {
        /// Family name, or `list`.
        family: String,
        #[arg(long)]
        graph: Option<PathBuf>,
        #[arg(long)]
        f: Option<String>,
        #[arg(long)]
        k: Option<usize>,
        #[arg(long)]
        n: Option<usize>,
        #[arg(long)]
        d: Option<usize>,
        #[arg(long)]
        a: Option<usize>,
        #[arg(long)]
        b: Option<usize>,
        #[arg(long)]
        c: Option<usize>,
        #[arg(long, value_delimiter = ',')]
        sizes: Vec<usize>,
        /// Emit Graphviz instead of JSON.
        #[arg(long)]
        dot: bool,
    },
    /// Color G plus cliques on parts: (k+1)-coloring by default, list coloring with --lists.
    Strong {
        #[arg(long)]
        graph: PathBuf,
        /// JSON list of vertex lists.
        #[arg(long)]
        parts: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        lists: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        m: usize,
    },
    /// Run an acceptance suite.
    Suite {
        /// One of oracle-cross-check, section5-lemmas, section7-partitions, gadget-verify.
        name: String,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum Method {
    /// Exhaustive backtracking.
    Exact,
    /// Kernel chooser along a least out-degree orientation.
    Kernel,
    /// Perfect elimination order chooser for chordal graphs.
    Chordal,
    /// Chooser for lists of size k times the maximum degree.
    Brooks,
    /// (4:2) chooser for 2-choosable graphs.
    TwoFour,
    /// Randomized chooser over a minimum coloring.
    Random,
}

#[derive(Args)]
struct RandomArgs {
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long, default_value_t = 64)]
    max_attempts: u32,
}

enum Outcome {
    Positive(Value),
    Negative(Value),
    Text(String),
}

struct Failure {
    code: u8,
    message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = if matches!(e, Error::BudgetExceeded(_) | Error::Exhausted(_)) { 3 } else { 2 };
        Self { code, message: e.to_string() }
    }
}

fn usage(message: impl Into<String>) -> Failure {
    Failure { code: 2, message: message.into() }
}

fn read(path: &Path) -> Result<String, Failure> {
    fs::read_to_string(path).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> Result<Graph, Failure> {
    Ok(Graph::from_json(&read(path)?)?)
}

fn load_json<T: serde::de::DeserializeOwned>(path: &Path) -> Result<T, Failure> {
    serde_json::from_str(&read(path)?).map_err(|e| usage(format!("{}: {e}", path.display())))
}

fn parse_sizes(spec: &str) -> Result<BTreeMap<Vertex, usize>, Failure> {
    spec.split(',')
        .filter(|s| !s.trim().is_empty())
        .map(|pair| {
            let (v, n) = pair.split_once(':').ok_or_else(|| usage(format!("expected v:size, got {pair}")))?;
            let v = v.trim().parse().map_err(|_| usage(format!("bad vertex in {pair}")))?;
            let n = n.trim().parse().map_err(|_| usage(format!("bad size in {pair}")))?;
            Ok((v, n))
        })
        .collect()
}

fn need<T>(x: Option<T>, flag: &str) -> Result<T, Failure> {
    x.ok_or_else(|| usage(format!("missing --{flag}")))
}

fn run(cli: Cli) -> Result<Outcome, Failure> {
    let budget = Budget::new(cli.budget);
    match cli.command {
        Command::Check { graph, a, b, f } => {
            let g = load_graph(&graph)?;
            let (ok, witness) = match f {
                Some(spec) => is_f_choosable(&g, &parse_sizes(&spec)?, &budget)?,
                None => is_ab_choosable(&g, ChoosabilityQuery::new(need(a, "a")?, b)?, &budget)?,
            };
            let out = json!({ "choosable": ok, "witness": witness });
            Ok(if ok { Outcome::Positive(out) } else { Outcome::Negative(out) })
        }
        Command::Chk { graph, k } => Ok(Outcome::Positive(json!(ch_k(&load_graph(&graph)?, k, &budget)?))),
        Command::Choose { graph, lists, k, method, random } => {
            let g = load_graph(&graph)?;
            let s: ListAssignment = load_json(&lists)?;
            let choice = match method {
                Method::Exact => find_choice(&g, &s, k, &budget)?,
                Method::Kernel => {
                    let m = density_m(&g)?;
                    let d = m.ceil().to_integer() as usize;
                    let o = orient_bounded_outdegree(&g, d).ok_or_else(|| Error::NotApplicable("no orientation at the density bound".into()))?;
                    Some(choose_via_orientation(&g, &o, k, &s)?)
                }
                Method::Chordal => Some(choose_chordal(&g, k, &s)?),
                Method::Brooks => Some(choose_brooks(&g, k, &s)?),
                Method::TwoFour => {
                    if k != 2 {
                        return Err(usage("the two-four method chooses exactly 2 colors"));
                    }
                    Some(choose_42(&g, &s)?)
                }
                Method::Random => {
                    let rb = RandomBudget::new(random.seed, random.max_attempts)?;
                    let rc = embed_and_choose(&g, k, &s, rb, &budget)?;
                    return Ok(Outcome::Positive(json!({
                        "choice": rc.choice,
                        "seed": rc.seed,
                        "attempts": rc.attempts,
                        "max_attempts": random.max_attempts,
                    })));
                }
            };
            Ok(match choice {
                Some(c) => Outcome::Positive(json!({ "choice": c })),
                None => Outcome::Negative(json!({ "choice": null, "lists": s })),
            })
        }
        Command::Kernel { graph } => {
            let d = Digraph::from_json(&read(&graph)?)?;
            Ok(Outcome::Positive(json!({ "kernel": kernel(&d)? })))
        }
        Command::Orient { graph, d, acyclic } => {
            let g = load_graph(&graph)?;
            let m = density_m(&g)?;
            let bound = match (d, acyclic) {
                (Some(d), _) => d,
                (None, false) => m.ceil().to_integer() as usize,
                (None, true) => (0..=g.max_degree()).find(|&d| orient_degeneracy(&g, d).is_some()).unwrap_or(0),
            };
            let o = if acyclic { orient_degeneracy(&g, bound) } else { orient_bounded_outdegree(&g, bound) };
            let density = format!("{}/{}", m.numer(), m.denom());
            Ok(match o {
                Some(o) => Outcome::Positive(json!({
                    "density": density,
                    "max_out_degree": o.max_out_degree(),
                    "orientation": o,
                })),
                None => Outcome::Negative(json!({ "density": density, "orientation": null, "d": bound })),
            })
        }
        Command::Core { graph } => {
            let g = load_graph(&graph)?;
            let c = core(&g);
            let class = classify_core(&g).ok();
            Ok(Outcome::Positive(json!({ "core": c, "class": class })))
        }
        Command::TwoChoosable { graph } => {
            let g = load_graph(&graph)?;
            if is_2_choosable(&g) {
                return Ok(Outcome::Positive(json!({ "two_choosable": true })));
            }
            for part in components(&g) {
                let h = g.induced(&part);
                let class = classify_core(&h)?;
                if class == CoreClass::Other && !h.is_empty() {
                    return Ok(Outcome::Negative(json!({
                        "two_choosable": false,
                        "component": part,
                        "core": core(&h),
                        "class": class,
                    })));
                }
            }
            Err(usage("inconsistent decision"))
        }
        Command::Gadget { family, graph, f, k, n, d, a, b, c, sizes, dot } => {
            if family == "list" {
                let list: Vec<Value> =
                    FAMILIES.iter().map(|(name, params)| json!({ "name": name, "params": params })).collect();
                return Ok(Outcome::Positive(Value::Array(list)));
            }
            let base = || -> Result<Graph, Failure> { load_graph(&need(graph.clone(), "graph")?) };
            let spec = match family.as_str() {
                "apex-tower" => GadgetSpec::ApexTower { base: base()? },
                "bipartite-hardness-23" => GadgetSpec::BipartiteHardness23 {
                    base: base()?,
                    f: parse_sizes(&need(f, "f")?)?,
                },
                "bipartite-hardness-k" => GadgetSpec::BipartiteHardnessK { base: base()?, k: need(k, "k")? },
                "strong-lower-bound" => GadgetSpec::StrongLowerBound { d: need(d, "d")? },
                "hamilton-clique" => GadgetSpec::HamiltonCliqueRegular { k: need(k, "k")?, n: need(n, "n")? },
                "theta" => GadgetSpec::ThetaGraph { a: need(a, "a")?, b: need(b, "b")?, c: need(c, "c")? },
                "complete-multipartite" if !sizes.is_empty() => GadgetSpec::CompleteMultipartite { sizes },
                "complete-multipartite" => return Err(usage("missing --sizes")),
                "k24-prime" => GadgetSpec::K24Prime,
                other => return Err(usage(format!("unknown gadget family {other}; try `gadget list`"))),
            };
            let gadget = spec.build()?;
            if dot {
                return Ok(Outcome::Text(gadget.graph.to_dot()));
            }
            Ok(Outcome::Positive(serde_json::to_value(&gadget).expect("gadget serializes")))
        }
        Command::Strong { graph, parts, k, lists, m } => {
            let g = load_graph(&graph)?;
            let parts: Vec<BTreeSet<Vertex>> = load_json(&parts)?;
            let mut ex = Exhaustive { budget };
            match lists {
                None => {
                    let coloring = strong_color_lift(&g, &parts, k, &mut ex)?;
                    Ok(Outcome::Positive(json!({ "coloring": coloring })))
                }
                Some(path) => {
                    let s: ListAssignment = load_json(&path)?;
                    let choice = strong_choice_scale(&g, &parts, k, m, &mut ex, &s)?;
                    Ok(Outcome::Positive(json!({ "choice": choice })))
                }
            }
        }
        Command::Suite { name } => {
            if !SUITES.contains(&name.as_str()) {
                return Err(usage(format!("unknown suite {name}; expected one of {}", SUITES.join(", "))));
            }
            let report = run_suite(&name)?;
            for c in &report.criteria {
                eprintln!(
                    "criterion {}: {} ({} instances, {} ms) {}",
                    c.id,
                    if c.passed { "PASS" } else { "FAIL" },
                    c.instances,
                    c.millis,
                    c.title
                );
            }
            let out = serde_json::to_value(&report).expect("report serializes");
            Ok(if report.passed() { Outcome::Positive(out) } else { Outcome::Negative(out) })
        }
    }
}

fn emit(text: &str, out: Option<&Path>) -> Result<(), Failure> {
    match out {
        Some(p) => fs::write(p, text).map_err(|e| usage(format!("{}: {e}", p.display()))),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let out = cli.out.clone();
    let result = run(cli).and_then(|outcome| {
        let (text, code) = match outcome {
            Outcome::Positive(v) => (serde_json::to_string_pretty(&v).expect("json") + "\n", 0),
            Outcome::Negative(v) => (serde_json::to_string_pretty(&v).expect("json") + "\n", 1),
            Outcome::Text(t) => (t, 0),
        };
        emit(&text, out.as_deref()).map(|_| code)
    });
    match result {
        Ok(code) => ExitCode::from(code),
        Err(f) => {
            eprintln!("error: {}", f.message);
            ExitCode::from(f.code)
        }
    }
}
