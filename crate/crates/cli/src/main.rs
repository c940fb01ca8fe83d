mod bench;

use std::fs;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use firefighter::exact::{solve_exact_with, ExactOptions, LengthBound};
use firefighter::generate::{gen_planted, gen_random};
use firefighter::graph::{ClassTag, Instance, Vertex};
use firefighter::kernel::kernelize;
use firefighter::modulator::{find_clique_modulator, find_modulator};
use firefighter::reductions::{reduce, GadgetKind};
use firefighter::stars::solve_stars;
use firefighter::threshold::solve_threshold;
use firefighter::{simulate, SolveResult, Strategy};

#[derive(Parser)]
#[command(name = "ffsolve", version, about = "Firefighting game solvers, kernels and gadgets")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Algo {
    Exact,
    Threshold,
    Stars,
}

#[derive(Subcommand)]
enum Command {
    /// Optimal strategy for an instance.
    Solve {
        #[arg(long, value_enum, default_value = "exact")]
        algo: Algo,
        #[arg(long)]
        input: PathBuf,
        /// Maximum number of defenses for the exact solver.
        #[arg(long)]
        length_bound: Option<usize>,
        /// Size guard for the exact solver.
        #[arg(long, default_value_t = firefighter::exact::EXACT_DEFAULT_LIMIT)]
        max_vertices: usize,
    },
    /// Simulate a strategy given as comma-separated 1-based ids.
    Validate {
        #[arg(long)]
        input: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        strategy: String,
    },
    /// Kernel for a modulator to a clique.
    Kernelize {
        #[arg(long)]
        input: PathBuf,
        /// Demand; defaults to the instance's `k` line.
        #[arg(short)]
        k: Option<usize>,
        #[arg(long)]
        out: Option<PathBuf>,
        /// Sidecar with the id map and the vertex sets of the construction.
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Minimum modulator of size at most K.
    Modulator {
        #[arg(long)]
        class: ClassTag,
        #[arg(short)]
        k: usize,
        #[arg(long)]
        input: PathBuf,
    },
    /// Gadget instance from a k-clique instance.
    Reduce {
        #[arg(long)]
        kind: GadgetKind,
        #[arg(short)]
        k: usize,
        /// Vertex cover (1-based, comma-separated) for the stars gadget;
        /// a minimum one is computed when absent.
        #[arg(long)]
        cover: Option<String>,
        #[arg(long)]
        input: PathBuf,
        #[arg(long)]
        out: Option<PathBuf>,
        #[arg(long)]
        provenance: Option<PathBuf>,
    },
    /// Seeded instance generators.
    Gen {
        #[command(subcommand)]
        what: GenCommand,
    },
    /// Run solvers over a directory of instances and write CSV records.
    Bench {
        #[arg(long)]
        dir: PathBuf,
        /// Comma-separated subset of exact, threshold, stars, kernel.
        #[arg(long, default_value = "exact,threshold,stars,kernel")]
        algos: String,
        /// Compare every row against the exact solver.
        #[arg(long)]
        oracle: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum GenCommand {
    /// Random class member plus a planted modulator.
    Planted {
        #[arg(long)]
        class: ClassTag,
        #[arg(long)]
        inner: usize,
        #[arg(short)]
        k: usize,
        #[arg(short, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Demand written into the instance.
        #[arg(long)]
        demand: Option<usize>,
        /// Write `count` instances with consecutive seeds into this directory.
        #[arg(long)]
        dir: Option<PathBuf>,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Erdős–Rényi graph with source 1.
    Random {
        #[arg(short)]
        n: usize,
        #[arg(short, default_value_t = 0.5)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
}

/// Failure that maps to exit code 1 rather than 2.
#[derive(Debug)]
struct Negative(String);

impl std::fmt::Display for Negative {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Negative {}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) if e.is::<Negative>() => {
            eprintln!("{e}");
            ExitCode::from(1)
        }
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}

pub fn read_instance(path: &Path) -> Result<Instance> {
    let text = fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Instance::parse(&text).with_context(|| format!("parsing {}", path.display()))
}

fn write_output(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            std::io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn one_based(vs: &[Vertex]) -> String {
    vs.iter().map(|v| (v + 1).to_string()).collect::<Vec<_>>().join(" ")
}

pub fn run_algo(algo: Algo, inst: &Instance, opts: &ExactOptions) -> Result<SolveResult> {
    let (g, s) = (&inst.graph, inst.source);
    let need_tag = |tag: ClassTag| -> Result<&[Vertex]> {
        match (&inst.modulator, inst.class_tag) {
            (Some(x), Some(t)) if t == tag => Ok(x),
            _ => bail!("{algo:?} needs an instance with `c {tag}` and a modulator line"),
        }
    };
    Ok(match algo {
        Algo::Exact => solve_exact_with(g, s, opts)?,
        Algo::Threshold => solve_threshold(g, s, need_tag(ClassTag::Threshold)?)?,
        Algo::Stars => solve_stars(g, s, need_tag(ClassTag::StarForest)?)?,
    })
}

fn run(cmd: Command) -> Result<bool> {
    match cmd {
        Command::Solve {
            algo,
            input,
            length_bound,
            max_vertices,
        } => {
            let inst = read_instance(&input)?;
            let opts = ExactOptions {
                length_bound: length_bound.map_or(LengthBound::InducedPath, LengthBound::Fixed),
                max_vertices,
            };
            let r = run_algo(algo, &inst, &opts)?;
            println!("saved={}", r.best_saved);
            println!("strategy={}", r.best_strategy);
            println!("explored={}", r.explored);
            Ok(match inst.demand {
                Some(k) => {
                    let yes = r.best_saved >= k;
                    println!("demand={k} {}", if yes { "yes" } else { "no" });
                    yes
                }
                None => true,
            })
        }
        Command::Validate { input, strategy } => {
            let inst = read_instance(&input)?;
            let st: Strategy = strategy.parse()?;
            st.check_well_formed(&inst.graph, inst.source)?;
            let out = simulate(&inst.graph, inst.source, &st)?;
            match out.failed_at {
                None => println!("valid, saved={}", out.saved_count),
                Some(i) => println!("invalid: vertex {} burns before round {}", st.0[i] + 1, i + 1),
            }
            Ok(out.valid)
        }
        Command::Kernelize {
            input,
            k,
            out,
            provenance,
        } => {
            let inst = read_instance(&input)?;
            let k = k.or(inst.demand).context("no demand: pass -k or add a `k` line")?;
            let x = match (&inst.modulator, inst.class_tag) {
                (Some(x), Some(ClassTag::Clique) | None) => x.clone(),
                (Some(_), Some(tag)) => bail!("modulator is declared for {tag}, not clique"),
                (None, _) => find_clique_modulator(&inst.graph, inst.graph.n())
                    .expect("deleting every vertex leaves a clique")
                    .vertices,
            };
            let kout = kernelize(&inst.graph, inst.source, &x, k)?;
            write_output(out.as_deref(), &kout.reduced.to_text())?;
            if let Some(p) = provenance {
                let mut side = format!("# applied {}\n", kout.applied);
                for (old, new) in kout.old_to_new.iter().enumerate() {
                    if let Some(new) = new {
                        side.push_str(&format!("map {} {}\n", old + 1, new + 1));
                    }
                }
                for (name, set) in [("J", &kout.j), ("K", &kout.k_ids), ("L", &kout.l_ids)] {
                    side.push_str(&format!("set {name} {}\n", one_based(set)));
                }
                write_output(Some(&p), &side)?;
            }
            eprintln!(
                "n {} -> {}, k {} -> {}, applied {}",
                inst.graph.n(),
                kout.reduced.graph.n(),
                k,
                kout.reduced.demand.unwrap_or(k),
                kout.applied
            );
            Ok(true)
        }
        Command::Modulator { class, k, input } => {
            let inst = read_instance(&input)?;
            match find_modulator(&inst.graph, class, k)? {
                Some(m) => {
                    println!("x {}", one_based(&m.vertices));
                    println!("size={}", m.len());
                    Ok(true)
                }
                None => Err(Negative(format!("no modulator to {class} of size at most {k}")).into()),
            }
        }
        Command::Reduce {
            kind,
            k,
            cover,
            input,
            out,
            provenance,
        } => {
            let inst = read_instance(&input)?;
            let g = &inst.graph;
            let cover: Vec<Vertex> = match cover {
                Some(text) => {
                    let st: Strategy = text.parse()?;
                    st.0
                }
                None => find_clique_modulator(&g.complement(), g.n())
                    .expect("every vertex is a cover")
                    .vertices,
            };
            let r = reduce(kind, g, k, &cover)?;
            write_output(out.as_deref(), &r.instance.to_text())?;
            if let Some(p) = provenance {
                let mut side = format!("# {} k={k}\n", kind.as_str());
                for (v, &c) in r.vertex_ids.iter().enumerate() {
                    side.push_str(&format!("map {} {}\n", v + 1, c + 1));
                }
                side.push_str(&format!("set V {}\n", one_based(&r.vertex_ids)));
                let edge_ids: Vec<Vertex> = r.edge_ids.iter().map(|e| e.1).collect();
                side.push_str(&format!("set E {}\n", one_based(&edge_ids)));
                let grid: Vec<Vertex> = r.grid.iter().flatten().copied().collect();
                side.push_str(&format!("set D {}\n", one_based(&grid)));
                if let Some(z) = r.z {
                    side.push_str(&format!("set z {}\n", z + 1));
                }
                write_output(Some(&p), &side)?;
            }
            Ok(true)
        }
        Command::Gen { what } => {
            match what {
                GenCommand::Planted {
                    class,
                    inner,
                    k,
                    p,
                    seed,
                    demand,
                    dir,
                    count,
                    out,
                } => {
                    let make = |seed: u64| -> Result<Instance> {
                        let inst = gen_planted(class, inner, k, p, seed)?;
                        Ok(match demand {
                            Some(d) => inst.with_demand(d),
                            None => inst,
                        })
                    };
                    match dir {
                        Some(dir) => {
                            fs::create_dir_all(&dir)?;
                            for sd in seed..seed + count {
                                let path = dir.join(format!("{class}_{inner}_{k}_{sd}.ff"));
                                write_output(Some(&path), &make(sd)?.to_text())?;
                            }
                        }
                        None => write_output(out.as_deref(), &make(seed)?.to_text())?,
                    }
                }
                GenCommand::Random { n, p, seed, out } => {
                    if n == 0 {
                        bail!("n must be positive");
                    }
                    if !(0.0..=1.0).contains(&p) {
                        bail!("edge probability {p} outside [0, 1]");
                    }
                    let inst = Instance::new(gen_random(n, p, seed), 0);
                    write_output(out.as_deref(), &inst.to_text())?;
                }
            }
            Ok(true)
        }
        Command::Bench {
            dir,
            algos,
            oracle,
            out,
        } => bench::run_bench(&dir, &algos, oracle, out.as_deref()),
    }
}
