//! Benchmark harness: every applicable algorithm on every instance of a
//! directory, one CSV record per (instance, algorithm).

use std::fmt::Write as _;
use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context, Result};
use firefighter::exact::{solve_exact_with, ExactOptions};
use firefighter::graph::{ClassTag, Instance};
use firefighter::kernel::{check_kernel_equivalence, kernelize};
use rayon::prelude::*;

use crate::{read_instance, run_algo, Algo};

pub const CSV_HEADER: &str = "# ffsolve-bench v1\nname,algo,n,m,mod_size,saved,ms,explored,agree\n";

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
enum BenchAlgo {
    Solver(Algo),
    Kernel,
}

impl BenchAlgo {
    fn name(self) -> &'static str {
        match self {
            BenchAlgo::Solver(Algo::Exact) => "exact",
            BenchAlgo::Solver(Algo::Threshold) => "threshold",
            BenchAlgo::Solver(Algo::Stars) => "stars",
            BenchAlgo::Kernel => "kernel",
        }
    }

    fn parse(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "exact" => BenchAlgo::Solver(Algo::Exact),
            "threshold" => BenchAlgo::Solver(Algo::Threshold),
            "stars" => BenchAlgo::Solver(Algo::Stars),
            "kernel" => BenchAlgo::Kernel,
            other => bail!("unknown algorithm {other:?}"),
        })
    }

    fn applies_to(self, inst: &Instance) -> bool {
        let tagged = |tag| inst.modulator.is_some() && inst.class_tag == Some(tag);
        match self {
            BenchAlgo::Solver(Algo::Exact) => inst.graph.n() <= firefighter::exact::EXACT_DEFAULT_LIMIT,
            BenchAlgo::Solver(Algo::Threshold) => tagged(ClassTag::Threshold),
            BenchAlgo::Solver(Algo::Stars) => tagged(ClassTag::StarForest),
            BenchAlgo::Kernel => tagged(ClassTag::Clique) && inst.demand.is_some(),
        }
    }
}

#[derive(Clone, Debug)]
struct Record {
    name: String,
    algo: &'static str,
    n: usize,
    m: usize,
    mod_size: usize,
    saved: usize,
    ms: f64,
    explored: u64,
    agree: Option<bool>,
}

impl Record {
    fn csv_line(&self) -> String {
        let agree = self.agree.map_or(String::new(), |a| a.to_string());
        format!(
            "{},{},{},{},{},{},{:.3},{},{}\n",
            self.name, self.algo, self.n, self.m, self.mod_size, self.saved, self.ms, self.explored, agree
        )
    }
}

fn bench_one(name: &str, inst: &Instance, algo: BenchAlgo, oracle: bool) -> Result<Record> {
    let opts = ExactOptions::default();
    let t0 = Instant::now();
    let (saved, explored, mut agree) = match algo {
        BenchAlgo::Solver(a) => {
            let r = run_algo(a, inst, &opts)?;
            (r.best_saved, r.explored, None)
        }
        BenchAlgo::Kernel => {
            let k = inst.demand.expect("checked by applies_to");
            let kout = kernelize(&inst.graph, inst.source, inst.modulator_or_empty(), k)?;
            let h = &kout.reduced;
            let r = solve_exact_with(&h.graph, h.source, &ExactOptions::unguarded())?;
            let agree = oracle.then(|| check_kernel_equivalence(inst, &kout)).transpose()?;
            (r.best_saved, r.explored, agree)
        }
    };
    let ms = t0.elapsed().as_secs_f64() * 1e3;
    if oracle && agree.is_none() && algo != BenchAlgo::Solver(Algo::Exact) && inst.graph.n() <= opts.max_vertices {
        agree = Some(solve_exact_with(&inst.graph, inst.source, &opts)?.best_saved == saved);
    }
    Ok(Record {
        name: name.to_string(),
        algo: algo.name(),
        n: inst.graph.n(),
        m: inst.graph.m(),
        mod_size: inst.modulator_or_empty().len(),
        saved,
        ms,
        explored,
        agree,
    })
}

fn instance_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .with_context(|| format!("reading directory {}", dir.display()))?
        .map(|e| e.map(|e| e.path()))
        .collect::<std::io::Result<_>>()?;
    files.retain(|p| p.extension().is_some_and(|e| e == "ff"));
    files.sort();
    Ok(files)
}

/// Returns `false` when the oracle disagreed with some row; a reproducer
/// file is written next to the CSV (or into the corpus directory).
pub fn run_bench(dir: &Path, algos: &str, oracle: bool, out: Option<&Path>) -> Result<bool> {
    let algos: Vec<BenchAlgo> = algos.split(',').map(BenchAlgo::parse).collect::<Result<_>>()?;
    let files = instance_files(dir)?;
    if files.is_empty() {
        bail!("no .ff instances in {}", dir.display());
    }
    let instances: Vec<(String, Instance)> = files
        .iter()
        .map(|p| {
            let name = p.file_stem().unwrap_or_default().to_string_lossy().into_owned();
            read_instance(p).map(|inst| (name, inst))
        })
        .collect::<Result<_>>()?;

    let jobs: Vec<(usize, BenchAlgo)> = instances
        .iter()
        .enumerate()
        .flat_map(|(i, (_, inst))| algos.iter().filter(|a| a.applies_to(inst)).map(move |&a| (i, a)))
        .collect();
    let records: Vec<Record> = jobs
        .par_iter()
        .map(|&(i, a)| bench_one(&instances[i].0, &instances[i].1, a, oracle))
        .collect::<Result<_>>()?;

    let mut csv = String::from(CSV_HEADER);
    for r in &records {
        csv.push_str(&r.csv_line());
    }
    match out {
        Some(p) => fs::write(p, &csv).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{csv}"),
    }

    let Some(bad) = records.iter().find(|r| r.agree == Some(false)) else {
        return Ok(true);
    };
    let inst = &instances.iter().find(|(n, _)| *n == bad.name).expect("record names come from instances").1;
    let repro_dir = out.and_then(Path::parent).filter(|p| !p.as_os_str().is_empty()).unwrap_or(dir);
    let repro = repro_dir.join(format!("{}.{}.repro.txt", bad.name, bad.algo));
    let mut text = String::new();
    writeln!(text, "# {} disagrees with the exact solver", bad.algo)?;
    text.push_str(&inst.to_text());
    fs::write(&repro, text)?;
    eprintln!("oracle disagreement on {} ({}); reproducer in {}", bad.name, bad.algo, repro.display());
    Ok(false)
}
