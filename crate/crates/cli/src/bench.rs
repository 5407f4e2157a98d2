//! Benchmark suites producing CSV rows `suite,params,solver,wall_ms,value`.
//!
//! Instances come from the seed alone, so every column except `wall_ms` is
//! reproducible.

use std::io::Write;
use std::sync::Arc;
use std::time::Instant;

use capdp::gen::{self, Rng64};
use capdp::*;
use rayon::prelude::*;

use crate::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    KnapsackScaling,
    UnboundedTIndependence,
    ConvLinearity,
    SeparatedLarge,
    MongeAllK,
}

impl Suite {
    pub const ALL: [Suite; 5] = [
        Suite::KnapsackScaling,
        Suite::UnboundedTIndependence,
        Suite::ConvLinearity,
        Suite::SeparatedLarge,
        Suite::MongeAllK,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Suite::KnapsackScaling => "knapsack-scaling",
            Suite::UnboundedTIndependence => "unbounded-T-independence",
            Suite::ConvLinearity => "conv-linearity",
            Suite::SeparatedLarge => "separated-large",
            Suite::MongeAllK => "monge-all-k",
        }
    }

    pub fn from_name(name: &str) -> Result<Suite, CliError> {
        Suite::ALL.into_iter().find(|s| s.name() == name).ok_or_else(|| {
            let names: Vec<&str> = Suite::ALL.iter().map(|s| s.name()).collect();
            CliError::Usage(format!("unknown suite {name:?}; expected one of {}", names.join(", ")))
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct BenchOptions {
    pub seed: u64,
    /// Worker threads; 1 runs cells in order on the calling thread.
    pub jobs: usize,
    /// Timed runs per cell; the median is reported.
    pub repeats: usize,
    /// Small sizes for smoke tests.
    pub quick: bool,
}

impl Default for BenchOptions {
    fn default() -> Self {
        BenchOptions { seed: 42, jobs: 1, repeats: 1, quick: false }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BenchRow {
    pub suite: &'static str,
    pub params: String,
    pub solver: &'static str,
    pub wall_ms: f64,
    pub value: String,
}

type Job = Arc<dyn Fn() -> String + Send + Sync>;

struct Cell {
    params: String,
    solver: &'static str,
    job: Job,
}

fn cell(params: String, solver: &'static str, job: impl Fn() -> String + Send + Sync + 'static) -> Cell {
    Cell { params, solver, job: Arc::new(job) }
}

/// Median wall time of `repeats` runs, with the value of the last one.
pub fn time_median<T>(repeats: usize, mut f: impl FnMut() -> T) -> (f64, T) {
    let mut times = Vec::with_capacity(repeats.max(1));
    let mut last = None;
    for _ in 0..repeats.max(1) {
        let start = Instant::now();
        let v = f();
        times.push(start.elapsed().as_secs_f64() * 1e3);
        last = Some(v);
    }
    times.sort_by(f64::total_cmp);
    (times[times.len() / 2], last.expect("at least one run"))
}

fn show<E: std::fmt::Debug>(r: std::result::Result<impl std::fmt::Display, E>) -> String {
    match r {
        Ok(v) => v.to_string(),
        Err(e) => format!("error: {e:?}"),
    }
}

fn show_ext(e: Ext<i64>) -> String {
    crate::run::render_ext(e)
}

/// Generates the suite's instances and runs every cell.
pub fn bench(suite: Suite, opts: &BenchOptions) -> Result<Vec<BenchRow>, CliError> {
    let cells = match suite {
        Suite::KnapsackScaling => knapsack_cells(opts),
        Suite::UnboundedTIndependence => unbounded_cells(opts),
        Suite::ConvLinearity => conv_cells(opts),
        Suite::SeparatedLarge => separated_cells(opts),
        Suite::MongeAllK => monge_cells(opts),
    };
    let run_cell = |c: &Cell| {
        let (wall_ms, value) = time_median(opts.repeats, || (c.job)());
        BenchRow { suite: suite.name(), params: c.params.clone(), solver: c.solver, wall_ms, value }
    };
    if opts.jobs <= 1 {
        return Ok(cells.iter().map(run_cell).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(opts.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} workers: {e}", opts.jobs)))?;
    Ok(pool.install(|| cells.par_iter().map(run_cell).collect()))
}

pub const CSV_HEADER: &str = "suite,params,solver,wall_ms,value";

pub fn write_csv(rows: &[BenchRow], mut out: impl Write) -> std::io::Result<()> {
    writeln!(out, "{CSV_HEADER}")?;
    for r in rows {
        writeln!(out, "{},{},{},{:.3},{}", r.suite, r.params, r.solver, r.wall_ms, r.value)?;
    }
    Ok(())
}

/// `n` items over exactly `distinct` weights below `max_weight`, values up
/// to 1000.
pub fn few_weight_items(rng: &mut Rng64, n: usize, distinct: usize, max_weight: usize) -> Vec<(usize, i64)> {
    let mut pool: Vec<usize> = (1..=max_weight).collect();
    rng.shuffle(&mut pool);
    pool.truncate(distinct);
    (0..n).map(|i| (pool[i % distinct], rng.range_i64(1, 1000))).collect()
}

fn knapsack_cells(opts: &BenchOptions) -> Vec<Cell> {
    let (sizes, t): (&[usize], usize) =
        if opts.quick { (&[1_000, 4_000], 10_000) } else { (&[10_000, 100_000, 200_000], 100_000) };
    let mut rng = Rng64::new(opts.seed);
    let mut cells = Vec::new();
    for &n in sizes {
        let inst = Arc::new(Knapsack::new(few_weight_items(&mut rng, n, 16, 1000), t).expect("valid items"));
        let params = format!("n={n};D={};T={t}", inst.distinct_weights());
        let a = inst.clone();
        cells.push(cell(params.clone(), "td", move || show(solve_knapsack_td(&a).map(|p| show_ext(p.at(t))))));
        let b = inst.clone();
        cells.push(cell(params, "bellman", move || show(solve_knapsack_bellman(&b).map(|p| show_ext(p.at(t))))));
    }
    cells
}

/// Items for the T-independence race: weights `1..=m` with random values.
pub fn unbounded_items(rng: &mut Rng64, count: usize, m: usize) -> Vec<(usize, i64)> {
    let mut items: Vec<(usize, i64)> = (0..count).map(|_| (rng.range_usize(1, m), rng.range_i64(1, 1000))).collect();
    items.push((m, rng.range_i64(1, 1000)));
    items
}

fn unbounded_cells(opts: &BenchOptions) -> Vec<Cell> {
    let caps: &[usize] =
        if opts.quick { &[10_000, 1_000_000] } else { &[1_000_000, 10_000_000, 100_000_000, 1_000_000_000] };
    let m = 100;
    let items = unbounded_items(&mut Rng64::new(opts.seed), 50, m);
    let mut cells = Vec::new();
    for &t in caps {
        let inst = Arc::new(Unbounded::new(items.clone(), t).expect("valid items"));
        let params = format!("M={m};T={t}");
        let a = inst.clone();
        cells.push(cell(params.clone(), "doubling", move || show(solve_unbounded_doubling(&a))));
        let b = inst.clone();
        cells.push(cell(params.clone(), "steinitz", move || show(solve_unbounded_steinitz(&b))));
        if t <= 1_000_000 {
            let c = inst.clone();
            cells.push(cell(params, "dp", move || show(solve_unbounded_dp(&c).map(|p| show_ext(p.at(t))))));
        }
    }
    cells
}

/// Random `a` and a concave `b` (random differences sorted descending).
pub fn conv_pair(rng: &mut Rng64, len: usize) -> (Vec<Ext<i64>>, Vec<Ext<i64>>) {
    let a = gen::rewards(rng, len, -1_000_000, 1_000_000);
    let mut diffs: Vec<i64> = (0..len.saturating_sub(1)).map(|_| rng.range_i64(-1000, 1000)).collect();
    diffs.sort_unstable_by(|x, y| y.cmp(x));
    let mut b = Vec::with_capacity(len);
    let mut acc = rng.range_i64(-1000, 1000);
    b.push(Ext::Finite(acc));
    for d in diffs {
        acc += d;
        b.push(Ext::Finite(acc));
    }
    (a, b)
}

fn conv_cells(opts: &BenchOptions) -> Vec<Cell> {
    let top = if opts.quick { 14 } else { 20 };
    let mut rng = Rng64::new(opts.seed);
    let mut cells = Vec::new();
    for e in 10..=top {
        let len = 1usize << e;
        let (a, b) = conv_pair(&mut rng, len);
        let (a, b) = (Arc::new(a), Arc::new(b));
        let checksum = |p: ValueProfile<i64>| p.iter().filter_map(|e| e.finite()).fold(0i64, |s, v| s.wrapping_add(v));
        let (a1, b1) = (a.clone(), b.clone());
        cells.push(cell(format!("len={len}"), "smawk", move || show(conv_concave(&a1, &b1).map(checksum))));
        if e <= 12 {
            cells.push(cell(format!("len={len}"), "naive", move || show(naive_maxplus_conv(&a, &b).map(checksum))));
        }
    }
    cells
}

fn separated_cells(opts: &BenchOptions) -> Vec<Cell> {
    let (sizes, k): (&[usize], usize) =
        if opts.quick { (&[10_000], 100) } else { (&[10_000, 100_000, 1_000_000], 1000) };
    let delta = 10;
    let mut rng = Rng64::new(opts.seed);
    let mut cells = Vec::new();
    for &n in sizes {
        let a: Arc<Vec<i64>> = Arc::new((0..n).map(|_| rng.range_i64(-1_000_000, 1_000_000)).collect());
        let params = format!("n={n};k={k};delta={delta}");
        let a1 = a.clone();
        cells.push(cell(params.clone(), "lagrangian", move || {
            show(solve_sparse_separated(&a1, k, delta).map(|s| s.value))
        }));
        if n <= 100_000 {
            cells.push(cell(params, "dp", move || show(sparse_separated_dp(&a, k, delta))));
        }
    }
    cells
}

fn monge_cells(opts: &BenchOptions) -> Vec<Cell> {
    let sizes: &[usize] = if opts.quick { &[32, 64] } else { &[64, 128, 256, 512] };
    let mut cells = Vec::new();
    for &n in sizes {
        let g: Arc<Monge> = Arc::new(gen_perturbed_squared_monge(n, opts.seed, 3).expect("generated graph is valid"));
        let checksum =
            |p: HopProfile<i64>| p.exact().iter().filter_map(|e| e.finite()).fold(0i64, |s, v| s.wrapping_add(v));
        let params = format!("n={n}");
        let g1 = g.clone();
        cells.push(cell(params.clone(), "all-k", move || show(monge_all_k(&g1, 0, n).map(checksum))));
        let g2 = g.clone();
        cells.push(cell(params.clone(), "independent", move || show(monge_all_k_independent(&g2, 0, n).map(checksum))));
        if n <= 256 {
            cells.push(cell(params, "dp", move || show(monge_dp_profile(&g, 0, n).map(checksum))));
        }
    }
    cells
}
