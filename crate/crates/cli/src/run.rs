//! Solver dispatch with optional oracle cross-checks.

use std::time::Instant;

use capdp::*;

use crate::instance::{DagInstance, Instance, MongeInstance, SequenceInstance};
use crate::report::{RunReport, TIMING_KEY};
use crate::CliError;

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct RunOptions {
    /// Compare against the kind's oracle.
    pub check: bool,
    /// Include the full profile in the report.
    pub profile: bool,
    /// Hop or edge budget for path problems; defaults to unlimited.
    pub k: Option<usize>,
}

/// Algorithms accepted for each kind, first one being the oracle.
pub fn algorithms(kind: crate::Kind) -> &'static [&'static str] {
    use crate::Kind::*;
    match kind {
        Knapsack => &["bellman", "td", "value-domain"],
        Unbounded => &["dp", "doubling", "steinitz", "value-domain"],
        Dag => &["dp", "lagrangian"],
        Monge => &["dp", "best-path", "all-k", "all-targets"],
        Sequence => &["dp", "separated"],
    }
}

pub(crate) fn render_ext(e: Ext<i64>) -> String {
    e.finite().map_or_else(|| "-inf".to_string(), |v| v.to_string())
}

pub(crate) fn render_profile(p: &[Ext<i64>]) -> String {
    p.iter().map(|&e| render_ext(e)).collect::<Vec<_>>().join(" ")
}

/// What a solver produced: the headline value and optionally a profile.
struct Outcome {
    value: Ext<i64>,
    profile: Option<Vec<Ext<i64>>>,
    extra: Vec<(&'static str, String)>,
}

impl Outcome {
    fn value(value: Ext<i64>) -> Self {
        Outcome { value, profile: None, extra: Vec::new() }
    }

    fn with_profile(value: Ext<i64>, profile: Vec<Ext<i64>>) -> Self {
        Outcome { value, profile: Some(profile), extra: Vec::new() }
    }
}

fn wide(v: i128) -> Ext<i64> {
    Ext::Finite(i64::try_from(v).expect("solver values fit the validated guard"))
}

/// Maps `Infeasible` to a `Bottom` value; other errors propagate.
fn or_bottom(r: Result<Outcome>) -> std::result::Result<Outcome, CliError> {
    match r {
        Ok(o) => Ok(o),
        Err(Error::Infeasible(_)) => Ok(Outcome::value(Ext::Bottom)),
        Err(e) => Err(e.into()),
    }
}

/// Runs `algo` on `inst` and reports. With `check`, a disagreement is
/// recorded as `agreement=false` in the report; callers decide the exit code.
pub fn run(algo: &str, inst: &Instance, opts: &RunOptions) -> std::result::Result<RunReport, CliError> {
    let kind = inst.kind();
    if !algorithms(kind).contains(&algo) {
        return Err(CliError::Usage(format!(
            "unknown algorithm {algo:?} for {}; expected one of {}",
            kind.name(),
            algorithms(kind).join(", ")
        )));
    }
    let mut report = RunReport::new();
    report.push("kind", kind.name());
    report.push("solver", algo);
    describe(inst, opts, &mut report);

    let start = Instant::now();
    let out = or_bottom(solve(algo, inst, opts))?;
    let elapsed = start.elapsed();

    report.push("value", render_ext(out.value));
    for (k, v) in &out.extra {
        report.push(k, v);
    }
    if opts.check {
        let oracle = or_bottom(solve(algorithms(kind)[0], inst, opts))?;
        let agree = match (&out.profile, &oracle.profile) {
            (Some(p), Some(q)) if comparable_profiles(algo, kind) => p == q && out.value == oracle.value,
            _ => out.value == oracle.value,
        };
        report.push("oracle_value", render_ext(oracle.value));
        report.push("agreement", agree);
    }
    if opts.profile {
        if let Some(p) = &out.profile {
            report.push("profile", render_profile(p));
        }
    }
    report.push(TIMING_KEY, format!("{:.3}", elapsed.as_secs_f64() * 1e3));
    Ok(report)
}

/// Whether the solver's profile has the same meaning as the oracle's.
fn comparable_profiles(algo: &str, kind: crate::Kind) -> bool {
    match kind {
        crate::Kind::Knapsack => algo == "td",
        crate::Kind::Monge => algo == "all-k",
        _ => false,
    }
}

fn budget(opts: &RunOptions, max: usize) -> usize {
    opts.k.unwrap_or(max)
}

fn describe(inst: &Instance, opts: &RunOptions, r: &mut RunReport) {
    match inst {
        Instance::Knapsack(k) => {
            r.push("n", k.items().len());
            r.push("D", k.distinct_weights());
            r.push("M", k.max_weight());
            r.push("V", k.max_value());
            r.push("T", k.capacity());
        }
        Instance::Unbounded(u) => {
            r.push("n", u.items().len());
            r.push("M", u.max_weight());
            r.push("V", u.max_value());
            r.push("T", u.capacity());
        }
        Instance::Dag(d) => {
            r.push("n", d.graph.n());
            r.push("m", d.graph.m());
            r.push("k", budget(opts, d.sink - d.source));
        }
        Instance::Monge(m) => {
            r.push("n", m.graph.n() + 1);
            r.push("m", m.graph.edge_count());
            r.push("k", budget(opts, m.sink - m.source));
        }
        Instance::Sequence(s) => {
            r.push("n", s.values.len());
            r.push("k", s.k);
            r.push("delta", s.delta);
        }
    }
}

fn solve(algo: &str, inst: &Instance, opts: &RunOptions) -> Result<Outcome> {
    match inst {
        Instance::Knapsack(k) => solve_knapsack(algo, k),
        Instance::Unbounded(u) => solve_unbounded(algo, u),
        Instance::Dag(d) => solve_dag(algo, d, opts),
        Instance::Monge(m) => solve_monge(algo, m, opts),
        Instance::Sequence(s) => solve_sequence(algo, s),
    }
}

fn solve_knapsack(algo: &str, k: &Knapsack) -> Result<Outcome> {
    let t = k.capacity();
    Ok(match algo {
        "bellman" => {
            let p = solve_knapsack_bellman(k)?;
            Outcome::with_profile(p.at(t), p.into_vec())
        }
        "td" => {
            let p = solve_knapsack_td(k)?;
            Outcome::with_profile(p.at(t), p.into_vec())
        }
        _ => Outcome::value(Ext::Finite(solve_knapsack_value_domain(k)?)),
    })
}

fn solve_unbounded(algo: &str, u: &Unbounded) -> Result<Outcome> {
    let t = u.capacity();
    Ok(match algo {
        "dp" => {
            let p = solve_unbounded_dp(u)?;
            Outcome::with_profile(p.at(t), p.into_vec())
        }
        "doubling" => {
            let (start, window) = unbounded_doubling_window(u)?;
            let mut o = Outcome::with_profile(window.at(t - start), window.into_vec());
            o.extra.push(("window_start", start.to_string()));
            o
        }
        "steinitz" => Outcome::value(Ext::Finite(solve_unbounded_steinitz(u)?)),
        _ => Outcome::value(Ext::Finite(solve_unbounded_value_domain(u)?)),
    })
}

fn solve_dag(algo: &str, d: &DagInstance, opts: &RunOptions) -> Result<Outcome> {
    let k = budget(opts, d.sink - d.source);
    Ok(match algo {
        "dp" => {
            let p = dp_hop_profile(&d.graph, d.source, d.sink, k)?;
            let at_most = p.at_most();
            Outcome::with_profile(at_most.at(k), p.exact().as_slice().to_vec())
        }
        _ => {
            let sol = solve_lagrangian(&d.graph, d.source, d.sink, k)?;
            let mut o = Outcome::value(wide(sol.value));
            o.extra.push(("lambda", sol.outcome.lambda.to_string()));
            o.extra.push(("probes", sol.probes.to_string()));
            o
        }
    })
}

fn solve_monge(algo: &str, m: &MongeInstance, opts: &RunOptions) -> Result<Outcome> {
    let (g, s, t) = (&m.graph, m.source, m.sink);
    let k = budget(opts, t - s).max(1);
    Ok(match algo {
        "dp" => {
            let p = monge_dp_profile(g, s, t)?;
            let at_most = p.at_most();
            Outcome::with_profile(at_most.at(k.min(t - s)), p.exact().as_slice().to_vec())
        }
        "best-path" => {
            let sol = monge_best_path(g, s, t, k)?;
            let mut o = Outcome::value(wide(sol.value));
            o.extra.push(("lambda", sol.outcome.lambda.to_string()));
            o.extra.push(("probes", sol.probes.to_string()));
            o
        }
        "all-k" => {
            let p = monge_all_k(g, s, t)?;
            let at_most = p.at_most();
            Outcome::with_profile(at_most.at(k.min(t - s)), p.exact().as_slice().to_vec())
        }
        _ => {
            let all = monge_all_targets(g, s, k)?;
            Outcome::with_profile(all[t], all)
        }
    })
}

fn solve_sequence(algo: &str, s: &SequenceInstance) -> Result<Outcome> {
    Ok(match algo {
        "dp" => Outcome::value(Ext::Finite(sparse_separated_dp(&s.values, s.k, s.delta)?)),
        _ => {
            let sol = solve_sparse_separated(&s.values, s.k, s.delta)?;
            let mut o = Outcome::value(wide(sol.value));
            o.extra.push(("probes", sol.probes.to_string()));
            o
        }
    })
}
