//! Subcommand bodies, output rendering and the exit-code contract.

use std::fmt::Write as _;
use std::hash::Hash;
use std::ops::RangeInclusive;

use serde_json::json;
use tlh_core::conjectures::{
    colorshift_check_by, colorshift_instance, growth_check_by, growth_instance, CheckReport, Family, InstanceResult,
};
use tlh_core::recursion::trace::trace_evaluate;
use tlh_core::recursion::{expand, FullMemo, MemoStats, MemoTable, Q1Memo, RecState, Retention};
use tlh_core::torus::{reduced_poincare, reduced_q1, total_dimension, unknot_factor, TorusInput};
use tlh_core::{Error, StructuredRational};

use crate::{cache, json, Cli, Command, FamilyArg, Format};

pub const EXIT_OK: u8 = 0;
pub const EXIT_CHECK_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_INTERNAL: u8 = 3;

const TRACE_NODES: usize = 4000;
const TRACE_LINES: usize = 200;

enum Failure {
    Core(Error),
    Usage(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Core(e)
    }
}

struct Output {
    text: String,
    code: u8,
}

pub fn run(cli: &Cli) -> u8 {
    if let Command::CacheStats = cli.command {
        return finish(cache_stats(cli), cli);
    }
    let mut memo = match &cli.cache {
        Some(p) => cache::load_or_fresh(p),
        None => FullMemo::new(Retention::Roots),
    };
    let before = memo.len();
    let mut q1 = Q1Memo::new(Retention::Roots);
    let out = match &cli.command {
        Command::Poincare { m, n, k, unreduced, q1: at_q1 } => {
            poincare(cli, *m, *n, *k, *unreduced, *at_q1, &mut memo, &mut q1)
        }
        Command::Dim { m, n, k } => dim(cli, *m, *n, *k, &mut memo),
        Command::GrowthCheck { m, n, kmax } => growth(cli, *m, *n, *kmax, &mut q1),
        Command::ColorshiftCheck { family } => colorshift(cli, family, &mut memo),
        Command::CacheStats => unreachable!(),
    };
    if cli.stats {
        print_stats("memo", memo.stats());
        if q1.stats() != MemoStats::default() {
            print_stats("q1 memo", q1.stats());
        }
    }
    if out.is_ok() && memo.len() != before {
        if let Some(p) = &cli.cache {
            if let Err(e) = cache::save(p, &memo) {
                eprintln!("warning: cannot write cache {}: {e}", p.display());
            }
        }
    }
    finish(out, cli)
}

fn finish(out: Result<Output, Failure>, cli: &Cli) -> u8 {
    match out {
        Ok(o) => {
            print!("{}", o.text);
            o.code
        }
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            EXIT_USAGE
        }
        Err(Failure::Core(e)) => {
            let code = match e {
                Error::InvalidInput(_)
                | Error::Unsupported(_)
                | Error::InfiniteDimension
                | Error::InsufficientSamples { .. } => EXIT_USAGE,
                _ => EXIT_INTERNAL,
            };
            if cli.format == Format::Json {
                println!("{}", json!({"error": e.to_string(), "exit": code}));
            }
            eprintln!("error: {e}");
            code
        }
    }
}

fn print_stats(name: &str, s: MemoStats) {
    eprintln!("{name}: entries={} hits={} misses={}", s.entries, s.hits, s.misses);
}

fn render(cli: &Cli, text: impl FnOnce() -> String, value: impl FnOnce() -> serde_json::Value) -> String {
    match cli.format {
        Format::Text => text(),
        Format::Json => format!("{}\n", value()),
    }
}

fn normalized(cli: &Cli, x: StructuredRational) -> StructuredRational {
    if cli.raw {
        x
    } else {
        x.monomial_normalize().unwrap_or(x)
    }
}

#[allow(clippy::too_many_arguments)]
fn poincare(
    cli: &Cli,
    m: usize,
    n: usize,
    k: usize,
    unreduced: bool,
    at_q1: bool,
    memo: &mut FullMemo,
    q1: &mut Q1Memo,
) -> Result<Output, Failure> {
    let t = TorusInput::new(m, n, k)?;
    let head = json!({"m": m, "n": n, "k": k, "d": t.d()});
    let mut env = head.as_object().cloned().unwrap_or_default();
    if at_q1 {
        let p = dump_on_inexact(&t, reduced_q1(&t, q1))?;
        let p = if cli.raw { p } else { p.monomial_normalize().unwrap_or(p) };
        let dim = p.coefficient_sum().to_string();
        env.insert("reduced".into(), json!(true));
        env.insert("q1".into(), json!(true));
        env.insert("poincare".into(), json::poly(&p));
        env.insert("dimension".into(), json!(dim));
        let text = render(cli, || format!("{p}\n"), || env.into());
        return Ok(Output { text, code: EXIT_OK });
    }
    let series = normalized(cli, dump_on_inexact(&t, reduced_poincare(&t, memo))?.value);
    let dim = (t.is_knot() && series.is_polynomial()).then(|| series.num().coefficient_sum().to_string());
    env.insert("reduced".into(), json!(!unreduced));
    env.insert("poincare".into(), json::ring(&series));
    env.insert("dimension".into(), json!(dim));
    let text = if unreduced {
        let u = unknot_factor(k);
        env.insert("unknot".into(), json::unknot(&u));
        render(cli, || format!("reduced: {series}\nunknot: {u}\n"), || env.into())
    } else {
        render(cli, || format!("{series}\n"), || env.into())
    };
    Ok(Output { text, code: EXIT_OK })
}

fn dim(cli: &Cli, m: usize, n: usize, k: usize, memo: &mut FullMemo) -> Result<Output, Failure> {
    let t = TorusInput::new(m, n, k)?;
    let d = dump_on_inexact(&t, total_dimension(&t, memo))?.to_string();
    let text = render(cli, || format!("{d}\n"), || json!({"m": m, "n": n, "k": k, "dimension": d}));
    Ok(Output { text, code: EXIT_OK })
}

fn growth(cli: &Cli, m: usize, n: usize, kmax: usize, q1: &mut Q1Memo) -> Result<Output, Failure> {
    let report = growth_check_by(m, n, kmax, |ks| {
        parallel(cli.workers, ks, q1, |k, memo| {
            let t = TorusInput::new(m, n, k)?;
            dump_on_inexact(&t, growth_instance(m, n, k, memo))
        })
    })?;
    Ok(report_output(cli, &report))
}

fn colorshift(cli: &Cli, family: &FamilyArg, memo: &mut FullMemo) -> Result<Output, Failure> {
    let (family, kmin, kmax) = match *family {
        FamilyArg::T2even { n, kmin, kmax } => (Family::T2Even { n }, kmin, kmax),
        FamilyArg::T33 { kmin, kmax } => (Family::T33, kmin, kmax),
    };
    let report = colorshift_check_by(family, kmin, kmax, |ks| {
        parallel(cli.workers, ks, memo, |k, memo| {
            let t = family.torus(k)?;
            dump_on_inexact(&t, colorshift_instance(family, k, memo))
        })
    })?;
    Ok(report_output(cli, &report))
}

fn report_output(cli: &Cli, report: &CheckReport) -> Output {
    let text = render(cli, || report.to_string(), || json::report(report));
    Output { text, code: if report.all_pass() { EXIT_OK } else { EXIT_CHECK_FAILED } }
}

/// A worker's memo copy and its `(k, result)` pairs.
type Lane<K, V> = (MemoTable<K, V>, Vec<(usize, tlh_core::Result<InstanceResult>)>);

/// Evaluates `f` for every `k`, spreading the colors round-robin over
/// `workers` threads. Each thread starts from a copy of `memo`; the copies
/// are merged back afterwards. Results come back in `k` order, so the output
/// does not depend on the worker count.
fn parallel<K, V, F>(
    workers: u32,
    ks: RangeInclusive<usize>,
    memo: &mut MemoTable<K, V>,
    f: F,
) -> tlh_core::Result<Vec<InstanceResult>>
where
    K: Clone + Eq + Hash + Send + Sync,
    V: Clone + Send + Sync,
    F: Fn(usize, &mut MemoTable<K, V>) -> tlh_core::Result<InstanceResult> + Sync,
{
    let ks: Vec<usize> = ks.collect();
    let workers = (workers as usize).min(ks.len()).max(1);
    if workers == 1 {
        return ks.into_iter().map(|k| f(k, memo)).collect();
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(workers)
        .build()
        .map_err(|e| Error::InvariantViolation(format!("thread pool: {e}")))?;
    let base: &MemoTable<K, V> = memo;
    let lanes: Vec<Lane<K, V>> = pool.install(|| {
        use rayon::prelude::*;
        (0..workers)
            .into_par_iter()
            .map(|lane| {
                let mut local = base.clone();
                let out = ks.iter().skip(lane).step_by(workers).map(|&k| (k, f(k, &mut local))).collect();
                (local, out)
            })
            .collect()
    });
    let mut results = Vec::with_capacity(ks.len());
    for (local, out) in lanes {
        memo.merge(local);
        results.extend(out);
    }
    results.sort_by_key(|(k, _)| *k);
    results.into_iter().map(|(_, r)| r).collect()
}

/// On an inexact division, writes the rule trace of the failing input to
/// stderr before passing the error on.
fn dump_on_inexact<T>(t: &TorusInput, r: tlh_core::Result<T>) -> tlh_core::Result<T> {
    if let Err(Error::InexactDivision(_)) = &r {
        eprint!("{}", trace_dump(t));
    }
    r
}

fn trace_dump(t: &TorusInput) -> String {
    let root = t.root_state();
    let mut s = String::new();
    let _ = writeln!(s, "rule trace for {t}, root {root:?}:");
    match trace_evaluate(&root, TRACE_NODES) {
        Ok(trace) => {
            let mut depth = vec![0usize; trace.nodes.len()];
            for (i, node) in trace.nodes.iter().enumerate() {
                for &c in &node.children {
                    depth[c] = depth[i] + 1;
                }
            }
            for (i, node) in trace.nodes.iter().enumerate().take(TRACE_LINES) {
                let _ = writeln!(
                    s,
                    "{:indent$}R{} {:?} (1-Q)^{}",
                    "",
                    node.rule.number(),
                    node.state,
                    node.cumulative_qpow,
                    indent = 2 * depth[i]
                );
            }
            if trace.nodes.len() > TRACE_LINES {
                let _ = writeln!(s, "... {} more nodes", trace.nodes.len() - TRACE_LINES);
            }
        }
        Err(_) => {
            let _ = writeln!(s, "tree exceeds {TRACE_NODES} nodes; leftmost path:");
            let mut state: RecState = root;
            for _ in 0..TRACE_LINES {
                let Ok(step) = expand(&state) else { break };
                let _ = writeln!(s, "  R{} {:?}", step.rule.number(), state);
                let Some(next) = step.children.iter().next().cloned() else { break };
                state = next;
            }
        }
    }
    s
}

fn cache_stats(cli: &Cli) -> Result<Output, Failure> {
    let Some(path) = &cli.cache else {
        return Err(Failure::Usage("cache-stats needs --cache or TLH_CACHE".into()));
    };
    let memo = cache::load_or_fresh(path);
    let mut by_weight = std::collections::BTreeMap::<usize, usize>::new();
    for (s, _) in memo.iter() {
        *by_weight.entry(s.weight()).or_default() += 1;
    }
    let text = render(
        cli,
        || {
            let mut t = format!("{}: {} entries\n", path.display(), memo.len());
            for (l, c) in &by_weight {
                let _ = writeln!(t, "  weight {l}: {c}");
            }
            t
        },
        || {
            let w: serde_json::Map<String, serde_json::Value> =
                by_weight.iter().map(|(l, c)| (l.to_string(), json!(c))).collect();
            json!({"path": path.display().to_string(), "entries": memo.len(), "by_weight": w})
        },
    );
    Ok(Output { text, code: EXIT_OK })
}
