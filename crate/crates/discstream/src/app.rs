//! Subcommand implementations behind the `discstream` binary.

use std::path::PathBuf;

use anyhow::{anyhow, bail, Context, Result};
use discstream_core::analysis::exact::{by_type, exact_rbfs_oracle, exact_stream_oracle};
use discstream_core::analysis::lemmas::{required_trials, verify_lemmas, verify_lemmas_exact, rational_threshold};
use discstream_core::analysis::params::{theoretical_params, HqSize};
use discstream_core::analysis::reach::{
    estimate_reach_vertex, exact_reach_vertex, monte_carlo_stream_lower_bound, v_alpha_from, verify_stream_lower_bound,
};
use discstream_core::rbfs::random_bfs_labeled;
use discstream_core::tester::DEFAULT_AMPLIFICATION;
use discstream_core::{
    builtin_family, canonical_test, derive_seed, multi_collect, stream_test, ForbiddenFamily, Graph, Mode,
    QueryOracle, StreamOrder, TesterParams,
};
use num_bigint::BigUint;
use num_rational::BigRational;
use serde::Serialize;

use crate::battery;
use crate::config::{
    resolve, Check, Cli, CollectArgs, Command, EstimateArgs, Format, GenerateArgs, Global, Model, OracleArgs,
    OracleKind, ParamsArgs, RbfsArgs, TestArgs, TestMode, VerifyArgs,
};
use crate::generate::{generate, GraphSpec};
use crate::io;
use crate::property::PropertySpec;
use crate::report::{
    distribution_json, rational, rows_csv, trials_csv, CstReportJson, DiscJson, ExactLemmaJson, LemmaCheckJson,
    LemmaReportJson, McCstJson, ParamsJson, ReachJson, Report, TestAggregate, TrialRecord, TypeMassJson, VAlphaJson,
};

/// Derivation index reserved for graph generation, so generated graphs never
/// share a seed with trial `t` (which uses index `t`).
pub const GENERATOR_INDEX: u64 = u64::MAX;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Success,
    /// A tester rejected in the majority of trials.
    Reject,
}

impl Outcome {
    pub fn exit_code(self) -> u8 {
        match self {
            Outcome::Success => 0,
            Outcome::Reject => 1,
        }
    }
}

/// Resolved global settings embedded in every report.
#[derive(Debug, Clone, Serialize)]
struct Settings<'a, A: Serialize> {
    seed: u64,
    threads: usize,
    format: Format,
    #[serde(flatten)]
    args: &'a A,
}

pub fn run(cli: Cli) -> Result<Outcome> {
    let (global, command) = resolve(cli)?;
    let (body, outcome) = battery::with_threads(global.threads.unwrap_or(0), || execute(&global, command))?;
    match &global.out {
        Some(p) => std::fs::write(p, body).with_context(|| format!("writing {}", p.display()))?,
        None => print!("{body}"),
    }
    Ok(outcome)
}

/// Runs a resolved command and returns the rendered output.
pub fn execute(global: &Global, command: Command) -> Result<(String, Outcome)> {
    let seed = global.seed.unwrap_or(0);
    let threads = global.threads.unwrap_or(0);
    let settings = |format| (seed, threads, format);
    match command {
        Command::Generate(a) => cmd_generate(a, settings(global.format.unwrap_or(Format::Text))),
        Command::Rbfs(a) => cmd_rbfs(a, settings(global.format.unwrap_or(Format::Text))),
        Command::Collect(a) => cmd_collect(a, settings(global.format.unwrap_or(Format::Json))),
        Command::Test(a) => cmd_test(a, settings(global.format.unwrap_or(Format::Json))),
        Command::Estimate(a) => cmd_estimate(a, settings(global.format.unwrap_or(Format::Json))),
        Command::Oracle(a) => cmd_oracle(a, settings(global.format.unwrap_or(Format::Json))),
        Command::Verify(a) => cmd_verify(a, settings(global.format.unwrap_or(Format::Json))),
        Command::Params(a) => cmd_params(a, settings(global.format.unwrap_or(Format::Json))),
    }
}

type Ctx = (u64, usize, Format);

fn json<A: Serialize, T: Serialize>(command: &'static str, ctx: Ctx, args: &A, result: T) -> Result<String> {
    let report = Report {
        command,
        config: Settings {
            seed: ctx.0,
            threads: ctx.1,
            format: ctx.2,
            args,
        },
        result,
    };
    let mut s = serde_json::to_string_pretty(&report)?;
    s.push('\n');
    Ok(s)
}

fn no_text(command: &str) -> anyhow::Error {
    anyhow!("`{command}` has no text output; use --format json or csv")
}

pub fn graph_seed(master: u64) -> u64 {
    derive_seed(master, GENERATOR_INDEX)
}

fn load_graph(graph: &Option<PathBuf>, generator: &Option<String>, seed: u64) -> Result<Graph> {
    match (graph, generator) {
        (Some(p), None) => io::read_graph(p).with_context(|| format!("reading {}", p.display())),
        (None, Some(spec)) => Ok(generate(&spec.parse::<GraphSpec>()?, graph_seed(seed))?),
        (Some(_), Some(_)) => bail!("give either --graph or --generator, not both"),
        (None, None) => bail!("a graph is required (--graph <file> or --generator <spec>)"),
    }
}

fn cmd_generate(a: GenerateArgs, ctx: Ctx) -> Result<(String, Outcome)> {
    let spec: GraphSpec = a.kind.as_deref().ok_or_else(|| anyhow!("a generator spec is required"))?.parse()?;
    let g = generate(&spec, graph_seed(ctx.0))?;
    let edges: Vec<(u32, u32)> = g.edges().iter().map(|e| (e.0, e.1)).collect();
    let body = match ctx.2 {
        Format::Text => io::write_graph(&g),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                u: u32,
                v: u32,
            }
            rows_csv(&edges.iter().map(|&(u, v)| Row { u, v }).collect::<Vec<_>>())?
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                n: usize,
                m: usize,
                edges: Vec<(u32, u32)>,
            }
            let out = Out {
                n: g.num_vertices(),
                m: g.num_edges(),
                edges,
            };
            json("generate", ctx, &a, out)?
        }
    };
    Ok((body, Outcome::Success))
}

fn cmd_rbfs(mut a: RbfsArgs, ctx: Ctx) -> Result<(String, Outcome)> {
    let g = load_graph(&a.graph, &a.generator, ctx.0)?;
    let root = *a.root.get_or_insert(0);
    let q = *a.q.get_or_insert(2);
    let mut o = QueryOracle::new(&g, ctx.0);
    let (disc, _) = random_bfs_labeled(&mut o, root, q)?;
    let body = match ctx.2 {
        Format::Text => {
            let mut s = format!("{} {}\n", g.num_vertices(), disc.num_edges());
            for e in disc.edges() {
                s.push_str(&format!("{} {}\n", e.0, e.1));
            }
            s.push_str(&format!("root {root}\n"));
            for (v, d) in disc.depths() {
                s.push_str(&format!("depth {v} {d}\n"));
            }
            s
        }
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                vertex: u32,
                depth: u32,
            }
            rows_csv(&disc.depths().iter().map(|(&vertex, &depth)| Row { vertex, depth }).collect::<Vec<_>>())?
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                disc: DiscJson,
                queries: u64,
            }
            json("rbfs", ctx, &a, Out { disc: (&disc).into(), queries: o.query_count() })?
        }
    };
    Ok((body, Outcome::Success))
}

fn cmd_collect(mut a: CollectArgs, ctx: Ctx) -> Result<(String, Outcome)> {
    let q = *a.q.get_or_insert(2);
    let roots = a.roots.clone().ok_or_else(|| anyhow!("--roots is required"))?;
    let (g, listed) = match &a.stream {
        Some(p) => {
            if a.graph.is_some() || a.generator.is_some() {
                bail!("give either --stream or a graph source, not both");
            }
            let (g, order) = io::read_stream(p).with_context(|| format!("reading {}", p.display()))?;
            (g, Some(order))
        }
        None => (load_graph(&a.graph, &a.generator, ctx.0)?, None),
    };
    let order = match listed {
        Some(edges) => StreamOrder::from_edges(&g, &edges)?,
        None => StreamOrder::random(&g, *a.order_seed.get_or_insert(derive_seed(ctx.0, 0))),
    };
    let discs = multi_collect(&order, &roots, q)?;
    let discs: Vec<DiscJson> = discs.iter().map(DiscJson::from).collect();
    let body = match ctx.2 {
        Format::Text => return Err(no_text("collect")),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                root: u32,
                vertices: usize,
                edges: usize,
                code: Option<&'a str>,
            }
            rows_csv(
                &discs
                    .iter()
                    .map(|d| Row {
                        root: d.root,
                        vertices: d.depths.len(),
                        edges: d.edges.len(),
                        code: d.code.as_deref(),
                    })
                    .collect::<Vec<_>>(),
            )?
        }
        Format::Json => json("collect", ctx, &a, discs)?,
    };
    Ok((body, Outcome::Success))
}

fn family(a: &TestArgs, q: u32) -> Result<ForbiddenFamily> {
    match (&a.property, &a.pattern) {
        (Some(p), None) => Ok(builtin_family(p.parse::<PropertySpec>()?.0, q)?),
        (None, Some(files)) if !files.is_empty() => {
            let patterns = files
                .iter()
                .map(|f| io::read_pattern(f).with_context(|| format!("reading {}", f.display())))
                .collect::<Result<Vec<_>>>()?;
            Ok(ForbiddenFamily::explicit(patterns)?)
        }
        (Some(_), Some(_)) => bail!("give either --property or --pattern, not both"),
        _ => bail!("a property is required (--property or --pattern)"),
    }
}

#[derive(Serialize)]
struct TestResult {
    aggregate: TestAggregate,
    trials: Vec<TrialRecord>,
}

fn cmd_test(mut a: TestArgs, ctx: Ctx) -> Result<(String, Outcome)> {
    let g = load_graph(&a.graph, &a.generator, ctx.0)?;
    let q0 = *a.q0.get_or_insert(1);
    let amp = *a.amplification.get_or_insert(DEFAULT_AMPLIFICATION);
    let q = *a.q.get_or_insert(q0.saturating_mul(amp));
    let mode = *a.mode.get_or_insert(TestMode::Query);
    let model = *a.model.get_or_insert(Model::NeighborEdge);
    let samples = *a.samples.get_or_insert(16);
    let trials = *a.trials.get_or_insert(100);
    let epsilon = *a.epsilon.get_or_insert(0.1);
    let mut params = TesterParams::with_q(
        q0,
        q,
        samples,
        epsilon,
        match model {
            Model::Neighbor => Mode::Neighbor,
            Model::NeighborEdge => Mode::NeighborEdge,
        },
    )?;
    params.store_whole_below = a.store_whole_below;
    let fam = family(&a, q)?;
    let fixed_order = a.order_seed.map(|s| StreamOrder::random(&g, s));
    let records = battery::try_run(trials, ctx.0, |t, seed| -> Result<TrialRecord> {
        Ok(match mode {
            TestMode::Query => {
                let mut o = QueryOracle::new(&g, seed);
                TrialRecord::new(t, seed, None, &canonical_test(&mut o, &params, &fam)?)
            }
            TestMode::Stream => {
                let order_seed = a.order_seed.unwrap_or(derive_seed(seed, 0));
                let owned;
                let order = match &fixed_order {
                    Some(o) => o,
                    None => {
                        owned = StreamOrder::random(&g, order_seed);
                        &owned
                    }
                };
                let v = stream_test(order, &params, &fam, derive_seed(seed, 1))?;
                TrialRecord::new(t, seed, Some(order_seed), &v)
            }
        })
    })?;
    let aggregate = TestAggregate::from_records(&records);
    let outcome = if aggregate.majority == "reject" {
        Outcome::Reject
    } else {
        Outcome::Success
    };
    let body = match ctx.2 {
        Format::Text => return Err(no_text("test")),
        Format::Csv => trials_csv(&records)?,
        Format::Json => json("test", ctx, &a, TestResult { aggregate, trials: records })?,
    };
    Ok((body, outcome))
}

fn cmd_estimate(mut a: EstimateArgs, ctx: Ctx) -> Result<(String, Outcome)> {
    let g = load_graph(&a.graph, &a.generator, ctx.0)?;
    let q = *a.q.get_or_insert(2);
    let exact = *a.exact.get_or_insert(false);
    let estimates = if exact {
        a.trials = None;
        exact_reach_vertex(&g, q)?
    } else {
        estimate_reach_vertex(&g, q, *a.trials.get_or_insert(10_000), ctx.0)?
    };
    let rows: Vec<ReachJson> = estimates.iter().map(|(&v, e)| ReachJson::new(v, e)).collect();
    let body = match ctx.2 {
        Format::Text => return Err(no_text("estimate")),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row<'a> {
                vertex: u32,
                value: f64,
                exact: Option<&'a str>,
                trials: u64,
                stderr: f64,
                method: &'a str,
            }
            rows_csv(
                &rows
                    .iter()
                    .map(|r| Row {
                        vertex: r.vertex,
                        value: r.value,
                        exact: r.exact.as_deref(),
                        trials: r.trials,
                        stderr: r.stderr,
                        method: r.method,
                    })
                    .collect::<Vec<_>>(),
            )?
        }
        Format::Json => match a.alpha {
            Some(alpha) => json("estimate", ctx, &a, VAlphaJson::from(&v_alpha_from(estimates, alpha)))?,
            None => json("estimate", ctx, &a, rows)?,
        },
    };
    Ok((body, Outcome::Success))
}

fn cmd_oracle(mut a: OracleArgs, ctx: Ctx) -> Result<(String, Outcome)> {
    let g = load_graph(&a.graph, &a.generator, ctx.0)?;
    let root = *a.root.get_or_insert(0);
    let q = *a.q.get_or_insert(1);
    let kind = *a.kind.get_or_insert(OracleKind::Both);
    let mut parts = Vec::new();
    if matches!(kind, OracleKind::Rbfs | OracleKind::Both) {
        parts.push(("rbfs", exact_rbfs_oracle(&g, root, q)?));
    }
    if matches!(kind, OracleKind::Stream | OracleKind::Both) {
        parts.push(("stream", exact_stream_oracle(&g, root, q)?));
    }
    let body = match ctx.2 {
        Format::Text => return Err(no_text("oracle")),
        Format::Csv => {
            #[derive(Serialize)]
            struct Row {
                oracle: &'static str,
                code: Option<String>,
                vertices: usize,
                edges: usize,
                probability: String,
            }
            let mut rows = Vec::new();
            for (name, d) in &parts {
                for o in distribution_json(d) {
                    rows.push(Row {
                        oracle: name,
                        code: o.disc.code,
                        vertices: o.disc.depths.len(),
                        edges: o.disc.edges.len(),
                        probability: o.probability,
                    });
                }
            }
            rows_csv(&rows)?
        }
        Format::Json => {
            #[derive(Serialize)]
            struct Part {
                oracle: &'static str,
                outcomes: Vec<crate::report::OutcomeJson>,
                by_type: Vec<TypeMassJson>,
            }
            let mut out = Vec::new();
            for (name, d) in &parts {
                out.push(Part {
                    oracle: name,
                    outcomes: distribution_json(d),
                    by_type: by_type(d)?
                        .iter()
                        .map(|(c, p)| TypeMassJson {
                            code: c.to_hex(),
                            probability: rational(p),
                        })
                        .collect(),
                });
            }
            json("oracle", ctx, &a, out)?
        }
    };
    Ok((body, Outcome::Success))
}

fn cmd_verify(mut a: VerifyArgs, ctx: Ctx) -> Result<(String, Outcome)> {
    let g = load_graph(&a.graph, &a.generator, ctx.0)?;
    let q = *a.q.get_or_insert(1);
    let check = *a.check.get_or_insert(Check::Lemmas);
    if ctx.2 == Format::Text {
        return Err(no_text("verify"));
    }
    let csv = ctx.2 == Format::Csv;
    let body = match check {
        Check::Lemmas => {
            let alpha = *a.alpha.get_or_insert(0.5);
            let trials = *a.trials.get_or_insert(required_trials(alpha).max(10_000));
            let rep = LemmaReportJson::from(&verify_lemmas(&g, q, alpha, trials, ctx.0)?);
            if csv {
                rows_csv::<LemmaCheckJson>(&rep.checks)?
            } else {
                json("verify", ctx, &a, rep)?
            }
        }
        Check::LemmasExact => {
            let alpha = *a.alpha.get_or_insert(0.5);
            let r = rational_threshold(alpha).ok_or_else(|| anyhow!("alpha {alpha} is not representable"))?;
            let rep = ExactLemmaJson::from(&verify_lemmas_exact(&g, q, &r)?);
            if csv {
                #[derive(Serialize)]
                struct Row<'a> {
                    q: u32,
                    alpha: &'a str,
                    v_alpha: usize,
                    size_bound: &'a str,
                    size_holds: bool,
                    degree_floor: &'a str,
                    degree_violations: usize,
                    holds: bool,
                }
                rows_csv(&[Row {
                    q: rep.q,
                    alpha: &rep.alpha,
                    v_alpha: rep.v_alpha.len(),
                    size_bound: &rep.size_bound,
                    size_holds: rep.size_holds,
                    degree_floor: &rep.degree_floor,
                    degree_violations: rep.degree_violations.len(),
                    holds: rep.holds,
                }])?
            } else {
                json("verify", ctx, &a, rep)?
            }
        }
        Check::StreamExact => {
            let rep = CstReportJson::from(&verify_stream_lower_bound(&g, q)?);
            if csv {
                rows_csv(&rep.per_root)?
            } else {
                json("verify", ctx, &a, rep)?
            }
        }
        Check::StreamMc => {
            let samples = *a.samples.get_or_insert(16);
            let delta = *a.delta.get_or_insert(0.05);
            let cst = *a.cst.get_or_insert(1.0);
            let trials = *a.trials.get_or_insert(10_000);
            let reps = *a.repetitions.get_or_insert(100);
            let rep = McCstJson::from(&monte_carlo_stream_lower_bound(
                &g, q, samples, delta, cst, trials, reps, ctx.0,
            )?);
            if csv {
                rows_csv(&rep.types)?
            } else {
                json("verify", ctx, &a, rep)?
            }
        }
    };
    Ok((body, Outcome::Success))
}

fn cmd_params(mut a: ParamsArgs, ctx: Ctx) -> Result<(String, Outcome)> {
    let q = *a.q.get_or_insert(2);
    let big = |s: &str, what: &str| s.parse::<BigUint>().map_err(|_| anyhow!("{what} must be a positive integer"));
    let hq = match (&a.hq, &a.palette) {
        (Some(h), _) => HqSize::Override(big(h, "--hq")?),
        (None, p) => HqSize::CrudeBound {
            palette: p.as_deref().map(|p| big(p, "--palette")).transpose()?,
        },
    };
    let cst = a
        .cst
        .as_deref()
        .map(|c| c.parse::<BigRational>().map_err(|_| anyhow!("--cst must be p/q or an integer")))
        .transpose()?;
    let p = ParamsJson::from(&theoretical_params(q, hq, cst)?);
    let body = match ctx.2 {
        Format::Text => return Err(no_text("params")),
        Format::Csv => rows_csv(&[p])?,
        Format::Json => json("params", ctx, &a, p)?,
    };
    Ok((body, Outcome::Success))
}
