use crate::args::{Cli, Command, DatasetCommand, FamilyArg, GenGraphArgs, Global, Method};
use crate::bench::{rows_csv, run_bench, BenchConfig};
use crate::manifest::RunManifest;
use crate::warm::{parse_warm_start, WarmStart};
use crate::Status;
use anyhow::{anyhow, bail, Context, Result};
use chainfeas::chains::ChainFamily;
use chainfeas::datagen::{
    dataset_stats, generate_dataset, label_instance, render_record, sample_instance, GenerateConfig, Label,
    LabelBudget, Record, SampleOptions, Scale,
};
use chainfeas::encode::{encode_embedding, encode_kcoloring, encode_mincoloring, EncodeError, EncodeLimits};
use chainfeas::exact::{exact_color, exact_embed, min_color, Budget, Certificate, Outcome};
use chainfeas::fjump::{fj_phase2, fj_search, FjConfig, Phase2Config};
use chainfeas::graph::{Graph, GraphFamily, GraphSpec};
use chainfeas::instance::Instance;
use chainfeas::milp::{Assignment, Model};
use chainfeas::rng::derive_seed;
use chainfeas::screening::{zero_phase_screen, ScreenResult, Violation};
use chainfeas::solution::{colors_used, Solution};
use chainfeas::verify::{
    best_of_n, parse_candidate, verify_coloring, verify_embedding, ColoringViolation, EmbeddingViolation,
};
use serde::Serialize;
use std::fs;
use std::path::Path;
use std::time::Duration;

const DEFAULT_FJ_ITERS: u64 = 100_000;
const DEFAULT_BENCH_ITERS: u64 = 1_000_000;

/// Runs a parsed command line, writing the manifest afterwards if asked.
pub fn execute(cli: &Cli) -> Result<Status> {
    let status = dispatch(cli)?;
    if let Some(path) = &cli.global.write_manifest {
        let manifest = RunManifest::new(cli);
        write(path, &(serde_json::to_string_pretty(&manifest)? + "\n"))?;
    }
    Ok(status)
}

fn dispatch(cli: &Cli) -> Result<Status> {
    let g = &cli.global;
    match &cli.command {
        Command::GenGraph(a) => gen_graph(g, a),
        Command::Screen { instance } => screen(g, instance),
        Command::EnumerateChains { input, cap } => enumerate_chains(g, input, *cap),
        Command::Encode { instance, dump } => encode(g, instance, dump.as_deref()),
        Command::Solve {
            instance,
            method,
            optimize,
        } => {
            let inst = load_instance(g, instance)?;
            match method {
                Method::Fj => solve_fj(g, &inst, *optimize),
                Method::Exact => solve_exact(g, &inst, *optimize),
            }
        }
        Command::Repair { instance } => {
            if g.warm_start.is_none() {
                bail!("repair needs --warm-start");
            }
            solve_fj(g, &load_instance(g, instance)?, true)
        }
        Command::Verify { instance, solution } => verify(g, instance, solution),
        Command::Select { instance, candidates } => select(g, instance, candidates),
        Command::Dataset(d) => dataset(g, d),
        Command::BenchWarmstart(b) => {
            let cfg = BenchConfig {
                perturbation: b.perturbation,
                k: g.k.unwrap_or(3),
                max_iterations: g.iters.unwrap_or(DEFAULT_BENCH_ITERS),
                time_limit: time_limit(g)?,
                scale: scale(g),
                jobs: g.jobs,
                ..BenchConfig::new(b.count, g.seed)
            };
            if !(0.0..=1.0).contains(&cfg.perturbation) {
                bail!("--perturbation must lie in [0, 1]");
            }
            let report = run_bench(&cfg);
            if let Some(path) = &b.csv {
                write(path, &rows_csv(&report.rows))?;
            }
            print_json(&report)?;
            Ok(if report.instances < b.count {
                eprintln!("only {} satisfiable instances found", report.instances);
                Status::Negative
            } else {
                Status::Ok
            })
        }
        Command::Replay { manifest } => {
            let m: RunManifest = serde_json::from_str(&read(manifest)?)
                .with_context(|| format!("{}: not a run manifest", manifest.display()))?;
            if matches!(m.config.command, Command::Replay { .. }) {
                bail!("refusing to replay a replay");
            }
            dispatch(&m.config)
        }
    }
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write(path: &Path, text: &str) -> Result<()> {
    fs::write(path, text).with_context(|| format!("cannot write {}", path.display()))
}

fn print_json<T: Serialize>(value: &T) -> Result<()> {
    println!("{}", serde_json::to_string(value)?);
    Ok(())
}

fn time_limit(g: &Global) -> Result<Option<Duration>> {
    g.time_limit
        .map(|s| Duration::try_from_secs_f64(s).map_err(|_| anyhow!("--time-limit must be a nonnegative number of seconds")))
        .transpose()
}

fn scale(g: &Global) -> Scale {
    if g.full_scale {
        Scale::Full
    } else {
        Scale::Desk
    }
}

fn fj_config(g: &Global) -> Result<FjConfig> {
    Ok(FjConfig {
        max_iterations: g.iters.unwrap_or(DEFAULT_FJ_ITERS),
        seed: g.seed,
        time_limit: time_limit(g)?,
        ..Default::default()
    })
}

fn exact_budget(g: &Global) -> Result<Budget> {
    Ok(Budget {
        max_nodes: g.iters.unwrap_or(Budget::default().max_nodes),
        time_limit: time_limit(g)?,
    })
}

/// Loads an instance file, applying `--chain-limit` and `--k` overrides.
fn load_instance(g: &Global, path: &Path) -> Result<Instance> {
    let mut inst = Instance::from_json(&read(path)?).with_context(|| format!("{}: malformed instance", path.display()))?;
    match &mut inst {
        Instance::Embedding { chain_limit, .. } => {
            if let Some(l) = g.chain_limit {
                *chain_limit = l;
            }
        }
        Instance::Kcoloring { k, .. } => {
            if let Some(v) = g.k {
                *k = v;
            }
        }
        Instance::Mincoloring { .. } => {}
    }
    Ok(inst)
}

fn gen_graph(g: &Global, a: &GenGraphArgs) -> Result<Status> {
    if let Some(task) = a.sample {
        let opts = SampleOptions {
            scale: scale(g),
            chain_limit: g.chain_limit.unwrap_or(3),
            k: g.k.unwrap_or(3),
        };
        let sampled = sample_instance(task, g.seed, &opts)?;
        println!("{}", sampled.instance.to_json());
        return Ok(Status::Ok);
    }
    let family = match a.family {
        FamilyArg::Er => match a.p {
            Some(p) => GraphFamily::ErdosRenyi { n: a.n, p },
            None => GraphFamily::erdos_renyi_avg_degree(a.n, a.avg_degree),
        },
        FamilyArg::Ba => GraphFamily::BarabasiAlbert { n: a.n, m: a.m },
        FamilyArg::Ws => GraphFamily::WattsStrogatz {
            n: a.n,
            k: a.degree,
            beta: a.beta,
        },
        FamilyArg::Regular => GraphFamily::RandomRegular { n: a.n, d: a.degree },
        FamilyArg::Sbm => GraphFamily::Sbm {
            sizes: a.blocks.clone(),
            p_in: a.p_in,
            p_out: a.p_out,
        },
        FamilyArg::Chimera => GraphFamily::Chimera {
            m: a.rows,
            n: a.cols,
            t: a.shore,
        },
    };
    let mut spec = GraphSpec::new(family, g.seed);
    if a.drop_isolated {
        spec = spec.without_isolated();
    }
    println!("{}", spec.generate()?.dump_edge_list());
    Ok(Status::Ok)
}

fn embedding_parts(inst: &Instance) -> Result<(&Graph, &Graph, usize)> {
    match inst {
        Instance::Embedding {
            problem,
            hardware,
            chain_limit,
        } => Ok((problem, hardware, *chain_limit)),
        other => bail!("expected an embedding instance, got {}", other.task().as_str()),
    }
}

fn screen(g: &Global, path: &Path) -> Result<Status> {
    let inst = load_instance(g, path)?;
    let (p, h, l) = embedding_parts(&inst)?;
    let verdict = zero_phase_screen(p, h, l);
    print_json(&verdict)?;
    Ok(if verdict.is_infeasible() {
        Status::Negative
    } else {
        Status::Ok
    })
}

fn enumerate_chains(g: &Global, path: &Path, cap: usize) -> Result<Status> {
    let text = read(path)?;
    let (hardware, file_limit) = match Instance::from_json(&text) {
        Ok(Instance::Embedding {
            hardware, chain_limit, ..
        }) => (hardware, Some(chain_limit)),
        _ => (
            Graph::load_edge_list(&text)
                .with_context(|| format!("{}: neither an embedding instance nor an edge list", path.display()))?,
            None,
        ),
    };
    let limit = g.chain_limit.or(file_limit).unwrap_or(3);
    let family = ChainFamily::enumerate_capped(&hardware, limit, cap)?;
    print_json(&family.stats())?;
    Ok(Status::Ok)
}

#[derive(Serialize)]
struct ScreenedOut<'a> {
    screen: &'a ScreenResult,
}

/// Variable cap for `encode`, which reports the literal k-color model.
const MAX_PRINTED_VARS: usize = 1 << 26;

fn encode(g: &Global, path: &Path, dump: Option<&Path>) -> Result<Status> {
    let inst = load_instance(g, path)?;
    let (stats, text) = match &inst {
        Instance::Embedding {
            problem,
            hardware,
            chain_limit,
        } => {
            let verdict = zero_phase_screen(problem, hardware, *chain_limit);
            let Some(s_min) = verdict.s_min() else {
                print_json(&ScreenedOut { screen: &verdict })?;
                return Ok(Status::Negative);
            };
            let family = ChainFamily::enumerate(hardware, *chain_limit)?;
            let enc = encode_embedding(problem, hardware, &family, s_min, EncodeLimits::default())?;
            (enc.stats().clone(), dump.map(|_| enc.model.dump()))
        }
        Instance::Kcoloring { graph, k } => {
            if graph.n().saturating_mul(*k) > MAX_PRINTED_VARS {
                bail!("{} vertices with {k} colors is too large to encode", graph.n());
            }
            let enc = encode_kcoloring(graph, *k);
            (enc.stats().clone(), dump.map(|_| enc.model.dump()))
        }
        Instance::Mincoloring { graph } => {
            let enc = encode_mincoloring(graph);
            (enc.stats().clone(), dump.map(|_| enc.model.dump()))
        }
    };
    if let (Some(path), Some(text)) = (dump, text) {
        write(path, &text)?;
    }
    print_json(&stats)?;
    Ok(Status::Ok)
}

#[derive(Debug, Serialize)]
#[serde(rename_all = "snake_case")]
enum SolveStatus {
    Feasible,
    Infeasible,
    Unknown,
}

#[derive(Debug, Serialize)]
struct SolveReport {
    status: SolveStatus,
    method: Method,
    #[serde(skip_serializing_if = "Option::is_none")]
    objective: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    optimal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    solution: Option<Solution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    iterations: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    nodes: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    screen: Option<Violation>,
    #[serde(skip_serializing_if = "Option::is_none")]
    reason: Option<String>,
}

impl SolveReport {
    fn new(status: SolveStatus, method: Method) -> Self {
        SolveReport {
            status,
            method,
            objective: None,
            optimal: None,
            solution: None,
            iterations: None,
            nodes: None,
            screen: None,
            reason: None,
        }
    }

    fn finish(self) -> Result<Status> {
        print_json(&self)?;
        Ok(match self.status {
            SolveStatus::Feasible => Status::Ok,
            _ => Status::Negative,
        })
    }
}

fn objective_of(inst: &Instance, sol: &Solution) -> u64 {
    match sol {
        Solution::Embedding(e) => e.total_vertices() as u64,
        Solution::Coloring(c) if matches!(inst, Instance::Kcoloring { .. } | Instance::Mincoloring { .. }) => {
            colors_used(c) as u64
        }
        Solution::Coloring(_) => 0,
    }
}

/// Initial point: the warm-start file if given, otherwise every variable at
/// its lower bound.
fn start_point(g: &Global, inst: &Instance, model: &Model, encode: impl Fn(&Solution) -> Option<Assignment>) -> Result<Assignment> {
    let Some(path) = &g.warm_start else {
        return Ok(model.lower_assignment());
    };
    match parse_warm_start(&read(path)?, inst.task()).with_context(|| format!("{}: bad warm start", path.display()))? {
        WarmStart::Values(values) => Ok(model.assignment_from_names(values.iter().map(|(k, v)| (k.as_str(), *v)))?),
        WarmStart::Solution(sol) => encode(&sol).ok_or_else(|| anyhow!("warm start does not match the instance type")),
    }
}

fn solve_fj(g: &Global, inst: &Instance, optimize: bool) -> Result<Status> {
    let cfg = fj_config(g)?;
    let mut report = SolveReport::new(SolveStatus::Unknown, Method::Fj);
    match inst {
        Instance::Embedding {
            problem,
            hardware,
            chain_limit,
        } => {
            let s_min = match zero_phase_screen(problem, hardware, *chain_limit) {
                ScreenResult::CertifiedInfeasible { violation } => {
                    report.status = SolveStatus::Infeasible;
                    report.screen = Some(violation);
                    return report.finish();
                }
                ScreenResult::Pass { s_min } => s_min,
            };
            let family = ChainFamily::enumerate(hardware, *chain_limit)?;
            let enc = match encode_embedding(problem, hardware, &family, &s_min, EncodeLimits::default()) {
                Ok(enc) => enc,
                Err(EncodeError::NoCandidates { vertex }) => {
                    report.status = SolveStatus::Infeasible;
                    report.reason = Some(format!("no admissible chain for problem vertex {vertex}"));
                    return report.finish();
                }
                Err(e) => return Err(e.into()),
            };
            let x0 = start_point(g, inst, &enc.model, |s| match s {
                Solution::Embedding(e) => Some(enc.encode_solution(e)),
                Solution::Coloring(_) => None,
            })?;
            let res = fj_search(&enc.model, &x0, &cfg);
            report.iterations = Some(res.iterations);
            if res.is_feasible() {
                let mut emb = enc.decode(&res.assignment)?;
                if optimize {
                    let p2 = Phase2Config {
                        seed: g.seed,
                        time_limit: cfg.time_limit,
                        ..Default::default()
                    };
                    emb = fj_phase2(problem, hardware, *chain_limit, &emb, &p2)
                        .map_err(|e| anyhow!("chain shrinking rejected its input: {e:?}"))?;
                }
                report.status = SolveStatus::Feasible;
                report.objective = Some(emb.total_vertices() as u64);
                report.solution = Some(Solution::Embedding(emb));
            }
        }
        Instance::Kcoloring { graph, .. } | Instance::Mincoloring { graph } => {
            let enc = match inst {
                // more colors than vertices are never needed
                Instance::Kcoloring { k, .. } => encode_kcoloring(graph, (*k).min(graph.n().max(1))),
                _ => encode_mincoloring(graph),
            };
            let x0 = start_point(g, inst, &enc.model, |s| match s {
                Solution::Coloring(c) => Some(enc.encode_solution(c)),
                Solution::Embedding(_) => None,
            })?;
            let res = fj_search(&enc.model, &x0, &cfg);
            report.iterations = Some(res.iterations);
            if res.is_feasible() {
                let sol = Solution::Coloring(enc.decode(&res.assignment)?);
                report.status = SolveStatus::Feasible;
                report.objective = Some(objective_of(inst, &sol));
                report.solution = Some(sol);
            }
        }
    }
    report.finish()
}

fn from_certificate<S>(inst: &Instance, cert: Certificate<S>, wrap: impl Fn(S) -> Solution) -> SolveReport {
    let mut report = SolveReport::new(SolveStatus::Unknown, Method::Exact);
    report.nodes = Some(cert.nodes);
    let optimal = cert.optimal;
    let solution = match cert.outcome {
        Outcome::Feasible { solution } => {
            report.status = SolveStatus::Feasible;
            Some(solution)
        }
        Outcome::Infeasible => {
            report.status = SolveStatus::Infeasible;
            None
        }
        Outcome::Unknown { incumbent } => {
            report.reason = Some("search budget exhausted".into());
            incumbent
        }
    };
    if let Some(s) = solution {
        let sol = wrap(s);
        report.objective = Some(objective_of(inst, &sol));
        report.optimal = Some(optimal);
        report.solution = Some(sol);
    }
    report
}

fn solve_exact(g: &Global, inst: &Instance, optimize: bool) -> Result<Status> {
    let budget = exact_budget(g)?;
    let report = match inst {
        Instance::Embedding {
            problem,
            hardware,
            chain_limit,
        } => {
            if let ScreenResult::CertifiedInfeasible { violation } = zero_phase_screen(problem, hardware, *chain_limit) {
                let mut r = SolveReport::new(SolveStatus::Infeasible, Method::Exact);
                r.screen = Some(violation);
                return r.finish();
            }
            from_certificate(
                inst,
                exact_embed(problem, hardware, *chain_limit, budget, optimize),
                Solution::Embedding,
            )
        }
        Instance::Kcoloring { graph, k } => from_certificate(inst, exact_color(graph, *k, budget), Solution::Coloring),
        Instance::Mincoloring { graph } => from_certificate(inst, min_color(graph, budget), Solution::Coloring),
    };
    report.finish()
}

#[derive(Serialize)]
struct EmbeddingCheck {
    valid: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    total_nodes: Option<usize>,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<EmbeddingViolation>,
}

#[derive(Serialize)]
struct ColoringCheck {
    valid: bool,
    colors_used: usize,
    error_ratio: f64,
    #[serde(skip_serializing_if = "Vec::is_empty")]
    violations: Vec<ColoringViolation>,
}

fn verify(g: &Global, instance: &Path, solution: &Path) -> Result<Status> {
    let inst = load_instance(g, instance)?;
    let sol = match parse_warm_start(&read(solution)?, inst.task())
        .with_context(|| format!("{}: no solution found", solution.display()))?
    {
        WarmStart::Solution(s) => s,
        WarmStart::Values(_) => bail!("{}: expected a solution, found model variable values", solution.display()),
    };
    let valid = match (&inst, &sol) {
        (
            Instance::Embedding {
                problem,
                hardware,
                chain_limit,
            },
            Solution::Embedding(e),
        ) => {
            let check = match verify_embedding(problem, hardware, *chain_limit, e) {
                Ok(()) => EmbeddingCheck {
                    valid: true,
                    total_nodes: Some(e.total_vertices()),
                    violations: Vec::new(),
                },
                Err(violations) => EmbeddingCheck {
                    valid: false,
                    total_nodes: None,
                    violations,
                },
            };
            print_json(&check)?;
            check.valid
        }
        (Instance::Kcoloring { graph, .. } | Instance::Mincoloring { graph }, Solution::Coloring(c)) => {
            let k = match &inst {
                Instance::Kcoloring { k, .. } => Some(*k),
                _ => None,
            };
            let report = verify_coloring(graph, k, c);
            let check = ColoringCheck {
                valid: report.is_valid(),
                colors_used: colors_used(c),
                error_ratio: report.error_ratio,
                violations: report.violations,
            };
            print_json(&check)?;
            check.valid
        }
        _ => bail!("solution type does not match a {} instance", inst.task().as_str()),
    };
    Ok(if valid { Status::Ok } else { Status::Negative })
}

fn select(g: &Global, instance: &Path, files: &[std::path::PathBuf]) -> Result<Status> {
    let inst = load_instance(g, instance)?;
    let files = match g.n_candidates {
        Some(n) if n > files.len() => bail!("--n-candidates {n} but only {} files given", files.len()),
        Some(0) => bail!("--n-candidates must be positive"),
        Some(n) => &files[..n],
        None => files,
    };
    let candidates = files
        .iter()
        .map(|f| Ok(parse_candidate(&read(f)?, inst.task())))
        .collect::<Result<Vec<_>>>()?;
    print_json(&best_of_n(&candidates, &inst)?)?;
    Ok(Status::Ok)
}

fn label_budget(g: &Global) -> Result<LabelBudget> {
    let limit = time_limit(g)?;
    let mut budget = LabelBudget::default();
    budget.exact.time_limit = limit;
    budget.fj_time_limit = limit;
    budget.phase2.time_limit = limit;
    if let Some(it) = g.iters {
        budget.fj_iterations = it;
    }
    Ok(budget)
}

#[derive(Serialize)]
struct GenerateSummary<'a> {
    records: usize,
    draws: u64,
    dropped: u64,
    rejected: u64,
    out: &'a Path,
}

fn dataset(g: &Global, cmd: &DatasetCommand) -> Result<Status> {
    match cmd {
        DatasetCommand::Generate {
            task,
            count,
            balance,
            max_draws,
            out,
        } => {
            let mut cfg = GenerateConfig::new(*task, *count, g.seed);
            cfg.sample = SampleOptions {
                scale: scale(g),
                chain_limit: g.chain_limit.unwrap_or(3),
                k: g.k.unwrap_or(3),
            };
            cfg.budget = label_budget(g)?;
            cfg.balance = *balance;
            if let Some(m) = max_draws {
                cfg.max_draws = *m;
            }
            cfg.jobs = g.jobs;
            let report = generate_dataset(&cfg)?;
            let mut lines = String::new();
            for r in &report.records {
                lines.push_str(&serde_json::to_string(r)?);
                lines.push('\n');
            }
            match out {
                Some(path) => {
                    write(path, &lines)?;
                    print_json(&GenerateSummary {
                        records: report.records.len(),
                        draws: report.draws,
                        dropped: report.dropped,
                        rejected: report.rejected,
                        out: path,
                    })?;
                }
                None => {
                    print!("{lines}");
                    eprintln!(
                        "{} records, {} draws, {} dropped, {} rejected",
                        report.records.len(),
                        report.draws,
                        report.dropped,
                        report.rejected
                    );
                }
            }
            Ok(if report.records.len() < *count {
                eprintln!("draw limit reached before {count} records");
                Status::Negative
            } else {
                Status::Ok
            })
        }
        DatasetCommand::Label { instances } => {
            let budget = label_budget(g)?;
            let mut all_resolved = true;
            for (i, path) in instances.iter().enumerate() {
                let inst = load_instance(g, path)?;
                let label = label_instance(&inst, &budget, derive_seed(g.seed, i as u64));
                all_resolved &= !label.is_dropped();
                print_json(&label)?;
            }
            Ok(if all_resolved { Status::Ok } else { Status::Negative })
        }
        DatasetCommand::Render { instance, label } => {
            let inst = load_instance(g, instance)?;
            let label: Label = serde_json::from_str(&read(label)?).context("malformed label")?;
            match render_record(&inst, &label, None, None) {
                Some(rec) => {
                    print_json(&rec)?;
                    Ok(Status::Ok)
                }
                None => {
                    eprintln!("dropped labels are not rendered");
                    Ok(Status::Negative)
                }
            }
        }
        DatasetCommand::Stats { records } => {
            let text = read(records)?;
            let recs = text
                .lines()
                .enumerate()
                .filter(|(_, l)| !l.trim().is_empty())
                .map(|(i, l)| serde_json::from_str::<Record>(l).with_context(|| format!("line {}", i + 1)))
                .collect::<Result<Vec<_>>>()?;
            print_json(&dataset_stats(&recs))?;
            Ok(Status::Ok)
        }
    }
}
