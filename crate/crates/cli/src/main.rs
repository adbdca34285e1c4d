use std::fs;
use std::io::{self, Read, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::{Duration, Instant};

use bordermin::bmp::{solve_bmp_budget_with, solve_bmp_oracle_with, solve_bmp_template_with, BudgetCase};
use bordermin::pbmp::{solve_pbmp_budget_with, solve_pbmp_with};
use bordermin::reductions::{
    build_separator, make_ab_grid, reduce_kbp_to_bmp, reduce_pbmp_to_bmp, FreshChars, GridGraph, ReductionMode,
    SeparatorSpec,
};
use bordermin::{compute_bl, derive_masks, CostMethod, Alphabet, Instance, Probe, SearchStats, Solution, Solved, SolverConfig};
use bordermin_cli::{parse_instance, parse_solution, verify, write_instance, write_solution, FormatError, InstanceFile};
use clap::{Parser, Subcommand, ValueEnum};
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

const NODE_BUDGET_VAR: &str = "BORDERMIN_NODE_BUDGET";

#[derive(Parser)]
#[command(name = "bordermin", version, about = "Exact solvers for exhaustive border minimization")]
struct Cli {
    /// Print machine-readable JSON instead of text.
    #[arg(long, global = true)]
    json: bool,
    /// Worker threads for the solvers (default: one per core).
    #[arg(long, global = true)]
    threads: Option<usize>,
    /// Also print the masks of the returned solution.
    #[arg(long, global = true)]
    dump_masks: bool,
    /// Also print search node and branch counts. These may vary between runs
    /// with more than one thread.
    #[arg(long, global = true)]
    stats: bool,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Best deposition sequence for the file's placement (identity if none).
    SolvePbmp {
        /// Instance file, `-` for stdin.
        file: PathBuf,
        /// Only accept solutions of border length at most this; defaults to
        /// the file's budget line.
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Best placement and deposition sequence.
    SolveBmp {
        file: PathBuf,
        #[arg(long)]
        budget: Option<u64>,
        /// Defaults to case-split with a budget, template without.
        #[arg(long, value_enum)]
        algo: Option<Algo>,
        /// Largest cell count the oracle accepts.
        #[arg(long)]
        oracle_cap: Option<usize>,
    },
    /// Recompute a solution's border length.
    Verify { file: PathBuf, solution: PathBuf },
    /// Write a generated instance file to stdout.
    Gen {
        #[arg(long, global = true, default_value_t = 0)]
        seed: u64,
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run every applicable solver on each `*.bmpe` file of a directory.
    Bench {
        dir: PathBuf,
        /// Per-solver time limit in seconds.
        #[arg(long, default_value_t = 10.0)]
        timeout: f64,
    },
}

#[derive(Subcommand)]
enum GenKind {
    /// Uniformly random probes.
    Random {
        rows: usize,
        cols: usize,
        #[arg(long, default_value = "ACGT")]
        alphabet: String,
        #[arg(long, default_value_t = 3)]
        max_len: usize,
        /// Draw the cells from this many random distinct probes.
        #[arg(long)]
        pool: Option<usize>,
        #[arg(long)]
        budget: Option<u64>,
    },
    /// The a/b grid gadget with its canonical placement.
    AbGrid {
        rows: usize,
        cols: usize,
        #[arg(long, default_value_t = 1)]
        t: usize,
        /// Separator run length; defaults to the value that keeps the
        /// separator unsplit.
        #[arg(long)]
        u: Option<u64>,
    },
    /// Single-character instance encoding balanced k-partition of the grid.
    Kbp {
        rows: usize,
        cols: usize,
        #[arg(long)]
        k: usize,
    },
    /// Encode a fixed-placement instance as a full instance.
    Pbmp2bmp {
        file: PathBuf,
        /// Use the exact constants; fails for all but trivial inputs.
        #[arg(long, conflicts_with_all = ["t", "u1", "u2"])]
        paper_faithful: bool,
        #[arg(long, default_value_t = 1)]
        t: u64,
        #[arg(long, default_value_t = 1)]
        u1: u64,
        #[arg(long, default_value_t = 1)]
        u2: u64,
    },
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Algo {
    Oracle,
    Template,
    CaseSplit,
}

#[derive(Debug, thiserror::Error)]
enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: io::Error },
    #[error(transparent)]
    Format(#[from] FormatError),
    #[error(transparent)]
    Solver(#[from] bordermin::Error),
    #[error("{0}")]
    Usage(String),
}

impl CliError {
    fn exit_code(&self) -> u8 {
        match self {
            CliError::Solver(bordermin::Error::InstanceTooLarge(_))
            | CliError::Format(FormatError::Instance(bordermin::Error::InstanceTooLarge(_))) => 3,
            _ => 2,
        }
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Text for stdout and the process exit code.
struct Outcome {
    output: String,
    code: u8,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    if let Some(n) = cli.threads {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(n).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(out) => {
            // A closed pipe (e.g. `| head`) is not an error worth reporting.
            let _ = io::stdout().write_all(out.output.as_bytes());
            ExitCode::from(out.code)
        }
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}

fn run(cli: &Cli) -> Result<Outcome> {
    let config = solver_config()?;
    match &cli.command {
        Command::SolvePbmp { file, budget } => {
            let f = read_instance(file)?;
            let budget = budget.or(f.budget());
            let report = solve_pbmp_report(&f, budget, &config)?;
            Ok(render_solve(cli, &f.instance, report))
        }
        Command::SolveBmp { file, budget, algo, oracle_cap } => {
            let f = read_instance(file)?;
            let budget = budget.or(f.budget());
            let algo = algo.unwrap_or(if budget.is_some() { Algo::CaseSplit } else { Algo::Template });
            let mut config = config;
            if let Some(cap) = oracle_cap {
                config = config.with_oracle_cell_cap(*cap);
            }
            let report = solve_bmp_report(&f.instance, budget, algo, &config)?;
            Ok(render_solve(cli, &f.instance, report))
        }
        Command::Verify { file, solution } => {
            let f = read_instance(file)?;
            let claim = parse_solution(&read_text(solution)?)?;
            let report = verify(&f.instance, &claim);
            let output = if cli.json { to_json(&report) } else { report.render() };
            Ok(Outcome { output, code: if report.pass { 0 } else { 1 } })
        }
        Command::Gen { seed, kind } => {
            let (file, comment) = generate(kind, *seed)?;
            let mut output = comment.map(|c| format!("# {c}\n")).unwrap_or_default();
            output.push_str(&write_instance(&file));
            Ok(Outcome { output, code: 0 })
        }
        Command::Bench { dir, timeout } => bench(cli, dir, *timeout, &config),
    }
}

fn solver_config() -> Result<SolverConfig> {
    let config = SolverConfig::default();
    match std::env::var(NODE_BUDGET_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map(|n| config.with_node_budget(n))
            .map_err(|_| CliError::Usage(format!("{NODE_BUDGET_VAR} must be a non-negative integer, got {v:?}"))),
        Err(_) => Ok(config),
    }
}

fn read_text(path: &Path) -> Result<String> {
    let io_err = |source| CliError::Io { path: path.display().to_string(), source };
    if path.as_os_str() == "-" {
        let mut s = String::new();
        io::stdin().read_to_string(&mut s).map_err(io_err)?;
        Ok(s)
    } else {
        fs::read_to_string(path).map_err(io_err)
    }
}

fn read_instance(path: &Path) -> Result<InstanceFile> {
    Ok(parse_instance(&read_text(path)?)?)
}

fn to_json<T: Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report serializes");
    s.push('\n');
    s
}

#[derive(Clone, Debug, Serialize)]
struct StatsReport {
    nodes: u64,
    branches: u64,
}

impl From<SearchStats> for StatsReport {
    fn from(s: SearchStats) -> Self {
        StatsReport { nodes: s.nodes, branches: s.branches }
    }
}

#[derive(Clone, Debug, Serialize)]
struct TemplateReport {
    /// Template columns, top to bottom, as probe strings.
    columns: Vec<Vec<String>>,
    multiplicities: Vec<usize>,
}

#[derive(Clone, Debug, Serialize)]
struct SolveReport {
    problem: &'static str,
    algorithm: &'static str,
    budget: Option<u64>,
    /// `solved` or `infeasible`.
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    case: Option<&'static str>,
    #[serde(skip_serializing_if = "Option::is_none")]
    border_length: Option<u64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    deposition: Option<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    placement: Option<Vec<Vec<usize>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    template: Option<TemplateReport>,
    #[serde(skip_serializing_if = "Option::is_none")]
    masks: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing)]
    solution: Option<Solution>,
    #[serde(skip_serializing_if = "Option::is_none")]
    stats: Option<StatsReport>,
    #[serde(skip_serializing)]
    raw_stats: SearchStats,
}

impl SolveReport {
    fn new(problem: &'static str, algorithm: &'static str, budget: Option<u64>, stats: SearchStats) -> Self {
        SolveReport {
            problem,
            algorithm,
            budget,
            status: "infeasible",
            case: None,
            border_length: None,
            deposition: None,
            placement: None,
            template: None,
            masks: None,
            solution: None,
            stats: None,
            raw_stats: stats,
        }
    }

    /// Records `solution` unless it exceeds the budget.
    fn with_solution(mut self, instance: &Instance, solution: Option<Solution>) -> Self {
        let solution = solution.filter(|s| self.budget.is_none_or(|o| s.border_length <= o));
        if let Some(s) = &solution {
            self.status = "solved";
            self.border_length = Some(s.border_length);
            self.deposition = Some(s.deposition.to_string_in(instance.alphabet()));
            self.placement = Some(s.placement.rows_iter().map(|r| r.to_vec()).collect());
        }
        self.solution = solution;
        self
    }
}

fn case_name(case: BudgetCase) -> &'static str {
    match case {
        BudgetCase::Precheck => "precheck",
        BudgetCase::BothLarge => "both-large",
        BudgetCase::OneLarge { transposed: false } => "one-large",
        BudgetCase::OneLarge { transposed: true } => "one-large-transposed",
        BudgetCase::BothSmall => "both-small",
    }
}

fn solve_pbmp_report(f: &InstanceFile, budget: Option<u64>, config: &SolverConfig) -> Result<SolveReport> {
    let placement = f.placement_or_identity();
    let inst = &f.instance;
    Ok(match budget {
        Some(o) => {
            let Solved { value, stats } = solve_pbmp_budget_with(inst, &placement, o, config)?;
            SolveReport::new("pbmp", "budget", budget, stats).with_solution(inst, value)
        }
        None => {
            let Solved { value, stats } = solve_pbmp_with(inst, &placement, config)?;
            SolveReport::new("pbmp", "search", None, stats).with_solution(inst, Some(value))
        }
    })
}

fn solve_bmp_report(inst: &Instance, budget: Option<u64>, algo: Algo, config: &SolverConfig) -> Result<SolveReport> {
    Ok(match algo {
        Algo::Oracle => {
            let Solved { value, stats } = solve_bmp_oracle_with(inst, config)?;
            SolveReport::new("bmp", "oracle", budget, stats).with_solution(inst, Some(value))
        }
        Algo::Template => {
            let Solved { value, stats } = solve_bmp_template_with(inst, config)?;
            let distinct = inst.distinct_probes();
            let template = TemplateReport {
                columns: value
                    .template
                    .columns
                    .iter()
                    .map(|c| c.classes().iter().map(|&k| distinct[k].to_string_in(inst.alphabet())).collect())
                    .collect(),
                multiplicities: value.multiplicities.counts.clone(),
            };
            let mut r = SolveReport::new("bmp", "template", budget, stats).with_solution(inst, Some(value.solution));
            if r.solution.is_some() {
                r.template = Some(template);
            }
            r
        }
        Algo::CaseSplit => {
            let o = budget.ok_or_else(|| CliError::Usage("--algo case-split needs a budget".into()))?;
            let Solved { value, stats } = solve_bmp_budget_with(inst, o, config)?;
            let mut r = SolveReport::new("bmp", "case-split", budget, stats).with_solution(inst, value.solution);
            r.case = Some(case_name(value.case));
            r
        }
    })
}

fn render_solve(cli: &Cli, instance: &Instance, mut report: SolveReport) -> Outcome {
    let masks = match (&report.solution, cli.dump_masks) {
        (Some(s), true) => Some(
            derive_masks(instance, &s.placement, &s.deposition)
                .expect("solver output is consistent")
                .iter()
                .map(|m| m.render(instance.alphabet()).lines().map(str::to_string).collect())
                .collect::<Vec<Vec<String>>>(),
        ),
        _ => None,
    };
    if cli.stats {
        report.stats = Some(report.raw_stats.into());
    }
    let code = if report.solution.is_some() { 0 } else { 1 };
    if cli.json {
        report.masks = masks;
        return Outcome { output: to_json(&report), code };
    }
    let mut out = format!("# {} via {}", report.problem, report.algorithm);
    if let Some(case) = report.case {
        out.push_str(&format!(" ({case})"));
    }
    out.push('\n');
    match &report.solution {
        Some(s) => {
            if let Some(t) = &report.template {
                for (col, h) in t.columns.iter().zip(&t.multiplicities) {
                    out.push_str(&format!("# template column {} x{h}\n", col.join(" ")));
                }
            }
            out.push_str(&write_solution(instance, s));
        }
        None => out.push_str(&format!(
            "infeasible: no solution with border length at most {}\n",
            report.budget.unwrap_or_default()
        )),
    }
    for (k, mask) in masks.iter().flatten().enumerate() {
        out.push_str(&format!("# mask {}\n", k + 1));
        for line in mask {
            out.push_str(&format!("#   {line}\n"));
        }
    }
    if let Some(s) = &report.stats {
        out.push_str(&format!("# nodes {} branches {}\n", s.nodes, s.branches));
    }
    Outcome { output: out, code }
}

fn random_probe(rng: &mut ChaCha8Rng, chars: &[char], max_len: usize) -> String {
    let len = rng.gen_range(1..=max_len);
    (0..len).map(|_| *chars.choose(rng).expect("alphabet is non-empty")).collect()
}

fn generate(kind: &GenKind, seed: u64) -> Result<(InstanceFile, Option<String>)> {
    match kind {
        GenKind::Random { rows, cols, alphabet, max_len, pool, budget } => {
            if *max_len == 0 {
                return Err(CliError::Usage("--max-len must be at least 1".into()));
            }
            if *pool == Some(0) {
                return Err(CliError::Usage("--pool must be at least 1".into()));
            }
            let alphabet = Alphabet::new(alphabet.chars())?;
            let chars = alphabet.chars().to_vec();
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let cells = rows * cols;
            let texts: Vec<String> = match pool {
                Some(p) => {
                    let pool: Vec<String> = (0..*p).map(|_| random_probe(&mut rng, &chars, *max_len)).collect();
                    (0..cells).map(|_| pool.choose(&mut rng).expect("pool is non-empty").clone()).collect()
                }
                None => (0..cells).map(|_| random_probe(&mut rng, &chars, *max_len)).collect(),
            };
            let probes = texts.iter().map(|t| Probe::parse(&alphabet, t)).collect::<bordermin::Result<Vec<_>>>()?;
            let instance = Instance::new(alphabet, probes, *rows, *cols)?.with_budget(*budget);
            Ok((InstanceFile { instance, placement: None }, Some(format!("random seed {seed}"))))
        }
        GenKind::AbGrid { rows, cols, t, u } => {
            let u = u.unwrap_or_else(|| SeparatorSpec::faithful_u(rows * t, cols * t));
            let sep = build_separator(&SeparatorSpec::new('x', 'y', u, *rows, *cols)?)?;
            let g = make_ab_grid(*rows, *cols, *t, &sep)?;
            let comment = format!("ab-grid t={t} u={u}; canonical border length {}", compute_bl(&g.instance, &g.placement, &g.deposition, CostMethod::Fast)?);
            Ok((InstanceFile { instance: g.instance, placement: Some(g.placement) }, Some(comment)))
        }
        GenKind::Kbp { rows, cols, k } => {
            let instance = reduce_kbp_to_bmp(GridGraph::new(*rows, *cols)?, *k)?;
            Ok((InstanceFile { instance, placement: None }, Some(format!("balanced {k}-partition of the {rows}x{cols} grid"))))
        }
        GenKind::Pbmp2bmp { file, paper_faithful, t, u1, u2 } => {
            let f = read_instance(file)?;
            let mode = if *paper_faithful {
                ReductionMode::PaperFaithful
            } else {
                ReductionMode::DeskScale { t: *t, u1: *u1, u2: *u2 }
            };
            let fresh = FreshChars::avoiding(f.instance.alphabet())?;
            let red = reduce_pbmp_to_bmp(&f.instance, &f.placement_or_identity(), mode, fresh)?;
            let c = red.constants;
            let comment = format!(
                "reduced with t={} u1={} u2={}; placement forcing {}",
                c.t,
                c.u1,
                c.u2,
                if red.guaranteed { "guaranteed" } else { "not guaranteed" }
            );
            let instance = red.instance.with_budget(None);
            Ok((InstanceFile { instance, placement: Some(red.placement) }, Some(comment)))
        }
    }
}

#[derive(Clone, Debug, Serialize)]
struct BenchRow {
    file: String,
    cells: usize,
    distinct: usize,
    solver: &'static str,
    /// `solved`, `infeasible`, `too_large` or `error`.
    status: &'static str,
    border_length: Option<u64>,
    millis: f64,
    nodes: Option<u64>,
    branches: Option<u64>,
    detail: Option<String>,
}

type BenchRun<'a> = Box<dyn Fn(&SolverConfig) -> Result<SolveReport> + 'a>;

fn bench(cli: &Cli, dir: &Path, timeout: f64, config: &SolverConfig) -> Result<Outcome> {
    if !(timeout.is_finite() && timeout > 0.0) {
        return Err(CliError::Usage("--timeout must be a positive number of seconds".into()));
    }
    let io_err = |source| CliError::Io { path: dir.display().to_string(), source };
    let mut files: Vec<PathBuf> = fs::read_dir(dir)
        .map_err(io_err)?
        .filter_map(|e| e.ok().map(|e| e.path()))
        .filter(|p| p.extension().is_some_and(|x| x == "bmpe"))
        .collect();
    files.sort();

    let mut rows = Vec::new();
    for path in &files {
        let name = path.file_name().map_or_else(String::new, |n| n.to_string_lossy().into_owned());
        let file = read_instance(path)?;
        let f = &file;
        let inst = &f.instance;
        let mut solvers: Vec<(&'static str, BenchRun<'_>)> = vec![
            ("pbmp", Box::new(move |c| solve_pbmp_report(f, None, c))),
            ("bmp-template", Box::new(move |c| solve_bmp_report(inst, None, Algo::Template, c))),
            ("bmp-oracle", Box::new(move |c| solve_bmp_report(inst, None, Algo::Oracle, c))),
        ];
        if let Some(o) = f.budget() {
            solvers.push(("pbmp-budget", Box::new(move |c| solve_pbmp_report(f, Some(o), c))));
            solvers.push(("bmp-case-split", Box::new(move |c| solve_bmp_report(inst, Some(o), Algo::CaseSplit, c))));
        }
        for (solver, run) in solvers {
            let config = config.clone().with_deadline(Some(Instant::now() + Duration::from_secs_f64(timeout)));
            let start = Instant::now();
            let result = run(&config);
            let millis = start.elapsed().as_secs_f64() * 1e3;
            let mut row = BenchRow {
                file: name.clone(),
                cells: inst.cell_count(),
                distinct: inst.distinct_count(),
                solver,
                status: "error",
                border_length: None,
                millis,
                nodes: None,
                branches: None,
                detail: None,
            };
            match result {
                Ok(r) => {
                    row.status = r.status;
                    row.border_length = r.border_length;
                    row.nodes = Some(r.raw_stats.nodes);
                    row.branches = Some(r.raw_stats.branches);
                    row.detail = r.case.map(str::to_string);
                }
                Err(e) => {
                    if e.exit_code() == 3 {
                        row.status = "too_large";
                    }
                    row.detail = Some(e.to_string());
                }
            }
            rows.push(row);
        }
    }
    if cli.json {
        return Ok(Outcome { output: to_json(&rows), code: 0 });
    }
    let mut out = format!(
        "{:<24} {:>5} {:>5} {:<15} {:<10} {:>6} {:>10} {:>12} {:>10}\n",
        "file", "cells", "kinds", "solver", "status", "bl", "ms", "nodes", "branches"
    );
    let show = |v: Option<u64>| v.map_or("-".to_string(), |x| x.to_string());
    for r in &rows {
        out.push_str(&format!(
            "{:<24} {:>5} {:>5} {:<15} {:<10} {:>6} {:>10.2} {:>12} {:>10}\n",
            r.file,
            r.cells,
            r.distinct,
            r.solver,
            r.status,
            show(r.border_length),
            r.millis,
            show(r.nodes),
            show(r.branches)
        ));
    }
    Ok(Outcome { output: out, code: 0 })
}
