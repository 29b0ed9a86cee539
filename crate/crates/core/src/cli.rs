//! The `pcml` command line. [`run`] turns an argument vector into a
//! [`Report`] of `KEY=VALUE` lines and an exit status.

use std::path::Path;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand};
use num_bigint::BigInt;
use thiserror::Error;

use crate::centralizer::derived_centralizer;
use crate::equivalence::{
    compaction_witness, default_merge_pair, distinguish_cycles, eval_theta, lambda_zero, search_theta_witness, PhiHom,
    SearchMode, ThetaInstance, Verdict,
};
use crate::graph::Graph;
use crate::lie::{Algebra, GeneratorOrder, LieElement, Multidegree};
use crate::oracle::certify_basis;
use crate::poly::AssocPoly;
use crate::suite;

pub const DEGREE_BOUND_VAR: &str = "PCML_DEGREE_BOUND";
pub const DEFAULT_DEGREE_BOUND: u32 = 6;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Report {
    pub lines: Vec<String>,
    pub exit_code: i32,
}

impl Report {
    pub fn text(&self) -> String {
        let mut s = self.lines.join("\n");
        s.push('\n');
        s
    }
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Verification(String),
}

fn usage<E: std::fmt::Display>(e: E) -> CliError {
    CliError::Usage(e.to_string())
}

#[derive(Debug, Parser)]
#[command(
    name = "pcml",
    about = "Exact computation in partially commutative metabelian Lie algebras"
)]
struct Cli {
    /// Seed for randomized checks; printed in every report.
    #[arg(long, global = true, default_value_t = suite::DEFAULT_SEED)]
    seed: u64,
    /// Also write the report to this file.
    #[arg(long, global = true)]
    output: Option<String>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct AlgebraArgs {
    /// `cycle:<n>`, `complete:<n>`, `path:<n>`, `empty:<n>`, `figure1`,
    /// inline JSON, or a path to a JSON file.
    #[arg(long)]
    graph: String,
    /// Generator order, least first, e.g. `2,0,1`.
    #[arg(long)]
    order: Option<String>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Normal form of an element.
    Nf {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        element: String,
    },
    /// Left-normed bracket of two or more elements.
    Bracket {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long = "element", required = true, num_args = 1)]
        elements: Vec<String>,
    },
    /// Action `u.f` of a polynomial on a derived element.
    Act {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        element: String,
        #[arg(long)]
        poly: String,
    },
    /// Basis count against the oracle dimension at one multidegree.
    Dim {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        mdeg: String,
    },
    /// Basis certification for every multidegree up to a total degree.
    Certify {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Derived centralizer of a linear element up to a degree bound.
    Centralizer {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        element: String,
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Evaluates the cycle sentence on an assignment, or searches for one.
    Theta(ThetaArgs),
    /// Compaction witness for a finite set, or a sentence witness search.
    Witness(WitnessArgs),
    /// Alias of `witness --graph G --gamma FILE`.
    GammaWitness(GammaArgs),
    /// Separates two cycle algebras.
    Distinguish {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        m: usize,
    },
    /// Collapses vertices with equal closed neighbourhoods.
    Compact {
        #[arg(long)]
        graph: String,
    },
    /// Classes of vertices with equal closed neighbourhoods.
    Perp {
        #[arg(long)]
        graph: String,
    },
    /// Image of an element under a merging map.
    Phi {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        element: String,
        /// `removed:kept`.
        #[arg(long)]
        merge: Option<String>,
        #[arg(long, default_value_t = 1)]
        lambda: u64,
    },
    /// Least safe `λ` for an element and a merging map.
    Lambda0 {
        #[command(flatten)]
        alg: AlgebraArgs,
        #[arg(long)]
        element: String,
        #[arg(long)]
        merge: Option<String>,
    },
    /// Runs the acceptance criteria.
    Suite {
        /// Run a single criterion (1 to 7).
        #[arg(long)]
        criterion: Option<usize>,
        /// Keep going after a failure.
        #[arg(long)]
        keep_going: bool,
    },
}

#[derive(Debug, Args)]
struct ThetaArgs {
    /// Length of the cycle the values live in.
    #[arg(long)]
    n: usize,
    /// Number of variables.
    #[arg(long)]
    m: usize,
    /// Comma-separated values for the variables.
    #[arg(long)]
    assign: Option<String>,
    /// `generators` or `sequences`.
    #[arg(long, default_value = "generators")]
    mode: String,
}

#[derive(Debug, Args)]
struct GammaArgs {
    #[arg(long)]
    graph: String,
    /// File with one element per line.
    #[arg(long)]
    gamma: String,
    #[arg(long)]
    merge: Option<String>,
}

#[derive(Debug, Args)]
struct WitnessArgs {
    #[arg(long)]
    graph: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    merge: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    #[arg(long)]
    m: Option<usize>,
    #[arg(long, default_value = "generators")]
    mode: String,
}

/// Parses `argv` (program name first) and runs the subcommand.
pub fn run<I, T>(argv: I) -> Report
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            return Report {
                lines: e.render().to_string().lines().map(str::to_string).collect(),
                exit_code: code,
            };
        }
    };
    let mut lines = vec![format!("SEED={}", cli.seed)];
    let exit_code = match dispatch(&cli, &mut lines) {
        Ok(code) => code,
        Err(CliError::Usage(m)) => {
            lines.push(format!("ERROR={m}"));
            EXIT_USAGE
        }
        Err(CliError::Verification(m)) => {
            lines.push(format!("VERIFICATION_FAILED={m}"));
            EXIT_VERIFICATION
        }
    };
    let report = Report { lines, exit_code };
    if let Some(path) = &cli.output {
        if let Err(e) = std::fs::write(path, report.text()) {
            let mut r = report;
            r.lines.push(format!("ERROR=cannot write {path}: {e}"));
            r.exit_code = EXIT_USAGE;
            return r;
        }
    }
    report
}

/// Reads a graph argument: a named constructor, inline JSON or a file.
pub fn load_graph(spec: &str) -> Result<Graph, String> {
    let spec = spec.trim();
    if matches!(spec, "figure1" | "fig1") {
        return Ok(Graph::figure_one());
    }
    if !spec.starts_with('{') && Path::new(spec).is_file() {
        let text = std::fs::read_to_string(spec).map_err(|e| format!("cannot read {spec}: {e}"))?;
        return Graph::from_json(&text).map_err(|e| e.to_string());
    }
    Graph::from_spec(spec).map_err(|e| e.to_string())
}

fn parse_list(text: &str) -> Result<Vec<usize>, CliError> {
    text.split(',')
        .map(|t| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| usage(format!("bad index '{t}' in '{text}'")))
        })
        .collect()
}

fn degree_bound(flag: Option<u32>) -> Result<u32, CliError> {
    if let Some(d) = flag {
        return Ok(d);
    }
    match std::env::var(DEGREE_BOUND_VAR) {
        Ok(v) => v
            .trim()
            .parse()
            .map_err(|_| usage(format!("{DEGREE_BOUND_VAR}='{v}' is not a degree"))),
        Err(_) => Ok(DEFAULT_DEGREE_BOUND),
    }
}

fn algebra(args: &AlgebraArgs) -> Result<Arc<Algebra>, CliError> {
    let graph = load_graph(&args.graph).map_err(CliError::Usage)?;
    match &args.order {
        None => Ok(Algebra::new(graph)),
        Some(o) => {
            let order = GeneratorOrder::from_sequence(parse_list(o)?).map_err(usage)?;
            Algebra::with_order(graph, order).map_err(usage)
        }
    }
}

/// `r:k`, or the default pair of the graph.
fn merge_pair(graph: &Graph, merge: Option<&str>) -> Result<(usize, usize), CliError> {
    match merge {
        Some(text) => {
            let (r, k) = text
                .split_once(':')
                .ok_or_else(|| usage(format!("--merge expects removed:kept, got '{text}'")))?;
            let parse = |s: &str| {
                s.trim()
                    .parse::<usize>()
                    .map_err(|_| usage(format!("bad vertex '{s}'")))
            };
            Ok((parse(r)?, parse(k)?))
        }
        None => default_merge_pair(graph).ok_or_else(|| usage("no two vertices have equal closed neighbourhoods")),
    }
}

/// Splits at commas outside brackets and parentheses.
fn split_top_level(text: &str) -> Vec<&str> {
    let mut out = Vec::new();
    let mut depth = 0i32;
    let mut start = 0;
    for (i, c) in text.char_indices() {
        match c {
            '[' | '(' => depth += 1,
            ']' | ')' => depth -= 1,
            ',' if depth == 0 => {
                out.push(&text[start..i]);
                start = i + 1;
            }
            _ => {}
        }
    }
    out.push(&text[start..]);
    out
}

fn search_mode(text: &str) -> Result<SearchMode, CliError> {
    match text {
        "generators" => Ok(SearchMode::GeneratorAssignments),
        "sequences" => Ok(SearchMode::JSequences),
        _ => Err(usage(format!(
            "unknown search mode '{text}'; use generators or sequences"
        ))),
    }
}

fn join<T: ToString>(items: impl IntoIterator<Item = T>) -> String {
    items.into_iter().map(|x| x.to_string()).collect::<Vec<_>>().join(",")
}

fn dispatch(cli: &Cli, out: &mut Vec<String>) -> Result<i32, CliError> {
    match &cli.command {
        Command::Nf { alg, element } => {
            let alg = algebra(alg)?;
            let e = alg.parse_element(element).map_err(usage)?;
            out.push(format!("RESULT={e}"));
            out.push(format!("TERMS={}", e.term_count()));
        }
        Command::Bracket { alg, elements } => {
            let alg = algebra(alg)?;
            if elements.len() < 2 {
                return Err(usage("bracket needs at least two --element values"));
            }
            let parsed = elements
                .iter()
                .map(|t| alg.parse_element(t))
                .collect::<Result<Vec<_>, _>>()
                .map_err(usage)?;
            let mut acc = parsed[0].clone();
            for e in &parsed[1..] {
                acc = acc.bracket(e).map_err(usage)?;
            }
            out.push(format!("RESULT={acc}"));
        }
        Command::Act { alg, element, poly } => {
            let alg = algebra(alg)?;
            let u = alg.parse_element(element).map_err(usage)?;
            let f = AssocPoly::parse(poly).map_err(usage)?;
            out.push(format!("RESULT={}", u.act(&f).map_err(usage)?));
        }
        Command::Dim { alg, mdeg } => {
            let alg = algebra(alg)?;
            let counts: Vec<u32> = parse_list(mdeg)?.into_iter().map(|c| c as u32).collect();
            if counts.len() != alg.generator_count() {
                return Err(usage(format!(
                    "multidegree has {} entries for {} generators",
                    counts.len(),
                    alg.generator_count()
                )));
            }
            let r = certify_basis(alg.graph(), &Multidegree::new(counts), alg.order());
            out.push(r.line());
            if !r.ok() {
                return Ok(EXIT_VERIFICATION);
            }
        }
        Command::Certify { alg, degree } => {
            let alg = algebra(alg)?;
            let d = degree_bound(*degree)?;
            let n = alg.generator_count();
            let mut failed = 0;
            let mut total = 0;
            for t in 1..=d {
                for delta in Multidegree::all_of_total(n, t) {
                    let r = certify_basis(alg.graph(), &delta, alg.order());
                    failed += usize::from(!r.ok());
                    total += 1;
                    out.push(r.line());
                }
            }
            out.push(format!("CERTIFIED={} FAILED={failed}", total - failed));
            if failed > 0 {
                return Ok(EXIT_VERIFICATION);
            }
        }
        Command::Centralizer { alg, element, degree } => {
            let alg = algebra(alg)?;
            let d = degree_bound(*degree)?;
            let g = alg.parse_element(element).map_err(usage)?;
            let slice = derived_centralizer(&g, d).map_err(usage)?;
            out.push(format!("DEGREE_BOUND={d} DIMENSION={}", slice.dimension()));
            for (delta, k) in slice.counts_by_multidegree() {
                out.push(format!("MDEG={delta} COUNT={k}"));
            }
            for b in &slice.basis {
                out.push(format!("BASIS={b}"));
            }
        }
        Command::Theta(args) => theta(args, out)?,
        Command::Witness(args) => match (&args.graph, &args.gamma, args.n, args.m) {
            (Some(graph), Some(gamma), None, None) => gamma_witness(graph, gamma, args.merge.as_deref(), out)?,
            (None, None, Some(n), Some(m)) => {
                theta_search(n, m, search_mode(&args.mode)?, out)?;
            }
            _ => return Err(usage("witness takes either --graph and --gamma, or --n and --m")),
        },
        Command::GammaWitness(args) => gamma_witness(&args.graph, &args.gamma, args.merge.as_deref(), out)?,
        Command::Distinguish { n, m } => {
            let r = distinguish_cycles(*n, *m).map_err(usage)?;
            out.push(match &r.verdict {
                Verdict::Equivalent => "SEPARATED=false SENTENCE=none".to_string(),
                Verdict::SeparatedByCommutativity { counterexample: (a, b) } => {
                    format!("SEPARATED=true SENTENCE=Psi COUNTEREXAMPLE=[x{a},x{b}]")
                }
                Verdict::SeparatedByTheta { m, search } => format!(
                    "SEPARATED=true SENTENCE=Phi({m}) HOLDS_IN=C{m} ASSIGNMENT=identity FAILS_IN=C{} CHECKED={} SCOPE=generator-assignments",
                    search.n, search.checked
                ),
            });
        }
        Command::Compact { graph } => {
            let g = load_graph(graph).map_err(CliError::Usage)?;
            let c = g.compaction();
            out.push(format!("VERTICES={}", c.graph.vertex_count()));
            out.push(format!("GRAPH={}", c.graph));
            out.push(format!("KEPT={}", join(&c.kept)));
            out.push(format!("CLASS_OF={}", join(&c.class_of)));
        }
        Command::Perp { graph } => {
            let g = load_graph(graph).map_err(CliError::Usage)?;
            let classes = g.perp_classes();
            out.push(format!("CLASSES={}", classes.len()));
            for b in classes.blocks() {
                out.push(format!("CLASS={}", join(b.iter())));
            }
        }
        Command::Phi {
            alg,
            element,
            merge,
            lambda,
        } => {
            let alg = algebra(alg)?;
            let (r, k) = merge_pair(alg.graph(), merge.as_deref())?;
            let h = PhiHom::new(alg.graph(), r, k, BigInt::from(*lambda)).map_err(usage)?;
            let g = alg.parse_element(element).map_err(usage)?;
            let image = h.apply(&g).map_err(usage)?;
            let by_components = h.apply_by_components(&g).map_err(usage)?;
            out.push(format!("REMOVED={r} KEPT={k} LAMBDA={lambda}"));
            out.push(format!("RESULT={}", image.display_with(h.labels())));
            out.push(format!("ZERO={}", image.is_zero()));
            if image != by_components {
                return Err(CliError::Verification(format!(
                    "componentwise image {} differs",
                    by_components.display_with(h.labels())
                )));
            }
        }
        Command::Lambda0 { alg, element, merge } => {
            let alg = algebra(alg)?;
            let (r, k) = merge_pair(alg.graph(), merge.as_deref())?;
            let h = PhiHom::new(alg.graph(), r, k, BigInt::from(1)).map_err(usage)?;
            let g = alg.parse_element(element).map_err(usage)?;
            let l0 = lambda_zero(&g, &h).map_err(usage)?;
            out.push(format!("REMOVED={r} KEPT={k} LAMBDA0={l0}"));
            for p in h.component_polynomials(&g).map_err(usage)? {
                out.push(format!("COMPONENT={}", join(&p)));
            }
            let hl = h.with_lambda(l0.clone()).map_err(usage)?;
            if hl.apply(&g).map_err(usage)?.is_zero() {
                return Err(CliError::Verification(format!("phi vanishes at lambda={l0}")));
            }
        }
        Command::Suite { criterion, keep_going } => {
            let results = match criterion {
                Some(i) if (1..=suite::CRITERIA.len()).contains(i) => vec![suite::run_criterion(*i, cli.seed)],
                Some(i) => return Err(usage(format!("no criterion {i}"))),
                None => suite::run_suite(cli.seed, !keep_going),
            };
            let passed = results.iter().all(|r| r.passed);
            out.extend(results.iter().map(|r| r.line()));
            out.push(format!("SUITE={}", if passed { "PASS" } else { "FAIL" }));
            if !passed {
                return Ok(EXIT_VERIFICATION);
            }
        }
    }
    Ok(EXIT_OK)
}

fn theta(args: &ThetaArgs, out: &mut Vec<String>) -> Result<(), CliError> {
    let Some(assign) = &args.assign else {
        return theta_search(args.n, args.m, search_mode(&args.mode)?, out);
    };
    let alg = Algebra::new(Graph::cycle(args.n).map_err(usage)?);
    let inst = ThetaInstance::new(&alg, args.m).map_err(usage)?;
    let values = split_top_level(assign)
        .into_iter()
        .map(|t| alg.parse_element(t))
        .collect::<Result<Vec<_>, _>>()
        .map_err(usage)?;
    let r = eval_theta(&inst, &values).map_err(usage)?;
    match r.failed {
        None => out.push("HOLDS=true".to_string()),
        Some(a) => out.push(format!("HOLDS=false FAILED_ATOM={a}")),
    }
    Ok(())
}

fn theta_search(n: usize, m: usize, mode: SearchMode, out: &mut Vec<String>) -> Result<(), CliError> {
    let s = search_theta_witness(n, m, mode).map_err(usage)?;
    let mode = match mode {
        SearchMode::GeneratorAssignments => "generators",
        SearchMode::JSequences => "sequences",
    };
    match &s.witness {
        Some(w) => out.push(format!(
            "N={n} M={m} MODE={mode} FOUND=true WITNESS={} CHECKED={}",
            join(w.iter().map(|j| format!("x{j}"))),
            s.checked
        )),
        None => out.push(format!(
            "N={n} M={m} MODE={mode} FOUND=false CHECKED={} REPEATED_INDEX_REFUTATIONS={}",
            s.checked, s.repeated_index_refutations
        )),
    }
    Ok(())
}

/// Reads `Γ`, one element per line; blank lines and `#` comments skipped.
fn read_gamma(path: &str, alg: &Arc<Algebra>) -> Result<Vec<LieElement>, CliError> {
    let text = std::fs::read_to_string(path).map_err(|e| usage(format!("cannot read {path}: {e}")))?;
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty() && !l.trim_start().starts_with('#'))
        .map(|(i, l)| {
            alg.parse_element(l)
                .map_err(|e| usage(format!("{path}:{}: {e}", i + 1)))
        })
        .collect()
}

fn gamma_witness(graph: &str, gamma: &str, merge: Option<&str>, out: &mut Vec<String>) -> Result<(), CliError> {
    let g = load_graph(graph).map_err(CliError::Usage)?;
    let pair = merge.map(|m| merge_pair(&g, Some(m))).transpose()?;
    let alg = Algebra::new(g.clone());
    let elements = read_gamma(gamma, &alg)?;
    let r = compaction_witness(&g, &elements, pair).map_err(usage)?;
    out.push(format!("REMOVED={} KEPT={} LAMBDA={}", r.removed, r.kept, r.lambda));
    out.push(format!(
        "GAMMA={} CLOSURE={} DISTINCT={} NONZERO={}",
        elements.len(),
        r.closure_size,
        r.distinct,
        r.nonzero
    ));
    out.push(format!(
        "KERNEL_DISJOINT={} IMAGES_DISTINCT={} RELATIONS_PRESERVED={}",
        r.kernel_disjoint, r.images_distinct, r.relations_preserved
    ));
    if !r.ok() {
        return Err(CliError::Verification(
            "merging map does not separate the closure".into(),
        ));
    }
    Ok(())
}
