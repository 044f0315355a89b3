//! Command-line interface. `run` returns the rendered output and exit code
//! so the binary and the tests share one code path.

use std::fmt::Write as _;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand};
use periods_core::graph::index_subsets;
use periods_core::homology::{default_frame, Chain1};
use periods_core::period::omega_l;
use periods_core::quasitree::{CycleSpace, QuasiTreeError, DEFAULT_MAX_EDGES};
use periods_core::report::{index_set, Report};
use periods_core::{IntMatrix, RatMatrix};

use crate::format::{self, FormatError, GraphDoc};
use crate::generate::{generate, Family, GenerateError, WeightSpec};
use crate::json::{
    self, ChainEntry, InfoJson, MinorJson, PeriodJson, QuasiTreeJson, QuasiTreesJson, SuiteJson, VerifyJson,
};
use crate::suites::{Context, Suite};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_INPUT: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "periods", version, about = "Exact discrete period matrices and quasi-tree identities")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Counts, tree-cotree decomposition, symplectic basis and `M`.
    Info(ReportArgs),
    /// `ΩL`, `L`, tree sum, WP potential and normalized blocks.
    Period(ReportArgs),
    /// `k`-quasi-trees with class matrices and `det T_I`.
    Quasitrees {
        #[arg(long)]
        k: usize,
        #[command(flatten)]
        args: ReportArgs,
    },
    /// Run verification suites; exit 1 if any check fails.
    Verify {
        #[arg(long, conflicts_with = "suite")]
        all: bool,
        #[arg(long, value_enum, required_unless_present = "all")]
        suite: Vec<Suite>,
        #[command(flatten)]
        args: ReportArgs,
    },
    /// Print a built-in family as a graph file.
    Generate {
        #[arg(long)]
        family: Family,
        #[command(flatten)]
        weights: WeightArgs,
    },
}

#[derive(Debug, Args)]
pub struct WeightArgs {
    /// `unit`, `random:SEED` or a comma-separated list such as `2,3/4`.
    #[arg(long, conflicts_with = "seed")]
    pub weights: Option<WeightSpec>,
    /// Random weights with numerators and denominators in 1..=10.
    #[arg(long)]
    pub seed: Option<u64>,
}

impl WeightArgs {
    fn spec(&self) -> Option<WeightSpec> {
        self.seed.map(WeightSpec::Random).or_else(|| self.weights.clone())
    }
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Graph file; omit when `--family` is given.
    #[arg(required_unless_present = "family", conflicts_with = "family")]
    pub input: Option<PathBuf>,
    /// `bouquet:G` or `torus:MxN`.
    #[arg(long)]
    pub family: Option<Family>,
    #[command(flatten)]
    pub weights: WeightArgs,
    /// Refuse to enumerate edge subsets of larger graphs.
    #[arg(long, default_value_t = DEFAULT_MAX_EDGES)]
    pub max_edges: usize,
    #[arg(long)]
    pub json: bool,
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io { path: String, source: std::io::Error },
    #[error("{path}: {source}")]
    Format { path: String, source: FormatError },
    #[error(transparent)]
    Generate(#[from] GenerateError),
    #[error(transparent)]
    QuasiTree(#[from] QuasiTreeError),
}

impl ReportArgs {
    pub fn load(&self) -> Result<GraphDoc, CliError> {
        let spec = self.weights.spec();
        if let Some(fam) = self.family {
            return Ok(generate(fam, spec.as_ref().unwrap_or(&WeightSpec::Unit))?);
        }
        let path = self.input.as_ref().expect("clap requires input or family");
        let shown = path.display().to_string();
        let text = std::fs::read_to_string(path).map_err(|source| CliError::Io { path: shown.clone(), source })?;
        let doc = format::parse(&text).map_err(|source| CliError::Format { path: shown.clone(), source })?;
        match spec {
            None => Ok(doc),
            Some(s) => {
                let w = s.resolve(doc.graph.num_edges())?;
                doc.reweighted(w).map_err(|source| CliError::Format { path: shown, source })
            }
        }
    }
}

/// Output text and exit code. Input errors yield `Err`, exit code 2.
pub fn run(cli: &Cli) -> Result<(String, i32), CliError> {
    match &cli.command {
        Command::Info(args) => info(args).map(|s| (s, EXIT_PASS)),
        Command::Period(args) => period(args).map(|s| (s, EXIT_PASS)),
        Command::Quasitrees { k, args } => quasitrees(*k, args).map(|s| (s, EXIT_PASS)),
        Command::Verify { all, suite, args } => {
            let suites: Vec<Suite> = if *all { Suite::ALL.to_vec() } else { suite.clone() };
            verify(&suites, args)
        }
        Command::Generate { family, weights } => {
            let doc = generate(*family, weights.spec().as_ref().unwrap_or(&WeightSpec::Unit))?;
            Ok((format::serialize(&doc), EXIT_PASS))
        }
    }
}

/// Parses `argv` and runs; clap usage errors map to exit code 2.
pub fn run_args<I, T>(argv: I) -> (String, String, i32)
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    match Cli::try_parse_from(argv) {
        Err(e) => {
            let code = if e.use_stderr() { EXIT_INPUT } else { EXIT_PASS };
            let text = e.render().to_string();
            if code == EXIT_PASS {
                (text, String::new(), code)
            } else {
                (String::new(), text, code)
            }
        }
        Ok(cli) => match run(&cli) {
            Ok((out, code)) => (out, String::new(), code),
            Err(e) => (String::new(), format!("error: {e}\n"), EXIT_INPUT),
        },
    }
}

fn chain_entries(doc: &GraphDoc, c: &Chain1) -> Vec<ChainEntry> {
    c.coeffs
        .iter()
        .enumerate()
        .filter(|(_, &x)| x != 0)
        .map(|(e, &coeff)| ChainEntry { edge: doc.edge_labels[e].clone(), coeff })
        .collect()
}

fn labels(doc: &GraphDoc, edges: &[usize]) -> Vec<String> {
    edges.iter().map(|&e| doc.edge_labels[e].clone()).collect()
}

fn int_rows(m: &IntMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| (0..m.cols()).map(|j| m[(i, j)].to_string()).collect()).collect()
}

fn rat_rows(m: &RatMatrix) -> Vec<Vec<String>> {
    (0..m.rows()).map(|i| m.row(i).iter().map(ToString::to_string).collect()).collect()
}

fn render_chain(entries: &[ChainEntry]) -> String {
    if entries.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (k, t) in entries.iter().enumerate() {
        let sign = if t.coeff < 0 { "-" } else { "+" };
        match (k, t.coeff.abs()) {
            (0, 1) if t.coeff < 0 => s.push('-'),
            (0, 1) => {}
            (0, a) => {
                let _ = write!(s, "{}{a}*", if t.coeff < 0 { "-" } else { "" });
            }
            (_, 1) => {
                let _ = write!(s, " {sign} ");
            }
            (_, a) => {
                let _ = write!(s, " {sign} {a}*");
            }
        }
        s.push_str(&t.edge);
    }
    s
}

fn render_matrix(out: &mut String, indent: &str, rows: &[Vec<String>]) {
    if rows.is_empty() || rows[0].is_empty() {
        let _ = writeln!(out, "{indent}(empty)");
        return;
    }
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1);
    for r in rows {
        let cells: Vec<String> = r.iter().map(|c| format!("{c:>width$}")).collect();
        let _ = writeln!(out, "{indent}[ {} ]", cells.join("  "));
    }
}

fn emit<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).expect("report structs serialize");
    s.push('\n');
    s
}

fn info(args: &ReportArgs) -> Result<String, CliError> {
    let doc = args.load()?;
    let g = &doc.graph;
    let fr = default_frame(g);
    let tc = &fr.decomposition;
    let report = InfoJson {
        name: doc.display_name().into(),
        vertices: g.num_vertices(),
        edges: g.num_edges(),
        faces: g.num_faces(),
        genus: g.genus(),
        weights: (0..g.num_edges()).map(|e| (doc.edge_labels[e].clone(), g.weight(e).to_string())).collect(),
        tree: labels(&doc, &tc.tree),
        cotree: labels(&doc, &tc.cotree),
        rest: labels(&doc, &tc.rest),
        basis: fr.basis.iter().map(|c| chain_entries(&doc, c)).collect(),
        dual_basis: fr.dual_basis.iter().map(|c| chain_entries(&doc, c)).collect(),
        m: int_rows(&fr.m),
    };
    if args.json {
        return Ok(emit(&report));
    }
    let mut s = String::new();
    let _ = writeln!(s, "graph {}", report.name);
    let _ = writeln!(s, "V={} E={} F={} genus={}", report.vertices, report.edges, report.faces, report.genus);
    let _ = writeln!(s, "tree:   {}", report.tree.join(" "));
    let _ = writeln!(s, "cotree: {}", report.cotree.join(" "));
    let _ = writeln!(s, "rest:   {}", report.rest.join(" "));
    for (i, c) in report.basis.iter().enumerate() {
        let _ = writeln!(s, "gamma_{} = {}", i + 1, render_chain(c));
    }
    for (i, c) in report.dual_basis.iter().enumerate() {
        let _ = writeln!(s, "gamma^{} = {}", i + 1, render_chain(c));
    }
    let _ = writeln!(s, "M (rows = edges):");
    let rows: Vec<Vec<String>> = report
        .m
        .iter()
        .zip(&doc.edge_labels)
        .map(|(r, l)| std::iter::once(l.clone()).chain(r.iter().cloned()).collect())
        .collect();
    render_matrix(&mut s, "  ", &rows);
    Ok(s)
}

fn period(args: &ReportArgs) -> Result<String, CliError> {
    let doc = args.load()?;
    let g = &doc.graph;
    let fr = default_frame(g);
    let pd = omega_l(g, &fr, 0);
    let (wp, ln) = pd.wp_potential();
    let normalized = pd.normalized_blocks().ok().map(|b| json::BlocksJson {
        im: rat_rows(&b.im),
        re: rat_rows(&b.re),
        residual: rat_rows(&b.residual),
    });
    let report = PeriodJson {
        name: doc.display_name().into(),
        genus: g.genus(),
        omega_l: rat_rows(&pd.omega_l),
        l: rat_rows(&pd.l),
        tree_sum: pd.tree_sum.to_string(),
        wp_potential: wp.to_string(),
        wp_potential_ln_approx: ln,
        normalized,
    };
    if args.json {
        return Ok(emit(&report));
    }
    let mut s = String::new();
    let _ = writeln!(s, "graph {} genus={}", report.name, report.genus);
    let _ = writeln!(s, "OmegaL:");
    render_matrix(&mut s, "  ", &report.omega_l);
    let _ = writeln!(s, "L:");
    render_matrix(&mut s, "  ", &report.l);
    let _ = writeln!(s, "tree_sum = {}", report.tree_sum);
    let _ = writeln!(s, "wp_potential = {} (ln ~ {:.12})", report.wp_potential, ln);
    if let Some(b) = &report.normalized {
        for (name, m) in [("Im", &b.im), ("Re", &b.re), ("residual", &b.residual)] {
            let _ = writeln!(s, "{name}:");
            render_matrix(&mut s, "  ", m);
        }
    }
    Ok(s)
}

fn quasitrees(k: usize, args: &ReportArgs) -> Result<String, CliError> {
    let doc = args.load()?;
    let g = &doc.graph;
    let fr = default_frame(g);
    let sp = CycleSpace::primal(g, &fr);
    let qts = sp.enumerate(k, args.max_edges)?;
    let subsets = index_subsets(fr.dim(), k);
    let mut entries = Vec::with_capacity(qts.len());
    for q in &qts {
        let mut minors = Vec::with_capacity(subsets.len());
        for i in &subsets {
            minors.push(MinorJson { rows: index_set(i), det: q.t_det(i)?.to_string() });
        }
        entries.push(QuasiTreeJson {
            edges: labels(&doc, &q.edges),
            weight: sp.weight(q).to_string(),
            class_matrix: int_rows(&q.class_matrix),
            minors,
        });
    }
    let report = QuasiTreesJson { name: doc.display_name().into(), k, count: entries.len(), quasi_trees: entries };
    if args.json {
        return Ok(emit(&report));
    }
    let mut s = String::new();
    let _ = writeln!(s, "graph {}: {} quasi-trees of rank {k}", report.name, report.count);
    for q in &report.quasi_trees {
        let _ = writeln!(s, "{{{}}} weight {}", q.edges.join(","), q.weight);
        render_matrix(&mut s, "  ", &q.class_matrix);
        for m in &q.minors {
            let _ = writeln!(s, "  det T_{} = {}", m.rows, m.det);
        }
    }
    Ok(s)
}

fn verify(suites: &[Suite], args: &ReportArgs) -> Result<(String, i32), CliError> {
    let doc = args.load()?;
    let ctx = Context::new(&doc.graph, default_frame(&doc.graph), args.max_edges);
    let mut out = Vec::with_capacity(suites.len());
    let mut total = Report::new();
    for &suite in suites {
        let rep = ctx.run(suite)?;
        out.push(SuiteJson::from_report(suite.name(), &rep));
        total.extend(rep);
    }
    let report = VerifyJson::new(doc.display_name(), out, &total);
    let code = if total.all_pass() { EXIT_PASS } else { EXIT_FAIL };
    if args.json {
        return Ok((emit(&report), code));
    }
    let mut s = String::new();
    let _ = writeln!(s, "graph {}", report.name);
    for su in &report.suites {
        let status = if su.failed == 0 { "PASS" } else { "FAIL" };
        let _ = writeln!(s, "{status} {:<18} {}/{}", su.suite, su.passed, su.passed + su.failed);
        for r in su.records.iter().filter(|r| !r.pass) {
            let _ = writeln!(s, "  {} [{}]: {} != {}", r.check, r.params, r.lhs, r.rhs);
        }
    }
    let _ = writeln!(s, "{} passed, {} failed", report.summary.passed, report.summary.failed);
    Ok((s, code))
}
