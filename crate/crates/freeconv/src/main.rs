//! Command-line front end: convolutions, graph products, walk tables, and
//! the multiplication-theorem verification harness.
//!
//! Exit codes: 0 success, 1 verification mismatch, 2 usage or I/O error.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;

use freeconv::convolve::{
    boolean_mult, free_mult, monotone_mult, orthogonal_mult, sfree_mult, Method,
};
use freeconv::graph::{product, ColoredRootedGraph, ProductKind};
use freeconv::jacobi::JacobiParams;
use freeconv::json::{
    to_string_pretty, ConvResultJson, DistJson, EtaJson, GraphJson, JacobiJson, VerifyReportJson,
    WalkTableJson,
};
use freeconv::rational::{format_rational, Rat};
use freeconv::series::{Dist, FormalSeries};
use freeconv::verify::verify_product;
use freeconv::walks::{self, WalkTable};

/// Default cap on the brute-force walk order (2n <= 10 steps). Raise it with
/// the FREECONV_MAX_BRUTE environment variable.
const DEFAULT_MAX_BRUTE: usize = 5;

#[derive(Parser)]
#[command(
    name = "freeconv",
    version,
    about = "Exact multiplicative convolutions, graph loop products, and walk-count verification"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand)]
enum Cmd {
    /// Convolve two moment-sequence files.
    Conv {
        /// One of: monotone, boolean, orthogonal, sfree, free.
        kind: String,
        /// First input distribution (JSON).
        #[arg(long)]
        mu: PathBuf,
        /// Second input distribution (JSON).
        #[arg(long)]
        nu: PathBuf,
        #[command(flatten)]
        order: OrderArg,
        /// Computation path: transform or combinatorial.
        #[arg(long, default_value = "transform")]
        method: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Graph constructions.
    Graph {
        #[command(subcommand)]
        cmd: GraphCmd,
    },
    /// Walk statistics of a graph file.
    Walks {
        /// Input graph (JSON).
        #[arg(long)]
        graph: PathBuf,
        #[command(flatten)]
        order: OrderArg,
        /// Counting route: matrix, brute, or both.
        #[arg(long, default_value = "matrix")]
        method: String,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Cross-check a convolution against walk counts on the product graph.
    Verify {
        /// One of: comb_loop, star_loop, ortho_loop, sfree_loop, free.
        kind: String,
        /// First factor graph (JSON).
        #[arg(long)]
        g1: PathBuf,
        /// Second factor graph (JSON).
        #[arg(long)]
        g2: PathBuf,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Continued-fraction coefficients.
    Jacobi {
        #[command(subcommand)]
        cmd: JacobiCmd,
    },
    /// Conversions between moments and first-return coefficients.
    Convert {
        #[command(subcommand)]
        cmd: ConvertCmd,
    },
}

#[derive(Subcommand)]
enum GraphCmd {
    /// Build a product of two graph files.
    Product {
        /// One of: comb, comb_loop, star, star_loop, ortho, ortho_loop,
        /// sfree_loop, free.
        kind: String,
        /// First factor graph (JSON).
        #[arg(long)]
        g1: PathBuf,
        /// Second factor graph (JSON).
        #[arg(long)]
        g2: PathBuf,
        /// Ball radius; required for sfree_loop and free, rejected otherwise.
        #[arg(long)]
        radius: Option<usize>,
        /// Write the graph JSON here instead of standard output.
        #[arg(long)]
        out: Option<PathBuf>,
        /// Also write a DOT rendering to this path.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
}

#[derive(Subcommand)]
enum JacobiCmd {
    /// Expand Jacobi parameters into first-return coefficients.
    ToEta {
        /// Jacobi parameters (JSON with "alpha" and "omega").
        #[arg(long)]
        params: PathBuf,
        #[command(flatten)]
        order: OrderArg,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Extract Jacobi parameters from a moment sequence.
    FromMoments {
        /// Input distribution (JSON).
        #[arg(long)]
        mu: PathBuf,
        /// Order to use; defaults to the stored order.
        #[arg(long, short = 'N')]
        order: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Subcommand)]
enum ConvertCmd {
    /// First-return coefficients of a moment sequence.
    MomentsToEta {
        /// Input distribution (JSON).
        #[arg(long)]
        mu: PathBuf,
        /// Order to use; defaults to the stored order.
        #[arg(long, short = 'N')]
        order: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
    /// Moment sequence of a first-return series.
    EtaToMoments {
        /// First-return series (JSON with "order" and "eta").
        #[arg(long)]
        eta: PathBuf,
        /// Order to use; defaults to the stored order.
        #[arg(long, short = 'N')]
        order: Option<usize>,
        #[command(flatten)]
        output: OutputArgs,
    },
}

#[derive(Args)]
struct OrderArg {
    /// Truncation order / maximum walk order n.
    #[arg(long, short = 'N')]
    order: usize,
}

#[derive(Args)]
struct OutputArgs {
    /// Output format: json (the stable contract) or table (human-oriented).
    #[arg(long, default_value = "json")]
    format: String,
    /// Write output here instead of standard output.
    #[arg(long)]
    out: Option<PathBuf>,
}

enum Format {
    Json,
    Table,
}

struct CliError {
    msg: String,
    code: u8,
}

impl CliError {
    fn usage(msg: impl Into<String>) -> Self {
        CliError {
            msg: msg.into(),
            code: 2,
        }
    }
}

impl From<freeconv::Error> for CliError {
    fn from(e: freeconv::Error) -> Self {
        CliError::usage(e.to_string())
    }
}

type CliResult<T> = Result<T, CliError>;

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {}", e.msg);
            ExitCode::from(e.code)
        }
    }
}

fn parse_format(s: &str) -> CliResult<Format> {
    match s {
        "json" => Ok(Format::Json),
        "table" => Ok(Format::Table),
        _ => Err(CliError::usage(format!(
            "unknown format {s:?} (expected json or table)"
        ))),
    }
}

fn load_json<T: DeserializeOwned>(path: &Path) -> CliResult<T> {
    let text = fs::read_to_string(path)
        .map_err(|e| CliError::usage(format!("cannot read {}: {e}", path.display())))?;
    serde_json::from_str(&text)
        .map_err(|e| CliError::usage(format!("cannot parse {}: {e}", path.display())))
}

fn load_dist(path: &Path) -> CliResult<Dist> {
    let json: DistJson = load_json(path)?;
    json.into_dist()
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn load_graph(path: &Path) -> CliResult<ColoredRootedGraph> {
    let json: GraphJson = load_json(path)?;
    json.into_graph()
        .map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn check_order(dist: &Dist, order: usize, path: &Path) -> CliResult<()> {
    if order == 0 {
        return Err(CliError::usage("--order must be at least 1"));
    }
    if dist.order() < order {
        return Err(CliError::usage(format!(
            "--order {order} exceeds field 'order' = {} in {}",
            dist.order(),
            path.display()
        )));
    }
    Ok(())
}

fn emit(text: String, out: &Option<PathBuf>) -> CliResult<()> {
    match out {
        Some(path) => fs::write(path, text)
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", path.display()))),
        None => {
            println!("{text}");
            Ok(())
        }
    }
}

fn max_brute() -> CliResult<usize> {
    match std::env::var("FREECONV_MAX_BRUTE") {
        Ok(v) => v.parse().map_err(|_| {
            CliError::usage(format!(
                "FREECONV_MAX_BRUTE must be a positive integer, got {v:?}"
            ))
        }),
        Err(_) => Ok(DEFAULT_MAX_BRUTE),
    }
}

fn check_brute_cap(order: usize) -> CliResult<()> {
    let cap = max_brute()?;
    if order > cap {
        return Err(CliError::usage(format!(
            "brute-force walk counting is capped at order {cap} (2n <= {} steps); \
             set FREECONV_MAX_BRUTE to raise it",
            2 * cap
        )));
    }
    Ok(())
}

fn rows_to_table(headers: &[&str], rows: &[Vec<String>]) -> String {
    let mut widths: Vec<usize> = headers.iter().map(|h| h.len()).collect();
    for row in rows {
        for (i, cell) in row.iter().enumerate() {
            widths[i] = widths[i].max(cell.len());
        }
    }
    let fmt_row = |cells: &[String], widths: &[usize]| {
        cells
            .iter()
            .zip(widths)
            .map(|(c, w)| format!("{c:>w$}"))
            .collect::<Vec<_>>()
            .join("  ")
    };
    let mut out = String::new();
    let header: Vec<String> = headers.iter().map(|h| h.to_string()).collect();
    out.push_str(&fmt_row(&header, &widths));
    for row in rows {
        out.push('\n');
        out.push_str(&fmt_row(row, &widths));
    }
    out
}

fn run(cli: Cli) -> CliResult<u8> {
    match cli.cmd {
        Cmd::Conv {
            kind,
            mu,
            nu,
            order,
            method,
            output,
        } => cmd_conv(&kind, &mu, &nu, order.order, &method, &output),
        Cmd::Graph {
            cmd:
                GraphCmd::Product {
                    kind,
                    g1,
                    g2,
                    radius,
                    out,
                    dot,
                },
        } => cmd_graph_product(&kind, &g1, &g2, radius, &out, &dot),
        Cmd::Walks {
            graph,
            order,
            method,
            output,
        } => cmd_walks(&graph, order.order, &method, &output),
        Cmd::Verify {
            kind,
            g1,
            g2,
            order,
            output,
        } => cmd_verify(&kind, &g1, &g2, order.order, &output),
        Cmd::Jacobi { cmd } => match cmd {
            JacobiCmd::ToEta {
                params,
                order,
                output,
            } => cmd_jacobi_to_eta(&params, order.order, &output),
            JacobiCmd::FromMoments { mu, order, output } => {
                cmd_jacobi_from_moments(&mu, order, &output)
            }
        },
        Cmd::Convert { cmd } => match cmd {
            ConvertCmd::MomentsToEta { mu, order, output } => {
                cmd_moments_to_eta(&mu, order, &output)
            }
            ConvertCmd::EtaToMoments { eta, order, output } => {
                cmd_eta_to_moments(&eta, order, &output)
            }
        },
    }
}

fn conv_by_kind(kind: &str) -> CliResult<freeconv::verify::ConvFn> {
    match kind {
        "monotone" => Ok(monotone_mult),
        "boolean" => Ok(boolean_mult),
        "orthogonal" => Ok(orthogonal_mult),
        "sfree" => Ok(sfree_mult),
        "free" => Ok(free_mult),
        _ => Err(CliError::usage(format!(
            "unknown convolution {kind:?} (expected monotone, boolean, orthogonal, sfree, free)"
        ))),
    }
}

fn cmd_conv(
    kind: &str,
    mu_path: &Path,
    nu_path: &Path,
    order: usize,
    method: &str,
    output: &OutputArgs,
) -> CliResult<u8> {
    let conv = conv_by_kind(kind)?;
    let method: Method = method.parse()?;
    let format = parse_format(&output.format)?;
    let mu = load_dist(mu_path)?;
    let nu = load_dist(nu_path)?;
    check_order(&mu, order, mu_path)?;
    check_order(&nu, order, nu_path)?;
    let result = conv(&mu, &nu, order, method);
    let text = match format {
        Format::Json => to_string_pretty(&ConvResultJson::from(&result)),
        Format::Table => {
            let rows: Vec<Vec<String>> = (1..=order)
                .map(|n| {
                    vec![
                        n.to_string(),
                        format_rational(result.dist.moment(n)),
                        format_rational(&result.first_return[n - 1]),
                    ]
                })
                .collect();
            rows_to_table(&["n", "moment", "first_return"], &rows)
        }
    };
    emit(text, &output.out)?;
    Ok(0)
}

fn cmd_graph_product(
    kind: &str,
    g1_path: &Path,
    g2_path: &Path,
    radius: Option<usize>,
    out: &Option<PathBuf>,
    dot: &Option<PathBuf>,
) -> CliResult<u8> {
    let kind: ProductKind = kind.parse()?;
    let g1 = load_graph(g1_path)?;
    let g2 = load_graph(g2_path)?;
    let prod = product(kind, &g1, &g2, radius)?;
    if let Some(dot_path) = dot {
        fs::write(dot_path, prod.to_dot())
            .map_err(|e| CliError::usage(format!("cannot write {}: {e}", dot_path.display())))?;
    }
    emit(to_string_pretty(&GraphJson::from(&prod)), out)?;
    Ok(0)
}

fn cmd_walks(graph_path: &Path, order: usize, method: &str, output: &OutputArgs) -> CliResult<u8> {
    if order == 0 {
        return Err(CliError::usage("--order must be at least 1"));
    }
    let format = parse_format(&output.format)?;
    let g = load_graph(graph_path)?;
    let uses_matrix = matches!(method, "matrix" | "both");
    if uses_matrix && !walks::even_fwalk_check(&g, 2 * order) {
        eprintln!(
            "warning: rooted alternating f-walks of even length exist; \
             matrix d-walk counts may not count double-return walks"
        );
    }
    let json = match method {
        "matrix" => WalkTableJson::matrix_only(&WalkTable::build(&g, order)),
        "brute" => {
            check_brute_cap(order)?;
            WalkTableJson::brute_only(order, &walks::dwalk_counts_bruteforce(&g, order))
        }
        "both" => {
            check_brute_cap(order)?;
            WalkTableJson::both(
                &WalkTable::build(&g, order),
                &walks::dwalk_counts_bruteforce(&g, order),
            )
        }
        _ => {
            return Err(CliError::usage(format!(
                "unknown method {method:?} (expected matrix, brute, both)"
            )))
        }
    };
    let text = match format {
        Format::Json => to_string_pretty(&json),
        Format::Table => {
            let mut headers = vec!["n"];
            if json.spectral.is_some() {
                headers.extend(["spectral", "first_return"]);
            }
            headers.push("dwalks");
            if json.dwalks_bruteforce.is_some() {
                headers.push("dwalks_brute");
            }
            let rows: Vec<Vec<String>> = (0..order)
                .map(|i| {
                    let mut row = vec![(i + 1).to_string()];
                    if let (Some(s), Some(f)) = (&json.spectral, &json.first_return) {
                        row.push(format_rational(&s[i].0));
                        row.push(format_rational(&f[i].0));
                    }
                    row.push(format_rational(&json.dwalks[i].0));
                    if let Some(b) = &json.dwalks_bruteforce {
                        row.push(format_rational(&b[i].0));
                    }
                    row
                })
                .collect();
            let mut t = rows_to_table(&headers, &rows);
            if let Some(a) = &json.agreement {
                t.push_str(&format!("\nagreement: {a}"));
            }
            t
        }
    };
    emit(text, &output.out)?;
    Ok(0)
}

fn cmd_verify(
    kind: &str,
    g1_path: &Path,
    g2_path: &Path,
    order: usize,
    output: &OutputArgs,
) -> CliResult<u8> {
    if order == 0 {
        return Err(CliError::usage("--order must be at least 1"));
    }
    let kind: ProductKind = kind.parse()?;
    let format = parse_format(&output.format)?;
    check_brute_cap(order)?;
    let g1 = load_graph(g1_path)?;
    let g2 = load_graph(g2_path)?;
    let report = verify_product(kind, &g1, &g2, order)?;
    let json = VerifyReportJson::from(&report);
    let text = match format {
        Format::Json => to_string_pretty(&json),
        Format::Table => {
            let rows: Vec<Vec<String>> = (0..order)
                .map(|i| {
                    vec![
                        (i + 1).to_string(),
                        format_rational(&json.transform[i].0),
                        format_rational(&json.combinatorial[i].0),
                        format_rational(&json.matrix[i].0),
                        format_rational(&json.brute_force[i].0),
                        json.status[i].clone(),
                    ]
                })
                .collect();
            let mut t = rows_to_table(
                &[
                    "n",
                    "transform",
                    "combinatorial",
                    "matrix",
                    "brute_force",
                    "status",
                ],
                &rows,
            );
            t.push_str(&format!(
                "\nresult: {}",
                if report.all_pass() { "pass" } else { "fail" }
            ));
            t
        }
    };
    emit(text, &output.out)?;
    Ok(if report.all_pass() { 0 } else { 1 })
}

fn cmd_jacobi_to_eta(params_path: &Path, order: usize, output: &OutputArgs) -> CliResult<u8> {
    if order == 0 {
        return Err(CliError::usage("--order must be at least 1"));
    }
    let format = parse_format(&output.format)?;
    let json: JacobiJson = load_json(params_path)?;
    let params = json.into_params();
    let eta = params.eta(order);
    emit_eta(&eta.tail(), order, format, &output.out)
}

fn cmd_jacobi_from_moments(
    mu_path: &Path,
    order: Option<usize>,
    output: &OutputArgs,
) -> CliResult<u8> {
    let format = parse_format(&output.format)?;
    let mu = load_dist(mu_path)?;
    let order = order.unwrap_or(mu.order());
    check_order(&mu, order, mu_path)?;
    let params = JacobiParams::from_moments(&mu, order)
        .map_err(|e| CliError::usage(format!("{}: {e}", mu_path.display())))?;
    let negative = params.negative_omega_levels();
    if !negative.is_empty() {
        eprintln!(
            "warning: omega is negative at level(s) {negative:?}; \
             the moment sequence does not come from a positive measure"
        );
    }
    let json = JacobiJson::from(&params);
    let text = match format {
        Format::Json => to_string_pretty(&json),
        Format::Table => {
            let levels = json.alpha.len().max(json.omega.len());
            let rows: Vec<Vec<String>> = (0..levels)
                .map(|k| {
                    let cell = |v: &Vec<freeconv::json::Rq>| {
                        v.get(k).map_or(String::new(), |r| format_rational(&r.0))
                    };
                    vec![k.to_string(), cell(&json.alpha), cell(&json.omega)]
                })
                .collect();
            rows_to_table(&["k", "alpha", "omega"], &rows)
        }
    };
    emit(text, &output.out)?;
    Ok(0)
}

fn emit_eta(coeffs: &[Rat], order: usize, format: Format, out: &Option<PathBuf>) -> CliResult<u8> {
    let json = EtaJson::new(order, coeffs);
    let text = match format {
        Format::Json => to_string_pretty(&json),
        Format::Table => {
            let rows: Vec<Vec<String>> = coeffs
                .iter()
                .enumerate()
                .map(|(i, c)| vec![(i + 1).to_string(), format_rational(c)])
                .collect();
            rows_to_table(&["n", "first_return"], &rows)
        }
    };
    emit(text, out)?;
    Ok(0)
}

fn cmd_moments_to_eta(mu_path: &Path, order: Option<usize>, output: &OutputArgs) -> CliResult<u8> {
    let format = parse_format(&output.format)?;
    let mu = load_dist(mu_path)?;
    let order = order.unwrap_or(mu.order());
    check_order(&mu, order, mu_path)?;
    let eta = mu.truncated(order).first_return();
    emit_eta(&eta, order, format, &output.out)
}

fn cmd_eta_to_moments(eta_path: &Path, order: Option<usize>, output: &OutputArgs) -> CliResult<u8> {
    let format = parse_format(&output.format)?;
    let json: EtaJson = load_json(eta_path)?;
    let stored = json.order;
    let coeffs = json
        .coefficients()
        .map_err(|e| CliError::usage(format!("{}: {e}", eta_path.display())))?;
    let order = order.unwrap_or(stored);
    if order == 0 || order > stored {
        return Err(CliError::usage(format!(
            "--order {order} must be between 1 and field 'order' = {stored} in {}",
            eta_path.display()
        )));
    }
    let eta = FormalSeries::from_low(1, coeffs[..order].to_vec(), order);
    let dist = Dist::from_eta(&eta)
        .map_err(|e| CliError::usage(format!("{}: {e}", eta_path.display())))?;
    let text = match format {
        Format::Json => to_string_pretty(&DistJson::from(&dist)),
        Format::Table => {
            let rows: Vec<Vec<String>> = (1..=order)
                .map(|n| vec![n.to_string(), format_rational(dist.moment(n))])
                .collect();
            rows_to_table(&["n", "moment"], &rows)
        }
    };
    emit(text, &output.out)?;
    Ok(0)
}
