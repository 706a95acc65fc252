//! `trinomial`: triangles, sequences, generating functions, edge polynomials,
//! character decompositions, cross-verification and route timings.
//!
//! Exit codes: 0 success, 1 verification or computation failure, 2 usage error.

mod render;

use std::fmt::Write as _;
use std::process::ExitCode;
use std::time::{Duration, Instant};

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use serde_json::json;

use render::OutputFormat;
use trinomial_core::laurent;
use trinomial_core::qpolys;
use trinomial_core::recurrences::TriangleKind;
use trinomial_core::series::{self, SqrtMethod};
use trinomial_core::verify::{self, RouteId, RouteTable};

#[derive(Parser)]
#[command(name = "trinomial", version, about = "Exact trinomial triangle and A1 tensor-power decomposition")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum TriKind {
    A,
    B,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeqKind {
    ACentral,
    BCentral,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesKind {
    #[value(name = "F", alias = "f")]
    F,
    #[value(name = "G", alias = "g")]
    G,
}

#[derive(Clone, Copy, ValueEnum)]
enum SeriesRoute {
    SqrtRecursion,
    SqrtNewton,
}

#[derive(Subcommand)]
enum Command {
    /// Rows 0..=N of the a-triangle (weight multiplicities) or b-triangle (decomposition).
    Triangle {
        #[arg(long, value_enum)]
        kind: TriKind,
        #[arg(long)]
        rows: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// pascal-a, column-a, descending-a, oracle-a, from-a-b, pascal-b,
        /// four-term-b, descending-b, oracle-b
        #[arg(long)]
        route: Option<String>,
    },
    /// Central values a_0..a_N or b_0..b_N.
    Seq {
        #[arg(long, value_enum)]
        kind: SeqKind,
        #[arg(long)]
        count: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        /// Any route of the matching kind; defaults to the two-term recurrence.
        #[arg(long)]
        route: Option<String>,
    },
    /// Coefficients of the generating function F or G through t^N.
    Series {
        #[arg(long, value_enum)]
        kind: SeriesKind,
        #[arg(long)]
        order: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
        #[arg(long, value_enum, default_value = "sqrt-recursion")]
        route: SeriesRoute,
    },
    /// Edge polynomials Q_0..Q_K; with --eval-at n, the values Q_k(n)/k! for k <= n.
    Qpoly {
        #[arg(long)]
        max_k: usize,
        #[arg(long)]
        eval_at: Option<usize>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Multiplicities of the irreducible characters in the n-th tensor power.
    Decompose {
        #[arg(long)]
        n: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Cross-validate every route, series and identity up to max-n.
    Verify {
        #[arg(long, default_value_t = 300)]
        max_n: usize,
        #[arg(long, default_value_t = 11)]
        max_k: usize,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
    /// Wall-clock time per route for each n, with an agreement check on row n.
    Bench {
        #[arg(long, value_delimiter = ',', default_value = "1000")]
        n: Vec<usize>,
        #[arg(long, value_delimiter = ',', default_value = "pascal-a,central-two-term")]
        routes: Vec<String>,
        #[arg(long, value_enum, default_value = "text")]
        format: OutputFormat,
    },
}

#[derive(Debug)]
enum CliError {
    Usage(String),
    Failure(String),
}

impl CliError {
    fn exit_code(&self) -> ExitCode {
        match self {
            CliError::Usage(_) => ExitCode::from(2),
            CliError::Failure(_) => ExitCode::from(1),
        }
    }
}

type CliResult = Result<(String, bool), CliError>;

fn parse_route(name: &str, kind: TriangleKind) -> Result<RouteId, CliError> {
    let route: RouteId = name.parse().map_err(|e: verify::VerifyError| CliError::Usage(e.to_string()))?;
    if route.kind() != kind {
        return Err(CliError::Usage(format!("route {route} does not compute the {kind:?} triangle")));
    }
    Ok(route)
}

fn run_route(route: RouteId, max_n: usize) -> Result<RouteTable, CliError> {
    verify::compute_route(route, max_n).map_err(|e| CliError::Failure(e.to_string()))
}

fn tri_kind(kind: TriKind) -> (TriangleKind, &'static str) {
    match kind {
        TriKind::A => (TriangleKind::A, "a"),
        TriKind::B => (TriangleKind::B, "b"),
    }
}

fn cmd_triangle(kind: TriKind, rows: usize, format: OutputFormat, route: Option<String>) -> CliResult {
    let (kind, label) = tri_kind(kind);
    let route = match route {
        Some(name) => parse_route(&name, kind)?,
        None if kind == TriangleKind::A => RouteId::PascalA,
        None => RouteId::PascalB,
    };
    if !route.is_full() {
        return Err(CliError::Usage(format!("route {route} does not compute full rows")));
    }
    let table = run_route(route, rows)?;
    Ok((render::triangle(label, &table.rows, format), true))
}

fn cmd_seq(kind: SeqKind, count: usize, format: OutputFormat, route: Option<String>) -> CliResult {
    let (kind, label, default) = match kind {
        SeqKind::ACentral => (TriangleKind::A, "a-central", RouteId::CentralTwoTermA),
        SeqKind::BCentral => (TriangleKind::B, "b-central", RouteId::CentralTwoTermB),
    };
    let route = match route {
        Some(name) => parse_route(&name, kind)?,
        None => default,
    };
    let table = run_route(route, count)?;
    let values: Vec<BigInt> = table.rows.iter().map(|r| r[0].clone()).collect();
    Ok((render::indexed(label, "n", "values", &values, format), true))
}

fn cmd_series(kind: SeriesKind, order: usize, format: OutputFormat, route: SeriesRoute) -> CliResult {
    let method = match route {
        SeriesRoute::SqrtRecursion => SqrtMethod::Recursion,
        SeriesRoute::SqrtNewton => SqrtMethod::Newton,
    };
    let (label, s) = match kind {
        SeriesKind::F => ("F", series::f_series_with(order, method)),
        SeriesKind::G => ("G", series::g_series_with(order, method)),
    };
    Ok((render::indexed(label, "n", "coefficients", s.coeffs(), format), true))
}

fn cmd_qpoly(max_k: usize, eval_at: Option<usize>, format: OutputFormat) -> CliResult {
    let family = qpolys::q_family(max_k);
    let Some(n) = eval_at else {
        let out = match format {
            OutputFormat::Text => family
                .iter()
                .enumerate()
                .map(|(k, q)| format!("Q_{k} = {q}\n"))
                .collect(),
            OutputFormat::Csv => {
                let mut out = String::from("k,power,coefficient\n");
                for (k, q) in family.iter().enumerate() {
                    for (p, c) in q.coeffs().iter().enumerate() {
                        let _ = writeln!(out, "{k},{p},{c}");
                    }
                }
                out
            }
            OutputFormat::Json => {
                let polys: Vec<_> = family
                    .iter()
                    .enumerate()
                    .map(|(k, q)| {
                        let coeffs: Vec<String> = q.coeffs().iter().map(ToString::to_string).collect();
                        json!({ "k": k, "expanded": q.to_string(), "coefficients": coeffs })
                    })
                    .collect();
                render::json_line(&json!({ "polynomials": polys }))
            }
        };
        return Ok((out, true));
    };

    let values = family
        .iter()
        .enumerate()
        .take_while(|(k, _)| *k <= n)
        .map(|(k, q)| qpolys::q_edge_entry_with(q, n, k))
        .collect::<Result<Vec<_>, _>>()
        .map_err(|e| CliError::Failure(e.to_string()))?;
    let out = match format {
        OutputFormat::Text => values
            .iter()
            .enumerate()
            .map(|(k, v)| format!("Q_{k}({n})/{k}! = {v}\n"))
            .collect(),
        OutputFormat::Csv => {
            let mut out = String::from("k,n,value\n");
            for (k, v) in values.iter().enumerate() {
                let _ = writeln!(out, "{k},{n},{v}");
            }
            out
        }
        OutputFormat::Json => {
            let vals: Vec<_> = values
                .iter()
                .enumerate()
                .map(|(k, v)| json!({ "k": k, "n": n, "value": v.to_string() }))
                .collect();
            render::json_line(&json!({ "values": vals }))
        }
    };
    Ok((out, true))
}

fn cmd_decompose(n: usize, format: OutputFormat) -> CliResult {
    let m = laurent::decompose(&laurent::trinomial_power(n));
    Ok((render::indexed("multiplicities", "k", "multiplicities", &m.entries, format), true))
}

fn cmd_verify(max_n: usize, max_k: usize, format: OutputFormat) -> CliResult {
    let report = verify::run_all(max_n, max_k).map_err(|e| CliError::Usage(e.to_string()))?;
    let out = match format {
        OutputFormat::Text => format!("{report}\n"),
        OutputFormat::Json => {
            let mut s = serde_json::to_string_pretty(&report).expect("report serializes");
            s.push('\n');
            s
        }
        OutputFormat::Csv => {
            let mut out = String::from("check,status,n,k,left,right\n");
            for t in &report.table_match {
                let status = if t.passed { "pass" } else { "fail" };
                let (n, k, l, r) = divergence_fields(t.divergence.as_ref());
                let _ = writeln!(out, "table:{},{status},{n},{k},{l},{r}", t.route);
            }
            for c in &report.checks {
                let status = serde_json::to_value(c.status).expect("status serializes");
                let (n, k, l, r) = divergence_fields(c.divergence.as_ref());
                let _ = writeln!(out, "{},{},{n},{k},{l},{r}", c.name, status.as_str().unwrap_or(""));
            }
            out
        }
    };
    Ok((out, report.ok()))
}

fn divergence_fields(d: Option<&verify::Divergence>) -> (String, String, String, String) {
    match d {
        Some(d) => (d.n.to_string(), d.k.to_string(), d.left.clone(), d.right.clone()),
        None => Default::default(),
    }
}

fn cmd_bench(ns: &[usize], routes: &[String], format: OutputFormat) -> CliResult {
    if format == OutputFormat::Json {
        return Err(CliError::Usage("bench renders text or csv only".into()));
    }
    let routes = routes
        .iter()
        .map(|r| r.parse::<RouteId>().map_err(|e| CliError::Usage(e.to_string())))
        .collect::<Result<Vec<_>, _>>()?;

    let mut rows: Vec<(RouteId, usize, Duration, String, bool)> = Vec::new();
    let mut all_agree = true;
    for &n in ns {
        let mut reference: [Option<Vec<BigInt>>; 2] = [None, None];
        for &route in &routes {
            let start = Instant::now();
            let table = run_route(route, n)?;
            let elapsed = start.elapsed();
            let row = table.rows[n].clone();
            let slot = &mut reference[route.kind() as usize];
            let agree = match slot {
                Some(prev) => prev.iter().zip(&row).all(|(a, b)| a == b),
                None => {
                    *slot = Some(row.clone());
                    true
                }
            };
            all_agree &= agree;
            rows.push((route, n, elapsed, row[0].to_string(), agree));
        }
    }

    let out = match format {
        OutputFormat::Csv => {
            let mut out = String::from("route,n,seconds,central_digits,agree\n");
            for (route, n, t, central, agree) in &rows {
                let _ = writeln!(out, "{route},{n},{:.6},{},{agree}", t.as_secs_f64(), central.len());
            }
            out
        }
        _ => {
            let mut table = vec![vec![
                "route".to_string(),
                "n".into(),
                "seconds".into(),
                "central digits".into(),
                "agree".into(),
            ]];
            for (route, n, t, central, agree) in &rows {
                table.push(vec![
                    route.to_string(),
                    n.to_string(),
                    format!("{:.6}", t.as_secs_f64()),
                    central.len().to_string(),
                    agree.to_string(),
                ]);
            }
            render::aligned(&table)
        }
    };
    Ok((out, all_agree))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let result = match cli.command {
        Command::Triangle { kind, rows, format, route } => cmd_triangle(kind, rows, format, route),
        Command::Seq { kind, count, format, route } => cmd_seq(kind, count, format, route),
        Command::Series { kind, order, format, route } => cmd_series(kind, order, format, route),
        Command::Qpoly { max_k, eval_at, format } => cmd_qpoly(max_k, eval_at, format),
        Command::Decompose { n, format } => cmd_decompose(n, format),
        Command::Verify { max_n, max_k, format } => cmd_verify(max_n, max_k, format),
        Command::Bench { n, routes, format } => cmd_bench(&n, &routes, format),
    };
    match result {
        Ok((out, ok)) => {
            print!("{out}");
            if ok {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            let (CliError::Usage(msg) | CliError::Failure(msg)) = &e;
            eprintln!("error: {msg}");
            e.exit_code()
        }
    }
}
