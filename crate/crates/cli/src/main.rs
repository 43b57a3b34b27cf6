//! Command-line front end: verification runs, coefficient dumps, partition
//! counts, and Bailey pair checks, with text/JSON/CSV reports.
//!
//! Exit codes: 0 when every requested check passes, 1 when any check
//! fails, 2 for usage/configuration errors. All numbers in machine
//! formats are decimal strings (the coefficients are arbitrary-precision
//! rationals; nothing is ever rounded through a float).

use clap::{Args, Parser, Subcommand, ValueEnum};
use qseries::bailey::{pair_by_name, PairReport, Specialization};
use qseries::catalog::{self, Params, Side};
use qseries::partitions::{count_constrained, count_residue, ConstraintFamily, ResidueClassSpec};
use serde_json::json;
use std::process::ExitCode;

/// Environment variable holding the default term budget.
const BUDGET_ENV: &str = "QSERIES_BUDGET";
const DEFAULT_BUDGET: u64 = 100_000_000;

#[derive(Parser)]
#[command(
    name = "qseries",
    about = "Exact coefficientwise verification of Rogers-Ramanujan / Capparelli type q-series identities"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum SideArg {
    Lhs,
    Rhs,
}

#[derive(Args)]
struct CommonParams {
    /// Parameter for the mod-5/mod-8 families (0 or 1).
    #[arg(long)]
    lambda: Option<u8>,
    /// Chain depth for the multi-sum families (>= 1).
    #[arg(long)]
    k: Option<i64>,
}

impl CommonParams {
    fn params(&self) -> Params {
        Params {
            lambda: self.lambda.unwrap_or(0),
            k: self.k.unwrap_or(1),
        }
    }
}

#[derive(Subcommand)]
enum Command {
    /// Verify identities coefficient-by-coefficient.
    Verify {
        /// Identity id, or "all" for the whole catalog.
        #[arg(long, default_value = "all")]
        id: String,
        /// Truncation order (default: per-identity catalog order).
        #[arg(long, allow_negative_numbers = true)]
        order: Option<i64>,
        #[command(flatten)]
        params: CommonParams,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
        /// Worker threads.
        #[arg(long, default_value_t = 1)]
        jobs: usize,
        /// Refuse runs whose estimated term count exceeds this budget
        /// (default from QSERIES_BUDGET).
        #[arg(long)]
        budget: Option<u64>,
    },
    /// Print the exponent/coefficient table of one side of an identity.
    Coeffs {
        #[arg(long)]
        id: String,
        #[arg(long, value_enum, default_value = "lhs")]
        side: SideArg,
        #[arg(long)]
        order: Option<i64>,
        #[command(flatten)]
        params: CommonParams,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Compare gap-constrained and residue-class partition counts.
    Partitions {
        /// rr | gg | capparelli
        #[arg(long)]
        family: String,
        #[arg(long)]
        lambda: Option<u8>,
        #[arg(long, default_value_t = 50, allow_negative_numbers = true)]
        max_n: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// Check the Bailey pair defining relation.
    Bailey {
        /// left | right | capparelli
        #[arg(long)]
        pair: String,
        /// Comma-separated specialization exponents, or "a=1".
        #[arg(long)]
        spec: Option<String>,
        #[arg(long, default_value_t = 8, allow_negative_numbers = true)]
        max_n: i64,
        #[arg(long, default_value_t = 60, allow_negative_numbers = true)]
        order: i64,
        #[arg(long, value_enum, default_value = "text")]
        format: Format,
    },
    /// List the identity catalog.
    List,
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(msg) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn run(cli: Cli) -> Result<bool, String> {
    match cli.command {
        Command::Verify {
            id,
            order,
            params,
            format,
            jobs,
            budget,
        } => cmd_verify(&id, order, params.params(), format, jobs, budget),
        Command::Coeffs {
            id,
            side,
            order,
            params,
            format,
        } => cmd_coeffs(&id, side, order, params.params(), format),
        Command::Partitions {
            family,
            lambda,
            max_n,
            format,
        } => cmd_partitions(&family, lambda, max_n, format),
        Command::Bailey {
            pair,
            spec,
            max_n,
            order,
            format,
        } => cmd_bailey(&pair, spec.as_deref(), max_n, order, format),
        Command::List => {
            cmd_list();
            Ok(true)
        }
    }
}

fn budget_limit(flag: Option<u64>) -> u64 {
    flag.or_else(|| std::env::var(BUDGET_ENV).ok().and_then(|v| v.parse().ok()))
        .unwrap_or(DEFAULT_BUDGET)
}

fn cmd_verify(
    id: &str,
    order: Option<i64>,
    params: Params,
    format: Format,
    jobs: usize,
    budget: Option<u64>,
) -> Result<bool, String> {
    if let Some(o) = order {
        if o < 0 {
            return Err(format!("order must be >= 0, got {o}"));
        }
    }
    // resolve the request list up front so unknown ids fail before any work
    let requests: Vec<(String, Params, i64)> = if id == "all" {
        catalog::all_instances()
            .into_iter()
            .map(|(id, p)| {
                let o = order.unwrap_or_else(|| catalog::entry(&id).unwrap().default_order);
                (id, p, o)
            })
            .collect()
    } else {
        let e = catalog::entry(id).map_err(|e| e.to_string())?;
        vec![(id.to_string(), params, order.unwrap_or(e.default_order))]
    };

    let limit = budget_limit(budget);
    for (rid, p, o) in &requests {
        let est = catalog::estimate_terms(rid, *o, p);
        if est > limit {
            return Err(format!(
                "budget exceeded for {rid} at order {o}: estimated {est} terms > budget {limit} \
                 (raise --budget or {BUDGET_ENV})"
            ));
        }
    }

    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.max(1))
        .build()
        .map_err(|e| e.to_string())?;
    let reports: Vec<Result<catalog::VerificationReport, String>> = pool.install(|| {
        use rayon::prelude::*;
        requests
            .par_iter()
            .map(|(rid, p, o)| catalog::verify(rid, *o, p).map_err(|e| e.to_string()))
            .collect()
    });

    let mut all_pass = true;
    if format == Format::Csv {
        println!("id,order,pass,mismatch_exponent,elapsed_ms");
    }
    for report in reports {
        let report = report?;
        all_pass &= report.pass;
        match format {
            Format::Text => {
                if report.pass {
                    println!(
                        "PASS {} order={} ({} ms, {}+{} terms)",
                        report.id,
                        report.order,
                        report.elapsed_ms,
                        report.lhs_terms,
                        report.rhs_terms
                    );
                } else {
                    let m = report.first_mismatch.as_ref().unwrap();
                    println!(
                        "FAIL {} order={}: first mismatch at q^{}: lhs={} rhs={}",
                        report.id, report.order, m.exponent, m.lhs, m.rhs
                    );
                }
            }
            Format::Json => println!("{}", report_json(&report)),
            Format::Csv => println!(
                "{},{},{},{},{}",
                report.id,
                report.order,
                report.pass,
                report
                    .first_mismatch
                    .as_ref()
                    .map(|m| m.exponent.to_string())
                    .unwrap_or_default(),
                report.elapsed_ms
            ),
        }
    }
    Ok(all_pass)
}

fn report_json(r: &catalog::VerificationReport) -> String {
    let mismatch = match &r.first_mismatch {
        Some(m) => json!({
            "exponent": m.exponent,
            "lhs": m.lhs,
            "rhs": m.rhs,
        }),
        None => serde_json::Value::Null,
    };
    json!({
        "id": r.id,
        "order": r.order,
        "pass": r.pass,
        "first_mismatch": mismatch,
        "elapsed_ms": r.elapsed_ms as u64,
    })
    .to_string()
}

fn cmd_coeffs(
    id: &str,
    side: SideArg,
    order: Option<i64>,
    params: Params,
    format: Format,
) -> Result<bool, String> {
    let e = catalog::entry(id).map_err(|e| e.to_string())?;
    let order = order.unwrap_or(e.default_order.min(40));
    let side = match side {
        SideArg::Lhs => Side::Lhs,
        SideArg::Rhs => Side::Rhs,
    };
    let value = catalog::build(id, side, order, &params).map_err(|e| e.to_string())?;
    let rows: Vec<(i64, String)> = match value {
        catalog::SeriesValue::Univariate(s) => (0.min(s.valuation().unwrap_or(0))..=order)
            .map(|n| (n, s.coeff(n).unwrap().to_string()))
            .collect(),
        catalog::SeriesValue::Bivariate(s) => (0..=order)
            .map(|n| (n, s.coeff(n).unwrap().to_string()))
            .collect(),
    };
    match format {
        Format::Text => {
            for (n, c) in rows {
                println!("q^{n}: {c}");
            }
        }
        Format::Json => {
            let coeffs: Vec<_> = rows
                .iter()
                .map(|(n, c)| json!({"exponent": n, "coefficient": c}))
                .collect();
            println!(
                "{}",
                json!({"id": id, "order": order, "coefficients": coeffs})
            );
        }
        Format::Csv => {
            println!("n,coefficient");
            for (n, c) in rows {
                println!("{n},{c}");
            }
        }
    }
    Ok(true)
}

fn cmd_partitions(
    family: &str,
    lambda: Option<u8>,
    max_n: i64,
    format: Format,
) -> Result<bool, String> {
    if max_n < 0 {
        return Err(format!("max-n must be >= 0, got {max_n}"));
    }
    let lambda = lambda.unwrap_or(0);
    if lambda > 1 {
        return Err(format!("lambda must be 0 or 1, got {lambda}"));
    }
    let (constraint, residues) = match family {
        "rr" => (
            ConstraintFamily::RogersRamanujan { lambda },
            ResidueClassSpec::rogers_ramanujan(lambda),
        ),
        "gg" => (
            ConstraintFamily::GollnitzGordon { lambda },
            ResidueClassSpec::gollnitz_gordon(lambda),
        ),
        "capparelli" => (ConstraintFamily::Capparelli, ResidueClassSpec::capparelli()),
        other => return Err(format!("unknown family: {other} (use rr, gg, capparelli)")),
    };
    let mut all_match = true;
    if format == Format::Csv {
        println!("n,constrained,residue,match");
    }
    for n in 0..=max_n as u64 {
        let c = count_constrained(constraint, n);
        let r = count_residue(&residues, n);
        let ok = c == r;
        all_match &= ok;
        match format {
            Format::Text => println!(
                "n={n}: constrained={c} residue={r} {}",
                if ok { "ok" } else { "MISMATCH" }
            ),
            Format::Json => println!(
                "{}",
                json!({"n": n, "constrained": c.to_string(), "residue": r.to_string(), "match": ok})
            ),
            Format::Csv => println!("{n},{c},{r},{ok}"),
        }
    }
    Ok(all_match)
}

fn parse_specs(pair: &str, spec: Option<&str>) -> Result<Vec<i64>, String> {
    match spec {
        None => Ok(if pair == "capparelli" {
            vec![1, 2, 3]
        } else {
            vec![0]
        }),
        Some("a=1") => Ok(vec![0]),
        Some(list) => list
            .split(',')
            .map(|tok| {
                let m: i64 = tok.trim().parse().map_err(|_| {
                    format!("bad specialization {tok:?} (expected integers or a=1)")
                })?;
                if m < 0 {
                    return Err(format!("specialization exponent must be >= 0, got {m}"));
                }
                Ok(m)
            })
            .collect(),
    }
}

fn cmd_bailey(
    pair_name: &str,
    spec: Option<&str>,
    max_n: i64,
    order: i64,
    format: Format,
) -> Result<bool, String> {
    if max_n < 0 {
        return Err(format!("max-n must be >= 0, got {max_n}"));
    }
    if order < 0 {
        return Err(format!("order must be >= 0, got {order}"));
    }
    let pair = pair_by_name(pair_name)
        .ok_or_else(|| format!("unknown pair: {pair_name} (use left, right, capparelli)"))?;
    let specs = parse_specs(pair_name, spec)?;
    if !pair.base_cube() && specs.iter().any(|&m| m != 0) {
        return Err(format!(
            "pair {pair_name} is stated at a = 1; use --spec a=1"
        ));
    }
    let mut all_pass = true;
    if format == Format::Csv {
        println!("pair,m,n,pass,mismatch_exponent");
    }
    for &m in &specs {
        let report: PairReport = pair
            .verify(Specialization::new(m), max_n, order)
            .map_err(|e| format!("specialization m={m}: {e}"))?;
        all_pass &= report.pass();
        for check in &report.results {
            let ok = check.mismatch.is_none();
            match format {
                Format::Text => println!(
                    "{} a=q^{m} n={}: {}",
                    report.pair,
                    check.n,
                    if ok {
                        "ok".to_string()
                    } else {
                        format!(
                            "MISMATCH at q^{}",
                            check.mismatch.as_ref().unwrap().exponent
                        )
                    }
                ),
                Format::Json => println!(
                    "{}",
                    json!({
                        "pair": report.pair,
                        "m": m,
                        "n": check.n,
                        "order": report.order,
                        "pass": ok,
                        "mismatch_exponent": check.mismatch.as_ref().map(|mm| mm.exponent),
                    })
                ),
                Format::Csv => println!(
                    "{},{},{},{},{}",
                    report.pair,
                    m,
                    check.n,
                    ok,
                    check
                        .mismatch
                        .as_ref()
                        .map(|mm| mm.exponent.to_string())
                        .unwrap_or_default()
                ),
            }
        }
    }
    Ok(all_pass)
}

fn cmd_list() {
    println!("{:<14} {:<9} {:<13} statement", "id", "order", "params");
    for e in catalog::entries() {
        let params = if e.takes_lambda {
            "lambda 0..1".to_string()
        } else if let Some(k) = e.k_range {
            format!("k 1..{k}")
        } else {
            "-".to_string()
        };
        let kind = if e.bivariate { " [bivariate]" } else { "" };
        println!(
            "{:<14} {:<9} {:<13} {}{}",
            e.id, e.default_order, params, e.statement, kind
        );
    }
    println!();
    println!("multi_cap1 note: the k=1 instance reduces to the cap1 family (same product side).");
}
