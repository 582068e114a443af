//! Command-line front end: decomposition reports for arrangement files,
//! seeded verification suites, certificate traces, and count sweeps.

use std::fs;
use std::process::ExitCode;

use clap::{Parser, Subcommand};

use dmod::arrangement::arrangement_from_json;
use dmod::certs::{origin_quotient_class, reduce_one_var_ideal, simplify_annihilator_ideal};
use dmod::decomp::{count_factors, CaseTag, DecompositionReport, FactorKind};
use dmod::scalar::Scalar;
use dmod::verify::{run_all, run_suite, standard_arrangement, SUITES};
use dmod::weyl::build_annihilators;
use dmod::Arrangement;

#[derive(Parser)]
#[command(name = "dmod", about = "decomposition factors of twisted modules over plane arrangements", version)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compute the factor count and supports for an arrangement file
    Report {
        /// JSON file with fields "forms" and "beta"
        file: String,
        /// Emit the report as JSON instead of text
        #[arg(long)]
        json: bool,
    },
    /// Run the seeded verification suites
    Verify {
        /// Seed for the randomized suites
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// Run a single suite by name
        #[arg(long)]
        suite: Option<String>,
        /// Corrupt the second annihilator as a negative control
        #[arg(long)]
        corrupt_q: bool,
    },
    /// Print the report together with the certificate chains behind it
    Explain {
        /// JSON file with fields "forms" and "beta"
        file: String,
    },
    /// Tabulate counts over the exponent grid {0, 1/2}^m
    Sweep {
        /// Largest number of lines to include
        #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(usize))]
        m_max: usize,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match cli.command {
        Command::Report { file, json } => cmd_report(&file, json),
        Command::Verify { seed, suite, corrupt_q } => cmd_verify(seed, suite.as_deref(), corrupt_q),
        Command::Explain { file } => cmd_explain(&file),
        Command::Sweep { m_max } => cmd_sweep(m_max),
    }
}

fn load_arrangement(path: &str) -> Result<Arrangement, String> {
    let text = fs::read_to_string(path).map_err(|e| format!("cannot read {path}: {e}"))?;
    arrangement_from_json(&text).map_err(|e| e.to_string())
}

fn render_text(report: &DecompositionReport) -> String {
    let mut out = String::new();
    out.push_str(&format!(
        "m = {}, integer exponents: {}, case: {:?}\n",
        report.m, report.k, report.case
    ));
    out.push_str(&format!("decomposition factors: {}\n", report.count));
    for f in &report.factors {
        let place = match &f.kind {
            FactorKind::Plane => "whole plane".to_string(),
            FactorKind::Line { index } => format!("line {index}"),
            FactorKind::Origin => "origin".to_string(),
        };
        out.push_str(&format!("  support {:<12} x {}\n", place, f.multiplicity));
    }
    if let Some(bh) = &report.beta_h {
        out.push_str(&format!("restricted exponent sum: {bh}\n"));
    }
    if let Some(nbc) = &report.nbc {
        let rendered: Vec<String> = nbc
            .iter()
            .map(|s| {
                if s.is_empty() {
                    "{}".to_string()
                } else {
                    format!("{{{}}}", s.iter().map(usize::to_string).collect::<Vec<_>>().join(","))
                }
            })
            .collect();
        out.push_str(&format!("broken-circuit-free witness ({} subsets): {}\n", nbc.len(), rendered.join(" ")));
    }
    for note in &report.notes {
        out.push_str(&format!("note: {note}\n"));
    }
    out
}

fn cmd_report(path: &str, json: bool) -> ExitCode {
    let arr = match load_arrangement(path) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let report = match count_factors(&arr) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    if json {
        println!("{}", serde_json::to_string_pretty(&report).expect("report serializes"));
    } else {
        print!("{}", render_text(&report));
    }
    ExitCode::SUCCESS
}

fn cmd_verify(seed: u64, suite: Option<&str>, corrupt_q: bool) -> ExitCode {
    println!("seed: {seed}");
    let outcomes = match suite {
        Some(name) => match run_suite(name, seed, corrupt_q) {
            Some(o) => vec![o],
            None => {
                eprintln!("error: unknown suite {name:?}; available: {}", SUITES.join(", "));
                return ExitCode::from(1);
            }
        },
        None => run_all(seed, corrupt_q),
    };
    let mut all_pass = true;
    for o in &outcomes {
        println!("{}", o.summary());
        for failure in &o.failures {
            println!("    witness: {failure}");
        }
        all_pass &= o.passed();
    }
    if all_pass {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}

fn cmd_explain(path: &str) -> ExitCode {
    let arr = match load_arrangement(path) {
        Ok(a) => a,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let report = match count_factors(&arr) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    print!("{}", render_text(&report));
    if report.m < 2 || report.case == CaseTag::AllInteger {
        println!("\nno origin certificate applies (the count is witnessed combinatorially).");
        return ExitCode::SUCCESS;
    }

    // Certificates run over the shifted exponents: integers dropped to zero,
    // the rest reduced mod 1.
    let reduced = arr.normalize_beta();
    println!("\nshifted exponents: ({})", reduced.beta().iter().map(Scalar::to_string).collect::<Vec<_>>().join(", "));
    let narr = match reduced.normalize_coordinates() {
        Ok(n) => n,
        Err(e) => {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    };
    let ann = build_annihilators(&narr).expect("m >= 2");
    println!("annihilators:");
    println!("  P = {}", ann.p);
    println!("  Q = {}", ann.q);
    match simplify_annihilator_ideal(&ann, narr.beta()) {
        Ok(simp) => {
            println!("generator simplification at the origin:");
            for step in &simp.steps {
                println!("  {}", step.rendered);
            }
            let gens: Vec<String> = simp.generators.iter().map(|g| g.to_string()).collect();
            println!("  ideal at the origin: <{}>", gens.join(", "));
        }
        Err(e) => println!("generator simplification unavailable: {e}"),
    }
    let m = narr.m() as u32;
    let sum = narr.beta_sum();
    let gamma = &sum + &Scalar::one();
    println!("one-variable reduction (gamma = |beta| + 1 = {gamma}):");
    let chain = reduce_one_var_ideal(&gamma, m.saturating_sub(2));
    for line in chain.to_string().lines() {
        println!("  {line}");
    }
    println!(
        "origin quotient: {:?}",
        origin_quotient_class(&sum, m)
    );
    ExitCode::SUCCESS
}

fn cmd_sweep(m_max: usize) -> ExitCode {
    if m_max > 8 {
        eprintln!("error: --m-max must be at most 8");
        return ExitCode::from(1);
    }
    println!("{:>2} {:>2} {:>12} {:>6}  formula", "m", "k", "sum class", "count");
    let mut all_match = true;
    for m in 1..=m_max {
        let mut patterns: Vec<Vec<Scalar>> = vec![vec![]];
        for _ in 0..m {
            patterns = patterns
                .into_iter()
                .flat_map(|p| {
                    [Scalar::zero(), Scalar::ratio(1, 2)].into_iter().map(move |v| {
                        let mut q = p.clone();
                        q.push(v);
                        q
                    })
                })
                .collect();
        }
        for beta in patterns {
            let arr = standard_arrangement(m, beta);
            let (k, _) = arr.integer_count();
            let sum_integer = arr.beta_sum().is_integer();
            let report = count_factors(&arr).expect("valid grid entry");
            let (formula, class) = if k == m {
                (2 * m, "all-integer")
            } else if sum_integer {
                (m + k - 1, "sum-integer")
            } else {
                (k + 1, "sum-noninteger")
            };
            let status = if report.count == formula { "ok" } else { "MISMATCH" };
            all_match &= report.count == formula;
            println!("{m:>2} {k:>2} {class:>12} {:>6}  {formula} {status}", report.count);
        }
    }
    if all_match {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(2)
    }
}
