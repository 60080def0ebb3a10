//! Command-line surface for the generator-lifting pipeline.
//!
//! Exit codes: 0 when every verification passes, 1 when a verification
//! fails, 2 on malformed input. All commands are deterministic; randomized
//! property testing lives behind `selftest`, which prints its seed.

use clap::{Args, Parser, Subcommand};
use murthy::error::Error;
use murthy::files;
use murthy::pipeline::{run_segre, PipelineReport};
use murthy::reduction::{enumeration_report, reduce_over_field};
use murthy::segre::SearchBudget;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

mod selftest;

#[derive(Parser)]
#[command(
    name = "murthy",
    about = "Exact quadric-point pipeline: Groebner bases, Segre representatives, lifting certificates, field reductions",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct BudgetArgs {
    /// Maximum total degree of each certificate entry.
    #[arg(long, default_value_t = 2)]
    budget_degree: u32,
    /// Comma-separated coefficient set for the certificate search.
    #[arg(long, default_value = "-1,0,1", allow_hyphen_values = true)]
    budget_coeffs: String,
}

impl BudgetArgs {
    fn budget(&self) -> Result<SearchBudget, Error> {
        let coeffs = self
            .budget_coeffs
            .split(',')
            .map(|t| {
                t.trim()
                    .parse::<i64>()
                    .map_err(|_| Error::Syntax(format!("bad coefficient `{}`", t.trim())))
            })
            .collect::<Result<Vec<i64>, Error>>()?;
        SearchBudget::new(self.budget_degree, coeffs)
    }
}

#[derive(Subcommand)]
enum Command {
    /// Print the reduced Groebner basis of an ideal file.
    Gb {
        file: PathBuf,
        #[arg(long)]
        json: bool,
    },
    /// Run the lifting pipeline: representative, certificate, generators.
    Segre {
        /// Ideal file (ring header + one generator per line).
        #[arg(long)]
        ideal: PathBuf,
        /// Lifts file in the same format and ring.
        #[arg(long)]
        lifts: PathBuf,
        #[command(flatten)]
        budget: BudgetArgs,
        #[arg(long)]
        json: bool,
    },
    /// Reduce a constant quadric point to the base point.
    Reduce {
        file: PathBuf,
        /// Ring to parse the point in, when the file has no ring header.
        #[arg(long)]
        ring: Option<String>,
        #[arg(long)]
        json: bool,
    },
    /// Enumerate Q_{2n}(F_q), count orbits, and reduce every point (TSV).
    Enumerate { n: usize, q: u64 },
    /// Verify a homotopy witness or chain file (JSON).
    HomotopyCheck { file: PathBuf },
    /// Run the randomized self-test suites.
    Selftest {
        /// Seed for the deterministic sampler (printed for replay).
        #[arg(long)]
        seed: Option<u64>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {}", e);
            match e {
                Error::Verification(_) => ExitCode::from(1),
                _ => ExitCode::from(2),
            }
        }
    }
}

fn dispatch(cli: Cli) -> Result<ExitCode, Error> {
    match cli.command {
        Command::Gb { file, json } => cmd_gb(&file, json),
        Command::Segre {
            ideal,
            lifts,
            budget,
            json,
        } => cmd_segre(&ideal, &lifts, &budget, json),
        Command::Reduce { file, ring, json } => cmd_reduce(&file, ring.as_deref(), json),
        Command::Enumerate { n, q } => cmd_enumerate(n, q),
        Command::HomotopyCheck { file } => cmd_homotopy_check(&file),
        Command::Selftest { seed } => Ok(selftest::run(seed)),
    }
}

fn cmd_gb(file: &PathBuf, json: bool) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(file)?;
    let ideal = files::parse_ideal(&text)?;
    if json {
        let basis: Vec<String> = ideal.basis().iter().map(|p| p.to_string()).collect();
        println!(
            "{}",
            serde_json::json!({ "ring": ideal.ring().to_string(), "basis": basis })
        );
    } else {
        for p in ideal.basis() {
            println!("{}", p);
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn cmd_segre(
    ideal_file: &PathBuf,
    lifts_file: &PathBuf,
    budget: &BudgetArgs,
    json: bool,
) -> Result<ExitCode, Error> {
    let ideal = files::parse_ideal(&std::fs::read_to_string(ideal_file)?)?;
    let (lift_ring, lifts) = files::parse_generators(&std::fs::read_to_string(lifts_file)?)?;
    if &lift_ring != ideal.ring() {
        return Err(Error::Precondition(format!(
            "lifts ring {} does not match ideal ring {}",
            lift_ring,
            ideal.ring()
        )));
    }
    let report = run_segre(&ideal, &lifts, &budget.budget()?)?;
    if json {
        println!("{}", report_json(&report));
    } else {
        print_report(&report);
    }
    Ok(if report.all_pass() {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn polys_json(ps: &[murthy::Polynomial]) -> Vec<String> {
    ps.iter().map(|p| p.to_string()).collect()
}

fn report_json(report: &PipelineReport) -> String {
    let value = serde_json::json!({
        "ring": report.ideal.ring().to_string(),
        "ideal": polys_json(report.ideal.generators()),
        "lifts": polys_json(&report.lifts),
        "point": report.point.as_ref().map(point_json),
        "certificate": report.certificate.as_ref().map(|c| polys_json(&c.mu)),
        "generators": report.generators.as_ref().map(|g| polys_json(g)),
        "verdicts": report.verdicts.iter().map(|v| {
            serde_json::json!({ "name": v.name, "pass": v.pass, "detail": v.detail })
        }).collect::<Vec<_>>(),
        "timings_ms": report.timings_ms.iter().map(|(k, v)| {
            serde_json::json!({ "stage": k, "ms": v })
        }).collect::<Vec<_>>(),
        "all_pass": report.all_pass(),
    });
    serde_json::to_string_pretty(&value).expect("serializable")
}

fn print_report(report: &PipelineReport) {
    let join = |ps: &[murthy::Polynomial]| {
        ps.iter().map(|p| p.to_string()).collect::<Vec<_>>().join(", ")
    };
    println!("ring: {}", report.ideal.ring());
    println!("ideal: [{}]", join(report.ideal.generators()));
    println!("lifts: [{}]", join(&report.lifts));
    if let Some(v) = &report.point {
        println!("representative: {}", v);
    }
    if let Some(c) = &report.certificate {
        println!("certificate: mu = [{}]", join(&c.mu));
    }
    if let Some(g) = &report.generators {
        println!("generators: [{}]", join(g));
    }
    for v in &report.verdicts {
        println!(
            "verdict {}: {} ({})",
            v.name,
            if v.pass { "pass" } else { "FAIL" },
            v.detail
        );
    }
    for (stage, ms) in &report.timings_ms {
        println!("timing {}: {} ms", stage, ms);
    }
    println!("result: {}", if report.all_pass() { "pass" } else { "FAIL" });
}

fn cmd_reduce(file: &PathBuf, ring: Option<&str>, json: bool) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(file)?;
    let fallback = match ring {
        Some(r) => Some(files::parse_ring(r)?),
        None => None,
    };
    let point = files::parse_point(&text, fallback.as_ref())?;
    let trace = reduce_over_field(&point)?;
    let verified = trace.verify();
    if json {
        let value = serde_json::json!({
            "input": point_json(trace.input()),
            "word": trace.word().ops.iter().map(|op| op.to_string()).collect::<Vec<_>>(),
            "checkpoints": trace.checkpoints().iter().map(point_json).collect::<Vec<_>>(),
            "verified": verified,
        });
        println!("{}", serde_json::to_string_pretty(&value).expect("serializable"));
    } else {
        println!("input: {}", trace.input());
        if trace.word().is_empty() {
            println!("word: (empty; the input is already the base point)");
        } else {
            println!("word:");
            for (k, op) in trace.word().ops.iter().enumerate() {
                println!("  {}. {}", k + 1, op);
            }
            println!("checkpoints:");
            for (k, v) in trace.checkpoints().iter().enumerate() {
                println!("  {}. {}", k + 1, v);
            }
        }
        println!("verified: {}", verified);
    }
    Ok(if verified {
        ExitCode::SUCCESS
    } else {
        ExitCode::from(1)
    })
}

fn point_json(v: &murthy::QPoint) -> serde_json::Value {
    serde_json::json!({
        "s": v.s().to_string(),
        "a": polys_json(v.a()),
        "b": polys_json(v.b()),
    })
}

fn cmd_enumerate(n: usize, q: u64) -> Result<ExitCode, Error> {
    let clock = Instant::now();
    let report = enumeration_report(n, q)?;
    let wall_ms = clock.elapsed().as_millis();
    println!("n\tq\tpoints\torbits\tmax_word\twall_ms");
    println!(
        "{}\t{}\t{}\t{}\t{}\t{}",
        report.n, report.q, report.points, report.orbits, report.max_word_length, wall_ms
    );
    Ok(ExitCode::SUCCESS)
}

fn cmd_homotopy_check(file: &PathBuf) -> Result<ExitCode, Error> {
    let text = std::fs::read_to_string(file)?;
    let witnesses = files::witnesses_from_json(&text)?;
    if witnesses.is_empty() {
        return Err(Error::Verification("the file contains no witnesses".to_string()));
    }
    for (k, w) in witnesses.iter().enumerate() {
        println!(
            "witness {}: valid over {} (parameter {})",
            k + 1,
            w.start().ring(),
            w.parameter()
        );
    }
    println!(
        "ok: {} witness(es) from {} to {}",
        witnesses.len(),
        witnesses.first().unwrap().start(),
        witnesses.last().unwrap().end()
    );
    Ok(ExitCode::SUCCESS)
}
