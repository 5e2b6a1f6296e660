use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use quadsum::descent::{builtin_rules, descend_odd_1_5_10, descend_odd_binary, GramForm, OddBinaryKind};
use quadsum::forms::{count, exception_set, representations, RepConstraint, Representation, TernaryForm};
use quadsum::genus::{cached_neighbor_class_set, neighbor_class_set, ratio_check, CACHE_ENV};
use quadsum::tuples::{candidate_sieve, SumTuple};
use quadsum::verify::{
    full_suite, verify_all_tuples, verify_eight_n_two, verify_lemmas, verify_tuple, FixtureDatabase,
    ReportFormat, RunReport, SuiteParams,
};
use quadsum::Error;

#[derive(Parser)]
#[command(name = "quadsum", version, about = "Bounded verification of universal sums and ternary forms")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args, Clone)]
struct Output {
    /// Report format.
    #[arg(long, default_value = "json", value_parser = parse_format)]
    format: ReportFormat,
    /// Write the report here instead of stdout.
    #[arg(long)]
    out: Option<PathBuf>,
    /// Leave the elapsed time out of the report.
    #[arg(long)]
    no_timing: bool,
}

#[derive(Args, Clone, Copy)]
struct Jobs {
    /// Worker threads (0 = one per core).
    #[arg(long, default_value_t = 0)]
    jobs: usize,
}

#[derive(Subcommand)]
enum Command {
    /// List the representations of n by a form.
    Represent {
        form: TernaryForm,
        n: i64,
        /// e.g. "x=odd;z=1,7 mod 8;primitive"
        #[arg(long)]
        constraint: Option<RepConstraint>,
        /// Print only the count.
        #[arg(long)]
        count: bool,
    },
    /// Integers up to the limit not represented by ax²+by²+cz².
    Exceptions {
        a: u64,
        b: u64,
        c: u64,
        #[arg(long)]
        limit: u64,
    },
    /// Universality of one tuple up to the limit.
    VerifyTuple {
        tuple: SumTuple,
        #[arg(long)]
        limit: u64,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        output: Output,
    },
    /// Universality of all 44 fixture tuples.
    VerifyTheorems {
        #[arg(long, default_value_t = 1_000_000)]
        limit: u64,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        output: Output,
    },
    /// The auxiliary representation facts.
    VerifyLemmas {
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        output: Output,
    },
    /// 8n+2 = x²+y²+8z² with x ≡ ±1 (mod 8), with the case constructions.
    VerifyThm14 {
        #[arg(long, default_value_t = 100_000)]
        limit: u64,
        #[arg(long, default_value_t = 1_000)]
        spinor_limit: i64,
        #[command(flatten)]
        jobs: Jobs,
        #[command(flatten)]
        output: Output,
    },
    /// Neighbor-closure class set of the genus of a form.
    Genus {
        form: TernaryForm,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<i64>,
    },
    /// r(gen, m p²) / r(gen, m) against p + 1 − (−m·det / p).
    RatioCheck {
        form: TernaryForm,
        #[arg(long, default_value_t = 1)]
        m: i64,
        #[arg(long, value_delimiter = ',', required = true)]
        primes: Vec<i64>,
        /// Primes for the neighbor closure (default: the fixture's, else the
        /// three smallest odd primes coprime to the determinant).
        #[arg(long, value_delimiter = ',')]
        closure_primes: Option<Vec<i64>>,
    },
    /// Apply a rewrite rule, or run an odd-descent driver.
    Descend {
        /// Rule id, e.g. R2.1+ or RL4.2.
        #[arg(long, required_unless_present = "driver", conflicts_with = "driver")]
        rule: Option<String>,
        /// Run the odd-descent driver for the form instead.
        #[arg(long)]
        driver: bool,
        /// Divide the rule output by this integer.
        #[arg(long, default_value_t = 1)]
        divisor: i64,
        form: String,
        /// Comma-separated coordinates.
        #[arg(allow_hyphen_values = true)]
        vector: String,
    },
    /// Tuples with a ≤ a_max whose sum represents every n ≤ limit.
    Sieve {
        #[arg(long)]
        a_max: i64,
        #[arg(long)]
        limit: u64,
    },
    /// Run the full suite (or convert an existing JSON report) and write it.
    Report {
        #[arg(long, value_parser = parse_format)]
        format: ReportFormat,
        #[arg(long)]
        out: PathBuf,
        /// Convert this JSON report instead of running the suite.
        #[arg(long)]
        input: Option<PathBuf>,
        #[arg(long)]
        tuple_limit: Option<u64>,
        #[arg(long)]
        lemma_limit: Option<u64>,
        #[arg(long)]
        no_timing: bool,
        #[command(flatten)]
        jobs: Jobs,
    },
}

fn parse_format(s: &str) -> Result<ReportFormat, String> {
    s.parse().map_err(|e: Error| e.to_string())
}

/// Writes to stdout; a closed pipe on the reader side is not an error.
fn write_stdout(s: &str) -> quadsum::Result<()> {
    match std::io::stdout().lock().write_all(s.as_bytes()) {
        Err(e) if e.kind() != std::io::ErrorKind::BrokenPipe => Err(Error::Io {
            path: "<stdout>".into(),
            source: e,
        }),
        _ => Ok(()),
    }
}

fn print_json(value: &impl Serialize) -> quadsum::Result<()> {
    write_stdout(&(serde_json::to_string_pretty(value)? + "\n"))
}

fn parse_vector(s: &str) -> quadsum::Result<Vec<i64>> {
    s.trim_matches(|c| c == '(' || c == ')')
        .split(',')
        .map(|p| {
            p.trim().parse().map_err(|e: std::num::ParseIntError| Error::Parse {
                kind: "vector",
                input: s.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

/// A ternary literal, or `diag(a,c)` for a binary diagonal form.
fn parse_gram(s: &str) -> quadsum::Result<GramForm> {
    if let Ok(f) = s.parse::<TernaryForm>() {
        return Ok(GramForm::ternary(&f));
    }
    let inner = s
        .trim()
        .strip_prefix("diag(")
        .and_then(|r| r.strip_suffix(')'))
        .ok_or_else(|| Error::Parse {
            kind: "form",
            input: s.to_string(),
            reason: "expected a ternary literal or diag(a,c)".into(),
        })?;
    let entries: Vec<i128> = parse_vector(inner)?.into_iter().map(i128::from).collect();
    if entries.len() != 2 || entries.iter().any(|&e| e <= 0) {
        return Err(Error::Parse {
            kind: "form",
            input: s.to_string(),
            reason: "binary diagonal needs two positive entries".into(),
        });
    }
    Ok(GramForm::diag(&entries))
}

fn with_jobs<T: Send>(jobs: Jobs, f: impl FnOnce() -> T + Send) -> quadsum::Result<T> {
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.jobs)
        .build()
        .map_err(|e| Error::Precondition(format!("thread pool: {e}")))?;
    Ok(pool.install(f))
}

fn shards(jobs: Jobs) -> usize {
    if jobs.jobs == 0 {
        rayon::current_num_threads()
    } else {
        jobs.jobs
    }
}

fn emit(mut report: RunReport, started: Instant, output: &Output) -> quadsum::Result<bool> {
    if !output.no_timing {
        report.elapsed_ms = Some(started.elapsed().as_millis() as u64);
    }
    match &output.out {
        Some(path) => report.write(output.format, path)?,
        None => write_stdout(&report.render(output.format)?)?,
    }
    summarize(&report);
    Ok(report.passed())
}

fn summarize(report: &RunReport) {
    use quadsum::verify::Status;
    eprintln!(
        "{}: {} pass, {} fail, {} skipped",
        report.command,
        report.count(Status::Pass),
        report.count(Status::Fail),
        report.count(Status::Skipped)
    );
}

fn cache_dir() -> Option<PathBuf> {
    std::env::var_os(CACHE_ENV).filter(|v| !v.is_empty()).map(PathBuf::from)
}

fn default_closure_primes(det: i128) -> Vec<i64> {
    quadsum::arith::primes_up_to(1_000)
        .into_iter()
        .map(|p| p as i64)
        .filter(|&p| p > 2 && det % p as i128 != 0)
        .take(3)
        .collect()
}

fn run(cli: Cli) -> quadsum::Result<bool> {
    let started = Instant::now();
    let db = FixtureDatabase::builtin();
    match cli.command {
        Command::Represent {
            form,
            n,
            constraint,
            count: only_count,
        } => {
            let c = constraint.unwrap_or_else(RepConstraint::none);
            if only_count {
                write_stdout(&format!("{}\n", count(&form, n, &c)))?;
            } else {
                let reps: Vec<Representation> = representations(&form, n, &c);
                print_json(&serde_json::json!({
                    "form": form,
                    "n": n,
                    "constraint": c.to_string(),
                    "count": reps.len(),
                    "representations": reps.iter().map(|r| r.coords()).collect::<Vec<_>>(),
                }))?;
            }
            Ok(true)
        }
        Command::Exceptions { a, b, c, limit } => {
            print_json(&exception_set(a, b, c, limit)?)?;
            Ok(true)
        }
        Command::VerifyTuple {
            tuple,
            limit,
            jobs,
            output,
        } => {
            let check = with_jobs(jobs, || verify_tuple(&tuple, "tuple", limit, shards(jobs)))?;
            emit(RunReport::new("verify-tuple", vec![check]), started, &output)
        }
        Command::VerifyTheorems { limit, jobs, output } => {
            let r = with_jobs(jobs, || verify_all_tuples(db, limit, shards(jobs)))?;
            emit(r, started, &output)
        }
        Command::VerifyLemmas { limit, jobs, output } => {
            let r = with_jobs(jobs, || verify_lemmas(limit, shards(jobs)))?;
            emit(r, started, &output)
        }
        Command::VerifyThm14 {
            limit,
            spinor_limit,
            jobs,
            output,
        } => {
            let r = with_jobs(jobs, || verify_eight_n_two(limit, spinor_limit, shards(jobs)))?;
            emit(r, started, &output)
        }
        Command::Genus { form, primes } => {
            let cs = match cache_dir() {
                Some(dir) => cached_neighbor_class_set(&dir, &form, &primes)?.0,
                None => neighbor_class_set(&form, &primes)?,
            };
            print_json(&cs)?;
            Ok(true)
        }
        Command::RatioCheck {
            form,
            m,
            primes,
            closure_primes,
        } => {
            let closure = closure_primes
                .or_else(|| db.genus(&form).map(|g| g.primes.clone()))
                .unwrap_or_else(|| default_closure_primes(form.determinant()));
            let cs = match cache_dir() {
                Some(dir) => cached_neighbor_class_set(&dir, &form, &closure)?.0,
                None => neighbor_class_set(&form, &closure)?,
            };
            let results = primes
                .iter()
                .map(|&p| ratio_check(&cs, m, p))
                .collect::<quadsum::Result<Vec<_>>>()?;
            print_json(&results)?;
            Ok(results.iter().all(|r| r.pass))
        }
        Command::Descend {
            rule,
            driver,
            divisor,
            form,
            vector,
        } => {
            let v = parse_vector(&vector)?;
            if driver {
                return descend_driver(&form, &v);
            }
            let rule = builtin_rules().get(rule.as_deref().unwrap_or_default())?;
            let g = parse_gram(&form)?;
            if g != rule.source {
                return Err(Error::Precondition(format!("{form} is not the source form of rule {}", rule.id)));
            }
            let out = rule.apply_divided(&v, divisor)?;
            print_json(&serde_json::json!({
                "rule": rule.id,
                "identity": rule.identity,
                "input": v,
                "input_value": rule.source.evaluate(&v),
                "output": out,
                "output_value": rule.target.evaluate(&out),
                "scale": rule.scale.to_string(),
                "divisor": divisor,
            }))?;
            Ok(true)
        }
        Command::Sieve { a_max, limit } => {
            let found = candidate_sieve(a_max, limit)?;
            print_json(&found)?;
            Ok(true)
        }
        Command::Report {
            format,
            out,
            input,
            tuple_limit,
            lemma_limit,
            no_timing,
            jobs,
        } => {
            let mut report = match input {
                Some(path) => RunReport::read_json(&path)?,
                None => {
                    let mut p = SuiteParams {
                        jobs: shards(jobs),
                        ..SuiteParams::default()
                    };
                    if let Some(l) = tuple_limit {
                        p.tuple_limit = l;
                    }
                    if let Some(l) = lemma_limit {
                        p.lemma_limit = l;
                    }
                    let cache = cache_dir();
                    let mut r = with_jobs(jobs, || full_suite(db, &p, cache.as_deref()))?;
                    r.elapsed_ms = Some(started.elapsed().as_millis() as u64);
                    r
                }
            };
            if no_timing {
                report.elapsed_ms = None;
            }
            report.write(format, &out)?;
            summarize(&report);
            Ok(report.passed())
        }
    }
}

fn descend_driver(form: &str, v: &[i64]) -> quadsum::Result<bool> {
    if let (Ok(f), [x, y, z]) = (form.parse::<TernaryForm>(), v) {
        if f != TernaryForm::diag(1, 5, 10)? {
            return Err(Error::Precondition(format!("no odd-descent driver for {f}")));
        }
        let w = f.evaluate([*x, *y, *z]) as i64;
        let start = Representation {
            x: *x,
            y: *y,
            z: *z,
            value: w,
        };
        print_json(&descend_odd_1_5_10(w, &start)?)?;
        return Ok(true);
    }
    let kind: OddBinaryKind = form.parse()?;
    let [u, v] = v else {
        return Err(Error::Precondition("binary descent takes two coordinates".into()));
    };
    let (s, t) = descend_odd_binary(kind, *u, *v)?;
    print_json(&serde_json::json!({"kind": kind.to_string(), "input": [u, v], "output": [s, t]}))?;
    Ok(true)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            match e {
                Error::Parse { .. } | Error::Unknown { .. } | Error::Precondition(_) | Error::InvalidTuple(..) => {
                    ExitCode::from(2)
                }
                _ => ExitCode::from(1),
            }
        }
    }
}
