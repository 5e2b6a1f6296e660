//! Bounded acceptance run. Prints one line per criterion and exits non-zero
//! if any criterion fails.

use std::process::{Command, ExitCode, Stdio};
use std::time::Instant;

use quadsum::descent::{builtin_rules, validate_rule};
use quadsum::forms::{exception_set, kronecker_symbol, KnownSet, TernaryForm};
use quadsum::genus::{genus_fixture_check, ratio_check, GenusClassSet, Provenance};
use quadsum::tuples::{is_representable, term};
use quadsum::verify::{
    full_suite, ratio_checks, verify_all_tuples, verify_descent, verify_eight_n_two, verify_exception_sets,
    verify_genus_fixtures, verify_identities, verify_lemmas, verify_pentagonal_identity, FixtureDatabase,
    RunReport, SuiteParams,
};

type Outcome = Result<String, String>;
type Criterion = (&'static str, fn() -> Outcome);

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn report_ok(r: &RunReport) -> Result<(), String> {
    match r.checks.iter().find(|c| c.status != quadsum::verify::Status::Pass) {
        None => Ok(()),
        Some(c) => Err(format!("{} failed: {:?}", c.id, c.counterexample)),
    }
}

fn shards() -> usize {
    rayon::current_num_threads()
}

/// Plain triple loop count of `f(v) = n`.
fn brute_count(f: &TernaryForm, n: i64, r: i64) -> u64 {
    let mut c = 0;
    for x in -r..=r {
        for y in -r..=r {
            for z in -r..=r {
                if f.evaluate([x, y, z]) == n as i128 {
                    c += 1;
                }
            }
        }
    }
    c
}

fn universality() -> Outcome {
    let db = FixtureDatabase::builtin();
    let tuples = db.tuples();
    ensure(tuples.len() == 44, || format!("expected 44 tuples, found {}", tuples.len()))?;
    let r = verify_all_tuples(db, 1_000_000, shards());
    report_ok(&r)?;
    // witness search is independent of the bitset sieve
    for (_, t) in &tuples {
        for n in (0..1_000_000u64).step_by(99_991) {
            let w = is_representable(t, n)
                .map_err(|e| e.to_string())?
                .ok_or_else(|| format!("{t}: no witness for {n}"))?;
            ensure(t.evaluate(w).map_err(|e| e.to_string())? == n as i64, || format!("{t}: bad witness at {n}"))?;
        }
    }
    Ok("44 tuples, zero exceptions for n ≤ 10⁶".into())
}

fn exception_sets() -> Outcome {
    let db = FixtureDatabase::builtin();
    report_ok(&verify_exception_sets(db, 100_000))?;
    // membership by direct search on a prefix
    for set in KnownSet::ALL {
        let (a, b, c) = set.coefficients();
        let members = exception_set(a, b, c, 3_000).map_err(|e| e.to_string())?.members;
        for n in 0..=3_000u64 {
            let mut hit = false;
            'outer: for x in 0..=55u64 {
                for y in 0..=55u64 {
                    let s = a * x * x + b * y * y;
                    if s > n {
                        break;
                    }
                    let rest = n - s;
                    if rest % c == 0 {
                        let q = rest / c;
                        let z = (q as f64).sqrt() as u64;
                        if (z.saturating_sub(1)..=z + 1).any(|z| z * z == q) {
                            hit = true;
                            break 'outer;
                        }
                    }
                }
            }
            ensure(hit != members.contains(&n), || format!("{set}: disagreement at {n}"))?;
        }
    }
    Ok("E111, E149, E1510, E236 equal their closed forms up to 10⁵".into())
}

fn identities() -> Outcome {
    let db = FixtureDatabase::builtin();
    let r = verify_identities(db);
    ensure(r.checks.len() >= 14, || format!("only {} rules", r.checks.len()))?;
    report_ok(&r)?;
    let mut bad = builtin_rules().get("R4.2").map_err(|e| e.to_string())?.clone();
    bad.matrix[1][2] += num_rational::Ratio::from_integer(1);
    ensure(validate_rule(&bad).is_err(), || "corrupted rule still validates".into())?;
    Ok(format!("{} rules validated exactly; corrupted control rejected", r.checks.len()))
}

fn descent() -> Outcome {
    let r = verify_descent(1_000, 100_000, 10_000);
    report_ok(&r)?;
    let starts = r.checks[0].params.get("starts").cloned().unwrap_or_default();
    Ok(format!("{starts} starting representations for n ≤ 10³; binary descents for w ≤ 10⁵"))
}

fn genus() -> Outcome {
    let expected = [45, 75, 30, 42, 49, 441, 98, 63, 15, 90, 450, 32];
    let outcomes = genus_fixture_check(None);
    ensure(outcomes.len() == 12, || format!("{} fixtures", outcomes.len()))?;
    for (o, &det) in outcomes.iter().zip(&expected) {
        ensure(o.pass, || format!("{}: {:?}", o.name, o.detail))?;
        ensure(o.determinant == det, || format!("{}: determinant {} ≠ {det}", o.name, o.determinant))?;
        let want = if det == 32 { 3 } else { 2 };
        ensure(o.closure_classes == want, || format!("{}: {} classes", o.name, o.closure_classes))?;
    }
    report_ok(&verify_genus_fixtures(None))?;
    Ok("12 genera: determinants, inequivalence and closure class counts match".into())
}

fn ratio() -> Outcome {
    let f1: TernaryForm = "diag(1,3,21)".parse().map_err(|e: quadsum::Error| e.to_string())?;
    let f2: TernaryForm = "1,6,12,-6,0,0".parse().map_err(|e: quadsum::Error| e.to_string())?;
    for f in [&f1, &f2] {
        ensure(brute_count(f, 25, 8) == 14, || format!("r(25, {f}) ≠ 14"))?;
        ensure(brute_count(f, 1, 3) == 2, || format!("r(1, {f}) ≠ 2"))?;
    }
    let cs = GenusClassSet::from_forms(&[f1, f2], Provenance::Fixture { name: "det-63".into() })
        .map_err(|e| e.to_string())?;
    let r = ratio_check(&cs, 1, 5).map_err(|e| e.to_string())?;
    ensure(r.pass && r.lhs == num_rational::Ratio::from_integer(7) && r.rhs == 7, || format!("{r:?}"))?;
    let symbol = kronecker_symbol(-7, 5).map_err(|e| e.to_string())? as i64;
    let sum = (brute_count(&f1, 25, 8) + brute_count(&f2, 25, 8)) as i64;
    ensure(sum == 4 * (5 + 1 - symbol), || format!("r(25, f₁) + r(25, f₂) = {sum}"))?;
    let all = ratio_checks(FixtureDatabase::builtin());
    report_ok(&all)?;
    Ok(format!("det-63 p=5 ratio 7 with r(25)=14, r(1)=2; {} ratio/aggregate checks for p < 30", all.checks.len()))
}

fn lemma_balance() -> Outcome {
    let mut checked = 0;
    for n in 0..=2_000i64 {
        let t = 8 * n + 1;
        let s = (t as f64).sqrt() as i64;
        if s * s == t {
            continue;
        }
        let (mut c0, mut c2) = (0u64, 0u64);
        for x in -s..=s {
            for y in -s..=s {
                let rest = t - x * x - y * y;
                if rest < 0 {
                    continue;
                }
                let z = (rest as f64).sqrt() as i64;
                let zs = if z * z == rest { if z == 0 { 1 } else { 2 } } else { 0 };
                match x.rem_euclid(4) {
                    0 => c0 += zs,
                    2 => c2 += zs,
                    _ => {}
                }
            }
        }
        ensure(c0 == c2 && c0 > 0, || format!("n={n}: {c0} vs {c2}"))?;
        if n == 2 {
            ensure(c0 == 16, || format!("n=2 gives {c0}"))?;
        }
        checked += 1;
    }
    report_ok(&verify_lemmas(2_000, shards()))?;
    Ok(format!("{checked} values of n ≤ 2000 with equal positive counts"))
}

fn eight_n_two() -> Outcome {
    let r = verify_eight_n_two(100_000, 1_000, shards());
    report_ok(&r)?;
    // small spinor instances by plain search
    let f3: TernaryForm = "1,4,9,-4,0,0".parse().map_err(|e: quadsum::Error| e.to_string())?;
    for p in [3i64, 7, 11, 19, 23, 31, 43, 47] {
        let target = 2 * p * p;
        let b = ((2 * target) as f64).sqrt() as i64 + 1;
        let found = (-b..=b).any(|x| {
            (-b..=b).any(|y| {
                (-b..=b).any(|z| {
                    f3.evaluate([x, y, z]) == target as i128 && num_integer::gcd(num_integer::gcd(x, y), z) == 1
                })
            })
        });
        ensure(found, || format!("no primitive representation of 2·{p}²"))?;
    }
    Ok("8n+2 for n ≤ 10⁵; spinor instances for p ≤ 10³".into())
}

fn pentagonal() -> Outcome {
    report_ok(&verify_pentagonal_identity(1_000_000))?;
    let mut lhs = vec![false; 2_001];
    let mut rhs = vec![false; 2_001];
    let vals = |a, b| -> Vec<i64> { (-60..=60).map(|x| term(a, b, x).unwrap()).filter(|&v| v <= 2_000).collect() };
    let (p3, p5) = (vals(1, 1), vals(3, -1));
    for &u in &p3 {
        for &v in &p5 {
            if u + v <= 2_000 {
                lhs[(u + v) as usize] = true;
            }
        }
    }
    for &u in &p5 {
        for &v in &p5 {
            if u + 3 * v <= 2_000 {
                rhs[(u + 3 * v) as usize] = true;
            }
        }
    }
    ensure(lhs == rhs, || "direct comparison differs below 2000".into())?;
    Ok("set equality up to 10⁶".into())
}

fn small_params(jobs: usize) -> SuiteParams {
    SuiteParams {
        tuple_limit: 20_000,
        exception_limit: 5_000,
        lemma_limit: 5_000,
        eight_n_two_limit: 5_000,
        spinor_limit: 200,
        descent_n_limit: 40,
        binary_descent_limit: 5_000,
        lagrange_limit: 500,
        pentagonal_limit: 20_000,
        jobs,
    }
}

fn determinism() -> Outcome {
    let db = FixtureDatabase::builtin();
    let run = |jobs: usize, cache: Option<&std::path::Path>| -> Result<(String, String), String> {
        let pool = rayon::ThreadPoolBuilder::new().num_threads(jobs).build().map_err(|e| e.to_string())?;
        let r = pool.install(|| full_suite(db, &small_params(jobs), cache)).without_timing();
        Ok((r.to_json(), r.to_csv().map_err(|e| e.to_string())?))
    };
    let base = run(1, None)?;
    ensure(base == run(1, None)?, || "repeat run differs".into())?;
    for jobs in [2, 8] {
        ensure(base == run(jobs, None)?, || format!("jobs={jobs} differs"))?;
    }
    let dir = tempfile::tempdir().map_err(|e| e.to_string())?;
    ensure(base == run(4, Some(dir.path()))?, || "cold cache differs".into())?;
    ensure(base == run(4, Some(dir.path()))?, || "warm cache differs".into())?;

    let exe = env!("CARGO_BIN_EXE_quadsum");
    let mut outputs = Vec::new();
    for jobs in ["1", "3"] {
        let out = dir.path().join(format!("report-{jobs}.json"));
        let status = Command::new(exe)
            .args(["report", "--format", "json", "--no-timing", "--tuple-limit", "5000", "--lemma-limit", "2000"])
            .args(["--jobs", jobs, "--out"])
            .arg(&out)
            .env("QUADSUM_CACHE_DIR", dir.path())
            .stderr(Stdio::null())
            .status()
            .map_err(|e| e.to_string())?;
        ensure(status.success(), || format!("cli exited with {status}"))?;
        outputs.push(std::fs::read(&out).map_err(|e| e.to_string())?);
    }
    ensure(outputs[0] == outputs[1], || "cli reports differ across --jobs".into())?;
    Ok("identical JSON and CSV across repeats, jobs 1/2/4/8 and cold/warm cache".into())
}

fn main() -> ExitCode {
    let criteria: [Criterion; 10] = [
        ("universality sweep", universality),
        ("exception-set formulas", exception_sets),
        ("identity suite", identities),
        ("descent", descent),
        ("genus fixtures", genus),
        ("genus-average ratio", ratio),
        ("balanced three-square counts", lemma_balance),
        ("8n+2 end-to-end", eight_n_two),
        ("pentagonal set identity", pentagonal),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (i, (name, run)) in criteria.iter().enumerate() {
        let started = Instant::now();
        let outcome = run();
        let secs = started.elapsed().as_secs_f64();
        match outcome {
            Ok(msg) => println!("criterion {:>2} PASS  {name} ({secs:.1}s): {msg}", i + 1),
            Err(msg) => {
                failed += 1;
                println!("criterion {:>2} FAIL  {name} ({secs:.1}s): {msg}", i + 1);
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", criteria.len() - failed, criteria.len());
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
