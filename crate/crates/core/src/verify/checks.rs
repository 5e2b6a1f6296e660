use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::db::FixtureDatabase;
use super::report::{CheckResult, RunReport};
use crate::arith::{is_square, isqrt, primes_up_to};
use crate::descent::{
    builtin_rules, descend_odd_1_5_10, descend_odd_binary, lagrange_even_odd_decomposition, validate_rule,
    OddBinaryKind,
};
use crate::error::{Error, Result};
use crate::forms::{
    exception_formula_check, first_representation, representations, DiagBinary, Parity, RepConstraint,
    TernaryForm,
};
use crate::genus::{
    check_fixture, genus_fixtures, ratio_check, spinor_instance_check, GenusClassSet, Provenance,
};
use crate::sieve::{sumset_of, Bitset};
use crate::tuples::{pentagonal_identity_check, verify_universal, SumTuple};

/// Bounds for a full verification run.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SuiteParams {
    pub tuple_limit: u64,
    pub exception_limit: u64,
    pub lemma_limit: u64,
    pub eight_n_two_limit: u64,
    pub spinor_limit: i64,
    pub descent_n_limit: i64,
    pub binary_descent_limit: i64,
    pub lagrange_limit: i64,
    pub pentagonal_limit: u64,
    pub jobs: usize,
}

impl Default for SuiteParams {
    fn default() -> Self {
        SuiteParams {
            tuple_limit: 1_000_000,
            exception_limit: 100_000,
            lemma_limit: 100_000,
            eight_n_two_limit: 100_000,
            spinor_limit: 1_000,
            descent_n_limit: 1_000,
            binary_descent_limit: 100_000,
            lagrange_limit: 10_000,
            pentagonal_limit: 1_000_000,
            jobs: 1,
        }
    }
}

pub fn verify_tuple(t: &SumTuple, group: &str, limit: u64, shards: usize) -> CheckResult {
    let id = format!("tuple:({t})");
    let res = match verify_universal(t, limit, shards) {
        Ok(r) if r.passed() => CheckResult::pass(group, id),
        Ok(r) => CheckResult::fail(
            group,
            id,
            json!({"n": r.exceptions[0], "exceptions": r.exceptions.iter().take(20).collect::<Vec<_>>()}),
        ),
        Err(e) => CheckResult::fail(group, id, json!({"error": e.to_string()})),
    };
    res.param("limit", limit)
}

/// Universality of every fixture tuple up to `limit`.
pub fn verify_all_tuples(db: &FixtureDatabase, limit: u64, shards: usize) -> RunReport {
    let checks = db
        .tuples()
        .par_iter()
        .map(|(group, t)| verify_tuple(t, group, limit, shards))
        .collect();
    RunReport::new("verify-theorems", checks)
}

fn squares_times(k: usize, bound: usize, keep: impl Fn(usize) -> bool) -> Vec<usize> {
    (0..)
        .map(|x: usize| (x, k * x * x))
        .take_while(|&(_, v)| v <= bound)
        .filter(|&(x, _)| keep(x))
        .map(|(_, v)| v)
        .collect()
}

/// First `n` in `ns` with `a·n + b` missing from `reach`.
fn first_missing(reach: &Bitset, ns: impl Iterator<Item = u64>, a: u64, b: u64) -> Option<u64> {
    ns.into_iter().find(|&n| !reach.get((a * n + b) as usize))
}

fn sieve_check(
    id: &str,
    coeffs: [usize; 3],
    first_parity: Option<usize>,
    (a, b): (u64, u64),
    ns: std::ops::RangeInclusive<u64>,
    shards: usize,
) -> CheckResult {
    let bound = (a * ns.end() + b) as usize;
    let sets: Vec<Vec<usize>> = coeffs
        .iter()
        .enumerate()
        .map(|(i, &k)| match (i, first_parity) {
            (0, Some(p)) => squares_times(k, bound, |x| x % 2 == p),
            _ => squares_times(k, bound, |_| true),
        })
        .collect();
    let reach = sumset_of(&sets, bound, shards);
    let lo = *ns.start();
    let hi = *ns.end();
    CheckResult::from_outcome(
        "lemmas",
        id,
        first_missing(&reach, ns, a, b).map(|n| json!({"n": n, "value": a * n + b})),
    )
    .param("n_min", lo)
    .param("n_max", hi)
}

/// `r₂(k)` for `0 ≤ k ≤ bound`.
fn two_square_counts(bound: usize) -> Vec<u32> {
    let mut r2 = vec![0u32; bound + 1];
    let s = isqrt(bound as i128) as i64;
    for y in -s..=s {
        let rest = bound as i64 - y * y;
        let t = isqrt(rest as i128) as i64;
        for z in -t..=t {
            r2[(y * y + z * z) as usize] += 1;
        }
    }
    r2
}

/// Counts of `x² + y² + z² = 8n + 1` with `x ≡ 0` and with `x ≡ 2 (mod 4)`.
fn balanced_counts(r2: &[u32], n: u64) -> (u64, u64) {
    let target = 8 * n as i64 + 1;
    let s = isqrt(target as i128) as i64;
    let (mut c0, mut c2) = (0u64, 0u64);
    for x in -s..=s {
        let k = target - x * x;
        match x.rem_euclid(4) {
            0 => c0 += r2[k as usize] as u64,
            2 => c2 += r2[k as usize] as u64,
            _ => {}
        }
    }
    (c0, c2)
}

/// The auxiliary representation facts, each for all `n ≤ limit`.
pub fn verify_lemmas(limit: u64, shards: usize) -> RunReport {
    let mut checks = vec![
        sieve_check("12n+5 = x²+y²+36z²", [1, 1, 36], None, (12, 5), 0..=limit, shards),
        sieve_check("6n+1 = x²+3y²+6z², x even", [1, 3, 6], Some(0), (6, 1), 1..=limit.max(1), shards),
        sieve_check("6n+1 = x²+3y²+6z², x odd", [1, 3, 6], Some(1), (6, 1), 1..=limit.max(1), shards),
        sieve_check("6n+5 = x²+y²+10z²", [1, 1, 10], None, (6, 5), 0..=limit, shards),
    ];
    let r2 = two_square_counts(8 * limit as usize + 1);
    let outcomes: Vec<(u64, Option<(u64, u64)>)> = (0..=limit)
        .into_par_iter()
        .map(|n| {
            if is_square(8 * n as i128 + 1) {
                (n, None)
            } else {
                (n, Some(balanced_counts(&r2, n)))
            }
        })
        .collect();
    let skipped = outcomes.iter().filter(|(_, c)| c.is_none()).count();
    let bad = outcomes
        .iter()
        .find_map(|&(n, c)| c.filter(|&(c0, c2)| c0 != c2 || c0 == 0).map(|(c0, c2)| (n, c0, c2)));
    checks.push(
        CheckResult::from_outcome(
            "lemmas",
            "8n+1 = x²+y²+z²: #{x≡0 (4)} = #{x≡2 (4)} > 0",
            bad.map(|(n, c0, c2)| json!({"n": n, "count_0_mod_4": c0, "count_2_mod_4": c2})),
        )
        .param("n_max", limit)
        .param("skipped_squares", skipped),
    );
    RunReport::new("verify-lemmas", checks)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EightNTwoCase {
    /// `n` is not of the form `m(m+1)`.
    NotTwiceTriangular,
    /// `n = m(m+1)` and `2m+1` has no prime factor `≡ 3 (mod 4)`.
    TwoSquares,
    /// `n = m(m+1)` and `2m+1` has a prime factor `≡ 3 (mod 4)`.
    FourSquares,
}

/// `8n + 2 = a² + b² + 8c²` with `a ≡ ±1 (mod 8)`, built by the case's construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct EightNTwoWitness {
    pub n: u64,
    pub case: EightNTwoCase,
    pub triple: [i64; 3],
}

fn plus_minus_one_mod_8(a: i64) -> bool {
    matches!(a.rem_euclid(8), 1 | 7)
}

/// Orders `(a, b)` so the first is `≡ ±1 (mod 8)`.
fn pick_unit(a: i64, b: i64, c: i64, n: u64, what: &str) -> Result<[i64; 3]> {
    if plus_minus_one_mod_8(a) {
        Ok([a, b, c])
    } else if plus_minus_one_mod_8(b) {
        Ok([b, a, c])
    } else {
        Err(Error::Invariant(format!("{what}: neither {a} nor {b} is ±1 mod 8 (n={n})")))
    }
}

/// Constructs a witness for `8n + 2` following the three-way case split.
pub fn eight_n_two_witness(n: u64) -> Result<EightNTwoWitness> {
    let n_i = n as i64;
    let q2 = 4 * n as i128 + 1;
    let (case, triple) = if !is_square(q2) {
        let form = TernaryForm::diag(1, 1, 1)?;
        let c = RepConstraint::none()
            .parity(0, Parity::Odd)
            .parity(1, Parity::Even)
            .residues(2, 4, &[(2 * n_i - 2).rem_euclid(4)])?;
        let r = first_representation(&form, 4 * n_i + 1, &c)
            .ok_or_else(|| Error::Invariant(format!("4n+1 = {} has no balanced representation", 4 * n + 1)))?;
        let (x, y, z) = (r.x, r.y, r.z);
        (EightNTwoCase::NotTwiceTriangular, pick_unit(x + y, x - y, z / 2, n, "sum split")?)
    } else {
        let q = isqrt(q2) as i64;
        let m = (q - 1) / 2;
        let bad_prime = primes_up_to(q as u64)
            .into_iter()
            .map(|p| p as i64)
            .find(|&p| p % 4 == 3 && q % p == 0);
        match bad_prime {
            None if m % 4 == 0 => (EightNTwoCase::TwoSquares, [q, q, 0]),
            None => {
                let (u, v) = DiagBinary::new(1, 4)
                    .representations(q as i128)
                    .into_iter()
                    .find(|&(u, v)| u % 2 != 0 && v % 2 != 0)
                    .ok_or_else(|| Error::Invariant(format!("{q} is not u²+4v² with u, v odd")))?;
                let s = u * u - 4 * v * v;
                (EightNTwoCase::TwoSquares, pick_unit(s + 4 * u * v, s - 4 * u * v, 0, n, "two squares")?)
            }
            Some(p) => {
                let d = lagrange_even_odd_decomposition(p)?;
                let k = q / p;
                let [x, y2, z2] = d.triple.map(|t| t * k);
                let (y, z) = (y2 / 2, z2 / 2);
                (EightNTwoCase::FourSquares, pick_unit(x + 2 * y, x - 2 * y, z, n, "four squares")?)
            }
        }
    };
    let [a, b, c] = triple;
    let value = (a as i128).pow(2) + (b as i128).pow(2) + 8 * (c as i128).pow(2);
    if value != 8 * n as i128 + 2 || !plus_minus_one_mod_8(a) {
        return Err(Error::Invariant(format!("witness {triple:?} for n={n} is wrong")));
    }
    Ok(EightNTwoWitness { n, case, triple })
}

/// `8n + 2 = x² + y² + 8z²` with `x ≡ ±1 (mod 8)` for all `n ≤ limit`, the
/// case constructions on a sample, and the spinor instances up to `spinor_limit`.
pub fn verify_eight_n_two(limit: u64, spinor_limit: i64, shards: usize) -> RunReport {
    let group = "eight-n-two";
    let bound = (8 * limit + 2) as usize;
    let reach = sumset_of(
        &[
            squares_times(1, bound, |x| matches!(x % 8, 1 | 7)),
            squares_times(1, bound, |_| true),
            squares_times(8, bound, |_| true),
        ],
        bound,
        shards,
    );
    let mut checks = vec![CheckResult::from_outcome(
        group,
        "8n+2 = x²+y²+8z², x ≡ ±1 (mod 8)",
        first_missing(&reach, 0..=limit, 8, 2).map(|n| json!({"n": n})),
    )
    .param("n_max", limit)];

    let mut sample: Vec<u64> = (0..=limit.min(500)).collect();
    sample.extend((0..).map(|m: u64| m * (m + 1)).take_while(|&n| n <= limit).filter(|&n| n > 500));
    let witnesses: Vec<(u64, Result<EightNTwoWitness>)> =
        sample.par_iter().map(|&n| (n, eight_n_two_witness(n))).collect();
    let mut counts = [0usize; 3];
    let mut failure = None;
    for (n, w) in &witnesses {
        match w {
            Ok(w) => counts[w.case as usize] += 1,
            Err(e) if failure.is_none() => failure = Some(json!({"n": n, "error": e.to_string()})),
            Err(_) => {}
        }
    }
    checks.push(
        CheckResult::from_outcome(group, "case constructions", failure)
            .param("sampled", sample.len())
            .param("not_twice_triangular", counts[0])
            .param("two_squares", counts[1])
            .param("four_squares", counts[2]),
    );

    let spinor = spinor_instance_check(spinor_limit);
    checks.push(
        CheckResult::from_outcome(
            group,
            "2p² primitively by x²+4y²+9z²−4yz, p ≡ 3 (mod 4)",
            spinor.failures.first().map(|p| json!({"p": p})),
        )
        .param("p_max", spinor_limit)
        .param("primes", spinor.instances.len() + spinor.failures.len()),
    );
    RunReport::new("verify-thm14", checks)
}

/// Symbolic and residue-grid validation of every listed rule.
pub fn verify_identities(db: &FixtureDatabase) -> RunReport {
    let lib = builtin_rules();
    let checks = db
        .identities
        .iter()
        .map(|id| match lib.get(id) {
            Ok(rule) => CheckResult::from_outcome(
                "identities",
                format!("rule:{id}"),
                validate_rule(rule).err().map(|f| json!({"failure": f.to_string()})),
            )
            .param("scale", rule.scale.to_string())
            .param("conditions", rule.conditions.len()),
            Err(e) => CheckResult::fail("identities", format!("rule:{id}"), json!({"error": e.to_string()})),
        })
        .collect();
    RunReport::new("identities", checks)
}

/// Odd descent from every starting representation, binary descents for all
/// valid inputs, and the even-odd four-square splits.
pub fn verify_descent(n_limit: i64, binary_limit: i64, lagrange_limit: i64) -> RunReport {
    let group = "descent";
    let form = TernaryForm::diag(1, 5, 10).expect("positive");
    let odd = RepConstraint::none()
        .parity(0, Parity::Odd)
        .parity(1, Parity::Odd)
        .parity(2, Parity::Odd);
    let per_w: Vec<(usize, Option<serde_json::Value>)> = (0..=n_limit)
        .into_par_iter()
        .flat_map_iter(|n| [1i64, 3].map(|r| 40 * n + r * r + 15))
        .map(|w| {
            let bound = 2 + (w as f64).log(4.0).ceil() as usize;
            let starts = representations(&form, w, &RepConstraint::none());
            if first_representation(&form, w, &odd).is_none() {
                return (starts.len(), Some(json!({"w": w, "error": "no odd representation exists"})));
            }
            for s in &starts {
                match descend_odd_1_5_10(w, s) {
                    Ok(t) if t.rule_applications() <= bound => {}
                    Ok(t) => {
                        return (
                            starts.len(),
                            Some(json!({"w": w, "start": s.coords(), "steps": t.rule_applications()})),
                        )
                    }
                    Err(e) => return (starts.len(), Some(json!({"w": w, "start": s.coords(), "error": e.to_string()}))),
                }
            }
            (starts.len(), None)
        })
        .collect();
    let starts: usize = per_w.iter().map(|(c, _)| c).sum();
    let mut checks = vec![CheckResult::from_outcome(
        group,
        "40n+r²+15 by x²+5y²+10z², all odd",
        per_w.into_iter().find_map(|(_, f)| f),
    )
    .param("n_max", n_limit)
    .param("starts", starts)];

    for kind in OddBinaryKind::ALL {
        let f = kind.form();
        let ub = isqrt((binary_limit / f.a) as i128) as i64;
        let failure = (-ub..=ub).into_par_iter().find_map_first(|u| {
            let vb = isqrt(((binary_limit - f.a * u * u) / f.c) as i128) as i64;
            (-vb..=vb).find_map(|v| {
                let w = f.value(u, v);
                if w == 0 || w % 8 != kind.residue_mod_8() {
                    return None;
                }
                match descend_odd_binary(kind, u, v) {
                    Ok((s, t)) if f.value(s, t) == w && s % 2 != 0 && t % 2 != 0 => None,
                    Ok(out) => Some(json!({"input": [u, v], "output": [out.0, out.1]})),
                    Err(e) => Some(json!({"input": [u, v], "error": e.to_string()})),
                }
            })
        });
        checks.push(
            CheckResult::from_outcome(group, format!("odd binary descent {kind}"), failure).param("w_max", binary_limit),
        );
    }

    let primes: Vec<i64> = primes_up_to(lagrange_limit as u64)
        .into_iter()
        .map(|p| p as i64)
        .filter(|p| p % 4 == 3)
        .collect();
    let failure = primes.par_iter().find_map_first(|&p| match lagrange_even_odd_decomposition(p) {
        Ok(_) => None,
        Err(e) => Some(json!({"p": p, "error": e.to_string()})),
    });
    checks.push(
        CheckResult::from_outcome(group, "even-odd four-square split of p ≡ 3 (mod 4)", failure)
            .param("p_max", lagrange_limit)
            .param("primes", primes.len()),
    );
    RunReport::new("descent", checks)
}

pub fn verify_exception_sets(db: &FixtureDatabase, limit: u64) -> RunReport {
    let checks = db
        .exception_sets
        .iter()
        .map(|name| {
            let id = format!("exceptions:{name}");
            match exception_formula_check(name, limit) {
                Ok(r) if r.equal => CheckResult::pass("exceptions", id),
                Ok(r) => CheckResult::fail(
                    "exceptions",
                    id,
                    json!({"sieve_only": r.sieve_only, "formula_only": r.formula_only}),
                ),
                Err(e) => CheckResult::fail("exceptions", id, json!({"error": e.to_string()})),
            }
            .param("limit", limit)
        })
        .collect();
    RunReport::new("exceptions", checks)
}

pub fn verify_genus_fixtures(cache: Option<&Path>) -> RunReport {
    let checks = genus_fixtures()
        .par_iter()
        .map(|fx| {
            let o = check_fixture(fx, cache);
            let id = format!("genus:{}", o.name);
            let res = if o.pass {
                CheckResult::pass("genus", id)
            } else {
                CheckResult::fail("genus", id, serde_json::to_value(&o).expect("outcome serializes"))
            };
            res.param("determinant", o.determinant)
                .param("classes", o.closure_classes)
                .param("primes", &fx.primes)
        })
        .collect();
    RunReport::new("genus", checks)
}

/// Genus-average ratios and weighted class-count identities at every prime
/// below each entry's limit that is coprime to `2·m·det`.
pub fn ratio_checks(db: &FixtureDatabase) -> RunReport {
    let mut checks = Vec::new();
    for entry in &db.ratio_checks {
        let genus = db.genus(&entry.genus).expect("validated on load");
        let cs = match GenusClassSet::from_forms(
            &genus.forms,
            Provenance::Fixture {
                name: entry.genus.to_string(),
            },
        ) {
            Ok(cs) => cs,
            Err(e) => {
                checks.push(CheckResult::fail(
                    "ratio",
                    format!("ratio:{}", entry.genus),
                    json!({"error": e.to_string()}),
                ));
                continue;
            }
        };
        let primes: Vec<i64> = primes_up_to(entry.prime_limit as u64)
            .into_iter()
            .map(|p| p as i64)
            .filter(|&p| p > 2 && (2 * entry.m * cs.determinant) % p != 0)
            .collect();
        let results: Vec<Vec<CheckResult>> = primes
            .par_iter()
            .map(|&p| {
                let id = format!("ratio:{}:m={}:p={p}", entry.genus, entry.m);
                let ratio = match ratio_check(&cs, entry.m, p) {
                    Ok(r) if r.pass => CheckResult::pass("ratio", id),
                    Ok(r) => CheckResult::fail("ratio", id, json!({"lhs": r.lhs.to_string(), "rhs": r.rhs})),
                    Err(e) => CheckResult::fail("ratio", id, json!({"error": e.to_string()})),
                };
                let n = entry.m * p * p;
                let counts: Vec<u64> = cs
                    .classes
                    .iter()
                    .map(|c| crate::forms::count(&c.form, n, &RepConstraint::none()))
                    .collect();
                let lhs: i64 = counts.iter().zip(&entry.weights).map(|(&c, &w)| c as i64 * w).sum();
                let symbol = crate::forms::kronecker_symbol(-entry.m * cs.determinant, p).unwrap_or(0) as i64;
                let rhs = entry.factor * (p + 1 - symbol);
                let aggregate = CheckResult::from_outcome(
                    "ratio",
                    format!("aggregate:{}:m={}:p={p}", entry.genus, entry.m),
                    (lhs != rhs).then(|| json!({"counts": counts, "lhs": lhs, "rhs": rhs})),
                )
                .param("weights", &entry.weights)
                .param("factor", entry.factor);
                vec![ratio.param("n", n), aggregate.param("n", n)]
            })
            .collect();
        checks.extend(results.into_iter().flatten());
    }
    RunReport::new("ratio-check", checks)
}

pub fn verify_pentagonal_identity(limit: u64) -> RunReport {
    let id = "{p₃(x)+p₅(y)} = {p₅(x)+3p₅(y)}";
    let check = match pentagonal_identity_check(limit) {
        Ok(r) => CheckResult::from_outcome(
            "pentagonal",
            id,
            (!r.equal).then(|| json!({"lhs_only": r.lhs_only, "rhs_only": r.rhs_only})),
        ),
        Err(e) => CheckResult::fail("pentagonal", id, json!({"error": e.to_string()})),
    };
    RunReport::new("pentagonal", vec![check.param("limit", limit)])
}

/// Every check, in a fixed order.
pub fn full_suite(db: &FixtureDatabase, p: &SuiteParams, cache: Option<&Path>) -> RunReport {
    let shards = p.jobs.max(1);
    RunReport::merge(
        "report",
        vec![
            verify_all_tuples(db, p.tuple_limit, shards),
            verify_exception_sets(db, p.exception_limit),
            verify_identities(db),
            verify_descent(p.descent_n_limit, p.binary_descent_limit, p.lagrange_limit),
            verify_genus_fixtures(cache),
            ratio_checks(db),
            verify_lemmas(p.lemma_limit, shards),
            verify_eight_n_two(p.eight_n_two_limit, p.spinor_limit, shards),
            verify_pentagonal_identity(p.pentagonal_limit),
        ],
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::verify::Status;

    #[test]
    fn lemma_small() {
        let r = verify_lemmas(2_000, 2);
        assert!(r.passed(), "{}", r.to_json());
        assert_eq!(r.checks.len(), 5);
    }

    #[test]
    fn balanced_count_examples() {
        let r2 = two_square_counts(17);
        assert_eq!(balanced_counts(&r2, 2), (16, 16));
    }

    #[test]
    fn eight_n_two_examples() {
        let w = eight_n_two_witness(0).unwrap();
        assert_eq!(w.triple[0].rem_euclid(8), 1);
        assert_eq!(eight_n_two_witness(1).unwrap().case, EightNTwoCase::NotTwiceTriangular);
        assert_eq!(eight_n_two_witness(12).unwrap().case, EightNTwoCase::FourSquares);
        assert_eq!(eight_n_two_witness(6).unwrap().case, EightNTwoCase::TwoSquares);
        assert_eq!(eight_n_two_witness(72).unwrap().case, EightNTwoCase::TwoSquares);
        for n in 0..3_000 {
            eight_n_two_witness(n).unwrap();
        }
    }

    #[test]
    fn small_suite_passes() {
        let db = FixtureDatabase::builtin();
        let r = verify_all_tuples(db, 5_000, 2);
        assert_eq!(r.checks.len(), 44);
        assert!(r.passed());
        let r = verify_eight_n_two(5_000, 200, 2);
        assert!(r.passed(), "{}", r.to_json());
        assert!(verify_identities(db).passed());
        assert!(verify_pentagonal_identity(10_000).passed());
    }

    #[test]
    fn ratio_suite() {
        let r = ratio_checks(FixtureDatabase::builtin());
        assert!(r.passed(), "{}", r.to_json());
        assert!(r.checks.iter().any(|c| c.id == "ratio:diag(1,3,21):m=1:p=5" && c.status == Status::Pass));
    }

    #[test]
    fn injected_failure_carries_counterexample() {
        let t: SumTuple = "2,0,2,0,2,0".parse().unwrap();
        let c = verify_tuple(&t, "neg", 7, 1);
        assert_eq!(c.status, Status::Fail);
        assert_eq!(c.counterexample.as_ref().unwrap()["n"], 7);
    }
}
