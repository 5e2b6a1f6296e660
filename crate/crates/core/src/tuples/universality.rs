use std::collections::{BTreeMap, HashMap};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{term, term_values_up_to, term_x_bound, SumTuple};
use crate::arith::isqrt;
use crate::error::Result;
use crate::sieve::{sumset_of, Bitset};

/// Integers ordered by `|x|`, nonnegative first: `0, 1, −1, 2, −2, …`.
fn magnitude_order(bound: i64) -> impl Iterator<Item = i64> {
    (0..=bound).flat_map(|m| if m == 0 { vec![0] } else { vec![m, -m] })
}

/// Integer solutions of `x(ax+b)/2 = target`, ordered by `|x|`, nonnegative first.
fn term_preimages(a: i64, b: i64, target: i64) -> Vec<i64> {
    // a x² + b x − 2 target = 0
    let (a, b, t) = (a as i128, b as i128, target as i128);
    let disc = b * b + 8 * a * t;
    if disc < 0 {
        return Vec::new();
    }
    let s = isqrt(disc);
    if s * s != disc {
        return Vec::new();
    }
    let mut xs: Vec<i64> = [-b + s, -b - s]
        .into_iter()
        .filter(|num| num % (2 * a) == 0)
        .map(|num| (num / (2 * a)) as i64)
        .collect();
    xs.sort_by_key(|&x| (x.abs(), x < 0));
    xs.dedup();
    xs
}

/// A witness `(x, y, z)` for `n`, searched by increasing `|x|`, then `|y|`,
/// then `|z|`, nonnegative sign first.
pub fn is_representable(t: &SumTuple, n: u64) -> Result<Option<[i64; 3]>> {
    let [(a, b), (c, d), (e, f)] = t.terms();
    let n = n as i64;
    for x in magnitude_order(term_x_bound(a, b, n as u64)) {
        let tx = term(a, b, x)?;
        if tx > n {
            continue;
        }
        for y in magnitude_order(term_x_bound(c, d, (n - tx) as u64)) {
            let ty = term(c, d, y)?;
            if tx + ty > n {
                continue;
            }
            if let Some(&z) = term_preimages(e, f, n - tx - ty).first() {
                return Ok(Some([x, y, z]));
            }
        }
    }
    Ok(None)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct UniversalityReport {
    pub tuple: SumTuple,
    pub verified_limit: u64,
    pub exceptions: Vec<u64>,
    pub witnesses: BTreeMap<u64, [i64; 3]>,
}

impl UniversalityReport {
    pub fn passed(&self) -> bool {
        self.exceptions.is_empty()
    }
}

/// Deterministic sample: `0`, `N`, and eight evenly spaced points in between.
fn witness_samples(limit: u64) -> Vec<u64> {
    let mut s: Vec<u64> = (0..=8).map(|k| limit * k / 8).collect();
    s.dedup();
    s
}

/// Every `n ≤ N` missed by the tuple, via the bitset sumset `(V₁ ⊞ V₂) ⊞ V₃`.
pub fn verify_universal(t: &SumTuple, limit: u64, shard_count: usize) -> Result<UniversalityReport> {
    let mut sets = t
        .terms()
        .iter()
        .map(|&(a, b)| Ok(term_values_up_to(a, b, limit)?.into_iter().map(|v| v as usize).collect()))
        .collect::<Result<Vec<Vec<usize>>>>()?;
    // densest set as the base keeps the number of shifts small
    sets.sort_by_key(|s| std::cmp::Reverse(s.len()));
    let reach = sumset_of(&sets, limit as usize, shard_count);
    let exceptions: Vec<u64> = reach.zeros().map(|n| n as u64).collect();
    let mut witnesses = BTreeMap::new();
    for n in witness_samples(limit) {
        if let Some(w) = is_representable(t, n)? {
            witnesses.insert(n, w);
        }
    }
    Ok(UniversalityReport {
        tuple: *t,
        verified_limit: limit,
        exceptions,
        witnesses,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SetEqualityReport {
    pub limit: u64,
    pub equal: bool,
    pub lhs_only: Vec<u64>,
    pub rhs_only: Vec<u64>,
}

/// `{p₃(x) + p₅(y)} ∩ [0, N]` against `{p₅(x) + 3p₅(y)} ∩ [0, N]`, with `p₅`
/// the generalized pentagonal numbers `x(3x−1)/2`.
pub fn pentagonal_identity_check(limit: u64) -> Result<SetEqualityReport> {
    let to_usize = |v: Vec<u64>| v.into_iter().map(|x| x as usize).collect::<Vec<_>>();
    let p3 = to_usize(term_values_up_to(1, 1, limit)?);
    let p5 = to_usize(term_values_up_to(3, -1, limit)?);
    let p5x3: Vec<usize> = p5.iter().map(|v| 3 * v).filter(|&v| v <= limit as usize).collect();
    let lhs = sumset_of(&[p3, p5.clone()], limit as usize, 1);
    let rhs = sumset_of(&[p5, p5x3], limit as usize, 1);
    let diff = |a: &Bitset, b: &Bitset| -> Vec<u64> {
        a.ones().filter(|&n| !b.get(n)).take(20).map(|n| n as u64).collect()
    };
    let lhs_only = diff(&lhs, &rhs);
    let rhs_only = diff(&rhs, &lhs);
    Ok(SetEqualityReport {
        limit,
        equal: lhs_only.is_empty() && rhs_only.is_empty(),
        lhs_only,
        rhs_only,
    })
}

/// Term values `≤ 127` as a bitmask, for a cheap first pass.
fn small_mask(a: i64, b: i64) -> u128 {
    let mut m = 0u128;
    for x in -16..=16 {
        let t = x * (a * x + b) / 2;
        if (0..128).contains(&t) {
            m |= 1 << t;
        }
    }
    m
}

fn mask_sumset(base: u128, other: u128) -> u128 {
    let mut out = 0u128;
    let mut rest = other;
    while rest != 0 {
        let s = rest.trailing_zeros();
        out |= base << s;
        rest &= rest - 1;
    }
    out
}

/// All normalized tuples with `a ≤ a_max` whose sum represents every `n ≤ N`.
///
/// Normalization: the tuple invariants, plus `b ≥ d` when `a = c` and `d ≥ f`
/// when `c = e`.
pub fn candidate_sieve(a_max: i64, limit: u64) -> Result<Vec<SumTuple>> {
    let mut all = Vec::new();
    for a in 1..=a_max {
        for b in (a % 2..=a).step_by(2) {
            for c in 1..=a {
                for d in (c % 2..=c).step_by(2) {
                    if a == c && b < d {
                        continue;
                    }
                    for e in 1..=c {
                        for f in (e % 2..=e).step_by(2) {
                            if c == e && d < f {
                                continue;
                            }
                            all.push(SumTuple { a, b, c, d, e, f });
                        }
                    }
                }
            }
        }
    }
    let small_len = (limit.min(127) + 1) as u32;
    let small_full: u128 = if small_len == 128 { u128::MAX } else { (1u128 << small_len) - 1 };
    let mut masks: HashMap<(i64, i64), u128> = HashMap::new();
    for t in &all {
        for (a, b) in t.terms() {
            masks.entry((a, b)).or_insert_with(|| small_mask(a, b));
        }
    }
    let survivors: Vec<SumTuple> = all
        .into_iter()
        .filter(|t| {
            let [m1, m2, m3] = t.terms().map(|k| masks[&k]);
            mask_sumset(mask_sumset(m1, m2), m3) & small_full == small_full
        })
        .collect();
    if limit < 128 {
        return Ok(survivors);
    }
    let checked: Vec<Result<Option<SumTuple>>> = survivors
        .par_iter()
        .map(|t| Ok(verify_universal(t, limit, 1)?.passed().then_some(*t)))
        .collect();
    let mut out = Vec::new();
    for r in checked {
        if let Some(t) = r? {
            out.push(t);
        }
    }
    Ok(out)
}
