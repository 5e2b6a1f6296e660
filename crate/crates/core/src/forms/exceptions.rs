use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::isqrt;
use crate::error::{Error, Result};
use crate::sieve::Bitset;

/// The nonnegative integers `n ≤ limit` not of the form `ax² + by² + cz²`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ExceptionSet {
    pub a: u64,
    pub b: u64,
    pub c: u64,
    pub limit: u64,
    pub members: Vec<u64>,
}

/// Marks every value `ax² + by² + cz² ≤ limit` with `x, y, z ≥ 0`, then returns
/// the unmarked ones.
pub fn exception_set(a: u64, b: u64, c: u64, limit: u64) -> Result<ExceptionSet> {
    if a == 0 || b == 0 || c == 0 {
        return Err(Error::Precondition("coefficients must be positive".into()));
    }
    let len = limit as usize + 1;
    let mut hit = Bitset::new(len);
    let lim = limit as i128;
    let (a, b, c) = (a as i128, b as i128, c as i128);
    for x in 0..=isqrt(lim / a) {
        let tx = a * x * x;
        for y in 0..=isqrt((lim - tx) / b) {
            let txy = tx + b * y * y;
            for z in 0..=isqrt((lim - txy) / c) {
                hit.set((txy + c * z * z) as usize);
            }
        }
    }
    Ok(ExceptionSet {
        a: a as u64,
        b: b as u64,
        c: c as u64,
        limit,
        members: hit.zeros().map(|n| n as u64).collect(),
    })
}

/// Exceptional sets with a known closed-form description.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum KnownSet {
    /// `E(1,1,1) = {4^k(8l+7)}`
    E111,
    /// `E(1,4,9) = {2} ∪ {4^k(8l+7)} ∪ {8l+3} ∪ {9l+3} ∪ {9l+6}`
    E149,
    /// `E(1,5,10) = {25^l m : m ≡ 2, 3 (mod 5)}`
    E1510,
    /// `E(2,3,6) = {3q+1} ∪ {4^k(8l+7)}`
    E236,
}

impl KnownSet {
    pub const ALL: [KnownSet; 4] = [KnownSet::E111, KnownSet::E149, KnownSet::E1510, KnownSet::E236];

    pub fn coefficients(self) -> (u64, u64, u64) {
        match self {
            KnownSet::E111 => (1, 1, 1),
            KnownSet::E149 => (1, 4, 9),
            KnownSet::E1510 => (1, 5, 10),
            KnownSet::E236 => (2, 3, 6),
        }
    }

    /// Expands the closed form up to `limit`, generating members from the
    /// parameters `k, l` (not by testing membership of each `n`).
    pub fn expand(self, limit: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut push_progression = |start: u64, step: u64| {
            let mut n = start;
            while n <= limit {
                out.push(n);
                n += step;
            }
        };
        let four_k_8l7 = |out: &mut Vec<u64>| {
            let mut scale = 1u64;
            while 7 * scale <= limit {
                let mut l = 0u64;
                while scale * (8 * l + 7) <= limit {
                    out.push(scale * (8 * l + 7));
                    l += 1;
                }
                scale *= 4;
            }
        };
        match self {
            KnownSet::E111 => {}
            KnownSet::E149 => {
                push_progression(3, 8);
                push_progression(3, 9);
                push_progression(6, 9);
            }
            KnownSet::E1510 => {
                let mut scale = 1u64;
                while 2 * scale <= limit {
                    push_progression(2 * scale, 5 * scale);
                    push_progression(3 * scale, 5 * scale);
                    scale *= 25;
                }
            }
            KnownSet::E236 => push_progression(1, 3),
        }
        match self {
            KnownSet::E111 | KnownSet::E149 | KnownSet::E236 => four_k_8l7(&mut out),
            KnownSet::E1510 => {}
        }
        if self == KnownSet::E149 && limit >= 2 {
            out.push(2);
        }
        out.sort_unstable();
        out.dedup();
        out
    }
}

impl fmt::Display for KnownSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            KnownSet::E111 => "E111",
            KnownSet::E149 => "E149",
            KnownSet::E1510 => "E1510",
            KnownSet::E236 => "E236",
        };
        f.write_str(s)
    }
}

impl FromStr for KnownSet {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        KnownSet::ALL
            .into_iter()
            .find(|k| k.to_string().eq_ignore_ascii_case(s.trim()))
            .ok_or_else(|| Error::Unknown {
                kind: "exceptional set",
                name: s.to_string(),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FormulaCheck {
    pub set: KnownSet,
    pub limit: u64,
    pub equal: bool,
    /// In the sieve result but not in the closed form.
    pub sieve_only: Vec<u64>,
    /// In the closed form but represented according to the sieve.
    pub formula_only: Vec<u64>,
}

/// Compares the sieve against the closed-form expansion up to `limit`.
pub fn exception_formula_check(name: &str, limit: u64) -> Result<FormulaCheck> {
    let set: KnownSet = name.parse()?;
    let (a, b, c) = set.coefficients();
    let sieve = exception_set(a, b, c, limit)?.members;
    let formula = set.expand(limit);
    let sieve_only: Vec<u64> = sieve.iter().filter(|n| formula.binary_search(n).is_err()).copied().collect();
    let formula_only: Vec<u64> = formula.iter().filter(|n| sieve.binary_search(n).is_err()).copied().collect();
    Ok(FormulaCheck {
        set,
        limit,
        equal: sieve_only.is_empty() && formula_only.is_empty(),
        sieve_only: sieve_only.into_iter().take(20).collect(),
        formula_only: formula_only.into_iter().take(20).collect(),
    })
}
