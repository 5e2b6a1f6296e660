//! Sums `x(ax+b)/2 + y(cy+d)/2 + z(ez+f)/2` over the integers.

mod completion;
mod universality;

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

pub use completion::{derive_completion, CompletionComponent, CompletionSystem};
pub use universality::{
    candidate_sieve, pentagonal_identity_check, is_representable, verify_universal, SetEqualityReport, UniversalityReport,
};

use crate::arith::isqrt;
use crate::error::{Error, Result};

/// `x(ax+b)/2`, integral whenever `b ≡ a (mod 2)`.
pub fn term(a: i64, b: i64, x: i64) -> Result<i64> {
    if (a - b).rem_euclid(2) != 0 {
        return Err(Error::TermParity { a, b });
    }
    let v = x as i128 * (a as i128 * x as i128 + b as i128) / 2;
    i64::try_from(v).map_err(|_| Error::Overflow("term"))
}

/// `⌈(|b| + √(b² + 8aN)) / (2a)⌉`: beyond this `|x|` the term exceeds `N`.
pub(crate) fn term_x_bound(a: i64, b: i64, n: u64) -> i64 {
    let (a, b) = (a as i128, (b as i128).abs());
    let disc = b * b + 8 * a * n as i128;
    let s = isqrt(disc) + 1;
    ((b + s + 2 * a - 1) / (2 * a)) as i64
}

/// `{ x(ax+b)/2 : x ∈ ℤ } ∩ [0, N]`, sorted.
pub fn term_values_up_to(a: i64, b: i64, n: u64) -> Result<Vec<u64>> {
    if a <= 0 {
        return Err(Error::Precondition(format!("term leading coefficient {a} must be positive")));
    }
    let bound = term_x_bound(a, b, n);
    let mut vals = Vec::new();
    for x in -bound..=bound {
        let t = term(a, b, x)?;
        if (0..=n as i64).contains(&t) {
            vals.push(t as u64);
        }
    }
    vals.sort_unstable();
    vals.dedup();
    Ok(vals)
}

/// An ordered tuple `(a,b,c,d,e,f)` with `a ≥ c ≥ e > 0` and each linear
/// coefficient in `[0, leading]` with matching parity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct SumTuple {
    pub a: i64,
    pub b: i64,
    pub c: i64,
    pub d: i64,
    pub e: i64,
    pub f: i64,
}

impl SumTuple {
    pub fn new(a: i64, b: i64, c: i64, d: i64, e: i64, f: i64) -> Result<Self> {
        let t = SumTuple { a, b, c, d, e, f };
        let fail = |why: &str| Err(Error::InvalidTuple(t.as_array(), why.to_string()));
        if !(a >= c && c >= e && e > 0) {
            return fail("need a ≥ c ≥ e > 0");
        }
        for (lead, lin) in t.terms() {
            if !(0..=lead).contains(&lin) {
                return fail("linear coefficients must lie in [0, leading]");
            }
            if (lead - lin) % 2 != 0 {
                return fail("linear coefficient parity must match its leading coefficient");
            }
        }
        Ok(t)
    }

    pub fn as_array(&self) -> [i64; 6] {
        [self.a, self.b, self.c, self.d, self.e, self.f]
    }

    /// The three `(leading, linear)` pairs.
    pub fn terms(&self) -> [(i64, i64); 3] {
        [(self.a, self.b), (self.c, self.d), (self.e, self.f)]
    }

    /// `x(ax+b)/2 + y(cy+d)/2 + z(ez+f)/2`.
    pub fn evaluate(&self, v: [i64; 3]) -> Result<i64> {
        let [(a, b), (c, d), (e, f)] = self.terms();
        Ok(term(a, b, v[0])? + term(c, d, v[1])? + term(e, f, v[2])?)
    }
}

impl fmt::Display for SumTuple {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{},{},{},{},{},{}", self.a, self.b, self.c, self.d, self.e, self.f)
    }
}

impl FromStr for SumTuple {
    type Err = Error;
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim().trim_start_matches('(').trim_end_matches(')');
        let v = t
            .split(',')
            .map(|p| {
                p.trim().parse::<i64>().map_err(|e| Error::Parse {
                    kind: "tuple",
                    input: s.to_string(),
                    reason: e.to_string(),
                })
            })
            .collect::<Result<Vec<_>>>()?;
        if v.len() != 6 {
            return Err(Error::Parse {
                kind: "tuple",
                input: s.to_string(),
                reason: "expected six comma-separated integers".into(),
            });
        }
        SumTuple::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }
}

impl TryFrom<String> for SumTuple {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<SumTuple> for String {
    fn from(t: SumTuple) -> String {
        t.to_string()
    }
}
