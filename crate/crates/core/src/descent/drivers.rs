use serde::{Deserialize, Serialize};

use crate::arith::{gcd, is_prime, two_adic_valuation};
use crate::descent::rules::{builtin_rules, lagrange_rule, Congruence};
use crate::error::{Error, Result};
use crate::forms::{DiagBinary, Representation, TernaryForm};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum StepKind {
    /// Divide every coordinate by `2^power`; the value drops by `4^power`.
    Extract { power: u32 },
    /// Flip the signs of the coordinates with `mask` bits set (x = 4, y = 2, z = 1).
    Sign { mask: u8 },
    /// Apply rule `rule`, then divide by `divisor`; the value is multiplied by `scale / divisor²`.
    Rule { rule: String, divisor: i64 },
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentStep {
    pub step: StepKind,
    pub output: [i64; 3],
    pub value: i64,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DescentTrace {
    pub target: i64,
    pub start: [i64; 3],
    pub steps: Vec<DescentStep>,
    pub result: [i64; 3],
}

impl DescentTrace {
    /// Number of rule applications (extraction and sign flips are bookkeeping).
    pub fn rule_applications(&self) -> usize {
        self.steps.iter().filter(|s| matches!(s.step, StepKind::Rule { .. })).count()
    }
}

fn all_odd(v: &[i64; 3]) -> bool {
    v.iter().all(|c| c.rem_euclid(2) == 1)
}

fn is_admissible_1_5_10(w: i64) -> bool {
    [16, 24].iter().any(|&base| w >= base && (w - base) % 40 == 0)
}

struct Tracer {
    form: TernaryForm,
    current: [i64; 3],
    steps: Vec<DescentStep>,
}

impl Tracer {
    fn push(&mut self, step: StepKind, v: [i64; 3]) {
        self.current = v;
        self.steps.push(DescentStep {
            step,
            output: v,
            value: self.form.evaluate(v) as i64,
        });
    }

    fn rule(&mut self, id: &str, divisor: i64) -> Result<()> {
        let out = builtin_rules().get(id)?.apply_divided(&self.current, divisor)?;
        self.push(
            StepKind::Rule {
                rule: id.to_string(),
                divisor,
            },
            [out[0], out[1], out[2]],
        );
        Ok(())
    }

    fn flip(&mut self, mask: u8) {
        let mut v = self.current;
        for (i, bit) in [4u8, 2, 1].into_iter().enumerate() {
            if mask & bit != 0 {
                v[i] = -v[i];
            }
        }
        self.push(StepKind::Sign { mask }, v);
    }

    /// Odd `(x, y, z)` to an odd representation of four times the value.
    fn half_step(&mut self) -> Result<()> {
        let [x, y, z] = self.current;
        let id = if ((x + y) / 2 + z).rem_euclid(2) == 1 {
            "R2.1+"
        } else {
            "R2.1-"
        };
        self.rule(id, 2)
    }
}

/// Rewrites a representation of `w = 40n + r² + 15` (`r ∈ {1, 3}`) by
/// `x² + 5y² + 10z²` into one with all coordinates odd.
pub fn descend_odd_1_5_10(w: i64, start: &Representation) -> Result<DescentTrace> {
    if !is_admissible_1_5_10(w) {
        return Err(Error::Precondition(format!("{w} is not of the form 40n+r²+15 with r ∈ {{1,3}}")));
    }
    let form = TernaryForm::diag(1, 5, 10)?;
    let v = start.coords();
    if form.evaluate(v) != w as i128 {
        return Err(Error::Precondition(format!("{v:?} does not represent {w} by {form}")));
    }
    let mut t = Tracer {
        form,
        current: v,
        steps: Vec::new(),
    };
    if !all_odd(&v) {
        let k = two_adic_valuation(gcd(gcd(v[0] as i128, v[1] as i128), v[2] as i128));
        if k > 0 {
            let d = 1i64 << k;
            t.push(StepKind::Extract { power: k }, [v[0] / d, v[1] / d, v[2] / d]);
        }
        let [x0, y0, z0] = t.current;
        let remaining = if all_odd(&t.current) {
            k
        } else if (x0 - y0).rem_euclid(2) == 1 {
            if k < 2 {
                return Err(Error::Invariant(format!("mixed-parity start {v:?} for w={w} has 2-valuation {k}")));
            }
            t.rule("R2.1-", 1)?;
            k - 2
        } else {
            if k == 0 {
                return Err(Error::Invariant(format!("start {v:?} for w={w} has no factor of 2 to extract")));
            }
            if x0.rem_euclid(2) == 1 {
                if x0.rem_euclid(4) == (y0 - 2 * z0).rem_euclid(4) {
                    t.flip(4);
                }
                t.rule("R2.1-", 2)?;
            } else if ((x0 - y0) / 2).rem_euclid(2) == 0 {
                t.rule("R2.1-", 2)?;
            } else {
                if z0.rem_euclid(4) != ((y0 - x0) / 2).rem_euclid(4) {
                    t.flip(1);
                }
                t.rule("R2.1-", 2)?;
                t.rule("R2.1-", 4)?;
            }
            k - 1
        };
        if !all_odd(&t.current) {
            return Err(Error::Invariant(format!(
                "case analysis left {:?} not all odd (w={w}, start {v:?})",
                t.current
            )));
        }
        for _ in 0..remaining {
            t.half_step()?;
        }
    }
    let result = t.current;
    if !all_odd(&result) || t.form.evaluate(result) != w as i128 {
        return Err(Error::Invariant(format!("descent of {v:?} ended at {result:?}")));
    }
    Ok(DescentTrace {
        target: w,
        start: v,
        steps: t.steps,
        result,
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum OddBinaryKind {
    /// `x² + 3y²`, value ≡ 4 (mod 8).
    X2Plus3Y2,
    /// `x² + 7y²`, value ≡ 0 (mod 8).
    X2Plus7Y2,
    /// `3x² + 5y²`, value ≡ 0 (mod 8).
    ThreeX2Plus5Y2,
    /// `x² + 15y²`, value ≡ 0 (mod 8).
    X2Plus15Y2,
}

impl OddBinaryKind {
    pub const ALL: [OddBinaryKind; 4] = [
        OddBinaryKind::X2Plus3Y2,
        OddBinaryKind::X2Plus7Y2,
        OddBinaryKind::ThreeX2Plus5Y2,
        OddBinaryKind::X2Plus15Y2,
    ];

    pub fn form(self) -> DiagBinary {
        let (a, c) = match self {
            OddBinaryKind::X2Plus3Y2 => (1, 3),
            OddBinaryKind::X2Plus7Y2 => (1, 7),
            OddBinaryKind::ThreeX2Plus5Y2 => (3, 5),
            OddBinaryKind::X2Plus15Y2 => (1, 15),
        };
        DiagBinary { a, c }
    }

    pub fn residue_mod_8(self) -> i128 {
        match self {
            OddBinaryKind::X2Plus3Y2 => 4,
            _ => 0,
        }
    }
}

impl std::fmt::Display for OddBinaryKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        let s = match self {
            OddBinaryKind::X2Plus3Y2 => "x2+3y2",
            OddBinaryKind::X2Plus7Y2 => "x2+7y2",
            OddBinaryKind::ThreeX2Plus5Y2 => "3x2+5y2",
            OddBinaryKind::X2Plus15Y2 => "x2+15y2",
        };
        f.write_str(s)
    }
}

impl std::str::FromStr for OddBinaryKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let key: String = s.chars().filter(|c| !c.is_whitespace() && *c != '^').collect();
        OddBinaryKind::ALL
            .into_iter()
            .find(|k| k.to_string() == key)
            .ok_or_else(|| Error::Unknown {
                kind: "binary kind",
                name: s.to_string(),
            })
    }
}

/// Rewrites `(u, v)` into a representation of the same value by the same
/// binary form with both coordinates odd.
pub fn descend_odd_binary(kind: OddBinaryKind, u: i64, v: i64) -> Result<(i64, i64)> {
    let form = kind.form();
    let w = form.value(u, v);
    if w <= 0 || w.rem_euclid(8) != kind.residue_mod_8() {
        return Err(Error::Precondition(format!(
            "{kind}: value {w} at ({u},{v}) is not a positive integer ≡ {} (mod 8)",
            kind.residue_mod_8()
        )));
    }
    let odd = |(s, t): (i64, i64)| s.rem_euclid(2) == 1 && t.rem_euclid(2) == 1;
    if odd((u, v)) {
        return Ok((u, v));
    }
    let out = if kind == OddBinaryKind::X2Plus15Y2 {
        let rule = builtin_rules().get("RL4.2")?;
        let k = two_adic_valuation(gcd(u as i128, v as i128));
        let (u0, v0) = (u >> k, v >> k);
        let (mut s, mut t, mut j) = (u0, v0, 0);
        if !odd((u0, v0)) {
            if k < 2 {
                return Err(Error::Invariant(format!("({u},{v}) with value {w} has too small 2-valuation")));
            }
            let o = rule.apply(&[u0, v0])?;
            (s, t, j) = (o[0], o[1], 2);
        }
        while j < k {
            if (s - t).rem_euclid(4) != 0 {
                t = -t;
            }
            let o = rule.apply_divided(&[s, t], 2)?;
            (s, t) = (o[0], o[1]);
            j += 1;
        }
        (s, t)
    } else {
        form.representations(w)
            .into_iter()
            .find(|&p| odd(p))
            .ok_or_else(|| Error::Invariant(format!("{kind}: no odd representation of {w}")))?
    };
    if !odd(out) || form.value(out.0, out.1) != w {
        return Err(Error::Invariant(format!("{kind}: descent of ({u},{v}) ended at {out:?}")));
    }
    Ok(out)
}

/// First sign pattern (masks 0..8, x = 4, y = 2, z = 1) over the allowed
/// coordinates whose flip of `v` satisfies `target`.
pub fn sign_normalize(v: [i64; 3], target: &Congruence, allowed: [bool; 3]) -> Result<[i64; 3]> {
    for mask in 0u8..8 {
        let bits = [mask & 4 != 0, mask & 2 != 0, mask & 1 != 0];
        if (0..3).any(|i| bits[i] && !allowed[i]) {
            continue;
        }
        let w: [i64; 3] = std::array::from_fn(|i| if bits[i] { -v[i] } else { v[i] });
        if target.holds(&w) {
            return Ok(w);
        }
    }
    Err(Error::Precondition(format!(
        "no sign pattern of {v:?} satisfies Σ{:?}·v ≡ {} (mod {})",
        target.coeffs, target.residue, target.modulus
    )))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LagrangeDecomposition {
    pub p: i64,
    /// `p = a² + b² + c² + d²`, `a` even and `b, c, d` odd.
    pub quad: [i64; 4],
    /// `p²` as a sum of three squares with exactly one odd coordinate.
    pub triple: [i64; 3],
}

/// Four-square decomposition of a prime `p ≡ 3 (mod 4)` with parity pattern
/// (even, odd, odd, odd), and the three-square decomposition of `p²` it induces.
pub fn lagrange_even_odd_decomposition(p: i64) -> Result<LagrangeDecomposition> {
    if p <= 0 || !is_prime(p as u64) || p % 4 != 3 {
        return Err(Error::Precondition(format!("{p} is not a prime ≡ 3 (mod 4)")));
    }
    let isq = |n: i64| crate::arith::isqrt(n as i128) as i64;
    let mut quad = None;
    'search: for a in (0..=isq(p)).step_by(2) {
        let ra = p - a * a;
        let mut b = isq(ra);
        if b % 2 == 0 {
            b -= 1;
        }
        while b >= 1 {
            let rb = ra - b * b;
            let mut c = isq(rb).min(b);
            if c % 2 == 0 {
                c -= 1;
            }
            while c >= 1 {
                let d2 = rb - c * c;
                let d = isq(d2);
                if d * d == d2 && d % 2 == 1 {
                    quad = Some([a, b, c, d]);
                    break 'search;
                }
                c -= 2;
            }
            b -= 2;
        }
    }
    let [a, b, c, d] = quad.ok_or_else(|| Error::Invariant(format!("no even-odd four-square split of {p}")))?;
    let cross = lagrange_rule(a, b).apply(&[c, d])?;
    let triple = [a * a + b * b - c * c - d * d, cross[0], cross[1]];
    let sum: i128 = triple.iter().map(|&t| (t as i128).pow(2)).sum();
    let odd = triple.iter().filter(|t| t.rem_euclid(2) == 1).count();
    if sum != (p as i128).pow(2) || odd != 1 {
        return Err(Error::Invariant(format!("derived triple {triple:?} for {p} is wrong")));
    }
    Ok(LagrangeDecomposition {
        p,
        quad: [a, b, c, d],
        triple,
    })
}
