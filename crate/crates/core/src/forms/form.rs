use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::arith::{adjugate3, det3};
use crate::error::{Error, Result};

/// An integral positive-definite ternary quadratic form
/// `a11 x² + a22 y² + a33 z² + a23 yz + a13 xz + a12 xy`.
///
/// Cross coefficients are stored as the full polynomial coefficient and must
/// be even, so the Gram matrix (off-diagonal entries `a_ij / 2`) is integral.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "String", into = "String")]
pub struct TernaryForm {
    pub a11: i64,
    pub a22: i64,
    pub a33: i64,
    pub a23: i64,
    pub a13: i64,
    pub a12: i64,
}

impl TernaryForm {
    pub fn new(a11: i64, a22: i64, a33: i64, a23: i64, a13: i64, a12: i64) -> Result<Self> {
        let form = TernaryForm {
            a11,
            a22,
            a33,
            a23,
            a13,
            a12,
        };
        for c in [a23, a13, a12] {
            if c % 2 != 0 {
                return Err(Error::OddCrossCoefficient(c));
            }
        }
        let g = form.gram();
        let m1 = g[0][0];
        let m2 = g[0][0] * g[1][1] - g[0][1] * g[1][0];
        let m3 = det3(&g);
        if m1 <= 0 || m2 <= 0 || m3 <= 0 {
            return Err(Error::NotPositiveDefinite(form.to_string()));
        }
        Ok(form)
    }

    pub fn diag(a: i64, b: i64, c: i64) -> Result<Self> {
        Self::new(a, b, c, 0, 0, 0)
    }

    /// Builds a form from an integral symmetric Gram matrix.
    pub fn from_gram(g: &[[i128; 3]; 3]) -> Result<Self> {
        let conv = |v: i128| i64::try_from(v).map_err(|_| Error::Overflow("Gram entry"));
        Self::new(
            conv(g[0][0])?,
            conv(g[1][1])?,
            conv(g[2][2])?,
            conv(2 * g[1][2])?,
            conv(2 * g[0][2])?,
            conv(2 * g[0][1])?,
        )
    }

    pub fn gram(&self) -> [[i128; 3]; 3] {
        let (h23, h13, h12) = (
            (self.a23 / 2) as i128,
            (self.a13 / 2) as i128,
            (self.a12 / 2) as i128,
        );
        [
            [self.a11 as i128, h12, h13],
            [h12, self.a22 as i128, h23],
            [h13, h23, self.a33 as i128],
        ]
    }

    /// `d(f) = det G`, always positive for a valid form.
    pub fn determinant(&self) -> i128 {
        det3(&self.gram())
    }

    /// Adjugate of the Gram matrix; `G⁻¹ = adj / det`.
    pub fn gram_adjugate(&self) -> [[i128; 3]; 3] {
        adjugate3(&self.gram())
    }

    pub fn is_diagonal(&self) -> bool {
        self.a23 == 0 && self.a13 == 0 && self.a12 == 0
    }

    /// `f(v)`, or `None` if the computation leaves the i128 range.
    pub fn try_evaluate(&self, v: [i64; 3]) -> Option<i128> {
        let [x, y, z] = v.map(i128::from);
        let term = |c: i64, p: i128, q: i128| (c as i128).checked_mul(p)?.checked_mul(q);
        term(self.a11, x, x)?
            .checked_add(term(self.a22, y, y)?)?
            .checked_add(term(self.a33, z, z)?)?
            .checked_add(term(self.a23, y, z)?)?
            .checked_add(term(self.a13, x, z)?)?
            .checked_add(term(self.a12, x, y)?)
    }

    /// `f(v)`; overflow is a hard error, never a wrapped value.
    pub fn evaluate(&self, v: [i64; 3]) -> i128 {
        self.try_evaluate(v)
            .unwrap_or_else(|| panic!("value of {self} at {v:?} overflows i128"))
    }

    /// Symmetric bilinear form `B(u, v) = uᵀ G v`.
    pub fn bilinear(&self, u: [i128; 3], v: [i128; 3]) -> i128 {
        let g = self.gram();
        (0..3)
            .map(|i| (0..3).map(|j| u[i] * g[i][j] * v[j]).sum::<i128>())
            .sum()
    }

    /// Human-readable polynomial, e.g. `x^2+4y^2+9z^2-4yz`.
    pub fn polynomial(&self) -> String {
        let mut out = String::new();
        for (c, mono) in [
            (self.a11, "x^2"),
            (self.a22, "y^2"),
            (self.a33, "z^2"),
            (self.a23, "yz"),
            (self.a13, "xz"),
            (self.a12, "xy"),
        ] {
            if c == 0 {
                continue;
            }
            if c < 0 {
                out.push('-');
            } else if !out.is_empty() {
                out.push('+');
            }
            if c.abs() != 1 {
                out.push_str(&c.abs().to_string());
            }
            out.push_str(mono);
        }
        out
    }
}

impl fmt::Display for TernaryForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_diagonal() {
            write!(f, "diag({},{},{})", self.a11, self.a22, self.a33)
        } else {
            write!(
                f,
                "{},{},{},{},{},{}",
                self.a11, self.a22, self.a33, self.a23, self.a13, self.a12
            )
        }
    }
}

fn parse_ints(s: &str, kind: &'static str, input: &str) -> Result<Vec<i64>> {
    s.split(',')
        .map(|part| {
            part.trim().parse::<i64>().map_err(|e| Error::Parse {
                kind,
                input: input.to_string(),
                reason: e.to_string(),
            })
        })
        .collect()
}

impl FromStr for TernaryForm {
    type Err = Error;

    /// Accepts `a11,a22,a33,a23,a13,a12` or `diag(a,b,c)`.
    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        let bad = |reason: &str| Error::Parse {
            kind: "form",
            input: s.to_string(),
            reason: reason.to_string(),
        };
        if let Some(inner) = t.strip_prefix("diag(").and_then(|r| r.strip_suffix(')')) {
            let v = parse_ints(inner, "form", s)?;
            if v.len() != 3 {
                return Err(bad("diag() takes three coefficients"));
            }
            return TernaryForm::diag(v[0], v[1], v[2]);
        }
        let v = parse_ints(t, "form", s)?;
        if v.len() != 6 {
            return Err(bad("expected six comma-separated integers a11,a22,a33,a23,a13,a12"));
        }
        TernaryForm::new(v[0], v[1], v[2], v[3], v[4], v[5])
    }
}

impl TryFrom<String> for TernaryForm {
    type Error = Error;
    fn try_from(s: String) -> Result<Self> {
        s.parse()
    }
}

impl From<TernaryForm> for String {
    fn from(f: TernaryForm) -> String {
        f.to_string()
    }
}
