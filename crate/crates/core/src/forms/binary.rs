use serde::{Deserialize, Serialize};

use crate::arith::isqrt;
use crate::error::{Error, Result};

/// Diagonal binary form `a u² + c v²` with `a, c > 0`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct DiagBinary {
    pub a: i64,
    pub c: i64,
}

impl DiagBinary {
    pub const fn new(a: i64, c: i64) -> Self {
        DiagBinary { a, c }
    }

    pub fn value(&self, u: i64, v: i64) -> i128 {
        self.a as i128 * (u as i128).pow(2) + self.c as i128 * (v as i128).pow(2)
    }

    /// All `(u, v)` with `a u² + c v² = w`, ordered by increasing `|u|`, then
    /// `|v|`, nonnegative sign first.
    pub fn representations(&self, w: i128) -> Vec<(i64, i64)> {
        let mut out = Vec::new();
        if w < 0 {
            return out;
        }
        let ub = isqrt(w / self.a as i128);
        for au in 0..=ub {
            let rest = w - self.a as i128 * au * au;
            if rest % self.c as i128 != 0 {
                continue;
            }
            let sq = rest / self.c as i128;
            let av = isqrt(sq);
            if av * av != sq {
                continue;
            }
            for u in signed(au) {
                for v in signed(av) {
                    out.push((u as i64, v as i64));
                }
            }
        }
        out
    }
}

fn signed(m: i128) -> Vec<i128> {
    if m == 0 {
        vec![0]
    } else {
        vec![m, -m]
    }
}

/// Binary forms for which a 3-free representation is requested.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum ThreeFreeKind {
    /// `y² + 2z²`
    Y2Plus2Z2,
    /// `x² + 5y²`
    X2Plus5Y2,
    /// `x² + 5z²`
    X2Plus5Z2,
}

impl ThreeFreeKind {
    pub fn form(self) -> DiagBinary {
        match self {
            ThreeFreeKind::Y2Plus2Z2 => DiagBinary::new(1, 2),
            ThreeFreeKind::X2Plus5Y2 | ThreeFreeKind::X2Plus5Z2 => DiagBinary::new(1, 5),
        }
    }
}

/// Rewrites `(u, v)` to a representation of the same value by the same binary
/// form whose coordinates are not both divisible by 3.
pub fn three_free_rewrite(kind: ThreeFreeKind, u: i64, v: i64) -> Result<(i64, i64)> {
    if u == 0 && v == 0 {
        return Err(Error::Precondition("(u, v) must be nonzero".into()));
    }
    if u % 3 != 0 || v % 3 != 0 {
        return Ok((u, v));
    }
    let form = kind.form();
    let w = form.value(u, v);
    form.representations(w)
        .into_iter()
        .find(|&(a, b)| a % 3 != 0 || b % 3 != 0)
        .ok_or_else(|| Error::Invariant(format!("{w} has no 3-free representation by {kind:?}")))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn examples() {
        assert_eq!(three_free_rewrite(ThreeFreeKind::Y2Plus2Z2, 3, 3).unwrap(), (5, 1));
        assert_eq!(three_free_rewrite(ThreeFreeKind::X2Plus5Y2, 1, 0).unwrap(), (1, 0));
        assert_eq!(three_free_rewrite(ThreeFreeKind::X2Plus5Z2, 3, 0).unwrap(), (2, 1));
        assert!(three_free_rewrite(ThreeFreeKind::X2Plus5Y2, 0, 0).is_err());
    }

    #[test]
    fn always_succeeds_on_small_multiples_of_three() {
        for kind in [ThreeFreeKind::Y2Plus2Z2, ThreeFreeKind::X2Plus5Y2] {
            for u in (-60..=60).step_by(3) {
                for v in (-60..=60).step_by(3) {
                    if u == 0 && v == 0 {
                        continue;
                    }
                    let (a, b) = three_free_rewrite(kind, u, v).unwrap();
                    assert_eq!(kind.form().value(a, b), kind.form().value(u, v));
                    assert!(a % 3 != 0 || b % 3 != 0);
                }
            }
        }
    }

    #[test]
    fn representation_order() {
        assert_eq!(DiagBinary::new(1, 1).representations(25), vec![
            (0, 5), (0, -5), (3, 4), (3, -4), (-3, 4), (-3, -4), (4, 3), (4, -3), (-4, 3), (-4, -3), (5, 0), (-5, 0)
        ]);
    }
}
