use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use super::TernaryForm;
use crate::arith::{ceil_div, floor_div, gcd, isqrt};
use crate::error::{Error, Result};

/// One integer solution of `f(x, y, z) = value`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Representation {
    pub x: i64,
    pub y: i64,
    pub z: i64,
    pub value: i64,
}

impl Representation {
    pub fn coords(&self) -> [i64; 3] {
        [self.x, self.y, self.z]
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Parity {
    #[default]
    Any,
    Odd,
    Even,
}

impl Parity {
    fn admits(self, v: i64) -> bool {
        match self {
            Parity::Any => true,
            Parity::Odd => v.rem_euclid(2) == 1,
            Parity::Even => v.rem_euclid(2) == 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ResidueClass {
    pub modulus: i64,
    pub residues: Vec<i64>,
}

impl ResidueClass {
    pub fn new(modulus: i64, residues: &[i64]) -> Result<Self> {
        if modulus < 1 {
            return Err(Error::Precondition(format!("modulus {modulus} < 1")));
        }
        if residues.is_empty() {
            return Err(Error::Precondition("empty residue set".into()));
        }
        let mut residues: Vec<i64> = residues.iter().map(|r| r.rem_euclid(modulus)).collect();
        residues.sort_unstable();
        residues.dedup();
        Ok(ResidueClass { modulus, residues })
    }

    fn admits(&self, v: i64) -> bool {
        self.residues.binary_search(&v.rem_euclid(self.modulus)).is_ok()
    }
}

/// Side conditions on a representation: per-coordinate parity and residue
/// sets, plus an optional primitivity requirement `gcd(x, y, z) = 1`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct RepConstraint {
    pub parity: [Parity; 3],
    pub residues: [Option<ResidueClass>; 3],
    pub primitive: bool,
}

impl RepConstraint {
    pub fn none() -> Self {
        Self::default()
    }

    pub fn parity(mut self, coord: usize, p: Parity) -> Self {
        self.parity[coord] = p;
        self
    }

    pub fn residues(mut self, coord: usize, modulus: i64, residues: &[i64]) -> Result<Self> {
        self.residues[coord] = Some(ResidueClass::new(modulus, residues)?);
        Ok(self)
    }

    pub fn primitive(mut self) -> Self {
        self.primitive = true;
        self
    }

    pub fn is_trivial(&self) -> bool {
        *self == Self::default()
    }

    pub fn admits(&self, v: [i64; 3]) -> bool {
        for i in 0..3 {
            if !self.parity[i].admits(v[i]) {
                return false;
            }
            if let Some(rc) = &self.residues[i] {
                if !rc.admits(v[i]) {
                    return false;
                }
            }
        }
        !self.primitive || gcd(gcd(v[0] as i128, v[1] as i128), v[2] as i128) == 1
    }

    /// Adds one clause in CLI syntax: `x=odd`, `y=even`, `z=1,7 mod 8` or `primitive`.
    pub fn add_clause(&mut self, clause: &str) -> Result<()> {
        let bad = |reason: &str| Error::Parse {
            kind: "constraint",
            input: clause.to_string(),
            reason: reason.to_string(),
        };
        let clause = clause.trim();
        if clause == "primitive" {
            self.primitive = true;
            return Ok(());
        }
        let (var, rhs) = clause.split_once('=').ok_or_else(|| bad("expected <var>=<condition>"))?;
        let coord = match var.trim() {
            "x" => 0,
            "y" => 1,
            "z" => 2,
            _ => return Err(bad("variable must be x, y or z")),
        };
        match rhs.trim() {
            "odd" => self.parity[coord] = Parity::Odd,
            "even" => self.parity[coord] = Parity::Even,
            "any" => self.parity[coord] = Parity::Any,
            other => {
                let (res, modulus) = other
                    .split_once("mod")
                    .ok_or_else(|| bad("expected odd, even or `r1,r2 mod m`"))?;
                let modulus: i64 = modulus.trim().parse().map_err(|_| bad("bad modulus"))?;
                let residues = res
                    .split(',')
                    .map(|r| r.trim().parse::<i64>().map_err(|_| bad("bad residue")))
                    .collect::<Result<Vec<_>>>()?;
                self.residues[coord] = Some(ResidueClass::new(modulus, &residues)?);
            }
        }
        Ok(())
    }
}

impl FromStr for RepConstraint {
    type Err = Error;

    /// Clauses separated by `;`, e.g. `x=odd;z=1,7 mod 8;primitive`.
    fn from_str(s: &str) -> Result<Self> {
        let mut c = RepConstraint::none();
        for clause in s.split(';').filter(|c| !c.trim().is_empty()) {
            c.add_clause(clause)?;
        }
        Ok(c)
    }
}

impl fmt::Display for RepConstraint {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts = Vec::new();
        for (i, var) in ["x", "y", "z"].iter().enumerate() {
            match self.parity[i] {
                Parity::Odd => parts.push(format!("{var}=odd")),
                Parity::Even => parts.push(format!("{var}=even")),
                Parity::Any => {}
            }
            if let Some(rc) = &self.residues[i] {
                let rs: Vec<String> = rc.residues.iter().map(|r| r.to_string()).collect();
                parts.push(format!("{var}={} mod {}", rs.join(","), rc.modulus));
            }
        }
        if self.primitive {
            parts.push("primitive".into());
        }
        write!(f, "{}", parts.join(";"))
    }
}

/// Enumeration geometry for one form: the Gram matrix plus the Schur-complement
/// data that bounds `y` for fixed `x` and `z` for fixed `(x, y)`.
struct Ellipsoid {
    g: [[i128; 3]; 3],
    adj11: i128,
    det: i128,
    /// `g33 g22 − g23²`, `g33 g12 − g13 g23`, `g33 g11 − g13²`
    s22: i128,
    s12: i128,
    s11: i128,
}

impl Ellipsoid {
    fn new(form: &TernaryForm) -> Self {
        let g = form.gram();
        Ellipsoid {
            g,
            adj11: form.gram_adjugate()[0][0],
            det: form.determinant(),
            s22: g[2][2] * g[1][1] - g[1][2] * g[1][2],
            s12: g[2][2] * g[0][1] - g[0][2] * g[1][2],
            s11: g[2][2] * g[0][0] - g[0][2] * g[0][2],
        }
    }

    /// `|x| ≤ ⌊√(n (G⁻¹)₁₁)⌋`, exact via the adjugate.
    fn x_bound(&self, n: i128) -> i128 {
        isqrt(n * self.adj11 / self.det)
    }

    /// Superset of the integer `y` with `min_z f(x, y, z) ≤ n`.
    fn y_range(&self, x: i128, n: i128) -> Option<(i128, i128)> {
        let b = self.s12 * x;
        let c = self.s11 * x * x - n * self.g[2][2];
        let disc = b * b - self.s22 * c;
        if disc < 0 {
            return None;
        }
        let s = isqrt(disc) + 1;
        Some((floor_div(-b - s, self.s22), ceil_div(-b + s, self.s22)))
    }

    /// `(h, c0)` with `f(x, y, z) − n = g33 z² + 2 h z + c0`.
    fn z_coefficients(&self, x: i128, y: i128, n: i128) -> (i128, i128) {
        let g = &self.g;
        let h = g[0][2] * x + g[1][2] * y;
        let q2 = g[0][0] * x * x + 2 * g[0][1] * x * y + g[1][1] * y * y;
        (h, q2 - n)
    }
}

/// Visits every vector `v` with `f(v) ≤ bound`, in lexicographic order.
pub fn for_each_vector_up_to(form: &TernaryForm, bound: i64, mut visit: impl FnMut([i64; 3], i64)) {
    if bound < 0 {
        return;
    }
    let e = Ellipsoid::new(form);
    let n = bound as i128;
    let g33 = e.g[2][2];
    let xb = e.x_bound(n);
    for x in -xb..=xb {
        let Some((ylo, yhi)) = e.y_range(x, n) else { continue };
        for y in ylo..=yhi {
            let (h, c0) = e.z_coefficients(x, y, n);
            let disc = h * h - g33 * c0;
            if disc < 0 {
                continue;
            }
            let s = isqrt(disc);
            let zlo = ceil_div(-h - s, g33);
            let zhi = floor_div(-h + s, g33);
            for z in zlo..=zhi {
                let v = [x as i64, y as i64, z as i64];
                let val = form.evaluate(v);
                if val <= n {
                    visit(v, val as i64);
                }
            }
        }
    }
}

/// Visits the solutions of `f(v) = n` in lexicographic order; stops early when
/// `visit` returns `false`.
fn for_each_solution(form: &TernaryForm, n: i64, mut visit: impl FnMut([i64; 3]) -> bool) {
    if n < 0 {
        return;
    }
    let e = Ellipsoid::new(form);
    let n = n as i128;
    let g33 = e.g[2][2];
    let xb = e.x_bound(n);
    for x in -xb..=xb {
        let Some((ylo, yhi)) = e.y_range(x, n) else { continue };
        for y in ylo..=yhi {
            let (h, c0) = e.z_coefficients(x, y, n);
            let disc = h * h - g33 * c0;
            if disc < 0 {
                continue;
            }
            let s = isqrt(disc);
            if s * s != disc {
                continue;
            }
            let mut roots = [-h - s, -h + s];
            if s == 0 {
                roots[1] = i128::MIN;
            }
            for num in roots {
                if num == i128::MIN || num % g33 != 0 {
                    continue;
                }
                if !visit([x as i64, y as i64, (num / g33) as i64]) {
                    return;
                }
            }
        }
    }
}

/// All integer triples with `f(x, y, z) = n` satisfying `constraint`,
/// in lexicographic order. An empty list means `n` is not represented.
pub fn representations(form: &TernaryForm, n: i64, constraint: &RepConstraint) -> Vec<Representation> {
    let mut out = Vec::new();
    for_each_solution(form, n, |v| {
        if constraint.admits(v) {
            out.push(Representation {
                x: v[0],
                y: v[1],
                z: v[2],
                value: n,
            });
        }
        true
    });
    out
}

/// The lexicographically first constrained representation, if any.
pub fn first_representation(form: &TernaryForm, n: i64, constraint: &RepConstraint) -> Option<Representation> {
    let mut found = None;
    for_each_solution(form, n, |v| {
        if constraint.admits(v) {
            found = Some(Representation {
                x: v[0],
                y: v[1],
                z: v[2],
                value: n,
            });
            false
        } else {
            true
        }
    });
    found
}

/// `r(n, f)` restricted by `constraint`.
pub fn count(form: &TernaryForm, n: i64, constraint: &RepConstraint) -> u64 {
    let mut c = 0;
    for_each_solution(form, n, |v| {
        if constraint.admits(v) {
            c += 1;
        }
        true
    });
    c
}

/// `r(n, f)` for every `0 ≤ n ≤ limit`, accumulated in one pass over the ellipsoid.
pub fn representation_counts(form: &TernaryForm, limit: i64) -> Vec<u64> {
    let mut counts = vec![0u64; (limit.max(-1) + 1) as usize];
    for_each_vector_up_to(form, limit, |_, val| counts[val as usize] += 1);
    counts
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> TernaryForm {
        s.parse().unwrap()
    }

    /// Plain cube search; independent of the ellipsoid bounds.
    fn brute(form: &TernaryForm, n: i64, box_: i64) -> Vec<[i64; 3]> {
        let mut v = Vec::new();
        for x in -box_..=box_ {
            for y in -box_..=box_ {
                for z in -box_..=box_ {
                    if form.evaluate([x, y, z]) == n as i128 {
                        v.push([x, y, z]);
                    }
                }
            }
        }
        v
    }

    #[test]
    fn representations_of_49_by_1_3_21() {
        let form = f("diag(1,3,21)");
        let reps = representations(&form, 49, &RepConstraint::none());
        let coords: Vec<[i64; 3]> = reps.iter().map(|r| r.coords()).collect();
        assert_eq!(coords, brute(&form, 49, 10));
        assert_eq!(reps.len(), 30);
        for sx in [-1, 1] {
            assert!(coords.contains(&[7 * sx, 0, 0]));
            for sy in [-1, 1] {
                for sz in [-1, 1] {
                    assert!(coords.contains(&[5 * sx, sy, sz]));
                }
            }
        }
    }

    #[test]
    fn zero_and_constraints() {
        let reps = representations(&f("diag(1,1,1)"), 0, &RepConstraint::none());
        assert_eq!(reps.iter().map(|r| r.coords()).collect::<Vec<_>>(), vec![[0, 0, 0]]);

        let odd_x = RepConstraint::none().parity(0, Parity::Odd);
        let reps = representations(&f("diag(1,1,8)"), 10, &odd_x);
        for s in [[1, 1, 1], [-1, 1, -1], [1, -1, 1], [-1, -1, -1]] {
            assert!(reps.iter().any(|r| r.coords() == s));
        }
        assert!(reps.iter().all(|r| r.x % 2 != 0));
    }

    #[test]
    fn count_examples() {
        let f1 = f("diag(1,3,21)");
        let f2 = f("1,6,12,-6,0,0");
        let none = RepConstraint::none();
        assert_eq!(count(&f1, 1, &none), 2);
        assert_eq!(count(&f1, 25, &none), 14);
        assert_eq!(count(&f2, 25, &none), 14);
        let g = f("diag(2,3,15)");
        assert!(count(&g, 50, &none) >= 2);
        let reps = representations(&g, 50, &none);
        assert!(reps.iter().any(|r| r.coords() == [5, 0, 0]));
        assert!(reps.iter().any(|r| r.coords() == [-5, 0, 0]));
    }

    #[test]
    fn agrees_with_brute_force_on_skew_forms() {
        for s in ["2,5,11,2,-2,2", "7,7,12,6,6,4", "1,4,9,-4,0,0", "3,3,4,-2,2,0", "2,2,9,2,-2,0"] {
            let form = f(s);
            for n in 0..60 {
                let got: Vec<[i64; 3]> = representations(&form, n, &RepConstraint::none())
                    .iter()
                    .map(|r| r.coords())
                    .collect();
                assert_eq!(got, brute(&form, n, 12), "{s} n={n}");
            }
        }
    }

    #[test]
    fn sieve_counts_match_direct_counts() {
        for s in ["diag(1,3,21)", "2,5,11,2,-2,2", "1,4,4,-2,0,0"] {
            let form = f(s);
            let counts = representation_counts(&form, 10_000);
            for n in (0..=10_000).step_by(7) {
                assert_eq!(counts[n as usize], count(&form, n, &RepConstraint::none()), "{s} n={n}");
            }
        }
    }

    #[test]
    fn diagonal_reps_closed_under_sign_changes() {
        let form = f("diag(1,5,10)");
        for n in [56, 104, 126, 1000] {
            let reps = representations(&form, n, &RepConstraint::none());
            for r in &reps {
                for flip in 0..8 {
                    let v = [
                        if flip & 4 != 0 { -r.x } else { r.x },
                        if flip & 2 != 0 { -r.y } else { r.y },
                        if flip & 1 != 0 { -r.z } else { r.z },
                    ];
                    assert!(reps.iter().any(|q| q.coords() == v));
                }
            }
        }
    }

    #[test]
    fn constraint_parsing() {
        let c: RepConstraint = "x=1,7 mod 8;y=even;primitive".parse().unwrap();
        assert!(c.admits([7, 2, 3]));
        assert!(!c.admits([3, 2, 3]));
        assert!(!c.admits([1, 1, 0]));
        assert!(!RepConstraint::none().primitive().admits([2, 4, 0]));
        assert_eq!(c.to_string(), "x=1,7 mod 8;y=even;primitive");
        assert!("w=odd".parse::<RepConstraint>().is_err());
        assert!("x=1 mod 0".parse::<RepConstraint>().is_err());
    }

    #[test]
    fn first_representation_is_lexicographic_minimum() {
        let form = f("1,4,9,-4,0,0");
        let all = representations(&form, 18, &RepConstraint::none().primitive());
        assert_eq!(first_representation(&form, 18, &RepConstraint::none().primitive()), all.first().copied());
    }
}
