use std::sync::OnceLock;

use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::arith::{lcm, Rational};
use crate::error::{Error, Result};
use crate::forms::TernaryForm;

/// Stable rule ids, in library order.
pub const RULE_IDS: [&str; 14] = [
    "R2.1+", "R2.1-", "R4.2", "R4.4", "R4.6", "R4.8", "R4.9", "R4.10", "RL4.2", "R5.L", "R3.G77", "R3.G1714",
    "R3.G156", "R3.G617",
];

/// Integral symmetric Gram matrix of a binary or ternary form.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GramForm {
    pub gram: Vec<Vec<i128>>,
}

impl GramForm {
    pub fn ternary(f: &TernaryForm) -> Self {
        GramForm {
            gram: f.gram().iter().map(|r| r.to_vec()).collect(),
        }
    }

    pub fn diag(entries: &[i128]) -> Self {
        let n = entries.len();
        let mut gram = vec![vec![0; n]; n];
        for (i, &e) in entries.iter().enumerate() {
            gram[i][i] = e;
        }
        GramForm { gram }
    }

    pub fn dim(&self) -> usize {
        self.gram.len()
    }

    pub fn evaluate(&self, v: &[i64]) -> i128 {
        let n = self.dim();
        (0..n)
            .map(|i| (0..n).map(|j| v[i] as i128 * self.gram[i][j] * v[j] as i128).sum::<i128>())
            .sum()
    }

    pub fn as_ternary(&self) -> Option<TernaryForm> {
        if self.dim() != 3 {
            return None;
        }
        let g: [[i128; 3]; 3] = std::array::from_fn(|i| std::array::from_fn(|j| self.gram[i][j]));
        TernaryForm::from_gram(&g).ok()
    }
}

/// `Σ coeffs[i]·v[i] ≡ residue (mod modulus)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Congruence {
    pub coeffs: Vec<i64>,
    pub modulus: i64,
    pub residue: i64,
}

impl Congruence {
    pub fn new(coeffs: &[i64], modulus: i64, residue: i64) -> Self {
        Congruence {
            coeffs: coeffs.to_vec(),
            modulus,
            residue: residue.rem_euclid(modulus),
        }
    }

    pub fn holds(&self, v: &[i64]) -> bool {
        let s: i128 = self.coeffs.iter().zip(v).map(|(&c, &x)| c as i128 * x as i128).sum();
        s.rem_euclid(self.modulus as i128) == self.residue as i128
    }
}

/// A linear substitution `v ↦ U v` with `target(U v) = s · source(v)`,
/// valid (integral) on inputs meeting every congruence in `conditions`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RewriteRule {
    pub id: String,
    /// The identity in conventional notation.
    pub identity: String,
    pub source: GramForm,
    pub target: GramForm,
    /// Rows of `U`: output coordinate `i` is `Σ_j U[i][j] v[j]`.
    pub matrix: Vec<Vec<Rational>>,
    pub scale: Rational,
    pub conditions: Vec<Congruence>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub enum RuleFailure {
    Shape(String),
    /// `(Uᵀ G_target U)[row][col]` differs from `s · G_source[row][col]`.
    Identity {
        row: usize,
        col: usize,
        lhs: String,
        rhs: String,
    },
    /// A residue class meeting the conditions on which `U v` is not integral.
    Integrality { modulus: i64, residues: Vec<i64> },
}

impl std::fmt::Display for RuleFailure {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            RuleFailure::Shape(s) => write!(f, "shape mismatch: {s}"),
            RuleFailure::Identity { row, col, lhs, rhs } => {
                write!(f, "UᵀGU[{row}][{col}] = {lhs} but s·G[{row}][{col}] = {rhs}")
            }
            RuleFailure::Integrality { modulus, residues } => {
                write!(f, "U·v not integral for v ≡ {residues:?} (mod {modulus})")
            }
        }
    }
}

impl RewriteRule {
    pub fn dim(&self) -> usize {
        self.source.dim()
    }

    pub fn conditions_hold(&self, v: &[i64]) -> bool {
        self.conditions.iter().all(|c| c.holds(v))
    }

    /// `U v / divisor`, failing on unmet conditions or non-integral output.
    pub fn apply_divided(&self, v: &[i64], divisor: i64) -> Result<Vec<i64>> {
        if v.len() != self.dim() {
            return Err(Error::Precondition(format!("rule {} takes {} coordinates", self.id, self.dim())));
        }
        if !self.conditions_hold(v) {
            return Err(Error::Precondition(format!("{v:?} violates the conditions of rule {}", self.id)));
        }
        let d = Rational::from_integer(divisor as i128);
        self.matrix
            .iter()
            .map(|row| {
                let s: Rational = row
                    .iter()
                    .zip(v)
                    .map(|(u, &x)| *u * Rational::from_integer(x as i128))
                    .sum::<Rational>()
                    / d;
                if s.is_integer() {
                    i64::try_from(s.to_integer()).map_err(|_| Error::Overflow("rule application"))
                } else {
                    Err(Error::Precondition(format!(
                        "rule {} on {v:?} with divisor {divisor} is not integral",
                        self.id
                    )))
                }
            })
            .collect()
    }

    pub fn apply(&self, v: &[i64]) -> Result<Vec<i64>> {
        self.apply_divided(v, 1)
    }
}

/// Exact check of `Uᵀ G_target U = s · G_source`, then integrality of `U v`
/// over every residue class (modulo the lcm of the denominators and the
/// condition moduli) that meets the conditions.
pub fn validate_rule(rule: &RewriteRule) -> std::result::Result<(), RuleFailure> {
    let n = rule.source.dim();
    if rule.target.dim() != n || rule.matrix.len() != n || rule.matrix.iter().any(|r| r.len() != n) {
        return Err(RuleFailure::Shape(format!("rule {} needs {n}×{n} data", rule.id)));
    }
    let g = |i: usize, j: usize| Rational::from_integer(rule.target.gram[i][j]);
    for row in 0..n {
        for col in 0..n {
            let mut lhs = Rational::zero();
            for i in 0..n {
                for j in 0..n {
                    lhs += rule.matrix[i][row] * g(i, j) * rule.matrix[j][col];
                }
            }
            let rhs = rule.scale * Rational::from_integer(rule.source.gram[row][col]);
            if lhs != rhs {
                return Err(RuleFailure::Identity {
                    row,
                    col,
                    lhs: lhs.to_string(),
                    rhs: rhs.to_string(),
                });
            }
        }
    }
    let mut modulus: i128 = 1;
    for e in rule.matrix.iter().flatten() {
        modulus = lcm(modulus, *e.denom());
    }
    for c in &rule.conditions {
        modulus = lcm(modulus, c.modulus as i128);
    }
    let modulus = modulus as i64;
    let mut v = vec![0i64; n];
    loop {
        if rule.conditions_hold(&v) {
            let integral = rule.matrix.iter().all(|row| {
                row.iter()
                    .zip(&v)
                    .map(|(u, &x)| *u * Rational::from_integer(x as i128))
                    .sum::<Rational>()
                    .is_integer()
            });
            if !integral {
                return Err(RuleFailure::Integrality {
                    modulus,
                    residues: v.clone(),
                });
            }
        }
        // odometer over (ℤ/modulus)^n
        let mut i = 0;
        loop {
            if i == n {
                return Ok(());
            }
            v[i] += 1;
            if v[i] < modulus {
                break;
            }
            v[i] = 0;
            i += 1;
        }
    }
}

fn rat(s: &str) -> Rational {
    match s.split_once('/') {
        Some((n, d)) => Rational::new(n.parse().unwrap(), d.parse().unwrap()),
        None => Rational::from_integer(s.parse().unwrap()),
    }
}

/// Rows separated by `;`, entries by whitespace, e.g. `"1/2 -3/2 0; 1/2 1/2 0; 0 0 1"`.
fn matrix(s: &str) -> Vec<Vec<Rational>> {
    s.split(';')
        .map(|row| row.split_whitespace().map(rat).collect())
        .collect()
}

fn ternary(s: &str) -> GramForm {
    GramForm::ternary(&s.parse::<TernaryForm>().expect("builtin form literal"))
}

/// `4(a²+b²)(c²+d²) = (2ac+2bd)² + (2ad−2bc)²`, as the substitution
/// `(c, d) ↦ (2ac+2bd, 2ad−2bc)` on `x² + y²`.
pub fn lagrange_rule(a: i64, b: i64) -> RewriteRule {
    let (a, b) = (a as i128, b as i128);
    let int = Rational::from_integer;
    RewriteRule {
        id: "R5.L".into(),
        identity: format!(
            "(a²+b²+c²+d²)² = (a²+b²−c²−d²)² + (2ac+2bd)² + (2ad−2bc)² at (a,b)=({a},{b})"
        ),
        source: GramForm::diag(&[1, 1]),
        target: GramForm::diag(&[1, 1]),
        matrix: vec![vec![int(2 * a), int(2 * b)], vec![int(-2 * b), int(2 * a)]],
        scale: int(4 * (a * a + b * b)),
        conditions: vec![],
    }
}

fn rule(id: &str, identity: &str, source: GramForm, target: GramForm, m: &str, scale: &str, conditions: Vec<Congruence>) -> RewriteRule {
    RewriteRule {
        id: id.into(),
        identity: identity.into(),
        source,
        target,
        matrix: matrix(m),
        scale: rat(scale),
        conditions,
    }
}

fn build_library() -> Vec<RewriteRule> {
    let d1510 = || ternary("diag(1,5,10)");
    let two = |c: &[i64]| Congruence::new(c, 2, 0);
    vec![
        rule(
            "R2.1+",
            "16(x²+5y²+10z²) = (x+5y−10z)² + 5(x−3y−2z)² + 10(x+y+2z)²",
            d1510(),
            d1510(),
            "1 5 -10; 1 -3 -2; 1 1 2",
            "16",
            vec![],
        ),
        rule(
            "R2.1-",
            "16(x²+5y²+10z²) = (x−5y−10z)² + 5(x+3y−2z)² + 10(x−y+2z)²",
            d1510(),
            d1510(),
            "1 -5 -10; 1 3 -2; 1 -1 2",
            "16",
            vec![],
        ),
        rule(
            "R4.2",
            "x²+6y²+12z²−6yz = x² + 3(y/2−2z)² + 21(y/2)²",
            ternary("1,6,12,-6,0,0"),
            ternary("diag(1,3,21)"),
            "1 0 0; 0 1/2 -2; 0 1/2 0",
            "1",
            vec![two(&[0, 1, 0])],
        ),
        rule(
            "R4.4",
            "x²+4y²+4z²−2yz = x² + (y/2−2z)² + 15(y/2)²",
            ternary("1,4,4,-2,0,0"),
            ternary("diag(1,1,15)"),
            "1 0 0; 0 1/2 -2; 0 1/2 0",
            "1",
            vec![two(&[0, 1, 0])],
        ),
        rule(
            "R4.6",
            "2x²+5y²+11z²+2yz+2x(y−z) = 2(x+v)² + 3(u−2v)² + 15u², u=(y+z)/2, v=(y−z)/2",
            ternary("2,5,11,2,-2,2"),
            ternary("diag(2,3,15)"),
            "1 1/2 -1/2; 0 -1/2 3/2; 0 1/2 1/2",
            "1",
            vec![two(&[0, 1, -1])],
        ),
        rule(
            "R4.8",
            "2x²+3y²+15z² = 2((y−5z)/2)² + 3((2x+5y+5z)/6)² + 15((2x−y−z)/6)²",
            ternary("diag(2,3,15)"),
            ternary("diag(2,3,15)"),
            "0 1/2 -5/2; 1/3 5/6 5/6; 1/3 -1/6 -1/6",
            "1",
            vec![two(&[0, 1, -1]), Congruence::new(&[1, 1, 1], 3, 0)],
        ),
        rule(
            "R4.9",
            "7x²+7y²+12z²+6(x+y)z+4xy = 3((x+y)/2+2z)² + 10((x−y)/2)² + 15((x+y)/2)²",
            ternary("7,7,12,6,6,4"),
            ternary("diag(3,10,15)"),
            "1/2 1/2 2; 1/2 -1/2 0; 1/2 1/2 0",
            "1",
            vec![two(&[1, -1, 0])],
        ),
        rule(
            "R4.10",
            "3x²+10y²+15z² = 3((x+10y−5z)/6)² + 10((x+z)/2)² + 15((x−2y−5z)/6)²",
            ternary("diag(3,10,15)"),
            ternary("diag(3,10,15)"),
            "1/6 10/6 -5/6; 1/2 0 1/2; 1/6 -2/6 -5/6",
            "1",
            vec![two(&[1, 0, -1]), Congruence::new(&[1, 1, 1], 3, 0)],
        ),
        rule(
            "RL4.2",
            "16(x²+15y²) = (x−15y)² + 15(x+y)²",
            GramForm::diag(&[1, 15]),
            GramForm::diag(&[1, 15]),
            "1 -15; 1 1",
            "16",
            vec![],
        ),
        lagrange_rule(2, 1),
        rule(
            "R3.G77",
            "2x²+4y²+7z²+2xy = ((x−3y)/2)² + 7((x+y)/2)² + 7z²",
            ternary("2,4,7,0,0,2"),
            ternary("diag(1,7,7)"),
            "1/2 -3/2 0; 1/2 1/2 0; 0 0 1",
            "1",
            vec![two(&[1, -1, 0])],
        ),
        rule(
            "R3.G1714",
            "2x²+7y²+7z² = ((x−7u)/2)² + 7((x+u)/2)² + 14v², u=(y+z)/2, v=(y−z)/2",
            ternary("diag(2,7,7)"),
            ternary("diag(1,7,14)"),
            "1/2 -7/4 -7/4; 1/2 1/4 1/4; 0 1/2 -1/2",
            "1",
            vec![two(&[0, 1, -1]), Congruence::new(&[2, -1, -1], 4, 0)],
        ),
        rule(
            "R3.G156",
            "3x²+3y²+4z²−2yz+2zx = (v+2z)² + 5v² + 6u², u=(x+y)/2, v=(x−y)/2",
            ternary("3,3,4,-2,2,0"),
            ternary("diag(1,5,6)"),
            "1/2 -1/2 2; 1/2 -1/2 0; 1/2 1/2 0",
            "1",
            vec![two(&[1, -1, 0])],
        ),
        rule(
            "R3.G617",
            "2x²+5y²+5z²−4yz = ((x−7v)/2)² + 6u² + 7((x+v)/2)², u=(y+z)/2, v=(y−z)/2",
            ternary("2,5,5,-4,0,0"),
            ternary("diag(1,6,7)"),
            "1/2 -7/4 7/4; 0 1/2 1/2; 1/2 1/4 -1/4",
            "1",
            vec![two(&[0, 1, -1]), Congruence::new(&[2, -1, 1], 4, 0)],
        ),
    ]
}

/// The immutable library of builtin rules.
#[derive(Debug)]
pub struct RuleLibrary {
    rules: Vec<RewriteRule>,
}

impl RuleLibrary {
    pub fn rules(&self) -> &[RewriteRule] {
        &self.rules
    }

    pub fn get(&self, id: &str) -> Result<&RewriteRule> {
        self.rules.iter().find(|r| r.id == id).ok_or_else(|| Error::Unknown {
            kind: "rule",
            name: id.to_string(),
        })
    }
}

/// Builds (once) and returns the builtin library; every rule is validated on
/// construction and an invalid one aborts.
pub fn builtin_rules() -> &'static RuleLibrary {
    static LIB: OnceLock<RuleLibrary> = OnceLock::new();
    LIB.get_or_init(|| {
        let rules = build_library();
        for r in &rules {
            if let Err(e) = validate_rule(r) {
                panic!("builtin rule {} fails validation: {e}", r.id);
            }
        }
        RuleLibrary { rules }
    })
}

impl Default for RuleLibrary {
    fn default() -> Self {
        RuleLibrary { rules: build_library() }
    }
}
