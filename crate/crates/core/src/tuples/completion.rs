use serde::{Deserialize, Serialize};

use super::SumTuple;
use crate::arith::{gcd, lcm, Rational};
use crate::error::{Error, Result};

/// One summand `w (m x + r)²` of a completion identity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionComponent {
    pub weight: i64,
    pub stride: i64,
    pub residue: i64,
}

/// `M·n + C = Σ wᵢ(mᵢxᵢ + rᵢ)²` where `n` is the tuple sum at `(x₁, x₂, x₃)`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompletionSystem {
    pub multiplier: i64,
    pub constant: i64,
    pub components: [CompletionComponent; 3],
}

impl CompletionSystem {
    /// `Σ wᵢ(mᵢxᵢ + rᵢ)²`.
    pub fn weighted_squares(&self, v: [i64; 3]) -> i128 {
        self.components
            .iter()
            .zip(v)
            .map(|(c, x)| {
                let s = c.stride as i128 * x as i128 + c.residue as i128;
                c.weight as i128 * s * s
            })
            .sum()
    }

    /// The diagonal form `w₁X² + w₂Y² + w₃Z²`.
    pub fn weights(&self) -> [i64; 3] {
        self.components.map(|c| c.weight)
    }
}

/// Per term: `g = gcd(2a, b)`, `m = 2a/g`, `r = b/g`, and `M` is the least
/// common multiple of `8a / gcd(8a, g²)`; then `w = M g² / (8a)`.
pub fn derive_completion(t: &SumTuple) -> Result<CompletionSystem> {
    let terms = t.terms();
    let mut multiplier: i128 = 1;
    for &(a, b) in &terms {
        let g = gcd(2 * a as i128, b as i128);
        let eight_a = 8 * a as i128;
        multiplier = lcm(multiplier, eight_a / gcd(eight_a, g * g));
    }
    let components = terms.map(|(a, b)| {
        let g = gcd(2 * a as i128, b as i128);
        CompletionComponent {
            weight: (multiplier * g * g / (8 * a as i128)) as i64,
            stride: (2 * a as i128 / g) as i64,
            residue: (b as i128 / g) as i64,
        }
    });
    let constant = components.iter().map(|c| c.weight * c.residue * c.residue).sum();
    let sys = CompletionSystem {
        multiplier: multiplier as i64,
        constant,
        components,
    };
    check_identity(t, &sys)?;
    Ok(sys)
}

/// Coefficient comparison of `w(mx+r)² − w r²` against `M·x(ax+b)/2`, per term.
fn check_identity(t: &SumTuple, sys: &CompletionSystem) -> Result<()> {
    for ((a, b), c) in t.terms().into_iter().zip(sys.components) {
        let (w, m, r) = (c.weight as i128, c.stride as i128, c.residue as i128);
        let big_m = Rational::from_integer(sys.multiplier as i128);
        let quad_ok = Rational::from_integer(w * m * m) == big_m * Rational::new(a as i128, 2);
        let lin_ok = Rational::from_integer(2 * w * m * r) == big_m * Rational::new(b as i128, 2);
        if !(quad_ok && lin_ok) {
            return Err(Error::Invariant(format!(
                "completion identity fails for term ({a},{b}) of {t}: w={w} m={m} r={r} M={}",
                sys.multiplier
            )));
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::tuples::term;
    use rand::{Rng, SeedableRng};

    fn comp(w: i64, m: i64, r: i64) -> CompletionComponent {
        CompletionComponent {
            weight: w,
            stride: m,
            residue: r,
        }
    }

    #[test]
    fn examples() {
        let s = derive_completion(&"5,1,2,2,1,1".parse().unwrap()).unwrap();
        assert_eq!((s.multiplier, s.constant), (40, 16));
        assert_eq!(s.components, [comp(1, 10, 1), comp(10, 2, 1), comp(5, 2, 1)]);

        let s = derive_completion(&"7,1,1,1,1,1".parse().unwrap()).unwrap();
        assert_eq!((s.multiplier, s.constant), (56, 15));
        assert_eq!(s.components, [comp(1, 14, 1), comp(7, 2, 1), comp(7, 2, 1)]);

        let s = derive_completion(&"16,4,2,0,1,1".parse().unwrap()).unwrap();
        assert_eq!((s.multiplier, s.constant), (8, 2));
        assert_eq!(s.components, [comp(1, 8, 1), comp(8, 1, 0), comp(1, 2, 1)]);
    }

    #[test]
    fn identity_holds_at_random_points() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for lit in ["5,1,2,2,1,1", "15,5,6,4,1,1", "21,7,3,1,2,2", "9,3,8,8,3,1", "6,0,3,3,3,1"] {
            let t: SumTuple = lit.parse().unwrap();
            let s = derive_completion(&t).unwrap();
            for _ in 0..1000 {
                let v = [rng.gen_range(-10_000..10_000), rng.gen_range(-10_000..10_000), rng.gen_range(-10_000..10_000)];
                let n: i128 = t
                    .terms()
                    .iter()
                    .zip(v)
                    .map(|(&(a, b), x)| term(a, b, x).unwrap() as i128)
                    .sum();
                assert_eq!(s.weighted_squares(v) - s.constant as i128, s.multiplier as i128 * n);
            }
        }
    }
}
