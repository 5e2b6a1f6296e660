use std::collections::BTreeSet;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::isometry::{aut_size, is_equivalent};
use super::neighbors::p_neighbors;
use super::reduce::reduce;
use super::form_key;
use crate::arith::{is_prime, Rational};
use crate::error::{Error, Result};
use crate::forms::{count, kronecker_symbol, RepConstraint, TernaryForm};

/// Closure guard; the genera handled here have a handful of classes.
const MAX_CLASSES: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum Provenance {
    Fixture { name: String },
    NeighborClosure { seed: TernaryForm, primes: Vec<i64>, skipped: Vec<i64> },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct ClassEntry {
    pub form: TernaryForm,
    pub aut_size: u64,
}

/// Pairwise inequivalent forms of one determinant, each with `|Aut|`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusClassSet {
    pub determinant: i64,
    pub classes: Vec<ClassEntry>,
    pub provenance: Provenance,
}

impl GenusClassSet {
    /// Checks equal determinants and pairwise inequivalence, then attaches
    /// automorphism counts.
    pub fn from_forms(forms: &[TernaryForm], provenance: Provenance) -> Result<Self> {
        let first = forms
            .first()
            .ok_or_else(|| Error::Precondition("a class set needs at least one form".into()))?;
        let det = first.determinant();
        if let Some(bad) = forms.iter().find(|f| f.determinant() != det) {
            return Err(Error::Invariant(format!(
                "{bad} has determinant {} but {first} has {det}",
                bad.determinant()
            )));
        }
        for (i, f) in forms.iter().enumerate() {
            for g in &forms[i + 1..] {
                if is_equivalent(f, g).is_some() {
                    return Err(Error::Invariant(format!("{f} and {g} are equivalent")));
                }
            }
        }
        let classes = forms
            .par_iter()
            .map(|f| ClassEntry {
                form: *f,
                aut_size: aut_size(f),
            })
            .collect();
        Ok(GenusClassSet {
            determinant: det as i64,
            classes,
            provenance,
        })
    }

    pub fn forms(&self) -> Vec<TernaryForm> {
        self.classes.iter().map(|c| c.form).collect()
    }

    /// Canonical reductions of the representatives, for order-free comparison.
    pub fn canonical_keys(&self) -> BTreeSet<[i64; 6]> {
        self.classes.iter().map(|c| form_key(&reduce(&c.form).form)).collect()
    }
}

/// Closure of the class of `seed` under `p`-neighbor steps for the given
/// primes. Classes appear in discovery order, starting with the seed's.
pub fn neighbor_class_set(seed: &TernaryForm, primes: &[i64]) -> Result<GenusClassSet> {
    let det = seed.determinant();
    for &p in primes {
        if p < 3 || !is_prime(p as u64) || det % p as i128 == 0 {
            return Err(Error::Precondition(format!("{p} is not an odd prime coprime to 2·{det}")));
        }
    }
    let start = reduce(seed).form;
    let mut seen = BTreeSet::from([form_key(&start)]);
    let mut classes = vec![start];
    let mut frontier = vec![start];
    let mut skipped = BTreeSet::new();
    while !frontier.is_empty() {
        let found: Vec<Vec<(i64, Vec<TernaryForm>)>> = frontier
            .par_iter()
            .map(|f| {
                primes
                    .iter()
                    .map(|&p| Ok((p, p_neighbors(f, p)?.iter().map(|n| reduce(n).form).collect())))
                    .collect::<Result<_>>()
            })
            .collect::<Result<_>>()?;
        let mut next = Vec::new();
        for (p, ns) in found.into_iter().flatten() {
            if ns.is_empty() {
                skipped.insert(p);
            }
            for n in ns {
                if seen.insert(form_key(&n)) {
                    classes.push(n);
                    next.push(n);
                }
            }
        }
        if classes.len() > MAX_CLASSES {
            return Err(Error::Invariant(format!("neighbor closure of {seed} exceeded {MAX_CLASSES} classes")));
        }
        frontier = next;
    }
    GenusClassSet::from_forms(
        &classes,
        Provenance::NeighborClosure {
            seed: *seed,
            primes: primes.to_vec(),
            skipped: skipped.into_iter().collect(),
        },
    )
}

/// `r(gen(f), n)`: the `1/|Aut|`-weighted mean of `r(n, ·)` over the classes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusAverage {
    pub n: i64,
    #[serde(with = "rational_string")]
    pub value: Rational,
}

pub fn genus_average(cs: &GenusClassSet, n: i64) -> GenusAverage {
    let counts: Vec<u64> = cs
        .classes
        .par_iter()
        .map(|c| count(&c.form, n, &RepConstraint::none()))
        .collect();
    let mut num = Rational::from_integer(0);
    let mut den = Rational::from_integer(0);
    for (c, r) in cs.classes.iter().zip(counts) {
        let w = Rational::new(1, c.aut_size as i128);
        num += w * Rational::from_integer(r as i128);
        den += w;
    }
    GenusAverage { n, value: num / den }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct RatioCheck {
    pub m: i64,
    pub p: i64,
    #[serde(with = "rational_string")]
    pub lhs: Rational,
    pub rhs: i64,
    pub pass: bool,
}

/// Compares `r(gen, m p²) / r(gen, m)` with `p + 1 − (−m·det / p)`.
pub fn ratio_check(cs: &GenusClassSet, m: i64, p: i64) -> Result<RatioCheck> {
    if m < 1 || p < 3 || !is_prime(p as u64) || (2 * m * cs.determinant) % p == 0 {
        return Err(Error::Precondition(format!(
            "ratio check needs a prime p ∤ 2·m·det (m={m}, p={p}, det={})",
            cs.determinant
        )));
    }
    let base = genus_average(cs, m).value;
    if base == Rational::from_integer(0) {
        return Err(Error::Precondition(format!("the genus does not represent m={m}")));
    }
    let lhs = genus_average(cs, m * p * p).value / base;
    let rhs = p + 1 - kronecker_symbol(-m * cs.determinant, p)? as i64;
    Ok(RatioCheck {
        m,
        p,
        lhs,
        rhs,
        pass: lhs == Rational::from_integer(rhs as i128),
    })
}

pub(crate) mod rational_string {
    use serde::{Deserialize, Deserializer, Serializer};

    use crate::arith::Rational;

    pub fn serialize<S: Serializer>(r: &Rational, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&r.to_string())
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Rational, D::Error> {
        let s = String::deserialize(d)?;
        s.parse().map_err(serde::de::Error::custom)
    }
}
