use std::collections::BTreeSet;
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::cache::cached_neighbor_class_set;
use super::classes::{neighbor_class_set, GenusClassSet, Provenance};
use super::form_key;
use super::reduce::reduce;
use crate::arith::primes_up_to;
use crate::forms::{first_representation, Parity, RepConstraint, TernaryForm};
use crate::verify::FixtureDatabase;

/// Known class representatives of a genus; `forms[0]` seeds the neighbor closure.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct GenusFixture {
    pub name: String,
    pub determinant: i64,
    pub forms: Vec<TernaryForm>,
    pub primes: Vec<i64>,
}

/// The genus fixtures of the checked-in claim database.
pub fn genus_fixtures() -> Vec<GenusFixture> {
    FixtureDatabase::builtin()
        .genera
        .iter()
        .map(|g| GenusFixture {
            name: g.forms[0].to_string(),
            determinant: g.determinant,
            forms: g.forms.clone(),
            primes: g.primes.clone(),
        })
        .collect()
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct FixtureOutcome {
    pub name: String,
    pub determinant: i64,
    pub determinants_equal: bool,
    pub pairwise_inequivalent: bool,
    pub closure_classes: usize,
    pub closure_matches: bool,
    pub pass: bool,
    pub detail: Option<String>,
}

/// Checks determinants, pairwise inequivalence, and that the neighbor closure
/// of the first form finds exactly the listed classes. With `cache`, closures
/// go through [`cached_neighbor_class_set`].
pub fn check_fixture(fx: &GenusFixture, cache: Option<&Path>) -> FixtureOutcome {
    let determinants_equal = fx.forms.iter().all(|f| f.determinant() == fx.determinant as i128);
    let listed = GenusClassSet::from_forms(&fx.forms, Provenance::Fixture { name: fx.name.clone() });
    let pairwise_inequivalent = listed.is_ok();
    let mut detail = listed.as_ref().err().map(|e| format!("representatives: {e}"));
    let closure = match cache {
        Some(dir) => cached_neighbor_class_set(dir, &fx.forms[0], &fx.primes).map(|(cs, _)| cs),
        None => neighbor_class_set(&fx.forms[0], &fx.primes),
    };
    let (closure_classes, closure_matches) = match closure {
        Ok(cs) => {
            let want: BTreeSet<[i64; 6]> = fx.forms.iter().map(|f| form_key(&reduce(f).form)).collect();
            let matches = cs.canonical_keys() == want;
            if !matches && detail.is_none() {
                let found: Vec<String> = cs.forms().iter().map(|f| f.to_string()).collect();
                detail = Some(format!("closure found [{}]", found.join("; ")));
            }
            (cs.classes.len(), matches)
        }
        Err(e) => {
            detail.get_or_insert(format!("closure: {e}"));
            (0, false)
        }
    };
    if !determinants_equal {
        detail.get_or_insert("determinant mismatch".to_string());
    }
    FixtureOutcome {
        name: fx.name.clone(),
        determinant: fx.determinant,
        determinants_equal,
        pairwise_inequivalent,
        closure_classes,
        closure_matches,
        pass: determinants_equal && pairwise_inequivalent && closure_matches,
        detail,
    }
}

pub fn genus_fixture_check(cache: Option<&Path>) -> Vec<FixtureOutcome> {
    genus_fixtures().par_iter().map(|fx| check_fixture(fx, cache)).collect()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorInstance {
    pub p: i64,
    /// Primitive `(u, v, w)` with `x² + 4y² + 9z² − 4yz` equal to `2p²`.
    pub representation: [i64; 3],
    /// `(u, 2v − w, w)`: `2p² = a² + b² + 8c²` with all three odd.
    pub odd_triple: [i64; 3],
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SpinorReport {
    pub p_limit: i64,
    pub instances: Vec<SpinorInstance>,
    /// Primes `p ≡ 3 (mod 4)` for which no such representation exists.
    pub failures: Vec<i64>,
}

impl SpinorReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }
}

/// For every prime `p ≡ 3 (mod 4)` up to `p_limit`, finds a primitive
/// representation of `2p²` by `x² + 4y² + 9z² − 4yz` with `x` and `z` odd.
pub fn spinor_instance_check(p_limit: i64) -> SpinorReport {
    let f3: TernaryForm = "1,4,9,-4,0,0".parse().expect("literal");
    let constraint = RepConstraint::none()
        .parity(0, Parity::Odd)
        .parity(2, Parity::Odd)
        .primitive();
    let primes: Vec<i64> = primes_up_to(p_limit.max(0) as u64)
        .into_iter()
        .map(|p| p as i64)
        .filter(|p| p % 4 == 3)
        .collect();
    let found: Vec<(i64, Option<[i64; 3]>)> = primes
        .par_iter()
        .map(|&p| (p, first_representation(&f3, 2 * p * p, &constraint).map(|r| r.coords())))
        .collect();
    let mut instances = Vec::new();
    let mut failures = Vec::new();
    for (p, rep) in found {
        match rep {
            Some([u, v, w]) => instances.push(SpinorInstance {
                p,
                representation: [u, v, w],
                odd_triple: [u, 2 * v - w, w],
            }),
            None => failures.push(p),
        }
    }
    SpinorReport {
        p_limit,
        instances,
        failures,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn determinants() {
        for fx in genus_fixtures() {
            for f in &fx.forms {
                assert_eq!(f.determinant(), fx.determinant as i128, "{}", fx.name);
            }
        }
    }

    #[test]
    fn every_fixture_passes() {
        for o in genus_fixture_check(None) {
            assert!(o.pass, "{o:?}");
        }
    }

    #[test]
    fn spinor_examples() {
        let f3: TernaryForm = "1,4,9,-4,0,0".parse().unwrap();
        assert_eq!(f3.evaluate([1, 2, 1]), 18);
        let r = spinor_instance_check(200);
        assert!(r.passed());
        assert_eq!(r.instances.iter().map(|i| i.p).take(3).collect::<Vec<_>>(), [3, 7, 11]);
        for i in &r.instances {
            let [a, b, c] = i.odd_triple;
            assert_eq!(a * a + b * b + 8 * c * c, 2 * i.p * i.p);
            assert!(a % 2 != 0 && b % 2 != 0 && c % 2 != 0);
            assert_eq!(f3.evaluate(i.representation), 2 * (i.p as i128).pow(2));
        }
    }
}
