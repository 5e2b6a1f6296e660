use proptest::prelude::*;

use quadsum::descent::builtin_rules;
use quadsum::forms::{count, exception_set, kronecker_symbol, RepConstraint, TernaryForm};
use quadsum::genus::{aut_size, is_equivalent};
use quadsum::tuples::{is_representable, verify_universal, SumTuple};
use quadsum::verify::{verify_all_tuples, FixtureDatabase, RunReport};

fn gram_transform(g: &[[i128; 3]; 3], u: &[[i64; 3]; 3]) -> [[i128; 3]; 3] {
    std::array::from_fn(|i| {
        std::array::from_fn(|j| {
            let mut s = 0;
            for k in 0..3 {
                for l in 0..3 {
                    s += u[k][i] as i128 * g[k][l] * u[l][j] as i128;
                }
            }
            s
        })
    })
}

/// Products of elementary shears, so the determinant is 1.
fn unimodular() -> impl Strategy<Value = [[i64; 3]; 3]> {
    prop::collection::vec((0usize..3, 0usize..3, -2i64..=2), 0..6).prop_map(|ops| {
        let mut m = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
        for (i, j, k) in ops {
            if i != j {
                for r in m.iter_mut() {
                    r[j] += k * r[i];
                }
            }
        }
        m
    })
}

fn small_form() -> impl Strategy<Value = TernaryForm> {
    (1i64..6, 1i64..6, 1i64..8, -1i64..=1, -1i64..=1, -1i64..=1).prop_filter_map("positive", |(a, b, c, x, y, z)| {
        TernaryForm::new(a, b, c, 2 * x, 2 * y, 2 * z).ok()
    })
}

fn tuple() -> impl Strategy<Value = SumTuple> {
    (1i64..10, 1i64..10, 1i64..10, 0i64..10, 0i64..10, 0i64..10).prop_filter_map("valid", |(a, c, e, b, d, f)| {
        let fix = |a: i64, b: i64| if (b - a) % 2 == 0 { b } else { b + 1 };
        SumTuple::new(a, fix(a, b), c, fix(c, d), e, fix(e, f)).ok()
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(128))]

    #[test]
    fn rules_scale_values(v in prop::collection::vec(-40i64..=40, 3)) {
        for rule in builtin_rules().rules() {
            let v = &v[..rule.dim()];
            if !rule.conditions_hold(v) {
                continue;
            }
            let out = rule.apply(v).unwrap();
            let scaled = rule.scale * num_rational::Ratio::from_integer(rule.source.evaluate(v));
            prop_assert_eq!(num_rational::Ratio::from_integer(rule.target.evaluate(&out)), scaled, "{}", rule.id);
        }
    }

    #[test]
    fn equivalence_under_unimodular_change(f in small_form(), u in unimodular()) {
        let g = TernaryForm::from_gram(&gram_transform(&f.gram(), &u)).unwrap();
        let m = is_equivalent(&f, &g).expect("transformed form is equivalent");
        prop_assert!(m.carries(&f, &g));
        prop_assert_eq!(aut_size(&f), aut_size(&g));
        for n in 0..30 {
            prop_assert_eq!(count(&f, n, &RepConstraint::none()), count(&g, n, &RepConstraint::none()));
        }
    }

    #[test]
    fn sieve_matches_witness_search(t in tuple(), limit in 0u64..300) {
        let r = verify_universal(&t, limit, 2).unwrap();
        for n in 0..=limit {
            let w = is_representable(&t, n).unwrap();
            prop_assert_eq!(w.is_none(), r.exceptions.contains(&n));
            if let Some(w) = w {
                prop_assert_eq!(t.evaluate(w).unwrap(), n as i64);
            }
        }
    }

    #[test]
    fn exception_members_are_unrepresented(a in 1u64..6, b in 1u64..6, c in 1u64..12) {
        let e = exception_set(a, b, c, 400).unwrap();
        let f = TernaryForm::diag(a as i64, b as i64, c as i64).unwrap();
        for n in 0..=400u64 {
            prop_assert_eq!(e.members.contains(&n), count(&f, n as i64, &RepConstraint::none()) == 0);
        }
    }

    #[test]
    fn kronecker_matches_euler_criterion(a in -500i64..500, idx in 1usize..60) {
        let p = quadsum::arith::primes_up_to(300)[idx] as i64;
        let r = a.rem_euclid(p);
        let expected = if r == 0 {
            0
        } else if (1..p).any(|x| x * x % p == r) {
            1
        } else {
            -1
        };
        prop_assert_eq!(kronecker_symbol(a, p).unwrap(), expected);
    }
}

#[test]
fn report_json_round_trips() {
    let r = verify_all_tuples(FixtureDatabase::builtin(), 2_000, 2);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("r.json");
    r.write(quadsum::verify::ReportFormat::Json, &path).unwrap();
    assert_eq!(RunReport::read_json(&path).unwrap(), r);
}
