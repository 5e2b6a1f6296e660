use crate::arith::{det3, mat_mul3, mod_inverse, modulo, transpose3};
use crate::error::{Error, Result};
use crate::forms::TernaryForm;

/// Normalized representatives of the isotropic lines of `f` over `F_p`.
pub fn isotropic_lines(f: &TernaryForm, p: i64) -> Vec<[i64; 3]> {
    let mut out = Vec::new();
    let mut test = |v: [i64; 3]| {
        if modulo(f.evaluate(v), p as i128) == 0 {
            out.push(v);
        }
    };
    for a in 0..p {
        for b in 0..p {
            test([1, a, b]);
        }
    }
    for b in 0..p {
        test([0, 1, b]);
    }
    test([0, 0, 1]);
    out
}

/// Hermite-style row reduction of integer generators to a basis of the
/// rank-3 lattice they span.
fn lattice_basis(mut rows: Vec<[i128; 3]>) -> [[i128; 3]; 3] {
    for col in 0..3 {
        loop {
            let pivot = (col..rows.len())
                .filter(|&r| rows[r][col] != 0)
                .min_by_key(|&r| rows[r][col].abs());
            let Some(pr) = pivot else { break };
            rows.swap(col, pr);
            let mut done = true;
            for r in col + 1..rows.len() {
                let q = rows[r][col].div_euclid(rows[col][col]);
                if q != 0 {
                    for c in 0..3 {
                        rows[r][c] -= q * rows[col][c];
                    }
                }
                if rows[r][col] != 0 {
                    done = false;
                }
            }
            if done {
                break;
            }
        }
    }
    [rows[0], rows[1], rows[2]]
}

/// The neighbor `L_v + ℤ·v/p` of the lattice of `f`, where `v` lifts the
/// isotropic line `line` to `f(v) ≡ 0 (mod p²)` and `L_v = {x : B(x, v) ≡ 0 (mod p)}`.
fn neighbor_from_line(f: &TernaryForm, line: [i64; 3], p: i64) -> Result<TernaryForm> {
    let g = f.gram();
    let p = p as i128;
    let mut v = line.map(|c| c as i128);
    let gv: [i128; 3] = std::array::from_fn(|i| (0..3).map(|j| g[i][j] * v[j]).sum());
    let i = (0..3)
        .find(|&i| modulo(gv[i], p) != 0)
        .ok_or_else(|| Error::Precondition(format!("form {f} is degenerate modulo {p}")))?;
    let fv = f.bilinear(v, v);
    let inv = mod_inverse(modulo(2 * gv[i], p), p).expect("p is odd and coprime to the pivot");
    v[i] += p * modulo(-(fv / p) * inv, p);
    debug_assert_eq!(modulo(f.bilinear(v, v), p * p), 0);

    // L_v = span{p e_i, e_j − t_j e_i}; generators of p·L' are p·L_v and v
    let c: [i128; 3] = std::array::from_fn(|k| modulo(gv[k], p));
    let ci = mod_inverse(c[i], p).expect("pivot is a unit mod p");
    let mut gens = Vec::with_capacity(4);
    let mut e = [0i128; 3];
    e[i] = p * p;
    gens.push(e);
    for j in (0..3).filter(|&j| j != i) {
        let mut w = [0i128; 3];
        w[j] = p;
        w[i] = -p * modulo(c[j] * ci, p);
        gens.push(w);
    }
    gens.push(v);
    let rows = lattice_basis(gens);
    let b: [[i128; 3]; 3] = std::array::from_fn(|r| [rows[0][r], rows[1][r], rows[2][r]]);
    let scaled = mat_mul3(&mat_mul3(&transpose3(&b), &g), &b);
    if scaled.iter().flatten().any(|x| x % (p * p) != 0) {
        return Err(Error::Invariant(format!("{p}-neighbor of {f} along {line:?} is not integral")));
    }
    let ng: [[i128; 3]; 3] = std::array::from_fn(|r| std::array::from_fn(|s| scaled[r][s] / (p * p)));
    if det3(&ng) != f.determinant() {
        return Err(Error::Invariant(format!("{p}-neighbor of {f} changed the determinant")));
    }
    TernaryForm::from_gram(&ng)
}

/// All `p`-neighbors of `f` (one per isotropic line mod `p`), unreduced.
pub fn p_neighbors(f: &TernaryForm, p: i64) -> Result<Vec<TernaryForm>> {
    if p < 3 || p % 2 == 0 || f.determinant() % p as i128 == 0 {
        return Err(Error::Precondition(format!("neighbors need an odd prime p ∤ det, got {p}")));
    }
    isotropic_lines(f, p)
        .into_iter()
        .map(|line| neighbor_from_line(f, line, p))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::genus::{is_equivalent, reduce};

    fn f(s: &str) -> TernaryForm {
        s.parse().unwrap()
    }

    #[test]
    fn ternary_has_p_plus_one_lines() {
        for (form, p) in [("diag(1,1,1)", 3), ("diag(3,3,5)", 7), ("1,4,9,-4,0,0", 5), ("diag(1,3,21)", 11)] {
            assert_eq!(isotropic_lines(&f(form), p).len() as i64, p + 1, "{form} at {p}");
        }
    }

    #[test]
    fn neighbors_of_unimodular_form_are_equivalent() {
        let one = f("diag(1,1,1)");
        for p in [3, 5, 7] {
            for n in p_neighbors(&one, p).unwrap() {
                assert_eq!(n.determinant(), 1);
                assert!(is_equivalent(&n, &one).is_some());
            }
        }
    }

    #[test]
    fn neighbor_reaches_second_class() {
        let seed = f("diag(3,3,5)");
        let other = reduce(&f("3,2,8,-2,0,0")).form;
        let found = [7, 11, 13]
            .iter()
            .flat_map(|&p| p_neighbors(&seed, p).unwrap())
            .any(|n| reduce(&n).form == other);
        assert!(found);
    }

    #[test]
    fn rejects_bad_primes() {
        assert!(p_neighbors(&f("diag(3,3,5)"), 5).is_err());
        assert!(p_neighbors(&f("diag(3,3,5)"), 2).is_err());
    }
}
