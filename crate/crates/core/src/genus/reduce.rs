use serde::{Deserialize, Serialize};

use super::isometry::IsometryMatrix;
use crate::arith::{det3, floor_div, mat_mul3, transpose3};
use crate::forms::{for_each_vector_up_to, TernaryForm};

/// A canonical representative of the class of a form, with `Uᵀ G_f U = G_form`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reduction {
    pub form: TernaryForm,
    pub transform: IsometryMatrix,
}

type Vec3 = [i128; 3];
type Mat3 = [[i128; 3]; 3];
type CrossKey = (i128, i128, i128, bool, bool, bool);

fn bil(g: &[[i128; 3]; 3], u: &Vec3, v: &Vec3) -> i128 {
    (0..3).map(|i| (0..3).map(|j| u[i] * g[i][j] * v[j]).sum::<i128>()).sum()
}

fn columns(b: &[Vec3; 3]) -> [[i128; 3]; 3] {
    std::array::from_fn(|i| [b[0][i], b[1][i], b[2][i]])
}

/// Pairwise and triple size reduction until no basis vector can be shortened.
fn greedy_basis(g: &[[i128; 3]; 3]) -> [Vec3; 3] {
    let mut b: [Vec3; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
    loop {
        b.sort_by_key(|v| bil(g, v, v));
        let mut changed = false;
        for j in 0..3 {
            for i in 0..3 {
                if i == j {
                    continue;
                }
                let nii = bil(g, &b[i], &b[i]);
                let q = floor_div(2 * bil(g, &b[i], &b[j]) + nii, 2 * nii);
                if q != 0 {
                    let cand: Vec3 = std::array::from_fn(|k| b[j][k] - q * b[i][k]);
                    if bil(g, &cand, &cand) < bil(g, &b[j], &b[j]) {
                        b[j] = cand;
                        changed = true;
                    }
                }
            }
            let (i, k) = ((j + 1) % 3, (j + 2) % 3);
            for (si, sk) in [(1, 1), (1, -1), (-1, 1), (-1, -1)] {
                let cand: Vec3 = std::array::from_fn(|c| b[j][c] + si * b[i][c] + sk * b[k][c]);
                if bil(g, &cand, &cand) < bil(g, &b[j], &b[j]) {
                    b[j] = cand;
                    changed = true;
                }
            }
        }
        if !changed {
            return b;
        }
    }
}

fn cross_key(g: &Mat3) -> CrossKey {
    (
        g[1][2].abs(),
        g[0][2].abs(),
        g[0][1].abs(),
        g[1][2] < 0,
        g[0][2] < 0,
        g[0][1] < 0,
    )
}

/// Canonical reduced form: the diagonal is the successive minima
/// `λ₁ ≤ λ₂ ≤ λ₃`, and among the bases realizing them the cross terms are
/// smallest in absolute value (`a23`, then `a13`, then `a12`), nonnegative
/// where a sign choice remains. Two forms are equivalent iff their
/// reductions are equal.
pub fn reduce(f: &TernaryForm) -> Reduction {
    let g = f.gram();
    let basis = greedy_basis(&g);
    let bm = columns(&basis);
    let rg = mat_mul3(&mat_mul3(&transpose3(&bm), &g), &bm);
    let r = TernaryForm::from_gram(&rg).expect("greedy basis of a positive form");
    let bound = rg[0][0].max(rg[1][1]).max(rg[2][2]);

    let mut vecs: Vec<(i128, Vec3)> = Vec::new();
    for_each_vector_up_to(&r, bound as i64, |v, val| {
        if val > 0 {
            vecs.push((val as i128, v.map(|c| c as i128)));
        }
    });
    vecs.sort();

    // successive minima from the rank profile of the sorted vectors
    let mut minima = Vec::with_capacity(3);
    let mut indep: Vec<Vec3> = Vec::new();
    for (n, v) in &vecs {
        let independent = match indep.len() {
            0 => true,
            1 => {
                let u = indep[0];
                u[0] * v[1] != u[1] * v[0] || u[0] * v[2] != u[2] * v[0] || u[1] * v[2] != u[2] * v[1]
            }
            _ => det3(&columns(&[indep[0], indep[1], *v])) != 0,
        };
        if independent {
            indep.push(*v);
            minima.push(*n);
            if minima.len() == 3 {
                break;
            }
        }
    }
    let shell = |n: i128| vecs.iter().filter(move |(m, _)| *m == n).map(|(_, v)| v);

    let mut best: Option<(CrossKey, Mat3, Mat3)> = None;
    for v1 in shell(minima[0]) {
        for v2 in shell(minima[1]) {
            for v3 in shell(minima[2]) {
                let m = columns(&[*v1, *v2, *v3]);
                if det3(&m).abs() != 1 {
                    continue;
                }
                let cg = mat_mul3(&mat_mul3(&transpose3(&m), &rg), &m);
                let key = cross_key(&cg);
                if best.as_ref().is_none_or(|(k, _, _)| key < *k) {
                    best = Some((key, cg, m));
                }
            }
        }
    }
    let (_, cg, m) = best.expect("a basis realizes the successive minima in rank 3");
    let transform = IsometryMatrix::from_wide(&mat_mul3(&bm, &m));
    Reduction {
        form: TernaryForm::from_gram(&cg).expect("reduced gram is positive"),
        transform,
    }
}
