use serde::{Deserialize, Serialize};

use super::reduce::reduce;
use crate::arith::{adjugate3, det3, mat_mul3, transpose3};
use crate::forms::{for_each_vector_up_to, TernaryForm};

/// Integer matrix `U` with `det U = ±1`; it carries `f` to `g` when `Uᵀ G_f U = G_g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct IsometryMatrix(pub [[i64; 3]; 3]);

impl IsometryMatrix {
    pub const IDENTITY: IsometryMatrix = IsometryMatrix([[1, 0, 0], [0, 1, 0], [0, 0, 1]]);

    pub(crate) fn from_wide(m: &[[i128; 3]; 3]) -> Self {
        IsometryMatrix(std::array::from_fn(|i| std::array::from_fn(|j| m[i][j] as i64)))
    }

    pub(crate) fn wide(&self) -> [[i128; 3]; 3] {
        std::array::from_fn(|i| std::array::from_fn(|j| self.0[i][j] as i128))
    }

    pub fn det(&self) -> i64 {
        det3(&self.wide()) as i64
    }

    pub fn compose(&self, other: &IsometryMatrix) -> IsometryMatrix {
        IsometryMatrix::from_wide(&mat_mul3(&self.wide(), &other.wide()))
    }

    pub fn inverse(&self) -> IsometryMatrix {
        let d = det3(&self.wide());
        let adj = adjugate3(&self.wide());
        IsometryMatrix::from_wide(&std::array::from_fn(|i| std::array::from_fn(|j| adj[i][j] * d)))
    }

    /// `Uᵀ G_f U = G_g`.
    pub fn carries(&self, f: &TernaryForm, g: &TernaryForm) -> bool {
        let u = self.wide();
        det3(&u).abs() == 1 && mat_mul3(&mat_mul3(&transpose3(&u), &f.gram()), &u) == g.gram()
    }
}

/// Calls `visit` with every `V` satisfying `Vᵀ G_src V = G_dst` (columns of `V`
/// are the images of the basis vectors), until it returns `false`.
pub(crate) fn for_each_isometry(
    src: &TernaryForm,
    dst: &TernaryForm,
    mut visit: impl FnMut(&[[i128; 3]; 3]) -> bool,
) {
    let target = dst.gram();
    let norms = [target[0][0], target[1][1], target[2][2]];
    let bound = norms.iter().copied().max().unwrap_or(0);
    let mut by_norm: [Vec<[i128; 3]>; 3] = Default::default();
    for_each_vector_up_to(src, bound as i64, |v, val| {
        for k in 0..3 {
            if val as i128 == norms[k] {
                by_norm[k].push(v.map(|c| c as i128));
            }
        }
    });
    for v1 in &by_norm[0] {
        for v2 in &by_norm[1] {
            if src.bilinear(*v1, *v2) != target[0][1] {
                continue;
            }
            for v3 in &by_norm[2] {
                if src.bilinear(*v1, *v3) != target[0][2] || src.bilinear(*v2, *v3) != target[1][2] {
                    continue;
                }
                let m = std::array::from_fn(|i| [v1[i], v2[i], v3[i]]);
                if det3(&m).abs() == 1 && !visit(&m) {
                    return;
                }
            }
        }
    }
}

/// An integral isometry carrying `f` to `g`, or `None` after an exhausted search.
pub fn is_equivalent(f: &TernaryForm, g: &TernaryForm) -> Option<IsometryMatrix> {
    if f.determinant() != g.determinant() {
        return None;
    }
    let rf = reduce(f);
    let rg = reduce(g);
    let mut found = None;
    for_each_isometry(&rf.form, &rg.form, |v| {
        found = Some(IsometryMatrix::from_wide(v));
        false
    });
    let v = found?;
    let u = rf.transform.compose(&v).compose(&rg.transform.inverse());
    debug_assert!(u.carries(f, g));
    Some(u)
}

/// `|Aut(f)|`, the number of integral `U` with `Uᵀ G U = G`.
pub fn aut_size(f: &TernaryForm) -> u64 {
    let r = reduce(f).form;
    let mut n = 0;
    for_each_isometry(&r, &r, |_| {
        n += 1;
        true
    });
    n
}

#[cfg(test)]
mod tests {
    use super::*;

    fn f(s: &str) -> TernaryForm {
        s.parse().unwrap()
    }

    #[test]
    fn equivalence_examples() {
        assert!(is_equivalent(&f("diag(3,3,5)"), &f("3,2,8,-2,0,0")).is_none());
        let a = f("1,6,12,-6,0,0");
        assert_eq!(is_equivalent(&a, &a).map(|u| u.carries(&a, &a)), Some(true));
        let u = is_equivalent(&f("diag(1,5,10)"), &f("diag(10,5,1)")).unwrap();
        assert!(u.carries(&f("diag(1,5,10)"), &f("diag(10,5,1)")));
        assert!(u.0.iter().flatten().all(|c| c.abs() <= 1));
        assert!(is_equivalent(&f("diag(1,1,1)"), &f("diag(1,1,2)")).is_none());
    }

    #[test]
    fn aut_examples() {
        assert_eq!(aut_size(&f("diag(1,3,21)")), 8);
        assert_eq!(aut_size(&f("diag(1,1,15)")), 16);
        assert_eq!(aut_size(&f("diag(1,1,1)")), 48);
    }

    #[test]
    fn identity_search_matches_brute_force() {
        // every U with entries in [-2, 2] preserving diag(1,1,2)
        let g = f("diag(1,1,2)");
        let mut brute = 0;
        for code in 0..5i64.pow(9) {
            let m: [[i64; 3]; 3] =
                std::array::from_fn(|i| std::array::from_fn(|j| (code / 5i64.pow((3 * i + j) as u32)) % 5 - 2));
            if IsometryMatrix(m).carries(&g, &g) {
                brute += 1;
            }
        }
        assert_eq!(aut_size(&g), brute);
    }
}
