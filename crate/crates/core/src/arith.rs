//! Small exact-integer helpers shared by the modules.

use num_rational::Ratio;

/// Exact rational used for Gram inverses, rule matrices and genus averages.
pub type Rational = Ratio<i128>;

/// Floor of the square root of a nonnegative integer.
pub fn isqrt(n: i128) -> i128 {
    assert!(n >= 0, "isqrt of negative {n}");
    if n < 2 {
        return n;
    }
    let mut x = (n as f64).sqrt() as i128;
    while x * x > n {
        x -= 1;
    }
    while (x + 1) * (x + 1) <= n {
        x += 1;
    }
    x
}

pub fn is_square(n: i128) -> bool {
    n >= 0 && {
        let r = isqrt(n);
        r * r == n
    }
}

pub fn gcd(a: i128, b: i128) -> i128 {
    num_integer::gcd(a, b)
}

pub fn lcm(a: i128, b: i128) -> i128 {
    if a == 0 || b == 0 {
        0
    } else {
        num_integer::lcm(a, b)
    }
}

/// Nonnegative residue of `a` modulo `m > 0`.
pub fn modulo(a: i128, m: i128) -> i128 {
    a.rem_euclid(m)
}

pub fn floor_div(a: i128, b: i128) -> i128 {
    num_integer::Integer::div_floor(&a, &b)
}

pub fn ceil_div(a: i128, b: i128) -> i128 {
    -floor_div(-a, b)
}

/// Modular inverse of `a` modulo `m`, if it exists.
pub fn mod_inverse(a: i128, m: i128) -> Option<i128> {
    let ext = num_integer::Integer::extended_gcd(&modulo(a, m), &m);
    (ext.gcd == 1).then(|| modulo(ext.x, m))
}

/// Largest `k` with `2^k | n` (n != 0).
pub fn two_adic_valuation(n: i128) -> u32 {
    debug_assert!(n != 0);
    n.trailing_zeros()
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    if n.is_multiple_of(2) {
        return n == 2;
    }
    let mut d = 3;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

pub fn primes_up_to(limit: u64) -> Vec<u64> {
    (2..=limit).filter(|&p| is_prime(p)).collect()
}

/// Integer 3×3 determinant.
pub fn det3(m: &[[i128; 3]; 3]) -> i128 {
    m[0][0] * (m[1][1] * m[2][2] - m[1][2] * m[2][1]) - m[0][1] * (m[1][0] * m[2][2] - m[1][2] * m[2][0])
        + m[0][2] * (m[1][0] * m[2][1] - m[1][1] * m[2][0])
}

/// Adjugate of a 3×3 integer matrix, so that `m * adj(m) = det(m) * I`.
pub fn adjugate3(m: &[[i128; 3]; 3]) -> [[i128; 3]; 3] {
    let c = |r0: usize, r1: usize, c0: usize, c1: usize| m[r0][c0] * m[r1][c1] - m[r0][c1] * m[r1][c0];
    [
        [c(1, 2, 1, 2), -c(0, 2, 1, 2), c(0, 1, 1, 2)],
        [-c(1, 2, 0, 2), c(0, 2, 0, 2), -c(0, 1, 0, 2)],
        [c(1, 2, 0, 1), -c(0, 2, 0, 1), c(0, 1, 0, 1)],
    ]
}

pub fn mat_mul3(a: &[[i128; 3]; 3], b: &[[i128; 3]; 3]) -> [[i128; 3]; 3] {
    let mut out = [[0i128; 3]; 3];
    for (i, row) in out.iter_mut().enumerate() {
        for (j, cell) in row.iter_mut().enumerate() {
            *cell = (0..3).map(|k| a[i][k] * b[k][j]).sum();
        }
    }
    out
}

pub fn transpose3(a: &[[i128; 3]; 3]) -> [[i128; 3]; 3] {
    let mut out = [[0i128; 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            out[i][j] = a[j][i];
        }
    }
    out
}

pub const IDENTITY3: [[i128; 3]; 3] = [[1, 0, 0], [0, 1, 0], [0, 0, 1]];
