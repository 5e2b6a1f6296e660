use crate::error::{Error, Result};

/// Jacobi symbol `(a / n)` for odd `n ≥ 1`, computed with quadratic reciprocity.
pub fn kronecker_symbol(a: i64, n: i64) -> Result<i8> {
    if n <= 0 || n % 2 == 0 {
        return Err(Error::EvenModulus(n));
    }
    let mut num = a.rem_euclid(n) as u64;
    let mut den = n as u64;
    let mut acc = 1i8;
    loop {
        num %= den;
        if num == 0 {
            return Ok(if den == 1 { acc } else { 0 });
        }
        while num.is_multiple_of(2) {
            // (2/den) = -1 iff den ≡ ±3 (mod 8)
            if den % 8 == 3 || den % 8 == 5 {
                acc = -acc;
            }
            num /= 2;
        }
        if num == 1 {
            return Ok(acc);
        }
        if num % 4 == 3 && den % 4 == 3 {
            acc = -acc;
        }
        std::mem::swap(&mut num, &mut den);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::primes_up_to;

    fn euler(a: i64, p: i64) -> i8 {
        let a = a.rem_euclid(p) as u128;
        if a == 0 {
            return 0;
        }
        let (mut base, mut e, mut acc) = (a, (p as u128 - 1) / 2, 1u128);
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base % p as u128;
            }
            base = base * base % p as u128;
            e >>= 1;
        }
        if acc == 1 {
            1
        } else {
            -1
        }
    }

    #[test]
    fn examples() {
        assert_eq!(kronecker_symbol(-7, 5).unwrap(), -1);
        assert_eq!(kronecker_symbol(-7, 11).unwrap(), 1);
        for n in (1..200).step_by(2) {
            assert_eq!(kronecker_symbol(1, n).unwrap(), 1);
        }
        assert_eq!(kronecker_symbol(-63, 5).unwrap(), -1);
        assert_eq!(kronecker_symbol(6, 9).unwrap(), 0);
        assert_eq!(kronecker_symbol(2, 1).unwrap(), 1);
    }

    #[test]
    fn rejects_even_or_nonpositive_modulus() {
        assert!(kronecker_symbol(3, 8).is_err());
        assert!(kronecker_symbol(3, 0).is_err());
        assert!(kronecker_symbol(3, -5).is_err());
    }

    #[test]
    fn matches_euler_criterion_for_small_primes() {
        for p in primes_up_to(1000).into_iter().skip(1) {
            let p = p as i64;
            for a in -999..1000 {
                assert_eq!(kronecker_symbol(a, p).unwrap(), euler(a, p), "({a}/{p})");
            }
        }
    }

    #[test]
    fn multiplicative_in_the_modulus() {
        for a in -50..50 {
            for m in (1..40).step_by(2) {
                for n in (1..40).step_by(2) {
                    let lhs = kronecker_symbol(a, m * n).unwrap();
                    let rhs = kronecker_symbol(a, m).unwrap() * kronecker_symbol(a, n).unwrap();
                    assert_eq!(lhs, rhs);
                }
            }
        }
    }
}
