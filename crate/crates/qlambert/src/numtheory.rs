//! Divisor-function utilities backing coefficient predicates and the
//! divisor-sum generating functions. Trial division only; every input at
//! desk scale is tiny.

use num_bigint::BigInt;

use crate::scalar::{Rational, Scalar};

/// All positive divisors of `n`, ascending.
///
/// Panics when `n == 0`.
pub fn divisors(n: u64) -> Vec<u64> {
    assert!(n >= 1, "divisors(0) is undefined");
    let mut small = Vec::new();
    let mut large = Vec::new();
    let mut d = 1;
    while d * d <= n {
        if n.is_multiple_of(d) {
            small.push(d);
            if d != n / d {
                large.push(n / d);
            }
        }
        d += 1;
    }
    large.reverse();
    small.extend(large);
    small
}

/// σ_k(n) = ∑_{d|n} d^k; σ_0 is the divisor count d(n).
///
/// Panics when `n == 0`.
pub fn sigma(k: u32, n: u64) -> BigInt {
    divisors(n)
        .into_iter()
        .map(|d| BigInt::from(d).pow(k))
        .sum()
}

/// ∑_{d|n} d·z^d, exactly.
///
/// Panics when `n == 0`.
pub fn weighted_divisor_sum(n: u64, z: &Rational) -> Rational {
    let mut acc = Rational::zero();
    for d in divisors(n) {
        acc = acc + Rational::from_bigint(d.into()) * z.pow_u(d);
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divisor_lists() {
        assert_eq!(divisors(1), vec![1]);
        assert_eq!(divisors(4), vec![1, 2, 4]);
        assert_eq!(divisors(6), vec![1, 2, 3, 6]);
        assert_eq!(divisors(36), vec![1, 2, 3, 4, 6, 9, 12, 18, 36]);
    }

    #[test]
    #[should_panic]
    fn zero_is_rejected() {
        divisors(0);
    }

    #[test]
    fn sigma_values() {
        assert_eq!(sigma(1, 1), BigInt::from(1));
        assert_eq!(sigma(1, 6), BigInt::from(12));
        assert_eq!(sigma(0, 4), BigInt::from(3));
        assert_eq!(sigma(2, 4), BigInt::from(21));
    }

    #[test]
    fn weighted_sum_examples() {
        let half = Rational::ratio(1, 2);
        assert_eq!(weighted_divisor_sum(1, &half), half.clone());
        assert_eq!(
            weighted_divisor_sum(4, &Rational::one()),
            Rational::from_int(7)
        );
        assert_eq!(weighted_divisor_sum(2, &half), Rational::one());
    }

    #[test]
    fn weighted_sum_at_one_is_sigma_one() {
        for n in 1..=200u64 {
            assert_eq!(
                weighted_divisor_sum(n, &Rational::one()),
                Rational::from_bigint(sigma(1, n))
            );
        }
    }
}
