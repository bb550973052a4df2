//! Base-p digit combinatorics.

use crate::error::{Error, Result};
use crate::field::is_prime;

fn require_prime(p: u64) -> Result<()> {
    if is_prime(p) {
        Ok(())
    } else {
        Err(Error::NotPrime(p))
    }
}

/// `C(n, k) mod p` by Lucas' theorem: the product of digit-wise binomials.
pub fn lucas_binom_mod_p(mut n: u64, mut k: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    let mut acc = 1u64;
    while k > 0 {
        let (nd, kd) = (n % p, k % p);
        if kd > nd {
            return Ok(0);
        }
        acc = acc * small_binom_mod(nd, kd, p) % p;
        n /= p;
        k /= p;
    }
    Ok(acc % p)
}

/// `C(n, k) mod p` for `k <= n < p`, via a multiplicative formula and a
/// Fermat inverse.
fn small_binom_mod(n: u64, k: u64, p: u64) -> u64 {
    let k = k.min(n - k);
    let (mut num, mut den) = (1u128, 1u128);
    let p128 = p as u128;
    for i in 0..k {
        num = num * (n - i) as u128 % p128;
        den = den * (i + 1) as u128 % p128;
    }
    (num * pow_mod(den, p128 - 2, p128) % p128) as u64
}

fn pow_mod(mut b: u128, mut e: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Sum of the base-`p` digits of `k`. With `p = 2` this is the number of
/// ones in the binary expansion.
pub fn digit_sum_base_p(k: u64, p: u64) -> Result<u64> {
    require_prime(p)?;
    if k == 0 {
        return Err(Error::InvalidArgument("digit sum needs k >= 1".into()));
    }
    let (mut k, mut sum) = (k, 0);
    while k > 0 {
        sum += k % p;
        k /= p;
    }
    Ok(sum)
}

/// `[log2 m]` from the bit length; `m` must be positive.
pub fn floor_log2(m: u64) -> u32 {
    assert!(m > 0, "floor_log2 of zero");
    63 - m.leading_zeros()
}

pub fn is_power_of(m: u64, p: u64) -> bool {
    if m == 0 || p < 2 {
        return false;
    }
    let mut m = m;
    while m.is_multiple_of(p) {
        m /= p;
    }
    m == 1
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Independent oracle: Pascal's rule reduced mod p.
    fn pascal_table(rows: usize, p: u64) -> Vec<Vec<u64>> {
        let mut t = vec![vec![0u64; rows + 1]; rows + 1];
        for n in 0..=rows {
            t[n][0] = 1 % p;
            for k in 1..=n {
                t[n][k] = (t[n - 1][k - 1] + t[n - 1][k]) % p;
            }
        }
        t
    }

    #[test]
    fn pascal_examples() {
        assert_eq!(lucas_binom_mod_p(7, 3, 2).unwrap(), 1);
        assert_eq!(lucas_binom_mod_p(4, 2, 2).unwrap(), 0);
        for n in 0..50 {
            assert_eq!(lucas_binom_mod_p(n, 0, 3).unwrap(), 1);
        }
        assert_eq!(lucas_binom_mod_p(3, 5, 7).unwrap(), 0);
    }

    #[test]
    fn agrees_with_pascal_for_small_rows() {
        for p in [2u64, 3, 5, 7] {
            let t = pascal_table(128, p);
            for n in 0..=128u64 {
                for k in 0..=n {
                    assert_eq!(lucas_binom_mod_p(n, k, p).unwrap(), t[n as usize][k as usize]);
                }
            }
        }
    }

    #[test]
    fn binary_case_is_digit_dominance() {
        for n in 0..256u64 {
            for k in 0..=n {
                let dominated = k & !n == 0;
                assert_eq!(lucas_binom_mod_p(n, k, 2).unwrap() == 1, dominated);
            }
        }
    }

    #[test]
    fn rejects_composite_modulus() {
        assert_eq!(lucas_binom_mod_p(5, 2, 4), Err(Error::NotPrime(4)));
        assert_eq!(digit_sum_base_p(5, 1), Err(Error::NotPrime(1)));
    }

    #[test]
    fn digit_sums() {
        assert_eq!(digit_sum_base_p(5, 2).unwrap(), 2);
        assert_eq!(digit_sum_base_p(10, 3).unwrap(), 2);
        for t in 0..40 {
            assert_eq!(digit_sum_base_p(1 << t, 2).unwrap(), 1);
        }
        assert!(digit_sum_base_p(0, 2).is_err());
    }

    #[test]
    fn digit_sum_matches_repeated_division_oracle() {
        for p in [2u64, 3, 5] {
            for k in 1..2000u64 {
                let digits: Vec<u64> = std::iter::successors(Some(k), |&x| Some(x / p))
                    .take_while(|&x| x > 0)
                    .map(|x| x % p)
                    .collect();
                assert_eq!(digit_sum_base_p(k, p).unwrap(), digits.iter().sum::<u64>());
            }
        }
    }

    #[test]
    fn log2_is_exact_at_powers_of_two() {
        assert_eq!(floor_log2(1), 0);
        assert_eq!(floor_log2(7), 2);
        assert_eq!(floor_log2(8), 3);
        assert_eq!(floor_log2(9), 3);
        assert_eq!(floor_log2(u64::MAX), 63);
    }

    #[test]
    fn powers() {
        assert!(is_power_of(27, 3));
        assert!(is_power_of(1, 5));
        assert!(!is_power_of(12, 2));
        assert!(!is_power_of(0, 2));
    }
}
