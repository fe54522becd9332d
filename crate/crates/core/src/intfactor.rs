//! Integer factorization helpers for exact element-order computation:
//! deterministic Miller-Rabin and Brent's variant of Pollard rho on u128.

use num_bigint::BigUint;

fn mul_mod(a: u128, b: u128, m: u128) -> u128 {
    if m <= u64::MAX as u128 {
        a % m * (b % m) % m
    } else {
        let big = BigUint::from(a) * BigUint::from(b) % BigUint::from(m);
        let digits = big.to_u64_digits();
        digits
            .iter()
            .rev()
            .fold(0u128, |acc, &d| (acc << 64) | d as u128)
    }
}

fn pow_mod(mut base: u128, mut exp: u128, m: u128) -> u128 {
    let mut acc = 1u128 % m;
    base %= m;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul_mod(acc, base, m);
        }
        base = mul_mod(base, base, m);
        exp >>= 1;
    }
    acc
}

pub fn is_prime_u128(n: u128) -> bool {
    if n < 2 {
        return false;
    }
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37] {
        if n == p {
            return true;
        }
        if n % p == 0 {
            return false;
        }
    }
    let mut d = n - 1;
    let mut s = 0u32;
    while d & 1 == 0 {
        d >>= 1;
        s += 1;
    }
    // 13 bases; deterministic far beyond the u64 range we actually use,
    // and a strong probable-prime test above it
    'witness: for a in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41] {
        if a % n == 0 {
            continue;
        }
        let mut x = pow_mod(a, d, n);
        if x == 1 || x == n - 1 {
            continue;
        }
        for _ in 0..s - 1 {
            x = mul_mod(x, x, n);
            if x == n - 1 {
                continue 'witness;
            }
        }
        return false;
    }
    true
}

fn gcd_u128(mut a: u128, mut b: u128) -> u128 {
    while b != 0 {
        (a, b) = (b, a % b);
    }
    a
}

/// Brent's cycle-finding Pollard rho; n must be composite and odd.
fn pollard_rho(n: u128) -> u128 {
    for c in 1u128..64 {
        let f = |x: u128| (mul_mod(x, x, n) + c) % n;
        let mut x = 2u128;
        let mut y = 2u128;
        let mut d = 1u128;
        let mut count = 0u64;
        while d == 1 {
            x = f(x);
            y = f(f(y));
            d = gcd_u128(x.abs_diff(y), n);
            count += 1;
            if count > 1 << 24 {
                break;
            }
        }
        if d != n && d != 1 {
            return d;
        }
    }
    panic!("pollard rho failed on {n}");
}

/// Distinct prime factors of n, ascending.
pub fn prime_factors_u128(mut n: u128) -> Vec<u128> {
    let mut out = Vec::new();
    for p in [2u128, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41, 43, 47] {
        if n % p == 0 {
            out.push(p);
            while n % p == 0 {
                n /= p;
            }
        }
    }
    let mut stack = vec![n];
    while let Some(m) = stack.pop() {
        if m < 2 {
            continue;
        }
        if is_prime_u128(m) {
            if !out.contains(&m) {
                out.push(m);
            }
            continue;
        }
        let d = pollard_rho(m);
        stack.push(d);
        stack.push(m / d);
    }
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factors_known_values() {
        assert_eq!(prime_factors_u128(1), Vec::<u128>::new());
        assert_eq!(prime_factors_u128(2), vec![2]);
        assert_eq!(prime_factors_u128(360), vec![2, 3, 5]);
        // 3^4 - 1 = 80, 3^4 + 1 = 82 = 2 * 41
        assert_eq!(prime_factors_u128(82), vec![2, 41]);
        // a larger semiprime forces the rho path
        let p = 1_000_003u128;
        let q = 998_244_353u128;
        let mut want = vec![p, q];
        want.sort();
        assert_eq!(prime_factors_u128(p * q), want);
    }

    #[test]
    fn primality_known_values() {
        assert!(is_prime_u128(2));
        assert!(is_prime_u128(41));
        assert!(is_prime_u128(998_244_353));
        assert!(!is_prime_u128(561)); // Carmichael
        assert!(!is_prime_u128(1));
    }
}
