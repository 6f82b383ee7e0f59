//! Small integer helpers and the exact number types used in reports.

use num_bigint::BigUint;
use num_rational::Ratio;
use num_traits::{One, Zero};

/// Exact unbounded non-negative integer.
pub type Natural = BigUint;

/// Exact rational with unbounded numerator and denominator.
pub type Rational = Ratio<BigUint>;

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// True iff `n = p^e` for some `e >= 0` (so `1` always qualifies).
pub fn is_prime_power_of(mut n: u64, p: u64) -> bool {
    if n == 0 {
        return false;
    }
    while n % p == 0 {
        n /= p;
    }
    n == 1
}

/// Splits `q = r^k` with `r` prime, or `None`.
pub fn prime_power(q: u64) -> Option<(u64, u32)> {
    if q < 2 {
        return None;
    }
    let r = (2..=q).find(|d| q % d == 0)?;
    let mut k = 0;
    let mut m = q;
    while m % r == 0 {
        m /= r;
        k += 1;
    }
    (m == 1).then_some((r, k))
}

pub fn big_is_prime_power_of(n: &BigUint, p: u64) -> bool {
    if n.is_zero() {
        return false;
    }
    let p = BigUint::from(p);
    let mut n = n.clone();
    while (&n % &p).is_zero() {
        n /= &p;
    }
    n.is_one()
}

/// Largest power of `p` dividing `n`.
pub fn p_part(n: &BigUint, p: u64) -> BigUint {
    let p = BigUint::from(p);
    let mut out = BigUint::one();
    let mut n = n.clone();
    while !n.is_zero() && (&n % &p).is_zero() {
        n /= &p;
        out *= &p;
    }
    out
}

/// Distinct prime divisors, ascending.
pub fn prime_divisors(n: &BigUint) -> alloc::vec::Vec<u64> {
    let mut out = alloc::vec::Vec::new();
    let mut n = n.clone();
    let mut d = 2u64;
    while BigUint::from(d) * BigUint::from(d) <= n {
        let bd = BigUint::from(d);
        if (&n % &bd).is_zero() {
            out.push(d);
            while (&n % &bd).is_zero() {
                n /= &bd;
            }
        }
        d += 1;
    }
    if n > BigUint::one() {
        out.push(u64::try_from(&n).expect("prime divisor exceeds u64"));
    }
    out
}

pub fn ratio(num: impl Into<BigUint>, den: impl Into<BigUint>) -> Rational {
    Rational::new(num.into(), den.into())
}

pub fn pow_u(base: u64, e: u32) -> BigUint {
    num_traits::pow(BigUint::from(base), e as usize)
}
