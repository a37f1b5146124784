use std::sync::OnceLock;

use num_bigint::BigInt;
use num_integer::Roots;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::{Error, Result};

pub const DEFAULT_FACTOR_BOUND: u64 = 1_000_000;

/// Environment variable overriding [`DEFAULT_FACTOR_BOUND`].
pub const FACTOR_BOUND_ENV: &str = "COHINV_FACTOR_BOUND";

/// The trial-division bound in effect for this process.
pub fn factor_bound() -> u64 {
    static BOUND: OnceLock<u64> = OnceLock::new();
    *BOUND.get_or_init(|| {
        std::env::var(FACTOR_BOUND_ENV)
            .ok()
            .and_then(|v| v.trim().parse::<u64>().ok())
            .filter(|&b| b >= 2)
            .unwrap_or(DEFAULT_FACTOR_BOUND)
    })
}

/// Primes occurring to an odd power in `|n|`, ascending.
///
/// Trial division runs up to `bound`. A cofactor left over without a
/// divisor below the bound is accepted when it is provably prime (smaller
/// than the square of the last trial divisor) or a perfect square;
/// anything else is an error.
pub fn factorize(n: &BigInt, bound: u64) -> Result<Vec<u64>> {
    if n.is_zero() {
        return Err(Error::ZeroInput);
    }
    let abs = n.abs();
    match abs.to_u128() {
        Some(small) => factor_u128(small, bound).ok_or_else(|| exceeded(n, bound)),
        None => factor_big(abs, bound).ok_or_else(|| exceeded(n, bound)),
    }
}

fn exceeded(n: &BigInt, bound: u64) -> Error {
    Error::FactorBoundExceeded {
        value: n.to_string(),
        bound,
    }
}

fn factor_u128(mut n: u128, bound: u64) -> Option<Vec<u64>> {
    let mut odd = Vec::new();
    let mut strip = |n: &mut u128, d: u128| {
        let mut e = 0u32;
        while (*n).is_multiple_of(d) {
            *n /= d;
            e += 1;
        }
        if e % 2 == 1 {
            odd.push(d as u64);
        }
    };
    strip(&mut n, 2);
    let mut d: u128 = 3;
    while d <= bound as u128 && d * d <= n {
        strip(&mut n, d);
        d += 2;
    }
    if n > 1 {
        if d * d > n {
            odd.push(u64::try_from(n).ok()?);
        } else if n.sqrt() * n.sqrt() != n {
            return None;
        }
    }
    Some(odd)
}

fn factor_big(mut n: BigInt, bound: u64) -> Option<Vec<u64>> {
    let mut odd = Vec::new();
    let mut d: u64 = 2;
    while d <= bound {
        let dd = BigInt::from(d);
        if &dd * &dd > n {
            break;
        }
        let mut e = 0u32;
        while (&n % &dd).is_zero() {
            n /= &dd;
            e += 1;
        }
        if e % 2 == 1 {
            odd.push(d);
        }
        if let Some(small) = n.to_u128() {
            let rest = factor_u128(small, bound)?;
            odd.extend(rest);
            return Some(odd);
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n.is_one() {
        return Some(odd);
    }
    let dd = BigInt::from(d);
    if &dd * &dd > n {
        odd.push(n.to_u64()?);
        return Some(odd);
    }
    let root = n.sqrt();
    if &root * &root == n {
        Some(odd)
    } else {
        None
    }
}
