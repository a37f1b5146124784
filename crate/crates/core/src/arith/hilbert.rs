use std::collections::BTreeSet;
use std::fmt;

use super::square_class::SquareClass;

/// A place of ℚ. The derived order puts the real place first, then the
/// primes ascending.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Place {
    Real,
    Prime(u64),
}

impl fmt::Display for Place {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Place::Real => f.write_str("inf"),
            Place::Prime(p) => write!(f, "{p}"),
        }
    }
}

/// The real place, 2, and every odd prime dividing one of `classes`.
/// Outside this set every Hilbert symbol of the inputs is +1.
pub fn relevant_places<'a>(classes: impl IntoIterator<Item = &'a SquareClass>) -> Vec<Place> {
    let mut primes: BTreeSet<u64> = BTreeSet::from([2]);
    for c in classes {
        primes.extend(c.primes().iter().copied());
    }
    std::iter::once(Place::Real)
        .chain(primes.into_iter().map(Place::Prime))
        .collect()
}

/// The Hilbert symbol `(a, b)_v`, as `1` or `-1`.
pub fn hilbert_symbol(a: &SquareClass, b: &SquareClass, v: Place) -> i8 {
    match v {
        Place::Real => {
            if a.is_negative() && b.is_negative() {
                -1
            } else {
                1
            }
        }
        Place::Prime(2) => hilbert_at_two(a, b),
        Place::Prime(p) => hilbert_at_odd(a, b, p),
    }
}

fn hilbert_at_odd(a: &SquareClass, b: &SquareClass, p: u64) -> i8 {
    let (alpha, u) = a.split_at_prime(p);
    let (beta, v) = b.split_at_prime(p);
    let mut sign = 1i8;
    if alpha && beta && p % 4 == 3 {
        sign = -sign;
    }
    if beta {
        sign *= legendre(u, p);
    }
    if alpha {
        sign *= legendre(v, p);
    }
    sign
}

fn hilbert_at_two(a: &SquareClass, b: &SquareClass) -> i8 {
    let (alpha, u) = a.split_at_prime_mod(2, 8);
    let (beta, v) = b.split_at_prime_mod(2, 8);
    let eps = |x: u64| u8::from(x % 4 == 3);
    let omega = |x: u64| u8::from(x % 8 == 3 || x % 8 == 5);
    let mut e = eps(u) * eps(v);
    if alpha {
        e += omega(v);
    }
    if beta {
        e += omega(u);
    }
    if e % 2 == 0 {
        1
    } else {
        -1
    }
}

/// Whether `a` is a square in the completion at `v`.
pub fn is_local_square(a: &SquareClass, v: Place) -> bool {
    match v {
        Place::Real => !a.is_negative(),
        Place::Prime(2) => {
            let (two, u) = a.split_at_prime_mod(2, 8);
            !two && u == 1
        }
        Place::Prime(p) => {
            let (present, u) = a.split_at_prime(p);
            !present && legendre(u, p) == 1
        }
    }
}

/// Legendre symbol `(u / p)` for an odd prime `p` and `u` coprime to `p`.
fn legendre(u: u64, p: u64) -> i8 {
    let mut a = u % p;
    let mut n = p;
    let mut t = 1i8;
    debug_assert!(a != 0);
    while a != 0 {
        while a.is_multiple_of(2) {
            a /= 2;
            if n % 8 == 3 || n % 8 == 5 {
                t = -t;
            }
        }
        std::mem::swap(&mut a, &mut n);
        if a % 4 == 3 && n % 4 == 3 {
            t = -t;
        }
        a %= n;
    }
    if n == 1 {
        t
    } else {
        0
    }
}

impl SquareClass {
    /// Like `split_at_prime` but reduces the unit part modulo `m`.
    pub(crate) fn split_at_prime_mod(&self, p: u64, m: u64) -> (bool, u64) {
        let modulus = m as u128;
        let mut present = false;
        let mut r: u128 = 1;
        for &q in self.primes() {
            if q == p {
                present = true;
            } else {
                r = r * (q as u128 % modulus) % modulus;
            }
        }
        if self.is_negative() {
            r = (modulus - r) % modulus;
        }
        (present, r as u64)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    #[test]
    fn spec_examples() {
        assert_eq!(hilbert_symbol(&sc(-1), &sc(-1), Place::Real), -1);
        assert_eq!(hilbert_symbol(&sc(-1), &sc(-1), Place::Prime(2)), -1);
        assert_eq!(hilbert_symbol(&sc(2), &sc(3), Place::Prime(3)), -1);
        assert_eq!(hilbert_symbol(&sc(5), &sc(7), Place::Prime(11)), 1);
    }

    #[test]
    fn known_values_at_two() {
        assert_eq!(hilbert_symbol(&sc(2), &sc(-1), Place::Prime(2)), 1);
        assert_eq!(hilbert_symbol(&sc(2), &sc(3), Place::Prime(2)), -1);
        assert_eq!(hilbert_symbol(&sc(2), &sc(5), Place::Prime(2)), -1);
        assert_eq!(hilbert_symbol(&sc(3), &sc(3), Place::Prime(2)), -1);
        assert_eq!(hilbert_symbol(&sc(5), &sc(5), Place::Prime(2)), 1);
    }

    #[test]
    fn legendre_table() {
        let qr7: Vec<i8> = (1..7).map(|u| legendre(u, 7)).collect();
        assert_eq!(qr7, vec![1, 1, -1, 1, -1, -1]);
        assert_eq!(legendre(2, 3), -1);
        assert_eq!(legendre(4, 999_983), 1);
    }

    #[test]
    fn relevant_place_sets() {
        assert_eq!(
            relevant_places([&sc(1)]),
            vec![Place::Real, Place::Prime(2)]
        );
        assert_eq!(
            relevant_places([&sc(-3), &sc(10)]),
            vec![
                Place::Real,
                Place::Prime(2),
                Place::Prime(3),
                Place::Prime(5)
            ]
        );
        assert_eq!(relevant_places([]), vec![Place::Real, Place::Prime(2)]);
    }

    #[test]
    fn local_squares() {
        assert!(is_local_square(&sc(17), Place::Prime(2)));
        assert!(!is_local_square(&sc(-7), Place::Real));
        assert!(is_local_square(&sc(-7), Place::Prime(2)));
        assert!(is_local_square(&sc(2), Place::Prime(7)));
        assert!(!is_local_square(&sc(3), Place::Prime(7)));
        assert!(!is_local_square(&sc(7), Place::Prime(7)));
    }

    #[test]
    fn place_order() {
        let mut v = vec![Place::Prime(3), Place::Real, Place::Prime(2)];
        v.sort();
        assert_eq!(v, vec![Place::Real, Place::Prime(2), Place::Prime(3)]);
    }
}
