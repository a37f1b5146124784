use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use super::factor::{factor_bound, factorize};
use super::rational::Rational;
use crate::error::{Error, Result};

/// An element of ℚ*/(ℚ*)², held as a sign and the set of primes of its
/// square-free representative.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SquareClass {
    negative: bool,
    primes: Vec<u64>,
}

/// The square class of a nonzero rational.
pub fn square_class(a: &Rational) -> Result<SquareClass> {
    SquareClass::from_rational(a)
}

impl SquareClass {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn minus_one() -> Self {
        SquareClass {
            negative: true,
            primes: Vec::new(),
        }
    }

    /// Builds a class from a sign and a list of primes; each prime must be
    /// prime and the list free of repeats (order is irrelevant).
    pub fn from_parts(negative: bool, primes: impl IntoIterator<Item = u64>) -> Result<Self> {
        let mut primes: Vec<u64> = primes.into_iter().collect();
        primes.sort_unstable();
        for w in primes.windows(2) {
            if w[0] == w[1] {
                return Err(Error::InvalidParameter(format!("repeated prime {}", w[0])));
            }
        }
        if let Some(&p) = primes.iter().find(|&&p| !is_prime(p)) {
            return Err(Error::InvalidParameter(format!("{p} is not prime")));
        }
        Ok(SquareClass { negative, primes })
    }

    pub fn from_int(n: i64) -> Result<Self> {
        Self::from_bigint(&BigInt::from(n))
    }

    pub fn from_bigint(n: &BigInt) -> Result<Self> {
        Self::from_bigint_with_bound(n, factor_bound())
    }

    pub fn from_bigint_with_bound(n: &BigInt, bound: u64) -> Result<Self> {
        if n.is_zero() {
            return Err(Error::ZeroInput);
        }
        Ok(SquareClass {
            negative: n.is_negative(),
            primes: factorize(n, bound)?,
        })
    }

    pub fn from_rational(a: &Rational) -> Result<Self> {
        Self::from_rational_with_bound(a, factor_bound())
    }

    /// `a = n/d` has the class of `n·d`; numerator and denominator are
    /// factored separately.
    pub fn from_rational_with_bound(a: &Rational, bound: u64) -> Result<Self> {
        if a.is_zero() {
            return Err(Error::ZeroInput);
        }
        let n = Self::from_bigint_with_bound(a.numer(), bound)?;
        let d = Self::from_bigint_with_bound(a.denom(), bound)?;
        Ok(&n * &d)
    }

    pub fn is_one(&self) -> bool {
        !self.negative && self.primes.is_empty()
    }

    pub fn is_negative(&self) -> bool {
        self.negative
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn contains_prime(&self, p: u64) -> bool {
        self.primes.binary_search(&p).is_ok()
    }

    /// The signed square-free integer representing this class.
    pub fn representative(&self) -> BigInt {
        let mut v: BigInt = self.primes.iter().map(|&p| BigInt::from(p)).product();
        if self.negative {
            v = -v;
        }
        v
    }

    pub fn to_rational(&self) -> Rational {
        Rational::from_integer(self.representative())
    }

    /// The representative as an `i64`, when it fits.
    pub fn to_i64(&self) -> Option<i64> {
        i64::try_from(self.representative()).ok()
    }

    /// The representative with the prime `p` removed, reduced mod `p`
    /// (returned in `0..p`), together with whether `p` was present.
    pub(crate) fn split_at_prime(&self, p: u64) -> (bool, u64) {
        self.split_at_prime_mod(p, p)
    }
}

impl Mul for &SquareClass {
    type Output = SquareClass;

    fn mul(self, rhs: &SquareClass) -> SquareClass {
        let mut primes = Vec::with_capacity(self.primes.len() + rhs.primes.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.primes, &rhs.primes);
        while i < a.len() && j < b.len() {
            match a[i].cmp(&b[j]) {
                std::cmp::Ordering::Less => {
                    primes.push(a[i]);
                    i += 1;
                }
                std::cmp::Ordering::Greater => {
                    primes.push(b[j]);
                    j += 1;
                }
                std::cmp::Ordering::Equal => {
                    i += 1;
                    j += 1;
                }
            }
        }
        primes.extend_from_slice(&a[i..]);
        primes.extend_from_slice(&b[j..]);
        SquareClass {
            negative: self.negative != rhs.negative,
            primes,
        }
    }
}

impl Mul for SquareClass {
    type Output = SquareClass;

    fn mul(self, rhs: SquareClass) -> SquareClass {
        &self * &rhs
    }
}

impl fmt::Display for SquareClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.representative())
    }
}

fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p.is_multiple_of(2) {
        return p == 2;
    }
    let mut d = 3u64;
    while d.saturating_mul(d) <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}
