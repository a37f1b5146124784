//! Seeded random inputs for the property suites.

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::arith::{Rational, SquareClass};
use crate::composition::AlgebraElement;
use crate::forms::QuadraticForm;

pub type SuiteRng = ChaCha8Rng;

pub fn nonzero_int(rng: &mut SuiteRng, bound: i64) -> i64 {
    loop {
        let a = rng.random_range(-bound..=bound);
        if a != 0 {
            return a;
        }
    }
}

/// A nonzero rational with numerator and denominator bounded by `bound`.
pub fn rational(rng: &mut SuiteRng, bound: i64) -> Rational {
    let n = nonzero_int(rng, bound);
    let d = rng.random_range(1..=bound);
    Rational::new(n.into(), d.into())
}

/// Any rational, zero included, with small height.
pub fn coordinate(rng: &mut SuiteRng, bound: i64, den: i64) -> Rational {
    let n = rng.random_range(-bound..=bound);
    let d = rng.random_range(1..=den);
    Rational::new(n.into(), d.into())
}

pub fn class(rng: &mut SuiteRng, bound: i64) -> SquareClass {
    SquareClass::from_int(nonzero_int(rng, bound)).expect("small integer factors")
}

pub fn classes(rng: &mut SuiteRng, count: usize, bound: i64) -> Vec<SquareClass> {
    (0..count).map(|_| class(rng, bound)).collect()
}

pub fn form(rng: &mut SuiteRng, dim: usize, bound: i64) -> QuadraticForm {
    QuadraticForm::new(classes(rng, dim, bound)).expect("dim ≥ 1")
}

/// An odd dimension in 3..=max.
pub fn odd_dim(rng: &mut SuiteRng, max: usize) -> usize {
    let choices: Vec<usize> = (3..=max).step_by(2).collect();
    choices[rng.random_range(0..choices.len())]
}

pub fn element(rng: &mut SuiteRng, dim: usize) -> AlgebraElement {
    AlgebraElement::new((0..dim).map(|_| coordinate(rng, 20, 5)).collect())
}

/// A random integer matrix of determinant ±1: a permutation times 2n
/// elementary shears and a sign flip.
pub fn unimodular(rng: &mut SuiteRng, n: usize) -> Vec<Vec<Rational>> {
    unimodular_with(rng, n, 2 * n, 3)
}

/// As [`unimodular`] with `shears` shears of coefficient at most `coeff`.
pub fn unimodular_with(
    rng: &mut SuiteRng,
    n: usize,
    shears: usize,
    coeff: i64,
) -> Vec<Vec<Rational>> {
    let mut perm: Vec<usize> = (0..n).collect();
    perm.shuffle(rng);
    let mut t: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if perm[i] == j {
                        Rational::one()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect();
    if n < 2 {
        return t;
    }
    for _ in 0..shears {
        let i = rng.random_range(0..n);
        let mut j = rng.random_range(0..n - 1);
        if j >= i {
            j += 1;
        }
        let c = Rational::from_integer(BigInt::from(nonzero_int(rng, coeff)));
        // column_j += c · column_i
        for row in t.iter_mut() {
            let add = &row[i] * &c;
            row[j] += add;
        }
    }
    if rng.random_bool(0.5) {
        let k = rng.random_range(0..n);
        for row in t.iter_mut() {
            row[k] = -row[k].clone();
        }
    }
    t
}

/// A value φ(x) for a random small integer vector x, when nonzero.
pub fn represented_value(rng: &mut SuiteRng, phi: &QuadraticForm) -> Option<SquareClass> {
    let mut total = Rational::zero();
    for a in phi.entries() {
        let x = rng.random_range(-3i64..=3);
        total += a.to_rational() * Rational::from_integer(BigInt::from(x * x));
    }
    if total.is_zero() {
        None
    } else {
        Some(SquareClass::from_rational(&total).expect("bounded height"))
    }
}
