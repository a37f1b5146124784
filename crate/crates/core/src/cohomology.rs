//! The graded ring H*(ℚ, ℤ/2) in canonical form.
//!
//! Degree 0 is a bit, degree 1 is ℚ*/(ℚ*)², degree 2 is the 2-torsion of
//! the Brauer group recorded by the (even) set of places where the local
//! invariant is nontrivial, and every degree n ≥ 3 is ℤ/2 detected at the
//! real place. Each representation is canonical, so derived equality is
//! ring equality.

use std::collections::BTreeSet;
use std::ops::{Add, Mul};

use crate::arith::{hilbert_symbol, relevant_places, Place, SquareClass};
use crate::error::{Error, Result};

/// One homogeneous component of a [`CohomClass`].
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CohomComponent {
    /// Degree 0 or degree ≥ 3.
    Bit(bool),
    Degree1(SquareClass),
    Degree2(BTreeSet<Place>),
}

impl CohomComponent {
    pub fn is_zero(&self) -> bool {
        match self {
            CohomComponent::Bit(b) => !b,
            CohomComponent::Degree1(c) => c.is_one(),
            CohomComponent::Degree2(s) => s.is_empty(),
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct CohomClass {
    unit: bool,
    first: SquareClass,
    second: BTreeSet<Place>,
    /// Degrees ≥ 3 whose bit is set.
    higher: BTreeSet<usize>,
}

impl CohomClass {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        CohomClass {
            unit: true,
            ..Self::default()
        }
    }

    /// The degree-1 class `(a)`.
    pub fn degree1(a: SquareClass) -> Self {
        CohomClass {
            first: a,
            ..Self::default()
        }
    }

    /// A degree-2 class from its ramification set. The set must have even
    /// cardinality.
    pub fn degree2(places: BTreeSet<Place>) -> Result<Self> {
        if places.len() % 2 == 1 {
            return Err(Error::InvalidParameter(format!(
                "degree-2 place set must have even size, got {}",
                places.len()
            )));
        }
        Ok(CohomClass {
            second: places,
            ..Self::default()
        })
    }

    /// The generator of H^n for n ≥ 3 (or the unit for n = 0).
    pub fn top_bit(degree: usize) -> Self {
        match degree {
            0 => Self::one(),
            1 => Self::degree1(SquareClass::minus_one()),
            2 => Self::degree2(BTreeSet::from([Place::Real, Place::Prime(2)])).unwrap(),
            n => CohomClass {
                higher: BTreeSet::from([n]),
                ..Self::default()
            },
        }
    }

    pub fn is_zero(&self) -> bool {
        !self.unit && self.first.is_one() && self.second.is_empty() && self.higher.is_empty()
    }

    /// Degrees with a nonzero component, ascending.
    pub fn degrees(&self) -> Vec<usize> {
        let mut d = Vec::new();
        if self.unit {
            d.push(0);
        }
        if !self.first.is_one() {
            d.push(1);
        }
        if !self.second.is_empty() {
            d.push(2);
        }
        d.extend(self.higher.iter().copied());
        d
    }

    pub fn is_homogeneous_of_degree(&self, degree: usize) -> bool {
        self.degrees().iter().all(|&d| d == degree)
    }

    pub fn component(&self, degree: usize) -> CohomComponent {
        match degree {
            0 => CohomComponent::Bit(self.unit),
            1 => CohomComponent::Degree1(self.first.clone()),
            2 => CohomComponent::Degree2(self.second.clone()),
            n => CohomComponent::Bit(self.higher.contains(&n)),
        }
    }

    pub fn from_component(degree: usize, c: CohomComponent) -> Result<Self> {
        match (degree, c) {
            (0, CohomComponent::Bit(b)) => Ok(if b { Self::one() } else { Self::zero() }),
            (1, CohomComponent::Degree1(s)) => Ok(Self::degree1(s)),
            (2, CohomComponent::Degree2(p)) => Self::degree2(p),
            (n, CohomComponent::Bit(b)) if n >= 3 => {
                Ok(if b { Self::top_bit(n) } else { Self::zero() })
            }
            (n, _) => Err(Error::InvalidParameter(format!(
                "component kind does not match degree {n}"
            ))),
        }
    }

    /// The homogeneous part of the given degree.
    pub fn part(&self, degree: usize) -> Self {
        Self::from_component(degree, self.component(degree)).expect("component matches degree")
    }

    /// Image in H^degree(ℝ) = ℤ/2 for degree ≥ 1.
    fn real_component(&self, degree: usize) -> bool {
        match degree {
            0 => self.unit,
            1 => self.first.is_negative(),
            2 => self.second.contains(&Place::Real),
            n => self.higher.contains(&n),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        CohomClass {
            unit: self.unit != other.unit,
            first: &self.first * &other.first,
            second: self
                .second
                .symmetric_difference(&other.second)
                .copied()
                .collect(),
            higher: self
                .higher
                .symmetric_difference(&other.higher)
                .copied()
                .collect(),
        }
    }

    pub fn cup(&self, other: &Self) -> Self {
        let mut acc = Self::zero();
        for i in self.degrees() {
            for j in other.degrees() {
                let term = match (i, j) {
                    (0, _) => other.part(j),
                    (_, 0) => self.part(i),
                    (1, 1) => symbol2(&self.first, &other.first),
                    _ => {
                        if self.real_component(i) && other.real_component(j) {
                            Self::top_bit(i + j)
                        } else {
                            Self::zero()
                        }
                    }
                };
                acc = acc.add(&term);
            }
        }
        acc
    }
}

/// `(a) ∪ (b)`: the places where the Hilbert symbol is -1.
fn symbol2(a: &SquareClass, b: &SquareClass) -> CohomClass {
    let places = relevant_places([a, b])
        .into_iter()
        .filter(|&v| hilbert_symbol(a, b, v) == -1)
        .collect();
    CohomClass {
        second: places,
        ..CohomClass::default()
    }
}

/// The cup product `(a₁) ∪ ⋯ ∪ (aₙ)`; the empty product is the unit.
pub fn symbol(classes: &[SquareClass]) -> CohomClass {
    match classes {
        [] => CohomClass::one(),
        [a] => CohomClass::degree1(a.clone()),
        [a, b] => symbol2(a, b),
        _ => {
            if classes.iter().all(SquareClass::is_negative) {
                CohomClass::top_bit(classes.len())
            } else {
                CohomClass::zero()
            }
        }
    }
}

impl Add for &CohomClass {
    type Output = CohomClass;
    fn add(self, rhs: &CohomClass) -> CohomClass {
        CohomClass::add(self, rhs)
    }
}

impl Mul for &CohomClass {
    type Output = CohomClass;
    fn mul(self, rhs: &CohomClass) -> CohomClass {
        self.cup(rhs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    fn places(ps: &[Option<u64>]) -> BTreeSet<Place> {
        ps.iter()
            .map(|p| p.map_or(Place::Real, Place::Prime))
            .collect()
    }

    fn deg2(ps: &[Option<u64>]) -> CohomClass {
        CohomClass::degree2(places(ps)).unwrap()
    }

    #[test]
    fn symbol_examples() {
        assert_eq!(symbol(&[sc(-1), sc(-1)]), deg2(&[Some(2), None]));
        assert!(symbol(&[sc(2), sc(2)]).is_zero());
        assert_eq!(symbol(&[sc(-1), sc(-1), sc(-1)]), CohomClass::top_bit(3));
        assert!(symbol(&[sc(1)]).is_zero());
        assert_eq!(symbol(&[]), CohomClass::one());
    }

    #[test]
    fn add_examples() {
        let x = CohomClass::degree1(sc(2)).add(&CohomClass::degree1(sc(3)));
        assert_eq!(x, CohomClass::degree1(sc(6)));
        let b = deg2(&[Some(2), None]);
        assert!(b.add(&b).is_zero());
        assert_eq!(b.add(&deg2(&[Some(2), Some(3)])), deg2(&[Some(3), None]));
    }

    #[test]
    fn cup_examples() {
        let b = deg2(&[Some(2), None]);
        assert_eq!(CohomClass::degree1(sc(-1)).cup(&b), CohomClass::top_bit(3));
        assert!(CohomClass::degree1(sc(2)).cup(&b).is_zero());
        let mixed = CohomClass::one().add(&CohomClass::degree1(sc(-5))).add(&b);
        assert_eq!(CohomClass::one().cup(&mixed), mixed);
        assert_eq!(mixed.cup(&CohomClass::one()), mixed);
    }

    #[test]
    fn odd_place_sets_rejected() {
        assert!(CohomClass::degree2(places(&[None])).is_err());
    }

    #[test]
    fn steinberg_instances() {
        for a in [-1i64, 2, 5] {
            assert!(symbol(&[sc(a), sc(1 - a)]).is_zero(), "a = {a}");
        }
        assert!(!symbol(&[sc(-1), sc(-1)]).is_zero());
    }

    #[test]
    fn cup_matches_symbol_for_long_products() {
        let a = [sc(-3), sc(-7), sc(-2), sc(-5)];
        let iterated = a.iter().fold(CohomClass::one(), |acc, x| {
            acc.cup(&CohomClass::degree1(x.clone()))
        });
        assert_eq!(iterated, symbol(&a));
        assert_eq!(iterated, CohomClass::top_bit(4));
    }

    #[test]
    fn degrees_listing() {
        let x = CohomClass::one()
            .add(&deg2(&[Some(2), None]))
            .add(&CohomClass::top_bit(4));
        assert_eq!(x.degrees(), vec![0, 2, 4]);
        assert!(x.part(4).is_homogeneous_of_degree(4));
    }
}
