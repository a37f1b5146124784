//! Pfister forms, their degree-r invariant, and Cayley–Dickson composition
//! algebras.
//!
//! Slots (μ₁,…,μᵣ) name both the Pfister form ⟨⟨μ₁,…,μᵣ⟩⟩ =
//! ⟨1,−μ₁⟩⊗⋯⊗⟨1,−μᵣ⟩ and the algebra obtained by doubling r times, where
//! the k-th doubling uses μₖ with
//!
//! ```text
//! (a, b)(c, d) = (ac + μ·d̄b, da + bc̄),   N(a, b) = N(a) − μ·N(b).
//! ```
//!
//! With this convention the norm form of the algebra is the Pfister form,
//! entry for entry, in the basis order used here.

use num_traits::{One, Zero};

use crate::arith::{Rational, SquareClass};
use crate::cohomology::{symbol, CohomClass};
use crate::error::{Error, Result};
use crate::forms::QuadraticForm;

pub const MAX_RANK: usize = 3;

fn check_rank(r: usize) -> Result<()> {
    if r > MAX_RANK {
        Err(Error::RankTooLarge(r))
    } else {
        Ok(())
    }
}

/// An r-fold Pfister form given by its slots.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Pfister {
    slots: Vec<SquareClass>,
}

impl Pfister {
    pub fn new(slots: Vec<SquareClass>) -> Result<Self> {
        check_rank(slots.len())?;
        Ok(Pfister { slots })
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn slots(&self) -> &[SquareClass] {
        &self.slots
    }

    pub fn form(&self) -> QuadraticForm {
        let mut entries = vec![SquareClass::one()];
        for mu in &self.slots {
            let minus_mu = mu * &SquareClass::minus_one();
            let doubled: Vec<_> = entries.iter().map(|a| a * &minus_mu).collect();
            entries.extend(doubled);
        }
        QuadraticForm::new(entries).expect("nonempty")
    }

    pub fn e_invariant(&self) -> CohomClass {
        symbol(&self.slots)
    }

    /// Isometric to the hyperbolic form of the same dimension.
    pub fn is_hyperbolic(&self) -> bool {
        if self.slots.is_empty() {
            return false;
        }
        let half = 1usize << (self.rank() - 1);
        let mut hyp = Vec::with_capacity(2 * half);
        for _ in 0..half {
            hyp.push(SquareClass::one());
            hyp.push(SquareClass::minus_one());
        }
        self.form()
            .isometric(&QuadraticForm::new(hyp).expect("nonempty"))
    }
}

/// The 2^r-dimensional expansion ⟨⟨μ₁,…,μᵣ⟩⟩; r = 0 gives ⟨1⟩.
pub fn pfister_form(slots: &[SquareClass]) -> Result<QuadraticForm> {
    Ok(Pfister::new(slots.to_vec())?.form())
}

/// e_r = (μ₁)∪⋯∪(μᵣ) ∈ H^r.
pub fn e_invariant(slots: &[SquareClass]) -> Result<CohomClass> {
    Ok(Pfister::new(slots.to_vec())?.e_invariant())
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct AlgebraElement {
    pub coords: Vec<Rational>,
}

impl AlgebraElement {
    pub fn new(coords: Vec<Rational>) -> Self {
        AlgebraElement { coords }
    }

    pub fn zero(dim: usize) -> Self {
        AlgebraElement {
            coords: vec![Rational::zero(); dim],
        }
    }

    pub fn basis(dim: usize, k: usize) -> Self {
        let mut e = Self::zero(dim);
        e.coords[k] = Rational::one();
        e
    }

    pub fn scalar(dim: usize, s: Rational) -> Self {
        let mut e = Self::zero(dim);
        e.coords[0] = s;
        e
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(Zero::is_zero)
    }

    /// Coefficient of the identity.
    pub fn real_part(&self) -> &Rational {
        &self.coords[0]
    }

    pub fn add(&self, other: &Self) -> Self {
        AlgebraElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a + b)
                .collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        AlgebraElement {
            coords: self
                .coords
                .iter()
                .zip(&other.coords)
                .map(|(a, b)| a - b)
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        AlgebraElement {
            coords: self.coords.iter().map(|a| a * s).collect(),
        }
    }

    pub fn neg(&self) -> Self {
        AlgebraElement {
            coords: self.coords.iter().map(|a| -a).collect(),
        }
    }
}

/// e_i·e_j = coeff·e_index.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BasisProduct {
    pub coeff: Rational,
    pub index: usize,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CompositionAlgebra {
    slots: Vec<SquareClass>,
    norm_coeffs: Vec<Rational>,
    table: Vec<Vec<BasisProduct>>,
}

/// Builds C(μ₁,…,μᵣ) by iterated doubling.
pub fn cayley_dickson(slots: &[SquareClass]) -> Result<CompositionAlgebra> {
    CompositionAlgebra::new(slots.to_vec())
}

impl CompositionAlgebra {
    pub fn new(slots: Vec<SquareClass>) -> Result<Self> {
        check_rank(slots.len())?;
        let mus: Vec<Rational> = slots.iter().map(SquareClass::to_rational).collect();
        let dim = 1usize << slots.len();
        let mut table = Vec::with_capacity(dim);
        for i in 0..dim {
            let ei = AlgebraElement::basis(dim, i);
            let mut row = Vec::with_capacity(dim);
            for j in 0..dim {
                let ej = AlgebraElement::basis(dim, j);
                let p = doubling_product(&mus, &ei.coords, &ej.coords);
                let mut nz = p.iter().enumerate().filter(|(_, c)| !c.is_zero());
                let (index, coeff) = nz.next().expect("basis products are nonzero");
                debug_assert!(nz.next().is_none());
                row.push(BasisProduct {
                    coeff: coeff.clone(),
                    index,
                });
            }
            table.push(row);
        }
        // exact products; the Pfister entries are only defined up to squares
        let mut norm_coeffs = vec![Rational::one()];
        for mu in &mus {
            let doubled: Vec<Rational> = norm_coeffs.iter().map(|c| -(c * mu)).collect();
            norm_coeffs.extend(doubled);
        }
        Ok(CompositionAlgebra {
            slots,
            norm_coeffs,
            table,
        })
    }

    pub fn slots(&self) -> &[SquareClass] {
        &self.slots
    }

    pub fn rank(&self) -> usize {
        self.slots.len()
    }

    pub fn dim(&self) -> usize {
        self.table.len()
    }

    pub fn table(&self) -> &[Vec<BasisProduct>] {
        &self.table
    }

    /// The table entry e_i·e_j as a coordinate vector.
    pub fn table_vector(&self, i: usize, j: usize) -> Vec<Rational> {
        let mut v = vec![Rational::zero(); self.dim()];
        let p = &self.table[i][j];
        v[p.index] = p.coeff.clone();
        v
    }

    pub fn norm_form(&self) -> QuadraticForm {
        pfister_form(&self.slots).expect("rank checked at construction")
    }

    pub fn identity(&self) -> AlgebraElement {
        AlgebraElement::basis(self.dim(), 0)
    }

    fn check(&self, x: &AlgebraElement) -> Result<()> {
        if x.dim() != self.dim() {
            return Err(Error::SizeMismatch {
                expected: self.dim(),
                got: x.dim(),
            });
        }
        Ok(())
    }

    pub fn norm(&self, x: &AlgebraElement) -> Result<Rational> {
        self.check(x)?;
        Ok(self
            .norm_coeffs
            .iter()
            .zip(&x.coords)
            .filter(|(_, c)| !c.is_zero())
            .map(|(a, c)| a * c * c)
            .sum())
    }

    pub fn conj(&self, x: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        Ok(conj_coords(&x.coords))
    }

    pub fn multiply(&self, x: &AlgebraElement, y: &AlgebraElement) -> Result<AlgebraElement> {
        self.check(x)?;
        self.check(y)?;
        Ok(self.mul_unchecked(x, y))
    }

    pub(crate) fn mul_unchecked(&self, x: &AlgebraElement, y: &AlgebraElement) -> AlgebraElement {
        let mut out = AlgebraElement::zero(self.dim());
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in y.coords.iter().enumerate() {
                if b.is_zero() {
                    continue;
                }
                let p = &self.table[i][j];
                out.coords[p.index] += a * b * &p.coeff;
            }
        }
        out
    }

    /// Identity coordinate of x·y, without forming the whole product.
    pub(crate) fn real_part_of_product(&self, x: &AlgebraElement, y: &AlgebraElement) -> Rational {
        let mut s = Rational::zero();
        for (i, a) in x.coords.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            // e_i e_j lands on the identity only for j = i
            let p = &self.table[i][i];
            debug_assert_eq!(p.index, 0);
            let b = &y.coords[i];
            if !b.is_zero() {
                s += a * b * &p.coeff;
            }
        }
        s
    }

    /// Split iff the norm form is isotropic.
    pub fn is_split(&self) -> bool {
        self.norm_form().isotropic()
    }

    /// Composition algebras of equal rank are isomorphic iff their norm
    /// forms are isometric.
    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        if self.rank() != other.rank() {
            return Err(Error::RankMismatch(self.rank(), other.rank()));
        }
        Ok(self.norm_form().isometric(&other.norm_form()))
    }
}

pub fn comp_isomorphic(c: &CompositionAlgebra, d: &CompositionAlgebra) -> Result<bool> {
    c.is_isomorphic(d)
}

fn conj_coords(x: &[Rational]) -> AlgebraElement {
    AlgebraElement {
        coords: x
            .iter()
            .enumerate()
            .map(|(k, c)| if k == 0 { c.clone() } else { -c })
            .collect(),
    }
}

/// The doubling formula applied recursively to dense coordinates.
pub(crate) fn doubling_product(mus: &[Rational], x: &[Rational], y: &[Rational]) -> Vec<Rational> {
    let Some((mu, inner)) = mus.split_last() else {
        return vec![&x[0] * &y[0]];
    };
    let h = x.len() / 2;
    let (a, b) = x.split_at(h);
    let (c, d) = y.split_at(h);
    let d_bar = conj_coords(d).coords;
    let c_bar = conj_coords(c).coords;
    let ac = doubling_product(inner, a, c);
    let db = doubling_product(inner, &d_bar, b);
    let da = doubling_product(inner, d, a);
    let bc = doubling_product(inner, b, &c_bar);
    let mut out: Vec<Rational> = ac.iter().zip(&db).map(|(p, q)| p + mu * q).collect();
    out.extend(da.iter().zip(&bc).map(|(p, q)| p + q));
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::arith::rat;

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    fn slots(v: &[i64]) -> Vec<SquareClass> {
        v.iter().map(|&a| sc(a)).collect()
    }

    fn q(e: &[i64]) -> QuadraticForm {
        QuadraticForm::from_ints(e).unwrap()
    }

    fn el(v: &[i64]) -> AlgebraElement {
        AlgebraElement::new(v.iter().map(|&a| rat(a, 1)).collect())
    }

    #[test]
    fn pfister_examples() {
        assert_eq!(pfister_form(&slots(&[1])).unwrap(), q(&[1, -1]));
        assert_eq!(pfister_form(&slots(&[-1, -1])).unwrap(), q(&[1, 1, 1, 1]));
        assert_eq!(pfister_form(&[]).unwrap(), q(&[1]));
        assert_eq!(pfister_form(&slots(&[2, 3])).unwrap(), q(&[1, -2, -3, 6]));
        assert_eq!(
            pfister_form(&slots(&[1, 1, 1, 1])),
            Err(Error::RankTooLarge(4))
        );
    }

    #[test]
    fn e_invariant_examples() {
        assert!(e_invariant(&slots(&[1])).unwrap().is_zero());
        assert_eq!(
            e_invariant(&slots(&[-1, -1])).unwrap(),
            CohomClass::top_bit(2)
        );
        assert_eq!(
            e_invariant(&slots(&[-1, -1, -1])).unwrap(),
            CohomClass::top_bit(3)
        );
        assert_eq!(e_invariant(&[]).unwrap(), CohomClass::one());
    }

    #[test]
    fn norm_uses_exact_products() {
        // (-21)(-7) = 147 is 3 up to squares, but the norm of e_3 is 147
        let c = cayley_dickson(&slots(&[21, 7])).unwrap();
        let e3 = AlgebraElement::basis(4, 3);
        assert_eq!(c.norm(&e3).unwrap(), rat(147, 1));
        let x = el(&[1, 2, -1, 3]);
        let y = el(&[0, -1, 4, 1]);
        let xy = c.multiply(&x, &y).unwrap();
        assert_eq!(
            c.norm(&xy).unwrap(),
            c.norm(&x).unwrap() * c.norm(&y).unwrap()
        );
    }

    #[test]
    fn gaussian_and_hamilton_tables() {
        let c = cayley_dickson(&slots(&[-1])).unwrap();
        assert_eq!(c.table_vector(1, 1), vec![rat(-1, 1), rat(0, 1)]);

        let h = cayley_dickson(&slots(&[-1, -1])).unwrap();
        let e = |k| AlgebraElement::basis(4, k);
        assert_eq!(h.multiply(&e(1), &e(2)).unwrap(), e(3));
        assert_eq!(h.multiply(&e(2), &e(1)).unwrap(), e(3).neg());
        for k in 1..4 {
            assert_eq!(h.multiply(&e(k), &e(k)).unwrap(), e(0).neg());
        }

        let s = cayley_dickson(&slots(&[1])).unwrap();
        assert_eq!(s.table_vector(1, 1), vec![rat(1, 1), rat(0, 1)]);
    }

    #[test]
    fn norms() {
        let h = cayley_dickson(&slots(&[-1, -1])).unwrap();
        assert_eq!(h.norm(&h.identity()).unwrap(), rat(1, 1));
        assert_eq!(h.norm(&el(&[1, 1, 1, 1])).unwrap(), rat(4, 1));
        let x = el(&[2, -1, 3, 5]);
        let xx = h.multiply(&x, &h.conj(&x).unwrap()).unwrap();
        assert_eq!(xx, AlgebraElement::scalar(4, h.norm(&x).unwrap()));
        assert_eq!(h.norm_form(), h.norm_form());
        assert!(matches!(
            h.norm(&el(&[1, 2])),
            Err(Error::SizeMismatch {
                expected: 4,
                got: 2
            })
        ));
        assert!(h.multiply(&el(&[1]), &x).is_err());
    }

    #[test]
    fn norm_coefficients_are_the_pfister_entries() {
        for s in [&[][..], &[-3], &[2, -5], &[-1, 3, 7]] {
            let c = cayley_dickson(&slots(s)).unwrap();
            let entries: Vec<Rational> = pfister_form(&slots(s))
                .unwrap()
                .entries()
                .iter()
                .map(SquareClass::to_rational)
                .collect();
            for k in 0..c.dim() {
                assert_eq!(
                    c.norm(&AlgebraElement::basis(c.dim(), k)).unwrap(),
                    entries[k]
                );
            }
        }
    }

    #[test]
    fn split_detection() {
        assert!(cayley_dickson(&slots(&[1])).unwrap().is_split());
        assert!(!cayley_dickson(&slots(&[-1, -1])).unwrap().is_split());
        assert!(!cayley_dickson(&slots(&[-1, -1, -1])).unwrap().is_split());
        assert!(cayley_dickson(&slots(&[-1, 2])).unwrap().is_split());
        assert!(!cayley_dickson(&[]).unwrap().is_split());
    }

    #[test]
    fn isomorphism_examples() {
        let iso = |a: &[i64], b: &[i64]| {
            cayley_dickson(&slots(a))
                .unwrap()
                .is_isomorphic(&cayley_dickson(&slots(b)).unwrap())
                .unwrap()
        };
        assert!(iso(&[-1, -1], &[-1, -5]));
        assert!(iso(&[1], &[4]));
        assert!(!iso(&[-1, -1], &[1, 1]));
        assert!(!iso(&[-1, -1], &[-1, -3]));
        let c1 = cayley_dickson(&slots(&[1])).unwrap();
        let c2 = cayley_dickson(&slots(&[1, 1])).unwrap();
        assert_eq!(comp_isomorphic(&c1, &c2), Err(Error::RankMismatch(1, 2)));
    }

    #[test]
    fn hyperbolic_pfister() {
        assert!(Pfister::new(slots(&[1])).unwrap().is_hyperbolic());
        assert!(Pfister::new(slots(&[-1, 2])).unwrap().is_hyperbolic());
        assert!(!Pfister::new(slots(&[-1, -1])).unwrap().is_hyperbolic());
        assert!(!Pfister::new(vec![]).unwrap().is_hyperbolic());
    }

    #[test]
    fn octonion_basis_products_are_signed_units() {
        let o = cayley_dickson(&slots(&[-1, -1, -1])).unwrap();
        for row in o.table() {
            for p in row {
                assert!(p.coeff == rat(1, 1) || p.coeff == rat(-1, 1));
            }
        }
        // distinct imaginary units anticommute
        for i in 1..8 {
            for j in 1..8 {
                if i != j {
                    assert_eq!(o.table()[i][j].coeff, -o.table()[j][i].coeff.clone());
                }
            }
        }
    }
}
