//! Reduced Jordan algebras J = (Mₙ(C), ad_q ⊗ −)₊ of odd degree n.
//!
//! Elements are n×n matrices X over C with G·X conjugate-transpose
//! symmetric, G = diag(a₁,…,aₙ) the Gram matrix of q, under the product
//! X∘Y = ½(XY + YX).

use num_traits::Zero;
use rayon::prelude::*;

use crate::arith::{rat, Rational, SquareClass};
use crate::cohomology::CohomClass;
use crate::composition::{AlgebraElement, CompositionAlgebra, Pfister};
use crate::error::{Error, Result};
use crate::forms::QuadraticForm;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ReducedJordanAlgebra {
    slots: Vec<SquareClass>,
    q: QuadraticForm,
    algebra: CompositionAlgebra,
}

/// Builds (Mₙ(C_φ), ad_q ⊗ −)₊ for φ = ⟨⟨slots⟩⟩.
pub fn make_jordan(
    r: usize,
    slots: Vec<SquareClass>,
    q: QuadraticForm,
) -> Result<ReducedJordanAlgebra> {
    ReducedJordanAlgebra::new(r, slots, q)
}

impl ReducedJordanAlgebra {
    pub fn new(r: usize, slots: Vec<SquareClass>, q: QuadraticForm) -> Result<Self> {
        if slots.len() != r {
            return Err(Error::InvalidJordan(format!(
                "r = {r} but {} slots given",
                slots.len()
            )));
        }
        if r > 3 {
            return Err(Error::RankTooLarge(r));
        }
        let n = q.dim();
        if n < 3 || n.is_multiple_of(2) {
            return Err(Error::InvalidJordan(format!(
                "degree must be odd and at least 3, got {n}"
            )));
        }
        if r == 3 && n != 3 {
            return Err(Error::InvalidJordan(format!(
                "octonion coordinates require degree 3, got {n}"
            )));
        }
        let algebra = CompositionAlgebra::new(slots.clone())?;
        Ok(ReducedJordanAlgebra { slots, q, algebra })
    }

    /// The split algebra J^r_n.
    pub fn split(r: usize, n: usize) -> Result<Self> {
        Self::new(r, vec![SquareClass::one(); r], QuadraticForm::ones(n)?)
    }

    pub fn r(&self) -> usize {
        self.slots.len()
    }

    pub fn n(&self) -> usize {
        self.q.dim()
    }

    /// (n − 1) / 2
    pub fn m(&self) -> usize {
        (self.n() - 1) / 2
    }

    pub fn slots(&self) -> &[SquareClass] {
        &self.slots
    }

    pub fn q(&self) -> &QuadraticForm {
        &self.q
    }

    pub fn algebra(&self) -> &CompositionAlgebra {
        &self.algebra
    }

    pub fn pfister(&self) -> Pfister {
        Pfister::new(self.slots.clone()).expect("rank checked at construction")
    }

    /// Dimension n + 2^r·n(n−1)/2 over ℚ.
    pub fn dim(&self) -> usize {
        let n = self.n();
        n + self.algebra.dim() * n * (n - 1) / 2
    }

    /// Degrees r, r+2, …, r+2m of v₀, …, v_m.
    pub fn v_degrees(&self) -> Vec<usize> {
        (0..=self.m()).map(|i| self.r() + 2 * i).collect()
    }

    /// v_i = e_r(φ) ∪ w_{2i}(d(q)·q) for i = 0..=m.
    pub fn v_invariants(&self) -> Vec<CohomClass> {
        let e = self.pfister().e_invariant();
        let w = self.q.normalize_det1().expect("odd degree").total_sw();
        (0..=self.m()).map(|i| e.cup(&w[2 * i])).collect()
    }

    /// φ ⊗ d(q)·q.
    pub fn normalized_tensor(&self) -> QuadraticForm {
        self.pfister()
            .form()
            .tensor(&self.q.normalize_det1().expect("odd degree"))
    }

    pub fn is_isomorphic(&self, other: &Self) -> Result<bool> {
        if self.r() != other.r() {
            return Err(Error::RankMismatch(self.r(), other.r()));
        }
        if self.n() != other.n() {
            return Err(Error::BadDimension {
                dim: other.n(),
                reason: "isomorphism test needs equal degrees",
            });
        }
        if !self.algebra.is_isomorphic(&other.algebra)? {
            return Ok(false);
        }
        Ok(self.classifying_form().isometric(&other.classifying_form()))
    }

    /// The form whose isometry class, together with C, decides isomorphism:
    /// φ ⊗ d(q)·q for r ≤ 2 and the trace form for r = 3.
    pub fn classifying_form(&self) -> QuadraticForm {
        if self.r() == 3 {
            self.trace_form_formula()
        } else {
            self.normalized_tensor()
        }
    }

    /// n⟨1⟩ ⊥ ⟨2⟩·φ ⊗ ∧²q.
    pub fn trace_form_formula(&self) -> QuadraticForm {
        let wedge = self.q.lambda_square().expect("degree at least 3");
        let off = self
            .pfister()
            .form()
            .tensor(&wedge)
            .scale(&SquareClass::from_int(2).expect("nonzero"));
        QuadraticForm::ones(self.n())
            .expect("nonempty")
            .orthogonal_sum(&off)
    }

    fn gram_entries(&self) -> Vec<Rational> {
        self.q
            .entries()
            .iter()
            .map(SquareClass::to_rational)
            .collect()
    }

    /// E_ii for each i, then a_i⁻¹E_ij·c + a_j⁻¹E_ji·c̄ for i < j and each
    /// basis element c of C.
    pub fn hermitian_basis(&self) -> Vec<JordanElement> {
        let n = self.n();
        let d = self.algebra.dim();
        let a = self.gram_entries();
        let mut basis = Vec::with_capacity(self.dim());
        for i in 0..n {
            let mut x = JordanElement::zero(n, d);
            x.set(i, i, AlgebraElement::basis(d, 0));
            basis.push(x);
        }
        for i in 0..n {
            for j in i + 1..n {
                for k in 0..d {
                    let c = AlgebraElement::basis(d, k);
                    let c_bar = self.algebra.conj(&c).expect("sized");
                    let mut x = JordanElement::zero(n, d);
                    x.set(i, j, c.scale(&a[i].recip()));
                    x.set(j, i, c_bar.scale(&a[j].recip()));
                    basis.push(x);
                }
            }
        }
        basis
    }

    pub fn identity(&self) -> JordanElement {
        let (n, d) = (self.n(), self.algebra.dim());
        let mut x = JordanElement::zero(n, d);
        for i in 0..n {
            x.set(i, i, AlgebraElement::basis(d, 0));
        }
        x
    }

    fn check_shape(&self, x: &JordanElement) -> Result<()> {
        if x.n != self.n() || x.entries.iter().any(|e| e.dim() != self.algebra.dim()) {
            return Err(Error::SizeMismatch {
                expected: self.n(),
                got: x.n,
            });
        }
        Ok(())
    }

    /// a_i·X_ij = conj(a_j·X_ji) for all i, j.
    pub fn is_hermitian(&self, x: &JordanElement) -> bool {
        if self.check_shape(x).is_err() {
            return false;
        }
        let a = self.gram_entries();
        let n = self.n();
        for i in 0..n {
            for j in i..n {
                let lhs = x.get(i, j).scale(&a[i]);
                let rhs = self.algebra.conj(&x.get(j, i).scale(&a[j])).expect("sized");
                if lhs != rhs {
                    return false;
                }
            }
        }
        true
    }

    /// The ordinary matrix product over C.
    pub fn matrix_product(&self, x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
        self.check_shape(x)?;
        self.check_shape(y)?;
        let (n, d) = (self.n(), self.algebra.dim());
        let mut out = JordanElement::zero(n, d);
        for i in 0..n {
            for j in 0..n {
                let mut s = AlgebraElement::zero(d);
                for k in 0..n {
                    let (a, b) = (x.get(i, k), y.get(k, j));
                    if a.is_zero() || b.is_zero() {
                        continue;
                    }
                    s = s.add(&self.algebra.mul_unchecked(a, b));
                }
                out.set(i, j, s);
            }
        }
        Ok(out)
    }

    /// X∘Y = ½(XY + YX); both inputs must be hermitian.
    pub fn jordan_product(&self, x: &JordanElement, y: &JordanElement) -> Result<JordanElement> {
        if !self.is_hermitian(x) || !self.is_hermitian(y) {
            return Err(Error::NotHermitian);
        }
        let xy = self.matrix_product(x, y)?;
        let yx = self.matrix_product(y, x)?;
        let half = rat(1, 2);
        let entries = xy
            .entries
            .iter()
            .zip(&yx.entries)
            .map(|(p, q)| p.add(q).scale(&half))
            .collect();
        let out = JordanElement { n: x.n, entries };
        debug_assert!(self.is_hermitian(&out));
        Ok(out)
    }

    /// Sum of the identity coordinates of the diagonal.
    pub fn trace(&self, x: &JordanElement) -> Rational {
        (0..x.n).map(|i| x.get(i, i).real_part().clone()).sum()
    }

    /// Trd(X∘Y) without forming the full product.
    pub fn trace_bilinear(&self, x: &JordanElement, y: &JordanElement) -> Rational {
        let n = self.n();
        let mut s = Rational::zero();
        for i in 0..n {
            for k in 0..n {
                let (xik, yki) = (x.get(i, k), y.get(k, i));
                if !xik.is_zero() && !yki.is_zero() {
                    s += self.algebra.real_part_of_product(xik, yki);
                }
                let (yik, xki) = (y.get(i, k), x.get(k, i));
                if !yik.is_zero() && !xki.is_zero() {
                    s += self.algebra.real_part_of_product(yik, xki);
                }
            }
        }
        s * rat(1, 2)
    }

    /// Gram matrix of T(X, Y) = Trd(X∘Y) on [`Self::hermitian_basis`],
    /// computed entry by entry from the multiplication table of C.
    pub fn trace_gram_oracle(&self) -> Vec<Vec<Rational>> {
        let basis = self.hermitian_basis();
        self.gram_on(&basis)
    }

    /// Gram matrix of the trace form on an arbitrary family of elements.
    pub fn gram_on(&self, family: &[JordanElement]) -> Vec<Vec<Rational>> {
        let rows: Vec<Vec<Rational>> = (0..family.len())
            .into_par_iter()
            .map(|i| {
                (0..family.len())
                    .map(|j| {
                        if j < i {
                            Rational::zero()
                        } else {
                            self.trace_bilinear(&family[i], &family[j])
                        }
                    })
                    .collect()
            })
            .collect();
        let mut g = rows;
        for i in 0..g.len() {
            for j in 0..i {
                g[i][j] = g[j][i].clone();
            }
        }
        g
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JordanElement {
    n: usize,
    /// Row-major n×n.
    entries: Vec<AlgebraElement>,
}

impl JordanElement {
    pub fn zero(n: usize, algebra_dim: usize) -> Self {
        JordanElement {
            n,
            entries: vec![AlgebraElement::zero(algebra_dim); n * n],
        }
    }

    pub fn from_rows(rows: Vec<Vec<AlgebraElement>>) -> Result<Self> {
        let n = rows.len();
        if rows.iter().any(|r| r.len() != n) {
            return Err(Error::NotSymmetric);
        }
        Ok(JordanElement {
            n,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &AlgebraElement {
        &self.entries[i * self.n + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: AlgebraElement) {
        self.entries[i * self.n + j] = v;
    }

    pub fn add(&self, other: &Self) -> Self {
        JordanElement {
            n: self.n,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| a.add(b))
                .collect(),
        }
    }

    pub fn scale(&self, s: &Rational) -> Self {
        JordanElement {
            n: self.n,
            entries: self.entries.iter().map(|a| a.scale(s)).collect(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(AlgebraElement::is_zero)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::diagonalize;

    fn sc(n: i64) -> SquareClass {
        SquareClass::from_int(n).unwrap()
    }

    fn slots(v: &[i64]) -> Vec<SquareClass> {
        v.iter().map(|&a| sc(a)).collect()
    }

    fn q(e: &[i64]) -> QuadraticForm {
        QuadraticForm::from_ints(e).unwrap()
    }

    fn j(mu: &[i64], e: &[i64]) -> ReducedJordanAlgebra {
        make_jordan(mu.len(), slots(mu), q(e)).unwrap()
    }

    #[test]
    fn construction_checks() {
        assert_eq!(j(&[], &[1, 1, 1]).dim(), 6);
        assert_eq!(j(&[-1, -1], &[1, 1, 1]).dim(), 15);
        assert_eq!(j(&[-1, -1, -1], &[1, 1, 5]).dim(), 27);
        assert!(make_jordan(0, vec![], q(&[1, 1])).is_err());
        assert!(make_jordan(0, vec![], q(&[1])).is_err());
        assert!(make_jordan(3, slots(&[-1, -1, -1]), q(&[1, 1, 1, 1, 1])).is_err());
        assert!(make_jordan(2, slots(&[-1]), q(&[1, 1, 1])).is_err());
        assert!(make_jordan(2, slots(&[-1, -1]), q(&[1, 1, 1, 1, 1])).is_ok());
    }

    #[test]
    fn v_invariant_examples() {
        let v = j(&[], &[-1, -1, 1]).v_invariants();
        assert_eq!(v, vec![CohomClass::one(), CohomClass::top_bit(2)]);

        let v = j(&[-1, -1], &[1, 1, 1]).v_invariants();
        assert_eq!(v, vec![CohomClass::top_bit(2), CohomClass::zero()]);

        let v = j(&[-1, -1], &[-1, -1, 1]).v_invariants();
        assert_eq!(v[1], CohomClass::top_bit(4));
        assert_eq!(j(&[-1, -1], &[-1, -1, 1]).v_degrees(), vec![2, 4]);
    }

    #[test]
    fn isomorphism_examples() {
        let a = j(&[3, -7], &[2, -5, 11]);
        let b = make_jordan(2, slots(&[3, -7]), q(&[2, -5, 11]).scale(&sc(-6))).unwrap();
        assert!(a.is_isomorphic(&b).unwrap());
        assert!(j(&[], &[1, 2, 3])
            .is_isomorphic(&j(&[], &[5, 10, 15]))
            .unwrap());
        assert!(j(&[-1, -1], &[1, 1, 1])
            .is_isomorphic(&j(&[-1, -1], &[2, 2, 2]))
            .unwrap());
        assert!(!j(&[-1, -1], &[1, 1, 1])
            .is_isomorphic(&j(&[-1, -1], &[-1, -1, 1]))
            .unwrap());
        assert!(j(&[-1], &[1, 1, 1])
            .is_isomorphic(&j(&[], &[1, 1, 1]))
            .is_err());
        assert!(j(&[], &[1, 1, 1])
            .is_isomorphic(&j(&[], &[1, 1, 1, 1, 1]))
            .is_err());
    }

    #[test]
    fn trace_formula_examples() {
        assert_eq!(
            j(&[], &[1, 1, 1]).trace_form_formula(),
            q(&[1, 1, 1, 2, 2, 2])
        );
        assert_eq!(j(&[-1, -1, -1], &[1, 1, 1]).trace_form_formula().dim(), 27);
        let t = j(&[-1], &[1, 1, 1]).trace_form_formula();
        let want = q(&[1, 1, 1]).orthogonal_sum(&q(&[1, 1]).tensor(&q(&[1, 1, 1])).scale(&sc(2)));
        assert_eq!(t, want);
        assert_eq!(t.dim(), 9);
    }

    #[test]
    fn gram_oracle_small_cases() {
        let a = j(&[], &[1, 1, 1]);
        let g = a.trace_gram_oracle();
        assert_eq!(g.len(), 6);
        assert!(diagonalize(&g).unwrap().isometric(&q(&[1, 1, 1, 2, 2, 2])));

        let o = j(&[-1, -1, -1], &[1, 1, 1]);
        let g = o.trace_gram_oracle();
        assert_eq!(g.len(), 27);
        assert!(diagonalize(&g).unwrap().isometric(&o.trace_form_formula()));
    }

    #[test]
    fn basis_is_hermitian_and_identity_acts() {
        let a = j(&[-1, 3], &[2, -3, 5]);
        let e = a.identity();
        for x in a.hermitian_basis() {
            assert!(a.is_hermitian(&x));
            assert_eq!(a.jordan_product(&x, &e).unwrap(), x);
        }
        assert_eq!(a.hermitian_basis().len(), a.dim());
    }

    #[test]
    fn orthogonal_idempotents() {
        let a = j(&[-1], &[1, 2, 3]);
        let b = a.hermitian_basis();
        assert!(a.jordan_product(&b[0], &b[1]).unwrap().is_zero());
        assert_eq!(a.jordan_product(&b[0], &b[0]).unwrap(), b[0]);
    }

    #[test]
    fn non_hermitian_rejected() {
        let a = j(&[-1], &[1, 1, 1]);
        let mut x = JordanElement::zero(3, 2);
        x.set(0, 1, AlgebraElement::basis(2, 1));
        assert!(!a.is_hermitian(&x));
        assert_eq!(
            a.jordan_product(&x, &a.identity()),
            Err(Error::NotHermitian)
        );
        // a non-scalar diagonal entry
        let mut y = JordanElement::zero(3, 2);
        y.set(0, 0, AlgebraElement::basis(2, 1));
        assert!(!a.is_hermitian(&y));
    }

    #[test]
    fn split_algebra_has_vanishing_invariants() {
        for r in 1..=2 {
            let s = ReducedJordanAlgebra::split(r, 5).unwrap();
            assert!(s.v_invariants().iter().all(CohomClass::is_zero));
        }
        let s = ReducedJordanAlgebra::split(0, 3).unwrap();
        assert_eq!(
            s.v_invariants(),
            vec![CohomClass::one(), CohomClass::zero()]
        );
    }
}
