//! Diagonal quadratic forms over ℚ: Hasse–Minkowski invariants, isometry,
//! isotropy and representation, the usual algebraic operations, and
//! Stiefel–Whitney classes.

use std::collections::BTreeSet;

use num_traits::Zero;

use crate::arith::{
    hilbert_symbol, is_local_square, relevant_places, Place, Rational, SquareClass,
};
use crate::cohomology::CohomClass;
use crate::error::{Error, Result};

/// A nondegenerate diagonal form ⟨a₁, …, aₙ⟩. Equality is entrywise; use
/// [`QuadraticForm::isometric`] for isometry.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuadraticForm {
    entries: Vec<SquareClass>,
}

/// Dimension, determinant, signature and Hasse invariant: a complete set of
/// isometry invariants over ℚ.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FormInvariants {
    pub dim: usize,
    pub det: SquareClass,
    /// (positives, negatives)
    pub signature: (usize, usize),
    /// Places where the Hasse invariant is -1.
    pub hasse: BTreeSet<Place>,
}

impl FormInvariants {
    pub fn hasse_at(&self, v: Place) -> i8 {
        if self.hasse.contains(&v) {
            -1
        } else {
            1
        }
    }

    /// Name of the first invariant that differs, if any.
    pub fn first_difference(&self, other: &Self) -> Option<String> {
        if self.dim != other.dim {
            return Some("dim".into());
        }
        if self.det != other.det {
            return Some("det".into());
        }
        if self.signature != other.signature {
            return Some("signature".into());
        }
        self.hasse
            .symmetric_difference(&other.hasse)
            .next()
            .map(|v| format!("hasse@{v}"))
    }
}

impl QuadraticForm {
    pub fn new(entries: Vec<SquareClass>) -> Result<Self> {
        if entries.is_empty() {
            return Err(Error::EmptyForm);
        }
        Ok(QuadraticForm { entries })
    }

    pub fn from_ints(entries: &[i64]) -> Result<Self> {
        Self::new(
            entries
                .iter()
                .map(|&a| SquareClass::from_int(a))
                .collect::<Result<_>>()?,
        )
    }

    /// n⟨1⟩.
    pub fn ones(n: usize) -> Result<Self> {
        Self::new(vec![SquareClass::one(); n])
    }

    pub fn entries(&self) -> &[SquareClass] {
        &self.entries
    }

    pub fn dim(&self) -> usize {
        self.entries.len()
    }

    pub fn det(&self) -> SquareClass {
        self.entries
            .iter()
            .fold(SquareClass::one(), |acc, a| &acc * a)
    }

    pub fn signature(&self) -> (usize, usize) {
        let neg = self.entries.iter().filter(|a| a.is_negative()).count();
        (self.dim() - neg, neg)
    }

    pub fn relevant_places(&self) -> Vec<Place> {
        relevant_places(&self.entries)
    }

    /// ∏_{i<j} (aᵢ, aⱼ)_v.
    pub fn hasse(&self, v: Place) -> i8 {
        let mut h = 1i8;
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                h *= hilbert_symbol(a, b, v);
            }
        }
        h
    }

    pub fn invariants(&self) -> FormInvariants {
        FormInvariants {
            dim: self.dim(),
            det: self.det(),
            signature: self.signature(),
            hasse: self
                .relevant_places()
                .into_iter()
                .filter(|&v| self.hasse(v) == -1)
                .collect(),
        }
    }

    pub fn isometric(&self, other: &Self) -> bool {
        if self.dim() != other.dim()
            || self.signature() != other.signature()
            || self.det() != other.det()
        {
            return false;
        }
        relevant_places(self.entries.iter().chain(&other.entries))
            .into_iter()
            .all(|v| self.hasse(v) == other.hasse(v))
    }

    /// Whether the form is isotropic over the completion at `v`.
    pub fn is_locally_isotropic(&self, v: Place) -> bool {
        let n = self.dim();
        if v == Place::Real {
            let (pos, neg) = self.signature();
            return pos > 0 && neg > 0;
        }
        let d = self.det();
        match n {
            1 => false,
            2 => is_local_square(&(&d * &SquareClass::minus_one()), v),
            3 => {
                let minus_d = &d * &SquareClass::minus_one();
                hilbert_symbol(&SquareClass::minus_one(), &minus_d, v) == self.hasse(v)
            }
            4 => {
                !is_local_square(&d, v)
                    || self.hasse(v)
                        == hilbert_symbol(&SquareClass::minus_one(), &SquareClass::minus_one(), v)
            }
            _ => true,
        }
    }

    /// Hasse–Minkowski: isotropic over ℚ iff isotropic everywhere locally.
    pub fn isotropic(&self) -> bool {
        match self.dim() {
            1 => false,
            // ⟨a, b⟩ is isotropic iff -ab is a rational square
            2 => (&self.det() * &SquareClass::minus_one()).is_one(),
            _ => self
                .relevant_places()
                .into_iter()
                .all(|v| self.is_locally_isotropic(v)),
        }
    }

    /// Whether `lambda` lies in the value set D(q).
    pub fn represents(&self, lambda: &SquareClass) -> bool {
        self.orthogonal_sum(&Self {
            entries: vec![lambda * &SquareClass::minus_one()],
        })
        .isotropic()
    }

    pub fn orthogonal_sum(&self, other: &Self) -> Self {
        let mut entries = self.entries.clone();
        entries.extend_from_slice(&other.entries);
        QuadraticForm { entries }
    }

    /// Pairwise products aᵢbⱼ in row-major order.
    pub fn tensor(&self, other: &Self) -> Self {
        let entries = self
            .entries
            .iter()
            .flat_map(|a| other.entries.iter().map(move |b| a * b))
            .collect();
        QuadraticForm { entries }
    }

    pub fn scale(&self, lambda: &SquareClass) -> Self {
        QuadraticForm {
            entries: self.entries.iter().map(|a| a * lambda).collect(),
        }
    }

    /// ∧²q = ⟨aᵢaⱼ : i < j⟩, lexicographic.
    pub fn lambda_square(&self) -> Result<Self> {
        if self.dim() < 2 {
            return Err(Error::BadDimension {
                dim: self.dim(),
                reason: "exterior square needs dimension at least 2",
            });
        }
        let mut entries = Vec::with_capacity(self.dim() * (self.dim() - 1) / 2);
        for (i, a) in self.entries.iter().enumerate() {
            for b in &self.entries[i + 1..] {
                entries.push(a * b);
            }
        }
        Ok(QuadraticForm { entries })
    }

    /// [w₀, …, wₙ] from ∏ (1 + (aⱼ)).
    pub fn total_sw(&self) -> Vec<CohomClass> {
        let n = self.dim();
        let mut w = vec![CohomClass::zero(); n + 1];
        w[0] = CohomClass::one();
        for (k, a) in self.entries.iter().enumerate() {
            let da = CohomClass::degree1(a.clone());
            for i in (1..=k + 1).rev() {
                let term = w[i - 1].cup(&da);
                w[i] = w[i].add(&term);
            }
        }
        w
    }

    /// w_i(q), zero beyond the dimension.
    pub fn sw(&self, i: usize) -> CohomClass {
        if i > self.dim() {
            return CohomClass::zero();
        }
        self.total_sw().swap_remove(i)
    }

    /// d(q)·q, which has determinant 1 in odd dimension.
    pub fn normalize_det1(&self) -> Result<Self> {
        if self.dim().is_multiple_of(2) {
            return Err(Error::BadDimension {
                dim: self.dim(),
                reason: "determinant normalization needs odd dimension",
            });
        }
        Ok(self.scale(&self.det()))
    }

    /// Similarity in odd dimension, where the factor is forced to be
    /// d(q)·d(q′).
    pub fn similar(&self, other: &Self) -> Result<bool> {
        if self.dim() != other.dim() {
            return Err(Error::BadDimension {
                dim: other.dim(),
                reason: "similarity needs equal dimensions",
            });
        }
        if self.dim().is_multiple_of(2) {
            return Err(Error::BadDimension {
                dim: self.dim(),
                reason: "similarity is only decided in odd dimension",
            });
        }
        let lambda = &self.det() * &other.det();
        Ok(self.isometric(&other.scale(&lambda)))
    }

    /// Multiplies entry `i` by `lambda`, which must be represented by `phi`.
    /// The result is simply φ-equivalent to `self`.
    pub fn simple_phi_step(&self, i: usize, lambda: &SquareClass, phi: &Self) -> Result<Self> {
        if i >= self.dim() {
            return Err(Error::IndexOutOfRange {
                index: i,
                dim: self.dim(),
            });
        }
        if !phi.represents(lambda) {
            return Err(Error::NotRepresented(lambda.to_string()));
        }
        let mut entries = self.entries.clone();
        entries[i] = &entries[i] * lambda;
        Ok(QuadraticForm { entries })
    }
}

/// Diagonalizes a symmetric nonsingular Gram matrix by symmetric Gaussian
/// elimination.
pub fn diagonalize(gram: &[Vec<Rational>]) -> Result<QuadraticForm> {
    let n = gram.len();
    if n == 0 {
        return Err(Error::EmptyForm);
    }
    if gram.iter().any(|row| row.len() != n) {
        return Err(Error::NotSymmetric);
    }
    for i in 0..n {
        for j in 0..i {
            if gram[i][j] != gram[j][i] {
                return Err(Error::NotSymmetric);
            }
        }
    }
    let mut m: Vec<Vec<Rational>> = gram.to_vec();
    let mut entries = Vec::with_capacity(n);
    for k in 0..n {
        if m[k][k].is_zero() {
            if let Some(j) = (k + 1..n).find(|&j| !m[j][j].is_zero()) {
                m.swap(k, j);
                for row in m.iter_mut() {
                    row.swap(k, j);
                }
            } else if let Some(j) = (k + 1..n).find(|&j| !m[k][j].is_zero()) {
                // e_k ← e_k + e_j gives a new diagonal entry 2·m[k][j]
                for c in 0..n {
                    let v = m[j][c].clone();
                    m[k][c] += v;
                }
                for r in 0..n {
                    let v = m[r][j].clone();
                    m[r][k] += v;
                }
            } else {
                return Err(Error::Singular);
            }
        }
        let pivot = m[k][k].clone();
        for i in k + 1..n {
            if m[i][k].is_zero() {
                continue;
            }
            let f = &m[i][k] / &pivot;
            for j in k..n {
                let v = &f * &m[k][j];
                m[i][j] -= v;
            }
        }
        for j in k + 1..n {
            m[k][j] = Rational::zero();
        }
        // restore symmetry in the trailing block
        for i in k + 1..n {
            m[i][k] = Rational::zero();
        }
        entries.push(SquareClass::from_rational(&pivot)?);
    }
    QuadraticForm::new(entries)
}

/// The Gram matrix diag(a₁, …, aₙ) of the representatives.
pub fn gram_of(q: &QuadraticForm) -> Vec<Vec<Rational>> {
    let n = q.dim();
    (0..n)
        .map(|i| {
            (0..n)
                .map(|j| {
                    if i == j {
                        q.entries[i].to_rational()
                    } else {
                        Rational::zero()
                    }
                })
                .collect()
        })
        .collect()
}

/// `Tᵗ G T`.
pub fn congruence(gram: &[Vec<Rational>], t: &[Vec<Rational>]) -> Vec<Vec<Rational>> {
    let n = gram.len();
    let mut gt = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = Rational::zero();
            for k in 0..n {
                if !gram[i][k].is_zero() && !t[k][j].is_zero() {
                    s += &gram[i][k] * &t[k][j];
                }
            }
            gt[i][j] = s;
        }
    }
    let mut out = vec![vec![Rational::zero(); n]; n];
    for i in 0..n {
        for j in 0..n {
            let mut s = Rational::zero();
            for k in 0..n {
                if !t[k][i].is_zero() && !gt[k][j].is_zero() {
                    s += &t[k][i] * &gt[k][j];
                }
            }
            out[i][j] = s;
        }
    }
    out
}
