//! Exhaustive search for non-isomorphic reduced Jordan algebras with equal
//! v-invariant vectors.
//!
//! The space is d(q)·q for every diagonal form q of degree n with entries
//! in {±1} ∪ {±p : p ≤ B prime}, taken up to permutation of the entries,
//! with the composition algebra fixed to slots (−1, …, −1). Forms that
//! already have determinant 1 are their own normalization.

use std::collections::BTreeMap;

use itertools::Itertools;
use rayon::prelude::*;
use serde_json::{Map, Value};

use crate::arith::{factor_bound, SquareClass};
use crate::error::{Error, Result};
use crate::forms::QuadraticForm;
use crate::jordan::ReducedJordanAlgebra;
use crate::serial::{classes_from_json, classes_to_json, FromJson, ToJson};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CollisionCertificate {
    pub pair: (ReducedJordanAlgebra, ReducedJordanAlgebra),
    /// The common vector (v₀, …, v_m).
    pub v: Vec<crate::cohomology::CohomClass>,
    pub isomorphic: bool,
    /// The first `FormInvariants` field that differs between the
    /// classifying forms of the pair.
    pub differs: String,
}

impl CollisionCertificate {
    /// Recomputes everything from the stored pair.
    pub fn verify(&self) -> Result<()> {
        let (a, b) = &self.pair;
        let fail = |m: String| {
            Err(Error::InvalidParameter(format!(
                "certificate does not verify: {m}"
            )))
        };
        if a.v_invariants() != self.v || b.v_invariants() != self.v {
            return fail("v-invariant vectors differ from the stored ones".into());
        }
        let iso = a.is_isomorphic(b)?;
        if iso != self.isomorphic || iso {
            return fail(format!("isomorphism verdict is {iso}"));
        }
        let diff = a
            .classifying_form()
            .invariants()
            .first_difference(&b.classifying_form().invariants());
        if diff.as_deref() != Some(self.differs.as_str()) {
            return fail(format!("distinguishing invariant is {diff:?}"));
        }
        Ok(())
    }

    pub fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert(
            "pair".into(),
            Value::Array(vec![self.pair.0.to_json(), self.pair.1.to_json()]),
        );
        m.insert("v".into(), classes_to_json(&self.v));
        m.insert("isomorphic".into(), Value::Bool(self.isomorphic));
        m.insert("differs".into(), Value::String(self.differs.clone()));
        Value::Object(m)
    }

    pub fn from_json(v: &Value, field: &str) -> Result<Self> {
        let obj = v
            .as_object()
            .ok_or_else(|| Error::parse(field, "expected an object"))?;
        let get = |k: &str| {
            obj.get(k)
                .ok_or_else(|| Error::parse(format!("{field}.{k}"), "missing"))
        };
        let pair = get("pair")?
            .as_array()
            .filter(|p| p.len() == 2)
            .ok_or_else(|| Error::parse(format!("{field}.pair"), "expected two algebras"))?;
        Ok(CollisionCertificate {
            pair: (
                ReducedJordanAlgebra::from_json(&pair[0], &format!("{field}.pair[0]"))?,
                ReducedJordanAlgebra::from_json(&pair[1], &format!("{field}.pair[1]"))?,
            ),
            v: classes_from_json(get("v")?, &format!("{field}.v"))?,
            isomorphic: get("isomorphic")?
                .as_bool()
                .ok_or_else(|| Error::parse(format!("{field}.isomorphic"), "expected a boolean"))?,
            differs: get("differs")?
                .as_str()
                .ok_or_else(|| Error::parse(format!("{field}.differs"), "expected a string"))?
                .to_string(),
        })
    }
}

/// ±1 and ±p for primes p ≤ bound, in a fixed order.
pub fn entry_set(bound: u64) -> Vec<SquareClass> {
    let mut out = vec![SquareClass::one(), SquareClass::minus_one()];
    for p in (2..=bound).filter(|&p| (2..p).take_while(|d| d * d <= p).all(|d| p % d != 0)) {
        out.push(SquareClass::from_parts(false, [p]).expect("prime"));
        out.push(SquareClass::from_parts(true, [p]).expect("prime"));
    }
    out
}

/// The normalized forms of the search space, one per multiset of entries.
/// Distinct multisets can normalize to the same form.
pub fn search_space(n: usize, bound: u64) -> Vec<QuadraticForm> {
    entry_set(bound)
        .into_iter()
        .combinations_with_replacement(n)
        .map(|e| {
            QuadraticForm::new(e)
                .and_then(|q| q.normalize_det1())
                .expect("odd n ≥ 3")
        })
        .collect()
}

fn check_params(r: usize, n: usize, bound: u64) -> Result<()> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(Error::InvalidParameter(format!(
            "n must be odd and at least 3, got {n}"
        )));
    }
    if r > 3 || (r == 3 && n != 3) {
        return Err(Error::InvalidParameter(format!(
            "no reduced algebra with r = {r}, n = {n}"
        )));
    }
    if bound < 2 {
        return Err(Error::InvalidParameter(format!(
            "entry bound must be at least 2, got {bound}"
        )));
    }
    let limit = factor_bound();
    if bound > limit {
        return Err(Error::InvalidParameter(format!(
            "entry bound {bound} exceeds the factorization bound {limit}"
        )));
    }
    Ok(())
}

pub struct SearchOutcome {
    pub forms_searched: usize,
    /// Distinct v-invariant vectors.
    pub groups: usize,
    /// Isomorphism classes met.
    pub classes: usize,
    pub certificates: Vec<CollisionCertificate>,
}

pub fn collision_search(r: usize, n: usize, bound: u64) -> Result<Vec<CollisionCertificate>> {
    Ok(collision_search_with_stats(r, n, bound)?.certificates)
}

pub fn collision_search_with_stats(r: usize, n: usize, bound: u64) -> Result<SearchOutcome> {
    check_params(r, n, bound)?;
    let slots = vec![SquareClass::minus_one(); r];
    let space = search_space(n, bound);
    let keyed: Vec<(String, String, ReducedJordanAlgebra)> = space
        .into_par_iter()
        .map(|q| {
            let j = ReducedJordanAlgebra::new(r, slots.clone(), q).expect("parameters checked");
            let v = classes_to_json(&j.v_invariants()).to_string();
            let iso = j.classifying_form().invariants().to_json().to_string();
            (v, iso, j)
        })
        .collect();
    let forms_searched = keyed.len();

    // v-vector -> isometry key of the classifying form -> first algebra seen
    let mut groups: BTreeMap<String, BTreeMap<String, ReducedJordanAlgebra>> = BTreeMap::new();
    for (v, iso, j) in keyed {
        groups.entry(v).or_default().entry(iso).or_insert(j);
    }

    let mut certificates = Vec::new();
    for classes in groups.values() {
        for (a, b) in classes.values().tuple_combinations() {
            let differs = a
                .classifying_form()
                .invariants()
                .first_difference(&b.classifying_form().invariants())
                .expect("distinct isometry keys");
            certificates.push(CollisionCertificate {
                pair: (a.clone(), b.clone()),
                v: a.v_invariants(),
                isomorphic: a.is_isomorphic(b)?,
                differs,
            });
        }
    }
    certificates.sort_by_cached_key(|c| c.to_json().to_string());
    Ok(SearchOutcome {
        forms_searched,
        groups: groups.len(),
        classes: groups.values().map(BTreeMap::len).sum(),
        certificates,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn entry_set_small() {
        let e: Vec<_> = entry_set(7).iter().map(|c| c.to_i64().unwrap()).collect();
        assert_eq!(e, vec![1, -1, 2, -2, 3, -3, 5, -5, 7, -7]);
    }

    #[test]
    fn search_space_is_normalized_multisets() {
        let s = search_space(3, 3);
        assert!(s.iter().all(|q| q.det().is_one()));
        // multisets of size 3 from {1,-1,2,-2,3,-3}
        assert_eq!(s.len(), 56);
        let raw = QuadraticForm::from_ints(&[-3, 2, 2]).unwrap();
        assert!(s.contains(&raw.normalize_det1().unwrap()));
        assert!(s.contains(&QuadraticForm::from_ints(&[1, -1, -1]).unwrap()));
    }

    #[test]
    fn bad_parameters() {
        assert!(collision_search(0, 4, 7).is_err());
        assert!(collision_search(3, 5, 7).is_err());
        assert!(collision_search(4, 3, 7).is_err());
        assert!(collision_search(0, 3, 1).is_err());
    }

    #[test]
    fn degree_three_small_bound_is_complete() {
        assert!(collision_search(0, 3, 5).unwrap().is_empty());
        assert!(collision_search(1, 3, 5).unwrap().is_empty());
    }
}
