//! JSON encodings for every value that crosses the CLI or Python boundary.
//!
//! * square class: signed square-free integer, `-3`
//! * place: `"inf"` or the prime as a decimal string, `"2"`
//! * cohomology class: object keyed by degree, zero parts omitted,
//!   `{"0":1,"2":["2","inf"],"4":1}`
//! * form: `[1,-2,3]`; Gram matrix: `[["2","1"],["1","2"]]`
//! * composition algebra: `{"mu":[-1,-1]}`; elements: `["1/2","0"]`
//! * Jordan algebra: `{"r":2,"mu":[-1,-1],"q":[1,1,1]}`
//!
//! Parsers accept integers or rational strings wherever a square class is
//! expected and canonicalize them, so `{"mu":[4]}` reads as `{"mu":[1]}`.

use std::collections::BTreeSet;

use serde_json::{Map, Number, Value};

use crate::arith::{parse_rational, Place, Rational, SquareClass};
use crate::cohomology::{CohomClass, CohomComponent};
use crate::composition::{AlgebraElement, CompositionAlgebra};
use crate::error::{Error, Result};
use crate::forms::{FormInvariants, QuadraticForm};
use crate::jordan::ReducedJordanAlgebra;

pub trait ToJson {
    fn to_json(&self) -> Value;
}

pub trait FromJson: Sized {
    /// `field` names the location for diagnostics.
    fn from_json(v: &Value, field: &str) -> Result<Self>;
}

/// Parses JSON text, labelling syntax errors with `field`.
pub fn parse_json<T: FromJson>(text: &str, field: &str) -> Result<T> {
    let v: Value = serde_json::from_str(text)
        .map_err(|e| Error::parse(field, format!("invalid JSON: {e}")))?;
    T::from_json(&v, field)
}

fn int_value(n: &num_bigint::BigInt) -> Value {
    Value::Number(n.to_string().parse::<Number>().expect("decimal integer"))
}

fn rational_of(v: &Value, field: &str) -> Result<Rational> {
    match v {
        Value::Number(n) => parse_rational(&n.to_string())
            .map_err(|_| Error::parse(field, format!("{n} is not an integer"))),
        Value::String(s) => {
            parse_rational(s).map_err(|_| Error::parse(field, format!("{s:?} is not a rational")))
        }
        other => Err(Error::parse(
            field,
            format!("expected a number, got {other}"),
        )),
    }
}

fn array<'a>(v: &'a Value, field: &str) -> Result<&'a Vec<Value>> {
    v.as_array()
        .ok_or_else(|| Error::parse(field, format!("expected an array, got {v}")))
}

fn object<'a>(v: &'a Value, field: &str) -> Result<&'a Map<String, Value>> {
    v.as_object()
        .ok_or_else(|| Error::parse(field, format!("expected an object, got {v}")))
}

fn bit(v: &Value, field: &str) -> Result<bool> {
    match v.as_u64() {
        Some(0) => Ok(false),
        Some(1) => Ok(true),
        _ => match v.as_bool() {
            Some(b) => Ok(b),
            None => Err(Error::parse(field, format!("expected 0 or 1, got {v}"))),
        },
    }
}

impl ToJson for Rational {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl FromJson for Rational {
    fn from_json(v: &Value, field: &str) -> Result<Self> {
        rational_of(v, field)
    }
}

impl ToJson for SquareClass {
    fn to_json(&self) -> Value {
        int_value(&self.representative())
    }
}

impl FromJson for SquareClass {
    fn from_json(v: &Value, field: &str) -> Result<Self> {
        let r = rational_of(v, field)?;
        SquareClass::from_rational(&r).map_err(|e| Error::parse(field, e.to_string()))
    }
}

impl ToJson for Place {
    fn to_json(&self) -> Value {
        Value::String(self.to_string())
    }
}

impl FromJson for Place {
    fn from_json(v: &Value, field: &str) -> Result<Self> {
        let p = match v {
            Value::String(s) if s == "inf" => return Ok(Place::Real),
            Value::String(s) => s.trim().parse::<u64>().ok(),
            Value::Number(n) => n.as_u64(),
            _ => None,
        };
        match p {
            Some(p) if SquareClass::from_parts(false, [p]).is_ok() => Ok(Place::Prime(p)),
            _ => Err(Error::parse(
                field,
                format!("{v} is not \"inf\" or a prime"),
            )),
        }
    }
}

/// Primes ascending, then the real place.
fn places_to_json(places: &BTreeSet<Place>) -> Value {
    let mut out: Vec<Value> = places
        .iter()
        .filter(|p| **p != Place::Real)
        .map(ToJson::to_json)
        .collect();
    if places.contains(&Place::Real) {
        out.push(Place::Real.to_json());
    }
    Value::Array(out)
}

impl ToJson for CohomClass {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        for d in self.degrees() {
            let v = match self.component(d) {
                CohomComponent::Bit(_) => Value::from(1),
                CohomComponent::Degree1(c) => c.to_json(),
                CohomComponent::Degree2(p) => places_to_json(&p),
            };
            m.insert(d.to_string(), v);
        }
        Value::Object(m)
    }
}

impl FromJson for CohomClass {
    fn from_json(v: &Value, field: &str) -> Result<Self> {
        let mut acc = CohomClass::zero();
        for (k, val) in object(v, field)? {
            let f = format!("{field}.{k}");
            let d: usize = k
                .parse()
                .map_err(|_| Error::parse(&f, "degree key must be a non-negative integer"))?;
            let part = match d {
                1 => CohomClass::degree1(SquareClass::from_json(val, &f)?),
                2 => {
                    let mut set = BTreeSet::new();
                    for (i, p) in array(val, &f)?.iter().enumerate() {
                        if !set.insert(Place::from_json(p, &format!("{f}[{i}]"))?) {
                            return Err(Error::parse(&f, "repeated place"));
                        }
                    }
                    CohomClass::degree2(set).map_err(|e| Error::parse(&f, e.to_string()))?
                }
                _ => {
                    if bit(val, &f)? {
                        CohomClass::top_bit(d)
                    } else {
                        CohomClass::zero()
                    }
                }
            };
            acc = acc.add(&part);
        }
        Ok(acc)
    }
}

impl ToJson for QuadraticForm {
    fn to_json(&self) -> Value {
        Value::Array(self.entries().iter().map(ToJson::to_json).collect())
    }
}

impl FromJson for QuadraticForm {
    fn from_json(v: &Value, field: &str) -> Result<Self> {
        let entries = array(v, field)?
            .iter()
            .enumerate()
            .map(|(i, e)| SquareClass::from_json(e, &format!("{field}[{i}]")))
            .collect::<Result<Vec<_>>>()?;
        QuadraticForm::new(entries).map_err(|e| Error::parse(field, e.to_string()))
    }
}

impl ToJson for FormInvariants {
    fn to_json(&self) -> Value {
        let mut hasse = Map::new();
        let mut ordered: Vec<&Place> = self.hasse.iter().filter(|p| **p != Place::Real).collect();
        if self.hasse.contains(&Place::Real) {
            ordered.push(&Place::Real);
        }
        for p in ordered {
            hasse.insert(p.to_string(), Value::from(-1));
        }
        let mut m = Map::new();
        m.insert("dim".into(), Value::from(self.dim));
        m.insert("det".into(), self.det.to_json());
        m.insert(
            "signature".into(),
            Value::Array(vec![self.signature.0.into(), self.signature.1.into()]),
        );
        m.insert("hasse".into(), Value::Object(hasse));
        Value::Object(m)
    }
}

/// A Gram matrix of rationals.
pub fn gram_from_json(v: &Value, field: &str) -> Result<Vec<Vec<Rational>>> {
    array(v, field)?
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let f = format!("{field}[{i}]");
            array(row, &f)?
                .iter()
                .enumerate()
                .map(|(j, x)| rational_of(x, &format!("{f}[{j}]")))
                .collect()
        })
        .collect()
}

pub fn gram_to_json(g: &[Vec<Rational>]) -> Value {
    Value::Array(
        g.iter()
            .map(|row| Value::Array(row.iter().map(ToJson::to_json).collect()))
            .collect(),
    )
}

pub fn slots_from_json(v: &Value, field: &str) -> Result<Vec<SquareClass>> {
    array(v, field)?
        .iter()
        .enumerate()
        .map(|(i, e)| SquareClass::from_json(e, &format!("{field}[{i}]")))
        .collect()
}

fn slots_to_json(slots: &[SquareClass]) -> Value {
    Value::Array(slots.iter().map(ToJson::to_json).collect())
}

impl ToJson for CompositionAlgebra {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("mu".into(), slots_to_json(self.slots()));
        Value::Object(m)
    }
}

impl FromJson for CompositionAlgebra {
    fn from_json(v: &Value, field: &str) -> Result<Self> {
        let obj = object(v, field)?;
        let f = format!("{field}.mu");
        let mu = obj.get("mu").ok_or_else(|| Error::parse(&f, "missing"))?;
        CompositionAlgebra::new(slots_from_json(mu, &f)?)
            .map_err(|e| Error::parse(&f, e.to_string()))
    }
}

impl ToJson for AlgebraElement {
    fn to_json(&self) -> Value {
        Value::Array(self.coords.iter().map(ToJson::to_json).collect())
    }
}

impl FromJson for AlgebraElement {
    fn from_json(v: &Value, field: &str) -> Result<Self> {
        Ok(AlgebraElement::new(
            array(v, field)?
                .iter()
                .enumerate()
                .map(|(i, x)| rational_of(x, &format!("{field}[{i}]")))
                .collect::<Result<_>>()?,
        ))
    }
}

impl ToJson for ReducedJordanAlgebra {
    fn to_json(&self) -> Value {
        let mut m = Map::new();
        m.insert("r".into(), Value::from(self.r()));
        m.insert("mu".into(), slots_to_json(self.slots()));
        m.insert("q".into(), self.q().to_json());
        Value::Object(m)
    }
}

impl FromJson for ReducedJordanAlgebra {
    fn from_json(v: &Value, field: &str) -> Result<Self> {
        let obj = object(v, field)?;
        let fm = format!("{field}.mu");
        let fq = format!("{field}.q");
        let fr = format!("{field}.r");
        let mu = match obj.get("mu") {
            Some(m) => slots_from_json(m, &fm)?,
            None => Vec::new(),
        };
        let q = QuadraticForm::from_json(
            obj.get("q").ok_or_else(|| Error::parse(&fq, "missing"))?,
            &fq,
        )?;
        let r = match obj.get("r") {
            Some(r) => r
                .as_u64()
                .ok_or_else(|| Error::parse(&fr, format!("expected a small integer, got {r}")))?
                as usize,
            None => mu.len(),
        };
        if r != mu.len() {
            return Err(Error::parse(
                &fr,
                format!("r = {r} but mu has {} entries", mu.len()),
            ));
        }
        ReducedJordanAlgebra::new(r, mu, q).map_err(|e| {
            let f = match e {
                Error::InvalidJordan(_) => &fq,
                _ => &fr,
            };
            Error::parse(f, e.to_string())
        })
    }
}

/// `[{"v":i,"degree":d,"class":{…}}, …]`
pub fn invariants_to_json(j: &ReducedJordanAlgebra) -> Value {
    Value::Array(
        j.v_invariants()
            .iter()
            .zip(j.v_degrees())
            .enumerate()
            .map(|(i, (c, d))| {
                let mut m = Map::new();
                m.insert("v".into(), Value::from(i));
                m.insert("degree".into(), Value::from(d));
                m.insert("class".into(), c.to_json());
                Value::Object(m)
            })
            .collect(),
    )
}

pub fn classes_to_json(cs: &[CohomClass]) -> Value {
    Value::Array(cs.iter().map(ToJson::to_json).collect())
}

pub fn classes_from_json(v: &Value, field: &str) -> Result<Vec<CohomClass>> {
    array(v, field)?
        .iter()
        .enumerate()
        .map(|(i, c)| CohomClass::from_json(c, &format!("{field}[{i}]")))
        .collect()
}
