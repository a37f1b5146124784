use num_traits::{One, Zero};
use rand::seq::SliceRandom;
use rand::Rng;
use serde_json::{json, Value};

use super::collision::collision_search;
use super::gen::{self, SuiteRng};
use super::{ensure, Check, Runner, SuiteDef};
use crate::arith::{hilbert_symbol, relevant_places, Rational, SquareClass};
use crate::cohomology::{symbol, CohomClass, CohomComponent};
use crate::composition::{AlgebraElement, CompositionAlgebra, Pfister};
use crate::forms::{congruence, diagonalize, gram_of, QuadraticForm};
use crate::jordan::{JordanElement, ReducedJordanAlgebra};
use crate::serial::{gram_to_json, FromJson, ToJson};

pub(crate) const SUITES: &[SuiteDef] = &[
    SuiteDef {
        name: "hilbert-product-formula",
        about: "product of (a,b)_v over all places is 1",
        defaults: &[("cases", 1000), ("height", 10_000)],
        run: hilbert_product_formula,
    },
    SuiteDef {
        name: "hilbert-bimultiplicativity",
        about: "(aa',b)_v = (a,b)_v (a',b)_v",
        defaults: &[("cases", 300), ("height", 1000)],
        run: hilbert_bimultiplicativity,
    },
    SuiteDef {
        name: "steinberg",
        about: "(a) ∪ (1-a) = 0",
        defaults: &[("cases", 200), ("height", 1000)],
        run: steinberg,
    },
    SuiteDef {
        name: "square-relation",
        about: "(a) ∪ (a) = (a) ∪ (-1)",
        defaults: &[("cases", 200), ("height", 1000)],
        run: square_relation,
    },
    SuiteDef {
        name: "cup-ring-laws",
        about: "commutativity, associativity, even degree-2 supports, degree ≥ 3 parity",
        defaults: &[("cases", 200), ("max_degree", 6)],
        run: cup_ring_laws,
    },
    SuiteDef {
        name: "sw-diagonalization",
        about: "total Stiefel-Whitney class is independent of the diagonalization",
        defaults: &[("cases", 100), ("max_dim", 6), ("entry", 30)],
        run: sw_diagonalization,
    },
    SuiteDef {
        name: "witt-cancellation",
        about: "q ⊥ <a> ≅ q' ⊥ <a> iff q ≅ q'",
        defaults: &[("cases", 100), ("max_dim", 5), ("entry", 10)],
        run: witt_cancellation,
    },
    SuiteDef {
        name: "chain-equivalence",
        about: "e_r ∪ w_j is constant along chains of simple φ-steps, r = 1, 2, 3",
        defaults: &[("cases", 100), ("max_steps", 5), ("entry", 10)],
        run: chain_equivalence,
    },
    SuiteDef {
        name: "normalization",
        about: "φ⊗q ≅ φ⊗λq' implies φ⊗d(q)q ≅ φ⊗d(q')q'",
        defaults: &[("cases", 100), ("entry", 10)],
        run: normalization,
    },
    SuiteDef {
        name: "composition-law",
        about: "N(xy) = N(x)N(y) for r = 0..3",
        defaults: &[("cases", 500), ("slot", 30)],
        run: composition_law,
    },
    SuiteDef {
        name: "composition-identities",
        about: "associativity (r ≤ 2), alternativity, conjugation, minimal polynomial",
        defaults: &[("cases", 100), ("slot", 30)],
        run: composition_identities,
    },
    SuiteDef {
        name: "pfister-dichotomy",
        about: "e_r = 0 iff the Pfister form is hyperbolic iff isotropic",
        defaults: &[("cases", 100), ("slot", 30)],
        run: pfister_dichotomy,
    },
    SuiteDef {
        name: "trace-oracle",
        about: "element-level trace Gram matrix matches n<1> ⊥ <2>φ⊗∧²q",
        defaults: &[("cases", 20), ("entry", 10), ("max_n", 5)],
        run: trace_oracle,
    },
    SuiteDef {
        name: "hermitian-closure",
        about: "Jordan products of hermitian elements are hermitian",
        defaults: &[("cases", 10), ("entry", 10)],
        run: hermitian_closure,
    },
    SuiteDef {
        name: "presentation-invariance",
        about: "v_i unchanged by scaling q, re-diagonalizing q, re-presenting φ",
        defaults: &[("cases", 100), ("entry", 10)],
        run: presentation_invariance,
    },
    SuiteDef {
        name: "split-detection",
        about: "split and det-1 trivial-w presentations have vanishing positive-degree v_i",
        defaults: &[("cases", 100), ("entry", 10)],
        run: split_detection,
    },
    SuiteDef {
        name: "distinguishing",
        about: "explicit J with v_m ≠ 0 and J' with v_m = 0 for each (r, n)",
        defaults: &[],
        run: distinguishing,
    },
    SuiteDef {
        name: "serial-round-trip",
        about: "every serialized value parses back to itself",
        defaults: &[("cases", 200)],
        run: serial_round_trip,
    },
    SuiteDef {
        name: "completeness-n3",
        about: "collision search at n = 3, r ∈ {0, 2} is empty",
        defaults: &[("bound", 7)],
        run: completeness_n3,
    },
];

/// (r, n) pairs with a reduced algebra at desk scale.
pub(crate) fn degree_configs(max_n: usize) -> Vec<(usize, usize)> {
    let mut out = Vec::new();
    for n in (3..=max_n).step_by(2) {
        let rmax = if n == 3 { 3 } else { 2 };
        for r in 0..=rmax {
            out.push((r, n));
        }
    }
    out
}

fn cj(c: &[SquareClass]) -> Value {
    Value::Array(c.iter().map(ToJson::to_json).collect())
}

fn err(e: crate::Error) -> String {
    e.to_string()
}

fn product_over_places(a: &SquareClass, b: &SquareClass) -> i8 {
    relevant_places([a, b])
        .into_iter()
        .map(|v| hilbert_symbol(a, b, v))
        .product()
}

fn hilbert_product_formula(run: &mut Runner) {
    let h = run.param("height") as i64;
    for _ in 0..run.count("cases") {
        let x = gen::rational(&mut run.rng, h);
        let y = gen::rational(&mut run.rng, h);
        let input = json!([x.to_json(), y.to_json()]);
        let outcome = (|| {
            let a = SquareClass::from_rational(&x).map_err(err)?;
            let b = SquareClass::from_rational(&y).map_err(err)?;
            let p = product_over_places(&a, &b);
            ensure(p == 1, || format!("product of local symbols is {p}"))
        })();
        run.record(input, outcome);
    }
}

fn hilbert_bimultiplicativity(run: &mut Runner) {
    let h = run.param("height") as i64;
    for _ in 0..run.count("cases") {
        let a = gen::class(&mut run.rng, h);
        let a2 = gen::class(&mut run.rng, h);
        let b = gen::class(&mut run.rng, h);
        let places = relevant_places([&a, &a2, &b]);
        let v = places[run.rng.random_range(0..places.len())];
        let input =
            json!({"a": a.to_json(), "a2": a2.to_json(), "b": b.to_json(), "place": v.to_json()});
        let lhs = hilbert_symbol(&(&a * &a2), &b, v);
        let rhs = hilbert_symbol(&a, &b, v) * hilbert_symbol(&a2, &b, v);
        run.record(input, ensure(lhs == rhs, || format!("{lhs} vs {rhs}")));
    }
}

fn steinberg(run: &mut Runner) {
    let h = run.param("height") as i64;
    let mut done = 0;
    while done < run.count("cases") {
        let a = gen::rational(&mut run.rng, h);
        let b = Rational::one() - &a;
        if b.is_zero() {
            continue;
        }
        done += 1;
        let outcome = (|| {
            let s = symbol(&[
                SquareClass::from_rational(&a).map_err(err)?,
                SquareClass::from_rational(&b).map_err(err)?,
            ]);
            ensure(s.is_zero(), || format!("symbol is {}", s.to_json()))
        })();
        run.record(a.to_json(), outcome);
    }
}

fn square_relation(run: &mut Runner) {
    let h = run.param("height") as i64;
    for _ in 0..run.count("cases") {
        let x = gen::rational(&mut run.rng, h);
        let outcome = (|| {
            let a = SquareClass::from_rational(&x).map_err(err)?;
            let lhs = symbol(&[a.clone(), a.clone()]);
            let rhs = symbol(&[a, SquareClass::minus_one()]);
            ensure(lhs == rhs, || {
                format!("{} vs {}", lhs.to_json(), rhs.to_json())
            })
        })();
        run.record(x.to_json(), outcome);
    }
}

fn random_symbol_list(rng: &mut SuiteRng, len: usize) -> Vec<SquareClass> {
    // bias toward negative entries so higher degrees are not always zero
    (0..len)
        .map(|_| {
            let c = gen::class(rng, 50);
            if rng.random_bool(0.5) && !c.is_negative() {
                &c * &SquareClass::minus_one()
            } else {
                c
            }
        })
        .collect()
}

fn cup_ring_laws(run: &mut Runner) {
    let max = run.count("max_degree");
    for _ in 0..run.count("cases") {
        let total = run.rng.random_range(0..=max);
        let d1 = run.rng.random_range(0..=total);
        let d2 = run.rng.random_range(0..=total - d1);
        let d3 = total - d1 - d2;
        let a = random_symbol_list(&mut run.rng, d1);
        let b = random_symbol_list(&mut run.rng, d2);
        let c = random_symbol_list(&mut run.rng, d3);
        let (x, y, z) = (symbol(&a), symbol(&b), symbol(&c));
        let input = json!([cj(&a), cj(&b), cj(&c)]);
        let ab: Vec<_> = a.iter().chain(&b).cloned().collect();
        let outcome = (|| {
            ensure(x.cup(&y) == y.cup(&x), || "cup is not commutative".into())?;
            ensure(x.cup(&y).cup(&z) == x.cup(&y.cup(&z)), || {
                "cup is not associative".into()
            })?;
            ensure(x.cup(&y) == symbol(&ab), || {
                "cup of symbols is not the concatenated symbol".into()
            })?;
            for s in [&x, &y, &z] {
                if let CohomComponent::Degree2(p) = s.component(2) {
                    ensure(p.len() % 2 == 0, || "odd degree-2 support".into())?;
                }
            }
            Ok(())
        })();
        run.record(input, outcome);
    }
    // degree ≥ 3: a sum of symbols is the parity of its all-negative terms
    for _ in 0..run.count("cases") {
        let degree = run.rng.random_range(3..=max.max(3));
        let terms: Vec<Vec<SquareClass>> = (0..run.rng.random_range(1..6))
            .map(|_| random_symbol_list(&mut run.rng, degree))
            .collect();
        let expected = terms
            .iter()
            .filter(|t| t.iter().all(SquareClass::is_negative))
            .count()
            % 2
            == 1;
        let mut order: Vec<usize> = (0..terms.len()).collect();
        order.shuffle(&mut run.rng);
        let sum = |idx: &[usize]| {
            idx.iter()
                .fold(CohomClass::zero(), |acc, &i| acc.add(&symbol(&terms[i])))
        };
        let forward: Vec<usize> = (0..terms.len()).collect();
        let (s1, s2) = (sum(&forward), sum(&order));
        let input = Value::Array(terms.iter().map(|t| cj(t)).collect());
        let outcome = (|| {
            ensure(s1 == s2, || "resummation changed the class".into())?;
            ensure(
                s1.component(degree) == CohomComponent::Bit(expected),
                || format!("degree-{degree} bit is not the all-negative parity"),
            )
        })();
        run.record(input, outcome);
    }
}

fn sw_diagonalization(run: &mut Runner) {
    let (max_dim, entry) = (run.count("max_dim"), run.param("entry") as i64);
    for _ in 0..run.count("cases") {
        let dim = run.rng.random_range(1..=max_dim);
        let q = gen::form(&mut run.rng, dim, entry);
        let t = gen::unimodular(&mut run.rng, dim);
        let g = congruence(&gram_of(&q), &t);
        let input = json!({"q": q.to_json(), "gram": gram_to_json(&g)});
        let outcome = (|| {
            let p = diagonalize(&g).map_err(err)?;
            ensure(p.total_sw() == q.total_sw(), || {
                format!("total SW differs for {}", p.to_json())
            })?;
            ensure(p.isometric(&q), || {
                "re-diagonalized form is not isometric".into()
            })
        })();
        run.record(input, outcome);
    }
}

fn witt_cancellation(run: &mut Runner) {
    let (max_dim, entry) = (run.count("max_dim"), run.param("entry") as i64);
    for _ in 0..run.count("cases") {
        let dim = run.rng.random_range(1..=max_dim);
        let q = gen::form(&mut run.rng, dim, entry);
        let q2 = if run.rng.random_bool(0.5) {
            let t = gen::unimodular(&mut run.rng, dim);
            diagonalize(&congruence(&gram_of(&q), &t)).expect("congruent to a nonsingular form")
        } else {
            gen::form(&mut run.rng, dim, entry)
        };
        let a = QuadraticForm::new(vec![gen::class(&mut run.rng, entry)]).expect("nonempty");
        let input = json!({"q": q.to_json(), "q2": q2.to_json(), "a": a.to_json()});
        let lhs = q.orthogonal_sum(&a).isometric(&q2.orthogonal_sum(&a));
        let rhs = q.isometric(&q2);
        run.record(
            input,
            ensure(lhs == rhs, || format!("cancellation: {lhs} vs {rhs}")),
        );
    }
}

/// φ-steps applied to `q`; returns the result and the (index, λ) trail.
fn random_chain(
    rng: &mut SuiteRng,
    q: &QuadraticForm,
    phi: &QuadraticForm,
    steps: usize,
) -> (QuadraticForm, Vec<(usize, SquareClass)>) {
    let mut cur = q.clone();
    let mut trail = Vec::new();
    while trail.len() < steps {
        let Some(lambda) = gen::represented_value(rng, phi) else {
            continue;
        };
        let i = rng.random_range(0..cur.dim());
        cur = cur
            .simple_phi_step(i, &lambda, phi)
            .expect("φ represents its own values");
        trail.push((i, lambda));
    }
    (cur, trail)
}

fn chain_equivalence(run: &mut Runner) {
    let (max_steps, entry) = (run.count("max_steps"), run.param("entry") as i64);
    for r in 1..=3 {
        for _ in 0..run.count("cases") {
            let slots = gen::classes(&mut run.rng, r, entry);
            let phi = Pfister::new(slots.clone()).expect("r ≤ 3");
            let dim = gen::odd_dim(&mut run.rng, 7);
            let q = gen::form(&mut run.rng, dim, entry);
            let steps = run.rng.random_range(1..=max_steps);
            let (q2, trail) = random_chain(&mut run.rng, &q, &phi.form(), steps);
            let input = json!({
                "slots": cj(&slots),
                "q": q.to_json(),
                "chain": trail.iter().map(|(i, l)| json!([i, l.to_json()])).collect::<Vec<_>>(),
            });
            let e = phi.e_invariant();
            let (w, w2) = (q.total_sw(), q2.total_sw());
            let outcome = (0..=dim).try_for_each(|j| {
                ensure(e.cup(&w[j]) == e.cup(&w2[j]), || {
                    format!("e_r ∪ w_{j} changed")
                })
            });
            run.record(input, outcome);
        }
    }
}

fn normalization(run: &mut Runner) {
    let entry = run.param("entry") as i64;
    for _ in 0..run.count("cases") {
        let r = run.rng.random_range(1..=3);
        let slots = gen::classes(&mut run.rng, r, entry);
        let phi = Pfister::new(slots.clone()).expect("r ≤ 3").form();
        let dim = gen::odd_dim(&mut run.rng, 5);
        let q = gen::form(&mut run.rng, dim, entry);
        let steps = run.rng.random_range(0..=3);
        let (mut chained, _) = random_chain(&mut run.rng, &q, &phi, steps);
        let mut entries = chained.entries().to_vec();
        entries.shuffle(&mut run.rng);
        chained = QuadraticForm::new(entries).expect("nonempty");
        let lambda = gen::class(&mut run.rng, entry);
        // λ·q' = chained, so φ⊗q ≅ φ⊗λq' by roundness of φ
        let q2 = chained.scale(&lambda);
        let input = json!({"slots": cj(&slots), "q": q.to_json(), "q2": q2.to_json(), "lambda": lambda.to_json()});
        let outcome = (|| {
            ensure(
                phi.tensor(&q).isometric(&phi.tensor(&q2.scale(&lambda))),
                || "hypothesis φ⊗q ≅ φ⊗λq' fails".into(),
            )?;
            let a = phi.tensor(&q.normalize_det1().map_err(err)?);
            let b = phi.tensor(&q2.normalize_det1().map_err(err)?);
            ensure(a.isometric(&b), || {
                format!(
                    "normalized tensors differ in {:?}",
                    a.invariants().first_difference(&b.invariants())
                )
            })
        })();
        run.record(input, outcome);
    }
}

fn composition_law(run: &mut Runner) {
    let slot = run.param("slot") as i64;
    for r in 0..=3 {
        for _ in 0..run.count("cases") {
            let slots = gen::classes(&mut run.rng, r, slot);
            let c = CompositionAlgebra::new(slots.clone()).expect("r ≤ 3");
            let x = gen::element(&mut run.rng, c.dim());
            let y = gen::element(&mut run.rng, c.dim());
            let input = json!({"mu": cj(&slots), "x": x.to_json(), "y": y.to_json()});
            let outcome = (|| {
                let xy = c.multiply(&x, &y).map_err(err)?;
                let lhs = c.norm(&xy).map_err(err)?;
                let rhs = c.norm(&x).map_err(err)? * c.norm(&y).map_err(err)?;
                ensure(lhs == rhs, || format!("N(xy) = {lhs}, N(x)N(y) = {rhs}"))
            })();
            run.record(input, outcome);
        }
    }
}

fn composition_identities(run: &mut Runner) {
    let slot = run.param("slot") as i64;
    for r in 0..=3 {
        for _ in 0..run.count("cases") {
            let slots = gen::classes(&mut run.rng, r, slot);
            let c = CompositionAlgebra::new(slots.clone()).expect("r ≤ 3");
            let x = gen::element(&mut run.rng, c.dim());
            let y = gen::element(&mut run.rng, c.dim());
            let z = gen::element(&mut run.rng, c.dim());
            let input =
                json!({"mu": cj(&slots), "x": x.to_json(), "y": y.to_json(), "z": z.to_json()});
            let outcome = (|| {
                let m = |a: &AlgebraElement, b: &AlgebraElement| c.multiply(a, b).map_err(err);
                let xx = m(&x, &x)?;
                ensure(m(&xx, &y)? == m(&x, &m(&x, &y)?)?, || {
                    "left alternativity".into()
                })?;
                ensure(m(&m(&y, &x)?, &x)? == m(&y, &xx)?, || {
                    "right alternativity".into()
                })?;
                if r <= 2 {
                    ensure(m(&m(&x, &y)?, &z)? == m(&x, &m(&y, &z)?)?, || {
                        "associativity".into()
                    })?;
                }
                if r <= 1 {
                    ensure(m(&x, &y)? == m(&y, &x)?, || "commutativity".into())?;
                }
                let conj = |a: &AlgebraElement| c.conj(a).map_err(err);
                ensure(conj(&m(&x, &y)?)? == m(&conj(&y)?, &conj(&x)?)?, || {
                    "conj(xy) ≠ conj(y)conj(x)".into()
                })?;
                ensure(conj(&conj(&x)?)? == x, || {
                    "conj is not an involution".into()
                })?;
                let t = x.add(&conj(&x)?);
                let n = c.norm(&x).map_err(err)?;
                let e = xx.sub(&m(&t, &x)?).add(&AlgebraElement::scalar(c.dim(), n));
                ensure(e.is_zero(), || "x² − t(x)x + N(x) ≠ 0".into())
            })();
            run.record(input, outcome);
        }
    }
}

fn pfister_dichotomy(run: &mut Runner) {
    let slot = run.param("slot") as i64;
    for _ in 0..run.count("cases") {
        let r = run.rng.random_range(1..=3);
        let mut slots = gen::classes(&mut run.rng, r, slot);
        // plant split cases: (a, 1−a) or a slot of 1
        if run.rng.random_bool(0.3) {
            slots[0] = SquareClass::one();
            slots.shuffle(&mut run.rng);
        }
        let p = Pfister::new(slots.clone()).expect("r ≤ 3");
        let zero = p.e_invariant().is_zero();
        let hyp = p.is_hyperbolic();
        let iso = p.form().isotropic();
        run.record(
            cj(&slots),
            ensure(zero == hyp && hyp == iso, || {
                format!("e_r zero: {zero}, hyperbolic: {hyp}, isotropic: {iso}")
            }),
        );
    }
}

fn random_jordan(rng: &mut SuiteRng, r: usize, n: usize, entry: i64) -> ReducedJordanAlgebra {
    let slots = gen::classes(rng, r, entry);
    let q = gen::form(rng, n, entry);
    ReducedJordanAlgebra::new(r, slots, q).expect("valid (r, n)")
}

fn trace_oracle(run: &mut Runner) {
    let entry = run.param("entry") as i64;
    for (r, n) in degree_configs(run.count("max_n")) {
        for _ in 0..run.count("cases") {
            let j = random_jordan(&mut run.rng, r, n, entry);
            // few shears: dense mixing of a 27-dimensional Gram matrix gives
            // pivots beyond trial division
            let t = gen::unimodular_with(&mut run.rng, j.dim(), j.dim() / 3, 1);
            let outcome = (|| {
                let gram = j.trace_gram_oracle();
                let formula = j.trace_form_formula();
                ensure(formula.dim() == j.dim(), || {
                    "formula has the wrong dimension".into()
                })?;
                let direct = diagonalize(&gram).map_err(err)?;
                ensure(direct.isometric(&formula), || {
                    format!(
                        "oracle differs in {:?}",
                        direct.invariants().first_difference(&formula.invariants())
                    )
                })?;
                // another basis of J gives a congruent Gram matrix
                let moved = diagonalize(&congruence(&gram, &t)).map_err(err)?;
                ensure(moved.isometric(&formula), || {
                    "basis change altered the trace form".into()
                })
            })();
            run.record(j.to_json(), outcome);
        }
    }
}

fn random_hermitian(rng: &mut SuiteRng, j: &ReducedJordanAlgebra) -> JordanElement {
    let basis = j.hermitian_basis();
    basis
        .iter()
        .fold(JordanElement::zero(j.n(), j.algebra().dim()), |acc, b| {
            acc.add(&b.scale(&gen::coordinate(rng, 5, 3)))
        })
}

fn hermitian_closure(run: &mut Runner) {
    let entry = run.param("entry") as i64;
    for (r, n) in degree_configs(5) {
        for _ in 0..run.count("cases") {
            let j = random_jordan(&mut run.rng, r, n, entry);
            let x = random_hermitian(&mut run.rng, &j);
            let y = random_hermitian(&mut run.rng, &j);
            let outcome = (|| {
                let xy = j.jordan_product(&x, &y).map_err(err)?;
                ensure(j.is_hermitian(&xy), || "x∘y is not hermitian".into())?;
                ensure(
                    j.jordan_product(&x, &j.identity()).map_err(err)? == x,
                    || "x∘1 ≠ x".into(),
                )?;
                ensure(j.jordan_product(&y, &x).map_err(err)? == xy, || {
                    "∘ is not commutative".into()
                })?;
                if r <= 2 {
                    let sq = j.matrix_product(&x, &x).map_err(err)?;
                    ensure(j.jordan_product(&x, &x).map_err(err)? == sq, || {
                        "x∘x ≠ x²".into()
                    })?;
                }
                Ok(())
            })();
            run.record(j.to_json(), outcome);
        }
    }
}

/// Slots with an isometric Pfister expansion, by swaps, (a, b) → (a, −ab)
/// and (a, b) → (a, b·N) with N a value of ⟨1, −a⟩.
fn represent_slots(rng: &mut SuiteRng, slots: &[SquareClass]) -> Vec<SquareClass> {
    let mut s = slots.to_vec();
    if s.len() < 2 {
        return s;
    }
    for _ in 0..4 {
        let i = rng.random_range(0..s.len());
        let mut k = rng.random_range(0..s.len() - 1);
        if k >= i {
            k += 1;
        }
        match rng.random_range(0..3) {
            0 => s.swap(i, k),
            1 => s[k] = &(&s[k] * &s[i]) * &SquareClass::minus_one(),
            _ => {
                let binary = Pfister::new(vec![s[i].clone()]).expect("rank 1").form();
                if let Some(nv) = gen::represented_value(rng, &binary) {
                    s[k] = &s[k] * &nv;
                }
            }
        }
    }
    s
}

fn presentation_invariance(run: &mut Runner) {
    let entry = run.param("entry") as i64;
    let cases = run.count("cases");
    for generator in ["scale", "rediagonalize", "slots"] {
        for _ in 0..cases {
            let r = run.rng.random_range(0..=3);
            let n = if r == 3 {
                3
            } else {
                gen::odd_dim(&mut run.rng, 5)
            };
            let j = random_jordan(&mut run.rng, r, n, entry);
            let (slots2, q2) = match generator {
                "scale" => {
                    let l = gen::class(&mut run.rng, entry);
                    (j.slots().to_vec(), j.q().scale(&l))
                }
                "rediagonalize" => {
                    let t = gen::unimodular(&mut run.rng, n);
                    let g = congruence(&gram_of(j.q()), &t);
                    (j.slots().to_vec(), diagonalize(&g).expect("nonsingular"))
                }
                _ => (represent_slots(&mut run.rng, j.slots()), j.q().clone()),
            };
            let j2 = ReducedJordanAlgebra::new(r, slots2, q2).expect("same (r, n)");
            let input = json!({"generator": generator, "J": j.to_json(), "J2": j2.to_json()});
            let outcome = (|| {
                ensure(j.is_isomorphic(&j2).map_err(err)?, || {
                    "presentations are not isomorphic".into()
                })?;
                ensure(j.v_invariants() == j2.v_invariants(), || {
                    "v-invariants changed".into()
                })
            })();
            run.record(input, outcome);
        }
    }
}

fn split_detection(run: &mut Runner) {
    let entry = run.param("entry") as i64;
    for (r, n) in degree_configs(5) {
        let split = ReducedJordanAlgebra::split(r, n).expect("valid (r, n)");
        let v = split.v_invariants();
        let ok = v.iter().enumerate().all(|(i, c)| {
            if r == 0 && i == 0 {
                *c == CohomClass::one()
            } else {
                c.is_zero()
            }
        });
        run.record(
            split.to_json(),
            ensure(ok, || "split algebra has a nonzero invariant".into()),
        );
    }
    for _ in 0..run.count("cases") {
        // ⟨1⟩ ⊥ ⟨a,a⟩ ⊥ … with each a a sum of two squares: det 1, w = 1
        let r = run.rng.random_range(0..=2);
        let m = run.rng.random_range(1..=2);
        let mut entries = vec![SquareClass::one()];
        for _ in 0..m {
            let (x, y) = (
                run.rng.random_range(1..=entry),
                run.rng.random_range(0..=entry),
            );
            let a = SquareClass::from_int(x * x + y * y).expect("nonzero");
            entries.push(a.clone());
            entries.push(a);
        }
        let q = QuadraticForm::new(entries).expect("nonempty");
        let split = ReducedJordanAlgebra::new(r, vec![SquareClass::one(); r], q.clone())
            .expect("odd degree");
        let slots = gen::classes(&mut run.rng, r, entry);
        let j = ReducedJordanAlgebra::new(r, slots, q.clone()).expect("odd degree");
        let input = json!({"split": split.to_json(), "J": j.to_json()});
        let outcome = (|| {
            let w = q.normalize_det1().map_err(err)?.total_sw();
            ensure(w[1..].iter().all(CohomClass::is_zero), || {
                "construction has nontrivial w".into()
            })?;
            let v = split.v_invariants();
            let expect_v0 = if r == 0 {
                CohomClass::one()
            } else {
                CohomClass::zero()
            };
            ensure(v[0] == expect_v0, || {
                format!("split v_0 = {}", v[0].to_json())
            })?;
            ensure(v[1..].iter().all(CohomClass::is_zero), || {
                "split v_i ≠ 0".into()
            })?;
            ensure(
                j.v_invariants()[1..].iter().all(CohomClass::is_zero),
                || "v_i ≠ 0 for trivial w".into(),
            )
        })();
        run.record(input, outcome);
    }
}

fn distinguishing(run: &mut Runner) {
    for (r, n) in degree_configs(5) {
        let mut entries = vec![SquareClass::minus_one(); n - 1];
        entries.push(SquareClass::one());
        let q = QuadraticForm::new(entries).expect("nonempty");
        let j = ReducedJordanAlgebra::new(r, vec![SquareClass::minus_one(); r], q).expect("valid");
        let j0 = ReducedJordanAlgebra::split(r, n).expect("valid");
        let m = j.m();
        let degree = r + n - 1;
        let input = json!({"J": j.to_json(), "J0": j0.to_json()});
        let outcome = (|| {
            // recompute from scratch: v_m is the symbol of r + n − 1 copies of (−1)
            let expected = symbol(&vec![SquareClass::minus_one(); degree]);
            let v = j.v_invariants();
            ensure(v.len() == m + 1, || "wrong number of invariants".into())?;
            ensure(!v[m].is_zero(), || "v_m vanishes".into())?;
            ensure(v[m] == expected, || format!("v_m = {}", v[m].to_json()))?;
            ensure(v[m].is_homogeneous_of_degree(degree), || {
                "v_m has the wrong degree".into()
            })?;
            ensure(j0.v_invariants()[m].is_zero(), || {
                "split v_m is nonzero".into()
            })?;
            ensure(!j.is_isomorphic(&j0).map_err(err)?, || {
                "distinguished pair is isomorphic".into()
            })
        })();
        run.record(input, outcome);
    }
}

fn random_class_value(rng: &mut SuiteRng) -> CohomClass {
    let mut x = if rng.random_bool(0.5) {
        CohomClass::one()
    } else {
        CohomClass::zero()
    };
    x = x.add(&CohomClass::degree1(gen::class(rng, 1000)));
    let a = gen::class(rng, 1000);
    let b = gen::class(rng, 1000);
    x = x.add(&symbol(&[a, b]));
    for d in 3..8 {
        if rng.random_bool(0.3) {
            x = x.add(&CohomClass::top_bit(d));
        }
    }
    x
}

fn round_trip<T: ToJson + FromJson + PartialEq>(x: &T) -> Check {
    let text = x.to_json().to_string();
    let back: T = crate::serial::parse_json(&text, "value").map_err(err)?;
    ensure(back == *x, || format!("{text} did not round-trip"))
}

fn serial_round_trip(run: &mut Runner) {
    for _ in 0..run.count("cases") {
        let c = random_class_value(&mut run.rng);
        let dim = run.rng.random_range(1..=6);
        let q = gen::form(&mut run.rng, dim, 1000);
        let r = run.rng.random_range(0..=3);
        let n = if r == 3 {
            3
        } else {
            gen::odd_dim(&mut run.rng, 7)
        };
        let j = random_jordan(&mut run.rng, r, n, 1000);
        let x = gen::element(&mut run.rng, j.algebra().dim());
        let input =
            json!({"class": c.to_json(), "form": q.to_json(), "J": j.to_json(), "x": x.to_json()});
        let outcome = (|| {
            round_trip(&c)?;
            round_trip(&q)?;
            round_trip(&j)?;
            round_trip(&x)?;
            round_trip(j.algebra())?;
            for p in j.q().relevant_places() {
                round_trip(&p)?;
            }
            for s in q.entries() {
                round_trip(s)?;
            }
            Ok(())
        })();
        run.record(input, outcome);
    }
}

fn completeness_n3(run: &mut Runner) {
    let bound = run.param("bound");
    for r in [0, 2] {
        let input = json!({"r": r, "n": 3, "bound": bound});
        let outcome = match collision_search(r, 3, bound) {
            Ok(certs) => ensure(certs.is_empty(), || {
                format!("{} collisions, first {}", certs.len(), certs[0].to_json())
            }),
            Err(e) => Err(err(e)),
        };
        run.record(input, outcome);
    }
}
