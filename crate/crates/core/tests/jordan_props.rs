use cohinv::arith::{rat, Place, SquareClass};
use cohinv::cohomology::CohomClass;
use cohinv::forms::{diagonalize, QuadraticForm};
use cohinv::jordan::{make_jordan, JordanElement, ReducedJordanAlgebra};
use std::collections::BTreeSet;

fn sc(n: i64) -> SquareClass {
    SquareClass::from_int(n).unwrap()
}

fn q(e: &[i64]) -> QuadraticForm {
    QuadraticForm::from_ints(e).unwrap()
}

fn j(mu: &[i64], e: &[i64]) -> ReducedJordanAlgebra {
    make_jordan(mu.len(), mu.iter().map(|&m| sc(m)).collect(), q(e)).unwrap()
}

fn two_inf() -> CohomClass {
    CohomClass::degree2(BTreeSet::from([Place::Prime(2), Place::Real])).unwrap()
}

#[test]
fn invariant_examples() {
    assert_eq!(
        j(&[], &[-1, -1, 1]).v_invariants(),
        vec![CohomClass::one(), two_inf()]
    );
    assert_eq!(
        j(&[-1, -1], &[1, 1, 1]).v_invariants(),
        vec![two_inf(), CohomClass::zero()]
    );
    assert_eq!(
        j(&[-1, -1], &[-1, -1, 1]).v_invariants()[1],
        CohomClass::top_bit(4)
    );
    // v_i ignores the scaling of q
    assert_eq!(
        j(&[-1], &[3, 5, 7]).v_invariants(),
        j(&[-1], &[-3, -5, -7]).v_invariants()
    );
}

#[test]
fn isomorphism_examples() {
    assert!(j(&[], &[2, 3, 5])
        .is_isomorphic(&j(&[], &[14, 21, 35]))
        .unwrap());
    assert!(j(&[-1, -1], &[1, 1, 1])
        .is_isomorphic(&j(&[-1, -1], &[2, 2, 2]))
        .unwrap());
    assert!(!j(&[-1, -1], &[1, 1, 1])
        .is_isomorphic(&j(&[-1, -1], &[-1, -1, 1]))
        .unwrap());
    assert!(j(&[-1], &[1, 1, 1])
        .is_isomorphic(&j(&[-1, -1, -1], &[1, 1, 1]))
        .is_err());
    assert!(j(&[], &[1, 1, 1])
        .is_isomorphic(&j(&[], &[1, 1, 1, 1, 1]))
        .is_err());
    // the Albert case is decided by trace forms
    let a = j(&[-1, -1, -1], &[1, 1, 5]);
    assert!(a.is_isomorphic(&a).unwrap());
    assert!(!a.is_isomorphic(&j(&[-1, -1, -1], &[-1, -1, 1])).unwrap());
}

#[test]
fn construction_rules() {
    assert!(make_jordan(0, vec![], q(&[1, 1])).is_err());
    assert!(make_jordan(0, vec![], q(&[1])).is_err());
    assert!(make_jordan(3, vec![sc(-1); 3], q(&[1, 1, 1, 1, 1])).is_err());
    assert!(make_jordan(1, vec![], q(&[1, 1, 1])).is_err());
    let albert = j(&[-1, -1, -1], &[1, 1, 5]);
    assert_eq!(albert.dim(), 27);
    assert_eq!(albert.trace_form_formula().dim(), 27);
}

#[test]
fn trace_formula_examples() {
    assert_eq!(
        j(&[], &[1, 1, 1]).trace_form_formula(),
        q(&[1, 1, 1, 2, 2, 2])
    );
    let t = j(&[-1], &[1, 1, 1]).trace_form_formula();
    assert_eq!(t, q(&[1, 1, 1, 2, 2, 2, 2, 2, 2]));
}

/// Trd(x∘y) through the full Jordan product, one entry at a time.
fn sequential_gram(
    alg: &ReducedJordanAlgebra,
    basis: &[JordanElement],
) -> Vec<Vec<cohinv::arith::Rational>> {
    basis
        .iter()
        .map(|x| {
            basis
                .iter()
                .map(|y| alg.trace(&alg.jordan_product(x, y).unwrap()))
                .collect()
        })
        .collect()
}

#[test]
fn parallel_gram_equals_sequential_product_gram() {
    for alg in [
        j(&[], &[2, -3, 5]),
        j(&[-1, 3], &[1, 2, -7]),
        j(&[-1, -1, -1], &[1, 1, 1]),
        j(&[2, -5], &[1, -1, 3, 2, 6]),
    ] {
        let basis = alg.hermitian_basis();
        assert_eq!(basis.len(), alg.dim());
        assert_eq!(
            alg.trace_gram_oracle(),
            sequential_gram(&alg, &basis),
            "{alg:?}"
        );
    }
}

#[test]
fn albert_oracle_matches_formula() {
    for e in [[1, 1, 1], [1, 1, 5], [-1, 2, -3]] {
        let alg = j(&[-1, -1, -1], &e);
        let direct = diagonalize(&alg.trace_gram_oracle()).unwrap();
        assert!(direct.isometric(&alg.trace_form_formula()), "{e:?}");
    }
}

#[test]
fn other_hermitian_bases_give_isometric_trace_forms() {
    // replace each basis element by a rational combination with its
    // neighbours; the family stays a basis and the Gram class is unchanged
    let alg = j(&[3, -2], &[1, -5, 2]);
    let basis = alg.hermitian_basis();
    let m = basis.len();
    let family: Vec<JordanElement> = (0..m)
        .map(|i| {
            let next = &basis[(i + 1) % m];
            let coeff = if i + 1 == m {
                rat(0, 1)
            } else {
                rat(i as i64 % 3 - 1, 2)
            };
            basis[i]
                .scale(&rat(i as i64 % 2 + 1, 1))
                .add(&next.scale(&coeff))
        })
        .collect();
    for x in &family {
        assert!(alg.is_hermitian(x));
    }
    let g = diagonalize(&alg.gram_on(&family)).unwrap();
    assert!(g.isometric(&alg.trace_form_formula()));
}

#[test]
fn split_algebras_have_trivial_invariants() {
    for (r, n) in [(1, 3), (2, 3), (3, 3), (1, 5), (2, 5)] {
        let s = ReducedJordanAlgebra::split(r, n).unwrap();
        assert!(
            s.v_invariants().iter().all(CohomClass::is_zero),
            "r={r} n={n}"
        );
    }
    let s = ReducedJordanAlgebra::split(0, 5).unwrap();
    assert_eq!(
        s.v_invariants(),
        vec![CohomClass::one(), CohomClass::zero(), CohomClass::zero()]
    );
}

#[test]
fn jordan_product_basics() {
    let alg = j(&[-1, -1, -1], &[1, 2, 5]);
    let basis = alg.hermitian_basis();
    let (e11, e22) = (&basis[0], &basis[1]);
    assert!(alg.jordan_product(e11, e22).unwrap().is_zero());
    assert_eq!(alg.jordan_product(e11, e11).unwrap(), *e11);
    for x in &basis {
        assert_eq!(alg.jordan_product(x, &alg.identity()).unwrap(), *x);
    }
    let x = basis[5].add(&basis[11]);
    let y = basis[2].add(&basis[20].scale(&rat(3, 2)));
    assert!(alg.is_hermitian(&alg.jordan_product(&x, &y).unwrap()));
}
