//! Hilbert symbols checked against brute-force solubility searches that
//! share no code with the closed-form evaluation.

use cohinv::arith::{hilbert_symbol, relevant_places, Place, SquareClass};

fn sc(n: i64) -> SquareClass {
    SquareClass::from_int(n).unwrap()
}

/// +1 iff z^2 = a x^2 + b y^2 has a primitive solution modulo p^k.
fn congruence_oracle(a: i64, b: i64, p: i64, k: u32) -> i8 {
    let m = p.pow(k);
    let mut is_square = vec![false; m as usize];
    for z in 0..m {
        is_square[(z * z % m) as usize] = true;
    }
    let am = a.rem_euclid(m);
    let bm = b.rem_euclid(m);
    for x in 0..m {
        for y in 0..m {
            if x % p == 0 && y % p == 0 {
                continue;
            }
            let v = (am * (x * x % m) + bm * (y * y % m)) % m;
            if is_square[v as usize] {
                return 1;
            }
        }
    }
    -1
}

fn square_free(limit: i64) -> Vec<i64> {
    (1..=limit)
        .filter(|&n| (2..=n).all(|d| n % (d * d) != 0))
        .flat_map(|n| [n, -n])
        .collect()
}

#[test]
fn formula_matches_congruence_search_at_two() {
    for &a in &square_free(15) {
        for &b in &square_free(15) {
            let want = congruence_oracle(a, b, 2, 6);
            assert_eq!(
                hilbert_symbol(&sc(a), &sc(b), Place::Prime(2)),
                want,
                "({a},{b})_2"
            );
        }
    }
}

#[test]
fn formula_matches_congruence_search_at_odd_primes() {
    for &p in &[3i64, 5, 7] {
        for &a in &square_free(22) {
            for &b in &square_free(22) {
                if a.abs() > 10 && b.abs() > 10 {
                    continue;
                }
                let want = congruence_oracle(a, b, p, 3);
                assert_eq!(
                    hilbert_symbol(&sc(a), &sc(b), Place::Prime(p as u64)),
                    want,
                    "({a},{b})_{p}"
                );
            }
        }
    }
}

#[test]
fn spot_checks_at_larger_primes() {
    for &(a, b, p) in &[
        (11i64, 2i64, 11i64),
        (11, 3, 11),
        (-1, 13, 13),
        (13, 13, 13),
        (26, 3, 13),
    ] {
        assert_eq!(
            hilbert_symbol(&sc(a), &sc(b), Place::Prime(p as u64)),
            congruence_oracle(a, b, p, 2),
            "({a},{b})_{p}"
        );
    }
}

/// Bounded search for a nontrivial integer solution; the bounds exceed
/// Holzer's bound for |a|, |b| <= 30.
fn has_rational_solution(a: i64, b: i64) -> bool {
    let n = 31;
    for x in 0..=n {
        for y in 0..=n {
            if x == 0 && y == 0 {
                continue;
            }
            let v = a * x * x + b * y * y;
            if v >= 0 {
                let r = (v as f64).sqrt().round() as i64;
                if (r - 1..=r + 1).any(|z| z >= 0 && z * z == v) {
                    return true;
                }
            }
        }
    }
    false
}

#[test]
fn symbol_norm_duality() {
    for &a in &square_free(30) {
        for &b in &square_free(30) {
            let (ca, cb) = (sc(a), sc(b));
            let all_plus = relevant_places([&ca, &cb])
                .into_iter()
                .all(|v| hilbert_symbol(&ca, &cb, v) == 1);
            assert_eq!(all_plus, has_rational_solution(a, b), "a={a} b={b}");
        }
    }
}
