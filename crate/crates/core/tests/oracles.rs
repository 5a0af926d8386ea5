//! Independent oracles for the derived values, kept apart from the
//! implementation paths they check.

use proptest::prelude::*;
use qlag_core::laguerre::{
    apply_functional, laguerre_recurrence, linearize_functional, moment_motzkin,
    moment_permutation, MomentTable,
};
use qlag_core::marked::{derangement_gf, enumerate_derangements, signed_sum, Composition};
use qlag_core::matching::Permutation;
use qlag_core::{Limits, Monomial, Poly3};

fn p(s: &str) -> Poly3 {
    s.parse().unwrap()
}

fn q_int(n: u32) -> Poly3 {
    Poly3::from_terms((0..n).map(|i| (Monomial::new(0, 0, i), 1))).unwrap()
}

/// Sum over every explicit Motzkin path of length `n` (step sequences over
/// up/level/down staying at height >= 0 and ending at 0).
fn motzkin_paths_oracle(n: usize) -> Poly3 {
    fn walk(remaining: usize, height: u32, acc: Poly3, out: &mut Poly3) {
        if remaining == 0 {
            if height == 0 {
                out.add_assign(&acc).unwrap();
            }
            return;
        }
        if height as usize > remaining {
            return;
        }
        // level step: y[h+1] + [h]
        let level = Poly3::y().mul(&q_int(height + 1)).unwrap().add(&q_int(height)).unwrap();
        walk(remaining - 1, height, acc.mul(&level).unwrap(), out);
        walk(remaining - 1, height + 1, acc.clone(), out);
        if height > 0 {
            let down = Poly3::y().mul(&q_int(height).pow(2).unwrap()).unwrap();
            walk(remaining - 1, height - 1, acc.mul(&down).unwrap(), out);
        }
    }
    let mut out = Poly3::zero();
    walk(n, 0, Poly3::one(), &mut out);
    out
}

/// Brute-force count of permutations avoiding every in-block image,
/// through a plain backtracking search.
fn derangement_count_oracle(parts: &[usize]) -> i64 {
    let block: Vec<usize> = parts
        .iter()
        .enumerate()
        .flat_map(|(r, &len)| std::iter::repeat_n(r, len))
        .collect();
    fn go(pos: usize, used: &mut Vec<bool>, block: &[usize]) -> i64 {
        if pos == block.len() {
            return 1;
        }
        let mut total = 0;
        for v in 0..block.len() {
            if !used[v] && block[v] != block[pos] {
                used[v] = true;
                total += go(pos + 1, used, block);
                used[v] = false;
            }
        }
        total
    }
    go(0, &mut vec![false; block.len()], &block)
}

#[test]
fn hand_derived_moments() {
    // Hand expansion of the weighted paths of length <= 3.
    let expected = [p("1"), p("y"), p("y^2 + y"), p("y^3 + 3*y^2 + y^2*q + y")];
    let limits = Limits::default();
    for (n, mu) in expected.iter().enumerate() {
        assert_eq!(&motzkin_paths_oracle(n), mu);
        assert_eq!(&moment_motzkin(n, &limits).unwrap(), mu);
        assert_eq!(&moment_permutation(n, &limits).unwrap(), mu);
    }
}

#[test]
fn motzkin_transfer_matches_explicit_paths() {
    let limits = Limits::default();
    for n in 0..=8 {
        assert_eq!(moment_motzkin(n, &limits).unwrap(), motzkin_paths_oracle(n), "n={n}");
    }
}

#[test]
fn functional_on_powers_of_x_minus_y() {
    // L((x - y)^k) = sum_j C(k, j) (-y)^(k-j) mu_j with oracle moments.
    let mus: Vec<Poly3> = (0..=3).map(motzkin_paths_oracle).collect();
    let binom = [[1, 0, 0, 0], [1, 1, 0, 0], [1, 2, 1, 0], [1, 3, 3, 1]];
    let expand = |k: usize| {
        let mut total = Poly3::zero();
        for j in 0..=k {
            let ypow = Poly3::y().pow((k - j) as u32).unwrap();
            let sign = if (k - j).is_multiple_of(2) { 1 } else { -1 };
            let term = ypow.mul(&mus[j]).unwrap().scale(sign * binom[k][j]).unwrap();
            total.add_assign(&term).unwrap();
        }
        total
    };
    assert_eq!(expand(2), p("y"));
    assert_eq!(expand(3), p("y^2*q + y"));

    let limits = Limits::default();
    let table = MomentTable::new(3, &limits).unwrap();
    let x_minus_y = p("x - y");
    assert_eq!(apply_functional(&x_minus_y.pow(2).unwrap(), &table).unwrap(), expand(2));
    assert_eq!(apply_functional(&x_minus_y.pow(3).unwrap(), &table).unwrap(), expand(3));
    assert_eq!(linearize_functional(&[1, 1], &limits).unwrap(), p("y"));
    assert_eq!(linearize_functional(&[1, 1, 1], &limits).unwrap(), p("y^2*q + y"));
}

#[test]
fn linearization_by_three_routes_on_small_cases() {
    let limits = Limits::default();
    for (c, expected) in [("1,1", p("y")), ("1,1,1", p("y^2*q + y")), ("1", Poly3::zero())] {
        let comp: Composition = c.parse().unwrap();
        assert_eq!(linearize_functional(comp.parts(), &limits).unwrap(), expected, "{c}");
        assert_eq!(signed_sum(&comp, &limits).unwrap(), expected, "{c}");
        assert_eq!(derangement_gf(&comp, &limits).unwrap(), expected, "{c}");
    }
}

#[test]
fn classical_derangement_counts() {
    let limits = Limits::default();
    assert_eq!(derangement_count_oracle(&[1, 1, 1]), 2);
    assert_eq!(derangement_count_oracle(&[1, 1, 1, 1]), 9);
    for parts in [vec![1, 1, 1], vec![1, 1, 1, 1], vec![2, 2], vec![1, 2, 3], vec![2, 3, 2], vec![3]] {
        let c = Composition::new(parts.clone()).unwrap();
        let count = derangement_count_oracle(&parts);
        let gf = derangement_gf(&c, &limits).unwrap();
        assert_eq!(gf.specialize(None, Some(1), Some(1)).unwrap().as_constant(), Some(count));
        assert_eq!(enumerate_derangements(&c, &limits).unwrap().count() as i64, count);
    }
}

#[test]
fn moments_at_y_and_q_one_are_factorials() {
    let limits = Limits::default();
    let mut factorial = 1i64;
    for n in 0..=8 {
        if n > 0 {
            factorial *= n as i64;
        }
        let mu = moment_permutation(n, &limits).unwrap();
        assert_eq!(mu.specialize(None, Some(1), Some(1)).unwrap().as_constant(), Some(factorial));
    }
}

#[test]
fn recurrence_at_q_one_y_one_gives_classical_laguerre() {
    // Monic classical Laguerre: L_n(x) = sum_k (-1)^(n-k) C(n,k) n!/k! x^k.
    let limits = Limits::default();
    for n in 0..=6u32 {
        let l = laguerre_recurrence(n as usize, &limits)
            .unwrap()
            .specialize(None, Some(1), Some(1))
            .unwrap();
        let fact = |k: u32| (1..=k as i64).product::<i64>();
        for k in 0..=n {
            let binom = fact(n) / (fact(k) * fact(n - k));
            let sign = if (n - k) % 2 == 0 { 1 } else { -1 };
            assert_eq!(l.coeff(Monomial::new(k, 0, 0)), sign * binom * fact(n) / fact(k), "n={n} k={k}");
        }
    }
}

fn permutation_strategy(max: usize) -> impl Strategy<Value = Permutation> {
    (1..=max)
        .prop_flat_map(|n| Just((1..=n).collect::<Vec<usize>>()).prop_shuffle())
        .prop_map(|v| Permutation::new(v).unwrap())
}

proptest! {
    #[test]
    fn overlapping_pairs_are_weight_minus_crossings(perm in permutation_strategy(12)) {
        prop_assert_eq!(perm.ov() + perm.crossings(), perm.wt());
        prop_assert_eq!(perm.ov(), perm.cr());
    }
}
