//! The q-Laguerre polynomials, their moments, and the moment functional.
//!
//! `L_{n+1} = (x - y[n+1]_q - [n]_q) L_n - y[n]_q^2 L_{n-1}` with `L_0 = 1`
//! and `L_1 = x - y`.

use alloc::vec;
use alloc::vec::Vec;

use crate::limits::check;
use crate::matching::{enumerate_matchings, enumerate_perfect_matchings};
use crate::poly::q_integer;
use crate::{Error, Limits, Monomial, Poly3, Result};

pub(crate) fn exponent(value: u64) -> Result<u32> {
    u32::try_from(value).map_err(|_| Error::Overflow)
}

/// `(-1)^sign_edges * y^y_exp * q^q_exp * x^x_exp`.
pub(crate) fn signed_term(sign_edges: usize, x_exp: usize, y_exp: usize, q_exp: u64) -> Result<Poly3> {
    let coeff = if sign_edges.is_multiple_of(2) { 1 } else { -1 };
    Ok(Poly3::term(
        coeff,
        Monomial::new(exponent(x_exp as u64)?, exponent(y_exp as u64)?, exponent(q_exp)?),
    ))
}

/// Level and down-step weights of the three-term recurrence.
#[derive(Debug, Clone, Copy, Default)]
pub struct MotzkinWeights;

impl MotzkinWeights {
    /// `b_h = y[h+1]_q + [h]_q`, the weight of a level step at height `h`.
    pub fn level(&self, h: u32) -> Poly3 {
        Poly3::y()
            .mul(&q_integer(h + 1))
            .and_then(|p| p.add(&q_integer(h)))
            .expect("small q-integers cannot overflow")
    }

    /// `lambda_h = y[h]_q^2`, the weight of a down step from height `h`.
    pub fn down(&self, h: u32) -> Result<Poly3> {
        let qh = q_integer(h);
        Poly3::y().mul(&qh.mul(&qh)?)
    }
}

/// `L_0, ..., L_n` from the three-term recurrence.
pub fn laguerre_sequence(n: usize, limits: &Limits) -> Result<Vec<Poly3>> {
    check("Laguerre degree", n, limits.degree)?;
    let weights = MotzkinWeights;
    let mut seq = vec![Poly3::one()];
    let mut prev = Poly3::zero();
    for k in 0..n {
        let k32 = exponent(k as u64)?;
        let cur = &seq[k];
        let shift = Poly3::x().sub(&weights.level(k32))?;
        let next = shift.mul(cur)?.sub(&weights.down(k32)?.mul(&prev)?)?;
        prev = cur.clone();
        seq.push(next);
    }
    Ok(seq)
}

/// `L_n` from the three-term recurrence.
pub fn laguerre_recurrence(n: usize, limits: &Limits) -> Result<Poly3> {
    Ok(laguerre_sequence(n, limits)?.pop().expect("sequence is never empty"))
}

/// `L_n` as the signed sum over all matchings of degree `n` of
/// `(-1)^e y^bwex q^(bwt + cross) x^(n - e)`.
pub fn laguerre_combinatorial(n: usize, limits: &Limits) -> Result<Poly3> {
    check("Laguerre matching expansion degree", n, limits.laguerre_expansion)?;
    let mut total = Poly3::zero();
    for m in enumerate_matchings(n, &Limits::uniform(n))? {
        let e = m.edge_count();
        let term = signed_term(e, n - e, m.bwex(), m.bwt() + m.crossings())?;
        total.add_assign(&term)?;
    }
    Ok(total)
}

/// `mu_n` as the sum over permutations of `y^wex q^CR`.
pub fn moment_permutation(n: usize, limits: &Limits) -> Result<Poly3> {
    check("moment degree", n, limits.degree)?;
    let mut total = Poly3::zero();
    for p in enumerate_perfect_matchings(n, &Limits::uniform(n))? {
        total.add_assign(&signed_term(0, 0, p.wex(), p.cr())?)?;
    }
    Ok(total)
}

/// `mu_n` as the sum over perfect matchings of `y^wex q^(wt - cross)`.
pub fn moment_matching(n: usize, limits: &Limits) -> Result<Poly3> {
    check("moment degree", n, limits.degree)?;
    let mut total = Poly3::zero();
    for p in enumerate_perfect_matchings(n, &Limits::uniform(n))? {
        let diff = p.wt() as i64 - p.crossings() as i64;
        if diff < 0 {
            return Err(Error::NegativeExponent(diff));
        }
        total.add_assign(&signed_term(0, 0, p.wex(), diff as u64)?)?;
    }
    Ok(total)
}

/// `mu_0, ..., mu_n` by a transfer over path heights: a weighted Motzkin
/// path with level weight `b_h` and down weight `lambda_h`.
fn motzkin_moments(n: usize) -> Result<Vec<Poly3>> {
    let weights = MotzkinWeights;
    let levels: Vec<Poly3> = (0..=n as u32).map(|h| weights.level(h)).collect();
    let downs: Vec<Poly3> = (0..=n as u32).map(|h| weights.down(h)).collect::<Result<_>>()?;
    let mut moments = vec![Poly3::one()];
    let mut heights = vec![Poly3::one()];
    for step in 1..=n {
        // A path that must return to 0 within the remaining steps never
        // climbs above min(step, n - step).
        let cap = step.min(n - step);
        let mut next = vec![Poly3::zero(); cap + 1];
        for (h, weight) in heights.iter().enumerate() {
            if weight.is_zero() {
                continue;
            }
            if h <= cap {
                next[h].add_assign(&weight.mul(&levels[h])?)?;
            }
            if h < cap {
                next[h + 1].add_assign(weight)?;
            }
            if h >= 1 && h - 1 <= cap {
                next[h - 1].add_assign(&weight.mul(&downs[h])?)?;
            }
        }
        moments.push(next[0].clone());
        heights = next;
    }
    Ok(moments)
}

/// `mu_n` as a weighted Motzkin path sum.
pub fn moment_motzkin(n: usize, limits: &Limits) -> Result<Poly3> {
    check("moment degree", n, limits.degree)?;
    Ok(motzkin_moments(n)?.pop().expect("moment list is never empty"))
}

/// Moments `mu_0, ..., mu_max`, i.e. the functional on powers of `x`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MomentTable {
    mu: Vec<Poly3>,
}

impl MomentTable {
    /// Builds the table through the Motzkin route.
    pub fn new(max_degree: usize, limits: &Limits) -> Result<Self> {
        check("moment degree", max_degree, limits.degree)?;
        Ok(MomentTable { mu: motzkin_moments(max_degree)? })
    }

    pub fn max_degree(&self) -> usize {
        self.mu.len() - 1
    }

    pub fn moment(&self, n: usize) -> Option<&Poly3> {
        self.mu.get(n)
    }

    pub fn moments(&self) -> &[Poly3] {
        &self.mu
    }
}

/// Applies the moment functional: every `x^a` becomes `mu_a`.
pub fn apply_functional(p: &Poly3, table: &MomentTable) -> Result<Poly3> {
    let mut out = Poly3::zero();
    for (m, c) in p.terms() {
        let mu = table.moment(m.x as usize).ok_or(Error::TableTooShort {
            needed: m.x as usize,
            available: table.max_degree(),
        })?;
        let rest = Poly3::term(c, Monomial::new(0, m.y, m.q));
        out.add_assign(&rest.mul(mu)?)?;
    }
    Ok(out)
}

/// `C(n_1, ..., n_k)`: the functional applied to `L_{n_1} ... L_{n_k}`.
///
/// The empty product is accepted and gives `1`.
pub fn linearize_functional(parts: &[usize], limits: &Limits) -> Result<Poly3> {
    let total = parts
        .iter()
        .try_fold(0usize, |acc, &p| acc.checked_add(p))
        .ok_or(Error::Overflow)?;
    check("linearization total degree", total, limits.degree)?;
    let max_part = parts.iter().copied().max().unwrap_or(0);
    let seq = laguerre_sequence(max_part, limits)?;
    let mut product = Poly3::one();
    for &p in parts {
        product = product.mul(&seq[p])?;
    }
    apply_functional(&product, &MomentTable::new(total, limits)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use alloc::string::ToString;

    fn p(s: &str) -> Poly3 {
        s.parse().unwrap()
    }

    #[test]
    fn first_polynomials() {
        let limits = Limits::default();
        assert_eq!(laguerre_recurrence(0, &limits).unwrap(), Poly3::one());
        assert_eq!(laguerre_recurrence(1, &limits).unwrap(), p("x - y"));
        assert_eq!(
            laguerre_recurrence(2, &limits).unwrap(),
            p("x^2 - y*q*x - 2*y*x - x + y^2 + y^2*q")
        );
        assert_eq!(laguerre_combinatorial(0, &limits).unwrap(), Poly3::one());
        assert_eq!(laguerre_combinatorial(1, &limits).unwrap(), p("x - y"));
    }

    #[test]
    fn recurrence_is_monic_of_degree_n() {
        let limits = Limits::default();
        for (n, l) in laguerre_sequence(8, &limits).unwrap().iter().enumerate() {
            assert_eq!(l.x_degree(), Some(n as u32));
            assert_eq!(l.coeff(Monomial::new(n as u32, 0, 0)), 1);
        }
    }

    #[test]
    fn degree_two_terms_per_matching() {
        let limits = Limits::default();
        let terms: Vec<Poly3> = enumerate_matchings(2, &limits)
            .unwrap()
            .map(|m| {
                let e = m.edge_count();
                signed_term(e, 2 - e, m.bwex(), m.bwt() + m.crossings()).unwrap()
            })
            .collect();
        let mut sorted: Vec<_> = terms.iter().map(|t| t.to_string()).collect();
        sorted.sort();
        let mut expected = vec!["x^2", "-y*x", "-y*q*x", "-x", "-y*x", "y^2", "y^2*q"];
        expected.sort();
        assert_eq!(sorted, expected);
    }

    #[test]
    fn small_moments_by_every_route() {
        let limits = Limits::default();
        let expected = [p("1"), p("y"), p("y^2 + y")];
        for (n, mu) in expected.iter().enumerate() {
            assert_eq!(&moment_permutation(n, &limits).unwrap(), mu);
            assert_eq!(&moment_matching(n, &limits).unwrap(), mu);
            assert_eq!(&moment_motzkin(n, &limits).unwrap(), mu);
        }
    }

    #[test]
    fn motzkin_weights() {
        let w = MotzkinWeights;
        assert_eq!(w.level(0), Poly3::y());
        assert_eq!(w.level(1), p("y + y*q + 1"));
        assert!(w.down(0).unwrap().is_zero());
        assert_eq!(w.down(2).unwrap(), p("y + 2*y*q + y*q^2"));
    }

    #[test]
    fn functional_examples() {
        let limits = Limits::default();
        let table = MomentTable::new(3, &limits).unwrap();
        assert_eq!(table.moment(0), Some(&Poly3::one()));
        assert_eq!(apply_functional(&Poly3::one(), &table).unwrap(), Poly3::one());
        assert_eq!(apply_functional(&p("x^2"), &table).unwrap(), p("y^2 + y"));
        assert_eq!(apply_functional(&p("x^2 - 2*x*y + y^2"), &table).unwrap(), Poly3::y());
        assert_eq!(
            apply_functional(&p("x^4"), &table),
            Err(Error::TableTooShort { needed: 4, available: 3 })
        );
    }

    #[test]
    fn linearization_examples() {
        let limits = Limits::default();
        assert_eq!(linearize_functional(&[], &limits).unwrap(), Poly3::one());
        assert_eq!(linearize_functional(&[1, 1], &limits).unwrap(), Poly3::y());
        assert_eq!(linearize_functional(&[1, 1, 1], &limits).unwrap(), p("y^2*q + y"));
        assert!(linearize_functional(&[5, 4], &limits).is_err());
    }

    #[test]
    fn orthogonality() {
        let limits = Limits::default();
        let seq = laguerre_sequence(4, &limits).unwrap();
        let table = MomentTable::new(8, &limits).unwrap();
        for m in 0..=4 {
            for n in 0..=4 {
                let value = apply_functional(&seq[m].mul(&seq[n]).unwrap(), &table).unwrap();
                assert_eq!(value.is_zero(), m != n, "m={m} n={n}");
            }
        }
    }

    #[test]
    fn limits_apply() {
        let limits = Limits::default();
        assert!(laguerre_recurrence(9, &limits).is_err());
        assert!(laguerre_combinatorial(7, &limits).is_err());
        assert!(moment_motzkin(9, &limits).is_err());
        assert!(moment_permutation(9, &limits).is_err());
    }
}
