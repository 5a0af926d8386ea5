//! Sparse polynomials in `x`, `y`, `q` with `i64` coefficients.
//!
//! Every arithmetic operation is checked: an intermediate coefficient that
//! leaves the `i64` range yields [`Error::Overflow`] instead of wrapping.
//!
//! The text form lists terms in canonical order (descending powers of `x`,
//! then of `y`, then of `q`) and writes each term as
//! `c*y^b*q^d*x^a`, omitting unit coefficients and exponents, e.g.
//! `x^2 - y*q*x - 2*y*x - x + y^2*q + y^2`. The zero polynomial is `0`.

use alloc::collections::btree_map::{self, BTreeMap};
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::cmp::Ordering;
use core::fmt;
use core::str::FromStr;

use crate::{Error, Result};

/// Exponents of `x`, `y` and `q` in a single term.
///
/// The `Ord` implementation is the canonical term order used for display and
/// serialization: larger `x` degree first, then larger `y` degree, then larger
/// `q` degree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Monomial {
    pub x: u32,
    pub y: u32,
    pub q: u32,
}

impl Monomial {
    pub const ONE: Monomial = Monomial { x: 0, y: 0, q: 0 };

    pub const fn new(x: u32, y: u32, q: u32) -> Self {
        Monomial { x, y, q }
    }

    fn checked_mul(self, other: Monomial) -> Result<Monomial> {
        Ok(Monomial {
            x: self.x.checked_add(other.x).ok_or(Error::Overflow)?,
            y: self.y.checked_add(other.y).ok_or(Error::Overflow)?,
            q: self.q.checked_add(other.q).ok_or(Error::Overflow)?,
        })
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        other
            .x
            .cmp(&self.x)
            .then(other.y.cmp(&self.y))
            .then(other.q.cmp(&self.q))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// An exact polynomial in `x`, `y`, `q` with integer coefficients.
///
/// No stored coefficient is zero, so structural equality is polynomial
/// equality.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly3 {
    terms: BTreeMap<Monomial, i64>,
}

impl Poly3 {
    pub fn zero() -> Self {
        Poly3::default()
    }

    pub fn one() -> Self {
        Poly3::constant(1)
    }

    pub fn constant(c: i64) -> Self {
        Poly3::term(c, Monomial::ONE)
    }

    pub fn term(coeff: i64, monomial: Monomial) -> Self {
        let mut terms = BTreeMap::new();
        if coeff != 0 {
            terms.insert(monomial, coeff);
        }
        Poly3 { terms }
    }

    pub fn x() -> Self {
        Poly3::term(1, Monomial::new(1, 0, 0))
    }

    pub fn y() -> Self {
        Poly3::term(1, Monomial::new(0, 1, 0))
    }

    pub fn q() -> Self {
        Poly3::term(1, Monomial::new(0, 0, 1))
    }

    /// Builds a polynomial from `(monomial, coefficient)` pairs, summing
    /// repeated monomials.
    pub fn from_terms<I>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = (Monomial, i64)>,
    {
        let mut p = Poly3::zero();
        for (m, c) in terms {
            p.add_term(m, c)?;
        }
        Ok(p)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Number of nonzero terms.
    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn coeff(&self, m: Monomial) -> i64 {
        self.terms.get(&m).copied().unwrap_or(0)
    }

    /// Terms in canonical order.
    pub fn terms(&self) -> impl Iterator<Item = (Monomial, i64)> + '_ {
        self.terms.iter().map(|(m, c)| (*m, *c))
    }

    /// Highest power of `x`, or `None` for the zero polynomial.
    pub fn x_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.x).max()
    }

    /// Adds `coeff * monomial` in place.
    pub fn add_term(&mut self, monomial: Monomial, coeff: i64) -> Result<()> {
        if coeff == 0 {
            return Ok(());
        }
        match self.terms.entry(monomial) {
            btree_map::Entry::Vacant(v) => {
                v.insert(coeff);
            }
            btree_map::Entry::Occupied(mut o) => {
                let sum = o.get().checked_add(coeff).ok_or(Error::Overflow)?;
                if sum == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = sum;
                }
            }
        }
        Ok(())
    }

    /// Adds `other` into `self`.
    pub fn add_assign(&mut self, other: &Poly3) -> Result<()> {
        for (m, c) in other.terms() {
            self.add_term(m, c)?;
        }
        Ok(())
    }

    pub fn add(&self, other: &Poly3) -> Result<Poly3> {
        let mut out = self.clone();
        out.add_assign(other)?;
        Ok(out)
    }

    pub fn neg(&self) -> Result<Poly3> {
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms() {
            terms.insert(m, c.checked_neg().ok_or(Error::Overflow)?);
        }
        Ok(Poly3 { terms })
    }

    pub fn sub(&self, other: &Poly3) -> Result<Poly3> {
        self.add(&other.neg()?)
    }

    pub fn mul(&self, other: &Poly3) -> Result<Poly3> {
        let mut out = Poly3::zero();
        for (ma, ca) in self.terms() {
            for (mb, cb) in other.terms() {
                let c = ca.checked_mul(cb).ok_or(Error::Overflow)?;
                out.add_term(ma.checked_mul(mb)?, c)?;
            }
        }
        Ok(out)
    }

    /// Multiplies every coefficient by `k`.
    pub fn scale(&self, k: i64) -> Result<Poly3> {
        if k == 0 {
            return Ok(Poly3::zero());
        }
        let mut terms = BTreeMap::new();
        for (m, c) in self.terms() {
            terms.insert(m, c.checked_mul(k).ok_or(Error::Overflow)?);
        }
        Ok(Poly3 { terms })
    }

    pub fn pow(&self, k: u32) -> Result<Poly3> {
        let mut out = Poly3::one();
        for _ in 0..k {
            out = out.mul(self)?;
        }
        Ok(out)
    }

    /// Substitutes integer values for any subset of the variables.
    pub fn specialize(&self, x: Option<i64>, y: Option<i64>, q: Option<i64>) -> Result<Poly3> {
        fn power(value: Option<i64>, exp: u32) -> Result<(i64, u32)> {
            match value {
                None => Ok((1, exp)),
                Some(v) => Ok((v.checked_pow(exp).ok_or(Error::Overflow)?, 0)),
            }
        }
        let mut out = Poly3::zero();
        for (m, c) in self.terms() {
            let (fx, ex) = power(x, m.x)?;
            let (fy, ey) = power(y, m.y)?;
            let (fq, eq) = power(q, m.q)?;
            let c = c
                .checked_mul(fx)
                .and_then(|c| c.checked_mul(fy))
                .and_then(|c| c.checked_mul(fq))
                .ok_or(Error::Overflow)?;
            out.add_term(Monomial::new(ex, ey, eq), c)?;
        }
        Ok(out)
    }

    /// The constant value of a polynomial with no remaining variables.
    pub fn as_constant(&self) -> Option<i64> {
        match self.terms.len() {
            0 => Some(0),
            1 => self.terms.get(&Monomial::ONE).copied(),
            _ => None,
        }
    }
}

/// The q-integer `[n]_q = 1 + q + ... + q^(n-1)`.
pub fn q_integer(n: u32) -> Poly3 {
    let mut p = Poly3::zero();
    for i in 0..n {
        p.terms.insert(Monomial::new(0, 0, i), 1);
    }
    p
}

fn write_monomial(f: &mut fmt::Formatter<'_>, m: Monomial, mut first: bool) -> fmt::Result {
    for (name, exp) in [("y", m.y), ("q", m.q), ("x", m.x)] {
        if exp == 0 {
            continue;
        }
        if !first {
            f.write_str("*")?;
        }
        f.write_str(name)?;
        if exp > 1 {
            write!(f, "^{exp}")?;
        }
        first = false;
    }
    Ok(())
}

impl fmt::Display for Poly3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return f.write_str("0");
        }
        for (k, (m, c)) in self.terms().enumerate() {
            let magnitude = c.unsigned_abs();
            match (k, c < 0) {
                (0, true) => f.write_str("-")?,
                (0, false) => {}
                (_, true) => f.write_str(" - ")?,
                (_, false) => f.write_str(" + ")?,
            }
            if m == Monomial::ONE {
                write!(f, "{magnitude}")?;
            } else if magnitude == 1 {
                write_monomial(f, m, true)?;
            } else {
                write!(f, "{magnitude}")?;
                write_monomial(f, m, false)?;
            }
        }
        Ok(())
    }
}

fn parse_term(text: &str) -> Result<(Monomial, i64)> {
    let mut coeff: i64 = 1;
    let mut m = Monomial::ONE;
    for factor in text.split('*') {
        if factor.is_empty() {
            return Err(Error::Parse(format!("empty factor in term `{text}`")));
        }
        if factor.bytes().all(|b| b.is_ascii_digit()) {
            let value: i64 = factor
                .parse()
                .map_err(|_| Error::Parse(format!("coefficient `{factor}` out of range")))?;
            coeff = coeff.checked_mul(value).ok_or(Error::Overflow)?;
            continue;
        }
        let (name, exp) = match factor.split_once('^') {
            Some((name, exp)) => {
                let exp: u32 = exp
                    .parse()
                    .map_err(|_| Error::Parse(format!("bad exponent in `{factor}`")))?;
                (name, exp)
            }
            None => (factor, 1),
        };
        let slot = match name {
            "x" => &mut m.x,
            "y" => &mut m.y,
            "q" => &mut m.q,
            _ => return Err(Error::Parse(format!("unknown variable `{name}`"))),
        };
        *slot = slot.checked_add(exp).ok_or(Error::Overflow)?;
    }
    Ok((m, coeff))
}

impl FromStr for Poly3 {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let compact: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if compact.is_empty() {
            return Err(Error::Parse(String::from("empty input")));
        }
        let mut pieces: Vec<(bool, &str)> = Vec::new();
        let mut start = 0;
        let mut negative = false;
        for (idx, ch) in compact.char_indices() {
            if ch == '+' || ch == '-' {
                if idx == 0 {
                    negative = ch == '-';
                    start = 1;
                    continue;
                }
                pieces.push((negative, &compact[start..idx]));
                negative = ch == '-';
                start = idx + 1;
            }
        }
        pieces.push((negative, &compact[start..]));

        let mut p = Poly3::zero();
        for (negative, body) in pieces {
            if body.is_empty() {
                return Err(Error::Parse(format!("dangling sign in `{s}`")));
            }
            let (m, c) = parse_term(body)?;
            let c = if negative {
                c.checked_neg().ok_or(Error::Overflow)?
            } else {
                c
            };
            p.add_term(m, c)?;
        }
        Ok(p)
    }
}
