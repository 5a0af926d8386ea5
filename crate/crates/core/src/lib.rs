//! Exact combinatorics of the q-Laguerre polynomials `L_n(x; q, y)`.
//!
//! The crate computes the polynomials, their moments and their linearization
//! coefficients `C(n_1, ..., n_k) = L(L_{n_1} ... L_{n_k})` along several
//! independent routes, all over exact integer polynomials in `x`, `y` and `q`:
//!
//! * [`laguerre`]: the three-term recurrence, the signed matching expansion,
//!   moments from permutations, from perfect matchings and from weighted
//!   Motzkin paths, and the moment functional itself.
//! * [`marked`]: marked perfect matchings, their statistics, the signed sum
//!   over them and the derangement generating function.
//! * [`involution`]: the sign-reversing involution on marked perfect matchings
//!   together with exhaustive checks of the properties it relies on.
//!
//! The crate is `no_std` and only needs `alloc`. File formats, the command
//! line front end and the timed verification suites live in the `qlag` crate.
#![no_std]

extern crate alloc;

#[cfg(test)]
extern crate std;

mod error;
pub mod involution;
pub mod laguerre;
mod limits;
pub mod marked;
pub mod matching;
pub mod poly;

pub use error::{Error, Result};
pub use limits::Limits;
pub use poly::{Monomial, Poly3};
