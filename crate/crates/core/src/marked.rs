//! Marked perfect matchings, their statistics, and derangements of a
//! composition.
//!
//! For a composition `(n_1, ..., n_k)` of `N`, the interval `I_r` holds the
//! vertices `n_1 + ... + n_{r-1} + 1 ..= n_1 + ... + n_r`. An edge is
//! homogeneous when both endpoints lie in the same interval. A marked perfect
//! matching is a perfect matching of degree `N` together with a set of marked
//! edges that contains every inhomogeneous edge.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::laguerre::signed_term;
use crate::limits::check;
use crate::matching::{permutations_unchecked, BlockStructure, Matching, Permutation, Permutations};
use crate::{Error, Limits, Poly3, Result};

/// A nonempty tuple of positive parts.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Composition {
    parts: Vec<usize>,
    block_of: Vec<usize>,
}

impl Composition {
    pub fn new(parts: Vec<usize>) -> Result<Self> {
        if parts.is_empty() {
            return Err(Error::InvalidComposition(String::from("no parts")));
        }
        if let Some(pos) = parts.iter().position(|&p| p == 0) {
            return Err(Error::InvalidComposition(format!("part {} is zero", pos + 1)));
        }
        let block_of = parts
            .iter()
            .enumerate()
            .flat_map(|(r, &len)| core::iter::repeat_n(r + 1, len))
            .collect();
        Ok(Composition { parts, block_of })
    }

    pub fn parts(&self) -> &[usize] {
        &self.parts
    }

    /// `N`, the sum of the parts.
    pub fn total(&self) -> usize {
        self.block_of.len()
    }

    /// The interval `I_r` (1-based `r`) as an inclusive range.
    pub fn interval(&self, r: usize) -> (usize, usize) {
        let start: usize = self.parts[..r - 1].iter().sum::<usize>() + 1;
        (start, start + self.parts[r - 1] - 1)
    }

    /// Index `r` of the interval containing vertex `v`.
    pub fn block(&self, v: usize) -> Result<usize> {
        self.block_of
            .get(v.wrapping_sub(1))
            .copied()
            .ok_or(Error::VertexOutOfRange { vertex: v, degree: self.total() })
    }

    /// Whether the edge `(i, j)` stays inside one interval.
    pub fn is_homogeneous(&self, i: usize, j: usize) -> Result<bool> {
        Ok(self.block(i)? == self.block(j)?)
    }

    fn same_block(&self, i: usize, j: usize) -> bool {
        self.block_of[i - 1] == self.block_of[j - 1]
    }
}

impl fmt::Display for Composition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, p) in self.parts.iter().enumerate() {
            if k > 0 {
                f.write_str(",")?;
            }
            write!(f, "{p}")?;
        }
        Ok(())
    }
}

impl FromStr for Composition {
    type Err = Error;

    /// Comma-separated positive integers, e.g. `2,3,2`.
    fn from_str(s: &str) -> Result<Self> {
        let parts = s
            .split(',')
            .map(|p| {
                p.trim()
                    .parse::<usize>()
                    .map_err(|_| Error::InvalidComposition(format!("`{p}` is not a positive integer")))
            })
            .collect::<Result<Vec<_>>>()?;
        Composition::new(parts)
    }
}

/// Every composition of `n` (there are `2^(n-1)` for `n >= 1`), ordered by
/// the cut positions read as a binary counter.
pub fn compositions_of(n: usize) -> impl Iterator<Item = Composition> {
    let count: u64 = if n == 0 { 0 } else { 1u64 << (n - 1) };
    (0..count).map(move |mask| {
        let mut parts = Vec::new();
        let mut len = 1;
        for bit in 0..n - 1 {
            if mask & (1 << bit) != 0 {
                parts.push(len);
                len = 1;
            } else {
                len += 1;
            }
        }
        parts.push(len);
        Composition::new(parts).expect("parts are positive")
    })
}

/// `(pi, S)` with `S` containing every inhomogeneous edge of `pi`.
///
/// Edges are named by their upper endpoint.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MarkedPM {
    composition: Composition,
    perm: Permutation,
    marked: Vec<bool>,
}

/// Statistics of a marked perfect matching. `cross` may be negative.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MarkedStats {
    pub e: usize,
    pub bwex: usize,
    pub cross: i64,
    pub wt: u64,
}

impl MarkedStats {
    /// `wt + cross`, the exponent of `q`.
    pub fn q_exponent(&self) -> Result<u64> {
        let sum = self.wt as i64 + self.cross;
        u64::try_from(sum).map_err(|_| Error::NegativeExponent(sum))
    }
}

/// The unmarked portion keeps every vertex and drops marked edges; the
/// marked portion keeps only marked edges, relabeled order-preservingly in
/// each row.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Portions {
    pub unmarked: Matching,
    pub marked: Permutation,
}

impl MarkedPM {
    /// `marked` lists upper endpoints of marked edges.
    pub fn new(composition: Composition, perm: Permutation, marked: &[usize]) -> Result<Self> {
        let n = composition.total();
        if perm.degree() != n {
            return Err(Error::InvalidMarked(format!(
                "permutation has degree {}, composition sums to {n}",
                perm.degree()
            )));
        }
        let mut flags = vec![false; n];
        for &i in marked {
            if i == 0 || i > n {
                return Err(Error::VertexOutOfRange { vertex: i, degree: n });
            }
            flags[i - 1] = true;
        }
        MarkedPM::from_flags(composition, perm, flags)
    }

    pub fn from_flags(composition: Composition, perm: Permutation, marked: Vec<bool>) -> Result<Self> {
        let n = composition.total();
        if perm.degree() != n || marked.len() != n {
            return Err(Error::InvalidMarked(format!(
                "degrees disagree: composition {n}, permutation {}, marks {}",
                perm.degree(),
                marked.len()
            )));
        }
        for i in 1..=n {
            if !marked[i - 1] && !composition.same_block(i, perm.image(i)) {
                return Err(Error::InvalidMarked(format!(
                    "inhomogeneous edge ({i},{}) is not marked",
                    perm.image(i)
                )));
            }
        }
        Ok(MarkedPM { composition, perm, marked })
    }

    /// The derangement `sigma` with every edge marked.
    pub fn fully_marked(composition: Composition, perm: Permutation) -> Result<Self> {
        let n = perm.degree();
        MarkedPM::from_flags(composition, perm, vec![true; n])
    }

    pub fn composition(&self) -> &Composition {
        &self.composition
    }

    pub fn permutation(&self) -> &Permutation {
        &self.perm
    }

    pub fn degree(&self) -> usize {
        self.perm.degree()
    }

    /// Lower endpoint of `e_i`.
    pub fn target(&self, i: usize) -> usize {
        self.perm.image(i)
    }

    pub fn is_marked(&self, i: usize) -> bool {
        self.marked[i - 1]
    }

    pub fn marked_flags(&self) -> &[bool] {
        &self.marked
    }

    /// Upper endpoints of the marked edges, ascending.
    pub fn marked_edges(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&i| self.is_marked(i)).collect()
    }

    pub fn is_edge_homogeneous(&self, i: usize) -> bool {
        self.composition.same_block(i, self.perm.image(i))
    }

    /// Upper endpoints of the homogeneous edges, ascending.
    pub fn homogeneous_edges(&self) -> Vec<usize> {
        (1..=self.degree()).filter(|&i| self.is_edge_homogeneous(i)).collect()
    }

    /// Whether every edge is inhomogeneous, i.e. the structure is a
    /// derangement.
    pub fn is_derangement(&self) -> bool {
        (1..=self.degree()).all(|i| !self.is_edge_homogeneous(i))
    }

    /// The same matching with the mark on `e_i` flipped.
    pub fn toggled(&self, i: usize) -> Result<MarkedPM> {
        if i == 0 || i > self.degree() {
            return Err(Error::VertexOutOfRange { vertex: i, degree: self.degree() });
        }
        if !self.is_edge_homogeneous(i) {
            return Err(Error::InhomogeneousEdge(i));
        }
        let mut out = self.clone();
        out.marked[i - 1] = !out.marked[i - 1];
        Ok(out)
    }

    /// Blocks cut after every vertex incident to a marked edge.
    pub fn block_structure(&self) -> BlockStructure {
        let n = self.degree();
        let mut lower_cuts = vec![false; n];
        for i in 1..=n {
            if self.is_marked(i) {
                lower_cuts[self.target(i) - 1] = true;
            }
        }
        BlockStructure::from_cuts(&self.marked, &lower_cuts)
    }

    /// Block difference of every edge, indexed by `i - 1`.
    pub fn bdiffs(&self) -> Vec<i64> {
        let blocks = self.block_structure();
        (1..=self.degree())
            .map(|i| blocks.lower(self.target(i)) as i64 - blocks.upper(i) as i64)
            .collect()
    }

    pub fn bdiff(&self, i: usize) -> Result<i64> {
        if i == 0 || i > self.degree() {
            return Err(Error::VertexOutOfRange { vertex: i, degree: self.degree() });
        }
        Ok(self.bdiffs()[i - 1])
    }

    pub fn portions(&self) -> Portions {
        let n = self.degree();
        let unmarked = Matching::new(
            (1..=n)
                .map(|i| (!self.is_marked(i)).then(|| self.target(i)))
                .collect(),
        )
        .expect("subset of a perfect matching is a matching");

        // Rank of each marked lower endpoint among marked lower endpoints.
        let mut lower_rank = vec![0; n + 1];
        let mut is_marked_lower = vec![false; n + 1];
        for i in self.marked_edges() {
            is_marked_lower[self.target(i)] = true;
        }
        let mut rank = 0;
        for j in 1..=n {
            if is_marked_lower[j] {
                rank += 1;
                lower_rank[j] = rank;
            }
        }
        let images = self
            .marked_edges()
            .into_iter()
            .map(|i| lower_rank[self.target(i)])
            .collect();
        let marked = Permutation::new(images).expect("ranks form a permutation");
        Portions { unmarked, marked }
    }

    /// Statistics through the unmarked and marked portions.
    pub fn stats(&self) -> MarkedStats {
        let Portions { unmarked, marked } = self.portions();
        MarkedStats {
            e: unmarked.edge_count(),
            bwex: unmarked.bwex() + marked.wex(),
            cross: unmarked.crossings() as i64 - marked.crossings() as i64,
            wt: unmarked.bwt() + marked.wt(),
        }
    }

    /// `bwex` and `wt` read directly off the block differences of the whole
    /// marked perfect matching.
    pub fn block_stats(&self) -> (usize, u64) {
        let diffs = self.bdiffs();
        let bwex = diffs.iter().filter(|&&d| d >= 0).count();
        let wt = diffs
            .iter()
            .map(|&d| if d >= 0 { d as u64 } else { (-d - 1) as u64 })
            .sum();
        (bwex, wt)
    }

    /// `(-1)^e y^bwex q^(wt + cross)`.
    pub fn signed_term(&self) -> Result<Poly3> {
        let s = self.stats();
        signed_term(s.e, 0, s.bwex, s.q_exponent()?)
    }
}

/// Every marked perfect matching of a composition: for each permutation in
/// lexicographic order, every subset of its homogeneous edges left unmarked.
#[derive(Debug, Clone)]
pub struct MarkedPMs {
    composition: Composition,
    perms: Permutations,
    current: Option<(Permutation, Vec<usize>)>,
    mask: u64,
}

impl Iterator for MarkedPMs {
    type Item = MarkedPM;

    fn next(&mut self) -> Option<MarkedPM> {
        loop {
            if let Some((perm, homogeneous)) = &self.current {
                if self.mask < 1u64 << homogeneous.len() {
                    let mut marked = vec![true; perm.degree()];
                    for (bit, &i) in homogeneous.iter().enumerate() {
                        if self.mask & (1 << bit) != 0 {
                            marked[i - 1] = false;
                        }
                    }
                    self.mask += 1;
                    return Some(MarkedPM {
                        composition: self.composition.clone(),
                        perm: perm.clone(),
                        marked,
                    });
                }
            }
            let perm = self.perms.next()?;
            let homogeneous = (1..=perm.degree())
                .filter(|&i| self.composition.same_block(i, perm.image(i)))
                .collect();
            self.current = Some((perm, homogeneous));
            self.mask = 0;
        }
    }
}

pub fn enumerate_marked(c: &Composition, limits: &Limits) -> Result<MarkedPMs> {
    check("marked perfect matching degree", c.total(), limits.marked.min(63))?;
    Ok(MarkedPMs {
        composition: c.clone(),
        perms: permutations_unchecked(c.total()),
        current: None,
        mask: 0,
    })
}

/// The signed sum over all marked perfect matchings of the composition.
pub fn signed_sum(c: &Composition, limits: &Limits) -> Result<Poly3> {
    let mut total = Poly3::zero();
    for m in enumerate_marked(c, limits)? {
        total.add_assign(&m.signed_term()?)?;
    }
    Ok(total)
}

/// Permutations of `1..=N` that send no vertex into its own interval.
pub fn enumerate_derangements(
    c: &Composition,
    limits: &Limits,
) -> Result<impl Iterator<Item = Permutation>> {
    check("derangement degree", c.total(), limits.marked)?;
    let c = c.clone();
    Ok(permutations_unchecked(c.total())
        .filter(move |p| (1..=p.degree()).all(|i| !c.same_block(i, p.image(i)))))
}

/// Sum over derangements of the composition of `y^wex q^CR`.
pub fn derangement_gf(c: &Composition, limits: &Limits) -> Result<Poly3> {
    let mut total = Poly3::zero();
    for p in enumerate_derangements(c, limits)? {
        total.add_assign(&signed_term(0, 0, p.wex(), p.cr())?)?;
    }
    Ok(total)
}
