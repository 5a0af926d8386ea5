//! Matchings of degree `n`, perfect matchings viewed as permutations, and
//! their statistics.
//!
//! A matching of degree `n` lives on upper vertices `1..=n` and lower
//! vertices `1..=n`; an edge joins upper `i` to lower `pi(i)`. All vertex
//! numbers at this interface are 1-based.

use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use crate::limits::check;
use crate::{Error, Limits, Result};

/// Block index of every position, where a block closes right after each cut
/// position: the index of position `p` is one more than the number of cuts
/// strictly before `p`.
pub(crate) fn block_indices(cuts: impl Iterator<Item = bool>) -> Vec<usize> {
    let mut seen = 0;
    cuts.map(|cut| {
        let index = seen + 1;
        if cut {
            seen += 1;
        }
        index
    })
    .collect()
}

/// Upper and lower block indices of a matching, both 1-based per vertex.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BlockStructure {
    upper: Vec<usize>,
    lower: Vec<usize>,
}

impl BlockStructure {
    pub(crate) fn from_cuts(upper_cuts: &[bool], lower_cuts: &[bool]) -> Self {
        BlockStructure {
            upper: block_indices(upper_cuts.iter().copied()),
            lower: block_indices(lower_cuts.iter().copied()),
        }
    }

    /// Block index of upper vertex `i`.
    pub fn upper(&self, i: usize) -> usize {
        self.upper[i - 1]
    }

    /// Block index of lower vertex `j`.
    pub fn lower(&self, j: usize) -> usize {
        self.lower[j - 1]
    }

    pub fn upper_indices(&self) -> &[usize] {
        &self.upper
    }

    pub fn lower_indices(&self) -> &[usize] {
        &self.lower
    }

    /// Blocks of the upper row as inclusive vertex ranges.
    pub fn upper_blocks(&self) -> Vec<(usize, usize)> {
        runs(&self.upper)
    }

    /// Blocks of the lower row as inclusive vertex ranges.
    pub fn lower_blocks(&self) -> Vec<(usize, usize)> {
        runs(&self.lower)
    }
}

fn runs(indices: &[usize]) -> Vec<(usize, usize)> {
    let mut out: Vec<(usize, usize)> = Vec::new();
    for (pos, &b) in indices.iter().enumerate() {
        match out.last_mut() {
            Some(last) if indices[last.1 - 1] == b => last.1 = pos + 1,
            _ => out.push((pos + 1, pos + 1)),
        }
    }
    out
}

/// Sum used by both the block weight and the permutation weight.
fn weight_of(diffs: impl Iterator<Item = i64>) -> u64 {
    diffs
        .map(|d| if d >= 0 { d as u64 } else { (-d - 1) as u64 })
        .sum()
}

/// A partial injection from upper vertices to lower vertices.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Matching {
    targets: Vec<Option<usize>>,
}

impl Matching {
    /// `targets[i - 1]` is the lower endpoint of upper vertex `i`, if any.
    pub fn new(targets: Vec<Option<usize>>) -> Result<Self> {
        let n = targets.len();
        let mut used = vec![false; n];
        for (i, t) in targets.iter().enumerate() {
            if let Some(j) = *t {
                if j == 0 || j > n {
                    return Err(Error::VertexOutOfRange { vertex: j, degree: n });
                }
                if used[j - 1] {
                    return Err(Error::InvalidMatching(format!(
                        "lower vertex {j} is used twice (second time by upper vertex {})",
                        i + 1
                    )));
                }
                used[j - 1] = true;
            }
        }
        Ok(Matching { targets })
    }

    /// Builds a matching of the given degree from `(upper, lower)` edges.
    pub fn from_edges(degree: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut targets = vec![None; degree];
        for &(i, j) in edges {
            if i == 0 || i > degree {
                return Err(Error::VertexOutOfRange { vertex: i, degree });
            }
            if targets[i - 1].is_some() {
                return Err(Error::InvalidMatching(format!(
                    "upper vertex {i} is used twice"
                )));
            }
            targets[i - 1] = Some(j);
        }
        Matching::new(targets)
    }

    pub fn degree(&self) -> usize {
        self.targets.len()
    }

    pub fn target(&self, i: usize) -> Option<usize> {
        self.targets.get(i.wrapping_sub(1)).copied().flatten()
    }

    pub fn targets(&self) -> &[Option<usize>] {
        &self.targets
    }

    /// Edges `(i, pi(i))` sorted by upper endpoint.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.targets
            .iter()
            .enumerate()
            .filter_map(|(i, t)| t.map(|j| (i + 1, j)))
    }

    /// Number of edges, `e(pi)`.
    pub fn edge_count(&self) -> usize {
        self.targets.iter().filter(|t| t.is_some()).count()
    }

    pub fn is_perfect(&self) -> bool {
        self.targets.iter().all(Option::is_some)
    }

    /// The permutation of a perfect matching.
    pub fn to_permutation(&self) -> Option<Permutation> {
        let images = self.targets.iter().copied().collect::<Option<Vec<_>>>()?;
        Some(Permutation { images })
    }

    /// Number of edge pairs `i < j` with `pi(i) > pi(j)`.
    pub fn crossings(&self) -> u64 {
        let edges: Vec<(usize, usize)> = self.edges().collect();
        let mut count = 0;
        for (a, &(_, ja)) in edges.iter().enumerate() {
            count += edges[a + 1..].iter().filter(|&&(_, jb)| ja > jb).count() as u64;
        }
        count
    }

    /// Blocks cut after every unmatched vertex in each row.
    pub fn block_structure(&self) -> BlockStructure {
        let n = self.degree();
        let upper_cuts: Vec<bool> = self.targets.iter().map(Option::is_none).collect();
        let mut lower_cuts = vec![true; n];
        for (_, j) in self.edges() {
            lower_cuts[j - 1] = false;
        }
        BlockStructure::from_cuts(&upper_cuts, &lower_cuts)
    }

    /// Block difference of the edge at upper vertex `i`.
    pub fn bdiff(&self, i: usize) -> Result<i64> {
        if i == 0 || i > self.degree() {
            return Err(Error::VertexOutOfRange { vertex: i, degree: self.degree() });
        }
        let j = self.target(i).ok_or(Error::UnmatchedVertex(i))?;
        let blocks = self.block_structure();
        Ok(blocks.lower(j) as i64 - blocks.upper(i) as i64)
    }

    /// `(i, bdiff(e_i))` for every edge, by upper endpoint.
    pub fn bdiffs(&self) -> Vec<(usize, i64)> {
        let blocks = self.block_structure();
        self.edges()
            .map(|(i, j)| (i, blocks.lower(j) as i64 - blocks.upper(i) as i64))
            .collect()
    }

    /// Number of block weak excedances.
    pub fn bwex(&self) -> usize {
        self.bdiffs().iter().filter(|(_, d)| *d >= 0).count()
    }

    /// Block weight.
    pub fn bwt(&self) -> u64 {
        weight_of(self.bdiffs().into_iter().map(|(_, d)| d))
    }
}

/// A perfect matching identified with a permutation of `1..=n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    images: Vec<usize>,
}

impl Permutation {
    /// One-line notation: `images[i - 1] = sigma(i)`.
    pub fn new(images: Vec<usize>) -> Result<Self> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &v in &images {
            if v == 0 || v > n || seen[v - 1] {
                return Err(Error::InvalidPermutation(format!(
                    "{images:?} is not a permutation of 1..={n}"
                )));
            }
            seen[v - 1] = true;
        }
        Ok(Permutation { images })
    }

    pub fn identity(n: usize) -> Self {
        Permutation { images: (1..=n).collect() }
    }

    pub fn degree(&self) -> usize {
        self.images.len()
    }

    pub fn image(&self, i: usize) -> usize {
        self.images[i - 1]
    }

    pub fn images(&self) -> &[usize] {
        &self.images
    }

    pub fn as_matching(&self) -> Matching {
        Matching {
            targets: self.images.iter().map(|&j| Some(j)).collect(),
        }
    }

    /// Number of weak excedances, `sigma(i) >= i`.
    pub fn wex(&self) -> usize {
        self.images
            .iter()
            .enumerate()
            .filter(|&(i, &s)| s > i)
            .count()
    }

    /// Permutation crossings: `i < j <= sigma(i) < sigma(j)` or
    /// `sigma(i) < sigma(j) < i < j`.
    pub fn cr(&self) -> u64 {
        let n = self.degree();
        let mut count = 0;
        for i in 1..=n {
            for j in i + 1..=n {
                let (si, sj) = (self.image(i), self.image(j));
                if (j <= si && si < sj) || (si < sj && sj < i) {
                    count += 1;
                }
            }
        }
        count
    }

    /// Matching crossings of the identified perfect matching (inversions).
    pub fn crossings(&self) -> u64 {
        let mut count = 0;
        for (a, &x) in self.images.iter().enumerate() {
            count += self.images[a + 1..].iter().filter(|&&y| x > y).count() as u64;
        }
        count
    }

    /// Weight: `sigma(i) - i` over weak excedances plus `i - sigma(i) - 1`
    /// over the rest.
    pub fn wt(&self) -> u64 {
        weight_of(
            self.images
                .iter()
                .enumerate()
                .map(|(i, &s)| s as i64 - (i as i64 + 1)),
        )
    }

    /// Overlapping pairs, counted over ordered pairs `(i, j)`:
    /// `i < j <= pi(i) < pi(j)` or `pi(j) < pi(i) < j < i`.
    pub fn ov(&self) -> u64 {
        let n = self.degree();
        let mut count = 0;
        for i in 1..=n {
            for j in 1..=n {
                let (pi, pj) = (self.image(i), self.image(j));
                if (i < j && j <= pi && pi < pj) || (pj < pi && pi < j && j < i) {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Advances `c` to the next `k`-subset of `0..n` in lexicographic order.
fn next_combination(c: &mut [usize], n: usize) -> bool {
    let k = c.len();
    for pos in (0..k).rev() {
        if c[pos] < n - k + pos {
            c[pos] += 1;
            for later in pos + 1..k {
                c[later] = c[later - 1] + 1;
            }
            return true;
        }
    }
    false
}

/// Advances `p` to the next permutation in lexicographic order.
pub(crate) fn next_permutation<T: Ord>(p: &mut [T]) -> bool {
    if p.len() < 2 {
        return false;
    }
    let mut i = p.len() - 1;
    while i > 0 && p[i - 1] >= p[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = p.len() - 1;
    while p[j] <= p[i - 1] {
        j -= 1;
    }
    p.swap(i - 1, j);
    p[i..].reverse();
    true
}

/// All matchings of a degree.
///
/// Ordered by edge count, then matched upper subset, then matched lower
/// subset (both lexicographic), then bijection in lexicographic one-line
/// order.
#[derive(Debug, Clone)]
pub struct Matchings {
    n: usize,
    upper: Vec<usize>,
    lower: Vec<usize>,
    bijection: Vec<usize>,
    done: bool,
}

impl Matchings {
    fn new(n: usize) -> Self {
        Matchings {
            n,
            upper: Vec::new(),
            lower: Vec::new(),
            bijection: Vec::new(),
            done: false,
        }
    }

    fn reset_for(&mut self, k: usize) {
        self.upper = (0..k).collect();
        self.lower = (0..k).collect();
        self.bijection = (0..k).collect();
    }

    fn advance(&mut self) {
        if next_permutation(&mut self.bijection) {
            return;
        }
        let k = self.upper.len();
        self.bijection = (0..k).collect();
        if next_combination(&mut self.lower, self.n) {
            return;
        }
        self.lower = (0..k).collect();
        if next_combination(&mut self.upper, self.n) {
            return;
        }
        if k == self.n {
            self.done = true;
        } else {
            self.reset_for(k + 1);
        }
    }
}

impl Iterator for Matchings {
    type Item = Matching;

    fn next(&mut self) -> Option<Matching> {
        if self.done {
            return None;
        }
        let mut targets = vec![None; self.n];
        for (slot, &b) in self.bijection.iter().enumerate() {
            targets[self.upper[slot]] = Some(self.lower[b] + 1);
        }
        self.advance();
        Some(Matching { targets })
    }
}

/// All permutations of `1..=n` in lexicographic order.
#[derive(Debug, Clone)]
pub struct Permutations {
    current: Option<Vec<usize>>,
}

impl Iterator for Permutations {
    type Item = Permutation;

    fn next(&mut self) -> Option<Permutation> {
        let images = self.current.take()?;
        let mut following = images.clone();
        if next_permutation(&mut following) {
            self.current = Some(following);
        }
        Some(Permutation { images })
    }
}

pub(crate) fn permutations_unchecked(n: usize) -> Permutations {
    Permutations {
        current: Some((1..=n).collect()),
    }
}

/// Every matching of degree `n`, each exactly once.
pub fn enumerate_matchings(n: usize, limits: &Limits) -> Result<Matchings> {
    check("matching degree", n, limits.matchings)?;
    Ok(Matchings::new(n))
}

/// Every perfect matching of degree `n`, as permutations in lexicographic
/// order.
pub fn enumerate_perfect_matchings(n: usize, limits: &Limits) -> Result<Permutations> {
    check("perfect matching degree", n, limits.matchings)?;
    Ok(permutations_unchecked(n))
}
