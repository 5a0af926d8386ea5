//! The sign-reversing involution on marked perfect matchings and exhaustive
//! checks of the facts it depends on.
//!
//! Toggling the mark of a homogeneous edge `e_i` changes the block difference
//! of exactly the edges that cross `e_i`: by `+1` for an edge crossing from
//! the left and `-1` for one crossing from the right when `e_i` becomes
//! marked, and the opposite when it becomes unmarked. An edge is convertible
//! when toggling it leaves every other edge's block weak excedance status
//! unchanged.

use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use crate::limits::check;
use crate::marked::{enumerate_marked, Composition, MarkedPM};
use crate::{Error, Limits, Poly3, Result};

/// Which branch of the involution fired.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CaseTag {
    /// No homogeneous edges; the structure is fixed.
    Case0,
    /// Every homogeneous edge has nonnegative block difference.
    Case1,
    /// The leftmost negative homogeneous edge is convertible.
    Case2a,
    /// The leftmost negative homogeneous edge is not convertible.
    Case2b,
}

impl CaseTag {
    pub fn as_str(&self) -> &'static str {
        match self {
            CaseTag::Case0 => "Case0",
            CaseTag::Case1 => "Case1",
            CaseTag::Case2a => "Case2a",
            CaseTag::Case2b => "Case2b",
        }
    }
}

impl fmt::Display for CaseTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

/// How the involution chose its edge.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PhiTrace {
    pub case: CaseTag,
    /// Upper endpoint of the toggled edge.
    pub toggled_edge: Option<usize>,
    /// Case 1: edge with leftmost lower endpoint. Case 2: leftmost edge with
    /// negative block difference.
    pub chosen_i: Option<usize>,
    /// Case 2-(b) only: the crossing edge that is toggled instead.
    pub chosen_i_prime: Option<usize>,
}

/// `e_j` crosses `e_i` from the left: `j < i` and `pi(j) > pi(i)`.
pub fn crosses_from_left(m: &MarkedPM, j: usize, i: usize) -> bool {
    let n = m.degree();
    (1..=n).contains(&i) && (1..=n).contains(&j) && j < i && m.target(j) > m.target(i)
}

fn convertible_with(m: &MarkedPM, bdiffs: &[i64], i: usize) -> bool {
    let marked = m.is_marked(i);
    (1..=m.degree()).all(|j| {
        let d = bdiffs[j - 1];
        if crosses_from_left(m, j, i) {
            if marked {
                d > 0
            } else {
                d >= 0
            }
        } else if crosses_from_left(m, i, j) {
            if marked {
                d < -1
            } else {
                d <= -1
            }
        } else {
            true
        }
    })
}

/// Whether the homogeneous edge `e_i` is convertible in `m`.
pub fn is_convertible(m: &MarkedPM, i: usize) -> Result<bool> {
    if i == 0 || i > m.degree() {
        return Err(Error::VertexOutOfRange { vertex: i, degree: m.degree() });
    }
    if !m.is_edge_homogeneous(i) {
        return Err(Error::InhomogeneousEdge(i));
    }
    Ok(convertible_with(m, &m.bdiffs(), i))
}

fn choose(m: &MarkedPM, bdiffs: &[i64]) -> Result<PhiTrace> {
    let homogeneous = m.homogeneous_edges();
    if homogeneous.is_empty() {
        return Ok(PhiTrace {
            case: CaseTag::Case0,
            toggled_edge: None,
            chosen_i: None,
            chosen_i_prime: None,
        });
    }
    let first_negative = homogeneous.iter().copied().find(|&j| bdiffs[j - 1] < 0);
    let Some(i) = first_negative else {
        let i = homogeneous
            .iter()
            .copied()
            .min_by_key(|&j| m.target(j))
            .expect("nonempty");
        return Ok(PhiTrace {
            case: CaseTag::Case1,
            toggled_edge: Some(i),
            chosen_i: Some(i),
            chosen_i_prime: None,
        });
    };
    if convertible_with(m, bdiffs, i) {
        return Ok(PhiTrace {
            case: CaseTag::Case2a,
            toggled_edge: Some(i),
            chosen_i: Some(i),
            chosen_i_prime: None,
        });
    }
    let i_prime = homogeneous
        .iter()
        .copied()
        .filter(|&j| j < i && bdiffs[j - 1] == 0 && crosses_from_left(m, j, i))
        .max()
        .ok_or_else(|| {
            Error::Inconsistent(format!(
                "no zero-difference homogeneous edge crosses e_{i} from the left in {m:?}"
            ))
        })?;
    Ok(PhiTrace {
        case: CaseTag::Case2b,
        toggled_edge: Some(i_prime),
        chosen_i: Some(i),
        chosen_i_prime: Some(i_prime),
    })
}

/// Applies the involution once and reports which case fired.
pub fn phi(m: &MarkedPM) -> Result<(MarkedPM, PhiTrace)> {
    let trace = choose(m, &m.bdiffs())?;
    let image = match trace.toggled_edge {
        Some(e) => m.toggled(e)?,
        None => m.clone(),
    };
    Ok((image, trace))
}

/// Block differences after toggling `e_i`, updated incrementally from the
/// current ones instead of being recomputed from the blocks.
pub fn toggled_bdiffs(m: &MarkedPM, bdiffs: &[i64], i: usize) -> Vec<i64> {
    let step = if m.is_marked(i) { -1 } else { 1 };
    (1..=m.degree())
        .map(|j| {
            let d = bdiffs[j - 1];
            if crosses_from_left(m, j, i) {
                d + step
            } else if crosses_from_left(m, i, j) {
                d - step
            } else {
                d
            }
        })
        .collect()
}

/// Whether the incremental update of block differences after toggling `e_i`
/// agrees with recomputing them from scratch.
pub fn bdiff_update_check(m: &MarkedPM, i: usize) -> Result<bool> {
    let toggled = m.toggled(i)?;
    Ok(toggled_bdiffs(m, &m.bdiffs(), i) == toggled.bdiffs())
}

/// A property checked on every marked perfect matching of a composition.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaCheck {
    /// An edge crossing another from the left has block difference at least
    /// as large, strictly if either edge is marked.
    CrossingOrder,
    /// The leftmost negative homogeneous edge is marked when not convertible.
    MinimalNegativeMarked,
    /// The swap candidate set used by Case 2-(b) is nonempty.
    SwapCandidateExists,
    /// The edge toggled by the involution is convertible.
    ToggledConvertible,
    /// Applying the involution twice is the identity.
    Involutive,
    /// `bwex` is preserved.
    BwexPreserved,
    /// `wt + cross` is preserved.
    WeightPreserved,
    /// A non-fixed structure changes `e` by exactly one.
    SignReversing,
    /// Fixed points are exactly the structures without homogeneous edges.
    FixedPointsAreDerangements,
    /// Convertibility of an edge is unchanged by toggling that edge.
    ConvertibilitySymmetric,
    /// Incremental block difference updates agree with recomputation.
    IncrementalBdiff,
    /// The two signed terms of every two-element orbit cancel.
    OrbitCancels,
    /// The signed sum equals the sum over fixed points.
    FixedPointSum,
}

impl LemmaCheck {
    pub const ALL: [LemmaCheck; 13] = [
        LemmaCheck::CrossingOrder,
        LemmaCheck::MinimalNegativeMarked,
        LemmaCheck::SwapCandidateExists,
        LemmaCheck::ToggledConvertible,
        LemmaCheck::Involutive,
        LemmaCheck::BwexPreserved,
        LemmaCheck::WeightPreserved,
        LemmaCheck::SignReversing,
        LemmaCheck::FixedPointsAreDerangements,
        LemmaCheck::ConvertibilitySymmetric,
        LemmaCheck::IncrementalBdiff,
        LemmaCheck::OrbitCancels,
        LemmaCheck::FixedPointSum,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            LemmaCheck::CrossingOrder => "crossing-order",
            LemmaCheck::MinimalNegativeMarked => "minimal-negative-marked",
            LemmaCheck::SwapCandidateExists => "swap-candidate-exists",
            LemmaCheck::ToggledConvertible => "toggled-convertible",
            LemmaCheck::Involutive => "involutive",
            LemmaCheck::BwexPreserved => "bwex-preserved",
            LemmaCheck::WeightPreserved => "weight-preserved",
            LemmaCheck::SignReversing => "sign-reversing",
            LemmaCheck::FixedPointsAreDerangements => "fixed-points-are-derangements",
            LemmaCheck::ConvertibilitySymmetric => "convertibility-symmetric",
            LemmaCheck::IncrementalBdiff => "incremental-bdiff",
            LemmaCheck::OrbitCancels => "orbit-cancels",
            LemmaCheck::FixedPointSum => "fixed-point-sum",
        }
    }
}

/// First counterexample found for one check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaFailure {
    pub check: LemmaCheck,
    pub structure: Option<MarkedPM>,
    pub detail: String,
}

/// Outcome of running every check over one composition.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LemmaReport {
    pub composition: Composition,
    pub structures_checked: u64,
    /// Number of two-element orbits.
    pub orbits: u64,
    pub fixed_points: u64,
    pub signed_total: Poly3,
    pub fixed_point_sum: Poly3,
    /// At most one failure per check, the first one encountered.
    pub failures: Vec<LemmaFailure>,
}

impl LemmaReport {
    pub fn passed(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, check: LemmaCheck, m: Option<&MarkedPM>, detail: String) {
        if self.failures.iter().all(|f| f.check != check) {
            self.failures.push(LemmaFailure {
                check,
                structure: m.cloned(),
                detail,
            });
        }
    }
}

/// Exhaustively checks the involution on every marked perfect matching of
/// `c`. Counterexamples are collected in the report, not returned as errors;
/// only limit and arithmetic failures are errors.
pub fn verify_lemmas(c: &Composition, limits: &Limits) -> Result<LemmaReport> {
    check("marked perfect matching degree", c.total(), limits.marked)?;
    let mut report = LemmaReport {
        composition: c.clone(),
        structures_checked: 0,
        orbits: 0,
        fixed_points: 0,
        signed_total: Poly3::zero(),
        fixed_point_sum: Poly3::zero(),
        failures: Vec::new(),
    };
    let mut paired = 0u64;
    for m in enumerate_marked(c, limits)? {
        report.structures_checked += 1;
        check_one(&m, &mut report, &mut paired)?;
    }
    report.orbits = paired / 2;
    if report.signed_total != report.fixed_point_sum {
        let detail = format!(
            "signed sum {} differs from fixed-point sum {}",
            report.signed_total, report.fixed_point_sum
        );
        report.fail(LemmaCheck::FixedPointSum, None, detail);
    }
    report.failures.sort_by_key(|f| f.check);
    Ok(report)
}

fn check_one(m: &MarkedPM, report: &mut LemmaReport, paired: &mut u64) -> Result<()> {
    let n = m.degree();
    let bdiffs = m.bdiffs();
    let homogeneous = m.homogeneous_edges();
    let term = m.signed_term()?;
    report.signed_total.add_assign(&term)?;

    for a in 1..=n {
        for b in a + 1..=n {
            if !crosses_from_left(m, a, b) {
                continue;
            }
            let (da, db) = (bdiffs[a - 1], bdiffs[b - 1]);
            let strict = m.is_marked(a) || m.is_marked(b);
            if da < db || (strict && da == db) {
                let detail = format!("bdiff(e_{a}) = {da}, bdiff(e_{b}) = {db}, strict = {strict}");
                report.fail(LemmaCheck::CrossingOrder, Some(m), detail);
            }
        }
    }

    for &h in &homogeneous {
        let toggled = m.toggled(h)?;
        if convertible_with(m, &bdiffs, h) != convertible_with(&toggled, &toggled.bdiffs(), h) {
            report.fail(
                LemmaCheck::ConvertibilitySymmetric,
                Some(m),
                format!("convertibility of e_{h} changes when it is toggled"),
            );
        }
        if toggled_bdiffs(m, &bdiffs, h) != toggled.bdiffs() {
            report.fail(
                LemmaCheck::IncrementalBdiff,
                Some(m),
                format!("incremental update disagrees after toggling e_{h}"),
            );
        }
    }

    let (image, trace) = match phi(m) {
        Ok(result) => result,
        Err(Error::Inconsistent(detail)) => {
            report.fail(LemmaCheck::SwapCandidateExists, Some(m), detail);
            return Ok(());
        }
        Err(e) => return Err(e),
    };

    if trace.case == CaseTag::Case2b {
        let i = trace.chosen_i.expect("Case 2 records i");
        if !m.is_marked(i) {
            report.fail(
                LemmaCheck::MinimalNegativeMarked,
                Some(m),
                format!("e_{i} is not convertible but unmarked"),
            );
        }
        if trace.chosen_i_prime.is_none_or(|ip| ip >= i) {
            report.fail(
                LemmaCheck::SwapCandidateExists,
                Some(m),
                format!("swap candidate {:?} is not left of e_{i}", trace.chosen_i_prime),
            );
        }
    }

    let fixed = image == *m;
    if fixed != homogeneous.is_empty() {
        report.fail(
            LemmaCheck::FixedPointsAreDerangements,
            Some(m),
            format!("fixed = {fixed}, homogeneous edges = {homogeneous:?}"),
        );
    }
    if fixed {
        report.fixed_points += 1;
        report.fixed_point_sum.add_assign(&term)?;
        return Ok(());
    }

    let toggled = trace.toggled_edge.expect("non-fixed structures toggle an edge");
    if !convertible_with(m, &bdiffs, toggled) {
        report.fail(
            LemmaCheck::ToggledConvertible,
            Some(m),
            format!("{} toggled e_{toggled}, which is not convertible", trace.case),
        );
    }

    match phi(&image) {
        Ok((back, _)) if back == *m => *paired += 1,
        Ok((back, _)) => report.fail(
            LemmaCheck::Involutive,
            Some(m),
            format!("image {image:?} maps to {back:?}"),
        ),
        Err(Error::Inconsistent(detail)) => {
            report.fail(LemmaCheck::SwapCandidateExists, Some(&image), detail)
        }
        Err(e) => return Err(e),
    }

    let (before, after) = (m.stats(), image.stats());
    if before.bwex != after.bwex {
        report.fail(
            LemmaCheck::BwexPreserved,
            Some(m),
            format!("bwex {} becomes {}", before.bwex, after.bwex),
        );
    }
    if before.q_exponent()? != after.q_exponent()? {
        report.fail(
            LemmaCheck::WeightPreserved,
            Some(m),
            format!("wt + cross {:?} becomes {:?}", before.q_exponent(), after.q_exponent()),
        );
    }
    if before.e.abs_diff(after.e) != 1 {
        report.fail(
            LemmaCheck::SignReversing,
            Some(m),
            format!("e {} becomes {}", before.e, after.e),
        );
    }
    if !term.add(&image.signed_term()?)?.is_zero() {
        report.fail(
            LemmaCheck::OrbitCancels,
            Some(m),
            format!("terms {} and {} do not cancel", term, image.signed_term()?),
        );
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::marked::compositions_of;
    use crate::matching::Permutation;

    fn marked(c: &str, images: &[usize], marks: &[usize]) -> MarkedPM {
        MarkedPM::new(
            c.parse().unwrap(),
            Permutation::new(images.to_vec()).unwrap(),
            marks,
        )
        .unwrap()
    }

    fn case1_example() -> MarkedPM {
        marked("3,2", &[3, 4, 2, 1, 5], &[2, 4])
    }

    fn case2a_example() -> MarkedPM {
        marked("3,4", &[2, 1, 6, 5, 7, 4, 3], &[3, 5, 6, 7])
    }

    fn case2b_example() -> MarkedPM {
        marked("2,5", &[2, 3, 1, 7, 5, 4, 6], &[2, 3, 4, 6])
    }

    fn figure_marked() -> MarkedPM {
        marked("2,3,2", &[2, 1, 4, 7, 3, 6, 5], &[2, 4, 7])
    }

    #[test]
    fn crossing_from_the_left() {
        let m = figure_marked();
        assert!(crosses_from_left(&m, 1, 2));
        assert!(!crosses_from_left(&m, 2, 1));
        assert!(!crosses_from_left(&m, 3, 3));
        let id = marked("2", &[1, 2], &[]);
        assert!(!crosses_from_left(&id, 1, 2));
        assert!(!crosses_from_left(&id, 0, 9));
    }

    #[test]
    fn figure_block_differences() {
        assert_eq!(case1_example().bdiffs(), [1, 1, 0, -1, 0]);
        let m = case2a_example();
        let d = m.bdiffs();
        for (i, expected) in [(1, 0), (2, 0), (4, 1), (5, 2), (6, -1)] {
            assert_eq!(d[i - 1], expected, "e_{i}");
        }
        let m = case2b_example();
        let d = m.bdiffs();
        for (i, expected) in [(1, 1), (4, 1), (5, 0), (6, -1), (7, -1)] {
            assert_eq!(d[i - 1], expected, "e_{i}");
        }
    }

    #[test]
    fn case1_figure() {
        let (image, trace) = phi(&case1_example()).unwrap();
        assert_eq!(trace.case, CaseTag::Case1);
        assert_eq!(trace.toggled_edge, Some(3));
        assert_eq!(image.target(3), 2);
        assert!(image.is_marked(3));
        assert_eq!(image.bdiffs()[0], 2);
    }

    #[test]
    fn case2a_figure() {
        let m = case2a_example();
        assert_eq!(is_convertible(&m, 6), Ok(true));
        let (image, trace) = phi(&m).unwrap();
        assert_eq!(trace.case, CaseTag::Case2a);
        assert_eq!(trace.toggled_edge, Some(6));
        assert_eq!(image.target(6), 4);
        assert!(!image.is_marked(6));
        let d = image.bdiffs();
        assert_eq!((d[0], d[1], d[3], d[4], d[5]), (0, 0, 0, 1, -1));
    }

    #[test]
    fn case2b_figure() {
        let m = case2b_example();
        assert_eq!(is_convertible(&m, 6), Ok(false));
        let (image, trace) = phi(&m).unwrap();
        assert_eq!(trace.case, CaseTag::Case2b);
        assert_eq!(trace.chosen_i, Some(6));
        assert_eq!(trace.chosen_i_prime, Some(5));
        assert_eq!(trace.toggled_edge, Some(5));
        assert_eq!(image.target(5), 5);
        assert!(image.is_marked(5));
    }

    #[test]
    fn convertibility_edge_cases() {
        // A lone homogeneous edge crossed by nothing.
        let m = marked("1,1", &[1, 2], &[]);
        assert_eq!(is_convertible(&m, 1), Ok(true));
        let swap = marked("1,1", &[2, 1], &[1, 2]);
        assert_eq!(is_convertible(&swap, 1), Err(Error::InhomogeneousEdge(1)));
        assert!(is_convertible(&swap, 3).is_err());
    }

    #[test]
    fn incremental_updates_on_figure() {
        let m = figure_marked();
        for i in m.homogeneous_edges() {
            assert_eq!(bdiff_update_check(&m, i), Ok(true));
        }
        let lone = marked("1,2", &[1, 2, 3], &[2, 3]);
        assert_eq!(bdiff_update_check(&lone, 1), Ok(true));
        assert_eq!(toggled_bdiffs(&lone, &lone.bdiffs(), 1), lone.bdiffs());
        assert!(bdiff_update_check(&marked("1,1", &[2, 1], &[1, 2]), 1).is_err());
    }

    #[test]
    fn incremental_updates_exhaustive() {
        let limits = Limits::default();
        for n in 1..=5 {
            for c in compositions_of(n) {
                for m in enumerate_marked(&c, &limits).unwrap() {
                    for i in m.homogeneous_edges() {
                        assert_eq!(bdiff_update_check(&m, i), Ok(true), "{m:?} e_{i}");
                    }
                }
            }
        }
    }

    #[test]
    fn two_singletons_pairing() {
        let id = |marks: &[usize]| marked("1,1", &[1, 2], marks);
        assert_eq!(phi(&id(&[])).unwrap().0, id(&[1]));
        assert_eq!(phi(&id(&[1])).unwrap().0, id(&[]));
        assert_eq!(phi(&id(&[2])).unwrap().0, id(&[1, 2]));
        assert_eq!(phi(&id(&[1, 2])).unwrap().0, id(&[2]));
        let swap = marked("1,1", &[2, 1], &[1, 2]);
        let (image, trace) = phi(&swap).unwrap();
        assert_eq!(image, swap);
        assert_eq!(trace.case, CaseTag::Case0);
        assert_eq!(trace.toggled_edge, None);
    }

    #[test]
    fn single_part_has_no_fixed_points() {
        let limits = Limits::default();
        for n in 1..=5 {
            let report = verify_lemmas(&Composition::new(alloc::vec::Vec::from([n])).unwrap(), &limits).unwrap();
            assert!(report.passed(), "{:?}", report.failures);
            assert_eq!(report.fixed_points, 0);
            assert!(report.signed_total.is_zero());
            assert_eq!(report.orbits * 2, report.structures_checked);
        }
    }

    #[test]
    fn figure_composition_passes() {
        let report = verify_lemmas(&"2,3,2".parse().unwrap(), &Limits::default()).unwrap();
        assert!(report.passed(), "{:?}", report.failures);
        assert_eq!(report.fixed_points + report.orbits * 2, report.structures_checked);
        assert_eq!(report.fixed_point_sum, report.signed_total);
    }

    #[test]
    fn report_records_corrupted_checks() {
        let mut report = LemmaReport {
            composition: "1".parse().unwrap(),
            structures_checked: 0,
            orbits: 0,
            fixed_points: 0,
            signed_total: Poly3::zero(),
            fixed_point_sum: Poly3::zero(),
            failures: Vec::new(),
        };
        report.fail(LemmaCheck::Involutive, None, String::from("first"));
        report.fail(LemmaCheck::Involutive, None, String::from("second"));
        assert_eq!(report.failures.len(), 1);
        assert_eq!(report.failures[0].detail, "first");
        assert!(!report.passed());
    }
}
