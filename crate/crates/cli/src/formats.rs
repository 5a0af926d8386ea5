//! JSON schemas for polynomials, matchings, marked perfect matchings and
//! derangements.

use qlag_core::involution::PhiTrace;
use qlag_core::marked::{Composition, MarkedPM, MarkedStats};
use qlag_core::matching::{Matching, Permutation};
use qlag_core::{Monomial, Poly3};
use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum FormatError {
    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
    #[error(transparent)]
    Core(#[from] qlag_core::Error),
}

/// One term of a polynomial.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TermJson {
    pub x: u32,
    pub y: u32,
    pub q: u32,
    pub coeff: i64,
}

/// Terms in canonical order.
pub fn poly_to_json(p: &Poly3) -> Vec<TermJson> {
    p.terms()
        .map(|(m, coeff)| TermJson { x: m.x, y: m.y, q: m.q, coeff })
        .collect()
}

/// Repeated monomials are summed; zero coefficients are dropped.
pub fn poly_from_json(terms: &[TermJson]) -> Result<Poly3, FormatError> {
    Ok(Poly3::from_terms(terms.iter().map(|t| (Monomial::new(t.x, t.y, t.q), t.coeff)))?)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MatchingJson {
    pub degree: usize,
    /// 1-based `[upper, lower]` pairs sorted by upper endpoint.
    pub edges: Vec<[usize; 2]>,
}

impl From<&Matching> for MatchingJson {
    fn from(m: &Matching) -> Self {
        MatchingJson {
            degree: m.degree(),
            edges: m.edges().map(|(i, j)| [i, j]).collect(),
        }
    }
}

impl TryFrom<&MatchingJson> for Matching {
    type Error = FormatError;

    fn try_from(m: &MatchingJson) -> Result<Self, FormatError> {
        let edges: Vec<(usize, usize)> = m.edges.iter().map(|&[i, j]| (i, j)).collect();
        Ok(Matching::from_edges(m.degree, &edges)?)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MarkedJson {
    pub composition: Vec<usize>,
    pub edges: Vec<[usize; 2]>,
    /// Upper endpoints of the marked edges, ascending.
    pub marked: Vec<usize>,
}

impl From<&MarkedPM> for MarkedJson {
    fn from(m: &MarkedPM) -> Self {
        MarkedJson {
            composition: m.composition().parts().to_vec(),
            edges: (1..=m.degree()).map(|i| [i, m.target(i)]).collect(),
            marked: m.marked_edges(),
        }
    }
}

impl TryFrom<&MarkedJson> for MarkedPM {
    type Error = FormatError;

    fn try_from(m: &MarkedJson) -> Result<Self, FormatError> {
        let composition = Composition::new(m.composition.clone())?;
        let n = composition.total();
        let edges: Vec<(usize, usize)> = m.edges.iter().map(|&[i, j]| (i, j)).collect();
        let matching = Matching::from_edges(n, &edges)?;
        let perm = matching.to_permutation().ok_or_else(|| {
            qlag_core::Error::InvalidMarked(format!(
                "{} edges do not form a perfect matching of degree {n}",
                edges.len()
            ))
        })?;
        Ok(MarkedPM::new(composition, perm, &m.marked)?)
    }
}

pub fn marked_from_str(s: &str) -> Result<MarkedPM, FormatError> {
    let dto: MarkedJson = serde_json::from_str(s)?;
    MarkedPM::try_from(&dto)
}

/// A derangement in one-line notation with its statistics.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DerangementJson {
    pub permutation: Vec<usize>,
    pub wex: usize,
    pub cr: u64,
}

impl From<&Permutation> for DerangementJson {
    fn from(p: &Permutation) -> Self {
        DerangementJson {
            permutation: p.images().to_vec(),
            wex: p.wex(),
            cr: p.cr(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerangementsJson {
    pub composition: Vec<usize>,
    pub count: usize,
    pub derangements: Vec<DerangementJson>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StatsJson {
    pub e: usize,
    pub bwex: usize,
    pub cross: i64,
    pub wt: u64,
    /// Block difference of every edge, indexed by upper endpoint.
    pub bdiffs: Vec<i64>,
}

impl StatsJson {
    pub fn of(m: &MarkedPM) -> Self {
        let MarkedStats { e, bwex, cross, wt } = m.stats();
        StatsJson { e, bwex, cross, wt, bdiffs: m.bdiffs() }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct TraceJson {
    pub case: String,
    pub toggled_edge: Option<usize>,
    pub chosen_i: Option<usize>,
    pub chosen_i_prime: Option<usize>,
}

impl From<&PhiTrace> for TraceJson {
    fn from(t: &PhiTrace) -> Self {
        TraceJson {
            case: t.case.as_str().to_string(),
            toggled_edge: t.toggled_edge,
            chosen_i: t.chosen_i,
            chosen_i_prime: t.chosen_i_prime,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PhiJson {
    pub input: MarkedJson,
    pub input_stats: StatsJson,
    pub result: MarkedJson,
    pub result_stats: StatsJson,
    pub trace: TraceJson,
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn polynomial_schema() {
        let p: Poly3 = "x^2 - y*q*x + 3".parse().unwrap();
        let json = serde_json::to_string(&poly_to_json(&p)).unwrap();
        assert_eq!(
            json,
            r#"[{"x":2,"y":0,"q":0,"coeff":1},{"x":1,"y":1,"q":1,"coeff":-1},{"x":0,"y":0,"q":0,"coeff":3}]"#
        );
        let back: Vec<TermJson> = serde_json::from_str(&json).unwrap();
        assert_eq!(poly_from_json(&back).unwrap(), p);
        assert_eq!(serde_json::to_string(&poly_to_json(&Poly3::zero())).unwrap(), "[]");
    }

    #[test]
    fn marked_schema() {
        let text = r#"{"composition":[3,2],"edges":[[1,3],[2,4],[3,2],[4,1],[5,5]],"marked":[2,4]}"#;
        let m = marked_from_str(text).unwrap();
        assert_eq!(serde_json::to_string(&MarkedJson::from(&m)).unwrap(), text);
        assert!(marked_from_str(r#"{"composition":[3,2],"edges":[[1,3]],"marked":[]}"#).is_err());
        assert!(marked_from_str(r#"{"composition":[2],"edges":[[1,2],[2,1]],"marked":[],"x":1}"#).is_err());
    }

    #[test]
    fn matching_schema() {
        let m = Matching::from_edges(4, &[(3, 1), (1, 4)]).unwrap();
        let dto = MatchingJson::from(&m);
        assert_eq!(serde_json::to_string(&dto).unwrap(), r#"{"degree":4,"edges":[[1,4],[3,1]]}"#);
        assert_eq!(Matching::try_from(&dto).unwrap(), m);
    }
}
