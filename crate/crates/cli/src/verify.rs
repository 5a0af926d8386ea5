//! Timed exhaustive verification suites.

use std::time::Instant;

use qlag_core::involution::{verify_lemmas, LemmaReport};
use qlag_core::laguerre::{
    laguerre_combinatorial, laguerre_recurrence, linearize_functional, moment_matching,
    moment_motzkin, moment_permutation,
};
use qlag_core::marked::{compositions_of, derangement_gf, signed_sum};
use qlag_core::matching::enumerate_perfect_matchings;
use qlag_core::{Limits, Poly3, Result};
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use crate::formats::{poly_to_json, MarkedJson};

#[derive(Debug, Clone, Copy, PartialEq, Eq, clap::ValueEnum)]
pub enum Suite {
    /// Overlapping pairs equal weight minus crossings on every permutation.
    LemmaOv,
    /// Recurrence and signed matching expansion give the same polynomial.
    LaguerreEq,
    /// Permutation, matching and Motzkin moments agree.
    MomentsEq,
    /// Every involution property on every composition.
    Involution,
    /// Functional, signed-sum and derangement linearization agree.
    Linearization,
}

impl Suite {
    pub fn name(&self) -> &'static str {
        match self {
            Suite::LemmaOv => "lemma-ov",
            Suite::LaguerreEq => "laguerre-eq",
            Suite::MomentsEq => "moments-eq",
            Suite::Involution => "involution",
            Suite::Linearization => "linearization",
        }
    }

    pub fn default_max_n(&self) -> usize {
        match self {
            Suite::Involution => 6,
            _ => 7,
        }
    }

    /// Smallest size covered.
    pub fn min_n(&self) -> usize {
        match self {
            Suite::Involution | Suite::Linearization => 1,
            _ => 0,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct VerifyReport {
    pub suite: &'static str,
    pub min_n: usize,
    pub max_n: usize,
    pub pass: bool,
    /// Present whenever `pass` is false.
    pub counterexample: Option<Value>,
    pub wall_time_secs: f64,
    pub details: Value,
}

/// Runs `suite` for sizes up to `max_n`, with every limit raised to `max_n`.
pub fn run_suite(suite: Suite, max_n: usize, limits: Limits) -> Result<VerifyReport> {
    let limits = limits.at_least(max_n);
    let start = Instant::now();
    let range = suite.min_n()..=max_n;
    let (counterexample, details) = match suite {
        Suite::LemmaOv => lemma_ov(range, &limits)?,
        Suite::LaguerreEq => laguerre_eq(range, &limits)?,
        Suite::MomentsEq => moments_eq(range, &limits)?,
        Suite::Involution => involution(range, &limits)?,
        Suite::Linearization => linearization(range, &limits)?,
    };
    Ok(VerifyReport {
        suite: suite.name(),
        min_n: suite.min_n(),
        max_n,
        pass: counterexample.is_none(),
        counterexample,
        wall_time_secs: start.elapsed().as_secs_f64(),
        details,
    })
}

type Outcome = Result<(Option<Value>, Value)>;

fn lemma_ov(range: std::ops::RangeInclusive<usize>, limits: &Limits) -> Outcome {
    let mut checked = Vec::new();
    for n in range {
        let mut count = 0u64;
        for p in enumerate_perfect_matchings(n, limits)? {
            count += 1;
            let (ov, wt, cross) = (p.ov(), p.wt(), p.crossings());
            if ov + cross != wt || ov != p.cr() {
                let cx = json!({"permutation": p.images(), "ov": ov, "wt": wt, "cross": cross, "cr": p.cr()});
                return Ok((Some(cx), json!({"checked": checked})));
            }
        }
        checked.push(json!({"n": n, "permutations": count}));
    }
    Ok((None, json!({"checked": checked})))
}

/// Evaluates every route at each size in parallel and reports the first size
/// where they disagree.
fn compare_routes<F>(range: std::ops::RangeInclusive<usize>, routes: &[&str], eval: F) -> Outcome
where
    F: Fn(usize) -> Result<Vec<Poly3>> + Sync,
{
    let sizes: Vec<usize> = range.collect();
    let results = sizes
        .par_iter()
        .map(|&n| eval(n))
        .collect::<Result<Vec<_>>>()?;
    let mut checked = Vec::new();
    for (&n, values) in sizes.iter().zip(&results) {
        if values.iter().any(|v| v != &values[0]) {
            let by_route: serde_json::Map<String, Value> = routes
                .iter()
                .zip(values)
                .map(|(r, v)| (r.to_string(), Value::String(v.to_string())))
                .collect();
            return Ok((Some(json!({"n": n, "values": by_route})), json!({"checked": checked})));
        }
        checked.push(json!({"n": n, "value": values[0].to_string()}));
    }
    Ok((None, json!({"checked": checked})))
}

fn laguerre_eq(range: std::ops::RangeInclusive<usize>, limits: &Limits) -> Outcome {
    compare_routes(range, &["recurrence", "combinatorial"], |n| {
        Ok(vec![laguerre_recurrence(n, limits)?, laguerre_combinatorial(n, limits)?])
    })
}

fn moments_eq(range: std::ops::RangeInclusive<usize>, limits: &Limits) -> Outcome {
    compare_routes(range, &["permutation", "matching", "motzkin"], |n| {
        Ok(vec![
            moment_permutation(n, limits)?,
            moment_matching(n, limits)?,
            moment_motzkin(n, limits)?,
        ])
    })
}

fn report_json(r: &LemmaReport) -> Value {
    let failures: Vec<Value> = r
        .failures
        .iter()
        .map(|f| {
            json!({
                "check": f.check.name(),
                "structure": f.structure.as_ref().map(MarkedJson::from),
                "detail": f.detail,
            })
        })
        .collect();
    json!({
        "composition": r.composition.parts(),
        "structures_checked": r.structures_checked,
        "orbits": r.orbits,
        "fixed_points": r.fixed_points,
        "failures": failures,
    })
}

fn involution(range: std::ops::RangeInclusive<usize>, limits: &Limits) -> Outcome {
    let compositions: Vec<_> = range.flat_map(compositions_of).collect();
    let reports = compositions
        .par_iter()
        .map(|c| verify_lemmas(c, limits))
        .collect::<Result<Vec<_>>>()?;
    let counterexample = reports.iter().find(|r| !r.passed()).map(report_json);
    let details: Vec<Value> = reports.iter().map(report_json).collect();
    Ok((counterexample, Value::Array(details)))
}

fn linearization(range: std::ops::RangeInclusive<usize>, limits: &Limits) -> Outcome {
    let compositions: Vec<_> = range.flat_map(compositions_of).collect();
    let results = compositions
        .par_iter()
        .map(|c| {
            Ok([
                linearize_functional(c.parts(), limits)?,
                signed_sum(c, limits)?,
                derangement_gf(c, limits)?,
            ])
        })
        .collect::<Result<Vec<_>>>()?;
    let mut details = Vec::new();
    for (c, [functional, signed, derangement]) in compositions.iter().zip(&results) {
        if functional != signed || functional != derangement {
            let cx = json!({
                "composition": c.parts(),
                "functional": poly_to_json(functional),
                "signed-sum": poly_to_json(signed),
                "derangement": poly_to_json(derangement),
            });
            return Ok((Some(cx), Value::Array(details)));
        }
        details.push(json!({"composition": c.parts(), "value": functional.to_string()}));
    }
    Ok((None, Value::Array(details)))
}
