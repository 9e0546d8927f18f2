//! Disjunction of events under both calculi.
//!
//! For fuzzy events the exact union possibility follows from the intension
//! geometry: `π(xi ∪ xj) = π(xi) + π(xj) − π(xi ∩ xj)`, where each term is a
//! subsethood of the reference intension. Max is exact when the two concept
//! intensions are nested once projected into the reference, and the additive
//! rule is exact when those projections are disjoint. In every other case max
//! is only a lower bound; [`PairClassReport::max_error`] measures the gap.

use std::fmt;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::intension::{is_exhaustive, subsethood, IntensionSet};
use crate::measures::{prob_event, ProbabilityDistribution};
use crate::scalar::{Rational, Scalar, DEFAULT_TOLERANCE};
use crate::space::{event_algebra, Event, OutcomeLabel, SampleSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum PairClass {
    /// Disjoint events of a random space.
    MutuallyExclusive,
    /// Concept projections into the reference are disjoint.
    ProjectionExclusive,
    /// One concept projection contains the other.
    ProjectionNested,
    General,
}

impl fmt::Display for PairClass {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PairClass::MutuallyExclusive => "mutually-exclusive",
            PairClass::ProjectionExclusive => "projection-exclusive",
            PairClass::ProjectionNested => "projection-nested",
            PairClass::General => "general",
        })
    }
}

/// Classifies two concept intensions relative to the reference `fx`.
///
/// When one projection is empty the pair is both exclusive and nested; it is
/// reported as nested because max is exact there.
pub fn classify_pair(fx: &IntensionSet, fi: &IntensionSet, fj: &IntensionSet) -> Result<PairClass> {
    if fx.measure() == 0 {
        return Err(Error::EmptyReference);
    }
    let pi = fx.intersection(fi)?;
    let pj = fx.intersection(fj)?;
    if pi.is_within(&pj) || pj.is_within(&pi) {
        Ok(PairClass::ProjectionNested)
    } else if pi.intersection(&pj)?.is_empty() {
        Ok(PairClass::ProjectionExclusive)
    } else {
        Ok(PairClass::General)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairClassReport {
    pub class: PairClass,
    pub pi_i: Rational,
    pub pi_j: Rational,
    pub pi_intersection: Rational,
    pub pi_union_exact: Rational,
    /// Value the max operator assigns.
    pub pi_union_max: Rational,
    /// Inclusion–exclusion value `π_i + π_j − π(i ∩ j)`.
    pub pi_union_sum: Rational,
    /// Value the additive (sigma) operator assigns: `π_i + π_j`.
    pub pi_sigma: Rational,
    /// `pi_union_exact − pi_union_max`, never negative.
    pub max_error: Rational,
    /// `pi_sigma − pi_union_exact`, never negative.
    pub sigma_error: Rational,
}

/// Exact union possibility of two concepts, computed by direct subsethood of
/// the union intension and by inclusion–exclusion; the two must agree.
pub fn exact_union_possibility(fx: &IntensionSet, fi: &IntensionSet, fj: &IntensionSet) -> Result<PairClassReport> {
    let class = classify_pair(fx, fi, fj)?;
    let pi_i = subsethood(fx, fi)?;
    let pi_j = subsethood(fx, fj)?;
    let pi_intersection = subsethood(fx, &fi.intersection(fj)?)?;
    let pi_union_exact = subsethood(fx, &fi.union(fj)?)?;
    let pi_union_sum = pi_i + pi_j - pi_intersection;
    if pi_union_exact != pi_union_sum {
        return Err(Error::InternalDisagreement(format!(
            "direct union possibility {pi_union_exact} differs from inclusion–exclusion {pi_union_sum}"
        )));
    }
    let pi_union_max = pi_i.max(pi_j);
    let pi_sigma = pi_i + pi_j;
    Ok(PairClassReport {
        class,
        pi_i,
        pi_j,
        pi_intersection,
        pi_union_exact,
        pi_union_max,
        pi_union_sum,
        pi_sigma,
        max_error: pi_union_exact - pi_union_max,
        sigma_error: pi_sigma - pi_union_exact,
    })
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ProbUnionReport<S: Scalar> {
    pub class: PairClass,
    pub p_a: S,
    pub p_b: S,
    pub p_intersection: S,
    pub p_union: S,
    /// `max(p_A, p_B) ≤ p_union ≤ min(1, p_A + p_B)`.
    pub bounds_ok: bool,
    /// Disjoint events: the union is additive.
    pub additive_case: bool,
    /// One event contains the other, so the union is the max. Of no practical
    /// use on a random space, hence `nested_trivial`.
    pub nested_case: bool,
    pub nested_trivial: bool,
}

pub fn prob_union_report<S: Scalar>(dist: &ProbabilityDistribution<S>, a: &Event, b: &Event) -> Result<ProbUnionReport<S>> {
    let alg = event_algebra(a, b, dist.space())?;
    let p_a = prob_event(dist, a)?;
    let p_b = prob_event(dist, b)?;
    let p_intersection = prob_event(dist, &alg.intersection)?;
    let p_union = prob_event(dist, &alg.union)?;
    let tol = DEFAULT_TOLERANCE;
    if !p_union.close_to(p_a + p_b - p_intersection, tol) {
        return Err(Error::InternalDisagreement(format!(
            "p(A∪B) = {p_union} but inclusion–exclusion gives {}",
            p_a + p_b - p_intersection
        )));
    }
    let bounds_ok = p_a.max_of(p_b).at_most(p_union, tol) && p_union.at_most((p_a + p_b).min_of(S::one()), tol);
    let additive_case = alg.intersection.is_empty() || p_intersection.close_to(S::zero(), tol);
    let contained = a.is_subset(b) || b.is_subset(a);
    let nested_case = contained && p_intersection.close_to(p_a.min_of(p_b), tol);
    let class = if alg.intersection.is_empty() { PairClass::MutuallyExclusive } else { PairClass::General };
    Ok(ProbUnionReport {
        class,
        p_a,
        p_b,
        p_intersection,
        p_union,
        bounds_ok,
        additive_case,
        nested_case,
        nested_trivial: nested_case,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PairEntry {
    pub first: OutcomeLabel,
    pub second: OutcomeLabel,
    pub report: PairClassReport,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MaxitivityReport {
    pub pairs: Vec<PairEntry>,
    /// Every projection-nested pair has zero max error.
    pub nested_pairs_exact: bool,
    pub nested_count: usize,
}

impl MaxitivityReport {
    pub fn pair(&self, a: &str, b: &str) -> Option<&PairEntry> {
        self.pairs.iter().find(|p| {
            (p.first.as_str() == a && p.second.as_str() == b) || (p.first.as_str() == b && p.second.as_str() == a)
        })
    }
}

fn check_concepts(concepts: &[(OutcomeLabel, IntensionSet)]) -> Result<()> {
    if concepts.len() < 2 {
        return Err(Error::TooFewConcepts { needed: 2, got: concepts.len() });
    }
    SampleSpace::fuzzy(concepts.iter().map(|(l, _)| l.as_str().to_string()))?;
    Ok(())
}

/// Reports every concept pair; nested pairs must resolve exactly by max.
pub fn verify_exact_maxitivity(fx: &IntensionSet, concepts: &[(OutcomeLabel, IntensionSet)]) -> Result<MaxitivityReport> {
    if fx.measure() == 0 {
        return Err(Error::EmptyReference);
    }
    check_concepts(concepts)?;
    let mut pairs = Vec::new();
    for i in 0..concepts.len() {
        for j in i + 1..concepts.len() {
            let report = exact_union_possibility(fx, &concepts[i].1, &concepts[j].1)?;
            pairs.push(PairEntry { first: concepts[i].0.clone(), second: concepts[j].0.clone(), report });
        }
    }
    let nested: Vec<_> = pairs.iter().filter(|p| p.report.class == PairClass::ProjectionNested).collect();
    let nested_pairs_exact = nested.iter().all(|p| p.report.max_error == Rational::from_integer(0));
    Ok(MaxitivityReport { nested_count: nested.len(), pairs, nested_pairs_exact })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExtractionReport {
    /// Possibility of the whole space: subsethood of the reference in the
    /// union of every concept intension.
    pub pi_space: Rational,
    pub max_value: Rational,
    pub argmax: OutcomeLabel,
    /// `pi_space = max_value = 1`.
    pub holds: bool,
}

/// For an exhaustive setup, the possibility of the whole space equals the
/// largest elementary possibility, which is 1.
pub fn verify_max_extraction(fx: &IntensionSet, concepts: &[(OutcomeLabel, IntensionSet)]) -> Result<ExtractionReport> {
    check_concepts(concepts)?;
    let refs: Vec<&IntensionSet> = concepts.iter().map(|(_, f)| f).collect();
    if !is_exhaustive(fx, &refs)? {
        return Err(Error::NotExhaustive);
    }
    let mut whole = IntensionSet::empty(fx.universe());
    for f in &refs {
        whole = whole.union(f)?;
    }
    let pi_space = subsethood(fx, &whole)?;
    let mut argmax = 0;
    let mut max_value = Rational::from_integer(0);
    for (i, f) in refs.iter().enumerate() {
        let v = subsethood(fx, f)?;
        if v > max_value {
            max_value = v;
            argmax = i;
        }
    }
    let one = Rational::from_integer(1);
    let holds = pi_space == max_value && max_value == one;
    if !holds {
        return Err(Error::InternalDisagreement(format!(
            "exhaustive setup but π(space) = {pi_space}, max = {max_value}"
        )));
    }
    Ok(ExtractionReport { pi_space, max_value, argmax: concepts[argmax].0.clone(), holds })
}
