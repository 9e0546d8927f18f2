//! Sigma and max calculi over finite sample spaces.
//!
//! Probability lives on random sample spaces and combines disjoint events by
//! addition; possibility lives on fuzzy sample spaces and combines events by
//! maximum. Possibility values here are grounded in concept intensions
//! ([`intension::IntensionSet`]), so every union identity can be computed
//! exactly and checked against an independent brute-force [`oracle`].
//!
//! Module map:
//! - [`space`]: sample spaces, events, the event algebra
//! - [`intension`]: weighted atom sets, subsethood, ellipse rasterization
//! - [`measures`]: distributions, event measures, axiom checks, sampling
//! - [`disjunction`]: pair classification and exact union possibility
//! - [`inference`]: marginals, conditionals, composition, update
//! - [`oracle`]: enumeration-based verifiers and seeded sweeps
//! - [`fixtures`]: named ellipse configurations and random generators

pub mod disjunction;
pub mod error;
pub mod fixtures;
pub mod inference;
pub mod intension;
pub mod measures;
pub mod oracle;
pub mod scalar;
pub mod space;

pub use disjunction::{
    classify_pair, exact_union_possibility, prob_union_report, verify_exact_maxitivity, verify_max_extraction,
    ExtractionReport, MaxitivityReport, PairClass, PairClassReport, PairEntry, ProbUnionReport,
};
pub use error::{Error, Result};
pub use fixtures::{generate_fixture, Concept, Fixture, FixtureName};
pub use inference::{
    bayes_update, compose, condition, marginal, poss_update, recombine, validate_joint, Axis, ConditionalRelation,
    Direction, JointDistribution, JointReport, Marginal,
};
pub use intension::{
    compatibility_distribution, cosine, is_exhaustive, is_fuzzy_setup, rasterize_ellipse, set_algebra, similarity,
    subsethood, Atom, EllipseSpec, Grid, IntensionSet,
};
pub use measures::{
    check_poss_axioms, check_prob_axioms, from_frequencies, Distribution, innocent_prior, poss_event, prob_event, sample,
    Check, EventMeasure, FrequencyCounts, MeasureKind, PossibilityDistribution, ProbabilityDistribution,
};
pub use oracle::OracleVerdict;
pub use scalar::{Rational, Scalar, DEFAULT_TOLERANCE};
pub use space::{enumerate_events, event_algebra, Event, OutcomeLabel, SampleSpace, SpaceKind};
