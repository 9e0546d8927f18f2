//! Brute-force verifiers.
//!
//! Every check here recomputes its ground truth from raw elementary values,
//! raw atom weights, or raw relation entries by explicit enumeration. Nothing
//! calls back into the measure, union, or composition helpers it is checking
//! except to obtain the value under test.
//!
//! The `sweep_*` functions generate seeded random fixtures and run the
//! verifiers over them. Fixture `i` of a sweep is drawn from its own RNG
//! seeded with `seed + i`, so results do not depend on evaluation order and
//! the sweeps run in parallel.

use std::collections::BTreeSet;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::disjunction::{exact_union_possibility, prob_union_report, PairClass};
use crate::error::{Error, Result};
use crate::fixtures::{random_ellipse_triple, random_joint, random_possibility, random_probability, random_relation, space_for};
use crate::inference::{bayes_update, compose, condition, marginal, poss_update, recombine, Axis, ConditionalRelation, Direction};
use crate::intension::{Grid, IntensionSet};
use crate::measures::{EventMeasure, MeasureKind, PossibilityDistribution, ProbabilityDistribution};
use crate::scalar::{Rational, Scalar};
use crate::space::SampleSpace;

/// Largest space whose events are enumerated by [`oracle_event_measures`].
pub const MAX_ORACLE_SPACE: usize = 10;

/// Result of one oracle claim. `witness` is set exactly when `passed` is false.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OracleVerdict {
    pub claim_id: String,
    pub passed: bool,
    pub witness: Option<String>,
}

impl OracleVerdict {
    pub fn pass(claim_id: impl Into<String>) -> Self {
        OracleVerdict { claim_id: claim_id.into(), passed: true, witness: None }
    }

    pub fn fail(claim_id: impl Into<String>, witness: impl Into<String>) -> Self {
        OracleVerdict { claim_id: claim_id.into(), passed: false, witness: Some(witness.into()) }
    }

    /// One JSON object on a single line.
    pub fn to_json_line(&self) -> String {
        serde_json::to_string(self).expect("verdict serializes")
    }
}

fn render_mask(space: &SampleSpace, mask: u64) -> String {
    let names: Vec<&str> = space
        .labels()
        .iter()
        .enumerate()
        .filter(|(i, _)| mask & (1 << i) != 0)
        .map(|(_, l)| l.as_str())
        .collect();
    format!("{{{}}}", names.join(","))
}

/// Recomputes every event's measure from the elementary values and checks
/// the measure under test against it, then checks additivity over disjoint
/// pairs (probability) or maxitivity over all pairs (possibility).
pub fn oracle_event_measures<S: Scalar, M: EventMeasure<S> + ?Sized>(measure: &M, tol: f64) -> Result<OracleVerdict> {
    let space = measure.space();
    let n = space.len();
    if n > MAX_ORACLE_SPACE {
        return Err(Error::SpaceTooLarge { size: n, limit: MAX_ORACLE_SPACE });
    }
    let kind = measure.kind();
    let claim = format!("event-measures/{kind}");
    let elementary = measure.elementary();
    let full: u64 = (1u64 << n) - 1;

    let mut measured = Vec::with_capacity(1 << n);
    for mask in 0..=full {
        let mut expected = S::zero();
        for (i, &v) in elementary.iter().enumerate() {
            if mask & (1 << i) != 0 {
                expected = match kind {
                    MeasureKind::Probability => expected + v,
                    MeasureKind::Possibility => {
                        if v > expected {
                            v
                        } else {
                            expected
                        }
                    }
                };
            }
        }
        let got = measure.event_measure(&space.event_from_mask(mask))?;
        if !got.close_to(expected, tol) {
            return Ok(OracleVerdict::fail(
                claim,
                format!("measure of {} is {got}, enumeration gives {expected}", render_mask(space, mask)),
            ));
        }
        measured.push(got);
    }

    for a in 0..=full {
        for b in a..=full {
            let (ma, mb, mu) = (measured[a as usize], measured[b as usize], measured[(a | b) as usize]);
            let witness = match kind {
                MeasureKind::Probability if a & b == 0 && !mu.close_to(ma + mb, tol) => Some(format!("{mu} ≠ {ma} + {mb}")),
                MeasureKind::Possibility => {
                    let mx = if ma > mb { ma } else { mb };
                    (!mu.close_to(mx, tol)).then(|| format!("{mu} ≠ max({ma}, {mb})"))
                }
                _ => None,
            };
            if let Some(w) = witness {
                return Ok(OracleVerdict::fail(
                    claim,
                    format!("pair {} / {}: {w}", render_mask(space, a), render_mask(space, b)),
                ));
            }
        }
    }
    Ok(OracleVerdict::pass(claim))
}

/// Per-atom weights of three intensions over the union of their supports.
fn atom_table(fx: &IntensionSet, fi: &IntensionSet, fj: &IntensionSet) -> Vec<(u64, u64, u64)> {
    let atoms: BTreeSet<u32> = fx.atoms().chain(fi.atoms()).chain(fj.atoms()).map(|(a, _)| a).collect();
    atoms.into_iter().map(|a| (fx.weight(a), fi.weight(a), fj.weight(a))).collect()
}

/// Recomputes the union possibility and the pair class by atom enumeration
/// and compares them with [`exact_union_possibility`], then re-checks the
/// bounds and the nested/exclusive identities.
pub fn oracle_union_possibility(fx: &IntensionSet, fi: &IntensionSet, fj: &IntensionSet) -> OracleVerdict {
    const CLAIM: &str = "union-possibility";
    if fx.universe() != fi.universe() || fx.universe() != fj.universe() {
        return OracleVerdict::fail(CLAIM, "intensions come from different universes");
    }
    let table = atom_table(fx, fi, fj);
    let total: u64 = table.iter().map(|t| t.0).sum();
    if total == 0 {
        return OracleVerdict::fail(CLAIM, "reference intension is empty");
    }
    let (mut in_i, mut in_j, mut in_union) = (0u64, 0u64, 0u64);
    let (mut i_within_j, mut j_within_i, mut disjoint) = (true, true, true);
    for &(x, a, b) in &table {
        let (pa, pb) = (x.min(a), x.min(b));
        in_i += pa;
        in_j += pb;
        in_union += x.min(a.max(b));
        i_within_j &= pa <= pb;
        j_within_i &= pb <= pa;
        disjoint &= pa == 0 || pb == 0;
    }
    let class = if i_within_j || j_within_i {
        PairClass::ProjectionNested
    } else if disjoint {
        PairClass::ProjectionExclusive
    } else {
        PairClass::General
    };
    let frac = |n: u64| Rational::new(n as i128, total as i128);
    let (pi_i, pi_j, exact) = (frac(in_i), frac(in_j), frac(in_union));

    let report = match exact_union_possibility(fx, fi, fj) {
        Ok(r) => r,
        Err(e) => return OracleVerdict::fail(CLAIM, format!("exact_union_possibility failed: {e}")),
    };
    let mismatch = if report.class != class {
        Some(format!("class {} but enumeration gives {class}", report.class))
    } else if report.pi_i != pi_i || report.pi_j != pi_j {
        Some(format!("π_i, π_j = {}, {} but enumeration gives {pi_i}, {pi_j}", report.pi_i, report.pi_j))
    } else if report.pi_union_exact != exact {
        Some(format!("union {} but enumeration gives {exact}", report.pi_union_exact))
    } else if !(pi_i.max(pi_j) <= exact && exact <= pi_i + pi_j) {
        Some(format!("bounds violated: max({pi_i}, {pi_j}) ≤ {exact} ≤ sum"))
    } else if exact > Rational::from_integer(1) {
        Some(format!("union {exact} exceeds 1"))
    } else if class == PairClass::ProjectionNested && exact != pi_i.max(pi_j) {
        Some(format!("nested pair but union {exact} ≠ max"))
    } else if class == PairClass::ProjectionExclusive && exact != pi_i + pi_j {
        Some(format!("exclusive pair but union {exact} ≠ sum"))
    } else {
        None
    };
    match mismatch {
        Some(w) => OracleVerdict::fail(CLAIM, w),
        None => OracleVerdict::pass(CLAIM),
    }
}

/// Recomputes every entry of `compose(first, second)` by explicit
/// enumeration over the intermediate variable.
pub fn oracle_composition<S: Scalar>(
    first: &ConditionalRelation<S>,
    second: &ConditionalRelation<S>,
    tol: f64,
) -> Result<OracleVerdict> {
    let claim = format!("composition/{}", first.kind());
    if !first.out().same_labels(second.given()) {
        return Err(Error::SpaceMismatch("intermediate label lists differ".into()));
    }
    let composed = compose(first, second)?;
    let (ny, nz, nx) = (first.given().len(), first.out().len(), second.out().len());
    for y in 0..ny {
        let mut expect_undefined = !first.is_defined(y);
        if !expect_undefined {
            for z in 0..nz {
                if !second.is_defined(z) && first.get(z, y).is_some_and(|v| v > S::zero()) {
                    expect_undefined = true;
                }
            }
        }
        if expect_undefined != !composed.is_defined(y) {
            return Ok(OracleVerdict::fail(
                claim,
                format!("column {} definedness differs", first.given().labels()[y]),
            ));
        }
        if expect_undefined {
            continue;
        }
        for x in 0..nx {
            let mut acc = S::zero();
            for z in 0..nz {
                let (Some(step1), Some(step2)) = (first.get(z, y), second.get(x, z)) else {
                    continue;
                };
                let term = step2 * step1;
                acc = match first.kind() {
                    MeasureKind::Probability => acc + term,
                    MeasureKind::Possibility => {
                        if term > acc {
                            term
                        } else {
                            acc
                        }
                    }
                };
            }
            let got = composed.get(x, y).expect("defined column");
            if !got.close_to(acc, tol) {
                return Ok(OracleVerdict::fail(
                    claim,
                    format!(
                        "entry ({} | {}) = {got}, enumeration gives {acc}",
                        second.out().labels()[x],
                        first.given().labels()[y]
                    ),
                ));
            }
        }
    }
    Ok(OracleVerdict::pass(claim))
}

/// Aggregated outcome of one claim over a sweep.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SweepResult {
    pub claim_id: String,
    pub cases: usize,
    pub failures: usize,
    /// First failing witness, in fixture order.
    pub witness: Option<String>,
}

impl SweepResult {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    pub fn verdict(&self) -> OracleVerdict {
        OracleVerdict { claim_id: self.claim_id.clone(), passed: self.passed(), witness: self.witness.clone() }
    }
}

/// Folds per-fixture verdicts (in fixture order) into per-claim results,
/// keeping claims in first-seen order.
fn aggregate(per_fixture: Vec<Vec<OracleVerdict>>) -> Vec<SweepResult> {
    let mut out: Vec<SweepResult> = Vec::new();
    for verdicts in per_fixture {
        for v in verdicts {
            let slot = match out.iter().position(|r| r.claim_id == v.claim_id) {
                Some(i) => i,
                None => {
                    out.push(SweepResult { claim_id: v.claim_id.clone(), cases: 0, failures: 0, witness: None });
                    out.len() - 1
                }
            };
            let r = &mut out[slot];
            r.cases += 1;
            if !v.passed {
                r.failures += 1;
                if r.witness.is_none() {
                    r.witness = v.witness;
                }
            }
        }
    }
    out
}

fn rng_for(seed: u64, index: usize) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed.wrapping_add(index as u64))
}

fn verdict_of(claim: &str, witness: Option<String>) -> OracleVerdict {
    match witness {
        Some(w) => OracleVerdict::fail(claim, w),
        None => OracleVerdict::pass(claim),
    }
}

/// Exact inclusion–exclusion and the union bounds over every event pair,
/// from raw elementary values.
fn check_prob_unions(dist: &ProbabilityDistribution<Rational>) -> Option<String> {
    let values = dist.values();
    let n = values.len();
    let full = (1usize << n) - 1;
    let mass = |m: usize| (0..n).filter(|i| m & (1 << i) != 0).map(|i| values[i]).sum::<Rational>();
    let masses: Vec<Rational> = (0..=full).map(mass).collect();
    let one = Rational::from_integer(1);
    for a in 0..=full {
        for b in 0..=full {
            let (pa, pb, pu, pi) = (masses[a], masses[b], masses[a | b], masses[a & b]);
            if pu + pi != pa + pb {
                return Some(format!("inclusion–exclusion fails for masks {a:b}, {b:b}"));
            }
            if !(pa.max(pb) <= pu && pu <= (pa + pb).min(one)) {
                return Some(format!("union bounds fail for masks {a:b}, {b:b}"));
            }
        }
    }
    None
}

/// Random event pairs run through [`prob_union_report`].
fn check_prob_union_reports<R: Rng>(rng: &mut R, dist: &ProbabilityDistribution<Rational>, pairs: usize) -> Option<String> {
    let space = dist.space();
    let full = space.full_mask();
    for _ in 0..pairs {
        let (a, b) = (rng.gen_range(0..=full), rng.gen_range(0..=full));
        let report = match prob_union_report(dist, &space.event_from_mask(a), &space.event_from_mask(b)) {
            Ok(r) => r,
            Err(e) => return Some(e.to_string()),
        };
        if !report.bounds_ok {
            return Some(format!("bounds flagged for masks {a:b}, {b:b}"));
        }
        if report.additive_case != (a & b == 0 || report.p_intersection == Rational::from_integer(0)) {
            return Some(format!("additive flag wrong for masks {a:b}, {b:b}"));
        }
        if report.additive_case && report.p_union != report.p_a + report.p_b {
            return Some(format!("additive case not additive for masks {a:b}, {b:b}"));
        }
        if report.nested_case && report.p_union != report.p_a.max(report.p_b) {
            return Some(format!("nested case not max for masks {a:b}, {b:b}"));
        }
    }
    None
}

/// A normalized possibility distribution with two or more positive values
/// has elementary values summing past 1, so additive union is inconsistent.
fn check_sigma_triviality(dist: &PossibilityDistribution<Rational>) -> Option<String> {
    let positive = dist.values().iter().filter(|v| **v > Rational::from_integer(0)).count();
    let total: Rational = dist.values().iter().copied().sum();
    (positive >= 2 && total <= Rational::from_integer(1))
        .then(|| format!("{positive} positive values but Σπ = {total}"))
}

/// Weighted intension triple on a small abstract universe.
fn random_weighted_triple<R: Rng>(rng: &mut R) -> [IntensionSet; 3] {
    let mut make = |min_one: bool| loop {
        let f = IntensionSet::from_weights("abstract", (0..12u32).map(|a| (a, if rng.gen_bool(0.5) { rng.gen_range(1..4) } else { 0 })));
        if !min_one || f.measure() > 0 {
            break f;
        }
    };
    [make(true), make(false), make(false)]
}

/// Axiom sweep: `count` random probability and `count` random normalized
/// possibility distributions with `1..=max_labels` labels.
pub fn sweep_axioms(seed: u64, count: usize, max_labels: usize) -> Result<Vec<SweepResult>> {
    let per_fixture: Result<Vec<Vec<OracleVerdict>>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let n = rng.gen_range(1..=max_labels);
            let p = random_probability(&mut rng, n)?;
            let n = rng.gen_range(1..=max_labels);
            let q = random_possibility(&mut rng, n)?;
            let [fx, fi, fj] = random_weighted_triple(&mut rng);
            let mut union = oracle_union_possibility(&fx, &fi, &fj);
            union.claim_id = "union-possibility/weighted".into();
            Ok(vec![
                oracle_event_measures(&p, 0.0)?,
                oracle_event_measures(&q, 0.0)?,
                verdict_of("prob-inclusion-exclusion", check_prob_unions(&p)),
                verdict_of("prob-union-report", check_prob_union_reports(&mut rng, &p, 16)),
                verdict_of("poss-sigma-triviality", check_sigma_triviality(&q)),
                union,
            ])
        })
        .collect();
    Ok(aggregate(per_fixture?))
}

/// Disjunction sweep over `count` random ellipse triples on `grid`.
pub fn sweep_disjunction(seed: u64, count: usize, grid: &Grid) -> Result<Vec<SweepResult>> {
    let per_fixture: Result<Vec<Vec<OracleVerdict>>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let [fx, fi, fj] = random_ellipse_triple(&mut rng, grid)?;
            let mut verdicts = vec![oracle_union_possibility(&fx, &fi, &fj)];
            let report = exact_union_possibility(&fx, &fi, &fj)?;
            let zero = Rational::from_integer(0);
            match report.class {
                PairClass::ProjectionNested => verdicts.push(verdict_of(
                    "nested-max-exact",
                    (report.max_error != zero).then(|| format!("max error {}", report.max_error)),
                )),
                PairClass::ProjectionExclusive => verdicts.push(verdict_of(
                    "exclusive-sum-exact",
                    (report.pi_union_exact != report.pi_sigma).then(|| format!("sigma error {}", report.sigma_error)),
                )),
                _ => verdicts.push(verdict_of(
                    "general-bounds",
                    (report.max_error < zero || report.sigma_error < zero).then(|| "negative error".to_string()),
                )),
            }
            Ok(verdicts)
        })
        .collect();
    Ok(aggregate(per_fixture?))
}

fn check_round_trip(joint: &crate::inference::JointDistribution<Rational>) -> Result<Option<String>> {
    for (dir, axis) in [(Direction::OutGivenRow, Axis::Row), (Direction::OutGivenCol, Axis::Col)] {
        let rel = match condition(joint, dir) {
            Ok(r) => r,
            Err(Error::AllZeroGiven) => return Ok(Some("all-zero joint".into())),
            Err(e) => return Err(e),
        };
        let back = recombine(&rel, marginal(joint, axis).values(), dir)?;
        if &back != joint {
            return Ok(Some(format!("{:?} round trip changed the joint", dir)));
        }
    }
    Ok(None)
}

/// Inference sweep: `count` joints and relation triples of each kind with
/// spaces of `1..=max_labels` labels.
pub fn sweep_inference(seed: u64, count: usize, max_labels: usize) -> Result<Vec<SweepResult>> {
    let per_fixture: Result<Vec<Vec<OracleVerdict>>> = (0..count)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i);
            let mut verdicts = Vec::new();
            for kind in [MeasureKind::Probability, MeasureKind::Possibility] {
                let tag = kind.to_string();
                let (r, c) = (rng.gen_range(1..=max_labels), rng.gen_range(1..=max_labels));
                let joint = random_joint(&mut rng, kind, r, c)?;
                verdicts.push(verdict_of(&format!("round-trip/{tag}"), check_round_trip(&joint)?));

                let sizes: Vec<usize> = (0..4).map(|_| rng.gen_range(1..=max_labels)).collect();
                let spaces: Vec<SampleSpace> =
                    sizes.iter().enumerate().map(|(k, &n)| space_for(kind, &format!("v{k}_"), n)).collect::<Result<_>>()?;
                let a = random_relation(&mut rng, kind, &spaces[0], &spaces[1])?;
                let b = random_relation(&mut rng, kind, &spaces[1], &spaces[2])?;
                let c3 = random_relation(&mut rng, kind, &spaces[2], &spaces[3])?;
                let ab = compose(&a, &b)?;
                let bc = compose(&b, &c3)?;
                let mut oracle_failure = None;
                for (x, y) in [(&a, &b), (&b, &c3), (&ab, &c3), (&a, &bc)] {
                    let v = oracle_composition(x, y, 0.0)?;
                    if !v.passed && oracle_failure.is_none() {
                        oracle_failure = v.witness;
                    }
                }
                verdicts.push(verdict_of(&format!("composition-oracle/{tag}"), oracle_failure));
                let left = compose(&ab, &c3)?;
                let right = compose(&a, &bc)?;
                verdicts.push(verdict_of(
                    &format!("associativity/{tag}"),
                    (left != right).then(|| "compose(compose(A,B),C) ≠ compose(A,compose(B,C))".to_string()),
                ));

                // marginal consistency of prior × conditional
                let n = spaces[0].len();
                let prior: Vec<Rational> = match kind {
                    MeasureKind::Probability => random_probability(&mut rng, n)?.values().to_vec(),
                    MeasureKind::Possibility => random_possibility(&mut rng, n)?.values().to_vec(),
                };
                let joint = recombine(&a, &prior, Direction::OutGivenRow)?;
                verdicts.push(verdict_of(
                    &format!("marginal-consistency/{tag}"),
                    (marginal(&joint, Axis::Row).values() != prior.as_slice()).then(|| "marginal differs from prior".to_string()),
                ));
            }

            // updates
            let n = rng.gen_range(1..=max_labels);
            let m = rng.gen_range(1..=max_labels);
            let prior = random_probability(&mut rng, n)?;
            let like = random_relation(&mut rng, MeasureKind::Probability, prior.space(), &space_for(MeasureKind::Probability, "y", m)?)?;
            let observed = like.out().labels()[rng.gen_range(0..m)].as_str().to_string();
            let bayes = match bayes_update(&prior, &like, &observed) {
                Ok(post) => {
                    let total: Rational = post.values().iter().copied().sum();
                    (total != Rational::from_integer(1)).then(|| format!("posterior sums to {total}"))
                }
                Err(Error::ZeroEvidence(_)) => None,
                Err(e) => Some(e.to_string()),
            };
            verdicts.push(verdict_of("bayes-update-sums-to-one", bayes));

            let prior = random_possibility(&mut rng, n)?;
            let like = random_relation(&mut rng, MeasureKind::Possibility, prior.space(), &space_for(MeasureKind::Possibility, "y", m)?)?;
            let observed = like.out().labels()[rng.gen_range(0..m)].as_str().to_string();
            let poss = match poss_update(&prior, &like, &observed) {
                Ok(post) => {
                    let top = post.max_value();
                    if top != Rational::from_integer(1) {
                        Some(format!("posterior max is {top}"))
                    } else {
                        // an all-ones likelihood column leaves the posterior unchanged
                        let ones = ConditionalRelation::new(
                            MeasureKind::Possibility,
                            post.space().clone(),
                            space_for(MeasureKind::Possibility, "e", 1)?,
                            vec![vec![Rational::from_integer(1); n]],
                        )?;
                        let again = poss_update(&post, &ones, "e1")?;
                        (again.values() != post.values()).then(|| "update with all-ones likelihood changed the posterior".to_string())
                    }
                }
                Err(Error::ZeroEvidence(_)) => None,
                Err(e) => Some(e.to_string()),
            };
            verdicts.push(verdict_of("poss-update-max-one", poss));
            Ok(verdicts)
        })
        .collect();
    Ok(aggregate(per_fixture?))
}
