//! Named ellipse configurations and seeded random generators.
//!
//! Each named fixture places a reference ellipse (the object being
//! classified) and a few concept ellipses on a grid, rasterizes them, and then
//! checks that the rasterized sets really have the containment and overlap
//! relations the configuration is meant to show. Geometry is laid out for a
//! 64×64 grid and scaled to other sizes; generation fails if rasterization at
//! the requested size breaks a required relation.

use std::f64::consts::PI;
use std::fmt;
use std::str::FromStr;

use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::disjunction::{classify_pair, PairClass};
use crate::error::{Error, Result};
use crate::inference::{ConditionalRelation, JointDistribution};
use crate::intension::{compatibility_distribution, is_fuzzy_setup, rasterize_ellipse, subsethood, EllipseSpec, Grid, IntensionSet};
use crate::measures::{MeasureKind, PossibilityDistribution, ProbabilityDistribution};
use crate::scalar::Rational;
use crate::space::{OutcomeLabel, SampleSpace};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum FixtureName {
    /// Age 45 against YOUTH/MID/AGED: two nested pairs and one exclusive pair.
    NestedAndExclusive,
    /// A researcher against EX/SC/RE: EX and SC overlap in a general way.
    Professions,
    /// Age 40 against YOUTH/MID/AGED with compatibilities (1/2, 1, 0).
    AgeGroups,
    /// Two concepts overlapping inside the reference.
    ProjectionOverlap,
    /// Two concepts overlapping only outside the reference.
    ProjectionDisjoint,
    /// Reference inside every concept.
    Innocent,
}

impl FixtureName {
    pub const ALL: [FixtureName; 6] = [
        FixtureName::NestedAndExclusive,
        FixtureName::Professions,
        FixtureName::AgeGroups,
        FixtureName::ProjectionOverlap,
        FixtureName::ProjectionDisjoint,
        FixtureName::Innocent,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            FixtureName::NestedAndExclusive => "example-5.1",
            FixtureName::Professions => "example-5.2",
            FixtureName::AgeGroups => "age-groups",
            FixtureName::ProjectionOverlap => "fig-3a",
            FixtureName::ProjectionDisjoint => "fig-3b",
            FixtureName::Innocent => "fig-4d",
        }
    }
}

impl fmt::Display for FixtureName {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for FixtureName {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        FixtureName::ALL
            .into_iter()
            .find(|n| n.as_str() == s)
            .ok_or_else(|| Error::UnknownFixture(s.to_string()))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Concept {
    pub label: OutcomeLabel,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub ellipse: Option<EllipseSpec>,
    pub intension: IntensionSet,
}

impl Concept {
    fn rasterized(spec: EllipseSpec, grid: &Grid) -> Result<Self> {
        let intension = rasterize_ellipse(&spec, grid)?;
        Ok(Concept { label: spec.label.clone(), ellipse: Some(spec), intension })
    }
}

/// A reference intension and the concepts it is classified against.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct Fixture {
    pub name: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid: Option<Grid>,
    pub reference: Concept,
    pub concepts: Vec<Concept>,
}

impl Fixture {
    /// Concepts as `(label, intension)` pairs, in declared order.
    pub fn labeled(&self) -> Vec<(OutcomeLabel, IntensionSet)> {
        self.concepts.iter().map(|c| (c.label.clone(), c.intension.clone())).collect()
    }

    pub fn intensions(&self) -> Vec<&IntensionSet> {
        self.concepts.iter().map(|c| &c.intension).collect()
    }

    pub fn concept(&self, label: &str) -> Option<&IntensionSet> {
        self.concepts.iter().find(|c| c.label.as_str() == label).map(|c| &c.intension)
    }

    pub fn space(&self) -> Result<SampleSpace> {
        SampleSpace::fuzzy(self.concepts.iter().map(|c| c.label.as_str().to_string()))
    }

    fn get(&self, label: &str) -> &IntensionSet {
        self.concept(label).expect("fixture concept")
    }
}

fn invalid(name: FixtureName, reason: impl Into<String>) -> Error {
    Error::FixtureInvalid { name: name.to_string(), reason: reason.into() }
}

/// Builds the named configuration on a `cols × rows` grid of unit cells and
/// checks that it realizes the intended relations.
pub fn generate_fixture(name: FixtureName, cols: u32, rows: u32) -> Result<Fixture> {
    let grid = Grid::unit(cols, rows)?;
    let s = cols.min(rows) as f64 / 64.0;
    let at = |x: f64, y: f64| (x * s, y * s);
    let axes = |a: f64, b: f64| (a * s, b * s);
    let ellipse = |label: &str, c: (f64, f64), ax: (f64, f64), rot: f64| -> Result<Concept> {
        Concept::rasterized(EllipseSpec::new(label, c, ax, rot)?, &grid)
    };

    let (reference, concepts) = match name {
        FixtureName::NestedAndExclusive => (
            ellipse("AGE45", at(32.0, 32.0), axes(8.0, 8.0), 0.0)?,
            vec![
                ellipse("YOUTH", at(12.0, 32.0), axes(16.0, 200.0), 0.0)?,
                ellipse("MID", at(32.0, 32.0), axes(14.0, 22.0), 0.0)?,
                ellipse("AGED", at(52.0, 32.0), axes(16.0, 200.0), 0.0)?,
            ],
        ),
        FixtureName::Professions => {
            let re = ellipse("RE", at(32.0, 32.0), axes(10.0, 10.0), 0.0)?;
            let person = Concept { label: OutcomeLabel::new("PERSON")?, ellipse: re.ellipse.clone(), intension: re.intension.clone() };
            (
                person,
                vec![
                    ellipse("EX", at(22.0, 32.0), axes(14.0, 12.0), 0.0)?,
                    ellipse("SC", at(42.0, 32.0), axes(14.0, 12.0), 0.0)?,
                    re,
                ],
            )
        }
        FixtureName::AgeGroups => {
            // the reference is symmetric about the grid line x = mid, and
            // YOUTH's right edge sits on that line across the reference's rows
            let mid = (32.0 * s).round();
            let half_width = 16.0 * s;
            (
                ellipse("AGE40", (mid, mid), axes(6.0, 6.0), 0.0)?,
                vec![
                    ellipse("YOUTH", (mid - half_width, mid), (half_width, 400.0 * s), 0.0)?,
                    ellipse("MID", (mid, mid), axes(14.0, 22.0), 0.0)?,
                    ellipse("AGED", at(54.0, 32.0), axes(9.0, 22.0), 0.0)?,
                ],
            )
        }
        FixtureName::ProjectionOverlap => (
            ellipse("X", at(32.0, 32.0), axes(6.0, 6.0), 0.0)?,
            vec![
                ellipse("A", at(27.0, 32.0), axes(8.0, 5.0), 0.0)?,
                ellipse("B", at(37.0, 32.0), axes(8.0, 5.0), 0.0)?,
            ],
        ),
        FixtureName::ProjectionDisjoint => {
            // two slim ellipses crossing above the reference like an X
            let tilt = (48.0f64).atan2(8.0);
            (
                ellipse("X", at(32.0, 14.0), axes(5.0, 5.0), 0.0)?,
                vec![
                    ellipse("A", at(32.0, 34.0), axes(24.5, 1.6), tilt)?,
                    ellipse("B", at(32.0, 34.0), axes(24.5, 1.6), PI - tilt)?,
                ],
            )
        }
        FixtureName::Innocent => (
            ellipse("X", at(32.0, 32.0), axes(5.0, 5.0), 0.0)?,
            vec![
                ellipse("A", at(28.0, 30.0), axes(14.0, 12.0), 0.0)?,
                ellipse("B", at(36.0, 30.0), axes(14.0, 12.0), 0.0)?,
                ellipse("C", at(32.0, 38.0), axes(14.0, 12.0), 0.0)?,
            ],
        ),
    };
    let fixture = Fixture { name: name.to_string(), grid: Some(grid), reference, concepts };
    validate_fixture(name, &fixture)?;
    Ok(fixture)
}

/// Re-derives the relations a named configuration promises.
pub fn validate_fixture(name: FixtureName, fixture: &Fixture) -> Result<()> {
    let fx = &fixture.reference.intension;
    if fx.measure() == 0 {
        return Err(invalid(name, "reference intension is empty"));
    }
    let expect_class = |a: &str, b: &str, want: PairClass| -> Result<()> {
        let got = classify_pair(fx, fixture.get(a), fixture.get(b))?;
        if got == want {
            Ok(())
        } else {
            Err(invalid(name, format!("{a} vs {b} is {got}, expected {want}")))
        }
    };
    let nonempty_projection = |a: &str| -> Result<()> {
        if fx.intersection(fixture.get(a))?.is_empty() {
            Err(invalid(name, format!("{a} does not meet the reference")))
        } else {
            Ok(())
        }
    };
    let one = Rational::from_integer(1);
    match name {
        FixtureName::NestedAndExclusive => {
            if subsethood(fx, fixture.get("MID"))? != one {
                return Err(invalid(name, "reference is not inside MID"));
            }
            nonempty_projection("YOUTH")?;
            nonempty_projection("AGED")?;
            expect_class("YOUTH", "MID", PairClass::ProjectionNested)?;
            expect_class("AGED", "MID", PairClass::ProjectionNested)?;
            expect_class("YOUTH", "AGED", PairClass::ProjectionExclusive)?;
        }
        FixtureName::Professions => {
            if fx != fixture.get("RE") {
                return Err(invalid(name, "reference must coincide with RE"));
            }
            expect_class("EX", "RE", PairClass::ProjectionNested)?;
            expect_class("SC", "RE", PairClass::ProjectionNested)?;
            expect_class("EX", "SC", PairClass::General)?;
        }
        FixtureName::AgeGroups => {
            let dist = compatibility_distribution(fx, &fixture.labeled())?;
            let want = [Rational::new(1, 2), one, Rational::from_integer(0)];
            if dist.values() != want {
                return Err(invalid(name, format!("compatibilities are {:?}, expected [1/2, 1, 0]", dist.values())));
            }
        }
        FixtureName::ProjectionOverlap => {
            if is_fuzzy_setup(fx, &fixture.intensions())?.is_none() {
                return Err(invalid(name, "concepts do not overlap inside the reference"));
            }
        }
        FixtureName::ProjectionDisjoint => {
            nonempty_projection("A")?;
            nonempty_projection("B")?;
            if fixture.get("A").intersection(fixture.get("B"))?.is_empty() {
                return Err(invalid(name, "concepts do not overlap at all"));
            }
            if is_fuzzy_setup(fx, &fixture.intensions())?.is_some() {
                return Err(invalid(name, "concepts overlap inside the reference"));
            }
            expect_class("A", "B", PairClass::ProjectionExclusive)?;
        }
        FixtureName::Innocent => {
            for c in &fixture.concepts {
                if subsethood(fx, &c.intension)? != one {
                    return Err(invalid(name, format!("reference is not inside {}", c.label)));
                }
            }
        }
    }
    Ok(())
}

/// Ellipse with center anywhere on the grid, semi-axes between 2 cells and a
/// third of the grid, and arbitrary orientation.
pub fn random_ellipse<R: Rng + ?Sized>(rng: &mut R, grid: &Grid, label: &str) -> Result<EllipseSpec> {
    let width = grid.cols as f64 * grid.cell_size;
    let height = grid.rows as f64 * grid.cell_size;
    let max_axis = (width.min(height) / 3.0).max(2.0 * grid.cell_size + 1e-9);
    let min_axis = 2.0 * grid.cell_size;
    EllipseSpec::new(
        label,
        (grid.origin.0 + rng.gen_range(0.0..width), grid.origin.1 + rng.gen_range(0.0..height)),
        (rng.gen_range(min_axis..max_axis), rng.gen_range(min_axis..max_axis)),
        rng.gen_range(0.0..PI),
    )
}

/// A reference intension (non-empty) and two concept intensions.
pub fn random_ellipse_triple<R: Rng + ?Sized>(rng: &mut R, grid: &Grid) -> Result<[IntensionSet; 3]> {
    let fx = loop {
        let f = rasterize_ellipse(&random_ellipse(rng, grid, "X")?, grid)?;
        if f.measure() > 0 {
            break f;
        }
    };
    let fi = rasterize_ellipse(&random_ellipse(rng, grid, "I")?, grid)?;
    let fj = rasterize_ellipse(&random_ellipse(rng, grid, "J")?, grid)?;
    Ok([fx, fi, fj])
}

fn labels(prefix: &str, n: usize) -> Vec<String> {
    (1..=n).map(|i| format!("{prefix}{i}")).collect()
}

fn random_weights<R: Rng + ?Sized>(rng: &mut R, n: usize, max: u64) -> Vec<u64> {
    loop {
        let w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
        if w.iter().any(|&x| x > 0) {
            return w;
        }
    }
}

/// Exact probability distribution with integer weights on `n` labels.
pub fn random_probability<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<ProbabilityDistribution<Rational>> {
    let w = random_weights(rng, n, 10);
    let total: u64 = w.iter().sum();
    let values = w.iter().map(|&x| Rational::new(x as i128, total as i128)).collect();
    ProbabilityDistribution::new(SampleSpace::random(labels("x", n))?, values)
}

/// Exact normalized possibility distribution on `n` labels.
pub fn random_possibility<R: Rng + ?Sized>(rng: &mut R, n: usize) -> Result<PossibilityDistribution<Rational>> {
    const LEVELS: u64 = 12;
    let mut w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=LEVELS)).collect();
    let top = rng.gen_range(0..n);
    w[top] = LEVELS;
    let values = w.iter().map(|&x| Rational::new(x as i128, LEVELS as i128)).collect();
    PossibilityDistribution::new(SampleSpace::fuzzy(labels("x", n))?, values, true)
}

/// Column of conditional values satisfying the calculus' contract.
fn random_column<R: Rng + ?Sized>(rng: &mut R, kind: MeasureKind, n: usize) -> Vec<Rational> {
    match kind {
        MeasureKind::Probability => {
            let w = random_weights(rng, n, 9);
            let total: u64 = w.iter().sum();
            w.iter().map(|&x| Rational::new(x as i128, total as i128)).collect()
        }
        MeasureKind::Possibility => {
            let max = 8u64;
            let mut w: Vec<u64> = (0..n).map(|_| rng.gen_range(0..=max)).collect();
            let top = rng.gen_range(0..n);
            w[top] = max;
            w.iter().map(|&x| Rational::new(x as i128, max as i128)).collect()
        }
    }
}

/// Relation `given → out` with valid columns.
pub fn random_relation<R: Rng + ?Sized>(
    rng: &mut R,
    kind: MeasureKind,
    given: &SampleSpace,
    out: &SampleSpace,
) -> Result<ConditionalRelation<Rational>> {
    let columns: Vec<Vec<Rational>> = (0..given.len()).map(|_| random_column(rng, kind, out.len())).collect();
    let matrix = (0..out.len()).map(|o| columns.iter().map(|c| c[o]).collect()).collect();
    ConditionalRelation::new(kind, given.clone(), out.clone(), matrix)
}

/// Space of `n` labels with the calculus' space kind.
pub fn space_for(kind: MeasureKind, prefix: &str, n: usize) -> Result<SampleSpace> {
    SampleSpace::new(kind.space_kind(), labels(prefix, n))
}

/// Joint table satisfying the calculus' contract; some entries may be zero,
/// so marginals with zero mass occur.
pub fn random_joint<R: Rng + ?Sized>(
    rng: &mut R,
    kind: MeasureKind,
    rows: usize,
    cols: usize,
) -> Result<JointDistribution<Rational>> {
    let flat = random_column(rng, kind, rows * cols);
    // sprinkle zeros so that undefined conditionals get exercised
    let flat: Vec<Rational> = match kind {
        MeasureKind::Probability => flat,
        MeasureKind::Possibility => {
            let zero_row = rng.gen_bool(0.2).then(|| rng.gen_range(0..rows));
            let peak = flat.iter().position(|v| *v == Rational::from_integer(1)).unwrap_or(0);
            flat.into_iter()
                .enumerate()
                .map(|(i, v)| if Some(i / cols) == zero_row && i / cols != peak / cols { Rational::from_integer(0) } else { v })
                .collect()
        }
    };
    let values = (0..rows).map(|r| flat[r * cols..(r + 1) * cols].to_vec()).collect();
    JointDistribution::new(kind, space_for(kind, "x", rows)?, space_for(kind, "y", cols)?, values)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::intension::is_exhaustive;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn every_named_fixture_validates_at_default_size() {
        for name in FixtureName::ALL {
            let f = generate_fixture(name, 64, 64).unwrap_or_else(|e| panic!("{name}: {e}"));
            assert_eq!(f.name, name.as_str());
        }
    }

    #[test]
    fn fixtures_scale_to_other_grids() {
        for size in [128u32, 256] {
            for name in FixtureName::ALL {
                generate_fixture(name, size, size).unwrap_or_else(|e| panic!("{name} at {size}: {e}"));
            }
        }
    }

    #[test]
    fn names_parse() {
        assert_eq!("fig-4d".parse::<FixtureName>().unwrap(), FixtureName::Innocent);
        assert_eq!("fig-9".parse::<FixtureName>(), Err(Error::UnknownFixture("fig-9".into())));
    }

    #[test]
    fn age_groups_values() {
        let f = generate_fixture(FixtureName::AgeGroups, 64, 64).unwrap();
        let dist = compatibility_distribution(&f.reference.intension, &f.labeled()).unwrap();
        assert_eq!(dist.values(), &[Rational::new(1, 2), Rational::from_integer(1), Rational::from_integer(0)]);
        assert!(is_exhaustive(&f.reference.intension, &f.intensions()).unwrap());
    }

    #[test]
    fn figure_three_pair() {
        let a = generate_fixture(FixtureName::ProjectionOverlap, 64, 64).unwrap();
        assert!(is_fuzzy_setup(&a.reference.intension, &a.intensions()).unwrap().is_some());
        let b = generate_fixture(FixtureName::ProjectionDisjoint, 64, 64).unwrap();
        assert!(is_fuzzy_setup(&b.reference.intension, &b.intensions()).unwrap().is_none());
    }

    #[test]
    fn fixture_json_round_trip() {
        let f = generate_fixture(FixtureName::Professions, 64, 64).unwrap();
        let text = serde_json::to_string(&f).unwrap();
        let back: Fixture = serde_json::from_str(&text).unwrap();
        assert_eq!(back, f);
        validate_fixture(FixtureName::Professions, &back).unwrap();
    }

    #[test]
    fn tampered_fixture_is_rejected() {
        let mut f = generate_fixture(FixtureName::NestedAndExclusive, 64, 64).unwrap();
        f.concepts[1].intension = IntensionSet::from_atoms(f.reference.intension.universe(), [0]);
        assert!(matches!(validate_fixture(FixtureName::NestedAndExclusive, &f), Err(Error::FixtureInvalid { .. })));
    }

    #[test]
    fn random_generators_respect_contracts() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let grid = Grid::unit(64, 64).unwrap();
        for _ in 0..20 {
            let [fx, fi, _] = random_ellipse_triple(&mut rng, &grid).unwrap();
            assert!(fx.measure() > 0);
            assert_eq!(fx.universe(), fi.universe());
            random_probability(&mut rng, 5).unwrap();
            random_possibility(&mut rng, 5).unwrap();
            for kind in [MeasureKind::Probability, MeasureKind::Possibility] {
                let j = random_joint(&mut rng, kind, 3, 4).unwrap();
                assert!(crate::inference::validate_joint(&j).passed);
                let g = space_for(kind, "g", 3).unwrap();
                let o = space_for(kind, "o", 2).unwrap();
                random_relation(&mut rng, kind, &g, &o).unwrap();
            }
        }
    }
}
