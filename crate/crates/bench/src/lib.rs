//! Shared inputs for the benchmarks.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use sigmax_core::fixtures::{random_ellipse_triple, random_possibility, random_probability, random_relation, space_for};
use sigmax_core::{ConditionalRelation, Grid, IntensionSet, MeasureKind, PossibilityDistribution, ProbabilityDistribution, Rational};

pub const SEED: u64 = 7;

pub fn distributions(n: usize) -> (ProbabilityDistribution, PossibilityDistribution) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    (random_probability(&mut rng, n).unwrap(), random_possibility(&mut rng, n).unwrap())
}

pub fn ellipse_triple(side: u32) -> [IntensionSet; 3] {
    let grid = Grid::unit(side, side).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    loop {
        let t = random_ellipse_triple(&mut rng, &grid).unwrap();
        if t[1].measure() > 0 && t[2].measure() > 0 {
            return t;
        }
    }
}

/// `first: A → B` and `second: B → C`, every space of `n` labels.
pub fn relation_chain(kind: MeasureKind, n: usize) -> (ConditionalRelation<Rational>, ConditionalRelation<Rational>) {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let spaces: Vec<_> = ["a", "b", "c"].iter().map(|p| space_for(kind, p, n).unwrap()).collect();
    (
        random_relation(&mut rng, kind, &spaces[0], &spaces[1]).unwrap(),
        random_relation(&mut rng, kind, &spaces[1], &spaces[2]).unwrap(),
    )
}
