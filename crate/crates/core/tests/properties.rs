use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use sigmax_core::fixtures::{random_joint, random_possibility, random_probability, random_relation, space_for};
use sigmax_core::oracle::{oracle_composition, oracle_event_measures, oracle_union_possibility};
use sigmax_core::{
    check_poss_axioms, check_prob_axioms, compose, condition, marginal, recombine, subsethood, Axis,
    ConditionalRelation, Direction, IntensionSet, JointDistribution, MeasureKind, Rational,
};

fn kind_strategy() -> impl Strategy<Value = MeasureKind> {
    prop_oneof![Just(MeasureKind::Probability), Just(MeasureKind::Possibility)]
}

fn intension_strategy() -> impl Strategy<Value = IntensionSet> {
    prop::collection::vec(0u64..4, 16).prop_map(|w| IntensionSet::from_weights("u", (0u32..).zip(w)))
}

proptest! {
    #[test]
    fn random_distributions_satisfy_their_axioms(seed in any::<u64>(), n in 1usize..=6) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let p = random_probability(&mut rng, n).unwrap();
        prop_assert!(check_prob_axioms(&p).all_pass());
        prop_assert!(oracle_event_measures(&p, 0.0).unwrap().passed);
        let q = random_possibility(&mut rng, n).unwrap();
        prop_assert!(check_poss_axioms(&q).all_pass());
        prop_assert!(oracle_event_measures(&q, 0.0).unwrap().passed);
    }

    #[test]
    fn condition_then_recombine_is_identity(seed in any::<u64>(), kind in kind_strategy(), r in 1usize..=4, c in 1usize..=4) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let joint = random_joint(&mut rng, kind, r, c).unwrap();
        for (dir, axis) in [(Direction::OutGivenRow, Axis::Row), (Direction::OutGivenCol, Axis::Col)] {
            let rel = condition(&joint, dir).unwrap();
            let back = recombine(&rel, marginal(&joint, axis).values(), dir).unwrap();
            prop_assert_eq!(&back, &joint);
        }
    }

    #[test]
    fn composition_matches_enumeration_and_associates(seed in any::<u64>(), kind in kind_strategy(), sizes in prop::array::uniform4(1usize..=4)) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let spaces: Vec<_> = sizes.iter().enumerate().map(|(i, &n)| space_for(kind, &format!("s{i}_"), n).unwrap()).collect();
        let a = random_relation(&mut rng, kind, &spaces[0], &spaces[1]).unwrap();
        let b = random_relation(&mut rng, kind, &spaces[1], &spaces[2]).unwrap();
        let c = random_relation(&mut rng, kind, &spaces[2], &spaces[3]).unwrap();
        prop_assert!(oracle_composition(&a, &b, 0.0).unwrap().passed);
        let left = compose(&compose(&a, &b).unwrap(), &c).unwrap();
        let right = compose(&a, &compose(&b, &c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
        let id = ConditionalRelation::identity(kind, spaces[0].clone()).unwrap();
        prop_assert_eq!(compose(&id, &a).unwrap(), a);
    }

    #[test]
    fn union_oracle_agrees_on_weighted_sets(fx in intension_strategy(), fi in intension_strategy(), fj in intension_strategy()) {
        prop_assume!(fx.measure() > 0);
        let verdict = oracle_union_possibility(&fx, &fi, &fj);
        prop_assert!(verdict.passed, "{:?}", verdict.witness);
    }

    #[test]
    fn subsethood_is_a_fraction(fx in intension_strategy(), fc in intension_strategy()) {
        prop_assume!(fx.measure() > 0);
        let s = subsethood(&fx, &fc).unwrap();
        prop_assert!(s >= Rational::from_integer(0) && s <= Rational::from_integer(1));
        prop_assert_eq!(subsethood(&fx, &fx).unwrap(), Rational::from_integer(1));
    }

    #[test]
    fn relations_and_joints_survive_json(seed in any::<u64>(), kind in kind_strategy()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let joint = random_joint(&mut rng, kind, 3, 2).unwrap();
        let text = serde_json::to_string(&joint).unwrap();
        let back: JointDistribution<Rational> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(&back, &joint);
        let rel = condition(&joint, Direction::OutGivenCol).unwrap();
        let text = serde_json::to_string(&rel).unwrap();
        let back: ConditionalRelation<Rational> = serde_json::from_str(&text).unwrap();
        prop_assert_eq!(back, rel);
    }
}
