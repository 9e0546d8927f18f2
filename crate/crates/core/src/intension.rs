//! Concept intensions as finite weighted atom sets.
//!
//! An [`IntensionSet`] maps atoms of a shared universe to positive integer
//! weights. Its measure is the weight total, and intersection/union are the
//! per-atom min/max, so `|f ∪ g| + |f ∩ g| = |f| + |g|` holds exactly. The
//! possibility of a concept for an object is the subsethood of the object's
//! intension in the concept's intension, always an exact [`Rational`].

use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::PossibilityDistribution;
use crate::scalar::Rational;
use crate::space::{OutcomeLabel, SampleSpace};

/// Index of a feature cell in a declared universe.
pub type Atom = u32;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntensionSet {
    universe: String,
    weights: BTreeMap<Atom, u64>,
}

#[derive(Serialize, Deserialize)]
struct RawIntension {
    universe: String,
    atoms: Vec<(Atom, u64)>,
}

impl Serialize for IntensionSet {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        RawIntension {
            universe: self.universe.clone(),
            atoms: self.weights.iter().map(|(&a, &w)| (a, w)).collect(),
        }
        .serialize(s)
    }
}

impl<'de> Deserialize<'de> for IntensionSet {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawIntension::deserialize(d)?;
        let mut weights = BTreeMap::new();
        for (atom, weight) in raw.atoms {
            if weights.insert(atom, weight).is_some() {
                return Err(serde::de::Error::custom(format!("atom {atom} listed twice")));
            }
        }
        Ok(IntensionSet::from_weights(raw.universe, weights))
    }
}

impl IntensionSet {
    pub fn empty(universe: impl Into<String>) -> Self {
        IntensionSet { universe: universe.into(), weights: BTreeMap::new() }
    }

    /// Zero weights are dropped so that absent and zero mean the same thing.
    pub fn from_weights(universe: impl Into<String>, weights: impl IntoIterator<Item = (Atom, u64)>) -> Self {
        IntensionSet {
            universe: universe.into(),
            weights: weights.into_iter().filter(|&(_, w)| w > 0).collect(),
        }
    }

    /// Every listed atom with weight 1; duplicates collapse.
    pub fn from_atoms(universe: impl Into<String>, atoms: impl IntoIterator<Item = Atom>) -> Self {
        IntensionSet::from_weights(universe, atoms.into_iter().map(|a| (a, 1)))
    }

    pub fn universe(&self) -> &str {
        &self.universe
    }

    pub fn weight(&self, atom: Atom) -> u64 {
        self.weights.get(&atom).copied().unwrap_or(0)
    }

    pub fn atoms(&self) -> impl Iterator<Item = (Atom, u64)> + '_ {
        self.weights.iter().map(|(&a, &w)| (a, w))
    }

    pub fn support_len(&self) -> usize {
        self.weights.len()
    }

    pub fn is_empty(&self) -> bool {
        self.weights.is_empty()
    }

    /// Total weight `|f|`.
    pub fn measure(&self) -> u64 {
        self.weights.values().sum()
    }

    /// Atom-wise weight dominance: every atom of `self` has at most the
    /// weight it has in `other`.
    pub fn is_within(&self, other: &IntensionSet) -> bool {
        self.weights.iter().all(|(a, &w)| w <= other.weight(*a))
    }

    pub fn intersection(&self, other: &IntensionSet) -> Result<IntensionSet> {
        self.same_universe(other)?;
        Ok(IntensionSet {
            universe: self.universe.clone(),
            weights: self
                .weights
                .iter()
                .filter_map(|(&a, &w)| {
                    let m = w.min(other.weight(a));
                    (m > 0).then_some((a, m))
                })
                .collect(),
        })
    }

    pub fn union(&self, other: &IntensionSet) -> Result<IntensionSet> {
        self.same_universe(other)?;
        let mut weights = self.weights.clone();
        for (&a, &w) in &other.weights {
            let slot = weights.entry(a).or_insert(0);
            *slot = (*slot).max(w);
        }
        Ok(IntensionSet { universe: self.universe.clone(), weights })
    }

    /// Saturating per-atom subtraction.
    pub fn difference(&self, other: &IntensionSet) -> Result<IntensionSet> {
        self.same_universe(other)?;
        Ok(IntensionSet {
            universe: self.universe.clone(),
            weights: self
                .weights
                .iter()
                .filter_map(|(&a, &w)| {
                    let d = w.saturating_sub(other.weight(a));
                    (d > 0).then_some((a, d))
                })
                .collect(),
        })
    }

    fn same_universe(&self, other: &IntensionSet) -> Result<()> {
        if self.universe == other.universe {
            Ok(())
        } else {
            Err(Error::UniverseMismatch(self.universe.clone(), other.universe.clone()))
        }
    }
}

/// Free-function form of [`IntensionSet::measure`].
pub fn measure(f: &IntensionSet) -> u64 {
    f.measure()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SetAlgebra {
    pub intersection: IntensionSet,
    pub union: IntensionSet,
    pub difference: IntensionSet,
}

pub fn set_algebra(f: &IntensionSet, g: &IntensionSet) -> Result<SetAlgebra> {
    Ok(SetAlgebra {
        intersection: f.intersection(g)?,
        union: f.union(g)?,
        difference: f.difference(g)?,
    })
}

/// Degree to which `reference` lies inside `concept`: `|fX ∩ fC| / |fX|`.
pub fn subsethood(reference: &IntensionSet, concept: &IntensionSet) -> Result<Rational> {
    let total = reference.measure();
    if total == 0 {
        return Err(Error::EmptyReference);
    }
    let common = reference.intersection(concept)?.measure();
    Ok(Rational::new(common as i128, total as i128))
}

/// Set-based similarity `|f ∩ g| / |f ∪ g|`.
pub fn similarity(f: &IntensionSet, g: &IntensionSet) -> Result<Rational> {
    let union = f.union(g)?.measure();
    if union == 0 {
        return Err(Error::BothEmpty);
    }
    let common = f.intersection(g)?.measure();
    Ok(Rational::new(common as i128, union as i128))
}

/// Absolute cosine of the angle between two feature vectors.
pub fn cosine(u: &[f64], v: &[f64]) -> Result<f64> {
    if u.len() != v.len() {
        return Err(Error::DimensionMismatch(u.len(), v.len()));
    }
    let norm = |x: &[f64]| x.iter().map(|a| a * a).sum::<f64>().sqrt();
    let (nu, nv) = (norm(u), norm(v));
    if nu == 0.0 || nv == 0.0 {
        return Err(Error::ZeroVector);
    }
    let dot: f64 = u.iter().zip(v).map(|(a, b)| a * b).sum();
    Ok((dot.abs() / (nu * nv)).min(1.0))
}

/// Possibility of each concept for the object with intension `reference`.
///
/// The result is flagged normalized exactly when some concept fully contains
/// the reference; otherwise it is sub-normalized.
pub fn compatibility_distribution(
    reference: &IntensionSet,
    concepts: &[(OutcomeLabel, IntensionSet)],
) -> Result<PossibilityDistribution<Rational>> {
    if reference.measure() == 0 {
        return Err(Error::EmptyReference);
    }
    let space = SampleSpace::fuzzy(concepts.iter().map(|(l, _)| l.as_str().to_string()))?;
    let values = concepts
        .iter()
        .map(|(_, f)| subsethood(reference, f))
        .collect::<Result<Vec<_>>>()?;
    let normalized = values.iter().any(|v| *v == Rational::from_integer(1));
    PossibilityDistribution::new(space, values, normalized)
}

/// First pair `(i, j)`, `i < j`, whose intensions overlap inside the reference.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub struct FuzzyWitness {
    pub first: usize,
    pub second: usize,
}

/// Whether the setup classifies the object into overlapping concepts,
/// i.e. some pair has `fX ∩ f_i ∩ f_j ≠ ∅`.
pub fn is_fuzzy_setup(reference: &IntensionSet, concepts: &[&IntensionSet]) -> Result<Option<FuzzyWitness>> {
    let projections = concepts
        .iter()
        .map(|f| reference.intersection(f))
        .collect::<Result<Vec<_>>>()?;
    for i in 0..projections.len() {
        for j in i + 1..projections.len() {
            if !projections[i].intersection(&projections[j])?.is_empty() {
                return Ok(Some(FuzzyWitness { first: i, second: j }));
            }
        }
    }
    Ok(None)
}

/// Whether some concept fully contains the reference (subsethood exactly 1).
pub fn is_exhaustive(reference: &IntensionSet, concepts: &[&IntensionSet]) -> Result<bool> {
    let one = Rational::from_integer(1);
    for f in concepts {
        if subsethood(reference, f)? == one {
            return Ok(true);
        }
    }
    if reference.measure() == 0 {
        return Err(Error::EmptyReference);
    }
    Ok(false)
}

/// An ellipse in grid coordinates.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct EllipseSpec {
    pub center: (f64, f64),
    pub semi_axes: (f64, f64),
    /// Counter-clockwise rotation of the first semi-axis, in radians.
    #[serde(default)]
    pub rotation: f64,
    pub label: OutcomeLabel,
}

impl EllipseSpec {
    pub fn new(label: &str, center: (f64, f64), semi_axes: (f64, f64), rotation: f64) -> Result<Self> {
        let spec = EllipseSpec { center, semi_axes, rotation, label: OutcomeLabel::new(label)? };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let (a, b) = self.semi_axes;
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidEllipse(format!("semi-axes must be positive, got ({a}, {b})")));
        }
        if !(self.center.0.is_finite() && self.center.1.is_finite() && self.rotation.is_finite()) {
            return Err(Error::InvalidEllipse("non-finite center or rotation".into()));
        }
        Ok(())
    }

    /// Whether point `(x, y)` satisfies the ellipse inequality.
    pub fn contains(&self, x: f64, y: f64) -> bool {
        let (dx, dy) = (x - self.center.0, y - self.center.1);
        let (sin, cos) = self.rotation.sin_cos();
        let u = dx * cos + dy * sin;
        let v = -dx * sin + dy * cos;
        let (a, b) = self.semi_axes;
        (u / a).powi(2) + (v / b).powi(2) <= 1.0
    }
}

/// A rectangular grid of square cells. Cell `(col, row)` has atom id
/// `row * cols + col` and center `origin + ((col + ½)·cell, (row + ½)·cell)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Grid {
    pub cols: u32,
    pub rows: u32,
    pub cell_size: f64,
    pub origin: (f64, f64),
}

impl Grid {
    pub fn new(cols: u32, rows: u32, cell_size: f64, origin: (f64, f64)) -> Result<Self> {
        let grid = Grid { cols, rows, cell_size, origin };
        grid.validate()?;
        Ok(grid)
    }

    /// Unit cells anchored at the origin.
    pub fn unit(cols: u32, rows: u32) -> Result<Self> {
        Grid::new(cols, rows, 1.0, (0.0, 0.0))
    }

    pub fn validate(&self) -> Result<()> {
        if self.cols == 0 || self.rows == 0 {
            return Err(Error::DegenerateGrid(format!("{}x{} has no cells", self.cols, self.rows)));
        }
        if (self.cols as u64) * (self.rows as u64) > u32::MAX as u64 {
            return Err(Error::DegenerateGrid("too many cells for atom ids".into()));
        }
        if !(self.cell_size > 0.0 && self.cell_size.is_finite()) {
            return Err(Error::DegenerateGrid(format!("cell size {} is not positive", self.cell_size)));
        }
        if !(self.origin.0.is_finite() && self.origin.1.is_finite()) {
            return Err(Error::DegenerateGrid("non-finite origin".into()));
        }
        Ok(())
    }

    /// Universe identifier shared by every intension rasterized on this grid.
    pub fn universe_id(&self) -> String {
        format!(
            "grid:{}x{}:cell={}:origin=({},{})",
            self.cols, self.rows, self.cell_size, self.origin.0, self.origin.1
        )
    }

    pub fn cell_area(&self) -> f64 {
        self.cell_size * self.cell_size
    }

    pub fn atom(&self, col: u32, row: u32) -> Atom {
        row * self.cols + col
    }

    pub fn cell_center(&self, col: u32, row: u32) -> (f64, f64) {
        (
            self.origin.0 + (col as f64 + 0.5) * self.cell_size,
            self.origin.1 + (row as f64 + 0.5) * self.cell_size,
        )
    }
}

/// Cells whose centers fall inside the ellipse, each with weight 1.
pub fn rasterize_ellipse(spec: &EllipseSpec, grid: &Grid) -> Result<IntensionSet> {
    grid.validate()?;
    spec.validate()?;
    let mut atoms = Vec::new();
    for row in 0..grid.rows {
        for col in 0..grid.cols {
            let (x, y) = grid.cell_center(col, row);
            if spec.contains(x, y) {
                atoms.push(grid.atom(col, row));
            }
        }
    }
    Ok(IntensionSet::from_atoms(grid.universe_id(), atoms))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn set(pairs: &[(Atom, u64)]) -> IntensionSet {
        IntensionSet::from_weights("u", pairs.iter().copied())
    }

    fn r(n: i128, d: i128) -> Rational {
        Rational::new(n, d)
    }

    #[test]
    fn measure_sums_weights() {
        assert_eq!(measure(&IntensionSet::empty("u")), 0);
        assert_eq!(measure(&set(&[(0, 2), (1, 3)])), 5);
        assert_eq!(set(&[(0, 0), (1, 4)]).support_len(), 1);
    }

    #[test]
    fn algebra_basics() {
        let f = set(&[(0, 2), (1, 3)]);
        let alg = set_algebra(&f, &f).unwrap();
        assert_eq!(alg.intersection, f);
        assert_eq!(alg.union, f);
        assert!(alg.difference.is_empty());

        let g = set(&[(5, 1), (6, 4)]);
        let alg = set_algebra(&f, &g).unwrap();
        assert_eq!(alg.intersection.measure(), 0);
        assert_eq!(alg.union.measure(), f.measure() + g.measure());
        assert_eq!(alg.difference, f);
    }

    #[test]
    fn weighted_min_max() {
        let f = set(&[(0, 2), (1, 3)]);
        let g = set(&[(0, 5), (1, 1), (2, 1)]);
        let alg = set_algebra(&f, &g).unwrap();
        assert_eq!(alg.intersection, set(&[(0, 2), (1, 1)]));
        assert_eq!(alg.union, set(&[(0, 5), (1, 3), (2, 1)]));
        assert_eq!(alg.difference, set(&[(1, 2)]));
    }

    #[test]
    fn universes_must_match() {
        let f = IntensionSet::from_atoms("a", [1]);
        let g = IntensionSet::from_atoms("b", [1]);
        assert_eq!(f.union(&g), Err(Error::UniverseMismatch("a".into(), "b".into())));
        assert!(subsethood(&f, &g).is_err());
    }

    #[test]
    fn subsethood_cases() {
        let fx = set(&[(0, 1), (1, 2)]);
        let bigger = set(&[(0, 3), (1, 2), (9, 1)]);
        assert_eq!(subsethood(&fx, &bigger).unwrap(), r(1, 1));
        assert_eq!(subsethood(&fx, &set(&[(7, 1)])).unwrap(), r(0, 1));
        assert_eq!(subsethood(&fx, &set(&[(1, 1)])).unwrap(), r(1, 3));
        assert_eq!(subsethood(&IntensionSet::empty("u"), &fx), Err(Error::EmptyReference));
    }

    #[test]
    fn half_overlap_gives_one_half() {
        let fx = IntensionSet::from_atoms("u", 0..10);
        let youth = IntensionSet::from_atoms("u", 0..5);
        assert_eq!(subsethood(&fx, &youth).unwrap(), r(1, 2));
    }

    #[test]
    fn similarity_cases() {
        let f = set(&[(0, 1), (1, 1)]);
        assert_eq!(similarity(&f, &f).unwrap(), r(1, 1));
        assert_eq!(similarity(&f, &set(&[(4, 1)])).unwrap(), r(0, 1));
        assert_eq!(similarity(&f, &set(&[(1, 1), (2, 1)])).unwrap(), r(1, 3));
        let e = IntensionSet::empty("u");
        assert_eq!(similarity(&e, &e), Err(Error::BothEmpty));
    }

    #[test]
    fn cosine_cases() {
        assert!((cosine(&[1.0, 2.0], &[2.0, 4.0]).unwrap() - 1.0).abs() < 1e-15);
        assert!((cosine(&[1.0, 2.0], &[-2.0, -4.0]).unwrap() - 1.0).abs() < 1e-15);
        assert_eq!(cosine(&[1.0, 0.0], &[0.0, 3.0]).unwrap(), 0.0);
        let expected = 1.0 / 2f64.sqrt();
        assert!((cosine(&[1.0, 1.0], &[1.0, 0.0]).unwrap() - expected).abs() < 1e-15);
        assert_eq!(cosine(&[0.0, 0.0], &[1.0, 0.0]), Err(Error::ZeroVector));
        assert_eq!(cosine(&[1.0], &[1.0, 0.0]), Err(Error::DimensionMismatch(1, 2)));
    }

    fn label(s: &str) -> OutcomeLabel {
        OutcomeLabel::new(s).unwrap()
    }

    #[test]
    fn compatibility_with_universal_concept() {
        let fx = IntensionSet::from_atoms("u", 3..7);
        let universal = IntensionSet::from_atoms("u", 0..20);
        let partial = IntensionSet::from_atoms("u", 0..5);
        let dist = compatibility_distribution(
            &fx,
            &[(label("PART"), partial), (label("PSI"), universal)],
        )
        .unwrap();
        assert_eq!(dist.values(), &[r(1, 2), r(1, 1)]);
        assert!(dist.is_normalized());
    }

    #[test]
    fn compatibility_innocent_and_subnormalized() {
        let fx = IntensionSet::from_atoms("u", 0..4);
        let all = IntensionSet::from_atoms("u", 0..8);
        let dist = compatibility_distribution(
            &fx,
            &[(label("a"), all.clone()), (label("b"), all.clone()), (label("c"), all)],
        )
        .unwrap();
        assert_eq!(dist.values(), &[r(1, 1); 3]);

        let dist = compatibility_distribution(
            &fx,
            &[(label("a"), IntensionSet::from_atoms("u", 0..2)), (label("b"), IntensionSet::from_atoms("u", 3..9))],
        )
        .unwrap();
        assert!(!dist.is_normalized());
        assert_eq!(dist.values(), &[r(1, 2), r(1, 4)]);
    }

    #[test]
    fn fuzzy_setup_detection() {
        let fx = IntensionSet::from_atoms("u", 0..10);
        let a = IntensionSet::from_atoms("u", 0..6);
        let b = IntensionSet::from_atoms("u", 4..12);
        assert_eq!(is_fuzzy_setup(&fx, &[&a, &b]).unwrap(), Some(FuzzyWitness { first: 0, second: 1 }));
        let c = IntensionSet::from_atoms("u", (0..3).chain(20..30));
        let d = IntensionSet::from_atoms("u", (5..8).chain(20..30));
        assert_eq!(is_fuzzy_setup(&fx, &[&c, &d]).unwrap(), None);
        assert_eq!(is_fuzzy_setup(&fx, &[&a]).unwrap(), None);
    }

    #[test]
    fn exhaustiveness() {
        let fx = IntensionSet::from_atoms("u", 2..4);
        let inside = IntensionSet::from_atoms("u", 0..10);
        let partial = IntensionSet::from_atoms("u", 0..3);
        assert!(is_exhaustive(&fx, &[&partial, &inside]).unwrap());
        assert!(!is_exhaustive(&fx, &[&partial]).unwrap());
        assert_eq!(is_exhaustive(&IntensionSet::empty("u"), &[&partial]), Err(Error::EmptyReference));
    }

    #[test]
    fn rasterize_coarse_and_off_grid() {
        let grid = Grid::unit(4, 4).unwrap();
        let off = EllipseSpec::new("off", (100.0, 100.0), (2.0, 3.0), 0.0).unwrap();
        assert!(rasterize_ellipse(&off, &grid).unwrap().is_empty());
        // centers (0.5,0.5),(1.5,0.5),(0.5,1.5),(1.5,1.5) are √0.5 from (1,1)
        let four = EllipseSpec::new("e", (1.0, 1.0), (0.8, 0.8), 0.0).unwrap();
        let f = rasterize_ellipse(&four, &grid).unwrap();
        let ids: Vec<Atom> = f.atoms().map(|(a, _)| a).collect();
        assert_eq!(ids, vec![0, 1, 4, 5]);
    }

    #[test]
    fn rasterize_rotation() {
        let grid = Grid::unit(8, 8).unwrap();
        let flat = EllipseSpec::new("e", (4.0, 4.0), (3.5, 0.6), 0.0).unwrap();
        let upright = EllipseSpec::new("e", (4.0, 4.0), (3.5, 0.6), std::f64::consts::FRAC_PI_2).unwrap();
        let a = rasterize_ellipse(&flat, &grid).unwrap();
        let b = rasterize_ellipse(&upright, &grid).unwrap();
        assert_eq!(a.measure(), b.measure());
        assert!(a.atoms().all(|(id, _)| id / 8 == 3 || id / 8 == 4));
        assert!(b.atoms().all(|(id, _)| id % 8 == 3 || id % 8 == 4));
    }

    #[test]
    fn rasterize_rejects_bad_inputs() {
        let e = EllipseSpec::new("e", (0.0, 0.0), (1.0, 1.0), 0.0).unwrap();
        let bad = Grid { cols: 0, rows: 3, cell_size: 1.0, origin: (0.0, 0.0) };
        assert!(matches!(rasterize_ellipse(&e, &bad), Err(Error::DegenerateGrid(_))));
        let bad = Grid { cols: 3, rows: 3, cell_size: 0.0, origin: (0.0, 0.0) };
        assert!(matches!(rasterize_ellipse(&e, &bad), Err(Error::DegenerateGrid(_))));
        assert!(EllipseSpec::new("e", (0.0, 0.0), (0.0, 1.0), 0.0).is_err());
    }

    #[test]
    fn unit_circle_area_converges() {
        let circle = EllipseSpec::new("c", (0.0, 0.0), (1.0, 1.0), 0.0).unwrap();
        let mut errors = Vec::new();
        for n in [16u32, 64, 256] {
            let grid = Grid::new(n, n, 2.0 / n as f64, (-1.0, -1.0)).unwrap();
            let area = rasterize_ellipse(&circle, &grid).unwrap().measure() as f64 * grid.cell_area();
            errors.push((area - std::f64::consts::PI).abs() / std::f64::consts::PI);
        }
        assert!(errors[2] < 0.02, "{errors:?}");
        assert!(errors[2] < errors[0]);
    }

    #[test]
    fn intension_json_schema() {
        let f: IntensionSet = serde_json::from_str(r#"{"universe": "u", "atoms": [[3, 2], [1, 1]]}"#).unwrap();
        assert_eq!(f.measure(), 3);
        assert_eq!(serde_json::to_string(&f).unwrap(), r#"{"universe":"u","atoms":[[1,1],[3,2]]}"#);
        assert!(serde_json::from_str::<IntensionSet>(r#"{"universe":"u","atoms":[[1,1],[1,2]]}"#).is_err());
    }

    fn arb_set() -> impl Strategy<Value = IntensionSet> {
        proptest::collection::btree_map(0u32..16, 1u64..5, 0..12)
            .prop_map(|m| IntensionSet::from_weights("u", m))
    }

    proptest! {
        #[test]
        fn inclusion_exclusion_on_measures(f in arb_set(), g in arb_set()) {
            let alg = set_algebra(&f, &g).unwrap();
            prop_assert_eq!(alg.union.measure() + alg.intersection.measure(), f.measure() + g.measure());
        }

        #[test]
        fn subsethood_is_bounded_and_reflexive(f in arb_set(), g in arb_set()) {
            prop_assume!(f.measure() > 0);
            let s = subsethood(&f, &g).unwrap();
            prop_assert!(s >= r(0, 1) && s <= r(1, 1));
            prop_assert_eq!(subsethood(&f, &f).unwrap(), r(1, 1));
            prop_assert_eq!(s == r(1, 1), f.is_within(&g));
            prop_assert_eq!(s == r(0, 1), f.intersection(&g).unwrap().is_empty());
        }

        #[test]
        fn subsethood_is_monotone(f in arb_set(), g in arb_set(), h in arb_set()) {
            prop_assume!(f.measure() > 0);
            let bigger = g.union(&h).unwrap();
            prop_assert!(subsethood(&f, &g).unwrap() <= subsethood(&f, &bigger).unwrap());
        }

        #[test]
        fn similarity_below_both_subsethoods(f in arb_set(), g in arb_set()) {
            prop_assume!(f.measure() > 0 && g.measure() > 0);
            let sim = similarity(&f, &g).unwrap();
            prop_assert!(sim <= subsethood(&f, &g).unwrap());
            prop_assert!(sim <= subsethood(&g, &f).unwrap());
        }

        #[test]
        fn overlap_inside_reference_gives_positive_degrees(fx in arb_set(), a in arb_set(), b in arb_set()) {
            prop_assume!(fx.measure() > 0);
            if is_fuzzy_setup(&fx, &[&a, &b]).unwrap().is_some() {
                prop_assert!(subsethood(&fx, &a).unwrap() > r(0, 1));
                prop_assert!(subsethood(&fx, &b).unwrap() > r(0, 1));
            }
        }
    }
}
