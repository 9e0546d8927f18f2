//! Sigma-product and max-product inference over two-variable tables.
//!
//! The two calculi share one shape. A joint table is reduced to marginals by
//! sum (probability) or max (possibility); conditionals are the joint divided
//! by the marginal of the conditioning variable; relations compose by
//! sum-of-products or max-of-products; and an observation updates a prior by
//! normalizing `prior × likelihood` with the sum or the max.
//!
//! Composition assumes the outer variables are independent given the
//! intermediate one. That is a modeling assumption, not something checked.

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::measures::{MeasureKind, PossibilityDistribution, ProbabilityDistribution};
use crate::scalar::{self, Scalar, DEFAULT_TOLERANCE};
use crate::space::{OutcomeLabel, SampleSpace};

/// Sum for probability, max for possibility.
fn combine<S: Scalar>(kind: MeasureKind, a: S, b: S) -> S {
    match kind {
        MeasureKind::Probability => a + b,
        MeasureKind::Possibility => a.max_of(b),
    }
}

fn reduce<S: Scalar>(kind: MeasureKind, values: impl IntoIterator<Item = S>) -> S {
    values.into_iter().fold(S::zero(), |acc, v| combine(kind, acc, v))
}

fn space_for(kind: MeasureKind, labels: &[OutcomeLabel]) -> Result<SampleSpace> {
    SampleSpace::new(kind.space_kind(), labels.iter().map(|l| l.as_str().to_string()))
}

fn check_space(kind: MeasureKind, space: &SampleSpace) -> Result<()> {
    if space.kind() != kind.space_kind() {
        return Err(Error::KindMismatch(format!("{kind} tables need {} sample spaces", kind.space_kind())));
    }
    Ok(())
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Axis {
    /// One value per row label.
    Row,
    /// One value per column label.
    Col,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Direction {
    /// Column variable conditioned on the row variable.
    OutGivenRow,
    /// Row variable conditioned on the column variable.
    OutGivenCol,
}

/// A table of joint values indexed `(row label, column label)`.
#[derive(Clone, Debug, PartialEq)]
pub struct JointDistribution<S: Scalar> {
    kind: MeasureKind,
    rows: SampleSpace,
    cols: SampleSpace,
    values: Vec<Vec<S>>,
    normalized: bool,
}

impl<S: Scalar> JointDistribution<S> {
    /// Shape and space-kind checks; value contracts are left to [`validate_joint`].
    pub fn new(kind: MeasureKind, rows: SampleSpace, cols: SampleSpace, values: Vec<Vec<S>>) -> Result<Self> {
        check_space(kind, &rows)?;
        check_space(kind, &cols)?;
        if values.len() != rows.len() || values.iter().any(|r| r.len() != cols.len()) {
            return Err(Error::InvalidDistribution(format!(
                "joint table must be {}x{}",
                rows.len(),
                cols.len()
            )));
        }
        Ok(JointDistribution { kind, rows, cols, values, normalized: true })
    }

    /// Marks a possibility joint as sub-normalized (global max below 1).
    pub fn with_normalized(mut self, normalized: bool) -> Self {
        self.normalized = normalized;
        self
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn rows(&self) -> &SampleSpace {
        &self.rows
    }

    pub fn cols(&self) -> &SampleSpace {
        &self.cols
    }

    pub fn values(&self) -> &[Vec<S>] {
        &self.values
    }

    pub fn get(&self, row: usize, col: usize) -> S {
        self.values[row][col]
    }

    pub fn is_normalized(&self) -> bool {
        self.normalized
    }

    fn axis_totals(&self, axis: Axis) -> Vec<S> {
        match axis {
            Axis::Row => self.values.iter().map(|r| reduce(self.kind, r.iter().copied())).collect(),
            Axis::Col => (0..self.cols.len())
                .map(|c| reduce(self.kind, self.values.iter().map(|r| r[c])))
                .collect(),
        }
    }

    /// Product joint of a row distribution and a column distribution.
    pub fn outer(kind: MeasureKind, rows: SampleSpace, row_values: &[S], cols: SampleSpace, col_values: &[S]) -> Result<Self> {
        let values = row_values.iter().map(|&a| col_values.iter().map(|&b| a * b).collect()).collect();
        JointDistribution::new(kind, rows, cols, values)
    }
}

/// A marginal in the calculus of its joint.
#[derive(Clone, Debug, PartialEq, Serialize)]
#[serde(untagged)]
pub enum Marginal<S: Scalar> {
    Probability(ProbabilityDistribution<S>),
    Possibility(PossibilityDistribution<S>),
}

impl<S: Scalar> Marginal<S> {
    pub fn values(&self) -> &[S] {
        match self {
            Marginal::Probability(d) => d.values(),
            Marginal::Possibility(d) => d.values(),
        }
    }

    pub fn space(&self) -> &SampleSpace {
        match self {
            Marginal::Probability(d) => d.space(),
            Marginal::Possibility(d) => d.space(),
        }
    }
}

/// Sum (probability) or max (possibility) over the other axis.
pub fn marginal<S: Scalar>(joint: &JointDistribution<S>, axis: Axis) -> Marginal<S> {
    let space = match axis {
        Axis::Row => joint.rows.clone(),
        Axis::Col => joint.cols.clone(),
    };
    let values = joint.axis_totals(axis);
    // shapes already agree, so the unchecked constructors cannot fail
    match joint.kind {
        MeasureKind::Probability => Marginal::Probability(
            ProbabilityDistribution::unchecked(space, values).expect("marginal shape"),
        ),
        MeasureKind::Possibility => {
            let normalized = scalar::max(&values).close_to(S::one(), DEFAULT_TOLERANCE);
            Marginal::Possibility(PossibilityDistribution::unchecked(space, values, normalized).expect("marginal shape"))
        }
    }
}

/// Conditional values `(out | given)`: column `g` holds the distribution of
/// the output variable given outcome `g`. Columns whose conditioning value had
/// zero marginal are undefined.
#[derive(Clone, Debug, PartialEq)]
pub struct ConditionalRelation<S: Scalar> {
    kind: MeasureKind,
    given: SampleSpace,
    out: SampleSpace,
    /// `matrix[out][given]`.
    matrix: Vec<Vec<S>>,
    undefined: Vec<bool>,
    subnormalized: bool,
}

impl<S: Scalar> ConditionalRelation<S> {
    /// Validated construction: every defined column sums to 1 (probability)
    /// or has maximum 1 (possibility).
    pub fn new(kind: MeasureKind, given: SampleSpace, out: SampleSpace, matrix: Vec<Vec<S>>) -> Result<Self> {
        let rel = Self::permissive(kind, given, out, matrix, vec![])?;
        if let Some(bad) = rel.column_report(DEFAULT_TOLERANCE).into_iter().find(|c| !c.ok) {
            return Err(Error::InvalidRelation(format!(
                "column `{}` has {} {}, expected 1",
                bad.given,
                if kind == MeasureKind::Probability { "sum" } else { "max" },
                bad.total.map(|t| t.to_string()).unwrap_or_default()
            )));
        }
        Ok(rel)
    }

    /// Possibility relation whose columns may peak below 1. The relation is
    /// flagged sub-normalized when any defined column does.
    pub fn subnormalized(given: SampleSpace, out: SampleSpace, matrix: Vec<Vec<S>>) -> Result<Self> {
        Self::permissive(MeasureKind::Possibility, given, out, matrix, vec![])
    }

    /// Shape, space-kind and range checks only. `undefined` lists column
    /// indices to mark undefined; their entries are ignored.
    pub fn permissive(
        kind: MeasureKind,
        given: SampleSpace,
        out: SampleSpace,
        matrix: Vec<Vec<S>>,
        undefined: Vec<usize>,
    ) -> Result<Self> {
        check_space(kind, &given)?;
        check_space(kind, &out)?;
        if matrix.len() != out.len() || matrix.iter().any(|r| r.len() != given.len()) {
            return Err(Error::InvalidRelation(format!(
                "matrix must be {} out-rows by {} given-columns",
                out.len(),
                given.len()
            )));
        }
        let mut flags = vec![false; given.len()];
        for g in undefined {
            *flags.get_mut(g).ok_or_else(|| Error::InvalidRelation(format!("no column {g}")))? = true;
        }
        for (o, row) in matrix.iter().enumerate() {
            for (g, v) in row.iter().enumerate() {
                if !flags[g] && !(S::zero().at_most(*v, DEFAULT_TOLERANCE) && v.at_most(S::one(), DEFAULT_TOLERANCE)) {
                    return Err(Error::InvalidRelation(format!(
                        "entry ({} | {}) = {v} is outside [0, 1]",
                        out.labels()[o],
                        given.labels()[g]
                    )));
                }
            }
        }
        let mut rel = ConditionalRelation { kind, given, out, matrix, undefined: flags, subnormalized: false };
        rel.subnormalized = kind == MeasureKind::Possibility && rel.column_report(DEFAULT_TOLERANCE).iter().any(|c| !c.ok);
        Ok(rel)
    }

    /// Diagonal relation mapping each outcome to itself.
    pub fn identity(kind: MeasureKind, space: SampleSpace) -> Result<Self> {
        let n = space.len();
        let matrix = (0..n)
            .map(|i| (0..n).map(|j| if i == j { S::one() } else { S::zero() }).collect())
            .collect();
        ConditionalRelation::new(kind, space.clone(), space, matrix)
    }

    pub fn kind(&self) -> MeasureKind {
        self.kind
    }

    pub fn given(&self) -> &SampleSpace {
        &self.given
    }

    pub fn out(&self) -> &SampleSpace {
        &self.out
    }

    /// Entry `(out | given)`, `None` for an undefined column.
    pub fn get(&self, out: usize, given: usize) -> Option<S> {
        (!self.undefined[given]).then(|| self.matrix[out][given])
    }

    pub fn is_defined(&self, given: usize) -> bool {
        !self.undefined[given]
    }

    pub fn is_subnormalized(&self) -> bool {
        self.subnormalized
    }

    /// Column of output values given outcome `given`.
    pub fn column(&self, given: usize) -> Option<Vec<S>> {
        (!self.undefined[given]).then(|| self.matrix.iter().map(|r| r[given]).collect())
    }

    /// Sum or max of each column against the calculus' contract.
    pub fn column_report(&self, tol: f64) -> Vec<ColumnSummary<S>> {
        (0..self.given.len())
            .map(|g| {
                let label = self.given.labels()[g].clone();
                match self.column(g) {
                    None => ColumnSummary { given: label, total: None, ok: true },
                    Some(col) => {
                        let total = reduce(self.kind, col);
                        ColumnSummary { given: label, total: Some(total), ok: total.close_to(S::one(), tol) }
                    }
                }
            })
            .collect()
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ColumnSummary<S: Scalar> {
    pub given: OutcomeLabel,
    /// Sum (probability) or max (possibility); `None` when undefined.
    pub total: Option<S>,
    pub ok: bool,
}

/// Divides the joint by the marginal of the conditioning variable.
pub fn condition<S: Scalar>(joint: &JointDistribution<S>, direction: Direction) -> Result<ConditionalRelation<S>> {
    let (given_axis, given, out) = match direction {
        Direction::OutGivenRow => (Axis::Row, joint.rows.clone(), joint.cols.clone()),
        Direction::OutGivenCol => (Axis::Col, joint.cols.clone(), joint.rows.clone()),
    };
    let given_marginal = joint.axis_totals(given_axis);
    if given_marginal.iter().all(|m| *m == S::zero()) {
        return Err(Error::AllZeroGiven);
    }
    let undefined: Vec<usize> = (0..given.len()).filter(|&g| given_marginal[g] == S::zero()).collect();
    let matrix = (0..out.len())
        .map(|o| {
            (0..given.len())
                .map(|g| {
                    if given_marginal[g] == S::zero() {
                        return S::zero();
                    }
                    let v = match direction {
                        Direction::OutGivenRow => joint.values[g][o],
                        Direction::OutGivenCol => joint.values[o][g],
                    };
                    v / given_marginal[g]
                })
                .collect()
        })
        .collect();
    ConditionalRelation::permissive(joint.kind, given, out, matrix, undefined)
}

/// Rebuilds a joint as `conditional × marginal of the conditioning variable`.
/// `direction` picks which axis of the result the conditioning variable
/// occupies, matching [`condition`]. Undefined columns contribute zeros.
pub fn recombine<S: Scalar>(
    relation: &ConditionalRelation<S>,
    given_marginal: &[S],
    direction: Direction,
) -> Result<JointDistribution<S>> {
    if given_marginal.len() != relation.given.len() {
        return Err(Error::SpaceMismatch(format!(
            "{} marginal values for {} conditioning labels",
            given_marginal.len(),
            relation.given.len()
        )));
    }
    let entry = |o: usize, g: usize| relation.get(o, g).map_or(S::zero(), |v| v * given_marginal[g]);
    let (rows, cols, values): (_, _, Vec<Vec<S>>) = match direction {
        Direction::OutGivenRow => (
            relation.given.clone(),
            relation.out.clone(),
            (0..relation.given.len()).map(|g| (0..relation.out.len()).map(|o| entry(o, g)).collect()).collect(),
        ),
        Direction::OutGivenCol => (
            relation.out.clone(),
            relation.given.clone(),
            (0..relation.out.len()).map(|o| (0..relation.given.len()).map(|g| entry(o, g)).collect()).collect(),
        ),
    };
    JointDistribution::new(relation.kind, rows, cols, values)
}

/// Chains `first: Y → Z` with `second: Z → X` into `Y → X`:
/// `(x | y) = ⊕_z (x | z) ⊗ (z | y)` with `⊕` sum or max and `⊗` product.
pub fn compose<S: Scalar>(first: &ConditionalRelation<S>, second: &ConditionalRelation<S>) -> Result<ConditionalRelation<S>> {
    if first.kind != second.kind {
        return Err(Error::KindMismatch(format!("cannot compose {} with {}", first.kind, second.kind)));
    }
    if !first.out.same_labels(&second.given) {
        return Err(Error::SpaceMismatch("first relation's output labels must equal the second's conditioning labels".into()));
    }
    let kind = first.kind;
    let (ny, nz, nx) = (first.given.len(), first.out.len(), second.out.len());
    let undefined: Vec<usize> = (0..ny)
        .filter(|&y| {
            first.undefined[y] || (0..nz).any(|z| second.undefined[z] && first.matrix[z][y] > S::zero())
        })
        .collect();
    let matrix = (0..nx)
        .map(|x| {
            (0..ny)
                .map(|y| {
                    if undefined.contains(&y) {
                        return S::zero();
                    }
                    reduce(
                        kind,
                        (0..nz).filter(|&z| !second.undefined[z]).map(|z| second.matrix[x][z] * first.matrix[z][y]),
                    )
                })
                .collect()
        })
        .collect();
    ConditionalRelation::permissive(kind, first.given.clone(), second.out.clone(), matrix, undefined)
}

/// Prior values times the likelihood of the observation, one per prior label.
fn weighted_evidence<S: Scalar>(
    kind: MeasureKind,
    prior_space: &SampleSpace,
    prior: &[S],
    likelihood: &ConditionalRelation<S>,
    observed: &str,
) -> Result<Vec<S>> {
    if likelihood.kind != kind {
        return Err(Error::KindMismatch(format!("{kind} update needs a {kind} likelihood")));
    }
    if !likelihood.given.same_labels(prior_space) {
        return Err(Error::SpaceMismatch("likelihood must be conditioned on the prior's labels".into()));
    }
    let obs = likelihood
        .out
        .index_of(observed)
        .ok_or_else(|| Error::ForeignLabel(observed.to_string()))?;
    (0..prior.len())
        .map(|k| match likelihood.get(obs, k) {
            Some(l) => Ok(prior[k] * l),
            None if prior[k] == S::zero() => Ok(S::zero()),
            None => Err(Error::InvalidRelation(format!(
                "likelihood column `{}` is undefined",
                prior_space.labels()[k]
            ))),
        })
        .collect()
}

/// Bayesian posterior `p(x_i) p(y | x_i) / Σ_k p(x_k) p(y | x_k)`.
pub fn bayes_update<S: Scalar>(
    prior: &ProbabilityDistribution<S>,
    likelihood: &ConditionalRelation<S>,
    observed: &str,
) -> Result<ProbabilityDistribution<S>> {
    let numer = weighted_evidence(MeasureKind::Probability, prior.space(), prior.values(), likelihood, observed)?;
    let evidence = scalar::sum(&numer);
    if evidence == S::zero() {
        return Err(Error::ZeroEvidence(observed.to_string()));
    }
    ProbabilityDistribution::unchecked(prior.space().clone(), numer.into_iter().map(|v| v / evidence).collect())
}

/// Possibilistic posterior `π(x_i) π(y | x_i) / max_k π(x_k) π(y | x_k)`.
/// The result always peaks at exactly 1. Sub-normalized priors are accepted.
pub fn poss_update<S: Scalar>(
    prior: &PossibilityDistribution<S>,
    likelihood: &ConditionalRelation<S>,
    observed: &str,
) -> Result<PossibilityDistribution<S>> {
    let numer = weighted_evidence(MeasureKind::Possibility, prior.space(), prior.values(), likelihood, observed)?;
    let evidence = scalar::max(&numer);
    if evidence == S::zero() {
        return Err(Error::ZeroEvidence(observed.to_string()));
    }
    PossibilityDistribution::unchecked(prior.space().clone(), numer.into_iter().map(|v| v / evidence).collect(), true)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct JointReport<S: Scalar> {
    pub kind: MeasureKind,
    pub total: S,
    pub max: S,
    pub row_totals: Vec<S>,
    pub col_totals: Vec<S>,
    pub passed: bool,
    pub witness: Option<String>,
}

/// Checks the kind-specific contract of a joint table.
pub fn validate_joint<S: Scalar>(joint: &JointDistribution<S>) -> JointReport<S> {
    validate_joint_tol(joint, DEFAULT_TOLERANCE)
}

pub fn validate_joint_tol<S: Scalar>(joint: &JointDistribution<S>, tol: f64) -> JointReport<S> {
    let all: Vec<S> = joint.values.iter().flatten().copied().collect();
    let total = scalar::sum(&all);
    let max = scalar::max(&all);
    let mut witness = None;
    'scan: for (r, row) in joint.values.iter().enumerate() {
        for (c, v) in row.iter().enumerate() {
            if !(S::zero().at_most(*v, tol) && v.at_most(S::one(), tol)) {
                witness = Some(format!(
                    "entry ({}, {}) = {v} is outside [0, 1]",
                    joint.rows.labels()[r],
                    joint.cols.labels()[c]
                ));
                break 'scan;
            }
        }
    }
    if witness.is_none() {
        witness = match joint.kind {
            MeasureKind::Probability if !total.close_to(S::one(), tol) => Some(format!("entries sum to {total}, not 1")),
            MeasureKind::Possibility if joint.normalized && !max.close_to(S::one(), tol) => {
                Some(format!("flagged normalized but global max is {max}"))
            }
            MeasureKind::Possibility if !joint.normalized && max.close_to(S::one(), tol) => {
                Some("flagged sub-normalized but global max is 1".to_string())
            }
            _ => None,
        };
    }
    let (row_totals, col_totals) = match joint.kind {
        MeasureKind::Probability => (
            joint.values.iter().map(|r| scalar::sum(r)).collect(),
            (0..joint.cols.len()).map(|c| scalar::sum(&joint.values.iter().map(|r| r[c]).collect::<Vec<_>>())).collect(),
        ),
        MeasureKind::Possibility => (joint.axis_totals(Axis::Row), joint.axis_totals(Axis::Col)),
    };
    JointReport { kind: joint.kind, total, max, row_totals, col_totals, passed: witness.is_none(), witness }
}

// JSON schemas

#[derive(Serialize, Deserialize)]
struct RawRelation<S> {
    kind: MeasureKind,
    given: Vec<OutcomeLabel>,
    out: Vec<OutcomeLabel>,
    matrix: Vec<Vec<Option<S>>>,
}

impl<S: Scalar> Serialize for ConditionalRelation<S> {
    fn serialize<Z: serde::Serializer>(&self, z: Z) -> std::result::Result<Z::Ok, Z::Error> {
        RawRelation {
            kind: self.kind,
            given: self.given.labels().to_vec(),
            out: self.out.labels().to_vec(),
            matrix: (0..self.out.len())
                .map(|o| (0..self.given.len()).map(|g| self.get(o, g)).collect())
                .collect(),
        }
        .serialize(z)
    }
}

impl<'de, S: Scalar + DeserializeOwned> Deserialize<'de> for ConditionalRelation<S> {
    /// `null` entries mark undefined columns; a column must be all-null or
    /// all-numeric. Possibility columns peaking below 1 are accepted and
    /// flagged sub-normalized.
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawRelation::<S>::deserialize(d)?;
        let given = space_for(raw.kind, &raw.given).map_err(D::Error::custom)?;
        let out = space_for(raw.kind, &raw.out).map_err(D::Error::custom)?;
        if raw.matrix.len() != out.len() || raw.matrix.iter().any(|r| r.len() != given.len()) {
            return Err(D::Error::custom(format!(
                "matrix must have {} rows (out labels) of {} entries (given labels)",
                out.len(),
                given.len()
            )));
        }
        let mut undefined = Vec::new();
        for g in 0..given.len() {
            let nulls = raw.matrix.iter().filter(|r| r[g].is_none()).count();
            if nulls == out.len() {
                undefined.push(g);
            } else if nulls > 0 {
                return Err(D::Error::custom(format!("column `{}` mixes null and numeric entries", given.labels()[g])));
            }
        }
        let matrix = raw
            .matrix
            .into_iter()
            .map(|r| r.into_iter().map(|v| v.unwrap_or_else(S::zero)).collect())
            .collect();
        let rel = ConditionalRelation::permissive(raw.kind, given, out, matrix, undefined).map_err(D::Error::custom)?;
        if rel.kind == MeasureKind::Probability {
            if let Some(bad) = rel.column_report(DEFAULT_TOLERANCE).iter().find(|c| !c.ok) {
                return Err(D::Error::custom(format!("probability column `{}` does not sum to 1", bad.given)));
            }
        }
        Ok(rel)
    }
}

#[derive(Serialize, Deserialize)]
struct RawJoint<S> {
    kind: MeasureKind,
    rows: Vec<OutcomeLabel>,
    cols: Vec<OutcomeLabel>,
    matrix: Vec<Vec<S>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    normalized: Option<bool>,
}

impl<S: Scalar> Serialize for JointDistribution<S> {
    fn serialize<Z: serde::Serializer>(&self, z: Z) -> std::result::Result<Z::Ok, Z::Error> {
        RawJoint {
            kind: self.kind,
            rows: self.rows.labels().to_vec(),
            cols: self.cols.labels().to_vec(),
            matrix: self.values.clone(),
            normalized: (self.kind == MeasureKind::Possibility).then_some(self.normalized),
        }
        .serialize(z)
    }
}

impl<'de, S: Scalar + DeserializeOwned> Deserialize<'de> for JointDistribution<S> {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        use serde::de::Error as _;
        let raw = RawJoint::<S>::deserialize(d)?;
        let rows = space_for(raw.kind, &raw.rows).map_err(D::Error::custom)?;
        let cols = space_for(raw.kind, &raw.cols).map_err(D::Error::custom)?;
        Ok(JointDistribution::new(raw.kind, rows, cols, raw.matrix)
            .map_err(D::Error::custom)?
            .with_normalized(raw.normalized.unwrap_or(true)))
    }
}
