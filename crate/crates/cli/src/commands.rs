use std::fmt::Write as _;
use std::path::Path;

use serde::Serialize;
use serde_json::{json, Value};
use sigmax_core::disjunction::MaxitivityReport;
use sigmax_core::measures::{check_poss_axioms_tol, check_prob_axioms_tol, total_variation};
use sigmax_core::oracle::{sweep_axioms, sweep_disjunction, sweep_inference, SweepResult};
use sigmax_core::{
    bayes_update, classify_pair, compatibility_distribution, compose, condition, from_frequencies, generate_fixture,
    is_exhaustive, is_fuzzy_setup, marginal, poss_event, poss_update, prob_event, prob_union_report, recombine, sample,
    validate_joint, verify_exact_maxitivity, verify_max_extraction, Axis, ConditionalRelation, Direction, Distribution,
    Event, Fixture, FixtureName, FrequencyCounts, Grid, JointDistribution, ProbabilityDistribution,
    Rational, SampleSpace,
};

use crate::input::{DocKind, Document, InputError};

/// What a command hands back to the dispatcher.
pub struct Report {
    pub json: Json,
    pub text: String,
    /// False when a check or verdict failed.
    pub passed: bool,
}

pub enum Json {
    Document(Value),
    Lines(Vec<Value>),
}

pub type Outcome = Result<Report, InputError>;

fn to_value<T: Serialize>(v: &T) -> Value {
    serde_json::to_value(v).expect("reports serialize")
}

fn q(r: Rational) -> String {
    format!("{r} (≈{:.6})", r.to_f64())
}

fn report(value: Value, text: String, passed: bool) -> Report {
    Report { json: Json::Document(value), text, passed }
}

fn parse_event(space: &SampleSpace, list: &str, doc: &Document) -> Result<Event, InputError> {
    let labels: Vec<&str> = list.split(',').map(str::trim).filter(|s| !s.is_empty()).collect();
    let event = Event::of(labels).map_err(|e| InputError::arg(e.to_string()))?;
    space.mask_of(&event).map_err(|e| doc.error(format!("event `{list}`: {e}")))?;
    Ok(event)
}

pub fn check(path: &Path, tol: f64) -> Outcome {
    let doc = Document::read(path)?;
    match doc.kind {
        DocKind::Distribution => match doc.parse::<Distribution>()? {
            Distribution::Probability(d) => {
                let r = check_prob_axioms_tol(&d, tol);
                let text = format!(
                    "probability distribution on {} labels\n  nonnegativity  {}\n  normality      {}\n  additivity     {}\n  sum            {}\n",
                    d.space().len(),
                    r.nonnegativity,
                    r.normality,
                    r.additivity,
                    q(r.sum)
                );
                Ok(report(json!({"kind": "probability", "report": to_value(&r), "passed": r.all_pass()}), text, r.all_pass()))
            }
            Distribution::Possibility(d) => {
                let r = check_poss_axioms_tol(&d, tol);
                let text = format!(
                    "possibility distribution on {} labels\n  range          {}\n  empty set      {}\n  normality      {}\n  maxitivity     {}\n  max            {}\n  sum            {}\n",
                    d.space().len(),
                    r.range,
                    r.empty_set,
                    r.normality,
                    r.maxitivity,
                    q(r.max),
                    q(r.sum)
                );
                Ok(report(json!({"kind": "possibility", "report": to_value(&r), "passed": r.all_pass()}), text, r.all_pass()))
            }
        },
        DocKind::Joint => {
            let joint: JointDistribution<Rational> = doc.parse()?;
            let r = validate_joint(&joint);
            let text = format!(
                "{} joint {}×{}\n  total  {}\n  max    {}\n  {}\n",
                r.kind,
                joint.rows().len(),
                joint.cols().len(),
                q(r.total),
                q(r.max),
                r.witness.clone().map_or("pass".into(), |w| format!("FAIL ({w})"))
            );
            Ok(report(json!({"kind": "joint", "report": to_value(&r), "passed": r.passed}), text, r.passed))
        }
        DocKind::Relation => {
            let rel: ConditionalRelation<Rational> = doc.parse()?;
            let columns = rel.column_report(tol);
            let passed = columns.iter().all(|c| c.ok);
            let mut text = format!("{} relation, columns:\n", rel.kind());
            for c in &columns {
                let total = c.total.map_or("undefined".into(), q);
                let _ = writeln!(text, "  {:<12} {:<28} {}", c.given.as_str(), total, if c.ok { "ok" } else { "FAIL" });
            }
            Ok(report(json!({"kind": "relation", "columns": to_value(&columns), "passed": passed}), text, passed))
        }
        DocKind::Counts => {
            let counts: FrequencyCounts = doc.parse()?;
            let dist = from_frequencies(&counts).map_err(|e| doc.error(e))?;
            let r = check_prob_axioms_tol(&dist, tol);
            Ok(report(
                json!({"kind": "counts", "report": to_value(&r), "passed": r.all_pass()}),
                format!("frequencies from {} votes: additivity {}\n", counts.total(), r.additivity),
                r.all_pass(),
            ))
        }
        DocKind::Fixture | DocKind::Space => Err(doc.error("check expects a distribution, counts, joint or relation document")),
    }
}

fn load_fixture(path: &Path) -> Result<(Document, Fixture), InputError> {
    let doc = Document::read(path)?;
    let fixture = doc.expect::<Fixture>(DocKind::Fixture)?;
    Ok((doc, fixture))
}

pub fn classify(path: &Path) -> Outcome {
    let (doc, fx) = load_fixture(path)?;
    let x = &fx.reference.intension;
    let mut pairs = Vec::new();
    let mut text = format!("reference {} ({} atoms)\n", fx.reference.label, x.measure());
    for (i, a) in fx.concepts.iter().enumerate() {
        for b in &fx.concepts[i + 1..] {
            let class = classify_pair(x, &a.intension, &b.intension).map_err(|e| doc.error(e))?;
            let _ = writeln!(text, "  {:<10} {:<10} {class}", a.label.as_str(), b.label.as_str());
            pairs.push(json!({"first": a.label, "second": b.label, "class": class}));
        }
    }
    let refs = fx.intensions();
    let fuzzy = is_fuzzy_setup(x, &refs).map_err(|e| doc.error(e))?;
    let exhaustive = is_exhaustive(x, &refs).map_err(|e| doc.error(e))?;
    let _ = writeln!(text, "fuzzy setup: {}\nexhaustive: {exhaustive}", fuzzy.is_some());
    Ok(report(json!({"pairs": pairs, "fuzzy_setup": to_value(&fuzzy), "exhaustive": exhaustive}), text, true))
}

pub fn measure(path: &Path, event: Option<&str>) -> Outcome {
    let doc = Document::read(path)?;
    match doc.kind {
        DocKind::Fixture => {
            let fx = doc.parse::<Fixture>()?;
            let dist = compatibility_distribution(&fx.reference.intension, &fx.labeled()).map_err(|e| doc.error(e))?;
            let mut text = format!("compatibility with {}\n", fx.reference.label);
            for (l, v) in dist.space().labels().iter().zip(dist.values()) {
                let _ = writeln!(text, "  {:<12} {}", l.as_str(), q(*v));
            }
            Ok(report(to_value(&dist), text, true))
        }
        DocKind::Counts => {
            let counts: FrequencyCounts = doc.parse()?;
            let dist = from_frequencies(&counts).map_err(|e| doc.error(e))?;
            let mut text = format!("relative frequencies of {} votes\n", counts.total());
            for (l, v) in dist.space().labels().iter().zip(dist.values()) {
                let _ = writeln!(text, "  {:<12} {}", l.as_str(), q(*v));
            }
            Ok(report(to_value(&dist), text, true))
        }
        DocKind::Distribution => {
            let dist = doc.parse::<Distribution>()?;
            let space = dist.space().clone();
            let events: Vec<Event> = match event {
                Some(list) => vec![parse_event(&space, list, &doc)?],
                None => sigmax_core::enumerate_events(&space).map_err(|e| doc.error(e))?,
            };
            let mut rows = Vec::new();
            let mut text = format!("{} event measures\n", dist.kind());
            for e in events {
                let v = match &dist {
                    Distribution::Probability(d) => prob_event(d, &e),
                    Distribution::Possibility(d) => poss_event(d, &e),
                }
                .map_err(|err| doc.error(err))?;
                let _ = writeln!(text, "  {:<24} {}", e.to_string(), q(v));
                rows.push(json!({"event": e, "value": v}));
            }
            Ok(report(json!({"kind": dist.kind(), "events": rows}), text, true))
        }
        _ => Err(doc.error("measure expects a distribution, counts or fixture document")),
    }
}

fn maxitivity_text(r: &MaxitivityReport) -> String {
    let mut text = format!(
        "{:<8} {:<8} {:<22} {:<14} {:<14} {:<14} {:<14} {:<14}\n",
        "first", "second", "class", "exact", "max", "sigma", "max_error", "sigma_error"
    );
    for p in &r.pairs {
        let rep = &p.report;
        let _ = writeln!(
            text,
            "{:<8} {:<8} {:<22} {:<14} {:<14} {:<14} {:<14} {:<14}",
            p.first.as_str(),
            p.second.as_str(),
            rep.class.to_string(),
            rep.pi_union_exact.to_string(),
            rep.pi_union_max.to_string(),
            rep.pi_sigma.to_string(),
            rep.max_error.to_string(),
            rep.sigma_error.to_string()
        );
    }
    let _ = writeln!(text, "nested pairs: {}, all exact under max: {}", r.nested_count, r.nested_pairs_exact);
    text
}

pub fn compare_union(path: &Path, a: Option<&str>, b: Option<&str>) -> Outcome {
    let doc = Document::read(path)?;
    match doc.kind {
        DocKind::Fixture => {
            let fx = doc.parse::<Fixture>()?;
            let x = &fx.reference.intension;
            let r = verify_exact_maxitivity(x, &fx.labeled()).map_err(|e| doc.error(e))?;
            let mut text = maxitivity_text(&r);
            let refs = fx.intensions();
            let extraction = if is_exhaustive(x, &refs).map_err(|e| doc.error(e))? {
                let e = verify_max_extraction(x, &fx.labeled()).map_err(|e| doc.error(e))?;
                let _ = writeln!(text, "whole space: π = {}, max = {} at {}, holds: {}", e.pi_space, e.max_value, e.argmax, e.holds);
                Some(e)
            } else {
                None
            };
            let passed = r.nested_pairs_exact && extraction.as_ref().is_none_or(|e| e.holds);
            Ok(report(json!({"pairs": to_value(&r.pairs), "nested_count": r.nested_count, "nested_pairs_exact": r.nested_pairs_exact, "extraction": to_value(&extraction)}), text, passed))
        }
        DocKind::Distribution => {
            let Distribution::Probability(dist) = doc.parse::<Distribution>()? else {
                return Err(doc.error("compare-union on a distribution needs a probability distribution"));
            };
            let (Some(a), Some(b)) = (a, b) else {
                return Err(InputError::arg("compare-union on a distribution needs --a and --b events"));
            };
            let (ea, eb) = (parse_event(dist.space(), a, &doc)?, parse_event(dist.space(), b, &doc)?);
            let r = prob_union_report(&dist, &ea, &eb).map_err(|e| doc.error(e))?;
            let text = format!(
                "P(A) = {}\nP(B) = {}\nP(A ∩ B) = {}\nP(A ∪ B) = {}\nclass: {}\nbounds hold: {}\nadditive: {}\nnested: {}\n",
                q(r.p_a),
                q(r.p_b),
                q(r.p_intersection),
                q(r.p_union),
                r.class,
                r.bounds_ok,
                r.additive_case,
                r.nested_case
            );
            Ok(report(to_value(&r), text, r.bounds_ok))
        }
        _ => Err(doc.error("compare-union expects a fixture or probability distribution document")),
    }
}

fn relation_text(rel: &ConditionalRelation<Rational>) -> String {
    let mut text = format!("{} relation (out | given)\n{:<12}", rel.kind(), "");
    for g in rel.given().labels() {
        let _ = write!(text, " {:<12}", g.as_str());
    }
    text.push('\n');
    for (o, label) in rel.out().labels().iter().enumerate() {
        let _ = write!(text, "{:<12}", label.as_str());
        for g in 0..rel.given().len() {
            let cell = rel.get(o, g).map_or("undefined".into(), |v| v.to_string());
            let _ = write!(text, " {cell:<12}");
        }
        text.push('\n');
    }
    text
}

fn joint_text(joint: &JointDistribution<Rational>) -> String {
    let mut text = format!("{} joint (rows × cols)\n{:<12}", joint.kind(), "");
    for c in joint.cols().labels() {
        let _ = write!(text, " {:<12}", c.as_str());
    }
    text.push('\n');
    for (r, label) in joint.rows().labels().iter().enumerate() {
        let _ = write!(text, "{:<12}", label.as_str());
        for c in 0..joint.cols().len() {
            let _ = write!(text, " {:<12}", joint.get(r, c).to_string());
        }
        text.push('\n');
    }
    text
}

pub fn infer_joint(path: &Path, direction: Direction) -> Outcome {
    let doc = Document::read(path)?;
    let joint = doc.expect::<JointDistribution<Rational>>(DocKind::Joint)?;
    let rel = condition(&joint, direction).map_err(|e| doc.error(e))?;
    let rows = marginal(&joint, Axis::Row);
    let cols = marginal(&joint, Axis::Col);
    let mut text = String::from("row marginal:\n");
    for (l, v) in rows.space().labels().iter().zip(rows.values()) {
        let _ = writeln!(text, "  {:<12} {}", l.as_str(), q(*v));
    }
    text.push_str("column marginal:\n");
    for (l, v) in cols.space().labels().iter().zip(cols.values()) {
        let _ = writeln!(text, "  {:<12} {}", l.as_str(), q(*v));
    }
    text.push_str(&relation_text(&rel));
    Ok(report(
        json!({"direction": direction, "row_marginal": to_value(&rows), "col_marginal": to_value(&cols), "conditional": to_value(&rel)}),
        text,
        true,
    ))
}

pub fn infer_recombine(relation: &Path, prior: &Path, direction: Direction) -> Outcome {
    let rdoc = Document::read(relation)?;
    let rel = rdoc.expect::<ConditionalRelation<Rational>>(DocKind::Relation)?;
    let pdoc = Document::read(prior)?;
    let dist = pdoc.expect::<Distribution>(DocKind::Distribution)?;
    if dist.kind() != rel.kind() {
        return Err(pdoc.error(format!("field `kind`: {} prior for a {} relation", dist.kind(), rel.kind())));
    }
    if !dist.space().same_labels(rel.given()) {
        return Err(pdoc.error("field `space.labels`: must equal the relation's `given` labels"));
    }
    let joint = recombine(&rel, dist.values(), direction).map_err(|e| rdoc.error(e))?;
    let text = joint_text(&joint);
    Ok(report(to_value(&joint), text, true))
}

fn load_relation(path: &Path) -> Result<(Document, ConditionalRelation<Rational>), InputError> {
    let doc = Document::read(path)?;
    let rel = doc.expect(DocKind::Relation)?;
    Ok((doc, rel))
}

pub fn compose_files(first: &Path, second: &Path) -> Outcome {
    let (d1, r1) = load_relation(first)?;
    let (d2, r2) = load_relation(second)?;
    if r1.kind() != r2.kind() {
        return Err(d2.error(format!("field `kind`: cannot compose {} with {}", r1.kind(), r2.kind())));
    }
    if !r1.out().same_labels(r2.given()) {
        return Err(d2.error(format!("field `given`: must equal the `out` labels of {}", d1.path.display())));
    }
    let composed = compose(&r1, &r2).map_err(|e| d1.error(e))?;
    Ok(report(to_value(&composed), relation_text(&composed), true))
}

pub fn update(prior: &Path, likelihood: &Path, observed: &str) -> Outcome {
    let pdoc = Document::read(prior)?;
    let dist = pdoc.expect::<Distribution>(DocKind::Distribution)?;
    let (ldoc, like) = load_relation(likelihood)?;
    if !like.out().contains(observed) {
        return Err(ldoc.error(format!("field `out`: observed label `{observed}` is not listed")));
    }
    let posterior = match &dist {
        Distribution::Probability(p) => bayes_update(p, &like, observed).map(Distribution::Probability),
        Distribution::Possibility(p) => poss_update(p, &like, observed).map(Distribution::Possibility),
    }
    .map_err(|e| ldoc.error(e))?;
    let mut text = format!("{} posterior given `{observed}`\n", posterior.kind());
    if let Distribution::Possibility(p) = &dist {
        if !p.is_normalized() {
            text.push_str("note: the prior is sub-normalized\n");
        }
    }
    for (l, v) in posterior.space().labels().iter().zip(posterior.values()) {
        let _ = writeln!(text, "  {:<12} {}", l.as_str(), q(*v));
    }
    Ok(report(to_value(&posterior), text, true))
}

pub enum SimSource<'a> {
    FairDie,
    File(&'a Path),
}

pub fn simulate(source: SimSource<'_>, n: u64, seed: u64) -> Outcome {
    let dist = match source {
        SimSource::FairDie => {
            let space = SampleSpace::random((1..=6).map(|i| i.to_string())).expect("static labels");
            ProbabilityDistribution::uniform(space).expect("static distribution")
        }
        SimSource::File(path) => {
            let doc = Document::read(path)?;
            match doc.expect::<Distribution>(DocKind::Distribution)? {
                Distribution::Probability(d) => {
                    let r = check_prob_axioms_tol(&d, sigmax_core::DEFAULT_TOLERANCE);
                    if !r.all_pass() {
                        return Err(doc.error("field `values`: not a valid probability distribution"));
                    }
                    d
                }
                Distribution::Possibility(_) => return Err(doc.error("field `kind`: simulate needs a probability distribution")),
            }
        }
    };
    let counts = sample(&dist, n, seed);
    let freq = if n > 0 { Some(from_frequencies(&counts).expect("positive total")) } else { None };
    let mut rows = Vec::new();
    let mut max_dev = 0.0f64;
    let mut text = format!("{n} draws, seed {seed}\n{:<12} {:>10} {:>12} {:>12} {:>12}\n", "label", "count", "frequency", "target", "deviation");
    for (i, label) in dist.space().labels().iter().enumerate() {
        let count = counts.count_of(label.as_str()).unwrap_or(0);
        let target = dist.values()[i].to_f64();
        let f = freq.as_ref().map_or(0.0, |d| d.values()[i].to_f64());
        let dev = (f - target).abs();
        max_dev = max_dev.max(dev);
        let _ = writeln!(text, "{:<12} {count:>10} {f:>12.6} {target:>12.6} {dev:>12.6}", label.as_str());
        rows.push(json!({"label": label, "count": count, "frequency": f, "target": target, "deviation": dev}));
    }
    let tv = freq.as_ref().map(|d| total_variation(d, &dist).expect("same space"));
    let _ = writeln!(text, "max deviation {max_dev:.6}");
    Ok(report(json!({"n": n, "seed": seed, "table": rows, "max_deviation": max_dev, "total_variation": tv}), text, true))
}

pub fn fixtures(name: &str, grid: (u32, u32)) -> Outcome {
    let name: FixtureName = name.parse().map_err(|e: sigmax_core::Error| {
        let known: Vec<&str> = FixtureName::ALL.iter().map(|n| n.as_str()).collect();
        InputError::arg(format!("--name: {e}; known fixtures: {}", known.join(", ")))
    })?;
    let fx = generate_fixture(name, grid.0, grid.1).map_err(|e| InputError::arg(format!("--grid {}x{}: {e}", grid.0, grid.1)))?;
    let mut text = format!("{} on a {}x{} grid, reference {} ({} atoms)\n", fx.name, grid.0, grid.1, fx.reference.label, fx.reference.intension.measure());
    for c in &fx.concepts {
        let _ = writeln!(text, "  {:<8} {} atoms", c.label.as_str(), c.intension.measure());
    }
    Ok(report(to_value(&fx), text, true))
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, clap::ValueEnum)]
pub enum Sweep {
    All,
    Axioms,
    Disjunction,
    Inference,
}

pub fn verify(sweep: Sweep, count: Option<usize>, seed: u64, grid: (u32, u32)) -> Outcome {
    let grid = Grid::unit(grid.0, grid.1).map_err(|e| InputError::arg(format!("--grid: {e}")))?;
    let internal = |e: sigmax_core::Error| InputError::arg(format!("sweep setup failed: {e}"));
    let mut results: Vec<SweepResult> = Vec::new();
    if matches!(sweep, Sweep::All | Sweep::Axioms) {
        results.extend(sweep_axioms(seed, count.unwrap_or(1000), 6).map_err(internal)?);
    }
    if matches!(sweep, Sweep::All | Sweep::Disjunction) {
        results.extend(sweep_disjunction(seed, count.unwrap_or(1000), &grid).map_err(internal)?);
    }
    if matches!(sweep, Sweep::All | Sweep::Inference) {
        results.extend(sweep_inference(seed, count.unwrap_or(500), 4).map_err(internal)?);
    }
    let passed = results.iter().all(SweepResult::passed);
    let mut text = format!("{:<36} {:>7} {:>9}  status\n", "claim", "cases", "failures");
    for r in &results {
        let _ = writeln!(
            text,
            "{:<36} {:>7} {:>9}  {}",
            r.claim_id,
            r.cases,
            r.failures,
            r.witness.as_ref().map_or("PASS".into(), |w| format!("FAIL: {w}"))
        );
    }
    let lines = results.iter().map(|r| to_value(&r.verdict())).collect();
    Ok(Report { json: Json::Lines(lines), text, passed })
}
