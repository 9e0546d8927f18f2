//! Finite sample spaces, events, and the event algebra.
//!
//! A [`SampleSpace`] is an ordered list of distinct outcome labels tagged as
//! either random (outcomes mutually exclusive) or fuzzy (outcomes may overlap
//! through their intensions). Events are label sets; enumeration and set
//! algebra go through bitmasks over the declared label order.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest space for which the full power set may be enumerated.
pub const MAX_ENUMERABLE: usize = 20;

/// Name of an elementary outcome.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct OutcomeLabel(String);

impl OutcomeLabel {
    pub fn new(name: impl Into<String>) -> Result<Self> {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::EmptyLabel);
        }
        Ok(OutcomeLabel(name))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for OutcomeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

impl fmt::Display for OutcomeLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SpaceKind {
    /// Either-or outcomes of a causal experiment.
    Random,
    /// Both-and outcomes of a classification experiment.
    Fuzzy,
}

impl fmt::Display for SpaceKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpaceKind::Random => f.write_str("random"),
            SpaceKind::Fuzzy => f.write_str("fuzzy"),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize)]
pub struct SampleSpace {
    kind: SpaceKind,
    labels: Vec<OutcomeLabel>,
}

#[derive(Deserialize)]
struct RawSpace {
    kind: SpaceKind,
    labels: Vec<String>,
}

impl<'de> Deserialize<'de> for SampleSpace {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let raw = RawSpace::deserialize(d)?;
        SampleSpace::new(raw.kind, raw.labels).map_err(serde::de::Error::custom)
    }
}

impl SampleSpace {
    pub fn new<I, L>(kind: SpaceKind, labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        let labels = labels
            .into_iter()
            .map(OutcomeLabel::new)
            .collect::<Result<Vec<_>>>()?;
        if labels.is_empty() {
            return Err(Error::EmptySpace);
        }
        let mut seen = BTreeSet::new();
        for label in &labels {
            if !seen.insert(label) {
                return Err(Error::DuplicateLabel(label.0.clone()));
            }
        }
        Ok(SampleSpace { kind, labels })
    }

    pub fn random<I, L>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        SampleSpace::new(SpaceKind::Random, labels)
    }

    pub fn fuzzy<I, L>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        SampleSpace::new(SpaceKind::Fuzzy, labels)
    }

    pub fn kind(&self) -> SpaceKind {
        self.kind
    }

    pub fn labels(&self) -> &[OutcomeLabel] {
        &self.labels
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn index_of(&self, label: &str) -> Option<usize> {
        self.labels.iter().position(|l| l.as_str() == label)
    }

    pub fn contains(&self, label: &str) -> bool {
        self.index_of(label).is_some()
    }

    /// Same labels in the same order, regardless of kind.
    pub fn same_labels(&self, other: &SampleSpace) -> bool {
        self.labels == other.labels
    }

    /// Bitmask of an event under this space's label order.
    pub fn mask_of(&self, event: &Event) -> Result<u64> {
        self.guard(64)?;
        event.members.iter().try_fold(0u64, |mask, label| {
            self.index_of(label.as_str())
                .map(|i| mask | (1u64 << i))
                .ok_or_else(|| Error::ForeignLabel(label.0.clone()))
        })
    }

    /// Event whose members are the labels at the set bits of `mask`.
    pub fn event_from_mask(&self, mask: u64) -> Event {
        Event {
            members: self
                .labels
                .iter()
                .enumerate()
                .filter(|(i, _)| *i < 64 && mask & (1u64 << i) != 0)
                .map(|(_, l)| l.clone())
                .collect(),
        }
    }

    pub fn full_mask(&self) -> u64 {
        if self.len() >= 64 {
            u64::MAX
        } else {
            (1u64 << self.len()) - 1
        }
    }

    pub fn full_event(&self) -> Event {
        Event { members: self.labels.iter().cloned().collect() }
    }

    fn guard(&self, limit: usize) -> Result<()> {
        if self.len() > limit {
            Err(Error::SpaceTooLarge { size: self.len(), limit })
        } else {
            Ok(())
        }
    }
}

/// A subset of a sample space's labels.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Event {
    members: BTreeSet<OutcomeLabel>,
}

impl Event {
    pub fn empty() -> Self {
        Event::default()
    }

    pub fn of<I, L>(labels: I) -> Result<Self>
    where
        I: IntoIterator<Item = L>,
        L: Into<String>,
    {
        Ok(Event {
            members: labels.into_iter().map(OutcomeLabel::new).collect::<Result<_>>()?,
        })
    }

    pub fn members(&self) -> impl Iterator<Item = &OutcomeLabel> {
        self.members.iter()
    }

    pub fn contains(&self, label: &str) -> bool {
        self.members.iter().any(|l| l.as_str() == label)
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn is_subset(&self, other: &Event) -> bool {
        self.members.is_subset(&other.members)
    }
}

impl fmt::Display for Event {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, l) in self.members.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            f.write_str(l.as_str())?;
        }
        f.write_str("}")
    }
}

/// All `2^N` events of `space`, ordered by ascending bitmask.
pub fn enumerate_events(space: &SampleSpace) -> Result<Vec<Event>> {
    space.guard(MAX_ENUMERABLE)?;
    Ok((0..=space.full_mask()).map(|mask| space.event_from_mask(mask)).collect())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct EventAlgebra {
    pub complement_a: Event,
    pub union: Event,
    pub intersection: Event,
}

/// Complement of `a` and union/intersection of `a` and `b` within `space`.
pub fn event_algebra(a: &Event, b: &Event, space: &SampleSpace) -> Result<EventAlgebra> {
    for label in a.members().chain(b.members()) {
        if !space.contains(label.as_str()) {
            return Err(Error::ForeignLabel(label.to_string()));
        }
    }
    let complement_a = Event {
        members: space
            .labels()
            .iter()
            .filter(|l| !a.members.contains(*l))
            .cloned()
            .collect(),
    };
    Ok(EventAlgebra {
        complement_a,
        union: Event { members: a.members.union(&b.members).cloned().collect() },
        intersection: Event { members: a.members.intersection(&b.members).cloned().collect() },
    })
}
