//! The 22 mission specification patterns as parametric LTL/CTL generators.

mod catalog;
mod templates;

pub use catalog::{catalog, catalog_json, example_params, lookup, CatalogEntry, CatalogRecord, TemplateSymbol};
pub use templates::{forall_embed, instantiate_ctl, instantiate_ltl};

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::logic::Atom;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum PatternId {
    Visit,
    SequencedVisit,
    OrderedVisit,
    StrictOrderedVisit,
    FairVisit,
    Patrolling,
    SequencedPatrolling,
    OrderedPatrolling,
    StrictOrderedPatrolling,
    FairPatrolling,
    PastAvoidance,
    GlobalAvoidance,
    FutureAvoidance,
    UpperRestrictedAvoidance,
    LowerRestrictedAvoidance,
    ExactRestrictedAvoidance,
    InstantaneousReaction,
    DelayedReaction,
    PromptReaction,
    BoundReaction,
    BoundDelay,
    Wait,
}

/// Leaf categories of the pattern tree.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub enum Category {
    #[serde(rename = "core-movement/coverage")]
    Coverage,
    #[serde(rename = "core-movement/surveillance")]
    Surveillance,
    #[serde(rename = "avoidance/conditional")]
    ConditionalAvoidance,
    #[serde(rename = "avoidance/restricted")]
    RestrictedAvoidance,
    #[serde(rename = "trigger/reaction")]
    Reaction,
    #[serde(rename = "trigger/bind")]
    Bind,
    #[serde(rename = "trigger/wait")]
    Wait,
}

impl Category {
    /// Path from the catalog root, e.g. `["Core Movement Patterns", "Coverage"]`.
    pub fn path(self) -> &'static [&'static str] {
        match self {
            Category::Coverage => &["Core Movement Patterns", "Coverage"],
            Category::Surveillance => &["Core Movement Patterns", "Surveillance"],
            Category::ConditionalAvoidance => &["Avoidance/Invariant", "Conditional/Limited"],
            Category::RestrictedAvoidance => &["Avoidance/Invariant", "Restricted"],
            Category::Reaction => &["Trigger", "Reaction"],
            Category::Bind => &["Trigger", "Bind"],
            Category::Wait => &["Trigger"],
        }
    }

    pub fn slug(self) -> &'static str {
        match self {
            Category::Coverage => "core-movement/coverage",
            Category::Surveillance => "core-movement/surveillance",
            Category::ConditionalAvoidance => "avoidance/conditional",
            Category::RestrictedAvoidance => "avoidance/restricted",
            Category::Reaction => "trigger/reaction",
            Category::Bind => "trigger/bind",
            Category::Wait => "trigger/wait",
        }
    }
}

/// What a pattern expects in its [`PatternParams`].
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Shape {
    /// `n ≥ 1` locations.
    Locations,
    /// One location.
    Location,
    /// One location and a trigger proposition.
    LocationTrigger,
    /// One location and an occurrence bound.
    LocationCount,
    /// A stimulus and a counteraction.
    TriggerReaction,
}

impl PatternId {
    pub const ALL: [PatternId; 22] = [
        PatternId::Visit,
        PatternId::SequencedVisit,
        PatternId::OrderedVisit,
        PatternId::StrictOrderedVisit,
        PatternId::FairVisit,
        PatternId::Patrolling,
        PatternId::SequencedPatrolling,
        PatternId::OrderedPatrolling,
        PatternId::StrictOrderedPatrolling,
        PatternId::FairPatrolling,
        PatternId::PastAvoidance,
        PatternId::GlobalAvoidance,
        PatternId::FutureAvoidance,
        PatternId::UpperRestrictedAvoidance,
        PatternId::LowerRestrictedAvoidance,
        PatternId::ExactRestrictedAvoidance,
        PatternId::InstantaneousReaction,
        PatternId::DelayedReaction,
        PatternId::PromptReaction,
        PatternId::BoundReaction,
        PatternId::BoundDelay,
        PatternId::Wait,
    ];

    pub fn category(self) -> Category {
        use PatternId::*;
        match self {
            Visit | SequencedVisit | OrderedVisit | StrictOrderedVisit | FairVisit => Category::Coverage,
            Patrolling | SequencedPatrolling | OrderedPatrolling | StrictOrderedPatrolling | FairPatrolling => {
                Category::Surveillance
            }
            PastAvoidance | GlobalAvoidance | FutureAvoidance => Category::ConditionalAvoidance,
            UpperRestrictedAvoidance | LowerRestrictedAvoidance | ExactRestrictedAvoidance => {
                Category::RestrictedAvoidance
            }
            InstantaneousReaction | DelayedReaction | PromptReaction => Category::Reaction,
            BoundReaction | BoundDelay => Category::Bind,
            Wait => Category::Wait,
        }
    }

    pub fn shape(self) -> Shape {
        use PatternId::*;
        match self.category() {
            Category::Coverage | Category::Surveillance => Shape::Locations,
            Category::RestrictedAvoidance => Shape::LocationCount,
            Category::Reaction | Category::Bind => Shape::TriggerReaction,
            Category::ConditionalAvoidance => match self {
                GlobalAvoidance => Shape::Location,
                _ => Shape::LocationTrigger,
            },
            Category::Wait => Shape::LocationTrigger,
        }
    }

    /// Human-readable name, e.g. "Strict Ordered Patrolling".
    pub fn title(self) -> &'static str {
        use PatternId::*;
        match self {
            Visit => "Visit",
            SequencedVisit => "Sequenced Visit",
            OrderedVisit => "Ordered Visit",
            StrictOrderedVisit => "Strict Ordered Visit",
            FairVisit => "Fair Visit",
            Patrolling => "Patrolling",
            SequencedPatrolling => "Sequenced Patrolling",
            OrderedPatrolling => "Ordered Patrolling",
            StrictOrderedPatrolling => "Strict Ordered Patrolling",
            FairPatrolling => "Fair Patrolling",
            PastAvoidance => "Past Avoidance",
            GlobalAvoidance => "Global Avoidance",
            FutureAvoidance => "Future Avoidance",
            UpperRestrictedAvoidance => "Upper Restricted Avoidance",
            LowerRestrictedAvoidance => "Lower Restricted Avoidance",
            ExactRestrictedAvoidance => "Exact Restricted Avoidance",
            InstantaneousReaction => "Instantaneous Reaction",
            DelayedReaction => "Delayed Reaction",
            PromptReaction => "Prompt Reaction",
            BoundReaction => "Bound Reaction",
            BoundDelay => "Bound Delay",
            Wait => "Wait",
        }
    }

    /// Abbreviation used in result tables, e.g. `StrictOrdPatrol`.
    pub fn short_name(self) -> &'static str {
        use PatternId::*;
        match self {
            Visit => "Visit",
            SequencedVisit => "SeqVisit",
            OrderedVisit => "OrdVisit",
            StrictOrderedVisit => "StrOrdVisit",
            FairVisit => "FairVisit",
            Patrolling => "Patrol",
            SequencedPatrolling => "SeqPatrol",
            OrderedPatrolling => "OrdPatrol",
            StrictOrderedPatrolling => "StrictOrdPatrol",
            FairPatrolling => "FairPatrol",
            PastAvoidance => "PastAvoid",
            GlobalAvoidance => "GlobalAvoid",
            FutureAvoidance => "FutAvoid",
            UpperRestrictedAvoidance => "UpperRestAvoid",
            LowerRestrictedAvoidance => "LowRestAvoid",
            ExactRestrictedAvoidance => "ExactRestAvoid",
            InstantaneousReaction => "InstReact",
            DelayedReaction => "DelReact",
            PromptReaction => "FastReact",
            BoundReaction => "BindReact",
            BoundDelay => "BindDel",
            Wait => "Wait",
        }
    }

    /// The trigger variants that joined the catalog after its first version.
    pub fn added_during_evaluation(self) -> bool {
        matches!(self, PatternId::PromptReaction | PatternId::BoundReaction | PatternId::BoundDelay)
    }

    /// Alternative names accepted by [`FromStr`].
    pub fn aliases(self) -> &'static [&'static str] {
        use PatternId::*;
        match self {
            PromptReaction => &["fast reaction", "fastreaction", "fastreact", "promptreact"],
            BoundReaction => &["binded reaction", "bindreact", "boundreact"],
            BoundDelay => &["binded delay", "binddel", "bounddel"],
            StrictOrderedVisit => &["strordvisit", "strictordvisit"],
            StrictOrderedPatrolling => &["strictordpatrol", "strordpatrol"],
            _ => &[],
        }
    }
}

impl fmt::Display for PatternId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self:?}")
    }
}

impl FromStr for PatternId {
    type Err = PatternError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let key: String =
            s.chars().filter(|c| !c.is_whitespace() && *c != '-' && *c != '_').collect::<String>().to_lowercase();
        let squash = |x: &str| x.chars().filter(|c| !c.is_whitespace()).collect::<String>().to_lowercase();
        PatternId::ALL
            .into_iter()
            .find(|id| {
                squash(&format!("{id:?}")) == key
                    || squash(id.title()) == key
                    || squash(id.short_name()) == key
                    || id.aliases().iter().any(|a| squash(a) == key)
            })
            .ok_or_else(|| PatternError::UnknownPattern(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    #[default]
    Default,
    /// Strict Ordered Patrolling only: runs of consecutive visits to the
    /// same location count as one visit.
    ConsecutiveAllowed,
}

/// Parameters bound into a pattern template.
///
/// `trigger` houses the stimulus `p`/`p1`/`c`, `reaction` the counteraction
/// `p2`, `count` the occurrence bound of restricted avoidance.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PatternParams {
    pub locations: Vec<Atom>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub trigger: Option<Atom>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub reaction: Option<Atom>,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub count: Option<u32>,
    #[serde(default)]
    pub variant: Variant,
}

impl PatternParams {
    pub fn locations<I, S>(locs: I) -> Self
    where
        I: IntoIterator<Item = S>,
        S: Into<Atom>,
    {
        PatternParams { locations: locs.into_iter().map(Into::into).collect(), ..Default::default() }
    }

    pub fn location(loc: impl Into<Atom>) -> Self {
        Self::locations([loc])
    }

    pub fn reaction(trigger: impl Into<Atom>, reaction: impl Into<Atom>) -> Self {
        PatternParams { trigger: Some(trigger.into()), reaction: Some(reaction.into()), ..Default::default() }
    }

    pub fn with_trigger(mut self, trigger: impl Into<Atom>) -> Self {
        self.trigger = Some(trigger.into());
        self
    }

    pub fn with_count(mut self, k: u32) -> Self {
        self.count = Some(k);
        self
    }

    pub fn with_variant(mut self, v: Variant) -> Self {
        self.variant = v;
        self
    }

    /// Every proposition the parameters mention.
    pub fn atoms(&self) -> Vec<&Atom> {
        self.locations.iter().chain(&self.trigger).chain(&self.reaction).collect()
    }

    /// Checks the parameters against the arity rules of `id`.
    pub fn validate(&self, id: PatternId) -> Result<(), PatternError> {
        let n = self.locations.len();
        let shape = id.shape();
        let needs_trigger = matches!(shape, Shape::LocationTrigger | Shape::TriggerReaction);
        let needs_reaction = shape == Shape::TriggerReaction;
        let needs_count = shape == Shape::LocationCount;
        let arity_ok = match shape {
            Shape::Locations => n >= 1,
            Shape::Location | Shape::LocationTrigger | Shape::LocationCount => n == 1,
            Shape::TriggerReaction => n == 0,
        };
        if !arity_ok {
            let expected = match shape {
                Shape::Locations => "at least one location",
                Shape::TriggerReaction => "no locations",
                _ => "exactly one location",
            };
            return Err(PatternError::Arity { id, expected, found: n });
        }
        match (needs_trigger, &self.trigger) {
            (true, None) => return Err(PatternError::MissingTrigger(id)),
            (false, Some(_)) => return Err(PatternError::UnexpectedParameter { id, param: "trigger" }),
            _ => {}
        }
        match (needs_reaction, &self.reaction) {
            (true, None) => return Err(PatternError::MissingReaction(id)),
            (false, Some(_)) => return Err(PatternError::UnexpectedParameter { id, param: "reaction" }),
            _ => {}
        }
        match (needs_count, self.count) {
            (true, None) => return Err(PatternError::MissingCount(id)),
            (false, Some(_)) => return Err(PatternError::UnexpectedParameter { id, param: "count" }),
            _ => {}
        }
        if self.variant != Variant::Default && id != PatternId::StrictOrderedPatrolling {
            return Err(PatternError::UnexpectedParameter { id, param: "variant" });
        }
        let mut seen = BTreeSet::new();
        for a in self.atoms() {
            if !seen.insert(a) {
                return Err(PatternError::DuplicateProposition(a.clone()));
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PatternError {
    #[error("{id} expects {expected}, got {found}")]
    Arity { id: PatternId, expected: &'static str, found: usize },
    #[error("{0} requires a trigger proposition")]
    MissingTrigger(PatternId),
    #[error("{0} requires a reaction proposition")]
    MissingReaction(PatternId),
    #[error("{0} requires an occurrence bound")]
    MissingCount(PatternId),
    #[error("{id} does not take a {param} parameter")]
    UnexpectedParameter { id: PatternId, param: &'static str },
    #[error("duplicate proposition `{0}`")]
    DuplicateProposition(Atom),
    #[error("unknown pattern `{0}`")]
    UnknownPattern(String),
}
