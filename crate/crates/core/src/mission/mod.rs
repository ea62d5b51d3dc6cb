//! Structured-English mission requirements.
//!
//! A mission file has an optional `declarations:` block followed by a
//! `mission:` block; a bare mission expression is accepted as well.
//!
//! ```text
//! declarations:
//!   robots: r1
//!   locations: l1, l2, l3, l4
//!   conditions: human
//!   actions: grasp
//! mission:
//!   robot r1 shall ordered patrolling of l1, l2, l3, l4
//!   and when human instantly do grasp
//! ```
//!
//! Mission expressions:
//!
//! ```text
//! expr   := conj ("or" conj)*
//! conj   := item ("and" item)*
//! item   := "(" expr ")" | ["robot" NAME "shall"] phrase
//! list   := NAME ("," NAME)*
//! phrase := "visit" list
//!         | ["sequenced" | "ordered" | "strict" "ordered" | "fair"] "visit" "of" list
//!         | ["sequenced" | "ordered" | "strict" "ordered" | "fair"] "patrolling" "of" list
//!         | "strict" "ordered" "patrolling" "of" list "allowing" "consecutive" "visits"
//!         | "avoid" NAME ["globally"]
//!         | "avoid" NAME ("before" | "after") NAME
//!         | "avoid" NAME ("at" ("most" | "least") | "exactly") NUMBER "times"
//!         | "when" NAME ("instantly" | "eventually" | "promptly") "do" NAME
//!         | "do" NAME "exactly" ("when" | "after") NAME
//!         | "stay" "in" NAME "until" NAME
//! ```
//!
//! `and` binds tighter than `or`. A robot prefix also applies to the clauses
//! that follow it up to the next prefix. Propositions are robot-qualified
//! (`r1_l1`) only when the mission involves more than one robot.

mod arena;
mod parse;

pub use arena::arena;
pub use parse::parse_mission;

use std::collections::BTreeSet;
use std::fmt;

use thiserror::Error;

use crate::logic::{Atom, Formula, Prop, PropKind};
use crate::patterns::{instantiate_ctl, instantiate_ltl, PatternError, PatternId, PatternParams, Variant};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MissionError {
    #[error("{line}:{column}: {message}")]
    Syntax { line: usize, column: usize, message: String },
    #[error("{line}:{column}: unknown pattern phrase starting with `{found}`")]
    UnknownPhrase { line: usize, column: usize, found: String },
    #[error("{line}:{column}: undeclared {kind} `{name}`")]
    Undeclared { line: usize, column: usize, kind: &'static str, name: String },
    #[error("{line}:{column}: {source}")]
    Pattern { line: usize, column: usize, source: PatternError },
    #[error("`{0}` is declared twice")]
    DuplicateDeclaration(String),
}

/// The proposition universe of a mission file.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct Declarations {
    pub robots: Vec<String>,
    pub locations: Vec<String>,
    pub conditions: Vec<String>,
    pub actions: Vec<String>,
}

impl Declarations {
    fn kind_of(&self, name: &str) -> Option<PropKind> {
        let has = |v: &Vec<String>| v.iter().any(|x| x == name);
        if has(&self.locations) {
            Some(PropKind::Location)
        } else if has(&self.conditions) {
            Some(PropKind::Condition)
        } else if has(&self.actions) {
            Some(PropKind::Action)
        } else {
            None
        }
    }
}

/// One pattern phrase. Equality ignores the source position.
#[derive(Debug, Clone)]
pub struct Clause {
    pub robot: Option<String>,
    pub id: PatternId,
    /// Parameters over the names as written, before robot qualification.
    pub params: PatternParams,
    pub line: usize,
    pub column: usize,
}

impl PartialEq for Clause {
    fn eq(&self, other: &Self) -> bool {
        self.robot == other.robot && self.id == other.id && self.params == other.params
    }
}

impl Eq for Clause {}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MissionTree {
    Leaf(Clause),
    And(Vec<MissionTree>),
    Or(Vec<MissionTree>),
}

impl MissionTree {
    pub fn leaf(id: PatternId, params: PatternParams) -> Self {
        MissionTree::Leaf(Clause { robot: None, id, params, line: 0, column: 0 })
    }

    pub fn leaves(&self) -> Vec<&Clause> {
        match self {
            MissionTree::Leaf(c) => vec![c],
            MissionTree::And(cs) | MissionTree::Or(cs) => cs.iter().flat_map(MissionTree::leaves).collect(),
        }
    }

    /// Drops the leaves whose pattern is in `ids`; `None` if nothing is left.
    pub fn without(&self, ids: &[PatternId]) -> Option<MissionTree> {
        let prune = |cs: &[MissionTree]| -> Vec<MissionTree> { cs.iter().filter_map(|c| c.without(ids)).collect() };
        match self {
            MissionTree::Leaf(c) => (!ids.contains(&c.id)).then(|| self.clone()),
            MissionTree::And(cs) | MissionTree::Or(cs) => {
                let mut kept = prune(cs);
                match kept.len() {
                    0 => None,
                    1 => kept.pop(),
                    _ => Some(if matches!(self, MissionTree::And(_)) {
                        MissionTree::And(kept)
                    } else {
                        MissionTree::Or(kept)
                    }),
                }
            }
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Mission {
    pub declarations: Option<Declarations>,
    pub tree: MissionTree,
}

impl Mission {
    pub fn new(tree: MissionTree) -> Self {
        Mission { declarations: None, tree }
    }

    /// Conjunction of the given leaves.
    pub fn all_of(leaves: impl IntoIterator<Item = (PatternId, PatternParams)>) -> Self {
        Mission::new(MissionTree::And(leaves.into_iter().map(|(id, p)| MissionTree::leaf(id, p)).collect()))
    }

    pub fn patterns(&self) -> BTreeSet<PatternId> {
        self.tree.leaves().iter().map(|c| c.id).collect()
    }

    /// Robots named in the declarations, or in clause prefixes when there
    /// are no declarations.
    pub fn robots(&self) -> BTreeSet<String> {
        match &self.declarations {
            Some(d) => d.robots.iter().cloned().collect(),
            None => self.tree.leaves().iter().filter_map(|c| c.robot.clone()).collect(),
        }
    }

    fn prop(&self, robot: Option<&String>, name: &Atom, role: PropKind) -> Prop {
        let kind = self.declarations.as_ref().and_then(|d| d.kind_of(name.as_str())).unwrap_or(role);
        let p = Prop { kind, robot: None, name: name.to_string() };
        match robot {
            Some(r) if self.robots().len() > 1 => p.for_robot(r.clone()),
            _ => p,
        }
    }

    /// Parameters of `clause` over formula atoms.
    pub fn resolved_params(&self, clause: &Clause) -> PatternParams {
        let r = clause.robot.as_ref();
        let q = |a: &Atom, role| self.prop(r, a, role).atom();
        PatternParams {
            locations: clause.params.locations.iter().map(|l| q(l, PropKind::Location)).collect(),
            trigger: clause.params.trigger.as_ref().map(|t| q(t, PropKind::Condition)),
            reaction: clause.params.reaction.as_ref().map(|a| q(a, PropKind::Action)),
            count: clause.params.count,
            variant: clause.params.variant,
        }
    }

    /// Every declared proposition; without declarations, the atoms the
    /// clauses use.
    pub fn universe(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        for c in self.tree.leaves() {
            out.extend(self.resolved_params(c).atoms().into_iter().cloned());
        }
        if let Some(d) = &self.declarations {
            let robots: Vec<Option<&String>> = match d.robots.len() {
                0 | 1 => vec![None],
                _ => d.robots.iter().map(Some).collect(),
            };
            for names in [&d.locations, &d.conditions, &d.actions] {
                for n in names {
                    for r in &robots {
                        out.insert(self.prop(*r, &Atom::new(n), PropKind::Location).atom());
                    }
                }
            }
        }
        out
    }

    fn compile(
        &self,
        leaf: fn(PatternId, &PatternParams) -> Result<Formula, PatternError>,
    ) -> Result<Formula, MissionError> {
        fn go(
            m: &Mission,
            t: &MissionTree,
            leaf: fn(PatternId, &PatternParams) -> Result<Formula, PatternError>,
        ) -> Result<Formula, MissionError> {
            match t {
                MissionTree::Leaf(c) => leaf(c.id, &m.resolved_params(c)).map_err(|source| MissionError::Pattern {
                    line: c.line,
                    column: c.column,
                    source,
                }),
                MissionTree::And(cs) => {
                    Ok(Formula::and(cs.iter().map(|c| go(m, c, leaf)).collect::<Result<Vec<_>, _>>()?))
                }
                MissionTree::Or(cs) => {
                    Ok(Formula::or(cs.iter().map(|c| go(m, c, leaf)).collect::<Result<Vec<_>, _>>()?))
                }
            }
        }
        go(self, &self.tree, leaf)
    }
}

/// LTL specification: leaves through [`instantiate_ltl`], `and` as ∧, `or` as ∨.
pub fn compile_ltl(m: &Mission) -> Result<Formula, MissionError> {
    m.compile(instantiate_ltl)
}

/// CTL specification, leaf-wise through [`instantiate_ctl`].
pub fn compile_ctl(m: &Mission) -> Result<Formula, MissionError> {
    m.compile(instantiate_ctl)
}

fn list(atoms: &[Atom]) -> String {
    atoms.iter().map(Atom::as_str).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        use PatternId::*;
        if let Some(r) = &self.robot {
            write!(f, "robot {r} shall ")?;
        }
        let p = &self.params;
        let ls = list(&p.locations);
        let l0 = p.locations.first().map(Atom::as_str).unwrap_or("");
        let t = p.trigger.as_ref().map(Atom::as_str).unwrap_or("");
        let a = p.reaction.as_ref().map(Atom::as_str).unwrap_or("");
        let k = p.count.unwrap_or(0);
        match self.id {
            Visit => write!(f, "visit {ls}"),
            SequencedVisit => write!(f, "sequenced visit of {ls}"),
            OrderedVisit => write!(f, "ordered visit of {ls}"),
            StrictOrderedVisit => write!(f, "strict ordered visit of {ls}"),
            FairVisit => write!(f, "fair visit of {ls}"),
            Patrolling => write!(f, "patrolling of {ls}"),
            SequencedPatrolling => write!(f, "sequenced patrolling of {ls}"),
            OrderedPatrolling => write!(f, "ordered patrolling of {ls}"),
            StrictOrderedPatrolling => {
                write!(f, "strict ordered patrolling of {ls}")?;
                if p.variant == Variant::ConsecutiveAllowed {
                    f.write_str(" allowing consecutive visits")?;
                }
                Ok(())
            }
            FairPatrolling => write!(f, "fair patrolling of {ls}"),
            GlobalAvoidance => write!(f, "avoid {l0} globally"),
            PastAvoidance => write!(f, "avoid {l0} before {t}"),
            FutureAvoidance => write!(f, "avoid {l0} after {t}"),
            UpperRestrictedAvoidance => write!(f, "avoid {l0} at most {k} times"),
            LowerRestrictedAvoidance => write!(f, "avoid {l0} at least {k} times"),
            ExactRestrictedAvoidance => write!(f, "avoid {l0} exactly {k} times"),
            InstantaneousReaction => write!(f, "when {t} instantly do {a}"),
            DelayedReaction => write!(f, "when {t} eventually do {a}"),
            PromptReaction => write!(f, "when {t} promptly do {a}"),
            BoundReaction => write!(f, "do {a} exactly when {t}"),
            BoundDelay => write!(f, "do {a} exactly after {t}"),
            Wait => write!(f, "stay in {l0} until {t}"),
        }
    }
}

impl fmt::Display for MissionTree {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (cs, sep) = match self {
            MissionTree::Leaf(c) => return write!(f, "{c}"),
            MissionTree::And(cs) => (cs, " and "),
            MissionTree::Or(cs) => (cs, " or "),
        };
        for (i, c) in cs.iter().enumerate() {
            if i > 0 {
                f.write_str(sep)?;
            }
            // `and` children that are composite, and `or` children that are
            // disjunctions, need parentheses
            let paren = !matches!((self, c), (_, MissionTree::Leaf(_)) | (MissionTree::Or(_), MissionTree::And(_)));
            if paren {
                write!(f, "({c})")?;
            } else {
                write!(f, "{c}")?;
            }
        }
        Ok(())
    }
}

impl fmt::Display for Mission {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if let Some(d) = &self.declarations {
            f.write_str("declarations:\n")?;
            for (key, names) in [
                ("robots", &d.robots),
                ("locations", &d.locations),
                ("conditions", &d.conditions),
                ("actions", &d.actions),
            ] {
                if !names.is_empty() {
                    writeln!(f, "  {key}: {}", names.join(", "))?;
                }
            }
            f.write_str("mission:\n  ")?;
        }
        writeln!(f, "{}", self.tree)
    }
}
