use std::collections::BTreeSet;
use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::LogicError;

/// An atomic proposition symbol as it appears in formulas and traces.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Atom(Arc<str>);

impl Atom {
    pub fn new(name: impl AsRef<str>) -> Self {
        Atom(Arc::from(name.as_ref()))
    }

    pub fn as_str(&self) -> &str {
        &self.0
    }
}

impl fmt::Debug for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.0)
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<&str> for Atom {
    fn from(s: &str) -> Self {
        Atom::new(s)
    }
}

impl From<String> for Atom {
    fn from(s: String) -> Self {
        Atom::new(s)
    }
}

impl AsRef<str> for Atom {
    fn as_ref(&self) -> &str {
        &self.0
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PropKind {
    Location,
    Condition,
    Action,
}

impl fmt::Display for PropKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PropKind::Location => "location",
            PropKind::Condition => "condition",
            PropKind::Action => "action",
        })
    }
}

/// A declared proposition: `r in l` (location), an environment condition, or
/// `r exec a` (action).
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct Prop {
    pub kind: PropKind,
    pub robot: Option<String>,
    pub name: String,
}

impl Prop {
    pub fn location(name: impl Into<String>) -> Self {
        Prop { kind: PropKind::Location, robot: None, name: name.into() }
    }

    pub fn condition(name: impl Into<String>) -> Self {
        Prop { kind: PropKind::Condition, robot: None, name: name.into() }
    }

    pub fn action(name: impl Into<String>) -> Self {
        Prop { kind: PropKind::Action, robot: None, name: name.into() }
    }

    pub fn for_robot(mut self, robot: impl Into<String>) -> Self {
        self.robot = Some(robot.into());
        self
    }

    /// Symbol used in formulas. Robot-qualified propositions render as
    /// `robot_name`; conditions are never qualified.
    pub fn atom(&self) -> Atom {
        match (&self.robot, self.kind) {
            (Some(r), PropKind::Location | PropKind::Action) => Atom::new(format!("{r}_{}", self.name)),
            _ => Atom::new(&self.name),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Logic {
    Ltl,
    Ctl,
}

impl fmt::Display for Logic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Logic::Ltl => "ltl",
            Logic::Ctl => "ctl",
        })
    }
}

impl std::str::FromStr for Logic {
    type Err = LogicError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "ltl" => Ok(Logic::Ltl),
            "ctl" => Ok(Logic::Ctl),
            other => Err(LogicError::UnknownLogic(other.to_string())),
        }
    }
}

/// Shared LTL/CTL abstract syntax.
///
/// `ForAll`/`Exists` wrap a single temporal operator in CTL formulas. The
/// derived operators (F, G, W, R, ->, <->) are first-class so that pattern
/// templates keep their usual shape; [`super::expand_derived`] reduces
/// them to the X/U core.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Formula {
    True,
    False,
    Atom(Atom),
    Not(Box<Formula>),
    And(Vec<Formula>),
    Or(Vec<Formula>),
    Implies(Box<Formula>, Box<Formula>),
    Iff(Box<Formula>, Box<Formula>),
    Next(Box<Formula>),
    Finally(Box<Formula>),
    Globally(Box<Formula>),
    Until(Box<Formula>, Box<Formula>),
    WeakUntil(Box<Formula>, Box<Formula>),
    Release(Box<Formula>, Box<Formula>),
    ForAll(Box<Formula>),
    Exists(Box<Formula>),
}

impl Formula {
    pub fn atom(name: impl Into<Atom>) -> Self {
        Formula::Atom(name.into())
    }

    #[allow(clippy::should_implement_trait)]
    pub fn not(f: Formula) -> Self {
        Formula::Not(Box::new(f))
    }

    /// Flattening conjunction. Empty input is `true`, a single child is
    /// returned as is.
    pub fn and<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        let mut out = Vec::new();
        for f in items {
            match f {
                Formula::And(cs) => out.extend(cs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::True,
            1 => out.pop().unwrap(),
            _ => Formula::And(out),
        }
    }

    pub fn or<I: IntoIterator<Item = Formula>>(items: I) -> Self {
        let mut out = Vec::new();
        for f in items {
            match f {
                Formula::Or(cs) => out.extend(cs),
                other => out.push(other),
            }
        }
        match out.len() {
            0 => Formula::False,
            1 => out.pop().unwrap(),
            _ => Formula::Or(out),
        }
    }

    pub fn implies(a: Formula, b: Formula) -> Self {
        Formula::Implies(Box::new(a), Box::new(b))
    }

    pub fn iff(a: Formula, b: Formula) -> Self {
        Formula::Iff(Box::new(a), Box::new(b))
    }

    pub fn next(f: Formula) -> Self {
        Formula::Next(Box::new(f))
    }

    pub fn finally(f: Formula) -> Self {
        Formula::Finally(Box::new(f))
    }

    pub fn globally(f: Formula) -> Self {
        Formula::Globally(Box::new(f))
    }

    pub fn until(a: Formula, b: Formula) -> Self {
        Formula::Until(Box::new(a), Box::new(b))
    }

    pub fn weak_until(a: Formula, b: Formula) -> Self {
        Formula::WeakUntil(Box::new(a), Box::new(b))
    }

    pub fn release(a: Formula, b: Formula) -> Self {
        Formula::Release(Box::new(a), Box::new(b))
    }

    pub fn forall(f: Formula) -> Self {
        Formula::ForAll(Box::new(f))
    }

    pub fn exists(f: Formula) -> Self {
        Formula::Exists(Box::new(f))
    }

    pub fn ax(f: Formula) -> Self {
        Self::forall(Self::next(f))
    }

    pub fn af(f: Formula) -> Self {
        Self::forall(Self::finally(f))
    }

    pub fn ag(f: Formula) -> Self {
        Self::forall(Self::globally(f))
    }

    pub fn au(a: Formula, b: Formula) -> Self {
        Self::forall(Self::until(a, b))
    }

    pub fn ex(f: Formula) -> Self {
        Self::exists(Self::next(f))
    }

    pub fn ef(f: Formula) -> Self {
        Self::exists(Self::finally(f))
    }

    pub fn eg(f: Formula) -> Self {
        Self::exists(Self::globally(f))
    }

    pub fn eu(a: Formula, b: Formula) -> Self {
        Self::exists(Self::until(a, b))
    }

    pub fn children(&self) -> Vec<&Formula> {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => vec![],
            Formula::Not(a)
            | Formula::Next(a)
            | Formula::Finally(a)
            | Formula::Globally(a)
            | Formula::ForAll(a)
            | Formula::Exists(a) => vec![a],
            Formula::And(cs) | Formula::Or(cs) => cs.iter().collect(),
            Formula::Implies(a, b)
            | Formula::Iff(a, b)
            | Formula::Until(a, b)
            | Formula::WeakUntil(a, b)
            | Formula::Release(a, b) => vec![a, b],
        }
    }

    /// Rebuilds this node with `f` applied to every direct child.
    pub fn map_children<F: FnMut(&Formula) -> Formula>(&self, mut f: F) -> Formula {
        match self {
            Formula::True | Formula::False | Formula::Atom(_) => self.clone(),
            Formula::Not(a) => Formula::Not(Box::new(f(a))),
            Formula::Next(a) => Formula::Next(Box::new(f(a))),
            Formula::Finally(a) => Formula::Finally(Box::new(f(a))),
            Formula::Globally(a) => Formula::Globally(Box::new(f(a))),
            Formula::ForAll(a) => Formula::ForAll(Box::new(f(a))),
            Formula::Exists(a) => Formula::Exists(Box::new(f(a))),
            Formula::And(cs) => Formula::and(cs.iter().map(f)),
            Formula::Or(cs) => Formula::or(cs.iter().map(f)),
            Formula::Implies(a, b) => Formula::Implies(Box::new(f(a)), Box::new(f(b))),
            Formula::Iff(a, b) => Formula::Iff(Box::new(f(a)), Box::new(f(b))),
            Formula::Until(a, b) => Formula::Until(Box::new(f(a)), Box::new(f(b))),
            Formula::WeakUntil(a, b) => Formula::WeakUntil(Box::new(f(a)), Box::new(f(b))),
            Formula::Release(a, b) => Formula::Release(Box::new(f(a)), Box::new(f(b))),
        }
    }

    /// Flattens nested conjunctions/disjunctions and collapses degenerate ones.
    pub fn normalize(&self) -> Formula {
        match self {
            Formula::And(cs) => Formula::and(cs.iter().map(Formula::normalize)),
            Formula::Or(cs) => Formula::or(cs.iter().map(Formula::normalize)),
            _ => self.map_children(Formula::normalize),
        }
    }

    pub fn atoms(&self) -> BTreeSet<Atom> {
        let mut out = BTreeSet::new();
        self.collect_atoms(&mut out);
        out
    }

    fn collect_atoms(&self, out: &mut BTreeSet<Atom>) {
        if let Formula::Atom(a) = self {
            out.insert(a.clone());
        }
        for c in self.children() {
            c.collect_atoms(out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.children().into_iter().map(Formula::size).sum::<usize>()
    }

    pub fn is_temporal_operator(&self) -> bool {
        matches!(
            self,
            Formula::Next(_)
                | Formula::Finally(_)
                | Formula::Globally(_)
                | Formula::Until(..)
                | Formula::WeakUntil(..)
                | Formula::Release(..)
        )
    }

    pub fn has_path_quantifier(&self) -> bool {
        matches!(self, Formula::ForAll(_) | Formula::Exists(_))
            || self.children().into_iter().any(Formula::has_path_quantifier)
    }

    /// Formula::True when no temporal operator or path quantifier occurs anywhere.
    pub fn is_propositional(&self) -> bool {
        !(self.is_temporal_operator() || matches!(self, Formula::ForAll(_) | Formula::Exists(_)))
            && self.children().into_iter().all(Formula::is_propositional)
    }

    pub fn is_ltl(&self) -> bool {
        !self.has_path_quantifier()
    }

    /// CTL well-formedness: every temporal operator sits directly under a
    /// path quantifier and every quantifier wraps exactly one temporal operator.
    pub fn check_ctl(&self) -> Result<(), LogicError> {
        self.check_ctl_inner(false)
    }

    fn check_ctl_inner(&self, under_quantifier: bool) -> Result<(), LogicError> {
        match self {
            Formula::ForAll(a) | Formula::Exists(a) => {
                if !a.is_temporal_operator() {
                    return Err(LogicError::IllFormedCtl(format!(
                        "path quantifier must be followed by a temporal operator in `{}`",
                        super::emit::plain(self)
                    )));
                }
                a.check_ctl_inner(true)
            }
            t if t.is_temporal_operator() => {
                if !under_quantifier {
                    return Err(LogicError::IllFormedCtl(format!(
                        "temporal operator without path quantifier in `{}`",
                        super::emit::plain(self)
                    )));
                }
                for c in t.children() {
                    c.check_ctl_inner(false)?;
                }
                Ok(())
            }
            other => {
                for c in other.children() {
                    c.check_ctl_inner(false)?;
                }
                Ok(())
            }
        }
    }

    pub fn logic(&self) -> Logic {
        if self.has_path_quantifier() {
            Logic::Ctl
        } else {
            Logic::Ltl
        }
    }

    pub fn require_ltl(&self) -> Result<(), LogicError> {
        if self.has_path_quantifier() {
            Err(LogicError::NotLtl)
        } else {
            Ok(())
        }
    }

    /// Replaces every atom through `f`.
    pub fn rename_atoms<F: Fn(&Atom) -> Atom + Copy>(&self, f: F) -> Formula {
        match self {
            Formula::Atom(a) => Formula::Atom(f(a)),
            other => other.map_children(|c| c.rename_atoms(f)),
        }
    }
}

/// Serialized as its plain-syntax text.
impl Serialize for Formula {
    fn serialize<S: serde::Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for Formula {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        let text = String::deserialize(d)?;
        super::parse_formula(&text, Logic::Ltl)
            .or_else(|_| super::parse_formula(&text, Logic::Ctl))
            .map_err(serde::de::Error::custom)
    }
}

impl fmt::Display for Formula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&super::emit::plain(self))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Formula::{And, False, True};

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn and_flattens_and_collapses() {
        let f = Formula::and([Formula::and([a("p"), a("q")]), a("r")]);
        assert_eq!(f, And(vec![a("p"), a("q"), a("r")]));
        assert_eq!(Formula::and([a("p")]), a("p"));
        assert_eq!(Formula::and(Vec::new()), True);
        assert_eq!(Formula::or(Vec::new()), False);
    }

    #[test]
    fn ctl_well_formedness() {
        assert!(Formula::ag(Formula::not(a("l1"))).check_ctl().is_ok());
        assert!(Formula::globally(a("l1")).check_ctl().is_err());
        assert!(Formula::forall(a("l1")).check_ctl().is_err());
        assert!(Formula::forall(Formula::finally(Formula::finally(a("p")))).check_ctl().is_err());
        assert!(Formula::af(Formula::and([a("l1"), Formula::af(a("l2"))])).check_ctl().is_ok());
    }

    #[test]
    fn robot_qualified_atoms() {
        assert_eq!(Prop::location("l1").for_robot("r2").atom().as_str(), "r2_l1");
        assert_eq!(Prop::condition("fire").for_robot("r2").atom().as_str(), "fire");
        assert_eq!(Prop::action("grasp").atom().as_str(), "grasp");
    }

    #[test]
    fn propositional_detection() {
        assert!(Formula::and([a("p"), Formula::not(a("q"))]).is_propositional());
        assert!(!Formula::next(a("p")).is_propositional());
        assert!(!Formula::af(a("p")).is_propositional());
    }
}
