//! Transition systems, plan synthesis and model checking.

mod ctl;
mod smv;

pub use ctl::{check_ctl, ctl_states};
pub use smv::emit_smv;

use std::collections::BTreeSet;

use serde::Serialize;
use thiserror::Error;

use crate::buchi::{find_accepting_lasso, BuchiAutomaton};
use crate::logic::{Atom, Formula, LassoTrace, Letter, LogicError};

#[derive(Debug, Error)]
pub enum ModelError {
    #[error("transition system has no initial state")]
    NoInitialState,
    #[error("state index {0} out of range")]
    UnknownState(usize),
    #[error("duplicate state name `{0}`")]
    DuplicateState(String),
    #[error("proposition `{0}` is not in the declared universe")]
    OutsideUniverse(Atom),
    #[error("identifiers `{0}` and `{1}` collide after escaping")]
    IdentifierCollision(String, String),
    #[error("formula has {0} propositions; plan search supports at most 128")]
    TooManyAtoms(usize),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

/// Finite labelled transition system with a total transition relation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransitionSystem {
    names: Vec<String>,
    labels: Vec<Letter>,
    succ: Vec<Vec<usize>>,
    initial: Vec<usize>,
    universe: BTreeSet<Atom>,
}

impl TransitionSystem {
    /// Builds a system over `universe`. States without successors receive a
    /// self-loop so that every path is infinite.
    pub fn new(
        names: Vec<String>,
        labels: Vec<Letter>,
        edges: &[(usize, usize)],
        initial: Vec<usize>,
        universe: BTreeSet<Atom>,
    ) -> Result<Self, ModelError> {
        let n = names.len();
        if labels.len() != n {
            return Err(ModelError::UnknownState(labels.len().min(n)));
        }
        let mut seen = BTreeSet::new();
        for name in &names {
            if !seen.insert(name) {
                return Err(ModelError::DuplicateState(name.clone()));
            }
        }
        if initial.is_empty() {
            return Err(ModelError::NoInitialState);
        }
        if let Some(&bad) = initial.iter().find(|&&i| i >= n) {
            return Err(ModelError::UnknownState(bad));
        }
        for l in &labels {
            if let Some(a) = l.iter().find(|a| !universe.contains(*a)) {
                return Err(ModelError::OutsideUniverse(a.clone()));
            }
        }
        let mut succ = vec![Vec::new(); n];
        for &(a, b) in edges {
            if a >= n || b >= n {
                return Err(ModelError::UnknownState(a.max(b)));
            }
            succ[a].push(b);
        }
        for (i, out) in succ.iter_mut().enumerate() {
            out.sort_unstable();
            out.dedup();
            if out.is_empty() {
                log::warn!("state {} has no successor; adding a self-loop", names[i]);
                out.push(i);
            }
        }
        let mut initial = initial;
        initial.sort_unstable();
        initial.dedup();
        Ok(TransitionSystem { names, labels, succ, initial, universe })
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn name(&self, s: usize) -> &str {
        &self.names[s]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn label(&self, s: usize) -> &Letter {
        &self.labels[s]
    }

    pub fn successors(&self, s: usize) -> &[usize] {
        &self.succ[s]
    }

    pub fn initial(&self) -> &[usize] {
        &self.initial
    }

    pub fn universe(&self) -> &BTreeSet<Atom> {
        &self.universe
    }

    pub fn num_transitions(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn state(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    /// Whether every state has exactly one successor.
    pub fn is_deterministic(&self) -> bool {
        self.succ.iter().all(|s| s.len() == 1)
    }

    fn check_atoms(&self, f: &Formula) -> Result<(), ModelError> {
        match f.atoms().into_iter().find(|a| !self.universe.contains(a)) {
            Some(a) => Err(ModelError::OutsideUniverse(a)),
            None => Ok(()),
        }
    }
}

/// A lasso-shaped path: `stem` from an initial state, then `cycle` forever.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Plan {
    pub stem: Vec<usize>,
    #[serde(rename = "loop")]
    pub cycle: Vec<usize>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanStep {
    pub state: String,
    pub props: Vec<String>,
}

/// Exported form of a plan with state names and propositions.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct PlanRecord {
    pub stem: Vec<PlanStep>,
    #[serde(rename = "loop")]
    pub cycle: Vec<PlanStep>,
}

impl Plan {
    /// Same infinite state sequence with the shortest stem and loop.
    pub fn normalized(mut self) -> Plan {
        while let (Some(&a), Some(&b)) = (self.stem.last(), self.cycle.last()) {
            if a != b {
                break;
            }
            self.stem.pop();
            self.cycle.rotate_right(1);
        }
        let n = self.cycle.len();
        if let Some(p) = (1..n).find(|&p| n.is_multiple_of(p) && (p..n).all(|i| self.cycle[i] == self.cycle[i - p])) {
            self.cycle.truncate(p);
        }
        self
    }

    /// The trace induced by the labelling.
    pub fn trace(&self, ts: &TransitionSystem) -> LassoTrace {
        let letters = |xs: &[usize]| xs.iter().map(|&s| ts.label(s).clone()).collect();
        LassoTrace::new(letters(&self.stem), letters(&self.cycle)).expect("plan loop is non-empty")
    }

    /// Whether the plan is a path of `ts` starting in an initial state.
    pub fn is_path_of(&self, ts: &TransitionSystem) -> bool {
        let path: Vec<usize> = self.stem.iter().chain(&self.cycle).copied().collect();
        !self.cycle.is_empty()
            && ts.initial().contains(&path[0])
            && path.windows(2).all(|w| ts.successors(w[0]).contains(&w[1]))
            && ts.successors(*self.cycle.last().unwrap()).contains(&self.cycle[0])
    }

    pub fn record(&self, ts: &TransitionSystem) -> PlanRecord {
        let steps = |xs: &[usize]| {
            xs.iter()
                .map(|&s| PlanStep {
                    state: ts.name(s).to_string(),
                    props: ts.label(s).iter().map(|a| a.to_string()).collect(),
                })
                .collect()
        };
        PlanRecord { stem: steps(&self.stem), cycle: steps(&self.cycle) }
    }

    /// `stem: a, b; loop: c, d` over state names.
    pub fn display(&self, ts: &TransitionSystem) -> String {
        let join = |xs: &[usize]| xs.iter().map(|&s| ts.name(s)).collect::<Vec<_>>().join(", ");
        format!("stem: {}; loop: {}", join(&self.stem), join(&self.cycle))
    }
}

/// Outcome of a check, with a plan or counterexample when one exists.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Option<Plan>,
}

/// Searches for an initial path of `ts` satisfying `f`, via nested DFS on
/// the product of `ts` with the Büchi automaton of `f`.
pub fn find_plan(ts: &TransitionSystem, f: &Formula) -> Result<Option<Plan>, ModelError> {
    ts.check_atoms(f)?;
    find_plan_with(ts, &BuchiAutomaton::from_ltl(f)?)
}

/// [`find_plan`] against a prebuilt automaton, for checking one formula on
/// many systems.
pub fn find_plan_with(ts: &TransitionSystem, b: &BuchiAutomaton) -> Result<Option<Plan>, ModelError> {
    if let Some(a) = b.ap.iter().find(|a| !ts.universe.contains(*a)) {
        return Err(ModelError::OutsideUniverse(a.clone()));
    }
    // labels as bitmasks over the automaton's propositions
    let ap: Vec<&Atom> = b.ap.iter().collect();
    if ap.len() > 128 {
        return Err(ModelError::TooManyAtoms(ap.len()));
    }
    let mask = |atoms: &mut dyn Iterator<Item = &Atom>| -> u128 {
        atoms.filter_map(|a| ap.iter().position(|x| *x == a)).fold(0, |m, i| m | 1 << i)
    };
    let letters: Vec<u128> = (0..ts.len()).map(|s| mask(&mut ts.label(s).iter())).collect();
    let edges: Vec<Vec<(u128, u128, usize)>> = b
        .edges
        .iter()
        .map(|es| es.iter().map(|(l, t)| (mask(&mut l.pos.iter()), mask(&mut l.neg.iter()), *t)).collect())
        .collect();
    let step = |q: usize, letter: u128| {
        edges[q].iter().filter(move |(pos, neg, _)| letter & pos == *pos && letter & neg == 0).map(|e| e.2)
    };
    // product state (s, q): q is reached after reading the label of s
    let mut init = Vec::new();
    for &s in ts.initial() {
        for &q0 in &b.initial {
            init.extend(step(q0, letters[s]).map(|q| (s, q)));
        }
    }
    let succ = |&(s, q): &(usize, usize)| -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for &t in ts.successors(s) {
            out.extend(step(q, letters[t]).map(|q2| (t, q2)));
        }
        out
    };
    let lasso = find_accepting_lasso(init, succ, |&(_, q)| b.accepting[q]);
    Ok(lasso.map(|l| {
        Plan { stem: l.stem.into_iter().map(|p| p.0).collect(), cycle: l.cycle.into_iter().map(|p| p.0).collect() }
            .normalized()
    }))
}

/// Whether every initial path satisfies `f`; the witness is a path
/// violating `f` when it does not hold.
pub fn holds_universally(ts: &TransitionSystem, f: &Formula) -> Result<Verdict, ModelError> {
    let counterexample = find_plan(ts, &Formula::not(f.clone()))?;
    Ok(Verdict { holds: counterexample.is_none(), witness: counterexample })
}

#[cfg(test)]
pub(crate) mod tests {
    use super::*;
    use crate::logic::{eval_lasso, parse_formula, Logic};

    pub fn system(labels: &[&[&str]], edges: &[(usize, usize)], initial: &[usize]) -> TransitionSystem {
        let letters: Vec<Letter> = labels.iter().map(|l| l.iter().map(Atom::new).collect()).collect();
        let universe = letters.iter().flatten().cloned().collect();
        let names = (0..labels.len()).map(|i| format!("s{i}")).collect();
        TransitionSystem::new(names, letters, edges, initial.to_vec(), universe).unwrap()
    }

    fn ltl(s: &str) -> Formula {
        parse_formula(s, Logic::Ltl).unwrap()
    }

    #[test]
    fn two_state_patrol_plan() {
        let ts = system(&[&["l1"], &["l2"]], &[(0, 1), (1, 0)], &[0]);
        let plan = find_plan(&ts, &ltl("G F l1 & G F l2")).unwrap().unwrap();
        assert_eq!(plan, Plan { stem: vec![], cycle: vec![0, 1] });
        assert!(plan.is_path_of(&ts));
    }

    #[test]
    fn normalization_keeps_the_path() {
        let p = Plan { stem: vec![3, 0, 1], cycle: vec![2, 0, 1, 2, 0, 1] }.normalized();
        assert_eq!(p, Plan { stem: vec![3], cycle: vec![0, 1, 2] });
    }

    #[test]
    fn unreachable_goal_has_no_plan() {
        let universe = [Atom::new("l1"), Atom::new("l2")].into();
        let ts =
            TransitionSystem::new(vec!["s0".into()], vec![[Atom::new("l2")].into()], &[], vec![0], universe).unwrap();
        assert_eq!(ts.successors(0), &[0]);
        assert!(find_plan(&ts, &ltl("F l1")).unwrap().is_none());
    }

    #[test]
    fn universal_checks() {
        let ts = system(&[&["l1"], &["l2"]], &[(0, 1), (1, 0)], &[0]);
        assert!(holds_universally(&ts, &ltl("G F l1")).unwrap().holds);
        let trap = system(&[&["l1"], &["l2"], &["l3"]], &[(0, 1), (1, 0), (0, 2)], &[0]);
        let v = holds_universally(&trap, &ltl("G !l3")).unwrap();
        assert!(!v.holds);
        let w = v.witness.unwrap();
        assert!(w.cycle.contains(&2));
        assert!(!eval_lasso(&ltl("G !l3"), &w.trace(&trap)).unwrap());
    }

    #[test]
    fn atoms_outside_universe_are_rejected() {
        let ts = system(&[&["l1"]], &[(0, 0)], &[0]);
        assert!(matches!(find_plan(&ts, &ltl("F zz")), Err(ModelError::OutsideUniverse(_))));
    }

    #[test]
    fn plan_record_names_states() {
        let ts = system(&[&["l1"], &["l2"]], &[(0, 1), (1, 0)], &[0]);
        let plan = find_plan(&ts, &ltl("F l2")).unwrap().unwrap();
        let rec = plan.record(&ts);
        let json = serde_json::to_value(&rec).unwrap();
        assert!(json["loop"].is_array());
        assert_eq!(plan.display(&ts).split(';').count(), 2);
    }
}
