//! LTL to Büchi automata and automaton-based lasso membership.

mod hoa;
mod search;
mod tableau;

pub use hoa::to_hoa;
pub use search::{find_accepting_lasso, Lasso};
pub use tableau::ltl_to_gba;

use std::collections::BTreeSet;
use std::fmt;

use crate::logic::{Atom, Formula, LassoTrace, Letter, LogicError};

/// Conjunction of literals over atomic propositions.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Label {
    pub pos: BTreeSet<Atom>,
    pub neg: BTreeSet<Atom>,
}

impl Label {
    pub fn matches(&self, letter: &Letter) -> bool {
        self.pos.iter().all(|a| letter.contains(a)) && self.neg.iter().all(|a| !letter.contains(a))
    }

    pub fn is_true(&self) -> bool {
        self.pos.is_empty() && self.neg.is_empty()
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_true() {
            return f.write_str("true");
        }
        let lits: Vec<String> =
            self.pos.iter().map(|a| a.to_string()).chain(self.neg.iter().map(|a| format!("!{a}"))).collect();
        f.write_str(&lits.join(" & "))
    }
}

/// Edge-labelled automaton with state-based generalized Büchi acceptance.
#[derive(Debug, Clone)]
pub struct GeneralizedBuchi {
    /// Display name of each state.
    pub names: Vec<String>,
    pub initial: Vec<usize>,
    pub edges: Vec<Vec<(Label, usize)>>,
    /// One state set per until subformula; a run is accepting when it
    /// visits every set infinitely often.
    pub acceptance: Vec<BTreeSet<usize>>,
    pub ap: BTreeSet<Atom>,
}

impl GeneralizedBuchi {
    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }
}

/// Edge-labelled automaton with a single set of accepting states.
#[derive(Debug, Clone)]
pub struct BuchiAutomaton {
    pub names: Vec<String>,
    pub initial: Vec<usize>,
    pub edges: Vec<Vec<(Label, usize)>>,
    pub accepting: Vec<bool>,
    pub ap: BTreeSet<Atom>,
}

impl BuchiAutomaton {
    /// Translates `f` via the tableau and degeneralization.
    pub fn from_ltl(f: &Formula) -> Result<Self, LogicError> {
        Ok(degeneralize(&ltl_to_gba(f)?))
    }

    pub fn num_states(&self) -> usize {
        self.edges.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.iter().map(Vec::len).sum()
    }

    /// Targets of the edges of `q` enabled by `letter`.
    pub fn step<'a>(&'a self, q: usize, letter: &'a Letter) -> impl Iterator<Item = usize> + 'a {
        self.edges[q].iter().filter(move |(l, _)| l.matches(letter)).map(|(_, t)| *t)
    }
}

/// Counter construction: state `(q, i)` waits for acceptance set `i`.
/// Only states reachable from the initial states are kept.
pub fn degeneralize(g: &GeneralizedBuchi) -> BuchiAutomaton {
    let k = g.acceptance.len();
    if k == 0 {
        return BuchiAutomaton {
            names: g.names.clone(),
            initial: g.initial.clone(),
            edges: g.edges.clone(),
            accepting: vec![true; g.num_states()],
            ap: g.ap.clone(),
        };
    }
    let mut ids = std::collections::HashMap::new();
    let mut order: Vec<(usize, usize)> = Vec::new();
    let mut intern = |p: (usize, usize), order: &mut Vec<(usize, usize)>| {
        *ids.entry(p).or_insert_with(|| {
            order.push(p);
            order.len() - 1
        })
    };
    let initial: Vec<usize> = g.initial.iter().map(|&q| intern((q, 0), &mut order)).collect();
    let mut edges: Vec<Vec<(Label, usize)>> = Vec::new();
    let mut i = 0;
    while i < order.len() {
        let (q, c) = order[i];
        let next_c = if g.acceptance[c].contains(&q) { (c + 1) % k } else { c };
        let out: Vec<(Label, usize)> =
            g.edges[q].iter().map(|(l, t)| (l.clone(), intern((*t, next_c), &mut order))).collect();
        edges.push(out);
        i += 1;
    }
    let accepting = order.iter().map(|&(q, c)| c == 0 && g.acceptance[0].contains(&q)).collect();
    let names = order.iter().map(|&(q, c)| format!("{} #{c}", g.names[q])).collect();
    BuchiAutomaton { names, initial, edges, accepting, ap: g.ap.clone() }
}

/// Whether the ω-word `stem · cycle^ω` is accepted by `b`.
pub fn accepts_lasso(b: &BuchiAutomaton, t: &LassoTrace) -> bool {
    let succ = |&(pos, q): &(usize, usize)| -> Vec<(usize, usize)> {
        let next = t.succ(pos);
        b.step(q, t.at(pos)).map(|q2| (next, q2)).collect()
    };
    let init = b.initial.iter().map(|&q| (0, q));
    find_accepting_lasso(init, succ, |&(_, q)| b.accepting[q]).is_some()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{eval_lasso, parse_formula, Logic};

    fn ltl(s: &str) -> Formula {
        parse_formula(s, Logic::Ltl).unwrap()
    }

    fn trace(s: &str) -> LassoTrace {
        LassoTrace::parse(s).unwrap()
    }

    #[test]
    fn safety_invariant_is_one_state_plus_init() {
        let g = ltl_to_gba(&ltl("G !l1")).unwrap();
        assert_eq!(g.num_states(), 2);
        assert!(g.acceptance.is_empty());
        let b = degeneralize(&g);
        assert!(b.accepting.iter().all(|a| *a));
        assert!(!accepts_lasso(&b, &trace("stem: l1; loop: l2")));
        assert!(accepts_lasso(&b, &trace("stem: ; loop: l2")));
    }

    #[test]
    fn reachability() {
        let b = BuchiAutomaton::from_ltl(&ltl("F l1")).unwrap();
        assert!(accepts_lasso(&b, &trace("stem: l2, l2; loop: l1, l2")));
        assert!(accepts_lasso(&b, &trace("stem: l2, l1; loop: l2")));
        assert!(!accepts_lasso(&b, &trace("stem: l2; loop: l3")));
    }

    #[test]
    fn sequenced_reachability() {
        let f = ltl("F (l1 & F l2)");
        let b = BuchiAutomaton::from_ltl(&f).unwrap();
        for (t, want) in [("stem: l1, l2; loop: l4", true), ("stem: l2; loop: l4", false)] {
            assert_eq!(accepts_lasso(&b, &trace(t)), want, "{t}");
            assert_eq!(eval_lasso(&f, &trace(t)).unwrap(), want);
        }
    }

    #[test]
    fn single_acceptance_set_degeneralizes_isomorphically() {
        let g = ltl_to_gba(&ltl("G F l1")).unwrap();
        assert_eq!(g.acceptance.len(), 1);
        let b = degeneralize(&g);
        assert_eq!(b.num_states(), g.num_states());
        assert_eq!(b.num_edges(), g.num_edges());
    }

    #[test]
    fn generalized_acceptance() {
        let b = BuchiAutomaton::from_ltl(&ltl("G F a & G F b")).unwrap();
        assert!(accepts_lasso(&b, &trace("stem: ; loop: a, b")));
        assert!(!accepts_lasso(&b, &trace("stem: b; loop: a")));
        assert!(accepts_lasso(&b, &trace("stem: ; loop: {a, b}")));
    }

    #[test]
    fn rejects_ctl() {
        assert!(ltl_to_gba(&Formula::ag(Formula::atom("p"))).is_err());
    }
}
