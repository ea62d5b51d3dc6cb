//! Classification of formulas as pattern instances, conjunctions of
//! instances, initial-state constraints, or none of these.
//!
//! Matching is syntactic modulo associativity, commutativity and idempotence
//! of `&` and `|`. Template atoms are placeholders bound injectively to the
//! atoms of the input.

mod corpus;

pub use corpus::{match_corpus, CorpusEntry, CorpusReport};

use std::collections::HashMap;

use serde::Serialize;

use crate::logic::{Atom, Formula, Logic};
use crate::patterns::{instantiate_ctl, instantiate_ltl, PatternId, PatternParams, Shape, Variant};

/// Flattens nested `&`/`|`, orders their operands and removes duplicates.
pub fn canonicalize(f: &Formula) -> Formula {
    fn ac(cs: &[Formula], conj: bool) -> Formula {
        let mut out: Vec<Formula> = Vec::with_capacity(cs.len());
        for c in cs {
            let c = canonicalize(c);
            match (c, conj) {
                (Formula::And(inner), true) | (Formula::Or(inner), false) => out.extend(inner),
                (c, _) => out.push(c),
            }
        }
        out.sort();
        out.dedup();
        match out.len() {
            1 => out.pop().unwrap(),
            _ if conj => Formula::And(out),
            _ => Formula::Or(out),
        }
    }
    match f {
        Formula::And(cs) if !cs.is_empty() => ac(cs, true),
        Formula::Or(cs) if !cs.is_empty() => ac(cs, false),
        other => other.map_children(canonicalize),
    }
}

/// A pattern together with the parameters that reproduce a formula.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct Binding {
    pub id: PatternId,
    pub params: PatternParams,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Outcome {
    SinglePattern { binding: Binding },
    Conjunction { parts: Vec<Binding> },
    Init,
    NonMatching,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct MatchResult {
    pub outcome: Outcome,
    /// For a single-pattern match: every other pattern instance that is
    /// syntactically identical to the input.
    pub alternatives: Vec<Binding>,
    /// Top-level conjuncts left unmatched by a conjunction.
    pub residue: Vec<Formula>,
}

impl MatchResult {
    /// All bindings reproducing the whole formula, primary first.
    pub fn candidates(&self) -> Vec<&Binding> {
        match &self.outcome {
            Outcome::SinglePattern { binding } => std::iter::once(binding).chain(&self.alternatives).collect(),
            _ => Vec::new(),
        }
    }
}

const MAX_SOLUTIONS: usize = 256;

fn placeholder(name: &str) -> Atom {
    Atom::new(format!("?{name}"))
}

fn is_placeholder(a: &Atom) -> bool {
    a.as_str().starts_with('?')
}

type Subst = HashMap<Atom, Atom>;

/// Extends `s` so that `p` under `s` equals `t`; injective on atoms.
fn unify(p: &Formula, t: &Formula, s: Subst, out: &mut Vec<Subst>) {
    if out.len() >= MAX_SOLUTIONS {
        return;
    }
    match (p, t) {
        (Formula::Atom(x), Formula::Atom(y)) if is_placeholder(x) => match s.get(x) {
            Some(bound) if bound == y => out.push(s),
            Some(_) => {}
            None if s.values().any(|v| v == y) => {}
            None => {
                let mut s = s;
                s.insert(x.clone(), y.clone());
                out.push(s);
            }
        },
        (Formula::Atom(x), Formula::Atom(y)) => {
            if x == y {
                out.push(s)
            }
        }
        (Formula::And(ps), Formula::And(ts)) | (Formula::Or(ps), Formula::Or(ts)) => {
            if ps.len() == ts.len() {
                let mut used = vec![false; ts.len()];
                assign(ps, ts, &mut used, s, out);
            }
        }
        _ => {
            if std::mem::discriminant(p) != std::mem::discriminant(t) {
                return;
            }
            let (pc, tc) = (p.children(), t.children());
            if pc.len() != tc.len() {
                return;
            }
            let mut partial = vec![s];
            for (a, b) in pc.iter().zip(&tc) {
                let mut next = Vec::new();
                for s in partial {
                    unify(a, b, s, &mut next);
                }
                if next.is_empty() {
                    return;
                }
                partial = next;
            }
            out.extend(partial);
            out.truncate(MAX_SOLUTIONS);
        }
    }
}

/// Matches every pattern operand to a distinct unused subject operand.
fn assign(ps: &[Formula], ts: &[Formula], used: &mut [bool], s: Subst, out: &mut Vec<Subst>) {
    let Some((first, rest)) = ps.split_first() else {
        out.push(s);
        return;
    };
    for j in 0..ts.len() {
        if used[j] || out.len() >= MAX_SOLUTIONS {
            continue;
        }
        if first.size() != ts[j].size() {
            continue;
        }
        let mut here = Vec::new();
        unify(first, &ts[j], s.clone(), &mut here);
        if here.is_empty() {
            continue;
        }
        used[j] = true;
        for s2 in here {
            assign(rest, ts, used, s2, out);
        }
        used[j] = false;
    }
}

/// A template instantiated with placeholder atoms.
struct Template {
    id: PatternId,
    n: usize,
    count: Option<u32>,
    variant: Variant,
    formula: Formula,
}

impl Template {
    fn build(id: PatternId, n: usize, count: Option<u32>, variant: Variant, logic: Logic) -> Option<Template> {
        let mut p = PatternParams { count, variant, ..Default::default() };
        match id.shape() {
            Shape::Locations => p.locations = (1..=n).map(|i| placeholder(&i.to_string())).collect(),
            Shape::TriggerReaction => {
                p.trigger = Some(placeholder("t"));
                p.reaction = Some(placeholder("r"));
            }
            Shape::LocationTrigger => {
                p.locations = vec![placeholder("1")];
                p.trigger = Some(placeholder("t"));
            }
            Shape::Location | Shape::LocationCount => p.locations = vec![placeholder("1")],
        }
        let f = match logic {
            Logic::Ltl => instantiate_ltl(id, &p),
            Logic::Ctl => instantiate_ctl(id, &p),
        }
        .ok()?;
        let formula = canonicalize(&f);
        // every placeholder must occur, otherwise bindings are incomplete
        let atoms = formula.atoms();
        if p.atoms().iter().any(|a| !atoms.contains(*a)) {
            return None;
        }
        Some(Template { id, n, count, variant, formula })
    }

    fn binding(&self, s: &Subst) -> Binding {
        let get = |name: &str| s.get(&placeholder(name)).cloned();
        let mut params = PatternParams { count: self.count, variant: self.variant, ..Default::default() };
        match self.id.shape() {
            Shape::Locations => params.locations = (1..=self.n).map(|i| get(&i.to_string()).expect("bound")).collect(),
            Shape::TriggerReaction => {
                params.trigger = get("t");
                params.reaction = get("r");
            }
            Shape::LocationTrigger => {
                params.locations = vec![get("1").expect("bound")];
                params.trigger = get("t");
            }
            Shape::Location | Shape::LocationCount => params.locations = vec![get("1").expect("bound")],
        }
        Binding { id: self.id, params }
    }

    fn conjuncts(&self) -> usize {
        match &self.formula {
            Formula::And(cs) => cs.len(),
            _ => 1,
        }
    }
}

/// Templates whose size can equal `size`, given `atoms` distinct atoms.
fn templates(logic: Logic, atoms: usize, size: usize) -> Vec<Template> {
    let mut out = Vec::new();
    for id in PatternId::ALL {
        match id.shape() {
            Shape::Locations => {
                'n: for n in 1..=atoms.max(1) {
                    let variants: &[Variant] = if id == PatternId::StrictOrderedPatrolling {
                        &[Variant::Default, Variant::ConsecutiveAllowed]
                    } else {
                        &[Variant::Default]
                    };
                    for &v in variants {
                        match Template::build(id, n, None, v, logic) {
                            // templates grow with n
                            Some(t) if t.formula.size() > size => break 'n,
                            Some(t) => out.push(t),
                            None => {}
                        }
                    }
                }
            }
            Shape::LocationCount => {
                for k in 0..=size as u32 {
                    match Template::build(id, 1, Some(k), Variant::Default, logic) {
                        Some(t) if t.formula.size() > size => break,
                        Some(t) => out.push(t),
                        None => {}
                    }
                }
            }
            _ => out.extend(Template::build(id, 1, None, Variant::Default, logic)),
        }
    }
    out
}

fn whole_matches(f: &Formula, logic: Logic) -> Vec<Binding> {
    let size = f.size();
    let mut found = Vec::new();
    for t in templates(logic, f.atoms().len(), size) {
        if t.formula.size() != size {
            continue;
        }
        let mut sols = Vec::new();
        unify(&t.formula, f, Subst::new(), &mut sols);
        for s in &sols {
            let b = t.binding(s);
            if !found.contains(&b) {
                found.push(b);
            }
        }
    }
    found
}

/// Classifies `f`. See the module documentation for the congruence used.
pub fn match_formula(f: &Formula) -> MatchResult {
    let logic = f.logic();
    let c = canonicalize(f);

    let mut whole = whole_matches(&c, logic);
    if !whole.is_empty() {
        let binding = whole.remove(0);
        return MatchResult { outcome: Outcome::SinglePattern { binding }, alternatives: whole, residue: vec![] };
    }

    if let Formula::And(conjuncts) = &c {
        let (parts, residue) = partition(conjuncts, logic);
        if !parts.is_empty() {
            return MatchResult { outcome: Outcome::Conjunction { parts }, alternatives: vec![], residue };
        }
    }

    let outcome = if c.is_propositional() { Outcome::Init } else { Outcome::NonMatching };
    MatchResult { outcome, alternatives: vec![], residue: vec![] }
}

/// Greedy partition of conjuncts into template instances, trying templates
/// with more conjuncts first.
fn partition(conjuncts: &[Formula], logic: Logic) -> (Vec<Binding>, Vec<Formula>) {
    let mut remaining: Vec<Formula> = conjuncts.to_vec();
    let atoms = Formula::And(remaining.clone()).atoms().len();
    let total: usize = remaining.iter().map(Formula::size).sum();
    let mut ts = templates(logic, atoms, total);
    ts.sort_by_key(|t| std::cmp::Reverse(t.conjuncts()));

    let mut parts = Vec::new();
    for t in &ts {
        loop {
            let m = t.conjuncts();
            if m > remaining.len() {
                break;
            }
            let pattern: Vec<Formula> = match &t.formula {
                Formula::And(cs) => cs.clone(),
                other => vec![other.clone()],
            };
            let Some((s, chosen)) = subset_match(&pattern, &remaining) else { break };
            parts.push(t.binding(&s));
            let mut idx = chosen;
            idx.sort_unstable_by(|a, b| b.cmp(a));
            for i in idx {
                remaining.remove(i);
            }
        }
    }
    (parts, remaining)
}

/// First assignment of the pattern operands to distinct subject operands,
/// leaving the others unused.
fn subset_match(ps: &[Formula], ts: &[Formula]) -> Option<(Subst, Vec<usize>)> {
    fn go(ps: &[Formula], ts: &[Formula], used: &mut Vec<usize>, s: Subst) -> Option<Subst> {
        let Some((first, rest)) = ps.split_first() else { return Some(s) };
        for j in 0..ts.len() {
            if used.contains(&j) || first.size() != ts[j].size() {
                continue;
            }
            let mut here = Vec::new();
            unify(first, &ts[j], s.clone(), &mut here);
            for s2 in here {
                used.push(j);
                if let Some(done) = go(rest, ts, used, s2) {
                    return Some(done);
                }
                used.pop();
            }
        }
        None
    }
    let mut used = Vec::new();
    go(ps, ts, &mut used, Subst::new()).map(|s| (s, used))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::parse_formula;

    fn ltl(s: &str) -> Formula {
        parse_formula(s, Logic::Ltl).unwrap()
    }

    #[test]
    fn canonicalize_ac_idempotence() {
        assert_eq!(canonicalize(&ltl("(a & b) & a")), ltl("a & b"));
        assert_eq!(canonicalize(&ltl("b | a")), ltl("a | b"));
        let f = ltl("G ((q | p) & (p | q)) & X (b & (c & a))");
        assert_eq!(canonicalize(&canonicalize(&f)), canonicalize(&f));
        assert_eq!(canonicalize(&f), canonicalize(&ltl("G (p | q) & X (a & b & c)")));
    }

    #[test]
    fn ordered_visit_two() {
        let r = match_formula(&ltl("F (l1 & F l2) & ((!l2) U l1)"));
        let want = Binding { id: PatternId::OrderedVisit, params: PatternParams::locations(["l1", "l2"]) };
        assert_eq!(r.outcome, Outcome::SinglePattern { binding: want });
    }

    #[test]
    fn instantaneous_reaction() {
        let r = match_formula(&ltl("G (p1 -> p2)"));
        let want = Binding { id: PatternId::InstantaneousReaction, params: PatternParams::reaction("p1", "p2") };
        assert_eq!(r.outcome, Outcome::SinglePattern { binding: want });
    }

    #[test]
    fn init_constraint() {
        assert_eq!(match_formula(&ltl("p1 & !p2")).outcome, Outcome::Init);
        assert_eq!(match_formula(&ltl("X (p1 & !p2)")).outcome, Outcome::NonMatching);
    }

    #[test]
    fn partial_conjunction_keeps_residue() {
        let r = match_formula(&ltl("G F p1 & G (p1 -> X X p2)"));
        let want = Binding { id: PatternId::Patrolling, params: PatternParams::location("p1") };
        assert_eq!(r.outcome, Outcome::Conjunction { parts: vec![want] });
        assert_eq!(r.residue, vec![ltl("G (p1 -> X X p2)")]);
    }

    #[test]
    fn conjunction_of_two_patterns() {
        let r = match_formula(&ltl("G !l3 & F l1 & G (c -> a)")).outcome;
        let Outcome::Conjunction { parts } = r else { panic!("{r:?}") };
        let ids: Vec<_> = parts.iter().map(|b| b.id).collect();
        assert!(ids.contains(&PatternId::GlobalAvoidance));
        assert!(ids.contains(&PatternId::InstantaneousReaction));
        assert_eq!(parts.len(), 3);
    }

    #[test]
    fn ctl_formulas_match_ctl_templates() {
        let r = match_formula(&parse_formula("AG (!l1)", Logic::Ctl).unwrap());
        let want = Binding { id: PatternId::GlobalAvoidance, params: PatternParams::location("l1") };
        assert_eq!(r.outcome, Outcome::SinglePattern { binding: want });
    }

    #[test]
    fn restricted_count_is_recovered() {
        let r = match_formula(&ltl("!F (l1 & X F (l1 & X F l1))"));
        let want =
            Binding { id: PatternId::UpperRestrictedAvoidance, params: PatternParams::location("l1").with_count(2) };
        assert_eq!(r.outcome, Outcome::SinglePattern { binding: want });
    }
}
