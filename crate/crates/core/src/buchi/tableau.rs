//! Expand-node tableau over the NNF closure.

use std::collections::{BTreeSet, HashMap};

use crate::logic::{nnf, Atom, Formula, LogicError};

use super::{GeneralizedBuchi, Label};

type Id = u32;
/// Literals, next obligations and acceptance row: nodes equal on these merge.
type NodeKey = (Vec<Id>, BTreeSet<Id>, Vec<bool>);

#[derive(Debug)]
enum Sub {
    True,
    False,
    Lit(Atom, bool),
    And(Vec<Id>),
    Or(Vec<Id>),
    Next(Id),
    Until(Id, Id),
    Release(Id, Id),
}

/// Subformulas of the NNF input, interned so node sets are sets of ids.
#[derive(Default)]
struct Closure {
    subs: Vec<Sub>,
    ids: HashMap<Formula, Id>,
    lits: HashMap<(Atom, bool), Id>,
}

impl Closure {
    fn intern(&mut self, f: &Formula) -> Id {
        if let Some(&id) = self.ids.get(f) {
            return id;
        }
        let sub = match f {
            Formula::True => Sub::True,
            Formula::False => Sub::False,
            Formula::Atom(a) => Sub::Lit(a.clone(), true),
            Formula::Not(inner) => match &**inner {
                Formula::Atom(a) => Sub::Lit(a.clone(), false),
                other => unreachable!("not in negation normal form: !{other:?}"),
            },
            Formula::And(cs) => Sub::And(cs.iter().map(|c| self.intern(c)).collect()),
            Formula::Or(cs) => Sub::Or(cs.iter().map(|c| self.intern(c)).collect()),
            Formula::Next(a) => Sub::Next(self.intern(a)),
            Formula::Until(a, b) => Sub::Until(self.intern(a), self.intern(b)),
            Formula::Release(a, b) => Sub::Release(self.intern(a), self.intern(b)),
            other => unreachable!("not in negation normal form: {other:?}"),
        };
        let id = self.subs.len() as Id;
        if let Sub::Lit(a, pos) = &sub {
            self.lits.insert((a.clone(), *pos), id);
        }
        self.subs.push(sub);
        self.ids.insert(f.clone(), id);
        id
    }

    fn complement(&self, id: Id) -> Option<Id> {
        match &self.subs[id as usize] {
            Sub::Lit(a, pos) => self.lits.get(&(a.clone(), !pos)).copied(),
            _ => None,
        }
    }

    fn untils(&self) -> Vec<(Id, Id)> {
        self.subs
            .iter()
            .enumerate()
            .filter_map(|(i, s)| match s {
                Sub::Until(_, b) => Some((i as Id, *b)),
                _ => None,
            })
            .collect()
    }
}

#[derive(Clone)]
struct Node {
    incoming: usize,
    new: Vec<Id>,
    old: BTreeSet<Id>,
    next: BTreeSet<Id>,
}

const INIT: usize = usize::MAX;

struct Finished {
    incoming: BTreeSet<usize>,
    literals: Vec<Id>,
}

/// Expands the tableau. Finished nodes are identified by their literals,
/// obligations for the next instant and acceptance signature; two nodes
/// agreeing on all three accept the same suffixes.
fn expand_all(cl: &Closure, root: Id) -> (Vec<Finished>, Vec<Vec<bool>>) {
    let untils = cl.untils();
    let mut done: Vec<Finished> = Vec::new();
    let mut acc_rows: Vec<Vec<bool>> = Vec::new();
    let mut index: HashMap<NodeKey, usize> = HashMap::new();
    let mut work = vec![Node { incoming: INIT, new: vec![root], old: BTreeSet::new(), next: BTreeSet::new() }];

    'work: while let Some(mut node) = work.pop() {
        while let Some(eta) = node.new.pop() {
            if node.old.contains(&eta) {
                continue;
            }
            match &cl.subs[eta as usize] {
                Sub::False => continue 'work,
                Sub::True => {}
                Sub::Lit(..) => {
                    if cl.complement(eta).is_some_and(|n| node.old.contains(&n)) {
                        continue 'work;
                    }
                }
                Sub::And(cs) => node.new.extend(cs.iter().filter(|c| !node.old.contains(c))),
                Sub::Next(a) => {
                    node.next.insert(*a);
                }
                Sub::Or(cs) => {
                    if !cs.iter().any(|c| node.old.contains(c)) {
                        for &c in &cs[1..] {
                            let mut alt = node.clone();
                            alt.old.insert(eta);
                            alt.new.push(c);
                            work.push(alt);
                        }
                        node.new.push(cs[0]);
                    }
                }
                Sub::Until(a, b) => {
                    if !node.old.contains(b) {
                        let mut alt = node.clone();
                        alt.old.insert(eta);
                        alt.new.push(*b);
                        work.push(alt);
                        node.new.push(*a);
                        node.next.insert(eta);
                    }
                }
                Sub::Release(a, b) => {
                    if node.old.contains(a) {
                        node.new.push(*b);
                    } else {
                        let mut alt = node.clone();
                        alt.old.insert(eta);
                        alt.new.push(*a);
                        alt.new.push(*b);
                        work.push(alt);
                        node.new.push(*b);
                        node.next.insert(eta);
                    }
                }
            }
            node.old.insert(eta);
        }
        let literals: Vec<Id> =
            node.old.iter().copied().filter(|&i| matches!(cl.subs[i as usize], Sub::Lit(..))).collect();
        let acc: Vec<bool> = untils.iter().map(|(u, b)| !node.old.contains(u) || node.old.contains(b)).collect();
        let key = (literals, node.next, acc);
        if let Some(&id) = index.get(&key) {
            done[id].incoming.insert(node.incoming);
            continue;
        }
        let id = done.len();
        work.push(Node {
            incoming: id,
            new: key.1.iter().copied().collect(),
            old: BTreeSet::new(),
            next: BTreeSet::new(),
        });
        done.push(Finished { incoming: BTreeSet::from([node.incoming]), literals: key.0.clone() });
        acc_rows.push(key.2.clone());
        index.insert(key, id);
    }
    (done, acc_rows)
}

/// Translates an LTL formula into a generalized Büchi automaton with one
/// acceptance set per until subformula of its negation normal form.
///
/// State 0 is a fresh initial state; edge labels are the literals of the
/// target tableau node.
pub fn ltl_to_gba(f: &Formula) -> Result<GeneralizedBuchi, LogicError> {
    f.require_ltl()?;
    let g = nnf(f)?;
    let mut cl = Closure::default();
    let root = cl.intern(&g);
    let (nodes, acc_rows) = expand_all(&cl, root);

    let n = nodes.len() + 1;
    let mut edges: Vec<Vec<(Label, usize)>> = vec![Vec::new(); n];
    let mut names = vec!["init".to_string()];
    for (i, node) in nodes.iter().enumerate() {
        let mut label = Label::default();
        for &l in &node.literals {
            if let Sub::Lit(a, pos) = &cl.subs[l as usize] {
                if *pos {
                    label.pos.insert(a.clone())
                } else {
                    label.neg.insert(a.clone())
                };
            }
        }
        for &src in &node.incoming {
            let from = if src == INIT { 0 } else { src + 1 };
            edges[from].push((label.clone(), i + 1));
        }
        names.push(label.to_string());
    }
    for out in &mut edges {
        out.sort_by_key(|e| e.1);
    }

    let k = cl.untils().len();
    let acceptance = (0..k).map(|j| (0..nodes.len()).filter(|&i| acc_rows[i][j]).map(|i| i + 1).collect()).collect();

    Ok(GeneralizedBuchi { names, initial: vec![0], edges, acceptance, ap: f.atoms() })
}
