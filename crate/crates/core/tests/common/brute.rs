//! Plan-existence oracle that shares no code with the automaton pipeline.
//!
//! Every lasso of a system is a loop (a closed walk) plus a stem leading to
//! it. Loops are enumerated exhaustively up to a length bound and evaluated
//! directly; stems are then handled exactly, without a length bound, by
//! propagating subformula valuations backwards along predecessor edges.
//! The valuation at a position depends only on its letter and the valuation
//! one step later, so the set of (state, valuation) pairs is finite.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};

use missionspec::logic::{Atom, Formula};
use missionspec::model::TransitionSystem;

#[derive(Clone, Copy)]
enum Op {
    True,
    False,
    Atom(usize),
    Not(usize),
    Implies(usize, usize),
    Iff(usize, usize),
    Next(usize),
    Finally(usize),
    Globally(usize),
    Until(usize, usize),
    WeakUntil(usize, usize),
    Release(usize, usize),
}

/// Subformula DAG in children-first order; `And`/`Or` keep child lists.
struct Dag {
    ops: Vec<(Op, Vec<usize>, bool)>, // (op, n-ary children, is_and)
    index: HashMap<Formula, usize>,
    atoms: Vec<Atom>,
}

impl Dag {
    fn add(&mut self, f: &Formula) -> usize {
        if let Some(&i) = self.index.get(f) {
            return i;
        }
        let nary = |cs: &[Formula], d: &mut Dag| cs.iter().map(|c| d.add(c)).collect::<Vec<_>>();
        let entry = match f {
            Formula::True => (Op::True, vec![], false),
            Formula::False => (Op::False, vec![], false),
            Formula::Atom(a) => {
                let k = self.atoms.iter().position(|x| x == a).unwrap_or_else(|| {
                    self.atoms.push(a.clone());
                    self.atoms.len() - 1
                });
                (Op::Atom(k), vec![], false)
            }
            Formula::Not(a) => (Op::Not(self.add(a)), vec![], false),
            Formula::And(cs) => (Op::True, nary(cs, self), true),
            Formula::Or(cs) => (Op::False, nary(cs, self), false),
            Formula::Implies(a, b) => (Op::Implies(self.add(a), self.add(b)), vec![], false),
            Formula::Iff(a, b) => (Op::Iff(self.add(a), self.add(b)), vec![], false),
            Formula::Next(a) => (Op::Next(self.add(a)), vec![], false),
            Formula::Finally(a) => (Op::Finally(self.add(a)), vec![], false),
            Formula::Globally(a) => (Op::Globally(self.add(a)), vec![], false),
            Formula::Until(a, b) => (Op::Until(self.add(a), self.add(b)), vec![], false),
            Formula::WeakUntil(a, b) => (Op::WeakUntil(self.add(a), self.add(b)), vec![], false),
            Formula::Release(a, b) => (Op::Release(self.add(a), self.add(b)), vec![], false),
            Formula::ForAll(_) | Formula::Exists(_) => panic!("path quantifier in an LTL oracle"),
        };
        self.ops.push(entry);
        self.index.insert(f.clone(), self.ops.len() - 1);
        self.ops.len() - 1
    }

    /// Value of node `i` given values `now` of its children at this position
    /// and `later` of every node one step later.
    fn node(&self, i: usize, letter: u64, now: &[bool], later: &[bool]) -> bool {
        let (op, cs, is_and) = &self.ops[i];
        if !cs.is_empty() {
            return if *is_and { cs.iter().all(|&c| now[c]) } else { cs.iter().any(|&c| now[c]) };
        }
        match *op {
            Op::True => true,
            Op::False => false,
            Op::Atom(k) => letter >> k & 1 == 1,
            Op::Not(a) => !now[a],
            Op::Implies(a, b) => !now[a] || now[b],
            Op::Iff(a, b) => now[a] == now[b],
            Op::Next(a) => later[a],
            Op::Finally(a) => now[a] || later[i],
            Op::Globally(a) => now[a] && later[i],
            Op::Until(a, b) | Op::WeakUntil(a, b) => now[b] || (now[a] && later[i]),
            Op::Release(a, b) => now[b] && (now[a] || later[i]),
        }
    }

    fn step(&self, letter: u64, later: &[bool]) -> Vec<bool> {
        let mut now = vec![false; self.ops.len()];
        for i in 0..self.ops.len() {
            now[i] = self.node(i, letter, &now, later);
        }
        now
    }

    /// Least fixpoint for eventualities, greatest for invariants.
    fn greatest(&self, i: usize) -> bool {
        matches!(self.ops[i].0, Op::Globally(_) | Op::WeakUntil(..) | Op::Release(..)) && self.ops[i].1.is_empty()
    }

    /// Valuations at every position of the periodic word `letters^ω`.
    fn loop_values(&self, letters: &[u64]) -> Vec<Vec<bool>> {
        let k = letters.len();
        let mut v = vec![vec![false; self.ops.len()]; k];
        for i in 0..self.ops.len() {
            for row in v.iter_mut() {
                row[i] = self.greatest(i);
            }
            loop {
                let mut changed = false;
                for p in (0..k).rev() {
                    let x = self.node(i, letters[p], &v[p], &v[(p + 1) % k]);
                    if x != v[p][i] {
                        v[p][i] = x;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
        }
        v
    }
}

/// For each formula, whether some infinite path of `ts` from an initial
/// state satisfies it, among lassos whose loop has at most `max_loop`
/// states (stems are unbounded).
pub fn lasso_exists(ts: &TransitionSystem, fs: &[Formula], max_loop: usize) -> Vec<bool> {
    let mut dag = Dag { ops: Vec::new(), index: HashMap::new(), atoms: Vec::new() };
    let roots: Vec<usize> = fs.iter().map(|f| dag.add(f)).collect();
    assert!(dag.atoms.len() <= 64);
    let letter: Vec<u64> = (0..ts.len())
        .map(|s| dag.atoms.iter().enumerate().filter(|(_, a)| ts.label(s).contains(*a)).map(|(k, _)| 1 << k).sum())
        .collect();
    let mut pred = vec![BTreeSet::new(); ts.len()];
    for s in 0..ts.len() {
        for &t in ts.successors(s) {
            pred[t].insert(s);
        }
    }

    // Closed walks whose first state has the least index, so each loop is
    // met once per rotation start.
    let mut seen: HashSet<(usize, Vec<bool>)> = HashSet::new();
    let mut queue = VecDeque::new();
    let mut walk = Vec::new();
    fn walks(ts: &TransitionSystem, max_loop: usize, walk: &mut Vec<usize>, out: &mut dyn FnMut(&[usize])) {
        let (first, last) = (walk[0], walk[walk.len() - 1]);
        if ts.successors(last).contains(&first) {
            out(walk);
        }
        if walk.len() < max_loop {
            for &t in ts.successors(last) {
                if t >= first {
                    walk.push(t);
                    walks(ts, max_loop, walk, out);
                    walk.pop();
                }
            }
        }
    }
    for s in 0..ts.len() {
        walk.push(s);
        walks(ts, max_loop, &mut walk, &mut |w| {
            let letters: Vec<u64> = w.iter().map(|&q| letter[q]).collect();
            for (p, vals) in dag.loop_values(&letters).into_iter().enumerate() {
                if seen.insert((w[p], vals.clone())) {
                    queue.push_back((w[p], vals));
                }
            }
        });
        walk.pop();
    }

    let mut found = vec![false; fs.len()];
    let initial: BTreeSet<usize> = ts.initial().iter().copied().collect();
    while let Some((q, vals)) = queue.pop_front() {
        if initial.contains(&q) {
            for (k, &r) in roots.iter().enumerate() {
                found[k] |= vals[r];
            }
        }
        for &p in &pred[q] {
            let before = dag.step(letter[p], &vals);
            if seen.insert((p, before.clone())) {
                queue.push_back((p, before));
            }
        }
    }
    found
}
