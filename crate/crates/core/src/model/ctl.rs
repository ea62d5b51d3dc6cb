use std::collections::VecDeque;

use super::{ModelError, TransitionSystem, Verdict};
use crate::logic::Formula;

type Sat = Vec<bool>;

struct Checker<'a> {
    ts: &'a TransitionSystem,
    pred: Vec<Vec<usize>>,
}

impl<'a> Checker<'a> {
    fn new(ts: &'a TransitionSystem) -> Self {
        let mut pred = vec![Vec::new(); ts.len()];
        for s in 0..ts.len() {
            for &t in ts.successors(s) {
                pred[t].push(s);
            }
        }
        Checker { ts, pred }
    }

    fn all(&self, v: bool) -> Sat {
        vec![v; self.ts.len()]
    }

    fn ex(&self, a: &Sat) -> Sat {
        (0..self.ts.len()).map(|s| self.ts.successors(s).iter().any(|&t| a[t])).collect()
    }

    /// Least fixpoint of `b | (a & EX z)`.
    fn eu(&self, a: &Sat, b: &Sat) -> Sat {
        let mut sat = b.clone();
        let mut queue: VecDeque<usize> = (0..sat.len()).filter(|&s| sat[s]).collect();
        while let Some(t) = queue.pop_front() {
            for &s in &self.pred[t] {
                if !sat[s] && a[s] {
                    sat[s] = true;
                    queue.push_back(s);
                }
            }
        }
        sat
    }

    /// Greatest fixpoint of `a & EX z`.
    fn eg(&self, a: &Sat) -> Sat {
        let n = self.ts.len();
        let mut sat = a.clone();
        let mut live: Vec<usize> = (0..n).map(|s| self.ts.successors(s).iter().filter(|&&t| sat[t]).count()).collect();
        let mut queue: VecDeque<usize> = (0..n).filter(|&s| sat[s] && live[s] == 0).collect();
        while let Some(s) = queue.pop_front() {
            if !sat[s] {
                continue;
            }
            sat[s] = false;
            for &p in &self.pred[s] {
                live[p] -= 1;
                if sat[p] && live[p] == 0 {
                    queue.push_back(p);
                }
            }
        }
        sat
    }

    fn sat(&self, f: &Formula) -> Sat {
        let not = |v: Sat| -> Sat { v.into_iter().map(|x| !x).collect() };
        let and = |a: &Sat, b: &Sat| -> Sat { a.iter().zip(b).map(|(x, y)| *x && *y).collect() };
        let or = |a: &Sat, b: &Sat| -> Sat { a.iter().zip(b).map(|(x, y)| *x || *y).collect() };
        match f {
            Formula::True => self.all(true),
            Formula::False => self.all(false),
            Formula::Atom(a) => (0..self.ts.len()).map(|s| self.ts.label(s).contains(a)).collect(),
            Formula::Not(a) => not(self.sat(a)),
            Formula::And(cs) => cs.iter().fold(self.all(true), |acc, c| and(&acc, &self.sat(c))),
            Formula::Or(cs) => cs.iter().fold(self.all(false), |acc, c| or(&acc, &self.sat(c))),
            Formula::Implies(a, b) => or(&not(self.sat(a)), &self.sat(b)),
            Formula::Iff(a, b) => {
                let (x, y) = (self.sat(a), self.sat(b));
                x.iter().zip(&y).map(|(p, q)| p == q).collect()
            }
            Formula::Exists(body) => match &**body {
                Formula::Next(a) => self.ex(&self.sat(a)),
                Formula::Finally(a) => self.eu(&self.all(true), &self.sat(a)),
                Formula::Globally(a) => self.eg(&self.sat(a)),
                Formula::Until(a, b) => self.eu(&self.sat(a), &self.sat(b)),
                Formula::WeakUntil(a, b) => {
                    let (x, y) = (self.sat(a), self.sat(b));
                    or(&self.eu(&x, &y), &self.eg(&x))
                }
                _ => unreachable!("checked well-formed"),
            },
            Formula::ForAll(body) => match &**body {
                Formula::Next(a) => not(self.ex(&not(self.sat(a)))),
                Formula::Finally(a) => not(self.eg(&not(self.sat(a)))),
                Formula::Globally(a) => not(self.eu(&self.all(true), &not(self.sat(a)))),
                Formula::Until(a, b) => {
                    let (na, nb) = (not(self.sat(a)), not(self.sat(b)));
                    let bad_until = self.eu(&nb, &and(&na, &nb));
                    and(&not(bad_until), &not(self.eg(&nb)))
                }
                Formula::WeakUntil(a, b) => {
                    let (na, nb) = (not(self.sat(a)), not(self.sat(b)));
                    not(self.eu(&nb, &and(&na, &nb)))
                }
                _ => unreachable!("checked well-formed"),
            },
            _ => unreachable!("checked well-formed"),
        }
    }
}

/// States of `ts` satisfying the CTL formula `f`.
pub fn ctl_states(ts: &TransitionSystem, f: &Formula) -> Result<Vec<bool>, ModelError> {
    f.check_ctl()?;
    ts.check_atoms(f)?;
    Ok(Checker::new(ts).sat(f))
}

/// Fixpoint CTL model checking; holds iff every initial state satisfies `f`.
pub fn check_ctl(ts: &TransitionSystem, f: &Formula) -> Result<Verdict, ModelError> {
    let sat = ctl_states(ts, f)?;
    Ok(Verdict { holds: ts.initial().iter().all(|&s| sat[s]), witness: None })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::logic::{parse_formula, Logic};
    use crate::model::tests::system;

    fn ctl(s: &str) -> Formula {
        parse_formula(s, Logic::Ctl).unwrap()
    }

    #[test]
    fn point_with_self_loop() {
        let ts = system(&[&["l1"]], &[(0, 0)], &[0]);
        assert!(check_ctl(&ts, &ctl("AG l1")).unwrap().holds);
        assert!(!check_ctl(&ts, &ctl("EF !l1")).unwrap().holds);
    }

    #[test]
    fn universal_until_on_two_cycle() {
        let ts = system(&[&["l1"], &["l2"]], &[(0, 1), (1, 0)], &[0]);
        assert_eq!(ctl_states(&ts, &ctl("A [ !l2 U l1 ]")).unwrap(), vec![true, false]);
    }

    #[test]
    fn branching_distinguishes_quantifiers() {
        // s0 -> s1 (loop), s0 -> s2 (loop)
        let ts = system(&[&["a"], &["b"], &["c"]], &[(0, 1), (0, 2), (1, 1), (2, 2)], &[0]);
        assert!(check_ctl(&ts, &ctl("EF b")).unwrap().holds);
        assert!(!check_ctl(&ts, &ctl("AF b")).unwrap().holds);
        assert!(check_ctl(&ts, &ctl("AX (b | c)")).unwrap().holds);
        assert!(check_ctl(&ts, &ctl("EG (a | b)")).unwrap().holds);
        assert!(!check_ctl(&ts, &ctl("AG (a | b)")).unwrap().holds);
        assert!(check_ctl(&ts, &ctl("A [ a W b ] | EF c")).unwrap().holds);
        assert!(!check_ctl(&ts, &ctl("A [ a W b ]")).unwrap().holds);
        assert!(check_ctl(&ts, &ctl("E [ a W b ]")).unwrap().holds);
    }

    #[test]
    fn rejects_ltl() {
        let ts = system(&[&["l1"]], &[(0, 0)], &[0]);
        assert!(check_ctl(&ts, &parse_formula("G l1", Logic::Ltl).unwrap()).is_err());
    }
}
