use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use super::{is_identifier, Atom, Formula, LogicError};

/// The set of propositions true at one position of a trace.
pub type Letter = BTreeSet<Atom>;

/// An ultimately periodic word `stem · cycle^ω`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct LassoTrace {
    stem: Vec<Letter>,
    #[serde(rename = "loop")]
    cycle: Vec<Letter>,
}

impl LassoTrace {
    pub fn new(stem: Vec<Letter>, cycle: Vec<Letter>) -> Result<Self, LogicError> {
        if cycle.is_empty() {
            return Err(LogicError::InvalidTrace("the loop must contain at least one position".into()));
        }
        Ok(LassoTrace { stem, cycle })
    }

    /// Builds a trace where every position holds exactly the listed symbols,
    /// e.g. `from_names(&[&["l1"], &["l2", "c"]], &[&["l3"]])`.
    pub fn from_names(stem: &[&[&str]], cycle: &[&[&str]]) -> Result<Self, LogicError> {
        let conv =
            |xs: &[&[&str]]| -> Vec<Letter> { xs.iter().map(|set| set.iter().map(Atom::new).collect()).collect() };
        Self::new(conv(stem), conv(cycle))
    }

    /// Convenience for traces of singleton positions.
    pub fn singletons(stem: &[&str], cycle: &[&str]) -> Result<Self, LogicError> {
        let conv = |xs: &[&str]| -> Vec<Letter> { xs.iter().map(|s| [Atom::new(s)].into()).collect() };
        Self::new(conv(stem), conv(cycle))
    }

    pub fn stem(&self) -> &[Letter] {
        &self.stem
    }

    pub fn cycle(&self) -> &[Letter] {
        &self.cycle
    }

    /// Number of distinct positions (stem plus one loop unrolling).
    pub fn len(&self) -> usize {
        self.stem.len() + self.cycle.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    /// Letter at an arbitrary position of the infinite word.
    pub fn at(&self, i: usize) -> &Letter {
        if i < self.stem.len() {
            &self.stem[i]
        } else {
            &self.cycle[(i - self.stem.len()) % self.cycle.len()]
        }
    }

    /// Successor of a position in the folded representation.
    pub fn succ(&self, i: usize) -> usize {
        if i + 1 < self.len() {
            i + 1
        } else {
            self.stem.len()
        }
    }

    /// The same word with the loop unrolled once more into the stem.
    pub fn unrolled(&self) -> LassoTrace {
        let mut stem = self.stem.clone();
        stem.extend(self.cycle.iter().cloned());
        LassoTrace { stem, cycle: self.cycle.clone() }
    }

    /// Checks every letter against a declared universe.
    pub fn check_universe(&self, universe: &BTreeSet<Atom>) -> Result<(), LogicError> {
        for letter in self.stem.iter().chain(&self.cycle) {
            if let Some(bad) = letter.iter().find(|a| !universe.contains(*a)) {
                return Err(LogicError::InvalidTrace(format!("proposition `{bad}` is not declared")));
            }
        }
        Ok(())
    }

    /// Parses `stem: l1, {l1, c}, l2; loop: l3` (sections may also sit on
    /// separate lines). Positions are separated by
    /// `,` or `->`; a brace-enclosed set lists several propositions and `{}`
    /// is the empty position.
    pub fn parse(text: &str) -> Result<Self, LogicError> {
        let mut stem = None;
        let mut cycle = None;
        for part in text.split([';', '\n']) {
            let part = part.trim();
            if part.is_empty() {
                continue;
            }
            let (key, body) = part
                .split_once(':')
                .ok_or_else(|| LogicError::InvalidTrace(format!("expected `stem:` or `loop:` in `{part}`")))?;
            let letters = parse_letters(body)?;
            match key.trim() {
                "stem" => stem = Some(letters),
                "loop" => cycle = Some(letters),
                other => return Err(LogicError::InvalidTrace(format!("unknown trace section `{other}`"))),
            }
        }
        let cycle = cycle.ok_or_else(|| LogicError::InvalidTrace("missing `loop:` section".into()))?;
        Self::new(stem.unwrap_or_default(), cycle)
    }
}

fn parse_letters(body: &str) -> Result<Vec<Letter>, LogicError> {
    let normalized = body.replace("->", ",");
    let mut out = Vec::new();
    let mut chars = normalized.chars().peekable();
    let mut current = String::new();
    let flush_single = |s: &mut String, out: &mut Vec<Letter>| -> Result<(), LogicError> {
        let name = s.trim();
        if !name.is_empty() {
            if !is_identifier(name) {
                return Err(LogicError::InvalidTrace(format!("`{name}` is not a proposition name")));
            }
            out.push([Atom::new(name)].into());
        }
        s.clear();
        Ok(())
    };
    while let Some(c) = chars.next() {
        match c {
            '{' => {
                if !current.trim().is_empty() {
                    return Err(LogicError::InvalidTrace("missing separator before `{`".into()));
                }
                current.clear();
                let mut inner = String::new();
                loop {
                    match chars.next() {
                        Some('}') => break,
                        Some(ch) => inner.push(ch),
                        None => return Err(LogicError::InvalidTrace("unterminated `{`".into())),
                    }
                }
                let mut letter = Letter::new();
                for name in inner.split(',').map(str::trim).filter(|s| !s.is_empty()) {
                    if !is_identifier(name) {
                        return Err(LogicError::InvalidTrace(format!("`{name}` is not a proposition name")));
                    }
                    letter.insert(Atom::new(name));
                }
                out.push(letter);
                // skip to the next separator
                while let Some(&n) = chars.peek() {
                    if n == ',' {
                        chars.next();
                        break;
                    } else if n.is_whitespace() {
                        chars.next();
                    } else {
                        return Err(LogicError::InvalidTrace(format!("unexpected `{n}` after `}}`")));
                    }
                }
            }
            ',' => flush_single(&mut current, &mut out)?,
            other => current.push(other),
        }
    }
    flush_single(&mut current, &mut out)?;
    Ok(out)
}

impl fmt::Display for LassoTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let render = |xs: &[Letter]| -> String {
            xs.iter()
                .map(|l| {
                    if l.len() == 1 {
                        l.iter().next().unwrap().to_string()
                    } else {
                        let inner: Vec<_> = l.iter().map(Atom::as_str).collect();
                        format!("{{{}}}", inner.join(", "))
                    }
                })
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "stem: {}; loop: {}", render(&self.stem), render(&self.cycle))
    }
}

/// Decides `t ⊨ f` for an LTL formula over an ultimately periodic word.
///
/// Every subformula is evaluated on the `|stem| + |loop|` folded positions;
/// until/release valuations are the least/greatest fixpoints of their
/// one-step unfolding, reached after two backward sweeps over the loop.
pub fn eval_lasso(f: &Formula, t: &LassoTrace) -> Result<bool, LogicError> {
    f.require_ltl()?;
    Ok(Evaluator { t }.values(f)[0])
}

struct Evaluator<'a> {
    t: &'a LassoTrace,
}

impl Evaluator<'_> {
    fn values(&self, f: &Formula) -> Vec<bool> {
        let n = self.t.len();
        match f {
            Formula::True => vec![true; n],
            Formula::False => vec![false; n],
            Formula::Atom(a) => (0..n).map(|i| self.t.at(i).contains(a)).collect(),
            Formula::Not(a) => self.values(a).into_iter().map(|v| !v).collect(),
            Formula::And(cs) => {
                let mut acc = vec![true; n];
                for c in cs {
                    for (x, v) in acc.iter_mut().zip(self.values(c)) {
                        *x &= v;
                    }
                }
                acc
            }
            Formula::Or(cs) => {
                let mut acc = vec![false; n];
                for c in cs {
                    for (x, v) in acc.iter_mut().zip(self.values(c)) {
                        *x |= v;
                    }
                }
                acc
            }
            Formula::Implies(a, b) => {
                let (a, b) = (self.values(a), self.values(b));
                a.iter().zip(&b).map(|(x, y)| !x || *y).collect()
            }
            Formula::Iff(a, b) => {
                let (a, b) = (self.values(a), self.values(b));
                a.iter().zip(&b).map(|(x, y)| x == y).collect()
            }
            Formula::Next(a) => {
                let a = self.values(a);
                (0..n).map(|i| a[self.t.succ(i)]).collect()
            }
            Formula::Finally(a) => {
                let a = self.values(a);
                self.fixpoint(false, |i, next| a[i] || next)
            }
            Formula::Globally(a) => {
                let a = self.values(a);
                self.fixpoint(true, |i, next| a[i] && next)
            }
            Formula::Until(a, b) => {
                let (a, b) = (self.values(a), self.values(b));
                self.fixpoint(false, |i, next| b[i] || (a[i] && next))
            }
            Formula::WeakUntil(a, b) => {
                let (a, b) = (self.values(a), self.values(b));
                self.fixpoint(true, |i, next| b[i] || (a[i] && next))
            }
            Formula::Release(a, b) => {
                let (a, b) = (self.values(a), self.values(b));
                self.fixpoint(true, |i, next| b[i] && (a[i] || next))
            }
            Formula::ForAll(_) | Formula::Exists(_) => unreachable!("checked by eval_lasso"),
        }
    }

    /// Solves `v[i] = step(i, v[succ(i)])` starting from `init` everywhere.
    fn fixpoint(&self, init: bool, step: impl Fn(usize, bool) -> bool) -> Vec<bool> {
        let n = self.t.len();
        let mut v = vec![init; n];
        for _ in 0..2 {
            for i in (0..n).rev() {
                v[i] = step(i, v[self.t.succ(i)]);
            }
        }
        v
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn visit_trace_from_table() {
        let f = Formula::and([Formula::finally(a("l1")), Formula::finally(a("l2")), Formula::finally(a("l3"))]);
        let t = LassoTrace::singletons(&["l1", "l4", "l3", "l1", "l4", "l2"], &["l4"]).unwrap();
        assert!(eval_lasso(&f, &t).unwrap());
    }

    #[test]
    fn sequenced_visit_violation() {
        let f = Formula::finally(Formula::and([
            a("l1"),
            Formula::finally(Formula::and([a("l2"), Formula::finally(a("l3"))])),
        ]));
        let t = LassoTrace::singletons(&["l1", "l4", "l3", "l1", "l4", "l2"], &["l4"]).unwrap();
        assert!(!eval_lasso(&f, &t).unwrap());
    }

    #[test]
    fn globally_not_on_pure_loop() {
        let f = Formula::globally(Formula::not(a("l1")));
        let t = LassoTrace::singletons(&[], &["l2"]).unwrap();
        assert!(eval_lasso(&f, &t).unwrap());
    }

    #[test]
    fn wait_with_condition_set() {
        let f = Formula::until(a("l1"), a("cond"));
        let t = LassoTrace::from_names(&[&["l1"], &["l1", "cond"], &["l2"]], &[&["l3"]]).unwrap();
        assert!(eval_lasso(&f, &t).unwrap());
    }

    #[test]
    fn until_needs_wraparound_propagation() {
        // b only appears at the loop start; every later loop position must see it
        let f = Formula::globally(Formula::finally(a("b")));
        let t = LassoTrace::singletons(&["x"], &["b", "x", "x", "x"]).unwrap();
        assert!(eval_lasso(&f, &t).unwrap());
        let g = Formula::globally(Formula::until(a("x"), a("b")));
        assert!(eval_lasso(&g, &t).unwrap());
    }

    #[test]
    fn rejects_ctl_input() {
        let t = LassoTrace::singletons(&[], &["l1"]).unwrap();
        assert_eq!(eval_lasso(&Formula::ag(a("l1")), &t), Err(LogicError::NotLtl));
    }

    #[test]
    fn empty_loop_rejected() {
        assert!(LassoTrace::new(vec![], vec![]).is_err());
    }

    #[test]
    fn parse_trace_text() {
        let t = LassoTrace::parse("stem: l1, {l1, cond}, l2; loop: l3").unwrap();
        assert_eq!(t, LassoTrace::from_names(&[&["l1"], &["l1", "cond"], &["l2"]], &[&["l3"]]).unwrap());
        let t = LassoTrace::parse("stem:; loop: l2").unwrap();
        assert_eq!(t, LassoTrace::singletons(&[], &["l2"]).unwrap());
        let t = LassoTrace::parse("stem: l1 -> {} -> l2; loop: {l3,a}").unwrap();
        assert_eq!(t.stem()[1], Letter::new());
        assert_eq!(LassoTrace::parse(&t.to_string()).unwrap(), t);
        assert!(LassoTrace::parse("stem: l1").is_err());
        assert!(LassoTrace::parse("loop: {l1").is_err());
    }

    #[test]
    fn universe_check() {
        let t = LassoTrace::singletons(&["l1"], &["l9"]).unwrap();
        let universe: BTreeSet<Atom> = ["l1", "l2"].into_iter().map(Atom::new).collect();
        assert!(t.check_universe(&universe).is_err());
    }
}
