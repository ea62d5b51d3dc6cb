use super::{Formula, LogicError};

use Formula::*;

/// Rewrites F, G, W, R, -> and <-> into the X/U core (plus !, &, |, true and
/// false):
///
/// * `F p  = true U p`
/// * `G p  = !(true U !p)`
/// * `p W q = (p U q) | G p`
/// * `p R q = !(!p U !q)`
pub fn expand_derived(f: &Formula) -> Result<Formula, LogicError> {
    f.require_ltl()?;
    Ok(expand(f))
}

fn expand(f: &Formula) -> Formula {
    match f {
        True | False | Atom(_) => f.clone(),
        Not(a) => Formula::not(expand(a)),
        And(cs) => Formula::and(cs.iter().map(expand)),
        Or(cs) => Formula::or(cs.iter().map(expand)),
        Next(a) => Formula::next(expand(a)),
        Until(a, b) => Formula::until(expand(a), expand(b)),
        Finally(a) => Formula::until(True, expand(a)),
        Globally(a) => expand_globally(expand(a)),
        WeakUntil(a, b) => {
            let a = expand(a);
            Formula::or([Formula::until(a.clone(), expand(b)), expand_globally(a)])
        }
        Release(a, b) => Formula::not(Formula::until(Formula::not(expand(a)), Formula::not(expand(b)))),
        Implies(a, b) => Formula::or([Formula::not(expand(a)), expand(b)]),
        Iff(a, b) => {
            let (a, b) = (expand(a), expand(b));
            Formula::or([Formula::and([a.clone(), b.clone()]), Formula::and([Formula::not(a), Formula::not(b)])])
        }
        ForAll(_) | Exists(_) => unreachable!("path quantifiers rejected by expand_derived"),
    }
}

fn expand_globally(a: Formula) -> Formula {
    Formula::not(Formula::until(True, Formula::not(a)))
}

/// Negation normal form over `!atom`, `&`, `|`, `X`, `U` and `R`.
///
/// Accepts every LTL operator; F, G, W, -> and <-> are rewritten on the way.
pub fn nnf(f: &Formula) -> Result<Formula, LogicError> {
    f.require_ltl()?;
    Ok(push(f, false))
}

fn push(f: &Formula, neg: bool) -> Formula {
    match (f, neg) {
        (True, false) | (False, true) => True,
        (True, true) | (False, false) => False,
        (Atom(_), false) => f.clone(),
        (Atom(_), true) => Formula::not(f.clone()),
        (Not(a), _) => push(a, !neg),
        (And(cs), false) => Formula::and(cs.iter().map(|c| push(c, false))),
        (And(cs), true) => Formula::or(cs.iter().map(|c| push(c, true))),
        (Or(cs), false) => Formula::or(cs.iter().map(|c| push(c, false))),
        (Or(cs), true) => Formula::and(cs.iter().map(|c| push(c, true))),
        (Implies(a, b), false) => Formula::or([push(a, true), push(b, false)]),
        (Implies(a, b), true) => Formula::and([push(a, false), push(b, true)]),
        (Iff(a, b), false) => {
            Formula::or([Formula::and([push(a, false), push(b, false)]), Formula::and([push(a, true), push(b, true)])])
        }
        (Iff(a, b), true) => {
            Formula::or([Formula::and([push(a, false), push(b, true)]), Formula::and([push(a, true), push(b, false)])])
        }
        (Next(a), _) => Formula::next(push(a, neg)),
        (Until(a, b), false) => Formula::until(push(a, false), push(b, false)),
        (Until(a, b), true) => Formula::release(push(a, true), push(b, true)),
        (Release(a, b), false) => Formula::release(push(a, false), push(b, false)),
        (Release(a, b), true) => Formula::until(push(a, true), push(b, true)),
        (Finally(a), false) => Formula::until(True, push(a, false)),
        (Finally(a), true) => Formula::release(False, push(a, true)),
        (Globally(a), false) => Formula::release(False, push(a, false)),
        (Globally(a), true) => Formula::until(True, push(a, true)),
        // a W b = b R (a | b)
        (WeakUntil(a, b), false) => Formula::release(push(b, false), Formula::or([push(a, false), push(b, false)])),
        (WeakUntil(a, b), true) => Formula::until(push(b, true), Formula::and([push(a, true), push(b, true)])),
        (ForAll(_) | Exists(_), _) => unreachable!("path quantifiers rejected by nnf"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn a(n: &str) -> Formula {
        Formula::atom(n)
    }

    #[test]
    fn finally_expands_to_true_until() {
        let f = expand_derived(&Formula::finally(a("l1"))).unwrap();
        assert_eq!(f, Formula::until(True, a("l1")));
    }

    #[test]
    fn weak_until_expansion() {
        let f = expand_derived(&Formula::weak_until(a("l1"), a("l2"))).unwrap();
        let expected =
            Formula::or([Formula::until(a("l1"), a("l2")), Formula::not(Formula::until(True, Formula::not(a("l1"))))]);
        assert_eq!(f, expected);
    }

    #[test]
    fn globally_implication_expansion() {
        let f = Formula::globally(Formula::implies(a("p1"), a("p2")));
        let expected = Formula::not(Formula::until(True, Formula::not(Formula::or([Formula::not(a("p1")), a("p2")]))));
        assert_eq!(expand_derived(&f).unwrap(), expected);
    }

    #[test]
    fn nnf_dualizes_until() {
        let f = Formula::not(Formula::until(a("l1"), a("l2")));
        assert_eq!(nnf(&f).unwrap(), Formula::release(Formula::not(a("l1")), Formula::not(a("l2"))));
    }

    #[test]
    fn nnf_double_negation_and_next() {
        assert_eq!(nnf(&Formula::not(Formula::not(a("l1")))).unwrap(), a("l1"));
        assert_eq!(nnf(&Formula::not(Formula::next(a("l1")))).unwrap(), Formula::next(Formula::not(a("l1"))));
    }

    #[test]
    fn rejects_ctl() {
        assert_eq!(expand_derived(&Formula::af(a("p"))), Err(LogicError::NotLtl));
        assert_eq!(nnf(&Formula::ag(a("p"))), Err(LogicError::NotLtl));
    }
}
