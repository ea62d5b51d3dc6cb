use crate::logic::{Atom, Formula};

use super::{PatternError, PatternId, PatternParams, Variant};

fn at(a: &Atom) -> Formula {
    Formula::Atom(a.clone())
}

fn not(a: &Atom) -> Formula {
    Formula::not(at(a))
}

/// 0-based index of the location that follows `i` in a cyclic order.
fn succ(i: usize, n: usize) -> usize {
    (i + 1) % n
}

/// `F(l1 & F(l2 & ... F(ln)))`
fn chain(ls: &[Atom]) -> Formula {
    let (last, init) = ls.split_last().expect("non-empty");
    init.iter().rev().fold(Formula::finally(at(last)), |acc, l| Formula::finally(Formula::and([at(l), acc])))
}

/// `(!l2 U l1) & (!l3 U l2) & ...`
fn precedence(ls: &[Atom]) -> Vec<Formula> {
    ls.windows(2).map(|w| Formula::until(not(&w[1]), at(&w[0]))).collect()
}

/// `G(l -> X(!l W m))` for every location and its cyclic successor.
fn fair_wrap(ls: &[Atom]) -> Vec<Formula> {
    let n = ls.len();
    (0..n)
        .map(|i| {
            let (l, m) = (&ls[i], &ls[succ(i, n)]);
            Formula::globally(Formula::implies(at(l), Formula::next(Formula::weak_until(not(l), at(m)))))
        })
        .collect()
}

/// `G(trig(l) -> X(!l U m))`
fn strict_step(l: &Atom, m: &Atom, variant: Variant) -> Formula {
    let trigger = match variant {
        Variant::Default => at(l),
        Variant::ConsecutiveAllowed => Formula::and([at(l), Formula::next(not(l))]),
    };
    Formula::globally(Formula::implies(trigger, Formula::next(Formula::until(not(l), at(m)))))
}

fn ordered_patrol(ls: &[Atom], variant: Variant) -> Vec<Formula> {
    let n = ls.len();
    let mut out = vec![Formula::globally(chain(ls))];
    out.extend(precedence(ls));
    // a location is not re-entered before its predecessor has been seen again
    out.extend((0..n).map(|i| strict_step(&ls[succ(i, n)], &ls[i], variant)));
    out
}

/// `m` nested occurrences: `F(l & X(F(l & ... X(F l))))`.
fn occurrences(l: &Atom, m: u32) -> Formula {
    assert!(m >= 1);
    let mut f = Formula::finally(at(l));
    for _ in 1..m {
        f = Formula::finally(Formula::and([at(l), Formula::next(f)]));
    }
    f
}

fn exactly(l: &Atom, m: u32) -> Formula {
    let mut f = Formula::globally(not(l));
    for _ in 0..m {
        f = Formula::until(not(l), Formula::and([at(l), Formula::next(f)]));
    }
    f
}

/// Instantiates the LTL template of `id` with `params`.
pub fn instantiate_ltl(id: PatternId, params: &PatternParams) -> Result<Formula, PatternError> {
    use PatternId::*;
    params.validate(id)?;
    let ls = &params.locations;
    let n = ls.len();
    let trig = params.trigger.as_ref();
    let f = match id {
        Visit => Formula::and(ls.iter().map(|l| Formula::finally(at(l)))),
        SequencedVisit => chain(ls),
        OrderedVisit => Formula::and(std::iter::once(chain(ls)).chain(precedence(ls))),
        StrictOrderedVisit => {
            let mut cs = vec![chain(ls)];
            cs.extend(precedence(ls));
            cs.extend(ls.windows(2).map(|w| {
                Formula::until(
                    not(&w[0]),
                    Formula::and([at(&w[0]), Formula::next(Formula::until(not(&w[0]), at(&w[1])))]),
                )
            }));
            Formula::and(cs)
        }
        FairVisit => Formula::and(ls.iter().map(|l| Formula::finally(at(l))).chain(fair_wrap(ls))),
        Patrolling => Formula::and(ls.iter().map(|l| Formula::globally(Formula::finally(at(l))))),
        SequencedPatrolling => Formula::globally(chain(ls)),
        OrderedPatrolling => Formula::and(ordered_patrol(ls, Variant::Default)),
        StrictOrderedPatrolling => {
            let mut cs = ordered_patrol(ls, params.variant);
            cs.extend((0..n.saturating_sub(1)).map(|i| strict_step(&ls[i], &ls[succ(i, n)], params.variant)));
            Formula::and(cs)
        }
        FairPatrolling => {
            Formula::and(ls.iter().map(|l| Formula::globally(Formula::finally(at(l)))).chain(fair_wrap(ls)))
        }
        PastAvoidance => Formula::until(not(&ls[0]), at(trig.unwrap())),
        GlobalAvoidance => Formula::globally(not(&ls[0])),
        FutureAvoidance => Formula::globally(Formula::implies(at(trig.unwrap()), Formula::globally(not(&ls[0])))),
        UpperRestrictedAvoidance => Formula::not(occurrences(&ls[0], params.count.unwrap() + 1)),
        LowerRestrictedAvoidance => match params.count.unwrap() {
            0 => Formula::True,
            k => occurrences(&ls[0], k),
        },
        ExactRestrictedAvoidance => exactly(&ls[0], params.count.unwrap()),
        InstantaneousReaction | DelayedReaction | PromptReaction | BoundReaction | BoundDelay => {
            let p1 = at(trig.unwrap());
            let p2 = at(params.reaction.as_ref().unwrap());
            Formula::globally(match id {
                InstantaneousReaction => Formula::implies(p1, p2),
                DelayedReaction => Formula::implies(p1, Formula::finally(p2)),
                PromptReaction => Formula::implies(p1, Formula::next(p2)),
                BoundReaction => Formula::iff(p1, p2),
                _ => Formula::iff(p1, Formula::next(p2)),
            })
        }
        Wait => Formula::until(at(&ls[0]), at(trig.unwrap())),
    };
    Ok(f)
}

/// CTL counterpart of an LTL formula: every temporal operator is placed
/// under a universal path quantifier, `a W b` becoming `A[a U b] | AG a`.
pub fn forall_embed(f: &Formula) -> Formula {
    match f {
        Formula::Next(a) => Formula::ax(forall_embed(a)),
        Formula::Finally(a) => Formula::af(forall_embed(a)),
        Formula::Globally(a) => Formula::ag(forall_embed(a)),
        Formula::Until(a, b) => Formula::au(forall_embed(a), forall_embed(b)),
        Formula::WeakUntil(a, b) => {
            let (a, b) = (forall_embed(a), forall_embed(b));
            Formula::or([Formula::au(a.clone(), b), Formula::ag(a)])
        }
        Formula::Release(a, b) => {
            // a R b = b W (a & b)
            let (a, b) = (forall_embed(a), forall_embed(b));
            let ab = Formula::and([a, b.clone()]);
            Formula::or([Formula::au(b.clone(), ab), Formula::ag(b)])
        }
        Formula::ForAll(_) | Formula::Exists(_) => f.clone(),
        other => other.map_children(forall_embed),
    }
}

/// Instantiates the CTL template of `id`: the LTL template under the
/// universal embedding.
pub fn instantiate_ctl(id: PatternId, params: &PatternParams) -> Result<Formula, PatternError> {
    instantiate_ltl(id, params).map(|f| forall_embed(&f))
}
