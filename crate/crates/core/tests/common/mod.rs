#![allow(dead_code)]

pub mod brute;
pub mod smv;

use missionspec::logic::LassoTrace;
use missionspec::patterns::{PatternId, PatternParams};

/// One golden example: pattern instance, lasso, expected verdict.
pub struct Golden {
    pub id: PatternId,
    pub params: PatternParams,
    pub trace: LassoTrace,
    pub expected: bool,
}

fn g(id: PatternId, params: PatternParams, trace: &str, expected: bool) -> Golden {
    Golden { id, params, trace: LassoTrace::parse(trace).expect("golden trace parses"), expected }
}

fn l123() -> PatternParams {
    PatternParams::locations(["l1", "l2", "l3"])
}

/// Example traces for the core movement, avoidance and trigger patterns.
/// A wildcard loop location is encoded as `l4`, which every exclusion in
/// these traces permits.
pub fn golden_cases() -> Vec<Golden> {
    use PatternId::*;
    let one = |l: &str| PatternParams::location(l);
    let react = |p: &str, q: &str| PatternParams::reaction(p, q);
    vec![
        g(Visit, l123(), "stem: l1, l4, l3, l1, l4, l2; loop: l4", true),
        g(SequencedVisit, l123(), "stem: l1, l4, l3, l1, l4, l2; loop: l4", false),
        g(SequencedVisit, l123(), "stem: l1, l3, l1, l2, l4, l3; loop: l4", true),
        g(OrderedVisit, l123(), "stem: l1, l3, l1, l2, l3; loop: l4", false),
        g(OrderedVisit, l123(), "stem: l1, l4, l1, l2, l4, l3; loop: l4", true),
        g(StrictOrderedVisit, l123(), "stem: l1, l4, l1, l2, l4, l3; loop: l4", false),
        g(StrictOrderedVisit, l123(), "stem: l1, l4, l2, l4, l3; loop: l4", true),
        g(FairVisit, l123(), "stem: l1, l4, l1, l3, l1, l4, l2; loop: l4", false),
        g(FairVisit, l123(), "stem: l1, l4, l3, l1, l4, l2, l2, l4; loop: l4", true),
        g(Patrolling, l123(), "stem: l1, l4, l3, l1, l4, l2; loop: l2, l3, l1", true),
        g(Patrolling, l123(), "stem: l1, l2, l3; loop: l1, l3", false),
        g(SequencedPatrolling, l123(), "stem: l1, l4, l3, l1, l4, l2; loop: l1, l2, l3", true),
        g(SequencedPatrolling, l123(), "stem: l1, l4, l3, l1, l4, l2; loop: l1, l3", false),
        g(OrderedPatrolling, l123(), "stem: l1, l4, l3, l1, l4, l2; loop: l1, l2, l3", false),
        g(OrderedPatrolling, l123(), "stem: l1, l1, l2, l4, l4, l3; loop: l1, l2, l3", true),
        g(StrictOrderedPatrolling, l123(), "stem: l1, l4, l1, l2, l4, l3; loop: l1, l2, l3", false),
        g(StrictOrderedPatrolling, l123(), "stem: l1, l4, l2, l4, l3; loop: l1, l2, l3", true),
        g(FairPatrolling, l123(), "stem: l1, l4, l3, l1, l4, l2; loop: l1, l2, l1, l3", false),
        g(FairPatrolling, l123(), "stem: l1, l4, l3, l4, l2, l4; loop: l1, l2, l3", true),
        // avoid l2 until l1 has been entered
        g(PastAvoidance, one("l2").with_trigger("l1"), "stem: l3, l4, l1, l2, l4, l3; loop: l2, l3", true),
        g(GlobalAvoidance, one("l1"), "stem: l3, l4, l3, l2, l4, l3; loop: l3, l2, l3", true),
        // once l1 is entered, avoid l2
        g(FutureAvoidance, one("l2").with_trigger("l1"), "stem: l3, l4, l3, l1, l4, l3; loop: l3, l2, l3", false),
        g(UpperRestrictedAvoidance, one("l1").with_count(3), "stem: l1, l4, l1, l3, l1, l4, l1; loop: l3", false),
        g(UpperRestrictedAvoidance, one("l1").with_count(3), "stem: l4, l3, l1, l2, l4; loop: l3", true),
        g(LowerRestrictedAvoidance, one("l1").with_count(3), "stem: l4, l3, l2, l2, l4; loop: l3", false),
        g(LowerRestrictedAvoidance, one("l1").with_count(3), "stem: l1, l4, l3, l1, l4, l1; loop: l3", true),
        g(ExactRestrictedAvoidance, one("l1").with_count(3), "stem: l4, l3, l2, l2, l4; loop: l3", false),
        g(ExactRestrictedAvoidance, one("l1").with_count(3), "stem: l1, l4, l3, l1, l4, l1; loop: l3", true),
        g(InstantaneousReaction, react("l2", "a"), "stem: l1, l3, {l2, a}, {l2, a}, l4; loop: l3", true),
        g(InstantaneousReaction, react("l2", "a"), "stem: l1, l3, l2, {l1, a}, l4; loop: l3", false),
        g(DelayedReaction, react("c", "l1"), "stem: l1, l3, {l2, c}, l1, l4; loop: l3", true),
        g(DelayedReaction, react("c", "l1"), "stem: l1, l1, {l2, c}, l3; loop: l3", false),
        g(PromptReaction, react("c", "l1"), "stem: l1, l3, {l2, c}, l1, l4; loop: l3", true),
        g(PromptReaction, react("c", "l1"), "stem: l1, l3, {l2, c}, l4, l1; loop: l3", false),
        g(BoundReaction, react("l1", "a1"), "stem: l1, l3, {l2, c}, {l1, a1}, l4, {l1, a1}; loop: l3", true),
        g(BoundReaction, react("l1", "a1"), "stem: l1, l3, {l2, c}, {l1, a1}, {l4, a1}, {l1, a1}; loop: l3", false),
        // the bound action is a1
        g(BoundDelay, react("l1", "a1"), "stem: l1, l3, {l2, c}, l1, {l4, a1}, l1, {l4, a1}; loop: l3", true),
        g(BoundDelay, react("l1", "a1"), "stem: l1, l3, {l2, c}, l1, {l4, a1}, {l1, a1}, l4; loop: l3", false),
        g(Wait, one("l1").with_trigger("c"), "stem: l1, l3, {l2, c}, l1, l4; loop: l3", false),
        g(Wait, one("l1").with_trigger("c"), "stem: l1, {l1, c}, l2, l1, l4; loop: l3", true),
    ]
}

pub mod strategies {
    use missionspec::logic::{Atom, Formula, LassoTrace, Letter};
    use missionspec::model::TransitionSystem;
    use missionspec::patterns::{instantiate_ltl, PatternId, PatternParams, Shape};
    use proptest::prelude::*;

    pub const UNIVERSE: [&str; 5] = ["l1", "l2", "l3", "c", "a"];

    pub fn params_for(id: PatternId, n: usize, k: u32) -> PatternParams {
        let locs = ["l1", "l2", "l3"];
        match id.shape() {
            Shape::Locations => PatternParams::locations(locs[..n.clamp(1, 3)].iter().copied()),
            Shape::Location => PatternParams::location("l1"),
            Shape::LocationTrigger => PatternParams::location("l1").with_trigger("c"),
            Shape::LocationCount => PatternParams::location("l1").with_count(k),
            Shape::TriggerReaction => PatternParams::reaction("c", "a"),
        }
    }

    pub fn arb_pattern() -> impl Strategy<Value = (PatternId, PatternParams)> {
        (0..22usize, 1..=3usize, 0..=3u32).prop_map(|(i, n, k)| {
            let id = PatternId::ALL[i];
            (id, params_for(id, n, k))
        })
    }

    pub fn arb_pattern_formula() -> impl Strategy<Value = Formula> {
        arb_pattern().prop_map(|(id, p)| instantiate_ltl(id, &p).unwrap())
    }

    pub fn arb_atom() -> impl Strategy<Value = Formula> {
        prop::sample::select(&UNIVERSE[..]).prop_map(Formula::atom)
    }

    pub fn arb_ltl() -> impl Strategy<Value = Formula> {
        let leaf = prop_oneof![4 => arb_atom(), 1 => Just(Formula::True), 1 => Just(Formula::False)];
        leaf.prop_recursive(4, 24, 2, |inner| {
            prop_oneof![
                inner.clone().prop_map(Formula::not),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::and([a, b])),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::or([a, b])),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::implies(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::iff(a, b)),
                inner.clone().prop_map(Formula::next),
                inner.clone().prop_map(Formula::finally),
                inner.clone().prop_map(Formula::globally),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::until(a, b)),
                (inner.clone(), inner.clone()).prop_map(|(a, b)| Formula::weak_until(a, b)),
                (inner.clone(), inner).prop_map(|(a, b)| Formula::release(a, b)),
            ]
        })
    }

    /// Pattern instances, optionally combined with each other or with
    /// random formulas.
    pub fn arb_mixed() -> impl Strategy<Value = Formula> {
        prop_oneof![
            3 => arb_pattern_formula(),
            1 => (arb_pattern_formula(), arb_pattern_formula()).prop_map(|(a, b)| Formula::and([a, b])),
            1 => (arb_pattern_formula(), arb_ltl()).prop_map(|(a, b)| Formula::or([a, b])),
            1 => arb_pattern_formula().prop_map(Formula::not),
            2 => arb_ltl(),
        ]
    }

    pub fn arb_letter() -> impl Strategy<Value = Letter> {
        prop_oneof![
            3 => prop::sample::select(&UNIVERSE[..3]).prop_map(|l| Letter::from([Atom::new(l)])),
            2 => prop::sample::subsequence(&UNIVERSE[..], 0..=3)
                .prop_map(|v| v.into_iter().map(Atom::new).collect::<Letter>()),
        ]
    }

    pub fn arb_lasso_sized(max: usize) -> impl Strategy<Value = LassoTrace> {
        (prop::collection::vec(arb_letter(), 0..=max), prop::collection::vec(arb_letter(), 1..=max))
            .prop_map(|(s, c)| LassoTrace::new(s, c).unwrap())
    }

    pub fn arb_lasso() -> impl Strategy<Value = LassoTrace> {
        arb_lasso_sized(8)
    }

    fn build(labels: Vec<Letter>, succ: Vec<Vec<usize>>) -> TransitionSystem {
        let names = (0..labels.len()).map(|i| format!("s{i}")).collect();
        let edges: Vec<(usize, usize)> =
            succ.iter().enumerate().flat_map(|(s, ts)| ts.iter().map(move |&t| (s, t))).collect();
        let universe = UNIVERSE.iter().map(|&a| Atom::new(a)).collect();
        TransitionSystem::new(names, labels, &edges, vec![0], universe).unwrap()
    }

    /// Systems of up to `max` states over [`UNIVERSE`], initial state 0,
    /// one or two successors per state.
    pub fn arb_system(max: usize) -> impl Strategy<Value = TransitionSystem> {
        (1..=max).prop_flat_map(|n| {
            (prop::collection::vec(arb_letter(), n), prop::collection::vec(prop::collection::vec(0..n, 1..=2), n))
                .prop_map(|(labels, succ)| build(labels, succ))
        })
    }

    /// Systems in which every state has exactly one successor.
    pub fn arb_deterministic_system(max: usize) -> impl Strategy<Value = TransitionSystem> {
        (1..=max).prop_flat_map(|n| {
            (prop::collection::vec(arb_letter(), n), prop::collection::vec(0..n, n))
                .prop_map(|(labels, succ)| build(labels, succ.into_iter().map(|t| vec![t]).collect()))
        })
    }
}
