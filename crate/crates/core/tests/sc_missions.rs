mod common;

use std::collections::BTreeSet;

use missionspec::logic::Logic;
use missionspec::mission::{arena, compile_ctl, compile_ltl, parse_mission, Mission};
use missionspec::model::{emit_smv, find_plan};
use missionspec::patterns::PatternId::{self, *};

pub const SCENARIOS: [(&str, &str); 5] = [
    ("sc1", include_str!("../../../missions/sc1.mission")),
    ("sc2", include_str!("../../../missions/sc2.mission")),
    ("sc3", include_str!("../../../missions/sc3.mission")),
    ("sc4", include_str!("../../../missions/sc4.mission")),
    ("sc5", include_str!("../../../missions/sc5.mission")),
];

fn expected(name: &str) -> BTreeSet<PatternId> {
    let ids: &[PatternId] = match name {
        "sc1" => &[OrderedPatrolling, InstantaneousReaction],
        "sc2" => &[Patrolling, InstantaneousReaction, OrderedVisit, Wait],
        "sc3" => &[StrictOrderedVisit, InstantaneousReaction],
        "sc4" => &[Patrolling, InstantaneousReaction],
        "sc5" => &[Visit, InstantaneousReaction],
        _ => unreachable!(),
    };
    ids.iter().copied().collect()
}

fn load(text: &str) -> Mission {
    parse_mission(text).unwrap()
}

#[test]
fn pattern_sets_match_the_intended_sets() {
    for (name, text) in SCENARIOS {
        assert_eq!(load(text).patterns(), expected(name), "{name}");
    }
}

#[test]
fn scenarios_compile_and_emit() {
    for (name, text) in SCENARIOS {
        let m = load(text);
        let ltl = compile_ltl(&m).unwrap();
        let ctl = compile_ctl(&m).unwrap();
        assert!(ltl.is_ltl() && ctl.check_ctl().is_ok(), "{name}");
        let ts = arena(&m).unwrap();
        let out = emit_smv(&ts, &[(Logic::Ltl, ltl.clone()), (Logic::Ctl, ctl)]).unwrap();
        let module = common::smv::read(&out).unwrap_or_else(|e| panic!("{name}: {e}\n{out}"));
        assert_eq!(module.states.len(), ts.len());
        assert_eq!(module.specs.len(), 2);
        assert!(find_plan(&ts, &ltl).unwrap().is_some(), "{name} is unsatisfiable in its arena");
    }
}

#[test]
fn multi_robot_scenario_is_qualified() {
    let m = load(SCENARIOS[1].1);
    assert_eq!(m.robots().len(), 3);
    let atoms = compile_ltl(&m).unwrap().atoms();
    for a in ["m_storage", "mp_nurse", "mm_unload", "mp_ward1", "mm_ward2", "request"] {
        assert!(atoms.iter().any(|x| x.as_str() == a), "{a} missing from {atoms:?}");
    }
}

#[test]
fn pretty_print_round_trips() {
    for (name, text) in SCENARIOS {
        let m = load(text);
        assert_eq!(parse_mission(&m.to_string()).unwrap(), m, "{name}");
    }
}
