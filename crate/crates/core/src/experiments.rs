//! Batch runs over seeded scenarios and the mission suite.
//!
//! * `exp4`: plan synthesis for each LTL mission; every plan is replayed
//!   through [`eval_lasso`] before it counts as found.
//! * `exp5`: universal LTL check against the CTL check of the embedded
//!   mission; the verdicts are expected to agree.
//! * `exp6`: plan synthesis for the relaxed missions (starred patterns
//!   dropped; unstarred missions are kept whole), next to the full mission.

use std::fmt::{self, Write};
use std::str::FromStr;
use std::time::Instant;

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::buchi::BuchiAutomaton;
use crate::logic::{eval_lasso, Formula, LogicError};
use crate::mission::{compile_ctl, compile_ltl, MissionError};
use crate::model::{check_ctl, find_plan_with, ModelError, PlanRecord, TransitionSystem};
use crate::worldgen::{mission_suite, scenario_suite, Movement, SuiteMission, WorldConfig, WorldError, WrapRule};

#[derive(Debug, Error)]
pub enum ExpError {
    #[error("unknown experiment mode `{0}` (expected exp4, exp5 or exp6)")]
    UnknownMode(String),
    #[error(transparent)]
    World(#[from] WorldError),
    #[error(transparent)]
    Model(#[from] ModelError),
    #[error(transparent)]
    Mission(#[from] MissionError),
    #[error(transparent)]
    Logic(#[from] LogicError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum ExpMode {
    Exp4,
    Exp5,
    Exp6,
}

impl FromStr for ExpMode {
    type Err = ExpError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "exp4" => Ok(ExpMode::Exp4),
            "exp5" => Ok(ExpMode::Exp5),
            "exp6" => Ok(ExpMode::Exp6),
            _ => Err(ExpError::UnknownMode(s.to_string())),
        }
    }
}

impl fmt::Display for ExpMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ExpMode::Exp4 => "exp4",
            ExpMode::Exp5 => "exp5",
            ExpMode::Exp6 => "exp6",
        })
    }
}

#[derive(Debug, Clone, Copy, Serialize)]
pub struct ExpConfig {
    pub seed: u64,
    pub world: WorldConfig,
    pub wrap: WrapRule,
    /// Scenarios per movement variant.
    pub per_movement: usize,
    /// Record wall-clock times; off by default so reports are reproducible.
    pub timings: bool,
}

impl ExpConfig {
    pub fn new(seed: u64) -> Self {
        ExpConfig { seed, world: WorldConfig::STANDARD, wrap: WrapRule::Corner, per_movement: 6, timings: false }
    }
}

/// One (scenario, mission) task.
#[derive(Debug, Clone, Serialize)]
pub struct TaskRecord {
    pub scenario: usize,
    pub scenario_seed: u64,
    pub movement: Movement,
    pub mission_index: usize,
    pub mission: String,
    /// ⊤/⊥ of the mode: plan found (exp4, exp6) or LTL holds on all paths
    /// (exp5).
    pub verdict: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan: Option<PlanRecord>,
    /// Whether the plan's trace satisfies the mission under lasso semantics.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub plan_valid: Option<bool>,
    /// exp5: CTL verdict of the embedded mission.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub ctl_verdict: Option<bool>,
    /// exp6: plan found for the full mission.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub full_verdict: Option<bool>,
    /// exp6: relaxed mission holds on all paths.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub relaxed_universal: Option<bool>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<u128>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SummaryRow {
    pub mission: String,
    pub top: usize,
    pub bottom: usize,
    /// exp5: tasks whose LTL and CTL verdicts agree.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub agree: Option<usize>,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub mode: ExpMode,
    pub config: ExpConfig,
    pub scenario_seeds: Vec<u64>,
    pub records: Vec<TaskRecord>,
    pub summary: Vec<SummaryRow>,
}

/// Formulas and automata of one suite mission, built once per run.
struct Prepared {
    name: String,
    /// exp4/exp6 plan target: the full mission, or the relaxed one in exp6.
    target: Formula,
    target_ba: BuchiAutomaton,
    /// exp5/exp6: automaton of the negated target, for universal checks.
    negated_ba: Option<BuchiAutomaton>,
    /// exp5: CTL form of the mission.
    ctl: Option<Formula>,
    /// exp6: automaton of the full mission.
    full_ba: Option<BuchiAutomaton>,
}

fn prepare(mode: ExpMode, m: &SuiteMission) -> Result<Prepared, ExpError> {
    let full = compile_ltl(&m.mission)?;
    let ba = |f: &Formula| BuchiAutomaton::from_ltl(f);
    let target = match (mode, m.relaxed()) {
        (ExpMode::Exp6, Some(r)) => compile_ltl(&r)?,
        _ => full.clone(),
    };
    let negated = Formula::not(target.clone());
    Ok(Prepared {
        name: m.name.clone(),
        target_ba: ba(&target)?,
        negated_ba: (mode != ExpMode::Exp4).then(|| ba(&negated)).transpose()?,
        ctl: (mode == ExpMode::Exp5).then(|| compile_ctl(&m.mission)).transpose()?,
        full_ba: (mode == ExpMode::Exp6).then(|| ba(&full)).transpose()?,
        target,
    })
}

struct Task<'a> {
    scenario: usize,
    seed: u64,
    movement: Movement,
    ts: &'a TransitionSystem,
    mission_index: usize,
    mission: &'a Prepared,
}

fn run_task(mode: ExpMode, t: &Task, timings: bool) -> Result<TaskRecord, ExpError> {
    let start = Instant::now();
    let m = t.mission;
    let mut rec = TaskRecord {
        scenario: t.scenario,
        scenario_seed: t.seed,
        movement: t.movement,
        mission_index: t.mission_index,
        mission: m.name.clone(),
        verdict: false,
        plan: None,
        plan_valid: None,
        ctl_verdict: None,
        full_verdict: None,
        relaxed_universal: None,
        elapsed_ms: None,
    };
    let universal = |b: &Option<BuchiAutomaton>| -> Result<bool, ExpError> {
        Ok(find_plan_with(t.ts, b.as_ref().expect("prepared for this mode"))?.is_none())
    };
    if mode != ExpMode::Exp5 {
        // a plan only counts once its trace is replayed against the formula
        if let Some(plan) = find_plan_with(t.ts, &m.target_ba)? {
            let valid = plan.is_path_of(t.ts) && eval_lasso(&m.target, &plan.trace(t.ts))?;
            (rec.verdict, rec.plan, rec.plan_valid) = (valid, Some(plan.record(t.ts)), Some(valid));
        }
    }
    match mode {
        ExpMode::Exp4 => {}
        ExpMode::Exp5 => {
            rec.verdict = universal(&m.negated_ba)?;
            rec.ctl_verdict = Some(check_ctl(t.ts, m.ctl.as_ref().expect("prepared for exp5"))?.holds);
        }
        ExpMode::Exp6 => {
            let full = m.full_ba.as_ref().expect("prepared for exp6");
            rec.full_verdict = Some(find_plan_with(t.ts, full)?.is_some());
            rec.relaxed_universal = Some(universal(&m.negated_ba)?);
        }
    }
    if timings {
        rec.elapsed_ms = Some(start.elapsed().as_millis());
    }
    Ok(rec)
}

/// Runs `mode` over `2 * per_movement` scenarios and the ten suite missions.
pub fn run_experiment(mode: ExpMode, cfg: &ExpConfig) -> Result<RunReport, ExpError> {
    let scenarios = scenario_suite(cfg.world, cfg.seed, cfg.per_movement, cfg.wrap)?;
    let systems = scenarios.iter().map(|s| s.to_ts()).collect::<Result<Vec<_>, _>>()?;
    let suite = mission_suite();
    let prepared = suite.par_iter().map(|m| prepare(mode, m)).collect::<Result<Vec<_>, _>>()?;
    let mut tasks = Vec::new();
    for (i, s) in scenarios.iter().enumerate() {
        for (j, m) in prepared.iter().enumerate() {
            tasks.push(Task {
                scenario: i,
                seed: s.seed,
                movement: s.movement,
                ts: &systems[i],
                mission_index: j,
                mission: m,
            });
        }
    }
    let mut records = tasks.par_iter().map(|t| run_task(mode, t, cfg.timings)).collect::<Result<Vec<_>, _>>()?;
    records.sort_by_key(|r| (r.scenario, r.mission_index));

    let summary = suite
        .iter()
        .enumerate()
        .map(|(j, m)| {
            let rows: Vec<&TaskRecord> = records.iter().filter(|r| r.mission_index == j).collect();
            let top = rows.iter().filter(|r| r.verdict).count();
            let agree =
                (mode == ExpMode::Exp5).then(|| rows.iter().filter(|r| r.ctl_verdict == Some(r.verdict)).count());
            SummaryRow { mission: m.name.clone(), top, bottom: rows.len() - top, agree }
        })
        .collect();
    Ok(RunReport { mode, config: *cfg, scenario_seeds: scenarios.iter().map(|s| s.seed).collect(), records, summary })
}

impl RunReport {
    /// Text table with one row per mission and ⊤/⊥ counts.
    pub fn table(&self) -> String {
        let mut out = String::new();
        writeln!(
            out,
            "{} seed={} world={}x{} wrap={} scenarios={}",
            self.mode,
            self.config.seed,
            self.config.world.rows,
            self.config.world.cols,
            self.config.wrap,
            self.scenario_seeds.len()
        )
        .unwrap();
        let extra = if self.mode == ExpMode::Exp5 { "  agree" } else { "" };
        writeln!(out, "{:<42} {:>4} {:>4}{extra}", "mission", "T", "F").unwrap();
        for row in &self.summary {
            write!(out, "{:<42} {:>4} {:>4}", row.mission, row.top, row.bottom).unwrap();
            if let Some(a) = row.agree {
                write!(out, "  {a:>5}").unwrap();
            }
            out.push('\n');
        }
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn modes_parse() {
        assert_eq!("exp5".parse::<ExpMode>().unwrap(), ExpMode::Exp5);
        assert!("exp7".parse::<ExpMode>().is_err());
    }

    #[test]
    fn small_exp4_run_is_consistent() {
        let cfg = ExpConfig { per_movement: 1, world: WorldConfig::REDUCED, ..ExpConfig::new(3) };
        let r = run_experiment(ExpMode::Exp4, &cfg).unwrap();
        assert_eq!(r.records.len(), 20);
        for row in &r.summary {
            let n = r.records.iter().filter(|t| t.mission == row.mission && t.verdict).count();
            assert_eq!(row.top, n);
            assert_eq!(row.top + row.bottom, 2);
        }
        assert!(r.records.iter().all(|t| t.plan_valid != Some(false)));
        assert!(r.records.iter().all(|t| t.elapsed_ms.is_none()));
    }
}
