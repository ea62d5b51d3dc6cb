use super::{ACT, COND};
use crate::mission::{Mission, MissionTree};
use crate::patterns::{PatternId, PatternParams};

/// One mission of the batch suite; `starred` lists the patterns dropped by
/// its relaxation.
#[derive(Debug, Clone)]
pub struct SuiteMission {
    pub name: String,
    pub mission: Mission,
    pub starred: Vec<PatternId>,
}

impl SuiteMission {
    /// The mission without its starred patterns, or `None` when nothing is
    /// starred.
    pub fn relaxed(&self) -> Option<Mission> {
        if self.starred.is_empty() {
            return None;
        }
        self.mission.tree.without(&self.starred).map(Mission::new)
    }
}

fn params(id: PatternId) -> PatternParams {
    use crate::patterns::Shape;
    match id.shape() {
        Shape::Locations => PatternParams::locations(["l1", "l2"]),
        Shape::Location => PatternParams::location("l3"),
        Shape::LocationCount => PatternParams::location("l3").with_count(2),
        Shape::LocationTrigger if id == PatternId::Wait => PatternParams::location("l4").with_trigger(COND),
        Shape::LocationTrigger => PatternParams::location("l3").with_trigger(COND),
        Shape::TriggerReaction => PatternParams::reaction(COND, ACT),
    }
}

/// The ten core-movement + avoidance + trigger conjunctions. Core movement
/// runs over `l1, l2`; avoidance is about `l3` (two visits for the
/// restricted forms, relative to `cond` for the conditional ones); Wait
/// holds the robot in `l4` until `cond`; the other triggers bind `act`
/// to `cond`.
pub fn mission_suite() -> Vec<SuiteMission> {
    use PatternId::*;
    let rows: [([PatternId; 3], &[PatternId]); 10] = [
        ([OrderedPatrolling, UpperRestrictedAvoidance, Wait], &[]),
        ([FairVisit, ExactRestrictedAvoidance, DelayedReaction], &[ExactRestrictedAvoidance]),
        ([StrictOrderedVisit, GlobalAvoidance, InstantaneousReaction], &[]),
        ([SequencedVisit, FutureAvoidance, BoundDelay], &[BoundDelay]),
        ([OrderedVisit, PastAvoidance, InstantaneousReaction], &[]),
        ([Visit, LowerRestrictedAvoidance, BoundReaction], &[]),
        ([StrictOrderedPatrolling, FutureAvoidance, Wait], &[]),
        ([Patrolling, LowerRestrictedAvoidance, InstantaneousReaction], &[]),
        ([FairPatrolling, ExactRestrictedAvoidance, DelayedReaction], &[ExactRestrictedAvoidance]),
        ([SequencedPatrolling, UpperRestrictedAvoidance, PromptReaction], &[PromptReaction]),
    ];
    rows.into_iter()
        .map(|(ids, starred)| {
            let name = ids
                .iter()
                .map(|&id| format!("{}{}", id.short_name(), if starred.contains(&id) { "*" } else { "" }))
                .collect::<Vec<_>>()
                .join(",");
            let tree = MissionTree::And(ids.iter().map(|&id| MissionTree::leaf(id, params(id))).collect());
            SuiteMission { name, mission: Mission::new(tree), starred: starred.to_vec() }
        })
        .collect()
}
