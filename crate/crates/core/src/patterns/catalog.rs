use std::sync::OnceLock;

use serde::Serialize;

use super::{instantiate_ctl, instantiate_ltl, Category, PatternId, PatternParams, Shape};
use crate::logic::{emit, Formula, Syntax};

/// Placeholder symbols appearing in the pattern templates.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum TemplateSymbol {
    /// Number of locations.
    N,
    /// The location list `l_1 .. l_n`.
    Li,
    /// Trigger proposition of past avoidance and wait.
    P,
    /// Stimulus of a reaction.
    P1,
    /// Counteraction of a reaction.
    P2,
    /// Condition of future avoidance.
    C,
    /// Occurrence bound.
    K,
}

impl TemplateSymbol {
    /// The [`PatternParams`] field that houses the symbol.
    pub fn field(self) -> &'static str {
        match self {
            TemplateSymbol::N | TemplateSymbol::Li => "locations",
            TemplateSymbol::P | TemplateSymbol::P1 | TemplateSymbol::C => "trigger",
            TemplateSymbol::P2 => "reaction",
            TemplateSymbol::K => "count",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CatalogEntry {
    pub id: PatternId,
    pub intent: &'static str,
    pub variations: &'static str,
    pub known_uses: &'static str,
    pub relations: Vec<PatternId>,
    /// LTL template with placeholders.
    pub template: &'static str,
    pub symbols: Vec<TemplateSymbol>,
}

impl CatalogEntry {
    pub fn category(&self) -> Category {
        self.id.category()
    }

    /// CTL form of the template with placeholders; `AU`/`AW` denote the
    /// universal until and weak until.
    pub fn ctl_template(&self) -> String {
        ctl_placeholder(self.template)
    }
}

/// Rewrites a placeholder LTL template into its universal CTL shape.
fn ctl_placeholder(t: &str) -> String {
    let mut out = String::with_capacity(t.len() + 16);
    let chars: Vec<char> = t.chars().collect();
    let mut i = 0;
    while i < chars.len() {
        let c = chars[i];
        let prev_ident = i > 0 && (chars[i - 1].is_alphanumeric() || chars[i - 1] == '_');
        let next_ident = chars.get(i + 1).is_some_and(|n| n.is_alphanumeric() || *n == '_');
        if !prev_ident && !next_ident && matches!(c, 'F' | 'G' | 'X') {
            out.push('A');
        }
        out.push(c);
        i += 1;
    }
    out.replace(" U ", " AU ").replace(" W ", " AW ")
}

fn entry(
    id: PatternId,
    intent: &'static str,
    template: &'static str,
    symbols: &[TemplateSymbol],
    relations: &[PatternId],
    variations: &'static str,
    known_uses: &'static str,
) -> CatalogEntry {
    CatalogEntry {
        id,
        intent,
        variations,
        known_uses,
        relations: relations.to_vec(),
        template,
        symbols: symbols.to_vec(),
    }
}

fn build() -> Vec<CatalogEntry> {
    use PatternId::*;
    use TemplateSymbol::*;
    vec![
        entry(
            Visit,
            "Reach every location of a set, in any order.",
            "AND_{i=1..n} F (l_i)",
            &[N, Li],
            &[SequencedVisit, Patrolling],
            "Order constraints are added by the specialised visit patterns.",
            "Inspection and delivery tasks where a robot must pass by several rooms.",
        ),
        entry(
            SequencedVisit,
            "Reach the locations of a set one after the other, other locations may be visited in between.",
            "F (l_1 & F (l_2 & ... F (l_n)))",
            &[N, Li],
            &[Visit, OrderedVisit],
            "Precedence between locations is not enforced; see Ordered Visit.",
            "Pick-up then drop-off missions.",
        ),
        entry(
            OrderedVisit,
            "Reach the locations in sequence, never reaching a later one before its predecessor.",
            "F (l_1 & F (l_2 & ... F (l_n))) & AND_{i=1..n-1} (!l_{i+1}) U l_i",
            &[N, Li],
            &[SequencedVisit, StrictOrderedVisit],
            "Repeated visits of earlier locations remain allowed.",
            "Ordered waypoint lists for service robots.",
        ),
        entry(
            StrictOrderedVisit,
            "Reach the locations in sequence, visiting each one exactly once before moving on to the next.",
            "F (l_1 & F (l_2 & ... F (l_n))) & AND_{i=1..n-1} (!l_{i+1}) U l_i \
             & AND_{i=1..n-1} (!l_i) U (l_i & X ((!l_i) U l_{i+1}))",
            &[N, Li],
            &[OrderedVisit],
            "Drop the last group of conjuncts to allow revisits, giving Ordered Visit.",
            "Assembly lines where stations must not be re-entered.",
        ),
        entry(
            FairVisit,
            "Reach every location of a set, with no location visited again before all the others.",
            "AND_{i=1..n} F (l_i) & AND_{i=1..n} G (l_i -> X ((!l_i) W l_{(i+1)%n}))",
            &[N, Li],
            &[Visit],
            "Use Fair Patrolling when the visits must repeat forever.",
            "Balanced coverage of charging or storage areas.",
        ),
        entry(
            Patrolling,
            "Keep reaching every location of a set infinitely often, in any order.",
            "AND_{i=1..n} G F (l_i)",
            &[N, Li],
            &[Visit, SequencedPatrolling],
            "Order constraints are added by the specialised patrolling patterns.",
            "Surveillance rounds by security robots.",
        ),
        entry(
            SequencedPatrolling,
            "Keep cycling through the locations in the given sequence, other locations are allowed in between.",
            "G (F (l_1 & F (l_2 & ... F (l_n))))",
            &[N, Li],
            &[Patrolling, OrderedPatrolling],
            "Precedence is not enforced; see Ordered Patrolling.",
            "Recurring pick-up and drop-off cycles.",
        ),
        entry(
            OrderedPatrolling,
            "Keep cycling through the locations in order, never reaching a later one before its predecessor.",
            "G (F (l_1 & F (l_2 & ... F (l_n)))) & AND_{i=1..n-1} (!l_{i+1}) U l_i \
             & AND_{i=1..n} G (l_{(i+1)%n} -> X ((!l_{(i+1)%n}) U l_i))",
            &[N, Li],
            &[SequencedPatrolling, StrictOrderedPatrolling],
            "Earlier locations may be revisited inside one round.",
            "Patrol routes of warehouse robots.",
        ),
        entry(
            StrictOrderedPatrolling,
            "Keep cycling through the locations in order, each one exactly once per round.",
            "G (F (l_1 & F (l_2 & ... F (l_n)))) & AND_{i=1..n-1} (!l_{i+1}) U l_i \
             & AND_{i=1..n} G (l_{(i+1)%n} -> X ((!l_{(i+1)%n}) U l_i)) \
             & AND_{i=1..n-1} G (l_i -> X ((!l_i) U l_{(i+1)%n}))",
            &[N, Li],
            &[OrderedPatrolling],
            "consecutive-allowed: every trigger l becomes (l & X !l), so staying in a location for \
             several steps counts as a single visit.",
            "Cleaning rounds that must not double back.",
        ),
        entry(
            FairPatrolling,
            "Keep reaching every location infinitely often, with no location visited again before all the others.",
            "AND_{i=1..n} G F (l_i) & AND_{i=1..n} G (l_i -> X ((!l_i) W l_{(i+1)%n}))",
            &[N, Li],
            &[Patrolling, FairVisit],
            "Use Fair Visit when a single round is enough.",
            "Even distribution of monitoring effort.",
        ),
        entry(
            PastAvoidance,
            "Keep away from a location until a trigger has occurred.",
            "(!l) U (p)",
            &[Li, P],
            &[FutureAvoidance, GlobalAvoidance],
            "The trigger is required to occur eventually.",
            "Do not enter a room before it has been cleared.",
        ),
        entry(
            GlobalAvoidance,
            "Never reach a location.",
            "G (!l)",
            &[Li],
            &[PastAvoidance, FutureAvoidance],
            "Conditional forms are Past Avoidance and Future Avoidance.",
            "Forbidden zones in a shared workspace.",
        ),
        entry(
            FutureAvoidance,
            "Once a condition has been observed, never reach the location again.",
            "G ((c) -> G (!l))",
            &[Li, C],
            &[GlobalAvoidance, PastAvoidance],
            "With c always true this becomes Global Avoidance.",
            "Stay out of an area once an alarm fired.",
        ),
        entry(
            UpperRestrictedAvoidance,
            "Reach a location no more than k times.",
            "!F (l & X (F (l & ... X (F (l))))) with k+1 occurrences of l",
            &[Li, K],
            &[LowerRestrictedAvoidance, ExactRestrictedAvoidance],
            "Every instant at which l holds counts as one visit.",
            "Limit the number of passages through a busy corridor.",
        ),
        entry(
            LowerRestrictedAvoidance,
            "Reach a location k times or more.",
            "F (l & X (F (l & ... X (F (l))))) with k occurrences of l",
            &[Li, K],
            &[UpperRestrictedAvoidance, ExactRestrictedAvoidance, Visit],
            "With k = 1 this is Visit of a single location; k = 0 is trivially true.",
            "Minimum number of inspections of a machine.",
        ),
        entry(
            ExactRestrictedAvoidance,
            "Reach a location exactly k times.",
            "(!l) U (l & X ((!l) U (l & ... X (G (!l))))) with k occurrences of l",
            &[Li, K],
            &[UpperRestrictedAvoidance, LowerRestrictedAvoidance],
            "Equivalent to the conjunction of the upper and lower bounded forms.",
            "Fixed number of deliveries to a station.",
        ),
        entry(
            InstantaneousReaction,
            "Whenever the stimulus holds, the reaction holds at the same instant.",
            "G ((p1) -> (p2))",
            &[P1, P2],
            &[DelayedReaction, PromptReaction, BoundReaction],
            "Bound Reaction additionally forbids the reaction without the stimulus.",
            "Stop when a person is detected.",
        ),
        entry(
            DelayedReaction,
            "Whenever the stimulus holds, the reaction follows at some later point.",
            "G ((p1) -> F (p2))",
            &[P1, P2],
            &[InstantaneousReaction, PromptReaction],
            "Prompt Reaction fixes the delay to one step.",
            "Report a detected fault eventually.",
        ),
        entry(
            PromptReaction,
            "Whenever the stimulus holds, the reaction holds at the next instant.",
            "G ((p1) -> X (p2))",
            &[P1, P2],
            &[DelayedReaction, BoundDelay],
            "Also known as Fast Reaction. Bound Delay adds the converse direction.",
            "Open the gripper right after an object is sensed.",
        ),
        entry(
            BoundReaction,
            "The reaction holds exactly at the instants where the stimulus holds.",
            "G ((p1) <-> (p2))",
            &[P1, P2],
            &[InstantaneousReaction],
            "Drop the converse direction to obtain Instantaneous Reaction.",
            "A warning light on exactly while a door is open.",
        ),
        entry(
            BoundDelay,
            "The reaction holds exactly one instant after each instant where the stimulus holds.",
            "G ((p1) <-> X (p2))",
            &[P1, P2],
            &[PromptReaction],
            "Drop the converse direction to obtain Prompt Reaction.",
            "Acknowledge every request in the step after it is received.",
        ),
        entry(
            Wait,
            "Inaction is desired till a stimulus occurs.",
            "(l) U (p)",
            &[Li, P],
            &[PastAvoidance],
            "The stimulus is required to occur eventually.",
            "Wait at the loading bay until a box is present.",
        ),
    ]
}

/// The 22 catalog entries in canonical order.
pub fn catalog() -> &'static [CatalogEntry] {
    static CATALOG: OnceLock<Vec<CatalogEntry>> = OnceLock::new();
    CATALOG.get_or_init(build)
}

pub fn lookup(id: PatternId) -> &'static CatalogEntry {
    catalog().iter().find(|e| e.id == id).expect("every id has an entry")
}

/// Representative parameters for `id`, used for docs and examples.
pub fn example_params(id: PatternId) -> PatternParams {
    match id.shape() {
        Shape::Locations => PatternParams::locations(["l1", "l2"]),
        Shape::Location => PatternParams::location("l1"),
        Shape::LocationTrigger if id == PatternId::FutureAvoidance => PatternParams::location("l1").with_trigger("c"),
        Shape::LocationTrigger => PatternParams::location("l1").with_trigger("p"),
        Shape::LocationCount => PatternParams::location("l1").with_count(2),
        Shape::TriggerReaction => PatternParams::reaction("p1", "p2"),
    }
}

/// One record of the catalog export.
#[derive(Debug, Clone, Serialize)]
pub struct CatalogRecord {
    pub id: PatternId,
    pub name: &'static str,
    pub short_name: &'static str,
    pub category: Category,
    pub tree_path: &'static [&'static str],
    pub added_during_evaluation: bool,
    pub intent: &'static str,
    pub ltl_template: &'static str,
    pub ctl_template: String,
    pub symbols: Vec<TemplateSymbol>,
    pub example_ltl: String,
    pub example_ctl: String,
    pub variations: &'static str,
    pub known_uses: &'static str,
    pub relations: Vec<PatternId>,
}

impl From<&CatalogEntry> for CatalogRecord {
    fn from(e: &CatalogEntry) -> Self {
        let p = example_params(e.id);
        let render = |f: Formula| emit(&f, Syntax::Plain).expect("catalog examples are well formed");
        CatalogRecord {
            id: e.id,
            name: e.id.title(),
            short_name: e.id.short_name(),
            category: e.id.category(),
            tree_path: e.id.category().path(),
            added_during_evaluation: e.id.added_during_evaluation(),
            intent: e.intent,
            ltl_template: e.template,
            ctl_template: e.ctl_template(),
            symbols: e.symbols.clone(),
            example_ltl: render(instantiate_ltl(e.id, &p).expect("valid example")),
            example_ctl: render(instantiate_ctl(e.id, &p).expect("valid example")),
            variations: e.variations,
            known_uses: e.known_uses,
            relations: e.relations.clone(),
        }
    }
}

/// Pretty JSON array with one record per pattern.
pub fn catalog_json() -> String {
    let records: Vec<CatalogRecord> = catalog().iter().map(CatalogRecord::from).collect();
    serde_json::to_string_pretty(&records).expect("records serialize")
}
