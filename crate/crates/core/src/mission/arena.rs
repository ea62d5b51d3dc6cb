use std::collections::{BTreeMap, BTreeSet};

use super::Mission;
use crate::logic::{Atom, Letter, PropKind};
use crate::model::{ModelError, TransitionSystem};

/// A free-running system over the propositions a mission mentions. Each
/// robot is at one of its locations or elsewhere, and every condition and
/// action is an independent bit. A step changes at most one of these
/// components; every state is initial. Stands in for a world when a
/// mission is checked or emitted on its own.
pub fn arena(m: &Mission) -> Result<TransitionSystem, ModelError> {
    let mut places: BTreeMap<Option<String>, BTreeSet<Atom>> = BTreeMap::new();
    let mut bits = BTreeSet::new();
    for c in m.tree.leaves() {
        let r = c.robot.as_ref();
        let named = c.params.locations.iter().map(|a| (a, PropKind::Location));
        let named = named
            .chain(c.params.trigger.iter().map(|a| (a, PropKind::Condition)))
            .chain(c.params.reaction.iter().map(|a| (a, PropKind::Action)));
        for (a, role) in named {
            let p = m.prop(r, a, role);
            if p.kind == PropKind::Location {
                places.entry(if m.robots().len() > 1 { r.cloned() } else { None }).or_default().insert(p.atom());
            } else {
                bits.insert(p.atom());
            }
        }
    }
    // one component per robot (elsewhere or a location) and per bit
    let mut components: Vec<Vec<Option<Atom>>> =
        places.into_values().map(|ls| std::iter::once(None).chain(ls.into_iter().map(Some)).collect()).collect();
    components.extend(bits.into_iter().map(|a| vec![None, Some(a)]));

    let mut states: Vec<Vec<usize>> = vec![Vec::new()];
    for comp in &components {
        states = states.iter().flat_map(|s| (0..comp.len()).map(move |v| [s.as_slice(), &[v]].concat())).collect();
    }
    let letters: Vec<Letter> =
        states.iter().map(|s| s.iter().zip(&components).filter_map(|(&v, comp)| comp[v].clone()).collect()).collect();
    let names =
        letters
            .iter()
            .map(|l| {
                if l.is_empty() {
                    "none".to_string()
                } else {
                    l.iter().map(Atom::as_str).collect::<Vec<_>>().join("__")
                }
            })
            .collect();
    let mut edges = Vec::new();
    for (i, s) in states.iter().enumerate() {
        for (j, t) in states.iter().enumerate() {
            if s.iter().zip(t).filter(|(a, b)| a != b).count() <= 1 {
                edges.push((i, j));
            }
        }
    }
    let universe = letters.iter().flatten().cloned().collect();
    TransitionSystem::new(names, letters, &edges, (0..states.len()).collect(), universe)
}
