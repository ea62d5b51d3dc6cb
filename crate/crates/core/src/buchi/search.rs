//! Nested depth-first search for accepting lassos in an implicit graph.

use std::collections::HashSet;
use std::hash::Hash;

/// An accepting lasso: `stem` leads from an initial node to `cycle[0]`,
/// and the cycle closes back onto `cycle[0]`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Lasso<S> {
    pub stem: Vec<S>,
    pub cycle: Vec<S>,
}

/// Searches for a reachable cycle through an accepting node.
///
/// `succ` enumerates successors in a fixed order, which makes the returned
/// lasso deterministic.
pub fn find_accepting_lasso<S, I, F, A>(initial: I, mut succ: F, accepting: A) -> Option<Lasso<S>>
where
    S: Clone + Eq + Hash,
    I: IntoIterator<Item = S>,
    F: FnMut(&S) -> Vec<S>,
    A: Fn(&S) -> bool,
{
    let mut blue: HashSet<S> = HashSet::new();
    let mut red: HashSet<S> = HashSet::new();
    let mut on_stack: HashSet<S> = HashSet::new();

    for init in initial {
        if blue.contains(&init) {
            continue;
        }
        // frames: (node, successors, next successor index)
        let mut stack: Vec<(S, Vec<S>, usize)> = Vec::new();
        blue.insert(init.clone());
        on_stack.insert(init.clone());
        let s = succ(&init);
        stack.push((init, s, 0));

        while let Some(top) = stack.last_mut() {
            if top.2 < top.1.len() {
                let t = top.1[top.2].clone();
                top.2 += 1;
                if blue.insert(t.clone()) {
                    on_stack.insert(t.clone());
                    let ts = succ(&t);
                    stack.push((t, ts, 0));
                }
                continue;
            }
            let s = top.0.clone();
            if accepting(&s) {
                if let Some(path) = red_search(&s, &mut succ, &mut red, &on_stack) {
                    let target = path.last().expect("non-empty red path").clone();
                    let states: Vec<S> = stack.iter().map(|f| f.0.clone()).collect();
                    let j = states.iter().position(|x| *x == target).expect("target on stack");
                    let mut cycle = states[j..].to_vec();
                    cycle.extend(path[1..path.len() - 1].iter().cloned());
                    return Some(Lasso { stem: states[..j].to_vec(), cycle });
                }
            }
            on_stack.remove(&s);
            stack.pop();
        }
    }
    None
}

/// Depth-first search from `seed` for a node on the blue stack. Returns the
/// path `seed, .., hit` with at least one edge.
fn red_search<S, F>(seed: &S, succ: &mut F, red: &mut HashSet<S>, cyan: &HashSet<S>) -> Option<Vec<S>>
where
    S: Clone + Eq + Hash,
    F: FnMut(&S) -> Vec<S>,
{
    let mut stack: Vec<(S, Vec<S>, usize)> = vec![(seed.clone(), succ(seed), 0)];
    while let Some(top) = stack.last_mut() {
        if top.2 < top.1.len() {
            let t = top.1[top.2].clone();
            top.2 += 1;
            if cyan.contains(&t) {
                let mut path: Vec<S> = stack.iter().map(|f| f.0.clone()).collect();
                path.push(t);
                return Some(path);
            }
            if red.insert(t.clone()) {
                let ts = succ(&t);
                stack.push((t, ts, 0));
            }
            continue;
        }
        stack.pop();
    }
    None
}
