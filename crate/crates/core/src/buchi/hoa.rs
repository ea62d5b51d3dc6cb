use std::fmt::Write;

use super::{BuchiAutomaton, Label};
use crate::logic::Atom;

fn label_expr(l: &Label, ap: &[&Atom]) -> String {
    if l.is_true() {
        return "t".into();
    }
    let idx = |a: &Atom| ap.iter().position(|x| *x == a).expect("label atom in AP");
    let mut lits: Vec<(usize, bool)> =
        l.pos.iter().map(|a| (idx(a), true)).chain(l.neg.iter().map(|a| (idx(a), false))).collect();
    lits.sort();
    lits.iter().map(|(i, p)| if *p { i.to_string() } else { format!("!{i}") }).collect::<Vec<_>>().join("&")
}

/// Serializes `b` in the Hanoi Omega-Automata format.
pub fn to_hoa(b: &BuchiAutomaton, name: &str) -> String {
    let ap: Vec<&Atom> = b.ap.iter().collect();
    let mut out = String::new();
    out.push_str("HOA: v1\n");
    writeln!(out, "name: \"{}\"", name.replace('"', "'")).unwrap();
    writeln!(out, "States: {}", b.num_states()).unwrap();
    for q in &b.initial {
        writeln!(out, "Start: {q}").unwrap();
    }
    write!(out, "AP: {}", ap.len()).unwrap();
    for a in &ap {
        write!(out, " \"{a}\"").unwrap();
    }
    out.push('\n');
    out.push_str("acc-name: Buchi\nAcceptance: 1 Inf(0)\n");
    out.push_str("properties: trans-labels explicit-labels state-acc\n--BODY--\n");
    for (q, edges) in b.edges.iter().enumerate() {
        write!(out, "State: {q} \"{}\"", b.names[q].replace('"', "'")).unwrap();
        if b.accepting[q] {
            out.push_str(" {0}");
        }
        out.push('\n');
        for (l, t) in edges {
            writeln!(out, "[{}] {t}", label_expr(l, &ap)).unwrap();
        }
    }
    out.push_str("--END--\n");
    out
}
