use std::collections::BTreeMap;
use std::fmt::Write;

use super::{ModelError, TransitionSystem};
use crate::logic::{emit, Atom, Formula, Logic, Syntax};

const STATE_VAR: &str = "s";

const KEYWORDS: &[&str] = &[
    "A",
    "ABF",
    "ABG",
    "AF",
    "AG",
    "ASSIGN",
    "AX",
    "B",
    "BU",
    "COMPASSION",
    "COMPUTE",
    "CONSTANTS",
    "CTLSPEC",
    "DEFINE",
    "E",
    "EBF",
    "EBG",
    "EF",
    "EG",
    "EX",
    "F",
    "FAIRNESS",
    "FALSE",
    "FROZENVAR",
    "G",
    "H",
    "INIT",
    "INVAR",
    "INVARSPEC",
    "ISA",
    "IVAR",
    "JUSTICE",
    "LTLSPEC",
    "MAX",
    "MIN",
    "MODULE",
    "O",
    "PRED",
    "PREDICATES",
    "PSLSPEC",
    "S",
    "SPEC",
    "T",
    "TRANS",
    "TRUE",
    "U",
    "V",
    "VAR",
    "W",
    "X",
    "Y",
    "Z",
    "array",
    "boolean",
    "case",
    "count",
    "esac",
    "extend",
    "in",
    "init",
    "integer",
    "mod",
    "next",
    "of",
    "process",
    "real",
    "resize",
    "self",
    "signed",
    "sizeof",
    "swconst",
    "toint",
    "union",
    "unsigned",
    "uwconst",
    "word",
    "xnor",
    "xor",
    STATE_VAR,
];

/// Keywords and the state variable get a `p_` prefix; everything else is
/// kept as is.
fn escape_prop(a: &str) -> String {
    if KEYWORDS.contains(&a) {
        format!("p_{a}")
    } else {
        a.to_string()
    }
}

/// State names become `st_<name>` with characters outside `[A-Za-z0-9_]`
/// replaced by `_`.
fn escape_state(name: &str) -> String {
    let body: String = name.chars().map(|c| if c.is_ascii_alphanumeric() || c == '_' { c } else { '_' }).collect();
    format!("st_{body}")
}

/// Injective renaming or a collision error.
fn escape_all<'a>(
    items: impl IntoIterator<Item = &'a str>,
    esc: fn(&str) -> String,
) -> Result<BTreeMap<String, String>, ModelError> {
    let mut out = BTreeMap::new();
    let mut back: BTreeMap<String, String> = BTreeMap::new();
    for item in items {
        let e = esc(item);
        if let Some(prev) = back.get(&e) {
            if prev != item {
                return Err(ModelError::IdentifierCollision(prev.clone(), item.to_string()));
            }
        }
        back.insert(e.clone(), item.to_string());
        out.insert(item.to_string(), e);
    }
    Ok(out)
}

/// Renders `ts` and `specs` as one NuSMV module. Output is deterministic.
pub fn emit_smv(ts: &TransitionSystem, specs: &[(Logic, Formula)]) -> Result<String, ModelError> {
    for (_, f) in specs {
        ts.check_atoms(f)?;
    }
    let states = escape_all(ts.names().iter().map(String::as_str), escape_state)?;
    let props = escape_all(ts.universe().iter().map(Atom::as_str), escape_prop)?;
    if let Some(p) = props.values().find(|p| states.values().any(|s| s == *p)) {
        return Err(ModelError::IdentifierCollision(p.clone(), p.clone()));
    }
    let st = |i: usize| states[ts.name(i)].as_str();

    let mut out = String::new();
    out.push_str("MODULE main\n");
    let all: Vec<&str> = (0..ts.len()).map(st).collect();
    writeln!(out, "VAR\n  {STATE_VAR} : {{{}}};", all.join(", ")).unwrap();
    let init: Vec<&str> = ts.initial().iter().map(|&i| st(i)).collect();
    writeln!(out, "INIT\n  {STATE_VAR} in {{{}}};", init.join(", ")).unwrap();
    writeln!(out, "TRANS\n  next({STATE_VAR}) in case").unwrap();
    for i in 0..ts.len() {
        let succ: Vec<&str> = ts.successors(i).iter().map(|&j| st(j)).collect();
        writeln!(out, "    {STATE_VAR} = {} : {{{}}};", st(i), succ.join(", ")).unwrap();
    }
    out.push_str("  esac;\n");
    if !ts.universe().is_empty() {
        out.push_str("DEFINE\n");
        for a in ts.universe() {
            let holding: Vec<&str> = (0..ts.len()).filter(|&i| ts.label(i).contains(a)).map(st).collect();
            let rhs = if holding.is_empty() {
                "FALSE".to_string()
            } else {
                format!("{STATE_VAR} in {{{}}}", holding.join(", "))
            };
            writeln!(out, "  {} := {rhs};", props[a.as_str()]).unwrap();
        }
    }
    for (logic, f) in specs {
        let g = f.rename_atoms(|a| Atom::new(&props[a.as_str()]));
        let (kw, syntax) = match logic {
            Logic::Ltl => ("LTLSPEC", Syntax::SmvLtl),
            Logic::Ctl => ("CTLSPEC", Syntax::SmvCtl),
        };
        writeln!(out, "{kw} {}", emit(&g, syntax)?).unwrap();
    }
    Ok(out)
}
