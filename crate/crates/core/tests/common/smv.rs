//! Structural reader for the emitted SMV dialect: checks that the module is
//! well-formed and returns its transition table and definitions.

use std::collections::{BTreeMap, BTreeSet};

const SPEC_WORDS: &[&str] = &["A", "E", "U", "V", "X", "F", "G", "AX", "AF", "AG", "EX", "EF", "EG", "TRUE", "FALSE"];

#[derive(Debug, Default)]
pub struct SmvModule {
    pub states: BTreeSet<String>,
    pub init: BTreeSet<String>,
    pub trans: BTreeMap<String, BTreeSet<String>>,
    pub defines: BTreeMap<String, BTreeSet<String>>,
    pub specs: Vec<(String, String)>,
}

fn set(text: &str) -> Result<BTreeSet<String>, String> {
    let inner = text.trim().strip_prefix('{').and_then(|t| t.strip_suffix('}')).ok_or(format!("not a set: {text}"))?;
    Ok(inner.split(',').map(|s| s.trim().to_string()).filter(|s| !s.is_empty()).collect())
}

fn ident(s: &str) -> bool {
    s.chars().next().is_some_and(|c| c.is_ascii_alphabetic() || c == '_')
        && s.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

pub fn read(text: &str) -> Result<SmvModule, String> {
    let mut m = SmvModule::default();
    let mut lines = text.lines();
    if lines.next() != Some("MODULE main") {
        return Err("missing `MODULE main`".into());
    }
    let mut section = "";
    for line in lines {
        match line {
            "VAR" | "INIT" | "TRANS" | "DEFINE" => {
                section = line;
                continue;
            }
            _ => {}
        }
        if let Some((kw, body)) = line.split_once(' ').filter(|(k, _)| *k == "LTLSPEC" || *k == "CTLSPEC") {
            m.specs.push((kw.to_string(), body.to_string()));
            continue;
        }
        let body = line.trim().strip_suffix(';').unwrap_or(line.trim());
        match section {
            "VAR" => m.states = set(body.strip_prefix("s :").ok_or("bad VAR")?)?,
            "INIT" => m.init = set(body.strip_prefix("s in").ok_or("bad INIT")?)?,
            "TRANS" => {
                if body == "next(s) in case" || body == "esac" {
                    continue;
                }
                let (lhs, rhs) = body.split_once(':').ok_or(format!("bad case `{line}`"))?;
                let st = lhs.trim().strip_prefix("s = ").ok_or(format!("bad case `{line}`"))?;
                if m.trans.insert(st.to_string(), set(rhs)?).is_some() {
                    return Err(format!("state {st} has two cases"));
                }
            }
            "DEFINE" => {
                let (name, rhs) = body.split_once(":=").ok_or(format!("bad define `{line}`"))?;
                let rhs = rhs.trim();
                let holding = if rhs == "FALSE" {
                    BTreeSet::new()
                } else {
                    set(rhs.strip_prefix("s in").ok_or("bad define")?)?
                };
                m.defines.insert(name.trim().to_string(), holding);
            }
            _ => return Err(format!("unexpected line `{line}`")),
        }
    }
    if m.states.is_empty() || m.init.is_empty() || !m.init.is_subset(&m.states) {
        return Err("bad state or init set".into());
    }
    if m.trans.keys().cloned().collect::<BTreeSet<_>>() != m.states {
        return Err("transition cases do not cover the states".into());
    }
    for (s, succ) in m.trans.iter().chain(&m.defines) {
        if !ident(s) || !succ.is_subset(&m.states) {
            return Err(format!("bad entry for {s}"));
        }
    }
    if m.trans.values().any(BTreeSet::is_empty) {
        return Err("a state has no successor".into());
    }
    for (_, body) in &m.specs {
        let mut depth = 0i32;
        for c in body.chars() {
            depth += match c {
                '(' | '[' => 1,
                ')' | ']' => -1,
                _ => 0,
            };
            if depth < 0 {
                return Err(format!("unbalanced spec `{body}`"));
            }
        }
        let words = body.split(|c: char| !(c.is_ascii_alphanumeric() || c == '_')).filter(|w| !w.is_empty());
        if depth != 0 {
            return Err(format!("unbalanced spec `{body}`"));
        }
        if let Some(w) = words.into_iter().find(|w| !SPEC_WORDS.contains(w) && !m.defines.contains_key(*w)) {
            return Err(format!("undefined `{w}` in spec"));
        }
    }
    Ok(m)
}
