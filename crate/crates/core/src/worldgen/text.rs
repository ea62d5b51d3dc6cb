//! Scenario text format:
//!
//! ```text
//! seed: 7
//! movement: directed
//! wrap: corner
//! attempts: 1
//! grid:
//!   l3  l0  x   l7
//!   ...
//! cond: l1, l4, l5, l9
//! act: l0, l2, l3, l8
//! ```
//!
//! `x` marks a blocked cell. `#` starts a comment.

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use super::{GridScenario, WorldConfig, WorldError, WrapRule};

fn ids(set: &BTreeSet<usize>) -> String {
    set.iter().map(|i| format!("l{i}")).collect::<Vec<_>>().join(", ")
}

impl fmt::Display for GridScenario {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "seed: {}", self.seed)?;
        writeln!(f, "movement: {}", self.movement)?;
        writeln!(f, "wrap: {}", self.wrap)?;
        writeln!(f, "attempts: {}", self.attempts)?;
        writeln!(f, "grid:")?;
        for row in self.cells.chunks(self.config.cols) {
            let cells: Vec<String> =
                row.iter().map(|c| c.map_or_else(|| "x".to_string(), |i| format!("l{i}"))).collect();
            writeln!(f, "  {}", cells.iter().map(|c| format!("{c:<4}")).collect::<String>().trim_end())?;
        }
        writeln!(f, "cond: {}", ids(&self.cond))?;
        writeln!(f, "act: {}", ids(&self.act))
    }
}

fn location_id(tok: &str, line: usize) -> Result<usize, WorldError> {
    tok.strip_prefix('l')
        .and_then(|d| d.parse().ok())
        .ok_or_else(|| WorldError::Parse { line, message: format!("`{tok}` is not a location `l<i>`") })
}

fn id_list(v: &str, line: usize) -> Result<BTreeSet<usize>, WorldError> {
    v.split(',').map(str::trim).filter(|s| !s.is_empty()).map(|t| location_id(t, line)).collect()
}

impl FromStr for GridScenario {
    type Err = WorldError;

    fn from_str(text: &str) -> Result<Self, Self::Err> {
        let err = |line: usize, message: String| WorldError::Parse { line, message };
        let (mut seed, mut movement, mut wrap, mut attempts) = (None, None, WrapRule::Corner, 1);
        let (mut rows, mut cond, mut act): (Vec<Vec<Option<usize>>>, Option<_>, Option<_>) = (Vec::new(), None, None);
        let mut in_grid = false;
        for (i, raw) in text.lines().enumerate() {
            let ln = i + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            if let Some((key, value)) = line.split_once(':') {
                in_grid = false;
                let value = value.trim();
                match key.trim() {
                    "seed" => seed = Some(value.parse().map_err(|_| err(ln, format!("bad seed `{value}`")))?),
                    "movement" => movement = Some(value.parse()?),
                    "wrap" => wrap = value.parse()?,
                    "attempts" => {
                        attempts = value.parse().map_err(|_| err(ln, format!("bad attempt count `{value}`")))?
                    }
                    "grid" => in_grid = true,
                    "cond" => cond = Some(id_list(value, ln)?),
                    "act" => act = Some(id_list(value, ln)?),
                    other => return Err(err(ln, format!("unknown key `{other}`"))),
                }
            } else if in_grid {
                let row = line
                    .split_whitespace()
                    .map(|t| if t == "x" { Ok(None) } else { location_id(t, ln).map(Some) })
                    .collect::<Result<Vec<_>, _>>()?;
                if rows.first().is_some_and(|r: &Vec<_>| r.len() != row.len()) {
                    return Err(err(ln, "grid rows differ in length".into()));
                }
                rows.push(row);
            } else {
                return Err(err(ln, format!("unexpected line `{line}`")));
            }
        }
        let missing = |what: &str| err(0, format!("missing `{what}`"));
        let seed = seed.ok_or_else(|| missing("seed"))?;
        let movement = movement.ok_or_else(|| missing("movement"))?;
        let (cond, act): (BTreeSet<usize>, BTreeSet<usize>) =
            (cond.ok_or_else(|| missing("cond"))?, act.ok_or_else(|| missing("act"))?);
        if rows.is_empty() {
            return Err(missing("grid"));
        }
        let cols = rows[0].len();
        let cells: Vec<Option<usize>> = rows.iter().flatten().copied().collect();
        let open: BTreeSet<usize> = cells.iter().flatten().copied().collect();
        let t = cells.iter().flatten().count();
        if open.len() != t || open.iter().next_back().is_some_and(|&m| m + 1 != t) {
            return Err(err(0, format!("location ids must be l0..l{} without repeats", t.saturating_sub(1))));
        }
        if !cond.is_subset(&open) || !act.is_subset(&open) {
            return Err(err(0, "cond/act cells must be traversable locations".into()));
        }
        let config = WorldConfig {
            rows: rows.len(),
            cols,
            blocked: cells.len() - t,
            cond_cells: cond.len(),
            act_cells: act.len(),
        };
        Ok(GridScenario { config, movement, wrap, seed, attempts, cells, cond, act })
    }
}
