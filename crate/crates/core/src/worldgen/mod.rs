//! Seeded grid-world scenarios and the batch mission suite.
//!
//! Randomness comes from ChaCha8 seeded with `seed_from_u64`, so scenario
//! bytes are identical across platforms for a given seed.

mod suite;
mod text;

pub use suite::{mission_suite, SuiteMission};

use std::collections::{BTreeSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::{index, SliceRandom};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::logic::{Atom, Letter};
use crate::model::{ModelError, TransitionSystem};

/// Upper bound on rejection-sampling rounds.
pub const MAX_ATTEMPTS: u32 = 10_000;

pub const COND: &str = "cond";
pub const ACT: &str = "act";

#[derive(Debug, Error)]
pub enum WorldError {
    #[error("{0}")]
    Config(String),
    #[error("no connected layout after {0} attempts")]
    Disconnected(u32),
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error(transparent)]
    Model(#[from] ModelError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Movement {
    /// Orthogonal neighbours, both directions.
    Adjacent,
    /// Right and down moves plus wrap-around edges.
    Directed,
}

/// Wrap-around edges of the directed movement.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum WrapRule {
    /// One edge from the last traversable cell (maximum row, then maximum
    /// column in that row) to the first (minimum row, minimum column).
    #[default]
    Corner,
    /// One edge per row from its last traversable cell to its first, and
    /// one per column from its lowest traversable cell to its highest.
    PerLine,
}

impl fmt::Display for Movement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Movement::Adjacent => "adjacent",
            Movement::Directed => "directed",
        })
    }
}

impl FromStr for Movement {
    type Err = WorldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "adjacent" => Ok(Movement::Adjacent),
            "directed" => Ok(Movement::Directed),
            _ => Err(WorldError::Config(format!("unknown movement `{s}` (expected adjacent or directed)"))),
        }
    }
}

impl fmt::Display for WrapRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            WrapRule::Corner => "corner",
            WrapRule::PerLine => "per-line",
        })
    }
}

impl FromStr for WrapRule {
    type Err = WorldError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "corner" => Ok(WrapRule::Corner),
            "per-line" => Ok(WrapRule::PerLine),
            _ => Err(WorldError::Config(format!("unknown wrap rule `{s}` (expected corner or per-line)"))),
        }
    }
}

/// Grid dimensions and how many cells of each kind to draw.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct WorldConfig {
    pub rows: usize,
    pub cols: usize,
    pub blocked: usize,
    pub cond_cells: usize,
    pub act_cells: usize,
}

impl WorldConfig {
    /// 4×4 with 4 blocked cells, 4 cond cells and 4 act cells.
    pub const STANDARD: WorldConfig = WorldConfig { rows: 4, cols: 4, blocked: 4, cond_cells: 4, act_cells: 4 };
    /// 3×3 with 2 blocked cells, 2 cond cells and 2 act cells; small enough
    /// for exhaustive path enumeration.
    pub const REDUCED: WorldConfig = WorldConfig { rows: 3, cols: 3, blocked: 2, cond_cells: 2, act_cells: 2 };

    pub fn traversable(&self) -> usize {
        self.rows * self.cols - self.blocked
    }

    fn validate(&self) -> Result<(), WorldError> {
        let t = self.rows * self.cols;
        if self.rows == 0 || self.cols == 0 || self.blocked >= t {
            return Err(WorldError::Config(format!(
                "{}x{} grid with {} blocked cells has no room",
                self.rows, self.cols, self.blocked
            )));
        }
        if self.cond_cells > self.traversable() || self.act_cells > self.traversable() {
            return Err(WorldError::Config("more cond/act cells than traversable cells".into()));
        }
        Ok(())
    }
}

/// A generated building: blocked cells, location ids and cond/act cells.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct GridScenario {
    pub config: WorldConfig,
    pub movement: Movement,
    pub wrap: WrapRule,
    pub seed: u64,
    /// Rejection-sampling rounds used, including the accepted one.
    pub attempts: u32,
    /// Row-major cells; `None` is blocked, `Some(i)` is location `l<i>`.
    pub cells: Vec<Option<usize>>,
    /// Location ids where `cond` holds.
    pub cond: BTreeSet<usize>,
    /// Location ids where `act` can be performed.
    pub act: BTreeSet<usize>,
}

/// Location proposition of id `i`.
pub fn location(i: usize) -> Atom {
    Atom::new(format!("l{i}"))
}

fn connected(cells: &[Option<usize>], rows: usize, cols: usize) -> bool {
    let open: Vec<usize> = (0..cells.len()).filter(|&c| cells[c].is_some()).collect();
    let Some(&start) = open.first() else { return false };
    let mut seen = vec![false; cells.len()];
    seen[start] = true;
    let mut queue = VecDeque::from([start]);
    let mut count = 1;
    while let Some(c) = queue.pop_front() {
        let (r, k) = (c / cols, c % cols);
        let mut nb = Vec::new();
        if r > 0 {
            nb.push(c - cols);
        }
        if r + 1 < rows {
            nb.push(c + cols);
        }
        if k > 0 {
            nb.push(c - 1);
        }
        if k + 1 < cols {
            nb.push(c + 1);
        }
        for d in nb {
            if cells[d].is_some() && !seen[d] {
                seen[d] = true;
                count += 1;
                queue.push_back(d);
            }
        }
    }
    count == open.len()
}

/// Draws a scenario; layouts whose traversable cells are not orthogonally
/// connected are rejected and redrawn from the same stream.
pub fn generate_scenario(
    config: WorldConfig,
    seed: u64,
    movement: Movement,
    wrap: WrapRule,
) -> Result<GridScenario, WorldError> {
    config.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let n = config.rows * config.cols;
    let t = config.traversable();
    for attempt in 1..=MAX_ATTEMPTS {
        let mut order: Vec<usize> = (0..n).collect();
        order.shuffle(&mut rng);
        let blocked: BTreeSet<usize> = order[..config.blocked].iter().copied().collect();
        let mut ids: Vec<usize> = (0..t).collect();
        ids.shuffle(&mut rng);
        let mut next = ids.into_iter();
        let cells: Vec<Option<usize>> = (0..n).map(|c| if blocked.contains(&c) { None } else { next.next() }).collect();
        if !connected(&cells, config.rows, config.cols) {
            log::debug!("seed {seed}: layout {attempt} disconnected, redrawing");
            continue;
        }
        let cond = index::sample(&mut rng, t, config.cond_cells).into_iter().collect();
        let act = index::sample(&mut rng, t, config.act_cells).into_iter().collect();
        return Ok(GridScenario { config, movement, wrap, seed, attempts: attempt, cells, cond, act });
    }
    Err(WorldError::Disconnected(MAX_ATTEMPTS))
}

/// Seed of scenario `i` in a suite drawn from `seed`.
pub fn scenario_seed(seed: u64, i: usize) -> u64 {
    seed.wrapping_mul(100).wrapping_add(i as u64)
}

/// `2 * half` scenarios: the first half adjacent, the second directed.
pub fn scenario_suite(
    config: WorldConfig,
    seed: u64,
    half: usize,
    wrap: WrapRule,
) -> Result<Vec<GridScenario>, WorldError> {
    (0..2 * half)
        .map(|i| {
            let movement = if i < half { Movement::Adjacent } else { Movement::Directed };
            generate_scenario(config, scenario_seed(seed, i), movement, wrap)
        })
        .collect()
}

impl GridScenario {
    pub fn num_locations(&self) -> usize {
        self.cells.iter().flatten().count()
    }

    fn cell_of(&self, r: usize, c: usize) -> Option<usize> {
        self.cells[r * self.config.cols + c]
    }

    /// Movement edges between location ids, sorted and deduplicated.
    pub fn moves(&self) -> Vec<(usize, usize)> {
        let (rows, cols) = (self.config.rows, self.config.cols);
        let mut out = BTreeSet::new();
        for r in 0..rows {
            for c in 0..cols {
                let Some(a) = self.cell_of(r, c) else { continue };
                let mut targets = Vec::new();
                if c + 1 < cols {
                    targets.push((r, c + 1));
                }
                if r + 1 < rows {
                    targets.push((r + 1, c));
                }
                if self.movement == Movement::Adjacent {
                    if c > 0 {
                        targets.push((r, c - 1));
                    }
                    if r > 0 {
                        targets.push((r - 1, c));
                    }
                }
                for (r2, c2) in targets {
                    if let Some(b) = self.cell_of(r2, c2) {
                        out.insert((a, b));
                    }
                }
            }
        }
        if self.movement == Movement::Directed {
            out.extend(self.wrap_edges());
        }
        out.into_iter().collect()
    }

    fn wrap_edges(&self) -> Vec<(usize, usize)> {
        let (rows, cols) = (self.config.rows, self.config.cols);
        let line = |cells: Vec<Option<usize>>| -> Option<(usize, usize)> {
            let open: Vec<usize> = cells.into_iter().flatten().collect();
            match (open.first(), open.last()) {
                (Some(&first), Some(&last)) if first != last => Some((last, first)),
                _ => None,
            }
        };
        match self.wrap {
            WrapRule::Corner => line(self.cells.clone()).into_iter().collect(),
            WrapRule::PerLine => {
                let mut out = Vec::new();
                for r in 0..rows {
                    out.extend(line((0..cols).map(|c| self.cell_of(r, c)).collect()));
                }
                for c in 0..cols {
                    out.extend(line((0..rows).map(|r| self.cell_of(r, c)).collect()));
                }
                out
            }
        }
    }

    /// Propositions of the derived system: `l0..`, `cond` and `act`.
    pub fn universe(&self) -> BTreeSet<Atom> {
        let mut u: BTreeSet<Atom> = (0..self.num_locations()).map(location).collect();
        u.insert(Atom::new(COND));
        u.insert(Atom::new(ACT));
        u
    }

    /// Transition system with one state per location, plus an `act` copy of
    /// each act cell. Every move enters both copies of the target; the plain
    /// state of an act cell may also step into its own copy. The robot
    /// starts in the plain state of `l0`.
    pub fn to_ts(&self) -> Result<TransitionSystem, WorldError> {
        let n = self.num_locations();
        let mut names = Vec::new();
        let mut labels: Vec<Letter> = Vec::new();
        let mut copies: Vec<Vec<usize>> = vec![Vec::new(); n];
        for (i, copy) in copies.iter_mut().enumerate() {
            let mut base: Letter = [location(i)].into();
            if self.cond.contains(&i) {
                base.insert(Atom::new(COND));
            }
            copy.push(names.len());
            names.push(format!("l{i}"));
            labels.push(base.clone());
            if self.act.contains(&i) {
                base.insert(Atom::new(ACT));
                copy.push(names.len());
                names.push(format!("l{i}_act"));
                labels.push(base);
            }
        }
        let mut edges = Vec::new();
        for (a, b) in self.moves() {
            for &s in &copies[a] {
                for &t in &copies[b] {
                    edges.push((s, t));
                }
            }
        }
        for c in &copies {
            if c.len() == 2 {
                edges.push((c[0], c[1]));
            }
        }
        // directed worlds can have dead ends; the robot stays put there
        let sinks: Vec<usize> = (0..names.len()).filter(|&s| !edges.iter().any(|e| e.0 == s)).collect();
        edges.extend(sinks.into_iter().map(|s| (s, s)));
        Ok(TransitionSystem::new(names, labels, &edges, vec![copies[0][0]], self.universe())?)
    }
}
