//! `missionspec` command line.
//!
//! Exit codes: 0 on success, 1 when a check, plan search or trace
//! evaluation comes out false (suppressed by `--exit-zero`), 2 on usage or
//! input errors.

use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use missionspec::experiments::{run_experiment, ExpConfig, ExpMode};
use missionspec::logic::{emit, eval_lasso, parse_formula, Formula, LassoTrace, Logic, Syntax};
use missionspec::matcher::match_corpus;
use missionspec::mission::{arena, compile_ctl, compile_ltl, parse_mission, Mission};
use missionspec::model::{check_ctl, emit_smv, find_plan, holds_universally, TransitionSystem};
use missionspec::patterns::{catalog, catalog_json};
use missionspec::worldgen::{generate_scenario, GridScenario, Movement, WorldConfig, WrapRule};

#[derive(Parser)]
#[command(name = "missionspec", version, about = "Pattern-based robotic mission specification")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Compile a mission file to a temporal-logic formula.
    Compile {
        mission: PathBuf,
        #[arg(long, default_value = "ltl")]
        logic: Logic,
        #[arg(long, default_value = "plain")]
        format: Syntax,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write an SMV model of a world with the mission's specifications.
    EmitSmv {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        world: WorldArgs,
        /// Emit only this logic; a mission gets both by default.
        #[arg(long)]
        logic: Option<Logic>,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Search for a path of the world satisfying the LTL mission.
    Plan {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        world: WorldArgs,
        /// Print the plan as JSON.
        #[arg(long)]
        json: bool,
        #[arg(long)]
        exit_zero: bool,
    },
    /// Check that every path of the world satisfies the LTL mission.
    CheckLtl {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        world: WorldArgs,
        #[arg(long)]
        exit_zero: bool,
    },
    /// Check the CTL form of the mission on the world.
    CheckCtl {
        #[command(flatten)]
        spec: SpecArgs,
        #[command(flatten)]
        world: WorldArgs,
        #[arg(long)]
        exit_zero: bool,
    },
    /// Classify every formula of a corpus file against the catalog.
    Match {
        corpus: PathBuf,
        #[arg(long)]
        json: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate a seeded grid scenario.
    GenWorld {
        #[arg(long)]
        seed: u64,
        #[arg(long, default_value = "adjacent")]
        variant: Movement,
        #[arg(long, default_value = "corner")]
        wrap: WrapRule,
        /// 3x3 grid instead of 4x4.
        #[arg(long)]
        reduced: bool,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Run a batch experiment over seeded scenarios and the mission suite.
    Exp {
        #[arg(long)]
        mode: ExpMode,
        #[arg(long)]
        seed: u64,
        /// Scenarios per movement variant.
        #[arg(long, default_value_t = 6)]
        per_movement: usize,
        #[arg(long, default_value = "corner")]
        wrap: WrapRule,
        #[arg(long)]
        reduced: bool,
        /// Record per-task wall-clock times (makes the report non-reproducible).
        #[arg(long)]
        timings: bool,
        /// Structured JSON report.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Evaluate an LTL formula on a lasso trace.
    EvalTrace {
        #[arg(long)]
        formula: String,
        /// Inline trace `stem: a, {b, c}; loop: d`.
        #[arg(long, conflicts_with = "trace_file", required_unless_present = "trace_file")]
        trace: Option<String>,
        #[arg(long)]
        trace_file: Option<PathBuf>,
        #[arg(long)]
        exit_zero: bool,
    },
    /// Print the pattern catalog.
    Catalog {
        #[arg(long)]
        json: bool,
    },
}

#[derive(Args)]
struct SpecArgs {
    /// Mission file.
    #[arg(conflicts_with = "formula", required_unless_present = "formula")]
    mission: Option<PathBuf>,
    /// Formula instead of a mission file (LTL or CTL as the command needs).
    #[arg(long)]
    formula: Option<String>,
}

#[derive(Args)]
struct WorldArgs {
    /// Scenario file as written by `gen-world`.
    #[arg(long, conflicts_with = "seed")]
    world: Option<PathBuf>,
    /// Generate the scenario from this seed. Without a world or a seed, a
    /// mission is checked in its free-running arena.
    #[arg(long)]
    seed: Option<u64>,
    #[arg(long, default_value = "adjacent")]
    variant: Movement,
    #[arg(long, default_value = "corner")]
    wrap: WrapRule,
    #[arg(long)]
    reduced: bool,
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).with_context(|| format!("cannot read {}", path.display()))
}

fn write_or_print(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("cannot write {}", p.display())),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

fn load_mission(path: &Path) -> Result<Mission> {
    let text = read(path)?;
    parse_mission(&text).with_context(|| format!("in {}", path.display()))
}

fn world_config(reduced: bool) -> WorldConfig {
    if reduced {
        WorldConfig::REDUCED
    } else {
        WorldConfig::STANDARD
    }
}

enum Spec {
    Mission(Mission),
    Formula(String),
}

impl SpecArgs {
    fn load(&self) -> Result<Spec> {
        match (&self.mission, &self.formula) {
            (Some(p), _) => Ok(Spec::Mission(load_mission(p)?)),
            (None, Some(f)) => Ok(Spec::Formula(f.clone())),
            (None, None) => unreachable!("enforced by clap"),
        }
    }
}

impl Spec {
    fn formula(&self, logic: Logic) -> Result<Formula> {
        Ok(match (self, logic) {
            (Spec::Mission(m), Logic::Ltl) => compile_ltl(m)?,
            (Spec::Mission(m), Logic::Ctl) => compile_ctl(m)?,
            (Spec::Formula(text), _) => parse_formula(text, logic)?,
        })
    }
}

impl WorldArgs {
    fn system(&self, spec: &Spec) -> Result<TransitionSystem> {
        let scenario = match (&self.world, self.seed) {
            (Some(p), _) => read(p)?.parse::<GridScenario>().with_context(|| format!("in {}", p.display()))?,
            (None, Some(seed)) => generate_scenario(world_config(self.reduced), seed, self.variant, self.wrap)?,
            (None, None) => match spec {
                Spec::Mission(m) => return Ok(arena(m)?),
                Spec::Formula(_) => bail!("--formula needs a world (--world or --seed)"),
            },
        };
        log::info!("scenario seed {} after {} attempt(s)", scenario.seed, scenario.attempts);
        Ok(scenario.to_ts()?)
    }
}

/// Outcome of a subcommand: whether it counts as a positive result.
fn run(cli: Cli) -> Result<bool> {
    match cli.command {
        Command::Compile { mission, logic, format, out } => {
            let m = load_mission(&mission)?;
            let f = Spec::Mission(m).formula(logic)?;
            write_or_print(out.as_deref(), &format!("{}\n", emit(&f, format)?))?;
            Ok(true)
        }
        Command::EmitSmv { spec, world, logic, out } => {
            let spec = spec.load()?;
            let ts = world.system(&spec)?;
            let logics = match (logic, &spec) {
                (Some(l), _) => vec![l],
                (None, Spec::Mission(_)) => vec![Logic::Ltl, Logic::Ctl],
                (None, Spec::Formula(_)) => vec![Logic::Ltl],
            };
            let specs = logics.into_iter().map(|l| Ok((l, spec.formula(l)?))).collect::<Result<Vec<_>>>()?;
            write_or_print(out.as_deref(), &emit_smv(&ts, &specs)?)?;
            Ok(true)
        }
        Command::Plan { spec, world, json, exit_zero } => {
            let spec = spec.load()?;
            let ts = world.system(&spec)?;
            let f = spec.formula(Logic::Ltl)?;
            let plan = find_plan(&ts, &f)?;
            match &plan {
                Some(p) if json => println!("{}", serde_json::to_string_pretty(&p.record(&ts))?),
                Some(p) => println!("plan found\n{}", p.display(&ts)),
                None if json => println!("null"),
                None => println!("no plan"),
            }
            Ok(plan.is_some() || exit_zero)
        }
        Command::CheckLtl { spec, world, exit_zero } => {
            let spec = spec.load()?;
            let ts = world.system(&spec)?;
            let v = holds_universally(&ts, &spec.formula(Logic::Ltl)?)?;
            if v.holds {
                println!("holds");
            } else {
                println!("violated");
            }
            if let Some(cex) = &v.witness {
                println!("counterexample\n{}", cex.display(&ts));
            }
            Ok(v.holds || exit_zero)
        }
        Command::CheckCtl { spec, world, exit_zero } => {
            let spec = spec.load()?;
            let ts = world.system(&spec)?;
            let v = check_ctl(&ts, &spec.formula(Logic::Ctl)?)?;
            println!("{}", if v.holds { "holds" } else { "violated" });
            Ok(v.holds || exit_zero)
        }
        Command::Match { corpus, json, out } => {
            let report = match_corpus(&read(&corpus)?);
            let text = if json { format!("{}\n", serde_json::to_string_pretty(&report)?) } else { report.render() };
            write_or_print(out.as_deref(), &text)?;
            Ok(true)
        }
        Command::GenWorld { seed, variant, wrap, reduced, out } => {
            let s = generate_scenario(world_config(reduced), seed, variant, wrap)?;
            write_or_print(out.as_deref(), &s.to_string())?;
            Ok(true)
        }
        Command::Exp { mode, seed, per_movement, wrap, reduced, timings, out } => {
            let cfg = ExpConfig { seed, world: world_config(reduced), wrap, per_movement, timings };
            let report = run_experiment(mode, &cfg)?;
            print!("{}", report.table());
            if let Some(p) = out {
                let json = serde_json::to_string_pretty(&report)? + "\n";
                fs::write(&p, json).with_context(|| format!("cannot write {}", p.display()))?;
            }
            Ok(true)
        }
        Command::EvalTrace { formula, trace, trace_file, exit_zero } => {
            let text = match (trace, trace_file) {
                (Some(t), _) => t,
                (None, Some(p)) => read(&p)?,
                (None, None) => unreachable!("enforced by clap"),
            };
            let f = parse_formula(&formula, Logic::Ltl)?;
            let t = LassoTrace::parse(&text)?;
            let sat = eval_lasso(&f, &t)?;
            println!("{}", if sat { "SAT" } else { "UNSAT" });
            Ok(sat || exit_zero)
        }
        Command::Catalog { json } => {
            if json {
                println!("{}", catalog_json());
            } else {
                for e in catalog() {
                    println!("{} [{}]", e.id.title(), e.category().slug());
                    println!("  LTL: {}", e.template);
                    println!("  CTL: {}", e.ctl_template());
                    println!("  {}", e.intent);
                }
            }
            Ok(true)
        }
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
    }
}
