//! The `abdukit` command line. [`run`] does all the work and returns the exit
//! code and both output streams, so the binary is a thin wrapper and tests
//! can drive it in-process.

use std::fmt::Write as _;
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};

use crate::abduction::{self, normal_form, Abducer, AbductiveProgram, Mode, Observation};
use crate::config::{AbdEncoding, EngineConfig};
use crate::error::{Error, Result};
use crate::parser::{self, SourceUnit};
use crate::report::{AnswerSetsDoc, SolutionDoc, SolutionsDoc, TraceDoc};
use crate::solver;
use crate::syntax::{Literal, Program};
use crate::updates::{self, RepairScope, UpdateSolution};

/// Overrides the default search cap; the `--max-universe` flag wins over it.
pub const MAX_UNIVERSE_ENV: &str = "ABDUKIT_MAX_UNIVERSE";

#[derive(Parser, Debug)]
#[command(name = "abdukit", version, about = "Extended abduction and knowledge base updates")]
struct Cli {
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,
    #[arg(long, global = true, value_enum)]
    encoding: Option<AbdEncoding>,
    #[arg(long, global = true)]
    max_ground_rules: Option<usize>,
    #[arg(long, global = true)]
    max_universe: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Scope {
    /// Any rule may be removed.
    All,
    /// Only rules declared with `#variable` may be removed.
    Subset,
    /// Ground facts over the program's vocabulary may be added or removed.
    Facts,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
enum Stage {
    NormalForm,
    UpdateProgram,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Print all answer sets.
    Answersets { file: PathBuf },
    /// Explain observations using the `#abducible` rules.
    Explain {
        file: PathBuf,
        /// Observed literal; repeat to observe several at once.
        #[arg(long, allow_hyphen_values = true)]
        obs: Vec<String>,
        /// Literal observed to be false.
        #[arg(long = "neg-obs", allow_hyphen_values = true)]
        neg_obs: Vec<String>,
        /// Treat the single `--obs` as negative (anti-explanation).
        #[arg(long)]
        neg: bool,
        /// Restore consistency instead of explaining a literal.
        #[arg(long, conflicts_with_all = ["obs", "neg_obs", "neg"])]
        bot: bool,
        #[arg(long, value_enum, default_value_t = Mode::Credulous)]
        mode: Mode,
        /// Also print non-minimal explanations.
        #[arg(long)]
        all: bool,
        /// Print the normal form and the update program first.
        #[arg(long)]
        trace: bool,
    },
    /// Change `#variable` rules so that the goal holds.
    ViewInsert {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        goal: String,
    },
    /// Change `#variable` rules so that the goal no longer holds.
    ViewDelete {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        goal: String,
    },
    /// Change `#variable` rules so that the program becomes consistent.
    Maintain { file: PathBuf },
    /// Update the program in FILE1 by the program in FILE2.
    Update { file1: PathBuf, file2: PathBuf },
    InsertRule {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        rule: String,
    },
    DeleteRule {
        file: PathBuf,
        #[arg(long, allow_hyphen_values = true)]
        rule: String,
    },
    /// Remove inconsistency.
    Repair {
        file: PathBuf,
        #[arg(long, value_enum, default_value_t = Scope::All)]
        scope: Scope,
    },
    /// Print an intermediate program.
    Transform {
        file: PathBuf,
        #[arg(value_enum)]
        stage: Stage,
    },
}

/// Exit code and captured output of one invocation.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct Outcome {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

/// Runs with the process environment.
pub fn run<I, T>(args: I) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    run_with_env(args, std::env::var(MAX_UNIVERSE_ENV).ok().as_deref())
}

/// Runs with an explicit value for [`MAX_UNIVERSE_ENV`].
pub fn run_with_env<I, T>(args: I, max_universe_env: Option<&str>) -> Outcome
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = e.exit_code();
            let text = e.render().to_string();
            return if code == 0 {
                Outcome { code, stdout: text, stderr: String::new() }
            } else {
                Outcome { code: 2, stdout: String::new(), stderr: text }
            };
        }
    };
    let mut out = Outcome::default();
    match execute(&cli, max_universe_env, &mut out) {
        Ok(code) => out.code = code,
        Err(e) => {
            out.code = 2;
            let _ = writeln!(out.stderr, "error: {e}");
        }
    }
    out
}

fn config(cli: &Cli, env: Option<&str>) -> Result<EngineConfig> {
    let mut cfg = EngineConfig::default();
    if let Some(e) = cli.encoding {
        cfg.encoding = e;
    }
    if let Some(n) = cli.max_ground_rules {
        cfg.max_ground_rules = n;
    }
    if let Some(v) = env.filter(|v| !v.trim().is_empty()) {
        cfg.max_universe = v
            .trim()
            .parse()
            .map_err(|_| Error::Invalid(format!("{MAX_UNIVERSE_ENV}: `{v}` is not a count")))?;
    }
    if let Some(n) = cli.max_universe {
        cfg.max_universe = n;
    }
    Ok(cfg)
}

fn load(path: &Path) -> Result<SourceUnit> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Invalid(format!("{}: {e}", path.display())))?;
    parser::parse(&text)
}

fn ground_literal(text: &str) -> Result<Literal> {
    let l = parser::parse_literal(text)?;
    if !l.is_ground() {
        return Err(Error::NonGroundObservation(l.to_string()));
    }
    Ok(l)
}

fn execute(cli: &Cli, env: Option<&str>, out: &mut Outcome) -> Result<i32> {
    let cfg = config(cli, env)?;
    let json = cli.format == Format::Json;
    match &cli.command {
        Command::Answersets { file } => {
            let unit = load(file)?;
            let result = solver::solve(&unit.program, &cfg)?;
            if json {
                out.stdout = to_json(&AnswerSetsDoc::from(&result));
            } else {
                if result.is_empty() {
                    out.stdout.push_str("% no answer sets\n");
                }
                for s in &result.sets {
                    let _ = writeln!(out.stdout, "{s}");
                }
            }
            Ok(if result.is_consistent() { 0 } else { 1 })
        }
        Command::Explain { file, obs, neg_obs, neg, bot, mode, all, trace } => {
            let unit = load(file)?;
            let base = AbductiveProgram::new(unit.program, unit.abducibles);
            let (ap, observation) = observation(base, obs, neg_obs, *neg, *bot)?;
            let abducer = Abducer::new(&ap, &observation, &cfg)?;
            let list = abducer.solve(&observation, *mode, !*all)?;
            let trace_doc = trace.then(|| trace_of(&ap, &abducer));
            let mut solutions = Vec::new();
            for e in &list {
                solutions.push((e.clone(), updates::apply_delta(&ap.program, e)?));
            }
            if json {
                let doc = SolutionsDoc {
                    solutions: solutions.iter().map(|(e, p)| SolutionDoc::new(e, p)).collect(),
                    trace: trace_doc,
                };
                out.stdout = to_json(&doc);
            } else {
                if let Some(t) = &trace_doc {
                    write_trace(&mut out.stdout, t);
                }
                for (i, (e, _)) in solutions.iter().enumerate() {
                    let tag = if e.minimal || !*all { "" } else { " (not minimal)" };
                    let _ = writeln!(out.stdout, "% solution {}{tag}", i + 1);
                    write_delta(&mut out.stdout, e);
                }
                if solutions.is_empty() {
                    out.stdout.push_str("% no solution\n");
                }
            }
            Ok(if list.is_empty() { 1 } else { 0 })
        }
        Command::ViewInsert { file, goal } | Command::ViewDelete { file, goal } => {
            let unit = load(file)?;
            if unit.variables.is_empty() {
                return Err(Error::Invalid("no `#variable` directives in the input".into()));
            }
            let g = ground_literal(goal)?;
            if let Some(note) = updates::diagnose_goal(&unit.program, &unit.variables, &g) {
                let _ = writeln!(out.stderr, "warning: {note}");
            }
            let list = if matches!(cli.command, Command::ViewInsert { .. }) {
                updates::view_insert(&unit.program, &unit.variables, &g, &cfg)?
            } else {
                updates::view_delete(&unit.program, &unit.variables, &g, &cfg)?
            };
            Ok(emit(out, &list, json))
        }
        Command::Maintain { file } => {
            let unit = load(file)?;
            let list = updates::maintain_integrity(&unit.program, &unit.variables, &cfg)?;
            Ok(emit(out, &list, json))
        }
        Command::Update { file1, file2 } => {
            let p = load(file1)?.program;
            let q = load(file2)?.program;
            let list = updates::theory_update(&p, &q, &cfg)?;
            Ok(emit(out, &list, json))
        }
        Command::InsertRule { file, rule } | Command::DeleteRule { file, rule } => {
            let p = load(file)?.program;
            let r = parser::parse_rule(rule)?;
            let list = if matches!(cli.command, Command::InsertRule { .. }) {
                updates::insert_rule(&p, &r, &cfg)?
            } else {
                updates::delete_rule(&p, &r, &cfg)?
            };
            Ok(emit(out, &list, json))
        }
        Command::Repair { file, scope } => {
            let unit = load(file)?;
            let scope = match scope {
                Scope::All => RepairScope::AllRules,
                Scope::Subset => RepairScope::Subset(unit.variables.clone()),
                Scope::Facts => RepairScope::FactUniverse,
            };
            let list = updates::remove_inconsistency(&unit.program, &scope, &cfg)?;
            Ok(emit(out, &list, json))
        }
        Command::Transform { file, stage } => {
            let unit = load(file)?;
            let ap = AbductiveProgram::new(unit.program, unit.abducibles);
            let text = match stage {
                Stage::NormalForm => {
                    let (nf, _) = normal_form(&ap);
                    parser::render(&SourceUnit {
                        program: nf.program,
                        abducibles: nf.abducibles,
                        variables: Program::new(),
                    })
                }
                Stage::UpdateProgram => {
                    let abducer = Abducer::new(&ap, &Observation::Bot, &cfg)?;
                    program_text(&abducer.update_program().rules)
                }
            };
            if json {
                let rules: Vec<&str> = text.lines().collect();
                out.stdout = to_json(&rules);
            } else {
                out.stdout = text;
            }
            Ok(0)
        }
    }
}

fn observation(
    ap: AbductiveProgram,
    obs: &[String],
    neg_obs: &[String],
    neg: bool,
    bot: bool,
) -> Result<(AbductiveProgram, Observation)> {
    if bot {
        return Ok((ap, Observation::Bot));
    }
    let pos = obs.iter().map(|s| ground_literal(s)).collect::<Result<Vec<_>>>()?;
    let negs = neg_obs.iter().map(|s| ground_literal(s)).collect::<Result<Vec<_>>>()?;
    if neg {
        if pos.len() != 1 || !negs.is_empty() {
            return Err(Error::Invalid("`--neg` takes exactly one `--obs`".into()));
        }
        let l = pos[0].clone();
        return Ok((ap, Observation::Negative(l)));
    }
    match (pos.as_slice(), negs.as_slice()) {
        ([], []) => Err(Error::Invalid("give `--obs`, `--neg-obs` or `--bot`".into())),
        ([l], []) => Ok((ap.clone(), Observation::Positive(l.clone()))),
        _ => abduction::compile_observations(&ap, &pos, &negs),
    }
}

fn trace_of(ap: &AbductiveProgram, abducer: &Abducer) -> TraceDoc {
    let (nf, _) = normal_form(ap);
    let normal_form = parser::render(&SourceUnit {
        program: nf.program,
        abducibles: nf.abducibles,
        variables: Program::new(),
    });
    TraceDoc {
        normal_form: normal_form.lines().map(str::to_string).collect(),
        update_program: abducer.update_program().rules.iter().map(|r| r.to_string()).collect(),
    }
}

fn write_trace(buf: &mut String, t: &TraceDoc) {
    buf.push_str("% normal form\n");
    for l in &t.normal_form {
        let _ = writeln!(buf, "{l}");
    }
    buf.push_str("% update program\n");
    for l in &t.update_program {
        let _ = writeln!(buf, "{l}");
    }
}

fn program_text(p: &Program) -> String {
    p.iter().map(|r| format!("{r}\n")).collect()
}

fn write_delta(buf: &mut String, e: &abduction::Explanation) {
    for r in &e.add {
        let _ = writeln!(buf, "+{r}");
    }
    for r in &e.remove {
        let _ = writeln!(buf, "-{r}");
    }
}

fn emit(out: &mut Outcome, list: &[UpdateSolution], json: bool) -> i32 {
    if json {
        let doc = SolutionsDoc {
            solutions: list.iter().map(SolutionDoc::from).collect(),
            trace: None,
        };
        out.stdout = to_json(&doc);
    } else {
        for (i, s) in list.iter().enumerate() {
            let _ = writeln!(out.stdout, "% solution {}", i + 1);
            write_delta(&mut out.stdout, &s.delta);
            out.stdout.push_str("% program\n");
            out.stdout.push_str(&program_text(&s.program));
        }
        if list.is_empty() {
            out.stdout.push_str("% no solution\n");
        }
    }
    if list.is_empty() {
        1
    } else {
        0
    }
}

fn to_json<T: serde::Serialize>(value: &T) -> String {
    let mut s = serde_json::to_string_pretty(value).unwrap_or_else(|e| format!("{{\"error\": \"{e}\"}}"));
    s.push('\n');
    s
}
