//! Extended abduction: explanations `(E, F)` that add the abducibles `E` to a
//! program and remove `F` from it so that an observation becomes true (or,
//! for anti-explanations, stops being true).
//!
//! Abducible rules are first replaced by named facts, the program is grounded,
//! and an update program is built whose answer sets encode candidate pairs
//! through update atoms. Results are reported as ground source rules; the
//! generated atoms never leave this module.

mod explain;
mod normal;
mod oracle;
mod update_program;

use std::cmp::Ordering;
use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::syntax::{BodyElement, Literal, Program, Rule};

pub use explain::Abducer;
pub use normal::{normal_form, normalize_abducible_heads, satisfies_assumptions, NameMap};
pub use oracle::{brute_force_explanations, normal_abduction_explanations, to_normal_abduction};
pub use update_program::{build_update_program, u_minimal_filter, UpdateProgram};

/// A background program `P` with abducibles `A`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AbductiveProgram {
    pub program: Program,
    pub abducibles: Program,
}

impl AbductiveProgram {
    pub fn new(program: Program, abducibles: Program) -> Self {
        AbductiveProgram {
            program,
            abducibles,
        }
    }

    /// Abducibles that are plain facts.
    pub fn abducible_facts(&self) -> impl Iterator<Item = &Literal> {
        self.abducibles.facts()
    }

    pub fn is_fact_only(&self) -> bool {
        self.abducibles.iter().all(Rule::is_fact)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Observation {
    /// Should become true.
    Positive(Literal),
    /// Should become false.
    Negative(Literal),
    /// The program should become consistent.
    Bot,
}

impl Observation {
    pub fn literal(&self) -> Option<&Literal> {
        match self {
            Observation::Positive(l) | Observation::Negative(l) => Some(l),
            Observation::Bot => None,
        }
    }
}

#[derive(
    Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize, clap::ValueEnum,
)]
#[serde(rename_all = "kebab-case")]
pub enum Mode {
    Credulous,
    Skeptical,
}

/// Ground abducibles to add (`add`) and remove (`remove`).
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Explanation {
    pub add: BTreeSet<Rule>,
    pub remove: BTreeSet<Rule>,
    pub mode: Mode,
    pub minimal: bool,
}

impl Explanation {
    pub fn size(&self) -> usize {
        self.add.len() + self.remove.len()
    }

    /// The pair without the mode and minimality tags.
    pub fn delta(&self) -> (BTreeSet<Rule>, BTreeSet<Rule>) {
        (self.add.clone(), self.remove.clone())
    }

    /// Whether `self` adds and removes no more than `other`.
    pub fn is_subpair_of(&self, other: &Explanation) -> bool {
        self.add.is_subset(&other.add) && self.remove.is_subset(&other.remove)
    }

    /// `(program \ remove) ∪ add`, assuming both sides are ground.
    pub fn apply_ground(&self, program: &Program) -> Program {
        program
            .iter()
            .filter(|r| !self.remove.contains(*r))
            .cloned()
            .chain(self.add.iter().cloned())
            .collect()
    }
}

// Fewer changes first, then lexicographic on (add, remove).
impl Ord for Explanation {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size()
            .cmp(&other.size())
            .then_with(|| self.add.cmp(&other.add))
            .then_with(|| self.remove.cmp(&other.remove))
            .then_with(|| self.mode.cmp(&other.mode))
            .then_with(|| self.minimal.cmp(&other.minimal))
    }
}

impl PartialOrd for Explanation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Explanation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let show = |set: &BTreeSet<Rule>| {
            set.iter()
                .map(|r| r.to_string().trim_end_matches('.').to_string())
                .collect::<Vec<_>>()
                .join(", ")
        };
        write!(f, "({{{}}}, {{{}}})", show(&self.add), show(&self.remove))
    }
}

/// Keeps the pairs that have no strictly smaller pair in `list`, marking them
/// minimal. The input must be duplicate-free.
pub(crate) fn minimal_only(list: Vec<Explanation>) -> Vec<Explanation> {
    let keep: Vec<bool> = list
        .iter()
        .map(|e| !list.iter().any(|o| o != e && o.is_subpair_of(e)))
        .collect();
    list.into_iter()
        .zip(keep)
        .filter(|(_, k)| *k)
        .map(|(mut e, _)| {
            e.minimal = true;
            e
        })
        .collect()
}

/// Sorts, deduplicates, and tags minimal pairs, optionally dropping the rest.
pub(crate) fn finish(mut list: Vec<Explanation>, minimal: bool) -> Vec<Explanation> {
    for e in &mut list {
        e.minimal = false;
    }
    list.sort();
    list.dedup();
    let minimal_set: BTreeSet<(BTreeSet<Rule>, BTreeSet<Rule>)> =
        minimal_only(list.clone()).iter().map(Explanation::delta).collect();
    for e in &mut list {
        e.minimal = minimal_set.contains(&e.delta());
    }
    if minimal {
        list.retain(|e| e.minimal);
    }
    list
}

/// Explanations of a positive observation.
pub fn explanations(
    ap: &AbductiveProgram,
    goal: &Literal,
    mode: Mode,
    minimal: bool,
    config: &crate::EngineConfig,
) -> Result<Vec<Explanation>> {
    let obs = Observation::Positive(goal.clone());
    Abducer::new(ap, &obs, config)?.solve(&obs, mode, minimal)
}

/// Anti-explanations of a negative observation or of `Bot`.
pub fn anti_explanations(
    ap: &AbductiveProgram,
    obs: &Observation,
    mode: Mode,
    minimal: bool,
    config: &crate::EngineConfig,
) -> Result<Vec<Explanation>> {
    if let Observation::Positive(l) = obs {
        return Err(Error::Invalid(format!(
            "`{l}` is a positive observation; anti-explanations need a negative one"
        )));
    }
    Abducer::new(ap, obs, config)?.solve(obs, mode, minimal)
}

/// Any observation, dispatched to explanations or anti-explanations.
pub fn solve(
    ap: &AbductiveProgram,
    obs: &Observation,
    mode: Mode,
    minimal: bool,
    config: &crate::EngineConfig,
) -> Result<Vec<Explanation>> {
    Abducer::new(ap, obs, config)?.solve(obs, mode, minimal)
}

/// Folds several observations into one: a fresh atom `g` with the rule
/// `g :- p1, ..., pm, not q1, ..., not qn`, observed positively.
pub fn compile_observations(
    ap: &AbductiveProgram,
    positives: &[Literal],
    negatives: &[Literal],
) -> Result<(AbductiveProgram, Observation)> {
    if positives.is_empty() && negatives.is_empty() {
        return Err(Error::Invalid("no observations given".into()));
    }
    let abducible: BTreeSet<&Literal> = ap.abducible_facts().collect();
    for l in positives.iter().chain(negatives) {
        if abducible.contains(l) {
            return Err(Error::AbducibleObservation(l.to_string()));
        }
    }
    let mut taken = ap.program.literals();
    taken.extend(ap.abducibles.literals());
    let goal = crate::reserved::fresh("goal", &taken);
    let body = positives
        .iter()
        .cloned()
        .map(BodyElement::Pos)
        .chain(negatives.iter().cloned().map(BodyElement::Naf));
    let mut out = ap.clone();
    out.program.insert(Rule::new([goal.clone()], body));
    Ok((out, Observation::Positive(goal)))
}

pub(crate) fn check_observation(
    obs: &Observation,
    abducible_literals: &BTreeSet<Literal>,
) -> Result<()> {
    if let Some(l) = obs.literal() {
        if !l.is_ground() {
            return Err(Error::NonGroundObservation(l.to_string()));
        }
        if abducible_literals.contains(l) {
            return Err(Error::AbducibleObservation(l.to_string()));
        }
    }
    Ok(())
}

/// The `(E, F)` pairs of `list`, without tags.
pub fn deltas(list: &[Explanation]) -> BTreeSet<(BTreeSet<Rule>, BTreeSet<Rule>)> {
    list.iter().map(Explanation::delta).collect()
}

pub(crate) type Origin = BTreeMap<Literal, Rule>;
