//! Independent routes to the same explanations, for cross-checking: direct
//! enumeration of `(E, F)` against the definitions, and enumeration of
//! hypotheses after translating to normal abduction.

use std::collections::{BTreeMap, BTreeSet};

use super::normal::prepare;
use super::{check_observation, finish, AbductiveProgram, Explanation, Mode, Observation};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::reserved;
use crate::solver::answer_sets_of;
use crate::syntax::{BodyElement, Literal, Program, Rule, Term};

fn observation_constants(obs: &Observation) -> BTreeSet<Term> {
    obs.literal()
        .map(|l| l.atom.args.iter().filter(|t| !t.is_var()).cloned().collect())
        .unwrap_or_default()
}

/// Whether the ground rules `q` meet the observation under `mode`,
/// including consistency.
fn accepts<'a>(
    q: impl IntoIterator<Item = &'a Rule>,
    obs: &Observation,
    mode: Mode,
    config: &EngineConfig,
) -> Result<bool> {
    let result = answer_sets_of(q, config)?;
    if !result.is_consistent() {
        return Ok(false);
    }
    let mut sets = result.consistent();
    Ok(match (obs, mode) {
        (Observation::Positive(g), Mode::Skeptical) => sets.all(|s| s.contains(g)),
        (Observation::Positive(g), Mode::Credulous) => sets.any(|s| s.contains(g)),
        (Observation::Negative(g), Mode::Skeptical) => sets.all(|s| !s.contains(g)),
        (Observation::Negative(g), Mode::Credulous) => sets.any(|s| !s.contains(g)),
        (Observation::Bot, Mode::Credulous) => true,
        (Observation::Bot, Mode::Skeptical) => return Err(Error::SkepticalBotUnsupported),
    })
}

fn subsets<T: Clone>(items: &[T]) -> impl Iterator<Item = Vec<T>> + '_ {
    (0..(1u64 << items.len())).map(move |mask| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| mask & (1 << i) != 0)
            .map(|(_, x)| x.clone())
            .collect()
    })
}

/// Enumerates every `E ⊆ A \ P` and `F ⊆ A ∩ P` over ground instances and
/// tests the definition of the requested (anti-)explanation directly.
pub fn brute_force_explanations(
    ap: &AbductiveProgram,
    obs: &Observation,
    mode: Mode,
    minimal: bool,
    config: &EngineConfig,
) -> Result<Vec<Explanation>> {
    if matches!((obs, mode), (Observation::Bot, Mode::Skeptical)) {
        return Err(Error::SkepticalBotUnsupported);
    }
    let prepared = prepare(ap, &observation_constants(obs), config)?;
    check_observation(obs, &prepared.ground_abducibles.facts().cloned().collect())?;
    let p = &prepared.ground_program;
    let (removable, addable): (Vec<Rule>, Vec<Rule>) =
        prepared.ground_abducibles.iter().cloned().partition(|r| p.contains(r));
    let size = removable.len() + addable.len();
    if size > config.oracle_cap {
        return Err(Error::OracleBudgetExceeded {
            size,
            limit: config.oracle_cap,
        });
    }
    let mut out = Vec::new();
    for e in subsets(&addable) {
        for f in subsets(&removable) {
            let cand = Explanation {
                add: e.iter().cloned().collect(),
                remove: f.iter().cloned().collect(),
                mode,
                minimal: false,
            };
            let q = p.iter().filter(|r| !cand.remove.contains(*r)).chain(&cand.add);
            if accepts(q, obs, mode, config)? {
                out.push(cand);
            }
        }
    }
    Ok(finish(out, minimal))
}

/// Translates a ground abductive program with fact abducibles into one where
/// abducibles are only ever added: each `a ∈ A ∩ P` becomes `a :- not a'`
/// with a fresh abducible `a'`. Returns the program and the map `a' ↦ a`.
pub fn to_normal_abduction(ap: &AbductiveProgram) -> (AbductiveProgram, BTreeMap<Literal, Literal>) {
    let abducibles: BTreeSet<&Literal> = ap.abducible_facts().collect();
    let mut program = Program::new();
    let mut hyps = Program::new();
    let mut map = BTreeMap::new();
    for r in &ap.program {
        match r.as_fact() {
            Some(a) if abducibles.contains(a) => {
                let off = reserved::off(a);
                program.insert(Rule::new([a.clone()], [BodyElement::Naf(off.clone())]));
                hyps.insert(Rule::fact(off.clone()));
                map.insert(off, a.clone());
            }
            _ => {
                program.insert(r.clone());
            }
        }
    }
    for a in abducibles {
        if !ap.program.contains(&Rule::fact(a.clone())) {
            hyps.insert(Rule::fact(a.clone()));
        }
    }
    (AbductiveProgram::new(program, hyps), map)
}

/// Explanations through the translation to normal abduction: hypotheses
/// `H` are only added, and `H` maps back to `E = H ∩ (A \ P)` and
/// `F = { a | a' ∈ H }`.
pub fn normal_abduction_explanations(
    ap: &AbductiveProgram,
    obs: &Observation,
    mode: Mode,
    minimal: bool,
    config: &EngineConfig,
) -> Result<Vec<Explanation>> {
    if matches!((obs, mode), (Observation::Bot, Mode::Skeptical)) {
        return Err(Error::SkepticalBotUnsupported);
    }
    let prepared = prepare(ap, &observation_constants(obs), config)?;
    let mut abducible = prepared.abducibles.clone();
    abducible.extend(prepared.ground_abducibles.facts().cloned());
    check_observation(obs, &abducible)?;
    let fact_level = AbductiveProgram::new(
        prepared.program.clone(),
        prepared.abducibles.iter().cloned().map(Rule::fact).collect(),
    );
    let (normal, off) = to_normal_abduction(&fact_level);
    let hyps: Vec<Literal> = normal.abducible_facts().cloned().collect();
    if hyps.len() > config.oracle_cap {
        return Err(Error::OracleBudgetExceeded {
            size: hyps.len(),
            limit: config.oracle_cap,
        });
    }
    let mut out = Vec::new();
    for h in subsets(&hyps) {
        let facts: Vec<Rule> = h.iter().cloned().map(Rule::fact).collect();
        if !accepts(normal.program.iter().chain(&facts), obs, mode, config)? {
            continue;
        }
        let origin = |l: &Literal| prepared.origin[l].clone();
        let mut add = BTreeSet::new();
        let mut remove = BTreeSet::new();
        for l in &h {
            match off.get(l) {
                Some(a) => remove.insert(origin(a)),
                None => add.insert(origin(l)),
            };
        }
        out.push(Explanation {
            add,
            remove,
            mode,
            minimal: false,
        });
    }
    Ok(finish(out, minimal))
}
