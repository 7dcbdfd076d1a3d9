//! Explanations read off the answer sets of the update program.

use std::collections::BTreeSet;

use super::normal::{prepare, Prepared};
use super::update_program::{build_update_program, UpdateProgram};
use super::{check_observation, finish, AbductiveProgram, Explanation, Mode, Observation};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::reserved::{self, UpdateKind};
use crate::solver::{answer_sets, AnswerSetResult};
use crate::syntax::{BodyElement, Literal, Program, Rule};

type Pair = (BTreeSet<Literal>, BTreeSet<Literal>);

/// An abductive program compiled to its update program.
#[derive(Clone, Debug)]
pub struct Abducer {
    prepared: Prepared,
    up: UpdateProgram,
    config: EngineConfig,
}

impl Abducer {
    /// Compiles `ap`. The observation is needed up front because its
    /// constants take part in grounding.
    pub fn new(ap: &AbductiveProgram, obs: &Observation, config: &EngineConfig) -> Result<Self> {
        let extra = obs
            .literal()
            .map(|l| l.atom.args.iter().filter(|t| !t.is_var()).cloned().collect())
            .unwrap_or_default();
        let prepared = prepare(ap, &extra, config)?;
        let mut abducible: BTreeSet<Literal> = prepared.abducibles.clone();
        abducible.extend(prepared.ground_abducibles.facts().cloned());
        check_observation(obs, &abducible)?;
        let fact_level = AbductiveProgram::new(
            prepared.program.clone(),
            prepared.abducibles.iter().cloned().map(Rule::fact).collect(),
        );
        let up = build_update_program(&fact_level, config.encoding)?;
        Ok(Abducer {
            prepared,
            up,
            config: config.clone(),
        })
    }

    pub fn update_program(&self) -> &UpdateProgram {
        &self.up
    }

    /// The ground program with named rules, and its fact abducibles.
    pub fn fact_level(&self) -> AbductiveProgram {
        AbductiveProgram::new(
            self.prepared.program.clone(),
            self.prepared.abducibles.iter().cloned().map(Rule::fact).collect(),
        )
    }

    pub fn ground_program(&self) -> &Program {
        &self.prepared.ground_program
    }

    pub fn ground_abducibles(&self) -> &Program {
        &self.prepared.ground_abducibles
    }

    /// The source rule a fact abducible stands for.
    pub fn origin(&self, lit: &Literal) -> Option<&Rule> {
        self.prepared.origin.get(lit)
    }

    pub fn solve(&self, obs: &Observation, mode: Mode, minimal: bool) -> Result<Vec<Explanation>> {
        let pairs = match (obs, mode) {
            (Observation::Positive(g), Mode::Credulous) => self.candidates(&[goal_constraint(g, true)])?,
            (Observation::Positive(g), Mode::Skeptical) => {
                let refute = [Rule::constraint([BodyElement::Pos(g.clone())])];
                self.skeptical(&[goal_constraint(g, true)], &[], &refute)?
            }
            (Observation::Negative(g), Mode::Credulous) => self.candidates(&[goal_constraint(g, false)])?,
            (Observation::Negative(g), Mode::Skeptical) => {
                // explain a fresh G' with G' :- not G
                let mut taken = self.up.rules.literals();
                taken.insert(g.clone());
                let g2 = reserved::fresh("antigoal", &taken);
                let link = Rule::new([g2.clone()], [BodyElement::Naf(g.clone())]);
                let refute = [Rule::constraint([BodyElement::Pos(g2.clone())])];
                self.skeptical(&[link.clone(), goal_constraint(&g2, true)], &[link], &refute)?
            }
            (Observation::Bot, Mode::Credulous) => self.candidates(&[])?,
            (Observation::Bot, Mode::Skeptical) => return Err(Error::SkepticalBotUnsupported),
        };
        let list = pairs
            .into_iter()
            .map(|(e, f)| self.to_source(&e, &f, mode))
            .collect();
        Ok(finish(list, minimal))
    }

    /// Answer sets of the update program plus `extra`.
    pub fn answer_sets_with(&self, extra: &[Rule]) -> Result<AnswerSetResult> {
        answer_sets(&self.up.rules.extended(extra.iter().cloned()), &self.config)
    }

    fn candidates(&self, extra: &[Rule]) -> Result<BTreeSet<Pair>> {
        Ok(self
            .answer_sets_with(extra)?
            .consistent()
            .map(read_pair)
            .collect())
    }

    /// Candidates passing the inconsistency test of skeptical explanations:
    /// `(P \ F) ∪ E ∪ extra_program ∪ refute` has no consistent answer set.
    fn skeptical(&self, up_extra: &[Rule], extra_program: &[Rule], refute: &[Rule]) -> Result<BTreeSet<Pair>> {
        let mut out = BTreeSet::new();
        for (e, f) in self.candidates(up_extra)? {
            let changed = self.apply(&e, &f).extended(extra_program.iter().chain(refute).cloned());
            if !answer_sets(&changed, &self.config)?.is_consistent() {
                out.insert((e, f));
            }
        }
        Ok(out)
    }

    /// `(P \ F) ∪ E` on the fact level.
    fn apply(&self, e: &BTreeSet<Literal>, f: &BTreeSet<Literal>) -> Program {
        self.prepared
            .program
            .iter()
            .filter(|r| !r.as_fact().is_some_and(|l| f.contains(l)))
            .cloned()
            .chain(e.iter().cloned().map(Rule::fact))
            .collect()
    }

    fn to_source(&self, e: &BTreeSet<Literal>, f: &BTreeSet<Literal>, mode: Mode) -> Explanation {
        let origin = |l: &Literal| self.prepared.origin[l].clone();
        Explanation {
            add: e.iter().map(origin).collect(),
            remove: f.iter().map(origin).collect(),
            mode,
            minimal: false,
        }
    }
}

/// `:- not g` for a positive goal, `:- g` for a negative one.
fn goal_constraint(g: &Literal, positive: bool) -> Rule {
    let elem = if positive {
        BodyElement::Naf(g.clone())
    } else {
        BodyElement::Pos(g.clone())
    };
    Rule::constraint([elem])
}

fn read_pair(s: &BTreeSet<Literal>) -> Pair {
    let mut e = BTreeSet::new();
    let mut f = BTreeSet::new();
    for l in s {
        match reserved::update_atom(l) {
            Some((UpdateKind::Plus, a)) => {
                e.insert(a);
            }
            Some((UpdateKind::Minus, a)) => {
                f.insert(a);
            }
            None => {}
        }
    }
    (e, f)
}
