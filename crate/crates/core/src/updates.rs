//! Knowledge base updates reduced to extended abduction.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};

use crate::abduction::{self, AbductiveProgram, Explanation, Mode, Observation};
use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::ground::{ground_over, literal_universe, program_diff, program_union, rule_instances};
use crate::reserved;
use crate::solver::{self, AnswerSetResult};
use crate::syntax::{BodyElement, Literal, Program, Rule, Term};

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum UpdateKind {
    ViewInsert,
    ViewDelete,
    Integrity,
    Theory,
    RuleInsert,
    RuleDelete,
    InconsistencyRemoval,
}

/// An updated program together with the change that produced it.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateSolution {
    pub program: Program,
    pub delta: Explanation,
    pub kind: UpdateKind,
}

impl fmt::Display for UpdateSolution {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.delta.add {
            writeln!(f, "+{r}")?;
        }
        for r in &self.delta.remove {
            writeln!(f, "-{r}")?;
        }
        Ok(())
    }
}

/// What [`remove_inconsistency`] may change.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum RepairScope {
    /// Any rule of the program may be removed.
    AllRules,
    /// Only these rules, which must belong to the program, may be removed.
    Subset(Program),
    /// Any ground literal over the program's predicates and constants may be
    /// added or removed as a fact.
    FactUniverse,
}

/// `(program \ remove) ∪ add` where `remove` holds ground instances. A
/// non-ground rule with a removed instance is replaced by its remaining
/// instances; other rules keep their original form.
pub fn apply_delta(program: &Program, delta: &Explanation) -> Result<Program> {
    let mut constants = program.constants();
    for r in delta.add.iter().chain(&delta.remove) {
        constants.extend(r.terms().filter(|t| !t.is_var()).cloned());
    }
    let mut out = Program::new();
    for r in program {
        if r.is_ground() {
            if !delta.remove.contains(r) {
                out.insert(r.clone());
            }
            continue;
        }
        let instances = rule_instances(r, &constants)?;
        if instances.iter().any(|i| delta.remove.contains(i)) {
            out.extend(instances.into_iter().filter(|i| !delta.remove.contains(i)));
        } else {
            out.insert(r.clone());
        }
    }
    out.extend(delta.add.iter().cloned());
    Ok(out)
}

fn solutions(program: &Program, list: Vec<Explanation>, kind: UpdateKind) -> Result<Vec<UpdateSolution>> {
    list.into_iter()
        .map(|delta| {
            Ok(UpdateSolution {
                program: apply_delta(program, &delta)?,
                delta,
                kind,
            })
        })
        .collect()
}

/// A note on why `goal` can never be affected, if its predicate does not
/// occur in `p` or `v`.
pub fn diagnose_goal(p: &Program, v: &Program, goal: &Literal) -> Option<String> {
    let known = p
        .predicates()
        .union(&v.predicates())
        .any(|(name, arity)| *name == goal.atom.predicate && *arity == goal.atom.arity());
    (!known).then(|| {
        format!(
            "predicate {}/{} does not occur in the program",
            goal.atom.predicate,
            goal.atom.arity()
        )
    })
}

/// Minimal changes to the variable rules `v` after which `p` entails `goal`.
pub fn view_insert(p: &Program, v: &Program, goal: &Literal, config: &EngineConfig) -> Result<Vec<UpdateSolution>> {
    let ap = AbductiveProgram::new(p.clone(), v.clone());
    let list = abduction::explanations(&ap, goal, Mode::Skeptical, true, config)?;
    solutions(p, list, UpdateKind::ViewInsert)
}

/// Minimal changes to the variable rules `v` after which `p` no longer
/// entails `goal`.
pub fn view_delete(p: &Program, v: &Program, goal: &Literal, config: &EngineConfig) -> Result<Vec<UpdateSolution>> {
    let ap = AbductiveProgram::new(p.clone(), v.clone());
    let obs = Observation::Negative(goal.clone());
    let list = abduction::anti_explanations(&ap, &obs, Mode::Credulous, true, config)?;
    solutions(p, list, UpdateKind::ViewDelete)
}

/// Minimal changes to the variable rules `v` that make `p` consistent. The
/// integrity constraints of `p` must not be variable.
pub fn maintain_integrity(p: &Program, v: &Program, config: &EngineConfig) -> Result<Vec<UpdateSolution>> {
    let mut constants = p.constants();
    constants.extend(v.constants());
    let gv = ground_over(v, &constants, config)?;
    for c in ground_over(p, &constants, config)?.constraints() {
        if gv.contains(c) {
            return Err(Error::ConstraintInVariablePart(c.to_string()));
        }
    }
    let ap = AbductiveProgram::new(p.clone(), v.clone());
    let list = abduction::anti_explanations(&ap, &Observation::Bot, Mode::Credulous, true, config)?;
    solutions(p, list, UpdateKind::Integrity)
}

fn bot_repairs(program: &Program, abducibles: &Program, kind: UpdateKind, config: &EngineConfig) -> Result<Vec<UpdateSolution>> {
    let ap = AbductiveProgram::new(program.clone(), abducibles.clone());
    let list = abduction::anti_explanations(&ap, &Observation::Bot, Mode::Credulous, true, config)?;
    solutions(program, list, kind)
}

/// `Q` together with each maximal subset of `P` that is consistent with it.
pub fn theory_update(p: &Program, q: &Program, config: &EngineConfig) -> Result<Vec<UpdateSolution>> {
    theory_update_as(p, q, UpdateKind::Theory, config)
}

fn theory_update_as(p: &Program, q: &Program, kind: UpdateKind, config: &EngineConfig) -> Result<Vec<UpdateSolution>> {
    if !solver::consistent(q, config)? {
        return Err(Error::InconsistentUpdate);
    }
    let union = program_union(p, q, config)?;
    let variable = program_diff(p, q, config)?;
    let ap = AbductiveProgram::new(union, variable);
    let list = abduction::anti_explanations(&ap, &Observation::Bot, Mode::Credulous, true, config)?;
    // Report against the source rules rather than the ground union.
    let source = p.extended(q.iter().cloned());
    solutions(&source, list, kind)
}

/// Inserts `rule`, dropping a minimal set of other rules if needed.
pub fn insert_rule(p: &Program, rule: &Rule, config: &EngineConfig) -> Result<Vec<UpdateSolution>> {
    if p.contains(rule) {
        return Err(Error::RuleAlreadyPresent(rule.to_string()));
    }
    let q: Program = [rule.clone()].into_iter().collect();
    theory_update_as(p, &q, UpdateKind::RuleInsert, config)
}

/// Deletes `rule` and keeps a maximal consistent subset of what remains. The
/// deletion is phrased as inserting `:- γ` into a program where `rule` is
/// guarded by the fact `γ`.
pub fn delete_rule(p: &Program, rule: &Rule, config: &EngineConfig) -> Result<Vec<UpdateSolution>> {
    if !p.contains(rule) {
        return Err(Error::RuleNotPresent(rule.to_string()));
    }
    let mut taken = p.literals();
    taken.extend(rule.literals().cloned());
    let base = reserved::fresh("deleted", &taken);
    let args: Vec<Term> = rule.variables().into_iter().map(Term::Var).collect();
    let gamma = Literal::pos(crate::syntax::Atom::new(base.atom.predicate, args));
    let guarded = rule.with_body_atom(gamma.atom.clone());
    let mut pr = p.clone();
    pr.remove(rule);
    pr.insert(guarded.clone());
    pr.insert(Rule::fact(gamma.clone()));
    let kill: Program = [Rule::constraint([BodyElement::Pos(gamma.clone())])].into_iter().collect();
    let mut out = Vec::new();
    for s in theory_update_as(&pr, &kill, UpdateKind::RuleDelete, config)? {
        let mentions = |r: &Rule| r.literals().any(|l| l.atom.predicate == gamma.atom.predicate);
        let mut program: Program = s.program.iter().filter(|r| !mentions(r)).cloned().collect();
        program.remove(rule);
        let mut remove: BTreeSet<Rule> = s.delta.remove.iter().filter(|r| !mentions(r)).cloned().collect();
        remove.insert(rule.clone());
        out.push(UpdateSolution {
            program,
            delta: Explanation {
                add: BTreeSet::new(),
                remove,
                mode: Mode::Credulous,
                minimal: true,
            },
            kind: UpdateKind::RuleDelete,
        });
    }
    out.sort_by(|a, b| a.delta.cmp(&b.delta));
    Ok(out)
}

/// Minimal changes within `scope` that make `p` consistent.
pub fn remove_inconsistency(p: &Program, scope: &RepairScope, config: &EngineConfig) -> Result<Vec<UpdateSolution>> {
    let kind = UpdateKind::InconsistencyRemoval;
    match scope {
        RepairScope::AllRules => bot_repairs(p, p, kind, config),
        RepairScope::Subset(s) => {
            let mut constants = p.constants();
            constants.extend(s.constants());
            let gp = ground_over(p, &constants, config)?;
            for r in ground_over(s, &constants, config)?.iter() {
                if !gp.contains(r) {
                    return Err(Error::ScopeNotSubset(r.to_string()));
                }
            }
            bot_repairs(p, s, kind, config)
        }
        RepairScope::FactUniverse => {
            let universe: Program = literal_universe(p, &p.constants())
                .into_iter()
                .map(Rule::fact)
                .collect();
            bot_repairs(p, &universe, kind, config)
        }
    }
}

/// A single program whose answer sets cover every theory update of `P` by `Q`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MultiSolutionProgram {
    pub pi: Program,
    /// The name atoms `γ_R`, one per rule of `P`.
    pub delta_atoms: BTreeSet<Literal>,
}

/// `Q ∪ { Σ :- Γ, γ_R.  abd(γ_R) | R ∈ P }`
pub fn multi_solution_program(p: &Program, q: &Program, config: &EngineConfig) -> MultiSolutionProgram {
    let mut pi = q.clone();
    let mut delta_atoms = BTreeSet::new();
    for (k, r) in p.iter().enumerate() {
        let args = r.variables().into_iter().map(Term::Var).collect();
        let gamma = reserved::gamma(k + 1, args);
        pi.insert(r.with_body_atom(gamma.atom.clone()));
        let bar = reserved::shadow(&gamma);
        match config.encoding {
            crate::config::AbdEncoding::NafPair => {
                pi.insert(Rule::new([gamma.clone()], [BodyElement::Naf(bar.clone())]));
                pi.insert(Rule::new([bar.clone()], [BodyElement::Naf(gamma.clone())]));
            }
            crate::config::AbdEncoding::DisjunctiveFact => {
                pi.insert(Rule::new([gamma.clone(), bar], []));
            }
        }
        delta_atoms.insert(gamma);
    }
    MultiSolutionProgram { pi, delta_atoms }
}

/// Consistent answer sets of `Π` whose name atoms are not strictly contained
/// in those of another consistent answer set.
pub fn delta_maximal_answer_sets(m: &MultiSolutionProgram, config: &EngineConfig) -> Result<AnswerSetResult> {
    let all = solver::solve(&m.pi, config)?;
    let names = |s: &BTreeSet<Literal>| -> BTreeSet<Literal> { s.iter().filter(|l| reserved::is_gamma(l)).cloned().collect() };
    let projections: Vec<BTreeSet<Literal>> = all.consistent().map(names).collect();
    let kept = all.consistent().filter(|s| {
        let mine = names(s);
        !projections.iter().any(|t| t.len() > mine.len() && mine.is_subset(t))
    });
    Ok(AnswerSetResult::from_consistent(kept.cloned()))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::parser::{parse, parse_literal, parse_rule};

    fn prog(src: &str) -> Program {
        parse(src).unwrap().program
    }

    fn cfg() -> EngineConfig {
        EngineConfig::default()
    }

    #[test]
    fn apply_delta_splits_non_ground_rules() {
        let p = prog("p(X) :- q(X). q(a). q(b).");
        let delta = Explanation {
            add: BTreeSet::new(),
            remove: [parse_rule("p(a) :- q(a).").unwrap()].into(),
            mode: Mode::Credulous,
            minimal: true,
        };
        assert_eq!(apply_delta(&p, &delta).unwrap(), prog("p(b) :- q(b). q(a). q(b)."));
    }

    #[test]
    fn deleting_a_fact_that_leaves_a_consistent_program() {
        let p = prog("p :- q. q.");
        let s = delete_rule(&p, &parse_rule("q.").unwrap(), &cfg()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].program, prog("p :- q."));
    }

    #[test]
    fn consistent_program_needs_no_maintenance() {
        let p = prog("p. q :- p.");
        let s = maintain_integrity(&p, &prog("p."), &cfg()).unwrap();
        assert_eq!(s.len(), 1);
        assert_eq!(s[0].delta.size(), 0);
        assert_eq!(s[0].program, p);
    }

    #[test]
    fn constraints_may_not_be_variable() {
        let p = prog(":- p. p.");
        assert!(matches!(
            maintain_integrity(&p, &prog(":- p."), &cfg()),
            Err(Error::ConstraintInVariablePart(_))
        ));
    }

    #[test]
    fn inconsistent_update_is_reported() {
        assert_eq!(
            theory_update(&prog("p."), &prog("q. -q."), &cfg()),
            Err(Error::InconsistentUpdate)
        );
    }

    #[test]
    fn scope_must_be_in_program() {
        assert!(matches!(
            remove_inconsistency(&prog("p."), &RepairScope::Subset(prog("q.")), &cfg()),
            Err(Error::ScopeNotSubset(_))
        ));
    }

    #[test]
    fn empty_old_program_gives_new_one() {
        let m = multi_solution_program(&Program::new(), &prog("p :- not q."), &cfg());
        assert_eq!(m.pi, prog("p :- not q."));
        let d = delta_maximal_answer_sets(&m, &cfg()).unwrap();
        assert_eq!(d.sets.len(), 1);
    }

    #[test]
    fn unknown_goal_is_diagnosed() {
        let p = prog("p.");
        assert!(diagnose_goal(&p, &Program::new(), &parse_literal("zz").unwrap()).is_some());
        assert!(diagnose_goal(&p, &Program::new(), &parse_literal("p").unwrap()).is_none());
    }
}
