//! Naming abducible rules, the head-abducible device, and the ground
//! fact-level form every computation starts from.

use std::collections::{BTreeMap, BTreeSet};

use super::{AbductiveProgram, Origin};
use crate::config::EngineConfig;
use crate::error::Result;
use crate::ground::{ground_over, instances_with_bindings};
use crate::reserved;
use crate::syntax::{Literal, Program, Rule, Term};

/// Names of abducible rules. A fact is its own name.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct NameMap {
    names: BTreeMap<Rule, Literal>,
}

impl NameMap {
    pub fn name(&self, rule: &Rule) -> Option<Literal> {
        if let Some(l) = rule.as_fact() {
            return Some(l.clone());
        }
        self.names
            .get(&crate::syntax::canonical_form(rule))
            .cloned()
    }

    pub fn rule(&self, name: &Literal) -> Option<&Rule> {
        self.names.iter().find(|(_, n)| *n == name).map(|(r, _)| r)
    }

    pub fn iter(&self) -> impl Iterator<Item = (&Rule, &Literal)> {
        self.names.iter()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }
}

/// Replaces every abducible that is not a plain fact by a named fact. Rule
/// `R = Σ :- Γ` becomes `Σ :- Γ, γ` with `γ` over the variables of `R`, and
/// `γ` becomes a fact when `R` is in the program.
pub fn normal_form(ap: &AbductiveProgram) -> (AbductiveProgram, NameMap) {
    let mut map = NameMap::default();
    let mut program = Program::new();
    let mut abducibles = Program::new();
    let mut k = 0;
    for r in &ap.abducibles {
        if r.is_fact() {
            abducibles.insert(r.clone());
            continue;
        }
        k += 1;
        let args = r.variables().into_iter().map(Term::Var).collect();
        let gamma = reserved::gamma(k, args);
        map.names.insert(r.clone(), gamma.clone());
        program.insert(r.with_body_atom(gamma.atom.clone()));
        abducibles.insert(Rule::fact(gamma.clone()));
        if ap.program.contains(r) {
            program.insert(Rule::fact(gamma));
        }
    }
    for r in &ap.program {
        if map.names.contains_key(r) {
            continue;
        }
        program.insert(r.clone());
    }
    (AbductiveProgram::new(program, abducibles), map)
}

/// Whether every program rule whose head meets the abducible facts is a
/// (disjunctive) fact made only of abducibles, and every such disjunctive
/// fact is itself abducible. `ap` must be ground.
pub fn satisfies_assumptions(ap: &AbductiveProgram) -> bool {
    let facts: BTreeSet<&Literal> = ap.abducible_facts().collect();
    ap.program.iter().all(|r| {
        let meets = r.head.iter().any(|l| facts.contains(l));
        let all_abducible = r.head.iter().all(|l| facts.contains(l));
        let heads_ok = !meets || (all_abducible && r.body.is_empty());
        let disjunctive_ok = !(r.is_disjunctive_fact() && r.head.len() > 1 && all_abducible)
            || ap.abducibles.contains(r);
        heads_ok && disjunctive_ok
    })
}

/// Establishes the head-abducible assumption on the ground instantiation of
/// `ap`: an abducible fact `a` occurring in a non-fact head, or next to a
/// non-abducible, gets a fresh abducible `a'` and the rule `a :- a'`, and `a'`
/// replaces `a` in the facts built from abducibles only.
pub fn normalize_abducible_heads(
    ap: &AbductiveProgram,
    config: &EngineConfig,
) -> Result<AbductiveProgram> {
    let mut constants = ap.program.constants();
    constants.extend(ap.abducibles.constants());
    let mut program = ground_over(&ap.program, &constants, config)?;
    let ground_abducibles = ground_over(&ap.abducibles, &constants, config)?;
    let mut facts: BTreeSet<Literal> = ground_abducibles.facts().cloned().collect();
    head_device(&mut program, &mut facts);
    let mut abducibles: Program = ground_abducibles
        .iter()
        .filter(|r| !r.is_fact())
        .cloned()
        .collect();
    abducibles.extend(facts.into_iter().map(Rule::fact));
    Ok(AbductiveProgram::new(program, abducibles))
}

/// Applies the device in place and returns the map from each fresh
/// abducible to the literal it stands for.
fn head_device(program: &mut Program, abducibles: &mut BTreeSet<Literal>) -> BTreeMap<Literal, Literal> {
    let offending: BTreeSet<Literal> = abducibles
        .iter()
        .filter(|a| {
            program.iter().any(|r| {
                r.head.contains(*a)
                    && (!r.body.is_empty() || !r.head.iter().all(|l| abducibles.contains(l)))
            })
        })
        .cloned()
        .collect();
    if offending.is_empty() {
        return BTreeMap::new();
    }
    let mut out = Program::new();
    for r in program.iter() {
        let abducible_fact = r.is_disjunctive_fact() && r.head.iter().all(|l| abducibles.contains(l));
        if abducible_fact {
            out.insert(Rule::new(
                r.head.iter().map(|l| {
                    if offending.contains(l) {
                        reserved::prime(l)
                    } else {
                        l.clone()
                    }
                }),
                [],
            ));
        } else {
            out.insert(r.clone());
        }
    }
    let mut primed = BTreeMap::new();
    for a in &offending {
        let p = reserved::prime(a);
        out.insert(Rule::new(
            [a.clone()],
            [crate::syntax::BodyElement::Pos(p.clone())],
        ));
        abducibles.remove(a);
        abducibles.insert(p.clone());
        primed.insert(p, a.clone());
    }
    *program = out;
    primed
}

/// The ground, fact-level form of an abductive program.
#[derive(Clone, Debug)]
pub(crate) struct Prepared {
    /// Ground instantiation of the source program.
    pub ground_program: Program,
    /// Ground abducibles, including disjunctive facts of the program that
    /// consist of abducibles only.
    pub ground_abducibles: Program,
    /// Program with named rules and the head device applied.
    pub program: Program,
    /// Fact abducibles of `program`.
    pub abducibles: BTreeSet<Literal>,
    /// Source rule behind each fact abducible.
    pub origin: Origin,
}

pub(crate) fn prepare(
    ap: &AbductiveProgram,
    extra_constants: &BTreeSet<Term>,
    config: &EngineConfig,
) -> Result<Prepared> {
    let mut constants = ap.program.constants();
    constants.extend(ap.abducibles.constants());
    constants.extend(extra_constants.iter().cloned());
    let ground_program = ground_over(&ap.program, &constants, config)?;

    let mut ground_abducibles = Program::new();
    let mut names: BTreeMap<Rule, Literal> = BTreeMap::new();
    let mut facts: BTreeSet<Literal> = BTreeSet::new();
    let mut k = 0;
    for r in &ap.abducibles {
        let instances = instances_with_bindings(r, &constants)?;
        if r.is_fact() {
            for (_, g) in instances {
                facts.extend(g.head.iter().cloned());
                ground_abducibles.insert(g);
            }
            continue;
        }
        k += 1;
        for (args, g) in instances {
            ground_abducibles.insert(g.clone());
            names.entry(g).or_insert_with(|| reserved::gamma(k, args));
        }
    }
    for r in &ground_program {
        if r.is_disjunctive_fact()
            && r.head.len() > 1
            && r.head.iter().all(|l| facts.contains(l))
            && !names.contains_key(r)
        {
            k += 1;
            names.insert(r.clone(), reserved::gamma(k, Vec::new()));
            ground_abducibles.insert(r.clone());
        }
    }

    let mut program = Program::new();
    for r in &ground_program {
        match names.get(r) {
            Some(gamma) => {
                program.insert(r.with_body_atom(gamma.atom.clone()));
                program.insert(Rule::fact(gamma.clone()));
            }
            None => {
                program.insert(r.clone());
            }
        }
    }
    for (r, gamma) in &names {
        program.insert(r.with_body_atom(gamma.atom.clone()));
    }
    let mut abducibles: BTreeSet<Literal> = facts.clone();
    abducibles.extend(names.values().cloned());

    let primed = head_device(&mut program, &mut abducibles);

    let mut origin = Origin::new();
    for a in &abducibles {
        let source = if let Some(orig) = primed.get(a) {
            Rule::fact(orig.clone())
        } else if let Some((r, _)) = names.iter().find(|(_, g)| *g == a) {
            r.clone()
        } else {
            Rule::fact(a.clone())
        };
        origin.insert(a.clone(), source);
    }
    Ok(Prepared {
        ground_program,
        ground_abducibles,
        program,
        abducibles,
        origin,
    })
}
