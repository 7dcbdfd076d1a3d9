//! Herbrand instantiation of function-free programs.

use std::collections::{BTreeMap, BTreeSet};

use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::syntax::{Atom, BodyElement, Literal, Program, Rule, Term};

// Enumerated substitutions may far outnumber kept instances when builtins
// filter heavily; this bounds the work done on discarded ones.
const ENUMERATION_FACTOR: usize = 64;

/// Grounds `program` over its own constants.
pub fn ground(program: &Program, config: &EngineConfig) -> Result<Program> {
    ground_over(program, &program.constants(), config)
}

/// Grounds `program` over `constants` together with the program's own constants.
pub fn ground_over(
    program: &Program,
    constants: &BTreeSet<Term>,
    config: &EngineConfig,
) -> Result<Program> {
    let mut all = program.constants();
    all.extend(constants.iter().cloned());
    let mut out = Program::new();
    let mut enumerated = 0usize;
    for rule in program {
        for instance in Instances::new(rule, &all)? {
            enumerated += 1;
            if enumerated > config.max_ground_rules.saturating_mul(ENUMERATION_FACTOR) {
                return Err(Error::GroundingBudgetExceeded {
                    limit: config.max_ground_rules,
                });
            }
            if let Some(r) = evaluate_builtins(&instance) {
                out.insert(r);
                if out.len() > config.max_ground_rules {
                    return Err(Error::GroundingBudgetExceeded {
                        limit: config.max_ground_rules,
                    });
                }
            }
        }
    }
    Ok(out)
}

/// Every ground instance of `rule` over `constants`, builtins evaluated.
pub fn rule_instances(rule: &Rule, constants: &BTreeSet<Term>) -> Result<Vec<Rule>> {
    Ok(Instances::new(rule, constants)?
        .filter_map(|r| evaluate_builtins(&r))
        .collect())
}

/// Ground instances of `rule` paired with the values taken by its variables,
/// in order of first occurrence. Instances with a false builtin are dropped.
pub fn instances_with_bindings(
    rule: &Rule,
    constants: &BTreeSet<Term>,
) -> Result<Vec<(Vec<Term>, Rule)>> {
    let vars = rule.variables();
    if !vars.is_empty() && constants.is_empty() {
        return Err(Error::NoConstants);
    }
    let constants: Vec<Term> = constants.iter().cloned().collect();
    Ok(tuples(&constants, vars.len())
        .into_iter()
        .filter_map(|args| {
            let subst: BTreeMap<String, Term> =
                vars.iter().cloned().zip(args.iter().cloned()).collect();
            evaluate_builtins(&rule.substitute(&subst)).map(|r| (args, r))
        })
        .collect())
}

/// `p ∪ q` on ground instantiations over the combined constants.
pub fn program_union(p: &Program, q: &Program, config: &EngineConfig) -> Result<Program> {
    let constants: BTreeSet<Term> = p.constants().union(&q.constants()).cloned().collect();
    let mut out = ground_over(p, &constants, config)?;
    out.extend(ground_over(q, &constants, config)?.rules().iter().cloned());
    Ok(out)
}

/// `p \ q` on ground instantiations over the combined constants.
pub fn program_diff(p: &Program, q: &Program, config: &EngineConfig) -> Result<Program> {
    let constants: BTreeSet<Term> = p.constants().union(&q.constants()).cloned().collect();
    let gq = ground_over(q, &constants, config)?;
    Ok(ground_over(p, &constants, config)?
        .iter()
        .filter(|r| !gq.contains(r))
        .cloned()
        .collect())
}

/// Both polarities of every ground atom built from the program's predicates
/// and `constants`.
pub fn literal_universe(program: &Program, constants: &BTreeSet<Term>) -> BTreeSet<Literal> {
    let constants: Vec<Term> = constants.iter().cloned().collect();
    let mut out = BTreeSet::new();
    for (pred, arity) in program.predicates() {
        for args in tuples(&constants, arity) {
            let atom = Atom::new(pred.clone(), args);
            out.insert(Literal::neg(atom.clone()));
            out.insert(Literal::pos(atom));
        }
    }
    out
}

fn tuples(constants: &[Term], arity: usize) -> Vec<Vec<Term>> {
    let mut acc = vec![Vec::new()];
    for _ in 0..arity {
        acc = acc
            .into_iter()
            .flat_map(|prefix| {
                constants.iter().map(move |c| {
                    let mut t = prefix.clone();
                    t.push(c.clone());
                    t
                })
            })
            .collect();
    }
    acc
}

/// Drops the instance if a builtin is false; removes builtins that are true.
/// Non-ground builtins are left in place.
fn evaluate_builtins(rule: &Rule) -> Option<Rule> {
    if !rule.has_builtins() {
        return Some(rule.clone());
    }
    let mut body = BTreeSet::new();
    for b in &rule.body {
        match b {
            BodyElement::Builtin(c) => match c.evaluate() {
                Some(true) => {}
                Some(false) => return None,
                None => {
                    body.insert(b.clone());
                }
            },
            other => {
                body.insert(other.clone());
            }
        }
    }
    Some(Rule {
        head: rule.head.clone(),
        body,
    })
}

/// Lazy odometer over substitutions of a rule's variables.
struct Instances<'a> {
    rule: &'a Rule,
    vars: Vec<String>,
    constants: Vec<Term>,
    counter: Option<Vec<usize>>,
}

impl<'a> Instances<'a> {
    fn new(rule: &'a Rule, constants: &BTreeSet<Term>) -> Result<Self> {
        let vars = rule.variables();
        if !vars.is_empty() && constants.is_empty() {
            return Err(Error::NoConstants);
        }
        Ok(Instances {
            rule,
            counter: Some(vec![0; vars.len()]),
            vars,
            constants: constants.iter().cloned().collect(),
        })
    }
}

impl Iterator for Instances<'_> {
    type Item = Rule;

    fn next(&mut self) -> Option<Rule> {
        let counter = self.counter.as_mut()?;
        let subst: BTreeMap<String, Term> = self
            .vars
            .iter()
            .cloned()
            .zip(counter.iter().map(|&i| self.constants[i].clone()))
            .collect();
        let out = self.rule.substitute(&subst);
        let mut done = true;
        for slot in counter.iter_mut().rev() {
            *slot += 1;
            if *slot < self.constants.len() {
                done = false;
                break;
            }
            *slot = 0;
        }
        if done {
            self.counter = None;
        }
        Some(out)
    }
}
