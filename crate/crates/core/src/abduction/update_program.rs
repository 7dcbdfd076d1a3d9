use std::collections::BTreeSet;

use super::AbductiveProgram;
use crate::config::AbdEncoding;
use crate::error::{Error, Result};
use crate::reserved;
use crate::solver::AnswerSetResult;
use crate::syntax::{BodyElement, Literal, Program, Rule};

/// `(P \ A) ∪ UR` for a ground program with fact abducibles.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct UpdateProgram {
    pub rules: Program,
    /// `+a` for each abducible not in the program.
    pub ua_plus: BTreeSet<Literal>,
    /// `-a` for each abducible in the program.
    pub ua_minus: BTreeSet<Literal>,
    pub shadows: BTreeSet<Literal>,
}

impl UpdateProgram {
    pub fn update_atoms(&self) -> BTreeSet<Literal> {
        self.ua_plus.union(&self.ua_minus).cloned().collect()
    }

    /// `s ∩ UA`
    pub fn projection(&self, s: &BTreeSet<Literal>) -> BTreeSet<Literal> {
        s.iter()
            .filter(|l| self.ua_plus.contains(*l) || self.ua_minus.contains(*l))
            .cloned()
            .collect()
    }
}

/// Builds the update program. `ap` must be ground with fact abducibles only.
pub fn build_update_program(ap: &AbductiveProgram, encoding: AbdEncoding) -> Result<UpdateProgram> {
    if !ap.is_fact_only() {
        return Err(Error::Invalid(
            "update programs need fact abducibles; apply the normal form first".into(),
        ));
    }
    if let Some(r) = ap.program.iter().chain(&ap.abducibles).find(|r| !r.is_ground()) {
        return Err(Error::NonGroundRule(r.to_string()));
    }
    let abducibles: BTreeSet<Literal> = ap.abducible_facts().cloned().collect();
    let mut rules: Program = ap
        .program
        .iter()
        .filter(|r| !r.as_fact().is_some_and(|l| abducibles.contains(l)))
        .cloned()
        .collect();
    let mut up = UpdateProgram {
        rules: Program::new(),
        ua_plus: BTreeSet::new(),
        ua_minus: BTreeSet::new(),
        shadows: BTreeSet::new(),
    };
    for a in &abducibles {
        let bar = reserved::shadow(a);
        match encoding {
            AbdEncoding::NafPair => {
                rules.insert(Rule::new([a.clone()], [BodyElement::Naf(bar.clone())]));
                rules.insert(Rule::new([bar.clone()], [BodyElement::Naf(a.clone())]));
            }
            AbdEncoding::DisjunctiveFact => {
                rules.insert(Rule::new([a.clone(), bar.clone()], []));
            }
        }
        up.shadows.insert(bar);
        if ap.program.contains(&Rule::fact(a.clone())) {
            let minus = reserved::minus(a);
            rules.insert(Rule::new([minus.clone()], [BodyElement::Naf(a.clone())]));
            up.ua_minus.insert(minus);
        } else {
            let plus = reserved::plus(a);
            rules.insert(Rule::new([plus.clone()], [BodyElement::Pos(a.clone())]));
            up.ua_plus.insert(plus);
        }
    }
    up.rules = rules;
    Ok(up)
}

/// Keeps the consistent answer sets whose update-atom projection is minimal.
pub fn u_minimal_filter(result: &AnswerSetResult, ua: &BTreeSet<Literal>) -> AnswerSetResult {
    let proj = |s: &BTreeSet<Literal>| -> BTreeSet<Literal> { s.intersection(ua).cloned().collect() };
    let projections: Vec<BTreeSet<Literal>> = result.consistent().map(proj).collect();
    let kept = result.consistent().filter(|s| {
        let p = proj(s);
        !projections.iter().any(|t| t.len() < p.len() && t.is_subset(&p))
    });
    AnswerSetResult::from_consistent(kept.cloned())
}
