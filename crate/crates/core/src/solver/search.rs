//! Answer-set enumeration by propagation and branching.
//!
//! Only literals that occur in some rule head can be true in an answer set,
//! so the search runs over head literals alone. Propagation uses the rule
//! clauses, the requirement that every true literal has a supporting rule,
//! and mutual exclusion of complementary literals. Each total assignment is
//! then checked for minimality against its reduct.

use std::collections::{BTreeMap, BTreeSet, HashMap};

use super::sat::{satisfiable, Lit};
use crate::error::{Error, Result};
use crate::syntax::{Atom, Literal, Rule};

#[derive(Clone, Debug)]
struct CRule {
    head: Vec<usize>,
    pos: Vec<usize>,
    naf: Vec<usize>,
    // false when the source rule had `not` literals, even underivable ones
    source_naf_free: bool,
}

pub(crate) struct Compiled {
    lits: Vec<Literal>,
    rules: Vec<CRule>,
    supports: Vec<Vec<usize>>,
    complement: Vec<Option<usize>>,
    // Computed on the source rules: the contradictory set makes every body
    // literal true, including literals no head can derive.
    naf_free_constraint: bool,
}

pub(crate) struct Outcome {
    pub consistent: Vec<BTreeSet<Literal>>,
    pub contradictory: bool,
}

type Assign = Vec<Option<bool>>;

impl Compiled {
    pub(crate) fn new<'a>(rules: impl IntoIterator<Item = &'a Rule>) -> Self {
        let rules: Vec<&Rule> = rules.into_iter().collect();
        let heads: BTreeSet<&Literal> = rules.iter().flat_map(|r| r.head.iter()).collect();
        let lits: Vec<Literal> = heads.into_iter().cloned().collect();
        let index: HashMap<(&Atom, bool), usize> =
            lits.iter().enumerate().map(|(i, l)| ((&l.atom, l.negated), i)).collect();
        let find = |l: &Literal| index.get(&(&l.atom, l.negated)).copied();
        let mut compiled = Vec::new();
        'rules: for r in &rules {
            let mut pos = Vec::new();
            for l in r.positive_body() {
                match find(l) {
                    Some(i) => pos.push(i),
                    // never derivable, so the body is never true
                    None => continue 'rules,
                }
            }
            // `not l` on an underivable literal is always true
            let naf = r.naf_body().filter_map(find).collect();
            let head = r.head.iter().filter_map(find).collect();
            compiled.push(CRule {
                head,
                pos,
                naf,
                source_naf_free: r.is_naf_free(),
            });
        }
        let mut supports = vec![Vec::new(); lits.len()];
        for (ri, r) in compiled.iter().enumerate() {
            for &h in &r.head {
                supports[h].push(ri);
            }
        }
        let complement = lits
            .iter()
            .map(|l| index.get(&(&l.atom, !l.negated)).copied())
            .collect();
        let naf_free_constraint = rules
            .iter()
            .any(|r| r.is_constraint() && r.is_naf_free());
        Compiled {
            lits,
            rules: compiled,
            supports,
            complement,
            naf_free_constraint,
        }
    }

    /// Literals left open after propagation at the root that the search could
    /// actually branch on: those under negation as failure, and those in a
    /// disjunctive head with more than one open literal.
    pub(crate) fn open_choices(&self) -> Option<usize> {
        let mut assign = vec![None; self.lits.len()];
        if !self.propagate(&mut assign) {
            return None;
        }
        let mut choice = vec![false; self.lits.len()];
        for r in &self.rules {
            for &n in &r.naf {
                choice[n] = true;
            }
            let open: Vec<usize> = r.head.iter().copied().filter(|&h| assign[h].is_none()).collect();
            if open.len() > 1 {
                for h in open {
                    choice[h] = true;
                }
            }
        }
        Some(
            (0..self.lits.len())
                .filter(|&i| choice[i] && assign[i].is_none())
                .count(),
        )
    }

    pub(crate) fn solve(&self, max_universe: usize) -> Result<Outcome> {
        let contradictory = self.contradictory_is_answer_set();
        if contradictory || !self.not_free_has_consistent_model() {
            return Ok(Outcome {
                consistent: Vec::new(),
                contradictory,
            });
        }
        if let Some(open) = self.open_choices() {
            if open > max_universe {
                return Err(Error::CandidateBudgetExceeded {
                    size: open,
                    limit: max_universe,
                });
            }
        }
        let mut found = Vec::new();
        self.branch(vec![None; self.lits.len()], &mut found);
        found.sort();
        found.dedup();
        Ok(Outcome {
            consistent: found,
            contradictory: false,
        })
    }

    fn branch(&self, mut assign: Assign, found: &mut Vec<BTreeSet<Literal>>) {
        if !self.propagate(&mut assign) {
            return;
        }
        match assign.iter().position(Option::is_none) {
            Some(v) => {
                for value in [true, false] {
                    let mut next = assign.clone();
                    next[v] = Some(value);
                    self.branch(next, found);
                }
            }
            None => {
                if self.is_minimal(&assign) {
                    found.push(
                        (0..self.lits.len())
                            .filter(|&i| assign[i] == Some(true))
                            .map(|i| self.lits[i].clone())
                            .collect(),
                    );
                }
            }
        }
    }

    /// Returns false on conflict.
    fn propagate(&self, assign: &mut Assign) -> bool {
        loop {
            let mut changed = false;
            for r in &self.rules {
                match self.propagate_rule(r, assign) {
                    None => return false,
                    Some(c) => changed |= c,
                }
            }
            for l in 0..self.lits.len() {
                match self.propagate_support(l, assign) {
                    None => return false,
                    Some(c) => changed |= c,
                }
                if assign[l] == Some(true) {
                    if let Some(c) = self.complement[l] {
                        match assign[c] {
                            Some(true) => return false,
                            None => {
                                assign[c] = Some(false);
                                changed = true;
                            }
                            Some(false) => {}
                        }
                    }
                }
            }
            if !changed {
                return true;
            }
        }
    }

    fn propagate_rule(&self, r: &CRule, assign: &mut Assign) -> Option<bool> {
        let mut open_body = Vec::new();
        for &p in &r.pos {
            match assign[p] {
                Some(false) => return Some(false),
                None => open_body.push((p, false)),
                Some(true) => {}
            }
        }
        for &n in &r.naf {
            match assign[n] {
                Some(true) => return Some(false),
                None => open_body.push((n, true)),
                Some(false) => {}
            }
        }
        let mut open_head = Vec::new();
        for &h in &r.head {
            match assign[h] {
                Some(true) => return Some(false),
                None => open_head.push(h),
                Some(false) => {}
            }
        }
        match (open_body.len(), open_head.len()) {
            (0, 0) => None,
            (0, 1) => {
                assign[open_head[0]] = Some(true);
                Some(true)
            }
            (1, 0) => {
                // falsify the last open body element
                let (v, value) = open_body[0];
                assign[v] = Some(value);
                Some(true)
            }
            _ => Some(false),
        }
    }

    fn support_possible(&self, ri: usize, l: usize, assign: &Assign) -> bool {
        let r = &self.rules[ri];
        r.pos.iter().all(|&p| assign[p] != Some(false))
            && r.naf.iter().all(|&n| assign[n] != Some(true))
            && r.head.iter().all(|&h| h == l || assign[h] != Some(true))
    }

    fn propagate_support(&self, l: usize, assign: &mut Assign) -> Option<bool> {
        if assign[l] == Some(false) {
            return Some(false);
        }
        let mut possible = self.supports[l]
            .iter()
            .copied()
            .filter(|&ri| self.support_possible(ri, l, assign));
        let first = possible.next();
        let second = possible.next();
        match (first, second, assign[l]) {
            (None, _, Some(true)) => None,
            (None, _, None) => {
                assign[l] = Some(false);
                Some(true)
            }
            (Some(ri), None, Some(true)) => {
                let r = &self.rules[ri];
                let mut changed = false;
                let forced = r
                    .pos
                    .iter()
                    .map(|&p| (p, true))
                    .chain(r.naf.iter().map(|&n| (n, false)))
                    .chain(r.head.iter().filter(|&&h| h != l).map(|&h| (h, false)));
                for (v, value) in forced {
                    match assign[v] {
                        Some(x) if x != value => return None,
                        Some(_) => {}
                        None => {
                            assign[v] = Some(value);
                            changed = true;
                        }
                    }
                }
                Some(changed)
            }
            _ => Some(false),
        }
    }

    /// Checks that the true literals form a minimal model of the reduct.
    fn is_minimal(&self, assign: &Assign) -> bool {
        let in_s = |i: usize| assign[i] == Some(true);
        // Reduct rules whose positive body lies inside S, heads cut down to S.
        let mut reduct: Vec<(Vec<usize>, Vec<usize>)> = Vec::new();
        for r in &self.rules {
            if r.naf.iter().any(|&n| in_s(n)) || !r.pos.iter().all(|&p| in_s(p)) {
                continue;
            }
            let head: Vec<usize> = r.head.iter().copied().filter(|&h| in_s(h)).collect();
            if head.is_empty() {
                return false;
            }
            reduct.push((r.pos.clone(), head));
        }
        let members: Vec<usize> = (0..self.lits.len()).filter(|&i| in_s(i)).collect();
        if reduct.iter().all(|(_, h)| h.len() == 1) {
            let mut model = vec![false; self.lits.len()];
            loop {
                let mut changed = false;
                for (pos, head) in &reduct {
                    if !model[head[0]] && pos.iter().all(|&p| model[p]) {
                        model[head[0]] = true;
                        changed = true;
                    }
                }
                if !changed {
                    break;
                }
            }
            return members.iter().all(|&m| model[m]);
        }
        // Look for a proper subset of S that is still a model.
        let var: BTreeMap<usize, usize> = members.iter().enumerate().map(|(v, &m)| (m, v)).collect();
        let mut clauses: Vec<Vec<Lit>> = reduct
            .iter()
            .map(|(pos, head)| {
                pos.iter()
                    .map(|p| (var[p], false))
                    .chain(head.iter().map(|h| (var[h], true)))
                    .collect()
            })
            .collect();
        clauses.push((0..members.len()).map(|v| (v, false)).collect());
        !satisfiable(members.len(), &clauses)
    }

    /// Clauses of the not-free rules plus consistency. With `source_only`
    /// false, rules whose `not` literals are all underivable count as not-free
    /// too, which is sound for consistent sets only.
    fn not_free_clauses(&self, source_only: bool) -> Vec<Vec<Lit>> {
        let mut clauses = Vec::new();
        let keep = |r: &&CRule| if source_only { r.source_naf_free } else { r.naf.is_empty() };
        for r in self.rules.iter().filter(keep) {
            clauses.push(
                r.pos
                    .iter()
                    .map(|&p| (p, false))
                    .chain(r.head.iter().map(|&h| (h, true)))
                    .collect(),
            );
        }
        for (l, c) in self.complement.iter().enumerate() {
            if let Some(c) = *c {
                if l < c {
                    clauses.push(vec![(l, false), (c, false)]);
                }
            }
        }
        clauses
    }

    /// Every consistent answer set is a model of the rules without negation as
    /// failure, so if those have no consistent model there is none.
    fn not_free_has_consistent_model(&self) -> bool {
        satisfiable(self.lits.len(), &self.not_free_clauses(false))
    }

    /// The contradictory set is an answer set iff the not-free rules contain
    /// no constraint and admit no consistent model.
    fn contradictory_is_answer_set(&self) -> bool {
        !self.naf_free_constraint && !satisfiable(self.lits.len(), &self.not_free_clauses(true))
    }
}
