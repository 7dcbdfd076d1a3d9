//! Answer-set semantics for ground programs.

pub mod brute;
mod sat;
mod search;

use std::cmp::Ordering;
use std::collections::BTreeSet;
use std::fmt;

use petgraph::algo::tarjan_scc;
use petgraph::graph::DiGraph;

use crate::config::EngineConfig;
use crate::error::{Error, Result};
use crate::ground::ground;
use crate::syntax::{Literal, Program, Rule};

/// A set of ground literals, or the contradictory set of all literals.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Interpretation {
    Literals(BTreeSet<Literal>),
    Contradictory,
}

impl Interpretation {
    pub fn is_consistent(&self) -> bool {
        matches!(self, Interpretation::Literals(_))
    }

    pub fn literals(&self) -> Option<&BTreeSet<Literal>> {
        match self {
            Interpretation::Literals(s) => Some(s),
            Interpretation::Contradictory => None,
        }
    }

    pub fn contains(&self, lit: &Literal) -> bool {
        match self {
            Interpretation::Literals(s) => s.contains(lit),
            Interpretation::Contradictory => true,
        }
    }
}

// Smaller sets first, then lexicographic; the contradictory set sorts last.
impl Ord for Interpretation {
    fn cmp(&self, other: &Self) -> Ordering {
        match (self, other) {
            (Interpretation::Literals(a), Interpretation::Literals(b)) => {
                a.len().cmp(&b.len()).then_with(|| a.cmp(b))
            }
            (Interpretation::Literals(_), Interpretation::Contradictory) => Ordering::Less,
            (Interpretation::Contradictory, Interpretation::Literals(_)) => Ordering::Greater,
            (Interpretation::Contradictory, Interpretation::Contradictory) => Ordering::Equal,
        }
    }
}

impl PartialOrd for Interpretation {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Display for Interpretation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Interpretation::Contradictory => f.write_str("L_P"),
            Interpretation::Literals(s) => {
                f.write_str("{")?;
                for (i, l) in s.iter().enumerate() {
                    if i > 0 {
                        f.write_str(", ")?;
                    }
                    write!(f, "{l}")?;
                }
                f.write_str("}")
            }
        }
    }
}

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct AnswerSetResult {
    /// Sorted and duplicate-free.
    pub sets: Vec<Interpretation>,
    pub contains_contradictory: bool,
}

impl AnswerSetResult {
    fn new(mut sets: Vec<Interpretation>) -> Self {
        sets.sort();
        sets.dedup();
        let contains_contradictory = sets.contains(&Interpretation::Contradictory);
        AnswerSetResult {
            sets,
            contains_contradictory,
        }
    }

    pub fn from_consistent(sets: impl IntoIterator<Item = BTreeSet<Literal>>) -> Self {
        Self::new(sets.into_iter().map(Interpretation::Literals).collect())
    }

    pub fn consistent(&self) -> impl Iterator<Item = &BTreeSet<Literal>> {
        self.sets.iter().filter_map(Interpretation::literals)
    }

    pub fn is_consistent(&self) -> bool {
        self.consistent().next().is_some()
    }

    pub fn is_empty(&self) -> bool {
        self.sets.is_empty()
    }
}

fn require_ground(rule: &Rule) -> Result<()> {
    if rule.is_ground() {
        Ok(())
    } else {
        Err(Error::NonGroundRule(rule.to_string()))
    }
}

/// Whether `s` satisfies the ground rule `r`. The contradictory set makes
/// every literal true, so it satisfies `r` exactly when `r` has a head or a
/// `not` literal.
pub fn satisfies(s: &Interpretation, r: &Rule) -> Result<bool> {
    require_ground(r)?;
    Ok(match s {
        Interpretation::Contradictory => !r.head.is_empty() || !r.is_naf_free(),
        Interpretation::Literals(s) => {
            let body = r.positive_body().all(|l| s.contains(l)) && r.naf_body().all(|l| !s.contains(l));
            !body || r.head.iter().any(|l| s.contains(l))
        }
    })
}

/// The not-free program `p^s`.
pub fn reduct(p: &Program, s: &Interpretation) -> Program {
    p.iter()
        .filter(|r| r.naf_body().all(|l| !s.contains(l)))
        .map(|r| Rule {
            head: r.head.clone(),
            body: r
                .body
                .iter()
                .filter(|b| !matches!(b, crate::syntax::BodyElement::Naf(_)))
                .cloned()
                .collect(),
        })
        .collect()
}

/// All answer sets of a ground program.
pub fn answer_sets(p: &Program, config: &EngineConfig) -> Result<AnswerSetResult> {
    for r in p {
        require_ground(r)?;
    }
    let grounded;
    let p = if p.iter().any(Rule::has_builtins) {
        grounded = ground(p, config)?;
        &grounded
    } else {
        p
    };
    answer_sets_of(p.iter(), config)
}

/// Answer sets of ground rules without builtins, taken by reference.
pub(crate) fn answer_sets_of<'a>(
    rules: impl IntoIterator<Item = &'a Rule>,
    config: &EngineConfig,
) -> Result<AnswerSetResult> {
    let outcome = search::Compiled::new(rules).solve(config.max_universe)?;
    let mut sets: Vec<Interpretation> = outcome
        .consistent
        .into_iter()
        .map(Interpretation::Literals)
        .collect();
    if outcome.contradictory {
        sets.push(Interpretation::Contradictory);
    }
    Ok(AnswerSetResult::new(sets))
}

/// Grounds `p` and computes its answer sets.
pub fn solve(p: &Program, config: &EngineConfig) -> Result<AnswerSetResult> {
    answer_sets(&ground(p, config)?, config)
}

/// The brute-force reference, for programs with at most `cap` literals.
pub fn answer_sets_reference(p: &Program, cap: usize) -> Result<AnswerSetResult> {
    for r in p {
        require_ground(r)?;
    }
    let rules: Vec<Rule> = p.iter().cloned().collect();
    let (consistent, contradictory) = brute::answer_sets_brute(&rules, cap)?;
    let mut sets: Vec<Interpretation> = consistent.into_iter().map(Interpretation::Literals).collect();
    if contradictory {
        sets.push(Interpretation::Contradictory);
    }
    Ok(AnswerSetResult::new(sets))
}

/// True iff `p` has a consistent answer set.
pub fn consistent(p: &Program, config: &EngineConfig) -> Result<bool> {
    Ok(solve(p, config)?.is_consistent())
}

/// `l` belongs to every answer set (vacuously true without answer sets).
pub fn entails(p: &Program, l: &Literal, config: &EngineConfig) -> Result<bool> {
    Ok(solve(p, config)?.sets.iter().all(|s| s.contains(l)))
}

/// `l` belongs to some consistent answer set.
pub fn credulous_holds(p: &Program, l: &Literal, config: &EngineConfig) -> Result<bool> {
    Ok(solve(p, config)?.consistent().any(|s| s.contains(l)))
}

/// Whether the atom dependency graph of a ground program has no cycle through
/// a `not` edge. With `require_nlp`, disjunction and strong negation are
/// rejected.
pub fn is_stratified(p: &Program, require_nlp: bool) -> Result<bool> {
    let mut graph: DiGraph<&Literal, bool> = DiGraph::new();
    let mut nodes = std::collections::BTreeMap::new();
    for r in p {
        require_ground(r)?;
        if require_nlp && (r.head.len() > 1 || r.literals().any(|l| l.negated)) {
            return Err(Error::NotNlp(r.to_string()));
        }
        for l in r.literals() {
            nodes.entry(l).or_insert_with(|| graph.add_node(l));
        }
    }
    for r in p {
        for h in &r.head {
            for b in r.positive_body() {
                graph.add_edge(nodes[b], nodes[h], false);
            }
            for b in r.naf_body() {
                graph.add_edge(nodes[b], nodes[h], true);
            }
        }
    }
    for component in tarjan_scc(&graph) {
        let members: BTreeSet<_> = component.iter().copied().collect();
        for &n in &component {
            for e in graph.edges(n) {
                use petgraph::visit::EdgeRef;
                if *e.weight() && members.contains(&e.target()) {
                    return Ok(false);
                }
            }
        }
    }
    Ok(true)
}
