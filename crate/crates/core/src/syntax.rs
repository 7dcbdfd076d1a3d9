//! Abstract syntax for extended disjunctive programs.
//!
//! Rules keep their heads and bodies as ordered sets, so two rules that differ
//! only in the order of their elements are the same value. Variable renaming is
//! handled by [`canonical_form`], which every [`Program`] applies on insertion.

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

/// Names starting with this prefix are reserved for generated symbols.
pub const RESERVED_PREFIX: &str = "__";

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Term {
    Int(i64),
    Const(String),
    /// Variables start with an uppercase letter.
    Var(String),
}

impl Term {
    pub fn constant(name: impl Into<String>) -> Self {
        Term::Const(name.into())
    }

    pub fn var(name: impl Into<String>) -> Self {
        Term::Var(name.into())
    }

    pub fn is_var(&self) -> bool {
        matches!(self, Term::Var(_))
    }

    fn substitute(&self, subst: &BTreeMap<String, Term>) -> Term {
        match self {
            Term::Var(v) => subst.get(v).cloned().unwrap_or_else(|| self.clone()),
            other => other.clone(),
        }
    }
}

impl fmt::Display for Term {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Term::Int(i) => write!(f, "{i}"),
            Term::Const(c) | Term::Var(c) => f.write_str(c),
        }
    }
}

/// A predicate applied to arguments. Predicate identity is name plus arity.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Atom {
    pub predicate: String,
    pub args: Vec<Term>,
}

impl Atom {
    pub fn new(predicate: impl Into<String>, args: Vec<Term>) -> Self {
        Atom {
            predicate: predicate.into(),
            args,
        }
    }

    pub fn prop(predicate: impl Into<String>) -> Self {
        Atom::new(predicate, Vec::new())
    }

    pub fn arity(&self) -> usize {
        self.args.len()
    }

    pub fn is_ground(&self) -> bool {
        !self.args.iter().any(Term::is_var)
    }

    pub fn is_reserved(&self) -> bool {
        self.predicate.starts_with(RESERVED_PREFIX)
    }

    fn substitute(&self, subst: &BTreeMap<String, Term>) -> Atom {
        Atom {
            predicate: self.predicate.clone(),
            args: self.args.iter().map(|t| t.substitute(subst)).collect(),
        }
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.predicate)?;
        if !self.args.is_empty() {
            f.write_str("(")?;
            for (i, arg) in self.args.iter().enumerate() {
                if i > 0 {
                    f.write_str(",")?;
                }
                write!(f, "{arg}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

/// An atom or its strong negation. Positive literals sort before negated ones.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Literal {
    pub negated: bool,
    pub atom: Atom,
}

impl Literal {
    pub fn pos(atom: Atom) -> Self {
        Literal {
            negated: false,
            atom,
        }
    }

    pub fn neg(atom: Atom) -> Self {
        Literal {
            negated: true,
            atom,
        }
    }

    /// Shorthand for a positive propositional literal.
    pub fn prop(name: &str) -> Self {
        Literal::pos(Atom::prop(name))
    }

    pub fn complement(&self) -> Literal {
        Literal {
            negated: !self.negated,
            atom: self.atom.clone(),
        }
    }

    pub fn is_ground(&self) -> bool {
        self.atom.is_ground()
    }

    pub fn is_reserved(&self) -> bool {
        self.atom.is_reserved()
    }

    pub fn substitute(&self, subst: &BTreeMap<String, Term>) -> Literal {
        Literal {
            negated: self.negated,
            atom: self.atom.substitute(subst),
        }
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            f.write_str("-")?;
        }
        write!(f, "{}", self.atom)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Relation {
    Lt,
    Le,
    Gt,
    Ge,
    Eq,
    Ne,
}

impl Relation {
    pub fn symbol(self) -> &'static str {
        match self {
            Relation::Lt => "<",
            Relation::Le => "<=",
            Relation::Gt => ">",
            Relation::Ge => ">=",
            Relation::Eq => "=",
            Relation::Ne => "!=",
        }
    }

    /// Evaluates the relation on ground terms. Integers compare numerically and
    /// sort before symbolic constants; constants compare lexicographically.
    pub fn holds(self, lhs: &Term, rhs: &Term) -> bool {
        match self {
            Relation::Lt => lhs < rhs,
            Relation::Le => lhs <= rhs,
            Relation::Gt => lhs > rhs,
            Relation::Ge => lhs >= rhs,
            Relation::Eq => lhs == rhs,
            Relation::Ne => lhs != rhs,
        }
    }
}

/// A built-in comparison, evaluated away during grounding.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Comparison {
    pub relation: Relation,
    pub lhs: Term,
    pub rhs: Term,
}

impl Comparison {
    /// Builds a comparison in normalized orientation: `>`/`>=` are flipped to
    /// `<`/`<=` and the operands of `=`/`!=` are ordered.
    pub fn new(relation: Relation, lhs: Term, rhs: Term) -> Self {
        let (relation, lhs, rhs) = match relation {
            Relation::Gt => (Relation::Lt, rhs, lhs),
            Relation::Ge => (Relation::Le, rhs, lhs),
            Relation::Eq | Relation::Ne if rhs < lhs => (relation, rhs, lhs),
            _ => (relation, lhs, rhs),
        };
        Comparison { relation, lhs, rhs }
    }

    pub fn is_ground(&self) -> bool {
        !self.lhs.is_var() && !self.rhs.is_var()
    }

    /// `None` while an operand is still a variable.
    pub fn evaluate(&self) -> Option<bool> {
        self.is_ground()
            .then(|| self.relation.holds(&self.lhs, &self.rhs))
    }

    fn substitute(&self, subst: &BTreeMap<String, Term>) -> Comparison {
        Comparison::new(
            self.relation,
            self.lhs.substitute(subst),
            self.rhs.substitute(subst),
        )
    }
}

impl fmt::Display for Comparison {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.lhs, self.relation.symbol(), self.rhs)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum BodyElement {
    Pos(Literal),
    /// `not L`
    Naf(Literal),
    Builtin(Comparison),
}

impl BodyElement {
    fn substitute(&self, subst: &BTreeMap<String, Term>) -> BodyElement {
        match self {
            BodyElement::Pos(l) => BodyElement::Pos(l.substitute(subst)),
            BodyElement::Naf(l) => BodyElement::Naf(l.substitute(subst)),
            BodyElement::Builtin(c) => BodyElement::Builtin(c.substitute(subst)),
        }
    }

    fn terms(&self) -> Box<dyn Iterator<Item = &Term> + '_> {
        match self {
            BodyElement::Pos(l) | BodyElement::Naf(l) => Box::new(l.atom.args.iter()),
            BodyElement::Builtin(c) => Box::new([&c.lhs, &c.rhs].into_iter()),
        }
    }
}

impl fmt::Display for BodyElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            BodyElement::Pos(l) => write!(f, "{l}"),
            BodyElement::Naf(l) => write!(f, "not {l}"),
            BodyElement::Builtin(c) => write!(f, "{c}"),
        }
    }
}

/// `L1 ; ... ; Ll :- B1, ..., Bn.` with set-valued head and body.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Rule {
    pub head: BTreeSet<Literal>,
    pub body: BTreeSet<BodyElement>,
}

impl Rule {
    pub fn new(
        head: impl IntoIterator<Item = Literal>,
        body: impl IntoIterator<Item = BodyElement>,
    ) -> Self {
        Rule {
            head: head.into_iter().collect(),
            body: body.into_iter().collect(),
        }
    }

    pub fn fact(literal: Literal) -> Self {
        Rule::new([literal], [])
    }

    pub fn constraint(body: impl IntoIterator<Item = BodyElement>) -> Self {
        Rule::new([], body)
    }

    pub fn is_constraint(&self) -> bool {
        self.head.is_empty()
    }

    /// Non-disjunctive fact `L.`
    pub fn is_fact(&self) -> bool {
        self.head.len() == 1 && self.body.is_empty()
    }

    /// Fact with any number of head literals (including one).
    pub fn is_disjunctive_fact(&self) -> bool {
        !self.head.is_empty() && self.body.is_empty()
    }

    pub fn as_fact(&self) -> Option<&Literal> {
        if self.is_fact() {
            self.head.iter().next()
        } else {
            None
        }
    }

    pub fn is_ground(&self) -> bool {
        self.head.iter().all(Literal::is_ground)
            && self.body.iter().all(|b| match b {
                BodyElement::Pos(l) | BodyElement::Naf(l) => l.is_ground(),
                BodyElement::Builtin(c) => c.is_ground(),
            })
    }

    pub fn positive_body(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().filter_map(|b| match b {
            BodyElement::Pos(l) => Some(l),
            _ => None,
        })
    }

    pub fn naf_body(&self) -> impl Iterator<Item = &Literal> {
        self.body.iter().filter_map(|b| match b {
            BodyElement::Naf(l) => Some(l),
            _ => None,
        })
    }

    pub fn has_builtins(&self) -> bool {
        self.body
            .iter()
            .any(|b| matches!(b, BodyElement::Builtin(_)))
    }

    pub fn is_naf_free(&self) -> bool {
        self.naf_body().next().is_none()
    }

    /// Every literal of the rule, head first.
    pub fn literals(&self) -> impl Iterator<Item = &Literal> {
        self.head
            .iter()
            .chain(self.positive_body())
            .chain(self.naf_body())
    }

    pub fn terms(&self) -> impl Iterator<Item = &Term> {
        self.head
            .iter()
            .flat_map(|l| l.atom.args.iter())
            .chain(self.body.iter().flat_map(BodyElement::terms))
    }

    /// Variables in order of first occurrence.
    pub fn variables(&self) -> Vec<String> {
        let mut seen = Vec::new();
        for t in self.terms() {
            if let Term::Var(v) = t {
                if !seen.contains(v) {
                    seen.push(v.clone());
                }
            }
        }
        seen
    }

    pub fn substitute(&self, subst: &BTreeMap<String, Term>) -> Rule {
        Rule {
            head: self.head.iter().map(|l| l.substitute(subst)).collect(),
            body: self.body.iter().map(|b| b.substitute(subst)).collect(),
        }
    }

    /// Adds `atom` to the body as a positive literal.
    pub fn with_body_atom(&self, atom: Atom) -> Rule {
        let mut r = self.clone();
        r.body.insert(BodyElement::Pos(Literal::pos(atom)));
        r
    }

    pub fn mentions_reserved(&self) -> bool {
        self.literals().any(Literal::is_reserved)
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, l) in self.head.iter().enumerate() {
            if i > 0 {
                f.write_str(" ; ")?;
            }
            write!(f, "{l}")?;
        }
        if !self.body.is_empty() {
            if self.head.is_empty() {
                f.write_str(":- ")?;
            } else {
                f.write_str(" :- ")?;
            }
            for (i, b) in self.body.iter().enumerate() {
                if i > 0 {
                    f.write_str(", ")?;
                }
                write!(f, "{b}")?;
            }
        } else if self.head.is_empty() {
            f.write_str(":-")?;
        }
        f.write_str(".")
    }
}

const CANONICAL_VAR_NAMES: [&str; 6] = ["X", "Y", "Z", "U", "V", "W"];

// Exhaustive search over renamings is exact; above this size a first-occurrence
// renaming is used instead.
const MAX_EXHAUSTIVE_VARS: usize = 7;

fn canonical_var(i: usize) -> String {
    CANONICAL_VAR_NAMES
        .get(i)
        .map(|s| s.to_string())
        .unwrap_or_else(|| format!("X{i}"))
}

/// Renames the variables of `rule` so that variants map to the same value.
///
/// The result is the least rule, in the derived ordering, among all renamings
/// of the variables onto `X, Y, Z, ...`.
pub fn canonical_form(rule: &Rule) -> Rule {
    if rule.is_ground() {
        return rule.clone();
    }
    let vars = rule.variables();
    if vars.is_empty() {
        return rule.clone();
    }
    let names: Vec<Term> = (0..vars.len()).map(|i| Term::Var(canonical_var(i))).collect();
    // Rename into a scratch namespace first so that source names which collide
    // with canonical ones cannot be captured.
    let scratch: BTreeMap<String, Term> = vars
        .iter()
        .enumerate()
        .map(|(i, v)| (v.clone(), Term::Var(format!("{RESERVED_PREFIX}v{i}"))))
        .collect();
    let staged = rule.substitute(&scratch);
    let staged_vars: Vec<String> = (0..vars.len()).map(|i| format!("{RESERVED_PREFIX}v{i}")).collect();

    if vars.len() > MAX_EXHAUSTIVE_VARS {
        let subst = staged_vars.iter().cloned().zip(names).collect();
        return staged.substitute(&subst);
    }

    let mut best: Option<Rule> = None;
    let mut perm: Vec<usize> = (0..vars.len()).collect();
    loop {
        let subst: BTreeMap<String, Term> = staged_vars
            .iter()
            .cloned()
            .zip(perm.iter().map(|&i| names[i].clone()))
            .collect();
        let candidate = staged.substitute(&subst);
        if best.as_ref().is_none_or(|b| candidate < *b) {
            best = Some(candidate);
        }
        if !next_permutation(&mut perm) {
            break;
        }
    }
    best.expect("at least one permutation")
}

fn next_permutation(perm: &mut [usize]) -> bool {
    let n = perm.len();
    if n < 2 {
        return false;
    }
    let mut i = n - 1;
    while i > 0 && perm[i - 1] >= perm[i] {
        i -= 1;
    }
    if i == 0 {
        return false;
    }
    let mut j = n - 1;
    while perm[j] <= perm[i - 1] {
        j -= 1;
    }
    perm.swap(i - 1, j);
    perm[i..].reverse();
    true
}

/// A set of rules in canonical form.
#[derive(Clone, Debug, Default, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Program {
    rules: BTreeSet<Rule>,
}

impl Program {
    pub fn new() -> Self {
        Self::default()
    }

    /// Inserts the canonical form of `rule`; returns false if a variant was present.
    pub fn insert(&mut self, rule: Rule) -> bool {
        if rule.is_ground() {
            return self.rules.insert(rule);
        }
        self.rules.insert(canonical_form(&rule))
    }

    pub fn remove(&mut self, rule: &Rule) -> bool {
        if rule.is_ground() {
            return self.rules.remove(rule);
        }
        self.rules.remove(&canonical_form(rule))
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        if rule.is_ground() {
            return self.rules.contains(rule);
        }
        self.rules.contains(&canonical_form(rule))
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter()
    }

    pub fn rules(&self) -> &BTreeSet<Rule> {
        &self.rules
    }

    pub fn is_ground(&self) -> bool {
        self.rules.iter().all(Rule::is_ground)
    }

    /// Syntactic union; see [`crate::ground::program_union`] for the
    /// instance-level operation.
    pub fn extended(&self, rules: impl IntoIterator<Item = Rule>) -> Program {
        let mut p = self.clone();
        p.extend(rules);
        p
    }

    pub fn facts(&self) -> impl Iterator<Item = &Literal> {
        self.rules.iter().filter_map(Rule::as_fact)
    }

    pub fn constraints(&self) -> impl Iterator<Item = &Rule> {
        self.rules.iter().filter(|r| r.is_constraint())
    }

    pub fn literals(&self) -> BTreeSet<Literal> {
        self.rules.iter().flat_map(Rule::literals).cloned().collect()
    }

    pub fn constants(&self) -> BTreeSet<Term> {
        self.rules
            .iter()
            .flat_map(Rule::terms)
            .filter(|t| !t.is_var())
            .cloned()
            .collect()
    }

    /// `(name, arity)` pairs of every predicate occurring in the program.
    pub fn predicates(&self) -> BTreeSet<(String, usize)> {
        self.rules
            .iter()
            .flat_map(Rule::literals)
            .map(|l| (l.atom.predicate.clone(), l.atom.arity()))
            .collect()
    }
}

impl FromIterator<Rule> for Program {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> Self {
        let mut p = Program::new();
        p.extend(iter);
        p
    }
}

impl Extend<Rule> for Program {
    fn extend<I: IntoIterator<Item = Rule>>(&mut self, iter: I) {
        for r in iter {
            self.insert(r);
        }
    }
}

impl<'a> IntoIterator for &'a Program {
    type Item = &'a Rule;
    type IntoIter = std::collections::btree_set::Iter<'a, Rule>;

    fn into_iter(self) -> Self::IntoIter {
        self.rules.iter()
    }
}

impl fmt::Display for Program {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for r in &self.rules {
            writeln!(f, "{r}")?;
        }
        Ok(())
    }
}
