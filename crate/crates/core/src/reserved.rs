//! Generated symbols. Every name here starts with `__`, which the parser
//! rejects, so generated atoms never collide with user atoms. Each family has
//! its own prefix and records the polarity of the literal it was built from,
//! so the encodings are injective and can be decoded.

use std::collections::BTreeSet;

use crate::syntax::{Atom, Literal, Term, RESERVED_PREFIX};

const BAR: &str = "__bar_";
const PLUS: &str = "__plus_";
const MINUS: &str = "__minus_";
const PRIME: &str = "__prime_";
const GAMMA: &str = "__gamma_";
const OFF: &str = "__off_";

fn encode(prefix: &str, lit: &Literal) -> Literal {
    let tag = if lit.negated { "n_" } else { "p_" };
    Literal::pos(Atom::new(
        format!("{prefix}{tag}{}", lit.atom.predicate),
        lit.atom.args.clone(),
    ))
}

fn decode(prefix: &str, lit: &Literal) -> Option<Literal> {
    if lit.negated {
        return None;
    }
    let rest = lit.atom.predicate.strip_prefix(prefix)?;
    let (negated, pred) = if let Some(p) = rest.strip_prefix("p_") {
        (false, p)
    } else {
        (true, rest.strip_prefix("n_")?)
    };
    Some(Literal {
        negated,
        atom: Atom::new(pred, lit.atom.args.clone()),
    })
}

/// The shadow `ā` of an abducible literal.
pub fn shadow(lit: &Literal) -> Literal {
    encode(BAR, lit)
}

/// The update atom `+a`.
pub fn plus(lit: &Literal) -> Literal {
    encode(PLUS, lit)
}

/// The update atom `-a`.
pub fn minus(lit: &Literal) -> Literal {
    encode(MINUS, lit)
}

/// A fresh abducible standing in for `lit` (the `A'` of the head device and
/// of the translation to normal abduction).
pub fn prime(lit: &Literal) -> Literal {
    encode(PRIME, lit)
}

pub fn unprime(lit: &Literal) -> Option<Literal> {
    decode(PRIME, lit)
}

/// The abducible whose addition switches off `lit` in the translation to
/// normal abduction.
pub fn off(lit: &Literal) -> Literal {
    encode(OFF, lit)
}

pub fn un_off(lit: &Literal) -> Option<Literal> {
    decode(OFF, lit)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord)]
pub enum UpdateKind {
    Plus,
    Minus,
}

/// Recognises `+a` / `-a` and returns the abducible they refer to.
pub fn update_atom(lit: &Literal) -> Option<(UpdateKind, Literal)> {
    decode(PLUS, lit)
        .map(|l| (UpdateKind::Plus, l))
        .or_else(|| decode(MINUS, lit).map(|l| (UpdateKind::Minus, l)))
}

/// The name atom of the `index`-th abducible rule, over its variables.
pub fn gamma(index: usize, args: Vec<Term>) -> Literal {
    Literal::pos(Atom::new(format!("{GAMMA}{index}"), args))
}

pub fn is_gamma(lit: &Literal) -> bool {
    lit.atom.predicate.starts_with(GAMMA)
}

/// A propositional atom named `__<base>`, `__<base>1`, ... that does not occur
/// in `taken`.
pub fn fresh(base: &str, taken: &BTreeSet<Literal>) -> Literal {
    let used: BTreeSet<&str> = taken.iter().map(|l| l.atom.predicate.as_str()).collect();
    let mut i = 0usize;
    loop {
        let name = if i == 0 {
            format!("{RESERVED_PREFIX}{base}")
        } else {
            format!("{RESERVED_PREFIX}{base}{i}")
        };
        if !used.contains(name.as_str()) {
            return Literal::prop(&name);
        }
        i += 1;
    }
}

pub fn strip<'a>(lits: impl IntoIterator<Item = &'a Literal>) -> BTreeSet<Literal> {
    lits.into_iter()
        .filter(|l| !l.is_reserved())
        .cloned()
        .collect()
}
