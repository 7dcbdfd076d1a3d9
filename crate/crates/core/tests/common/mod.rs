//! Seeded random abductive programs shared by the corpus-based tests.

#![allow(dead_code)]

use abdukit::abduction::AbductiveProgram;
use abdukit::{BodyElement, Literal, Program, Rule};
use rand::{RngExt, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub const ATOMS: [&str; 6] = ["a", "b", "c", "d", "e", "f"];

/// Instances per corpus; the acceptance criteria ask for at least 500.
pub const CORPUS_SIZE: usize = 500;
pub const SEED: u64 = 0x5eed_abd0;

pub struct Instance {
    pub ap: AbductiveProgram,
    /// Non-abducible literals worth observing.
    pub goals: Vec<Literal>,
}

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

fn literal(rng: &mut ChaCha8Rng, strong_negation: bool, atoms: usize) -> Literal {
    let l = Literal::prop(ATOMS[rng.random_range(0..atoms)]);
    if strong_negation && rng.random_bool(0.25) {
        l.complement()
    } else {
        l
    }
}

fn body(rng: &mut ChaCha8Rng) -> Vec<BodyElement> {
    let mut out = Vec::new();
    for _ in 0..rng.random_range(0..=2) {
        out.push(BodyElement::Pos(literal(rng, true, ATOMS.len())));
    }
    for _ in 0..rng.random_range(0..=2) {
        out.push(BodyElement::Naf(literal(rng, true, ATOMS.len())));
    }
    out
}

/// Between one and `max_rules` rules over the six atoms.
pub fn program(rng: &mut ChaCha8Rng, max_rules: usize) -> Program {
    let mut program = Program::new();
    let rules = rng.random_range(1..=max_rules);
    while program.len() < rules {
        let roll = rng.random_range(0..10);
        let head: Vec<Literal> = match roll {
            0 => vec![],
            1 | 2 => vec![literal(rng, true, 6), literal(rng, true, 6)],
            _ => vec![literal(rng, true, 6)],
        };
        let mut b = body(rng);
        if head.is_empty() && b.is_empty() {
            b.push(BodyElement::Pos(literal(rng, true, 6)));
        }
        program.insert(Rule::new(head, b));
    }
    program
}

/// At most six atoms, eight rules and four ground abducibles, with
/// disjunction, strong negation, constraints and abducible rules.
pub fn instance(rng: &mut ChaCha8Rng) -> Instance {
    let mut program = program(rng, 8);
    let mut abducibles = Program::new();
    let count = rng.random_range(1..=4);
    while abducibles.len() < count {
        if rng.random_bool(0.15) {
            // An abducible rule, usually one of the program's.
            let pick = rng.random_range(0..program.len());
            if let Some(r) = program.iter().nth(pick).filter(|r| !r.is_constraint()) {
                abducibles.insert(r.clone());
            }
            continue;
        }
        let a = literal(rng, true, 6);
        if rng.random_bool(0.5) {
            program.insert(Rule::fact(a.clone()));
        }
        abducibles.insert(Rule::fact(a));
    }
    finish(rng, program, abducibles)
}

/// A ground, stratified normal program with fact abducibles: every rule
/// body mentions only atoms earlier in `ATOMS` than its head.
pub fn stratified_instance(rng: &mut ChaCha8Rng) -> Instance {
    let mut program = Program::new();
    let mut abducibles = Program::new();
    for _ in 0..rng.random_range(1..=8) {
        let h = rng.random_range(0..ATOMS.len());
        let mut b = Vec::new();
        if h > 0 {
            for _ in 0..rng.random_range(0..=3) {
                let l = Literal::prop(ATOMS[rng.random_range(0..h)]);
                b.push(if rng.random_bool(0.5) { BodyElement::Pos(l) } else { BodyElement::Naf(l) });
            }
        }
        program.insert(Rule::new([Literal::prop(ATOMS[h])], b));
    }
    for _ in 0..rng.random_range(1..=4) {
        let a = Literal::prop(ATOMS[rng.random_range(0..ATOMS.len())]);
        if rng.random_bool(0.5) {
            program.insert(Rule::fact(a.clone()));
        }
        abducibles.insert(Rule::fact(a));
    }
    finish(rng, program, abducibles)
}

fn finish(rng: &mut ChaCha8Rng, program: Program, abducibles: Program) -> Instance {
    let abducible: Vec<Literal> = abducibles.facts().cloned().collect();
    let mut pool: Vec<Literal> = program
        .literals()
        .into_iter()
        .filter(|l| !abducible.contains(l))
        .collect();
    let mut goals = Vec::new();
    while goals.len() < 2 && !pool.is_empty() {
        goals.push(pool.swap_remove(rng.random_range(0..pool.len())));
    }
    Instance {
        ap: AbductiveProgram::new(program, abducibles),
        goals,
    }
}

pub fn corpus(seed: u64, size: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..size).map(|_| instance(&mut r)).collect()
}

pub fn stratified_corpus(seed: u64, size: usize) -> Vec<Instance> {
    let mut r = rng(seed);
    (0..size).map(|_| stratified_instance(&mut r)).collect()
}
