//! Reference enumeration straight from the definitions: every consistent
//! subset of the program's literals is tested against its reduct, and
//! minimality is checked over all of its subsets. Exponential, for testing.

use std::collections::BTreeSet;

use crate::error::{Error, Result};
use crate::syntax::{Literal, Rule};

struct MaskRule {
    head: u64,
    pos: u64,
    naf: u64,
}

/// Returns the consistent answer sets and whether the contradictory set is an
/// answer set. Fails when the program has more than `cap` distinct literals.
pub fn answer_sets_brute(rules: &[Rule], cap: usize) -> Result<(Vec<BTreeSet<Literal>>, bool)> {
    let universe: Vec<Literal> = rules
        .iter()
        .flat_map(Rule::literals)
        .cloned()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    let n = universe.len();
    if n > cap || n > 30 {
        return Err(Error::CandidateBudgetExceeded { size: n, limit: cap });
    }
    let bit = |l: &Literal| 1u64 << universe.iter().position(|u| u == l).expect("in universe");
    let mask = |ls: &mut dyn Iterator<Item = &Literal>| ls.fold(0u64, |m, l| m | bit(l));
    let rules: Vec<MaskRule> = rules
        .iter()
        .map(|r| MaskRule {
            head: mask(&mut r.head.iter()),
            pos: mask(&mut r.positive_body()),
            naf: mask(&mut r.naf_body()),
        })
        .collect();
    let mut pairs = Vec::new();
    for (i, l) in universe.iter().enumerate() {
        if let Some(j) = universe.iter().position(|u| *u == l.complement()) {
            if i < j {
                pairs.push((1u64 << i) | (1u64 << j));
            }
        }
    }
    let consistent = |s: u64| pairs.iter().all(|&p| s & p != p);
    // rules of the reduct w.r.t. `s`, satisfied by `m`
    let models = |s: u64, m: u64| {
        rules
            .iter()
            .filter(|r| r.naf & s == 0)
            .all(|r| r.pos & m != r.pos || r.head & m != 0)
    };

    let mut found = Vec::new();
    for s in 0..(1u64 << n) {
        if !consistent(s) || !models(s, s) {
            continue;
        }
        // proper submasks of s
        let mut minimal = true;
        let mut m = s;
        while m != 0 {
            m = (m - 1) & s;
            if models(s, m) {
                minimal = false;
                break;
            }
        }
        if minimal {
            found.push(
                (0..n)
                    .filter(|&i| s & (1u64 << i) != 0)
                    .map(|i| universe[i].clone())
                    .collect(),
            );
        }
    }
    found.sort();

    let not_free: Vec<&MaskRule> = rules.iter().filter(|r| r.naf == 0).collect();
    let lp_satisfies = not_free.iter().all(|r| r.head != 0);
    let consistent_model = (0..(1u64 << n))
        .any(|m| consistent(m) && not_free.iter().all(|r| r.pos & m != r.pos || r.head & m != 0));
    Ok((found, lp_satisfies && !consistent_model))
}
