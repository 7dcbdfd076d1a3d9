//! Update operations checked clause by clause against their definitions,
//! with brute-force enumeration over subsets as the oracle.

mod common;

use std::collections::BTreeSet;

use abdukit::abduction::Explanation;
use abdukit::reserved::strip;
use abdukit::solver::answer_sets_reference;
use abdukit::updates::{self, RepairScope, UpdateSolution};
use abdukit::{EngineConfig, Error, Literal, Program, Rule};

const INSTANCES: usize = 150;

// Naming every rule of a seven-rule program leaves more open choices than
// the default cap allows.
fn cfg() -> EngineConfig {
    EngineConfig::default().with_max_universe(40)
}

fn sets(p: &Program) -> Option<Vec<BTreeSet<Literal>>> {
    let r = answer_sets_reference(p, 24).unwrap();
    r.is_consistent().then(|| r.consistent().cloned().collect())
}

fn consistent(p: &Program) -> bool {
    sets(p).is_some()
}

fn entails(p: &Program, g: &Literal) -> bool {
    sets(p).is_some_and(|s| s.iter().all(|s| s.contains(g)))
}

fn subsets(items: &[Rule]) -> impl Iterator<Item = BTreeSet<Rule>> + '_ {
    (0..1u32 << items.len()).map(move |m| {
        items
            .iter()
            .enumerate()
            .filter(|(i, _)| m & (1 << i) != 0)
            .map(|(_, r)| r.clone())
            .collect()
    })
}

fn apply(p: &Program, add: &BTreeSet<Rule>, remove: &BTreeSet<Rule>) -> Program {
    p.iter().filter(|r| !remove.contains(*r)).chain(add).cloned().collect()
}

type Pair = (BTreeSet<Rule>, BTreeSet<Rule>);

/// Changes to `v` passing `ok`, minimal under symmetric difference with
/// `P ∩ V`.
fn brute_view(p: &Program, v: &Program, ok: impl Fn(&Program) -> bool) -> BTreeSet<Pair> {
    let (inside, outside): (Vec<Rule>, Vec<Rule>) = v.iter().cloned().partition(|r| p.contains(r));
    let mut good = Vec::new();
    for e in subsets(&outside) {
        for f in subsets(&inside) {
            let q = apply(p, &e, &f);
            if consistent(&q) && ok(&q) {
                good.push((e.clone(), f));
            }
        }
    }
    // The symmetric difference (P∩V) ~ (P''∩V) is exactly E ∪ F here.
    let diff = |(e, f): &Pair| -> BTreeSet<Rule> { e.union(f).cloned().collect() };
    good.iter()
        .filter(|x| !good.iter().any(|y| diff(y) != diff(x) && diff(y).is_subset(&diff(x))))
        .cloned()
        .collect()
}

/// Maximal `S ⊆ candidates` with `base ∪ S` consistent.
fn brute_maximal(base: &Program, candidates: &Program) -> BTreeSet<Program> {
    let items: Vec<Rule> = candidates.iter().filter(|r| !base.contains(r)).cloned().collect();
    let good: Vec<BTreeSet<Rule>> = subsets(&items)
        .filter(|s| consistent(&base.extended(s.iter().cloned())))
        .collect();
    good.iter()
        .filter(|s| !good.iter().any(|t| t.len() > s.len() && s.is_subset(t)))
        .map(|s| base.extended(s.iter().cloned()))
        .collect()
}

fn deltas(list: &[UpdateSolution]) -> BTreeSet<Pair> {
    list.iter().map(|s| s.delta.delta()).collect()
}

fn programs(list: &[UpdateSolution]) -> BTreeSet<Program> {
    list.iter().map(|s| s.program.clone()).collect()
}

fn fixed_part(p: &Program, v: &Program) -> Program {
    p.iter().filter(|r| !v.contains(r)).cloned().collect()
}

#[test]
fn view_updates_meet_every_clause_and_match_brute_force() {
    let c = cfg();
    for (i, inst) in common::corpus(11, INSTANCES).iter().enumerate() {
        let (p, v) = (&inst.ap.program, &inst.ap.abducibles);
        for g in &inst.goals {
            let ins = updates::view_insert(p, v, g, &c).unwrap();
            for s in &ins {
                assert!(consistent(&s.program), "instance {i}: insert result inconsistent");
                assert!(entails(&s.program, g), "instance {i}: insert result misses {g}");
                assert_eq!(fixed_part(&s.program, v), fixed_part(p, v), "instance {i}");
            }
            assert_eq!(deltas(&ins), brute_view(p, v, |q| entails(q, g)), "instance {i} insert {g}");

            let del = updates::view_delete(p, v, g, &c).unwrap();
            for s in &del {
                assert!(consistent(&s.program), "instance {i}: delete result inconsistent");
                assert!(!entails(&s.program, g), "instance {i}: delete result still has {g}");
                assert_eq!(fixed_part(&s.program, v), fixed_part(p, v), "instance {i}");
            }
            assert_eq!(deltas(&del), brute_view(p, v, |q| !entails(q, g)), "instance {i} delete {g}");

            if consistent(p) && !entails(p, g) {
                let empty: Pair = Default::default();
                assert_eq!(deltas(&del), [empty].into(), "instance {i}: unprovable {g}");
            }
        }
    }
}

#[test]
fn integrity_maintenance_matches_brute_force() {
    let c = cfg();
    for (i, inst) in common::corpus(12, INSTANCES).iter().enumerate() {
        let (p, v) = (&inst.ap.program, &inst.ap.abducibles);
        match updates::maintain_integrity(p, v, &c) {
            Ok(list) => {
                assert_eq!(deltas(&list), brute_view(p, v, |_| true), "instance {i}");
                if consistent(p) {
                    assert_eq!(programs(&list), [p.clone()].into(), "instance {i}");
                }
            }
            Err(Error::ConstraintInVariablePart(_)) => {
                assert!(v.iter().any(|r| r.is_constraint() && p.contains(r)), "instance {i}");
            }
            Err(e) => panic!("instance {i}: {e}"),
        }
    }
}

#[test]
fn theory_updates_are_maximal_consistent_extensions() {
    let c = cfg();
    let mut rng = common::rng(13);
    for i in 0..INSTANCES {
        let p = common::program(&mut rng, 6);
        let q = common::program(&mut rng, 3);
        let result = updates::theory_update(&p, &q, &c);
        if !consistent(&q) {
            assert_eq!(result, Err(Error::InconsistentUpdate), "instance {i}");
            continue;
        }
        let list = result.unwrap();
        let union = p.extended(q.iter().cloned());
        for s in &list {
            assert!(consistent(&s.program), "instance {i}");
            assert!(q.iter().all(|r| s.program.contains(r)), "instance {i}: Q not kept");
            assert!(s.program.iter().all(|r| union.contains(r)), "instance {i}: foreign rule");
            for r in union.iter().filter(|r| !s.program.contains(r)) {
                let bigger = s.program.extended([r.clone()]);
                assert!(!consistent(&bigger), "instance {i}: re-adding {r} stays consistent");
            }
        }
        assert_eq!(programs(&list), brute_maximal(&q, &union), "instance {i}");
    }
}

#[test]
fn empty_update_is_inconsistency_removal() {
    let c = cfg();
    let mut rng = common::rng(14);
    for i in 0..INSTANCES {
        let p = common::program(&mut rng, 7);
        let a = updates::theory_update(&p, &Program::new(), &c).unwrap();
        let b = updates::remove_inconsistency(&p, &RepairScope::AllRules, &c).unwrap();
        assert_eq!(programs(&a), programs(&b), "instance {i}");
        assert_eq!(programs(&b), brute_maximal(&Program::new(), &p), "instance {i}");
    }
}

#[test]
fn rule_deletion_keeps_maximal_consistent_subsets() {
    let c = cfg();
    let mut rng = common::rng(15);
    for i in 0..INSTANCES {
        let p = common::program(&mut rng, 6);
        for r in p.iter().take(2) {
            let list = updates::delete_rule(&p, r, &c).unwrap();
            let mut rest = p.clone();
            rest.remove(r);
            assert_eq!(programs(&list), brute_maximal(&Program::new(), &rest), "instance {i} delete {r}");
            for s in &list {
                assert!(s.delta.remove.contains(r) && s.delta.add.is_empty(), "instance {i}");
            }
        }
    }
}

#[test]
fn rule_insertion_is_a_theory_update() {
    let c = cfg();
    let mut rng = common::rng(16);
    for i in 0..INSTANCES {
        let p = common::program(&mut rng, 6);
        let extra = common::program(&mut rng, 1);
        let r = extra.iter().next().unwrap();
        if p.contains(r) {
            assert!(matches!(updates::insert_rule(&p, r, &c), Err(Error::RuleAlreadyPresent(_))));
            continue;
        }
        let a = updates::insert_rule(&p, r, &c).map(|l| programs(&l));
        let b = updates::theory_update(&p, &extra, &c).map(|l| programs(&l));
        assert_eq!(a, b, "instance {i}");
    }
}

#[test]
fn delta_maximal_sets_cover_all_theory_updates() {
    let c = cfg();
    let mut rng = common::rng(17);
    for i in 0..INSTANCES {
        let p = common::program(&mut rng, 5);
        let q = common::program(&mut rng, 2);
        if !consistent(&q) {
            continue;
        }
        let m = updates::multi_solution_program(&p, &q, &c);
        let via_pi: BTreeSet<BTreeSet<Literal>> = updates::delta_maximal_answer_sets(&m, &c)
            .unwrap()
            .consistent()
            .map(strip)
            .collect();
        let via_updates: BTreeSet<BTreeSet<Literal>> = updates::theory_update(&p, &q, &c)
            .unwrap()
            .iter()
            .flat_map(|s| sets(&s.program).unwrap())
            .collect();
        assert_eq!(via_pi, via_updates, "instance {i}");
    }
}

#[test]
fn repairs_within_a_subset_only_touch_it() {
    let c = cfg();
    let mut rng = common::rng(18);
    for i in 0..INSTANCES {
        let p = common::program(&mut rng, 6);
        let scope: Program = p.iter().step_by(2).cloned().collect();
        let list = updates::remove_inconsistency(&p, &RepairScope::Subset(scope.clone()), &c).unwrap();
        let fixed = fixed_part(&p, &scope);
        let want: BTreeSet<Program> = brute_view(&p, &scope, |_| true)
            .into_iter()
            .map(|(e, f)| apply(&p, &e, &f))
            .collect();
        assert_eq!(programs(&list), want, "instance {i}");
        for s in &list {
            assert_eq!(fixed_part(&s.program, &scope), fixed, "instance {i}");
        }
    }
}

#[test]
fn results_are_deterministic() {
    let c = cfg();
    for inst in common::corpus(19, 40) {
        let (p, v) = (&inst.ap.program, &inst.ap.abducibles);
        let once = updates::maintain_integrity(p, v, &c);
        assert_eq!(once, updates::maintain_integrity(p, v, &c));
        let order: Vec<&Explanation> = once.iter().flatten().map(|s| &s.delta).collect();
        assert!(order.windows(2).all(|w| w[0] <= w[1]));
    }
}
