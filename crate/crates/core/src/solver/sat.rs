//! A small DPLL satisfiability check, used for minimal-model tests.

/// A literal is `(variable, polarity)`.
pub(crate) type Lit = (usize, bool);

/// Returns true if some assignment of `num_vars` variables satisfies every
/// clause. An empty clause is unsatisfiable.
pub(crate) fn satisfiable(num_vars: usize, clauses: &[Vec<Lit>]) -> bool {
    let mut assign = vec![None; num_vars];
    dpll(&mut assign, clauses)
}

fn dpll(assign: &mut [Option<bool>], clauses: &[Vec<Lit>]) -> bool {
    loop {
        let mut changed = false;
        for clause in clauses {
            let mut unknown = None;
            let mut unknown_count = 0;
            let mut satisfied = false;
            for &(v, pol) in clause {
                match assign[v] {
                    Some(val) if val == pol => {
                        satisfied = true;
                        break;
                    }
                    Some(_) => {}
                    None => {
                        unknown = Some((v, pol));
                        unknown_count += 1;
                    }
                }
            }
            if satisfied {
                continue;
            }
            match (unknown_count, unknown) {
                (0, _) => return false,
                (1, Some((v, pol))) => {
                    assign[v] = Some(pol);
                    changed = true;
                }
                _ => {}
            }
        }
        if !changed {
            break;
        }
    }
    let Some(v) = assign.iter().position(Option::is_none) else {
        return true;
    };
    for value in [false, true] {
        let mut next = assign.to_vec();
        next[v] = Some(value);
        if dpll(&mut next, clauses) {
            return true;
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn small_instances() {
        assert!(satisfiable(0, &[]));
        assert!(!satisfiable(0, &[vec![]]));
        assert!(satisfiable(2, &[vec![(0, true), (1, true)], vec![(0, false)]]));
        assert!(!satisfiable(
            1,
            &[vec![(0, true)], vec![(0, false)]]
        ));
        // pigeonhole: 3 pigeons, 2 holes
        let var = |p: usize, h: usize| p * 2 + h;
        let mut cls: Vec<Vec<Lit>> = (0..3).map(|p| vec![(var(p, 0), true), (var(p, 1), true)]).collect();
        for h in 0..2 {
            for a in 0..3 {
                for b in a + 1..3 {
                    cls.push(vec![(var(a, h), false), (var(b, h), false)]);
                }
            }
        }
        assert!(!satisfiable(6, &cls));
    }
}
