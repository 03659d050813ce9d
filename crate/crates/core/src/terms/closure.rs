//! Term functions `S^n → S` and the algebraic closure they induce.
//!
//! Every term denotes a function `S^n → S`, and over a finite semigroup
//! there are finitely many. Two terms give an equation satisfied on `Y`
//! exactly when their functions agree on `Y`, so the smallest algebraic set
//! containing `Y` is the set of points where every such pair still agrees.

use std::collections::HashMap;

use super::{PointSet, Space, Term, TermError};
use crate::semigroup::{Elem, FiniteSemigroup};

/// Default cap on the number of distinct term functions explored.
pub const DEFAULT_CLOSURE_BUDGET: usize = 50_000;

#[derive(Debug, Clone)]
pub struct TermFunction {
    /// Values indexed by point code.
    pub table: Vec<Elem>,
    pub representative: Term,
}

#[derive(Debug, Clone)]
pub enum Closure {
    Complete(Vec<TermFunction>),
    Inconclusive { explored: usize, budget: usize },
}

/// All term functions in `n` variables: projections and constants closed
/// under the pointwise product, by breadth-first search over tables.
pub fn term_function_closure(
    s: &FiniteSemigroup,
    n: usize,
    budget: usize,
    sweep_budget: u64,
) -> Result<Closure, TermError> {
    let space = Space::new(s.order(), n, sweep_budget)?;
    let mut functions: Vec<TermFunction> = Vec::new();
    let mut seen: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut point = vec![0; n];

    let mut add = |table: Vec<Elem>, rep: &dyn Fn() -> Term, functions: &mut Vec<TermFunction>| {
        if seen.contains_key(&table) {
            return;
        }
        seen.insert(table.clone(), functions.len());
        functions.push(TermFunction { table, representative: rep() });
    };

    for k in 0..n {
        let table = (0..space.size())
            .map(|code| {
                space.decode_into(code, &mut point);
                point[k]
            })
            .collect();
        add(table, &|| Term::var(n, k as u32), &mut functions);
    }
    for c in s.elements() {
        add(vec![c; space.size()], &|| Term::constant(n, c), &mut functions);
    }

    // Invariant: all products f_a·f_b with a, b < done are already present.
    let mut done = 0;
    while done < functions.len() {
        let fresh = done;
        for other in 0..=fresh {
            for (a, b) in [(fresh, other), (other, fresh)] {
                let table: Vec<Elem> =
                    functions[a].table.iter().zip(&functions[b].table).map(|(&x, &y)| s.mul(x, y)).collect();
                let (ra, rb) = (functions[a].representative.clone(), functions[b].representative.clone());
                add(table, &|| Term::product(&[&ra, &rb]), &mut functions);
                if functions.len() > budget {
                    return Ok(Closure::Inconclusive { explored: functions.len(), budget });
                }
            }
        }
        done += 1;
    }
    Ok(Closure::Complete(functions))
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum AclOutcome {
    Closed(PointSet),
    Inconclusive { explored: usize, budget: usize },
}

/// `acl(Y)` from a precomputed closure: points where, for every group of
/// functions agreeing on `Y`, all functions of the group agree.
pub fn algebraic_closure_with(functions: &[TermFunction], y: &PointSet) -> PointSet {
    let mut groups: HashMap<Vec<Elem>, Vec<usize>> = HashMap::new();
    for (idx, f) in functions.iter().enumerate() {
        let key: Vec<Elem> = y.codes().map(|c| f.table[c]).collect();
        groups.entry(key).or_default().push(idx);
    }
    let mut result = PointSet::full(y.space());
    for members in groups.values().filter(|m| m.len() > 1) {
        let base = &functions[members[0]].table;
        for &other in &members[1..] {
            let table = &functions[other].table;
            let disagree: Vec<usize> = result.codes().filter(|&c| table[c] != base[c]).collect();
            for c in disagree {
                result.remove_code(c);
            }
        }
    }
    result
}

pub fn algebraic_closure(
    s: &FiniteSemigroup,
    y: &PointSet,
    budget: usize,
    sweep_budget: u64,
) -> Result<AclOutcome, TermError> {
    match term_function_closure(s, y.arity(), budget, sweep_budget)? {
        Closure::Complete(functions) => Ok(AclOutcome::Closed(algebraic_closure_with(&functions, y))),
        Closure::Inconclusive { explored, budget } => Ok(AclOutcome::Inconclusive { explored, budget }),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;
    use crate::terms::{solve_system, DEFAULT_SWEEP_BUDGET};

    fn closure(s: &FiniteSemigroup, n: usize) -> Vec<TermFunction> {
        match term_function_closure(s, n, DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET).unwrap() {
            Closure::Complete(fs) => fs,
            Closure::Inconclusive { .. } => panic!("closure over budget"),
        }
    }

    fn acl(s: &FiniteSemigroup, y: &PointSet) -> PointSet {
        match algebraic_closure(s, y, DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET).unwrap() {
            AclOutcome::Closed(set) => set,
            AclOutcome::Inconclusive { .. } => panic!("closure over budget"),
        }
    }

    /// Independent oracle: close the set of tables under products by naive
    /// fixpoint iteration over all pairs.
    fn naive_closure_size(s: &FiniteSemigroup, n: usize) -> usize {
        let space = Space::new(s.order(), n, 1 << 20).unwrap();
        let mut set: std::collections::BTreeSet<Vec<Elem>> = (0..n)
            .map(|k| (0..space.size()).map(|c| space.decode(c)[k]).collect())
            .chain(s.elements().map(|c| vec![c; space.size()]))
            .collect();
        loop {
            let current: Vec<_> = set.iter().cloned().collect();
            let before = set.len();
            for f in &current {
                for g in &current {
                    set.insert(f.iter().zip(g).map(|(&a, &b)| s.mul(a, b)).collect());
                }
            }
            if set.len() == before {
                return before;
            }
        }
    }

    #[test]
    fn closure_sizes() {
        assert_eq!(closure(&fixtures::trivial(), 1).len(), 1);
        // LZ2: every product is its leftmost factor: {x1, a, b}.
        assert_eq!(closure(&fixtures::left_zero(2), 1).len(), 3);
        // N3: projections, three constants; all products are constant 0.
        let n3 = fixtures::null(3);
        assert_eq!(naive_closure_size(&n3, 4), 7);
        assert_eq!(closure(&n3, 4).len(), 7);
        for (s, n) in [
            (fixtures::cyclic(3), 2),
            (fixtures::cyclic(6), 2),
            (fixtures::right_zero(2), 2),
            (fixtures::symmetric(3), 1),
        ] {
            assert_eq!(closure(&s, n).len(), naive_closure_size(&s, n));
        }
    }

    #[test]
    fn representatives_reproduce_tables() {
        for (s, n) in
            [(fixtures::cyclic(3), 2), (fixtures::null(3), 2), (fixtures::symmetric(3), 1), (fixtures::left_zero(2), 2)]
        {
            let fs = closure(&s, n);
            let space = Space::new(s.order(), n, DEFAULT_SWEEP_BUDGET).unwrap();
            for f in &fs {
                for code in 0..space.size() {
                    assert_eq!(f.representative.eval(&s, &space.decode(code)), f.table[code]);
                }
            }
        }
    }

    #[test]
    fn budget_gives_inconclusive() {
        let s = fixtures::symmetric(3);
        let out = term_function_closure(&s, 2, 10, DEFAULT_SWEEP_BUDGET).unwrap();
        assert!(matches!(out, Closure::Inconclusive { budget: 10, .. }));
    }

    #[test]
    fn acl_examples() {
        let c2 = fixtures::cyclic(2);
        let space = Space::new(2, 2, DEFAULT_SWEEP_BUDGET).unwrap();
        assert_eq!(acl(&c2, &PointSet::full(space)), PointSet::full(space));
        let mgr = PointSet::from_predicate(space, |p| p[0] == 0 || p[1] == 0);
        assert_eq!(mgr.len(), 3);
        assert_eq!(acl(&c2, &mgr), PointSet::full(space));

        let n3 = fixtures::null(3);
        let space = Space::new(3, 4, DEFAULT_SWEEP_BUDGET).unwrap();
        let msem = PointSet::from_predicate(space, |p| p[0] == p[1] || p[2] == p[3]);
        let closed = acl(&n3, &msem);
        assert!(msem.is_subset(&closed));
        assert!(closed != msem);
    }

    #[test]
    fn acl_is_extensive_monotone_idempotent_and_fixes_solution_sets() {
        let s = fixtures::cyclic(6);
        let fs = closure(&s, 2);
        let space = Space::new(6, 2, DEFAULT_SWEEP_BUDGET).unwrap();
        let sets = [
            PointSet::from_predicate(space, |p| p[0] == 1),
            PointSet::from_predicate(space, |p| p[0] == 1 && p[1] < 3),
            PointSet::from_predicate(space, |p| p[0] == p[1] || p[1] == 0),
            PointSet::empty(space),
        ];
        for y in &sets {
            let c = algebraic_closure_with(&fs, y);
            assert!(y.is_subset(&c));
            assert_eq!(algebraic_closure_with(&fs, &c), c);
        }
        assert!(algebraic_closure_with(&fs, &sets[1]).is_subset(&algebraic_closure_with(&fs, &sets[0])));

        let text = "vars 2\nx1^2 = x2^4\n";
        let sys = crate::terms::parse_system(text, &s).unwrap();
        let v = solve_system(&s, &sys, DEFAULT_SWEEP_BUDGET).unwrap();
        assert_eq!(algebraic_closure_with(&fs, &v), v);
    }
}
