//! Synthesis of Γ-valued terms: distinguishing terms, members of `T_P`, and
//! systems of the form `{t_P(X) = (1,1,1)}` defining a given point set.
//!
//! A member of `T_P` is Γ-valued, equals `(1,1,1)` away from `P` and differs
//! from it at `P`. Base terms `(1,1,i)·x_k·(λ,h⁻¹,1)` vanish on whole fibers
//! of one coordinate; they are merged by group commutators
//! `t^(|G|-1)·s^(|G|-1)·t·s`, which vanish wherever either factor does and
//! stay nontrivial at `P` once `s` is conjugated so the two values at `P` do
//! not commute. Merging is done per coordinate first, so every coordinate's
//! contribution is a one-variable term, then across coordinates.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::rees::{KernelAnalysis, ReesElement};
use crate::semigroup::{Elem, FiniteSemigroup};
use crate::terms::{Equation, PointSet, Space, System, Term, TermError};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WitnessError {
    #[error("no sandwich term separates {alpha} and {beta}")]
    NotDistinguishable { alpha: String, beta: String },
    #[error("construction failed: {0}")]
    ConstructionFailed(String),
    #[error("point is not in the target domain")]
    PointNotInDomain,
    #[error("point has arity {found}, expected {expected}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("sweep over {points} points exceeds budget {budget}")]
    SweepBudgetExceeded { points: String, budget: u64 },
    #[error(transparent)]
    Term(TermError),
}

impl From<TermError> for WitnessError {
    fn from(e: TermError) -> Self {
        match e {
            TermError::SweepBudgetExceeded { points, budget } => WitnessError::SweepBudgetExceeded { points, budget },
            other => WitnessError::Term(other),
        }
    }
}

/// True iff every constant of `t` lies in the kernel and `t` takes values in
/// Γ at every point of `m`.
pub fn is_gamma_valued(s: &FiniteSemigroup, ka: &KernelAnalysis, t: &Term, m: &PointSet) -> bool {
    if !t.constants().iter().all(|&c| ka.in_kernel(c)) {
        return false;
    }
    let compiled = t.compile(s);
    let mut scratch = Vec::new();
    let space = m.space();
    let mut point = vec![0; space.arity()];
    m.codes().all(|code| {
        space.decode_into(code, &mut point);
        ka.gamma_value(compiled.eval_with(&point, &mut scratch)).is_some()
    })
}

/// `(1,1,i)·x·(λ,1,1)` in one variable.
fn sandwich(ka: &KernelAnalysis, arity: usize, var: u32, i: u32, lambda: u32, tail_g: Elem) -> Term {
    let head = Term::constant(arity, ka.element(ReesElement::new(0, ka.group().identity(), i)));
    let tail = Term::constant(arity, ka.element(ReesElement::new(lambda, tail_g, 0)));
    Term::product(&[&head, &Term::var(arity, var), &tail])
}

fn sandwich_value(s: &FiniteSemigroup, ka: &KernelAnalysis, i: u32, lambda: u32, x: Elem) -> Elem {
    let e = ka.group().identity();
    let head = ka.element(ReesElement::new(0, e, i));
    let tail = ka.element(ReesElement::new(lambda, e, 0));
    ka.gamma_value(s.mul(s.mul(head, x), tail)).expect("sandwich values lie in Γ")
}

/// The first `(i, λ)` in lexicographic order whose sandwich separates the
/// two elements.
fn separating_pair(s: &FiniteSemigroup, ka: &KernelAnalysis, alpha: Elem, beta: Elem) -> Option<(u32, u32)> {
    let spec = ka.spec();
    (0..spec.i_size() as u32)
        .flat_map(|i| (0..spec.lambda_size() as u32).map(move |l| (i, l)))
        .find(|&(i, l)| sandwich_value(s, ka, i, l, alpha) != sandwich_value(s, ka, i, l, beta))
}

/// A one-variable sandwich term `(1,1,i)·x·(λ,1,1)` with different values at
/// `alpha` and `beta`.
pub fn distinguishing_term(
    s: &FiniteSemigroup,
    ka: &KernelAnalysis,
    alpha: Elem,
    beta: Elem,
) -> Result<Term, WitnessError> {
    let (i, l) = separating_pair(s, ka, alpha, beta).ok_or_else(|| WitnessError::NotDistinguishable {
        alpha: s.name(alpha).to_string(),
        beta: s.name(beta).to_string(),
    })?;
    Ok(sandwich(ka, 1, 0, i, l, ka.group().identity()))
}

/// `t^(|G|-1)`, the pointwise inverse of a Γ-valued term.
pub fn invert_term(t: &Term, group_order: usize) -> Term {
    if group_order <= 1 {
        t.clone()
    } else {
        t.power(group_order as u64 - 1)
    }
}

/// One commutator merge: Γ-values at `P` of the two parts and the conjugator
/// applied to the second.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct CommutatorStep {
    pub g1: Elem,
    pub g2: Elem,
    pub conjugator: Elem,
}

#[derive(Debug, Clone)]
pub struct TpTerm {
    pub term: Term,
    /// Group coordinate of `term(P)`; never the identity.
    pub value: Elem,
    pub steps: Vec<CommutatorStep>,
}

#[derive(Debug, Clone, Copy)]
pub enum Domain<'a> {
    /// All of `S^n`.
    Full {
        arity: usize,
    },
    Points(&'a PointSet),
}

impl Domain<'_> {
    fn arity(&self) -> usize {
        match self {
            Domain::Full { arity } => *arity,
            Domain::Points(m) => m.arity(),
        }
    }
}

#[derive(Debug, Clone)]
struct Part {
    term: Term,
    value: Elem,
    steps: Vec<CommutatorStep>,
}

/// Builds `T_P` members. Full-space members depend only on `P`, and their
/// per-coordinate terms only on the coordinate and its value; both are cached.
pub struct Synthesizer<'a> {
    s: &'a FiniteSemigroup,
    ka: &'a KernelAnalysis,
    sweep_budget: u64,
    coordinate_cache: HashMap<(usize, usize, Elem), Part>,
    full_cache: HashMap<Vec<Elem>, TpTerm>,
}

impl<'a> Synthesizer<'a> {
    pub fn new(s: &'a FiniteSemigroup, ka: &'a KernelAnalysis, sweep_budget: u64) -> Self {
        Synthesizer { s, ka, sweep_budget, coordinate_cache: HashMap::new(), full_cache: HashMap::new() }
    }

    fn group_order(&self) -> usize {
        self.ka.group().order()
    }

    fn gamma_constant(&self, arity: usize, g: Elem) -> Term {
        Term::constant(arity, self.ka.gamma_element(g))
    }

    /// Merges two parts into one vanishing wherever either does.
    fn combine(&self, a: Part, b: Part) -> Result<Part, WitnessError> {
        let group = self.ka.group();
        let arity = a.term.arity();
        let conjugator =
            group.elements().find(|&g| !group.commute(a.value, group.conjugate(b.value, g))).ok_or_else(|| {
                WitnessError::ConstructionFailed(format!(
                    "{} commutes with every conjugate of {} in the structure group, so it is a zero-divisor",
                    group.name(a.value),
                    group.name(b.value)
                ))
            })?;
        let g2 = group.conjugate(b.value, conjugator);
        debug_assert_ne!(group.commutator(a.value, g2), group.identity());
        let conjugated = if conjugator == group.identity() {
            b.term
        } else {
            Term::product(&[
                &self.gamma_constant(arity, conjugator),
                &b.term,
                &self.gamma_constant(arity, group.inv(conjugator)),
            ])
        };
        let m = self.group_order();
        let term = Term::product(&[&invert_term(&a.term, m), &invert_term(&conjugated, m), &a.term, &conjugated]);
        let mut steps = a.steps;
        steps.extend(b.steps);
        steps.push(CommutatorStep { g1: a.value, g2: b.value, conjugator });
        Ok(Part { term, value: group.commutator(a.value, g2), steps })
    }

    /// Balanced merge of a nonempty list of parts.
    fn combine_all(&self, mut parts: Vec<Part>) -> Result<Part, WitnessError> {
        while parts.len() > 1 {
            let mut next = Vec::with_capacity(parts.len().div_ceil(2));
            let mut iter = parts.into_iter();
            while let Some(a) = iter.next() {
                match iter.next() {
                    Some(b) => next.push(self.combine(a, b)?),
                    None => next.push(a),
                }
            }
            parts = next;
        }
        Ok(parts.pop().expect("nonempty"))
    }

    /// A one-variable term in `x_k` that is `(1,1,1)` at every `q` in
    /// `targets` and not at `p`. Greedy: each target not yet covered gets
    /// the base term of its first separating sandwich, which also covers
    /// every other target in the same fiber.
    fn coordinate_part(&self, arity: usize, k: usize, p: Elem, targets: &[Elem]) -> Result<Option<Part>, WitnessError> {
        let group = self.ka.group();
        let mut covered = vec![false; self.s.order()];
        let mut parts = Vec::new();
        for &q in targets {
            if covered[q as usize] {
                continue;
            }
            let (i, l) = separating_pair(self.s, self.ka, p, q).ok_or_else(|| WitnessError::NotDistinguishable {
                alpha: self.s.name(p).to_string(),
                beta: self.s.name(q).to_string(),
            })?;
            let h = sandwich_value(self.s, self.ka, i, l, q);
            for &other in targets {
                if sandwich_value(self.s, self.ka, i, l, other) == h {
                    covered[other as usize] = true;
                }
            }
            let value = group.mul(sandwich_value(self.s, self.ka, i, l, p), group.inv(h));
            parts.push(Part { term: sandwich(self.ka, arity, k as u32, i, l, group.inv(h)), value, steps: Vec::new() });
        }
        if parts.is_empty() {
            return Ok(None);
        }
        self.combine_all(parts).map(Some)
    }

    fn nontrivial_constant(&self, arity: usize) -> Result<Part, WitnessError> {
        let group = self.ka.group();
        let g = group
            .elements()
            .find(|&g| g != group.identity())
            .ok_or_else(|| WitnessError::ConstructionFailed("structure group is trivial".into()))?;
        Ok(Part { term: self.gamma_constant(arity, g), value: g, steps: Vec::new() })
    }

    fn check_group(&self) -> Result<(), WitnessError> {
        if self.group_order() < 2 {
            return Err(WitnessError::ConstructionFailed(
                "structure group is trivial, so no Γ-valued term separates points".into(),
            ));
        }
        Ok(())
    }

    fn full_coordinate(&mut self, arity: usize, k: usize, p: Elem) -> Result<Option<Part>, WitnessError> {
        if let Some(part) = self.coordinate_cache.get(&(arity, k, p)) {
            return Ok(Some(part.clone()));
        }
        let targets: Vec<Elem> = self.s.elements().filter(|&q| q != p).collect();
        let part = self.coordinate_part(arity, k, p, &targets)?;
        if let Some(part) = &part {
            self.coordinate_cache.insert((arity, k, p), part.clone());
        }
        Ok(part)
    }

    /// A member of `T_P(M, Γ)`, verified before it is returned.
    pub fn tp_term(&mut self, p: &[Elem], domain: Domain<'_>) -> Result<TpTerm, WitnessError> {
        let arity = domain.arity();
        if p.len() != arity {
            return Err(WitnessError::ArityMismatch { expected: arity, found: p.len() });
        }
        if let Domain::Full { .. } = domain {
            if let Some(tp) = self.full_cache.get(p) {
                return Ok(tp.clone());
            }
        }
        self.check_group()?;
        let mut parts = Vec::new();
        match domain {
            Domain::Full { .. } => {
                for (k, &pk) in p.iter().enumerate() {
                    parts.extend(self.full_coordinate(arity, k, pk)?);
                }
            }
            Domain::Points(m) => {
                if !m.contains(p) {
                    return Err(WitnessError::PointNotInDomain);
                }
                let mut targets: Vec<Vec<Elem>> = vec![Vec::new(); arity];
                for q in m.points() {
                    if let Some(k) = (0..arity).find(|&k| q[k] != p[k]) {
                        targets[k].push(q[k]);
                    }
                }
                for (k, t) in targets.iter_mut().enumerate() {
                    t.sort_unstable();
                    t.dedup();
                    parts.extend(self.coordinate_part(arity, k, p[k], t)?);
                }
            }
        }
        let part = if parts.is_empty() { self.nontrivial_constant(arity)? } else { self.combine_all(parts)? };
        let tp = TpTerm { term: part.term, value: part.value, steps: part.steps };
        self.verify(&tp, p, domain)?;
        if let Domain::Full { .. } = domain {
            self.full_cache.insert(p.to_vec(), tp.clone());
        }
        Ok(tp)
    }

    fn verify(&self, tp: &TpTerm, p: &[Elem], domain: Domain<'_>) -> Result<(), WitnessError> {
        let ok = match domain {
            Domain::Points(m) => verify_on_points(self.s, self.ka, tp, p, m),
            Domain::Full { arity } => match Space::new(self.s.order(), arity, self.sweep_budget) {
                Ok(space) => verify_on_points(self.s, self.ka, tp, p, &PointSet::full(space)),
                Err(_) => self.verify_full_structurally(tp, p)?,
            },
        };
        if ok {
            Ok(())
        } else {
            Err(WitnessError::ConstructionFailed("synthesized term failed verification".into()))
        }
    }

    /// For spaces too large to sweep. The term is a commutator tree over the
    /// cached per-coordinate terms `u_k(x_k)`, so its value at `Q` depends
    /// only on which coordinates of `Q` agree with `P`. Each `u_k` is swept
    /// over `S`, then the whole term is evaluated at one point per agreement
    /// pattern.
    fn verify_full_structurally(&self, tp: &TpTerm, p: &[Elem]) -> Result<bool, WitnessError> {
        let arity = p.len();
        if !tp.term.constants().iter().all(|&c| self.ka.in_kernel(c)) {
            return Ok(false);
        }
        let e = self.ka.gamma_identity();
        for (k, &pk) in p.iter().enumerate() {
            let Some(part) = self.coordinate_cache.get(&(arity, k, pk)) else {
                continue;
            };
            let compiled = part.term.compile(self.s);
            let mut point = p.to_vec();
            for q in self.s.elements() {
                point[k] = q;
                let v = compiled.eval(&point);
                if self.ka.gamma_value(v).is_none() || (v == e) != (q != pk) {
                    return Ok(false);
                }
            }
        }
        let patterns = 1u64.checked_shl(arity as u32).filter(|&n| n <= self.sweep_budget).ok_or_else(|| {
            WitnessError::SweepBudgetExceeded { points: format!("2^{arity}"), budget: self.sweep_budget }
        })?;
        let compiled = tp.term.compile(self.s);
        let order = self.s.order() as Elem;
        let mut point = vec![0; arity];
        for mask in 0..patterns {
            for k in 0..arity {
                point[k] = if mask >> k & 1 == 1 { p[k] } else { (p[k] + 1) % order };
            }
            let v = compiled.eval(&point);
            let at_p = mask == patterns - 1;
            if self.ka.gamma_value(v).is_none() || (v == e) == at_p {
                return Ok(false);
            }
        }
        Ok(self.ka.gamma_value(compiled.eval(p)) == Some(tp.value))
    }

    /// `{t_P(X) = (1,1,1) : P ∉ M}` with each `t_P` in `T_P(S^n, Γ)`.
    pub fn defining_system(&mut self, m: &PointSet) -> Result<System, WitnessError> {
        let space = Space::new(self.s.order(), m.arity(), self.sweep_budget)?;
        let identity = Term::constant(m.arity(), self.ka.gamma_identity());
        let mut equations = Vec::new();
        for code in m.complement().codes() {
            let tp = self.tp_term(&space.decode(code), Domain::Full { arity: m.arity() })?;
            equations.push(Equation::new(tp.term, identity.clone())?);
        }
        Ok(System::new(m.arity(), equations)?)
    }
}

fn verify_on_points(s: &FiniteSemigroup, ka: &KernelAnalysis, tp: &TpTerm, p: &[Elem], m: &PointSet) -> bool {
    if !tp.term.constants().iter().all(|&c| ka.in_kernel(c)) {
        return false;
    }
    let e = ka.gamma_identity();
    let compiled = tp.term.compile(s);
    let mut scratch = Vec::new();
    let space = m.space();
    let p_code = space.encode(p);
    let mut point = vec![0; space.arity()];
    m.codes().all(|code| {
        space.decode_into(code, &mut point);
        let v = compiled.eval_with(&point, &mut scratch);
        if code == p_code {
            ka.gamma_value(v) == Some(tp.value) && v != e
        } else {
            v == e
        }
    })
}

/// A member of `T_P(M, Γ)` for `P ∈ M`, or of `T_P(S^n, Γ)` for the full domain.
pub fn build_tp_term(
    s: &FiniteSemigroup,
    ka: &KernelAnalysis,
    p: &[Elem],
    domain: Domain<'_>,
    sweep_budget: u64,
) -> Result<TpTerm, WitnessError> {
    Synthesizer::new(s, ka, sweep_budget).tp_term(p, domain)
}

/// A system of equations `t(X) = (1,1,1)` whose solution set is exactly `m`.
pub fn defining_system(
    s: &FiniteSemigroup,
    ka: &KernelAnalysis,
    m: &PointSet,
    sweep_budget: u64,
) -> Result<System, WitnessError> {
    Synthesizer::new(s, ka, sweep_budget).defining_system(m)
}
