//! Inner translations of ideals: how elements of `S` act on an ideal by
//! left and right multiplication, the induced equivalence `α ~_I β`, and the
//! cardinality bounds that follow from counting translations of the kernel.

use std::collections::HashMap;

use serde::Serialize;
use thiserror::Error;

use crate::rees::{KernelAnalysis, ReesElement};
use crate::semigroup::{Elem, ElementSet, FiniteSemigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslationError {
    #[error("the given set is not a two-sided ideal")]
    NotAnIdeal,
    #[error("action of `{element}` disagrees with the kernel formulas at {at}")]
    FormulaMismatch { element: String, at: String },
}

/// The data `(g_α, Λ_α, I_α)` describing how `α` acts on the kernel.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ActionTriple {
    pub g_alpha: Elem,
    pub lambda_map: Vec<u32>,
    pub i_map: Vec<u32>,
}

impl ActionTriple {
    /// `α(λ, g, i) = (Λ_α(λ), g_α·p[I_α(1)][λ]·g, i)`.
    pub fn left_image(&self, ka: &KernelAnalysis, x: ReesElement) -> ReesElement {
        let group = ka.group();
        let p = ka.spec().p(self.i_map[0], x.lambda);
        ReesElement::new(self.lambda_map[x.lambda as usize], group.mul(group.mul(self.g_alpha, p), x.g), x.i)
    }

    /// `(λ, g, i)α = (λ, g·p[i][Λ_α(1)]·g_α, I_α(i))`.
    pub fn right_image(&self, ka: &KernelAnalysis, x: ReesElement) -> ReesElement {
        let group = ka.group();
        let p = ka.spec().p(x.i, self.lambda_map[0]);
        ReesElement::new(x.lambda, group.mul(group.mul(x.g, p), self.g_alpha), self.i_map[x.i as usize])
    }
}

/// Reads off `g_α`, `Λ_α` and `I_α` from products with `(λ,1,1)`, `(1,1,1)`
/// and `(1,1,i)`, then checks all four product formulas at every kernel
/// element.
pub fn action_triple(s: &FiniteSemigroup, ka: &KernelAnalysis, alpha: Elem) -> Result<ActionTriple, TranslationError> {
    let spec = ka.spec();
    let one = ka.group().identity();
    let coords = |a: Elem| ka.coords(a).expect("kernel is an ideal");
    let at = |lambda: u32, i: u32| ka.element(ReesElement::new(lambda, one, i));

    let g_alpha = coords(s.mul(alpha, at(0, 0))).g;
    let lambda_map = (0..spec.lambda_size() as u32).map(|l| coords(s.mul(alpha, at(l, 0))).lambda).collect();
    let i_map = (0..spec.i_size() as u32).map(|i| coords(s.mul(at(0, i), alpha)).i).collect();
    let triple = ActionTriple { g_alpha, lambda_map, i_map };

    let mismatch = |x: ReesElement| TranslationError::FormulaMismatch {
        element: s.name(alpha).to_string(),
        at: ka.element_name(x),
    };
    for x in spec.elements() {
        let k = ka.element(x);
        if coords(s.mul(alpha, k)) != triple.left_image(ka, x) || coords(s.mul(k, alpha)) != triple.right_image(ka, x) {
            return Err(mismatch(x));
        }
    }
    Ok(triple)
}

/// The partition of `S` by `~_I`, classes in order of their smallest member.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SimPartition {
    pub ideal: ElementSet,
    pub classes: Vec<Vec<Elem>>,
}

impl SimPartition {
    pub fn class_of(&self, a: Elem) -> usize {
        self.classes.iter().position(|c| c.contains(&a)).expect("partition covers S")
    }

    pub fn is_trivial(&self) -> bool {
        self.classes.iter().all(|c| c.len() == 1)
    }
}

/// `α ↦ (αx)_{x∈I} ++ (xα)_{x∈I}`.
fn translation_key(s: &FiniteSemigroup, ideal: &[Elem], alpha: Elem) -> Vec<Elem> {
    ideal.iter().map(|&x| s.mul(alpha, x)).chain(ideal.iter().map(|&x| s.mul(x, alpha))).collect()
}

pub fn sim_partition(s: &FiniteSemigroup, ideal: &ElementSet) -> Result<SimPartition, TranslationError> {
    if ideal.is_empty() || !s.is_two_sided_ideal(ideal) {
        return Err(TranslationError::NotAnIdeal);
    }
    let members: Vec<Elem> = ideal.iter().collect();
    let mut index: HashMap<Vec<Elem>, usize> = HashMap::new();
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    for alpha in s.elements() {
        let id = *index.entry(translation_key(s, &members, alpha)).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(alpha);
    }
    Ok(SimPartition { ideal: ideal.clone(), classes })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum SimVerdict {
    Trivial,
    NontrivialPair(Elem, Elem),
}

/// Trivial, or the first nontrivial class's first two members, listing
/// members outside the ideal before members inside it.
pub fn is_sim_trivial(s: &FiniteSemigroup, ideal: &ElementSet) -> Result<SimVerdict, TranslationError> {
    let partition = sim_partition(s, ideal)?;
    Ok(partition
        .classes
        .iter()
        .find(|c| c.len() > 1)
        .map(|class| {
            let mut ordered: Vec<Elem> = class.iter().copied().filter(|&a| !ideal.contains(a)).collect();
            ordered.extend(class.iter().copied().filter(|&a| ideal.contains(a)));
            SimVerdict::NontrivialPair(ordered[0], ordered[1])
        })
        .unwrap_or(SimVerdict::Trivial))
}

/// Directly re-checks that `α` and `β` induce the same translations.
pub fn same_translations(s: &FiniteSemigroup, ideal: &ElementSet, alpha: Elem, beta: Elem) -> bool {
    ideal.iter().all(|x| s.mul(alpha, x) == s.mul(beta, x) && s.mul(x, alpha) == s.mul(x, beta))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundStatus {
    WithinBound,
    ViolatesBound,
}

/// A cardinality bound; `value` saturates at `u128::MAX`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct Bound {
    pub value: u128,
    pub saturated: bool,
    pub status: BoundStatus,
}

impl Bound {
    fn evaluate(order: usize, value: Option<u128>) -> Bound {
        let (value, saturated) = match value {
            Some(v) => (v, false),
            None => (u128::MAX, true),
        };
        let status =
            if !saturated && order as u128 > value { BoundStatus::ViolatesBound } else { BoundStatus::WithinBound };
        Bound { value, saturated, status }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct BoundReport {
    pub order: usize,
    pub kernel_order: usize,
    /// `l^{2l}` with `l = |K|`.
    pub crude: Bound,
    /// `|G|·|Λ|^{|Λ|}·|I|^{|I|}`.
    pub refined: Bound,
}

impl BoundReport {
    pub fn violated(&self) -> bool {
        self.crude.status == BoundStatus::ViolatesBound || self.refined.status == BoundStatus::ViolatesBound
    }
}

fn checked_self_power(base: usize, exp: usize) -> Option<u128> {
    u32::try_from(exp).ok().and_then(|e| (base as u128).checked_pow(e))
}

pub fn bound_checks(s: &FiniteSemigroup, ka: &KernelAnalysis) -> BoundReport {
    let l = ka.kernel().len();
    let spec = ka.spec();
    let crude = checked_self_power(l, 2 * l);
    let refined = checked_self_power(spec.lambda_size(), spec.lambda_size())
        .and_then(|a| a.checked_mul(checked_self_power(spec.i_size(), spec.i_size())?))
        .and_then(|a| a.checked_mul(ka.group().order() as u128));
    BoundReport {
        order: s.order(),
        kernel_order: l,
        crude: Bound::evaluate(s.order(), crude),
        refined: Bound::evaluate(s.order(), refined),
    }
}
