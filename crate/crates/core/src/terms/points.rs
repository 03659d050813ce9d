use fixedbitset::FixedBitSet;

use super::{System, TermError};
use crate::semigroup::{Elem, FiniteSemigroup};

/// Default cap on `|S|^n` for exhaustive sweeps.
pub const DEFAULT_SWEEP_BUDGET: u64 = 1 << 24;

/// `S^n` with points coded as mixed-radix integers, first coordinate most
/// significant (so code order is lexicographic).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Space {
    radix: usize,
    arity: usize,
    size: usize,
}

impl Space {
    pub fn new(radix: usize, arity: usize, budget: u64) -> Result<Space, TermError> {
        let size = u32::try_from(arity)
            .ok()
            .and_then(|a| (radix as u64).checked_pow(a))
            .filter(|&size| size <= budget)
            .ok_or_else(|| TermError::SweepBudgetExceeded { points: format!("{radix}^{arity}"), budget })?;
        Ok(Space { radix, arity, size: size as usize })
    }

    pub fn radix(&self) -> usize {
        self.radix
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn encode(&self, point: &[Elem]) -> usize {
        debug_assert_eq!(point.len(), self.arity);
        point.iter().fold(0, |acc, &x| acc * self.radix + x as usize)
    }

    pub fn decode_into(&self, mut code: usize, point: &mut [Elem]) {
        for slot in point.iter_mut().rev() {
            *slot = (code % self.radix) as Elem;
            code /= self.radix;
        }
    }

    pub fn decode(&self, code: usize) -> Vec<Elem> {
        let mut point = vec![0; self.arity];
        self.decode_into(code, &mut point);
        point
    }
}

/// A subset of `S^n`.
#[derive(Clone, PartialEq, Eq)]
pub struct PointSet {
    space: Space,
    bits: FixedBitSet,
}

impl std::fmt::Debug for PointSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_struct("PointSet")
            .field("radix", &self.space.radix)
            .field("arity", &self.space.arity)
            .field("len", &self.len())
            .finish()
    }
}

impl PointSet {
    pub fn empty(space: Space) -> Self {
        PointSet { space, bits: FixedBitSet::with_capacity(space.size) }
    }

    pub fn full(space: Space) -> Self {
        let mut set = Self::empty(space);
        set.bits.insert_range(..);
        set
    }

    pub fn from_points<'p>(space: Space, points: impl IntoIterator<Item = &'p [Elem]>) -> Self {
        let mut set = Self::empty(space);
        for p in points {
            set.insert(p);
        }
        set
    }

    pub fn from_predicate(space: Space, mut pred: impl FnMut(&[Elem]) -> bool) -> Self {
        let mut set = Self::empty(space);
        let mut point = vec![0; space.arity];
        for code in 0..space.size {
            space.decode_into(code, &mut point);
            if pred(&point) {
                set.bits.insert(code);
            }
        }
        set
    }

    pub fn space(&self) -> Space {
        self.space
    }

    pub fn arity(&self) -> usize {
        self.space.arity
    }

    pub fn insert(&mut self, point: &[Elem]) {
        self.bits.insert(self.space.encode(point));
    }

    pub fn insert_code(&mut self, code: usize) {
        self.bits.insert(code);
    }

    pub fn remove_code(&mut self, code: usize) {
        self.bits.set(code, false);
    }

    pub fn contains(&self, point: &[Elem]) -> bool {
        self.bits.contains(self.space.encode(point))
    }

    pub fn contains_code(&self, code: usize) -> bool {
        self.bits.contains(code)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn codes(&self) -> impl Iterator<Item = usize> + '_ {
        self.bits.ones()
    }

    pub fn points(&self) -> impl Iterator<Item = Vec<Elem>> + '_ {
        self.bits.ones().map(|c| self.space.decode(c))
    }

    pub fn is_subset(&self, other: &PointSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersection(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.bits.intersect_with(&other.bits);
        out
    }

    pub fn union(&self, other: &PointSet) -> PointSet {
        let mut out = self.clone();
        out.bits.union_with(&other.bits);
        out
    }

    pub fn complement(&self) -> PointSet {
        let mut out = self.clone();
        out.bits.toggle_range(..);
        out
    }
}

/// The exact solution set of `system` over `S^n`, by exhaustive evaluation.
pub fn solve_system(s: &FiniteSemigroup, system: &System, budget: u64) -> Result<PointSet, TermError> {
    let space = Space::new(s.order(), system.arity(), budget)?;
    let mut survivors = PointSet::full(space);
    let mut point = vec![0; space.arity];
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for eq in system.equations() {
        let lhs = eq.lhs.compile(s);
        let rhs = eq.rhs.compile(s);
        let codes: Vec<usize> = survivors.codes().collect();
        for code in codes {
            space.decode_into(code, &mut point);
            if lhs.eval_with(&point, &mut left) != rhs.eval_with(&point, &mut right) {
                survivors.remove_code(code);
            }
        }
        if survivors.is_empty() {
            break;
        }
    }
    Ok(survivors)
}
