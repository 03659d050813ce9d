//! Finite groups and the zero-divisor test that decides whether a group is
//! an equational domain.

use rayon::prelude::*;
use serde::Serialize;
use thiserror::Error;

use crate::semigroup::{Elem, ElementSet, FiniteSemigroup};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GroupError {
    #[error("not a group: {0}")]
    NotAGroup(String),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    table: FiniteSemigroup,
    identity: Elem,
    inverse: Vec<Elem>,
}

impl FiniteGroup {
    pub fn from_semigroup(s: FiniteSemigroup) -> Result<Self, GroupError> {
        let idempotents = s.idempotents();
        if idempotents.len() != 1 {
            return Err(GroupError::NotAGroup(format!("{} idempotents", idempotents.len())));
        }
        let identity = s.identity().ok_or_else(|| GroupError::NotAGroup("no two-sided identity".into()))?;
        let inverse = s
            .elements()
            .map(|g| {
                s.elements()
                    .find(|&h| s.mul(g, h) == identity && s.mul(h, g) == identity)
                    .ok_or_else(|| GroupError::NotAGroup(format!("`{}` has no inverse", s.name(g))))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok(FiniteGroup { table: s, identity, inverse })
    }

    pub fn semigroup(&self) -> &FiniteSemigroup {
        &self.table
    }

    pub fn order(&self) -> usize {
        self.table.order()
    }

    pub fn identity(&self) -> Elem {
        self.identity
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table.mul(a, b)
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    pub fn name(&self, a: Elem) -> &str {
        self.table.name(a)
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.table.index_of(name)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.table.elements()
    }

    /// `g y g^{-1}`.
    pub fn conjugate(&self, y: Elem, g: Elem) -> Elem {
        self.mul(self.mul(g, y), self.inv(g))
    }

    /// `[a, b] = a^{-1} b^{-1} a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        let ab = self.mul(a, b);
        self.mul(self.mul(self.inv(a), self.inv(b)), ab)
    }

    pub fn commute(&self, a: Elem, b: Elem) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn conjugacy_class(&self, y: Elem) -> ElementSet {
        ElementSet::from_iter(self.order(), self.elements().map(|g| self.conjugate(y, g)))
    }

    pub fn is_abelian(&self) -> bool {
        self.elements().all(|a| self.elements().all(|b| self.commute(a, b)))
    }

    /// The first pair `(x, y)` of non-identity elements, in index order,
    /// such that `x` commutes with every conjugate of `y`.
    pub fn find_zero_divisor(&self) -> Option<ZeroDivisorWitness> {
        let one = self.identity;
        // classes[y] lists the conjugacy class of y; computed once per y.
        let classes: Vec<Vec<Elem>> = self.elements().map(|y| self.conjugacy_class(y).iter().collect()).collect();
        (0..self.order() as Elem).into_par_iter().filter(|&x| x != one).find_map_first(|x| {
            self.elements()
                .filter(|&y| y != one)
                .find(|&y| classes[y as usize].iter().all(|&c| self.commute(x, c)))
                .map(|y| ZeroDivisorWitness { x, y })
        })
    }

    pub fn is_ed(&self) -> GroupVerdict {
        match self.find_zero_divisor() {
            None => GroupVerdict::Ed,
            Some(w) => GroupVerdict::NotEd(w),
        }
    }
}

/// `x, y != 1` with `[x, y^g] = 1` for every `g`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ZeroDivisorWitness {
    pub x: Elem,
    pub y: Elem,
}

impl ZeroDivisorWitness {
    /// Re-checks the commuting condition over all conjugators, without
    /// going through conjugacy classes.
    pub fn verify(&self, group: &FiniteGroup) -> bool {
        let one = group.identity();
        self.x != one
            && self.y != one
            && group.elements().all(|g| group.commutator(self.x, group.conjugate(self.y, g)) == one)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum GroupVerdict {
    Ed,
    NotEd(ZeroDivisorWitness),
}
