//! Finite semigroups given by Cayley tables, plus the ideal-theoretic
//! basics the rest of the crate runs on: principal ideals, the kernel
//! (minimal two-sided ideal), idempotents and zeros.

use std::fmt;

use fixedbitset::FixedBitSet;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Index of an element in its semigroup's universe.
pub type Elem = u32;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SemigroupError {
    #[error("empty semigroup: at least one element is required")]
    Empty,
    #[error("table has {rows} rows but {expected} elements")]
    RowCount { rows: usize, expected: usize },
    #[error("row {row} has {len} entries, expected {expected}")]
    RowLength { row: usize, len: usize, expected: usize },
    #[error("table entry at ({row}, {col}) is {value}, outside 0..{size}")]
    IndexOutOfRange { row: usize, col: usize, value: usize, size: usize },
    #[error("unknown element name `{0}` in table")]
    UnknownName(String),
    #[error("invalid element name `{0}`: names must be nonempty and contain no whitespace")]
    InvalidName(String),
    #[error("duplicate element name `{0}`")]
    DuplicateName(String),
    #[error("not associative: ({a}*{b})*{c} = {left} but {a}*({b}*{c}) = {right}")]
    NotAssociative { a: String, b: String, c: String, left: String, right: String },
}

impl SemigroupError {
    /// The violating triple of a `NotAssociative` error.
    pub fn associativity_witness(&self) -> Option<(&str, &str, &str)> {
        match self {
            SemigroupError::NotAssociative { a, b, c, .. } => Some((a, b, c)),
            _ => None,
        }
    }
}

/// A validated finite semigroup: element names plus an associative
/// multiplication table over indices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct FiniteSemigroup {
    names: Vec<String>,
    table: Vec<Elem>,
    n: usize,
}

impl fmt::Debug for FiniteSemigroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteSemigroup").field("order", &self.n).field("names", &self.names).finish()
    }
}

fn check_names(names: &[String]) -> Result<(), SemigroupError> {
    if names.is_empty() {
        return Err(SemigroupError::Empty);
    }
    let mut seen = std::collections::HashSet::with_capacity(names.len());
    for name in names {
        if name.is_empty() || name.chars().any(char::is_whitespace) {
            return Err(SemigroupError::InvalidName(name.clone()));
        }
        if !seen.insert(name.as_str()) {
            return Err(SemigroupError::DuplicateName(name.clone()));
        }
    }
    Ok(())
}

impl FiniteSemigroup {
    /// Validates a table of element indices. Rejects out-of-range entries and
    /// non-associative tables; the reported triple is the first violation in
    /// lexicographic `(a, b, c)` order.
    pub fn from_indices(names: Vec<String>, rows: Vec<Vec<usize>>) -> Result<Self, SemigroupError> {
        check_names(&names)?;
        let n = names.len();
        if rows.len() != n {
            return Err(SemigroupError::RowCount { rows: rows.len(), expected: n });
        }
        let mut table = Vec::with_capacity(n * n);
        for (row, entries) in rows.iter().enumerate() {
            if entries.len() != n {
                return Err(SemigroupError::RowLength { row, len: entries.len(), expected: n });
            }
            for (col, &value) in entries.iter().enumerate() {
                if value >= n {
                    return Err(SemigroupError::IndexOutOfRange { row, col, value, size: n });
                }
                table.push(value as Elem);
            }
        }
        let s = FiniteSemigroup { names, table, n };
        s.check_associative()?;
        Ok(s)
    }

    /// Validates a table whose entries are element names.
    pub fn from_names(names: Vec<String>, rows: Vec<Vec<String>>) -> Result<Self, SemigroupError> {
        check_names(&names)?;
        let index: std::collections::HashMap<&str, usize> =
            names.iter().enumerate().map(|(i, s)| (s.as_str(), i)).collect();
        let rows = rows
            .iter()
            .map(|row| {
                row.iter()
                    .map(|name| {
                        index.get(name.as_str()).copied().ok_or_else(|| SemigroupError::UnknownName(name.clone()))
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Self::from_indices(names, rows)
    }

    /// Builds a semigroup from a multiplication closure, then validates it.
    pub fn from_fn(names: Vec<String>, mut mul: impl FnMut(usize, usize) -> usize) -> Result<Self, SemigroupError> {
        let n = names.len();
        let rows = (0..n).map(|a| (0..n).map(|b| mul(a, b)).collect()).collect();
        Self::from_indices(names, rows)
    }

    fn check_associative(&self) -> Result<(), SemigroupError> {
        let n = self.n;
        for a in 0..n {
            for b in 0..n {
                let ab = self.table[a * n + b] as usize;
                for c in 0..n {
                    let left = self.table[ab * n + c];
                    let right = self.table[a * n + self.table[b * n + c] as usize];
                    if left != right {
                        return Err(SemigroupError::NotAssociative {
                            a: self.names[a].clone(),
                            b: self.names[b].clone(),
                            c: self.names[c].clone(),
                            left: self.names[left as usize].clone(),
                            right: self.names[right as usize].clone(),
                        });
                    }
                }
            }
        }
        Ok(())
    }

    pub fn order(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.n + b as usize]
    }

    /// Left-to-right product of a nonempty sequence.
    pub fn product(&self, factors: impl IntoIterator<Item = Elem>) -> Option<Elem> {
        factors.into_iter().reduce(|acc, x| self.mul(acc, x))
    }

    /// `a^k` for `k >= 1`, by repeated squaring.
    pub fn pow(&self, a: Elem, k: u64) -> Elem {
        assert!(k >= 1, "semigroup powers start at 1");
        let mut base = a;
        let mut k = k;
        let mut acc: Option<Elem> = None;
        while k > 0 {
            if k & 1 == 1 {
                acc = Some(match acc {
                    Some(x) => self.mul(x, base),
                    None => base,
                });
            }
            k >>= 1;
            if k > 0 {
                base = self.mul(base, base);
            }
        }
        acc.expect("k >= 1")
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, a: Elem) -> &str {
        &self.names[a as usize]
    }

    pub fn index_of(&self, name: &str) -> Option<Elem> {
        self.names.iter().position(|s| s == name).map(|i| i as Elem)
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        0..self.n as Elem
    }

    /// Table rows as element indices.
    pub fn rows(&self) -> Vec<Vec<usize>> {
        self.table.chunks(self.n).map(|r| r.iter().map(|&x| x as usize).collect()).collect()
    }

    pub fn identity(&self) -> Option<Elem> {
        self.elements().find(|&e| self.elements().all(|x| self.mul(e, x) == x && self.mul(x, e) == x))
    }

    /// The zero element, if one exists.
    pub fn has_zero(&self) -> Option<Elem> {
        self.elements().find(|&z| self.elements().all(|x| self.mul(z, x) == z && self.mul(x, z) == z))
    }

    pub fn idempotents(&self) -> ElementSet {
        ElementSet::from_iter(self.n, self.elements().filter(|&e| self.mul(e, e) == e))
    }

    /// `S` itself if it already has a two-sided identity, otherwise `S ∪ {1}`.
    pub fn adjoin_identity(&self) -> FiniteSemigroup {
        if self.identity().is_some() {
            return self.clone();
        }
        let mut name = "1".to_string();
        while self.index_of(&name).is_some() {
            name.push('\'');
        }
        self.with_new_identity(&name).expect("fresh name is unique")
    }

    /// `S ∪ {name}` with the new element acting as identity, whether or not `S`
    /// already has one. The new element takes the last index.
    pub fn with_new_identity(&self, name: &str) -> Result<FiniteSemigroup, SemigroupError> {
        let n = self.n;
        let mut names = self.names.clone();
        names.push(name.to_string());
        FiniteSemigroup::from_fn(names, |a, b| {
            if a == n {
                b
            } else if b == n {
                a
            } else {
                self.mul(a as Elem, b as Elem) as usize
            }
        })
    }

    /// `S^1 a S^1`.
    pub fn principal_ideal(&self, a: Elem) -> ElementSet {
        let mut set = ElementSet::empty(self.n);
        set.insert(a);
        for x in self.elements() {
            let xa = self.mul(x, a);
            set.insert(xa);
            set.insert(self.mul(a, x));
            for y in self.elements() {
                set.insert(self.mul(xa, y));
            }
        }
        set
    }

    /// The minimal two-sided ideal: the intersection of all principal ideals.
    pub fn kernel(&self) -> ElementSet {
        let mut kernel = ElementSet::full(self.n);
        for a in self.elements() {
            kernel.intersect_with(&self.principal_ideal(a));
        }
        kernel
    }

    pub fn is_two_sided_ideal(&self, set: &ElementSet) -> bool {
        set.iter().all(|k| self.elements().all(|x| set.contains(self.mul(k, x)) && set.contains(self.mul(x, k))))
    }

    /// The subsemigroup on `members`, keeping their names and relative order.
    /// Returns the semigroup together with the local→parent index map.
    pub fn subsemigroup(&self, members: &ElementSet) -> Result<(FiniteSemigroup, Vec<Elem>), SemigroupError> {
        let map: Vec<Elem> = members.iter().collect();
        let mut local = vec![usize::MAX; self.n];
        for (i, &m) in map.iter().enumerate() {
            local[m as usize] = i;
        }
        let names = map.iter().map(|&m| self.names[m as usize].clone()).collect();
        let rows = map
            .iter()
            .enumerate()
            .map(|(row, &a)| {
                map.iter()
                    .enumerate()
                    .map(|(col, &b)| {
                        let ab = local[self.mul(a, b) as usize];
                        if ab == usize::MAX {
                            Err(SemigroupError::IndexOutOfRange {
                                row,
                                col,
                                value: self.mul(a, b) as usize,
                                size: map.len(),
                            })
                        } else {
                            Ok(ab)
                        }
                    })
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        Ok((FiniteSemigroup::from_indices(names, rows)?, map))
    }

    /// The same semigroup with elements relabelled: new index `perm[i]` holds
    /// old element `i`.
    pub fn relabel(&self, perm: &[usize]) -> FiniteSemigroup {
        let n = self.n;
        let mut inverse = vec![0; n];
        for (old, &new) in perm.iter().enumerate() {
            inverse[new] = old;
        }
        let names = inverse.iter().map(|&old| self.names[old].clone()).collect();
        FiniteSemigroup::from_fn(names, |a, b| perm[self.mul(inverse[a] as Elem, inverse[b] as Elem) as usize])
            .expect("relabelling preserves associativity")
    }

    pub fn to_file(&self) -> CayleyFile {
        CayleyFile {
            elements: self.names.clone(),
            table: self
                .table
                .chunks(self.n)
                .map(|row| row.iter().map(|&x| self.names[x as usize].clone()).collect())
                .collect(),
        }
    }
}

/// JSON Cayley-table document: `{"elements": [...], "table": [[...]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CayleyFile {
    pub elements: Vec<String>,
    pub table: Vec<Vec<String>>,
}

impl CayleyFile {
    pub fn into_semigroup(self) -> Result<FiniteSemigroup, SemigroupError> {
        FiniteSemigroup::from_names(self.elements, self.table)
    }
}

/// A subset of a semigroup's universe, stored as a bitset over indices.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ElementSet {
    bits: FixedBitSet,
}

impl fmt::Debug for ElementSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl ElementSet {
    pub fn empty(universe: usize) -> Self {
        ElementSet { bits: FixedBitSet::with_capacity(universe) }
    }

    pub fn full(universe: usize) -> Self {
        let mut bits = FixedBitSet::with_capacity(universe);
        bits.insert_range(..);
        ElementSet { bits }
    }

    pub fn from_iter(universe: usize, members: impl IntoIterator<Item = Elem>) -> Self {
        let mut set = Self::empty(universe);
        for m in members {
            set.insert(m);
        }
        set
    }

    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn insert(&mut self, a: Elem) {
        self.bits.insert(a as usize);
    }

    pub fn contains(&self, a: Elem) -> bool {
        self.bits.contains(a as usize)
    }

    pub fn len(&self) -> usize {
        self.bits.count_ones(..)
    }

    pub fn is_empty(&self) -> bool {
        self.bits.is_clear()
    }

    pub fn iter(&self) -> impl Iterator<Item = Elem> + '_ {
        self.bits.ones().map(|i| i as Elem)
    }

    pub fn is_subset(&self, other: &ElementSet) -> bool {
        self.bits.is_subset(&other.bits)
    }

    pub fn intersect_with(&mut self, other: &ElementSet) {
        self.bits.intersect_with(&other.bits);
    }

    pub fn first(&self) -> Option<Elem> {
        self.iter().next()
    }
}
