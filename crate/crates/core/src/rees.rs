//! Rees matrix semigroups `(G, P, Λ, I)` and the coordinatization of a
//! finite completely simple semigroup as one.
//!
//! Elements are triples `(λ, g, i)` multiplied by
//! `(λ, g, i)(μ, h, j) = (λ, g·p[i][μ]·h, j)`, where the sandwich matrix `P`
//! has `|I|` rows and `|Λ|` columns. Indices are 0-based in code and
//! rendered 1-based in element names and reports.

use std::collections::HashMap;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::group::{FiniteGroup, GroupError};
use crate::semigroup::{CayleyFile, Elem, ElementSet, FiniteSemigroup, SemigroupError};

/// Largest semigroup `build_cayley` materializes unless told otherwise.
pub const DEFAULT_SIZE_CAP: usize = 4096;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ReesError {
    #[error("index sets must be nonempty (|Λ| = {lambda}, |I| = {i})")]
    EmptyIndexSet { lambda: usize, i: usize },
    #[error("sandwich matrix must be {rows}×{cols} (|I| rows, |Λ| columns)")]
    MatrixShape { rows: usize, cols: usize },
    #[error("unknown group element `{0}` in sandwich matrix")]
    UnknownGroupElement(String),
    #[error("Rees semigroup would have {size} elements, over the cap of {cap}")]
    SizeCapExceeded { size: usize, cap: usize },
    #[error("not completely simple: {0}")]
    NotCompletelySimple(String),
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Semigroup(#[from] SemigroupError),
}

/// `(λ, g, i)` with 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ReesElement {
    pub lambda: u32,
    pub g: Elem,
    pub i: u32,
}

impl ReesElement {
    pub fn new(lambda: u32, g: Elem, i: u32) -> Self {
        ReesElement { lambda, g, i }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ReesSpec {
    group: FiniteGroup,
    lambda_size: usize,
    i_size: usize,
    /// Row-major, `i_size` rows of `lambda_size` entries.
    matrix: Vec<Elem>,
}

/// Outcome of the nonsingularity test; indices are 0-based.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum MatrixVerdict {
    Nonsingular,
    EqualRows(u32, u32),
    EqualColumns(u32, u32),
}

impl fmt::Display for MatrixVerdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MatrixVerdict::Nonsingular => write!(f, "nonsingular"),
            MatrixVerdict::EqualRows(a, b) => write!(f, "rows {} and {} are equal", a + 1, b + 1),
            MatrixVerdict::EqualColumns(a, b) => write!(f, "columns {} and {} are equal", a + 1, b + 1),
        }
    }
}

impl ReesSpec {
    pub fn new(group: FiniteGroup, lambda_size: usize, i_size: usize, rows: Vec<Vec<Elem>>) -> Result<Self, ReesError> {
        if lambda_size == 0 || i_size == 0 {
            return Err(ReesError::EmptyIndexSet { lambda: lambda_size, i: i_size });
        }
        if rows.len() != i_size || rows.iter().any(|r| r.len() != lambda_size) {
            return Err(ReesError::MatrixShape { rows: i_size, cols: lambda_size });
        }
        let matrix: Vec<Elem> = rows.into_iter().flatten().collect();
        if let Some(&bad) = matrix.iter().find(|&&p| p as usize >= group.order()) {
            return Err(ReesError::UnknownGroupElement(format!("#{bad}")));
        }
        Ok(ReesSpec { group, lambda_size, i_size, matrix })
    }

    pub fn group(&self) -> &FiniteGroup {
        &self.group
    }

    pub fn lambda_size(&self) -> usize {
        self.lambda_size
    }

    pub fn i_size(&self) -> usize {
        self.i_size
    }

    /// `p[i][μ]`.
    #[inline]
    pub fn p(&self, i: u32, mu: u32) -> Elem {
        self.matrix[i as usize * self.lambda_size + mu as usize]
    }

    pub fn rows(&self) -> Vec<Vec<Elem>> {
        self.matrix.chunks(self.lambda_size).map(<[Elem]>::to_vec).collect()
    }

    pub fn order(&self) -> usize {
        self.lambda_size * self.group.order() * self.i_size
    }

    /// First row and first column all equal to the identity.
    pub fn is_normalized(&self) -> bool {
        let one = self.group.identity();
        (0..self.lambda_size as u32).all(|mu| self.p(0, mu) == one)
            && (0..self.i_size as u32).all(|i| self.p(i, 0) == one)
    }

    #[inline]
    pub fn multiply(&self, x: ReesElement, y: ReesElement) -> ReesElement {
        let g = self.group.mul(self.group.mul(x.g, self.p(x.i, y.lambda)), y.g);
        ReesElement { lambda: x.lambda, g, i: y.i }
    }

    /// Dense code of a triple, lexicographic in `(λ, g, i)`.
    #[inline]
    pub fn encode(&self, x: ReesElement) -> usize {
        (x.lambda as usize * self.group.order() + x.g as usize) * self.i_size + x.i as usize
    }

    pub fn decode(&self, code: usize) -> ReesElement {
        let i = code % self.i_size;
        let rest = code / self.i_size;
        ReesElement { lambda: (rest / self.group.order()) as u32, g: (rest % self.group.order()) as Elem, i: i as u32 }
    }

    pub fn elements(&self) -> impl Iterator<Item = ReesElement> + '_ {
        (0..self.order()).map(|c| self.decode(c))
    }

    pub fn element_name(&self, x: ReesElement) -> String {
        format!("({},{},{})", x.lambda + 1, self.group.name(x.g), x.i + 1)
    }

    /// Materializes the triple semigroup. Element `k` of the result is
    /// `decode(k)`.
    pub fn build_cayley(&self, cap: usize) -> Result<FiniteSemigroup, ReesError> {
        let size = self.order();
        if size > cap {
            return Err(ReesError::SizeCapExceeded { size, cap });
        }
        let names = self.elements().map(|x| self.element_name(x)).collect();
        Ok(FiniteSemigroup::from_fn(names, |a, b| self.encode(self.multiply(self.decode(a), self.decode(b))))?)
    }

    /// The normalized spec `p'[i][μ] = p[1][1]·p[i][1]^{-1}·p[i][μ]·p[1][μ]^{-1}`
    /// together with the isomorphism from this spec's triples onto it.
    pub fn normalize(&self) -> (ReesSpec, Normalization) {
        let g = &self.group;
        let p11 = self.p(0, 0);
        let rows = (0..self.i_size as u32)
            .map(|i| {
                (0..self.lambda_size as u32)
                    .map(|mu| {
                        let left = g.mul(p11, g.inv(self.p(i, 0)));
                        g.mul(g.mul(left, self.p(i, mu)), g.inv(self.p(0, mu)))
                    })
                    .collect()
            })
            .collect();
        let normalized = ReesSpec::new(g.clone(), self.lambda_size, self.i_size, rows).expect("same shape and group");
        let left = (0..self.lambda_size as u32).map(|l| self.p(0, l)).collect();
        let right = (0..self.i_size as u32).map(|i| g.mul(self.p(i, 0), g.inv(p11))).collect();
        (normalized, Normalization { left, right })
    }

    pub fn nonsingularity(&self) -> MatrixVerdict {
        let rows = self.rows();
        for a in 0..self.i_size {
            for b in a + 1..self.i_size {
                if rows[a] == rows[b] {
                    return MatrixVerdict::EqualRows(a as u32, b as u32);
                }
            }
        }
        let col = |mu: usize| (0..self.i_size).map(|i| rows[i][mu]).collect::<Vec<_>>();
        for a in 0..self.lambda_size {
            for b in a + 1..self.lambda_size {
                if col(a) == col(b) {
                    return MatrixVerdict::EqualColumns(a as u32, b as u32);
                }
            }
        }
        MatrixVerdict::Nonsingular
    }

    pub fn to_file(&self) -> ReesSpecFile {
        ReesSpecFile {
            group: self.group.semigroup().to_file(),
            lambda: self.lambda_size,
            i: self.i_size,
            p: self
                .rows()
                .into_iter()
                .map(|r| r.into_iter().map(|g| self.group.name(g).to_string()).collect())
                .collect(),
        }
    }
}

/// `normalize_matrix`: the normalized spec alone.
pub fn normalize_matrix(spec: &ReesSpec) -> ReesSpec {
    spec.normalize().0
}

/// The isomorphism `(λ, g, i) ↦ (λ, left[λ]·g·right[i], i)` produced by
/// normalization.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Normalization {
    left: Vec<Elem>,
    right: Vec<Elem>,
}

impl Normalization {
    pub fn apply(&self, group: &FiniteGroup, x: ReesElement) -> ReesElement {
        let g = group.mul(group.mul(self.left[x.lambda as usize], x.g), self.right[x.i as usize]);
        ReesElement { g, ..x }
    }
}

/// Exhaustively checks that `map` (indexed by `from` codes) is a bijective
/// homomorphism onto `to`.
pub fn is_isomorphism(from: &ReesSpec, to: &ReesSpec, map: impl Fn(ReesElement) -> ReesElement) -> bool {
    if from.order() != to.order() {
        return false;
    }
    let images: Vec<ReesElement> = from.elements().map(&map).collect();
    let mut hit = vec![false; to.order()];
    for &y in &images {
        if std::mem::replace(&mut hit[to.encode(y)], true) {
            return false;
        }
    }
    from.elements().all(|x| {
        from.elements().all(|y| {
            let xy = from.multiply(x, y);
            images[from.encode(xy)] == to.multiply(images[from.encode(x)], images[from.encode(y)])
        })
    })
}

/// JSON document `{"group": <cayley>, "lambda": m, "i": n, "P": [[names]]}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ReesSpecFile {
    pub group: CayleyFile,
    pub lambda: usize,
    pub i: usize,
    #[serde(rename = "P")]
    pub p: Vec<Vec<String>>,
}

impl ReesSpecFile {
    pub fn into_spec(self) -> Result<ReesSpec, ReesError> {
        let group = FiniteGroup::from_semigroup(self.group.into_semigroup()?)?;
        let rows = self
            .p
            .iter()
            .map(|row| {
                row.iter()
                    .map(|name| group.index_of(name).ok_or_else(|| ReesError::UnknownGroupElement(name.clone())))
                    .collect::<Result<Vec<_>, _>>()
            })
            .collect::<Result<Vec<_>, _>>()?;
        ReesSpec::new(group, self.lambda, self.i, rows)
    }
}

/// The kernel of a finite semigroup in Rees coordinates: a normalized spec
/// and a bijection between kernel elements and triples.
#[derive(Debug, Clone)]
pub struct KernelAnalysis {
    kernel: ElementSet,
    spec: ReesSpec,
    to_coords: Vec<Option<ReesElement>>,
    from_coords: Vec<Elem>,
}

impl KernelAnalysis {
    /// Computes the kernel of `s` and coordinatizes it.
    pub fn of(s: &FiniteSemigroup) -> Result<Self, ReesError> {
        let kernel = s.kernel();
        let (k, local_to_parent) = s.subsemigroup(&kernel)?;
        let local = decompose_completely_simple(&k)?;
        let mut to_coords = vec![None; s.order()];
        for (local_idx, &parent) in local_to_parent.iter().enumerate() {
            to_coords[parent as usize] = local.to_coords[local_idx];
        }
        let from_coords = local.from_coords.iter().map(|&l| local_to_parent[l as usize]).collect();
        let analysis = KernelAnalysis { kernel, spec: local.spec, to_coords, from_coords };
        Ok(analysis)
    }

    pub fn kernel(&self) -> &ElementSet {
        &self.kernel
    }

    pub fn spec(&self) -> &ReesSpec {
        &self.spec
    }

    pub fn group(&self) -> &FiniteGroup {
        self.spec.group()
    }

    /// Coordinates of a kernel element; `None` outside the kernel.
    pub fn coords(&self, a: Elem) -> Option<ReesElement> {
        self.to_coords[a as usize]
    }

    /// The kernel element with the given coordinates.
    pub fn element(&self, x: ReesElement) -> Elem {
        self.from_coords[self.spec.encode(x)]
    }

    pub fn in_kernel(&self, a: Elem) -> bool {
        self.kernel.contains(a)
    }

    /// `(1, g, 1)`.
    pub fn gamma_element(&self, g: Elem) -> Elem {
        self.element(ReesElement::new(0, g, 0))
    }

    /// `(1, 1, 1)`, the identity of Γ.
    pub fn gamma_identity(&self) -> Elem {
        self.gamma_element(self.group().identity())
    }

    /// The group coordinate of `a` if `a ∈ Γ`.
    pub fn gamma_value(&self, a: Elem) -> Option<Elem> {
        match self.coords(a) {
            Some(ReesElement { lambda: 0, g, i: 0 }) => Some(g),
            _ => None,
        }
    }

    pub fn gamma(&self) -> ElementSet {
        ElementSet::from_iter(self.to_coords.len(), self.group().elements().map(|g| self.gamma_element(g)))
    }

    /// `L_i = {(λ, g, i)}`.
    pub fn left_ideal(&self, i: u32) -> ElementSet {
        self.members(|x| x.i == i)
    }

    /// `R_λ = {(λ, g, i)}`.
    pub fn right_ideal(&self, lambda: u32) -> ElementSet {
        self.members(|x| x.lambda == lambda)
    }

    fn members(&self, pred: impl Fn(&ReesElement) -> bool) -> ElementSet {
        ElementSet::from_iter(self.to_coords.len(), self.spec.elements().filter(|x| pred(x)).map(|x| self.element(x)))
    }

    pub fn element_name(&self, x: ReesElement) -> String {
        self.spec.element_name(x)
    }

    /// Exhaustively compares the multiplication of `s` on the kernel with
    /// the Rees multiplication of the coordinates.
    pub fn check_transport(&self, s: &FiniteSemigroup) -> bool {
        let members: Vec<Elem> = self.kernel.iter().collect();
        members.iter().all(|&a| {
            members.iter().all(|&b| {
                let (x, y) = (self.coords(a).unwrap(), self.coords(b).unwrap());
                self.coords(s.mul(a, b)) == Some(self.spec.multiply(x, y))
            })
        }) && members.iter().all(|&a| self.element(self.coords(a).unwrap()) == a)
    }
}

fn classes_by_key(k: &FiniteSemigroup, key: impl Fn(Elem) -> ElementSet) -> (Vec<Vec<Elem>>, Vec<usize>) {
    let mut index: HashMap<ElementSet, usize> = HashMap::new();
    let mut classes: Vec<Vec<Elem>> = Vec::new();
    let mut class_of = vec![0; k.order()];
    for x in k.elements() {
        let id = *index.entry(key(x)).or_insert_with(|| {
            classes.push(Vec::new());
            classes.len() - 1
        });
        classes[id].push(x);
        class_of[x as usize] = id;
    }
    (classes, class_of)
}

/// Coordinatizes a completely simple semigroup.
///
/// Right classes `xK¹` become Λ and left classes `K¹x` become I, each ordered
/// by smallest member, so element 0 lies in `R_1 ∩ L_1`. That intersection is
/// the structure group `H`. With `q_λ` the smallest member of `R_λ ∩ L_1` and
/// `w_i` the smallest of `R_1 ∩ L_i`, the triple `(λ, h, i)` names
/// `q_λ·h·w_i` and `p[i][μ] = w_i·q_μ`. The raw spec is then normalized and
/// the whole coordinatization is checked against the table exhaustively.
pub fn decompose_completely_simple(k: &FiniteSemigroup) -> Result<KernelAnalysis, ReesError> {
    let bad = |msg: String| ReesError::NotCompletelySimple(msg);
    let n = k.order();
    if k.kernel().len() != n {
        return Err(bad("the semigroup is not simple".into()));
    }
    let (r_classes, r_of) = classes_by_key(k, |x| {
        let mut set = ElementSet::from_iter(n, k.elements().map(|y| k.mul(x, y)));
        set.insert(x);
        set
    });
    let (l_classes, l_of) = classes_by_key(k, |x| {
        let mut set = ElementSet::from_iter(n, k.elements().map(|y| k.mul(y, x)));
        set.insert(x);
        set
    });
    let in_h = |x: Elem| r_of[x as usize] == 0 && l_of[x as usize] == 0;
    let h_members = ElementSet::from_iter(n, k.elements().filter(|&x| in_h(x)));
    if !h_members.iter().any(|x| k.mul(x, x) == x) {
        return Err(bad("no idempotent in the H-class of the first element".into()));
    }
    let (h_table, h_to_k) =
        k.subsemigroup(&h_members).map_err(|_| bad("H-class is not closed under multiplication".into()))?;
    let group = FiniteGroup::from_semigroup(h_table).map_err(|e| bad(format!("H-class: {e}")))?;
    let mut k_to_h = vec![None; n];
    for (h, &x) in h_to_k.iter().enumerate() {
        k_to_h[x as usize] = Some(h as Elem);
    }

    let q: Vec<Elem> = r_classes
        .iter()
        .map(|class| class.iter().copied().find(|&x| l_of[x as usize] == 0))
        .collect::<Option<_>>()
        .ok_or_else(|| bad("some right class misses the first left class".into()))?;
    let w: Vec<Elem> = l_classes
        .iter()
        .map(|class| class.iter().copied().find(|&x| r_of[x as usize] == 0))
        .collect::<Option<_>>()
        .ok_or_else(|| bad("some left class misses the first right class".into()))?;

    let rows = w
        .iter()
        .map(|&wi| {
            q.iter()
                .map(|&qm| k_to_h[k.mul(wi, qm) as usize].ok_or_else(|| bad("sandwich entry outside H".into())))
                .collect::<Result<Vec<_>, _>>()
        })
        .collect::<Result<Vec<_>, _>>()?;
    let raw = ReesSpec::new(group, r_classes.len(), l_classes.len(), rows)?;
    if raw.order() != n {
        return Err(bad(format!("|Λ|·|H|·|I| = {} but |K| = {n}", raw.order())));
    }
    let (spec, normalization) = raw.normalize();

    let mut to_coords = vec![None; n];
    let mut from_coords = vec![Elem::MAX; n];
    for x in raw.elements() {
        let h = h_to_k[x.g as usize];
        let element = k.mul(k.mul(q[x.lambda as usize], h), w[x.i as usize]);
        let coords = normalization.apply(raw.group(), x);
        if to_coords[element as usize].is_some() {
            return Err(bad(format!("element `{}` has two coordinates", k.name(element))));
        }
        to_coords[element as usize] = Some(coords);
        from_coords[spec.encode(coords)] = element;
    }
    let analysis = KernelAnalysis { kernel: ElementSet::full(n), spec, to_coords, from_coords };
    if !analysis.check_transport(k) {
        return Err(bad("coordinates do not transport the multiplication".into()));
    }
    Ok(analysis)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fixtures;

    fn c2() -> FiniteGroup {
        FiniteGroup::from_semigroup(fixtures::cyclic(2)).unwrap()
    }

    #[test]
    fn multiply_by_normalized_identity_triple() {
        let spec = fixtures::rs240_spec();
        let one = spec.group().identity();
        let e = ReesElement::new(0, one, 0);
        for y in spec.elements() {
            assert_eq!(spec.multiply(e, y), ReesElement::new(0, y.g, y.i));
        }
    }

    #[test]
    fn rs240_sandwich_entry() {
        let spec = fixtures::rs240_spec();
        let one = spec.group().identity();
        let g = spec.group().index_of(fixtures::RS240_G).unwrap();
        let x = ReesElement::new(1, one, 1);
        assert_eq!(spec.multiply(x, x), ReesElement::new(1, g, 1));
        assert_eq!(spec.p(1, 1), g);
    }

    #[test]
    fn all_identity_matrix_multiplies_group_parts() {
        let spec = fixtures::rsing_spec();
        let g = spec.group();
        for x in spec.elements() {
            for y in spec.elements() {
                assert_eq!(spec.multiply(x, y).g, g.mul(x.g, y.g));
            }
        }
    }

    #[test]
    fn build_sizes() {
        assert_eq!(fixtures::rs240().order(), 240);
        let triv = FiniteGroup::from_semigroup(fixtures::trivial()).unwrap();
        let one = ReesSpec::new(triv, 1, 1, vec![vec![0]]).unwrap();
        assert_eq!(one.build_cayley(DEFAULT_SIZE_CAP).unwrap().order(), 1);
        let rsing = fixtures::rsing();
        assert_eq!(rsing.order(), 8);
        assert_eq!(fixtures::rs240_spec().build_cayley(100), Err(ReesError::SizeCapExceeded { size: 240, cap: 100 }));
    }

    #[test]
    fn normalization() {
        let rs = fixtures::rs240_spec();
        assert_eq!(normalize_matrix(&rs), rs);
        let g = c2();
        let c = g.index_of("c").unwrap();
        let constant = ReesSpec::new(g.clone(), 2, 2, vec![vec![c, c], vec![c, c]]).unwrap();
        let (normalized, map) = constant.normalize();
        assert!(normalized.rows().iter().flatten().all(|&p| p == g.identity()));
        assert!(is_isomorphism(&constant, &normalized, |x| map.apply(&g, x)));

        // A messy 3×2 matrix over S3, normalized and checked by brute force.
        let s3 = FiniteGroup::from_semigroup(fixtures::symmetric(3)).unwrap();
        let rows = vec![vec![1, 2], vec![3, 4], vec![5, 5]];
        let messy = ReesSpec::new(s3.clone(), 2, 3, rows).unwrap();
        let (normalized, map) = messy.normalize();
        assert!(normalized.is_normalized());
        assert!(is_isomorphism(&messy, &normalized, |x| map.apply(&s3, x)));
    }

    #[test]
    fn nonsingularity() {
        assert_eq!(fixtures::rs240_spec().nonsingularity(), MatrixVerdict::Nonsingular);
        assert_eq!(fixtures::rsing_spec().nonsingularity(), MatrixVerdict::EqualRows(0, 1));
        let one = ReesSpec::new(c2(), 1, 1, vec![vec![1]]).unwrap();
        assert_eq!(one.nonsingularity(), MatrixVerdict::Nonsingular);
        let cols = ReesSpec::new(c2(), 2, 2, vec![vec![0, 0], vec![0, 1]]).unwrap();
        assert_eq!(cols.nonsingularity(), MatrixVerdict::Nonsingular);
        let cols = ReesSpec::new(c2(), 3, 2, vec![vec![0, 0, 0], vec![0, 1, 1]]).unwrap();
        assert_eq!(cols.nonsingularity(), MatrixVerdict::EqualColumns(1, 2));
    }

    #[test]
    fn decompose_group() {
        let a5 = fixtures::alternating(5);
        let ka = decompose_completely_simple(&a5).unwrap();
        assert_eq!((ka.spec().lambda_size(), ka.spec().i_size()), (1, 1));
        assert_eq!(ka.group().order(), 60);
        // The structure group is A5 itself on the same labels.
        for g in a5.elements() {
            assert_eq!(ka.gamma_element(g), g);
        }
    }

    #[test]
    fn decompose_left_zero() {
        let ka = decompose_completely_simple(&fixtures::left_zero(2)).unwrap();
        assert_eq!((ka.spec().lambda_size(), ka.spec().i_size()), (2, 1));
        assert_eq!(ka.group().order(), 1);
        assert_eq!(ka.spec().nonsingularity(), MatrixVerdict::EqualColumns(0, 1));
    }

    #[test]
    fn decompose_rejects_non_simple() {
        assert!(matches!(decompose_completely_simple(&fixtures::null(3)), Err(ReesError::NotCompletelySimple(_))));
        assert!(matches!(decompose_completely_simple(&fixtures::a5_plus()), Err(ReesError::NotCompletelySimple(_))));
    }

    #[test]
    fn rs240_round_trip_reproduces_coordinates() {
        let spec = fixtures::rs240_spec();
        let s = spec.build_cayley(DEFAULT_SIZE_CAP).unwrap();
        let ka = decompose_completely_simple(&s).unwrap();
        assert_eq!((ka.spec().lambda_size(), ka.spec().i_size()), (2, 2));
        assert_eq!(ka.group().order(), 60);
        assert_eq!(ka.spec().nonsingularity(), MatrixVerdict::Nonsingular);
        assert!(ka.check_transport(&s));
        // Normalized inputs built in lexicographic order come back with
        // their own coordinates.
        for x in spec.elements() {
            let recovered = ka.coords(spec.encode(x) as Elem).unwrap();
            assert_eq!((recovered.lambda, recovered.i), (x.lambda, x.i));
            assert_eq!(ka.group().name(recovered.g), s.name(spec.encode(ReesElement::new(0, x.g, 0)) as Elem));
        }
    }

    #[test]
    fn round_trip_through_relabelled_table() {
        // Decompose a scrambled copy of a non-normalized Rees semigroup and
        // check the recovered coordinates rebuild an isomorphic semigroup.
        let s3 = FiniteGroup::from_semigroup(fixtures::symmetric(3)).unwrap();
        let spec = ReesSpec::new(s3, 3, 2, vec![vec![1, 2, 3], vec![4, 5, 0]]).unwrap();
        let s = spec.build_cayley(DEFAULT_SIZE_CAP).unwrap();
        let n = s.order();
        let perm: Vec<usize> = (0..n).map(|i| (i * 5 + 11) % n).collect();
        let scrambled = s.relabel(&perm);
        let ka = KernelAnalysis::of(&scrambled).unwrap();
        assert_eq!((ka.spec().lambda_size(), ka.spec().i_size()), (3, 2));
        assert!(ka.spec().is_normalized());
        assert!(ka.check_transport(&scrambled));
        let rebuilt = ka.spec().build_cayley(DEFAULT_SIZE_CAP).unwrap();
        // Composed map: rebuilt code -> scrambled element.
        for a in rebuilt.elements() {
            for b in rebuilt.elements() {
                let ab = rebuilt.mul(a, b);
                let to = |c: Elem| ka.element(ka.spec().decode(c as usize));
                assert_eq!(to(ab), scrambled.mul(to(a), to(b)));
            }
        }
    }

    #[test]
    fn gamma_and_one_sided_ideals() {
        let s = fixtures::rs240();
        let ka = KernelAnalysis::of(&s).unwrap();
        let gamma = ka.gamma();
        assert_eq!(gamma.len(), 60);
        let group = ka.group();
        for g in group.elements() {
            for h in group.elements() {
                assert_eq!(s.mul(ka.gamma_element(g), ka.gamma_element(h)), ka.gamma_element(group.mul(g, h)));
            }
        }
        let mut l1 = ka.left_ideal(0);
        l1.intersect_with(&ka.right_ideal(0));
        assert_eq!(l1, gamma);
        for i in 0..2 {
            let li = ka.left_ideal(i);
            let rl = ka.right_ideal(i);
            for x in s.elements() {
                assert!(li.iter().all(|y| li.contains(s.mul(x, y))));
                assert!(rl.iter().all(|y| rl.contains(s.mul(y, x))));
            }
        }
    }

    #[test]
    fn spec_file_round_trip() {
        let spec = fixtures::rs240_spec();
        let json = serde_json::to_string(&spec.to_file()).unwrap();
        let back: ReesSpecFile = serde_json::from_str(&json).unwrap();
        assert!(json.contains("\"P\""));
        assert_eq!(back.into_spec().unwrap(), spec);
    }
}
