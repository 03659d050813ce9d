//! The equation language over a finite semigroup with constants: terms,
//! equations, systems, exhaustive solving and the term-function closure
//! that decides algebraicity exactly.
//!
//! A [`Term`] denotes a nonempty product of variables and constants. It is
//! stored as a hash-consed DAG with explicit powers so that terms like
//! `t^{|G|-1}` stay small; [`Term::atoms`] expands it to the flat atom
//! sequence it denotes.

mod closure;
mod parse;
mod points;
mod system_file;

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

use crate::semigroup::{Elem, FiniteSemigroup};

pub use closure::{
    algebraic_closure, algebraic_closure_with, term_function_closure, AclOutcome, Closure, TermFunction,
    DEFAULT_CLOSURE_BUDGET,
};
pub use parse::parse_term;
pub use points::{solve_system, PointSet, Space, DEFAULT_SWEEP_BUDGET};
pub use system_file::{parse_system, render_system};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TermError {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("unknown element `{0}`")]
    UnknownElement(String),
    #[error("variable x{var} is outside arity {arity}")]
    VariableOutOfArity { var: usize, arity: usize },
    #[error("exponent must be a positive integer")]
    ZeroPower,
    #[error("terms must be nonempty")]
    EmptyTerm,
    #[error("arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("sweep over {points} points exceeds the budget of {budget}")]
    SweepBudgetExceeded { points: String, budget: u64 },
    #[error("line {line}: {source}")]
    Line { line: usize, source: Box<TermError> },
}

impl TermError {
    /// The error with any line context removed.
    pub fn root(&self) -> &TermError {
        match self {
            TermError::Line { source, .. } => source.root(),
            other => other,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Atom {
    /// 0-based variable index; `x1` is `Var(0)`.
    Var(u32),
    Const(Elem),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
enum Node {
    Atom(Atom),
    /// Product of at least two earlier nodes, left to right.
    Mul(Vec<u32>),
    /// An earlier node raised to a power `>= 2`.
    Pow(u32, u64),
}

#[derive(Debug, Clone)]
pub struct Term {
    arity: usize,
    nodes: Vec<Node>,
    root: u32,
}

/// Interning arena used to assemble terms; identical subterms share a node.
#[derive(Debug, Default)]
struct Builder {
    nodes: Vec<Node>,
    index: HashMap<Node, u32>,
}

impl Builder {
    fn intern(&mut self, node: Node) -> u32 {
        if let Some(&id) = self.index.get(&node) {
            return id;
        }
        let id = self.nodes.len() as u32;
        self.nodes.push(node.clone());
        self.index.insert(node, id);
        id
    }

    fn atom(&mut self, atom: Atom) -> u32 {
        self.intern(Node::Atom(atom))
    }

    fn mul(&mut self, factors: &[u32]) -> u32 {
        match factors {
            [] => panic!("empty product"),
            [single] => *single,
            _ => self.intern(Node::Mul(factors.to_vec())),
        }
    }

    fn pow(&mut self, base: u32, k: u64) -> u32 {
        assert!(k >= 1);
        if k == 1 {
            base
        } else {
            self.intern(Node::Pow(base, k))
        }
    }

    fn import(&mut self, term: &Term) -> u32 {
        let mut map = Vec::with_capacity(term.nodes.len());
        for node in &term.nodes {
            let id = match node {
                Node::Atom(a) => self.atom(*a),
                Node::Mul(children) => {
                    let children: Vec<u32> = children.iter().map(|&c| map[c as usize]).collect();
                    self.intern(Node::Mul(children))
                }
                Node::Pow(base, k) => self.intern(Node::Pow(map[*base as usize], *k)),
            };
            map.push(id);
        }
        map[term.root as usize]
    }

    fn finish(self, arity: usize, root: u32) -> Term {
        Term { arity, nodes: self.nodes, root }.compact()
    }
}

impl Term {
    pub fn from_atoms(arity: usize, atoms: &[Atom]) -> Result<Term, TermError> {
        if atoms.is_empty() {
            return Err(TermError::EmptyTerm);
        }
        let mut b = Builder::default();
        let mut ids = Vec::with_capacity(atoms.len());
        for &atom in atoms {
            if let Atom::Var(k) = atom {
                if k as usize >= arity {
                    return Err(TermError::VariableOutOfArity { var: k as usize + 1, arity });
                }
            }
            ids.push(b.atom(atom));
        }
        let root = b.mul(&ids);
        Ok(b.finish(arity, root))
    }

    pub fn var(arity: usize, k: u32) -> Term {
        Term::from_atoms(arity, &[Atom::Var(k)]).expect("variable within arity")
    }

    pub fn constant(arity: usize, c: Elem) -> Term {
        Term::from_atoms(arity, &[Atom::Const(c)]).expect("nonempty")
    }

    /// Left-to-right product of terms of equal arity.
    pub fn product(factors: &[&Term]) -> Term {
        let arity = factors.first().expect("nonempty product").arity;
        assert!(factors.iter().all(|t| t.arity == arity), "arity mismatch in product");
        let mut b = Builder::default();
        let ids: Vec<u32> = factors.iter().map(|t| b.import(t)).collect();
        let root = b.mul(&ids);
        b.finish(arity, root)
    }

    /// `self^k` for `k >= 1`.
    pub fn power(&self, k: u64) -> Term {
        assert!(k >= 1, "powers start at 1");
        let mut b = Builder::default();
        let base = b.import(self);
        let root = b.pow(base, k);
        b.finish(self.arity, root)
    }

    /// The same term over a larger variable set.
    pub fn with_arity(&self, arity: usize) -> Term {
        assert!(arity >= self.arity);
        Term { arity, ..self.clone() }
    }

    /// Drops nodes unreachable from the root.
    fn compact(self) -> Term {
        let mut live = vec![false; self.nodes.len()];
        live[self.root as usize] = true;
        for id in (0..self.nodes.len()).rev() {
            if !live[id] {
                continue;
            }
            match &self.nodes[id] {
                Node::Atom(_) => {}
                Node::Mul(children) => children.iter().for_each(|&c| live[c as usize] = true),
                Node::Pow(base, _) => live[*base as usize] = true,
            }
        }
        if live.iter().all(|&l| l) {
            return self;
        }
        let mut map = vec![u32::MAX; self.nodes.len()];
        let mut nodes = Vec::new();
        for (id, node) in self.nodes.into_iter().enumerate() {
            if !live[id] {
                continue;
            }
            let node = match node {
                Node::Atom(a) => Node::Atom(a),
                Node::Mul(children) => Node::Mul(children.iter().map(|&c| map[c as usize]).collect()),
                Node::Pow(base, k) => Node::Pow(map[base as usize], k),
            };
            map[id] = nodes.len() as u32;
            nodes.push(node);
        }
        Term { arity: self.arity, root: map[self.root as usize], nodes }
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    /// Number of DAG nodes (not the expanded length).
    pub fn node_count(&self) -> usize {
        self.nodes.len()
    }

    /// Length of the expanded atom sequence, saturating.
    pub fn expanded_len(&self) -> u128 {
        let mut len = vec![0u128; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            len[id] = match node {
                Node::Atom(_) => 1,
                Node::Mul(children) => children.iter().fold(0u128, |acc, &c| acc.saturating_add(len[c as usize])),
                Node::Pow(base, k) => len[*base as usize].saturating_mul(*k as u128),
            };
        }
        len[self.root as usize]
    }

    /// The flat atom sequence. Panics if the expansion exceeds `limit` atoms.
    pub fn atoms_limited(&self, limit: usize) -> Vec<Atom> {
        let len = self.expanded_len();
        assert!(len <= limit as u128, "term expands to {len} atoms, over the limit of {limit}");
        let mut out = Vec::with_capacity(len as usize);
        self.expand_into(self.root, &mut out);
        out
    }

    /// The flat atom sequence (for terms of at most 10^7 atoms).
    pub fn atoms(&self) -> Vec<Atom> {
        self.atoms_limited(10_000_000)
    }

    fn expand_into(&self, id: u32, out: &mut Vec<Atom>) {
        match &self.nodes[id as usize] {
            Node::Atom(a) => out.push(*a),
            Node::Mul(children) => children.iter().for_each(|&c| self.expand_into(c, out)),
            Node::Pow(base, k) => {
                for _ in 0..*k {
                    self.expand_into(*base, out);
                }
            }
        }
    }

    fn edge_atom(&self, last: bool) -> Atom {
        let mut id = self.root;
        loop {
            match &self.nodes[id as usize] {
                Node::Atom(a) => return *a,
                Node::Mul(children) => id = if last { *children.last().unwrap() } else { children[0] },
                Node::Pow(base, _) => id = *base,
            }
        }
    }

    pub fn first_atom(&self) -> Atom {
        self.edge_atom(false)
    }

    pub fn last_atom(&self) -> Atom {
        self.edge_atom(true)
    }

    /// Distinct constants occurring in the term.
    pub fn constants(&self) -> Vec<Elem> {
        let mut cs: Vec<Elem> = self
            .nodes
            .iter()
            .filter_map(|n| match n {
                Node::Atom(Atom::Const(c)) => Some(*c),
                _ => None,
            })
            .collect();
        cs.sort_unstable();
        cs.dedup();
        cs
    }

    pub fn contains_var(&self, k: u32) -> bool {
        self.nodes.contains(&Node::Atom(Atom::Var(k)))
    }

    /// Evaluates at a point (one element per variable).
    pub fn eval(&self, s: &FiniteSemigroup, point: &[Elem]) -> Elem {
        debug_assert_eq!(point.len(), self.arity);
        let mut vals = Vec::with_capacity(self.nodes.len());
        for node in &self.nodes {
            let v = match node {
                Node::Atom(Atom::Var(k)) => point[*k as usize],
                Node::Atom(Atom::Const(c)) => *c,
                Node::Mul(children) => s.product(children.iter().map(|&c| vals[c as usize])).unwrap(),
                Node::Pow(base, k) => s.pow(vals[*base as usize], *k),
            };
            vals.push(v);
        }
        vals[self.root as usize]
    }

    /// Precomputes every subterm that depends on at most one variable, for
    /// fast repeated evaluation.
    pub fn compile<'a>(&self, s: &'a FiniteSemigroup) -> CompiledTerm<'a> {
        CompiledTerm::new(self, s)
    }

    /// Text in the term grammar, using element names for constants.
    pub fn render(&self, s: &FiniteSemigroup) -> String {
        let mut out = String::new();
        self.render_node(self.root, s, &mut out);
        out
    }

    /// Byte length of [`Term::render`], computed without rendering; saturating.
    pub fn rendered_len(&self, s: &FiniteSemigroup) -> u128 {
        let digits = |k: u64| k.to_string().len() as u128;
        let mut len = vec![0u128; self.nodes.len()];
        for (id, node) in self.nodes.iter().enumerate() {
            len[id] = match node {
                Node::Atom(Atom::Var(k)) => 1 + digits(*k as u64 + 1),
                Node::Atom(Atom::Const(c)) => s.name(*c).len() as u128,
                Node::Mul(children) => children
                    .iter()
                    .fold(children.len().saturating_sub(1) as u128, |acc, &c| acc.saturating_add(len[c as usize])),
                Node::Pow(base, k) => {
                    let parens = if matches!(self.nodes[*base as usize], Node::Atom(_)) { 0 } else { 2 };
                    len[*base as usize].saturating_add(parens + 1 + digits(*k))
                }
            };
        }
        len[self.root as usize]
    }

    fn render_node(&self, id: u32, s: &FiniteSemigroup, out: &mut String) {
        match &self.nodes[id as usize] {
            Node::Atom(Atom::Var(k)) => {
                let _ = write!(out, "x{}", k + 1);
            }
            Node::Atom(Atom::Const(c)) => out.push_str(s.name(*c)),
            Node::Mul(children) => {
                for (i, &c) in children.iter().enumerate() {
                    if i > 0 {
                        out.push('*');
                    }
                    self.render_node(c, s, out);
                }
            }
            Node::Pow(base, k) => {
                let atomic = matches!(self.nodes[*base as usize], Node::Atom(_));
                if !atomic {
                    out.push('(');
                }
                self.render_node(*base, s, out);
                if !atomic {
                    out.push(')');
                }
                let _ = write!(out, "^{k}");
            }
        }
    }
}

#[derive(Debug, Clone)]
enum Compiled {
    Value(Elem),
    Table(u32, Vec<Elem>),
    Dynamic,
}

/// A term with its constant and single-variable subterms tabulated.
#[derive(Debug, Clone)]
pub struct CompiledTerm<'a> {
    s: &'a FiniteSemigroup,
    nodes: Vec<Node>,
    compiled: Vec<Compiled>,
    root: u32,
}

#[derive(Clone, Copy, PartialEq, Eq)]
enum Support {
    Closed,
    One(u32),
    Many,
}

impl<'a> CompiledTerm<'a> {
    fn new(term: &Term, s: &'a FiniteSemigroup) -> Self {
        let n = s.order();
        let mut support = Vec::with_capacity(term.nodes.len());
        let mut compiled: Vec<Compiled> = Vec::with_capacity(term.nodes.len());
        for node in &term.nodes {
            let sup = match node {
                Node::Atom(Atom::Var(k)) => Support::One(*k),
                Node::Atom(Atom::Const(_)) => Support::Closed,
                Node::Mul(children) => {
                    children.iter().fold(Support::Closed, |acc, &c| match (acc, support[c as usize]) {
                        (Support::Closed, x) | (x, Support::Closed) => x,
                        (Support::One(a), Support::One(b)) if a == b => Support::One(a),
                        _ => Support::Many,
                    })
                }
                Node::Pow(base, _) => support[*base as usize],
            };
            support.push(sup);
            let value_of = |c: u32, x: Elem, compiled: &[Compiled]| match &compiled[c as usize] {
                Compiled::Value(v) => *v,
                Compiled::Table(_, t) => t[x as usize],
                Compiled::Dynamic => unreachable!("dynamic child of a tabulated node"),
            };
            let entry = match (sup, node) {
                (Support::Many, _) => Compiled::Dynamic,
                (Support::Closed, Node::Atom(Atom::Const(c))) => Compiled::Value(*c),
                (Support::One(k), Node::Atom(Atom::Var(_))) => Compiled::Table(k, (0..n as Elem).collect()),
                (Support::Closed, Node::Mul(children)) => {
                    Compiled::Value(s.product(children.iter().map(|&c| value_of(c, 0, &compiled))).unwrap())
                }
                (Support::Closed, Node::Pow(base, k)) => Compiled::Value(s.pow(value_of(*base, 0, &compiled), *k)),
                (Support::One(var), Node::Mul(children)) => Compiled::Table(
                    var,
                    (0..n as Elem)
                        .map(|x| s.product(children.iter().map(|&c| value_of(c, x, &compiled))).unwrap())
                        .collect(),
                ),
                (Support::One(var), Node::Pow(base, k)) => {
                    Compiled::Table(var, (0..n as Elem).map(|x| s.pow(value_of(*base, x, &compiled), *k)).collect())
                }
                _ => unreachable!("support is consistent with node kind"),
            };
            compiled.push(entry);
        }
        CompiledTerm { s, nodes: term.nodes.clone(), compiled, root: term.root }
    }

    #[inline]
    fn value(&self, id: u32, point: &[Elem], scratch: &[Elem]) -> Elem {
        match &self.compiled[id as usize] {
            Compiled::Value(v) => *v,
            Compiled::Table(k, t) => t[point[*k as usize] as usize],
            Compiled::Dynamic => scratch[id as usize],
        }
    }

    /// Evaluates at `point`, using `scratch` as workspace.
    pub fn eval_with(&self, point: &[Elem], scratch: &mut Vec<Elem>) -> Elem {
        if let Compiled::Dynamic = self.compiled[self.root as usize] {
            scratch.resize(self.nodes.len(), 0);
            for (id, node) in self.nodes.iter().enumerate() {
                if !matches!(self.compiled[id], Compiled::Dynamic) {
                    continue;
                }
                let v = match node {
                    Node::Mul(children) => {
                        let mut acc = self.value(children[0], point, scratch);
                        for &c in &children[1..] {
                            acc = self.s.mul(acc, self.value(c, point, scratch));
                        }
                        acc
                    }
                    Node::Pow(base, k) => self.s.pow(self.value(*base, point, scratch), *k),
                    Node::Atom(_) => unreachable!("atoms are never dynamic"),
                };
                scratch[id] = v;
            }
        }
        self.value(self.root, point, scratch)
    }

    pub fn eval(&self, point: &[Elem]) -> Elem {
        self.eval_with(point, &mut Vec::new())
    }
}

#[derive(Debug, Clone)]
pub struct Equation {
    pub lhs: Term,
    pub rhs: Term,
}

impl Equation {
    pub fn new(lhs: Term, rhs: Term) -> Result<Self, TermError> {
        if lhs.arity != rhs.arity {
            return Err(TermError::ArityMismatch { expected: lhs.arity, found: rhs.arity });
        }
        Ok(Equation { lhs, rhs })
    }

    pub fn arity(&self) -> usize {
        self.lhs.arity
    }

    pub fn holds_at(&self, s: &FiniteSemigroup, point: &[Elem]) -> bool {
        self.lhs.eval(s, point) == self.rhs.eval(s, point)
    }
}

#[derive(Debug, Clone)]
pub struct System {
    arity: usize,
    equations: Vec<Equation>,
}

impl System {
    pub fn new(arity: usize, equations: Vec<Equation>) -> Result<Self, TermError> {
        if let Some(e) = equations.iter().find(|e| e.arity() != arity) {
            return Err(TermError::ArityMismatch { expected: arity, found: e.arity() });
        }
        Ok(System { arity, equations })
    }

    pub fn arity(&self) -> usize {
        self.arity
    }

    pub fn equations(&self) -> &[Equation] {
        &self.equations
    }

    pub fn len(&self) -> usize {
        self.equations.len()
    }

    pub fn is_empty(&self) -> bool {
        self.equations.is_empty()
    }

    /// `Σ1 ∪ Σ2`.
    pub fn union(&self, other: &System) -> Result<System, TermError> {
        let mut equations = self.equations.clone();
        equations.extend(other.equations.iter().cloned());
        System::new(self.arity, equations)
    }
}
