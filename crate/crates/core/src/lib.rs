//! Deciding whether a finite semigroup is an equational domain, with
//! brute-force oracles and witness synthesis.

pub mod decide;
pub mod enumerate;
pub mod fixtures;
pub mod group;
pub mod rees;
pub mod semigroup;
pub mod terms;
pub mod translations;
pub mod witness;

pub use decide::{decide_ed, Certificate, Decision, Verdict};
pub use group::{FiniteGroup, GroupError, GroupVerdict, ZeroDivisorWitness};
pub use rees::{KernelAnalysis, MatrixVerdict, ReesElement, ReesError, ReesSpec, ReesSpecFile};
pub use semigroup::{CayleyFile, Elem, ElementSet, FiniteSemigroup, SemigroupError};
