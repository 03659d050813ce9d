//! The decision procedure with re-checkable certificates, and the
//! brute-force oracle it is cross-checked against.
//!
//! A finite semigroup is an e.d. iff its kernel is (nonsingular sandwich
//! matrix, structure group without zero-divisors) and `~_K` is trivial. A
//! zero in a semigroup of order at least two rules it out directly.

use serde::Serialize;
use thiserror::Error;

use crate::group::{FiniteGroup, GroupVerdict, ZeroDivisorWitness};
use crate::rees::{KernelAnalysis, MatrixVerdict, ReesError};
use crate::semigroup::{Elem, FiniteSemigroup};
use crate::terms::{algebraic_closure, AclOutcome, PointSet, Space, TermError};
use crate::translations::{bound_checks, is_sim_trivial, same_translations, BoundReport, BoundStatus, SimVerdict};

#[derive(Debug, Error)]
pub enum DecideError {
    #[error(transparent)]
    Rees(#[from] ReesError),
    #[error(transparent)]
    Term(#[from] TermError),
    #[error("term-function closure exceeded {budget} functions (explored {explored})")]
    Inconclusive { explored: usize, budget: usize },
    #[error("oracle is limited to order {max}, got {order}")]
    OracleScale { order: usize, max: usize },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum Verdict {
    #[serde(rename = "ED")]
    Ed,
    #[serde(rename = "NotED")]
    NotEd,
}

impl std::fmt::Display for Verdict {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Verdict::Ed => "ED",
            Verdict::NotEd => "NotED",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BoundKind {
    /// `|S| ≤ l^{2l}`.
    Crude,
    /// `|S| ≤ |G|·|Λ|^{|Λ|}·|I|^{|I|}`.
    Refined,
}

/// Element indices refer to the input semigroup, except in `ZeroDivisor`,
/// whose indices refer to the kernel's structure group.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
#[serde(tag = "kind")]
pub enum Certificate {
    Positive { kernel_order: usize, lambda: usize, i: usize, group_order: usize },
    HasZero { zero: Elem },
    SingularMatrix { verdict: MatrixVerdict },
    ZeroDivisor { witness: ZeroDivisorWitness },
    NontrivialSim { alpha: Elem, beta: Elem },
    BoundViolation { bound: BoundKind, order: usize, limit: u128 },
}

impl Certificate {
    /// One-line description using element names of `s`.
    pub fn describe(&self, s: &FiniteSemigroup) -> String {
        match self {
            Certificate::Positive { kernel_order, lambda, i, group_order } => format!(
                "kernel of order {kernel_order} with |Λ| = {lambda}, |I| = {i}, |G| = {group_order}; \
                 P nonsingular, G has no zero-divisors, ~_K trivial"
            ),
            Certificate::HasZero { zero } => format!("`{}` is a zero", s.name(*zero)),
            Certificate::SingularMatrix { verdict } => format!("sandwich matrix is singular: {verdict}"),
            Certificate::ZeroDivisor { witness } => match KernelAnalysis::of(s) {
                Ok(ka) => format!(
                    "structure group has the zero-divisor x = `{}` with y = `{}`",
                    ka.group().name(witness.x),
                    ka.group().name(witness.y)
                ),
                Err(e) => format!("structure group has a zero-divisor ({e})"),
            },
            Certificate::NontrivialSim { alpha, beta } => {
                format!("`{}` ~_K `{}`: same translations on the kernel", s.name(*alpha), s.name(*beta))
            }
            Certificate::BoundViolation { bound, order, limit } => {
                format!("|S| = {order} exceeds the {bound:?} bound {limit}")
            }
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct Decision {
    pub verdict: Verdict,
    pub certificate: Certificate,
    pub bounds: BoundReport,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct DecideOptions {
    /// Report a violated cardinality bound as the certificate when no zero
    /// is present. The bounds are necessary conditions only, so the verdict
    /// never changes.
    pub bound_shortcut: bool,
}

pub fn decide_ed(s: &FiniteSemigroup) -> Result<Decision, DecideError> {
    decide_ed_with(s, DecideOptions::default())
}

pub fn decide_ed_with(s: &FiniteSemigroup, options: DecideOptions) -> Result<Decision, DecideError> {
    let ka = KernelAnalysis::of(s)?;
    let bounds = bound_checks(s, &ka);
    let not_ed = |certificate| Ok(Decision { verdict: Verdict::NotEd, certificate, bounds });

    if s.order() > 1 {
        if let Some(zero) = s.has_zero() {
            return not_ed(Certificate::HasZero { zero });
        }
    }
    if options.bound_shortcut {
        for (bound, b) in [(BoundKind::Crude, bounds.crude), (BoundKind::Refined, bounds.refined)] {
            if b.status == BoundStatus::ViolatesBound {
                return not_ed(Certificate::BoundViolation { bound, order: s.order(), limit: b.value });
            }
        }
    }
    let spec = ka.spec();
    let verdict = spec.nonsingularity();
    if verdict != MatrixVerdict::Nonsingular {
        return not_ed(Certificate::SingularMatrix { verdict });
    }
    if let GroupVerdict::NotEd(witness) = ka.group().is_ed() {
        return not_ed(Certificate::ZeroDivisor { witness });
    }
    let sim = is_sim_trivial(s, ka.kernel()).expect("the kernel is an ideal");
    if let SimVerdict::NontrivialPair(alpha, beta) = sim {
        return not_ed(Certificate::NontrivialSim { alpha, beta });
    }
    Ok(Decision {
        verdict: Verdict::Ed,
        certificate: Certificate::Positive {
            kernel_order: ka.kernel().len(),
            lambda: spec.lambda_size(),
            i: spec.i_size(),
            group_order: ka.group().order(),
        },
        bounds,
    })
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("certificate rejected: {0}")]
pub struct CertificateError(pub String);

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Result<(), CertificateError> {
    if ok {
        Ok(())
    } else {
        Err(CertificateError(msg()))
    }
}

/// Zero-divisor search by a plain triple loop over `x`, `y` and conjugators.
fn naive_zero_divisor_free(group: &FiniteGroup) -> bool {
    let one = group.identity();
    group.elements().filter(|&x| x != one).all(|x| {
        group
            .elements()
            .filter(|&y| y != one)
            .all(|y| group.elements().any(|g| group.commutator(x, group.conjugate(y, g)) != one))
    })
}

impl Decision {
    /// Re-checks the certificate against `s` from scratch, using direct
    /// loops rather than the decision pipeline where one is available.
    pub fn verify(&self, s: &FiniteSemigroup) -> Result<(), CertificateError> {
        let expected = match self.certificate {
            Certificate::Positive { .. } => Verdict::Ed,
            _ => Verdict::NotEd,
        };
        ensure(self.verdict == expected, || "verdict does not match certificate".into())?;
        let ka = || KernelAnalysis::of(s).map_err(|e| CertificateError(e.to_string()));
        match &self.certificate {
            Certificate::HasZero { zero } => {
                ensure(s.order() > 1, || "a zero only rules out order > 1".into())?;
                ensure(s.elements().all(|x| s.mul(*zero, x) == *zero && s.mul(x, *zero) == *zero), || {
                    format!("`{}` is not a zero", s.name(*zero))
                })
            }
            Certificate::SingularMatrix { verdict } => {
                let ka = ka()?;
                ensure(ka.check_transport(s), || "kernel coordinates are inconsistent".into())?;
                let rows = ka.spec().rows();
                match *verdict {
                    MatrixVerdict::EqualRows(a, b) => {
                        ensure(a != b && rows[a as usize] == rows[b as usize], || format!("{verdict} is false"))
                    }
                    MatrixVerdict::EqualColumns(a, b) => {
                        ensure(a != b && rows.iter().all(|r| r[a as usize] == r[b as usize]), || {
                            format!("{verdict} is false")
                        })
                    }
                    MatrixVerdict::Nonsingular => Err(CertificateError("matrix is nonsingular".into())),
                }
            }
            Certificate::ZeroDivisor { witness } => {
                ensure(witness.verify(ka()?.group()), || "zero-divisor condition fails".into())
            }
            Certificate::NontrivialSim { alpha, beta } => {
                let kernel = s.kernel();
                ensure(alpha != beta && same_translations(s, &kernel, *alpha, *beta), || {
                    format!("`{}` and `{}` act differently on the kernel", s.name(*alpha), s.name(*beta))
                })
            }
            Certificate::BoundViolation { bound, order, limit } => {
                let report = bound_checks(s, &ka()?);
                let b = match bound {
                    BoundKind::Crude => report.crude,
                    BoundKind::Refined => report.refined,
                };
                ensure(*order == s.order() && b.value == *limit && !b.saturated && *order as u128 > *limit, || {
                    "bound is not violated".into()
                })
            }
            Certificate::Positive { kernel_order, lambda, i, group_order } => {
                let ka = ka()?;
                ensure(ka.check_transport(s), || "kernel coordinates are inconsistent".into())?;
                let spec = ka.spec();
                ensure(
                    (*kernel_order, *lambda, *i, *group_order)
                        == (ka.kernel().len(), spec.lambda_size(), spec.i_size(), ka.group().order()),
                    || "kernel shape differs".into(),
                )?;
                if s.order() > 1 {
                    ensure(s.has_zero().is_none(), || "semigroup has a zero".into())?;
                }
                let rows = spec.rows();
                for a in 0..rows.len() {
                    for b in a + 1..rows.len() {
                        ensure(rows[a] != rows[b], || format!("rows {} and {} are equal", a + 1, b + 1))?;
                    }
                }
                for a in 0..*lambda {
                    for b in a + 1..*lambda {
                        ensure(rows.iter().any(|r| r[a] != r[b]), || {
                            format!("columns {} and {} are equal", a + 1, b + 1)
                        })?;
                    }
                }
                ensure(naive_zero_divisor_free(ka.group()), || "structure group has a zero-divisor".into())?;
                let kernel: Vec<Elem> = ka.kernel().iter().collect();
                let acts: Vec<(Vec<Elem>, Vec<Elem>)> = s
                    .elements()
                    .map(|a| {
                        (kernel.iter().map(|&x| s.mul(a, x)).collect(), kernel.iter().map(|&x| s.mul(x, a)).collect())
                    })
                    .collect();
                for a in 0..acts.len() {
                    for b in a + 1..acts.len() {
                        ensure(acts[a] != acts[b], || {
                            format!("`{}` and `{}` induce the same translations", s.name(a as Elem), s.name(b as Elem))
                        })?;
                    }
                }
                Ok(())
            }
        }
    }
}

/// `{(x1, x2, x3, x4) : x1 = x2 or x3 = x4}`.
pub fn msem(s: &FiniteSemigroup, sweep_budget: u64) -> Result<PointSet, TermError> {
    let space = Space::new(s.order(), 4, sweep_budget)?;
    Ok(PointSet::from_predicate(space, |p| p[0] == p[1] || p[2] == p[3]))
}

/// `{(x1, ..., xn) : some xk = 1}` with `1` the identity of Γ, the
/// n-variable analogue of the union of coordinate subgroups.
pub fn mgr_like(
    s: &FiniteSemigroup,
    ka: &KernelAnalysis,
    arity: usize,
    sweep_budget: u64,
) -> Result<PointSet, TermError> {
    let space = Space::new(s.order(), arity, sweep_budget)?;
    let e = ka.gamma_identity();
    Ok(PointSet::from_predicate(space, |p| p.contains(&e)))
}

/// Largest order the oracle accepts by default.
pub const DEFAULT_ORACLE_ORDER: usize = 3;

#[derive(Debug, Clone, Serialize)]
pub struct OracleReport {
    pub decision: Verdict,
    /// `ED` iff `acl(M_sem) = M_sem`.
    pub oracle: Verdict,
    pub agree: bool,
    pub msem_size: usize,
    pub closure_size: usize,
}

/// Compares [`decide_ed`] with the literal test "M_sem is algebraic",
/// evaluated through the term-function closure in four variables.
pub fn cross_check_with_oracle(
    s: &FiniteSemigroup,
    max_order: usize,
    closure_budget: usize,
    sweep_budget: u64,
) -> Result<OracleReport, DecideError> {
    if s.order() > max_order {
        return Err(DecideError::OracleScale { order: s.order(), max: max_order });
    }
    let decision = decide_ed(s)?.verdict;
    let y = msem(s, sweep_budget)?;
    let closed = match algebraic_closure(s, &y, closure_budget, sweep_budget)? {
        AclOutcome::Closed(c) => c,
        AclOutcome::Inconclusive { explored, budget } => return Err(DecideError::Inconclusive { explored, budget }),
    };
    let oracle = if closed == y { Verdict::Ed } else { Verdict::NotEd };
    Ok(OracleReport { decision, oracle, agree: decision == oracle, msem_size: y.len(), closure_size: closed.len() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::enumerate::all_semigroups;
    use crate::fixtures::{self, elem};
    use crate::terms::{DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET};

    fn decide(s: &FiniteSemigroup) -> Decision {
        let d = decide_ed(s).unwrap();
        d.verify(s).unwrap();
        d
    }

    #[test]
    fn msem_sizes() {
        assert_eq!(msem(&fixtures::trivial(), 100).unwrap().len(), 1);
        assert_eq!(msem(&fixtures::left_zero(2), 100).unwrap().len(), 12);
        assert_eq!(msem(&fixtures::null(3), 100).unwrap().len(), 45);
    }

    #[test]
    fn decision_examples() {
        let rs = fixtures::rs240();
        let d = decide(&rs);
        assert_eq!(d.verdict, Verdict::Ed);
        assert_eq!(d.certificate, Certificate::Positive { kernel_order: 240, lambda: 2, i: 2, group_order: 60 });
        assert_eq!(decide(&fixtures::alternating(5)).verdict, Verdict::Ed);
        assert_eq!(decide(&fixtures::trivial()).verdict, Verdict::Ed);

        let a5p = fixtures::a5_plus();
        assert_eq!(
            decide(&a5p).certificate,
            Certificate::NontrivialSim { alpha: elem(&a5p, "u"), beta: elem(&a5p, "1") }
        );
        let n3 = fixtures::null(3);
        assert_eq!(decide(&n3).certificate, Certificate::HasZero { zero: elem(&n3, "0") });
        assert_eq!(
            decide(&fixtures::rsing()).certificate,
            Certificate::SingularMatrix { verdict: MatrixVerdict::EqualRows(0, 1) }
        );
        let c2 = fixtures::cyclic(2);
        assert_eq!(decide(&c2).certificate, Certificate::ZeroDivisor { witness: ZeroDivisorWitness { x: 1, y: 1 } });
        assert!(matches!(decide(&fixtures::cyclic(6)).certificate, Certificate::ZeroDivisor { .. }));
        assert!(matches!(decide(&fixtures::left_zero(2)).certificate, Certificate::SingularMatrix { .. }));
    }

    #[test]
    fn bound_shortcut() {
        let opts = DecideOptions { bound_shortcut: true };
        let a5p = fixtures::a5_plus();
        let d = decide_ed_with(&a5p, opts).unwrap();
        assert_eq!(d.certificate, Certificate::BoundViolation { bound: BoundKind::Refined, order: 61, limit: 60 });
        d.verify(&a5p).unwrap();
        assert_eq!(decide_ed_with(&fixtures::rs240(), opts).unwrap().verdict, Verdict::Ed);
    }

    #[test]
    fn forged_certificates_are_rejected() {
        let rs = fixtures::rs240();
        let mut d = decide_ed(&rs).unwrap();
        d.certificate = Certificate::NontrivialSim { alpha: 0, beta: 1 };
        d.verdict = Verdict::NotEd;
        assert!(d.verify(&rs).is_err());
        d.certificate = Certificate::HasZero { zero: 0 };
        assert!(d.verify(&rs).is_err());
        d.certificate = Certificate::SingularMatrix { verdict: MatrixVerdict::EqualRows(0, 1) };
        assert!(d.verify(&rs).is_err());
        d.certificate = Certificate::ZeroDivisor { witness: ZeroDivisorWitness { x: 1, y: 2 } };
        assert!(d.verify(&rs).is_err());
        let c2 = fixtures::cyclic(2);
        let mut d = decide_ed(&c2).unwrap();
        d.verdict = Verdict::Ed;
        d.certificate = Certificate::Positive { kernel_order: 2, lambda: 1, i: 1, group_order: 2 };
        assert!(d.verify(&c2).is_err());
    }

    #[test]
    fn ed_implies_bounds_hold_and_floor() {
        for (name, s) in fixtures::small_named() {
            let d = decide(&s);
            if d.verdict == Verdict::Ed {
                assert!(!d.bounds.violated(), "{name}");
                // Below order 240 the only e.d.s are groups.
                if s.order() < 240 {
                    assert!(
                        s.identity().is_some() && KernelAnalysis::of(&s).unwrap().kernel().len() == s.order(),
                        "{name}"
                    );
                }
            }
        }
    }

    #[test]
    fn oracle_examples() {
        for s in [fixtures::trivial(), fixtures::cyclic(2), fixtures::null(3)] {
            let r = cross_check_with_oracle(&s, 3, DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET).unwrap();
            assert!(r.agree, "{r:?}");
        }
        let r = cross_check_with_oracle(&fixtures::cyclic(2), 3, DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET).unwrap();
        assert_eq!(r.oracle, Verdict::NotEd);
        assert!(matches!(
            cross_check_with_oracle(&fixtures::cyclic(4), 3, DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET),
            Err(DecideError::OracleScale { .. })
        ));
    }

    #[test]
    fn order_two_agrees_with_oracle() {
        for s in all_semigroups(2) {
            let r = cross_check_with_oracle(&s, 3, DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET).unwrap();
            assert!(r.agree && r.decision == Verdict::NotEd, "{:?} {r:?}", s.rows());
        }
    }
}
