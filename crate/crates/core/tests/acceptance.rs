//! Acceptance criteria. Runs without the libtest harness so every criterion
//! prints exactly one PASS/FAIL line; exits nonzero if any fails.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use semidomain::decide::{cross_check_with_oracle, decide_ed, Certificate, Verdict};
use semidomain::enumerate::all_semigroups_up_to;
use semidomain::fixtures::{self, elem};
use semidomain::rees::{KernelAnalysis, MatrixVerdict, ReesElement};
use semidomain::semigroup::{Elem, FiniteSemigroup};
use semidomain::terms::{solve_system, Atom, PointSet, Space, Term, DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET};
use semidomain::translations::{action_triple, bound_checks, is_sim_trivial, BoundStatus, SimVerdict};
use semidomain::witness::{build_tp_term, Domain, Synthesizer};

const FLAGSHIP_LIMIT: Duration = Duration::from_secs(10);
const GROUP_FLOOR_LIMIT: Duration = Duration::from_secs(5);
const ORACLE_LIMIT: Duration = Duration::from_secs(600);
const WITNESS_LIMIT: Duration = Duration::from_secs(300);

const WITNESS_SETS_PER_CASE: usize = 20;
const TP_POINTS_N4: usize = 50;
const MSEM_SAMPLES_N4: usize = 10_000;
/// Minimum randomized cases per property suite.
const PROPERTY_CASES: usize = 1_000;
const SANDWICH_SAMPLES_RS240: usize = 10_000;
const SEED: u64 = 0x5eed;

type Outcome = Result<String, String>;

fn check(ok: bool, msg: impl FnOnce() -> String) -> Result<(), String> {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn within(start: Instant, limit: Duration) -> Result<Duration, String> {
    let elapsed = start.elapsed();
    check(elapsed < limit, || format!("took {elapsed:.2?}, limit {limit:?}"))?;
    Ok(elapsed)
}

fn flagship() -> Outcome {
    let start = Instant::now();
    let s = fixtures::rs240();
    let d = decide_ed(&s).map_err(|e| e.to_string())?;
    check(s.order() == 240, || format!("|S| = {}", s.order()))?;
    check(d.verdict == Verdict::Ed, || format!("verdict {:?}", d.certificate))?;
    let ka = KernelAnalysis::of(&s).map_err(|e| e.to_string())?;
    check(ka.spec().lambda_size() == 2 && ka.spec().i_size() == 2, || "P is not 2x2".into())?;
    check(ka.spec().nonsingularity() == MatrixVerdict::Nonsingular, || "P is singular".into())?;
    d.verify(&s).map_err(|e| e.to_string())?;
    let elapsed = within(start, FLAGSHIP_LIMIT)?;
    Ok(format!("RS240 is ED, |S| = 240, certificate re-checked ({elapsed:.2?})"))
}

fn group_floor() -> Outcome {
    let start = Instant::now();
    let a5 = semidomain::FiniteGroup::from_semigroup(fixtures::alternating(5)).map_err(|e| e.to_string())?;
    check(a5.find_zero_divisor().is_none(), || "A5 has a zero-divisor".into())?;
    let one = a5.identity();
    let exhaustive = a5.elements().filter(|&x| x != one).all(|x| {
        a5.elements().filter(|&y| y != one).all(|y| a5.elements().any(|g| a5.commutator(x, a5.conjugate(y, g)) != one))
    });
    check(exhaustive, || "59x59x60 scan found a zero-divisor in A5".into())?;
    let mut families: Vec<(String, FiniteSemigroup)> =
        (2..=10).map(|n| (format!("C{n}"), fixtures::cyclic(n))).collect();
    families.extend([
        ("S3".into(), fixtures::symmetric(3)),
        ("S4".into(), fixtures::symmetric(4)),
        ("A4".into(), fixtures::alternating(4)),
        ("D4".into(), fixtures::dihedral(4)),
        ("Q8".into(), fixtures::quaternion()),
    ]);
    for (name, s) in &families {
        let g = semidomain::FiniteGroup::from_semigroup(s.clone()).map_err(|e| e.to_string())?;
        let w = g.find_zero_divisor().ok_or_else(|| format!("{name}: no zero-divisor"))?;
        check(w.verify(&g), || format!("{name}: witness fails re-check"))?;
    }
    let elapsed = within(start, GROUP_FLOOR_LIMIT)?;
    Ok(format!("A5 zero-divisor free; {} groups have verified zero-divisors ({elapsed:.2?})", families.len()))
}

fn oracle_agreement() -> Outcome {
    use rayon::prelude::*;
    let start = Instant::now();
    let all = all_semigroups_up_to(3);
    let results: Vec<Result<(usize, Verdict), String>> = all
        .par_iter()
        .map(|s| {
            let r = cross_check_with_oracle(s, 3, DEFAULT_CLOSURE_BUDGET, DEFAULT_SWEEP_BUDGET)
                .map_err(|e| format!("{:?}: {e}", s.rows()))?;
            check(r.agree, || format!("{:?}: decision {} oracle {}", s.rows(), r.decision, r.oracle))?;
            Ok((s.order(), r.decision))
        })
        .collect();
    let mut ed_orders = Vec::new();
    for r in results {
        let (order, verdict) = r?;
        if verdict == Verdict::Ed {
            ed_orders.push(order);
        }
    }
    check(ed_orders == [1], || format!("ED at orders {ed_orders:?}"))?;
    let elapsed = within(start, ORACLE_LIMIT)?;
    Ok(format!("{} semigroups of order <= 3 agree with the oracle; only order 1 is ED ({elapsed:.2?})", all.len()))
}

fn necessity_certificates() -> Outcome {
    let a5p = fixtures::a5_plus();
    let n3 = fixtures::null(3);
    let rsing = fixtures::rsing();
    let cases = [
        ("A5PLUS", &a5p, Certificate::NontrivialSim { alpha: elem(&a5p, "u"), beta: elem(&a5p, "1") }),
        ("N3", &n3, Certificate::HasZero { zero: elem(&n3, "0") }),
        ("RSING", &rsing, Certificate::SingularMatrix { verdict: MatrixVerdict::EqualRows(0, 1) }),
    ];
    for (name, s, expected) in cases {
        let d = decide_ed(s).map_err(|e| e.to_string())?;
        check(d.verdict == Verdict::NotEd, || format!("{name}: verdict ED"))?;
        check(d.certificate == expected, || format!("{name}: certificate {:?}", d.certificate))?;
        d.verify(s).map_err(|e| format!("{name}: {e}"))?;
    }
    Ok("A5PLUS NontrivialSim(u, 1), N3 HasZero(0), RSING SingularMatrix(rows 1, 2); all re-checked".into())
}

fn bounds() -> Outcome {
    let rs = fixtures::rs240();
    let b = bound_checks(&rs, &KernelAnalysis::of(&rs).map_err(|e| e.to_string())?);
    check(b.refined.value == 960 && !b.refined.saturated, || format!("RS240 refined bound {}", b.refined.value))?;
    let a5p = fixtures::a5_plus();
    let b = bound_checks(&a5p, &KernelAnalysis::of(&a5p).map_err(|e| e.to_string())?);
    check(b.refined.value == 60 && b.refined.status == BoundStatus::ViolatesBound, || {
        format!("A5PLUS refined {:?}", b.refined)
    })?;
    let n3 = fixtures::null(3);
    let b = bound_checks(&n3, &KernelAnalysis::of(&n3).map_err(|e| e.to_string())?);
    check(b.crude.value == 1 && b.crude.status == BoundStatus::ViolatesBound, || format!("N3 crude {:?}", b.crude))?;
    Ok("RS240 refined = 960; A5PLUS 61 > 60; N3 3 > 1".into())
}

fn random_set(rng: &mut ChaCha8Rng, space: Space) -> PointSet {
    let density = rng.gen_range(0.05..0.95);
    PointSet::from_predicate(space, |_| rng.gen_bool(density))
}

fn witness_soundness() -> Outcome {
    let start = Instant::now();
    let mut rng = ChaCha8Rng::seed_from_u64(SEED);
    let a5 = fixtures::alternating(5);
    let rs = fixtures::rs240();
    let mut equations = 0;
    for (name, s, n) in [("A5", &a5, 1), ("A5", &a5, 2), ("RS240", &rs, 1)] {
        let ka = KernelAnalysis::of(s).map_err(|e| e.to_string())?;
        let mut synth = Synthesizer::new(s, &ka, DEFAULT_SWEEP_BUDGET);
        let space = Space::new(s.order(), n, DEFAULT_SWEEP_BUDGET).map_err(|e| e.to_string())?;
        for k in 0..WITNESS_SETS_PER_CASE {
            let m = random_set(&mut rng, space);
            let sys = synth.defining_system(&m).map_err(|e| format!("{name} n={n} set {k}: {e}"))?;
            let v = solve_system(s, &sys, DEFAULT_SWEEP_BUDGET).map_err(|e| e.to_string())?;
            check(v == m, || format!("{name} n={n} set {k}: solution set differs from M"))?;
            equations += sys.len();
        }
    }

    let ka = KernelAnalysis::of(&rs).map_err(|e| e.to_string())?;
    let mut synth = Synthesizer::new(&rs, &ka, DEFAULT_SWEEP_BUDGET);
    let e = ka.gamma_identity();
    for k in 0..TP_POINTS_N4 {
        let p: Vec<Elem> = loop {
            let p: Vec<Elem> = (0..4).map(|_| rng.gen_range(0..240)).collect();
            if p[0] != p[1] && p[2] != p[3] {
                break p;
            }
        };
        let tp = synth.tp_term(&p, Domain::Full { arity: 4 }).map_err(|e| format!("n=4 point {k}: {e}"))?;
        let compiled = tp.term.compile(&rs);
        check(compiled.eval(&p) != e, || format!("n=4 point {k}: vanishes at P"))?;
        let mut q = vec![0; 4];
        for _ in 0..MSEM_SAMPLES_N4 {
            q.iter_mut().for_each(|x| *x = rng.gen_range(0..240));
            if rng.gen_bool(0.5) {
                q[1] = q[0];
            } else {
                q[3] = q[2];
            }
            check(compiled.eval(&q) == e, || format!("n=4 point {k}: nonzero at {q:?} in M_sem"))?;
        }
    }
    let elapsed = within(start, WITNESS_LIMIT)?;
    Ok(format!(
        "{} defining systems ({equations} equations) reproduce M exactly; {TP_POINTS_N4} RS240 n=4 terms verified ({elapsed:.2?})",
        3 * WITNESS_SETS_PER_CASE
    ))
}

fn random_term(rng: &mut ChaCha8Rng, arity: usize, s: &FiniteSemigroup, max_len: usize) -> Term {
    let len = rng.gen_range(1..=max_len);
    let atoms: Vec<Atom> = (0..len)
        .map(|_| {
            if rng.gen_bool(0.5) {
                Atom::Var(rng.gen_range(0..arity as u32))
            } else {
                Atom::Const(rng.gen_range(0..s.order() as Elem))
            }
        })
        .collect();
    Term::from_atoms(arity, &atoms).expect("valid atoms")
}

fn action_formulas(s: &FiniteSemigroup, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let ka = KernelAnalysis::of(s).map_err(|e| e.to_string())?;
    let spec = ka.spec();
    let group = ka.group();
    let id = group.identity();
    let mut cases = 0;
    while cases < PROPERTY_CASES {
        let alpha = rng.gen_range(0..s.order() as Elem);
        let t = action_triple(s, &ka, alpha).map_err(|e| e.to_string())?;
        let lambda = rng.gen_range(0..spec.lambda_size() as u32);
        let i = rng.gen_range(0..spec.i_size() as u32);
        let g = rng.gen_range(0..group.order() as Elem);
        let la = |l: u32| t.lambda_map[l as usize];
        let ia = |i: u32| t.i_map[i as usize];
        let at = |l, g, i| ka.element(ReesElement::new(l, g, i));
        let formulas = [
            (s.mul(alpha, at(lambda, id, 0)), at(la(lambda), group.mul(t.g_alpha, spec.p(ia(0), lambda)), 0)),
            (s.mul(at(0, id, i), alpha), at(0, group.mul(spec.p(i, la(0)), t.g_alpha), ia(i))),
            (
                s.mul(alpha, at(lambda, g, i)),
                at(la(lambda), group.mul(group.mul(t.g_alpha, spec.p(ia(0), lambda)), g), i),
            ),
            (s.mul(at(lambda, g, i), alpha), at(lambda, group.mul(group.mul(g, spec.p(i, la(0))), t.g_alpha), ia(i))),
        ];
        for (k, (lhs, rhs)) in formulas.iter().enumerate() {
            check(lhs == rhs, || format!("formula {} fails for {}", k + 1, s.name(alpha)))?;
        }
        cases += 1;
    }
    Ok(cases)
}

fn substitution_stability(s: &FiniteSemigroup, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let kernel = s.kernel();
    let SimVerdict::NontrivialPair(alpha, beta) = is_sim_trivial(s, &kernel).map_err(|e| e.to_string())? else {
        return Err("~_K is trivial".into());
    };
    let mut cases = 0;
    while cases < PROPERTY_CASES {
        let t = random_term(rng, 2, s, 8);
        if !t.contains_var(1) {
            continue;
        }
        for r in kernel.iter() {
            check(t.eval(s, &[alpha, r]) == t.eval(s, &[beta, r]), || {
                format!("t = {} separates {} and {} at r = {}", t.render(s), s.name(alpha), s.name(beta), s.name(r))
            })?;
        }
        cases += 1;
    }
    Ok(cases)
}

fn equal_rows_pattern(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let s = fixtures::rsing();
    let spec = fixtures::rsing_spec();
    let e = spec.group().identity();
    let (s1, s2) = (spec.encode(ReesElement::new(0, e, 0)) as Elem, spec.encode(ReesElement::new(0, e, 1)) as Elem);
    for _ in 0..PROPERTY_CASES {
        let t = random_term(rng, 1, &s, 8);
        let (v1, v2) = (t.eval(&s, &[s1]), t.eval(&s, &[s2]));
        if v1 == v2 {
            continue;
        }
        let (c1, c2) = (spec.decode(v1 as usize), spec.decode(v2 as usize));
        let pattern = t.last_atom() == Atom::Var(0) && c1.lambda == c2.lambda && c1.g == c2.g && (c1.i, c2.i) == (0, 1);
        check(pattern, || format!("t = {} gives {} and {}", t.render(&s), s.name(v1), s.name(v2)))?;
    }
    Ok(PROPERTY_CASES)
}

fn gamma_sandwich(s: &FiniteSemigroup, samples: Option<usize>, rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let ka = KernelAnalysis::of(s).map_err(|e| e.to_string())?;
    let gamma: Vec<Elem> = ka.gamma().iter().collect();
    let kernel: Vec<Elem> = ka.kernel().iter().collect();
    let holds = |x: Elem, m: Elem, y: Elem| {
        let c = ka.coords(m).expect("kernel element");
        let head = ka.element(ReesElement::new(0, c.g, 0));
        s.mul(s.mul(x, m), y) == s.mul(s.mul(x, head), y)
    };
    let mut cases = 0;
    match samples {
        None => {
            for &x in &gamma {
                for &y in &gamma {
                    for &m in &kernel {
                        check(holds(x, m, y), || format!("fails at {} {} {}", s.name(x), s.name(m), s.name(y)))?;
                        cases += 1;
                    }
                }
            }
        }
        Some(n) => {
            for _ in 0..n {
                let (x, y, m) =
                    (*gamma.choose(rng).unwrap(), *gamma.choose(rng).unwrap(), *kernel.choose(rng).unwrap());
                check(holds(x, m, y), || format!("fails at {} {} {}", s.name(x), s.name(m), s.name(y)))?;
                cases += 1;
            }
        }
    }
    Ok(cases)
}

fn conjugation_stability(rng: &mut ChaCha8Rng) -> Result<usize, String> {
    let a5 = fixtures::alternating(5);
    let ka = KernelAnalysis::of(&a5).map_err(|e| e.to_string())?;
    let group = ka.group();
    let e = ka.gamma_identity();
    let mut cases = 0;
    while cases < PROPERTY_CASES {
        let p = [rng.gen_range(0..60), rng.gen_range(0..60)];
        let tp =
            build_tp_term(&a5, &ka, &p, Domain::Full { arity: 2 }, DEFAULT_SWEEP_BUDGET).map_err(|e| e.to_string())?;
        for _ in 0..100 {
            let g = rng.gen_range(0..60);
            let conj = Term::product(&[
                &Term::constant(2, ka.gamma_element(g)),
                &tp.term,
                &Term::constant(2, ka.gamma_element(group.inv(g))),
            ]);
            let q = if rng.gen_bool(0.2) { p } else { [rng.gen_range(0..60), rng.gen_range(0..60)] };
            let v = conj.eval(&a5, &q);
            check(ka.gamma_value(v).is_some() && (v == e) == (q != p), || {
                format!("conjugate by {} fails at {q:?} for P = {p:?}", group.name(g))
            })?;
            cases += 1;
        }
    }
    Ok(cases)
}

fn property_suites() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(SEED + 7);
    let rs = fixtures::rs240();
    let a5p = fixtures::a5_plus();
    let n3 = fixtures::null(3);
    let rsing = fixtures::rsing();
    let suites = [
        ("action RS240", action_formulas(&rs, &mut rng)?),
        ("action A5PLUS", action_formulas(&a5p, &mut rng)?),
        ("substitution N3", substitution_stability(&n3, &mut rng)?),
        ("substitution A5PLUS", substitution_stability(&a5p, &mut rng)?),
        ("equal rows RSING", equal_rows_pattern(&mut rng)?),
        ("Γ-sandwich RSING", gamma_sandwich(&rsing, None, &mut rng)?),
        ("Γ-sandwich RS240", gamma_sandwich(&rs, Some(SANDWICH_SAMPLES_RS240), &mut rng)?),
        ("conjugation", conjugation_stability(&mut rng)?),
    ];
    let summary: Vec<String> = suites.iter().map(|(name, n)| format!("{name} {n}")).collect();
    Ok(summary.join(", "))
}

type Criterion = (&'static str, fn() -> Outcome);

fn main() -> ExitCode {
    let criteria: [Criterion; 7] = [
        ("flagship RS240", flagship),
        ("group floor", group_floor),
        ("criterion-oracle agreement", oracle_agreement),
        ("necessity certificates", necessity_certificates),
        ("bounds", bounds),
        ("witness synthesis", witness_soundness),
        ("property suites", property_suites),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("criterion {} ({name}): PASS: {detail}", k + 1),
            Err(detail) => {
                failed += 1;
                println!("criterion {} ({name}): FAIL: {detail}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
