use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::arith::Rational;
use crate::mechanics::{poisson, LocalizedExpression};
use crate::model::{parse_expression, parse_model};
use crate::poly::{BlockKind, Coeff, Monomial, Ring, Role};

const CHAIN: &str = "1/2*(dot(q1) - q2)^2";
const OSCILLATOR: &str = "1/2*(dot(q1)^2 + dot(q2)^2) - 1/2*(q1^2 + q2^2)";
const SECOND_CLASS: &str = "dot(q1)*q2 + q1";
const INCONSISTENT: &str = "q2";

fn model(lagr: &str) -> DegenerateModel {
    let src = format!("name = \"t\"\ncoordinates = [q1, q2]\nlagrangian = \"{lagr}\"\n");
    parse_model(&src, BlockKind::DegRevLex).unwrap()
}

fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_expression(s, r).unwrap()
}

fn run(lagr: &str) -> Analysis {
    analyze(&model(lagr), &Options::default(), Stage::Generator).unwrap()
}

#[test]
fn gauge_chain() {
    let a = run(CHAIN);
    let r = a.model.ring().clone();
    let cs = a.constraints();
    assert_eq!(cs.len(), 2);
    assert_eq!((cs[0].poly.clone(), cs[0].generation), (p(&r, "p_q2"), 1));
    assert_eq!((cs[1].poly.clone(), cs[1].generation), (p(&r, "p_q1"), 2));
    assert!(cs.iter().all(|c| c.class == Class::First));
    assert_eq!(cs[1].origin, Origin::Consistency { sweep: 1, parents: vec![0] });

    let c = a.completion.as_ref().unwrap();
    assert_eq!(c.outcome, Outcome::Closed);
    assert_eq!(c.sweeps, 2);
    assert!(c.multipliers[0].value.is_none());

    let s = a.separation.as_ref().unwrap();
    assert_eq!((s.first_class.len(), s.second_class.len(), s.primary_first), (2, 0, 1));

    let alg = a.algebra.as_ref().unwrap();
    assert_eq!(alg.rho.len(), 2);
    assert_eq!(alg.rho[0][0], LocalizedExpression::polynomial(p(&r, "-1")));
    assert!(alg.rho[1][0].num.is_zero());
    assert!(alg.varrho.is_empty());

    let g = a.generator.as_ref().unwrap();
    assert_eq!(g.generator.num, p(&g.ring, "p_q2*dot(eps2_1) + p_q1*eps2_1"));
    assert!(g.generator.den.is_one());
    assert!(g.free_symbols().is_empty());
    let dq2 = gauge_variation(g, s, &p(&r, "q2")).unwrap();
    assert_eq!(dq2.num, p(&g.ring, "-dot(eps2_1)"));
    let dq1 = gauge_variation(g, s, &p(&r, "q1")).unwrap();
    assert_eq!(dq1.num, p(&g.ring, "-eps2_1"));
    assert!(a.warnings.is_empty());
}

#[test]
fn regular_oscillator() {
    let a = run(OSCILLATOR);
    let r = a.model.ring().clone();
    assert_eq!(a.hessian_rank, 2);
    assert!(a.primary.constraints.is_empty());
    assert_eq!(a.primary.hamiltonian, p(&r, "1/2*p_q1^2 + 1/2*p_q2^2 + 1/2*q1^2 + 1/2*q2^2"));
    let c = a.completion.as_ref().unwrap();
    assert_eq!(c.outcome, Outcome::Regular);
    assert!(c.constraints.is_empty());
    assert!(a.separation.is_none() && a.algebra.is_none() && a.generator.is_none());
}

#[test]
fn second_class_pair() {
    let a = run(SECOND_CLASS);
    let cs = a.constraints();
    assert_eq!(cs.len(), 2);
    assert!(cs.iter().all(|c| c.generation == 1 && c.class == Class::Second));
    let c = a.completion.as_ref().unwrap();
    assert_eq!(c.sweeps, 1);
    let values: Vec<_> = c.multipliers.iter().map(|m| m.value.clone().unwrap()).collect();
    assert_eq!(values[0], LocalizedExpression::polynomial(Polynomial::one(&c.multiplier_ring)));
    assert!(values[1].num.is_zero());

    let ht = c.substituted_hamiltonian().unwrap();
    assert!(ht.den.is_one());
    assert!(ht.num.uses_only(|v| !matches!(c.multiplier_ring.table().role(v), Role::Multiplier(_))));
    assert_eq!(ht.num, p(&c.multiplier_ring, "p_q2 - q1"));

    let s = a.separation.as_ref().unwrap();
    assert!(s.first_class.is_empty());
    assert_eq!(s.second_class.len(), 2);
    let g = a.generator.as_ref().unwrap();
    assert!(g.generator.num.is_zero());
}

#[test]
fn inconsistent_model() {
    let a = run(INCONSISTENT);
    assert!(a.is_inconsistent());
    let c = a.completion.as_ref().unwrap();
    assert!(c.basis.is_trivial());
    assert!(c.trace.last().unwrap().contains("trivial"));
    assert!(a.separation.is_none());
}

#[test]
fn stages_stop_early() {
    let m = model(CHAIN);
    let a = analyze(&m, &Options::default(), Stage::Primary).unwrap();
    assert!(a.completion.is_none());
    assert_eq!(a.constraints().len(), 1);
    assert_eq!(a.timings.len(), 1);
    let a = analyze(&m, &Options::default(), Stage::Separate).unwrap();
    assert!(a.separation.is_some() && a.generator.is_none());
}

#[test]
fn radical_weak_equality_agrees_on_toys() {
    let opts = Options { weak: WeakEquality::Radical, ..Options::default() };
    for lagr in [CHAIN, SECOND_CLASS] {
        let a = analyze(&model(lagr), &opts, Stage::Generator).unwrap();
        let b = run(lagr);
        let ka: Vec<_> = a.constraints().iter().map(|c| c.poly.to_string()).collect();
        let kb: Vec<_> = b.constraints().iter().map(|c| c.poly.to_string()).collect();
        assert_eq!(ka, kb);
    }
}

#[test]
fn iteration_cap() {
    let opts = Options { max_iterations: 1, ..Options::default() };
    let err = analyze(&model(CHAIN), &opts, Stage::Complete).unwrap_err();
    assert!(matches!(err, crate::error::Error::ResourceLimit(_)));
}

/// Every constraint is conserved by `H_T` with the solved multipliers.
fn assert_fixpoint(a: &Analysis) {
    let c = a.completion.as_ref().unwrap();
    let ht = c.substituted_hamiltonian().unwrap();
    let gb = c.basis.embed(&c.multiplier_ring).unwrap();
    for k in &c.constraints {
        let dot = poisson(&k.poly.embed(&c.multiplier_ring).unwrap(), &ht.num);
        assert!(gb.contains(&dot), "{} is not conserved", k.poly);
    }
}

/// First-class constraints commute weakly with everything; the
/// second-class bracket matrix is invertible on the surface.
fn assert_class_soundness(a: &Analysis) {
    let c = a.completion.as_ref().unwrap();
    let s = a.separation.as_ref().unwrap();
    for f in &s.first_class {
        for k in &c.constraints {
            assert!(c.basis.contains(&poisson(f, &k.poly)));
        }
    }
    if let Some(inv) = s.dirac.inverse() {
        assert!(!c.basis.contains(&inv.det));
    }
    assert_eq!(s.first_class.len() + s.second_class.len(), c.constraints.len());
}

#[test]
fn invariants_on_toys() {
    for lagr in [CHAIN, SECOND_CLASS] {
        let a = run(lagr);
        assert_fixpoint(&a);
        assert_class_soundness(&a);
    }
}

fn second_class_setup() -> (Arc<Ring>, Separation, GroebnerBasis) {
    let a = run(SECOND_CLASS);
    let s = a.separation.unwrap();
    let gb = s.constraint_basis.clone();
    (a.model.ring().clone(), s, gb)
}

fn arb_phase_poly(r: Arc<Ring>) -> impl Strategy<Value = Polynomial> {
    let n = r.table().len();
    let roles: Vec<bool> = (0..n)
        .map(|v| matches!(r.table().role(v), Role::Momentum(_) | Role::Coordinate(_)))
        .collect();
    prop::collection::vec((prop::collection::vec(0u16..3, n), -4i64..5), 1..6).prop_map(move |ts| {
        Polynomial::from_terms(
            &r,
            ts.into_iter().map(|(mut e, c)| {
                for (x, &keep) in e.iter_mut().zip(&roles) {
                    if !keep {
                        *x = 0;
                    }
                }
                (Monomial::new(e), Coeff::from_rational(Rational::from(c)))
            }),
        )
    })
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(50))]

    #[test]
    fn dirac_bracket_annihilates_second_class(f in arb_phase_poly(second_class_setup().0)) {
        let (_, s, gb) = second_class_setup();
        let f = f.embed(gb.ring()).unwrap();
        for chi in &s.second_class {
            let d = s.dirac.bracket(&f, chi).unwrap();
            prop_assert!(d.is_weak_zero(&gb));
        }
    }
}
