use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::arith::Rational;
use crate::groebner::Budget;
use crate::model::{parse_expression, parse_model};
use crate::poly::{Coeff, Monomial};

fn model(coords: &str, lagr: &str) -> DegenerateModel {
    let src = format!("name = \"t\"\ncoordinates = [{coords}]\nlagrangian = \"{lagr}\"\n");
    parse_model(&src, BlockKind::DegRevLex).unwrap()
}

fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_expression(s, r).unwrap()
}

fn legendre_gb(m: &DegenerateModel) -> GroebnerBasis {
    GroebnerBasis::compute(m.ring(), &legendre_ideal(m), &Budget::default()).unwrap()
}

#[test]
fn legendre_generators() {
    let a = model("q1, q2", "1/2*(dot(q1) - q2)^2");
    let r = a.ring();
    assert_eq!(legendre_ideal(&a), vec![p(r, "p_q1 - dot(q1) + q2"), p(r, "p_q2")]);
    let b = model("q1, q2", "1/2*(dot(q1)^2 + dot(q2)^2) - 1/2*(q1^2 + q2^2)");
    let r = b.ring();
    assert_eq!(legendre_ideal(&b), vec![p(r, "p_q1 - dot(q1)"), p(r, "p_q2 - dot(q2)")]);
}

#[test]
fn canonical_hamiltonians() {
    let a = model("q1, q2", "1/2*(dot(q1) - q2)^2");
    let h = canonical_hamiltonian(&a, &legendre_gb(&a)).unwrap();
    assert_eq!(h, p(a.ring(), "1/2*p_q1^2 + p_q1*q2"));
    let b = model("q1, q2", "1/2*(dot(q1)^2 + dot(q2)^2) - 1/2*(q1^2 + q2^2)");
    let h = canonical_hamiltonian(&b, &legendre_gb(&b)).unwrap();
    assert_eq!(h, p(b.ring(), "1/2*p_q1^2 + 1/2*p_q2^2 + 1/2*q1^2 + 1/2*q2^2"));
}

#[test]
fn total_hamiltonian_appends_multipliers() {
    let a = model("q1, q2", "1/2*(dot(q1) - q2)^2");
    let r = a.ring();
    let h = canonical_hamiltonian(&a, &legendre_gb(&a)).unwrap();
    let mr = multiplier_ring(r, 1).unwrap();
    let ht = total_hamiltonian(&h, &[p(r, "p_q2")], &mr).unwrap();
    assert_eq!(ht, p(&mr, "1/2*p_q1^2 + p_q1*q2 + U1*p_q2"));
    assert_eq!(total_hamiltonian(&h, &[], r).unwrap(), h);
    assert_eq!(poisson(&p(&mr, "U1*p_q2"), &p(&mr, "q2")), p(&mr, "-U1"));
}

#[test]
fn fundamental_brackets() {
    let a = model("q1, q2", "dot(q1)*q2");
    let r = a.ring();
    for (i, j) in [(1, 1), (1, 2), (2, 1), (2, 2)] {
        let b = poisson(&p(r, &format!("q{i}")), &p(r, &format!("p_q{j}")));
        let want = if i == j { Polynomial::one(r) } else { Polynomial::zero(r) };
        assert_eq!(b, want);
    }
    assert!(poisson(&p(r, "q1"), &p(r, "q2")).is_zero());
}

#[test]
fn hessian_of_gauge_chain() {
    let a = model("q1, q2", "1/2*(dot(q1) - q2)^2");
    let h = hessian(&a);
    assert_eq!(h[0][0], Polynomial::one(a.ring()));
    assert!(h[0][1].is_zero() && h[1][1].is_zero());
}

#[test]
fn dirac_bracket_of_second_class_pair() {
    let c = model("q1, q2", "dot(q1)*q2 + q1");
    let r = c.ring();
    let chi = vec![p(r, "p_q1 - q2"), p(r, "p_q2")];
    let gb = GroebnerBasis::compute(r, &chi, &Budget::default()).unwrap();
    let mut cert = Certificate::default();
    let d = DiracBracket::new(chi.clone(), &gb, &mut cert).unwrap();
    let inv = d.inverse().unwrap();
    assert_eq!(inv.det, Polynomial::one(r));
    assert_eq!(inv.adj[0][1], Polynomial::one(r));
    assert_eq!(inv.adj[1][0], p(r, "-1"));
    let qp = d.bracket(&p(r, "q1"), &p(r, "p_q1")).unwrap().simplify();
    assert_eq!(qp.num, Polynomial::one(r));
    let qq = d.bracket(&p(r, "q1"), &p(r, "q2")).unwrap().simplify();
    assert_eq!(qq.num, Polynomial::one(r));
    for x in &chi {
        assert!(d.bracket(&p(r, "q1^2*p_q2 + q2*p_q1"), x).unwrap().is_weak_zero(&gb));
    }
    let none = DiracBracket::new(vec![], &gb, &mut cert).unwrap();
    assert_eq!(none.bracket(&p(r, "q1"), &p(r, "p_q1")).unwrap(), LocalizedExpression::polynomial(Polynomial::one(r)));
}

fn phase_ring() -> Arc<Ring> {
    model("q1, q2, q3", "dot(q1)^2").ring().clone()
}

fn arb_poly() -> impl Strategy<Value = Polynomial> {
    let r = phase_ring();
    prop::collection::vec((prop::collection::vec(0u16..2, 6), -3i64..4), 1..5).prop_map(move |ts| {
        Polynomial::from_terms(
            &r,
            ts.into_iter().map(|(e, c)| {
                let mut x = vec![0u16; 3];
                x.extend(e);
                (Monomial::new(x), Coeff::from_rational(Rational::from(c)))
            }),
        )
    })
}

fn small_poly() -> impl Strategy<Value = Polynomial> {
    arb_poly().prop_filter("degree at most 3", |f| f.total_degree() <= 3)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn bracket_identities(f in small_poly(), g in small_poly(), h in small_poly()) {
        prop_assert_eq!(poisson(&f, &g), poisson(&g, &f).neg());
        prop_assert_eq!(poisson(&f, &g.mul(&h)), poisson(&f, &g).mul(&h).add(&g.mul(&poisson(&f, &h))));
        let jacobi = poisson(&f, &poisson(&g, &h))
            .add(&poisson(&g, &poisson(&h, &f)))
            .add(&poisson(&h, &poisson(&f, &g)));
        prop_assert!(jacobi.is_zero());
    }
}
