use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::arith::{Field, Rational};
use crate::model::parse_expression;
use crate::poly::{Coeff, Monomial, MonomialOrder, VariableTable};

fn ring_with(names: &[&str], order: MonomialOrder) -> Arc<Ring> {
    let mut t = VariableTable::new();
    for (i, n) in names.iter().enumerate() {
        t.push(*n, Role::Coordinate(i)).unwrap();
    }
    Ring::new(t, order, vec![]).unwrap()
}

fn xy() -> Arc<Ring> {
    ring_with(&["x", "y"], MonomialOrder::degrevlex(2))
}

/// Toy gauge chain ring: velocities block, then momenta and coordinates.
fn toy_ring() -> Arc<Ring> {
    let mut t = VariableTable::new();
    t.push("dot(q1)", Role::Velocity(0)).unwrap();
    t.push("dot(q2)", Role::Velocity(1)).unwrap();
    t.push("p_q1", Role::Momentum(0)).unwrap();
    t.push("p_q2", Role::Momentum(1)).unwrap();
    t.push("q1", Role::Coordinate(0)).unwrap();
    t.push("q2", Role::Coordinate(1)).unwrap();
    let order = MonomialOrder::block(&[(2, BlockKind::DegRevLex), (4, BlockKind::DegRevLex)]);
    Ring::new(t, order, vec![]).unwrap()
}

fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_expression(s, r).unwrap()
}

fn gb(r: &Arc<Ring>, gens: &[&str]) -> GroebnerBasis {
    let g: Vec<_> = gens.iter().map(|s| p(r, s)).collect();
    GroebnerBasis::compute(r, &g, &Budget::default()).unwrap()
}

fn spoly(a: &Polynomial, b: &Polynomial) -> Polynomial {
    let l = a.lm().lcm(b.lm());
    let one = Coeff::one();
    let ca = a.lc().inv().unwrap();
    let cb = b.lc().inv().unwrap();
    a.mul_term(&ca, &l.div(a.lm()).unwrap())
        .sub(&b.mul_term(&cb, &l.div(b.lm()).unwrap()))
        .scale(&one)
}

fn is_reduced(g: &GroebnerBasis) -> bool {
    g.basis().iter().enumerate().all(|(i, gi)| {
        gi.lc().is_one()
            && gi.terms().iter().all(|(m, _)| {
                g.basis()
                    .iter()
                    .enumerate()
                    .all(|(j, gj)| j == i || !gj.lm().divides(m))
            })
    })
}

#[test]
fn normal_form_examples() {
    let r = xy();
    let g = gb(&r, &["x"]);
    assert!(g.normal_form(&p(&r, "x^2")).is_zero());
    assert_eq!(g.normal_form(&p(&r, "x^2 + y")), p(&r, "y"));
}

#[test]
fn toy_canonical_hamiltonian() {
    let r = toy_ring();
    let g = gb(&r, &["p_q1 - dot(q1) + q2", "p_q2"]);
    assert_eq!(g.len(), 2);
    assert!(g.contains(&p(&r, "dot(q1) - p_q1 - q2")));
    assert!(g.contains(&p(&r, "p_q2")));
    let e = p(&r, "p_q1*dot(q1) + p_q2*dot(q2) - 1/2*(dot(q1) - q2)^2");
    assert_eq!(g.normal_form(&e), p(&r, "1/2*p_q1^2 + p_q1*q2"));
    let vel = [2, 3, 4, 5];
    assert_eq!(g.elimination(&vel).unwrap(), vec![p(&r, "p_q2")]);
}

#[test]
fn single_and_trivial() {
    let r = xy();
    assert_eq!(gb(&r, &["x"]).basis(), &[p(&r, "x")]);
    assert!(!gb(&r, &["x"]).is_trivial());
    let t = gb(&r, &["x - 1", "x"]);
    assert!(t.is_trivial());
    assert_eq!(t.basis(), &[Polynomial::one(&r)]);
}

#[test]
fn elimination_keeps_nothing_without_relation() {
    let r = ring_with(&["x", "y"], MonomialOrder::block(&[(1, BlockKind::DegRevLex), (1, BlockKind::DegRevLex)]));
    assert!(gb(&r, &["x - y"]).elimination(&[1]).unwrap().is_empty());
    let d = xy();
    assert!(matches!(gb(&d, &["x - y"]).elimination(&[1]), Err(Error::NotElimination)));
}

#[test]
fn membership_examples() {
    let r = xy();
    assert!(gb(&r, &["x^2 - x", "x^2"]).contains(&p(&r, "x")));
    assert!(!gb(&r, &["x"]).contains(&Polynomial::one(&r)));
    assert!(!gb(&r, &["x"]).contains(&p(&r, "y")));
}

#[test]
fn radical_examples() {
    let r = xy();
    let b = Budget::default();
    let i = |g: &[&str]| Ideal::new(&r, g.iter().map(|s| p(&r, s)).collect()).unwrap();
    assert!(radical_membership(&p(&r, "x"), &i(&["x^2"]), &b).unwrap());
    assert!(!radical_membership(&p(&r, "y"), &i(&["x^2"]), &b).unwrap());
    assert!(radical_membership(&p(&r, "x + y"), &i(&["x^2", "y^2"]), &b).unwrap());
    assert!(!gb(&r, &["x^2", "y^2"]).contains(&p(&r, "x + y")));
}

#[test]
fn budget_is_enforced() {
    let r = ring_with(&["x", "y", "z"], MonomialOrder::lex(3));
    let g = vec![p(&r, "x^3 - y*z^2 + 1"), p(&r, "y^3 - x*z + 2"), p(&r, "z^3 - x*y^2 - 3")];
    let tiny = Budget {
        max_polys: 3,
        max_terms: 1_000,
    };
    assert!(matches!(GroebnerBasis::compute(&r, &g, &tiny), Err(Error::ResourceLimit(_))));
}

#[test]
fn parametric_coefficients() {
    let mut t = VariableTable::new();
    t.push("x", Role::Coordinate(0)).unwrap();
    t.push("y", Role::Coordinate(1)).unwrap();
    let r = Ring::new(t, MonomialOrder::degrevlex(2), vec!["g".into()]).unwrap();
    let g = gb(&r, &["g^2*x + y", "x*y"]);
    assert!(g.contains(&p(&r, "y^2")));
    assert!(g.contains(&p(&r, "x + y/g^2")));
}

#[test]
fn extend_matches_recompute() {
    let r = xy();
    let a = gb(&r, &["x^2 - y"]);
    let e = a.extend(&[p(&r, "x*y - 1")], &Budget::default()).unwrap();
    assert_eq!(e.basis(), gb(&r, &["x^2 - y", "x*y - 1"]).basis());
}

#[test]
fn relative_cofactors_hold_modulo_base() {
    let r = xy();
    let base = gb(&r, &["y^2"]);
    let gens = vec![p(&r, "x^2 + y"), p(&r, "x*y")];
    let g = GroebnerBasis::compute_relative(&base, &gens, &Budget::default()).unwrap();
    for (gi, row) in g.basis().iter().zip(g.cofactors().unwrap()) {
        let comb = row
            .iter()
            .zip(&gens)
            .fold(Polynomial::zero(&r), |s, (h, f)| s.add(&h.mul(f)));
        assert!(base.contains(&gi.sub(&comb)), "{gi}");
    }
}

fn arb_poly(r: Arc<Ring>) -> impl Strategy<Value = Polynomial> {
    let n = r.nvars();
    prop::collection::vec((prop::collection::vec(0u16..3, n), -3i64..4), 1..5).prop_map(move |ts| {
        Polynomial::from_terms(
            &r,
            ts.into_iter()
                .map(|(e, c)| (Monomial::new(e), Coeff::from_rational(Rational::from(c)))),
        )
    })
}

fn three() -> Arc<Ring> {
    ring_with(&["x", "y", "z"], MonomialOrder::degrevlex(3))
}

fn arb_gens() -> impl Strategy<Value = Vec<Polynomial>> {
    prop::collection::vec(arb_poly(three()), 1..4)
}

fn small() -> Budget {
    Budget {
        max_polys: 60,
        max_terms: 20_000,
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn basis_properties(gens in arb_gens()) {
        let r = gens[0].ring().clone();
        let Ok(g) = GroebnerBasis::compute(&r, &gens, &small()) else { return Ok(()) };
        for f in &gens {
            prop_assert!(g.contains(f));
        }
        let b = g.basis();
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                prop_assert!(g.normal_form(&spoly(&b[i], &b[j])).is_zero());
            }
        }
        prop_assert!(is_reduced(&g));
        let mut rev = gens.clone();
        rev.reverse();
        let h = GroebnerBasis::compute(&r, &rev, &small()).unwrap();
        prop_assert_eq!(g.basis(), h.basis());
    }

    #[test]
    fn cofactor_identity(gens in arb_gens()) {
        let r = gens[0].ring().clone();
        let Ok(g) = GroebnerBasis::compute_extended(&r, &gens, &small()) else { return Ok(()) };
        for (gi, row) in g.basis().iter().zip(g.cofactors().unwrap()) {
            let comb = row.iter().zip(&gens).fold(Polynomial::zero(&r), |s, (h, f)| s.add(&h.mul(f)));
            prop_assert_eq!(gi, &comb);
        }
    }

    #[test]
    fn division_identity(gens in arb_gens(), f in arb_poly(three())) {
        let r = f.ring().clone();
        let Ok(g) = GroebnerBasis::compute(&r, &gens, &small()) else { return Ok(()) };
        let (rem, q) = g.normal_form_tracked(&f);
        let back = q.iter().zip(g.basis()).fold(rem.clone(), |s, (qi, gi)| s.add(&qi.mul(gi)));
        prop_assert_eq!(back, f);
        for (m, _) in rem.terms() {
            prop_assert!(g.basis().iter().all(|gi| !gi.lm().divides(m)));
        }
    }
}
