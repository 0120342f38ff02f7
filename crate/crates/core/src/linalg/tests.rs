use std::sync::Arc;

use proptest::prelude::*;

use super::*;
use crate::groebner::Budget;
use crate::model::parse_expression;
use crate::poly::{MonomialOrder, Role, VariableTable};

fn ring() -> Arc<Ring> {
    let mut t = VariableTable::new();
    for (i, n) in ["a", "b", "c"].iter().enumerate() {
        t.push(*n, Role::Coordinate(i)).unwrap();
    }
    Ring::new(t, MonomialOrder::degrevlex(3), vec!["g".into()]).unwrap()
}

fn free(r: &Arc<Ring>) -> GroebnerBasis {
    GroebnerBasis::compute(r, &[], &Budget::default()).unwrap()
}

fn mat(r: &Arc<Ring>, rows: &[&[&str]]) -> Matrix {
    rows.iter()
        .map(|row| row.iter().map(|s| parse_expression(s, r).unwrap()).collect())
        .collect()
}

fn p(r: &Arc<Ring>, s: &str) -> Polynomial {
    parse_expression(s, r).unwrap()
}

#[test]
fn zero_matrix_has_rank_zero() {
    let r = ring();
    let mut cert = Certificate::default();
    assert_eq!(rank(&mat(&r, &[&["0", "0"], &["0", "0"]]), &free(&r), &mut cert).unwrap(), 0);
    assert!(cert.is_empty());
}

#[test]
fn skew_symbolic_rank_two() {
    let r = ring();
    let mut cert = Certificate::default();
    let m = mat(&r, &[&["0", "c"], &["-c", "0"]]);
    assert_eq!(rank(&m, &free(&r), &mut cert).unwrap(), 2);
    assert!(cert.contains(&p(&r, "c")));
}

#[test]
fn kernels() {
    let r = ring();
    let mut cert = Certificate::default();
    assert!(kernel(&mat(&r, &[&["1", "0"], &["0", "1"]]), &free(&r), &mut cert).unwrap().is_empty());
    let k = kernel(&mat(&r, &[&["a", "b"]]), &free(&r), &mut cert).unwrap();
    assert_eq!(k.len(), 1);
    let v = &k[0];
    assert!(v[0].sub(&p(&r, "b")).is_zero() || v[0].add(&p(&r, "b")).is_zero());
    assert!(v[0].mul(&p(&r, "a")).add(&v[1].mul(&p(&r, "b"))).is_zero());
}

#[test]
fn kernel_modulo_ideal() {
    let r = ring();
    let m = GroebnerBasis::compute(&r, &[p(&r, "c")], &Budget::default()).unwrap();
    let mut cert = Certificate::default();
    let k = kernel(&mat(&r, &[&["a", "c"]]), &m, &mut cert).unwrap();
    assert_eq!(k.len(), 1);
    assert_eq!(k[0][1], Polynomial::one(&r));
}

#[test]
fn complements() {
    let r = ring();
    let mut cert = Certificate::default();
    let t = complement(&mat(&r, &[&["1", "0"]]), 2, &free(&r), &mut cert).unwrap();
    assert_eq!(t, mat(&r, &[&["0", "1"]]));
    let full = complement(&mat(&r, &[&["1", "0"], &["0", "1"]]), 2, &free(&r), &mut cert).unwrap();
    assert!(full.is_empty());
    let dep = complement(&mat(&r, &[&["1", "a"], &["2", "2*a"]]), 2, &free(&r), &mut cert);
    assert!(matches!(dep, Err(Error::Invalid(_))));
}

#[test]
fn orthogonal_projector_columns() {
    let r = ring();
    let mut cert = Certificate::default();
    let t = complement(&mat(&r, &[&["a", "b", "c"]]), 3, &free(&r), &mut cert).unwrap();
    assert_eq!(t.len(), 2);
    let norm = p(&r, "a^2 + b^2 + c^2");
    assert!(cert.contains(&norm));
    assert_eq!(t[0], mat(&r, &[&["b^2 + c^2", "-a*b", "-a*c"]])[0]);
}

#[test]
fn inverses() {
    let r = ring();
    let mut cert = Certificate::default();
    let inv = inverse(&mat(&r, &[&["2", "0"], &["0", "2"]]), &free(&r), &mut cert).unwrap();
    let half = |x: &Polynomial| x.scale(&inv.det.as_constant().unwrap().inv().unwrap());
    assert_eq!(half(&inv.adj[0][0]), p(&r, "1/2"));
    assert!(inv.adj[0][1].is_zero());
    let inv = inverse(&mat(&r, &[&["0", "c"], &["-c", "0"]]), &free(&r), &mut cert).unwrap();
    assert_eq!(inv.det, p(&r, "c^2"));
    assert_eq!(inv.adj, mat(&r, &[&["0", "-c"], &["c", "0"]]));
    assert!(cert.contains(&p(&r, "c")));
    let singular = inverse(&mat(&r, &[&["a", "b"], &["a", "b"]]), &free(&r), &mut cert);
    assert!(matches!(singular, Err(Error::Inconsistent(_))));
}

#[test]
fn parameter_pivots_are_justified() {
    let r = ring();
    let mut cert = Certificate::new(vec![0]);
    rank(&mat(&r, &[&["2*g^2*a"]]), &free(&r), &mut cert).unwrap();
    let g = cert.entries().iter().find(|e| e.poly == p(&r, "g")).unwrap();
    assert_eq!(g.justification, Justification::Parameter);
    assert!(cert.contains(&p(&r, "a")));
}

#[test]
fn vanishing_denominator_is_rejected() {
    let r = ring();
    let m = GroebnerBasis::compute(&r, &[p(&r, "a")], &Budget::default()).unwrap();
    let mut cert = Certificate::default();
    assert!(cert.record(&p(&r, "b + 1"), &m).is_ok());
    assert!(matches!(cert.record(&p(&r, "a*b"), &m), Err(Error::Inconsistent(_))));
}

fn arb_entry() -> impl Strategy<Value = String> {
    prop_oneof![
        Just("0".to_string()),
        (-2i64..3).prop_map(|k| k.to_string()),
        (-2i64..3, 0usize..3).prop_map(|(k, v)| format!("{k}*{}", ["a", "b", "c"][v])),
        (0usize..3, 0usize..3).prop_map(|(u, v)| format!("{}*{} - 1", ["a", "b", "c"][u], ["a", "b", "c"][v])),
    ]
}

fn to_matrix(r: &Arc<Ring>, e: &[Vec<String>]) -> Matrix {
    e.iter().map(|row| row.iter().map(|s| p(r, s)).collect()).collect()
}

fn eval_matrix(m: &Matrix, pt: &[Rational]) -> Vec<Vec<Rational>> {
    m.iter()
        .map(|row| row.iter().map(|x| x.eval(pt, &[Rational::from(3)]).unwrap()).collect())
        .collect()
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn skew_rank_is_even(upper in prop::collection::vec(arb_entry(), 6)) {
        let r = ring();
        let n = 4;
        let mut m = vec![vec![Polynomial::zero(&r); n]; n];
        let mut k = 0;
        for i in 0..n {
            for j in i + 1..n {
                m[i][j] = p(&r, &upper[k]);
                m[j][i] = m[i][j].neg();
                k += 1;
            }
        }
        let mut cert = Certificate::default();
        prop_assert_eq!(rank(&m, &free(&r), &mut cert).unwrap() % 2, 0);
    }

    #[test]
    fn kernel_and_rank_agree(e in prop::collection::vec(prop::collection::vec(arb_entry(), 4), 3),
                             pts in prop::collection::vec(prop::collection::vec(-7i64..8, 3), 5)) {
        let r = ring();
        let m = to_matrix(&r, &e);
        let mut cert = Certificate::default();
        let rk = rank(&m, &free(&r), &mut cert).unwrap();
        let ker = kernel(&m, &free(&r), &mut cert).unwrap();
        prop_assert_eq!(rk + ker.len(), 4);
        for v in &ker {
            prop_assert!(apply(&m, v, &free(&r)).iter().all(|x| x.is_zero()));
        }
        for pt in pts {
            let pt: Vec<Rational> = pt.into_iter().map(Rational::from).collect();
            let generic = cert.polynomials().all(|c| !c.eval(&pt, &[Rational::from(3)]).unwrap().is_zero());
            let nr = numeric_rank(&eval_matrix(&m, &pt));
            prop_assert!(nr <= rk);
            if generic {
                prop_assert_eq!(nr, rk);
            }
        }
    }

    #[test]
    fn inverse_identity(e in prop::collection::vec(prop::collection::vec(arb_entry(), 3), 3)) {
        let r = ring();
        let m = to_matrix(&r, &e);
        let mut cert = Certificate::default();
        if let Ok(inv) = inverse(&m, &free(&r), &mut cert) {
            for i in 0..3 {
                for j in 0..3 {
                    let s = (0..3).fold(Polynomial::zero(&r), |s, k| s.add(&m[i][k].mul(&inv.adj[k][j])));
                    let want = if i == j { inv.det.clone() } else { Polynomial::zero(&r) };
                    prop_assert_eq!(s, want);
                }
            }
        } else {
            prop_assert!(determinant(&m, &r).is_zero());
        }
    }
}
