use crate::arith::Field;
use crate::poly::{Coeff, Monomial, Polynomial};

/// Full normal form of `f` with respect to `basis`.
///
/// When `quotients` is given it receives one polynomial per basis element so
/// that `f = sum quotients[i] * basis[i] + remainder` holds exactly.
pub fn reduce(
    f: &Polynomial,
    basis: &[&Polynomial],
    quotients: Option<&mut Vec<Polynomial>>,
) -> Polynomial {
    let ring = f.ring().clone();
    let track = quotients.is_some();
    let mut qterms: Vec<Vec<(Monomial, Coeff)>> = if track {
        vec![Vec::new(); basis.len()]
    } else {
        Vec::new()
    };
    let mut p = f.clone();
    let mut rem = Vec::new();
    while let Some((m, c)) = p.leading().cloned() {
        match basis.iter().position(|g| g.lm().divides(&m)) {
            Some(k) => {
                let g = basis[k];
                let qm = m.div(g.lm()).expect("divisible");
                let qc = c.div_ref(g.lc()).expect("nonzero leading coefficient");
                p = p.sub_mul_term(&qc, &qm, g);
                if track {
                    qterms[k].push((qm, qc));
                }
            }
            None => {
                rem.push((m, c));
                p = p.tail();
            }
        }
    }
    if let Some(q) = quotients {
        *q = qterms
            .into_iter()
            .map(|t| Polynomial::from_sorted(&ring, t))
            .collect();
    }
    Polynomial::from_sorted(&ring, rem)
}
