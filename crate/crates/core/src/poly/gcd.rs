//! Greatest common divisors and squarefree parts of ring polynomials.

use super::{Coeff, Monomial, Polynomial};
use crate::arith::{Field, SparsePoly};
use crate::groebner::reduce;

type Sparse = SparsePoly<Coeff>;

fn to_sparse(f: &Polynomial) -> Sparse {
    Sparse::from_terms(
        f.terms()
            .iter()
            .map(|(m, c)| (m.exps().iter().map(|&e| e as u32).collect(), c.clone())),
    )
}

fn from_sparse(f: &Sparse, like: &Polynomial) -> Polynomial {
    let n = like.ring().nvars();
    Polynomial::from_terms(
        like.ring(),
        f.terms().iter().map(|(e, c)| {
            let mut v = vec![0u16; n];
            for (i, &k) in e.iter().enumerate() {
                v[i] = k as u16;
            }
            (Monomial::new(v), c.clone())
        }),
    )
}

impl Polynomial {
    /// Monic gcd; `gcd(0, 0) = 0`.
    pub fn gcd(&self, rhs: &Polynomial) -> Polynomial {
        if self.is_zero() {
            return rhs.monic();
        }
        if rhs.is_zero() || self.is_constant() || rhs.is_constant() {
            return if rhs.is_zero() { self.monic() } else { Polynomial::one(self.ring()) };
        }
        from_sparse(&to_sparse(self).gcd(&to_sparse(rhs)), self).monic()
    }

    /// Monic least common multiple.
    pub fn lcm(&self, rhs: &Polynomial) -> Polynomial {
        self.mul(rhs).exact_div(&self.gcd(rhs)).expect("gcd divides").monic()
    }

    /// Exact quotient `self / d`, if `d` divides `self`.
    pub fn exact_div(&self, d: &Polynomial) -> Option<Polynomial> {
        if d.is_zero() {
            return None;
        }
        if let Some(c) = d.as_constant() {
            return Some(self.scale(&c.inv()?));
        }
        let mut q = Vec::new();
        let r = reduce(self, &[d], Some(&mut q));
        r.is_zero().then(|| q.pop().expect("one quotient"))
    }

    /// Product of the distinct irreducible factors, made monic.
    pub fn squarefree_part(&self) -> Polynomial {
        if self.is_constant() {
            return self.monic();
        }
        let mut g = self.clone();
        for v in self.support() {
            g = g.gcd(&self.diff(v));
            if g.is_constant() {
                return self.monic();
            }
        }
        self.exact_div(&g).expect("gcd divides").monic()
    }
}

#[cfg(test)]
mod tests {
    use crate::model::parse_expression;
    use crate::poly::{MonomialOrder, Polynomial, Ring, Role, VariableTable};
    use std::sync::Arc;

    fn ring() -> Arc<Ring> {
        let mut t = VariableTable::new();
        for (i, n) in ["x", "y", "z"].iter().enumerate() {
            t.push(*n, Role::Coordinate(i)).unwrap();
        }
        Ring::new(t, MonomialOrder::degrevlex(3), vec!["g".into()]).unwrap()
    }

    fn p(s: &str) -> Polynomial {
        parse_expression(s, &ring()).unwrap()
    }

    #[test]
    fn gcd_and_division() {
        let a = p("(x^2 + y^2 + z^2)*(x - g*y)");
        let b = p("(x^2 + y^2 + z^2)*(z + 1)^2");
        assert_eq!(a.gcd(&b), p("x^2 + y^2 + z^2"));
        assert_eq!(a.exact_div(&p("x - g*y")).unwrap(), p("x^2 + y^2 + z^2"));
        assert!(a.exact_div(&p("z")).is_none());
    }

    #[test]
    fn squarefree() {
        assert_eq!(p("2*(x^2 + y^2)^2*(x - z)").squarefree_part(), p("(x^2 + y^2)*(x - z)"));
        assert_eq!(p("g^2*x*y").squarefree_part(), p("x*y"));
    }
}
