use crate::arith::{Rational, SparsePoly};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::poly::{Coeff, Polynomial};

/// Why a certificate polynomial is taken to be nonzero.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Justification {
    /// A product of parameters declared `!= 0`.
    Parameter,
    /// Assumed nonzero on a generic point of the constraint surface.
    Generic,
}

#[derive(Clone, Debug)]
pub struct Assumption {
    pub poly: Polynomial,
    pub justification: Justification,
}

/// Polynomials divided by during an exact computation, each asserted
/// nonvanishing.
#[derive(Clone, Debug, Default)]
pub struct Certificate {
    declared: Vec<usize>,
    entries: Vec<Assumption>,
}

fn param_squarefree(p: &SparsePoly<Rational>) -> SparsePoly<Rational> {
    let mut g = p.clone();
    for v in 0..p.num_vars() {
        if p.degree_in(v) > 0 {
            g = g.gcd(&p.derivative(v));
        }
    }
    p.exact_div(&g).expect("gcd divides").monic()
}

impl Certificate {
    /// `declared` lists the parameter indices declared nonzero.
    pub fn new(declared: Vec<usize>) -> Self {
        Certificate {
            declared,
            entries: Vec::new(),
        }
    }

    pub fn entries(&self) -> &[Assumption] {
        &self.entries
    }

    pub fn polynomials(&self) -> impl Iterator<Item = &Polynomial> {
        self.entries.iter().map(|a| &a.poly)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.entries.iter().any(|a| &a.poly == f)
    }

    fn push(&mut self, poly: Polynomial, justification: Justification) {
        let rational = poly.as_constant().is_some_and(|c| c.as_rational().is_some());
        if !rational && !self.contains(&poly) {
            self.entries.push(Assumption { poly, justification });
        }
    }

    fn record_param(&mut self, like: &Polynomial, p: &SparsePoly<Rational>) {
        if p.is_constant() {
            return;
        }
        let s = param_squarefree(p);
        let declared = s.terms().len() == 1
            && s.terms()[0]
                .0
                .iter()
                .enumerate()
                .all(|(i, &k)| k == 0 || self.declared.contains(&i));
        let just = if declared {
            Justification::Parameter
        } else {
            Justification::Generic
        };
        self.push(
            Polynomial::constant(like.ring(), Coeff::from_poly(s)),
            just,
        );
    }

    /// Records `f != 0`, splitting off its parameter content. Fails when the
    /// remaining factor lies in the constraint ideal.
    pub fn record(&mut self, f: &Polynomial, modulus: &GroebnerBasis) -> Result<()> {
        if f.is_zero() {
            return Err(Error::Inconsistent("division by a polynomial that is zero".into()));
        }
        let lc = f.lc().clone();
        self.record_param(f, lc.numer());
        self.record_param(f, lc.denom());
        if f.is_constant() {
            return Ok(());
        }
        let s = f.monic().squarefree_part();
        if modulus.contains(&s) {
            return Err(Error::Inconsistent(format!(
                "denominator {s} vanishes identically on the constraint surface"
            )));
        }
        self.push(s, Justification::Generic);
        Ok(())
    }

    /// Merges another certificate's entries, keeping first occurrences.
    pub fn absorb(&mut self, other: &Certificate) {
        for a in &other.entries {
            self.push(a.poly.clone(), a.justification);
        }
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    /// Product of all entries; nonzero wherever the certificate holds.
    pub fn product(&self, one: &Polynomial) -> Polynomial {
        self.entries.iter().fold(one.clone(), |acc, a| acc.mul(&a.poly))
    }
}
