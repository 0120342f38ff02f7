//! Legendre map, Hamiltonians, Poisson and Dirac brackets.
//!
//! Convention: `{f, g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i)` and time
//! evolution is `df/dt = {f, H}`.

use std::sync::Arc;

use crate::arith::Field;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::{self, Certificate, Inverse, Matrix};
use crate::model::DegenerateModel;
use crate::poly::{BlockKind, Polynomial, Ring, Role};

/// Text placed in reports to state the bracket convention.
pub const CONVENTION: &str =
    "{f,g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i); time evolution df/dt = {f,H}";

/// Conjugate pairs `(q_i, p_i)` of a ring, as variable indices.
#[derive(Clone, Debug)]
pub struct PhaseSpace {
    pairs: Vec<(usize, usize)>,
}

impl PhaseSpace {
    pub fn of(ring: &Ring) -> Self {
        let t = ring.table();
        let pairs = t
            .select(|r| matches!(r, Role::Coordinate(_)))
            .into_iter()
            .filter_map(|q| t.conjugate(q).map(|p| (q, p)))
            .collect();
        PhaseSpace { pairs }
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Polynomial {
        let (sf, sg) = (f.support(), g.support());
        let mut acc = Polynomial::zero(f.ring());
        for &(q, p) in &self.pairs {
            if sf.contains(&q) && sg.contains(&p) {
                acc = acc.add(&f.diff(q).mul(&g.diff(p)));
            }
            if sf.contains(&p) && sg.contains(&q) {
                acc = acc.sub(&f.diff(p).mul(&g.diff(q)));
            }
        }
        acc
    }
}

/// Poisson bracket; multipliers and gauge symbols behave as constants.
pub fn poisson(f: &Polynomial, g: &Polynomial) -> Polynomial {
    PhaseSpace::of(f.ring()).bracket(f, g)
}

fn velocities(ring: &Ring) -> Vec<usize> {
    ring.table().select(|r| matches!(r, Role::Velocity(_)))
}

/// Generators `p_i - dL/d(dot q_i)` of the Legendre ideal.
pub fn legendre_ideal(model: &DegenerateModel) -> Vec<Polynomial> {
    let ring = model.ring();
    let t = ring.table();
    (0..model.n())
        .map(|i| {
            let v = t.find(Role::Velocity(i)).expect("velocity");
            let p = t.find(Role::Momentum(i)).expect("momentum");
            Polynomial::var(ring, p).sub(&model.lagrangian.diff(v))
        })
        .collect()
}

/// The velocity Hessian `d^2 L / d(dot q_i) d(dot q_j)`.
pub fn hessian(model: &DegenerateModel) -> Matrix {
    let v = velocities(model.ring());
    v.iter()
        .map(|&a| {
            let da = model.lagrangian.diff(a);
            v.iter().map(|&b| da.diff(b)).collect()
        })
        .collect()
}

/// `NF(p_i dot q_i - L)` modulo the Legendre basis; contains no velocities.
pub fn canonical_hamiltonian(model: &DegenerateModel, legendre: &GroebnerBasis) -> Result<Polynomial> {
    let ring = model.ring();
    let t = ring.table();
    let mut e = model.lagrangian.neg();
    for i in 0..model.n() {
        let v = Polynomial::var(ring, t.find(Role::Velocity(i)).expect("velocity"));
        let p = Polynomial::var(ring, t.find(Role::Momentum(i)).expect("momentum"));
        e = e.add(&p.mul(&v));
    }
    let h = legendre.normal_form(&e);
    let vel = velocities(ring);
    if h.support().iter().any(|x| vel.contains(x)) {
        return Err(Error::Invalid(format!(
            "canonical Hamiltonian retains velocities: {h}"
        )));
    }
    Ok(h)
}

/// The ring with one multiplier `U<k>` per primary constraint appended.
pub fn multiplier_ring(ring: &Arc<Ring>, count: usize) -> Result<Arc<Ring>> {
    let vars: Vec<(String, Role)> = (0..count)
        .map(|k| (format!("U{}", k + 1), Role::Multiplier(k)))
        .collect();
    if vars.is_empty() {
        return Ok(ring.clone());
    }
    ring.extend(&vars, BlockKind::DegRevLex)
}

/// `H_T = H_C + sum_a U_a phi_a` over the multiplier ring.
pub fn total_hamiltonian(hc: &Polynomial, primaries: &[Polynomial], mring: &Arc<Ring>) -> Result<Polynomial> {
    let mut h = hc.embed(mring)?;
    for (k, phi) in primaries.iter().enumerate() {
        let u = mring
            .table()
            .find(Role::Multiplier(k))
            .ok_or_else(|| Error::UnknownVariable(format!("U{}", k + 1)))?;
        h = h.add(&Polynomial::var(mring, u).mul(&phi.embed(mring)?));
    }
    Ok(h)
}

/// A fraction whose denominator is nonzero on the constraint surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LocalizedExpression {
    pub num: Polynomial,
    pub den: Polynomial,
}

impl LocalizedExpression {
    pub fn polynomial(num: Polynomial) -> Self {
        let den = Polynomial::one(num.ring());
        LocalizedExpression { num, den }
    }

    /// Weak zero test: the numerator lies in the constraint ideal.
    pub fn is_weak_zero(&self, gb: &GroebnerBasis) -> bool {
        gb.contains(&self.num)
    }

    /// Cancels the common factor of numerator and denominator.
    pub fn simplify(&self) -> Self {
        if self.den.is_one() || self.num.is_zero() {
            return LocalizedExpression::polynomial(self.num.clone());
        }
        let g = self.num.gcd(&self.den);
        let (mut n, mut d) = (
            self.num.exact_div(&g).expect("gcd divides"),
            self.den.exact_div(&g).expect("gcd divides"),
        );
        if let Some(c) = d.as_constant() {
            n = n.scale(&c.inv().expect("nonzero"));
            d = Polynomial::one(n.ring());
        } else {
            let inv = d.lc().inv().expect("nonzero");
            n = n.scale(&inv);
            d = d.scale(&inv);
        }
        LocalizedExpression { num: n, den: d }
    }
}

impl std::fmt::Display for LocalizedExpression {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}

/// `{f,g}_D = {f,g} - {f,chi_a} C^{-1}_{ab} {chi_b,g}` with `C^{-1} = adj/det`.
#[derive(Clone, Debug)]
pub struct DiracBracket {
    chi: Vec<Polynomial>,
    inv: Option<Inverse>,
}

impl DiracBracket {
    /// Builds the bracket for second-class `chi`; `modulus` is the basis of
    /// the full constraint ideal, used for `C` and its certificate.
    pub fn new(chi: Vec<Polynomial>, modulus: &GroebnerBasis, cert: &mut Certificate) -> Result<Self> {
        if chi.is_empty() {
            return Ok(DiracBracket { chi, inv: None });
        }
        let c: Matrix = chi
            .iter()
            .map(|a| chi.iter().map(|b| modulus.normal_form(&poisson(a, b))).collect())
            .collect();
        let inv = linalg::inverse(&c, modulus, cert)?;
        Ok(DiracBracket { chi, inv: Some(inv) })
    }

    pub fn second_class(&self) -> &[Polynomial] {
        &self.chi
    }

    pub fn inverse(&self) -> Option<&Inverse> {
        self.inv.as_ref()
    }

    /// Exact Dirac bracket as a fraction over `det C`.
    pub fn bracket(&self, f: &Polynomial, g: &Polynomial) -> Result<LocalizedExpression> {
        self.bracket_impl(f, g, None)
    }

    /// Dirac bracket valid modulo the ideal of `weak`: the brackets with the
    /// second-class constraints are reduced first, which is allowed because
    /// the result is only used up to elements of that ideal.
    pub fn bracket_mod(&self, f: &Polynomial, g: &Polynomial, weak: &GroebnerBasis) -> Result<LocalizedExpression> {
        self.bracket_impl(f, g, Some(weak))
    }

    fn bracket_impl(
        &self,
        f: &Polynomial,
        g: &Polynomial,
        weak: Option<&GroebnerBasis>,
    ) -> Result<LocalizedExpression> {
        let ring = f.ring().clone();
        let pb = poisson(f, g);
        let Some(inv) = &self.inv else {
            return Ok(LocalizedExpression::polynomial(pb));
        };
        let lift = |x: &Polynomial| x.embed(&ring);
        let red = |x: Polynomial| match weak {
            Some(b) => b.normal_form(&x),
            None => x,
        };
        let mut left = Vec::with_capacity(self.chi.len());
        let mut right = Vec::with_capacity(self.chi.len());
        for chi in &self.chi {
            let c = lift(chi)?;
            left.push(red(poisson(f, &c)));
            right.push(red(poisson(&c, g)));
        }
        if left.iter().all(|x| x.is_zero()) || right.iter().all(|x| x.is_zero()) {
            return Ok(LocalizedExpression::polynomial(pb));
        }
        let det = lift(&inv.det)?;
        let mut num = det.mul(&pb);
        for (a, la) in left.iter().enumerate() {
            if la.is_zero() {
                continue;
            }
            for (b, rb) in right.iter().enumerate() {
                if rb.is_zero() || inv.adj[a][b].is_zero() {
                    continue;
                }
                num = num.sub(&la.mul(&lift(&inv.adj[a][b])?).mul(rb));
            }
        }
        Ok(LocalizedExpression {
            num: red(num),
            den: det,
        })
    }
}

#[cfg(test)]
mod tests;
