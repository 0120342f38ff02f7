//! Gröbner bases: normal forms, Buchberger's algorithm with optional
//! cofactor tracking, elimination, ideal and radical membership.

mod buchberger;
mod reduce;

use std::sync::Arc;

pub use reduce::reduce;

use buchberger::{Elem, Engine};

use crate::error::{Error, Result};
use crate::poly::{BlockKind, Polynomial, Ring, Role};

/// Caps on basis size; exceeding either aborts with a resource-limit error.
#[derive(Clone, Debug)]
pub struct Budget {
    pub max_polys: usize,
    pub max_terms: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Budget {
            max_polys: 5_000,
            max_terms: 2_000_000,
        }
    }
}

/// Generators of an ideal in a fixed ring.
#[derive(Clone, Debug)]
pub struct Ideal {
    ring: Arc<Ring>,
    gens: Vec<Polynomial>,
}

impl Ideal {
    pub fn new(ring: &Arc<Ring>, gens: Vec<Polynomial>) -> Result<Self> {
        for g in &gens {
            if !Ring::same(g.ring(), ring) {
                return Err(Error::RingMismatch("generator from another ring".into()));
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: gens.into_iter().filter(|g| !g.is_zero()).collect(),
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial] {
        &self.gens
    }

    pub fn groebner(&self, budget: &Budget) -> Result<GroebnerBasis> {
        GroebnerBasis::compute(&self.ring, &self.gens, budget)
    }
}

/// Reduced Gröbner basis, sorted by ascending leading monomial.
///
/// With cofactors, `basis[i] = sum_j cofactors[i][j] * generators[j]`,
/// exactly or (for a relative basis) modulo the base ideal.
#[derive(Clone, Debug)]
pub struct GroebnerBasis {
    ring: Arc<Ring>,
    basis: Vec<Polynomial>,
    cofactors: Option<Vec<Vec<Polynomial>>>,
}

impl GroebnerBasis {
    pub fn compute(ring: &Arc<Ring>, gens: &[Polynomial], budget: &Budget) -> Result<Self> {
        let mut eng = Engine::new(ring, 0, Vec::new(), budget);
        for g in gens {
            eng.insert(Elem {
                poly: g.clone(),
                cof: None,
            })?;
        }
        eng.run()?;
        Ok(Self::from_elems(ring, eng.finish(), false))
    }

    /// Extended algorithm: the basis together with cofactors over `gens`.
    pub fn compute_extended(ring: &Arc<Ring>, gens: &[Polynomial], budget: &Budget) -> Result<Self> {
        Self::extended_impl(ring, None, gens, budget)
    }

    /// Basis of `base + <gens>` with cofactors over `gens` only, reduced
    /// modulo `base`. Members of `base` count as zero.
    pub fn compute_relative(base: &GroebnerBasis, gens: &[Polynomial], budget: &Budget) -> Result<Self> {
        Self::extended_impl(&base.ring, Some(base), gens, budget)
    }

    fn extended_impl(
        ring: &Arc<Ring>,
        base: Option<&GroebnerBasis>,
        gens: &[Polynomial],
        budget: &Budget,
    ) -> Result<Self> {
        let m = gens.len();
        let base_polys = base.map(|b| b.basis.clone()).unwrap_or_default();
        let mut eng = Engine::new(ring, m.max(1), base_polys.clone(), budget);
        for b in base_polys {
            eng.seed(b);
        }
        for (j, g) in gens.iter().enumerate() {
            let mut cof = vec![Polynomial::zero(ring); m.max(1)];
            cof[j] = Polynomial::one(ring);
            eng.insert(Elem {
                poly: g.clone(),
                cof: Some(cof),
            })?;
        }
        eng.run()?;
        let mut gb = Self::from_elems(ring, eng.finish(), true);
        if let Some(c) = &mut gb.cofactors {
            for row in c.iter_mut() {
                row.truncate(m);
            }
        }
        Ok(gb)
    }

    /// Basis of `self + <gens>`, reusing the pairs already settled.
    pub fn extend(&self, gens: &[Polynomial], budget: &Budget) -> Result<Self> {
        let mut eng = Engine::new(&self.ring, 0, Vec::new(), budget);
        for b in &self.basis {
            eng.seed(b.clone());
        }
        for g in gens {
            eng.insert(Elem {
                poly: g.clone(),
                cof: None,
            })?;
        }
        eng.run()?;
        Ok(Self::from_elems(&self.ring, eng.finish(), false))
    }

    fn from_elems(ring: &Arc<Ring>, elems: Vec<Elem>, track: bool) -> Self {
        let (basis, cofs): (Vec<_>, Vec<_>) = elems.into_iter().map(|e| (e.poly, e.cof)).unzip();
        let cofactors = track.then(|| cofs.into_iter().map(|c| c.unwrap_or_default()).collect());
        GroebnerBasis {
            ring: ring.clone(),
            basis,
            cofactors,
        }
    }

    /// The same basis in a ring extended by trailing blocks; still reduced.
    pub fn embed(&self, ring: &Arc<Ring>) -> Result<Self> {
        let lift = |v: &[Polynomial]| v.iter().map(|b| b.embed(ring)).collect::<Result<Vec<_>>>();
        Ok(GroebnerBasis {
            ring: ring.clone(),
            basis: lift(&self.basis)?,
            cofactors: match &self.cofactors {
                Some(c) => Some(c.iter().map(|row| lift(row)).collect::<Result<_>>()?),
                None => None,
            },
        })
    }

    pub fn ring(&self) -> &Arc<Ring> {
        &self.ring
    }

    pub fn basis(&self) -> &[Polynomial] {
        &self.basis
    }

    pub fn cofactors(&self) -> Option<&[Vec<Polynomial>]> {
        self.cofactors.as_deref()
    }

    pub fn len(&self) -> usize {
        self.basis.len()
    }

    pub fn is_empty(&self) -> bool {
        self.basis.is_empty()
    }

    /// True iff the basis is `{1}`.
    pub fn is_trivial(&self) -> bool {
        matches!(self.basis.as_slice(), [b] if b.is_one())
    }

    pub fn normal_form(&self, f: &Polynomial) -> Polynomial {
        let refs: Vec<&Polynomial> = self.basis.iter().collect();
        reduce(f, &refs, None)
    }

    /// Remainder and one quotient per basis element.
    pub fn normal_form_tracked(&self, f: &Polynomial) -> (Polynomial, Vec<Polynomial>) {
        let refs: Vec<&Polynomial> = self.basis.iter().collect();
        let mut q = Vec::new();
        let r = reduce(f, &refs, Some(&mut q));
        (r, q)
    }

    pub fn contains(&self, f: &Polynomial) -> bool {
        self.normal_form(f).is_zero()
    }

    /// Basis elements involving only `keep`; the result is a Gröbner basis of
    /// the elimination ideal.
    pub fn elimination(&self, keep: &[usize]) -> Result<Vec<Polynomial>> {
        let dropped: Vec<usize> = (0..self.ring.nvars()).filter(|v| !keep.contains(v)).collect();
        if !self.ring.order().eliminates(&dropped) {
            return Err(Error::NotElimination);
        }
        Ok(self
            .basis
            .iter()
            .filter(|b| b.uses_only(|v| keep.contains(&v)))
            .cloned()
            .collect())
    }

    /// Rabinowitsch test: `f` lies in the radical iff `1` is in
    /// `self + <1 - t*f>` for a fresh variable `t`.
    pub fn radical_contains(&self, f: &Polynomial, budget: &Budget) -> Result<bool> {
        if self.contains(f) {
            return Ok(true);
        }
        let slack = self
            .ring
            .extend(&[("_t".to_string(), Role::Slack)], BlockKind::DegRevLex)?;
        let base = self
            .basis
            .iter()
            .map(|b| b.embed(&slack))
            .collect::<Result<Vec<_>>>()?;
        let lifted = GroebnerBasis {
            ring: slack.clone(),
            basis: base,
            cofactors: None,
        };
        let t = Polynomial::var(&slack, slack.nvars() - 1);
        let h = Polynomial::one(&slack).sub(&t.mul(&f.embed(&slack)?));
        Ok(lifted.extend(&[h], budget)?.is_trivial())
    }
}

/// Radical membership for an ideal given by generators.
pub fn radical_membership(f: &Polynomial, ideal: &Ideal, budget: &Budget) -> Result<bool> {
    ideal.groebner(budget)?.radical_contains(f, budget)
}

#[cfg(test)]
mod tests;
