use super::Options;
use crate::error::Result;
use crate::groebner::GroebnerBasis;
use crate::mechanics::{canonical_hamiltonian, legendre_ideal};
use crate::model::DegenerateModel;
use crate::poly::Polynomial;

#[derive(Clone, Debug)]
pub struct Primary {
    /// Basis of the Legendre ideal, velocities eliminated first.
    pub legendre: GroebnerBasis,
    pub hamiltonian: Polynomial,
    /// Independent primary constraints, ascending by leading monomial.
    pub constraints: Vec<Polynomial>,
}

/// Elimination ideal of the Legendre map, made squarefree and minimized so
/// that no constraint lies in the ideal of the others.
pub fn primary_constraints(model: &DegenerateModel, options: &Options) -> Result<Primary> {
    let ring = model.ring();
    let legendre = GroebnerBasis::compute(ring, &legendre_ideal(model), &options.budget)?;
    let hamiltonian = canonical_hamiltonian(model, &legendre)?;
    let keep = ring.table().select(|r| r.is_phase_space());
    let mut cands: Vec<Polynomial> = Vec::new();
    for f in legendre.elimination(&keep)? {
        let s = f.squarefree_part();
        if !cands.contains(&s) {
            cands.push(s);
        }
    }
    let order = ring.order().clone();
    cands.sort_by(|a, b| order.cmp(b.lm(), a.lm()));
    let mut i = 0;
    while i < cands.len() {
        let rest: Vec<Polynomial> = cands
            .iter()
            .enumerate()
            .filter(|&(j, _)| j != i)
            .map(|(_, f)| f.clone())
            .collect();
        let gb = GroebnerBasis::compute(ring, &rest, &options.budget)?;
        if options.member(&gb, &cands[i])? {
            cands.remove(i);
        } else {
            i += 1;
        }
    }
    cands.reverse();
    Ok(Primary {
        legendre,
        hamiltonian,
        constraints: cands,
    })
}
