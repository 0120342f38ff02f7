use super::{Class, Completion, Options};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::{self, Certificate, Matrix, Vector};
use crate::mechanics::{poisson, DiracBracket};
use crate::poly::Polynomial;

#[derive(Clone, Debug)]
pub struct Separation {
    /// `M_ab = NF({phi_a, phi_b})`.
    pub matrix: Matrix,
    /// Primary first-class constraints first, then the rest.
    pub first_class: Vec<Polynomial>,
    pub second_class: Vec<Polynomial>,
    /// Number of first-class constraints in the primary ideal (`k1`).
    pub primary_first: usize,
    pub dirac: DiracBracket,
    /// Basis of the full constraint ideal.
    pub constraint_basis: GroebnerBasis,
    /// Basis of the primary ideal plus the second-class constraints.
    pub reduction_basis: GroebnerBasis,
    pub warnings: Vec<String>,
}

impl Separation {
    pub fn secondary_first(&self) -> &[Polynomial] {
        &self.first_class[self.primary_first..]
    }
}

fn combine(v: &Vector, fs: &[Polynomial]) -> Polynomial {
    v.iter()
        .zip(fs)
        .fold(Polynomial::zero(fs[0].ring()), |s, (a, f)| s.add(&a.mul(f)))
        .monic()
}

/// Splits the complete constraint set using the kernel of `M` and a
/// complement of it, and labels the original constraints.
pub fn separate_constraints(
    completion: &mut Completion,
    options: &Options,
    cert: &mut Certificate,
) -> Result<Separation> {
    let fs = completion.polynomials();
    let gb = completion.basis.clone();
    let ring = gb.ring().clone();
    let k = fs.len();
    let matrix: Matrix = fs
        .iter()
        .map(|a| fs.iter().map(|b| gb.normal_form(&poisson(a, b))).collect())
        .collect();
    let (ker, comp) = if k == 0 {
        (Vec::new(), Vec::new())
    } else {
        let ker = linalg::kernel(&matrix, &gb, cert)?;
        let comp = linalg::complement(&ker, k, &gb, cert)?;
        (ker, comp)
    };
    if (k - ker.len()) % 2 != 0 {
        return Err(Error::Invalid(format!(
            "bracket matrix has odd rank {}",
            k - ker.len()
        )));
    }
    let primaries: Vec<Polynomial> = completion
        .constraints
        .iter()
        .filter(|c| c.generation == 1)
        .map(|c| c.poly.clone())
        .collect();
    let pgb = GroebnerBasis::compute(&ring, &primaries, &options.budget)?;
    let mut first: Vec<Polynomial> = Vec::new();
    let mut later: Vec<Polynomial> = Vec::new();
    for v in &ker {
        let f = combine(v, &fs);
        if pgb.contains(&f) {
            first.push(f);
        } else {
            later.push(f);
        }
    }
    let primary_first = first.len();
    first.extend(later);
    let second: Vec<Polynomial> = comp.iter().map(|t| combine(t, &fs)).collect();

    for (i, psi) in first.iter().enumerate() {
        for f in &fs {
            if !gb.contains(&poisson(psi, f)) {
                return Err(Error::Invalid(format!(
                    "first-class constraint {} has a nonvanishing bracket with {f}",
                    i + 1
                )));
            }
        }
    }
    let dirac = DiracBracket::new(second.clone(), &gb, cert)?;
    let reduction_basis = pgb.extend(&second, &options.budget)?;

    for (i, (c, row)) in completion.constraints.iter_mut().zip(&matrix).enumerate() {
        c.class = if row.iter().all(|x| x.is_zero()) {
            Class::First
        } else if ker.iter().all(|v| v[i].is_zero()) {
            Class::Second
        } else {
            Class::Unresolved
        };
    }
    let mut warnings = Vec::new();
    for f in &first[primary_first..] {
        if pgb.radical_contains(f, &options.budget)? {
            warnings.push(format!(
                "secondary first-class constraint {f} vanishes on the primary surface"
            ));
        }
    }
    Ok(Separation {
        matrix,
        first_class: first,
        second_class: second,
        primary_first,
        dirac,
        constraint_basis: gb,
        reduction_basis,
        warnings,
    })
}
