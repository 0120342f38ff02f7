use super::{Options, Separation};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::mechanics::{poisson, LocalizedExpression};
use crate::poly::Polynomial;

/// `{phi_a, phi_b}_D = sum_c coefficients[c] phi_c` over the first-class set.
#[derive(Clone, Debug)]
pub struct StructureEntry {
    pub left: usize,
    pub right: usize,
    pub coefficients: Vec<LocalizedExpression>,
}

#[derive(Clone, Debug, Default)]
pub struct Algebra {
    /// `rho[mu][g]`: coefficient of the `g`-th secondary first-class
    /// constraint in `{phi_mu, H_C}_D`, on the primary surface.
    pub rho: Vec<Vec<LocalizedExpression>>,
    /// Nonvanishing structure functions of the first-class algebra.
    pub varrho: Vec<StructureEntry>,
    pub warnings: Vec<String>,
}

/// Coefficients of `num` in terms of the tracked generators of `rel`,
/// reduced modulo `base`; `None` when `num` is not in the ideal.
fn express(
    num: &Polynomial,
    den: &Polynomial,
    rel: &GroebnerBasis,
    base: &GroebnerBasis,
    ngens: usize,
) -> Option<Vec<LocalizedExpression>> {
    let (rem, q) = rel.normal_form_tracked(num);
    if !rem.is_zero() {
        return None;
    }
    let cof = rel.cofactors().expect("tracked basis");
    let ring = num.ring();
    Some(
        (0..ngens)
            .map(|g| {
                let s = q
                    .iter()
                    .zip(cof)
                    .fold(Polynomial::zero(ring), |s, (qi, row)| s.add(&qi.mul(&row[g])));
                LocalizedExpression {
                    num: base.normal_form(&s),
                    den: den.clone(),
                }
                .simplify()
            })
            .collect(),
    )
}

/// `{phi_mu, H_C}_D = rho_mu,g phi_g`, computed modulo the primary and
/// second-class constraints, where only the secondary first-class
/// constraints survive.
pub fn rho_coefficients(
    sep: &Separation,
    hc: &Polynomial,
    options: &Options,
) -> Result<Vec<Vec<LocalizedExpression>>> {
    let sec = sep.secondary_first();
    let base = &sep.reduction_basis;
    let rel = GroebnerBasis::compute_relative(base, sec, &options.budget)?;
    let mut rho = Vec::new();
    for (mu, phi) in sep.first_class.iter().enumerate() {
        let e = sep.dirac.bracket_mod(phi, hc, base)?;
        let row = express(&e.num, &e.den, &rel, base, sec.len()).ok_or_else(|| {
            Error::Invalid(format!(
                "{{phi_{}, H_C}} is not a combination of first-class constraints; the constraint set is incomplete",
                mu + 1
            ))
        })?;
        rho.push(row);
    }
    Ok(rho)
}

/// Structure functions of the first-class constraints. Their Dirac and
/// Poisson brackets differ by terms quadratic in the constraints, so the
/// Poisson bracket is expanded exactly in the first-class generators;
/// brackets outside that ideal are reported as warnings.
pub fn constraint_algebra(sep: &Separation, options: &Options) -> Result<Algebra> {
    let fc = &sep.first_class;
    let mut alg = Algebra::default();
    if fc.is_empty() {
        return Ok(alg);
    }
    let ring = fc[0].ring();
    let free = GroebnerBasis::compute(ring, &[], &options.budget)?;
    let ext = GroebnerBasis::compute_extended(ring, fc, &options.budget)?;
    let one = Polynomial::one(ring);
    for a in 0..fc.len() {
        for b in a + 1..fc.len() {
            let num = poisson(&fc[a], &fc[b]);
            if num.is_zero() {
                continue;
            }
            match express(&num, &one, &ext, &free, fc.len()) {
                Some(coefficients) => alg.varrho.push(StructureEntry {
                    left: a,
                    right: b,
                    coefficients,
                }),
                None => alg.warnings.push(format!(
                    "bracket of first-class constraints {} and {} has no polynomial structure functions",
                    a + 1,
                    b + 1
                )),
            }
        }
    }
    Ok(alg)
}
