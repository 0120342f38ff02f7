use std::sync::Arc;

use super::Separation;
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::{self, Certificate, Matrix};
use crate::mechanics::LocalizedExpression;
use crate::poly::{BlockKind, Polynomial, Ring, Role};

/// `G = sum_b eps1_b phi_b + sum_g eps2_g phi_g` with the `eps1` fixed by
/// conservation where possible.
#[derive(Clone, Debug)]
pub struct GaugeGenerator {
    /// Phase space extended by the gauge symbols and their derivatives.
    pub ring: Arc<Ring>,
    pub primary_first: usize,
    /// Values of `eps1_b`; `None` for the ones left free.
    pub solved: Vec<Option<LocalizedExpression>>,
    pub generator: LocalizedExpression,
}

impl GaugeGenerator {
    pub fn free_symbols(&self) -> Vec<String> {
        self.solved
            .iter()
            .enumerate()
            .filter(|(_, s)| s.is_none())
            .map(|(b, _)| gauge_name(1, b, 0))
            .collect()
    }
}

/// `eps<family>_<index>`, wrapped in `dot(...)` or `dot2(...)` for derivatives.
pub fn gauge_name(family: u8, index: usize, order: u8) -> String {
    let base = format!("eps{family}_{}", index + 1);
    match order {
        0 => base,
        1 => format!("dot({base})"),
        k => format!("dot{k}({base})"),
    }
}

fn gauge_ring(ring: &Arc<Ring>, k1: usize, k2: usize) -> Result<Arc<Ring>> {
    let mut vars = Vec::new();
    for (family, count) in [(1u8, k1), (2u8, k2)] {
        for index in 0..count {
            for order in 0..3u8 {
                vars.push((gauge_name(family, index, order), Role::Gauge { family, index, order }));
            }
        }
    }
    if vars.is_empty() {
        return Ok(ring.clone());
    }
    ring.extend(&vars, BlockKind::DegRevLex)
}

fn symbol(ring: &Arc<Ring>, family: u8, index: usize, order: u8) -> Polynomial {
    let i = ring
        .table()
        .find(Role::Gauge { family, index, order })
        .expect("gauge symbol");
    Polynomial::var(ring, i)
}

/// Formal time derivative acting on the gauge symbols only.
pub fn time_derivative(f: &Polynomial) -> Result<Polynomial> {
    let ring = f.ring();
    let t = ring.table();
    let mut out = Polynomial::zero(ring);
    for v in f.support() {
        if !matches!(t.role(v), Role::Gauge { .. }) {
            continue;
        }
        let d = t
            .derivative_of(v)
            .ok_or_else(|| Error::Invalid(format!("no derivative symbol for {}", t.name(v))))?;
        out = out.add(&f.diff(v).mul(&Polynomial::var(ring, d)));
    }
    Ok(out)
}

/// Solves `dot(eps2_g) + eps1_b rho_bg + eps2_d rho_dg = 0` for the `eps1`
/// and assembles `G`; conservation modulo the primary surface is verified.
pub fn build_generator(
    sep: &Separation,
    rho: &[Vec<LocalizedExpression>],
    hc: &Polynomial,
    cert: &mut Certificate,
) -> Result<GaugeGenerator> {
    let k1 = sep.primary_first;
    let k2 = sep.first_class.len() - k1;
    let ring = gauge_ring(sep.constraint_basis.ring(), k1, k2)?;
    let lift = |x: &Polynomial| x.embed(&ring);
    let base = sep.reduction_basis.embed(&ring)?;
    let mut sys: Matrix = Vec::new();
    for g in 0..k2 {
        let den = rho.iter().fold(Polynomial::one(&ring), |d, row| {
            d.lcm(&row[g].den.embed(&ring).expect("gauge ring extends phase space"))
        });
        let scaled = |e: &LocalizedExpression| -> Result<Polynomial> {
            Ok(lift(&e.num)?.mul(&den.exact_div(&lift(&e.den)?).expect("lcm divisible")))
        };
        let mut row = Vec::new();
        for r in rho.iter().take(k1) {
            row.push(scaled(&r[g])?);
        }
        let mut b = symbol(&ring, 2, g, 1).mul(&den);
        for (d, r) in rho.iter().skip(k1).enumerate() {
            b = b.add(&symbol(&ring, 2, d, 0).mul(&scaled(&r[g])?));
        }
        row.push(b);
        sys.push(row);
    }
    let mut solved: Vec<Option<LocalizedExpression>> = vec![None; k1];
    if k2 > 0 {
        let e = linalg::echelon(&sys, &base, cert)?;
        if let Some(k) = e.pivots.iter().position(|&p| p == k1) {
            return Err(Error::Inconsistent(format!(
                "gauge equations have no solution; residual {}",
                e.rows[k][k1]
            )));
        }
        for (row, &p) in e.rows.iter().zip(&e.pivots) {
            let mut num = row[k1].clone();
            for j in (0..k1).filter(|j| !e.pivots.contains(j)) {
                num = num.add(&row[j].mul(&symbol(&ring, 1, j, 0)));
            }
            solved[p] = Some(
                LocalizedExpression {
                    num: base.normal_form(&num.neg()),
                    den: row[p].clone(),
                }
                .simplify(),
            );
        }
    }
    let fc: Vec<Polynomial> = sep.first_class.iter().map(lift).collect::<Result<_>>()?;
    let den = solved
        .iter()
        .flatten()
        .fold(Polynomial::one(&ring), |d, s| d.lcm(&s.den));
    let mut num = Polynomial::zero(&ring);
    for (b, s) in solved.iter().enumerate() {
        let c = match s {
            Some(v) => v.num.mul(&den.exact_div(&v.den).expect("lcm divisible")),
            None => symbol(&ring, 1, b, 0).mul(&den),
        };
        num = num.add(&c.mul(&fc[b]));
    }
    for g in 0..k2 {
        num = num.add(&symbol(&ring, 2, g, 0).mul(&den).mul(&fc[k1 + g]));
    }
    let generator = LocalizedExpression { num, den }.simplify();
    check_conservation(sep, &generator, &lift(hc)?, &base)?;
    Ok(GaugeGenerator {
        ring,
        primary_first: k1,
        solved,
        generator,
    })
}

/// `dG/dt = dG/dt|_explicit + {G, H_C}_D` vanishes modulo `base`.
fn check_conservation(
    sep: &Separation,
    g: &LocalizedExpression,
    hc: &Polynomial,
    base: &GroebnerBasis,
) -> Result<()> {
    let dn = time_derivative(&g.num)?;
    let e = sep.dirac.bracket_mod(&g.num, hc, base)?;
    // d(N/D)/dt = ((dN/dt) D - N dD/dt) / D^2 with dD/dt = {D, H_C}_D.
    let mut total = dn.mul(&e.den).add(&e.num).mul(&g.den);
    if !g.den.is_constant() {
        let d = sep.dirac.bracket_mod(&g.den, hc, base)?;
        total = total.mul(&d.den).sub(&g.num.mul(&d.num).mul(&e.den));
    }
    if base.contains(&total) {
        Ok(())
    } else {
        Err(Error::Invalid(format!(
            "generator is not conserved on the primary surface: {}",
            base.normal_form(&total)
        )))
    }
}

/// `delta f = {G, f}_D`, reduced on the constraint surface.
pub fn gauge_variation(
    gen: &GaugeGenerator,
    sep: &Separation,
    f: &Polynomial,
) -> Result<LocalizedExpression> {
    let ring = &gen.ring;
    let weak = sep.constraint_basis.embed(ring)?;
    let e = sep.dirac.bracket_mod(&gen.generator.num, &f.embed(ring)?, &weak)?;
    Ok(LocalizedExpression {
        num: weak.normal_form(&e.num),
        den: e.den.mul(&gen.generator.den),
    }
    .simplify())
}
