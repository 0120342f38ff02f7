use std::sync::Arc;

use super::{Class, Constraint, Options, Origin, Primary};
use crate::error::{Error, Result};
use crate::groebner::GroebnerBasis;
use crate::linalg::{self, Certificate, Matrix};
use crate::mechanics::{multiplier_ring, poisson, total_hamiltonian, LocalizedExpression};
use crate::model::DegenerateModel;
use crate::poly::{Polynomial, Ring, Role};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Outcome {
    /// No primary constraints.
    Regular,
    /// Every constraint is conserved.
    Closed,
    /// The constraint ideal became trivial.
    Inconsistent,
}

/// A Lagrange multiplier and its value, when conservation fixes it.
#[derive(Clone, Debug)]
pub struct Multiplier {
    pub name: String,
    pub value: Option<LocalizedExpression>,
}

#[derive(Clone, Debug)]
pub struct Completion {
    pub constraints: Vec<Constraint>,
    /// Reduced basis of the ideal of all constraints.
    pub basis: GroebnerBasis,
    pub multiplier_ring: Arc<Ring>,
    pub total_hamiltonian: Polynomial,
    pub multipliers: Vec<Multiplier>,
    pub sweeps: usize,
    pub trace: Vec<String>,
    pub outcome: Outcome,
}

impl Completion {
    pub fn polynomials(&self) -> Vec<Polynomial> {
        self.constraints.iter().map(|c| c.poly.clone()).collect()
    }

    /// `H_T` with every determined multiplier substituted, over a common
    /// denominator.
    pub fn substituted_hamiltonian(&self) -> Result<LocalizedExpression> {
        let ring = &self.multiplier_ring;
        let us: Vec<usize> = (0..self.multipliers.len())
            .map(|k| ring.table().find(Role::Multiplier(k)).expect("multiplier"))
            .collect();
        let (vals, den) = common_denominator(&self.multipliers, ring);
        let (h0, hs) = self.total_hamiltonian.linear_parts(&us)?;
        let num = hs
            .iter()
            .zip(&vals)
            .fold(h0.mul(&den), |s, (h, v)| s.add(&h.mul(v)));
        Ok(LocalizedExpression { num, den }.simplify())
    }
}

/// Multiplier values scaled to a common denominator `D`: entry `k` is
/// `D * U_k` (free multipliers stay symbolic).
fn common_denominator(ms: &[Multiplier], ring: &Arc<Ring>) -> (Vec<Polynomial>, Polynomial) {
    let den = ms
        .iter()
        .filter_map(|m| m.value.as_ref())
        .fold(Polynomial::one(ring), |d, v| d.lcm(&v.den));
    let vals = ms
        .iter()
        .enumerate()
        .map(|(k, m)| match &m.value {
            Some(v) => v.num.mul(&den.exact_div(&v.den).expect("lcm divisible")),
            None => {
                let u = ring.table().find(Role::Multiplier(k)).expect("multiplier");
                Polynomial::var(ring, u).mul(&den)
            }
        })
        .collect();
    (vals, den)
}

struct Sweep {
    c0: Vec<Polynomial>,
    coeffs: Matrix,
}

fn restrict(f: &Polynomial, ring: &Arc<Ring>) -> Result<Polynomial> {
    f.embed(ring)
}

fn conservation(
    cons: &[Constraint],
    gb: &GroebnerBasis,
    ht: &Polynomial,
    mring: &Arc<Ring>,
    us: &[usize],
) -> Result<Sweep> {
    let ring = gb.ring();
    let lifted = gb.embed(mring)?;
    let mut c0 = Vec::new();
    let mut coeffs = Vec::new();
    for c in cons {
        let h = lifted.normal_form(&poisson(&c.poly.embed(mring)?, ht));
        let (a, cs) = h.linear_parts(us)?;
        c0.push(restrict(&a, ring)?);
        coeffs.push(cs.iter().map(|x| restrict(x, ring)).collect::<Result<Vec<_>>>()?);
    }
    Ok(Sweep { c0, coeffs })
}

fn transpose(m: &Matrix, ncols: usize, ring: &Arc<Ring>) -> Matrix {
    (0..ncols)
        .map(|j| m.iter().map(|r| r.get(j).cloned().unwrap_or_else(|| Polynomial::zero(ring))).collect())
        .collect()
}

/// Solves `sum_a c_ia U_a + c0_i = 0` for as many multipliers as possible.
fn solve_multipliers(
    sw: &Sweep,
    gb: &GroebnerBasis,
    mring: &Arc<Ring>,
    us: &[usize],
    cert: &mut Certificate,
) -> Result<Vec<Multiplier>> {
    let m = us.len();
    let aug: Matrix = sw
        .coeffs
        .iter()
        .zip(&sw.c0)
        .map(|(r, c)| r.iter().cloned().chain([c.clone()]).collect())
        .collect();
    let e = linalg::echelon(&aug, gb, cert)?;
    if e.pivots.contains(&m) {
        return Err(Error::Inconsistent("multiplier equations have no solution".into()));
    }
    let mut out: Vec<Multiplier> = us
        .iter()
        .map(|&u| Multiplier {
            name: mring.table().name(u).to_string(),
            value: None,
        })
        .collect();
    let lift = |x: &Polynomial| x.embed(mring);
    for (row, &p) in e.rows.iter().zip(&e.pivots) {
        let mut num = lift(&row[m])?;
        for j in (0..m).filter(|j| !e.pivots.contains(j)) {
            if !row[j].is_zero() {
                num = num.add(&lift(&row[j])?.mul(&Polynomial::var(mring, us[j])));
            }
        }
        out[p].value = Some(
            LocalizedExpression {
                num: num.neg(),
                den: lift(&row[p])?,
            }
            .simplify(),
        );
    }
    let (vals, den) = common_denominator(&out, mring);
    let lifted = gb.embed(mring)?;
    for (i, c) in sw.c0.iter().enumerate() {
        let mut s = lift(c)?.mul(&den);
        for (a, v) in sw.coeffs[i].iter().zip(&vals) {
            s = s.add(&lift(a)?.mul(v));
        }
        if !lifted.contains(&s) {
            return Err(Error::Invalid(format!(
                "constraint {} is not conserved after substituting the multipliers",
                i + 1
            )));
        }
    }
    Ok(out)
}

fn render_list(fs: &[Polynomial]) -> String {
    fs.iter().map(|f| f.to_string()).collect::<Vec<_>>().join(", ")
}

/// Iterates conservation of the constraints under `H_T` to a fixpoint.
pub fn complete_constraints(
    model: &DegenerateModel,
    primary: &Primary,
    options: &Options,
    cert: &mut Certificate,
) -> Result<Completion> {
    let ring = model.ring();
    let prim = &primary.constraints;
    let mring = multiplier_ring(ring, prim.len())?;
    let ht = total_hamiltonian(&primary.hamiltonian, prim, &mring)?;
    let us: Vec<usize> = (0..prim.len())
        .map(|k| mring.table().find(Role::Multiplier(k)).expect("multiplier"))
        .collect();
    let mut cons: Vec<Constraint> = prim
        .iter()
        .map(|p| Constraint {
            poly: p.clone(),
            generation: 1,
            class: Class::Unresolved,
            origin: Origin::Legendre,
        })
        .collect();
    let mut gb = GroebnerBasis::compute(ring, prim, &options.budget)?;
    let mut trace = Vec::new();
    let done = |cons, gb, outcome, sweeps, trace, multipliers| Completion {
        constraints: cons,
        basis: gb,
        multiplier_ring: mring.clone(),
        total_hamiltonian: ht.clone(),
        multipliers,
        sweeps,
        trace,
        outcome,
    };
    if prim.is_empty() {
        trace.push("no primary constraints: the system is regular".to_string());
        return Ok(done(cons, gb, Outcome::Regular, 0, trace, Vec::new()));
    }
    trace.push(format!("primary constraints: {}", render_list(prim)));
    for sweep in 1..=options.max_iterations {
        let sw = conservation(&cons, &gb, &ht, &mring, &us)?;
        let at = transpose(&sw.coeffs, us.len(), ring);
        let mut scratch = cert.clone();
        let left = linalg::kernel(&at, &gb, &mut scratch)?;
        let mut admitted = Vec::new();
        let n = cons.len();
        for y in &left {
            let cand = y
                .iter()
                .zip(&sw.c0)
                .fold(Polynomial::zero(ring), |s, (a, c)| s.add(&a.mul(c)));
            let f = gb.normal_form(&cand);
            if f.is_zero() {
                continue;
            }
            let parents: Vec<usize> = (0..n)
                .filter(|&i| !y[i].is_zero() && !sw.c0[i].is_zero())
                .collect();
            if options.member(&gb, &f)? {
                trace.push(format!("sweep {sweep}: {f} is implied by the constraints"));
                continue;
            }
            let f = f.monic();
            let generation = 1 + parents.iter().map(|&i| cons[i].generation).max().unwrap_or(1);
            gb = gb.extend(std::slice::from_ref(&f), &options.budget)?;
            admitted.push(f.clone());
            cons.push(Constraint {
                poly: f,
                generation,
                class: Class::Unresolved,
                origin: Origin::Consistency { sweep, parents },
            });
            if gb.is_trivial() {
                trace.push(format!(
                    "sweep {sweep}: conservation demands {}; the constraint ideal is trivial",
                    render_list(&admitted)
                ));
                return Ok(done(cons, gb, Outcome::Inconsistent, sweep, trace, Vec::new()));
            }
        }
        if !admitted.is_empty() {
            trace.push(format!("sweep {sweep}: new constraints {}", render_list(&admitted)));
            continue;
        }
        let multipliers = solve_multipliers(&sw, &gb, &mring, &us, cert)?;
        let fixed = multipliers.iter().filter(|m| m.value.is_some()).count();
        trace.push(format!(
            "sweep {sweep}: fixpoint, {fixed} of {} multipliers determined",
            us.len()
        ));
        return Ok(done(cons, gb, Outcome::Closed, sweep, trace, multipliers));
    }
    Err(Error::ResourceLimit(format!(
        "no fixpoint after {} consistency sweeps",
        options.max_iterations
    )))
}
