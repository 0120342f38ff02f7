//! The constraint analysis pipeline: primary constraints, consistency
//! completion, separation into first and second class, the constraint
//! algebra and the generator of gauge transformations.

mod algebra;
mod completion;
mod generator;
mod primary;
mod separation;

use std::time::{Duration, Instant};

pub use algebra::{constraint_algebra, rho_coefficients, Algebra, StructureEntry};
pub use completion::{complete_constraints, Completion, Multiplier, Outcome};
pub use generator::{build_generator, gauge_variation, time_derivative, GaugeGenerator};
pub use primary::{primary_constraints, Primary};
pub use separation::{separate_constraints, Separation};

use crate::error::Result;
use crate::groebner::{Budget, GroebnerBasis};
use crate::linalg::{self, Certificate};
use crate::mechanics::hessian;
use crate::model::DegenerateModel;
use crate::poly::Polynomial;

/// How far the pipeline runs.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Stage {
    Primary,
    Complete,
    Separate,
    Generator,
}

impl Stage {
    pub fn name(self) -> &'static str {
        match self {
            Stage::Primary => "primary",
            Stage::Complete => "complete",
            Stage::Separate => "separate",
            Stage::Generator => "generator",
        }
    }
}

/// Which ideal decides weak equality in membership tests.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum WeakEquality {
    #[default]
    Ideal,
    Radical,
}

#[derive(Clone, Debug)]
pub struct Options {
    pub weak: WeakEquality,
    pub max_iterations: usize,
    pub budget: Budget,
}

impl Default for Options {
    fn default() -> Self {
        Options {
            weak: WeakEquality::Ideal,
            max_iterations: 32,
            budget: Budget::default(),
        }
    }
}

impl Options {
    /// Membership of `f` in the ideal of `gb`, or in its radical.
    pub fn member(&self, gb: &GroebnerBasis, f: &Polynomial) -> Result<bool> {
        match self.weak {
            WeakEquality::Ideal => Ok(gb.contains(f)),
            WeakEquality::Radical => gb.radical_contains(f, &self.budget),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Class {
    First,
    Second,
    /// Neither: only a combination with other constraints separates it.
    Unresolved,
}

/// Where a constraint came from.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Origin {
    Legendre,
    /// Conservation of the listed constraints during the given sweep.
    Consistency { sweep: usize, parents: Vec<usize> },
}

#[derive(Clone, Debug)]
pub struct Constraint {
    pub poly: Polynomial,
    /// 1 for primary, 2 for secondary, and so on.
    pub generation: usize,
    pub class: Class,
    pub origin: Origin,
}

/// Everything computed for a model, up to the requested stage.
#[derive(Clone, Debug)]
pub struct Analysis {
    pub model: DegenerateModel,
    pub stage: Stage,
    pub hessian_rank: usize,
    pub primary: Primary,
    pub completion: Option<Completion>,
    pub separation: Option<Separation>,
    pub algebra: Option<Algebra>,
    pub generator: Option<GaugeGenerator>,
    pub certificate: Certificate,
    pub warnings: Vec<String>,
    pub timings: Vec<(Stage, Duration)>,
}

impl Analysis {
    /// Constraints after completion, or the primaries alone.
    pub fn constraints(&self) -> Vec<Constraint> {
        match &self.completion {
            Some(c) => c.constraints.clone(),
            None => self
                .primary
                .constraints
                .iter()
                .map(|p| Constraint {
                    poly: p.clone(),
                    generation: 1,
                    class: Class::Unresolved,
                    origin: Origin::Legendre,
                })
                .collect(),
        }
    }

    pub fn is_inconsistent(&self) -> bool {
        matches!(&self.completion, Some(c) if c.outcome == Outcome::Inconsistent)
    }
}

fn timed<T>(timings: &mut Vec<(Stage, Duration)>, stage: Stage, f: impl FnOnce() -> Result<T>) -> Result<T> {
    let t = Instant::now();
    let out = f()?;
    timings.push((stage, t.elapsed()));
    Ok(out)
}

/// Runs the pipeline on `model` through `stage`. An inconsistent model is
/// not an error: the analysis stops after completion with that outcome.
pub fn analyze(model: &DegenerateModel, options: &Options, stage: Stage) -> Result<Analysis> {
    let mut timings = Vec::new();
    let mut cert = Certificate::new(model.nonzero_params());
    let mut warnings = Vec::new();

    let primary = timed(&mut timings, Stage::Primary, || primary_constraints(model, options))?;
    let free = GroebnerBasis::compute(model.ring(), &[], &options.budget)?;
    let mut hcert = Certificate::new(model.nonzero_params());
    let hessian_rank = linalg::rank(&hessian(model), &free, &mut hcert)?;
    let expected = model.n() - hessian_rank;
    if expected != primary.constraints.len() {
        warnings.push(format!(
            "{} primary constraints but the velocity Hessian has corank {expected}",
            primary.constraints.len()
        ));
    }
    let mut analysis = Analysis {
        model: model.clone(),
        stage,
        hessian_rank,
        primary,
        completion: None,
        separation: None,
        algebra: None,
        generator: None,
        certificate: cert.clone(),
        warnings,
        timings: Vec::new(),
    };
    if stage >= Stage::Complete {
        let c = timed(&mut timings, Stage::Complete, || {
            complete_constraints(model, &analysis.primary, options, &mut cert)
        })?;
        let proceed = c.outcome == Outcome::Closed;
        analysis.completion = Some(c);
        if stage >= Stage::Separate && proceed {
            let completion = analysis.completion.as_mut().expect("completed");
            let s = timed(&mut timings, Stage::Separate, || {
                separate_constraints(completion, options, &mut cert)
            })?;
            if stage >= Stage::Generator {
                let hc = &analysis.primary.hamiltonian;
                let (alg, gen) = timed(&mut timings, Stage::Generator, || {
                    let mut alg = constraint_algebra(&s, options)?;
                    alg.rho = rho_coefficients(&s, hc, options)?;
                    let gen = build_generator(&s, &alg.rho, hc, &mut cert)?;
                    Ok((alg, gen))
                })?;
                analysis.warnings.extend(alg.warnings.iter().cloned());
                analysis.algebra = Some(alg);
                analysis.generator = Some(gen);
            }
            analysis.warnings.extend(s.warnings.iter().cloned());
            analysis.separation = Some(s);
        }
    }
    analysis.certificate = cert;
    analysis.timings = timings;
    Ok(analysis)
}

#[cfg(test)]
mod tests;
