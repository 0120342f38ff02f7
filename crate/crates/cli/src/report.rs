use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use dirac_core::analysis::{Analysis, Class, Origin, Outcome};
use dirac_core::error::Result;
use dirac_core::linalg::Justification;

pub const CONVENTION: &str =
    "{f,g} = sum_i (df/dq_i dg/dp_i - df/dp_i dg/dq_i); df/dt = {f,H}; p_x is the momentum of x";

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstraintEntry {
    pub polynomial: String,
    pub generation: usize,
    pub class: String,
    pub origin: String,
    /// 1-based indices of the constraints whose conservation produced it.
    #[serde(default, skip_serializing_if = "Vec::is_empty")]
    pub parents: Vec<usize>,
}

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Counts {
    /// All constraints.
    pub k: usize,
    /// First-class.
    pub s: usize,
    /// Second-class.
    pub r: usize,
    /// First-class constraints in the primary ideal.
    pub k1: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MultiplierEntry {
    pub name: String,
    /// `None` when conservation leaves it arbitrary.
    pub value: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct StructureEntry {
    pub left: usize,
    pub right: usize,
    pub coefficients: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Assumption {
    pub polynomial: String,
    pub justification: String,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GeneratorEntry {
    pub generator: String,
    pub solved: Vec<MultiplierEntry>,
    pub free: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnalysisReport {
    pub model: String,
    pub convention: String,
    pub stage: String,
    pub outcome: String,
    pub hessian_rank: usize,
    pub canonical_hamiltonian: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub total_hamiltonian: Option<String>,
    pub constraints: Vec<ConstraintEntry>,
    pub counts: Counts,
    pub multipliers: Vec<MultiplierEntry>,
    pub first_class: Vec<String>,
    pub second_class: Vec<String>,
    pub rho: Vec<Vec<String>>,
    pub varrho: Vec<StructureEntry>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub generator: Option<GeneratorEntry>,
    pub genericity_assumptions: Vec<Assumption>,
    pub trace: Vec<String>,
    pub warnings: Vec<String>,
    /// Microseconds per stage; only present when requested.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub timings: Option<BTreeMap<String, u64>>,
}

fn strings<T: ToString>(xs: &[T]) -> Vec<String> {
    xs.iter().map(T::to_string).collect()
}

impl AnalysisReport {
    pub fn new(a: &Analysis, timings: bool) -> Result<Self> {
        let outcome = match a.completion.as_ref().map(|c| c.outcome) {
            None => "partial",
            Some(Outcome::Regular) => "regular",
            Some(Outcome::Closed) => "closed",
            Some(Outcome::Inconsistent) => "inconsistent",
        };
        let constraints = a
            .constraints()
            .iter()
            .map(|c| {
                let (origin, parents) = match &c.origin {
                    Origin::Legendre => ("legendre".to_string(), Vec::new()),
                    Origin::Consistency { sweep, parents } => {
                        (format!("sweep {sweep}"), parents.iter().map(|i| i + 1).collect())
                    }
                };
                let class = match (&a.separation, c.class) {
                    (None, _) => "unknown",
                    (_, Class::First) => "first",
                    (_, Class::Second) => "second",
                    (_, Class::Unresolved) => "mixed",
                };
                ConstraintEntry {
                    polynomial: c.poly.to_string(),
                    generation: c.generation,
                    class: class.to_string(),
                    origin,
                    parents,
                }
            })
            .collect::<Vec<_>>();
        let mut counts = Counts {
            k: constraints.len(),
            ..Counts::default()
        };
        let (mut multipliers, mut trace, mut total_hamiltonian) = (Vec::new(), Vec::new(), None);
        if let Some(c) = &a.completion {
            multipliers = c
                .multipliers
                .iter()
                .map(|m| MultiplierEntry {
                    name: m.name.clone(),
                    value: m.value.as_ref().map(|v| v.to_string()),
                })
                .collect();
            trace = c.trace.clone();
            if c.outcome == Outcome::Closed {
                total_hamiltonian = Some(c.substituted_hamiltonian()?.to_string());
            }
        }
        let (mut first_class, mut second_class) = (Vec::new(), Vec::new());
        if let Some(s) = &a.separation {
            counts.s = s.first_class.len();
            counts.r = s.second_class.len();
            counts.k1 = s.primary_first;
            first_class = strings(&s.first_class);
            second_class = strings(&s.second_class);
        }
        let (mut rho, mut varrho) = (Vec::new(), Vec::new());
        if let Some(alg) = &a.algebra {
            rho = alg.rho.iter().map(|row| strings(row)).collect();
            varrho = alg
                .varrho
                .iter()
                .map(|e| StructureEntry {
                    left: e.left + 1,
                    right: e.right + 1,
                    coefficients: strings(&e.coefficients),
                })
                .collect();
        }
        let generator = a.generator.as_ref().map(|g| GeneratorEntry {
            generator: g.generator.to_string(),
            solved: g
                .solved
                .iter()
                .enumerate()
                .filter_map(|(b, s)| {
                    s.as_ref().map(|v| MultiplierEntry {
                        name: format!("eps1_{}", b + 1),
                        value: Some(v.to_string()),
                    })
                })
                .collect(),
            free: g.free_symbols(),
        });
        let genericity_assumptions = a
            .certificate
            .entries()
            .iter()
            .map(|e| Assumption {
                polynomial: e.poly.to_string(),
                justification: match e.justification {
                    Justification::Parameter => "declared parameter",
                    Justification::Generic => "generic point",
                }
                .to_string(),
            })
            .collect();
        let timings = timings.then(|| {
            a.timings
                .iter()
                .map(|(s, d)| (s.name().to_string(), d.as_micros() as u64))
                .collect()
        });
        Ok(AnalysisReport {
            model: a.model.name.clone(),
            convention: CONVENTION.to_string(),
            stage: a.stage.name().to_string(),
            outcome: outcome.to_string(),
            hessian_rank: a.hessian_rank,
            canonical_hamiltonian: a.primary.hamiltonian.to_string(),
            total_hamiltonian,
            constraints,
            counts,
            multipliers,
            first_class,
            second_class,
            rho,
            varrho,
            generator,
            genericity_assumptions,
            trace,
            warnings: a.warnings.clone(),
            timings,
        })
    }

    pub fn to_json(&self) -> String {
        let mut s = serde_json::to_string_pretty(self).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let w = &mut out;
        let _ = writeln!(w, "model: {}", self.model);
        let _ = writeln!(w, "convention: {}", self.convention);
        let _ = writeln!(w, "velocity Hessian rank: {}", self.hessian_rank);
        let _ = writeln!(w, "H_C = {}", self.canonical_hamiltonian);
        if self.outcome == "regular" {
            let _ = writeln!(w, "regular system: no constraints");
        }
        if !self.constraints.is_empty() {
            let _ = writeln!(w, "constraints:");
            for (i, c) in self.constraints.iter().enumerate() {
                let _ = writeln!(
                    w,
                    "  [{}] gen {} {:<7} {}",
                    i + 1,
                    c.generation,
                    c.class,
                    c.polynomial
                );
            }
        }
        if !self.multipliers.is_empty() {
            let _ = writeln!(w, "multipliers:");
            for m in &self.multipliers {
                let v = m.value.as_deref().unwrap_or("arbitrary");
                let _ = writeln!(w, "  {} = {v}", m.name);
            }
        }
        if let Some(h) = &self.total_hamiltonian {
            let _ = writeln!(w, "H_T = {h}");
        }
        if !self.first_class.is_empty() || !self.second_class.is_empty() {
            let c = &self.counts;
            let _ = writeln!(w, "counts: k = {}, s = {}, r = {}, k1 = {}", c.k, c.s, c.r, c.k1);
            for f in &self.first_class {
                let _ = writeln!(w, "  first  {f}");
            }
            for f in &self.second_class {
                let _ = writeln!(w, "  second {f}");
            }
        }
        if !self.rho.is_empty() {
            let _ = writeln!(w, "rho:");
            for (i, row) in self.rho.iter().enumerate() {
                let _ = writeln!(w, "  {}: [{}]", i + 1, row.join(", "));
            }
        }
        for e in &self.varrho {
            let _ = writeln!(
                w,
                "varrho {} {}: [{}]",
                e.left,
                e.right,
                e.coefficients.join(", ")
            );
        }
        if let Some(g) = &self.generator {
            let _ = writeln!(w, "G = {}", g.generator);
            for s in &g.solved {
                let _ = writeln!(w, "  {} = {}", s.name, s.value.as_deref().unwrap_or(""));
            }
            if !g.free.is_empty() {
                let _ = writeln!(w, "  free: {}", g.free.join(", "));
            }
        }
        if !self.genericity_assumptions.is_empty() {
            let _ = writeln!(w, "assumed nonzero:");
            for a in &self.genericity_assumptions {
                let _ = writeln!(w, "  {} ({})", a.polynomial, a.justification);
            }
        }
        if !self.trace.is_empty() {
            let _ = writeln!(w, "trace:");
            for t in &self.trace {
                let _ = writeln!(w, "  {t}");
            }
        }
        for x in &self.warnings {
            let _ = writeln!(w, "warning: {x}");
        }
        if let Some(t) = &self.timings {
            for (stage, us) in t {
                let _ = writeln!(w, "time {stage}: {} ms", us / 1000);
            }
        }
        out
    }
}
