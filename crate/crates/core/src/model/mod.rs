//! Model files and the validated [`DegenerateModel`].
//!
//! A model file is a list of `key = value` lines with `#` comments:
//!
//! ```text
//! name = "toy_gauge_chain"
//! coordinates = [q1, q2]
//! parameters = [g != 0]
//! lagrangian = "1/2*(dot(q1) - q2)^2"
//! ```
//!
//! Quoted values may span several lines.

mod parser;

use std::path::Path;
use std::sync::Arc;

pub use parser::{parse_expression, parse_expression_at};

use crate::error::{Error, Result};
use crate::poly::{BlockKind, MonomialOrder, Polynomial, Ring, Role, VariableTable};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Parameter {
    pub name: String,
    /// Declared `!= 0` in the model file.
    pub nonzero: bool,
}

/// A mechanical model with polynomial Lagrangian `L(q, dot(q))`.
///
/// The Lagrangian lives in the ring `[velocities | momenta, coordinates]`,
/// whose first block eliminates the velocities.
#[derive(Clone, Debug)]
pub struct DegenerateModel {
    pub name: String,
    pub coordinates: Vec<String>,
    pub parameters: Vec<Parameter>,
    pub lagrangian: Polynomial,
}

/// Name of the momentum conjugate to `q`.
pub fn momentum_name(q: &str) -> String {
    format!("p_{q}")
}

pub fn velocity_name(q: &str) -> String {
    format!("dot({q})")
}

fn is_ident(s: &str) -> bool {
    let mut c = s.chars();
    matches!(c.next(), Some(ch) if ch.is_ascii_alphabetic())
        && c.all(|ch| ch.is_ascii_alphanumeric() || ch == '_')
}

/// The phase-space ring of a model: velocities, then momenta and
/// coordinates with the given inner order.
pub fn phase_space_ring(coordinates: &[String], params: &[Parameter], inner: BlockKind) -> Result<Arc<Ring>> {
    let n = coordinates.len();
    let mut t = VariableTable::new();
    for (i, q) in coordinates.iter().enumerate() {
        t.push(velocity_name(q), Role::Velocity(i))?;
    }
    for (i, q) in coordinates.iter().enumerate() {
        t.push(momentum_name(q), Role::Momentum(i))?;
    }
    for (i, q) in coordinates.iter().enumerate() {
        t.push(q.clone(), Role::Coordinate(i))?;
    }
    let order = MonomialOrder::block(&[(n, BlockKind::DegRevLex), (2 * n, inner)]);
    Ring::new(t, order, params.iter().map(|p| p.name.clone()).collect())
}

impl DegenerateModel {
    pub fn ring(&self) -> &Arc<Ring> {
        self.lagrangian.ring()
    }

    pub fn n(&self) -> usize {
        self.coordinates.len()
    }

    /// The same model over a ring whose momentum/coordinate block uses `inner`.
    pub fn with_inner_order(&self, inner: BlockKind) -> Result<Self> {
        let ring = phase_space_ring(&self.coordinates, &self.parameters, inner)?;
        Ok(DegenerateModel {
            lagrangian: self.lagrangian.embed(&ring)?,
            ..self.clone()
        })
    }

    pub fn nonzero_params(&self) -> Vec<usize> {
        (0..self.parameters.len())
            .filter(|&i| self.parameters[i].nonzero)
            .collect()
    }
}

struct Entry {
    key: String,
    value: String,
    line: usize,
    column: usize,
}

fn parse_err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits the file into entries, honoring comments and multi-line quotes.
fn entries(text: &str) -> Result<Vec<Entry>> {
    let lines: Vec<&str> = text.lines().collect();
    let mut out = Vec::new();
    let mut i = 0;
    while i < lines.len() {
        let raw = lines[i];
        let lineno = i + 1;
        i += 1;
        let code = raw.split('#').next().unwrap_or("");
        if code.trim().is_empty() {
            continue;
        }
        let Some(eq) = raw.find('=') else {
            return Err(parse_err(lineno, 1, "expected `key = value`"));
        };
        let key = raw[..eq].trim().to_string();
        if !is_ident(&key) {
            return Err(parse_err(lineno, 1, format!("invalid key `{key}`")));
        }
        let after = &raw[eq + 1..];
        let lead = after.len() - after.trim_start().len();
        let column = eq + 2 + lead;
        let rest = after.trim_start();
        if let Some(body) = rest.strip_prefix('"') {
            let mut value = String::new();
            let mut chunk = body.to_string();
            loop {
                if let Some(end) = chunk.find('"') {
                    value.push_str(&chunk[..end]);
                    let trailing = chunk[end + 1..].split('#').next().unwrap_or("");
                    if !trailing.trim().is_empty() {
                        return Err(parse_err(i, 1, "unexpected text after closing quote"));
                    }
                    break;
                }
                value.push_str(&chunk);
                value.push('\n');
                if i >= lines.len() {
                    return Err(parse_err(lineno, column, "unterminated string"));
                }
                chunk = lines[i].to_string();
                i += 1;
            }
            out.push(Entry {
                key,
                value,
                line: lineno,
                column: column + 1,
            });
        } else {
            let value = rest.split('#').next().unwrap_or("").trim_end().to_string();
            out.push(Entry {
                key,
                value,
                line: lineno,
                column,
            });
        }
    }
    Ok(out)
}

fn parse_list(e: &Entry) -> Result<Vec<String>> {
    let v = e.value.trim();
    let inner = v
        .strip_prefix('[')
        .and_then(|s| s.strip_suffix(']'))
        .ok_or_else(|| parse_err(e.line, e.column, "expected a bracketed list"))?;
    if inner.trim().is_empty() {
        return Ok(Vec::new());
    }
    Ok(inner.split(',').map(|s| s.trim().to_string()).collect())
}

/// Parses model source text; `inner` selects the momentum/coordinate order.
pub fn parse_model(text: &str, inner: BlockKind) -> Result<DegenerateModel> {
    let mut name = None;
    let mut coords: Option<(Vec<String>, usize)> = None;
    let mut params: Vec<Parameter> = Vec::new();
    let mut lagr: Option<Entry> = None;
    for e in entries(text)? {
        match e.key.as_str() {
            "name" => {
                if !e.value.is_empty() && e.value.contains('\n') {
                    return Err(parse_err(e.line, e.column, "name must be a single line"));
                }
                name = Some(e.value.clone());
            }
            "coordinates" => {
                let list = parse_list(&e)?;
                for q in &list {
                    if !is_ident(q) || q == "dot" {
                        return Err(parse_err(e.line, e.column, format!("invalid coordinate `{q}`")));
                    }
                }
                coords = Some((list, e.line));
            }
            "parameters" => {
                for item in parse_list(&e)? {
                    let (pname, nonzero) = match item.split_once("!=") {
                        Some((a, b)) if b.trim() == "0" => (a.trim().to_string(), true),
                        Some(_) => {
                            return Err(parse_err(e.line, e.column, format!("unsupported assumption `{item}`")))
                        }
                        None => (item.clone(), false),
                    };
                    if !is_ident(&pname) || pname == "dot" {
                        return Err(parse_err(e.line, e.column, format!("invalid parameter `{pname}`")));
                    }
                    if params.iter().any(|p| p.name == pname) {
                        return Err(Error::DuplicateSymbol(pname));
                    }
                    params.push(Parameter { name: pname, nonzero });
                }
            }
            "lagrangian" => lagr = Some(e),
            other => return Err(parse_err(e.line, 1, format!("unknown key `{other}`"))),
        }
    }
    let name = name.ok_or_else(|| Error::Invalid("model file lacks `name`".into()))?;
    let (coordinates, _) = coords.ok_or_else(|| Error::Invalid("model file lacks `coordinates`".into()))?;
    if coordinates.is_empty() {
        return Err(Error::Invalid("model declares no coordinates".into()));
    }
    for p in &params {
        if coordinates.contains(&p.name) {
            return Err(Error::DuplicateSymbol(p.name.clone()));
        }
    }
    let lagr = lagr.ok_or_else(|| Error::Invalid("model file lacks `lagrangian`".into()))?;
    let ring = phase_space_ring(&coordinates, &params, inner)?;
    let lagrangian = parse_expression_at(&lagr.value, &ring, lagr.line, lagr.column)?;
    let ok = lagrangian.uses_only(|v| {
        matches!(ring.table().role(v), Role::Velocity(_) | Role::Coordinate(_))
    });
    if !ok {
        return Err(Error::Invalid(
            "the Lagrangian may depend only on coordinates and velocities".into(),
        ));
    }
    Ok(DegenerateModel {
        name,
        coordinates,
        parameters: params,
        lagrangian,
    })
}

pub fn load_model(path: &Path) -> Result<DegenerateModel> {
    let text = std::fs::read_to_string(path)?;
    parse_model(&text, BlockKind::DegRevLex)
}
