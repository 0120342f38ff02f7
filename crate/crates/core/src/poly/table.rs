use std::collections::HashMap;

use crate::error::{Error, Result};

/// What a ring variable stands for in the mechanics.
///
/// Indices refer to the model's coordinate list (for velocities, momenta and
/// coordinates) or to the position among multipliers / gauge functions.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Role {
    Velocity(usize),
    Momentum(usize),
    Coordinate(usize),
    Multiplier(usize),
    /// Gauge function `eps<family>_<index>` differentiated `order` times in time.
    Gauge { family: u8, index: usize, order: u8 },
    /// Auxiliary variable for Rabinowitsch-style tests.
    Slack,
}

impl Role {
    pub fn is_phase_space(self) -> bool {
        matches!(self, Role::Momentum(_) | Role::Coordinate(_))
    }
}

/// Ordered, duplicate-free list of variable symbols with their roles.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct VariableTable {
    names: Vec<String>,
    roles: Vec<Role>,
    index: HashMap<String, usize>,
}

impl VariableTable {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, name: impl Into<String>, role: Role) -> Result<usize> {
        let name = name.into();
        if self.index.contains_key(&name) {
            return Err(Error::DuplicateSymbol(name));
        }
        let i = self.names.len();
        self.index.insert(name.clone(), i);
        self.names.push(name);
        self.roles.push(role);
        Ok(i)
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn role(&self, i: usize) -> Role {
        self.roles[i]
    }

    pub fn roles(&self) -> &[Role] {
        &self.roles
    }

    /// Indices of all variables whose role satisfies `pred`, in table order.
    pub fn select(&self, pred: impl Fn(Role) -> bool) -> Vec<usize> {
        (0..self.len()).filter(|&i| pred(self.roles[i])).collect()
    }

    pub fn find(&self, role: Role) -> Option<usize> {
        self.roles.iter().position(|&r| r == role)
    }

    /// The formal time derivative of a gauge symbol, if present in the table.
    pub fn derivative_of(&self, i: usize) -> Option<usize> {
        match self.roles[i] {
            Role::Gauge {
                family,
                index,
                order,
            } => self.find(Role::Gauge {
                family,
                index,
                order: order + 1,
            }),
            _ => None,
        }
    }

    /// The momentum conjugate to coordinate variable `i` (or vice versa).
    pub fn conjugate(&self, i: usize) -> Option<usize> {
        match self.roles[i] {
            Role::Coordinate(k) => self.find(Role::Momentum(k)),
            Role::Momentum(k) => self.find(Role::Coordinate(k)),
            _ => None,
        }
    }
}
