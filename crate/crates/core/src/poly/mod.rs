//! Polynomial rings over `Q(params)` with block term orders.

mod gcd;
mod monomial;
mod order;
mod polynomial;
mod render;
mod table;

use std::sync::Arc;

pub use monomial::Monomial;
pub use order::{Block, BlockKind, MonomialOrder};
pub use polynomial::{Coeff, Polynomial};
pub use render::{render_coeff, render_monomial};
pub use table::{Role, VariableTable};

use crate::error::{Error, Result};

/// A polynomial ring: variables with roles, a term order, and the names of
/// the parameters appearing in coefficients.
#[derive(Debug, PartialEq, Eq)]
pub struct Ring {
    table: VariableTable,
    order: MonomialOrder,
    params: Vec<String>,
}

impl Ring {
    pub fn new(table: VariableTable, order: MonomialOrder, params: Vec<String>) -> Result<Arc<Ring>> {
        if order.num_vars() != table.len() {
            return Err(Error::RingMismatch(format!(
                "order covers {} variables, table has {}",
                order.num_vars(),
                table.len()
            )));
        }
        for p in &params {
            if table.index_of(p).is_some() {
                return Err(Error::DuplicateSymbol(p.clone()));
            }
        }
        Ok(Arc::new(Ring {
            table,
            order,
            params,
        }))
    }

    pub fn table(&self) -> &VariableTable {
        &self.table
    }

    pub fn order(&self) -> &MonomialOrder {
        &self.order
    }

    pub fn params(&self) -> &[String] {
        &self.params
    }

    pub fn nvars(&self) -> usize {
        self.table.len()
    }

    pub fn index_of(&self, name: &str) -> Result<usize> {
        self.table
            .index_of(name)
            .ok_or_else(|| Error::UnknownVariable(name.to_string()))
    }

    pub fn param_index(&self, name: &str) -> Option<usize> {
        self.params.iter().position(|p| p == name)
    }

    /// Appends a trailing block of new variables.
    ///
    /// Polynomials of `self` embed into the result by zero padding, and their
    /// term order is unchanged.
    pub fn extend(&self, vars: &[(String, Role)], kind: BlockKind) -> Result<Arc<Ring>> {
        let mut table = self.table.clone();
        for (name, role) in vars {
            if self.param_index(name).is_some() {
                return Err(Error::DuplicateSymbol(name.clone()));
            }
            table.push(name.clone(), *role)?;
        }
        Ring::new(table, self.order.extended(vars.len(), kind), self.params.clone())
    }

    pub fn same(a: &Arc<Ring>, b: &Arc<Ring>) -> bool {
        Arc::ptr_eq(a, b) || a == b
    }

    /// True if `self` is `other` with zero or more trailing blocks appended.
    pub fn extends(&self, other: &Ring) -> bool {
        let n = other.nvars();
        self.params == other.params
            && self.table.names()[..n.min(self.nvars())] == other.table.names()[..]
            && self.order.blocks().len() >= other.order.blocks().len()
            && self.order.blocks()[..other.order.blocks().len()] == other.order.blocks()[..]
    }
}
