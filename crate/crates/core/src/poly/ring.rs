use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::MonomialOrder;

/// A polynomial ring `k[x0, ..., xn]` with a fixed monomial order.
///
/// Variables carry positive integer weights. User-facing rings are always
/// standard graded; other weights are only used internally (Rees algebras).
#[derive(Clone, Debug, PartialEq)]
pub struct PolynomialRing<F: Field> {
    names: Vec<String>,
    field: F,
    order: MonomialOrder,
    weights: Vec<u32>,
}

impl<F: Field> PolynomialRing<F> {
    pub fn new<S: AsRef<str>>(names: &[S], field: F) -> Result<Arc<Self>> {
        Self::build(names, field, MonomialOrder::Grevlex, None)
    }

    pub fn with_order<S: AsRef<str>>(
        names: &[S],
        field: F,
        order: MonomialOrder,
    ) -> Result<Arc<Self>> {
        Self::build(names, field, order, None)
    }

    pub fn with_weights<S: AsRef<str>>(
        names: &[S],
        field: F,
        order: MonomialOrder,
        weights: Vec<u32>,
    ) -> Result<Arc<Self>> {
        Self::build(names, field, order, Some(weights))
    }

    fn build<S: AsRef<str>>(
        names: &[S],
        field: F,
        order: MonomialOrder,
        weights: Option<Vec<u32>>,
    ) -> Result<Arc<Self>> {
        if names.is_empty() {
            return Err(Error::InvalidArgument("a ring needs at least one variable".into()));
        }
        let names: Vec<String> = names.iter().map(|s| s.as_ref().to_string()).collect();
        for (i, a) in names.iter().enumerate() {
            if !is_identifier(a) {
                return Err(Error::InvalidArgument(format!("bad variable name {a:?}")));
            }
            if names[..i].contains(a) {
                return Err(Error::InvalidArgument(format!("duplicate variable {a}")));
            }
        }
        if let MonomialOrder::BlockElimination(k) = order {
            if k > names.len() {
                return Err(Error::InvalidArgument(format!(
                    "elimination block of size {k} in {} variables",
                    names.len()
                )));
            }
        }
        let weights = weights.unwrap_or_else(|| vec![1; names.len()]);
        if weights.len() != names.len() {
            return Err(Error::LengthMismatch(weights.len(), names.len()));
        }
        if weights.contains(&0) {
            return Err(Error::InvalidArgument("variable weights must be positive".into()));
        }
        Ok(Arc::new(PolynomialRing {
            names,
            field,
            order,
            weights,
        }))
    }

    /// Standard graded ring on `x0..x(n-1)`.
    pub fn standard(nvars: usize, field: F) -> Result<Arc<Self>> {
        let names: Vec<String> = (0..nvars).map(|i| format!("x{i}")).collect();
        Self::new(&names, field)
    }

    pub fn num_vars(&self) -> usize {
        self.names.len()
    }

    pub fn variable_names(&self) -> &[String] {
        &self.names
    }

    pub fn var_index(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| n == name)
    }

    pub fn field(&self) -> &F {
        &self.field
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn weights(&self) -> &[u32] {
        &self.weights
    }

    pub fn is_standard_graded(&self) -> bool {
        self.weights.iter().all(|&w| w == 1)
    }

    /// Same variables and field, different order.
    pub fn reordered(&self, order: MonomialOrder) -> Result<Arc<Self>> {
        Self::build(&self.names, self.field.clone(), order, Some(self.weights.clone()))
    }

    pub fn same_as(self: &Arc<Self>, other: &Arc<Self>) -> bool {
        Arc::ptr_eq(self, other) || **self == **other
    }
}

impl<F: Field> fmt::Display for PolynomialRing<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}[{}]", self.field.spec(), self.names.join(", "))
    }
}

pub(crate) fn is_identifier(s: &str) -> bool {
    let mut chars = s.chars();
    match chars.next() {
        Some(c) if c.is_ascii_alphabetic() || c == '_' => {}
        _ => return false,
    }
    chars.all(|c| c.is_ascii_alphanumeric() || c == '_')
}
