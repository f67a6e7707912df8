use std::cmp::Ordering;

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// Monomial orders. All of them refine the partial order by divisibility.
#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash)]
pub enum MonomialOrder {
    /// Degree reverse lexicographic, `x0 > x1 > ... > xn`.
    #[default]
    Grevlex,
    /// Pure lexicographic, `x0 > x1 > ... > xn`.
    Lex,
    /// Elimination order for the first `k` variables: compares the degree in
    /// `x0..x(k-1)` first and breaks ties by grevlex.
    BlockElimination(usize),
}

impl MonomialOrder {
    pub fn cmp(&self, a: &Monomial, b: &Monomial) -> Ordering {
        match *self {
            MonomialOrder::Grevlex => grevlex(a, b),
            MonomialOrder::Lex => lex(a, b),
            MonomialOrder::BlockElimination(k) => {
                let da: u32 = a.exponents()[..k].iter().map(|&e| e as u32).sum();
                let db: u32 = b.exponents()[..k].iter().map(|&e| e as u32).sum();
                da.cmp(&db).then_with(|| grevlex(a, b))
            }
        }
    }

    /// True when the order compares total degree before anything else.
    pub fn is_graded(&self) -> bool {
        matches!(self, MonomialOrder::Grevlex)
    }
}

fn grevlex(a: &Monomial, b: &Monomial) -> Ordering {
    match a.degree().cmp(&b.degree()) {
        Ordering::Equal => {}
        o => return o,
    }
    let (ea, eb) = (a.exponents(), b.exponents());
    for i in (0..ea.len()).rev() {
        if ea[i] != eb[i] {
            // smaller exponent in the last differing variable wins
            return eb[i].cmp(&ea[i]);
        }
    }
    Ordering::Equal
}

fn lex(a: &Monomial, b: &Monomial) -> Ordering {
    a.exponents().cmp(b.exponents())
}

/// Compare two monomials under `ord`, checking that they live in the same
/// number of variables.
pub fn compare(m1: &Monomial, m2: &Monomial, ord: MonomialOrder) -> Result<Ordering> {
    if m1.nvars() != m2.nvars() {
        return Err(Error::LengthMismatch(m1.nvars(), m2.nvars()));
    }
    if let MonomialOrder::BlockElimination(k) = ord {
        if k > m1.nvars() {
            return Err(Error::InvalidArgument(format!(
                "elimination block of size {k} in {} variables",
                m1.nvars()
            )));
        }
    }
    Ok(ord.cmp(m1, m2))
}
