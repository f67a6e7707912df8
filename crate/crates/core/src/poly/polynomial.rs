use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder, PolynomialRing};

pub type Term<F> = (<F as Field>::Elem, Monomial);

/// A polynomial in canonical form: terms strictly decreasing in the ring's
/// order, no zero coefficients.
#[derive(Clone, Debug)]
pub struct Polynomial<F: Field> {
    ring: Arc<PolynomialRing<F>>,
    terms: Vec<Term<F>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ArithOp {
    Add,
    Sub,
    Mul,
}

impl<F: Field> PartialEq for Polynomial<F> {
    fn eq(&self, other: &Self) -> bool {
        self.ring.same_as(&other.ring) && self.terms == other.terms
    }
}

impl<F: Field> Polynomial<F> {
    pub fn zero(ring: &Arc<PolynomialRing<F>>) -> Self {
        Polynomial {
            ring: ring.clone(),
            terms: Vec::new(),
        }
    }

    pub fn constant(ring: &Arc<PolynomialRing<F>>, c: F::Elem) -> Self {
        Self::monomial(ring, c, Monomial::one(ring.num_vars()))
    }

    pub fn one(ring: &Arc<PolynomialRing<F>>) -> Self {
        Self::constant(ring, ring.field().one())
    }

    pub fn var(ring: &Arc<PolynomialRing<F>>, i: usize) -> Self {
        Self::monomial(ring, ring.field().one(), Monomial::var(ring.num_vars(), i))
    }

    pub fn monomial(ring: &Arc<PolynomialRing<F>>, c: F::Elem, m: Monomial) -> Self {
        debug_assert_eq!(m.nvars(), ring.num_vars());
        if ring.field().is_zero(&c) {
            return Self::zero(ring);
        }
        Polynomial {
            ring: ring.clone(),
            terms: vec![(c, m)],
        }
    }

    /// Builds the canonical form of an arbitrary list of terms: sums
    /// duplicates, drops zeros and sorts.
    pub fn from_terms(ring: &Arc<PolynomialRing<F>>, terms: Vec<Term<F>>) -> Result<Self> {
        let n = ring.num_vars();
        for (_, m) in &terms {
            if m.nvars() != n {
                return Err(Error::LengthMismatch(m.nvars(), n));
            }
        }
        let k = ring.field();
        let mut acc: HashMap<Monomial, F::Elem> = HashMap::with_capacity(terms.len());
        for (c, m) in terms {
            match acc.get_mut(&m) {
                Some(e) => *e = k.add(e, &c),
                None => {
                    acc.insert(m, c);
                }
            }
        }
        let mut terms: Vec<Term<F>> = acc.into_iter().filter(|(_, c)| !k.is_zero(c)).map(|(m, c)| (c, m)).collect();
        let ord = ring.order();
        terms.sort_by(|a, b| ord.cmp(&b.1, &a.1));
        Ok(Polynomial {
            ring: ring.clone(),
            terms,
        })
    }

    /// Wraps terms that are already canonical.
    pub(crate) fn from_sorted_unchecked(ring: &Arc<PolynomialRing<F>>, terms: Vec<Term<F>>) -> Self {
        debug_assert!(terms.windows(2).all(|w| ring.order().cmp(&w[0].1, &w[1].1) == Ordering::Greater));
        Polynomial {
            ring: ring.clone(),
            terms,
        }
    }

    pub fn ring(&self) -> &Arc<PolynomialRing<F>> {
        &self.ring
    }

    pub fn field(&self) -> &F {
        self.ring.field()
    }

    pub fn terms(&self) -> &[Term<F>] {
        &self.terms
    }

    pub fn into_terms(self) -> Vec<Term<F>> {
        self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Weighted degree of the leading term; `None` for zero.
    pub fn degree(&self) -> Option<u64> {
        let w = self.ring.weights();
        self.terms.iter().map(|(_, m)| m.weighted_degree(w)).max()
    }

    pub fn is_homogeneous(&self) -> bool {
        let w = self.ring.weights();
        let mut it = self.terms.iter().map(|(_, m)| m.weighted_degree(w));
        match it.next() {
            None => true,
            Some(d) => it.all(|e| e == d),
        }
    }

    /// Leading term in the ring's own order.
    pub fn leading(&self) -> Option<&Term<F>> {
        self.terms.first()
    }

    /// Leading term with respect to an arbitrary order.
    pub fn leading_term(&self, ord: MonomialOrder) -> Result<(&F::Elem, &Monomial)> {
        if ord == self.ring.order() {
            return self.terms.first().map(|(c, m)| (c, m)).ok_or(Error::ZeroPolynomial);
        }
        self.terms
            .iter()
            .max_by(|a, b| ord.cmp(&a.1, &b.1))
            .map(|(c, m)| (c, m))
            .ok_or(Error::ZeroPolynomial)
    }

    pub fn coefficient(&self, m: &Monomial) -> F::Elem {
        self.terms
            .iter()
            .find(|(_, t)| t == m)
            .map(|(c, _)| c.clone())
            .unwrap_or_else(|| self.field().zero())
    }

    fn check_ring(&self, other: &Self) -> Result<()> {
        if self.ring.same_as(&other.ring) {
            Ok(())
        } else {
            Err(Error::RingMismatch)
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, false))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        Ok(self.merge(other, true))
    }

    fn merge(&self, other: &Self, negate: bool) -> Self {
        let k = self.field();
        let ord = self.ring.order();
        let mut out = Vec::with_capacity(self.terms.len() + other.terms.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.terms, &other.terms);
        while i < a.len() || j < b.len() {
            let c = if i == a.len() {
                Ordering::Less
            } else if j == b.len() {
                Ordering::Greater
            } else {
                ord.cmp(&a[i].1, &b[j].1)
            };
            match c {
                Ordering::Greater => {
                    out.push(a[i].clone());
                    i += 1;
                }
                Ordering::Less => {
                    let c = if negate { k.neg(&b[j].0) } else { b[j].0.clone() };
                    out.push((c, b[j].1.clone()));
                    j += 1;
                }
                Ordering::Equal => {
                    let s = if negate { k.sub(&a[i].0, &b[j].0) } else { k.add(&a[i].0, &b[j].0) };
                    if !k.is_zero(&s) {
                        out.push((s, a[i].1.clone()));
                    }
                    i += 1;
                    j += 1;
                }
            }
        }
        Polynomial::from_sorted_unchecked(&self.ring, out)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check_ring(other)?;
        if self.is_zero() || other.is_zero() {
            return Ok(Self::zero(&self.ring));
        }
        if other.terms.len() == 1 {
            let (c, m) = &other.terms[0];
            return Ok(self.mul_term(c, m));
        }
        let k = self.field();
        let mut terms = Vec::with_capacity(self.terms.len() * other.terms.len());
        for (c1, m1) in &self.terms {
            for (c2, m2) in &other.terms {
                terms.push((k.mul(c1, c2), m1.mul(m2)));
            }
        }
        Self::from_terms(&self.ring, terms)
    }

    /// Multiplication by `c * m`; the order is multiplicative so the term
    /// order is preserved.
    pub fn mul_term(&self, c: &F::Elem, m: &Monomial) -> Self {
        let k = self.field();
        if k.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(d, t)| (k.mul(c, d), t.mul(m))).collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }

    pub fn scale(&self, c: &F::Elem) -> Self {
        let k = self.field();
        if k.is_zero(c) {
            return Self::zero(&self.ring);
        }
        let terms = self.terms.iter().map(|(d, t)| (k.mul(c, d), t.clone())).collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }

    pub fn neg(&self) -> Self {
        let k = self.field();
        let terms = self.terms.iter().map(|(d, t)| (k.neg(d), t.clone())).collect();
        Polynomial::from_sorted_unchecked(&self.ring, terms)
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::one(&self.ring);
        for _ in 0..e {
            acc = acc.mul(self).expect("same ring");
        }
        acc
    }

    /// Divides by the leading coefficient.
    pub fn monic(&self) -> Self {
        match self.terms.first() {
            None => self.clone(),
            Some((c, _)) => {
                let inv = self.field().inv(c);
                self.scale(&inv)
            }
        }
    }

    /// Moves the polynomial into `target`, sending variable `i` to
    /// variable `var_map[i]`.
    pub fn embed(&self, target: &Arc<PolynomialRing<F>>, var_map: &[usize]) -> Result<Self> {
        if var_map.len() != self.ring.num_vars() {
            return Err(Error::LengthMismatch(var_map.len(), self.ring.num_vars()));
        }
        let n = target.num_vars();
        if var_map.iter().any(|&v| v >= n) {
            return Err(Error::OutOfRange("variable index".into()));
        }
        let terms = self
            .terms
            .iter()
            .map(|(c, m)| {
                let mut e = vec![0u16; n];
                for (i, &x) in m.exponents().iter().enumerate() {
                    e[var_map[i]] += x;
                }
                (c.clone(), Monomial::from_slice(&e))
            })
            .collect();
        Self::from_terms(target, terms)
    }

    /// Re-sorts the terms for a ring that differs only in its order.
    pub fn with_ring(&self, target: &Arc<PolynomialRing<F>>) -> Result<Self> {
        if target.num_vars() != self.ring.num_vars() || target.field() != self.ring.field() {
            return Err(Error::RingMismatch);
        }
        Self::from_terms(target, self.terms.clone())
    }
}

/// Sum, difference or product of two polynomials of the same ring.
pub fn poly_arith<F: Field>(f: &Polynomial<F>, g: &Polynomial<F>, op: ArithOp) -> Result<Polynomial<F>> {
    match op {
        ArithOp::Add => f.add(g),
        ArithOp::Sub => f.sub(g),
        ArithOp::Mul => f.mul(g),
    }
}

pub(crate) fn format_monomial(m: &Monomial, names: &[String]) -> String {
    let mut parts = Vec::new();
    for (i, &e) in m.exponents().iter().enumerate() {
        match e {
            0 => {}
            1 => parts.push(names[i].clone()),
            _ => parts.push(format!("{}^{}", names[i], e)),
        }
    }
    parts.join("*")
}

impl<F: Field> fmt::Display for Polynomial<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let k = self.field();
        let names = self.ring.variable_names();
        for (idx, (c, m)) in self.terms.iter().enumerate() {
            let neg = k.is_negative(c);
            let abs = if neg { k.neg(c) } else { c.clone() };
            if idx == 0 {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            let mono = format_monomial(m, names);
            if mono.is_empty() {
                write!(f, "{}", k.format(&abs))?;
            } else if k.is_one(&abs) {
                write!(f, "{mono}")?;
            } else {
                write!(f, "{}*{}", k.format(&abs), mono)?;
            }
        }
        Ok(())
    }
}
