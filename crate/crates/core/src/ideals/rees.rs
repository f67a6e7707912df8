//! Presentations of the Rees algebra of a saturated ideal in a fixed degree.

use std::sync::Arc;

use super::Ideal;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner;
use crate::poly::{MonomialOrder, Polynomial, PolynomialRing};

/// The kernel of `x_i -> x_i, y_j -> f_j * w`, where `f_1, ..., f_m` is a
/// basis of `(I^sat)_d`.
#[derive(Clone, Debug)]
pub struct ReesPresentation<F: Field> {
    degree: u32,
    ring: Arc<PolynomialRing<F>>,
    nbase: usize,
    fiber: Vec<Polynomial<F>>,
    generators: Vec<Polynomial<F>>,
    bidegrees: Vec<(u32, u32)>,
}

impl<F: Field> ReesPresentation<F> {
    pub fn degree(&self) -> u32 {
        self.degree
    }

    /// The ring `k[x_0..x_n, y_1..y_m]`.
    pub fn ring(&self) -> &Arc<PolynomialRing<F>> {
        &self.ring
    }

    pub fn base_variables(&self) -> &[String] {
        &self.ring.variable_names()[..self.nbase]
    }

    pub fn fiber_variables(&self) -> &[String] {
        &self.ring.variable_names()[self.nbase..]
    }

    /// The chosen basis `f_j` of the degree `d` piece, indexed like the
    /// fiber variables.
    pub fn fiber_basis(&self) -> &[Polynomial<F>] {
        &self.fiber
    }

    /// Minimal bihomogeneous generators of the Rees ideal.
    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.generators
    }

    /// `(x-degree, y-degree)` of each minimal generator.
    pub fn bidegrees(&self) -> &[(u32, u32)] {
        &self.bidegrees
    }

    /// Largest x-degree of a minimal generator, 0 for the zero ideal.
    pub fn max_x_degree(&self) -> u32 {
        self.bidegrees.iter().map(|b| b.0).max().unwrap_or(0)
    }

    pub fn rees_ideal(&self) -> Result<Ideal<F>> {
        Ideal::new(&self.ring, self.generators.clone())
    }
}

/// Bound on the stabilization constant `e` read off the largest x-degree
/// `D` of the Rees equations in `P^n`.
pub fn e_bound_from_rees<F: Field>(rees: &ReesPresentation<F>, n: u32) -> Result<u64> {
    e_bound(n, rees.max_x_degree())
}

pub(crate) fn e_bound(n: u32, d: u32) -> Result<u64> {
    let d = d as u64;
    if n <= 2 {
        return Ok((n as u64 + 1) * d.saturating_sub(1));
    }
    let base = d.checked_pow(3).and_then(|c| c.checked_mul(3)).ok_or(Error::Overflow("e bound"))?;
    if base == 0 {
        return Ok(0);
    }
    let exp = 1u32.checked_shl(n - 3).filter(|_| n - 3 < 32).ok_or(Error::Overflow("e bound"))?;
    Ok(base.checked_pow(exp).ok_or(Error::Overflow("e bound"))? - 1)
}

fn fresh_names(taken: &[String], stem: &str, count: usize) -> Vec<String> {
    let mut prefix = stem.to_string();
    loop {
        let names: Vec<String> = (1..=count).map(|j| format!("{prefix}{j}")).collect();
        if names.iter().all(|n| !taken.contains(n)) {
            return names;
        }
        prefix.insert(0, '_');
    }
}

impl<F: Field> Ideal<F> {
    /// Rees presentation in degree `d`, by eliminating `w` from the graph
    /// ideal `(y_j - f_j w)`.
    pub fn rees_presentation(&self, d: u32) -> Result<ReesPresentation<F>> {
        self.require_standard()?;
        let required = self.d_invariant()?;
        if d < required {
            return Err(Error::BelowGenerationDegree { degree: d as i64, required: required as i64 });
        }
        let sat = self.saturate()?;
        let fiber = sat.degree_basis(d)?;
        let n = self.ring.num_vars();
        let m = fiber.len();
        let x_names = self.ring.variable_names().to_vec();
        let y_names = fresh_names(&x_names, "y", m);
        let mut rees_names = x_names.clone();
        rees_names.extend(y_names.iter().cloned());
        let k = self.ring.field().clone();
        let rees_ring = PolynomialRing::new(&rees_names, k.clone())?;

        let w_name = fresh_names(&rees_names, "w", 1).pop().unwrap();
        let mut aux_names = vec![w_name];
        aux_names.extend(rees_names.iter().cloned());
        let mut weights = vec![1u32; 1 + n];
        weights.extend(std::iter::repeat_n(d + 1, m));
        let aux = PolynomialRing::with_weights(&aux_names, k.clone(), MonomialOrder::BlockElimination(1), weights)?;
        let x_map: Vec<usize> = (1..=n).collect();
        let w = Polynomial::var(&aux, 0);
        let mut graph = Vec::with_capacity(m);
        for (j, f) in fiber.iter().enumerate() {
            let y = Polynomial::var(&aux, 1 + n + j);
            graph.push(y.sub(&f.embed(&aux, &x_map)?.mul(&w)?)?);
        }

        let mut eqs = Vec::new();
        if !graph.is_empty() {
            let gb = groebner::buchberger(&graph, aux.order())?;
            let drop_w: Vec<usize> = std::iter::once(0).chain(0..n + m).collect();
            for g in gb.elements() {
                if g.terms().iter().all(|(_, mono)| mono.exponents()[0] == 0) {
                    eqs.push(g.embed(&rees_ring, &drop_w)?);
                }
            }
        }
        let ideal = Ideal::new(&rees_ring, eqs)?;
        let generators = ideal.minimal_generators()?.to_vec();
        let bidegrees = generators
            .iter()
            .map(|g| {
                let e = g.terms()[0].1.exponents();
                let dx: u32 = e[..n].iter().map(|&v| v as u32).sum();
                let dy: u32 = e[n..].iter().map(|&v| v as u32).sum();
                (dx, dy)
            })
            .collect();
        Ok(ReesPresentation {
            degree: d,
            ring: rees_ring,
            nbase: n,
            fiber,
            generators,
            bidegrees,
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;

    #[test]
    fn bound_formula() {
        assert_eq!(e_bound(2, 3).unwrap(), 6);
        assert_eq!(e_bound(4, 2).unwrap(), 575);
        assert_eq!(e_bound(2, 1).unwrap(), 0);
        assert_eq!(e_bound(2, 0).unwrap(), 0);
        assert_eq!(e_bound(3, 2).unwrap(), 23);
        assert!(matches!(e_bound(40, 5), Err(Error::Overflow(_))));
    }

    #[test]
    fn koszul_relation() {
        let r = PolynomialRing::new(&["x", "y"], Rationals).unwrap();
        let i = Ideal::parse(&r, &["x", "y"]).unwrap();
        let p = i.rees_presentation(1).unwrap();
        assert_eq!(p.fiber_variables(), ["y1", "y2"].map(String::from).as_slice());
        assert_eq!(p.bidegrees(), &[(1, 1)]);
        let g = &p.generators()[0];
        let expect = crate::poly::parse_polynomial(p.ring(), "x*y2 - y*y1").unwrap();
        assert_eq!(g.monic(), expect.monic());
    }

    #[test]
    fn principal_has_no_relations() {
        let r = PolynomialRing::standard(3, Rationals).unwrap();
        let i = Ideal::parse(&r, &["x0^3 + x1^3 + x2^3"]).unwrap();
        let p = i.rees_presentation(3).unwrap();
        assert!(p.generators().is_empty());
        assert_eq!(e_bound_from_rees(&p, 2).unwrap(), 0);
        assert!(matches!(i.rees_presentation(2), Err(Error::BelowGenerationDegree { degree: 2, required: 3 })));
    }

    #[test]
    fn twisted_cubic() {
        let r = PolynomialRing::standard(4, Rationals).unwrap();
        let i = Ideal::parse(&r, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]).unwrap();
        let p = i.rees_presentation(2).unwrap();
        let mut b = p.bidegrees().to_vec();
        b.sort();
        // the net of quadrics maps onto the plane, so only the two linear
        // syzygies survive
        assert_eq!(b, vec![(1, 1), (1, 1)]);
        assert_eq!(p.max_x_degree(), 1);
        assert_eq!(e_bound_from_rees(&p, 3).unwrap(), 2);
    }
}
