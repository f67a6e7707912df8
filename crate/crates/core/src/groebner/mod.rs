//! Groebner bases, normal forms and syzygies of homogeneous ideals.

pub mod engine;
pub mod vector;

use std::sync::Arc;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::poly::{MonomialOrder, Polynomial, PolynomialRing};

pub use engine::{EngineOptions, EngineOutput, ModuleShape};
pub use vector::{VTerm, Vector};

/// A Groebner basis of a homogeneous ideal. Elements are monic and live in
/// a copy of the ring carrying the basis' order.
#[derive(Clone, Debug)]
pub struct GroebnerBasis<F: Field> {
    ring: Arc<PolynomialRing<F>>,
    order: MonomialOrder,
    elements: Vec<Polynomial<F>>,
    reduced: bool,
}

impl<F: Field> GroebnerBasis<F> {
    pub fn ring(&self) -> &Arc<PolynomialRing<F>> {
        &self.ring
    }

    pub fn order(&self) -> MonomialOrder {
        self.order
    }

    pub fn elements(&self) -> &[Polynomial<F>] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn is_reduced(&self) -> bool {
        self.reduced
    }

    pub fn is_unit_ideal(&self) -> bool {
        self.elements.iter().any(|g| g.degree() == Some(0))
    }

    pub fn leading_monomials(&self) -> Vec<crate::poly::Monomial> {
        self.elements.iter().map(|g| g.leading().unwrap().1.clone()).collect()
    }

    pub(crate) fn vectors(&self) -> Vec<Vector<F::Elem>> {
        self.elements.iter().map(to_vector).collect()
    }

    pub(crate) fn shape(&self) -> ModuleShape {
        rank_one_shape(&self.ring)
    }

    /// Normal form of `f`, which must belong to a ring with the same
    /// variables and field.
    pub fn normal_form(&self, f: &Polynomial<F>) -> Result<Polynomial<F>> {
        normal_form(f, self)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        Ok(self.normal_form(f)?.is_zero())
    }
}

impl<F: Field> PartialEq for GroebnerBasis<F> {
    fn eq(&self, other: &Self) -> bool {
        self.order == other.order && self.elements == other.elements
    }
}

pub(crate) fn rank_one_shape<F: Field>(ring: &PolynomialRing<F>) -> ModuleShape {
    ModuleShape {
        nvars: ring.num_vars(),
        weights: ring.weights().to_vec(),
        order: ring.order(),
        shifts: vec![0],
    }
}

pub(crate) fn to_vector<F: Field>(f: &Polynomial<F>) -> Vector<F::Elem> {
    f.terms().iter().map(|(c, m)| (c.clone(), m.clone(), 0)).collect()
}

pub(crate) fn from_vector<F: Field>(ring: &Arc<PolynomialRing<F>>, v: Vector<F::Elem>) -> Polynomial<F> {
    let terms = v.into_iter().map(|(c, m, _)| (c, m)).collect();
    Polynomial::from_terms(ring, terms).expect("vector belongs to the ring")
}

fn check_homogeneous<F: Field>(gens: &[Polynomial<F>]) -> Result<()> {
    for g in gens {
        if !g.is_homogeneous() {
            return Err(Error::Inhomogeneous(g.to_string()));
        }
    }
    Ok(())
}

fn common_ring<F: Field>(gens: &[Polynomial<F>]) -> Result<Arc<PolynomialRing<F>>> {
    let ring = gens.first().ok_or(Error::EmptyGenerators)?.ring().clone();
    if gens.iter().any(|g| !g.ring().same_as(&ring)) {
        return Err(Error::RingMismatch);
    }
    Ok(ring)
}

/// Reduced Groebner basis of the ideal generated by homogeneous `gens`.
pub fn buchberger<F: Field>(gens: &[Polynomial<F>], ord: MonomialOrder) -> Result<GroebnerBasis<F>> {
    let ring = common_ring(gens)?;
    check_homogeneous(gens)?;
    let ring = if ring.order() == ord { ring } else { ring.reordered(ord)? };
    let inputs: Vec<Vector<F::Elem>> = gens
        .iter()
        .map(|g| g.with_ring(&ring).map(|g| to_vector(&g)))
        .collect::<Result<_>>()?;
    let out = engine::run(
        ring.field(),
        &rank_one_shape(&ring),
        &inputs,
        EngineOptions {
            reduce: true,
            ..Default::default()
        },
    )?;
    Ok(basis_from_vectors(&ring, out.gb))
}

pub(crate) fn basis_from_vectors<F: Field>(ring: &Arc<PolynomialRing<F>>, gb: Vec<Vector<F::Elem>>) -> GroebnerBasis<F> {
    let ord = ring.order();
    let mut elements: Vec<Polynomial<F>> = gb.into_iter().map(|v| from_vector(ring, v)).collect();
    elements.sort_by(|a, b| ord.cmp(&a.leading().unwrap().1, &b.leading().unwrap().1));
    GroebnerBasis {
        ring: ring.clone(),
        order: ord,
        elements,
        reduced: true,
    }
}

/// Remainder of `f` on division by `g`.
pub fn normal_form<F: Field>(f: &Polynomial<F>, g: &GroebnerBasis<F>) -> Result<Polynomial<F>> {
    let f = if f.ring().same_as(g.ring()) {
        f.clone()
    } else {
        f.with_ring(g.ring())?
    };
    let r = engine::normal_form(g.ring.field(), &g.shape(), &g.vectors(), to_vector(&f));
    Ok(from_vector(&g.ring, r))
}

/// Membership test through a grevlex basis.
pub fn ideal_membership<F: Field>(f: &Polynomial<F>, gens: &[Polynomial<F>]) -> Result<bool> {
    if f.is_zero() {
        return Ok(true);
    }
    let gens: Vec<Polynomial<F>> = gens.iter().filter(|g| !g.is_zero()).cloned().collect();
    if gens.is_empty() {
        return Ok(false);
    }
    if !f.ring().same_as(gens[0].ring()) {
        return Err(Error::RingMismatch);
    }
    let g = buchberger(&gens, MonomialOrder::Grevlex)?;
    g.contains(f)
}

/// Relations among a list of generators: each row `(a_1, ..., a_m)`
/// satisfies `sum a_i g_i = 0`.
#[derive(Clone, Debug)]
pub struct SyzygyModule<F: Field> {
    pub rows: Vec<Vec<Polynomial<F>>>,
    /// Degrees of the generators.
    pub column_degrees: Vec<i64>,
}

impl<F: Field> SyzygyModule<F> {
    pub fn len(&self) -> usize {
        self.rows.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    /// Degree of each relation.
    pub fn row_degrees(&self) -> Vec<i64> {
        self.rows
            .iter()
            .map(|row| {
                row.iter()
                    .zip(&self.column_degrees)
                    .find(|(a, _)| !a.is_zero())
                    .map(|(a, d)| a.degree().unwrap() as i64 + d)
                    .unwrap_or(0)
            })
            .collect()
    }

    /// Checks that every row annihilates `gens`.
    pub fn annihilates(&self, gens: &[Polynomial<F>]) -> Result<bool> {
        for row in &self.rows {
            if row.len() != gens.len() {
                return Err(Error::LengthMismatch(row.len(), gens.len()));
            }
            let mut acc = Polynomial::zero(gens[0].ring());
            for (a, g) in row.iter().zip(gens) {
                acc = acc.add(&a.mul(g)?)?;
            }
            if !acc.is_zero() {
                return Ok(false);
            }
        }
        Ok(true)
    }
}

/// A minimal generating set of the first syzygy module of `gens`.
pub fn syzygies<F: Field>(gens: &[Polynomial<F>], ord: MonomialOrder) -> Result<SyzygyModule<F>> {
    let ring = common_ring(gens)?;
    check_homogeneous(gens)?;
    let work = if ring.order() == ord { ring.clone() } else { ring.reordered(ord)? };
    let inputs: Vec<Vector<F::Elem>> = gens
        .iter()
        .map(|g| g.with_ring(&work).map(|g| to_vector(&g)))
        .collect::<Result<_>>()?;
    let k = ring.field();
    let raw = engine::run(
        k,
        &rank_one_shape(&work),
        &inputs,
        EngineOptions {
            syzygies: true,
            keep_all: true,
            ..Default::default()
        },
    )?;
    let column_degrees: Vec<i64> = gens.iter().map(|g| g.degree().unwrap_or(0) as i64).collect();
    let shape = ModuleShape {
        nvars: ring.num_vars(),
        weights: ring.weights().to_vec(),
        order: ord,
        shifts: column_degrees.clone(),
    };
    let min = engine::run(k, &shape, &raw.syzygies, EngineOptions::default())?;
    let rows = min
        .minimal
        .iter()
        .map(|&i| {
            let mut row = vec![Vec::new(); gens.len()];
            for (c, m, p) in &raw.syzygies[i] {
                row[*p as usize].push((c.clone(), m.clone()));
            }
            row.into_iter()
                .map(|t| Polynomial::from_terms(&ring, t))
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<_>>()?;
    Ok(SyzygyModule { rows, column_degrees })
}
