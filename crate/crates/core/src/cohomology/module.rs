//! Finitely presented graded modules `coker(F_1 -> F_0)`.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::{Arc, OnceLock};

use super::ModuleCohomology;
use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::engine::{self, EngineOptions, ModuleShape};
use crate::groebner::vector::{self, Vector};
use crate::hilbert::HilbertSeries;
use crate::ideals::Ideal;
use crate::poly::{Polynomial, PolynomialRing};
use crate::resolve::{self, FreeResolution, GradedMatrix};

/// Which power of a module to take.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PowerKind {
    Tensor,
    Symmetric,
    Exterior,
}

impl fmt::Display for PowerKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            PowerKind::Tensor => "T",
            PowerKind::Symmetric => "S",
            PowerKind::Exterior => "Λ",
        })
    }
}

/// The cokernel of a homogeneous presentation. Generator `p` has degree
/// `degrees[p]`; each relation is a homogeneous vector in the free module on
/// the generators.
#[derive(Clone)]
pub struct GradedModule<F: Field> {
    ring: Arc<PolynomialRing<F>>,
    degrees: Vec<i64>,
    relations: Vec<Vector<F::Elem>>,
    resolution: OnceLock<Result<Arc<FreeResolution<F>>>>,
    cohomology: OnceLock<Result<Arc<ModuleCohomology>>>,
}

impl<F: Field> fmt::Debug for GradedModule<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GradedModule")
            .field("ring", &self.ring.to_string())
            .field("degrees", &self.degrees)
            .field("relations", &self.relations.len())
            .finish()
    }
}

impl<F: Field> GradedModule<F> {
    fn raw(ring: &Arc<PolynomialRing<F>>, degrees: Vec<i64>, relations: Vec<Vector<F::Elem>>) -> Self {
        GradedModule {
            ring: ring.clone(),
            degrees,
            relations: relations.into_iter().filter(|r| !r.is_empty()).collect(),
            resolution: OnceLock::new(),
            cohomology: OnceLock::new(),
        }
    }

    fn shape(&self) -> ModuleShape {
        ModuleShape {
            nvars: self.ring.num_vars(),
            weights: self.ring.weights().to_vec(),
            order: self.ring.order(),
            shifts: self.degrees.clone(),
        }
    }

    /// Module with generators in `degrees` and relations given as one
    /// polynomial per generator.
    pub fn new(ring: &Arc<PolynomialRing<F>>, degrees: Vec<i64>, relations: &[Vec<Polynomial<F>>]) -> Result<Self> {
        let k = ring.field();
        let mut rels = Vec::with_capacity(relations.len());
        for row in relations {
            if row.len() != degrees.len() {
                return Err(Error::LengthMismatch(row.len(), degrees.len()));
            }
            let mut terms = Vec::new();
            for (p, e) in row.iter().enumerate() {
                if !e.ring().same_as(ring) {
                    return Err(Error::RingMismatch);
                }
                terms.extend(e.terms().iter().map(|(c, m)| (c.clone(), m.clone(), p as u32)));
            }
            let v = vector::normalize(k, ring.order(), terms);
            if !vector::is_homogeneous(&v, ring.weights(), &degrees) {
                return Err(Error::Inhomogeneous(format!("relation {}", rels.len())));
            }
            rels.push(v);
        }
        Ok(Self::raw(ring, degrees, rels))
    }

    /// The cokernel of `m`.
    pub fn from_matrix(m: &GradedMatrix<F>) -> Self {
        Self::raw(m.ring(), m.row_degrees().to_vec(), m.columns().to_vec())
    }

    /// `sum S(-degrees[p])`.
    pub fn free(ring: &Arc<PolynomialRing<F>>, degrees: Vec<i64>) -> Self {
        Self::raw(ring, degrees, Vec::new())
    }

    /// `S / I`.
    pub fn quotient_ring(ideal: &Ideal<F>) -> Self {
        let rels = ideal.generators().iter().map(crate::groebner::to_vector).collect();
        Self::raw(ideal.ring(), vec![0], rels)
    }

    /// The ideal as a module, presented by its first syzygies.
    pub fn of_ideal(ideal: &Ideal<F>) -> Result<Self> {
        if ideal.is_zero() {
            return Ok(Self::free(ideal.ring(), Vec::new()));
        }
        let res = ideal.resolution()?;
        let rels = res.differential(1).map(|d| d.columns().to_vec()).unwrap_or_default();
        Ok(Self::raw(ideal.ring(), res.degrees(0).to_vec(), rels))
    }

    /// The conormal module `I / I^2`.
    pub fn conormal(ideal: &Ideal<F>) -> Result<Self> {
        if ideal.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        Self::of_ideal(ideal)?.modulo_ideal(ideal)
    }

    /// `I^a / I^(a+1)`.
    pub fn power_quotient(ideal: &Ideal<F>, a: u32) -> Result<Self> {
        let pa = ideal.power(a)?.minimalized()?;
        Self::of_ideal(&pa)?.modulo_ideal(ideal)
    }

    /// `M / J M`.
    pub fn modulo_ideal(&self, ideal: &Ideal<F>) -> Result<Self> {
        if !ideal.ring().same_as(&self.ring) {
            return Err(Error::RingMismatch);
        }
        let mut rels = self.relations.clone();
        for g in ideal.generators() {
            for p in 0..self.degrees.len() {
                rels.push(g.terms().iter().map(|(c, m)| (c.clone(), m.clone(), p as u32)).collect());
            }
        }
        Self::raw(&self.ring, self.degrees.clone(), rels).pruned()
    }

    pub fn ring(&self) -> &Arc<PolynomialRing<F>> {
        &self.ring
    }

    pub fn num_generators(&self) -> usize {
        self.degrees.len()
    }

    pub fn generator_degrees(&self) -> &[i64] {
        &self.degrees
    }

    pub fn num_relations(&self) -> usize {
        self.relations.len()
    }

    /// The presentation matrix, one column per relation.
    pub fn presentation(&self) -> GradedMatrix<F> {
        let cols: Vec<i64> = self
            .relations
            .iter()
            .map(|r| vector::vdegree(r, self.ring.weights(), &self.degrees).unwrap())
            .collect();
        GradedMatrix::from_columns(&self.ring, self.degrees.clone(), cols, self.relations.clone())
    }

    /// An isomorphic module whose presentation is minimal: no relation has
    /// a unit entry and no relation is redundant.
    pub fn pruned(&self) -> Result<Self> {
        let k = self.ring.field();
        let ord = self.ring.order();
        let mut rels = self.relations.clone();
        let mut dead = vec![false; self.degrees.len()];
        loop {
            let hit = rels.iter().enumerate().find_map(|(ri, r)| {
                r.iter().find(|(_, m, _)| m.is_one()).map(|(c, _, p)| (ri, c.clone(), *p))
            });
            let Some((ri, c, p)) = hit else { break };
            let mut v = rels.swap_remove(ri);
            vector::scale(k, &k.inv(&c), &mut v);
            // e_p = e_p - v, which no longer involves e_p
            for u in rels.iter_mut() {
                let coeff: Vec<_> = u.iter().filter(|t| t.2 == p).cloned().collect();
                if coeff.is_empty() {
                    continue;
                }
                let mut terms = std::mem::take(u);
                for (a, m, _) in coeff {
                    terms.extend(vector::mul_term(k, &k.neg(&a), &m, &v));
                }
                *u = vector::normalize(k, ord, terms);
            }
            rels.retain(|r| !r.is_empty());
            dead[p as usize] = true;
        }
        let mut remap = vec![u32::MAX; self.degrees.len()];
        let mut degrees = Vec::new();
        for (p, &d) in self.degrees.iter().enumerate() {
            if !dead[p] {
                remap[p] = degrees.len() as u32;
                degrees.push(d);
            }
        }
        let rels: Vec<Vector<F::Elem>> = rels
            .into_iter()
            .map(|r| {
                let terms = r.into_iter().map(|(c, m, p)| (c, m, remap[p as usize])).collect();
                vector::normalize(k, ord, terms)
            })
            .collect();
        let mut out = Self::raw(&self.ring, degrees, rels);
        if !out.relations.is_empty() {
            let min = engine::run(k, &out.shape(), &out.relations, EngineOptions::default())?;
            out.relations = min.minimal.iter().map(|&i| out.relations[i].clone()).collect();
        }
        Ok(out)
    }

    /// Minimal free resolution (of the pruned module).
    pub fn resolution(&self) -> Result<Arc<FreeResolution<F>>> {
        self.resolution
            .get_or_init(|| {
                let p = self.pruned()?;
                resolve::resolve_cokernel(&p.presentation()).map(Arc::new)
            })
            .clone()
    }

    pub fn hilbert_series(&self) -> Result<HilbertSeries> {
        Ok(self.resolution()?.hilbert_series())
    }

    pub fn hilbert_function(&self, k: i64) -> Result<i128> {
        Ok(self.hilbert_series()?.value(k))
    }

    /// Castelnuovo-Mumford regularity of the module (None for zero).
    pub fn regularity(&self) -> Result<Option<i64>> {
        let res = self.resolution()?;
        if res.is_zero() {
            return Ok(None);
        }
        resolve::cm_regularity(&res.betti_table()?).map(Some)
    }

    /// Ext modules against `S` and everything derived from them.
    pub fn cohomology(&self) -> Result<Arc<ModuleCohomology>> {
        self.cohomology
            .get_or_init(|| {
                let res = self.resolution()?;
                ModuleCohomology::from_resolution(&res, self.regularity()?).map(Arc::new)
            })
            .clone()
    }

    /// `dim H^i_m(M)_k`.
    pub fn local_cohomology_dim(&self, i: i64, k: i64) -> Result<u64> {
        self.cohomology()?.local(i, k)
    }

    /// `dim H^i(P, M~(k))`.
    pub fn sheaf_cohomology_dim(&self, i: i64, k: i64) -> Result<u64> {
        self.cohomology()?.sheaf(i, k)
    }

    /// `M (x) N` over `S`.
    pub fn tensor(&self, other: &Self) -> Result<Self> {
        if !self.ring.same_as(&other.ring) {
            return Err(Error::RingMismatch);
        }
        let gn = other.degrees.len();
        let mut degrees = Vec::with_capacity(self.degrees.len() * gn);
        for a in &self.degrees {
            for b in &other.degrees {
                degrees.push(a + b);
            }
        }
        let k = self.ring.field();
        let ord = self.ring.order();
        let mut rels = Vec::new();
        for r in &self.relations {
            for j in 0..gn {
                let t = r.iter().map(|(c, m, p)| (c.clone(), m.clone(), *p * gn as u32 + j as u32)).collect();
                rels.push(vector::normalize(k, ord, t));
            }
        }
        for s in &other.relations {
            for i in 0..self.degrees.len() {
                let t = s.iter().map(|(c, m, q)| (c.clone(), m.clone(), (i * gn) as u32 + *q)).collect();
                rels.push(vector::normalize(k, ord, t));
            }
        }
        Self::raw(&self.ring, degrees, rels).pruned()
    }

    pub fn tensor_power(&self, a: u32) -> Result<Self> {
        if a < 1 {
            return Err(Error::OutOfRange(format!("tensor power {a}")));
        }
        let base = self.pruned()?;
        let mut acc = base.clone();
        for _ in 1..a {
            acc = acc.tensor(&base)?;
        }
        Ok(acc)
    }

    pub fn symmetric_power(&self, a: u32) -> Result<Self> {
        if a < 1 {
            return Err(Error::OutOfRange(format!("symmetric power {a}")));
        }
        let base = self.pruned()?;
        let g = base.degrees.len();
        let gens = multisets(g, a as usize);
        let lower = multisets(g, a as usize - 1);
        base.graded_power(&gens, &lower, |w, p| {
            let mut s = w.to_vec();
            let at = s.partition_point(|&x| x <= p);
            s.insert(at, p);
            Some((s, false))
        })
    }

    pub fn exterior_power(&self, a: u32) -> Result<Self> {
        let base = self.pruned()?;
        let g = base.degrees.len();
        if a < 1 || a as usize > g {
            return Err(Error::OutOfRange(format!("exterior power {a} of a module with {g} generators")));
        }
        let gens = subsets(g, a as usize);
        let lower = subsets(g, a as usize - 1);
        base.graded_power(&gens, &lower, |w, p| {
            if w.contains(&p) {
                return None;
            }
            let at = w.partition_point(|&x| x < p);
            let mut s = w.to_vec();
            s.insert(at, p);
            Some((s, at % 2 == 1))
        })
    }

    pub fn power(&self, a: u32, kind: PowerKind) -> Result<Self> {
        match kind {
            PowerKind::Tensor => self.tensor_power(a),
            PowerKind::Symmetric => self.symmetric_power(a),
            PowerKind::Exterior => self.exterior_power(a),
        }
    }

    /// Presentation of a quotient of `T^a M` with generators `gens`; each
    /// relation `r` of `M` and each word `w` in `lower` gives the relation
    /// `r * e_w`, with `place(w, p)` giving the word of `e_p * e_w` and
    /// whether it picks up a sign.
    fn graded_power(
        &self,
        gens: &[Vec<usize>],
        lower: &[Vec<usize>],
        place: impl Fn(&[usize], usize) -> Option<(Vec<usize>, bool)>,
    ) -> Result<Self> {
        let index: BTreeMap<&[usize], usize> = gens.iter().enumerate().map(|(i, w)| (w.as_slice(), i)).collect();
        let degrees: Vec<i64> = gens.iter().map(|w| w.iter().map(|&p| self.degrees[p]).sum()).collect();
        let k = self.ring.field();
        let mut rels = Vec::new();
        for r in &self.relations {
            for w in lower {
                let mut terms = Vec::new();
                for (c, m, p) in r {
                    if let Some((word, neg)) = place(w, *p as usize) {
                        let c = if neg { k.neg(c) } else { c.clone() };
                        terms.push((c, m.clone(), index[word.as_slice()] as u32));
                    }
                }
                rels.push(vector::normalize(k, self.ring.order(), terms));
            }
        }
        Self::raw(&self.ring, degrees, rels).pruned()
    }
}

/// Nondecreasing words of length `len` in `0..n`.
fn multisets(n: usize, len: usize) -> Vec<Vec<usize>> {
    let mut out = vec![Vec::new()];
    for _ in 0..len {
        let mut next = Vec::new();
        for w in &out {
            let start = w.last().copied().unwrap_or(0);
            for i in start..n {
                let mut v = w.clone();
                v.push(i);
                next.push(v);
            }
        }
        out = next;
    }
    out
}

/// Increasing words of length `len` in `0..n`.
fn subsets(n: usize, len: usize) -> Vec<Vec<usize>> {
    multisets(n, len).into_iter().filter(|w| w.windows(2).all(|p| p[0] < p[1])).collect()
}
