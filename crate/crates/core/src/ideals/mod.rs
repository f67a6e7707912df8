//! Homogeneous ideals and the operations built on them: powers, colons,
//! saturation, elimination and Hilbert functions.

mod rees;

use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::sync::{Arc, OnceLock};

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::{self, engine, EngineOptions, GroebnerBasis};
use crate::hilbert::{binomial, HilbertSeries};
use crate::linalg::{self, Echelon, SparseRow};
use crate::poly::{parse_polynomial, Monomial, MonomialOrder, Polynomial, PolynomialRing};
use crate::resolve::{self, BettiTable, FreeResolution};

pub use rees::{e_bound_from_rees, ReesPresentation};

/// A homogeneous ideal with lazily computed Groebner basis, resolution and
/// saturation. Caches are filled at most once, even under concurrent use.
#[derive(Clone)]
pub struct Ideal<F: Field> {
    ring: Arc<PolynomialRing<F>>,
    gens: Vec<Polynomial<F>>,
    gb: OnceLock<Result<GroebnerBasis<F>>>,
    mingens: OnceLock<Result<Vec<Polynomial<F>>>>,
    resolution: OnceLock<Result<Arc<FreeResolution<F>>>>,
    saturation: OnceLock<Result<Arc<Ideal<F>>>>,
}

impl<F: Field> fmt::Debug for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Ideal")
            .field("ring", &self.ring.to_string())
            .field("gens", &self.gens.iter().map(|g| g.to_string()).collect::<Vec<_>>())
            .finish()
    }
}

impl<F: Field> fmt::Display for Ideal<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let gens: Vec<String> = self.gens.iter().map(|g| g.to_string()).collect();
        write!(f, "<{}>", gens.join(", "))
    }
}

impl<F: Field> Ideal<F> {
    /// Ideal of `ring` generated by `gens`; zero generators are dropped.
    pub fn new(ring: &Arc<PolynomialRing<F>>, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let mut kept = Vec::with_capacity(gens.len());
        for g in gens {
            if !g.ring().same_as(ring) {
                return Err(Error::RingMismatch);
            }
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
            if !g.is_zero() {
                kept.push(g);
            }
        }
        Ok(Ideal {
            ring: ring.clone(),
            gens: kept,
            gb: OnceLock::new(),
            mingens: OnceLock::new(),
            resolution: OnceLock::new(),
            saturation: OnceLock::new(),
        })
    }

    /// Parses one polynomial per string.
    pub fn parse(ring: &Arc<PolynomialRing<F>>, gens: &[&str]) -> Result<Self> {
        let polys = gens.iter().map(|s| parse_polynomial(ring, s)).collect::<Result<Vec<_>>>()?;
        Self::new(ring, polys)
    }

    /// The irrelevant ideal `(x0, ..., xn)`.
    pub fn maximal(ring: &Arc<PolynomialRing<F>>) -> Self {
        let gens = (0..ring.num_vars()).map(|i| Polynomial::var(ring, i)).collect();
        Self::new(ring, gens).expect("variables are homogeneous")
    }

    pub fn ring(&self) -> &Arc<PolynomialRing<F>> {
        &self.ring
    }

    pub fn generators(&self) -> &[Polynomial<F>] {
        &self.gens
    }

    pub fn is_zero(&self) -> bool {
        self.gens.is_empty()
    }

    /// Reduced grevlex (or the ring's order) Groebner basis.
    pub fn groebner_basis(&self) -> Result<&GroebnerBasis<F>> {
        self.gb
            .get_or_init(|| {
                if self.gens.is_empty() {
                    Ok(groebner::basis_from_vectors(&self.ring, Vec::new()))
                } else {
                    groebner::buchberger(&self.gens, self.ring.order())
                }
            })
            .as_ref()
            .map_err(Clone::clone)
    }

    /// A minimal homogeneous generating set, chosen among the generators.
    pub fn minimal_generators(&self) -> Result<&[Polynomial<F>]> {
        self.mingens
            .get_or_init(|| {
                if let Some(Ok(res)) = self.resolution.get() {
                    return Ok(augmentation_gens(res));
                }
                let vecs: Vec<_> = self.gens.iter().map(groebner::to_vector).collect();
                let out = engine::run(self.ring.field(), &groebner::rank_one_shape(&self.ring), &vecs, EngineOptions::default())?;
                Ok(out.minimal.iter().map(|&i| self.gens[i].clone()).collect())
            })
            .as_ref()
            .map(|v| v.as_slice())
            .map_err(Clone::clone)
    }

    /// Minimal free resolution of the ideal itself.
    pub fn resolution(&self) -> Result<Arc<FreeResolution<F>>> {
        self.resolution
            .get_or_init(|| resolve::resolve_ideal(&self.ring, &self.gens).map(Arc::new))
            .clone()
    }

    pub fn betti_table(&self) -> Result<BettiTable> {
        self.resolution()?.betti_table()
    }

    /// Castelnuovo-Mumford regularity of the ideal as a module.
    pub fn regularity(&self) -> Result<i64> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        resolve::cm_regularity(&self.betti_table()?)
    }

    pub fn contains(&self, f: &Polynomial<F>) -> Result<bool> {
        self.groebner_basis()?.contains(f)
    }

    pub fn contains_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        for g in &other.gens {
            if !self.contains(g)? {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Equality as ideals, by comparing reduced Groebner bases.
    pub fn same_ideal(&self, other: &Ideal<F>) -> Result<bool> {
        if !self.ring.same_as(&other.ring) {
            return Err(Error::RingMismatch);
        }
        Ok(self.groebner_basis()? == other.groebner_basis()?)
    }

    fn require_standard(&self) -> Result<()> {
        if self.ring.is_standard_graded() {
            Ok(())
        } else {
            Err(Error::InvalidArgument("Hilbert functions need a standard graded ring".into()))
        }
    }

    /// Hilbert series of `S / I`.
    pub fn quotient_hilbert_series(&self) -> Result<HilbertSeries> {
        self.require_standard()?;
        let leads = self.groebner_basis()?.leading_monomials();
        Ok(HilbertSeries::of_monomial_quotient(self.ring.num_vars(), &leads))
    }

    /// `dim (S/I)_k`.
    pub fn quotient_hilbert_function(&self, k: i64) -> Result<i128> {
        Ok(self.quotient_hilbert_series()?.value(k))
    }

    /// `dim I_k`.
    pub fn hilbert_function(&self, k: i64) -> Result<i128> {
        let n = self.ring.num_vars() as i64;
        Ok(binomial(k + n - 1, n - 1) - self.quotient_hilbert_function(k)?)
    }

    /// Krull dimension of `S / I`.
    pub fn krull_dimension(&self) -> Result<usize> {
        Ok(self.quotient_hilbert_series()?.dimension())
    }

    /// Dimension of the projective scheme cut out by `I` (`-1` if empty).
    pub fn projective_dimension_of_zero_set(&self) -> Result<i64> {
        Ok(self.krull_dimension()? as i64 - 1)
    }

    /// Lowest degree of a nonzero element.
    pub fn initial_degree(&self) -> Option<u64> {
        self.gens.iter().filter_map(|g| g.degree()).min()
    }

    /// Largest degree of a minimal generator.
    pub fn max_generator_degree(&self) -> Result<u64> {
        Ok(self.minimal_generators()?.iter().filter_map(|g| g.degree()).max().unwrap_or(0))
    }

    /// A vector space basis of `I_d`, in echelon form with respect to the
    /// ring's order (`m - NF(m)` for every non-standard `m`).
    pub fn degree_basis(&self, d: u32) -> Result<Vec<Polynomial<F>>> {
        self.require_standard()?;
        let gb = self.groebner_basis()?;
        let leads = gb.leading_monomials();
        let k = self.ring.field();
        let mut out = Vec::new();
        let mut monos = Monomial::all_of_degree(self.ring.num_vars(), d);
        let ord = self.ring.order();
        monos.sort_by(|a, b| ord.cmp(b, a));
        for m in monos {
            if leads.iter().any(|l| l.divides(&m)) {
                let p = Polynomial::monomial(&self.ring, k.one(), m);
                let nf = gb.normal_form(&p)?;
                out.push(p.sub(&nf)?);
            }
        }
        Ok(out)
    }

    pub fn sum(&self, other: &Ideal<F>) -> Result<Self> {
        let mut g = self.gens.clone();
        g.extend(other.gens.iter().cloned());
        Self::new(&self.ring, g)
    }

    pub fn product(&self, other: &Ideal<F>) -> Result<Self> {
        let mut g = Vec::new();
        for a in &self.gens {
            for b in &other.gens {
                g.push(a.mul(b)?);
            }
        }
        Self::new(&self.ring, dedup_up_to_scalar(g))
    }

    /// `I^t`, generated by all `t`-fold products of the generators.
    pub fn power(&self, t: u32) -> Result<Self> {
        if t < 1 {
            return Err(Error::OutOfRange(format!("power {t}")));
        }
        if t == 1 {
            return Ok(self.clone());
        }
        let base: Vec<Polynomial<F>> = dedup_up_to_scalar(self.gens.clone());
        let m = base.len();
        let mut out = Vec::new();
        // multisets of generator indices, built in nondecreasing order
        let mut idx = vec![0usize; t as usize];
        if m == 0 {
            return Self::new(&self.ring, Vec::new());
        }
        loop {
            let mut p = base[idx[0]].clone();
            for &i in &idx[1..] {
                p = p.mul(&base[i])?;
            }
            out.push(p);
            // next multiset
            let mut pos = idx.len();
            while pos > 0 && idx[pos - 1] == m - 1 {
                pos -= 1;
            }
            if pos == 0 {
                break;
            }
            idx[pos - 1] += 1;
            let v = idx[pos - 1];
            for x in idx[pos..].iter_mut() {
                *x = v;
            }
        }
        Self::new(&self.ring, dedup_up_to_scalar(out))
    }

    /// `I : f`, read off the first coordinates of the syzygies of
    /// `(f, g_1, ..., g_m)`.
    pub fn colon(&self, f: &Polynomial<F>) -> Result<Self> {
        if f.is_zero() {
            return Err(Error::ZeroPolynomial);
        }
        if !f.is_homogeneous() {
            return Err(Error::Inhomogeneous(f.to_string()));
        }
        if f.degree() == Some(0) || self.is_zero() {
            return Ok(self.clone());
        }
        let mut inputs = vec![groebner::to_vector(f)];
        inputs.extend(self.gens.iter().map(groebner::to_vector));
        let syz = self.keep_all_syzygies(&inputs)?;
        let gens = syz
            .into_iter()
            .map(|s| {
                let terms: Vec<_> = s.into_iter().filter(|t| t.2 == 0).map(|(c, m, _)| (c, m)).collect();
                Polynomial::from_terms(&self.ring, terms)
            })
            .collect::<Result<Vec<_>>>()?;
        let mut all = self.gens.clone();
        all.extend(gens);
        Self::new(&self.ring, all)?.minimalized()
    }

    fn keep_all_syzygies(&self, inputs: &[groebner::Vector<F::Elem>]) -> Result<Vec<groebner::Vector<F::Elem>>> {
        let out = engine::run(
            self.ring.field(),
            &groebner::rank_one_shape(&self.ring),
            inputs,
            EngineOptions {
                syzygies: true,
                keep_all: true,
                ..Default::default()
            },
        )?;
        Ok(out.syzygies)
    }

    /// `I : J`.
    pub fn colon_ideal(&self, j: &Ideal<F>) -> Result<Self> {
        if j.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut acc: Option<Ideal<F>> = None;
        for g in &j.gens {
            let c = self.colon(g)?;
            acc = Some(match acc {
                None => c,
                Some(a) => a.intersect(&c)?,
            });
        }
        Ok(acc.unwrap())
    }

    /// `I ∩ J` from the syzygies of the concatenated generators.
    pub fn intersect(&self, other: &Ideal<F>) -> Result<Self> {
        if !self.ring.same_as(&other.ring) {
            return Err(Error::RingMismatch);
        }
        if self.is_zero() || other.is_zero() {
            return Self::new(&self.ring, Vec::new());
        }
        let m = self.gens.len();
        let mut inputs: Vec<_> = self.gens.iter().map(groebner::to_vector).collect();
        inputs.extend(other.gens.iter().map(groebner::to_vector));
        let syz = self.keep_all_syzygies(&inputs)?;
        let mut gens = Vec::new();
        for s in syz {
            let mut acc = Polynomial::zero(&self.ring);
            for (c, mono, p) in s {
                if (p as usize) < m {
                    acc = acc.add(&self.gens[p as usize].mul_term(&c, &mono))?;
                }
            }
            if !acc.is_zero() {
                gens.push(acc);
            }
        }
        Self::new(&self.ring, gens)?.minimalized()
    }

    /// Same ideal, generated by a minimal set of monic generators.
    pub fn minimalized(&self) -> Result<Self> {
        let g = self.minimal_generators()?.iter().map(|p| p.monic()).collect();
        Self::new(&self.ring, g)
    }

    /// Saturation with respect to `J` by iterated colons until the
    /// Groebner basis stops changing.
    pub fn saturate_by(&self, j: &Ideal<F>) -> Result<Self> {
        if j.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let mut cur = self.clone();
        loop {
            let next = cur.colon_ideal(j)?;
            if next.same_ideal(&cur)? {
                return Ok(cur);
            }
            cur = next;
        }
    }

    /// Saturation with respect to the irrelevant ideal.
    pub fn saturate(&self) -> Result<Arc<Self>> {
        self.saturation.get_or_init(|| self.compute_saturation().map(Arc::new)).clone()
    }

    pub fn is_saturated(&self) -> Result<bool> {
        let s = self.saturate()?;
        Ok(s.gens.len() == self.gens.len() && s.same_ideal(self)?)
    }

    /// `I^sat_d = I_d` above `B = max_l d_(r-1,l) - r` (local duality);
    /// below `B` the degree pieces are recovered one at a time from
    /// `I^sat_d = { g : x_i g in I^sat_(d+1) for all i }`.
    fn compute_saturation(&self) -> Result<Self> {
        self.require_standard()?;
        let r = self.ring.num_vars();
        if self.is_zero() {
            return Ok(self.clone());
        }
        let res = self.resolution()?;
        if res.length() + 1 < r {
            return self.saturated_copy(self.minimal_generators()?.to_vec());
        }
        let top = res.degrees(r - 1).iter().copied().max().unwrap();
        let bound = top - r as i64;
        if bound < 0 {
            return self.saturated_copy(self.minimal_generators()?.to_vec());
        }
        let gb = self.groebner_basis()?;
        let leads = gb.leading_monomials();
        let k = self.ring.field();
        let standard = |d: i64| -> Vec<Monomial> {
            Monomial::all_of_degree(r, d as u32)
                .into_iter()
                .filter(|m| !leads.iter().any(|l| l.divides(m)))
                .collect()
        };
        let mut extra: Vec<Polynomial<F>> = Vec::new();
        let mut upper_std = standard(bound + 1);
        let mut upper_index: BTreeMap<Monomial, usize> = upper_std.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
        let mut upper_w: Echelon<F> = Echelon::new(k.clone());
        for d in (0..=bound).rev() {
            let std_d = standard(d);
            let width = upper_std.len();
            let mut images: Vec<SparseRow<F::Elem>> = Vec::with_capacity(std_d.len());
            for m in &std_d {
                let mut entries = Vec::new();
                for i in 0..r {
                    let xm = m.mul(&Monomial::var(r, i));
                    let p = Polynomial::monomial(&self.ring, k.one(), xm);
                    let nf = gb.normal_form(&p)?;
                    let row = linalg::sparse_row(k, nf.terms().iter().map(|(c, t)| (upper_index[t], c.clone())));
                    let row = upper_w.reduce_full(row);
                    entries.extend(row.into_iter().map(|(c, v)| (i * width + c, v)));
                }
                images.push(entries);
            }
            let ker = linalg::kernel(k, &images, r * width);
            let mut w = Echelon::new(k.clone());
            for v in &ker {
                let terms = v.iter().map(|(j, c)| (c.clone(), std_d[*j].clone())).collect();
                extra.push(Polynomial::from_terms(&self.ring, terms)?);
                w.insert(v.clone());
            }
            upper_index = std_d.iter().cloned().enumerate().map(|(i, m)| (m, i)).collect();
            upper_std = std_d;
            upper_w = w;
        }
        let mut gens = extra;
        gens.extend(self.gens.iter().cloned());
        let sat = Self::new(&self.ring, gens)?;
        let g = sat.minimal_generators()?.to_vec();
        self.saturated_copy(g)
    }

    fn saturated_copy(&self, gens: Vec<Polynomial<F>>) -> Result<Self> {
        let s = Self::new(&self.ring, gens)?;
        // mark the result as its own saturation
        let me = Arc::new(Self::new(&self.ring, s.gens.clone())?);
        let _ = s.saturation.set(Ok(me));
        Ok(s)
    }

    /// `I ∩ k[kept variables]`, computed with a block elimination order.
    /// The result lives in a new ring on the kept variables.
    pub fn eliminate(&self, drop: &[usize]) -> Result<Self> {
        let n = self.ring.num_vars();
        let drop_set: BTreeSet<usize> = drop.iter().copied().collect();
        if drop_set.iter().any(|&i| i >= n) {
            return Err(Error::OutOfRange("eliminated variable".into()));
        }
        let kept: Vec<usize> = (0..n).filter(|i| !drop_set.contains(i)).collect();
        if kept.is_empty() {
            return Err(Error::InvalidArgument("cannot eliminate every variable".into()));
        }
        let mut perm: Vec<usize> = drop_set.iter().copied().collect();
        perm.extend(kept.iter().copied());
        let names: Vec<String> = perm.iter().map(|&i| self.ring.variable_names()[i].clone()).collect();
        let weights: Vec<u32> = perm.iter().map(|&i| self.ring.weights()[i]).collect();
        let aux = PolynomialRing::with_weights(
            &names,
            self.ring.field().clone(),
            MonomialOrder::BlockElimination(drop_set.len()),
            weights,
        )?;
        let mut to_aux = vec![0; n];
        for (new, &old) in perm.iter().enumerate() {
            to_aux[old] = new;
        }
        let gens = self.gens.iter().map(|g| g.embed(&aux, &to_aux)).collect::<Result<Vec<_>>>()?;
        let sub_names: Vec<String> = kept.iter().map(|&i| self.ring.variable_names()[i].clone()).collect();
        let sub_weights: Vec<u32> = kept.iter().map(|&i| self.ring.weights()[i]).collect();
        let sub = PolynomialRing::with_weights(&sub_names, self.ring.field().clone(), MonomialOrder::Grevlex, sub_weights)?;
        if gens.is_empty() {
            return Self::new(&sub, Vec::new());
        }
        let gb = groebner::buchberger(&gens, aux.order())?;
        let nd = drop_set.len();
        let mut to_sub = vec![0; aux.num_vars()];
        for i in 0..kept.len() {
            to_sub[nd + i] = i;
        }
        let mut out = Vec::new();
        for g in gb.elements() {
            if g.terms().iter().all(|(_, m)| m.exponents()[..nd].iter().all(|&e| e == 0)) {
                out.push(g.embed(&sub, &to_sub)?);
            }
        }
        Self::new(&sub, out)
    }

    /// Least `d` such that `(I^sat)_d` generates an ideal with the same
    /// saturation as `I`.
    pub fn d_invariant(&self) -> Result<u32> {
        if self.is_zero() {
            return Err(Error::ZeroIdeal);
        }
        let sat = self.saturate()?;
        let target = sat.quotient_hilbert_series()?;
        let lo = sat.initial_degree().unwrap_or(0) as u32;
        let hi = sat.max_generator_degree()? as u32;
        let n = self.ring.num_vars() as i64;
        for d in lo..=hi {
            let j = Self::new(&self.ring, sat.degree_basis(d)?)?;
            let hs = j.quotient_hilbert_series()?;
            if hs.dimension() == target.dimension() && (0..=n + 1).all(|e| hs.polynomial_value(e) == target.polynomial_value(e)) {
                return Ok(d);
            }
        }
        Ok(hi)
    }

    /// Writes the ideal in the text format read by the command line tool.
    pub fn to_ideal_file(&self, ring_name: &str, ideal_name: &str) -> String {
        let mut s = format!(
            "ring {ring_name} vars {} field {}\nideal {ideal_name}\n",
            self.ring.variable_names().join(" "),
            self.ring.field().spec()
        );
        for g in &self.gens {
            s.push_str(&g.to_string());
            s.push('\n');
        }
        s
    }
}

fn augmentation_gens<F: Field>(res: &FreeResolution<F>) -> Vec<Polynomial<F>> {
    match res.augmentation() {
        None => Vec::new(),
        Some(a) => (0..a.ncols()).map(|j| a.entry(0, j)).collect(),
    }
}

fn dedup_up_to_scalar<F: Field>(gens: Vec<Polynomial<F>>) -> Vec<Polynomial<F>> {
    let mut seen: Vec<Polynomial<F>> = Vec::new();
    let mut out = Vec::new();
    for g in gens {
        if g.is_zero() {
            continue;
        }
        let m = g.monic();
        if !seen.contains(&m) {
            seen.push(m);
            out.push(g);
        }
    }
    out
}

#[cfg(test)]
mod tests;
