//! Vanishing ranges for tensor powers of the conormal module, normality
//! and the surjectivity of `H^0(I^a(k)) -> H^0(S^a N*(k))`.

use std::sync::Arc;

use serde::Serialize;

use super::{GradedModule, ModuleCohomology};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideals::Ideal;
use crate::resolve;

/// Least `m` such that `O_X` is `m`-regular, for `X = V(I)` of positive
/// dimension.
pub fn sheaf_regularity_of_structure_sheaf<F: Field>(ideal: &Ideal<F>) -> Result<i64> {
    let sat = ideal.saturate()?;
    let coh = GradedModule::quotient_ring(&sat).cohomology()?;
    coh.sheaf_regularity()?
        .ok_or_else(|| Error::InvalidArgument("structure sheaf has no higher cohomology".into()))
}

/// Thresholds for `H^(n-q)(T^a N*(k)) = 0`, `q = 0..=p`, as
/// `(n - q, threshold)`.
pub fn vanishing_thresholds(a: u32, p: usize, r_p: i64, r_x: i64, n: usize) -> Vec<(usize, i64)> {
    let a = a as i64;
    let n_i = n as i64;
    (0..=p.min(n))
        .map(|q| {
            let t = match q {
                0 => a * r_p + r_x - n_i,
                1 => a * r_p + 1 + r_x - n_i,
                _ => (a + q as i64 - 1) * r_p + r_x - n_i,
            };
            (n - q, t)
        })
        .collect()
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VanishingRow {
    /// Cohomological index `n - q`.
    pub index: usize,
    pub threshold: i64,
    /// Least `k` from which `h^index(T^a N*(k))` vanishes (None: never
    /// nonzero).
    pub observed: Option<i64>,
    /// `threshold - observed`.
    pub gap: Option<i64>,
    /// `(k, h)` over the window.
    pub values: Vec<(i64, u64)>,
    pub pass: bool,
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct VanishingReport {
    pub a: u32,
    pub n: usize,
    pub p: usize,
    pub r_p: i64,
    pub r_x: i64,
    pub window: (i64, i64),
    pub rows: Vec<VanishingRow>,
    pub pass: bool,
}

/// Computes `h^(n-q)(T^a N*(k))` and compares with the thresholds.
/// `p` defaults to `n - 1`.
pub fn vanishing_check<F: Field>(ideal: &Ideal<F>, a: u32, p: Option<usize>, window: (i64, i64)) -> Result<VanishingReport> {
    if a < 1 {
        return Err(Error::OutOfRange(format!("a = {a}")));
    }
    if window.0 > window.1 {
        return Err(Error::InvalidArgument("empty window".into()));
    }
    let sat = ideal.saturate()?;
    let ox = GradedModule::quotient_ring(&sat).cohomology()?;
    let dim = ox.dimension();
    if dim < 2 {
        return Err(Error::InvalidArgument("the subscheme must have positive dimension".into()));
    }
    if !ox.is_unmixed() {
        return Err(Error::NotEquidimensional);
    }
    let n = dim - 1;
    let p = p.unwrap_or(n - 1);
    if p > n - 1 {
        return Err(Error::OutOfRange(format!("p = {p} exceeds dim X - 1 = {}", n - 1)));
    }
    let betti = sat.betti_table()?;
    let pd = betti.projective_dimension().unwrap_or(0);
    let r_p = resolve::partial_regularity(&betti, p.min(pd))?;
    let r_x = ox
        .sheaf_regularity()?
        .ok_or_else(|| Error::InvalidArgument("structure sheaf has no higher cohomology".into()))?;
    let module = GradedModule::conormal(&sat)?.tensor_power(a)?;
    let coh = module.cohomology()?;
    let mut rows = Vec::new();
    for (index, threshold) in vanishing_thresholds(a, p, r_p, r_x, n) {
        rows.push(vanishing_row(&coh, index, threshold, window)?);
    }
    let pass = rows.iter().all(|r| r.pass);
    Ok(VanishingReport {
        a,
        n,
        p,
        r_p,
        r_x,
        window,
        rows,
        pass,
    })
}

fn vanishing_row(coh: &ModuleCohomology, index: usize, threshold: i64, window: (i64, i64)) -> Result<VanishingRow> {
    let i = index as i64;
    let values = (window.0..=window.1).map(|k| Ok((k, coh.sheaf(i, k)?))).collect::<Result<Vec<_>>>()?;
    let observed = if i >= 1 {
        coh.sheaf_end(i)?.map(|e| e + 1)
    } else {
        values.iter().rev().find(|v| v.1 != 0).map(|v| v.0 + 1)
    };
    let in_window = values.iter().all(|&(k, h)| k < threshold || h == 0);
    let pass = in_window && observed.is_none_or(|o| o <= threshold);
    Ok(VanishingRow {
        index,
        threshold,
        observed,
        gap: observed.map(|o| threshold - o),
        values,
        pass,
    })
}

#[derive(Clone, Copy, Debug, Serialize, PartialEq, Eq)]
pub struct Normality {
    /// Largest `k` with `h^1(I~(k)) != 0`, if any.
    pub h1_end: Option<i64>,
    /// Least `n0` in the window with `h^1(I~(k)) = 0` for every `k >= n0`;
    /// the window bottom when nothing survives inside the window.
    pub n0: i64,
    pub vanishes_on_window: bool,
}

/// The `n0` for which `X` is `n0`-normal.
pub fn normality_index<F: Field>(ideal: &Ideal<F>, window: (i64, i64)) -> Result<Normality> {
    let sat = ideal.saturate()?;
    let coh = GradedModule::of_ideal(&sat)?.cohomology()?;
    let end = coh.sheaf_end(1)?;
    let vanishes_on_window = end.is_none_or(|e| e < window.0);
    let n0 = match end {
        Some(e) if e >= window.0 => e + 1,
        _ => window.0,
    };
    Ok(Normality {
        h1_end: end,
        n0,
        vanishes_on_window,
    })
}

#[derive(Clone, Debug, Serialize, PartialEq, Eq)]
pub struct PhiReport {
    pub a: u32,
    pub k: i64,
    /// `h^0(I^a(k))`.
    pub source_dim: u64,
    /// `h^0(I^(a+1)(k))`, the kernel.
    pub kernel_dim: u64,
    pub rank: u64,
    /// `h^0(S^a N*(k))`.
    pub target_dim: u64,
    /// `h^0((I^a / I^(a+1))~(k))`.
    pub quotient_dim: u64,
    pub surjective: bool,
    pub cokernel_dim: u64,
    /// Whether `I^a / I^(a+1)` and `S^a N*` have equal `h^0` at `k`.
    pub lci_consistent: bool,
}

/// Everything needed to evaluate the map in several degrees.
pub struct PhiAnalysis<F: Field> {
    a: u32,
    source: Arc<Ideal<F>>,
    kernel: Arc<Ideal<F>>,
    target: Arc<ModuleCohomology>,
    quotient: Arc<ModuleCohomology>,
}

impl<F: Field> PhiAnalysis<F> {
    pub fn new(ideal: &Ideal<F>, a: u32) -> Result<Self> {
        if a < 1 {
            return Err(Error::OutOfRange(format!("a = {a}")));
        }
        let sat = ideal.saturate()?;
        let source = sat.power(a)?.saturate()?;
        let kernel = sat.power(a + 1)?.saturate()?;
        let target = GradedModule::conormal(&sat)?.symmetric_power(a)?.cohomology()?;
        let quotient = GradedModule::power_quotient(&sat, a)?.cohomology()?;
        Ok(PhiAnalysis {
            a,
            source,
            kernel,
            target,
            quotient,
        })
    }

    /// Rank of the map in degree `k`: its kernel is `H^0(I^(a+1)(k))`.
    pub fn at(&self, k: i64) -> Result<PhiReport> {
        let source_dim = if k < 0 { 0 } else { self.source.hilbert_function(k)? as u64 };
        let kernel_dim = if k < 0 { 0 } else { self.kernel.hilbert_function(k)? as u64 };
        let rank = source_dim - kernel_dim;
        let target_dim = self.target.sheaf(0, k)?;
        let quotient_dim = self.quotient.sheaf(0, k)?;
        Ok(PhiReport {
            a: self.a,
            k,
            source_dim,
            kernel_dim,
            rank,
            target_dim,
            quotient_dim,
            surjective: rank == target_dim,
            cokernel_dim: target_dim.saturating_sub(rank),
            lci_consistent: quotient_dim == target_dim,
        })
    }
}

pub fn phi_surjectivity<F: Field>(ideal: &Ideal<F>, a: u32, k: i64) -> Result<PhiReport> {
    PhiAnalysis::new(ideal, a)?.at(k)
}
