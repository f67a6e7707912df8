//! Graded local cohomology and sheaf cohomology of finitely presented
//! modules, computed from Ext against `S` by local duality.

mod checks;
mod module;
mod table;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::engine::{self, EngineOptions, ModuleShape};
use crate::hilbert::HilbertSeries;
use crate::resolve::FreeResolution;

pub use checks::{
    normality_index, phi_surjectivity, sheaf_regularity_of_structure_sheaf, vanishing_check, vanishing_thresholds, Normality,
    PhiAnalysis, PhiReport, VanishingReport, VanishingRow,
};
pub use module::{GradedModule, PowerKind};
pub use table::{default_window, CohomologyTable};

/// Hilbert series of `Ext^j(M, S)` for `j = 0..=r`, plus the Hilbert
/// series of `M`. Everything else is read off these.
#[derive(Clone, Debug)]
pub struct ModuleCohomology {
    nvars: usize,
    hilbert: HilbertSeries,
    ext: Vec<HilbertSeries>,
    regularity: Option<i64>,
}

/// Hilbert series of the cokernel of `d^T : F_(j-1)^* -> F_j^*`.
fn dual_cokernel<F: Field>(res: &FreeResolution<F>, j: usize) -> Result<HilbertSeries> {
    let ring = res.ring();
    let n = ring.num_vars();
    let shifts: Vec<i64> = res.degrees(j).iter().map(|d| -d).collect();
    let Some(d) = res.differential(j) else {
        return Ok(HilbertSeries::free(n, &shifts));
    };
    let rows: Vec<_> = d.transpose_rows().into_iter().filter(|r| !r.is_empty()).collect();
    if rows.is_empty() {
        return Ok(HilbertSeries::free(n, &shifts));
    }
    let shape = ModuleShape {
        nvars: n,
        weights: ring.weights().to_vec(),
        order: ring.order(),
        shifts: shifts.clone(),
    };
    let out = engine::run(ring.field(), &shape, &rows, EngineOptions::default())?;
    let leads: Vec<_> = out.gb.iter().map(|v| (v[0].1.clone(), v[0].2)).collect();
    Ok(HilbertSeries::of_module_quotient(n, &shifts, &leads))
}

impl ModuleCohomology {
    pub(crate) fn from_resolution<F: Field>(res: &FreeResolution<F>, regularity: Option<i64>) -> Result<Self> {
        let n = res.ring().num_vars();
        if !res.ring().is_standard_graded() {
            return Err(Error::InvalidArgument("cohomology needs a standard graded ring".into()));
        }
        let pd = res.length();
        let mut coker = Vec::with_capacity(pd + 2);
        for j in 0..=pd {
            coker.push(dual_cokernel(res, j)?);
        }
        let mut ext = Vec::with_capacity(n + 1);
        for j in 0..=n {
            let s = if res.is_zero() || j > pd {
                HilbertSeries::zero(n)
            } else if j == pd {
                coker[j].clone()
            } else {
                let next = HilbertSeries::free(n, &res.degrees(j + 1).iter().map(|d| -d).collect::<Vec<_>>());
                coker[j].add(&coker[j + 1]).sub(&next)
            };
            ext.push(s);
        }
        Ok(ModuleCohomology {
            nvars: n,
            hilbert: res.hilbert_series(),
            ext,
            regularity,
        })
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn hilbert_series(&self) -> &HilbertSeries {
        &self.hilbert
    }

    /// Hilbert series of `Ext^j(M, S)`.
    pub fn ext(&self, j: usize) -> Option<&HilbertSeries> {
        self.ext.get(j)
    }

    /// Castelnuovo-Mumford regularity of `M` (None for the zero module).
    pub fn regularity(&self) -> Option<i64> {
        self.regularity
    }

    fn check_index(&self, i: i64) -> Result<usize> {
        if i < 0 || i > self.nvars as i64 {
            return Err(Error::OutOfRange(format!("cohomological index {i}")));
        }
        Ok(i as usize)
    }

    /// `dim H^i_m(M)_k = dim Ext^(r-i)(M, S)_(-k-r)`.
    pub fn local(&self, i: i64, k: i64) -> Result<u64> {
        let i = self.check_index(i)?;
        let r = self.nvars as i64;
        let v = self.ext[self.nvars - i].value(-k - r);
        Ok(u64::try_from(v).expect("dimensions are nonnegative"))
    }

    /// Largest `k` with `H^i_m(M)_k != 0`; None when the module vanishes.
    pub fn local_end(&self, i: i64) -> Result<Option<i64>> {
        let i = self.check_index(i)?;
        let r = self.nvars as i64;
        Ok(self.ext[self.nvars - i].initial_degree().map(|d| -d - r))
    }

    /// `dim H^i(P^(r-1), M~(k))`.
    pub fn sheaf(&self, i: i64, k: i64) -> Result<u64> {
        if i < 0 {
            return Err(Error::OutOfRange(format!("cohomological index {i}")));
        }
        if i >= 1 {
            if i + 1 > self.nvars as i64 {
                return Ok(0);
            }
            return self.local(i + 1, k);
        }
        let h0 = self.hilbert.value(k) - self.local(0, k)? as i128 + self.local(1, k)? as i128;
        Ok(u64::try_from(h0).expect("dimensions are nonnegative"))
    }

    /// Largest `k` with `H^i(M~(k)) != 0` for `i >= 1`.
    pub fn sheaf_end(&self, i: i64) -> Result<Option<i64>> {
        if i < 1 {
            return Err(Error::OutOfRange(format!("cohomological index {i}")));
        }
        if i + 1 > self.nvars as i64 {
            return Ok(None);
        }
        self.local_end(i + 1)
    }

    /// Least `m` with `H^i(M~(m - i)) = 0` for all `i > 0`; None when no
    /// higher cohomology occurs at all.
    pub fn sheaf_regularity(&self) -> Result<Option<i64>> {
        let mut best: Option<i64> = None;
        for i in 1..self.nvars as i64 {
            if let Some(e) = self.sheaf_end(i)? {
                let m = e + i + 1;
                best = Some(best.map_or(m, |b| b.max(m)));
            }
        }
        Ok(best)
    }

    /// Krull dimension of `M`.
    pub fn dimension(&self) -> usize {
        if self.hilbert.is_zero() {
            0
        } else {
            self.hilbert.dimension()
        }
    }

    /// True when `M` has no associated primes of dimension below `dim M`,
    /// tested by `dim Ext^j(M, S) < r - j` for every `j > r - dim M`.
    pub fn is_unmixed(&self) -> bool {
        if self.hilbert.is_zero() {
            return true;
        }
        let r = self.nvars;
        let c = r - self.dimension();
        (c + 1..=r).all(|j| self.ext[j].is_zero() || self.ext[j].dimension() < r - j)
    }

    /// `sum (-1)^i h^i(M~(k))`.
    pub fn euler_characteristic(&self, k: i64) -> Result<i128> {
        let mut acc = 0i128;
        for i in 0..self.nvars as i64 {
            let h = self.sheaf(i, k)? as i128;
            acc += if i % 2 == 0 { h } else { -h };
        }
        Ok(acc)
    }
}

/// `dim H^i_m(M)_k`.
pub fn local_cohomology_dim<F: Field>(m: &GradedModule<F>, i: i64, k: i64) -> Result<u64> {
    m.local_cohomology_dim(i, k)
}

/// `dim H^i(M~(k))`.
pub fn sheaf_cohomology_dim<F: Field>(m: &GradedModule<F>, i: i64, k: i64) -> Result<u64> {
    m.sheaf_cohomology_dim(i, k)
}

/// `I / I^2`.
pub fn conormal_module<F: Field>(ideal: &crate::ideals::Ideal<F>) -> Result<GradedModule<F>> {
    GradedModule::conormal(ideal)
}

pub fn module_power<F: Field>(m: &GradedModule<F>, a: u32, kind: PowerKind) -> Result<GradedModule<F>> {
    m.power(a, kind)
}

#[cfg(test)]
mod tests;
