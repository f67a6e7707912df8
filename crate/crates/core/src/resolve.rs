//! Minimal graded free resolutions and Betti tables.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::engine::{self, EngineOptions, ModuleShape};
use crate::groebner::vector::{self, Vector};
use crate::hilbert::{binomial, HilbertSeries};
use crate::linalg::{self, SparseRow};
use crate::poly::{Monomial, Polynomial, PolynomialRing};

/// A homogeneous map of graded free modules `sum_j S(-col_degrees[j]) ->
/// sum_i S(-row_degrees[i])`, stored by columns.
#[derive(Clone, Debug)]
pub struct GradedMatrix<F: Field> {
    ring: Arc<PolynomialRing<F>>,
    row_degrees: Vec<i64>,
    col_degrees: Vec<i64>,
    columns: Vec<Vector<F::Elem>>,
}

impl<F: Field> GradedMatrix<F> {
    pub(crate) fn from_columns(
        ring: &Arc<PolynomialRing<F>>,
        row_degrees: Vec<i64>,
        col_degrees: Vec<i64>,
        columns: Vec<Vector<F::Elem>>,
    ) -> Self {
        GradedMatrix {
            ring: ring.clone(),
            row_degrees,
            col_degrees,
            columns,
        }
    }

    /// Builds a matrix from polynomial entries given row by row. Column
    /// degrees are inferred from the entries.
    pub fn from_rows(ring: &Arc<PolynomialRing<F>>, row_degrees: Vec<i64>, rows: &[Vec<Polynomial<F>>]) -> Result<Self> {
        if rows.len() != row_degrees.len() {
            return Err(Error::LengthMismatch(rows.len(), row_degrees.len()));
        }
        let ncols = rows.first().map(|r| r.len()).unwrap_or(0);
        let mut columns = Vec::with_capacity(ncols);
        let mut col_degrees = Vec::with_capacity(ncols);
        for j in 0..ncols {
            let mut terms = Vec::new();
            let mut deg: Option<i64> = None;
            for (i, row) in rows.iter().enumerate() {
                if row.len() != ncols {
                    return Err(Error::LengthMismatch(row.len(), ncols));
                }
                let e = &row[j];
                if e.is_zero() {
                    continue;
                }
                if !e.is_homogeneous() {
                    return Err(Error::Inhomogeneous(e.to_string()));
                }
                let d = e.degree().unwrap() as i64 + row_degrees[i];
                if deg.is_some_and(|x| x != d) {
                    return Err(Error::Inhomogeneous(format!("column {j}")));
                }
                deg = Some(d);
                terms.extend(e.terms().iter().map(|(c, m)| (c.clone(), m.clone(), i as u32)));
            }
            columns.push(vector::normalize(ring.field(), ring.order(), terms));
            col_degrees.push(deg.unwrap_or(0));
        }
        Ok(GradedMatrix {
            ring: ring.clone(),
            row_degrees,
            col_degrees,
            columns,
        })
    }

    pub fn ring(&self) -> &Arc<PolynomialRing<F>> {
        &self.ring
    }

    pub fn nrows(&self) -> usize {
        self.row_degrees.len()
    }

    pub fn ncols(&self) -> usize {
        self.columns.len()
    }

    pub fn row_degrees(&self) -> &[i64] {
        &self.row_degrees
    }

    pub fn col_degrees(&self) -> &[i64] {
        &self.col_degrees
    }

    pub(crate) fn columns(&self) -> &[Vector<F::Elem>] {
        &self.columns
    }

    pub fn entry(&self, i: usize, j: usize) -> Polynomial<F> {
        let terms = self.columns[j]
            .iter()
            .filter(|t| t.2 as usize == i)
            .map(|(c, m, _)| (c.clone(), m.clone()))
            .collect();
        Polynomial::from_terms(&self.ring, terms).expect("entry of a matrix over the ring")
    }

    /// True when some entry is a nonzero constant.
    pub fn has_unit_entry(&self) -> bool {
        self.columns.iter().flatten().any(|(_, m, _)| m.is_one())
    }

    /// Rows as vectors of the dual module: row `i` becomes a vector whose
    /// position `j` holds entry `(i, j)`.
    pub(crate) fn transpose_rows(&self) -> Vec<Vector<F::Elem>> {
        let mut rows: Vec<Vec<_>> = vec![Vec::new(); self.nrows()];
        for (j, col) in self.columns.iter().enumerate() {
            for (c, m, i) in col {
                rows[*i as usize].push((c.clone(), m.clone(), j as u32));
            }
        }
        let k = self.ring.field();
        rows.into_iter().map(|r| vector::normalize(k, self.ring.order(), r)).collect()
    }

    /// `self * other` applied to the columns of `other`.
    pub fn compose(&self, other: &GradedMatrix<F>) -> Result<Vec<Vector<F::Elem>>> {
        if other.nrows() != self.ncols() {
            return Err(Error::LengthMismatch(other.nrows(), self.ncols()));
        }
        let k = self.ring.field();
        Ok(other
            .columns
            .iter()
            .map(|col| {
                let mut terms = Vec::new();
                for (c, m, p) in col {
                    terms.extend(vector::mul_term(k, c, m, &self.columns[*p as usize]));
                }
                vector::normalize(k, self.ring.order(), terms)
            })
            .collect())
    }

    /// The degree-`d` piece as a map of vector spaces; returns
    /// `(images of the source basis, dimension of the target)`.
    pub fn degree_piece(&self, d: i64) -> (Vec<SparseRow<F::Elem>>, usize) {
        let n = self.ring.num_vars();
        let (target_index, tdim) = basis_index(n, &self.row_degrees, d);
        let k = self.ring.field();
        let mut images = Vec::new();
        for (j, col) in self.columns.iter().enumerate() {
            let e = d - self.col_degrees[j];
            if e < 0 {
                continue;
            }
            for m in Monomial::all_of_degree(n, e as u32) {
                let entries = col.iter().map(|(c, t, p)| (target_index[&(t.mul(&m), *p)], c.clone()));
                images.push(linalg::sparse_row(k, entries));
            }
        }
        (images, tdim)
    }
}

fn basis_index(n: usize, degrees: &[i64], d: i64) -> (BTreeMap<(Monomial, u32), usize>, usize) {
    let mut idx = BTreeMap::new();
    for (p, &s) in degrees.iter().enumerate() {
        if d - s < 0 {
            continue;
        }
        for m in Monomial::all_of_degree(n, (d - s) as u32) {
            let len = idx.len();
            idx.insert((m, p as u32), len);
        }
    }
    let len = idx.len();
    (idx, len)
}

/// A minimal graded free resolution `0 <- F_0 <- F_1 <- ... <- F_p`.
///
/// When the resolved object is an ideal, `augmentation` is the row of
/// minimal generators `F_0 -> S`.
#[derive(Clone, Debug)]
pub struct FreeResolution<F: Field> {
    ring: Arc<PolynomialRing<F>>,
    augmentation: Option<GradedMatrix<F>>,
    differentials: Vec<GradedMatrix<F>>,
    f0: Vec<i64>,
}

impl<F: Field> FreeResolution<F> {
    pub fn ring(&self) -> &Arc<PolynomialRing<F>> {
        &self.ring
    }

    /// Projective dimension: index of the last nonzero free module.
    pub fn length(&self) -> usize {
        self.differentials.len()
    }

    pub fn is_zero(&self) -> bool {
        self.f0.is_empty()
    }

    /// `d_i : F_i -> F_(i-1)` for `i >= 1`.
    pub fn differential(&self, i: usize) -> Option<&GradedMatrix<F>> {
        if i == 0 {
            return None;
        }
        self.differentials.get(i - 1)
    }

    pub fn differentials(&self) -> &[GradedMatrix<F>] {
        &self.differentials
    }

    pub fn augmentation(&self) -> Option<&GradedMatrix<F>> {
        self.augmentation.as_ref()
    }

    /// Degree shifts of `F_i`.
    pub fn degrees(&self, i: usize) -> &[i64] {
        if i == 0 {
            &self.f0
        } else {
            self.differentials.get(i - 1).map(|d| d.col_degrees()).unwrap_or(&[])
        }
    }

    /// Checks `d_i * d_(i+1) = 0`, including the augmentation.
    pub fn is_complex(&self) -> Result<bool> {
        let mut maps: Vec<&GradedMatrix<F>> = Vec::new();
        if let Some(a) = &self.augmentation {
            maps.push(a);
        }
        maps.extend(self.differentials.iter());
        for w in maps.windows(2) {
            if w[0].compose(w[1])?.iter().any(|c| !c.is_empty()) {
                return Ok(false);
            }
        }
        Ok(true)
    }

    /// Checks exactness at every interior spot in degree `d` by ranks.
    pub fn is_exact_in_degree(&self, d: i64) -> bool {
        let k = self.ring.field();
        let n = self.ring.num_vars();
        let mut maps: Vec<&GradedMatrix<F>> = Vec::new();
        if let Some(a) = &self.augmentation {
            maps.push(a);
        }
        maps.extend(self.differentials.iter());
        let ranks: Vec<usize> = maps
            .iter()
            .map(|m| {
                let (img, _) = m.degree_piece(d);
                linalg::rank(k, img)
            })
            .collect();
        for i in 0..maps.len() {
            let src_dim: usize = maps[i]
                .col_degrees()
                .iter()
                .map(|&s| binomial(d - s + n as i64 - 1, n as i64 - 1) as usize)
                .sum();
            let kernel = src_dim - ranks[i];
            let next = ranks.get(i + 1).copied().unwrap_or(0);
            if kernel != next {
                return false;
            }
        }
        true
    }

    pub fn betti_table(&self) -> Result<BettiTable> {
        for (i, d) in self.differentials.iter().enumerate() {
            if d.has_unit_entry() {
                return Err(Error::NonMinimal(i + 1));
            }
        }
        let mut t = BettiTable::default();
        for i in 0..=self.length() {
            for &j in self.degrees(i) {
                *t.entries.entry((i, j)).or_insert(0) += 1;
            }
        }
        Ok(t)
    }

    /// Hilbert series of the resolved module, from the alternating sum.
    pub fn hilbert_series(&self) -> HilbertSeries {
        let n = self.ring.num_vars();
        let mut s = HilbertSeries::zero(n);
        for i in 0..=self.length() {
            let f = HilbertSeries::free(n, self.degrees(i));
            s = if i % 2 == 0 { s.add(&f) } else { s.sub(&f) };
        }
        s
    }
}

/// Repeatedly computes minimal generators and syzygies of the submodule
/// spanned by `vectors` in `sum_p S(-shifts[p])`.
fn resolve_levels<F: Field>(
    ring: &Arc<PolynomialRing<F>>,
    shifts: Vec<i64>,
    vectors: Vec<Vector<F::Elem>>,
) -> Result<Vec<GradedMatrix<F>>> {
    let k = ring.field();
    let mut levels = Vec::new();
    let mut shifts = shifts;
    let mut vectors = vectors;
    while !vectors.is_empty() {
        let shape = ModuleShape {
            nvars: ring.num_vars(),
            weights: ring.weights().to_vec(),
            order: ring.order(),
            shifts: shifts.clone(),
        };
        let out = engine::run(
            k,
            &shape,
            &vectors,
            EngineOptions {
                syzygies: true,
                ..Default::default()
            },
        )?;
        if out.minimal.is_empty() {
            break;
        }
        let cols: Vec<Vector<F::Elem>> = out.minimal.iter().map(|&i| vectors[i].clone()).collect();
        let degs: Vec<i64> = cols
            .iter()
            .map(|c| vector::vdegree(c, &shape.weights, &shifts).unwrap())
            .collect();
        levels.push(GradedMatrix::from_columns(ring, shifts, degs.clone(), cols));
        if levels.len() > ring.num_vars() + 1 {
            return Err(Error::OutOfRange("resolution length".into()));
        }
        shifts = degs;
        vectors = out.syzygies;
    }
    Ok(levels)
}

/// Minimal free resolution of the ideal generated by `gens`.
pub fn resolve_ideal<F: Field>(ring: &Arc<PolynomialRing<F>>, gens: &[Polynomial<F>]) -> Result<FreeResolution<F>> {
    let vectors: Vec<Vector<F::Elem>> = gens
        .iter()
        .filter(|g| !g.is_zero())
        .map(|g| {
            if !g.is_homogeneous() {
                return Err(Error::Inhomogeneous(g.to_string()));
            }
            Ok(crate::groebner::to_vector(g))
        })
        .collect::<Result<_>>()?;
    let mut levels = resolve_levels(ring, vec![0], vectors)?;
    if levels.is_empty() {
        return Ok(FreeResolution {
            ring: ring.clone(),
            augmentation: None,
            differentials: Vec::new(),
            f0: Vec::new(),
        });
    }
    let aug = levels.remove(0);
    Ok(FreeResolution {
        ring: ring.clone(),
        f0: aug.col_degrees().to_vec(),
        augmentation: Some(aug),
        differentials: levels,
    })
}

/// Minimal free resolution of the cokernel of `presentation`, whose
/// target must already be minimal (no unit entries).
pub fn resolve_cokernel<F: Field>(presentation: &GradedMatrix<F>) -> Result<FreeResolution<F>> {
    if presentation.has_unit_entry() {
        return Err(Error::NonMinimal(1));
    }
    let ring = presentation.ring();
    let cols: Vec<Vector<F::Elem>> = presentation.columns.iter().filter(|c| !c.is_empty()).cloned().collect();
    let levels = resolve_levels(ring, presentation.row_degrees.clone(), cols)?;
    Ok(FreeResolution {
        ring: ring.clone(),
        augmentation: None,
        differentials: levels,
        f0: presentation.row_degrees.clone(),
    })
}

/// Graded Betti numbers `b_(i,j)`.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct BettiTable {
    entries: BTreeMap<(usize, i64), u64>,
}

#[derive(Serialize)]
struct BettiTriple {
    i: usize,
    j: i64,
    b: u64,
}

impl BettiTable {
    pub fn get(&self, i: usize, j: i64) -> u64 {
        self.entries.get(&(i, j)).copied().unwrap_or(0)
    }

    pub fn entries(&self) -> &BTreeMap<(usize, i64), u64> {
        &self.entries
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn projective_dimension(&self) -> Option<usize> {
        self.entries.keys().map(|k| k.0).max()
    }

    pub fn total(&self, i: usize) -> u64 {
        self.entries.iter().filter(|(k, _)| k.0 == i).map(|(_, v)| v).sum()
    }

    /// Alternating sum of the shifted free modules, as a Hilbert series.
    pub fn hilbert_series(&self, nvars: usize) -> HilbertSeries {
        let mut s = HilbertSeries::zero(nvars);
        for (&(i, j), &b) in &self.entries {
            let mut f = HilbertSeries::zero(nvars);
            for _ in 0..b {
                f = f.add(&HilbertSeries::free(nvars, &[j]));
            }
            s = if i % 2 == 0 { s.add(&f) } else { s.sub(&f) };
        }
        s
    }

    /// Conventional grid: rows are `j - i`, columns are `i`.
    pub fn to_grid(&self) -> String {
        if self.entries.is_empty() {
            return "0\n".into();
        }
        let pd = self.projective_dimension().unwrap();
        let lo = self.entries.keys().map(|&(i, j)| j - i as i64).min().unwrap();
        let hi = self.entries.keys().map(|&(i, j)| j - i as i64).max().unwrap();
        let mut cells: Vec<Vec<String>> = Vec::new();
        let mut header = vec![String::new()];
        header.extend((0..=pd).map(|i| i.to_string()));
        cells.push(header);
        let mut total = vec!["total:".to_string()];
        total.extend((0..=pd).map(|i| self.total(i).to_string()));
        cells.push(total);
        for r in lo..=hi {
            let mut row = vec![format!("{r}:")];
            for i in 0..=pd {
                let b = self.get(i, r + i as i64);
                row.push(if b == 0 { ".".into() } else { b.to_string() });
            }
            cells.push(row);
        }
        let ncols = pd + 2;
        let widths: Vec<usize> = (0..ncols).map(|c| cells.iter().map(|r| r[c].len()).max().unwrap()).collect();
        let mut out = String::new();
        for row in cells {
            let mut line = String::new();
            for (c, cell) in row.iter().enumerate() {
                if c > 0 {
                    line.push(' ');
                }
                line.push_str(&format!("{:>w$}", cell, w = widths[c]));
            }
            out.push_str(line.trim_end());
            out.push('\n');
        }
        out
    }

    pub fn to_json(&self) -> serde_json::Value {
        let triples: Vec<BettiTriple> = self.entries.iter().map(|(&(i, j), &b)| BettiTriple { i, j, b }).collect();
        serde_json::to_value(triples).expect("serializable")
    }
}

impl fmt::Display for BettiTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_grid())
    }
}

/// `max (j - i)` over the nonzero Betti numbers.
pub fn cm_regularity(b: &BettiTable) -> Result<i64> {
    b.entries
        .keys()
        .map(|&(i, j)| j - i as i64)
        .max()
        .ok_or_else(|| Error::InvalidArgument("empty Betti table".into()))
}

/// Least `m` with `j - i <= m` for all nonzero `b_(i,j)` with `i <= p`.
pub fn partial_regularity(b: &BettiTable, p: usize) -> Result<i64> {
    let pd = b
        .projective_dimension()
        .ok_or_else(|| Error::InvalidArgument("empty Betti table".into()))?;
    if p > pd {
        return Err(Error::OutOfRange(format!("p = {p} (projective dimension {pd})")));
    }
    Ok(b.entries
        .keys()
        .filter(|k| k.0 <= p)
        .map(|&(i, j)| j - i as i64)
        .max()
        .unwrap())
}

/// Resolution of the ideal generated by `gens`.
pub fn free_resolution<F: Field>(gens: &[Polynomial<F>]) -> Result<FreeResolution<F>> {
    let ring = gens.first().ok_or(Error::EmptyGenerators)?.ring().clone();
    resolve_ideal(&ring, gens)
}

/// Betti table of a resolution.
pub fn betti_table<F: Field>(r: &FreeResolution<F>) -> Result<BettiTable> {
    r.betti_table()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::Rationals;
    use crate::poly::parse_polynomial;

    fn ideal(nvars: usize, s: &[&str]) -> (Arc<PolynomialRing<Rationals>>, Vec<Polynomial<Rationals>>) {
        let r = PolynomialRing::standard(nvars, Rationals).unwrap();
        let g = s.iter().map(|t| parse_polynomial(&r, t).unwrap()).collect();
        (r, g)
    }

    #[test]
    fn koszul() {
        let (_, g) = ideal(2, &["x0", "x1"]);
        let res = free_resolution(&g).unwrap();
        assert_eq!(res.length(), 1);
        assert_eq!(res.degrees(0), &[1, 1]);
        assert_eq!(res.degrees(1), &[2]);
        let b = res.betti_table().unwrap();
        assert_eq!((b.get(0, 1), b.get(1, 2)), (2, 1));
        assert_eq!(cm_regularity(&b).unwrap(), 1);
        assert_eq!(partial_regularity(&b, 1).unwrap(), 1);
        assert!(res.is_complex().unwrap());
    }

    #[test]
    fn twisted_cubic_table() {
        let (_, g) = ideal(4, &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"]);
        let res = free_resolution(&g).unwrap();
        let b = res.betti_table().unwrap();
        assert_eq!(b.get(0, 2), 3);
        assert_eq!(b.get(1, 3), 2);
        assert_eq!(b.projective_dimension(), Some(1));
        assert_eq!(cm_regularity(&b).unwrap(), 2);
        assert_eq!(partial_regularity(&b, 0).unwrap(), 2);
        assert_eq!(partial_regularity(&b, 1).unwrap(), 2);
        assert!(partial_regularity(&b, 2).is_err());
        assert!(res.is_complex().unwrap());
        for d in 0..6 {
            assert!(res.is_exact_in_degree(d));
        }
        assert_eq!(b.to_grid(), "       0 1\ntotal: 3 2\n    2: 3 2\n");
    }

    #[test]
    fn principal() {
        let (_, g) = ideal(3, &["x0^3 + x1^3 + x2^3"]);
        let res = free_resolution(&g).unwrap();
        assert_eq!(res.length(), 0);
        assert_eq!(res.betti_table().unwrap().get(0, 3), 1);
    }

    #[test]
    fn betti_hilbert_identity_for_points() {
        // three general points in P^2
        let (_, g) = ideal(3, &["x0*x1", "x0*x2", "x1*x2"]);
        let res = free_resolution(&g).unwrap();
        let b = res.betti_table().unwrap();
        assert_eq!(b.get(1, 3), 2);
        let hs = b.hilbert_series(3);
        // ideal of 3 points: HF(I)_d = C(d+2,2) - 3 for d >= 1
        for d in 1..6 {
            assert_eq!(hs.value(d), binomial(d + 2, 2) - 3);
        }
    }
}
