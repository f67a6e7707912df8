//! Sparse exact linear algebra: incremental row echelon forms, ranks and
//! kernels over any [`Field`].

use std::cmp::Ordering;
use std::collections::BTreeMap;

use crate::field::Field;

/// A sparse row: `(column, value)` pairs with increasing columns and no
/// zero values.
pub type SparseRow<E> = Vec<(usize, E)>;

/// `a - c * b`.
pub fn row_sub_mul<F: Field>(k: &F, a: &[(usize, F::Elem)], c: &F::Elem, b: &[(usize, F::Elem)]) -> SparseRow<F::Elem> {
    let mut out = Vec::with_capacity(a.len() + b.len());
    let (mut i, mut j) = (0, 0);
    while i < a.len() || j < b.len() {
        let o = if i == a.len() {
            Ordering::Greater
        } else if j == b.len() {
            Ordering::Less
        } else {
            a[i].0.cmp(&b[j].0)
        };
        match o {
            Ordering::Less => {
                out.push(a[i].clone());
                i += 1;
            }
            Ordering::Greater => {
                out.push((b[j].0, k.neg(&k.mul(c, &b[j].1))));
                j += 1;
            }
            Ordering::Equal => {
                let v = k.sub(&a[i].1, &k.mul(c, &b[j].1));
                if !k.is_zero(&v) {
                    out.push((a[i].0, v));
                }
                i += 1;
                j += 1;
            }
        }
    }
    out
}

/// Builds a sparse row from unsorted entries, summing duplicates.
pub fn sparse_row<F: Field>(k: &F, entries: impl IntoIterator<Item = (usize, F::Elem)>) -> SparseRow<F::Elem> {
    let mut acc: BTreeMap<usize, F::Elem> = BTreeMap::new();
    for (c, v) in entries {
        let e = acc.entry(c).or_insert_with(|| k.zero());
        *e = k.add(e, &v);
    }
    acc.into_iter().filter(|(_, v)| !k.is_zero(v)).collect()
}

/// Rows with pairwise distinct leading columns, each normalized to a
/// leading coefficient of one.
#[derive(Clone, Debug)]
pub struct Echelon<F: Field> {
    field: F,
    rows: Vec<SparseRow<F::Elem>>,
    pivots: BTreeMap<usize, usize>,
}

impl<F: Field> Echelon<F> {
    pub fn new(field: F) -> Self {
        Echelon {
            field,
            rows: Vec::new(),
            pivots: BTreeMap::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    pub fn rows(&self) -> &[SparseRow<F::Elem>] {
        &self.rows
    }

    pub fn pivot_columns(&self) -> impl Iterator<Item = usize> + '_ {
        self.pivots.keys().copied()
    }

    /// Eliminates pivot columns from the front of `row` until its leading
    /// column is free.
    pub fn reduce_leading(&self, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        while let Some((col, c)) = row.first() {
            match self.pivots.get(col) {
                Some(&r) => {
                    let c = c.clone();
                    row = row_sub_mul(&self.field, &row, &c, &self.rows[r]);
                }
                None => break,
            }
        }
        row
    }

    /// Eliminates every pivot column from `row`.
    pub fn reduce_full(&self, mut row: SparseRow<F::Elem>) -> SparseRow<F::Elem> {
        let mut i = 0;
        while i < row.len() {
            match self.pivots.get(&row[i].0) {
                Some(&r) => {
                    let c = row[i].1.clone();
                    let head: SparseRow<F::Elem> = row[..i].to_vec();
                    let tail = row_sub_mul(&self.field, &row[i..], &c, &self.rows[r]);
                    row = head;
                    row.extend(tail);
                }
                None => i += 1,
            }
        }
        row
    }

    /// Adds `row` to the span; returns whether the rank grew.
    pub fn insert(&mut self, row: SparseRow<F::Elem>) -> bool {
        let row = self.reduce_leading(row);
        self.push_reduced(row)
    }

    fn push_reduced(&mut self, mut row: SparseRow<F::Elem>) -> bool {
        let Some((col, c)) = row.first() else {
            return false;
        };
        let col = *col;
        let inv = self.field.inv(c);
        for e in row.iter_mut() {
            e.1 = self.field.mul(&inv, &e.1);
        }
        self.pivots.insert(col, self.rows.len());
        self.rows.push(row);
        true
    }

    pub fn contains(&self, row: SparseRow<F::Elem>) -> bool {
        self.reduce_leading(row).is_empty()
    }
}

/// Rank of a list of sparse rows.
pub fn rank<F: Field>(k: &F, rows: impl IntoIterator<Item = SparseRow<F::Elem>>) -> usize {
    let mut e = Echelon::new(k.clone());
    for r in rows {
        e.insert(r);
    }
    e.rank()
}

/// Basis of the kernel of the linear map sending the `j`-th basis vector to
/// `images[j]` (all images live in a space with `target_dim` coordinates).
pub fn kernel<F: Field>(k: &F, images: &[SparseRow<F::Elem>], target_dim: usize) -> Vec<SparseRow<F::Elem>> {
    let mut e = Echelon::new(k.clone());
    let mut out = Vec::new();
    for (j, img) in images.iter().enumerate() {
        let mut row = img.clone();
        row.push((target_dim + j, k.one()));
        let row = e.reduce_leading(row);
        if let Some((col, _)) = row.first() {
            if *col >= target_dim {
                out.push(row.iter().map(|(c, v)| (c - target_dim, v.clone())).collect());
            }
        }
        e.push_reduced(row);
    }
    out
}
