//! Sparse vectors of a graded free module `S^r`, stored as terms
//! `c * m * e_p` sorted decreasingly. Terms compare by monomial first and
//! then by position, lower positions being larger.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::field::Field;
use crate::poly::{Monomial, MonomialOrder};

pub type VTerm<E> = (E, Monomial, u32);
pub type Vector<E> = Vec<VTerm<E>>;

#[inline]
pub fn term_cmp(ord: MonomialOrder, a: &Monomial, pa: u32, b: &Monomial, pb: u32) -> Ordering {
    ord.cmp(a, b).then_with(|| pb.cmp(&pa))
}

/// Sorts and merges an arbitrary list of terms.
pub fn normalize<F: Field>(k: &F, ord: MonomialOrder, terms: Vec<VTerm<F::Elem>>) -> Vector<F::Elem> {
    let mut acc: HashMap<(Monomial, u32), F::Elem> = HashMap::with_capacity(terms.len());
    for (c, m, p) in terms {
        match acc.get_mut(&(m.clone(), p)) {
            Some(e) => *e = k.add(e, &c),
            None => {
                acc.insert((m, p), c);
            }
        }
    }
    let mut v: Vector<F::Elem> = acc
        .into_iter()
        .filter(|(_, c)| !k.is_zero(c))
        .map(|((m, p), c)| (c, m, p))
        .collect();
    v.sort_by(|a, b| term_cmp(ord, &b.1, b.2, &a.1, a.2));
    v
}

/// `f - c * m * g`.
pub fn sub_mul<F: Field>(
    k: &F,
    ord: MonomialOrder,
    f: &[VTerm<F::Elem>],
    c: &F::Elem,
    m: &Monomial,
    g: &[VTerm<F::Elem>],
) -> Vector<F::Elem> {
    let mut out = Vec::with_capacity(f.len() + g.len());
    let (mut i, mut j) = (0, 0);
    let mut gj: Option<Monomial> = g.first().map(|t| t.1.mul(m));
    while i < f.len() || j < g.len() {
        let o = match (i < f.len(), &gj) {
            (false, _) => Ordering::Less,
            (true, None) => Ordering::Greater,
            (true, Some(gm)) => term_cmp(ord, &f[i].1, f[i].2, gm, g[j].2),
        };
        match o {
            Ordering::Greater => {
                out.push(f[i].clone());
                i += 1;
            }
            Ordering::Less => {
                let v = k.neg(&k.mul(c, &g[j].0));
                out.push((v, gj.take().unwrap(), g[j].2));
                j += 1;
                gj = g.get(j).map(|t| t.1.mul(m));
            }
            Ordering::Equal => {
                let v = k.sub(&f[i].0, &k.mul(c, &g[j].0));
                if !k.is_zero(&v) {
                    out.push((v, f[i].1.clone(), f[i].2));
                }
                i += 1;
                j += 1;
                gj = g.get(j).map(|t| t.1.mul(m));
            }
        }
    }
    out
}

/// `c * m * g`.
pub fn mul_term<F: Field>(k: &F, c: &F::Elem, m: &Monomial, g: &[VTerm<F::Elem>]) -> Vector<F::Elem> {
    if k.is_zero(c) {
        return Vec::new();
    }
    g.iter().map(|(d, t, p)| (k.mul(c, d), t.mul(m), *p)).collect()
}

pub fn scale<F: Field>(k: &F, c: &F::Elem, g: &mut [VTerm<F::Elem>]) {
    for t in g.iter_mut() {
        t.0 = k.mul(c, &t.0);
    }
}

/// Degree of a homogeneous vector (given by its first term).
pub fn vdegree<E>(v: &[VTerm<E>], weights: &[u32], shifts: &[i64]) -> Option<i64> {
    v.first().map(|(_, m, p)| m.weighted_degree(weights) as i64 + shifts[*p as usize])
}

pub fn is_homogeneous<E>(v: &[VTerm<E>], weights: &[u32], shifts: &[i64]) -> bool {
    match vdegree(v, weights, shifts) {
        None => true,
        Some(d) => v.iter().all(|(_, m, p)| m.weighted_degree(weights) as i64 + shifts[*p as usize] == d),
    }
}
