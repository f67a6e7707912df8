//! Hilbert series of graded quotients `F / U` computed from the leading
//! monomials of a Groebner basis of `U`.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::poly::Monomial;

/// `HS(t) = N(t) / (1 - t)^nvars` with a Laurent numerator `N`.
#[derive(Clone, Debug, PartialEq, Eq, Default)]
pub struct HilbertSeries {
    nvars: usize,
    numerator: BTreeMap<i64, i128>,
}

impl HilbertSeries {
    pub fn zero(nvars: usize) -> Self {
        HilbertSeries {
            nvars,
            numerator: BTreeMap::new(),
        }
    }

    /// Series of the free module `sum_p S(-shifts[p])`.
    pub fn free(nvars: usize, shifts: &[i64]) -> Self {
        let mut s = Self::zero(nvars);
        for &d in shifts {
            s.add_term(d, 1);
        }
        s
    }

    /// Series of `S / J` for the monomial ideal `J` spanned by `gens`.
    pub fn of_monomial_quotient(nvars: usize, gens: &[Monomial]) -> Self {
        let num = numerator(gens.to_vec());
        let mut s = Self::zero(nvars);
        for (d, c) in num.into_iter().enumerate() {
            s.add_term(d as i64, c);
        }
        s
    }

    /// Series of `F / U` where `F = sum_p S(-shifts[p])` and `leads` are the
    /// leading terms `(monomial, position)` of a Groebner basis of `U`.
    pub fn of_module_quotient(nvars: usize, shifts: &[i64], leads: &[(Monomial, u32)]) -> Self {
        let mut per_pos: Vec<Vec<Monomial>> = vec![Vec::new(); shifts.len()];
        for (m, p) in leads {
            per_pos[*p as usize].push(m.clone());
        }
        let mut s = Self::zero(nvars);
        for (p, gens) in per_pos.into_iter().enumerate() {
            for (d, c) in numerator(gens).into_iter().enumerate() {
                s.add_term(d as i64 + shifts[p], c);
            }
        }
        s
    }

    fn add_term(&mut self, d: i64, c: i128) {
        if c == 0 {
            return;
        }
        let e = self.numerator.entry(d).or_insert(0);
        *e += c;
        if *e == 0 {
            self.numerator.remove(&d);
        }
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn numerator(&self) -> &BTreeMap<i64, i128> {
        &self.numerator
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_empty()
    }

    pub fn add(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (&d, &c) in &other.numerator {
            s.add_term(d, c);
        }
        s
    }

    pub fn sub(&self, other: &Self) -> Self {
        let mut s = self.clone();
        for (&d, &c) in &other.numerator {
            s.add_term(d, -c);
        }
        s
    }

    /// Twist: series of `M(-d)`.
    pub fn shift(&self, d: i64) -> Self {
        HilbertSeries {
            nvars: self.nvars,
            numerator: self.numerator.iter().map(|(&e, &c)| (e + d, c)).collect(),
        }
    }

    /// Lowest degree with a nonzero graded piece.
    pub fn initial_degree(&self) -> Option<i64> {
        self.numerator.keys().next().copied()
    }

    /// Value of the Hilbert function at `d`.
    pub fn value(&self, d: i64) -> i128 {
        let n = self.nvars as i64;
        let mut acc = 0i128;
        for (&e, &c) in &self.numerator {
            if e > d {
                break;
            }
            acc += c * binomial(d - e + n - 1, n - 1);
        }
        acc
    }

    /// Numerator after cancelling every factor `(1 - t)`, with the Krull
    /// dimension of the module.
    fn reduced(&self) -> (i64, BTreeMap<i64, i128>, usize) {
        if self.numerator.is_empty() {
            return (0, BTreeMap::new(), 0);
        }
        let lo = *self.numerator.keys().next().unwrap();
        let hi = *self.numerator.keys().last().unwrap();
        let mut q: Vec<i128> = (lo..=hi).map(|d| *self.numerator.get(&d).unwrap_or(&0)).collect();
        let mut dim = self.nvars;
        while dim > 0 && q.iter().sum::<i128>() == 0 {
            // divide by (1 - t): the quotient has prefix sums as coefficients
            let mut out = Vec::with_capacity(q.len() - 1);
            let mut acc = 0;
            for &c in &q[..q.len() - 1] {
                acc += c;
                out.push(acc);
            }
            q = out;
            dim -= 1;
        }
        let map = q.into_iter().enumerate().filter(|(_, c)| *c != 0).map(|(i, c)| (lo + i as i64, c)).collect();
        (lo, map, dim)
    }

    /// Krull dimension of the module.
    pub fn dimension(&self) -> usize {
        self.reduced().2
    }

    /// Multiplicity (degree) of the module.
    pub fn multiplicity(&self) -> i128 {
        self.reduced().1.values().sum()
    }

    /// The Hilbert polynomial evaluated at `d`.
    pub fn polynomial_value(&self, d: i64) -> i128 {
        let (_, q, dim) = self.reduced();
        if dim == 0 {
            return 0;
        }
        q.iter().map(|(&e, &c)| c * binomial_poly(d - e + dim as i64 - 1, dim as i64 - 1)).sum()
    }

    /// Largest degree where the Hilbert function and polynomial differ.
    pub fn regularity_index(&self) -> Option<i64> {
        let (_, q, dim) = self.reduced();
        if q.is_empty() {
            return None;
        }
        // they agree for d > deg Q - dim
        let top = *q.keys().last().unwrap() - dim as i64;
        let lo = self.initial_degree().unwrap().min(top) - dim as i64 - 1;
        (lo..=top).rev().find(|&d| self.value(d) != self.polynomial_value(d))
    }

    pub fn check_nvars(&self, other: &Self) -> Result<()> {
        if self.nvars != other.nvars {
            return Err(Error::LengthMismatch(self.nvars, other.nvars));
        }
        Ok(())
    }
}

/// `C(n, k)` for integers, zero when `n < k` or `n < 0`.
pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k || n < 0 {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: i128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as i128 / (i + 1) as i128;
    }
    acc
}

/// The polynomial `x (x - 1) ... (x - k + 1) / k!` at an arbitrary integer.
pub fn binomial_poly(x: i64, k: i64) -> i128 {
    let mut num: i128 = 1;
    let mut den: i128 = 1;
    for i in 0..k {
        num *= (x - i) as i128;
        den *= (i + 1) as i128;
    }
    num / den
}

fn minimize(mut gens: Vec<Monomial>) -> Vec<Monomial> {
    gens.sort_by_key(|m| m.degree());
    gens.dedup();
    let mut out: Vec<Monomial> = Vec::with_capacity(gens.len());
    for g in gens {
        if !out.iter().any(|h| h.divides(&g)) {
            out.push(g);
        }
    }
    out
}

fn poly_mul(a: &[i128], b: &[i128]) -> Vec<i128> {
    let mut out = vec![0; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    out
}

fn poly_add_shifted(a: &mut Vec<i128>, b: &[i128], shift: usize) {
    if a.len() < b.len() + shift {
        a.resize(b.len() + shift, 0);
    }
    for (i, &y) in b.iter().enumerate() {
        a[i + shift] += y;
    }
}

/// Numerator of the Hilbert series of `S / (gens)` over `(1 - t)^n`.
fn numerator(gens: Vec<Monomial>) -> Vec<i128> {
    let gens = minimize(gens);
    if gens.is_empty() {
        return vec![1];
    }
    if gens.iter().any(|g| g.is_one()) {
        return vec![0];
    }
    let nvars = gens[0].nvars();
    let pairwise_coprime = gens
        .iter()
        .enumerate()
        .all(|(i, a)| gens[i + 1..].iter().all(|b| a.is_coprime(b)));
    if pairwise_coprime {
        let mut acc = vec![1i128];
        for g in &gens {
            let mut f = vec![0i128; g.degree() as usize + 1];
            f[0] = 1;
            f[g.degree() as usize] -= 1;
            acc = poly_mul(&acc, &f);
        }
        return acc;
    }
    // pivot on the variable occurring in the most generators
    let mut counts = vec![0usize; nvars];
    for g in &gens {
        for (i, &e) in g.exponents().iter().enumerate() {
            if e > 0 {
                counts[i] += 1;
            }
        }
    }
    let var = (0..nvars).max_by_key(|&i| (counts[i], std::cmp::Reverse(i))).unwrap();
    // a pure power of the pivot variable would make J + p = J
    let mut exps: Vec<u16> = gens
        .iter()
        .filter(|g| g.degree() != g.exponents()[var] as u32)
        .map(|g| g.exponents()[var])
        .filter(|&e| e > 0)
        .collect();
    exps.sort_unstable();
    let e = exps[exps.len() / 2];
    let mut pe = vec![0u16; nvars];
    pe[var] = e;
    let pivot = Monomial::from_slice(&pe);

    // N(J) = N(J + p) + t^deg(p) N(J : p)
    let mut plus = gens.clone();
    plus.push(pivot.clone());
    let colon: Vec<Monomial> = gens
        .iter()
        .map(|g| {
            let gcd = g.gcd(&pivot);
            gcd.quotient_of(g)
        })
        .collect();
    let mut out = numerator(plus);
    let c = numerator(colon);
    poly_add_shifted(&mut out, &c, e as usize);
    while out.len() > 1 && *out.last().unwrap() == 0 {
        out.pop();
    }
    out
}
