//! Oracles shared by the integration tests. Nothing in this file calls
//! into the library; `suites` runs the library against these oracles.

#![allow(dead_code)]

pub mod suites;

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};
use rand::Rng;
use rand_chacha::ChaCha8Rng;

pub type Exps = Vec<u16>;
/// Dense-free polynomial: exponent vector to nonzero coefficient.
pub type Poly = BTreeMap<Exps, BigRational>;

pub fn q(v: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(v))
}

pub fn monomials(n: usize, d: u32) -> Vec<Exps> {
    fn go(n: usize, d: u32, prefix: &mut Exps, out: &mut Vec<Exps>) {
        if prefix.len() == n - 1 {
            prefix.push(d as u16);
            out.push(prefix.clone());
            prefix.pop();
            return;
        }
        for e in (0..=d).rev() {
            prefix.push(e as u16);
            go(n, d - e, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    go(n, d, &mut Vec::new(), &mut out);
    out
}

pub fn degree(p: &Poly) -> u32 {
    p.keys().next().map_or(0, |e| e.iter().map(|&x| x as u32).sum())
}

pub fn mul_monomial(p: &Poly, m: &Exps) -> Poly {
    p.iter()
        .map(|(e, c)| (e.iter().zip(m).map(|(a, b)| a + b).collect(), c.clone()))
        .collect()
}

pub fn add_scaled(acc: &mut Poly, p: &Poly, c: &BigRational) {
    for (e, v) in p {
        let entry = acc.entry(e.clone()).or_insert_with(BigRational::zero);
        *entry += v * c;
        if entry.is_zero() {
            acc.remove(e);
        }
    }
}

pub fn mul(a: &Poly, b: &Poly) -> Poly {
    let mut out = Poly::new();
    for (e, c) in a {
        add_scaled(&mut out, &mul_monomial(b, e), c);
    }
    out
}

pub fn to_string(p: &Poly) -> String {
    if p.is_empty() {
        return "0".into();
    }
    let mut s = String::new();
    for (e, c) in p {
        let mono: Vec<String> = e
            .iter()
            .enumerate()
            .filter(|(_, &x)| x > 0)
            .map(|(i, &x)| if x == 1 { format!("x{i}") } else { format!("x{i}^{x}") })
            .collect();
        let neg = c < &BigRational::zero();
        match (s.is_empty(), neg) {
            (true, true) => s.push('-'),
            (true, false) => {}
            (false, true) => s.push_str(" - "),
            (false, false) => s.push_str(" + "),
        }
        let a = if neg { -c.clone() } else { c.clone() };
        s.push_str(&a.to_string());
        for m in mono {
            s.push('*');
            s.push_str(&m);
        }
    }
    s
}

/// Row echelon form keyed by pivot monomial; every stored row has
/// coefficient 1 at its largest monomial.
#[derive(Default)]
pub struct Echelon {
    rows: BTreeMap<Exps, Poly>,
}

impl Echelon {
    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    fn reduce(&self, mut v: Poly) -> Poly {
        let mut out = Poly::new();
        while let Some((k, c)) = v.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) {
            match self.rows.get(&k) {
                Some(r) => add_scaled(&mut v, r, &-c),
                None => {
                    v.remove(&k);
                    out.insert(k, c);
                }
            }
        }
        out
    }

    pub fn insert(&mut self, v: Poly) -> bool {
        let r = self.reduce(v);
        let Some((k, c)) = r.iter().next_back().map(|(k, c)| (k.clone(), c.clone())) else {
            return false;
        };
        let inv = BigRational::one() / c;
        let r = r.into_iter().map(|(e, x)| (e, x * &inv)).collect();
        self.rows.insert(k, r);
        true
    }

    pub fn contains(&self, v: &Poly) -> bool {
        self.reduce(v.clone()).is_empty()
    }
}

/// Span of `m * g` over all monomials `m` with `deg m + deg g = d`.
pub fn degree_span(gens: &[Poly], n: usize, d: u32) -> Echelon {
    let mut ech = Echelon::default();
    for g in gens {
        let dg = degree(g);
        if dg > d {
            continue;
        }
        for m in monomials(n, d - dg) {
            ech.insert(mul_monomial(g, &m));
        }
    }
    ech
}

pub fn binomial(n: i64, k: i64) -> i128 {
    if k < 0 || n < k {
        return 0;
    }
    let mut r: i128 = 1;
    for i in 0..k {
        r = r * (n - i) as i128 / (i + 1) as i128;
    }
    r
}

/// `dim (S/I)_d` by linear algebra.
pub fn quotient_hf(gens: &[Poly], n: usize, d: i64) -> i128 {
    if d < 0 {
        return 0;
    }
    binomial(d + n as i64 - 1, n as i64 - 1) - degree_span(gens, n, d as u32).rank() as i128
}

pub fn random_form(rng: &mut ChaCha8Rng, n: usize, d: u32, terms: usize) -> Poly {
    let monos = monomials(n, d);
    let mut p = Poly::new();
    while p.is_empty() {
        for _ in 0..terms {
            let m = monos[rng.gen_range(0..monos.len())].clone();
            let c = rng.gen_range(-3i64..=3);
            add_scaled(&mut p, &[(m, q(1))].into_iter().collect(), &q(c));
        }
    }
    p
}

/// Parses the corpus-style generator strings (`x0*x2 - x1^2`) into oracle
/// polynomials; integer coefficients and `+`/`-` only.
pub fn parse_simple(s: &str, n: usize) -> Poly {
    let mut p = Poly::new();
    let s = s.replace(' ', "").replace('-', "+-");
    for term in s.split('+').filter(|t| !t.is_empty()) {
        let (sign, body) = match term.strip_prefix('-') {
            Some(b) => (-1, b),
            None => (1, term),
        };
        let mut coeff = sign;
        let mut e = vec![0u16; n];
        for f in body.split('*') {
            if let Ok(c) = f.parse::<i64>() {
                coeff *= c;
                continue;
            }
            let (var, pow) = match f.split_once('^') {
                Some((v, k)) => (v, k.parse::<u16>().unwrap()),
                None => (f, 1),
            };
            let i: usize = var.trim_start_matches('x').parse().unwrap();
            e[i] += pow;
        }
        add_scaled(&mut p, &[(e, q(1))].into_iter().collect(), &q(coeff));
    }
    p
}

/// `h^0(P^1, O(m))`.
pub fn p1_h0(m: i64) -> u64 {
    (m + 1).max(0) as u64
}

/// `h^1(P^1, O(m))`.
pub fn p1_h1(m: i64) -> u64 {
    (-m - 1).max(0) as u64
}
