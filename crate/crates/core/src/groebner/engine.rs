//! Degree-by-degree Buchberger algorithm for homogeneous submodules of a
//! graded free module, with optional tracking of lifts.
//!
//! Inputs are fed in increasing degree. At each degree the S-pairs are
//! reduced first, then the inputs of that degree. An input that reduces to
//! zero lies in the span of what came before it, so the inputs that survive
//! form a minimal generating set. Lifts of pairs that reduce to zero generate
//! the syzygies of the surviving inputs.

use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::field::Field;
use crate::groebner::vector::{self, term_cmp, Vector};
use crate::poly::{Monomial, MonomialOrder};

/// Shape of the ambient free module `F = sum_p S(-shifts[p])`.
#[derive(Clone, Debug)]
pub struct ModuleShape {
    pub nvars: usize,
    pub weights: Vec<u32>,
    pub order: MonomialOrder,
    pub shifts: Vec<i64>,
}

impl ModuleShape {
    pub fn new(nvars: usize, order: MonomialOrder, shifts: Vec<i64>) -> Self {
        ModuleShape {
            nvars,
            weights: vec![1; nvars],
            order,
            shifts,
        }
    }

    pub fn rank(&self) -> usize {
        self.shifts.len()
    }

    pub fn degree_of(&self, m: &Monomial, p: u32) -> i64 {
        m.weighted_degree(&self.weights) as i64 + self.shifts[p as usize]
    }
}

#[derive(Clone, Copy, Debug, Default)]
pub struct EngineOptions {
    /// Record syzygies among the inputs.
    pub syzygies: bool,
    /// Keep every input as a generator (syzygy coordinates index all inputs)
    /// instead of discarding redundant ones.
    pub keep_all: bool,
    /// Interreduce the final basis.
    pub reduce: bool,
    /// Abort after this many S-pair reductions.
    pub pair_limit: Option<usize>,
}

#[derive(Clone, Debug)]
pub struct EngineOutput<E> {
    /// Monic Groebner basis, sorted by degree then insertion.
    pub gb: Vec<Vector<E>>,
    /// Indices of inputs forming a minimal generating set, increasing.
    pub minimal: Vec<usize>,
    /// Generators of the syzygy module. Coordinates index `minimal`, or all
    /// inputs when `keep_all` is set.
    pub syzygies: Vec<Vector<E>>,
    pub pairs_reduced: usize,
}

struct Elem<E> {
    v: Vector<E>,
    lead: Monomial,
    pos: u32,
    mask: u64,
    lift: Vector<E>,
}

#[derive(Clone, Debug)]
struct Pair {
    lcm: Monomial,
    i: usize,
    j: usize,
}

struct Engine<'a, F: Field> {
    k: &'a F,
    shape: &'a ModuleShape,
    opts: EngineOptions,
    elems: Vec<Elem<F::Elem>>,
    by_pos: Vec<Vec<usize>>,
    /// Pending pairs keyed by degree.
    pairs: BTreeMap<i64, Vec<Pair>>,
    product_criterion: bool,
    syz: Vec<Vector<F::Elem>>,
    pairs_reduced: usize,
}

/// Runs the engine on homogeneous `inputs` in the free module `shape`.
pub fn run<F: Field>(
    k: &F,
    shape: &ModuleShape,
    inputs: &[Vector<F::Elem>],
    opts: EngineOptions,
) -> Result<EngineOutput<F::Elem>> {
    for v in inputs {
        if v.iter().any(|t| t.2 as usize >= shape.rank()) {
            return Err(Error::OutOfRange("vector position".into()));
        }
        if !vector::is_homogeneous(v, &shape.weights, &shape.shifts) {
            return Err(Error::Inhomogeneous("module element".into()));
        }
    }
    let mut eng = Engine {
        k,
        shape,
        opts,
        elems: Vec::new(),
        by_pos: vec![Vec::new(); shape.rank()],
        pairs: BTreeMap::new(),
        product_criterion: shape.rank() == 1 && !opts.syzygies,
        syz: Vec::new(),
        pairs_reduced: 0,
    };
    let mut order: Vec<(i64, usize)> = Vec::new();
    for (idx, v) in inputs.iter().enumerate() {
        match vector::vdegree(v, &shape.weights, &shape.shifts) {
            Some(d) => order.push((d, idx)),
            None => {
                if opts.syzygies && opts.keep_all {
                    eng.syz.push(vec![(k.one(), Monomial::one(shape.nvars), idx as u32)]);
                }
            }
        }
    }
    order.sort();
    let mut minimal = Vec::new();
    let mut next_input = 0;
    loop {
        let pair_deg = eng.pairs.keys().next().copied();
        let input_deg = order.get(next_input).map(|x| x.0);
        let d = match (pair_deg, input_deg) {
            (None, None) => break,
            (Some(a), None) => a,
            (None, Some(b)) => b,
            (Some(a), Some(b)) => a.min(b),
        };
        if pair_deg == Some(d) {
            let mut batch = eng.pairs.remove(&d).unwrap();
            let ord = shape.order;
            batch.sort_by(|a, b| ord.cmp(&a.lcm, &b.lcm).then(a.i.cmp(&b.i)).then(a.j.cmp(&b.j)));
            for p in batch {
                eng.process_pair(p)?;
            }
        }
        while next_input < order.len() && order[next_input].0 == d {
            let idx = order[next_input].1;
            next_input += 1;
            if eng.process_input(idx, &inputs[idx]) {
                minimal.push(idx);
            }
        }
    }
    minimal.sort_unstable();
    if opts.reduce {
        eng.interreduce();
    }
    let mut syzygies = std::mem::take(&mut eng.syz);
    if opts.syzygies && !opts.keep_all {
        let mut remap = vec![u32::MAX; inputs.len()];
        for (new, &old) in minimal.iter().enumerate() {
            remap[old] = new as u32;
        }
        for s in &mut syzygies {
            for t in s.iter_mut() {
                debug_assert_ne!(remap[t.2 as usize], u32::MAX);
                t.2 = remap[t.2 as usize];
            }
            s.sort_by(|a, b| term_cmp(shape.order, &b.1, b.2, &a.1, a.2));
        }
    }
    Ok(EngineOutput {
        gb: eng.elems.into_iter().map(|e| e.v).collect(),
        minimal,
        syzygies,
        pairs_reduced: eng.pairs_reduced,
    })
}

impl<'a, F: Field> Engine<'a, F> {
    fn find_divisor(&self, m: &Monomial, p: u32, skip: Option<usize>) -> Option<usize> {
        let mask = m.support_mask();
        self.by_pos[p as usize].iter().copied().find(|&i| {
            let e = &self.elems[i];
            Some(i) != skip && e.mask & !mask == 0 && e.lead.divides(m)
        })
    }

    /// Reduces `v` (and its lift) until the leading term is irreducible, or
    /// fully when `full` is set.
    fn reduce(&self, mut v: Vector<F::Elem>, lift: &mut Vector<F::Elem>, full: bool, skip: Option<usize>) -> Vector<F::Elem> {
        let k = self.k;
        let ord = self.shape.order;
        let mut i = 0;
        while i < v.len() {
            let (c, m, p) = &v[i];
            match self.find_divisor(m, *p, skip) {
                Some(g) => {
                    let e = &self.elems[g];
                    let q = e.lead.quotient_of(m);
                    let c = c.clone();
                    let tail = vector::sub_mul(k, ord, &v[i..], &c, &q, &e.v);
                    v.truncate(i);
                    v.extend(tail);
                    if self.opts.syzygies {
                        *lift = vector::sub_mul(k, ord, lift, &c, &q, &e.lift);
                    }
                }
                None => {
                    if !full {
                        return v;
                    }
                    i += 1;
                }
            }
        }
        v
    }

    fn process_pair(&mut self, p: Pair) -> Result<()> {
        if let Some(limit) = self.opts.pair_limit {
            if self.pairs_reduced >= limit {
                return Err(Error::OutOfRange(format!("pair limit {limit}")));
            }
        }
        self.pairs_reduced += 1;
        let k = self.k;
        let ord = self.shape.order;
        let (a, b) = (&self.elems[p.i], &self.elems[p.j]);
        let qa = a.lead.quotient_of(&p.lcm);
        let qb = b.lead.quotient_of(&p.lcm);
        let one = k.one();
        let sa = vector::mul_term(k, &one, &qa, &a.v[1..]);
        let s = vector::sub_mul(k, ord, &sa, &one, &qb, &b.v[1..]);
        let mut lift = Vec::new();
        if self.opts.syzygies {
            let la = vector::mul_term(k, &one, &qa, &a.lift);
            lift = vector::sub_mul(k, ord, &la, &one, &qb, &b.lift);
        }
        let r = self.reduce(s, &mut lift, false, None);
        if r.is_empty() {
            if self.opts.syzygies && !lift.is_empty() {
                self.syz.push(lift);
            }
        } else {
            self.add(r, lift);
        }
        Ok(())
    }

    /// Returns true when the input is not redundant.
    fn process_input(&mut self, idx: usize, v: &Vector<F::Elem>) -> bool {
        let k = self.k;
        let mut lift = Vec::new();
        if self.opts.syzygies {
            lift = vec![(k.one(), Monomial::one(self.shape.nvars), idx as u32)];
        }
        let r = self.reduce(v.clone(), &mut lift, false, None);
        if r.is_empty() {
            if self.opts.syzygies && self.opts.keep_all {
                self.syz.push(lift);
            }
            self.opts.keep_all
        } else {
            self.add(r, lift);
            true
        }
    }

    fn add(&mut self, v: Vector<F::Elem>, mut lift: Vector<F::Elem>) {
        let k = self.k;
        let mut v = self.reduce_tail(v, &mut lift);
        let inv = k.inv(&v[0].0);
        vector::scale(k, &inv, &mut v);
        if self.opts.syzygies {
            vector::scale(k, &inv, &mut lift);
        }
        let lead = v[0].1.clone();
        let pos = v[0].2;
        let idx = self.elems.len();
        self.update_pairs(&lead, pos, idx);
        self.elems.push(Elem {
            mask: lead.support_mask(),
            v,
            lead,
            pos,
            lift,
        });
        self.by_pos[pos as usize].push(idx);
    }

    fn reduce_tail(&self, mut v: Vector<F::Elem>, lift: &mut Vector<F::Elem>) -> Vector<F::Elem> {
        if v.len() <= 1 {
            return v;
        }
        let tail = v.split_off(1);
        let tail = self.reduce(tail, lift, true, None);
        v.extend(tail);
        v
    }

    /// Gebauer-Moeller update for a new element with leading term
    /// `lead * e_pos` that will get index `h`.
    fn update_pairs(&mut self, lead: &Monomial, pos: u32, h: usize) {
        let candidates: Vec<(usize, Monomial, bool)> = self.by_pos[pos as usize]
            .iter()
            .map(|&i| {
                let l = &self.elems[i].lead;
                let coprime = self.product_criterion && l.is_coprime(lead);
                (i, l.lcm(lead), coprime)
            })
            .collect();

        // chain criterion among the new pairs
        let mut alive = vec![true; candidates.len()];
        for a in 0..candidates.len() {
            if candidates[a].2 {
                continue;
            }
            let la = &candidates[a].1;
            let dominated = (0..candidates.len()).any(|b| {
                b != a && alive[b] && candidates[b].1.divides(la) && (candidates[b].1 != *la || b > a || candidates[b].2)
            });
            if dominated {
                alive[a] = false;
            }
        }

        // old pairs made redundant by the new element
        let elems = &self.elems;
        for list in self.pairs.values_mut() {
            list.retain(|p| {
                if !lead.divides(&p.lcm) || elems[p.i].pos != pos {
                    return true;
                }
                let li = elems[p.i].lead.lcm(lead);
                let lj = elems[p.j].lead.lcm(lead);
                li == p.lcm || lj == p.lcm
            });
        }
        self.pairs.retain(|_, v| !v.is_empty());

        for (n, (i, lcm, coprime)) in candidates.into_iter().enumerate() {
            if !alive[n] || coprime {
                continue;
            }
            let d = self.shape.degree_of(&lcm, pos);
            self.pairs.entry(d).or_default().push(Pair { lcm, i, j: h });
        }
    }

    fn interreduce(&mut self) {
        let k = self.k;
        let saved = self.opts.syzygies;
        self.opts.syzygies = false;
        for idx in 0..self.elems.len() {
            let v = std::mem::take(&mut self.elems[idx].v);
            let mut head = v;
            let tail = head.split_off(1);
            let mut dummy = Vec::new();
            let tail = self.reduce(tail, &mut dummy, true, Some(idx));
            head.extend(tail);
            debug_assert!(k.is_one(&head[0].0));
            self.elems[idx].v = head;
        }
        self.opts.syzygies = saved;
    }
}

/// Full normal form of `v` with respect to a monic Groebner basis `gb`.
pub fn normal_form<F: Field>(k: &F, shape: &ModuleShape, gb: &[Vector<F::Elem>], v: Vector<F::Elem>) -> Vector<F::Elem> {
    let mut by_pos: Vec<Vec<usize>> = vec![Vec::new(); shape.rank()];
    for (i, g) in gb.iter().enumerate() {
        by_pos[g[0].2 as usize].push(i);
    }
    let masks: Vec<u64> = gb.iter().map(|g| g[0].1.support_mask()).collect();
    let ord = shape.order;
    let mut v = v;
    let mut i = 0;
    while i < v.len() {
        let (c, m, p) = &v[i];
        let mask = m.support_mask();
        let found = by_pos[*p as usize]
            .iter()
            .copied()
            .find(|&g| masks[g] & !mask == 0 && gb[g][0].1.divides(m));
        match found {
            Some(g) => {
                let q = gb[g][0].1.quotient_of(m);
                let c = c.clone();
                let tail = vector::sub_mul(k, ord, &v[i..], &c, &q, &gb[g]);
                v.truncate(i);
                v.extend(tail);
            }
            None => i += 1,
        }
    }
    v
}
