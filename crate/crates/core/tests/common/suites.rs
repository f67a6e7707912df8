//! Property suites, returning the first discrepancy instead of panicking so
//! the acceptance report can show it.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use powreg::cohomology::{default_window, GradedModule};
use powreg::corpus::CorpusEntry;
use powreg::field::Rationals;
use powreg::ideals::Ideal;
use powreg::poly::{parse_polynomial, PolynomialRing};

use super::*;

pub const NVARS: usize = 4;

macro_rules! ensure {
    ($cond:expr, $($msg:tt)+) => {
        if !$cond {
            return Err(format!($($msg)+));
        }
    };
}

fn lib<T>(r: powreg::Result<T>) -> Result<T, String> {
    r.map_err(|e| e.to_string())
}

pub fn random_ideal(rng: &mut ChaCha8Rng) -> Vec<Poly> {
    let k = rng.gen_range(2..=3);
    (0..k)
        .map(|_| {
            let d = rng.gen_range(2..=3);
            let terms = rng.gen_range(2..=4);
            random_form(rng, NVARS, d, terms)
        })
        .collect()
}

pub fn library_ideal(gens: &[Poly]) -> Ideal<Rationals> {
    let ring = PolynomialRing::standard(NVARS, Rationals).unwrap();
    let strs: Vec<String> = gens.iter().map(to_string).collect();
    let refs: Vec<&str> = strs.iter().map(|s| s.as_str()).collect();
    Ideal::parse(&ring, &refs).unwrap()
}

/// Membership and `dim I_d` against degreewise linear algebra, `d <= 6`.
/// Returns the number of membership queries made.
pub fn membership_suite(seed: u64) -> Result<usize, String> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let gens = random_ideal(&mut rng);
    let ideal = library_ideal(&gens);
    let ring = ideal.ring().clone();
    let mut queries = 0;
    for d in 2..=6u32 {
        let span = degree_span(&gens, NVARS, d);
        let dim = lib(ideal.hilbert_function(d as i64))?;
        ensure!(dim == span.rank() as i128, "seed {seed}, degree {d}: dim I_d {dim} vs {}", span.rank());

        let mut candidates = Vec::new();
        let mut member = Poly::new();
        for g in &gens {
            let dg = degree(g);
            if dg <= d {
                let h = if dg == d {
                    [(vec![0; NVARS], q(rng.gen_range(1..=4)))].into_iter().collect()
                } else {
                    random_form(&mut rng, NVARS, d - dg, 3)
                };
                add_scaled(&mut member, &mul(&h, g), &q(1));
            }
        }
        if !member.is_empty() {
            candidates.push((member, Some(true)));
        }
        for _ in 0..3 {
            candidates.push((random_form(&mut rng, NVARS, d, 3), None));
        }
        for (f, known) in candidates {
            let oracle = span.contains(&f);
            if let Some(k) = known {
                ensure!(oracle == k, "oracle rejects a combination of the generators");
            }
            let p = lib(parse_polynomial(&ring, &to_string(&f)))?;
            let got = lib(ideal.contains(&p))?;
            ensure!(got == oracle, "seed {seed}: membership of {} is {got}, expected {oracle}", to_string(&f));
            queries += 1;
        }
    }
    Ok(queries)
}

/// `sum (-1)^i b_ij binom(k - j + n - 1, n - 1) = dim I_k` over the default
/// window, with `dim I_k` also checked by linear algebra for `k <= 5`.
pub fn betti_hilbert_suite(entry: &CorpusEntry) -> Result<usize, String> {
    let ideal = lib(entry.ideal(Rationals))?;
    let n = entry.nvars as i64;
    let betti = lib(ideal.betti_table())?;
    let (lo, hi) = default_window(lib(lib(ideal.saturate())?.regularity())?);
    let oracle_gens: Vec<Poly> = entry.generators.iter().map(|g| parse_simple(g, entry.nvars)).collect();
    for k in lo..=hi {
        let mut alt = 0i128;
        for (&(i, j), &b) in betti.entries() {
            let t = b as i128 * binomial(k - j + n - 1, n - 1);
            alt += if i % 2 == 0 { t } else { -t };
        }
        let hf = if k < 0 { 0 } else { lib(ideal.hilbert_function(k))? };
        ensure!(alt == hf, "{} at k = {k}: Betti sum {alt}, dim I_k {hf}", entry.name);
        if (0..=5).contains(&k) {
            let oracle = binomial(k + n - 1, n - 1) - quotient_hf(&oracle_gens, entry.nvars, k);
            ensure!(hf == oracle, "{} at k = {k}: dim I_k {hf}, linear algebra {oracle}", entry.name);
        }
    }
    Ok((hi - lo + 1) as usize)
}

pub fn corpus_modules(entry: &CorpusEntry) -> Result<Vec<(&'static str, GradedModule<Rationals>)>, String> {
    let ideal = lib(entry.ideal(Rationals))?;
    let sat = lib(ideal.saturate())?;
    Ok(vec![
        ("O_X", GradedModule::quotient_ring(&sat)),
        ("I", lib(GradedModule::of_ideal(&sat))?),
        ("N*", lib(GradedModule::conormal(&sat))?),
    ])
}

/// Euler characteristic equals the Hilbert polynomial, `h^i` vanishes above
/// the support dimension and from `reg - i` on, for `O_X`, `I` and `N*`.
pub fn euler_suite(entry: &CorpusEntry) -> Result<usize, String> {
    let reg = lib(lib(lib(entry.ideal(Rationals))?.saturate())?.regularity())?;
    let (lo, hi) = default_window(reg);
    let mut checked = 0;
    for (label, m) in corpus_modules(entry)? {
        let coh = lib(m.cohomology())?;
        let hs = lib(m.hilbert_series())?;
        let support = coh.dimension() as i64 - 1;
        let mreg = lib(m.regularity())?;
        for k in lo..=hi {
            let chi = lib(coh.euler_characteristic(k))?;
            ensure!(chi == hs.polynomial_value(k), "{} {label} k = {k}: chi {chi}, HP {}", entry.name, hs.polynomial_value(k));
            for i in 1..entry.nvars as i64 {
                let h = lib(coh.sheaf(i, k))?;
                if i > support {
                    ensure!(h == 0, "{} {label}: h^{i}({k}) = {h} above the support dimension", entry.name);
                }
                if let Some(r) = mreg {
                    if k >= r - i {
                        ensure!(h == 0, "{} {label}: h^{i}({k}) = {h} with reg {r}", entry.name);
                    }
                }
            }
            checked += 1;
        }
    }
    Ok(checked)
}
