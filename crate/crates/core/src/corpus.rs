//! Builtin ideals with what is known about them.

use crate::error::{Error, Result};
use crate::field::Field;
use crate::ideals::Ideal;
use crate::poly::PolynomialRing;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: &'static str,
    pub description: &'static str,
    /// Number of variables `x0..x(r-1)`.
    pub nvars: usize,
    pub generators: &'static [&'static str],
    /// Dimension of the projective subscheme.
    pub dim: u32,
    /// Regularity of the ideal sheaf, when known in closed form.
    pub reg: Option<i64>,
    pub lci: bool,
    pub quadric_generated: bool,
    /// `(d, e)` in `reg I^t = d t + e`, when known in closed form.
    pub expected: Option<(u32, i64)>,
}

pub const CORPUS: &[CorpusEntry] = &[
    CorpusEntry {
        name: "line",
        description: "a line in P^3",
        nvars: 4,
        generators: &["x0", "x1"],
        dim: 1,
        reg: Some(1),
        lci: true,
        quadric_generated: false,
        expected: Some((1, 0)),
    },
    CorpusEntry {
        name: "quadric",
        description: "a smooth quadric surface in P^3",
        nvars: 4,
        generators: &["x0*x3 - x1*x2"],
        dim: 2,
        reg: Some(2),
        lci: true,
        quadric_generated: true,
        expected: Some((2, 0)),
    },
    CorpusEntry {
        name: "cubic-surface",
        description: "the Fermat cubic surface in P^3",
        nvars: 4,
        generators: &["x0^3 + x1^3 + x2^3 + x3^3"],
        dim: 2,
        reg: Some(3),
        lci: true,
        quadric_generated: false,
        expected: Some((3, 0)),
    },
    CorpusEntry {
        name: "twisted-cubic",
        description: "the rational normal curve of degree 3 in P^3",
        nvars: 4,
        generators: &["x0*x2 - x1^2", "x1*x3 - x2^2", "x0*x3 - x1*x2"],
        dim: 1,
        reg: Some(2),
        lci: true,
        quadric_generated: true,
        expected: Some((2, 0)),
    },
    CorpusEntry {
        name: "rational-normal-quartic",
        description: "the rational normal curve of degree 4 in P^4",
        nvars: 5,
        generators: &[
            "x0*x2 - x1^2",
            "x0*x3 - x1*x2",
            "x0*x4 - x1*x3",
            "x1*x3 - x2^2",
            "x1*x4 - x2*x3",
            "x2*x4 - x3^2",
        ],
        dim: 1,
        reg: Some(2),
        lci: true,
        quadric_generated: true,
        expected: Some((2, 0)),
    },
    CorpusEntry {
        name: "veronese",
        description: "the Veronese surface in P^5",
        nvars: 6,
        generators: &[
            "x0*x3 - x1^2",
            "x0*x4 - x1*x2",
            "x0*x5 - x2^2",
            "x1*x4 - x2*x3",
            "x1*x5 - x2*x4",
            "x3*x5 - x4^2",
        ],
        dim: 2,
        reg: Some(2),
        lci: true,
        quadric_generated: true,
        expected: Some((2, 0)),
    },
    CorpusEntry {
        name: "two-quadrics",
        description: "a complete intersection of two quadrics in P^3",
        nvars: 4,
        generators: &["x0*x1 - x2*x3", "x0^2 + x1^2 - x2^2 - x3^2"],
        dim: 1,
        reg: Some(3),
        lci: true,
        quadric_generated: true,
        // I^t is resolved by 0 -> S(-2t-2)^t -> S(-2t)^(t+1)
        expected: Some((2, 1)),
    },
    CorpusEntry {
        name: "rational-quartic",
        description: "the smooth rational quartic curve (s^4, s^3 t, s t^3, t^4) in P^3, not linearly normal",
        nvars: 4,
        generators: &["x0*x3 - x1*x2", "x1^3 - x0^2*x2", "x2^3 - x1*x3^2", "x0*x2^2 - x1^2*x3"],
        dim: 1,
        reg: None,
        lci: true,
        quadric_generated: false,
        expected: None,
    },
];

pub fn lookup(name: &str) -> Result<&'static CorpusEntry> {
    CORPUS
        .iter()
        .find(|e| e.name == name)
        .ok_or_else(|| Error::InvalidArgument(format!("unknown corpus entry `{name}`")))
}

impl CorpusEntry {
    pub fn ideal<F: Field>(&self, field: F) -> Result<Ideal<F>> {
        let ring = PolynomialRing::standard(self.nvars, field)?;
        Ideal::parse(&ring, self.generators)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};
    use crate::poly::{Monomial, Polynomial};

    /// Substitutes `x_i = s^(e_i) t^(d - e_i)` and checks the result is zero.
    fn vanishes_on(entry: &CorpusEntry, exps: &[u16], d: u16) -> bool {
        let ring = PolynomialRing::new(&["s", "t"], Rationals).unwrap();
        let i = entry.ideal(Rationals).unwrap();
        let images: Vec<Polynomial<Rationals>> = exps
            .iter()
            .map(|&e| Polynomial::monomial(&ring, Rationals.one(), Monomial::from_slice(&[e, d - e])))
            .collect();
        i.generators().iter().all(|g| {
            let mut acc = Polynomial::zero(&ring);
            for (c, m) in g.terms() {
                let mut term = Polynomial::constant(&ring, c.clone());
                for (v, &e) in m.exponents().iter().enumerate() {
                    term = term.mul(&images[v].pow(e as u32)).unwrap();
                }
                acc = acc.add(&term).unwrap();
            }
            acc.is_zero()
        })
    }

    #[test]
    fn entries_parse_and_have_expected_dimension() {
        for e in CORPUS {
            let i = e.ideal(Rationals).unwrap();
            assert_eq!(i.krull_dimension().unwrap() as u32, e.dim + 1, "{}", e.name);
            assert!(e.ideal(PrimeField::new(32003).unwrap()).is_ok());
            assert_eq!(e.quadric_generated, i.generators().iter().all(|g| g.degree() == Some(2)), "{}", e.name);
        }
        assert!(lookup("nope").is_err());
    }

    #[test]
    fn curves_contain_their_parametrizations() {
        assert!(vanishes_on(lookup("twisted-cubic").unwrap(), &[3, 2, 1, 0], 3));
        assert!(vanishes_on(lookup("rational-normal-quartic").unwrap(), &[4, 3, 2, 1, 0], 4));
        assert!(vanishes_on(lookup("rational-quartic").unwrap(), &[4, 3, 1, 0], 4));
    }

    #[test]
    fn rational_quartic_is_the_whole_curve() {
        // degree 4 and genus 0: Hilbert polynomial 4k + 1, and saturated
        let i = lookup("rational-quartic").unwrap().ideal(Rationals).unwrap();
        let hs = i.quotient_hilbert_series().unwrap();
        assert_eq!(hs.polynomial_value(10), 41);
        assert!(i.is_saturated().unwrap());
    }
}
