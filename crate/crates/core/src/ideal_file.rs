//! The plain-text ideal format:
//!
//! ```text
//! ring S vars x0 x1 x2 x3 field QQ
//! ideal I
//! x0*x2 - x1^2
//! x1*x3 - x2^2
//! x0*x3 - x1*x2
//! ```
//!
//! The field is `QQ` or `Fp <p>`. Blank lines and lines starting with `#`
//! are ignored after the header.

use std::path::Path;

use crate::error::{Error, Result};
use crate::field::{Field, FieldSpec};
use crate::ideals::Ideal;
use crate::poly::{parse_polynomial_at, PolynomialRing};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IdealFile {
    pub ring_name: String,
    pub ideal_name: String,
    pub variables: Vec<String>,
    pub field: FieldSpec,
    /// `(line number, text)` of each generator.
    pub generators: Vec<(usize, String)>,
}

fn err(line: usize, column: usize, message: impl Into<String>) -> Error {
    Error::Parse {
        line,
        column,
        message: message.into(),
    }
}

/// Splits a line into `(1-based column, word)` pairs.
fn words(line: &str) -> Vec<(usize, &str)> {
    let mut out = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        match (c.is_whitespace(), start) {
            (true, Some(s)) => {
                out.push((line[..s].chars().count() + 1, &line[s..i]));
                start = None;
            }
            (false, None) => start = Some(i),
            _ => {}
        }
    }
    if let Some(s) = start {
        out.push((line[..s].chars().count() + 1, &line[s..]));
    }
    out
}

impl IdealFile {
    pub fn parse(text: &str) -> Result<Self> {
        let mut lines = text.lines().enumerate().map(|(i, l)| (i + 1, l));
        let (n, header) = lines.next().ok_or_else(|| err(1, 1, "missing ring header"))?;
        let w = words(header);
        let key = |i: usize, expect: &str| -> Result<()> {
            match w.get(i) {
                Some((_, s)) if *s == expect => Ok(()),
                Some((c, s)) => Err(err(n, *c, format!("expected `{expect}`, found `{s}`"))),
                None => Err(err(n, header.chars().count() + 1, format!("expected `{expect}`"))),
            }
        };
        key(0, "ring")?;
        let ring_name = w.get(1).ok_or_else(|| err(n, header.len() + 1, "expected a ring name"))?.1.to_string();
        key(2, "vars")?;
        let field_at = w
            .iter()
            .position(|x| x.1 == "field")
            .ok_or_else(|| err(n, header.chars().count() + 1, "expected `field`"))?;
        let variables: Vec<String> = w[3..field_at].iter().map(|x| x.1.to_string()).collect();
        if variables.is_empty() {
            return Err(err(n, w[field_at].0, "expected at least one variable"));
        }
        let field = match &w[field_at + 1..] {
            [(_, "QQ")] => FieldSpec::Rationals,
            [(_, "Fp"), (c, p)] => FieldSpec::Prime(p.parse().map_err(|_| err(n, *c, format!("bad characteristic `{p}`")))?),
            [(c, s), ..] => return Err(err(n, *c, format!("unknown field `{s}`"))),
            [] => return Err(err(n, header.chars().count() + 1, "expected a field")),
        };
        let (n2, second) = lines.next().ok_or_else(|| err(n + 1, 1, "missing `ideal` line"))?;
        let w2 = words(second);
        let ideal_name = match w2.as_slice() {
            [(_, "ideal"), (_, name)] => name.to_string(),
            [(_, "ideal")] => return Err(err(n2, second.chars().count() + 1, "expected an ideal name")),
            [(c, s), ..] => return Err(err(n2, *c, format!("expected `ideal`, found `{s}`"))),
            [] => return Err(err(n2, 1, "expected `ideal`")),
        };
        let generators = lines
            .filter(|(_, l)| {
                let t = l.trim();
                !t.is_empty() && !t.starts_with('#')
            })
            .map(|(i, l)| (i, l.to_string()))
            .collect();
        Ok(IdealFile {
            ring_name,
            ideal_name,
            variables,
            field,
            generators,
        })
    }

    pub fn read(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref();
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::InvalidArgument(format!("cannot read {}: {e}", path.display())))?;
        Self::parse(&text)
    }

    /// Builds the ideal over `field`, which need not be the declared one
    /// (so a rational file can be reduced modulo a prime).
    pub fn build<F: Field>(&self, field: F) -> Result<Ideal<F>> {
        let ring = PolynomialRing::new(&self.variables, field)?;
        if self.generators.is_empty() {
            return Err(Error::EmptyGenerators);
        }
        let mut gens = Vec::with_capacity(self.generators.len());
        for (line, text) in &self.generators {
            let f = parse_polynomial_at(&ring, text, *line)?;
            if !f.is_homogeneous() {
                return Err(Error::Inhomogeneous(format!("at line {line}: {}", text.trim())));
            }
            gens.push(f);
        }
        Ideal::new(&ring, gens)
    }
}

/// Parses a whole file over the field it declares, given as `F`.
pub fn parse_ideal_file<F: Field>(text: &str, field: F) -> Result<Ideal<F>> {
    let file = IdealFile::parse(text)?;
    if file.field != field.spec() {
        return Err(Error::InvalidArgument(format!("file declares {} but {} was requested", file.field, field.spec())));
    }
    file.build(field)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::field::{PrimeField, Rationals};

    const CUBIC: &str = "ring S vars x0 x1 x2 x3 field QQ\nideal I\nx0*x2 - x1^2\nx1*x3 - x2^2\nx0*x3 - x1*x2\n";

    #[test]
    fn round_trip() {
        let i = parse_ideal_file(CUBIC, Rationals).unwrap();
        assert_eq!(i.generators().len(), 3);
        assert_eq!(i.ring().num_vars(), 4);
        let text = i.to_ideal_file("S", "I");
        let j = parse_ideal_file(&text, Rationals).unwrap();
        assert_eq!(i.groebner_basis().unwrap(), j.groebner_basis().unwrap());
    }

    #[test]
    fn prime_header() {
        let f = IdealFile::parse("ring R vars a b field Fp 101\nideal J\na^2 - b^2\n").unwrap();
        assert_eq!(f.field, FieldSpec::Prime(101));
        let i = f.build(PrimeField::new(101).unwrap()).unwrap();
        assert_eq!(i.generators()[0].to_string(), "a^2 + 100*b^2");
    }

    #[test]
    fn errors() {
        let e = parse_ideal_file("ring S vars x0 x1 field QQ\nideal I\nx0^2 + x1\n", Rationals).unwrap_err();
        assert_eq!(e.to_string(), "inhomogeneous generator at line 3: x0^2 + x1");
        let e = parse_ideal_file("ring S vars x0 x1 field QQ\nideal I\n", Rationals).unwrap_err();
        assert_eq!(e, Error::EmptyGenerators);
        assert!(e.to_string().contains("empty ideal"));
        let e = parse_ideal_file("ring S vars x0 x1 field QQ\nideal I\nx0*y\n", Rationals).unwrap_err();
        assert!(matches!(e, Error::Parse { line: 3, column: 4, .. }), "{e:?}");
        let e = IdealFile::parse("ring S vars x0 field RR\nideal I\nx0\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 1, column: 22, .. }), "{e:?}");
        let e = IdealFile::parse("ring S vars x0 field QQ\nidea I\n").unwrap_err();
        assert!(matches!(e, Error::Parse { line: 2, column: 1, .. }));
    }
}
