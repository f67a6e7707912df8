//! Vanishing ranges for tensor powers of the conormal sheaf, and normality.

use powreg::cohomology::{default_window, normality_index, vanishing_check};
use powreg::corpus::lookup;
use powreg::field::Rationals;

fn main() -> powreg::Result<()> {
    for (name, max_a) in [("twisted-cubic", 3), ("cubic-surface", 2), ("rational-quartic", 1)] {
        let ideal = lookup(name)?.ideal(Rationals)?;
        let window = default_window(ideal.regularity()?);
        for a in 1..=max_a {
            let rep = vanishing_check(&ideal, a, None, window)?;
            println!("{name}, a = {a}: n = {}, r_p = {}, r_X = {}", rep.n, rep.r_p, rep.r_x);
            for row in &rep.rows {
                println!(
                    "  h^{} zero for k >= {}; first vanishing {:?}, gap {:?}: {}",
                    row.index,
                    row.threshold,
                    row.observed,
                    row.gap,
                    if row.pass { "ok" } else { "VIOLATED" }
                );
            }
        }
        let normal = normality_index(&ideal, window)?;
        match normal.h1_end {
            Some(e) => println!("  h^1(I(k)) last nonzero at k = {e}, so n0 = {}\n", normal.n0),
            None => println!("  h^1(I(k)) = 0 everywhere\n"),
        }
    }

    // Mixed-dimensional input is refused.
    let ring = powreg::poly::PolynomialRing::standard(4, Rationals)?;
    let mixed = powreg::ideals::Ideal::parse(&ring, &["x0*x1", "x0*x2"])?;
    if let Err(e) = vanishing_check(&mixed, 1, None, (-5, 5)) {
        println!("plane and line: {e}");
    }
    Ok(())
}
