//! Groebner bases, normal forms, membership and syzygies.

use powreg::field::{PrimeField, Rationals};
use powreg::groebner::{buchberger, syzygies};
use powreg::poly::{parse_polynomial, MonomialOrder, PolynomialRing};

fn main() -> powreg::Result<()> {
    let ring = PolynomialRing::new(&["x", "y", "z", "w"], Rationals)?;
    let gens = ["x*z - y^2", "y*w - z^2", "x*w - y*z"]
        .iter()
        .map(|s| parse_polynomial(&ring, s))
        .collect::<powreg::Result<Vec<_>>>()?;

    for order in [MonomialOrder::Grevlex, MonomialOrder::Lex] {
        let gb = buchberger(&gens, order)?;
        println!("{order:?} basis ({} elements):", gb.len());
        for g in gb.elements() {
            println!("  {g}");
        }
    }

    let gb = buchberger(&gens, MonomialOrder::Grevlex)?;
    let f = parse_polynomial(&ring, "x^2*w^2 - y^2*z^2 + x*y*z*w")?;
    println!("NF({f}) = {}", gb.normal_form(&f)?);
    let g = parse_polynomial(&ring, "x^3*w - y^3*z")?;
    println!("{g} in I: {}", gb.contains(&g)?);

    let syz = syzygies(&gens, MonomialOrder::Grevlex)?;
    println!("{} syzygies of degrees {:?}", syz.len(), syz.row_degrees());
    for row in &syz.rows {
        let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
        println!("  ({})", cells.join(", "));
    }

    // The same computation over Z/101.
    let fp = PolynomialRing::new(&["x", "y", "z", "w"], PrimeField::new(101)?)?;
    let gens_p = ["x*z - y^2", "y*w - z^2", "x*w - y*z"]
        .iter()
        .map(|s| parse_polynomial(&fp, s))
        .collect::<powreg::Result<Vec<_>>>()?;
    let gb_p = buchberger(&gens_p, MonomialOrder::Grevlex)?;
    println!("over F_101: {} elements, reduced = {}", gb_p.len(), gb_p.is_reduced());
    Ok(())
}
