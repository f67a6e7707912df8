//! Colon ideals, saturation, intersection and elimination.

use powreg::field::Rationals;
use powreg::ideals::Ideal;
use powreg::poly::PolynomialRing;

fn main() -> powreg::Result<()> {
    let ring = PolynomialRing::new(&["x", "y", "z"], Rationals)?;

    // An embedded point at the origin of the affine chart z = 1.
    let i = Ideal::parse(&ring, &["x^2", "x*y"])?;
    let m = Ideal::maximal(&ring);
    println!("I        = {i}");
    println!("I : m    = {}", i.colon_ideal(&m)?);
    println!("I^sat    = {}", i.saturate()?);
    println!("saturated already: {}", i.is_saturated()?);

    let j = Ideal::parse(&ring, &["x^2", "x*y", "x*z"])?;
    println!("J        = {j}");
    println!("J^sat    = {}", j.saturate()?);
    println!("J : (x)  = {}", j.saturate_by(&Ideal::parse(&ring, &["x"])?)?);

    let a = Ideal::parse(&ring, &["x", "y"])?;
    let b = Ideal::parse(&ring, &["y", "z"])?;
    println!("(x,y) n (y,z) = {}", a.intersect(&b)?);
    println!("(x,y) (y,z)   = {}", a.product(&b)?.minimalized()?);

    // The twisted cubic as an image: a/b = b/c = c/d = s/t, then forget s, t.
    let graph_ring = PolynomialRing::new(&["s", "t", "a", "b", "c", "d"], Rationals)?;
    let cone = Ideal::parse(&graph_ring, &["a*t - b*s", "b*t - c*s", "c*t - d*s"])?;
    let image = cone.saturate_by(&Ideal::parse(&graph_ring, &["s", "t"])?)?.eliminate(&[0, 1])?;
    println!("image ideal = {image}");
    Ok(())
}
