//! Reading and writing the plain-text ideal format.

use powreg::field::{FieldSpec, PrimeField, Rationals};
use powreg::ideal_file::IdealFile;

const TEXT: &str = "ring P3 vars x0 x1 x2 x3 field QQ
ideal C
x0*x2 - x1^2
x1*x3 - x2^2
x0*x3 - x1*x2
";

fn main() -> powreg::Result<()> {
    let file = IdealFile::parse(TEXT)?;
    println!("ring {} with {:?}, ideal {}", file.ring_name, file.variables, file.ideal_name);
    let ideal = file.build(Rationals)?;
    println!("{ideal}, reg {}", ideal.regularity()?);

    let written = ideal.to_ideal_file("P3", "C");
    let again = IdealFile::parse(&written)?.build(Rationals)?;
    println!("round trip equal: {}", again.same_ideal(&ideal)?);

    // Same generators mod 7.
    let fp = file.build(PrimeField::new(7)?)?;
    println!("mod 7: {fp}");
    assert_eq!(file.field, FieldSpec::Rationals);

    for bad in [
        "ring R vars x y field QQ\nideal I\nx^2 + y\n",
        "ring R vars x y field QQ\nideal I\n",
        "ring R vars x y field QQ\nideal I\nx*q\n",
        "ring R vars x y field QQ\nideal I\nx^2 + * y\n",
    ] {
        match IdealFile::parse(bad).and_then(|f| f.build(Rationals)) {
            Ok(i) => println!("accepted {i}"),
            Err(e) => println!("rejected: {e}"),
        }
    }
    Ok(())
}
