//! Minimal free resolutions and Betti tables of the builtin ideals.

use powreg::corpus::CORPUS;
use powreg::field::Rationals;

fn main() -> powreg::Result<()> {
    for entry in CORPUS {
        let ideal = entry.ideal(Rationals)?;
        let res = ideal.resolution()?;
        let table = res.betti_table()?;
        println!("{} ({})", entry.name, entry.description);
        print!("{}", table.to_grid());
        println!("reg = {}, pd = {}\n", ideal.regularity()?, res.length());
    }

    // Powers get longer resolutions.
    let veronese = powreg::corpus::lookup("veronese")?.ideal(Rationals)?;
    let square = veronese.power(2)?;
    println!("square of the Veronese ideal, {} generators", square.minimal_generators()?.len());
    print!("{}", square.betti_table()?.to_grid());
    println!("reg = {}", square.regularity()?);
    Ok(())
}
