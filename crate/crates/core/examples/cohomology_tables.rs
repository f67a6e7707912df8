//! Sheaf cohomology tables of modules built from an ideal.

use powreg::cohomology::{CohomologyTable, GradedModule, PowerKind};
use powreg::corpus::lookup;
use powreg::field::Rationals;

fn main() -> powreg::Result<()> {
    let ideal = lookup("twisted-cubic")?.ideal(Rationals)?;
    let window = (-3, 5);

    let ox = GradedModule::quotient_ring(&ideal);
    print!("{}", CohomologyTable::compute("O_X", &*ox.cohomology()?, window)?.to_text());

    let sheaf = GradedModule::of_ideal(&ideal)?;
    print!("{}", CohomologyTable::compute("I", &*sheaf.cohomology()?, window)?.to_text());

    let conormal = GradedModule::conormal(&ideal)?;
    for (label, kind) in [("T", PowerKind::Tensor), ("S", PowerKind::Symmetric), ("E", PowerKind::Exterior)] {
        let m = conormal.power(2, kind)?;
        let coh = m.cohomology()?;
        let table = CohomologyTable::compute(format!("{label}^2 N*"), &coh, window)?;
        print!("{}", table.to_text());
        println!("sheaf regularity {:?}\n", coh.sheaf_regularity()?);
    }

    // Local cohomology of the module itself, not just the sheaf.
    let h1 = (0..4).map(|k| conormal.local_cohomology_dim(1, k)).collect::<powreg::Result<Vec<_>>>()?;
    println!("H^1_m(N*)_k for k = 0..3: {h1:?}");

    let table = CohomologyTable::compute("N*", &*conormal.cohomology()?, (0, 3))?;
    print!("{}", table.to_csv());
    Ok(())
}
