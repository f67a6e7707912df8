//! Equations of the Rees algebra and the bound they give on the constant e.

use powreg::corpus::lookup;
use powreg::field::Rationals;
use powreg::ideals::e_bound_from_rees;

fn main() -> powreg::Result<()> {
    for name in ["twisted-cubic", "two-quadrics", "rational-normal-quartic"] {
        let ideal = lookup(name)?.ideal(Rationals)?;
        let d = ideal.d_invariant()?;
        let rees = ideal.rees_presentation(d)?;
        let n = ideal.ring().num_vars() as u32 - 1;
        println!("{name}: d = {d}, fiber variables {:?}", rees.fiber_variables());
        for (g, (dx, dy)) in rees.generators().iter().zip(rees.bidegrees()) {
            println!("  ({dx}, {dy})  {g}");
        }
        match e_bound_from_rees(&rees, n) {
            Ok(b) => println!("  D = {}, e <= {b}\n", rees.max_x_degree()),
            Err(e) => println!("  D = {}, no bound: {e}\n", rees.max_x_degree()),
        }
    }

    // A degree below the generators is rejected.
    let cubic = lookup("cubic-surface")?.ideal(Rationals)?;
    if let Err(e) = cubic.rees_presentation(2) {
        println!("cubic surface at degree 2: {e}");
    }
    Ok(())
}
