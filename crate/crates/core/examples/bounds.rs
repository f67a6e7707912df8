//! Closed-form regularity bounds for powers, checked on builtin ideals.

use powreg::asymptotics::{verify_bounds, Hypothesis};
use powreg::corpus::lookup;
use powreg::field::Rationals;

fn main() -> powreg::Result<()> {
    let cases = [
        ("twisted-cubic", Hypothesis::Lci { n: 1, r: 2 }, 4),
        ("veronese", Hypothesis::Lci { n: 2, r: 2 }, 2),
        ("two-quadrics", Hypothesis::Lci { n: 1, r: 3 }, 4),
        ("rational-normal-quartic", Hypothesis::Adjoint { n: 1 }, 3),
    ];
    for (name, hyp, max_t) in cases {
        let ideal = lookup(name)?.ideal(Rationals)?;
        let report = verify_bounds(&ideal, hyp, max_t)?;
        println!("{name} against {hyp:?}");
        for row in &report.rows {
            let reg = row.reg.map_or("-".into(), |r| r.to_string());
            let mark = match (row.pass, row.sharp) {
                (Some(true), Some(true)) => "sharp",
                (Some(true), _) => "ok",
                (Some(false), _) => "VIOLATED",
                (None, _) => "skipped",
            };
            println!("  t = {}: reg {reg}, bound {} ({mark})", row.t, row.bound);
        }
    }
    Ok(())
}
