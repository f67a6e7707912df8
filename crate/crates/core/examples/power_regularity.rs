//! Regularity of powers, eventual linearity and the s-invariant bracket.

use std::time::Duration;

use powreg::asymptotics::AsymptoticReport;
use powreg::corpus::CORPUS;
use powreg::field::Rationals;

fn main() -> powreg::Result<()> {
    for entry in CORPUS {
        let ideal = entry.ideal(Rationals)?;
        let max_t = if entry.nvars > 5 { 2 } else { 4 };
        let report = AsymptoticReport::compute(entry.name, &ideal, max_t, 2, Some(Duration::from_secs(30)))?;
        print!("{}", report.to_text());
        println!();
    }

    let cubic = powreg::corpus::lookup("twisted-cubic")?.ideal(Rationals)?;
    let report = AsymptoticReport::compute("twisted-cubic", &cubic, 3, 2, None)?;
    println!("{}", serde_json::to_string_pretty(&report.to_json()).expect("json"));
    Ok(())
}
