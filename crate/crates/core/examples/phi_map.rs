//! Rank of H^0(I^a(k)) -> H^0(S^a N*(k)) degree by degree.

use powreg::cohomology::PhiAnalysis;
use powreg::corpus::lookup;
use powreg::field::Rationals;

fn main() -> powreg::Result<()> {
    let ideal = lookup("twisted-cubic")?.ideal(Rationals)?;
    for a in 1..=3 {
        let phi = PhiAnalysis::new(&ideal, a)?;
        println!("a = {a}");
        println!("{:>4} {:>7} {:>7} {:>5} {:>7} {:>6}", "k", "source", "kernel", "rank", "target", "coker");
        for k in 0..=2 * a as i64 + 4 {
            let r = phi.at(k)?;
            println!(
                "{k:>4} {:>7} {:>7} {:>5} {:>7} {:>6}{}",
                r.source_dim,
                r.kernel_dim,
                r.rank,
                r.target_dim,
                r.cokernel_dim,
                if r.lci_consistent { "" } else { "  (I^a/I^(a+1) differs)" }
            );
        }
    }
    Ok(())
}
