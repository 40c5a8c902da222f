//! Brute-force orbit checks against the closed formulas.

use orthoflag::oracle::{verify, Case};

fn main() -> orthoflag::Result<()> {
    for (case, n, p) in [
        (Case::Sp, 2, 2),
        (Case::Q, 2, 2),
        (Case::OneSp, 2, 3),
        (Case::SoTriple, 1, 3),
    ] {
        let rep = verify(case, n, p, None, 1_000_000)?;
        let status = if rep.ok() { "ok" } else { "MISMATCH" };
        println!(
            "{case} n={n} p={p}: {} on {} points, {status}",
            rep.summary(),
            rep.universe
        );
        for fail in &rep.failures {
            println!("  {fail}");
        }
    }
    Ok(())
}
