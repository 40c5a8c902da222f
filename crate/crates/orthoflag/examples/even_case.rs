//! The split even orthogonal case: components of M', labels and orbit counts.

use orthoflag::exactlin::Field;
use orthoflag::forms::Form;
use orthoflag::so_even::*;

fn main() -> orthoflag::Result<()> {
    let f = Field::new(3)?;
    let n = 3;
    let form = Form::symmetric_odd(f, n)?;
    let mprime: Vec<_> = form
        .maximal_isotropics()
        .into_iter()
        .filter(|v| in_mprime(v, &form))
        .collect();
    let ones = mprime
        .iter()
        .filter(|v| component(v, &form).map(|c| c.0 == 1).unwrap_or(false))
        .count();
    println!(
        "|M'| = {} ({} in the odd component), formula {}",
        mprime.len(),
        ones,
        mprime_size(n, 3)
    );

    for l in even_labels(n) {
        println!("{l}: {}", even_orbit_size(&l, 3)?);
    }
    println!(
        "triples {} (same {}, mixed {}), T'_0 {} (same {}, diff {})",
        count_even_triples(n),
        count_even_triples_component(n, true),
        count_even_triples_component(n, false),
        count_even_t0(n),
        count_even_t0_component(n, true),
        count_even_t0_component(n, false)
    );
    Ok(())
}
