//! Generators of the small classical groups and their orders by closure.

use orthoflag::exactlin::Field;
use orthoflag::forms::{closure_order, generators, in_group, random_word, Group};
use rand::rngs::StdRng;
use rand::SeedableRng;

fn main() -> orthoflag::Result<()> {
    let f2 = Field::new(2)?;
    let f3 = Field::new(3)?;
    for (g, f) in [
        (Group::Sp(2), f2),
        (Group::Q(2), f2),
        (Group::SoOdd(1), f3),
        (Group::Levi(2, 1), f3),
    ] {
        let gens = generators(g, f)?;
        let order = closure_order(&gens, g.degree(), f, 100_000);
        println!(
            "{} over F_{}: {} generators, order {:?}",
            g.name(),
            f.p(),
            gens.len(),
            order
        );
    }

    let gens = generators(Group::SoOdd(2), f3)?;
    let g = random_word(&gens, 20, &mut StdRng::seed_from_u64(1));
    println!(
        "random word in SO_5(F_3): {}",
        in_group(&g, Group::SoOdd(2))?
    );
    Ok(())
}
