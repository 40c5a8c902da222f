//! Invariants of a triple of maximal isotropic subspaces of F_3^5 and a
//! normalizing group element.

use orthoflag::exactlin::Field;
use orthoflag::forms::{in_group, Form, Group};
use orthoflag::so_triple::{
    count_orbits, normalize_triple, representative, triple_invariants, u_d, TripleLabel,
};

fn main() -> orthoflag::Result<()> {
    let f = Field::new(3)?;
    let n = 2;
    let form = Form::symmetric_odd(f, n)?;
    let m = form.maximal_isotropics();
    println!("|M| = {}, {} orbits on M x M x M", m.len(), count_orbits(n));

    let (v1, v2, v3) = (&m[3], &m[17], &m[29]);
    let label = triple_invariants(v1, v2, v3, &form)?;
    let (g, same) = normalize_triple(v1, v2, v3, &form)?;
    println!(
        "label {label}, size {}, g in SO_5: {}",
        label.orbit_size(3),
        in_group(&g, Group::SoOdd(n))?
    );
    assert_eq!(label, same);

    let l = TripleLabel::parse("0,0,0,0,2,1")?;
    let v = representative(&l, f)?;
    let back = triple_invariants(&u_d(f, n, 0)?, &u_d(f, n, l.d())?, &v, &form)?;
    println!("representative of {l}: {:?} -> {back}", v.vectors());
    Ok(())
}
