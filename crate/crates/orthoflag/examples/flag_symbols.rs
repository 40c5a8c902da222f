//! Sp, Q and Levi symbols of one flag in F_3^4, with orbit sizes.

use orthoflag::exactlin::{Field, Flag};
use orthoflag::forms::Form;
use orthoflag::glb::levi::levi_symbol;
use orthoflag::glb::q::q_symbol;
use orthoflag::glb::sp::{sp_symbol, sp_symbols};

fn main() -> orthoflag::Result<()> {
    let f = Field::new(3)?;
    let form = Form::alternating(f, 2);
    let flag = Flag::from_basis(
        f,
        4,
        &[vec![1, 0, 1, 0], vec![0, 1, 0, 0], vec![0, 0, 1, 2]],
    )?;

    let s = sp_symbol(&flag, &form)?;
    println!("Sp:   {}  size {}", s.render(), s.orbit_size(3));
    let q = q_symbol(&flag, &form)?;
    println!("Q:    {}  size {}", q.render(), q.orbit_size(3));
    let l = levi_symbol(&flag, 2, 2)?;
    println!("Levi: {}  size {}", l.render(), l.orbit_size(3));

    println!("all Sp_4 symbols:");
    for s in sp_symbols(2) {
        println!(
            "  {} ell(sigma)={} size(r)={}",
            s.render(),
            s.ell_sigma(),
            s.size_formula().eval(3)
        );
    }
    Ok(())
}
