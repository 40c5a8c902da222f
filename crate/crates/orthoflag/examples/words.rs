//! Word symbols of the orbits on M x M x M_0 for n = 2, realized and classified back.

use orthoflag::exactlin::Field;
use orthoflag::forms::Form;
use orthoflag::so_triple::u_d;
use orthoflag::t0_words::{classify_t0, count_t0, enumerate_words, realize};

fn main() -> orthoflag::Result<()> {
    let f = Field::new(5)?;
    let n = 2;
    let form = Form::symmetric_odd(f, n)?;
    let words = enumerate_words(n)?;
    println!("{} words (count formula {})", words.len(), count_t0(n));
    for w in &words {
        let flag = realize(w, f)?;
        let back = classify_t0(&u_d(f, n, 0)?, &u_d(f, n, w.d())?, &flag, &form)?;
        println!(
            "{:>8} d={} ell(tau)={} size(5)={}",
            w.render(true),
            w.d(),
            w.ell_tau(),
            w.size_formula().eval(5)
        );
        assert_eq!(&back, w);
    }
    Ok(())
}
