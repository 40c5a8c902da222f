//! Row reduction, sums, intersections and orthogonal complements over F_5.

use orthoflag::exactlin::{Field, Matrix, Subspace};
use orthoflag::forms::Form;

fn main() -> orthoflag::Result<()> {
    let f = Field::new(5)?;
    let m = Matrix::from_i64(f, &[&[1, 2, 0, 4], &[2, 4, 1, 3], &[3, 1, 1, 2]]);
    let (r, pivots) = m.rref();
    println!("rank {} pivots {:?}", m.rank(), pivots);
    for row in r.row_vecs() {
        println!("  {row:?}");
    }

    let u = Subspace::span(f, 4, &[vec![1, 0, 0, 0], vec![0, 1, 0, 0]]);
    let w = Subspace::span(f, 4, &[vec![0, 1, 0, 0], vec![0, 0, 1, 1]]);
    println!(
        "dim U+W = {}, dim U∩W = {}",
        u.sum(&w).dim(),
        u.intersect(&w).dim()
    );

    let form = Form::alternating(f, 2);
    let up = form.perp(&u);
    println!(
        "U^perp = {:?}, isotropic: {}",
        up.vectors(),
        form.is_isotropic(&u)
    );
    Ok(())
}
