//! Closure diagram of the Q_4 orbits on full flags, as DOT.

use orthoflag::exactlin::Field;
use orthoflag::oracle::{flag_hasse, to_dot, FlagCalc};

fn main() -> orthoflag::Result<()> {
    let edges = flag_hasse(FlagCalc::Q(2), Field::new(3)?)?;
    print!("{}", to_dot("Q_4", &edges));
    Ok(())
}
