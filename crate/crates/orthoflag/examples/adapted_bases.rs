//! Exhaustive count of adapted bases for each standard Sp_4 flag over F_3.

use orthoflag::exactlin::Field;
use orthoflag::oracle::{
    adapted_basis_formula, count_adapted_bases, standard_flags, BasisCalc, FlagCalc,
};

fn main() -> orthoflag::Result<()> {
    let f = Field::new(3)?;
    for flag in standard_flags(FlagCalc::Sp(2), f) {
        let (symbol, formula) = adapted_basis_formula(&flag, BasisCalc::Sp)?;
        let counted = count_adapted_bases(&flag, BasisCalc::Sp, 10_000_000)?;
        println!("{symbol}: counted {counted}, formula {formula}");
    }
    Ok(())
}
