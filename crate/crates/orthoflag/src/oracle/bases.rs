use super::*;

/// Every vector of `space` outside `avoid`.
fn vectors_outside(space: &Subspace, avoid: &Subspace) -> Vec<Vec<u32>> {
    let f = space.field();
    let basis = space.vectors();
    let p = f.p() as usize;
    let total = p.pow(basis.len() as u32);
    let mut out = Vec::new();
    for mut code in 0..total {
        let mut v = vec![0; space.ambient()];
        for b in &basis {
            let c = (code % p) as u32;
            code /= p;
            crate::exactlin::axpy(f, c, b, &mut v);
        }
        if !avoid.contains(&v) {
            out.push(v);
        }
    }
    out
}

/// Number of bases (u_1..u_N) with u_i ∈ V_i \ V_{i-1} accepted by `accept`.
pub fn count_bases(flag: &Flag, accept: impl Fn(&[Vec<u32>]) -> bool, cap: u128) -> Result<u128> {
    let spaces = chain(flag)?;
    let choices: Vec<Vec<Vec<u32>>> = (1..spaces.len())
        .map(|i| vectors_outside(&spaces[i], &spaces[i - 1]))
        .collect();
    let total = choices.iter().map(|c| c.len() as u128).product();
    guard("candidate bases", total, cap)?;
    let mut count = 0;
    let mut basis = Vec::with_capacity(choices.len());
    fn walk(
        k: usize,
        choices: &[Vec<Vec<u32>>],
        basis: &mut Vec<Vec<u32>>,
        accept: &dyn Fn(&[Vec<u32>]) -> bool,
        count: &mut u128,
    ) {
        if k == choices.len() {
            *count += accept(basis) as u128;
            return;
        }
        for v in &choices[k] {
            basis.push(v.clone());
            walk(k + 1, choices, basis, accept, count);
            basis.pop();
        }
    }
    walk(0, &choices, &mut basis, &accept, &mut count);
    Ok(count)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum BasisCalc {
    Sp,
    Q,
    Levi(usize, usize),
}

/// Exhaustive count of bases adapted to `flag` in the given calculus.
pub fn count_adapted_bases(flag: &Flag, calc: BasisCalc, cap: u128) -> Result<u128> {
    let f = flag.field();
    let dim = flag.ambient();
    match calc {
        BasisCalc::Sp => {
            let form = Form::alternating(f, dim / 2);
            let c = sp_cmatrix(flag, &form)?;
            count_bases(flag, |b| is_sp_adapted(b, flag, &form, &c), cap)
        }
        BasisCalc::Q => {
            let form = Form::alternating(f, dim / 2);
            let sym = q_symbol(flag, &form)?;
            count_bases(flag, |b| is_q_adapted(b, flag, &form, &sym), cap)
        }
        BasisCalc::Levi(mp, mm) => {
            let sym = levi_symbol(flag, mp, mm)?;
            count_bases(flag, |b| is_levi_adapted(b, flag, &sym), cap)
        }
    }
}

/// The symbol of `flag` together with its closed basis count, for comparison with
/// [`count_adapted_bases`].
pub fn adapted_basis_formula(flag: &Flag, calc: BasisCalc) -> Result<(String, u128)> {
    let f = flag.field();
    let r = f.p() as u64;
    let form = Form::alternating(f, flag.ambient() / 2);
    let (name, formula) = match calc {
        BasisCalc::Sp => {
            let s = sp_symbol(flag, &form)?;
            (s.render(), s.basis_count_formula())
        }
        BasisCalc::Q => {
            let s: QSymbol = q_symbol(flag, &form)?;
            (s.render(), s.basis_count_formula())
        }
        BasisCalc::Levi(mp, mm) => {
            let s: LeviSymbol = levi_symbol(flag, mp, mm)?;
            (s.render(), s.basis_count_formula())
        }
    };
    let value = formula.eval(r);
    Ok((
        name,
        u128::try_from(value).map_err(|_| Error::Validation("count overflows u128".into()))?,
    ))
}
