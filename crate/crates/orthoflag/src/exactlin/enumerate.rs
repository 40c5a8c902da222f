use super::field::Field;
use super::flag::{lines_in_quotient, Flag};
use super::matrix::Matrix;
use super::subspace::Subspace;
use crate::error::{Error, Result};

pub const DEFAULT_CAP: u128 = 100_000_000;

/// Gaussian binomial [n choose k]_q.
pub fn gaussian_binomial(n: usize, k: usize, q: u128) -> u128 {
    if k > n {
        return 0;
    }
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num *= q.pow((n - i) as u32) - 1;
        den *= q.pow((i + 1) as u32) - 1;
    }
    num / den
}

/// Number of full flags of F_q^n.
pub fn flag_count(n: usize, q: u128) -> u128 {
    (1..=n).map(|m| (q.pow(m as u32) - 1) / (q - 1)).product()
}

pub fn guard(what: &str, needed: u128, cap: u128) -> Result<()> {
    if needed > cap {
        Err(Error::Guard {
            what: what.to_string(),
            needed,
            cap,
        })
    } else {
        Ok(())
    }
}

/// Every k-dimensional subspace of F_p^n, each once, in echelon order.
pub fn enumerate_subspaces(field: Field, n: usize, k: usize, cap: u128) -> Result<Vec<Subspace>> {
    guard("subspaces", gaussian_binomial(n, k, field.p() as u128), cap)?;
    let mut out = Vec::new();
    if k == 0 {
        out.push(Subspace::zero(field, n));
        return Ok(out);
    }
    let p = field.p() as u64;
    let mut pivots: Vec<usize> = (0..k).collect();
    loop {
        // free slots: row r, column c > pivots[r], c not a pivot
        let free: Vec<(usize, usize)> = (0..k)
            .flat_map(|r| {
                let pv = pivots.clone();
                (pivots[r] + 1..n)
                    .filter(move |c| !pv.contains(c))
                    .map(move |c| (r, c))
            })
            .collect();
        let total = p.pow(free.len() as u32);
        for code in 0..total {
            let mut m = Matrix::zeros(field, k, n);
            for (r, &c) in pivots.iter().enumerate() {
                m.set(r, c, 1);
            }
            let mut x = code;
            for &(r, c) in &free {
                m.set(r, c, (x % p) as u32);
                x /= p;
            }
            out.push(Subspace::from_matrix(&m));
        }
        // next combination
        let mut i = k;
        loop {
            if i == 0 {
                return Ok(out);
            }
            i -= 1;
            if pivots[i] < n - k + i {
                pivots[i] += 1;
                for j in i + 1..k {
                    pivots[j] = pivots[j - 1] + 1;
                }
                break;
            }
        }
    }
}

/// Flags V_1 ⊂ … ⊂ V_k grown one line at a time inside `within(V_i)`, keeping those that
/// pass `keep`. With `within` = whole space and `keep` = true this lists all partial flags.
pub fn grow_flags<W, K>(field: Field, ambient: usize, k: usize, within: W, keep: K) -> Vec<Flag>
where
    W: Fn(&Subspace) -> Subspace,
    K: Fn(&Subspace, &[u32]) -> bool,
{
    let mut level = vec![Flag::from_basis(field, ambient, &[]).unwrap()];
    for _ in 0..k {
        let mut next = Vec::new();
        for fl in &level {
            let top = fl.v(fl.top());
            let room = within(top);
            for v in lines_in_quotient(&room, top) {
                if keep(top, &v) {
                    next.push(fl.push(&v));
                }
            }
        }
        level = next;
    }
    level
}

/// All full flags of F_p^n.
pub fn enumerate_full_flags(field: Field, n: usize, cap: u128) -> Result<Vec<Flag>> {
    guard("full flags", flag_count(n, field.p() as u128), cap)?;
    let full = Subspace::full(field, n);
    let mut flags = grow_flags(field, n, n, |_| full.clone(), |_, _| true);
    flags.sort();
    Ok(flags)
}
