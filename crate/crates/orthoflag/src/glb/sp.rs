use super::{
    chain, inversions, letter_pairs, perfect_matchings, perp_cmatrix, pick_outside, pick_pairing,
    read_pairs, CMatrix,
};
use crate::error::{Error, Result};
use crate::exactlin::{unit, Field, Flag, Subspace};
use crate::forms::Form;
use crate::sizes::{sp_order, SizeFormula};
use num_bigint::BigUint;
use std::fmt;

/// A perfect matching of {1..2n}, pairs (i_t, j_t) with i_t < j_t and i_1 < i_2 < ….
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct SpSymbol {
    pairs: Vec<(usize, usize)>,
}

impl SpSymbol {
    pub fn from_pairs(pairs: &[(usize, usize)]) -> Result<SpSymbol> {
        let mut pairs: Vec<(usize, usize)> =
            pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort();
        let len = 2 * pairs.len();
        let mut hit = vec![false; len + 1];
        for &(a, b) in &pairs {
            for x in [a, b] {
                if x == 0 || x > len || hit[x] {
                    return Err(Error::Validation(format!(
                        "pairs do not partition 1..{len}"
                    )));
                }
                hit[x] = true;
            }
        }
        Ok(SpSymbol { pairs })
    }

    pub fn from_cmatrix(c: &CMatrix) -> Result<SpSymbol> {
        if !(c.is_permutation() && c.is_symmetric() && c.zero_diagonal()) {
            return Err(Error::Validation(
                "c is not a symmetric fixed-point-free permutation".into(),
            ));
        }
        let tau = c.tau();
        let pairs: Vec<(usize, usize)> = (1..=c.size())
            .filter(|&i| tau[i - 1] > i)
            .map(|i| (i, tau[i - 1]))
            .collect();
        SpSymbol::from_pairs(&pairs)
    }

    pub fn parse(s: &str) -> Result<SpSymbol> {
        let chars: Vec<char> = s.chars().collect();
        if let Some(bad) = chars.iter().find(|c| !c.is_ascii_uppercase()) {
            return Err(Error::Validation(format!(
                "unexpected letter {bad} in an Sp symbol"
            )));
        }
        SpSymbol::from_pairs(&read_pairs(&chars, |_| true)?)
    }

    pub fn n(&self) -> usize {
        self.pairs.len()
    }

    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn cmatrix(&self) -> CMatrix {
        let tau = self.tau();
        CMatrix::from_fn(2 * self.n(), |i, j| (tau[i - 1] == j) as i64)
    }

    pub fn tau(&self) -> Vec<usize> {
        let mut t = vec![0; 2 * self.n()];
        for &(i, j) in &self.pairs {
            t[i - 1] = j;
            t[j - 1] = i;
        }
        t
    }

    /// (i_1 j_1 i_2 j_2 … i_n j_n)
    pub fn sigma(&self) -> Vec<usize> {
        self.pairs.iter().flat_map(|&(i, j)| [i, j]).collect()
    }

    pub fn ell_sigma(&self) -> usize {
        inversions(&self.sigma())
    }

    pub fn ell_tau(&self) -> usize {
        inversions(&self.tau())
    }

    pub fn render(&self) -> String {
        let mut slots = vec!['?'; 2 * self.n()];
        letter_pairs(&mut slots, &self.pairs, 'A');
        slots.into_iter().collect()
    }

    /// |H F| as a product formula in r.
    pub fn size_formula(&self) -> SizeFormula {
        sp_order(self.n()) / self.basis_count_formula()
    }

    pub fn orbit_size(&self, r: u64) -> BigUint {
        self.size_formula().eval(r)
    }

    /// Number of bases adapted to a flag with this symbol: (r-1)^n r^{n+ℓ(σ)}.
    pub fn basis_count_formula(&self) -> SizeFormula {
        let n = self.n();
        SizeFormula::rk_minus_1(1).pow(n as i64) * SizeFormula::r_pow((n + self.ell_sigma()) as i64)
    }

    /// u_{i_t} = e_t, u_{j_t} = e_{2n+1-t}.
    pub fn standard_basis(&self) -> Vec<Vec<u32>> {
        let dim = 2 * self.n();
        let mut u = vec![Vec::new(); dim];
        for (t, &(i, j)) in self.pairs.iter().enumerate() {
            u[i - 1] = unit(dim, t);
            u[j - 1] = unit(dim, dim - 1 - t);
        }
        u
    }

    pub fn standard_flag(&self, field: Field) -> Flag {
        super::flag_of(field, &self.standard_basis())
    }
}

impl fmt::Display for SpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

pub fn sp_cmatrix(flag: &Flag, form: &Form) -> Result<CMatrix> {
    perp_cmatrix(flag, form)
}

pub fn sp_symbol(flag: &Flag, form: &Form) -> Result<SpSymbol> {
    SpSymbol::from_cmatrix(&sp_cmatrix(flag, form)?)
}

pub fn sp_symbols(n: usize) -> Vec<SpSymbol> {
    let items: Vec<usize> = (1..=2 * n).collect();
    perfect_matchings(&items)
        .iter()
        .map(|m| SpSymbol::from_pairs(m).unwrap())
        .collect()
}

/// (2n-1)(2n-3)⋯1
pub fn sp_count(n: usize) -> u128 {
    (1..=n as u128).map(|k| 2 * k - 1).product()
}

/// Basis v with V_i = span(v_1..v_i) and ⟨v_i, v_j⟩ = c_{i,j} for i < j, built pair by pair
/// inside the successive orthogonal complements.
pub fn sp_adapted_basis(flag: &Flag, form: &Form) -> Result<Vec<Vec<u32>>> {
    let sym = sp_symbol(flag, form)?;
    let spaces = chain(flag)?;
    let perps: Vec<Subspace> = spaces.iter().map(|v| form.perp(v)).collect();
    let f = form.field();
    let dim = form.dim();
    let mut rest = Subspace::full(f, dim);
    let mut v = vec![Vec::new(); dim];
    for &(i, j) in sym.pairs() {
        let (vi, vj) = split_pair(form, &spaces, &perps, &rest, i, j, None)?;
        rest = rest.intersect(&form.perp(&Subspace::span(f, dim, &[vi.clone(), vj.clone()])));
        v[i - 1] = vi;
        v[j - 1] = vj;
    }
    Ok(v)
}

/// v_i ∈ V_i ∩ rest ∩ V_{j-1}^⊥ outside V_{i-1}, v_j ∈ V_j ∩ rest ∩ V_{i-1}^⊥ with ⟨v_i, v_j⟩ = 1,
/// both inside `within` when given.
pub(crate) fn split_pair(
    form: &Form,
    spaces: &[Subspace],
    perps: &[Subspace],
    rest: &Subspace,
    i: usize,
    j: usize,
    within: Option<&Subspace>,
) -> Result<(Vec<u32>, Vec<u32>)> {
    let cut = |s: Subspace| match within {
        Some(w) => s.intersect(w),
        None => s,
    };
    let fail = || Error::Validation(format!("no adapted vectors for the pair ({i}, {j})"));
    let a = cut(spaces[i].intersect(rest).intersect(&perps[j - 1]));
    let vi = pick_outside(&a, &spaces[i - 1]).ok_or_else(fail)?;
    let b = cut(spaces[j].intersect(rest).intersect(&perps[i - 1]));
    let vj = pick_pairing(form, &vi, &b).ok_or_else(fail)?;
    Ok((vi, vj))
}

/// Conditions (a) and (b) for a candidate basis.
pub fn is_sp_adapted(basis: &[Vec<u32>], flag: &Flag, form: &Form, c: &CMatrix) -> bool {
    let Ok(spaces) = chain(flag) else {
        return false;
    };
    let f = form.field();
    let dim = form.dim();
    let mut span = Subspace::zero(f, dim);
    for (k, v) in basis.iter().enumerate() {
        span = span.add_vector(v);
        if span != spaces[k + 1] {
            return false;
        }
    }
    (0..dim).all(|a| {
        (a + 1..dim).all(|b| form.pair(&basis[a], &basis[b]) == f.from_i64(c.get(a + 1, b + 1)))
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::enumerate_full_flags;

    #[test]
    fn coordinate_flag_is_abba() {
        let f = Field::of(3);
        let form = Form::alternating(f, 2);
        let fl = Flag::from_matrix(&crate::exactlin::Matrix::identity(f, 4)).unwrap();
        let sym = sp_symbol(&fl, &form).unwrap();
        assert_eq!(sym.render(), "ABBA");
        assert_eq!(sym.pairs(), &[(1, 4), (2, 3)]);
    }

    #[test]
    fn n2_lengths_and_sizes() {
        let cases = [("AABB", 0, 180u32), ("ABAB", 1, 90), ("ABBA", 2, 45)];
        for (s, ell, size) in cases {
            let sym = SpSymbol::parse(s).unwrap();
            assert_eq!(sym.ell_sigma(), ell);
            assert_eq!(sym.orbit_size(2), BigUint::from(size));
            assert_eq!(sym.render(), s);
        }
        assert_eq!(SpSymbol::parse("AA").unwrap().ell_sigma(), 0);
    }

    #[test]
    fn counts() {
        let got: Vec<u128> = (1..=4).map(sp_count).collect();
        assert_eq!(got, vec![1, 3, 15, 105]);
        for n in 1..=4 {
            assert_eq!(sp_symbols(n).len() as u128, sp_count(n));
        }
    }

    #[test]
    fn bad_symbols() {
        assert!(SpSymbol::parse("AAB").is_err());
        assert!(SpSymbol::parse("A+A+").is_err());
    }

    #[test]
    fn standard_flags_realize_symbols() {
        let f = Field::of(3);
        for n in 1..=3 {
            let form = Form::alternating(f, n);
            for sym in sp_symbols(n) {
                assert_eq!(sp_symbol(&sym.standard_flag(f), &form).unwrap(), sym);
                let c = sym.cmatrix();
                assert!(is_sp_adapted(
                    &sym.standard_basis(),
                    &sym.standard_flag(f),
                    &form,
                    &c
                ));
            }
        }
    }

    #[test]
    fn adapted_basis_on_every_flag() {
        for p in [2, 3] {
            let f = Field::of(p);
            let form = Form::alternating(f, 2);
            for fl in enumerate_full_flags(f, 4, 10_000).unwrap() {
                let c = sp_cmatrix(&fl, &form).unwrap();
                assert!(c.is_permutation() && c.is_symmetric() && c.zero_diagonal());
                let b = sp_adapted_basis(&fl, &form).unwrap();
                assert!(is_sp_adapted(&b, &fl, &form, &c));
            }
        }
    }
}
