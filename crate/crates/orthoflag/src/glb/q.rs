use super::sp::{split_pair, SpSymbol};
use super::{
    chain, inversions, letter_pairs, perfect_matchings, perp_cmatrix, read_pairs, scale, subsets,
    CMatrix,
};
use crate::error::{Error, Result};
use crate::exactlin::{axpy, unit, Field, Flag, Subspace};
use crate::forms::Form;
use crate::sizes::{sp_order, SizeFormula};
use num_bigint::BigUint;
use std::collections::BTreeSet;
use std::fmt;

/// Partition {1..2n} = A ⊔ X ⊔ Y with a matching on A; x_t is paired with y_t.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QSymbol {
    len: usize,
    xs: Vec<usize>,
    ys: Vec<usize>,
    a_pairs: Vec<(usize, usize)>,
}

impl QSymbol {
    pub fn new(
        len: usize,
        xs: &[usize],
        ys: &[usize],
        a_pairs: &[(usize, usize)],
    ) -> Result<QSymbol> {
        let mut xs = xs.to_vec();
        let mut ys = ys.to_vec();
        xs.sort();
        ys.sort();
        let mut a_pairs: Vec<(usize, usize)> =
            a_pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        a_pairs.sort();
        if len % 2 == 1 || xs.len() != ys.len() || xs.is_empty() {
            return Err(Error::Validation(
                "need |X| = |Y| ≥ 1 and even length".into(),
            ));
        }
        let mut hit = vec![false; len + 1];
        let all = xs
            .iter()
            .chain(&ys)
            .copied()
            .chain(a_pairs.iter().flat_map(|&(a, b)| [a, b]));
        let mut total = 0;
        for x in all {
            if x == 0 || x > len || hit[x] {
                return Err(Error::Validation(format!(
                    "positions do not partition 1..{len}"
                )));
            }
            hit[x] = true;
            total += 1;
        }
        if total != len {
            return Err(Error::Validation(format!(
                "positions do not partition 1..{len}"
            )));
        }
        Ok(QSymbol {
            len,
            xs,
            ys,
            a_pairs,
        })
    }

    pub fn parse(s: &str) -> Result<QSymbol> {
        let chars: Vec<char> = s.chars().collect();
        if let Some(bad) = chars.iter().find(|c| !c.is_ascii_uppercase()) {
            return Err(Error::Validation(format!(
                "unexpected letter {bad} in a Q symbol"
            )));
        }
        let pos = |ch: char| -> Vec<usize> {
            chars
                .iter()
                .enumerate()
                .filter(|&(_, &c)| c == ch)
                .map(|(k, _)| k + 1)
                .collect()
        };
        let a = read_pairs(&chars, |c| c != 'X' && c != 'Y')?;
        QSymbol::new(chars.len(), &pos('X'), &pos('Y'), &a)
    }

    pub fn n(&self) -> usize {
        self.len / 2
    }
    pub fn s(&self) -> usize {
        self.xs.len()
    }
    pub fn xs(&self) -> &[usize] {
        &self.xs
    }
    pub fn ys(&self) -> &[usize] {
        &self.ys
    }
    pub fn a_pairs(&self) -> &[(usize, usize)] {
        &self.a_pairs
    }

    /// S_0 = {(x_t, y_t)}.
    pub fn s0(&self) -> Vec<(usize, usize)> {
        self.xs
            .iter()
            .copied()
            .zip(self.ys.iter().copied())
            .collect()
    }

    /// The whole matching c, as an Sp symbol.
    pub fn sp_part(&self) -> SpSymbol {
        let mut pairs = self.a_pairs.clone();
        pairs.extend(self.s0());
        SpSymbol::from_pairs(&pairs).unwrap()
    }

    pub fn sigma(&self) -> Vec<usize> {
        self.sp_part().sigma()
    }

    pub fn ell_sigma(&self) -> usize {
        inversions(&self.sigma())
    }

    /// (i, j) ∈ S iff i ≥ x_t and j ≤ y_t for some t.
    pub fn in_s(&self, i: usize, j: usize) -> bool {
        self.s0().iter().any(|&(x, y)| i >= x && j <= y)
    }

    /// Number of ordered (i, j) with c_{i,j} = 1 lying in S but not in S_0.
    pub fn m(&self) -> usize {
        let tau = self.sp_part().tau();
        let s0 = self.s0();
        (1..=self.len)
            .map(|i| (i, tau[i - 1]))
            .filter(|&(i, j)| self.in_s(i, j) && !s0.contains(&(i, j)))
            .count()
    }

    pub fn render(&self) -> String {
        let mut slots = vec!['?'; self.len];
        for &x in &self.xs {
            slots[x - 1] = 'X';
        }
        for &y in &self.ys {
            slots[y - 1] = 'Y';
        }
        letter_pairs(&mut slots, &self.a_pairs, 'A');
        slots.into_iter().collect()
    }

    /// (r-1)^{n-s} r^{n+ℓ(σ)-m}
    pub fn basis_count_formula(&self) -> SizeFormula {
        let n = self.n() as i64;
        SizeFormula::rk_minus_1(1).pow(n - self.s() as i64)
            * SizeFormula::r_pow(n + self.ell_sigma() as i64 - self.m() as i64)
    }

    /// |Q_{2n}| / (basis count), |Q_{2n}| = |Sp_{2n}| / (r^{2n} - 1).
    pub fn size_formula(&self) -> SizeFormula {
        sp_order(self.n()) / SizeFormula::rk_minus_1(self.len as u32) / self.basis_count_formula()
    }

    pub fn orbit_size(&self, r: u64) -> BigUint {
        self.size_formula().eval(r)
    }

    fn eps(&self, t: usize) -> i64 {
        if self.xs[t] < self.ys[t] {
            1
        } else {
            -1
        }
    }

    pub fn standard_basis(&self, field: Field) -> Vec<Vec<u32>> {
        let dim = self.len;
        let s = self.s();
        let mut u = vec![Vec::new(); dim];
        for (t, &(i, j)) in self.a_pairs.iter().enumerate() {
            u[i - 1] = unit(dim, s + t);
            u[j - 1] = unit(dim, dim - s - 1 - t);
        }
        for t in 0..s {
            let mut x = unit(dim, 0);
            if t + 1 < s {
                x[t + 1] = 1;
            }
            u[self.xs[t] - 1] = x;
            let e = field.from_i64(self.eps(t));
            let y = if t + 1 < s {
                scale(field, e, &unit(dim, dim - 2 - t))
            } else {
                let mut y = unit(dim, dim - 1);
                for k in 0..s - 1 {
                    y[dim - 2 - k] = field.neg(1);
                }
                scale(field, e, &y)
            };
            u[self.ys[t] - 1] = y;
        }
        u
    }

    pub fn standard_flag(&self, field: Field) -> Flag {
        super::flag_of(field, &self.standard_basis(field))
    }
}

impl fmt::Display for QSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// W = (F e_{2n})^⊥ = span(e_2..e_{2n}).
pub fn w_hyperplane(field: Field, dim: usize) -> Subspace {
    Subspace::coordinate(field, dim, &(1..dim).collect::<Vec<_>>())
}

/// The sets S and S_0 computed from the flag.
pub fn q_s_sets(
    flag: &Flag,
    form: &Form,
) -> Result<(BTreeSet<(usize, usize)>, Vec<(usize, usize)>)> {
    let spaces = chain(flag)?;
    let perps: Vec<Subspace> = spaces.iter().map(|v| form.perp(v)).collect();
    let dim = form.dim();
    let w = w_hyperplane(form.field(), dim);
    let inside = |i: usize, j: usize| w.contains_space(&spaces[i].intersect(&perps[j]));
    let mut s = BTreeSet::new();
    let mut s0 = Vec::new();
    for i in 1..=dim {
        for j in 1..=dim {
            if !inside(i, j - 1) {
                s.insert((i, j));
                if inside(i, j) && inside(i - 1, j - 1) {
                    s0.push((i, j));
                }
            }
        }
    }
    Ok((s, s0))
}

pub fn q_symbol(flag: &Flag, form: &Form) -> Result<QSymbol> {
    let c = perp_cmatrix(flag, form)?;
    let (_, s0) = q_s_sets(flag, form)?;
    q_symbol_from(&c, &s0)
}

fn q_symbol_from(c: &CMatrix, s0: &[(usize, usize)]) -> Result<QSymbol> {
    let sp = SpSymbol::from_cmatrix(c)?;
    let mut s0 = s0.to_vec();
    s0.sort();
    let xs: Vec<usize> = s0.iter().map(|p| p.0).collect();
    let ys: Vec<usize> = s0.iter().map(|p| p.1).collect();
    let used: BTreeSet<usize> = xs.iter().chain(&ys).copied().collect();
    let a: Vec<(usize, usize)> = sp
        .pairs()
        .iter()
        .copied()
        .filter(|&(i, j)| !used.contains(&i) && !used.contains(&j))
        .collect();
    let sym = QSymbol::new(c.size(), &xs, &ys, &a)?;
    if sym.sp_part() != sp {
        return Err(Error::Validation(
            "S_0 does not follow the matching c".into(),
        ));
    }
    Ok(sym)
}

pub fn q_symbols(n: usize) -> Vec<QSymbol> {
    let len = 2 * n;
    let all: Vec<usize> = (1..=len).collect();
    let mut out = Vec::new();
    for s in 1..=n {
        for xs in subsets(&all, s) {
            let rest: Vec<usize> = all.iter().copied().filter(|i| !xs.contains(i)).collect();
            for ys in subsets(&rest, s) {
                let a: Vec<usize> = rest.iter().copied().filter(|i| !ys.contains(i)).collect();
                for m in perfect_matchings(&a) {
                    out.push(QSymbol::new(len, &xs, &ys, &m).unwrap());
                }
            }
        }
    }
    out
}

/// Σ_{s=1}^n (2n)! / (2^{n-s} (s!)^2 (n-s)!)
pub fn q_count(n: usize) -> u128 {
    use crate::sizes::factorial;
    let n = n as u64;
    (1..=n)
        .map(|s| {
            factorial(2 * n)
                / (2u128.pow((n - s) as u32) * factorial(s) * factorial(s) * factorial(n - s))
        })
        .sum()
}

/// Basis with (a) V_i = span(v_1..v_i), (b) ⟨v_i, v_j⟩ = c_{i,j} for i < j, (c) v_i ∈ W off the
/// X positions and ⟨v_x, e_{2n}⟩ = 1.
pub fn q_adapted_basis(flag: &Flag, form: &Form) -> Result<Vec<Vec<u32>>> {
    let sym = q_symbol(flag, form)?;
    let spaces = chain(flag)?;
    let perps: Vec<Subspace> = spaces.iter().map(|v| form.perp(v)).collect();
    let f = form.field();
    let dim = form.dim();
    let w = w_hyperplane(f, dim);
    let e_last = unit(dim, dim - 1);
    let mut rest = Subspace::full(f, dim);
    let mut v = vec![Vec::new(); dim];
    let cut = |rest: &mut Subspace, a: &[u32], b: &[u32]| {
        let u = Subspace::span(f, dim, &[a.to_vec(), b.to_vec()]);
        *rest = rest.intersect(&form.perp(&u));
    };
    for &(i, j) in sym.a_pairs() {
        let (vi, vj) = split_pair(form, &spaces, &perps, &rest, i, j, Some(&w))?;
        cut(&mut rest, &vi, &vj);
        v[i - 1] = vi;
        v[j - 1] = vj;
    }
    let mut xy = sym.s0();
    xy.sort_by_key(|&(x, y)| x.min(y));
    for (x, y) in xy {
        let (lo, hi) = (x.min(y), x.max(y));
        let (vlo, vhi) = split_pair(form, &spaces, &perps, &rest, lo, hi, None)?;
        let (mut vx, mut vy) = if x < y { (vlo, vhi) } else { (vhi, vlo) };
        let lam = form.pair(&vx, &e_last);
        if lam == 0 {
            return Err(Error::Validation(format!("v_{x} lies in W")));
        }
        vx = scale(f, f.inv(lam), &vx);
        vy = scale(f, lam, &vy);
        if y > x {
            let off = form.pair(&vy, &e_last);
            axpy(f, f.neg(off), &vx.clone(), &mut vy);
        }
        cut(&mut rest, &vx, &vy);
        v[x - 1] = vx;
        v[y - 1] = vy;
    }
    Ok(v)
}

pub fn is_q_adapted(basis: &[Vec<u32>], flag: &Flag, form: &Form, sym: &QSymbol) -> bool {
    let c = sym.sp_part().cmatrix();
    if !super::sp::is_sp_adapted(basis, flag, form, &c) {
        return false;
    }
    let dim = form.dim();
    let e_last = unit(dim, dim - 1);
    (1..=dim).all(|i| {
        let h = form.pair(&basis[i - 1], &e_last);
        if sym.xs().contains(&i) {
            h == 1
        } else {
            h == 0
        }
    })
}

/// An orbit of 1 × Sp_{2n-2} on full flags of F^{2n-1}, held as the symbol of the flag
/// extended by V_{2n-1} = W' inside F^{2n}; the final Y at position 2n is implicit.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct OneSpSymbol {
    ext: QSymbol,
}

impl OneSpSymbol {
    pub fn from_extended(ext: QSymbol) -> Result<OneSpSymbol> {
        if ext.ys().last() != Some(&ext.len) {
            return Err(Error::Validation("extended symbol must end in Y".into()));
        }
        Ok(OneSpSymbol { ext })
    }

    pub fn parse(s: &str) -> Result<OneSpSymbol> {
        OneSpSymbol::from_extended(QSymbol::parse(&format!("{s}Y"))?)
    }

    pub fn extended(&self) -> &QSymbol {
        &self.ext
    }

    pub fn n(&self) -> usize {
        self.ext.n()
    }

    pub fn render(&self) -> String {
        let mut s = self.ext.render();
        s.pop();
        s
    }

    /// (r-1)^{-(n-s)} ∏_{k<n}(r^{2k}-1) r^{(n-1)^2-n-ℓ(σ)+m}
    pub fn size_formula(&self) -> SizeFormula {
        let n = self.n() as i64;
        sp_order(self.n() - 1)
            / SizeFormula::r_pow((n - 1) * (n - 1))
            / SizeFormula::rk_minus_1(1).pow(n - self.ext.s() as i64)
            * SizeFormula::r_pow(
                (n - 1) * (n - 1) - n - self.ext.ell_sigma() as i64 + self.ext.m() as i64,
            )
    }

    pub fn orbit_size(&self, r: u64) -> BigUint {
        self.size_formula().eval(r)
    }

    pub fn standard_basis(&self, field: Field) -> Vec<Vec<u32>> {
        let len = self.ext.len;
        self.ext.standard_basis(field)[..len - 1]
            .iter()
            .map(|u| u[..len - 1].to_vec())
            .collect()
    }

    pub fn standard_flag(&self, field: Field) -> Flag {
        super::flag_of(field, &self.standard_basis(field))
    }
}

impl fmt::Display for OneSpSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

/// The flag of F^{2n-1} = W' ⊂ F^{2n}, completed by V_{2n-1} = W'.
pub fn extend_flag(flag: &Flag) -> Result<Flag> {
    let spaces = chain(flag)?;
    let dim = flag.ambient() + 1;
    let idx: Vec<usize> = (0..dim - 1).collect();
    let mut ext: Vec<Subspace> = spaces.iter().map(|s| s.embed(dim, &idx)).collect();
    ext.push(Subspace::full(flag.field(), dim));
    Flag::from_spaces(ext)
}

pub fn one_sp_symbol(flag: &Flag) -> Result<OneSpSymbol> {
    if flag.ambient() % 2 == 0 {
        return Err(Error::Validation(
            "1 x Sp acts on an odd-dimensional space".into(),
        ));
    }
    let n = flag.ambient().div_ceil(2);
    let form = Form::alternating(flag.field(), n);
    OneSpSymbol::from_extended(q_symbol(&extend_flag(flag)?, &form)?)
}

pub fn one_sp_symbols(n: usize) -> Vec<OneSpSymbol> {
    q_symbols(n)
        .into_iter()
        .filter_map(|q| OneSpSymbol::from_extended(q).ok())
        .collect()
}

/// Σ_{s=1}^n (2n-1)! / (2^{n-s} s! (s-1)! (n-s)!)
pub fn one_sp_count(n: usize) -> u128 {
    use crate::sizes::factorial;
    let n = n as u64;
    (1..=n)
        .map(|s| {
            factorial(2 * n - 1)
                / (2u128.pow((n - s) as u32) * factorial(s) * factorial(s - 1) * factorial(n - s))
        })
        .sum()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::enumerate_full_flags;
    use crate::sizes::q_factorial;

    #[test]
    fn counts_match_tables() {
        let q: Vec<u128> = (1..=4).map(q_count).collect();
        assert_eq!(q, vec![2, 18, 200, 2730]);
        let o: Vec<u128> = (1..=5).map(one_sp_count).collect();
        assert_eq!(o, vec![1, 6, 55, 665, 9891]);
        for n in 1..=3 {
            assert_eq!(q_symbols(n).len() as u128, q_count(n));
            assert_eq!(one_sp_symbols(n).len() as u128, one_sp_count(n));
        }
    }

    #[test]
    fn n1_symbols() {
        let mut names: Vec<String> = q_symbols(1).iter().map(|s| s.render()).collect();
        names.sort();
        assert_eq!(names, vec!["XY", "YX"]);
        let xy = QSymbol::parse("XY").unwrap();
        assert_eq!(xy.m(), 1);
        assert_eq!(xy.orbit_size(5), BigUint::from(5u32));
        assert_eq!(
            QSymbol::parse("YX").unwrap().orbit_size(5),
            BigUint::from(1u32)
        );
    }

    #[test]
    fn one_sp_n2_names() {
        let mut names: Vec<String> = one_sp_symbols(2).iter().map(|s| s.render()).collect();
        names.sort();
        assert_eq!(names, vec!["AAX", "AXA", "XAA", "XXY", "XYX", "YXX"]);
    }

    #[test]
    fn sizes_sum_to_flag_counts() {
        for r in [2u64, 3, 5] {
            for n in 1..=4 {
                let total: BigUint = q_symbols(n).iter().map(|s| s.orbit_size(r)).sum();
                assert_eq!(total, q_factorial(2 * n, r));
                let total: BigUint = one_sp_symbols(n).iter().map(|s| s.orbit_size(r)).sum();
                assert_eq!(total, q_factorial(2 * n - 1, r));
            }
        }
    }

    #[test]
    fn standard_flags_realize_symbols() {
        let f = Field::of(3);
        for n in 1..=3 {
            let form = Form::alternating(f, n);
            for sym in q_symbols(n) {
                let fl = sym.standard_flag(f);
                assert_eq!(q_symbol(&fl, &form).unwrap(), sym, "{sym}");
                assert!(
                    is_q_adapted(&sym.standard_basis(f), &fl, &form, &sym),
                    "{sym}"
                );
            }
            for sym in one_sp_symbols(n) {
                assert_eq!(one_sp_symbol(&sym.standard_flag(f)).unwrap(), sym);
            }
        }
    }

    #[test]
    fn s_agrees_with_symbol_and_basis_exists() {
        for p in [2, 3] {
            let f = Field::of(p);
            let form = Form::alternating(f, 2);
            for fl in enumerate_full_flags(f, 4, 10_000).unwrap() {
                let sym = q_symbol(&fl, &form).unwrap();
                let (s, _) = q_s_sets(&fl, &form).unwrap();
                for i in 1..=4 {
                    for j in 1..=4 {
                        assert_eq!(s.contains(&(i, j)), sym.in_s(i, j));
                    }
                }
                let b = q_adapted_basis(&fl, &form).unwrap();
                assert!(is_q_adapted(&b, &fl, &form, &sym));
            }
        }
    }
}
