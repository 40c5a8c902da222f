use super::{
    chain, inversions, letter_pairs, perfect_matchings, pick_outside, read_pairs, subsets, CMatrix,
};
use crate::error::{Error, Result};
use crate::exactlin::{unit, Field, Flag, Subspace};
use crate::sizes::SizeFormula;
use num_bigint::BigUint;
use std::fmt;

/// Orbit of GL_{m+} × GL_{m-} on full flags of F^n = U_+ ⊕ U_-.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LeviSymbol {
    m_plus: usize,
    m_minus: usize,
    plus: Vec<usize>,
    minus: Vec<usize>,
    /// (i_t, j_t) with i_t < j_t, sorted by j.
    pairs: Vec<(usize, usize)>,
}

impl LeviSymbol {
    pub fn new(plus: &[usize], minus: &[usize], pairs: &[(usize, usize)]) -> Result<LeviSymbol> {
        let mut plus = plus.to_vec();
        let mut minus = minus.to_vec();
        plus.sort();
        minus.sort();
        let mut pairs: Vec<(usize, usize)> =
            pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
        pairs.sort_by_key(|p| p.1);
        let s = pairs.len();
        let n = plus.len() + minus.len() + 2 * s;
        let mut hit = vec![false; n + 1];
        for x in plus
            .iter()
            .chain(&minus)
            .copied()
            .chain(pairs.iter().flat_map(|&(a, b)| [a, b]))
        {
            if x == 0 || x > n || hit[x] {
                return Err(Error::Validation(format!(
                    "positions do not partition 1..{n}"
                )));
            }
            hit[x] = true;
        }
        Ok(LeviSymbol {
            m_plus: plus.len() + s,
            m_minus: minus.len() + s,
            plus,
            minus,
            pairs,
        })
    }

    /// Letters '+', '-' and lowercase pairs.
    pub fn parse(s: &str) -> Result<LeviSymbol> {
        let chars: Vec<char> = s.chars().map(|c| if c == '−' { '-' } else { c }).collect();
        if let Some(bad) = chars
            .iter()
            .find(|&&c| !(c == '+' || c == '-' || c.is_ascii_lowercase()))
        {
            return Err(Error::Validation(format!(
                "unexpected letter {bad} in a Levi symbol"
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
        let pairs = read_pairs(&chars, |c| c.is_ascii_lowercase())?;
        LeviSymbol::new(&pos('+'), &pos('-'), &pairs)
    }

    pub fn n(&self) -> usize {
        self.m_plus + self.m_minus
    }
    pub fn m_plus(&self) -> usize {
        self.m_plus
    }
    pub fn m_minus(&self) -> usize {
        self.m_minus
    }
    pub fn s(&self) -> usize {
        self.pairs.len()
    }
    pub fn plus(&self) -> &[usize] {
        &self.plus
    }
    pub fn minus(&self) -> &[usize] {
        &self.minus
    }
    pub fn pairs(&self) -> &[(usize, usize)] {
        &self.pairs
    }

    pub fn render(&self) -> String {
        let mut slots = vec!['?'; self.n()];
        for &k in &self.plus {
            slots[k - 1] = '+';
        }
        for &k in &self.minus {
            slots[k - 1] = '-';
        }
        letter_pairs(&mut slots, &self.pairs, 'a');
        slots.into_iter().collect()
    }

    /// (i_s … i_1 k_1 … k_{n-2s} j_1 … j_s)
    pub fn sigma(&self) -> Vec<usize> {
        let mut ks: Vec<usize> = self.plus.iter().chain(&self.minus).copied().collect();
        ks.sort();
        let mut out: Vec<usize> = self.pairs.iter().rev().map(|p| p.0).collect();
        out.extend(ks);
        out.extend(self.pairs.iter().map(|p| p.1));
        out
    }

    pub fn ell_sigma(&self) -> usize {
        inversions(&self.sigma())
    }

    pub fn tau(&self) -> Vec<usize> {
        let mut t: Vec<usize> = (1..=self.n()).collect();
        for &(i, j) in &self.pairs {
            t[i - 1] = j;
            t[j - 1] = i;
        }
        t
    }

    pub fn ell_tau(&self) -> usize {
        inversions(&self.tau())
    }

    /// (r-1)^s r^{s(n-s-1)-ℓ(σ)} [r]_{m+} [r]_{m-}
    pub fn size_formula(&self) -> SizeFormula {
        let (n, s) = (self.n() as i64, self.s() as i64);
        SizeFormula::rk_minus_1(1).pow(s)
            * SizeFormula::r_pow(s * (n - s - 1) - self.ell_sigma() as i64)
            * SizeFormula::q_factorial(self.m_plus)
            * SizeFormula::q_factorial(self.m_minus)
    }

    pub fn orbit_size(&self, r: u64) -> BigUint {
        self.size_formula().eval(r)
    }

    pub fn basis_count_formula(&self) -> SizeFormula {
        let s = self.s() as i64;
        let (a, b) = (self.m_plus as i64 - s, self.m_minus as i64 - s);
        SizeFormula::rk_minus_1(1).pow(self.n() as i64 - s)
            * SizeFormula::r_pow((a * (a - 1) + b * (b - 1)) / 2 + self.ell_sigma() as i64)
    }

    pub fn standard_basis(&self) -> Vec<Vec<u32>> {
        let n = self.n();
        let (mp, s) = (self.m_plus, self.s());
        let mut u = vec![Vec::new(); n];
        for (t, &k) in self.plus.iter().enumerate() {
            u[k - 1] = unit(n, t);
        }
        for (t, &k) in self.minus.iter().enumerate() {
            u[k - 1] = unit(n, mp + t);
        }
        for (t, &(i, j)) in self.pairs.iter().enumerate() {
            let mut v = unit(n, mp - s + t);
            v[n - s + t] = 1;
            u[i - 1] = v;
            u[j - 1] = unit(n, mp - s + t);
        }
        u
    }

    pub fn standard_flag(&self, field: Field) -> Flag {
        super::flag_of(field, &self.standard_basis())
    }
}

impl fmt::Display for LeviSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render())
    }
}

fn halves(field: Field, n: usize, m_plus: usize) -> (Subspace, Subspace) {
    (
        Subspace::coordinate(field, n, &(0..m_plus).collect::<Vec<_>>()),
        Subspace::coordinate(field, n, &(m_plus..n).collect::<Vec<_>>()),
    )
}

/// c^+ and c^- from d^+_{i,j} = dim(π_+(V_i) ∩ V_j), d^-_{i,j} = dim(π_-(V_j) ∩ V_i).
pub fn levi_cmatrices(flag: &Flag, m_plus: usize) -> Result<(CMatrix, CMatrix)> {
    let spaces = chain(flag)?;
    let n = flag.ambient();
    if m_plus > n {
        return Err(Error::Validation(format!("m+ = {m_plus} exceeds n = {n}")));
    }
    let pp: Vec<Subspace> = spaces
        .iter()
        .map(|v| v.project(&(0..m_plus).collect::<Vec<_>>()))
        .collect();
    let pm: Vec<Subspace> = spaces
        .iter()
        .map(|v| v.project(&(m_plus..n).collect::<Vec<_>>()))
        .collect();
    let mut dp = vec![vec![0i64; n + 1]; n + 1];
    let mut dm = vec![vec![0i64; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            dp[i][j] = pp[i].intersect(&spaces[j]).dim() as i64;
            dm[i][j] = pm[j].intersect(&spaces[i]).dim() as i64;
        }
    }
    let c = |d: &Vec<Vec<i64>>| {
        CMatrix::from_fn(n, |i, j| {
            d[i][j] - d[i][j - 1] - d[i - 1][j] + d[i - 1][j - 1]
        })
    };
    Ok((c(&dp), c(&dm)))
}

pub fn levi_symbol(flag: &Flag, m_plus: usize, m_minus: usize) -> Result<LeviSymbol> {
    let n = flag.ambient();
    if m_plus + m_minus != n {
        return Err(Error::Validation(format!(
            "m+ + m- = {} but n = {n}",
            m_plus + m_minus
        )));
    }
    let (cp, cm) = levi_cmatrices(flag, m_plus)?;
    let plus: Vec<usize> = (1..=n).filter(|&i| cp.get(i, i) == 1).collect();
    let minus: Vec<usize> = (1..=n).filter(|&i| cm.get(i, i) == 1).collect();
    let pairs: Vec<(usize, usize)> = (1..=n)
        .flat_map(|i| (i + 1..=n).map(move |j| (i, j)))
        .filter(|&(i, j)| cp.get(i, j) + cm.get(i, j) == 1)
        .collect();
    LeviSymbol::new(&plus, &minus, &pairs)
}

pub fn levi_symbols(m_plus: usize, m_minus: usize) -> Vec<LeviSymbol> {
    let n = m_plus + m_minus;
    let all: Vec<usize> = (1..=n).collect();
    let mut out = Vec::new();
    for s in 0..=m_plus.min(m_minus) {
        for plus in subsets(&all, m_plus - s) {
            let rest: Vec<usize> = all.iter().copied().filter(|i| !plus.contains(i)).collect();
            for minus in subsets(&rest, m_minus - s) {
                let a: Vec<usize> = rest
                    .iter()
                    .copied()
                    .filter(|i| !minus.contains(i))
                    .collect();
                for m in perfect_matchings(&a) {
                    out.push(LeviSymbol::new(&plus, &minus, &m).unwrap());
                }
            }
        }
    }
    out
}

/// Σ_s n! / (2^s s! (m+ - s)! (m- - s)!)
pub fn levi_count(m_plus: usize, m_minus: usize) -> u128 {
    use crate::sizes::factorial;
    let n = (m_plus + m_minus) as u64;
    (0..=m_plus.min(m_minus) as u64)
        .map(|s| {
            factorial(n)
                / (2u128.pow(s as u32)
                    * factorial(s)
                    * factorial(m_plus as u64 - s)
                    * factorial(m_minus as u64 - s))
        })
        .sum()
}

/// Basis with V_i = span(v_1..v_i), v_k ∈ U_± on the ± positions, and v_j = π_+(v_i) ∉ V_{j-1}
/// for each pair.
pub fn levi_adapted_basis(flag: &Flag, m_plus: usize, m_minus: usize) -> Result<Vec<Vec<u32>>> {
    let sym = levi_symbol(flag, m_plus, m_minus)?;
    let spaces = chain(flag)?;
    let n = flag.ambient();
    let (up, um) = halves(flag.field(), n, m_plus);
    let plus_idx: Vec<usize> = (0..m_plus).collect();
    let fail = |k: usize| Error::Validation(format!("no adapted vector at position {k}"));
    let mut v = vec![Vec::new(); n];
    for &k in sym.plus() {
        v[k - 1] =
            pick_outside(&spaces[k].intersect(&up), &spaces[k - 1]).ok_or_else(|| fail(k))?;
    }
    for &k in sym.minus() {
        v[k - 1] =
            pick_outside(&spaces[k].intersect(&um), &spaces[k - 1]).ok_or_else(|| fail(k))?;
    }
    for &(i, j) in sym.pairs() {
        let target = spaces[i].project(&plus_idx).intersect(&spaces[j]);
        let avoid = spaces[i - 1].project(&plus_idx);
        let w = pick_outside(&target, &avoid).ok_or_else(|| fail(i))?;
        // a preimage of w under π_+ inside V_i
        let vi = spaces[i]
            .vectors()
            .into_iter()
            .map(|b| b[..m_plus].to_vec())
            .collect::<Vec<_>>();
        let coeffs = crate::exactlin::Matrix::from_columns(flag.field(), m_plus, &vi)
            .solve(&w[..m_plus])
            .ok_or_else(|| fail(i))?;
        let mut x = vec![0; n];
        for (c, b) in coeffs.iter().zip(spaces[i].vectors()) {
            crate::exactlin::axpy(flag.field(), *c, &b, &mut x);
        }
        v[i - 1] = x;
        v[j - 1] = w;
    }
    Ok(v)
}

pub fn is_levi_adapted(basis: &[Vec<u32>], flag: &Flag, sym: &LeviSymbol) -> bool {
    let Ok(spaces) = chain(flag) else {
        return false;
    };
    let n = flag.ambient();
    let mp = sym.m_plus();
    let f = flag.field();
    let mut span = Subspace::zero(f, n);
    for (k, v) in basis.iter().enumerate() {
        span = span.add_vector(v);
        if span != spaces[k + 1] {
            return false;
        }
    }
    let in_plus = |v: &[u32]| v[mp..].iter().all(|&x| x == 0);
    let in_minus = |v: &[u32]| v[..mp].iter().all(|&x| x == 0);
    sym.plus().iter().all(|&k| in_plus(&basis[k - 1]))
        && sym.minus().iter().all(|&k| in_minus(&basis[k - 1]))
        && sym.pairs().iter().all(|&(i, j)| {
            let vi = &basis[i - 1];
            let mut proj = vi.clone();
            proj[mp..].iter_mut().for_each(|x| *x = 0);
            !in_plus(vi) && !in_minus(vi) && basis[j - 1] == proj
        })
}
