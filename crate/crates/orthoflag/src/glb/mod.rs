//! Orbits on full flags of F^N for the subgroups Sp_{2n}, Q_{2n}, 1 × Sp_{2n-2} and
//! GL_{m+} × GL_{m-}: invariants, symbols, sizes and adapted bases.

pub mod levi;
pub mod q;
pub mod sp;

pub use levi::LeviSymbol;
pub use q::{OneSpSymbol, QSymbol};
pub use sp::SpSymbol;

use crate::error::{Error, Result};
use crate::exactlin::{Flag, Subspace};
use crate::forms::Form;

/// 0/1 matrix c_{i,j}, indices 1-based in the accessors.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CMatrix {
    size: usize,
    c: Vec<i64>,
}

impl CMatrix {
    pub fn from_fn(size: usize, f: impl Fn(usize, usize) -> i64) -> CMatrix {
        let mut c = vec![0; size * size];
        for i in 1..=size {
            for j in 1..=size {
                c[(i - 1) * size + j - 1] = f(i, j);
            }
        }
        CMatrix { size, c }
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.c[(i - 1) * self.size + j - 1]
    }

    pub fn is_permutation(&self) -> bool {
        let ones = |it: &mut dyn Iterator<Item = i64>| {
            let v: Vec<i64> = it.collect();
            v.iter().all(|&x| x == 0 || x == 1) && v.iter().sum::<i64>() == 1
        };
        (1..=self.size).all(|i| ones(&mut (1..=self.size).map(|j| self.get(i, j))))
            && (1..=self.size).all(|j| ones(&mut (1..=self.size).map(|i| self.get(i, j))))
    }

    pub fn is_symmetric(&self) -> bool {
        (1..=self.size).all(|i| (1..=self.size).all(|j| self.get(i, j) == self.get(j, i)))
    }

    pub fn zero_diagonal(&self) -> bool {
        (1..=self.size).all(|i| self.get(i, i) == 0)
    }

    /// tau[i-1] = j where c_{i,j} = 1.
    pub fn tau(&self) -> Vec<usize> {
        (1..=self.size)
            .map(|i| {
                (1..=self.size)
                    .find(|&j| self.get(i, j) == 1)
                    .expect("permutation matrix")
            })
            .collect()
    }
}

/// V_0 ⊂ V_1 ⊂ … ⊂ V_N of a full flag, accepting flags given up to V_{N-1} or V_N.
pub fn chain(flag: &Flag) -> Result<Vec<Subspace>> {
    let n = flag.ambient();
    let mut spaces = flag.spaces().to_vec();
    if flag.top() + 1 == n {
        spaces.push(Subspace::full(flag.field(), n));
    } else if flag.top() != n {
        return Err(Error::Validation(format!(
            "flag stops at dimension {} of {n}; a full flag is required",
            flag.top()
        )));
    }
    Ok(spaces)
}

pub fn inversions(perm: &[usize]) -> usize {
    let mut count = 0;
    for a in 0..perm.len() {
        for b in a + 1..perm.len() {
            if perm[a] > perm[b] {
                count += 1;
            }
        }
    }
    count
}

/// All perfect matchings of `items` as pairs (smaller, larger).
pub fn perfect_matchings(items: &[usize]) -> Vec<Vec<(usize, usize)>> {
    if items.is_empty() {
        return vec![Vec::new()];
    }
    let first = items[0];
    let mut out = Vec::new();
    for k in 1..items.len() {
        let rest: Vec<usize> = items[1..]
            .iter()
            .enumerate()
            .filter(|&(t, _)| t + 1 != k)
            .map(|(_, &x)| x)
            .collect();
        for mut m in perfect_matchings(&rest) {
            m.insert(0, (first, items[k]));
            out.push(m);
        }
    }
    out
}

/// All k-subsets of `items`, preserving order.
pub fn subsets(items: &[usize], k: usize) -> Vec<Vec<usize>> {
    if k == 0 {
        return vec![Vec::new()];
    }
    if items.len() < k {
        return Vec::new();
    }
    let mut out = Vec::new();
    for mut s in subsets(&items[1..], k - 1) {
        s.insert(0, items[0]);
        out.push(s);
    }
    out.extend(subsets(&items[1..], k));
    out
}

/// Write letters base, base+1, … into `slots` for the pairs in order of first occurrence.
pub(crate) fn letter_pairs(slots: &mut [char], pairs: &[(usize, usize)], base: char) {
    let mut sorted: Vec<(usize, usize)> =
        pairs.iter().map(|&(a, b)| (a.min(b), a.max(b))).collect();
    sorted.sort();
    assert!(sorted.len() <= 26, "more than 26 pairs");
    for (t, &(i, j)) in sorted.iter().enumerate() {
        let ch = (base as u8 + t as u8) as char;
        slots[i - 1] = ch;
        slots[j - 1] = ch;
    }
}

/// Positions (1-based) of each letter satisfying `is_pair`, collected into pairs.
pub(crate) fn read_pairs(
    chars: &[char],
    is_pair: impl Fn(char) -> bool,
) -> Result<Vec<(usize, usize)>> {
    let mut seen: std::collections::BTreeMap<char, Vec<usize>> = Default::default();
    for (k, &ch) in chars.iter().enumerate() {
        if is_pair(ch) {
            seen.entry(ch).or_default().push(k + 1);
        }
    }
    let mut pairs = Vec::new();
    for (ch, pos) in seen {
        if pos.len() != 2 {
            return Err(Error::Validation(format!(
                "letter {ch} occurs {} times",
                pos.len()
            )));
        }
        pairs.push((pos[0], pos[1]));
    }
    pairs.sort();
    Ok(pairs)
}

/// First echelon basis vector of `space` outside `avoid`.
pub(crate) fn pick_outside(space: &Subspace, avoid: &Subspace) -> Option<Vec<u32>> {
    space.vectors().into_iter().find(|v| !avoid.contains(v))
}

/// Some w in `space` with ⟨v, w⟩ = 1.
pub(crate) fn pick_pairing(form: &Form, v: &[u32], space: &Subspace) -> Option<Vec<u32>> {
    let f = form.field();
    space.vectors().into_iter().find_map(|w| {
        let a = form.pair(v, &w);
        (a != 0).then(|| w.iter().map(|&x| f.div(x, a)).collect())
    })
}

pub(crate) fn scale(f: crate::exactlin::Field, c: u32, v: &[u32]) -> Vec<u32> {
    v.iter().map(|&x| f.mul(c, x)).collect()
}

/// d_{i,j} = dim(V_i ∩ V_j^⊥) and the matrix c_{i,j} = d_{i,j-1} - d_{i,j} - d_{i-1,j-1} + d_{i-1,j}.
pub fn perp_cmatrix(flag: &Flag, form: &Form) -> Result<CMatrix> {
    if flag.ambient() != form.dim() {
        return Err(Error::Validation(format!(
            "flag in dimension {} against a form in dimension {}",
            flag.ambient(),
            form.dim()
        )));
    }
    let spaces = chain(flag)?;
    let perps: Vec<Subspace> = spaces.iter().map(|v| form.perp(v)).collect();
    let n = spaces.len() - 1;
    let mut d = vec![vec![0i64; n + 1]; n + 1];
    for i in 0..=n {
        for j in 0..=n {
            d[i][j] = spaces[i].intersect(&perps[j]).dim() as i64;
        }
    }
    Ok(CMatrix::from_fn(n, |i, j| {
        d[i][j - 1] - d[i][j] - d[i - 1][j - 1] + d[i - 1][j]
    }))
}

/// The flag V_i = span(u_1..u_i).
pub fn flag_of(field: crate::exactlin::Field, basis: &[Vec<u32>]) -> Flag {
    Flag::from_basis(field, basis[0].len(), basis).expect("basis")
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn matching_counts() {
        assert_eq!(perfect_matchings(&[1, 2, 3, 4]).len(), 3);
        assert_eq!(perfect_matchings(&[1, 2, 3, 4, 5, 6]).len(), 15);
        assert_eq!(subsets(&[1, 2, 3, 4], 2).len(), 6);
    }

    #[test]
    fn inversion_counts() {
        assert_eq!(inversions(&[1, 2, 3]), 0);
        assert_eq!(inversions(&[3, 2, 1]), 3);
        assert_eq!(inversions(&[1, 4, 2, 3]), 2);
    }
}
