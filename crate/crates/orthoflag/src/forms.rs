//! The symmetric form on F^{2n+1}, the alternating form on F^{2n}, orthogonal complements,
//! group membership and generator sets for the oracle.

use crate::error::{Error, Result};
use crate::exactlin::enumerate::grow_flags;
use crate::exactlin::{Field, Flag, Matrix, Subspace};
use rand::Rng;
use std::collections::{HashSet, VecDeque};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FormKind {
    /// (e_i, e_j) = δ_{i, 2n+2-j} on F^{2n+1}
    SymmetricOdd,
    /// ⟨e_i, e_j⟩ = δ_{i, 2n+1-j} for i ≤ n, -δ_{i, 2n+1-j} for i > n, on F^{2n}
    Alternating,
}

#[derive(Clone, Debug)]
pub struct Form {
    kind: FormKind,
    n: usize,
    gram: Matrix,
}

impl Form {
    pub fn symmetric_odd(field: Field, n: usize) -> Result<Form> {
        field.require_odd()?;
        Ok(Form {
            kind: FormKind::SymmetricOdd,
            n,
            gram: Matrix::anti_identity(field, 2 * n + 1),
        })
    }

    pub fn alternating(field: Field, n: usize) -> Form {
        Form {
            kind: FormKind::Alternating,
            n,
            gram: alt_gram(field, 2 * n),
        }
    }

    pub fn kind(&self) -> FormKind {
        self.kind
    }
    pub fn n(&self) -> usize {
        self.n
    }
    pub fn field(&self) -> Field {
        self.gram.field()
    }
    pub fn dim(&self) -> usize {
        self.gram.rows()
    }
    pub fn gram(&self) -> &Matrix {
        &self.gram
    }

    pub fn pair(&self, x: &[u32], y: &[u32]) -> u32 {
        self.gram.bilinear(x, y)
    }

    pub fn perp(&self, v: &Subspace) -> Subspace {
        v.perp_gram(&self.gram)
    }

    pub fn is_isotropic(&self, v: &Subspace) -> bool {
        let vs = v.vectors();
        vs.iter().all(|x| vs.iter().all(|y| self.pair(x, y) == 0))
    }

    pub fn is_maximal_isotropic(&self, v: &Subspace) -> bool {
        v.dim() == self.n && self.is_isotropic(v)
    }

    pub fn preserves(&self, g: &Matrix) -> bool {
        g.transpose().mul(&self.gram).mul(g) == self.gram
    }

    /// Isotropic flags V_1 ⊂ … ⊂ V_k.
    pub fn isotropic_flags(&self, k: usize) -> Vec<Flag> {
        let mut flags = grow_flags(
            self.field(),
            self.dim(),
            k,
            |top| self.perp(top),
            |_, v| self.pair(v, v) == 0,
        );
        flags.sort();
        flags
    }

    /// All maximal isotropic subspaces, sorted.
    pub fn maximal_isotropics(&self) -> Vec<Subspace> {
        let set: HashSet<Subspace> = self
            .isotropic_flags(self.n)
            .into_iter()
            .map(|f| f.v(self.n).clone())
            .collect();
        let mut out: Vec<Subspace> = set.into_iter().collect();
        out.sort();
        out
    }
}

/// Gram matrix of the standard alternating form on F^{2n}.
pub fn alt_gram(field: Field, dim: usize) -> Matrix {
    assert!(dim % 2 == 0);
    let n = dim / 2;
    let mut g = Matrix::zeros(field, dim, dim);
    for i in 0..dim {
        let j = dim - 1 - i;
        g.set(i, j, if i < n { 1 } else { field.neg(1) });
    }
    g
}

/// J A^{-T} J for square A.
pub fn dual_block(a: &Matrix) -> Matrix {
    let f = a.field();
    let j = Matrix::anti_identity(f, a.rows());
    j.mul(&a.inverse().expect("invertible").transpose()).mul(&j)
}

/// h[A] = diag(A, 1, J A^{-T} J) in SO_{2n+1}.
pub fn h_of(a: &Matrix) -> Matrix {
    let f = a.field();
    let n = a.rows();
    let mut g = Matrix::zeros(f, 2 * n + 1, 2 * n + 1);
    g.set_block(0, 0, a);
    g.set(n, n, 1);
    g.set_block(n + 1, n + 1, &dual_block(a));
    g
}

/// Element of L_{W_0}: diag(A, I_{2d+1}, J_m A^{-T} J_m) with m = n - d.
pub fn l_w0(a: &Matrix, n: usize) -> Matrix {
    let f = a.field();
    let m = a.rows();
    let d = n - m;
    let mut g = Matrix::identity(f, 2 * n + 1);
    g.set_block(0, 0, a);
    g.set_block(m + 2 * d + 1, m + 2 * d + 1, &dual_block(a));
    g
}

/// Element acting on W_1 = e_{m+1}..e_{n+d+1} by `local` and trivially on W_0 ⊕ W_2.
pub fn embed_w1(local: &Matrix, n: usize) -> Matrix {
    let f = local.field();
    let d = (local.rows() - 1) / 2;
    let m = n - d;
    let mut g = Matrix::identity(f, 2 * n + 1);
    g.set_block(m, m, local);
    g
}

/// g(X, Z): X is (2d+1)×m, Z is m×m.
pub fn g_xz(x: &Matrix, z: &Matrix) -> Matrix {
    let f = x.field();
    let m = x.cols();
    let w = x.rows();
    let n = m + (w - 1) / 2;
    let jm = Matrix::anti_identity(f, m);
    let jw = Matrix::anti_identity(f, w);
    let top = jm.mul(&x.transpose()).mul(&jw).neg();
    let mut g = Matrix::identity(f, 2 * n + 1);
    g.set_block(0, m, &top);
    g.set_block(0, m + w, z);
    g.set_block(m, m + w, x);
    g
}

/// Complete Z from X, the given columns of Z (those < `given_cols`), with the free entries
/// z_{ij}, i + j ≤ m (1-based), of the other columns set to zero.
pub fn complete_z(x: &Matrix, z_given: &Matrix, given_cols: usize) -> Matrix {
    let f = x.field();
    let m = x.cols();
    let w = x.rows();
    let half = f.half();
    let mut z = Matrix::zeros(f, m, m);
    for j in 0..given_cols {
        for i in 0..m {
            z.set(i, j, z_given.get(i, j));
        }
    }
    // 1-based (i, j) below
    let xx = |a: usize, b: usize| -> u32 {
        // Σ_k x_{k,a} x_{2d+2-k,b}
        let mut s = 0;
        for k in 0..w {
            s = f.add(s, f.mul(x.get(k, a - 1), x.get(w - 1 - k, b - 1)));
        }
        s
    };
    for j in given_cols + 1..=m {
        for i in 1..=m {
            let v = if i + j <= m {
                0
            } else if i + j == m + 1 {
                f.neg(f.mul(half, xx(j, j)))
            } else {
                let other = z.get(m - j, m - i);
                f.neg(f.add(other, xx(j, m + 1 - i)))
            };
            z.set(i - 1, j - 1, v);
        }
    }
    z
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Group {
    /// SO_{2n+1}
    SoOdd(usize),
    /// Sp_{2n} on F^{2n}
    Sp(usize),
    /// Q_{2n}: the stabilizer of e_{2n} in Sp_{2n}
    Q(usize),
    /// 1 × Sp_{2n-2} acting on F^{2n-1}
    OneSp(usize),
    /// GL_{m+} × GL_{m-} block diagonal
    Levi(usize, usize),
    /// Stabilizer of e_{n+1} in SO_{2n+1}
    GPrime(usize),
    /// G' together with the element swapping e_n, e_{n+2} and negating e_{n+1}
    GTildePrime(usize),
    /// R_n = { h[A] }
    Rn(usize),
    Gl(usize),
}

impl Group {
    pub fn name(&self) -> &'static str {
        match self {
            Group::SoOdd(_) => "so-odd",
            Group::Sp(_) => "sp",
            Group::Q(_) => "q2n",
            Group::OneSp(_) => "one-sp",
            Group::Levi(..) => "gl-levi",
            Group::GPrime(_) | Group::GTildePrime(_) => "so-even-split",
            Group::Rn(_) => "r-n",
            Group::Gl(_) => "gl",
        }
    }

    /// Dimension of the space the group acts on.
    pub fn degree(&self) -> usize {
        match *self {
            Group::SoOdd(n) | Group::GPrime(n) | Group::GTildePrime(n) | Group::Rn(n) => 2 * n + 1,
            Group::Sp(n) | Group::Q(n) => 2 * n,
            Group::OneSp(n) => 2 * n - 1,
            Group::Levi(a, b) => a + b,
            Group::Gl(n) => n,
        }
    }

    fn orthogonal(&self) -> bool {
        matches!(
            self,
            Group::SoOdd(_) | Group::GPrime(_) | Group::GTildePrime(_) | Group::Rn(_)
        )
    }
}

pub fn in_group(g: &Matrix, which: Group) -> Result<bool> {
    let f = g.field();
    let deg = which.degree();
    if g.rows() != deg || g.cols() != deg {
        return Err(Error::Validation(format!(
            "{}x{} matrix tested against a group of degree {deg}",
            g.rows(),
            g.cols()
        )));
    }
    if which.orthogonal() {
        f.require_odd()?;
    }
    let fixes = |g: &Matrix, i: usize| g.column(i) == crate::exactlin::unit(g.rows(), i);
    Ok(match which {
        Group::SoOdd(n) => {
            let form = Form::symmetric_odd(f, n)?;
            form.preserves(g) && g.det() == 1
        }
        Group::GPrime(n) => in_group(g, Group::SoOdd(n))? && fixes(g, n),
        Group::GTildePrime(n) => {
            let mut minus = vec![0; 2 * n + 1];
            minus[n] = f.neg(1);
            in_group(g, Group::SoOdd(n))? && (fixes(g, n) || g.column(n) == minus)
        }
        Group::Rn(n) => {
            let u0 = Subspace::coordinate(f, 2 * n + 1, &(0..n).collect::<Vec<_>>());
            let un = Subspace::coordinate(f, 2 * n + 1, &(n + 1..2 * n + 1).collect::<Vec<_>>());
            in_group(g, Group::SoOdd(n))? && fixes(g, n) && u0.apply(g) == u0 && un.apply(g) == un
        }
        Group::Sp(n) => Form::alternating(f, n).preserves(g),
        Group::Q(n) => Form::alternating(f, n).preserves(g) && fixes(g, 2 * n - 1),
        Group::OneSp(n) => {
            let mut big = Matrix::identity(f, 2 * n);
            big.set_block(0, 0, g);
            Form::alternating(f, n).preserves(&big) && fixes(g, 0)
        }
        Group::Levi(a, b) => {
            let zero_off = (0..a).all(|i| (a..a + b).all(|j| g.get(i, j) == 0 && g.get(j, i) == 0));
            zero_off && g.det() != 0
        }
        Group::Gl(_) => g.det() != 0,
    })
}

fn elementary(f: Field, n: usize, i: usize, j: usize, c: u32) -> Matrix {
    let mut m = Matrix::identity(f, n);
    m.set(i, j, c);
    m
}

fn gl_generators(f: Field, n: usize) -> Vec<Matrix> {
    let mut gens = Vec::new();
    for i in 0..n {
        for j in 0..n {
            if i != j {
                gens.push(elementary(f, n, i, j, 1));
            }
        }
    }
    let w = f.primitive_root();
    if n > 0 && w != 1 {
        let mut d = Matrix::identity(f, n);
        d.set(0, 0, w);
        gens.push(d);
    }
    gens
}

/// Symplectic transvection x -> x + ⟨x, v⟩ v.
pub fn transvection(gram: &Matrix, v: &[u32]) -> Matrix {
    let f = gram.field();
    let n = gram.rows();
    let col = Matrix::from_columns(f, n, &[v.to_vec()]);
    let row = Matrix::from_rows(f, n, &[v.to_vec()]).mul(&gram.transpose());
    Matrix::identity(f, n).add(&col.mul(&row))
}

fn transvections_in(gram: &Matrix, idx: &[usize]) -> Vec<Matrix> {
    let n = gram.rows();
    let mut out = Vec::new();
    for (a, &i) in idx.iter().enumerate() {
        out.push(transvection(gram, &crate::exactlin::unit(n, i)));
        for &j in &idx[a + 1..] {
            let mut v = crate::exactlin::unit(n, i);
            v[j] = 1;
            out.push(transvection(gram, &v));
        }
    }
    out
}

/// exp of the root vector E_ij - E_{j'i'} of so(J).
fn root_element(f: Field, dim: usize, i: usize, j: usize) -> Matrix {
    let ip = dim - 1 - i;
    let jp = dim - 1 - j;
    let mut x = Matrix::zeros(f, dim, dim);
    x.set(i, j, 1);
    x.set(jp, ip, f.sub(x.get(jp, ip), 1));
    let x2 = x.mul(&x);
    let id = Matrix::identity(f, dim);
    id.add(&x).add(&x2.scale(f.half()))
}

fn so_roots(f: Field, n: usize, avoid_middle: bool) -> Vec<Matrix> {
    let dim = 2 * n + 1;
    let mut gens = Vec::new();
    for i in 0..dim {
        for j in 0..dim {
            if i == j || j == dim - 1 - i {
                continue;
            }
            if avoid_middle && (i == n || j == n) {
                continue;
            }
            gens.push(root_element(f, dim, i, j));
        }
    }
    let w = f.primitive_root();
    if n > 0 {
        let mut a = Matrix::identity(f, n);
        a.set(0, 0, w);
        gens.push(h_of(&a));
    }
    gens
}

pub fn tilde_swap(f: Field, n: usize) -> Matrix {
    let dim = 2 * n + 1;
    let mut g = Matrix::identity(f, dim);
    g.set(n - 1, n - 1, 0);
    g.set(n + 1, n + 1, 0);
    g.set(n - 1, n + 1, 1);
    g.set(n + 1, n - 1, 1);
    g.set(n, n, f.neg(1));
    g
}

pub fn generators(which: Group, f: Field) -> Result<Vec<Matrix>> {
    if which.orthogonal() {
        f.require_odd()?;
    }
    let gens = match which {
        Group::SoOdd(n) => so_roots(f, n, false),
        Group::GPrime(n) => so_roots(f, n, true),
        Group::GTildePrime(n) => {
            let mut g = so_roots(f, n, true);
            g.push(tilde_swap(f, n));
            g
        }
        Group::Rn(n) => gl_generators(f, n).iter().map(h_of).collect(),
        Group::Sp(n) => transvections_in(&alt_gram(f, 2 * n), &(0..2 * n).collect::<Vec<_>>()),
        Group::Q(n) => transvections_in(&alt_gram(f, 2 * n), &(1..2 * n).collect::<Vec<_>>()),
        Group::OneSp(n) => {
            let full = transvections_in(&alt_gram(f, 2 * n), &(1..2 * n - 1).collect::<Vec<_>>());
            full.iter()
                .map(|t| t.submatrix(0, 0, 2 * n - 1, 2 * n - 1))
                .collect()
        }
        Group::Levi(a, b) => {
            let mut out = Vec::new();
            for g in gl_generators(f, a) {
                let mut m = Matrix::identity(f, a + b);
                m.set_block(0, 0, &g);
                out.push(m);
            }
            for g in gl_generators(f, b) {
                let mut m = Matrix::identity(f, a + b);
                m.set_block(a, a, &g);
                out.push(m);
            }
            out
        }
        Group::Gl(n) => gl_generators(f, n),
    };
    debug_assert!(gens.iter().all(|g| in_group(g, which).unwrap()));
    Ok(gens)
}

/// Order of the group generated by `gens`, by breadth-first closure. None past `cap`.
pub fn closure_order(gens: &[Matrix], dim: usize, f: Field, cap: usize) -> Option<usize> {
    let id = Matrix::identity(f, dim);
    let mut seen: HashSet<Matrix> = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(id.clone());
    queue.push_back(id);
    while let Some(g) = queue.pop_front() {
        for s in gens {
            let h = s.mul(&g);
            if !seen.contains(&h) {
                if seen.len() >= cap {
                    return None;
                }
                seen.insert(h.clone());
                queue.push_back(h);
            }
        }
    }
    Some(seen.len())
}

/// Product of `len` random generators.
pub fn random_word<R: Rng>(gens: &[Matrix], len: usize, rng: &mut R) -> Matrix {
    let f = gens[0].field();
    let mut g = Matrix::identity(f, gens[0].rows());
    for _ in 0..len {
        g = gens[rng.gen_range(0..gens.len())].mul(&g);
    }
    g
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::enumerate_subspaces;

    #[test]
    fn perp_in_alternating_four_space() {
        let f = Field::of(3);
        let form = Form::alternating(f, 2);
        let e1 = Subspace::coordinate(f, 4, &[0]);
        assert_eq!(form.perp(&e1), Subspace::coordinate(f, 4, &[0, 1, 2]));
        assert_eq!(form.perp(&Subspace::full(f, 4)), Subspace::zero(f, 4));
        for line in enumerate_subspaces(f, 4, 1, 1000).unwrap() {
            assert_eq!(form.perp(&form.perp(&line)), line);
        }
    }

    #[test]
    fn isotropy_checks() {
        let f = Field::of(3);
        let form = Form::symmetric_odd(f, 2).unwrap();
        assert!(form.is_maximal_isotropic(&Subspace::coordinate(f, 5, &[0, 1])));
        assert!(!form.is_isotropic(&Subspace::coordinate(f, 5, &[2])));
        let planes = enumerate_subspaces(f, 5, 2, 10_000).unwrap();
        assert_eq!(
            planes
                .iter()
                .filter(|v| form.is_maximal_isotropic(v))
                .count(),
            40
        );
        assert_eq!(form.maximal_isotropics().len(), 40);
    }

    #[test]
    fn p_two_refused_for_symmetric() {
        assert!(Form::symmetric_odd(Field::of(2), 1).is_err());
        assert!(generators(Group::SoOdd(1), Field::of(2)).is_err());
    }

    #[test]
    fn h_block_membership() {
        let f = Field::of(5);
        let a = Matrix::from_i64(f, &[&[2, 0], &[0, 1]]);
        assert!(in_group(&h_of(&a), Group::Rn(2)).unwrap());
        assert!(in_group(&h_of(&a), Group::SoOdd(2)).unwrap());
    }

    #[test]
    fn anti_diagonal_in_sp() {
        // J_4 swaps e_i and e_{5-i}; ⟨Je_1, Je_4⟩ = ⟨e_4, e_1⟩ = -1, so J_4 is not symplectic,
        // while J_4 with the last two rows negated is.
        let f = Field::of(3);
        let j = Matrix::anti_identity(f, 4);
        assert!(!in_group(&j, Group::Sp(2)).unwrap());
        let mut s = j.clone();
        for c in 0..4 {
            for r in 2..4 {
                s.set(r, c, f.neg(j.get(r, c)));
            }
        }
        assert!(in_group(&s, Group::Sp(2)).unwrap());
    }

    #[test]
    fn generator_closures() {
        let f2 = Field::of(2);
        let f3 = Field::of(3);
        let ord = |g: Group, f: Field| {
            closure_order(&generators(g, f).unwrap(), g.degree(), f, 1_000_000).unwrap()
        };
        assert_eq!(ord(Group::Sp(2), f2), 720);
        assert_eq!(ord(Group::Q(2), f2), 48);
        assert_eq!(ord(Group::SoOdd(1), f3), 24);
        assert_eq!(ord(Group::OneSp(2), f3), 24);
        assert_eq!(ord(Group::Levi(2, 2), f2), 36);
        assert_eq!(ord(Group::GPrime(2), f3), 576);
        assert_eq!(ord(Group::GTildePrime(2), f3), 1152);
        assert_eq!(ord(Group::Rn(2), f3), 48);
    }

    #[test]
    fn so5_closure() {
        let f = Field::of(3);
        let gens = generators(Group::SoOdd(2), f).unwrap();
        assert_eq!(closure_order(&gens, 5, f, 100_000), Some(51840));
    }

    #[test]
    fn g_xz_is_orthogonal() {
        let f = Field::of(5);
        // n = 2, d = 1, m = 1
        let x = Matrix::from_i64(f, &[&[1], &[2], &[3]]);
        let z = complete_z(&x, &Matrix::zeros(f, 1, 1), 0);
        let g = g_xz(&x, &z);
        assert!(in_group(&g, Group::SoOdd(2)).unwrap());
        // n = 3, d = 1, m = 2
        let x = Matrix::from_i64(f, &[&[1, 4], &[2, 0], &[3, 1]]);
        let z = complete_z(&x, &Matrix::zeros(f, 2, 2), 0);
        assert!(in_group(&g_xz(&x, &z), Group::SoOdd(3)).unwrap());
    }
}
