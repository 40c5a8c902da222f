//! SO_{2n+1}-orbits on triples of maximal isotropic subspaces of F^{2n+1}.

use crate::error::{Error, Result};
use crate::exactlin::{unit, Field, Matrix, Subspace};
use crate::forms::{embed_w1, g_xz, generators, h_of, l_w0, Form, Group};
use crate::sizes::{binomial, m_formula, psi_formula, SizeFormula};
use num_bigint::BigUint;
use std::fmt;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct TripleLabel {
    pub n: usize,
    pub a: usize,
    pub b: usize,
    pub c_plus: usize,
    pub c_minus: usize,
    pub c0: usize,
    pub eps: u8,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum RepCase {
    Odd,
    Even0,
    Even1,
}

impl TripleLabel {
    pub fn new(
        a: usize,
        b: usize,
        c_plus: usize,
        c_minus: usize,
        c0: usize,
        eps: u8,
    ) -> Result<Self> {
        let l = TripleLabel {
            n: a + b + c_plus + c_minus + c0,
            a,
            b,
            c_plus,
            c_minus,
            c0,
            eps,
        };
        l.check()?;
        Ok(l)
    }

    fn check(&self) -> Result<()> {
        let bad = |m: &str| Err(Error::Validation(format!("label {self}: {m}")));
        if self.a + self.b + self.c_plus + self.c_minus + self.c0 != self.n {
            return bad("parts do not add up to n");
        }
        if self.eps > 1 {
            return bad("eps must be 0 or 1");
        }
        if self.c0 % 2 == 1 && self.eps != 1 {
            return bad("odd c0 forces eps = 1");
        }
        if self.c0 == 0 && self.eps != 0 {
            return bad("c0 = 0 forces eps = 0");
        }
        Ok(())
    }

    /// "a,b,c+,c-,c0,eps"
    pub fn parse(s: &str) -> Result<Self> {
        let parts: Vec<&str> = s.split(',').map(str::trim).collect();
        if parts.len() != 6 {
            return Err(Error::Validation(format!(
                "expected a,b,c+,c-,c0,eps, got {s:?}"
            )));
        }
        let mut v = [0usize; 6];
        for (k, p) in parts.iter().enumerate() {
            v[k] = p
                .parse()
                .map_err(|_| Error::Validation(format!("bad number {p:?} in {s:?}")))?;
        }
        TripleLabel::new(v[0], v[1], v[2], v[3], v[4], v[5] as u8)
    }

    /// All valid labels for rank n, lexicographic in (a, b, c+, c-, c0, eps).
    pub fn all(n: usize) -> Vec<TripleLabel> {
        let mut out = Vec::new();
        for a in 0..=n {
            for b in 0..=n - a {
                for cp in 0..=n - a - b {
                    for cm in 0..=n - a - b - cp {
                        let c0 = n - a - b - cp - cm;
                        for eps in 0..=1 {
                            if let Ok(l) = TripleLabel::new(a, b, cp, cm, c0, eps) {
                                out.push(l);
                            }
                        }
                    }
                }
            }
        }
        out
    }

    pub fn d(&self) -> usize {
        self.n - self.a - self.b
    }

    pub fn case(&self) -> RepCase {
        match (self.c0 % 2, self.eps) {
            (1, _) => RepCase::Odd,
            (_, 0) => RepCase::Even0,
            _ => RepCase::Even1,
        }
    }

    pub fn k_plus(&self) -> usize {
        self.a + self.b + self.c_plus
    }

    pub fn k_minus(&self) -> usize {
        self.n + self.c_minus + 1
    }

    /// |G t| as a product formula.
    pub fn size_formula(&self) -> SizeFormula {
        let n = self.n;
        let qf = SizeFormula::q_factorial;
        let e = ((n - self.a) * (n - self.a + 1) / 2) as i64;
        m_formula(n)
            * SizeFormula::r_pow(e)
            * qf(n)
            * psi_formula(self.c0, self.eps).expect("valid label")
            / (qf(self.a) * qf(self.b) * qf(self.c_plus) * qf(self.c_minus) * qf(self.c0))
    }

    pub fn orbit_size(&self, r: u64) -> BigUint {
        self.size_formula().eval(r)
    }
}

impl fmt::Display for TripleLabel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{},{},{},{},{},{}",
            self.a, self.b, self.c_plus, self.c_minus, self.c0, self.eps
        )
    }
}

/// Σ_k η_k C(n-k+3, 3) with η_k = 2 for even k ≥ 2, 1 otherwise.
pub fn count_orbits(n: usize) -> u128 {
    (0..=n)
        .map(|k| {
            let eta = if k >= 2 && k % 2 == 0 { 2 } else { 1 };
            eta * binomial((n - k + 3) as u64, 3)
        })
        .sum()
}

/// U_d = span(e_1..e_{n-d}, e_{n+2}..e_{n+d+1}).
pub fn u_d(field: Field, n: usize, d: usize) -> Result<Subspace> {
    if d > n {
        return Err(Error::Validation(format!("d = {d} exceeds n = {n}")));
    }
    let idx: Vec<usize> = (0..n - d).chain(n + 1..n + d + 1).collect();
    Ok(Subspace::coordinate(field, 2 * n + 1, &idx))
}

/// Spanning vectors of the representative V(a,b,c+,c-) for the label, coordinates 0-based.
pub fn representative_basis(label: &TripleLabel, field: Field) -> Result<Vec<Vec<u32>>> {
    label.check()?;
    field.require_odd()?;
    let f = field;
    let n = label.n;
    let dim = 2 * n + 1;
    let (a, b) = (label.a, label.b);
    let e = |i: usize| unit(dim, i - 1);
    let mut out: Vec<Vec<u32>> = Vec::new();
    out.extend((1..=a).map(e));
    out.extend((2 * n - a - b + 2..=2 * n - a + 1).map(e));
    out.extend((a + b + 1..=a + b + label.c_plus).map(e));
    out.extend((n + 2..=n + label.c_minus + 1).map(e));
    let (kp, km, c0) = (label.k_plus(), label.k_minus(), label.c0);
    let comb = |terms: &[(usize, u32)]| {
        let mut v = vec![0; dim];
        for &(i, c) in terms {
            v[i - 1] = f.add(v[i - 1], c);
        }
        v
    };
    let one = 1;
    let minus = f.neg(1);
    let minus_half = f.neg(f.half());
    match label.case() {
        RepCase::Odd => {
            let c1 = c0.div_ceil(2);
            for i in 1..=c0 {
                out.push(if i < c1 {
                    comb(&[(kp + i, one), (km + i, one)])
                } else if i > c1 {
                    comb(&[(kp + i, one), (km + i, minus)])
                } else {
                    comb(&[(kp + i, one), (km + i, minus_half), (n + 1, one)])
                });
            }
        }
        RepCase::Even0 => {
            for i in 1..=c0 {
                let s = if i <= c0 / 2 { one } else { minus };
                out.push(comb(&[(kp + i, one), (km + i, s)]));
            }
        }
        RepCase::Even1 => {
            for i in 1..c0 {
                let s = if i <= c0 / 2 { one } else { minus };
                out.push(comb(&[(kp + i, one), (km + i, s)]));
            }
            out.push(comb(&[
                (kp + c0, one),
                (km + c0, minus),
                (km + 1, minus_half),
                (n + 1, one),
            ]));
        }
    }
    Ok(out)
}

pub fn representative(label: &TripleLabel, field: Field) -> Result<Subspace> {
    Ok(Subspace::span(
        field,
        2 * label.n + 1,
        &representative_basis(label, field)?,
    ))
}

pub fn triple_invariants(
    v1: &Subspace,
    v2: &Subspace,
    v3: &Subspace,
    form: &Form,
) -> Result<TripleLabel> {
    let n = form.n();
    for (k, v) in [v1, v2, v3].into_iter().enumerate() {
        if v.ambient() != form.dim() || !form.is_maximal_isotropic(v) {
            return Err(Error::Validation(format!(
                "V_({}) is not maximal isotropic",
                k + 1
            )));
        }
    }
    let v12 = v1.intersect(v2);
    let a = v12.intersect(v3).dim();
    let b = v12.dim() - a;
    let cp = v1.intersect(v3).dim() - a;
    let cm = v2.intersect(v3).dim() - a;
    let c0 = n - a - b - cp - cm;
    let eps = (v1.sum(v2).sum(v3).dim() + a) as i64 - 2 * n as i64;
    if !(0..=1).contains(&eps) {
        return Err(Error::Validation(format!("eps = {eps} out of range")));
    }
    TripleLabel::new(a, b, cp, cm, c0, eps as u8)
}

/// Partial basis f_1..f_{2n+1} of F^{2n+1} with Gram matrix J, filled block by block.
/// `x` is the orthogonal complement of the blocks placed so far.
struct WittBuilder<'a> {
    form: &'a Form,
    slots: Vec<Option<Vec<u32>>>,
    x: Subspace,
}

impl<'a> WittBuilder<'a> {
    fn new(form: &'a Form) -> Self {
        WittBuilder {
            form,
            slots: vec![None; form.dim()],
            x: Subspace::full(form.field(), form.dim()),
        }
    }

    fn fail(what: &str) -> Error {
        Error::Validation(format!(
            "no {what} found; the input is not in the expected position"
        ))
    }

    fn dual_pos(&self, pos: usize) -> usize {
        self.form.dim() - 1 - pos
    }

    /// Place isotropic `us` at `pos` and isotropic duals at the mirrored positions, the duals
    /// taken from `target` when given (then `target` must be isotropic), otherwise built in x.
    /// Duals are kept orthogonal to `avoid`.
    fn hyperbolic(
        &mut self,
        us: &[Vec<u32>],
        pos: &[usize],
        target: Option<&Subspace>,
        avoid: Option<&Subspace>,
    ) -> Result<()> {
        let form = self.form;
        let f = form.field();
        let dim = form.dim();
        let cut = |s: Subspace| match avoid {
            Some(a) => s.intersect(&form.perp(a)),
            None => s,
        };
        let vs: Vec<Vec<u32>> = match target {
            Some(t) => {
                let tb = cut(t.clone()).vectors();
                let m = Matrix::from_rows(
                    f,
                    tb.len(),
                    &us.iter()
                        .map(|u| tb.iter().map(|t| form.pair(u, t)).collect())
                        .collect::<Vec<_>>(),
                );
                let mut vs = Vec::new();
                for i in 0..us.len() {
                    let coef = m
                        .solve(&unit(us.len(), i))
                        .ok_or_else(|| Self::fail("dual basis"))?;
                    let mut v = vec![0; dim];
                    for (c, t) in coef.iter().zip(&tb) {
                        crate::exactlin::axpy(f, *c, t, &mut v);
                    }
                    vs.push(v);
                }
                vs
            }
            None => {
                let mut vs: Vec<Vec<u32>> = Vec::new();
                for i in 0..us.len() {
                    let others: Vec<Vec<u32>> = us
                        .iter()
                        .enumerate()
                        .filter(|&(j, _)| j != i)
                        .map(|(_, u)| u.clone())
                        .chain(vs.iter().cloned())
                        .collect();
                    let space = cut(self
                        .x
                        .intersect(&form.perp(&Subspace::span(f, dim, &others))));
                    let x = crate::glb::pick_pairing(form, &us[i], &space)
                        .ok_or_else(|| Self::fail("isotropic dual"))?;
                    let mut v = x.clone();
                    let c = f.neg(f.mul(f.half(), form.pair(&x, &x)));
                    crate::exactlin::axpy(f, c, &us[i], &mut v);
                    vs.push(v);
                }
                vs
            }
        };
        let mut placed = Vec::new();
        for ((u, v), &p) in us.iter().zip(&vs).zip(pos) {
            self.slots[p] = Some(u.clone());
            let q = self.dual_pos(p);
            self.slots[q] = Some(v.clone());
            placed.push(u.clone());
            placed.push(v.clone());
        }
        if !placed.is_empty() {
            self.x = self
                .x
                .intersect(&form.perp(&Subspace::span(f, dim, &placed)));
        }
        Ok(())
    }

    fn restrict(&self, v: &Subspace) -> Subspace {
        v.intersect(&self.x)
    }

    /// Fill the middle slot from the remaining line, scaled to norm 1.
    fn middle(&mut self) -> Result<()> {
        let f = self.form.field();
        let line = self.x.vectors();
        if line.len() != 1 {
            return Err(Self::fail("anisotropic line"));
        }
        let l = &line[0];
        let s = f
            .sqrt(self.form.pair(l, l))
            .ok_or_else(|| Self::fail("square norm"))?;
        let l: Vec<u32> = l.iter().map(|&x| f.div(x, s)).collect();
        self.slots[self.form.n()] = Some(l);
        Ok(())
    }

    /// g with g f_i = e_i and det g = 1.
    fn finish(self) -> Result<Matrix> {
        let f = self.form.field();
        let dim = self.form.dim();
        let cols: Vec<Vec<u32>> = self
            .slots
            .into_iter()
            .map(|s| s.ok_or_else(|| Self::fail("full basis")))
            .collect::<Result<_>>()?;
        let big = Matrix::from_columns(f, dim, &cols);
        debug_assert!(self.form.preserves(&big));
        let mut g = big
            .inverse()
            .ok_or_else(|| Self::fail("invertible basis"))?;
        if g.det() != 1 {
            g = g.neg();
        }
        Ok(g)
    }
}

/// g ∈ SO_{2n+1} with g V1 = U_0 and g V2 = U_d, d = n - dim(V1 ∩ V2).
pub fn normalize_pair(v1: &Subspace, v2: &Subspace, form: &Form) -> Result<(Matrix, usize)> {
    for v in [v1, v2] {
        if !form.is_maximal_isotropic(v) {
            return Err(Error::Validation("input is not maximal isotropic".into()));
        }
    }
    let n = form.n();
    let common = v1.intersect(v2);
    let m = common.dim();
    let d = n - m;
    let mut wb = WittBuilder::new(form);
    wb.hyperbolic(&common.vectors(), &(0..m).collect::<Vec<_>>(), None, None)?;
    let w1 = wb.restrict(v1);
    let w2 = wb.restrict(v2);
    wb.hyperbolic(&w1.vectors(), &(m..n).collect::<Vec<_>>(), Some(&w2), None)?;
    wb.middle()?;
    Ok((wb.finish()?, d))
}

/// Associated data of the zero block: for a basis u_i of W1, the map f to W2,
/// the linear form φ and ⟨u, v⟩ = (f(u), v), all in coordinates of that basis.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AssociatedForm {
    /// column j: coordinates of f(u_j) in the basis of W2 dual to u (so (u_i, w_k) = δ_{i+k, c+1})
    pub f_v: Matrix,
    pub phi: Vec<u32>,
    /// ⟨u_i, u_j⟩^alt
    pub alt: Matrix,
    /// ⟨u_i, u_j⟩ = (f(u_i), u_j)
    pub bilinear: Matrix,
}

/// The graph data of `w3` over `w1` (W3 ∩ (W2 ⊕ L) = 0), in coordinates of the given basis u of W1.
fn graph_data(
    form: &Form,
    u: &[Vec<u32>],
    w2: &Subspace,
    ell: &[u32],
    w3: &Subspace,
) -> Result<AssociatedForm> {
    let f = form.field();
    let dim = form.dim();
    let c = u.len();
    let w2b = w2.vectors();
    let mut cols: Vec<Vec<u32>> = u.to_vec();
    cols.extend(w2b.iter().cloned());
    cols.push(ell.to_vec());
    let basis = Matrix::from_columns(f, dim, &cols);
    let w3b = w3.vectors();
    // coordinates of W3 vectors in (u, w2b, ell)
    let mut coords = Vec::new();
    for v in &w3b {
        coords.push(
            basis
                .solve(v)
                .ok_or_else(|| Error::Validation("W3 leaves the block".into()))?,
        );
    }
    let xpart = Matrix::from_columns(
        f,
        c,
        &coords.iter().map(|k| k[..c].to_vec()).collect::<Vec<_>>(),
    );
    let inv = xpart
        .inverse()
        .ok_or_else(|| Error::Validation("W3 is not a graph over W1".into()))?;
    // graph vector over u_j: Σ_k inv[k][j] w3_k
    let mut fu = Vec::new();
    let mut phi = Vec::new();
    for j in 0..c {
        let mut v = vec![0; dim];
        for (k, w) in w3b.iter().enumerate() {
            crate::exactlin::axpy(f, inv.get(k, j), w, &mut v);
        }
        let k = basis.solve(&v).expect("in span");
        let mut w2part = vec![0; dim];
        for (t, wv) in w2b.iter().enumerate() {
            crate::exactlin::axpy(f, k[c + t], wv, &mut w2part);
        }
        phi.push(k[c + w2b.len()]);
        fu.push(w2part);
    }
    let bilinear = Matrix::from_rows(
        f,
        c,
        &(0..c)
            .map(|i| (0..c).map(|j| form.pair(&fu[i], &u[j])).collect())
            .collect::<Vec<_>>(),
    );
    let alt = bilinear.sub(&bilinear.transpose()).scale(f.half());
    // coefficient of f(u_j) on the W2 vector dual to u_{c+1-k}
    let f_cols: Vec<Vec<u32>> = fu
        .iter()
        .map(|v| (1..=c).map(|k| form.pair(&u[c - k], v)).collect())
        .collect();
    let f_v = Matrix::from_columns(f, c, &f_cols);
    Ok(AssociatedForm {
        f_v,
        phi,
        alt,
        bilinear,
    })
}

/// Associated form of V with V ∩ U_0 = U_(+) and V ∩ U_n = U_(-) (the case a = b = 0),
/// on the basis e_{c+ + 1}..e_{c+ + c0} of U_(0+).
pub fn associated_form(v: &Subspace, form: &Form) -> Result<AssociatedForm> {
    let f = form.field();
    let n = form.n();
    let dim = form.dim();
    let u0 = u_d(f, n, 0)?;
    let un = u_d(f, n, n)?;
    let cp = v.intersect(&u0).dim();
    let cm = v.intersect(&un).dim();
    let c0 = n - cp - cm;
    let plus = Subspace::coordinate(f, dim, &(0..cp).collect::<Vec<_>>());
    let minus = Subspace::coordinate(f, dim, &(n + 1..n + 1 + cm).collect::<Vec<_>>());
    if v.intersect(&u0) != plus || v.intersect(&un) != minus {
        return Err(Error::Validation(
            "V ∩ U_0 and V ∩ U_n must be the coordinate blocks".into(),
        ));
    }
    let zp: Vec<usize> = (cp..cp + c0).collect();
    let km = n + cm + 1;
    let zm: Vec<usize> = (km..km + c0).collect();
    let mut zero_idx: Vec<usize> = zp.clone();
    zero_idx.push(n);
    zero_idx.extend(&zm);
    let block = Subspace::coordinate(f, dim, &zero_idx);
    let u: Vec<Vec<u32>> = zp.iter().map(|&i| unit(dim, i)).collect();
    let w2 = Subspace::coordinate(f, dim, &zm);
    graph_data(form, &u, &w2, &unit(dim, n), &v.intersect(&block))
}

/// Pairs (x, y) with alt(x, y) = 1, mutually alt-orthogonal, spanning `space` (coordinate
/// vectors of length alt.rows()). `first` is used as the first x when given.
fn symplectic_pairs(
    alt: &Matrix,
    space: &Subspace,
    first: Option<Vec<u32>>,
) -> Result<Vec<(Vec<u32>, Vec<u32>)>> {
    let f = alt.field();
    let c = alt.rows();
    let mut rest = space.clone();
    let mut out = Vec::new();
    let mut first = first;
    while rest.dim() > 0 {
        let x = first.take().unwrap_or_else(|| rest.vectors()[0].clone());
        let y = rest
            .vectors()
            .into_iter()
            .find_map(|w| {
                let a = alt.bilinear(&x, &w);
                (a != 0).then(|| w.iter().map(|&t| f.div(t, a)).collect::<Vec<u32>>())
            })
            .ok_or_else(|| Error::Validation("alternating part is degenerate".into()))?;
        let cut = Subspace::span(f, c, &[x.clone(), y.clone()]).perp_gram(&alt.transpose());
        rest = rest.intersect(&cut);
        out.push((x, y));
    }
    Ok(out)
}

/// Basis p_1..p_c (coordinates in the u basis) putting (alt, φ) in the representative's form.
fn zero_block_basis(af: &AssociatedForm) -> Result<Vec<Vec<u32>>> {
    let f = af.alt.field();
    let c = af.alt.rows();
    let full = Subspace::full(f, c);
    let phi_zero = af.phi.iter().all(|&x| x == 0);
    let mut p = vec![Vec::new(); c];
    let place = |p: &mut Vec<Vec<u32>>, pairs: Vec<(Vec<u32>, Vec<u32>)>, skip_middle: bool| {
        let c1 = c.div_ceil(2);
        let mut slots: Vec<usize> = (1..=c / 2).collect();
        if skip_middle {
            slots = (1..c1).collect();
        }
        for ((x, y), i) in pairs.into_iter().zip(slots) {
            p[i - 1] = x;
            p[c - i] = y;
        }
    };
    if c % 2 == 0 && phi_zero {
        place(&mut p, symplectic_pairs(&af.alt, &full, None)?, false);
    } else if c % 2 == 0 {
        // alt(w, ·) = φ, w = p_1
        let w = af
            .alt
            .transpose()
            .solve(&af.phi)
            .ok_or_else(|| Error::Validation("φ not alt-representable".into()))?;
        place(&mut p, symplectic_pairs(&af.alt, &full, Some(w))?, false);
    } else {
        let rad = Subspace::from_matrix(&af.alt.kernel());
        let r = rad.vectors();
        if r.len() != 1 {
            return Err(Error::Validation(
                "alternating part should have a one-dimensional radical".into(),
            ));
        }
        let phi_r = crate::exactlin::dot(f, &af.phi, &r[0]);
        if phi_r == 0 {
            return Err(Error::Validation("φ vanishes on the radical".into()));
        }
        let u0: Vec<u32> = r[0].iter().map(|&t| f.div(t, phi_r)).collect();
        let ker = Subspace::span(f, c, &[af.phi.clone()]).ann();
        place(&mut p, symplectic_pairs(&af.alt, &ker, None)?, true);
        p[c.div_ceil(2) - 1] = u0;
    }
    Ok(p)
}

/// Basis vectors w_1..w_k regrouped along `chain` (S_0 ⊂ S_1 ⊂ …, last one containing all w):
/// returns v_1..v_k with span(v_1..v_i) = span(w_1..w_i), each v_i tagged with the first
/// S_c it lies in, and span of the vectors tagged ≤ c equal to S_c ∩ span(w).
pub(crate) fn adapted_split(ws: &[Vec<u32>], chain: &[Subspace]) -> Vec<(usize, Vec<u32>)> {
    let f = chain[0].field();
    let amb = chain[0].ambient();
    let mut prev = Subspace::zero(f, amb);
    let mut out = Vec::new();
    for w in ws {
        let next = prev.add_vector(w);
        let c = (0..chain.len())
            .find(|&c| next.intersect(&chain[c]).dim() > prev.intersect(&chain[c]).dim())
            .expect("chain covers the flag");
        let v = crate::glb::pick_outside(&next.intersect(&chain[c]), &prev).expect("new vector");
        out.push((c, v));
        prev = next;
    }
    out
}

/// g ∈ SO_{2n+1} carrying (V1, V2, V3) to (U_0, U_d, representative(label)).
pub fn normalize_triple(
    v1: &Subspace,
    v2: &Subspace,
    v3: &Subspace,
    form: &Form,
) -> Result<(Matrix, TripleLabel)> {
    normalize_flagged(v1, v2, v3, &v3.vectors(), form)
}

/// As `normalize_triple`, and the flag span(w_1) ⊂ span(w_1, w_2) ⊂ … of V3 is carried to a
/// flag split along the blocks of the representative.
pub(crate) fn normalize_flagged(
    v1: &Subspace,
    v2: &Subspace,
    v3: &Subspace,
    ws: &[Vec<u32>],
    form: &Form,
) -> Result<(Matrix, TripleLabel)> {
    let label = triple_invariants(v1, v2, v3, form)?;
    let f = form.field();
    let dim = form.dim();
    let n = label.n;
    let (a, b, cp, cm, c0) = (label.a, label.b, label.c_plus, label.c_minus, label.c0);
    let pick = |split: &[(usize, Vec<u32>)], c: usize| -> Vec<Vec<u32>> {
        split
            .iter()
            .filter(|(k, _)| *k == c)
            .map(|(_, v)| v.clone())
            .collect()
    };
    let w0 = v1.intersect(v2);
    let a0 = w0.intersect(v3);
    let vp = v3.intersect(&form.perp(&w0));
    let split = adapted_split(ws, &[a0.clone(), vp, v3.clone()]);
    let lambda = pick(&split, 1);
    let lam = Subspace::span(f, dim, &lambda);
    let mut wb = WittBuilder::new(form);
    // β: part of V3 off W0^⊥, duals in W0
    let bpos: Vec<usize> = (2 * n - a - b + 1..2 * n - a + 1).collect();
    wb.hyperbolic(&pick(&split, 2), &bpos, Some(&w0), None)?;
    // α, duals orthogonal to the λ part
    wb.hyperbolic(&a0.vectors(), &(0..a).collect::<Vec<_>>(), None, Some(&lam))?;
    // inside W1: γ = (V3 ∩ V1) + (V3 ∩ V2), δ is the rest of the λ part
    let pl = lam.intersect(v1);
    let mn = lam.intersect(v2);
    let split = adapted_split(&lambda, &[pl.sum(&mn), lam.clone()]);
    let zp = Subspace::span(f, dim, &pick(&split, 1));
    let (w1, w2) = (wb.restrict(v1), wb.restrict(v2));
    wb.hyperbolic(
        &pl.vectors(),
        &(a + b..a + b + cp).collect::<Vec<_>>(),
        Some(&w2),
        Some(&zp),
    )?;
    let w1r = wb.restrict(&w1);
    wb.hyperbolic(
        &mn.vectors(),
        &(n + 1..n + 1 + cm).collect::<Vec<_>>(),
        Some(&w1r),
        Some(&zp),
    )?;
    // zero block
    let (w1, w2, w3) = (wb.restrict(v1), wb.restrict(v2), wb.restrict(v3));
    if w3 != zp {
        return Err(Error::Validation(
            "zero block does not match the chosen complement".into(),
        ));
    }
    let line = wb.x.intersect(&form.perp(&w1.sum(&w2)));
    let lv = line.vectors();
    if lv.len() != 1 {
        return Err(Error::Validation(
            "zero block has no anisotropic line".into(),
        ));
    }
    let s = f
        .sqrt(form.pair(&lv[0], &lv[0]))
        .ok_or_else(|| Error::Validation("norm is not a square".into()))?;
    let ell: Vec<u32> = lv[0].iter().map(|&x| f.div(x, s)).collect();
    let kp = label.k_plus();
    if c0 > 0 {
        let u = w1.vectors();
        let af = graph_data(form, &u, &w2, &ell, &w3)?;
        let coords = zero_block_basis(&af)?;
        let ps: Vec<Vec<u32>> = coords
            .iter()
            .map(|k| {
                let mut v = vec![0; dim];
                for (c, ui) in k.iter().zip(&u) {
                    crate::exactlin::axpy(f, *c, ui, &mut v);
                }
                v
            })
            .collect();
        // p_i at k+ + i; its dual in W2 lands at the mirrored slot k- + c0 + 1 - i
        wb.hyperbolic(&ps, &(kp..kp + c0).collect::<Vec<_>>(), Some(&w2), None)?;
    }
    wb.slots[n] = Some(ell);
    let g = wb.finish()?;
    debug_assert_eq!(v3.apply(&g), representative(&label, f)?);
    Ok((g, label))
}

/// g ∈ R_d = P ∩ P_{U_d} with g V equal to the representative of (U_0, U_d, V).
pub fn standardize_v(v: &Subspace, d: usize, form: &Form) -> Result<(Matrix, Subspace)> {
    let f = form.field();
    f.require_odd()?;
    let n = form.n();
    let (g, label) = normalize_triple(&u_d(f, n, 0)?, &u_d(f, n, d)?, v, form)?;
    Ok((g, representative(&label, f)?))
}

/// Generators of R_d = P ∩ P_{U_d}: L_{W_0}, GL_d on W_1 and the unipotent radical N_{W_0}.
pub fn r_d_generators(n: usize, d: usize, f: Field) -> Result<Vec<Matrix>> {
    f.require_odd()?;
    if d > n {
        return Err(Error::Validation(format!("d = {d} exceeds n = {n}")));
    }
    let m = n - d;
    let w = 2 * d + 1;
    let mut gens = Vec::new();
    if m > 0 {
        for a in generators(Group::Gl(m), f)? {
            gens.push(l_w0(&a, n));
        }
    }
    if d > 0 {
        for b in generators(Group::Gl(d), f)? {
            gens.push(embed_w1(&h_of(&b), n));
        }
    }
    for i in 0..w {
        for j in 0..m {
            let mut x = Matrix::zeros(f, w, m);
            x.set(i, j, 1);
            gens.push(g_xz(
                &x,
                &crate::forms::complete_z(&x, &Matrix::zeros(f, m, m), 0),
            ));
        }
    }
    for i in 0..m {
        for j in 0..m {
            if i + j + 2 <= m {
                let mut z = Matrix::zeros(f, m, m);
                z.set(i, j, 1);
                z.set(m - 1 - j, m - 1 - i, f.neg(1));
                gens.push(g_xz(&Matrix::zeros(f, w, m), &z));
            }
        }
    }
    if gens.is_empty() {
        gens.push(Matrix::identity(f, 2 * n + 1));
    }
    debug_assert!(gens
        .iter()
        .all(|g| crate::forms::in_group(g, Group::SoOdd(n)).unwrap()));
    Ok(gens)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::forms::{closure_order, random_word};
    use crate::sizes::so_odd_order;
    use rand::SeedableRng;

    fn f3() -> Field {
        Field::of(3)
    }

    #[test]
    fn counts() {
        let got: Vec<u128> = (1..=4).map(count_orbits).collect();
        assert_eq!(got, vec![5, 16, 39, 81]);
        for n in 1..=6 {
            assert_eq!(TripleLabel::all(n).len() as u128, count_orbits(n));
        }
    }

    #[test]
    fn u_d_is_maximal_isotropic() {
        for n in 1..=3 {
            let form = Form::symmetric_odd(f3(), n).unwrap();
            for d in 0..=n {
                let u = u_d(f3(), n, d).unwrap();
                assert!(form.is_maximal_isotropic(&u));
                assert_eq!(u.intersect(&u_d(f3(), n, 0).unwrap()).dim(), n - d);
            }
        }
        assert_eq!(
            u_d(f3(), 2, 1).unwrap(),
            Subspace::coordinate(f3(), 5, &[0, 3])
        );
        assert!(u_d(f3(), 2, 3).is_err());
    }

    #[test]
    fn small_representatives() {
        let f = f3();
        let l = TripleLabel::new(0, 0, 0, 0, 1, 1).unwrap();
        assert_eq!(
            representative(&l, f).unwrap(),
            Subspace::span(f, 3, &[vec![1, 1, 1]])
        );
        let l = TripleLabel::new(0, 0, 0, 0, 2, 0).unwrap();
        let want = Subspace::span(f, 5, &[vec![1, 0, 0, 1, 0], vec![0, 1, 0, 0, 2]]);
        assert_eq!(representative(&l, f).unwrap(), want);
        let l = TripleLabel::new(1, 0, 0, 0, 0, 0).unwrap();
        assert_eq!(representative(&l, f).unwrap(), u_d(f, 1, 0).unwrap());
        assert!(representative(&l, Field::of(2)).is_err());
    }

    #[test]
    fn representative_round_trip() {
        for p in [3, 5] {
            let f = Field::of(p);
            for n in 1..=4 {
                let form = Form::symmetric_odd(f, n).unwrap();
                for l in TripleLabel::all(n) {
                    let v = representative(&l, f).unwrap();
                    assert!(form.is_maximal_isotropic(&v), "{l}");
                    let got = triple_invariants(
                        &u_d(f, n, 0).unwrap(),
                        &u_d(f, n, l.d()).unwrap(),
                        &v,
                        &form,
                    )
                    .unwrap();
                    assert_eq!(got, l);
                }
            }
        }
    }

    #[test]
    fn sizes_n1_r3() {
        let sizes: Vec<u32> = TripleLabel::all(1)
            .iter()
            .map(|l| l.orbit_size(3).try_into().unwrap())
            .collect();
        let mut sorted = sizes.clone();
        sorted.sort();
        assert_eq!(sorted, vec![4, 12, 12, 12, 24]);
        assert_eq!(sizes.iter().sum::<u32>(), 64);
    }

    #[test]
    fn sizes_partition_triples() {
        for n in 1..=5 {
            for r in [3u64, 5, 7] {
                let total: BigUint = TripleLabel::all(n).iter().map(|l| l.orbit_size(r)).sum();
                assert_eq!(total, m_formula(n).eval(r).pow(3), "n={n} r={r}");
            }
        }
    }

    #[test]
    fn label_text() {
        let l = TripleLabel::parse("1,0,2,0,2,1").unwrap();
        assert_eq!(l.n, 5);
        assert_eq!(l.to_string(), "1,0,2,0,2,1");
        assert!(TripleLabel::parse("0,0,0,0,1,0").is_err());
        assert!(TripleLabel::parse("0,0,0").is_err());
    }

    #[test]
    fn r_d_orders() {
        let f = f3();
        for n in 1..=2 {
            for d in 0..=n {
                let gens = r_d_generators(n, d, f).unwrap();
                let got = closure_order(&gens, 2 * n + 1, f, 100_000).unwrap();
                let m = m_formula(n).eval(3);
                let pu = SizeFormula::r_pow((d * (d + 1) / 2) as i64) * SizeFormula::q_factorial(n)
                    / (SizeFormula::q_factorial(d) * SizeFormula::q_factorial(n - d));
                let want = so_odd_order(n).eval(3) / (m * pu.eval(3));
                assert_eq!(BigUint::from(got), want, "n={n} d={d}");
            }
        }
    }

    #[test]
    fn normalize_pair_on_translates() {
        let f = f3();
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        for n in 1..=3 {
            let form = Form::symmetric_odd(f, n).unwrap();
            let gens = generators(Group::SoOdd(n), f).unwrap();
            for _ in 0..30 {
                let d = rand::Rng::gen_range(&mut rng, 0..=n);
                let h = random_word(&gens, 12, &mut rng);
                let v1 = u_d(f, n, 0).unwrap().apply(&h);
                let v2 = u_d(f, n, d).unwrap().apply(&h);
                let (g, got) = normalize_pair(&v1, &v2, &form).unwrap();
                assert_eq!(got, d);
                assert!(crate::forms::in_group(&g, Group::SoOdd(n)).unwrap());
                assert_eq!(v1.apply(&g), u_d(f, n, 0).unwrap());
                assert_eq!(v2.apply(&g), u_d(f, n, d).unwrap());
            }
        }
    }

    #[test]
    fn standardize_v_recovers_representatives() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        for p in [3, 5] {
            let f = Field::of(p);
            for n in 1..=3 {
                let form = Form::symmetric_odd(f, n).unwrap();
                for l in TripleLabel::all(n) {
                    let d = l.d();
                    let gens = r_d_generators(n, d, f).unwrap();
                    let rep = representative(&l, f).unwrap();
                    let reps = if n <= 2 { 20 } else { 3 };
                    for _ in 0..reps {
                        let h = random_word(&gens, 15, &mut rng);
                        let v = rep.apply(&h);
                        let (g, out) = standardize_v(&v, d, &form).unwrap();
                        assert_eq!(out, rep);
                        assert_eq!(v.apply(&g), rep);
                        assert!(crate::forms::in_group(&g, Group::SoOdd(n)).unwrap());
                        assert_eq!(u_d(f, n, 0).unwrap().apply(&g), u_d(f, n, 0).unwrap());
                        assert_eq!(u_d(f, n, d).unwrap().apply(&g), u_d(f, n, d).unwrap());
                    }
                }
            }
        }
    }

    #[test]
    fn standardize_n1_by_hand() {
        let f = f3();
        let form = Form::symmetric_odd(f, 1).unwrap();
        let v = Subspace::span(f, 3, &[vec![1, 1, 1]]);
        let (_, out) = standardize_v(&v, 1, &form).unwrap();
        assert_eq!(
            out,
            representative(&TripleLabel::new(0, 0, 0, 0, 1, 1).unwrap(), f).unwrap()
        );
    }

    #[test]
    fn associated_forms_of_representatives() {
        let f = f3();
        let form = Form::symmetric_odd(f, 2).unwrap();
        let v = representative(&TripleLabel::new(0, 0, 0, 0, 2, 0).unwrap(), f).unwrap();
        let af = associated_form(&v, &form).unwrap();
        assert_eq!(af.alt, crate::forms::alt_gram(f, 2));
        assert_eq!(af.phi, vec![0, 0]);
        let v = representative(&TripleLabel::new(0, 0, 0, 0, 2, 1).unwrap(), f).unwrap();
        let af = associated_form(&v, &form).unwrap();
        assert_eq!(af.alt, crate::forms::alt_gram(f, 2));
        assert_eq!(af.phi, vec![0, 1]);
        // ⟨,⟩^sym = -½ φ φ^T
        let sym = af.bilinear.add(&af.bilinear.transpose()).scale(f.half());
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(
                    sym.get(i, j),
                    f.neg(f.mul(f.half(), f.mul(af.phi[i], af.phi[j])))
                );
            }
        }
    }

    #[test]
    fn invariants_constant_on_orbits() {
        let f = f3();
        let n = 2;
        let form = Form::symmetric_odd(f, n).unwrap();
        let gens = generators(Group::SoOdd(n), f).unwrap();
        let mut rng = rand::rngs::StdRng::seed_from_u64(3);
        for l in TripleLabel::all(n) {
            let t = [
                u_d(f, n, 0).unwrap(),
                u_d(f, n, l.d()).unwrap(),
                representative(&l, f).unwrap(),
            ];
            for _ in 0..10 {
                let g = random_word(&gens, 10, &mut rng);
                let s: Vec<Subspace> = t.iter().map(|v| v.apply(&g)).collect();
                assert_eq!(triple_invariants(&s[0], &s[1], &s[2], &form).unwrap(), l);
            }
        }
    }
}
