//! G-orbits on M × M × M_0: standard flags, words and their orbit sizes.

use crate::error::{Error, Result};
use crate::exactlin::enumerate::guard;
use crate::exactlin::{Field, Flag, Matrix, Subspace};
use crate::forms::Form;
use crate::glb::levi::{levi_symbol, levi_symbols};
use crate::glb::q::{one_sp_symbol, one_sp_symbols, q_symbol, q_symbols};
use crate::glb::sp::{sp_symbol, sp_symbols};
use crate::glb::{inversions, subsets, LeviSymbol, OneSpSymbol, QSymbol, SpSymbol};
use crate::sizes::{binomial, factorial, SizeFormula};
use crate::so_triple::{normalize_flagged, representative_basis, u_d, RepCase, TripleLabel};
use num_bigint::BigUint;
use std::fmt;

/// The δ-subword: an orbit of L_V ∩ L_0 on full flags of U_(0).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum DeltaSymbol {
    Empty,
    Sp(SpSymbol),
    Q(QSymbol),
    OneSp(OneSpSymbol),
}

impl DeltaSymbol {
    pub fn render(&self) -> String {
        match self {
            DeltaSymbol::Empty => String::new(),
            DeltaSymbol::Sp(s) => s.render(),
            DeltaSymbol::Q(s) => s.render(),
            DeltaSymbol::OneSp(s) => s.render(),
        }
    }

    fn parse(s: &str) -> Result<DeltaSymbol> {
        if s.is_empty() {
            Ok(DeltaSymbol::Empty)
        } else if s.chars().count() % 2 == 1 {
            Ok(DeltaSymbol::OneSp(OneSpSymbol::parse(s)?))
        } else if s.contains(['X', 'Y']) {
            Ok(DeltaSymbol::Q(QSymbol::parse(s)?))
        } else {
            Ok(DeltaSymbol::Sp(SpSymbol::parse(s)?))
        }
    }

    fn len(&self) -> usize {
        self.render().chars().count()
    }

    fn eps(&self) -> u8 {
        match self {
            DeltaSymbol::Empty | DeltaSymbol::Sp(_) => 0,
            _ => 1,
        }
    }

    pub fn size_formula(&self) -> SizeFormula {
        match self {
            DeltaSymbol::Empty => SizeFormula::one(),
            DeltaSymbol::Sp(s) => s.size_formula(),
            DeltaSymbol::Q(s) => s.size_formula(),
            DeltaSymbol::OneSp(s) => s.size_formula(),
        }
    }

    fn standard_basis(&self, f: Field) -> Vec<Vec<u32>> {
        match self {
            DeltaSymbol::Empty => Vec::new(),
            DeltaSymbol::Sp(s) => s.standard_basis(),
            DeltaSymbol::Q(s) => s.standard_basis(f),
            DeltaSymbol::OneSp(s) => s.standard_basis(f),
        }
    }

    /// All δ-subwords for a representative with this c0 and ε.
    pub fn all(c0: usize, eps: u8) -> Vec<DeltaSymbol> {
        match (c0, c0 % 2, eps) {
            (0, _, _) => vec![DeltaSymbol::Empty],
            (_, 1, _) => one_sp_symbols(c0.div_ceil(2))
                .into_iter()
                .map(DeltaSymbol::OneSp)
                .collect(),
            (_, _, 0) => sp_symbols(c0 / 2)
                .into_iter()
                .map(DeltaSymbol::Sp)
                .collect(),
            _ => q_symbols(c0 / 2).into_iter().map(DeltaSymbol::Q).collect(),
        }
    }
}

/// Word ℓ_1 … ℓ_n of an orbit on M × M × M_0, with the data it is assembled from.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct WordSymbol {
    label: TripleLabel,
    alpha: Vec<usize>,
    beta: Vec<usize>,
    gamma: Vec<usize>,
    delta: Vec<usize>,
    levi: Option<LeviSymbol>,
    delta_sym: DeltaSymbol,
}

impl WordSymbol {
    /// Index sets are 1-based positions; the subwords must fit the sets.
    pub fn new(
        alpha: &[usize],
        beta: &[usize],
        gamma: &[usize],
        delta: &[usize],
        levi: Option<LeviSymbol>,
        delta_sym: DeltaSymbol,
    ) -> Result<WordSymbol> {
        let n = alpha.len() + beta.len() + gamma.len() + delta.len();
        let mut hit = vec![false; n + 1];
        for &i in alpha.iter().chain(beta).chain(gamma).chain(delta) {
            if i == 0 || i > n || hit[i] {
                return Err(Error::Validation(format!(
                    "index sets do not partition 1..{n}"
                )));
            }
            hit[i] = true;
        }
        let (cp, cm) = match &levi {
            Some(l) if l.n() == gamma.len() => (l.m_plus(), l.m_minus()),
            None if gamma.is_empty() => (0, 0),
            _ => return Err(Error::Validation("γ-subword does not fit I_γ".into())),
        };
        if delta_sym.len() != delta.len() {
            return Err(Error::Validation("δ-subword does not fit I_δ".into()));
        }
        let label = TripleLabel::new(
            alpha.len(),
            beta.len(),
            cp,
            cm,
            delta.len(),
            delta_sym.eps(),
        )?;
        let sorted = |v: &[usize]| {
            let mut v = v.to_vec();
            v.sort();
            v
        };
        Ok(WordSymbol {
            label,
            alpha: sorted(alpha),
            beta: sorted(beta),
            gamma: sorted(gamma),
            delta: sorted(delta),
            levi,
            delta_sym,
        })
    }

    /// Accepts α/β or the ASCII forms `al`/`be`; '−' is read as '-'.
    pub fn parse(s: &str) -> Result<WordSymbol> {
        let chars: Vec<char> = s.trim().chars().collect();
        let (mut alpha, mut beta, mut gamma, mut delta) = (vec![], vec![], vec![], vec![]);
        let (mut gw, mut dw) = (String::new(), String::new());
        let mut k = 0;
        let mut pos = 0;
        while k < chars.len() {
            pos += 1;
            let c = chars[k];
            let next = chars.get(k + 1).copied();
            match c {
                'α' => alpha.push(pos),
                'β' => beta.push(pos),
                'a' if next == Some('l') => {
                    alpha.push(pos);
                    k += 1;
                }
                'b' if next == Some('e') => {
                    beta.push(pos);
                    k += 1;
                }
                '+' | '-' | '−' => {
                    gamma.push(pos);
                    gw.push(if c == '+' { '+' } else { '-' });
                }
                c if c.is_ascii_lowercase() => {
                    gamma.push(pos);
                    gw.push(c);
                }
                c if c.is_ascii_uppercase() => {
                    delta.push(pos);
                    dw.push(c);
                }
                _ => {
                    return Err(Error::Validation(format!(
                        "unexpected letter {c} in word {s:?}"
                    )))
                }
            }
            k += 1;
        }
        let levi = if gw.is_empty() {
            None
        } else {
            Some(LeviSymbol::parse(&gw)?)
        };
        WordSymbol::new(
            &alpha,
            &beta,
            &gamma,
            &delta,
            levi,
            DeltaSymbol::parse(&dw)?,
        )
    }

    pub fn render(&self, ascii: bool) -> String {
        let mut slots = vec![String::new(); self.n()];
        for &i in &self.alpha {
            slots[i - 1] = if ascii { "al" } else { "α" }.into();
        }
        for &i in &self.beta {
            slots[i - 1] = if ascii { "be" } else { "β" }.into();
        }
        if let Some(l) = &self.levi {
            for (&i, c) in self.gamma.iter().zip(l.render().chars()) {
                slots[i - 1] = c.to_string();
            }
        }
        for (&i, c) in self.delta.iter().zip(self.delta_sym.render().chars()) {
            slots[i - 1] = c.to_string();
        }
        slots.concat()
    }

    pub fn n(&self) -> usize {
        self.label.n
    }

    pub fn d(&self) -> usize {
        self.label.d()
    }

    pub fn label(&self) -> &TripleLabel {
        &self.label
    }

    pub fn levi(&self) -> Option<&LeviSymbol> {
        self.levi.as_ref()
    }

    pub fn delta_symbol(&self) -> &DeltaSymbol {
        &self.delta_sym
    }

    /// (α_1 … α_a γ_1 … γ_c δ_1 … δ_{c0} β_1 … β_b)
    pub fn tau(&self) -> Vec<usize> {
        [&self.alpha, &self.gamma, &self.delta, &self.beta]
            .into_iter()
            .flatten()
            .copied()
            .collect()
    }

    pub fn ell_tau(&self) -> usize {
        inversions(&self.tau())
    }

    /// (α_1 … α_a λ_1 … λ_d β_1 … β_b), λ = γ ∪ δ sorted.
    pub fn sigma(&self) -> Vec<usize> {
        let mut lam: Vec<usize> = self.gamma.iter().chain(&self.delta).copied().collect();
        lam.sort();
        [&self.alpha, &lam, &self.beta]
            .into_iter()
            .flatten()
            .copied()
            .collect()
    }

    pub fn ell_sigma(&self) -> usize {
        inversions(&self.sigma())
    }

    /// |{(γ_i, δ_j) : γ_i > δ_j}|
    pub fn ell_tau_prime(&self) -> usize {
        self.gamma
            .iter()
            .map(|g| self.delta.iter().filter(|d| *d < g).count())
            .sum()
    }

    /// |R(t) F| = [r]_a [r]_b r^{ℓ(τ)} |L_V F|.
    pub fn fiber_size_formula(&self) -> SizeFormula {
        let levi = self
            .levi
            .as_ref()
            .map_or(SizeFormula::one(), |l| l.size_formula());
        SizeFormula::q_factorial(self.label.a)
            * SizeFormula::q_factorial(self.label.b)
            * SizeFormula::r_pow(self.ell_tau() as i64)
            * levi
            * self.delta_sym.size_formula()
    }

    /// |G (U_0, U_d, F)| = |G t| |R(t) F|.
    pub fn size_formula(&self) -> SizeFormula {
        self.label.size_formula() * self.fiber_size_formula()
    }
}

impl fmt::Display for WordSymbol {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.render(false))
    }
}

pub fn t0_orbit_size(word: &WordSymbol, r: u64) -> BigUint {
    word.size_formula().eval(r)
}

/// Coordinates (0-based) of the blocks of the representative.
fn plus_minus_coords(label: &TripleLabel) -> Vec<usize> {
    let (a, b, n) = (label.a, label.b, label.n);
    (a + b..label.k_plus())
        .chain(n + 1..n + 1 + label.c_minus)
        .collect()
}

/// Positions in U_(0+) listed in the order of the coordinates the δ calculus uses.
fn delta_coords(label: &TripleLabel) -> Vec<usize> {
    let (kp, c0) = (label.k_plus(), label.c0);
    let local: Vec<usize> = match label.case() {
        RepCase::Even0 => (0..c0).collect(),
        // reversal carries the fixed vector e_1 of U_(0+) to the last coordinate
        RepCase::Even1 => (0..c0).rev().collect(),
        // the radical vector e_{c1} goes first
        RepCase::Odd => {
            let c1 = c0.div_ceil(2) - 1;
            std::iter::once(c1)
                .chain((0..c0).filter(|&i| i != c1))
                .collect()
        }
    };
    local.into_iter().map(|i| kp + i).collect()
}

/// U_(α), U_(β), U_(+) ⊕ U_(-), U_(0) inside the representative, in this order.
pub fn blocks(label: &TripleLabel, f: Field) -> Result<[Subspace; 4]> {
    let basis = representative_basis(label, f)?;
    let dim = 2 * label.n + 1;
    let (a, b, c) = (label.a, label.b, label.c_plus + label.c_minus);
    let span = |r: std::ops::Range<usize>| Subspace::span(f, dim, &basis[r]);
    Ok([
        span(0..a),
        span(a..a + b),
        span(a + b..a + b + c),
        span(a + b + c..label.n),
    ])
}

fn check_flag(label: &TripleLabel, flag: &Flag, f: Field) -> Result<()> {
    let v = Subspace::span(f, 2 * label.n + 1, &representative_basis(label, f)?);
    if flag.ambient() != 2 * label.n + 1 || flag.top() != label.n || *flag.v(label.n) != v {
        return Err(Error::Validation(
            "the flag must end in the representative V".into(),
        ));
    }
    Ok(())
}

/// V_i = ⊕ (V_i ∩ block) for every i.
pub fn is_standard(label: &TripleLabel, flag: &Flag) -> Result<bool> {
    let f = flag.field();
    check_flag(label, flag, f)?;
    let bl = blocks(label, f)?;
    Ok((1..=label.n).all(|i| {
        bl.iter()
            .map(|b| flag.v(i).intersect(b).dim())
            .sum::<usize>()
            == i
    }))
}

/// g ∈ R(t) = P ∩ P_{U_d} ∩ P_V with g F standard, and g F.
pub fn standardize_flag(label: &TripleLabel, flag: &Flag, form: &Form) -> Result<(Matrix, Flag)> {
    let f = form.field();
    f.require_odd()?;
    check_flag(label, flag, f)?;
    let n = label.n;
    let v = flag.v(n).clone();
    let (g, got) = normalize_flagged(
        &u_d(f, n, 0)?,
        &u_d(f, n, label.d())?,
        &v,
        &flag.basis(),
        form,
    )?;
    debug_assert_eq!(got, *label);
    let out = flag.apply(&g);
    if !is_standard(label, &out)? {
        return Err(Error::Validation("standardization failed".into()));
    }
    Ok((g, out))
}

/// The word of a standard flag.
pub fn read_standard(label: &TripleLabel, flag: &Flag) -> Result<WordSymbol> {
    let f = flag.field();
    let n = label.n;
    let bl = blocks(label, f)?;
    let mut sets: [Vec<usize>; 4] = Default::default();
    for i in 1..=n {
        let k = (0..4)
            .find(|&k| flag.v(i).intersect(&bl[k]).dim() > flag.v(i - 1).intersect(&bl[k]).dim())
            .ok_or_else(|| Error::Validation("flag is not standard".into()))?;
        sets[k].push(i);
    }
    let induced = |block: &Subspace, steps: &[usize], coords: &[usize]| -> Result<Flag> {
        let mut spaces = vec![Subspace::zero(f, coords.len())];
        for &i in steps {
            spaces.push(flag.v(i).intersect(block).project(coords).restrict(coords));
        }
        Flag::from_spaces(spaces)
    };
    let levi = if sets[2].is_empty() {
        None
    } else {
        let fl = induced(&bl[2], &sets[2], &plus_minus_coords(label))?;
        Some(levi_symbol(&fl, label.c_plus, label.c_minus)?)
    };
    let delta_sym = if sets[3].is_empty() {
        DeltaSymbol::Empty
    } else {
        let fl = induced(&bl[3], &sets[3], &delta_coords(label))?;
        let half = label.c0 / 2;
        match label.case() {
            RepCase::Even0 => DeltaSymbol::Sp(sp_symbol(&fl, &Form::alternating(f, half))?),
            RepCase::Even1 => DeltaSymbol::Q(q_symbol(&fl, &Form::alternating(f, half))?),
            RepCase::Odd => DeltaSymbol::OneSp(one_sp_symbol(&fl)?),
        }
    };
    let w = WordSymbol::new(&sets[0], &sets[1], &sets[2], &sets[3], levi, delta_sym)?;
    if w.label != *label {
        return Err(Error::Validation(
            "word does not match the representative".into(),
        ));
    }
    Ok(w)
}

/// Word of (U_0, U_d, F) with F a full flag of the representative for `label`.
pub fn word_symbol(label: &TripleLabel, flag: &Flag, form: &Form) -> Result<WordSymbol> {
    let (_, std) = standardize_flag(label, flag, form)?;
    read_standard(label, &std)
}

/// Word of the G-orbit of (V1, V2, F), F a full isotropic flag.
pub fn classify_t0(v1: &Subspace, v2: &Subspace, flag: &Flag, form: &Form) -> Result<WordSymbol> {
    let f = form.field();
    f.require_odd()?;
    if flag.top() != form.n() {
        return Err(Error::Validation("the flag must have n steps".into()));
    }
    let v = flag.v(form.n()).clone();
    let (g, label) = normalize_flagged(v1, v2, &v, &flag.basis(), form)?;
    read_standard(&label, &flag.apply(&g))
}

/// A standard flag of the representative with the given word.
pub fn realize(word: &WordSymbol, f: Field) -> Result<Flag> {
    let label = &word.label;
    let n = label.n;
    let dim = 2 * n + 1;
    let rep = representative_basis(label, f)?;
    let (a, b, c) = (label.a, label.b, label.c_plus + label.c_minus);
    let lift = |coords: &[usize], u: &[u32]| {
        let mut v = vec![0; dim];
        for (&k, &x) in coords.iter().zip(u) {
            v[k] = x;
        }
        v
    };
    let mut gam = word
        .levi
        .as_ref()
        .map(|l| l.standard_basis())
        .unwrap_or_default()
        .into_iter()
        .map(|u| lift(&plus_minus_coords(label), &u));
    // a vector of U_(0+) extends uniquely to V ∩ U_(0); the zero-block basis projects to units
    let zero = &rep[a + b + c..];
    let kp = label.k_plus();
    let mut del = word.delta_sym.standard_basis(f).into_iter().map(|u| {
        let w = lift(&delta_coords(label), &u);
        let mut v = vec![0; dim];
        for (i, z) in zero.iter().enumerate() {
            crate::exactlin::axpy(f, w[kp + i], z, &mut v);
        }
        v
    });
    let mut al = rep[..a].iter();
    let mut be = rep[a..a + b].iter();
    let mut basis = Vec::new();
    for i in 1..=n {
        let v = if word.alpha.contains(&i) {
            al.next().cloned()
        } else if word.beta.contains(&i) {
            be.next().cloned()
        } else if word.gamma.contains(&i) {
            gam.next()
        } else {
            del.next()
        };
        basis.push(v.expect("sets fit the blocks"));
    }
    Flag::from_basis(f, dim, &basis)
}

/// ξ(2k) = Σ_s (2k)!/((s!)^2 (k-s)!), ξ(2k-1) = Σ_{s≥1} (2k-1)!/(s!(s-1)!(k-s)!).
pub fn xi(k: usize) -> u128 {
    let fact = |m: usize| factorial(m as u64);
    if k % 2 == 0 {
        let h = k / 2;
        (0..=h)
            .map(|s| fact(k) / (fact(s) * fact(s) * fact(h - s)))
            .sum()
    } else {
        let h = k.div_ceil(2);
        (1..=h)
            .map(|s| fact(k) / (fact(s) * fact(s - 1) * fact(h - s)))
            .sum()
    }
}

fn weighted(n: usize, base: u128) -> u128 {
    (0..=n)
        .map(|k| base.pow((n - k) as u32) * binomial(n as u64, k as u64) * xi(k))
        .sum()
}

pub fn count_t0(n: usize) -> u128 {
    weighted(n, 4)
}

pub fn count_gl_on_m0(n: usize) -> u128 {
    weighted(n, 2)
}

/// All words of length n, grouped by label in label order.
pub fn enumerate_words(n: usize) -> Result<Vec<WordSymbol>> {
    guard("word length", n as u128, 8)?;
    let mut out = Vec::new();
    let all: Vec<usize> = (1..=n).collect();
    for label in TripleLabel::all(n) {
        let c = label.c_plus + label.c_minus;
        let levis: Vec<Option<LeviSymbol>> = if c == 0 {
            vec![None]
        } else {
            levi_symbols(label.c_plus, label.c_minus)
                .into_iter()
                .map(Some)
                .collect()
        };
        let deltas = DeltaSymbol::all(label.c0, label.eps);
        for al in subsets(&all, label.a) {
            let rest: Vec<usize> = all.iter().copied().filter(|i| !al.contains(i)).collect();
            for be in subsets(&rest, label.b) {
                let rest2: Vec<usize> = rest.iter().copied().filter(|i| !be.contains(i)).collect();
                for ga in subsets(&rest2, c) {
                    let de: Vec<usize> =
                        rest2.iter().copied().filter(|i| !ga.contains(i)).collect();
                    for l in &levis {
                        for ds in &deltas {
                            out.push(WordSymbol::new(&al, &be, &ga, &de, l.clone(), ds.clone())?);
                        }
                    }
                }
            }
        }
    }
    Ok(out)
}

/// All full flags of the representative V, i.e. M_0(V).
pub fn flags_of_v(label: &TripleLabel, f: Field, cap: u128) -> Result<Vec<Flag>> {
    let rep = representative_basis(label, f)?;
    let n = label.n;
    let dim = 2 * n + 1;
    let local = crate::exactlin::enumerate_full_flags(f, n, cap)?;
    let m = Matrix::from_columns(f, dim, &rep);
    local
        .into_iter()
        .map(|fl| {
            let spaces = fl.spaces()[..=n]
                .iter()
                .map(|s| {
                    Subspace::span(
                        f,
                        dim,
                        &s.vectors().iter().map(|v| m.apply(v)).collect::<Vec<_>>(),
                    )
                })
                .collect();
            Flag::from_spaces(spaces)
        })
        .collect()
}
