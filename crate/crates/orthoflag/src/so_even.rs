//! The split SO_{2n} case, realised inside F^{2n+1} as the stabilizer G' of e_{n+1}.

use crate::error::{Error, Result};
use crate::exactlin::{unit, Field, Subspace};
use crate::forms::Form;
use crate::sizes::{binomial, factorial, psi_formula, SizeFormula};
use crate::so_triple::{triple_invariants, u_d, TripleLabel};
use crate::t0_words::{enumerate_words, WordSymbol};
use num_bigint::BigUint;

/// Which of the two G'-orbits M^0 = G'U_0, M^1 = G'U_1 a subspace lies in.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Component(pub u8);

/// (V, e_{n+1}) = 0
pub fn in_mprime(v: &Subspace, form: &Form) -> bool {
    let mid = unit(form.dim(), form.n());
    form.is_maximal_isotropic(v) && v.vectors().iter().all(|x| form.pair(x, &mid) == 0)
}

/// Parity of n - dim(V ∩ U_0).
pub fn component(v: &Subspace, form: &Form) -> Result<Component> {
    if !in_mprime(v, form) {
        return Err(Error::Validation("subspace is not in M'".into()));
    }
    let u0 = u_d(form.field(), form.n(), 0)?;
    Ok(Component(((form.n() - v.intersect(&u0).dim()) % 2) as u8))
}

/// U_1 = span(e_1..e_{n-1}, e_{n+2}).
pub fn u_one(f: Field, n: usize) -> Result<Subspace> {
    u_d(f, n, 1)
}

/// Triple invariants on M' × M' × M'; always ε = 0 and c0 even there.
pub fn even_triple_invariants(
    v1: &Subspace,
    v2: &Subspace,
    v3: &Subspace,
    form: &Form,
) -> Result<TripleLabel> {
    for (k, v) in [v1, v2, v3].into_iter().enumerate() {
        if !in_mprime(v, form) {
            return Err(Error::Validation(format!("V_({}) is not in M'", k + 1)));
        }
    }
    let l = triple_invariants(v1, v2, v3, form)?;
    if l.eps != 0 || l.c0 % 2 == 1 {
        return Err(Error::Validation(format!("label {l} is not of even type")));
    }
    Ok(l)
}

/// Labels of G̃'-orbits on M' × M' × M'.
pub fn even_labels(n: usize) -> Vec<TripleLabel> {
    TripleLabel::all(n)
        .into_iter()
        .filter(|l| l.eps == 0 && l.c0 % 2 == 0)
        .collect()
}

/// |M^0| = ∏_{i=1}^{n-1} (r^i + 1); |M'| is twice this.
pub fn m_half_formula(n: usize) -> SizeFormula {
    (1..n as u32).fold(SizeFormula::one(), |s, i| s * SizeFormula::rk_plus_1(i))
}

pub fn mprime_size(n: usize, r: u64) -> BigUint {
    m_half_formula(n).eval(r) * 2u32
}

/// |G't| = |M^0| r^{(n-a)(n-a-1)/2} [r]_n ψ^0_{c0} / ([r]_a [r]_b [r]_{c+} [r]_{c0} [r]_{c-}).
pub fn even_size_formula(label: &TripleLabel) -> Result<SizeFormula> {
    if label.eps != 0 || label.c0 % 2 == 1 {
        return Err(Error::Validation(format!(
            "label {label} is not of even type"
        )));
    }
    let n = label.n;
    let qf = SizeFormula::q_factorial;
    let e = ((n - label.a) * (n - label.a).saturating_sub(1) / 2) as i64;
    Ok(
        m_half_formula(n) * SizeFormula::r_pow(e) * qf(n) * psi_formula(label.c0, 0)?
            / (qf(label.a) * qf(label.b) * qf(label.c_plus) * qf(label.c_minus) * qf(label.c0)),
    )
}

/// |G̃'t| = 2 |G't|.
pub fn even_orbit_size(label: &TripleLabel, r: u64) -> Result<BigUint> {
    Ok(even_size_formula(label)?.eval(r) * 2u32)
}

/// |G̃'\T'| = Σ_{k ≤ n/2} C(n-2k+3, 3).
pub fn count_even_triples(n: usize) -> u128 {
    (0..=n / 2)
        .map(|k| binomial((n - 2 * k + 3) as u64, 3))
        .sum()
}

fn tetra_sum(top: i64) -> u128 {
    if top < 0 {
        return 0;
    }
    (0..=top as u64).map(|k| binomial(k + 3, 3)).sum()
}

/// |G'\M^{ν1} × M^{ν2} × M^{ν3}|, depending only on whether all ν agree.
pub fn count_even_triples_component(n: usize, all_equal: bool) -> u128 {
    let n = n as i64;
    if all_equal {
        tetra_sum(n.div_euclid(2)) + tetra_sum((n - 3).div_euclid(2))
    } else {
        tetra_sum((n - 1).div_euclid(2)) + tetra_sum((n - 2).div_euclid(2))
    }
}

/// |G̃'\T'_0| = Σ_k 4^{n-2k} n! / (k! (n-2k)!).
pub fn count_even_t0(n: usize) -> u128 {
    (0..=n / 2)
        .map(|k| {
            4u128.pow((n - 2 * k) as u32) * factorial(n as u64)
                / (factorial(k as u64) * factorial((n - 2 * k) as u64))
        })
        .sum()
}

/// μ = 0 for odd n, otherwise +1 when ν1 = ν2 and -1 when not.
pub fn mu(n: usize, same: bool) -> i64 {
    match (n % 2, same) {
        (1, _) => 0,
        (_, true) => 1,
        _ => -1,
    }
}

/// |G'\M^{ν1} × M^{ν2} × M^{ν3}_0| = |G̃'\T'_0|/4 + μ n! / (4 (n/2)!).
pub fn count_even_t0_component(n: usize, same: bool) -> u128 {
    let base = count_even_t0(n) as i128;
    let corr = if n % 2 == 0 {
        (factorial(n as u64) / factorial((n / 2) as u64)) as i128
    } else {
        0
    };
    let v = base + mu(n, same) as i128 * corr;
    debug_assert_eq!(v % 4, 0);
    (v / 4) as u128
}

/// |GL_n\M'_0| = Σ_k 2^{n-2k} n! / (k! (n-2k)!).
pub fn count_gl_on_mprime0(n: usize) -> u128 {
    (0..=n / 2)
        .map(|k| {
            2u128.pow((n - 2 * k) as u32) * factorial(n as u64)
                / (factorial(k as u64) * factorial((n - 2 * k) as u64))
        })
        .sum()
}

/// Words of G̃'-orbits on T'_0: those of even labels, so no X or Y.
pub fn even_words(n: usize) -> Result<Vec<WordSymbol>> {
    Ok(enumerate_words(n)?
        .into_iter()
        .filter(|w| w.label().eps == 0)
        .collect())
}

/// |G̃'(t, F)| = |G̃'t| |(R(t) ∩ G')F|.
pub fn even_word_size(word: &WordSymbol, r: u64) -> Result<BigUint> {
    Ok(even_orbit_size(word.label(), r)? * word.fiber_size_formula().eval(r))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::so_triple::representative;

    fn f3() -> Field {
        Field::of(3)
    }

    #[test]
    fn components_of_u_d() {
        let f = f3();
        for n in 1..=4 {
            let form = Form::symmetric_odd(f, n).unwrap();
            assert_eq!(
                component(&u_d(f, n, 0).unwrap(), &form).unwrap(),
                Component(0)
            );
            assert_eq!(
                component(&u_one(f, n).unwrap(), &form).unwrap(),
                Component(1)
            );
            for d in 0..=n {
                assert_eq!(
                    component(&u_d(f, n, d).unwrap(), &form).unwrap(),
                    Component((d % 2) as u8)
                );
            }
        }
        let form = Form::symmetric_odd(f, 1).unwrap();
        assert!(!in_mprime(&Subspace::span(f, 3, &[vec![1, 1, 1]]), &form));
        assert!(component(&Subspace::span(f, 3, &[vec![1, 1, 1]]), &form).is_err());
    }

    #[test]
    fn even_representatives_live_in_mprime() {
        let f = f3();
        for n in 1..=4 {
            let form = Form::symmetric_odd(f, n).unwrap();
            for l in even_labels(n) {
                let v = representative(&l, f).unwrap();
                assert!(in_mprime(&v, &form), "{l}");
                let got = even_triple_invariants(
                    &u_d(f, n, 0).unwrap(),
                    &u_d(f, n, l.d()).unwrap(),
                    &v,
                    &form,
                )
                .unwrap();
                assert_eq!(got, l);
            }
        }
        let form = Form::symmetric_odd(f, 2).unwrap();
        let u0 = u_d(f, 2, 0).unwrap();
        let l = even_triple_invariants(&u0, &u0, &u0, &form).unwrap();
        assert_eq!(l.to_string(), "2,0,0,0,0,0");
    }

    #[test]
    fn counts() {
        assert_eq!(
            (2..=5).map(count_even_triples).collect::<Vec<_>>(),
            vec![11, 24, 46, 80]
        );
        for n in 1..=8 {
            assert_eq!(even_labels(n).len() as u128, count_even_triples(n));
        }
        let same: Vec<u128> = (2..=5)
            .map(|n| count_even_triples_component(n, true))
            .collect();
        let diff: Vec<u128> = (2..=5)
            .map(|n| count_even_triples_component(n, false))
            .collect();
        assert_eq!(same, vec![5, 6, 16, 20]);
        assert_eq!(diff, vec![2, 6, 10, 20]);
        assert_eq!(
            (2..=5).map(count_even_t0).collect::<Vec<_>>(),
            vec![18, 88, 460, 2544]
        );
        let same: Vec<u128> = (2..=5).map(|n| count_even_t0_component(n, true)).collect();
        let diff: Vec<u128> = (2..=5).map(|n| count_even_t0_component(n, false)).collect();
        assert_eq!(same, vec![5, 22, 118, 636]);
        assert_eq!(diff, vec![4, 22, 112, 636]);
        assert_eq!(
            (2..=5).map(count_gl_on_mprime0).collect::<Vec<_>>(),
            vec![6, 20, 76, 312]
        );
        assert_eq!(mu(3, true), 0);
        assert_eq!(mu(5, false), 0);
    }

    #[test]
    fn even_word_counts() {
        for n in 1..=6 {
            assert_eq!(
                even_words(n).unwrap().len() as u128,
                count_even_t0(n),
                "n={n}"
            );
            assert!(even_words(n)
                .unwrap()
                .iter()
                .all(|w| !w.to_string().contains(['X', 'Y'])));
        }
    }

    #[test]
    fn mprime_sizes() {
        assert_eq!(mprime_size(2, 3), BigUint::from(8u32));
        for r in [3u64, 5, 7] {
            for n in 1..=4 {
                // |M'| counted as maximal isotropics of the split 2n-dimensional space
                let g = crate::sizes::so_even_order(n).eval(r) * 2u32;
                let stab = crate::sizes::gl_order(n).eval(r)
                    * SizeFormula::r_pow((n * (n - 1) / 2) as i64).eval(r);
                assert_eq!(mprime_size(n, r), g / stab, "n={n} r={r}");
            }
        }
    }

    #[test]
    fn sizes_partition_triples() {
        for n in 1..=5 {
            for r in [3u64, 5] {
                let total: BigUint = even_labels(n)
                    .iter()
                    .map(|l| even_orbit_size(l, r).unwrap())
                    .sum();
                assert_eq!(total, mprime_size(n, r).pow(3), "n={n} r={r}");
            }
        }
        let l = TripleLabel::new(0, 0, 0, 0, 1, 1).unwrap();
        assert!(even_orbit_size(&l, 3).is_err());
    }

    #[test]
    fn word_sizes_partition_t0() {
        for n in 1..=4 {
            for r in [3u64, 5] {
                let total: BigUint = even_words(n)
                    .unwrap()
                    .iter()
                    .map(|w| even_word_size(w, r).unwrap())
                    .sum();
                let m = mprime_size(n, r);
                assert_eq!(total, m.pow(3) * crate::sizes::q_factorial(n, r));
            }
        }
    }
}
