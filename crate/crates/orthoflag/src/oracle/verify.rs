use super::*;
use crate::so_even::{
    component, even_labels, even_orbit_size, even_triple_invariants, in_mprime, Component,
};
use crate::so_triple::{count_orbits, triple_invariants};
use crate::t0_words::{count_t0, WordSymbol};
use num_bigint::BigUint;
use std::str::FromStr;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum Case {
    Sp,
    Q,
    OneSp,
    Levi,
    SoTriple,
    SoT0,
    SoEven,
}

impl Case {
    pub const ALL: [Case; 7] = [
        Case::Sp,
        Case::Q,
        Case::OneSp,
        Case::Levi,
        Case::SoTriple,
        Case::SoT0,
        Case::SoEven,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Case::Sp => "sp",
            Case::Q => "q",
            Case::OneSp => "one-sp",
            Case::Levi => "levi",
            Case::SoTriple => "so-triple",
            Case::SoT0 => "so-t0",
            Case::SoEven => "so-even",
        }
    }

    pub fn orthogonal(&self) -> bool {
        matches!(self, Case::SoTriple | Case::SoT0 | Case::SoEven)
    }
}

impl fmt::Display for Case {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Case {
    type Err = Error;
    fn from_str(s: &str) -> Result<Case> {
        Case::ALL
            .into_iter()
            .find(|c| c.name() == s)
            .ok_or_else(|| Error::Validation(format!("unknown case {s}")))
    }
}

/// Outcome of one brute-force check.
#[derive(Clone, Debug)]
pub struct Report {
    pub case: Case,
    pub n: usize,
    pub p: u32,
    pub universe: usize,
    /// (label, orbit size) per class, largest first.
    pub classes: Vec<(String, usize)>,
    pub failures: Vec<String>,
}

impl Report {
    pub fn ok(&self) -> bool {
        self.failures.is_empty()
    }

    /// "3 classes, sizes 180/90/45"
    pub fn summary(&self) -> String {
        let sizes: Vec<String> = self.classes.iter().map(|c| c.1.to_string()).collect();
        format!("{} classes, sizes {}", self.classes.len(), sizes.join("/"))
    }
}

/// BFS orbits of `gens` on `universe`, checked against `classify` (label and formula size)
/// and against the expected number of classes.
fn check<T: Point + fmt::Debug>(
    head: (Case, usize, u32),
    universe: Vec<T>,
    gens: &[Matrix],
    classify: impl Fn(&T) -> Result<(String, BigUint)>,
    expected_classes: u128,
    cap: u128,
) -> Result<Report> {
    let part = orbit_partition(universe, gens, cap)?;
    let mut failures = Vec::new();
    let verdict = compare_partitions(&part, |x| classify(x).map(|c| c.0))?;
    if !verdict.is_equal() {
        failures.push(verdict.to_string());
    }
    let mut classes = Vec::new();
    for c in &part.classes {
        let (label, size) = classify(&c.representative)?;
        if size != BigUint::from(c.size) {
            failures.push(format!(
                "{label}: orbit has {} points, formula gives {size}",
                c.size
            ));
        }
        classes.push((label, c.size));
    }
    if part.classes.len() as u128 != expected_classes {
        failures.push(format!(
            "{} classes, count formula gives {expected_classes}",
            part.classes.len()
        ));
    }
    classes.sort_by(|a, b| b.1.cmp(&a.1).then_with(|| a.0.cmp(&b.0)));
    Ok(Report {
        case: head.0,
        n: head.1,
        p: head.2,
        universe: part.universe_size(),
        classes,
        failures,
    })
}

/// Splits n into (m+, m-) for the Levi case.
pub fn levi_split(n: usize, m_plus: Option<usize>) -> Result<(usize, usize)> {
    let mp = m_plus.unwrap_or(n.div_ceil(2));
    if mp > n {
        return Err(Error::Validation(format!("m+ = {mp} exceeds n = {n}")));
    }
    Ok((mp, n - mp))
}

pub fn flag_calc(case: Case, n: usize, m_plus: Option<usize>) -> Result<FlagCalc> {
    Ok(match case {
        Case::Sp => FlagCalc::Sp(n),
        Case::Q => FlagCalc::Q(n),
        Case::OneSp => FlagCalc::OneSp(n),
        Case::Levi => {
            let (a, b) = levi_split(n, m_plus)?;
            FlagCalc::Levi(a, b)
        }
        _ => return Err(Error::Validation(format!("{case} is not a flag calculus"))),
    })
}

fn flag_count_formula(calc: FlagCalc) -> u128 {
    match calc {
        FlagCalc::Sp(n) => crate::glb::sp::sp_count(n),
        FlagCalc::Q(n) => crate::glb::q::q_count(n),
        FlagCalc::OneSp(n) => crate::glb::q::one_sp_count(n),
        FlagCalc::Levi(a, b) => crate::glb::levi::levi_count(a, b),
    }
}

fn flag_size(calc: FlagCalc, flag: &Flag, r: u64) -> Result<(String, BigUint)> {
    let f = flag.field();
    Ok(match calc {
        FlagCalc::Sp(n) => {
            let s = sp_symbol(flag, &Form::alternating(f, n))?;
            (s.render(), s.orbit_size(r))
        }
        FlagCalc::Q(n) => {
            let s = q_symbol(flag, &Form::alternating(f, n))?;
            (s.render(), s.orbit_size(r))
        }
        FlagCalc::OneSp(_) => {
            let s = one_sp_symbol(flag)?;
            (s.render(), s.orbit_size(r))
        }
        FlagCalc::Levi(a, b) => {
            let s = levi_symbol(flag, a, b)?;
            (s.render(), s.orbit_size(r))
        }
    })
}

/// Brute-force check of one calculus at (n, p): orbits under generators against the symbol
/// or invariant map, class sizes against the size formulas, class count against the count formula.
pub fn verify(case: Case, n: usize, p: u32, m_plus: Option<usize>, cap: u128) -> Result<Report> {
    let f = Field::new(p)?;
    if n == 0 {
        return Err(Error::Validation("n must be positive".into()));
    }
    let r = p as u64;
    let head = (case, n, p);
    match case {
        Case::Sp | Case::Q | Case::OneSp | Case::Levi => {
            let calc = flag_calc(case, n, m_plus)?;
            let flags = enumerate_full_flags(f, calc.ambient(), cap)?;
            let gens = generators(calc.group(), f)?;
            check(
                head,
                flags,
                &gens,
                |x| flag_size(calc, x, r),
                flag_count_formula(calc),
                cap,
            )
        }
        Case::SoTriple => {
            let form = Form::symmetric_odd(f, n)?;
            let m = form.maximal_isotropics();
            guard("triples", (m.len() as u128).pow(3), cap)?;
            let universe = triples(&m, &m, &m);
            let classify = |t: &(Subspace, Subspace, Subspace)| {
                let l = triple_invariants(&t.0, &t.1, &t.2, &form)?;
                Ok((l.to_string(), l.orbit_size(r)))
            };
            check(
                head,
                universe,
                &generators(Group::SoOdd(n), f)?,
                classify,
                count_orbits(n),
                cap,
            )
        }
        Case::SoT0 => {
            let form = Form::symmetric_odd(f, n)?;
            let m = form.maximal_isotropics();
            let flags = form.isotropic_flags(n);
            guard(
                "points",
                (m.len() as u128).pow(2) * flags.len() as u128,
                cap,
            )?;
            let universe = triples(&m, &m, &flags);
            let classify = |t: &(Subspace, Subspace, Flag)| {
                let w: WordSymbol = classify_t0(&t.0, &t.1, &t.2, &form)?;
                Ok((w.to_string(), w.size_formula().eval(r)))
            };
            check(
                head,
                universe,
                &generators(Group::SoOdd(n), f)?,
                classify,
                count_t0(n),
                cap,
            )
        }
        Case::SoEven => {
            let form = Form::symmetric_odd(f, n)?;
            let mp: Vec<Subspace> = form
                .maximal_isotropics()
                .into_iter()
                .filter(|v| in_mprime(v, &form))
                .collect();
            guard("triples", (mp.len() as u128).pow(3), cap)?;
            let mut report = check(
                head,
                triples(&mp, &mp, &mp),
                &generators(Group::GTildePrime(n), f)?,
                |t| {
                    let l = even_triple_invariants(&t.0, &t.1, &t.2, &form)?;
                    Ok((l.to_string(), even_orbit_size(&l, r)?))
                },
                even_labels(n).len() as u128,
                cap,
            )?;
            // G' itself has the two components of M' as its orbits
            let comps = orbit_partition(mp, &generators(Group::GPrime(n), f)?, cap)?;
            if comps.classes.len() != 2 {
                report
                    .failures
                    .push(format!("G' has {} orbits on M'", comps.classes.len()));
            }
            let verdict =
                compare_partitions(&comps, |v| component(v, &form).map(|Component(c)| c))?;
            if !verdict.is_equal() {
                report.failures.push(format!("components: {verdict}"));
            }
            Ok(report)
        }
    }
}

fn triples<A: Clone, B: Clone, C: Clone>(xs: &[A], ys: &[B], zs: &[C]) -> Vec<(A, B, C)> {
    let mut out = Vec::with_capacity(xs.len() * ys.len() * zs.len());
    for x in xs {
        for y in ys {
            for z in zs {
                out.push((x.clone(), y.clone(), z.clone()));
            }
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sp_n2_p2_summary() {
        let rep = verify(Case::Sp, 2, 2, None, 1_000_000).unwrap();
        assert!(rep.ok(), "{:?}", rep.failures);
        assert_eq!(rep.summary(), "3 classes, sizes 180/90/45");
    }

    #[test]
    fn small_cases_pass() {
        for (case, n, p) in [
            (Case::Q, 1, 3),
            (Case::OneSp, 2, 3),
            (Case::Levi, 3, 2),
            (Case::SoTriple, 1, 3),
        ] {
            let rep = verify(case, n, p, None, 1_000_000).unwrap();
            assert!(rep.ok(), "{case}: {:?}", rep.failures);
        }
        let rep = verify(Case::SoTriple, 1, 3, None, 1000).unwrap();
        let sizes: Vec<usize> = rep.classes.iter().map(|c| c.1).collect();
        assert_eq!(sizes, vec![24, 12, 12, 12, 4]);
        assert_eq!(rep.universe, 64);
    }

    #[test]
    fn case_names() {
        for c in Case::ALL {
            assert_eq!(c.name().parse::<Case>().unwrap(), c);
        }
        assert!("so".parse::<Case>().is_err());
        assert!(verify(Case::SoTriple, 1, 2, None, 1000).is_err());
        assert!(matches!(
            verify(Case::Sp, 3, 3, None, 1000),
            Err(Error::Guard { .. })
        ));
    }
}
