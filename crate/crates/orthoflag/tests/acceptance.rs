//! One line per acceptance criterion; exits non-zero if any fails.

use num_bigint::BigUint;
use orthoflag::exactlin::Field;
use orthoflag::forms::Form;
use orthoflag::glb::levi::{levi_cmatrices, levi_count, levi_symbols};
use orthoflag::glb::q::{one_sp_count, one_sp_symbols, q_count, q_symbols};
use orthoflag::glb::sp::{sp_cmatrix, sp_count, sp_symbols};
use orthoflag::glb::CMatrix;
use orthoflag::oracle::*;
use orthoflag::sizes::{m_formula, q_factorial};
use orthoflag::so_even::*;
use orthoflag::so_triple::{count_orbits, TripleLabel};
use orthoflag::t0_words::{count_gl_on_m0, count_t0, enumerate_words, t0_orbit_size};
use std::process::ExitCode;

const CAP: u128 = 5_000_000;

type Outcome = Result<String, String>;

fn expect<T: PartialEq + std::fmt::Debug>(what: &str, got: T, want: T) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what}: got {got:?}, want {want:?}"))
    }
}

fn table(f: impl Fn(usize) -> u128, ns: std::ops::RangeInclusive<usize>) -> Vec<u128> {
    ns.map(f).collect()
}

fn counts() -> Outcome {
    expect("triples", table(count_orbits, 1..=4), vec![5, 16, 39, 81])?;
    expect("t0", table(count_t0, 1..=4), vec![5, 28, 169, 1082])?;
    expect(
        "gl on M0",
        table(count_gl_on_m0, 1..=4),
        vec![3, 12, 53, 258],
    )?;
    expect("sp", table(sp_count, 1..=4), vec![1, 3, 15, 105])?;
    expect("q", table(q_count, 1..=4), vec![2, 18, 200, 2730])?;
    expect(
        "one-sp",
        table(one_sp_count, 1..=5),
        vec![1, 6, 55, 665, 9891],
    )?;
    expect(
        "even triples",
        table(count_even_triples, 2..=5),
        vec![11, 24, 46, 80],
    )?;
    expect(
        "even t0",
        table(count_even_t0, 2..=5),
        vec![18, 88, 460, 2544],
    )?;
    expect(
        "gl on M'0",
        table(count_gl_on_mprime0, 2..=5),
        vec![6, 20, 76, 312],
    )?;
    expect(
        "triples same",
        table(|n| count_even_triples_component(n, true), 2..=5),
        vec![5, 6, 16, 20],
    )?;
    expect(
        "triples mixed",
        table(|n| count_even_triples_component(n, false), 2..=5),
        vec![2, 6, 10, 20],
    )?;
    expect(
        "t0 same",
        table(|n| count_even_t0_component(n, true), 2..=5),
        vec![5, 22, 118, 636],
    )?;
    expect(
        "t0 diff",
        table(|n| count_even_t0_component(n, false), 2..=5),
        vec![4, 22, 112, 636],
    )?;
    // the enumerators agree with the closed counts
    for n in 1..=4 {
        expect("sp symbols", sp_symbols(n).len() as u128, sp_count(n))?;
        expect("q symbols", q_symbols(n).len() as u128, q_count(n))?;
        expect(
            "one-sp symbols",
            one_sp_symbols(n).len() as u128,
            one_sp_count(n),
        )?;
        expect("labels", TripleLabel::all(n).len() as u128, count_orbits(n))?;
        expect(
            "words",
            enumerate_words(n).map_err(|e| e.to_string())?.len() as u128,
            count_t0(n),
        )?;
        for a in 0..=n {
            expect(
                "levi symbols",
                levi_symbols(a, n - a).len() as u128,
                levi_count(a, n - a),
            )?;
        }
    }
    Ok("13 count tables".into())
}

fn partition_of_unity() -> Outcome {
    let mut checked = 0;
    for r in [2u64, 3, 5] {
        for n in 1..=5 {
            let sum = |it: &mut dyn Iterator<Item = BigUint>| it.sum::<BigUint>();
            expect(
                "sp",
                sum(&mut sp_symbols(n).iter().map(|s| s.orbit_size(r))),
                q_factorial(2 * n, r),
            )?;
            expect(
                "q",
                sum(&mut q_symbols(n).iter().map(|s| s.orbit_size(r))),
                q_factorial(2 * n, r),
            )?;
            expect(
                "one-sp",
                sum(&mut one_sp_symbols(n).iter().map(|s| s.orbit_size(r))),
                q_factorial(FlagCalc::OneSp(n).ambient(), r),
            )?;
            for a in 0..=n {
                let got = sum(&mut levi_symbols(a, n - a).iter().map(|s| s.orbit_size(r)));
                expect("levi", got, q_factorial(n, r))?;
            }
            checked += 3 + n + 1;
            if r == 2 {
                continue;
            }
            let m = m_formula(n).eval(r);
            let got = sum(&mut TripleLabel::all(n).iter().map(|l| l.orbit_size(r)));
            expect("triples", got, m.pow(3))?;
            let words = enumerate_words(n).map_err(|e| e.to_string())?;
            let got = sum(&mut words.iter().map(|w| t0_orbit_size(w, r)));
            expect("t0", got, m.pow(3) * q_factorial(n, r))?;
            let got: BigUint = even_labels(n)
                .iter()
                .map(|l| even_orbit_size(l, r).unwrap())
                .sum();
            expect("even", got, mprime_size(n, r).pow(3))?;
            checked += 3;
        }
    }
    Ok(format!("{checked} sums, n <= 5, r in 2,3,5"))
}

fn oracle_cases() -> Outcome {
    let cases = [
        (Case::Sp, 2, 2, None, 3),
        (Case::Sp, 2, 3, None, 3),
        (Case::Q, 2, 2, None, 18),
        (Case::OneSp, 2, 3, None, 6),
        (Case::Levi, 4, 2, Some(2), 21),
        (Case::SoTriple, 2, 3, None, 16),
        (Case::SoT0, 2, 3, None, 28),
        (Case::SoEven, 2, 3, None, 11),
    ];
    let mut out = Vec::new();
    for (case, n, p, mp, classes) in cases {
        let rep = verify(case, n, p, mp, CAP).map_err(|e| format!("{case}: {e}"))?;
        if !rep.ok() {
            return Err(format!("{case} n={n} p={p}: {}", rep.failures.join("; ")));
        }
        expect(case.name(), rep.classes.len(), classes)?;
        out.push(format!("{case}/{p}:{}", rep.classes.len()));
    }
    Ok(out.join(" "))
}

fn basis_counts() -> Outcome {
    let mut checked = 0;
    for p in [2u32, 3] {
        let f = Field::new(p).map_err(|e| e.to_string())?;
        for n in 1..=2 {
            let mut jobs: Vec<(BasisCalc, Vec<orthoflag::exactlin::Flag>)> = vec![
                (BasisCalc::Sp, standard_flags(FlagCalc::Sp(n), f)),
                (BasisCalc::Q, standard_flags(FlagCalc::Q(n), f)),
            ];
            for a in 0..=n {
                jobs.push((
                    BasisCalc::Levi(a, n - a),
                    standard_flags(FlagCalc::Levi(a, n - a), f),
                ));
            }
            for (calc, flags) in jobs {
                for flag in flags {
                    let (name, want) =
                        adapted_basis_formula(&flag, calc).map_err(|e| e.to_string())?;
                    let got = count_adapted_bases(&flag, calc, CAP).map_err(|e| e.to_string())?;
                    expect(&format!("{calc:?} {name} p={p}"), got, want)?;
                    checked += 1;
                }
            }
        }
    }
    Ok(format!("{checked} standard flags"))
}

fn fixture(name: &str) -> Result<Vec<HasseEdge>, String> {
    let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
    let text = std::fs::read_to_string(&path).map_err(|e| format!("{path}: {e}"))?;
    parse_edges(&text).map_err(|e| e.to_string())
}

fn hasse() -> Outcome {
    let err = |e: orthoflag::Error| e.to_string();
    let f2 = Field::of(2);
    let f3 = Field::of(3);
    let cases = [
        (FlagCalc::Sp(2), "hasse_sp_2.txt"),
        (FlagCalc::Sp(3), "hasse_sp_3.txt"),
        (FlagCalc::Q(2), "hasse_q_2.txt"),
        (FlagCalc::OneSp(2), "hasse_one_sp_2.txt"),
        (FlagCalc::Levi(2, 2), "hasse_levi_2_2.txt"),
    ];
    let mut edges = 0;
    for (calc, name) in cases {
        let want = render_edges(&fixture(name)?);
        expect(
            name,
            render_edges(&flag_hasse(calc, f2).map_err(err)?),
            want.clone(),
        )?;
        if calc != FlagCalc::Sp(3) {
            let (part, dims) = flag_orbits(calc, f2, CAP).map_err(err)?;
            expect(
                name,
                render_edges(&hasse_edges(&part, &dims).map_err(err)?),
                want.clone(),
            )?;
        }
        edges += want.lines().count();
    }
    let want = render_edges(&fixture("hasse_t0_2.txt")?);
    expect(
        "t0",
        render_edges(&t0_hasse(2, f3, CAP).map_err(err)?.concat()),
        want.clone(),
    )?;
    expect(
        "t0",
        render_edges(&t0_hasse_by_fibers(2, f3).map_err(err)?.concat()),
        want.clone(),
    )?;
    edges += want.lines().count();
    Ok(format!("6 diagrams, {edges} edges"))
}

fn inversions(perm: &[usize]) -> usize {
    (0..perm.len())
        .map(|i| (i + 1..perm.len()).filter(|&j| perm[i] > perm[j]).count())
        .sum()
}

fn inversion_identities() -> Outcome {
    let f = Field::of(3);
    let mut stated_levi_failures = 0;
    let mut checked = 0;
    for n in 1..=5 {
        let form = Form::alternating(f, n);
        for s in sp_symbols(n) {
            let tau = sp_cmatrix(&s.standard_flag(f), &form)
                .map_err(|e| e.to_string())?
                .tau();
            let lt = inversions(&tau);
            expect(&format!("sp {} tau", s.render()), lt, s.ell_tau())?;
            expect(&format!("sp {}", s.render()), lt, n + 2 * s.ell_sigma())?;
            checked += 1;
        }
        for a in 0..=n {
            for s in levi_symbols(a, n - a) {
                let (cp, cm) = levi_cmatrices(&s.standard_flag(f), a).map_err(|e| e.to_string())?;
                let c = CMatrix::from_fn(n, |i, j| cp.get(i, j) + cm.get(i, j));
                let lt = inversions(&c.tau());
                let k = s.s();
                expect(&format!("levi {} tau", s.render()), lt, s.ell_tau())?;
                expect(
                    &format!("levi {}", s.render()),
                    lt + 2 * s.ell_sigma(),
                    k * (2 * n - 2 * k - 1),
                )?;
                if lt + 2 * s.ell_sigma() != k * (n - k) {
                    stated_levi_failures += 1;
                }
                checked += 1;
            }
        }
    }
    Ok(format!(
        "{checked} symbols; levi checked as l(tau) = s(2n-2s-1) - 2l(sigma), the form s(n-s) - 2l(sigma) misses {stated_levi_failures}"
    ))
}

fn main() -> ExitCode {
    let criteria: [(&str, fn() -> Outcome); 6] = [
        ("count tables", counts),
        ("partition of unity", partition_of_unity),
        ("brute-force orbits", oracle_cases),
        ("adapted basis counts", basis_counts),
        ("hasse diagrams", hasse),
        ("inversion identities", inversion_identities),
    ];
    let mut failed = 0;
    for (k, (name, run)) in criteria.iter().enumerate() {
        match run() {
            Ok(detail) => println!("PASS {} {name}: {detail}", k + 1),
            Err(why) => {
                failed += 1;
                println!("FAIL {} {name}: {why}", k + 1);
            }
        }
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
