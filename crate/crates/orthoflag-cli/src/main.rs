mod output;

use clap::{Parser, Subcommand};
use num_bigint::BigUint;
use orthoflag::exactlin::textio::{read_blocks, write_blocks};
use orthoflag::exactlin::{Field, Flag, Matrix, Subspace, DEFAULT_CAP};
use orthoflag::forms::{generators, random_word, Form, Group};
use orthoflag::glb::levi::{levi_count, levi_symbols};
use orthoflag::glb::q::{one_sp_count, one_sp_symbols, q_count, q_symbols};
use orthoflag::glb::sp::{sp_count, sp_symbols};
use orthoflag::glb::{LeviSymbol, OneSpSymbol, QSymbol, SpSymbol};
use orthoflag::oracle::{
    flag_calc, flag_hasse, levi_split, t0_hasse_by_fibers, to_dot, verify, Case, FlagCalc,
    HasseEdge, Report,
};
use orthoflag::sizes::SizeFormula;
use orthoflag::so_even::{
    self, component, even_labels, even_size_formula, even_triple_invariants, even_words,
};
use orthoflag::so_triple::{count_orbits, representative, triple_invariants, u_d, TripleLabel};
use orthoflag::t0_words::{
    classify_t0, count_gl_on_m0, count_t0, enumerate_words, realize, WordSymbol,
};
use orthoflag::Error;
use output::{Format, Table};
use rand::rngs::StdRng;
use rand::SeedableRng;
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(
    name = "orthoflag",
    version,
    about = "Orbits on (triple) flag varieties over prime fields"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
    /// Field size (a prime; odd for the orthogonal cases)
    #[arg(long, global = true, default_value_t = 3)]
    p: u32,
    #[arg(long, global = true)]
    n: Option<usize>,
    /// sp | q | one-sp | levi | so-triple | so-t0 | so-even
    #[arg(long, global = true)]
    case: Option<Case>,
    #[arg(long, global = true, value_enum, default_value = "csv")]
    format: Format,
    /// Write α, β as al, be
    #[arg(long, global = true)]
    ascii: bool,
    #[arg(long, global = true, default_value_t = 1)]
    seed: u64,
    /// Size of the first GL block for --case levi (default: half of n, rounded up)
    #[arg(long, global = true)]
    m_plus: Option<usize>,
}

#[derive(Subcommand)]
enum Cmd {
    /// Symbol or invariants of the flag or triple in a text file
    Classify { input: PathBuf },
    /// Standard representative of a symbol, label or word
    Repr {
        symbol: String,
        /// Move it by a random group element (see --seed)
        #[arg(long)]
        scramble: bool,
    },
    /// Orbit sizes at r = p
    Size {
        #[arg(long)]
        symbol: Option<String>,
    },
    /// Numbers of orbits
    Count,
    /// Word symbols of the orbits on M x M x M_0 (or on M' x M' x M'_0 for so-even)
    Words {
        #[arg(long)]
        d: Option<usize>,
    },
    /// Closure edges S ->i S' of the orbit diagram
    Hasse,
    /// Brute-force check against the closed formulas; without --case runs the desk-scale set
    Verify,
}

enum Fail {
    Lib(Error),
    Mismatch,
}

impl From<Error> for Fail {
    fn from(e: Error) -> Fail {
        Fail::Lib(e)
    }
}

type Out = Result<String, Fail>;

fn bad(msg: impl Into<String>) -> Fail {
    Fail::Lib(Error::Validation(msg.into()))
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(text) => {
            print!("{text}");
            ExitCode::SUCCESS
        }
        Err(Fail::Mismatch) => ExitCode::from(1),
        Err(Fail::Lib(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                Error::Guard { .. } => 3,
                _ => 2,
            })
        }
    }
}

fn run(cli: &Cli) -> Out {
    let field = Field::new(cli.p)?;
    if cli.case.is_some_and(|c| c.orthogonal()) {
        field.require_odd()?;
    }
    if cli.format == Format::Dot && !matches!(cli.cmd, Cmd::Hasse) {
        return Err(bad("--format dot is only for hasse"));
    }
    match &cli.cmd {
        Cmd::Classify { input } => classify(cli, input),
        Cmd::Repr { symbol, scramble } => repr(cli, field, symbol, *scramble),
        Cmd::Size { symbol } => size(cli, symbol.as_deref()),
        Cmd::Count => count(cli),
        Cmd::Words { d } => words(cli, *d),
        Cmd::Hasse => hasse(cli, field),
        Cmd::Verify => run_verify(cli),
    }
}

fn case(cli: &Cli) -> Result<Case, Fail> {
    cli.case.ok_or_else(|| bad("--case is required"))
}

fn need_n(cli: &Cli) -> Result<usize, Fail> {
    match cli.n {
        Some(0) => Err(bad("--n must be positive")),
        Some(n) => Ok(n),
        None => Err(bad("--n is required")),
    }
}

fn emit(cli: &Cli, t: &Table) -> String {
    match cli.format {
        Format::Json => t.json(),
        _ => t.csv(),
    }
}

fn word_text(cli: &Cli, w: &WordSymbol) -> String {
    w.render(cli.ascii)
}

fn classify(cli: &Cli, input: &PathBuf) -> Out {
    let case = case(cli)?;
    let blocks = read_blocks(input)?;
    let mut t = Table::new(&["symbol", "dim"]);
    match case {
        Case::Sp | Case::Q | Case::OneSp | Case::Levi => {
            let [m] = blocks.as_slice() else {
                return Err(bad("expected one block: the flag basis"));
            };
            let width = m.cols();
            let n = match case {
                Case::OneSp => width.div_ceil(2),
                Case::Levi => width,
                _ => width / 2,
            };
            let calc = flag_calc(case, n, cli.m_plus)?;
            if calc.ambient() != width {
                return Err(bad(format!("{case} does not act on F^{width}")));
            }
            let flag = Flag::from_matrix(m)?;
            if !flag.is_full() && flag.top() + 1 != width {
                return Err(bad("the rows must give a full flag"));
            }
            let (sym, dim) = calc.classify(&complete(&flag))?;
            t.push(vec![sym, dim.to_string()]);
        }
        Case::SoTriple | Case::SoEven => {
            let [a, b, c] = blocks.as_slice() else {
                return Err(bad("expected three blocks V1, V2, V3"));
            };
            let form = orthogonal_form(a)?;
            let vs = [a, b, c].map(Subspace::from_matrix);
            if case == Case::SoTriple {
                let l = triple_invariants(&vs[0], &vs[1], &vs[2], &form)?;
                t.push(vec![l.to_string(), l.size_formula().degree().to_string()]);
            } else {
                let l = even_triple_invariants(&vs[0], &vs[1], &vs[2], &form)?;
                let comps: Vec<String> = vs
                    .iter()
                    .map(|v| component(v, &form).map(|c| c.0.to_string()))
                    .collect::<Result<_, _>>()?;
                t = Table::new(&["symbol", "dim", "components"]);
                t.push(vec![
                    l.to_string(),
                    even_size_formula(&l)?.degree().to_string(),
                    comps.join(""),
                ]);
            }
        }
        Case::SoT0 => {
            let [a, b, c] = blocks.as_slice() else {
                return Err(bad("expected three blocks V1, V2, flag"));
            };
            let form = orthogonal_form(a)?;
            let w = classify_t0(
                &Subspace::from_matrix(a),
                &Subspace::from_matrix(b),
                &Flag::from_matrix(c)?,
                &form,
            )?;
            t.push(vec![
                word_text(cli, &w),
                w.size_formula().degree().to_string(),
            ]);
        }
    }
    Ok(emit(cli, &t))
}

/// A flag given by N-1 rows is completed by the whole space.
fn complete(flag: &Flag) -> Flag {
    if flag.is_full() {
        return flag.clone();
    }
    let full = Subspace::full(flag.field(), flag.ambient());
    flag.push(&flag.v(flag.top()).complement_in(&full)[0])
}

fn orthogonal_form(m: &Matrix) -> Result<Form, Fail> {
    let width = m.cols();
    if width % 2 == 0 {
        return Err(bad(format!("width {width} is not 2n+1")));
    }
    Ok(Form::symmetric_odd(m.field(), width / 2)?)
}

fn repr(cli: &Cli, f: Field, symbol: &str, scramble: bool) -> Out {
    let case = case(cli)?;
    let (blocks, group): (Vec<Matrix>, Group) = match case {
        Case::Sp => {
            let s = SpSymbol::parse(symbol)?;
            (vec![basis_matrix(&s.standard_flag(f))], Group::Sp(s.n()))
        }
        Case::Q => {
            let s = QSymbol::parse(symbol)?;
            (vec![basis_matrix(&s.standard_flag(f))], Group::Q(s.n()))
        }
        Case::OneSp => {
            let s = OneSpSymbol::parse(symbol)?;
            (vec![basis_matrix(&s.standard_flag(f))], Group::OneSp(s.n()))
        }
        Case::Levi => {
            let s = LeviSymbol::parse(symbol)?;
            (
                vec![basis_matrix(&s.standard_flag(f))],
                Group::Levi(s.m_plus(), s.m_minus()),
            )
        }
        Case::SoTriple | Case::SoEven => {
            let l = TripleLabel::parse(symbol)?;
            if case == Case::SoEven && (l.eps != 0 || l.c0 % 2 == 1) {
                return Err(bad(format!("{l} is not an even label")));
            }
            let vs = [u_d(f, l.n, 0)?, u_d(f, l.n, l.d())?, representative(&l, f)?];
            let g = if case == Case::SoEven {
                Group::GTildePrime(l.n)
            } else {
                Group::SoOdd(l.n)
            };
            (vs.iter().map(|v| v.basis().clone()).collect(), g)
        }
        Case::SoT0 => {
            let w = WordSymbol::parse(symbol)?;
            let fl = realize(&w, f)?;
            let vs = [u_d(f, w.n(), 0)?, u_d(f, w.n(), w.d())?];
            let mut blocks: Vec<Matrix> = vs.iter().map(|v| v.basis().clone()).collect();
            blocks.push(basis_matrix(&fl));
            (blocks, Group::SoOdd(w.n()))
        }
    };
    let blocks = if scramble {
        let mut rng = StdRng::seed_from_u64(cli.seed);
        let g = random_word(&generators(group, f)?, 40, &mut rng);
        // rows are vectors, so x -> g x is rows · gᵀ
        let gt = g.transpose();
        blocks.iter().map(|b| b.mul(&gt)).collect()
    } else {
        blocks
    };
    match cli.format {
        Format::Json => {
            let ms: Vec<Vec<Vec<u32>>> = blocks.iter().map(|b| b.row_vecs()).collect();
            Ok(
                serde_json::to_string(&serde_json::json!({ "p": f.p(), "blocks": ms })).unwrap()
                    + "\n",
            )
        }
        _ => Ok(write_blocks(&blocks)),
    }
}

fn basis_matrix(fl: &Flag) -> Matrix {
    Matrix::from_rows(fl.field(), fl.ambient(), &fl.basis())
}

fn size(cli: &Cli, symbol: Option<&str>) -> Out {
    let case = case(cli)?;
    let n = need_n(cli)?;
    let r = cli.p as u64;
    let mut rows: Vec<(String, SizeFormula)> = match case {
        Case::Sp => sp_symbols(n)
            .into_iter()
            .map(|s| (s.render(), s.size_formula()))
            .collect(),
        Case::Q => q_symbols(n)
            .into_iter()
            .map(|s| (s.render(), s.size_formula()))
            .collect(),
        Case::OneSp => one_sp_symbols(n)
            .into_iter()
            .map(|s| (s.render(), s.size_formula()))
            .collect(),
        Case::Levi => {
            let (a, b) = levi_split(n, cli.m_plus)?;
            levi_symbols(a, b)
                .into_iter()
                .map(|s| (s.render(), s.size_formula()))
                .collect()
        }
        Case::SoTriple => TripleLabel::all(n)
            .into_iter()
            .map(|l| (l.to_string(), l.size_formula()))
            .collect(),
        Case::SoT0 => enumerate_words(n)?
            .into_iter()
            .map(|w| (word_text(cli, &w), w.size_formula()))
            .collect(),
        Case::SoEven => even_labels(n)
            .into_iter()
            .map(|l| Ok((l.to_string(), even_size_formula(&l)?)))
            .collect::<Result<_, Error>>()?,
    };
    if let Some(s) = symbol {
        let key = normalize_symbol(case, s)?;
        rows.retain(|(k, _)| *k == key);
        if rows.is_empty() {
            return Err(bad(format!("no orbit with symbol {s} at n = {n}")));
        }
    }
    let mut t = Table::new(&["symbol", "dim", "size"]);
    for (k, sf) in rows {
        // G̃' orbits are twice the G' ones
        let value: BigUint = if case == Case::SoEven {
            sf.eval(r) * 2u32
        } else {
            sf.eval(r)
        };
        t.push(vec![k, sf.degree().to_string(), value.to_string()]);
    }
    Ok(emit(cli, &t))
}

fn normalize_symbol(case: Case, s: &str) -> Result<String, Fail> {
    Ok(match case {
        Case::Sp => SpSymbol::parse(s)?.render(),
        Case::Q => QSymbol::parse(s)?.render(),
        Case::OneSp => OneSpSymbol::parse(s)?.render(),
        Case::Levi => LeviSymbol::parse(s)?.render(),
        Case::SoTriple | Case::SoEven => TripleLabel::parse(s)?.to_string(),
        Case::SoT0 => WordSymbol::parse(s)?.to_string(),
    })
}

fn count(cli: &Cli) -> Out {
    let case = case(cli)?;
    let range: Vec<usize> = match cli.n {
        Some(0) => return Err(bad("--n must be positive")),
        Some(n) => vec![n],
        None => match case {
            Case::OneSp => (1..=5).collect(),
            Case::SoEven => (2..=5).collect(),
            _ => (1..=4).collect(),
        },
    };
    let (header, f): (
        &[&'static str],
        Box<dyn Fn(usize) -> Result<Vec<u128>, Fail>>,
    ) = match case {
        Case::Sp => (&["n", "count"], Box::new(|n| Ok(vec![sp_count(n)]))),
        Case::Q => (&["n", "count"], Box::new(|n| Ok(vec![q_count(n)]))),
        Case::OneSp => (&["n", "count"], Box::new(|n| Ok(vec![one_sp_count(n)]))),
        Case::Levi => (
            &["n", "count"],
            Box::new(|n| {
                let (a, b) = levi_split(n, cli.m_plus)?;
                Ok(vec![levi_count(a, b)])
            }),
        ),
        Case::SoTriple => (&["n", "count"], Box::new(|n| Ok(vec![count_orbits(n)]))),
        Case::SoT0 => (
            &["n", "t0", "gl_m0"],
            Box::new(|n| Ok(vec![count_t0(n), count_gl_on_m0(n)])),
        ),
        Case::SoEven => (
            &[
                "n",
                "triples",
                "triples_same",
                "triples_mixed",
                "t0",
                "t0_same",
                "t0_diff",
                "gl_mprime0",
            ],
            Box::new(|n| {
                Ok(vec![
                    so_even::count_even_triples(n),
                    so_even::count_even_triples_component(n, true),
                    so_even::count_even_triples_component(n, false),
                    so_even::count_even_t0(n),
                    so_even::count_even_t0_component(n, true),
                    so_even::count_even_t0_component(n, false),
                    so_even::count_gl_on_mprime0(n),
                ])
            }),
        ),
    };
    let mut t = Table::new(header);
    for &n in &range {
        let mut row = vec![n.to_string()];
        row.extend(f(n)?.iter().map(|c| c.to_string()));
        t.push(row);
    }
    // a single number prints bare in CSV
    if cli.format == Format::Csv && t.rows.len() == 1 && header.len() == 2 {
        return Ok(format!("{}\n", t.rows[0][1]));
    }
    Ok(emit(cli, &t))
}

fn words(cli: &Cli, d: Option<usize>) -> Out {
    let n = need_n(cli)?;
    let r = cli.p as u64;
    let even = match cli.case {
        None | Some(Case::SoT0) => false,
        Some(Case::SoEven) => true,
        Some(c) => {
            return Err(bad(format!(
                "words are defined for so-t0 and so-even, not {c}"
            )))
        }
    };
    let list = if even {
        even_words(n)?
    } else {
        enumerate_words(n)?
    };
    let mut t = Table::new(&["word", "d", "label", "ell_tau", "size"]);
    for w in list.iter().filter(|w| d.map_or(true, |d| w.d() == d)) {
        let size = if even {
            so_even::even_word_size(w, r)?
        } else {
            w.size_formula().eval(r)
        };
        t.push(vec![
            word_text(cli, w),
            w.d().to_string(),
            w.label().to_string(),
            w.ell_tau().to_string(),
            size.to_string(),
        ]);
    }
    Ok(emit(cli, &t))
}

fn hasse(cli: &Cli, f: Field) -> Out {
    let case = case(cli)?;
    let n = need_n(cli)?;
    let (name, edges): (String, Vec<HasseEdge>) = match case {
        Case::SoT0 => (format!("{case} n={n}"), t0_hasse_by_fibers(n, f)?.concat()),
        Case::SoTriple | Case::SoEven => return Err(bad(format!("no diagram for {case}"))),
        _ => {
            let calc: FlagCalc = flag_calc(case, n, cli.m_plus)?;
            (format!("{case} n={n}"), flag_hasse(calc, f)?)
        }
    };
    let edges: Vec<HasseEdge> = if cli.ascii {
        edges
            .into_iter()
            .map(|e| HasseEdge {
                from: ascii_word(&e.from),
                i: e.i,
                to: ascii_word(&e.to),
            })
            .collect()
    } else {
        edges
    };
    Ok(match cli.format {
        Format::Dot => to_dot(&name, &edges),
        Format::Json => edge_table(&edges).json(),
        Format::Csv => edge_table(&edges).csv(),
    })
}

fn ascii_word(s: &str) -> String {
    s.replace('α', "al").replace('β', "be")
}

fn edge_table(edges: &[HasseEdge]) -> Table {
    let mut t = Table::new(&["from", "i", "to"]);
    for e in edges {
        t.push(vec![e.from.clone(), e.i.to_string(), e.to.clone()]);
    }
    t
}

/// The desk-scale set: every calculus at the largest sizes that stay fast.
const DESK: [(Case, usize, u32, Option<usize>); 8] = [
    (Case::Sp, 2, 2, None),
    (Case::Sp, 2, 3, None),
    (Case::Q, 2, 2, None),
    (Case::OneSp, 2, 3, None),
    (Case::Levi, 4, 2, Some(2)),
    (Case::SoTriple, 2, 3, None),
    (Case::SoT0, 2, 3, None),
    (Case::SoEven, 2, 3, None),
];

fn run_verify(cli: &Cli) -> Out {
    let jobs: Vec<(Case, usize, u32, Option<usize>)> = match cli.case {
        Some(c) => vec![(c, need_n(cli)?, cli.p, cli.m_plus)],
        None => DESK.to_vec(),
    };
    let mut t = Table::new(&["case", "n", "p", "universe", "status", "summary"]);
    let mut failed = false;
    for (case, n, p, mp) in jobs {
        eprintln!("verify {case} n={n} p={p}");
        let rep: Report = verify(case, n, p, mp, DEFAULT_CAP)?;
        for msg in &rep.failures {
            eprintln!("{case} n={n} p={p}: {msg}");
        }
        failed |= !rep.ok();
        let status = if rep.ok() { "ok" } else { "MISMATCH" };
        t.push(vec![
            case.to_string(),
            n.to_string(),
            p.to_string(),
            rep.universe.to_string(),
            status.into(),
            rep.summary(),
        ]);
    }
    let text = emit(cli, &t);
    if failed {
        print!("{text}");
        return Err(Fail::Mismatch);
    }
    Ok(text)
}
