use super::*;

#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct HasseEdge {
    pub from: String,
    pub i: usize,
    pub to: String,
}

impl fmt::Display for HasseEdge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} {} {}", self.from, self.i, self.to)
    }
}

/// Edges S →ⁱ S' between labelled classes of flags: p_i(S) = p_i(S') and dim S' = dim S + 1.
/// `dims[c]` is the dimension of class c. Images of orbits are orbits, so they coincide as soon
/// as they meet; each image is keyed by its least partial flag.
pub fn hasse_edges(part: &OrbitPartition<Flag>, dims: &[i64]) -> Result<Vec<HasseEdge>> {
    if dims.len() != part.classes.len() {
        return Err(Error::Validation(
            "one dimension per class is needed".into(),
        ));
    }
    let labels: Vec<String> = part
        .classes
        .iter()
        .map(|c| {
            c.label
                .clone()
                .ok_or_else(|| Error::Validation("unlabelled class".into()))
        })
        .collect::<Result<_>>()?;
    let Some(first) = part.elements.first() else {
        return Ok(Vec::new());
    };
    // V_N of a full flag is the whole space, so it is never dropped
    let last = if first.is_full() {
        first.top() - 1
    } else {
        first.top()
    };
    let mut edges = Vec::new();
    for i in 1..=last {
        let mut key: Vec<Option<Vec<Subspace>>> = vec![None; part.classes.len()];
        for (x, &c) in part.elements.iter().zip(&part.class_of) {
            let img = x.omit(i);
            if key[c].as_ref().map_or(true, |k| img < *k) {
                key[c] = Some(img);
            }
        }
        for a in 0..key.len() {
            for b in 0..key.len() {
                if dims[b] == dims[a] + 1 && key[a] == key[b] {
                    edges.push(HasseEdge {
                        from: labels[a].clone(),
                        i,
                        to: labels[b].clone(),
                    });
                }
            }
        }
    }
    edges.sort();
    Ok(edges)
}

/// `FROM i TO` lines, sorted.
pub fn render_edges(edges: &[HasseEdge]) -> String {
    let mut lines: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
    lines.sort();
    lines.iter().map(|l| format!("{l}\n")).collect()
}

/// Parse a fixture: `FROM i TO` per line, `#` comments and blank lines ignored.
pub fn parse_edges(text: &str) -> Result<Vec<HasseEdge>> {
    let mut out = Vec::new();
    for (k, line) in text.lines().enumerate() {
        let line = line.split('#').next().unwrap().trim();
        if line.is_empty() {
            continue;
        }
        let parts: Vec<&str> = line.split_whitespace().collect();
        let bad = |msg: &str| Error::Parse {
            line: k + 1,
            msg: msg.to_string(),
        };
        if parts.len() != 3 {
            return Err(bad("expected FROM i TO"));
        }
        let i = parts[1]
            .parse()
            .map_err(|_| bad("edge index is not a number"))?;
        out.push(HasseEdge {
            from: parts[0].to_string(),
            i,
            to: parts[2].to_string(),
        });
    }
    out.sort();
    Ok(out)
}

pub fn to_dot(name: &str, edges: &[HasseEdge]) -> String {
    let mut s = format!("digraph \"{name}\" {{\n");
    for e in edges {
        writeln!(s, "  \"{}\" -> \"{}\" [label=\"{}\"];", e.from, e.to, e.i).unwrap();
    }
    s.push_str("}\n");
    s
}

/// Hasse edges from one flag per class: p_i(S) = p_i(S') exactly when S' meets the p_i-fibre
/// through a point of S, so only the fibres through the representatives are classified.
pub fn hasse_by_fibers(
    reps: &[Flag],
    steps: usize,
    classify: impl Fn(&Flag) -> Result<(String, i64)>,
    fiber: impl Fn(&Flag, usize) -> Vec<Flag>,
) -> Result<Vec<HasseEdge>> {
    let mut edges = BTreeSet::new();
    for rep in reps {
        let (from, dim) = classify(rep)?;
        for i in 1..=steps {
            for other in fiber(rep, i) {
                let (to, d) = classify(&other)?;
                if d == dim + 1 {
                    edges.insert(HasseEdge {
                        from: from.clone(),
                        i,
                        to,
                    });
                } else if d + 1 == dim {
                    edges.insert(HasseEdge {
                        from: to,
                        i,
                        to: from.clone(),
                    });
                }
            }
        }
    }
    Ok(edges.into_iter().collect())
}

/// Standard flags of every symbol of the calculus.
pub fn standard_flags(calc: FlagCalc, f: Field) -> Vec<Flag> {
    match calc {
        FlagCalc::Sp(n) => sp_symbols(n).iter().map(|s| s.standard_flag(f)).collect(),
        FlagCalc::Q(n) => q_symbols(n).iter().map(|s| s.standard_flag(f)).collect(),
        FlagCalc::OneSp(n) => one_sp_symbols(n)
            .iter()
            .map(|s| s.standard_flag(f))
            .collect(),
        FlagCalc::Levi(a, b) => levi_symbols(a, b)
            .iter()
            .map(|s| s.standard_flag(f))
            .collect(),
    }
}

pub fn flag_hasse(calc: FlagCalc, f: Field) -> Result<Vec<HasseEdge>> {
    let steps = calc.ambient() - 1;
    hasse_by_fibers(
        &standard_flags(calc, f),
        steps,
        |x| calc.classify(x),
        |x, i| x.replace_fiber(i),
    )
}

/// Isotropic flags of length n agreeing with `flag` off V_i.
pub fn isotropic_fiber(form: &Form, flag: &Flag, i: usize) -> Vec<Flag> {
    if i < flag.top() {
        return flag.replace_fiber(i);
    }
    let below = flag.v(i - 1);
    lines_in_quotient(&form.perp(below), below)
        .into_iter()
        .filter(|v| form.pair(v, v) == 0)
        .map(|v| flag.truncate(i - 1).push(&v))
        .collect()
}

/// Hasse edges of the R_d-orbits on M_0 from realized words, one list per d.
pub fn t0_hasse_by_fibers(n: usize, f: Field) -> Result<Vec<Vec<HasseEdge>>> {
    let form = Form::symmetric_odd(f, n)?;
    let words = enumerate_words(n)?;
    let u0 = u_d(f, n, 0)?;
    (0..=n)
        .map(|d| {
            let ud = u_d(f, n, d)?;
            let reps = words
                .iter()
                .filter(|w| w.d() == d)
                .map(|w| realize(w, f))
                .collect::<Result<Vec<_>>>()?;
            let classify = |x: &Flag| {
                let w = classify_t0(&u0, &ud, x, &form)?;
                Ok((w.to_string(), w.size_formula().degree()))
            };
            hasse_by_fibers(&reps, n, classify, |x, i| isotropic_fiber(&form, x, i))
        })
        .collect()
}

/// Hasse edges of the R_d-orbits on M_0, one list per d.
pub fn t0_hasse(n: usize, f: Field, cap: u128) -> Result<Vec<Vec<HasseEdge>>> {
    (0..=n)
        .map(|d| {
            let (part, dims) = t0_fiber_orbits(n, d, f, cap)?;
            hasse_edges(&part, &dims)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fixture(name: &str) -> Vec<HasseEdge> {
        let path = format!("{}/fixtures/{name}", env!("CARGO_MANIFEST_DIR"));
        parse_edges(&std::fs::read_to_string(path).unwrap()).unwrap()
    }

    #[test]
    fn hasse_fixtures() {
        let f2 = Field::of(2);
        let cases = [
            (FlagCalc::Sp(2), "hasse_sp_2.txt"),
            (FlagCalc::Q(2), "hasse_q_2.txt"),
            (FlagCalc::OneSp(2), "hasse_one_sp_2.txt"),
            (FlagCalc::Levi(2, 2), "hasse_levi_2_2.txt"),
        ];
        for (calc, name) in cases {
            let (part, dims) = flag_orbits(calc, f2, 1_000_000).unwrap();
            let want = render_edges(&fixture(name));
            assert_eq!(
                render_edges(&hasse_edges(&part, &dims).unwrap()),
                want,
                "{name}"
            );
            assert_eq!(
                render_edges(&flag_hasse(calc, Field::of(3)).unwrap()),
                want,
                "{name}"
            );
        }
        let want = render_edges(&fixture("hasse_t0_2.txt"));
        let got: Vec<HasseEdge> = t0_hasse(2, Field::of(3), 1_000_000).unwrap().concat();
        assert_eq!(render_edges(&got), want);
        assert_eq!(
            render_edges(&t0_hasse_by_fibers(2, Field::of(5)).unwrap().concat()),
            want
        );
    }

    #[test]
    fn sp6_hasse_from_fibers() {
        let got = flag_hasse(FlagCalc::Sp(3), Field::of(2)).unwrap();
        assert_eq!(render_edges(&got), render_edges(&fixture("hasse_sp_3.txt")));
    }

    #[test]
    fn edge_text_round_trip() {
        let edges = vec![
            HasseEdge {
                from: "ABBA".into(),
                i: 3,
                to: "ABAB".into(),
            },
            HasseEdge {
                from: "ABAB".into(),
                i: 2,
                to: "AABB".into(),
            },
        ];
        let text = render_edges(&edges);
        assert_eq!(text, "ABAB 2 AABB\nABBA 3 ABAB\n");
        let mut sorted = edges.clone();
        sorted.sort();
        assert_eq!(parse_edges(&format!("# two\n{text}\n")).unwrap(), sorted);
        assert!(matches!(
            parse_edges("A 1"),
            Err(Error::Parse { line: 1, .. })
        ));
        assert!(to_dot("sp2", &sorted).contains("\"ABBA\" -> \"ABAB\" [label=\"3\"];"));
    }
}
