use orthoflag::exactlin::{enumerate_full_flags, Field, Subspace};
use orthoflag::forms::{generators, Form, Group};
use orthoflag::glb::levi::levi_symbol;
use orthoflag::oracle::{compare_partitions, orbit_partition, Verdict};
use orthoflag::so_triple::triple_invariants;

fn so5_triples() -> (Form, Vec<(Subspace, Subspace, Subspace)>) {
    let f = Field::of(3);
    let form = Form::symmetric_odd(f, 2).unwrap();
    let m = form.maximal_isotropics();
    let mut out = Vec::new();
    for a in &m {
        for b in &m {
            for c in &m {
                out.push((a.clone(), b.clone(), c.clone()));
            }
        }
    }
    (form, out)
}

#[test]
fn dropping_eps_merges_two_orbits() {
    let (form, universe) = so5_triples();
    let gens = generators(Group::SoOdd(2), form.field()).unwrap();
    let part = orbit_partition(universe, &gens, 1_000_000).unwrap();
    assert_eq!(part.classes.len(), 16);
    let full = compare_partitions(&part, |t| triple_invariants(&t.0, &t.1, &t.2, &form)).unwrap();
    assert!(full.is_equal());
    let coarse = compare_partitions(&part, |t| {
        let mut l = triple_invariants(&t.0, &t.1, &t.2, &form)?;
        l.eps = 0;
        Ok(l)
    })
    .unwrap();
    match coarse {
        Verdict::Merged { a, b, label } => {
            let la = triple_invariants(&a.0, &a.1, &a.2, &form).unwrap();
            let lb = triple_invariants(&b.0, &b.1, &b.2, &form).unwrap();
            assert_ne!(la.eps, lb.eps);
            assert_eq!(
                label,
                format!("{}", {
                    let mut l = la;
                    l.eps = 0;
                    l
                })
            );
        }
        other => panic!("expected a merged witness, got {other}"),
    }
}

#[test]
fn levi_one_one_is_equal() {
    let f = Field::of(3);
    let flags = enumerate_full_flags(f, 2, 1000).unwrap();
    let part = orbit_partition(flags, &generators(Group::Levi(1, 1), f).unwrap(), 1000).unwrap();
    let verdict =
        compare_partitions(&part, |fl| levi_symbol(fl, 1, 1).map(|s| s.render())).unwrap();
    assert_eq!(verdict.to_string(), "EQUAL");
    assert_eq!(part.classes.len(), 3);
}
