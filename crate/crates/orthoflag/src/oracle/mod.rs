//! Brute-force ground truth: orbits by closure under generators, partition comparison,
//! exhaustive adapted-basis counts and Hasse edges.

use crate::error::{Error, Result};
use crate::exactlin::enumerate::guard;
use crate::exactlin::flag::lines_in_quotient;
use crate::exactlin::{enumerate_full_flags, Field, Flag, Matrix, Subspace};
use crate::forms::{generators, Form, Group};
use crate::glb::levi::{is_levi_adapted, levi_symbol, levi_symbols};
use crate::glb::q::{is_q_adapted, one_sp_symbol, one_sp_symbols, q_symbol, q_symbols};
use crate::glb::sp::{is_sp_adapted, sp_cmatrix, sp_symbol, sp_symbols};
use crate::glb::{chain, LeviSymbol, QSymbol};
use crate::so_triple::{r_d_generators, u_d};
use crate::t0_words::{classify_t0, enumerate_words, realize};
use std::collections::{BTreeMap, BTreeSet, HashMap, VecDeque};
use std::fmt::{self, Write as _};
use std::hash::Hash;

mod bases;
mod hasse;
mod verify;

pub use bases::*;
pub use hasse::*;
pub use verify::*;

/// Things a matrix group acts on.
pub trait Point: Clone + Ord + Hash {
    fn act(&self, g: &Matrix, gt: &Matrix) -> Self;
}

impl Point for Subspace {
    fn act(&self, _g: &Matrix, gt: &Matrix) -> Self {
        self.apply_t(gt)
    }
}

impl Point for Flag {
    fn act(&self, g: &Matrix, _gt: &Matrix) -> Self {
        self.apply(g)
    }
}

impl<A: Point, B: Point> Point for (A, B) {
    fn act(&self, g: &Matrix, gt: &Matrix) -> Self {
        (self.0.act(g, gt), self.1.act(g, gt))
    }
}

impl<A: Point, B: Point, C: Point> Point for (A, B, C) {
    fn act(&self, g: &Matrix, gt: &Matrix) -> Self {
        (self.0.act(g, gt), self.1.act(g, gt), self.2.act(g, gt))
    }
}

#[derive(Clone, Debug)]
pub struct OrbitClass<T> {
    /// Least element of the class.
    pub representative: T,
    pub size: usize,
    pub label: Option<String>,
}

#[derive(Clone, Debug)]
pub struct OrbitPartition<T> {
    /// The universe, sorted.
    pub elements: Vec<T>,
    /// Class index of each element.
    pub class_of: Vec<usize>,
    /// Classes in order of their representatives.
    pub classes: Vec<OrbitClass<T>>,
}

impl<T: Point> OrbitPartition<T> {
    pub fn universe_size(&self) -> usize {
        self.elements.len()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(|c| c.size).collect()
    }

    pub fn members(&self, class: usize) -> impl Iterator<Item = &T> + '_ {
        self.elements
            .iter()
            .zip(&self.class_of)
            .filter(move |(_, &c)| c == class)
            .map(|(x, _)| x)
    }

    /// Attach labels from a map that is constant on classes; the representative's label is used.
    pub fn label_with<L: fmt::Display>(&mut self, label: impl Fn(&T) -> Result<L>) -> Result<()> {
        for c in &mut self.classes {
            c.label = Some(label(&c.representative)?.to_string());
        }
        Ok(())
    }

    /// Class sizes keyed by label.
    pub fn sizes_by_label(&self) -> BTreeMap<String, usize> {
        self.classes
            .iter()
            .map(|c| (c.label.clone().unwrap_or_default(), c.size))
            .collect()
    }
}

/// Orbits of the group generated by `gens` on `universe`, which must be closed under them.
pub fn orbit_partition<T: Point>(
    mut universe: Vec<T>,
    gens: &[Matrix],
    cap: u128,
) -> Result<OrbitPartition<T>> {
    guard("points", universe.len() as u128, cap)?;
    universe.sort();
    universe.dedup();
    let index: HashMap<&T, usize> = universe.iter().enumerate().map(|(i, x)| (x, i)).collect();
    let gts: Vec<Matrix> = gens.iter().map(|g| g.transpose()).collect();
    let mut class_of = vec![usize::MAX; universe.len()];
    let mut classes = Vec::new();
    for start in 0..universe.len() {
        if class_of[start] != usize::MAX {
            continue;
        }
        let id = classes.len();
        class_of[start] = id;
        let mut size = 1;
        let mut queue = VecDeque::from([start]);
        while let Some(i) = queue.pop_front() {
            for (g, gt) in gens.iter().zip(&gts) {
                let y = universe[i].act(g, gt);
                let Some(&j) = index.get(&y) else {
                    return Err(Error::Validation(
                        "universe is not closed under the generators".into(),
                    ));
                };
                if class_of[j] == usize::MAX {
                    class_of[j] = id;
                    size += 1;
                    queue.push_back(j);
                }
            }
        }
        classes.push(OrbitClass {
            representative: universe[start].clone(),
            size,
            label: None,
        });
    }
    Ok(OrbitPartition {
        elements: universe,
        class_of,
        classes,
    })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Verdict<T> {
    Equal,
    /// Same orbit, different labels.
    Split {
        a: T,
        b: T,
        label_a: String,
        label_b: String,
    },
    /// Same label, different orbits.
    Merged {
        a: T,
        b: T,
        label: String,
    },
}

impl<T> Verdict<T> {
    pub fn is_equal(&self) -> bool {
        matches!(self, Verdict::Equal)
    }
}

impl<T: fmt::Debug> fmt::Display for Verdict<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Verdict::Equal => write!(f, "EQUAL"),
            Verdict::Split {
                a,
                b,
                label_a,
                label_b,
            } => {
                write!(
                    f,
                    "one orbit, labels {label_a} and {label_b}:\n{a:?}\n{b:?}"
                )
            }
            Verdict::Merged { a, b, label } => {
                write!(f, "label {label} on two orbits:\n{a:?}\n{b:?}")
            }
        }
    }
}

/// Compare orbits with the fibres of `label`. The witness is the first conflict in universe order.
pub fn compare_partitions<T: Point + fmt::Debug, L: Eq + Hash + fmt::Display>(
    part: &OrbitPartition<T>,
    label: impl Fn(&T) -> Result<L>,
) -> Result<Verdict<T>> {
    let mut first_of_label: HashMap<L, usize> = HashMap::new();
    let mut first_of_class: HashMap<usize, (usize, String)> = HashMap::new();
    for (i, x) in part.elements.iter().enumerate() {
        let l = label(x)?;
        let c = part.class_of[i];
        let text = l.to_string();
        match first_of_class.get(&c) {
            Some((j, lj)) if *lj != text => {
                return Ok(Verdict::Split {
                    a: part.elements[*j].clone(),
                    b: x.clone(),
                    label_a: lj.clone(),
                    label_b: text,
                })
            }
            Some(_) => {}
            None => {
                first_of_class.insert(c, (i, text.clone()));
            }
        }
        match first_of_label.get(&l) {
            Some(&j) if part.class_of[j] != c => {
                return Ok(Verdict::Merged {
                    a: part.elements[j].clone(),
                    b: x.clone(),
                    label: text,
                })
            }
            Some(_) => {}
            None => {
                first_of_label.insert(l, i);
            }
        }
    }
    Ok(Verdict::Equal)
}

/// The GL/B calculi: a subgroup H of GL_N acting on full flags of F^N.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum FlagCalc {
    Sp(usize),
    Q(usize),
    OneSp(usize),
    Levi(usize, usize),
}

impl FlagCalc {
    pub fn group(&self) -> Group {
        match *self {
            FlagCalc::Sp(n) => Group::Sp(n),
            FlagCalc::Q(n) => Group::Q(n),
            FlagCalc::OneSp(n) => Group::OneSp(n),
            FlagCalc::Levi(a, b) => Group::Levi(a, b),
        }
    }

    pub fn ambient(&self) -> usize {
        self.group().degree()
    }

    /// Symbol of the H-orbit through `flag` and its dimension.
    pub fn classify(&self, flag: &Flag) -> Result<(String, i64)> {
        let f = flag.field();
        Ok(match *self {
            FlagCalc::Sp(n) => {
                let s = sp_symbol(flag, &Form::alternating(f, n))?;
                (s.render(), s.size_formula().degree())
            }
            FlagCalc::Q(n) => {
                let s = q_symbol(flag, &Form::alternating(f, n))?;
                (s.render(), s.size_formula().degree())
            }
            FlagCalc::OneSp(_) => {
                let s = one_sp_symbol(flag)?;
                (s.render(), s.size_formula().degree())
            }
            FlagCalc::Levi(a, b) => {
                let s = levi_symbol(flag, a, b)?;
                (s.render(), s.size_formula().degree())
            }
        })
    }
}

/// H-orbits on full flags of F_p^N, labelled by symbol, with the dimension of each class.
pub fn flag_orbits(
    calc: FlagCalc,
    f: Field,
    cap: u128,
) -> Result<(OrbitPartition<Flag>, Vec<i64>)> {
    let flags = enumerate_full_flags(f, calc.ambient(), cap)?;
    let mut part = orbit_partition(flags, &generators(calc.group(), f)?, cap)?;
    part.label_with(|x| calc.classify(x).map(|c| c.0))?;
    let dims = part
        .classes
        .iter()
        .map(|c| calc.classify(&c.representative).map(|x| x.1))
        .collect::<Result<_>>()?;
    Ok((part, dims))
}

/// R_d-orbits on isotropic full flags of F_p^{2n+1}, labelled by word, for one d.
pub fn t0_fiber_orbits(
    n: usize,
    d: usize,
    f: Field,
    cap: u128,
) -> Result<(OrbitPartition<Flag>, Vec<i64>)> {
    let form = Form::symmetric_odd(f, n)?;
    let u0 = u_d(f, n, 0)?;
    let ud = u_d(f, n, d)?;
    let flags = form.isotropic_flags(n);
    let mut part = orbit_partition(flags, &r_d_generators(n, d, f)?, cap)?;
    let word = |x: &Flag| classify_t0(&u0, &ud, x, &form);
    part.label_with(word)?;
    let dims = part
        .classes
        .iter()
        .map(|c| word(&c.representative).map(|w| w.size_formula().degree()))
        .collect::<Result<_>>()?;
    Ok((part, dims))
}

#[cfg(test)]
mod tests {

    use super::*;
    use crate::exactlin::enumerate_full_flags as full_flags;

    #[test]
    fn sp4_over_f2() {
        let f = Field::of(2);
        let form = Form::alternating(f, 2);
        let flags = full_flags(f, 4, 10_000).unwrap();
        assert_eq!(flags.len(), 315);
        let mut part =
            orbit_partition(flags, &generators(Group::Sp(2), f).unwrap(), 10_000).unwrap();
        let mut sizes = part.sizes();
        sizes.sort();
        assert_eq!(sizes, vec![45, 90, 180]);
        assert!(compare_partitions(&part, |x| sp_symbol(x, &form))
            .unwrap()
            .is_equal());
        part.label_with(|x| sp_symbol(x, &form)).unwrap();
        let by = part.sizes_by_label();
        assert_eq!(by["AABB"], 180);
        assert_eq!(by["ABBA"], 45);
    }

    #[test]
    fn coarse_labels_give_witness() {
        let f = Field::of(2);
        let flags = full_flags(f, 3, 1000).unwrap();
        let part = orbit_partition(flags, &generators(Group::Gl(3), f).unwrap(), 1000).unwrap();
        assert_eq!(part.classes.len(), 1);
        let v = compare_partitions(&part, |x| Ok(x.v(1).pivots()[0])).unwrap();
        assert!(matches!(v, Verdict::Split { .. }));
        let lev = orbit_partition(
            full_flags(f, 3, 1000).unwrap(),
            &generators(Group::Levi(2, 1), f).unwrap(),
            1000,
        )
        .unwrap();
        let v = compare_partitions(&lev, |_| Ok(0)).unwrap();
        assert!(matches!(v, Verdict::Merged { .. }));
    }

    #[test]
    fn open_universe_is_rejected() {
        let f = Field::of(2);
        let flags = full_flags(f, 2, 100).unwrap();
        let gens = generators(Group::Gl(2), f).unwrap();
        assert!(orbit_partition(flags[..1].to_vec(), &gens, 100).is_err());
        assert!(matches!(
            orbit_partition(flags, &gens, 1),
            Err(Error::Guard { .. })
        ));
    }
}
