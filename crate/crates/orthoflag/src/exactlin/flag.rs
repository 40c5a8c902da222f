use super::field::Field;
use super::matrix::Matrix;
use super::subspace::Subspace;
use crate::error::{Error, Result};

/// Chain V_0 = 0 ⊂ V_1 ⊂ … ⊂ V_k with dim V_i = i. A full flag of F^N has k = N.
#[derive(Clone, PartialEq, Eq, Hash, Debug, PartialOrd, Ord)]
pub struct Flag {
    spaces: Vec<Subspace>,
}

impl Flag {
    /// V_i = span of the first i vectors.
    pub fn from_basis(field: Field, ambient: usize, vectors: &[Vec<u32>]) -> Result<Self> {
        let mut spaces = vec![Subspace::zero(field, ambient)];
        for (i, v) in vectors.iter().enumerate() {
            if v.len() != ambient {
                return Err(Error::Validation(format!(
                    "vector {} has wrong width",
                    i + 1
                )));
            }
            let next = spaces[i].add_vector(v);
            if next.dim() != i + 1 {
                return Err(Error::Validation(format!(
                    "vector {} lies in the span of the earlier ones",
                    i + 1
                )));
            }
            spaces.push(next);
        }
        Ok(Flag { spaces })
    }

    /// Full flag from the rows of an invertible matrix (or the first rows of one).
    pub fn from_matrix(m: &Matrix) -> Result<Self> {
        Flag::from_basis(m.field(), m.cols(), &m.row_vecs())
    }

    pub fn from_spaces(spaces: Vec<Subspace>) -> Result<Self> {
        for (i, s) in spaces.iter().enumerate() {
            if s.dim() != i {
                return Err(Error::Validation(format!(
                    "V_{i} has dimension {}",
                    s.dim()
                )));
            }
            if i > 0 && !s.contains_space(&spaces[i - 1]) {
                return Err(Error::Validation(format!(
                    "V_{} is not inside V_{i}",
                    i - 1
                )));
            }
        }
        Ok(Flag { spaces })
    }

    pub fn field(&self) -> Field {
        self.spaces[0].field()
    }
    pub fn ambient(&self) -> usize {
        self.spaces[0].ambient()
    }
    /// Index k of the top space.
    pub fn top(&self) -> usize {
        self.spaces.len() - 1
    }
    pub fn is_full(&self) -> bool {
        self.top() == self.ambient()
    }
    pub fn v(&self, i: usize) -> &Subspace {
        &self.spaces[i]
    }
    pub fn spaces(&self) -> &[Subspace] {
        &self.spaces
    }

    pub fn apply(&self, g: &Matrix) -> Flag {
        let gt = g.transpose();
        Flag {
            spaces: self.spaces.iter().map(|s| s.apply_t(&gt)).collect(),
        }
    }

    /// A basis with V_i = span(v_1..v_i): the first echelon row of V_i outside V_{i-1}.
    pub fn basis(&self) -> Vec<Vec<u32>> {
        (1..=self.top())
            .map(|i| {
                self.spaces[i]
                    .vectors()
                    .into_iter()
                    .find(|v| !self.spaces[i - 1].contains(v))
                    .unwrap()
            })
            .collect()
    }

    /// Spaces with V_i removed (the fiber key of the i-th projection).
    pub fn omit(&self, i: usize) -> Vec<Subspace> {
        self.spaces
            .iter()
            .enumerate()
            .filter(|&(k, _)| k != i && k != 0)
            .map(|(_, s)| s.clone())
            .collect()
    }

    /// All flags agreeing with this one except at V_i, where V_{i-1} ⊂ V_i ⊂ V_{i+1}.
    pub fn replace_fiber(&self, i: usize) -> Vec<Flag> {
        assert!(i >= 1 && i < self.top());
        lines_in_quotient(&self.spaces[i + 1], &self.spaces[i - 1])
            .into_iter()
            .map(|v| {
                let mut spaces = self.spaces.clone();
                spaces[i] = self.spaces[i - 1].add_vector(&v);
                Flag { spaces }
            })
            .collect()
    }

    pub fn truncate(&self, k: usize) -> Flag {
        Flag {
            spaces: self.spaces[..=k].to_vec(),
        }
    }

    pub fn push(&self, v: &[u32]) -> Flag {
        let mut spaces = self.spaces.clone();
        spaces.push(self.spaces.last().unwrap().add_vector(v));
        Flag { spaces }
    }
}

/// One representative vector for each line of big/small, taken from a fixed complement.
pub fn lines_in_quotient(big: &Subspace, small: &Subspace) -> Vec<Vec<u32>> {
    let f = big.field();
    let comp = small.complement_in(big);
    let k = comp.len();
    let p = f.p();
    let mut out = Vec::new();
    // normalized coefficient vectors: first nonzero coordinate equal to 1
    for lead in 0..k {
        let tail = k - lead - 1;
        let total = (p as u64).pow(tail as u32);
        for code in 0..total {
            let mut coeffs = vec![0u32; k];
            coeffs[lead] = 1;
            let mut c = code;
            for j in 0..tail {
                coeffs[lead + 1 + j] = (c % p as u64) as u32;
                c /= p as u64;
            }
            let mut v = vec![0; big.ambient()];
            for (a, w) in coeffs.iter().zip(&comp) {
                if *a != 0 {
                    super::matrix::axpy(f, *a, w, &mut v);
                }
            }
            out.push(v);
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn dependent_basis_rejected() {
        let f = Field::of(3);
        assert!(Flag::from_basis(f, 2, &[vec![1, 1], vec![2, 2]]).is_err());
    }

    #[test]
    fn basis_round_trip() {
        let f = Field::of(5);
        let fl = Flag::from_basis(f, 3, &[vec![1, 2, 0], vec![0, 1, 4], vec![0, 0, 1]]).unwrap();
        assert!(fl.is_full());
        let again = Flag::from_basis(f, 3, &fl.basis()).unwrap();
        assert_eq!(fl, again);
    }

    #[test]
    fn fiber_has_r_plus_one_members() {
        let f = Field::of(3);
        let fl = Flag::from_matrix(&Matrix::identity(f, 3)).unwrap();
        let fib = fl.replace_fiber(1);
        assert_eq!(fib.len(), 4);
        assert!(fib.contains(&fl));
    }
}
