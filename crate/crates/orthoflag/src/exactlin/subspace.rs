use super::field::Field;
use super::matrix::{unit, Matrix};
use crate::error::{Error, Result};

/// Subspace of F_p^n held by its reduced row-echelon basis, so equality is byte equality.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Subspace {
    basis: Matrix,
}

impl PartialOrd for Subspace {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Subspace {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        (self.ambient(), self.dim(), self.basis.data()).cmp(&(
            other.ambient(),
            other.dim(),
            other.basis.data(),
        ))
    }
}

impl Subspace {
    pub fn from_matrix(m: &Matrix) -> Self {
        let (r, _) = m.rref();
        Subspace {
            basis: r.nonzero_rows(),
        }
    }

    pub fn span(field: Field, ambient: usize, vectors: &[Vec<u32>]) -> Self {
        Subspace::from_matrix(&Matrix::from_rows(field, ambient, vectors))
    }

    pub fn zero(field: Field, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::zeros(field, 0, ambient),
        }
    }

    pub fn full(field: Field, ambient: usize) -> Self {
        Subspace {
            basis: Matrix::identity(field, ambient),
        }
    }

    /// Span of the listed standard basis vectors (0-based indices).
    pub fn coordinate(field: Field, ambient: usize, idx: &[usize]) -> Self {
        let vs: Vec<Vec<u32>> = idx.iter().map(|&i| unit(ambient, i)).collect();
        Subspace::span(field, ambient, &vs)
    }

    pub fn field(&self) -> Field {
        self.basis.field()
    }
    pub fn ambient(&self) -> usize {
        self.basis.cols()
    }
    pub fn dim(&self) -> usize {
        self.basis.rows()
    }
    pub fn basis(&self) -> &Matrix {
        &self.basis
    }
    pub fn vectors(&self) -> Vec<Vec<u32>> {
        self.basis.row_vecs()
    }

    pub fn pivots(&self) -> Vec<usize> {
        (0..self.dim())
            .map(|i| self.basis.row(i).iter().position(|&x| x != 0).unwrap())
            .collect()
    }

    fn check_same(&self, other: &Subspace) -> Result<()> {
        if self.ambient() != other.ambient() || self.field() != other.field() {
            return Err(Error::Validation(format!(
                "ambient mismatch: F_{}^{} vs F_{}^{}",
                self.field().p(),
                self.ambient(),
                other.field().p(),
                other.ambient()
            )));
        }
        Ok(())
    }

    /// Coefficients of v in the echelon basis, if v lies in the subspace.
    pub fn coords(&self, v: &[u32]) -> Option<Vec<u32>> {
        let f = self.field();
        let piv = self.pivots();
        let coeffs: Vec<u32> = piv.iter().map(|&c| v[c]).collect();
        let mut w = v.to_vec();
        for (k, &a) in coeffs.iter().enumerate() {
            if a != 0 {
                super::matrix::axpy(f, f.neg(a), self.basis.row(k), &mut w);
            }
        }
        w.iter().all(|&x| x == 0).then_some(coeffs)
    }

    pub fn contains(&self, v: &[u32]) -> bool {
        self.coords(v).is_some()
    }

    pub fn contains_space(&self, other: &Subspace) -> bool {
        (0..other.dim()).all(|i| self.contains(other.basis.row(i)))
    }

    pub fn try_sum(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        Ok(Subspace::from_matrix(&self.basis.vstack(&other.basis)))
    }

    pub fn sum(&self, other: &Subspace) -> Subspace {
        self.try_sum(other).expect("ambient mismatch")
    }

    pub fn add_vector(&self, v: &[u32]) -> Subspace {
        let m = Matrix::from_rows(self.field(), self.ambient(), &[v.to_vec()]);
        Subspace::from_matrix(&self.basis.vstack(&m))
    }

    /// Annihilator under the standard dot product.
    pub fn ann(&self) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient());
        }
        Subspace::from_matrix(&self.basis.kernel())
    }

    pub fn try_intersect(&self, other: &Subspace) -> Result<Subspace> {
        self.check_same(other)?;
        if self.dim() == 0 || other.dim() == 0 {
            return Ok(Subspace::zero(self.field(), self.ambient()));
        }
        if self.dim() == self.ambient() {
            return Ok(other.clone());
        }
        if other.dim() == other.ambient() {
            return Ok(self.clone());
        }
        Ok(self.ann().sum(&other.ann()).ann())
    }

    pub fn intersect(&self, other: &Subspace) -> Subspace {
        self.try_intersect(other).expect("ambient mismatch")
    }

    /// Orthogonal complement for the bilinear form with Gram matrix `gram`: {x : (v, x) = 0 for v in self}.
    pub fn perp_gram(&self, gram: &Matrix) -> Subspace {
        if self.dim() == 0 {
            return Subspace::full(self.field(), self.ambient());
        }
        Subspace::from_matrix(&self.basis.mul(gram).kernel())
    }

    /// Image under x -> g x.
    pub fn apply(&self, g: &Matrix) -> Subspace {
        if self.dim() == 0 {
            return self.clone();
        }
        Subspace::from_matrix(&self.basis.mul(&g.transpose()))
    }

    /// Image under x -> g x, with g^T already formed.
    pub fn apply_t(&self, gt: &Matrix) -> Subspace {
        if self.dim() == 0 {
            return self.clone();
        }
        Subspace::from_matrix(&self.basis.mul(gt))
    }

    /// Vectors extending a basis of `self` to a basis of `big` (self ⊆ big).
    pub fn complement_in(&self, big: &Subspace) -> Vec<Vec<u32>> {
        let mut cur = self.clone();
        let mut out = Vec::new();
        for v in big.vectors() {
            if !cur.contains(&v) {
                cur = cur.add_vector(&v);
                out.push(v);
            }
        }
        out
    }

    /// Restriction to the coordinates `idx`: the subspace of F^{idx.len()} of coordinate
    /// vectors of elements lying in span(e_i : i in idx).
    pub fn restrict(&self, idx: &[usize]) -> Subspace {
        let f = self.field();
        let n = self.ambient();
        let block = Subspace::coordinate(f, n, idx);
        let inter = self.intersect(&block);
        let vs: Vec<Vec<u32>> = inter
            .vectors()
            .iter()
            .map(|v| idx.iter().map(|&i| v[i]).collect())
            .collect();
        Subspace::span(f, idx.len(), &vs)
    }

    /// Image of a subspace of F^{idx.len()} placed at coordinates `idx` of F^n.
    pub fn embed(&self, n: usize, idx: &[usize]) -> Subspace {
        let vs: Vec<Vec<u32>> = self
            .vectors()
            .iter()
            .map(|v| {
                let mut w = vec![0; n];
                for (k, &i) in idx.iter().enumerate() {
                    w[i] = v[k];
                }
                w
            })
            .collect();
        Subspace::span(self.field(), n, &vs)
    }

    /// Projection onto the coordinates `idx` (kept in place, other coordinates zeroed).
    pub fn project(&self, idx: &[usize]) -> Subspace {
        let vs: Vec<Vec<u32>> = self
            .vectors()
            .iter()
            .map(|v| {
                let mut w = vec![0; v.len()];
                for &i in idx {
                    w[i] = v[i];
                }
                w
            })
            .collect();
        Subspace::span(self.field(), self.ambient(), &vs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn coordinate_intersection() {
        let f = Field::of(3);
        let a = Subspace::coordinate(f, 3, &[0, 1]);
        let b = Subspace::coordinate(f, 3, &[1, 2]);
        assert_eq!(a.intersect(&b), Subspace::coordinate(f, 3, &[1]));
        let e1 = Subspace::coordinate(f, 3, &[0]);
        assert_eq!(e1.intersect(&e1), e1);
    }

    #[test]
    fn sum_basics() {
        let f = Field::of(5);
        let a = Subspace::coordinate(f, 3, &[0]);
        let b = Subspace::coordinate(f, 3, &[1]);
        assert_eq!(a.sum(&b), Subspace::coordinate(f, 3, &[0, 1]));
        assert_eq!(a.sum(&a), a);
    }

    #[test]
    fn mismatch_is_an_error() {
        let f = Field::of(3);
        let a = Subspace::full(f, 2);
        let b = Subspace::full(f, 3);
        assert!(a.try_intersect(&b).is_err());
        assert!(a.try_sum(&b).is_err());
    }

    #[test]
    fn restrict_and_embed() {
        let f = Field::of(3);
        let v = Subspace::span(f, 4, &[vec![1, 0, 1, 0], vec![0, 1, 0, 0]]);
        let r = v.restrict(&[1, 2]);
        assert_eq!(r, Subspace::coordinate(f, 2, &[0]));
        assert_eq!(r.embed(4, &[1, 2]), Subspace::coordinate(f, 4, &[1]));
    }

    #[test]
    fn complement_extends_basis() {
        let f = Field::of(3);
        let small = Subspace::span(f, 3, &[vec![1, 1, 0]]);
        let big = Subspace::full(f, 3);
        let ext = small.complement_in(&big);
        assert_eq!(ext.len(), 2);
        let mut s = small.clone();
        for v in ext {
            s = s.add_vector(&v);
        }
        assert_eq!(s, big);
    }
}
