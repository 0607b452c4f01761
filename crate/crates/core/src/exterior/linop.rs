use super::tensor::Tensor;
use crate::scalar::{Coeff, ScalarQ};

/// Linear map V^{(x)k} -> V^{(x)l} over Q(i)(s), stored as the images of
/// the basis vectors.
#[derive(Clone, Debug, PartialEq)]
pub struct LinOp {
    pub from_degree: usize,
    pub to_degree: usize,
    cols: Vec<Tensor<ScalarQ>>,
}

impl LinOp {
    pub fn from_fn(from_degree: usize, to_degree: usize, f: impl Fn(&Tensor<ScalarQ>) -> Tensor<ScalarQ>) -> Self {
        let n = 1u32 << (2 * from_degree);
        let cols = (0..n).map(|i| f(&Tensor::from_index(from_degree, i))).collect();
        LinOp { from_degree, to_degree, cols }
    }

    pub fn from_columns(from_degree: usize, to_degree: usize, cols: Vec<Tensor<ScalarQ>>) -> Self {
        assert_eq!(cols.len(), 1 << (2 * from_degree));
        LinOp { from_degree, to_degree, cols }
    }

    pub fn identity(k: usize) -> Self {
        LinOp::from_fn(k, k, |e| e.clone())
    }

    pub fn zero(from_degree: usize, to_degree: usize) -> Self {
        LinOp::from_fn(from_degree, to_degree, |_| Tensor::zero(to_degree))
    }

    pub fn column(&self, i: u32) -> &Tensor<ScalarQ> {
        &self.cols[i as usize]
    }

    pub fn columns(&self) -> &[Tensor<ScalarQ>] {
        &self.cols
    }

    pub fn apply<C: Coeff>(&self, t: &Tensor<C>) -> Tensor<C> {
        assert_eq!(t.degree(), self.from_degree, "operator degree mismatch");
        let mut out = Tensor::zero(self.to_degree);
        for (i, c) in t.iter() {
            for (j, v) in self.cols[i as usize].iter() {
                out.add_at(j, &c.scale(v));
            }
        }
        out
    }

    /// self after other.
    pub fn compose(&self, other: &LinOp) -> LinOp {
        assert_eq!(other.to_degree, self.from_degree);
        LinOp { from_degree: other.from_degree, to_degree: self.to_degree, cols: other.cols.iter().map(|c| self.apply(c)).collect() }
    }

    pub fn add_scaled(&mut self, other: &LinOp, f: &ScalarQ) {
        assert_eq!((self.from_degree, self.to_degree), (other.from_degree, other.to_degree));
        for (a, b) in self.cols.iter_mut().zip(&other.cols) {
            a.add_scaled_q(b, f);
        }
    }

    pub fn scaled(&self, f: &ScalarQ) -> LinOp {
        LinOp { from_degree: self.from_degree, to_degree: self.to_degree, cols: self.cols.iter().map(|c| c.scale_q(f)).collect() }
    }

    pub fn is_zero(&self) -> bool {
        self.cols.iter().all(|c| c.is_zero())
    }

    /// Kronecker product acting on the first k legs by self and the last l by other.
    pub fn kron(&self, other: &LinOp) -> LinOp {
        let (k, l) = (self.from_degree, other.from_degree);
        let shift = 2 * l;
        LinOp::from_fn(k + l, self.to_degree + other.to_degree, |e| {
            let (idx, _) = e.iter().next().unwrap();
            let left = self.column(idx >> shift);
            let right = other.column(idx & ((1 << shift) - 1));
            left.otimes(right)
        })
    }

    /// Entry (row j, column i): coefficient of basis j in the image of basis i.
    pub fn entry(&self, j: u32, i: u32) -> ScalarQ {
        self.cols[i as usize].get(j)
    }

    /// Dense row-major matrix M with M[j][i] = entry(j, i).
    pub fn to_dense(&self) -> Vec<Vec<ScalarQ>> {
        let rows = 1usize << (2 * self.to_degree);
        let mut m = vec![vec![ScalarQ::zero(); self.cols.len()]; rows];
        for (i, c) in self.cols.iter().enumerate() {
            for (j, v) in c.iter() {
                m[j as usize][i] = v.clone();
            }
        }
        m
    }
}
