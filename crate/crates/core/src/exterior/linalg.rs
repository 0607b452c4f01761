//! Exact linear algebra over Q(i)(s).

use super::tensor::Tensor;
use crate::scalar::{Coeff, ScalarQ};

/// Rank of a set of vectors by Gaussian elimination (sparse rows).
pub fn rank_of(vectors: &[Tensor<ScalarQ>]) -> usize {
    // Each pivot row is stored normalized at its pivot index.
    let mut pivots: Vec<(u32, Tensor<ScalarQ>)> = Vec::new();
    for v in vectors {
        let mut r = v.clone();
        for (p, row) in &pivots {
            let c = r.get(*p);
            if !c.is_zero() {
                r.add_scaled_q(row, &-c);
            }
        }
        let first = r.iter().next().map(|(i, c)| (i, c.clone()));
        if let Some((p, lead)) = first {
            let row = r.scale_q(&lead.inv());
            for (_, other) in pivots.iter_mut() {
                let c = other.get(p);
                if !c.is_zero() {
                    other.add_scaled_q(&row, &-c);
                }
            }
            pivots.push((p, row));
        }
    }
    pivots.len()
}

/// Solve for coordinates of `t` in the span of `basis`, exactly.
/// Returns `None` when `t` is not in the span.
pub struct SpanSolver {
    basis: Vec<Tensor<ScalarQ>>,
    pivots: Vec<u32>,
    inverse: Vec<Vec<ScalarQ>>,
}

impl SpanSolver {
    /// Panics if the basis vectors are linearly dependent.
    pub fn new(basis: Vec<Tensor<ScalarQ>>) -> Self {
        let n = basis.len();
        let mut pivots: Vec<u32> = Vec::new();
        let mut reduced: Vec<Tensor<ScalarQ>> = Vec::new();
        for v in &basis {
            let mut r = v.clone();
            for (p, row) in pivots.iter().zip(&reduced) {
                let c = r.get(*p);
                if !c.is_zero() {
                    r.add_scaled_q(row, &-(&c / &row.get(*p)));
                }
            }
            let (p, _) = r.iter().next().expect("basis vectors are linearly dependent");
            pivots.push(p);
            reduced.push(r);
        }
        let m: Vec<Vec<ScalarQ>> = (0..n).map(|i| pivots.iter().map(|&p| basis[i].get(p)).collect()).collect();
        let inverse = invert(&m).expect("pivot submatrix is singular");
        SpanSolver { basis, pivots, inverse }
    }

    pub fn basis(&self) -> &[Tensor<ScalarQ>] {
        &self.basis
    }

    pub fn coordinates<C: Coeff>(&self, t: &Tensor<C>) -> Option<Vec<C>> {
        let n = self.basis.len();
        let rhs: Vec<C> = self.pivots.iter().map(|&p| t.get(p)).collect();
        // c_i sum_j: t[p_j] = sum_i c_i basis_i[p_j], so c = rhs * inverse.
        let coords: Vec<C> = (0..n)
            .map(|i| {
                let mut acc = C::zero();
                for (j, r) in rhs.iter().enumerate() {
                    let w = &self.inverse[j][i];
                    if !w.is_zero() && !r.is_zero() {
                        acc = acc.plus(&r.scale(w));
                    }
                }
                acc
            })
            .collect();
        let mut residual = t.clone();
        for (c, b) in coords.iter().zip(&self.basis) {
            residual.add_scaled(&b.lift(), &c.negate());
        }
        residual.is_zero().then_some(coords)
    }

    pub fn combine<C: Coeff>(&self, coords: &[C]) -> Tensor<C> {
        let mut out = Tensor::zero(self.basis[0].degree());
        for (c, b) in coords.iter().zip(&self.basis) {
            out.add_scaled(&b.lift(), c);
        }
        out
    }
}

/// Inverse of a small square matrix by Gauss-Jordan.
pub fn invert(m: &[Vec<ScalarQ>]) -> Option<Vec<Vec<ScalarQ>>> {
    let n = m.len();
    let mut a: Vec<Vec<ScalarQ>> = m
        .iter()
        .enumerate()
        .map(|(i, row)| {
            let mut r = row.clone();
            r.extend((0..n).map(|j| if i == j { ScalarQ::one() } else { ScalarQ::zero() }));
            r
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&r| !a[r][col].is_zero())?;
        a.swap(col, piv);
        let inv = a[col][col].inv();
        for x in a[col].iter_mut() {
            *x = &*x * &inv;
        }
        for r in 0..n {
            if r != col && !a[r][col].is_zero() {
                let f = a[r][col].clone();
                let pivot_row = a[col].clone();
                for (x, p) in a[r].iter_mut().zip(&pivot_row) {
                    *x = &*x - &(&f * p);
                }
            }
        }
    }
    Some(a.into_iter().map(|r| r[n..].to_vec()).collect())
}

/// Determinant of a small square matrix over any coefficient ring
/// (cofactor expansion; used for 4x4 metrics).
pub fn det<C: Coeff>(m: &[Vec<C>]) -> C {
    let n = m.len();
    if n == 0 {
        return C::one();
    }
    if n == 1 {
        return m[0][0].clone();
    }
    let mut acc = C::zero();
    for j in 0..n {
        if m[0][j].is_zero() {
            continue;
        }
        let minor: Vec<Vec<C>> = m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, v)| v.clone()).collect()).collect();
        let term = m[0][j].times(&det(&minor));
        acc = if j % 2 == 0 { acc.plus(&term) } else { acc.minus(&term) };
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Label::*;

    #[test]
    fn rank_and_span() {
        let a = Tensor::<ScalarQ>::basis(&[Minus, Zero]);
        let b = Tensor::<ScalarQ>::basis(&[Zero, Minus]).scale_q(&ScalarQ::q());
        let c = a.plus(&b);
        assert_eq!(rank_of(&[a.clone(), b.clone(), c.clone()]), 2);
        let s = SpanSolver::new(vec![a.clone(), c.clone()]);
        let coords = s.coordinates(&b).unwrap();
        assert_eq!(coords, vec![ScalarQ::from_int(-1), ScalarQ::one()]);
        assert!(s.coordinates(&Tensor::<ScalarQ>::basis(&[Z, Z])).is_none());
    }

    #[test]
    fn inverse_roundtrip() {
        let m = vec![vec![ScalarQ::q(), ScalarQ::one()], vec![ScalarQ::one(), ScalarQ::zero()]];
        let inv = invert(&m).unwrap();
        assert_eq!(inv, vec![vec![ScalarQ::zero(), ScalarQ::one()], vec![ScalarQ::one(), -ScalarQ::q()]]);
    }
}
