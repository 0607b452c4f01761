//! Antisymmetrizers A^(k) and shuffle operators B_{k,l}.

use super::linalg::rank_of;
use super::linop::LinOp;
use super::perm::{apply_word, lift_with, perm_word, permutations, shuffles};
use super::tensor::Tensor;
use crate::calculus::{Braiding, Direction};
use crate::scalar::ScalarQ;
use serde::Serialize;
use std::sync::OnceLock;

pub const MAX_DEGREE: usize = 5;

/// Signed sum of lifts of all permutations of k legs, each lifted through
/// its bubble-sort reduced word.
pub fn antisymmetrizer_by_sum(k: usize, braid: &Braiding) -> LinOp {
    let mut out = LinOp::zero(k, k);
    for p in permutations(k) {
        let w = perm_word(&p);
        let lift = lift_with(&w, k, braid).expect("reduced word in range");
        let sign = if w.len().is_multiple_of(2) { ScalarQ::one() } else { ScalarQ::from_int(-1) };
        out.add_scaled(&lift, &sign);
    }
    out
}

/// Coset factor C_k = sum_j (-1)^j sigma_k sigma_{k-1} ... sigma_{k-j+1} on k+1 legs.
pub fn coset_factor(k: usize, braid: &Braiding) -> LinOp {
    LinOp::from_fn(k + 1, k + 1, |e| {
        let mut out = Tensor::zero(k + 1);
        for j in 0..=k {
            let word: Vec<usize> = (0..j).map(|i| k - i).collect();
            let sign = if j % 2 == 0 { ScalarQ::one() } else { ScalarQ::from_int(-1) };
            out.add_scaled_q(&apply_word(e, &word, braid), &sign);
        }
        out
    })
}

/// A^(k+1) = (A^(k) (x) 1) C_k, starting from A^(1) = 1.
pub fn antisymmetrizer_by_cosets(k: usize, braid: &Braiding) -> LinOp {
    let mut a = LinOp::identity(k.min(1));
    if k == 0 {
        return a;
    }
    for j in 1..k {
        let lifted = a.kron(&LinOp::identity(1));
        a = lifted.compose(&coset_factor(j, braid));
    }
    a
}

/// Cached antisymmetrizer A^(k)_+- for 0 <= k <= 5.
pub fn antisymmetrizer(k: usize, direction: Direction) -> &'static LinOp {
    assert!(k <= MAX_DEGREE, "antisymmetrizer degree {k} > {MAX_DEGREE}");
    static CACHE: [[OnceLock<LinOp>; MAX_DEGREE + 1]; 2] = [const { [const { OnceLock::new() }; MAX_DEGREE + 1] }; 2];
    let d = dir_index(direction);
    CACHE[d][k].get_or_init(|| {
        if k <= 1 {
            LinOp::identity(k)
        } else {
            let prev = antisymmetrizer(k - 1, direction);
            prev.kron(&LinOp::identity(1)).compose(&coset_factor(k - 1, Braiding::get(direction)))
        }
    })
}

/// B_{k,l}: signed sum over the (k,l)-shuffles.
pub fn shuffle_operator_with(k: usize, l: usize, braid: &Braiding) -> LinOp {
    let mut out = LinOp::zero(k + l, k + l);
    for p in shuffles(k, l) {
        let w = perm_word(&p);
        let lift = lift_with(&w, k + l, braid).expect("reduced word in range");
        let sign = if w.len().is_multiple_of(2) { ScalarQ::one() } else { ScalarQ::from_int(-1) };
        out.add_scaled(&lift, &sign);
    }
    out
}

pub fn shuffle_operator(k: usize, l: usize, direction: Direction) -> &'static LinOp {
    assert!(k + l <= MAX_DEGREE);
    static CACHE: OnceLock<Vec<Vec<OnceLock<LinOp>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| (0..2 * (MAX_DEGREE + 1)).map(|_| (0..=MAX_DEGREE).map(|_| OnceLock::new()).collect()).collect());
    cache[dir_index(direction) * (MAX_DEGREE + 1) + k][l].get_or_init(|| shuffle_operator_with(k, l, Braiding::get(direction)))
}

fn dir_index(d: Direction) -> usize {
    match d {
        Direction::Plus => 0,
        Direction::Minus => 1,
    }
}

/// Exact rank of an operator (rank of its columns).
pub fn operator_rank(op: &LinOp) -> usize {
    rank_of(op.columns())
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct EigenEntry {
    pub eigenvalue: String,
    pub multiplicity: usize,
    #[serde(skip)]
    pub value: ScalarQ,
}

#[derive(Clone, Debug, Serialize, PartialEq)]
pub struct SpectralReport {
    pub k: usize,
    pub direction: Direction,
    pub rank: usize,
    pub kernel_dim: usize,
    pub eigenvalues: Vec<EigenEntry>,
    /// The listed eigenvectors span the range (the operator is
    /// diagonalizable with exactly these eigenvalues).
    pub complete: bool,
}

/// Spectral data of A^(k): rank, kernel, and the eigenvalues on the
/// canonical eigenbasis of the range.
pub fn spectral_report(k: usize, direction: Direction) -> SpectralReport {
    let op = antisymmetrizer(k, direction);
    let rank = operator_rank(op);
    let dim = 1usize << (2 * k);
    let mut eigenvalues: Vec<EigenEntry> = Vec::new();
    let mut covered = 0;
    if rank > 0 {
        let data = super::forms::degree_data(k, direction);
        for (b, lam) in data.basis.iter().zip(&data.eigenvalues) {
            if op.apply(b) != b.scale_q(lam) {
                continue;
            }
            covered += 1;
            match eigenvalues.iter_mut().find(|e| &e.value == lam) {
                Some(e) => e.multiplicity += 1,
                None => eigenvalues.push(EigenEntry { eigenvalue: lam.to_string(), multiplicity: 1, value: lam.clone() }),
            }
        }
        covered = covered.min(rank_of(&data.basis));
    }
    if rank < dim {
        eigenvalues.insert(0, EigenEntry { eigenvalue: "0".into(), multiplicity: dim - rank, value: ScalarQ::zero() });
    }
    SpectralReport { k, direction, rank, kernel_dim: dim - rank, eigenvalues, complete: covered == rank }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn degree_two_is_one_minus_sigma() {
        for d in [Direction::Plus, Direction::Minus] {
            let braid = Braiding::get(d);
            let mut expected = LinOp::identity(2);
            expected.add_scaled(&lift_with(&[1], 2, braid).unwrap(), &ScalarQ::from_int(-1));
            assert_eq!(antisymmetrizer(2, d), &expected);
        }
    }

    #[test]
    fn coset_route_matches_sum_degree_three() {
        let braid = Braiding::get(Direction::Plus);
        assert_eq!(antisymmetrizer_by_sum(3, braid), antisymmetrizer_by_cosets(3, braid));
    }

    #[test]
    fn ranks_low_degree() {
        assert_eq!(operator_rank(antisymmetrizer(2, Direction::Plus)), 6);
        assert_eq!(operator_rank(antisymmetrizer(3, Direction::Minus)), 4);
    }
}
