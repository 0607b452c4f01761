//! Permutations, reduced words and their braided lifts.

use super::linop::LinOp;
use super::tensor::Tensor;
use crate::calculus::{Braiding, Direction};
use crate::scalar::Coeff;

/// All permutations of 0..k (as image tuples) in lexicographic order.
pub fn permutations(k: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for i in 0..used.len() {
            if !used[i] {
                used[i] = true;
                prefix.push(i);
                rec(prefix, used, out);
                prefix.pop();
                used[i] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; k], &mut out);
    out
}

/// Reduced word of adjacent transpositions (indices 1..k-1) from bubble sort.
/// The word is read as an operator product, rightmost factor applied first.
pub fn perm_word(p: &[usize]) -> Vec<usize> {
    let mut p = p.to_vec();
    let mut w = Vec::new();
    let mut changed = true;
    while changed {
        changed = false;
        for i in 0..p.len().saturating_sub(1) {
            if p[i] > p[i + 1] {
                p.swap(i, i + 1);
                w.push(i + 1);
                changed = true;
            }
        }
    }
    w.reverse();
    w
}

/// A second reduced word, built by selection sort, used to test that lifts
/// do not depend on the chosen decomposition.
pub fn perm_word_alt(p: &[usize]) -> Vec<usize> {
    let mut p = p.to_vec();
    let mut w = Vec::new();
    let n = p.len();
    for target in (0..n).rev() {
        let pos = p.iter().position(|&x| x == target).unwrap();
        for i in pos..target {
            p.swap(i, i + 1);
            w.push(i + 1);
        }
    }
    w.reverse();
    w
}

/// The permutation obtained by composing transpositions of the word.
pub fn word_permutation(word: &[usize], k: usize) -> Vec<usize> {
    let mut p: Vec<usize> = (0..k).collect();
    for &j in word {
        p.swap(j - 1, j);
    }
    p
}

pub fn sign_of(p: &[usize]) -> i32 {
    if perm_word(p).len().is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// (k,l) shuffles in the form used by the factorization
/// A^(k+l) = (A^(k) (x) A^(l)) B_{k,l}: permutations whose inverse is
/// increasing on the first k and on the last l positions.
pub fn shuffles(k: usize, l: usize) -> Vec<Vec<usize>> {
    permutations(k + l)
        .into_iter()
        .filter(|p| {
            let mut inv = vec![0; p.len()];
            for (i, &x) in p.iter().enumerate() {
                inv[x] = i;
            }
            inv[..k].windows(2).all(|w| w[0] < w[1]) && inv[k..].windows(2).all(|w| w[0] < w[1])
        })
        .collect()
}

/// Apply sigma on legs (j, j+1) (1-based j) of a tensor.
pub fn apply_sigma<C: Coeff>(t: &Tensor<C>, j: usize, braid: &Braiding) -> Tensor<C> {
    let k = t.degree();
    assert!(j >= 1 && j < k, "sigma index {j} out of range for degree {k}");
    let shift = 2 * (k - j - 1);
    let mut out = Tensor::zero(k);
    for (idx, c) in t.iter() {
        let pair = ((idx >> shift) & 15) as usize;
        let rest = idx & !(15 << shift);
        for (to, v) in braid.image(pair) {
            out.add_at(rest | ((*to as u32) << shift), &c.scale(v));
        }
    }
    out
}

/// Apply a word of sigma_j factors, rightmost first.
pub fn apply_word<C: Coeff>(t: &Tensor<C>, word: &[usize], braid: &Braiding) -> Tensor<C> {
    let mut v = t.clone();
    for &j in word.iter().rev() {
        v = apply_sigma(&v, j, braid);
    }
    v
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("transposition index {index} out of range 1..{k}")]
pub struct WordError {
    pub index: usize,
    pub k: usize,
}

/// Matrix of the lift of a word on V^{(x)k}.
pub fn lift_permutation(word: &[usize], k: usize, direction: Direction) -> Result<LinOp, WordError> {
    lift_with(word, k, Braiding::get(direction))
}

pub fn lift_with(word: &[usize], k: usize, braid: &Braiding) -> Result<LinOp, WordError> {
    if let Some(&index) = word.iter().find(|&&j| j == 0 || j >= k) {
        return Err(WordError { index, k });
    }
    Ok(LinOp::from_fn(k, k, |e| apply_word(e, word, braid)))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn words_reproduce_permutations() {
        for k in 1..=5 {
            for p in permutations(k) {
                assert_eq!(word_permutation(&perm_word(&p), k), p);
                assert_eq!(word_permutation(&perm_word_alt(&p), k), p);
                assert_eq!(perm_word(&p).len(), perm_word_alt(&p).len());
            }
        }
    }

    #[test]
    fn shuffle_counts() {
        assert_eq!(shuffles(1, 3).len(), 4);
        assert_eq!(shuffles(2, 2).len(), 6);
        assert_eq!(shuffles(0, 4).len(), 1);
        let words: Vec<Vec<usize>> = shuffles(2, 2).iter().map(|p| perm_word(p)).collect();
        let mut expected = vec![vec![], vec![2], vec![2, 3], vec![2, 1], vec![2, 3, 1], vec![2, 1, 3, 2]];
        let mut got = words.clone();
        expected.sort();
        got.sort();
        assert_eq!(got, expected);
    }

    #[test]
    fn out_of_range_word() {
        assert!(lift_permutation(&[3], 3, Direction::Plus).is_err());
        assert!(lift_permutation(&[0], 3, Direction::Plus).is_err());
    }
}
