//! The Laplacians Box^L and Box^R built from the tangent vectors, their
//! spectra on phi_{n,J,l}, and the relation with Delta_q.

use crate::calculus::Label;
use crate::qalgebra::{build_phi, phi_labels, right_tangent_op, tangent_op, AlgebraElement, QAlgebraError, Side, UqOp};
use crate::scalar::{qnum, EvalError, GaussRat, ScalarQ};
use num_rational::BigRational;
use serde::Serialize;

/// Default cap on the total degree of elements fed to the oracle.
pub const DEFAULT_DEGREE_CAP: u32 = 12;

/// The two metric branches. `Sigma` carries the signs
/// +(1+q^2) Lz Lz - 2(q^2-1) L0 Lz and collapses to 2 q alpha L0.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Branch {
    Sigma,
    Other,
}

impl Branch {
    pub fn parse(t: &str) -> Option<Branch> {
        match t {
            "sigma" => Some(Branch::Sigma),
            "other" => Some(Branch::Other),
            _ => None,
        }
    }

    fn sign(self) -> ScalarQ {
        match self {
            Branch::Sigma => ScalarQ::one(),
            Branch::Other => ScalarQ::from_int(-1),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum BoxSide {
    L,
    R,
}

impl BoxSide {
    pub fn parse(t: &str) -> Option<BoxSide> {
        match t {
            "L" | "l" => Some(BoxSide::L),
            "R" | "r" => Some(BoxSide::R),
            _ => None,
        }
    }
}

/// The operator inside the braces of Box^side, without alpha. Both sides
/// act through the left action; R_a = -S^-1(L_a).
pub fn box_operator(side: BoxSide, branch: Branch) -> UqOp {
    let (d, first, second): (fn(Label) -> UqOp, ScalarQ, ScalarQ) = match side {
        BoxSide::L => (tangent_op, ScalarQ::one(), ScalarQ::q_pow(2)),
        BoxSide::R => (right_tangent_op, ScalarQ::q_pow(2), ScalarQ::one()),
    };
    let (p, m, z, o) = (d(Label::Plus), d(Label::Minus), d(Label::Z), d(Label::Zero));
    let q2 = ScalarQ::q_pow(2);
    let s = branch.sign();
    p.compose(&m)
        .scale(&first)
        .plus(&m.compose(&p).scale(&second))
        .plus(&z.compose(&z).scale(&(&s * &(&ScalarQ::one() + &q2))))
        .minus(&o.compose(&z).scale(&(&s * &(&ScalarQ::from_int(2) * &(&q2 - &ScalarQ::one())))))
}

pub fn box_apply(side: BoxSide, branch: Branch, alpha: &ScalarQ, x: &AlgebraElement) -> Result<AlgebraElement, QAlgebraError> {
    box_apply_capped(side, branch, alpha, x, DEFAULT_DEGREE_CAP)
}

pub fn box_apply_capped(side: BoxSide, branch: Branch, alpha: &ScalarQ, x: &AlgebraElement, cap: u32) -> Result<AlgebraElement, QAlgebraError> {
    if x.degree() > cap {
        return Err(QAlgebraError::DegreeOverflow { degree: x.degree(), cap });
    }
    Ok(box_operator(side, branch).act(x, Side::Left).scale(alpha))
}

/// [J][J+1] for J = two_j/2.
pub fn casimir_value(two_j: i32) -> ScalarQ {
    &qnum(two_j as i64) * &qnum(two_j as i64 + 2)
}

/// Eigenvalue of L_z on charge n.
pub fn lz_value(n: i32) -> ScalarQ {
    &(&ScalarQ::q_pow(-n as i64) - &ScalarQ::one()) / &(&ScalarQ::q() - &ScalarQ::q_pow(-1))
}

/// Eigenvalue of R_z on charge n.
pub fn rz_value(n: i32) -> ScalarQ {
    -(&(&ScalarQ::q_pow(n as i64) - &ScalarQ::one()) / &(&ScalarQ::q() - &ScalarQ::q_pow(-1)))
}

/// Closed-form eigenvalue of Box^side on phi_{n,J,l}. On the sigma branch
/// both sides give 2 q alpha [J][J+1]; the other branch adds
/// -2(1+q^2) alpha d_z^2 + 4(q^2-1) alpha d_0 d_z with d the side's
/// eigenvalues (L_0 -> [J][J+1], R_0 -> -[J][J+1]).
pub fn box_eigenvalue(side: BoxSide, branch: Branch, alpha: &ScalarQ, n: i32, two_j: i32) -> ScalarQ {
    let cj = casimir_value(two_j);
    let base = &(&ScalarQ::from_int(2) * &ScalarQ::q()) * &cj;
    let total = match branch {
        Branch::Sigma => base,
        Branch::Other => {
            let (dz, d0) = match side {
                BoxSide::L => (lz_value(n), cj.clone()),
                BoxSide::R => (rz_value(n), -&cj),
            };
            let q2 = ScalarQ::q_pow(2);
            let zz = &(&ScalarQ::from_int(2) * &(&ScalarQ::one() + &q2)) * &dz.pow(2);
            let oz = &(&(&ScalarQ::from_int(4) * &(&q2 - &ScalarQ::one())) * &d0) * &dz;
            &(&base - &zz) + &oz
        }
    };
    &total * alpha
}

/// Eigenvalue of Box^side on phi_{n,J,l} computed by the oracle, if phi is
/// an eigenvector with the same eigenvalue for every l.
pub fn oracle_eigenvalue(side: BoxSide, branch: Branch, alpha: &ScalarQ, n: i32, two_j: i32) -> Result<Option<ScalarQ>, QAlgebraError> {
    let mut common: Option<ScalarQ> = None;
    for l in 0..=two_j {
        let x = build_phi(n, two_j, l)?;
        let Some(r) = box_apply(side, branch, alpha, &x)?.ratio_to(&x) else {
            return Ok(None);
        };
        match &common {
            Some(c) if *c != r => return Ok(None),
            Some(_) => {}
            None => common = Some(r),
        }
    }
    Ok(common)
}

/// Eigenvalue of Delta_q = Box^L + ((q-q^-1)/(q+q^-1))^2 L_0^2 with
/// alpha = 1/(q^2+1) on the sigma branch.
pub fn deltaq_eigenvalue(_n: i32, two_j: i32) -> ScalarQ {
    let cj = casimir_value(two_j);
    let q = ScalarQ::q();
    let first = &(&(&ScalarQ::from_int(2) * &q) * &cj) / &(&ScalarQ::q_pow(2) + &ScalarQ::one());
    let ratio = &(&q - &q.inv()) / &(&q + &q.inv());
    &first + &(&ratio.pow(2) * &cj.pow(2))
}

/// The same eigenvalue assembled through the oracle from Box^L and L_0^2.
pub fn deltaq_oracle(n: i32, two_j: i32) -> Result<Option<ScalarQ>, QAlgebraError> {
    let q = ScalarQ::q();
    let alpha = (&ScalarQ::q_pow(2) + &ScalarQ::one()).inv();
    let ratio = (&(&q - &q.inv()) / &(&q + &q.inv())).pow(2);
    let l0 = tangent_op(Label::Zero);
    let op = box_operator(BoxSide::L, Branch::Sigma).scale(&alpha).plus(&l0.compose(&l0).scale(&ratio));
    let mut common: Option<ScalarQ> = None;
    for l in 0..=two_j {
        let x = build_phi(n, two_j, l)?;
        let Some(r) = op.act(&x, Side::Left).ratio_to(&x) else {
            return Ok(None);
        };
        if common.as_ref().is_some_and(|c| *c != r) {
            return Ok(None);
        }
        common = Some(r);
    }
    Ok(common)
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumEntry {
    pub n: i32,
    /// J as "k" or "k/2".
    pub j: String,
    pub side: BoxSide,
    pub branch: Branch,
    pub alpha: String,
    pub eigenvalue: String,
    /// Exact value at the scan point.
    pub value: String,
    #[serde(skip)]
    pub exact: ScalarQ,
    #[serde(skip)]
    pub numeric: BigRational,
}

#[derive(Clone, Debug, Serialize)]
pub struct SpectrumScan {
    pub q: String,
    pub entries: Vec<SpectrumEntry>,
    pub min: String,
    pub max: String,
    pub has_negative: bool,
    pub has_positive: bool,
}

pub fn half_integer(two_j: i32) -> String {
    if two_j % 2 == 0 {
        (two_j / 2).to_string()
    } else {
        format!("{two_j}/2")
    }
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ScanError {
    #[error("alpha must be real and nonzero")]
    BadAlpha,
    #[error("q must lie in (0, 1)")]
    BadQ,
    #[error("evaluation failed: {0}")]
    Eval(#[from] EvalError),
    #[error("eigenvalue is not real at the scan point")]
    NotReal,
}

fn real_value(x: &ScalarQ, q0: &BigRational) -> Result<BigRational, ScanError> {
    let GaussRat { re, im } = x.eval_at(q0)?;
    if im != BigRational::from_integer(0.into()) {
        return Err(ScanError::NotReal);
    }
    Ok(re)
}

/// Exact closed-form eigenvalues over |n| <= n_max, 2J <= two_j_max.
pub fn scan_spectrum(side: BoxSide, branch: Branch, alpha: &ScalarQ, q0: &BigRational, n_max: i32, two_j_max: i32) -> Result<SpectrumScan, ScanError> {
    if alpha.is_zero() || !alpha.is_real() {
        return Err(ScanError::BadAlpha);
    }
    let zero = BigRational::from_integer(0.into());
    if *q0 <= zero || *q0 >= BigRational::from_integer(1.into()) {
        return Err(ScanError::BadQ);
    }
    let mut entries = Vec::new();
    for (n, two_j) in phi_labels(two_j_max, n_max) {
        let exact = box_eigenvalue(side, branch, alpha, n, two_j);
        let numeric = real_value(&exact, q0)?;
        entries.push(SpectrumEntry {
            n,
            j: half_integer(two_j),
            side,
            branch,
            alpha: alpha.to_string(),
            eigenvalue: exact.to_string(),
            value: numeric.to_string(),
            exact,
            numeric,
        });
    }
    let min = entries.iter().map(|e| e.numeric.clone()).min().unwrap_or_else(|| zero.clone());
    let max = entries.iter().map(|e| e.numeric.clone()).max().unwrap_or_else(|| zero.clone());
    Ok(SpectrumScan { q: q0.to_string(), has_negative: min < zero, has_positive: max > zero, min: min.to_string(), max: max.to_string(), entries })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rat(n: i64, d: i64) -> BigRational {
        BigRational::new(n.into(), d.into())
    }

    #[test]
    fn sigma_branch_is_twice_q_alpha_l0() {
        let alpha = ScalarQ::frac(3, 2);
        for (n, two_j) in phi_labels(3, 3) {
            for side in [BoxSide::L, BoxSide::R] {
                let got = oracle_eigenvalue(side, Branch::Sigma, &alpha, n, two_j).unwrap();
                assert_eq!(got, Some(&(&(&ScalarQ::from_int(2) * &ScalarQ::q()) * &casimir_value(two_j)) * &alpha), "{side:?} {n} {two_j}");
            }
        }
    }

    #[test]
    fn other_branch_closed_form_matches_oracle() {
        let alpha = ScalarQ::one();
        for (n, two_j) in phi_labels(3, 3) {
            for side in [BoxSide::L, BoxSide::R] {
                let got = oracle_eigenvalue(side, Branch::Other, &alpha, n, two_j).unwrap();
                assert_eq!(got, Some(box_eigenvalue(side, Branch::Other, &alpha, n, two_j)), "{side:?} {n} {two_j}");
            }
        }
    }

    #[test]
    fn box_of_one_vanishes() {
        for b in [Branch::Sigma, Branch::Other] {
            assert!(box_apply(BoxSide::L, b, &ScalarQ::one(), &AlgebraElement::one()).unwrap().is_zero());
        }
        assert!(box_apply_capped(BoxSide::L, Branch::Sigma, &ScalarQ::one(), &AlgebraElement::c().pow(3), 2).is_err());
    }

    #[test]
    fn deltaq() {
        assert!(deltaq_eigenvalue(0, 0).is_zero());
        for (n, two_j) in phi_labels(2, 2) {
            assert_eq!(deltaq_oracle(n, two_j).unwrap(), Some(deltaq_eigenvalue(n, two_j)));
            let j = BigRational::new(two_j.into(), 2.into());
            let lim = deltaq_eigenvalue(n, two_j).classical_limit().unwrap();
            assert_eq!(lim, GaussRat::from_rational(&j * &(&j + BigRational::from_integer(1.into()))));
        }
    }

    #[test]
    fn scans() {
        let q0 = rat(1, 2);
        let other = scan_spectrum(BoxSide::L, Branch::Other, &ScalarQ::one(), &q0, 8, 8).unwrap();
        assert!(other.has_negative && other.has_positive);
        let sigma = scan_spectrum(BoxSide::L, Branch::Sigma, &ScalarQ::one(), &q0, 8, 8).unwrap();
        assert!(!sigma.has_negative);
        assert!(scan_spectrum(BoxSide::L, Branch::Sigma, &ScalarQ::zero(), &q0, 1, 1).is_err());
    }
}
