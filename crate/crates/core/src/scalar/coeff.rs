use super::ScalarQ;
use std::fmt;

/// Coefficient ring for tensors: a commutative *-algebra over Q(i)(s).
///
/// Implemented by [`ScalarQ`] itself and by the symbolic parameter
/// polynomials used for contractions.
pub trait Coeff: Clone + PartialEq + fmt::Debug + fmt::Display + Send + Sync {
    fn zero() -> Self;
    fn one() -> Self;
    fn is_zero(&self) -> bool;
    fn plus(&self, o: &Self) -> Self;
    fn times(&self, o: &Self) -> Self;
    fn negate(&self) -> Self;
    fn conj(&self) -> Self;
    fn from_scalar(x: &ScalarQ) -> Self;
    fn scale(&self, x: &ScalarQ) -> Self;

    fn minus(&self, o: &Self) -> Self {
        self.plus(&o.negate())
    }
}

impl Coeff for ScalarQ {
    fn zero() -> Self {
        ScalarQ::zero()
    }
    fn one() -> Self {
        ScalarQ::one()
    }
    fn is_zero(&self) -> bool {
        ScalarQ::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self + o
    }
    fn times(&self, o: &Self) -> Self {
        self * o
    }
    fn negate(&self) -> Self {
        -self
    }
    fn conj(&self) -> Self {
        ScalarQ::conj(self)
    }
    fn from_scalar(x: &ScalarQ) -> Self {
        x.clone()
    }
    fn scale(&self, x: &ScalarQ) -> Self {
        self * x
    }
}
