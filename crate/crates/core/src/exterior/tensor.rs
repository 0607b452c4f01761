use crate::calculus::Label;
use crate::scalar::{Coeff, ScalarQ};
use std::collections::BTreeMap;
use std::fmt;

/// Element of V^{(x)k}, stored sparsely by base-4 big-endian label index.
#[derive(Clone, PartialEq)]
pub struct Tensor<C: Coeff> {
    degree: usize,
    coords: BTreeMap<u32, C>,
}

impl<C: Coeff> Tensor<C> {
    pub fn zero(degree: usize) -> Self {
        Tensor { degree, coords: BTreeMap::new() }
    }

    pub fn scalar(c: C) -> Self {
        let mut t = Tensor::zero(0);
        t.add_at(0, &c);
        t
    }

    /// The basis tensor w_{a1} (x) ... (x) w_{ak}.
    pub fn basis(labels: &[Label]) -> Self {
        let mut t = Tensor::zero(labels.len());
        t.add_at(Self::index_of(labels), &C::one());
        t
    }

    pub fn from_index(degree: usize, idx: u32) -> Self {
        let mut t = Tensor::zero(degree);
        t.add_at(idx, &C::one());
        t
    }

    pub fn index_of(labels: &[Label]) -> u32 {
        labels.iter().fold(0, |acc, l| 4 * acc + l.index() as u32)
    }

    pub fn labels_of(idx: u32, degree: usize) -> Vec<Label> {
        let mut out = vec![Label::Minus; degree];
        let mut x = idx;
        for slot in out.iter_mut().rev() {
            *slot = Label::from_index((x % 4) as usize);
            x /= 4;
        }
        out
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn dim(&self) -> usize {
        1 << (2 * self.degree)
    }

    pub fn is_zero(&self) -> bool {
        self.coords.is_empty()
    }

    pub fn nnz(&self) -> usize {
        self.coords.len()
    }

    pub fn get(&self, idx: u32) -> C {
        self.coords.get(&idx).cloned().unwrap_or_else(C::zero)
    }

    pub fn coeff(&self, labels: &[Label]) -> C {
        self.get(Self::index_of(labels))
    }

    pub fn iter(&self) -> impl Iterator<Item = (u32, &C)> {
        self.coords.iter().map(|(k, v)| (*k, v))
    }

    pub fn add_at(&mut self, idx: u32, v: &C) {
        if v.is_zero() {
            return;
        }
        match self.coords.get_mut(&idx) {
            Some(c) => {
                let s = c.plus(v);
                if s.is_zero() {
                    self.coords.remove(&idx);
                } else {
                    *c = s;
                }
            }
            None => {
                self.coords.insert(idx, v.clone());
            }
        }
    }

    pub fn add_scaled(&mut self, other: &Tensor<C>, f: &C) {
        assert_eq!(self.degree, other.degree, "tensor degree mismatch");
        for (i, v) in other.iter() {
            self.add_at(i, &v.times(f));
        }
    }

    pub fn add_scaled_q(&mut self, other: &Tensor<C>, f: &ScalarQ) {
        assert_eq!(self.degree, other.degree, "tensor degree mismatch");
        if f.is_zero() {
            return;
        }
        for (i, v) in other.iter() {
            self.add_at(i, &v.scale(f));
        }
    }

    pub fn plus(&self, other: &Tensor<C>) -> Tensor<C> {
        let mut out = self.clone();
        out.add_scaled_q(other, &ScalarQ::one());
        out
    }

    pub fn minus(&self, other: &Tensor<C>) -> Tensor<C> {
        let mut out = self.clone();
        out.add_scaled_q(other, &ScalarQ::from_int(-1));
        out
    }

    pub fn scale_q(&self, f: &ScalarQ) -> Tensor<C> {
        let mut out = Tensor::zero(self.degree);
        out.add_scaled_q(self, f);
        out
    }

    pub fn scale(&self, f: &C) -> Tensor<C> {
        let mut out = Tensor::zero(self.degree);
        out.add_scaled(self, f);
        out
    }

    pub fn conj_coeffs(&self) -> Tensor<C> {
        let mut out = Tensor::zero(self.degree);
        for (i, v) in self.iter() {
            out.add_at(i, &v.conj());
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Tensor<D> {
        let mut out = Tensor::zero(self.degree);
        for (i, v) in self.iter() {
            out.add_at(i, &f(v));
        }
        out
    }

    /// Tensor product self (x) other.
    pub fn otimes(&self, other: &Tensor<C>) -> Tensor<C> {
        let shift = 1u32 << (2 * other.degree);
        let mut out = Tensor::zero(self.degree + other.degree);
        for (i, a) in self.iter() {
            for (j, b) in other.iter() {
                out.add_at(i * shift + j, &a.times(b));
            }
        }
        out
    }

    /// The scalar of a degree-0 tensor.
    pub fn scalar_value(&self) -> C {
        assert_eq!(self.degree, 0, "not a scalar");
        self.get(0)
    }
}

impl Tensor<ScalarQ> {
    pub fn lift<C: Coeff>(&self) -> Tensor<C> {
        self.map(C::from_scalar)
    }
}

impl<C: Coeff> fmt::Debug for Tensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> fmt::Display for Tensor<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        for (n, (i, v)) in self.iter().enumerate() {
            if n > 0 {
                write!(f, " + ")?;
            }
            let labels: Vec<&str> = Self::labels_of(i, self.degree).iter().map(|l| l.symbol()).collect();
            write!(f, "({v})[{}]", labels.join(""))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use Label::*;

    #[test]
    fn index_roundtrip() {
        let labels = [Z, Minus, Zero, Plus];
        let idx = Tensor::<ScalarQ>::index_of(&labels);
        assert_eq!(idx, 3 * 64 + 2 * 4 + 1);
        assert_eq!(Tensor::<ScalarQ>::labels_of(idx, 4), labels);
    }

    #[test]
    fn cancellation_removes_entries() {
        let mut t = Tensor::<ScalarQ>::basis(&[Minus, Zero]);
        t.add_at(Tensor::<ScalarQ>::index_of(&[Minus, Zero]), &ScalarQ::from_int(-1));
        assert!(t.is_zero());
    }

    #[test]
    fn otimes_concatenates() {
        let a = Tensor::<ScalarQ>::basis(&[Plus]);
        let b = Tensor::<ScalarQ>::basis(&[Zero, Z]);
        assert_eq!(a.otimes(&b), Tensor::basis(&[Plus, Zero, Z]));
    }
}
