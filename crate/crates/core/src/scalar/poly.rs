//! Dense univariate polynomials in `s` over the rationals.

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::cmp::Ordering;
use std::fmt;

/// Coefficients are stored little-endian with no trailing zeros; the zero
/// polynomial is the empty vector.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct Poly {
    c: Vec<BigRational>,
}

impl Poly {
    pub fn zero() -> Self {
        Poly { c: Vec::new() }
    }

    pub fn one() -> Self {
        Poly::constant(BigRational::one())
    }

    pub fn constant(v: BigRational) -> Self {
        Poly::from_coeffs(vec![v])
    }

    /// `v * s^k`
    pub fn monomial(v: BigRational, k: usize) -> Self {
        if v.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); k + 1];
        c[k] = v;
        Poly { c }
    }

    pub fn from_coeffs(mut c: Vec<BigRational>) -> Self {
        while c.last().is_some_and(|x| x.is_zero()) {
            c.pop();
        }
        Poly { c }
    }

    pub fn from_ints(c: &[i64]) -> Self {
        Poly::from_coeffs(c.iter().map(|&x| BigRational::from_integer(x.into())).collect())
    }

    pub fn coeffs(&self) -> &[BigRational] {
        &self.c
    }

    pub fn is_zero(&self) -> bool {
        self.c.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.c.len() == 1 && self.c[0].is_one()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.c.len().checked_sub(1)
    }

    pub fn lead(&self) -> Option<&BigRational> {
        self.c.last()
    }

    /// Largest k with s^k dividing the polynomial (0 for zero).
    pub fn valuation(&self) -> usize {
        self.c.iter().position(|x| !x.is_zero()).unwrap_or(0)
    }

    /// True when the polynomial is `c s^k` for some k.
    pub fn is_monomial(&self) -> bool {
        !self.is_zero() && self.c[..self.c.len() - 1].iter().all(|x| x.is_zero())
    }

    pub fn coeff(&self, k: usize) -> BigRational {
        self.c.get(k).cloned().unwrap_or_else(BigRational::zero)
    }

    pub fn shift_up(&self, k: usize) -> Poly {
        if self.is_zero() || k == 0 {
            return self.clone();
        }
        let mut c = vec![BigRational::zero(); k];
        c.extend(self.c.iter().cloned());
        Poly { c }
    }

    /// Divide by s^k; the caller guarantees exactness.
    pub fn shift_down(&self, k: usize) -> Poly {
        if k == 0 {
            return self.clone();
        }
        debug_assert!(self.c.iter().take(k).all(|x| x.is_zero()));
        Poly::from_coeffs(self.c.iter().skip(k).cloned().collect())
    }

    pub fn scale(&self, v: &BigRational) -> Poly {
        if v.is_zero() {
            return Poly::zero();
        }
        Poly { c: self.c.iter().map(|x| x * v).collect() }
    }

    pub fn neg(&self) -> Poly {
        Poly { c: self.c.iter().map(|x| -x).collect() }
    }

    pub fn add(&self, o: &Poly) -> Poly {
        let n = self.c.len().max(o.c.len());
        let mut c = Vec::with_capacity(n);
        for i in 0..n {
            c.push(match (self.c.get(i), o.c.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Poly::from_coeffs(c)
    }

    pub fn sub(&self, o: &Poly) -> Poly {
        self.add(&o.neg())
    }

    pub fn mul(&self, o: &Poly) -> Poly {
        if self.is_zero() || o.is_zero() {
            return Poly::zero();
        }
        let mut c = vec![BigRational::zero(); self.c.len() + o.c.len() - 1];
        for (i, a) in self.c.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in o.c.iter().enumerate() {
                if !b.is_zero() {
                    c[i + j] += a * b;
                }
            }
        }
        Poly::from_coeffs(c)
    }

    /// Euclidean division; panics on division by zero.
    pub fn div_rem(&self, d: &Poly) -> (Poly, Poly) {
        let dd = d.degree().expect("division by the zero polynomial");
        if self.degree().is_none_or(|n| n < dd) {
            return (Poly::zero(), self.clone());
        }
        let inv_lead = d.c[dd].recip();
        let mut r = self.c.clone();
        let mut qc = vec![BigRational::zero(); r.len() - dd];
        for k in (0..qc.len()).rev() {
            let t = &r[k + dd] * &inv_lead;
            if t.is_zero() {
                continue;
            }
            for (j, dj) in d.c.iter().enumerate() {
                r[k + j] -= &t * dj;
            }
            qc[k] = t;
        }
        r.truncate(dd);
        (Poly::from_coeffs(qc), Poly::from_coeffs(r))
    }

    /// Exact quotient; debug-asserts a zero remainder.
    pub fn div_exact(&self, d: &Poly) -> Poly {
        let (q, r) = self.div_rem(d);
        debug_assert!(r.is_zero(), "inexact polynomial division");
        q
    }

    pub fn monic(&self) -> Poly {
        match self.lead() {
            None => Poly::zero(),
            Some(l) if l.is_one() => self.clone(),
            Some(l) => self.scale(&l.recip()),
        }
    }

    /// Monic greatest common divisor (zero only if both inputs are zero).
    pub fn gcd(&self, o: &Poly) -> Poly {
        let (mut a, mut b) = (self.clone(), o.clone());
        if a.degree() < b.degree() {
            std::mem::swap(&mut a, &mut b);
        }
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn eval(&self, x: &BigRational) -> BigRational {
        let mut acc = BigRational::zero();
        for c in self.c.iter().rev() {
            acc = acc * x + c;
        }
        acc
    }

    /// Exact square root with positive leading coefficient, if one exists.
    pub fn sqrt(&self) -> Option<Poly> {
        let d = match self.degree() {
            None => return Some(Poly::zero()),
            Some(d) => d,
        };
        if d % 2 != 0 {
            return None;
        }
        let n = d / 2;
        let top = super::rational_sqrt(self.lead().unwrap())?;
        let mut r = vec![BigRational::zero(); n + 1];
        r[n] = top;
        let two_top = &r[n] * BigRational::from_integer(2.into());
        for k in (0..n).rev() {
            let mut acc = self.coeff(n + k);
            for i in (k + 1)..=n {
                let j = n + k - i;
                if j > k && j <= n {
                    acc -= &r[i] * &r[j];
                }
            }
            r[k] = acc / &two_top;
        }
        let root = Poly::from_coeffs(r);
        (root.mul(&root) == *self).then_some(root)
    }

    /// Rescale so that coefficients are coprime integers with positive
    /// leading coefficient; returns the factor that was divided out.
    pub fn primitive_part(&self) -> (BigRational, Poly) {
        if self.is_zero() {
            return (BigRational::one(), Poly::zero());
        }
        let mut den_lcm = BigInt::one();
        for c in &self.c {
            den_lcm = num_integer::lcm(den_lcm, c.denom().clone());
        }
        let mut g = BigInt::zero();
        for c in &self.c {
            let n = c.numer() * (&den_lcm / c.denom());
            g = num_integer::gcd(g, n);
        }
        let mut content = BigRational::new(g, den_lcm);
        if self.lead().unwrap().is_negative() {
            content = -content;
        }
        (content.clone(), self.scale(&content.recip()))
    }
}

impl PartialOrd for Poly {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Poly {
    fn cmp(&self, other: &Self) -> Ordering {
        self.c.len().cmp(&other.c.len()).then_with(|| {
            for (a, b) in self.c.iter().rev().zip(other.c.iter().rev()) {
                match a.cmp(b) {
                    Ordering::Equal => continue,
                    o => return o,
                }
            }
            Ordering::Equal
        })
    }
}

impl fmt::Debug for Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[")?;
        for (i, c) in self.c.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{c}")?;
        }
        write!(f, "]")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn gcd_of_shared_factor() {
        // (s-1)(s+2) and (s-1)(s-3)
        let a = Poly::from_ints(&[-2, 1, 1]);
        let b = Poly::from_ints(&[3, -4, 1]);
        assert_eq!(a.gcd(&b), Poly::from_ints(&[-1, 1]));
    }

    #[test]
    fn div_rem_roundtrip() {
        let a = Poly::from_ints(&[5, 0, -3, 2, 7]);
        let d = Poly::from_ints(&[1, 2, 3]);
        let (q, r) = a.div_rem(&d);
        assert_eq!(q.mul(&d).add(&r), a);
        assert!(r.degree() < d.degree());
    }

    #[test]
    fn primitive_part_normalizes_sign_and_content() {
        let p = Poly::from_coeffs(vec![BigRational::new(2.into(), 3.into()), BigRational::new((-4).into(), 3.into())]);
        let (c, pp) = p.primitive_part();
        assert_eq!(pp, Poly::from_ints(&[-1, 2]));
        assert_eq!(pp.scale(&c), p);
    }
}
