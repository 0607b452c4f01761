//! The coefficient field Q(i)(s) with q = s^2.
//!
//! Every scalar in the engine is a [`ScalarQ`]: a numerator with Gaussian
//! rational coefficients over a monic rational denominator, kept in lowest
//! terms so that structural equality is field equality.

mod coeff;
mod parse;
pub mod poly;

pub use coeff::Coeff;
pub use parse::{parse_scalar, ParseError};
pub use poly::Poly;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ScalarQ {
    re: Poly,
    im: Poly,
    den: Poly,
}

/// An exact Gaussian rational, the result of evaluating a scalar at a point.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct GaussRat {
    pub re: BigRational,
    pub im: BigRational,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum EvalError {
    #[error("pole at the evaluation point")]
    Pole,
    #[error("q = {0} is not a rational square and the value involves odd powers of s")]
    NeedsSqrt(String),
    #[error("evaluation point must be positive")]
    NonPositive,
}

fn rat(n: i64) -> BigRational {
    BigRational::from_integer(n.into())
}

impl ScalarQ {
    pub fn zero() -> Self {
        ScalarQ { re: Poly::zero(), im: Poly::zero(), den: Poly::one() }
    }

    pub fn one() -> Self {
        ScalarQ::from_int(1)
    }

    pub fn from_int(n: i64) -> Self {
        ScalarQ::from_rational(rat(n))
    }

    pub fn from_rational(v: BigRational) -> Self {
        ScalarQ { re: Poly::constant(v), im: Poly::zero(), den: Poly::one() }
    }

    pub fn frac(n: i64, d: i64) -> Self {
        ScalarQ::from_rational(BigRational::new(n.into(), d.into()))
    }

    pub fn i() -> Self {
        ScalarQ { re: Poly::zero(), im: Poly::one(), den: Poly::one() }
    }

    pub fn s() -> Self {
        ScalarQ::s_pow(1)
    }

    pub fn q() -> Self {
        ScalarQ::s_pow(2)
    }

    /// s^k for any integer k.
    pub fn s_pow(k: i64) -> Self {
        if k >= 0 {
            ScalarQ { re: Poly::monomial(rat(1), k as usize), im: Poly::zero(), den: Poly::one() }
        } else {
            ScalarQ { re: Poly::one(), im: Poly::zero(), den: Poly::monomial(rat(1), (-k) as usize) }
        }
    }

    /// q^k = s^(2k).
    pub fn q_pow(k: i64) -> Self {
        ScalarQ::s_pow(2 * k)
    }

    /// Build from a numerator (real and imaginary parts) and a nonzero
    /// denominator, normalizing to lowest terms.
    pub fn from_parts(re: Poly, im: Poly, den: Poly) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut x = ScalarQ { re, im, den };
        x.normalize();
        x
    }

    pub fn numerator_re(&self) -> &Poly {
        &self.re
    }

    pub fn numerator_im(&self) -> &Poly {
        &self.im
    }

    pub fn denominator(&self) -> &Poly {
        &self.den
    }

    fn normalize(&mut self) {
        if self.re.is_zero() && self.im.is_zero() {
            self.den = Poly::one();
            return;
        }
        if self.den.is_monomial() {
            let k = self.den.degree().unwrap();
            let mut v = k;
            if !self.re.is_zero() {
                v = v.min(self.re.valuation());
            }
            if !self.im.is_zero() {
                v = v.min(self.im.valuation());
            }
            let lead = self.den.lead().unwrap().clone();
            self.re = self.re.shift_down(v);
            self.im = self.im.shift_down(v);
            self.den = Poly::monomial(rat(1), k - v);
            if !lead.is_one() {
                let inv = lead.recip();
                self.re = self.re.scale(&inv);
                self.im = self.im.scale(&inv);
            }
            return;
        }
        let g = self.den.gcd(&self.re).gcd(&self.im);
        if !g.is_one() {
            self.re = self.re.div_exact(&g);
            self.im = self.im.div_exact(&g);
            self.den = self.den.div_exact(&g);
        }
        let lead = self.den.lead().unwrap().clone();
        if !lead.is_one() {
            let inv = lead.recip();
            self.re = self.re.scale(&inv);
            self.im = self.im.scale(&inv);
            self.den = self.den.scale(&inv);
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.im.is_zero() && self.re.is_one() && self.den.is_one()
    }

    /// Fixed by conjugation.
    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    /// Denominator is a power of s (a Laurent polynomial in s).
    pub fn is_laurent(&self) -> bool {
        self.den.is_monomial()
    }

    pub fn conj(&self) -> Self {
        ScalarQ { re: self.re.clone(), im: self.im.neg(), den: self.den.clone() }
    }

    pub fn real_part(&self) -> Self {
        ScalarQ::from_parts(self.re.clone(), Poly::zero(), self.den.clone())
    }

    pub fn imag_part(&self) -> Self {
        ScalarQ::from_parts(self.im.clone(), Poly::zero(), self.den.clone())
    }

    pub fn inv(&self) -> Self {
        assert!(!self.is_zero(), "inverse of zero");
        if self.im.is_zero() {
            return ScalarQ::from_parts(self.den.clone(), Poly::zero(), self.re.clone());
        }
        // d / (re + i im) = d (re - i im) / (re^2 + im^2)
        let norm = self.re.mul(&self.re).add(&self.im.mul(&self.im));
        ScalarQ::from_parts(self.den.mul(&self.re), self.den.mul(&self.im).neg(), norm)
    }

    pub fn pow(&self, k: i64) -> Self {
        let base = if k < 0 { self.inv() } else { self.clone() };
        let mut e = k.unsigned_abs();
        let mut acc = ScalarQ::one();
        let mut b = base;
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &b;
            }
            e >>= 1;
            if e > 0 {
                b = &b * &b;
            }
        }
        acc
    }

    /// The substitution s -> 1/s, i.e. q -> 1/q.
    pub fn invert_q(&self) -> Self {
        let n = [self.re.degree(), self.im.degree(), self.den.degree()].into_iter().flatten().max().unwrap_or(0);
        let flip = |p: &Poly| {
            if p.is_zero() {
                return Poly::zero();
            }
            let mut c = vec![BigRational::zero(); n + 1];
            for (k, v) in p.coeffs().iter().enumerate() {
                c[n - k] = v.clone();
            }
            Poly::from_coeffs(c)
        };
        ScalarQ::from_parts(flip(&self.re), flip(&self.im), flip(&self.den))
    }

    /// True when only even powers of s occur, i.e. the value lies in Q(i)(q).
    pub fn is_even_in_s(&self) -> bool {
        let even = |p: &Poly| p.coeffs().iter().enumerate().all(|(k, c)| k % 2 == 0 || c.is_zero());
        even(&self.re) && even(&self.im) && even(&self.den)
    }

    /// Exact substitution s = s0.
    pub fn eval_at_s(&self, s0: &BigRational) -> Result<GaussRat, EvalError> {
        let d = self.den.eval(s0);
        if d.is_zero() {
            return Err(EvalError::Pole);
        }
        Ok(GaussRat { re: self.re.eval(s0) / &d, im: self.im.eval(s0) / &d })
    }

    /// Exact substitution q = q0. Uses s0 = sqrt(q0) when q0 is a rational
    /// square, and otherwise evaluates in q when the value only involves
    /// even powers of s.
    pub fn eval_at(&self, q0: &BigRational) -> Result<GaussRat, EvalError> {
        if !q0.is_positive() {
            return Err(EvalError::NonPositive);
        }
        if let Some(s0) = rational_sqrt(q0) {
            return self.eval_at_s(&s0);
        }
        if !self.is_even_in_s() {
            return Err(EvalError::NeedsSqrt(q0.to_string()));
        }
        let half = |p: &Poly| Poly::from_coeffs(p.coeffs().iter().step_by(2).cloned().collect());
        let d = half(&self.den).eval(q0);
        if d.is_zero() {
            return Err(EvalError::Pole);
        }
        Ok(GaussRat { re: half(&self.re).eval(q0) / &d, im: half(&self.im).eval(q0) / &d })
    }

    /// Value at q = 1, the formal classical limit.
    pub fn classical_limit(&self) -> Result<GaussRat, EvalError> {
        self.eval_at_s(&BigRational::one())
    }

    /// Sign of the real value at a sample point; `None` if not real or zero.
    pub fn sign_at(&self, q0: &BigRational) -> Option<i32> {
        let v = self.eval_at(q0).ok()?;
        if !v.im.is_zero() || v.re.is_zero() {
            return None;
        }
        Some(if v.re.is_positive() { 1 } else { -1 })
    }

    /// Exact square root of a real scalar, normalized so that the leading
    /// coefficient of the numerator is positive.
    pub fn sqrt(&self) -> Option<ScalarQ> {
        if !self.im.is_zero() {
            return None;
        }
        let re = self.re.sqrt()?;
        let den = self.den.sqrt()?;
        Some(ScalarQ::from_parts(re, Poly::zero(), den))
    }

    /// If the value is a rational constant, return it.
    pub fn as_rational(&self) -> Option<BigRational> {
        if self.im.is_zero() && self.den.is_one() && self.re.degree().unwrap_or(0) == 0 {
            Some(self.re.coeff(0))
        } else {
            None
        }
    }
}

/// Exact square root of a nonnegative rational, if it exists.
pub fn rational_sqrt(x: &BigRational) -> Option<BigRational> {
    if x.is_negative() {
        return None;
    }
    let root = |n: &BigInt| {
        let r = n.sqrt();
        (&r * &r == *n).then_some(r)
    };
    Some(BigRational::new(root(x.numer())?, root(x.denom())?))
}

/// The q-number [u] for u = two_u / 2.
pub fn qnum(two_u: i64) -> ScalarQ {
    let num = &ScalarQ::s_pow(two_u) - &ScalarQ::s_pow(-two_u);
    let den = &ScalarQ::q() - &ScalarQ::q_pow(-1);
    &num / &den
}

impl Default for ScalarQ {
    fn default() -> Self {
        ScalarQ::zero()
    }
}

impl<'a> Add<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn add(self, o: &ScalarQ) -> ScalarQ {
        if self.is_zero() {
            return o.clone();
        }
        if o.is_zero() {
            return self.clone();
        }
        if self.den == o.den {
            return ScalarQ::from_parts(self.re.add(&o.re), self.im.add(&o.im), self.den.clone());
        }
        if self.den.is_monomial() && o.den.is_monomial() {
            let (a, b) = (self.den.degree().unwrap(), o.den.degree().unwrap());
            let k = a.max(b);
            let re = self.re.shift_up(k - a).add(&o.re.shift_up(k - b));
            let im = self.im.shift_up(k - a).add(&o.im.shift_up(k - b));
            return ScalarQ::from_parts(re, im, Poly::monomial(rat(1), k));
        }
        let g = self.den.gcd(&o.den);
        let a = self.den.div_exact(&g);
        let b = o.den.div_exact(&g);
        let re = self.re.mul(&b).add(&o.re.mul(&a));
        let im = self.im.mul(&b).add(&o.im.mul(&a));
        ScalarQ::from_parts(re, im, a.mul(&o.den))
    }
}

impl<'a> Sub<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn sub(self, o: &ScalarQ) -> ScalarQ {
        self + &(-o)
    }
}

impl Neg for &ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        ScalarQ { re: self.re.neg(), im: self.im.neg(), den: self.den.clone() }
    }
}

impl Neg for ScalarQ {
    type Output = ScalarQ;
    fn neg(self) -> ScalarQ {
        -&self
    }
}

impl<'a> Mul<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    fn mul(self, o: &ScalarQ) -> ScalarQ {
        if self.is_zero() || o.is_zero() {
            return ScalarQ::zero();
        }
        let (re, im) = if self.im.is_zero() && o.im.is_zero() {
            (self.re.mul(&o.re), Poly::zero())
        } else {
            (self.re.mul(&o.re).sub(&self.im.mul(&o.im)), self.re.mul(&o.im).add(&self.im.mul(&o.re)))
        };
        ScalarQ::from_parts(re, im, self.den.mul(&o.den))
    }
}

impl<'a> Div<&'a ScalarQ> for &'a ScalarQ {
    type Output = ScalarQ;
    #[allow(clippy::suspicious_arithmetic_impl)]
    fn div(self, o: &ScalarQ) -> ScalarQ {
        self * &o.inv()
    }
}

macro_rules! owned_ops {
    ($($tr:ident $m:ident),*) => {$(
        impl $tr<ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, o: ScalarQ) -> ScalarQ { (&self).$m(&o) }
        }
        impl<'a> $tr<&'a ScalarQ> for ScalarQ {
            type Output = ScalarQ;
            fn $m(self, o: &ScalarQ) -> ScalarQ { (&self).$m(o) }
        }
    )*};
}
owned_ops!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for ScalarQ {
    fn from(n: i64) -> Self {
        ScalarQ::from_int(n)
    }
}

// ---- canonical printing -------------------------------------------------

fn fmt_rational(v: &BigRational) -> String {
    if v.is_integer() {
        v.numer().to_string()
    } else {
        format!("{}/{}", v.numer(), v.denom())
    }
}

/// One signed term `c * [i*] var^e`; `first` suppresses a leading " + ".
fn push_term(out: &mut String, c: &BigRational, imag: bool, var: &str, e: i64) {
    let neg = c.is_negative();
    let a = c.abs();
    if out.is_empty() {
        if neg {
            out.push('-');
        }
    } else {
        out.push_str(if neg { " - " } else { " + " });
    }
    let mut parts: Vec<String> = Vec::new();
    if !a.is_one() || (!imag && e == 0) {
        parts.push(fmt_rational(&a));
    }
    if imag {
        parts.push("i".into());
    }
    match e {
        0 => {}
        1 => parts.push(var.into()),
        _ => parts.push(format!("{var}^{e}")),
    }
    out.push_str(&parts.join("*"));
}

/// Print re + i*im as a Laurent polynomial: coefficient of s^k at exponent
/// k - shift.
fn fmt_laurent(re: &Poly, im: &Poly, shift: i64, in_q: bool) -> String {
    let n = re.coeffs().len().max(im.coeffs().len());
    let mut out = String::new();
    let (var, div) = if in_q { ("q", 2) } else { ("s", 1) };
    for k in (0..n).rev() {
        let e = (k as i64 - shift) / div;
        let r = re.coeff(k);
        let i = im.coeff(k);
        if !r.is_zero() {
            push_term(&mut out, &r, false, var, e);
        }
        if !i.is_zero() {
            push_term(&mut out, &i, true, var, e);
        }
    }
    if out.is_empty() {
        out.push('0');
    }
    out
}

impl fmt::Display for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let in_q = self.is_even_in_s();
        if self.den.is_monomial() {
            let k = self.den.degree().unwrap() as i64;
            return write!(f, "{}", fmt_laurent(&self.re, &self.im, k, in_q));
        }
        // Pull the power of s out of the denominator so that both parts
        // print as Laurent polynomials with a nonzero constant-term denominator.
        let v = self.den.valuation();
        let d = self.den.shift_down(v);
        let num = fmt_laurent(&self.re, &self.im, v as i64, in_q);
        let den = fmt_laurent(&d, &Poly::zero(), 0, in_q);
        let wrap = |t: String| {
            if t.contains(' ') || t.starts_with('-') {
                format!("({t})")
            } else {
                t
            }
        };
        write!(f, "{}/{}", wrap(num), wrap(den))
    }
}

impl fmt::Debug for ScalarQ {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ScalarQ({self})")
    }
}

impl fmt::Display for GaussRat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match (self.re.is_zero(), self.im.is_zero()) {
            (_, true) => write!(f, "{}", fmt_rational(&self.re)),
            (true, false) => write!(f, "{}*i", fmt_rational(&self.im)),
            (false, false) => {
                let sign = if self.im.is_negative() { "-" } else { "+" };
                write!(f, "{} {} {}*i", fmt_rational(&self.re), sign, fmt_rational(&self.im.abs()))
            }
        }
    }
}

impl GaussRat {
    pub fn from_rational(re: BigRational) -> Self {
        GaussRat { re, im: BigRational::zero() }
    }

    pub fn zero() -> Self {
        GaussRat::from_rational(BigRational::zero())
    }

    pub fn one() -> Self {
        GaussRat::from_rational(BigRational::one())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn add(&self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re + &o.re, im: &self.im + &o.im }
    }

    pub fn mul(&self, o: &GaussRat) -> GaussRat {
        GaussRat { re: &self.re * &o.re - &self.im * &o.im, im: &self.re * &o.im + &self.im * &o.re }
    }

    pub fn inv(&self) -> Option<GaussRat> {
        let n = &self.re * &self.re + &self.im * &self.im;
        if n.is_zero() {
            return None;
        }
        Some(GaussRat { re: &self.re / &n, im: -&self.im / &n })
    }

    pub fn pow(&self, k: i64) -> Option<GaussRat> {
        let base = if k < 0 { self.inv()? } else { self.clone() };
        let mut acc = GaussRat::one();
        for _ in 0..k.unsigned_abs() {
            acc = acc.mul(&base);
        }
        Some(acc)
    }

    /// Decimal rendering for display columns.
    pub fn to_f64_pair(&self) -> (f64, f64) {
        use num_traits::ToPrimitive;
        (self.re.to_f64().unwrap_or(f64::NAN), self.im.to_f64().unwrap_or(f64::NAN))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(t: &str) -> ScalarQ {
        parse_scalar(t).unwrap()
    }

    #[test]
    fn qnum_values() {
        assert_eq!(qnum(2), ScalarQ::one());
        assert_eq!(qnum(4), p("q + q^-1"));
        let rho = &qnum(1) * &qnum(3);
        assert_eq!(rho, p("(q^2 - q - q^-1 + q^-2)/(q - q^-1)^2"));
    }

    #[test]
    fn half_integer_products_are_even_in_s() {
        for j2 in 1..8 {
            let v = &qnum(j2) * &qnum(j2 + 2);
            assert!(v.is_even_in_s(), "[J][J+1] for 2J = {j2}");
        }
        assert!(!qnum(1).is_even_in_s());
    }

    #[test]
    fn eval_examples() {
        let two = BigRational::from_integer(2.into());
        let v = qnum(4).eval_at(&two).unwrap();
        assert_eq!(v.re, BigRational::new(5.into(), 2.into()));
        assert_eq!(p("1 + q^2").classical_limit().unwrap().re, rat(2));
        assert_eq!(p("1/(q^2-1)").classical_limit(), Err(EvalError::Pole));
    }

    #[test]
    fn removable_singularity_at_one() {
        // (q^2 - 1)/(q - 1) = q + 1
        assert_eq!(p("(q^2-1)/(q-1)").classical_limit().unwrap().re, rat(2));
    }

    #[test]
    fn conjugation() {
        assert_eq!(ScalarQ::i().conj(), -ScalarQ::i());
        let x = p("q - q^-1");
        assert_eq!(x.conj(), x);
        let y = p("i*q^2/(q+1)");
        assert_eq!(y.conj().conj(), y);
    }

    #[test]
    fn gaussian_denominator_is_rationalized() {
        // 1/(s + i) = (s - i)/(s^2 + 1)
        let x = (&ScalarQ::s() + &ScalarQ::i()).inv();
        assert_eq!(x.denominator(), &Poly::from_ints(&[1, 0, 1]));
        assert_eq!(&x * &(&ScalarQ::s() + &ScalarQ::i()), ScalarQ::one());
    }

    #[test]
    fn invert_q_swaps_powers() {
        assert_eq!(p("q^2 + 3*q^-1").invert_q(), p("q^-2 + 3*q"));
        assert_eq!(p("1/(q^2+1)").invert_q(), p("q^2/(q^2+1)"));
    }

    #[test]
    fn printing_roundtrips() {
        for t in ["q^2 - q^-2", "i*(q - q^-1)", "1/(q^2-1)", "3/2*s^3 - i", "(q+1)/(q^3-2)", "-q"] {
            let x = p(t);
            let printed = x.to_string();
            assert_eq!(p(&printed), x, "{t} printed as {printed}");
        }
    }
}
