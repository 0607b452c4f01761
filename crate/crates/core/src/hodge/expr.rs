//! Polynomials in the contraction parameters with coefficients in Q(i)(s).
//!
//! Complex parameters come with an independent conjugate symbol; real
//! parameters are their own conjugate. Exponents may be negative, so a
//! monomial is always invertible. An optional quadratic relation
//! `v^2 = r * w^2` lets irrational families live in an exact quotient.

use crate::scalar::{Coeff, EvalError, GaussRat, ScalarQ};
use num_rational::BigRational;
use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

pub const NVARS: usize = 18;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Var {
    Alpha,
    AlphaBar,
    Beta,
    BetaBar,
    Nu,
    NuBar,
    Eps,
    EpsBar,
    Xi,
    XiBar,
    Gamma,
    GammaBar,
    M,
    AlphaR,
    NuR,
    EpsR,
    XiR,
    GammaR,
}

pub const VARS: [Var; NVARS] = [
    Var::Alpha,
    Var::AlphaBar,
    Var::Beta,
    Var::BetaBar,
    Var::Nu,
    Var::NuBar,
    Var::Eps,
    Var::EpsBar,
    Var::Xi,
    Var::XiBar,
    Var::Gamma,
    Var::GammaBar,
    Var::M,
    Var::AlphaR,
    Var::NuR,
    Var::EpsR,
    Var::XiR,
    Var::GammaR,
];

impl Var {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn conj(self) -> Var {
        use Var::*;
        match self {
            Alpha => AlphaBar,
            AlphaBar => Alpha,
            Beta => BetaBar,
            BetaBar => Beta,
            Nu => NuBar,
            NuBar => Nu,
            Eps => EpsBar,
            EpsBar => Eps,
            Xi => XiBar,
            XiBar => Xi,
            Gamma => GammaBar,
            GammaBar => Gamma,
            v => v,
        }
    }

    pub fn is_real(self) -> bool {
        self.conj() == self
    }

    pub fn name(self) -> &'static str {
        use Var::*;
        match self {
            Alpha | AlphaR => "alpha",
            AlphaBar => "conj(alpha)",
            Beta => "beta",
            BetaBar => "conj(beta)",
            Nu | NuR => "nu",
            NuBar => "conj(nu)",
            Eps | EpsR => "epsilon",
            EpsBar => "conj(epsilon)",
            Xi | XiR => "xi",
            XiBar => "conj(xi)",
            Gamma | GammaR => "gamma",
            GammaBar => "conj(gamma)",
            M => "m",
        }
    }
}

pub type Mono = [i16; NVARS];

/// `var^2 = ratio * base^2`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Relation {
    pub var: Var,
    pub base: Var,
    pub ratio: ScalarQ,
}

#[derive(Clone)]
pub struct Expr {
    terms: BTreeMap<Mono, ScalarQ>,
    rel: Option<Arc<Relation>>,
}

impl Expr {
    pub fn zero() -> Self {
        Expr { terms: BTreeMap::new(), rel: None }
    }

    pub fn constant(c: ScalarQ) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert([0; NVARS], c);
        }
        Expr { terms, rel: None }
    }

    pub fn int(n: i64) -> Self {
        Expr::constant(ScalarQ::from_int(n))
    }

    pub fn var(v: Var) -> Self {
        Expr::monomial(v, 1)
    }

    pub fn monomial(v: Var, k: i16) -> Self {
        let mut m = [0; NVARS];
        m[v.index()] = k;
        Expr { terms: BTreeMap::from([(m, ScalarQ::one())]), rel: None }
    }

    /// Attach a quadratic relation and reduce.
    pub fn with_relation(&self, rel: Arc<Relation>) -> Expr {
        let mut out = Expr { terms: BTreeMap::new(), rel: Some(rel) };
        for (m, c) in &self.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn relation(&self) -> Option<&Arc<Relation>> {
        self.rel.as_ref()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Mono, &ScalarQ)> {
        self.terms.iter()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// The value when the expression has no variables.
    pub fn as_constant(&self) -> Option<ScalarQ> {
        match self.terms.len() {
            0 => Some(ScalarQ::zero()),
            1 => self.terms.get(&[0; NVARS]).cloned(),
            _ => None,
        }
    }

    /// Single term (monomial, coefficient), if the expression is one.
    pub fn as_monomial(&self) -> Option<(Mono, ScalarQ)> {
        if self.terms.len() == 1 {
            self.terms.iter().next().map(|(m, c)| (*m, c.clone()))
        } else {
            None
        }
    }

    pub fn coeff_of(&self, m: &Mono) -> ScalarQ {
        self.terms.get(m).cloned().unwrap_or_default()
    }

    pub fn degree_in(&self, v: Var) -> i16 {
        self.terms.keys().map(|m| m[v.index()]).max().unwrap_or(0)
    }

    fn merged_rel(&self, o: &Expr) -> Option<Arc<Relation>> {
        match (&self.rel, &o.rel) {
            (Some(a), Some(b)) => {
                assert!(Arc::ptr_eq(a, b) || a == b, "mixing expressions with different relations");
                Some(a.clone())
            }
            (Some(a), None) | (None, Some(a)) => Some(a.clone()),
            (None, None) => None,
        }
    }

    fn add_term(&mut self, mut m: Mono, mut c: ScalarQ) {
        if let Some(rel) = &self.rel {
            let (vi, bi) = (rel.var.index(), rel.base.index());
            while m[vi] >= 2 || m[vi] < 0 {
                if m[vi] >= 2 {
                    m[vi] -= 2;
                    m[bi] += 2;
                    c = &c * &rel.ratio;
                } else {
                    // v^-1 = v / (r w^2)
                    m[vi] += 2;
                    m[bi] -= 2;
                    c = &c / &rel.ratio;
                }
            }
        }
        if c.is_zero() {
            return;
        }
        match self.terms.get_mut(&m) {
            Some(x) => {
                let s = &*x + &c;
                if s.is_zero() {
                    self.terms.remove(&m);
                } else {
                    *x = s;
                }
            }
            None => {
                self.terms.insert(m, c);
            }
        }
    }

    pub fn add(&self, o: &Expr) -> Expr {
        let mut out = self.clone();
        out.rel = self.merged_rel(o);
        for (m, c) in &o.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, o: &Expr) -> Expr {
        self.add(&o.neg())
    }

    pub fn neg(&self) -> Expr {
        self.scale_q(&ScalarQ::from_int(-1))
    }

    pub fn mul(&self, o: &Expr) -> Expr {
        let mut out = Expr { terms: BTreeMap::new(), rel: self.merged_rel(o) };
        for (m1, c1) in &self.terms {
            for (m2, c2) in &o.terms {
                let mut m = *m1;
                for (a, b) in m.iter_mut().zip(m2) {
                    *a += b;
                }
                out.add_term(m, c1 * c2);
            }
        }
        out
    }

    pub fn scale_q(&self, f: &ScalarQ) -> Expr {
        if f.is_zero() {
            return Expr { terms: BTreeMap::new(), rel: self.rel.clone() };
        }
        Expr { terms: self.terms.iter().map(|(m, c)| (*m, c * f)).collect(), rel: self.rel.clone() }
    }

    pub fn pow(&self, k: u32) -> Expr {
        let mut out = Expr::int(1);
        for _ in 0..k {
            out = out.mul(self);
        }
        out
    }

    pub fn conj(&self) -> Expr {
        let mut out = Expr { terms: BTreeMap::new(), rel: self.rel.clone() };
        for (m, c) in &self.terms {
            let mut n = [0; NVARS];
            for v in VARS {
                n[v.conj().index()] = m[v.index()];
            }
            out.add_term(n, c.conj());
        }
        out
    }

    /// Inverse of a single-term expression.
    pub fn inv_monomial(&self) -> Option<Expr> {
        let (m, c) = self.as_monomial()?;
        let mut n = m;
        for x in n.iter_mut() {
            *x = -*x;
        }
        let mut out = Expr { terms: BTreeMap::new(), rel: self.rel.clone() };
        out.add_term(n, c.inv());
        Some(out)
    }

    /// Square root of a single-term expression with even exponents and a
    /// square coefficient; the coefficient root has positive leading term.
    pub fn sqrt_monomial(&self) -> Option<Expr> {
        let (m, c) = self.as_monomial()?;
        if m.iter().any(|e| e % 2 != 0) {
            return None;
        }
        let mut n = m;
        for x in n.iter_mut() {
            *x /= 2;
        }
        let root = c.sqrt()?;
        Some(Expr { terms: BTreeMap::from([(n, root)]), rel: self.rel.clone() })
    }

    /// Substitute an expression for a variable (positive powers only).
    pub fn subst(&self, v: Var, value: &Expr) -> Expr {
        let mut out = Expr { terms: BTreeMap::new(), rel: self.merged_rel(value) };
        for (m, c) in &self.terms {
            let k = m[v.index()];
            let mut rest = *m;
            rest[v.index()] = 0;
            let mut t = Expr { terms: BTreeMap::new(), rel: out.rel.clone() };
            t.add_term(rest, c.clone());
            let factor = if k >= 0 { value.pow(k as u32) } else { value.inv_monomial().expect("negative power of a non-monomial").pow((-k) as u32) };
            let prod = t.mul(&factor);
            out = out.add(&prod);
        }
        out
    }

    /// Apply several substitutions in sequence.
    pub fn subst_all(&self, subs: &[(Var, Expr)]) -> Expr {
        subs.iter().fold(self.clone(), |acc, (v, e)| acc.subst(*v, e))
    }

    /// Exact value at q = q0 with the given variable values. Conjugate
    /// symbols default to the conjugate of their partner's value.
    pub fn eval(&self, q0: &BigRational, values: &BTreeMap<Var, GaussRat>) -> Result<GaussRat, EvalError> {
        let lookup = |v: Var| -> Option<GaussRat> { values.get(&v).cloned().or_else(|| values.get(&v.conj()).map(|g| GaussRat { re: g.re.clone(), im: -g.im.clone() })) };
        let mut acc = GaussRat::zero();
        for (m, c) in &self.terms {
            let mut t = c.eval_at(q0)?;
            for v in VARS {
                let e = m[v.index()];
                if e == 0 {
                    continue;
                }
                let x = lookup(v).unwrap_or_else(|| panic!("no value for {}", v.name()));
                t = t.mul(&x.pow(e as i64).ok_or(EvalError::Pole)?);
            }
            acc = acc.add(&t);
        }
        Ok(acc)
    }

    /// `Some(c)` with self = c * other for a scalar c.
    pub fn ratio_to(&self, other: &Expr) -> Option<ScalarQ> {
        if other.is_zero() {
            return self.is_zero().then(ScalarQ::zero);
        }
        let (m0, c0) = other.terms.iter().next()?;
        let c = &self.terms.get(m0).cloned().unwrap_or_default() / c0;
        (self.sub(&other.scale_q(&c)).is_zero()).then_some(c)
    }
}

impl PartialEq for Expr {
    fn eq(&self, o: &Expr) -> bool {
        self.terms == o.terms
    }
}

impl Eq for Expr {}

impl Default for Expr {
    fn default() -> Self {
        Expr::zero()
    }
}

impl From<ScalarQ> for Expr {
    fn from(c: ScalarQ) -> Self {
        Expr::constant(c)
    }
}

impl From<Var> for Expr {
    fn from(v: Var) -> Self {
        Expr::var(v)
    }
}

impl Coeff for Expr {
    fn zero() -> Self {
        Expr::zero()
    }
    fn one() -> Self {
        Expr::int(1)
    }
    fn is_zero(&self) -> bool {
        Expr::is_zero(self)
    }
    fn plus(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn times(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn negate(&self) -> Self {
        self.neg()
    }
    fn conj(&self) -> Self {
        Expr::conj(self)
    }
    fn from_scalar(x: &ScalarQ) -> Self {
        Expr::constant(x.clone())
    }
    fn scale(&self, x: &ScalarQ) -> Self {
        self.scale_q(x)
    }
}

fn fmt_mono(m: &Mono) -> String {
    let mut parts = Vec::new();
    for v in VARS {
        let e = m[v.index()];
        match e {
            0 => {}
            1 => parts.push(v.name().to_string()),
            _ => parts.push(format!("{}^{}", v.name(), e)),
        }
    }
    parts.join("*")
}

impl fmt::Display for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .rev()
            .map(|(m, c)| {
                let mono = fmt_mono(m);
                if mono.is_empty() {
                    format!("({c})")
                } else if c.is_one() {
                    mono
                } else {
                    format!("({c})*{mono}")
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

impl fmt::Debug for Expr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::parse_scalar;

    #[test]
    fn conj_swaps_partners() {
        let x = Expr::var(Var::Alpha).mul(&Expr::var(Var::NuR)).scale_q(&ScalarQ::i());
        let y = Expr::var(Var::AlphaBar).mul(&Expr::var(Var::NuR)).scale_q(&-ScalarQ::i());
        assert_eq!(x.conj(), y);
        assert_eq!(x.conj().conj(), x);
    }

    #[test]
    fn relation_reduces_squares() {
        let rel = Arc::new(Relation { var: Var::EpsR, base: Var::AlphaR, ratio: parse_scalar("3/2").unwrap() });
        let e = Expr::var(Var::EpsR).with_relation(rel);
        let e3 = e.pow(3);
        let expected = Expr::var(Var::EpsR).mul(&Expr::monomial(Var::AlphaR, 2)).scale_q(&parse_scalar("3/2").unwrap());
        assert_eq!(e3, expected.with_relation(e.relation().unwrap().clone()));
        assert_eq!(e.mul(&e.inv_monomial().unwrap()), Expr::int(1).with_relation(e.relation().unwrap().clone()));
    }

    #[test]
    fn monomial_sqrt() {
        let x = Expr::monomial(Var::AlphaR, 4).scale_q(&parse_scalar("q^2*(q^2-1)^2").unwrap());
        let r = x.sqrt_monomial().unwrap();
        assert_eq!(r.mul(&r), x);
    }
}
