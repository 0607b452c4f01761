//! Sesquilinear contractions and the Hodge operators T and L.

pub mod checks;
pub mod expr;
pub mod tables;

pub use checks::*;
pub use expr::{Expr, Relation, Var};

use crate::calculus::{reverse_star, Direction, Label};
use crate::exterior::{antisymmetrizer, shuffle_operator, Form, FormError, Tensor};
use crate::scalar::{Coeff, ScalarQ};
use std::sync::Arc;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum HodgeError {
    #[error("cannot contract a degree {k} tensor against a degree {s} tensor")]
    DegreeMismatch { k: usize, s: usize },
    #[error(transparent)]
    Form(#[from] FormError),
    #[error("form lives in the {found:?} algebra, operator in the {expected:?} one")]
    DirectionMismatch { expected: Direction, found: Direction },
    #[error("contraction is not real and hermitian: {0}")]
    NotRealHermitian(String),
    #[error("quantum determinant vanishes")]
    ZeroDeterminant,
    #[error("alpha*beta*epsilon^2 vanishes or has no real square root")]
    NotNormalizable,
    #[error("sign cannot be decided symbolically: {0}")]
    Undecidable(String),
}

/// The six parameters of a U(1)-coinvariant contraction,
/// Gamma = diag(alpha; beta; [[nu, epsilon], [xi, gamma]]).
#[derive(Clone, Debug, PartialEq)]
pub struct Contraction {
    pub alpha: Expr,
    pub beta: Expr,
    pub nu: Expr,
    pub epsilon: Expr,
    pub xi: Expr,
    pub gamma: Expr,
}

fn v(x: Var) -> Expr {
    Expr::var(x)
}

fn c(text: &str) -> ScalarQ {
    crate::scalar::parse_scalar(text).expect("internal scalar literal")
}

impl Contraction {
    pub fn new(alpha: Expr, beta: Expr, nu: Expr, epsilon: Expr, xi: Expr, gamma: Expr) -> Self {
        Contraction { alpha, beta, nu, epsilon, xi, gamma }
    }

    pub fn from_scalars(p: [ScalarQ; 6]) -> Self {
        let [a, b, n, e, x, g] = p.map(Expr::constant);
        Contraction::new(a, b, n, e, x, g)
    }

    /// All six parameters independent complex symbols.
    pub fn symbolic() -> Self {
        Contraction::new(v(Var::Alpha), v(Var::Beta), v(Var::Nu), v(Var::Eps), v(Var::Xi), v(Var::Gamma))
    }

    /// Complex alpha, beta = q^2 conj(alpha), the other four real symbols.
    pub fn real_symbolic() -> Self {
        Contraction::new(v(Var::Alpha), v(Var::AlphaBar).scale_q(&ScalarQ::q_pow(2)), v(Var::NuR), v(Var::EpsR), v(Var::XiR), v(Var::GammaR))
    }

    /// alpha, nu, epsilon, gamma real, beta = q^2 alpha, xi = epsilon.
    pub fn real_hermitian_symbolic() -> Self {
        let a = v(Var::AlphaR);
        let e = v(Var::EpsR);
        Contraction::new(a.clone(), a.scale_q(&ScalarQ::q_pow(2)), v(Var::NuR), e.clone(), e, v(Var::GammaR))
    }

    /// epsilon = s (q^2 - 1) alpha, gamma = -s (q^2 + 1) alpha, nu = 0,
    /// xi = epsilon, beta = q^2 alpha.
    pub fn family_a(alpha: Expr, s: i32) -> Self {
        assert!(s == 1 || s == -1);
        let sg = ScalarQ::from_int(s as i64);
        let eps = alpha.scale_q(&(&c("q^2-1") * &sg));
        let gamma = alpha.scale_q(&(&c("-(q^2+1)") * &sg));
        Contraction::new(alpha.clone(), alpha.scale_q(&ScalarQ::q_pow(2)), Expr::zero(), eps.clone(), eps, gamma)
    }

    /// Family (a) with a real symbolic alpha.
    pub fn family_a_symbolic(s: i32) -> Self {
        Contraction::family_a(v(Var::AlphaR), s)
    }

    /// Family (c): 2 epsilon^2 = 3 (q - q^-1)^2 alpha beta,
    /// 2 (q + q^-1) nu = -(q - q^-1) epsilon, gamma = 0, xi = epsilon,
    /// beta = q^2 alpha. epsilon/alpha is irrational, so epsilon is kept
    /// as a symbol subject to epsilon^2 = (3/2)(q^2-1)^2 alpha^2.
    pub fn family_c() -> Self {
        let rel = Arc::new(Relation { var: Var::EpsR, base: Var::AlphaR, ratio: c("3/2*(q^2-1)^2") });
        let a = v(Var::AlphaR).with_relation(rel.clone());
        let e = v(Var::EpsR).with_relation(rel);
        let nu = e.scale_q(&c("-(q-q^-1)/(2*(q+q^-1))"));
        Contraction::new(a.clone(), a.scale_q(&ScalarQ::q_pow(2)), nu, e.clone(), e, Expr::zero())
    }

    /// Gamma_{ab} in basis order (-, +, 0, z).
    pub fn entry(&self, a: Label, b: Label) -> Expr {
        use Label::*;
        match (a, b) {
            (Minus, Minus) => self.alpha.clone(),
            (Plus, Plus) => self.beta.clone(),
            (Zero, Zero) => self.nu.clone(),
            (Zero, Z) => self.epsilon.clone(),
            (Z, Zero) => self.xi.clone(),
            (Z, Z) => self.gamma.clone(),
            _ => Expr::zero(),
        }
    }

    pub fn matrix(&self) -> [[Expr; 4]; 4] {
        std::array::from_fn(|a| std::array::from_fn(|b| self.entry(Label::from_index(a), Label::from_index(b))))
    }

    pub fn params(&self) -> [(&'static str, &Expr); 6] {
        [("alpha", &self.alpha), ("beta", &self.beta), ("nu", &self.nu), ("epsilon", &self.epsilon), ("xi", &self.xi), ("gamma", &self.gamma)]
    }

    pub fn map(&self, f: impl Fn(&Expr) -> Expr) -> Contraction {
        Contraction::new(f(&self.alpha), f(&self.beta), f(&self.nu), f(&self.epsilon), f(&self.xi), f(&self.gamma))
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct HodgeConfig {
    pub contraction: Contraction,
    /// Real scale of the volume tensor theta = i m w- (x) w+ (x) w0 (x) wz.
    pub m: Expr,
    pub direction: Direction,
}

impl HodgeConfig {
    pub fn new(contraction: Contraction, m: Expr, direction: Direction) -> Self {
        assert!(m.conj() == m, "scale m must be real");
        assert!(!m.is_zero(), "scale m must be nonzero");
        HodgeConfig { contraction, m, direction }
    }

    /// Symbolic real m.
    pub fn with_symbolic_m(contraction: Contraction, direction: Direction) -> Self {
        HodgeConfig::new(contraction, Expr::var(Var::M), direction)
    }

    pub fn with_direction(&self, direction: Direction) -> Self {
        HodgeConfig { direction, ..self.clone() }
    }

    pub fn theta(&self) -> Tensor<Expr> {
        use Label::*;
        Tensor::basis(&[Minus, Plus, Zero, Z]).scale(&self.m.scale_q(&ScalarQ::i()))
    }

    /// mu = A^(4) theta.
    pub fn mu(&self) -> Form<Expr> {
        Form::antisymmetrize(&self.theta(), self.direction).expect("top form")
    }
}

/// Pairwise sesquilinear contraction: slot i of xi against slot i of eta,
/// conjugate-linear in xi, the tail of eta passes through.
pub fn contract<C: Coeff>(gamma: &[[C; 4]; 4], xi: &Tensor<C>, eta: &Tensor<C>) -> Result<Tensor<C>, HodgeError> {
    let (k, s) = (xi.degree(), eta.degree());
    if k > s {
        return Err(HodgeError::DegreeMismatch { k, s });
    }
    let tail_bits = 2 * (s - k);
    let mut out = Tensor::zero(s - k);
    for (ia, ca) in xi.iter() {
        let cc = ca.conj();
        for (ib, cb) in eta.iter() {
            let mut acc = cc.times(cb);
            for i in 0..k {
                let a = ((ia >> (2 * (k - 1 - i))) & 3) as usize;
                let b = ((ib >> (2 * (s - 1 - i))) & 3) as usize;
                let g = &gamma[a][b];
                if g.is_zero() {
                    acc = C::zero();
                    break;
                }
                acc = acc.times(g);
            }
            if !acc.is_zero() {
                let tail = if tail_bits == 0 { 0 } else { ib & ((1u32 << tail_bits) - 1) };
                out.add_at(tail, &acc);
            }
        }
    }
    Ok(out)
}

/// Contraction of two tensors with the parameters of `g`.
pub fn contract_with(g: &Contraction, xi: &Tensor<Expr>, eta: &Tensor<Expr>) -> Result<Tensor<Expr>, HodgeError> {
    contract(&g.matrix(), xi, eta)
}

pub fn lift_form(f: &Form<ScalarQ>) -> Form<Expr> {
    f.map(|x| Expr::constant(x.clone()))
}

fn check_direction(cfg: &HodgeConfig, xi: &Form<Expr>) -> Result<(), HodgeError> {
    if xi.direction() != cfg.direction {
        return Err(HodgeError::DirectionMismatch { expected: cfg.direction, found: xi.direction() });
    }
    Ok(())
}

/// Eigenvalue of the star of an eigenform with eigenvalue `lam`.
fn star_eigenvalue(k: usize, d: Direction, lam: &ScalarQ) -> ScalarQ {
    let data = crate::exterior::degree_data(k, d);
    let i = data.eigenvalues.iter().position(|l| l == lam).expect("eigenvalue of this degree");
    let s = Form::<ScalarQ>::basis(k, d, i).star();
    s.eigenvalue().expect("star of an eigenform is an eigenform")
}

/// T(xi) = (lambda_{xi*}/lambda_xi) (A^(4-k)(Gamma(xi, B_{k,4-k} theta)))^*,
/// applied on each eigencomponent.
pub fn hodge_t(cfg: &HodgeConfig, xi: &Form<Expr>) -> Result<Form<Expr>, HodgeError> {
    check_direction(cfg, xi)?;
    let k = xi.degree();
    let d = cfg.direction;
    let g = cfg.contraction.matrix();
    let b_theta = shuffle_operator(k, 4 - k, d).apply(&cfg.theta());
    let a = antisymmetrizer(4 - k, d);
    let mut out = Tensor::zero(4 - k);
    for (lam, comp) in xi.components() {
        if comp.is_zero() {
            continue;
        }
        let ratio = &star_eigenvalue(k, d, &lam) / &lam;
        let x = contract(&g, comp.tensor(), &b_theta)?;
        out.add_scaled_q(&a.apply(&reverse_star(&x)), &ratio);
    }
    Ok(Form::from_tensor(out, d)?)
}

/// L(xi) = (1/lambda_xi) Gamma*(xi, mu), with the star taken on the
/// resulting form.
pub fn hodge_l(cfg: &HodgeConfig, xi: &Form<Expr>) -> Result<Form<Expr>, HodgeError> {
    check_direction(cfg, xi)?;
    let k = xi.degree();
    let d = cfg.direction;
    let g = cfg.contraction.matrix();
    let mu = cfg.mu();
    let mut out = Form::zero(4 - k, d);
    for (lam, comp) in xi.components() {
        if comp.is_zero() {
            continue;
        }
        let x = contract(&g, comp.tensor(), mu.tensor())?;
        out = out.plus(&Form::from_tensor(x, d)?.star().scale_q(&lam.inv()));
    }
    Ok(out)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, serde::Serialize)]
pub enum Operator {
    T,
    L,
}

pub fn apply_operator(op: Operator, cfg: &HodgeConfig, xi: &Form<Expr>) -> Result<Form<Expr>, HodgeError> {
    match op {
        Operator::T => hodge_t(cfg, xi),
        Operator::L => hodge_l(cfg, xi),
    }
}

/// The canonical eigenbasis form `name` of degree k, as a form over Expr.
pub fn named_form(k: usize, d: Direction, name: &str) -> Form<Expr> {
    lift_form(&Form::named(k, d, name).unwrap_or_else(|| panic!("no form {name} in degree {k}")))
}

/// Re-express a form in the other direction (the ranges of A^(k)_+ and
/// A^(k)_- coincide as subspaces of V^{(x)k}).
pub fn to_direction(xi: &Form<Expr>, d: Direction) -> Result<Form<Expr>, HodgeError> {
    Ok(Form::from_tensor(xi.tensor().clone(), d)?)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::Label::*;

    fn e(labels: &[Label]) -> Tensor<Expr> {
        Tensor::basis(labels)
    }

    #[test]
    fn contraction_examples() {
        let g = Contraction::symbolic();
        assert_eq!(contract_with(&g, &e(&[Zero]), &e(&[Z])).unwrap().scalar_value(), v(Var::Eps));
        let i_wm = e(&[Minus]).scale_q(&ScalarQ::i());
        assert_eq!(contract_with(&g, &i_wm, &e(&[Minus])).unwrap().scalar_value(), v(Var::Alpha).scale_q(&-ScalarQ::i()));
        assert_eq!(contract_with(&g, &e(&[Minus]), &e(&[Minus, Zero])).unwrap(), e(&[Zero]).scale(&v(Var::Alpha)));
        assert!(contract_with(&g, &e(&[Minus, Zero]), &e(&[Minus])).is_err());
    }

    #[test]
    fn t_of_one_is_mu() {
        for d in crate::calculus::BOTH_DIRECTIONS {
            let cfg = HodgeConfig::with_symbolic_m(Contraction::symbolic(), d);
            assert_eq!(hodge_t(&cfg, &Form::one(d)).unwrap(), cfg.mu());
            assert_eq!(hodge_l(&cfg, &Form::one(d)).unwrap(), cfg.mu());
        }
    }

    #[test]
    fn t_of_w_minus() {
        let d = Direction::Plus;
        let cfg = HodgeConfig::with_symbolic_m(Contraction::symbolic(), d);
        let t = hodge_t(&cfg, &named_form(1, d, "w-")).unwrap();
        let expected = named_form(3, d, "chi+").scale(&v(Var::AlphaBar).mul(&v(Var::M)).scale_q(&ScalarQ::i()));
        assert_eq!(t, expected);
    }
}
