//! Reality, hermitianity and the classification of contractions; det_q,
//! normalization of m and the duality identities.

use super::{apply_operator, contract, hodge_t, lift_form, named_form, to_direction, Contraction, Expr, HodgeConfig, HodgeError, Operator, Var};
use crate::calculus::{Direction, Label, BOTH_DIRECTIONS};
use crate::exterior::{degree_data, Form, Tensor};
use crate::scalar::{parse_scalar, ScalarQ};
use num_rational::BigRational;
use serde::Serialize;

/// Sample point q = 1/4 in (0, 1); a rational square, so odd powers of
/// s = q^(1/2) evaluate exactly.
pub fn sample_q() -> BigRational {
    BigRational::new(1.into(), 4.into())
}

fn c(text: &str) -> ScalarQ {
    parse_scalar(text).expect("internal scalar literal")
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Verdict {
    pub holds: bool,
    pub witness: Vec<String>,
}

impl Verdict {
    fn from_witness(witness: Vec<String>) -> Self {
        Verdict { holds: witness.is_empty(), witness }
    }
}

/// Named expressions that vanish exactly when the reality conditions
/// hold: beta* = q^2 alpha and nu, epsilon, xi, gamma real.
pub fn reality_conditions(g: &Contraction) -> Vec<(&'static str, Expr)> {
    let q2 = ScalarQ::q_pow(2);
    vec![
        ("conj(beta) = q^2 alpha", g.beta.conj().sub(&g.alpha.scale_q(&q2))),
        ("nu real", g.nu.sub(&g.nu.conj())),
        ("epsilon real", g.epsilon.sub(&g.epsilon.conj())),
        ("xi real", g.xi.sub(&g.xi.conj())),
        ("gamma real", g.gamma.sub(&g.gamma.conj())),
    ]
}

/// Cubic relation among epsilon, nu and alpha beta.
pub fn cubic_relation(g: &Contraction) -> Expr {
    let ab = g.alpha.mul(&g.beta);
    let e = &g.epsilon;
    e.pow(3).add(&ab.mul(&g.nu.scale_q(&c("q^2-q^-2")).sub(&e.scale_q(&c("(q-q^-1)^2")))))
}

/// The nu-gamma relation, in the form forced by the hermitianity residuals:
/// gamma^2 nu = alpha beta ((q^2-q^-2) epsilon + 2(q+q^-1)^2 nu + (q-q^-1)^2 gamma).
pub fn quartic_relation(g: &Contraction) -> Expr {
    quartic_with_signs(g, 1)
}

/// Same relation with the last two signs flipped, as it is sometimes quoted.
pub fn quartic_relation_flipped(g: &Contraction) -> Expr {
    quartic_with_signs(g, -1)
}

fn quartic_with_signs(g: &Contraction, sign: i64) -> Expr {
    let ab = g.alpha.mul(&g.beta);
    let s = ScalarQ::from_int(sign);
    let inner = g.epsilon.scale_q(&c("q^2-q^-2")).add(&g.nu.scale_q(&(&c("2*(q+q^-1)^2") * &s))).add(&g.gamma.scale_q(&(&c("(q-q^-1)^2") * &s)));
    g.gamma.pow(2).mul(&g.nu).sub(&ab.mul(&inner))
}

/// Named expressions vanishing exactly under the hermitianity conditions
/// for T: beta = q^2 alpha, xi = epsilon, the cubic and the nu-gamma relation.
pub fn hermitian_conditions(g: &Contraction) -> Vec<(&'static str, Expr)> {
    vec![
        ("beta = q^2 alpha", g.beta.sub(&g.alpha.scale_q(&ScalarQ::q_pow(2)))),
        ("xi = epsilon", g.xi.sub(&g.epsilon)),
        ("cubic relation", cubic_relation(g)),
        ("nu-gamma relation", quartic_relation(g)),
    ]
}

/// Conditions for L: beta = q^2 alpha, xi = epsilon, all parameters real.
pub fn l_conditions(g: &Contraction) -> Vec<(&'static str, Expr)> {
    let mut out =
        vec![("beta = q^2 alpha", g.beta.sub(&g.alpha.scale_q(&ScalarQ::q_pow(2)))), ("xi = epsilon", g.xi.sub(&g.epsilon)), ("alpha real", g.alpha.sub(&g.alpha.conj()))];
    out.extend(reality_conditions(g).into_iter().skip(1));
    out
}

fn failing(conds: Vec<(&'static str, Expr)>) -> Vec<String> {
    conds.into_iter().filter(|(_, e)| !e.is_zero()).map(|(n, e)| format!("{n} fails: residual {e}")).collect()
}

fn sym_cfg(g: &Contraction, d: Direction) -> HodgeConfig {
    HodgeConfig::with_symbolic_m(g.clone(), d)
}

fn one_forms(d: Direction) -> Vec<(&'static str, Form<Expr>)> {
    ["w-", "w+", "w0", "wz"].into_iter().map(|n| (n, named_form(1, d, n))).collect()
}

/// op(w_a^*) - (op(w_a))^* for each basis 1-form.
pub fn reality_residuals(cfg: &HodgeConfig, op: Operator) -> Result<Vec<(&'static str, Form<Expr>)>, HodgeError> {
    one_forms(cfg.direction).into_iter().map(|(n, w)| Ok((n, apply_operator(op, cfg, &w.star())?.minus(&apply_operator(op, cfg, &w)?.star())))).collect()
}

/// For T: T^2(w_a) + T^2(1) w_a on each basis 1-form.
pub fn t_hermitian_residuals(cfg: &HodgeConfig) -> Result<Vec<(&'static str, Form<Expr>)>, HodgeError> {
    let t2_one = hodge_t(cfg, &hodge_t(cfg, &Form::one(cfg.direction))?)?.coords()[0].clone();
    one_forms(cfg.direction)
        .into_iter()
        .map(|(n, w)| {
            let tt = hodge_t(cfg, &hodge_t(cfg, &w)?)?;
            Ok((n, tt.plus(&w.scale(&t2_one))))
        })
        .collect()
}

/// For L: w_a^* ^ L(w_b) - Gamma(w_a, w_b) mu for all pairs, as the
/// coefficient of vol.
pub fn l_hermitian_residuals(cfg: &HodgeConfig) -> Result<Vec<(String, Expr)>, HodgeError> {
    let forms = one_forms(cfg.direction);
    let mu = cfg.mu();
    let mut out = Vec::new();
    for (na, wa) in &forms {
        for (nb, wb) in &forms {
            let lhs = wa.star().wedge(&apply_operator(Operator::L, cfg, wb)?).expect("degree 4");
            let g = contract(&cfg.contraction.matrix(), wa.tensor(), wb.tensor())?.scalar_value();
            let r = lhs.minus(&mu.scale(&g));
            out.push((format!("{na},{nb}"), r.coords()[0].clone()));
        }
    }
    Ok(out)
}

/// T(mu) = T^2(1); nonzero exactly for invertible contractions.
pub fn t_top(cfg: &HodgeConfig) -> Result<Expr, HodgeError> {
    Ok(hodge_t(cfg, &cfg.mu())?.coords()[0].clone())
}

/// Gamma(mu, mu).
pub fn gamma_mu_mu(cfg: &HodgeConfig) -> Result<Expr, HodgeError> {
    let mu = cfg.mu();
    Ok(contract(&cfg.contraction.matrix(), mu.tensor(), mu.tensor())?.scalar_value())
}

fn residual_witness<N: std::fmt::Display>(res: &[(N, Form<Expr>)], what: &str) -> Vec<String> {
    res.iter().filter(|(_, f)| !f.is_zero()).map(|(n, f)| format!("{what} on {n}: {f}")).collect()
}

/// Reality of a contraction with respect to T or L: op(w^*) = (op(w))^*
/// on 1-forms. The witness lists nonzero residuals and the violated
/// closed-form conditions.
pub fn is_real(g: &Contraction, op: Operator) -> Result<Verdict, HodgeError> {
    let cfg = sym_cfg(g, Direction::Plus);
    let mut w = residual_witness(&reality_residuals(&cfg, op)?, "reality residual");
    if !w.is_empty() {
        w.extend(failing(reality_conditions(g)));
    }
    Ok(Verdict::from_witness(w))
}

/// Hermitianity with respect to T (T^2(w) = -T^2(1) w on 1-forms, plus
/// T(mu) != 0) or L (w^* ^ L(w') = Gamma(w, w') mu, plus Gamma(mu, mu) != 0).
pub fn is_hermitian(g: &Contraction, op: Operator) -> Result<Verdict, HodgeError> {
    let cfg = sym_cfg(g, Direction::Plus);
    let mut w = Vec::new();
    match op {
        Operator::T => {
            w.extend(residual_witness(&t_hermitian_residuals(&cfg)?, "hermitianity residual"));
            if !w.is_empty() {
                w.extend(failing(hermitian_conditions(g)));
            }
            if t_top(&cfg)?.is_zero() {
                w.push("not invertible: T(mu) = 0".into());
            }
        }
        Operator::L => {
            for (n, r) in l_hermitian_residuals(&cfg)? {
                if !r.is_zero() {
                    w.push(format!("hermitianity residual on {n}: {r}"));
                }
            }
            if !w.is_empty() {
                w.extend(failing(l_conditions(g)));
            }
            if gamma_mu_mu(&cfg)?.is_zero() {
                w.push("not invertible: Gamma(mu, mu) = 0".into());
            }
        }
    }
    Ok(Verdict::from_witness(w))
}

pub fn is_real_hermitian(g: &Contraction, op: Operator) -> Result<bool, HodgeError> {
    Ok(is_real(g, op)?.holds && is_hermitian(g, op)?.holds)
}

/// Checks that the reality residuals of a fully complex contraction are,
/// coordinate by coordinate, scalar multiples of m times one of the
/// reality conditions (or its conjugate), that every condition occurs,
/// and that all residuals vanish once the conditions are imposed. Since
/// the conditions are linear, this proves the residuals vanish exactly
/// when the conditions hold.
pub fn reality_reproduction() -> Result<bool, HodgeError> {
    let g = Contraction::symbolic();
    let cfg = sym_cfg(&g, Direction::Plus);
    let conds = reality_conditions(&g);
    let m = Expr::var(Var::M);
    let mut used = vec![false; conds.len()];
    for (_, f) in reality_residuals(&cfg, Operator::T)? {
        for r in f.coords().iter().filter(|r| !r.is_zero()) {
            let hit = conds.iter().position(|(_, e)| r.ratio_to(&m.mul(e)).is_some() || r.ratio_to(&m.mul(&e.conj())).is_some());
            match hit {
                Some(i) => used[i] = true,
                None => return Ok(false),
            }
        }
    }
    let imposed = sym_cfg(&Contraction::real_symbolic(), Direction::Plus);
    let vanish = reality_residuals(&imposed, Operator::T)?.iter().all(|(_, f)| f.is_zero());
    Ok(used.iter().all(|u| *u) && vanish)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct HermitianReduction {
    /// On a real contraction the w+- residuals are
    /// -+q^2 m^2 alpha^(*) (alpha - conj alpha)(nu gamma - epsilon xi).
    pub alpha_real: bool,
    /// The z-components of the w0, wz residuals are
    /// q^2 m^2 |alpha|^2 nu (xi - epsilon) and q^2 m^2 |alpha|^2 xi (xi - epsilon).
    pub xi_equals_epsilon: bool,
    /// With alpha real and xi = epsilon the remaining residuals are
    /// m^2(-epsilon C + nu X) and -m^2(gamma C - epsilon X), checked for
    /// (C, X) = (cubic, nu-gamma relation as quoted with flipped signs).
    pub quoted_pair: bool,
    /// The same with the nu-gamma relation as computed.
    pub computed_pair: bool,
}

/// Reduces the hermitianity residuals of T to the closed-form conditions.
/// Because nu gamma - epsilon^2 != 0 for invertible contractions, the pair
/// (C, X) in the last step is unique, so exactly one quoted form can pass.
pub fn hermitian_reduction() -> Result<HermitianReduction, HodgeError> {
    let m2 = Expr::monomial(Var::M, 2);
    let q2 = ScalarQ::q_pow(2);
    let g = Contraction::real_symbolic();
    let cfg = sym_cfg(&g, Direction::Plus);
    let res = t_hermitian_residuals(&cfg)?;
    let (a, abar) = (Expr::var(Var::Alpha), Expr::var(Var::AlphaBar));
    let det = g.nu.mul(&g.gamma).sub(&g.epsilon.mul(&g.xi));
    let core = m2.mul(&a.sub(&abar)).mul(&det).scale_q(&q2);
    let alpha_real = res[0].1 == named_form(1, Direction::Plus, "w-").scale(&core.mul(&abar)) && res[1].1 == named_form(1, Direction::Plus, "w+").scale(&core.mul(&a).neg());
    let aa = m2.mul(&a).mul(&abar).scale_q(&q2);
    let xe = g.xi.sub(&g.epsilon);
    let xi_equals_epsilon = res[2].1.coords()[3] == aa.mul(&g.nu).mul(&xe) && res[3].1.coords()[3] == aa.mul(&g.xi).mul(&xe);
    let h = Contraction::real_hermitian_symbolic();
    let hres = t_hermitian_residuals(&sym_cfg(&h, Direction::Plus))?;
    let zero_elsewhere = hres[0].1.is_zero() && hres[1].1.is_zero() && hres[2].1.coords()[3].is_zero() && hres[3].1.coords()[3].is_zero();
    let pair = |x: Expr| {
        let cc = cubic_relation(&h);
        let r0 = m2.mul(&h.nu.mul(&x).sub(&h.epsilon.mul(&cc)));
        let rz = m2.mul(&h.epsilon.mul(&x).sub(&h.gamma.mul(&cc)));
        zero_elsewhere && hres[2].1.coords()[2] == r0 && hres[3].1.coords()[2] == rz
    };
    Ok(HermitianReduction { alpha_real, xi_equals_epsilon, quoted_pair: pair(quartic_relation_flipped(&h)), computed_pair: pair(quartic_relation(&h)) })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    A,
    B,
    C,
    None,
}

/// Which of the three families of real hermitian invertible contractions
/// `g` belongs to. Contractions that are not real and hermitian for T
/// classify as `None`.
pub fn classify_family(g: &Contraction) -> Result<Family, HodgeError> {
    if !is_real_hermitian(g, Operator::T)? {
        return Ok(Family::None);
    }
    if g.nu.is_zero() {
        return Ok(Family::A);
    }
    if g.gamma.is_zero() {
        let ab = g.alpha.mul(&g.beta);
        let r1 = g.epsilon.pow(2).scale_q(&ScalarQ::from_int(2)).sub(&ab.scale_q(&c("3*(q-q^-1)^2")));
        let r2 = g.nu.scale_q(&c("2*(q+q^-1)")).add(&g.epsilon.scale_q(&c("q-q^-1")));
        if r1.is_zero() && r2.is_zero() {
            return Ok(Family::C);
        }
        return Ok(Family::None);
    }
    if !g.epsilon.is_zero() {
        return Ok(Family::B);
    }
    Ok(Family::None)
}

/// op^2 on the canonical basis of Omega^2, row i = coordinates of op^2(b_i).
pub fn square_on_two_forms(cfg: &HodgeConfig, op: Operator) -> Result<Vec<Vec<Expr>>, HodgeError> {
    let d = cfg.direction;
    (0..degree_data(2, d).dim())
        .map(|i| {
            let b = lift_form(&Form::basis(2, d, i));
            let once = apply_operator(op, cfg, &b)?;
            Ok(apply_operator(op, cfg, &once)?.coords().to_vec())
        })
        .collect()
}

/// op^2 restricted to Omega^2 is a single scalar on each eigenspace of A^(2).
pub fn is_maximally_hermitian(g: &Contraction, d: Direction, op: Operator) -> Result<bool, HodgeError> {
    if !is_real_hermitian(g, op)? {
        return Err(HodgeError::NotRealHermitian(format!("{op:?}")));
    }
    let cfg = sym_cfg(g, d);
    let m = square_on_two_forms(&cfg, op)?;
    let lams = &degree_data(2, d).eigenvalues;
    for (i, row) in m.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if i != j && !x.is_zero() {
                return Ok(false);
            }
            if i != j && lams[i] == lams[j] && m[i][i] != m[j][j] {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

/// Sign of an expression that is a single term with even exponents in
/// real symbols, evaluated at the sample point.
pub fn definite_sign(x: &Expr) -> Result<i32, HodgeError> {
    let (mono, coeff) = x.as_monomial().ok_or_else(|| HodgeError::Undecidable(x.to_string()))?;
    for v in super::expr::VARS {
        let e = mono[v.index()];
        if e != 0 && (!v.is_real() || e % 2 != 0) {
            return Err(HodgeError::Undecidable(x.to_string()));
        }
    }
    coeff.sign_at(&sample_q()).ok_or_else(|| HodgeError::Undecidable(x.to_string()))
}

/// det_q Gamma = Gamma(i w- (x) w+ (x) w0 (x) wz, i w- ^ w+ ^ w0 ^ wz) and its sign.
pub fn detq_and_sign(cfg: &HodgeConfig) -> Result<(Expr, i32), HodgeError> {
    use Label::*;
    let i_e: Tensor<Expr> = Tensor::basis(&[Minus, Plus, Zero, Z]).scale_q(&ScalarQ::i());
    let i_vol = Form::antisymmetrize(&i_e, cfg.direction)?;
    let det = contract(&cfg.contraction.matrix(), &i_e, i_vol.tensor())?.scalar_value();
    if det.is_zero() {
        return Err(HodgeError::ZeroDeterminant);
    }
    let sign = definite_sign(&det)?;
    Ok((det, sign))
}

/// The positive m with m^2 alpha beta epsilon^2 = 1.
pub fn normalize_m(g: &Contraction) -> Result<Expr, HodgeError> {
    let x = g.alpha.mul(&g.beta).mul(&g.epsilon.pow(2));
    if x.is_zero() {
        return Err(HodgeError::NotNormalizable);
    }
    let root = x.sqrt_monomial().ok_or(HodgeError::NotNormalizable)?;
    let m = root.inv_monomial().ok_or(HodgeError::NotNormalizable)?;
    let (_, coeff) = m.as_monomial().unwrap();
    match coeff.sign_at(&sample_q()) {
        Some(1) => Ok(m),
        Some(_) => Ok(m.neg()),
        None => Err(HodgeError::NotNormalizable),
    }
}

/// Symbolic obstruction to maximal hermitianity away from nu = 0. For a
/// real hermitian contraction with free nu, epsilon, gamma, the entries
/// (phi+ -> kappa-) and (phi- -> kappa+) of op^2 on Omega^2 have the form
/// m^2 alpha^2 nu (x_i epsilon + y_i nu). If the 2x2 matrix (x_i, y_i) is
/// invertible, both vanish only for nu = 0 (given nu != 0 they would force
/// epsilon = nu = 0), so every real hermitian contraction with nu != 0 fails
/// to be maximally hermitian. Returns whether this structure holds.
pub fn nonzero_nu_obstruction(d: Direction, op: Operator) -> Result<bool, HodgeError> {
    let g = Contraction::real_hermitian_symbolic();
    let cfg = sym_cfg(&g, d);
    let sq = square_on_two_forms(&cfg, op)?;
    let data = degree_data(2, d);
    let idx = |n: &str| data.index_of(n).expect("basis name");
    let base = Expr::monomial(Var::M, 2).mul(&Expr::monomial(Var::AlphaR, 2)).mul(&g.nu);
    let me = base.mul(&g.epsilon).as_monomial().unwrap().0;
    let mn = base.mul(&g.nu).as_monomial().unwrap().0;
    let mut rows = Vec::new();
    for (a, b) in [("phi+", "kappa-"), ("phi-", "kappa+")] {
        let e = &sq[idx(a)][idx(b)];
        let (x, y) = (e.coeff_of(&me), e.coeff_of(&mn));
        let rebuilt = base.mul(&g.epsilon).scale_q(&x).add(&base.mul(&g.nu).scale_q(&y));
        if *e != rebuilt {
            return Ok(false);
        }
        rows.push((x, y));
    }
    let det = &(&rows[0].0 * &rows[1].1) - &(&rows[0].1 * &rows[1].0);
    Ok(!det.is_zero())
}

/// Elimination argument excluding family (b) (real hermitian for T, with
/// nu, epsilon, gamma nonzero) from maximal hermitianity of op. The
/// (phi+ -> kappa-) entry of op^2 forces epsilon = c nu and the cubic
/// relation then fixes t = nu^2/alpha^2. With y = nu gamma/alpha^2, the
/// (psi+ -> psi-) entry and the nu-gamma relation become two quadratics in y;
/// returns true when their resultant is nonzero, so no such contraction has
/// a diagonal op^2.
pub fn family_b_elimination(d: Direction, op: Operator) -> Result<bool, HodgeError> {
    let g = Contraction::real_hermitian_symbolic();
    let sq = square_on_two_forms(&sym_cfg(&g, d), op)?;
    let data = degree_data(2, d);
    let idx = |n: &str| data.index_of(n).expect("basis name");
    let (m, al, nu, eps, ga) = (Expr::var(Var::M), Expr::var(Var::AlphaR), Expr::var(Var::NuR), g.epsilon.clone(), g.gamma.clone());
    let m2 = m.pow(2);
    let a2 = m2.mul(&al.pow(2));

    let e1 = &sq[idx("phi+")][idx("kappa-")];
    let Some([x1, y1]) = split(e1, &[a2.mul(&nu).mul(&eps), a2.mul(&nu).mul(&nu)]) else {
        return Ok(false);
    };
    if x1.is_zero() {
        return Ok(false);
    }
    let cr = -(&y1 / &x1);
    let q2 = ScalarQ::q_pow(2);
    let k = &c("q^2-q^-2") - &(&c("(q-q^-1)^2") * &cr);
    let t = -(&(&q2 * &k) / &cr.pow(3));

    let e2 = &sq[idx("psi+")][idx("psi-")];
    let shapes = [m2.mul(&al.pow(4)), a2.mul(&nu).mul(&ga), a2.mul(&eps.pow(2)), m2.mul(&nu.pow(2)).mul(&ga.pow(2)), m2.mul(&nu).mul(&eps.pow(2)).mul(&ga), m2.mul(&eps.pow(4))];
    let Some([ca, cb, cc, cd, ce, cf]) = split(e2, &shapes) else {
        return Ok(false);
    };
    let c2 = cr.pow(2);
    let entry = [&(&ca + &(&(&cc * &c2) * &t)) + &(&(&cf * &c2.pow(2)) * &t.pow(2)), &cb + &(&(&ce * &c2) * &t), cd];
    let quartic = [-(&(&q2 * &t) * &(&(&c("q^2-q^-2") * &cr) + &c("2*(q+q^-1)^2"))), -(&q2 * &c("(q-q^-1)^2")), ScalarQ::one()];
    Ok(!resultant2(&entry, &quartic).is_zero())
}

/// Coefficients of x on the given monomials, when x is exactly their span.
fn split<const N: usize>(x: &Expr, shapes: &[Expr; N]) -> Option<[ScalarQ; N]> {
    let coeffs: [ScalarQ; N] = std::array::from_fn(|i| x.coeff_of(&shapes[i].as_monomial().expect("monomial shape").0));
    let mut rebuilt = Expr::zero();
    for (s, k) in shapes.iter().zip(&coeffs) {
        rebuilt = rebuilt.add(&s.scale_q(k));
    }
    (rebuilt == *x).then_some(coeffs)
}

/// Resultant of a0 + a1 y + a2 y^2 and b0 + b1 y + b2 y^2.
fn resultant2(a: &[ScalarQ; 3], b: &[ScalarQ; 3]) -> ScalarQ {
    let d20 = &(&a[2] * &b[0]) - &(&a[0] * &b[2]);
    let d21 = &(&a[2] * &b[1]) - &(&a[1] * &b[2]);
    let d10 = &(&a[1] * &b[0]) - &(&a[0] * &b[1]);
    &(&d20 * &d20) - &(&d21 * &d10)
}

/// Family (b) cannot be maximally hermitian for op.
pub fn family_b_excluded(d: Direction, op: Operator) -> Result<bool, HodgeError> {
    Ok(nonzero_nu_obstruction(d, op)? || family_b_elimination(d, op)?)
}

/// lambda_mu, the eigenvalue of A^(4) on the top form.
pub fn top_eigenvalue(d: Direction) -> ScalarQ {
    degree_data(4, d).eigenvalues[0].clone()
}

/// The closed form -2(q+q^-1)^2(q^2+1+q^-2) m^2 alpha beta epsilon^2.
pub fn gamma_mu_mu_closed_form(g: &Contraction, m: &Expr) -> Expr {
    m.pow(2).mul(&g.alpha).mul(&g.beta).mul(&g.epsilon.pow(2)).scale_q(&c("-2*(q+q^-1)^2*(q^2+1+q^-2)"))
}

#[derive(Clone, Debug, Serialize)]
pub struct IdentityCheck {
    pub name: &'static str,
    pub direction: Direction,
    pub form: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct DualityReport {
    pub sign: i32,
    pub checks: Vec<IdentityCheck>,
}

impl DualityReport {
    pub fn all_hold(&self) -> bool {
        self.checks.iter().all(|c| c.holds)
    }

    pub fn failures(&self) -> Vec<&IdentityCheck> {
        self.checks.iter().filter(|c| !c.holds).collect()
    }
}

fn check(name: &'static str, d: Direction, form: &str, lhs: &Form<Expr>, rhs: &Form<Expr>) -> IdentityCheck {
    let holds = lhs == rhs;
    IdentityCheck { name, direction: d, form: form.to_string(), holds, detail: (!holds).then(|| format!("lhs = {lhs}; rhs = {rhs}")) }
}

fn parity(k: usize) -> ScalarQ {
    ScalarQ::from_int(if (k * (4 - k)).is_multiple_of(2) { 1 } else { -1 })
}

/// Runs the duality identities on every canonical basis form of every
/// degree in both directions, with the given contraction and scale m:
/// the square identity T^2 xi = (-1)^{k(4-k)} sgn (l_xi / l_xi*) xi,
/// star compatibility l_xi* (T xi)^* = l_xi T(xi^*), the mixed
/// compositions T+ T- = T- T+ = (-1)^{k(4-k)} sgn, and on degrees 1..3
/// L = T together with star compatibility of L.
pub fn verify_duality_identities(g: &Contraction, m: &Expr) -> Result<DualityReport, HodgeError> {
    let base = HodgeConfig::new(g.clone(), m.clone(), Direction::Plus);
    let (_, sign) = detq_and_sign(&base)?;
    let sgn = ScalarQ::from_int(sign as i64);
    let mut checks = Vec::new();
    for d in BOTH_DIRECTIONS {
        let cfg = base.with_direction(d);
        let other = base.with_direction(d.opposite());
        for k in 0..=4 {
            let data = degree_data(k, d);
            for (i, name) in data.names.iter().enumerate() {
                let xi = lift_form(&Form::basis(k, d, i));
                let lam = &data.eigenvalues[i];
                let xi_star = xi.star();
                let lam_star = xi_star.eigenvalue().expect("eigenform");
                let t = hodge_t(&cfg, &xi)?;
                let tt = hodge_t(&cfg, &t)?;
                let factor = &(&parity(k) * &sgn) * &(lam / &lam_star);
                checks.push(check("square_identity", d, name, &tt, &xi.scale_q(&factor)));
                let lhs = t.star().scale_q(&lam_star);
                let rhs = hodge_t(&cfg, &xi_star)?.scale_q(lam);
                checks.push(check("star_compatibility", d, name, &lhs, &rhs));
                let target = xi.scale_q(&(&parity(k) * &sgn));
                let via_other = hodge_t(&other, &to_direction(&xi, d.opposite())?)?;
                let mixed_a = hodge_t(&cfg, &to_direction(&via_other, d)?)?;
                checks.push(check("mixed_composition", d, name, &mixed_a, &target));
                let mixed_b = to_direction(&hodge_t(&other, &to_direction(&t, d.opposite())?)?, d)?;
                checks.push(check("mixed_composition_reversed", d, name, &mixed_b, &target));
                if (1..=3).contains(&k) {
                    let l = apply_operator(Operator::L, &cfg, &xi)?;
                    checks.push(check("l_matches_t", d, name, &l, &t));
                    let lhs = l.star().scale_q(&lam_star);
                    let rhs = apply_operator(Operator::L, &cfg, &xi_star)?.scale_q(lam);
                    checks.push(check("l_star_compatibility", d, name, &lhs, &rhs));
                }
            }
        }
    }
    Ok(DualityReport { sign, checks })
}

/// T^- agrees with T^+ on every canonical degree-k form, comparing both in
/// the plus representation.
pub fn directions_agree(g: &Contraction, m: &Expr, k: usize) -> Result<bool, HodgeError> {
    let plus = HodgeConfig::new(g.clone(), m.clone(), Direction::Plus);
    let minus = HodgeConfig::new(g.clone(), m.clone(), Direction::Minus);
    for i in 0..degree_data(k, Direction::Plus).dim() {
        let xi = lift_form(&Form::basis(k, Direction::Plus, i));
        let tp = hodge_t(&plus, &xi)?;
        let tm = to_direction(&hodge_t(&minus, &to_direction(&xi, Direction::Minus)?)?, Direction::Plus)?;
        if tp != tm {
            return Ok(false);
        }
    }
    Ok(true)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Side {
    Left,
    Right,
}

/// Extension of T to forms with coefficients from one side: the
/// coefficient is carried through untouched.
pub fn star_extend<X: Clone>(cfg: &HodgeConfig, _side: Side, x: &X, omega: &Form<Expr>) -> Result<(X, Form<Expr>), HodgeError> {
    Ok((x.clone(), hodge_t(cfg, omega)?))
}

/// The family-(a) real symbol alpha as an expression.
pub fn alpha_r() -> Expr {
    Expr::var(Var::AlphaR)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reality_examples() {
        let ok = Contraction::from_scalars([c("1"), c("q^2"), c("0"), c("0"), c("0"), c("1")]);
        assert!(is_real(&ok, Operator::T).unwrap().holds);
        let id = Contraction::from_scalars([c("1"), c("1"), c("1"), c("0"), c("0"), c("1")]);
        let v = is_real(&id, Operator::T).unwrap();
        assert!(!v.holds);
        assert!(v.witness.iter().any(|w| w.starts_with("conj(beta)")));
        let cplx = Contraction::from_scalars([c("1"), c("q^2"), c("i"), c("0"), c("0"), c("1")]);
        assert!(is_real(&cplx, Operator::T).unwrap().witness.iter().any(|w| w.starts_with("nu real")));
    }

    #[test]
    fn families() {
        for s in [1, -1] {
            let g = Contraction::family_a_symbolic(s);
            assert!(is_real_hermitian(&g, Operator::T).unwrap());
            assert_eq!(classify_family(&g).unwrap(), Family::A);
        }
        let gc = Contraction::family_c();
        assert!(is_hermitian(&gc, Operator::T).unwrap().holds);
        assert_eq!(classify_family(&gc).unwrap(), Family::C);
        let bad = Contraction::from_scalars([c("1"), c("q^2"), c("0"), c("1"), c("2"), c("1")]);
        assert!(!is_hermitian(&bad, Operator::T).unwrap().holds);
        assert_eq!(classify_family(&bad).unwrap(), Family::None);
    }

    #[test]
    fn determinant_and_scale() {
        for s in [1, -1] {
            let g = Contraction::family_a_symbolic(s);
            let cfg = HodgeConfig::with_symbolic_m(g.clone(), Direction::Plus);
            let (det, sign) = detq_and_sign(&cfg).unwrap();
            assert_eq!(det, Expr::monomial(Var::AlphaR, 4).scale_q(&c("-q^2*(1-q^2)^2")));
            assert_eq!(sign, -1);
            let m = normalize_m(&g).unwrap();
            assert_eq!(m, Expr::monomial(Var::AlphaR, -2).scale_q(&c("1/(q*(1-q^2))")));
            let cfg = HodgeConfig::new(g, m, Direction::Plus);
            assert_eq!(t_top(&cfg).unwrap(), Expr::int(-1));
        }
    }

    #[test]
    fn residual_reductions() {
        assert!(reality_reproduction().unwrap());
        let h = hermitian_reduction().unwrap();
        assert!(h.alpha_real && h.xi_equals_epsilon && h.computed_pair);
        assert!(!h.quoted_pair);
    }

    #[test]
    fn duality_identities_family_a() {
        for s in [1, -1] {
            let g = Contraction::family_a_symbolic(s);
            let m = normalize_m(&g).unwrap();
            let rep = verify_duality_identities(&g, &m).unwrap();
            assert_eq!(rep.sign, -1);
            assert!(rep.all_hold(), "{:?}", rep.failures());
        }
    }

    #[test]
    fn maximal_hermitianity() {
        for d in BOTH_DIRECTIONS {
            for op in [Operator::T, Operator::L] {
                assert!(is_maximally_hermitian(&Contraction::family_a_symbolic(1), d, op).unwrap());
                assert!(is_maximally_hermitian(&Contraction::family_a_symbolic(-1), d, op).unwrap());
                assert!(!is_maximally_hermitian(&Contraction::family_c(), d, op).unwrap());
            }
        }
        let bad = Contraction::from_scalars([c("1"), c("1"), c("0"), c("1"), c("1"), c("1")]);
        assert!(is_maximally_hermitian(&bad, Direction::Plus, Operator::T).is_err());
    }

    #[test]
    fn obstruction_away_from_nu_zero() {
        for d in BOTH_DIRECTIONS {
            assert!(nonzero_nu_obstruction(d, Operator::T).unwrap());
            assert!(!nonzero_nu_obstruction(d, Operator::L).unwrap());
            assert!(family_b_elimination(d, Operator::L).unwrap());
            assert!(family_b_excluded(d, Operator::T).unwrap());
        }
    }

    #[test]
    fn directions_agree_outside_degree_two() {
        let m = Expr::var(Var::M);
        let g = Contraction::real_hermitian_symbolic();
        for k in [0, 1, 4] {
            assert!(directions_agree(&g, &m, k).unwrap(), "degree {k}");
        }
        for s in [1, -1] {
            let g = Contraction::family_a_symbolic(s);
            for k in [0, 1, 3, 4] {
                assert!(directions_agree(&g, &m, k).unwrap(), "family a, degree {k}");
            }
            assert!(!directions_agree(&g, &m, 2).unwrap());
        }
        // hermitian for T^+ only; degree 3 then differs
        let g = Contraction::family_c();
        let minus = HodgeConfig::with_symbolic_m(g.clone(), Direction::Minus);
        assert!(t_hermitian_residuals(&minus).unwrap().iter().any(|(_, r)| !r.is_zero()));
        assert!(!directions_agree(&g, &m, 3).unwrap());
    }

    #[test]
    fn l_conditions_are_linear() {
        let g = Contraction::real_hermitian_symbolic();
        assert!(is_real(&g, Operator::L).unwrap().holds);
        assert!(is_hermitian(&g, Operator::L).unwrap().holds);
        assert!(!is_hermitian(&g, Operator::T).unwrap().holds);
        let bad = Contraction::from_scalars([c("1"), c("q^2"), c("0"), c("1"), c("2"), c("1")]);
        assert!(!is_hermitian(&bad, Operator::L).unwrap().holds);
    }

    #[test]
    fn top_degree_of_l() {
        for s in [1, -1] {
            let g = Contraction::family_a_symbolic(s);
            let m = Expr::var(Var::M);
            for d in BOTH_DIRECTIONS {
                let cfg = HodgeConfig::new(g.clone(), m.clone(), d);
                assert_eq!(gamma_mu_mu(&cfg).unwrap(), gamma_mu_mu_closed_form(&g, &m));
                let l_mu = apply_operator(Operator::L, &cfg, &cfg.mu()).unwrap();
                assert_eq!(l_mu.coords()[0].scale_q(&top_eigenvalue(d)), gamma_mu_mu(&cfg).unwrap().conj());
            }
        }
    }
}
