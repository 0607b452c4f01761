//! Metrics on left-invariant 1-forms and the sigma-metric axioms.
//!
//! A metric is a 4x4 matrix g_ab = g(w_a, w_b) in the basis order
//! (-, +, 0, z). Entries are generic over [`Coeff`] so that the axioms can
//! be checked for a symbolic parameter as well as for a concrete scalar.

use crate::calculus::{Braiding, Direction, Label, BOTH_DIRECTIONS, LABELS};
use crate::exterior::perm::apply_word;
use crate::exterior::Tensor;
use crate::hodge::{Contraction, Expr};
use crate::scalar::{Coeff, ScalarQ};
use serde::Serialize;

#[derive(Clone, Debug, PartialEq)]
pub struct MetricMatrix<C: Coeff = ScalarQ> {
    pub g: [[C; 4]; 4],
}

impl<C: Coeff> MetricMatrix<C> {
    pub fn new(g: [[C; 4]; 4]) -> Self {
        MetricMatrix { g }
    }

    pub fn entry(&self, a: Label, b: Label) -> &C {
        &self.g[a.index()][b.index()]
    }

    /// Pairs (a, b) with nonzero g_ab although n_a + n_b != 0.
    pub fn charge_violations(&self) -> Vec<(Label, Label)> {
        pairs().filter(|&(a, b)| a.charge() + b.charge() != 0 && !self.entry(a, b).is_zero()).collect()
    }

    /// Determinant by cofactor expansion.
    pub fn det(&self) -> C {
        let rows: Vec<Vec<C>> = self.g.iter().map(|r| r.to_vec()).collect();
        det_of(&rows)
    }

    /// g(x) for x in V (x) V, read off the tensor's coordinates.
    pub fn eval2(&self, t: &Tensor<C>) -> C {
        let mut out = C::zero();
        for (idx, c) in t.iter() {
            let (a, b) = ((idx / 4) as usize, (idx % 4) as usize);
            out = out.plus(&c.times(&self.g[a][b]));
        }
        out
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> MetricMatrix<D> {
        MetricMatrix { g: std::array::from_fn(|a| std::array::from_fn(|b| f(&self.g[a][b]))) }
    }
}

fn det_of<C: Coeff>(m: &[Vec<C>]) -> C {
    let n = m.len();
    if n == 1 {
        return m[0][0].clone();
    }
    let mut out = C::zero();
    for (j, head) in m[0].iter().enumerate() {
        if head.is_zero() {
            continue;
        }
        let minor: Vec<Vec<C>> = m[1..].iter().map(|r| r.iter().enumerate().filter(|&(k, _)| k != j).map(|(_, x)| x.clone()).collect()).collect();
        let term = head.times(&det_of(&minor));
        out = if j % 2 == 0 { out.plus(&term) } else { out.minus(&term) };
    }
    out
}

fn pairs() -> impl Iterator<Item = (Label, Label)> {
    LABELS.into_iter().flat_map(|a| LABELS.into_iter().map(move |b| (a, b)))
}

/// g(w_a, w_b) = Gamma(w_a^*, w_b): the star flips the label of the first
/// slot and contributes its sign.
pub fn metric_from_contraction(g: &Contraction) -> MetricMatrix<Expr> {
    MetricMatrix {
        g: std::array::from_fn(|a| {
            let (sign, sa) = Label::from_index(a).star();
            std::array::from_fn(|b| g.entry(sa, Label::from_index(b)).scale_q(&ScalarQ::from_int(sign as i64)))
        }),
    }
}

/// The metric of a family-(a) contraction written through a = -alpha:
/// g(-,+) = q^2 a, g(+,-) = a, g(0,z) = g(z,0) = b(1-q^2)a,
/// g(z,z) = b(q^2+1)a, all other entries zero. Here b = +1 or -1.
pub fn family_a_metric<C: Coeff>(a: &C, b: i32) -> MetricMatrix<C> {
    let sb = ScalarQ::from_int(b as i64);
    let mut g: [[C; 4]; 4] = std::array::from_fn(|_| std::array::from_fn(|_| C::zero()));
    let (m, p, o, z) = (0, 1, 2, 3);
    g[m][p] = a.scale(&ScalarQ::q_pow(2));
    g[p][m] = a.clone();
    g[o][z] = a.scale(&(&sb * &(&ScalarQ::one() - &ScalarQ::q_pow(2))));
    g[z][o] = g[o][z].clone();
    g[z][z] = a.scale(&(&sb * &(&ScalarQ::q_pow(2) + &ScalarQ::one())));
    MetricMatrix { g }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum AxiomStatus {
    Pass,
    Fail,
    /// Holds automatically for constant matrices on invariant forms.
    Structural,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomResult {
    pub axiom: String,
    pub status: AxiomStatus,
    /// Basis pair or triple where the axiom first fails.
    pub counterexample: Option<String>,
}

#[derive(Clone, Debug, Serialize)]
pub struct AxiomReport {
    pub axioms: Vec<AxiomResult>,
}

impl AxiomReport {
    pub fn all_pass(&self) -> bool {
        self.axioms.iter().all(|a| a.status != AxiomStatus::Fail)
    }

    pub fn status(&self, axiom: &str) -> Option<&AxiomStatus> {
        self.axioms.iter().find(|a| a.axiom == axiom).map(|a| &a.status)
    }
}

fn result(axiom: &str, counterexample: Option<String>) -> AxiomResult {
    let status = if counterexample.is_some() { AxiomStatus::Fail } else { AxiomStatus::Pass };
    AxiomResult { axiom: axiom.into(), status, counterexample }
}

fn structural(axiom: &str) -> AxiomResult {
    AxiomResult { axiom: axiom.into(), status: AxiomStatus::Structural, counterexample: None }
}

fn labels(ls: &[Label]) -> String {
    let names: Vec<&str> = ls.iter().map(|l| l.symbol()).collect();
    format!("({})", names.join(","))
}

/// g o sigma = g, comparing the row vector g against g sigma on all 16
/// basis pairs.
pub fn sigma_symmetry_failure<C: Coeff>(g: &MetricMatrix<C>, d: Direction) -> Option<String> {
    let braid = Braiding::get(d);
    pairs().find_map(|(a, b)| {
        let e: Tensor<C> = Tensor::basis(&[a, b]);
        let lhs = g.eval2(&apply_word(&e, &[1], braid));
        (lhs != *g.entry(a, b)).then(|| labels(&[a, b]))
    })
}

/// (g (x) 1) sigma_2 = (1 (x) g) sigma_1^op on all 64 basis triples, where
/// sigma_2 uses direction d and sigma_1 the opposite one.
pub fn braided_compatibility_failure<C: Coeff>(g: &MetricMatrix<C>, d: Direction) -> Option<String> {
    let (bd, bo) = (Braiding::get(d), Braiding::get(d.opposite()));
    for a in LABELS {
        for b in LABELS {
            for c in LABELS {
                let e: Tensor<C> = Tensor::basis(&[a, b, c]);
                let mut left = [C::zero(), C::zero(), C::zero(), C::zero()];
                for (idx, x) in apply_word(&e, &[2], bd).iter() {
                    let ls = Tensor::<C>::labels_of(idx, 3);
                    let v = &mut left[ls[2].index()];
                    *v = v.plus(&x.times(g.entry(ls[0], ls[1])));
                }
                let mut right = [C::zero(), C::zero(), C::zero(), C::zero()];
                for (idx, x) in apply_word(&e, &[1], bo).iter() {
                    let ls = Tensor::<C>::labels_of(idx, 3);
                    let v = &mut right[ls[0].index()];
                    *v = v.plus(&x.times(g.entry(ls[1], ls[2])));
                }
                if left != right {
                    return Some(labels(&[a, b, c]));
                }
            }
        }
    }
    None
}

/// conj g(w_a, w_b) = g(w_b^*, w_a^*), with the star signs pulled out.
pub fn reality_failure<C: Coeff>(g: &MetricMatrix<C>) -> Option<String> {
    pairs().find_map(|(a, b)| {
        let ((sa, ta), (sb, tb)) = (a.star(), b.star());
        let rhs = g.entry(tb, ta).scale(&ScalarQ::from_int((sa * sb) as i64));
        (g.entry(a, b).conj() != rhs).then(|| labels(&[a, b]))
    })
}

/// Runs every sigma-metric axiom. Symmetry and braided compatibility are
/// tested for both directions.
pub fn check_sigma_metric<C: Coeff>(g: &MetricMatrix<C>) -> AxiomReport {
    let mut axioms = vec![structural("bimodule_homomorphism")];
    axioms.push(result("nondegenerate", g.det().is_zero().then(|| "det g = 0".to_string())));
    for d in BOTH_DIRECTIONS {
        axioms.push(result(&format!("sigma_symmetry{}", d.sign_str()), sigma_symmetry_failure(g, d)));
    }
    for d in BOTH_DIRECTIONS {
        axioms.push(result(&format!("braided_compatibility{}", d.sign_str()), braided_compatibility_failure(g, d)));
    }
    axioms.push(result("reality", reality_failure(g)));
    axioms.push(structural("left_covariance"));
    AxiomReport { axioms }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum MetricClass {
    InSigma,
    InGNotSigma,
    NotInG,
}

impl MetricClass {
    pub fn label(self) -> &'static str {
        match self {
            MetricClass::InSigma => "in G_sigma",
            MetricClass::InGNotSigma => "in G minus G_sigma",
            MetricClass::NotInG => "not in G",
        }
    }
}

/// If g is a family-(a) metric, its parameter a and branch b.
pub fn family_a_parameters(g: &MetricMatrix) -> Option<(ScalarQ, i32)> {
    let a = g.entry(Label::Plus, Label::Minus).clone();
    if a.is_zero() || !a.is_real() {
        return None;
    }
    [1, -1].into_iter().find(|&b| family_a_metric(&a, b) == *g).map(|b| (a, b))
}

pub fn classify_metric(g: &MetricMatrix) -> MetricClass {
    if family_a_parameters(g).is_none() {
        return MetricClass::NotInG;
    }
    if check_sigma_metric(g).all_pass() {
        MetricClass::InSigma
    } else {
        MetricClass::InGNotSigma
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::hodge::Var;

    fn sym_a() -> Expr {
        Expr::var(Var::AlphaR)
    }

    #[test]
    fn family_a_contraction_gives_the_metric() {
        for s in [1, -1] {
            let g = metric_from_contraction(&Contraction::family_a_symbolic(s));
            assert_eq!(g, family_a_metric(&sym_a().neg(), -s));
        }
    }

    #[test]
    fn g_minus_plus_is_minus_beta() {
        let g = metric_from_contraction(&Contraction::symbolic());
        assert_eq!(*g.entry(Label::Minus, Label::Plus), Contraction::symbolic().beta.neg());
        assert!(g.charge_violations().is_empty());
    }

    #[test]
    fn exactly_one_branch_is_a_sigma_metric() {
        let sigma = check_sigma_metric(&family_a_metric(&sym_a(), 1));
        assert!(sigma.all_pass(), "{sigma:?}");
        let other = check_sigma_metric(&family_a_metric(&sym_a(), -1));
        assert_eq!(other.status("sigma_symmetry+"), Some(&AxiomStatus::Fail));
        assert_eq!(other.status("reality"), Some(&AxiomStatus::Pass));
        assert_eq!(other.status("nondegenerate"), Some(&AxiomStatus::Pass));
    }

    #[test]
    fn classification() {
        let a = ScalarQ::frac(-3, 2);
        assert_eq!(classify_metric(&family_a_metric(&a, 1)), MetricClass::InSigma);
        assert_eq!(classify_metric(&family_a_metric(&a, -1)), MetricClass::InGNotSigma);
        let id = MetricMatrix::new(std::array::from_fn(|i| std::array::from_fn(|j| ScalarQ::from_int((i == j) as i64))));
        assert_eq!(classify_metric(&id), MetricClass::NotInG);
    }

    fn hermitian_matrix(g: &Contraction) -> bool {
        let m = g.matrix();
        (0..4).all(|a| (0..4).all(|b| m[a][b].conj() == m[b][a]))
    }

    #[test]
    fn reality_matches_a_hermitian_contraction_matrix() {
        for g in [Contraction::real_hermitian_symbolic(), Contraction::real_symbolic(), Contraction::symbolic(), Contraction::family_a_symbolic(1)] {
            assert_eq!(reality_failure(&metric_from_contraction(&g)).is_none(), hermitian_matrix(&g));
        }
        assert!(reality_failure(&metric_from_contraction(&Contraction::real_hermitian_symbolic())).is_none());
        assert!(reality_failure(&metric_from_contraction(&Contraction::symbolic())).is_some());
    }
}
