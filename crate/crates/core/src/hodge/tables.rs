//! Closed-form reference actions of T and their comparison against the
//! computed operator.

use super::{hodge_t, named_form, Contraction, Expr, HodgeConfig, HodgeError, Var};
use crate::calculus::Direction;
use crate::exterior::{degree_data, Form};
use crate::scalar::{parse_scalar, ScalarQ};
use serde::Serialize;

fn c(text: &str) -> ScalarQ {
    parse_scalar(text).expect("internal scalar literal")
}

/// i m
fn im() -> Expr {
    Expr::var(Var::M).scale_q(&ScalarQ::i())
}

/// T(row form) = sum_j entries[row][j] * (output basis form j).
#[derive(Clone, Debug)]
pub struct ReferenceTable {
    pub name: &'static str,
    pub contraction: Contraction,
    pub direction: Direction,
    pub rows: Vec<(String, Form<Expr>)>,
    pub out_degree: usize,
    pub entries: Vec<Vec<Expr>>,
}

#[derive(Clone, Debug, Serialize)]
pub struct EntryMismatch {
    pub table: &'static str,
    pub row: String,
    pub column: String,
    pub expected: String,
    pub computed: String,
}

impl ReferenceTable {
    pub fn columns(&self) -> Vec<&'static str> {
        degree_data(self.out_degree, self.direction).names.clone()
    }

    /// Computed entries with a symbolic real m.
    pub fn computed(&self) -> Result<Vec<Vec<Expr>>, HodgeError> {
        let cfg = HodgeConfig::with_symbolic_m(self.contraction.clone(), self.direction);
        self.rows.iter().map(|(_, f)| Ok(hodge_t(&cfg, f)?.coords().to_vec())).collect()
    }

    pub fn mismatches(&self) -> Result<Vec<EntryMismatch>, HodgeError> {
        let got = self.computed()?;
        let names = &degree_data(self.out_degree, self.direction).names;
        let mut out = Vec::new();
        for ((row, _), (exp, comp)) in self.rows.iter().zip(self.entries.iter().zip(&got)) {
            for (j, (e, g)) in exp.iter().zip(comp).enumerate() {
                if e != g {
                    out.push(EntryMismatch { table: self.name, row: row.clone(), column: names[j].to_string(), expected: e.to_string(), computed: g.to_string() });
                }
            }
        }
        Ok(out)
    }
}

fn rows(k: usize, d: Direction, names: &[&str]) -> Vec<(String, Form<Expr>)> {
    names.iter().map(|n| (n.to_string(), named_form(k, d, n))).collect()
}

/// Place (column name, value) pairs into a full row of the output basis.
fn sparse_row(k: usize, d: Direction, items: Vec<(&str, Expr)>) -> Vec<Expr> {
    let data = degree_data(k, d);
    let mut row = vec![Expr::zero(); data.dim()];
    for (n, v) in items {
        row[data.index_of(n).expect("basis name")] = v;
    }
    row
}

/// T(1) = mu, with mu = i m vol.
pub fn degree_zero_table() -> ReferenceTable {
    let d = Direction::Plus;
    ReferenceTable {
        name: "degree_zero_value",
        contraction: Contraction::symbolic(),
        direction: d,
        rows: vec![("1".into(), Form::one(d))],
        out_degree: 4,
        entries: vec![vec![im()]],
    }
}

/// T(mu) = m^2 (alpha beta)^* (nu gamma - epsilon xi)^*.
pub fn top_degree_table() -> ReferenceTable {
    let d = Direction::Plus;
    let g = Contraction::symbolic();
    let cfg = HodgeConfig::with_symbolic_m(g.clone(), d);
    let ab = g.alpha.mul(&g.beta);
    let det = g.nu.mul(&g.gamma).sub(&g.epsilon.mul(&g.xi));
    let val = Expr::monomial(Var::M, 2).mul(&ab.conj()).mul(&det.conj());
    ReferenceTable { name: "top_degree_value", contraction: g, direction: d, rows: vec![("mu".into(), cfg.mu())], out_degree: 0, entries: vec![vec![val]] }
}

/// Action on 1-forms for a fully complex contraction.
pub fn degree_one_table() -> ReferenceTable {
    let d = Direction::Plus;
    let g = Contraction::symbolic();
    let k = |x: &Expr, s: i64| im().mul(&x.conj()).scale_q(&ScalarQ::from_int(s));
    let entries = vec![
        sparse_row(3, d, vec![("chi+", k(&g.alpha, 1))]),
        sparse_row(3, d, vec![("chi-", k(&g.beta, -1))]),
        sparse_row(3, d, vec![("chi0", k(&g.nu, -1)), ("chiz", k(&g.epsilon, 1))]),
        sparse_row(3, d, vec![("chi0", k(&g.xi, -1)), ("chiz", k(&g.gamma, 1))]),
    ];
    ReferenceTable { name: "degree_one_table", contraction: g, direction: d, rows: rows(1, d, &["w-", "w+", "w0", "wz"]), out_degree: 3, entries }
}

/// Action on 3-forms for a real contraction (beta^* = q^2 alpha, the
/// other four real).
pub fn degree_three_table() -> ReferenceTable {
    let d = Direction::Plus;
    let g = Contraction::real_symbolic();
    let (al, be, nu, ep, xi, ga) = (&g.alpha, &g.beta, &g.nu, &g.epsilon, &g.xi, &g.gamma);
    let det = nu.mul(ga).sub(&ep.mul(xi));
    let abs = al.mul(be).conj();
    let chi_m = im().mul(&be.conj()).mul(&det).scale_q(&c("-q^-2"));
    let chi_p = im().mul(&al.conj()).mul(&det).scale_q(&c("q^2"));
    let inner0 = ga.scale_q(&c("1-q^2-q^-2")).sub(&nu.scale_q(&c("2*(q+q^-1)^2"))).sub(&xi.scale_q(&c("q^2-q^-2")));
    let chi0_0 = im().mul(&ga.pow(2).mul(nu).add(&abs.mul(&inner0)));
    let chi0_z = im().mul(&abs).mul(xi);
    let innerz = nu.scale_q(&c("q^2-q^-2")).add(&ep.scale_q(&c("1-q^2-q^-2")));
    let chiz_0 = im().mul(&ep.pow(2).mul(xi).add(&abs.mul(&innerz)));
    let chiz_z = im().mul(&abs).mul(nu);
    let entries = vec![
        sparse_row(1, d, vec![("w+", chi_m)]),
        sparse_row(1, d, vec![("w-", chi_p)]),
        sparse_row(1, d, vec![("w0", chi0_0), ("wz", chi0_z)]),
        sparse_row(1, d, vec![("w0", chiz_0), ("wz", chiz_z)]),
    ];
    ReferenceTable { name: "degree_three_table", contraction: g, direction: d, rows: rows(3, d, &["chi-", "chi+", "chi0", "chiz"]), out_degree: 1, entries }
}

/// Block (phi+, kappa-) of the action on 2-forms, real hermitian parameters.
pub fn two_form_phi_plus_block() -> ReferenceTable {
    let d = Direction::Plus;
    let g = Contraction::real_hermitian_symbolic();
    let (al, nu, ep, ga) = (&g.alpha, &g.nu, &g.epsilon, &g.gamma);
    let pre = im().mul(al).scale_q(&c("-1"));
    let a11 = ep.scale_q(&c("q^2")).add(&nu.scale_q(&c("(q^2+1-q^-2)/(q^2-1)")));
    let a12 = nu.scale_q(&c("1/(1-q^2)"));
    let a21 = ep.scale_q(&c("q^4+q^2")).add(&ga.scale_q(&c("q^4-q^2"))).add(&nu.scale_q(&c("(q^6-q^2+1)/(q^2-1)")));
    let a22 = ep.neg().add(&nu.scale_q(&c("1/(1-q^2)")));
    let entries = vec![sparse_row(2, d, vec![("phi+", pre.mul(&a11)), ("kappa-", pre.mul(&a12))]), sparse_row(2, d, vec![("phi+", pre.mul(&a21)), ("kappa-", pre.mul(&a22))])];
    ReferenceTable { name: "two_form_phi_plus_block", contraction: g, direction: d, rows: rows(2, d, &["phi+", "kappa-"]), out_degree: 2, entries }
}

/// Block (phi-, kappa+) of the action on 2-forms, real hermitian parameters.
pub fn two_form_phi_minus_block() -> ReferenceTable {
    let d = Direction::Plus;
    let g = Contraction::real_hermitian_symbolic();
    let (be, nu, ep, ga) = (&g.beta, &g.nu, &g.epsilon, &g.gamma);
    let pre = im().mul(be).scale_q(&c("-1"));
    let a11 = ep.scale_q(&c("-q^-2")).add(&nu.scale_q(&c("(q^-2+1-q^2)/(q^-2-1)")));
    let a12 = nu.scale_q(&c("1/(1-q^-2)"));
    let a21 = ep.scale_q(&c("-(q^-4+q^-2)")).add(&ga.scale_q(&c("q^-4-q^-2"))).add(&nu.scale_q(&c("(q^-6-q^-2+1)/(q^-2-1)")));
    let a22 = ep.add(&nu.scale_q(&c("1/(1-q^-2)")));
    let entries = vec![sparse_row(2, d, vec![("phi-", pre.mul(&a11)), ("kappa+", pre.mul(&a12))]), sparse_row(2, d, vec![("phi-", pre.mul(&a21)), ("kappa+", pre.mul(&a22))])];
    ReferenceTable { name: "two_form_phi_minus_block", contraction: g, direction: d, rows: rows(2, d, &["phi-", "kappa+"]), out_degree: 2, entries }
}

/// Block (psi-, psi+) of the action on 2-forms, real hermitian
/// parameters, with coefficients as quoted.
pub fn two_form_psi_block() -> ReferenceTable {
    two_form_psi_block_with("(1-q^-2-q^-4)/(1-q^-2)", "two_form_psi_block")
}

/// The psi block with the epsilon^2 coefficient of T(psi+) on psi-
/// recomputed; all other entries as quoted.
pub fn two_form_psi_block_corrected() -> ReferenceTable {
    two_form_psi_block_with("(1-q^-2+q^-4)/(1-q^-2)", "two_form_psi_block_corrected")
}

fn two_form_psi_block_with(pp_m_eps2: &str, name: &'static str) -> ReferenceTable {
    let d = Direction::Plus;
    let g = Contraction::real_hermitian_symbolic();
    let (al, be, nu, ep, ga) = (&g.alpha, &g.beta, &g.nu, &g.epsilon, &g.gamma);
    let ng = nu.mul(ga);
    let e2 = ep.pow(2);
    let ab = al.mul(be);
    let pre = im().scale_q(&c("-1/(1+q^2)"));
    let comb = |a: &str, b: &str, cc: &str| pre.mul(&ng.scale_q(&c(a)).add(&e2.scale_q(&c(b))).add(&ab.scale_q(&c(cc))));
    let mm = comb("(1-q^2-q^-2)/(1-q^-2)", "(2-q^2)/(1-q^-2)", "(q^2-1)*(q^2+q^-2-1)");
    let mp = comb("(2*q^2-1)/(1-q^-2)", "(-q^4+q^2-1)/(1-q^-2)", "(q^2-1)*(q^4+1-q^2)");
    let pm = comb("(1-2*q^-2)/(1-q^-2)", pp_m_eps2, "(q^-2-1)*(q^2+q^-2-1)");
    let pp = comb("(q^2-1+q^-2)/(1-q^-2)", "(q^-2-2)/(1-q^-2)", "(1-q^2)*(q^2+q^-2-1)");
    let entries = vec![sparse_row(2, d, vec![("psi-", mm), ("psi+", mp)]), sparse_row(2, d, vec![("psi-", pm), ("psi+", pp)])];
    ReferenceTable { name, contraction: g, direction: d, rows: rows(2, d, &["psi-", "psi+"]), out_degree: 2, entries }
}

/// Diagonal action on 2-forms for family (a), plus direction.
pub fn family_a_two_forms_plus(s: i32) -> ReferenceTable {
    let d = Direction::Plus;
    let g = Contraction::family_a_symbolic(s);
    let ae = g.alpha.mul(&g.epsilon);
    let ab = g.alpha.mul(&g.beta);
    let vals = [
        ("phi+", im().mul(&ae).scale_q(&c("-q^2"))),
        ("kappa+", im().mul(&ae).scale_q(&c("-q^2"))),
        ("psi+", im().mul(&ab).scale_q(&c("q^2-1"))),
        ("phi-", im().mul(&ae)),
        ("kappa-", im().mul(&ae)),
        ("psi-", im().mul(&ab).scale_q(&c("-(1-q^-2)"))),
    ];
    let name = if s > 0 { "family_a_two_forms_plus_s_positive" } else { "family_a_two_forms_plus_s_negative" };
    diagonal_table(name, g, d, &vals)
}

/// Diagonal action on 2-forms for family (a), minus direction.
pub fn family_a_two_forms_minus(s: i32) -> ReferenceTable {
    let d = Direction::Minus;
    let g = Contraction::family_a_symbolic(s);
    let ae = g.alpha.mul(&g.epsilon);
    let ab = g.alpha.mul(&g.beta);
    let vals = [
        ("phi+", im().mul(&ae).scale_q(&c("-1"))),
        ("kappa+", im().mul(&ae).scale_q(&c("-1"))),
        ("psi+", im().mul(&ab).scale_q(&c("-(q^-2-1)"))),
        ("phi-", im().mul(&ae).scale_q(&c("q^2"))),
        ("kappa-", im().mul(&ae).scale_q(&c("q^2"))),
        ("psi-", im().mul(&ab).scale_q(&c("1-q^2"))),
    ];
    let name = if s > 0 { "family_a_two_forms_minus_s_positive" } else { "family_a_two_forms_minus_s_negative" };
    diagonal_table(name, g, d, &vals)
}

fn diagonal_table(name: &'static str, g: Contraction, d: Direction, vals: &[(&str, Expr)]) -> ReferenceTable {
    let names: Vec<&str> = vals.iter().map(|(n, _)| *n).collect();
    let entries = vals.iter().map(|(n, v)| sparse_row(2, d, vec![(n, v.clone())])).collect();
    ReferenceTable { name, contraction: g, direction: d, rows: rows(2, d, &names), out_degree: 2, entries }
}

/// Every reference table, in its quoted form.
pub fn all_reference_tables() -> Vec<ReferenceTable> {
    vec![
        degree_zero_table(),
        top_degree_table(),
        degree_one_table(),
        degree_three_table(),
        two_form_phi_plus_block(),
        two_form_phi_minus_block(),
        two_form_psi_block(),
        family_a_two_forms_plus(1),
        family_a_two_forms_plus(-1),
        family_a_two_forms_minus(1),
        family_a_two_forms_minus(-1),
    ]
}

#[cfg(test)]
mod tests {
    use super::*;

    fn assert_matches(t: ReferenceTable) {
        let m = t.mismatches().unwrap();
        assert!(m.is_empty(), "{}: {:?}", t.name, m);
    }

    #[test]
    fn low_and_top_degree() {
        assert_matches(degree_zero_table());
        assert_matches(top_degree_table());
        assert_matches(degree_one_table());
    }

    #[test]
    fn three_forms() {
        assert_matches(degree_three_table());
    }

    #[test]
    fn two_form_blocks() {
        assert_matches(two_form_phi_plus_block());
        assert_matches(two_form_phi_minus_block());
        assert_matches(two_form_psi_block_corrected());
        let printed = two_form_psi_block().mismatches().unwrap();
        assert_eq!(printed.len(), 1);
        assert_eq!((printed[0].row.as_str(), printed[0].column.as_str()), ("psi+", "psi-"));
    }

    #[test]
    fn family_a_diagonal() {
        for s in [1, -1] {
            assert_matches(family_a_two_forms_plus(s));
            assert_matches(family_a_two_forms_minus(s));
        }
    }
}
