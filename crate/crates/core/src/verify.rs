//! Named identity checks grouped into suites.
//!
//! Every identity is recomputed from scratch. Reference values that the
//! computation does not reproduce are reported separately as discrepancies
//! and do not count as failures; the identity they are checked against is
//! the recomputed one.

use crate::calculus::{Braiding, Direction, Label, BOTH_DIRECTIONS, LABELS};
use crate::exterior::antisym::{antisymmetrizer_by_cosets, antisymmetrizer_by_sum};
use crate::exterior::linalg::rank_of;
use crate::exterior::perm::apply_word;
use crate::exterior::{antisymmetrizer, degree_data, shuffle_operator, spectral_report, Form, Tensor};
use crate::hodge::tables::{all_reference_tables, two_form_psi_block, two_form_psi_block_corrected, ReferenceTable};
use crate::hodge::{self, apply_operator, Contraction, Expr, Family, HodgeConfig, HodgeError, Operator, Var};
use crate::laplacian::{self, BoxSide, Branch};
use crate::metric::{self, AxiomStatus, MetricClass, MetricMatrix};
use crate::qalgebra::{self, AlgebraElement, Gen, UqOp};
use crate::scalar::{parse_scalar, GaussRat, ScalarQ};
use num_rational::BigRational;
use serde::Serialize;
use std::fmt::Display;

pub const SCHEMA_VERSION: u32 = 1;

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "lowercase")]
pub enum Suite {
    Braiding,
    Exterior,
    Hodge,
    Metric,
    Oracle,
    Laplacian,
}

impl Suite {
    pub const ALL: [Suite; 6] = [Suite::Braiding, Suite::Exterior, Suite::Hodge, Suite::Metric, Suite::Oracle, Suite::Laplacian];

    pub fn name(self) -> &'static str {
        match self {
            Suite::Braiding => "braiding",
            Suite::Exterior => "exterior",
            Suite::Hodge => "hodge",
            Suite::Metric => "metric",
            Suite::Oracle => "oracle",
            Suite::Laplacian => "laplacian",
        }
    }

    pub fn parse(t: &str) -> Option<Suite> {
        Suite::ALL.into_iter().find(|s| s.name() == t.trim())
    }

    /// Comma-separated suite names, or "all".
    pub fn parse_list(t: &str) -> Option<Vec<Suite>> {
        if t.trim() == "all" {
            return Some(Suite::ALL.to_vec());
        }
        let mut out: Vec<Suite> = t.split(',').map(Suite::parse).collect::<Option<_>>()?;
        out.sort();
        out.dedup();
        (!out.is_empty()).then_some(out)
    }
}

#[derive(Clone, Debug, Serialize)]
pub struct Identity {
    pub name: String,
    pub holds: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub counterexample: Option<String>,
}

/// A reference value that the computation contradicts.
#[derive(Clone, Debug, Serialize)]
pub struct Discrepancy {
    pub name: String,
    pub printed: String,
    pub computed: String,
}

#[derive(Clone, Debug, Serialize)]
pub struct SuiteReport {
    pub suite: Suite,
    pub identities: Vec<Identity>,
    pub discrepancies: Vec<Discrepancy>,
}

#[derive(Clone, Debug, Serialize)]
pub struct VerifyReport {
    pub schema_version: u32,
    pub total: usize,
    pub passed: usize,
    pub all_pass: bool,
    pub suites: Vec<SuiteReport>,
}

impl VerifyReport {
    pub fn failures(&self) -> Vec<(Suite, &Identity)> {
        self.suites.iter().flat_map(|s| s.identities.iter().filter(|i| !i.holds).map(move |i| (s.suite, i))).collect()
    }

    pub fn identity(&self, name: &str) -> Option<&Identity> {
        self.suites.iter().flat_map(|s| &s.identities).find(|i| i.name == name)
    }
}

/// A single replaced braiding coefficient, for exercising the failure path.
#[derive(Clone, Debug, PartialEq)]
pub struct SigmaFault {
    pub direction: Direction,
    pub from: usize,
    pub to: usize,
    pub value: ScalarQ,
}

impl SigmaFault {
    /// sigma+(w- (x) w0) picks up 2 w0 (x) w- instead of w0 (x) w-.
    pub fn example() -> Self {
        SigmaFault { direction: Direction::Plus, from: 2, to: 8, value: ScalarQ::from_int(2) }
    }

    /// "FROM,TO,VALUE" with pair indices 4a+b in basis order (-, +, 0, z),
    /// optionally prefixed by "-:" for the minus braiding.
    pub fn parse(t: &str) -> Option<Self> {
        let (direction, rest) = match t.split_once(':') {
            Some((d, r)) => (Direction::parse(d)?, r),
            None => (Direction::Plus, t),
        };
        let mut it = rest.splitn(3, ',');
        let from: usize = it.next()?.trim().parse().ok()?;
        let to: usize = it.next()?.trim().parse().ok()?;
        let value = parse_scalar(it.next()?).ok()?;
        (from < 16 && to < 16).then_some(SigmaFault { direction, from, to, value })
    }
}

#[derive(Clone, Debug, Default)]
pub struct VerifyOptions {
    pub sigma_fault: Option<SigmaFault>,
}

pub fn run(suites: &[Suite], opts: &VerifyOptions) -> VerifyReport {
    let reports: Vec<SuiteReport> = std::thread::scope(|scope| {
        let handles: Vec<_> = suites.iter().map(|s| scope.spawn(move || run_suite(*s, opts))).collect();
        handles.into_iter().map(|h| h.join().expect("suite thread panicked")).collect()
    });
    let total = reports.iter().map(|r| r.identities.len()).sum();
    let passed = reports.iter().flat_map(|r| &r.identities).filter(|i| i.holds).count();
    VerifyReport { schema_version: SCHEMA_VERSION, total, passed, all_pass: passed == total, suites: reports }
}

pub fn run_suite(suite: Suite, opts: &VerifyOptions) -> SuiteReport {
    let mut c = Collector::default();
    match suite {
        Suite::Braiding => braiding_suite(&mut c, opts),
        Suite::Exterior => exterior_suite(&mut c),
        Suite::Hodge => hodge_suite(&mut c),
        Suite::Metric => metric_suite(&mut c),
        Suite::Oracle => oracle_suite(&mut c),
        Suite::Laplacian => laplacian_suite(&mut c),
    }
    SuiteReport { suite, identities: c.identities, discrepancies: c.discrepancies }
}

#[derive(Default)]
struct Collector {
    identities: Vec<Identity>,
    discrepancies: Vec<Discrepancy>,
}

impl Collector {
    /// `None` means the identity holds; `Some(x)` is a counterexample.
    fn add(&mut self, name: impl Into<String>, counterexample: Option<String>) {
        self.identities.push(Identity { name: name.into(), holds: counterexample.is_none(), counterexample });
    }

    fn check(&mut self, name: impl Into<String>, holds: bool, why: impl FnOnce() -> String) {
        self.add(name, (!holds).then(why));
    }

    fn check_result<E: Display>(&mut self, name: impl Into<String>, r: Result<bool, E>, why: impl FnOnce() -> String) {
        match r {
            Ok(h) => self.check(name, h, why),
            Err(e) => self.add(name, Some(format!("error: {e}"))),
        }
    }

    fn discrepancy(&mut self, name: impl Into<String>, printed: impl Into<String>, computed: impl Into<String>) {
        self.discrepancies.push(Discrepancy { name: name.into(), printed: printed.into(), computed: computed.into() });
    }
}

fn sq(t: &str) -> ScalarQ {
    parse_scalar(t).expect("internal scalar literal")
}

fn dir_tag(d: Direction) -> &'static str {
    match d {
        Direction::Plus => "plus",
        Direction::Minus => "minus",
    }
}

fn labels_str(labels: &[Label]) -> String {
    labels.iter().map(|l| l.symbol()).collect::<Vec<_>>().join(" (x) ")
}

fn pair_str(i: usize) -> String {
    labels_str(&[Label::from_index(i / 4), Label::from_index(i % 4)])
}

// ---- braiding ----

type Dense = Vec<Vec<ScalarQ>>;

fn dense_mul(a: &Dense, b: &Dense) -> Dense {
    let n = a.len();
    let mut out = vec![vec![ScalarQ::zero(); n]; n];
    for i in 0..n {
        for k in 0..n {
            if a[i][k].is_zero() {
                continue;
            }
            for j in 0..n {
                if !b[k][j].is_zero() {
                    out[i][j] = &out[i][j] + &(&a[i][k] * &b[k][j]);
                }
            }
        }
    }
    out
}

fn shifted(m: &Dense, c: &ScalarQ) -> Dense {
    let mut out = m.clone();
    for (i, row) in out.iter_mut().enumerate() {
        row[i] = &row[i] + c;
    }
    out
}

fn dense_rank(m: &Dense) -> usize {
    let rows: Vec<Tensor<ScalarQ>> = m
        .iter()
        .map(|r| {
            let mut t = Tensor::zero(2);
            for (j, v) in r.iter().enumerate() {
                t.add_at(j as u32, v);
            }
            t
        })
        .collect();
    rank_of(&rows)
}

fn first_nonzero(m: &Dense) -> Option<String> {
    m.iter().enumerate().find_map(|(i, r)| r.iter().enumerate().find(|(_, v)| !v.is_zero()).map(|(j, v)| format!("entry ({}, {}) = {v}", pair_str(i), pair_str(j))))
}

fn identity_failure(m: &Dense) -> Option<String> {
    let id = shifted(&vec![vec![ScalarQ::zero(); m.len()]; m.len()], &ScalarQ::one());
    let diff: Dense = m.iter().zip(&id).map(|(a, b)| a.iter().zip(b).map(|(x, y)| x - y).collect()).collect();
    first_nonzero(&diff)
}

/// Cubic in sigma with roots r1, r2, r3, as a matrix.
fn cubic_in(m: &Dense, roots: [&ScalarQ; 3]) -> Dense {
    let f: Vec<Dense> = roots.iter().map(|r| shifted(m, &-*r)).collect();
    dense_mul(&dense_mul(&f[0], &f[1]), &f[2])
}

fn braid_relation_failure(braid: &Braiding) -> Option<String> {
    for idx in 0..64u32 {
        let e: Tensor<ScalarQ> = Tensor::from_index(3, idx);
        if apply_word(&e, &[1, 2, 1], braid) != apply_word(&e, &[2, 1, 2], braid) {
            return Some(format!("basis vector {}", labels_str(&Tensor::<ScalarQ>::labels_of(idx, 3))));
        }
    }
    None
}

fn charge_failure(braid: &Braiding) -> Option<String> {
    let charge = |i: usize| Label::from_index(i / 4).charge() + Label::from_index(i % 4).charge();
    (0..16).find_map(|i| braid.image(i).iter().find(|(j, _)| charge(*j) != charge(i)).map(|(j, _)| format!("{} -> {}", pair_str(i), pair_str(*j))))
}

fn braiding_suite(c: &mut Collector, opts: &VerifyOptions) {
    let mut braids = [Braiding::new(Direction::Plus), Braiding::new(Direction::Minus)];
    if let Some(f) = &opts.sigma_fault {
        let b = &mut braids[if f.direction == Direction::Plus { 0 } else { 1 }];
        b.set_entry(f.from, f.to, f.value.clone());
    }
    let mats: Vec<Dense> = braids.iter().map(|b| b.matrix().entries).collect();
    c.add("sigma_plus_then_minus_is_identity", identity_failure(&dense_mul(&mats[0], &mats[1])));
    c.add("sigma_minus_then_plus_is_identity", identity_failure(&dense_mul(&mats[1], &mats[0])));
    let (one, q2, qm2) = (ScalarQ::one(), ScalarQ::q_pow(2), ScalarQ::q_pow(-2));
    let (nq2, nqm2) = (-&q2, -&qm2);
    for (b, m) in braids.iter().zip(&mats) {
        let t = dir_tag(b.direction);
        c.add(format!("braid_relation_{t}"), braid_relation_failure(b));
        c.add(format!("minimal_polynomial_{t}"), first_nonzero(&cubic_in(m, [&one, &nq2, &nqm2])));
        let dims: Vec<usize> = [&one, &nq2, &nqm2].iter().map(|r| 16 - dense_rank(&shifted(m, &-*r))).collect();
        c.check(format!("eigenspace_dimensions_{t}"), dims == [10, 3, 3], || format!("dimensions for 1, -q^2, -q^-2: {dims:?}"));
        c.add(format!("charge_preserved_{t}"), charge_failure(b));
        let printed = cubic_in(m, [&-&one, &nq2, &nqm2]);
        if first_nonzero(&printed).is_some() {
            c.discrepancy(
                format!("minimal_polynomial_{t}"),
                "(sigma+1)(sigma+q^2)(sigma+q^-2) = 0",
                "(sigma-1)(sigma+q^2)(sigma+q^-2) = 0; the printed cubic does not annihilate sigma",
            );
        }
    }
}

// ---- exterior ----

/// The eigenvalue of A^(4) on the top form as computed.
pub fn top_form_value() -> ScalarQ {
    sq("2*(q+q^-1)^2*(q^2+1+q^-2)")
}

/// The value printed for it.
pub fn top_form_printed() -> ScalarQ {
    sq("2*(q^4+2*q^2+6+2*q^-2+q^-4)")
}

fn spectrum_failure(k: usize, d: Direction, rank: usize, expected: &[(ScalarQ, usize)]) -> Option<String> {
    let r = spectral_report(k, d);
    let got: Vec<(ScalarQ, usize)> = r.eigenvalues.iter().filter(|e| !e.value.is_zero()).map(|e| (e.value.clone(), e.multiplicity)).collect();
    let kernel = (1usize << (2 * k)) - rank;
    let ok = r.rank == rank && r.kernel_dim == kernel && r.complete && got.len() == expected.len() && expected.iter().all(|e| got.contains(e));
    (!ok).then(|| {
        format!(
            "rank {}, kernel {}, complete {}, eigenvalues {:?}",
            r.rank,
            r.kernel_dim,
            r.complete,
            r.eigenvalues.iter().map(|e| format!("{} x{}", e.eigenvalue, e.multiplicity)).collect::<Vec<_>>()
        )
    })
}

fn factorial(k: usize) -> i64 {
    (1..=k as i64).product()
}

fn exterior_suite(c: &mut Collector) {
    let (p2, m2) = (sq("1+q^2"), sq("1+q^-2"));
    let chi = sq("2*(1+q^2+q^-2)");
    for d in BOTH_DIRECTIONS {
        let t = dir_tag(d);
        c.add(format!("degree_two_spectrum_{t}"), spectrum_failure(2, d, 6, &[(p2.clone(), 3), (m2.clone(), 3)]));
        c.add(format!("degree_three_spectrum_{t}"), spectrum_failure(3, d, 4, &[(chi.clone(), 4)]));
        c.add(format!("top_degree_spectrum_{t}"), spectrum_failure(4, d, 1, &[(top_form_value(), 1)]));
        let a5 = antisymmetrizer(5, d);
        c.check(format!("degree_five_vanishes_{t}"), a5.is_zero(), || "A^(5) has a nonzero column".into());
        let braid = Braiding::get(d);
        for k in 2..=4 {
            let ok = antisymmetrizer_by_sum(k, braid) == antisymmetrizer_by_cosets(k, braid);
            c.check(format!("permutation_sum_matches_cosets_{t}_{k}"), ok, || "the two constructions differ".into());
        }
        let mut bad = Vec::new();
        for (k, l) in [(1, 1), (1, 2), (2, 1), (1, 3), (2, 2), (3, 1)] {
            let lhs = antisymmetrizer(k, d).kron(antisymmetrizer(l, d)).compose(shuffle_operator(k, l, d));
            if &lhs != antisymmetrizer(k + l, d) {
                bad.push(format!("({k},{l})"));
            }
        }
        c.check(format!("shuffle_factorization_{t}"), bad.is_empty(), || format!("fails for {}", bad.join(", ")));
        let star_bad = star_relation_failures(d);
        c.check(format!("form_star_relations_{t}"), star_bad.is_empty(), || star_bad.join("; "));
        let printed = top_form_printed();
        if top_form_value() != printed {
            c.discrepancy(format!("top_degree_eigenvalue_{t}"), format!("{printed}"), format!("{}", top_form_value()));
        }
    }
    let plus = degree_data(2, Direction::Plus);
    let minus = degree_data(2, Direction::Minus);
    let mut bad: Vec<String> = ["q^-2", "q^-2", "q^-2", "q^2", "q^2", "q^2"]
        .iter()
        .enumerate()
        .filter(|(i, f)| minus.basis[*i] != plus.basis[*i].scale_q(&sq(f)))
        .map(|(i, _)| plus.names[i].to_string())
        .collect();
    for k in [3, 4] {
        if degree_data(k, Direction::Minus).basis != degree_data(k, Direction::Plus).basis {
            bad.push(format!("degree {k}"));
        }
    }
    c.check("minus_forms_rescale_plus_forms", bad.is_empty(), || format!("mismatch on {}", bad.join(", ")));
    for k in 2..=4 {
        let mut bad = Vec::new();
        for d in BOTH_DIRECTIONS {
            for lam in degree_data(k, d).distinct_eigenvalues() {
                let lim = lam.classical_limit();
                if lim != Ok(GaussRat::from_rational(BigRational::from_integer(factorial(k).into()))) {
                    bad.push(format!("{lam} -> {lim:?}"));
                }
            }
        }
        c.check(format!("classical_limit_degree_{k}"), bad.is_empty(), || bad.join("; "));
    }
}

/// "K E = q E K" on the left -> "relation_k_e_eq_q_e_k_left".
fn relation_name(relation: &str, side: qalgebra::Side) -> String {
    let mut out = String::from("relation");
    for tok in relation.split(|c: char| c.is_whitespace() || "[],()/".contains(c)).filter(|t| !t.is_empty()) {
        out.push('_');
        out.push_str(match tok {
            "=" => "eq",
            t => t,
        });
    }
    let side = format!("{side:?}").to_lowercase();
    format!("{out}_{side}").to_lowercase().replace("^-2", "_inv2").replace("^-1", "_inv").replace("^2", "2").replace('-', "_minus_").replace("__", "_")
}

fn star_relation_failures(d: Direction) -> Vec<String> {
    let f = |k: usize, n: &str| Form::<ScalarQ>::named(k, d, n).expect("basis name");
    let mut bad = Vec::new();
    let mut expect = |what: &str, lhs: Form<ScalarQ>, rhs: Form<ScalarQ>| {
        if lhs != rhs {
            bad.push(what.to_string());
        }
    };
    expect("w-* = -w+", f(1, "w-").star(), f(1, "w+").scale_q(&sq("-1")));
    expect("w0* = -w0", f(1, "w0").star(), f(1, "w0").scale_q(&sq("-1")));
    expect("wz* = -wz", f(1, "wz").star(), f(1, "wz").scale_q(&sq("-1")));
    for (a, b) in [("phi+", "phi-"), ("kappa+", "kappa-"), ("psi+", "psi-")] {
        expect(&format!("{a}* = {b}"), f(2, a).star(), f(2, b));
    }
    expect("chi-* = -q^-2 chi+", f(3, "chi-").star(), f(3, "chi+").scale_q(&sq("-q^-2")));
    expect("chi0* = chi0", f(3, "chi0").star(), f(3, "chi0"));
    expect("chiz* = chiz", f(3, "chiz").star(), f(3, "chiz"));
    bad
}

// ---- hodge ----

fn table_failure(t: &ReferenceTable) -> Option<String> {
    match t.mismatches() {
        Ok(m) if m.is_empty() => None,
        Ok(m) => Some(format!("{} entries differ, first {} -> {}: expected {}, computed {}", m.len(), m[0].row, m[0].column, m[0].expected, m[0].computed)),
        Err(e) => Some(format!("error: {e}")),
    }
}

fn hodge_suite(c: &mut Collector) {
    let quoted_psi = two_form_psi_block();
    for t in all_reference_tables().iter().filter(|t| t.name != quoted_psi.name) {
        c.add(t.name, table_failure(t));
    }
    c.add(two_form_psi_block_corrected().name, table_failure(&two_form_psi_block_corrected()));
    if let Ok(m) = quoted_psi.mismatches() {
        for e in m {
            c.discrepancy(format!("{}: {} -> {}", e.table, e.row, e.column), e.expected, e.computed);
        }
    }

    c.check_result("reality_conditions_reproduced", hodge::reality_reproduction(), || "residuals are not multiples of the closed-form conditions".into());
    match hodge::hermitian_reduction() {
        Ok(h) => {
            c.check("hermitian_forces_alpha_real", h.alpha_real, || format!("{h:?}"));
            c.check("hermitian_forces_xi_equals_epsilon", h.xi_equals_epsilon, || format!("{h:?}"));
            c.check("hermitian_cubic_and_nu_gamma_relations", h.computed_pair, || format!("{h:?}"));
            if !h.quoted_pair {
                c.discrepancy(
                    "nu_gamma_relation",
                    "gamma^2 nu = alpha beta ((q^2-q^-2) epsilon - 2(q+q^-1)^2 nu - (q-q^-1)^2 gamma)",
                    "gamma^2 nu = alpha beta ((q^2-q^-2) epsilon + 2(q+q^-1)^2 nu + (q-q^-1)^2 gamma)",
                );
            }
        }
        Err(e) => c.add("hermitian_reduction", Some(format!("error: {e}"))),
    }

    let fam_a = Contraction::family_a_symbolic(1);
    let fam_a_neg = Contraction::family_a_symbolic(-1);
    let fam_c = Contraction::family_c();
    for (name, g, want) in [("family_a_classified", &fam_a, Family::A), ("family_a_negative_classified", &fam_a_neg, Family::A), ("family_c_classified", &fam_c, Family::C)] {
        match hodge::classify_family(g) {
            Ok(f) => c.check(name, f == want, || format!("classified as {f:?}")),
            Err(e) => c.add(name, Some(format!("error: {e}"))),
        }
    }
    for d in BOTH_DIRECTIONS {
        let t = dir_tag(d);
        for op in [Operator::T, Operator::L] {
            let o = format!("{op:?}").to_lowercase();
            c.check_result(format!("family_a_maximally_hermitian_{o}_{t}"), hodge::is_maximally_hermitian(&fam_a, d, op), || "op^2 is not scalar on the eigenspaces".into());
            c.check_result(format!("family_b_excluded_{o}_{t}"), hodge::family_b_excluded(d, op), || "elimination leaves a solution".into());
        }
        c.check_result(format!("family_c_not_maximally_hermitian_{t}"), hodge::is_maximally_hermitian(&fam_c, d, Operator::T).map(|b| !b), || "T^2 is diagonal".into());
    }

    let a = Expr::var(Var::AlphaR);
    let m_expected = a.pow(2).scale_q(&sq("q*(1-q^2)")).inv_monomial().expect("monomial");
    match hodge::normalize_m(&fam_a) {
        Ok(m) => {
            c.check("family_a_normalized_scale", m == m_expected, || format!("m = {m}"));
            duality_checks(c, &fam_a, &m);
        }
        Err(e) => c.add("family_a_normalized_scale", Some(format!("error: {e}"))),
    }
    let cfg = HodgeConfig::with_symbolic_m(fam_a.clone(), Direction::Plus);
    let det_expected = a.pow(4).scale_q(&sq("-q^2*(1-q^2)^2"));
    match hodge::detq_and_sign(&cfg) {
        Ok((det, sign)) => c.check("family_a_quantum_determinant", det == det_expected && sign == -1, || format!("det = {det}, sign = {sign}")),
        Err(e) => c.add("family_a_quantum_determinant", Some(format!("error: {e}"))),
    }
    let m = Expr::var(Var::M);
    for k in [0, 1, 3, 4] {
        c.check_result(format!("minus_operator_agrees_degree_{k}"), hodge::directions_agree(&fam_a, &m, k), || "T^- differs from T^+".into());
    }
    for d in BOTH_DIRECTIONS {
        let t = dir_tag(d);
        let cfg = HodgeConfig::new(fam_a.clone(), m.clone(), d);
        let top = (|| -> Result<(Expr, Form<Expr>, Form<Expr>), HodgeError> {
            let gmm = hodge::gamma_mu_mu(&cfg)?;
            let l_mu = apply_operator(Operator::L, &cfg, &cfg.mu())?;
            let t_mu = apply_operator(Operator::T, &cfg, &cfg.mu())?;
            Ok((gmm, l_mu, t_mu))
        })();
        match top {
            Ok((gmm, l_mu, t_mu)) => {
                let closed = hodge::gamma_mu_mu_closed_form(&fam_a, &m);
                c.check(format!("gamma_mu_mu_closed_form_{t}"), gmm == closed, || format!("Gamma(mu, mu) = {gmm}"));
                let lhs = l_mu.coords()[0].scale_q(&hodge::top_eigenvalue(d));
                c.check(format!("l_of_mu_from_gamma_{t}"), lhs == gmm.conj(), || format!("L(mu) = {l_mu}"));
                if l_mu == t_mu {
                    c.discrepancy(format!("l_differs_from_t_on_mu_{t}"), "L(mu) != T(mu)", format!("L(mu) = T(mu) = {t_mu}"));
                }
            }
            Err(e) => c.add(format!("gamma_mu_mu_closed_form_{t}"), Some(format!("error: {e}"))),
        }
    }
}

fn duality_checks(c: &mut Collector, g: &Contraction, m: &Expr) {
    match hodge::verify_duality_identities(g, m) {
        Ok(r) => {
            c.check("family_a_sign", r.sign == -1, || format!("sign = {}", r.sign));
            let mut names: Vec<&str> = Vec::new();
            for x in &r.checks {
                if !names.contains(&x.name) {
                    names.push(x.name);
                }
            }
            for n in names {
                let fails: Vec<String> = r.checks.iter().filter(|x| x.name == n && !x.holds).map(|x| format!("{} {}", x.direction.sign_str(), x.form)).collect();
                c.check(format!("duality_{n}"), fails.is_empty(), || format!("fails on {}", fails.join(", ")));
            }
        }
        Err(e) => c.add("duality", Some(format!("error: {e}"))),
    }
}

// ---- metric ----

fn metric_suite(c: &mut Collector) {
    let a = Expr::var(Var::AlphaR);
    let sigma = metric::check_sigma_metric(&metric::family_a_metric(&a, 1));
    for ax in &sigma.axioms {
        c.check(format!("sigma_branch_{}", ax.axiom), ax.status != AxiomStatus::Fail, || ax.counterexample.clone().unwrap_or_default());
    }
    let other = metric::check_sigma_metric(&metric::family_a_metric(&a, -1));
    c.check("other_branch_breaks_sigma_symmetry", other.status("sigma_symmetry+") == Some(&AxiomStatus::Fail), || "sigma symmetry holds".into());
    for ax in ["reality", "nondegenerate"] {
        c.check(format!("other_branch_{ax}"), other.status(ax) == Some(&AxiomStatus::Pass), || format!("{:?}", other.status(ax)));
    }
    let passing = [&sigma, &other].iter().filter(|r| r.all_pass()).count();
    c.check("exactly_one_branch_is_sigma_metric", passing == 1, || format!("{passing} branches pass"));
    for s in [1, -1] {
        let g = metric::metric_from_contraction(&Contraction::family_a_symbolic(s));
        c.check(format!("family_a_contraction_metric_{}", if s > 0 { "positive" } else { "negative" }), g == metric::family_a_metric(&a.neg(), -s), || format!("{g:?}"));
    }
    let mut bad = Vec::new();
    for v in ["-3/2", "1", "q^2+1", "-(q-q^-1)"] {
        let x = sq(v);
        if metric::classify_metric(&metric::family_a_metric(&x, 1)) != MetricClass::InSigma {
            bad.push(format!("a = {v}, branch +1"));
        }
        if metric::classify_metric(&metric::family_a_metric(&x, -1)) != MetricClass::InGNotSigma {
            bad.push(format!("a = {v}, branch -1"));
        }
    }
    let id = MetricMatrix::new(std::array::from_fn(|i| std::array::from_fn(|j| ScalarQ::from_int((i == j) as i64))));
    if metric::classify_metric(&id) != MetricClass::NotInG {
        bad.push("identity matrix".into());
    }
    c.check("metric_classification", bad.is_empty(), || bad.join("; "));
}

// ---- oracle ----

fn oracle_suite(c: &mut Collector) {
    for l in LABELS {
        let op = qalgebra::tangent_op(l);
        let bad: Vec<&str> = qalgebra::ideal_generators().into_iter().filter(|(_, g)| !qalgebra::pairing(&op, g).is_zero()).map(|(n, _)| n).collect();
        c.check(format!("ideal_annihilated_by_l{}", l.symbol()), bad.is_empty(), || format!("nonzero on {}", bad.join(", ")));
    }
    for r in qalgebra::relation_checks(4) {
        c.add(relation_name(&r.relation, r.side), r.counterexample.clone().or_else(|| (!r.holds).then(String::new)));
    }
    let mut bad = Vec::new();
    for (n, two_j) in qalgebra::phi_labels(4, 2) {
        match qalgebra::casimir_check(n, two_j) {
            Ok(true) => {}
            Ok(false) => bad.push(format!("n = {n}, J = {}", laplacian::half_integer(two_j))),
            Err(e) => bad.push(e.to_string()),
        }
    }
    c.check("casimir_on_basis_elements", bad.is_empty(), || bad.join("; "));
    for r in qalgebra::differential_reconstruction() {
        c.check(format!("differential_rebuilds_{}", r.form), r.exact, || format!("coefficients {:?}", r.coefficients));
    }
    let el = |m| AlgebraElement::monomial(m, ScalarQ::one());
    let small = qalgebra::monomials_up_to(2);
    let ops = [UqOp::gen(Gen::E), UqOp::gen(Gen::F), UqOp::gen(Gen::K), qalgebra::tangent_op(Label::Zero)];
    let commute = small.iter().all(|m| ops.iter().all(|h| ops[..3].iter().all(|g| qalgebra::actions_commute(h, g, &el(*m)))));
    c.check("left_and_right_actions_commute", commute, || "found a non-commuting pair".into());
    let star = small.iter().all(|m| ops.iter().all(|h| qalgebra::star_compatible(h, &el(*m))));
    c.check("actions_respect_star", star, || "found an incompatible pair".into());
    let mult = small.iter().all(|x| small.iter().all(|y| qalgebra::pairing_respects_products(&el(*x), &el(*y))));
    c.check("pairing_respects_products", mult, || "found a violating pair".into());
    let l0 = qalgebra::monomials_up_to(3)
        .into_iter()
        .all(|m| qalgebra::tangent_op(Label::Zero).act(&el(m), qalgebra::Side::Left) == qalgebra::l0_alternative().act(&el(m), qalgebra::Side::Left));
    c.check("l0_expressions_agree", l0, || "the two forms of L_0 differ".into());
}

// ---- laplacian ----

fn laplacian_suite(c: &mut Collector) {
    let alpha = ScalarQ::frac(3, 2);
    let labels = qalgebra::phi_labels(4, 4);
    let sweep = |f: &dyn Fn(i32, i32) -> Result<Option<String>, qalgebra::QAlgebraError>| -> Option<String> {
        let bad: Vec<String> = labels
            .iter()
            .filter_map(|(n, tj)| match f(*n, *tj) {
                Ok(None) => None,
                Ok(Some(s)) => Some(format!("n = {n}, J = {}: {s}", laplacian::half_integer(*tj))),
                Err(e) => Some(e.to_string()),
            })
            .collect();
        (!bad.is_empty()).then(|| bad.join("; "))
    };
    for side in [BoxSide::L, BoxSide::R] {
        let s = format!("{side:?}").to_lowercase();
        for branch in [Branch::Sigma, Branch::Other] {
            let b = format!("{branch:?}").to_lowercase();
            c.add(
                format!("box_{s}_{b}_eigenvalues"),
                sweep(&|n, tj| {
                    let want = laplacian::box_eigenvalue(side, branch, &alpha, n, tj);
                    let got = laplacian::oracle_eigenvalue(side, branch, &alpha, n, tj)?;
                    Ok((got.as_ref() != Some(&want)).then(|| format!("oracle {got:?}, closed form {want}")))
                }),
            );
        }
    }
    c.add(
        "box_sigma_is_twice_q_alpha_casimir",
        sweep(&|_, tj| {
            let want = &(&(&ScalarQ::from_int(2) * &ScalarQ::q()) * &alpha) * &laplacian::casimir_value(tj);
            let got = laplacian::box_eigenvalue(BoxSide::L, Branch::Sigma, &alpha, 0, tj);
            Ok((got != want).then(|| format!("{got}")))
        }),
    );
    c.add(
        "box_right_equals_left_sigma",
        sweep(&|n, tj| {
            let l = laplacian::oracle_eigenvalue(BoxSide::L, Branch::Sigma, &alpha, n, tj)?;
            let r = laplacian::oracle_eigenvalue(BoxSide::R, Branch::Sigma, &alpha, n, tj)?;
            Ok((l.is_none() || l != r).then(|| format!("left {l:?}, right {r:?}")))
        }),
    );
    c.add(
        "deltaq_eigenvalues",
        sweep(&|n, tj| {
            let want = laplacian::deltaq_eigenvalue(n, tj);
            let got = laplacian::deltaq_oracle(n, tj)?;
            Ok((got.as_ref() != Some(&want)).then(|| format!("oracle {got:?}, closed form {want}")))
        }),
    );
    c.add(
        "deltaq_classical_limit",
        sweep(&|n, tj| {
            let j = BigRational::new(tj.into(), 2.into());
            let want = GaussRat::from_rational(&j * &(&j + BigRational::from_integer(1.into())));
            let got = laplacian::deltaq_eigenvalue(n, tj).classical_limit();
            Ok((got != Ok(want)).then(|| format!("{got:?}")))
        }),
    );
    let q0 = BigRational::new(1.into(), 2.into());
    match laplacian::scan_spectrum(BoxSide::L, Branch::Other, &ScalarQ::one(), &q0, 8, 8) {
        Ok(s) => c.check("other_branch_spectrum_has_both_signs", s.has_negative && s.has_positive, || format!("min {}, max {}", s.min, s.max)),
        Err(e) => c.add("other_branch_spectrum_has_both_signs", Some(format!("error: {e}"))),
    }
    match laplacian::scan_spectrum(BoxSide::L, Branch::Sigma, &ScalarQ::one(), &q0, 8, 8) {
        Ok(s) => c.check("sigma_branch_spectrum_nonnegative", !s.has_negative, || format!("min {}", s.min)),
        Err(e) => c.add("sigma_branch_spectrum_nonnegative", Some(format!("error: {e}"))),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suite_names_parse() {
        assert_eq!(Suite::parse_list("all").unwrap().len(), 6);
        assert_eq!(Suite::parse_list("oracle,braiding,oracle").unwrap(), vec![Suite::Braiding, Suite::Oracle]);
        assert!(Suite::parse_list("braiding,nope").is_none());
    }

    #[test]
    fn braiding_passes_and_fault_is_caught() {
        let r = run(&[Suite::Braiding], &VerifyOptions::default());
        assert!(r.all_pass, "{:?}", r.failures());
        assert_eq!(r.suites[0].discrepancies.len(), 2);
        let bad = run(&[Suite::Braiding], &VerifyOptions { sigma_fault: Some(SigmaFault::example()) });
        assert!(!bad.all_pass);
        assert!(!bad.identity("braid_relation_plus").unwrap().holds);
        assert!(bad.identity("braid_relation_minus").unwrap().holds);
    }

    #[test]
    fn fault_syntax() {
        assert_eq!(SigmaFault::parse("2,8,2"), Some(SigmaFault::example()));
        assert_eq!(SigmaFault::parse("-:0,0,q").unwrap().direction, Direction::Minus);
        assert!(SigmaFault::parse("16,0,1").is_none());
        assert!(SigmaFault::parse("1,2").is_none());
    }
}
