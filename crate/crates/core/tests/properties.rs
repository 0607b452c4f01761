//! Randomized algebraic invariants.

use num_rational::BigRational;
use proptest::prelude::*;
use qhodge::calculus::{Braiding, Direction, Label};
use qhodge::cli::{export_matrix, MatrixExport};
use qhodge::exterior::perm::apply_sigma;
use qhodge::exterior::{antisymmetrizer, Form, Tensor};
use qhodge::laplacian::{self, BoxSide, Branch};
use qhodge::metric::{self, MetricClass};
use qhodge::qalgebra::{self, AlgebraElement, Letter};
use qhodge::scalar::{parse_scalar, ScalarQ};

fn config() -> ProptestConfig {
    ProptestConfig { cases: 32, ..ProptestConfig::default() }
}

fn small_rational() -> impl Strategy<Value = ScalarQ> {
    (-6i64..=6, 1i64..=5).prop_map(|(n, d)| ScalarQ::frac(n, d))
}

fn nonzero_rational() -> impl Strategy<Value = ScalarQ> {
    (prop_oneof![-6i64..=-1, 1i64..=6], 1i64..=5).prop_map(|(n, d)| ScalarQ::frac(n, d))
}

/// Laurent polynomial in s = q^(1/2) with Gaussian rational coefficients.
fn laurent() -> impl Strategy<Value = ScalarQ> {
    prop::collection::vec((small_rational(), small_rational(), -3i64..=3), 1..3)
        .prop_map(|terms| terms.iter().fold(ScalarQ::zero(), |acc, (re, im, k)| &acc + &(&(re + &(im * &ScalarQ::i())) * &ScalarQ::s_pow(*k))))
}

fn scalar() -> impl Strategy<Value = ScalarQ> {
    (laurent(), laurent()).prop_map(|(n, d)| if d.is_zero() { n } else { &n * &d.inv() })
}

fn tensor(degree: usize) -> impl Strategy<Value = Tensor<ScalarQ>> {
    let dim = 1u32 << (2 * degree);
    prop::collection::vec((0..dim, laurent()), 1..5).prop_map(move |entries| {
        let mut t = Tensor::zero(degree);
        for (i, c) in entries {
            t.add_at(i, &c);
        }
        t
    })
}

fn direction() -> impl Strategy<Value = Direction> {
    prop_oneof![Just(Direction::Plus), Just(Direction::Minus)]
}

fn form(k: usize, d: Direction) -> impl Strategy<Value = Form<ScalarQ>> {
    let n = qhodge::exterior::degree_data(k, d).dim();
    prop::collection::vec((0..n, small_rational(), -2i64..=2), 1..3).prop_map(move |terms| {
        let mut c = vec![ScalarQ::zero(); n];
        for (i, x, e) in terms {
            c[i] = &c[i] + &(&x * &ScalarQ::q_pow(e));
        }
        Form::from_coords(k, d, c)
    })
}

fn element() -> impl Strategy<Value = AlgebraElement> {
    let letter = prop_oneof![Just(Letter::A), Just(Letter::As), Just(Letter::C), Just(Letter::Cs)];
    prop::collection::vec((prop::collection::vec(letter, 0..4), small_rational()), 1..4)
        .prop_map(|terms| terms.iter().fold(AlgebraElement::zero(), |acc, (w, c)| acc.add(&AlgebraElement::word(w).scale(c))))
}

proptest! {
    #![proptest_config(config())]

    #[test]
    fn field_axioms(a in scalar(), b in scalar(), c in scalar()) {
        prop_assert_eq!(&(&a + &b) + &c, &a + &(&b + &c));
        prop_assert_eq!(&(&a * &b) * &c, &a * &(&b * &c));
        prop_assert_eq!(&a * &(&b + &c), &(&a * &b) + &(&a * &c));
        if !a.is_zero() {
            prop_assert!((&a * &a.inv()).is_one());
        }
    }

    #[test]
    fn conjugation_is_an_involutive_automorphism(a in scalar(), b in scalar()) {
        prop_assert_eq!(a.conj().conj(), a.clone());
        prop_assert_eq!((&a * &b).conj(), &a.conj() * &b.conj());
        prop_assert_eq!((&a + &b).conj(), &a.conj() + &b.conj());
        prop_assert_eq!(a.invert_q().invert_q(), a);
    }

    #[test]
    fn display_parses_back(a in scalar()) {
        prop_assert_eq!(parse_scalar(&a.to_string()).unwrap(), a);
    }

    #[test]
    fn evaluation_is_multiplicative(a in laurent(), b in laurent(), n in 1i64..8) {
        let q0 = BigRational::new(1.into(), (n + 1).into());
        let ab = (&a * &b).eval_at(&q0);
        if let (Ok(x), Ok(y), Ok(z)) = (a.eval_at(&q0), b.eval_at(&q0), ab) {
            prop_assert_eq!(x.mul(&y), z);
        }
    }

    #[test]
    fn braidings_are_mutually_inverse(t in tensor(2)) {
        let there = apply_sigma(&t, 1, Braiding::get(Direction::Plus));
        prop_assert_eq!(apply_sigma(&there, 1, Braiding::get(Direction::Minus)), t);
    }

    #[test]
    fn braid_relation_on_random_tensors(t in tensor(3), d in direction()) {
        let b = Braiding::get(d);
        let lhs = apply_sigma(&apply_sigma(&apply_sigma(&t, 1, b), 2, b), 1, b);
        let rhs = apply_sigma(&apply_sigma(&apply_sigma(&t, 2, b), 1, b), 2, b);
        prop_assert_eq!(lhs, rhs);
    }

    #[test]
    fn antisymmetrized_tensors_are_forms(t in tensor(2), u in tensor(3), d in direction()) {
        prop_assert!(Form::from_tensor(antisymmetrizer(2, d).apply(&t), d).is_ok());
        prop_assert!(Form::from_tensor(antisymmetrizer(3, d).apply(&u), d).is_ok());
    }

    #[test]
    fn form_star_is_an_involution(d in direction(), x in form(2, Direction::Plus), y in form(3, Direction::Minus)) {
        let x = if d == Direction::Plus { x } else { Form::from_coords(2, d, x.coords().to_vec()) };
        prop_assert_eq!(x.star().star(), x);
        prop_assert_eq!(y.star().star(), y);
    }

    #[test]
    fn wedge_is_associative(a in form(1, Direction::Plus), b in form(1, Direction::Plus), c in form(2, Direction::Plus)) {
        let left = a.wedge(&b).unwrap().wedge(&c).unwrap();
        let right = a.wedge(&b.wedge(&c).unwrap()).unwrap();
        prop_assert_eq!(left, right);
    }

    #[test]
    fn algebra_is_associative_with_antimultiplicative_star(x in element(), y in element(), z in element()) {
        prop_assert_eq!(x.mul(&y).mul(&z), x.mul(&y.mul(&z)));
        prop_assert_eq!(x.star().star(), x.clone());
        prop_assert_eq!(x.mul(&y).star(), y.star().mul(&x.star()));
        prop_assert_eq!(x.mul(&y).counit(), &x.counit() * &y.counit());
    }

    #[test]
    fn pairing_is_compatible_with_products(x in element(), y in element()) {
        prop_assert!(qalgebra::pairing_respects_products(&x, &y));
    }

    #[test]
    fn metric_branches_split(a in nonzero_rational()) {
        let sigma = metric::family_a_metric(&a, 1);
        let other = metric::family_a_metric(&a, -1);
        prop_assert_eq!(metric::classify_metric(&sigma), MetricClass::InSigma);
        prop_assert_eq!(metric::classify_metric(&other), MetricClass::InGNotSigma);
        prop_assert_eq!(metric::family_a_parameters(&other), Some((a, -1)));
    }

    #[test]
    fn sigma_branch_spectrum_follows_alpha(alpha in nonzero_rational(), n in 2i64..9) {
        let q0 = BigRational::new(1.into(), n.into());
        let scan = laplacian::scan_spectrum(BoxSide::L, Branch::Sigma, &alpha, &q0, 2, 4).unwrap();
        let positive = alpha.as_rational().unwrap() > BigRational::from_integer(0.into());
        prop_assert_eq!(scan.has_negative, !positive);
        prop_assert_eq!(scan.has_positive, positive);
        for tj in 0..=4 {
            let want = &(&(&ScalarQ::from_int(2) * &ScalarQ::q()) * &alpha) * &laplacian::casimir_value(tj);
            prop_assert_eq!(laplacian::box_eigenvalue(BoxSide::R, Branch::Sigma, &alpha, 0, tj), want);
        }
    }

    #[test]
    fn metric_export_round_trips(a in scalar(), b in prop_oneof![Just(1), Just(-1)]) {
        let m = export_matrix("metric", Direction::Plus, 2, &a, b).unwrap();
        let back: MatrixExport = serde_json::from_str(&serde_json::to_string(&m).unwrap()).unwrap();
        let g = metric::family_a_metric(&a, b);
        let want: Vec<Vec<ScalarQ>> = g.g.iter().map(|r| r.to_vec()).collect();
        prop_assert_eq!(back.to_dense().unwrap(), want);
    }
}

#[test]
fn star_on_labels_is_involutive() {
    for i in 0..4 {
        let l = Label::from_index(i);
        let (s, p) = l.star();
        let (s2, back) = p.star();
        assert_eq!((s * s2, back), (1, l));
    }
}
