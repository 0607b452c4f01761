//! Left-invariant forms, their canonical eigenbases, the wedge product
//! and the * of forms.

use super::antisym::antisymmetrizer;
use super::linalg::SpanSolver;
use super::tensor::Tensor;
use crate::calculus::{reverse_star, Direction, Label};
use crate::scalar::{Coeff, ScalarQ};
use std::fmt;
use std::sync::OnceLock;

/// Canonical eigenbasis of range(A^(k)) for one direction.
pub struct DegreeData {
    pub k: usize,
    pub direction: Direction,
    pub names: Vec<&'static str>,
    pub basis: Vec<Tensor<ScalarQ>>,
    /// A^(k) b_i = eigenvalues[i] b_i.
    pub eigenvalues: Vec<ScalarQ>,
    solver: SpanSolver,
    /// Coordinates of b_i^*, row i.
    star_rows: Vec<Vec<ScalarQ>>,
}

impl DegreeData {
    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.names.iter().position(|n| *n == name)
    }

    /// Distinct eigenvalues in order of first appearance.
    pub fn distinct_eigenvalues(&self) -> Vec<ScalarQ> {
        let mut out: Vec<ScalarQ> = Vec::new();
        for l in &self.eigenvalues {
            if !out.contains(l) {
                out.push(l.clone());
            }
        }
        out
    }
}

pub const NAMES_0: [&str; 1] = ["1"];
pub const NAMES_1: [&str; 4] = ["w-", "w+", "w0", "wz"];
pub const NAMES_2: [&str; 6] = ["phi+", "kappa+", "psi+", "phi-", "kappa-", "psi-"];
pub const NAMES_3: [&str; 4] = ["chi-", "chi+", "chi0", "chiz"];
pub const NAMES_4: [&str; 1] = ["vol"];

fn wedge_tensor(labels: &[Label], d: Direction) -> Tensor<ScalarQ> {
    antisymmetrizer(labels.len(), d).apply(&Tensor::basis(labels))
}

/// Canonical eigenbasis tensors (full antisymmetrized representatives).
pub fn canonical_basis(k: usize, d: Direction) -> (Vec<&'static str>, Vec<Tensor<ScalarQ>>) {
    use Label::{Minus as M, Plus as P, Zero as O, Z};
    let w = |l: &[Label]| wedge_tensor(l, d);
    let q2 = ScalarQ::q_pow(2);
    let qm2 = ScalarQ::q_pow(-2);
    let one = ScalarQ::one();
    match k {
        0 => (NAMES_0.to_vec(), vec![Tensor::scalar(ScalarQ::one())]),
        1 => (NAMES_1.to_vec(), [M, P, O, Z].iter().map(|l| Tensor::basis(&[*l])).collect()),
        2 => {
            let phi_p = w(&[M, O]);
            let phi_m = w(&[P, O]);
            let kap_p = w(&[P, O]).minus(&w(&[P, Z]).scale_q(&(&one - &q2)));
            let kap_m = w(&[M, O]).plus(&w(&[M, Z]).scale_q(&(&one - &qm2)));
            let psi_p = w(&[O, Z]).plus(&w(&[M, P]).scale_q(&(&one - &q2)));
            let psi_m = w(&[O, Z]).plus(&w(&[M, P]).scale_q(&(&one - &qm2)));
            (NAMES_2.to_vec(), vec![phi_p, kap_p, psi_p, phi_m, kap_m, psi_m])
        }
        3 => (NAMES_3.to_vec(), vec![w(&[P, O, Z]), w(&[M, O, Z]), w(&[M, P, Z]), w(&[M, P, O])]),
        4 => (NAMES_4.to_vec(), vec![w(&[M, P, O, Z])]),
        _ => (Vec::new(), Vec::new()),
    }
}

fn build(k: usize, d: Direction) -> DegreeData {
    let (names, basis) = canonical_basis(k, d);
    let op = antisymmetrizer(k, d);
    let eigenvalues: Vec<ScalarQ> = basis
        .iter()
        .map(|b| {
            let img = op.apply(b);
            let (i, c) = b.iter().next().expect("nonzero basis form");
            let lam = &img.get(i) / c;
            assert_eq!(img, b.scale_q(&lam), "canonical form is not an A-eigenvector");
            lam
        })
        .collect();
    let solver = SpanSolver::new(basis.clone());
    let star_rows = basis
        .iter()
        .zip(&eigenvalues)
        .map(|(b, lam)| {
            let s = op.apply(&reverse_star(b)).scale_q(&lam.inv());
            solver.coordinates(&s).expect("star of a form is a form")
        })
        .collect();
    DegreeData { k, direction: d, names, basis, eigenvalues, solver, star_rows }
}

/// Cached eigenbasis data for 0 <= k <= 4.
pub fn degree_data(k: usize, d: Direction) -> &'static DegreeData {
    assert!(k <= 4, "no nonzero forms of degree {k}");
    static CACHE: [[OnceLock<DegreeData>; 5]; 2] = [const { [const { OnceLock::new() }; 5] }; 2];
    let i = match d {
        Direction::Plus => 0,
        Direction::Minus => 1,
    };
    CACHE[i][k].get_or_init(|| build(k, d))
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum FormError {
    #[error("tensor of degree {0} is not in the range of the antisymmetrizer")]
    OutsideRange(usize),
    #[error("degree {0} exceeds the top degree 4")]
    DegreeTooHigh(usize),
}

/// Element of Omega^k_inv in one direction: eigen-coordinates plus the
/// antisymmetrized tensor representative.
#[derive(Clone, PartialEq)]
pub struct Form<C: Coeff> {
    direction: Direction,
    degree: usize,
    coords: Vec<C>,
    tensor: Tensor<C>,
}

impl<C: Coeff> Form<C> {
    pub fn from_coords(k: usize, d: Direction, coords: Vec<C>) -> Self {
        let data = degree_data(k, d);
        assert_eq!(coords.len(), data.dim());
        let tensor = data.solver.combine(&coords);
        Form { direction: d, degree: k, coords, tensor }
    }

    pub fn from_tensor(t: Tensor<C>, d: Direction) -> Result<Self, FormError> {
        let k = t.degree();
        if k > 4 {
            return Err(FormError::DegreeTooHigh(k));
        }
        let coords = degree_data(k, d).solver.coordinates(&t).ok_or(FormError::OutsideRange(k))?;
        Ok(Form { direction: d, degree: k, coords, tensor: t })
    }

    /// A^(k)(x) for an arbitrary tensor x.
    pub fn antisymmetrize(x: &Tensor<C>, d: Direction) -> Result<Self, FormError> {
        let k = x.degree();
        if k > 4 {
            return Err(FormError::DegreeTooHigh(k));
        }
        Form::from_tensor(antisymmetrizer(k, d).apply(x), d)
    }

    pub fn zero(k: usize, d: Direction) -> Self {
        Form::from_coords(k, d, vec![C::zero(); degree_data(k, d).dim()])
    }

    pub fn one(d: Direction) -> Self {
        Form::from_coords(0, d, vec![C::one()])
    }

    pub fn scalar(c: C, d: Direction) -> Self {
        Form::from_coords(0, d, vec![c])
    }

    /// The i-th canonical eigenbasis form.
    pub fn basis(k: usize, d: Direction, i: usize) -> Self {
        let n = degree_data(k, d).dim();
        let coords = (0..n).map(|j| if i == j { C::one() } else { C::zero() }).collect();
        Form::from_coords(k, d, coords)
    }

    pub fn named(k: usize, d: Direction, name: &str) -> Option<Self> {
        degree_data(k, d).index_of(name).map(|i| Form::basis(k, d, i))
    }

    /// w_{a1} ^ ... ^ w_{ak}.
    pub fn monomial(labels: &[Label], d: Direction) -> Self {
        assert!(labels.len() <= 4, "wedge monomial of degree > 4");
        Form::antisymmetrize(&Tensor::basis(labels), d).expect("range of A")
    }

    pub fn degree(&self) -> usize {
        self.degree
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn coords(&self) -> &[C] {
        &self.coords
    }

    pub fn tensor(&self) -> &Tensor<C> {
        &self.tensor
    }

    pub fn is_zero(&self) -> bool {
        self.coords.iter().all(|c| c.is_zero())
    }

    pub fn data(&self) -> &'static DegreeData {
        degree_data(self.degree, self.direction)
    }

    pub fn plus(&self, o: &Form<C>) -> Form<C> {
        self.check_compatible(o);
        Form { direction: self.direction, degree: self.degree, coords: self.coords.iter().zip(&o.coords).map(|(a, b)| a.plus(b)).collect(), tensor: self.tensor.plus(&o.tensor) }
    }

    pub fn minus(&self, o: &Form<C>) -> Form<C> {
        self.plus(&o.scale_q(&ScalarQ::from_int(-1)))
    }

    pub fn scale(&self, f: &C) -> Form<C> {
        Form { direction: self.direction, degree: self.degree, coords: self.coords.iter().map(|a| a.times(f)).collect(), tensor: self.tensor.scale(f) }
    }

    pub fn scale_q(&self, f: &ScalarQ) -> Form<C> {
        Form { direction: self.direction, degree: self.degree, coords: self.coords.iter().map(|a| a.scale(f)).collect(), tensor: self.tensor.scale_q(f) }
    }

    fn check_compatible(&self, o: &Form<C>) {
        assert_eq!((self.degree, self.direction), (o.degree, o.direction), "incompatible forms");
    }

    /// Decomposition into A-eigencomponents, one per distinct eigenvalue
    /// (components may be zero).
    pub fn components(&self) -> Vec<(ScalarQ, Form<C>)> {
        let data = self.data();
        data.distinct_eigenvalues()
            .into_iter()
            .map(|lam| {
                let coords = self.coords.iter().zip(&data.eigenvalues).map(|(c, l)| if *l == lam { c.clone() } else { C::zero() }).collect();
                (lam, Form::from_coords(self.degree, self.direction, coords))
            })
            .collect()
    }

    /// The eigenvalue when the form is a nonzero A-eigenvector.
    pub fn eigenvalue(&self) -> Option<ScalarQ> {
        let nonzero: Vec<(ScalarQ, Form<C>)> = self.components().into_iter().filter(|(_, f)| !f.is_zero()).collect();
        match nonzero.as_slice() {
            [(lam, _)] => Some(lam.clone()),
            _ => None,
        }
    }

    /// A tensor x with A^(k) x = this form.
    pub fn preimage(&self) -> Tensor<C> {
        let mut out = Tensor::zero(self.degree);
        for (lam, comp) in self.components() {
            out.add_scaled_q(&comp.tensor, &lam.inv());
        }
        out
    }

    /// The * of forms: A(rev(x)) for a preimage x.
    pub fn star(&self) -> Form<C> {
        let data = self.data();
        let n = data.dim();
        let mut coords = vec![C::zero(); n];
        for (c, row) in self.coords.iter().zip(&data.star_rows) {
            if c.is_zero() {
                continue;
            }
            let cc = c.conj();
            for (acc, v) in coords.iter_mut().zip(row) {
                if !v.is_zero() {
                    *acc = acc.plus(&cc.scale(v));
                }
            }
        }
        Form::from_coords(self.degree, self.direction, coords)
    }

    /// Braided wedge product. `None` above the top degree, where every
    /// product vanishes.
    pub fn wedge(&self, o: &Form<C>) -> Option<Form<C>> {
        assert_eq!(self.direction, o.direction, "wedge of forms in different directions");
        if self.degree + o.degree > 4 {
            return None;
        }
        Some(Form::antisymmetrize(&self.preimage().otimes(&o.preimage()), self.direction).expect("range of A"))
    }

    pub fn map<D: Coeff>(&self, f: impl Fn(&C) -> D) -> Form<D> {
        Form { direction: self.direction, degree: self.degree, coords: self.coords.iter().map(&f).collect(), tensor: self.tensor.map(&f) }
    }
}

impl<C: Coeff> fmt::Debug for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl<C: Coeff> fmt::Display for Form<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let names = &self.data().names;
        let terms: Vec<String> = self.coords.iter().zip(names).filter(|(c, _)| !c.is_zero()).map(|(c, n)| format!("({c}) {n}")).collect();
        if terms.is_empty() {
            write!(f, "0")
        } else {
            write!(f, "{}", terms.join(" + "))
        }
    }
}

/// Eigen-coordinates of a tensor in the canonical basis of range(A^(k)).
pub fn form_coordinates<C: Coeff>(t: &Tensor<C>, d: Direction) -> Result<Vec<C>, FormError> {
    Form::from_tensor(t.clone(), d).map(|f| f.coords)
}

/// Wedge of two forms; `None` above the top degree.
pub fn wedge<C: Coeff>(xi: &Form<C>, eta: &Form<C>) -> Option<Form<C>> {
    xi.wedge(eta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::calculus::BOTH_DIRECTIONS;
    use crate::scalar::parse_scalar;
    use Label::{Minus as M, Plus as P, Zero as O, Z};

    fn sq(t: &str) -> ScalarQ {
        parse_scalar(t).unwrap()
    }

    #[test]
    fn degree_two_eigenvalues() {
        let d = degree_data(2, Direction::Plus);
        assert_eq!(d.eigenvalues[..3], [sq("1+q^2"), sq("1+q^2"), sq("1+q^2")]);
        assert_eq!(d.eigenvalues[3..], [sq("1+q^-2"), sq("1+q^-2"), sq("1+q^-2")]);
        let m = degree_data(2, Direction::Minus);
        assert_eq!(m.eigenvalues[0], sq("1+q^-2"));
        assert_eq!(m.eigenvalues[3], sq("1+q^2"));
    }

    #[test]
    fn checked_forms_are_rescaled() {
        // w- v w0 = q^-2 (w- ^ w0), w+ v w0 = q^2 (w+ ^ w0)
        let plus = degree_data(2, Direction::Plus);
        let minus = degree_data(2, Direction::Minus);
        for (i, f) in ["q^-2", "q^-2", "q^-2", "q^2", "q^2", "q^2"].iter().enumerate() {
            assert_eq!(minus.basis[i], plus.basis[i].scale_q(&sq(f)), "{}", plus.names[i]);
        }
    }

    #[test]
    fn star_values() {
        for d in BOTH_DIRECTIONS {
            let w = Form::<ScalarQ>::monomial(&[M], d);
            assert_eq!(w.star(), Form::monomial(&[P], d).scale_q(&sq("-1")));
            let chi_m = Form::<ScalarQ>::named(3, d, "chi-").unwrap();
            let chi_p = Form::<ScalarQ>::named(3, d, "chi+").unwrap();
            assert_eq!(chi_m.star(), chi_p.scale_q(&sq("-q^-2")));
            for n in ["chi0", "chiz"] {
                let c = Form::<ScalarQ>::named(3, d, n).unwrap();
                assert_eq!(c.star(), c);
            }
            for (a, b) in [("phi+", "phi-"), ("kappa+", "kappa-"), ("psi+", "psi-")] {
                let x = Form::<ScalarQ>::named(2, d, a).unwrap();
                let y = Form::<ScalarQ>::named(2, d, b).unwrap();
                assert_eq!(x.star(), y);
                assert_eq!(y.star(), x);
            }
            let mu = Form::<ScalarQ>::named(4, d, "vol").unwrap().scale_q(&ScalarQ::i());
            assert_eq!(mu.star(), mu);
        }
    }

    #[test]
    fn wedge_examples() {
        let d = Direction::Plus;
        let wm = Form::<ScalarQ>::monomial(&[M], d);
        let w0 = Form::<ScalarQ>::monomial(&[O], d);
        assert!(wm.wedge(&wm).unwrap().is_zero());
        assert_eq!(wm.wedge(&w0).unwrap(), Form::named(2, d, "phi+").unwrap());
        let t = wm.wedge(&Form::monomial(&[P], d)).unwrap().wedge(&Form::monomial(&[O, Z], d)).unwrap();
        assert_eq!(t, Form::monomial(&[M, P, O, Z], d));
        assert!(t.wedge(&wm).is_none());
    }

    #[test]
    fn coordinates_of_w_minus_w_plus() {
        let d = Direction::Plus;
        let x = Form::<ScalarQ>::monomial(&[M, P], d);
        let c = &sq("q^-2") - &sq("q^2");
        let expected = Form::named(2, d, "psi+").unwrap().minus(&Form::named(2, d, "psi-").unwrap()).scale_q(&c.inv());
        assert_eq!(x, expected);
        assert!(form_coordinates(&Tensor::<ScalarQ>::basis(&[M, O]), d).is_err());
    }
}
