//! Concrete data of the 4D+ calculus: the basis of left-invariant 1-forms,
//! its *-structure and U(1) charges, and the braiding sigma^+- on V (x) V.

use crate::exterior::{Form, Tensor};
use crate::scalar::{parse_scalar, Coeff, ScalarQ};
use serde::Serialize;
use std::fmt;
use std::sync::OnceLock;

/// Left-invariant 1-form labels in canonical order (-, +, 0, z).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub enum Label {
    Minus,
    Plus,
    Zero,
    Z,
}

pub const LABELS: [Label; 4] = [Label::Minus, Label::Plus, Label::Zero, Label::Z];

impl Label {
    pub fn index(self) -> usize {
        self as usize
    }

    pub fn from_index(i: usize) -> Label {
        LABELS[i]
    }

    /// U(1) charge n_a, with delta_R(w_a) = w_a (x) z^(n_a).
    pub fn charge(self) -> i32 {
        match self {
            Label::Minus => -2,
            Label::Plus => 2,
            Label::Zero | Label::Z => 0,
        }
    }

    /// w_a^* = sign * w_b.
    pub fn star(self) -> (i32, Label) {
        match self {
            Label::Minus => (-1, Label::Plus),
            Label::Plus => (-1, Label::Minus),
            Label::Zero => (-1, Label::Zero),
            Label::Z => (-1, Label::Z),
        }
    }

    pub fn symbol(self) -> &'static str {
        match self {
            Label::Minus => "-",
            Label::Plus => "+",
            Label::Zero => "0",
            Label::Z => "z",
        }
    }

    pub fn parse(t: &str) -> Option<Label> {
        match t {
            "-" | "minus" | "m" => Some(Label::Minus),
            "+" | "plus" | "p" => Some(Label::Plus),
            "0" | "zero" => Some(Label::Zero),
            "z" => Some(Label::Z),
            _ => None,
        }
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "w{}", self.symbol())
    }
}

/// Which braiding generates the exterior algebra: sigma (plus) or its
/// inverse (minus).
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Direction {
    Plus,
    Minus,
}

impl Direction {
    pub fn opposite(self) -> Direction {
        match self {
            Direction::Plus => Direction::Minus,
            Direction::Minus => Direction::Plus,
        }
    }

    pub fn sign_str(self) -> &'static str {
        match self {
            Direction::Plus => "+",
            Direction::Minus => "-",
        }
    }

    pub fn parse(t: &str) -> Option<Direction> {
        match t {
            "+" | "plus" | "p" => Some(Direction::Plus),
            "-" | "minus" | "m" => Some(Direction::Minus),
            _ => None,
        }
    }
}

pub const BOTH_DIRECTIONS: [Direction; 2] = [Direction::Plus, Direction::Minus];

fn pair(a: Label, b: Label) -> usize {
    4 * a.index() + b.index()
}

/// A braiding on V (x) V stored as the images of the 16 basis pairs:
/// `images[4a+b]` lists `(4c+d, coefficient)` with sigma(w_a (x) w_b) =
/// sum coefficient * w_c (x) w_d.
#[derive(Clone, Debug, PartialEq)]
pub struct Braiding {
    pub direction: Direction,
    images: Vec<Vec<(usize, ScalarQ)>>,
}

type Block = (&'static [(Label, Label)], &'static [&'static [&'static str]]);

use Label::{Minus as M, Plus as P, Zero as O, Z};

const MINUS_BLOCK: &[(Label, Label)] = &[(M, O), (O, M), (M, Z), (Z, M)];
const CHARGE0_BLOCK: &[(Label, Label)] = &[(Z, O), (O, Z), (Z, Z), (M, P), (P, M)];
const PLUS_BLOCK: &[(Label, Label)] = &[(P, O), (O, P), (P, Z), (Z, P)];

// Row i lists the expansion of sigma(basis_i) over the block basis.
const SIGMA_PLUS: [Block; 3] = [
    (MINUS_BLOCK, &[&["1-q^2", "1", "0", "0"], &["q^2", "0", "0", "0"], &["1+q^2", "0", "0", "1"], &["-1-q^-2", "0", "q^-2", "1-q^-2"]]),
    (
        CHARGE0_BLOCK,
        &[
            &["-(q-q^-1)^2", "1", "0", "-(q-q^-1)^2", "(q-q^-1)^2"],
            &["1", "0", "0", "0", "0"],
            &["q^2-q^-2", "0", "1", "q^2-q^-2", "-(q^2-q^-2)"],
            &["-1", "0", "0", "0", "1"],
            &["1", "0", "0", "1", "0"],
        ],
    ),
    (PLUS_BLOCK, &[&["1-q^-2", "1", "0", "0"], &["q^-2", "0", "0", "0"], &["-1-q^-2", "0", "0", "1"], &["1+q^2", "0", "q^2", "1-q^2"]]),
];

const SIGMA_MINUS: [Block; 3] = [
    (MINUS_BLOCK, &[&["0", "q^-2", "0", "0"], &["1", "1-q^-2", "0", "0"], &["0", "1+q^2", "1-q^2", "q^2"], &["0", "-1-q^-2", "1", "0"]]),
    (
        CHARGE0_BLOCK,
        &[
            &["0", "1", "0", "0", "0"],
            &["1", "-(q-q^-1)^2", "0", "-(q-q^-1)^2", "(q-q^-1)^2"],
            &["0", "q^2-q^-2", "1", "q^2-q^-2", "-(q^2-q^-2)"],
            &["0", "-1", "0", "0", "1"],
            &["0", "1", "0", "1", "0"],
        ],
    ),
    (PLUS_BLOCK, &[&["0", "q^2", "0", "0"], &["1", "1-q^2", "0", "0"], &["0", "-1-q^-2", "1-q^-2", "q^-2"], &["0", "1+q^2", "1", "0"]]),
];

impl Braiding {
    fn from_blocks(direction: Direction, blocks: &[Block]) -> Self {
        let mut images: Vec<Vec<(usize, ScalarQ)>> = vec![Vec::new(); 16];
        for l in [M, P, O] {
            images[pair(l, l)] = vec![(pair(l, l), ScalarQ::one())];
        }
        for (basis, rows) in blocks {
            for (i, row) in rows.iter().enumerate() {
                let src = pair(basis[i].0, basis[i].1);
                for (j, entry) in row.iter().enumerate() {
                    let v = parse_scalar(entry).expect("braiding entry");
                    if !v.is_zero() {
                        images[src].push((pair(basis[j].0, basis[j].1), v));
                    }
                }
            }
        }
        Braiding { direction, images }
    }

    /// The braiding transcribed from the explicit block matrices.
    pub fn new(direction: Direction) -> Self {
        match direction {
            Direction::Plus => Braiding::from_blocks(direction, &SIGMA_PLUS),
            Direction::Minus => Braiding::from_blocks(direction, &SIGMA_MINUS),
        }
    }

    /// Shared, immutable instance.
    pub fn get(direction: Direction) -> &'static Braiding {
        static PLUS: OnceLock<Braiding> = OnceLock::new();
        static MINUS: OnceLock<Braiding> = OnceLock::new();
        match direction {
            Direction::Plus => PLUS.get_or_init(|| Braiding::new(Direction::Plus)),
            Direction::Minus => MINUS.get_or_init(|| Braiding::new(Direction::Minus)),
        }
    }

    pub fn image(&self, pair_index: usize) -> &[(usize, ScalarQ)] {
        &self.images[pair_index]
    }

    /// Coefficient of basis pair `to` in sigma(basis pair `from`).
    pub fn entry(&self, from: usize, to: usize) -> ScalarQ {
        self.images[from].iter().find(|(t, _)| *t == to).map(|(_, v)| v.clone()).unwrap_or_else(ScalarQ::zero)
    }

    /// Replace one coefficient (used for fault injection).
    pub fn set_entry(&mut self, from: usize, to: usize, v: ScalarQ) {
        let img = &mut self.images[from];
        img.retain(|(t, _)| *t != to);
        if !v.is_zero() {
            img.push((to, v));
            img.sort_by_key(|(t, _)| *t);
        }
    }

    /// Dense 16x16 matrix, row i = coefficients of sigma(basis_i).
    pub fn matrix(&self) -> BraidMatrix {
        let mut entries = vec![vec![ScalarQ::zero(); 16]; 16];
        for (i, img) in self.images.iter().enumerate() {
            for (j, v) in img {
                entries[i][*j] = v.clone();
            }
        }
        BraidMatrix { direction: self.direction, entries }
    }
}

/// Dense form of a braiding in the basis w_a (x) w_b, index 4a+b;
/// `entries[i][j]` is the coefficient of basis j in sigma(basis i).
#[derive(Clone, Debug, PartialEq)]
pub struct BraidMatrix {
    pub direction: Direction,
    pub entries: Vec<Vec<ScalarQ>>,
}

impl BraidMatrix {
    /// Composition as maps: (self then other), i.e. other(self(b_i)).
    #[allow(clippy::needless_range_loop)]
    pub fn then(&self, other: &BraidMatrix) -> Vec<Vec<ScalarQ>> {
        let n = self.entries.len();
        let mut out = vec![vec![ScalarQ::zero(); n]; n];
        for i in 0..n {
            for k in 0..n {
                let a = &self.entries[i][k];
                if a.is_zero() {
                    continue;
                }
                for j in 0..n {
                    let b = &other.entries[k][j];
                    if !b.is_zero() {
                        out[i][j] = &out[i][j] + &(a * b);
                    }
                }
            }
        }
        out
    }

    pub fn is_identity(m: &[Vec<ScalarQ>]) -> bool {
        m.iter().enumerate().all(|(i, row)| row.iter().enumerate().all(|(j, v)| if i == j { v.is_one() } else { v.is_zero() }))
    }
}

/// The braiding matrix in the requested direction.
pub fn braiding_matrix(direction: Direction) -> BraidMatrix {
    Braiding::get(direction).matrix()
}

/// Antilinear reversal on tensors: w_{a1} (x) ... (x) w_{ak} maps to
/// (-1)^{k(k-1)/2} w_{ak}^* (x) ... (x) w_{a1}^*, coefficients conjugated.
/// Applied to a wedge preimage it realizes the * of forms.
pub fn reverse_star<C: Coeff>(t: &Tensor<C>) -> Tensor<C> {
    let k = t.degree();
    let base_sign: i32 = if (k * k.saturating_sub(1) / 2).is_multiple_of(2) { 1 } else { -1 };
    let mut out = Tensor::zero(k);
    for (idx, c) in t.iter() {
        let labels = Tensor::<C>::labels_of(idx, k);
        let mut sign = base_sign;
        let mut rev = Vec::with_capacity(k);
        for l in labels.iter().rev() {
            let (s, b) = l.star();
            sign *= s;
            rev.push(b);
        }
        let v = if sign > 0 { c.conj() } else { c.conj().negate() };
        out.add_at(Tensor::<C>::index_of(&rev), &v);
    }
    out
}

/// The * of a form, computed on its wedge preimage.
pub fn star_form<C: Coeff>(xi: &Form<C>) -> Form<C> {
    xi.star()
}

/// Total U(1) charge of a form: `Some(n)` when homogeneous, `None` if mixed.
pub fn u1_charge<C: Coeff>(xi: &Form<C>) -> Option<i32> {
    tensor_charge(xi.tensor())
}

pub fn tensor_charge<C: Coeff>(t: &Tensor<C>) -> Option<i32> {
    let mut charge = None;
    for (idx, _) in t.iter() {
        let n: i32 = Tensor::<C>::labels_of(idx, t.degree()).iter().map(|l| l.charge()).sum();
        match charge {
            None => charge = Some(n),
            Some(c) if c != n => return None,
            _ => {}
        }
    }
    Some(charge.unwrap_or(0))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sigma_on_zero_minus() {
        // sigma(w0 (x) w-) = q^2 w- (x) w0
        let b = Braiding::get(Direction::Plus);
        assert_eq!(b.image(pair(O, M)), &[(pair(M, O), ScalarQ::q_pow(2))]);
    }

    #[test]
    fn sigma_charge0_entry() {
        let b = Braiding::get(Direction::Plus);
        assert_eq!(b.entry(pair(Z, O), pair(M, P)), parse_scalar("-(q-q^-1)^2").unwrap());
    }

    #[test]
    fn mutual_inverses() {
        let p = braiding_matrix(Direction::Plus);
        let m = braiding_matrix(Direction::Minus);
        assert!(BraidMatrix::is_identity(&p.then(&m)));
        assert!(BraidMatrix::is_identity(&m.then(&p)));
    }

    #[test]
    fn charge_is_preserved() {
        for d in BOTH_DIRECTIONS {
            let b = Braiding::get(d);
            for src in 0..16 {
                let n = LABELS[src / 4].charge() + LABELS[src % 4].charge();
                for (t, _) in b.image(src) {
                    assert_eq!(LABELS[t / 4].charge() + LABELS[t % 4].charge(), n);
                }
            }
        }
    }
}
