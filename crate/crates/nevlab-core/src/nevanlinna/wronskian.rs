//! Wronskians of function tuples with exact derivative arithmetic; a
//! vanishing determinant certifies linear dependence over C.

use crate::algebra::UniPoly;
use crate::curves::{Components, Curve, ExpPoly};

trait DetRing: Clone {
    fn ring_zero() -> Self;
    fn ring_add(&self, o: &Self) -> Self;
    fn ring_mul(&self, o: &Self) -> Self;
    fn ring_neg(&self) -> Self;
}

impl DetRing for UniPoly {
    fn ring_zero() -> Self {
        UniPoly::zero()
    }
    fn ring_add(&self, o: &Self) -> Self {
        self + o
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self * o
    }
    fn ring_neg(&self) -> Self {
        -self
    }
}

impl DetRing for ExpPoly {
    fn ring_zero() -> Self {
        ExpPoly::zero()
    }
    fn ring_add(&self, o: &Self) -> Self {
        self.add(o)
    }
    fn ring_mul(&self, o: &Self) -> Self {
        self.mul(o)
    }
    fn ring_neg(&self) -> Self {
        self.neg()
    }
}

/// Laplace expansion over the first column; fine for the small tuple sizes
/// the harness sees.
fn det<R: DetRing>(m: &[Vec<R>]) -> R {
    let k = m.len();
    if k == 1 {
        return m[0][0].clone();
    }
    let mut acc = R::ring_zero();
    for row in 0..k {
        let minor: Vec<Vec<R>> = m
            .iter()
            .enumerate()
            .filter(|(i, _)| *i != row)
            .map(|(_, r)| r[1..].to_vec())
            .collect();
        let term = m[row][0].ring_mul(&det(&minor));
        acc = if row % 2 == 0 { acc.ring_add(&term) } else { acc.ring_add(&term.ring_neg()) };
    }
    acc
}

/// The Wronskian of a curve's components or of a standalone tuple.
#[derive(Clone, Debug, PartialEq)]
pub enum WronskianFn {
    Poly(UniPoly),
    Exp(ExpPoly),
}

impl WronskianFn {
    pub fn is_identically_zero(&self) -> bool {
        match self {
            WronskianFn::Poly(p) => p.is_zero(),
            WronskianFn::Exp(e) => e.is_zero(),
        }
    }
}

/// `det(d^i f_j)` for polynomials, exact. Zero iff the tuple is linearly
/// dependent over C.
pub fn wronskian_poly(fs: &[UniPoly]) -> UniPoly {
    assert!(!fs.is_empty());
    let k = fs.len();
    let mut rows: Vec<Vec<UniPoly>> = Vec::with_capacity(k);
    let mut current: Vec<UniPoly> = fs.to_vec();
    for _ in 0..k {
        rows.push(current.clone());
        current = current.iter().map(UniPoly::derivative).collect();
    }
    det(&rows)
}

/// Symbolic-derivative Wronskian for exponential polynomials, exact.
pub fn wronskian_exp(fs: &[ExpPoly]) -> ExpPoly {
    assert!(!fs.is_empty());
    let k = fs.len();
    let mut rows: Vec<Vec<ExpPoly>> = Vec::with_capacity(k);
    let mut current: Vec<ExpPoly> = fs.to_vec();
    for _ in 0..k {
        rows.push(current.clone());
        current = current.iter().map(ExpPoly::derivative).collect();
    }
    det(&rows)
}

pub fn wronskian_of_curve(f: &Curve) -> WronskianFn {
    match f.components() {
        Components::Poly(cs) => WronskianFn::Poly(wronskian_poly(cs)),
        Components::Exp(cs) => WronskianFn::Exp(wronskian_exp(cs)),
    }
}
