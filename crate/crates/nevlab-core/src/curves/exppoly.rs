//! Exponential polynomials: finite sums `sum_j p_j(z) e^{lambda_j z}` with
//! exact polynomial parts and exact frequencies.
//!
//! Distinct-frequency terms are linearly independent over the polynomials,
//! so the zero test and all ring operations are exact.

use std::fmt;

use num_complex::Complex64;

use crate::algebra::{ExactC, UniPoly};

/// Canonical form: terms sorted by frequency (lexicographic on exact real
/// then imaginary part), zero polynomial parts dropped.
#[derive(Clone, PartialEq, Eq)]
pub struct ExpPoly {
    terms: Vec<(ExactC, UniPoly)>,
}

fn freq_key(a: &ExactC) -> (crate::algebra::Rat, crate::algebra::Rat) {
    (a.re.clone(), a.im.clone())
}

impl ExpPoly {
    pub fn new(terms: impl IntoIterator<Item = (ExactC, UniPoly)>) -> Self {
        let mut merged: Vec<(ExactC, UniPoly)> = Vec::new();
        for (freq, poly) in terms {
            if poly.is_zero() {
                continue;
            }
            match merged.iter_mut().find(|(f, _)| *f == freq) {
                Some((_, p)) => *p = &*p + &poly,
                None => merged.push((freq, poly)),
            }
        }
        merged.retain(|(_, p)| !p.is_zero());
        merged.sort_by(|(a, _), (b, _)| freq_key(a).cmp(&freq_key(b)));
        ExpPoly { terms: merged }
    }

    pub fn zero() -> Self {
        ExpPoly { terms: vec![] }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        ExpPoly::new([(ExactC::zero(), p)])
    }

    /// `e^{lambda z}`.
    pub fn exp_term(lambda: ExactC) -> Self {
        ExpPoly::new([(lambda, UniPoly::one())])
    }

    pub fn terms(&self) -> &[(ExactC, UniPoly)] {
        &self.terms
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// The plain polynomial when no genuine exponential term is present.
    pub fn as_poly(&self) -> Option<&UniPoly> {
        match self.terms.as_slice() {
            [] => None,
            [(f, p)] if f.is_zero() => Some(p),
            _ => None,
        }
    }

    pub fn add(&self, rhs: &ExpPoly) -> ExpPoly {
        ExpPoly::new(self.terms.iter().chain(rhs.terms.iter()).cloned())
    }

    pub fn neg(&self) -> ExpPoly {
        ExpPoly { terms: self.terms.iter().map(|(f, p)| (f.clone(), -p)).collect() }
    }

    pub fn sub(&self, rhs: &ExpPoly) -> ExpPoly {
        self.add(&rhs.neg())
    }

    pub fn mul(&self, rhs: &ExpPoly) -> ExpPoly {
        let mut terms = Vec::new();
        for (fa, pa) in &self.terms {
            for (fb, pb) in &rhs.terms {
                terms.push((fa + fb, pa * pb));
            }
        }
        ExpPoly::new(terms)
    }

    pub fn mul_poly(&self, p: &UniPoly) -> ExpPoly {
        ExpPoly::new(self.terms.iter().map(|(f, q)| (f.clone(), q * p)))
    }

    pub fn scale(&self, c: &ExactC) -> ExpPoly {
        ExpPoly::new(self.terms.iter().map(|(f, q)| (f.clone(), q.scale(c))))
    }

    pub fn pow(&self, e: u32) -> ExpPoly {
        let mut acc = ExpPoly::from_poly(UniPoly::one());
        for _ in 0..e {
            acc = acc.mul(self);
        }
        acc
    }

    /// Term-wise derivative: `(p e^{lz})' = (p' + l p) e^{lz}`.
    pub fn derivative(&self) -> ExpPoly {
        ExpPoly::new(self.terms.iter().map(|(f, p)| {
            let dp = &p.derivative() + &p.scale(f);
            (f.clone(), dp)
        }))
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (f, p) in &self.terms {
            acc += p.eval_c64(z) * (f.to_c64() * z).exp();
        }
        acc
    }

    pub fn frequencies(&self) -> impl Iterator<Item = &ExactC> {
        self.terms.iter().map(|(f, _)| f)
    }

    pub fn max_frequency_modulus(&self) -> f64 {
        self.terms.iter().map(|(f, _)| f.to_c64().norm()).fold(0.0, f64::max)
    }
}

impl fmt::Display for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (freq, p) in &self.terms {
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            if freq.is_zero() {
                write!(f, "[{p}]")?;
            } else {
                write!(f, "[{p}]*e^(({freq})z)")?;
            }
        }
        Ok(())
    }
}

impl fmt::Debug for ExpPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExpPoly[{}]", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn exact_zero_detection() {
        let a = ExpPoly::exp_term(ExactC::one());
        let b = a.neg();
        assert!(a.add(&b).is_zero());
        // e^z * e^z - e^{2z} == 0
        let sq = a.mul(&a);
        let e2z = ExpPoly::exp_term(ExactC::from_int(2));
        assert!(sq.sub(&e2z).is_zero());
    }

    #[test]
    fn derivative_of_z_times_exp() {
        // (z e^z)' = (1 + z) e^z
        let p = ExpPoly::new([(ExactC::one(), UniPoly::var())]);
        let expect = ExpPoly::new([(ExactC::one(), UniPoly::from_ints(&[1, 1]))]);
        assert_eq!(p.derivative(), expect);
    }

    #[test]
    fn eval_exp_minus_one() {
        let g = ExpPoly::exp_term(ExactC::one()).sub(&ExpPoly::from_poly(UniPoly::one()));
        let at_zero = g.eval_c64(Complex64::new(0.0, 0.0));
        assert!(at_zero.norm() < 1e-15);
        let at_2pii = g.eval_c64(Complex64::new(0.0, 2.0 * std::f64::consts::PI));
        assert!(at_2pii.norm() < 1e-12);
    }
}
