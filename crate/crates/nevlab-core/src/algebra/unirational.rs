//! Univariate rational functions of `z`, the coefficient field for moving
//! hypersurfaces.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::scalar::ExactC;
use super::unipoly::UniPoly;
use super::AlgebraError;

/// Rational function `num/den` kept in canonical form: coprime parts and a
/// monic denominator.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "UniRationalRepr", into = "UniRationalRepr")]
pub struct UniRational {
    num: UniPoly,
    den: UniPoly,
}

#[derive(Serialize, Deserialize)]
struct UniRationalRepr {
    num: Vec<ExactC>,
    den: Vec<ExactC>,
}

impl TryFrom<UniRationalRepr> for UniRational {
    type Error = AlgebraError;
    fn try_from(r: UniRationalRepr) -> Result<Self, Self::Error> {
        let den = UniPoly::new(r.den);
        if den.is_zero() {
            return Err(AlgebraError::Parse("zero denominator polynomial".into()));
        }
        Ok(UniRational::new(UniPoly::new(r.num), den))
    }
}

impl From<UniRational> for UniRationalRepr {
    fn from(r: UniRational) -> Self {
        UniRationalRepr { num: r.num.coeffs().to_vec(), den: r.den.coeffs().to_vec() }
    }
}

impl UniRational {
    /// Canonicalizes `num/den`; panics if `den` is the zero polynomial.
    pub fn new(num: UniPoly, den: UniPoly) -> Self {
        assert!(!den.is_zero(), "UniRational with zero denominator");
        if num.is_zero() {
            return UniRational { num: UniPoly::zero(), den: UniPoly::one() };
        }
        let g = num.gcd(&den);
        let (num, den) = if g.is_constant() { (num, den) } else { (num.div_exact(&g), den.div_exact(&g)) };
        let lead_inv = den.lead().unwrap().inv().unwrap();
        UniRational { num: num.scale(&lead_inv), den: den.scale(&lead_inv) }
    }

    pub fn from_poly(p: UniPoly) -> Self {
        UniRational { num: p, den: UniPoly::one() }
    }

    pub fn constant(c: ExactC) -> Self {
        UniRational::from_poly(UniPoly::constant(c))
    }

    pub fn zero() -> Self {
        UniRational::from_poly(UniPoly::zero())
    }

    pub fn one() -> Self {
        UniRational::from_poly(UniPoly::one())
    }

    pub fn num(&self) -> &UniPoly {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_constant(&self) -> bool {
        self.num.is_constant() && self.den.is_constant()
    }

    pub fn has_pole_at(&self, z: &ExactC) -> bool {
        self.den.eval(z).is_zero()
    }

    /// Evaluation; a zero of the canonical denominator is a genuine pole.
    pub fn eval(&self, z: &ExactC) -> Result<ExactC, AlgebraError> {
        let d = self.den.eval(z);
        if d.is_zero() {
            return Err(AlgebraError::PoleAtPoint);
        }
        Ok(&self.num.eval(z) / &d)
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        self.num.eval_c64(z) / self.den.eval_c64(z)
    }

    pub fn inv(&self) -> Option<UniRational> {
        if self.is_zero() {
            return None;
        }
        Some(UniRational::new(self.den.clone(), self.num.clone()))
    }
}

impl Add for &UniRational {
    type Output = UniRational;
    fn add(self, rhs: &UniRational) -> UniRational {
        let num = &(&self.num * &rhs.den) + &(&rhs.num * &self.den);
        UniRational::new(num, &self.den * &rhs.den)
    }
}

impl Sub for &UniRational {
    type Output = UniRational;
    fn sub(self, rhs: &UniRational) -> UniRational {
        self + &(-rhs)
    }
}

impl Neg for &UniRational {
    type Output = UniRational;
    fn neg(self) -> UniRational {
        UniRational { num: -&self.num, den: self.den.clone() }
    }
}

impl Mul for &UniRational {
    type Output = UniRational;
    fn mul(self, rhs: &UniRational) -> UniRational {
        UniRational::new(&self.num * &rhs.num, &self.den * &rhs.den)
    }
}

impl Div for &UniRational {
    type Output = UniRational;
    fn div(self, rhs: &UniRational) -> UniRational {
        let inv = rhs.inv().expect("division by zero rational function");
        self * &inv
    }
}

impl fmt::Display for UniRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == UniPoly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

impl fmt::Debug for UniRational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniRational[{}]", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn canonical_form_is_coprime_and_monic() {
        // (z^2 - 1) / (2z - 2) = (z + 1) / 2
        let r = UniRational::new(UniPoly::from_ints(&[-1, 0, 1]), UniPoly::from_ints(&[-2, 2]));
        assert_eq!(r.den(), &UniPoly::one());
        assert_eq!(r.num(), &UniPoly::new(vec![ExactC::from_ratio(1, 2), ExactC::from_ratio(1, 2)]));
    }

    #[test]
    fn field_ops() {
        let a = UniRational::new(UniPoly::one(), UniPoly::var()); // 1/z
        let b = UniRational::from_poly(UniPoly::var()); // z
        let p = &a * &b;
        assert_eq!(p, UniRational::one());
        let s = &a + &a;
        assert_eq!(s, UniRational::new(UniPoly::from_ints(&[2]), UniPoly::var()));
    }

    #[test]
    fn pole_detection() {
        let r = UniRational::new(UniPoly::one(), UniPoly::var());
        assert!(r.has_pole_at(&ExactC::zero()));
        assert!(r.eval(&ExactC::zero()).is_err());
        assert_eq!(r.eval(&ExactC::from_int(2)).unwrap(), ExactC::from_ratio(1, 2));
    }
}
