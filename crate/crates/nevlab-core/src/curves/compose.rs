//! Composition `Q(f~)` of a hypersurface with a curve's reduced
//! representation.

use thiserror::Error;

use num_complex::Complex64;

use crate::algebra::{TargetForm, UniPoly, UniRational};

use super::exppoly::ExpPoly;
use super::{Components, Curve};

#[derive(Debug, Error)]
pub enum ComposeError {
    /// `Q(f~) == 0`: the curve is algebraically degenerate with respect to
    /// `Q` and the theorem's hypothesis fails.
    #[error("composition is identically zero (degenerate curve/target pair)")]
    IdenticallyZero,
    #[error("form ambient dimension {form} does not match curve target dimension {curve}")]
    DimensionMismatch { form: usize, curve: usize },
}

/// Entire numerator of a composed function.
#[derive(Clone, Debug, PartialEq)]
pub enum NumeratorFn {
    Poly(UniPoly),
    Exp(ExpPoly),
}

impl NumeratorFn {
    pub fn is_zero(&self) -> bool {
        match self {
            NumeratorFn::Poly(p) => p.is_zero(),
            NumeratorFn::Exp(e) => e.is_zero(),
        }
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        match self {
            NumeratorFn::Poly(p) => p.eval_c64(z),
            NumeratorFn::Exp(e) => e.eval_c64(z),
        }
    }

    pub fn derivative(&self) -> NumeratorFn {
        match self {
            NumeratorFn::Poly(p) => NumeratorFn::Poly(p.derivative()),
            NumeratorFn::Exp(e) => NumeratorFn::Exp(e.derivative()),
        }
    }
}

/// `Q(f~)` as `num/den` with entire `num` and monic polynomial `den`
/// (`den == 1` unless `Q` has genuinely rational moving coefficients).
///
/// The zero divisor used by the counting functions is the divisor of `num`;
/// denominator zeros stem from coefficient poles, whose counting weight is
/// absorbed by the slow-coefficient slack.
#[derive(Clone, Debug, PartialEq)]
pub struct ComposedFn {
    num: NumeratorFn,
    den: UniPoly,
}

impl ComposedFn {
    pub fn from_poly(p: UniPoly) -> Self {
        ComposedFn { num: NumeratorFn::Poly(p), den: UniPoly::one() }
    }

    pub fn from_exp(e: ExpPoly) -> Self {
        ComposedFn { num: NumeratorFn::Exp(e), den: UniPoly::one() }
    }

    pub fn num(&self) -> &NumeratorFn {
        &self.num
    }

    pub fn den(&self) -> &UniPoly {
        &self.den
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let n = self.num.eval_c64(z);
        if self.den.is_constant() {
            let c = self.den.eval_c64(Complex64::new(0.0, 0.0));
            n / c
        } else {
            n / self.den.eval_c64(z)
        }
    }

    /// `log |Q(f~)(z)|`.
    pub fn log_abs(&self, z: Complex64) -> f64 {
        let mut v = self.num.eval_c64(z).norm().ln();
        if !self.den.is_constant() {
            v -= self.den.eval_c64(z).norm().ln();
        }
        v
    }
}

/// Composes a (fixed or moving) hypersurface with the curve's reduced
/// representation.
pub fn compose_with_curve(q: &TargetForm, f: &Curve) -> Result<ComposedFn, ComposeError> {
    if q.ambient_dim() != f.target_dim() {
        return Err(ComposeError::DimensionMismatch {
            form: q.ambient_dim(),
            curve: f.target_dim(),
        });
    }
    let composed = match (q, f.components()) {
        (TargetForm::Fixed(q), Components::Poly(cs)) => {
            let mut num = UniPoly::zero();
            for (ix, c) in q.terms() {
                let mut term = UniPoly::constant(c.clone());
                for (comp, &e) in cs.iter().zip(ix.0.iter()) {
                    if e > 0 {
                        term = &term * &comp.pow(e);
                    }
                }
                num = &num + &term;
            }
            ComposedFn { num: NumeratorFn::Poly(num), den: UniPoly::one() }
        }
        (TargetForm::Fixed(q), Components::Exp(cs)) => {
            let mut num = ExpPoly::zero();
            for (ix, c) in q.terms() {
                let mut term = ExpPoly::from_poly(UniPoly::constant(c.clone()));
                for (comp, &e) in cs.iter().zip(ix.0.iter()) {
                    if e > 0 {
                        term = term.mul(&comp.pow(e));
                    }
                }
                num = num.add(&term);
            }
            ComposedFn { num: NumeratorFn::Exp(num), den: UniPoly::one() }
        }
        (TargetForm::Moving(q), Components::Poly(cs)) => {
            let den = q.common_denominator();
            let mut num = UniPoly::zero();
            for (ix, c) in q.terms() {
                let cofactor = den.div_exact(c.den());
                let mut term = &c.num().clone() * &cofactor;
                for (comp, &e) in cs.iter().zip(ix.0.iter()) {
                    if e > 0 {
                        term = &term * &comp.pow(e);
                    }
                }
                num = &num + &term;
            }
            // Cancel shared factors so counting sees the genuine divisor.
            let reduced = UniRational::new(num, den);
            ComposedFn {
                num: NumeratorFn::Poly(reduced.num().clone()),
                den: reduced.den().clone(),
            }
        }
        (TargetForm::Moving(q), Components::Exp(cs)) => {
            let den = q.common_denominator();
            let mut num = ExpPoly::zero();
            for (ix, c) in q.terms() {
                let cofactor = &c.num().clone() * &den.div_exact(c.den());
                let mut term = ExpPoly::from_poly(cofactor);
                for (comp, &e) in cs.iter().zip(ix.0.iter()) {
                    if e > 0 {
                        term = term.mul(&comp.pow(e));
                    }
                }
                num = num.add(&term);
            }
            ComposedFn { num: NumeratorFn::Exp(num), den: den.monic() }
        }
    };
    if composed.num.is_zero() {
        return Err(ComposeError::IdenticallyZero);
    }
    Ok(composed)
}
