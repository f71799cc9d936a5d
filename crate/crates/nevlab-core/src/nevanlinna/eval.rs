//! Float evaluation caches. The exact types convert coefficients to f64
//! once; quadrature and contour walks then run allocation-free.

use num_complex::Complex64;

use crate::algebra::UniPoly;
use crate::curves::{Components, ComposedFn, Curve, ExpPoly, NumeratorFn};

#[derive(Clone, Debug)]
pub struct PolyEval {
    coeffs: Vec<Complex64>,
}

impl PolyEval {
    pub fn new(p: &UniPoly) -> Self {
        PolyEval { coeffs: p.coeffs().iter().map(|c| c.to_c64()).collect() }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }
}

#[derive(Clone, Debug)]
pub struct ExpEval {
    terms: Vec<(Complex64, PolyEval)>,
}

impl ExpEval {
    pub fn new(e: &ExpPoly) -> Self {
        ExpEval {
            terms: e
                .terms()
                .iter()
                .map(|(f, p)| (f.to_c64(), PolyEval::new(p)))
                .collect(),
        }
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (f, p) in &self.terms {
            acc += p.eval(z) * (f * z).exp();
        }
        acc
    }
}

#[derive(Clone, Debug)]
pub enum FnEval {
    Poly(PolyEval),
    Exp(ExpEval),
}

impl FnEval {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            FnEval::Poly(p) => p.eval(z),
            FnEval::Exp(e) => e.eval(z),
        }
    }
}

impl From<&NumeratorFn> for FnEval {
    fn from(n: &NumeratorFn) -> Self {
        match n {
            NumeratorFn::Poly(p) => FnEval::Poly(PolyEval::new(p)),
            NumeratorFn::Exp(e) => FnEval::Exp(ExpEval::new(e)),
        }
    }
}

/// Cached evaluator for a composed function `num/den`.
#[derive(Clone, Debug)]
pub struct ComposedEval {
    num: FnEval,
    den: Option<PolyEval>,
}

impl ComposedEval {
    pub fn new(g: &ComposedFn) -> Self {
        let den = if g.den().is_constant() && g.den() == &UniPoly::one() {
            None
        } else {
            Some(PolyEval::new(g.den()))
        };
        ComposedEval { num: FnEval::from(g.num()), den }
    }

    pub fn num_eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z)
    }

    pub fn log_abs(&self, z: Complex64) -> f64 {
        let mut v = self.num.eval(z).norm().ln();
        if let Some(den) = &self.den {
            v -= den.eval(z).norm().ln();
        }
        v
    }
}

/// Cached evaluator for a curve's reduced representation.
#[derive(Clone, Debug)]
pub struct CurveEval {
    comps: Vec<FnEval>,
}

impl CurveEval {
    pub fn new(f: &Curve) -> Self {
        let comps = match f.components() {
            Components::Poly(cs) => cs.iter().map(|p| FnEval::Poly(PolyEval::new(p))).collect(),
            Components::Exp(cs) => cs.iter().map(|e| FnEval::Exp(ExpEval::new(e))).collect(),
        };
        CurveEval { comps }
    }

    /// `log ||f~(z)||`.
    pub fn log_norm(&self, z: Complex64) -> f64 {
        0.5 * self.comps.iter().map(|c| c.eval(z).norm_sqr()).sum::<f64>().ln()
    }

    pub fn eval(&self, z: Complex64) -> Vec<Complex64> {
        self.comps.iter().map(|c| c.eval(z)).collect()
    }
}
