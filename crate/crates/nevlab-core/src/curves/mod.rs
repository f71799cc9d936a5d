//! Holomorphic curves `C -> P^n(C)` with reduced representations, growth
//! data, coefficient freezing, and slowness tests for moving hypersurfaces.

mod compose;
mod exppoly;

pub use compose::{compose_with_curve, ComposeError, ComposedFn, NumeratorFn};
pub use exppoly::ExpPoly;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::algebra::{AlgebraError, ExactC, FixedForm, MovingForm, Rat, UniPoly};

#[derive(Debug, Error)]
pub enum CurveError {
    #[error("every component is identically zero")]
    AllZero,
    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

/// The two supported component classes.
#[derive(Clone, Debug, PartialEq)]
pub enum Components {
    Poly(Vec<UniPoly>),
    Exp(Vec<ExpPoly>),
}

/// A holomorphic curve given by a reduced representation
/// `(f_0, ..., f_n)`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve {
    n: usize,
    components: Components,
}

/// Growth class of a curve, consumed as a slack-rate hint.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub enum GrowthData {
    /// `T_f(r) - degree * log r` stays bounded.
    Polynomial { degree: u32 },
    /// `T_f(r)` grows linearly; carries the largest frequency modulus and
    /// the full frequency list.
    ExpPolynomial { lambda_max: f64, frequencies: Vec<ExactC> },
}

/// Divides polynomial components by their gcd; the projective map is
/// unchanged away from the removed common zeros.
pub fn reduce_representation(components: Vec<UniPoly>) -> Result<Curve, CurveError> {
    if components.iter().all(UniPoly::is_zero) {
        return Err(CurveError::AllZero);
    }
    let mut g = UniPoly::zero();
    for c in &components {
        if c.is_zero() {
            continue;
        }
        g = if g.is_zero() { c.monic() } else { g.gcd(c) };
        if g.is_constant() {
            break;
        }
    }
    let reduced: Vec<UniPoly> = if g.is_constant() {
        components
    } else {
        components.iter().map(|c| if c.is_zero() { UniPoly::zero() } else { c.div_exact(&g) }).collect()
    };
    Ok(Curve { n: reduced.len() - 1, components: Components::Poly(reduced) })
}

impl Curve {
    pub fn from_poly_components(components: Vec<UniPoly>) -> Result<Self, CurveError> {
        reduce_representation(components)
    }

    /// Exponential-polynomial curve. Global reducedness of entire
    /// components is not decidable here; callers certify it per disk with
    /// the zero-isolation engine.
    pub fn from_exp_components(components: Vec<ExpPoly>) -> Result<Self, CurveError> {
        if components.iter().all(ExpPoly::is_zero) {
            return Err(CurveError::AllZero);
        }
        Ok(Curve { n: components.len() - 1, components: Components::Exp(components) })
    }

    pub fn target_dim(&self) -> usize {
        self.n
    }

    pub fn components(&self) -> &Components {
        &self.components
    }

    pub fn is_polynomial(&self) -> bool {
        matches!(self.components, Components::Poly(_))
    }

    pub fn eval_c64(&self, z: Complex64) -> Vec<Complex64> {
        match &self.components {
            Components::Poly(cs) => cs.iter().map(|p| p.eval_c64(z)).collect(),
            Components::Exp(cs) => cs.iter().map(|p| p.eval_c64(z)).collect(),
        }
    }

    /// `log ||f~(z)||`, the integrand of the characteristic function.
    pub fn log_norm(&self, z: Complex64) -> f64 {
        let vals = self.eval_c64(z);
        0.5 * vals.iter().map(|v| v.norm_sqr()).sum::<f64>().ln()
    }

    pub fn growth(&self) -> GrowthData {
        match &self.components {
            Components::Poly(cs) => GrowthData::Polynomial {
                degree: cs.iter().filter_map(|p| p.degree()).max().unwrap_or(0) as u32,
            },
            Components::Exp(cs) => {
                let mut frequencies: Vec<ExactC> = Vec::new();
                for c in cs {
                    for f in c.frequencies() {
                        if !frequencies.contains(f) {
                            frequencies.push(f.clone());
                        }
                    }
                }
                let lambda_max =
                    cs.iter().map(ExpPoly::max_frequency_modulus).fold(0.0, f64::max);
                GrowthData::ExpPolynomial { lambda_max, frequencies }
            }
        }
    }
}

/// Coefficient-wise evaluation of a moving form at `z0`.
pub fn freeze_moving(q: &MovingForm, z0: &ExactC) -> Result<FixedForm, AlgebraError> {
    q.freeze(z0)
}

/// Which rule decided a slowness verdict.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SlownessTag {
    /// All coefficient ratios are constants: the coefficient field is C.
    ConstantRatios,
    /// Rational coefficient growth `O(log r)` against linear `T_f`.
    RationalVsExponential,
    /// Nonconstant rational coefficients against `d_f log r` growth: the
    /// ratio does not tend to zero.
    RationalVsPolynomial,
}

/// Growth-class comparison for the slowness hypothesis
/// `T_{Q'}(r) = o(T_f(r))`.
pub fn is_slow(q: &MovingForm, f: &Curve) -> (bool, SlownessTag) {
    if q.ratios_are_constant() {
        return (true, SlownessTag::ConstantRatios);
    }
    match f.components() {
        Components::Exp(_) => (true, SlownessTag::RationalVsExponential),
        Components::Poly(_) => (false, SlownessTag::RationalVsPolynomial),
    }
}

// ---------------------------------------------------------------------------
// Deterministic sample points
// ---------------------------------------------------------------------------

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Seeded sequence of nonzero Gaussian rationals with slowly growing
/// height, used to freeze moving coefficients reproducibly.
pub struct SamplePoints {
    rng: ChaCha8Rng,
    drawn: u64,
}

impl SamplePoints {
    pub fn new(seed: u64) -> Self {
        SamplePoints { rng: ChaCha8Rng::seed_from_u64(seed), drawn: 0 }
    }
}

impl Iterator for SamplePoints {
    type Item = ExactC;

    fn next(&mut self) -> Option<ExactC> {
        let height = 2 + (self.drawn / 4) as i64;
        self.drawn += 1;
        loop {
            let nr = self.rng.gen_range(-height..=height);
            let dr = self.rng.gen_range(1..=height);
            let ni = self.rng.gen_range(-height..=height);
            let di = self.rng.gen_range(1..=height);
            let z = ExactC::new(
                Rat::new(nr.into(), dr.into()),
                Rat::new(ni.into(), di.into()),
            );
            if !z.is_zero() {
                return Some(z);
            }
        }
    }
}

// ---------------------------------------------------------------------------
// Wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct CurveRepr {
    n: usize,
    class: String,
    components: serde_json::Value,
}

#[derive(Serialize, Deserialize)]
struct ExpTermRepr {
    freq: ExactC,
    poly: Vec<ExactC>,
}

impl Serialize for Curve {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        use serde::ser::Error;
        let (class, components) = match &self.components {
            Components::Poly(cs) => {
                let comps: Vec<Vec<ExactC>> = cs.iter().map(|p| p.coeffs().to_vec()).collect();
                ("poly", serde_json::to_value(comps).map_err(S::Error::custom)?)
            }
            Components::Exp(cs) => {
                let comps: Vec<Vec<ExpTermRepr>> = cs
                    .iter()
                    .map(|c| {
                        c.terms()
                            .iter()
                            .map(|(f, p)| ExpTermRepr { freq: f.clone(), poly: p.coeffs().to_vec() })
                            .collect()
                    })
                    .collect();
                ("exppoly", serde_json::to_value(comps).map_err(S::Error::custom)?)
            }
        };
        CurveRepr { n: self.n, class: class.into(), components }.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for Curve {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = CurveRepr::deserialize(deserializer)?;
        let curve = match repr.class.as_str() {
            "poly" => {
                let comps: Vec<Vec<ExactC>> =
                    serde_json::from_value(repr.components).map_err(D::Error::custom)?;
                Curve::from_poly_components(comps.into_iter().map(UniPoly::new).collect())
                    .map_err(D::Error::custom)?
            }
            "exppoly" => {
                let comps: Vec<Vec<ExpTermRepr>> =
                    serde_json::from_value(repr.components).map_err(D::Error::custom)?;
                let comps = comps
                    .into_iter()
                    .map(|terms| {
                        ExpPoly::new(
                            terms.into_iter().map(|t| (t.freq, UniPoly::new(t.poly))),
                        )
                    })
                    .collect();
                Curve::from_exp_components(comps).map_err(D::Error::custom)?
            }
            other => return Err(D::Error::custom(format!("unknown curve class `{other}`"))),
        };
        if curve.target_dim() != repr.n {
            return Err(D::Error::custom(format!(
                "curve has {} components, expected n = {}",
                curve.target_dim() + 1,
                repr.n + 1
            )));
        }
        Ok(curve)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduce_examples() {
        // (z^2, z^3) -> (1, z)
        let c = reduce_representation(vec![
            UniPoly::from_ints(&[0, 0, 1]),
            UniPoly::from_ints(&[0, 0, 0, 1]),
        ])
        .unwrap();
        match c.components() {
            Components::Poly(cs) => {
                assert_eq!(cs[0], UniPoly::one());
                assert_eq!(cs[1], UniPoly::var());
            }
            _ => unreachable!(),
        }

        // (z^2 - 1, z - 1) -> (z + 1, 1)
        let c = reduce_representation(vec![
            UniPoly::from_ints(&[-1, 0, 1]),
            UniPoly::from_ints(&[-1, 1]),
        ])
        .unwrap();
        match c.components() {
            Components::Poly(cs) => {
                assert_eq!(cs[0], UniPoly::from_ints(&[1, 1]));
                assert_eq!(cs[1], UniPoly::one());
            }
            _ => unreachable!(),
        }

        // (1, z) unchanged
        let c = reduce_representation(vec![UniPoly::one(), UniPoly::var()]).unwrap();
        match c.components() {
            Components::Poly(cs) => {
                assert_eq!(cs[0], UniPoly::one());
                assert_eq!(cs[1], UniPoly::var());
            }
            _ => unreachable!(),
        }

        assert!(matches!(
            reduce_representation(vec![UniPoly::zero(), UniPoly::zero()]),
            Err(CurveError::AllZero)
        ));
    }

    #[test]
    fn reduce_is_idempotent() {
        let comps = vec![UniPoly::from_ints(&[0, 2, 2]), UniPoly::from_ints(&[0, 0, 4, 4])];
        let once = reduce_representation(comps).unwrap();
        let twice = match once.components() {
            Components::Poly(cs) => reduce_representation(cs.clone()).unwrap(),
            _ => unreachable!(),
        };
        assert_eq!(once, twice);
    }

    #[test]
    fn growth_data() {
        let c = reduce_representation(vec![UniPoly::one(), UniPoly::from_ints(&[0, 0, 0, 1])])
            .unwrap();
        assert_eq!(c.growth(), GrowthData::Polynomial { degree: 3 });

        let e = Curve::from_exp_components(vec![
            ExpPoly::from_poly(UniPoly::one()),
            ExpPoly::exp_term(ExactC::one()),
        ])
        .unwrap();
        match e.growth() {
            GrowthData::ExpPolynomial { lambda_max, .. } => assert_eq!(lambda_max, 1.0),
            _ => unreachable!(),
        }
    }

    #[test]
    fn slowness_rules() {
        // Q = x1 - z*x0
        let q = MovingForm::new(
            1,
            1,
            vec![
                (crate::algebra::MultiIndex(vec![0, 1]), crate::algebra::UniRational::one()),
                (
                    crate::algebra::MultiIndex(vec![1, 0]),
                    crate::algebra::UniRational::from_poly(UniPoly::from_ints(&[0, -1])),
                ),
            ],
        )
        .unwrap();
        let exp_curve = Curve::from_exp_components(vec![
            ExpPoly::from_poly(UniPoly::one()),
            ExpPoly::exp_term(ExactC::one()),
        ])
        .unwrap();
        let poly_curve = reduce_representation(vec![
            UniPoly::one(),
            UniPoly::from_ints(&[0, 0, 0, 0, 0, 1]),
        ])
        .unwrap();
        assert_eq!(is_slow(&q, &exp_curve), (true, SlownessTag::RationalVsExponential));
        assert_eq!(is_slow(&q, &poly_curve), (false, SlownessTag::RationalVsPolynomial));

        // Constant-coefficient moving form is slow against anything.
        let qc = MovingForm::from_fixed(&FixedForm::from_int_terms(1, 1, &[(&[0, 1], 1)]));
        assert_eq!(is_slow(&qc, &poly_curve), (true, SlownessTag::ConstantRatios));
    }

    #[test]
    fn sample_points_deterministic_and_nonzero() {
        let a: Vec<ExactC> = SamplePoints::new(7).take(10).collect();
        let b: Vec<ExactC> = SamplePoints::new(7).take(10).collect();
        assert_eq!(a, b);
        assert!(a.iter().all(|z| !z.is_zero()));
        let c: Vec<ExactC> = SamplePoints::new(8).take(10).collect();
        assert_ne!(a, c);
    }

    #[test]
    fn curve_json_roundtrip() {
        let c = reduce_representation(vec![UniPoly::one(), UniPoly::var()]).unwrap();
        let s = serde_json::to_string(&c).unwrap();
        let back: Curve = serde_json::from_str(&s).unwrap();
        assert_eq!(c, back);

        let e = Curve::from_exp_components(vec![
            ExpPoly::from_poly(UniPoly::one()),
            ExpPoly::new([(ExactC::one(), UniPoly::from_ints(&[0, 1]))]),
        ])
        .unwrap();
        let s = serde_json::to_string(&e).unwrap();
        let back: Curve = serde_json::from_str(&s).unwrap();
        assert_eq!(e, back);
    }
}
