//! Homogeneous forms in `n+1` variables: fixed (exact scalar coefficients)
//! and moving (rational-function coefficients).

use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::multiindex::MultiIndex;
use super::scalar::{ExactC, Scalar};
use super::unipoly::UniPoly;
use super::unirational::UniRational;
use super::AlgebraError;

/// Degree-`d` homogeneous form in `n+1` variables. Only nonzero terms are
/// stored; every stored index has degree exactly `d` and at least one term
/// is present.
#[derive(Clone, PartialEq, Eq)]
pub struct HomogeneousForm<C> {
    n: usize,
    d: u32,
    terms: BTreeMap<MultiIndex, C>,
}

pub type FixedForm = HomogeneousForm<ExactC>;
pub type MovingForm = HomogeneousForm<UniRational>;

/// Coefficient rings a form can live over.
pub trait Coefficient: Clone {
    fn coeff_is_zero(&self) -> bool;
}

impl Coefficient for ExactC {
    fn coeff_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl Coefficient for UniRational {
    fn coeff_is_zero(&self) -> bool {
        self.is_zero()
    }
}

impl<C: Coefficient> HomogeneousForm<C> {
    pub fn new(
        n: usize,
        d: u32,
        terms: impl IntoIterator<Item = (MultiIndex, C)>,
    ) -> Result<Self, AlgebraError> {
        if d == 0 {
            return Err(AlgebraError::InvalidForm("degree must be >= 1".into()));
        }
        let mut map = BTreeMap::new();
        for (ix, c) in terms {
            if ix.num_vars() != n + 1 {
                return Err(AlgebraError::InvalidForm(format!(
                    "index {ix:?} has {} entries, expected {}",
                    ix.num_vars(),
                    n + 1
                )));
            }
            if ix.degree() != d {
                return Err(AlgebraError::InvalidForm(format!(
                    "index {ix:?} has degree {}, expected {d}",
                    ix.degree()
                )));
            }
            if c.coeff_is_zero() {
                continue;
            }
            if map.insert(ix.clone(), c).is_some() {
                return Err(AlgebraError::InvalidForm(format!("duplicate index {ix:?}")));
            }
        }
        if map.is_empty() {
            return Err(AlgebraError::InvalidForm("all coefficients vanish".into()));
        }
        Ok(HomogeneousForm { n, d, terms: map })
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn degree(&self) -> u32 {
        self.d
    }

    pub fn terms(&self) -> impl Iterator<Item = (&MultiIndex, &C)> {
        self.terms.iter()
    }

    pub fn coeff(&self, ix: &MultiIndex) -> Option<&C> {
        self.terms.get(ix)
    }
}

fn pow_c64(base: Complex64, e: u32) -> Complex64 {
    let mut acc = Complex64::new(1.0, 0.0);
    for _ in 0..e {
        acc *= base;
    }
    acc
}

impl FixedForm {
    /// Builds a form from `(exponents, coefficient)` pairs with integer
    /// coefficients; convenient in tests.
    pub fn from_int_terms(n: usize, d: u32, terms: &[(&[u32], i64)]) -> Self {
        HomogeneousForm::new(
            n,
            d,
            terms.iter().map(|(ix, c)| (MultiIndex(ix.to_vec()), ExactC::from_int(*c))),
        )
        .expect("invalid test form")
    }

    pub fn eval(&self, point: &[ExactC]) -> ExactC {
        assert_eq!(point.len(), self.n + 1, "point dimension mismatch");
        let mut acc = ExactC::zero();
        for (ix, c) in &self.terms {
            let mut term = c.clone();
            for (w, &e) in point.iter().zip(ix.0.iter()) {
                if e > 0 {
                    term = &term * &w.pow(e);
                }
            }
            acc = &acc + &term;
        }
        acc
    }

    /// Evaluation with scalar promotion: exact points stay exact, floating
    /// points promote the result to their precision.
    pub fn eval_scalar(&self, point: &[Scalar]) -> Scalar {
        assert_eq!(point.len(), self.n + 1, "point dimension mismatch");
        let mut acc = Scalar::zero();
        for (ix, c) in &self.terms {
            let mut term = Scalar::Exact(c.clone());
            for (w, &e) in point.iter().zip(ix.0.iter()) {
                if e > 0 {
                    term = term.mul(&w.pow(e));
                }
            }
            acc = acc.add(&term);
        }
        acc
    }

    pub fn eval_c64(&self, point: &[Complex64]) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for (ix, c) in &self.terms {
            let mut term = c.to_c64();
            for (w, &e) in point.iter().zip(ix.0.iter()) {
                if e > 0 {
                    term *= pow_c64(*w, e);
                }
            }
            acc += term;
        }
        acc
    }

    /// `sum_j c_j * Q_j` for forms of a common degree and ambient dimension.
    /// Returns an error when the combination collapses to zero.
    pub fn linear_combination(
        forms: &[&FixedForm],
        coeffs: &[ExactC],
    ) -> Result<FixedForm, AlgebraError> {
        assert_eq!(forms.len(), coeffs.len());
        assert!(!forms.is_empty());
        let n = forms[0].n;
        let d = forms[0].d;
        let mut terms: BTreeMap<MultiIndex, ExactC> = BTreeMap::new();
        for (q, c) in forms.iter().zip(coeffs) {
            assert_eq!(q.n, n, "ambient dimension mismatch");
            assert_eq!(q.d, d, "degree mismatch");
            for (ix, a) in &q.terms {
                let add = a * c;
                terms
                    .entry(ix.clone())
                    .and_modify(|t| *t = &*t + &add)
                    .or_insert(add);
            }
        }
        HomogeneousForm::new(n, d, terms)
    }

    /// Euclidean norm of the coefficient vector, as f64.
    pub fn coeff_norm(&self) -> f64 {
        self.terms
            .values()
            .map(|c| {
                let z = c.to_c64();
                z.norm_sqr()
            })
            .sum::<f64>()
            .sqrt()
    }
}

impl MovingForm {
    pub fn from_fixed(q: &FixedForm) -> Self {
        HomogeneousForm {
            n: q.n,
            d: q.d,
            terms: q
                .terms
                .iter()
                .map(|(ix, c)| (ix.clone(), UniRational::constant(c.clone())))
                .collect(),
        }
    }

    /// Coefficient-wise evaluation at `z0`.
    pub fn freeze(&self, z0: &ExactC) -> Result<FixedForm, AlgebraError> {
        let mut terms = BTreeMap::new();
        for (ix, c) in &self.terms {
            if c.has_pole_at(z0) {
                return Err(AlgebraError::PoleAtSample);
            }
            let v = c.eval(z0)?;
            if !v.is_zero() {
                terms.insert(ix.clone(), v);
            }
        }
        if terms.is_empty() {
            return Err(AlgebraError::ZeroAtSample);
        }
        Ok(HomogeneousForm { n: self.n, d: self.d, terms })
    }

    /// All coefficients are constant rational functions.
    pub fn has_constant_coefficients(&self) -> bool {
        self.terms.values().all(UniRational::is_constant)
    }

    /// All pairwise coefficient ratios are constants, i.e. the form is a
    /// single rational function times a constant-coefficient form.
    pub fn ratios_are_constant(&self) -> bool {
        let first = self.terms.values().next().expect("form has a nonzero term");
        self.terms.values().all(|c| (c / first).is_constant())
    }

    /// Divides every coefficient by the one at the lex-smallest stored
    /// index, mirroring the usual normalization of a moving form.
    pub fn normalized(&self) -> MovingForm {
        let pivot = self.terms.values().next().expect("form has a nonzero term").clone();
        HomogeneousForm {
            n: self.n,
            d: self.d,
            terms: self.terms.iter().map(|(ix, c)| (ix.clone(), c / &pivot)).collect(),
        }
    }

    /// Common denominator of all coefficients in canonical (monic) form.
    pub fn common_denominator(&self) -> UniPoly {
        let mut acc = UniPoly::one();
        for c in self.terms.values() {
            let g = acc.gcd(c.den());
            acc = &acc * &c.den().div_exact(&g);
        }
        acc
    }
}

impl<C: fmt::Display> fmt::Debug for HomogeneousForm<C> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Form(n={}, d={};", self.n, self.d)?;
        for (ix, c) in &self.terms {
            write!(f, " [{:?}]*({})", ix, c)?;
        }
        write!(f, ")")
    }
}

// ---------------------------------------------------------------------------
// Wire format
// ---------------------------------------------------------------------------

#[derive(Serialize, Deserialize)]
struct FormRepr {
    n: usize,
    d: u32,
    terms: Vec<TermRepr>,
}

#[derive(Serialize, Deserialize)]
struct TermRepr {
    index: Vec<u32>,
    coeff: CoeffRepr,
}

#[derive(Serialize, Deserialize)]
#[serde(untagged)]
enum CoeffRepr {
    Scalar(ExactC),
    Rational { num: Vec<ExactC>, den: Vec<ExactC> },
}

/// A hypersurface target: fixed or moving. Deserialization picks the fixed
/// kind exactly when every coefficient is a plain scalar.
#[derive(Clone, Debug, PartialEq)]
pub enum TargetForm {
    Fixed(FixedForm),
    Moving(MovingForm),
}

impl TargetForm {
    pub fn ambient_dim(&self) -> usize {
        match self {
            TargetForm::Fixed(q) => q.ambient_dim(),
            TargetForm::Moving(q) => q.ambient_dim(),
        }
    }

    pub fn degree(&self) -> u32 {
        match self {
            TargetForm::Fixed(q) => q.degree(),
            TargetForm::Moving(q) => q.degree(),
        }
    }

    pub fn is_moving(&self) -> bool {
        matches!(self, TargetForm::Moving(_))
    }

    pub fn as_moving(&self) -> MovingForm {
        match self {
            TargetForm::Fixed(q) => MovingForm::from_fixed(q),
            TargetForm::Moving(q) => q.clone(),
        }
    }

    pub fn freeze(&self, z0: &ExactC) -> Result<FixedForm, AlgebraError> {
        match self {
            TargetForm::Fixed(q) => Ok(q.clone()),
            TargetForm::Moving(q) => q.freeze(z0),
        }
    }
}

impl Serialize for TargetForm {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        let repr = match self {
            TargetForm::Fixed(q) => FormRepr {
                n: q.n,
                d: q.d,
                terms: q
                    .terms
                    .iter()
                    .map(|(ix, c)| TermRepr {
                        index: ix.0.clone(),
                        coeff: CoeffRepr::Scalar(c.clone()),
                    })
                    .collect(),
            },
            TargetForm::Moving(q) => FormRepr {
                n: q.n,
                d: q.d,
                terms: q
                    .terms
                    .iter()
                    .map(|(ix, c)| TermRepr {
                        index: ix.0.clone(),
                        coeff: if c.is_constant() {
                            CoeffRepr::Scalar(c.eval(&ExactC::zero()).expect("constant"))
                        } else {
                            CoeffRepr::Rational {
                                num: c.num().coeffs().to_vec(),
                                den: c.den().coeffs().to_vec(),
                            }
                        },
                    })
                    .collect(),
            },
        };
        repr.serialize(serializer)
    }
}

impl<'de> Deserialize<'de> for TargetForm {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        let repr = FormRepr::deserialize(deserializer)?;
        let all_scalar = repr.terms.iter().all(|t| matches!(t.coeff, CoeffRepr::Scalar(_)));
        if all_scalar {
            let terms = repr.terms.into_iter().map(|t| {
                let c = match t.coeff {
                    CoeffRepr::Scalar(c) => c,
                    CoeffRepr::Rational { .. } => unreachable!(),
                };
                (MultiIndex(t.index), c)
            });
            FixedForm::new(repr.n, repr.d, terms).map(TargetForm::Fixed).map_err(D::Error::custom)
        } else {
            let mut terms = Vec::new();
            for t in repr.terms {
                let c = match t.coeff {
                    CoeffRepr::Scalar(c) => UniRational::constant(c),
                    CoeffRepr::Rational { num, den } => {
                        let den = UniPoly::new(den);
                        if den.is_zero() {
                            return Err(D::Error::custom("zero denominator polynomial"));
                        }
                        UniRational::new(UniPoly::new(num), den)
                    }
                };
                terms.push((MultiIndex(t.index), c));
            }
            MovingForm::new(repr.n, repr.d, terms).map(TargetForm::Moving).map_err(D::Error::custom)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::scalar::Rat;
    use num_traits::Zero;

    #[test]
    fn eval_examples() {
        // x0*x1 on P^1 at (2, 3)
        let q = FixedForm::from_int_terms(1, 2, &[(&[1, 1], 1)]);
        assert_eq!(q.eval(&[ExactC::from_int(2), ExactC::from_int(3)]), ExactC::from_int(6));
        // x0^2 + x1^2 at (1, i)
        let q = FixedForm::from_int_terms(1, 2, &[(&[2, 0], 1), (&[0, 2], 1)]);
        assert!(q.eval(&[ExactC::one(), ExactC::i()]).is_zero());
        // x1^2 at (5, 0)
        let q = FixedForm::from_int_terms(1, 2, &[(&[0, 2], 1)]);
        assert!(q.eval(&[ExactC::from_int(5), ExactC::zero()]).is_zero());
    }

    #[test]
    fn homogeneity_exact() {
        let q = FixedForm::from_int_terms(2, 3, &[(&[1, 1, 1], 2), (&[3, 0, 0], -1), (&[0, 2, 1], 5)]);
        let w = [ExactC::from_ints(1, 1), ExactC::from_ints(-2, 3), ExactC::from_ratio(1, 2)];
        let lambda = ExactC::from_ints(2, -1);
        let scaled: Vec<ExactC> = w.iter().map(|x| x * &lambda).collect();
        assert_eq!(q.eval(&scaled), &lambda.pow(3) * &q.eval(&w));
    }

    #[test]
    fn moving_form_freeze() {
        // x1 - z*x0
        let q = MovingForm::new(
            1,
            1,
            vec![
                (MultiIndex(vec![0, 1]), UniRational::one()),
                (MultiIndex(vec![1, 0]), UniRational::from_poly(UniPoly::from_ints(&[0, -1]))),
            ],
        )
        .unwrap();
        let frozen = q.freeze(&ExactC::from_int(2)).unwrap();
        let expect = FixedForm::from_int_terms(1, 1, &[(&[0, 1], 1), (&[1, 0], -2)]);
        assert_eq!(frozen, expect);

        // (1/z) x0 at 0 -> pole
        let p = MovingForm::new(
            1,
            1,
            vec![(MultiIndex(vec![1, 0]), UniRational::new(UniPoly::one(), UniPoly::var()))],
        )
        .unwrap();
        assert!(matches!(p.freeze(&ExactC::zero()), Err(AlgebraError::PoleAtSample)));

        // z x0 + z x1 at 0 -> all coefficients vanish
        let zpoly = UniRational::from_poly(UniPoly::var());
        let r = MovingForm::new(
            1,
            1,
            vec![(MultiIndex(vec![1, 0]), zpoly.clone()), (MultiIndex(vec![0, 1]), zpoly)],
        )
        .unwrap();
        assert!(matches!(r.freeze(&ExactC::zero()), Err(AlgebraError::ZeroAtSample)));
    }

    #[test]
    fn target_form_json_roundtrip() {
        let json = r#"{"n":1,"d":1,"terms":[
            {"index":[0,1],"coeff":"1"},
            {"index":[1,0],"coeff":{"num":["0","-1"],"den":["1"]}}
        ]}"#;
        let t: TargetForm = serde_json::from_str(json).unwrap();
        assert!(t.is_moving());
        let back = serde_json::to_string(&t).unwrap();
        let t2: TargetForm = serde_json::from_str(&back).unwrap();
        assert_eq!(t, t2);

        let json_fixed = r#"{"n":1,"d":2,"terms":[{"index":[1,1],"coeff":"1/2+1/3*i"}]}"#;
        let t: TargetForm = serde_json::from_str(json_fixed).unwrap();
        assert!(!t.is_moving());
        match &t {
            TargetForm::Fixed(q) => {
                let c = q.coeff(&MultiIndex(vec![1, 1])).unwrap();
                assert_eq!(c.re, Rat::new(1.into(), 2.into()));
                assert!(!c.im.is_zero());
            }
            _ => unreachable!(),
        }
    }
}
