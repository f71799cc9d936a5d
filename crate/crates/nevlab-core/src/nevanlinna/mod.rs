//! Nevanlinna functionals on the disk family: characteristic, proximity,
//! truncated counting, zero isolation, Wronskians, and defect estimates.
//!
//! The counting integral starts at radius 1, matching the definition
//! `N(r) = int_1^r n(t)/t dt`: a zero at `z_j` contributes
//! `min(mult, M) * log(r / max(|z_j|, 1))`.

mod eval;
mod quad;
mod roots;
mod winding;
mod wronskian;

pub use eval::{ComposedEval, CurveEval, ExpEval, FnEval, PolyEval};
pub use quad::{circle_integral, QuadOpts};
pub use roots::{aberth_roots, isolate_zeros_poly};
pub use winding::{isolate_zeros_exp, winding_on_circle};
pub use wronskian::{wronskian_exp, wronskian_of_curve, wronskian_poly, WronskianFn};

use num_bigint::BigUint;
use num_complex::Complex64;
use num_traits::ToPrimitive;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{FixedForm, TargetForm, UniPoly};
use crate::curves::{compose_with_curve, Components, ComposeError, ComposedFn, Curve, NumeratorFn};

#[derive(Debug, Error)]
pub enum NevanlinnaError {
    #[error("quadrature did not converge (near-circle singularity?)")]
    NoConvergence,
    #[error("function is identically zero")]
    IdenticallyZero,
    #[error("zero on the integration circle persisted after nudging")]
    BoundaryZero,
    #[error("winding estimate {estimate} too far from an integer")]
    WindingGate { estimate: f64 },
    #[error("box windings sum to {boxes} but the disk winding is {disk}")]
    WindingMismatch { boxes: i64, disk: i64 },
    #[error(transparent)]
    Compose(#[from] ComposeError),
    #[error("invalid radius grid: {0}")]
    InvalidGrid(String),
}

// ---------------------------------------------------------------------------
// Divisors, grids, truncations
// ---------------------------------------------------------------------------

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum DivisorMethod {
    ExactRoots,
    ArgumentPrinciple,
}

#[derive(Clone, Debug, Serialize)]
pub struct ZeroPoint {
    #[serde(serialize_with = "ser_c64")]
    pub location: Complex64,
    pub multiplicity: u32,
    /// Distance of the winding estimate from its integer (0 for exact roots).
    pub winding_residual: f64,
}

fn ser_c64<S: serde::Serializer>(z: &Complex64, s: S) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeTuple;
    let mut t = s.serialize_tuple(2)?;
    t.serialize_element(&z.re)?;
    t.serialize_element(&z.im)?;
    t.end()
}

/// Isolated zeros with multiplicities of a composed function inside a disk.
#[derive(Clone, Debug, Serialize)]
pub struct ZeroDivisor {
    pub radius: f64,
    /// Set when the requested radius was nudged off a boundary zero.
    pub nudged: Option<f64>,
    pub method: DivisorMethod,
    pub zeros: Vec<ZeroPoint>,
}

impl ZeroDivisor {
    pub fn total_multiplicity(&self) -> u64 {
        self.zeros.iter().map(|z| z.multiplicity as u64).sum()
    }

    pub fn max_multiplicity(&self) -> u32 {
        self.zeros.iter().map(|z| z.multiplicity).max().unwrap_or(0)
    }
}

/// Strictly increasing evaluation radii, all `>= 1`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RadiusGrid {
    radii: Vec<f64>,
}

impl RadiusGrid {
    pub fn new(radii: Vec<f64>) -> Result<Self, NevanlinnaError> {
        if radii.is_empty() {
            return Err(NevanlinnaError::InvalidGrid("empty grid".into()));
        }
        if radii[0] < 1.0 {
            return Err(NevanlinnaError::InvalidGrid("radii must be >= 1".into()));
        }
        if radii.windows(2).any(|w| w[0] >= w[1]) {
            return Err(NevanlinnaError::InvalidGrid("radii must strictly increase".into()));
        }
        Ok(RadiusGrid { radii })
    }

    pub fn geometric(min: f64, max: f64, count: usize) -> Result<Self, NevanlinnaError> {
        if count < 2 || min <= 0.0 || max <= min {
            return Err(NevanlinnaError::InvalidGrid("need count >= 2 and max > min > 0".into()));
        }
        let ratio = (max / min).powf(1.0 / (count - 1) as f64);
        let radii = (0..count).map(|k| min * ratio.powi(k as i32)).collect();
        RadiusGrid::new(radii)
    }

    pub fn linear(min: f64, max: f64, count: usize) -> Result<Self, NevanlinnaError> {
        if count < 2 || max <= min {
            return Err(NevanlinnaError::InvalidGrid("need count >= 2 and max > min".into()));
        }
        let step = (max - min) / (count - 1) as f64;
        let radii = (0..count).map(|k| min + step * k as f64).collect();
        RadiusGrid::new(radii)
    }

    pub fn radii(&self) -> &[f64] {
        &self.radii
    }

    pub fn max_radius(&self) -> f64 {
        *self.radii.last().unwrap()
    }

    /// The upper half of the grid, where tail criteria are evaluated.
    pub fn tail_half(&self) -> &[f64] {
        &self.radii[self.radii.len() / 2..]
    }
}

/// Multiplicity cap for counting functions.
#[derive(Clone, Debug, PartialEq)]
pub enum Truncation {
    Infinite,
    Level(BigUint),
}

impl Truncation {
    pub fn weight(&self, multiplicity: u32) -> f64 {
        match self {
            Truncation::Infinite => multiplicity as f64,
            Truncation::Level(m) => {
                if &BigUint::from(multiplicity) <= m {
                    multiplicity as f64
                } else {
                    // The cap is below the multiplicity, hence it fits u32.
                    m.to_u32().map(|v| v as f64).unwrap_or(multiplicity as f64)
                }
            }
        }
    }

    /// True when no multiplicity in the divisor reaches the cap.
    pub fn inactive_for(&self, max_multiplicity: u32) -> bool {
        match self {
            Truncation::Infinite => true,
            Truncation::Level(m) => &BigUint::from(max_multiplicity) <= m,
        }
    }
}

impl std::fmt::Display for Truncation {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Truncation::Infinite => write!(f, "inf"),
            Truncation::Level(m) => write!(f, "{m}"),
        }
    }
}

// ---------------------------------------------------------------------------
// Functionals
// ---------------------------------------------------------------------------

/// `T_f(r)`: the circle mean of `log ||f~||` at `r` minus the same at 1.
pub fn characteristic(f: &Curve, r: f64, opts: &QuadOpts) -> Result<f64, NevanlinnaError> {
    assert!(r >= 1.0, "characteristic needs r >= 1");
    let ev = CurveEval::new(f);
    let at_r = circle_integral(&mut |z| ev.log_norm(z), r, opts)?;
    let at_1 = circle_integral(&mut |z| ev.log_norm(z), 1.0, opts)?;
    Ok(at_r - at_1)
}

/// `m(r, phi)` from a direct evaluator of `phi`.
pub fn proximity(
    phi: &dyn Fn(Complex64) -> Complex64,
    r: f64,
    opts: &QuadOpts,
) -> Result<f64, NevanlinnaError> {
    circle_integral(&mut |z| phi(z).norm().ln().max(0.0), r, opts)
}

/// `m(r, phi)` from an evaluator of `log |phi|`; overflow-safe for large
/// moduli.
pub fn proximity_log(
    log_abs_phi: &dyn Fn(Complex64) -> f64,
    r: f64,
    opts: &QuadOpts,
) -> Result<f64, NevanlinnaError> {
    circle_integral(&mut |z| log_abs_phi(z).max(0.0), r, opts)
}

/// Divisor of a composed function inside `|z| <= r`. Polynomial numerators
/// take the exact path; genuine exponential ones use the argument
/// principle.
pub fn isolate_zeros(g: &ComposedFn, r: f64) -> Result<ZeroDivisor, NevanlinnaError> {
    match g.num() {
        NumeratorFn::Poly(p) => isolate_zeros_poly(p, r),
        NumeratorFn::Exp(e) => match e.as_poly() {
            Some(p) => isolate_zeros_poly(p, r),
            None => isolate_zeros_exp(e, r),
        },
    }
}

/// `N^[M](r)` from an already-isolated divisor.
pub fn counting_from_divisor(divisor: &ZeroDivisor, r: f64, trunc: &Truncation) -> f64 {
    divisor
        .zeros
        .iter()
        .map(|z| trunc.weight(z.multiplicity) * (r / z.location.norm().max(1.0)).ln())
        .sum()
}

/// Truncated counting function `N^[M](r, f*Q)`.
pub fn counting(
    f: &Curve,
    q: &TargetForm,
    r: f64,
    trunc: &Truncation,
) -> Result<f64, NevanlinnaError> {
    let g = compose_with_curve(q, f)?;
    let divisor = isolate_zeros(&g, r)?;
    Ok(counting_from_divisor(&divisor, r, trunc))
}

/// Jensen identity residual: quadrature of `log|p|` on `|z| = r` against
/// `log|lead| + sum_j log max(r, |z_j|)` over all roots.
pub fn jensen_check(p: &UniPoly, r: f64, opts: &QuadOpts) -> Result<f64, NevanlinnaError> {
    if p.is_zero() {
        return Err(NevanlinnaError::IdenticallyZero);
    }
    let mut algebraic = p.lead().unwrap().to_c64().norm().ln();
    for (factor, mult) in p.squarefree_decomposition() {
        for root in aberth_roots(&factor) {
            if (root.norm() - r).abs() <= 1e-9 * r {
                return Err(NevanlinnaError::BoundaryZero);
            }
            algebraic += mult as f64 * root.norm().max(r).ln();
        }
    }
    let ev = PolyEval::new(p);
    let quadrature = circle_integral(&mut |z| ev.eval(z).norm().ln(), r, opts)?;
    Ok((quadrature - algebraic).abs())
}

/// First-main-theorem residuals
/// `d T_f(r) - N(r, f*Q) - m(r, ||f~||^d / |Q(f~)|)` over a grid; bounded
/// in `r` when everything is consistent.
pub fn fmt_residual(
    f: &Curve,
    q: &FixedForm,
    grid: &RadiusGrid,
    opts: &QuadOpts,
) -> Result<Vec<f64>, NevanlinnaError> {
    let composed = compose_with_curve(&TargetForm::Fixed(q.clone()), f)?;
    let gev = ComposedEval::new(&composed);
    let fev = CurveEval::new(f);
    let d = q.degree() as f64;
    let base = circle_integral(&mut |z| fev.log_norm(z), 1.0, opts)?;
    let mut out = Vec::with_capacity(grid.radii().len());
    for &r in grid.radii() {
        let t = circle_integral(&mut |z| fev.log_norm(z), r, opts)? - base;
        let divisor = isolate_zeros(&composed, r)?;
        let n = counting_from_divisor(&divisor, r, &Truncation::Infinite);
        let m = proximity_log(&|z| d * fev.log_norm(z) - gev.log_abs(z), r, opts)?;
        out.push(d * t - n - m);
    }
    Ok(out)
}

/// One row of a defect table.
#[derive(Clone, Debug, Serialize)]
pub struct DefectRow {
    pub r: f64,
    pub counting: f64,
    pub characteristic: f64,
    pub ratio: f64,
}

#[derive(Clone, Debug, Serialize)]
pub struct DefectEstimate {
    /// `1 - min over the tail half of N^[M]/(d T_f)`, clamped to [0, 1].
    pub delta: f64,
    pub rows: Vec<DefectRow>,
    pub tail_characteristic: f64,
    /// The tail is short when `T_f(r_max) <= 10`; the estimate is then a
    /// coarse indication only.
    pub converged_tail: bool,
}

/// Truncated defect estimate over a radius grid.
pub fn defect_estimate(
    f: &Curve,
    q: &TargetForm,
    trunc: &Truncation,
    grid: &RadiusGrid,
    opts: &QuadOpts,
) -> Result<DefectEstimate, NevanlinnaError> {
    let composed = compose_with_curve(q, f)?;
    let fev = CurveEval::new(f);
    let d = q.degree() as f64;
    let base = circle_integral(&mut |z| fev.log_norm(z), 1.0, opts)?;
    let mut rows = Vec::with_capacity(grid.radii().len());
    for &r in grid.radii() {
        let t = circle_integral(&mut |z| fev.log_norm(z), r, opts)? - base;
        let divisor = isolate_zeros(&composed, r)?;
        let n = counting_from_divisor(&divisor, r, trunc);
        let ratio = if t > 0.0 { n / (d * t) } else { f64::NAN };
        rows.push(DefectRow { r, counting: n, characteristic: t, ratio });
    }
    let tail_start = rows.len() / 2;
    let min_ratio = rows[tail_start..]
        .iter()
        .map(|row| row.ratio)
        .filter(|v| v.is_finite())
        .fold(f64::INFINITY, f64::min);
    let delta = if min_ratio.is_finite() { (1.0 - min_ratio).clamp(0.0, 1.0) } else { 1.0 };
    let tail_characteristic = rows.last().map(|row| row.characteristic).unwrap_or(0.0);
    Ok(DefectEstimate {
        delta,
        rows,
        tail_characteristic,
        converged_tail: tail_characteristic > 10.0,
    })
}

/// Per-disk reducedness certificate for exponential-polynomial curves:
/// isolates the zeros of the first nonzero component and checks that no
/// other component vanishes there. Polynomial curves are reduced by
/// construction.
pub fn certify_reduced_on_disk(f: &Curve, r: f64) -> Result<bool, NevanlinnaError> {
    match f.components() {
        Components::Poly(_) => Ok(true),
        Components::Exp(cs) => {
            let lead = cs.iter().find(|c| !c.is_zero()).expect("curve has a nonzero component");
            let divisor = match lead.as_poly() {
                Some(p) if p.is_constant() => {
                    return Ok(true);
                }
                Some(p) => isolate_zeros_poly(p, r)?,
                None => isolate_zeros_exp(lead, r)?,
            };
            let evals: Vec<ExpEval> = cs.iter().map(ExpEval::new).collect();
            for zero in &divisor.zeros {
                let all_small = evals.iter().all(|ev| ev.eval(zero.location).norm() < 1e-8);
                if all_small {
                    return Ok(false);
                }
            }
            Ok(true)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::ExactC;
    use crate::curves::ExpPoly;

    fn line_curve() -> Curve {
        // f~ = (1, z)
        Curve::from_poly_components(vec![UniPoly::one(), UniPoly::var()]).unwrap()
    }

    fn exp_curve() -> Curve {
        Curve::from_exp_components(vec![
            ExpPoly::from_poly(UniPoly::one()),
            ExpPoly::exp_term(ExactC::one()),
        ])
        .unwrap()
    }

    #[test]
    fn characteristic_closed_form_line() {
        let opts = QuadOpts::default();
        for r in [2.0, std::f64::consts::E, 7.5, 31.0] {
            let t = characteristic(&line_curve(), r, &opts).unwrap();
            let expect = 0.5 * ((1.0 + r * r) / 2.0).ln();
            assert!((t - expect).abs() < 1e-10, "r={r}: {t} vs {expect}");
        }
    }

    #[test]
    fn characteristic_of_constant_curve_vanishes() {
        let c = Curve::from_poly_components(vec![UniPoly::one(), UniPoly::one()]).unwrap();
        let t = characteristic(&c, 5.0, &QuadOpts::default()).unwrap();
        assert!(t.abs() < 1e-12);
    }

    #[test]
    fn characteristic_exp_is_linear_rate() {
        let t = characteristic(&exp_curve(), 20.0, &QuadOpts::default()).unwrap();
        let ratio = t / 20.0;
        assert!(
            (ratio - std::f64::consts::FRAC_1_PI).abs() < 0.05,
            "T(20)/20 = {ratio} drifted from 1/pi"
        );
    }

    #[test]
    fn proximity_examples() {
        let opts = QuadOpts::default();
        // phi = z: log+ |z| = log r on the circle.
        let m = proximity(&|z| z, 4.0, &opts).unwrap();
        assert!((m - 4f64.ln()).abs() < 1e-12);
        // phi = 1/z at r >= 1: log+ = 0.
        let m = proximity(&|z| z.inv(), 3.0, &opts).unwrap();
        assert!(m.abs() < 1e-12);
        // phi = z - 2 at r = 1: the positive part of log|z-2| integrates to
        // a small positive number.
        let m = proximity(&|z| z - Complex64::new(2.0, 0.0), 1.0, &opts).unwrap();
        assert!(m > 0.4 && m < 0.8, "got {m}");
    }

    #[test]
    fn counting_closed_forms() {
        // f~ = (1, z^2), Q = x1: N(r) = 2 log r, N^[1](r) = log r.
        let f = Curve::from_poly_components(vec![UniPoly::one(), UniPoly::from_ints(&[0, 0, 1])])
            .unwrap();
        let q = TargetForm::Fixed(FixedForm::from_int_terms(1, 1, &[(&[0, 1], 1)]));
        for r in [2.0, 8.0, 100.0] {
            let n = counting(&f, &q, r, &Truncation::Infinite).unwrap();
            assert!((n - 2.0 * r.ln()).abs() < 1e-10, "untruncated at {r}");
            let n1 = counting(&f, &q, r, &Truncation::Level(BigUint::from(1u32))).unwrap();
            assert!((n1 - r.ln()).abs() < 1e-10, "truncated at {r}");
        }
        // f~ = (1, z), Q = x0: composition is 1, no zeros.
        let f = line_curve();
        let q = TargetForm::Fixed(FixedForm::from_int_terms(1, 1, &[(&[1, 0], 1)]));
        assert_eq!(counting(&f, &q, 50.0, &Truncation::Infinite).unwrap(), 0.0);
        // f~ = (1, z), Q = x0 + x1, r = e: zero at -1 contributes 1.
        let q = TargetForm::Fixed(FixedForm::from_int_terms(1, 1, &[(&[1, 0], 1), (&[0, 1], 1)]));
        let n = counting(&f, &q, std::f64::consts::E, &Truncation::Infinite).unwrap();
        assert!((n - 1.0).abs() < 1e-10);
    }

    #[test]
    fn counting_monotonicity_in_truncation_and_radius() {
        let f = Curve::from_poly_components(vec![
            UniPoly::one(),
            &UniPoly::from_ints(&[0, 0, 1]) * &UniPoly::from_ints(&[-2, 1]),
        ])
        .unwrap();
        let q = TargetForm::Fixed(FixedForm::from_int_terms(1, 1, &[(&[0, 1], 1)]));
        let mut prev = 0.0;
        for r in [2.0, 4.0, 9.0, 30.0] {
            let n_inf = counting(&f, &q, r, &Truncation::Infinite).unwrap();
            let n_2 = counting(&f, &q, r, &Truncation::Level(BigUint::from(2u32))).unwrap();
            let n_1 = counting(&f, &q, r, &Truncation::Level(BigUint::from(1u32))).unwrap();
            assert!(n_inf >= n_2 && n_2 >= n_1 && n_1 >= 0.0);
            assert!(n_inf >= prev);
            prev = n_inf;
        }
    }

    #[test]
    fn jensen_reference_values() {
        let opts = QuadOpts::default();
        // p = z - 2 at r = 1: quadrature = log 2.
        let res = jensen_check(&UniPoly::from_ints(&[-2, 1]), 1.0, &opts).unwrap();
        assert!(res < 1e-8, "residual {res}");
        // p = z at r = e.
        let res = jensen_check(&UniPoly::var(), std::f64::consts::E, &opts).unwrap();
        assert!(res < 1e-8);
        // p = z^2 - 1 at r = 2.
        let res = jensen_check(&UniPoly::from_ints(&[-1, 0, 1]), 2.0, &opts).unwrap();
        assert!(res < 1e-8);
    }

    #[test]
    fn fmt_residual_bounded_for_line() {
        let grid = RadiusGrid::new(vec![2.0, 4.0, 8.0, 16.0]).unwrap();
        let q = FixedForm::from_int_terms(1, 1, &[(&[0, 1], 1)]);
        let res = fmt_residual(&line_curve(), &q, &grid, &QuadOpts::default()).unwrap();
        let spread = res.iter().cloned().fold(f64::MIN, f64::max)
            - res.iter().cloned().fold(f64::MAX, f64::min);
        assert!(spread < 1e-6, "FMT residual drifts: {res:?}");
    }

    #[test]
    fn defect_reference_cases() {
        let opts = QuadOpts::default();
        let grid = RadiusGrid::geometric(2.0, 1000.0, 8).unwrap();
        // (1, z) against x0: no intersections, defect 1.
        let d = defect_estimate(
            &line_curve(),
            &TargetForm::Fixed(FixedForm::from_int_terms(1, 1, &[(&[1, 0], 1)])),
            &Truncation::Infinite,
            &grid,
            &opts,
        )
        .unwrap();
        assert_eq!(d.delta, 1.0);
        // (1, z) against x1: N ~ T, defect -> 0.
        let d = defect_estimate(
            &line_curve(),
            &TargetForm::Fixed(FixedForm::from_int_terms(1, 1, &[(&[0, 1], 1)])),
            &Truncation::Infinite,
            &grid,
            &opts,
        )
        .unwrap();
        assert!(d.delta < 0.02, "delta = {}", d.delta);
        // (1, z^2) against x1 truncated at 1: N^[1] = log r, dT ~ 2 log r.
        let f = Curve::from_poly_components(vec![UniPoly::one(), UniPoly::from_ints(&[0, 0, 1])])
            .unwrap();
        let d = defect_estimate(
            &f,
            &TargetForm::Fixed(FixedForm::from_int_terms(1, 1, &[(&[0, 1], 1)])),
            &Truncation::Level(BigUint::from(1u32)),
            &grid,
            &opts,
        )
        .unwrap();
        assert!((d.delta - 0.5).abs() < 0.05, "delta = {}", d.delta);
    }

    #[test]
    fn grid_validation() {
        assert!(RadiusGrid::new(vec![]).is_err());
        assert!(RadiusGrid::new(vec![0.5, 2.0]).is_err());
        assert!(RadiusGrid::new(vec![2.0, 2.0]).is_err());
        let g = RadiusGrid::geometric(2.0, 16.0, 4).unwrap();
        assert_eq!(g.radii().len(), 4);
        assert_eq!(g.tail_half().len(), 2);
    }

    #[test]
    fn reducedness_certificates() {
        assert!(certify_reduced_on_disk(&line_curve(), 10.0).unwrap());
        assert!(certify_reduced_on_disk(&exp_curve(), 10.0).unwrap());
        // (e^z - 1, z e^z - z) share the zero z = 0.
        let shared = Curve::from_exp_components(vec![
            ExpPoly::exp_term(ExactC::one()).sub(&ExpPoly::from_poly(UniPoly::one())),
            ExpPoly::new([(ExactC::one(), UniPoly::var()), (ExactC::zero(), -&UniPoly::var())]),
        ])
        .unwrap();
        assert!(!certify_reduced_on_disk(&shared, 2.0).unwrap());
    }
}
