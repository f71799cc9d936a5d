//! Argument-principle zero counting by adaptive phase tracking along
//! circles and rectangle boundaries, with recursive box subdivision.
//!
//! Phase steps are bisected until each jump is below a quarter turn and the
//! magnitude ratio is moderate; totals must then land within 1e-3 of an
//! integer multiple of a full turn before rounding.

use std::collections::VecDeque;

use num_complex::Complex64;

use super::{DivisorMethod, NevanlinnaError, ZeroDivisor, ZeroPoint};
use crate::curves::ExpPoly;

use super::eval::ExpEval;

const MIN_MAG: f64 = 1e-280;
const MAX_DEPTH: u32 = 52;
const INTEGER_GATE: f64 = 1e-3;

enum WalkFailure {
    /// A sample was (numerically) on a zero, or refinement hit the depth
    /// limit hinting a zero on the path.
    Singular,
    Budget,
}

struct Walker<'a> {
    g: &'a dyn Fn(Complex64) -> Complex64,
    evals_left: u32,
}

impl<'a> Walker<'a> {
    fn new(g: &'a dyn Fn(Complex64) -> Complex64, budget: u32) -> Self {
        Walker { g, evals_left: budget }
    }

    fn sample(&mut self, z: Complex64) -> Result<Complex64, WalkFailure> {
        if self.evals_left == 0 {
            return Err(WalkFailure::Budget);
        }
        self.evals_left -= 1;
        let v = (self.g)(z);
        if !v.is_finite() || v.norm() < MIN_MAG {
            return Err(WalkFailure::Singular);
        }
        Ok(v)
    }

    /// Accumulated argument change along `path` restricted to `[t0, t1]`,
    /// given endpoint values.
    fn phase(
        &mut self,
        path: &dyn Fn(f64) -> Complex64,
        t0: f64,
        f0: Complex64,
        t1: f64,
        f1: Complex64,
        depth: u32,
    ) -> Result<f64, WalkFailure> {
        let ratio = f1 / f0;
        let mag = ratio.norm();
        let dphi = ratio.arg();
        if dphi.abs() <= std::f64::consts::FRAC_PI_2 && (0.0625..=16.0).contains(&mag) {
            return Ok(dphi);
        }
        if depth >= MAX_DEPTH {
            return Err(WalkFailure::Singular);
        }
        let tm = 0.5 * (t0 + t1);
        let fm = self.sample(path(tm))?;
        Ok(self.phase(path, t0, f0, tm, fm, depth + 1)?
            + self.phase(path, tm, fm, t1, f1, depth + 1)?)
    }

    /// Total winding (in turns) along a closed path sampled at `coarse`
    /// initial points.
    fn winding_closed(
        &mut self,
        path: &dyn Fn(f64) -> Complex64,
        coarse: usize,
    ) -> Result<f64, WalkFailure> {
        let mut ts = Vec::with_capacity(coarse + 1);
        let mut fs = Vec::with_capacity(coarse + 1);
        for k in 0..coarse {
            let t = k as f64 / coarse as f64;
            ts.push(t);
            fs.push(self.sample(path(t))?);
        }
        ts.push(1.0);
        fs.push(fs[0]);
        let mut total = 0.0;
        for k in 0..coarse {
            total += self.phase(path, ts[k], fs[k], ts[k + 1], fs[k + 1], 0)?;
        }
        Ok(total / std::f64::consts::TAU)
    }
}

fn gate_integer(w: f64) -> Result<i64, NevanlinnaError> {
    let rounded = w.round();
    if (w - rounded).abs() > INTEGER_GATE {
        return Err(NevanlinnaError::WindingGate { estimate: w });
    }
    Ok(rounded as i64)
}

/// Winding number of `g` around 0 along `|z| = r`, with the integer gate
/// applied. `Err(BoundaryZero)` marks a (near-)zero on the contour.
pub fn winding_on_circle(
    g: &dyn Fn(Complex64) -> Complex64,
    r: f64,
    budget: u32,
) -> Result<i64, NevanlinnaError> {
    let path = move |t: f64| {
        let theta = std::f64::consts::TAU * t;
        Complex64::new(r * theta.cos(), r * theta.sin())
    };
    let mut walker = Walker::new(g, budget);
    match walker.winding_closed(&path, 64) {
        Ok(w) => gate_integer(w),
        Err(WalkFailure::Singular) => Err(NevanlinnaError::BoundaryZero),
        Err(WalkFailure::Budget) => Err(NevanlinnaError::NoConvergence),
    }
}

#[derive(Clone, Copy, Debug)]
struct Rect {
    lo: Complex64,
    hi: Complex64,
}

impl Rect {
    fn corners(&self) -> [Complex64; 4] {
        [
            self.lo,
            Complex64::new(self.hi.re, self.lo.im),
            self.hi,
            Complex64::new(self.lo.re, self.hi.im),
        ]
    }

    fn center(&self) -> Complex64 {
        0.5 * (self.lo + self.hi)
    }

    fn diameter(&self) -> f64 {
        (self.hi - self.lo).norm()
    }
}

fn winding_on_rect(
    g: &dyn Fn(Complex64) -> Complex64,
    rect: &Rect,
    budget: u32,
) -> Result<i64, WalkFailure> {
    let corners = rect.corners();
    let path = move |t: f64| {
        let s = t * 4.0;
        let k = (s.floor() as usize).min(3);
        let frac = s - k as f64;
        corners[k] + (corners[(k + 1) % 4] - corners[k]) * frac
    };
    let mut walker = Walker::new(g, budget);
    let w = walker.winding_closed(&path, 16)?;
    let rounded = w.round();
    if (w - rounded).abs() > INTEGER_GATE {
        // Treat a failed gate like a singular walk: the split gets jittered.
        return Err(WalkFailure::Singular);
    }
    Ok(rounded as i64)
}

/// Split offsets tried when a zero sits on or near a split line. None of
/// them is zero: successful splits certify their lines avoid zeros, so
/// inherited box edges stay clean.
const JITTERS: [f64; 6] = [0.0137, -0.0211, 0.0314, -0.0419, 0.0523, -0.0617];

const BOX_BUDGET: u32 = 60_000;
const MAX_BOXES: usize = 200_000;

/// Isolates the zeros of an exponential polynomial inside `|z| <= r` by
/// recursive box subdivision with winding counts. Boxes shrink below the
/// spec'd diameter and report one zero of multiplicity equal to the
/// winding number.
pub fn isolate_zeros_exp(e: &ExpPoly, r: f64) -> Result<ZeroDivisor, NevanlinnaError> {
    if e.is_zero() {
        return Err(NevanlinnaError::IdenticallyZero);
    }
    let eval = ExpEval::new(e);
    let g = move |z: Complex64| eval.eval(z);

    // Disk winding with boundary nudging.
    let mut radius = r;
    let mut nudged = None;
    let mut disk_winding = None;
    let mut bump = 1e-9;
    for _ in 0..3 {
        match winding_on_circle(&g, radius, BOX_BUDGET) {
            Ok(w) => {
                disk_winding = Some(w);
                break;
            }
            Err(NevanlinnaError::BoundaryZero) => {
                radius *= 1.0 + bump;
                bump *= 4.0;
                nudged = Some(radius);
            }
            Err(other) => return Err(other),
        }
    }
    let Some(disk_winding) = disk_winding else {
        return Err(NevanlinnaError::BoundaryZero);
    };
    if disk_winding == 0 {
        return Ok(ZeroDivisor {
            radius,
            nudged,
            method: DivisorMethod::ArgumentPrinciple,
            zeros: vec![],
        });
    }

    // Subdivide the circumscribing square; zeros outside the disk are
    // isolated too and filtered at the end. Grow the padding when a zero
    // sits on the initial square boundary.
    let mut root = None;
    for pad_factor in [1.0 + 1e-7, 1.0 + 3.7e-3, 1.0 + 1.13e-2] {
        let pad = radius * pad_factor;
        let rect = Rect { lo: Complex64::new(-pad, -pad), hi: Complex64::new(pad, pad) };
        if let Ok(w) = winding_on_rect(&g, &rect, BOX_BUDGET) {
            root = Some((rect, w));
            break;
        }
    }
    let Some((root, root_w)) = root else {
        return Err(NevanlinnaError::BoundaryZero);
    };

    let mut queue: VecDeque<(Rect, i64)> = VecDeque::new();
    if root_w != 0 {
        queue.push_back((root, root_w));
    }
    let mut zeros: Vec<ZeroPoint> = Vec::new();
    let mut popped = 0usize;
    while let Some((rect, w)) = queue.pop_front() {
        popped += 1;
        if popped > MAX_BOXES {
            return Err(NevanlinnaError::NoConvergence);
        }
        if rect.diameter() < 1e-8 {
            zeros.push(ZeroPoint {
                location: rect.center(),
                multiplicity: w as u32,
                winding_residual: 0.0,
            });
            continue;
        }
        let mut split_ok = false;
        'jitter: for (jx, jy) in JITTERS.iter().flat_map(|&a| JITTERS.iter().map(move |&b| (a, b)))
        {
            let mx = rect.lo.re + (rect.hi.re - rect.lo.re) * (0.5 + jx);
            let my = rect.lo.im + (rect.hi.im - rect.lo.im) * (0.5 + jy);
            let children = [
                Rect { lo: rect.lo, hi: Complex64::new(mx, my) },
                Rect { lo: Complex64::new(mx, rect.lo.im), hi: Complex64::new(rect.hi.re, my) },
                Rect { lo: Complex64::new(rect.lo.re, my), hi: Complex64::new(mx, rect.hi.im) },
                Rect { lo: Complex64::new(mx, my), hi: rect.hi },
            ];
            let mut windings = [0i64; 4];
            for (slot, child) in windings.iter_mut().zip(children.iter()) {
                match winding_on_rect(&g, child, BOX_BUDGET) {
                    Ok(cw) => *slot = cw,
                    Err(_) => continue 'jitter,
                }
            }
            if windings.iter().sum::<i64>() != w {
                continue 'jitter;
            }
            for (child, cw) in children.iter().zip(windings) {
                if cw != 0 {
                    queue.push_back((*child, cw));
                }
            }
            split_ok = true;
            break;
        }
        if !split_ok {
            if std::env::var("NEVLAB_WINDING_DEBUG").is_ok() {
                eprintln!("split failed everywhere at {rect:?} w={w}");
                let probe = winding_on_rect(&g, &rect, BOX_BUDGET);
                eprintln!("  re-walk of the same rect: {:?}", probe.map_err(|e| match e { WalkFailure::Singular => "singular", WalkFailure::Budget => "budget" }));
            }
            return Err(NevanlinnaError::NoConvergence);
        }
    }

    let kept: Vec<ZeroPoint> =
        zeros.into_iter().filter(|z| z.location.norm() <= radius).collect();
    let counted: i64 = kept.iter().map(|z| z.multiplicity as i64).sum();
    if counted != disk_winding {
        return Err(NevanlinnaError::WindingMismatch {
            boxes: counted,
            disk: disk_winding,
        });
    }
    Ok(ZeroDivisor { radius, nudged, method: DivisorMethod::ArgumentPrinciple, zeros: kept })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::{ExactC, UniPoly};

    fn exp_minus_one() -> ExpPoly {
        ExpPoly::exp_term(ExactC::one()).sub(&ExpPoly::from_poly(UniPoly::one()))
    }

    #[test]
    fn winding_of_plain_exp_is_zero() {
        let e = ExpEval::new(&ExpPoly::exp_term(ExactC::one()));
        let g = move |z: Complex64| e.eval(z);
        assert_eq!(winding_on_circle(&g, 5.0, 60_000).unwrap(), 0);
    }

    #[test]
    fn winding_counts_classical_zeros() {
        let e = ExpEval::new(&exp_minus_one());
        let g = move |z: Complex64| e.eval(z);
        // zeros at 2 pi i k: counts 1, 3, 5 inside r = 1, 7, 13.
        assert_eq!(winding_on_circle(&g, 1.0, 60_000).unwrap(), 1);
        assert_eq!(winding_on_circle(&g, 7.0, 60_000).unwrap(), 3);
        assert_eq!(winding_on_circle(&g, 13.0, 60_000).unwrap(), 5);
    }

    #[test]
    fn isolate_exp_minus_one_at_seven() {
        let div = isolate_zeros_exp(&exp_minus_one(), 7.0).unwrap();
        assert_eq!(div.zeros.len(), 3);
        let tau = std::f64::consts::TAU;
        let mut ims: Vec<f64> = div.zeros.iter().map(|z| z.location.im).collect();
        ims.sort_by(|a, b| a.partial_cmp(b).unwrap());
        assert!((ims[0] + tau).abs() < 1e-6);
        assert!(ims[1].abs() < 1e-6);
        assert!((ims[2] - tau).abs() < 1e-6);
        for z in &div.zeros {
            assert_eq!(z.multiplicity, 1);
            assert!(z.location.re.abs() < 1e-6);
        }
    }

    #[test]
    fn multiplicity_two_cluster() {
        // (e^z - 1)^2 has a double zero at 0.
        let sq = exp_minus_one().mul(&exp_minus_one());
        let div = isolate_zeros_exp(&sq, 1.0).unwrap();
        assert_eq!(div.zeros.len(), 1);
        assert_eq!(div.zeros[0].multiplicity, 2);
        assert!(div.zeros[0].location.norm() < 1e-6);
    }
}
