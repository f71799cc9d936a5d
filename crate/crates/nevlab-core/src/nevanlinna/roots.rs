//! Polynomial root isolation: exact square-free decomposition for
//! multiplicities, simultaneous Aberth-Ehrlich iteration for locations.

use num_complex::Complex64;

use crate::algebra::UniPoly;

use super::{DivisorMethod, NevanlinnaError, ZeroDivisor, ZeroPoint};

/// All roots of a square-free polynomial, to roughly 1e-12 relative
/// accuracy. Uses Aberth-Ehrlich simultaneous iteration with Newton
/// polishing.
pub fn aberth_roots(p: &UniPoly) -> Vec<Complex64> {
    let deg = match p.degree() {
        None | Some(0) => return vec![],
        Some(d) => d,
    };
    let coeffs: Vec<Complex64> = p.coeffs().iter().map(|c| c.to_c64()).collect();
    if deg == 1 {
        return vec![-coeffs[0] / coeffs[1]];
    }
    let lead = coeffs[deg];
    let monic: Vec<Complex64> = coeffs.iter().map(|c| c / lead).collect();

    // Cauchy bound on root moduli.
    let bound = 1.0 + monic[..deg].iter().map(|c| c.norm()).fold(0.0, f64::max);
    let mut roots: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = std::f64::consts::TAU * k as f64 / deg as f64 + 0.41;
            Complex64::from_polar(bound * 0.7, angle)
        })
        .collect();

    let eval = |z: Complex64| -> (Complex64, Complex64) {
        let mut v = Complex64::new(0.0, 0.0);
        let mut dv = Complex64::new(0.0, 0.0);
        for c in monic.iter().rev() {
            dv = dv * z + v;
            v = v * z + c;
        }
        (v, dv)
    };

    for _ in 0..400 {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let (v, dv) = eval(roots[i]);
            if v.norm() == 0.0 {
                continue;
            }
            let w = if dv.norm() > 0.0 { v / dv } else { Complex64::new(1e-12, 0.0) };
            let mut s = Complex64::new(0.0, 0.0);
            for j in 0..deg {
                if j != i {
                    s += (roots[i] - roots[j]).inv();
                }
            }
            let denom = Complex64::new(1.0, 0.0) - w * s;
            let step = if denom.norm() > 1e-300 { w / denom } else { w };
            roots[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + roots[i].norm()));
        }
        if max_step < 1e-14 {
            break;
        }
    }
    // Newton polish.
    for r in roots.iter_mut() {
        for _ in 0..3 {
            let (v, dv) = eval(*r);
            if dv.norm() > 0.0 {
                *r -= v / dv;
            }
        }
    }
    roots
}

/// Exact multiplicities via square-free decomposition, locations via the
/// simultaneous iteration; keeps roots inside the (possibly nudged) disk.
pub fn isolate_zeros_poly(p: &UniPoly, r: f64) -> Result<ZeroDivisor, NevanlinnaError> {
    if p.is_zero() {
        return Err(NevanlinnaError::IdenticallyZero);
    }
    let mut all: Vec<(Complex64, u32)> = Vec::new();
    for (factor, mult) in p.squarefree_decomposition() {
        for root in aberth_roots(&factor) {
            all.push((root, mult));
        }
    }
    // Nudge the radius off any root circle.
    let mut radius = r;
    let mut nudged = false;
    for _ in 0..2 {
        let boundary = all.iter().any(|(z, _)| (z.norm() - radius).abs() <= 1e-9 * radius);
        if !boundary {
            break;
        }
        radius *= 1.0 + 1e-9;
        nudged = true;
    }
    if all.iter().any(|(z, _)| (z.norm() - radius).abs() <= 1e-12 * radius) {
        return Err(NevanlinnaError::BoundaryZero);
    }
    let zeros: Vec<ZeroPoint> = all
        .into_iter()
        .filter(|(z, _)| z.norm() <= radius)
        .map(|(z, m)| ZeroPoint { location: z, multiplicity: m, winding_residual: 0.0 })
        .collect();
    Ok(ZeroDivisor {
        radius,
        nudged: if nudged { Some(radius) } else { None },
        method: DivisorMethod::ExactRoots,
        zeros,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn quadratic_roots() {
        // z^2 + 1 -> +/- i
        let p = UniPoly::from_ints(&[1, 0, 1]);
        let mut roots = aberth_roots(&p);
        roots.sort_by(|a, b| a.im.partial_cmp(&b.im).unwrap());
        assert!((roots[0] - Complex64::new(0.0, -1.0)).norm() < 1e-12);
        assert!((roots[1] - Complex64::new(0.0, 1.0)).norm() < 1e-12);
    }

    #[test]
    fn isolate_with_multiplicity() {
        // z^2 (z - 1), r = 2 -> {(0, 2), (1, 1)}
        let p = &UniPoly::from_ints(&[0, 0, 1]) * &UniPoly::from_ints(&[-1, 1]);
        let div = isolate_zeros_poly(&p, 2.0).unwrap();
        assert_eq!(div.zeros.len(), 2);
        let total: u32 = div.zeros.iter().map(|z| z.multiplicity).sum();
        assert_eq!(total, 3);
        let at_zero = div.zeros.iter().find(|z| z.location.norm() < 1e-10).unwrap();
        assert_eq!(at_zero.multiplicity, 2);
    }

    #[test]
    fn roots_outside_disk_dropped() {
        // (z - 3)^5, r = 2 -> empty
        let p = UniPoly::from_ints(&[-3, 1]).pow(5);
        let div = isolate_zeros_poly(&p, 2.0).unwrap();
        assert!(div.zeros.is_empty());
    }

    #[test]
    fn high_degree_random_poly_roots_are_roots() {
        let p = UniPoly::from_ints(&[3, -7, 2, 0, 5, -1, 1, 4]);
        let roots = aberth_roots(&p);
        assert_eq!(roots.len(), 7);
        for z in roots {
            assert!(p.eval_c64(z).norm() < 1e-8, "residual too large at {z}");
        }
    }
}
