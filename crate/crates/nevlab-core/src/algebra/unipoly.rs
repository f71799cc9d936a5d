//! Univariate polynomials in `z` over the exact rational-complex field.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::scalar::ExactC;

/// Dense univariate polynomial; `coeffs[k]` multiplies `z^k`, the leading
/// coefficient is nonzero, and the zero polynomial has no coefficients.
#[derive(Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(transparent)]
pub struct UniPoly {
    coeffs: Vec<ExactC>,
}

impl UniPoly {
    pub fn new(mut coeffs: Vec<ExactC>) -> Self {
        while coeffs.last().map_or(false, ExactC::is_zero) {
            coeffs.pop();
        }
        UniPoly { coeffs }
    }

    pub fn zero() -> Self {
        UniPoly { coeffs: vec![] }
    }

    pub fn one() -> Self {
        UniPoly { coeffs: vec![ExactC::one()] }
    }

    pub fn constant(c: ExactC) -> Self {
        UniPoly::new(vec![c])
    }

    /// The monomial `z`.
    pub fn var() -> Self {
        UniPoly { coeffs: vec![ExactC::zero(), ExactC::one()] }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        UniPoly::new(coeffs.iter().map(|&c| ExactC::from_int(c)).collect())
    }

    pub fn coeffs(&self) -> &[ExactC] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        if self.is_zero() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn lead(&self) -> Option<&ExactC> {
        self.coeffs.last()
    }

    pub fn eval(&self, z: &ExactC) -> ExactC {
        let mut acc = ExactC::zero();
        for c in self.coeffs.iter().rev() {
            acc = &(&acc * z) + c;
        }
        acc
    }

    pub fn eval_c64(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::new(0.0, 0.0);
        for c in self.coeffs.iter().rev() {
            acc = acc * z + c.to_c64();
        }
        acc
    }

    pub fn derivative(&self) -> UniPoly {
        if self.coeffs.len() <= 1 {
            return UniPoly::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, c)| &ExactC::from_int(k as i64) * c)
            .collect();
        UniPoly::new(coeffs)
    }

    pub fn scale(&self, c: &ExactC) -> UniPoly {
        UniPoly::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiply by `z^k`.
    pub fn shift_up(&self, k: usize) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![ExactC::zero(); k];
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly { coeffs }
    }

    /// Euclidean division; panics on zero divisor.
    pub fn divrem(&self, div: &UniPoly) -> (UniPoly, UniPoly) {
        let dd = div.degree().expect("division by zero polynomial");
        let lead_inv = div.lead().unwrap().inv().unwrap();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (UniPoly::zero(), self.clone());
        }
        let mut quot = vec![ExactC::zero(); rem.len() - dd];
        while rem.len() > dd {
            let k = rem.len() - 1 - dd;
            let factor = &rem[rem.len() - 1] * &lead_inv;
            for j in 0..dd {
                let sub = &factor * &div.coeffs[j];
                rem[k + j] = &rem[k + j] - &sub;
            }
            rem.pop();
            while rem.last().map_or(false, ExactC::is_zero) {
                rem.pop();
            }
            quot[k] = factor;
        }
        (UniPoly::new(quot), UniPoly::new(rem))
    }

    pub fn rem(&self, div: &UniPoly) -> UniPoly {
        self.divrem(div).1
    }

    /// Exact quotient; panics if `div` does not divide `self`.
    pub fn div_exact(&self, div: &UniPoly) -> UniPoly {
        let (q, r) = self.divrem(div);
        assert!(r.is_zero(), "div_exact with nonzero remainder");
        q
    }

    pub fn monic(&self) -> UniPoly {
        match self.lead() {
            None => UniPoly::zero(),
            Some(l) => self.scale(&l.inv().unwrap()),
        }
    }

    /// Monic gcd via the Euclidean algorithm.
    pub fn gcd(&self, other: &UniPoly) -> UniPoly {
        let mut a = self.clone();
        let mut b = other.clone();
        while !b.is_zero() {
            let r = a.rem(&b);
            a = b;
            b = r.monic();
        }
        a.monic()
    }

    pub fn pow(&self, e: u32) -> UniPoly {
        let mut acc = UniPoly::one();
        for _ in 0..e {
            acc = &acc * self;
        }
        acc
    }

    /// Square-free decomposition (Yun): returns `(g_i, m_i)` with the `g_i`
    /// monic, square-free, pairwise coprime, nonconstant, and
    /// `self = lead * prod g_i^{m_i}`.
    pub fn squarefree_decomposition(&self) -> Vec<(UniPoly, u32)> {
        if self.is_constant() {
            return vec![];
        }
        let f = self.monic();
        let df = f.derivative();
        let a0 = f.gcd(&df);
        let mut b = f.div_exact(&a0);
        let mut d = &df.div_exact(&a0) - &b.derivative();
        let mut out = vec![];
        let mut mult = 1u32;
        while !b.is_constant() {
            let g = b.gcd(&d.monic());
            let g = if g.is_zero() { UniPoly::one() } else { g };
            if !g.is_constant() {
                out.push((g.clone(), mult));
            }
            b = b.div_exact(&g);
            let c = d.div_exact(&g);
            d = &c - &b.derivative();
            mult += 1;
        }
        out
    }
}

impl Add for &UniPoly {
    type Output = UniPoly;
    fn add(self, rhs: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let mut coeffs = Vec::with_capacity(n);
        for k in 0..n {
            let a = self.coeffs.get(k).cloned().unwrap_or_else(ExactC::zero);
            let b = rhs.coeffs.get(k).cloned().unwrap_or_else(ExactC::zero);
            coeffs.push(&a + &b);
        }
        UniPoly::new(coeffs)
    }
}

impl Sub for &UniPoly {
    type Output = UniPoly;
    fn sub(self, rhs: &UniPoly) -> UniPoly {
        self + &(-rhs)
    }
}

impl Neg for &UniPoly {
    type Output = UniPoly;
    fn neg(self) -> UniPoly {
        UniPoly { coeffs: self.coeffs.iter().map(|c| -c).collect() }
    }
}

impl Mul for &UniPoly {
    type Output = UniPoly;
    fn mul(self, rhs: &UniPoly) -> UniPoly {
        if self.is_zero() || rhs.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![ExactC::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                let prod = a * b;
                coeffs[i + j] = &coeffs[i + j] + &prod;
            }
        }
        UniPoly::new(coeffs)
    }
}

impl fmt::Display for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            match k {
                0 => write!(f, "({c})")?,
                1 => write!(f, "({c})*z")?,
                _ => write!(f, "({c})*z^{k}")?,
            }
        }
        Ok(())
    }
}

impl fmt::Debug for UniPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "UniPoly[{}]", self)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divrem_reconstructs() {
        let a = UniPoly::from_ints(&[2, 0, -3, 1, 4]);
        let b = UniPoly::from_ints(&[1, 1, 1]);
        let (q, r) = a.divrem(&b);
        let back = &(&q * &b) + &r;
        assert_eq!(back, a);
        assert!(r.degree().unwrap_or(0) < b.degree().unwrap());
    }

    #[test]
    fn gcd_of_shared_factor() {
        let shared = UniPoly::from_ints(&[-1, 1]); // z - 1
        let a = &shared * &UniPoly::from_ints(&[1, 1]);
        let b = &shared * &UniPoly::from_ints(&[2, 0, 1]);
        assert_eq!(a.gcd(&b), shared.monic());
    }

    #[test]
    fn squarefree_of_z2_times_zm1() {
        // z^2 (z - 1)
        let p = &UniPoly::from_ints(&[0, 0, 1]) * &UniPoly::from_ints(&[-1, 1]);
        let dec = p.squarefree_decomposition();
        assert_eq!(dec.len(), 2);
        let mut rebuilt = UniPoly::one();
        for (g, m) in &dec {
            rebuilt = &rebuilt * &g.pow(*m);
        }
        assert_eq!(rebuilt, p.monic());
        let mults: Vec<u32> = dec.iter().map(|(_, m)| *m).collect();
        assert_eq!(mults, vec![1, 2]);
    }

    #[test]
    fn eval_horner() {
        let p = UniPoly::from_ints(&[1, -2, 1]); // (z-1)^2
        assert!(p.eval(&ExactC::from_int(1)).is_zero());
        assert_eq!(p.eval(&ExactC::from_int(3)), ExactC::from_int(4));
    }
}
