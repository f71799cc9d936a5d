//! Scalar fields: exact rational-complex numbers and configurable-precision
//! floating complex numbers.
//!
//! All position and rank decisions in this crate run on [`ExactC`]; the
//! floating kind exists for evaluation at user-chosen precision and for
//! promoting mixed-precision arithmetic.

use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;

use num_bigint::{BigInt, Sign};
use num_complex::Complex64;
use num_rational::BigRational;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use super::AlgebraError;

/// Arbitrary-precision rational, the base field for real and imaginary parts.
pub type Rat = BigRational;

fn rat_from_i64(v: i64) -> Rat {
    Rat::from_integer(BigInt::from(v))
}

/// Exact rational-complex number `re + im*i` with arbitrary-precision parts.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactC {
    pub re: Rat,
    pub im: Rat,
}

impl ExactC {
    pub fn new(re: Rat, im: Rat) -> Self {
        ExactC { re, im }
    }

    pub fn zero() -> Self {
        ExactC { re: Rat::zero(), im: Rat::zero() }
    }

    pub fn one() -> Self {
        ExactC { re: Rat::one(), im: Rat::zero() }
    }

    pub fn i() -> Self {
        ExactC { re: Rat::zero(), im: Rat::one() }
    }

    pub fn from_int(v: i64) -> Self {
        ExactC { re: rat_from_i64(v), im: Rat::zero() }
    }

    pub fn from_ints(re: i64, im: i64) -> Self {
        ExactC { re: rat_from_i64(re), im: rat_from_i64(im) }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        ExactC {
            re: Rat::new(BigInt::from(num), BigInt::from(den)),
            im: Rat::zero(),
        }
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.re.is_one() && self.im.is_zero()
    }

    pub fn is_real(&self) -> bool {
        self.im.is_zero()
    }

    pub fn conj(&self) -> Self {
        ExactC { re: self.re.clone(), im: -self.im.clone() }
    }

    /// `|z|^2` as an exact rational.
    pub fn norm_sqr(&self) -> Rat {
        &self.re * &self.re + &self.im * &self.im
    }

    /// Multiplicative inverse; `None` for zero.
    pub fn inv(&self) -> Option<Self> {
        if self.is_zero() {
            return None;
        }
        let n = self.norm_sqr();
        Some(ExactC { re: &self.re / &n, im: -(&self.im / &n) })
    }

    pub fn pow(&self, mut e: u32) -> Self {
        let mut base = self.clone();
        let mut acc = ExactC::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = &acc * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        acc
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(
            self.re.to_f64().unwrap_or(f64::NAN),
            self.im.to_f64().unwrap_or(f64::NAN),
        )
    }
}

impl Add for &ExactC {
    type Output = ExactC;
    fn add(self, rhs: &ExactC) -> ExactC {
        ExactC { re: &self.re + &rhs.re, im: &self.im + &rhs.im }
    }
}

impl Sub for &ExactC {
    type Output = ExactC;
    fn sub(self, rhs: &ExactC) -> ExactC {
        ExactC { re: &self.re - &rhs.re, im: &self.im - &rhs.im }
    }
}

impl Mul for &ExactC {
    type Output = ExactC;
    fn mul(self, rhs: &ExactC) -> ExactC {
        ExactC {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }
}

impl Div for &ExactC {
    type Output = ExactC;
    fn div(self, rhs: &ExactC) -> ExactC {
        let inv = rhs.inv().expect("division by zero ExactC");
        self * &inv
    }
}

impl Neg for &ExactC {
    type Output = ExactC;
    fn neg(self) -> ExactC {
        ExactC { re: -self.re.clone(), im: -self.im.clone() }
    }
}

macro_rules! owned_ops {
    ($t:ty) => {
        impl Add for $t {
            type Output = $t;
            fn add(self, rhs: $t) -> $t {
                &self + &rhs
            }
        }
        impl Sub for $t {
            type Output = $t;
            fn sub(self, rhs: $t) -> $t {
                &self - &rhs
            }
        }
        impl Mul for $t {
            type Output = $t;
            fn mul(self, rhs: $t) -> $t {
                &self * &rhs
            }
        }
        impl Neg for $t {
            type Output = $t;
            fn neg(self) -> $t {
                -&self
            }
        }
    };
}

owned_ops!(ExactC);

fn fmt_rat(r: &Rat) -> String {
    if r.denom().is_one() {
        format!("{}", r.numer())
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

impl fmt::Display for ExactC {
    /// Canonical text form: `a/b`, `c/d*i`, or `a/b+c/d*i` (`-` when the
    /// imaginary part is negative).
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.im.is_zero() {
            return write!(f, "{}", fmt_rat(&self.re));
        }
        if self.re.is_zero() {
            return write!(f, "{}*i", fmt_rat(&self.im));
        }
        if self.im.is_negative() {
            write!(f, "{}-{}*i", fmt_rat(&self.re), fmt_rat(&-self.im.clone()))
        } else {
            write!(f, "{}+{}*i", fmt_rat(&self.re), fmt_rat(&self.im))
        }
    }
}

impl fmt::Debug for ExactC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "ExactC({})", self)
    }
}

fn parse_rat(s: &str) -> Result<Rat, AlgebraError> {
    let s = s.trim();
    let bad = || AlgebraError::Parse(format!("invalid rational `{s}`"));
    if let Some((num, den)) = s.split_once('/') {
        let n = BigInt::from_str(num.trim()).map_err(|_| bad())?;
        let d = BigInt::from_str(den.trim()).map_err(|_| bad())?;
        if d.is_zero() {
            return Err(AlgebraError::Parse(format!("zero denominator in `{s}`")));
        }
        Ok(Rat::new(n, d))
    } else {
        let n = BigInt::from_str(s).map_err(|_| bad())?;
        Ok(Rat::from_integer(n))
    }
}

impl FromStr for ExactC {
    type Err = AlgebraError;

    /// Parses the exact grammar `a/b`, `c/d*i`, `a/b+c/d*i`, `a/b-c/d*i`
    /// (integers allowed in place of ratios, bare `i` allowed).
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s: String = s.chars().filter(|c| !c.is_whitespace()).collect();
        if s.is_empty() {
            return Err(AlgebraError::Parse("empty scalar".into()));
        }
        // Split into real and imaginary summands at a top-level +/- that is
        // not a leading sign and not part of a previous term's sign.
        let chars: Vec<char> = s.chars().collect();
        let mut split = None;
        for (k, &c) in chars.iter().enumerate().skip(1) {
            if (c == '+' || c == '-') && chars[k - 1] != '/' && chars[k - 1] != '+' && chars[k - 1] != '-' {
                split = Some(k);
            }
        }
        let (re_part, im_part) = match split {
            Some(k) => (&s[..k], &s[k..]),
            None => {
                if s.ends_with('i') {
                    ("", s.as_str())
                } else {
                    (s.as_str(), "")
                }
            }
        };
        let parse_im = |t: &str| -> Result<Rat, AlgebraError> {
            let t = t.strip_suffix('i').ok_or_else(|| {
                AlgebraError::Parse(format!("imaginary part `{t}` missing i"))
            })?;
            let t = t.strip_suffix('*').unwrap_or(t);
            match t {
                "" | "+" => Ok(Rat::one()),
                "-" => Ok(-Rat::one()),
                _ => parse_rat(t),
            }
        };
        let re = if re_part.is_empty() { Rat::zero() } else { parse_rat(re_part)? };
        let im = if im_part.is_empty() { Rat::zero() } else { parse_im(im_part)? };
        Ok(ExactC { re, im })
    }
}

impl Serialize for ExactC {
    fn serialize<S: Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.serialize_str(&self.to_string())
    }
}

impl<'de> Deserialize<'de> for ExactC {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        use serde::de::Error;
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Repr {
            Int(i64),
            Text(String),
        }
        match Repr::deserialize(deserializer)? {
            Repr::Int(v) => Ok(ExactC::from_int(v)),
            Repr::Text(t) => t.parse().map_err(D::Error::custom),
        }
    }
}

// ---------------------------------------------------------------------------
// Soft floating point with runtime precision
// ---------------------------------------------------------------------------

/// Binary floating-point number with a runtime precision of at least 53
/// significand bits. Value is `mant * 2^exp` with `2^(prec-1) <= |mant| <
/// 2^prec` when nonzero.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BigFloat {
    mant: BigInt,
    exp: i64,
    prec: u32,
}

pub const MIN_PRECISION: u32 = 53;

impl BigFloat {
    pub fn zero(prec: u32) -> Self {
        BigFloat { mant: BigInt::zero(), exp: 0, prec: prec.max(MIN_PRECISION) }
    }

    pub fn precision(&self) -> u32 {
        self.prec
    }

    pub fn is_zero(&self) -> bool {
        self.mant.is_zero()
    }

    fn normalized(mant: BigInt, exp: i64, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        if mant.is_zero() {
            return BigFloat::zero(prec);
        }
        let bits = mant.bits() as i64;
        let shift = bits - prec as i64;
        if shift <= 0 {
            BigFloat { mant: mant << (-shift) as u32, exp: exp + shift, prec }
        } else {
            // Round to nearest, ties to even.
            let shift = shift as u32;
            let neg = mant.sign() == Sign::Minus;
            let mag = mant.magnitude().clone();
            let kept = &mag >> shift;
            let rem = &mag - (&kept << shift);
            let half = num_bigint::BigUint::one() << (shift - 1);
            let mut kept = kept;
            if rem > half || (rem == half && (&kept & num_bigint::BigUint::one()) == num_bigint::BigUint::one()) {
                kept += num_bigint::BigUint::one();
            }
            let mut out = BigFloat {
                mant: BigInt::from_biguint(if neg { Sign::Minus } else { Sign::Plus }, kept),
                exp: exp + shift as i64,
                prec,
            };
            // Rounding may have produced one extra bit.
            if out.mant.bits() as i64 > prec as i64 {
                out.mant >>= 1;
                out.exp += 1;
            }
            out
        }
    }

    pub fn from_f64(v: f64, prec: u32) -> Self {
        assert!(v.is_finite(), "BigFloat::from_f64 requires finite input");
        if v == 0.0 {
            return BigFloat::zero(prec);
        }
        let bits = v.to_bits();
        let sign = if bits >> 63 == 1 { -1i64 } else { 1 };
        let biased = ((bits >> 52) & 0x7ff) as i64;
        let frac = bits & ((1u64 << 52) - 1);
        let (mant, exp) = if biased == 0 {
            (frac, -1074)
        } else {
            (frac | (1u64 << 52), biased - 1075)
        };
        BigFloat::normalized(BigInt::from(sign * mant as i64), exp, prec)
    }

    pub fn from_rat(r: &Rat, prec: u32) -> Self {
        let prec = prec.max(MIN_PRECISION);
        if r.is_zero() {
            return BigFloat::zero(prec);
        }
        let nbits = r.numer().bits() as i64;
        let dbits = r.denom().bits() as i64;
        // Scale so the integer quotient carries prec+2 significant bits.
        let shift = (prec as i64 + 2) - (nbits - dbits);
        let (num, exp) = if shift >= 0 {
            (r.numer() << shift as u32, -shift)
        } else {
            (r.numer().clone(), 0)
        };
        let q = if shift >= 0 { &num / r.denom() } else { (&num >> (-shift) as u32) / r.denom() };
        let exp = if shift >= 0 { exp } else { -shift };
        BigFloat::normalized(q, exp, prec)
    }

    pub fn to_f64(&self) -> f64 {
        if self.is_zero() {
            return 0.0;
        }
        let m = self.mant.to_f64().unwrap_or(f64::NAN);
        m * 2f64.powi(self.exp.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    fn with_prec(&self, prec: u32) -> Self {
        BigFloat::normalized(self.mant.clone(), self.exp, prec)
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return rhs.with_prec(prec);
        }
        if rhs.is_zero() {
            return self.with_prec(prec);
        }
        // Align exponents exactly; operands are finite so this is exact.
        let (lo, hi) = if self.exp <= rhs.exp { (self, rhs) } else { (rhs, self) };
        let gap = hi.exp - lo.exp;
        // When the gap dwarfs the precision the small operand only perturbs
        // rounding; fold it into a sticky bit instead of a giant shift.
        if gap > (2 * prec + 64) as i64 {
            let mut m = hi.mant.clone() << 2;
            if lo.mant.sign() == Sign::Minus {
                m -= BigInt::one();
            } else {
                m += BigInt::one();
            }
            return BigFloat::normalized(m, hi.exp - 2, prec);
        }
        let m = (hi.mant.clone() << gap as u32) + &lo.mant;
        BigFloat::normalized(m, lo.exp, prec)
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.add(&rhs.neg())
    }

    pub fn neg(&self) -> Self {
        BigFloat { mant: -self.mant.clone(), exp: self.exp, prec: self.prec }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        let prec = self.prec.max(rhs.prec);
        BigFloat::normalized(&self.mant * &rhs.mant, self.exp + rhs.exp, prec)
    }

    pub fn div(&self, rhs: &Self) -> Self {
        assert!(!rhs.is_zero(), "division by zero BigFloat");
        let prec = self.prec.max(rhs.prec);
        if self.is_zero() {
            return BigFloat::zero(prec);
        }
        let extra = prec + 3;
        let num = &self.mant << extra;
        let q = num / &rhs.mant;
        BigFloat::normalized(q, self.exp - extra as i64 - rhs.exp, prec)
    }

    /// Total order on values (not representations).
    pub fn cmp_value(&self, rhs: &Self) -> std::cmp::Ordering {
        use std::cmp::Ordering;
        let d = self.sub(rhs);
        if d.is_zero() {
            Ordering::Equal
        } else if d.mant.sign() == Sign::Minus {
            Ordering::Less
        } else {
            Ordering::Greater
        }
    }
}

/// Floating complex scalar; both parts share the carried precision.
#[derive(Clone, Debug, PartialEq)]
pub struct FloatC {
    pub re: BigFloat,
    pub im: BigFloat,
}

impl FloatC {
    pub fn new(re: BigFloat, im: BigFloat) -> Self {
        let prec = re.precision().max(im.precision());
        FloatC { re: re.with_prec(prec), im: im.with_prec(prec) }
    }

    pub fn from_f64(re: f64, im: f64, prec: u32) -> Self {
        FloatC { re: BigFloat::from_f64(re, prec), im: BigFloat::from_f64(im, prec) }
    }

    pub fn from_exact(z: &ExactC, prec: u32) -> Self {
        FloatC { re: BigFloat::from_rat(&z.re, prec), im: BigFloat::from_rat(&z.im, prec) }
    }

    pub fn precision(&self) -> u32 {
        self.re.precision().max(self.im.precision())
    }

    pub fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    pub fn to_c64(&self) -> Complex64 {
        Complex64::new(self.re.to_f64(), self.im.to_f64())
    }

    pub fn add(&self, rhs: &Self) -> Self {
        FloatC { re: self.re.add(&rhs.re), im: self.im.add(&rhs.im) }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        FloatC { re: self.re.sub(&rhs.re), im: self.im.sub(&rhs.im) }
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        FloatC {
            re: self.re.mul(&rhs.re).sub(&self.im.mul(&rhs.im)),
            im: self.re.mul(&rhs.im).add(&self.im.mul(&rhs.re)),
        }
    }

    pub fn div(&self, rhs: &Self) -> Self {
        let den = rhs.re.mul(&rhs.re).add(&rhs.im.mul(&rhs.im));
        let re = self.re.mul(&rhs.re).add(&self.im.mul(&rhs.im)).div(&den);
        let im = self.im.mul(&rhs.re).sub(&self.re.mul(&rhs.im)).div(&den);
        FloatC { re, im }
    }
}

/// A scalar is either exact rational-complex or floating complex with a
/// carried precision. Exact/exact arithmetic never rounds; any floating
/// operand promotes the result to floating at the larger precision.
#[derive(Clone, Debug, PartialEq)]
pub enum Scalar {
    Exact(ExactC),
    Float(FloatC),
}

impl Scalar {
    pub fn zero() -> Self {
        Scalar::Exact(ExactC::zero())
    }

    pub fn is_zero(&self) -> bool {
        match self {
            Scalar::Exact(z) => z.is_zero(),
            Scalar::Float(z) => z.is_zero(),
        }
    }

    pub fn to_c64(&self) -> Complex64 {
        match self {
            Scalar::Exact(z) => z.to_c64(),
            Scalar::Float(z) => z.to_c64(),
        }
    }

    fn promote(a: &Scalar, b: &Scalar) -> Option<u32> {
        match (a, b) {
            (Scalar::Exact(_), Scalar::Exact(_)) => None,
            (Scalar::Float(x), Scalar::Exact(_)) => Some(x.precision()),
            (Scalar::Exact(_), Scalar::Float(y)) => Some(y.precision()),
            (Scalar::Float(x), Scalar::Float(y)) => Some(x.precision().max(y.precision())),
        }
    }

    fn as_float(&self, prec: u32) -> FloatC {
        match self {
            Scalar::Exact(z) => FloatC::from_exact(z, prec),
            Scalar::Float(z) => z.clone(),
        }
    }

    pub fn add(&self, rhs: &Scalar) -> Scalar {
        match Scalar::promote(self, rhs) {
            None => match (self, rhs) {
                (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a + b),
                _ => unreachable!(),
            },
            Some(p) => Scalar::Float(self.as_float(p).add(&rhs.as_float(p))),
        }
    }

    pub fn mul(&self, rhs: &Scalar) -> Scalar {
        match Scalar::promote(self, rhs) {
            None => match (self, rhs) {
                (Scalar::Exact(a), Scalar::Exact(b)) => Scalar::Exact(a * b),
                _ => unreachable!(),
            },
            Some(p) => Scalar::Float(self.as_float(p).mul(&rhs.as_float(p))),
        }
    }

    pub fn pow(&self, e: u32) -> Scalar {
        match self {
            Scalar::Exact(z) => Scalar::Exact(z.pow(e)),
            Scalar::Float(z) => {
                let mut acc = FloatC::from_f64(1.0, 0.0, z.precision());
                for _ in 0..e {
                    acc = acc.mul(z);
                }
                Scalar::Float(acc)
            }
        }
    }
}
