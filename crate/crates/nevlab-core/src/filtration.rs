//! The combinatorial engine: quotient dimensions of graded pieces modulo a
//! regular sequence, filtration weights and their index sum, and the
//! explicit truncation constants.

use num_bigint::{BigInt, BigUint};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{macaulay_matrix, monomial_count, FixedForm, Rat};

#[derive(Debug, Error)]
pub enum FiltrationError {
    #[error("degree {d} does not divide {l}")]
    NotDivisible { d: u64, l: u64 },
    #[error("invalid input shape: {0}")]
    InvalidShape(String),
    #[error("bound violated: {0}")]
    BoundViolated(String),
}

/// `C(top, k)` with arbitrary-precision result.
pub fn binomial_big(top: u64, k: usize) -> BigUint {
    if (k as u64) > top {
        return BigUint::zero();
    }
    let mut acc = BigUint::one();
    for j in 0..k as u64 {
        acc = acc * BigUint::from(top - j) / BigUint::from(j + 1);
    }
    acc
}

fn binomial_of_big(top: &BigUint, k: usize) -> BigUint {
    let mut acc = BigUint::one();
    for j in 0..k {
        let j = BigUint::from(j);
        if *top < j {
            return BigUint::zero();
        }
        acc = acc * (top - &j);
    }
    let mut fact = BigUint::one();
    for j in 1..=k {
        fact *= BigUint::from(j);
    }
    acc / fact
}

/// Number of `n`-tuples `(s_1, ..., s_n)` with `sum s_i <= cap` and every
/// `s_i <= d - 1`, by inclusion-exclusion over the coordinates that
/// overflow the cap `d - 1`. Equals `d^n` once `cap >= n(d-1)`.
pub fn quotient_dim_combinatorial(n: usize, d: u32, cap: u64) -> BigUint {
    let mut acc = BigInt::zero();
    for j in 0..=n {
        let sub = (j as u64) * (d as u64);
        if sub > cap {
            break;
        }
        let term = BigInt::from(binomial_big(n as u64, j) * binomial_big(cap - sub + n as u64, n));
        if j % 2 == 0 {
            acc += term;
        } else {
            acc -= term;
        }
    }
    assert!(!acc.is_negative(), "inclusion-exclusion must be nonnegative");
    acc.to_biguint().unwrap()
}

/// Rank-based oracle for the same quotient dimension: `C(cap+n, n)` minus
/// the rank of the degree-`cap` multiples of the given forms. The inputs
/// are `n` forms of a common degree in `n+1` variables, in weakly general
/// position (certified with any completion).
pub fn quotient_dim_rank(forms: &[FixedForm], cap: u32) -> u64 {
    assert!(!forms.is_empty());
    let n = forms[0].ambient_dim();
    let total = monomial_count(n, cap) as u64;
    let usable: Vec<FixedForm> =
        forms.iter().filter(|f| f.degree() <= cap).cloned().collect();
    if usable.is_empty() {
        return total;
    }
    let m = macaulay_matrix(&usable, cap);
    total - m.rank() as u64
}

/// Per-level data of the filtration of `V_L` by powers of a regular
/// sequence: all tuples of a common length share one weight.
#[derive(Clone, Debug, Serialize)]
pub struct LevelData {
    /// `||(i)||` of the tuples at this level.
    pub level: u64,
    /// Number of tuples at the level, `C(level+n-1, n-1)`.
    #[serde(serialize_with = "ser_biguint")]
    pub tuple_count: BigUint,
    /// The common quotient dimension `m_k` of the level.
    #[serde(serialize_with = "ser_biguint")]
    pub weight: BigUint,
    /// `sum_{||(i)||=level} i_s` for any coordinate `s`: `C(level+n-1, n)`.
    #[serde(serialize_with = "ser_biguint")]
    pub coordinate_sum: BigUint,
}

fn ser_biguint<S: serde::Serializer>(v: &BigUint, s: S) -> Result<S::Ok, S::Error> {
    s.serialize_str(&v.to_string())
}

fn ser_opt_biguint<S: serde::Serializer>(v: &Option<BigUint>, s: S) -> Result<S::Ok, S::Error> {
    match v {
        Some(v) => s.serialize_some(&v.to_string()),
        None => s.serialize_none(),
    }
}

/// Filtration profile for `(n, d, L)` with `d | L`: the weights `m_k`
/// grouped by level, the tuple count `K`, and the weighted index sum `A`.
#[derive(Clone, Debug, Serialize)]
pub struct FiltrationProfile {
    pub n: usize,
    pub d: u32,
    pub l: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub k_tuples: BigUint,
    pub levels: Vec<LevelData>,
    #[serde(serialize_with = "ser_biguint")]
    pub a_sum: BigUint,
    /// The proven lower bound `d^n * C(L/d, n+1)`.
    #[serde(serialize_with = "ser_biguint")]
    pub a_lower_bound: BigUint,
}

impl FiltrationProfile {
    pub fn weight_at_level(&self, level: u64) -> &BigUint {
        &self.levels[level as usize].weight
    }

    /// Materializes the lexicographically ordered tuple sequence together
    /// with the per-tuple weights; `None` when `K` is too large to store.
    pub fn tuples_with_weights(&self) -> Option<Vec<(Vec<u32>, BigUint)>> {
        const CAP: u64 = 2_000_000;
        if self.k_tuples > BigUint::from(CAP) {
            return None;
        }
        let t = self.l / self.d as u64;
        let mut out = Vec::new();
        let mut current = vec![0u32; self.n];
        enumerate_tuples(&mut current, 0, t as u32, &mut |tuple| {
            let level: u64 = tuple.iter().map(|&v| v as u64).sum();
            out.push((tuple.to_vec(), self.weight_at_level(level).clone()));
        });
        Some(out)
    }
}

fn enumerate_tuples(current: &mut Vec<u32>, pos: usize, budget: u32, f: &mut impl FnMut(&[u32])) {
    if pos == current.len() {
        f(current);
        return;
    }
    for v in 0..=budget {
        current[pos] = v;
        enumerate_tuples(current, pos + 1, budget - v, f);
    }
    current[pos] = 0;
}

/// Builds the filtration profile and checks `A >= d^n C(L/d, n+1)`.
pub fn filtration_profile(n: usize, d: u32, l: u64) -> Result<FiltrationProfile, FiltrationError> {
    if n == 0 || d == 0 {
        return Err(FiltrationError::InvalidShape("need n >= 1 and d >= 1".into()));
    }
    if l % d as u64 != 0 {
        return Err(FiltrationError::NotDivisible { d: d as u64, l });
    }
    let t = l / d as u64;
    let mut levels = Vec::with_capacity(t as usize + 1);
    let mut a_sum = BigUint::zero();
    let mut k_tuples = BigUint::zero();
    for level in 0..=t {
        let weight = quotient_dim_combinatorial(n, d, l - d as u64 * level);
        let tuple_count = binomial_big(level + n as u64 - 1, n - 1);
        let coordinate_sum = binomial_big(level + n as u64 - 1, n);
        a_sum += &weight * &coordinate_sum;
        k_tuples += &tuple_count;
        levels.push(LevelData { level, tuple_count, weight, coordinate_sum });
    }
    debug_assert_eq!(k_tuples, binomial_big(t + n as u64, n));
    let a_lower_bound = BigUint::from(d).pow(n as u32) * binomial_big(t, n + 1);
    if a_sum < a_lower_bound {
        return Err(FiltrationError::BoundViolated(format!(
            "A = {a_sum} below d^n C(L/d, n+1) = {a_lower_bound}"
        )));
    }
    Ok(FiltrationProfile { n, d, l, k_tuples, levels, a_sum, a_lower_bound })
}

// ---------------------------------------------------------------------------
// Certified natural logarithm bounds over the rationals
// ---------------------------------------------------------------------------

/// Lower and upper rational bounds for `ln(1 + y)`, `y > 0`, via the
/// `2 atanh` series with an explicit tail bound. `terms` controls the
/// partial sum length.
fn ln1p_bounds(y: &Rat, terms: usize) -> (Rat, Rat) {
    assert!(y.is_positive());
    let two = Rat::from_integer(2.into());
    let t = y / (&two + y);
    let t2 = (&t * &t).clone();
    let mut sum = Rat::zero();
    let mut power = t.clone();
    for k in 0..terms {
        sum += &power / Rat::from_integer((2 * k as i64 + 1).into());
        power *= &t2;
    }
    // power == t^(2*terms+1); tail <= power / ((2 terms + 1)(1 - t^2)).
    let tail = &power
        / (Rat::from_integer((2 * terms as i64 + 1).into()) * (Rat::one() - &t2));
    let lo = &two * &sum;
    let hi = &two * &(sum + tail);
    (lo, hi)
}

/// `floor(num / ln(1+y))` computed with certified rational bounds on the
/// logarithm, tightened until the floor is unambiguous.
fn floor_div_ln1p(num: &BigUint, y: &Rat) -> BigUint {
    let numer = Rat::from_integer(BigInt::from(num.clone()));
    let mut terms = 8usize;
    loop {
        let (lo, hi) = ln1p_bounds(y, terms);
        let floor_lo = (&numer / hi).floor();
        let floor_hi = (&numer / lo).floor();
        if floor_lo == floor_hi {
            return floor_lo.numer().to_biguint().expect("nonnegative floor");
        }
        terms *= 2;
        assert!(terms <= 1 << 20, "logarithm bounds failed to converge");
    }
}

// ---------------------------------------------------------------------------
// Theorem constants
// ---------------------------------------------------------------------------

/// The explicit constant block: common degree, filtration length `L`,
/// `u = C(L+n, n)`, `K`, the product bound on the monomial-ratio set size,
/// the power base `p_0`, and the truncation level `L_0`.
#[derive(Clone, Debug, Serialize)]
pub struct TheoremConstants {
    pub n: usize,
    pub n_subgeneral: usize,
    pub q: usize,
    pub epsilon: String,
    pub degrees: Vec<u32>,
    /// Smallest valid common degree, `lcm(d_1..d_q)`.
    pub d: u64,
    /// `I(1/epsilon)`: smallest integer `>= 1/epsilon`.
    #[serde(serialize_with = "ser_biguint")]
    pub i_eps: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub l: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub u: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub k_tuples: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub b_bound: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub p0: BigUint,
    /// Exact truncation level `u * p0^(B-2) - 1` when small enough to
    /// materialize.
    #[serde(serialize_with = "ser_opt_biguint")]
    pub l0: Option<BigUint>,
    /// Decimal digit count of `L_0` (exact when materialized, otherwise a
    /// leading-digit estimate).
    pub l0_digits: u64,
    /// Leading decimal digits of `L_0`.
    pub l0_leading: String,
    /// Per-target levels `floor(L_0 / d_j)`, as stated in the theorem; the
    /// harness applies `L_0` uniformly (see `truncation_note`).
    #[serde(serialize_with = "ser_vec_opt_biguint")]
    pub per_target: Vec<Option<BigUint>>,
    /// Statement/proof mismatch flag for the per-target levels.
    pub truncation_note: String,
    /// True when `q <= (N-n+1)(n+1)` makes the inequality vacuous.
    pub vacuous: bool,
}

fn ser_vec_opt_biguint<S: serde::Serializer>(
    v: &[Option<BigUint>],
    s: S,
) -> Result<S::Ok, S::Error> {
    use serde::ser::SerializeSeq;
    let mut seq = s.serialize_seq(Some(v.len()))?;
    for item in v {
        match item {
            Some(b) => seq.serialize_element(&b.to_string())?,
            None => seq.serialize_element(&Option::<String>::None)?,
        }
    }
    seq.end()
}

/// Digit budget for materializing `L_0` exactly.
pub const L0_DIGIT_LIMIT: u64 = 2_000_000;

pub fn theorem_constants(
    n: usize,
    n_subgeneral: usize,
    q: usize,
    epsilon: &Rat,
    degrees: &[u32],
) -> Result<TheoremConstants, FiltrationError> {
    if n < 1 || n_subgeneral < n || q < n_subgeneral + 1 {
        return Err(FiltrationError::InvalidShape(format!(
            "need N >= n >= 1 and q >= N+1, got n={n}, N={n_subgeneral}, q={q}"
        )));
    }
    if !epsilon.is_positive() {
        return Err(FiltrationError::InvalidShape("epsilon must be positive".into()));
    }
    if degrees.len() != q || degrees.iter().any(|&d| d == 0) {
        return Err(FiltrationError::InvalidShape(
            "need one degree >= 1 per hypersurface".into(),
        ));
    }
    let vacuous = q <= (n_subgeneral - n + 1) * (n + 1);

    let d: u64 = degrees.iter().fold(1u64, |acc, &x| acc.lcm(&(x as u64)));
    // I(1/eps) = ceil(1/eps).
    let inv = epsilon.recip();
    let i_eps = inv.ceil().numer().to_biguint().expect("positive ceiling");

    let np1 = BigUint::from(n as u64 + 1);
    let l: BigUint = &np1 * d
        + BigUint::from(2u32)
            * BigUint::from((n_subgeneral - n + 1) as u64)
            * (&np1 * &np1 * &np1)
            * &i_eps
            * d;
    let u = binomial_of_big(&(&l + BigUint::from(n as u64)), n);
    let k_tuples = {
        let t = &l / d;
        binomial_of_big(&(&t + BigUint::from(n as u64)), n)
    };
    let b_bound = &u * (&u - BigUint::one()) * binomial_big(q as u64, n);

    // p0 = floor((B-1)/ln(1 + eps/(3(n+1)(N-n+1))))^2.
    let y = epsilon
        / Rat::from_integer(BigInt::from(3 * (n as u64 + 1) * (n_subgeneral - n + 1) as u64));
    let base = floor_div_ln1p(&(&b_bound - BigUint::one()), &y);
    let p0 = &base * &base;

    // L0 = u * p0^(B-2) - 1, materialized when the digit count is sane.
    let exp = &b_bound - BigUint::from(2u32);
    let digits_estimate = {
        let log10_p0 = bits_to_digits(p0.bits());
        let log10_u = bits_to_digits(u.bits());
        exp.to_f64().unwrap_or(f64::INFINITY) * log10_p0 + log10_u
    };
    let (l0, l0_digits, l0_leading) = if digits_estimate <= L0_DIGIT_LIMIT as f64 {
        let exp_u32 = exp.to_u32().expect("materializable exponent fits u32");
        let value = &u * p0.pow(exp_u32) - BigUint::one();
        let text = value.to_string();
        let digits = text.len() as u64;
        let leading: String = text.chars().take(12).collect();
        (Some(value), digits, leading)
    } else {
        // log10(L0 + 1) = log10(u) + (B-2) log10(p0); leading digits from
        // the fractional part.
        let log10_total =
            precise_log10(&u) + exp.to_f64().unwrap_or(f64::INFINITY) * precise_log10(&p0);
        let digits = log10_total.floor() as u64 + 1;
        let frac = log10_total - log10_total.floor();
        let lead = 10f64.powf(frac + 10.0).round() as u64;
        (None, digits, format!("{lead}"))
    };

    let per_target: Vec<Option<BigUint>> = degrees
        .iter()
        .map(|&dj| l0.as_ref().map(|v| v / BigUint::from(dj as u64)))
        .collect();

    Ok(TheoremConstants {
        n,
        n_subgeneral,
        q,
        epsilon: epsilon.to_string(),
        degrees: degrees.to_vec(),
        d,
        i_eps,
        l,
        u,
        k_tuples,
        b_bound,
        p0,
        l0,
        l0_digits,
        l0_leading,
        per_target,
        truncation_note:
            "the statement lists per-target levels L_j = L_0/d_j; the final display and this \
             harness apply L_0 uniformly"
                .into(),
        vacuous,
    })
}

fn bits_to_digits(bits: u64) -> f64 {
    bits as f64 * std::f64::consts::LN_2 / std::f64::consts::LN_10
}

/// `log10` of a big natural number with ~15 significant digits.
fn precise_log10(v: &BigUint) -> f64 {
    let bits = v.bits();
    if bits <= 900 {
        return v.to_f64().unwrap().log10();
    }
    let shift = bits - 900;
    let top = v >> shift;
    top.to_f64().unwrap().log10() + shift as f64 * std::f64::consts::LN_2 / std::f64::consts::LN_10
}

// ---------------------------------------------------------------------------
// Ratio bound report
// ---------------------------------------------------------------------------

/// Exact verdicts for the two elementary estimates feeding the constant
/// chain: `uL/(dA) <= n+1 + eps/(2(N-n+1))` and
/// `(1+x)^n <= 1+(n+1)x` on `[0, 1/(n+1)^2]`.
#[derive(Clone, Debug, Serialize)]
pub struct RatioBoundReport {
    pub n: usize,
    pub n_subgeneral: usize,
    pub d: u32,
    pub epsilon: String,
    pub l: u64,
    #[serde(serialize_with = "ser_biguint")]
    pub u: BigUint,
    #[serde(serialize_with = "ser_biguint")]
    pub a_sum: BigUint,
    /// `uL/(dA)` as an exact rational, stringified.
    pub ratio: String,
    /// `n+1 + eps/(2(N-n+1))` as an exact rational, stringified.
    pub ratio_bound: String,
    pub binomial_samples_checked: usize,
}

pub fn ratio_bound_check(
    n: usize,
    n_subgeneral: usize,
    d: u32,
    epsilon: &Rat,
) -> Result<RatioBoundReport, FiltrationError> {
    if n < 1 || n_subgeneral < n || d == 0 || !epsilon.is_positive() {
        return Err(FiltrationError::InvalidShape(
            "need N >= n >= 1, d >= 1, epsilon > 0".into(),
        ));
    }
    let i_eps = epsilon.recip().ceil().numer().to_biguint().unwrap();
    let i_eps_u64 = i_eps
        .to_u64()
        .ok_or_else(|| FiltrationError::InvalidShape("1/epsilon too large".into()))?;
    let np1 = (n + 1) as u64;
    let l = np1 * d as u64
        + 2 * (n_subgeneral - n + 1) as u64 * np1 * np1 * np1 * i_eps_u64 * d as u64;
    let profile = filtration_profile(n, d, l)?;
    let u = binomial_big(l + n as u64, n);

    // uL <= (n+1 + eps/(2(N-n+1))) dA, cross-multiplied exactly.
    let lhs = Rat::from_integer(BigInt::from(&u * BigUint::from(l)));
    let two_m = Rat::from_integer(BigInt::from(2 * (n_subgeneral - n + 1) as u64));
    let bound = Rat::from_integer(BigInt::from(np1)) + epsilon / &two_m;
    let rhs = &bound
        * Rat::from_integer(BigInt::from(BigUint::from(d as u64) * &profile.a_sum));
    if lhs > rhs {
        return Err(FiltrationError::BoundViolated(format!(
            "uL/(dA) = {lhs} exceeds {bound}"
        )));
    }

    // (1+x)^n <= 1+(n+1)x on a rational sample grid of [0, 1/(n+1)^2].
    let samples = 9usize;
    for k in 0..samples {
        let x = Rat::new(
            BigInt::from(k as u64),
            BigInt::from((samples as u64 - 1) * np1 * np1),
        );
        let mut pow = Rat::one();
        for _ in 0..n {
            pow *= Rat::one() + &x;
        }
        let cap = Rat::one() + Rat::from_integer(BigInt::from(np1)) * &x;
        if pow > cap {
            return Err(FiltrationError::BoundViolated(format!(
                "(1+x)^n > 1+(n+1)x at x = {x}"
            )));
        }
    }

    let ratio = &lhs / Rat::from_integer(BigInt::from(BigUint::from(d as u64) * &profile.a_sum));
    Ok(RatioBoundReport {
        n,
        n_subgeneral,
        d,
        epsilon: epsilon.to_string(),
        l,
        u,
        a_sum: profile.a_sum.clone(),
        ratio: ratio.to_string(),
        ratio_bound: bound.to_string(),
        binomial_samples_checked: samples,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::FromPrimitive;

    /// Brute-force oracle for the capped tuple count.
    fn count_by_enumeration(n: usize, d: u32, cap: u64) -> u64 {
        fn rec(n: usize, d: u32, cap: i64) -> u64 {
            if cap < 0 {
                return 0;
            }
            if n == 0 {
                return 1;
            }
            (0..d as i64).map(|s| rec(n - 1, d, cap - s)).sum()
        }
        rec(n, d, cap as i64)
    }

    #[test]
    fn quotient_dim_examples() {
        assert_eq!(quotient_dim_combinatorial(2, 2, 4), BigUint::from(4u32));
        assert_eq!(quotient_dim_combinatorial(2, 3, 3), BigUint::from(8u32));
        assert_eq!(quotient_dim_combinatorial(1, 1, 0), BigUint::from(1u32));
    }

    #[test]
    fn quotient_dim_matches_enumeration() {
        for n in 1..=3usize {
            for d in 1..=3u32 {
                for cap in 0..=10u64 {
                    assert_eq!(
                        quotient_dim_combinatorial(n, d, cap),
                        BigUint::from(count_by_enumeration(n, d, cap)),
                        "mismatch at n={n} d={d} cap={cap}"
                    );
                }
            }
        }
    }

    #[test]
    fn quotient_dim_tail_is_d_to_n() {
        for n in 1..=4usize {
            for d in 1..=4u32 {
                let dn = BigUint::from(d as u64).pow(n as u32);
                for cap in 0..=20u64 {
                    let got = quotient_dim_combinatorial(n, d, cap);
                    if cap >= n as u64 * (d as u64 - 1) {
                        assert_eq!(got, dn, "tail value at n={n} d={d} cap={cap}");
                    } else {
                        assert!(got < dn, "pre-tail must be smaller at n={n} d={d} cap={cap}");
                    }
                }
            }
        }
    }

    #[test]
    fn profile_n1_d1_l3() {
        let p = filtration_profile(1, 1, 3).unwrap();
        assert_eq!(p.k_tuples, BigUint::from(4u32));
        assert_eq!(p.a_sum, BigUint::from(6u32));
        assert_eq!(p.a_lower_bound, BigUint::from(3u32));
        let tuples = p.tuples_with_weights().unwrap();
        assert_eq!(tuples.len(), 4);
        assert!(tuples.iter().all(|(_, w)| *w == BigUint::one()));
    }

    #[test]
    fn profile_n1_d2_l4() {
        let p = filtration_profile(1, 2, 4).unwrap();
        assert_eq!(p.k_tuples, BigUint::from(3u32));
        let weights: Vec<u64> =
            p.levels.iter().map(|l| l.weight.to_u64().unwrap()).collect();
        assert_eq!(weights, vec![2, 2, 1]);
        // A = 0*2 + 1*2 + 2*1 = 4 >= d * C(2,2) = 2.
        assert_eq!(p.a_sum, BigUint::from(4u32));
        assert_eq!(p.a_lower_bound, BigUint::from(2u32));
    }

    #[test]
    fn profile_symmetry_n2_d1_l2() {
        let p = filtration_profile(2, 1, 2).unwrap();
        assert_eq!(p.k_tuples, BigUint::from(6u32));
        let tuples = p.tuples_with_weights().unwrap();
        assert_eq!(tuples.len(), 6);
        // Lexicographic ordering with (L/d, 0) last.
        assert_eq!(tuples.first().unwrap().0, vec![0, 0]);
        assert_eq!(tuples.last().unwrap().0, vec![2, 0]);
        // A is the same for every coordinate.
        for s in 0..2 {
            let a_s: BigUint = tuples
                .iter()
                .map(|(t, w)| w * BigUint::from(t[s] as u64))
                .sum();
            assert_eq!(a_s, p.a_sum, "coordinate {s}");
        }
    }

    #[test]
    fn profile_rejects_indivisible() {
        assert!(matches!(
            filtration_profile(2, 2, 5),
            Err(FiltrationError::NotDivisible { .. })
        ));
    }

    #[test]
    fn constants_reference_case() {
        let eps = Rat::from_u64(1).unwrap();
        let c = theorem_constants(1, 1, 3, &eps, &[1, 1, 1]).unwrap();
        assert_eq!(c.d, 1);
        assert_eq!(c.l, BigUint::from(18u32));
        assert_eq!(c.u, BigUint::from(19u32));
        assert_eq!(c.k_tuples, BigUint::from(19u32));
        assert_eq!(c.b_bound, BigUint::from(1026u32));
        assert_eq!(c.p0, BigUint::from(44_209_201u64));
        let l0 = c.l0.as_ref().unwrap();
        let expect = BigUint::from(19u32) * BigUint::from(44_209_201u64).pow(1024)
            - BigUint::one();
        assert_eq!(l0, &expect);
        assert_eq!(c.l0_digits, expect.to_string().len() as u64);
        assert!(!c.vacuous);
    }

    #[test]
    fn constants_l_formula_case_two() {
        let eps = Rat::from_u64(1).unwrap();
        let c = theorem_constants(1, 2, 6, &eps, &[1; 6]).unwrap();
        assert_eq!(c.l, BigUint::from(34u32));
    }

    #[test]
    fn constants_vacuous_flag() {
        let eps = Rat::from_u64(1).unwrap();
        let c = theorem_constants(1, 1, 2, &eps, &[1, 1]).unwrap();
        assert!(c.vacuous, "q = 2 <= (N-n+1)(n+1) = 2 must flag vacuous");
    }

    #[test]
    fn constants_monotone_in_n_and_inverse_epsilon() {
        let mut prev_l: Option<BigUint> = None;
        for big_n in 1..=4usize {
            let eps = Rat::from_u64(1).unwrap();
            let c = theorem_constants(1, big_n, big_n + 1, &eps, &vec![1; big_n + 1]).unwrap();
            if let Some(p) = prev_l {
                assert!(c.l >= p, "L must be nondecreasing in N");
            }
            prev_l = Some(c.l.clone());
        }
        let mut prev_l: Option<BigUint> = None;
        for k in 1..=4u64 {
            let eps = Rat::new(BigInt::one(), BigInt::from(k));
            let c = theorem_constants(1, 1, 3, &eps, &[1, 1, 1]).unwrap();
            if let Some(p) = prev_l {
                assert!(c.l >= p, "L must be nondecreasing in 1/epsilon");
            }
            prev_l = Some(c.l.clone());
        }
    }

    #[test]
    fn ratio_bound_reference_case() {
        let eps = Rat::from_u64(1).unwrap();
        let r = ratio_bound_check(1, 1, 1, &eps).unwrap();
        assert_eq!(r.l, 18);
        assert_eq!(r.a_sum, BigUint::from(171u32));
        assert_eq!(r.ratio, "2");
        assert_eq!(r.ratio_bound, "5/2");
    }

    #[test]
    fn ln_bounds_bracket_reference_value() {
        // ln(7/6) = 0.15415067982725836...
        let y = Rat::new(BigInt::one(), BigInt::from(6));
        let (lo, hi) = ln1p_bounds(&y, 16);
        assert!(lo < hi, "bounds must bracket exactly");
        let lo_f = lo.to_f64().unwrap();
        let hi_f = hi.to_f64().unwrap();
        assert!((lo_f - 0.15415067982725836).abs() < 1e-12);
        assert!((hi_f - 0.15415067982725836).abs() < 1e-12);
        // Crude independent window.
        assert!(lo_f > 0.154150 && hi_f < 0.154151);
    }
}
