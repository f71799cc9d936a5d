//! Position certificates and constructive general-position combinations.
//!
//! All certificates here are one-sided: `Certified` is a sound proof (full
//! Macaulay column rank implies the common zero locus is empty), while
//! `NotCertified` claims nothing.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::algebra::{
    macaulay_matrix, ExactC, FixedForm, MultiIndex, TargetForm,
};

#[derive(Debug, Error)]
pub enum PositionError {
    #[error("every provided sample hits a pole or an all-zero freeze")]
    NoValidSample,
    #[error("combination retries exhausted at step t={t} (seed {seed})")]
    RetriesExhausted { t: usize, seed: u64 },
    #[error("invalid input shape: {0}")]
    InvalidShape(String),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Verdict {
    Certified,
    NotCertified,
}

impl Verdict {
    pub fn is_certified(self) -> bool {
        matches!(self, Verdict::Certified)
    }
}

/// One Macaulay emptiness check: which forms, at what degree, which rank.
#[derive(Clone, Debug, Serialize)]
pub struct SubsetCheck {
    pub indices: Vec<usize>,
    pub degree: u32,
    pub rank: usize,
    pub columns: usize,
}

impl SubsetCheck {
    pub fn certified(&self) -> bool {
        self.rank == self.columns
    }
}

/// Certificate for (sub)general position at a sample point.
#[derive(Clone, Debug, Serialize)]
pub struct PositionCertificate {
    pub verdict: Verdict,
    pub sample: Option<ExactC>,
    pub seed: u64,
    pub subsets: Vec<SubsetCheck>,
}

/// Effective degree for the emptiness test: `sum (d_i - 1) + 1` over the
/// `min(q, n+1)` largest degrees (the homogeneous Nullstellensatz cap).
pub fn certificate_degree(degrees: &[u32], n: usize) -> u32 {
    let mut sorted: Vec<u32> = degrees.to_vec();
    sorted.sort_unstable_by(|a, b| b.cmp(a));
    sorted.iter().take(n + 1).map(|d| d - 1).sum::<u32>() + 1
}

/// Sound emptiness test: full column rank of the degree-`D` Macaulay matrix
/// proves the forms have no common projective zero.
pub fn empty_certificate(forms: &[FixedForm]) -> PositionCertificate {
    assert!(!forms.is_empty());
    let n = forms[0].ambient_dim();
    let degrees: Vec<u32> = forms.iter().map(FixedForm::degree).collect();
    let target = certificate_degree(&degrees, n);
    let m = macaulay_matrix(forms, target);
    let rank = m.rank();
    let columns = m.num_cols();
    PositionCertificate {
        verdict: if rank == columns { Verdict::Certified } else { Verdict::NotCertified },
        sample: None,
        seed: 0,
        subsets: vec![SubsetCheck {
            indices: (0..forms.len()).collect(),
            degree: target,
            rank,
            columns,
        }],
    }
}

fn subsets_of_size(q: usize, k: usize) -> Vec<Vec<usize>> {
    let mut out = Vec::new();
    let mut current = Vec::with_capacity(k);
    fn rec(start: usize, q: usize, k: usize, current: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if current.len() == k {
            out.push(current.clone());
            return;
        }
        for i in start..q {
            current.push(i);
            rec(i + 1, q, k, current, out);
            current.pop();
        }
    }
    rec(0, q, k, &mut current, &mut out);
    out
}

/// Tests weakly `N`-subgeneral position: at some sample from `samples`,
/// every `(N+1)`-subset of the frozen family gets an emptiness certificate.
///
/// Samples that hit a coefficient pole or freeze a form to zero are
/// skipped; `NoValidSample` is returned when none survives.
pub fn check_subgeneral_position(
    targets: &[TargetForm],
    n_subgeneral: usize,
    samples: &[ExactC],
    seed: u64,
) -> Result<PositionCertificate, PositionError> {
    let q = targets.len();
    if q == 0 {
        return Err(PositionError::InvalidShape("empty family".into()));
    }
    let n = targets[0].ambient_dim();
    if targets.iter().any(|t| t.ambient_dim() != n) {
        return Err(PositionError::InvalidShape("mixed ambient dimensions".into()));
    }
    if q < n_subgeneral + 1 || n_subgeneral < n {
        return Err(PositionError::InvalidShape(format!(
            "need q >= N+1 >= n+1, got q={q}, N={n_subgeneral}, n={n}"
        )));
    }
    let all_fixed = targets.iter().all(|t| !t.is_moving());
    let subsets = subsets_of_size(q, n_subgeneral + 1);
    let mut last_attempt: Option<PositionCertificate> = None;
    let mut any_valid = false;
    for z0 in samples {
        let frozen: Result<Vec<FixedForm>, _> = targets.iter().map(|t| t.freeze(z0)).collect();
        let Ok(frozen) = frozen else { continue };
        any_valid = true;
        let mut checks = Vec::with_capacity(subsets.len());
        let mut all_ok = true;
        for subset in &subsets {
            let picked: Vec<FixedForm> = subset.iter().map(|&i| frozen[i].clone()).collect();
            let cert = empty_certificate(&picked);
            let mut check = cert.subsets.into_iter().next().unwrap();
            check.indices = subset.clone();
            all_ok &= check.certified();
            checks.push(check);
            if !all_ok {
                break;
            }
        }
        let cert = PositionCertificate {
            verdict: if all_ok { Verdict::Certified } else { Verdict::NotCertified },
            sample: Some(z0.clone()),
            seed,
            subsets: checks,
        };
        if all_ok {
            return Ok(cert);
        }
        last_attempt = Some(cert);
        if all_fixed {
            // Frozen family is sample-independent; no point retrying.
            break;
        }
    }
    if !any_valid {
        return Err(PositionError::NoValidSample);
    }
    Ok(last_attempt.expect("at least one valid sample was processed"))
}

/// Certificate that the common zero locus has projective dimension at most
/// `k`, obtained by slicing with `k+1` random linear forms. Sound for any
/// slices: a variety of dimension `>= k+1` meets every codimension-`k+1`
/// linear subspace.
#[derive(Clone, Debug, Serialize)]
pub struct DimCertificate {
    pub verdict: Verdict,
    pub dim_bound: usize,
    pub attempts: u32,
    pub checks: Vec<SubsetCheck>,
}

fn random_linear_form(n: usize, height: i64, rng: &mut ChaCha8Rng) -> FixedForm {
    loop {
        let coeffs: Vec<i64> = (0..=n).map(|_| rng.gen_range(-height..=height)).collect();
        if coeffs.iter().all(|&c| c == 0) {
            continue;
        }
        let terms = coeffs.iter().enumerate().filter(|(_, &c)| c != 0).map(|(i, &c)| {
            let mut ix = vec![0u32; n + 1];
            ix[i] = 1;
            (MultiIndex(ix), ExactC::from_int(c))
        });
        return FixedForm::new(n, 1, terms).expect("nonzero linear form");
    }
}

pub fn dim_at_most(
    forms: &[FixedForm],
    k: usize,
    seed: u64,
    max_retries: u32,
) -> DimCertificate {
    assert!(!forms.is_empty());
    let n = forms[0].ambient_dim();
    assert!(k <= n, "dimension bound must be within 0..=n");
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut checks = Vec::new();
    let mut height = 4i64;
    for attempt in 0..max_retries.max(1) {
        let mut sliced: Vec<FixedForm> = forms.to_vec();
        for _ in 0..=k {
            sliced.push(random_linear_form(n, height, &mut rng));
        }
        let cert = empty_certificate(&sliced);
        let check = cert.subsets.into_iter().next().unwrap();
        let ok = check.certified();
        checks.push(check);
        if ok {
            return DimCertificate {
                verdict: Verdict::Certified,
                dim_bound: k,
                attempts: attempt + 1,
                checks,
            };
        }
        height = height.saturating_mul(2);
    }
    DimCertificate {
        verdict: Verdict::NotCertified,
        dim_bound: k,
        attempts: max_retries.max(1),
        checks,
    }
}

/// Constructive general-position combination: `P_1 = Q_1` and each
/// `P_t = sum_{j=2}^{N-n+t} c_{tj} Q_j` with integer coefficients, chosen
/// so each prefix's common zero locus drops to dimension `n - t`.
#[derive(Clone, Debug, Serialize)]
pub struct CombinationRecipe {
    pub seed: u64,
    /// `coefficients[t-2]` holds `c_{t,2..N-n+t}` for `t = 2..=n+1`.
    pub coefficients: Vec<Vec<i64>>,
    #[serde(skip)]
    pub forms: Vec<FixedForm>,
    pub prefix_certificates: Vec<DimCertificate>,
    pub final_certificate: PositionCertificate,
}

pub const DEFAULT_MAX_RETRIES: u32 = 32;

/// Runs the combination construction on `N+1` frozen forms of a common
/// degree, already certified in weakly `N`-subgeneral position.
pub fn build_general_position(
    frozen: &[FixedForm],
    seed: u64,
    max_retries: u32,
) -> Result<CombinationRecipe, PositionError> {
    let q = frozen.len();
    if q < 2 {
        return Err(PositionError::InvalidShape("need at least two forms".into()));
    }
    let n = frozen[0].ambient_dim();
    let big_n = q - 1;
    if big_n < n {
        return Err(PositionError::InvalidShape(format!(
            "need N >= n, got N={big_n}, n={n}"
        )));
    }
    let d = frozen[0].degree();
    if frozen.iter().any(|f| f.degree() != d || f.ambient_dim() != n) {
        return Err(PositionError::InvalidShape(
            "forms must share ambient dimension and degree".into(),
        ));
    }

    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut picked: Vec<FixedForm> = vec![frozen[0].clone()];
    let mut coefficients = Vec::new();
    let mut prefixes = Vec::new();

    for t in 2..=(n + 1) {
        let upper = big_n - n + t; // combination runs over Q_2..Q_upper
        let pool: Vec<&FixedForm> = frozen[1..upper].iter().collect();
        let mut height = 4i64;
        let mut success = false;
        for _ in 0..max_retries.max(1) {
            let coeffs: Vec<i64> =
                (0..pool.len()).map(|_| rng.gen_range(-height..=height)).collect();
            if coeffs.iter().all(|&c| c == 0) {
                continue;
            }
            let scalars: Vec<ExactC> = coeffs.iter().map(|&c| ExactC::from_int(c)).collect();
            let Ok(candidate) = FixedForm::linear_combination(&pool, &scalars) else {
                height = height.saturating_mul(2);
                continue;
            };
            let mut prefix: Vec<FixedForm> = picked.clone();
            prefix.push(candidate.clone());
            let ok = if t <= n {
                let cert = dim_at_most(&prefix, n - t, rng.gen(), 4);
                let ok = cert.verdict.is_certified();
                if ok {
                    prefixes.push(cert);
                }
                ok
            } else {
                let cert = empty_certificate(&prefix);
                let ok = cert.verdict.is_certified();
                if ok {
                    prefixes.push(DimCertificate {
                        verdict: Verdict::Certified,
                        dim_bound: 0,
                        attempts: 1,
                        checks: cert.subsets,
                    });
                }
                ok
            };
            if ok {
                picked.push(candidate);
                coefficients.push(coeffs);
                success = true;
                break;
            }
            height = height.saturating_mul(2);
        }
        if !success {
            return Err(PositionError::RetriesExhausted { t, seed });
        }
    }

    // Independent post-check of the full recipe.
    let final_certificate = empty_certificate(&picked);
    if !final_certificate.verdict.is_certified() {
        return Err(PositionError::RetriesExhausted { t: n + 1, seed });
    }
    Ok(CombinationRecipe {
        seed,
        coefficients,
        forms: picked,
        prefix_certificates: prefixes,
        final_certificate,
    })
}
