//! Macaulay-style degree matrices and exact rank over the rational-complex
//! field.
//!
//! The matrix of all multiples `x^beta * F_i` of degree `D` against the
//! degree-`D` monomial basis certifies emptiness of the common zero locus:
//! full column rank means the degree-`D` graded piece of the ideal is all of
//! `V_D`, which no common projective zero allows.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::form::FixedForm;
use super::multiindex::{monomial_basis, MultiIndex};
use super::scalar::ExactC;

/// Row-labelled Macaulay matrix at a target degree.
#[derive(Clone, Debug)]
pub struct MacaulayMatrix {
    n: usize,
    target_degree: u32,
    cols: Vec<MultiIndex>,
    /// `(form index, shifting monomial)` per row.
    rows: Vec<(usize, MultiIndex)>,
    data: Vec<Vec<ExactC>>,
}

/// Rows enumerate `x^beta * F_i` over all monomials `x^beta` of degree
/// `D - deg F_i`; columns follow `monomial_basis(n, D)`.
pub fn macaulay_matrix(forms: &[FixedForm], target_degree: u32) -> MacaulayMatrix {
    assert!(!forms.is_empty(), "macaulay_matrix needs at least one form");
    let n = forms[0].ambient_dim();
    assert!(forms.iter().all(|q| q.ambient_dim() == n), "ambient dimension mismatch");
    let max_deg = forms.iter().map(|q| q.degree()).max().unwrap();
    assert!(target_degree >= max_deg, "target degree below maximal form degree");

    let cols = monomial_basis(n, target_degree);
    let col_pos = |ix: &MultiIndex| cols.binary_search(ix).expect("degree-D monomial");
    let mut rows = Vec::new();
    let mut data = Vec::new();
    for (fi, form) in forms.iter().enumerate() {
        for beta in monomial_basis(n, target_degree - form.degree()) {
            let mut row = vec![ExactC::zero(); cols.len()];
            for (alpha, c) in form.terms() {
                let shifted =
                    MultiIndex(alpha.0.iter().zip(beta.0.iter()).map(|(a, b)| a + b).collect());
                row[col_pos(&shifted)] = c.clone();
            }
            rows.push((fi, beta));
            data.push(row);
        }
    }
    MacaulayMatrix { n, target_degree, cols, rows, data }
}

impl MacaulayMatrix {
    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.cols.len()
    }

    pub fn target_degree(&self) -> u32 {
        self.target_degree
    }

    pub fn ambient_dim(&self) -> usize {
        self.n
    }

    pub fn entry(&self, row: usize, col: usize) -> &ExactC {
        &self.data[row][col]
    }

    pub fn row_label(&self, row: usize) -> &(usize, MultiIndex) {
        &self.rows[row]
    }

    /// Exact rank by fraction-free elimination over the Gaussian integers
    /// (rows are cleared of denominators first). Deterministic.
    pub fn rank(&self) -> usize {
        let rows: Vec<Vec<Gz>> = self.data.iter().map(|r| clear_denominators(r)).collect();
        gaussian_integer_rank(rows)
    }
}

/// Gaussian integer `re + im*i`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub(crate) struct Gz {
    re: BigInt,
    im: BigInt,
}

impl Gz {
    fn zero() -> Self {
        Gz { re: BigInt::zero(), im: BigInt::zero() }
    }

    fn is_zero(&self) -> bool {
        self.re.is_zero() && self.im.is_zero()
    }

    fn mul(&self, rhs: &Gz) -> Gz {
        Gz {
            re: &self.re * &rhs.re - &self.im * &rhs.im,
            im: &self.re * &rhs.im + &self.im * &rhs.re,
        }
    }

    fn mul_sub(a: &Gz, x: &Gz, b: &Gz, y: &Gz) -> Gz {
        // a*x - b*y without intermediate allocations beyond the products.
        let p = a.mul(x);
        let q = b.mul(y);
        Gz { re: p.re - q.re, im: p.im - q.im }
    }

    fn bits(&self) -> u64 {
        self.re.bits().max(self.im.bits())
    }
}

pub(crate) fn clear_denominators(row: &[ExactC]) -> Vec<Gz> {
    let mut lcm = BigInt::one();
    for c in row {
        if !c.re.is_zero() {
            lcm = lcm.lcm(c.re.denom());
        }
        if !c.im.is_zero() {
            lcm = lcm.lcm(c.im.denom());
        }
    }
    row.iter()
        .map(|c| Gz {
            re: if c.re.is_zero() { BigInt::zero() } else { c.re.numer() * (&lcm / c.re.denom()) },
            im: if c.im.is_zero() { BigInt::zero() } else { c.im.numer() * (&lcm / c.im.denom()) },
        })
        .collect()
}

fn strip_gcd(row: &mut [Gz]) {
    let mut g = BigInt::zero();
    for e in row.iter() {
        if !e.re.is_zero() {
            g = g.gcd(&e.re);
        }
        if !e.im.is_zero() {
            g = g.gcd(&e.im);
        }
        if g.is_one() {
            return;
        }
    }
    if g.is_zero() || g.is_one() {
        return;
    }
    for e in row.iter_mut() {
        e.re = &e.re / &g;
        e.im = &e.im / &g;
    }
}

/// Fraction-free elimination with per-row gcd normalization; integer-exact
/// throughout (no divisions other than exact gcd strips).
pub(crate) fn gaussian_integer_rank(mut rows: Vec<Vec<Gz>>) -> usize {
    if rows.is_empty() {
        return 0;
    }
    let width = rows[0].len();
    let mut rank = 0usize;
    for col in 0..width {
        if rank == rows.len() {
            break;
        }
        // Pivot: sparsest candidate row, ties broken by bit size then index.
        let mut pivot: Option<(usize, usize, u64)> = None;
        for r in rank..rows.len() {
            if rows[r][col].is_zero() {
                continue;
            }
            let nnz = rows[r][col..].iter().filter(|e| !e.is_zero()).count();
            let bits = rows[r][col..].iter().map(Gz::bits).max().unwrap_or(0);
            let better = match &pivot {
                None => true,
                Some((_, bn, bb)) => (nnz, bits) < (*bn, *bb),
            };
            if better {
                pivot = Some((r, nnz, bits));
            }
        }
        let Some((p, _, _)) = pivot else { continue };
        rows.swap(rank, p);
        let (head, tail) = rows.split_at_mut(rank + 1);
        let piv_row = &head[rank];
        let piv = piv_row[col].clone();
        for r in tail.iter_mut() {
            if r[col].is_zero() {
                continue;
            }
            let factor = r[col].clone();
            for j in col..width {
                r[j] = Gz::mul_sub(&piv, &r[j], &factor, &piv_row[j]);
            }
            debug_assert!(r[col].is_zero());
            strip_gcd(&mut r[col..]);
        }
        rank += 1;
    }
    rank
}

#[cfg(test)]
mod tests {
    use super::*;

    fn x0() -> FixedForm {
        FixedForm::from_int_terms(1, 1, &[(&[1, 0], 1)])
    }

    fn x1() -> FixedForm {
        FixedForm::from_int_terms(1, 1, &[(&[0, 1], 1)])
    }

    #[test]
    fn identity_pattern_rank_2() {
        let m = macaulay_matrix(&[x0(), x1()], 1);
        assert_eq!((m.num_rows(), m.num_cols()), (2, 2));
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn single_square_row() {
        let q = FixedForm::from_int_terms(1, 2, &[(&[2, 0], 1)]);
        let m = macaulay_matrix(&[q], 2);
        assert_eq!((m.num_rows(), m.num_cols()), (1, 3));
        let nonzero: usize =
            (0..3).filter(|&j| !m.entry(0, j).is_zero()).count();
        assert_eq!(nonzero, 1);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn three_coordinates_full_rank() {
        let forms = [
            FixedForm::from_int_terms(2, 1, &[(&[1, 0, 0], 1)]),
            FixedForm::from_int_terms(2, 1, &[(&[0, 1, 0], 1)]),
            FixedForm::from_int_terms(2, 1, &[(&[0, 0, 1], 1)]),
        ];
        let m = macaulay_matrix(&forms, 1);
        assert_eq!(m.rank(), 3);
        assert_eq!(m.num_cols(), 3);
    }

    #[test]
    fn degree_2_binary_quadrics() {
        // {x0^2, x0 x1, x1^2} at D = 2: three independent rows.
        let forms = [
            FixedForm::from_int_terms(1, 2, &[(&[2, 0], 1)]),
            FixedForm::from_int_terms(1, 2, &[(&[1, 1], 1)]),
            FixedForm::from_int_terms(1, 2, &[(&[0, 2], 1)]),
        ];
        let m = macaulay_matrix(&forms, 2);
        assert_eq!(m.rank(), 3);
    }

    #[test]
    fn zero_like_rows_rank() {
        // Duplicated and scaled rows do not raise the rank.
        let forms = [x0(), x0()];
        let m = macaulay_matrix(&forms, 1);
        assert_eq!(m.rank(), 1);
    }

    #[test]
    fn rank_invariant_under_row_scaling() {
        // Build two matrices whose rows differ by nonzero exact scalings and
        // a permutation; rank must agree.
        let forms_a = [x0(), x1()];
        let scaled_x0 = FixedForm::new(
            1,
            1,
            vec![(MultiIndex(vec![1, 0]), ExactC::from_ratio(-7, 3))],
        )
        .unwrap();
        let forms_b = [x1(), scaled_x0];
        assert_eq!(macaulay_matrix(&forms_a, 1).rank(), macaulay_matrix(&forms_b, 1).rank());
    }

    #[test]
    fn complex_entries_rank() {
        // x0 + i x1 and x0 - i x1 are independent over C.
        let a = FixedForm::new(
            1,
            1,
            vec![
                (MultiIndex(vec![1, 0]), ExactC::one()),
                (MultiIndex(vec![0, 1]), ExactC::i()),
            ],
        )
        .unwrap();
        let b = FixedForm::new(
            1,
            1,
            vec![
                (MultiIndex(vec![1, 0]), ExactC::one()),
                (MultiIndex(vec![0, 1]), -&ExactC::i()),
            ],
        )
        .unwrap();
        let m = macaulay_matrix(&[a, b], 1);
        assert_eq!(m.rank(), 2);
    }
}
