//! Multi-indices for monomials in `n+1` variables, ordered lexicographically.

use std::fmt;

use serde::{Deserialize, Serialize};

/// Exponent tuple `(i_0, ..., i_n)`; ordering is the derived lexicographic
/// order on the underlying sequence.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct MultiIndex(pub Vec<u32>);

impl MultiIndex {
    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }
}

impl fmt::Debug for MultiIndex {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{:?}", self.0)
    }
}

/// Number of monomials of degree `d` in `n+1` variables, `C(d+n, n)`.
pub fn monomial_count(n: usize, d: u32) -> usize {
    binomial_usize(d as usize + n, n)
}

pub(crate) fn binomial_usize(n: usize, k: usize) -> usize {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for j in 0..k {
        acc = acc * (n - j) as u128 / (j + 1) as u128;
    }
    acc as usize
}

/// All multi-indices of degree exactly `d` in `n+1` variables, sorted in
/// strictly increasing lexicographic order. Length is `C(d+n, n)`.
pub fn monomial_basis(n: usize, d: u32) -> Vec<MultiIndex> {
    let mut out = Vec::with_capacity(monomial_count(n, d));
    let mut current = vec![0u32; n + 1];
    fill(&mut out, &mut current, 0, d);
    out
}

fn fill(out: &mut Vec<MultiIndex>, current: &mut Vec<u32>, pos: usize, remaining: u32) {
    if pos == current.len() - 1 {
        current[pos] = remaining;
        out.push(MultiIndex(current.clone()));
        return;
    }
    for v in 0..=remaining {
        current[pos] = v;
        fill(out, current, pos + 1, remaining - v);
    }
    current[pos] = 0;
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn p1_degree_2() {
        let basis = monomial_basis(1, 2);
        let expect: Vec<MultiIndex> =
            [[0, 2], [1, 1], [2, 0]].iter().map(|v| MultiIndex(v.to_vec())).collect();
        assert_eq!(basis, expect);
        assert_eq!(basis.len(), 3);
    }

    #[test]
    fn p2_degree_1() {
        let basis = monomial_basis(2, 1);
        let expect: Vec<MultiIndex> =
            [[0, 0, 1], [0, 1, 0], [1, 0, 0]].iter().map(|v| MultiIndex(v.to_vec())).collect();
        assert_eq!(basis, expect);
    }

    #[test]
    fn p2_degree_3_count() {
        assert_eq!(monomial_basis(2, 3).len(), 10);
    }

    #[test]
    fn strictly_increasing_lex() {
        for (n, d) in [(1usize, 5u32), (2, 3), (3, 2)] {
            let basis = monomial_basis(n, d);
            assert_eq!(basis.len(), monomial_count(n, d));
            for w in basis.windows(2) {
                assert!(w[0] < w[1], "basis not strictly increasing at {:?}", w);
            }
            for ix in &basis {
                assert_eq!(ix.degree(), d);
            }
        }
    }
}
