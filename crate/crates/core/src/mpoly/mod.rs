//! Dense multivariate polynomials in degree-lexicographic order.
//!
//! Monomials of total degree at most n in r variables are ranked first by
//! total degree, then, within a degree, lexicographically with `x_1` most
//! significant and larger exponents first. For r = 2 the order starts
//! `1, x, y, x^2, xy, y^2, x^3, ...`. A monomial's rank depends only on its
//! exponents and r, never on the degree bound, so a polynomial of degree
//! at most d can index straight into a table built for any bound >= d.

pub(crate) mod decompose;
mod dense;

pub use decompose::{frobenius_decompose, recompose, split_base_field, DecomposedPoly, PolyFamily};
pub use dense::DensePoly;

use crate::error::{Error, Result};

/// Exact binomial coefficient, `None` on u64 overflow.
pub fn binomial(n: u64, k: u64) -> Option<u64> {
    if k > n {
        return Some(0);
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 1..=u128::from(k) {
        // acc * (n - k + i) / i is exact at every step
        acc = acc.checked_mul(u128::from(n - k) + i)? / i;
        if acc > u128::from(u64::MAX) {
            return None;
        }
    }
    Some(acc as u64)
}

/// Number of monomials of total degree at most `n` in `r` variables,
/// `binomial(n + r, r)`.
pub fn m_r(n: usize, r: usize) -> Result<u64> {
    if r == 0 {
        return Err(Error::ZeroVariables);
    }
    let top = (n as u64)
        .checked_add(r as u64)
        .ok_or(Error::Overflow("M_r(n)"))?;
    binomial(top, r as u64).ok_or(Error::Overflow("M_r(n)"))
}

/// Same as [`m_r`] for sizes already known to fit in memory.
pub(crate) fn monomial_count(n: usize, r: usize) -> usize {
    m_r(n, r).expect("monomial count overflow") as usize
}

/// Exponent tuple `(e_1, ..., e_r)` of the monomial `x_1^e_1 ... x_r^e_r`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExponentVec(Vec<u32>);

impl ExponentVec {
    pub fn new(exponents: Vec<u32>) -> Self {
        Self(exponents)
    }

    pub fn zero(r: usize) -> Self {
        Self(vec![0; r])
    }

    /// The exponent vector of `x_j` (0-based `j`).
    pub fn unit(r: usize, j: usize) -> Self {
        let mut e = vec![0; r];
        e[j] = 1;
        Self(e)
    }

    pub fn num_vars(&self) -> usize {
        self.0.len()
    }

    pub fn degree(&self) -> usize {
        self.0.iter().map(|&e| e as usize).sum()
    }

    pub fn as_slice(&self) -> &[u32] {
        &self.0
    }
}

impl From<Vec<u32>> for ExponentVec {
    fn from(v: Vec<u32>) -> Self {
        Self(v)
    }
}

fn binom(n: usize, k: usize) -> usize {
    binomial(n as u64, k as u64).expect("binomial overflow") as usize
}

/// 0-based deglex rank of `e`.
pub fn deglex_rank(e: &ExponentVec) -> usize {
    let r = e.num_vars();
    let t = e.degree();
    let mut rank = if t == 0 { 0 } else { monomial_count(t - 1, r) };
    let mut rem = t;
    for (j, &ej) in e.0.iter().enumerate().take(r.saturating_sub(1)) {
        let ej = ej as usize;
        let parts = r - j - 1;
        // vectors agreeing before position j with a larger entry at j
        if rem > ej {
            rank += binom(rem - ej - 1 + parts, parts);
        }
        rem -= ej;
    }
    rank
}

/// Inverse of [`deglex_rank`].
pub fn deglex_unrank(k: usize, r: usize) -> ExponentVec {
    assert!(r >= 1, "at least one variable");
    let mut t = 0;
    while monomial_count(t, r) <= k {
        t += 1;
    }
    let mut offset = k - if t == 0 { 0 } else { monomial_count(t - 1, r) };
    let mut e = vec![0u32; r];
    let mut rem = t;
    for j in 0..r - 1 {
        let parts = r - j - 1;
        let mut v = rem;
        loop {
            let block = binom(rem - v + parts - 1, parts - 1);
            if offset < block {
                break;
            }
            offset -= block;
            v -= 1;
        }
        e[j] = v as u32;
        rem -= v;
    }
    e[r - 1] = rem as u32;
    ExponentVec(e)
}

/// All exponent vectors of total degree at most `n`, in rank order.
pub fn deglex_exponents(r: usize, n: usize) -> Vec<ExponentVec> {
    fn fill(prefix: &mut Vec<u32>, r: usize, rem: usize, out: &mut Vec<ExponentVec>) {
        if prefix.len() + 1 == r {
            prefix.push(rem as u32);
            out.push(ExponentVec(prefix.clone()));
            prefix.pop();
            return;
        }
        for v in (0..=rem).rev() {
            prefix.push(v as u32);
            fill(prefix, r, rem - v, out);
            prefix.pop();
        }
    }
    let mut out = Vec::with_capacity(monomial_count(n, r));
    let mut prefix = Vec::with_capacity(r);
    for t in 0..=n {
        fill(&mut prefix, r, t, &mut out);
    }
    out
}
