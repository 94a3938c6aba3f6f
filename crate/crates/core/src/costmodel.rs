//! Closed-form multiplication counts for the depth-L Frobenius scheme.
//!
//! Two cost functions are provided:
//!
//! * [`predicted_cost`] is the published count
//!   `G_p(n, r, L) = (2p^r - 1)/(p^r - 1) (p^{rL} - 1) + (p - 1)(M_r(d) - r - 1)`
//!   with `d = floor(n / p^L)`.
//! * [`implemented_cost`] is what the evaluator's structural ledger records.
//!   It differs in two places: scalar multiples are formed for every
//!   non-constant table entry, `(p - 2)(M_r(d) - 1)` instead of
//!   `(p - 2)(M_r(d) - r - 1)`, and reconstruction monomials of degree
//!   above `max(d, 1)` are not in the table and cost one product each.
//!
//! The rational prefactor is never evaluated as a fraction: it equals
//! `(2p^r - 1) * (1 + p^r + ... + p^{r(L-1)})`, so every count is an exact
//! integer. Negative monomial terms at `d <= 1` clamp to zero.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::gf::PrimeModulus;
use crate::mpoly::{binomial, m_r};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize)]
pub struct CostBreakdown {
    pub depth: usize,
    pub p_powers: u64,
    pub reconstruction: u64,
    pub table: u64,
    pub scalar_pre: u64,
    pub combination: u64,
    pub total: u64,
}

impl CostBreakdown {
    fn summed(mut self) -> Result<Self> {
        self.total = [
            self.p_powers,
            self.reconstruction,
            self.table,
            self.scalar_pre,
            self.combination,
        ]
        .into_iter()
        .try_fold(0u64, u64::checked_add)
        .ok_or(OVERFLOW)?;
        Ok(self)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CostFn {
    Predicted,
    Implemented,
}

/// Real-valued interval together with the depth constant `B`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct AsymptoticInterval {
    pub lower: f64,
    pub upper: f64,
    pub b: f64,
}

impl AsymptoticInterval {
    pub fn center(&self) -> f64 {
        (self.lower + self.upper) / 2.0
    }

    pub fn contains(&self, x: f64) -> bool {
        self.lower <= x && x <= self.upper
    }
}

const OVERFLOW: Error = Error::Overflow("multiplication count");

fn mul(a: u64, b: u64) -> Result<u64> {
    a.checked_mul(b).ok_or(OVERFLOW)
}

fn add(a: u64, b: u64) -> Result<u64> {
    a.checked_add(b).ok_or(OVERFLOW)
}

/// Largest depth worth considering: `ceil(log_p(max(n, 1))) + 1`. Beyond it
/// the leaf degree stays 0 and cost only grows.
pub fn max_depth(p: PrimeModulus, n: usize) -> usize {
    let target = n.max(1) as u128;
    let mut power = 1u128;
    let mut k = 0;
    while power < target {
        power *= u128::from(p.get());
        k += 1;
    }
    k + 1
}

/// `floor(n / p^L)`.
pub fn leaf_degree(p: PrimeModulus, n: usize, depth: usize) -> usize {
    let mut d = n;
    for _ in 0..depth {
        if d == 0 {
            break;
        }
        d /= p.get() as usize;
    }
    d
}

/// `[M_r(n) - r - 1]^+`: products needed to tabulate every monomial of
/// degree at most n when 1 and the coordinates are free.
pub fn monomial_cost(n: usize, r: usize) -> Result<u64> {
    Ok(m_r(n, r)?.saturating_sub(r as u64 + 1))
}

/// `[2 M_r(n) - r - 2]^+`: naive evaluation, tabulating monomials and then
/// multiplying each by its coefficient.
pub fn direct_cost(n: usize, r: usize) -> Result<u64> {
    Ok(mul(2, m_r(n, r)?)?.saturating_sub(r as u64 + 2))
}

/// `(p^r, 1 + p^r + ... + p^{r(L-1)})`.
fn geometric(p: PrimeModulus, r: usize, depth: usize) -> Result<(u64, u64)> {
    let pr = u64::from(p.get())
        .checked_pow(r as u32)
        .ok_or(OVERFLOW)?;
    let mut sum = 0u64;
    let mut term = 1u64;
    for k in 0..depth {
        sum = add(sum, term)?;
        if k + 1 < depth {
            term = mul(term, pr)?;
        }
    }
    Ok((pr, sum))
}

/// The published count at depth `depth`, split into its summands: p-th
/// powers, reconstruction products, monomial table, scalar multiples.
pub fn predicted_cost(p: PrimeModulus, n: usize, r: usize, depth: usize) -> Result<CostBreakdown> {
    let (pr, series) = geometric(p, r, depth)?;
    let d = leaf_degree(p, n, depth);
    let table = monomial_cost(d, r)?;
    CostBreakdown {
        depth,
        p_powers: mul(pr, series)?,
        reconstruction: mul(pr - 1, series)?,
        table,
        scalar_pre: mul(u64::from(p.get()) - 2, table)?,
        combination: 0,
        total: 0,
    }
    .summed()
}

/// Number of nonnegative integer vectors of length `r` with entries below
/// `p` and sum at most `t`, by inclusion-exclusion.
fn bounded_vectors_up_to(p: u64, r: usize, t: u64) -> Result<u64> {
    let mut acc: i128 = 0;
    for k in 0..=r as u64 {
        let Some(rest) = t.checked_sub(k * p) else {
            break;
        };
        let ways = binomial(rest + r as u64, r as u64).ok_or(OVERFLOW)?;
        let choose = binomial(r as u64, k).ok_or(OVERFLOW)?;
        let term = i128::from(choose) * i128::from(ways);
        acc += if k % 2 == 0 { term } else { -term };
    }
    u64::try_from(acc).map_err(|_| OVERFLOW)
}

/// Reconstruction monomials `x^i`, `i` in `[0, p)^r`, that are neither free
/// (degree <= 1) nor in a table of degree `d`; each costs one product.
pub fn extra_reconstruction_monomials(p: PrimeModulus, r: usize, d: usize) -> Result<u64> {
    let pv = u64::from(p.get());
    let all = pv.checked_pow(r as u32).ok_or(OVERFLOW)?;
    let covered = (d.max(1) as u64).min(r as u64 * (pv - 1));
    Ok(all - bounded_vectors_up_to(pv, r, covered)?)
}

fn check_depth(p: PrimeModulus, n: usize, depth: usize) -> Result<()> {
    let max = max_depth(p, n);
    if depth > max {
        return Err(Error::DepthOutOfRange { depth, max });
    }
    Ok(())
}

/// Exact structural ledger of one evaluation at depth `depth`.
pub fn implemented_cost(p: PrimeModulus, n: usize, r: usize, depth: usize) -> Result<CostBreakdown> {
    implemented_batch_cost(p, 1, n, r, depth)
}

/// Exact structural ledger of a shared-table batch of `count` polynomials:
/// the tree work is paid per polynomial, the table (with its scalar
/// multiples and extra reconstruction monomials) once.
pub fn implemented_batch_cost(
    p: PrimeModulus,
    count: usize,
    n: usize,
    r: usize,
    depth: usize,
) -> Result<CostBreakdown> {
    check_depth(p, n, depth)?;
    let (pr, series) = geometric(p, r, depth)?;
    let d = leaf_degree(p, n, depth);
    let monomials = m_r(d, r)?;
    let extra = if depth == 0 {
        0
    } else {
        extra_reconstruction_monomials(p, r, d)?
    };
    let count = count as u64;
    CostBreakdown {
        depth,
        p_powers: mul(count, mul(pr, series)?)?,
        reconstruction: add(mul(count, mul(pr - 1, series)?)?, extra)?,
        table: monomial_cost(d, r)?,
        scalar_pre: mul(u64::from(p.get()) - 2, monomials - 1)?,
        combination: 0,
        total: 0,
    }
    .summed()
}

/// Exact structural ledger of evaluating a polynomial over F_{p^s}: a batch
/// over its `s` base-field components plus `2s - 3` recombination products
/// (none for s = 1).
pub fn implemented_extension_cost(
    p: PrimeModulus,
    s: usize,
    n: usize,
    r: usize,
    depth: usize,
) -> Result<CostBreakdown> {
    let mut cost = implemented_batch_cost(p, s, n, r, depth)?;
    cost.combination = if s >= 2 { 2 * s as u64 - 3 } else { 0 };
    cost.summed()
}

/// Remark-style shared count: the recursion term paid `s` times, the
/// monomial term once.
pub fn shared_cost(p: PrimeModulus, s: usize, n: usize, r: usize, depth: usize) -> Result<u64> {
    let one = predicted_cost(p, n, r, depth)?;
    let tree = add(one.p_powers, one.reconstruction)?;
    add(mul(s as u64, tree)?, add(one.table, one.scalar_pre)?)
}

/// Exhaustive argmin over `0..=max_depth(p, n)`, smallest depth on ties.
/// Depths whose count overflows are skipped.
pub fn optimal_depth(p: PrimeModulus, n: usize, r: usize, cost_fn: CostFn) -> Result<(usize, u64)> {
    let mut best: Option<(usize, u64)> = None;
    let mut last_err = None;
    for depth in 0..=max_depth(p, n) {
        let cost = match cost_fn {
            CostFn::Predicted => predicted_cost(p, n, r, depth),
            CostFn::Implemented => implemented_cost(p, n, r, depth),
        };
        match cost {
            Ok(c) if best.map_or(true, |(_, b)| c.total < b) => best = Some((depth, c.total)),
            Ok(_) => {}
            Err(e) => last_err = Some(e),
        }
    }
    best.ok_or_else(|| last_err.unwrap_or(OVERFLOW))
}

fn factorial(r: usize) -> f64 {
    (1..=r).map(|k| k as f64).product()
}

/// `B = (1/2r) log_p((p - 1)(p^r - 1) / (r! (2p^r - 1)))`.
pub fn depth_constant(p: PrimeModulus, r: usize) -> f64 {
    let pf = f64::from(p.get());
    let pr = pf.powi(r as i32);
    let ratio = (pf - 1.0) * (pr - 1.0) / (factorial(r) * (2.0 * pr - 1.0));
    ratio.ln() / pf.ln() / (2.0 * r as f64)
}

/// Interval `B + log_p(n)/2 +- 1/2` expected to hold the optimal depth.
/// Computed in f64; relative error is around 1e-15.
pub fn l_interval(p: PrimeModulus, n: usize, r: usize) -> AsymptoticInterval {
    let b = depth_constant(p, r);
    let center = b + (n.max(1) as f64).ln() / f64::from(p.get()).ln() / 2.0;
    AsymptoticInterval {
        lower: center - 0.5,
        upper: center + 0.5,
        b,
    }
}

/// Bounds on the optimal count:
/// `lower = 2 p^{-r/2} sqrt((p-1)(2p^r-1) / ((p^r-1) r!)) n^{r/2}`,
/// `upper = p^r * lower`.
pub fn asymptotic_interval(p: PrimeModulus, n: usize, r: usize) -> AsymptoticInterval {
    let pf = f64::from(p.get());
    let pr = pf.powi(r as i32);
    let coefficient = 2.0 / pr.sqrt()
        * ((pf - 1.0) * (2.0 * pr - 1.0) / ((pr - 1.0) * factorial(r))).sqrt();
    let lower = coefficient * (n as f64).powf(r as f64 / 2.0);
    AsymptoticInterval {
        lower,
        upper: pr * lower,
        b: depth_constant(p, r),
    }
}

/// Dimension `(n + 1)^r` of the polynomials with degree at most n in each
/// variable separately.
pub fn box_dim(n: usize, r: usize) -> Result<u64> {
    (n as u64 + 1)
        .checked_pow(r as u32)
        .ok_or(Error::Overflow("box dimension"))
}

/// Cost bound `2 sqrt(2 p^{r+1}) n^{r/2}` for the box-degree space.
pub fn box_bound(p: PrimeModulus, n: usize, r: usize) -> f64 {
    let pf = f64::from(p.get());
    2.0 * (2.0 * pf.powi(r as i32 + 1)).sqrt() * (n as f64).powf(r as f64 / 2.0)
}
