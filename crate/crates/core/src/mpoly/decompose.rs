//! The Frobenius decomposition `P(x) = sum_i x^i P_i(x^p)` and the base-field
//! split `P = sum_k beta^k q_k`.
//!
//! Residue tuples `i = (i_1, ..., i_r)` in `[0, p)^r` index the components
//! in mixed radix with `i_1` most significant, so component `(0, ..., 0)` is
//! always first.

use super::{deglex_exponents, deglex_rank, monomial_count, DensePoly, ExponentVec};
use crate::error::{Error, Result};
use crate::gf::{PrimeModulus, SubfieldEmbedding};

pub(crate) fn residue_count(p: PrimeModulus, r: usize) -> Result<usize> {
    (p.get() as usize)
        .checked_pow(r as u32)
        .ok_or(Error::Overflow("p^r"))
}

/// Mixed-radix index of a residue tuple.
pub(crate) fn residue_index(residue: &[u32], p: u32) -> usize {
    residue
        .iter()
        .fold(0usize, |acc, &i| acc * p as usize + i as usize)
}

pub(crate) fn residue_digits(mut index: usize, p: u32, r: usize) -> Vec<u32> {
    let mut digits = vec![0u32; r];
    for d in digits.iter_mut().rev() {
        *d = (index % p as usize) as u32;
        index /= p as usize;
    }
    digits
}

/// Where each coefficient of a degree-`n` polynomial lands:
/// `(component index, rank inside the component)`, by source rank.
fn scatter_map(p: PrimeModulus, r: usize, n: usize) -> Vec<(usize, usize)> {
    let pv = p.get();
    deglex_exponents(r, n)
        .into_iter()
        .map(|e| {
            let residue: Vec<u32> = e.as_slice().iter().map(|&x| x % pv).collect();
            let quotient = ExponentVec::new(e.as_slice().iter().map(|&x| x / pv).collect());
            (residue_index(&residue, pv), deglex_rank(&quotient))
        })
        .collect()
}

/// A run of prime-field polynomials sharing one shape `(p, r, n)`, stored
/// back to back. This is how every level of a decomposition tree is held.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyFamily {
    p: PrimeModulus,
    r: usize,
    n: usize,
    stride: usize,
    count: usize,
    coeffs: Vec<u32>,
}

impl PolyFamily {
    pub fn from_polys(polys: &[&DensePoly]) -> Result<Self> {
        let first = polys.first().ok_or(Error::HeterogeneousBatch)?;
        if first.coeff_degree() != 1 {
            return Err(Error::NotPrimeField(first.coeff_degree()));
        }
        if polys.iter().any(|q| !q.same_shape(first)) {
            return Err(Error::HeterogeneousBatch);
        }
        Ok(Self {
            p: first.characteristic(),
            r: first.num_vars(),
            n: first.degree_bound(),
            stride: first.num_monomials(),
            count: polys.len(),
            coeffs: polys.iter().flat_map(|q| q.coeffs().iter().copied()).collect(),
        })
    }

    pub fn len(&self) -> usize {
        self.count
    }

    pub fn is_empty(&self) -> bool {
        self.count == 0
    }

    /// Shared total-degree bound.
    pub fn degree_bound(&self) -> usize {
        self.n
    }

    /// Coefficients of member `j`, in rank order.
    pub fn member_coeffs(&self, j: usize) -> &[u32] {
        &self.coeffs[j * self.stride..(j + 1) * self.stride]
    }

    pub fn member(&self, j: usize) -> DensePoly {
        DensePoly::from_coeffs(self.p, 1, self.r, self.n, self.member_coeffs(j).to_vec())
            .expect("family members are well formed")
    }

    /// Decomposes every member; the children of member `j` occupy
    /// positions `j * p^r .. (j + 1) * p^r` of the result. Pure reindexing.
    pub fn decompose(&self) -> Result<PolyFamily> {
        let splitter = self.splitter()?;
        let block = splitter.block_len();
        let count = self
            .count
            .checked_mul(splitter.fan_out)
            .ok_or(Error::Overflow("decomposition size"))?;
        let len = self
            .count
            .checked_mul(block)
            .ok_or(Error::Overflow("decomposition size"))?;
        let mut coeffs = vec![0u32; len];
        for (j, out) in coeffs.chunks_exact_mut(block).enumerate() {
            splitter.scatter(self.member_coeffs(j), out);
        }
        Ok(PolyFamily {
            p: self.p,
            r: self.r,
            n: splitter.child_n,
            stride: splitter.child_stride,
            count,
            coeffs,
        })
    }

    pub(crate) fn splitter(&self) -> Result<Splitter> {
        let fan_out = residue_count(self.p, self.r)?;
        let child_n = self.n / self.p.get() as usize;
        let child_stride = monomial_count(child_n, self.r);
        fan_out
            .checked_mul(child_stride)
            .ok_or(Error::Overflow("decomposition size"))?;
        Ok(Splitter {
            fan_out,
            child_n,
            child_stride,
            map: scatter_map(self.p, self.r, self.n),
        })
    }
}

/// Decomposition of one family member at a time into a caller buffer.
#[derive(Debug, Clone)]
pub(crate) struct Splitter {
    pub(crate) fan_out: usize,
    pub(crate) child_n: usize,
    pub(crate) child_stride: usize,
    map: Vec<(usize, usize)>,
}

impl Splitter {
    /// Coefficients of all `p^r` children of one member, back to back.
    pub(crate) fn block_len(&self) -> usize {
        self.fan_out * self.child_stride
    }

    /// Writes the children of `member` into `out` (length [`Self::block_len`]).
    #[inline]
    pub(crate) fn scatter(&self, member: &[u32], out: &mut [u32]) {
        out.fill(0);
        for (&c, &(comp, rank)) in member.iter().zip(&self.map) {
            if c != 0 {
                out[comp * self.child_stride + rank] = c;
            }
        }
    }
}

/// The `p^r` components `P_i` of `P(x) = sum_i x^i P_i(x^p)`.
///
/// All components are stored with the uniform bound `floor(n / p)`;
/// [`DecomposedPoly::component_bound`] gives the tighter per-component bound
/// `floor((n - |i|) / p)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DecomposedPoly {
    parent_n: usize,
    components: PolyFamily,
}

impl DecomposedPoly {
    /// Assembles a decomposition from `p^r` components in residue order.
    pub fn from_components(parent_n: usize, components: &[DensePoly]) -> Result<Self> {
        let refs: Vec<&DensePoly> = components.iter().collect();
        let family = PolyFamily::from_polys(&refs)?;
        if family.len() != residue_count(family.p, family.r)?
            || family.n != parent_n / family.p.get() as usize
        {
            return Err(Error::HeterogeneousBatch);
        }
        Ok(Self {
            parent_n,
            components: family,
        })
    }

    pub fn characteristic(&self) -> PrimeModulus {
        self.components.p
    }

    pub fn num_vars(&self) -> usize {
        self.components.r
    }

    pub fn parent_degree(&self) -> usize {
        self.parent_n
    }

    pub fn num_components(&self) -> usize {
        self.components.count
    }

    /// Uniform storage bound `floor(n / p)`.
    pub fn component_degree(&self) -> usize {
        self.components.n
    }

    /// `floor((n - |i|) / p)`, or `None` when `|i| > n` (the component is
    /// necessarily zero).
    pub fn component_bound(&self, index: usize) -> Option<usize> {
        let weight: usize = self.residue(index).iter().map(|&d| d as usize).sum();
        self.parent_n
            .checked_sub(weight)
            .map(|rest| rest / self.components.p.get() as usize)
    }

    pub fn residue(&self, index: usize) -> Vec<u32> {
        residue_digits(index, self.components.p.get(), self.components.r)
    }

    pub fn index_of(&self, residue: &[u32]) -> usize {
        residue_index(residue, self.components.p.get())
    }

    pub fn component(&self, index: usize) -> DensePoly {
        self.components.member(index)
    }

    pub fn family(&self) -> &PolyFamily {
        &self.components
    }
}

/// Splits `P` over F_p into its `p^r` Frobenius components.
pub fn frobenius_decompose(poly: &DensePoly) -> Result<DecomposedPoly> {
    let family = PolyFamily::from_polys(&[poly])?;
    Ok(DecomposedPoly {
        parent_n: poly.degree_bound(),
        components: family.decompose()?,
    })
}

/// Symbolic expansion of `sum_i x^i D_i(x_1^p, ..., x_r^p)`.
///
/// The result keeps the parent degree bound unless a component holds terms
/// beyond it, in which case the bound grows to fit.
pub fn recompose(decomposed: &DecomposedPoly) -> DensePoly {
    let p = decomposed.characteristic();
    let pv = p.get();
    let r = decomposed.num_vars();
    let mut terms: Vec<(Vec<u32>, u32)> = Vec::new();
    for index in 0..decomposed.num_components() {
        let residue = decomposed.residue(index);
        for (e, c) in decomposed.component(index).terms() {
            let exps = e
                .as_slice()
                .iter()
                .zip(&residue)
                .map(|(&q, &i)| i + pv * q)
                .collect();
            terms.push((exps, c[0]));
        }
    }
    let degree = terms
        .iter()
        .map(|(e, _)| e.iter().map(|&x| x as usize).sum())
        .max()
        .unwrap_or(0)
        .max(decomposed.parent_degree());
    let refs: Vec<(&[u32], u32)> = terms.iter().map(|(e, c)| (e.as_slice(), *c)).collect();
    DensePoly::from_terms(p, r, degree, &refs).expect("degree bound covers every term")
}

/// Writes `P` over F_{p^s} as `sum_k beta^k q_k` with each `q_k` over F_p.
///
/// Coefficients of `P` are coordinate vectors in the power basis of
/// F_{p^s}, and the embedding sends that basis to `1, beta, ...`, so `q_k`
/// collects the k-th coordinate of every coefficient.
pub fn split_base_field(poly: &DensePoly, embedding: &SubfieldEmbedding) -> Result<Vec<DensePoly>> {
    let s = poly.coeff_degree();
    if s != embedding.degree() {
        return Err(Error::WrongLength {
            expected: embedding.degree(),
            got: s,
        });
    }
    let field_p = embedding.field().characteristic();
    if poly.characteristic() != field_p {
        return Err(Error::CharacteristicMismatch {
            poly: poly.characteristic().get(),
            field: field_p.get(),
        });
    }
    (0..s)
        .map(|k| {
            let coeffs = poly.coeffs().iter().skip(k).step_by(s).copied().collect();
            DensePoly::from_coeffs(
                poly.characteristic(),
                1,
                poly.num_vars(),
                poly.degree_bound(),
                coeffs,
            )
        })
        .collect()
}
