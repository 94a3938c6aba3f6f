use super::{deglex_exponents, deglex_rank, m_r, ExponentVec};
use crate::error::{Error, Result};
use crate::gf::PrimeModulus;

/// Dense polynomial of total degree at most `n` in `r` variables over
/// F_{p^s}.
///
/// Coefficients are stored flat in deglex rank order, `s` residues per
/// monomial (the coordinates of the coefficient in the power basis of
/// F_{p^s}). With s = 1 each coefficient is a single prime-field residue.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct DensePoly {
    p: PrimeModulus,
    s: usize,
    r: usize,
    n: usize,
    coeffs: Vec<u32>,
}

fn checked_len(n: usize, r: usize, s: usize) -> Result<usize> {
    let monomials = m_r(n, r)?;
    usize::try_from(monomials)
        .ok()
        .and_then(|m| m.checked_mul(s))
        .ok_or(Error::Overflow("polynomial size"))
}

impl DensePoly {
    pub fn zero(p: PrimeModulus, s: usize, r: usize, n: usize) -> Result<Self> {
        if s == 0 {
            return Err(Error::ZeroDegree);
        }
        let len = checked_len(n, r, s)?;
        Ok(Self {
            p,
            s,
            r,
            n,
            coeffs: vec![0; len],
        })
    }

    /// Takes the flat coefficient vector, `s` residues per monomial.
    pub fn from_coeffs(
        p: PrimeModulus,
        s: usize,
        r: usize,
        n: usize,
        coeffs: Vec<u32>,
    ) -> Result<Self> {
        if s == 0 {
            return Err(Error::ZeroDegree);
        }
        let len = checked_len(n, r, s)?;
        if coeffs.len() != len {
            return Err(Error::WrongLength {
                expected: len,
                got: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= p.get()) {
            return Err(Error::ResidueOutOfRange {
                value: u64::from(bad),
                p: p.get(),
            });
        }
        Ok(Self { p, s, r, n, coeffs })
    }

    /// Polynomial over F_p from `(exponents, coefficient)` pairs; repeated
    /// monomials accumulate.
    pub fn from_terms(
        p: PrimeModulus,
        r: usize,
        n: usize,
        terms: &[(&[u32], u32)],
    ) -> Result<Self> {
        let mut poly = Self::zero(p, 1, r, n)?;
        let pv = u64::from(p.get());
        for &(exps, c) in terms {
            if exps.len() != r {
                return Err(Error::DimensionMismatch {
                    expected: r,
                    got: exps.len(),
                });
            }
            let e = ExponentVec::new(exps.to_vec());
            if e.degree() > n {
                return Err(Error::DegreeExceedsTable {
                    degree: e.degree(),
                    table: n,
                });
            }
            let k = deglex_rank(&e);
            poly.coeffs[k] = ((u64::from(poly.coeffs[k]) + u64::from(c)) % pv) as u32;
        }
        Ok(poly)
    }

    pub fn characteristic(&self) -> PrimeModulus {
        self.p
    }

    /// Degree s of the coefficient field over F_p.
    pub fn coeff_degree(&self) -> usize {
        self.s
    }

    pub fn num_vars(&self) -> usize {
        self.r
    }

    /// Total-degree bound n.
    pub fn degree_bound(&self) -> usize {
        self.n
    }

    /// Number of monomials, M_r(n).
    pub fn num_monomials(&self) -> usize {
        self.coeffs.len() / self.s
    }

    pub fn coeffs(&self) -> &[u32] {
        &self.coeffs
    }

    /// Residues of the rank-`k` coefficient.
    pub fn coeff(&self, k: usize) -> &[u32] {
        &self.coeffs[k * self.s..(k + 1) * self.s]
    }

    pub fn coeff_of(&self, e: &ExponentVec) -> Option<&[u32]> {
        if e.num_vars() != self.r || e.degree() > self.n {
            return None;
        }
        Some(self.coeff(deglex_rank(e)))
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// Nonzero terms in rank order.
    pub fn terms(&self) -> impl Iterator<Item = (ExponentVec, &[u32])> + '_ {
        deglex_exponents(self.r, self.n)
            .into_iter()
            .enumerate()
            .map(|(k, e)| (e, self.coeff(k)))
            .filter(|(_, c)| c.iter().any(|&x| x != 0))
    }

    /// Highest total degree with a nonzero coefficient.
    pub fn actual_degree(&self) -> Option<usize> {
        self.terms().map(|(e, _)| e.degree()).max()
    }

    /// Same polynomial with a larger degree bound.
    pub fn with_degree_bound(&self, n: usize) -> Result<Self> {
        if n < self.n {
            return Err(Error::DegreeExceedsTable {
                degree: self.n,
                table: n,
            });
        }
        let mut coeffs = self.coeffs.clone();
        coeffs.resize(checked_len(n, self.r, self.s)?, 0);
        Ok(Self {
            coeffs,
            n,
            ..self.clone()
        })
    }

    pub(crate) fn same_shape(&self, other: &Self) -> bool {
        self.p == other.p && self.s == other.s && self.r == other.r && self.n == other.n
    }
}
