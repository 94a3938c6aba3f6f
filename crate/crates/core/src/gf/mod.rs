//! Prime fields F_p and extension fields F_{p^m}.
//!
//! An element of F_{p^m} = F_p[x]/(f) is a coefficient vector
//! `(c_0, ..., c_{m-1})` in the power basis of the class of `x`. Because the
//! field order never exceeds 2^32, that vector is stored packed as the
//! integer `c_0 + c_1 p + ... + c_{m-1} p^{m-1}`, which makes elements `Copy`
//! and keeps 0 and 1 at indices 0 and 1. Elements are always fully reduced.
//!
//! Fields of order at most [`TABLE_ORDER_LIMIT`] precompute addition,
//! multiplication and Frobenius tables; larger fields fall back to digit
//! arithmetic. Both paths produce identical results.

mod ledger;
mod poly;
mod subfield;

pub use ledger::{CountMode, MulCategory, MulCounts, MulLedger};
pub use poly::{find_irreducible, is_irreducible, is_irreducible_by_trial_division};
pub use subfield::{subfield_embed, SubfieldEmbedding};

use std::fmt;

use crate::error::{Error, Result};

/// Largest supported characteristic (exclusive bound 2^16).
pub const MAX_PRIME: u64 = 1 << 16;
/// Largest supported field order.
pub const MAX_FIELD_ORDER: u64 = 1 << 32;
/// Fields up to this order use lookup tables for arithmetic.
pub const TABLE_ORDER_LIMIT: u64 = 1024;

const MAX_DEGREE: usize = 32;

type Digits = [u32; MAX_DEGREE];

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct PrimeModulus(u32);

impl PrimeModulus {
    pub fn new(p: u64) -> Result<Self> {
        if p < 2 || (2..).take_while(|d| d * d <= p).any(|d| p % d == 0) {
            return Err(Error::NotPrime(p));
        }
        if p >= MAX_PRIME {
            return Err(Error::PrimeTooLarge(p));
        }
        Ok(Self(p as u32))
    }

    #[inline]
    pub fn get(self) -> u32 {
        self.0
    }
}

impl fmt::Display for PrimeModulus {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        self.0.fmt(f)
    }
}

/// An element of some [`ExtField`]; see the module docs for the encoding.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct ExtElement(u32);

impl ExtElement {
    pub const ZERO: Self = Self(0);
    pub const ONE: Self = Self(1);

    /// Packed index `c_0 + c_1 p + ...` of the coefficient vector.
    pub fn index(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn is_zero_or_one(self) -> bool {
        self.0 <= 1
    }
}

struct Tables {
    add: Vec<u32>,
    mul: Vec<u32>,
    frob: Vec<u32>,
}

#[derive(Clone)]
pub struct ExtField {
    p: PrimeModulus,
    m: usize,
    order: u64,
    modulus: Vec<u32>,
    /// `(p - f_j) mod p` for the non-leading modulus coefficients.
    neg_modulus: Vec<u32>,
    /// Coordinates of `(x^k)^p` for k < m; Frobenius is F_p-linear.
    frob_images: Vec<Digits>,
    tables: Option<std::sync::Arc<Tables>>,
}

impl fmt::Debug for ExtField {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("ExtField")
            .field("p", &self.p.0)
            .field("m", &self.m)
            .field("modulus", &self.modulus)
            .finish()
    }
}

impl PartialEq for ExtField {
    fn eq(&self, other: &Self) -> bool {
        self.p == other.p && self.modulus == other.modulus
    }
}

impl Eq for ExtField {}

impl ExtField {
    /// F_{p^m} built on the smallest irreducible polynomial of degree `m`.
    pub fn new(p: PrimeModulus, m: usize) -> Result<Self> {
        check_order(p, m)?;
        Self::build(p, find_irreducible(p, m))
    }

    pub fn prime(p: PrimeModulus) -> Self {
        Self::new(p, 1).expect("prime fields are always constructible")
    }

    /// Field on a caller-supplied modulus, which must be monic and irreducible.
    pub fn with_modulus(p: PrimeModulus, modulus: Vec<u32>) -> Result<Self> {
        let m = modulus.len().saturating_sub(1);
        if m == 0 {
            return Err(Error::ZeroDegree);
        }
        check_order(p, m)?;
        if !is_irreducible(&modulus, p) {
            return Err(Error::InvalidModulus(m));
        }
        Self::build(p, modulus)
    }

    fn build(p: PrimeModulus, modulus: Vec<u32>) -> Result<Self> {
        let m = modulus.len() - 1;
        let pv = p.get();
        let order = u64::from(pv).pow(m as u32);
        let neg_modulus = modulus[..m].iter().map(|&c| (pv - c) % pv).collect();
        let mut field = Self {
            p,
            m,
            order,
            modulus,
            neg_modulus,
            frob_images: Vec::new(),
            tables: None,
        };
        field.frob_images = (0..m)
            .map(|k| {
                let mut xk = [0u32; MAX_DEGREE];
                xk[k] = 1;
                let xk = field.encode(&xk);
                field.decode(field.pow_generic(xk, u64::from(pv)))
            })
            .collect();
        if order <= TABLE_ORDER_LIMIT {
            field.tables = Some(std::sync::Arc::new(field.build_tables()));
        }
        Ok(field)
    }

    fn build_tables(&self) -> Tables {
        let q = self.order as u32;
        let mut add = Vec::with_capacity((q * q) as usize);
        let mut mul = Vec::with_capacity((q * q) as usize);
        for a in 0..q {
            for b in 0..q {
                add.push(self.add_generic(a, b));
                mul.push(self.mul_generic(a, b));
            }
        }
        let frob = (0..q).map(|a| self.frob_generic(a)).collect();
        Tables { add, mul, frob }
    }

    pub fn characteristic(&self) -> PrimeModulus {
        self.p
    }

    /// Extension degree m.
    pub fn degree(&self) -> usize {
        self.m
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Monic modulus, constant term first.
    pub fn modulus(&self) -> &[u32] {
        &self.modulus
    }

    pub fn zero(&self) -> ExtElement {
        ExtElement::ZERO
    }

    pub fn one(&self) -> ExtElement {
        ExtElement::ONE
    }

    pub fn contains(&self, a: ExtElement) -> bool {
        u64::from(a.0) < self.order
    }

    /// Image of the prime-field residue `c mod p`.
    pub fn from_prime(&self, c: u64) -> ExtElement {
        ExtElement((c % u64::from(self.p.get())) as u32)
    }

    /// Element with the given coordinates (constant coordinate first).
    pub fn element(&self, coeffs: &[u32]) -> Result<ExtElement> {
        if coeffs.len() != self.m {
            return Err(Error::WrongLength {
                expected: self.m,
                got: coeffs.len(),
            });
        }
        if let Some(&bad) = coeffs.iter().find(|&&c| c >= self.p.get()) {
            return Err(Error::ResidueOutOfRange {
                value: u64::from(bad),
                p: self.p.get(),
            });
        }
        let mut digits = [0u32; MAX_DEGREE];
        digits[..self.m].copy_from_slice(coeffs);
        Ok(ExtElement(self.encode(&digits)))
    }

    /// Element from its packed index.
    pub fn from_index(&self, index: u32) -> Result<ExtElement> {
        let a = ExtElement(index);
        self.check(a)?;
        Ok(a)
    }

    /// Coordinates of `a`, constant coordinate first, length m.
    pub fn coeffs(&self, a: ExtElement) -> Vec<u32> {
        self.decode(a.0)[..self.m].to_vec()
    }

    /// All field elements in packed-index order.
    pub fn elements(&self) -> impl Iterator<Item = ExtElement> {
        (0..self.order).map(|i| ExtElement(i as u32))
    }

    #[inline]
    fn check(&self, a: ExtElement) -> Result<()> {
        if self.contains(a) {
            Ok(())
        } else {
            Err(Error::FieldMismatch)
        }
    }

    /// Componentwise sum. Additions are never counted.
    pub fn add(&self, a: ExtElement, b: ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.add_raw(a, b))
    }

    /// Product charged to `category`, or to `free_mults` in value-aware mode
    /// when either operand is 0 or 1.
    pub fn mul(
        &self,
        a: ExtElement,
        b: ExtElement,
        ledger: &mut MulLedger,
        category: MulCategory,
    ) -> Result<ExtElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_counted(a, b, ledger, category))
    }

    /// Product without ledger activity, for oracles and setup work.
    pub fn mul_uncounted(&self, a: ExtElement, b: ExtElement) -> Result<ExtElement> {
        self.check(a)?;
        self.check(b)?;
        Ok(self.mul_raw(a, b))
    }

    /// `a^p`, charged as exactly one unit to `p_powers`.
    pub fn frobenius(&self, a: ExtElement, ledger: &mut MulLedger) -> Result<ExtElement> {
        self.check(a)?;
        Ok(self.frobenius_counted(a, ledger))
    }

    /// `a^e` by square-and-multiply, uncounted.
    pub fn pow_uncounted(&self, a: ExtElement, e: u64) -> Result<ExtElement> {
        self.check(a)?;
        Ok(ExtElement(self.pow_generic(a.0, e)))
    }

    #[inline]
    pub(crate) fn add_raw(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        match &self.tables {
            Some(t) => ExtElement(t.add[(a.0 as u64 * self.order + b.0 as u64) as usize]),
            None => ExtElement(self.add_generic(a.0, b.0)),
        }
    }

    #[inline]
    pub(crate) fn mul_raw(&self, a: ExtElement, b: ExtElement) -> ExtElement {
        match &self.tables {
            Some(t) => ExtElement(t.mul[(a.0 as u64 * self.order + b.0 as u64) as usize]),
            None => ExtElement(self.mul_generic(a.0, b.0)),
        }
    }

    #[inline]
    pub(crate) fn frob_raw(&self, a: ExtElement) -> ExtElement {
        match &self.tables {
            Some(t) => ExtElement(t.frob[a.0 as usize]),
            None => ExtElement(self.frob_generic(a.0)),
        }
    }

    /// `children[0]^p + sum_{i>0} monos[i] * children[i]^p`, uncounted.
    /// The reconstruction kernel, with table access hoisted out of the loop.
    pub(crate) fn frobenius_combine(&self, monos: &[ExtElement], children: &[ExtElement]) -> ExtElement {
        match &self.tables {
            Some(t) => {
                let order = self.order as usize;
                let mut acc = t.frob[children[0].0 as usize];
                for (&m, &c) in monos[1..].iter().zip(&children[1..]) {
                    let lifted = t.frob[c.0 as usize];
                    let term = t.mul[m.0 as usize * order + lifted as usize];
                    acc = t.add[acc as usize * order + term as usize];
                }
                ExtElement(acc)
            }
            None => {
                let mut acc = self.frob_raw(children[0]);
                for (&m, &c) in monos[1..].iter().zip(&children[1..]) {
                    acc = self.add_raw(acc, self.mul_raw(m, self.frob_raw(c)));
                }
                acc
            }
        }
    }

    #[inline]
    pub(crate) fn mul_counted(
        &self,
        a: ExtElement,
        b: ExtElement,
        ledger: &mut MulLedger,
        category: MulCategory,
    ) -> ExtElement {
        ledger.charge(category, a.is_zero_or_one() || b.is_zero_or_one());
        self.mul_raw(a, b)
    }

    #[inline]
    pub(crate) fn frobenius_counted(&self, a: ExtElement, ledger: &mut MulLedger) -> ExtElement {
        ledger.charge_p_power(a.is_zero_or_one());
        self.frob_raw(a)
    }

    fn decode(&self, mut x: u32) -> Digits {
        let mut d = [0u32; MAX_DEGREE];
        let p = self.p.get();
        if p == 2 {
            for (k, slot) in d.iter_mut().enumerate().take(self.m) {
                *slot = (x >> k) & 1;
            }
            return d;
        }
        for slot in d.iter_mut().take(self.m) {
            *slot = x % p;
            x /= p;
        }
        d
    }

    fn encode(&self, d: &Digits) -> u32 {
        let p = u64::from(self.p.get());
        d[..self.m]
            .iter()
            .rev()
            .fold(0u64, |acc, &c| acc * p + u64::from(c)) as u32
    }

    fn add_generic(&self, a: u32, b: u32) -> u32 {
        let p = self.p.get();
        if p == 2 {
            return a ^ b;
        }
        let (da, db) = (self.decode(a), self.decode(b));
        let mut s = [0u32; MAX_DEGREE];
        for k in 0..self.m {
            s[k] = (da[k] + db[k]) % p;
        }
        self.encode(&s)
    }

    fn mul_generic(&self, a: u32, b: u32) -> u32 {
        let p = u64::from(self.p.get());
        let m = self.m;
        let (da, db) = (self.decode(a), self.decode(b));
        let mut prod = [0u64; 2 * MAX_DEGREE - 1];
        for i in 0..m {
            if da[i] == 0 {
                continue;
            }
            for j in 0..m {
                prod[i + j] += u64::from(da[i]) * u64::from(db[j]);
            }
        }
        for c in prod.iter_mut().take(2 * m - 1) {
            *c %= p;
        }
        for k in (m..2 * m - 1).rev() {
            let t = prod[k];
            if t == 0 {
                continue;
            }
            for j in 0..m {
                let slot = &mut prod[k - m + j];
                *slot = (*slot + t * u64::from(self.neg_modulus[j])) % p;
            }
        }
        let mut out = [0u32; MAX_DEGREE];
        for k in 0..m {
            out[k] = prod[k] as u32;
        }
        self.encode(&out)
    }

    fn frob_generic(&self, a: u32) -> u32 {
        let p = u64::from(self.p.get());
        let da = self.decode(a);
        let mut acc = [0u64; MAX_DEGREE];
        for (k, img) in self.frob_images.iter().enumerate() {
            let c = u64::from(da[k]);
            if c == 0 {
                continue;
            }
            for j in 0..self.m {
                acc[j] += c * u64::from(img[j]);
            }
        }
        let mut out = [0u32; MAX_DEGREE];
        for k in 0..self.m {
            out[k] = (acc[k] % p) as u32;
        }
        self.encode(&out)
    }

    fn pow_generic(&self, a: u32, mut e: u64) -> u32 {
        let mut base = a;
        let mut acc = 1u32;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul_generic(acc, base);
            }
            base = self.mul_generic(base, base);
            e >>= 1;
        }
        acc
    }
}

fn check_order(p: PrimeModulus, m: usize) -> Result<()> {
    if m == 0 {
        return Err(Error::ZeroDegree);
    }
    let too_large = Error::FieldTooLarge { p: p.get(), m };
    if m > MAX_DEGREE {
        return Err(too_large);
    }
    match u64::from(p.get()).checked_pow(m as u32) {
        Some(q) if q <= MAX_FIELD_ORDER => Ok(()),
        _ => Err(too_large),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn field(p: u64, m: usize) -> ExtField {
        ExtField::new(PrimeModulus::new(p).unwrap(), m).unwrap()
    }

    #[test]
    fn primality_and_bounds() {
        assert_eq!(PrimeModulus::new(4), Err(Error::NotPrime(4)));
        assert_eq!(PrimeModulus::new(1), Err(Error::NotPrime(1)));
        assert_eq!(PrimeModulus::new(65521).unwrap().get(), 65521);
        assert_eq!(PrimeModulus::new(65537), Err(Error::PrimeTooLarge(65537)));
        let p2 = PrimeModulus::new(2).unwrap();
        assert!(ExtField::new(p2, 32).is_ok());
        assert!(matches!(ExtField::new(p2, 33), Err(Error::FieldTooLarge { .. })));
        assert!(matches!(
            ExtField::new(PrimeModulus::new(3).unwrap(), 21),
            Err(Error::FieldTooLarge { .. })
        ));
        assert_eq!(ExtField::new(p2, 0).unwrap_err(), Error::ZeroDegree);
    }

    #[test]
    fn add_examples() {
        let f4 = field(2, 2);
        let a = f4.element(&[1, 1]).unwrap();
        let b = f4.element(&[1, 0]).unwrap();
        assert_eq!(f4.coeffs(f4.add(a, b).unwrap()), vec![0, 1]);
        assert_eq!(f4.add(a, f4.zero()).unwrap(), a);
        let f3 = field(3, 1);
        assert_eq!(f3.add(f3.from_prime(2), f3.from_prime(2)).unwrap(), f3.from_prime(1));
    }

    #[test]
    fn mul_examples() {
        let f4 = field(2, 2);
        let x = f4.element(&[0, 1]).unwrap();
        let mut ledger = MulLedger::structural();
        let xx = f4.mul(x, x, &mut ledger, MulCategory::Table).unwrap();
        assert_eq!(f4.coeffs(xx), vec![1, 1]);
        assert_eq!(ledger.counts().table_mults, 1);

        let mut va = MulLedger::value_aware();
        assert_eq!(f4.mul(x, f4.one(), &mut va, MulCategory::Reconstruction).unwrap(), x);
        assert_eq!(va.counts().free_mults, 1);
        assert_eq!(va.counts().reconstruction_mults, 0);

        let f3 = field(3, 1);
        let mut ledger = MulLedger::structural();
        let two = f3.from_prime(2);
        assert_eq!(f3.mul(two, two, &mut ledger, MulCategory::Combination).unwrap(), f3.one());
        assert_eq!(ledger.counts().combination_mults, 1);
    }

    #[test]
    fn frobenius_examples() {
        let f4 = field(2, 2);
        let mut s = MulLedger::structural();
        assert_eq!(f4.frobenius(f4.zero(), &mut s).unwrap(), f4.zero());
        assert_eq!(s.counts().p_powers, 1);
        let mut va = MulLedger::value_aware();
        f4.frobenius(f4.zero(), &mut va).unwrap();
        assert_eq!((va.counts().p_powers, va.counts().free_mults), (0, 1));

        let x = f4.element(&[0, 1]).unwrap();
        let mut s = MulLedger::structural();
        assert_eq!(f4.coeffs(f4.frobenius(x, &mut s).unwrap()), vec![1, 1]);
        assert_eq!(s.total(), 1);
    }

    #[test]
    fn frobenius_is_an_involution_on_f9() {
        let f9 = field(3, 2);
        assert_eq!(f9.modulus(), &[1, 0, 1]);
        let mut ledger = MulLedger::structural();
        for a in f9.elements() {
            let back = f9.frobenius(f9.frobenius(a, &mut ledger).unwrap(), &mut ledger).unwrap();
            assert_eq!(back, a);
        }
        assert_eq!(ledger.counts().p_powers, 18);
    }

    /// Field axioms exhaustively on every field of order at most 256.
    #[test]
    fn field_axioms_small_fields() {
        for (p, m) in [(2, 1), (2, 3), (2, 8), (3, 2), (3, 4), (5, 2), (7, 2), (13, 2)] {
            let f = field(p, m);
            assert!(f.order() <= 256);
            let els: Vec<_> = f.elements().collect();
            // sample the cube for the larger fields to keep the test quick
            let step = if els.len() > 64 { 7 } else { 1 };
            for &a in &els {
                for &b in els.iter().step_by(step) {
                    let ab = f.mul_uncounted(a, b).unwrap();
                    assert_eq!(ab, f.mul_uncounted(b, a).unwrap());
                    assert_eq!(f.add(a, b).unwrap(), f.add(b, a).unwrap());
                    for &c in els.iter().step_by(step * 5) {
                        let lhs = f.mul_uncounted(ab, c).unwrap();
                        let rhs = f.mul_uncounted(a, f.mul_uncounted(b, c).unwrap()).unwrap();
                        assert_eq!(lhs, rhs);
                        let dist = f.mul_uncounted(a, f.add(b, c).unwrap()).unwrap();
                        let split = f
                            .add(ab, f.mul_uncounted(a, c).unwrap())
                            .unwrap();
                        assert_eq!(dist, split);
                    }
                }
                if a != f.zero() {
                    // every nonzero element is invertible: a^(q-2) * a = 1
                    let inv = f.pow_uncounted(a, f.order() - 2).unwrap();
                    assert_eq!(f.mul_uncounted(a, inv).unwrap(), f.one());
                }
            }
        }
    }

    #[test]
    fn frobenius_additive_and_fixes_prime_subfield() {
        for (p, m) in [(2, 2), (2, 4), (2, 6), (3, 2), (3, 4), (5, 2), (7, 2)] {
            let f = field(p, m);
            assert!(f.order() <= 81);
            let mut ledger = MulLedger::structural();
            let mut fixed = 0;
            for a in f.elements() {
                let fa = f.frobenius(a, &mut ledger).unwrap();
                assert_eq!(fa, f.pow_uncounted(a, p).unwrap());
                fixed += usize::from(fa == a);
                for b in f.elements() {
                    let fab = f.frobenius(f.add(a, b).unwrap(), &mut ledger).unwrap();
                    let fb = f.frobenius(b, &mut ledger).unwrap();
                    assert_eq!(fab, f.add(fa, fb).unwrap());
                }
            }
            assert_eq!(fixed, p as usize);
        }
    }

    /// Table-backed and digit-backed arithmetic agree.
    #[test]
    fn tables_match_generic_path() {
        let f = field(5, 4);
        assert!(f.tables.is_some());
        for a in (0..625).step_by(3) {
            for b in (0..625).step_by(11) {
                let (ea, eb) = (ExtElement(a), ExtElement(b));
                assert_eq!(f.mul_raw(ea, eb).0, f.mul_generic(a, b));
                assert_eq!(f.add_raw(ea, eb).0, f.add_generic(a, b));
            }
            assert_eq!(f.frob_raw(ExtElement(a)).0, f.frob_generic(a));
        }
    }

    #[test]
    fn large_field_roundtrip() {
        let f = field(2, 16);
        assert!(f.tables.is_none());
        let a = f.element(&[1, 0, 1, 1, 0, 0, 0, 1, 0, 1, 1, 1, 0, 0, 1, 1]).unwrap();
        let inv = f.pow_uncounted(a, f.order() - 2).unwrap();
        assert_eq!(f.mul_uncounted(a, inv).unwrap(), f.one());
        let mut ledger = MulLedger::structural();
        assert_eq!(f.frobenius(a, &mut ledger).unwrap(), f.pow_uncounted(a, 2).unwrap());
    }

    #[test]
    fn mismatched_elements_are_rejected() {
        let f4 = field(2, 2);
        let f16 = field(2, 4);
        let big = f16.element(&[1, 1, 1, 1]).unwrap();
        assert_eq!(f4.add(big, f4.one()), Err(Error::FieldMismatch));
        let mut ledger = MulLedger::structural();
        assert_eq!(
            f4.mul(big, f4.one(), &mut ledger, MulCategory::Table),
            Err(Error::FieldMismatch)
        );
        assert_eq!(ledger.total(), 0);
        assert!(f4.element(&[1, 2]).is_err());
        assert!(f4.element(&[1]).is_err());
    }

    #[test]
    fn modulus_validation() {
        let p2 = PrimeModulus::new(2).unwrap();
        assert!(ExtField::with_modulus(p2, vec![1, 1, 0, 1]).is_ok());
        assert_eq!(
            ExtField::with_modulus(p2, vec![1, 0, 1]).unwrap_err(),
            Error::InvalidModulus(2)
        );
    }
}
