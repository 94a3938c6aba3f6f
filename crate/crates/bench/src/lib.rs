//! Fixtures shared by the benchmarks.

use fpeval::costmodel::{optimal_depth, CostFn};
use fpeval::random::{random_point, random_poly};
use fpeval::{DensePoly, ExtElement, ExtField, PrimeModulus, Result};

/// A random polynomial and point together with the predicted optimal depth.
pub struct Fixture {
    pub field: ExtField,
    pub poly: DensePoly,
    pub point: Vec<ExtElement>,
    pub l_opt: usize,
}

impl Fixture {
    pub fn new(p: u64, m: usize, r: usize, n: usize, seed: u64) -> Result<Self> {
        let p = PrimeModulus::new(p)?;
        let field = ExtField::new(p, m)?;
        let poly = random_poly(seed, p, 1, r, n)?;
        let point = random_point(seed.wrapping_add(1), &field, r);
        let (l_opt, _) = optimal_depth(p, n, r, CostFn::Predicted)?;
        Ok(Self { field, poly, point, l_opt })
    }

    pub fn label(&self) -> String {
        format!(
            "p{}_m{}_r{}_n{}",
            self.field.characteristic().get(),
            self.field.degree(),
            self.poly.num_vars(),
            self.poly.degree_bound()
        )
    }
}
