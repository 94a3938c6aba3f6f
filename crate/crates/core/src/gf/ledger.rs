//! Multiplication accounting.
//!
//! Every field multiplication performed by an evaluation strategy is charged
//! to one category of a [`MulLedger`]. Two counting modes are supported:
//!
//! * [`CountMode::Structural`] charges every scheduled multiplication, which
//!   models the dense worst case that the closed-form counts describe.
//! * [`CountMode::ValueAware`] moves multiplications where one operand is the
//!   field's 0 or 1 into `free_mults`, which carry no cost.
//!
//! A p-th power always counts as a single unit in `p_powers`, however it is
//! computed internally.

use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum CountMode {
    #[default]
    Structural,
    ValueAware,
}

/// Ledger counter that an ordinary multiplication is charged to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MulCategory {
    /// Building the monomial table.
    Table,
    /// Combining child values while walking back up the decomposition tree.
    Reconstruction,
    /// Prime-field scalar multiples of table entries.
    ScalarPremult,
    /// Recombining base-field components with powers of the basis element.
    Combination,
}

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct MulCounts {
    pub table_mults: u64,
    pub p_powers: u64,
    pub reconstruction_mults: u64,
    pub scalar_premults: u64,
    pub combination_mults: u64,
    pub free_mults: u64,
}

impl MulCounts {
    /// Sum of all costed counters; `free_mults` is excluded.
    pub fn total(&self) -> u64 {
        self.table_mults
            + self.p_powers
            + self.reconstruction_mults
            + self.scalar_premults
            + self.combination_mults
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct MulLedger {
    mode: CountMode,
    counts: MulCounts,
}

impl MulLedger {
    pub fn new(mode: CountMode) -> Self {
        Self {
            mode,
            counts: MulCounts::default(),
        }
    }

    pub fn structural() -> Self {
        Self::new(CountMode::Structural)
    }

    pub fn value_aware() -> Self {
        Self::new(CountMode::ValueAware)
    }

    pub fn mode(&self) -> CountMode {
        self.mode
    }

    pub fn counts(&self) -> &MulCounts {
        &self.counts
    }

    pub fn total(&self) -> u64 {
        self.counts.total()
    }

    /// Charges one multiplication. `trivial` says whether an operand was 0 or 1.
    #[inline]
    pub(crate) fn charge(&mut self, category: MulCategory, trivial: bool) {
        if trivial && self.mode == CountMode::ValueAware {
            self.counts.free_mults += 1;
            return;
        }
        let counter = match category {
            MulCategory::Table => &mut self.counts.table_mults,
            MulCategory::Reconstruction => &mut self.counts.reconstruction_mults,
            MulCategory::ScalarPremult => &mut self.counts.scalar_premults,
            MulCategory::Combination => &mut self.counts.combination_mults,
        };
        *counter += 1;
    }

    #[inline]
    /// Charges `p_powers` and `reconstruction` products in one step; only
    /// valid in structural mode, where no operand is inspected.
    pub(crate) fn charge_structural_nodes(&mut self, p_powers: u64, reconstruction: u64) {
        debug_assert_eq!(self.mode, CountMode::Structural);
        self.counts.p_powers += p_powers;
        self.counts.reconstruction_mults += reconstruction;
    }

    #[inline]
    pub(crate) fn charge_p_power(&mut self, trivial: bool) {
        if trivial && self.mode == CountMode::ValueAware {
            self.counts.free_mults += 1;
        } else {
            self.counts.p_powers += 1;
        }
    }
}
