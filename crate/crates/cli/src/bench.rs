use std::str::FromStr;

use fpeval::costmodel::{optimal_depth, predicted_cost, CostFn};
use fpeval::evaluator::eval_frobenius;
use fpeval::random::{random_point, random_poly, trial_seeds};
use fpeval::{CountMode, ExtField, MulLedger, PrimeModulus};
use rayon::prelude::*;
use serde::Serialize;

use crate::{positive, prime, to_json, BenchArgs, CliError, OutputFormat, Report};

/// Inclusive range `lo:hi[:step]`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NRange {
    pub lo: usize,
    pub hi: usize,
    pub step: usize,
}

impl NRange {
    pub fn values(&self) -> Vec<usize> {
        (self.lo..=self.hi).step_by(self.step).collect()
    }
}

impl FromStr for NRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let parts: Vec<&str> = s.split(':').collect();
        let num = |t: &str| {
            t.trim()
                .parse::<usize>()
                .map_err(|_| format!("`{t}` is not a nonnegative integer in range `{s}`"))
        };
        let (lo, hi, step) = match parts.as_slice() {
            [lo, hi] => (num(lo)?, num(hi)?, 1),
            [lo, hi, step] => (num(lo)?, num(hi)?, num(step)?),
            _ => return Err(format!("expected lo:hi[:step], got `{s}`")),
        };
        if step == 0 {
            return Err("step must be at least 1".into());
        }
        if lo > hi {
            return Err(format!("empty range `{s}`"));
        }
        Ok(Self { lo, hi, step })
    }
}

#[derive(Debug, Serialize)]
struct Row {
    n: usize,
    direct: u64,
    predicted_opt: u64,
    measured: u64,
    #[serde(rename = "L_opt")]
    l_opt: usize,
    ratio: f64,
}

fn row(
    p: PrimeModulus,
    r: usize,
    n: usize,
    field: &ExtField,
    seed: u64,
    mode: CountMode,
) -> Result<Row, fpeval::Error> {
    let direct = predicted_cost(p, n, r, 0)?.total;
    let (l_opt, predicted_opt) = optimal_depth(p, n, r, CostFn::Predicted)?;
    let (poly_seed, point_seed) = trial_seeds(seed ^ n as u64, 1)[0];
    let poly = random_poly(poly_seed, p, 1, r, n)?;
    let point = random_point(point_seed, field, r);
    let mut ledger = MulLedger::new(mode);
    eval_frobenius(field, &poly, &point, l_opt, &mut ledger)?;
    // both counts are 0 only when nothing needs multiplying
    let ratio = if direct == 0 {
        1.0
    } else {
        predicted_opt as f64 / direct as f64
    };
    Ok(Row {
        n,
        direct,
        predicted_opt,
        measured: ledger.total(),
        l_opt,
        ratio: format!("{ratio:.6}").parse().expect("formatted float parses"),
    })
}

pub(crate) fn run(args: &BenchArgs) -> Result<Report, CliError> {
    let p = prime(args.p)?;
    positive(args.r, "r")?;
    positive(args.m, "m")?;
    let field = ExtField::new(p, args.m)?;
    let mode = CountMode::from(args.count_mode);
    // rayon keeps the input order in the collected rows
    let rows = args
        .n_range
        .values()
        .into_par_iter()
        .map(|n| row(p, args.r, n, &field, args.seed, mode))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Report::ok(match args.format {
        OutputFormat::Json => to_json(&rows),
        OutputFormat::Csv => {
            let mut out = String::from("n,direct,predicted_opt,measured,L_opt,ratio\n");
            for row in &rows {
                out.push_str(&format!(
                    "{},{},{},{},{},{:.6}\n",
                    row.n, row.direct, row.predicted_opt, row.measured, row.l_opt, row.ratio
                ));
            }
            out
        }
    }))
}
