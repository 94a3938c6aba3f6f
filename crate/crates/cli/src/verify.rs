use fpeval::costmodel::{implemented_cost, implemented_extension_cost, max_depth, CostBreakdown};
use fpeval::evaluator::{eval_extension, eval_frobenius, eval_naive, eval_naive_embedded};
use fpeval::random::{random_point, random_poly, trial_seeds};
use fpeval::{subfield_embed, CountMode, ExtField, MulCounts, MulLedger};
use serde::Serialize;

use crate::{check_tree, positive, prime, to_json, CliError, OutputFormat, Report, VerifyArgs};

#[derive(Debug, Default, Serialize)]
struct Check {
    name: &'static str,
    passed: u64,
    failed: u64,
}

impl Check {
    fn new(name: &'static str) -> Self {
        Self {
            name,
            ..Self::default()
        }
    }

    fn record(&mut self, ok: bool) {
        if ok {
            self.passed += 1;
        } else {
            self.failed += 1;
        }
    }
}

#[derive(Serialize)]
struct VerifyReport {
    p: u32,
    s: usize,
    r: usize,
    n: usize,
    m: usize,
    trials: usize,
    seed: u64,
    max_depth: usize,
    checks: Vec<Check>,
    success: bool,
}

fn counts_match(counts: &MulCounts, cost: &CostBreakdown) -> bool {
    counts.p_powers == cost.p_powers
        && counts.reconstruction_mults == cost.reconstruction
        && counts.table_mults == cost.table
        && counts.scalar_premults == cost.scalar_pre
        && counts.combination_mults == cost.combination
        && counts.free_mults == 0
}

pub(crate) fn run(args: &VerifyArgs) -> Result<Report, CliError> {
    let p = prime(args.p)?;
    positive(args.r, "r")?;
    positive(args.s, "s")?;
    positive(args.m, "m")?;
    if args.m % args.s != 0 {
        return Err(CliError::Usage(format!(
            "--s {} must divide --m {}",
            args.s, args.m
        )));
    }
    let max = max_depth(p, args.n);
    check_tree(p, args.r, max)?;
    let field = ExtField::new(p, args.m)?;
    let embedding = (args.s > 1)
        .then(|| subfield_embed(p, args.s, args.m))
        .transpose()?;
    let contracts = (0..=max)
        .map(|depth| implemented_cost(p, args.n, args.r, depth))
        .collect::<Result<Vec<_>, _>>()?;
    let ext_contracts = (0..=max)
        .map(|depth| implemented_extension_cost(p, args.s, args.n, args.r, depth))
        .collect::<Result<Vec<_>, _>>()?;

    let mut value = Check::new("frobenius_value");
    let mut count = Check::new("frobenius_count");
    let mut ext_value = Check::new("extension_value");
    let mut ext_count = Check::new("extension_count");
    for (poly_seed, point_seed) in trial_seeds(args.seed, args.trials) {
        let poly = random_poly(poly_seed, p, 1, args.r, args.n)?;
        let point = random_point(point_seed, &field, args.r);
        let oracle = eval_naive(&field, &poly, &point)?;
        for (depth, contract) in contracts.iter().enumerate() {
            let mut ledger = MulLedger::structural();
            let v = eval_frobenius(&field, &poly, &point, depth, &mut ledger)?;
            value.record(v == oracle);
            count.record(counts_match(ledger.counts(), contract));
        }
        if let Some(embedding) = &embedding {
            let poly = random_poly(poly_seed, p, args.s, args.r, args.n)?;
            let oracle = eval_naive_embedded(embedding, &poly, &point)?;
            for (depth, contract) in ext_contracts.iter().enumerate() {
                let res = eval_extension(embedding, &poly, &point, Some(depth), CountMode::Structural)?;
                ext_value.record(res.value == oracle);
                ext_count.record(counts_match(res.ledger.counts(), contract));
            }
        }
    }
    let checks = vec![value, count, ext_value, ext_count];
    let success = checks.iter().all(|c| c.failed == 0);
    let report = VerifyReport {
        p: p.get(),
        s: args.s,
        r: args.r,
        n: args.n,
        m: args.m,
        trials: args.trials,
        seed: args.seed,
        max_depth: max,
        checks,
        success,
    };
    let output = match args.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let mut out = String::from("check,passed,failed\n");
            for c in &report.checks {
                out.push_str(&format!("{},{},{}\n", c.name, c.passed, c.failed));
            }
            out.push_str(&format!("result,{},\n", if success { "pass" } else { "fail" }));
            out
        }
    };
    Ok(Report { output, success })
}
