use fpeval::costmodel::{
    asymptotic_interval, implemented_cost, l_interval, leaf_degree, max_depth, optimal_depth,
    predicted_cost, shared_cost, CostBreakdown, CostFn,
};
use serde::Serialize;

use crate::{positive, prime, to_json, CliError, CostArgs, OutputFormat, Report};

#[derive(Serialize)]
struct Row {
    depth: usize,
    d: usize,
    predicted: CostBreakdown,
    implemented: CostBreakdown,
    shared: u64,
}

#[derive(Serialize)]
struct Summary {
    l_opt: usize,
    l_opt_cost: u64,
    l_opt_implemented: usize,
    l_opt_implemented_cost: u64,
    b: f64,
    l_center: f64,
    l_lower: f64,
    l_upper: f64,
    cost_lower: f64,
    cost_upper: f64,
}

#[derive(Serialize)]
struct CostReport {
    p: u32,
    s: usize,
    r: usize,
    n: usize,
    rows: Vec<Row>,
    summary: Summary,
}

const HEADER: &str = "L,d,predicted,implemented,shared,p_powers,reconstruction,table,scalar_pre,\
implemented_reconstruction,implemented_scalar_pre";

fn csv(report: &CostReport) -> String {
    let mut out = String::new();
    out.push_str(HEADER);
    out.push('\n');
    for row in &report.rows {
        let (g, t) = (&row.predicted, &row.implemented);
        out.push_str(&format!(
            "{},{},{},{},{},{},{},{},{},{},{}\n",
            row.depth,
            row.d,
            g.total,
            t.total,
            row.shared,
            g.p_powers,
            g.reconstruction,
            g.table,
            g.scalar_pre,
            t.reconstruction,
            t.scalar_pre
        ));
    }
    let s = &report.summary;
    out.push_str("\nsummary,value\n");
    out.push_str(&format!("L_opt,{}\n", s.l_opt));
    out.push_str(&format!("L_opt_cost,{}\n", s.l_opt_cost));
    out.push_str(&format!("L_opt_implemented,{}\n", s.l_opt_implemented));
    out.push_str(&format!("L_opt_implemented_cost,{}\n", s.l_opt_implemented_cost));
    for (key, v) in [
        ("B", s.b),
        ("L_center", s.l_center),
        ("L_lower", s.l_lower),
        ("L_upper", s.l_upper),
        ("cost_lower", s.cost_lower),
        ("cost_upper", s.cost_upper),
    ] {
        out.push_str(&format!("{key},{v:.6}\n"));
    }
    out
}

/// JSON carries the same six decimals as CSV.
fn round6(x: f64) -> f64 {
    format!("{x:.6}").parse().expect("formatted float parses")
}

pub(crate) fn run(args: &CostArgs) -> Result<Report, CliError> {
    let p = prime(args.p)?;
    positive(args.r, "r")?;
    positive(args.s, "s")?;
    let (n, r) = (args.n, args.r);
    let rows = (0..=max_depth(p, n))
        .map(|depth| {
            Ok(Row {
                depth,
                d: leaf_degree(p, n, depth),
                predicted: predicted_cost(p, n, r, depth)?,
                implemented: implemented_cost(p, n, r, depth)?,
                shared: shared_cost(p, args.s, n, r, depth)?,
            })
        })
        .collect::<Result<Vec<_>, fpeval::Error>>()?;
    let (l_opt, l_opt_cost) = optimal_depth(p, n, r, CostFn::Predicted)?;
    let (l_imp, l_imp_cost) = optimal_depth(p, n, r, CostFn::Implemented)?;
    let depth_iv = l_interval(p, n, r);
    let cost_iv = asymptotic_interval(p, n, r);
    let report = CostReport {
        p: p.get(),
        s: args.s,
        r,
        n,
        rows,
        summary: Summary {
            l_opt,
            l_opt_cost,
            l_opt_implemented: l_imp,
            l_opt_implemented_cost: l_imp_cost,
            b: round6(depth_iv.b),
            l_center: round6(depth_iv.center()),
            l_lower: round6(depth_iv.lower),
            l_upper: round6(depth_iv.upper),
            cost_lower: round6(cost_iv.lower),
            cost_upper: round6(cost_iv.upper),
        },
    };
    Ok(Report::ok(match args.format {
        OutputFormat::Csv => csv(&report),
        OutputFormat::Json => to_json(&report),
    }))
}
