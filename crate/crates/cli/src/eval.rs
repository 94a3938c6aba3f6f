use std::fs;
use std::path::Path;

use fpeval::costmodel::max_depth;
use fpeval::evaluator::{eval_auto, eval_extension, eval_frobenius};
use fpeval::format::{parse_point, parse_poly};
use fpeval::{subfield_embed, CountMode, MulCounts, MulLedger};
use serde::Serialize;

use crate::{check_tree, to_json, CliError, DepthArg, EvalArgs, OutputFormat, Report};

#[derive(Serialize)]
struct EvalReport {
    value: Vec<u32>,
    #[serde(rename = "L_used")]
    l_used: usize,
    count_mode: CountMode,
    ledger: MulCounts,
    total: u64,
}

fn read(path: &Path) -> Result<String, CliError> {
    fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })
}

pub(crate) fn run(args: &EvalArgs) -> Result<Report, CliError> {
    let input_err = |path: &Path| {
        let path = path.to_owned();
        move |source| CliError::Input { path, source }
    };
    let poly = parse_poly(&read(&args.input)?).map_err(input_err(&args.input))?;
    let p = poly.characteristic();
    let (field, point) = parse_point(&read(&args.point)?, p).map_err(input_err(&args.point))?;
    if point.len() != poly.num_vars() {
        return Err(CliError::Input {
            path: args.point.clone(),
            source: fpeval::Error::Format {
                field: "coords".into(),
                reason: format!("expected {} coordinates, got {}", poly.num_vars(), point.len()),
            },
        });
    }
    let s = poly.coeff_degree();
    if field.degree() % s != 0 {
        return Err(CliError::Usage(format!(
            "coefficient degree s = {s} must divide point degree m = {}",
            field.degree()
        )));
    }
    let mode = CountMode::from(args.count_mode);
    if let DepthArg::Fixed(depth) = args.depth {
        let max = max_depth(p, poly.degree_bound());
        if depth > max {
            return Err(fpeval::Error::DepthOutOfRange { depth, max }.into());
        }
        check_tree(p, poly.num_vars(), depth)?;
    }
    let result = if s > 1 {
        let embedding = subfield_embed(p, s, field.degree())?;
        let depth = match args.depth {
            DepthArg::Auto => None,
            DepthArg::Fixed(depth) => Some(depth),
        };
        eval_extension(&embedding, &poly, &point, depth, mode)?
    } else {
        match args.depth {
            DepthArg::Auto => eval_auto(&field, &poly, &point, mode)?,
            DepthArg::Fixed(depth) => {
                let mut ledger = MulLedger::new(mode);
                let value = eval_frobenius(&field, &poly, &point, depth, &mut ledger)?;
                fpeval::EvalResult {
                    value,
                    l_used: depth,
                    ledger,
                }
            }
        }
    };
    let report = EvalReport {
        value: field.coeffs(result.value),
        l_used: result.l_used,
        count_mode: mode,
        ledger: *result.ledger.counts(),
        total: result.ledger.total(),
    };
    Ok(Report::ok(match args.format {
        OutputFormat::Json => to_json(&report),
        OutputFormat::Csv => {
            let c = &report.ledger;
            let value: Vec<String> = report.value.iter().map(u32::to_string).collect();
            format!(
                "value,L_used,count_mode,table_mults,p_powers,reconstruction_mults,scalar_premults,\
combination_mults,free_mults,total\n{},{},{},{},{},{},{},{},{},{}\n",
                value.join(" "),
                report.l_used,
                match mode {
                    CountMode::Structural => "structural",
                    CountMode::ValueAware => "value-aware",
                },
                c.table_mults,
                c.p_powers,
                c.reconstruction_mults,
                c.scalar_premults,
                c.combination_mults,
                c.free_mults,
                report.total
            )
        }
    }))
}
