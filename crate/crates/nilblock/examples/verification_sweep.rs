//! Run the full cross-check over every composition of n up to a bound: brute
//! force versus structural families, per-generator decompose/synthesize
//! roundtrips, and the support audit.
//!
//! This is the library-level version of `nilblock verify`.

use nilblock::cli::{verify_run, VerifyConfig};
use nilblock::Result;

fn main() -> Result<()> {
    let config = VerifyConfig {
        max_n: Some(4),
        fields: vec![2, 3, 0],
        partitions: vec![],
        report_path: None,
    };
    let report = verify_run(&config)?;

    println!("partition     field  dim N  brute  structural  roundtrip  support");
    for case in &report.cases {
        let field = match case.field.characteristic {
            0 => "Q".to_string(),
            p => format!("GF({p})"),
        };
        println!(
            "{:<13} {:<6} {:<6} {:<6} {:<11} {:<10} {}",
            format!("{:?}", case.partition.sizes),
            field,
            case.dim_algebra,
            case.dim_bruteforce,
            case.dim_structural,
            if case.roundtrip_ok { "ok" } else { "FAIL" },
            if case.support_ok { "ok" } else { "FAIL" }
        );
        assert!(case.span_equal && case.pass);
    }
    println!();
    println!(
        "{} cases, all_pass = {}",
        report.cases.len(),
        report.all_pass
    );
    Ok(())
}
