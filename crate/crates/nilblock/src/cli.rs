//! Command line front end: dimension reports, decomposition of supplied
//! maps, the characteristic-two showcase, and the verification sweep.
//!
//! Exit codes are a contract: 0 success, 1 input or usage error, 2 the
//! supplied map is not a derivation, 3 a verification check failed.

use std::ffi::OsString;
use std::path::PathBuf;
use std::str::FromStr;

use clap::{ArgAction, Parser, Subcommand};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::algebra::{bracket, Algebra};
use crate::decomp::{
    char2_showcase, decompose, derivation_space_structural, psi_12_13_class_dim,
    psi_t1_t2_class_dim, synthesize, varphi_class_dim,
};
use crate::endo::{check_support_lemmas, derivation_space_bruteforce};
use crate::error::{Error, Result};
use crate::field::Field;
use crate::io::{
    decomposition_to_json, endo_from_json, field_to_json, partition_to_json, EndoJson, FieldJson,
    PartitionJson,
};
use crate::matrix::Partition;

/// All compositions (ordered tuples of positive parts) of n, in
/// lexicographic order by first part, then recursively.
pub fn compositions(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for first in 1..=n {
        for rest in compositions(n - first) {
            let mut v = Vec::with_capacity(1 + rest.len());
            v.push(first);
            v.extend(rest);
            out.push(v);
        }
    }
    out
}

fn make_field(ch: u64) -> Result<Field> {
    if ch == 0 {
        Ok(Field::rationals())
    } else {
        Field::new(ch)
    }
}

fn field_label(field: Field) -> String {
    match field.characteristic() {
        0 => "the rationals".to_string(),
        p => format!("GF({p})"),
    }
}

/// Sweep configuration: which partitions, which fields, where the report
/// goes.
#[derive(Clone, Debug)]
pub struct VerifyConfig {
    /// Sweep all compositions of 1..=max_n; ignored when explicit
    /// partitions are given.
    pub max_n: Option<usize>,
    /// Field characteristics, 0 meaning the rationals.
    pub fields: Vec<u64>,
    /// Explicit partition list overriding the composition sweep.
    pub partitions: Vec<Vec<usize>>,
    pub report_path: Option<PathBuf>,
}

impl VerifyConfig {
    pub fn case_list(&self) -> Result<Vec<(Vec<usize>, u64)>> {
        if self.fields.is_empty() {
            return Err(Error::InvalidInput("at least one field is required".into()));
        }
        for &ch in &self.fields {
            make_field(ch)?;
        }
        let parts: Vec<Vec<usize>> = if self.partitions.is_empty() {
            let max_n = self.max_n.ok_or_else(|| {
                Error::InvalidInput("either --max-n or --partition is required".into())
            })?;
            if max_n < 1 {
                return Err(Error::InvalidInput("--max-n must be at least 1".into()));
            }
            (1..=max_n).flat_map(compositions).collect()
        } else {
            for p in &self.partitions {
                Partition::new(p.clone())?;
            }
            self.partitions.clone()
        };
        let mut cases = Vec::new();
        for p in parts {
            for &ch in &self.fields {
                cases.push((p.clone(), ch));
            }
        }
        Ok(cases)
    }
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct VerifyCaseJson {
    pub partition: PartitionJson,
    pub field: FieldJson,
    pub dim_algebra: usize,
    pub dim_bruteforce: usize,
    pub dim_structural: usize,
    pub span_equal: bool,
    pub roundtrip_ok: bool,
    pub roundtrip_failure: Option<String>,
    pub support_ok: bool,
    pub support_failure: Option<String>,
    pub varphi_class_dim: usize,
    pub psi_12_13_dim: usize,
    pub psi_t1_t2_dim: usize,
    pub pass: bool,
}

#[derive(Serialize, Deserialize, Clone, Debug)]
pub struct VerifyReportJson {
    pub fields: Vec<u64>,
    pub cases: Vec<VerifyCaseJson>,
    pub all_pass: bool,
}

/// Runs one (partition, characteristic) cell of the sweep: dimension
/// comparison, per-generator decomposition roundtrip, support audit.
pub fn verify_case(sizes: &[usize], ch: u64) -> Result<VerifyCaseJson> {
    let field = make_field(ch)?;
    let part = Partition::new(sizes.to_vec())?;
    let alg = Algebra::new(field, part);
    let brute = derivation_space_bruteforce(&alg);
    let structural = derivation_space_structural(&alg);
    let span_equal = structural.span_equal(&alg, &brute);

    let mut roundtrip_ok = true;
    let mut roundtrip_failure = None;
    for (idx, g) in brute.gens().iter().enumerate() {
        let outcome = decompose(&alg, g).and_then(|dec| synthesize(&alg, &dec));
        match outcome {
            Ok(back) if back == *g => {}
            Ok(_) => {
                roundtrip_ok = false;
                roundtrip_failure = Some(format!("generator {idx}: resynthesis differs"));
                break;
            }
            Err(e) => {
                roundtrip_ok = false;
                roundtrip_failure = Some(format!("generator {idx}: {e}"));
                break;
            }
        }
    }

    let support = check_support_lemmas(&alg, brute.gens());
    let support_ok = support.passed();
    let support_failure = support.violations.first().map(|v| {
        format!(
            "generator {}: image of {} touches {} with value {}",
            v.generator, v.source, v.target, v.value
        )
    });

    let char2 = field.characteristic() == 2;
    let pass = span_equal && roundtrip_ok && support_ok;
    Ok(VerifyCaseJson {
        partition: partition_to_json(alg.partition()),
        field: field_to_json(field),
        dim_algebra: alg.dim(),
        dim_bruteforce: brute.dim(),
        dim_structural: structural.dim(),
        span_equal,
        roundtrip_ok,
        roundtrip_failure,
        support_ok,
        support_failure,
        varphi_class_dim: varphi_class_dim(alg.partition()),
        psi_12_13_dim: psi_12_13_class_dim(alg.partition(), char2),
        psi_t1_t2_dim: psi_t1_t2_class_dim(alg.partition(), char2),
        pass,
    })
}

/// Runs the whole sweep in parallel, preserving case order in the report.
pub fn verify_run(config: &VerifyConfig) -> Result<VerifyReportJson> {
    let cases = config.case_list()?;
    let results: Vec<Result<VerifyCaseJson>> = cases
        .par_iter()
        .map(|(sizes, ch)| verify_case(sizes, *ch))
        .collect();
    let mut out = Vec::with_capacity(results.len());
    for r in results {
        out.push(r?);
    }
    let all_pass = out.iter().all(|c| c.pass);
    Ok(VerifyReportJson {
        fields: config.fields.clone(),
        cases: out,
        all_pass,
    })
}

#[derive(Clone, Debug)]
struct Sizes(Vec<usize>);

impl FromStr for Sizes {
    type Err = String;
    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let parts = s
            .split(',')
            .map(|x| {
                x.trim()
                    .parse::<usize>()
                    .map_err(|_| format!("bad partition part {x:?}"))
            })
            .collect::<std::result::Result<Vec<_>, _>>()?;
        if parts.is_empty() || parts.iter().any(|&p| p == 0) {
            return Err("partition parts must be positive".into());
        }
        Ok(Sizes(parts))
    }
}

#[derive(Parser, Debug)]
#[command(
    name = "nilblock",
    version,
    about = "Derivations of strictly block upper triangular matrix Lie algebras"
)]
struct Cli {
    #[command(subcommand)]
    cmd: Cmd,
}

#[derive(Subcommand, Debug)]
enum Cmd {
    /// Print algebra and derivation-space dimensions for one case
    Dim {
        /// Field characteristic (a prime, or 0 for the rationals)
        #[arg(long)]
        field: u64,
        /// Comma-separated block sizes, e.g. 1,2,1
        #[arg(long)]
        partition: Sizes,
    },
    /// Decompose the derivation in a JSON file into named components
    Decompose {
        /// Path to an endomorphism JSON file (algebra header + matrix)
        #[arg(long)]
        input: PathBuf,
    },
    /// Walk through the four-block showcase map and its decomposition
    Example41 {
        /// Characteristic to run the construction over (default 2)
        #[arg(long)]
        field: Option<u64>,
    },
    /// Sweep partitions and fields, re-deriving the derivation space two
    /// ways and decomposing every generator
    Verify {
        /// Sweep all compositions of every n up to this bound
        #[arg(long = "max-n")]
        max_n: Option<usize>,
        /// Comma-separated characteristics (0 = rationals)
        #[arg(long, value_delimiter = ',', default_value = "2,3,5,0")]
        fields: Vec<u64>,
        /// Write the full JSON report here
        #[arg(long)]
        report: Option<PathBuf>,
        /// Check this partition instead of sweeping (repeatable)
        #[arg(long = "partition", action = ArgAction::Append)]
        partition: Vec<Sizes>,
    },
}

fn exit_code_for(e: &Error) -> u8 {
    match e {
        Error::NotDerivation { .. } => 2,
        _ => 1,
    }
}

fn cmd_dim(field_ch: u64, sizes: &[usize]) -> Result<u8> {
    let field = make_field(field_ch)?;
    let part = Partition::new(sizes.to_vec())?;
    let alg = Algebra::new(field, part);
    let brute = derivation_space_bruteforce(&alg);
    let structural = derivation_space_structural(&alg);
    println!(
        "algebra: partition {} over {}",
        alg.partition(),
        field_label(field)
    );
    println!("dim N = {}", alg.dim());
    println!("dim Der(N) = {} (brute force)", brute.dim());
    println!("dim Der(N) = {} (structural families)", structural.dim());
    if structural.span_equal(&alg, &brute) {
        println!("PASS: the two descriptions span the same space");
        Ok(0)
    } else {
        println!("FAIL: span mismatch between brute force and structural families");
        Ok(3)
    }
}

fn cmd_decompose(input: &PathBuf) -> Result<u8> {
    let text = std::fs::read_to_string(input)?;
    let parsed: EndoJson = serde_json::from_str(&text)?;
    let (alg, f) = endo_from_json(&parsed)?;
    let dec = decompose(&alg, &f)?;
    if synthesize(&alg, &dec)? != f {
        return Err(Error::Internal(
            "decomposition does not resynthesize to the input".into(),
        ));
    }
    println!(
        "{}",
        serde_json::to_string_pretty(&decomposition_to_json(&alg, &dec))?
    );
    Ok(0)
}

fn cmd_example41(field_ch: Option<u64>) -> Result<u8> {
    let ch = field_ch.unwrap_or(2);
    let field = make_field(ch)?;
    let (alg, f) = char2_showcase(field);
    println!(
        "partition (1,1,1,1) over {}; dim N = {}",
        field_label(field),
        alg.dim()
    );
    println!("f sends E[1,2;1,1] to -E[3,4;1,1] and E[1,3;1,1] to E[2,4;1,1]; all other basis images vanish");

    let e12 = alg.standard_elem(1, 2, 1, 1)?;
    let e13 = alg.standard_elem(1, 3, 1, 1)?;
    let e23 = alg.standard_elem(2, 3, 1, 1)?;
    let e24 = alg.standard_elem(2, 4, 1, 1)?;

    // product rule on the pair with nonzero bracket: [E12,E23] = E13
    let lhs1 = f.apply(&alg, &bracket(&e12, &e23)?)?;
    let rhs1 = bracket(&f.apply(&alg, &e12)?, &e23)?
        .add(&bracket(&e12, &f.apply(&alg, &e23)?)?)?;
    let case1 = lhs1 == rhs1 && lhs1 == e24;
    println!(
        "pair (E[1,2;1,1], E[2,3;1,1]): f([u,v]) = f(E[1,3;1,1]) = E[2,4;1,1] and the product rule gives the same: {}",
        if case1 { "PASS" } else { "FAIL" }
    );

    // product rule on the commuting pair: [E12,E13] = 0, the two correction
    // terms add up to twice E[1,4;1,1]
    let lhs2 = f.apply(&alg, &bracket(&e12, &e13)?)?;
    let rhs2 = bracket(&f.apply(&alg, &e12)?, &e13)?
        .add(&bracket(&e12, &f.apply(&alg, &e13)?)?)?;
    let case2 = lhs2.is_zero() && rhs2.is_zero();
    println!(
        "pair (E[1,2;1,1], E[1,3;1,1]): f([u,v]) = 0 while the product rule side equals 2 E[1,4;1,1], which {} zero here",
        if rhs2.is_zero() { "is" } else { "is NOT" }
    );

    if f.is_derivation(&alg) {
        if !case1 || !case2 {
            return Err(Error::Internal("showcase checks disagree with the defect scan".into()));
        }
        println!("is_derivation: true");
        let dec = decompose(&alg, &f)?;
        let psi = dec.psi_12_13.as_ref().expect("characteristic two");
        println!(
            "decomposition: x = 0: {}, varphi_1t = 0: {}, phi_12_2t = 0: {}, phi_t1t_1t1 = 0: {}, psi_t1_t2 = 0: {}",
            dec.x.is_zero(),
            dec.varphi_1t.is_zero(),
            dec.phi_12_2t.is_zero(),
            dec.phi_t1t_1t1.is_zero(),
            dec.psi_t1_t2.as_ref().expect("characteristic two").is_zero()
        );
        println!(
            "psi_12_13 equals f: {}",
            if psi == &f { "PASS" } else { "FAIL" }
        );
        let ok = synthesize(&alg, &dec)? == f;
        println!(
            "resynthesis matches the input: {}",
            if ok { "PASS" } else { "FAIL" }
        );
        Ok(if psi == &f && ok { 0 } else { 3 })
    } else {
        let defect = f.derivation_defect(&alg).expect("defect exists");
        println!("is_derivation: false");
        println!(
            "NOT a derivation over {}: the product rule fails at ({}, {})",
            field_label(field),
            defect.u,
            defect.v
        );
        Ok(0)
    }
}

fn cmd_verify(config: &VerifyConfig) -> Result<u8> {
    let report = verify_run(config)?;
    for case in &report.cases {
        let part: Vec<String> = case.partition.sizes.iter().map(|s| s.to_string()).collect();
        println!(
            "partition ({}) char {}: dim N = {}, Der = {} / {}, span {}, roundtrip {}, support {}",
            part.join(","),
            case.field.characteristic,
            case.dim_algebra,
            case.dim_bruteforce,
            case.dim_structural,
            if case.span_equal { "PASS" } else { "FAIL" },
            if case.roundtrip_ok { "PASS" } else { "FAIL" },
            if case.support_ok { "PASS" } else { "FAIL" },
        );
        if let Some(msg) = &case.roundtrip_failure {
            println!("  roundtrip failure: {msg}");
        }
        if let Some(msg) = &case.support_failure {
            println!("  support failure: {msg}");
        }
    }
    if let Some(path) = &config.report_path {
        std::fs::write(path, serde_json::to_string_pretty(&report)?)?;
        println!("report written to {}", path.display());
    }
    let total = report.cases.len();
    let passed = report.cases.iter().filter(|c| c.pass).count();
    println!("{passed}/{total} cases passed");
    Ok(if report.all_pass { 0 } else { 3 })
}

fn dispatch(cli: Cli) -> Result<u8> {
    match cli.cmd {
        Cmd::Dim { field, partition } => cmd_dim(field, &partition.0),
        Cmd::Decompose { input } => cmd_decompose(&input),
        Cmd::Example41 { field } => cmd_example41(field),
        Cmd::Verify {
            max_n,
            fields,
            report,
            partition,
        } => cmd_verify(&VerifyConfig {
            max_n,
            fields,
            partitions: partition.into_iter().map(|s| s.0).collect(),
            report_path: report,
        }),
    }
}

/// Parses arguments and runs the selected command, returning the process
/// exit code. Usage errors exit 1; help and version requests exit 0.
pub fn run<I, T>(args: I) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { 1 } else { 0 };
            let _ = e.print();
            return code;
        }
    };
    match dispatch(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            exit_code_for(&e)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compositions_are_complete_and_ordered() {
        assert_eq!(compositions(1), vec![vec![1]]);
        assert_eq!(compositions(2), vec![vec![1, 1], vec![2]]);
        assert_eq!(
            compositions(3),
            vec![vec![1, 1, 1], vec![1, 2], vec![2, 1], vec![3]]
        );
        for n in 1..=8 {
            let all = compositions(n);
            assert_eq!(all.len(), 1 << (n - 1));
            assert!(all.iter().all(|c| c.iter().sum::<usize>() == n));
        }
    }

    #[test]
    fn verify_case_reports_heisenberg_anchor() {
        let case = verify_case(&[1, 1, 1], 5).unwrap();
        assert_eq!(case.dim_algebra, 3);
        assert_eq!(case.dim_bruteforce, 6);
        assert_eq!(case.dim_structural, 6);
        assert!(case.pass);
    }

    #[test]
    fn verify_case_reports_psi_dims_in_char_2() {
        let case = verify_case(&[1, 1, 1, 1], 2).unwrap();
        assert_eq!(case.psi_12_13_dim, 1);
        assert_eq!(case.psi_t1_t2_dim, 1);
        assert!(case.pass);
        let odd = verify_case(&[1, 1, 1, 1], 3).unwrap();
        assert_eq!(odd.psi_12_13_dim, 0);
        assert_eq!(case.dim_bruteforce, odd.dim_bruteforce + 2);
    }

    #[test]
    fn verify_run_is_deterministic_and_ordered() {
        let config = VerifyConfig {
            max_n: Some(3),
            fields: vec![2, 0],
            partitions: vec![],
            report_path: None,
        };
        let a = verify_run(&config).unwrap();
        let b = verify_run(&config).unwrap();
        assert_eq!(
            serde_json::to_string(&a).unwrap(),
            serde_json::to_string(&b).unwrap()
        );
        assert!(a.all_pass);
        // (1) x2, (1,1) x2, (2) x2, then the four compositions of 3
        assert_eq!(a.cases.len(), (1 + 2 + 4) * 2);
        assert_eq!(a.cases[0].partition.sizes, vec![1]);
        assert_eq!(a.cases[0].field.characteristic, 2);
        assert_eq!(a.cases[1].field.characteristic, 0);
    }

    #[test]
    fn bad_configs_are_rejected() {
        let no_fields = VerifyConfig {
            max_n: Some(2),
            fields: vec![],
            partitions: vec![],
            report_path: None,
        };
        assert!(verify_run(&no_fields).is_err());
        let no_scope = VerifyConfig {
            max_n: None,
            fields: vec![2],
            partitions: vec![],
            report_path: None,
        };
        assert!(verify_run(&no_scope).is_err());
        let composite = VerifyConfig {
            max_n: Some(2),
            fields: vec![4],
            partitions: vec![],
            report_path: None,
        };
        assert!(verify_run(&composite).is_err());
    }

    #[test]
    fn sizes_parser_accepts_lists_and_rejects_junk() {
        assert_eq!(Sizes::from_str("1,2,1").unwrap().0, vec![1, 2, 1]);
        assert_eq!(Sizes::from_str(" 2 , 3 ").unwrap().0, vec![2, 3]);
        assert!(Sizes::from_str("1,0").is_err());
        assert!(Sizes::from_str("").is_err());
        assert!(Sizes::from_str("a,b").is_err());
    }
}
