use std::io::{self, BufRead, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{Context, Result};
use clap::{Parser, Subcommand, ValueEnum};
use log::info;
use rayon::prelude::*;
use serde::Serialize;
use serde_json::{json, Value};

use ngon_tc::cohomology::CohContext;
use ngon_tc::polygon::{enumerate_codes, realize, GeneticCode, LengthVector};
use ngon_tc::suites;
use ngon_tc::tc::{tc_report, verify_certificate, zcl_search, Certificate, ReportOptions, TcReport};

#[derive(Parser)]
#[command(name = "ngon-tc", version, about = "Cohomology and topological complexity bounds for planar polygon spaces")]
struct Cli {
    /// Worker threads (defaults to all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(clap::Args)]
#[group(required = true, multiple = false)]
struct Input {
    /// Side lengths, comma separated; fractions like 3/2 are allowed.
    #[arg(long)]
    lengths: Option<String>,
    /// Genetic code, e.g. 8631;854 (T = 10, E = 11).
    #[arg(long)]
    code: Option<String>,
}

impl Input {
    fn resolve(&self) -> Result<GeneticCode> {
        if let Some(l) = &self.lengths {
            Ok(LengthVector::parse(l)?.genetic_code()?)
        } else {
            Ok(self.code.as_deref().expect("clap enforces one input").parse()?)
        }
    }
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Table1,
    Counts,
    Size5,
    Size6,
    Identities,
}

#[derive(Subcommand)]
enum Command {
    /// Bounds on topological complexity for one space, as JSON.
    Analyze {
        #[command(flatten)]
        input: Input,
        /// Only search for a nonzero product of this degree.
        #[arg(long)]
        target: Option<u32>,
        /// Also try products of the full degree 2m.
        #[arg(long)]
        full_degree: bool,
    },
    /// Reports for every code with n sides, followed by a summary.
    Sweep {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        /// Shorthand for --format csv.
        #[arg(long)]
        csv: bool,
        /// Permit n = 9.
        #[arg(long)]
        allow_long: bool,
        #[arg(long)]
        full_degree: bool,
    },
    /// Runs a reproduction suite and reports differences from expected values.
    Verify {
        #[arg(value_enum)]
        suite: Suite,
    },
    /// Lists the genetic codes with n sides.
    Enumerate {
        #[arg(long)]
        n: u32,
        #[arg(long, value_enum, default_value = "json")]
        format: Format,
        #[arg(long)]
        csv: bool,
    },
    /// Integer side lengths realizing a code.
    Realize {
        #[arg(long)]
        code: String,
    },
    /// Betti numbers and canonical bases.
    Cohomology {
        #[command(flatten)]
        input: Input,
        /// Restrict the bases to one degree.
        #[arg(long)]
        degree: Option<u32>,
    },
    /// Re-checks certificates from a file or stdin: bare certificates or
    /// reports carrying one, one JSON document per line.
    VerifyCert {
        /// Input file; stdin when omitted or "-".
        file: Option<PathBuf>,
    },
}

/// A verification found values that differ from what was expected.
#[derive(Debug)]
struct Mismatch(String);

impl std::fmt::Display for Mismatch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl std::error::Error for Mismatch {}

fn exit_code(err: &anyhow::Error) -> u8 {
    if err.downcast_ref::<Mismatch>().is_some() {
        return 4;
    }
    match err.downcast_ref::<ngon_tc::Error>() {
        Some(ngon_tc::Error::NotAdmissible(_) | ngon_tc::Error::Unrealizable(_)) => 3,
        Some(
            ngon_tc::Error::Parse { .. }
            | ngon_tc::Error::NotGeneric
            | ngon_tc::Error::EmptySpace
            | ngon_tc::Error::OutOfRange { .. }
            | ngon_tc::Error::Domain(_),
        ) => 2,
        _ => 1,
    }
}

fn main() -> ExitCode {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = Cli::parse();
    if let Some(j) = cli.jobs {
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(1);
        }
    }
    match run(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(e) => {
            eprintln!("error: {e:#}");
            ExitCode::from(exit_code(&e))
        }
    }
}

fn print_json<T: Serialize>(out: &mut impl Write, value: &T) -> Result<()> {
    serde_json::to_writer(&mut *out, value)?;
    writeln!(out)?;
    Ok(())
}

fn run(command: Command) -> Result<()> {
    let stdout = io::stdout();
    let mut out = stdout.lock();
    match command {
        Command::Analyze { input, target, full_degree } => {
            let code = input.resolve()?;
            if let Some(t) = target {
                let ctx = CohContext::new(&code);
                let cert = zcl_search(&ctx, t)?;
                print_json(
                    &mut out,
                    &json!({"code": code.to_string(), "target": t, "found": cert.is_some(), "certificate": cert}),
                )
            } else {
                print_json(&mut out, &tc_report(&code, &ReportOptions { full_degree })?)
            }
        }
        Command::Sweep { n, format, csv, allow_long, full_degree } => {
            let format = if csv { Format::Csv } else { format };
            sweep(&mut out, n, format, allow_long, full_degree)
        }
        Command::Verify { suite } => verify(&mut out, suite),
        Command::Enumerate { n, format, csv } => {
            let codes = enumerate_codes(n)?;
            if csv || format == Format::Csv {
                let mut w = csv::Writer::from_writer(out);
                w.write_record(["code", "n", "genes"])?;
                for c in &codes {
                    w.write_record([c.to_string(), n.to_string(), c.gees().len().to_string()])?;
                }
                w.flush()?;
                Ok(())
            } else {
                for c in &codes {
                    print_json(&mut out, &json!({"code": c.to_string(), "n": n}))?;
                }
                Ok(())
            }
        }
        Command::Realize { code } => {
            let code: GeneticCode = code.parse()?;
            let l = realize(&code)?;
            let lengths: Value = match l.as_integers() {
                Some(v) => json!(v),
                None => json!(l.lengths().iter().map(|x| x.to_string()).collect::<Vec<_>>()),
            };
            print_json(&mut out, &json!({"code": code.to_string(), "lengths": lengths}))
        }
        Command::Cohomology { input, degree } => {
            let code = input.resolve()?;
            let ctx = CohContext::new(&code);
            let degrees: Vec<u32> = match degree {
                Some(d) => vec![d],
                None => (0..=ctx.m()).collect(),
            };
            let mut bases = serde_json::Map::new();
            for d in degrees {
                let basis: Vec<String> = ctx.basis(d)?.iter().map(|b| b.to_string()).collect();
                bases.insert(d.to_string(), json!(basis));
            }
            print_json(&mut out, &json!({"code": code.to_string(), "m": ctx.m(), "betti": ctx.betti(), "bases": bases}))
        }
        Command::VerifyCert { file } => verify_certs(&mut out, file),
    }
}

#[derive(Serialize)]
struct SweepRow {
    code: String,
    n: u32,
    dims: String,
    rm_zero: bool,
    tc_lower: u32,
    tc_upper: u32,
    method: String,
    special_case: String,
    exceptional: bool,
}

impl From<&TcReport> for SweepRow {
    fn from(r: &TcReport) -> Self {
        SweepRow {
            code: r.code.clone(),
            n: r.n,
            dims: r.betti.iter().map(|d| d.to_string()).collect::<Vec<_>>().join("-"),
            rm_zero: r.rm_zero,
            tc_lower: r.tc_lower,
            tc_upper: r.tc_upper,
            method: r.method.map(|m| m.to_string()).unwrap_or_default(),
            special_case: r.special_case.map(|s| s.as_str().to_owned()).unwrap_or_default(),
            exceptional: r.exceptional,
        }
    }
}

fn sweep(out: &mut impl Write, n: u32, format: Format, allow_long: bool, full_degree: bool) -> Result<()> {
    let hi = if allow_long { 9 } else { 8 };
    if !(6..=hi).contains(&n) {
        return Err(ngon_tc::Error::OutOfRange { n, lo: 6, hi }.into());
    }
    let codes = enumerate_codes(n)?;
    info!("{} codes with n = {n}", codes.len());
    let opts = ReportOptions { full_degree };
    let reports: Vec<TcReport> = codes.par_iter().map(|c| tc_report(c, &opts)).collect::<ngon_tc::Result<_>>()?;
    let exceptional = suites::exceptional_codes(&reports);
    let special: Vec<&str> = reports.iter().filter(|r| r.special_case.is_some()).map(|r| r.code.as_str()).collect();
    let summary = json!({"summary": {"n": n, "codes": reports.len(), "exceptional": exceptional, "special": special}});
    match format {
        Format::Json => {
            for r in &reports {
                print_json(out, r)?;
            }
            print_json(out, &summary)
        }
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            for r in &reports {
                w.serialize(SweepRow::from(r))?;
            }
            w.flush()?;
            eprintln!("{summary}");
            Ok(())
        }
    }
}

fn compare<T: PartialEq + std::fmt::Debug>(
    out: &mut impl Write,
    label: &str,
    got: T,
    want: T,
    bad: &mut Vec<String>,
) -> Result<()> {
    if got == want {
        writeln!(out, "ok        {label}: {got:?}")?;
    } else {
        writeln!(out, "MISMATCH  {label}: computed {got:?}, expected {want:?}")?;
        bad.push(label.to_owned());
    }
    Ok(())
}

fn verify_genes(out: &mut impl Write, gene_size: u32, expected: &[&str], bad: &mut Vec<String>) -> Result<()> {
    let limit = suites::monogenic_search_limit(gene_size - 1);
    let got = suites::monogenic_exceptions(gene_size, limit)?;
    let want: Vec<String> = expected.iter().map(|s| s.to_string()).collect();
    for g in want.iter().filter(|g| !got.contains(g)) {
        writeln!(out, "MISMATCH  expected exceptional, computed not: {g}")?;
        bad.push(g.clone());
    }
    for g in got.iter().filter(|g| !want.contains(g)) {
        writeln!(out, "MISMATCH  computed exceptional, not expected: {g}")?;
        bad.push(g.clone());
    }
    writeln!(out, "computed  genes of size {gene_size} with n <= {limit}: {}", got.join(", "))?;
    Ok(())
}

fn verify(out: &mut impl Write, suite: Suite) -> Result<()> {
    let mut bad = Vec::new();
    match suite {
        Suite::Table1 => {
            for ((k, all, zero), want) in suites::table1()?.into_iter().zip(suites::TABLE1_EXPECTED) {
                compare(out, &format!("k={k}"), (k, all, zero), want, &mut bad)?;
            }
        }
        Suite::Counts => {
            for ((n, count), want) in suites::code_counts()?.into_iter().zip(suites::CODE_COUNTS_EXPECTED) {
                compare(out, &format!("n={n}"), (n, count), want, &mut bad)?;
            }
        }
        Suite::Size5 => verify_genes(out, 5, &suites::SIZE5_EXCEPTIONAL, &mut bad)?,
        Suite::Size6 => verify_genes(out, 6, &suites::SIZE6_EXCEPTIONAL, &mut bad)?,
        Suite::Identities => {
            for c in suites::identity_checks()? {
                let tag = if c.passed { "ok      " } else { "MISMATCH" };
                writeln!(out, "{tag}  {}: {}", c.name, c.detail)?;
                if !c.passed {
                    bad.push(c.name);
                }
            }
        }
    }
    if bad.is_empty() {
        Ok(())
    } else {
        Err(Mismatch(format!("{} mismatched entries: {}", bad.len(), bad.join(", "))).into())
    }
}

fn verify_certs(out: &mut impl Write, file: Option<PathBuf>) -> Result<()> {
    let reader: Box<dyn BufRead> = match file {
        Some(p) if p.as_os_str() != "-" => {
            Box::new(io::BufReader::new(std::fs::File::open(&p).with_context(|| format!("opening {}", p.display()))?))
        }
        _ => Box::new(io::stdin().lock()),
    };
    let (mut checked, mut failed) = (0usize, 0usize);
    for (i, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let value: Value = serde_json::from_str(&line).with_context(|| format!("line {}", i + 1))?;
        let cert_value = match value.get("certificate") {
            Some(Value::Null) => continue,
            Some(c) => c.clone(),
            None if value.get("rbar_exp").is_some() => value,
            None => continue,
        };
        let cert: Certificate = serde_json::from_value(cert_value).with_context(|| format!("line {}", i + 1))?;
        checked += 1;
        let ok = verify_certificate(&cert)?;
        if !ok {
            failed += 1;
        }
        writeln!(out, "{} {} {} at {:?}", if ok { "ok  " } else { "FAIL" }, cert.code, cert.product(), cert.bidegree)?;
    }
    if checked == 0 {
        return Err(ngon_tc::Error::Parse { what: "certificate input", input: "no certificates found".into() }.into());
    }
    if failed > 0 {
        return Err(Mismatch(format!("{failed} of {checked} certificates failed")).into());
    }
    Ok(())
}
