//! Command-line front end: certification, the table regression run,
//! exhaustive search, energies, duality, and the bound programs, all over
//! JSON files with rationals as exact `p/q` strings.

use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::{Deserialize, Serialize};

use uocode_core::catalog::{self, Constructor};
use uocode_core::certificates::{certify, certify_by_duality, CriterionKind, CriterionReport};
use uocode_core::codes::{distance_distribution, Code};
use uocode_core::exact::{
    make_potential, parse_potential_spec, rat_from_str, rat_to_string, PotentialFunction,
};
use uocode_core::krawtchouk::fundamental_potential;
use uocode_core::lp::{delsarte_min_energy, is_lp_universally_optimal, verify_certificate, LpUoOutcome};
use uocode_core::quasicode::Quasicode;
use uocode_core::removal::verify_removal_theorem;
use uocode_core::search::classify_universal_optima;
use uocode_core::{Error, Result};

#[derive(Parser)]
#[command(name = "uocode", version, about = "Exact certification of universally optimal codes in Hamming space")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Decide and certify LP universal optimality of a code or quasicode.
    Certify(CertifyArgs),
    /// Certify every catalog row via its designated route.
    Table(TableArgs),
    /// Exhaustively classify universal optima at small scales.
    Search { q: u32, n: usize, size: usize },
    /// Energy of a code or quasicode under a potential.
    Energy { file: PathBuf, potential: String },
    /// MacWilliams dual of a code's distribution or a quasicode.
    Dual { file: PathBuf },
    /// Minimum-energy program value with optimizer and certificate.
    Lp { q: u32, n: usize, size: String, potential: String },
    /// Codeword-removal checks on a catalog code.
    RemoveCheck { name: String },
}

#[derive(Args)]
struct CertifyArgs {
    /// Catalog entry name (see `table`), or a family name with parameters.
    #[arg(long)]
    catalog: Option<String>,
    /// JSON file holding a code ({"q","n","words"}) or quasicode
    /// ({"q","n","A"}), or a previously emitted certification report when
    /// re-verifying.
    #[arg(long)]
    file: Option<PathBuf>,
    /// Re-verify the certificates embedded in a report without solving
    /// any programs.
    #[arg(long)]
    verify_only: bool,
    /// Alphabet size for family constructions.
    #[arg(long)]
    q: Option<u32>,
    /// Family parameter r (Hamming/simplex).
    #[arg(long)]
    r: Option<usize>,
    /// Block length for Reed-Solomon constructions.
    #[arg(long)]
    n: Option<usize>,
    /// Minimum distance for Reed-Solomon constructions.
    #[arg(long)]
    d: Option<usize>,
    /// Matrix order for Hadamard constructions.
    #[arg(long)]
    order: Option<usize>,
}

#[derive(Args)]
struct TableArgs {
    /// Restrict to one family (substring of the family label).
    #[arg(long)]
    family: Option<String>,
    /// Emit the full JSON reports instead of the text table.
    #[arg(long)]
    json: bool,
}

#[derive(Serialize)]
struct Report<T: Serialize> {
    command: String,
    inputs: serde_json::Value,
    verdict: String,
    result: T,
    elapsed_ms: u128,
}

/// Writes a line to stdout, treating a closed pipe as success so that
/// piping into `head` and friends does not abort the process.
fn print_line(line: &str) -> Result<()> {
    use std::io::Write;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{line}") {
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => Ok(other?),
    }
}

fn emit<T: Serialize>(command: &str, inputs: serde_json::Value, verdict: &str, result: T, start: Instant) -> Result<()> {
    let report = Report {
        command: command.to_string(),
        inputs,
        verdict: verdict.to_string(),
        result,
        elapsed_ms: start.elapsed().as_millis(),
    };
    print_line(&serde_json::to_string_pretty(&report)?)
}

/// A certification payload: everything needed to re-verify offline.
#[derive(Serialize, Deserialize)]
struct CertifyPayload {
    quasicode: Quasicode,
    report: CriterionReport,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum InputObject {
    Code(Code),
    Quasicode(Quasicode),
    Payload(CertifyPayload),
}

fn load_input(path: &PathBuf) -> Result<InputObject> {
    let text = std::fs::read_to_string(path)?;
    serde_json::from_str(&text).map_err(|e| Error::Parse(format!("{}: {e}", path.display())))
}

fn quasicode_of(input: InputObject) -> Result<Quasicode> {
    match input {
        InputObject::Code(c) => distance_distribution(&c),
        InputObject::Quasicode(a) => Ok(a),
        InputObject::Payload(p) => Ok(p.quasicode),
    }
}

fn potential_for(spec: &str, n: usize) -> Result<PotentialFunction> {
    make_potential(&parse_potential_spec(spec)?, n)
}

/// Generic certification: try the constructive criteria (directly and
/// through the dual) in a fixed order, then fall back to the programs.
fn certify_generic(a: &Quasicode) -> Result<CriterionReport> {
    let kinds = [
        CriterionKind::OneDesign,
        CriterionKind::ThreeSupport,
        CriterionKind::DesignSpread,
        CriterionKind::DesignCover,
    ];
    for kind in kinds {
        let report = certify(a, kind)?;
        if report.certified() {
            return Ok(report);
        }
    }
    for kind in kinds {
        let report = certify_by_duality(a, kind)?;
        if report.certified() {
            return Ok(report);
        }
    }
    match is_lp_universally_optimal(a)? {
        LpUoOutcome::Certified(certificates) => Ok(CriterionReport {
            criterion: "direct LP".into(),
            applicable: true,
            hypothesis_failures: Vec::new(),
            via_dual: false,
            certificates: Some(certificates),
        }),
        LpUoOutcome::NotOptimal { violated_j, lp_value, energy } => Ok(CriterionReport {
            criterion: "direct LP".into(),
            applicable: true,
            hypothesis_failures: vec![format!(
                "program {violated_j} attains {lp_value}, the input reaches {energy}"
            )],
            via_dual: false,
            certificates: None,
        }),
    }
}

/// Re-checks every embedded certificate without recomputing any program.
fn verify_payload(payload: &CertifyPayload) -> Result<bool> {
    let Some(certs) = &payload.report.certificates else {
        return Ok(false);
    };
    let target = if payload.report.via_dual {
        payload.quasicode.dual()?
    } else {
        payload.quasicode.clone()
    };
    if certs.len() != target.n {
        return Ok(false);
    }
    for (k, cert) in certs.iter().enumerate() {
        let fk = fundamental_potential(k + 1, target.n)?;
        if !verify_certificate(&target, &fk, cert)? {
            return Ok(false);
        }
    }
    Ok(true)
}

fn family_construction(args: &CertifyArgs, base: &str) -> Result<Option<Code>> {
    let ctor = match (base, args.q, args.r, args.n, args.d, args.order) {
        ("hamming", Some(q), Some(r), _, _, _) => Constructor::Hamming { q, r },
        ("simplex", Some(q), Some(r), _, _, _) => Constructor::Simplex { q, r },
        ("reed-solomon", Some(q), _, Some(n), Some(d), _) => Constructor::ReedSolomon { q, n, d },
        ("hadamard", _, _, _, _, Some(order)) => Constructor::Hadamard { order },
        ("nordstrom-robinson", _, _, _, _, _) => Constructor::NordstromRobinson,
        ("golay23", _, _, _, _, _) => Constructor::GolayBinary,
        ("golay24", _, _, _, _, _) => Constructor::GolayBinaryExtended,
        ("golay11", _, _, _, _, _) => Constructor::GolayTernary,
        ("golay12", _, _, _, _, _) => Constructor::GolayTernaryExtended,
        _ => return Ok(None),
    };
    ctor.build().map(Some)
}

fn run_certify(args: &CertifyArgs) -> Result<bool> {
    let start = Instant::now();
    if args.verify_only {
        let path = args.file.as_ref().ok_or_else(|| {
            Error::InvalidParameter("--verify-only needs --file with a report".into())
        })?;
        // accept either a bare payload or a full emitted report (payload
        // under "result")
        let text = std::fs::read_to_string(path)?;
        let value: serde_json::Value = serde_json::from_str(&text)?;
        let payload_value = if value.get("result").and_then(|r| r.get("quasicode")).is_some() {
            value["result"].clone()
        } else {
            value
        };
        let payload: CertifyPayload = serde_json::from_value(payload_value)
            .map_err(|e| Error::Parse(format!("not a certification report: {e}")))?;
        let ok = verify_payload(&payload)?;
        emit(
            "certify --verify-only",
            serde_json::json!({ "file": path.display().to_string() }),
            if ok { "certified" } else { "not-certified" },
            payload,
            start,
        )?;
        return Ok(ok);
    }

    if let Some(name) = &args.catalog {
        // an exact registry name wins; otherwise try a family construction
        if let Some(entry) = catalog::find_entry(name) {
            let row = catalog::certify_table_row(&entry)?;
            let ok = row.certified;
            emit(
                "certify",
                serde_json::json!({ "catalog": name }),
                if ok { "certified" } else { "not-certified" },
                row,
                start,
            )?;
            return Ok(ok);
        }
        if let Some(code) = family_construction(args, name)? {
            let a = distance_distribution(&code)?;
            let report = certify_generic(&a)?;
            let ok = report.certified();
            emit(
                "certify",
                serde_json::json!({ "catalog": name, "q": args.q, "r": args.r, "n": args.n, "d": args.d, "order": args.order }),
                if ok { "certified" } else { "not-certified" },
                CertifyPayload { quasicode: a, report },
                start,
            )?;
            return Ok(ok);
        }
        return Err(Error::InvalidParameter(format!("unknown catalog name {name:?}")));
    }

    let path = args
        .file
        .as_ref()
        .ok_or_else(|| Error::InvalidParameter("certify needs --catalog or --file".into()))?;
    let a = quasicode_of(load_input(path)?)?;
    let report = certify_generic(&a)?;
    let ok = report.certified();
    emit(
        "certify",
        serde_json::json!({ "file": path.display().to_string() }),
        if ok { "certified" } else { "not-certified" },
        CertifyPayload { quasicode: a, report },
        start,
    )?;
    Ok(ok)
}

fn run_table(args: &TableArgs) -> Result<bool> {
    let start = Instant::now();
    let rows: Vec<_> = catalog::catalog()
        .into_iter()
        .filter(|e| args.family.as_deref().map_or(true, |f| e.family.contains(f)))
        .collect();
    if rows.is_empty() {
        return Err(Error::InvalidParameter("no catalog rows match the filter".into()));
    }
    let mut reports = Vec::with_capacity(rows.len());
    let mut all_ok = true;
    for entry in &rows {
        let row = catalog::certify_table_row(entry)?;
        all_ok &= row.certified;
        reports.push(row);
    }
    if args.json {
        emit(
            "table",
            serde_json::json!({ "family": args.family }),
            if all_ok { "certified" } else { "not-certified" },
            &reports,
            start,
        )?;
    } else {
        print_line(&format!(
            "{:<40} {:>2} {:>3} {:>10}  {:<28} {:<28} {:<32} verdict",
            "name", "q", "n", "N", "support", "dual support", "route"
        ))?;
        for r in &reports {
            print_line(&format!(
                "{:<40} {:>2} {:>3} {:>10}  {:<28} {:<28} {:<32} {}",
                r.name,
                r.q,
                r.n,
                r.size,
                format!("{:?}", r.support),
                format!("{:?}", r.dual_support),
                r.route,
                if r.certified { "certified" } else { "FAILED" }
            ))?;
        }
        print_line(&format!(
            "{} rows, {} certified, {:.1}s",
            reports.len(),
            reports.iter().filter(|r| r.certified).count(),
            start.elapsed().as_secs_f64()
        ))?;
    }
    Ok(all_ok)
}

fn run(cli: Cli) -> Result<bool> {
    match &cli.command {
        Command::Certify(args) => run_certify(args),
        Command::Table(args) => run_table(args),
        Command::Search { q, n, size } => {
            let start = Instant::now();
            let result = classify_universal_optima(*q, *n, *size)?;
            let verdict = match result.universal_optima.len() {
                0 => "none".to_string(),
                k => format!("{k} classes"),
            };
            emit(
                "search",
                serde_json::json!({ "q": q, "n": n, "size": size }),
                &verdict,
                result,
                start,
            )?;
            Ok(true)
        }
        Command::Energy { file, potential } => {
            let start = Instant::now();
            let a = quasicode_of(load_input(file)?)?;
            let f = potential_for(potential, a.n)?;
            let value = a.energy(&f)?;
            emit(
                "energy",
                serde_json::json!({ "file": file.display().to_string(), "potential": potential }),
                "ok",
                serde_json::json!({ "energy": rat_to_string(&value) }),
                start,
            )?;
            Ok(true)
        }
        Command::Dual { file } => {
            let start = Instant::now();
            let a = quasicode_of(load_input(file)?)?;
            let dual = a.dual()?;
            emit(
                "dual",
                serde_json::json!({ "file": file.display().to_string() }),
                "ok",
                dual,
                start,
            )?;
            Ok(true)
        }
        Command::Lp { q, n, size, potential } => {
            let start = Instant::now();
            let size = rat_from_str(size)?;
            let f = potential_for(potential, *n)?;
            let (value, optimizer, certificate) = delsarte_min_energy(*q, *n, &size, &f)?;
            emit(
                "lp",
                serde_json::json!({
                    "q": q, "n": n, "size": rat_to_string(&size), "potential": potential
                }),
                "ok",
                serde_json::json!({
                    "value": rat_to_string(&value),
                    "optimizer": optimizer,
                    "certificate": certificate,
                }),
                start,
            )?;
            Ok(true)
        }
        Command::RemoveCheck { name } => {
            let start = Instant::now();
            let entry = catalog::find_entry(name)
                .ok_or_else(|| Error::InvalidParameter(format!("unknown catalog name {name:?}")))?;
            let ctor = entry.constructor.ok_or_else(|| {
                Error::InvalidParameter(format!("{name} is a quasicode-level row; removal checks need codewords"))
            })?;
            let code = ctor.build()?;
            let report = verify_removal_theorem(&code)?;
            let ok = report.verdict;
            emit(
                "remove-check",
                serde_json::json!({ "catalog": name }),
                if ok { "pass" } else { "FAIL" },
                report,
                start,
            )?;
            Ok(ok)
        }
    }
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(2)
        }
    }
}
