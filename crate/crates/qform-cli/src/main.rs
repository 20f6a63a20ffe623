//! `qform` — command-line access to the quadratic-form toolkit.
//!
//! Exit codes: 0 success (and any requested check passed), 1 a check or
//! decision came out negative, 2 usage error, 3 corpus error, 4 arithmetic
//! overflow.

use std::collections::BTreeMap;
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Parser, Subcommand, ValueEnum};
use serde::Serialize;

use qform_core::enumerate::{exception_scan, Enumerator, Witness};
use qform_core::forms::{
    embedded_corpus, gram_from_sextuple, load_corpus, parse_sextuple, FormRecord, GramLattice,
};
use qform_core::isometry::is_isometric;
use qform_core::local::{primitively_represented_over_zp, represented_over_zp};
use qform_core::matrix::Mat;
use qform_core::transform::{lambda2, lambda2_sublattice};
use qform_core::verify::{run_suite, Suite, SuiteConfig, VerificationReport};
use qform_core::{Error, Result};

#[derive(Parser)]
#[command(
    name = "qform",
    version,
    about = "Exact arithmetic for positive-definite integral quadratic forms"
)]
struct Cli {
    /// Output format.
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    format: Format,

    /// Size of the worker thread pool (default: one per core).
    #[arg(long, global = true)]
    workers: Option<usize>,

    /// Corpus JSON-lines file (overrides the embedded corpus; the
    /// QFORM_CORPUS environment variable is used when the flag is absent).
    #[arg(long, global = true)]
    corpus: Option<PathBuf>,

    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Text,
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// List all vectors of a given norm (with primitivity flags).
    Enumerate {
        /// Corpus id like Q34^3, or a raw sextuple like 2,4,6,4,0,2.
        #[arg(long)]
        form: String,
        /// Target norm.
        #[arg(long)]
        n: i64,
        /// Only print primitive vectors.
        #[arg(long)]
        primitive: bool,
    },
    /// Scan for integers with no primitive representation.
    Exceptions {
        #[arg(long)]
        form: String,
        /// Inclusive scan bound.
        #[arg(long)]
        bound: i64,
    },
    /// Compute the index-2 halving transform λ₂ of a form.
    Lambda2 {
        #[arg(long)]
        form: String,
        /// Also check λ₂(form) against this form for isometry
        /// (exit code 1 when not isometric).
        #[arg(long)]
        check_isometric: Option<String>,
    },
    /// Decide whether two forms are isometric (exit code 1 when not).
    Isometric {
        #[arg(long)]
        form: String,
        #[arg(long)]
        form2: String,
    },
    /// Decide p-adic (primitive) representability of n
    /// (exit code 1 when not represented).
    Localrep {
        #[arg(long)]
        form: String,
        #[arg(long)]
        n: i64,
        #[arg(long)]
        p: i64,
        /// Require a primitive local representation.
        #[arg(long)]
        primitive: bool,
    },
    /// Run a verification suite (exit code 1 when any check fails).
    Verify {
        /// One of: watson, lemmas, recipes, tables, all.
        #[arg(long)]
        suite: String,
        /// Override the suite's scan/lemma bound.
        #[arg(long)]
        bound: Option<i64>,
        /// Override the recipe assembly window, as LO:HI.
        #[arg(long)]
        window: Option<String>,
    },
    /// Print the active corpus (or summary statistics with --stats).
    Corpus {
        /// Print summary statistics instead of the records.
        #[arg(long)]
        stats: bool,
    },
}

fn main() -> ExitCode {
    // Die quietly when the read end of a pipe closes (`qform … | head`),
    // like other line-oriented unix tools.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    if let Some(workers) = cli.workers {
        if let Err(e) = rayon::ThreadPoolBuilder::new()
            .num_threads(workers)
            .build_global()
        {
            eprintln!("error: building a {workers}-thread worker pool: {e}");
            return ExitCode::from(2);
        }
    }
    match run(&cli) {
        Ok(all_passed) => {
            if all_passed {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(e) => {
            eprintln!("error: {e}");
            let code = match e {
                Error::Parse(_) | Error::InvalidForm(_) => 2,
                Error::Corpus(_) => 3,
                Error::Overflow(_) => 4,
                Error::CoreNotFound(_) | Error::Recipe(_) => 1,
            };
            ExitCode::from(code)
        }
    }
}

/// Load the active corpus: `--corpus`, else `$QFORM_CORPUS`, else embedded.
fn active_corpus(cli: &Cli) -> Result<Vec<FormRecord>> {
    let path = cli
        .corpus
        .clone()
        .or_else(|| std::env::var_os("QFORM_CORPUS").map(PathBuf::from));
    match path {
        Some(p) => {
            let bytes = std::fs::read(&p)
                .map_err(|e| Error::Corpus(format!("reading {}: {e}", p.display())))?;
            load_corpus(&bytes)
        }
        None => Ok(embedded_corpus().to_vec()),
    }
}

/// Resolve `--form`: a corpus id, or a raw comma/space-separated sextuple.
fn resolve_form(corpus: &[FormRecord], text: &str) -> Result<(String, GramLattice)> {
    if let Some(record) = corpus.iter().find(|r| r.id.to_string() == text) {
        return Ok((text.to_string(), record.lattice()));
    }
    if text.contains(',') || text.trim().contains(' ') {
        let sextuple = parse_sextuple(text)?;
        let label: Vec<String> = sextuple.coefficients().iter().map(i64::to_string).collect();
        return Ok((label.join(","), gram_from_sextuple(sextuple)));
    }
    Err(Error::Corpus(format!(
        "unknown form id {text:?} (and not a sextuple; expected e.g. Q34^3 or 2,4,6,4,0,2)"
    )))
}

fn parse_window(text: &str) -> Result<(i64, i64)> {
    let (lo, hi) = text
        .split_once(':')
        .ok_or_else(|| Error::Parse(format!("window {text:?} is not of the form LO:HI")))?;
    let lo: i64 = lo
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("window start {lo:?}: {e}")))?;
    let hi: i64 = hi
        .trim()
        .parse()
        .map_err(|e| Error::Parse(format!("window end {hi:?}: {e}")))?;
    if lo > hi {
        return Err(Error::Parse(format!("window {text:?} is empty (start > end)")));
    }
    Ok((lo, hi))
}

fn run(cli: &Cli) -> Result<bool> {
    let corpus = active_corpus(cli)?;
    match &cli.command {
        Command::Enumerate { form, n, primitive } => {
            let (name, lattice) = resolve_form(&corpus, form)?;
            let enumerator = Enumerator::new(&lattice)?;
            let mut witnesses = enumerator.vectors_with_norm(*n)?;
            if *primitive {
                witnesses.retain(|w| w.primitive);
            }
            print_enumerate(cli.format, &name, *n, &witnesses);
            Ok(true)
        }
        Command::Exceptions { form, bound } => {
            let (name, lattice) = resolve_form(&corpus, form)?;
            let scan = exception_scan(&lattice, *bound)?;
            print_exceptions(cli.format, &name, scan.bound, &scan.missing);
            Ok(true)
        }
        Command::Lambda2 {
            form,
            check_isometric,
        } => {
            let (name, lattice) = resolve_form(&corpus, form)?;
            let sub = lambda2_sublattice(&lattice)?;
            let index = sub.index_in(&lattice)?;
            let halved = lambda2(&lattice)?;
            let check = match check_isometric {
                Some(other) => {
                    let (other_name, other_lattice) = resolve_form(&corpus, other)?;
                    let witness = is_isometric(&halved, &other_lattice)?;
                    Some(IsometryOutcome {
                        form: name.clone(),
                        form2: other_name,
                        isometric: witness.is_some(),
                        witness,
                    })
                }
                None => None,
            };
            let passed = check.as_ref().map_or(true, |c| c.isometric);
            print_lambda2(cli.format, &name, index, &sub.basis, halved.gram(), check.as_ref());
            Ok(passed)
        }
        Command::Isometric { form, form2 } => {
            let (name, lattice) = resolve_form(&corpus, form)?;
            let (other_name, other_lattice) = resolve_form(&corpus, form2)?;
            let witness = is_isometric(&lattice, &other_lattice)?;
            let outcome = IsometryOutcome {
                form: name,
                form2: other_name,
                isometric: witness.is_some(),
                witness,
            };
            print_isometric(cli.format, &outcome);
            Ok(outcome.isometric)
        }
        Command::Localrep {
            form,
            n,
            p,
            primitive,
        } => {
            let (name, lattice) = resolve_form(&corpus, form)?;
            let represented = if *primitive {
                primitively_represented_over_zp(&lattice, *n, *p)?
            } else {
                represented_over_zp(&lattice, *n, *p)?
            };
            print_localrep(cli.format, &name, *n, *p, *primitive, represented);
            Ok(represented)
        }
        Command::Verify {
            suite,
            bound,
            window,
        } => {
            let suite: Suite = suite.parse()?;
            let config = SuiteConfig {
                bound: *bound,
                window: window.as_deref().map(parse_window).transpose()?,
            };
            let reports = run_suite(suite, &config)?;
            let failed = reports.iter().filter(|r| !r.passed).count();
            print_verify(cli.format, &reports, failed);
            Ok(failed == 0)
        }
        Command::Corpus { stats } => {
            if *stats {
                print_corpus_stats(cli.format, &corpus);
            } else {
                print_corpus(cli.format, &corpus);
            }
            Ok(true)
        }
    }
}

// ---------------------------------------------------------------------------
// Output shapes and renderers
// ---------------------------------------------------------------------------

#[derive(Serialize)]
struct IsometryOutcome {
    form: String,
    form2: String,
    isometric: bool,
    witness: Option<Mat>,
}

fn coords_string(coords: &[i64]) -> String {
    coords
        .iter()
        .map(i64::to_string)
        .collect::<Vec<_>>()
        .join(" ")
}

fn print_enumerate(format: Format, form: &str, n: i64, witnesses: &[Witness]) {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                form: &'a str,
                n: i64,
                count: usize,
                witnesses: &'a [Witness],
            }
            println!(
                "{}",
                serde_json::to_string(&Out {
                    form,
                    n,
                    count: witnesses.len(),
                    witnesses
                })
                .expect("serializable")
            );
        }
        Format::Csv => {
            println!("coords,norm,primitive");
            for w in witnesses {
                println!("{},{},{}", coords_string(&w.coords), w.norm, w.primitive);
            }
        }
        Format::Text => {
            println!("{form}: {} vectors of norm {n}", witnesses.len());
            for w in witnesses {
                println!(
                    "  ({}){}",
                    w.coords
                        .iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(", "),
                    if w.primitive { " primitive" } else { "" }
                );
            }
        }
    }
}

fn print_exceptions(format: Format, form: &str, bound: i64, missing: &[i64]) {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                form: &'a str,
                bound: i64,
                missing: &'a [i64],
            }
            println!(
                "{}",
                serde_json::to_string(&Out {
                    form,
                    bound,
                    missing
                })
                .expect("serializable")
            );
        }
        Format::Csv => {
            println!("n");
            for n in missing {
                println!("{n}");
            }
        }
        Format::Text => {
            let set = missing
                .iter()
                .map(i64::to_string)
                .collect::<Vec<_>>()
                .join(", ");
            println!("{form}: integers ≤ {bound} with no primitive representation: {{{set}}}");
        }
    }
}

fn print_lambda2(
    format: Format,
    form: &str,
    index: i128,
    basis: &Mat,
    gram: &Mat,
    check: Option<&IsometryOutcome>,
) {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                form: &'a str,
                sublattice_index: i128,
                sublattice_basis: &'a Mat,
                lambda2_gram: &'a Mat,
                #[serde(skip_serializing_if = "Option::is_none")]
                check: Option<&'a IsometryOutcome>,
            }
            println!(
                "{}",
                serde_json::to_string(&Out {
                    form,
                    sublattice_index: index,
                    sublattice_basis: basis,
                    lambda2_gram: gram,
                    check
                })
                .expect("serializable")
            );
        }
        Format::Csv => {
            println!("row,entries");
            for (i, row) in gram.iter().enumerate() {
                println!("{i},{}", coords_string(row));
            }
            if let Some(c) = check {
                println!("isometric_to_{},{}", c.form2, c.isometric);
            }
        }
        Format::Text => {
            println!("λ₂({form}) — even-parity sublattice of index {index}, Gram:");
            for row in gram {
                println!("  [{}]", coords_string(row));
            }
            if let Some(c) = check {
                if c.isometric {
                    println!("isometric to {}: yes", c.form2);
                    if let Some(w) = &c.witness {
                        println!("witness rows: {w:?}");
                    }
                } else {
                    println!("isometric to {}: no", c.form2);
                }
            }
        }
    }
}

fn print_isometric(format: Format, outcome: &IsometryOutcome) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string(outcome).expect("serializable"));
        }
        Format::Csv => {
            println!("form,form2,isometric");
            println!("{},{},{}", outcome.form, outcome.form2, outcome.isometric);
        }
        Format::Text => {
            if outcome.isometric {
                println!("{} ≅ {}", outcome.form, outcome.form2);
                if let Some(w) = &outcome.witness {
                    println!("witness rows: {w:?}");
                }
            } else {
                println!("{} and {} are not isometric", outcome.form, outcome.form2);
            }
        }
    }
}

fn print_localrep(format: Format, form: &str, n: i64, p: i64, primitive: bool, represented: bool) {
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out<'a> {
                form: &'a str,
                n: i64,
                p: i64,
                primitive: bool,
                represented: bool,
            }
            println!(
                "{}",
                serde_json::to_string(&Out {
                    form,
                    n,
                    p,
                    primitive,
                    represented
                })
                .expect("serializable")
            );
        }
        Format::Csv => {
            println!("form,n,p,primitive,represented");
            println!("{form},{n},{p},{primitive},{represented}");
        }
        Format::Text => {
            println!(
                "{form} {} {n} over ℤ_{p}: {}",
                if primitive {
                    "primitively represents"
                } else {
                    "represents"
                },
                if represented { "yes" } else { "no" }
            );
        }
    }
}

fn print_verify(format: Format, reports: &[VerificationReport], failed: usize) {
    match format {
        Format::Json => {
            println!("{}", serde_json::to_string(reports).expect("serializable"));
        }
        Format::Csv => {
            println!("check_id,passed,counterexamples,wall_time_ms,params");
            for r in reports {
                println!(
                    "{},{},{},{},{:?}",
                    r.check_id,
                    r.passed,
                    r.counterexamples.len(),
                    r.wall_time_ms,
                    r.params
                );
            }
        }
        Format::Text => {
            for r in reports {
                println!("{}", r.summary_line());
                for c in r.counterexamples.iter().take(10) {
                    println!("  counterexample: {c}");
                }
            }
            println!("{} checks, {failed} failed", reports.len());
        }
    }
}

fn print_corpus_stats(format: Format, corpus: &[FormRecord]) {
    let mut by_status: BTreeMap<String, usize> = BTreeMap::new();
    let mut by_core: BTreeMap<String, usize> = BTreeMap::new();
    let mut universal = 0usize;
    for r in corpus {
        *by_status
            .entry(
                serde_json::to_value(r.status)
                    .expect("serializable")
                    .as_str()
                    .expect("status is a string")
                    .to_string(),
            )
            .or_default() += 1;
        if let Some(core) = r.core_label {
            *by_core
                .entry(
                    serde_json::to_value(core)
                        .expect("serializable")
                        .as_str()
                        .expect("core label is a string")
                        .to_string(),
                )
                .or_default() += 1;
        }
        if r.status.is_primitively_universal() {
            universal += 1;
        }
    }
    let total = corpus.len();
    let almost = total - universal;
    match format {
        Format::Json => {
            #[derive(Serialize)]
            struct Out {
                total: usize,
                primitively_universal: usize,
                almost_universal: usize,
                by_status: BTreeMap<String, usize>,
                by_core: BTreeMap<String, usize>,
            }
            println!(
                "{}",
                serde_json::to_string(&Out {
                    total,
                    primitively_universal: universal,
                    almost_universal: almost,
                    by_status,
                    by_core
                })
                .expect("serializable")
            );
        }
        Format::Csv => {
            println!("key,count");
            println!("total,{total}");
            println!("primitively_universal,{universal}");
            println!("almost_universal,{almost}");
            for (k, v) in &by_status {
                println!("status:{k},{v}");
            }
            for (k, v) in &by_core {
                println!("core:{k},{v}");
            }
        }
        Format::Text => {
            println!("{total} forms: {universal} primitively universal, {almost} almost universal");
            println!("by status:");
            for (k, v) in &by_status {
                println!("  {k}: {v}");
            }
            println!("by core:");
            for (k, v) in &by_core {
                println!("  {k}: {v}");
            }
        }
    }
}

fn print_corpus(format: Format, corpus: &[FormRecord]) {
    #[derive(Serialize)]
    struct Row<'a> {
        id: String,
        sextuple: [i64; 6],
        status: qform_core::Status,
        core: Option<qform_core::CoreLabel>,
        exceptions: &'a [i64],
    }
    let rows: Vec<Row> = corpus
        .iter()
        .map(|r| Row {
            id: r.id.to_string(),
            sextuple: r.sextuple.coefficients(),
            status: r.status,
            core: r.core_label,
            exceptions: &r.exception_set,
        })
        .collect();
    match format {
        Format::Json => {
            for row in &rows {
                println!("{}", serde_json::to_string(row).expect("serializable"));
            }
        }
        Format::Csv => {
            println!("id,sextuple,status,core,exceptions");
            for row in &rows {
                println!(
                    "{},{},{},{},{}",
                    row.id,
                    row.sextuple
                        .iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                    serde_json::to_value(row.status)
                        .expect("serializable")
                        .as_str()
                        .unwrap_or_default(),
                    row.core
                        .map(|c| serde_json::to_value(c)
                            .expect("serializable")
                            .as_str()
                            .unwrap_or_default()
                            .to_string())
                        .unwrap_or_default(),
                    row.exceptions
                        .iter()
                        .map(i64::to_string)
                        .collect::<Vec<_>>()
                        .join(" "),
                );
            }
        }
        Format::Text => {
            for row in &rows {
                let core = row
                    .core
                    .map(|c| {
                        serde_json::to_value(c)
                            .expect("serializable")
                            .as_str()
                            .unwrap_or_default()
                            .to_string()
                    })
                    .unwrap_or_else(|| "-".to_string());
                let status = serde_json::to_value(row.status)
                    .expect("serializable")
                    .as_str()
                    .unwrap_or_default()
                    .to_string();
                println!(
                    "{:8} {:?} status={status} core={core} exceptions={:?}",
                    row.id, row.sextuple, row.exceptions
                );
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use clap::CommandFactory;

    #[test]
    fn arg_parser_is_well_formed() {
        Cli::command().debug_assert();
    }

    #[test]
    fn windows_parse_and_reject_nonsense() {
        assert_eq!(parse_window("100:200").unwrap(), (100, 200));
        assert_eq!(parse_window(" 7 : 7 ").unwrap(), (7, 7));
        assert!(matches!(parse_window("100"), Err(Error::Parse(_))));
        assert!(matches!(parse_window("9:3"), Err(Error::Parse(_))));
        assert!(matches!(parse_window("a:b"), Err(Error::Parse(_))));
    }

    #[test]
    fn forms_resolve_by_id_or_raw_sextuple() {
        let corpus = embedded_corpus().to_vec();
        let (name, lattice) = resolve_form(&corpus, "Q80^1").unwrap();
        assert_eq!(name, "Q80^1");
        assert_eq!(lattice.discriminant(), 80);

        let (name, lattice) = resolve_form(&corpus, "1,1,1,0,0,0").unwrap();
        assert_eq!(name, "1,1,1,0,0,0");
        assert_eq!(lattice.discriminant(), 1);

        assert!(matches!(
            resolve_form(&corpus, "Q999^9"),
            Err(Error::Corpus(_))
        ));
    }
}
