//! Command-line front end for the spectra library.
//!
//! Subcommands: `validate` a system document, `report` the five spectra with
//! their supporting evidence, `verify` the structure identities, print a
//! bundled `example` document, and sweep a reproducible `fuzz` corpus.
//!
//! Exit codes: 0 every check passed, 1 an identity was contradicted, 2 the
//! numerics stayed ambiguous after retries, 3 the input could not be parsed
//! or analyzed.

use std::path::{Path, PathBuf};
use std::time::Instant;

use clap::{Parser, Subcommand};
use serde_json::json;
use spectra_core::{
    arveson_spectra, builtin, connes_oracle, connes_spectra, generate, invariant_structure,
    verify_with_retries, CornerCoverage, DynamicalSystem, Error, FuzzBounds, SystemDocument,
    TheoremSelection, Verdict, BUILTIN_NAMES,
};

const EXIT_PASS: i32 = 0;
const EXIT_CONTRADICTED: i32 = 1;
const EXIT_AMBIGUOUS: i32 = 2;
const EXIT_INPUT: i32 = 3;

/// Retry budget for verification runs started from the command line.
const VERIFY_ATTEMPTS: u64 = 3;
/// Corner-enumeration budget for the oracle cross-check in reports.
const ORACLE_BUDGET: usize = 64;
/// Corners sampled per ideal pair when the budget is exceeded.
const ORACLE_SAMPLES: usize = 24;

#[derive(Debug, Parser)]
#[command(
    name = "spectra-lab",
    about = "Spectral invariants of finite-group actions on finite-dimensional C*-algebras",
    version
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Parse a system document and check that it builds.
    Validate {
        /// Path to a system document (JSON).
        file: PathBuf,
    },
    /// Compute spectra and structural invariants of a system.
    Report {
        /// Path to a system document (JSON).
        file: PathBuf,
        /// Emit the report as JSON instead of text.
        #[arg(long)]
        json: bool,
    },
    /// Check the structure identities on a system.
    Verify {
        /// Path to a system document (JSON).
        file: PathBuf,
        /// Which family of identities to check: 3.6, 4.3, or all.
        #[arg(long, default_value = "all")]
        theorem: String,
    },
    /// Print one of the bundled example systems.
    Example {
        /// Example name; an unknown name lists the available ones.
        name: String,
        /// Print the raw document JSON instead of a summary.
        #[arg(long)]
        json: bool,
    },
    /// Generate a reproducible corpus of random systems and verify each one.
    Fuzz {
        /// Master seed; the same seed reproduces the same corpus.
        #[arg(long)]
        seed: u64,
        /// Number of systems to generate.
        #[arg(long)]
        count: usize,
        /// Largest group order to draw.
        #[arg(long, default_value_t = 8)]
        max_group: usize,
        /// Largest ambient dimension to draw.
        #[arg(long, default_value_t = 6)]
        max_ambient: usize,
        /// Stop at the first system that does not pass.
        #[arg(long)]
        fail_fast: bool,
    },
}

fn main() {
    // Die quietly on a closed pipe instead of panicking when output is fed
    // to `head` or `less`.
    #[cfg(unix)]
    unsafe {
        libc::signal(libc::SIGPIPE, libc::SIG_DFL);
    }
    let cli = Cli::parse();
    let code = match cli.command {
        Command::Validate { file } => cmd_validate(&file),
        Command::Report { file, json } => cmd_report(&file, json),
        Command::Verify { file, theorem } => cmd_verify(&file, &theorem),
        Command::Example { name, json } => cmd_example(&name, json),
        Command::Fuzz {
            seed,
            count,
            max_group,
            max_ambient,
            fail_fast,
        } => cmd_fuzz(seed, count, max_group, max_ambient, fail_fast),
    };
    std::process::exit(code);
}

/// Read and parse a document, then build the dynamical system it describes.
/// Failures are printed and mapped to the input-error exit code.
fn load_system(path: &Path) -> Result<(SystemDocument, DynamicalSystem), i32> {
    let text = std::fs::read_to_string(path).map_err(|e| {
        eprintln!("error: cannot read {}: {e}", path.display());
        EXIT_INPUT
    })?;
    let doc = SystemDocument::from_json(&text).map_err(|e| {
        eprintln!("error: {e}");
        EXIT_INPUT
    })?;
    let sys = doc.build().map_err(|e| {
        eprintln!("error: {e}");
        EXIT_INPUT
    })?;
    Ok((doc, sys))
}

/// Exit code for an analysis failure: gray-zone errors are ambiguity, the
/// rest indicate an input that cannot be analyzed.
fn analysis_exit(e: &Error) -> i32 {
    if e.is_ambiguity() {
        EXIT_AMBIGUOUS
    } else {
        EXIT_INPUT
    }
}

fn exit_for(verdict: Verdict) -> i32 {
    match verdict {
        Verdict::Holds => EXIT_PASS,
        Verdict::Ambiguous => EXIT_AMBIGUOUS,
        Verdict::Contradicted => EXIT_CONTRADICTED,
    }
}

fn describe(doc: &SystemDocument, sys: &DynamicalSystem) -> String {
    let name = doc.name.as_deref().unwrap_or("unnamed system");
    format!(
        "{name}: group order {}, algebra blocks {:?} in ambient {}, {} irreps",
        sys.table().group.order(),
        sys.algebra().block_dims(),
        sys.algebra().ambient(),
        sys.table().irreps.len()
    )
}

fn cmd_validate(file: &Path) -> i32 {
    match load_system(file) {
        Ok((doc, sys)) => {
            println!("ok: {}", describe(&doc, &sys));
            EXIT_PASS
        }
        Err(code) => code,
    }
}

fn cmd_report(file: &Path, as_json: bool) -> i32 {
    let (doc, sys) = match load_system(file) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    let started = Instant::now();
    let analysis = (|| {
        let arveson = arveson_spectra(&sys)?;
        let connes = connes_spectra(&sys, &arveson)?;
        let oracle = connes_oracle(&sys, ORACLE_BUDGET, ORACLE_SAMPLES)?;
        let structure = invariant_structure(&sys)?;
        Ok((arveson, connes, oracle, structure))
    })();
    let (arveson, connes, oracle, structure) = match analysis {
        Ok(data) => data,
        Err(e) => {
            eprintln!("error: {e}");
            return analysis_exit(&e);
        }
    };
    let elapsed = started.elapsed();

    if as_json {
        let value = json!({
            "name": doc.name,
            "description": doc.description,
            "group": {
                "order": sys.table().group.order(),
                "irreps": sys.table().labels(),
            },
            "algebra": {
                "ambient": sys.algebra().ambient(),
                "blocks": sys.algebra().block_dims(),
                "dim": sys.algebra().dim(),
            },
            "fixed_algebra": {
                "blocks": sys.fixed().block_dims(),
                "dim": sys.fixed().dim(),
            },
            "spectra": {
                "spectrum": &arveson.spectrum,
                "essential": &arveson.essential,
                "saturated": &arveson.saturated,
                "connes": &connes.connes,
                "saturated_connes": &connes.saturated_connes,
            },
            "per_irrep": &arveson.per_irrep,
            "reduction_corners": connes.corners_visited,
            "oracle": &oracle,
            "invariant": &structure,
        });
        match serde_json::to_string_pretty(&value) {
            Ok(text) => println!("{text}"),
            Err(e) => {
                eprintln!("error: cannot serialize report: {e}");
                return EXIT_INPUT;
            }
        }
        return EXIT_PASS;
    }

    println!("{}", describe(&doc, &sys));
    if let Some(text) = &doc.description {
        println!("  {text}");
    }
    println!(
        "fixed-point algebra: blocks {:?}, dim {}",
        sys.fixed().block_dims(),
        sys.fixed().dim()
    );
    println!(
        "invariant ideals: {}; alpha-simple: {}; alpha-prime: {}",
        structure.invariant_ideal_count,
        yes_no(structure.alpha_simple),
        yes_no(structure.alpha_prime)
    );
    println!();
    println!("{:<16}= {}", "sp(alpha)", arveson.spectrum);
    println!("{:<16}= {}", "sp_F(alpha)", arveson.essential);
    println!("{:<16}= {}", "sp~_F(alpha)", arveson.saturated);
    println!("{:<16}= {}", "Gamma_F(alpha)", connes.connes);
    println!("{:<16}= {}", "Gamma~_F(alpha)", connes.saturated_connes);
    println!();
    println!("per-irrep evidence (dims of the isotypic and equivariant spaces,");
    println!("block structure of the fixed-corner algebra, membership flags):");
    for data in &arveson.per_irrep {
        println!(
            "  {:<8} isotypic {:<3} equivariant {:<3} fixed-corner {:<12} in sp: {:<3} essential: {:<3} saturated: {}",
            data.label,
            data.isotypic_dim,
            data.equivariant_dim,
            format!("{:?}", data.fixed_block_dims),
            yes_no(data.in_spectrum),
            yes_no(data.essential),
            yes_no(data.saturated)
        );
    }
    println!();
    let coverage = match oracle.coverage {
        CornerCoverage::Exhaustive => "exhaustive".to_string(),
        CornerCoverage::Sampled(n) => format!("sampled {n} corners"),
    };
    println!(
        "ideal-reduction route visited {} corners; oracle ({coverage}, {} corners) cross-check:",
        connes.corners_visited, oracle.corners_visited
    );
    println!("  oracle Gamma_F         = {}", oracle.connes);
    println!("  oracle Gamma~_F        = {}", oracle.saturated_connes);
    println!("  oracle sp intersection = {}", oracle.plain_intersection);
    let agree = oracle.connes == connes.connes && oracle.saturated_connes == connes.saturated_connes;
    println!(
        "  routes {} ({} ms)",
        if agree { "agree" } else { "DISAGREE" },
        elapsed.as_millis()
    );
    EXIT_PASS
}

fn cmd_verify(file: &Path, theorem: &str) -> i32 {
    let selection = match theorem {
        "3.6" => TheoremSelection::Simplicity,
        "4.3" => TheoremSelection::Primeness,
        "all" => TheoremSelection::All,
        other => {
            eprintln!("error: unknown theorem selector {other:?}; use 3.6, 4.3, or all");
            return EXIT_INPUT;
        }
    };
    let (_, sys) = match load_system(file) {
        Ok(pair) => pair,
        Err(code) => return code,
    };
    let started = Instant::now();
    let report = match verify_with_retries(&sys, selection, VERIFY_ATTEMPTS) {
        Ok(report) => report,
        Err(e) => {
            eprintln!("error: {e}");
            return analysis_exit(&e);
        }
    };
    for check in &report.checks {
        if check.verdict == Verdict::Holds {
            println!("{:<13} {}", format!("{}", check.verdict), check.name);
        } else {
            println!(
                "{:<13} {}  {}",
                format!("{}", check.verdict),
                check.name,
                check.detail
            );
        }
    }
    println!(
        "verdict: {} ({} checks, {} attempt{}, {} ms)",
        report.verdict,
        report.checks.len(),
        report.attempts,
        if report.attempts == 1 { "" } else { "s" },
        started.elapsed().as_millis()
    );
    exit_for(report.verdict)
}

fn cmd_example(name: &str, as_json: bool) -> i32 {
    let doc = match builtin(name) {
        Ok(doc) => doc,
        Err(_) => {
            eprintln!(
                "error: unknown example {name:?}; available: {}",
                BUILTIN_NAMES.join(", ")
            );
            return EXIT_INPUT;
        }
    };
    if as_json {
        println!("{}", doc.to_json_pretty());
        return EXIT_PASS;
    }
    let sys = match doc.build() {
        Ok(sys) => sys,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    println!("{}", describe(&doc, &sys));
    if let Some(text) = &doc.description {
        println!("  {text}");
    }
    println!("  irrep labels: {}", sys.table().labels().join(", "));
    println!("  rerun with --json to print the document itself");
    EXIT_PASS
}

fn cmd_fuzz(seed: u64, count: usize, max_group: usize, max_ambient: usize, fail_fast: bool) -> i32 {
    let bounds = FuzzBounds {
        max_group,
        max_ambient,
    };
    let cases = match generate(seed, count, &bounds) {
        Ok(cases) => cases,
        Err(e) => {
            eprintln!("error: {e}");
            return EXIT_INPUT;
        }
    };
    let started = Instant::now();
    let mut passed = 0usize;
    let mut ambiguous = 0usize;
    let mut contradicted = 0usize;
    for case in &cases {
        let sys = match case.document.build() {
            Ok(sys) => sys,
            Err(e) => {
                eprintln!("error: {} does not build: {e}", case.name);
                return EXIT_INPUT;
            }
        };
        let report = match verify_with_retries(&sys, TheoremSelection::All, VERIFY_ATTEMPTS) {
            Ok(report) => report,
            Err(e) => {
                eprintln!("error: {}: {e}", case.name);
                return analysis_exit(&e);
            }
        };
        match report.verdict {
            Verdict::Holds => {
                passed += 1;
                println!("pass          {} ({} checks)", case.name, report.checks.len());
            }
            other => {
                if other == Verdict::Contradicted {
                    contradicted += 1;
                } else {
                    ambiguous += 1;
                }
                println!("{:<13} {}", format!("{other}"), case.name);
                for check in report.checks.iter().filter(|c| c.verdict != Verdict::Holds) {
                    println!("    {} {}: {}", check.verdict, check.name, check.detail);
                }
                if fail_fast {
                    break;
                }
            }
        }
    }
    println!(
        "checked {} of {} systems in {:.1}s: {passed} pass, {ambiguous} ambiguous, {contradicted} contradicted",
        passed + ambiguous + contradicted,
        cases.len(),
        started.elapsed().as_secs_f64()
    );
    if contradicted > 0 {
        EXIT_CONTRADICTED
    } else if ambiguous > 0 {
        EXIT_AMBIGUOUS
    } else {
        EXIT_PASS
    }
}

fn yes_no(flag: bool) -> &'static str {
    if flag {
        "yes"
    } else {
        "no"
    }
}
