//! Acceptance battery: seven end-to-end criteria covering the bundled
//! examples and a 205-system reproducible corpus (5 builtins plus 200 fuzzed
//! systems from seed 42). Each criterion prints one `[PASS]`/`[FAIL]` line.

use std::sync::OnceLock;
use std::time::{Duration, Instant};

use spectra_core::verify::{
    ABELIAN_PLAIN_INTERSECTION, AVERAGING_PROJECTIONS_ORTHOGONAL, AVERAGING_RESOLVES_IDENTITY,
    COEFFICIENT_RECONSTRUCTION, COMPRESSION_RECOVERS_IDEALS, CONNES_DEGENERATION,
    CORNER_ROUTES_AGREE, EQUIVARIANT_MEMBERSHIP, EQUIVARIANT_PRODUCTS_IDEAL,
    ESSENTIAL_INHERITS_PRIMENESS, INVARIANT_DEGENERATION, ISOTYPIC_PARTITION,
    PRIMENESS_CHARACTERIZATION, SATURATED_INHERITS_SIMPLICITY, SIMPLICITY_CHARACTERIZATION,
    SPECTRA_NEST, TRIVIAL_SATURATED,
};
use spectra_core::{
    arveson_spectra, builtin, conjugate, connes_oracle, connes_spectra, generate,
    irrep_artifacts, nullspace_within, preset_group, validate_irrep_table, verify,
    verify_with_retries, ArvesonData, ConnesData, CornerCoverage, DynamicalSystem, FuzzBounds,
    IrrepArtifacts, Mat, MatrixSubspace, OracleData, SubspaceOrder, SystemDocument,
    TheoremSelection, Tolerances, Verdict, VerificationReport, BUILTIN_NAMES, C64, PRESET_NAMES,
};

const CORPUS_SEED: u64 = 42;
const CORPUS_SIZE: usize = 200;
const RETRY_ATTEMPTS: u64 = 3;
const ORACLE_BUDGET: usize = 64;
const ORACLE_SAMPLES: usize = 24;

/// Everything the criteria need about one corpus system, computed once.
struct Entry {
    name: String,
    sys: DynamicalSystem,
    report: VerificationReport,
    arveson: ArvesonData,
    connes: ConnesData,
    oracle: OracleData,
    arts: Vec<IrrepArtifacts>,
}

struct Corpus {
    entries: Vec<Entry>,
    elapsed: Duration,
}

static CORPUS: OnceLock<Corpus> = OnceLock::new();

fn corpus() -> &'static Corpus {
    CORPUS.get_or_init(|| {
        let mut docs: Vec<(String, SystemDocument)> = BUILTIN_NAMES
            .iter()
            .map(|n| (n.to_string(), builtin(n).expect("builtin parses")))
            .collect();
        let cases = generate(CORPUS_SEED, CORPUS_SIZE, &FuzzBounds::default())
            .expect("corpus generates");
        docs.extend(cases.into_iter().map(|c| (c.name, c.document)));
        let started = Instant::now();
        let entries = docs
            .into_iter()
            .map(|(name, doc)| {
                let fail = |what: &str, e: &dyn std::fmt::Display| -> ! {
                    panic!("{name}: {what}: {e}")
                };
                let sys = doc.build().unwrap_or_else(|e| fail("build", &e));
                let report = verify_with_retries(&sys, TheoremSelection::All, RETRY_ATTEMPTS)
                    .unwrap_or_else(|e| fail("verify", &e));
                let arveson = arveson_spectra(&sys).unwrap_or_else(|e| fail("spectra", &e));
                let connes =
                    connes_spectra(&sys, &arveson).unwrap_or_else(|e| fail("reduction", &e));
                let oracle = connes_oracle(&sys, ORACLE_BUDGET, ORACLE_SAMPLES)
                    .unwrap_or_else(|e| fail("oracle", &e));
                let arts = sys
                    .table_arc()
                    .irreps
                    .iter()
                    .map(|pi| {
                        irrep_artifacts(&sys, pi).unwrap_or_else(|e| fail("artifacts", &e))
                    })
                    .collect();
                Entry {
                    name,
                    sys,
                    report,
                    arveson,
                    connes,
                    oracle,
                    arts,
                }
            })
            .collect();
        Corpus {
            entries,
            elapsed: started.elapsed(),
        }
    })
}

/// Run one criterion body and print its single pass/fail line.
fn run_criterion(index: usize, name: &str, body: impl FnOnce() -> Result<String, String>) {
    match body() {
        Ok(detail) => println!("[PASS] acceptance-{index} {name}: {detail}"),
        Err(msg) => {
            println!("[FAIL] acceptance-{index} {name}: {msg}");
            panic!("acceptance-{index} {name}: {msg}");
        }
    }
}

macro_rules! ensure {
    ($cond:expr, $($arg:tt)+) => {
        if !($cond) {
            return Err(format!($($arg)+));
        }
    };
}

fn ok<T>(result: spectra_core::Result<T>, what: &str) -> Result<T, String> {
    result.map_err(|e| format!("{what}: {e}"))
}

/// Confirm a named check is present in a report and holds.
fn check_holds(entry: &Entry, check: &str) -> Result<(), String> {
    let found = entry
        .report
        .checks
        .iter()
        .find(|c| c.name == check)
        .ok_or_else(|| format!("{}: check {check} missing from the report", entry.name))?;
    if found.verdict == Verdict::Holds {
        Ok(())
    } else {
        Err(format!(
            "{}: check {check} is {}: {}",
            entry.name, found.verdict, found.detail
        ))
    }
}

#[test]
fn criterion_1_irreducible_example_full_spectrum_and_collapsed_connes() {
    run_criterion(1, "irreducible-example-report", || {
        let started = Instant::now();
        let sys = ok(
            builtin("s3-m2").and_then(|doc| doc.build()),
            "s3-m2 builds",
        )?;
        let tol = sys.tol();
        let defaults = Tolerances::default();
        ensure!(
            tol.rank_low == defaults.rank_low
                && tol.rank_high == defaults.rank_high
                && tol.membership == defaults.membership
                && tol.eig_gap == defaults.eig_gap,
            "the example must run at default tolerances"
        );

        let arveson = ok(arveson_spectra(&sys), "spectra")?;
        let labels = sys.table().labels();
        ensure!(
            arveson.spectrum.len() == labels.len()
                && labels.iter().all(|l| arveson.spectrum.contains(l)),
            "spectrum {} must contain every irrep of {labels:?}",
            arveson.spectrum
        );

        let table = sys.table_arc();
        let std_pi = table
            .by_label("std")
            .ok_or("the two-dimensional irrep is labeled std")?;
        let arts = ok(irrep_artifacts(&sys, std_pi), "artifacts at std")?;
        ensure!(
            arts.fixed.center().dim() == 3,
            "fixed corner at std has center dimension {}, expected 3",
            arts.fixed.center().dim()
        );
        ensure!(
            arts.fixed.num_blocks() == 3,
            "fixed corner at std splits into {} blocks, expected 3",
            arts.fixed.num_blocks()
        );
        let class = ok(arts.fixed.classify(tol), "classify fixed corner")?;
        ensure!(!class.prime, "fixed corner at std must not be prime");

        let connes = ok(connes_spectra(&sys, &arveson), "reduction")?;
        ensure!(
            connes.connes.len() == 2
                && connes.connes.contains("triv")
                && connes.connes.contains("sgn"),
            "Connes spectrum is {}, expected {{sgn, triv}}",
            connes.connes
        );
        ensure!(
            connes.connes == connes.saturated_connes,
            "saturated variant {} differs from {}",
            connes.saturated_connes,
            connes.connes
        );
        ensure!(
            connes.connes != arveson.spectrum,
            "Connes spectrum must be strictly smaller than the full spectrum"
        );

        let oracle = ok(connes_oracle(&sys, ORACLE_BUDGET, ORACLE_SAMPLES), "oracle")?;
        ensure!(
            oracle.coverage == CornerCoverage::Exhaustive,
            "oracle must enumerate every corner"
        );
        ensure!(
            oracle.connes == connes.connes && oracle.saturated_connes == connes.saturated_connes,
            "oracle sets ({}, {}) disagree with the reduction route",
            oracle.connes,
            oracle.saturated_connes
        );

        // Every rank decision above resolved cleanly, and a full verification
        // holds without a retry.
        let report = ok(verify(&sys, TheoremSelection::All), "verification")?;
        ensure!(
            report.verdict == Verdict::Holds,
            "verification verdict is {}",
            report.verdict
        );

        let elapsed = started.elapsed();
        ensure!(elapsed < Duration::from_secs(1), "took {elapsed:?}, budget 1s");
        Ok(format!(
            "sp = {}, Gamma_F = {}, fixed corner blocks {:?} (not prime), {} ms",
            arveson.spectrum,
            connes.connes,
            arts.fixed.block_dims(),
            elapsed.as_millis()
        ))
    });
}

#[test]
fn criterion_2_structure_identities_hold_across_corpus() {
    run_criterion(2, "structure-identities-across-corpus", || {
        let defaults = Tolerances::default();
        ensure!(
            defaults.rank_low == 1e-9
                && defaults.rank_high == 1e-6
                && defaults.membership == 1e-8
                && defaults.eig_gap == 1e-6,
            "default tolerances drifted from their pinned values"
        );

        let corpus = corpus();
        ensure!(
            corpus.entries.len() == BUILTIN_NAMES.len() + CORPUS_SIZE,
            "corpus holds {} systems, expected {}",
            corpus.entries.len(),
            BUILTIN_NAMES.len() + CORPUS_SIZE
        );

        for entry in &corpus.entries {
            ensure!(
                entry.report.verdict != Verdict::Contradicted,
                "{}: an identity was contradicted: {:?}",
                entry.name,
                entry
                    .report
                    .checks
                    .iter()
                    .find(|c| c.verdict == Verdict::Contradicted)
                    .map(|c| format!("{}: {}", c.name, c.detail))
            );
            ensure!(
                entry.report.verdict == Verdict::Holds,
                "{}: still ambiguous after {} attempts",
                entry.name,
                entry.report.attempts
            );
            for check in [
                SATURATED_INHERITS_SIMPLICITY,
                SIMPLICITY_CHARACTERIZATION,
                ESSENTIAL_INHERITS_PRIMENESS,
                PRIMENESS_CHARACTERIZATION,
            ] {
                check_holds(entry, check)?;
            }
        }

        let retried = corpus
            .entries
            .iter()
            .filter(|e| e.report.attempts > 1)
            .count();
        let rate = retried as f64 / corpus.entries.len() as f64;
        ensure!(
            rate < 0.02,
            "{retried} of {} systems needed a retry ({:.1}%), budget 2%",
            corpus.entries.len(),
            100.0 * rate
        );
        ensure!(
            corpus.elapsed < Duration::from_secs(60),
            "corpus analysis took {:?}, budget 60s",
            corpus.elapsed
        );
        Ok(format!(
            "{} systems, 0 contradicted, {retried} retried ({:.1}%), {:.1}s",
            corpus.entries.len(),
            100.0 * rate,
            corpus.elapsed.as_secs_f64()
        ))
    });
}

#[test]
fn criterion_3_corner_reduction_matches_oracle_everywhere() {
    run_criterion(3, "reduction-matches-oracle", || {
        let corpus = corpus();
        for entry in &corpus.entries {
            ensure!(
                entry.oracle.coverage == CornerCoverage::Exhaustive,
                "{}: oracle sampled instead of enumerating",
                entry.name
            );
            ensure!(
                entry.oracle.connes == entry.connes.connes,
                "{}: reduction {} vs oracle {}",
                entry.name,
                entry.connes.connes,
                entry.oracle.connes
            );
            ensure!(
                entry.oracle.saturated_connes == entry.connes.saturated_connes,
                "{}: saturated reduction {} vs oracle {}",
                entry.name,
                entry.connes.saturated_connes,
                entry.oracle.saturated_connes
            );
            check_holds(entry, CORNER_ROUTES_AGREE)?;
        }
        let corners: usize = corpus.entries.iter().map(|e| e.oracle.corners_visited).sum();
        Ok(format!(
            "{} systems, exact set equality over {corners} exhaustively enumerated corners",
            corpus.entries.len()
        ))
    });
}

#[test]
fn criterion_4_spectral_calculus_identities() {
    run_criterion(4, "spectral-calculus", || {
        let corpus = corpus();
        let mut traced = 0usize;
        for entry in &corpus.entries {
            for check in [
                AVERAGING_RESOLVES_IDENTITY,
                AVERAGING_PROJECTIONS_ORTHOGONAL,
                ISOTYPIC_PARTITION,
                EQUIVARIANT_MEMBERSHIP,
                COEFFICIENT_RECONSTRUCTION,
                EQUIVARIANT_PRODUCTS_IDEAL,
            ] {
                check_holds(entry, check)?;
            }
            let n = entry.sys.algebra().ambient();
            let membership = entry.sys.tol().membership;
            for art in &entry.arts {
                ensure!(
                    art.isotypic.dim() == art.equivariant.dim(),
                    "{}: irrep {} has isotypic dim {} but equivariant dim {}",
                    entry.name,
                    art.data.label,
                    art.isotypic.dim(),
                    art.equivariant.dim()
                );
                if art.equivariant.dim() == 0 {
                    continue;
                }
                let d = art.equivariant.rows() / n;
                for b in art.equivariant.basis() {
                    let pt = b.partial_trace_left(d);
                    let off = (&pt - &art.isotypic.project(&pt)).hs_norm()
                        / f64::max(1.0, b.hs_norm());
                    ensure!(
                        off <= membership,
                        "{}: partial trace of an equivariant basis element leaves the \
                         isotypic space of {} by {off:.3e}",
                        entry.name,
                        art.data.label
                    );
                    traced += 1;
                }
            }
        }
        Ok(format!(
            "{} systems: averaging, reconstruction, and dimension identities hold; \
             {traced} partial traces stayed isotypic",
            corpus.entries.len()
        ))
    });
}

#[test]
fn criterion_5_compression_recovers_every_generated_ideal() {
    run_criterion(5, "compression-recovers-ideals", || {
        let corpus = corpus();
        let mut swept = 0usize;
        for entry in &corpus.entries {
            check_holds(entry, COMPRESSION_RECOVERS_IDEALS)?;

            // The named check caps very large lattices; sweep the full
            // lattice here so every nonzero invariant ideal is covered.
            let sys = &entry.sys;
            let tol = sys.tol();
            let n = sys.algebra().ambient();
            let lattice = ok(sys.fixed().ideal_lattice(tol), "ideal lattice")?;
            let mut ops: Vec<Box<dyn Fn(&Mat) -> Mat>> = Vec::new();
            for g in sys.table().group.elements() {
                let u = sys.unitary(g).clone();
                ops.push(Box::new(move |x: &Mat| &conjugate(&u, x) - x));
            }
            let op_refs: Vec<&dyn Fn(&Mat) -> Mat> = ops.iter().map(|b| b.as_ref()).collect();
            for ideal in &lattice {
                let generated = ok(
                    sys.algebra().ideal_generated_by(&ideal.support, tol),
                    "generated ideal",
                )?;
                let generated_fixed = ok(
                    nullspace_within(
                        &op_refs,
                        generated.span.basis(),
                        tol,
                        "fixed part of a generated ideal",
                    ),
                    "fixed part",
                )?;
                let mut collected = Vec::new();
                for art in entry.arts.iter().filter(|a| a.equivariant.dim() > 0) {
                    let d = art.equivariant.rows() / n;
                    let eye = Mat::identity(d);
                    for a in art.equivariant.basis() {
                        for b in art.equivariant.basis() {
                            for j in ideal.span.basis() {
                                let m = &(a * &eye.kron(j)) * &b.adjoint();
                                collected.push(m.partial_trace_left(d));
                            }
                        }
                    }
                }
                let span = ok(
                    MatrixSubspace::span(n, n, &collected, tol, "compression span"),
                    "compression span",
                )?;
                let order = ok(span.compare(&generated_fixed, tol), "span comparison")?;
                ensure!(
                    order == SubspaceOrder::Equal,
                    "{}: ideal selecting {:?} compresses to dimension {} ({order:?}), \
                     fixed part of the generated ideal has dimension {}",
                    entry.name,
                    ideal.selector,
                    span.dim(),
                    generated_fixed.dim()
                );
                swept += 1;
            }
        }
        Ok(format!(
            "{} systems, {swept} nonzero invariant ideals recovered from compressions",
            corpus.entries.len()
        ))
    });
}

#[test]
fn criterion_6_connes_degeneration_and_spectral_chain() {
    run_criterion(6, "connes-degeneration-and-chain", || {
        let corpus = corpus();
        let mut abelian = 0usize;
        for entry in &corpus.entries {
            ensure!(
                entry.connes.connes == entry.connes.saturated_connes,
                "{}: Gamma_F {} differs from Gamma~_F {}",
                entry.name,
                entry.connes.connes,
                entry.connes.saturated_connes
            );
            ensure!(
                entry.connes.saturated_connes.is_subset(&entry.connes.connes)
                    && entry.connes.connes.is_subset(&entry.arveson.essential)
                    && entry.arveson.essential.is_subset(&entry.arveson.spectrum),
                "{}: chain Gamma~_F {} <= Gamma_F {} <= sp_F {} <= sp {} is broken",
                entry.name,
                entry.connes.saturated_connes,
                entry.connes.connes,
                entry.arveson.essential,
                entry.arveson.spectrum
            );
            for check in [
                CONNES_DEGENERATION,
                SPECTRA_NEST,
                TRIVIAL_SATURATED,
                INVARIANT_DEGENERATION,
                ABELIAN_PLAIN_INTERSECTION,
            ] {
                check_holds(entry, check)?;
            }
            if entry.sys.table().group.is_abelian() {
                abelian += 1;
                ensure!(
                    entry.oracle.plain_intersection == entry.oracle.connes,
                    "{}: abelian group, yet corner intersections of sp ({}) and sp_F ({}) differ",
                    entry.name,
                    entry.oracle.plain_intersection,
                    entry.oracle.connes
                );
            }
        }
        Ok(format!(
            "{} systems: saturation changes nothing and the spectra nest; \
             plain and essential corner intersections agree on {abelian} abelian systems",
            corpus.entries.len()
        ))
    });
}

#[test]
fn criterion_7_representation_tables_and_located_failures() {
    run_criterion(7, "representation-tables", || {
        let tol = Tolerances::default();
        for name in PRESET_NAMES {
            let table = ok(preset_group(name), "preset")?;
            let report = validate_irrep_table(&table, &tol);
            ensure!(report.is_ok(), "{name}: {report}");
            let order = table.group.order();
            let dim_sum: usize = table.irreps.iter().map(|p| p.dim * p.dim).sum();
            ensure!(
                dim_sum == order,
                "{name}: squared dimensions sum to {dim_sum}, group has order {order}"
            );

            // Schur orthogonality of matrix coefficients, checked entrywise.
            for (a, pi) in table.irreps.iter().enumerate() {
                for (b, rho) in table.irreps.iter().enumerate() {
                    for i in 0..pi.dim {
                        for j in 0..pi.dim {
                            for k in 0..rho.dim {
                                for l in 0..rho.dim {
                                    let mut sum = C64::new(0.0, 0.0);
                                    for g in table.group.elements() {
                                        sum += pi.mat(g).at(i, j) * rho.mat(g).at(k, l).conj();
                                    }
                                    sum /= C64::new(order as f64, 0.0);
                                    let expected = if a == b && i == k && j == l {
                                        1.0 / pi.dim as f64
                                    } else {
                                        0.0
                                    };
                                    let err = (sum - C64::new(expected, 0.0)).norm();
                                    ensure!(
                                        err <= 1e-9,
                                        "{name}: coefficient orthogonality off by {err:.3e} \
                                         at ({},{i}{j})x({},{k}{l})",
                                        pi.label,
                                        rho.label
                                    );
                                }
                            }
                        }
                    }
                }
            }
        }

        // Corrupted tables must be rejected.
        let mut scaled = ok(preset_group("s3"), "preset")?;
        scaled.irreps[2].matrices[1] = scaled.irreps[2].matrices[1].scale(C64::new(1.25, 0.0));
        ensure!(
            !validate_irrep_table(&scaled, &tol).is_ok(),
            "a scaled irrep matrix must fail validation"
        );
        let mut truncated = ok(preset_group("s3"), "preset")?;
        truncated.irreps.pop();
        ensure!(
            !validate_irrep_table(&truncated, &tol).is_ok(),
            "a table missing an irrep must fail validation"
        );

        // Corrupted documents must fail with an error locating the bad field.
        let base: serde_json::Value =
            serde_json::from_str(&builtin("s3-m2").expect("builtin").to_json_pretty())
                .expect("document serializes");
        let rebuilt = |value: &serde_json::Value| -> Result<String, String> {
            let doc = SystemDocument::from_json(&value.to_string())
                .map_err(|e| e.to_string())
                .and_then(|doc| doc.build().map(|_| ()).map_err(|e| e.to_string()));
            match doc {
                Ok(()) => Err("corrupted document unexpectedly built".into()),
                Err(msg) => Ok(msg),
            }
        };

        let mut bad = base.clone();
        bad["group"]["preset"] = serde_json::json!("s99");
        let msg = rebuilt(&bad)?;
        ensure!(
            msg.contains("at group.preset"),
            "unknown preset error is not located: {msg}"
        );

        let mut bad = base.clone();
        bad["action"]["type"] = serde_json::json!("outer");
        let msg = rebuilt(&bad)?;
        ensure!(
            msg.contains("at action.type"),
            "unsupported action error is not located: {msg}"
        );

        let mut bad = base;
        bad["algebra"] = serde_json::json!({ "blocks": [0] });
        let msg = rebuilt(&bad)?;
        ensure!(
            msg.contains("at algebra.blocks"),
            "degenerate block error is not located: {msg}"
        );

        Ok(format!(
            "{} presets orthogonal and complete; corrupted tables and documents \
             rejected with located errors",
            PRESET_NAMES.len()
        ))
    });
}
