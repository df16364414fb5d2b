//! Deterministic generation of random systems for stress testing.
//!
//! Every case is reproducible from the master seed and its index alone: the
//! generator derives a per-case seed, draws a preset group, an algebra block
//! layout, and an action from one of three families, and emits the result as
//! a plain document. The families are:
//!
//! - `full`: a single full matrix block with a twisted representation acting
//!   inside it, so the action mixes the algebra thoroughly;
//! - `blocks`: several blocks, each carrying its own representation, so the
//!   invariant ideal lattice is rich;
//! - `swap`: equal blocks permuted cyclically through a quotient of the
//!   group, composed with one shared in-block representation.

use std::collections::BTreeMap;

use rand::seq::SliceRandom;
use rand::Rng;
use rand_chacha::ChaCha8Rng;

use crate::document::{ActionDoc, AlgebraDoc, GroupDoc, SystemDocument};
use crate::group::{preset_group, IrrepTable, PRESET_NAMES};
use crate::mat::{Mat, C64};
use crate::tol::Tolerances;
use crate::{Error, Result};

/// Size limits for generated systems.
#[derive(Debug, Clone, Copy)]
pub struct FuzzBounds {
    /// Largest group order to draw from the presets.
    pub max_group: usize,
    /// Largest ambient dimension for the algebra.
    pub max_ambient: usize,
}

impl Default for FuzzBounds {
    fn default() -> FuzzBounds {
        FuzzBounds {
            max_group: 8,
            max_ambient: 6,
        }
    }
}

/// One generated case: a stable name, the seed that reproduces it, and the
/// document describing the system.
#[derive(Debug, Clone)]
pub struct FuzzCase {
    pub name: String,
    pub seed: u64,
    pub document: SystemDocument,
}

/// Generate `count` cases from a master seed. The same `(seed, count,
/// bounds)` triple always yields byte-identical documents.
pub fn generate(seed: u64, count: usize, bounds: &FuzzBounds) -> Result<Vec<FuzzCase>> {
    if bounds.max_group < 1 {
        return Err(Error::InvalidInput {
            what: "fuzz bounds".into(),
            detail: "max_group must be at least 1".into(),
        });
    }
    if bounds.max_ambient < 2 {
        return Err(Error::InvalidInput {
            what: "fuzz bounds".into(),
            detail: "max_ambient must be at least 2".into(),
        });
    }
    let presets: Vec<(String, IrrepTable)> = PRESET_NAMES
        .iter()
        .map(|name| Ok((name.to_string(), preset_group(name)?)))
        .collect::<Result<Vec<_>>>()?
        .into_iter()
        .filter(|(_, table)| table.group.order() <= bounds.max_group)
        .collect();
    if presets.is_empty() {
        return Err(Error::InvalidInput {
            what: "fuzz bounds".into(),
            detail: format!("no preset group has order at most {}", bounds.max_group),
        });
    }
    (0..count)
        .map(|idx| generate_one(seed, idx, bounds, &presets))
        .collect()
}

fn case_seed(seed: u64, idx: usize) -> u64 {
    (seed ^ (idx as u64).wrapping_mul(0x9E37_79B9_7F4A_7C15)).wrapping_add(0x1234_5678_9ABC_DEF1)
}

fn generate_one(
    seed: u64,
    idx: usize,
    bounds: &FuzzBounds,
    presets: &[(String, IrrepTable)],
) -> Result<FuzzCase> {
    use rand::SeedableRng;
    let sub_seed = case_seed(seed, idx);
    let mut rng = ChaCha8Rng::seed_from_u64(sub_seed);
    let (preset_name, table) = presets
        .choose(&mut rng)
        .expect("the preset list is nonempty");
    let family = *["full", "blocks", "swap"]
        .choose(&mut rng)
        .expect("three families");
    let (family, blocks, unitaries) = match family {
        "full" => build_full(table, bounds, &mut rng),
        "blocks" => build_blocks(table, bounds, &mut rng),
        _ => build_swap(table, bounds, &mut rng)
            .unwrap_or_else(|| build_blocks(table, bounds, &mut rng)),
    };
    let map: BTreeMap<String, Mat> = unitaries
        .into_iter()
        .enumerate()
        .map(|(g, u)| (g.to_string(), u))
        .collect();
    let name = format!(
        "fuzz-{seed:08x}-{idx:03}-{}-{family}",
        preset_name.to_lowercase()
    );
    let document = SystemDocument {
        name: Some(name.clone()),
        description: None,
        group: GroupDoc::Preset {
            preset: preset_name.clone(),
        },
        algebra: AlgebraDoc::Blocks { blocks },
        action: ActionDoc {
            kind: "inner".into(),
            unitaries: map,
        },
        tolerances: Tolerances::default().with_draw_seed(sub_seed),
    };
    Ok(FuzzCase {
        name,
        seed: sub_seed,
        document,
    })
}

/// A unitary representation of the tabled group with the requested dimension,
/// assembled as a random direct sum of irreps (dimension-one irreps always
/// exist, so any dimension is reachable).
fn rep_of_dim(table: &IrrepTable, dim: usize, rng: &mut ChaCha8Rng) -> Vec<Mat> {
    let order = table.group.order();
    let mut parts = Vec::new();
    let mut remaining = dim;
    while remaining > 0 {
        let fitting: Vec<_> = table
            .irreps
            .iter()
            .filter(|pi| pi.dim <= remaining)
            .collect();
        let pick = fitting.choose(rng).expect("characters always fit");
        remaining -= pick.dim;
        parts.push(*pick);
    }
    (0..order)
        .map(|g| block_diag(&parts.iter().map(|pi| pi.mat(g).clone()).collect::<Vec<_>>()))
        .collect()
}

fn block_diag(mats: &[Mat]) -> Mat {
    let n: usize = mats.iter().map(Mat::rows).sum();
    let mut out = Mat::zeros(n, n);
    let mut offset = 0;
    for m in mats {
        for i in 0..m.rows() {
            for j in 0..m.cols() {
                out.set(offset + i, offset + j, m.at(i, j));
            }
        }
        offset += m.rows();
    }
    out
}

/// A Haar-ish random unitary: the Q factor of a random complex matrix.
fn random_unitary(n: usize, rng: &mut ChaCha8Rng) -> Mat {
    let raw = Mat::from_fn(n, n, |_, _| {
        C64::new(rng.gen::<f64>() - 0.5, rng.gen::<f64>() - 0.5)
    });
    let qr = nalgebra::linalg::QR::new(raw.inner().clone());
    Mat::from_inner(qr.q())
}

/// One full block with a basis-twisted representation inside it.
fn build_full(
    table: &IrrepTable,
    bounds: &FuzzBounds,
    rng: &mut ChaCha8Rng,
) -> (&'static str, Vec<usize>, Vec<Mat>) {
    let n = rng.gen_range(2..=bounds.max_ambient);
    let rep = rep_of_dim(table, n, rng);
    let w = random_unitary(n, rng);
    let w_adj = w.adjoint();
    let unitaries = rep.iter().map(|r| &(&w * r) * &w_adj).collect();
    ("full", vec![n], unitaries)
}

/// Several blocks, each with its own representation.
fn build_blocks(
    table: &IrrepTable,
    bounds: &FuzzBounds,
    rng: &mut ChaCha8Rng,
) -> (&'static str, Vec<usize>, Vec<Mat>) {
    let total = rng.gen_range(2..=bounds.max_ambient);
    let mut blocks = Vec::new();
    let mut remaining = total;
    while remaining > 0 {
        let n = rng.gen_range(1..=remaining.min(3));
        blocks.push(n);
        remaining -= n;
    }
    let reps: Vec<Vec<Mat>> = blocks.iter().map(|&n| rep_of_dim(table, n, rng)).collect();
    let unitaries = (0..table.group.order())
        .map(|g| block_diag(&reps.iter().map(|rep| rep[g].clone()).collect::<Vec<_>>()))
        .collect();
    ("blocks", blocks, unitaries)
}

/// Equal blocks permuted through a cyclic quotient, sharing one in-block
/// representation. Returns `None` when the group has no usable quotient
/// within the ambient bound.
fn build_swap(
    table: &IrrepTable,
    bounds: &FuzzBounds,
    rng: &mut ChaCha8Rng,
) -> Option<(&'static str, Vec<usize>, Vec<Mat>)> {
    let mut ms: Vec<usize> = (2..=bounds.max_ambient.min(4)).collect();
    ms.shuffle(rng);
    for m in ms {
        let quotients = table.group.surjections_onto_cyclic(m);
        if quotients.is_empty() {
            continue;
        }
        let phi = quotients.choose(rng).expect("nonempty").clone();
        let n = rng.gen_range(1..=bounds.max_ambient / m);
        let rep = rep_of_dim(table, n, rng);
        let shift = cyclic_block_shift(m, n);
        let unitaries = (0..table.group.order())
            .map(|g| {
                let mut perm = Mat::identity(m * n);
                for _ in 0..phi[g] {
                    perm = &shift * &perm;
                }
                let inner = block_diag(&vec![rep[g].clone(); m]);
                &perm * &inner
            })
            .collect();
        return Some(("swap", vec![n; m], unitaries));
    }
    None
}

/// The permutation advancing each of `m` consecutive `n`-blocks by one slot.
fn cyclic_block_shift(m: usize, n: usize) -> Mat {
    let mut p = Mat::zeros(m * n, m * n);
    for j in 0..m {
        let target = (j + 1) % m;
        for r in 0..n {
            p.set(target * n + r, j * n + r, C64::new(1.0, 0.0));
        }
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generation_is_deterministic() {
        let bounds = FuzzBounds::default();
        let a = generate(7, 6, &bounds).unwrap();
        let b = generate(7, 6, &bounds).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.name, y.name);
            assert_eq!(
                x.document.to_json_pretty(),
                y.document.to_json_pretty(),
                "{}",
                x.name
            );
        }
    }

    #[test]
    fn different_seeds_differ() {
        let bounds = FuzzBounds::default();
        let a = generate(1, 4, &bounds).unwrap();
        let b = generate(2, 4, &bounds).unwrap();
        let texts = |cases: &[FuzzCase]| {
            cases
                .iter()
                .map(|c| c.document.to_json_pretty())
                .collect::<Vec<_>>()
        };
        assert_ne!(texts(&a), texts(&b));
    }

    #[test]
    fn generated_documents_build_within_bounds() {
        let bounds = FuzzBounds::default();
        for case in generate(42, 30, &bounds).unwrap() {
            let sys = case
                .document
                .build()
                .unwrap_or_else(|e| panic!("{}: {e}", case.name));
            assert!(sys.table().group.order() <= bounds.max_group, "{}", case.name);
            assert!(
                sys.algebra().ambient() <= bounds.max_ambient,
                "{}",
                case.name
            );
        }
    }

    #[test]
    fn all_families_appear() {
        let cases = generate(42, 40, &FuzzBounds::default()).unwrap();
        for family in ["full", "blocks", "swap"] {
            assert!(
                cases.iter().any(|c| c.name.ends_with(family)),
                "no {family} case in 40 draws"
            );
        }
    }

    #[test]
    fn documents_roundtrip_byte_stable() {
        for case in generate(3, 5, &FuzzBounds::default()).unwrap() {
            let text = case.document.to_json_pretty();
            let parsed = SystemDocument::from_json(&text).unwrap();
            assert_eq!(text, parsed.to_json_pretty(), "{}", case.name);
        }
    }

    #[test]
    fn tight_bounds_are_respected_or_rejected() {
        let err = generate(1, 1, &FuzzBounds {
            max_group: 8,
            max_ambient: 1,
        })
        .unwrap_err();
        assert!(matches!(err, Error::InvalidInput { .. }));
        let small = generate(
            11,
            10,
            &FuzzBounds {
                max_group: 2,
                max_ambient: 2,
            },
        )
        .unwrap();
        for case in small {
            let sys = case.document.build().unwrap();
            assert!(sys.table().group.order() <= 2);
            assert!(sys.algebra().ambient() <= 2);
        }
    }

    #[test]
    fn a_generated_case_analyzes_cleanly() {
        let cases = generate(5, 3, &FuzzBounds::default()).unwrap();
        let sys = cases[0].document.build().unwrap();
        let arveson = crate::spectra::arveson_spectra(&sys).unwrap();
        assert!(!arveson.spectrum.is_empty());
    }
}
