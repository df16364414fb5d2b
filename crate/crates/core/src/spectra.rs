//! Spectral invariants of a dynamical system.
//!
//! Five nested sets of irreducible representations are computed:
//!
//! * `sp` (Arveson spectrum): irreps with a nonzero isotypic subspace;
//! * `sp_F`: irreps whose equivariant products generate an essential ideal
//!   of the tensor fixed-point algebra;
//! * `sp~_F`: irreps where that ideal is the whole fixed-point algebra;
//! * `Gamma_F`, `Gamma~_F` (Connes-type spectra): the intersections of the
//!   previous two over restrictions to invariant hereditary corners.
//!
//! The Connes-type sets are computed by a reduction route (corners supported
//! on the ideals of the fixed-point algebra) and, separately, by a direct
//! oracle that enumerates corners by block rank tuples. Keeping the routes
//! independent is the point: agreement is evidence, disagreement is a bug
//! surfaced by the caller.

use std::collections::BTreeSet;

use rand::Rng;
use serde::Serialize;

use crate::dynamics::DynamicalSystem;
use crate::group::Irrep;
use crate::mat::Mat;
use crate::subspace::MatrixSubspace;
use crate::{Error, Result};

/// Salt for the corner-sampling random stream.
const SALT_ORACLE: u64 = 0x31;

/// A set of irrep labels with set algebra and stable display order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct SpectrumSet(BTreeSet<String>);

impl SpectrumSet {
    pub fn empty() -> SpectrumSet {
        SpectrumSet(BTreeSet::new())
    }

    pub fn from_labels<I: IntoIterator<Item = S>, S: Into<String>>(labels: I) -> SpectrumSet {
        SpectrumSet(labels.into_iter().map(Into::into).collect())
    }

    pub fn contains(&self, label: &str) -> bool {
        self.0.contains(label)
    }

    pub fn insert(&mut self, label: impl Into<String>) {
        self.0.insert(label.into());
    }

    pub fn remove(&mut self, label: &str) {
        self.0.remove(label);
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &str> {
        self.0.iter().map(String::as_str)
    }

    pub fn is_subset(&self, other: &SpectrumSet) -> bool {
        self.0.is_subset(&other.0)
    }

    pub fn intersection(&self, other: &SpectrumSet) -> SpectrumSet {
        SpectrumSet(self.0.intersection(&other.0).cloned().collect())
    }
}

impl std::fmt::Display for SpectrumSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{{")?;
        for (k, label) in self.0.iter().enumerate() {
            if k > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{label}")?;
        }
        write!(f, "}}")
    }
}

/// Everything the library knows about one irrep relative to a system.
#[derive(Debug, Clone, Serialize)]
pub struct IrrepSpectralData {
    pub label: String,
    /// Dimension of the isotypic subspace (nonzero iff the irrep is in `sp`).
    pub isotypic_dim: usize,
    /// Dimension of the equivariant subspace of block matrices.
    pub equivariant_dim: usize,
    /// Block sizes of the tensor fixed-point algebra.
    pub fixed_block_dims: Vec<usize>,
    /// Which of those blocks the equivariant products reach.
    pub ideal_selector: Vec<bool>,
    pub in_spectrum: bool,
    /// The equivariant ideal is essential in the tensor fixed-point algebra.
    pub essential: bool,
    /// The equivariant ideal is the whole tensor fixed-point algebra.
    pub saturated: bool,
}

/// The three pointwise spectra of a system.
#[derive(Debug, Clone, Serialize)]
pub struct ArvesonData {
    pub per_irrep: Vec<IrrepSpectralData>,
    pub spectrum: SpectrumSet,
    pub essential: SpectrumSet,
    pub saturated: SpectrumSet,
}

/// The two Connes-type spectra via the ideal-supported corner reduction.
#[derive(Debug, Clone, Serialize)]
pub struct ConnesData {
    pub connes: SpectrumSet,
    pub saturated_connes: SpectrumSet,
    pub corners_visited: usize,
}

/// How thoroughly the oracle covered the hereditary corners.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum CornerCoverage {
    /// Every rank tuple was visited.
    Exhaustive,
    /// Budget exceeded; this many sampled corners were visited instead.
    Sampled(usize),
}

/// The Connes-type spectra by direct corner enumeration, plus the plain
/// spectrum intersection (interesting for abelian groups).
#[derive(Debug, Clone, Serialize)]
pub struct OracleData {
    pub connes: SpectrumSet,
    pub saturated_connes: SpectrumSet,
    pub plain_intersection: SpectrumSet,
    pub coverage: CornerCoverage,
    pub corners_visited: usize,
}

/// Action-level ideal structure of the system.
#[derive(Debug, Clone, Serialize)]
pub struct InvariantStructure {
    pub invariant_ideal_count: usize,
    pub alpha_simple: bool,
    pub alpha_prime: bool,
}

/// Span of all products `a* b` over a subspace's basis.
fn adjoint_product_span(
    space: &MatrixSubspace,
    tol: &crate::Tolerances,
) -> Result<MatrixSubspace> {
    let mut prods = Vec::with_capacity(space.dim() * space.dim());
    for a in space.basis() {
        let a_adj = a.adjoint();
        for b in space.basis() {
            prods.push(&a_adj * b);
        }
    }
    MatrixSubspace::span(space.rows(), space.cols(), &prods, tol, "equivariant products")
}

/// The working objects behind one irrep's spectral record, for callers that
/// need to keep computing with them.
#[derive(Debug, Clone)]
pub struct IrrepArtifacts {
    pub data: IrrepSpectralData,
    pub isotypic: MatrixSubspace,
    pub equivariant: MatrixSubspace,
    pub fixed: crate::algebra::FdAlgebra,
    pub ideal: crate::algebra::Ideal,
}

/// Compute one irrep's spectral record along with the underlying subspaces.
pub fn irrep_artifacts(sys: &DynamicalSystem, pi: &Irrep) -> Result<IrrepArtifacts> {
    let tol = sys.tol();
    let x1 = sys.isotypic_subspace(pi)?;
    let x2 = sys.equivariant_subspace(pi)?;
    let in_spectrum = x1.dim() > 0;
    if (x2.dim() > 0) != in_spectrum {
        return Err(Error::InternalInconsistency {
            context: format!("spectral membership of {:?}", pi.label),
            detail: format!(
                "isotypic dimension {} but equivariant dimension {}",
                x1.dim(),
                x2.dim()
            ),
        });
    }
    let f = sys.tensor_fixed_algebra(pi)?;
    let products = adjoint_product_span(&x2, tol)?;
    let ideal = f.ideal_from_span(&products, tol)?;
    let essential = f.is_essential(&ideal, tol)?;
    let saturated = ideal.is_full();
    if saturated && !essential {
        return Err(Error::InternalInconsistency {
            context: format!("spectral membership of {:?}", pi.label),
            detail: "full ideal judged inessential".into(),
        });
    }
    let data = IrrepSpectralData {
        label: pi.label.clone(),
        isotypic_dim: x1.dim(),
        equivariant_dim: x2.dim(),
        fixed_block_dims: f.block_dims().to_vec(),
        ideal_selector: ideal.selector.clone(),
        in_spectrum,
        essential,
        saturated,
    };
    Ok(IrrepArtifacts {
        data,
        isotypic: x1,
        equivariant: x2,
        fixed: f,
        ideal,
    })
}

/// Compute the full spectral record of one irrep against a system.
pub fn irrep_spectral_data(sys: &DynamicalSystem, pi: &Irrep) -> Result<IrrepSpectralData> {
    Ok(irrep_artifacts(sys, pi)?.data)
}

/// The three pointwise spectra, with structural cross-checks: isotypic
/// subspaces must partition the algebra, the trivial irrep must sit in every
/// set, and the sets must nest.
pub fn arveson_spectra(sys: &DynamicalSystem) -> Result<ArvesonData> {
    let mut per_irrep = Vec::with_capacity(sys.table().irreps.len());
    for pi in &sys.table().irreps {
        per_irrep.push(irrep_spectral_data(sys, pi)?);
    }
    assemble_arveson(sys, per_irrep)
}

/// Aggregate per-irrep records into the three spectra, enforcing the
/// structural cross-checks.
pub(crate) fn assemble_arveson(
    sys: &DynamicalSystem,
    per_irrep: Vec<IrrepSpectralData>,
) -> Result<ArvesonData> {
    let total: usize = per_irrep.iter().map(|d| d.isotypic_dim).sum();
    if total != sys.algebra().dim() {
        return Err(Error::InternalInconsistency {
            context: "spectral decomposition".into(),
            detail: format!(
                "isotypic dimensions sum to {total}, algebra has dimension {}",
                sys.algebra().dim()
            ),
        });
    }
    let spectrum =
        SpectrumSet::from_labels(per_irrep.iter().filter(|d| d.in_spectrum).map(|d| &d.label));
    let essential =
        SpectrumSet::from_labels(per_irrep.iter().filter(|d| d.essential).map(|d| &d.label));
    let saturated =
        SpectrumSet::from_labels(per_irrep.iter().filter(|d| d.saturated).map(|d| &d.label));
    let trivial = sys.table().trivial_label()?;
    if !saturated.contains(&trivial) {
        return Err(Error::InternalInconsistency {
            context: "spectral decomposition".into(),
            detail: "trivial representation missing from the saturated spectrum".into(),
        });
    }
    if !saturated.is_subset(&essential) || !essential.is_subset(&spectrum) {
        return Err(Error::InternalInconsistency {
            context: "spectral decomposition".into(),
            detail: format!("spectra do not nest: {saturated} / {essential} / {spectrum}"),
        });
    }
    Ok(ArvesonData {
        per_irrep,
        spectrum,
        essential,
        saturated,
    })
}

/// Connes-type spectra by the reduction route: intersect the essential and
/// saturated spectra over the corners supported on each nonzero ideal of the
/// fixed-point algebra. The full ideal reproduces the system itself, so the
/// intersection starts from the given pointwise data.
pub fn connes_spectra(sys: &DynamicalSystem, arveson: &ArvesonData) -> Result<ConnesData> {
    let tol = sys.tol();
    let mut gamma = arveson.essential.clone();
    let mut gamma_sat = arveson.saturated.clone();
    let mut corners_visited = 1usize; // the full corner is the system itself
    let lattice = sys.fixed().ideal_lattice(tol)?;
    for ideal in &lattice {
        if ideal.is_full() {
            continue;
        }
        if gamma.is_empty() {
            break;
        }
        let restricted = sys.restrict(&ideal.support)?;
        corners_visited += 1;
        for label in gamma.clone().iter() {
            let pi = sys.table().by_label(label).ok_or_else(|| {
                Error::InternalInconsistency {
                    context: "corner reduction".into(),
                    detail: format!("label {label:?} missing from the table"),
                }
            })?;
            let data = irrep_spectral_data(&restricted, pi)?;
            if !data.essential {
                gamma.remove(label);
            }
            if !data.saturated {
                gamma_sat.remove(label);
            }
        }
    }
    let trivial = sys.table().trivial_label()?;
    if !gamma_sat.contains(&trivial) {
        return Err(Error::InternalInconsistency {
            context: "corner reduction".into(),
            detail: "trivial representation fell out of the saturated intersection".into(),
        });
    }
    if !gamma_sat.is_subset(&gamma) {
        return Err(Error::InternalInconsistency {
            context: "corner reduction".into(),
            detail: format!("intersections do not nest: {gamma_sat} vs {gamma}"),
        });
    }
    Ok(ConnesData {
        connes: gamma,
        saturated_connes: gamma_sat,
        corners_visited,
    })
}

/// Connes-type spectra by direct enumeration of invariant hereditary corners.
///
/// Corners of the fixed-point algebra are enumerated up to conjugacy by their
/// block rank tuples `(r_1, ..., r_k)` with `0 <= r_i <= n_i`. If the count
/// `prod (n_i + 1) - 1` exceeds `budget`, a deterministic sample of `samples`
/// tuples (always containing the full corner) is used instead, and the
/// coverage field says so.
pub fn connes_oracle(sys: &DynamicalSystem, budget: usize, samples: usize) -> Result<OracleData> {
    let tol = sys.tol();
    let fixed = sys.fixed();
    let k = fixed.num_blocks();
    let dims = fixed.block_dims().to_vec();
    let mut families = Vec::with_capacity(k);
    for i in 0..k {
        families.push(fixed.block_minimal_projections(i, tol)?);
    }

    let mut total: usize = 1;
    let mut overflow = false;
    for &n in &dims {
        total = match total.checked_mul(n + 1) {
            Some(t) if t <= budget.saturating_add(1) => t,
            _ => {
                overflow = true;
                break;
            }
        };
    }
    let exhaustive = !overflow && total - 1 <= budget;

    let mut tuples: Vec<Vec<usize>> = Vec::new();
    let full: Vec<usize> = dims.clone();
    if exhaustive {
        let mut current = vec![0usize; k];
        loop {
            // Advance the odometer.
            let mut idx = 0;
            loop {
                if idx == k {
                    break;
                }
                if current[idx] < dims[idx] {
                    current[idx] += 1;
                    break;
                }
                current[idx] = 0;
                idx += 1;
            }
            if idx == k {
                break;
            }
            tuples.push(current.clone());
        }
    } else {
        let mut rng = tol.rng(SALT_ORACLE, 0);
        let mut seen: BTreeSet<Vec<usize>> = BTreeSet::new();
        seen.insert(full.clone());
        let mut attempts = 0usize;
        while seen.len() < samples && attempts < samples * 50 {
            attempts += 1;
            let tuple: Vec<usize> = dims.iter().map(|&n| rng.gen_range(0..=n)).collect();
            if tuple.iter().all(|&r| r == 0) {
                continue;
            }
            seen.insert(tuple);
        }
        tuples = seen.into_iter().collect();
    }

    let labels: Vec<String> = sys.table().labels();
    let mut gamma = SpectrumSet::from_labels(labels.iter().cloned());
    let mut gamma_sat = gamma.clone();
    let mut plain = gamma.clone();
    let mut corners_visited = 0usize;

    for tuple in &tuples {
        if plain.is_empty() {
            break;
        }
        let restricted;
        let target: &DynamicalSystem = if tuple == &full {
            sys
        } else {
            let mut q = Mat::zeros(fixed.ambient(), fixed.ambient());
            for (i, &r) in tuple.iter().enumerate() {
                for proj in families[i].iter().take(r) {
                    q = &q + proj;
                }
            }
            restricted = sys.restrict(&q)?;
            &restricted
        };
        corners_visited += 1;
        // Only labels still alive in the widest surviving set need checking.
        for label in plain.clone().iter() {
            let pi = sys.table().by_label(label).expect("label from the table");
            let data = irrep_spectral_data(target, pi)?;
            if !data.in_spectrum {
                plain.remove(label);
            }
            if !data.essential {
                gamma.remove(label);
            }
            if !data.saturated {
                gamma_sat.remove(label);
            }
        }
    }
    Ok(OracleData {
        connes: gamma,
        saturated_connes: gamma_sat,
        plain_intersection: plain,
        coverage: if exhaustive {
            CornerCoverage::Exhaustive
        } else {
            CornerCoverage::Sampled(corners_visited)
        },
        corners_visited,
    })
}

/// Whether the action admits proper invariant ideals, and whether two nonzero
/// invariant ideals can multiply to zero. Routes: ideal counting for
/// simplicity; selector intersections (checked against span products on small
/// lattices) for primeness.
pub fn invariant_structure(sys: &DynamicalSystem) -> Result<InvariantStructure> {
    let tol = sys.tol();
    let lattice = sys.invariant_ideal_lattice()?;
    let alpha_simple = lattice.len() == 1;
    let mut alpha_prime = true;
    'pairs: for a in &lattice {
        for b in &lattice {
            let meet = a
                .selector
                .iter()
                .zip(&b.selector)
                .any(|(&x, &y)| x && y);
            if lattice.len() <= 8 {
                let prod = a.span.product(&b.span, tol, "invariant ideal product")?;
                if (prod.dim() > 0) != meet {
                    return Err(Error::InternalInconsistency {
                        context: "invariant primeness".into(),
                        detail: format!(
                            "selectors {:?} and {:?}: product dimension {} contradicts selector meet {meet}",
                            a.selector,
                            b.selector,
                            prod.dim()
                        ),
                    });
                }
            }
            if !meet {
                alpha_prime = false;
                break 'pairs;
            }
        }
    }
    if alpha_simple != alpha_prime {
        return Err(Error::InternalInconsistency {
            context: "invariant structure".into(),
            detail: format!(
                "simplicity ({alpha_simple}) and primeness ({alpha_prime}) disagree on a finite-dimensional system"
            ),
        });
    }
    Ok(InvariantStructure {
        invariant_ideal_count: lattice.len(),
        alpha_simple,
        alpha_prime,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::FdAlgebra;
    use crate::group::preset_group;
    use crate::mat::C64;
    use crate::Tolerances;
    use std::sync::Arc;

    fn tol() -> Tolerances {
        Tolerances::default()
    }

    fn set(labels: &[&str]) -> SpectrumSet {
        SpectrumSet::from_labels(labels.iter().copied())
    }

    fn sigma_x() -> Mat {
        Mat::from_rows_re(&[&[0.0, 1.0], &[1.0, 0.0]])
    }

    fn sigma_z() -> Mat {
        Mat::from_rows_re(&[&[1.0, 0.0], &[0.0, -1.0]])
    }

    fn sym3_on_m2() -> DynamicalSystem {
        let table = Arc::new(preset_group("S3").unwrap());
        let std = table.by_label("std").unwrap().clone();
        let algebra = FdAlgebra::blocks(&[2], &tol()).unwrap();
        DynamicalSystem::new(table, algebra, std.matrices, &tol()).unwrap()
    }

    fn diag_z2_on_m2() -> DynamicalSystem {
        let table = Arc::new(preset_group("Z2").unwrap());
        let algebra = FdAlgebra::blocks(&[2], &tol()).unwrap();
        DynamicalSystem::new(table, algebra, vec![Mat::identity(2), sigma_z()], &tol()).unwrap()
    }

    fn pauli_z2z2_on_m2() -> DynamicalSystem {
        let table = Arc::new(preset_group("Z2xZ2").unwrap());
        let algebra = FdAlgebra::blocks(&[2], &tol()).unwrap();
        let unitaries = vec![
            Mat::identity(2),
            sigma_x(),
            sigma_z(),
            &sigma_x() * &sigma_z(),
        ];
        DynamicalSystem::new(table, algebra, unitaries, &tol()).unwrap()
    }

    fn trivial_z2_on_c2() -> DynamicalSystem {
        let table = Arc::new(preset_group("Z2").unwrap());
        let algebra = FdAlgebra::blocks(&[1, 1], &tol()).unwrap();
        DynamicalSystem::new(
            table,
            algebra,
            vec![Mat::identity(2), Mat::identity(2)],
            &tol(),
        )
        .unwrap()
    }

    fn swap_z2_on_c2() -> DynamicalSystem {
        let table = Arc::new(preset_group("Z2").unwrap());
        let algebra = FdAlgebra::blocks(&[1, 1], &tol()).unwrap();
        DynamicalSystem::new(table, algebra, vec![Mat::identity(2), sigma_x()], &tol()).unwrap()
    }

    #[test]
    fn sym3_action_spectra() {
        let sys = sym3_on_m2();
        let arveson = arveson_spectra(&sys).unwrap();
        assert_eq!(arveson.spectrum, set(&["triv", "sgn", "std"]));
        assert_eq!(arveson.essential, set(&["triv", "sgn"]));
        assert_eq!(arveson.saturated, set(&["triv", "sgn"]));
        // The two-dimensional irrep reaches only part of its fixed algebra:
        // its equivariant elements vanish on the trivial and sign summands of
        // the tensor square, so their products touch exactly one of the three
        // scalar blocks. That is why the irrep falls out of the finer spectra.
        let std_data = arveson
            .per_irrep
            .iter()
            .find(|d| d.label == "std")
            .unwrap();
        assert_eq!(std_data.fixed_block_dims, vec![1, 1, 1]);
        assert_eq!(
            std_data.ideal_selector.iter().filter(|&&s| s).count(),
            1
        );
        assert_eq!(std_data.isotypic_dim, 2);
        assert_eq!(std_data.equivariant_dim, 2);

        // The fixed-point algebra is the scalars, so the reduction route has
        // a single corner and the Connes sets equal the pointwise ones.
        let connes = connes_spectra(&sys, &arveson).unwrap();
        assert_eq!(connes.corners_visited, 1);
        assert_eq!(connes.connes, set(&["triv", "sgn"]));
        assert_eq!(connes.saturated_connes, set(&["triv", "sgn"]));
    }

    #[test]
    fn diag_action_spectra_shrink_in_corners() {
        let sys = diag_z2_on_m2();
        let arveson = arveson_spectra(&sys).unwrap();
        assert_eq!(arveson.spectrum, set(&["chi0", "chi1"]));
        assert_eq!(arveson.essential, set(&["chi0", "chi1"]));
        assert_eq!(arveson.saturated, set(&["chi0", "chi1"]));

        // The fixed algebra is diagonal; the two proper corners kill chi1.
        let connes = connes_spectra(&sys, &arveson).unwrap();
        assert_eq!(connes.corners_visited, 3);
        assert_eq!(connes.connes, set(&["chi0"]));
        assert_eq!(connes.saturated_connes, set(&["chi0"]));
    }

    #[test]
    fn pauli_action_has_full_spectra() {
        let sys = pauli_z2z2_on_m2();
        assert_eq!(sys.fixed().dim(), 1);
        let arveson = arveson_spectra(&sys).unwrap();
        let all = set(&["chi00", "chi10", "chi01", "chi11"]);
        assert_eq!(arveson.spectrum, all);
        assert_eq!(arveson.essential, all);
        assert_eq!(arveson.saturated, all);
        let connes = connes_spectra(&sys, &arveson).unwrap();
        assert_eq!(connes.connes, all);
        assert_eq!(connes.saturated_connes, all);
    }

    #[test]
    fn trivial_action_sees_only_the_trivial_irrep() {
        let sys = trivial_z2_on_c2();
        let arveson = arveson_spectra(&sys).unwrap();
        assert_eq!(arveson.spectrum, set(&["chi0"]));
        assert_eq!(arveson.essential, set(&["chi0"]));
        assert_eq!(arveson.saturated, set(&["chi0"]));
        let connes = connes_spectra(&sys, &arveson).unwrap();
        assert_eq!(connes.connes, set(&["chi0"]));
        let structure = invariant_structure(&sys).unwrap();
        assert_eq!(structure.invariant_ideal_count, 3);
        assert!(!structure.alpha_simple && !structure.alpha_prime);
    }

    #[test]
    fn swap_action_keeps_both_characters() {
        let sys = swap_z2_on_c2();
        let arveson = arveson_spectra(&sys).unwrap();
        assert_eq!(arveson.spectrum, set(&["chi0", "chi1"]));
        assert_eq!(arveson.saturated, set(&["chi0", "chi1"]));
        // Scalar fixed algebra: one corner, nothing shrinks.
        let connes = connes_spectra(&sys, &arveson).unwrap();
        assert_eq!(connes.connes, set(&["chi0", "chi1"]));
        assert_eq!(connes.saturated_connes, set(&["chi0", "chi1"]));
        let structure = invariant_structure(&sys).unwrap();
        assert!(structure.alpha_simple && structure.alpha_prime);
    }

    #[test]
    fn oracle_agrees_with_reduction_on_diag_action() {
        let sys = diag_z2_on_m2();
        let arveson = arveson_spectra(&sys).unwrap();
        let connes = connes_spectra(&sys, &arveson).unwrap();
        let oracle = connes_oracle(&sys, 4096, 16).unwrap();
        assert_eq!(oracle.coverage, CornerCoverage::Exhaustive);
        assert_eq!(oracle.corners_visited, 3);
        assert_eq!(oracle.connes, connes.connes);
        assert_eq!(oracle.saturated_connes, connes.saturated_connes);
        // The group is abelian, so the plain-spectrum intersection matches.
        assert_eq!(oracle.plain_intersection, oracle.connes);
    }

    #[test]
    fn oracle_sampling_is_a_superset_of_the_exhaustive_answer() {
        let sys = diag_z2_on_m2();
        let exhaustive = connes_oracle(&sys, 4096, 16).unwrap();
        let sampled = connes_oracle(&sys, 1, 2).unwrap();
        assert!(matches!(sampled.coverage, CornerCoverage::Sampled(_)));
        assert!(exhaustive.connes.is_subset(&sampled.connes));
        assert!(exhaustive
            .saturated_connes
            .is_subset(&sampled.saturated_connes));
    }

    #[test]
    fn oracle_handles_scalar_fixed_algebra() {
        let sys = pauli_z2z2_on_m2();
        let oracle = connes_oracle(&sys, 4096, 16).unwrap();
        assert_eq!(oracle.corners_visited, 1);
        assert_eq!(
            oracle.connes,
            set(&["chi00", "chi10", "chi01", "chi11"])
        );
    }

    #[test]
    fn sym3_invariant_structure_is_simple() {
        let sys = sym3_on_m2();
        let structure = invariant_structure(&sys).unwrap();
        assert_eq!(structure.invariant_ideal_count, 1);
        assert!(structure.alpha_simple && structure.alpha_prime);
    }

    #[test]
    fn spectrum_set_displays_sorted() {
        let s = set(&["std", "triv", "sgn"]);
        assert_eq!(s.to_string(), "{sgn, std, triv}");
        assert_eq!(SpectrumSet::empty().to_string(), "{}");
    }

    #[test]
    fn weighted_cyclic_action_spectra() {
        // Z4 on M_2 by u = diag(1, i): isotypic pieces for chi0..chi3 have
        // dimensions 2, 1, 0, 1; the spectrum misses chi2.
        let table = Arc::new(preset_group("Z4").unwrap());
        let algebra = FdAlgebra::blocks(&[2], &tol()).unwrap();
        let u = Mat::from_rows(&[
            vec![C64::new(1.0, 0.0), C64::new(0.0, 0.0)],
            vec![C64::new(0.0, 0.0), C64::new(0.0, 1.0)],
        ]);
        let mut unitaries = vec![Mat::identity(2)];
        for k in 1..4 {
            unitaries.push(&unitaries[k - 1] * &u);
        }
        let sys = DynamicalSystem::new(table, algebra, unitaries, &tol()).unwrap();
        let arveson = arveson_spectra(&sys).unwrap();
        assert_eq!(arveson.spectrum, set(&["chi0", "chi1", "chi3"]));
        let dims: Vec<usize> = arveson.per_irrep.iter().map(|d| d.isotypic_dim).collect();
        assert_eq!(dims, vec![2, 1, 0, 1]);
        // chi1 * chi3 lands outside the spectrum: the spectrum of this
        // action is visibly not a subgroup, yet the Connes sets still are.
        let connes = connes_spectra(&sys, &arveson).unwrap();
        assert_eq!(connes.connes, set(&["chi0"]));
    }
}
