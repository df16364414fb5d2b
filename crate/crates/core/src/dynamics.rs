//! Group actions on matrix algebras and their spectral subspaces.
//!
//! A dynamical system couples an algebra with a unitarily implemented action
//! of a finite group. Construction validates everything once (unitarity,
//! preservation of the algebra, the group law at the automorphism level), so
//! downstream computations can rely on the action being exact to working
//! precision.
//!
//! For each irreducible representation `pi` the system exposes two spectral
//! objects: the isotypic subspace (range of the averaging projection for
//! `pi`) and the equivariant subspace of `d x d` block matrices `A` over the
//! algebra satisfying `(1 (x) u_g) A (1 (x) u_g)* = A (pi_g (x) 1)`. The
//! latter generates an ideal of the fixed-point algebra of the tensor action,
//! which is what the finer spectra are made of.

use std::collections::BTreeMap;
use std::sync::Arc;

use crate::algebra::FdAlgebra;
use crate::group::{Irrep, IrrepTable};
use crate::mat::Mat;
use crate::subspace::{nullspace_within, MatrixSubspace};
use crate::{Error, Result, Tolerances};

/// Deviation allowed for the exact action identities (unitarity and the
/// group law), mirroring the representation-table tolerance.
const ACTION_TOL: f64 = 1e-9;

/// A finite group acting on a matrix algebra by conjugation with one
/// implementing unitary per group element.
#[derive(Debug, Clone)]
pub struct DynamicalSystem {
    table: Arc<IrrepTable>,
    algebra: FdAlgebra,
    unitaries: Vec<Mat>,
    fixed: FdAlgebra,
    tol: Tolerances,
}

impl DynamicalSystem {
    /// Build and fully validate a system. The unitaries are indexed like the
    /// group elements; they may implement the action projectively (scalar
    /// phases drop out of conjugation).
    pub fn new(
        table: Arc<IrrepTable>,
        algebra: FdAlgebra,
        unitaries: Vec<Mat>,
        tol: &Tolerances,
    ) -> Result<DynamicalSystem> {
        let group = &table.group;
        let n = algebra.ambient();
        if unitaries.len() != group.order() {
            return Err(Error::InvalidInput {
                what: "action".into(),
                detail: format!(
                    "{} unitaries for a group of order {}",
                    unitaries.len(),
                    group.order()
                ),
            });
        }
        for (g, u) in unitaries.iter().enumerate() {
            if u.rows() != n || u.cols() != n {
                return Err(Error::ShapeMismatch {
                    context: "action unitary".into(),
                    detail: format!("element {g}: {}x{}, ambient is {n}", u.rows(), u.cols()),
                });
            }
            let dev = (&(u * &u.adjoint())).dist(&Mat::identity(n));
            if dev > ACTION_TOL {
                return Err(Error::NotUnitary {
                    detail: format!("element {g}: u u* deviates from identity by {dev:.3e}"),
                });
            }
        }
        // The action must map the algebra span into itself.
        for g in group.elements() {
            let mut worst = 0.0f64;
            for b in algebra.span().basis() {
                let image = conjugate(&unitaries[g], b);
                if !algebra.contains(&image, tol, "action preservation")? {
                    return Err(Error::NotPreserving {
                        detail: format!(
                            "element {g} maps a basis element outside the algebra (residual {:.3e})",
                            algebra.span().relative_residual(&image)
                        ),
                    });
                }
                worst = worst.max(algebra.span().relative_residual(&image));
            }
            let _ = worst;
        }
        // Group law at the automorphism level: conjugations compose like the
        // multiplication table, even if the unitaries only do so up to phase.
        for g in group.elements() {
            for h in group.elements() {
                let gh = group.mul(g, h);
                let mut dev = 0.0f64;
                for b in algebra.span().basis() {
                    let two_step = conjugate(&unitaries[g], &conjugate(&unitaries[h], b));
                    let one_step = conjugate(&unitaries[gh], b);
                    dev = dev.max(two_step.dist(&one_step));
                }
                if dev > ACTION_TOL {
                    return Err(Error::GroupLawViolation {
                        detail: format!(
                            "elements {g}, {h}: composed action deviates from the product by {dev:.3e}"
                        ),
                    });
                }
            }
        }
        let fixed = fixed_point_algebra(&table, &algebra, &unitaries, tol)?;
        Ok(DynamicalSystem {
            table,
            algebra,
            unitaries,
            fixed,
            tol: tol.clone(),
        })
    }

    /// Complete a map defined on group generators to the whole group by
    /// multiplying words, then validate as usual.
    pub fn from_generator_map(
        table: Arc<IrrepTable>,
        algebra: FdAlgebra,
        generator_unitaries: &BTreeMap<usize, Mat>,
        tol: &Tolerances,
    ) -> Result<DynamicalSystem> {
        let group = &table.group;
        let mut known: BTreeMap<usize, Mat> = generator_unitaries.clone();
        for (&g, _) in generator_unitaries {
            if g >= group.order() {
                return Err(Error::InvalidInput {
                    what: "generator map".into(),
                    detail: format!("element index {g} out of range"),
                });
            }
        }
        if known.is_empty() {
            return Err(Error::InvalidInput {
                what: "generator map".into(),
                detail: "no generators given".into(),
            });
        }
        // Close under multiplication until no new elements appear.
        loop {
            let mut added = false;
            let snapshot: Vec<usize> = known.keys().copied().collect();
            for &a in &snapshot {
                for &b in &snapshot {
                    let ab = group.mul(a, b);
                    if !known.contains_key(&ab) {
                        let m = &known[&a] * &known[&b];
                        known.insert(ab, m);
                        added = true;
                    }
                }
            }
            if !added {
                break;
            }
        }
        if known.len() != group.order() {
            return Err(Error::InvalidInput {
                what: "generator map".into(),
                detail: format!(
                    "given elements generate only {} of {} group elements",
                    known.len(),
                    group.order()
                ),
            });
        }
        let unitaries: Vec<Mat> = (0..group.order()).map(|g| known[&g].clone()).collect();
        DynamicalSystem::new(table, algebra, unitaries, tol)
    }

    pub fn table(&self) -> &IrrepTable {
        &self.table
    }

    pub fn table_arc(&self) -> Arc<IrrepTable> {
        Arc::clone(&self.table)
    }

    pub fn algebra(&self) -> &FdAlgebra {
        &self.algebra
    }

    /// The fixed-point algebra of the action.
    pub fn fixed(&self) -> &FdAlgebra {
        &self.fixed
    }

    pub fn tol(&self) -> &Tolerances {
        &self.tol
    }

    pub fn unitary(&self, g: usize) -> &Mat {
        &self.unitaries[g]
    }

    pub fn unitaries(&self) -> &[Mat] {
        &self.unitaries
    }

    /// Apply the action of one group element.
    pub fn alpha(&self, g: usize, x: &Mat) -> Mat {
        conjugate(&self.unitaries[g], x)
    }

    /// Same system, rebuilt with a different draw seed (fresh randomized
    /// decompositions, identical data).
    pub fn reseeded(&self, seed: u64) -> Result<DynamicalSystem> {
        let tol = self.tol.with_draw_seed(seed);
        let algebra = FdAlgebra::from_validated(
            self.algebra.ambient(),
            self.algebra.unit().clone(),
            self.algebra.span().clone(),
            &tol,
        )?;
        DynamicalSystem::new(self.table_arc(), algebra, self.unitaries.clone(), &tol)
    }

    /// Averaging projection for one irreducible representation:
    /// `(d/|G|) sum_g conj(tr pi(g)) alpha_g(x)`.
    pub fn spectral_projection(&self, pi: &Irrep, x: &Mat) -> Mat {
        let group = &self.table.group;
        let scale = pi.dim as f64 / group.order() as f64;
        let mut acc = Mat::zeros(x.rows(), x.cols());
        for g in group.elements() {
            let weight = pi.mat(g).trace().conj() * scale;
            acc = &acc + &self.alpha(g, x).scale(weight);
        }
        acc
    }

    /// Matrix-coefficient component of the averaging projection:
    /// `(d/|G|) sum_g conj(pi(g)_{ij}) alpha_g(x)`.
    pub fn spectral_coefficient(&self, pi: &Irrep, i: usize, j: usize, x: &Mat) -> Mat {
        let group = &self.table.group;
        let scale = pi.dim as f64 / group.order() as f64;
        let mut acc = Mat::zeros(x.rows(), x.cols());
        for g in group.elements() {
            let weight = pi.mat(g).at(i, j).conj() * scale;
            acc = &acc + &self.alpha(g, x).scale(weight);
        }
        acc
    }

    /// The isotypic subspace of `pi`: the range of the averaging projection
    /// on the algebra.
    pub fn isotypic_subspace(&self, pi: &Irrep) -> Result<MatrixSubspace> {
        let n = self.algebra.ambient();
        let images: Vec<Mat> = self
            .algebra
            .span()
            .basis()
            .iter()
            .map(|b| self.spectral_projection(pi, b))
            .collect();
        MatrixSubspace::span(n, n, &images, &self.tol, "isotypic subspace")
    }

    /// Orthonormal basis of `M_d(X)`: matrix units tensored with the algebra
    /// basis.
    fn tensor_basis(&self, d: usize) -> Vec<Mat> {
        let mut out = Vec::with_capacity(d * d * self.algebra.dim());
        for i in 0..d {
            for j in 0..d {
                let e = Mat::unit(d, d, i, j);
                for b in self.algebra.span().basis() {
                    out.push(e.kron(b));
                }
            }
        }
        out
    }

    /// The equivariant subspace of `pi`: all `A` in `M_d(X)` with
    /// `(1 (x) u_g) A (1 (x) u_g)* = A (pi_g (x) 1)` for every `g`.
    pub fn equivariant_subspace(&self, pi: &Irrep) -> Result<MatrixSubspace> {
        let group = &self.table.group;
        let d = pi.dim;
        let id_d = Mat::identity(d);
        let id_n = Mat::identity(self.algebra.ambient());
        let mut ops: Vec<Box<dyn Fn(&Mat) -> Mat>> = Vec::new();
        for g in group.elements() {
            let left = id_d.kron(&self.unitaries[g]);
            let left_adj = left.adjoint();
            let right = pi.mat(g).kron(&id_n);
            ops.push(Box::new(move |a: &Mat| {
                &(&(&left * a) * &left_adj) - &(a * &right)
            }));
        }
        let op_refs: Vec<&dyn Fn(&Mat) -> Mat> = ops.iter().map(|b| b.as_ref()).collect();
        nullspace_within(
            &op_refs,
            &self.tensor_basis(d),
            &self.tol,
            "equivariant subspace",
        )
    }

    /// The fixed-point algebra of the tensor action on `M_d(X)`: block
    /// matrices commuting with every `pi_g (x) u_g`.
    pub fn tensor_fixed_algebra(&self, pi: &Irrep) -> Result<FdAlgebra> {
        let group = &self.table.group;
        let d = pi.dim;
        let mut ops: Vec<Box<dyn Fn(&Mat) -> Mat>> = Vec::new();
        for g in group.elements() {
            let v = pi.mat(g).kron(&self.unitaries[g]);
            let v_adj = v.adjoint();
            ops.push(Box::new(move |a: &Mat| &(&(&v * a) * &v_adj) - a));
        }
        let op_refs: Vec<&dyn Fn(&Mat) -> Mat> = ops.iter().map(|b| b.as_ref()).collect();
        let span = nullspace_within(
            &op_refs,
            &self.tensor_basis(d),
            &self.tol,
            "tensor fixed algebra",
        )?;
        let unit = Mat::identity(d).kron(self.algebra.unit());
        FdAlgebra::from_validated(d * self.algebra.ambient(), unit, span, &self.tol)
    }

    /// Assemble the block matrix whose `(i, j)` block is the `(j, i)`
    /// matrix coefficient of `x` under `pi`. The index swap makes the result
    /// land in the equivariant subspace.
    pub fn coefficient_matrix(&self, pi: &Irrep, x: &Mat) -> Mat {
        let d = pi.dim;
        let n = self.algebra.ambient();
        let mut acc = Mat::zeros(d * n, d * n);
        for i in 0..d {
            for j in 0..d {
                let a = self.spectral_coefficient(pi, j, i, x);
                acc = &acc + &Mat::unit(d, d, i, j).kron(&a);
            }
        }
        acc
    }

    /// All nonzero action-invariant two-sided ideals, computed two ways: by
    /// the induced permutation of central blocks, and by direct span
    /// invariance. The routes must agree.
    pub fn invariant_ideal_lattice(&self) -> Result<Vec<crate::algebra::Ideal>> {
        let group = &self.table.group;
        let projections = &self.algebra.central().projections;
        let k = projections.len();
        // Route one: the action permutes the minimal central projections.
        let mut perms: Vec<Vec<usize>> = Vec::with_capacity(group.order());
        for g in group.elements() {
            let mut perm = Vec::with_capacity(k);
            for p in projections {
                let image = self.alpha(g, p);
                let mut found = None;
                for (j, q) in projections.iter().enumerate() {
                    if image.dist(q) <= self.tol.rank_high {
                        found = Some(j);
                        break;
                    }
                }
                match found {
                    Some(j) => perm.push(j),
                    None => {
                        return Err(Error::InternalInconsistency {
                            context: "invariant ideals".into(),
                            detail: format!(
                                "element {g} does not permute the minimal central projections"
                            ),
                        })
                    }
                }
            }
            perms.push(perm);
        }
        let mut out = Vec::new();
        for mask in 1..(1usize << k) {
            let selector: Vec<bool> = (0..k).map(|i| mask & (1 << i) != 0).collect();
            let stable = perms.iter().all(|perm| {
                (0..k).all(|i| !selector[i] || selector[perm[i]])
            });
            // Route two: direct span invariance of the candidate ideal.
            let ideal = self.algebra.ideal_from_selector(&selector, &self.tol)?;
            let mut invariant = true;
            'check: for g in group.elements() {
                for b in ideal.span.basis() {
                    if !ideal.span.contains(&self.alpha(g, b), &self.tol, "ideal invariance")? {
                        invariant = false;
                        break 'check;
                    }
                }
            }
            if stable != invariant {
                return Err(Error::InternalInconsistency {
                    context: "invariant ideals".into(),
                    detail: format!(
                        "selector {selector:?}: permutation route says {stable}, span route says {invariant}"
                    ),
                });
            }
            if stable {
                out.push(ideal);
            }
        }
        Ok(out)
    }

    /// Restrict to the corner of an invariant projection in the fixed-point
    /// algebra. The same unitaries implement the restricted action.
    pub fn restrict(&self, p: &Mat) -> Result<DynamicalSystem> {
        crate::algebra::check_projection(p, &self.tol)?;
        if !self.fixed.contains(p, &self.tol, "restriction projection")? {
            return Err(Error::NotInvariantProjection {
                detail: format!(
                    "projection has residual {:.3e} against the fixed-point algebra",
                    self.fixed.span().relative_residual(p)
                ),
            });
        }
        for g in self.table.group.elements() {
            let dev = self.alpha(g, p).dist(p);
            if dev > self.tol.membership {
                return Err(Error::NotInvariantProjection {
                    detail: format!("element {g} moves the projection by {dev:.3e}"),
                });
            }
        }
        let corner = self.algebra.corner(p, &self.tol)?;
        let fixed_corner = self.fixed.corner(p, &self.tol)?;
        // Validity is inherited: the corner is preserved because p is fixed,
        // and the group law holds a fortiori on a subspace.
        debug_assert!(
            corner
                .span()
                .basis()
                .iter()
                .all(|b| self.table.group.elements().all(|g| {
                    corner.span().relative_residual(&self.alpha(g, b)) < 1e-7
                })),
            "restricted action must preserve the corner"
        );
        Ok(DynamicalSystem {
            table: self.table_arc(),
            algebra: corner,
            unitaries: self.unitaries.clone(),
            fixed: fixed_corner,
            tol: self.tol.clone(),
        })
    }
}

/// Conjugation `u x u*`.
pub fn conjugate(u: &Mat, x: &Mat) -> Mat {
    &(u * x) * &u.adjoint()
}

fn fixed_point_algebra(
    table: &IrrepTable,
    algebra: &FdAlgebra,
    unitaries: &[Mat],
    tol: &Tolerances,
) -> Result<FdAlgebra> {
    let group = &table.group;
    let mut ops: Vec<Box<dyn Fn(&Mat) -> Mat>> = Vec::new();
    for g in group.elements() {
        let u = unitaries[g].clone();
        ops.push(Box::new(move |x: &Mat| &conjugate(&u, x) - x));
    }
    let op_refs: Vec<&dyn Fn(&Mat) -> Mat> = ops.iter().map(|b| b.as_ref()).collect();
    let span = nullspace_within(&op_refs, algebra.span().basis(), tol, "fixed-point algebra")?;
    FdAlgebra::from_validated(algebra.ambient(), algebra.unit().clone(), span, tol)
}
