//! Finite-dimensional C*-algebras realized as *-closed matrix subspaces.
//!
//! Every algebra is stored with its central decomposition: the minimal
//! central projections, the size `n_i` of each matrix block, and the
//! multiplicity of the block inside the ambient space. The decomposition is
//! extracted numerically (eigenprojections of a generic hermitian central
//! element) and then cross-checked against exact counting identities, so a
//! bad extraction surfaces as an error instead of a wrong structure.

use rand::Rng;
use rand_distr::StandardNormal;

use crate::mat::{C64, Mat};
use crate::subspace::{nullspace_within, MatrixSubspace, SubspaceOrder};
use crate::{eig_hermitian, Error, Result, Tolerances};

/// Distinct salts for the internal random streams used by this module.
const SALT_CENTRAL: u64 = 0x11;
const SALT_BLOCK_FAMILY: u64 = 0x23;

/// How many fresh random draws a decomposition may consume before giving up.
const MAX_DRAWS: u64 = 20;

/// Central decomposition of a multimatrix algebra.
#[derive(Debug, Clone)]
pub struct CentralData {
    /// The center as a matrix subspace (dimension = number of blocks).
    pub center: MatrixSubspace,
    /// Minimal central projections, one per block, in a deterministic order.
    pub projections: Vec<Mat>,
    /// `block_dims[i] = n` means the corner under `projections[i]` is a full
    /// n-by-n matrix algebra.
    pub block_dims: Vec<usize>,
    /// Multiplicity of each block in the ambient representation
    /// (`trace(projections[i]) = block_dims[i] * block_mults[i]`).
    pub block_mults: Vec<usize>,
}

/// A finite-dimensional C*-algebra of `ambient x ambient` matrices. The unit
/// is a projection but need not be the ambient identity (corners keep their
/// own unit).
#[derive(Debug, Clone)]
pub struct FdAlgebra {
    ambient: usize,
    unit: Mat,
    span: MatrixSubspace,
    central: CentralData,
}

/// A two-sided ideal, recorded three ways at once: which blocks it selects,
/// its central support projection, and its span.
#[derive(Debug, Clone)]
pub struct Ideal {
    pub selector: Vec<bool>,
    pub support: Mat,
    pub span: MatrixSubspace,
}

impl Ideal {
    pub fn is_zero(&self) -> bool {
        self.selector.iter().all(|&s| !s)
    }

    pub fn is_full(&self) -> bool {
        self.selector.iter().all(|&s| s)
    }
}

/// Simplicity and primeness, decided by two routes and cross-checked.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct AlgebraClass {
    pub simple: bool,
    pub prime: bool,
}

impl FdAlgebra {
    /// The block-diagonal algebra `M_{dims[0]} + ... + M_{dims[k-1]}` inside
    /// square matrices of size `sum dims`, with unit the ambient identity.
    pub fn blocks(dims: &[usize], tol: &Tolerances) -> Result<FdAlgebra> {
        if dims.is_empty() || dims.contains(&0) {
            return Err(Error::InvalidInput {
                what: "block dimensions".into(),
                detail: format!("need nonempty positive dimensions, got {dims:?}"),
            });
        }
        let n: usize = dims.iter().sum();
        let mut basis = Vec::new();
        let mut offset = 0usize;
        for &d in dims {
            for i in 0..d {
                for j in 0..d {
                    basis.push(Mat::unit(n, n, offset + i, offset + j));
                }
            }
            offset += d;
        }
        let span = MatrixSubspace::from_orthonormal(n, n, basis);
        FdAlgebra::from_validated(n, Mat::identity(n), span, tol)
    }

    /// Build an algebra from a spanning set, validating adjoint closure,
    /// multiplicative closure, and the unit.
    pub fn from_span(ambient: usize, unit: Mat, mats: &[Mat], tol: &Tolerances) -> Result<FdAlgebra> {
        let span = MatrixSubspace::span(ambient, ambient, mats, tol, "algebra span")?;
        if span.dim() == 0 {
            return Err(Error::InvalidInput {
                what: "algebra span".into(),
                detail: "span is zero-dimensional".into(),
            });
        }
        for (k, b) in span.basis().iter().enumerate() {
            if !span.contains(&b.adjoint(), tol, "adjoint closure")? {
                return Err(Error::NotAnAlgebra {
                    detail: format!(
                        "adjoint of basis element {k} leaves the span (residual {:.3e})",
                        span.relative_residual(&b.adjoint())
                    ),
                });
            }
        }
        let prod = span.product(&span, tol, "product closure")?;
        match prod.compare(&span, tol)? {
            SubspaceOrder::Equal | SubspaceOrder::LeftInsideRight => {}
            _ => {
                return Err(Error::NotAnAlgebra {
                    detail: format!(
                        "products leave the span (residual {:.3e})",
                        span.max_residual(prod.basis())
                    ),
                })
            }
        }
        check_unit(&unit, &span, tol)?;
        FdAlgebra::from_validated(ambient, unit, span, tol)
    }

    /// Build from a span already known to be a *-algebra (block construction,
    /// corners of validated algebras). Computes the central decomposition.
    pub(crate) fn from_validated(
        ambient: usize,
        unit: Mat,
        span: MatrixSubspace,
        tol: &Tolerances,
    ) -> Result<FdAlgebra> {
        debug_assert_eq!(unit.rows(), ambient);
        let central = central_decomposition(&unit, &span, tol)?;
        Ok(FdAlgebra {
            ambient,
            unit,
            span,
            central,
        })
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn unit(&self) -> &Mat {
        &self.unit
    }

    pub fn span(&self) -> &MatrixSubspace {
        &self.span
    }

    /// Linear dimension of the algebra.
    pub fn dim(&self) -> usize {
        self.span.dim()
    }

    pub fn central(&self) -> &CentralData {
        &self.central
    }

    pub fn center(&self) -> &MatrixSubspace {
        &self.central.center
    }

    pub fn num_blocks(&self) -> usize {
        self.central.projections.len()
    }

    pub fn block_dims(&self) -> &[usize] {
        &self.central.block_dims
    }

    pub fn contains(&self, m: &Mat, tol: &Tolerances, context: &str) -> Result<bool> {
        self.span.contains(m, tol, context)
    }

    /// A random element with independent complex gaussian coordinates in the
    /// orthonormal basis of the span.
    pub fn random_element(&self, rng: &mut impl Rng) -> Mat {
        let mut acc = Mat::zeros(self.ambient, self.ambient);
        for b in self.span.basis() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            acc = &acc + &b.scale(C64::new(re, im));
        }
        acc
    }

    /// A random hermitian element of the algebra.
    pub fn random_hermitian(&self, rng: &mut impl Rng) -> Mat {
        let z = self.random_element(rng);
        (&z + &z.adjoint()).scale(C64::new(0.5, 0.0))
    }

    /// The ideal selecting the given blocks.
    pub fn ideal_from_selector(&self, selector: &[bool], tol: &Tolerances) -> Result<Ideal> {
        assert_eq!(selector.len(), self.num_blocks(), "selector length");
        let mut support = Mat::zeros(self.ambient, self.ambient);
        for (i, &sel) in selector.iter().enumerate() {
            if sel {
                support = &support + &self.central.projections[i];
            }
        }
        let compressed: Vec<Mat> = self
            .span
            .basis()
            .iter()
            .map(|b| &(&support * b) * &support)
            .collect();
        let span = MatrixSubspace::span(self.ambient, self.ambient, &compressed, tol, "ideal span")?;
        let expected: usize = selector
            .iter()
            .zip(&self.central.block_dims)
            .filter(|(&sel, _)| sel)
            .map(|(_, &n)| n * n)
            .sum();
        if span.dim() != expected {
            return Err(Error::InternalInconsistency {
                context: "ideal from selector".into(),
                detail: format!(
                    "span dimension {} but selected blocks count {expected}",
                    span.dim()
                ),
            });
        }
        Ok(Ideal {
            selector: selector.to_vec(),
            support,
            span,
        })
    }

    /// All nonzero two-sided ideals (one per nonempty block subset).
    pub fn ideal_lattice(&self, tol: &Tolerances) -> Result<Vec<Ideal>> {
        let k = self.num_blocks();
        let mut out = Vec::with_capacity((1usize << k) - 1);
        for mask in 1..(1usize << k) {
            let selector: Vec<bool> = (0..k).map(|i| mask & (1 << i) != 0).collect();
            out.push(self.ideal_from_selector(&selector, tol)?);
        }
        Ok(out)
    }

    /// The two-sided ideal generated by one element, computed from the span of
    /// `A x A` and cross-checked against the block-selector route.
    pub fn ideal_generated_by(&self, x: &Mat, tol: &Tolerances) -> Result<Ideal> {
        if !self.contains(x, tol, "ideal generator")? {
            return Err(Error::NotInsideAlgebra {
                detail: format!(
                    "ideal generator has residual {:.3e} against the algebra",
                    self.span.relative_residual(x)
                ),
            });
        }
        let mut prods = Vec::with_capacity(self.dim() * self.dim());
        for a in self.span.basis() {
            for b in self.span.basis() {
                prods.push(&(a * x) * b);
            }
        }
        let generated =
            MatrixSubspace::span(self.ambient, self.ambient, &prods, tol, "generated ideal")?;
        self.ideal_from_span(&generated, tol)
    }

    /// Recognize a subspace as a two-sided ideal: derive the blocks it
    /// touches, rebuild the ideal from that selector, and insist the two
    /// spans agree. A subspace that is not an ideal cannot pass the
    /// comparison.
    pub fn ideal_from_span(&self, span: &MatrixSubspace, tol: &Tolerances) -> Result<Ideal> {
        let selector = self.touched_blocks(span, tol)?;
        let by_selector = self.ideal_from_selector(&selector, tol)?;
        if span.compare(&by_selector.span, tol)? != SubspaceOrder::Equal {
            return Err(Error::InternalInconsistency {
                context: "ideal from span".into(),
                detail: format!(
                    "subspace of dimension {} differs from the ideal (dimension {}) selecting the same blocks",
                    span.dim(),
                    by_selector.span.dim()
                ),
            });
        }
        Ok(by_selector)
    }

    /// Which blocks a subspace has a nonzero component in.
    pub fn touched_blocks(&self, span: &MatrixSubspace, tol: &Tolerances) -> Result<Vec<bool>> {
        let mut selector = Vec::with_capacity(self.num_blocks());
        for p in &self.central.projections {
            let mass = span
                .basis()
                .iter()
                .map(|s| (p * s).hs_norm())
                .fold(0.0f64, f64::max);
            if mass <= tol.rank_low {
                selector.push(false);
            } else if mass >= tol.rank_high {
                selector.push(true);
            } else {
                return Err(Error::ToleranceAmbiguity {
                    context: "block mass of subspace".into(),
                    value: mass,
                    low: tol.rank_low,
                    high: tol.rank_high,
                });
            }
        }
        Ok(selector)
    }

    /// Two-sided annihilator of a subspace inside this algebra:
    /// `{a : a s = 0 and s a = 0 for all s}`.
    pub fn annihilator(&self, of: &MatrixSubspace, tol: &Tolerances) -> Result<MatrixSubspace> {
        let mut ops: Vec<Box<dyn Fn(&Mat) -> Mat>> = Vec::new();
        for s in of.basis() {
            let left = s.clone();
            ops.push(Box::new(move |x: &Mat| x * &left));
            let right = s.clone();
            ops.push(Box::new(move |x: &Mat| &right * x));
        }
        let op_refs: Vec<&dyn Fn(&Mat) -> Mat> = ops.iter().map(|b| b.as_ref()).collect();
        nullspace_within(&op_refs, self.span.basis(), tol, "annihilator")
    }

    /// Whether an ideal is essential (meets every nonzero ideal), decided by
    /// two independent routes: the annihilator vanishes, and the selector is
    /// full. Disagreement is reported, not resolved.
    pub fn is_essential(&self, ideal: &Ideal, tol: &Tolerances) -> Result<bool> {
        let ann = self.annihilator(&ideal.span, tol)?;
        let by_annihilator = ann.dim() == 0;
        let by_selector = ideal.is_full();
        if by_annihilator != by_selector {
            return Err(Error::InternalInconsistency {
                context: "essential ideal".into(),
                detail: format!(
                    "annihilator dimension {} vs selector {:?}",
                    ann.dim(),
                    ideal.selector
                ),
            });
        }
        Ok(by_annihilator)
    }

    /// Simplicity and primeness. Both reduce to having a single block; for
    /// small lattices primeness is additionally checked by multiplying ideal
    /// pairs, and the two answers must agree.
    pub fn classify(&self, tol: &Tolerances) -> Result<AlgebraClass> {
        let k = self.num_blocks();
        let by_blocks = k == 1;
        if k <= 4 {
            let lattice = self.ideal_lattice(tol)?;
            let mut prime = true;
            'outer: for a in &lattice {
                for b in &lattice {
                    let prod = a.span.product(&b.span, tol, "ideal pair product")?;
                    if prod.dim() == 0 {
                        prime = false;
                        break 'outer;
                    }
                }
            }
            if prime != by_blocks {
                return Err(Error::InternalInconsistency {
                    context: "primeness".into(),
                    detail: format!(
                        "ideal-pair route says {prime}, block count {k} says {by_blocks}"
                    ),
                });
            }
        }
        Ok(AlgebraClass {
            simple: by_blocks,
            prime: by_blocks,
        })
    }

    /// The hereditary corner `p A p` as an algebra with unit `p`.
    pub fn corner(&self, p: &Mat, tol: &Tolerances) -> Result<FdAlgebra> {
        check_projection(p, tol)?;
        if !self.contains(p, tol, "corner projection")? {
            return Err(Error::NotInsideAlgebra {
                detail: format!(
                    "corner projection has residual {:.3e} against the algebra",
                    self.span.relative_residual(p)
                ),
            });
        }
        let compressed: Vec<Mat> = self.span.basis().iter().map(|b| &(p * b) * p).collect();
        let span = MatrixSubspace::span(self.ambient, self.ambient, &compressed, tol, "corner span")?;
        FdAlgebra::from_validated(self.ambient, p.clone(), span, tol)
    }

    /// For a projection `q` in the algebra, its rank inside each abstract
    /// block `M_{n_i}` (so `0 <= r_i <= n_i`). Ambient traces are divided by
    /// the block multiplicities and must come out integral.
    pub fn block_ranks(&self, q: &Mat, tol: &Tolerances) -> Result<Vec<usize>> {
        check_projection(q, tol)?;
        if !self.contains(q, tol, "ranked projection")? {
            return Err(Error::NotInsideAlgebra {
                detail: "projection to rank lies outside the algebra".into(),
            });
        }
        let mut ranks = Vec::with_capacity(self.num_blocks());
        for (i, p) in self.central.projections.iter().enumerate() {
            let t = (p * q).trace().re / self.central.block_mults[i] as f64;
            let r = t.round();
            if (t - r).abs() > 1e-6 || r < -0.5 || r as usize > self.central.block_dims[i] {
                return Err(Error::InternalInconsistency {
                    context: "block ranks".into(),
                    detail: format!("block {i} trace ratio {t} is not an admissible integer"),
                });
            }
            ranks.push(r as usize);
        }
        Ok(ranks)
    }

    /// A maximal family of pairwise orthogonal minimal projections in block
    /// `i`, summing to the block's central projection. Extracted from a
    /// generic hermitian corner element and validated against the block data.
    pub fn block_minimal_projections(&self, block: usize, tol: &Tolerances) -> Result<Vec<Mat>> {
        let p = &self.central.projections[block];
        let n = self.central.block_dims[block];
        let m = self.central.block_mults[block];
        let compressed: Vec<Mat> = self.span.basis().iter().map(|b| &(p * b) * p).collect();
        let corner =
            MatrixSubspace::span(self.ambient, self.ambient, &compressed, tol, "block corner")?;
        let salt = SALT_BLOCK_FAMILY.wrapping_add(block as u64);
        for attempt in 0..MAX_DRAWS {
            let mut rng = tol.rng(salt, attempt);
            let mut h = Mat::zeros(self.ambient, self.ambient);
            for b in corner.basis() {
                let re: f64 = rng.sample(StandardNormal);
                let im: f64 = rng.sample(StandardNormal);
                h = &h + &b.scale(C64::new(re, im));
            }
            h = (&h + &h.adjoint()).scale(C64::new(0.5, 0.0));
            let norm = h.hs_norm();
            if norm <= tol.rank_low {
                continue;
            }
            h = h.scale(C64::new(1.0 / norm, 0.0));
            let shifted = &h + &p.scale(C64::new(2.0, 0.0));
            let clusters = match eig_hermitian(&shifted, tol) {
                Ok(c) => c,
                Err(Error::DegenerateSpectrum { .. }) => continue,
                Err(e) => return Err(e),
            };
            let family: Vec<Mat> = clusters
                .into_iter()
                .filter(|c| c.value > 0.5)
                .map(|c| c.projection)
                .collect();
            if family.len() != n {
                continue;
            }
            let mut sum = Mat::zeros(self.ambient, self.ambient);
            let mut ok = true;
            for q in &family {
                let t = q.trace().re;
                if (t - m as f64).abs() > 1e-6 {
                    ok = false;
                    break;
                }
                sum = &sum + q;
            }
            if !ok || sum.dist(p) > tol.rank_high {
                continue;
            }
            return Ok(family);
        }
        Err(Error::InternalInconsistency {
            context: "block minimal projections".into(),
            detail: format!("no generic corner element split block {block} after {MAX_DRAWS} draws"),
        })
    }
}

fn check_unit(unit: &Mat, span: &MatrixSubspace, tol: &Tolerances) -> Result<()> {
    let u2 = unit * unit;
    if u2.dist(unit) > tol.membership || unit.adjoint().dist(unit) > tol.membership {
        return Err(Error::BadUnit {
            detail: "unit is not a self-adjoint idempotent".into(),
        });
    }
    if !span.contains(unit, tol, "unit membership")? {
        return Err(Error::BadUnit {
            detail: "unit lies outside the span".into(),
        });
    }
    for (k, b) in span.basis().iter().enumerate() {
        let left = (unit * b).dist(b);
        let right = (b * unit).dist(b);
        if left > tol.membership || right > tol.membership {
            return Err(Error::BadUnit {
                detail: format!(
                    "unit does not act as identity on basis element {k} (deviations {left:.3e}, {right:.3e})"
                ),
            });
        }
    }
    Ok(())
}

/// Check that `p` is a self-adjoint idempotent.
pub fn check_projection(p: &Mat, tol: &Tolerances) -> Result<()> {
    if p.rows() != p.cols() {
        return Err(Error::NotAProjection {
            detail: format!("matrix is {}x{}", p.rows(), p.cols()),
        });
    }
    let idem = (&(p * p)).dist(p);
    let herm = p.adjoint().dist(p);
    if idem > tol.membership || herm > tol.membership {
        return Err(Error::NotAProjection {
            detail: format!("idempotency deviation {idem:.3e}, hermiticity deviation {herm:.3e}"),
        });
    }
    Ok(())
}

/// Compute the center, the minimal central projections, and the block data.
fn central_decomposition(
    unit: &Mat,
    span: &MatrixSubspace,
    tol: &Tolerances,
) -> Result<CentralData> {
    let ambient = unit.rows();
    let basis = span.basis();
    let mut ops: Vec<Box<dyn Fn(&Mat) -> Mat>> = Vec::new();
    for b in basis {
        let bb = b.clone();
        ops.push(Box::new(move |x: &Mat| &(&bb * x) - &(x * &bb)));
    }
    let op_refs: Vec<&dyn Fn(&Mat) -> Mat> = ops.iter().map(|b| b.as_ref()).collect();
    let center = nullspace_within(&op_refs, basis, tol, "center")?;
    let k = center.dim();
    if k == 0 {
        return Err(Error::InternalInconsistency {
            context: "central decomposition".into(),
            detail: "center is zero-dimensional (unit should always be central)".into(),
        });
    }
    let unit_rank = {
        let t = unit.trace().re;
        let r = t.round();
        if (t - r).abs() > 1e-6 {
            return Err(Error::BadUnit {
                detail: format!("unit trace {t} is not integral"),
            });
        }
        r as usize
    };

    'attempts: for attempt in 0..MAX_DRAWS {
        let mut rng = tol.rng(SALT_CENTRAL, attempt);
        let mut z = Mat::zeros(ambient, ambient);
        for b in center.basis() {
            let re: f64 = rng.sample(StandardNormal);
            let im: f64 = rng.sample(StandardNormal);
            z = &z + &b.scale(C64::new(re, im));
        }
        let mut h = (&z + &z.adjoint()).scale(C64::new(0.5, 0.0));
        let norm = h.hs_norm();
        if norm <= tol.rank_low {
            continue;
        }
        h = h.scale(C64::new(1.0 / norm, 0.0));
        // Shift the corner spectrum to [1, 3]; the ambient complement of the
        // unit stays at 0 and separates by a gap of at least 1.
        let shifted = &h + &unit.scale(C64::new(2.0, 0.0));
        let clusters = match eig_hermitian(&shifted, tol) {
            Ok(c) => c,
            Err(Error::DegenerateSpectrum { .. }) => continue,
            Err(e) => return Err(e),
        };
        let mut candidates: Vec<Mat> = Vec::new();
        let mut complement_rank = 0usize;
        for c in clusters {
            if c.value > 0.5 {
                candidates.push(c.projection);
            } else {
                complement_rank += c.projection.trace().re.round() as usize;
            }
        }
        if complement_rank != ambient - unit_rank || candidates.len() != k {
            continue;
        }
        for p in &candidates {
            match span.contains(p, tol, "central projection membership") {
                Ok(true) => {}
                Ok(false) => {
                    return Err(Error::InternalInconsistency {
                        context: "central decomposition".into(),
                        detail: "a spectral projection of a central element left the algebra"
                            .into(),
                    })
                }
                Err(e) if e.is_ambiguity() => continue 'attempts,
                Err(e) => return Err(e),
            }
            let central_dev = basis
                .iter()
                .map(|b| (&(b * p) - &(p * b)).hs_norm())
                .fold(0.0f64, f64::max);
            if central_dev > tol.rank_high {
                return Err(Error::InternalInconsistency {
                    context: "central decomposition".into(),
                    detail: format!("extracted projection fails centrality by {central_dev:.3e}"),
                });
            }
        }
        // Deterministic order: by the ambient index of the largest diagonal
        // entry, largest entry first on collisions.
        candidates.sort_by(|a, b| {
            let key = |p: &Mat| {
                let mut best = (0usize, f64::MIN);
                for i in 0..p.rows() {
                    let v = p.at(i, i).re;
                    if v > best.1 {
                        best = (i, v);
                    }
                }
                best
            };
            let (ia, va) = key(a);
            let (ib, vb) = key(b);
            ia.cmp(&ib).then(vb.total_cmp(&va))
        });

        let mut block_dims = Vec::with_capacity(k);
        let mut block_mults = Vec::with_capacity(k);
        for p in &candidates {
            let compressed: Vec<Mat> = basis.iter().map(|b| &(p * b) * p).collect();
            let corner =
                MatrixSubspace::span(ambient, ambient, &compressed, tol, "central corner")?;
            let d = corner.dim();
            let n = (d as f64).sqrt().round() as usize;
            if n * n != d {
                return Err(Error::NonIntegralBlock { dim: d });
            }
            let t = p.trace().re;
            let mult = t / n as f64;
            let m = mult.round();
            if (mult - m).abs() > 1e-6 || m < 1.0 {
                return Err(Error::InternalInconsistency {
                    context: "central decomposition".into(),
                    detail: format!("projection trace {t} is not a multiple of block size {n}"),
                });
            }
            block_dims.push(n);
            block_mults.push(m as usize);
        }
        let dim_total: usize = block_dims.iter().map(|&n| n * n).sum();
        if dim_total != span.dim() {
            return Err(Error::InternalInconsistency {
                context: "central decomposition".into(),
                detail: format!(
                    "blocks {block_dims:?} account for dimension {dim_total}, span has {}",
                    span.dim()
                ),
            });
        }
        let rank_total: usize = block_dims
            .iter()
            .zip(&block_mults)
            .map(|(&n, &m)| n * m)
            .sum();
        if rank_total != unit_rank {
            return Err(Error::InternalInconsistency {
                context: "central decomposition".into(),
                detail: format!(
                    "blocks {block_dims:?} x {block_mults:?} cover rank {rank_total}, unit has {unit_rank}"
                ),
            });
        }
        return Ok(CentralData {
            center,
            projections: candidates,
            block_dims,
            block_mults,
        });
    }
    Err(Error::InternalInconsistency {
        context: "central decomposition".into(),
        detail: format!("no generic central element separated the blocks after {MAX_DRAWS} draws"),
    })
}
