//! Linear subspaces of a matrix space, carried as orthonormal bases under the
//! Hilbert-Schmidt inner product.
//!
//! Ranks and nullspaces are decided by the pivot magnitudes of a
//! column-pivoted Householder factorization of stacked coordinate matrices.
//! Every decision uses the two-threshold policy from [`Tolerances`]: values
//! inside the open gray zone abort the computation with
//! [`Error::ToleranceAmbiguity`] rather than silently rounding.

use crate::mat::{C64, Mat};
use crate::{Error, Result, Tolerances};

/// Result of comparing two subspaces of the same matrix space.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SubspaceOrder {
    Equal,
    LeftInsideRight,
    RightInsideLeft,
    Incomparable,
}

/// A subspace of the `rows x cols` complex matrices with an orthonormal basis.
#[derive(Debug, Clone)]
pub struct MatrixSubspace {
    rows: usize,
    cols: usize,
    basis: Vec<Mat>,
}

impl MatrixSubspace {
    /// The zero subspace of the given matrix space.
    pub fn zero(rows: usize, cols: usize) -> MatrixSubspace {
        MatrixSubspace {
            rows,
            cols,
            basis: Vec::new(),
        }
    }

    /// Wrap a basis that is already orthonormal (checked in debug builds).
    pub fn from_orthonormal(rows: usize, cols: usize, basis: Vec<Mat>) -> MatrixSubspace {
        #[cfg(debug_assertions)]
        for (i, a) in basis.iter().enumerate() {
            for (j, b) in basis.iter().enumerate() {
                let g = a.hs_dot(b);
                let expect = if i == j { 1.0 } else { 0.0 };
                debug_assert!(
                    (g - C64::new(expect, 0.0)).norm() < 1e-8,
                    "basis not orthonormal at ({i},{j}): {g}"
                );
            }
        }
        MatrixSubspace { rows, cols, basis }
    }

    /// Orthonormalize the span of `mats`.
    ///
    /// Implemented as a column-pivoted Householder factorization of the
    /// stacked coordinate matrix. A pivot of magnitude at least
    /// `rank_high * scale` is accepted, the factorization stops once the
    /// largest remaining column sits at or below `rank_low * scale`, and a
    /// leading column strictly between the bounds is ambiguous; `scale` is
    /// the largest input norm.
    ///
    /// All data in this library is assembled from orthonormal bases and
    /// unitaries, so meaningful magnitudes are of order one. Inputs whose norm
    /// is at most `rank_low` outright are therefore dropped as zeros (norms
    /// strictly between `rank_low` and `rank_high` are ambiguous), which keeps
    /// pure roundoff from being rescaled into basis vectors.
    pub fn span(
        rows: usize,
        cols: usize,
        mats: &[Mat],
        tol: &Tolerances,
        context: &str,
    ) -> Result<MatrixSubspace> {
        for m in mats {
            if m.rows() != rows || m.cols() != cols {
                return Err(Error::ShapeMismatch {
                    context: context.into(),
                    detail: format!(
                        "expected {}x{}, found {}x{}",
                        rows,
                        cols,
                        m.rows(),
                        m.cols()
                    ),
                });
            }
        }
        let mut kept: Vec<&Mat> = Vec::with_capacity(mats.len());
        for m in mats {
            let n = m.hs_norm();
            if n <= tol.rank_low {
                continue;
            }
            if n < tol.rank_high {
                return Err(Error::ToleranceAmbiguity {
                    context: format!("{context}: norm of span input"),
                    value: n,
                    low: tol.rank_low,
                    high: tol.rank_high,
                });
            }
            kept.push(m);
        }
        let scale = kept.iter().map(|m| m.hs_norm()).fold(0.0f64, f64::max);
        if kept.is_empty() {
            return Ok(MatrixSubspace::zero(rows, cols));
        }
        let dim = rows * cols;
        let columns: Vec<Vec<C64>> = kept.iter().map(|m| m.to_vec()).collect();
        let qr = pivoted_qr(
            columns,
            dim,
            scale,
            tol,
            &format!("{context}: pivot of span"),
        )?;
        let basis = qr
            .basis_columns()
            .into_iter()
            .map(|col| Mat::from_fn(rows, cols, |i, j| col[i * cols + j]))
            .collect();
        Ok(MatrixSubspace { rows, cols, basis })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn is_zero(&self) -> bool {
        self.basis.is_empty()
    }

    pub fn basis(&self) -> &[Mat] {
        &self.basis
    }

    /// Orthogonal projection of `m` onto the subspace.
    pub fn project(&self, m: &Mat) -> Mat {
        let mut acc = Mat::zeros(self.rows, self.cols);
        for b in &self.basis {
            acc = &acc + &b.scale(b.hs_dot(m));
        }
        acc
    }

    /// Norm of the component of `m` orthogonal to the subspace, relative to
    /// the norm of `m` (zero matrices are members by convention).
    pub fn relative_residual(&self, m: &Mat) -> f64 {
        let n = m.hs_norm();
        if n == 0.0 {
            return 0.0;
        }
        (m - &self.project(m)).hs_norm() / n
    }

    /// Three-way membership test: residuals at most `membership` are in,
    /// residuals at least `rank_high` are out, anything between is ambiguous.
    pub fn contains(&self, m: &Mat, tol: &Tolerances, context: &str) -> Result<bool> {
        let r = self.relative_residual(m);
        if r <= tol.membership {
            Ok(true)
        } else if r >= tol.rank_high {
            Ok(false)
        } else {
            Err(Error::ToleranceAmbiguity {
                context: format!("{context}: membership residual"),
                value: r,
                low: tol.membership,
                high: tol.rank_high,
            })
        }
    }

    /// Largest relative membership residual over a family of matrices (used as
    /// deviation evidence for inclusion checks).
    pub fn max_residual(&self, mats: &[Mat]) -> f64 {
        mats.iter()
            .map(|m| self.relative_residual(m))
            .fold(0.0, f64::max)
    }

    /// Set comparison of two subspaces via mutual membership of basis vectors.
    pub fn compare(&self, other: &MatrixSubspace, tol: &Tolerances) -> Result<SubspaceOrder> {
        let left_in = self
            .basis
            .iter()
            .map(|b| other.contains(b, tol, "compare"))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|x| x);
        let right_in = other
            .basis
            .iter()
            .map(|b| self.contains(b, tol, "compare"))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .all(|x| x);
        Ok(match (left_in, right_in) {
            (true, true) => SubspaceOrder::Equal,
            (true, false) => SubspaceOrder::LeftInsideRight,
            (false, true) => SubspaceOrder::RightInsideLeft,
            (false, false) => SubspaceOrder::Incomparable,
        })
    }

    /// Span of all pairwise products `s * t`.
    pub fn product(
        &self,
        other: &MatrixSubspace,
        tol: &Tolerances,
        context: &str,
    ) -> Result<MatrixSubspace> {
        if self.cols != other.rows {
            return Err(Error::ShapeMismatch {
                context: context.into(),
                detail: format!(
                    "cannot multiply {}x{} by {}x{}",
                    self.rows, self.cols, other.rows, other.cols
                ),
            });
        }
        let mut prods = Vec::with_capacity(self.dim() * other.dim());
        for s in &self.basis {
            for t in &other.basis {
                prods.push(s * t);
            }
        }
        MatrixSubspace::span(self.rows, other.cols, &prods, tol, context)
    }
}

/// Common nullspace of a family of linear operators restricted to the span of
/// an orthonormal `basis`: the subspace of all `sum c_k basis[k]` with
/// `op(sum c_k basis[k]) = 0` for every op.
///
/// A coefficient vector annihilates every operator exactly when it is
/// orthogonal to all conjugated rows of the stacked operator matrix, so the
/// nullspace is the orthogonal complement of the column span of the stack's
/// adjoint. That complement comes out of the same pivoted factorization that
/// backs [`MatrixSubspace::span`]: the coefficient vectors are orthonormal
/// and the returned basis is orthonormal as well.
pub fn nullspace_within(
    ops: &[&dyn Fn(&Mat) -> Mat],
    basis: &[Mat],
    tol: &Tolerances,
    context: &str,
) -> Result<MatrixSubspace> {
    assert!(!basis.is_empty(), "nullspace_within needs a nonempty basis");
    let rows = basis[0].rows();
    let cols = basis[0].cols();
    if ops.is_empty() {
        return Ok(MatrixSubspace::from_orthonormal(rows, cols, basis.to_vec()));
    }
    let images: Vec<Vec<Mat>> = basis
        .iter()
        .map(|b| ops.iter().map(|op| op(b)).collect())
        .collect();
    let out_len: usize = images[0].iter().map(|m| m.rows() * m.cols()).sum();
    let n = basis.len();
    // Column `r` of the adjoint stack collects the conjugated `r`-th output
    // coordinate across all basis elements.
    let mut adj_cols = vec![vec![C64::new(0.0, 0.0); n]; out_len];
    for (j, imgs) in images.iter().enumerate() {
        let mut r = 0usize;
        for img in imgs {
            for v in img.to_vec() {
                adj_cols[r][j] = v.conj();
                r += 1;
            }
        }
    }
    let scale = adj_cols
        .iter()
        .map(|c| tail_norm(c, 0))
        .fold(0.0f64, f64::max);

    // Operators are built from unitaries and orthonormal elements, so an
    // operator stack whose largest row sits at or below rank_low is zero
    // outright and annihilates the whole basis.
    if scale <= tol.rank_low {
        return Ok(MatrixSubspace::from_orthonormal(rows, cols, basis.to_vec()));
    }
    if scale < tol.rank_high {
        return Err(Error::ToleranceAmbiguity {
            context: format!("{context}: scale of stacked operator"),
            value: scale,
            low: tol.rank_low,
            high: tol.rank_high,
        });
    }

    let qr = pivoted_qr(
        adj_cols,
        n,
        scale,
        tol,
        &format!("{context}: pivot of stacked operator"),
    )?;
    let mut out = Vec::with_capacity(n - qr.rank);
    for c in qr.complement_columns() {
        let mut acc = Mat::zeros(rows, cols);
        for (k, b) in basis.iter().enumerate() {
            acc = &acc + &b.scale(c[k]);
        }
        out.push(acc);
    }
    Ok(MatrixSubspace::from_orthonormal(rows, cols, out))
}

/// The space of intertwiners `{w : lhs[k] * w = w * rhs[k] for all k}`.
pub fn intertwiners(lhs: &[Mat], rhs: &[Mat], tol: &Tolerances) -> Result<MatrixSubspace> {
    assert_eq!(lhs.len(), rhs.len(), "operator lists must pair up");
    let p = lhs.first().map_or(0, Mat::rows);
    let q = rhs.first().map_or(0, Mat::rows);
    assert!(p > 0 && q > 0, "intertwiners need at least one operator pair");
    let mut units = Vec::with_capacity(p * q);
    for i in 0..p {
        for j in 0..q {
            units.push(Mat::unit(p, q, i, j));
        }
    }
    let ops: Vec<Box<dyn Fn(&Mat) -> Mat>> = lhs
        .iter()
        .zip(rhs.iter())
        .map(|(l, r)| {
            let l = l.clone();
            let r = r.clone();
            Box::new(move |w: &Mat| &(&l * w) - &(w * &r)) as Box<dyn Fn(&Mat) -> Mat>
        })
        .collect();
    let op_refs: Vec<&dyn Fn(&Mat) -> Mat> = ops.iter().map(|b| b.as_ref()).collect();
    nullspace_within(&op_refs, &units, tol, "intertwiners")
}

/// Column-pivoted Householder factorization of a set of coordinate columns.
///
/// At each step the column with the largest remaining tail norm becomes the
/// pivot, so the pivot magnitudes decrease and drive the rank decision the
/// way singular values would. The orthonormal factor is kept as reflectors:
/// its leading columns span the accepted pivot columns by construction, which
/// is the property rank decisions here depend on (library SVDs have been
/// observed returning singular vectors outside the column span when a stack
/// of nearly parallel columns is close to rank deficient).
struct PivotedQr {
    len: usize,
    rank: usize,
    reflectors: Vec<Vec<C64>>,
}

impl PivotedQr {
    /// Column `t` of the full orthogonal factor.
    fn q_column(&self, t: usize) -> Vec<C64> {
        let mut v = vec![C64::new(0.0, 0.0); self.len];
        v[t] = C64::new(1.0, 0.0);
        for h in self.reflectors.iter().rev() {
            reflect(h, &mut v);
        }
        v
    }

    /// Orthonormal basis of the span of the accepted pivot columns.
    fn basis_columns(&self) -> Vec<Vec<C64>> {
        (0..self.rank).map(|t| self.q_column(t)).collect()
    }

    /// Orthonormal basis of the orthogonal complement of the column span.
    fn complement_columns(&self) -> Vec<Vec<C64>> {
        (self.rank..self.len).map(|t| self.q_column(t)).collect()
    }
}

/// Factor `columns` (each of length `len`) by column-pivoted Householder
/// reflections. A pivot tail norm of at least `rank_high * scale` is
/// accepted, the factorization stops once the largest remaining tail sits at
/// or below `rank_low * scale`, and a leading tail strictly between the
/// bounds aborts with [`Error::ToleranceAmbiguity`].
fn pivoted_qr(
    mut columns: Vec<Vec<C64>>,
    len: usize,
    scale: f64,
    tol: &Tolerances,
    context: &str,
) -> Result<PivotedQr> {
    debug_assert!(columns.iter().all(|c| c.len() == len));
    let n = columns.len();
    let mut reflectors: Vec<Vec<C64>> = Vec::new();
    for t in 0..len.min(n) {
        let mut pivot = t;
        let mut lead = tail_norm(&columns[t], t);
        for (j, col) in columns.iter().enumerate().skip(t + 1) {
            let v = tail_norm(col, t);
            if v > lead {
                pivot = j;
                lead = v;
            }
        }
        if lead <= tol.rank_low * scale {
            break;
        }
        if lead < tol.rank_high * scale {
            return Err(Error::ToleranceAmbiguity {
                context: context.into(),
                value: lead / scale,
                low: tol.rank_low,
                high: tol.rank_high,
            });
        }
        columns.swap(t, pivot);
        let mut h = vec![C64::new(0.0, 0.0); len];
        h[t..].copy_from_slice(&columns[t][t..]);
        // Shift the leading entry away from zero along its own phase, so the
        // reflector never suffers cancellation.
        let phase = if h[t].norm() > 0.0 {
            h[t].unscale(h[t].norm())
        } else {
            C64::new(1.0, 0.0)
        };
        h[t] += phase.scale(lead);
        let hn = tail_norm(&h, t);
        for z in &mut h[t..] {
            *z = z.unscale(hn);
        }
        for col in columns.iter_mut().skip(t) {
            reflect(&h, col);
        }
        reflectors.push(h);
    }
    let rank = reflectors.len();
    Ok(PivotedQr {
        len,
        rank,
        reflectors,
    })
}

/// Apply the Householder reflection `I - 2 h h*` (with `h` a unit vector) to
/// `v` in place.
fn reflect(h: &[C64], v: &mut [C64]) {
    let mut w = C64::new(0.0, 0.0);
    for (a, b) in h.iter().zip(v.iter()) {
        w += a.conj() * b;
    }
    if w.norm_sqr() == 0.0 {
        return;
    }
    let w2 = w.scale(2.0);
    for (a, b) in h.iter().zip(v.iter_mut()) {
        *b -= w2 * a;
    }
}

fn tail_norm(col: &[C64], from: usize) -> f64 {
    col[from..].iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt()
}
