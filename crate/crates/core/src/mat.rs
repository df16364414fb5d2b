//! Dense complex matrices with the Hilbert-Schmidt geometry used everywhere
//! else, plus the clustered hermitian eigendecomposition.
//!
//! Matrices serialize as row-major nested arrays with complex entries encoded
//! as `[re, im]` pairs.

use nalgebra::DMatrix;
use num_complex::Complex64;
use serde::de::{self, SeqAccess, Visitor};
use serde::ser::SerializeSeq;
use serde::{Deserialize, Deserializer, Serialize, Serializer};

use crate::{Error, Result, Tolerances};

/// Complex scalar used throughout.
pub type C64 = Complex64;

/// A dense complex matrix. Wraps `nalgebra::DMatrix` and fixes the inner
/// product to Hilbert-Schmidt: `<a, b> = trace(a* b)`.
#[derive(Clone, PartialEq)]
pub struct Mat {
    inner: DMatrix<C64>,
}

impl std::fmt::Debug for Mat {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Mat({}x{})", self.rows(), self.cols())?;
        if self.rows() <= 8 && self.cols() <= 8 {
            writeln!(f)?;
            for i in 0..self.rows() {
                write!(f, "  [")?;
                for j in 0..self.cols() {
                    let z = self.at(i, j);
                    write!(f, " {:+.4}{:+.4}i", z.re, z.im)?;
                }
                writeln!(f, " ]")?;
            }
        }
        Ok(())
    }
}

impl Mat {
    pub fn from_inner(inner: DMatrix<C64>) -> Mat {
        Mat { inner }
    }

    pub fn inner(&self) -> &DMatrix<C64> {
        &self.inner
    }

    pub fn zeros(rows: usize, cols: usize) -> Mat {
        Mat {
            inner: DMatrix::zeros(rows, cols),
        }
    }

    pub fn identity(n: usize) -> Mat {
        Mat {
            inner: DMatrix::identity(n, n),
        }
    }

    /// Matrix unit `e_{ij}` of the given shape.
    pub fn unit(rows: usize, cols: usize, i: usize, j: usize) -> Mat {
        let mut m = DMatrix::zeros(rows, cols);
        m[(i, j)] = C64::new(1.0, 0.0);
        Mat { inner: m }
    }

    pub fn from_fn(rows: usize, cols: usize, f: impl FnMut(usize, usize) -> C64) -> Mat {
        Mat {
            inner: DMatrix::from_fn(rows, cols, f),
        }
    }

    /// Build from row-major real data (convenience for tests and presets).
    pub fn from_rows_re(rows: &[&[f64]]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat::from_fn(r, c, |i, j| C64::new(rows[i][j], 0.0))
    }

    /// Build from row-major complex data.
    pub fn from_rows(rows: &[Vec<C64>]) -> Mat {
        let r = rows.len();
        let c = rows.first().map_or(0, |x| x.len());
        Mat::from_fn(r, c, |i, j| rows[i][j])
    }

    pub fn rows(&self) -> usize {
        self.inner.nrows()
    }

    pub fn cols(&self) -> usize {
        self.inner.ncols()
    }

    pub fn at(&self, i: usize, j: usize) -> C64 {
        self.inner[(i, j)]
    }

    pub fn set(&mut self, i: usize, j: usize, z: C64) {
        self.inner[(i, j)] = z;
    }

    pub fn adjoint(&self) -> Mat {
        Mat {
            inner: self.inner.adjoint(),
        }
    }

    pub fn scale(&self, z: C64) -> Mat {
        Mat {
            inner: &self.inner * z,
        }
    }

    pub fn trace(&self) -> C64 {
        self.inner.trace()
    }

    /// Hilbert-Schmidt inner product `trace(self* other)`.
    pub fn hs_dot(&self, other: &Mat) -> C64 {
        debug_assert_eq!((self.rows(), self.cols()), (other.rows(), other.cols()));
        let mut acc = C64::new(0.0, 0.0);
        for (a, b) in self.inner.iter().zip(other.inner.iter()) {
            acc += a.conj() * b;
        }
        acc
    }

    pub fn hs_norm(&self) -> f64 {
        self.hs_dot(self).re.sqrt()
    }

    /// Hilbert-Schmidt distance to another matrix.
    pub fn dist(&self, other: &Mat) -> f64 {
        (self - other).hs_norm()
    }

    /// Kronecker product; the left factor indexes the outer blocks.
    pub fn kron(&self, other: &Mat) -> Mat {
        Mat {
            inner: self.inner.kronecker(&other.inner),
        }
    }

    /// Extract the `(bi, bj)` block of size `n x n` from a matrix laid out as
    /// a `d x d` grid of `n x n` blocks.
    pub fn block(&self, n: usize, bi: usize, bj: usize) -> Mat {
        Mat {
            inner: self.inner.view((bi * n, bj * n), (n, n)).into_owned(),
        }
    }

    /// Partial trace over the outer (left) Kronecker factor: for a matrix laid
    /// out as a `d x d` grid of blocks, the sum of the diagonal blocks.
    pub fn partial_trace_left(&self, d: usize) -> Mat {
        assert!(d > 0 && self.rows() % d == 0 && self.rows() == self.cols());
        let n = self.rows() / d;
        let mut acc = Mat::zeros(n, n);
        for i in 0..d {
            acc = &acc + &self.block(n, i, i);
        }
        acc
    }

    /// Relative deviation from being hermitian.
    pub fn hermitian_deviation(&self) -> f64 {
        let n = self.hs_norm();
        if n == 0.0 {
            return 0.0;
        }
        self.dist(&self.adjoint()) / n
    }

    /// Flatten into a column of length `rows*cols` (row-major order).
    pub fn to_vec(&self) -> Vec<C64> {
        let mut v = Vec::with_capacity(self.rows() * self.cols());
        for i in 0..self.rows() {
            for j in 0..self.cols() {
                v.push(self.at(i, j));
            }
        }
        v
    }
}

impl std::ops::Add for &Mat {
    type Output = Mat;
    fn add(self, rhs: &Mat) -> Mat {
        Mat {
            inner: &self.inner + &rhs.inner,
        }
    }
}

impl std::ops::Sub for &Mat {
    type Output = Mat;
    fn sub(self, rhs: &Mat) -> Mat {
        Mat {
            inner: &self.inner - &rhs.inner,
        }
    }
}

impl std::ops::Mul for &Mat {
    type Output = Mat;
    fn mul(self, rhs: &Mat) -> Mat {
        Mat {
            inner: &self.inner * &rhs.inner,
        }
    }
}

impl std::ops::Neg for &Mat {
    type Output = Mat;
    fn neg(self) -> Mat {
        Mat {
            inner: -&self.inner,
        }
    }
}

// --- serialization: row-major nested arrays of [re, im] pairs ---

impl Serialize for Mat {
    fn serialize<S: Serializer>(&self, serializer: S) -> std::result::Result<S::Ok, S::Error> {
        let mut rows = serializer.serialize_seq(Some(self.rows()))?;
        for i in 0..self.rows() {
            let row: Vec<[f64; 2]> = (0..self.cols())
                .map(|j| {
                    let z = self.at(i, j);
                    [z.re, z.im]
                })
                .collect();
            rows.serialize_element(&row)?;
        }
        rows.end()
    }
}

impl<'de> Deserialize<'de> for Mat {
    fn deserialize<D: Deserializer<'de>>(deserializer: D) -> std::result::Result<Mat, D::Error> {
        struct MatVisitor;
        impl<'de> Visitor<'de> for MatVisitor {
            type Value = Mat;
            fn expecting(&self, f: &mut std::fmt::Formatter) -> std::fmt::Result {
                f.write_str("a non-empty rectangular array of rows of [re, im] pairs")
            }
            fn visit_seq<A: SeqAccess<'de>>(
                self,
                mut seq: A,
            ) -> std::result::Result<Mat, A::Error> {
                let mut rows: Vec<Vec<[f64; 2]>> = Vec::new();
                while let Some(row) = seq.next_element::<Vec<[f64; 2]>>()? {
                    rows.push(row);
                }
                if rows.is_empty() || rows[0].is_empty() {
                    return Err(de::Error::custom("matrix must be non-empty"));
                }
                let cols = rows[0].len();
                if rows.iter().any(|r| r.len() != cols) {
                    return Err(de::Error::custom("matrix rows have unequal lengths"));
                }
                Ok(Mat::from_fn(rows.len(), cols, |i, j| {
                    C64::new(rows[i][j][0], rows[i][j][1])
                }))
            }
        }
        deserializer.deserialize_seq(MatVisitor)
    }
}

/// One spectral cluster of a hermitian matrix: the clustered eigenvalue and
/// the orthogonal projection onto the corresponding invariant subspace.
#[derive(Debug, Clone)]
pub struct EigCluster {
    pub value: f64,
    pub projection: Mat,
}

/// Eigendecomposition of a hermitian matrix with eigenvalues grouped into
/// well-separated clusters, returned in ascending order of eigenvalue.
///
/// A spectrum whose total spread is at most `rank_low * scale` (with `scale`
/// the matrix norm, floored at one) is a single cluster — gaps inside it are
/// roundoff, and scaling thresholds by such a spread would shatter a
/// numerically equal spectrum. A spread strictly between `rank_low * scale`
/// and `rank_high * scale` is reported as [`Error::DegenerateSpectrum`].
/// Beyond that, two adjacent eigenvalues belong to one cluster when their gap
/// is at most `rank_high * spread` and to different clusters when it is at
/// least `eig_gap * spread`; a gap strictly between the two bounds is again
/// degenerate.
pub fn eig_hermitian(h: &Mat, tol: &Tolerances) -> Result<Vec<EigCluster>> {
    if h.rows() != h.cols() {
        return Err(Error::ShapeMismatch {
            context: "eig_hermitian".into(),
            detail: format!("{}x{} is not square", h.rows(), h.cols()),
        });
    }
    let dev = h.hermitian_deviation();
    if dev > tol.membership {
        return Err(Error::NotHermitian { deviation: dev });
    }
    // Work with the hermitization so the decomposition is exactly self-adjoint.
    let sym = (h.inner.clone() + h.inner.adjoint()) * C64::new(0.5, 0.0);
    let (eigenvalues, eigenvectors) = jacobi_hermitian(&sym);
    let n = h.rows();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| eigenvalues[a].total_cmp(&eigenvalues[b]));

    let lo = eigenvalues[order[0]];
    let hi = eigenvalues[order[n - 1]];
    let spread = hi - lo;
    let scale = h.hs_norm().max(1.0);

    // Partition the sorted eigenvalues into clusters.
    let mut boundaries: Vec<usize> = Vec::new(); // index k means a split between k-1 and k
    if spread <= tol.rank_low * scale {
        // Numerically a single eigenvalue.
    } else if spread < tol.rank_high * scale {
        return Err(Error::DegenerateSpectrum {
            context: "eig_hermitian".into(),
            gap: spread,
            low: tol.rank_low * scale,
            high: tol.rank_high * scale,
        });
    } else {
        for k in 1..n {
            let gap = eigenvalues[order[k]] - eigenvalues[order[k - 1]];
            let same = gap <= tol.rank_high * spread;
            let split = gap >= tol.eig_gap * spread;
            match (same, split) {
                (true, _) => {}
                (false, true) => boundaries.push(k),
                (false, false) => {
                    return Err(Error::DegenerateSpectrum {
                        context: "eig_hermitian".into(),
                        gap,
                        low: tol.rank_high * spread,
                        high: tol.eig_gap * spread,
                    })
                }
            }
        }
    }

    let mut clusters = Vec::new();
    let mut start = 0usize;
    for &end in boundaries.iter().chain(std::iter::once(&n)) {
        let idx = &order[start..end];
        let mut proj = DMatrix::<C64>::zeros(n, n);
        let mut value = 0.0;
        for &k in idx {
            let v = eigenvectors.column(k);
            proj += &v * v.adjoint();
            value += eigenvalues[k];
        }
        clusters.push(EigCluster {
            value: value / idx.len() as f64,
            projection: Mat { inner: proj },
        });
        start = end;
    }
    Ok(clusters)
}

/// Eigenvalues and orthonormal eigenvector columns of a hermitian matrix by
/// cyclic complex Jacobi rotations.
///
/// The eigenvector matrix is an accumulated product of exact 2x2 unitaries,
/// so it stays unitary to machine precision and each column is paired with
/// the diagonal entry it produced. (The general-purpose eigensolver of the
/// underlying linear-algebra crate has been observed pairing eigenvectors
/// with the wrong eigenvalues on complex hermitian inputs, so rank and
/// cluster decisions must not go through it.)
fn jacobi_hermitian(a: &DMatrix<C64>) -> (Vec<f64>, DMatrix<C64>) {
    let n = a.nrows();
    let mut m = a.clone();
    let mut v = DMatrix::<C64>::identity(n, n);
    let scale = m.iter().map(|z| z.norm_sqr()).sum::<f64>().sqrt().max(1.0);
    let target = 1e-14 * scale;
    for _sweep in 0..40 {
        let mut off = 0.0f64;
        for p in 0..n {
            for q in (p + 1)..n {
                off += m[(p, q)].norm_sqr();
            }
        }
        if off.sqrt() <= target {
            break;
        }
        for p in 0..n {
            for q in (p + 1)..n {
                let beta = m[(p, q)];
                let babs = beta.norm();
                if babs == 0.0 {
                    continue;
                }
                // Peel the phase off the pivot entry, then a real rotation
                // zeroes it: with tau = (m_qq - m_pp) / (2|beta|), the smaller
                // root of t^2 - 2 tau t - 1 = 0 gives the stable angle.
                let phase = beta.unscale(babs);
                let conj_phase = phase.conj();
                let tau = (m[(q, q)].re - m[(p, p)].re) / (2.0 * babs);
                let t = if tau >= 0.0 {
                    -1.0 / (tau + (1.0 + tau * tau).sqrt())
                } else {
                    1.0 / (-tau + (1.0 + tau * tau).sqrt())
                };
                let c = 1.0 / (1.0 + t * t).sqrt();
                let s = t * c;
                for j in 0..n {
                    let apj = m[(p, j)];
                    let aqj = m[(q, j)];
                    m[(p, j)] = apj.scale(c) + aqj * phase.scale(s);
                    m[(q, j)] = aqj * phase.scale(c) - apj.scale(s);
                }
                for i in 0..n {
                    let aip = m[(i, p)];
                    let aiq = m[(i, q)];
                    m[(i, p)] = aip.scale(c) + aiq * conj_phase.scale(s);
                    m[(i, q)] = aiq * conj_phase.scale(c) - aip.scale(s);
                    let vip = v[(i, p)];
                    let viq = v[(i, q)];
                    v[(i, p)] = vip.scale(c) + viq * conj_phase.scale(s);
                    v[(i, q)] = viq * conj_phase.scale(c) - vip.scale(s);
                }
                m[(p, q)] = C64::new(0.0, 0.0);
                m[(q, p)] = C64::new(0.0, 0.0);
            }
        }
    }
    let values = (0..n).map(|i| m[(i, i)].re).collect();
    (values, v)
}
