//! Finite groups given by multiplication tables, together with complete
//! tables of unitary irreducible representations.
//!
//! Validation is verdict-valued: [`validate_group`] and
//! [`validate_irrep_table`] itemize every violated invariant (with the worst
//! numerical deviation where applicable) instead of stopping at the first.

use num_complex::Complex64;

use crate::mat::{C64, Mat};
use crate::subspace::intertwiners;
use crate::{Error, Result, Tolerances};

/// A finite group presented by its multiplication table. Element `k` of the
/// table is the product `mult[i][j] = element i * element j`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FiniteGroup {
    order: usize,
    mult: Vec<Vec<usize>>,
    identity: usize,
    inverse: Vec<usize>,
    generators: Vec<usize>,
}

impl FiniteGroup {
    /// Build a group from a multiplication table, deriving the identity and
    /// the inverse map. Structural failures (no identity, missing inverses,
    /// ragged table) are reported as [`Error::InvalidInput`]; deeper checks
    /// such as associativity live in [`validate_group`].
    pub fn from_mult_table(mult: Vec<Vec<usize>>, generators: Vec<usize>) -> Result<FiniteGroup> {
        let order = mult.len();
        let bad = |detail: String| Error::InvalidInput {
            what: "group".into(),
            detail,
        };
        if order == 0 {
            return Err(bad("empty multiplication table".into()));
        }
        if mult.iter().any(|row| row.len() != order) {
            return Err(bad("multiplication table is not square".into()));
        }
        if mult.iter().flatten().any(|&x| x >= order) {
            return Err(bad(format!("table entry out of range 0..{order}")));
        }
        let identity = (0..order)
            .find(|&e| (0..order).all(|x| mult[e][x] == x && mult[x][e] == x))
            .ok_or_else(|| bad("no two-sided identity element".into()))?;
        let mut inverse = vec![usize::MAX; order];
        for x in 0..order {
            let inv = (0..order)
                .find(|&y| mult[x][y] == identity && mult[y][x] == identity)
                .ok_or_else(|| bad(format!("element {x} has no two-sided inverse")))?;
            inverse[x] = inv;
        }
        if generators.iter().any(|&g| g >= order) {
            return Err(bad("generator index out of range".into()));
        }
        Ok(FiniteGroup {
            order,
            mult,
            identity,
            inverse,
            generators,
        })
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> usize {
        self.identity
    }

    pub fn mul(&self, a: usize, b: usize) -> usize {
        self.mult[a][b]
    }

    pub fn inv(&self, a: usize) -> usize {
        self.inverse[a]
    }

    pub fn generators(&self) -> &[usize] {
        &self.generators
    }

    pub fn elements(&self) -> std::ops::Range<usize> {
        0..self.order
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a..self.order).all(|b| self.mult[a][b] == self.mult[b][a]))
    }

    /// Subgroup generated by the generator set (always contains the identity).
    fn generated_closure(&self) -> Vec<bool> {
        let mut seen = vec![false; self.order];
        seen[self.identity] = true;
        let mut frontier = vec![self.identity];
        while let Some(x) = frontier.pop() {
            for &g in &self.generators {
                let y = self.mult[g][x];
                if !seen[y] {
                    seen[y] = true;
                    frontier.push(y);
                }
            }
        }
        seen
    }

    /// All homomorphisms onto the cyclic group of order `m`, each given as the
    /// image vector `phi: element -> Z_m`. Brute force is fine at this scale.
    pub fn surjections_onto_cyclic(&self, m: usize) -> Vec<Vec<usize>> {
        assert!(m >= 1 && m <= 4, "only small cyclic quotients are used");
        let mut out = Vec::new();
        let total = m.pow(self.order as u32);
        'candidates: for code in 0..total {
            let mut phi = Vec::with_capacity(self.order);
            let mut c = code;
            for _ in 0..self.order {
                phi.push(c % m);
                c /= m;
            }
            for a in 0..self.order {
                for b in 0..self.order {
                    if (phi[a] + phi[b]) % m != phi[self.mult[a][b]] {
                        continue 'candidates;
                    }
                }
            }
            let mut hit = vec![false; m];
            for &v in &phi {
                hit[v] = true;
            }
            if hit.iter().all(|&h| h) {
                out.push(phi);
            }
        }
        out
    }
}

/// One unitary irreducible representation: a label, its dimension, and one
/// unitary matrix per group element (indexed like the multiplication table).
#[derive(Debug, Clone)]
pub struct Irrep {
    pub label: String,
    pub dim: usize,
    pub matrices: Vec<Mat>,
}

impl Irrep {
    pub fn mat(&self, g: usize) -> &Mat {
        &self.matrices[g]
    }
}

/// A group together with a complete list of its irreducible representations.
#[derive(Debug, Clone)]
pub struct IrrepTable {
    pub group: FiniteGroup,
    pub irreps: Vec<Irrep>,
}

impl IrrepTable {
    pub fn labels(&self) -> Vec<String> {
        self.irreps.iter().map(|p| p.label.clone()).collect()
    }

    pub fn by_label(&self, label: &str) -> Option<&Irrep> {
        self.irreps.iter().find(|p| p.label == label)
    }

    /// Index of the trivial representation, located structurally (dimension
    /// one, every matrix equal to [1]).
    pub fn trivial_index(&self) -> Result<usize> {
        self.irreps
            .iter()
            .position(|p| {
                p.dim == 1
                    && p.matrices
                        .iter()
                        .all(|m| (m.at(0, 0) - C64::new(1.0, 0.0)).norm() < 1e-9)
            })
            .ok_or_else(|| Error::InvalidInput {
                what: "irrep table".into(),
                detail: "table does not contain the trivial representation".into(),
            })
    }

    pub fn trivial_label(&self) -> Result<String> {
        Ok(self.irreps[self.trivial_index()?].label.clone())
    }
}

/// A single violated invariant found during validation.
#[derive(Debug, Clone)]
pub struct ValidationFailure {
    pub what: String,
    pub deviation: Option<f64>,
}

/// Itemized validation verdict.
#[derive(Debug, Clone, Default)]
pub struct ValidationReport {
    pub failures: Vec<ValidationFailure>,
}

impl ValidationReport {
    pub fn is_ok(&self) -> bool {
        self.failures.is_empty()
    }

    fn fail(&mut self, what: impl Into<String>) {
        self.failures.push(ValidationFailure {
            what: what.into(),
            deviation: None,
        });
    }

    fn fail_dev(&mut self, what: impl Into<String>, deviation: f64) {
        self.failures.push(ValidationFailure {
            what: what.into(),
            deviation: Some(deviation),
        });
    }

    /// Collapse into an error (used by parsing paths that need hard failure).
    pub fn into_result(self, what: &str) -> Result<()> {
        if self.is_ok() {
            Ok(())
        } else {
            let detail = self
                .failures
                .iter()
                .map(|f| match f.deviation {
                    Some(d) => format!("{} (deviation {d:.3e})", f.what),
                    None => f.what.clone(),
                })
                .collect::<Vec<_>>()
                .join("; ");
            Err(Error::InvalidInput {
                what: what.into(),
                detail,
            })
        }
    }
}

impl std::fmt::Display for ValidationReport {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.is_ok() {
            return write!(f, "ok");
        }
        for failure in &self.failures {
            match failure.deviation {
                Some(d) => writeln!(f, "- {} (deviation {d:.3e})", failure.what)?,
                None => writeln!(f, "- {}", failure.what)?,
            }
        }
        Ok(())
    }
}

/// Check the group axioms and that the generator set generates.
pub fn validate_group(g: &FiniteGroup) -> ValidationReport {
    let mut report = ValidationReport::default();
    let n = g.order;
    for a in 0..n {
        for b in 0..n {
            for c in 0..n {
                if g.mult[g.mult[a][b]][c] != g.mult[a][g.mult[b][c]] {
                    report.fail(format!("associativity fails at ({a}, {b}, {c})"));
                }
            }
        }
    }
    for x in 0..n {
        if g.mult[g.identity][x] != x || g.mult[x][g.identity] != x {
            report.fail(format!("identity fails on element {x}"));
        }
        let i = g.inverse[x];
        if g.mult[x][i] != g.identity || g.mult[i][x] != g.identity {
            report.fail(format!("inverse fails on element {x}"));
        }
    }
    let closure = g.generated_closure();
    if let Some(missing) = closure.iter().position(|&c| !c) {
        report.fail(format!(
            "generators {:?} do not reach element {missing}",
            g.generators
        ));
    }
    report
}

/// Maximum deviation allowed for the exact representation-theoretic
/// identities (multiplicativity, unitarity, Schur orthogonality).
pub const REP_TOL: f64 = 1e-9;

/// Check that the table is a complete list of pairwise inequivalent unitary
/// irreps: shapes, unitarity, multiplicativity, irreducibility, pairwise
/// inequivalence, Schur orthogonality, and the dimension count
/// `sum d^2 = |G|`.
pub fn validate_irrep_table(table: &IrrepTable, tol: &Tolerances) -> ValidationReport {
    let mut report = validate_group(&table.group);
    let g = &table.group;
    let n = g.order();

    let mut labels: Vec<&str> = table.irreps.iter().map(|p| p.label.as_str()).collect();
    labels.sort_unstable();
    labels.dedup();
    if labels.len() != table.irreps.len() {
        report.fail("irrep labels are not unique");
    }

    for p in &table.irreps {
        let id = format!("irrep {:?}", p.label);
        if p.dim == 0 {
            report.fail(format!("{id}: dimension zero"));
            continue;
        }
        if p.matrices.len() != n {
            report.fail(format!(
                "{id}: has {} matrices, group order is {n}",
                p.matrices.len()
            ));
            continue;
        }
        if p.matrices
            .iter()
            .any(|m| m.rows() != p.dim || m.cols() != p.dim)
        {
            report.fail(format!("{id}: matrix shape differs from dimension {}", p.dim));
            continue;
        }
        let mut unit_dev = 0.0f64;
        for m in &p.matrices {
            unit_dev = unit_dev.max((&m.adjoint() * m).dist(&Mat::identity(p.dim)));
        }
        if unit_dev > REP_TOL {
            report.fail_dev(format!("{id}: matrices are not unitary"), unit_dev);
        }
        let mut mult_dev = 0.0f64;
        for a in 0..n {
            for b in 0..n {
                mult_dev = mult_dev
                    .max((&(p.mat(a) * p.mat(b))).dist(p.mat(g.mul(a, b))));
            }
        }
        if mult_dev > REP_TOL {
            report.fail_dev(format!("{id}: matrices are not multiplicative"), mult_dev);
        }
        match self_intertwiner_dim(p, tol) {
            Ok(1) => {}
            Ok(d) => report.fail(format!("{id}: not irreducible (commutant dimension {d})")),
            Err(e) => report.fail(format!("{id}: irreducibility check failed: {e}")),
        }
    }

    // Pairwise inequivalence and Schur orthogonality of matrix coefficients.
    let consistent: Vec<&Irrep> = table
        .irreps
        .iter()
        .filter(|p| p.dim > 0 && p.matrices.len() == n)
        .collect();
    for (a, pa) in consistent.iter().enumerate() {
        for pb in consistent.iter().skip(a + 1) {
            match intertwiners(&pa.matrices, &pb.matrices, tol) {
                Ok(space) if space.dim() == 0 => {}
                Ok(space) => report.fail(format!(
                    "irreps {:?} and {:?} are equivalent (intertwiner dimension {})",
                    pa.label,
                    pb.label,
                    space.dim()
                )),
                Err(e) => report.fail(format!(
                    "equivalence check for {:?} / {:?} failed: {e}",
                    pa.label, pb.label
                )),
            }
        }
    }
    let mut schur_dev = 0.0f64;
    for (a, pa) in consistent.iter().enumerate() {
        for pb in consistent.iter().skip(a) {
            let same = std::ptr::eq(*pa, *pb);
            for i in 0..pa.dim {
                for j in 0..pa.dim {
                    for k in 0..pb.dim {
                        for l in 0..pb.dim {
                            let mut acc = C64::new(0.0, 0.0);
                            for e in 0..n {
                                acc += pa.mat(e).at(i, j).conj() * pb.mat(e).at(k, l);
                            }
                            acc /= n as f64;
                            let expect = if same && i == k && j == l {
                                1.0 / pa.dim as f64
                            } else {
                                0.0
                            };
                            schur_dev = schur_dev.max((acc - C64::new(expect, 0.0)).norm());
                        }
                    }
                }
            }
        }
    }
    if schur_dev > REP_TOL {
        report.fail_dev("Schur orthogonality of matrix coefficients fails", schur_dev);
    }

    let dim_sum: usize = table.irreps.iter().map(|p| p.dim * p.dim).sum();
    if dim_sum != n {
        report.fail(format!(
            "sum of squared dimensions is {dim_sum}, group order is {n}"
        ));
    }
    if table.trivial_index().is_err() {
        report.fail("table does not contain the trivial representation");
    }
    report
}

fn self_intertwiner_dim(p: &Irrep, tol: &Tolerances) -> Result<usize> {
    Ok(intertwiners(&p.matrices, &p.matrices, tol)?.dim())
}

// --- presets ---

/// Names accepted by [`preset_group`].
pub const PRESET_NAMES: [&str; 12] = [
    "Z1", "Z2", "Z3", "Z4", "Z5", "Z6", "Z7", "Z8", "S3", "D4", "Q8", "Z2xZ2",
];

/// Build one of the built-in groups with its full irrep table. Names are
/// matched case-insensitively.
pub fn preset_group(name: &str) -> Result<IrrepTable> {
    let canonical = name.to_ascii_lowercase();
    let table = match canonical.as_str() {
        "z1" => cyclic(1),
        "z2" => cyclic(2),
        "z3" => cyclic(3),
        "z4" => cyclic(4),
        "z5" => cyclic(5),
        "z6" => cyclic(6),
        "z7" => cyclic(7),
        "z8" => cyclic(8),
        "s3" => symmetric_3(),
        "d4" => dihedral_4(),
        "q8" => quaternion_8(),
        "z2xz2" => klein_four(),
        _ => {
            return Err(Error::UnknownPreset {
                name: name.to_string(),
            })
        }
    };
    debug_assert!(
        validate_irrep_table(&table, &Tolerances::default()).is_ok(),
        "preset {name} failed validation:\n{}",
        validate_irrep_table(&table, &Tolerances::default())
    );
    Ok(table)
}

fn scalar(z: C64) -> Mat {
    Mat::from_fn(1, 1, |_, _| z)
}

fn cyclic(n: usize) -> IrrepTable {
    let mult: Vec<Vec<usize>> = (0..n).map(|a| (0..n).map(|b| (a + b) % n).collect()).collect();
    let generators = if n > 1 { vec![1] } else { vec![] };
    let group = FiniteGroup::from_mult_table(mult, generators).expect("cyclic table");
    let irreps = (0..n)
        .map(|k| Irrep {
            label: format!("chi{k}"),
            dim: 1,
            matrices: (0..n)
                .map(|m| {
                    let theta = 2.0 * std::f64::consts::PI * (k * m) as f64 / n as f64;
                    scalar(Complex64::from_polar(1.0, theta))
                })
                .collect(),
        })
        .collect();
    IrrepTable { group, irreps }
}

fn klein_four() -> IrrepTable {
    // Element (a, b) has index a + 2b.
    let idx = |a: usize, b: usize| a + 2 * b;
    let mut mult = vec![vec![0usize; 4]; 4];
    for a1 in 0..2 {
        for b1 in 0..2 {
            for a2 in 0..2 {
                for b2 in 0..2 {
                    mult[idx(a1, b1)][idx(a2, b2)] = idx((a1 + a2) % 2, (b1 + b2) % 2);
                }
            }
        }
    }
    let group = FiniteGroup::from_mult_table(mult, vec![idx(1, 0), idx(0, 1)]).expect("klein");
    let mut irreps = Vec::new();
    for p in 0..2 {
        for q in 0..2 {
            irreps.push(Irrep {
                label: format!("chi{p}{q}"),
                dim: 1,
                matrices: (0..4)
                    .map(|e| {
                        let (a, b) = (e % 2, e / 2);
                        let sign = if (p * a + q * b) % 2 == 0 { 1.0 } else { -1.0 };
                        scalar(C64::new(sign, 0.0))
                    })
                    .collect(),
            });
        }
    }
    // Order: chi00 (trivial), chi10, chi01, chi11.
    irreps.swap(1, 2);
    IrrepTable { group, irreps }
}

fn symmetric_3() -> IrrepTable {
    // Permutations of {0,1,2} in a fixed order; composition (s*t)(x) = s(t(x)).
    let perms: [[usize; 3]; 6] = [
        [0, 1, 2], // e
        [1, 0, 2], // (01)
        [2, 1, 0], // (02)
        [0, 2, 1], // (12)
        [1, 2, 0], // (012): 0->1, 1->2, 2->0
        [2, 0, 1], // (021)
    ];
    let compose = |s: &[usize; 3], t: &[usize; 3]| [s[t[0]], s[t[1]], s[t[2]]];
    let index_of = |p: &[usize; 3]| perms.iter().position(|q| q == p).unwrap();
    let mult: Vec<Vec<usize>> = perms
        .iter()
        .map(|s| perms.iter().map(|t| index_of(&compose(s, t))).collect())
        .collect();
    let group = FiniteGroup::from_mult_table(mult, vec![1, 4]).expect("s3 table");

    let sign = |p: &[usize; 3]| {
        let mut inv = 0;
        for i in 0..3 {
            for j in (i + 1)..3 {
                if p[i] > p[j] {
                    inv += 1;
                }
            }
        }
        if inv % 2 == 0 { 1.0 } else { -1.0 }
    };

    // Standard representation on the sum-zero plane of R^3, expressed in an
    // orthonormal basis so the matrices come out orthogonal.
    let b = [
        [1.0 / 2f64.sqrt(), -1.0 / 2f64.sqrt(), 0.0],
        [1.0 / 6f64.sqrt(), 1.0 / 6f64.sqrt(), -2.0 / 6f64.sqrt()],
    ];
    let std_mat = |p: &[usize; 3]| {
        Mat::from_fn(2, 2, |i, j| {
            // entry = b_i^T P b_j with P e_k = e_{p(k)}
            let mut acc = 0.0;
            for k in 0..3 {
                acc += b[i][p[k]] * b[j][k];
            }
            C64::new(acc, 0.0)
        })
    };

    let irreps = vec![
        Irrep {
            label: "triv".into(),
            dim: 1,
            matrices: perms.iter().map(|_| scalar(C64::new(1.0, 0.0))).collect(),
        },
        Irrep {
            label: "sgn".into(),
            dim: 1,
            matrices: perms.iter().map(|p| scalar(C64::new(sign(p), 0.0))).collect(),
        },
        Irrep {
            label: "std".into(),
            dim: 2,
            matrices: perms.iter().map(std_mat).collect(),
        },
    ];
    IrrepTable { group, irreps }
}

fn dihedral_4() -> IrrepTable {
    // Element r^a s^b has index a + 4b; s r s = r^-1.
    let idx = |a: usize, b: usize| a + 4 * b;
    let mut mult = vec![vec![0usize; 8]; 8];
    for a1 in 0..4 {
        for b1 in 0..2 {
            for a2 in 0..4 {
                for b2 in 0..2 {
                    // (r^a1 s^b1)(r^a2 s^b2) = r^(a1 + (-1)^b1 a2) s^(b1+b2)
                    let a = if b1 == 0 { (a1 + a2) % 4 } else { (a1 + 4 - a2 % 4) % 4 };
                    mult[idx(a1, b1)][idx(a2, b2)] = idx(a, (b1 + b2) % 2);
                }
            }
        }
    }
    let group = FiniteGroup::from_mult_table(mult, vec![idx(1, 0), idx(0, 1)]).expect("d4 table");

    let rot = Mat::from_rows_re(&[&[0.0, -1.0], &[1.0, 0.0]]);
    let flip = Mat::from_rows_re(&[&[1.0, 0.0], &[0.0, -1.0]]);
    let pow = |m: &Mat, k: usize| {
        let mut acc = Mat::identity(2);
        for _ in 0..k {
            acc = &acc * m;
        }
        acc
    };
    let character = |label: &str, on_r: f64, on_s: f64| Irrep {
        label: label.into(),
        dim: 1,
        matrices: (0..8)
            .map(|e| {
                let (a, b) = (e % 4, e / 4);
                scalar(C64::new(on_r.powi(a as i32) * on_s.powi(b as i32), 0.0))
            })
            .collect(),
    };
    let irreps = vec![
        character("triv", 1.0, 1.0),
        character("chi_r", 1.0, -1.0),
        character("chi_s", -1.0, 1.0),
        character("chi_rs", -1.0, -1.0),
        Irrep {
            label: "std".into(),
            dim: 2,
            matrices: (0..8)
                .map(|e| {
                    let (a, b) = (e % 4, e / 4);
                    &pow(&rot, a) * &pow(&flip, b)
                })
                .collect(),
        },
    ];
    IrrepTable { group, irreps }
}

fn quaternion_8() -> IrrepTable {
    // Element (-1)^s u with u in {1, i, j, k} has index u + 4s.
    // Base multiplication on {1, i, j, k} with a sign.
    const UNIT_MUL: [[(usize, i32); 4]; 4] = [
        [(0, 1), (1, 1), (2, 1), (3, 1)],
        [(1, 1), (0, -1), (3, 1), (2, -1)],
        [(2, 1), (3, -1), (0, -1), (1, 1)],
        [(3, 1), (2, 1), (1, -1), (0, -1)],
    ];
    let idx = |u: usize, s: i32| u + if s < 0 { 4 } else { 0 };
    let mut mult = vec![vec![0usize; 8]; 8];
    for e1 in 0..8 {
        for e2 in 0..8 {
            let (u1, s1) = (e1 % 4, if e1 < 4 { 1 } else { -1 });
            let (u2, s2) = (e2 % 4, if e2 < 4 { 1 } else { -1 });
            let (u, s) = UNIT_MUL[u1][u2];
            mult[e1][e2] = idx(u, s1 * s2 * s);
        }
    }
    let group = FiniteGroup::from_mult_table(mult, vec![1, 2]).expect("q8 table");

    let character = |label: &str, on_i: f64, on_j: f64| Irrep {
        label: label.into(),
        dim: 1,
        matrices: (0..8)
            .map(|e| {
                let v = match e % 4 {
                    0 => 1.0,
                    1 => on_i,
                    2 => on_j,
                    _ => on_i * on_j,
                };
                scalar(C64::new(v, 0.0))
            })
            .collect(),
    };
    let i = C64::new(0.0, 1.0);
    let one = C64::new(1.0, 0.0);
    let zero = C64::new(0.0, 0.0);
    let base = [
        Mat::identity(2),
        Mat::from_rows(&[vec![i, zero], vec![zero, -i]]),
        Mat::from_rows(&[vec![zero, one], vec![-one, zero]]),
        Mat::from_rows(&[vec![zero, i], vec![i, zero]]),
    ];
    let irreps = vec![
        character("triv", 1.0, 1.0),
        character("chi_i", 1.0, -1.0),
        character("chi_j", -1.0, 1.0),
        character("chi_k", -1.0, -1.0),
        Irrep {
            label: "std".into(),
            dim: 2,
            matrices: (0..8)
                .map(|e| {
                    let m = base[e % 4].clone();
                    if e < 4 { m } else { m.scale(C64::new(-1.0, 0.0)) }
                })
                .collect(),
        },
    ];
    IrrepTable { group, irreps }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn presets_validate_cleanly() {
        for name in PRESET_NAMES {
            let table = preset_group(name).unwrap();
            let report = validate_irrep_table(&table, &Tolerances::default());
            assert!(report.is_ok(), "{name}:\n{report}");
            let dim_sum: usize = table.irreps.iter().map(|p| p.dim * p.dim).sum();
            assert_eq!(dim_sum, table.group.order(), "{name}");
        }
    }

    #[test]
    fn unknown_preset_is_rejected() {
        assert!(matches!(
            preset_group("A5"),
            Err(Error::UnknownPreset { .. })
        ));
    }

    #[test]
    fn preset_names_are_case_insensitive() {
        assert!(preset_group("z2xz2").is_ok());
        assert!(preset_group("Q8").is_ok());
    }

    #[test]
    fn character_orthogonality_across_presets() {
        // (1/|G|) sum_g tr(pi(g)) conj(tr(rho(g))) = delta_{pi,rho}.
        for name in PRESET_NAMES {
            let table = preset_group(name).unwrap();
            let n = table.group.order() as f64;
            for a in &table.irreps {
                for b in &table.irreps {
                    let mut acc = C64::new(0.0, 0.0);
                    for g in table.group.elements() {
                        acc += a.mat(g).trace() * b.mat(g).trace().conj();
                    }
                    acc /= n;
                    let expect = if a.label == b.label { 1.0 } else { 0.0 };
                    assert!(
                        (acc - C64::new(expect, 0.0)).norm() < 1e-9,
                        "{name}: {} vs {}",
                        a.label,
                        b.label
                    );
                }
            }
        }
    }

    #[test]
    fn abelian_presets_have_one_dimensional_irreps() {
        for name in PRESET_NAMES {
            let table = preset_group(name).unwrap();
            if table.group.is_abelian() {
                assert!(table.irreps.iter().all(|p| p.dim == 1), "{name}");
            } else {
                assert!(table.irreps.iter().any(|p| p.dim > 1), "{name}");
            }
        }
    }

    #[test]
    fn trivial_irrep_is_found_structurally() {
        for name in PRESET_NAMES {
            let table = preset_group(name).unwrap();
            let idx = table.trivial_index().unwrap();
            assert_eq!(table.irreps[idx].dim, 1);
        }
    }

    #[test]
    fn s3_is_nonabelian_with_generators() {
        let table = preset_group("S3").unwrap();
        assert!(!table.group.is_abelian());
        assert_eq!(table.group.order(), 6);
        let report = validate_group(&table.group);
        assert!(report.is_ok());
    }

    #[test]
    fn corrupted_mult_table_fails_associativity() {
        let table = preset_group("Z3").unwrap();
        // Tamper with one cell: 1*1 = 2 becomes 1*1 = 1.
        let mut mult: Vec<Vec<usize>> = (0..3)
            .map(|a| (0..3).map(|b| table.group.mul(a, b)).collect())
            .collect();
        mult[1][1] = 1;
        // Identity/inverse derivation may still pass; associativity must not.
        let group = FiniteGroup::from_mult_table(mult, vec![1]);
        match group {
            Ok(g) => {
                let report = validate_group(&g);
                assert!(
                    report
                        .failures
                        .iter()
                        .any(|f| f.what.contains("associativity")),
                    "expected an associativity failure, got: {report}"
                );
            }
            // Depending on the cell, structural derivation itself may fail;
            // that is an acceptable hard rejection too.
            Err(Error::InvalidInput { .. }) => {}
            Err(e) => panic!("unexpected error {e}"),
        }
    }

    #[test]
    fn incomplete_table_is_flagged() {
        let mut table = preset_group("S3").unwrap();
        table.irreps.retain(|p| p.label != "sgn");
        let report = validate_irrep_table(&table, &Tolerances::default());
        assert!(report
            .failures
            .iter()
            .any(|f| f.what.contains("sum of squared dimensions")));
    }

    #[test]
    fn duplicated_irrep_is_flagged_as_equivalent() {
        let mut table = preset_group("Z2").unwrap();
        let mut dup = table.irreps[1].clone();
        dup.label = "copy".into();
        table.irreps.push(dup);
        let report = validate_irrep_table(&table, &Tolerances::default());
        assert!(report.failures.iter().any(|f| f.what.contains("equivalent")));
        assert!(report
            .failures
            .iter()
            .any(|f| f.what.contains("sum of squared dimensions")));
    }

    #[test]
    fn non_unitary_matrix_is_flagged_with_deviation() {
        let mut table = preset_group("Z2").unwrap();
        table.irreps[1].matrices[1] = scalar(C64::new(-2.0, 0.0));
        let report = validate_irrep_table(&table, &Tolerances::default());
        let failure = report
            .failures
            .iter()
            .find(|f| f.what.contains("not unitary"))
            .expect("unitarity failure");
        assert!(failure.deviation.unwrap() > 1.0);
    }

    #[test]
    fn homs_onto_cyclic_are_found() {
        let s3 = preset_group("S3").unwrap();
        // S3 surjects onto Z2 (parity) but not onto Z3.
        assert!(!s3.group.surjections_onto_cyclic(2).is_empty());
        assert!(s3.group.surjections_onto_cyclic(3).is_empty());
        let z4 = preset_group("Z4").unwrap();
        assert_eq!(z4.group.surjections_onto_cyclic(4).len(), 2);
        let q8 = preset_group("Q8").unwrap();
        assert_eq!(q8.group.surjections_onto_cyclic(2).len(), 3);
    }
}
