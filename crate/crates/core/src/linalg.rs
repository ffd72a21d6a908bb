//! Small dense complex matrices.
//!
//! Everything here works on square row-major matrices of modest size: the
//! 2×2 and 4×4 local generators, reduced density matrices of a few sites and
//! the full 2^N propagator for N ≤ 10. Hermitian eigenproblems are solved with
//! the cyclic complex Jacobi method, which is accurate to a few ulps for these
//! sizes and gives unitary eigenvector matrices to machine precision.

use std::fmt;
use std::ops::{Index, IndexMut, Mul};

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};

pub const ZERO: C64 = C64::new(0.0, 0.0);
pub const ONE: C64 = C64::new(1.0, 0.0);
pub const I: C64 = C64::new(0.0, 1.0);

/// Square complex matrix stored row-major.
#[derive(Clone, PartialEq)]
pub struct CMatrix {
    dim: usize,
    data: Vec<C64>,
}

impl CMatrix {
    pub fn zeros(dim: usize) -> Self {
        Self {
            dim,
            data: vec![ZERO; dim * dim],
        }
    }

    pub fn identity(dim: usize) -> Self {
        let mut m = Self::zeros(dim);
        for k in 0..dim {
            m[(k, k)] = ONE;
        }
        m
    }

    /// Builds a matrix from rows. Panics if the rows are ragged or not square.
    pub fn from_rows<R: AsRef<[C64]>>(rows: &[R]) -> Self {
        let dim = rows.len();
        let mut data = Vec::with_capacity(dim * dim);
        for row in rows {
            let row = row.as_ref();
            assert_eq!(row.len(), dim, "matrix rows must be square");
            data.extend_from_slice(row);
        }
        Self { dim, data }
    }

    pub fn from_real_rows<R: AsRef<[f64]>>(rows: &[R]) -> Self {
        let cplx: Vec<Vec<C64>> = rows
            .iter()
            .map(|r| r.as_ref().iter().map(|&x| C64::new(x, 0.0)).collect())
            .collect();
        Self::from_rows(&cplx)
    }

    pub fn diagonal(diag: &[C64]) -> Self {
        let mut m = Self::zeros(diag.len());
        for (k, &d) in diag.iter().enumerate() {
            m[(k, k)] = d;
        }
        m
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn as_slice(&self) -> &[C64] {
        &self.data
    }

    pub fn adjoint(&self) -> Self {
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for c in 0..n {
                out[(c, r)] = self[(r, c)].conj();
            }
        }
        out
    }

    pub fn scale(&self, s: C64) -> Self {
        Self {
            dim: self.dim,
            data: self.data.iter().map(|&x| x * s).collect(),
        }
    }

    pub fn scale_real(&self, s: f64) -> Self {
        self.scale(C64::new(s, 0.0))
    }

    pub fn add(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a + b).collect(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        Self {
            dim: self.dim,
            data: self.data.iter().zip(&other.data).map(|(a, b)| a - b).collect(),
        }
    }

    pub fn matmul(&self, other: &Self) -> Self {
        assert_eq!(self.dim, other.dim);
        let n = self.dim;
        let mut out = Self::zeros(n);
        for r in 0..n {
            for k in 0..n {
                let a = self[(r, k)];
                if a == ZERO {
                    continue;
                }
                for c in 0..n {
                    out.data[r * n + c] += a * other.data[k * n + c];
                }
            }
        }
        out
    }

    /// Kronecker product `self ⊗ other`; `self` carries the more significant index.
    pub fn kron(&self, other: &Self) -> Self {
        let (n, m) = (self.dim, other.dim);
        let mut out = Self::zeros(n * m);
        for r1 in 0..n {
            for c1 in 0..n {
                let a = self[(r1, c1)];
                for r2 in 0..m {
                    for c2 in 0..m {
                        out[(r1 * m + r2, c1 * m + c2)] = a * other[(r2, c2)];
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> C64 {
        (0..self.dim).map(|k| self[(k, k)]).sum()
    }

    /// Largest entrywise modulus of `self - other`.
    pub fn max_abs_diff(&self, other: &Self) -> f64 {
        assert_eq!(self.dim, other.dim);
        self.data
            .iter()
            .zip(&other.data)
            .map(|(a, b)| (a - b).norm())
            .fold(0.0, f64::max)
    }

    pub fn hermiticity_defect(&self) -> f64 {
        let n = self.dim;
        let mut worst: f64 = 0.0;
        for r in 0..n {
            for c in r..n {
                worst = worst.max((self[(r, c)] - self[(c, r)].conj()).norm());
            }
        }
        worst
    }

    /// `‖M†M − I‖_max`.
    pub fn unitarity_defect(&self) -> f64 {
        self.adjoint()
            .matmul(self)
            .max_abs_diff(&Self::identity(self.dim))
    }

    pub fn is_hermitian(&self, tol: f64) -> bool {
        self.hermiticity_defect() <= tol
    }

    pub fn is_unitary(&self, tol: f64) -> bool {
        self.unitarity_defect() <= tol
    }

    /// Applies the matrix to a vector.
    pub fn apply(&self, v: &[C64]) -> Vec<C64> {
        assert_eq!(v.len(), self.dim);
        let n = self.dim;
        (0..n)
            .map(|r| (0..n).map(|c| self.data[r * n + c] * v[c]).sum())
            .collect()
    }
}

impl Index<(usize, usize)> for CMatrix {
    type Output = C64;
    fn index(&self, (r, c): (usize, usize)) -> &C64 {
        &self.data[r * self.dim + c]
    }
}

impl IndexMut<(usize, usize)> for CMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut C64 {
        &mut self.data[r * self.dim + c]
    }
}

impl Mul for &CMatrix {
    type Output = CMatrix;
    fn mul(self, rhs: &CMatrix) -> CMatrix {
        self.matmul(rhs)
    }
}

impl fmt::Debug for CMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "CMatrix({}x{}) [", self.dim, self.dim)?;
        for r in 0..self.dim {
            write!(f, "  ")?;
            for c in 0..self.dim {
                let z = self[(r, c)];
                write!(f, "{:+.6}{:+.6}i  ", z.re, z.im)?;
            }
            writeln!(f)?;
        }
        write!(f, "]")
    }
}

/// Pauli matrices.
pub mod pauli {
    use super::*;

    pub fn id() -> CMatrix {
        CMatrix::identity(2)
    }

    pub fn x() -> CMatrix {
        CMatrix::from_rows(&[[ZERO, ONE], [ONE, ZERO]])
    }

    pub fn y() -> CMatrix {
        CMatrix::from_rows(&[[ZERO, -I], [I, ZERO]])
    }

    pub fn z() -> CMatrix {
        CMatrix::from_rows(&[[ONE, ZERO], [ZERO, -ONE]])
    }

    pub fn hadamard() -> CMatrix {
        let s = std::f64::consts::FRAC_1_SQRT_2;
        CMatrix::from_real_rows(&[[s, s], [s, -s]])
    }

    pub fn cnot() -> CMatrix {
        CMatrix::from_real_rows(&[
            [1.0, 0.0, 0.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, 1.0, 0.0],
        ])
    }
}

/// Eigendecomposition `A = V diag(λ) V†` of a Hermitian matrix.
#[derive(Clone, Debug)]
pub struct HermitianEigen {
    /// Eigenvalues in ascending order.
    pub values: Vec<f64>,
    /// Column `k` is the eigenvector for `values[k]`.
    pub vectors: CMatrix,
}

const JACOBI_MAX_SWEEPS: usize = 64;

/// Cyclic Jacobi eigensolver for Hermitian matrices.
pub fn eigh(a: &CMatrix) -> Result<HermitianEigen> {
    let defect = a.hermiticity_defect();
    let scale = a.as_slice().iter().map(|z| z.norm()).fold(0.0, f64::max);
    if defect > 1e-12 * scale.max(1.0) {
        return Err(Error::NotHermitian(defect));
    }
    let n = a.dim();
    // Symmetrize so the rotations see an exactly Hermitian input.
    let mut m = CMatrix::zeros(n);
    for r in 0..n {
        m[(r, r)] = C64::new(a[(r, r)].re, 0.0);
        for c in r + 1..n {
            let v = 0.5 * (a[(r, c)] + a[(c, r)].conj());
            m[(r, c)] = v;
            m[(c, r)] = v.conj();
        }
    }
    let mut v = CMatrix::identity(n);

    for _ in 0..JACOBI_MAX_SWEEPS {
        let off: f64 = (0..n)
            .flat_map(|r| (r + 1..n).map(move |c| (r, c)))
            .map(|(r, c)| m[(r, c)].norm_sqr())
            .sum();
        let diag: f64 = (0..n).map(|k| m[(k, k)].re * m[(k, k)].re).sum();
        if off == 0.0 || off <= 1e-34 * diag.max(f64::MIN_POSITIVE) {
            break;
        }
        for p in 0..n {
            for q in p + 1..n {
                rotate(&mut m, &mut v, p, q);
            }
        }
    }

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| m[(i, i)].re.total_cmp(&m[(j, j)].re));
    let values = order.iter().map(|&k| m[(k, k)].re).collect();
    let mut vectors = CMatrix::zeros(n);
    for (new_col, &old_col) in order.iter().enumerate() {
        for r in 0..n {
            vectors[(r, new_col)] = v[(r, old_col)];
        }
    }
    Ok(HermitianEigen { values, vectors })
}

/// One Jacobi rotation annihilating `m[p][q]`; accumulates into `v`.
fn rotate(m: &mut CMatrix, v: &mut CMatrix, p: usize, q: usize) {
    let g = m[(p, q)];
    let abs_g = g.norm();
    if abs_g == 0.0 {
        return;
    }
    let phase = g / abs_g;
    let app = m[(p, p)].re;
    let aqq = m[(q, q)].re;
    let theta = (aqq - app) / (2.0 * abs_g);
    let t = theta.signum() / (theta.abs() + (theta * theta + 1.0).sqrt());
    let t = if theta == 0.0 { 1.0 } else { t };
    let c = 1.0 / (t * t + 1.0).sqrt();
    let s = t * c;

    // W = diag(1, conj(phase)) · [[c, s], [-s, c]] restricted to (p, q).
    let w_pp = C64::new(c, 0.0);
    let w_pq = C64::new(s, 0.0);
    let w_qp = -phase.conj() * s;
    let w_qq = phase.conj() * c;

    let n = m.dim();
    for k in 0..n {
        let mkp = m[(k, p)];
        let mkq = m[(k, q)];
        m[(k, p)] = mkp * w_pp + mkq * w_qp;
        m[(k, q)] = mkp * w_pq + mkq * w_qq;
    }
    for k in 0..n {
        let mpk = m[(p, k)];
        let mqk = m[(q, k)];
        m[(p, k)] = w_pp.conj() * mpk + w_qp.conj() * mqk;
        m[(q, k)] = w_pq.conj() * mpk + w_qq.conj() * mqk;
    }
    m[(p, q)] = ZERO;
    m[(q, p)] = ZERO;
    m[(p, p)] = C64::new(m[(p, p)].re, 0.0);
    m[(q, q)] = C64::new(m[(q, q)].re, 0.0);
    for k in 0..n {
        let vkp = v[(k, p)];
        let vkq = v[(k, q)];
        v[(k, p)] = vkp * w_pp + vkq * w_qp;
        v[(k, q)] = vkp * w_pq + vkq * w_qq;
    }
}

/// `exp(−i·dt·h)` for Hermitian `h`, via its eigendecomposition.
pub fn expm_hermitian(h: &CMatrix, dt: f64) -> Result<CMatrix> {
    let eig = eigh(h)?;
    let n = h.dim();
    let phases: Vec<C64> = eig
        .values
        .iter()
        .map(|&lambda| C64::from_polar(1.0, -dt * lambda))
        .collect();
    let vecs = &eig.vectors;
    let mut out = CMatrix::zeros(n);
    for r in 0..n {
        for c in 0..n {
            out[(r, c)] = (0..n)
                .map(|k| vecs[(r, k)] * phases[k] * vecs[(c, k)].conj())
                .sum();
        }
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::FRAC_PI_2;

    #[test]
    fn expm_of_zero_is_identity() {
        let u = expm_hermitian(&CMatrix::zeros(4), 0.37).unwrap();
        assert!(u.max_abs_diff(&CMatrix::identity(4)) < 1e-15);
    }

    #[test]
    fn expm_sigma_z_quarter_turn() {
        let u = expm_hermitian(&pauli::z(), FRAC_PI_2).unwrap();
        // diagonal oracle: exp(-i·π/2·(±1))
        let expected = CMatrix::diagonal(&[
            C64::from_polar(1.0, -FRAC_PI_2),
            C64::from_polar(1.0, FRAC_PI_2),
        ]);
        assert!(u.max_abs_diff(&expected) < 1e-15);
    }

    #[test]
    fn expm_rejects_non_hermitian() {
        let m = CMatrix::from_real_rows(&[[0.0, 1.0], [0.0, 0.0]]);
        assert!(matches!(
            expm_hermitian(&m, 1.0),
            Err(Error::NotHermitian(_))
        ));
    }

    #[test]
    fn eigh_reconstructs_degenerate_matrix() {
        let h = pauli::x().kron(&pauli::x());
        let eig = eigh(&h).unwrap();
        assert_abs_diff_eq!(eig.values[0], -1.0, epsilon = 1e-14);
        assert_abs_diff_eq!(eig.values[3], 1.0, epsilon = 1e-14);
        let d = CMatrix::diagonal(
            &eig.values.iter().map(|&x| C64::new(x, 0.0)).collect::<Vec<_>>(),
        );
        let rebuilt = eig.vectors.matmul(&d).matmul(&eig.vectors.adjoint());
        assert!(rebuilt.max_abs_diff(&h) < 1e-14);
        assert!(eig.vectors.is_unitary(1e-14));
    }

    #[test]
    fn kron_orders_first_factor_most_significant() {
        let xi = pauli::x().kron(&pauli::id());
        assert_eq!(xi[(0, 2)], ONE);
        assert_eq!(xi[(1, 3)], ONE);
        assert_eq!(xi[(0, 1)], ZERO);
    }
}
