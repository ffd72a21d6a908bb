//! Dense statevectors over a chain of qubits.
//!
//! Site 0 is the most significant bit of the basis index: for `n` sites the
//! amplitude of `|b_0 b_1 … b_{n-1}⟩` lives at index `Σ b_k 2^(n-1-k)`.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{eigh, CMatrix, ONE, ZERO};

/// Largest lattice handled by the dense representation.
pub const MAX_SITES: usize = 14;

const NORM_TOL: f64 = 1e-12;
const UNITARY_TOL: f64 = 1e-12;
const HERMITIAN_TOL: f64 = 1e-14;

/// Normalized amplitude vector over `n_sites` qubits.
#[derive(Clone, Debug, PartialEq)]
pub struct StateVector {
    amplitudes: Vec<C64>,
    n_sites: usize,
}

impl StateVector {
    /// `|0…0⟩`.
    pub fn zero(n_sites: usize) -> Result<Self> {
        Self::basis(n_sites, 0)
    }

    pub fn basis(n_sites: usize, index: usize) -> Result<Self> {
        check_size(n_sites)?;
        let dim = 1usize << n_sites;
        if index >= dim {
            return Err(Error::InvalidState(format!(
                "basis index {index} out of range for dimension {dim}"
            )));
        }
        let mut amplitudes = vec![ZERO; dim];
        amplitudes[index] = ONE;
        Ok(Self {
            amplitudes,
            n_sites,
        })
    }

    /// Takes amplitudes that must already be normalized.
    pub fn from_amplitudes(amplitudes: Vec<C64>) -> Result<Self> {
        let n_sites = dimension_to_sites(amplitudes.len())?;
        let norm = l2_norm(&amplitudes);
        if (norm - 1.0).abs() > NORM_TOL {
            return Err(Error::InvalidState(format!("norm {norm} is not 1")));
        }
        Ok(Self {
            amplitudes,
            n_sites,
        })
    }

    /// Rescales arbitrary nonzero amplitudes to unit norm.
    pub fn normalized(amplitudes: Vec<C64>) -> Result<Self> {
        let n_sites = dimension_to_sites(amplitudes.len())?;
        let norm = l2_norm(&amplitudes);
        if norm == 0.0 || !norm.is_finite() {
            return Err(Error::InvalidState("cannot normalize a zero vector".into()));
        }
        let amplitudes = amplitudes.into_iter().map(|a| a / norm).collect();
        Ok(Self {
            amplitudes,
            n_sites,
        })
    }

    /// Tensor product of single-site states, site 0 first.
    pub fn product(factors: &[[C64; 2]]) -> Result<Self> {
        check_size(factors.len())?;
        let mut amps = vec![ONE];
        for f in factors {
            let norm = (f[0].norm_sqr() + f[1].norm_sqr()).sqrt();
            if norm == 0.0 {
                return Err(Error::InvalidState("zero single-site factor".into()));
            }
            amps = amps
                .iter()
                .flat_map(|&a| [a * f[0] / norm, a * f[1] / norm])
                .collect();
        }
        Self::normalized(amps)
    }

    pub fn n_sites(&self) -> usize {
        self.n_sites
    }

    pub fn dim(&self) -> usize {
        self.amplitudes.len()
    }

    pub fn amplitudes(&self) -> &[C64] {
        &self.amplitudes
    }

    pub fn norm(&self) -> f64 {
        l2_norm(&self.amplitudes)
    }

    /// `⟨self|other⟩`.
    pub fn inner(&self, other: &Self) -> Result<C64> {
        if self.dim() != other.dim() {
            return Err(Error::DimensionMismatch(self.dim(), other.dim()));
        }
        Ok(self
            .amplitudes
            .iter()
            .zip(&other.amplitudes)
            .map(|(a, b)| a.conj() * b)
            .sum())
    }

    pub fn with_global_phase(&self, theta: f64) -> Self {
        let p = C64::from_polar(1.0, theta);
        Self {
            amplitudes: self.amplitudes.iter().map(|a| a * p).collect(),
            n_sites: self.n_sites,
        }
    }

    pub(crate) fn check_site(&self, site: usize) -> Result<()> {
        if site >= self.n_sites {
            return Err(Error::SiteOutOfRange {
                site,
                n_sites: self.n_sites,
            });
        }
        Ok(())
    }

    pub(crate) fn mask(&self, site: usize) -> usize {
        1 << (self.n_sites - 1 - site)
    }

    /// In-place 2×2 application without validation.
    pub(crate) fn apply_1q_mut(&mut self, m: &CMatrix, site: usize) {
        let mask = self.mask(site);
        let (m00, m01, m10, m11) = (m[(0, 0)], m[(0, 1)], m[(1, 0)], m[(1, 1)]);
        for i0 in 0..self.amplitudes.len() {
            if i0 & mask != 0 {
                continue;
            }
            let i1 = i0 | mask;
            let a0 = self.amplitudes[i0];
            let a1 = self.amplitudes[i1];
            self.amplitudes[i0] = m00 * a0 + m01 * a1;
            self.amplitudes[i1] = m10 * a0 + m11 * a1;
        }
    }

    /// In-place 4×4 application without validation; `a` is the more
    /// significant factor of the 4×4 basis.
    pub(crate) fn apply_2q_mut(&mut self, m: &CMatrix, a: usize, b: usize) {
        let ma = self.mask(a);
        let mb = self.mask(b);
        for base in 0..self.amplitudes.len() {
            if base & (ma | mb) != 0 {
                continue;
            }
            let idx = [base, base | mb, base | ma, base | ma | mb];
            let v = idx.map(|i| self.amplitudes[i]);
            for (r, &i) in idx.iter().enumerate() {
                self.amplitudes[i] = (0..4).map(|c| m[(r, c)] * v[c]).sum();
            }
        }
    }

    /// Projects `site` onto `vector` and renormalizes; returns the Born
    /// probability together with the collapsed state (`None` when the
    /// probability vanishes).
    pub fn project_site(&self, site: usize, vector: [C64; 2]) -> Result<(f64, Option<Self>)> {
        self.check_site(site)?;
        let norm = (vector[0].norm_sqr() + vector[1].norm_sqr()).sqrt();
        let (v0, v1) = (vector[0] / norm, vector[1] / norm);
        // |v⟩⟨v| acting on the site.
        let proj = CMatrix::from_rows(&[
            [v0 * v0.conj(), v0 * v1.conj()],
            [v1 * v0.conj(), v1 * v1.conj()],
        ]);
        let mut out = self.clone();
        out.apply_1q_mut(&proj, site);
        let p = out.norm().powi(2);
        if p < 1e-300 {
            return Ok((0.0, None));
        }
        let s = p.sqrt();
        out.amplitudes.iter_mut().for_each(|a| *a /= s);
        Ok((p, Some(out)))
    }
}

fn check_size(n_sites: usize) -> Result<()> {
    if n_sites == 0 || n_sites > MAX_SITES {
        return Err(Error::InvalidState(format!(
            "site count {n_sites} outside 1..={MAX_SITES}"
        )));
    }
    Ok(())
}

fn dimension_to_sites(dim: usize) -> Result<usize> {
    if dim < 2 || !dim.is_power_of_two() {
        return Err(Error::InvalidState(format!(
            "length {dim} is not a power of two ≥ 2"
        )));
    }
    let n = dim.trailing_zeros() as usize;
    check_size(n)?;
    Ok(n)
}

fn l2_norm(v: &[C64]) -> f64 {
    v.iter().map(|a| a.norm_sqr()).sum::<f64>().sqrt()
}

/// A 2×2 operator on one site.
#[derive(Clone, Debug, PartialEq)]
pub struct SiteOperator {
    pub matrix: CMatrix,
    pub site: usize,
}

impl SiteOperator {
    pub fn new(matrix: CMatrix, site: usize) -> Self {
        assert_eq!(matrix.dim(), 2, "site operators are 2x2");
        Self { matrix, site }
    }
}

/// A 4×4 operator on an ordered pair of distinct sites. `sites.0` is the
/// more significant factor of the 4×4 basis.
#[derive(Clone, Debug, PartialEq)]
pub struct TwoSiteOperator {
    pub matrix: CMatrix,
    pub sites: (usize, usize),
}

impl TwoSiteOperator {
    pub fn new(matrix: CMatrix, sites: (usize, usize)) -> Self {
        assert_eq!(matrix.dim(), 4, "two-site operators are 4x4");
        Self { matrix, sites }
    }
}

/// Applies a unitary single-site operator.
pub fn apply_on_site(state: &StateVector, op: &SiteOperator) -> Result<StateVector> {
    state.check_site(op.site)?;
    let defect = op.matrix.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    let mut out = state.clone();
    out.apply_1q_mut(&op.matrix, op.site);
    Ok(out)
}

/// Applies a unitary two-site operator.
pub fn apply_on_link(state: &StateVector, op: &TwoSiteOperator) -> Result<StateVector> {
    let (a, b) = op.sites;
    state.check_site(a)?;
    state.check_site(b)?;
    if a == b {
        return Err(Error::OverlappingSites(a, b));
    }
    let defect = op.matrix.unitarity_defect();
    if defect > UNITARY_TOL {
        return Err(Error::NotUnitary(defect));
    }
    let mut out = state.clone();
    out.apply_2q_mut(&op.matrix, a, b);
    Ok(out)
}

/// `⟨ψ|O|ψ⟩` for a Hermitian site operator.
pub fn expectation(state: &StateVector, op: &SiteOperator) -> Result<f64> {
    state.check_site(op.site)?;
    let defect = op.matrix.hermiticity_defect();
    if defect > HERMITIAN_TOL {
        return Err(Error::NotHermitian(defect));
    }
    Ok(expectation_raw(state, &op.matrix, op.site).re)
}

pub(crate) fn expectation_raw(state: &StateVector, m: &CMatrix, site: usize) -> C64 {
    let mask = state.mask(site);
    let amps = &state.amplitudes;
    let mut acc = ZERO;
    for i0 in 0..amps.len() {
        if i0 & mask != 0 {
            continue;
        }
        let i1 = i0 | mask;
        let (a0, a1) = (amps[i0], amps[i1]);
        acc += a0.conj() * (m[(0, 0)] * a0 + m[(0, 1)] * a1)
            + a1.conj() * (m[(1, 0)] * a0 + m[(1, 1)] * a1);
    }
    acc
}

/// Single-site reduced state.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
}

impl DensityMatrix {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.dim() != 2 {
            return Err(Error::InvalidDensity(format!(
                "expected 2x2, got {0}x{0}",
                matrix.dim()
            )));
        }
        let herm = matrix.hermiticity_defect();
        if herm > 1e-12 {
            return Err(Error::InvalidDensity(format!("not Hermitian ({herm:e})")));
        }
        let tr = matrix.trace();
        if (tr - ONE).norm() > 1e-12 {
            return Err(Error::InvalidDensity(format!("trace {tr} is not 1")));
        }
        let (lo, _) = eig2(&matrix);
        if lo < -1e-12 {
            return Err(Error::InvalidDensity(format!("negative eigenvalue {lo}")));
        }
        Ok(Self { matrix })
    }

    /// Pure state `|v⟩⟨v|`.
    pub fn pure(v: [C64; 2]) -> Result<Self> {
        let norm = (v[0].norm_sqr() + v[1].norm_sqr()).sqrt();
        let (a, b) = (v[0] / norm, v[1] / norm);
        Self::new(CMatrix::from_rows(&[
            [a * a.conj(), a * b.conj()],
            [b * a.conj(), b * b.conj()],
        ]))
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    /// Convex combination `Σ wₖ ρₖ`; weights must sum to one.
    pub fn mixture(parts: &[(f64, DensityMatrix)]) -> Result<Self> {
        let mut m = CMatrix::zeros(2);
        for (w, rho) in parts {
            m = m.add(&rho.matrix.scale_real(*w));
        }
        Self::new(m)
    }
}

/// Eigenvalues `(low, high)` of a 2×2 Hermitian matrix.
fn eig2(m: &CMatrix) -> (f64, f64) {
    let a = m[(0, 0)].re;
    let d = m[(1, 1)].re;
    let b = m[(0, 1)];
    let mean = 0.5 * (a + d);
    let r = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
    (mean - r, mean + r)
}

/// Partial trace over every site except `site`.
pub fn reduced_density(state: &StateVector, site: usize) -> Result<DensityMatrix> {
    state.check_site(site)?;
    let mask = state.mask(site);
    let amps = &state.amplitudes;
    let (mut r00, mut r11, mut r01) = (0.0, 0.0, ZERO);
    for i0 in 0..amps.len() {
        if i0 & mask != 0 {
            continue;
        }
        let (a0, a1) = (amps[i0], amps[i0 | mask]);
        r00 += a0.norm_sqr();
        r11 += a1.norm_sqr();
        r01 += a0 * a1.conj();
    }
    DensityMatrix::new(CMatrix::from_rows(&[
        [C64::new(r00, 0.0), r01],
        [r01.conj(), C64::new(r11, 0.0)],
    ]))
}

/// `½‖a − b‖₁`.
pub fn trace_distance(a: &DensityMatrix, b: &DensityMatrix) -> f64 {
    let diff = a.matrix.sub(&b.matrix);
    let (lo, hi) = eig2(&diff);
    (0.5 * (lo.abs() + hi.abs())).clamp(0.0, 1.0)
}

/// Phase-invariant distance `√(2 − 2|⟨a|b⟩|)`.
///
/// Evaluated as `‖e^{iφ}a − b‖` with the phase aligned to the overlap, which
/// equals the closed form for unit vectors but resolves distances far below
/// the `~1e-8` floor of the direct expression.
pub fn state_distance(a: &StateVector, b: &StateVector) -> Result<f64> {
    let overlap = a.inner(b)?;
    let phase = if overlap.norm() > 0.0 {
        overlap / overlap.norm()
    } else {
        ONE
    };
    let d2: f64 = a
        .amplitudes
        .iter()
        .zip(&b.amplitudes)
        .map(|(x, y)| (x * phase - y).norm_sqr())
        .sum();
    Ok(d2.sqrt().min(std::f64::consts::SQRT_2))
}

/// Von Neumann entropy (nats) of the reduced state on `cut`.
pub fn entanglement_entropy(state: &StateVector, cut: &[usize]) -> Result<f64> {
    let n = state.n_sites();
    let mut in_cut = vec![false; n];
    for &s in cut {
        state.check_site(s)?;
        if in_cut[s] {
            return Err(Error::InvalidCut(format!("site {s} listed twice")));
        }
        in_cut[s] = true;
    }
    if cut.is_empty() || cut.len() == n {
        return Err(Error::InvalidCut(
            "cut must be a nonempty proper subset of the sites".into(),
        ));
    }
    // The spectrum is shared by both sides; diagonalize the smaller one.
    let keep: Vec<usize> = if cut.len() * 2 <= n {
        (0..n).filter(|&s| in_cut[s]).collect()
    } else {
        (0..n).filter(|&s| !in_cut[s]).collect()
    };
    let rho = reduced_block(state, &keep);
    let eig = eigh(&rho)?;
    let entropy = eig
        .values
        .iter()
        .filter(|&&p| p > 0.0)
        .map(|&p| -p * p.ln())
        .sum::<f64>();
    Ok(entropy.max(0.0))
}

/// Reduced density matrix on `keep` (in the given order, first most significant).
fn reduced_block(state: &StateVector, keep: &[usize]) -> CMatrix {
    let n = state.n_sites();
    let k = keep.len();
    let rest: Vec<usize> = (0..n).filter(|s| !keep.contains(s)).collect();
    let split = |kept_bits: usize, rest_bits: usize| -> usize {
        let mut idx = 0usize;
        for (pos, &s) in keep.iter().enumerate() {
            if kept_bits >> (k - 1 - pos) & 1 == 1 {
                idx |= state.mask(s);
            }
        }
        for (pos, &s) in rest.iter().enumerate() {
            if rest_bits >> (rest.len() - 1 - pos) & 1 == 1 {
                idx |= state.mask(s);
            }
        }
        idx
    };
    let dk = 1usize << k;
    let dr = 1usize << rest.len();
    let amps = state.amplitudes();
    let mut rho = CMatrix::zeros(dk);
    for e in 0..dr {
        let col: Vec<C64> = (0..dk).map(|a| amps[split(a, e)]).collect();
        for a in 0..dk {
            if col[a] == ZERO {
                continue;
            }
            for b in 0..dk {
                rho[(a, b)] += col[a] * col[b].conj();
            }
        }
    }
    rho
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::linalg::pauli;
    use approx::assert_abs_diff_eq;
    use std::f64::consts::{FRAC_1_SQRT_2, LN_2};

    fn c(re: f64) -> C64 {
        C64::new(re, 0.0)
    }

    fn bell() -> StateVector {
        StateVector::from_amplitudes(vec![c(FRAC_1_SQRT_2), ZERO, ZERO, c(FRAC_1_SQRT_2)]).unwrap()
    }

    #[test]
    fn pauli_x_flips_most_significant_site() {
        let s = StateVector::zero(2).unwrap();
        let out = apply_on_site(&s, &SiteOperator::new(pauli::x(), 0)).unwrap();
        assert_eq!(out, StateVector::basis(2, 0b10).unwrap());
    }

    #[test]
    fn identity_leaves_state_unchanged() {
        let s = bell();
        let out = apply_on_site(&s, &SiteOperator::new(pauli::id(), 1)).unwrap();
        assert_eq!(out, s);
        let out = apply_on_link(&s, &TwoSiteOperator::new(CMatrix::identity(4), (0, 1))).unwrap();
        assert_eq!(out, s);
    }

    #[test]
    fn hadamard_on_zero() {
        let s = StateVector::zero(1).unwrap();
        let out = apply_on_site(&s, &SiteOperator::new(pauli::hadamard(), 0)).unwrap();
        assert_abs_diff_eq!(out.amplitudes()[0].re, FRAC_1_SQRT_2, epsilon = 1e-15);
        assert_abs_diff_eq!(out.amplitudes()[1].re, FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn cnot_prepares_bell_pair() {
        let off = apply_on_link(
            &StateVector::zero(2).unwrap(),
            &TwoSiteOperator::new(pauli::cnot(), (0, 1)),
        )
        .unwrap();
        assert_eq!(off, StateVector::zero(2).unwrap());

        let plus0 = StateVector::from_amplitudes(vec![c(FRAC_1_SQRT_2), ZERO, c(FRAC_1_SQRT_2), ZERO])
            .unwrap();
        let out = apply_on_link(&plus0, &TwoSiteOperator::new(pauli::cnot(), (0, 1))).unwrap();
        assert!(state_distance(&out, &bell()).unwrap() < 1e-15);
    }

    #[test]
    fn link_with_reversed_site_order() {
        // CNOT with control 1, target 0 on |01⟩ gives |11⟩.
        let s = StateVector::basis(2, 0b01).unwrap();
        let out = apply_on_link(&s, &TwoSiteOperator::new(pauli::cnot(), (1, 0))).unwrap();
        assert_eq!(out, StateVector::basis(2, 0b11).unwrap());
    }

    #[test]
    fn apply_errors() {
        let s = StateVector::zero(2).unwrap();
        assert!(matches!(
            apply_on_site(&s, &SiteOperator::new(pauli::x(), 2)),
            Err(Error::SiteOutOfRange { .. })
        ));
        let not_unitary = CMatrix::from_real_rows(&[[1.0, 1.0], [0.0, 1.0]]);
        assert!(matches!(
            apply_on_site(&s, &SiteOperator::new(not_unitary, 0)),
            Err(Error::NotUnitary(_))
        ));
        assert!(matches!(
            apply_on_link(&s, &TwoSiteOperator::new(pauli::cnot(), (1, 1))),
            Err(Error::OverlappingSites(1, 1))
        ));
        assert!(matches!(
            apply_on_link(&s, &TwoSiteOperator::new(pauli::cnot(), (0, 3))),
            Err(Error::SiteOutOfRange { .. })
        ));
    }

    #[test]
    fn expectation_examples() {
        let zero = StateVector::zero(1).unwrap();
        assert_eq!(expectation(&zero, &SiteOperator::new(pauli::z(), 0)).unwrap(), 1.0);
        assert_abs_diff_eq!(
            expectation(&bell(), &SiteOperator::new(pauli::z(), 0)).unwrap(),
            0.0,
            epsilon = 1e-15
        );
        let plus = StateVector::normalized(vec![ONE, ONE]).unwrap();
        assert_abs_diff_eq!(
            expectation(&plus, &SiteOperator::new(pauli::x(), 0)).unwrap(),
            1.0,
            epsilon = 1e-15
        );
        assert!(matches!(
            expectation(&plus, &SiteOperator::new(pauli::x(), 1)),
            Err(Error::SiteOutOfRange { .. })
        ));
    }

    #[test]
    fn reduced_density_examples() {
        let s = StateVector::product(&[[ONE, ZERO], [c(0.6), C64::new(0.0, 0.8)]]).unwrap();
        let rho = reduced_density(&s, 0).unwrap();
        assert!(rho.matrix().max_abs_diff(&CMatrix::from_real_rows(&[[1.0, 0.0], [0.0, 0.0]])) < 1e-15);

        let rho = reduced_density(&bell(), 1).unwrap();
        assert!(rho.matrix().max_abs_diff(&CMatrix::identity(2).scale_real(0.5)) < 1e-15);
    }

    /// Direct partial trace: ρ_ab = Σ_e ψ(a,e) ψ*(b,e) for site 0 of two.
    fn partial_trace_oracle(amps: &[C64]) -> [[C64; 2]; 2] {
        let mut rho = [[ZERO; 2]; 2];
        for a in 0..2 {
            for b in 0..2 {
                for e in 0..2 {
                    rho[a][b] += amps[2 * a + e] * amps[2 * b + e].conj();
                }
            }
        }
        rho
    }

    #[test]
    fn reduced_density_of_schmidt_state() {
        let theta: f64 = 0.37;
        let amps = vec![c(theta.cos()), ZERO, ZERO, c(theta.sin())];
        let oracle = partial_trace_oracle(&amps);
        assert_abs_diff_eq!(oracle[0][0].re, theta.cos().powi(2), epsilon = 1e-15);
        let rho = reduced_density(&StateVector::from_amplitudes(amps).unwrap(), 0).unwrap();
        assert!(rho.matrix().max_abs_diff(&CMatrix::from_rows(&oracle)) < 1e-15);
    }

    #[test]
    fn trace_distance_examples() {
        let zero = DensityMatrix::pure([ONE, ZERO]).unwrap();
        let one = DensityMatrix::pure([ZERO, ONE]).unwrap();
        let plus = DensityMatrix::pure([ONE, ONE]).unwrap();
        assert_eq!(trace_distance(&zero, &zero), 0.0);
        assert_abs_diff_eq!(trace_distance(&zero, &one), 1.0, epsilon = 1e-15);
        // ρ−σ = [[1/2, -1/2], [-1/2, -1/2]], eigenvalues ±1/√2.
        assert_abs_diff_eq!(trace_distance(&zero, &plus), FRAC_1_SQRT_2, epsilon = 1e-15);
    }

    #[test]
    fn density_validation() {
        assert!(DensityMatrix::new(CMatrix::identity(2)).is_err());
        assert!(DensityMatrix::new(CMatrix::from_real_rows(&[[1.5, 0.0], [0.0, -0.5]])).is_err());
        assert!(DensityMatrix::new(CMatrix::from_real_rows(&[[0.5, 0.4], [0.0, 0.5]])).is_err());
    }

    /// Schmidt oracle for two qubits: singular values of the 2×2 coefficient
    /// matrix are the square roots of eigenvalues of M M†.
    fn two_qubit_entropy_oracle(amps: &[C64]) -> f64 {
        let m = [[amps[0], amps[1]], [amps[2], amps[3]]];
        let a = m[0][0].norm_sqr() + m[0][1].norm_sqr();
        let d = m[1][0].norm_sqr() + m[1][1].norm_sqr();
        let b = m[0][0] * m[1][0].conj() + m[0][1] * m[1][1].conj();
        let r = (0.25 * (a - d).powi(2) + b.norm_sqr()).sqrt();
        [0.5 * (a + d) - r, 0.5 * (a + d) + r]
            .iter()
            .filter(|&&p| p > 0.0)
            .map(|&p| -p * p.ln())
            .sum()
    }

    #[test]
    fn entropy_examples() {
        let b = bell();
        let oracle = two_qubit_entropy_oracle(b.amplitudes());
        assert_abs_diff_eq!(oracle, LN_2, epsilon = 1e-15);
        assert_abs_diff_eq!(entanglement_entropy(&b, &[0]).unwrap(), oracle, epsilon = 1e-13);
        assert_abs_diff_eq!(
            entanglement_entropy(&StateVector::zero(2).unwrap(), &[0]).unwrap(),
            0.0,
            epsilon = 1e-12
        );
        let prod = StateVector::product(&[[c(0.3), c(0.7)], [c(0.9), C64::new(0.1, 0.2)], [ONE, ONE]])
            .unwrap();
        for cut in [&[0][..], &[1], &[0, 2], &[1, 2]] {
            assert!(entanglement_entropy(&prod, cut).unwrap() <= 1e-12);
        }
    }

    #[test]
    fn entropy_matches_schmidt_oracle_on_generic_state() {
        let amps = vec![c(0.2), C64::new(0.4, -0.1), C64::new(-0.3, 0.5), c(0.6)];
        let s = StateVector::normalized(amps).unwrap();
        let oracle = two_qubit_entropy_oracle(s.amplitudes());
        assert_abs_diff_eq!(entanglement_entropy(&s, &[1]).unwrap(), oracle, epsilon = 1e-13);
    }

    #[test]
    fn entropy_rejects_bad_cuts() {
        let s = StateVector::zero(3).unwrap();
        assert!(matches!(entanglement_entropy(&s, &[]), Err(Error::InvalidCut(_))));
        assert!(matches!(entanglement_entropy(&s, &[0, 1, 2]), Err(Error::InvalidCut(_))));
        assert!(matches!(entanglement_entropy(&s, &[0, 0]), Err(Error::InvalidCut(_))));
    }

    #[test]
    fn state_distance_examples() {
        let s = bell();
        assert_eq!(state_distance(&s, &s).unwrap(), 0.0);
        assert!(state_distance(&s, &s.with_global_phase(1.234)).unwrap() < 1e-12);
        let d = state_distance(&StateVector::zero(1).unwrap(), &StateVector::basis(1, 1).unwrap())
            .unwrap();
        assert_abs_diff_eq!(d, 2f64.sqrt(), epsilon = 1e-15);
        assert!(matches!(
            state_distance(&s, &StateVector::zero(1).unwrap()),
            Err(Error::DimensionMismatch(4, 2))
        ));
    }

    #[test]
    fn projection_gives_born_weights() {
        let (p, post) = bell().project_site(0, [ONE, ZERO]).unwrap();
        assert_abs_diff_eq!(p, 0.5, epsilon = 1e-15);
        assert_eq!(post.unwrap(), StateVector::zero(2).unwrap());
        let (p, post) = StateVector::zero(2).unwrap().project_site(0, [ZERO, ONE]).unwrap();
        assert_eq!(p, 0.0);
        assert!(post.is_none());
    }
}
