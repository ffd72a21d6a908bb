//! Nonlinear Tomonaga–Schwinger stepping in the interaction picture.
//!
//! Local fields carry the free on-site precession,
//! `O(i, τ) = e^{+iωτσ_z/2} O e^{−iωτσ_z/2}`, so fields at different sites
//! commute exactly. The state evolves one deformation at a time:
//!
//! * a site advance at `(i, τ_i)` applies `exp(−i·dt·(μ + c)·O(i, τ_i))`,
//!   where `c` is the nonlinear coefficient read off the pre-step state;
//! * a link gate at `(i, t)` applies `exp(−i·J·O(i, t)⊗O(i+1, t))`.
//!
//! Freezing `c` before the step makes every step an exact unitary.

use num_complex::Complex64 as C64;

use crate::error::{Error, Result};
use crate::linalg::{expm_hermitian, pauli, CMatrix};
use crate::quantum::{expectation_raw, SiteOperator, StateVector, TwoSiteOperator};
use crate::spacetime::{Deformation, Foliation, Hypersurface};

/// Base operator `O` of the nonlinearity.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Pauli {
    X,
    Y,
    Z,
}

impl Pauli {
    pub fn matrix(self) -> CMatrix {
        match self {
            Pauli::X => pauli::x(),
            Pauli::Y => pauli::y(),
            Pauli::Z => pauli::z(),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Pauli::X => "x",
            Pauli::Y => "y",
            Pauli::Z => "z",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub enum NonlinearityKind {
    None,
    /// `λ·⟨O(i, τ_i)⟩·O(i, τ_i)` at the advancing site.
    Local,
    /// `λ·⟨O(j, τ_j)⟩·O(i, τ_i)` with a fixed source site `j`.
    CoefficientNonlocal { source: usize },
    /// `λ·O(i, τ_i)⊗O(j, τ_j)` with a fixed partner site `j`.
    OperatorNonlocal { partner: usize },
}

impl NonlinearityKind {
    pub fn name(&self) -> &'static str {
        match self {
            NonlinearityKind::None => "none",
            NonlinearityKind::Local => "local",
            NonlinearityKind::CoefficientNonlocal { .. } => "coefficient_nonlocal",
            NonlinearityKind::OperatorNonlocal { .. } => "operator_nonlocal",
        }
    }

    /// Source or partner site of the nonlocal kinds.
    pub fn remote_site(&self) -> Option<usize> {
        match *self {
            NonlinearityKind::CoefficientNonlocal { source } => Some(source),
            NonlinearityKind::OperatorNonlocal { partner } => Some(partner),
            _ => None,
        }
    }

    pub fn is_local(&self) -> bool {
        matches!(self, NonlinearityKind::None | NonlinearityKind::Local)
    }
}

#[derive(Clone, Copy, Debug, PartialEq)]
pub struct NonlinearitySpec {
    pub kind: NonlinearityKind,
    pub lambda: f64,
    /// When set, only advances of this site carry the nonlinear term.
    pub restrict_to: Option<usize>,
}

impl NonlinearitySpec {
    pub fn none() -> Self {
        Self {
            kind: NonlinearityKind::None,
            lambda: 0.0,
            restrict_to: None,
        }
    }

    pub fn new(kind: NonlinearityKind, lambda: f64) -> Self {
        Self {
            kind,
            lambda,
            restrict_to: None,
        }
    }

    /// Whether advancing `site` picks up a nonlinear term. The source or
    /// partner of a nonlocal kind carries none itself.
    pub fn acts_on(&self, site: usize) -> bool {
        if matches!(self.kind, NonlinearityKind::None) {
            return false;
        }
        if self.restrict_to.is_some_and(|r| r != site) {
            return false;
        }
        self.kind.remote_site() != Some(site)
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct ModelConfig {
    pub n_sites: usize,
    pub horizon: usize,
    /// Free on-site precession frequency.
    pub omega: f64,
    /// Linear on-site interaction strength.
    pub mu: f64,
    /// Link coupling `J` of the `O⊗O` gates.
    pub link_coupling: f64,
    pub dt: f64,
    pub base_operator: Pauli,
    pub nonlinearity: NonlinearitySpec,
}

impl Default for ModelConfig {
    fn default() -> Self {
        Self {
            n_sites: 6,
            horizon: 4,
            omega: 1.0,
            mu: 0.7,
            link_coupling: 0.4,
            dt: 0.15,
            base_operator: Pauli::X,
            nonlinearity: NonlinearitySpec::new(NonlinearityKind::Local, 0.5),
        }
    }
}

impl ModelConfig {
    pub fn validate(&self) -> Result<()> {
        if self.n_sites < 2 || self.n_sites > crate::quantum::MAX_SITES {
            return Err(Error::DegenerateSize(format!(
                "n_sites = {} outside 2..={}",
                self.n_sites,
                crate::quantum::MAX_SITES
            )));
        }
        if self.horizon < 1 {
            return Err(Error::DegenerateSize("horizon T must be ≥ 1".into()));
        }
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::DegenerateSize(format!("dt = {} must be > 0", self.dt)));
        }
        for (name, v) in [
            ("omega", self.omega),
            ("mu", self.mu),
            ("link_coupling", self.link_coupling),
            ("lambda", self.nonlinearity.lambda),
        ] {
            if !v.is_finite() {
                return Err(Error::DegenerateSize(format!("{name} is not finite")));
            }
        }
        if let Some(j) = self.nonlinearity.kind.remote_site() {
            if j >= self.n_sites {
                return Err(Error::InvalidNonlinearity(format!(
                    "remote site {j} out of range for {} sites",
                    self.n_sites
                )));
            }
        }
        if let Some(r) = self.nonlinearity.restrict_to {
            if r >= self.n_sites {
                return Err(Error::InvalidNonlinearity(format!(
                    "restriction site {r} out of range"
                )));
            }
        }
        Ok(())
    }

    pub fn with_lambda(&self, lambda: f64) -> Self {
        let mut c = self.clone();
        c.nonlinearity.lambda = lambda;
        c
    }

    pub fn with_kind(&self, kind: NonlinearityKind) -> Self {
        let mut c = self.clone();
        c.nonlinearity.kind = kind;
        c
    }
}

/// Heisenberg field `O(i, τ)` under the free on-site Hamiltonian `ωσ_z/2`.
pub fn free_field(site: usize, tau: usize, config: &ModelConfig) -> SiteOperator {
    SiteOperator::new(free_field_matrix(tau, config), site)
}

fn free_field_matrix(tau: usize, config: &ModelConfig) -> CMatrix {
    let phi = 0.5 * config.omega * tau as f64;
    let rot = CMatrix::diagonal(&[C64::from_polar(1.0, phi), C64::from_polar(1.0, -phi)]);
    let m = rot.matmul(&config.base_operator.matrix()).matmul(&rot.adjoint());
    // Exact Hermitian symmetrization removes rounding asymmetry.
    m.add(&m.adjoint()).scale_real(0.5)
}

/// Frozen nonlinear coefficient for advancing `site`.
pub fn nonlinear_coefficient(
    state: &StateVector,
    surface: &Hypersurface,
    site: usize,
    config: &ModelConfig,
) -> Result<f64> {
    state.check_site(site)?;
    let spec = &config.nonlinearity;
    let remote = spec.kind.remote_site();
    if let Some(j) = remote {
        state.check_site(j)?;
        if j == site {
            return Err(Error::InvalidNonlinearity(format!(
                "remote site {j} coincides with the advancing site"
            )));
        }
    }
    if spec.restrict_to.is_some_and(|r| r != site) {
        return Ok(0.0);
    }
    Ok(match spec.kind {
        NonlinearityKind::None => 0.0,
        NonlinearityKind::Local => {
            let o = free_field_matrix(surface.height(site), config);
            spec.lambda * expectation_raw(state, &o, site).re
        }
        NonlinearityKind::CoefficientNonlocal { source } => {
            let o = free_field_matrix(surface.height(source), config);
            spec.lambda * expectation_raw(state, &o, source).re
        }
        NonlinearityKind::OperatorNonlocal { .. } => spec.lambda,
    })
}

/// Hermitian generator of one deformation.
#[derive(Clone, Debug, PartialEq)]
pub enum LocalGenerator {
    Site(SiteOperator),
    Pair(TwoSiteOperator),
}

#[derive(Clone, Debug, PartialEq)]
pub struct StepGenerator {
    pub generator: LocalGenerator,
    /// Frozen nonlinear coefficient (0 for link gates).
    pub coefficient: f64,
    /// Step length multiplying the generator in the exponent.
    pub step: f64,
}

pub fn step_generator(
    state: &StateVector,
    surface: &Hypersurface,
    d: &Deformation,
    config: &ModelConfig,
) -> Result<StepGenerator> {
    if !surface.is_enabled(d) {
        return Err(Error::NotEnabled(*d));
    }
    match *d {
        Deformation::LinkApply { link, time } => {
            let o = free_field_matrix(time, config);
            let h = o.kron(&o).scale_real(config.link_coupling);
            Ok(StepGenerator {
                generator: LocalGenerator::Pair(TwoSiteOperator::new(h, (link, link + 1))),
                coefficient: 0.0,
                step: 1.0,
            })
        }
        Deformation::SiteAdvance(i) => {
            let o = free_field_matrix(surface.height(i), config);
            let spec = &config.nonlinearity;
            let active = spec.acts_on(i);
            let coefficient = if active {
                nonlinear_coefficient(state, surface, i, config)?
            } else {
                0.0
            };
            let generator = match spec.kind {
                NonlinearityKind::OperatorNonlocal { partner } if active => {
                    let oj = free_field_matrix(surface.height(partner), config);
                    let h = o
                        .kron(&pauli::id())
                        .scale_real(config.mu)
                        .add(&o.kron(&oj).scale_real(coefficient));
                    LocalGenerator::Pair(TwoSiteOperator::new(h, (i, partner)))
                }
                _ => LocalGenerator::Site(SiteOperator::new(
                    o.scale_real(config.mu + coefficient),
                    i,
                )),
            };
            Ok(StepGenerator {
                generator,
                coefficient,
                step: config.dt,
            })
        }
    }
}

/// Unitary actually applied by a step.
#[derive(Clone, Debug, PartialEq)]
pub enum StepUnitary {
    Site(SiteOperator),
    Pair(TwoSiteOperator),
}

impl StepUnitary {
    pub(crate) fn apply_mut(&self, state: &mut StateVector) {
        match self {
            StepUnitary::Site(op) => state.apply_1q_mut(&op.matrix, op.site),
            StepUnitary::Pair(op) => state.apply_2q_mut(&op.matrix, op.sites.0, op.sites.1),
        }
    }

    pub fn matrix(&self) -> &CMatrix {
        match self {
            StepUnitary::Site(op) => &op.matrix,
            StepUnitary::Pair(op) => &op.matrix,
        }
    }
}

#[derive(Clone, Debug, PartialEq)]
pub struct TrajectoryEntry {
    pub deformation: Deformation,
    pub coefficient: f64,
    pub unitary: StepUnitary,
    /// `⟨O(i, τ_i)⟩` for every site on the pre-step surface.
    pub expectations: Vec<f64>,
}

#[derive(Clone, Debug, Default, PartialEq)]
pub struct TrajectoryRecord {
    pub n_sites: usize,
    pub entries: Vec<TrajectoryEntry>,
}

impl TrajectoryRecord {
    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }
}

/// Field expectations `⟨O(i, τ_i)⟩` on a surface.
pub fn surface_expectations(
    state: &StateVector,
    surface: &Hypersurface,
    config: &ModelConfig,
) -> Vec<f64> {
    (0..state.n_sites())
        .map(|i| expectation_raw(state, &free_field_matrix(surface.height(i), config), i).re)
        .collect()
}

/// One finite deformation.
pub fn ts_step(
    state: &StateVector,
    surface: &Hypersurface,
    d: &Deformation,
    config: &ModelConfig,
) -> Result<(StateVector, Hypersurface, TrajectoryEntry)> {
    let gen = step_generator(state, surface, d, config)?;
    let unitary = match &gen.generator {
        LocalGenerator::Site(h) => {
            StepUnitary::Site(SiteOperator::new(expm_hermitian(&h.matrix, gen.step)?, h.site))
        }
        LocalGenerator::Pair(h) => {
            StepUnitary::Pair(TwoSiteOperator::new(expm_hermitian(&h.matrix, gen.step)?, h.sites))
        }
    };
    let expectations = surface_expectations(state, surface, config);
    let mut next = state.clone();
    unitary.apply_mut(&mut next);
    let next_surface = surface.apply(d)?;
    Ok((
        next,
        next_surface,
        TrajectoryEntry {
            deformation: *d,
            coefficient: gen.coefficient,
            unitary,
            expectations,
        },
    ))
}

/// Final state of the evolution together with every intermediate state.
#[derive(Clone, Debug)]
pub struct Evolution {
    pub final_state: StateVector,
    pub record: TrajectoryRecord,
    /// `states[k]` is the state on the surface after `k` steps.
    pub states: Vec<StateVector>,
    pub surfaces: Vec<Hypersurface>,
}

/// Folds [`ts_step`] over a foliation.
pub fn evolve(
    state0: &StateVector,
    foliation: &Foliation,
    config: &ModelConfig,
) -> Result<(StateVector, TrajectoryRecord)> {
    let ev = evolve_tracked(state0, foliation, config)?;
    Ok((ev.final_state, ev.record))
}

/// [`evolve`] keeping the intermediate states and surfaces.
pub fn evolve_tracked(
    state0: &StateVector,
    foliation: &Foliation,
    config: &ModelConfig,
) -> Result<Evolution> {
    config.validate()?;
    if foliation.n_sites != config.n_sites || foliation.horizon != config.horizon {
        return Err(Error::FoliationMismatch {
            found_sites: foliation.n_sites,
            found_horizon: foliation.horizon,
            n_sites: config.n_sites,
            horizon: config.horizon,
        });
    }
    if state0.n_sites() != config.n_sites {
        return Err(Error::DimensionMismatch(state0.n_sites(), config.n_sites));
    }
    let mut surface = Hypersurface::flat(config.n_sites, config.horizon)?;
    let mut state = state0.clone();
    let mut record = TrajectoryRecord {
        n_sites: config.n_sites,
        entries: Vec::with_capacity(foliation.len()),
    };
    let mut states = Vec::with_capacity(foliation.len() + 1);
    let mut surfaces = Vec::with_capacity(foliation.len() + 1);
    states.push(state.clone());
    surfaces.push(surface.clone());
    for d in &foliation.steps {
        let (s, surf, entry) = ts_step(&state, &surface, d, config)?;
        state = s;
        surface = surf;
        record.entries.push(entry);
        states.push(state.clone());
        surfaces.push(surface.clone());
    }
    Ok(Evolution {
        final_state: state,
        record,
        states,
        surfaces,
    })
}

/// Largest lattice for which [`compose_map`] builds the dense propagator.
pub const COMPOSE_MAX_SITES: usize = 10;

/// Product of the recorded step unitaries, embedded in the full space.
pub fn compose_map(record: &TrajectoryRecord) -> Result<CMatrix> {
    compose_prefix(record, record.len())
}

/// Propagator of the first `steps` entries of a record.
pub fn compose_prefix(record: &TrajectoryRecord, steps: usize) -> Result<CMatrix> {
    let n = record.n_sites;
    if n > COMPOSE_MAX_SITES {
        return Err(Error::TooLarge(format!(
            "dense propagator needs n_sites ≤ {COMPOSE_MAX_SITES}, got {n}"
        )));
    }
    let dim = 1usize << n;
    let mut columns: Vec<StateVector> = (0..dim)
        .map(|k| StateVector::basis(n, k))
        .collect::<Result<_>>()?;
    for entry in record.entries.iter().take(steps) {
        for col in columns.iter_mut() {
            entry.unitary.apply_mut(col);
        }
    }
    let mut u = CMatrix::zeros(dim);
    for (c, col) in columns.iter().enumerate() {
        for (r, &a) in col.amplitudes().iter().enumerate() {
            u[(r, c)] = a;
        }
    }
    Ok(u)
}
