//! Discrete spacetime: hypersurfaces on a brickwork lattice and the
//! foliations that sweep them from the flat initial surface to the flat
//! final one.
//!
//! A surface is a height function `τ_i ∈ [0, T]` per site together with the
//! set of link gates already crossed. Link `(i, i+1)` carries a gate at every
//! time `t < T` with `t ≡ i (mod 2)`. This parity rule guarantees that any two
//! simultaneously enabled deformations act on disjoint sites, so their
//! operators commute exactly.

use std::collections::{BTreeSet, HashMap, HashSet, VecDeque};
use std::fmt;
use std::str::FromStr;

use rand::seq::IndexedRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};

/// Elementary surface advance.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Deformation {
    /// Advance the surface at `site` by one time step.
    SiteAdvance(usize),
    /// Cross the gate on link `(link, link + 1)` at `time`.
    LinkApply { link: usize, time: usize },
}

impl Deformation {
    /// Sites touched by the deformation.
    pub fn support(&self) -> Vec<usize> {
        match *self {
            Deformation::SiteAdvance(i) => vec![i],
            Deformation::LinkApply { link, .. } => vec![link, link + 1],
        }
    }

    pub fn is_disjoint_from(&self, other: &Deformation) -> bool {
        let a = self.support();
        other.support().iter().all(|s| !a.contains(s))
    }
}

impl fmt::Display for Deformation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match *self {
            Deformation::SiteAdvance(i) => write!(f, "A {i}"),
            Deformation::LinkApply { link, time } => write!(f, "G {link} {time}"),
        }
    }
}

impl FromStr for Deformation {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, String> {
        let mut parts = s.split_whitespace();
        let tag = parts.next().ok_or("empty step")?;
        let mut num = |what: &str| -> std::result::Result<usize, String> {
            parts
                .next()
                .ok_or(format!("missing {what}"))?
                .parse::<usize>()
                .map_err(|e| format!("bad {what}: {e}"))
        };
        let d = match tag {
            "A" => Deformation::SiteAdvance(num("site")?),
            "G" => {
                let link = num("link")?;
                let time = num("time")?;
                Deformation::LinkApply { link, time }
            }
            other => return Err(format!("unknown step tag `{other}` (expected A or G)")),
        };
        if parts.next().is_some() {
            return Err("trailing tokens".into());
        }
        Ok(d)
    }
}

/// A spacelike hypersurface of the brickwork lattice.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Hypersurface {
    heights: Vec<usize>,
    applied_gates: BTreeSet<(usize, usize)>,
    horizon: usize,
}

/// Whether link `(link, link+1)` carries a gate at `time`.
pub fn has_gate(link: usize, time: usize, horizon: usize) -> bool {
    time < horizon && time % 2 == link % 2
}

/// Number of gates on an `n`-site chain with horizon `T`.
pub fn gate_count(n_sites: usize, horizon: usize) -> usize {
    (0..n_sites.saturating_sub(1))
        .map(|link| (0..horizon).filter(|&t| has_gate(link, t, horizon)).count())
        .sum()
}

/// Length of every complete foliation: `N·T + G`.
pub fn foliation_length(n_sites: usize, horizon: usize) -> usize {
    n_sites * horizon + gate_count(n_sites, horizon)
}

/// The flat surface `τ = 0` with no gates crossed.
pub fn initial_surface(n_sites: usize, horizon: usize) -> Result<Hypersurface> {
    if n_sites < 2 {
        return Err(Error::DegenerateSize(format!("n_sites = {n_sites} < 2")));
    }
    Hypersurface::flat(n_sites, horizon)
}

impl Hypersurface {
    /// Flat initial surface; admits single-site chains.
    pub(crate) fn flat(n_sites: usize, horizon: usize) -> Result<Self> {
        if n_sites == 0 {
            return Err(Error::DegenerateSize("n_sites = 0".into()));
        }
        if horizon == 0 {
            return Err(Error::DegenerateSize("horizon T = 0".into()));
        }
        Ok(Self {
            heights: vec![0; n_sites],
            applied_gates: BTreeSet::new(),
            horizon,
        })
    }

    pub fn heights(&self) -> &[usize] {
        &self.heights
    }

    pub fn height(&self, site: usize) -> usize {
        self.heights[site]
    }

    pub fn applied_gates(&self) -> &BTreeSet<(usize, usize)> {
        &self.applied_gates
    }

    pub fn horizon(&self) -> usize {
        self.horizon
    }

    pub fn n_sites(&self) -> usize {
        self.heights.len()
    }

    pub fn is_final(&self) -> bool {
        self.heights.iter().all(|&h| h == self.horizon)
            && self.applied_gates.len() == gate_count(self.n_sites(), self.horizon)
    }

    fn gate_pending(&self, link: usize, time: usize) -> bool {
        has_gate(link, time, self.horizon) && !self.applied_gates.contains(&(link, time))
    }

    pub fn is_enabled(&self, d: &Deformation) -> bool {
        let n = self.n_sites();
        match *d {
            Deformation::LinkApply { link, time } => {
                link + 1 < n
                    && self.gate_pending(link, time)
                    && self.heights[link] == time
                    && self.heights[link + 1] == time
            }
            Deformation::SiteAdvance(i) => {
                if i >= n || self.heights[i] >= self.horizon {
                    return false;
                }
                let tau = self.heights[i];
                let left_blocked = i > 0 && self.gate_pending(i - 1, tau);
                let right_blocked = i + 1 < n && self.gate_pending(i, tau);
                !(left_blocked || right_blocked)
            }
        }
    }

    /// All enabled deformations: link gates in ascending link order, then
    /// site advances in ascending site order.
    pub fn enabled_deformations(&self) -> Vec<Deformation> {
        let n = self.n_sites();
        let links = (0..n.saturating_sub(1)).filter_map(|link| {
            let d = Deformation::LinkApply {
                link,
                time: self.heights[link],
            };
            self.is_enabled(&d).then_some(d)
        });
        let sites = (0..n)
            .map(Deformation::SiteAdvance)
            .filter(|d| self.is_enabled(d));
        links.chain(sites).collect()
    }

    pub fn apply(&self, d: &Deformation) -> Result<Self> {
        if !self.is_enabled(d) {
            return Err(Error::NotEnabled(*d));
        }
        let mut next = self.clone();
        match *d {
            Deformation::SiteAdvance(i) => next.heights[i] += 1,
            Deformation::LinkApply { link, time } => {
                next.applied_gates.insert((link, time));
            }
        }
        Ok(next)
    }
}

pub fn enabled_deformations(s: &Hypersurface) -> Vec<Deformation> {
    s.enabled_deformations()
}

pub fn apply_deformation(s: &Hypersurface, d: &Deformation) -> Result<Hypersurface> {
    s.apply(d)
}

/// Ordered sweep from the initial to the final surface.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Foliation {
    pub n_sites: usize,
    pub horizon: usize,
    pub steps: Vec<Deformation>,
    pub seed: Option<u64>,
}

impl Foliation {
    pub fn new(n_sites: usize, horizon: usize, steps: Vec<Deformation>) -> Self {
        Self {
            n_sites,
            horizon,
            steps,
            seed: None,
        }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    /// Replays the steps, returning every visited surface (initial first).
    pub fn replay(&self) -> Result<Vec<Hypersurface>> {
        let mut s = Hypersurface::flat(self.n_sites, self.horizon)?;
        let mut surfaces = Vec::with_capacity(self.steps.len() + 1);
        surfaces.push(s.clone());
        for d in &self.steps {
            s = s.apply(d)?;
            surfaces.push(s.clone());
        }
        Ok(surfaces)
    }

    /// Checks the foliation is a complete linear extension.
    pub fn validate(&self) -> Result<()> {
        let surfaces = self.replay()?;
        let last = surfaces.last().expect("replay yields the initial surface");
        if !last.is_final() {
            return Err(Error::DegenerateSize(format!(
                "foliation stops short of the final surface after {} steps",
                self.steps.len()
            )));
        }
        Ok(())
    }

    /// One step per line: `A <site>` or `G <link> <time>`.
    pub fn serialize(&self) -> String {
        self.steps.iter().map(|d| format!("{d}\n")).collect()
    }

    /// Parses the line format written by [`Foliation::serialize`] and checks
    /// that it is a complete foliation of the given lattice. Blank lines and
    /// lines starting with `#` are skipped.
    pub fn parse(text: &str, n_sites: usize, horizon: usize) -> Result<Self> {
        let mut steps = Vec::new();
        let mut s = Hypersurface::flat(n_sites, horizon)?;
        for (k, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let d: Deformation = line.parse().map_err(|msg| Error::FoliationParse {
                line: k + 1,
                msg,
            })?;
            s = s.apply(&d).map_err(|_| Error::FoliationParse {
                line: k + 1,
                msg: format!("step `{d}` is not enabled here"),
            })?;
            steps.push(d);
        }
        if !s.is_final() {
            return Err(Error::FoliationParse {
                line: text.lines().count(),
                msg: "foliation does not reach the final surface".into(),
            });
        }
        Ok(Self::new(n_sites, horizon, steps))
    }
}

/// Samples uniformly among enabled deformations at each step.
pub fn random_foliation(n_sites: usize, horizon: usize, seed: u64) -> Result<Foliation> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut s = initial_surface(n_sites, horizon)?;
    let mut steps = Vec::with_capacity(foliation_length(n_sites, horizon));
    loop {
        let enabled = s.enabled_deformations();
        let Some(&d) = enabled.choose(&mut rng) else {
            break;
        };
        s = s.apply(&d)?;
        steps.push(d);
    }
    Ok(Foliation {
        n_sites,
        horizon,
        steps,
        seed: Some(seed),
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CanonicalKind {
    /// Layer by layer: gates of the layer, then every site advance.
    Synchronous,
    /// Lowest site first, as far as the causal order allows.
    Staircase,
}

pub fn canonical_foliation(n_sites: usize, horizon: usize, kind: CanonicalKind) -> Result<Foliation> {
    let mut s = initial_surface(n_sites, horizon)?;
    let mut steps = Vec::with_capacity(foliation_length(n_sites, horizon));
    match kind {
        CanonicalKind::Synchronous => loop {
            let enabled = s.enabled_deformations();
            if enabled.is_empty() {
                break;
            }
            let gates: Vec<_> = enabled
                .iter()
                .filter(|d| matches!(d, Deformation::LinkApply { .. }))
                .copied()
                .collect();
            let batch = if gates.is_empty() { enabled } else { gates };
            for d in batch {
                s = s.apply(&d)?;
                steps.push(d);
            }
        },
        CanonicalKind::Staircase => {
            let key = |d: &Deformation, s: &Hypersurface| match *d {
                Deformation::LinkApply { link, time } => (link, time, 0),
                Deformation::SiteAdvance(i) => (i, s.height(i), 1),
            };
            while let Some(d) = s
                .enabled_deformations()
                .into_iter()
                .min_by_key(|d| key(d, &s))
            {
                s = s.apply(&d)?;
                steps.push(d);
            }
        }
    }
    Ok(Foliation::new(n_sites, horizon, steps))
}

/// Largest instance [`count_foliations`] accepts, in steps.
pub const COUNT_MAX_STEPS: usize = 48;

/// Exact number of complete foliations, by memoized depth-first search over
/// reachable surfaces.
pub fn count_foliations(n_sites: usize, horizon: usize) -> Result<u128> {
    let len = foliation_length(n_sites, horizon);
    if len > COUNT_MAX_STEPS {
        return Err(Error::TooLarge(format!(
            "{len} steps exceeds the enumeration limit of {COUNT_MAX_STEPS}"
        )));
    }
    let start = Hypersurface::flat(n_sites, horizon)?;
    let mut memo = HashMap::new();
    count_from(&start, &mut memo)
}

fn count_from(s: &Hypersurface, memo: &mut HashMap<Hypersurface, u128>) -> Result<u128> {
    if let Some(&c) = memo.get(s) {
        return Ok(c);
    }
    let enabled = s.enabled_deformations();
    let total = if enabled.is_empty() {
        1
    } else {
        let mut acc: u128 = 0;
        for d in &enabled {
            let sub = count_from(&s.apply(d)?, memo)?;
            acc = acc
                .checked_add(sub)
                .ok_or_else(|| Error::TooLarge("foliation count overflows u128".into()))?;
        }
        acc
    };
    memo.insert(s.clone(), total);
    Ok(total)
}

/// Every surface reachable from the initial one, in breadth-first order.
pub fn reachable_surfaces(n_sites: usize, horizon: usize) -> Result<Vec<Hypersurface>> {
    let start = Hypersurface::flat(n_sites, horizon)?;
    let mut seen = HashSet::new();
    let mut order = Vec::new();
    let mut queue = VecDeque::from([start.clone()]);
    seen.insert(start);
    while let Some(s) = queue.pop_front() {
        for d in s.enabled_deformations() {
            let next = s.apply(&d)?;
            if seen.insert(next.clone()) {
                queue.push_back(next);
            }
        }
        order.push(s);
    }
    Ok(order)
}
