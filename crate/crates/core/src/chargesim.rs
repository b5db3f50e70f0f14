//! Charging-cycle simulation and Monte Carlo reliability statistics.
//!
//! A policy cycles through its current vectors with equal dwell times. A
//! receiver harvests `|v|²/(8 r_r)·ΔT` during every step whose peak voltage
//! strictly exceeds the rectifier threshold, and nothing otherwise.
//!
//! Monte Carlo samples draw from one ChaCha8 stream per sample index, so the
//! resulting distribution does not depend on thread count or scheduling.

use std::f64::consts::PI;

use nalgebra::Vector3;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::beamform::CurrentSet;
use crate::error::{domain, Result};
use crate::fieldcore::{
    channel_matrix, induced_voltage, CoilSpec, Medium, Orientation, SphericalLocation,
};
use crate::par;

#[derive(Debug, Clone, PartialEq)]
pub struct ChargingPolicy {
    pub current_set: CurrentSet,
    /// s
    pub cycle_seconds: f64,
}

impl ChargingPolicy {
    pub fn new(current_set: CurrentSet, cycle_seconds: f64) -> Result<Self> {
        if !(cycle_seconds.is_finite() && cycle_seconds > 0.0) {
            return domain(format!("cycle_seconds must be > 0, got {cycle_seconds}"));
        }
        Ok(Self {
            current_set,
            cycle_seconds,
        })
    }

    /// `ΔT = T_c / n_cv`
    pub fn dwell_seconds(&self) -> f64 {
        self.cycle_seconds / self.current_set.n_cv() as f64
    }

    pub fn n_cv(&self) -> usize {
        self.current_set.n_cv()
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ReceiverSample {
    pub location: SphericalLocation,
    pub orientation: Orientation,
    pub rx_coil: CoilSpec,
}

/// Everything about the link that is not the policy or the receiver.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct LinkSetup {
    pub tx: CoilSpec,
    pub medium: Medium,
    /// Rectifier threshold, V.
    pub v_th: f64,
    /// Harvested power is `|v|² / (load_factor · r_r)`; 8 is a matched load
    /// driven by a sinusoid of peak `|v|`.
    pub load_factor: f64,
}

impl Default for LinkSetup {
    fn default() -> Self {
        Self {
            tx: CoilSpec::reference_transmitter(),
            medium: Medium::reference_air(),
            v_th: 0.2,
            load_factor: 8.0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ChargingOutcome {
    /// `|v|` for each current vector, V.
    pub step_voltages: Vec<f64>,
    /// J
    pub harvested_energy: f64,
    pub charged_steps: usize,
}

pub fn simulate_cycle(
    policy: &ChargingPolicy,
    rx: &ReceiverSample,
    link: &LinkSetup,
) -> Result<ChargingOutcome> {
    let channel = channel_matrix(&link.tx, &link.medium, &rx.location)?;
    let dwell = policy.dwell_seconds();
    let mut outcome = ChargingOutcome {
        step_voltages: Vec::with_capacity(policy.n_cv()),
        harvested_energy: 0.0,
        charged_steps: 0,
    };
    for vector in &policy.current_set.vectors {
        let h = channel.field(&vector.i);
        let v = induced_voltage(&h, &rx.orientation, &rx.rx_coil, &link.medium).norm();
        outcome.step_voltages.push(v);
        if v > link.v_th {
            outcome.charged_steps += 1;
            outcome.harvested_energy += v * v / (link.load_factor * rx.rx_coil.resistance) * dwell;
        }
    }
    Ok(outcome)
}

/// Uniform direction on the unit sphere.
pub fn sample_orientation<R: Rng + ?Sized>(rng: &mut R) -> Orientation {
    loop {
        let v = Vector3::from_fn(|_, _| StandardNormal.sample(rng));
        if let Ok(o) = Orientation::from_vector(v) {
            return o;
        }
    }
}

/// Uniform point on the sphere of radius `range`.
pub fn sample_location<R: Rng + ?Sized>(rng: &mut R, range: f64) -> Result<SphericalLocation> {
    if !(range.is_finite() && range > 0.0) {
        return domain(format!("range must be > 0, got {range}"));
    }
    let cos_polar: f64 = rng.random_range(-1.0..=1.0);
    let azimuth: f64 = rng.random_range(0.0..2.0 * PI);
    SphericalLocation::new(range, cos_polar.clamp(-1.0, 1.0).acos(), azimuth)
}

/// Stream `index` of the generator keyed by `seed`.
pub fn sample_stream(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum SamplingMode {
    /// Receiver at one location, random orientation.
    FixedLocation(SphericalLocation),
    /// Random direction at a fixed range, random orientation.
    RandomLocation { range: f64 },
}

/// Draws receiver `index`. The orientation is drawn first in both modes so
/// paired runs see the same orientations.
pub fn draw_receiver(
    seed: u64,
    index: u64,
    mode: &SamplingMode,
    rx_coil: &CoilSpec,
) -> Result<ReceiverSample> {
    let mut rng = sample_stream(seed, index);
    let orientation = sample_orientation(&mut rng);
    let location = match *mode {
        SamplingMode::FixedLocation(loc) => loc,
        SamplingMode::RandomLocation { range } => sample_location(&mut rng, range)?,
    };
    Ok(ReceiverSample {
        location,
        orientation,
        rx_coil: *rx_coil,
    })
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Quantile {
    pub p: f64,
    pub value: f64,
}

#[derive(Debug, Clone, PartialEq)]
pub struct EnergyCdf {
    /// Sorted, J.
    pub samples: Vec<f64>,
    pub zero_probability: f64,
    /// 1 %, 10 %, 50 % and 90 %.
    pub quantiles: Vec<Quantile>,
}

pub const REPORTED_QUANTILES: [f64; 4] = [0.01, 0.10, 0.50, 0.90];

impl EnergyCdf {
    /// Linear interpolation between order statistics at `(n − 1)·p`.
    pub fn quantile(&self, p: f64) -> f64 {
        let n = self.samples.len();
        let h = (n - 1) as f64 * p.clamp(0.0, 1.0);
        let lo = h.floor() as usize;
        let hi = (lo + 1).min(n - 1);
        self.samples[lo] + (h - lo as f64) * (self.samples[hi] - self.samples[lo])
    }

    pub fn median(&self) -> f64 {
        self.quantile(0.5)
    }

    /// `(energy, k/N)` for every sorted sample.
    pub fn steps(&self) -> impl Iterator<Item = (f64, f64)> + '_ {
        let n = self.samples.len() as f64;
        self.samples
            .iter()
            .enumerate()
            .map(move |(k, &e)| (e, (k + 1) as f64 / n))
    }
}

pub fn cdf_stats(samples: &[f64]) -> Result<EnergyCdf> {
    if samples.is_empty() {
        return domain("cdf_stats needs at least one sample");
    }
    if let Some(bad) = samples.iter().find(|x| !x.is_finite()) {
        return domain(format!("non-finite energy sample {bad}"));
    }
    let mut sorted = samples.to_vec();
    sorted.sort_by(f64::total_cmp);
    let zeros = sorted.iter().filter(|&&x| x == 0.0).count();
    let mut cdf = EnergyCdf {
        zero_probability: zeros as f64 / sorted.len() as f64,
        samples: sorted,
        quantiles: Vec::new(),
    };
    cdf.quantiles = REPORTED_QUANTILES
        .iter()
        .map(|&p| Quantile {
            p,
            value: cdf.quantile(p),
        })
        .collect();
    Ok(cdf)
}

fn energies(
    policy: &ChargingPolicy,
    n: usize,
    mode: &SamplingMode,
    seed: u64,
    rx_coil: &CoilSpec,
    link: &LinkSetup,
    parallel: bool,
) -> Result<Vec<f64>> {
    if n == 0 {
        return domain("monte_carlo needs n >= 1");
    }
    let one = |k: usize| -> Result<f64> {
        let rx = draw_receiver(seed, k as u64, mode, rx_coil)?;
        Ok(simulate_cycle(policy, &rx, link)?.harvested_energy)
    };
    let results = if parallel {
        par::map_indexed(n, one)
    } else {
        par::map_indexed_sequential(n, one)
    };
    results.into_iter().collect()
}

/// Harvested-energy distribution over `n` receivers.
pub fn monte_carlo(
    policy: &ChargingPolicy,
    n: usize,
    mode: &SamplingMode,
    seed: u64,
    rx_coil: &CoilSpec,
    link: &LinkSetup,
) -> Result<EnergyCdf> {
    cdf_stats(&energies(policy, n, mode, seed, rx_coil, link, true)?)
}

/// [`monte_carlo`] on the calling thread only.
pub fn monte_carlo_sequential(
    policy: &ChargingPolicy,
    n: usize,
    mode: &SamplingMode,
    seed: u64,
    rx_coil: &CoilSpec,
    link: &LinkSetup,
) -> Result<EnergyCdf> {
    cdf_stats(&energies(policy, n, mode, seed, rx_coil, link, false)?)
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TracePoint {
    /// Segment start, s.
    pub t_s: f64,
    pub v_abs: f64,
    pub above_threshold: bool,
}

/// Piecewise-constant `|v|` over one cycle, one point per segment.
pub fn voltage_trace(
    policy: &ChargingPolicy,
    rx: &ReceiverSample,
    link: &LinkSetup,
) -> Result<Vec<TracePoint>> {
    let outcome = simulate_cycle(policy, rx, link)?;
    let dwell = policy.dwell_seconds();
    Ok(outcome
        .step_voltages
        .iter()
        .enumerate()
        .map(|(k, &v)| TracePoint {
            t_s: k as f64 * dwell,
            v_abs: v,
            above_threshold: v > link.v_th,
        })
        .collect())
}
