//! Current-vector design for blind beamforming.
//!
//! For a target field direction `u` at a known receiver location the design
//! problem is
//!
//! ```text
//! minimize   ‖t·u − H·i‖²
//! s.t.       ‖H·i‖² = t²,   iᴴ R i ≤ 2 P_max,   (uᵀ Re(H·i))² ≥ v_th² / g²
//! ```
//!
//! where `g` is the receiver voltage gain. Complex quantities are embedded in
//! real space (`ℂ³ → ℝ⁶`), the objective becomes the quadratic form
//! `[i; t]ᵀ A [i; t]` with a 7×7 Gram-type matrix `A`, and the problem is
//! relaxed to an SDP over `β = [i; t][i; t]ᵀ`. The current is read back from
//! the dominant eigenpair of `β`.

use std::f64::consts::PI;

use nalgebra::{DMatrix, Matrix3, SMatrix, SVector, Vector3};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use serde::{Deserialize, Serialize};

use crate::error::{domain, MagbbError, Result};
use crate::fieldcore::{
    channel_matrix, induced_voltage, voltage_gain, ChannelMatrix, CoilSpec, Medium, Orientation,
    SphericalLocation,
};
use crate::par;
use crate::sdpsolve::{self, Relation, SdpConstraint, SdpProblem, SdpStatus, SolverOptions};

pub type Vector6 = SVector<f64, 6>;
pub type Matrix6 = SMatrix<f64, 6, 6>;
pub type Vector7 = SVector<f64, 7>;
pub type Matrix7 = SMatrix<f64, 7, 7>;

/// Real embedding of the complex design quantities.
#[derive(Debug, Clone, PartialEq)]
pub struct RealDecomposition {
    /// `[Re u; Im u]`
    pub u_real: Vector6,
    /// `[[Re H, −Im H], [Im H, Re H]]`
    pub h_chan_real: Matrix6,
    /// Block form of `R = r_t·I`.
    pub r_real: Matrix6,
}

/// `[Re x; Im x]`
pub fn embed_vector(x: &Vector3<Complex64>) -> Vector6 {
    Vector6::from_fn(|k, _| if k < 3 { x[k].re } else { x[k - 3].im })
}

/// Inverse of [`embed_vector`].
pub fn reassemble(x: &Vector6) -> Vector3<Complex64> {
    Vector3::from_fn(|k, _| Complex64::new(x[k], x[k + 3]))
}

pub fn embed_matrix(m: &Matrix3<Complex64>) -> Matrix6 {
    Matrix6::from_fn(|r, c| {
        let z = m[(r % 3, c % 3)];
        match (r < 3, c < 3) {
            (true, true) | (false, false) => z.re,
            (true, false) => -z.im,
            (false, true) => z.im,
        }
    })
}

pub fn decompose(h: &Matrix3<Complex64>, u: &Orientation, r_t: f64) -> RealDecomposition {
    let u = u.unit_vector();
    let u_complex = u.map(|x| Complex64::new(x, 0.0));
    RealDecomposition {
        u_real: embed_vector(&u_complex),
        h_chan_real: embed_matrix(h),
        r_real: Matrix6::identity() * r_t,
    }
}

/// The homogenized objective and the lifted constraint data.
#[derive(Debug, Clone, PartialEq)]
pub struct HomogenizedProblem {
    /// `[[H̃ᵀH̃, −H̃ᵀũ], [−ũᵀH̃, ‖ũ‖²]]`
    pub a_matrix: Matrix7,
    /// `2·P_max`, W
    pub power_bound: f64,
    /// `v_th² / (ω μr μ0 N_r π a_r²)²`
    pub voltage_bound: f64,
    pub r_real: Matrix6,
    /// `H̃ᵀH̃`
    pub field_gram: Matrix6,
    /// `H̃ᵀũũᵀH̃`
    pub voltage_matrix: Matrix6,
}

pub fn build_problem(
    dec: &RealDecomposition,
    p_max: f64,
    v_th: f64,
    rx: &CoilSpec,
    medium: &Medium,
) -> Result<HomogenizedProblem> {
    if !(p_max.is_finite() && p_max > 0.0) {
        return domain(format!("p_max must be > 0, got {p_max}"));
    }
    if !(v_th.is_finite() && v_th >= 0.0) {
        return domain(format!("v_th must be >= 0, got {v_th}"));
    }
    let h = &dec.h_chan_real;
    let u = &dec.u_real;
    let field_gram = h.transpose() * h;
    let cross = h.transpose() * u;
    let mut a_matrix = Matrix7::zeros();
    a_matrix.fixed_view_mut::<6, 6>(0, 0).copy_from(&field_gram);
    a_matrix.fixed_view_mut::<6, 1>(0, 6).copy_from(&(-cross));
    a_matrix
        .fixed_view_mut::<1, 6>(6, 0)
        .copy_from(&(-cross.transpose()));
    a_matrix[(6, 6)] = u.norm_squared();
    let gain = voltage_gain(rx, medium);
    Ok(HomogenizedProblem {
        a_matrix,
        power_bound: 2.0 * p_max,
        voltage_bound: (v_th / gain).powi(2),
        r_real: dec.r_real,
        field_gram,
        voltage_matrix: cross * cross.transpose(),
    })
}

fn pad(m: &Matrix6) -> Matrix7 {
    let mut out = Matrix7::zeros();
    out.fixed_view_mut::<6, 6>(0, 0).copy_from(m);
    out
}

fn to_dynamic(m: &Matrix7) -> DMatrix<f64> {
    DMatrix::from_fn(7, 7, |r, c| m[(r, c)])
}

/// Which form of the lifted problem to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum VoltageMode {
    /// Power ≤ budget and the voltage floor, as designed.
    Constrained,
    /// Voltage floor dropped; power held at the budget so β = 0 is excluded.
    Dropped,
}

impl HomogenizedProblem {
    /// `[i; t]ᵀ A [i; t]`
    pub fn quadratic_form(&self, x: &Vector7) -> f64 {
        (x.transpose() * self.a_matrix * x)[(0, 0)]
    }

    /// Lifted constraints over the 7×7 `β`, in physical units.
    pub fn lifted_constraints(&self, mode: VoltageMode) -> Vec<(Matrix7, Relation, f64)> {
        let mut t_link = pad(&self.field_gram);
        t_link[(6, 6)] = -1.0;
        let power_relation = match mode {
            VoltageMode::Constrained => Relation::Le,
            VoltageMode::Dropped => Relation::Eq,
        };
        let mut rows = vec![
            (pad(&self.r_real), power_relation, self.power_bound),
            (t_link, Relation::Eq, 0.0),
        ];
        if mode == VoltageMode::Constrained {
            rows.push((pad(&self.voltage_matrix), Relation::Ge, self.voltage_bound));
        }
        rows
    }

    /// SDP in variables `β̂ = D⁻¹ β D⁻¹` with `D = diag(s_i·I₆, s_t)`.
    pub fn scaled_sdp(
        &self,
        mode: VoltageMode,
        current_scale: f64,
        field_scale: f64,
    ) -> Result<SdpProblem> {
        let d = Matrix7::from_diagonal(&Vector7::from_fn(|k, _| {
            if k < 6 {
                current_scale
            } else {
                field_scale
            }
        }));
        let scale = |m: &Matrix7| to_dynamic(&(d * m * d));
        let constraints = self
            .lifted_constraints(mode)
            .iter()
            .map(|(m, rel, rhs)| SdpConstraint::new(scale(m), *rel, *rhs))
            .collect();
        SdpProblem::new(scale(&self.a_matrix), constraints)
    }
}

/// Inputs shared by every design in a set.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DesignParams {
    pub tx: CoilSpec,
    pub rx: CoilSpec,
    pub medium: Medium,
    /// W
    pub p_max: f64,
    /// V
    pub v_th: f64,
    /// Rescale every designed current to use the full power budget.
    pub full_power: bool,
    pub solver: SolverOptions,
}

impl Default for DesignParams {
    fn default() -> Self {
        Self {
            tx: CoilSpec::reference_transmitter(),
            rx: CoilSpec::reference_receiver(),
            medium: Medium::reference_air(),
            p_max: 50.0,
            v_th: 0.2,
            full_power: true,
            solver: SolverOptions::default(),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Diagnostics {
    /// `‖u − h/‖h‖‖` at the design location.
    pub alignment_error: f64,
    /// `λ_max / Σλ` of the lifted solution.
    pub rank1_ratio: f64,
    /// Whether the voltage floor could be kept in the relaxation.
    pub feasible_voltage: bool,
    /// `‖Im i‖`, A
    pub imag_norm: f64,
    /// `|v|` induced in a receiver aligned with the target, V
    pub target_voltage: f64,
    pub sdp_iterations: usize,
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurrentVector {
    /// Phasor currents of the three transmitter loops, A.
    pub i: Vector3<Complex64>,
    pub target_direction: Orientation,
    /// `None` for currents that were not designed against a channel.
    pub diagnostics: Option<Diagnostics>,
}

impl CurrentVector {
    /// `iᴴ R i` with `R = r_t·I`, W (twice the average power).
    pub fn power(&self, r_t: f64) -> f64 {
        r_t * self.i.iter().map(|c| c.norm_sqr()).sum::<f64>()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            i: self.i * Complex64::new(factor, 0.0),
            ..self.clone()
        }
    }
}

/// `‖u − h/‖h‖‖` for a complex field `h`.
pub fn alignment_error(h: &Vector3<Complex64>, u: &Orientation) -> f64 {
    let norm = h.norm();
    if norm == 0.0 {
        return f64::NAN;
    }
    let u = u.unit_vector();
    (0..3)
        .map(|k| (Complex64::new(u[k], 0.0) - h[k] / norm).norm_sqr())
        .sum::<f64>()
        .sqrt()
}

/// Recomputes the channel-dependent diagnostics of a stored current.
pub fn recompute_diagnostics(
    channel: &ChannelMatrix,
    vector: &CurrentVector,
    params: &DesignParams,
) -> (f64, f64) {
    let h = channel.field(&vector.i);
    let v = induced_voltage(&h, &vector.target_direction, &params.rx, &params.medium);
    (alignment_error(&h, &vector.target_direction), v.norm())
}

/// Designs one current vector steering the field at `channel.location`
/// towards `target`.
pub fn design_current(
    channel: &ChannelMatrix,
    target: &Orientation,
    params: &DesignParams,
) -> Result<CurrentVector> {
    let r_t = params.tx.resistance;
    let dec = decompose(&channel.h_matrix, target, r_t);
    let problem = build_problem(&dec, params.p_max, params.v_th, &params.rx, &params.medium)?;

    let current_scale = (problem.power_bound / r_t).sqrt();
    let (_, c_max) = channel.coefficients.magnitude_bounds();
    let field_scale = current_scale * c_max;

    let solve = |mode| -> Result<_> {
        let sdp = problem.scaled_sdp(mode, current_scale, field_scale)?;
        sdpsolve::solve_with(&sdp, &params.solver)
    };

    let (solution, feasible_voltage) = if problem.voltage_bound > 0.0 {
        let first = solve(VoltageMode::Constrained)?;
        match first.status {
            SdpStatus::Optimal => (first, true),
            SdpStatus::Infeasible => (solve(VoltageMode::Dropped)?, false),
            SdpStatus::MaxIterations => {
                return Err(MagbbError::Solver {
                    status: first.status,
                    detail: format!("voltage-constrained design, kkt = {:?}", first.kkt),
                })
            }
        }
    } else {
        (solve(VoltageMode::Dropped)?, true)
    };
    if solution.status != SdpStatus::Optimal {
        return Err(MagbbError::Solver {
            status: solution.status,
            detail: format!("kkt = {:?}", solution.kkt),
        });
    }

    // back to physical units: β = D β̂ D
    let d: Vec<f64> = (0..7)
        .map(|k| if k < 6 { current_scale } else { field_scale })
        .collect();
    let beta = Matrix7::from_fn(|r, c| d[r] * solution.x_matrix[(r, c)] * d[c]);
    let (lifted, rank1_ratio) = dominant_vector(&beta);
    let mut i = reassemble(&Vector6::from_fn(|k, _| lifted[k]));

    let power = r_t * i.norm_squared();
    if power <= 0.0 || !power.is_finite() {
        return Err(MagbbError::Solver {
            status: solution.status,
            detail: "relaxation returned a zero current".into(),
        });
    }
    let rescale = if params.full_power || power > problem.power_bound * (1.0 + 1e-6) {
        (problem.power_bound / power).sqrt()
    } else {
        1.0
    };
    i *= Complex64::new(rescale, 0.0);

    let mut vector = CurrentVector {
        i,
        target_direction: *target,
        diagnostics: None,
    };
    let (alignment_error, target_voltage) = recompute_diagnostics(channel, &vector, params);
    vector.diagnostics = Some(Diagnostics {
        alignment_error,
        rank1_ratio,
        feasible_voltage,
        imag_norm: vector.i.map(|c| c.im).norm(),
        target_voltage,
        sdp_iterations: solution.iterations,
    });
    Ok(vector)
}

/// `√λ_max · q` for the dominant eigenpair of a symmetric matrix, with the
/// sign fixed so the slack entry `t` is nonnegative; also `λ_max / Σλ⁺`.
pub fn dominant_vector(beta: &Matrix7) -> (Vector7, f64) {
    let eig = beta.symmetric_eigen();
    let (idx, lmax) =
        eig.eigenvalues
            .iter()
            .copied()
            .enumerate()
            .fold((0, f64::NEG_INFINITY), |best, (k, l)| {
                if l > best.1 {
                    (k, l)
                } else {
                    best
                }
            });
    let mut q: Vector7 = eig.eigenvectors.column(idx).into_owned();
    if q[6] < 0.0 {
        q = -q;
    }
    let total: f64 = eig.eigenvalues.iter().map(|l| l.max(0.0)).sum();
    let ratio = if total > 0.0 {
        lmax.max(0.0) / total
    } else {
        0.0
    };
    (q * lmax.max(0.0).sqrt(), ratio)
}

/// Balanced baseline `√(2P_max / (3 r_t))·[1, 1, 1]`.
pub fn constant_current(p_max: f64, r_t: f64) -> Result<CurrentVector> {
    if !(p_max.is_finite() && p_max > 0.0) {
        return domain(format!("p_max must be > 0, got {p_max}"));
    }
    if !(r_t.is_finite() && r_t > 0.0) {
        return domain(format!("r_t must be > 0, got {r_t}"));
    }
    let amplitude = (2.0 * p_max / (3.0 * r_t)).sqrt();
    Ok(CurrentVector {
        i: Vector3::repeat(Complex64::new(amplitude, 0.0)),
        target_direction: Orientation::from_vector(Vector3::repeat(1.0))?,
        diagnostics: None,
    })
}

/// Target directions covering the upper hemisphere.
///
/// * `n = 1`: `+z`
/// * `n = m²`: `m` polar rings at cell centres `θ_a = (a + ½)·(π/2)/m`, each
///   with `m` azimuths; odd rings are offset by half an azimuth step.
/// * otherwise: sunflower (golden-angle) spiral, equal-area in `cos θ`.
///
/// Only the hemisphere is sampled because `|v|` is even in the receiver axis.
pub fn direction_grid(n_cv: usize) -> Result<Vec<Orientation>> {
    if n_cv == 0 {
        return domain("n_cv must be >= 1");
    }
    if n_cv == 1 {
        return Ok(vec![Orientation::new(0.0, 0.0)]);
    }
    let m = (n_cv as f64).sqrt().round() as usize;
    if m * m == n_cv {
        Ok(ring_grid(m))
    } else {
        Ok(sunflower_hemisphere(n_cv))
    }
}

pub fn ring_grid(m: usize) -> Vec<Orientation> {
    let mut out = Vec::with_capacity(m * m);
    for a in 0..m {
        let polar = (a as f64 + 0.5) * (PI / 2.0) / m as f64;
        let offset = if a % 2 == 1 { 0.5 } else { 0.0 };
        for b in 0..m {
            let azimuth = 2.0 * PI * (b as f64 + offset) / m as f64;
            out.push(Orientation::new(polar, azimuth));
        }
    }
    out
}

pub fn sunflower_hemisphere(n: usize) -> Vec<Orientation> {
    let golden = PI * (3.0 - 5.0_f64.sqrt());
    (0..n)
        .map(|j| {
            let z = 1.0 - (j as f64 + 0.5) / n as f64;
            let azimuth = (golden * j as f64).rem_euclid(2.0 * PI);
            Orientation::new(z.acos(), azimuth)
        })
        .collect()
}

/// Classical Gram–Schmidt on three vectors, then normalization.
pub fn orthonormal_triple(
    v1: &Vector3<f64>,
    v2: &Vector3<f64>,
    v3: &Vector3<f64>,
) -> Result<[Vector3<f64>; 3]> {
    const DEGENERATE: f64 = 1e-9;
    let check = |u: &Vector3<f64>, v: &Vector3<f64>, which: usize| {
        if u.norm() < DEGENERATE * v.norm() || v.norm() == 0.0 {
            Err(MagbbError::Degenerate(format!(
                "vector {which} is linearly dependent on its predecessors"
            )))
        } else {
            Ok(())
        }
    };
    let u1 = *v1;
    check(&u1, v1, 1)?;
    let u2 = v2 - u1 * (v2.dot(&u1) / u1.norm_squared());
    check(&u2, v2, 2)?;
    let u3 = v3 - u1 * (v3.dot(&u1) / u1.norm_squared()) - u2 * (v3.dot(&u2) / u2.norm_squared());
    check(&u3, v3, 3)?;
    Ok([u1.normalize(), u2.normalize(), u3.normalize()])
}

/// Three orthonormal target directions from seeded standard-normal draws.
pub fn random_orthonormal_directions(seed: u64) -> [Orientation; 3] {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    loop {
        let mut draw = || Vector3::from_fn(|_, _| StandardNormal.sample(&mut rng));
        let (v1, v2, v3) = (draw(), draw(), draw());
        if let Ok(basis) = orthonormal_triple(&v1, &v2, &v3) {
            return basis.map(|e| Orientation::from_vector(e).expect("unit vectors are non-zero"));
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "scheme")]
pub enum Scheme {
    /// Balanced baseline, one vector.
    Constant,
    /// Three vectors designed for a seeded orthonormal triple of directions.
    Orthonormal3,
    /// One vector per hemisphere direction of [`direction_grid`].
    Grid { n_cv: usize },
}

impl Scheme {
    pub fn label(&self) -> String {
        match self {
            Scheme::Constant => "constant".into(),
            Scheme::Orthonormal3 => "orthonormal3".into(),
            Scheme::Grid { n_cv } => format!("grid{n_cv}"),
        }
    }

    pub fn n_cv(&self) -> usize {
        match self {
            Scheme::Constant => 1,
            Scheme::Orthonormal3 => 3,
            Scheme::Grid { n_cv } => *n_cv,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct CurrentSet {
    pub vectors: Vec<CurrentVector>,
    pub design_location: SphericalLocation,
    pub scheme: Scheme,
    pub seed: u64,
}

impl CurrentSet {
    pub fn new(
        vectors: Vec<CurrentVector>,
        design_location: SphericalLocation,
        scheme: Scheme,
        seed: u64,
    ) -> Result<Self> {
        if vectors.is_empty() {
            return domain("a current set needs at least one vector");
        }
        if scheme == Scheme::Orthonormal3 && vectors.len() != 3 {
            return domain("an orthonormal3 set has exactly three vectors");
        }
        Ok(Self {
            vectors,
            design_location,
            scheme,
            seed,
        })
    }

    pub fn n_cv(&self) -> usize {
        self.vectors.len()
    }

    pub fn scaled(&self, factor: f64) -> Self {
        Self {
            vectors: self.vectors.iter().map(|v| v.scaled(factor)).collect(),
            ..self.clone()
        }
    }
}

/// Designs a full current set against the channel at `location`.
pub fn design_set(
    location: &SphericalLocation,
    scheme: Scheme,
    params: &DesignParams,
    seed: u64,
) -> Result<CurrentSet> {
    let targets: Vec<Orientation> = match scheme {
        Scheme::Constant => {
            let v = constant_current(params.p_max, params.tx.resistance)?;
            return CurrentSet::new(vec![v], *location, scheme, seed);
        }
        Scheme::Orthonormal3 => random_orthonormal_directions(seed).to_vec(),
        Scheme::Grid { n_cv } => direction_grid(n_cv)?,
    };
    let channel = channel_matrix(&params.tx, &params.medium, location)?;
    let vectors = par::map_indexed(targets.len(), |k| {
        design_current(&channel, &targets[k], params)
    })
    .into_iter()
    .collect::<Result<Vec<_>>>()?;
    CurrentSet::new(vectors, *location, scheme, seed)
}

/// Serialized form of a [`CurrentSet`]; angles in degrees.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurrentSetDocument {
    pub scheme: String,
    pub n_cv: usize,
    pub seed: u64,
    pub design_location: LocationDocument,
    pub vectors: Vec<VectorDocument>,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct LocationDocument {
    pub r_m: f64,
    pub theta_deg: f64,
    pub phi_deg: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DirectionDocument {
    pub theta_deg: f64,
    pub phi_deg: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct VectorDocument {
    pub target: DirectionDocument,
    pub i_re: [f64; 3],
    pub i_im: [f64; 3],
    pub diagnostics: Option<Diagnostics>,
}

impl CurrentSetDocument {
    pub fn from_set(set: &CurrentSet) -> Self {
        Self {
            scheme: match set.scheme {
                Scheme::Constant => "constant",
                Scheme::Orthonormal3 => "orthonormal3",
                Scheme::Grid { .. } => "grid",
            }
            .to_string(),
            n_cv: set.n_cv(),
            seed: set.seed,
            design_location: LocationDocument {
                r_m: set.design_location.range,
                theta_deg: set.design_location.polar_deg(),
                phi_deg: set.design_location.azimuth_deg(),
            },
            vectors: set
                .vectors
                .iter()
                .map(|v| VectorDocument {
                    target: DirectionDocument {
                        theta_deg: v.target_direction.polar_deg(),
                        phi_deg: v.target_direction.azimuth_deg(),
                    },
                    i_re: [v.i[0].re, v.i[1].re, v.i[2].re],
                    i_im: [v.i[0].im, v.i[1].im, v.i[2].im],
                    diagnostics: v.diagnostics,
                })
                .collect(),
        }
    }

    /// Rebuilds the set; errors name the offending field.
    pub fn to_set(&self) -> Result<CurrentSet> {
        let scheme = match self.scheme.as_str() {
            "constant" => Scheme::Constant,
            "orthonormal3" => Scheme::Orthonormal3,
            "grid" => Scheme::Grid { n_cv: self.n_cv },
            other => return domain(format!("field `scheme`: unknown scheme `{other}`")),
        };
        if self.vectors.len() != self.n_cv {
            return domain(format!(
                "field `n_cv`: {} does not match {} vectors",
                self.n_cv,
                self.vectors.len()
            ));
        }
        let loc = &self.design_location;
        let design_location = SphericalLocation::from_degrees(loc.r_m, loc.theta_deg, loc.phi_deg)
            .map_err(|e| MagbbError::Domain(format!("field `design_location`: {e}")))?;
        let mut vectors = Vec::with_capacity(self.vectors.len());
        for (k, v) in self.vectors.iter().enumerate() {
            if v.i_re.iter().chain(&v.i_im).any(|x| !x.is_finite()) {
                return domain(format!("field `vectors[{k}]`: non-finite current"));
            }
            vectors.push(CurrentVector {
                i: Vector3::from_fn(|a, _| Complex64::new(v.i_re[a], v.i_im[a])),
                target_direction: Orientation::from_degrees(v.target.theta_deg, v.target.phi_deg),
                diagnostics: v.diagnostics,
            });
        }
        CurrentSet::new(vectors, design_location, scheme, self.seed)
            .map_err(|e| MagbbError::Domain(format!("field `vectors`: {e}")))
    }
}
