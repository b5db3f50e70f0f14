//! Closed-form near-field model of a tri-axis transmitter coil.
//!
//! The transmitter is three identical, co-located, mutually orthogonal loops
//! fed with the phasor currents `i = [i1, i2, i3]`. Each loop is treated as a
//! magnetic dipole. At a receiver location `(r, θ_l, φ_l)` the field in the
//! local spherical frame is `h_r = diag(C_r, C_θ, C_φ) · Γ · i`, and the
//! Cartesian field seen by the receiver coil is `h = T · h_r` with `T = Γᵀ`.
//!
//! A receiver coil with axis `u` picks up the phasor voltage
//! `v = -ω μ_r μ0 N_r π a_r² (h · u)`; only `|v|` matters downstream.

use std::f64::consts::PI;

use nalgebra::{Matrix3, Vector3};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{domain, Result};

const J: Complex64 = Complex64::new(0.0, 1.0);

/// Homogeneous lossless propagation medium.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct Medium {
    /// ε0, F/m
    pub permittivity_vacuum: f64,
    pub relative_permittivity: f64,
    /// μ0, H/m
    pub permeability_vacuum: f64,
    pub relative_permeability: f64,
    /// Carrier frequency, Hz
    pub frequency: f64,
}

impl Medium {
    pub fn new(
        permittivity_vacuum: f64,
        relative_permittivity: f64,
        permeability_vacuum: f64,
        relative_permeability: f64,
        frequency: f64,
    ) -> Result<Self> {
        let medium = Self {
            permittivity_vacuum,
            relative_permittivity,
            permeability_vacuum,
            relative_permeability,
            frequency,
        };
        medium.validate()?;
        Ok(medium)
    }

    /// Air at 13.56 MHz with the reference constants used throughout the
    /// simulations (ε0 = 8.85e-12, εr = 1.0006, μ0 = 1.2566e-6, μr = 1).
    pub fn reference_air() -> Self {
        Self {
            permittivity_vacuum: 8.85e-12,
            relative_permittivity: 1.0006,
            permeability_vacuum: 1.2566e-6,
            relative_permeability: 1.0,
            frequency: 13.56e6,
        }
    }

    pub fn validate(&self) -> Result<()> {
        let fields = [
            ("permittivity_vacuum", self.permittivity_vacuum),
            ("relative_permittivity", self.relative_permittivity),
            ("permeability_vacuum", self.permeability_vacuum),
            ("relative_permeability", self.relative_permeability),
            ("frequency", self.frequency),
        ];
        for (name, value) in fields {
            if !(value.is_finite() && value > 0.0) {
                return domain(format!("medium {name} must be finite and > 0, got {value}"));
            }
        }
        Ok(())
    }

    pub fn angular_frequency(&self) -> f64 {
        2.0 * PI * self.frequency
    }

    /// μ0 · μr
    pub fn permeability(&self) -> f64 {
        self.permeability_vacuum * self.relative_permeability
    }

    pub fn wavenumber(&self) -> f64 {
        wavenumber(self)
    }
}

/// Propagation constant `k = ω √(μ0 μr ε0 εr)` of a lossless medium.
pub fn wavenumber(medium: &Medium) -> f64 {
    medium.angular_frequency()
        * (medium.permeability_vacuum
            * medium.relative_permeability
            * medium.permittivity_vacuum
            * medium.relative_permittivity)
            .sqrt()
}

/// A circular loop coil. The same spec describes all three transmitter loops.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CoilSpec {
    /// m
    pub radius: f64,
    pub turns: u32,
    /// Ω
    pub resistance: f64,
}

impl CoilSpec {
    pub fn new(radius: f64, turns: u32, resistance: f64) -> Result<Self> {
        let coil = Self {
            radius,
            turns,
            resistance,
        };
        coil.validate()?;
        Ok(coil)
    }

    /// Transmitter loop: a_t = 0.1 m, r_t = 1 Ω, N_t = 20.
    pub fn reference_transmitter() -> Self {
        Self {
            radius: 0.1,
            turns: 20,
            resistance: 1.0,
        }
    }

    /// Receiver loop: a_r = 0.01 m, r_r = 0.2 Ω, N_r = 25.
    pub fn reference_receiver() -> Self {
        Self {
            radius: 0.01,
            turns: 25,
            resistance: 0.2,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if !(self.radius.is_finite() && self.radius > 0.0) {
            return domain(format!("coil radius must be > 0, got {}", self.radius));
        }
        if self.turns < 1 {
            return domain("coil must have at least one turn");
        }
        if !(self.resistance.is_finite() && self.resistance > 0.0) {
            return domain(format!(
                "coil resistance must be > 0, got {}",
                self.resistance
            ));
        }
        Ok(())
    }

    /// π a²
    pub fn area(&self) -> f64 {
        PI * self.radius * self.radius
    }
}

/// Receiver position relative to the transmitter centre.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SphericalLocation {
    /// r, m
    pub range: f64,
    /// θ_l ∈ [0, π]
    pub polar: f64,
    /// φ_l ∈ [0, 2π)
    pub azimuth: f64,
}

impl SphericalLocation {
    pub fn new(range: f64, polar: f64, azimuth: f64) -> Result<Self> {
        if !(range.is_finite() && range > 0.0) {
            return domain(format!("range must be > 0, got {range}"));
        }
        if !(0.0..=PI).contains(&polar) {
            return domain(format!("polar angle must lie in [0, π], got {polar}"));
        }
        if !(0.0..2.0 * PI).contains(&azimuth) {
            return domain(format!("azimuth must lie in [0, 2π), got {azimuth}"));
        }
        Ok(Self {
            range,
            polar,
            azimuth,
        })
    }

    /// Degrees in, radians stored. Azimuth is wrapped into [0, 360).
    pub fn from_degrees(range: f64, polar_deg: f64, azimuth_deg: f64) -> Result<Self> {
        if !(0.0..=180.0).contains(&polar_deg) {
            return domain(format!(
                "polar angle must lie in [0, 180] deg, got {polar_deg}"
            ));
        }
        let polar = polar_deg.to_radians().min(PI);
        Self::new(range, polar, wrap_azimuth(azimuth_deg.to_radians()))
    }

    pub fn polar_deg(&self) -> f64 {
        self.polar.to_degrees()
    }

    pub fn azimuth_deg(&self) -> f64 {
        self.azimuth.to_degrees()
    }

    /// Same direction, different range.
    pub fn with_range(&self, range: f64) -> Result<Self> {
        Self::new(range, self.polar, self.azimuth)
    }
}

pub(crate) fn wrap_azimuth(phi: f64) -> f64 {
    let wrapped = phi.rem_euclid(2.0 * PI);
    // rem_euclid can round up to exactly 2π for tiny negative inputs
    if wrapped >= 2.0 * PI {
        0.0
    } else {
        wrapped
    }
}

/// Axis direction of a receiver coil (or a beam target direction).
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Orientation {
    /// θ_r
    pub polar: f64,
    /// φ_r
    pub azimuth: f64,
    unit: Vector3<f64>,
}

impl Orientation {
    pub fn new(polar: f64, azimuth: f64) -> Self {
        let unit = Vector3::new(
            polar.sin() * azimuth.cos(),
            polar.sin() * azimuth.sin(),
            polar.cos(),
        );
        Self {
            polar,
            azimuth,
            unit,
        }
    }

    pub fn from_degrees(polar_deg: f64, azimuth_deg: f64) -> Self {
        Self::new(polar_deg.to_radians(), azimuth_deg.to_radians())
    }

    /// Normalizes `v`; the stored unit vector is `v / ‖v‖` itself rather than
    /// a round trip through the angles.
    pub fn from_vector(v: Vector3<f64>) -> Result<Self> {
        let norm = v.norm();
        if !(norm.is_finite() && norm > 0.0) {
            return domain("orientation vector must be finite and non-zero");
        }
        let unit = v / norm;
        Ok(Self {
            polar: unit.z.clamp(-1.0, 1.0).acos(),
            azimuth: wrap_azimuth(unit.y.atan2(unit.x)),
            unit,
        })
    }

    pub fn unit_vector(&self) -> Vector3<f64> {
        self.unit
    }

    pub fn reversed(&self) -> Self {
        // −u has polar π − θ and azimuth φ + π
        Self {
            polar: PI - self.polar,
            azimuth: wrap_azimuth(self.azimuth + PI),
            unit: -self.unit,
        }
    }

    pub fn polar_deg(&self) -> f64 {
        self.polar.to_degrees()
    }

    pub fn azimuth_deg(&self) -> f64 {
        self.azimuth.to_degrees()
    }
}

/// The three scalar field coefficients of the tri-axis dipole.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ScalarCoefficients {
    pub c_r: Complex64,
    pub c_theta: Complex64,
    pub c_phi: Complex64,
}

impl ScalarCoefficients {
    pub fn as_diagonal(&self) -> [Complex64; 3] {
        [self.c_r, self.c_theta, self.c_phi]
    }

    /// `(min, max)` of `|C_r|` and `|C_θ|`; any current's field norm is
    /// sandwiched between these times `‖i‖`.
    pub fn magnitude_bounds(&self) -> (f64, f64) {
        let r = self.c_r.norm();
        let t = self.c_theta.norm();
        (r.min(t), r.max(t))
    }
}

/// Coefficients for a real (lossless) medium.
pub fn scalar_coefficients(
    tx: &CoilSpec,
    medium: &Medium,
    range: f64,
) -> Result<ScalarCoefficients> {
    scalar_coefficients_with_wavenumber(Complex64::new(wavenumber(medium), 0.0), tx, range)
}

/// Same closed form with an arbitrary complex propagation constant.
pub fn scalar_coefficients_with_wavenumber(
    k: Complex64,
    tx: &CoilSpec,
    range: f64,
) -> Result<ScalarCoefficients> {
    if !(range.is_finite() && range > 0.0) {
        return domain(format!("range must be > 0, got {range}"));
    }
    let a2n = tx.radius * tx.radius * f64::from(tx.turns);
    let kr = k * range;
    let phase = (-J * kr).exp();
    let c_r = J * k * a2n / (2.0 * range * range) * (1.0 + 1.0 / (J * kr)) * phase;
    let c_t = k * k * a2n / (4.0 * range) * (1.0 + 1.0 / (J * kr) - 1.0 / (kr * kr)) * phase;
    Ok(ScalarCoefficients {
        c_r,
        c_theta: c_t,
        c_phi: c_t,
    })
}

/// Angular matrix Γ mapping Cartesian transmitter currents onto the local
/// spherical basis (r̂, θ̂, φ̂) at the receiver.
pub fn gamma_matrix(loc: &SphericalLocation) -> Matrix3<f64> {
    let (st, ct) = loc.polar.sin_cos();
    let (sp, cp) = loc.azimuth.sin_cos();
    Matrix3::new(
        st * cp,
        st * sp,
        ct, //
        ct * cp,
        ct * sp,
        -st, //
        -sp,
        cp,
        0.0,
    )
}

/// Spherical-to-Cartesian transform T (equal to Γᵀ).
pub fn t_matrix(loc: &SphericalLocation) -> Matrix3<f64> {
    let (st, ct) = loc.polar.sin_cos();
    let (sp, cp) = loc.azimuth.sin_cos();
    Matrix3::new(
        st * cp,
        ct * cp,
        -sp, //
        st * sp,
        ct * sp,
        cp, //
        ct,
        -st,
        0.0,
    )
}

/// Complex linear map from transmitter currents to the Cartesian field at a
/// fixed receiver location.
#[derive(Debug, Clone, PartialEq)]
pub struct ChannelMatrix {
    pub h_matrix: Matrix3<Complex64>,
    pub location: SphericalLocation,
    pub gamma: Matrix3<f64>,
    pub t_mat: Matrix3<f64>,
    pub coefficients: ScalarCoefficients,
}

impl ChannelMatrix {
    /// Field `h = H · i`, A/m.
    pub fn field(&self, current: &Vector3<Complex64>) -> Vector3<Complex64> {
        self.h_matrix * current
    }

    /// Field in the local spherical frame, `h_r = diag(C) · Γ · i`.
    pub fn spherical_field(&self, current: &Vector3<Complex64>) -> Vector3<Complex64> {
        let projected = self.gamma.map(|g| Complex64::new(g, 0.0)) * current;
        let c = self.coefficients.as_diagonal();
        Vector3::new(
            c[0] * projected[0],
            c[1] * projected[1],
            c[2] * projected[2],
        )
    }
}

pub fn channel_matrix(
    tx: &CoilSpec,
    medium: &Medium,
    loc: &SphericalLocation,
) -> Result<ChannelMatrix> {
    let coefficients = scalar_coefficients(tx, medium, loc.range)?;
    let gamma = gamma_matrix(loc);
    let t_mat = t_matrix(loc);
    let c = coefficients.as_diagonal();
    let h_matrix = Matrix3::from_fn(|row, col| {
        (0..3)
            .map(|m| c[m] * (t_mat[(row, m)] * gamma[(m, col)]))
            .sum::<Complex64>()
    });
    Ok(ChannelMatrix {
        h_matrix,
        location: *loc,
        gamma,
        t_mat,
        coefficients,
    })
}

/// `ω μr μ0 N_r π a_r²`, the factor between `|h·u|` and `|v|`.
pub fn voltage_gain(rx: &CoilSpec, medium: &Medium) -> f64 {
    medium.angular_frequency() * medium.permeability() * f64::from(rx.turns) * rx.area()
}

/// Open-circuit phasor voltage of a receiver coil with axis `orient` in the
/// Cartesian field `h`.
pub fn induced_voltage(
    h: &Vector3<Complex64>,
    orient: &Orientation,
    rx: &CoilSpec,
    medium: &Medium,
) -> Complex64 {
    let u = orient.unit_vector();
    let projection: Complex64 = (0..3).map(|a| h[a] * u[a]).sum();
    -voltage_gain(rx, medium) * projection
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FieldRegime {
    pub kr: f64,
    /// `kr < 1`
    pub near_field: bool,
    /// `|C_r| / (2 |C_θ|)`, tends to 1 deep in the near field.
    pub magnitude_ratio: f64,
}

pub fn field_regime(medium: &Medium, range: f64) -> Result<FieldRegime> {
    if !(range.is_finite() && range > 0.0) {
        return domain(format!("range must be > 0, got {range}"));
    }
    let kr = wavenumber(medium) * range;
    // coefficient ratio is independent of the coil, use a unit loop
    let unit_coil = CoilSpec {
        radius: 1.0,
        turns: 1,
        resistance: 1.0,
    };
    let c = scalar_coefficients(&unit_coil, medium, range)?;
    Ok(FieldRegime {
        kr,
        near_field: kr < 1.0,
        magnitude_ratio: c.c_r.norm() / (2.0 * c.c_theta.norm()),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    const C_LIGHT_PROXY: f64 = 1.0;

    fn vacuum_like(frequency: f64) -> Medium {
        Medium {
            permittivity_vacuum: 1.0,
            relative_permittivity: 1.0,
            permeability_vacuum: 1.0,
            relative_permeability: 1.0,
            frequency,
        }
    }

    #[test]
    fn wavenumber_reference_air() {
        // independent mpmath evaluation: 0.28421040284763776
        let k = wavenumber(&Medium::reference_air());
        assert!((k - 0.284_210_402_847_637_76).abs() < 1e-15);
    }

    #[test]
    fn wavenumber_scales_linearly_with_frequency() {
        let m = Medium::reference_air();
        let doubled = Medium {
            frequency: 2.0 * m.frequency,
            ..m
        };
        assert_eq!(wavenumber(&doubled), 2.0 * wavenumber(&m));
    }

    #[test]
    fn wavenumber_unit_definition() {
        // with μ0 ε0 = 1 the "speed of light" is 1 and f = 1/(2π) gives k = 1
        let m = vacuum_like(C_LIGHT_PROXY / (2.0 * PI));
        assert!((wavenumber(&m) - 1.0).abs() < 1e-15);
    }

    #[test]
    fn medium_rejects_non_positive() {
        assert!(Medium::new(8.85e-12, 1.0, 1.2566e-6, 1.0, 0.0).is_err());
        assert!(Medium::new(-1.0, 1.0, 1.2566e-6, 1.0, 1.0).is_err());
        assert!(Medium::new(8.85e-12, 1.0006, 1.2566e-6, 1.0, 13.56e6).is_ok());
    }

    #[test]
    fn coefficients_reference_values() {
        let tx = CoilSpec::new(0.1, 1, 1.0).unwrap();
        let c = scalar_coefficients(&tx, &Medium::reference_air(), 1.2).unwrap();
        // mpmath oracle: |C_θ| = 1.370389432795688e-3, |C_r| = 3.057172862563401e-3
        assert!((c.c_theta.norm() - 1.370_389_432_795_688e-3).abs() < 1e-15);
        assert!((c.c_r.norm() - 3.057_172_862_563_401e-3).abs() < 1e-15);
        let ratio = c.c_r.norm() / (2.0 * c.c_theta.norm());
        assert!((ratio - 1.115_439_447_138_234).abs() < 1e-12);
        assert_eq!(c.c_theta, c.c_phi);
    }

    #[test]
    fn coefficients_deep_near_field_ratio() {
        let medium = Medium::reference_air();
        let range = 0.01 / wavenumber(&medium);
        let regime = field_regime(&medium, range).unwrap();
        // exact |(1 + jkr) / ((kr)² − jkr − 1)| at kr = 0.01 is 1.0000999999995
        assert!((regime.magnitude_ratio - 1.000_099_999_999_5).abs() < 1e-9);
        assert!((regime.magnitude_ratio - 1.0).abs() < 1e-3);
    }

    #[test]
    fn coefficients_reject_non_positive_range() {
        let tx = CoilSpec::reference_transmitter();
        let m = Medium::reference_air();
        assert!(scalar_coefficients(&tx, &m, 0.0).is_err());
        assert!(scalar_coefficients(&tx, &m, -1.0).is_err());
    }

    #[test]
    fn complex_wavenumber_is_accepted() {
        let tx = CoilSpec::reference_transmitter();
        let lossy = Complex64::new(0.28, -0.01);
        let c = scalar_coefficients_with_wavenumber(lossy, &tx, 1.2).unwrap();
        assert_eq!(c.c_theta, c.c_phi);
        // attenuation reduces the field relative to the lossless case
        let c0 = scalar_coefficients_with_wavenumber(Complex64::new(0.28, 0.0), &tx, 1.2).unwrap();
        assert!(c.c_r.norm() < c0.c_r.norm());
    }

    #[test]
    fn gamma_at_pole_and_equator() {
        let pole = SphericalLocation::new(1.0, 0.0, 0.0).unwrap();
        let expected = Matrix3::new(0.0, 0.0, 1.0, 1.0, 0.0, 0.0, 0.0, 1.0, 0.0);
        assert_eq!(gamma_matrix(&pole), expected);

        let equator = SphericalLocation::new(1.0, PI / 2.0, 0.0).unwrap();
        let g = gamma_matrix(&equator);
        let expected = Matrix3::new(1.0, 0.0, 0.0, 0.0, 0.0, -1.0, 0.0, 1.0, 0.0);
        assert!((g - expected).abs().max() < 1e-15);
    }

    #[test]
    fn t_matrix_cases() {
        let pole = SphericalLocation::new(1.0, 0.0, 0.0).unwrap();
        let expected = Matrix3::new(0.0, 1.0, 0.0, 0.0, 0.0, 1.0, 1.0, 0.0, 0.0);
        assert_eq!(t_matrix(&pole), expected);

        let south = SphericalLocation::new(1.0, PI, 0.0).unwrap();
        let col = t_matrix(&south).column(0).into_owned();
        assert!((col - Vector3::new(0.0, 0.0, -1.0)).norm() < 1e-15);
    }

    #[test]
    fn zero_current_gives_zero_field() {
        let loc = SphericalLocation::new(1.2, 0.4, 2.0).unwrap();
        let ch = channel_matrix(
            &CoilSpec::reference_transmitter(),
            &Medium::reference_air(),
            &loc,
        )
        .unwrap();
        assert_eq!(ch.field(&Vector3::zeros()), Vector3::zeros());
    }

    #[test]
    fn optimized_location_axial_current_field_norm() {
        let loc = SphericalLocation::from_degrees(1.2, 180.0, 0.0).unwrap();
        let ch = channel_matrix(
            &CoilSpec::reference_transmitter(),
            &Medium::reference_air(),
            &loc,
        )
        .unwrap();
        let i = Vector3::new(Complex64::new(0.0, 0.0), 0.0.into(), 1.0.into());
        let h = ch.field(&i);
        // mpmath oracle (N_t = 20): ‖h‖ = 0.06114345725126802
        assert!((h.norm() - 0.061_143_457_251_268_02).abs() < 1e-14);
        // field points along ∓z: x, y components vanish
        assert!(h[0].norm() < 1e-15 && h[1].norm() < 1e-15);
    }

    #[test]
    fn same_sphere_same_singular_values() {
        let tx = CoilSpec::reference_transmitter();
        let m = Medium::reference_air();
        let a = channel_matrix(&tx, &m, &SphericalLocation::new(1.2, 0.3, 1.0).unwrap()).unwrap();
        let b = channel_matrix(&tx, &m, &SphericalLocation::new(1.2, 2.5, 4.0).unwrap()).unwrap();
        let sa = a.h_matrix.singular_values();
        let sb = b.h_matrix.singular_values();
        let mut sa: Vec<f64> = sa.iter().copied().collect();
        let mut sb: Vec<f64> = sb.iter().copied().collect();
        sa.sort_by(f64::total_cmp);
        sb.sort_by(f64::total_cmp);
        for (x, y) in sa.iter().zip(&sb) {
            assert!((x - y).abs() < 1e-14);
        }
    }

    #[test]
    fn induced_voltage_cases() {
        let m = Medium::reference_air();
        let rx = CoilSpec::new(0.01, 1, 0.2).unwrap();
        let u = Orientation::new(0.0, 0.0);
        let along = Vector3::new(0.0.into(), 0.0.into(), Complex64::new(1.0, 0.0));
        let v = induced_voltage(&along, &u, &rx, &m);
        // mpmath oracle: ω μ0 π a_r² = 0.033634616942788904
        assert!((v.norm() - 0.033_634_616_942_788_9).abs() < 1e-15);
        assert!(v.re < 0.0);

        let across = Vector3::new(Complex64::new(1.0, 0.0), 0.0.into(), 0.0.into());
        assert_eq!(induced_voltage(&across, &u, &rx, &m).norm(), 0.0);

        let scaled = along * Complex64::new(3.5, 0.0);
        let v3 = induced_voltage(&scaled, &u, &rx, &m);
        assert!((v3.norm() - 3.5 * v.norm()).abs() < 1e-15);
    }

    #[test]
    fn regime_reports() {
        let m = Medium::reference_air();
        let r12 = field_regime(&m, 1.2).unwrap();
        assert!((r12.kr - 0.341_052_483_417_165_3).abs() < 1e-12);
        assert!(r12.near_field);
        let r06 = field_regime(&m, 0.6).unwrap();
        assert!((r06.kr - 0.170_526_241_708_582_66).abs() < 1e-12);
        assert!(r06.near_field);
        assert!(!field_regime(&m, 100.0).unwrap().near_field);
    }

    #[test]
    fn location_validation() {
        assert!(SphericalLocation::new(0.0, 0.0, 0.0).is_err());
        assert!(SphericalLocation::new(1.0, 3.2, 0.0).is_err());
        assert!(SphericalLocation::new(1.0, 0.0, 2.0 * PI).is_err());
        let loc = SphericalLocation::from_degrees(1.2, 0.021, 108.84).unwrap();
        assert!((loc.azimuth_deg() - 108.84).abs() < 1e-12);
        let wrapped = SphericalLocation::from_degrees(1.0, 90.0, -90.0).unwrap();
        assert!((wrapped.azimuth_deg() - 270.0).abs() < 1e-12);
        assert_eq!(
            SphericalLocation::from_degrees(1.0, 180.0, 0.0)
                .unwrap()
                .polar,
            PI
        );
    }

    #[test]
    fn orientation_round_trip() {
        let o = Orientation::from_vector(Vector3::new(1.0, -2.0, 0.5)).unwrap();
        assert!((o.unit_vector().norm() - 1.0).abs() < 1e-12);
        let again = Orientation::new(o.polar, o.azimuth);
        assert!((again.unit_vector() - o.unit_vector()).norm() < 1e-12);
        assert!((o.reversed().unit_vector() + o.unit_vector()).norm() < 1e-15);
        assert!(Orientation::from_vector(Vector3::zeros()).is_err());
    }
}
