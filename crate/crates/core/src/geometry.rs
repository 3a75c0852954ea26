//! Coordinate systems for the linear transmit array and their transforms.
//!
//! Three charts describe the same antenna layout (physical axis, angular
//! domain, normalized domain):
//!
//! * `x` — physical position on the array axis, meters;
//! * `s` — angular coordinate `s = sin(arctan((x − x0)/y0) − θ_UE)`, the
//!   chart in which the placement objective becomes a weighted Vandermonde
//!   determinant;
//! * `t` — affine normalization of `s`, either onto `(0, 1)` (unit chart,
//!   used by the equilibrium solver) or `(−1, 1)` (symmetric chart, used by
//!   the asymptotic closed form).
//!
//! All maps here are strictly increasing on the admissible range and exact
//! inverses of one another up to rounding.

use crate::error::{Error, Result};
use rand::Rng;
use std::f64::consts::{FRAC_PI_2, PI};
use std::fs;
use std::path::Path;

/// Speed of light, m/s.
pub const SPEED_OF_LIGHT: f64 = 299_792_458.0;

/// Margin (radians) kept between any angle and the ±π/2 tangent/arcsine
/// singularities. Inputs closer than this are rejected rather than mapped to
/// huge finite values, which keeps downstream Gram matrices well conditioned.
pub const ANGLE_GUARD: f64 = 1e-9;

// ---------------------------------------------------------------------------
// Scenario description
// ---------------------------------------------------------------------------

/// Full description of one placement experiment: carrier, array sizes, user
/// pose, and SNR.
///
/// The user-side array is a fixed uniform linear array; the transmit side is
/// the movable array whose element positions are the design variable.
#[derive(Debug, Clone, PartialEq)]
pub struct ScenarioConfig {
    /// Carrier frequency, Hz.
    pub carrier_frequency_hz: f64,
    /// Unit spacing d of the transmit array, meters. The aperture is
    /// `(num_bs − 1) · d` with both edge elements fixed.
    pub unit_spacing_m: f64,
    /// Number of transmit (movable) elements M.
    pub num_bs: usize,
    /// Number of user-side elements N.
    pub num_ue: usize,
    /// User-side element spacing, meters.
    pub ue_spacing_m: f64,
    /// Centroid of the user array `(x0, y0)`, meters; `y0 > 0`.
    pub ue_centroid: (f64, f64),
    /// Azimuth angle of the user array θ_UE, radians.
    pub ue_azimuth_rad: f64,
    /// Signal-to-noise ratio ρ, dB.
    pub snr_db: f64,
    /// Base seed for every randomized procedure touching this scenario.
    pub rng_seed: u64,
}

impl Default for ScenarioConfig {
    /// Reference setup: 10 GHz carrier, d = 2λ, M = 16, N = 8 at λ/2,
    /// user centroid 10 m away at azimuth π/6, ρ = 20 dB.
    fn default() -> Self {
        let wavelength = SPEED_OF_LIGHT / 1e10;
        ScenarioConfig {
            carrier_frequency_hz: 1e10,
            unit_spacing_m: 2.0 * wavelength,
            num_bs: 16,
            num_ue: 8,
            ue_spacing_m: 0.5 * wavelength,
            ue_centroid: pose_to_centroid(10.0, PI / 6.0),
            ue_azimuth_rad: 0.0,
            snr_db: 20.0,
            rng_seed: 0,
        }
    }
}

/// Convert a (distance, azimuth) pose into centroid coordinates. The azimuth
/// convention is `tan φ0 = −x0/y0`, so positive azimuth puts the user on the
/// negative-x side of the array.
pub fn pose_to_centroid(r0: f64, phi0: f64) -> (f64, f64) {
    (-r0 * phi0.sin(), r0 * phi0.cos())
}

impl ScenarioConfig {
    /// Carrier wavelength λ = c / f_c, meters.
    pub fn wavelength(&self) -> f64 {
        SPEED_OF_LIGHT / self.carrier_frequency_hz
    }

    /// Wavenumber κ = 2π/λ, rad/m.
    pub fn wavenumber(&self) -> f64 {
        2.0 * PI / self.wavelength()
    }

    /// Transmit aperture A = (M − 1)d, meters.
    pub fn aperture(&self) -> f64 {
        (self.num_bs as f64 - 1.0) * self.unit_spacing_m
    }

    /// Distance from the array centroid (origin) to the user centroid.
    pub fn centroid_distance(&self) -> f64 {
        let (x0, y0) = self.ue_centroid;
        x0.hypot(y0)
    }

    /// Azimuth φ0 of the user centroid, `tan φ0 = −x0/y0`.
    pub fn centroid_azimuth(&self) -> f64 {
        let (x0, y0) = self.ue_centroid;
        (-x0 / y0).atan()
    }

    /// Linear SNR ρ.
    pub fn snr_linear(&self) -> f64 {
        10f64.powf(self.snr_db / 10.0)
    }

    /// Fresnel boundary `0.5 √(A³/λ)`, meters.
    pub fn fresnel_distance(&self) -> f64 {
        0.5 * (self.aperture().powi(3) / self.wavelength()).sqrt()
    }

    /// Rayleigh distance `2A²/λ`, meters.
    pub fn rayleigh_distance(&self) -> f64 {
        2.0 * self.aperture().powi(2) / self.wavelength()
    }

    /// Replace the user pose, keeping everything else.
    pub fn with_pose(&self, r0: f64, phi0: f64, theta_ue: f64) -> ScenarioConfig {
        ScenarioConfig {
            ue_centroid: pose_to_centroid(r0, phi0),
            ue_azimuth_rad: theta_ue,
            ..self.clone()
        }
    }

    /// Structural invariants: positive geometry, at least one movable
    /// interior element, and every array element admissible with respect to
    /// the user boresight.
    pub fn validate(&self) -> Result<()> {
        if !(self.carrier_frequency_hz > 0.0) {
            return Err(Error::InvalidConfig("carrier_frequency_hz must be > 0".into()));
        }
        if !(self.unit_spacing_m > 0.0) {
            return Err(Error::InvalidConfig("unit spacing must be > 0".into()));
        }
        if self.num_bs < 3 {
            return Err(Error::InvalidConfig("num_bs must be at least 3".into()));
        }
        if self.num_ue < 1 {
            return Err(Error::InvalidConfig("num_ue must be at least 1".into()));
        }
        if !(self.ue_spacing_m > 0.0) {
            return Err(Error::InvalidConfig("ue spacing must be > 0".into()));
        }
        if !(self.ue_centroid.1 > 0.0) {
            return Err(Error::InvalidConfig("ue_y0_m must be > 0".into()));
        }
        // Admissibility at the two array edges implies it everywhere between.
        let half = self.aperture() / 2.0;
        for x in [-half, half] {
            x_to_s(x, self).map_err(|_| {
                Error::InvalidConfig(format!(
                    "array edge x = {x} is outside the admissible angular range"
                ))
            })?;
        }
        Ok(())
    }

    /// Draw a random near-field pose: distance uniform between the Fresnel
    /// and Rayleigh boundaries, centroid azimuth and array azimuth uniform in
    /// [−π/3, π/3], rejecting poses for which some array element would leave
    /// the admissible range.
    pub fn sample_pose<R: Rng + ?Sized>(&self, rng: &mut R) -> ScenarioConfig {
        let (lo, hi) = (self.fresnel_distance(), self.rayleigh_distance());
        loop {
            let r0 = rng.gen_range(lo..hi);
            let phi0 = rng.gen_range(-PI / 3.0..PI / 3.0);
            let theta = rng.gen_range(-PI / 3.0..PI / 3.0);
            let cand = self.with_pose(r0, phi0, theta);
            if cand.validate().is_ok() {
                return cand;
            }
        }
    }

    /// Canonical flat key-value rendering; used for config hashing so that
    /// CSV artifacts record exactly the scenario that produced them.
    pub fn canonical_string(&self) -> String {
        let wl = self.wavelength();
        format!(
            "carrier_frequency_hz={:e};unit_spacing_in_wavelengths={:e};num_bs={};num_ue={};\
             ue_spacing_in_wavelengths={:e};ue_x0_m={:e};ue_y0_m={:e};ue_azimuth_rad={:e};\
             snr_db={:e};rng_seed={}",
            self.carrier_frequency_hz,
            self.unit_spacing_m / wl,
            self.num_bs,
            self.num_ue,
            self.ue_spacing_m / wl,
            self.ue_centroid.0,
            self.ue_centroid.1,
            self.ue_azimuth_rad,
            self.snr_db,
            self.rng_seed
        )
    }

    /// Load a scenario from a flat `key = value` file. Unknown keys are
    /// errors; omitted keys keep the reference defaults. `#` starts a
    /// comment.
    pub fn from_file<P: AsRef<Path>>(path: P) -> Result<ScenarioConfig> {
        let text = fs::read_to_string(path.as_ref()).map_err(|e| Error::ConfigParse {
            line: 0,
            message: format!("cannot read {}: {e}", path.as_ref().display()),
        })?;
        Self::from_str_flat(&text)
    }

    /// Parse the flat key-value format from a string. See [`Self::from_file`].
    pub fn from_str_flat(text: &str) -> Result<ScenarioConfig> {
        let mut cfg = ScenarioConfig::default();
        // Spacings arrive in wavelengths and need the (possibly overridden)
        // carrier; collect raw values first.
        let mut spacing_wl: Option<f64> = None;
        let mut ue_spacing_wl: Option<f64> = None;
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (key, value) = line.split_once('=').ok_or_else(|| Error::ConfigParse {
                line: line_no,
                message: format!("expected `key = value`, got `{line}`"),
            })?;
            let key = key.trim();
            let value = value.trim();
            let parse_f64 = |v: &str| -> Result<f64> {
                v.parse::<f64>().map_err(|_| Error::ConfigParse {
                    line: line_no,
                    message: format!("key `{key}`: `{v}` is not a number"),
                })
            };
            match key {
                "carrier_frequency_hz" => cfg.carrier_frequency_hz = parse_f64(value)?,
                "unit_spacing_in_wavelengths" => spacing_wl = Some(parse_f64(value)?),
                "num_bs" => {
                    cfg.num_bs = value.parse().map_err(|_| Error::ConfigParse {
                        line: line_no,
                        message: format!("key `num_bs`: `{value}` is not a count"),
                    })?
                }
                "num_ue" => {
                    cfg.num_ue = value.parse().map_err(|_| Error::ConfigParse {
                        line: line_no,
                        message: format!("key `num_ue`: `{value}` is not a count"),
                    })?
                }
                "ue_spacing_in_wavelengths" => ue_spacing_wl = Some(parse_f64(value)?),
                "ue_x0_m" => cfg.ue_centroid.0 = parse_f64(value)?,
                "ue_y0_m" => cfg.ue_centroid.1 = parse_f64(value)?,
                "ue_azimuth_rad" => cfg.ue_azimuth_rad = parse_f64(value)?,
                "snr_db" => cfg.snr_db = parse_f64(value)?,
                "rng_seed" => {
                    cfg.rng_seed = value.parse().map_err(|_| Error::ConfigParse {
                        line: line_no,
                        message: format!("key `rng_seed`: `{value}` is not an integer"),
                    })?
                }
                other => {
                    return Err(Error::ConfigParse {
                        line: line_no,
                        message: format!("unknown key `{other}`"),
                    })
                }
            }
        }
        let wl = cfg.wavelength();
        cfg.unit_spacing_m = spacing_wl.unwrap_or(2.0) * wl;
        cfg.ue_spacing_m = ue_spacing_wl.unwrap_or(0.5) * wl;
        cfg.validate()
            .map_err(|e| Error::ConfigParse { line: 0, message: e.to_string() })?;
        Ok(cfg)
    }
}

// ---------------------------------------------------------------------------
// Position containers
// ---------------------------------------------------------------------------

/// Transmit-element positions on the array axis, strictly increasing with
/// both edge elements pinned at ±A/2.
#[derive(Debug, Clone, PartialEq)]
pub struct BsPositions {
    x: Vec<f64>,
}

impl BsPositions {
    /// Validate ordering and the mirrored fixed endpoints.
    pub fn new(x: Vec<f64>) -> Result<BsPositions> {
        if x.len() < 2 {
            return Err(Error::InvalidConfig("need at least the two edge elements".into()));
        }
        if !strictly_increasing(&x) {
            return Err(Error::CoincidentPoints);
        }
        if x[0] != -x[x.len() - 1] {
            return Err(Error::InvalidConfig("edge elements must sit at ∓A/2 exactly".into()));
        }
        Ok(BsPositions { x })
    }

    /// Assemble from interior positions, pinning the endpoints exactly.
    pub fn from_interior(interior: &[f64], aperture: f64) -> Result<BsPositions> {
        let half = aperture / 2.0;
        let mut x = Vec::with_capacity(interior.len() + 2);
        x.push(-half);
        x.extend_from_slice(interior);
        x.push(half);
        if !strictly_increasing(&x) {
            return Err(Error::CoincidentPoints);
        }
        Ok(BsPositions { x })
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.x
    }

    pub fn len(&self) -> usize {
        self.x.len()
    }

    pub fn is_empty(&self) -> bool {
        self.x.is_empty()
    }

    /// Aperture implied by the pinned endpoints.
    pub fn aperture(&self) -> f64 {
        2.0 * self.x[self.x.len() - 1]
    }

    /// Adjacent gaps `x[m+1] − x[m]`, length M − 1.
    pub fn gaps(&self) -> Vec<f64> {
        self.x.windows(2).map(|w| w[1] - w[0]).collect()
    }
}

/// User-side element coordinates and their signed offsets from the centroid.
#[derive(Debug, Clone, PartialEq)]
pub struct UePositions {
    /// Element coordinates `(x, y)`, meters.
    pub coords: Vec<(f64, f64)>,
    /// Signed distances d_n from the centroid along the array direction;
    /// centered so they sum to zero.
    pub rel_offsets: Vec<f64>,
}

/// Angular-domain positions with their scenario bounds.
#[derive(Debug, Clone, PartialEq)]
pub struct AngularPositions {
    s: Vec<f64>,
    s_min: f64,
    s_max: f64,
}

impl AngularPositions {
    /// Build from the full position vector; the first and last entries must
    /// equal the stated bounds.
    pub fn new(s: Vec<f64>, s_min: f64, s_max: f64) -> Result<AngularPositions> {
        if s.len() < 2 || s[0] != s_min || s[s.len() - 1] != s_max {
            return Err(Error::InvalidConfig("angular endpoints must equal the bounds".into()));
        }
        if !strictly_increasing(&s) {
            return Err(Error::CoincidentPoints);
        }
        Ok(AngularPositions { s, s_min, s_max })
    }

    /// Assemble from interior values with the bounds pinned as endpoints.
    pub fn from_interior(interior: &[f64], s_min: f64, s_max: f64) -> Result<AngularPositions> {
        let mut s = Vec::with_capacity(interior.len() + 2);
        s.push(s_min);
        s.extend_from_slice(interior);
        s.push(s_max);
        Self::new(s, s_min, s_max)
    }

    /// Map physical positions through the x→s chart.
    pub fn from_bs(bs: &BsPositions, cfg: &ScenarioConfig) -> Result<AngularPositions> {
        let (s_min, s_max) = s_bounds(cfg)?;
        let xs = bs.as_slice();
        let interior: Result<Vec<f64>> =
            xs[1..xs.len() - 1].iter().map(|&x| x_to_s(x, cfg)).collect();
        Self::from_interior(&interior?, s_min, s_max)
    }

    pub fn as_slice(&self) -> &[f64] {
        &self.s
    }

    pub fn interior(&self) -> &[f64] {
        &self.s[1..self.s.len() - 1]
    }

    pub fn bounds(&self) -> (f64, f64) {
        (self.s_min, self.s_max)
    }

    pub fn len(&self) -> usize {
        self.s.len()
    }

    pub fn is_empty(&self) -> bool {
        self.s.is_empty()
    }
}

/// Which affine normalization a `t` vector lives in.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Chart {
    /// `t = (s − s_min)/(s_max − s_min) ∈ (0, 1)`.
    Unit,
    /// `t = (2s − (s_min + s_max))/(s_max − s_min) ∈ (−1, 1)`.
    Symmetric,
}

/// Normalized-domain positions.
#[derive(Debug, Clone, PartialEq)]
pub struct NormalizedPositions {
    pub t: Vec<f64>,
    pub chart: Chart,
}

impl NormalizedPositions {
    pub fn new(t: Vec<f64>, chart: Chart) -> Result<NormalizedPositions> {
        if !strictly_increasing(&t) {
            return Err(Error::CoincidentPoints);
        }
        Ok(NormalizedPositions { t, chart })
    }

    /// Entries strictly between the chart endpoints.
    pub fn interior(&self) -> &[f64] {
        let (lo, hi) = match self.chart {
            Chart::Unit => (0.0, 1.0),
            Chart::Symmetric => (-1.0, 1.0),
        };
        let a = self.t.iter().take_while(|&&v| v <= lo).count();
        let b = self.t.iter().rev().take_while(|&&v| v >= hi).count();
        &self.t[a..self.t.len() - b]
    }
}

pub(crate) fn strictly_increasing(v: &[f64]) -> bool {
    v.windows(2).all(|w| w[1] > w[0])
}

// ---------------------------------------------------------------------------
// Chart transforms
// ---------------------------------------------------------------------------

/// Uniform linear array positions: `x_m = −(M−1)d/2 + (m−1)d`, endpoints
/// pinned exactly at ±(M−1)d/2.
pub fn ula_positions(m: usize, d: f64) -> BsPositions {
    assert!(m >= 2 && d > 0.0, "need m >= 2 and d > 0");
    let half = (m as f64 - 1.0) * d / 2.0;
    let mut x: Vec<f64> = (0..m).map(|k| -half + k as f64 * d).collect();
    x[0] = -half;
    x[m - 1] = half;
    BsPositions::new(x).expect("ULA positions are ordered by construction")
}

/// User element coordinates: centered offsets rotated by the array azimuth
/// around the centroid.
pub fn ue_element_coords(cfg: &ScenarioConfig) -> UePositions {
    let n = cfg.num_ue;
    let (x0, y0) = cfg.ue_centroid;
    let (sin_t, cos_t) = cfg.ue_azimuth_rad.sin_cos();
    let rel_offsets: Vec<f64> = (0..n)
        .map(|k| (k as f64 - (n as f64 - 1.0) / 2.0) * cfg.ue_spacing_m)
        .collect();
    let coords = rel_offsets
        .iter()
        .map(|d| (x0 + d * cos_t, y0 + d * sin_t))
        .collect();
    UePositions { coords, rel_offsets }
}

/// Angle of the user centroid as seen from position `x` on the array axis,
/// relative to the user boresight. Rejected near ±π/2.
fn relative_angle(x: f64, cfg: &ScenarioConfig) -> Result<f64> {
    let (x0, y0) = cfg.ue_centroid;
    let angle = ((x - x0) / y0).atan() - cfg.ue_azimuth_rad;
    if angle.abs() >= FRAC_PI_2 - ANGLE_GUARD {
        return Err(Error::AngleOutOfRange(angle));
    }
    Ok(angle)
}

/// Physical axis → angular domain: `s = sin(arctan((x − x0)/y0) − θ_UE)`.
pub fn x_to_s(x: f64, cfg: &ScenarioConfig) -> Result<f64> {
    Ok(relative_angle(x, cfg)?.sin())
}

/// Angular domain → physical axis, the exact inverse of [`x_to_s`]:
/// `x = x0 + y0 · tan(arcsin s + θ_UE)`.
pub fn s_to_x(s: f64, cfg: &ScenarioConfig) -> Result<f64> {
    if s.abs() > 1.0 {
        return Err(Error::AngleOutOfRange(s.asin()));
    }
    let angle = s.asin() + cfg.ue_azimuth_rad;
    if angle.abs() >= FRAC_PI_2 - ANGLE_GUARD {
        return Err(Error::AngleOutOfRange(angle));
    }
    let (x0, y0) = cfg.ue_centroid;
    Ok(x0 + y0 * angle.tan())
}

/// Images of the fixed array edges under the x→s chart.
pub fn s_bounds(cfg: &ScenarioConfig) -> Result<(f64, f64)> {
    let half = cfg.aperture() / 2.0;
    Ok((x_to_s(-half, cfg)?, x_to_s(half, cfg)?))
}

const MIN_RANGE: f64 = 1e-14;

/// Affine map of angular positions onto the unit chart; endpoints land on
/// {0, 1} exactly.
pub fn normalize_unit(s: &AngularPositions) -> Result<NormalizedPositions> {
    let (s_min, s_max) = s.bounds();
    let range = s_max - s_min;
    if range < MIN_RANGE {
        return Err(Error::DegenerateRange);
    }
    let mut t: Vec<f64> = s.as_slice().iter().map(|&v| (v - s_min) / range).collect();
    let last = t.len() - 1;
    t[0] = 0.0;
    t[last] = 1.0;
    NormalizedPositions::new(t, Chart::Unit)
}

/// Inverse of [`normalize_unit`] for the given bounds.
pub fn denormalize_unit(
    t: &NormalizedPositions,
    s_min: f64,
    s_max: f64,
) -> Result<AngularPositions> {
    debug_assert_eq!(t.chart, Chart::Unit);
    let range = s_max - s_min;
    if range < MIN_RANGE {
        return Err(Error::DegenerateRange);
    }
    let s: Vec<f64> = t
        .t
        .iter()
        .map(|&v| if v == 0.0 { s_min } else if v == 1.0 { s_max } else { s_min + v * range })
        .collect();
    let (lo, hi) = (s[0], s[s.len() - 1]);
    AngularPositions::new(s, lo, hi)
}

/// Affine map of angular positions onto the symmetric chart (−1, 1).
pub fn normalize_sym(s: &AngularPositions) -> Result<NormalizedPositions> {
    let (s_min, s_max) = s.bounds();
    let range = s_max - s_min;
    if range < MIN_RANGE {
        return Err(Error::DegenerateRange);
    }
    let mid = s_min + s_max;
    let mut t: Vec<f64> = s.as_slice().iter().map(|&v| (2.0 * v - mid) / range).collect();
    let last = t.len() - 1;
    t[0] = -1.0;
    t[last] = 1.0;
    NormalizedPositions::new(t, Chart::Symmetric)
}

/// Inverse of [`normalize_sym`]: `s = t (s_max − s_min)/2 + (s_max + s_min)/2`.
pub fn denormalize_sym(
    t: &NormalizedPositions,
    s_min: f64,
    s_max: f64,
) -> Result<AngularPositions> {
    debug_assert_eq!(t.chart, Chart::Symmetric);
    let range = s_max - s_min;
    if range < MIN_RANGE {
        return Err(Error::DegenerateRange);
    }
    let half = range / 2.0;
    let mid = (s_max + s_min) / 2.0;
    let s: Vec<f64> = t
        .t
        .iter()
        .map(|&v| if v == -1.0 { s_min } else if v == 1.0 { s_max } else { mid + v * half })
        .collect();
    let (lo, hi) = (s[0], s[s.len() - 1]);
    AngularPositions::new(s, lo, hi)
}
