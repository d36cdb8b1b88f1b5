//! Unit-disk geometry: Möbius automorphisms, the pseudo-hyperbolic distance
//! `ρ(z, w) = |φ_z(w)|` and the hyperbolic distance `σ = log((1 + ρ)/(1 − ρ))`
//! of the curvature −1 metric `2|dz|/(1 − |z|²)`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Points with `|z| ≥ 1 − BOUNDARY_GUARD` are rejected.
pub const BOUNDARY_GUARD: f64 = 1e-9;

/// A point of the open unit disk, at least [`BOUNDARY_GUARD`] away from the circle.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DiskPoint(Complex64);

impl DiskPoint {
    pub fn new(value: Complex64) -> Result<Self> {
        if !(value.re.is_finite() && value.im.is_finite()) {
            return Err(Error::InvalidInput(format!("non-finite disk point {value}")));
        }
        if value.norm() >= 1.0 - BOUNDARY_GUARD {
            return Err(Error::OutsideDomain {
                point: value,
                domain: format!("unit disk (boundary guard {BOUNDARY_GUARD:e})"),
            });
        }
        Ok(Self(value))
    }

    pub fn from_parts(re: f64, im: f64) -> Result<Self> {
        Self::new(Complex64::new(re, im))
    }

    /// The nonnegative real point with the same modulus.
    pub fn modulus_point(&self) -> Self {
        Self(Complex64::new(self.0.norm(), 0.0))
    }

    pub const ORIGIN: DiskPoint = DiskPoint(Complex64::new(0.0, 0.0));

    pub fn value(&self) -> Complex64 {
        self.0
    }

    pub fn norm(&self) -> f64 {
        self.0.norm()
    }
}

impl<'de> Deserialize<'de> for DiskPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let z = Complex64::deserialize(d)?;
        DiskPoint::new(z).map_err(serde::de::Error::custom)
    }
}

impl TryFrom<Complex64> for DiskPoint {
    type Error = Error;
    fn try_from(z: Complex64) -> Result<Self> {
        Self::new(z)
    }
}

/// `φ_a(z) = (a − z)/(1 − ā z)`, the involutive automorphism swapping `a` and 0.
pub fn mobius_disk(a: DiskPoint, z: DiskPoint) -> Result<DiskPoint> {
    DiskPoint::new(phi(a.0, z.0))
}

#[inline]
pub(crate) fn phi(a: Complex64, z: Complex64) -> Complex64 {
    (a - z) / (Complex64::new(1.0, 0.0) - a.conj() * z)
}

/// Pseudo-hyperbolic distance `|φ_z(w)|`.
pub fn pseudo_hyperbolic(z: DiskPoint, w: DiskPoint) -> f64 {
    (z.0 - w.0).norm() / (Complex64::new(1.0, 0.0) - z.0.conj() * w.0).norm()
}

/// `(1 − |z|²)(1 − |w|²)/|1 − z̄w|²`, which equals `1 − ρ(z, w)²`.
pub fn one_minus_phi_product(z: DiskPoint, w: DiskPoint) -> f64 {
    one_minus_rho_sq(z.0, w.0)
}

#[inline]
pub(crate) fn one_minus_rho_sq(z: Complex64, w: Complex64) -> f64 {
    let denom = (Complex64::new(1.0, 0.0) - z.conj() * w).norm_sqr();
    (1.0 - z.norm_sqr()) * (1.0 - w.norm_sqr()) / denom
}

/// Hyperbolic distance `σ(z, w) = 2 atanh ρ(z, w)`.
pub fn hyperbolic_sigma(z: DiskPoint, w: DiskPoint) -> f64 {
    sigma_from_rho(pseudo_hyperbolic(z, w), one_minus_phi_product(z, w))
}

/// `log((1 + ρ)/(1 − ρ))` given both `ρ` and an independently computed `1 − ρ²`.
///
/// For `ρ ≥ 1/2` the value is `2 ln(1 + ρ) − ln(1 − ρ²)`, which never forms `1 − ρ`
/// by subtraction. Small `ρ` goes through `atanh` directly.
pub fn sigma_from_rho(rho: f64, one_minus_rho_sq: f64) -> f64 {
    if rho < 0.5 {
        2.0 * rho.atanh()
    } else {
        2.0 * rho.ln_1p() - one_minus_rho_sq.ln()
    }
}

/// `σ` between two real points of `(−1, 1)`, i.e. the `2/(1 − t²)` interval distance.
pub fn sigma_real(s: f64, t: f64) -> Result<f64> {
    let a = DiskPoint::from_parts(s, 0.0)?;
    let b = DiskPoint::from_parts(t, 0.0)?;
    Ok(hyperbolic_sigma(a, b))
}
