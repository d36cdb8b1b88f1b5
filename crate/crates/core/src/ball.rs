//! The unit ball `𝔹ⁿ ⊂ ℂⁿ`: Möbius automorphisms, the pseudo-hyperbolic
//! distance `ρ(z, w) = |φ_z(w)|`, the Bergman distance
//! `β = log((1 + ρ)/(1 − ρ))` and the Bergman Hermitian form.
//!
//! Inner products conjugate the second slot: `⟨u, v⟩ = Σ uᵢ v̄ᵢ`.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disk::{self, BOUNDARY_GUARD};
use crate::error::{Error, Result};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct BallPoint(Vec<Complex64>);

impl BallPoint {
    pub fn new(coords: Vec<Complex64>) -> Result<Self> {
        if coords.is_empty() {
            return Err(Error::InvalidInput("ball points need at least one coordinate".into()));
        }
        if !coords.iter().all(|c| c.re.is_finite() && c.im.is_finite()) {
            return Err(Error::InvalidInput("non-finite ball coordinate".into()));
        }
        let norm = norm_sqr(&coords).sqrt();
        if norm >= 1.0 - BOUNDARY_GUARD {
            return Err(Error::InvalidInput(format!(
                "|z| = {norm} is not below 1 − {BOUNDARY_GUARD:e}"
            )));
        }
        Ok(Self(coords))
    }

    pub fn origin(n: usize) -> Self {
        Self(vec![Complex64::new(0.0, 0.0); n.max(1)])
    }

    /// `(‖z‖, 0, …, 0)`: the modulus embedded on the first real axis.
    pub fn modulus_point(&self) -> Self {
        let mut coords = vec![Complex64::new(0.0, 0.0); self.0.len()];
        coords[0] = Complex64::new(self.norm(), 0.0);
        Self(coords)
    }

    pub fn coords(&self) -> &[Complex64] {
        &self.0
    }

    pub fn dim(&self) -> usize {
        self.0.len()
    }

    pub fn norm(&self) -> f64 {
        norm_sqr(&self.0).sqrt()
    }
}

impl<'de> Deserialize<'de> for BallPoint {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let v = Vec::<Complex64>::deserialize(d)?;
        BallPoint::new(v).map_err(serde::de::Error::custom)
    }
}

/// `⟨u, v⟩ = Σ uᵢ v̄ᵢ`.
pub fn inner(u: &[Complex64], v: &[Complex64]) -> Complex64 {
    u.iter().zip(v).map(|(a, b)| a * b.conj()).sum()
}

fn norm_sqr(u: &[Complex64]) -> f64 {
    u.iter().map(|c| c.norm_sqr()).sum()
}

fn same_dim(z: &BallPoint, w: &BallPoint) -> Result<()> {
    if z.dim() == w.dim() {
        Ok(())
    } else {
        Err(Error::InvalidInput(format!(
            "dimension mismatch: {} vs {}",
            z.dim(),
            w.dim()
        )))
    }
}

/// `φ_a(w) = (a − P_a w − s_a Q_a w)/(1 − ⟨w, a⟩)` with `P_a w = ⟨w, a⟩ a/|a|²`,
/// `Q_a = I − P_a` and `s_a = √(1 − |a|²)`; `φ_0(w) = −w`.
pub fn ball_mobius(a: &BallPoint, w: &BallPoint) -> Result<BallPoint> {
    same_dim(a, w)?;
    BallPoint::new(phi(&a.0, &w.0))
}

fn phi(a: &[Complex64], w: &[Complex64]) -> Vec<Complex64> {
    let a2 = norm_sqr(a);
    let one = Complex64::new(1.0, 0.0);
    if a2 == 0.0 {
        return w.iter().map(|c| -c).collect();
    }
    let wa = inner(w, a);
    let s = (1.0 - a2).sqrt();
    let coef = wa / a2;
    let denom = one - wa;
    a.iter()
        .zip(w)
        .map(|(&ai, &wi)| {
            let p = coef * ai;
            (ai - p - (wi - p) * s) / denom
        })
        .collect()
}

/// `ρ(z, w) = |φ_z(w)|`.
pub fn ball_rho(z: &BallPoint, w: &BallPoint) -> Result<f64> {
    same_dim(z, w)?;
    if z.dim() == 1 {
        return Ok(disk::phi(z.0[0], w.0[0]).norm());
    }
    Ok(norm_sqr(&phi(&z.0, &w.0)).sqrt())
}

/// `1 − ρ(z, w)² = (1 − |z|²)(1 − |w|²)/|1 − ⟨w, z⟩|²`.
pub fn ball_one_minus_rho_sq(z: &BallPoint, w: &BallPoint) -> Result<f64> {
    same_dim(z, w)?;
    if z.dim() == 1 {
        return Ok(disk::one_minus_rho_sq(z.0[0], w.0[0]));
    }
    let denom = (Complex64::new(1.0, 0.0) - inner(&w.0, &z.0)).norm_sqr();
    Ok((1.0 - norm_sqr(&z.0)) * (1.0 - norm_sqr(&w.0)) / denom)
}

/// `β(z, w) = log((1 + ρ)/(1 − ρ))`.
pub fn bergman_beta(z: &BallPoint, w: &BallPoint) -> Result<f64> {
    Ok(disk::sigma_from_rho(ball_rho(z, w)?, ball_one_minus_rho_sq(z, w)?))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BergmanFormValue {
    pub value: Complex64,
    pub at: BallPoint,
}

/// `H_z(u, v) = 2[(1 − |z|²)⟨u, v⟩ + ⟨u, z⟩⟨z, v⟩]/(1 − |z|²)²`.
pub fn bergman_form(z: &BallPoint, u: &[Complex64], v: &[Complex64]) -> Result<BergmanFormValue> {
    if u.len() != z.dim() || v.len() != z.dim() {
        return Err(Error::InvalidInput(format!(
            "tangent vectors must have dimension {}",
            z.dim()
        )));
    }
    let q = 1.0 - norm_sqr(&z.0);
    let value = 2.0 * (q * inner(u, v) + inner(u, &z.0) * inner(&z.0, v)) / (q * q);
    Ok(BergmanFormValue { value, at: z.clone() })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::disk::{hyperbolic_sigma, mobius_disk, pseudo_hyperbolic, DiskPoint};

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn bp(v: &[(f64, f64)]) -> BallPoint {
        BallPoint::new(v.iter().map(|&(a, b)| c(a, b)).collect()).unwrap()
    }

    #[test]
    fn origin_negates() {
        let w = bp(&[(0.1, 0.2), (-0.3, 0.0)]);
        let img = ball_mobius(&BallPoint::origin(2), &w).unwrap();
        assert_eq!(img.coords(), &[c(-0.1, -0.2), c(0.3, -0.0)]);
    }

    #[test]
    fn automorphism_identities() {
        let a = bp(&[(0.5, 0.0), (0.0, 0.0)]);
        let zero = ball_mobius(&a, &a).unwrap();
        assert!(zero.norm() < 1e-16);
        let a = bp(&[(0.2, -0.3), (0.1, 0.4), (0.0, 0.1)]);
        let w = bp(&[(-0.5, 0.1), (0.2, 0.2), (0.3, -0.1)]);
        let at_zero = ball_mobius(&a, &BallPoint::origin(3)).unwrap();
        for (x, y) in at_zero.coords().iter().zip(a.coords()) {
            assert!((x - y).norm() < 1e-15);
        }
        let back = ball_mobius(&a, &ball_mobius(&a, &w).unwrap()).unwrap();
        for (x, y) in back.coords().iter().zip(w.coords()) {
            assert!((x - y).norm() < 1e-14);
        }
    }

    #[test]
    fn one_dimensional_reduction() {
        for (a, z) in [((0.5, 0.0), (0.0, 0.5)), ((-0.3, 0.7), (0.2, -0.1)), ((0.9, 0.1), (-0.95, 0.0))] {
            let (da, dz) = (DiskPoint::from_parts(a.0, a.1).unwrap(), DiskPoint::from_parts(z.0, z.1).unwrap());
            let (ba, bz) = (bp(&[a]), bp(&[z]));
            let disk_img = mobius_disk(da, dz).unwrap().value();
            let ball_img = ball_mobius(&ba, &bz).unwrap().coords()[0];
            assert!((disk_img - ball_img).norm() < 1e-14);
            assert!((ball_rho(&ba, &bz).unwrap() - pseudo_hyperbolic(da, dz)).abs() < 1e-14);
            assert!((bergman_beta(&ba, &bz).unwrap() - hyperbolic_sigma(da, dz)).abs() < 1e-14);
        }
    }

    #[test]
    fn rho_and_beta_examples() {
        let w = bp(&[(0.3, 0.1), (0.0, -0.4)]);
        assert!((ball_rho(&BallPoint::origin(2), &w).unwrap() - w.norm()).abs() < 1e-15);
        assert_eq!(ball_rho(&w, &w).unwrap(), 0.0);
        assert_eq!(bergman_beta(&w, &w).unwrap(), 0.0);
        let half = bp(&[(0.5, 0.0), (0.0, 0.0), (0.0, 0.0)]);
        assert!((bergman_beta(&BallPoint::origin(3), &half).unwrap() - 3f64.ln()).abs() < 1e-15);
    }

    #[test]
    fn duren_weir_example() {
        // ρ((0.5,0),(0,0.5)) = √7/4, β = 1.5907309224478113 at 40 digits
        let z = bp(&[(0.5, 0.0), (0.0, 0.0)]);
        let w = bp(&[(0.0, 0.0), (0.5, 0.0)]);
        let beta = bergman_beta(&z, &w).unwrap();
        assert!((ball_rho(&z, &w).unwrap() - 7f64.sqrt() / 4.0).abs() < 1e-15);
        assert!((beta - 1.590_730_922_447_811_3).abs() < 1e-14);
        let beta_abs = bergman_beta(&z.modulus_point(), &w.modulus_point()).unwrap();
        assert_eq!(beta_abs, 0.0);
        assert!(beta_abs <= beta);
    }

    #[test]
    fn form_examples() {
        let u = [c(0.3, 0.1), c(-0.2, 0.5)];
        let v = [c(1.0, -1.0), c(0.4, 0.0)];
        let h = bergman_form(&BallPoint::origin(2), &u, &v).unwrap().value;
        assert!((h - 2.0 * inner(&u, &v)).norm() < 1e-15);
        for r in [0.0, 0.3, 0.9] {
            let h = bergman_form(&bp(&[(r, 0.0)]), &[c(1.0, 0.0)], &[c(1.0, 0.0)]).unwrap().value;
            let q = 1.0 - r * r;
            assert!((h.re - 2.0 / (q * q)).abs() < 1e-12 * h.re);
            // Half of the disk metric 4/(1 − |z|²)².
            assert!((2.0 * h.re - 4.0 / (q * q)).abs() < 1e-12 * h.re);
            assert_eq!(h.im, 0.0);
        }
    }

    #[test]
    fn form_is_conjugate_symmetric() {
        let z = bp(&[(0.2, 0.3), (-0.4, 0.1)]);
        let u = [c(0.3, 0.1), c(-0.2, 0.5)];
        let v = [c(1.0, -1.0), c(0.4, 0.7)];
        let huv = bergman_form(&z, &u, &v).unwrap().value;
        let hvu = bergman_form(&z, &v, &u).unwrap().value;
        assert!((huv - hvu.conj()).norm() < 1e-14);
    }

    #[test]
    fn rejects_bad_input() {
        assert!(BallPoint::new(vec![]).is_err());
        assert!(BallPoint::new(vec![c(0.8, 0.0), c(0.0, 0.6)]).is_err());
        let (a, b) = (BallPoint::origin(2), BallPoint::origin(3));
        assert!(ball_rho(&a, &b).is_err());
        assert!(bergman_form(&a, &[c(1.0, 0.0)], &[c(1.0, 0.0), c(0.0, 0.0)]).is_err());
    }
}
