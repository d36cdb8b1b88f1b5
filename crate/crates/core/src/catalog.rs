//! Holomorphic maps on the unit disk with analytic derivatives and declared
//! codomains. These play the role of `f` in every checked inequality.

use std::f64::consts::{FRAC_2_PI, PI};

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::disk::DiskPoint;
use crate::error::{Error, Result};
use crate::weights::Interval;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "type", rename_all = "snake_case")]
pub enum Codomain {
    Disk,
    /// The vertical strip `(−1, 1) × ℝ`.
    Strip,
    RightHalfPlane,
    /// Values read in the slice `𝔻 × {0}` of `𝔹ⁿ`.
    BallSlice { dim: usize },
}

impl Codomain {
    pub fn contains(&self, v: Complex64) -> bool {
        if !(v.re.is_finite() && v.im.is_finite()) {
            return false;
        }
        match self {
            Codomain::Disk | Codomain::BallSlice { .. } => v.norm() < 1.0,
            Codomain::Strip => v.re.abs() < 1.0,
            Codomain::RightHalfPlane => v.re > 0.0,
        }
    }

    /// The interval swept by `Re f`.
    pub fn re_interval(&self) -> Interval {
        match self {
            Codomain::RightHalfPlane => Interval::new(0.0, f64::INFINITY),
            _ => Interval::new(-1.0, 1.0),
        }
        .expect("fixed intervals are valid")
    }

    /// Bounded by one in modulus, so `|f|` is a point of `[0, 1)`.
    pub fn is_bounded_by_one(&self) -> bool {
        matches!(self, Codomain::Disk | Codomain::BallSlice { .. })
    }

    pub fn name(&self) -> String {
        match self {
            Codomain::Disk => "disk".into(),
            Codomain::Strip => "strip(-1,1)".into(),
            Codomain::RightHalfPlane => "right_half_plane".into(),
            Codomain::BallSlice { dim } => format!("ball_slice(n={dim})"),
        }
    }
}

/// Formula of a catalog entry. Coefficient lists are in ascending powers.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HoloKind {
    Identity,
    /// `(a − z)/(1 − āz)`.
    BlaschkeFactor { a: Complex64 },
    /// Product of Blaschke factors with the given zeros.
    BlaschkeProduct { zeros: Vec<Complex64> },
    /// `c·z^d`.
    Monomial { c: Complex64, d: u32 },
    /// `(1 − z)/(1 + z)`.
    Cayley,
    /// `i(2/π) log((1 + z)/(1 − z))`, a conformal map onto the strip.
    StripMap,
    Constant { c: Complex64 },
    /// `scale·exp(rate·z)`.
    ScaledExp { scale: Complex64, rate: Complex64 },
    Rational {
        numerator: Vec<Complex64>,
        denominator: Vec<Complex64>,
    },
    /// `φ_a ∘ inner`.
    PostMobius { a: Complex64, inner: Box<HoloKind> },
}

fn one() -> Complex64 {
    Complex64::new(1.0, 0.0)
}

fn horner(coeffs: &[Complex64], z: Complex64) -> (Complex64, Complex64) {
    let mut p = Complex64::new(0.0, 0.0);
    let mut dp = Complex64::new(0.0, 0.0);
    for &c in coeffs.iter().rev() {
        dp = dp * z + p;
        p = p * z + c;
    }
    (p, dp)
}

impl HoloKind {
    pub fn eval(&self, z: Complex64) -> Complex64 {
        match self {
            HoloKind::Identity => z,
            HoloKind::BlaschkeFactor { a } => (a - z) / (one() - a.conj() * z),
            HoloKind::BlaschkeProduct { zeros } => zeros.iter().map(|a| (a - z) / (one() - a.conj() * z)).product(),
            HoloKind::Monomial { c, d } => c * z.powu(*d),
            HoloKind::Cayley => (one() - z) / (one() + z),
            HoloKind::StripMap => Complex64::i() * FRAC_2_PI * ((one() + z) / (one() - z)).ln(),
            HoloKind::Constant { c } => *c,
            HoloKind::ScaledExp { scale, rate } => scale * (rate * z).exp(),
            HoloKind::Rational { numerator, denominator } => horner(numerator, z).0 / horner(denominator, z).0,
            HoloKind::PostMobius { a, inner } => {
                let u = inner.eval(z);
                (a - u) / (one() - a.conj() * u)
            }
        }
    }

    pub fn deriv(&self, z: Complex64) -> Complex64 {
        match self {
            HoloKind::Identity => one(),
            HoloKind::BlaschkeFactor { a } => blaschke_deriv(*a, z),
            HoloKind::BlaschkeProduct { zeros } => {
                let factors: Vec<Complex64> = zeros.iter().map(|a| (a - z) / (one() - a.conj() * z)).collect();
                (0..zeros.len())
                    .map(|i| {
                        let rest: Complex64 = factors.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, f)| f).product();
                        blaschke_deriv(zeros[i], z) * rest
                    })
                    .sum()
            }
            HoloKind::Monomial { c, d } => match d {
                0 => Complex64::new(0.0, 0.0),
                _ => c * (*d as f64) * z.powu(d - 1),
            },
            HoloKind::Cayley => -2.0 / ((one() + z) * (one() + z)),
            HoloKind::StripMap => Complex64::i() * (2.0 * FRAC_2_PI) / (one() - z * z),
            HoloKind::Constant { .. } => Complex64::new(0.0, 0.0),
            HoloKind::ScaledExp { scale, rate } => scale * rate * (rate * z).exp(),
            HoloKind::Rational { numerator, denominator } => {
                let (n, dn) = horner(numerator, z);
                let (d, dd) = horner(denominator, z);
                (dn * d - n * dd) / (d * d)
            }
            HoloKind::PostMobius { a, inner } => blaschke_deriv(*a, inner.eval(z)) * inner.deriv(z),
        }
    }
}

fn blaschke_deriv(a: Complex64, z: Complex64) -> Complex64 {
    let q = one() - a.conj() * z;
    (a.norm_sqr() - 1.0) / (q * q)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HoloFunction {
    pub id: String,
    pub codomain: Codomain,
    #[serde(flatten)]
    pub kind: HoloKind,
}

impl HoloFunction {
    pub fn new(id: impl Into<String>, codomain: Codomain, kind: HoloKind) -> Self {
        Self {
            id: id.into(),
            codomain,
            kind,
        }
    }

    pub fn eval(&self, z: DiskPoint) -> Complex64 {
        self.kind.eval(z.value())
    }

    pub fn deriv(&self, z: DiskPoint) -> Complex64 {
        self.kind.deriv(z.value())
    }

    /// `φ_a ∘ f` for a disk-valued `f`; the result is again disk-valued.
    pub fn post_mobius(&self, a: DiskPoint) -> Result<Self> {
        if !self.codomain.is_bounded_by_one() {
            return Err(Error::InvalidInput(format!(
                "{} has codomain {}, composition with a disk automorphism needs a disk-valued map",
                self.id,
                self.codomain.name()
            )));
        }
        Ok(Self {
            id: format!("mobius({})∘{}", a.value(), self.id),
            codomain: Codomain::Disk,
            kind: HoloKind::PostMobius {
                a: a.value(),
                inner: Box::new(self.kind.clone()),
            },
        })
    }

    fn defect(&self, value: Complex64) -> Error {
        Error::CodomainViolation {
            function: self.id.clone(),
            value,
            codomain: self.codomain.name(),
        }
    }
}

/// The fixed set of test maps.
pub fn catalog() -> Vec<HoloFunction> {
    let c = Complex64::new;
    vec![
        HoloFunction::new("identity", Codomain::Disk, HoloKind::Identity),
        HoloFunction::new("blaschke_factor", Codomain::Disk, HoloKind::BlaschkeFactor { a: c(0.5, 0.3) }),
        HoloFunction::new(
            "blaschke_product",
            Codomain::Disk,
            HoloKind::BlaschkeProduct {
                zeros: vec![c(0.5, 0.0), c(-0.3, 0.6), c(0.1, -0.7)],
            },
        ),
        HoloFunction::new("square", Codomain::Disk, HoloKind::Monomial { c: c(1.0, 0.0), d: 2 }),
        HoloFunction::new("cubic", Codomain::Disk, HoloKind::Monomial { c: c(0.0, 0.7), d: 3 }),
        HoloFunction::new("constant", Codomain::Disk, HoloKind::Constant { c: c(0.3, 0.1) }),
        HoloFunction::new(
            "scaled_exp",
            Codomain::Disk,
            HoloKind::ScaledExp {
                scale: c(0.5, 0.0),
                rate: c(0.4, 0.0),
            },
        ),
        HoloFunction::new("cayley", Codomain::RightHalfPlane, HoloKind::Cayley),
        HoloFunction::new(
            "cayley_square",
            Codomain::RightHalfPlane,
            HoloKind::Rational {
                numerator: vec![c(1.0, 0.0), c(0.0, 0.0), c(-1.0, 0.0)],
                denominator: vec![c(1.0, 0.0), c(0.0, 0.0), c(1.0, 0.0)],
            },
        ),
        HoloFunction::new("strip_map", Codomain::Strip, HoloKind::StripMap),
        HoloFunction::new(
            "blaschke_ball_slice",
            Codomain::BallSlice { dim: 3 },
            HoloKind::BlaschkeProduct {
                zeros: vec![c(0.2, 0.2), c(-0.6, 0.0)],
            },
        ),
    ]
}

/// Looks an entry up by id in the built-in catalog.
pub fn lookup(id: &str) -> Option<HoloFunction> {
    catalog().into_iter().find(|f| f.id == id)
}

/// `Re f(z)`, which must lie in the real interval of the declared codomain.
pub fn eval_re(f: &HoloFunction, z: DiskPoint) -> Result<f64> {
    let v = f.eval(z);
    if f.codomain.contains(v) && f.codomain.re_interval().contains(v.re) {
        Ok(v.re)
    } else {
        Err(f.defect(v))
    }
}

/// `|f(z)|` for maps bounded by one.
pub fn eval_abs(f: &HoloFunction, z: DiskPoint) -> Result<f64> {
    if !f.codomain.is_bounded_by_one() {
        return Err(Error::InvalidInput(format!(
            "|f| needs a disk-valued map; {} has codomain {}",
            f.id,
            f.codomain.name()
        )));
    }
    let v = f.eval(z);
    if f.codomain.contains(v) {
        Ok(v.norm())
    } else {
        Err(f.defect(v))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationReport {
    pub id: String,
    pub points: usize,
    /// Largest relative gap between `f′` and a central complex difference quotient.
    pub max_derivative_error: f64,
    pub codomain_violations: usize,
    pub passes: bool,
}

/// Polar sample grid: `rings × spokes` points with radii up to `radius_cap`.
pub fn polar_grid(rings: usize, spokes: usize, radius_cap: f64) -> Vec<DiskPoint> {
    let mut pts = Vec::with_capacity(rings * spokes);
    for i in 0..rings {
        let r = if rings == 1 { 0.0 } else { radius_cap * i as f64 / (rings - 1) as f64 };
        for j in 0..spokes {
            let th = 2.0 * PI * j as f64 / spokes as f64;
            if let Ok(p) = DiskPoint::new(Complex64::from_polar(r, th)) {
                pts.push(p);
            }
        }
    }
    pts
}

/// Re-checks the derivative (relative tolerance 1e−6) and the codomain
/// declaration of `f` on a 100 × 100 polar grid of radius `radius_cap`.
pub fn validate(f: &HoloFunction, radius_cap: f64) -> ValidationReport {
    let grid = polar_grid(100, 100, radius_cap);
    let mut max_err: f64 = 0.0;
    let mut violations = 0;
    for z in &grid {
        let zv = z.value();
        let v = f.kind.eval(zv);
        if !f.codomain.contains(v) {
            violations += 1;
        }
        if matches!(f.kind, HoloKind::StripMap) && ((one() + zv) / (one() - zv)).re <= 0.0 {
            // The principal logarithm is single-valued only on the right half-plane.
            violations += 1;
        }
        let h = 1e-6 * (1.0 - zv.norm()).min(1.0);
        let fd = (0..2)
            .map(|k| {
                let dir = if k == 0 { one() } else { Complex64::i() };
                (f.kind.eval(zv + dir * h) - f.kind.eval(zv - dir * h)) / (2.0 * h * dir)
            })
            .sum::<Complex64>()
            / 2.0;
        let exact = f.kind.deriv(zv);
        let scale = exact.norm().max(1e-3 * v.norm()).max(1e-12);
        max_err = max_err.max((fd - exact).norm() / scale);
    }
    ValidationReport {
        id: f.id.clone(),
        points: grid.len(),
        max_derivative_error: max_err,
        codomain_violations: violations,
        passes: violations == 0 && max_err < 1e-6,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(re: f64, im: f64) -> DiskPoint {
        DiskPoint::from_parts(re, im).unwrap()
    }

    #[test]
    fn every_entry_validates() {
        for f in catalog() {
            let r = validate(&f, 0.999);
            assert!(r.passes, "{r:?}");
            assert_eq!(r.points, 10_000);
        }
    }

    #[test]
    fn catalog_examples() {
        let id = lookup("identity").unwrap();
        assert_eq!(id.eval(p(0.0, 0.3)), Complex64::new(0.0, 0.3));
        assert_eq!(id.deriv(p(0.2, 0.1)), one());
        let cay = lookup("cayley").unwrap();
        assert_eq!(cay.eval(DiskPoint::ORIGIN), one());
        assert_eq!(eval_re(&cay, DiskPoint::ORIGIN).unwrap(), 1.0);
        let strip = lookup("strip_map").unwrap();
        assert_eq!(strip.eval(DiskPoint::ORIGIN).norm(), 0.0);
        assert_eq!(eval_re(&strip, p(0.5, 0.0)).unwrap(), 0.0);
        assert_eq!(eval_re(&id, p(0.5, 0.0)).unwrap(), 0.5);
    }

    #[test]
    fn modulus_examples() {
        assert_eq!(eval_abs(&lookup("identity").unwrap(), p(0.0, 0.5)).unwrap(), 0.5);
        let k = eval_abs(&lookup("constant").unwrap(), p(0.7, -0.1)).unwrap();
        assert!((k - 0.1f64.sqrt()).abs() < 1e-15);
        let b = lookup("blaschke_factor").unwrap();
        assert_eq!(eval_abs(&b, p(0.5, 0.3)).unwrap(), 0.0);
        assert!(eval_abs(&lookup("cayley").unwrap(), DiskPoint::ORIGIN).is_err());
    }

    #[test]
    fn codomain_defects_are_reported() {
        let bad = HoloFunction::new("too_big", Codomain::Disk, HoloKind::Monomial { c: Complex64::new(2.0, 0.0), d: 1 });
        assert!(matches!(eval_abs(&bad, p(0.9, 0.0)), Err(Error::CodomainViolation { .. })));
        assert!(!validate(&bad, 0.999).passes);
        let wrong = HoloFunction::new("wrong_decl", Codomain::RightHalfPlane, HoloKind::Identity);
        assert!(eval_re(&wrong, p(-0.5, 0.0)).is_err());
    }

    #[test]
    fn mobius_composition_stays_admissible() {
        let a = p(-0.4, 0.2);
        for f in catalog().into_iter().filter(|f| f.codomain.is_bounded_by_one()) {
            let g = f.post_mobius(a).unwrap();
            assert_eq!(g.codomain, Codomain::Disk);
            assert!(validate(&g, 0.99).passes, "{}", g.id);
        }
        assert!(lookup("cayley").unwrap().post_mobius(a).is_err());
    }

    #[test]
    fn rational_entries_round_trip_through_json() {
        let f = lookup("cayley_square").unwrap();
        let s = serde_json::to_string(&f).unwrap();
        let back: HoloFunction = serde_json::from_str(&s).unwrap();
        assert_eq!(back, f);
        let z = p(0.3, 0.4);
        assert!((back.eval(z) - (one() - z.value().powu(2)) / (one() + z.value().powu(2))).norm() < 1e-15);
    }
}
