//! Points of the extended space `R^n ∪ {∞}`, the chordal metric, spherical
//! rings, concentric condensers, and elementary measure formulas.

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A point of `R^n` or the point at infinity.
///
/// The infinity flag is a tag, not a coordinate convention: every metric
/// operation branches on it explicitly, so no overflow or NaN path exists.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ExtendedPoint {
    coords: Vec<f64>,
    at_infinity: bool,
}

impl ExtendedPoint {
    /// A finite point. Requires `n >= 2` coordinates.
    pub fn finite(coords: Vec<f64>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::DimensionRange(coords.len(), 2, usize::MAX));
        }
        Ok(Self {
            coords,
            at_infinity: false,
        })
    }

    /// The point at infinity of the `n`-dimensional extended space.
    pub fn infinity(n: usize) -> Result<Self> {
        if n < 2 {
            return Err(Error::DimensionRange(n, 2, usize::MAX));
        }
        Ok(Self {
            coords: vec![0.0; n],
            at_infinity: true,
        })
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }

    pub fn is_infinite(&self) -> bool {
        self.at_infinity
    }

    /// Coordinates of a finite point; `None` at infinity.
    pub fn coords(&self) -> Option<&[f64]> {
        if self.at_infinity {
            None
        } else {
            Some(&self.coords)
        }
    }

    fn norm(&self) -> f64 {
        self.coords.iter().map(|c| c * c).sum::<f64>().sqrt()
    }
}

/// Chordal distance `h(x, y)` on the extended space; always in `[0, 1]`.
///
/// `h(x, y) = |x−y| / (√(1+|x|²)·√(1+|y|²))` for finite points,
/// `h(x, ∞) = 1/√(1+|x|²)`, and `h(∞, ∞) = 0`.
pub fn chordal_distance(x: &ExtendedPoint, y: &ExtendedPoint) -> Result<f64> {
    if x.dim() != y.dim() {
        return Err(Error::DimensionMismatch(x.dim(), y.dim()));
    }
    let d = match (x.at_infinity, y.at_infinity) {
        (true, true) => 0.0,
        (true, false) => 1.0 / (1.0 + y.norm().powi(2)).sqrt(),
        (false, true) => 1.0 / (1.0 + x.norm().powi(2)).sqrt(),
        (false, false) => {
            let diff: f64 = x
                .coords
                .iter()
                .zip(&y.coords)
                .map(|(a, b)| (a - b) * (a - b))
                .sum::<f64>()
                .sqrt();
            diff / ((1.0 + x.norm().powi(2)).sqrt() * (1.0 + y.norm().powi(2)).sqrt())
        }
    };
    Ok(d.min(1.0))
}

/// Chordal diameter of a finite point set: the max pairwise chordal distance.
pub fn chordal_diameter(points: &[ExtendedPoint]) -> Result<f64> {
    if points.is_empty() {
        return Err(Error::EmptyPointList);
    }
    let mut best = 0.0_f64;
    for (i, x) in points.iter().enumerate() {
        for y in &points[i + 1..] {
            best = best.max(chordal_distance(x, y)?);
        }
    }
    Ok(best)
}

/// Volume `Ω_n` of the unit ball in `R^n`, by the two-step recursion
/// `Ω_n = 2π Ω_{n−2} / n` with `Ω_0 = 1`, `Ω_1 = 2`.
pub fn unit_ball_volume(n: usize) -> f64 {
    match n {
        0 => 1.0,
        1 => 2.0,
        _ => 2.0 * std::f64::consts::PI * unit_ball_volume(n - 2) / n as f64,
    }
}

/// Area `ω_{n−1}` of the unit sphere in `R^n`: `ω_{n−1} = n·Ω_n`.
pub fn unit_sphere_area(n: usize) -> f64 {
    n as f64 * unit_ball_volume(n)
}

/// Volume of the ball of radius `r` in `R^n`.
pub fn ball_volume(n: usize, r: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::DimensionRange(n, 1, usize::MAX));
    }
    if r < 0.0 {
        return Err(Error::NonPositive {
            name: "r",
            value: r,
        });
    }
    Ok(unit_ball_volume(n) * r.powi(n as i32))
}

/// Surface area of the sphere of radius `r` in `R^n`.
pub fn sphere_area(n: usize, r: f64) -> Result<f64> {
    if n < 1 {
        return Err(Error::DimensionRange(n, 1, usize::MAX));
    }
    if r < 0.0 {
        return Err(Error::NonPositive {
            name: "r",
            value: r,
        });
    }
    Ok(unit_sphere_area(n) * r.powi(n as i32 - 1))
}

/// Spherical ring `A(r1, r2, x0) = { r1 < |x − x0| < r2 }`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SphericalRing {
    pub center: Vec<f64>,
    pub r1: f64,
    pub r2: f64,
}

impl SphericalRing {
    pub fn new(center: Vec<f64>, r1: f64, r2: f64) -> Result<Self> {
        if !(r1 > 0.0 && r1 < r2 && r2.is_finite()) {
            return Err(Error::InvalidRadii { r1, r2 });
        }
        Ok(Self { center, r1, r2 })
    }

    pub fn dim(&self) -> usize {
        self.center.len()
    }
}

/// Concentric ball condenser `(B(x0, outer), closure of B(x0, inner))`.
///
/// `outer = ∞` means the whole space. Only concentric ball pairs are
/// supported; they are the shapes on which the capacity bounds here are
/// evaluable in closed form.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Condenser {
    pub center: Vec<f64>,
    pub inner: f64,
    pub outer: f64,
}

impl Condenser {
    pub fn new(center: Vec<f64>, inner: f64, outer: f64) -> Result<Self> {
        if !(inner > 0.0 && inner < outer) {
            return Err(Error::InvalidRadii {
                r1: inner,
                r2: outer,
            });
        }
        Ok(Self {
            center,
            inner,
            outer,
        })
    }

    /// Lebesgue measure of the compact plate.
    pub fn plate_volume(&self) -> f64 {
        unit_ball_volume(self.center.len()) * self.inner.powi(self.center.len() as i32)
    }
}

/// Dimension `n` and modulus exponent `p` with per-operation range checks.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct DimensionParams {
    pub n: usize,
    pub p: f64,
}

impl DimensionParams {
    pub fn new(n: usize, p: f64) -> Result<Self> {
        if !(2..=8).contains(&n) {
            return Err(Error::DimensionRange(n, 2, 8));
        }
        if !p.is_finite() || p <= 1.0 {
            return Err(Error::ExponentRange {
                p,
                lo: 1.0,
                hi: f64::INFINITY,
            });
        }
        Ok(Self { n, p })
    }

    /// Enforce the core range `n−1 < p < n`.
    pub fn require_core_range(&self) -> Result<()> {
        let lo = self.n as f64 - 1.0;
        let hi = self.n as f64;
        if self.p > lo && self.p < hi {
            Ok(())
        } else {
            Err(Error::ExponentRange { p: self.p, lo, hi })
        }
    }

    /// Enforce the relaxed range `1 < p ≤ n`.
    pub fn require_relaxed_range(&self) -> Result<()> {
        if self.p > 1.0 && self.p <= self.n as f64 {
            Ok(())
        } else {
            Err(Error::ExponentRange {
                p: self.p,
                lo: 1.0,
                hi: self.n as f64,
            })
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;
    use proptest::prelude::*;

    fn pt(coords: &[f64]) -> ExtendedPoint {
        ExtendedPoint::finite(coords.to_vec()).unwrap()
    }

    #[test]
    fn chordal_origin_to_infinity_is_one() {
        let o = pt(&[0.0, 0.0]);
        let inf = ExtendedPoint::infinity(2).unwrap();
        assert_eq!(chordal_distance(&o, &inf).unwrap(), 1.0);
    }

    #[test]
    fn chordal_identical_points_is_zero() {
        let x = pt(&[0.3, -1.2, 4.0]);
        assert_eq!(chordal_distance(&x, &x).unwrap(), 0.0);
        let inf = ExtendedPoint::infinity(3).unwrap();
        assert_eq!(chordal_distance(&inf, &inf).unwrap(), 0.0);
    }

    #[test]
    fn chordal_unit_point_to_infinity() {
        let x = pt(&[1.0, 0.0]);
        let inf = ExtendedPoint::infinity(2).unwrap();
        assert_relative_eq!(
            chordal_distance(&x, &inf).unwrap(),
            std::f64::consts::FRAC_1_SQRT_2,
            max_relative = 1e-15
        );
    }

    #[test]
    fn chordal_dimension_mismatch() {
        let x = pt(&[1.0, 0.0]);
        let y = pt(&[1.0, 0.0, 0.0]);
        assert!(chordal_distance(&x, &y).is_err());
    }

    #[test]
    fn diameter_examples() {
        let x = pt(&[2.0, 1.0]);
        assert_eq!(chordal_diameter(&[x.clone()]).unwrap(), 0.0);
        let o = pt(&[0.0, 0.0]);
        let inf = ExtendedPoint::infinity(2).unwrap();
        assert_eq!(chordal_diameter(&[o, inf]).unwrap(), 1.0);
        // h((1,0), (−1,0)) = 2/(√2·√2) = 1.
        let a = pt(&[1.0, 0.0]);
        let b = pt(&[-1.0, 0.0]);
        assert_relative_eq!(
            chordal_diameter(&[a, b]).unwrap(),
            1.0,
            max_relative = 1e-15
        );
        assert!(chordal_diameter(&[]).is_err());
    }

    #[test]
    fn diameter_monotone_under_inclusion() {
        let pts: Vec<_> = (0..6)
            .map(|i| pt(&[i as f64 * 0.7 - 2.0, (i * i) as f64 * 0.1]))
            .collect();
        let d_small = chordal_diameter(&pts[..3]).unwrap();
        let d_big = chordal_diameter(&pts).unwrap();
        assert!(d_small <= d_big);
    }

    #[test]
    fn measure_constants() {
        assert_relative_eq!(
            ball_volume(2, 1.0).unwrap(),
            std::f64::consts::PI,
            max_relative = 1e-15
        );
        assert_relative_eq!(
            sphere_area(3, 1.0).unwrap(),
            4.0 * std::f64::consts::PI,
            max_relative = 1e-15
        );
        assert!(ball_volume(0, 1.0).is_err());
    }

    // Monte Carlo oracle for Ω_4 = π²/2: fraction of points of [−1,1]^4
    // that land in the unit ball, times 2^4.
    #[test]
    fn ball_volume_dim4_against_monte_carlo() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(42);
        let trials = 400_000;
        let mut hits = 0u64;
        for _ in 0..trials {
            let mut s = 0.0;
            for _ in 0..4 {
                let c: f64 = rng.gen_range(-1.0..1.0);
                s += c * c;
            }
            if s <= 1.0 {
                hits += 1;
            }
        }
        let mc = 16.0 * hits as f64 / trials as f64;
        let exact = ball_volume(4, 1.0).unwrap();
        assert_relative_eq!(exact, std::f64::consts::PI.powi(2) / 2.0, max_relative = 1e-14);
        assert_relative_eq!(exact, mc, max_relative = 0.02);
    }

    #[test]
    fn sphere_area_is_volume_derivative() {
        let h = 1e-6;
        for n in 2..=6 {
            for &r in &[0.5, 1.0, 2.7] {
                let dv = (ball_volume(n, r + h).unwrap() - ball_volume(n, r - h).unwrap())
                    / (2.0 * h);
                let a = sphere_area(n, r).unwrap();
                assert_relative_eq!(dv, a, max_relative = 1e-6);
            }
        }
    }

    #[test]
    fn ring_and_condenser_validation() {
        assert!(SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0).is_ok());
        assert!(SphericalRing::new(vec![0.0, 0.0], 2.0, 1.0).is_err());
        assert!(SphericalRing::new(vec![0.0, 0.0], 0.0, 1.0).is_err());
        assert!(Condenser::new(vec![0.0, 0.0], 1.0, f64::INFINITY).is_ok());
        assert!(Condenser::new(vec![0.0, 0.0], 1.0, 0.5).is_err());
    }

    #[test]
    fn dimension_params_ranges() {
        let d = DimensionParams::new(2, 1.5).unwrap();
        assert!(d.require_core_range().is_ok());
        assert!(d.require_relaxed_range().is_ok());
        let d = DimensionParams::new(3, 1.5).unwrap();
        assert!(d.require_core_range().is_err());
        assert!(d.require_relaxed_range().is_ok());
        assert!(DimensionParams::new(9, 2.0).is_err());
        assert!(DimensionParams::new(2, 1.0).is_err());
    }

    proptest! {
        #[test]
        fn chordal_symmetry_and_triangle(
            a in proptest::collection::vec(-50.0f64..50.0, 3),
            b in proptest::collection::vec(-50.0f64..50.0, 3),
            c in proptest::collection::vec(-50.0f64..50.0, 3),
            inf_mask in 0u8..8,
        ) {
            let mk = |coords: Vec<f64>, inf: bool| if inf {
                ExtendedPoint::infinity(3).unwrap()
            } else {
                ExtendedPoint::finite(coords).unwrap()
            };
            let x = mk(a, inf_mask & 1 != 0);
            let y = mk(b, inf_mask & 2 != 0);
            let z = mk(c, inf_mask & 4 != 0);
            let xy = chordal_distance(&x, &y).unwrap();
            let yx = chordal_distance(&y, &x).unwrap();
            let xz = chordal_distance(&x, &z).unwrap();
            let zy = chordal_distance(&z, &y).unwrap();
            prop_assert!((xy - yx).abs() <= 1e-12);
            prop_assert!(xy <= 1.0 + 1e-12);
            prop_assert!(xy <= xz + zy + 1e-12);
        }
    }
}
