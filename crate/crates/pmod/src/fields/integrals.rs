//! Ring integrals, the admissibility integral `I(ε, ε0)`, the capacity
//! integral, and the finite-mean-oscillation estimator.
//!
//! Every n-dimensional ring integral here is reduced to one radial axis:
//! `∫_{r1<|x−x0|<r2} G(x) dm = ω_{n−1} ∫_{r1}^{r2} ḡ(t)·t^{n−1} dt`
//! with `ḡ` the spherical mean of `G`, so only 1-D adaptive quadrature
//! with geometric refinement toward the inner radius is ever needed.

use super::{sphere_mean, sphere_mean_transformed, PsiFamily, RadialProfile, ScalarField};
use crate::error::{Error, Result};
use crate::geometry::{unit_ball_volume, unit_sphere_area, SphericalRing};
use crate::quad::{self, Quadrature};
use crate::trend::{self, Trend};

/// The sphere-mean profile `q_{x0}(t)` of a field, as a callable. Radial
/// and constant fields resolve in closed form; everything else costs one
/// sphere quadrature per radius.
pub fn mean_profile<'a>(q: &'a ScalarField, x0: &'a [f64]) -> impl Fn(f64) -> f64 + 'a {
    let fast = q.radial_profile_about(x0);
    move |t: f64| match &fast {
        Some(profile) => profile.eval(t),
        None => sphere_mean(q, x0, t).map(|m| m.value).unwrap_or(f64::NAN),
    }
}

/// `∫_ring Q(x)·ψ^p(|x−x0|) dm(x)`, computed through the radial
/// factorization `ω_{n−1}·∫ q_{x0}(t)·ψ^p(t)·t^{n−1} dt`.
///
/// A non-convergent quadrature is reported through the `converged` flag,
/// never as a silent value.
pub fn ring_integral(
    q: &ScalarField,
    psi: &PsiFamily,
    ring: &SphericalRing,
    p: f64,
) -> Result<Quadrature> {
    if p <= 0.0 {
        return Err(Error::NonPositive { name: "p", value: p });
    }
    let n = ring.dim();
    if !(2..=8).contains(&n) {
        return Err(Error::DimensionRange(n, 2, 8));
    }
    let qprof = mean_profile(q, &ring.center);
    let omega = unit_sphere_area(n);
    let integrand = |t: f64| {
        let quality = qprof(t);
        let w = crate::ext::powf(psi.eval(t), p);
        crate::ext::mul(crate::ext::mul(quality, w), t.powi(n as i32 - 1))
    };
    let mut result = quad::integrate_geometric(
        integrand,
        ring.r1,
        ring.r2,
        quad::DEFAULT_REL_TOL,
        quad::DEFAULT_BUDGET,
    );
    result.value *= omega;
    result.error *= omega;
    Ok(result)
}

/// The admissibility integral `I(ε, ε0) = ∫_ε^{ε0} ψ(t) dt` together with
/// the positivity/finiteness checks it must satisfy.
#[derive(Debug, Clone, Copy)]
pub struct PsiIntegral {
    pub value: f64,
    /// `value > 0` (an identically-zero ψ fails the admissibility bound).
    pub positive: bool,
    pub finite: bool,
    pub converged: bool,
}

pub fn psi_integral(psi: &PsiFamily, eps: f64, eps0: f64) -> Result<PsiIntegral> {
    if !(eps > 0.0 && eps < eps0) {
        return Err(Error::IntervalOrder(eps, eps0));
    }
    let q = quad::integrate_geometric(
        |t| psi.eval(t),
        eps,
        eps0,
        quad::DEFAULT_REL_TOL,
        quad::DEFAULT_BUDGET,
    );
    Ok(PsiIntegral {
        value: q.value,
        positive: q.value > 0.0,
        finite: q.value.is_finite(),
        converged: q.converged,
    })
}

/// The capacity integral `Ĩ(x0, r1, r2) = ∫_{r1}^{r2} dr / (r^{(n−1)/(p−1)}
/// · q_{x0}^{1/(p−1)}(r))`. A vanishing `q` on a subinterval makes the
/// value `+∞`; an infinite `q` contributes nothing (`a/∞ = 0`).
pub fn capacity_integral(
    q: &ScalarField,
    x0: &[f64],
    r1: f64,
    r2: f64,
    p: f64,
) -> Result<Quadrature> {
    if !(r1 > 0.0 && r1 < r2) {
        return Err(Error::InvalidRadii { r1, r2 });
    }
    let n = x0.len();
    if !(2..=8).contains(&n) {
        return Err(Error::DimensionRange(n, 2, 8));
    }
    if p <= 1.0 {
        return Err(Error::ExponentRange {
            p,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let qprof = mean_profile(q, x0);
    let expo = (n as f64 - 1.0) / (p - 1.0);
    let integrand = move |r: f64| {
        let denom = crate::ext::mul(r.powf(expo), crate::ext::powf(qprof(r), 1.0 / (p - 1.0)));
        crate::ext::div(1.0, denom)
    };
    Ok(quad::integrate_geometric(
        integrand,
        r1,
        r2,
        quad::DEFAULT_REL_TOL,
        quad::DEFAULT_BUDGET,
    ))
}

/// The tail integral `F(d, δ0) = ∫_d^{δ0} dt/(t·q_{x0}^{1/(n−1)}(t))`
/// that feeds the divergence-case distortion bound.
pub fn capacity_like_tail(q: &ScalarField, x0: &[f64], d: f64, delta0: f64) -> Result<f64> {
    if !(d > 0.0 && d < delta0) {
        return Err(Error::IntervalOrder(d, delta0));
    }
    let n = x0.len();
    let profile = mean_profile(q, x0);
    let g = move |t: f64| {
        let denom = crate::ext::mul(t, crate::ext::powf(profile(t), 1.0 / (n as f64 - 1.0)));
        crate::ext::div(1.0, denom)
    };
    Ok(quad::integrate_geometric(g, d, delta0, quad::DEFAULT_REL_TOL, quad::DEFAULT_BUDGET).value)
}

/// Mean of `Q` over the ball `B(x0, eps)`.
pub fn ball_mean(q: &ScalarField, x0: &[f64], eps: f64) -> Result<f64> {
    let n = x0.len();
    let qprof = mean_profile(q, x0);
    let shell = quad::integrate_geometric(
        |t| crate::ext::mul(qprof(t), t.powi(n as i32 - 1)),
        0.0,
        eps,
        quad::DEFAULT_REL_TOL,
        quad::DEFAULT_BUDGET,
    );
    let omega = unit_sphere_area(n);
    let vol = unit_ball_volume(n) * eps.powi(n as i32);
    Ok(omega * shell.value / vol)
}

/// One scale of the mean-oscillation estimator:
/// `(1/|B(x0,ε)|) ∫_{B(x0,ε)} |Q − mean_{B(x0,ε)} Q| dm`.
fn oscillation_at(q: &ScalarField, x0: &[f64], eps: f64) -> Result<f64> {
    let n = x0.len();
    let mean = ball_mean(q, x0, eps)?;
    if mean.is_infinite() {
        return Ok(f64::INFINITY);
    }
    let fast = q.radial_profile_about(x0);
    let shell_dev = |t: f64| -> f64 {
        match &fast {
            Some(profile) => (profile.eval(t) - mean).abs(),
            None => sphere_mean_transformed(q, x0, t, |v| (v - mean).abs())
                .map(|m| m.value)
                .unwrap_or(f64::NAN),
        }
    };
    let shell = quad::integrate_geometric(
        |t| crate::ext::mul(shell_dev(t), t.powi(n as i32 - 1)),
        0.0,
        eps,
        quad::DEFAULT_REL_TOL,
        quad::DEFAULT_BUDGET,
    );
    let omega = unit_sphere_area(n);
    let vol = unit_ball_volume(n) * eps.powi(n as i32);
    Ok(omega * shell.value / vol)
}

/// Result of the finite-mean-oscillation probe over a scale sequence.
#[derive(Debug, Clone)]
pub struct FmoEstimate {
    /// `(ε, oscillation)` pairs, same order as the input scales.
    pub series: Vec<(f64, f64)>,
    pub trend: Trend,
    pub slope: f64,
}

/// Mean oscillation of `Q` at `x0` over a strictly decreasing scale list,
/// with a boundedness verdict from the log-log slope protocol.
pub fn fmo_estimate(q: &ScalarField, x0: &[f64], eps_list: &[f64]) -> Result<FmoEstimate> {
    if eps_list.is_empty()
        || eps_list.windows(2).any(|w| w[1] >= w[0])
        || eps_list.iter().any(|&e| e <= 0.0)
    {
        return Err(Error::EpsilonList);
    }
    let mut series = Vec::with_capacity(eps_list.len());
    for &eps in eps_list {
        series.push((eps, oscillation_at(q, x0, eps)?));
    }
    let eps: Vec<f64> = series.iter().map(|s| s.0).collect();
    let vals: Vec<f64> = series.iter().map(|s| s.1).collect();
    let (trend, slope) = trend::boundedness(&eps, &vals);
    Ok(FmoEstimate {
        series,
        trend,
        slope,
    })
}

/// Convenience: the profile of a field as a `RadialProfile` table sampled
/// on a log grid, for feeding sphere means into ψ families.
pub fn tabulate_mean_profile(
    q: &ScalarField,
    x0: &[f64],
    r1: f64,
    r2: f64,
    count: usize,
) -> Result<RadialProfile> {
    if !(r1 > 0.0 && r1 < r2) {
        return Err(Error::InvalidRadii { r1, r2 });
    }
    let profile = mean_profile(q, x0);
    let mut rs = Vec::with_capacity(count);
    let mut vs = Vec::with_capacity(count);
    for i in 0..count {
        let f = i as f64 / (count - 1) as f64;
        let r = r1 * (r2 / r1).powf(f);
        rs.push(r);
        vs.push(profile(r));
    }
    Ok(RadialProfile::Table { rs, vs })
}
