//! Numeric criterion predicates: each takes a majorant field and returns
//! a verdict with its evidence series, deciding asymptotic statements by
//! the slope protocol of [`crate::trend`].

use super::{mean_profile, fmo_estimate, ScalarField};
use crate::error::{Error, Result};
use crate::geometry::unit_sphere_area;
use crate::quad;
use crate::trend::{self, Trend};
use serde::{Deserialize, Serialize};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CriterionId {
    Fmo,
    LoglogGrowth,
    DivergenceC,
    Theorem3Ls,
    Theorem4Divergence,
    CorollaryPower,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Verdict {
    Satisfied,
    Violated,
    Inconclusive,
}

/// A criterion verdict with its numeric evidence.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionReport {
    pub criterion_id: CriterionId,
    pub verdict: Verdict,
    /// `(scale, value)` pairs backing the verdict.
    pub evidence: Vec<(f64, f64)>,
    /// Always nonempty for inconclusive verdicts.
    pub extrapolation_note: String,
}

impl CriterionReport {
    fn new(
        criterion_id: CriterionId,
        verdict: Verdict,
        evidence: Vec<(f64, f64)>,
        extrapolation_note: String,
    ) -> Self {
        debug_assert!(
            verdict != Verdict::Inconclusive || !extrapolation_note.is_empty(),
            "inconclusive verdicts must carry a note"
        );
        Self {
            criterion_id,
            verdict,
            evidence,
            extrapolation_note,
        }
    }
}

fn verdict_from_boundedness(trend: Trend) -> Verdict {
    match trend {
        Trend::Bounded => Verdict::Satisfied,
        Trend::Unbounded => Verdict::Violated,
        Trend::Inconclusive => Verdict::Inconclusive,
    }
}

/// Finite-mean-oscillation criterion: the oscillation sequence over the
/// given scales must stay bounded.
pub fn criterion_fmo(q: &ScalarField, x0: &[f64], eps_list: &[f64]) -> Result<CriterionReport> {
    let est = fmo_estimate(q, x0, eps_list)?;
    let verdict = verdict_from_boundedness(est.trend);
    let note = match verdict {
        Verdict::Inconclusive => format!(
            "oscillation slope {:.3} lies between the bounded (0.05) and unbounded (0.5) thresholds",
            est.slope
        ),
        _ => format!("oscillation log-log slope {:.3}", est.slope),
    };
    Ok(CriterionReport::new(
        CriterionId::Fmo,
        verdict,
        est.series,
        note,
    ))
}

/// Iterated-log growth criterion: `q_{x0}(r) = O((ln(1/r))^{n−1})` as
/// `r → 0`, tested through the ratio sequence on the given radii.
pub fn criterion_loglog(q: &ScalarField, x0: &[f64], r_list: &[f64]) -> Result<CriterionReport> {
    if r_list.is_empty()
        || r_list.windows(2).any(|w| w[1] >= w[0])
        || r_list.iter().any(|&r| r <= 0.0 || r >= 1.0)
    {
        return Err(Error::EpsilonList);
    }
    let n = x0.len();
    let profile = mean_profile(q, x0);
    let mut series = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let ratio = crate::ext::div(profile(r), (1.0 / r).ln().powi(n as i32 - 1));
        series.push((r, ratio));
    }
    let rs: Vec<f64> = series.iter().map(|s| s.0).collect();
    let vals: Vec<f64> = series.iter().map(|s| s.1).collect();
    let (t, slope) = trend::boundedness(&rs, &vals);
    let verdict = verdict_from_boundedness(t);
    let note = format!("ratio q(r)/(ln(1/r))^{} log-log slope {:.3}", n - 1, slope);
    Ok(CriterionReport::new(
        CriterionId::LoglogGrowth,
        verdict,
        series,
        note,
    ))
}

/// Partial integrals `F(δ_k) = ∫_{δ_k}^{δ0} g(t) dt` on the geometric
/// grid `δ_k = δ0·2^{−k}`, computed incrementally, plus per-δ finiteness.
fn divergence_partials<G: Fn(f64) -> f64>(
    g: G,
    delta0: f64,
    count: usize,
) -> (Vec<f64>, Vec<f64>, bool) {
    let deltas = trend::geometric_grid(delta0, count);
    let mut partials = Vec::with_capacity(count);
    let mut acc: f64 = 0.0;
    let mut all_finite = true;
    let mut hi = delta0;
    for &lo in &deltas {
        if acc.is_finite() {
            let piece = quad::integrate_geometric(&g, lo, hi, quad::DEFAULT_REL_TOL, 2048);
            acc += piece.value;
        }
        all_finite &= acc.is_finite();
        partials.push(acc);
        hi = lo;
    }
    (deltas, partials, all_finite)
}

/// Divergence criterion (condition (c)):
/// `∫_0^{δ0} dt/(t·q_{x0}^{1/(n−1)}(t)) = ∞`, probed on a geometric grid.
/// Divergence is the satisfied verdict. Finiteness of every sampled tail
/// integral is computed and reported in the note, but does not gate the
/// verdict.
pub fn criterion_divergence(
    q: &ScalarField,
    x0: &[f64],
    delta0: f64,
    count: usize,
) -> Result<CriterionReport> {
    if delta0 <= 0.0 {
        return Err(Error::NonPositive {
            name: "delta0",
            value: delta0,
        });
    }
    let n = x0.len();
    let profile = mean_profile(q, x0);
    let g = move |t: f64| {
        let denom = crate::ext::mul(t, crate::ext::powf(profile(t), 1.0 / (n as f64 - 1.0)));
        crate::ext::div(1.0, denom)
    };
    let (deltas, partials, all_finite) = divergence_partials(g, delta0, count);
    let (t, _, mut note) = trend::divergence(&partials);
    note.push_str(if all_finite {
        "; every sampled tail integral is finite"
    } else {
        "; a sampled tail integral is already infinite"
    });
    let verdict = match t {
        Trend::Unbounded => Verdict::Satisfied,
        Trend::Bounded => Verdict::Violated,
        Trend::Inconclusive => Verdict::Inconclusive,
    };
    let evidence = deltas.into_iter().zip(partials).collect();
    Ok(CriterionReport::new(
        CriterionId::DivergenceC,
        verdict,
        evidence,
        note,
    ))
}

/// `L^s` integrability criterion: requires both `s ≥ n/(n−p)` and a finite
/// `‖Q‖_{L^s}` over the ball `B(center, radius)`. On success the evidence
/// is the explicit decay envelope of the capacity bound; on a divergent
/// norm it is the growing partial-norm series.
pub fn criterion_ls(
    q: &ScalarField,
    s: f64,
    p: f64,
    center: &[f64],
    radius: f64,
) -> Result<CriterionReport> {
    let n = center.len();
    if !(2..=8).contains(&n) {
        return Err(Error::DimensionRange(n, 2, 8));
    }
    let nf = n as f64;
    if !(p > nf - 1.0 && p < nf) {
        return Err(Error::ExponentRange {
            p,
            lo: nf - 1.0,
            hi: nf,
        });
    }
    if s <= 1.0 {
        return Err(Error::NonPositive { name: "s-1", value: s - 1.0 });
    }
    let threshold = nf / (nf - p);
    let threshold_ok = s >= threshold - 1e-12;

    // Partial integrals of Q^s over shrinking annuli tell whether the
    // norm is finite.
    let profile_s = {
        let fast = q.radial_profile_about(center);
        let q = q.clone();
        let center = center.to_vec();
        move |t: f64| -> f64 {
            match &fast {
                Some(profile) => crate::ext::powf(profile.eval(t), s),
                None => super::sphere_mean_transformed(&q, &center, t, |v| crate::ext::powf(v, s))
                    .map(|m| m.value)
                    .unwrap_or(f64::NAN),
            }
        }
    };
    let omega = unit_sphere_area(n);
    let g = move |t: f64| omega * crate::ext::mul(profile_s(t), t.powi(n as i32 - 1));
    // Reuse the divergence grid: partial integrals from radius·2^{-k} out
    // to the full radius.
    let (etas, partials, _) = divergence_partials(g, radius, 20);
    let (norm_trend, _, tail_note) = trend::divergence(&partials);
    let norm_finite = norm_trend == Trend::Bounded;
    let norm_est = partials.last().copied().unwrap_or(0.0).powf(1.0 / s);

    let satisfied = threshold_ok && norm_finite;
    let verdict = if satisfied {
        Verdict::Satisfied
    } else if !threshold_ok || norm_trend == Trend::Unbounded {
        Verdict::Violated
    } else {
        Verdict::Inconclusive
    };

    let evidence: Vec<(f64, f64)> = if satisfied {
        // Decay envelope of the capacity bound, on the geometric ε grid.
        trend::geometric_grid(radius, 20)
            .into_iter()
            .map(|eps| {
                let log_ratio = (radius / eps).ln();
                let env = if (s - threshold).abs() <= 1e-9 {
                    omega.powf(p / nf) * norm_est * log_ratio.powf(-p + p / nf)
                } else {
                    // Hölder with q' = s: the ring integral carries the
                    // ε0-power factor and the stronger (log)^{-p} decay.
                    let qq = s / (s - 1.0);
                    let coeff = (omega / (nf - p * qq) * radius.powf(nf - p * qq)).powf(1.0 / qq);
                    norm_est * coeff * log_ratio.powf(-p)
                };
                (eps, env)
            })
            .collect()
    } else {
        etas.into_iter().zip(partials).collect()
    };

    let note = format!(
        "threshold n/(n−p) = {threshold:.6}; s = {s}; threshold {}; ‖Q‖_s estimate {norm_est:.6e} ({}); {tail_note}",
        if threshold_ok { "met" } else { "not met" },
        if norm_finite { "finite" } else { "divergent" },
    );
    Ok(CriterionReport::new(
        CriterionId::Theorem3Ls,
        verdict,
        evidence,
        note,
    ))
}

/// Weighted divergence criterion:
/// `∫_0^{ε0} dr/(r^{(n−1)/(p−1)}·q_b^{1/(p−1)}(r)) = ∞`; same protocol as
/// [`criterion_divergence`] with the capacity-integral weight.
pub fn criterion_theorem4(
    q: &ScalarField,
    b: &[f64],
    p: f64,
    eps0: f64,
    count: usize,
) -> Result<CriterionReport> {
    let n = b.len();
    let nf = n as f64;
    if !(p > nf - 1.0 && p < nf) {
        return Err(Error::ExponentRange {
            p,
            lo: nf - 1.0,
            hi: nf,
        });
    }
    if eps0 <= 0.0 {
        return Err(Error::NonPositive {
            name: "eps0",
            value: eps0,
        });
    }
    let profile = mean_profile(q, b);
    let expo = (nf - 1.0) / (p - 1.0);
    let g = move |r: f64| {
        let denom = crate::ext::mul(r.powf(expo), crate::ext::powf(profile(r), 1.0 / (p - 1.0)));
        crate::ext::div(1.0, denom)
    };
    let (deltas, partials, all_finite) = divergence_partials(g, eps0, count);
    let (t, _, mut note) = trend::divergence(&partials);
    note.push_str(if all_finite {
        "; every sampled tail integral is finite"
    } else {
        "; a sampled tail integral is already infinite"
    });
    let verdict = match t {
        Trend::Unbounded => Verdict::Satisfied,
        Trend::Bounded => Verdict::Violated,
        Trend::Inconclusive => Verdict::Inconclusive,
    };
    Ok(CriterionReport::new(
        CriterionId::Theorem4Divergence,
        verdict,
        deltas.into_iter().zip(partials).collect(),
        note,
    ))
}

/// Power-majorant corollary: `q_b(t) ≤ c·t^{p−n}` for some `c > 0` near 0,
/// tested as boundedness of `q_b(t)·t^{n−p}` on a geometric grid. When
/// satisfied, the weighted divergence criterion holds automatically.
pub fn criterion_corollary(
    q: &ScalarField,
    b: &[f64],
    p: f64,
    eps0: f64,
    count: usize,
) -> Result<CriterionReport> {
    let n = b.len();
    let nf = n as f64;
    if !(p > nf - 1.0 && p < nf) {
        return Err(Error::ExponentRange {
            p,
            lo: nf - 1.0,
            hi: nf,
        });
    }
    let profile = mean_profile(q, b);
    let grid = trend::geometric_grid(eps0, count);
    let series: Vec<(f64, f64)> = grid
        .iter()
        .map(|&t| (t, crate::ext::mul(profile(t), t.powf(nf - p))))
        .collect();
    let ts: Vec<f64> = series.iter().map(|s| s.0).collect();
    let vals: Vec<f64> = series.iter().map(|s| s.1).collect();
    let (t, slope) = trend::boundedness(&ts, &vals);
    let verdict = verdict_from_boundedness(t);
    let note = format!(
        "q(t)·t^(n−p) log-log slope {slope:.3}; fitted majorant constant c ≈ {:.6e}",
        vals.iter().cloned().fold(0.0_f64, f64::max)
    );
    Ok(CriterionReport::new(
        CriterionId::CorollaryPower,
        verdict,
        series,
        note,
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::fields::RadialProfile;
    use approx::assert_relative_eq;

    fn origin2() -> Vec<f64> {
        vec![0.0, 0.0]
    }

    fn radial2(profile: RadialProfile) -> ScalarField {
        ScalarField::radial(origin2(), profile)
    }

    #[test]
    fn loglog_criterion_cases() {
        let radii: Vec<f64> = (2..=14).map(|k| 0.5_f64.powi(k)).collect();
        // Constant field: ratios tend to 0.
        let r = criterion_loglog(&ScalarField::constant(1.0), &origin2(), &radii).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        // Exact boundary profile (ln(1/r))^{n−1}: ratios identically 1.
        let q = radial2(RadialProfile::LogPow { scale: 1.0, k: 1.0 });
        let r = criterion_loglog(&q, &origin2(), &radii).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        for &(_, ratio) in &r.evidence {
            assert_relative_eq!(ratio, 1.0, max_relative = 1e-12);
        }
        // q(r) = 1/r: ratios diverge.
        let q = radial2(RadialProfile::Power { scale: 1.0, alpha: -1.0 });
        let r = criterion_loglog(&q, &origin2(), &radii).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        // Not decreasing: rejected.
        assert!(criterion_loglog(&ScalarField::constant(1.0), &origin2(), &[0.1, 0.2]).is_err());
    }

    #[test]
    fn divergence_criterion_cases() {
        let delta0 = 0.25;
        // Q ≡ 1: F(δ) = log(δ0/δ) diverges.
        let r = criterion_divergence(&ScalarField::constant(1.0), &origin2(), delta0, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        for &(d, f) in &r.evidence {
            assert_relative_eq!(f, (delta0 / d).ln(), max_relative = 1e-6);
        }
        // q(r) = (ln(1/r))^{2(n−1)}: substitution u = ln(1/r) gives ∫du/u²,
        // convergent.
        let q = radial2(RadialProfile::LogPow { scale: 1.0, k: 2.0 });
        let r = criterion_divergence(&q, &origin2(), delta0, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        // Q ≡ ∞: the integrand vanishes and F ≡ 0 converges.
        let r = criterion_divergence(&ScalarField::constant(f64::INFINITY), &origin2(), delta0, 20)
            .unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(r.evidence.iter().all(|&(_, f)| f == 0.0));
    }

    #[test]
    fn ls_criterion_cases() {
        // Threshold arithmetic: n = 2, p = 1.5 → s ≥ 4.
        let r = criterion_ls(&ScalarField::constant(1.0), 4.0, 1.5, &origin2(), 1.0).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        assert!(r.extrapolation_note.contains("threshold n/(n−p) = 4.000000"));
        // s below the threshold: violated even with a finite norm.
        let r = criterion_ls(&ScalarField::constant(1.0), 3.0, 1.5, &origin2(), 1.0).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        // Q = |x|^{-1}, s = 4, n = 2: ∫ r^{-4}·r dr diverges at 0.
        let q = radial2(RadialProfile::Power { scale: 1.0, alpha: -1.0 });
        let r = criterion_ls(&q, 4.0, 1.5, &origin2(), 1.0).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        assert!(r.extrapolation_note.contains("divergent"));
    }

    #[test]
    fn ls_norm_estimate_matches_closed_form() {
        // ‖1‖_{L^4(B(0,1))} = π^{1/4} in the plane.
        let r = criterion_ls(&ScalarField::constant(1.0), 4.0, 1.5, &origin2(), 1.0).unwrap();
        assert!(r
            .extrapolation_note
            .contains(&format!("{:.6e}", std::f64::consts::PI.powf(0.25))));
    }

    #[test]
    fn theorem4_criterion_cases() {
        let (p, eps0) = (1.5, 0.5);
        // q_b(t) = c·t^{p−n}: integrand is c^{-1/(p-1)}/t, divergent.
        let q = radial2(RadialProfile::Power { scale: 2.0, alpha: p - 2.0 });
        let r = criterion_theorem4(&q, &origin2(), p, eps0, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        // Q ≡ 1 with p < n: integrand r^{-(n-1)/(p-1)} has exponent > 1.
        let r = criterion_theorem4(&ScalarField::constant(1.0), &origin2(), p, eps0, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        // q_b(t) = t^{p−n−1}: integrand t^{-(p-2)/(p-1)} with exponent < 1;
        // convergent by the quadrature oracle. For n = 2, p = 1.5 the
        // integrand is exactly t and F(δ) = (ε0² − δ²)/2.
        let q = radial2(RadialProfile::Power { scale: 1.0, alpha: p - 3.0 });
        let r = criterion_theorem4(&q, &origin2(), p, eps0, 20).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
        for &(d, f) in &r.evidence {
            assert_relative_eq!(f, (eps0 * eps0 - d * d) / 2.0, max_relative = 1e-6);
        }
        // Out-of-range p rejected.
        assert!(criterion_theorem4(&ScalarField::constant(1.0), &origin2(), 2.5, eps0, 20).is_err());
    }

    #[test]
    fn corollary_criterion_cases() {
        let (p, eps0) = (1.5, 0.5);
        let q = radial2(RadialProfile::Power { scale: 3.0, alpha: p - 2.0 });
        let r = criterion_corollary(&q, &origin2(), p, eps0, 16).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        // Steeper than t^{p−n}: the power majorant fails.
        let q = radial2(RadialProfile::Power { scale: 1.0, alpha: p - 3.0 });
        let r = criterion_corollary(&q, &origin2(), p, eps0, 16).unwrap();
        assert_eq!(r.verdict, Verdict::Violated);
    }

    #[test]
    fn fmo_criterion_wraps_estimator() {
        let eps: Vec<f64> = (1..=6).map(|k| 10.0_f64.powi(-k)).collect();
        let r = criterion_fmo(&ScalarField::constant(3.0), &origin2(), &eps).unwrap();
        assert_eq!(r.verdict, Verdict::Satisfied);
        assert!(r.evidence.iter().all(|&(_, osc)| osc.abs() < 1e-12));
    }
}
