//! Slope tests that turn finite numeric sequences into asymptotic verdicts.
//!
//! A limit statement (boundedness as ε→0, divergence of an integral) can
//! only be probed on a finite grid. The protocol here: sample on a
//! geometric grid, fit a least-squares slope in log-log coordinates, and
//! commit to a verdict only outside an explicit gray zone. Everything in
//! the gray zone is reported as inconclusive rather than guessed.

/// Classification of a sequence trend.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Trend {
    Bounded,
    Unbounded,
    Inconclusive,
}

/// Least-squares slope of `ys` against `xs`.
pub fn ls_slope(xs: &[f64], ys: &[f64]) -> f64 {
    let n = xs.len() as f64;
    let mx = xs.iter().sum::<f64>() / n;
    let my = ys.iter().sum::<f64>() / n;
    let mut num = 0.0;
    let mut den = 0.0;
    for (x, y) in xs.iter().zip(ys) {
        num += (x - mx) * (y - my);
        den += (x - mx) * (x - mx);
    }
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Floor used before taking logs of nonnegative values.
const LOG_FLOOR: f64 = 1e-300;

/// Boundedness test for `values` sampled at scales `eps` (decreasing):
/// slope of `log(value)` against `log(1/eps)`.
///
/// Slope ≤ 0.05 → bounded, ≥ 0.5 → unbounded, otherwise inconclusive.
/// An all-(near-)zero sequence is bounded. Any `+∞` value is unbounded.
pub fn boundedness(eps: &[f64], values: &[f64]) -> (Trend, f64) {
    debug_assert_eq!(eps.len(), values.len());
    if values.iter().any(|v| v.is_infinite()) {
        return (Trend::Unbounded, f64::INFINITY);
    }
    let scale = values.iter().cloned().fold(0.0_f64, f64::max);
    if scale <= 1e-14 {
        return (Trend::Bounded, 0.0);
    }
    let xs: Vec<f64> = eps.iter().map(|e| (1.0 / e).ln()).collect();
    let ys: Vec<f64> = values.iter().map(|v| v.max(LOG_FLOOR).ln()).collect();
    let slope = ls_slope(&xs, &ys);
    let trend = if slope <= 0.05 {
        Trend::Bounded
    } else if slope >= 0.5 {
        Trend::Unbounded
    } else {
        Trend::Inconclusive
    };
    (trend, slope)
}

/// Divergence test for a monotone sequence of partial integrals
/// `F_k = F(δ_k)` on a geometric grid `δ_k = δ_0·2^{−k}`.
///
/// The increments `d_k = F_k − F_{k−1}` decide the verdict: `Σ d_k`
/// diverges iff the increments do not decay summably. The fitted quantity
/// is the slope of `log d_k` against `log k`: a slope above −0.5 means the
/// increments are not decaying (divergent); below −1.5 they decay faster
/// than `1/k` (convergent); the band in between — which contains genuinely
/// hard cases such as iterated-logarithm divergence — is inconclusive.
///
/// Returns the trend (`Unbounded` = divergent), the fitted increment
/// slope, and a human-readable extrapolation note.
pub fn divergence(partials: &[f64]) -> (Trend, f64, String) {
    if partials.iter().any(|v| v.is_infinite()) {
        return (
            Trend::Unbounded,
            f64::INFINITY,
            "a partial integral is already infinite".to_string(),
        );
    }
    let last = *partials.last().unwrap_or(&0.0);
    if last <= 1e-14 {
        // Identically zero integrand (e.g. Q ≡ ∞): the integral is 0 < ∞.
        return (
            Trend::Bounded,
            f64::NEG_INFINITY,
            "all partial integrals vanish; the integral converges to 0".to_string(),
        );
    }
    let mut xs = Vec::new();
    let mut ys = Vec::new();
    // Fit only the tail half of the increments: the early, pre-asymptotic
    // ones would otherwise bias the decay exponent toward zero.
    let start = (partials.len() / 2).max(1);
    for k in start..partials.len() {
        let d = (partials[k] - partials[k - 1]).max(0.0);
        xs.push((k as f64).ln());
        ys.push(d.max(LOG_FLOOR).ln());
    }
    if xs.len() < 3 {
        return (
            Trend::Inconclusive,
            f64::NAN,
            "too few grid points for an increment trend".to_string(),
        );
    }
    let slope = ls_slope(&xs, &ys);
    if slope >= -0.5 {
        let note = format!(
            "increments decay like k^({slope:.3}) (not summable); \
             partial integrals grew from {:.6e} to {:.6e}",
            partials[0], last
        );
        (Trend::Unbounded, slope, note)
    } else if slope <= -1.5 {
        // Richardson-style tail estimate assuming d_k ~ c·k^slope.
        let d_last = (partials[partials.len() - 1] - partials[partials.len() - 2]).max(0.0);
        let k_last = (partials.len() - 1) as f64;
        let tail = d_last * k_last / (-slope - 1.0);
        let note = format!(
            "increments decay like k^({slope:.3}); extrapolated limit ≈ {:.6e}",
            last + tail
        );
        (Trend::Bounded, slope, note)
    } else {
        let note = format!(
            "increment decay exponent {slope:.3} lies in the gray zone (−1.5, −0.5); \
             the grid cannot separate slow divergence from slow convergence"
        );
        (Trend::Inconclusive, slope, note)
    }
}

/// Geometric grid `eps_0·2^{−k}`, `k = 1..=count`.
pub fn geometric_grid(eps0: f64, count: usize) -> Vec<f64> {
    (1..=count).map(|k| eps0 * 0.5_f64.powi(k as i32)).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn slope_of_line() {
        let xs = [1.0, 2.0, 3.0, 4.0];
        let ys = [2.0, 4.0, 6.0, 8.0];
        assert!((ls_slope(&xs, &ys) - 2.0).abs() < 1e-12);
    }

    #[test]
    fn bounded_constant_sequence() {
        let eps = geometric_grid(0.1, 10);
        let vals = vec![3.0; 10];
        let (t, s) = boundedness(&eps, &vals);
        assert_eq!(t, Trend::Bounded);
        assert!(s.abs() < 1e-12);
    }

    #[test]
    fn unbounded_reciprocal_sequence() {
        let eps = geometric_grid(0.1, 10);
        let vals: Vec<f64> = eps.iter().map(|e| 1.0 / e).collect();
        let (t, s) = boundedness(&eps, &vals);
        assert_eq!(t, Trend::Unbounded);
        assert!((s - 1.0).abs() < 1e-6);
    }

    #[test]
    fn zero_sequence_is_bounded() {
        let eps = geometric_grid(0.1, 8);
        let vals = vec![0.0; 8];
        assert_eq!(boundedness(&eps, &vals).0, Trend::Bounded);
    }

    #[test]
    fn log_divergence_detected() {
        // F_k = k·log 2 (logarithmic divergence on the geometric grid).
        let partials: Vec<f64> = (1..=20).map(|k| k as f64 * 2.0_f64.ln()).collect();
        let (t, _, _) = divergence(&partials);
        assert_eq!(t, Trend::Unbounded);
    }

    #[test]
    fn quadratic_tail_convergence_detected() {
        // F_k = 1 − 1/(k+1): increments ~ 1/k².
        let partials: Vec<f64> = (1..=20).map(|k| 1.0 - 1.0 / (k as f64 + 1.0)).collect();
        let (t, _, note) = divergence(&partials);
        assert_eq!(t, Trend::Bounded);
        assert!(note.contains("extrapolated"));
    }

    #[test]
    fn harmonic_increments_are_inconclusive() {
        // F_k = H_k: increments 1/k sit exactly in the gray zone.
        let mut partials = Vec::new();
        let mut h = 0.0;
        for k in 1..=20 {
            h += 1.0 / k as f64;
            partials.push(h);
        }
        let (t, _, note) = divergence(&partials);
        assert_eq!(t, Trend::Inconclusive);
        assert!(!note.is_empty());
    }
}
