//! Adaptive 1-D quadrature on finite intervals.
//!
//! A 7-point Gauss / 15-point Kronrod pair drives interval bisection with
//! a worst-first queue. Integrands may return `+∞`; any infinite sample
//! makes the whole integral `+∞` (integrands here are nonnegative).
//! Endpoint singularities are handled by geometric pre-subdivision toward
//! the left endpoint, since that is where the radial integrands of this
//! crate blow up.

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: f64,
    /// Absolute error estimate (sum of per-panel Kronrod−Gauss gaps).
    pub error: f64,
    /// False when the panel budget ran out before the tolerance was met.
    pub converged: bool,
    pub panels: usize,
}

impl Quadrature {
    fn infinite() -> Self {
        Quadrature {
            value: f64::INFINITY,
            error: 0.0,
            converged: true,
            panels: 0,
        }
    }
}

/// Default relative tolerance for the radial integrals.
pub const DEFAULT_REL_TOL: f64 = 1e-6;
/// Default panel budget (2^12).
pub const DEFAULT_BUDGET: usize = 4096;

// 7-point Gauss / 15-point Kronrod abscissae and weights on [-1, 1]
// (QUADPACK dqk15 constants). Nodes are interior, so endpoints are never
// sampled.
const XGK: [f64; 8] = [
    0.991455371120813,
    0.949107912342759,
    0.864864423359769,
    0.741531185599394,
    0.586087235467691,
    0.405845151377397,
    0.207784955007898,
    0.0,
];
const WGK: [f64; 8] = [
    0.022935322010529,
    0.063092092629979,
    0.104790010322250,
    0.140653259715525,
    0.169004726639267,
    0.190350578064785,
    0.204432940075298,
    0.209482141084728,
];
const WG: [f64; 4] = [
    0.129484966168870,
    0.279705391489277,
    0.381830050505119,
    0.417959183673469,
];

enum Panel {
    Finite { gauss: f64, kronrod: f64 },
    Infinite,
}

fn gk15<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64) -> Panel {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    if fc.is_infinite() {
        return Panel::Infinite;
    }
    let mut kronrod = WGK[7] * fc;
    let mut gauss = WG[3] * fc;
    for j in 0..7 {
        let x = h * XGK[j];
        let f1 = f(c - x);
        let f2 = f(c + x);
        if f1.is_infinite() || f2.is_infinite() {
            return Panel::Infinite;
        }
        kronrod += WGK[j] * (f1 + f2);
        if j % 2 == 1 {
            gauss += WG[j / 2] * (f1 + f2);
        }
    }
    Panel::Finite {
        gauss: gauss * h,
        kronrod: kronrod * h,
    }
}

struct Interval {
    a: f64,
    b: f64,
    value: f64,
    error: f64,
}

/// Adaptively integrate `f` over `[a, b]`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, rel_tol: f64, budget: usize) -> Quadrature {
    integrate_with_seeds(&f, &[(a, b)], rel_tol, budget)
}

/// Adaptively integrate with geometric pre-subdivision toward `a`,
/// for integrands that are steep or singular near the left endpoint.
pub fn integrate_geometric<F: Fn(f64) -> f64>(
    f: F,
    a: f64,
    b: f64,
    rel_tol: f64,
    budget: usize,
) -> Quadrature {
    let mut seeds = Vec::new();
    let len = b - a;
    // Breakpoints a + len·2^{-j}; stop once panels shrink below 2^-24·len.
    let mut hi = b;
    let mut frac = 0.5;
    for _ in 0..24 {
        let lo = a + len * frac;
        seeds.push((lo, hi));
        hi = lo;
        frac *= 0.5;
    }
    seeds.push((a, hi));
    seeds.reverse();
    integrate_with_seeds(&f, &seeds, rel_tol, budget)
}

fn integrate_with_seeds<F: Fn(f64) -> f64>(
    f: &F,
    seeds: &[(f64, f64)],
    rel_tol: f64,
    budget: usize,
) -> Quadrature {
    let mut intervals: Vec<Interval> = Vec::new();
    let mut panels = 0usize;
    for &(a, b) in seeds {
        if b <= a {
            continue;
        }
        match gk15(f, a, b) {
            Panel::Infinite => return Quadrature::infinite(),
            Panel::Finite { gauss, kronrod } => {
                intervals.push(Interval {
                    a,
                    b,
                    value: kronrod,
                    error: (kronrod - gauss).abs(),
                });
                panels += 1;
            }
        }
    }

    loop {
        let total: f64 = intervals.iter().map(|i| i.value).sum();
        let err: f64 = intervals.iter().map(|i| i.error).sum();
        let tol = rel_tol * total.abs().max(f64::MIN_POSITIVE);
        if err <= tol || err <= 1e-300 {
            return Quadrature {
                value: total,
                error: err,
                converged: true,
                panels,
            };
        }
        if panels >= budget {
            return Quadrature {
                value: total,
                error: err,
                converged: false,
                panels,
            };
        }
        // Bisect the worst interval.
        let worst = intervals
            .iter()
            .enumerate()
            .max_by(|x, y| x.1.error.total_cmp(&y.1.error))
            .map(|(i, _)| i)
            .expect("nonempty interval set");
        let Interval { a, b, .. } = intervals.swap_remove(worst);
        let mid = 0.5 * (a + b);
        for (lo, hi) in [(a, mid), (mid, b)] {
            match gk15(f, lo, hi) {
                Panel::Infinite => return Quadrature::infinite(),
                Panel::Finite { gauss, kronrod } => {
                    intervals.push(Interval {
                        a: lo,
                        b: hi,
                        value: kronrod,
                        error: (kronrod - gauss).abs(),
                    });
                    panels += 1;
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| x * x * x - 2.0 * x + 1.0, -1.0, 3.0, 1e-10, 64);
        // ∫ x³−2x+1 dx = x⁴/4 − x² + x on [−1,3] = (81/4−9+3) − (1/4−1−1)
        assert_relative_eq!(q.value, 16.0, max_relative = 1e-13);
        assert!(q.converged);
    }

    #[test]
    fn log_singularity_left_endpoint() {
        // ∫_0^1 ln(1/x) dx = 1 (integrable singularity at 0).
        let q = integrate_geometric(|x| (1.0 / x).ln(), 0.0, 1.0, 1e-9, 4096);
        assert!(q.converged);
        assert_relative_eq!(q.value, 1.0, max_relative = 1e-8);
    }

    #[test]
    fn inverse_sqrt_singularity() {
        // ∫_0^1 x^{-1/2} dx = 2.
        let q = integrate_geometric(|x| x.powf(-0.5), 0.0, 1.0, 1e-8, 4096);
        assert!(q.converged);
        assert_relative_eq!(q.value, 2.0, max_relative = 1e-6);
    }

    #[test]
    fn infinite_sample_propagates() {
        let q = integrate(|_| f64::INFINITY, 0.0, 1.0, 1e-6, 64);
        assert!(q.value.is_infinite());
    }

    #[test]
    fn budget_exhaustion_is_flagged() {
        // Highly oscillatory with a tiny budget.
        let q = integrate(|x| (500.0 * x).sin().abs(), 0.0, 1.0, 1e-12, 8);
        assert!(!q.converged);
    }

    #[test]
    fn additivity_over_adjacent_intervals() {
        let f = |x: f64| (x * x + 1.0).ln();
        let whole = integrate(f, 0.2, 2.9, 1e-12, 1024).value;
        let left = integrate(f, 0.2, 1.3, 1e-12, 1024).value;
        let right = integrate(f, 1.3, 2.9, 1e-12, 1024).value;
        assert_relative_eq!(whole, left + right, max_relative = 1e-10);
    }
}
