//! Closed-form bound evaluators: capacity lower bounds, the ring modulus
//! lower bound, capacity upper bounds from integral criteria, distortion
//! bounds, and the exact radial ring-modulus formula used as an oracle.
//!
//! Two constants from the literature, `c1` and `b_{n,p}`, have no stated
//! values; they enter as configuration parameters (default 1), and every
//! check involving them is a shape or monotonicity check, never an
//! absolute comparison.

use crate::error::{Error, Result};
use crate::ext;
use crate::geometry::{unit_ball_volume, unit_sphere_area};

/// Capacity lower bound from the plate volume:
/// `n·Ω_n^{p/n}·((n−p)/(p−1))^{p−1}·m_C^{(n−p)/n}`, for `1 < p < n`.
pub fn cap_lower_volume(m_c: f64, n: usize, p: f64) -> Result<f64> {
    if !(p > 1.0 && p < n as f64) {
        return Err(Error::ExponentRange {
            p,
            lo: 1.0,
            hi: n as f64,
        });
    }
    if m_c < 0.0 {
        return Err(Error::NonPositive {
            name: "m_C",
            value: m_c,
        });
    }
    let nf = n as f64;
    let omega_n = unit_ball_volume(n);
    Ok(nf * omega_n.powf(p / nf) * ((nf - p) / (p - 1.0)).powf(p - 1.0) * m_c.powf((nf - p) / nf))
}

/// Capacity lower bound from the plate diameter and hull volume:
/// `(c1·d_C^p / m_A^{1−n+p})^{1/(n−1)}`, for `p > n−1`.
pub fn cap_lower_diameter(d_c: f64, m_a: f64, n: usize, p: f64, c1: f64) -> Result<f64> {
    if p <= n as f64 - 1.0 {
        return Err(Error::ExponentRange {
            p,
            lo: n as f64 - 1.0,
            hi: f64::INFINITY,
        });
    }
    for (name, value) in [("d_C", d_c), ("m_A", m_a), ("c1", c1)] {
        if value < 0.0 || (name != "d_C" && value == 0.0) {
            return Err(Error::NonPositive { name, value });
        }
    }
    let nf = n as f64;
    Ok((c1 * d_c.powf(p) / m_a.powf(1.0 - nf + p)).powf(1.0 / (nf - 1.0)))
}

/// Modulus lower bound for a family meeting both plates on every sphere
/// of a ring: `(2^n·b_{n,p}/(n−p))·(b^{n−p} − a^{n−p})`, for `n−1 < p < n`.
pub fn modulus_lower_ring(a: f64, b: f64, n: usize, p: f64, b_np: f64) -> Result<f64> {
    if !(a >= 0.0 && a < b) {
        return Err(Error::InvalidRadii { r1: a, r2: b });
    }
    let nf = n as f64;
    if !(p > nf - 1.0 && p < nf) {
        return Err(Error::ExponentRange {
            p,
            lo: nf - 1.0,
            hi: nf,
        });
    }
    if b_np <= 0.0 {
        return Err(Error::NonPositive {
            name: "b_np",
            value: b_np,
        });
    }
    Ok(2.0_f64.powi(n as i32) * b_np / (nf - p) * (b.powf(nf - p) - a.powf(nf - p)))
}

/// Capacity upper bound `Φ/I^p` from the integral criterion.
pub fn cap_upper_criterion(phi: f64, i: f64, p: f64) -> Result<f64> {
    if i <= 0.0 {
        return Err(Error::NonPositive { name: "I", value: i });
    }
    Ok(ext::div(phi, ext::powf(i, p)))
}

/// Capacity upper bound `ω_{n−1}/Ĩ^{p−1}` from the capacity integral.
/// `Ĩ = 0` gives the distinguished infinite bound; `Ĩ = ∞` gives 0.
pub fn cap_upper_capacity_integral(tilde_i: f64, n: usize, p: f64) -> Result<f64> {
    if tilde_i < 0.0 {
        return Err(Error::NonPositive {
            name: "tilde_I",
            value: tilde_i,
        });
    }
    Ok(ext::div(unit_sphere_area(n), ext::powf(tilde_i, p - 1.0)))
}

/// Distortion bound for mappings with `Φ = K·I^q`, `q ≤ p`:
/// `(1/c1)^{1/p}·Ω_n^{(1−n+p)/p}·r^{(1−n+p)n/p}·K^{(n−1)/p}·I^{(q−p)(n−1)/p}`.
pub fn distortion_bound_general(
    r_image: f64,
    k: f64,
    i: f64,
    n: usize,
    p: f64,
    q: f64,
    c1: f64,
) -> Result<f64> {
    if q > p {
        return Err(Error::Invalid(format!("need q <= p, got q={q}, p={p}")));
    }
    if r_image <= 0.0 {
        return Err(Error::NonPositive {
            name: "r_image",
            value: r_image,
        });
    }
    if i <= 0.0 {
        return Err(Error::NonPositive { name: "I", value: i });
    }
    let nf = n as f64;
    let omega_n = unit_ball_volume(n);
    Ok((1.0 / c1).powf(1.0 / p)
        * omega_n.powf((1.0 - nf + p) / p)
        * r_image.powf((1.0 - nf + p) * nf / p)
        * k.powf((nf - 1.0) / p)
        * i.powf((q - p) * (nf - 1.0) / p))
}

/// Distortion bound under finite mean oscillation:
/// `C·(ln ln(1/dist))^{(1−p)(n−1)/p}` for `0 < dist < 1/e`.
pub fn distortion_bound_fmo(dist: f64, c_const: f64, n: usize, p: f64) -> Result<f64> {
    if !(dist > 0.0 && dist < (-1.0_f64).exp()) {
        return Err(Error::Invalid(format!(
            "need 0 < dist < 1/e for a positive iterated log, got {dist}"
        )));
    }
    let nf = n as f64;
    let ll = (1.0 / dist).ln().ln();
    Ok(c_const * ll.powf((1.0 - p) * (nf - 1.0) / p))
}

/// Distortion bound under the divergence criterion: `C·F^{−(n−1)²/n}`
/// where `F` is the tail integral from the distance out to `δ0`.
pub fn distortion_bound_divergent(f_integral: f64, c_const: f64, n: usize) -> Result<f64> {
    if f_integral <= 0.0 {
        return Err(Error::NonPositive {
            name: "F",
            value: f_integral,
        });
    }
    let nf = n as f64;
    Ok(c_const * ext::powf(f_integral, -(nf - 1.0) * (nf - 1.0) / nf))
}

/// Exact p-modulus of the family joining the boundary spheres of the ring
/// `a < |x| < b`:
///
/// `M_p = ω_{n−1}·A^{1−p}` with `A = ∫_a^b t^{−(n−1)/(p−1)} dt`,
///
/// from the Euler–Lagrange condition of the 1-D radial minimization
/// (the minimizer is `φ(t) ∝ t^{−(n−1)/(p−1)}`). For `p = n` this reduces
/// to `ω_{n−1}·(ln(b/a))^{1−n}`.
pub fn ring_modulus_oracle(r1: f64, r2: f64, n: usize, p: f64) -> Result<f64> {
    if !(r1 > 0.0 && r1 < r2) {
        return Err(Error::InvalidRadii { r1, r2 });
    }
    if p <= 1.0 {
        return Err(Error::ExponentRange {
            p,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let nf = n as f64;
    let omega = unit_sphere_area(n);
    let beta = (nf - 1.0) / (p - 1.0);
    let a = if (beta - 1.0).abs() < 1e-12 {
        (r2 / r1).ln()
    } else {
        (r2.powf(1.0 - beta) - r1.powf(1.0 - beta)) / (1.0 - beta)
    };
    Ok(omega * a.powf(1.0 - p))
}
