//! The mapping zoo, differential quantities (Jacobian, minimal stretch,
//! inner dilatation), the ring inequality verifier, the equicontinuity
//! probe, and observed-vs-bound distortion tables.

use crate::error::{Error, Result};
use crate::fields::{psi_integral, ring_integral, PsiFamily, ScalarField, Verdict};
use crate::geometry::SphericalRing;
use crate::modsolver::{
    discrete_modulus, sample_ring_family, CurveFamily, GridSpec, SampleMode, SolveCertificate,
};
use crate::trend::ls_slope;
use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

/// A member of the mapping zoo on `R^n`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum MappingSpec {
    Identity { n: usize },
    /// Rotation of the `(x1, x2)`-plane by the angle `ln(x1² + x2²)`; an
    /// automorphism of the unit ball. Extended by `x ↦ x` on the axis
    /// `x1² + x2² = 0`, where the angle is undefined.
    LogSpiral { n: usize },
    /// The winding map: multiplies the angle of the `(x_{n−1}, x_n)`-plane
    /// by `m`, fixing the axis pointwise. Discrete and open but not a
    /// local homeomorphism near the axis for `m > 1`.
    Winding { m: u32, n: usize },
    /// The planar map `(x, y) ↦ (e^{mx}·cos my, e^{mx}·sin my)` — the real
    /// form of the complex exponential `z ↦ e^{mz}`.
    PlanarExp { m: f64 },
    /// `x ↦ |x|^{α−1}·x`, with `0 ↦ 0` for `α > 0`.
    RadialPower { alpha: f64, n: usize },
    /// Left-to-right composition: `Composition([f, g])` is `x ↦ g(f(x))`.
    Composition(Vec<MappingSpec>),
}

impl MappingSpec {
    pub fn dim(&self) -> usize {
        match self {
            MappingSpec::Identity { n }
            | MappingSpec::LogSpiral { n }
            | MappingSpec::Winding { n, .. }
            | MappingSpec::RadialPower { n, .. } => *n,
            MappingSpec::PlanarExp { .. } => 2,
            MappingSpec::Composition(list) => list.first().map_or(0, |m| m.dim()),
        }
    }

    pub fn evaluate(&self, x: &[f64]) -> Result<Vec<f64>> {
        if x.len() != self.dim() {
            return Err(Error::DimensionMismatch(x.len(), self.dim()));
        }
        match self {
            MappingSpec::Identity { .. } => Ok(x.to_vec()),
            MappingSpec::LogSpiral { .. } => {
                let r2 = x[0] * x[0] + x[1] * x[1];
                let mut out = x.to_vec();
                if r2 > 0.0 {
                    let theta = r2.ln();
                    let (s, c) = theta.sin_cos();
                    out[0] = x[0] * c - x[1] * s;
                    out[1] = x[0] * s + x[1] * c;
                }
                Ok(out)
            }
            MappingSpec::Winding { m, n } => {
                let (iu, iv) = (n - 2, n - 1);
                let (u, v) = (x[iu], x[iv]);
                let mut out = x.to_vec();
                if u * u + v * v > 0.0 {
                    let r = u.hypot(v);
                    let phi = v.atan2(u);
                    let (s, c) = (*m as f64 * phi).sin_cos();
                    out[iu] = r * c;
                    out[iv] = r * s;
                }
                Ok(out)
            }
            MappingSpec::PlanarExp { m } => {
                let (s, c) = (m * x[1]).sin_cos();
                let e = (m * x[0]).exp();
                Ok(vec![e * c, e * s])
            }
            MappingSpec::RadialPower { alpha, .. } => {
                let norm = x.iter().map(|c| c * c).sum::<f64>().sqrt();
                if norm == 0.0 {
                    if *alpha > 0.0 {
                        return Ok(x.to_vec());
                    }
                    return Err(Error::MappingDomain(
                        x.to_vec(),
                        format!("|x|^({alpha}-1)·x undefined at the origin"),
                    ));
                }
                let scale = norm.powf(alpha - 1.0);
                Ok(x.iter().map(|c| c * scale).collect())
            }
            MappingSpec::Composition(list) => {
                let mut cur = x.to_vec();
                for map in list {
                    cur = map.evaluate(&cur)?;
                }
                Ok(cur)
            }
        }
    }

    /// Parse `identity`, `g1`, `g2:m=3`, `exp:m=5`, `radialpow:alpha=0.5`
    /// or `compose:g1,g2:m=2` for dimension `n`.
    pub fn parse(spec: &str, n: usize) -> Result<Self> {
        let spec = spec.trim();
        if let Some(rest) = spec.strip_prefix("compose:") {
            let parts = rest
                .split(',')
                .map(|s| Self::parse(s, n))
                .collect::<Result<Vec<_>>>()?;
            if parts.is_empty() {
                return Err(Error::UnknownMapping(spec.into()));
            }
            return Ok(MappingSpec::Composition(parts));
        }
        let (name, param) = match spec.split_once(':') {
            None => (spec, None),
            Some((name, kv)) => {
                let v = kv
                    .split_once('=')
                    .and_then(|(_, v)| v.trim().parse::<f64>().ok())
                    .ok_or_else(|| Error::UnknownMapping(spec.into()))?;
                (name, Some(v))
            }
        };
        match (name, param) {
            ("identity", None) => Ok(MappingSpec::Identity { n }),
            ("g1", None) => Ok(MappingSpec::LogSpiral { n }),
            ("g2", Some(m)) if m >= 1.0 && m.fract() == 0.0 => Ok(MappingSpec::Winding {
                m: m as u32,
                n,
            }),
            ("exp", Some(m)) if n == 2 => Ok(MappingSpec::PlanarExp { m }),
            ("radialpow", Some(alpha)) => Ok(MappingSpec::RadialPower { alpha, n }),
            _ => Err(Error::UnknownMapping(spec.into())),
        }
    }

    /// Parse a family spec, expanding one `param=a..b` integer range
    /// (e.g. `exp:m=1..10`) into individual members.
    pub fn parse_family(spec: &str, n: usize) -> Result<Vec<(String, MappingSpec)>> {
        if let Some((head, range)) = spec.split_once('=') {
            if let Some((lo, hi)) = range.split_once("..") {
                let lo: i64 = lo
                    .trim()
                    .parse()
                    .map_err(|_| Error::UnknownMapping(spec.into()))?;
                let hi: i64 = hi
                    .trim()
                    .parse()
                    .map_err(|_| Error::UnknownMapping(spec.into()))?;
                if hi < lo {
                    return Err(Error::UnknownMapping(spec.into()));
                }
                let mut out = Vec::new();
                for v in lo..=hi {
                    let one = format!("{head}={v}");
                    out.push((one.clone(), Self::parse(&one, n)?));
                }
                return Ok(out);
            }
        }
        Ok(vec![(spec.to_string(), Self::parse(spec, n)?)])
    }
}

/// How the derivative matrix is produced.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DerivativeScheme {
    /// Closed-form derivative; errors where the zoo has none.
    Analytic,
    /// Central differences with step `h`; `None` selects `1e-6·(1+|x|)`.
    CentralFd { h: Option<f64> },
    /// Analytic where available, otherwise central differences.
    Auto,
}

fn norm(x: &[f64]) -> f64 {
    x.iter().map(|c| c * c).sum::<f64>().sqrt()
}

/// Derivative matrix of the mapping at an interior point.
pub fn derivative_matrix(
    map: &MappingSpec,
    x: &[f64],
    scheme: DerivativeScheme,
) -> Result<DMatrix<f64>> {
    match scheme {
        DerivativeScheme::Analytic => analytic_derivative(map, x),
        DerivativeScheme::CentralFd { h } => central_fd(map, x, h),
        DerivativeScheme::Auto => {
            analytic_derivative(map, x).or_else(|_| central_fd(map, x, None))
        }
    }
}

fn analytic_derivative(map: &MappingSpec, x: &[f64]) -> Result<DMatrix<f64>> {
    let n = map.dim();
    match map {
        MappingSpec::Identity { .. } => Ok(DMatrix::identity(n, n)),
        MappingSpec::Winding { m, .. } => {
            let (iu, iv) = (n - 2, n - 1);
            let (u, v) = (x[iu], x[iv]);
            if u * u + v * v == 0.0 {
                return Err(Error::MappingDomain(
                    x.to_vec(),
                    "winding map has no classical derivative on the axis".into(),
                ));
            }
            let phi = v.atan2(u);
            let mf = *m as f64;
            // Polar factorization R(m*phi)·diag(1, m)·R(phi)^T of the block.
            let (smp, cmp) = (mf * phi).sin_cos();
            let (sp, cp) = phi.sin_cos();
            let mut j = DMatrix::identity(n, n);
            j[(iu, iu)] = cmp * cp + mf * smp * sp;
            j[(iu, iv)] = cmp * sp - mf * smp * cp;
            j[(iv, iu)] = smp * cp - mf * cmp * sp;
            j[(iv, iv)] = smp * sp + mf * cmp * cp;
            Ok(j)
        }
        MappingSpec::RadialPower { alpha, .. } => {
            let r = norm(x);
            if r == 0.0 {
                return Err(Error::MappingDomain(
                    x.to_vec(),
                    "radial power derivative undefined at the origin".into(),
                ));
            }
            let scale = r.powf(alpha - 1.0);
            let mut j = DMatrix::identity(n, n) * scale;
            for a in 0..n {
                for b in 0..n {
                    j[(a, b)] += scale * (alpha - 1.0) * x[a] * x[b] / (r * r);
                }
            }
            Ok(j)
        }
        MappingSpec::PlanarExp { m } => {
            let e = (m * x[0]).exp();
            let (s, c) = (m * x[1]).sin_cos();
            Ok(DMatrix::from_row_slice(
                2,
                2,
                &[m * e * c, -m * e * s, m * e * s, m * e * c],
            ))
        }
        MappingSpec::LogSpiral { .. } | MappingSpec::Composition(_) => Err(Error::Invalid(
            "no analytic derivative in the zoo for this mapping; use central differences".into(),
        )),
    }
}

fn central_fd(map: &MappingSpec, x: &[f64], h: Option<f64>) -> Result<DMatrix<f64>> {
    let n = map.dim();
    let h = match h {
        Some(h) if h > 0.0 => h,
        Some(h) => {
            return Err(Error::NonPositive { name: "h", value: h });
        }
        None => 1e-6 * (1.0 + norm(x)),
    };
    let mut j = DMatrix::zeros(n, n);
    let mut xp = x.to_vec();
    let mut xm = x.to_vec();
    for col in 0..n {
        xp[col] = x[col] + h;
        xm[col] = x[col] - h;
        let fp = map.evaluate(&xp)?;
        let fm = map.evaluate(&xm)?;
        for row in 0..n {
            j[(row, col)] = (fp[row] - fm[row]) / (2.0 * h);
        }
        xp[col] = x[col];
        xm[col] = x[col];
    }
    Ok(j)
}

/// Pointwise differential data of a mapping.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DilatationSample {
    pub point: Vec<f64>,
    pub jacobian: f64,
    /// Smallest singular value of the derivative (minimal stretch).
    pub min_stretch: f64,
    /// `J / l^p` with the conventions `a/0 = ∞` (a > 0) and `0/0 = 0`.
    pub k_ip: f64,
}

/// Jacobian, minimal stretch and `K_{I,p} = J/l^p` at a point. The
/// minimal stretch is the square root of the smallest eigenvalue of
/// `J'ᵀJ'`, from an iterative symmetric eigensolver.
pub fn dilatation(
    map: &MappingSpec,
    x: &[f64],
    p: f64,
    scheme: DerivativeScheme,
) -> Result<DilatationSample> {
    let j = derivative_matrix(map, x, scheme)?;
    let jacobian = j.determinant();
    let gram = j.transpose() * &j;
    let eigen = gram.symmetric_eigen();
    let min_ev = eigen
        .eigenvalues
        .iter()
        .cloned()
        .fold(f64::INFINITY, f64::min);
    let min_stretch = min_ev.max(0.0).sqrt();
    let k_ip = if min_stretch > 0.0 {
        jacobian / min_stretch.powf(p)
    } else if jacobian > 0.0 {
        f64::INFINITY
    } else {
        0.0
    };
    Ok(DilatationSample {
        point: x.to_vec(),
        jacobian,
        min_stretch,
        k_ip,
    })
}

/// Push a curve family through a mapping, inserting `refine` points per
/// segment before mapping vertexwise.
pub fn image_family(
    map: &MappingSpec,
    family: &CurveFamily,
    refine: usize,
) -> Result<CurveFamily> {
    family.map_refined(refine, |x| map.evaluate(x))
}

/// Everything the ring inequality verifier measured.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct VerificationReport {
    /// Discrete modulus of the image family.
    pub lhs: f64,
    /// Ring integral of `Q·η^p`.
    pub rhs: f64,
    pub margin: f64,
    pub verdict: Verdict,
    /// `∫ η` over the ring (must be ≥ 1 for the test to be meaningful).
    pub eta_integral: f64,
    pub quadrature_error: f64,
    /// Discrete duality gap plus constraint slack: the solver's own
    /// uncertainty about the lhs.
    pub solver_tolerance: f64,
    pub certificate: SolveCertificate,
    /// Which η witnessed this verdict; the inequality quantifies over all
    /// admissible η, so a numeric run can only support with sampled η or
    /// refute with a witness.
    pub eta_label: String,
}

/// Parameters of a verification run.
#[derive(Debug, Clone)]
pub struct VerifySetup {
    pub k_curves: usize,
    pub resolution: usize,
    pub refine: usize,
    pub seed: u64,
}

impl Default for VerifySetup {
    fn default() -> Self {
        Self {
            k_curves: 256,
            resolution: 128,
            refine: 8,
            seed: 0,
        }
    }
}

/// Test the ring inequality for one mapping, majorant and admissible η:
/// compares the discrete modulus of the image of a sampled ring family
/// against the weighted ring integral.
pub fn verify_ring_pq(
    map: &MappingSpec,
    ring: &SphericalRing,
    p: f64,
    q_field: &ScalarField,
    eta: &PsiFamily,
    eta_label: &str,
    setup: &VerifySetup,
) -> Result<VerificationReport> {
    let eta_int = psi_integral(eta, ring.r1, ring.r2)?;
    if eta_int.value.is_nan() || eta_int.value < 1.0 - 1e-9 {
        return Err(Error::EtaNotAdmissible(eta_int.value));
    }
    let family = sample_ring_family(ring, setup.k_curves, SampleMode::Radial, setup.seed)?;
    let image = image_family(map, &family, setup.refine)?;
    let spec = GridSpec::covering(&image, setup.resolution, 2)?;
    let solution = discrete_modulus(&image, p, &spec)?;
    let rhs_quad = ring_integral(q_field, eta, ring, p)?;

    let lhs = solution.value;
    let rhs = rhs_quad.value;
    let margin = rhs - lhs;
    let solver_tolerance = (solution.certificate.admissible_value
        - solution.certificate.dual_lower_bound)
        .abs()
        + solution.certificate.max_violation * lhs.abs();
    let tolerance = solver_tolerance + rhs_quad.error;
    let verdict = if !solution.certificate.converged || !rhs_quad.converged {
        Verdict::Inconclusive
    } else if margin >= -tolerance {
        Verdict::Satisfied
    } else {
        Verdict::Violated
    };
    Ok(VerificationReport {
        lhs,
        rhs,
        margin,
        verdict,
        eta_integral: eta_int.value,
        quadrature_error: rhs_quad.error,
        solver_tolerance,
        certificate: solution.certificate,
        eta_label: eta_label.to_string(),
    })
}

/// Metric used by the equicontinuity probe.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeMetric {
    Euclidean,
    Chordal,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProbeVerdict {
    EquicontinuousEvidence,
    ViolatedEvidence,
    Inconclusive,
}

/// One oscillation measurement.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeRow {
    pub map_id: String,
    pub delta: f64,
    pub oscillation: f64,
}

/// Oscillation table of a mapping family around a point.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ProbeTable {
    pub rows: Vec<ProbeRow>,
    /// Per-δ sup of the oscillation over the family.
    pub column_sups: Vec<(f64, f64)>,
    /// Max over δ of (last family member osc)/(first member osc).
    pub growth_factor: f64,
    /// Slope of log(column sup) against log δ; positive means the sups
    /// shrink with δ.
    pub decay_slope: f64,
    pub verdict: ProbeVerdict,
}

const PROBE_SPHERE_SAMPLES: usize = 256;
const PROBE_GROWTH_THRESHOLD: f64 = 4.0;

/// Oscillation `sup_{|x−b|=δ} d(f(x), f(b))` for each family member and
/// each δ, with evidence verdicts: family-index growth at fixed δ is
/// violated evidence, column sups decaying to 0 with δ is equicontinuity
/// evidence.
pub fn equicontinuity_probe(
    family: &[(String, MappingSpec)],
    b: &[f64],
    deltas: &[f64],
    metric: ProbeMetric,
) -> Result<ProbeTable> {
    if family.is_empty() || deltas.is_empty() || deltas.iter().any(|&d| d <= 0.0) {
        return Err(Error::Invalid("probe needs maps and positive deltas".into()));
    }
    let n = b.len();
    let dirs = probe_directions(n, PROBE_SPHERE_SAMPLES)?;
    let mut rows = Vec::with_capacity(family.len() * deltas.len());
    for (id, map) in family {
        let fb = map.evaluate(b)?;
        for &delta in deltas {
            let mut sup = 0.0_f64;
            for dir in &dirs {
                let x: Vec<f64> = b.iter().zip(dir).map(|(c, d)| c + delta * d).collect();
                let fx = map.evaluate(&x)?;
                let dist = match metric {
                    ProbeMetric::Euclidean => fx
                        .iter()
                        .zip(&fb)
                        .map(|(a, c)| (a - c) * (a - c))
                        .sum::<f64>()
                        .sqrt(),
                    ProbeMetric::Chordal => {
                        let nx = norm(&fx);
                        let nb = norm(&fb);
                        let diff = fx
                            .iter()
                            .zip(&fb)
                            .map(|(a, c)| (a - c) * (a - c))
                            .sum::<f64>()
                            .sqrt();
                        diff / ((1.0 + nx * nx).sqrt() * (1.0 + nb * nb).sqrt())
                    }
                };
                sup = sup.max(dist);
            }
            rows.push(ProbeRow {
                map_id: id.clone(),
                delta,
                oscillation: sup,
            });
        }
    }

    let column_sups: Vec<(f64, f64)> = deltas
        .iter()
        .map(|&d| {
            let sup = rows
                .iter()
                .filter(|r| r.delta == d)
                .map(|r| r.oscillation)
                .fold(0.0_f64, f64::max);
            (d, sup)
        })
        .collect();

    let first_id = &family[0].0;
    let last_id = &family[family.len() - 1].0;
    let growth_factor = deltas
        .iter()
        .map(|&d| {
            let of = |id: &String| {
                rows.iter()
                    .find(|r| &r.map_id == id && r.delta == d)
                    .map(|r| r.oscillation)
                    .unwrap_or(0.0)
            };
            let first = of(first_id);
            let last = of(last_id);
            if first > 0.0 {
                last / first
            } else if last > 0.0 {
                f64::INFINITY
            } else {
                1.0
            }
        })
        .fold(0.0_f64, f64::max);

    let xs: Vec<f64> = column_sups.iter().map(|(d, _)| d.ln()).collect();
    let ys: Vec<f64> = column_sups
        .iter()
        .map(|(_, s)| s.max(1e-300).ln())
        .collect();
    let decay_slope = ls_slope(&xs, &ys);

    let verdict = if family.len() > 1 && growth_factor >= PROBE_GROWTH_THRESHOLD {
        ProbeVerdict::ViolatedEvidence
    } else if decay_slope >= 0.05 {
        // Oscillation shrinks with δ like δ^slope.
        ProbeVerdict::EquicontinuousEvidence
    } else {
        ProbeVerdict::Inconclusive
    };

    Ok(ProbeTable {
        rows,
        column_sups,
        growth_factor,
        decay_slope,
        verdict,
    })
}

fn probe_directions(n: usize, k: usize) -> Result<Vec<Vec<f64>>> {
    match n {
        2 => Ok((0..k)
            .map(|i| {
                let phi = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                vec![phi.cos(), phi.sin()]
            })
            .collect()),
        3 => {
            let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
            Ok((0..k)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / k as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = 2.0 * std::f64::consts::PI * i as f64 / golden;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect())
        }
        _ => Err(Error::DimensionRange(n, 2, 3)),
    }
}

/// Which distortion bound to compare against.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub enum DistortionBoundKind {
    /// `(ln ln(1/d))^{(1−p)(n−1)/p}` (finite mean oscillation case).
    Fmo,
    /// `F(d, δ0)^{−(n−1)²/n}` with `F(d, δ0) = ∫_d^{δ0} dt/(t·q^{1/(n−1)})`.
    Divergent { delta0: f64 },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistortionRow {
    pub dist: f64,
    /// Sup of `|f(x) − f(x0)|` over sampled `|x − x0| = dist`.
    pub observed: f64,
    /// Bound shape evaluated with constant 1.
    pub shape: f64,
    /// `observed / shape`: the constant this row alone would require.
    pub implied_c: f64,
}

/// Comparison of observed distortion against a bound shape, with the
/// minimal constant making the bound hold over the whole sample. The
/// bound's own constant is existential, so only a fitted constant is
/// ever reported.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct DistortionComparison {
    pub rows: Vec<DistortionRow>,
    pub fitted_c: f64,
}

pub fn distortion_vs_bound(
    map: &MappingSpec,
    x0: &[f64],
    p: f64,
    q_field: &ScalarField,
    bound: DistortionBoundKind,
    dist_list: &[f64],
) -> Result<DistortionComparison> {
    let n = x0.len();
    let dirs = probe_directions(n, PROBE_SPHERE_SAMPLES)?;
    let f0 = map.evaluate(x0)?;
    let mut rows = Vec::with_capacity(dist_list.len());
    for &dist in dist_list {
        if dist <= 0.0 {
            return Err(Error::NonPositive {
                name: "dist",
                value: dist,
            });
        }
        let mut observed = 0.0_f64;
        for dir in &dirs {
            let x: Vec<f64> = x0.iter().zip(dir).map(|(c, d)| c + dist * d).collect();
            let fx = map.evaluate(&x)?;
            let d = fx
                .iter()
                .zip(&f0)
                .map(|(a, c)| (a - c) * (a - c))
                .sum::<f64>()
                .sqrt();
            observed = observed.max(d);
        }
        let shape = match bound {
            DistortionBoundKind::Fmo => crate::bounds::distortion_bound_fmo(dist, 1.0, n, p)?,
            DistortionBoundKind::Divergent { delta0 } => {
                let f = crate::fields::capacity_like_tail(q_field, x0, dist, delta0)?;
                crate::bounds::distortion_bound_divergent(f, 1.0, n)?
            }
        };
        let implied_c = if shape > 0.0 {
            observed / shape
        } else {
            f64::INFINITY
        };
        rows.push(DistortionRow {
            dist,
            observed,
            shape,
            implied_c,
        });
    }
    let fitted_c = rows.iter().map(|r| r.implied_c).fold(0.0_f64, f64::max);
    Ok(DistortionComparison { rows, fitted_c })
}
