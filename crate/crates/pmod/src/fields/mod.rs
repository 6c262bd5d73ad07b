//! Scalar majorant fields `Q`, admissible radial weight families `ψ`,
//! quadrature of spherical means and ring integrals, the finite mean
//! oscillation estimator, and the integral criterion predicates.

mod criteria;
mod integrals;
mod sphere;

pub use criteria::*;
pub use integrals::*;
pub use sphere::{sphere_mean, sphere_mean_transformed, SphereMean};

use crate::error::{Error, Result};
use serde::{Deserialize, Serialize};

/// A nonnegative profile of the radius, used both for radial fields and
/// for the sphere-mean profiles `q_{x0}(r)` supplied to ψ families.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum RadialProfile {
    Const(f64),
    /// `scale · r^alpha`
    Power { scale: f64, alpha: f64 },
    /// `scale · max(ln(1/r), 0)^k`
    LogPow { scale: f64, k: f64 },
    /// Tabulated values with linear interpolation, clamped at the ends.
    Table { rs: Vec<f64>, vs: Vec<f64> },
    Infinite,
}

impl RadialProfile {
    pub fn eval(&self, r: f64) -> f64 {
        match self {
            RadialProfile::Const(c) => *c,
            RadialProfile::Power { scale, alpha } => {
                if r == 0.0 && *alpha < 0.0 {
                    f64::INFINITY
                } else {
                    scale * r.powf(*alpha)
                }
            }
            RadialProfile::LogPow { scale, k } => {
                if r <= 0.0 {
                    f64::INFINITY
                } else {
                    scale * (1.0 / r).ln().max(0.0).powf(*k)
                }
            }
            RadialProfile::Table { rs, vs } => {
                if r <= rs[0] {
                    return vs[0];
                }
                if r >= rs[rs.len() - 1] {
                    return vs[vs.len() - 1];
                }
                let i = rs.partition_point(|&t| t < r).max(1);
                let (r0, r1) = (rs[i - 1], rs[i]);
                let w = (r - r0) / (r1 - r0);
                vs[i - 1] * (1.0 - w) + vs[i] * w
            }
            RadialProfile::Infinite => f64::INFINITY,
        }
    }
}

/// Scalar field values sampled on a regular node lattice with multilinear
/// interpolation; restricted to `n <= 3`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridField {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    /// Nodes per axis (each >= 2).
    pub shape: Vec<usize>,
    /// Row-major node values (last axis fastest).
    pub values: Vec<f64>,
}

impl GridField {
    pub fn new(lo: Vec<f64>, hi: Vec<f64>, shape: Vec<usize>, values: Vec<f64>) -> Result<Self> {
        let n = lo.len();
        if !(2..=3).contains(&n) {
            return Err(Error::GridDimension(n));
        }
        if hi.len() != n || shape.len() != n {
            return Err(Error::DimensionMismatch(hi.len(), n));
        }
        if shape.iter().any(|&s| s < 2) {
            return Err(Error::Invalid("grid needs >= 2 nodes per axis".into()));
        }
        if values.len() != shape.iter().product::<usize>() {
            return Err(Error::Invalid("grid value count mismatch".into()));
        }
        if values.iter().any(|&v| v < 0.0 || v.is_nan()) {
            return Err(Error::Invalid("grid values must be >= 0".into()));
        }
        Ok(Self {
            lo,
            hi,
            shape,
            values,
        })
    }

    fn node(&self, idx: &[usize]) -> f64 {
        let mut flat = 0usize;
        for (i, &ix) in idx.iter().enumerate() {
            flat = flat * self.shape[i] + ix;
        }
        self.values[flat]
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        let n = self.lo.len();
        let mut base = [0usize; 3];
        let mut frac = [0.0f64; 3];
        for i in 0..n {
            let cells = (self.shape[i] - 1) as f64;
            let t = ((x[i] - self.lo[i]) / (self.hi[i] - self.lo[i]) * cells).clamp(0.0, cells);
            base[i] = (t.floor() as usize).min(self.shape[i] - 2);
            frac[i] = t - base[i] as f64;
        }
        let mut acc = 0.0;
        for corner in 0..(1usize << n) {
            let mut w = 1.0;
            let mut idx = [0usize; 3];
            for i in 0..n {
                if corner & (1 << i) != 0 {
                    idx[i] = base[i] + 1;
                    w *= frac[i];
                } else {
                    idx[i] = base[i];
                    w *= 1.0 - frac[i];
                }
            }
            if w > 0.0 {
                acc += w * self.node(&idx[..n]);
            }
        }
        acc
    }
}

/// The majorant `Q` as an evaluable nonnegative field.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum ScalarField {
    Constant(f64),
    Radial {
        center: Vec<f64>,
        profile: RadialProfile,
    },
    /// `Q(x) = x_axis²` (the simplest anisotropic test field).
    CoordSquared { axis: usize },
    Grid(GridField),
}

impl ScalarField {
    pub fn constant(c: f64) -> Self {
        ScalarField::Constant(c)
    }

    pub fn radial(center: Vec<f64>, profile: RadialProfile) -> Self {
        ScalarField::Radial { center, profile }
    }

    pub fn eval(&self, x: &[f64]) -> f64 {
        match self {
            ScalarField::Constant(c) => *c,
            ScalarField::Radial { center, profile } => {
                let r = dist(center, x);
                profile.eval(r)
            }
            ScalarField::CoordSquared { axis } => x[*axis] * x[*axis],
            ScalarField::Grid(g) => g.eval(x),
        }
    }

    /// The radial profile about `x0` when the field is exactly radial
    /// there (or constant); lets integrals skip sphere quadrature.
    pub(crate) fn radial_profile_about(&self, x0: &[f64]) -> Option<RadialProfile> {
        match self {
            ScalarField::Constant(c) => Some(RadialProfile::Const(*c)),
            ScalarField::Radial { center, profile } => {
                if center.len() == x0.len() && dist(center, x0) == 0.0 {
                    Some(profile.clone())
                } else {
                    None
                }
            }
            _ => None,
        }
    }

    /// Parse a registry string such as `constant:c=1`, `radialpow:alpha=-1`,
    /// `logrecip`, `logpow:k=2`, `coordsq:axis=0` or `infinite`.
    pub fn parse(spec: &str) -> Result<Self> {
        let (name, params) = split_spec(spec);
        let get = |key: &str| -> Option<f64> {
            params
                .iter()
                .find(|(k, _)| k == key)
                .map(|(_, v)| *v)
        };
        match name {
            "constant" => Ok(ScalarField::Constant(
                get("c").ok_or_else(|| Error::UnknownField(spec.into()))?,
            )),
            "infinite" => Ok(ScalarField::Constant(f64::INFINITY)),
            "radialpow" => {
                let alpha = get("alpha").ok_or_else(|| Error::UnknownField(spec.into()))?;
                let scale = get("scale").unwrap_or(1.0);
                Ok(ScalarField::Radial {
                    center: vec![],
                    profile: RadialProfile::Power { scale, alpha },
                })
            }
            "logrecip" => Ok(ScalarField::Radial {
                center: vec![],
                profile: RadialProfile::LogPow { scale: 1.0, k: 1.0 },
            }),
            "logpow" => {
                let k = get("k").ok_or_else(|| Error::UnknownField(spec.into()))?;
                let scale = get("scale").unwrap_or(1.0);
                Ok(ScalarField::Radial {
                    center: vec![],
                    profile: RadialProfile::LogPow { scale, k },
                })
            }
            "coordsq" => Ok(ScalarField::CoordSquared {
                axis: get("axis").unwrap_or(0.0) as usize,
            }),
            _ => Err(Error::UnknownField(spec.into())),
        }
    }

    /// Radial fields parsed from the registry carry an empty center,
    /// meaning "the origin of whatever dimension is in use"; pin it here.
    pub fn with_center(mut self, center: Vec<f64>) -> Self {
        if let ScalarField::Radial { center: c, .. } = &mut self {
            if c.is_empty() {
                *c = center;
            }
        }
        self
    }
}

pub(crate) fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

fn split_spec(spec: &str) -> (&str, Vec<(String, f64)>) {
    match spec.split_once(':') {
        None => (spec.trim(), vec![]),
        Some((name, rest)) => {
            let params = rest
                .split(',')
                .filter_map(|kv| {
                    let (k, v) = kv.split_once('=')?;
                    Some((k.trim().to_string(), v.trim().parse::<f64>().ok()?))
                })
                .collect();
            (name.trim(), params)
        }
    }
}

/// An admissible radial weight family `ψ` on a support interval.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub enum PsiFamily {
    /// `ψ(t) = (t·ln(1/t))^{−n/p}`, the iterated-log weight.
    LogLog { n: usize, p: f64 },
    /// `ψ(t) = 1/t`.
    Reciprocal,
    /// `ψ(t) = (1 / (t·q(t)^{1/(n−1)}))^{n/p}` for a sphere-mean profile `q`.
    QMean {
        profile: RadialProfile,
        n: usize,
        p: f64,
    },
    /// The Euler–Lagrange minimizer of `∫ q(t)·ψ^p·t^{n−1} dt` under
    /// `∫ψ = 1`: proportional to `(q(t)·t^{n−1})^{−1/(p−1)}`, normalized
    /// over the support it was built for.
    Extremal {
        profile: RadialProfile,
        n: usize,
        p: f64,
        norm: f64,
    },
    Constant(f64),
    /// Tabulated values with linear interpolation inside the table range,
    /// zero outside.
    Custom { ts: Vec<f64>, vs: Vec<f64> },
}

impl PsiFamily {
    pub fn eval(&self, t: f64) -> f64 {
        match self {
            PsiFamily::LogLog { n, p } => {
                if t <= 0.0 || t >= 1.0 {
                    return f64::INFINITY;
                }
                (t * (1.0 / t).ln()).powf(-(*n as f64) / p)
            }
            PsiFamily::Reciprocal => crate::ext::div(1.0, t),
            PsiFamily::QMean { profile, n, p } => {
                let q = profile.eval(t);
                let denom = crate::ext::mul(t, crate::ext::powf(q, 1.0 / (*n as f64 - 1.0)));
                crate::ext::powf(crate::ext::div(1.0, denom), *n as f64 / p)
            }
            PsiFamily::Extremal {
                profile, n, p, norm, ..
            } => {
                let q = profile.eval(t);
                let base = crate::ext::mul(q, t.powi(*n as i32 - 1));
                crate::ext::powf(base, -1.0 / (p - 1.0)) / norm
            }
            PsiFamily::Constant(c) => *c,
            PsiFamily::Custom { ts, vs } => {
                if ts.is_empty() || t < ts[0] || t > ts[ts.len() - 1] {
                    return 0.0;
                }
                let i = ts.partition_point(|&u| u < t).max(1).min(ts.len() - 1);
                let (t0, t1) = (ts[i - 1], ts[i]);
                let w = if t1 > t0 { (t - t0) / (t1 - t0) } else { 0.0 };
                vs[i - 1] * (1.0 - w) + vs[i] * w
            }
        }
    }

    /// Build the extremal family for the field `Q` about `x0` on `(r1, r2)`;
    /// requires a radially resolvable field (constant or radial about `x0`).
    pub fn extremal(
        q_field: &ScalarField,
        x0: &[f64],
        n: usize,
        p: f64,
        r1: f64,
        r2: f64,
    ) -> Result<Self> {
        let profile = q_field
            .radial_profile_about(x0)
            .ok_or_else(|| Error::Invalid("extremal eta needs a radial or constant field".into()))?;
        if p <= 1.0 {
            return Err(Error::ExponentRange {
                p,
                lo: 1.0,
                hi: f64::INFINITY,
            });
        }
        let raw = |t: f64| {
            let q = profile.eval(t);
            let base = crate::ext::mul(q, t.powi(n as i32 - 1));
            crate::ext::powf(base, -1.0 / (p - 1.0))
        };
        let total =
            crate::quad::integrate_geometric(raw, r1, r2, crate::quad::DEFAULT_REL_TOL, 4096);
        if !(total.value > 0.0 && total.value.is_finite()) {
            return Err(Error::Invalid(
                "extremal eta normalization integral is not positive finite".into(),
            ));
        }
        Ok(PsiFamily::Extremal {
            profile,
            n,
            p,
            norm: total.value,
        })
    }

    /// Parse `const`, `reciprocal`, `loglog` or `qmean` for a ring and
    /// exponents; `const` is the normalized constant `1/(r2−r1)`.
    pub fn parse(spec: &str, n: usize, p: f64, r1: f64, r2: f64) -> Result<Self> {
        match spec {
            "const" => Ok(PsiFamily::Constant(1.0 / (r2 - r1))),
            "reciprocal" => Ok(PsiFamily::Reciprocal),
            "loglog" => Ok(PsiFamily::LogLog { n, p }),
            "qmean" => Ok(PsiFamily::QMean {
                profile: RadialProfile::Const(1.0),
                n,
                p,
            }),
            _ => Err(Error::UnknownPsi(spec.into())),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn registry_round_trips() {
        let f = ScalarField::parse("constant:c=3").unwrap();
        assert_eq!(f.eval(&[1.0, 2.0]), 3.0);
        let f = ScalarField::parse("radialpow:alpha=-1")
            .unwrap()
            .with_center(vec![0.0, 0.0]);
        assert_relative_eq!(f.eval(&[2.0, 0.0]), 0.5);
        let f = ScalarField::parse("logrecip")
            .unwrap()
            .with_center(vec![0.0, 0.0]);
        assert_relative_eq!(f.eval(&[0.1, 0.0]), 10.0_f64.ln());
        let f = ScalarField::parse("coordsq:axis=1").unwrap();
        assert_eq!(f.eval(&[3.0, 2.0]), 4.0);
        assert!(ScalarField::parse("nope").is_err());
        assert!(ScalarField::parse("constant").is_err());
        let f = ScalarField::parse("infinite").unwrap();
        assert!(f.eval(&[0.0, 0.0]).is_infinite());
    }

    #[test]
    fn grid_field_interpolates() {
        // 2x2 node grid on [0,1]²: values are f(x,y) = x + 2y at nodes.
        let g = GridField::new(
            vec![0.0, 0.0],
            vec![1.0, 1.0],
            vec![2, 2],
            vec![0.0, 2.0, 1.0, 3.0],
        )
        .unwrap();
        assert_relative_eq!(g.eval(&[0.5, 0.5]), 1.5);
        assert_relative_eq!(g.eval(&[1.0, 0.0]), 1.0);
        // Clamped outside the box.
        assert_relative_eq!(g.eval(&[2.0, 0.0]), 1.0);
        assert!(GridField::new(
            vec![0.0; 4],
            vec![1.0; 4],
            vec![2; 4],
            vec![0.0; 16]
        )
        .is_err());
    }

    #[test]
    fn psi_families_evaluate() {
        let loglog = PsiFamily::LogLog { n: 2, p: 2.0 };
        let t = 0.1;
        assert_relative_eq!(
            loglog.eval(t),
            1.0 / (t * (1.0 / t).ln()),
            max_relative = 1e-13
        );
        assert_eq!(PsiFamily::Reciprocal.eval(0.25), 4.0);
        // Infinite q profile under the qmean family: 1/∞ = 0.
        let qm = PsiFamily::QMean {
            profile: RadialProfile::Infinite,
            n: 2,
            p: 1.5,
        };
        assert_eq!(qm.eval(0.5), 0.0);
    }

    #[test]
    fn extremal_eta_integrates_to_one() {
        let q = ScalarField::constant(1.0);
        let eta = PsiFamily::extremal(&q, &[0.0, 0.0], 2, 1.5, 1.0, 2.0).unwrap();
        let total = crate::quad::integrate(|t| eta.eval(t), 1.0, 2.0, 1e-10, 2048);
        assert_relative_eq!(total.value, 1.0, max_relative = 1e-8);
    }
}
