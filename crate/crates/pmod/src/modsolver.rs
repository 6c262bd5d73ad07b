//! Discrete p-modulus of finite polyline families.
//!
//! The density lives on a regular grid of cell-center values with
//! multilinear interpolation, so every admissibility constraint
//! `∫_γ ρ |dx| ≥ 1` is a sparse linear functional of the cell values and
//! the objective `Σ ρ^p·cellvol` is strictly convex for `p > 1`: the
//! discrete problem has a unique minimizer.
//!
//! The solver is dual coordinate ascent with most-violated-first
//! selection (Hildreth/Bregman cyclic projection): each step solves the
//! single-constraint p-minimization in closed form along the curve's
//! interpolation stencil, i.e. adjusts one multiplier so the stationarity
//! density `ρ_c = ((Aᵀλ)_c/(p·v))^{1/(p−1)}` meets that constraint with
//! equality. Multipliers of over-satisfied constraints are driven back
//! down (clipped at zero), which is what makes the iteration converge to
//! the optimum rather than merely a feasible point.

use crate::error::{Error, Result};
use crate::geometry::SphericalRing;
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};

/// An ordered polyline in `R^n` with at least two vertices and positive
/// length.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Polyline {
    dim: usize,
    coords: Vec<f64>,
}

impl Polyline {
    pub fn new(vertices: Vec<Vec<f64>>) -> Result<Self> {
        if vertices.len() < 2 {
            return Err(Error::DegenerateCurve);
        }
        let dim = vertices[0].len();
        if dim < 2 || vertices.iter().any(|v| v.len() != dim) {
            return Err(Error::DimensionMismatch(dim, 2));
        }
        let coords: Vec<f64> = vertices.into_iter().flatten().collect();
        let poly = Self { dim, coords };
        if !(poly.length() > 0.0 && poly.length().is_finite()) {
            return Err(Error::DegenerateCurve);
        }
        Ok(poly)
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn vertex_count(&self) -> usize {
        self.coords.len() / self.dim
    }

    pub fn vertex(&self, i: usize) -> &[f64] {
        &self.coords[i * self.dim..(i + 1) * self.dim]
    }

    pub fn length(&self) -> f64 {
        let mut total = 0.0;
        for i in 1..self.vertex_count() {
            let a = self.vertex(i - 1);
            let b = self.vertex(i);
            total += dist(a, b);
        }
        total
    }

    pub fn vertices(&self) -> Vec<Vec<f64>> {
        (0..self.vertex_count())
            .map(|i| self.vertex(i).to_vec())
            .collect()
    }

    /// Truncate to the sub-polyline between fractional arclength positions
    /// `t0 < t1` in `[0, 1]`.
    pub fn truncate(&self, t0: f64, t1: f64) -> Result<Polyline> {
        let total = self.length();
        let (s0, s1) = (t0 * total, t1 * total);
        let mut verts: Vec<Vec<f64>> = vec![self.point_at(s0)];
        let mut walked = 0.0;
        for i in 1..self.vertex_count() {
            let seg = dist(self.vertex(i - 1), self.vertex(i));
            let end = walked + seg;
            if end > s0 && end < s1 {
                verts.push(self.vertex(i).to_vec());
            }
            walked = end;
        }
        verts.push(self.point_at(s1));
        Polyline::new(verts)
    }

    fn point_at(&self, s: f64) -> Vec<f64> {
        let mut walked = 0.0;
        for i in 1..self.vertex_count() {
            let a = self.vertex(i - 1);
            let b = self.vertex(i);
            let seg = dist(a, b);
            if walked + seg >= s || i == self.vertex_count() - 1 {
                let t = if seg > 0.0 {
                    ((s - walked) / seg).clamp(0.0, 1.0)
                } else {
                    0.0
                };
                return a
                    .iter()
                    .zip(b)
                    .map(|(x, y)| x + t * (y - x))
                    .collect();
            }
            walked += seg;
        }
        self.vertex(self.vertex_count() - 1).to_vec()
    }
}

fn dist(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y) * (x - y))
        .sum::<f64>()
        .sqrt()
}

/// A labelled family of curves. The empty family is allowed; its modulus
/// is 0 by convention.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CurveFamily {
    pub curves: Vec<Polyline>,
    pub label: String,
}

impl CurveFamily {
    pub fn new(curves: Vec<Polyline>, label: impl Into<String>) -> Self {
        Self {
            curves,
            label: label.into(),
        }
    }

    pub fn empty(label: impl Into<String>) -> Self {
        Self::new(Vec::new(), label)
    }

    pub fn len(&self) -> usize {
        self.curves.len()
    }

    pub fn is_empty(&self) -> bool {
        self.curves.is_empty()
    }

    /// JSON wire format: a plain array of vertex lists.
    pub fn to_json(&self) -> Result<String> {
        let raw: Vec<Vec<Vec<f64>>> = self.curves.iter().map(|c| c.vertices()).collect();
        Ok(serde_json::to_string(&raw)?)
    }

    pub fn from_json(text: &str, label: impl Into<String>) -> Result<Self> {
        let raw: Vec<Vec<Vec<f64>>> = serde_json::from_str(text)?;
        let curves = raw
            .into_iter()
            .map(Polyline::new)
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::new(curves, label))
    }

    /// Map every curve vertexwise after inserting `refine` intermediate
    /// points per segment. Used to push families through mappings.
    pub fn map_refined<F>(&self, refine: usize, f: F) -> Result<CurveFamily>
    where
        F: Fn(&[f64]) -> Result<Vec<f64>>,
    {
        let mut curves = Vec::with_capacity(self.curves.len());
        for curve in &self.curves {
            let mut verts = Vec::new();
            for i in 0..curve.vertex_count() {
                if i > 0 && refine > 0 {
                    let a = curve.vertex(i - 1).to_vec();
                    let b = curve.vertex(i);
                    for j in 1..=refine {
                        let t = j as f64 / (refine + 1) as f64;
                        let mid: Vec<f64> =
                            a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
                        verts.push(f(&mid)?);
                    }
                }
                verts.push(f(curve.vertex(i))?);
            }
            curves.push(Polyline::new(verts)?);
        }
        Ok(CurveFamily::new(curves, self.label.clone()))
    }

    /// Axis-aligned bounding box over all vertices.
    pub fn bounding_box(&self) -> Option<(Vec<f64>, Vec<f64>)> {
        let first = self.curves.first()?;
        let dim = first.dim();
        let mut lo = vec![f64::INFINITY; dim];
        let mut hi = vec![f64::NEG_INFINITY; dim];
        for curve in &self.curves {
            for i in 0..curve.vertex_count() {
                for (d, &x) in curve.vertex(i).iter().enumerate() {
                    lo[d] = lo[d].min(x);
                    hi[d] = hi[d].max(x);
                }
            }
        }
        Some((lo, hi))
    }
}

/// Grid geometry for the density: box and cells per axis.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GridSpec {
    pub lo: Vec<f64>,
    pub hi: Vec<f64>,
    pub resolution: Vec<usize>,
}

impl GridSpec {
    pub fn cube(lo: f64, hi: f64, dim: usize, resolution: usize) -> Self {
        Self {
            lo: vec![lo; dim],
            hi: vec![hi; dim],
            resolution: vec![resolution; dim],
        }
    }

    /// Box of the given family padded by `pad_cells` cells on each side.
    pub fn covering(family: &CurveFamily, resolution: usize, pad_cells: usize) -> Result<Self> {
        let (lo, hi) = family
            .bounding_box()
            .ok_or_else(|| Error::Invalid("cannot build a grid for an empty family".into()))?;
        let dim = lo.len();
        let mut spec = Self {
            lo: vec![0.0; dim],
            hi: vec![0.0; dim],
            resolution: vec![resolution; dim],
        };
        for d in 0..dim {
            let span = (hi[d] - lo[d]).max(1e-9);
            let h = span / resolution as f64;
            spec.lo[d] = lo[d] - pad_cells as f64 * h;
            spec.hi[d] = hi[d] + pad_cells as f64 * h;
        }
        Ok(spec)
    }

    fn validate(&self) -> Result<()> {
        let n = self.lo.len();
        if !(2..=3).contains(&n) {
            return Err(Error::GridDimension(n));
        }
        if self.hi.len() != n || self.resolution.len() != n {
            return Err(Error::DimensionMismatch(self.hi.len(), n));
        }
        if self.resolution.iter().any(|&r| r < 8) {
            return Err(Error::Invalid("grid resolution must be >= 8 per axis".into()));
        }
        if self.lo.iter().zip(&self.hi).any(|(l, h)| l >= h) {
            return Err(Error::Invalid("grid box is empty".into()));
        }
        Ok(())
    }
}

/// Nonnegative density on a regular grid of cell centers with multilinear
/// interpolation.
#[derive(Debug, Clone, PartialEq)]
pub struct DensityGrid {
    pub spec: GridSpec,
    pub values: Vec<f64>,
}

impl DensityGrid {
    pub fn zeros(spec: GridSpec) -> Result<Self> {
        spec.validate()?;
        let count = spec.resolution.iter().product();
        Ok(Self {
            spec,
            values: vec![0.0; count],
        })
    }

    pub fn dim(&self) -> usize {
        self.spec.lo.len()
    }

    pub fn cell_volume(&self) -> f64 {
        let mut v = 1.0;
        for d in 0..self.dim() {
            v *= (self.spec.hi[d] - self.spec.lo[d]) / self.spec.resolution[d] as f64;
        }
        v
    }

    fn min_cell_edge(&self) -> f64 {
        (0..self.dim())
            .map(|d| (self.spec.hi[d] - self.spec.lo[d]) / self.spec.resolution[d] as f64)
            .fold(f64::INFINITY, f64::min)
    }

    fn inside(&self, x: &[f64]) -> bool {
        let tol = 1e-9;
        x.iter()
            .zip(self.spec.lo.iter().zip(&self.spec.hi))
            .all(|(&xi, (&lo, &hi))| xi >= lo - tol * (hi - lo) && xi <= hi + tol * (hi - lo))
    }

    /// Multilinear interpolation stencil at `x`: up to `2^n` pairs of
    /// (flat cell index, weight), weights summing to 1.
    fn stencil(&self, x: &[f64], out: &mut Vec<(u32, f64)>) {
        out.clear();
        let n = self.dim();
        let mut base = [0usize; 3];
        let mut frac = [0.0f64; 3];
        for d in 0..n {
            let res = self.spec.resolution[d];
            let h = (self.spec.hi[d] - self.spec.lo[d]) / res as f64;
            // Cell-center coordinates: centers at lo + (i + 0.5)h.
            let u = ((x[d] - self.spec.lo[d]) / h - 0.5).clamp(0.0, res as f64 - 1.0);
            base[d] = (u.floor() as usize).min(res - 2);
            frac[d] = u - base[d] as f64;
        }
        for corner in 0..(1usize << n) {
            let mut w = 1.0;
            let mut flat = 0usize;
            for d in 0..n {
                let (idx, wd) = if corner & (1 << d) != 0 {
                    (base[d] + 1, frac[d])
                } else {
                    (base[d], 1.0 - frac[d])
                };
                w *= wd;
                flat = flat * self.spec.resolution[d] + idx;
            }
            if w > 0.0 {
                out.push((flat as u32, w));
            }
        }
    }

    /// Value of the interpolated density at `x`.
    pub fn eval(&self, x: &[f64]) -> f64 {
        let mut st = Vec::with_capacity(8);
        self.stencil(x, &mut st);
        st.iter().map(|&(c, w)| w * self.values[c as usize]).sum()
    }

    /// `Σ ρ_c^p · cellvol`.
    pub fn energy(&self, p: f64) -> f64 {
        let v = self.cell_volume();
        self.values.iter().map(|r| r.powf(p)).sum::<f64>() * v
    }

    /// Flat binary export: `u32` dims, per-axis `u32` resolution,
    /// per-axis `f64` lo then hi, then row-major `f64` values
    /// (little-endian throughout).
    pub fn to_binary(&self) -> Vec<u8> {
        let mut out = Vec::new();
        out.extend_from_slice(&(self.dim() as u32).to_le_bytes());
        for &r in &self.spec.resolution {
            out.extend_from_slice(&(r as u32).to_le_bytes());
        }
        for &v in self.spec.lo.iter().chain(&self.spec.hi) {
            out.extend_from_slice(&v.to_le_bytes());
        }
        for &v in &self.values {
            out.extend_from_slice(&v.to_le_bytes());
        }
        out
    }

    pub fn from_binary(data: &[u8]) -> Result<Self> {
        let take_u32 = |off: &mut usize| -> Result<u32> {
            let bytes: [u8; 4] = data
                .get(*off..*off + 4)
                .ok_or_else(|| Error::Invalid("truncated density grid".into()))?
                .try_into()
                .unwrap();
            *off += 4;
            Ok(u32::from_le_bytes(bytes))
        };
        let take_f64 = |off: &mut usize| -> Result<f64> {
            let bytes: [u8; 8] = data
                .get(*off..*off + 8)
                .ok_or_else(|| Error::Invalid("truncated density grid".into()))?
                .try_into()
                .unwrap();
            *off += 8;
            Ok(f64::from_le_bytes(bytes))
        };
        let mut off = 0;
        let n = take_u32(&mut off)? as usize;
        if !(2..=3).contains(&n) {
            return Err(Error::GridDimension(n));
        }
        let mut resolution = Vec::with_capacity(n);
        for _ in 0..n {
            resolution.push(take_u32(&mut off)? as usize);
        }
        let mut lo = Vec::with_capacity(n);
        for _ in 0..n {
            lo.push(take_f64(&mut off)?);
        }
        let mut hi = Vec::with_capacity(n);
        for _ in 0..n {
            hi.push(take_f64(&mut off)?);
        }
        let count: usize = resolution.iter().product();
        let mut values = Vec::with_capacity(count);
        for _ in 0..count {
            values.push(take_f64(&mut off)?);
        }
        let spec = GridSpec { lo, hi, resolution };
        spec.validate()?;
        Ok(Self { spec, values })
    }
}

/// Composite midpoint line integral of the interpolated density along a
/// polyline, with sub-segments no longer than half the cell edge.
pub fn line_integral(rho: &DensityGrid, gamma: &Polyline) -> Result<f64> {
    if gamma.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(gamma.dim(), rho.dim()));
    }
    let max_step = 0.5 * rho.min_cell_edge();
    let mut total = 0.0;
    let mut st = Vec::with_capacity(8);
    for i in 1..gamma.vertex_count() {
        let a = gamma.vertex(i - 1);
        let b = gamma.vertex(i);
        if !rho.inside(a) || !rho.inside(b) {
            let out = if rho.inside(a) { b } else { a };
            return Err(Error::CurveOutsideGrid(out.to_vec()));
        }
        let seg = dist(a, b);
        if seg == 0.0 {
            continue;
        }
        let pieces = (seg / max_step).ceil().max(1.0) as usize;
        let dl = seg / pieces as f64;
        for j in 0..pieces {
            let t = (j as f64 + 0.5) / pieces as f64;
            let mid: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
            rho.stencil(&mid, &mut st);
            let val: f64 = st.iter().map(|&(c, w)| w * rho.values[c as usize]).sum();
            total += val * dl;
        }
    }
    Ok(total)
}

/// Convergence and quality data for one modulus solve.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SolveCertificate {
    pub converged: bool,
    pub iterations: usize,
    /// Max over curves of `max(0, 1 − ∫ρ)` at the returned density before
    /// the final admissibility rescale.
    pub max_violation: f64,
    /// Energy of ρ divided by the minimum line integral, raised to p: a
    /// rigorous upper bound on the discrete optimum, and the value
    /// reported by the solver.
    pub admissible_value: f64,
    /// Weak-duality lower bound on the discrete optimum.
    pub dual_lower_bound: f64,
    /// The tolerance between discrete and continuum modulus is a policy of
    /// the experiment, not of this certificate, which bounds only the
    /// discrete problem.
    pub note: String,
}

/// Result of a discrete modulus solve.
#[derive(Debug, Clone)]
pub struct ModulusSolution {
    pub value: f64,
    pub rho: DensityGrid,
    pub certificate: SolveCertificate,
}

const VIOLATION_TOL: f64 = 1e-4;
const OBJECTIVE_TOL: f64 = 1e-6;
const STALL_WINDOW: usize = 50;
pub const DEFAULT_ITERATION_BUDGET: usize = 100_000;

struct Constraint {
    cells: Vec<u32>,
    weights: Vec<f64>,
}

/// Approximate minimizer of `Σ ρ^p·cellvol` subject to unit line
/// integrals along every curve of the family.
pub fn discrete_modulus(
    family: &CurveFamily,
    p: f64,
    spec: &GridSpec,
) -> Result<ModulusSolution> {
    discrete_modulus_with_budget(family, p, spec, DEFAULT_ITERATION_BUDGET)
}

pub fn discrete_modulus_with_budget(
    family: &CurveFamily,
    p: f64,
    spec: &GridSpec,
    budget: usize,
) -> Result<ModulusSolution> {
    if p <= 1.0 {
        return Err(Error::ExponentRange {
            p,
            lo: 1.0,
            hi: f64::INFINITY,
        });
    }
    let mut rho = DensityGrid::zeros(spec.clone())?;
    if family.is_empty() {
        return Ok(ModulusSolution {
            value: 0.0,
            rho,
            certificate: SolveCertificate {
                converged: true,
                iterations: 0,
                max_violation: 0.0,
                admissible_value: 0.0,
                dual_lower_bound: 0.0,
                note: "empty family: modulus 0 by convention".into(),
            },
        });
    }

    let constraints = build_constraints(&rho, family)?;
    let m = constraints.len();
    let cellvol = rho.cell_volume();

    // Reverse index: cell -> (constraint, weight) for incremental updates.
    let mut touched: Vec<u32> = Vec::new();
    for c in &constraints {
        touched.extend_from_slice(&c.cells);
    }
    touched.sort_unstable();
    touched.dedup();
    let mut rev: std::collections::HashMap<u32, Vec<(u32, f64)>> = std::collections::HashMap::new();
    for (ci, c) in constraints.iter().enumerate() {
        for (cell, w) in c.cells.iter().zip(&c.weights) {
            rev.entry(*cell).or_default().push((ci as u32, *w));
        }
    }

    // Dual state: s = Aᵀλ on cells, ρ from stationarity, g = Aρ cached.
    let mut lambda = vec![0.0f64; m];
    let mut s = vec![0.0f64; rho.values.len()];
    let mut g = vec![0.0f64; m];
    let rho_of = |s_c: f64| -> f64 {
        if s_c <= 0.0 {
            0.0
        } else {
            (s_c / (p * cellvol)).powf(1.0 / (p - 1.0))
        }
    };

    let mut iterations = 0usize;
    let mut last_certified = f64::INFINITY;
    let mut converged = false;
    let mut stencil_rho: Vec<f64> = Vec::new();

    while iterations < budget {
        iterations += 1;

        // Most violated constraint, then worst over-satisfied one that
        // still carries a positive multiplier.
        let (mut target, mut worst_gap) = (usize::MAX, VIOLATION_TOL);
        for (i, &gi) in g.iter().enumerate() {
            let gap = 1.0 - gi;
            if gap > worst_gap {
                worst_gap = gap;
                target = i;
            }
        }
        if target == usize::MAX {
            for (i, &gi) in g.iter().enumerate() {
                if lambda[i] > 1e-14 {
                    let gap = gi - 1.0;
                    if gap > worst_gap {
                        worst_gap = gap;
                        target = i;
                    }
                }
            }
        }

        if target == usize::MAX {
            // All constraints met within tolerance and no multiplier
            // left to relax: the iteration is at its fixed point.
            converged = true;
            break;
        }

        let cons = &constraints[target];
        // Solve g_target(λ_target + δ) = 1 by safeguarded bisection in δ,
        // clipped below at −λ_target.
        stencil_rho.clear();
        let gval = |delta: f64, cache: &mut Vec<f64>| -> f64 {
            cache.clear();
            let mut total = 0.0;
            for (cell, w) in cons.cells.iter().zip(&cons.weights) {
                let sv = s[*cell as usize] + delta * *w;
                let r = rho_of(sv);
                cache.push(r);
                total += w * r;
            }
            total
        };
        let mut lo = -lambda[target];
        let mut scratch = Vec::with_capacity(cons.cells.len());
        let g_lo = gval(lo, &mut scratch);
        let delta = if g_lo >= 1.0 {
            lo
        } else {
            // Bracket upward from 0 (g is increasing in δ).
            let mut hi = lambda[target].max(1.0);
            let mut g_hi = gval(hi, &mut scratch);
            let mut guard = 0;
            while g_hi < 1.0 && guard < 200 {
                hi *= 2.0;
                g_hi = gval(hi, &mut scratch);
                guard += 1;
            }
            for _ in 0..64 {
                let mid = 0.5 * (lo + hi);
                if gval(mid, &mut scratch) < 1.0 {
                    lo = mid;
                } else {
                    hi = mid;
                }
            }
            hi
        };
        gval(delta, &mut stencil_rho);

        // Commit: update multiplier, dual field, density and cached
        // integrals of every constraint sharing a stencil cell.
        lambda[target] += delta;
        for ((cell, w), new_rho) in cons.cells.iter().zip(&cons.weights).zip(&stencil_rho) {
            let ci = *cell as usize;
            s[ci] += delta * *w;
            let old_rho = rho.values[ci];
            if *new_rho != old_rho {
                rho.values[ci] = *new_rho;
                let d_rho = *new_rho - old_rho;
                for &(other, ow) in rev.get(cell).into_iter().flatten() {
                    g[other as usize] += ow * d_rho;
                }
            }
        }

        if iterations.is_multiple_of(STALL_WINDOW) {
            let max_violation = g.iter().map(|gi| (1.0 - gi).max(0.0)).fold(0.0, f64::max);
            if max_violation <= VIOLATION_TOL {
                let certified = certified_value(&rho, &constraints, &g, p);
                if (last_certified - certified).abs()
                    <= OBJECTIVE_TOL * certified.abs().max(1e-300)
                {
                    converged = true;
                    break;
                }
                last_certified = certified;
            }
        }
    }

    // Final admissibility rescale: ρ / min ∫ρ is admissible for every
    // curve, so its energy upper-bounds the discrete optimum.
    let min_g = g.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_g.is_nan() || min_g <= 0.0 {
        return Err(Error::Invalid(
            "solver finished with a zero line integral; family is degenerate".into(),
        ));
    }
    let max_violation = g.iter().map(|gi| (1.0 - gi).max(0.0)).fold(0.0, f64::max);
    for v in &mut rho.values {
        *v /= min_g;
    }
    let admissible_value = rho.energy(p);

    // Weak duality: L(λ) = Σλ − (p−1)·cellvol·Σ (s_c/(p·cellvol))^{p/(p−1)}.
    let dual = lambda.iter().sum::<f64>()
        - (p - 1.0)
            * cellvol
            * s.iter()
                .map(|&sv| {
                    if sv <= 0.0 {
                        0.0
                    } else {
                        (sv / (p * cellvol)).powf(p / (p - 1.0))
                    }
                })
                .sum::<f64>();

    Ok(ModulusSolution {
        value: admissible_value,
        rho,
        certificate: SolveCertificate {
            converged,
            iterations,
            max_violation,
            admissible_value,
            dual_lower_bound: dual,
            note: "admissible_value bounds the discrete optimum from above; \
                   the continuum gap is an experiment policy"
                .into(),
        },
    })
}

fn certified_value(rho: &DensityGrid, _constraints: &[Constraint], g: &[f64], p: f64) -> f64 {
    let min_g = g.iter().cloned().fold(f64::INFINITY, f64::min);
    if min_g <= 0.0 {
        f64::INFINITY
    } else {
        rho.energy(p) / min_g.powf(p)
    }
}

fn build_constraints(rho: &DensityGrid, family: &CurveFamily) -> Result<Vec<Constraint>> {
    let max_step = 0.5 * rho.min_cell_edge();
    let mut out = Vec::with_capacity(family.len());
    let mut st = Vec::with_capacity(8);
    for gamma in &family.curves {
        if gamma.dim() != rho.dim() {
            return Err(Error::DimensionMismatch(gamma.dim(), rho.dim()));
        }
        let mut acc: std::collections::HashMap<u32, f64> = std::collections::HashMap::new();
        for i in 1..gamma.vertex_count() {
            let a = gamma.vertex(i - 1);
            let b = gamma.vertex(i);
            if !rho.inside(a) || !rho.inside(b) {
                let outp = if rho.inside(a) { b } else { a };
                return Err(Error::CurveOutsideGrid(outp.to_vec()));
            }
            let seg = dist(a, b);
            if seg == 0.0 {
                continue;
            }
            let pieces = (seg / max_step).ceil().max(1.0) as usize;
            let dl = seg / pieces as f64;
            for j in 0..pieces {
                let t = (j as f64 + 0.5) / pieces as f64;
                let mid: Vec<f64> = a.iter().zip(b).map(|(x, y)| x + t * (y - x)).collect();
                rho.stencil(&mid, &mut st);
                for &(c, w) in &st {
                    *acc.entry(c).or_insert(0.0) += w * dl;
                }
            }
        }
        let mut cells: Vec<u32> = acc.keys().copied().collect();
        cells.sort_unstable();
        let weights: Vec<f64> = cells.iter().map(|c| acc[c]).collect();
        if weights.iter().sum::<f64>() <= 0.0 {
            return Err(Error::DegenerateCurve);
        }
        out.push(Constraint { cells, weights });
    }
    Ok(out)
}

/// How ring families are sampled.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SampleMode {
    /// Straight radial segments in quasi-uniform directions.
    Radial,
    /// Radial curves with bounded tangential noise at interior vertices,
    /// reproducible for a fixed seed.
    RandomJoining,
}

/// `k` polylines joining the inner to the outer boundary sphere of a ring.
pub fn sample_ring_family(
    ring: &SphericalRing,
    k: usize,
    mode: SampleMode,
    seed: u64,
) -> Result<CurveFamily> {
    if k < 1 {
        return Err(Error::Invalid("need at least one curve".into()));
    }
    let n = ring.dim();
    if !(2..=3).contains(&n) {
        return Err(Error::GridDimension(n));
    }
    let dirs = sphere_directions(n, k);
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut curves = Vec::with_capacity(k);
    for dir in dirs {
        let vertex_at = |r: f64, offset: &[f64]| -> Vec<f64> {
            (0..n)
                .map(|d| ring.center[d] + r * dir[d] + offset.get(d).copied().unwrap_or(0.0))
                .collect()
        };
        match mode {
            SampleMode::Radial => {
                let verts = vec![vertex_at(ring.r1, &[]), vertex_at(ring.r2, &[])];
                curves.push(Polyline::new(verts)?);
            }
            SampleMode::RandomJoining => {
                let segments = 8;
                let noise_scale = 0.1 * (ring.r2 - ring.r1);
                let mut verts = Vec::with_capacity(segments + 1);
                for i in 0..=segments {
                    let t = i as f64 / segments as f64;
                    let r = ring.r1 + t * (ring.r2 - ring.r1);
                    let offset: Vec<f64> = if i == 0 || i == segments {
                        vec![0.0; n]
                    } else {
                        // Tangential perturbation: random vector minus its
                        // radial component, clamped in size.
                        let raw: Vec<f64> =
                            (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
                        let radial: f64 = raw.iter().zip(&dir).map(|(a, b)| a * b).sum();
                        raw.iter()
                            .zip(&dir)
                            .map(|(a, b)| (a - radial * b) * noise_scale)
                            .collect()
                    };
                    verts.push(vertex_at(r, &offset));
                }
                curves.push(Polyline::new(verts)?);
            }
        }
    }
    Ok(CurveFamily::new(curves, format!("ring[{},{}]", ring.r1, ring.r2)))
}

/// Quasi-uniform directions: equal angles in the plane, a Fibonacci
/// lattice on the 2-sphere.
fn sphere_directions(n: usize, k: usize) -> Vec<Vec<f64>> {
    match n {
        2 => (0..k)
            .map(|i| {
                let phi = 2.0 * std::f64::consts::PI * i as f64 / k as f64;
                vec![phi.cos(), phi.sin()]
            })
            .collect(),
        3 => {
            let golden = (1.0 + 5.0_f64.sqrt()) / 2.0;
            (0..k)
                .map(|i| {
                    let z = 1.0 - 2.0 * (i as f64 + 0.5) / k as f64;
                    let r = (1.0 - z * z).max(0.0).sqrt();
                    let phi = 2.0 * std::f64::consts::PI * i as f64 / golden;
                    vec![r * phi.cos(), r * phi.sin(), z]
                })
                .collect()
        }
        _ => unreachable!("dimension checked by caller"),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    fn segment(a: [f64; 2], b: [f64; 2]) -> Polyline {
        Polyline::new(vec![a.to_vec(), b.to_vec()]).unwrap()
    }

    #[test]
    fn polyline_validation() {
        assert!(Polyline::new(vec![vec![0.0, 0.0]]).is_err());
        assert!(Polyline::new(vec![vec![0.0, 0.0], vec![0.0, 0.0]]).is_err());
        assert!(Polyline::new(vec![vec![0.0, 0.0], vec![1.0, 0.0]]).is_ok());
        let p = Polyline::new(vec![vec![0.0, 0.0], vec![3.0, 4.0]]).unwrap();
        assert_relative_eq!(p.length(), 5.0);
    }

    #[test]
    fn line_integral_constant_density() {
        let spec = GridSpec::cube(-1.0, 3.0, 2, 32);
        let mut rho = DensityGrid::zeros(spec).unwrap();
        rho.values.iter_mut().for_each(|v| *v = 2.5);
        let gamma = segment([0.0, 0.0], [2.0, 0.0]);
        let li = line_integral(&rho, &gamma).unwrap();
        assert_relative_eq!(li, 5.0, max_relative = 1e-10);
    }

    #[test]
    fn line_integral_zero_density() {
        let spec = GridSpec::cube(-1.0, 3.0, 2, 16);
        let rho = DensityGrid::zeros(spec).unwrap();
        let gamma = segment([0.0, 0.0], [2.0, 1.0]);
        assert_eq!(line_integral(&rho, &gamma).unwrap(), 0.0);
    }

    #[test]
    fn line_integral_norm_density() {
        // ρ(x) = |x| along the segment (1,0) → (2,0): ∫_1^2 t dt = 3/2.
        let spec = GridSpec::cube(-3.0, 3.0, 2, 192);
        let mut rho = DensityGrid::zeros(spec.clone()).unwrap();
        let res = spec.resolution[0];
        for i in 0..res {
            for j in 0..res {
                let x = spec.lo[0] + (i as f64 + 0.5) * 6.0 / res as f64;
                let y = spec.lo[1] + (j as f64 + 0.5) * 6.0 / res as f64;
                rho.values[i * res + j] = (x * x + y * y).sqrt();
            }
        }
        let gamma = segment([1.0, 0.0], [2.0, 0.0]);
        let li = line_integral(&rho, &gamma).unwrap();
        assert_relative_eq!(li, 1.5, max_relative = 1e-3);
    }

    #[test]
    fn line_integral_outside_box_errors() {
        let spec = GridSpec::cube(0.0, 1.0, 2, 8);
        let rho = DensityGrid::zeros(spec).unwrap();
        let gamma = segment([0.5, 0.5], [2.0, 0.5]);
        assert!(matches!(
            line_integral(&rho, &gamma),
            Err(Error::CurveOutsideGrid(_))
        ));
    }

    #[test]
    fn empty_family_modulus_zero() {
        let spec = GridSpec::cube(0.0, 1.0, 2, 16);
        let sol = discrete_modulus(&CurveFamily::empty("empty"), 1.7, &spec).unwrap();
        assert_eq!(sol.value, 0.0);
        assert!(sol.certificate.converged);
    }

    #[test]
    fn horizontal_family_matches_extremal_value() {
        // All horizontal lines of the rectangle [0,a]×[0,b], one per grid
        // row: extremal density ρ ≡ 1/a, modulus b·a^{1−p}.
        let (a, b) = (2.0, 1.0);
        let res = 48;
        let spec = GridSpec {
            lo: vec![0.0, 0.0],
            hi: vec![a, b],
            resolution: vec![res, res],
        };
        for &p in &[1.3, 2.0, 2.6] {
            let curves: Vec<Polyline> = (0..res)
                .map(|j| {
                    let y = (j as f64 + 0.5) * b / res as f64;
                    segment([0.0, y], [a, y])
                })
                .collect();
            let family = CurveFamily::new(curves, "rows");
            let sol = discrete_modulus(&family, p, &spec).unwrap();
            let expected = b * a.powf(1.0 - p);
            assert_relative_eq!(sol.value, expected, max_relative = 0.05);
            assert!(sol.certificate.dual_lower_bound <= sol.value * (1.0 + 1e-9));
        }
    }

    #[test]
    fn exhausted_budget_is_flagged_but_admissible() {
        let ring = SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0).unwrap();
        let fam = sample_ring_family(&ring, 32, SampleMode::Radial, 0).unwrap();
        let spec = GridSpec::covering(&fam, 32, 2).unwrap();
        let sol = discrete_modulus_with_budget(&fam, 1.5, &spec, 40).unwrap();
        assert!(!sol.certificate.converged);
        // The returned density is rescaled to admissibility regardless.
        for curve in &fam.curves {
            assert!(line_integral(&sol.rho, curve).unwrap() >= 1.0 - 1e-9);
        }
        assert!(sol.value >= sol.certificate.dual_lower_bound - 1e-12);
    }

    #[test]
    fn single_radial_curve_is_a_segment() {
        let ring = SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0).unwrap();
        let fam = sample_ring_family(&ring, 1, SampleMode::Radial, 0).unwrap();
        assert_eq!(fam.len(), 1);
        assert_relative_eq!(fam.curves[0].length(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn random_joining_is_seed_reproducible() {
        let ring = SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0).unwrap();
        let a = sample_ring_family(&ring, 8, SampleMode::RandomJoining, 7).unwrap();
        let b = sample_ring_family(&ring, 8, SampleMode::RandomJoining, 7).unwrap();
        assert_eq!(a, b);
        let c = sample_ring_family(&ring, 8, SampleMode::RandomJoining, 8).unwrap();
        assert_ne!(a, c);
    }

    #[test]
    fn json_round_trip_and_empty_family() {
        let fam = CurveFamily::new(
            vec![segment([0.0, 0.0], [1.0, 0.5]), segment([1.0, 1.0], [0.0, 2.0])],
            "pair",
        );
        let text = fam.to_json().unwrap();
        let back = CurveFamily::from_json(&text, "pair").unwrap();
        assert_eq!(fam, back);
        let empty = CurveFamily::from_json("[]", "empty").unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn density_binary_round_trip() {
        let spec = GridSpec::cube(-1.0, 1.0, 2, 8);
        let mut rho = DensityGrid::zeros(spec).unwrap();
        for (i, v) in rho.values.iter_mut().enumerate() {
            *v = (i as f64).sqrt();
        }
        let bytes = rho.to_binary();
        let back = DensityGrid::from_binary(&bytes).unwrap();
        assert_eq!(rho, back);
        assert!(DensityGrid::from_binary(&bytes[..10]).is_err());
    }

    #[test]
    fn map_refined_inserts_points() {
        let fam = CurveFamily::new(vec![segment([0.0, 0.0], [1.0, 0.0])], "one");
        let mapped = fam
            .map_refined(3, |x| Ok(x.to_vec()))
            .unwrap();
        assert_eq!(mapped.curves[0].vertex_count(), 5);
        assert_relative_eq!(mapped.curves[0].length(), 1.0, max_relative = 1e-12);
    }

    #[test]
    fn truncate_produces_subcurve() {
        let p = segment([0.0, 0.0], [4.0, 0.0]);
        let sub = p.truncate(0.25, 0.75).unwrap();
        assert_relative_eq!(sub.length(), 2.0, max_relative = 1e-12);
        assert_relative_eq!(sub.vertex(0)[0], 1.0, max_relative = 1e-12);
    }
}
