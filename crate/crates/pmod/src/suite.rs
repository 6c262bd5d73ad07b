//! The reproducibility suite: every headline check of the toolkit as one
//! runnable list, shared by the `reproduce` command and the acceptance
//! test target. Each criterion reports pass/fail with deterministic
//! detail text (no timing strings), so a seeded run serializes to
//! byte-identical JSON.

use crate::bounds;
use crate::error::Result;
use crate::fields::{self, PsiFamily, RadialProfile, ScalarField, Verdict};
use crate::geometry::{unit_ball_volume, SphericalRing};
use crate::mappings::{
    self, dilatation, equicontinuity_probe, DerivativeScheme, MappingSpec, ProbeMetric,
    VerifySetup,
};
use crate::modsolver::{
    discrete_modulus, sample_ring_family, CurveFamily, GridSpec, Polyline, SampleMode,
};
use rand::{Rng, SeedableRng};
use serde::{Deserialize, Serialize};
use std::fmt::Write as _;
use std::time::Instant;

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: String,
    pub passed: bool,
    pub detail: String,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct SuiteSummary {
    pub seed: u64,
    pub fast: bool,
    pub results: Vec<CriterionResult>,
    pub all_passed: bool,
}

impl SuiteSummary {
    /// One line per criterion, flagged PASS/FAIL.
    pub fn table(&self) -> String {
        let mut out = String::new();
        for r in &self.results {
            let _ = writeln!(
                out,
                "[{}] {} — {}",
                if r.passed { "PASS" } else { "FAIL" },
                r.id,
                r.detail
            );
        }
        let _ = writeln!(
            out,
            "{} of {} criteria passed",
            self.results.iter().filter(|r| r.passed).count(),
            self.results.len()
        );
        out
    }
}

/// Run every criterion. `fast` shrinks the solver cases (a smoke run);
/// the acceptance gate always runs with `fast = false`.
pub fn run_all(seed: u64, fast: bool) -> SuiteSummary {
    type Check = fn(u64, bool) -> Result<(bool, String)>;
    let checks: Vec<(&str, Check)> = vec![
        ("1 ring modulus oracle agreement", c1_ring_oracle),
        ("2 winding dilatation", c2_winding_dilatation),
        ("3 log-spiral dilatation bound", c3_log_spiral),
        ("4 ring inequality verifier sanity", c4_verifier),
        ("5 exponential counterexample", c5_counterexample),
        ("6 modulus axioms", c6_axioms),
        ("7 Fubini and Hölder identities", c7_fubini_hoelder),
        ("8 criterion suite verdicts", c8_criteria),
        ("9 bound evaluator algebra", c9_bound_algebra),
        ("10 seeded determinism", c10_determinism),
    ];
    let mut results = Vec::with_capacity(checks.len());
    for (id, check) in checks {
        let (passed, detail) = match check(seed, fast) {
            Ok(pair) => pair,
            Err(e) => (false, format!("errored: {e}")),
        };
        results.push(CriterionResult {
            id: id.to_string(),
            passed,
            detail,
        });
    }
    let all_passed = results.iter().all(|r| r.passed);
    SuiteSummary {
        seed,
        fast,
        results,
        all_passed,
    }
}

fn solver_scale(fast: bool) -> (usize, usize) {
    // Curve counts keep the sampled family denser than the grid pitch;
    // sparser families undercut the continuum modulus by tube packing.
    if fast {
        (64, 192)
    } else {
        (128, 256)
    }
}

fn c1_ring_oracle(_seed: u64, fast: bool) -> Result<(bool, String)> {
    let (resolution, curves) = solver_scale(fast);
    let ring = SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0)?;
    let mut detail = String::new();
    let mut ok = true;
    let mut times_ok = true;
    for p in [1.2, 1.5, 1.8, 2.0] {
        let oracle = bounds::ring_modulus_oracle(ring.r1, ring.r2, 2, p)?;
        let family = sample_ring_family(&ring, curves, SampleMode::Radial, 0)?;
        let spec = GridSpec::covering(&family, resolution, 2)?;
        let start = Instant::now();
        let sol = discrete_modulus(&family, p, &spec)?;
        times_ok &= start.elapsed().as_secs_f64() < 60.0;
        let gap = (sol.value - oracle) / oracle;
        ok &= gap.abs() <= 0.05 && sol.certificate.converged;
        let _ = write!(detail, "p={p}: gap {:+.4}%; ", 100.0 * gap);
    }
    ok &= times_ok;
    // Exact conformal case: oracle for (1, e) at p = n = 2 is 2π.
    let oracle_e = bounds::ring_modulus_oracle(1.0, std::f64::consts::E, 2, 2.0)?;
    let two_pi = 2.0 * std::f64::consts::PI;
    let exact_ok = (oracle_e - two_pi).abs() <= 1e-12 * two_pi;
    ok &= exact_ok;
    let ring_e = SphericalRing::new(vec![0.0, 0.0], 1.0, std::f64::consts::E)?;
    let fam_e = sample_ring_family(&ring_e, curves, SampleMode::Radial, 0)?;
    let spec_e = GridSpec::covering(&fam_e, resolution, 2)?;
    let sol_e = discrete_modulus(&fam_e, 2.0, &spec_e)?;
    let gap_e = (sol_e.value - oracle_e) / oracle_e;
    ok &= gap_e.abs() <= 0.05;
    let _ = write!(
        detail,
        "oracle(1,e,p=2)=2π exact: {exact_ok}; discrete gap {:+.4}%; runtimes under 60 s: {times_ok}",
        100.0 * gap_e
    );
    Ok((ok, detail))
}

fn c2_winding_dilatation(seed: u64, _fast: bool) -> Result<(bool, String)> {
    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0xD11A);
    let mut worst = 0.0_f64;
    for n in [2usize, 3] {
        for &m in &[1u32, 2, 3, 5] {
            let map = MappingSpec::Winding { m, n };
            for &p in &[1.2, 1.5, 1.8] {
                let mut count = 0;
                while count < 1000 {
                    let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-3.0..3.0)).collect();
                    if x[n - 2] * x[n - 2] + x[n - 1] * x[n - 1] < 1e-2 {
                        continue;
                    }
                    count += 1;
                    let d = dilatation(&map, &x, p, DerivativeScheme::Analytic)?;
                    worst = worst.max((d.k_ip - m as f64).abs());
                }
            }
        }
    }
    let ok = worst <= 1e-6;
    Ok((
        ok,
        format!(
            "max |K_Ip − m| = {worst:.3e} over 1000 points × n ∈ {{2,3}} × m ∈ {{1,2,3,5}} × p ∈ {{1.2,1.5,1.8}}"
        ),
    ))
}

fn c3_log_spiral(seed: u64, _fast: bool) -> Result<(bool, String)> {
    let mut detail = String::new();
    let mut ok = true;
    for n in [2usize, 3] {
        let bound = (1.0 + 2.0_f64.sqrt()).powi(n as i32);
        let map = MappingSpec::LogSpiral { n };
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed ^ 0x5417 ^ n as u64);
        let mut worst = 0.0_f64;
        let mut count = 0;
        while count < 1000 {
            let x: Vec<f64> = (0..n).map(|_| rng.gen_range(-1.0..1.0)).collect();
            let r2 = x.iter().map(|c| c * c).sum::<f64>();
            // Unit-ball points, avoiding the axis tube where the finite
            // difference step would cross the rotation singularity.
            if r2 >= 1.0 || x[0] * x[0] + x[1] * x[1] < 0.05 * 0.05 {
                continue;
            }
            count += 1;
            let d = dilatation(&map, &x, n as f64, DerivativeScheme::Auto)?;
            let ratio = d.jacobian / d.min_stretch.powi(n as i32);
            worst = worst.max(ratio);
        }
        ok &= worst <= bound + 1e-6;
        let _ = write!(detail, "n={n}: max J/l^n = {worst:.9} vs (1+√2)^n = {bound:.9}; ");
    }
    Ok((ok, detail))
}

fn c4_verifier(seed: u64, fast: bool) -> Result<(bool, String)> {
    let (resolution, curves) = solver_scale(fast);
    let setup = VerifySetup {
        k_curves: curves,
        resolution,
        refine: 8,
        seed,
    };
    let p = 1.5;
    let origin_ring = SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0)?;
    let mut detail = String::new();

    // Winding maps with the matching constant majorant must be accepted.
    let mut ok = true;
    for m in [2u32, 3] {
        let map = MappingSpec::Winding { m, n: 2 };
        let q = ScalarField::constant(m as f64);
        let eta = PsiFamily::Constant(1.0 / (origin_ring.r2 - origin_ring.r1));
        let rep = mappings::verify_ring_pq(&map, &origin_ring, p, &q, &eta, "const", &setup)?;
        ok &= rep.verdict == Verdict::Satisfied;
        let _ = write!(detail, "g2(m={m}) vs Q≡{m}: {:?} (margin {:+.4}); ", rep.verdict, rep.margin);
    }

    // The under-weighted case Q ≡ 1 for the triple winding at the origin,
    // tried with the refutation-optimal (extremal) η.
    let map3 = MappingSpec::Winding { m: 3, n: 2 };
    let q1 = ScalarField::constant(1.0);
    let eta_ex = PsiFamily::extremal(&q1, &origin_ring.center, 2, p, origin_ring.r1, origin_ring.r2)?;
    let rep_origin =
        mappings::verify_ring_pq(&map3, &origin_ring, p, &q1, &eta_ex, "extremal", &setup)?;
    let origin_violated = rep_origin.verdict == Verdict::Violated;
    let _ = write!(
        detail,
        "g2(m=3) vs Q≡1 at the centered ring: {:?} (margin {:+.6}); ",
        rep_origin.verdict, rep_origin.margin
    );

    // Same test at a ring centered away from the winding axis, where the
    // tangential stretch is not absorbed by symmetry.
    let off_ring = SphericalRing::new(vec![5.0, 0.0], 1.0, 2.0)?;
    let eta_ex_off = PsiFamily::extremal(&q1, &off_ring.center, 2, p, off_ring.r1, off_ring.r2)?;
    let rep_off = mappings::verify_ring_pq(&map3, &off_ring, p, &q1, &eta_ex_off, "extremal", &setup)?;
    let _ = write!(
        detail,
        "same at an off-axis ring: {:?} (margin {:+.4})",
        rep_off.verdict, rep_off.margin
    );

    ok &= origin_violated;
    Ok((ok, detail))
}

fn c5_counterexample(_seed: u64, _fast: bool) -> Result<(bool, String)> {
    let deltas = [0.5, 0.25, 0.125];
    let exp_family = MappingSpec::parse_family("exp:m=1..10", 2)?;
    let probe = equicontinuity_probe(&exp_family, &[0.0, 0.0], &deltas, ProbeMetric::Euclidean)?;
    let osc = |id: &str, d: f64| {
        probe
            .rows
            .iter()
            .find(|r| r.map_id == id && r.delta == d)
            .map(|r| r.oscillation)
            .unwrap_or(0.0)
    };
    let factor = osc("exp:m=10", 0.5) / osc("exp:m=1", 0.5);
    let exp_ok = factor > 50.0;

    let winding_family = MappingSpec::parse_family("g2:m=1..5", 2)?;
    let wprobe =
        equicontinuity_probe(&winding_family, &[0.0, 0.0], &deltas, ProbeMetric::Euclidean)?;
    let mut wfactor = 0.0_f64;
    for &d in &deltas {
        let col: Vec<f64> = wprobe
            .rows
            .iter()
            .filter(|r| r.delta == d)
            .map(|r| r.oscillation)
            .collect();
        let hi = col.iter().cloned().fold(0.0_f64, f64::max);
        let lo = col.iter().cloned().fold(f64::INFINITY, f64::min);
        wfactor = wfactor.max(hi / lo);
    }
    let winding_ok = wfactor <= 2.0;
    Ok((
        exp_ok && winding_ok,
        format!(
            "exp column grows ×{factor:.1} (need > 50); winding columns stay within ×{wfactor:.3} (need ≤ 2)"
        ),
    ))
}

fn c6_axioms(_seed: u64, fast: bool) -> Result<(bool, String)> {
    let resolution = if fast { 48 } else { 64 };
    let curves = 64;
    let p = 1.5;
    let n = 2usize;
    let ring = SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0)?;
    let full = sample_ring_family(&ring, curves, SampleMode::Radial, 0)?;
    let spec = GridSpec::covering(&full, resolution, 2)?;

    let solve = |family: &CurveFamily, spec: &GridSpec| -> Result<(f64, f64)> {
        let sol = discrete_modulus(family, p, spec)?;
        let gap = (sol.certificate.admissible_value - sol.certificate.dual_lower_bound).abs();
        Ok((sol.value, gap))
    };

    let (m_full, gap_full) = solve(&full, &spec)?;

    // Monotonicity under subsampling.
    let sub = CurveFamily::new(
        full.curves.iter().step_by(2).cloned().collect(),
        "sub",
    );
    let (m_sub, gap_sub) = solve(&sub, &spec)?;
    let mono_ok = m_sub <= m_full + 1e-4 + gap_sub + gap_full;

    // Finite subadditivity over an angular split.
    let half_a = CurveFamily::new(full.curves[..curves / 2].to_vec(), "a");
    let half_b = CurveFamily::new(full.curves[curves / 2..].to_vec(), "b");
    let (m_a, gap_a) = solve(&half_a, &spec)?;
    let (m_b, gap_b) = solve(&half_b, &spec)?;
    let sub_ok = m_full <= m_a + m_b + 1e-4 + gap_full + gap_a + gap_b;

    // Minorization: truncated middles are subcurves of every original.
    let truncated = CurveFamily::new(
        full.curves
            .iter()
            .map(|c| c.truncate(0.25, 0.75))
            .collect::<Result<Vec<Polyline>>>()?,
        "mid",
    );
    let (m_trunc, gap_trunc) = solve(&truncated, &spec)?;
    let minor_ok = m_full <= m_trunc + 1e-4 + gap_full + gap_trunc;

    // Scaling by λ = 2 multiplies the modulus by λ^{n−p}.
    let lambda = 2.0_f64;
    let scaled_curves = full
        .curves
        .iter()
        .map(|c| {
            Polyline::new(
                c.vertices()
                    .into_iter()
                    .map(|v| v.into_iter().map(|x| lambda * x).collect())
                    .collect(),
            )
        })
        .collect::<Result<Vec<_>>>()?;
    let scaled = CurveFamily::new(scaled_curves, "scaled");
    let scaled_spec = GridSpec {
        lo: spec.lo.iter().map(|x| lambda * x).collect(),
        hi: spec.hi.iter().map(|x| lambda * x).collect(),
        resolution: spec.resolution.clone(),
    };
    let (m_scaled, _) = solve(&scaled, &scaled_spec)?;
    let predicted = m_full * lambda.powf(n as f64 - p);
    let scale_ok = ((m_scaled - predicted) / predicted).abs() <= 0.05;

    let ok = mono_ok && sub_ok && minor_ok && scale_ok;
    Ok((
        ok,
        format!(
            "monotone {m_sub:.4} ≤ {m_full:.4}: {mono_ok}; subadditive {m_full:.4} ≤ {:.4}: {sub_ok}; \
             minorized {m_full:.4} ≤ {m_trunc:.4}: {minor_ok}; scaling gap {:+.3}%: {scale_ok}",
            m_a + m_b,
            100.0 * (m_scaled - predicted) / predicted
        ),
    ))
}

fn c7_fubini_hoelder(_seed: u64, _fast: bool) -> Result<(bool, String)> {
    // Fubini route: the radial factorization against a direct cartesian
    // quadrature of the plane integral, on a smooth anisotropic field.
    let ring = SphericalRing::new(vec![0.0, 0.0], 0.5, 1.5)?;
    let p = 1.5;
    let q = ScalarField::CoordSquared { axis: 0 };
    let psi = PsiFamily::Reciprocal;
    let via_factorization = fields::ring_integral(&q, &psi, &ring, p)?.value;
    let direct = cartesian_ring_integral(&ring, p, |x| x[0] * x[0]);
    let fubini_gap = ((via_factorization - direct) / direct).abs();
    let fubini_ok = fubini_gap <= 1e-4;

    // Hölder inequality on 20 radial profiles.
    let (n, hp) = (2usize, 1.5);
    let (eps, eps0) = (0.1, 0.9);
    let mut profiles: Vec<RadialProfile> = Vec::new();
    for &alpha in &[-0.8, -0.4, 0.0, 0.4, 0.9] {
        for &scale in &[0.5, 2.0] {
            profiles.push(RadialProfile::Power { scale, alpha });
        }
    }
    for &k in &[0.5, 1.0, 1.5, 2.0, 3.0] {
        for &scale in &[0.7, 1.3] {
            profiles.push(RadialProfile::LogPow { scale, k });
        }
    }
    let mut hoelder_ok = true;
    let mut worst_ratio = 0.0_f64;
    for profile in &profiles {
        let integrand = |t: f64| {
            crate::ext::div(
                1.0,
                crate::ext::mul(t, crate::ext::powf(profile.eval(t), 1.0 / (n as f64 - 1.0))),
            )
        };
        let lhs = crate::quad::integrate_geometric(integrand, eps, eps0, 1e-9, 4096).value;
        let rhs_core = crate::quad::integrate_geometric(
            |t| integrand(t).powf(n as f64 / hp),
            eps,
            eps0,
            1e-9,
            4096,
        )
        .value;
        let rhs = rhs_core.powf(hp / n as f64) * (eps0 - eps).powf((n as f64 - hp) / n as f64);
        let ratio = lhs / rhs;
        worst_ratio = worst_ratio.max(ratio);
        hoelder_ok &= ratio <= 1.0 + 1e-6;
    }
    Ok((
        fubini_ok && hoelder_ok,
        format!(
            "Fubini relative gap {fubini_gap:.2e} (need ≤ 1e-4); Hölder worst lhs/rhs = {worst_ratio:.6} over {} profiles",
            profiles.len()
        ),
    ))
}

/// Direct midpoint quadrature of `∫_ring g(x)·|x|^{-p} dm(x)` on a
/// cartesian grid, with 16×16 subsampling of cells cut by the ring
/// boundary. Independent of the radial factorization path.
fn cartesian_ring_integral(ring: &SphericalRing, p: f64, g: impl Fn(&[f64]) -> f64) -> f64 {
    let cells = 3000usize;
    let span = 2.0 * ring.r2;
    let h = span / cells as f64;
    let (cx, cy) = (ring.center[0], ring.center[1]);
    let mut total = 0.0;
    for i in 0..cells {
        for j in 0..cells {
            let x = cx - ring.r2 + (i as f64 + 0.5) * h;
            let y = cy - ring.r2 + (j as f64 + 0.5) * h;
            let r = ((x - cx) * (x - cx) + (y - cy) * (y - cy)).sqrt();
            let half_diag = h / std::f64::consts::SQRT_2;
            if r + half_diag < ring.r1 || r - half_diag > ring.r2 {
                continue;
            }
            if r - half_diag > ring.r1 && r + half_diag < ring.r2 {
                total += g(&[x, y]) * r.powf(-p) * h * h;
            } else {
                // Boundary cell: subsample the indicator.
                let s = 16;
                let hs = h / s as f64;
                for a in 0..s {
                    for b in 0..s {
                        let xs = x - h / 2.0 + (a as f64 + 0.5) * hs;
                        let ys = y - h / 2.0 + (b as f64 + 0.5) * hs;
                        let rs = ((xs - cx) * (xs - cx) + (ys - cy) * (ys - cy)).sqrt();
                        if rs > ring.r1 && rs < ring.r2 {
                            total += g(&[xs, ys]) * rs.powf(-p) * hs * hs;
                        }
                    }
                }
            }
        }
    }
    total
}

fn c8_criteria(_seed: u64, _fast: bool) -> Result<(bool, String)> {
    let origin = vec![0.0, 0.0];
    let eps: Vec<f64> = (1..=6).map(|k| 10.0_f64.powi(-k)).collect();

    let fmo_const = fields::criterion_fmo(&ScalarField::constant(3.0), &origin, &eps)?;
    let log_field = ScalarField::radial(origin.clone(), RadialProfile::LogPow { scale: 1.0, k: 1.0 });
    let fmo_log = fields::criterion_fmo(&log_field, &origin, &eps)?;
    let recip_field =
        ScalarField::radial(origin.clone(), RadialProfile::Power { scale: 1.0, alpha: -1.0 });
    let fmo_recip = fields::criterion_fmo(&recip_field, &origin, &eps)?;

    let delta0 = 0.25;
    let div = fields::criterion_divergence(&ScalarField::constant(1.0), &origin, delta0, 20)?;
    let mut div_form_ok = div.verdict == Verdict::Satisfied;
    for &(d, f) in &div.evidence {
        div_form_ok &= ((f - (delta0 / d).ln()) / (delta0 / d).ln()).abs() <= 1e-5;
    }

    let ls = fields::criterion_ls(&ScalarField::constant(1.0), 4.0, 1.5, &origin, 1.0)?;
    let threshold_exact = ls.extrapolation_note.contains("threshold n/(n−p) = 4.000000");

    let ok = fmo_const.verdict == Verdict::Satisfied
        && fmo_log.verdict == Verdict::Satisfied
        && fmo_recip.verdict == Verdict::Violated
        && div_form_ok
        && ls.verdict == Verdict::Satisfied
        && threshold_exact;
    Ok((
        ok,
        format!(
            "FMO: const {:?}, log(1/|x|) {:?}, 1/|x| {:?}; divergence(Q≡1) {:?} with F = ln(δ0/δ); L^s threshold 4 exact: {threshold_exact}",
            fmo_const.verdict, fmo_log.verdict, fmo_recip.verdict, div.verdict
        ),
    ))
}

fn c9_bound_algebra(_seed: u64, _fast: bool) -> Result<(bool, String)> {
    // The distortion bound must equal the composition of the capacity
    // upper bound with the diameter inversion of the capacity lower bound.
    let mut worst = 0.0_f64;
    for &(n, p, q) in &[(2usize, 1.5, 1.0), (2, 1.7, 1.7), (3, 2.5, 1.2), (3, 2.2, 2.0)] {
        for &(k, i, r, c1) in &[(1.0, std::f64::consts::E, 1.0, 1.0), (3.0, 7.5, 2.0, 0.6)] {
            let nf = n as f64;
            let direct = bounds::distortion_bound_general(r, k, i, n, p, q, c1)?;
            let cap = bounds::cap_upper_criterion(k * i.powf(q), i, p)?;
            let m_a = unit_ball_volume(n) * r.powf(nf);
            let composed = (cap.powf(nf - 1.0) * m_a.powf(1.0 - nf + p) / c1).powf(1.0 / p);
            worst = worst.max(((direct - composed) / composed).abs());
        }
    }
    let algebra_ok = worst <= 1e-12;

    let plug = bounds::cap_lower_volume(1.0, 3, 1.5)?;
    let exact = 6.0 * std::f64::consts::PI.sqrt();
    let plug_ok = ((plug - exact) / exact).abs() <= 1e-12;
    Ok((
        algebra_ok && plug_ok,
        format!(
            "composition identity worst relative gap {worst:.2e}; volume bound at (n=3, p=3/2, m=1) matches 6√π to {:.2e}",
            ((plug - exact) / exact).abs()
        ),
    ))
}

fn c10_determinism(seed: u64, _fast: bool) -> Result<(bool, String)> {
    // Seeded pipeline run twice must serialize identically: noisy family
    // sampling, a solve, and a probe.
    let run = || -> Result<String> {
        let ring = SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0)?;
        let fam = sample_ring_family(&ring, 24, SampleMode::RandomJoining, seed)?;
        let spec = GridSpec::covering(&fam, 48, 2)?;
        let sol = discrete_modulus(&fam, 1.5, &spec)?;
        let probe = equicontinuity_probe(
            &MappingSpec::parse_family("exp:m=1..4", 2)?,
            &[0.0, 0.0],
            &[0.5, 0.25],
            ProbeMetric::Chordal,
        )?;
        let blob = serde_json::json!({
            "family": fam,
            "value": sol.value,
            "certificate": sol.certificate,
            "rho": sol.rho.to_binary(),
            "probe": probe,
        });
        Ok(serde_json::to_string(&blob)?)
    };
    let a = run()?;
    let b = run()?;
    let ok = a == b;
    Ok((
        ok,
        format!("two seeded runs serialized to {} bytes; byte-identical: {ok}", a.len()),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn fast_suite_structure() {
        // The full suite runs in the acceptance target; here only check
        // that the list is complete and the table renders.
        let checks = [
            "1 ring modulus oracle agreement",
            "10 seeded determinism",
        ];
        let summary = SuiteSummary {
            seed: 7,
            fast: true,
            results: checks
                .iter()
                .map(|c| CriterionResult {
                    id: c.to_string(),
                    passed: true,
                    detail: "x".into(),
                })
                .collect(),
            all_passed: true,
        };
        let table = summary.table();
        assert!(table.contains("[PASS] 1 ring modulus oracle agreement"));
        assert!(table.contains("2 of 2 criteria passed"));
    }
}
