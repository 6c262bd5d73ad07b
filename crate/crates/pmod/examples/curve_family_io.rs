//! The two wire formats: curve families as plain JSON arrays of vertex
//! lists, and density grids as flat little-endian binary (dims header,
//! box, then row-major f64 values).
//!
//! Run with `cargo run --release --example curve_family_io`.

use pmod::geometry::SphericalRing;
use pmod::modsolver::{
    discrete_modulus, sample_ring_family, CurveFamily, DensityGrid, GridSpec, SampleMode,
};

fn main() -> pmod::Result<()> {
    let ring = SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0)?;
    let family = sample_ring_family(&ring, 12, SampleMode::RandomJoining, 42)?;

    // JSON round trip.
    let text = family.to_json()?;
    println!(
        "family of {} curves serializes to {} bytes of JSON; first 80:",
        family.len(),
        text.len()
    );
    println!("  {}...", &text[..80.min(text.len())]);
    let back = CurveFamily::from_json(&text, "roundtrip")?;
    assert_eq!(family.curves, back.curves);
    println!("JSON round trip: identical\n");

    // Solve and export the optimal density as flat binary.
    let spec = GridSpec::covering(&family, 48, 2)?;
    let solution = discrete_modulus(&family, 1.5, &spec)?;
    let bytes = solution.rho.to_binary();
    println!(
        "discrete modulus {:.6} (converged: {}); density grid {}x{} -> {} bytes",
        solution.value,
        solution.certificate.converged,
        solution.rho.spec.resolution[0],
        solution.rho.spec.resolution[1],
        bytes.len()
    );
    let reloaded = DensityGrid::from_binary(&bytes)?;
    assert_eq!(reloaded, solution.rho);
    println!("binary round trip: identical");

    // The reloaded density evaluates anywhere in its box; probe a point
    // on the first curve, where the optimal density concentrates.
    let probe = [1.5, 0.06];
    println!("rho({probe:?}) = {:.6}", reloaded.eval(&probe));
    Ok(())
}
