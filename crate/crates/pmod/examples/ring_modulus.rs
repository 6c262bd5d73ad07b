//! Discrete p-modulus of the radial family of a spherical ring against
//! the exact closed-form value.
//!
//! Run with `cargo run --release --example ring_modulus`.

use pmod::bounds::ring_modulus_oracle;
use pmod::geometry::SphericalRing;
use pmod::modsolver::{discrete_modulus, sample_ring_family, GridSpec, SampleMode};
use std::time::Instant;

fn main() -> pmod::Result<()> {
    let ring = SphericalRing::new(vec![0.0, 0.0], 1.0, 2.0)?;
    let resolution = 128;
    let curves = 256;

    println!("ring ({}, {}), {} radial curves, {}^2 grid", ring.r1, ring.r2, curves, resolution);
    println!("{:>5} {:>12} {:>12} {:>9} {:>9} {:>8}", "p", "oracle", "discrete", "rel_gap", "iters", "secs");
    for p in [1.2, 1.5, 1.8, 2.0] {
        let oracle = ring_modulus_oracle(ring.r1, ring.r2, 2, p)?;
        let family = sample_ring_family(&ring, curves, SampleMode::Radial, 0)?;
        let spec = GridSpec::covering(&family, resolution, 2)?;
        let start = Instant::now();
        let sol = discrete_modulus(&family, p, &spec)?;
        let secs = start.elapsed().as_secs_f64();
        println!(
            "{:>5} {:>12.6} {:>12.6} {:>8.3}% {:>9} {:>8.2}",
            p,
            oracle,
            sol.value,
            100.0 * (sol.value - oracle) / oracle,
            sol.certificate.iterations,
            secs
        );
    }
    Ok(())
}
