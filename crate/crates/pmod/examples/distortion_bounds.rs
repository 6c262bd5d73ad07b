//! Observed distortion against the two bound shapes (iterated-log and
//! divergence-integral), with the minimal constant that makes each bound
//! hold over the sample — the bound constants are existential, so a
//! fitted constant is the honest numeric statement.
//!
//! Run with `cargo run --release --example distortion_bounds`.

use pmod::fields::ScalarField;
use pmod::mappings::{distortion_vs_bound, DistortionBoundKind, MappingSpec};

fn main() -> pmod::Result<()> {
    let p = 1.5;
    let q = ScalarField::constant(1.0);
    let dists = [0.2, 0.1, 0.05, 0.02, 0.01, 0.005];

    let cases: Vec<(&str, MappingSpec, Vec<f64>)> = vec![
        ("identity at 0", MappingSpec::parse("identity", 2)?, vec![0.0, 0.0]),
        ("radialpow:alpha=0.5 at 0", MappingSpec::parse("radialpow:alpha=0.5", 2)?, vec![0.0, 0.0]),
        ("g2:m=3 off-axis", MappingSpec::parse("g2:m=3", 2)?, vec![1.0, 0.0]),
    ];

    for (name, map, x0) in &cases {
        println!("== {name}");
        for (kind_name, kind) in [
            ("fmo shape", DistortionBoundKind::Fmo),
            ("divergent shape", DistortionBoundKind::Divergent { delta0: 0.3 }),
        ] {
            let cmp = distortion_vs_bound(map, x0, p, &q, kind, &dists)?;
            println!("  {kind_name}: fitted C = {:.6}", cmp.fitted_c);
            println!(
                "  {:>8} {:>12} {:>12} {:>12}",
                "dist", "observed", "shape", "implied_C"
            );
            for row in &cmp.rows {
                println!(
                    "  {:>8} {:>12.6} {:>12.6} {:>12.6}",
                    row.dist, row.observed, row.shape, row.implied_c
                );
            }
        }
        println!();
    }
    Ok(())
}
