//! Equicontinuity probing of two mapping families at the origin.
//!
//! The planar exponentials `z ↦ e^{mz}` lose equicontinuity as `m` grows
//! (their oscillation column at fixed δ explodes like `e^{mδ} − 1`),
//! while the winding family keeps oscillation exactly δ at the origin —
//! the numerical face of the dichotomy between the conformal exponent
//! and the sub-conformal range.
//!
//! Run with `cargo run --release --example equicontinuity`.

use pmod::mappings::{equicontinuity_probe, MappingSpec, ProbeMetric};

fn main() -> pmod::Result<()> {
    let deltas = [0.5, 0.25, 0.125];
    let origin = [0.0, 0.0];

    for (label, family_spec, metric) in [
        ("exponential family, euclidean", "exp:m=1..10", ProbeMetric::Euclidean),
        ("exponential family, chordal", "exp:m=1..10", ProbeMetric::Chordal),
        ("winding family, euclidean", "g2:m=1..5", ProbeMetric::Euclidean),
    ] {
        let family = MappingSpec::parse_family(family_spec, 2)?;
        let table = equicontinuity_probe(&family, &origin, &deltas, metric)?;
        println!("== {label}: verdict {:?}", table.verdict);
        print!("{:<10}", "map\\delta");
        for d in &deltas {
            print!(" {d:>12}");
        }
        println!();
        for (id, _) in &family {
            print!("{id:<10}");
            for d in &deltas {
                let osc = table
                    .rows
                    .iter()
                    .find(|r| &r.map_id == id && r.delta == *d)
                    .map(|r| r.oscillation)
                    .unwrap_or(f64::NAN);
                print!(" {osc:>12.6}");
            }
            println!();
        }
        println!(
            "column growth factor {:.1}, decay slope {:.3}\n",
            table.growth_factor, table.decay_slope
        );
    }
    Ok(())
}
