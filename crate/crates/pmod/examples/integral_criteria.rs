//! The integral criteria on named majorant fields: finite mean
//! oscillation, iterated-log growth of spherical means, tail-integral
//! divergence, L^s-integrability, and the power-majorant corollary.
//!
//! Run with `cargo run --release --example integral_criteria`.

use pmod::fields::{
    criterion_corollary, criterion_divergence, criterion_fmo, criterion_loglog, criterion_ls,
    criterion_theorem4, CriterionReport, ScalarField,
};
use pmod::trend::geometric_grid;

fn show(name: &str, field: &str, report: &CriterionReport) {
    println!(
        "{:<12} Q = {:<22} {:?}\n             {}",
        name, field, report.verdict, report.extrapolation_note
    );
}

fn main() -> pmod::Result<()> {
    let origin = vec![0.0, 0.0];
    let scales = geometric_grid(0.25, 20);

    for field_spec in ["constant:c=3", "logrecip", "radialpow:alpha=-1"] {
        let field = ScalarField::parse(field_spec)?.with_center(origin.clone());
        let report = criterion_fmo(&field, &origin, &scales)?;
        show("fmo", field_spec, &report);
    }
    println!();

    for field_spec in ["constant:c=1", "logpow:k=1", "radialpow:alpha=-1"] {
        let field = ScalarField::parse(field_spec)?.with_center(origin.clone());
        let report = criterion_loglog(&field, &origin, &scales)?;
        show("loglog", field_spec, &report);
    }
    println!();

    for field_spec in ["constant:c=1", "logpow:k=2", "infinite"] {
        let field = ScalarField::parse(field_spec)?.with_center(origin.clone());
        let report = criterion_divergence(&field, &origin, 0.25, 20)?;
        show("divergence", field_spec, &report);
    }
    println!();

    // L^s integrability with the threshold s >= n/(n-p): at n = 2,
    // p = 1.5 the threshold is exactly 4.
    for (field_spec, s) in [("constant:c=1", 4.0), ("constant:c=1", 3.0), ("radialpow:alpha=-1", 4.0)] {
        let field = ScalarField::parse(field_spec)?.with_center(origin.clone());
        let report = criterion_ls(&field, s, 1.5, &origin, 1.0)?;
        show(&format!("ls s={s}"), field_spec, &report);
    }
    println!();

    // The capacity-weighted divergence and its power-majorant corollary.
    for field_spec in ["constant:c=1", "radialpow:alpha=-0.5,scale=2", "radialpow:alpha=-1.5"] {
        let field = ScalarField::parse(field_spec)?.with_center(origin.clone());
        let th4 = criterion_theorem4(&field, &origin, 1.5, 0.5, 20)?;
        show("th4", field_spec, &th4);
        let cor = criterion_corollary(&field, &origin, 1.5, 0.5, 20)?;
        show("cor", field_spec, &cor);
    }
    Ok(())
}
