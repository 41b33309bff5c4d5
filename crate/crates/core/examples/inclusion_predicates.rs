//! Which predicates of the erasing construction fire for a few assignments.

use relpat::inclusion::{
    build_predicates, satisfied_predicates, ErasingConstruction, SigmaAssignment,
};
use relpat::machines::TwoCounterAutomaton;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = TwoCounterAutomaton::parse("states: 2\naccept: q1\nq0 0 0 -> q1 1 0\n")?;
    let preds = build_predicates(&a);
    let c = ErasingConstruction::default();
    println!(
        "{} predicates, |beta| = {}",
        preds.len(),
        c.beta(&preds).pattern().len()
    );

    for sigma in [
        SigmaAssignment::with_long_y("##0#0#0##00#00#0##"),
        SigmaAssignment::with_long_y("##0#0#0##"),
        SigmaAssignment::with_long_y("##0#0#0#"),
        SigmaAssignment::new("0###0", "0"),
        SigmaAssignment::new("##0#0#0##00#00#0##", "0"),
    ] {
        let hits = satisfied_predicates(&sigma, &preds)?;
        let names: Vec<&str> = hits.iter().map(|&i| preds[i - 1].name.as_str()).collect();
        println!(
            "x = {:<20} y = {:<20} {:?}",
            sigma.x_image.to_string(),
            sigma.y_image.to_string(),
            names
        );
    }
    Ok(())
}
