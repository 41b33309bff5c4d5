//! A two-counter automaton, its shortest accepting run and the run's encoding.

use relpat::machines::{
    ca_encode, ca_find_accepting_run, ca_validate, EncodingParams, TwoCounterAutomaton,
};
use relpat::Word;

const DOUBLER: &str = "\
states: 3
accept: q2
q0 0 0 -> q0 1 0
q0 1 0 -> q0 1 0
q0 1 0 -> q1 0 1
q1 1 1 -> q1 -1 0
q1 0 1 -> q2 0 0
";

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let a = TwoCounterAutomaton::parse(DOUBLER)?;
    let p = EncodingParams::default();
    let run = ca_find_accepting_run(&a, 20).ok_or("no accepting run")?;
    for c in &run {
        println!("{c}");
    }
    let w = ca_encode(&run, p);
    println!("{w}");
    println!("valid: {}", ca_validate(&w, &a, p));
    let broken = Word::from(format!("{w}0").as_str());
    println!("with a trailing 0: {}", ca_validate(&broken, &a, p));
    Ok(())
}
