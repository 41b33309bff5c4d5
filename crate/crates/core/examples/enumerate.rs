//! Bounded slices of a language and a bounded inclusion check.

use relpat::semantics::{enumerate_language, inclusion_counterexample};
use relpat::syntax::parse_relational_pattern;
use relpat::Mode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let squares = parse_relational_pattern("alphabet:ab; pattern: x1 x2; rel: eq(x1,x2)")?;
    let anything = parse_relational_pattern("alphabet:ab; pattern: x1")?;

    let lang = enumerate_language(&squares, Mode::NonErasing, 6)?;
    let words: Vec<String> = lang.shortlex().iter().map(|w| w.to_string()).collect();
    println!("L_NE(x1 x2 | x1 = x2), |w| <= 6: {}", words.join(" "));

    for (a, b) in [(&squares, &anything), (&anything, &squares)] {
        match inclusion_counterexample(a, b, Mode::Erasing, 6)? {
            None => println!("{a}  ⊆  {b}  up to length 6"),
            Some(w) => println!("{a}  ⊄  {b}, e.g. `{w}`"),
        }
    }
    Ok(())
}
