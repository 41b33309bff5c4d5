//! The non-erasing equivalence test next to a bounded brute-force comparison.

use relpat::equivalence::{closure, ne_equivalent};
use relpat::semantics::bounded_equal;
use relpat::syntax::parse_relational_pattern;
use relpat::Mode;

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let p = |s: &str| parse_relational_pattern(s);
    let chain = p("alphabet:ab; pattern: x1 a x2 x3; rel: ab(x1,x2), ab(x3,x2)")?;
    let star = p("alphabet:ab; pattern: x1 a x2 x3; rel: ab(x2,x1), ab(x1,x3)")?;
    let partial = p("alphabet:ab; pattern: x1 a x2 x3; rel: ab(x1,x2)")?;

    let blocks: Vec<String> = closure(&chain)?
        .blocks()
        .map(|b| {
            b.iter()
                .map(|v| v.to_string())
                .collect::<Vec<_>>()
                .join(",")
        })
        .collect();
    println!("closure of the chain: {{{}}}", blocks.join("} {"));
    for other in [&star, &partial] {
        let fast = ne_equivalent(&chain, other)?;
        let slow = bounded_equal(&chain, other, Mode::NonErasing, 7)?;
        println!("{other}\n  decider: {fast}, bounded (<= 7): {slow}");
    }
    Ok(())
}
