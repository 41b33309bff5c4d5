//! Membership with and without erasing, plus the witness the matcher finds.

use relpat::matcher::{count_witnesses, match_word};
use relpat::syntax::parse_relational_pattern;
use relpat::{Mode, Word};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let alpha = parse_relational_pattern("alphabet:ab; pattern: x1 a a x2 b x3; rel: eq(x1,x2)")?;
    let beta = parse_relational_pattern("alphabet:abc; pattern: x1 c c x2; rel: rev(x1,x2)")?;

    for (rp, w, mode) in [
        (&alpha, "bbaabbba", Mode::NonErasing),
        (&alpha, "aab", Mode::Erasing),
        (&alpha, "aab", Mode::NonErasing),
        (&beta, "abccba", Mode::NonErasing),
        (&beta, "abccab", Mode::NonErasing),
    ] {
        let word = Word::from(w);
        match match_word(&word, rp, mode)? {
            Some(h) => {
                let parts: Vec<String> = h.iter().map(|(v, img)| format!("{v}={img}")).collect();
                let n = count_witnesses(&word, rp, mode, 100)?;
                println!(
                    "{w:>9} in L_{mode}  via {}  ({n} witnesses)",
                    parts.join(" ")
                );
            }
            None => println!("{w:>9} not in L_{mode}"),
        }
    }
    Ok(())
}
