//! Running the 15-state universal machine and validating the encoded computation.

use relpat::machines::{utm_encode_computation, utm_run, utm_validate, UtmConfiguration};

fn main() {
    let start = UtmConfiguration::new(15, 12, 13);
    let Some(run) = utm_run(start, 200) else {
        println!("no halt within 200 configurations from {start}");
        return;
    };
    for c in &run {
        println!("{c}");
    }
    let w = utm_encode_computation(&run);
    println!("{} letters, valid: {}", w.len(), utm_validate(&w, start));
}
