//! Each 3-SAT reduction on a satisfiable and an unsatisfiable formula.

use relpat::matcher::is_member;
use relpat::reductions::{generate, sat_brute_force, CnfFormula, ReductionVariant};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let sat = CnfFormula::from_dimacs("p cnf 2 2\n1 2 -1 0\n-2 1 2 0\n")?;
    let unsat = CnfFormula::from_dimacs("p cnf 2 4\n1 2 1 0\n1 -2 1 0\n-1 2 -1 0\n-1 -2 -1 0\n")?;

    for variant in ReductionVariant::ALL {
        for phi in [&sat, &unsat] {
            if variant.needs_distinct_literals() && phi == &unsat {
                continue;
            }
            let inst = generate(variant, None, phi)?;
            let member = is_member(&inst.word, &inst.pattern, inst.mode)?;
            println!(
                "{:<17} {:<10} |w| = {:>3}  member = {member:<5}  sat = {}",
                variant.name(),
                inst.kind.name(),
                inst.word.len(),
                sat_brute_force(phi)?
            );
        }
    }
    Ok(())
}
