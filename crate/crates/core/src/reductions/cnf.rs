//! 3-CNF formulas, DIMACS input/output and a truth-table oracle.

use std::fmt;

use rand::Rng;

use super::ReductionError;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Literal {
    /// 1-based variable index.
    pub var: u32,
    pub negated: bool,
}

impl Literal {
    pub fn pos(var: u32) -> Self {
        Literal {
            var,
            negated: false,
        }
    }

    pub fn neg(var: u32) -> Self {
        Literal { var, negated: true }
    }

    pub fn from_dimacs(n: i64) -> Self {
        Literal {
            var: n.unsigned_abs() as u32,
            negated: n < 0,
        }
    }

    pub fn to_dimacs(self) -> i64 {
        if self.negated {
            -(self.var as i64)
        } else {
            self.var as i64
        }
    }

    pub fn eval(self, assignment: u32) -> bool {
        let value = assignment >> (self.var - 1) & 1 == 1;
        value != self.negated
    }
}

impl fmt::Display for Literal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.negated {
            write!(f, "¬X{}", self.var)
        } else {
            write!(f, "X{}", self.var)
        }
    }
}

pub type Clause = [Literal; 3];

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct CnfFormula {
    num_vars: u32,
    clauses: Vec<Clause>,
}

pub const BRUTE_FORCE_MAX_VARS: u32 = 24;

impl CnfFormula {
    pub fn new(num_vars: u32, clauses: Vec<Clause>) -> Result<Self, ReductionError> {
        if num_vars == 0 {
            return Err(ReductionError::MalformedClause(
                "formula needs a variable".into(),
            ));
        }
        if clauses.is_empty() {
            return Err(ReductionError::MalformedClause(
                "formula needs a clause".into(),
            ));
        }
        for (j, c) in clauses.iter().enumerate() {
            if let Some(l) = c.iter().find(|l| l.var == 0 || l.var > num_vars) {
                return Err(ReductionError::MalformedClause(format!(
                    "clause {} uses variable {} outside 1..={num_vars}",
                    j + 1,
                    l.var
                )));
            }
        }
        Ok(CnfFormula { num_vars, clauses })
    }

    /// Clauses from signed DIMACS-style triples.
    pub fn from_triples(num_vars: u32, triples: &[[i64; 3]]) -> Result<Self, ReductionError> {
        CnfFormula::new(
            num_vars,
            triples
                .iter()
                .map(|t| t.map(Literal::from_dimacs))
                .collect(),
        )
    }

    pub fn num_vars(&self) -> u32 {
        self.num_vars
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    /// No literal occurs twice in one clause.
    pub fn has_distinct_literals(&self) -> bool {
        self.clauses
            .iter()
            .all(|c| c[0] != c[1] && c[0] != c[2] && c[1] != c[2])
    }

    pub fn satisfied_by(&self, assignment: u32) -> bool {
        self.clauses
            .iter()
            .all(|c| c.iter().any(|l| l.eval(assignment)))
    }

    /// A satisfying assignment as a bit mask (bit `i` is variable `i + 1`).
    pub fn find_model(&self) -> Result<Option<u32>, ReductionError> {
        if self.num_vars > BRUTE_FORCE_MAX_VARS {
            return Err(ReductionError::TooManyVariables(self.num_vars));
        }
        Ok((0..1u32 << self.num_vars).find(|&a| self.satisfied_by(a)))
    }

    pub fn to_dimacs(&self) -> String {
        let mut out = format!("p cnf {} {}\n", self.num_vars, self.clauses.len());
        for c in &self.clauses {
            for l in c {
                out.push_str(&l.to_dimacs().to_string());
                out.push(' ');
            }
            out.push_str("0\n");
        }
        out
    }

    /// Parses DIMACS CNF. Clauses with one or two literals are padded by
    /// repeating their last literal; longer clauses are rejected.
    pub fn from_dimacs(text: &str) -> Result<Self, ReductionError> {
        let mut num_vars: Option<u32> = None;
        let mut clauses = Vec::new();
        let mut current: Vec<Literal> = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            let line = line.trim();
            if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
                continue;
            }
            if let Some(rest) = line.strip_prefix('p') {
                let fields: Vec<&str> = rest.split_whitespace().collect();
                if fields.len() != 3 || fields[0] != "cnf" {
                    return Err(ReductionError::Dimacs(
                        lineno + 1,
                        "bad problem line".into(),
                    ));
                }
                let m = fields[1]
                    .parse()
                    .map_err(|_| ReductionError::Dimacs(lineno + 1, "bad variable count".into()))?;
                num_vars = Some(m);
                continue;
            }
            for tok in line.split_whitespace() {
                let n: i64 = tok.parse().map_err(|_| {
                    ReductionError::Dimacs(lineno + 1, format!("bad literal `{tok}`"))
                })?;
                if n == 0 {
                    clauses.push(pad_clause(&current, lineno + 1)?);
                    current.clear();
                } else {
                    current.push(Literal::from_dimacs(n));
                }
            }
        }
        if !current.is_empty() {
            clauses.push(pad_clause(&current, 0)?);
        }
        let num_vars = num_vars.unwrap_or_else(|| {
            clauses
                .iter()
                .flat_map(|c| c.iter().map(|l| l.var))
                .max()
                .unwrap_or(0)
        });
        CnfFormula::new(num_vars, clauses)
    }

    /// Uniform random formula. With `distinct`, literals inside a clause are distinct
    /// (requires at least two variables).
    pub fn random<R: Rng + ?Sized>(
        rng: &mut R,
        num_vars: u32,
        num_clauses: usize,
        distinct: bool,
    ) -> Self {
        assert!(
            !distinct || num_vars >= 2,
            "three distinct literals need two variables"
        );
        let mut clauses = Vec::with_capacity(num_clauses);
        while clauses.len() < num_clauses {
            let c: Clause = std::array::from_fn(|_| Literal {
                var: rng.gen_range(1..=num_vars),
                negated: rng.gen_bool(0.5),
            });
            if distinct && (c[0] == c[1] || c[0] == c[2] || c[1] == c[2]) {
                continue;
            }
            clauses.push(c);
        }
        CnfFormula::new(num_vars, clauses).expect("variables in range")
    }

    /// Every formula with exactly `num_clauses` clauses over `num_vars` variables,
    /// clauses taken as sorted literal triples.
    pub fn all_formulas(num_vars: u32, num_clauses: usize, distinct: bool) -> Vec<CnfFormula> {
        let literals: Vec<Literal> = (1..=num_vars)
            .flat_map(|v| [Literal::pos(v), Literal::neg(v)])
            .collect();
        let mut triples = Vec::new();
        let k = literals.len();
        for a in 0..k {
            for b in a..k {
                for c in b..k {
                    if distinct && (a == b || b == c) {
                        continue;
                    }
                    triples.push([literals[a], literals[b], literals[c]]);
                }
            }
        }
        let mut out = Vec::new();
        let mut idx = vec![0usize; num_clauses];
        if triples.is_empty() {
            return out;
        }
        loop {
            let clauses = idx.iter().map(|&i| triples[i]).collect();
            out.push(CnfFormula::new(num_vars, clauses).expect("variables in range"));
            let mut pos = num_clauses;
            loop {
                if pos == 0 {
                    return out;
                }
                pos -= 1;
                idx[pos] += 1;
                if idx[pos] < triples.len() {
                    break;
                }
                idx[pos] = 0;
            }
        }
    }
}

fn pad_clause(lits: &[Literal], line: usize) -> Result<Clause, ReductionError> {
    match lits {
        [] => Err(ReductionError::Dimacs(line, "empty clause".into())),
        [a] => Ok([*a, *a, *a]),
        [a, b] => Ok([*a, *b, *b]),
        [a, b, c] => Ok([*a, *b, *c]),
        _ => Err(ReductionError::Dimacs(
            line,
            "clause has more than three literals".into(),
        )),
    }
}

impl fmt::Display for CnfFormula {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (j, c) in self.clauses.iter().enumerate() {
            if j > 0 {
                f.write_str(" ∧ ")?;
            }
            write!(f, "({} ∨ {} ∨ {})", c[0], c[1], c[2])?;
        }
        Ok(())
    }
}

/// True iff some assignment satisfies all clauses.
pub fn sat_brute_force(phi: &CnfFormula) -> Result<bool, ReductionError> {
    Ok(phi.find_model()?.is_some())
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;

    #[test]
    fn tautology_and_contradiction() {
        let t = CnfFormula::from_triples(1, &[[1, 1, -1]]).unwrap();
        assert!(sat_brute_force(&t).unwrap());
        let f = CnfFormula::from_triples(1, &[[1, 1, 1], [-1, -1, -1]]).unwrap();
        assert!(!sat_brute_force(&f).unwrap());
    }

    #[test]
    fn dimacs_round_trip_and_padding() {
        let text = "c example\np cnf 3 2\n1 -2 3 0\n-1 0\n";
        let phi = CnfFormula::from_dimacs(text).unwrap();
        assert_eq!(phi.clauses()[1], [Literal::neg(1); 3]);
        assert_eq!(CnfFormula::from_dimacs(&phi.to_dimacs()).unwrap(), phi);
        assert!(CnfFormula::from_dimacs("p cnf 4 1\n1 2 3 4 0\n").is_err());
        assert!(CnfFormula::from_dimacs("p cnf 1 1\n2 0\n").is_err());
    }

    #[test]
    fn guard_on_size() {
        let phi = CnfFormula::from_triples(25, &[[1, 2, 25]]).unwrap();
        assert_eq!(
            sat_brute_force(&phi),
            Err(ReductionError::TooManyVariables(25))
        );
    }

    #[test]
    fn exhaustive_formula_counts() {
        // multisets of size 3 over 4 literals: C(6,3) = 20
        assert_eq!(CnfFormula::all_formulas(2, 1, false).len(), 20);
        assert_eq!(CnfFormula::all_formulas(2, 2, false).len(), 400);
        assert_eq!(CnfFormula::all_formulas(2, 1, true).len(), 4);
        assert!(CnfFormula::all_formulas(1, 1, true).is_empty());
    }

    #[test]
    fn random_formulas_respect_distinctness() {
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(3);
        for _ in 0..50 {
            assert!(CnfFormula::random(&mut rng, 2, 4, true).has_distinct_literals());
        }
    }
}
