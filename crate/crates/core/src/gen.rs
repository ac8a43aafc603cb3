//! Seeded random terms for property tests and benchmarks.

use rand::Rng;

use crate::term::{numeral, Term};

/// Shape of generated terms.
#[derive(Clone, Debug)]
pub struct TermGen {
    /// Maximum nesting depth; leaves sit at depth 0.
    pub depth: u32,
    /// Variable names; empty for closed terms.
    pub vars: Vec<String>,
    /// Inclusive range of integer leaves.
    pub leaves: (i64, i64),
    /// Whether `/` nodes may appear.
    pub division: bool,
    /// Probability of stopping early at an inner position.
    pub leaf_bias: f64,
}

impl TermGen {
    /// Closed divisive terms with integer leaves in `[-9, 9]`.
    pub fn closed(depth: u32) -> TermGen {
        TermGen {
            depth,
            vars: Vec::new(),
            leaves: (-9, 9),
            division: true,
            leaf_bias: 0.3,
        }
    }

    /// Divisive terms over the given variables with leaves in `[-3, 3]`.
    pub fn open(depth: u32, vars: &[&str]) -> TermGen {
        TermGen {
            depth,
            vars: vars.iter().map(|v| v.to_string()).collect(),
            leaves: (-3, 3),
            division: true,
            leaf_bias: 0.3,
        }
    }

    /// Same shape without division.
    pub fn ring(mut self) -> TermGen {
        self.division = false;
        self
    }

    pub fn generate<R: Rng + ?Sized>(&self, rng: &mut R) -> Term {
        self.node(rng, self.depth)
    }

    fn leaf<R: Rng + ?Sized>(&self, rng: &mut R) -> Term {
        if !self.vars.is_empty() && rng.gen_bool(0.5) {
            return Term::var(self.vars[rng.gen_range(0..self.vars.len())].clone());
        }
        match rng.gen_range(self.leaves.0..=self.leaves.1) {
            1 => Term::One,
            n => numeral(n),
        }
    }

    fn node<R: Rng + ?Sized>(&self, rng: &mut R, depth: u32) -> Term {
        if depth == 0 || rng.gen_bool(self.leaf_bias) {
            return self.leaf(rng);
        }
        let ops = if self.division { 5 } else { 4 };
        let op = rng.gen_range(0..ops);
        let a = self.node(rng, depth - 1);
        if op == 2 {
            return Term::neg(a);
        }
        let b = self.node(rng, depth - 1);
        match op {
            0 => Term::add(a, b),
            1 => Term::mul(a, b),
            3 => Term::sub(a, b),
            _ => Term::div(a, b),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn respects_depth_and_signature() {
        let mut rng = ChaCha8Rng::seed_from_u64(1);
        let g = TermGen::open(4, &["x", "y"]).ring();
        for _ in 0..200 {
            let t = g.generate(&mut rng);
            assert!(t.is_ring_term());
            assert!(t.vars().iter().all(|v| v == "x" || v == "y"));
        }
        let c = TermGen::closed(6);
        for _ in 0..200 {
            let t = c.generate(&mut rng);
            assert!(crate::term::is_closed(&t));
            assert!(t.is_divisive());
        }
    }
}
