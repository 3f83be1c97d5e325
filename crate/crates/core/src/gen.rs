//! Seeded random formulas and axiom instances.
//!
//! [`FormulaGen::sized`] draws uniformly among all primitive ASTs with the
//! given node count over a fixed alphabet; [`FormulaGen::formula`] first
//! draws the node count uniformly from `1..=max_size`.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::formula::{Agent, Formula};

/// The generator used everywhere a seed is given.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

#[derive(Debug, Clone)]
pub struct FormulaGen {
    agents: Vec<Agent>,
    props: Vec<String>,
    names: Vec<String>,
}

impl Default for FormulaGen {
    /// Agents 1 and 2, propositions `p`, `q`, `r`, value names `d1`, `d2`.
    fn default() -> Self {
        FormulaGen::new(2, &["p", "q", "r"], &["d1", "d2"])
    }
}

impl FormulaGen {
    pub fn new(agents: u32, props: &[&str], names: &[&str]) -> FormulaGen {
        assert!(agents >= 1 && !props.is_empty() && !names.is_empty());
        FormulaGen {
            agents: (1..=agents).filter_map(Agent::new).collect(),
            props: props.iter().map(|s| s.to_string()).collect(),
            names: names.iter().map(|s| s.to_string()).collect(),
        }
    }

    fn unary_ops(&self) -> usize {
        1 + self.agents.len() * (1 + self.names.len())
    }

    /// `counts[n]` is the number of ASTs with `n` nodes, as a float.
    fn counts(&self, max: usize) -> Vec<f64> {
        let mut c = vec![0.0; max + 1];
        for n in 1..=max {
            c[n] = if n == 1 {
                1.0 + self.props.len() as f64
            } else {
                let binary: f64 = (1..n - 1).map(|k| c[k] * c[n - 1 - k]).sum();
                c[n - 1] * self.unary_ops() as f64 + binary
            };
        }
        c
    }

    /// A formula with node count drawn uniformly from `1..=max_size`.
    pub fn formula(&self, rng: &mut impl Rng, max_size: usize) -> Formula {
        assert!(max_size >= 1);
        let n = rng.gen_range(1..=max_size);
        self.sized(rng, n)
    }

    /// A uniformly drawn AST with exactly `size` nodes.
    pub fn sized(&self, rng: &mut impl Rng, size: usize) -> Formula {
        assert!(size >= 1);
        let counts = self.counts(size);
        self.draw(rng, size, &counts)
    }

    fn draw(&self, rng: &mut impl Rng, n: usize, c: &[f64]) -> Formula {
        let mut r = rng.gen::<f64>() * c[n];
        if n == 1 {
            let k = (r as usize).min(self.props.len());
            return match k {
                0 => Formula::Top,
                k => Formula::Prop(self.props[k - 1].clone()),
            };
        }
        let unary = c[n - 1] * self.unary_ops() as f64;
        if r < unary || n == 2 {
            let k = ((r / c[n - 1]) as usize).min(self.unary_ops() - 1);
            let child = self.draw(rng, n - 1, c);
            if k == 0 {
                return Formula::not(child);
            }
            let per_agent = 1 + self.names.len();
            let agent = self.agents[(k - 1) / per_agent];
            return match (k - 1) % per_agent {
                0 => Formula::boxed(agent, child),
                j => Formula::nabla(agent, child, self.names[j - 1].clone()),
            };
        }
        r -= unary;
        let mut left = n - 2;
        for k in 1..n - 1 {
            let w = c[k] * c[n - 1 - k];
            if r < w {
                left = k;
                break;
            }
            r -= w;
        }
        let a = self.draw(rng, left, c);
        let b = self.draw(rng, n - 1 - left, c);
        Formula::and(a, b)
    }

    pub fn agent(&self, rng: &mut impl Rng) -> Agent {
        self.agents[rng.gen_range(0..self.agents.len())]
    }

    pub fn name(&self, rng: &mut impl Rng) -> String {
        self.names[rng.gen_range(0..self.names.len())].clone()
    }
}

/// The axiom schemas other than propositional tautologies.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Schema {
    /// `[i](a -> b) -> ([i]a -> [i]b)`
    K,
    /// `[i](a -> b) -> (Kv_i(b, d) -> Kv_i(a, d))`
    DistNsv,
    /// `Kv_i(F, d)`
    NsvBot,
    /// `<i>(a & b) & Kv_i(a, d) & Kv_i(b, d) -> Kv_i(a | b, d)`
    NsvOr,
}

impl Schema {
    pub const ALL: [Schema; 4] = [Schema::K, Schema::DistNsv, Schema::NsvBot, Schema::NsvOr];

    pub fn name(self) -> &'static str {
        match self {
            Schema::K => "K",
            Schema::DistNsv => "DISTNSV",
            Schema::NsvBot => "NSVBOT",
            Schema::NsvOr => "NSVOR",
        }
    }

    /// The schema with the given metavariables.
    pub fn instantiate(self, agent: Agent, a: Formula, b: Formula, d: &str) -> Formula {
        use Formula as F;
        match self {
            Schema::K => F::implies(
                F::boxed(agent, F::implies(a.clone(), b.clone())),
                F::implies(F::boxed(agent, a), F::boxed(agent, b)),
            ),
            Schema::DistNsv => F::implies(
                F::boxed(agent, F::implies(a.clone(), b.clone())),
                F::implies(F::nabla(agent, b, d), F::nabla(agent, a, d)),
            ),
            Schema::NsvBot => F::nabla(agent, F::bot(), d),
            Schema::NsvOr => F::implies(
                F::and(
                    F::and(
                        F::diamond(agent, F::and(a.clone(), b.clone())),
                        F::nabla(agent, a.clone(), d),
                    ),
                    F::nabla(agent, b.clone(), d),
                ),
                F::nabla(agent, F::or(a, b), d),
            ),
        }
    }

    /// A random instance with metavariables of at most `max_sub` nodes.
    pub fn instance(self, gen: &FormulaGen, rng: &mut impl Rng, max_sub: usize) -> Formula {
        let agent = gen.agent(rng);
        let a = gen.formula(rng, max_sub);
        let b = gen.formula(rng, max_sub);
        let d = gen.name(rng);
        self.instantiate(agent, a, b, &d)
    }
}
