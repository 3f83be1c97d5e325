//! Kripke models with value assignments and the truth evaluator.

mod file;
mod oracle;
mod token;

use std::collections::{BTreeMap, BTreeSet, HashMap};

use thiserror::Error;

use crate::formula::{Agent, Formula};

pub use file::ModelFileError;
pub use oracle::{oracle_sat, ORACLE_MAX_WORLDS};
pub use token::{TokenParseError, ValueToken};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ModelError {
    #[error("unknown world {0:?}")]
    UnknownWorld(String),
    #[error("duplicate world {0:?}")]
    DuplicateWorld(String),
    #[error("a model needs at least one world")]
    NoWorlds,
}

/// A finite pointed Kripke model `<S, O, ->_i, V, V_D>` with `O` realised as
/// [`ValueToken`]s. Value assignments are total: an entry that was never set
/// reads as `DefaultToken(0)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Model {
    worlds: Vec<String>,
    index: HashMap<String, usize>,
    root: usize,
    relations: BTreeMap<Agent, Vec<BTreeSet<usize>>>,
    valuation: Vec<BTreeSet<String>>,
    values: Vec<BTreeMap<String, ValueToken>>,
}

impl Model {
    /// Creates a model with the given worlds and no edges; the first world is
    /// the root.
    pub fn new<I, S>(worlds: I) -> Result<Model, ModelError>
    where
        I: IntoIterator<Item = S>,
        S: Into<String>,
    {
        let mut names = Vec::new();
        let mut index = HashMap::new();
        for w in worlds {
            let w = w.into();
            if index.insert(w.clone(), names.len()).is_some() {
                return Err(ModelError::DuplicateWorld(w));
            }
            names.push(w);
        }
        if names.is_empty() {
            return Err(ModelError::NoWorlds);
        }
        let n = names.len();
        Ok(Model {
            worlds: names,
            index,
            root: 0,
            relations: BTreeMap::new(),
            valuation: vec![BTreeSet::new(); n],
            values: vec![BTreeMap::new(); n],
        })
    }

    pub fn world_index(&self, w: &str) -> Result<usize, ModelError> {
        self.index
            .get(w)
            .copied()
            .ok_or_else(|| ModelError::UnknownWorld(w.to_string()))
    }

    pub fn worlds(&self) -> &[String] {
        &self.worlds
    }

    pub fn len(&self) -> usize {
        self.worlds.len()
    }

    pub fn is_empty(&self) -> bool {
        self.worlds.is_empty()
    }

    pub fn root(&self) -> &str {
        &self.worlds[self.root]
    }

    pub fn root_index(&self) -> usize {
        self.root
    }

    pub fn set_root(&mut self, w: &str) -> Result<(), ModelError> {
        self.root = self.world_index(w)?;
        Ok(())
    }

    pub fn add_edge(&mut self, agent: Agent, from: &str, to: &str) -> Result<(), ModelError> {
        let (s, t) = (self.world_index(from)?, self.world_index(to)?);
        self.add_edge_at(agent, s, t);
        Ok(())
    }

    pub(crate) fn add_edge_at(&mut self, agent: Agent, from: usize, to: usize) {
        let n = self.worlds.len();
        self.relations
            .entry(agent)
            .or_insert_with(|| vec![BTreeSet::new(); n])[from]
            .insert(to);
    }

    pub fn set_true(&mut self, w: &str, prop: impl Into<String>) -> Result<(), ModelError> {
        let i = self.world_index(w)?;
        self.valuation[i].insert(prop.into());
        Ok(())
    }

    pub(crate) fn set_true_at(&mut self, w: usize, prop: impl Into<String>) {
        self.valuation[w].insert(prop.into());
    }

    pub fn set_value(
        &mut self,
        w: &str,
        name: impl Into<String>,
        token: ValueToken,
    ) -> Result<(), ModelError> {
        let i = self.world_index(w)?;
        self.set_value_at(i, name, token);
        Ok(())
    }

    pub(crate) fn set_value_at(&mut self, w: usize, name: impl Into<String>, token: ValueToken) {
        self.values[w].insert(name.into(), token);
    }

    /// The `agent`-successors of world index `w`, in index order.
    pub fn successors(&self, agent: Agent, w: usize) -> impl Iterator<Item = usize> + '_ {
        self.relations
            .get(&agent)
            .into_iter()
            .flat_map(move |rel| rel[w].iter().copied())
    }

    pub fn agents(&self) -> impl Iterator<Item = Agent> + '_ {
        self.relations.keys().copied()
    }

    pub fn holds(&self, w: usize, prop: &str) -> bool {
        self.valuation[w].contains(prop)
    }

    /// `V_D(name, w)`, with the default fill for unset entries.
    pub fn value(&self, name: &str, w: usize) -> &ValueToken {
        static DEFAULT: ValueToken = ValueToken::Default(0);
        self.values[w].get(name).unwrap_or(&DEFAULT)
    }

    pub(crate) fn explicit_values(&self, w: usize) -> &BTreeMap<String, ValueToken> {
        &self.values[w]
    }

    pub(crate) fn true_props(&self, w: usize) -> &BTreeSet<String> {
        &self.valuation[w]
    }

    /// Truth of `f` at the named world.
    pub fn eval(&self, w: &str, f: &Formula) -> Result<bool, ModelError> {
        Ok(self.eval_at(self.world_index(w)?, f))
    }

    /// Truth of `f` at world index `w`. Agents without a relation entry have
    /// the empty relation.
    pub fn eval_at(&self, w: usize, f: &Formula) -> bool {
        match f {
            Formula::Top => true,
            Formula::Prop(p) => self.holds(w, p),
            Formula::Not(g) => !self.eval_at(w, g),
            Formula::And(a, b) => self.eval_at(w, a) && self.eval_at(w, b),
            Formula::Box(i, g) => self.successors(*i, w).all(|t| self.eval_at(t, g)),
            Formula::Nabla(i, g, d) => {
                let mut seen: Option<&ValueToken> = None;
                for t in self.successors(*i, w) {
                    if !self.eval_at(t, g) {
                        continue;
                    }
                    let v = self.value(d, t);
                    match seen {
                        None => seen = Some(v),
                        Some(u) if u != v => return false,
                        Some(_) => {}
                    }
                }
                true
            }
        }
    }

    /// Truth at the root.
    pub fn satisfies(&self, f: &Formula) -> bool {
        self.eval_at(self.root, f)
    }
}
