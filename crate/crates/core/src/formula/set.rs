use std::collections::{BTreeMap, BTreeSet};
use std::fmt;

use super::{Agent, Formula};

/// A finite set of formulas iterated in canonical order, i.e. ordered by
/// the canonical printed string.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct FormulaSet {
    items: BTreeMap<String, Formula>,
}

impl FormulaSet {
    pub fn new() -> FormulaSet {
        FormulaSet::default()
    }

    /// Returns `true` if the formula was not yet present.
    pub fn insert(&mut self, f: Formula) -> bool {
        let key = f.print();
        if self.items.contains_key(&key) {
            return false;
        }
        self.items.insert(key, f);
        true
    }

    pub fn remove(&mut self, f: &Formula) -> bool {
        self.items.remove(&f.print()).is_some()
    }

    pub fn contains(&self, f: &Formula) -> bool {
        self.items.contains_key(&f.print())
    }

    pub fn len(&self) -> usize {
        self.items.len()
    }

    pub fn is_empty(&self) -> bool {
        self.items.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = &Formula> + '_ {
        self.items.values()
    }

    /// Canonical prints of the members, in order.
    pub fn keys(&self) -> impl Iterator<Item = &str> + '_ {
        self.items.keys().map(String::as_str)
    }

    pub fn is_subset(&self, other: &FormulaSet) -> bool {
        self.items.keys().all(|k| other.items.contains_key(k))
    }

    pub fn union(&self, other: &FormulaSet) -> FormulaSet {
        let mut out = self.clone();
        out.extend(other.iter().cloned());
        out
    }

    /// `Sub(X)`.
    pub fn sub(&self) -> FormulaSet {
        let mut out = FormulaSet::new();
        for f in self.iter() {
            f.visit(&mut |g| {
                out.insert(g.clone());
            });
        }
        out
    }

    /// `Sub+(X)`: `Sub(X)` together with the negation of each member.
    pub fn sub_plus(&self) -> FormulaSet {
        let sub = self.sub();
        let mut out = sub.clone();
        out.extend(sub.iter().map(|f| Formula::not(f.clone())));
        out
    }

    /// `{~f | f in X}`.
    pub fn negated(&self) -> FormulaSet {
        self.iter().map(|f| Formula::not(f.clone())).collect()
    }

    /// `X \ [i]`: the formulas `f` with `[i]f` in `X`.
    pub fn unbox(&self, agent: Agent) -> FormulaSet {
        self.iter()
            .filter_map(|f| match f {
                Formula::Box(i, c) if *i == agent => Some((**c).clone()),
                _ => None,
            })
            .collect()
    }

    /// `[i]X`.
    pub fn boxed(&self, agent: Agent) -> FormulaSet {
        self.iter()
            .map(|f| Formula::boxed(agent, f.clone()))
            .collect()
    }

    pub fn depth(&self) -> usize {
        self.iter().map(Formula::depth).max().unwrap_or(0)
    }

    pub fn value_names(&self) -> BTreeSet<String> {
        self.iter().flat_map(Formula::value_names).collect()
    }

    /// The conjunction of all members in canonical order, `T` when empty.
    pub fn conjunction(&self) -> Formula {
        let mut it = self.iter().cloned();
        match it.next() {
            None => Formula::Top,
            Some(first) => it.fold(first, Formula::and),
        }
    }
}

impl PartialOrd for FormulaSet {
    fn partial_cmp(&self, other: &Self) -> Option<std::cmp::Ordering> {
        Some(self.cmp(other))
    }
}

/// Lexicographic on the members' prints in canonical order.
impl Ord for FormulaSet {
    fn cmp(&self, other: &Self) -> std::cmp::Ordering {
        self.items.keys().cmp(other.items.keys())
    }
}

impl Extend<Formula> for FormulaSet {
    fn extend<I: IntoIterator<Item = Formula>>(&mut self, iter: I) {
        for f in iter {
            self.insert(f);
        }
    }
}

impl FromIterator<Formula> for FormulaSet {
    fn from_iter<I: IntoIterator<Item = Formula>>(iter: I) -> Self {
        let mut out = FormulaSet::new();
        out.extend(iter);
        out
    }
}

impl<'a> IntoIterator for &'a FormulaSet {
    type Item = &'a Formula;
    type IntoIter = std::collections::btree_map::Values<'a, String, Formula>;

    fn into_iter(self) -> Self::IntoIter {
        self.items.values()
    }
}

impl fmt::Debug for FormulaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.items.keys()).finish()
    }
}

impl fmt::Display for FormulaSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (n, k) in self.items.keys().enumerate() {
            if n > 0 {
                f.write_str(", ")?;
            }
            f.write_str(k)?;
        }
        f.write_str("}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn set(items: &[&str]) -> FormulaSet {
        items.iter().map(|s| parse(s).unwrap()).collect()
    }

    #[test]
    fn canonical_order_is_by_print() {
        let s = set(&["q", "p", "~p", "Kv1(p, d)"]);
        let keys: Vec<_> = s.keys().collect();
        assert_eq!(keys, ["Kv1(p, d)", "p", "q", "~p"]);
    }

    #[test]
    fn unbox_and_box() {
        let s = set(&["[1]p", "[2]q", "[1]~r", "s"]);
        assert_eq!(s.unbox(Agent::new(1).unwrap()), set(&["p", "~r"]));
        assert_eq!(set(&["p"]).boxed(Agent::new(3).unwrap()), set(&["[3]p"]));
    }

    #[test]
    fn negation_and_conjunction() {
        let s = set(&["p", "q"]);
        assert_eq!(s.negated(), set(&["~p", "~q"]));
        assert_eq!(s.conjunction().print(), "(p & q)");
        assert_eq!(FormulaSet::new().conjunction(), Formula::Top);
    }

    #[test]
    fn duplicates_collapse() {
        let mut s = FormulaSet::new();
        assert!(s.insert(parse("p").unwrap()));
        assert!(!s.insert(parse("p").unwrap()));
        assert_eq!(s.len(), 1);
    }
}
