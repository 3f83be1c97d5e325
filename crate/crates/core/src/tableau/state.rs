//! Streaming enumeration of the extra information `(g, h, ha, hb)` that turns
//! a fully expanded label into a state.
//!
//! A state is encoded as one digit vector:
//!
//! * for each `(i, d)` with some `Kv_i(f, d)` in the label, a restricted
//!   growth string over the guards `G(i, d)`. Digit 0 puts a guard in `A`
//!   (never realised), digit `k >= 1` puts it in the `k`-th cell of `B`.
//!   Cell 0 is the empty cell that `B` always contains.
//! * for each `~[i]f`, one cell digit per `d` with `(i, d)` in `E`: `h(i, f)(d)`.
//! * for each `~Kv_i(f, d0)`, the cell digits of `ha` and then of `hb` over
//!   the same domain. When `d0` has no guard group both are the empty cell
//!   and carry no digit.
//!
//! States are yielded in lexicographic order of this vector; only the
//! current vector is kept.
//!
//! Past the growth strings the vector splits into [`Unit`]s, one per `~[i]f`
//! and one per `~Kv_i(f, d0)`. A unit's successors read only the growth
//! strings and the unit's own digits, and validity couples digits of one
//! unit only.

use super::bitset::Label;
use super::closure::{Closure, Kind};
use crate::formula::Agent;

#[derive(Debug, Clone)]
pub(crate) struct GuardGroup {
    pub agent: Agent,
    pub name: u16,
    /// `G(i, d)` in canonical order.
    pub guards: Vec<u32>,
}

#[derive(Clone, Copy, Debug)]
enum Slot {
    /// A restricted-growth digit; `start` is the first digit of its string.
    Growth { start: usize },
    /// A cell choice in the partition of `group`.
    Cell { group: usize },
}

/// A run of cell digits together with the labelled successors reading it.
#[derive(Debug, Clone)]
pub(crate) struct Unit {
    pub lo: usize,
    pub hi: usize,
    pub successors: std::ops::Range<usize>,
    /// Index into `nabla_negs` for a `~Kv` unit.
    pub pair: Option<usize>,
}

/// Everything about a label that the state enumeration depends on.
#[derive(Debug)]
pub(crate) struct Shape {
    pub groups: Vec<GuardGroup>,
    /// `(i, f)` for each `~[i]f` in the label.
    pub box_negs: Vec<(Agent, u32)>,
    /// `(i, f, d0)` for each `~Kv_i(f, d0)` in the label.
    pub nabla_negs: Vec<(Agent, u32, u16)>,
    pub units: Vec<Unit>,
    /// Number of growth digits, which come first.
    pub prefix: usize,
    slots: Vec<Slot>,
    group_start: Vec<usize>,
    h_start: Vec<usize>,
    hx_start: Vec<usize>,
}

impl Shape {
    pub fn new(cl: &Closure, label: &Label) -> Shape {
        let mut groups: Vec<GuardGroup> = Vec::new();
        let mut box_negs = Vec::new();
        let mut nabla_negs = Vec::new();
        for i in label.iter() {
            match cl.kind(i) {
                Kind::Nabla(agent, guard, name) => {
                    match groups
                        .iter_mut()
                        .find(|g| g.agent == agent && g.name == name)
                    {
                        Some(g) => g.guards.push(guard),
                        None => groups.push(GuardGroup {
                            agent,
                            name,
                            guards: vec![guard],
                        }),
                    }
                }
                Kind::Not(c) => match cl.kind(c) {
                    Kind::Box(agent, f) => box_negs.push((agent, f)),
                    Kind::Nabla(agent, f, d0) => nabla_negs.push((agent, f, d0)),
                    _ => {}
                },
                _ => {}
            }
        }
        // Guards were pushed in label order, which is canonical order.
        groups.sort_by_key(|g| (g.agent, g.name));
        for g in &mut groups {
            g.guards.sort_unstable();
        }

        let mut slots = Vec::new();
        let mut group_start = Vec::new();
        for g in &groups {
            let start = slots.len();
            group_start.push(start);
            slots.extend(std::iter::repeat_n(Slot::Growth { start }, g.guards.len()));
        }
        let agent_groups = |agent: Agent| -> Vec<usize> {
            (0..groups.len())
                .filter(|&k| groups[k].agent == agent)
                .collect()
        };
        let prefix = slots.len();
        let mut h_start = Vec::new();
        for &(agent, _) in &box_negs {
            h_start.push(slots.len());
            slots.extend(
                agent_groups(agent)
                    .into_iter()
                    .map(|group| Slot::Cell { group }),
            );
        }
        let mut hx_start = Vec::new();
        for &(agent, _, _) in &nabla_negs {
            hx_start.push(slots.len());
            let own = agent_groups(agent);
            for _ in 0..2 {
                slots.extend(own.iter().map(|&group| Slot::Cell { group }));
            }
        }
        let nb = box_negs.len();
        let mut units = Vec::new();
        for (k, &lo) in h_start.iter().enumerate() {
            let hi = h_start
                .get(k + 1)
                .copied()
                .or(hx_start.first().copied())
                .unwrap_or(slots.len());
            units.push(Unit {
                lo,
                hi,
                successors: k..k + 1,
                pair: None,
            });
        }
        for (j, &lo) in hx_start.iter().enumerate() {
            let hi = hx_start.get(j + 1).copied().unwrap_or(slots.len());
            let k = nb + 2 * j;
            units.push(Unit {
                lo,
                hi,
                successors: k..k + 2,
                pair: Some(j),
            });
        }
        Shape {
            groups,
            box_negs,
            nabla_negs,
            units,
            prefix,
            slots,
            group_start,
            h_start,
            hx_start,
        }
    }

    pub fn width(&self) -> usize {
        self.slots.len()
    }

    /// Number of labelled successors a state of this shape has.
    pub fn successor_count(&self) -> usize {
        self.box_negs.len() + 2 * self.nabla_negs.len()
    }

    pub fn agent_groups(&self, agent: Agent) -> impl Iterator<Item = usize> + '_ {
        (0..self.groups.len()).filter(move |&k| self.groups[k].agent == agent)
    }

    /// The restricted growth string of a guard group.
    pub fn rgs<'d>(&self, digits: &'d [u8], group: usize) -> &'d [u8] {
        let start = self.group_start[group];
        &digits[start..start + self.groups[group].guards.len()]
    }

    /// Number of nonempty cells of a group's partition.
    pub fn blocks(&self, digits: &[u8], group: usize) -> u8 {
        self.rgs(digits, group).iter().copied().max().unwrap_or(0)
    }

    /// `(group, cell)` pairs of `h(i, f)` for the `j`-th `~[i]f`.
    pub fn h_cells(&self, digits: &[u8], j: usize) -> Vec<(usize, u8)> {
        let (agent, _) = self.box_negs[j];
        self.agent_groups(agent)
            .enumerate()
            .map(|(n, group)| (group, digits[self.h_start[j] + n]))
            .collect()
    }

    /// `(group, cell)` pairs of `ha` (or `hb` when `second`) for the `j`-th
    /// `~Kv_i(f, d0)`.
    pub fn hx_cells(&self, digits: &[u8], j: usize, second: bool) -> Vec<(usize, u8)> {
        let (agent, _, _) = self.nabla_negs[j];
        let own: Vec<usize> = self.agent_groups(agent).collect();
        let base = self.hx_start[j] + if second { own.len() } else { 0 };
        own.iter()
            .enumerate()
            .map(|(n, &group)| (group, digits[base + n]))
            .collect()
    }

    /// Whether `ha(i, f, d0)(d0) = hb(i, f, d0)(d0)` for the `j`-th
    /// `~Kv_i(f, d0)`; both default to the empty cell when `d0` has no group.
    pub fn hx_equal_at_target(&self, digits: &[u8], j: usize) -> bool {
        match self.target_positions(j) {
            None => true,
            Some((a, b)) => digits[a] == digits[b],
        }
    }

    fn target_positions(&self, j: usize) -> Option<(usize, usize)> {
        let (agent, _, d0) = self.nabla_negs[j];
        let own: Vec<usize> = self.agent_groups(agent).collect();
        let n = own.iter().position(|&k| self.groups[k].name == d0)?;
        let a = self.hx_start[j] + n;
        Some((a, a + own.len()))
    }

    /// The largest digit allowed at position `j` given the digits before it.
    fn max_digit(&self, digits: &[u8], j: usize) -> u8 {
        match self.slots[j] {
            Slot::Growth { start } => 1 + digits[start..j].iter().copied().max().unwrap_or(0),
            Slot::Cell { group } => self.blocks(digits, group),
        }
    }

    /// `ha(d0)` and `hb(d0)` differ or are both the empty cell.
    pub fn is_state(&self, digits: &[u8]) -> bool {
        (0..self.nabla_negs.len()).all(|j| match self.target_positions(j) {
            None => true,
            Some((a, b)) => digits[a] != digits[b] || digits[a] == 0,
        })
    }

    /// The validity condition restricted to one unit.
    pub fn unit_ok(&self, digits: &[u8], unit: &Unit) -> bool {
        match unit.pair.and_then(|j| self.target_positions(j)) {
            None => true,
            Some((a, b)) => digits[a] != digits[b] || digits[a] == 0,
        }
    }

    /// Steps `digits[lo..hi]` to the lexicographically next value, valid or
    /// not, leaving the rest alone.
    pub fn advance_range(&self, digits: &mut [u8], lo: usize, hi: usize) -> bool {
        for j in (lo..hi).rev() {
            if digits[j] < self.max_digit(digits, j) {
                digits[j] += 1;
                digits[j + 1..hi].iter_mut().for_each(|d| *d = 0);
                return true;
            }
        }
        false
    }

    /// Steps to the lexicographically next digit vector, valid or not.
    fn advance(&self, digits: &mut [u8]) -> bool {
        self.advance_range(digits, 0, digits.len())
    }
}

/// Lazily yields the digit vectors of all states of a shape.
pub(crate) struct StateIter {
    digits: Vec<u8>,
    started: bool,
    done: bool,
}

impl StateIter {
    pub fn new(shape: &Shape) -> StateIter {
        StateIter {
            digits: vec![0; shape.width()],
            started: false,
            done: false,
        }
    }

    pub fn next(&mut self, shape: &Shape) -> Option<&[u8]> {
        if self.done {
            return None;
        }
        if !self.started {
            self.started = true;
            // All-zero is always a state: every guard never realised and
            // every choice the empty cell.
            debug_assert!(shape.is_state(&self.digits));
            return Some(&self.digits);
        }
        loop {
            if !shape.advance(&mut self.digits) {
                self.done = true;
                return None;
            }
            if shape.is_state(&self.digits) {
                return Some(&self.digits);
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::{parse, FormulaSet};

    fn shape_of(items: &[&str]) -> (Closure, Shape) {
        let set: FormulaSet = items.iter().map(|s| parse(s).unwrap()).collect();
        let cl = Closure::new(&set);
        let label = cl.label_of(&set).unwrap();
        let shape = Shape::new(&cl, &label);
        (cl, shape)
    }

    fn all_states(shape: &Shape) -> Vec<Vec<u8>> {
        let mut it = StateIter::new(shape);
        let mut out = Vec::new();
        while let Some(d) = it.next(shape) {
            out.push(d.to_vec());
        }
        out
    }

    #[test]
    fn growth_strings_count_bell_numbers() {
        // Partitions of G plus a marker block: Bell(k + 1).
        for (guards, bell) in [(1, 2), (2, 5), (3, 15), (4, 52)] {
            let items: Vec<String> = (0..guards).map(|k| format!("Kv1(p{k}, d)")).collect();
            let refs: Vec<&str> = items.iter().map(String::as_str).collect();
            let (_, shape) = shape_of(&refs);
            assert_eq!(all_states(&shape).len(), bell, "{guards} guards");
        }
    }

    #[test]
    fn single_guard_order() {
        let (_, shape) = shape_of(&["Kv1(p, d)", "p"]);
        assert_eq!(all_states(&shape), [vec![0], vec![1]]);
    }

    #[test]
    fn empty_shape_has_one_state() {
        let (_, shape) = shape_of(&["p", "[1]q"]);
        assert_eq!(all_states(&shape), [Vec::<u8>::new()]);
    }

    #[test]
    fn nabla_negation_excludes_equal_nonempty_cells() {
        // One guard q for (1, d); ~Kv1(p, d) has ha(d), hb(d) in {0, 1} when
        // q is realised: pairs (0,0), (0,1), (1,0) but not (1,1).
        let (_, shape) = shape_of(&["Kv1(q, d)", "~Kv1(p, d)"]);
        let states = all_states(&shape);
        assert_eq!(
            states,
            [vec![0, 0, 0], vec![1, 0, 0], vec![1, 0, 1], vec![1, 1, 0]]
        );
    }

    #[test]
    fn units_tile_the_cell_digits() {
        let (_, shape) = shape_of(&["Kv1(q, d)", "~Kv1(p, d)", "~[1]r", "~[2]r", "Kv2(q, d)"]);
        assert_eq!(shape.prefix, 2);
        let spans: Vec<(usize, usize)> = shape.units.iter().map(|u| (u.lo, u.hi)).collect();
        assert_eq!(spans, [(2, 3), (3, 4), (4, 6)]);
        assert_eq!(shape.units[2].successors, 2..4);
        assert_eq!(shape.width(), 6);
    }

    #[test]
    fn nabla_negation_on_fresh_name_has_no_digits() {
        let (_, shape) = shape_of(&["Kv1(q, d1)", "~Kv1(p, d2)"]);
        // g: 2 options; ha/hb over d1 each pick a cell freely.
        let states = all_states(&shape);
        assert_eq!(states.len(), 1 + 4);
        assert!(states.iter().all(|d| shape.hx_equal_at_target(d, 0)));
    }
}
