//! Propositional tautology check on the boolean skeleton of a formula.
//!
//! Maximal `[i]` and `Kv_i` subformulas become atoms (equal prints, same
//! atom); the skeleton is then evaluated on all assignments, 64 at a time.

use std::collections::BTreeMap;

use crate::formula::Formula;

/// Largest number of atoms the truth table accepts.
pub const MAX_TAUT_ATOMS: usize = 26;

enum Node {
    Top,
    Atom(usize),
    Not(Box<Node>),
    And(Box<Node>, Box<Node>),
}

fn skeleton(f: &Formula, atoms: &mut BTreeMap<String, usize>) -> Node {
    let mut atom = |key: String| {
        let next = atoms.len();
        Node::Atom(*atoms.entry(key).or_insert(next))
    };
    match f {
        Formula::Top => Node::Top,
        Formula::Not(c) => Node::Not(Box::new(skeleton(c, atoms))),
        Formula::And(a, b) => {
            let a = skeleton(a, atoms);
            Node::And(Box::new(a), Box::new(skeleton(b, atoms)))
        }
        Formula::Prop(_) | Formula::Box(..) | Formula::Nabla(..) => atom(f.print()),
    }
}

fn eval(n: &Node, words: &[u64]) -> u64 {
    match n {
        Node::Top => !0,
        Node::Atom(k) => words[*k],
        Node::Not(c) => !eval(c, words),
        Node::And(a, b) => eval(a, words) & eval(b, words),
    }
}

/// Whether the skeleton of `f` is true under every assignment; `None` when
/// it has more than [`MAX_TAUT_ATOMS`] atoms.
pub fn is_tautology(f: &Formula) -> Option<bool> {
    let mut atoms = BTreeMap::new();
    let node = skeleton(f, &mut atoms);
    let n = atoms.len();
    if n > MAX_TAUT_ATOMS {
        return None;
    }
    // Atoms 0..6 vary inside a word, the rest across words.
    const LANES: [u64; 6] = [
        0xAAAA_AAAA_AAAA_AAAA,
        0xCCCC_CCCC_CCCC_CCCC,
        0xF0F0_F0F0_F0F0_F0F0,
        0xFF00_FF00_FF00_FF00,
        0xFFFF_0000_FFFF_0000,
        0xFFFF_FFFF_0000_0000,
    ];
    let inner = n.min(6);
    let valid = if n >= 6 { !0 } else { (1u64 << (1 << n)) - 1 };
    let mut words = vec![0u64; n];
    words[..inner].copy_from_slice(&LANES[..inner]);
    for outer in 0u64..1 << n.saturating_sub(6) {
        for (k, w) in words.iter_mut().enumerate().skip(6) {
            *w = if outer >> (k - 6) & 1 == 1 { !0 } else { 0 };
        }
        if eval(&node, &words) & valid != valid {
            return Some(false);
        }
    }
    Some(true)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::formula::parse;

    fn taut(text: &str) -> bool {
        is_tautology(&parse(text).unwrap()).unwrap()
    }

    #[test]
    fn propositional() {
        assert!(taut("p -> p"));
        assert!(taut("T"));
        assert!(!taut("F"));
        assert!(!taut("p"));
        assert!(taut("p | ~p"));
        assert!(taut("(p -> q) -> ((q -> r) -> (p -> r))"));
        assert!(!taut("(p -> q) -> (q -> p)"));
        assert!(taut("~(p & q) <-> (~p | ~q)"));
    }

    #[test]
    fn modal_atoms() {
        assert!(taut("[1]p | ~[1]p"));
        assert!(!taut("[1]p | ~[2]p"));
        assert!(!taut("[1](p | ~p)"));
        assert!(taut("Kv1(p, d) -> (q -> Kv1(p, d))"));
    }

    #[test]
    fn many_atoms() {
        // Ten variables: the last assignment checked is the falsifying one.
        let vars: Vec<String> = (0..10).map(|k| format!("p{k}")).collect();
        let all = vars.join(" & ");
        assert!(taut(&format!("{all} -> p9")));
        assert!(!taut(&format!("~({all})")));
        let too_many: Vec<String> = (0..=MAX_TAUT_ATOMS).map(|k| format!("p{k}")).collect();
        assert_eq!(is_tautology(&parse(&too_many.join(" & ")).unwrap()), None);
    }
}
