//! The replacement relation behind the RE rule.

use crate::formula::Formula;

/// `(same, replaced)`: whether `y` equals `x`, and whether `y` arises from
/// `x` by replacing at least one occurrence of `from` with `to`.
fn walk(x: &Formula, y: &Formula, from: &Formula, to: &Formula) -> (bool, bool) {
    let same = x == y;
    let here = x == from && y == to;
    let below = match (x, y) {
        (Formula::Not(a), Formula::Not(b)) => walk(a, b, from, to).1,
        (Formula::Box(i, a), Formula::Box(j, b)) => i == j && walk(a, b, from, to).1,
        (Formula::Nabla(i, a, d), Formula::Nabla(j, b, e)) => {
            i == j && d == e && walk(a, b, from, to).1
        }
        (Formula::And(a1, a2), Formula::And(b1, b2)) => {
            let (s1, r1) = walk(a1, b1, from, to);
            let (s2, r2) = walk(a2, b2, from, to);
            (r1 && (s2 || r2)) || (s1 && r2)
        }
        _ => false,
    };
    (same, here || below)
}

/// Whether `y` is `x` with some nonempty set of occurrences of `from`
/// replaced by `to`.
pub(crate) fn is_replacement(x: &Formula, y: &Formula, from: &Formula, to: &Formula) -> bool {
    walk(x, y, from, to).1
}
