/// A set of closure indices.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub(crate) struct Label {
    words: Vec<u64>,
}

impl Label {
    pub fn empty(universe: usize) -> Label {
        Label {
            words: vec![0; universe.div_ceil(64)],
        }
    }

    pub fn contains(&self, i: u32) -> bool {
        let i = i as usize;
        self.words[i / 64] >> (i % 64) & 1 == 1
    }

    pub fn insert(&mut self, i: u32) -> bool {
        let i = i as usize;
        let bit = 1u64 << (i % 64);
        let fresh = self.words[i / 64] & bit == 0;
        self.words[i / 64] |= bit;
        fresh
    }

    pub fn with(&self, items: &[u32]) -> Label {
        let mut out = self.clone();
        for &i in items {
            out.insert(i);
        }
        out
    }

    pub fn union_with(&mut self, other: &Label) {
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u32> + '_ {
        self.words.iter().enumerate().flat_map(|(k, &w)| {
            let mut rest = w;
            std::iter::from_fn(move || {
                if rest == 0 {
                    return None;
                }
                let bit = rest.trailing_zeros();
                rest &= rest - 1;
                Some(k as u32 * 64 + bit)
            })
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut a = Label::empty(130);
        assert!(a.insert(3));
        assert!(!a.insert(3));
        a.insert(129);
        a.insert(64);
        assert_eq!(a.iter().collect::<Vec<_>>(), [3, 64, 129]);
        assert_eq!(a.len(), 3);
        let b = a.with(&[5]);
        let mut c = Label::empty(130);
        c.union_with(&b);
        assert_eq!(c, b);
    }
}
