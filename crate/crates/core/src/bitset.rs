use alloc::vec;
use alloc::vec::Vec;

/// Dense fixed-size bitset over packed indices.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct BitSet {
    len: u64,
    words: Vec<u64>,
}

impl BitSet {
    pub fn new(len: u64) -> BitSet {
        BitSet {
            len,
            words: vec![0; len.div_ceil(64) as usize],
        }
    }

    pub fn from_words(len: u64, words: Vec<u64>) -> Option<BitSet> {
        if words.len() as u64 != len.div_ceil(64) {
            return None;
        }
        let mut set = BitSet { len, words };
        set.clear_tail();
        Some(set)
    }

    fn clear_tail(&mut self) {
        let rem = self.len % 64;
        if rem != 0 {
            if let Some(last) = self.words.last_mut() {
                *last &= (1u64 << rem) - 1;
            }
        }
    }

    pub fn len(&self) -> u64 {
        self.len
    }

    pub fn is_empty(&self) -> bool {
        self.count() == 0
    }

    pub fn words(&self) -> &[u64] {
        &self.words
    }

    #[inline]
    pub fn insert(&mut self, i: u64) -> bool {
        debug_assert!(i < self.len);
        let (w, b) = ((i / 64) as usize, i % 64);
        let fresh = self.words[w] & (1 << b) == 0;
        self.words[w] |= 1 << b;
        fresh
    }

    #[inline]
    pub fn contains(&self, i: u64) -> bool {
        i < self.len && self.words[(i / 64) as usize] & (1 << (i % 64)) != 0
    }

    pub fn count(&self) -> u64 {
        self.words.iter().map(|w| w.count_ones() as u64).sum()
    }

    pub fn union_with(&mut self, other: &BitSet) {
        assert_eq!(self.len, other.len, "bitset length mismatch");
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= *b;
        }
    }

    pub fn is_subset(&self, other: &BitSet) -> bool {
        self.len == other.len && self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    /// Set bits in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = u64> + '_ {
        self.iter_range(0, self.len)
    }

    /// Set bits in `[start, end)`, increasing.
    pub fn iter_range(&self, start: u64, end: u64) -> impl Iterator<Item = u64> + '_ {
        let end = end.min(self.len);
        let last_word = end.div_ceil(64) as usize;
        let first_word = ((start / 64) as usize).min(last_word);
        self.words[first_word..last_word]
            .iter()
            .enumerate()
            .flat_map(move |(k, &w)| {
                let base = (first_word + k) as u64 * 64;
                let mut bits = w;
                core::iter::from_fn(move || {
                    if bits == 0 {
                        return None;
                    }
                    let tz = bits.trailing_zeros() as u64;
                    bits &= bits - 1;
                    Some(base + tz)
                })
            })
            .filter(move |&i| i >= start && i < end)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn basic_ops() {
        let mut s = BitSet::new(130);
        assert!(s.insert(0));
        assert!(s.insert(64));
        assert!(s.insert(129));
        assert!(!s.insert(64));
        assert_eq!(s.count(), 3);
        assert!(s.contains(129));
        assert!(!s.contains(130));
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![0, 64, 129]);
        assert_eq!(s.iter_range(1, 129).collect::<Vec<_>>(), vec![64]);
        let mut t = BitSet::new(130);
        t.insert(5);
        t.union_with(&s);
        assert!(s.is_subset(&t));
        assert!(!t.is_subset(&s));
    }

    #[test]
    fn from_words_masks_tail() {
        let s = BitSet::from_words(3, vec![u64::MAX]).unwrap();
        assert_eq!(s.count(), 3);
        assert!(BitSet::from_words(65, vec![0]).is_none());
    }
}
