//! Fixed-capacity bit set over state indices.

use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

const WORD_BITS: usize = 64;

/// A set of states drawn from a fixed universe `{0, .., capacity-1}`.
///
/// Equality and ordering compare contents only; two sets with the same
/// members but different capacities are unequal, since they describe subsets
/// of different state spaces.
#[derive(Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct StateSet {
    capacity: usize,
    words: Vec<u64>,
}

impl StateSet {
    /// Empty set over `{0, .., capacity-1}`.
    pub fn empty(capacity: usize) -> Self {
        let nwords = capacity.div_ceil(WORD_BITS);
        StateSet {
            capacity,
            words: vec![0; nwords],
        }
    }

    /// Full set over `{0, .., capacity-1}`.
    pub fn full(capacity: usize) -> Self {
        let mut s = Self::empty(capacity);
        for q in 0..capacity {
            s.insert(q);
        }
        s
    }

    /// Set containing the given members. Members at or above `capacity` are
    /// rejected.
    pub fn from_members(capacity: usize, members: &[usize]) -> crate::Result<Self> {
        let mut s = Self::empty(capacity);
        for &q in members {
            if q >= capacity {
                return Err(crate::Error::OutOfRange {
                    what: "set member",
                    value: q,
                    bound: capacity,
                });
            }
            s.insert(q);
        }
        Ok(s)
    }

    /// Set whose members are the set bits of `mask`, read as states
    /// `0, .., capacity-1`. Bits at or above `capacity` must be clear.
    pub fn from_mask(capacity: usize, mask: u64) -> crate::Result<Self> {
        if capacity < WORD_BITS && (mask >> capacity) != 0 {
            return Err(crate::Error::OutOfRange {
                what: "set mask bit",
                value: (63 - mask.leading_zeros()) as usize,
                bound: capacity,
            });
        }
        let mut s = Self::empty(capacity);
        if !s.words.is_empty() {
            s.words[0] = mask;
        }
        Ok(s)
    }

    pub fn capacity(&self) -> usize {
        self.capacity
    }

    pub fn insert(&mut self, q: usize) {
        debug_assert!(q < self.capacity);
        self.words[q / WORD_BITS] |= 1 << (q % WORD_BITS);
    }

    pub fn remove(&mut self, q: usize) {
        debug_assert!(q < self.capacity);
        self.words[q / WORD_BITS] &= !(1 << (q % WORD_BITS));
    }

    pub fn contains(&self, q: usize) -> bool {
        q < self.capacity && self.words[q / WORD_BITS] & (1 << (q % WORD_BITS)) != 0
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Members in increasing order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        (0..self.capacity).filter(move |&q| self.contains(q))
    }

    /// Complement within the universe.
    pub fn complement(&self) -> Self {
        let mut out = Self::empty(self.capacity);
        for q in 0..self.capacity {
            if !self.contains(q) {
                out.insert(q);
            }
        }
        out
    }

    /// True when the two sets share a member.
    pub fn intersects(&self, other: &Self) -> bool {
        self.words
            .iter()
            .zip(other.words.iter())
            .any(|(a, b)| a & b != 0)
    }

    /// The members packed into a `u64` mask. Requires `capacity <= 64`.
    pub fn to_mask(&self) -> u64 {
        assert!(self.capacity <= WORD_BITS, "set too large for a u64 mask");
        self.words.first().copied().unwrap_or(0)
    }
}

impl fmt::Debug for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for StateSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, q) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{q}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn insert_contains_len() {
        let mut s = StateSet::empty(5);
        assert!(s.is_empty());
        s.insert(0);
        s.insert(3);
        assert!(s.contains(0) && s.contains(3) && !s.contains(1));
        assert_eq!(s.len(), 2);
        s.remove(0);
        assert_eq!(s.len(), 1);
    }

    #[test]
    fn mask_round_trip() {
        let s = StateSet::from_mask(4, 0b1010).unwrap();
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![1, 3]);
        assert_eq!(s.to_mask(), 0b1010);
        assert!(StateSet::from_mask(2, 0b100).is_err());
    }

    #[test]
    fn complement_and_display() {
        let s = StateSet::from_members(3, &[1]).unwrap();
        assert_eq!(s.complement().iter().collect::<Vec<_>>(), vec![0, 2]);
        assert_eq!(alloc::format!("{s}"), "{1}");
        assert_eq!(alloc::format!("{}", StateSet::empty(3)), "{}");
    }

    #[test]
    fn large_universe() {
        let mut s = StateSet::empty(200);
        s.insert(199);
        s.insert(64);
        assert_eq!(s.iter().collect::<Vec<_>>(), vec![64, 199]);
        assert_eq!(s.len(), 2);
    }
}
