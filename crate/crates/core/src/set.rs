//! Small element sets stored as bitmasks.
//!
//! Elements are zero-based indices `0..MAX_GROUND`; they are rendered one-based
//! everywhere text is produced. Iteration is always in increasing order, which
//! is the total order of the ground set used by every sign convention.

use std::fmt;

pub const MAX_GROUND: usize = 12;

#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ElemSet(u16);

impl ElemSet {
    pub const EMPTY: ElemSet = ElemSet(0);

    pub fn from_bits(bits: u16) -> Self {
        ElemSet(bits)
    }

    pub fn bits(self) -> u16 {
        self.0
    }

    /// The set `{0, .., n-1}`.
    pub fn full(n: usize) -> Self {
        assert!(n <= MAX_GROUND);
        ElemSet(((1u32 << n) - 1) as u16)
    }

    pub fn singleton(e: usize) -> Self {
        ElemSet(1 << e)
    }

    pub fn from_elems<I: IntoIterator<Item = usize>>(it: I) -> Self {
        it.into_iter().fold(ElemSet::EMPTY, |s, e| s.with(e))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, e: usize) -> bool {
        e < 16 && self.0 & (1 << e) != 0
    }

    pub fn with(self, e: usize) -> Self {
        ElemSet(self.0 | (1 << e))
    }

    pub fn without(self, e: usize) -> Self {
        ElemSet(self.0 & !(1 << e))
    }

    pub fn union(self, o: Self) -> Self {
        ElemSet(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        ElemSet(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        ElemSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn min(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn iter(self) -> impl Iterator<Item = usize> + Clone {
        let bits = self.0;
        (0..16).filter(move |e| bits & (1 << e) != 0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Position of `e` in the sorted listing of the set.
    pub fn rank_of(self, e: usize) -> usize {
        (self.0 & ((1u16 << e) - 1)).count_ones() as usize
    }

    /// All subsets of `self` of size `k`, in lexicographic order of their sorted tuples.
    pub fn subsets_of_size(self, k: usize) -> impl Iterator<Item = ElemSet> {
        use itertools::Itertools;
        self.to_vec()
            .into_iter()
            .combinations(k)
            .map(ElemSet::from_elems)
    }

    /// All subsets of `self`, in no particular order.
    pub fn all_subsets(self) -> impl Iterator<Item = ElemSet> {
        let mask = self.0;
        let mut cur: Option<u16> = Some(0);
        std::iter::from_fn(move || {
            let s = cur?;
            cur = if s == mask {
                None
            } else {
                Some((s.wrapping_sub(mask)) & mask)
            };
            Some(ElemSet(s))
        })
    }

    /// Lexicographic comparison of the sorted tuples.
    pub fn lex_cmp(self, other: Self) -> std::cmp::Ordering {
        self.iter().cmp(other.iter())
    }
}

impl fmt::Display for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, e) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{}", e + 1)?;
        }
        write!(f, "}}")
    }
}

impl fmt::Debug for ElemSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Sign of the permutation that sorts `tuple`, or `None` if it has a repeated entry.
pub fn sort_sign(tuple: &[usize]) -> Option<i8> {
    let mut sign = 1i8;
    for i in 0..tuple.len() {
        for j in i + 1..tuple.len() {
            match tuple[i].cmp(&tuple[j]) {
                std::cmp::Ordering::Equal => return None,
                std::cmp::Ordering::Greater => sign = -sign,
                std::cmp::Ordering::Less => {}
            }
        }
    }
    Some(sign)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_enumerate_everything_once() {
        let s = ElemSet::from_elems([0, 2, 5]);
        let mut all: Vec<u16> = s.all_subsets().map(|x| x.bits()).collect();
        all.sort();
        all.dedup();
        assert_eq!(all.len(), 8);
        assert!(all.iter().all(|&b| ElemSet(b).is_subset(s)));
    }

    #[test]
    fn lex_order_of_k_subsets() {
        let v: Vec<String> = ElemSet::full(4)
            .subsets_of_size(3)
            .map(|s| s.to_string())
            .collect();
        assert_eq!(v, ["{1,2,3}", "{1,2,4}", "{1,3,4}", "{2,3,4}"]);
    }

    #[test]
    fn sort_sign_counts_inversions() {
        assert_eq!(sort_sign(&[0, 1, 2]), Some(1));
        assert_eq!(sort_sign(&[1, 0, 2]), Some(-1));
        assert_eq!(sort_sign(&[2, 0, 1]), Some(1));
        assert_eq!(sort_sign(&[1, 1]), None);
        assert_eq!(sort_sign(&[]), Some(1));
    }

    #[test]
    fn rank_of_is_position() {
        let s = ElemSet::from_elems([1, 4, 6]);
        assert_eq!(s.rank_of(1), 0);
        assert_eq!(s.rank_of(4), 1);
        assert_eq!(s.rank_of(6), 2);
    }
}
