//! Finite sets of small ordinals stored as 128-bit masks.

use std::cmp::Ordering;
use std::fmt;

use serde::de::{Error as _, SeqAccess, Visitor};
use serde::{Deserialize, Deserializer, Serialize, Serializer};

/// Largest supported universe size; ordinals are always `< MAX_SIZE`.
pub const MAX_SIZE: u32 = 128;

/// A finite set of naturals below [`MAX_SIZE`].
///
/// Ordering is lexicographic on the ascending element lists, so a proper
/// prefix sorts first.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct OrdSet(u128);

impl OrdSet {
    pub const EMPTY: OrdSet = OrdSet(0);

    pub fn from_bits(bits: u128) -> Self {
        OrdSet(bits)
    }

    pub fn bits(self) -> u128 {
        self.0
    }

    pub fn singleton(x: u32) -> Self {
        OrdSet(1u128 << x)
    }

    /// The interval `[lo, hi)`.
    pub fn range(lo: u32, hi: u32) -> Self {
        OrdSet(OrdSet::below_mask(hi) & !OrdSet::below_mask(lo))
    }

    fn below_mask(hi: u32) -> u128 {
        if hi >= MAX_SIZE {
            u128::MAX
        } else {
            (1u128 << hi) - 1
        }
    }

    pub fn contains(self, x: u32) -> bool {
        x < MAX_SIZE && self.0 >> x & 1 == 1
    }

    pub fn insert(&mut self, x: u32) {
        assert!(x < MAX_SIZE, "ordinal {x} out of range");
        self.0 |= 1u128 << x;
    }

    pub fn remove(&mut self, x: u32) {
        if x < MAX_SIZE {
            self.0 &= !(1u128 << x);
        }
    }

    pub fn len(self) -> u32 {
        self.0.count_ones()
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn first(self) -> Option<u32> {
        (self.0 != 0).then(|| self.0.trailing_zeros())
    }

    pub fn last(self) -> Option<u32> {
        (self.0 != 0).then(|| 127 - self.0.leading_zeros())
    }

    pub fn union(self, o: OrdSet) -> OrdSet {
        OrdSet(self.0 | o.0)
    }

    pub fn inter(self, o: OrdSet) -> OrdSet {
        OrdSet(self.0 & o.0)
    }

    pub fn diff(self, o: OrdSet) -> OrdSet {
        OrdSet(self.0 & !o.0)
    }

    pub fn is_subset(self, o: OrdSet) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn is_disjoint(self, o: OrdSet) -> bool {
        self.0 & o.0 == 0
    }

    /// Elements `< hi`.
    pub fn below(self, hi: u32) -> OrdSet {
        OrdSet(self.0 & OrdSet::below_mask(hi))
    }

    /// Elements `>= lo`.
    pub fn at_or_above(self, lo: u32) -> OrdSet {
        OrdSet(self.0 & !OrdSet::below_mask(lo))
    }

    /// Least element `>= lo`.
    pub fn min_at_or_above(self, lo: u32) -> Option<u32> {
        self.at_or_above(lo).first()
    }

    /// Least element `> x`.
    pub fn next_above(self, x: u32) -> Option<u32> {
        if x + 1 >= MAX_SIZE {
            None
        } else {
            self.at_or_above(x + 1).first()
        }
    }

    /// `{x + 1 : x in self}`; elements at the top edge are dropped.
    pub fn succ(self) -> OrdSet {
        OrdSet(self.0 << 1)
    }

    /// Least natural not in the set.
    pub fn first_gap(self) -> u32 {
        (!self.0).trailing_zeros()
    }

    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// All nonempty initial segments, shortest first.
    pub fn initial_segments(self) -> impl Iterator<Item = OrdSet> {
        self.iter().map(move |x| self.below(x + 1))
    }

    pub fn to_vec(self) -> Vec<u32> {
        self.iter().collect()
    }
}

pub struct Iter(u128);

impl Iterator for Iter {
    type Item = u32;
    fn next(&mut self) -> Option<u32> {
        if self.0 == 0 {
            return None;
        }
        let x = self.0.trailing_zeros();
        self.0 &= self.0 - 1;
        Some(x)
    }
}

impl FromIterator<u32> for OrdSet {
    fn from_iter<I: IntoIterator<Item = u32>>(it: I) -> Self {
        let mut s = OrdSet::EMPTY;
        for x in it {
            s.insert(x);
        }
        s
    }
}

impl Ord for OrdSet {
    fn cmp(&self, other: &Self) -> Ordering {
        let d = self.0 ^ other.0;
        if d == 0 {
            return Ordering::Equal;
        }
        // Below the lowest differing bit both lists agree; whichever set
        // lacks that bit is smaller exactly when it has nothing above it.
        let m = d.trailing_zeros();
        let (lacking, flip) = if self.contains(m) { (other, true) } else { (self, false) };
        let lacking_smaller = lacking.at_or_above(m).is_empty();
        match (lacking_smaller, flip) {
            (true, false) | (false, true) => Ordering::Less,
            _ => Ordering::Greater,
        }
    }
}

impl PartialOrd for OrdSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for OrdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for OrdSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (i, x) in self.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{x}")?;
        }
        write!(f, "}}")
    }
}

impl Serialize for OrdSet {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}

impl<'de> Deserialize<'de> for OrdSet {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        struct V;
        impl<'de> Visitor<'de> for V {
            type Value = OrdSet;
            fn expecting(&self, f: &mut fmt::Formatter) -> fmt::Result {
                write!(f, "an array of naturals below {MAX_SIZE}")
            }
            fn visit_seq<A: SeqAccess<'de>>(self, mut seq: A) -> Result<OrdSet, A::Error> {
                let mut s = OrdSet::EMPTY;
                while let Some(x) = seq.next_element::<u32>()? {
                    if x >= MAX_SIZE {
                        return Err(A::Error::custom(format!("ordinal {x} exceeds {}", MAX_SIZE - 1)));
                    }
                    s.insert(x);
                }
                Ok(s)
            }
        }
        d.deserialize_seq(V)
    }
}

/// An ordinal below the top, or the symbolic top `kappa`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Debug)]
pub enum OrdinalValue {
    Fin(u32),
    Kappa,
}

impl OrdinalValue {
    /// The cut `[0, self)` applied to `s`.
    pub fn cut(self, s: OrdSet) -> OrdSet {
        match self {
            OrdinalValue::Fin(a) => s.below(a),
            OrdinalValue::Kappa => s,
        }
    }

    pub fn fin(self) -> Option<u32> {
        match self {
            OrdinalValue::Fin(a) => Some(a),
            OrdinalValue::Kappa => None,
        }
    }
}

impl fmt::Display for OrdinalValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            OrdinalValue::Fin(a) => write!(f, "{a}"),
            OrdinalValue::Kappa => write!(f, "kappa"),
        }
    }
}

impl Serialize for OrdinalValue {
    fn serialize<S: Serializer>(&self, s: S) -> Result<S::Ok, S::Error> {
        match self {
            OrdinalValue::Fin(a) => s.serialize_u32(*a),
            OrdinalValue::Kappa => s.serialize_str("kappa"),
        }
    }
}

impl<'de> Deserialize<'de> for OrdinalValue {
    fn deserialize<D: Deserializer<'de>>(d: D) -> Result<Self, D::Error> {
        #[derive(Deserialize)]
        #[serde(untagged)]
        enum Raw {
            N(u32),
            S(String),
        }
        match Raw::deserialize(d)? {
            Raw::N(n) if n < MAX_SIZE => Ok(OrdinalValue::Fin(n)),
            Raw::N(n) => Err(D::Error::custom(format!("ordinal {n} exceeds {}", MAX_SIZE - 1))),
            Raw::S(s) if s == "kappa" => Ok(OrdinalValue::Kappa),
            Raw::S(s) => Err(D::Error::custom(format!("expected \"kappa\", found {s:?}"))),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn s(xs: &[u32]) -> OrdSet {
        xs.iter().copied().collect()
    }

    #[test]
    fn basic_ops() {
        let a = s(&[0, 1, 2, 13, 20, 21]);
        assert_eq!(a.last(), Some(21));
        assert_eq!(a.first(), Some(0));
        assert_eq!(a.first_gap(), 3);
        assert_eq!(a.below(20), s(&[0, 1, 2, 13]));
        assert_eq!(a.min_at_or_above(14), Some(20));
        assert_eq!(a.succ(), s(&[1, 2, 3, 14, 21, 22]));
        assert_eq!(OrdSet::range(3, 6), s(&[3, 4, 5]));
        assert_eq!(a.initial_segments().count(), 6);
        assert_eq!(OrdSet::singleton(127).last(), Some(127));
    }

    proptest! {
        #[test]
        fn order_matches_sorted_vectors(a in proptest::collection::btree_set(0u32..128, 0..8),
                                        b in proptest::collection::btree_set(0u32..128, 0..8)) {
            let va: Vec<u32> = a.iter().copied().collect();
            let vb: Vec<u32> = b.iter().copied().collect();
            let sa: OrdSet = va.iter().copied().collect();
            let sb: OrdSet = vb.iter().copied().collect();
            prop_assert_eq!(sa.cmp(&sb), va.cmp(&vb));
            prop_assert_eq!(sa.to_vec(), va);
        }
    }
}
