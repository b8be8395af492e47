//! Bitmask subsets of a small ground set.
//!
//! Bit `i` stands for the `i`-th label of the owning [`GroundSet`](crate::GroundSet).

use std::fmt;
use std::ops::{BitAnd, BitOr, Not, Sub};

use serde::{Deserialize, Serialize};

/// A subset of a ground set with at most 32 elements.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default, Serialize, Deserialize)]
#[serde(transparent)]
pub struct Subset(pub u32);

impl Subset {
    pub const EMPTY: Subset = Subset(0);

    /// The full set on `n` elements.
    #[inline]
    pub fn full(n: usize) -> Subset {
        debug_assert!(n <= 32);
        if n == 32 {
            Subset(u32::MAX)
        } else {
            Subset((1u32 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(i: usize) -> Subset {
        Subset(1 << i)
    }

    #[inline]
    pub fn bits(self) -> u32 {
        self.0
    }

    #[inline]
    pub fn index(self) -> usize {
        self.0 as usize
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        self.0 >> i & 1 == 1
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn is_subset_of(self, other: Subset) -> bool {
        self.0 & !other.0 == 0
    }

    #[inline]
    pub fn is_disjoint(self, other: Subset) -> bool {
        self.0 & other.0 == 0
    }

    #[inline]
    pub fn with(self, i: usize) -> Subset {
        Subset(self.0 | 1 << i)
    }

    #[inline]
    pub fn without(self, i: usize) -> Subset {
        Subset(self.0 & !(1 << i))
    }

    /// Element indices in increasing order.
    pub fn elements(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                None
            } else {
                let i = rest.trailing_zeros() as usize;
                rest &= rest - 1;
                Some(i)
            }
        })
    }

    /// All subsets of `self`, in increasing numeric order.
    pub fn subsets(self) -> impl Iterator<Item = Subset> {
        let full = self.0;
        let mut next = Some(0u32);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == full {
                None
            } else {
                Some((cur.wrapping_sub(full)) & full)
            };
            Some(Subset(cur))
        })
    }

    /// Packs the bits of `self` selected by `kept` into a dense mask, so that
    /// the `j`-th element of `kept` becomes bit `j`.
    pub fn compress_to(self, kept: Subset) -> Subset {
        let mut out = 0u32;
        for (j, i) in kept.elements().enumerate() {
            if self.contains(i) {
                out |= 1 << j;
            }
        }
        Subset(out)
    }

    /// Inverse of [`Subset::compress_to`].
    pub fn expand_from(self, kept: Subset) -> Subset {
        let mut out = 0u32;
        for (j, i) in kept.elements().enumerate() {
            if self.contains(j) {
                out |= 1 << i;
            }
        }
        Subset(out)
    }
}

/// All subsets of an `n`-element ground set in mask order.
pub fn all_subsets(n: usize) -> impl Iterator<Item = Subset> {
    (0..1u32 << n).map(Subset)
}

impl BitOr for Subset {
    type Output = Subset;
    fn bitor(self, rhs: Subset) -> Subset {
        Subset(self.0 | rhs.0)
    }
}

impl BitAnd for Subset {
    type Output = Subset;
    fn bitand(self, rhs: Subset) -> Subset {
        Subset(self.0 & rhs.0)
    }
}

impl Sub for Subset {
    type Output = Subset;
    fn sub(self, rhs: Subset) -> Subset {
        Subset(self.0 & !rhs.0)
    }
}

impl Not for Subset {
    type Output = Subset;
    fn not(self) -> Subset {
        Subset(!self.0)
    }
}

impl fmt::Debug for Subset {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{{")?;
        for (n, i) in self.elements().enumerate() {
            if n > 0 {
                write!(f, ",")?;
            }
            write!(f, "{i}")?;
        }
        write!(f, "}}")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn subsets_of_mask() {
        let s = Subset(0b1010);
        let subs: Vec<u32> = s.subsets().map(|x| x.0).collect();
        assert_eq!(subs, vec![0, 0b0010, 0b1000, 0b1010]);
        assert_eq!(Subset::EMPTY.subsets().count(), 1);
    }

    #[test]
    fn compress_expand_roundtrip() {
        let kept = Subset(0b10110);
        for m in kept.subsets() {
            let c = m.compress_to(kept);
            assert!(c.0 < 1 << kept.len());
            assert_eq!(c.expand_from(kept), m);
        }
    }

    #[test]
    fn elements_in_order() {
        assert_eq!(Subset(0b1101).elements().collect::<Vec<_>>(), vec![0, 2, 3]);
        assert_eq!(Subset::full(3).len(), 3);
    }
}
