use std::fmt;
use std::ops::{BitAnd, BitAndAssign, BitOr, BitOrAssign, Not, Sub};

/// A generator of the group, identified by its position in the input vertex order.
pub type Letter = u8;

/// A word over the generators. Since every generator is an involution,
/// the inverse of a word is its reversal.
pub type Word = Vec<Letter>;

/// Largest alphabet representable by [`LetterSet`].
pub const MAX_LETTERS: usize = 64;

/// A set of letters packed into a single machine word.
#[derive(Copy, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct LetterSet(pub u64);

impl LetterSet {
    pub const EMPTY: LetterSet = LetterSet(0);

    /// The set `{0, 1, ..., n-1}`.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_LETTERS);
        if n == MAX_LETTERS {
            LetterSet(u64::MAX)
        } else {
            LetterSet((1u64 << n) - 1)
        }
    }

    pub fn singleton(a: Letter) -> Self {
        LetterSet(1u64 << a)
    }

    pub fn from_letters<I: IntoIterator<Item = Letter>>(it: I) -> Self {
        let mut s = LetterSet::EMPTY;
        for a in it {
            s.insert(a);
        }
        s
    }

    #[inline]
    pub fn contains(self, a: Letter) -> bool {
        self.0 >> a & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, a: Letter) {
        self.0 |= 1u64 << a;
    }

    #[inline]
    pub fn remove(&mut self, a: Letter) {
        self.0 &= !(1u64 << a);
    }

    #[inline]
    pub fn with(self, a: Letter) -> Self {
        LetterSet(self.0 | 1u64 << a)
    }

    #[inline]
    pub fn without(self, a: Letter) -> Self {
        LetterSet(self.0 & !(1u64 << a))
    }

    #[inline]
    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub fn is_subset(self, other: LetterSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement relative to an alphabet of size `n`.
    #[inline]
    pub fn complement(self, n: usize) -> Self {
        LetterSet(!self.0 & LetterSet::full(n).0)
    }

    /// Smallest letter, if any.
    pub fn min(self) -> Option<Letter> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as Letter)
        }
    }

    /// Letters in increasing order.
    pub fn iter(self) -> LetterIter {
        LetterIter(self.0)
    }
}

pub struct LetterIter(u64);

impl Iterator for LetterIter {
    type Item = Letter;

    fn next(&mut self) -> Option<Letter> {
        if self.0 == 0 {
            return None;
        }
        let a = self.0.trailing_zeros() as Letter;
        self.0 &= self.0 - 1;
        Some(a)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl IntoIterator for LetterSet {
    type Item = Letter;
    type IntoIter = LetterIter;
    fn into_iter(self) -> LetterIter {
        self.iter()
    }
}

impl FromIterator<Letter> for LetterSet {
    fn from_iter<I: IntoIterator<Item = Letter>>(it: I) -> Self {
        LetterSet::from_letters(it)
    }
}

impl BitOr for LetterSet {
    type Output = LetterSet;
    fn bitor(self, o: LetterSet) -> LetterSet {
        LetterSet(self.0 | o.0)
    }
}

impl BitOrAssign for LetterSet {
    fn bitor_assign(&mut self, o: LetterSet) {
        self.0 |= o.0;
    }
}

impl BitAnd for LetterSet {
    type Output = LetterSet;
    fn bitand(self, o: LetterSet) -> LetterSet {
        LetterSet(self.0 & o.0)
    }
}

impl BitAndAssign for LetterSet {
    fn bitand_assign(&mut self, o: LetterSet) {
        self.0 &= o.0;
    }
}

impl Sub for LetterSet {
    type Output = LetterSet;
    fn sub(self, o: LetterSet) -> LetterSet {
        LetterSet(self.0 & !o.0)
    }
}

impl Not for LetterSet {
    type Output = LetterSet;
    fn not(self) -> LetterSet {
        LetterSet(!self.0)
    }
}

impl fmt::Debug for LetterSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}
