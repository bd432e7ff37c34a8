use std::fmt;

/// A subset of the positive roots, as a bit mask over canonical indices.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct RootMask(pub u128);

impl RootMask {
    pub const EMPTY: RootMask = RootMask(0);

    pub fn full(n: usize) -> Self {
        if n >= 128 {
            RootMask(u128::MAX)
        } else {
            RootMask((1u128 << n) - 1)
        }
    }

    pub fn singleton(i: usize) -> Self {
        RootMask(1u128 << i)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(it: I) -> Self {
        let mut m = 0u128;
        for i in it {
            m |= 1u128 << i;
        }
        RootMask(m)
    }

    #[inline]
    pub fn contains(self, i: usize) -> bool {
        (self.0 >> i) & 1 == 1
    }

    #[inline]
    pub fn insert(&mut self, i: usize) {
        self.0 |= 1u128 << i;
    }

    #[inline]
    pub fn remove(&mut self, i: usize) {
        self.0 &= !(1u128 << i);
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn union(self, o: Self) -> Self {
        RootMask(self.0 | o.0)
    }

    pub fn intersection(self, o: Self) -> Self {
        RootMask(self.0 & o.0)
    }

    pub fn difference(self, o: Self) -> Self {
        RootMask(self.0 & !o.0)
    }

    pub fn is_subset(self, o: Self) -> bool {
        self.0 & !o.0 == 0
    }

    pub fn iter(self) -> MaskIter {
        MaskIter(self.0)
    }
}

pub struct MaskIter(u128);

impl Iterator for MaskIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let i = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(i)
    }
}

impl fmt::Debug for RootMask {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

impl FromIterator<usize> for RootMask {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        RootMask::from_indices(iter)
    }
}

impl serde::Serialize for RootMask {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.collect_seq(self.iter())
    }
}
