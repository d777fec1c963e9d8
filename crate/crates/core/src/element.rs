//! Subsets of a small finite index set, packed into a `u64`.
//!
//! The same type encodes elements of a finite Boolean algebra (sets of
//! atoms) and sets of worlds in a finite frame.

use std::fmt;

/// Largest atom / world count a single [`Element`] can address.
pub const MAX_ATOMS: usize = 63;

#[derive(Clone, Copy, Default, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Element(u64);

impl Element {
    pub const BOTTOM: Element = Element(0);

    pub const fn from_bits(bits: u64) -> Self {
        Element(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn atom(index: usize) -> Self {
        debug_assert!(index < MAX_ATOMS);
        Element(1 << index)
    }

    /// The top element of the algebra with `n` atoms.
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_ATOMS);
        Element((1u64 << n) - 1)
    }

    pub fn from_indices<I: IntoIterator<Item = usize>>(indices: I) -> Self {
        indices.into_iter().fold(Element::BOTTOM, |acc, i| acc | Element::atom(i))
    }

    pub fn has(self, index: usize) -> bool {
        index < 64 && self.0 >> index & 1 == 1
    }

    pub fn is_bottom(self) -> bool {
        self.0 == 0
    }

    pub fn is_atom(self) -> bool {
        self.0.count_ones() == 1
    }

    pub fn count(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn meet(self, other: Element) -> Element {
        Element(self.0 & other.0)
    }

    pub fn join(self, other: Element) -> Element {
        Element(self.0 | other.0)
    }

    /// Relative complement `self − other`.
    pub fn minus(self, other: Element) -> Element {
        Element(self.0 & !other.0)
    }

    pub fn leq(self, other: Element) -> bool {
        self.0 & !other.0 == 0
    }

    /// Complement relative to the top element `top`.
    pub fn complement_in(self, top: Element) -> Element {
        Element(top.0 & !self.0)
    }

    /// Index of the lowest atom below `self`, if any.
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    pub fn indices(self) -> Indices {
        Indices(self.0)
    }

    /// Every element below `self`, in increasing bit order.
    pub fn subsets(self) -> Subsets {
        Subsets { mask: self.0, next: Some(0) }
    }
}

impl std::ops::BitAnd for Element {
    type Output = Element;
    fn bitand(self, rhs: Element) -> Element {
        self.meet(rhs)
    }
}

impl std::ops::BitOr for Element {
    type Output = Element;
    fn bitor(self, rhs: Element) -> Element {
        self.join(rhs)
    }
}

impl std::ops::BitOrAssign for Element {
    fn bitor_assign(&mut self, rhs: Element) {
        self.0 |= rhs.0;
    }
}

impl fmt::Debug for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.indices()).finish()
    }
}

impl fmt::Display for Element {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}

impl serde::Serialize for Element {
    fn serialize<S: serde::Serializer>(&self, serializer: S) -> Result<S::Ok, S::Error> {
        serializer.collect_seq(self.indices())
    }
}

impl<'de> serde::Deserialize<'de> for Element {
    fn deserialize<D: serde::Deserializer<'de>>(deserializer: D) -> Result<Self, D::Error> {
        let indices = Vec::<usize>::deserialize(deserializer)?;
        if let Some(bad) = indices.iter().find(|&&i| i >= MAX_ATOMS) {
            return Err(serde::de::Error::custom(format!("atom index {bad} out of range")));
        }
        Ok(Element::from_indices(indices))
    }
}

#[derive(Clone, Debug)]
pub struct Indices(u64);

impl Iterator for Indices {
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

#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = Element;
    fn next(&mut self) -> Option<Element> {
        let cur = self.next?;
        // Standard submask walk in increasing numeric order.
        let succ = (cur | !self.mask).wrapping_add(1) & self.mask;
        self.next = (succ != 0).then_some(succ);
        Some(Element(cur))
    }
}
