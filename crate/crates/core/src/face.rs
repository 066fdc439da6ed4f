//! Vertex sets over `[1, m]`, stored as machine-word bitmasks.

use std::cmp::Ordering;
use std::fmt;

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 64;

/// A finite set of vertices drawn from `[1, 64]`.
///
/// Bit `v - 1` is set iff vertex `v` belongs to the set. Ordering is the
/// lexicographic order of the ascending vertex sequences, so `{1, 3} < {1, 3, 4}
/// < {1, 4} < {2}`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct Face(u64);

impl Face {
    pub const EMPTY: Face = Face(0);

    /// The full vertex set `[1, m]`.
    pub fn full(m: usize) -> Face {
        assert!(m <= MAX_VERTICES, "vertex count {m} exceeds {MAX_VERTICES}");
        if m == MAX_VERTICES {
            Face(u64::MAX)
        } else {
            Face((1u64 << m) - 1)
        }
    }

    pub fn singleton(v: usize) -> Face {
        assert!((1..=MAX_VERTICES).contains(&v), "vertex {v} out of range");
        Face(1u64 << (v - 1))
    }

    /// Builds a face from vertices in any order; duplicates collapse.
    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Face {
        vertices.into_iter().fold(Face::EMPTY, |acc, v| acc.with(v))
    }

    pub const fn from_bits(bits: u64) -> Face {
        Face(bits)
    }

    pub const fn bits(self) -> u64 {
        self.0
    }

    pub fn with(self, v: usize) -> Face {
        Face(self.0 | Face::singleton(v).0)
    }

    pub fn without(self, v: usize) -> Face {
        Face(self.0 & !Face::singleton(v).0)
    }

    pub fn contains(self, v: usize) -> bool {
        (1..=MAX_VERTICES).contains(&v) && self.0 & (1u64 << (v - 1)) != 0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn is_subset(self, other: Face) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn is_proper_subset(self, other: Face) -> bool {
        self != other && self.is_subset(other)
    }

    pub fn is_disjoint(self, other: Face) -> bool {
        self.0 & other.0 == 0
    }

    pub fn union(self, other: Face) -> Face {
        Face(self.0 | other.0)
    }

    pub fn intersection(self, other: Face) -> Face {
        Face(self.0 & other.0)
    }

    pub fn difference(self, other: Face) -> Face {
        Face(self.0 & !other.0)
    }

    /// Complement inside `[1, m]`.
    pub fn complement(self, m: usize) -> Face {
        Face::full(m).difference(self)
    }

    /// Largest vertex, if any.
    pub fn max_vertex(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(64 - self.0.leading_zeros() as usize)
        }
    }

    /// Ascending vertex iterator.
    pub fn iter(self) -> FaceIter {
        FaceIter(self.0)
    }

    pub fn to_vec(self) -> Vec<usize> {
        self.iter().collect()
    }

    /// Applies a vertex map given as `perm[v - 1] = image of v`.
    pub fn map(self, perm: &[usize]) -> Face {
        Face::from_vertices(self.iter().map(|v| perm[v - 1]))
    }

    /// Iterates over every subset of this face, including the empty set and
    /// the face itself.
    pub fn subsets(self) -> impl Iterator<Item = Face> {
        let mask = self.0;
        let mut next = Some(0u64);
        std::iter::from_fn(move || {
            let cur = next?;
            next = if cur == mask {
                None
            } else {
                Some((cur.wrapping_sub(mask)) & mask)
            };
            Some(Face(cur))
        })
    }
}

impl Ord for Face {
    fn cmp(&self, other: &Self) -> Ordering {
        self.iter().cmp(other.iter())
    }
}

impl PartialOrd for Face {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl fmt::Display for Face {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("{")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("}")
    }
}

impl FromIterator<usize> for Face {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        Face::from_vertices(iter)
    }
}

pub struct FaceIter(u64);

impl Iterator for FaceIter {
    type Item = usize;

    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let tz = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(tz + 1)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for FaceIter {}

/// All `size`-element subsets of `[1, m]` in colexicographic bit order.
pub fn subsets_of_size(m: usize, size: usize) -> impl Iterator<Item = Face> {
    assert!(m <= MAX_VERTICES);
    let full = Face::full(m).0;
    let mut next = if size > m {
        None
    } else if size == 0 {
        Some(0u64)
    } else if size == 64 {
        Some(u64::MAX)
    } else {
        Some((1u64 << size) - 1)
    };
    std::iter::from_fn(move || {
        let cur = next?;
        next = if cur == 0 {
            None
        } else {
            // Gosper's hack; the u128 widening keeps m = 64 from overflowing.
            let c = cur as u128;
            let low = c & c.wrapping_neg();
            let ripple = c + low;
            let succ = (((ripple ^ c) >> 2) / low) | ripple;
            if succ > full as u128 {
                None
            } else {
                Some(succ as u64)
            }
        };
        Some(Face(cur))
    })
}
