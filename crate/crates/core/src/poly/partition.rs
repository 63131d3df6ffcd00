use std::cmp::Ordering;
use std::fmt;

use smallvec::SmallVec;

use super::PolyError;

/// An integer partition stored as `(part, multiplicity)` blocks with parts
/// strictly decreasing. The empty partition is the constant 1 in the
/// x-variables.
#[derive(Clone, Default, PartialEq, Eq, Hash)]
pub struct Partition {
    blocks: SmallVec<[(u16, u16); 6]>,
}

impl Partition {
    pub fn empty() -> Self {
        Self::default()
    }

    /// Builds a partition from parts given in any order.
    pub fn new<I: IntoIterator<Item = u32>>(parts: I) -> Result<Self, PolyError> {
        let mut parts: Vec<u32> = parts.into_iter().collect();
        parts.sort_unstable_by(|a, b| b.cmp(a));
        let mut out = Self::empty();
        for p in parts {
            out.insert(p)?;
        }
        Ok(out)
    }

    pub fn singleton(part: u32) -> Result<Self, PolyError> {
        let mut out = Self::empty();
        out.insert(part)?;
        Ok(out)
    }

    /// Adds one copy of `part`.
    pub fn insert(&mut self, part: u32) -> Result<(), PolyError> {
        if part == 0 || part > u16::MAX as u32 {
            return Err(PolyError::InvalidPart(part));
        }
        let part = part as u16;
        match self.blocks.binary_search_by(|&(p, _)| part.cmp(&p)) {
            Ok(i) => {
                self.blocks[i].1 = self.blocks[i]
                    .1
                    .checked_add(1)
                    .expect("partition multiplicity overflow")
            }
            Err(i) => self.blocks.insert(i, (part, 1)),
        }
        Ok(())
    }

    pub fn is_empty(&self) -> bool {
        self.blocks.is_empty()
    }

    /// Number of parts, counted with multiplicity.
    pub fn len(&self) -> usize {
        self.blocks.iter().map(|&(_, m)| m as usize).sum()
    }

    /// Sum of the parts.
    pub fn weight(&self) -> u64 {
        self.blocks.iter().map(|&(p, m)| p as u64 * m as u64).sum()
    }

    pub fn max_part(&self) -> Option<u32> {
        self.blocks.first().map(|&(p, _)| p as u32)
    }

    pub fn multiplicity(&self, part: u32) -> u32 {
        self.blocks
            .iter()
            .find(|&&(p, _)| p as u32 == part)
            .map_or(0, |&(_, m)| m as u32)
    }

    /// Parts in non-increasing order.
    pub fn parts(&self) -> impl Iterator<Item = u32> + '_ {
        self.blocks
            .iter()
            .flat_map(|&(p, m)| std::iter::repeat_n(p as u32, m as usize))
    }

    /// `(part, multiplicity)` pairs, parts decreasing.
    pub fn blocks(&self) -> impl Iterator<Item = (u32, u32)> + '_ {
        self.blocks.iter().map(|&(p, m)| (p as u32, m as u32))
    }

    pub fn to_vec(&self) -> Vec<u32> {
        self.parts().collect()
    }

    /// Multiset union.
    pub fn union(&self, other: &Self) -> Self {
        if other.is_empty() {
            return self.clone();
        }
        if self.is_empty() {
            return other.clone();
        }
        let (a, b) = (&self.blocks, &other.blocks);
        let mut blocks = SmallVec::with_capacity(a.len() + b.len());
        let (mut i, mut j) = (0, 0);
        while i < a.len() && j < b.len() {
            match a[i].0.cmp(&b[j].0) {
                Ordering::Greater => {
                    blocks.push(a[i]);
                    i += 1;
                }
                Ordering::Less => {
                    blocks.push(b[j]);
                    j += 1;
                }
                Ordering::Equal => {
                    let m = a[i]
                        .1
                        .checked_add(b[j].1)
                        .expect("partition multiplicity overflow");
                    blocks.push((a[i].0, m));
                    i += 1;
                    j += 1;
                }
            }
        }
        blocks.extend_from_slice(&a[i..]);
        blocks.extend_from_slice(&b[j..]);
        Self { blocks }
    }

    /// Multiset difference `self - other`, or `None` if `other` is not contained in `self`.
    pub fn difference(&self, other: &Self) -> Option<Self> {
        let mut blocks = SmallVec::with_capacity(self.blocks.len());
        let mut j = 0;
        for &(p, m) in &self.blocks {
            if j < other.blocks.len() && other.blocks[j].0 > p {
                return None;
            }
            if j < other.blocks.len() && other.blocks[j].0 == p {
                let om = other.blocks[j].1;
                j += 1;
                match m.cmp(&om) {
                    Ordering::Less => return None,
                    Ordering::Equal => {}
                    Ordering::Greater => blocks.push((p, m - om)),
                }
            } else {
                blocks.push((p, m));
            }
        }
        if j < other.blocks.len() {
            return None;
        }
        Some(Self { blocks })
    }

    pub fn contains(&self, other: &Self) -> bool {
        self.difference(other).is_some()
    }
}

impl Ord for Partition {
    /// Longer partitions are larger; equal lengths compare lexicographically
    /// on the non-increasing part sequence.
    fn cmp(&self, other: &Self) -> Ordering {
        self.len()
            .cmp(&other.len())
            .then_with(|| self.parts().cmp(other.parts()))
    }
}

impl PartialOrd for Partition {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_list().entries(self.parts()).finish()
    }
}
