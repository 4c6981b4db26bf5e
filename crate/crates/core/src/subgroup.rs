use std::cmp::Ordering;
use std::fmt;
use std::hash::{Hash, Hasher};

use fixedbitset::FixedBitSet;

use crate::group::{ElementIndex, GroupError, GroupTable};

/// A subgroup stored as a membership bit vector over element indices.
///
/// Ordering is canonical: by size, then lexicographically by the ascending
/// list of members.
#[derive(Clone)]
pub struct SubgroupSet {
    bits: FixedBitSet,
    size: usize,
}

impl SubgroupSet {
    pub fn trivial(n: usize) -> Self {
        Self::from_trusted(n, [0])
    }

    pub fn full(n: usize) -> Self {
        Self::from_trusted(n, 0..n)
    }

    /// Builds a set whose subgroup property is guaranteed by the caller.
    pub(crate) fn from_trusted(n: usize, members: impl IntoIterator<Item = ElementIndex>) -> Self {
        let mut bits = FixedBitSet::with_capacity(n);
        bits.extend(members);
        let size = bits.count_ones(..);
        SubgroupSet { bits, size }
    }

    pub(crate) fn from_bits(bits: FixedBitSet) -> Self {
        let size = bits.count_ones(..);
        SubgroupSet { bits, size }
    }

    /// Validates that `members` form a subgroup of `g`.
    pub fn from_elements(
        g: &GroupTable,
        members: impl IntoIterator<Item = ElementIndex>,
    ) -> Result<Self, GroupError> {
        let mut bits = FixedBitSet::with_capacity(g.order());
        for m in members {
            if m >= g.order() {
                return Err(GroupError::NotASubgroup);
            }
            bits.insert(m);
        }
        let set = Self::from_bits(bits);
        if set.is_subgroup_of(g) {
            Ok(set)
        } else {
            Err(GroupError::NotASubgroup)
        }
    }

    /// Identity, inverse and product closure, plus Lagrange.
    pub fn is_subgroup_of(&self, g: &GroupTable) -> bool {
        if self.universe() != g.order() || !self.contains(0) || !g.order().is_multiple_of(self.size)
        {
            return false;
        }
        let members: Vec<usize> = self.elements().collect();
        members.iter().all(|&a| self.contains(g.inv(a)))
            && members
                .iter()
                .all(|&a| members.iter().all(|&b| self.contains(g.mul(a, b))))
    }

    pub fn is_abelian_in(&self, g: &GroupTable) -> bool {
        let members: Vec<usize> = self.elements().collect();
        members
            .iter()
            .enumerate()
            .all(|(i, &a)| members[i + 1..].iter().all(|&b| g.commutes(a, b)))
    }

    /// Length of the underlying bit vector, i.e. the parent group order.
    pub fn universe(&self) -> usize {
        self.bits.len()
    }

    pub fn size(&self) -> usize {
        self.size
    }

    pub fn is_trivial(&self) -> bool {
        self.size == 1
    }

    pub fn contains(&self, g: ElementIndex) -> bool {
        self.bits.contains(g)
    }

    pub fn elements(&self) -> impl Iterator<Item = ElementIndex> + '_ {
        self.bits.ones()
    }

    pub fn bits(&self) -> &FixedBitSet {
        &self.bits
    }

    pub fn is_subset(&self, other: &SubgroupSet) -> bool {
        self.size <= other.size && self.bits.is_subset(&other.bits)
    }
}

impl PartialEq for SubgroupSet {
    fn eq(&self, other: &Self) -> bool {
        self.size == other.size && self.bits == other.bits
    }
}

impl Eq for SubgroupSet {}

impl Hash for SubgroupSet {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.bits.hash(state);
    }
}

impl Ord for SubgroupSet {
    fn cmp(&self, other: &Self) -> Ordering {
        self.size
            .cmp(&other.size)
            .then_with(|| self.elements().cmp(other.elements()))
            .then_with(|| self.universe().cmp(&other.universe()))
    }
}

impl PartialOrd for SubgroupSet {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl fmt::Debug for SubgroupSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.elements()).finish()
    }
}
