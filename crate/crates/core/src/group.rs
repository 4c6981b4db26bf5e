//! Finite groups as explicit multiplication tables.
//!
//! Elements are dense indices `0..n` with the identity pinned at `0`. Every
//! table built here is immutable once constructed.

use std::fmt;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::subgroup::SubgroupSet;

/// Index of a group element. The identity is always `0`.
pub type ElementIndex = usize;

/// Default bound on the order of any constructed group.
pub const DEFAULT_ORDER_CAP: usize = 10_000;

/// Tables up to this order get a full associativity scan by default.
pub const FULL_ASSOC_LIMIT: usize = 512;

/// Hard limit imposed by the 16-bit table storage.
const STORAGE_LIMIT: usize = u16::MAX as usize;

const SPOT_CHECK_SEED: u64 = 0x6d61_7861_6221;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum GroupError {
    #[error("group order must be at least 1")]
    Empty,
    #[error("table has {found} entries in row {row}, expected {expected}")]
    BadDimensions {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("entry ({row}, {col}) = {value} is out of range")]
    NotClosed {
        row: usize,
        col: usize,
        value: usize,
    },
    #[error("no two-sided identity element")]
    NoIdentity,
    #[error("element {element} has no two-sided inverse")]
    NoInverse { element: usize },
    #[error("associativity fails for ({a}, {b}, {c})")]
    NotAssociative { a: usize, b: usize, c: usize },
    #[error("group order exceeds cap {cap}")]
    OrderCapExceeded { cap: usize },
    #[error("invalid permutation in generator {generator}: {reason}")]
    InvalidPermutation { generator: usize, reason: String },
    #[error("bad parameter: {0}")]
    BadParameter(String),
    #[error("element set is not a subgroup of this group")]
    NotASubgroup,
    #[error("subgroup is not normal: conjugating {element} by {conjugator} leaves it")]
    NotNormal { conjugator: usize, element: usize },
}

/// Result of factoring a group order as a prime power.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NotPrimePower {
    /// `n = 1`: exponent zero, no prime.
    Trivial,
    /// `n` has at least two distinct prime factors.
    Composite(u64),
}

impl fmt::Display for NotPrimePower {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NotPrimePower::Trivial => write!(f, "trivial order (no prime)"),
            NotPrimePower::Composite(n) => write!(f, "{n} is not a prime power"),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct PrimePower {
    pub p: u64,
    pub k: u32,
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n.is_multiple_of(d) {
            return false;
        }
        d += 1;
    }
    true
}

/// Factors `n` as `p^k` with `p` prime and `k >= 1`.
pub fn prime_power(n: u64) -> Result<PrimePower, NotPrimePower> {
    if n <= 1 {
        return Err(NotPrimePower::Trivial);
    }
    let mut p = 2;
    while p * p <= n && !n.is_multiple_of(p) {
        p += 1;
    }
    if !n.is_multiple_of(p) {
        // no factor below sqrt(n): n itself is prime
        return Ok(PrimePower { p: n, k: 1 });
    }
    let mut rest = n;
    let mut k = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        k += 1;
    }
    if rest == 1 {
        Ok(PrimePower { p, k })
    } else {
        Err(NotPrimePower::Composite(n))
    }
}

/// How thoroughly [`GroupTable::from_cayley_table_with`] checks associativity.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AssocCheck {
    /// Full scan up to [`FULL_ASSOC_LIMIT`], `10 n^2` random triples above.
    #[default]
    Auto,
    Full,
}

/// A finite group given by its multiplication table.
#[derive(Clone, PartialEq, Eq)]
pub struct GroupTable {
    name: String,
    order: usize,
    product: Vec<u16>,
    inverse: Vec<u16>,
    prime_power: Option<PrimePower>,
}

impl fmt::Debug for GroupTable {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GroupTable")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("prime_power", &self.prime_power)
            .finish_non_exhaustive()
    }
}

impl GroupTable {
    /// Builds a table from a trusted product function. Only the identity
    /// and inverse axioms are checked here.
    pub(crate) fn from_fn(
        name: impl Into<String>,
        order: usize,
        cap: usize,
        mut mul: impl FnMut(usize, usize) -> usize,
    ) -> Result<Self, GroupError> {
        if order == 0 {
            return Err(GroupError::Empty);
        }
        if order > cap.min(STORAGE_LIMIT) {
            return Err(GroupError::OrderCapExceeded { cap });
        }
        let mut product = Vec::with_capacity(order * order);
        for a in 0..order {
            for b in 0..order {
                let c = mul(a, b);
                if c >= order {
                    return Err(GroupError::NotClosed {
                        row: a,
                        col: b,
                        value: c,
                    });
                }
                product.push(c as u16);
            }
        }
        Self::finish(name.into(), order, product)
    }

    fn finish(name: String, order: usize, product: Vec<u16>) -> Result<Self, GroupError> {
        for i in 0..order {
            if product[i] as usize != i || product[i * order] as usize != i {
                return Err(GroupError::NoIdentity);
            }
        }
        let mut inverse = vec![0u16; order];
        for (i, slot) in inverse.iter_mut().enumerate() {
            let row = &product[i * order..(i + 1) * order];
            let j = row
                .iter()
                .position(|&x| x == 0)
                .ok_or(GroupError::NoInverse { element: i })?;
            if product[j * order + i] != 0 {
                return Err(GroupError::NoInverse { element: i });
            }
            *slot = j as u16;
        }
        Ok(GroupTable {
            name,
            order,
            product,
            inverse,
            prime_power: prime_power(order as u64).ok(),
        })
    }

    /// Validates a Cayley table given with arbitrary labels, relabelling so
    /// that the identity becomes index 0.
    pub fn from_cayley_table(
        n: usize,
        table: &[Vec<usize>],
        name: impl Into<String>,
    ) -> Result<Self, GroupError> {
        Self::from_cayley_table_with(n, table, name, AssocCheck::Auto)
    }

    /// Witnesses in errors use the labels of the input table.
    pub fn from_cayley_table_with(
        n: usize,
        table: &[Vec<usize>],
        name: impl Into<String>,
        assoc: AssocCheck,
    ) -> Result<Self, GroupError> {
        if n == 0 {
            return Err(GroupError::Empty);
        }
        if n > STORAGE_LIMIT {
            return Err(GroupError::OrderCapExceeded { cap: STORAGE_LIMIT });
        }
        if table.len() != n {
            return Err(GroupError::BadDimensions {
                row: table.len().min(n),
                expected: n,
                found: 0,
            });
        }
        for (row, entries) in table.iter().enumerate() {
            if entries.len() != n {
                return Err(GroupError::BadDimensions {
                    row,
                    expected: n,
                    found: entries.len(),
                });
            }
            if let Some((col, &value)) = entries.iter().enumerate().find(|(_, &v)| v >= n) {
                return Err(GroupError::NotClosed { row, col, value });
            }
        }
        let at = |a: usize, b: usize| table[a][b];

        let identity = (0..n)
            .find(|&e| (0..n).all(|j| at(e, j) == j && at(j, e) == j))
            .ok_or(GroupError::NoIdentity)?;
        for i in 0..n {
            let has_inverse = (0..n).any(|j| at(i, j) == identity && at(j, i) == identity);
            if !has_inverse {
                return Err(GroupError::NoInverse { element: i });
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            if at(at(a, b), c) != at(a, at(b, c)) {
                Err(GroupError::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if assoc == AssocCheck::Full || n <= FULL_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
            for _ in 0..10 * n * n {
                check(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }

        // swap the identity's label with 0
        let relabel = |x: usize| {
            if x == identity {
                0
            } else if x == 0 {
                identity
            } else {
                x
            }
        };
        let mut product = vec![0u16; n * n];
        for a in 0..n {
            for b in 0..n {
                product[relabel(a) * n + relabel(b)] = relabel(at(a, b)) as u16;
            }
        }
        Self::finish(name.into(), n, product)
    }

    /// Direct product with componentwise multiplication; `(a, b)` has index
    /// `a * |other| + b`.
    pub fn direct_product(&self, other: &GroupTable, cap: usize) -> Result<Self, GroupError> {
        let m = other.order;
        let order = self
            .order
            .checked_mul(m)
            .ok_or(GroupError::OrderCapExceeded { cap })?;
        let name = format!("{} x {}", self.name, other.name);
        Self::from_fn(name, order, cap, |x, y| {
            self.mul(x / m, y / m) * m + other.mul(x % m, y % m)
        })
    }

    /// Checks every axiom. With `full == false` large tables are spot-checked
    /// for associativity.
    pub fn validate(&self, full: bool) -> Result<(), GroupError> {
        let n = self.order;
        for i in 0..n {
            if self.mul(0, i) != i || self.mul(i, 0) != i {
                return Err(GroupError::NoIdentity);
            }
            let j = self.inv(i);
            if self.mul(i, j) != 0 || self.mul(j, i) != 0 || self.inv(j) != i {
                return Err(GroupError::NoInverse { element: i });
            }
        }
        let check = |a: usize, b: usize, c: usize| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(GroupError::NotAssociative { a, b, c })
            } else {
                Ok(())
            }
        };
        if full || n <= FULL_ASSOC_LIMIT {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(SPOT_CHECK_SEED);
            for _ in 0..10 * n * n {
                check(
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                    rng.gen_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: impl Into<String>) -> Self {
        self.name = name.into();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn prime_power(&self) -> Option<PrimePower> {
        self.prime_power
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    #[inline]
    pub fn mul(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        self.product[a * self.order + b] as usize
    }

    #[inline]
    pub fn inv(&self, a: ElementIndex) -> ElementIndex {
        self.inverse[a] as usize
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: ElementIndex, b: ElementIndex) -> ElementIndex {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    /// `g x g^-1`
    pub fn conjugate(&self, x: ElementIndex, g: ElementIndex) -> ElementIndex {
        self.mul(self.mul(g, x), self.inv(g))
    }

    pub fn commutes(&self, a: ElementIndex, b: ElementIndex) -> bool {
        self.mul(a, b) == self.mul(b, a)
    }

    pub fn pow(&self, a: ElementIndex, mut e: u64) -> ElementIndex {
        let mut base = a;
        let mut acc = 0;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    pub fn element_order(&self, a: ElementIndex) -> usize {
        let mut x = a;
        let mut k = 1;
        while x != 0 {
            x = self.mul(x, a);
            k += 1;
        }
        k
    }

    /// `census[d]` is the number of elements of order `d`.
    pub fn order_census(&self) -> Vec<usize> {
        let mut census = vec![0; self.order + 1];
        for a in 0..self.order {
            census[self.element_order(a)] += 1;
        }
        census
    }

    pub fn is_abelian(&self) -> bool {
        (0..self.order).all(|a| (a + 1..self.order).all(|b| self.commutes(a, b)))
    }

    pub fn center(&self) -> SubgroupSet {
        let members = (0..self.order).filter(|&z| (0..self.order).all(|g| self.commutes(z, g)));
        SubgroupSet::from_trusted(self.order, members)
    }

    pub fn centralizer(&self, s: &SubgroupSet) -> Result<SubgroupSet, GroupError> {
        if s.universe() != self.order {
            return Err(GroupError::NotASubgroup);
        }
        let members: Vec<usize> = s.elements().collect();
        let central = (0..self.order).filter(|&g| members.iter().all(|&x| self.commutes(g, x)));
        Ok(SubgroupSet::from_trusted(self.order, central))
    }

    pub fn is_normal(&self, n: &SubgroupSet) -> Result<(), GroupError> {
        if n.universe() != self.order {
            return Err(GroupError::NotASubgroup);
        }
        for g in 0..self.order {
            for x in n.elements() {
                if !n.contains(self.conjugate(x, g)) {
                    return Err(GroupError::NotNormal {
                        conjugator: g,
                        element: x,
                    });
                }
            }
        }
        Ok(())
    }

    /// Quotient by a normal subgroup. Cosets are numbered by their smallest
    /// member, so `N` itself is coset 0.
    pub fn quotient(&self, n: &SubgroupSet) -> Result<CosetPartition, GroupError> {
        self.is_normal(n)?;
        let mut projection = vec![usize::MAX; self.order];
        let mut coset_members: Vec<Vec<ElementIndex>> = Vec::new();
        for g in 0..self.order {
            if projection[g] != usize::MAX {
                continue;
            }
            let idx = coset_members.len();
            let mut members: Vec<usize> = n.elements().map(|x| self.mul(g, x)).collect();
            members.sort_unstable();
            for &m in &members {
                projection[m] = idx;
            }
            coset_members.push(members);
        }
        let reps: Vec<usize> = coset_members.iter().map(|c| c[0]).collect();
        let name = format!("{}/N{}", self.name, n.size());
        let quotient = GroupTable::from_fn(name, reps.len(), usize::MAX, |a, b| {
            projection[self.mul(reps[a], reps[b])]
        })?;
        Ok(CosetPartition {
            quotient,
            projection,
            coset_members,
        })
    }

    /// Reindexes a subgroup as a group in its own right. Members keep their
    /// relative order, so the identity stays at index 0.
    pub fn subgroup_as_group(&self, s: &SubgroupSet) -> Result<InducedGroup, GroupError> {
        if s.universe() != self.order || !s.contains(0) {
            return Err(GroupError::NotASubgroup);
        }
        let to_parent: Vec<usize> = s.elements().collect();
        let mut from_parent = vec![None; self.order];
        for (i, &g) in to_parent.iter().enumerate() {
            from_parent[g] = Some(i);
        }
        let mut closed = true;
        let name = format!("{}[{}]", self.name, to_parent.len());
        let table =
            GroupTable::from_fn(name, to_parent.len(), usize::MAX, |a, b| match from_parent
                [self.mul(to_parent[a], to_parent[b])]
            {
                Some(c) => c,
                None => {
                    closed = false;
                    0
                }
            })
            .map_err(|_| GroupError::NotASubgroup)?;
        if !closed {
            return Err(GroupError::NotASubgroup);
        }
        Ok(InducedGroup {
            table,
            to_parent,
            from_parent,
        })
    }
}

/// Cosets of a normal subgroup together with the quotient table.
#[derive(Debug, Clone)]
pub struct CosetPartition {
    pub quotient: GroupTable,
    /// Parent element to coset index.
    pub projection: Vec<usize>,
    /// Members of each coset, ascending.
    pub coset_members: Vec<Vec<ElementIndex>>,
}

impl CosetPartition {
    pub fn coset_size(&self) -> usize {
        self.coset_members[0].len()
    }
}

/// A subgroup viewed as a standalone group with index maps to its parent.
#[derive(Debug, Clone)]
pub struct InducedGroup {
    pub table: GroupTable,
    pub to_parent: Vec<ElementIndex>,
    pub from_parent: Vec<Option<ElementIndex>>,
}

impl InducedGroup {
    /// Maps a subgroup of the parent lying inside this one.
    pub fn restrict(&self, s: &SubgroupSet) -> Option<SubgroupSet> {
        let members: Option<Vec<usize>> = s.elements().map(|g| self.from_parent[g]).collect();
        Some(SubgroupSet::from_trusted(self.table.order(), members?))
    }

    pub fn lift(&self, s: &SubgroupSet) -> SubgroupSet {
        SubgroupSet::from_trusted(
            self.from_parent.len(),
            s.elements().map(|i| self.to_parent[i]),
        )
    }
}
