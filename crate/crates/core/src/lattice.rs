//! Subgroup enumeration and the inclusion lattice of all subgroups.

use std::collections::HashMap;
use std::fmt::Write as _;

use fixedbitset::FixedBitSet;
use thiserror::Error;

use crate::group::{ElementIndex, GroupError, GroupTable, NotPrimePower};
use crate::subgroup::SubgroupSet;

/// Default bound on the order of groups whose lattice we enumerate.
pub const DEFAULT_ENUM_CAP: usize = 256;
/// Default bound on the number of subgroups, predicted or found.
pub const DEFAULT_MAX_SUBGROUPS: usize = 30_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum LatticeError {
    #[error("group order {order} exceeds enumeration cap {cap}")]
    EnumerationCapExceeded { order: usize, cap: usize },
    #[error("group has at least {count} subgroups, more than the cap {cap}")]
    TooManySubgroups { count: u128, cap: usize },
    #[error("subgroup {lower} is not contained in subgroup {upper}")]
    NotNested { lower: usize, upper: usize },
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error("{0}")]
    NotPrimePower(NotPrimePower),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct LatticeCaps {
    pub enum_cap: usize,
    pub max_subgroups: usize,
}

impl Default for LatticeCaps {
    fn default() -> Self {
        LatticeCaps {
            enum_cap: DEFAULT_ENUM_CAP,
            max_subgroups: DEFAULT_MAX_SUBGROUPS,
        }
    }
}

/// Gaussian binomial coefficient `[n choose k]_q`, `None` on overflow.
pub fn gaussian_binomial(n: u32, k: u32, q: u64) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    let q = q as u128;
    let mut num: u128 = 1;
    let mut den: u128 = 1;
    for i in 0..k {
        num = num.checked_mul(q.checked_pow(n - i)?.checked_sub(1)?)?;
        den = den.checked_mul(q.checked_pow(i + 1)?.checked_sub(1)?)?;
    }
    Some(num / den)
}

/// Number of subspaces of `F_q^n`.
pub fn galois_number(n: u32, q: u64) -> Option<u128> {
    (0..=n).try_fold(0u128, |acc, k| acc.checked_add(gaussian_binomial(n, k, q)?))
}

fn generated(g: &GroupTable, start: &[ElementIndex], gens: &[ElementIndex]) -> FixedBitSet {
    let mut bits = FixedBitSet::with_capacity(g.order());
    let mut queue: Vec<ElementIndex> = Vec::with_capacity(start.len().max(1));
    bits.insert(0);
    queue.push(0);
    for &x in start {
        if !bits.put(x) {
            queue.push(x);
        }
    }
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        for &s in gens {
            let y = g.mul(x, s);
            if !bits.put(y) {
                queue.push(y);
            }
        }
    }
    bits
}

/// Smallest subgroup containing `seed`.
pub fn closure(g: &GroupTable, seed: &[ElementIndex]) -> SubgroupSet {
    SubgroupSet::from_bits(generated(g, &[], seed))
}

fn elementary_abelian_rank(g: &GroupTable) -> Option<(u64, u32)> {
    let pp = g.prime_power()?;
    let exponent_p = (1..g.order()).all(|a| g.pow(a, pp.p) == 0);
    (exponent_p && g.is_abelian()).then_some((pp.p, pp.k))
}

/// Every subgroup with a generating set, in discovery order.
fn enumerate(
    g: &GroupTable,
    caps: LatticeCaps,
) -> Result<Vec<(SubgroupSet, Vec<ElementIndex>)>, LatticeError> {
    let n = g.order();
    if n > caps.enum_cap {
        return Err(LatticeError::EnumerationCapExceeded {
            order: n,
            cap: caps.enum_cap,
        });
    }
    if let Some((p, k)) = elementary_abelian_rank(g) {
        let predicted = galois_number(k, p).unwrap_or(u128::MAX);
        if predicted > caps.max_subgroups as u128 {
            return Err(LatticeError::TooManySubgroups {
                count: predicted,
                cap: caps.max_subgroups,
            });
        }
    }

    let mut found: Vec<(SubgroupSet, Vec<ElementIndex>)> = vec![(SubgroupSet::trivial(n), vec![])];
    let mut seen: HashMap<FixedBitSet, usize> = HashMap::new();
    seen.insert(found[0].0.bits().clone(), 0);
    let mut next = 0;
    let mut marked = FixedBitSet::with_capacity(n);
    while next < found.len() {
        let members: Vec<ElementIndex> = found[next].0.elements().collect();
        let gens = found[next].1.clone();
        next += 1;
        // <S, g> depends only on the left coset gS
        marked.clear();
        for &m in &members {
            marked.insert(m);
        }
        for x in 0..n {
            if marked.contains(x) {
                continue;
            }
            for &m in &members {
                marked.insert(g.mul(x, m));
            }
            let mut ext = gens.clone();
            ext.push(x);
            let bits = generated(g, &members, &ext);
            if seen.contains_key(&bits) {
                continue;
            }
            if found.len() >= caps.max_subgroups {
                return Err(LatticeError::TooManySubgroups {
                    count: found.len() as u128 + 1,
                    cap: caps.max_subgroups,
                });
            }
            seen.insert(bits.clone(), found.len());
            found.push((SubgroupSet::from_bits(bits), ext));
        }
    }
    Ok(found)
}

/// All subgroups of `g` in canonical order.
pub fn all_subgroups(g: &GroupTable, caps: LatticeCaps) -> Result<Vec<SubgroupSet>, LatticeError> {
    let mut subs: Vec<SubgroupSet> = enumerate(g, caps)?.into_iter().map(|(s, _)| s).collect();
    subs.sort();
    Ok(subs)
}

/// The inclusion lattice of all subgroups of a group.
#[derive(Debug, Clone)]
pub struct SubgroupLattice {
    subgroups: Vec<SubgroupSet>,
    generators: Vec<Vec<ElementIndex>>,
    index: HashMap<FixedBitSet, usize>,
    /// `up[i]` holds every `j` with subgroup `i` contained in subgroup `j`.
    up: Vec<FixedBitSet>,
    /// `down[j]` holds every `i` contained in `j`.
    down: Vec<FixedBitSet>,
    covers: Vec<(usize, usize)>,
    abelian: FixedBitSet,
    maximal_abelian: FixedBitSet,
}

impl SubgroupLattice {
    pub fn build(g: &GroupTable, caps: LatticeCaps) -> Result<Self, LatticeError> {
        let mut pairs = enumerate(g, caps)?;
        pairs.sort_by(|a, b| a.0.cmp(&b.0));
        let (subgroups, generators): (Vec<_>, Vec<_>) = pairs.into_iter().unzip();
        let count = subgroups.len();

        let index = subgroups
            .iter()
            .enumerate()
            .map(|(i, s)| (s.bits().clone(), i))
            .collect();

        let mut up = vec![FixedBitSet::with_capacity(count); count];
        let mut down = vec![FixedBitSet::with_capacity(count); count];
        for i in 0..count {
            up[i].insert(i);
            down[i].insert(i);
            let si = &subgroups[i];
            for j in i + 1..count {
                let sj = &subgroups[j];
                if sj.size() > si.size() && sj.size() % si.size() == 0 && si.is_subset(sj) {
                    up[i].insert(j);
                    down[j].insert(i);
                }
            }
        }

        // indices ascend with size, so any intermediate subgroup is visited
        // before the subgroups above it
        let mut covers = Vec::new();
        let mut dominated = FixedBitSet::with_capacity(count);
        for i in 0..count {
            dominated.clear();
            for j in up[i].ones() {
                if j == i || dominated.contains(j) {
                    continue;
                }
                covers.push((i, j));
                dominated.union_with(&up[j]);
            }
        }

        let mut abelian = FixedBitSet::with_capacity(count);
        for (i, s) in subgroups.iter().enumerate() {
            if s.is_abelian_in(g) {
                abelian.insert(i);
            }
        }
        let mut maximal_abelian = FixedBitSet::with_capacity(count);
        for i in abelian.ones() {
            if up[i].intersection_count(&abelian) == 1 {
                maximal_abelian.insert(i);
            }
        }

        Ok(SubgroupLattice {
            subgroups,
            generators,
            index,
            up,
            down,
            covers,
            abelian,
            maximal_abelian,
        })
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[SubgroupSet] {
        &self.subgroups
    }

    pub fn subgroup(&self, i: usize) -> &SubgroupSet {
        &self.subgroups[i]
    }

    /// A generating set for subgroup `i`.
    pub fn generators(&self, i: usize) -> &[ElementIndex] {
        &self.generators[i]
    }

    pub fn index_of(&self, s: &SubgroupSet) -> Option<usize> {
        self.index.get(s.bits()).copied()
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn leq(&self, i: usize, j: usize) -> bool {
        self.up[i].contains(j)
    }

    pub fn up_set(&self, i: usize) -> &FixedBitSet {
        &self.up[i]
    }

    pub fn down_set(&self, i: usize) -> &FixedBitSet {
        &self.down[i]
    }

    /// Cover edges `(covered, covering)`, grouped by the covered subgroup.
    pub fn covers(&self) -> &[(usize, usize)] {
        &self.covers
    }

    pub fn is_abelian(&self, i: usize) -> bool {
        self.abelian.contains(i)
    }

    pub fn is_maximal_abelian(&self, i: usize) -> bool {
        self.maximal_abelian.contains(i)
    }

    pub fn abelian_mask(&self) -> &FixedBitSet {
        &self.abelian
    }

    pub fn maximal_abelian_mask(&self) -> &FixedBitSet {
        &self.maximal_abelian
    }

    pub fn maximal_abelian_indices(&self) -> impl Iterator<Item = usize> + '_ {
        self.maximal_abelian.ones()
    }

    /// Number of nested pairs `(i, j)` with `i <= j`.
    pub fn nested_pairs(&self) -> usize {
        self.up.iter().map(|u| u.count_ones(..)).sum()
    }

    /// Number of maximal abelian subgroups containing subgroup `i`.
    pub fn maximal_abelian_above(&self, i: usize) -> usize {
        self.up[i].intersection_count(&self.maximal_abelian)
    }

    /// Hasse diagram in DOT. Nodes follow lattice order, edges run from the
    /// covered subgroup to the covering one.
    pub fn to_dot(&self, name: &str) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "digraph \"{}\" {{", name.replace('"', "'"));
        for (i, s) in self.subgroups.iter().enumerate() {
            let _ = writeln!(
                out,
                "  n{i} [label=\"order={} abelian={} maxab={}\"];",
                s.size(),
                self.is_abelian(i) as u8,
                self.is_maximal_abelian(i) as u8
            );
        }
        for &(a, b) in &self.covers {
            let _ = writeln!(out, "  n{a} -> n{b};");
        }
        out.push_str("}\n");
        out
    }
}

pub fn build_lattice(g: &GroupTable, caps: LatticeCaps) -> Result<SubgroupLattice, LatticeError> {
    SubgroupLattice::build(g, caps)
}

pub fn maximal_abelian_subgroups(
    g: &GroupTable,
    caps: LatticeCaps,
) -> Result<Vec<SubgroupSet>, LatticeError> {
    let lattice = SubgroupLattice::build(g, caps)?;
    Ok(lattice
        .maximal_abelian_indices()
        .map(|i| lattice.subgroup(i).clone())
        .collect())
}

fn nested(s: &SubgroupSet, t: &SubgroupSet) -> Result<(), LatticeError> {
    if s.is_subset(t) {
        Ok(())
    } else {
        Err(LatticeError::NotNested {
            lower: s.size(),
            upper: t.size(),
        })
    }
}

/// Whether `s` is normal in `t`, for `s` contained in `t`.
pub fn is_normal_in(
    g: &GroupTable,
    s: &SubgroupSet,
    t: &SubgroupSet,
) -> Result<bool, LatticeError> {
    nested(s, t)?;
    let lower: Vec<ElementIndex> = s.elements().collect();
    Ok(t.elements()
        .all(|x| lower.iter().all(|&y| s.contains(g.conjugate(y, x)))))
}

/// Isomorphism type of a quotient `T/S`, as far as the lattice Moebius
/// function and the cyclic-quotient lemma need it.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuotientType {
    NotNormal,
    /// `(Z/q)^k` for the prime `q` dividing the index. `k = 0` is the
    /// trivial quotient; `k = 1` takes precedence over `Cyclic(q)`.
    ElementaryAbelian(u32),
    Cyclic(usize),
    Other,
}

impl QuotientType {
    pub fn is_cyclic(self) -> bool {
        matches!(
            self,
            QuotientType::Cyclic(_) | QuotientType::ElementaryAbelian(0 | 1)
        )
    }
}

pub fn quotient_type(
    g: &GroupTable,
    s: &SubgroupSet,
    t: &SubgroupSet,
) -> Result<QuotientType, LatticeError> {
    if !is_normal_in(g, s, t)? {
        return Ok(QuotientType::NotNormal);
    }
    let index = t.size() / s.size();
    if index == 1 {
        return Ok(QuotientType::ElementaryAbelian(0));
    }
    // one representative per coset xS
    let mut covered = FixedBitSet::with_capacity(g.order());
    let mut reps = Vec::with_capacity(index);
    for x in t.elements() {
        if covered.contains(x) {
            continue;
        }
        reps.push(x);
        for y in s.elements() {
            covered.insert(g.mul(x, y));
        }
    }
    let order_mod = |x: ElementIndex| {
        let mut y = x;
        let mut k = 1;
        while !s.contains(y) {
            y = g.mul(y, x);
            k += 1;
        }
        k
    };
    let orders: Vec<usize> = reps.iter().map(|&x| order_mod(x)).collect();
    let abelian = reps.iter().enumerate().all(|(i, &x)| {
        reps[i + 1..]
            .iter()
            .all(|&y| s.contains(g.commutator(x, y)))
    });
    if abelian {
        if let Ok(pp) = crate::group::prime_power(index as u64) {
            if orders.iter().all(|&o| o == 1 || o as u64 == pp.p) {
                return Ok(QuotientType::ElementaryAbelian(pp.k));
            }
        }
    }
    if orders.contains(&index) {
        return Ok(QuotientType::Cyclic(index));
    }
    Ok(QuotientType::Other)
}

#[derive(Error, Debug, Clone, Copy, PartialEq, Eq)]
pub enum OrderPCountError {
    #[error("group order is not a prime power")]
    NotPrimePower,
    #[error("the trivial group has no subgroups of prime order")]
    TrivialGroup,
}

/// Number of subgroups of order `p` in a p-group, from the element census.
pub fn count_order_p_subgroups(g: &GroupTable) -> Result<u64, OrderPCountError> {
    if g.is_trivial() {
        return Err(OrderPCountError::TrivialGroup);
    }
    let pp = g.prime_power().ok_or(OrderPCountError::NotPrimePower)?;
    let elements = (1..g.order())
        .filter(|&a| g.element_order(a) as u64 == pp.p)
        .count() as u64;
    Ok(elements / (pp.p - 1))
}
