//! The Moebius function of a subgroup lattice, by the defining recursion and
//! by the closed form for p-groups, plus accumulation and inversion of
//! integer functions on the lattice.

use std::collections::BTreeSet;

use thiserror::Error;

use crate::group::GroupTable;
use crate::lattice::{quotient_type, LatticeError, QuotientType, SubgroupLattice};

/// Lattices with at most this many nested pairs get their table filled
/// eagerly by [`moebius_recursive`].
pub const MATERIALIZE_LIMIT: usize = 20_000;

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum MoebiusError {
    #[error("integer overflow while computing {0}")]
    Overflow(&'static str),
    #[error("group order is not a prime power")]
    NotPrimePower,
    #[error("subgroup {lower} is not contained in subgroup {upper}")]
    NotNested { lower: usize, upper: usize },
    #[error("function has {found} values, lattice has {expected} subgroups")]
    LengthMismatch { expected: usize, found: usize },
    #[error(transparent)]
    Lattice(#[from] LatticeError),
}

/// `mu(lower, upper)` for one fixed lower subgroup, over its up-set.
#[derive(Debug, Clone)]
struct Row {
    uppers: Vec<usize>,
    values: Vec<i64>,
}

impl Row {
    fn get(&self, upper: usize) -> Option<i64> {
        self.uppers
            .binary_search(&upper)
            .ok()
            .map(|i| self.values[i])
    }
}

/// Memoized Moebius values of a lattice, computed one lower subgroup at a
/// time.
#[derive(Debug)]
pub struct MoebiusTable<'a> {
    lattice: &'a SubgroupLattice,
    rows: Vec<Option<Row>>,
    scratch: Vec<i64>,
}

impl<'a> MoebiusTable<'a> {
    pub fn new(lattice: &'a SubgroupLattice) -> Self {
        MoebiusTable {
            lattice,
            rows: vec![None; lattice.len()],
            scratch: Vec::new(),
        }
    }

    pub fn lattice(&self) -> &'a SubgroupLattice {
        self.lattice
    }

    pub fn materialize(&mut self) -> Result<(), MoebiusError> {
        for s in 0..self.lattice.len() {
            self.ensure_row(s)?;
        }
        Ok(())
    }

    pub fn is_materialized(&self) -> bool {
        self.rows.iter().all(Option::is_some)
    }

    fn ensure_row(&mut self, lower: usize) -> Result<&Row, MoebiusError> {
        if self.rows[lower].is_none() {
            let row = self.compute_row(lower)?;
            self.rows[lower] = Some(row);
        }
        Ok(self.rows[lower].as_ref().expect("row just computed"))
    }

    // mu(S, T) = -sum over S <= U < T of mu(S, U); subgroups are sorted by
    // size so every U below T is finished first.
    fn compute_row(&mut self, lower: usize) -> Result<Row, MoebiusError> {
        let lattice = self.lattice;
        let up = lattice.up_set(lower);
        self.scratch.resize(lattice.len(), 0);
        let uppers: Vec<usize> = up.ones().collect();
        let mut values = Vec::with_capacity(uppers.len());
        for &t in &uppers {
            let value = if t == lower {
                1
            } else {
                let mut sum: i64 = 0;
                for u in up.intersection(lattice.down_set(t)) {
                    if u != t {
                        sum = sum
                            .checked_add(self.scratch[u])
                            .ok_or(MoebiusError::Overflow("moebius recursion"))?;
                    }
                }
                sum.checked_neg()
                    .ok_or(MoebiusError::Overflow("moebius recursion"))?
            };
            self.scratch[t] = value;
            values.push(value);
        }
        for &t in &uppers {
            self.scratch[t] = 0;
        }
        Ok(Row { uppers, values })
    }

    /// `mu(lower, upper)` from the recursion.
    pub fn get(&mut self, lower: usize, upper: usize) -> Result<i64, MoebiusError> {
        if !self.lattice.leq(lower, upper) {
            return Err(MoebiusError::NotNested { lower, upper });
        }
        Ok(self
            .ensure_row(lower)?
            .get(upper)
            .expect("upper lies in the up-set"))
    }

    /// `(upper, mu(lower, upper))` for every `upper` above `lower`.
    pub fn row(&mut self, lower: usize) -> Result<Vec<(usize, i64)>, MoebiusError> {
        let row = self.ensure_row(lower)?;
        Ok(row
            .uppers
            .iter()
            .copied()
            .zip(row.values.iter().copied())
            .collect())
    }
}

/// Moebius table by the defining recursion, filled eagerly when the
/// lattice has at most [`MATERIALIZE_LIMIT`] nested pairs.
pub fn moebius_recursive(lattice: &SubgroupLattice) -> Result<MoebiusTable<'_>, MoebiusError> {
    let mut table = MoebiusTable::new(lattice);
    if lattice.nested_pairs() <= MATERIALIZE_LIMIT {
        table.materialize()?;
    }
    Ok(table)
}

/// `(-1)^k p^(k(k-1)/2)` when `S` is normal in `T` with `T/S` elementary
/// abelian of rank `k`, and 0 otherwise.
pub fn moebius_closed_form(
    g: &GroupTable,
    lattice: &SubgroupLattice,
    lower: usize,
    upper: usize,
) -> Result<i64, MoebiusError> {
    if !lattice.leq(lower, upper) {
        return Err(MoebiusError::NotNested { lower, upper });
    }
    if lower == upper {
        return Ok(1);
    }
    let p = g.prime_power().ok_or(MoebiusError::NotPrimePower)?.p;
    match quotient_type(g, lattice.subgroup(lower), lattice.subgroup(upper))? {
        QuotientType::ElementaryAbelian(k) => signed_prime_power(p, k),
        _ => Ok(0),
    }
}

pub(crate) fn signed_prime_power(p: u64, k: u32) -> Result<i64, MoebiusError> {
    let exponent = k * k.saturating_sub(1) / 2;
    let magnitude = i64::try_from(p)
        .ok()
        .and_then(|p| p.checked_pow(exponent))
        .ok_or(MoebiusError::Overflow("closed form"))?;
    Ok(if k % 2 == 1 { -magnitude } else { magnitude })
}

/// An integer-valued function on the subgroups of a lattice, indexed by
/// lattice position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LatticeFunction(Vec<i64>);

impl LatticeFunction {
    pub fn new(values: Vec<i64>) -> Self {
        LatticeFunction(values)
    }

    pub fn zero(len: usize) -> Self {
        LatticeFunction(vec![0; len])
    }

    /// 1 on members of `mask`, 0 elsewhere.
    pub fn indicator(len: usize, mask: impl IntoIterator<Item = usize>) -> Self {
        let mut values = vec![0; len];
        for i in mask {
            values[i] = 1;
        }
        LatticeFunction(values)
    }

    pub fn values(&self) -> &[i64] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }
}

impl std::ops::Index<usize> for LatticeFunction {
    type Output = i64;

    fn index(&self, i: usize) -> &i64 {
        &self.0[i]
    }
}

fn check_len(lattice: &SubgroupLattice, f: &LatticeFunction) -> Result<(), MoebiusError> {
    if f.len() != lattice.len() {
        return Err(MoebiusError::LengthMismatch {
            expected: lattice.len(),
            found: f.len(),
        });
    }
    Ok(())
}

/// `g(S) = sum over T containing S of f(T)`.
pub fn accumulate(
    lattice: &SubgroupLattice,
    f: &LatticeFunction,
) -> Result<LatticeFunction, MoebiusError> {
    check_len(lattice, f)?;
    (0..lattice.len())
        .map(|s| {
            lattice
                .up_set(s)
                .ones()
                .try_fold(0i64, |acc, t| acc.checked_add(f[t]))
                .ok_or(MoebiusError::Overflow("accumulate"))
        })
        .collect::<Result<Vec<_>, _>>()
        .map(LatticeFunction)
}

/// `f(S) = sum over T containing S of mu(S, T) g(T)`.
pub fn invert(
    lattice: &SubgroupLattice,
    table: &mut MoebiusTable<'_>,
    g: &LatticeFunction,
) -> Result<LatticeFunction, MoebiusError> {
    check_len(lattice, g)?;
    (0..lattice.len())
        .map(|s| invert_at(table, g, s))
        .collect::<Result<Vec<_>, _>>()
        .map(LatticeFunction)
}

/// One value of [`invert`], touching a single row of the table.
pub fn invert_at(
    table: &mut MoebiusTable<'_>,
    g: &LatticeFunction,
    s: usize,
) -> Result<i64, MoebiusError> {
    let row = table.ensure_row(s)?;
    row.uppers
        .iter()
        .zip(&row.values)
        .try_fold(0i64, |acc, (&t, &mu)| {
            acc.checked_add(mu.checked_mul(g[t])?)
        })
        .ok_or(MoebiusError::Overflow("invert"))
}

/// Outcome of comparing the recursion with the closed form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MoebiusAgreement {
    pub pairs_checked: usize,
    /// `(lower, upper, recursive, closed form)` of the first disagreement.
    pub first_mismatch: Option<(usize, usize, i64, i64)>,
    /// Distinct nonzero values seen.
    pub observed: BTreeSet<i64>,
    /// Pairs with `S` not normal in `T` whose recursive value is nonzero.
    pub nonnormal_nonzero: usize,
}

impl MoebiusAgreement {
    pub fn agrees(&self) -> bool {
        self.first_mismatch.is_none() && self.nonnormal_nonzero == 0
    }
}

/// Checks the recursion against the closed form on every nested pair.
pub fn verify_moebius_agreement(
    g: &GroupTable,
    table: &mut MoebiusTable<'_>,
) -> Result<MoebiusAgreement, MoebiusError> {
    let lattice = table.lattice();
    let mut report = MoebiusAgreement {
        pairs_checked: 0,
        first_mismatch: None,
        observed: BTreeSet::new(),
        nonnormal_nonzero: 0,
    };
    for s in 0..lattice.len() {
        for (t, recursive) in table.row(s)? {
            let kind = quotient_type(g, lattice.subgroup(s), lattice.subgroup(t))?;
            let closed = moebius_closed_form(g, lattice, s, t)?;
            report.pairs_checked += 1;
            if recursive != 0 {
                report.observed.insert(recursive);
                if kind == QuotientType::NotNormal {
                    report.nonnormal_nonzero += 1;
                }
            }
            if recursive != closed && report.first_mismatch.is_none() {
                report.first_mismatch = Some((s, t, recursive, closed));
            }
        }
    }
    Ok(report)
}
