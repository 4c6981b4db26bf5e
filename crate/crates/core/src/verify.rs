//! Exhaustive checks of the maximal abelian subgroup congruence and of each
//! step of its inductive proof, run on one concrete group at a time.

use std::collections::HashMap;
use std::fmt::Write as _;
use std::time::{Duration, Instant};

use fixedbitset::FixedBitSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use thiserror::Error;

use crate::group::{GroupError, GroupTable, InducedGroup, PrimePower};
use crate::lattice::{
    closure, count_order_p_subgroups, quotient_type, LatticeCaps, LatticeError, QuotientType,
    SubgroupLattice,
};
use crate::moebius::{
    accumulate, invert, invert_at, verify_moebius_agreement, LatticeFunction, MoebiusError,
    MoebiusTable,
};
use crate::subgroup::SubgroupSet;

/// Above this order the quadratic checks are off unless forced.
pub const HEAVY_CHECK_ORDER_LIMIT: usize = 64;
/// Random lattice functions per inversion round-trip check.
pub const RANDOM_FUNCTIONS: usize = 100;
/// Random function values are drawn uniformly from this range.
pub const RANDOM_VALUE_RANGE: std::ops::RangeInclusive<i64> = -9..=9;

pub const CHECK_NAMES: [&str; 11] = [
    "lattice_structure",
    "theorem",
    "generalized",
    "center_containment",
    "reduction_centralizer",
    "moebius_agreement",
    "inversion",
    "congruence_step",
    "cyclic_quotient_lemma",
    "order_p_count",
    "double_count",
];

#[derive(Error, Debug, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("group order is not a prime power")]
    NotPrimePower,
    #[error(transparent)]
    Group(#[from] GroupError),
    #[error(transparent)]
    Lattice(#[from] LatticeError),
    #[error(transparent)]
    Moebius(#[from] MoebiusError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum CheckStatus {
    Pass,
    Fail,
    NotApplicable,
    Skipped,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct CheckResult {
    pub check_name: String,
    pub status: CheckStatus,
    pub passed: bool,
    pub detail: String,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl CheckResult {
    fn new(name: &str, status: CheckStatus, detail: impl Into<String>) -> Self {
        CheckResult {
            check_name: name.to_string(),
            status,
            passed: status == CheckStatus::Pass,
            detail: detail.into(),
            elapsed: Duration::ZERO,
        }
    }

    fn verdict(name: &str, ok: bool, detail: impl Into<String>) -> Self {
        let status = if ok {
            CheckStatus::Pass
        } else {
            CheckStatus::Fail
        };
        Self::new(name, status, detail)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum ReportStatus {
    #[serde(rename = "PASS")]
    Pass,
    #[serde(rename = "FAIL")]
    Fail,
    #[serde(rename = "N/A")]
    NotApplicable,
    #[serde(rename = "SKIPPED")]
    Skipped,
}

impl ReportStatus {
    pub fn label(self) -> &'static str {
        match self {
            ReportStatus::Pass => "PASS",
            ReportStatus::Fail => "FAIL",
            ReportStatus::NotApplicable => "N/A",
            ReportStatus::Skipped => "SKIPPED",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct VerificationReport {
    pub name: String,
    pub order: usize,
    pub p: Option<u64>,
    pub k: Option<u32>,
    pub n_subgroups: Option<usize>,
    pub n_max_abelian: Option<usize>,
    pub residue: Option<u64>,
    pub status: ReportStatus,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
    pub checks: Vec<CheckResult>,
    #[serde(skip)]
    pub elapsed: Duration,
}

impl VerificationReport {
    /// A report for a group that could not be built or enumerated.
    pub fn skipped(name: &str, order: Option<usize>, reason: impl Into<String>) -> Self {
        VerificationReport {
            name: name.to_string(),
            order: order.unwrap_or(0),
            p: None,
            k: None,
            n_subgroups: None,
            n_max_abelian: None,
            residue: None,
            status: ReportStatus::Skipped,
            note: Some(reason.into()),
            checks: Vec::new(),
            elapsed: Duration::ZERO,
        }
    }

    pub fn checks_passed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Pass)
            .count()
    }

    pub fn checks_failed(&self) -> usize {
        self.checks
            .iter()
            .filter(|c| c.status == CheckStatus::Fail)
            .count()
    }

    pub fn check(&self, name: &str) -> Option<&CheckResult> {
        self.checks.iter().find(|c| c.check_name == name)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub caps: LatticeCaps,
    /// Force the Moebius cross-check and round trips at every order.
    pub cross_check_moebius: bool,
    /// `None` enables the generalized check up to [`HEAVY_CHECK_ORDER_LIMIT`].
    pub all_abelian_h: Option<bool>,
    pub seed: u64,
    pub random_functions: usize,
}

impl Default for VerifyOptions {
    fn default() -> Self {
        VerifyOptions {
            caps: LatticeCaps::default(),
            cross_check_moebius: false,
            all_abelian_h: None,
            seed: 1,
            random_functions: RANDOM_FUNCTIONS,
        }
    }
}

fn p_of(g: &GroupTable) -> Result<Option<PrimePower>, VerifyError> {
    match g.prime_power() {
        Some(pp) => Ok(Some(pp)),
        None if g.is_trivial() => Ok(None),
        None => Err(VerifyError::NotPrimePower),
    }
}

fn center_index(g: &GroupTable, lattice: &SubgroupLattice) -> usize {
    lattice
        .index_of(&g.center())
        .expect("the center is a subgroup")
}

/// Number of maximal abelian subgroups containing subgroup `h`.
pub fn g_value(lattice: &SubgroupLattice, h: usize) -> usize {
    lattice.maximal_abelian_above(h)
}

/// The number of maximal abelian subgroups is 1 mod p.
pub fn verify_theorem(
    g: &GroupTable,
    lattice: &SubgroupLattice,
) -> Result<CheckResult, VerifyError> {
    let count = lattice.maximal_abelian_indices().count();
    let Some(pp) = p_of(g)? else {
        return Ok(CheckResult::verdict(
            "theorem",
            count == 1,
            format!("trivial group, count={count} (vacuous)"),
        ));
    };
    let residue = count as u64 % pp.p;
    Ok(CheckResult::verdict(
        "theorem",
        residue == 1,
        format!("count={count} residue={residue} p={}", pp.p),
    ))
}

/// `g(H) = 1 mod p` for every abelian subgroup `H`.
pub fn verify_generalized(
    g: &GroupTable,
    lattice: &SubgroupLattice,
) -> Result<CheckResult, VerifyError> {
    let p = p_of(g)?.map_or(1, |pp| pp.p);
    let mut checked = 0;
    let mut violations = Vec::new();
    for h in lattice.abelian_mask().ones() {
        checked += 1;
        let value = g_value(lattice, h) as u64;
        // p = 1 only for the trivial group, where g(G) = 1 is required
        let ok = if p == 1 { value == 1 } else { value % p == 1 };
        if !ok {
            violations.push(format!(
                "H#{h}(order {})=>{value}",
                lattice.subgroup(h).size()
            ));
        }
    }
    let mut detail = format!("abelian_h={checked} violations={}", violations.len());
    if !violations.is_empty() {
        let _ = write!(
            detail,
            " first={}",
            violations[..violations.len().min(5)].join(",")
        );
    }
    Ok(CheckResult::verdict(
        "generalized",
        violations.is_empty(),
        detail,
    ))
}

/// Every maximal abelian subgroup contains the center.
pub fn verify_center_containment(g: &GroupTable, lattice: &SubgroupLattice) -> CheckResult {
    let z = g.center();
    let max_ab: Vec<usize> = lattice.maximal_abelian_indices().collect();
    let witness = max_ab.iter().find(|&&a| !z.is_subset(lattice.subgroup(a)));
    let detail = match witness {
        None => format!("center_order={} maximal_abelian={}", z.size(), max_ab.len()),
        Some(a) => format!("A#{a} misses the center (order {})", z.size()),
    };
    CheckResult::verdict("center_containment", witness.is_none(), detail)
}

/// `g_G(H) = g_C(H)(H)` for every abelian `H`, with the lattice of `C(H)`
/// rebuilt from scratch as a group of its own.
pub fn verify_reduction_centralizer(
    g: &GroupTable,
    lattice: &SubgroupLattice,
    caps: LatticeCaps,
) -> Result<CheckResult, VerifyError> {
    let mut cache: HashMap<FixedBitSet, (InducedGroup, SubgroupLattice)> = HashMap::new();
    let mut checked = 0;
    let mut failure: Option<String> = None;
    let mut proper = 0;
    for h in lattice.abelian_mask().ones() {
        let s = lattice.subgroup(h);
        let c = g.centralizer(s)?;
        if !cache.contains_key(c.bits()) {
            let induced = g.subgroup_as_group(&c)?;
            let sub = SubgroupLattice::build(&induced.table, caps)?;
            // the rebuilt lattice must be the parent's subgroups inside C(H)
            let lifted: Vec<SubgroupSet> =
                sub.subgroups().iter().map(|t| induced.lift(t)).collect();
            let filtered: Vec<SubgroupSet> = lattice
                .subgroups()
                .iter()
                .filter(|t| t.is_subset(&c))
                .cloned()
                .collect();
            if lifted != filtered && failure.is_none() {
                failure = Some(format!(
                    "C(H#{h}) rebuilt with {} subgroups, parent has {} inside it",
                    lifted.len(),
                    filtered.len()
                ));
            }
            if c.size() < g.order() {
                proper += 1;
            }
            cache.insert(c.bits().clone(), (induced, sub));
        }
        let (induced, sub) = &cache[c.bits()];
        checked += 1;
        let inner = induced.restrict(s).and_then(|t| sub.index_of(&t));
        let Some(inner) = inner else {
            failure.get_or_insert_with(|| format!("H#{h} is not a subgroup of C(H)"));
            continue;
        };
        let (outer_value, inner_value) = (g_value(lattice, h), g_value(sub, inner));
        if outer_value != inner_value && failure.is_none() {
            failure = Some(format!("H#{h}: g_G={outer_value} g_C={inner_value}"));
        }
    }
    let detail = match &failure {
        None => format!(
            "abelian_h={checked} distinct_centralizers={} proper={proper}",
            cache.len()
        ),
        Some(f) => f.clone(),
    };
    Ok(CheckResult::verdict(
        "reduction_centralizer",
        failure.is_none(),
        detail,
    ))
}

/// Order-p subgroups of `g`, found independently of the lattice.
fn order_p_subgroups(g: &GroupTable, p: u64) -> Vec<SubgroupSet> {
    let mut subs: Vec<SubgroupSet> = (1..g.order())
        .filter(|&x| g.element_order(x) as u64 == p)
        .map(|x| closure(g, &[x]))
        .collect();
    subs.sort();
    subs.dedup();
    subs
}

/// The chain from isolating `T = Z` in the inversion formula down to the
/// count of order-p subgroups of `G/Z`.
pub fn verify_congruence_step(
    g: &GroupTable,
    lattice: &SubgroupLattice,
    table: &mut MoebiusTable<'_>,
) -> Result<CheckResult, VerifyError> {
    const NAME: &str = "congruence_step";
    let p = match p_of(g)? {
        Some(pp) => pp.p,
        None => return Ok(CheckResult::verdict(NAME, true, "trivial group: g(Z)=1")),
    };
    let z = center_index(g, lattice);
    let gz = g_value(lattice, z) as i64;
    if lattice.is_maximal_abelian(z) {
        return Ok(CheckResult::verdict(
            NAME,
            gz == 1,
            format!("Z maximal abelian: g(Z)={gz}"),
        ));
    }
    let p_i = p as i64;
    let zs = lattice.subgroup(z);

    // (a) exact identity after isolating T = Z
    let mut isolated: i64 = 0;
    let mut abelian_sum: i64 = 0;
    let mut count_b: i64 = 0;
    let mut index_p: Vec<usize> = Vec::new();
    for (t, mu) in table.row(z)? {
        if t == z {
            continue;
        }
        let gt = g_value(lattice, t) as i64;
        isolated = mu
            .checked_mul(gt)
            .and_then(|x| isolated.checked_sub(x))
            .ok_or(MoebiusError::Overflow("congruence sum"))?;
        if lattice.is_abelian(t) {
            abelian_sum -= mu;
        }
        let kind = quotient_type(g, zs, lattice.subgroup(t))?;
        if kind == QuotientType::ElementaryAbelian(1) {
            index_p.push(t);
            if lattice.is_abelian(t) {
                count_b += 1;
            }
        }
    }
    let a_ok = gz == isolated;
    let a2_ok = (gz - abelian_sum).rem_euclid(p_i) == 0;
    // (b)
    let b_ok = (gz - count_b).rem_euclid(p_i) == 0;
    // (c) T -> T/Z against the order-p subgroups of G/Z
    let quotient = g.quotient(zs)?;
    let count_c =
        count_order_p_subgroups(&quotient.quotient).map_err(|_| VerifyError::NotPrimePower)? as i64;
    let lemma_ok = index_p.iter().all(|&t| lattice.is_abelian(t));
    let mut projected: Vec<SubgroupSet> = index_p
        .iter()
        .map(|&t| {
            let cosets = lattice
                .subgroup(t)
                .elements()
                .map(|x| quotient.projection[x]);
            SubgroupSet::from_elements(&quotient.quotient, cosets)
        })
        .collect::<Result<_, _>>()?;
    projected.sort();
    let correspondence_ok = projected == order_p_subgroups(&quotient.quotient, p);
    let c_ok = lemma_ok && correspondence_ok && count_b == count_c;
    // (d)
    let d_ok = gz.rem_euclid(p_i) == 1;

    let detail = format!(
        "g(Z)={gz} isolated_sum={isolated} abelian_sum={abelian_sum} \
         T/Z=Z/p:{count_b} order_p(G/Z)={count_c} residue={} a={} b={} c={} d={}",
        gz.rem_euclid(p_i),
        a_ok && a2_ok,
        b_ok,
        c_ok,
        d_ok
    );
    Ok(CheckResult::verdict(
        NAME,
        a_ok && a2_ok && b_ok && c_ok && d_ok,
        detail,
    ))
}

/// A nonabelian group never has a nontrivial cyclic central quotient.
pub fn cyclic_quotient_lemma_check(g: &GroupTable) -> Result<CheckResult, VerifyError> {
    let z = g.center();
    let full = SubgroupSet::full(g.order());
    let kind = quotient_type(g, &z, &full)?;
    let index = g.order() / z.size();
    let cyclic = index > 1 && kind.is_cyclic();
    let abelian = z.size() == g.order();
    Ok(CheckResult::verdict(
        "cyclic_quotient_lemma",
        !(cyclic && !abelian),
        format!("abelian={abelian} G/Z={kind:?} index={index}"),
    ))
}

/// Number of order-p subgroups is 1 mod p.
pub fn order_p_count_congruence(g: &GroupTable) -> Result<CheckResult, VerifyError> {
    let Some(pp) = p_of(g)? else {
        return Ok(CheckResult::verdict(
            "order_p_count",
            true,
            "trivial group (vacuous)",
        ));
    };
    let count = count_order_p_subgroups(g).map_err(|_| VerifyError::NotPrimePower)?;
    Ok(CheckResult::verdict(
        "order_p_count",
        count % pp.p == 1,
        format!("count={count} residue={}", count % pp.p),
    ))
}

/// Pairs `(c, A)` with `c` a coset of the center inside a maximal abelian
/// `A`, counted by `A` and by `c`.
pub fn double_count_pairs(
    g: &GroupTable,
    lattice: &SubgroupLattice,
) -> Result<CheckResult, VerifyError> {
    let z = g.center();
    let cosets = g.quotient(&z)?;
    let max_ab: Vec<&SubgroupSet> = lattice
        .maximal_abelian_indices()
        .map(|i| lattice.subgroup(i))
        .collect();
    let by_subgroup: usize = max_ab.iter().map(|a| a.size() / z.size()).sum();
    let by_coset: usize = cosets
        .coset_members
        .iter()
        .map(|c| {
            max_ab
                .iter()
                .filter(|a| c.iter().all(|&x| a.contains(x)))
                .count()
        })
        .sum();
    Ok(CheckResult::verdict(
        "double_count",
        by_subgroup == by_coset,
        format!("by_subgroup={by_subgroup} by_coset={by_coset}"),
    ))
}

/// Lattice invariants: subgroup axioms, Lagrange, containment, covers and
/// the maximal abelian antichain.
pub fn lattice_structure_check(g: &GroupTable, lattice: &SubgroupLattice) -> CheckResult {
    const NAME: &str = "lattice_structure";
    let n = lattice.len();
    let fail = |msg: String| CheckResult::verdict(NAME, false, msg);
    if !lattice.subgroup(lattice.bottom()).is_trivial()
        || lattice.subgroup(lattice.top()).size() != g.order()
    {
        return fail("bottom/top are not trivial/full".into());
    }
    for (i, s) in lattice.subgroups().iter().enumerate() {
        if !s.is_subgroup_of(g) {
            return fail(format!("S#{i} is not a subgroup"));
        }
        if i > 0 && lattice.subgroup(i - 1) >= s {
            return fail(format!("S#{i} out of canonical order"));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if lattice.leq(i, j) != lattice.subgroup(i).is_subset(lattice.subgroup(j)) {
                return fail(format!("containment mismatch at ({i}, {j})"));
            }
        }
    }
    let mut cover_count = 0;
    for &(a, b) in lattice.covers() {
        cover_count += 1;
        let mut between = lattice.up_set(a).clone();
        between.intersect_with(lattice.down_set(b));
        if a == b || !lattice.leq(a, b) || between.count_ones(..) != 2 {
            return fail(format!("cover ({a}, {b}) is not a cover"));
        }
    }
    // every strict pair is reachable through covers
    let mut reach: Vec<FixedBitSet> = vec![FixedBitSet::with_capacity(n); n];
    let mut above: Vec<Vec<usize>> = vec![Vec::new(); n];
    for &(a, b) in lattice.covers() {
        above[a].push(b);
    }
    for i in (0..n).rev() {
        reach[i].insert(i);
        for &b in &above[i] {
            let r = reach[b].clone();
            reach[i].union_with(&r);
        }
        if &reach[i] != lattice.up_set(i) {
            return fail(format!("covers do not generate containment above S#{i}"));
        }
    }
    for a in lattice.maximal_abelian_indices() {
        if !lattice.is_abelian(a) {
            return fail(format!("A#{a} marked maximal abelian but is not abelian"));
        }
        for b in lattice.maximal_abelian_indices() {
            if a != b && lattice.leq(a, b) {
                return fail(format!("maximal abelian A#{a} lies in A#{b}"));
            }
        }
    }
    for h in lattice.abelian_mask().ones() {
        if lattice.maximal_abelian_above(h) == 0 {
            return fail(format!("abelian S#{h} lies in no maximal abelian subgroup"));
        }
    }
    CheckResult::verdict(
        NAME,
        true,
        format!(
            "subgroups={n} covers={cover_count} abelian={}",
            lattice.abelian_mask().count_ones(..)
        ),
    )
}

fn moebius_check(g: &GroupTable, table: &mut MoebiusTable<'_>) -> Result<CheckResult, VerifyError> {
    let agreement = verify_moebius_agreement(g, table)?;
    let observed: Vec<String> = agreement.observed.iter().map(i64::to_string).collect();
    let mut detail = format!(
        "pairs={} values=[{}]",
        agreement.pairs_checked,
        observed.join(",")
    );
    if let Some((s, t, rec, closed)) = agreement.first_mismatch {
        let _ = write!(
            detail,
            " mismatch=(S#{s},T#{t}) recursive={rec} closed={closed}"
        );
    }
    if agreement.nonnormal_nonzero > 0 {
        let _ = write!(detail, " nonnormal_nonzero={}", agreement.nonnormal_nonzero);
    }
    Ok(CheckResult::verdict(
        "moebius_agreement",
        agreement.agrees(),
        detail,
    ))
}

/// Deterministic pseudo-random lattice functions.
pub fn random_functions(len: usize, count: usize, seed: u64) -> Vec<LatticeFunction> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            LatticeFunction::new(
                (0..len)
                    .map(|_| rng.gen_range(RANDOM_VALUE_RANGE))
                    .collect(),
            )
        })
        .collect()
}

/// Round trips on random functions (when `round_trips`) and the inversion
/// value at the center of the maximal abelian indicator.
pub fn verify_inversion(
    g: &GroupTable,
    lattice: &SubgroupLattice,
    table: &mut MoebiusTable<'_>,
    round_trips: Option<(usize, u64)>,
) -> Result<CheckResult, VerifyError> {
    let n = lattice.len();
    let indicator = LatticeFunction::indicator(n, lattice.maximal_abelian_indices());
    let counts = accumulate(lattice, &indicator)?;
    let z = center_index(g, lattice);
    let fz = invert_at(table, &counts, z)?;
    let mut ok = fz == indicator[z];
    let mut detail = format!("f(Z)={fz}");
    if let Some((count, seed)) = round_trips {
        let mut failures = 0;
        for f in random_functions(n, count, seed) {
            let up = accumulate(lattice, &f)?;
            let back = invert(lattice, table, &up)?;
            let down = invert(lattice, table, &f)?;
            let again = accumulate(lattice, &down)?;
            if back != f || again != f {
                failures += 1;
            }
        }
        ok &= failures == 0;
        let _ = write!(detail, " round_trips={count} failures={failures}");
    }
    Ok(CheckResult::verdict("inversion", ok, detail))
}

fn timed(f: impl FnOnce() -> Result<CheckResult, VerifyError>) -> Result<CheckResult, VerifyError> {
    let start = Instant::now();
    let mut result = f()?;
    result.elapsed = start.elapsed();
    Ok(result)
}

fn not_applicable(name: &str) -> CheckResult {
    CheckResult::new(name, CheckStatus::NotApplicable, "not a p-group")
}

fn skipped(name: &str, why: &str) -> CheckResult {
    CheckResult::new(name, CheckStatus::Skipped, why)
}

/// One-line reason for caps that turn a report into SKIPPED.
fn cap_reason(err: &VerifyError) -> Option<String> {
    match err {
        VerifyError::Lattice(
            e @ (LatticeError::EnumerationCapExceeded { .. }
            | LatticeError::TooManySubgroups { .. }),
        ) => Some(e.to_string()),
        VerifyError::Group(e @ GroupError::OrderCapExceeded { .. }) => Some(e.to_string()),
        _ => None,
    }
}

/// Builds the lattice once and runs every check on `g`.
pub fn run_all(g: &GroupTable, opts: &VerifyOptions) -> VerificationReport {
    let start = Instant::now();
    let mut report = match run_checks(g, opts) {
        Ok(r) => r,
        Err(e) => match cap_reason(&e) {
            Some(reason) => VerificationReport::skipped(g.name(), Some(g.order()), reason),
            None => {
                let mut r = VerificationReport::skipped(g.name(), Some(g.order()), e.to_string());
                r.status = ReportStatus::Fail;
                r
            }
        },
    };
    report.elapsed = start.elapsed();
    report
}

fn run_checks(g: &GroupTable, opts: &VerifyOptions) -> Result<VerificationReport, VerifyError> {
    let lattice = SubgroupLattice::build(g, opts.caps)?;
    let mut table = MoebiusTable::new(&lattice);
    let pp = g.prime_power();
    let p_group = pp.is_some() || g.is_trivial();
    let small = g.order() <= HEAVY_CHECK_ORDER_LIMIT;
    let heavy_moebius = opts.cross_check_moebius || small;
    let generalized = opts.all_abelian_h.unwrap_or(small);
    let limit_note = format!("disabled above order {HEAVY_CHECK_ORDER_LIMIT}");

    let mut checks = Vec::with_capacity(CHECK_NAMES.len());
    checks.push(timed(|| Ok(lattice_structure_check(g, &lattice)))?);
    checks.push(if p_group {
        timed(|| verify_theorem(g, &lattice))?
    } else {
        not_applicable("theorem")
    });
    checks.push(match (p_group, generalized) {
        (false, _) => not_applicable("generalized"),
        (true, false) => skipped("generalized", &limit_note),
        (true, true) => timed(|| verify_generalized(g, &lattice))?,
    });
    checks.push(timed(|| Ok(verify_center_containment(g, &lattice)))?);
    checks.push(timed(|| {
        verify_reduction_centralizer(g, &lattice, opts.caps)
    })?);
    checks.push(match (p_group, heavy_moebius) {
        (false, _) => not_applicable("moebius_agreement"),
        (true, false) => skipped("moebius_agreement", &limit_note),
        (true, true) => timed(|| moebius_check(g, &mut table))?,
    });
    let round_trips = heavy_moebius.then_some((opts.random_functions, opts.seed));
    checks.push(timed(|| {
        verify_inversion(g, &lattice, &mut table, round_trips)
    })?);
    checks.push(if p_group {
        timed(|| verify_congruence_step(g, &lattice, &mut table))?
    } else {
        not_applicable("congruence_step")
    });
    checks.push(timed(|| cyclic_quotient_lemma_check(g))?);
    checks.push(if p_group {
        timed(|| order_p_count_congruence(g))?
    } else {
        not_applicable("order_p_count")
    });
    checks.push(timed(|| double_count_pairs(g, &lattice))?);

    let n_max_abelian = lattice.maximal_abelian_indices().count();
    let residue = match pp {
        Some(pp) => Some(n_max_abelian as u64 % pp.p),
        None if g.is_trivial() => Some(1),
        None => None,
    };
    let failed = checks.iter().any(|c| c.status == CheckStatus::Fail);
    let status = if failed {
        ReportStatus::Fail
    } else if p_group {
        ReportStatus::Pass
    } else {
        ReportStatus::NotApplicable
    };
    Ok(VerificationReport {
        name: g.name().to_string(),
        order: g.order(),
        p: pp.map(|pp| pp.p),
        k: pp.map(|pp| pp.k).or(g.is_trivial().then_some(0)),
        n_subgroups: Some(lattice.len()),
        n_max_abelian: Some(n_max_abelian),
        residue,
        status,
        note: None,
        checks,
        elapsed: Duration::ZERO,
    })
}
