//! Small finite p-groups, their full subgroup lattices, the lattice Moebius
//! function, and exhaustive machine checks of the statement that a finite
//! p-group has `1 (mod p)` maximal abelian subgroups, together with every
//! step of its inductive proof.

pub mod corpus;
pub mod families;
pub mod group;
pub mod lattice;
pub mod moebius;
pub mod perm;
pub mod subgroup;
pub mod verify;

pub use group::{
    prime_power, AssocCheck, CosetPartition, ElementIndex, GroupError, GroupTable, InducedGroup,
    NotPrimePower, PrimePower, DEFAULT_ORDER_CAP,
};
pub use lattice::{
    all_subgroups, build_lattice, closure, count_order_p_subgroups, is_normal_in,
    maximal_abelian_subgroups, quotient_type, LatticeCaps, LatticeError, QuotientType,
    SubgroupLattice,
};
pub use moebius::{
    accumulate, invert, moebius_closed_form, moebius_recursive, verify_moebius_agreement,
    LatticeFunction, MoebiusError, MoebiusTable,
};
pub use perm::{from_permutations, Permutation};
pub use subgroup::SubgroupSet;
pub use verify::{
    run_all, CheckResult, CheckStatus, ReportStatus, VerificationReport, VerifyError, VerifyOptions,
};
