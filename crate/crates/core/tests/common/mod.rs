//! Independent reference implementations, used only by tests. None of these
//! call into the lattice or Moebius modules.

#![allow(dead_code)]

use std::collections::BTreeSet;

use maxab_core::GroupTable;

pub type Members = Vec<usize>;

/// Every subgroup of `g` by scanning all subsets that contain the identity.
/// A nonempty finite subset closed under products is a subgroup.
pub fn brute_force_subgroups(g: &GroupTable) -> BTreeSet<Members> {
    let n = g.order();
    assert!(n <= 20, "brute force is exponential");
    let mut out = BTreeSet::new();
    for mask in 0u32..(1 << (n - 1)) {
        let set = (mask << 1) | 1;
        let members: Members = (0..n).filter(|&i| set >> i & 1 == 1).collect();
        let closed = members
            .iter()
            .all(|&a| members.iter().all(|&b| set >> g.mul(a, b) & 1 == 1));
        if closed {
            out.insert(members);
        }
    }
    out
}

/// Smallest subgroup containing `seed`, by repeated products.
pub fn naive_closure(g: &GroupTable, seed: &[usize]) -> Members {
    let mut set: BTreeSet<usize> = seed.iter().copied().collect();
    set.insert(0);
    loop {
        let before = set.len();
        let snapshot: Vec<usize> = set.iter().copied().collect();
        for &a in &snapshot {
            for &b in &snapshot {
                set.insert(g.mul(a, b));
            }
        }
        if set.len() == before {
            return set.into_iter().collect();
        }
    }
}

pub fn commute_all(g: &GroupTable, s: &[usize]) -> bool {
    s.iter()
        .all(|&a| s.iter().all(|&b| g.mul(a, b) == g.mul(b, a)))
}

pub fn centralizer_of(g: &GroupTable, s: &[usize]) -> Members {
    (0..g.order())
        .filter(|&x| s.iter().all(|&y| g.mul(x, y) == g.mul(y, x)))
        .collect()
}

/// An abelian subgroup `A` is maximal abelian exactly when `C(A) = A`.
pub fn is_maximal_abelian(g: &GroupTable, s: &[usize]) -> bool {
    commute_all(g, s) && centralizer_of(g, s) == s
}

/// Order of `x` by repeated multiplication.
pub fn naive_order(g: &GroupTable, x: usize) -> usize {
    let mut y = x;
    let mut k = 1;
    while y != 0 {
        y = g.mul(y, x);
        k += 1;
    }
    k
}

/// Weisner-Hall value of `mu(S, T)` from first principles: nonzero only when
/// `S` is normal in `T` with `T/S` abelian of exponent `p`.
pub fn weisner_hall(g: &GroupTable, p: u64, s: &[usize], t: &[usize]) -> i64 {
    let in_s = |x: usize| s.binary_search(&x).is_ok();
    let inv = |x: usize| (0..g.order()).find(|&y| g.mul(x, y) == 0).unwrap();
    let normal = t
        .iter()
        .all(|&x| s.iter().all(|&y| in_s(g.mul(g.mul(x, y), inv(x)))));
    if !normal {
        return 0;
    }
    let elementary = t.iter().all(|&x| {
        let mut y = 0;
        for _ in 0..p {
            y = g.mul(y, x);
        }
        in_s(y)
            && t.iter()
                .all(|&z| in_s(g.mul(g.mul(x, z), inv(g.mul(z, x)))))
    });
    if !elementary {
        return 0;
    }
    let mut index = t.len() / s.len();
    let mut k = 0u32;
    while index > 1 {
        assert_eq!(index as u64 % p, 0);
        index /= p as usize;
        k += 1;
    }
    let magnitude = (p as i64).pow(k * k.saturating_sub(1) / 2);
    if k % 2 == 1 {
        -magnitude
    } else {
        magnitude
    }
}

/// Number of `k`-dimensional subspaces of `F_q^n`, by the product formula.
pub fn subspace_count(n: u32, k: u32, q: u128) -> u128 {
    let mut num = 1u128;
    let mut den = 1u128;
    for i in 0..k {
        num *= q.pow(n - i) - 1;
        den *= q.pow(i + 1) - 1;
    }
    num / den
}
