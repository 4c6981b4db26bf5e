//! Constructors for standard families of groups, mostly p-groups.

use crate::group::{is_prime, GroupError, GroupTable};
use crate::perm::{from_permutations, Permutation};

/// Names accepted by [`family`].
pub const FAMILY_NAMES: &[&str] = &[
    "cyclic",
    "elemab",
    "dihedral",
    "genquat",
    "heisenberg",
    "modular_p3",
    "wreath_pp",
];

fn arity(name: &str, params: &[u64], expected: usize) -> Result<(), GroupError> {
    if params.len() != expected {
        return Err(GroupError::BadParameter(format!(
            "{name} takes {expected} parameter(s), got {}",
            params.len()
        )));
    }
    Ok(())
}

fn require_prime(name: &str, p: u64) -> Result<(), GroupError> {
    if !is_prime(p) {
        return Err(GroupError::BadParameter(format!(
            "{name}: {p} is not prime"
        )));
    }
    Ok(())
}

fn checked_order(cap: usize, factors: impl IntoIterator<Item = u64>) -> Result<usize, GroupError> {
    let mut order: u64 = 1;
    for f in factors {
        order = order
            .checked_mul(f)
            .filter(|&o| o <= cap as u64)
            .ok_or(GroupError::OrderCapExceeded { cap })?;
    }
    Ok(order as usize)
}

/// Builds a member of a named family, e.g. `family("dihedral", &[4], cap)`.
pub fn family(name: &str, params: &[u64], cap: usize) -> Result<GroupTable, GroupError> {
    let label = format!(
        "{name}({})",
        params
            .iter()
            .map(u64::to_string)
            .collect::<Vec<_>>()
            .join(",")
    );
    let g = match name {
        "cyclic" => {
            arity(name, params, 1)?;
            cyclic(params[0], cap)
        }
        "elemab" => {
            arity(name, params, 2)?;
            elementary_abelian(params[0], params[1], cap)
        }
        "dihedral" => {
            arity(name, params, 1)?;
            dihedral(params[0], cap)
        }
        "genquat" => {
            arity(name, params, 1)?;
            generalized_quaternion(params[0], cap)
        }
        "heisenberg" => {
            arity(name, params, 1)?;
            heisenberg(params[0], cap)
        }
        "modular_p3" => {
            arity(name, params, 1)?;
            modular_p3(params[0], cap)
        }
        "wreath_pp" => {
            arity(name, params, 1)?;
            wreath_pp(params[0], cap)
        }
        _ => Err(GroupError::BadParameter(format!("unknown family {name:?}"))),
    }?;
    Ok(g.with_name(label))
}

pub fn cyclic(n: u64, cap: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParameter(
            "cyclic: order must be positive".into(),
        ));
    }
    let n = checked_order(cap, [n])?;
    GroupTable::from_fn(format!("cyclic({n})"), n, cap, |a, b| (a + b) % n)
}

/// `(Z/p)^k`, elements indexed by base-`p` digit vectors.
pub fn elementary_abelian(p: u64, k: u64, cap: usize) -> Result<GroupTable, GroupError> {
    require_prime("elemab", p)?;
    if k == 0 {
        return Err(GroupError::BadParameter(
            "elemab: rank must be positive".into(),
        ));
    }
    let n = checked_order(cap, std::iter::repeat_n(p, k as usize))?;
    let p = p as usize;
    GroupTable::from_fn(format!("elemab({p},{k})"), n, cap, |mut a, mut b| {
        let (mut out, mut place) = (0, 1);
        while a > 0 || b > 0 {
            out += ((a % p + b % p) % p) * place;
            a /= p;
            b /= p;
            place *= p;
        }
        out
    })
}

/// Dihedral group of order `2n`; `r^a s^b` has index `a + n b`.
pub fn dihedral(n: u64, cap: usize) -> Result<GroupTable, GroupError> {
    if n == 0 {
        return Err(GroupError::BadParameter(
            "dihedral: n must be positive".into(),
        ));
    }
    let order = checked_order(cap, [2, n])?;
    let n = n as usize;
    GroupTable::from_fn(format!("dihedral({n})"), order, cap, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let rot = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        rot + n * ((b + d) % 2)
    })
}

/// Generalized quaternion group of order `m = 2^k`, `k >= 3`:
/// `<x, y | x^(m/2) = 1, y^2 = x^(m/4), y x y^-1 = x^-1>`.
pub fn generalized_quaternion(m: u64, cap: usize) -> Result<GroupTable, GroupError> {
    if m < 8 || !m.is_power_of_two() {
        return Err(GroupError::BadParameter(format!(
            "genquat: order {m} must be a power of two, at least 8"
        )));
    }
    let order = checked_order(cap, [m])?;
    let n = order / 2;
    GroupTable::from_fn(format!("genquat({order})"), order, cap, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        let mut e = if b == 0 { (a + c) % n } else { (a + n - c) % n };
        if b == 1 && d == 1 {
            e = (e + n / 2) % n;
            e
        } else {
            e + n * (b ^ d)
        }
    })
}

/// Upper unitriangular 3x3 matrices over `F_p`; `(a, b, c)` has index
/// `a + p b + p^2 c`, with `(a,b,c)(a',b',c') = (a+a', b+b', c+c'+ab')`.
pub fn heisenberg(p: u64, cap: usize) -> Result<GroupTable, GroupError> {
    require_prime("heisenberg", p)?;
    let order = checked_order(cap, [p, p, p])?;
    let p = p as usize;
    GroupTable::from_fn(format!("heisenberg({p})"), order, cap, |x, y| {
        let (a, b, c) = (x % p, (x / p) % p, x / (p * p));
        let (a2, b2, c2) = (y % p, (y / p) % p, y / (p * p));
        (a + a2) % p + p * ((b + b2) % p) + p * p * ((c + c2 + a * b2) % p)
    })
}

/// `<x, y | x^(p^2) = y^p = 1, y x y^-1 = x^(1+p)>` for odd `p`; `x^a y^b`
/// has index `a + p^2 b`.
pub fn modular_p3(p: u64, cap: usize) -> Result<GroupTable, GroupError> {
    require_prime("modular_p3", p)?;
    if p == 2 {
        return Err(GroupError::BadParameter("modular_p3: p must be odd".into()));
    }
    let order = checked_order(cap, [p, p, p])?;
    let p = p as usize;
    let n = p * p;
    // twist[b] = (1+p)^b mod p^2
    let mut twist = vec![1usize; p];
    for b in 1..p {
        twist[b] = twist[b - 1] * (1 + p) % n;
    }
    GroupTable::from_fn(format!("modular_p3({p})"), order, cap, |x, y| {
        let (a, b) = (x % n, x / n);
        let (c, d) = (y % n, y / n);
        (a + c * twist[b]) % n + n * ((b + d) % p)
    })
}

/// `Z/p wr Z/p` acting on `p^2` points: a `p`-cycle on the first block and
/// the block shift `i -> i + p (mod p^2)`.
pub fn wreath_pp(p: u64, cap: usize) -> Result<GroupTable, GroupError> {
    require_prime("wreath_pp", p)?;
    checked_order(cap, std::iter::repeat_n(p, p as usize + 1))?;
    let p = p as usize;
    let degree = p * p;
    let base = Permutation::from_images(
        (0..degree)
            .map(|i| if i < p { (i + 1) % p } else { i })
            .collect(),
    )
    .expect("block cycle is a bijection");
    let shift = Permutation::from_images((0..degree).map(|i| (i + p) % degree).collect())
        .expect("block shift is a bijection");
    from_permutations(degree, &[base, shift], format!("wreath_pp({p})"), cap)
}
