//! Permutations in 1-based cycle notation and breadth-first closure of
//! permutation groups.

use std::collections::HashMap;
use std::fmt;

use crate::group::{GroupError, GroupTable};

/// A permutation of `{0, .., degree - 1}` stored as its image array.
///
/// Products compose left to right: `a * b` applies `a` first.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Permutation(Vec<u16>);

/// Failure while reading cycle notation. `column` is 1-based within the
/// parsed text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleParseError {
    pub column: usize,
    pub message: String,
}

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Permutation((0..degree as u16).collect())
    }

    /// Builds a permutation from 0-based images, checking bijectivity.
    pub fn from_images(images: Vec<usize>) -> Result<Self, String> {
        let n = images.len();
        let mut seen = vec![false; n];
        for &x in &images {
            if x >= n || std::mem::replace(&mut seen[x], true) {
                return Err(format!("image {x} repeated or out of range"));
            }
        }
        Ok(Permutation(images.into_iter().map(|x| x as u16).collect()))
    }

    /// Parses a product of cycles such as `(1 2 3)(4 5)`.
    ///
    /// Points are 1-based; cycles need not be disjoint and compose left to
    /// right; omitted points are fixed. `()` is the identity.
    pub fn parse(degree: usize, text: &str) -> Result<Self, CycleParseError> {
        let mut perm = Permutation::identity(degree);
        let bytes = text.as_bytes();
        let mut i = 0;
        let err = |column: usize, message: String| CycleParseError { column, message };
        while i < bytes.len() {
            match bytes[i] {
                b' ' | b'\t' => i += 1,
                b'(' => {
                    let open = i;
                    let close = text[i..]
                        .find(')')
                        .map(|off| i + off)
                        .ok_or_else(|| err(open + 1, "unclosed cycle".into()))?;
                    let mut points = Vec::new();
                    let mut pos = open + 1;
                    for token in text[open + 1..close].split([' ', ',']) {
                        if token.is_empty() {
                            pos += 1;
                            continue;
                        }
                        let col = pos + 1;
                        let point: usize = token
                            .parse()
                            .map_err(|_| err(col, format!("expected a point, found {token:?}")))?;
                        if point == 0 || point > degree {
                            return Err(err(col, format!("point {point} exceeds degree {degree}")));
                        }
                        if points.contains(&(point - 1)) {
                            return Err(err(col, format!("point {point} repeated in cycle")));
                        }
                        points.push(point - 1);
                        pos += token.len() + 1;
                    }
                    perm = perm.then(&Permutation::cycle(degree, &points));
                    i = close + 1;
                }
                _ => {
                    return Err(err(
                        i + 1,
                        format!("unexpected character {:?}", bytes[i] as char),
                    ));
                }
            }
        }
        Ok(perm)
    }

    fn cycle(degree: usize, points: &[usize]) -> Self {
        let mut images: Vec<u16> = (0..degree as u16).collect();
        for (i, &p) in points.iter().enumerate() {
            images[p] = points[(i + 1) % points.len()] as u16;
        }
        Permutation(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn image(&self, x: usize) -> usize {
        self.0[x] as usize
    }

    pub fn is_identity(&self) -> bool {
        self.0.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `self` followed by `other`.
    pub fn then(&self, other: &Permutation) -> Permutation {
        Permutation(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    /// Disjoint cycles, each starting at its smallest point, fixed points
    /// omitted.
    pub fn cycles(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.degree()];
        let mut out = Vec::new();
        for start in 0..self.degree() {
            if seen[start] || self.image(start) == start {
                continue;
            }
            let mut cyc = vec![start];
            seen[start] = true;
            let mut x = self.image(start);
            while x != start {
                seen[x] = true;
                cyc.push(x);
                x = self.image(x);
            }
            out.push(cyc);
        }
        out
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return write!(f, "()");
        }
        for c in cycles {
            write!(f, "(")?;
            for (i, p) in c.iter().enumerate() {
                if i > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{}", p + 1)?;
            }
            write!(f, ")")?;
        }
        Ok(())
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

/// Closes the group generated by `generators` breadth first. Elements are
/// numbered in discovery order with the identity first.
pub fn from_permutations(
    degree: usize,
    generators: &[Permutation],
    name: impl Into<String>,
    order_cap: usize,
) -> Result<GroupTable, GroupError> {
    if degree == 0 {
        return Err(GroupError::BadParameter("degree must be at least 1".into()));
    }
    for (i, g) in generators.iter().enumerate() {
        if g.degree() != degree {
            return Err(GroupError::InvalidPermutation {
                generator: i,
                reason: format!("has degree {}, expected {degree}", g.degree()),
            });
        }
    }
    let gens = generators;
    let mut elements = vec![Permutation::identity(degree)];
    let mut index: HashMap<Permutation, usize> = HashMap::new();
    index.insert(elements[0].clone(), 0);
    // right_gen[i * gens.len() + k] = index of elements[i] * gens[k]
    let mut right_gen: Vec<usize> = Vec::new();
    let mut parent: Vec<(usize, usize)> = vec![(0, 0)];
    let mut head = 0;
    while head < elements.len() {
        for (k, g) in gens.iter().enumerate() {
            let y = elements[head].then(g);
            let j = match index.get(&y) {
                Some(&j) => j,
                None => {
                    let j = elements.len();
                    if j >= order_cap {
                        return Err(GroupError::OrderCapExceeded { cap: order_cap });
                    }
                    index.insert(y.clone(), j);
                    elements.push(y);
                    parent.push((head, k));
                    j
                }
            };
            right_gen.push(j);
        }
        head += 1;
    }
    let n = elements.len();
    let m = gens.len();
    // column j of the table is column parent(j) followed by one generator
    let mut cols: Vec<Vec<usize>> = Vec::with_capacity(n);
    cols.push((0..n).collect());
    for &(par, k) in parent.iter().skip(1) {
        let col: Vec<usize> = cols[par].iter().map(|&x| right_gen[x * m + k]).collect();
        cols.push(col);
    }
    GroupTable::from_fn(name, n, order_cap, |a, b| cols[b][a])
}
