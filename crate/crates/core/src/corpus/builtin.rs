use super::format::{CorpusManifest, GroupSource, GroupSpec};
use crate::perm::Permutation;

const EXPRESSIONS: &[(&str, &str)] = &[
    // p = 2
    ("C2", "cyclic(2)"),
    ("C4", "cyclic(4)"),
    ("C8", "cyclic(8)"),
    ("C16", "cyclic(16)"),
    ("C32", "cyclic(32)"),
    ("E4", "elemab(2,2)"),
    ("E8", "elemab(2,3)"),
    ("E16", "elemab(2,4)"),
    ("E32", "elemab(2,5)"),
    ("E64", "elemab(2,6)"),
    ("D4", "dihedral(2)"),
    ("D8", "dihedral(4)"),
    ("D16", "dihedral(8)"),
    ("D32", "dihedral(16)"),
    ("Q8", "genquat(8)"),
    ("Q16", "genquat(16)"),
    ("Q32", "genquat(32)"),
    ("W2", "wreath_pp(2)"),
    ("C4xC2", "cyclic(4) x cyclic(2)"),
    ("Q8xC2", "genquat(8) x cyclic(2)"),
    ("D8xC2", "dihedral(4) x cyclic(2)"),
    ("D8xC4", "dihedral(4) x cyclic(4)"),
    ("Q8xC4", "genquat(8) x cyclic(4)"),
    ("Q8xE4", "genquat(8) x elemab(2,2)"),
    ("D8xD8", "dihedral(4) x dihedral(4)"),
    ("Q8xQ8", "genquat(8) x genquat(8)"),
    ("D16xC4", "dihedral(8) x cyclic(4)"),
    ("Q16xC8", "genquat(16) x cyclic(8)"),
    ("C16xC8", "cyclic(16) x cyclic(8)"),
    ("D32xC4", "dihedral(16) x cyclic(4)"),
    ("Q8xC16", "genquat(8) x cyclic(16)"),
    ("D8xE16", "dihedral(4) x elemab(2,4)"),
    ("Q8xD8xC2", "genquat(8) x dihedral(4) x cyclic(2)"),
    // p = 3
    ("C3", "cyclic(3)"),
    ("C9", "cyclic(9)"),
    ("C27", "cyclic(27)"),
    ("E9", "elemab(3,2)"),
    ("E27", "elemab(3,3)"),
    ("He3", "heisenberg(3)"),
    ("M27", "modular_p3(3)"),
    ("W3", "wreath_pp(3)"),
    ("He3xC3", "heisenberg(3) x cyclic(3)"),
    ("M27xC3", "modular_p3(3) x cyclic(3)"),
    ("He3xC9", "heisenberg(3) x cyclic(9)"),
    ("M27xC9", "modular_p3(3) x cyclic(9)"),
    ("C27xC9", "cyclic(27) x cyclic(9)"),
    ("W3xC3", "wreath_pp(3) x cyclic(3)"),
    ("E81", "elemab(3,4)"),
    ("E243", "elemab(3,5)"),
    ("He3xE9", "heisenberg(3) x elemab(3,2)"),
    // p = 5
    ("C5", "cyclic(5)"),
    ("C25", "cyclic(25)"),
    ("E25", "elemab(5,2)"),
    ("He5", "heisenberg(5)"),
    ("M125", "modular_p3(5)"),
    // controls
    ("Trivial", "cyclic(1)"),
    ("C6", "cyclic(6)"),
    ("S3", "dihedral(3)"),
];

/// Q8 in its regular representation.
const Q8_REGULAR: [&str; 2] = ["(1 2 3 4)(5 8 7 6)", "(1 5 3 7)(2 6 4 8)"];

/// The Klein four group as a literal table.
const V4_TABLE: [[usize; 4]; 4] = [[0, 1, 2, 3], [1, 0, 3, 2], [2, 3, 0, 1], [3, 2, 1, 0]];

/// The shipped verification corpus: constructive p-group families for
/// p = 2, 3, 5 and a few non-p-group controls.
pub fn builtin_corpus() -> CorpusManifest {
    let mut specs: Vec<GroupSpec> = EXPRESSIONS
        .iter()
        .map(|&(name, expr)| GroupSpec::expression(name, expr))
        .collect();
    specs.push(GroupSpec {
        name: "Q8perm".into(),
        source: GroupSource::Permutations {
            degree: 8,
            generators: Q8_REGULAR
                .iter()
                .map(|c| Permutation::parse(8, c).expect("valid cycles"))
                .collect(),
        },
        line: 0,
        row_lines: Vec::new(),
    });
    specs.push(GroupSpec {
        name: "V4table".into(),
        source: GroupSource::CayleyLiteral {
            order: 4,
            rows: V4_TABLE.iter().map(|r| r.to_vec()).collect(),
        },
        line: 0,
        row_lines: Vec::new(),
    });
    CorpusManifest {
        comments: vec![
            " builtin corpus: cyclic, elementary abelian, dihedral, generalized quaternion,".into(),
            " Heisenberg, modular and wreath families with direct products; C6 and S3 are".into(),
            " non-p-group controls".into(),
        ],
        specs,
    }
}
