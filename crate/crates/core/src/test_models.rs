//! Small models shared by unit tests.

use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;

use crate::clifford::ComplexStructure;
use crate::lie::{LieModel, Rat};

pub fn r(n: i64) -> Rat {
    Rat::from_integer(n.into())
}

pub fn labels(names: &[&str]) -> Vec<String> {
    names.iter().map(|s| s.to_string()).collect()
}

/// `J v_from = sign · v_to` for each triple.
pub fn signed_j(m: usize, pairs: &[(usize, usize, i64)]) -> ComplexStructure {
    let mut j = vec![vec![r(0); m]; m];
    for &(from, to, s) in pairs {
        j[to][from] = r(s);
    }
    ComplexStructure::from_matrix(j)
}

pub fn torus4() -> LieModel {
    let j = signed_j(4, &[(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1)]);
    LieModel::from_differential("torus4", labels(&["a", "b", "c", "d"]), &vec![vec![]; 4], j).unwrap()
}

/// `dz = x∧y`, `Jy = x`, `Jz = w`.
pub fn kt() -> LieModel {
    let j = signed_j(4, &[(1, 0, 1), (0, 1, -1), (2, 3, 1), (3, 2, -1)]);
    let d = vec![vec![], vec![], vec![(0, 1, r(1))], vec![]];
    LieModel::from_differential("kt", labels(&["x", "y", "z", "w"]), &d, j).unwrap()
}

/// Same algebra, `Jx = z`, `Jy = w`: almost Kähler and not integrable.
pub fn kt_ak() -> LieModel {
    let j = signed_j(4, &[(0, 2, 1), (2, 0, -1), (1, 3, 1), (3, 1, -1)]);
    let d = vec![vec![], vec![], vec![(0, 1, r(1))], vec![]];
    LieModel::from_differential("kt_ak", labels(&["x", "y", "z", "w"]), &d, j).unwrap()
}

/// Complex Heisenberg algebra with `Je1 = e2`, `Je3 = e4`, `Je5 = sign·e6`.
pub fn iwasawa(sign: i64) -> LieModel {
    let j = signed_j(6, &[(0, 1, 1), (1, 0, -1), (2, 3, 1), (3, 2, -1), (4, 5, sign), (5, 4, -sign)]);
    let d = vec![
        vec![],
        vec![],
        vec![],
        vec![],
        vec![(0, 2, r(1)), (1, 3, r(-1))],
        vec![(0, 3, r(1)), (1, 2, r(1))],
    ];
    LieModel::from_differential("iwasawa", labels(&["e1", "e2", "e3", "e4", "e5", "e6"]), &d, j).unwrap()
}
