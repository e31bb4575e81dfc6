use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// A validated Coxeter matrix. Off-diagonal `0` stands for ∞.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct CoxeterMatrix {
    entries: Vec<Vec<u32>>,
}

#[derive(Serialize, Deserialize)]
struct MatrixFile {
    rank: usize,
    matrix: Vec<Vec<i64>>,
}

impl CoxeterMatrix {
    pub fn rank(&self) -> usize {
        self.entries.len()
    }

    /// `m_ij`, `None` for ∞.
    pub fn m(&self, i: usize, j: usize) -> Option<u32> {
        match self.entries[i][j] {
            0 => None,
            m => Some(m),
        }
    }

    /// Raw entry with 0 for ∞.
    pub fn raw(&self, i: usize, j: usize) -> u32 {
        self.entries[i][j]
    }

    pub fn rows(&self) -> &[Vec<u32>] {
        &self.entries
    }

    pub fn finite_orders(&self) -> impl Iterator<Item = u32> + '_ {
        self.entries.iter().flatten().copied().filter(|&m| m >= 2)
    }

    pub fn is_right_angled(&self) -> bool {
        self.entries.iter().flatten().all(|&m| m <= 2)
    }

    pub fn has_infinity(&self) -> bool {
        self.entries.iter().flatten().any(|&m| m == 0)
    }

    /// Principal submatrix on the given generators, in the given order.
    pub fn restrict(&self, gens: &[usize]) -> CoxeterMatrix {
        CoxeterMatrix { entries: gens.iter().map(|&i| gens.iter().map(|&j| self.entries[i][j]).collect()).collect() }
    }

    pub fn from_json(text: &str) -> Result<CoxeterMatrix> {
        let file: MatrixFile = serde_json::from_str(text).map_err(|e| Error::Invalid(e.to_string()))?;
        if file.rank != file.matrix.len() {
            return Err(Error::RankMismatch { declared: file.rank, actual: file.matrix.len() });
        }
        validate_matrix(&file.matrix)
    }

    pub fn to_json(&self) -> String {
        let file = MatrixFile {
            rank: self.rank(),
            matrix: self.entries.iter().map(|r| r.iter().map(|&m| m as i64).collect()).collect(),
        };
        serde_json::to_string(&file).unwrap()
    }
}

pub fn validate_matrix(raw: &[Vec<i64>]) -> Result<CoxeterMatrix> {
    let n = raw.len();
    if n == 0 || raw.iter().any(|r| r.len() != n) {
        return Err(Error::NotSquare);
    }
    for i in 0..n {
        if raw[i][i] != 1 {
            return Err(Error::BadDiagonal(i));
        }
    }
    for i in 0..n {
        for j in 0..n {
            if raw[i][j] != raw[j][i] {
                return Err(Error::NotSymmetric(i, j));
            }
        }
    }
    for i in 0..n {
        for j in 0..n {
            let m = raw[i][j];
            if i != j && (m == 1 || m < 0 || m > u32::MAX as i64) {
                return Err(Error::BadOffDiagonal(i, j, m));
            }
        }
    }
    Ok(CoxeterMatrix { entries: raw.iter().map(|r| r.iter().map(|&m| m as u32).collect()).collect() })
}

/// Standard matrices used throughout the tests and examples.
pub mod catalog {
    use super::*;

    fn from_edges(n: usize, edges: &[(usize, usize, u32)]) -> CoxeterMatrix {
        let mut m = vec![vec![2i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for &(i, j, v) in edges {
            m[i][j] = v as i64;
            m[j][i] = v as i64;
        }
        validate_matrix(&m).unwrap()
    }

    fn path(n: usize, labels: &[u32]) -> CoxeterMatrix {
        let edges: Vec<_> = (0..n.saturating_sub(1)).map(|i| (i, i + 1, labels.get(i).copied().unwrap_or(3))).collect();
        from_edges(n, &edges)
    }

    pub fn rank_one() -> CoxeterMatrix {
        from_edges(1, &[])
    }

    pub fn dihedral(m: u32) -> CoxeterMatrix {
        from_edges(2, &[(0, 1, m)])
    }

    pub fn a(n: usize) -> CoxeterMatrix {
        path(n, &[])
    }

    pub fn b(n: usize) -> CoxeterMatrix {
        let mut labels = vec![3; n - 1];
        labels[n - 2] = 4;
        path(n, &labels)
    }

    pub fn d(n: usize) -> CoxeterMatrix {
        let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1, 3)).collect();
        edges.push((n - 3, n - 1, 3));
        from_edges(n, &edges)
    }

    pub fn e(n: usize) -> CoxeterMatrix {
        let mut edges: Vec<_> = (0..n - 2).map(|i| (i, i + 1, 3)).collect();
        edges.push((2, n - 1, 3));
        from_edges(n, &edges)
    }

    pub fn f4() -> CoxeterMatrix {
        path(4, &[3, 4, 3])
    }

    pub fn h3() -> CoxeterMatrix {
        path(3, &[5, 3])
    }

    pub fn h4() -> CoxeterMatrix {
        path(4, &[5, 3, 3])
    }

    /// Ã_n: a cycle of n+1 nodes (n = 1 gives the ∞ edge).
    pub fn affine_a(n: usize) -> CoxeterMatrix {
        if n == 1 {
            return from_edges(2, &[(0, 1, 0)]);
        }
        let mut edges: Vec<_> = (0..n).map(|i| (i, i + 1, 3)).collect();
        edges.push((n, 0, 3));
        from_edges(n + 1, &edges)
    }

    pub fn triangle(p: u32, q: u32, r: u32) -> CoxeterMatrix {
        from_edges(3, &[(0, 1, p), (1, 2, q), (0, 2, r)])
    }

    pub fn from_rows(rows: &[&[i64]]) -> CoxeterMatrix {
        validate_matrix(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>()).unwrap()
    }

    pub fn with_edges(n: usize, edges: &[(usize, usize, u32)]) -> CoxeterMatrix {
        from_edges(n, edges)
    }
}
