use std::collections::HashMap;
use std::fmt;

use super::rat::Rat;
use super::{MultiPoly, PolyError};

/// Largest matrix `det` accepts.
pub const MAX_DET_SIZE: usize = 8;

/// Square matrix with polynomial entries sharing one ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct PolyMatrix {
    nvars: usize,
    rows: Vec<Vec<MultiPoly>>,
}

impl PolyMatrix {
    pub fn new(nvars: usize, rows: Vec<Vec<MultiPoly>>) -> Result<Self, PolyError> {
        let n = rows.len();
        for row in &rows {
            if row.len() != n {
                return Err(PolyError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            if let Some(bad) = row.iter().find(|p| p.nvars() != nvars) {
                return Err(PolyError::NvarsMismatch {
                    left: nvars,
                    right: bad.nvars(),
                });
            }
        }
        Ok(PolyMatrix { nvars, rows })
    }

    pub fn from_fn(size: usize, nvars: usize, mut f: impl FnMut(usize, usize) -> MultiPoly) -> Self {
        let rows = (0..size)
            .map(|i| (0..size).map(|j| f(i, j)).collect())
            .collect();
        PolyMatrix::new(nvars, rows).expect("entries built in one ring")
    }

    /// Diagonal matrix of the given entries.
    pub fn diagonal(nvars: usize, entries: &[MultiPoly]) -> Self {
        Self::from_fn(entries.len(), nvars, |i, j| {
            if i == j {
                entries[i].clone()
            } else {
                MultiPoly::zero(nvars)
            }
        })
    }

    pub fn size(&self) -> usize {
        self.rows.len()
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn get(&self, i: usize, j: usize) -> &MultiPoly {
        &self.rows[i][j]
    }

    pub fn rows(&self) -> &[Vec<MultiPoly>] {
        &self.rows
    }

    pub fn scale(&self, c: &Rat) -> PolyMatrix {
        PolyMatrix {
            nvars: self.nvars,
            rows: self
                .rows
                .iter()
                .map(|r| r.iter().map(|p| p.scale(c)).collect())
                .collect(),
        }
    }

    pub fn swap_rows(&mut self, a: usize, b: usize) {
        self.rows.swap(a, b);
    }

    pub fn transpose(&self) -> PolyMatrix {
        let n = self.size();
        Self::from_fn(n, self.nvars, |i, j| self.rows[j][i].clone())
    }

    /// Every entry is a linear form (or zero).
    pub fn is_linear(&self) -> bool {
        self.rows
            .iter()
            .flatten()
            .all(|p| p.is_zero() || p.homogeneous_degree() == Some(1))
    }

    pub fn evaluate(&self, point: &[Rat]) -> Result<Vec<Vec<Rat>>, PolyError> {
        self.rows
            .iter()
            .map(|r| r.iter().map(|p| p.evaluate(point)).collect())
            .collect()
    }

    /// Laplace expansion along successive rows, memoizing each minor by the
    /// set of columns it keeps. The empty matrix has determinant 1.
    pub fn det(&self) -> Result<MultiPoly, PolyError> {
        let n = self.size();
        if n > MAX_DET_SIZE {
            return Err(PolyError::MatrixTooLarge {
                size: n,
                max: MAX_DET_SIZE,
            });
        }
        let mut memo: HashMap<u32, MultiPoly> = HashMap::new();
        let full = (1u32 << n) - 1;
        Ok(self.minor(full, &mut memo))
    }

    fn minor(&self, cols: u32, memo: &mut HashMap<u32, MultiPoly>) -> MultiPoly {
        if cols == 0 {
            return MultiPoly::one(self.nvars);
        }
        if let Some(m) = memo.get(&cols) {
            return m.clone();
        }
        let n = self.size();
        let row = n - cols.count_ones() as usize;
        let mut acc = MultiPoly::zero(self.nvars);
        let mut position = 0;
        for c in 0..n {
            if cols & (1 << c) == 0 {
                continue;
            }
            let entry = &self.rows[row][c];
            if !entry.is_zero() {
                let sub = self.minor(cols & !(1 << c), memo);
                let term = entry * &sub;
                acc = if position % 2 == 0 { &acc + &term } else { &acc - &term };
            }
            position += 1;
        }
        memo.insert(cols, acc.clone());
        acc
    }
}

impl fmt::Display for PolyMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in &self.rows {
            let cells: Vec<String> = row.iter().map(|p| p.to_string()).collect();
            writeln!(f, "[ {} ]", cells.join(" | "))?;
        }
        Ok(())
    }
}
