use std::fmt;

use crate::ff::{FieldChar, Residue};

/// Dense row-major matrix over `F_p`.
#[derive(Clone, PartialEq, Eq)]
pub struct FpMatrix {
    p: FieldChar,
    rows: usize,
    cols: usize,
    data: Vec<Residue>,
}

impl FpMatrix {
    pub fn zeros(p: FieldChar, rows: usize, cols: usize) -> Self {
        FpMatrix {
            p,
            rows,
            cols,
            data: vec![0; rows * cols],
        }
    }

    pub fn identity(p: FieldChar, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m.set(i, i, 1);
        }
        m
    }

    /// Builds from explicit rows, reducing entries mod `p`.
    pub fn from_rows(p: FieldChar, rows: &[Vec<u64>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(p, rows.len(), cols);
        for (i, r) in rows.iter().enumerate() {
            assert_eq!(r.len(), cols, "ragged rows");
            for (j, &v) in r.iter().enumerate() {
                m.set(i, j, p.reduce(v));
            }
        }
        m
    }

    pub fn from_fn(p: FieldChar, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Residue) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m.set(i, j, f(i, j));
            }
        }
        m
    }

    pub fn field(&self) -> FieldChar {
        self.p
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> Residue {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: Residue) {
        self.data[i * self.cols + j] = v;
    }

    pub fn row(&self, i: usize) -> &[Residue] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    /// The upper-left `rows x cols` block.
    pub fn submatrix(&self, rows: usize, cols: usize) -> FpMatrix {
        assert!(rows <= self.rows && cols <= self.cols);
        Self::from_fn(self.p, rows, cols, |i, j| self.get(i, j))
    }

    /// Stacks matrices with the same column count.
    pub fn vstack<'a>(p: FieldChar, cols: usize, parts: impl IntoIterator<Item = &'a FpMatrix>) -> FpMatrix {
        let mut data = Vec::new();
        let mut rows = 0;
        for m in parts {
            assert_eq!(m.cols, cols, "column mismatch in vstack");
            data.extend_from_slice(&m.data);
            rows += m.rows;
        }
        FpMatrix { p, rows, cols, data }
    }

    /// `self * v` for a column vector `v` (missing entries read as zero,
    /// extra entries must multiply zero columns and are ignored).
    pub fn apply(&self, v: &[Residue]) -> Vec<Residue> {
        let p = self.p;
        let n = v.len().min(self.cols);
        (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let acc: u64 = (0..n).map(|k| row[k] as u64 * v[k] as u64).sum();
                p.reduce(acc)
            })
            .collect()
    }

    /// Row rank by Gaussian elimination over `F_p`.
    pub fn rank(&self) -> usize {
        let p = self.p;
        let mut a = self.data.clone();
        let (rows, cols) = (self.rows, self.cols);
        let mut rank = 0;
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| a[r * cols + col] != 0) else {
                continue;
            };
            if pivot != rank {
                for j in 0..cols {
                    a.swap(pivot * cols + j, rank * cols + j);
                }
            }
            let inv = p.inv(a[rank * cols + col]);
            for j in col..cols {
                a[rank * cols + j] = p.mul(a[rank * cols + j], inv);
            }
            for r in rank + 1..rows {
                let f = a[r * cols + col];
                if f == 0 {
                    continue;
                }
                for j in col..cols {
                    let v = p.mul(f, a[rank * cols + j]);
                    a[r * cols + j] = p.sub(a[r * cols + j], v);
                }
            }
            rank += 1;
        }
        rank
    }
}

impl fmt::Debug for FpMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "FpMatrix {}x{} over {:?}", self.rows, self.cols, self.p)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Row rank over `F_p`.
pub fn rank_fp(m: &FpMatrix) -> usize {
    m.rank()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rank_examples() {
        let f2 = FieldChar::TWO;
        assert_eq!(rank_fp(&FpMatrix::identity(f2, 3)), 3);
        assert_eq!(rank_fp(&FpMatrix::zeros(f2, 3, 3)), 0);
        // rows e1+e4, e3, e2, e1
        let gap = FpMatrix::from_rows(
            f2,
            &[vec![1, 0, 0, 1], vec![0, 0, 1, 0], vec![0, 1, 0, 0], vec![1, 0, 0, 0]],
        );
        assert_eq!(rank_fp(&gap), 4);
    }

    #[test]
    fn rank_over_f3() {
        let f3 = FieldChar::new(3).unwrap();
        // second row is 2 * first
        let m = FpMatrix::from_rows(f3, &[vec![1, 2, 0], vec![2, 1, 0], vec![0, 0, 1]]);
        assert_eq!(m.rank(), 2);
    }

    #[test]
    fn apply_ignores_missing_entries() {
        let f2 = FieldChar::TWO;
        let m = FpMatrix::from_rows(f2, &[vec![1, 1, 0], vec![0, 1, 1]]);
        assert_eq!(m.apply(&[1, 1]), vec![0, 1]);
        assert_eq!(m.apply(&[1, 1, 1]), vec![0, 0]);
    }
}
