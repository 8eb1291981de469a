use crate::error::Error;
use crate::Result;
use num::{BigInt, One, Zero};
use std::path::Path;

/// Dense integer matrix, row-major.
#[derive(Clone, PartialEq, Debug)]
pub struct IntMatrix {
    pub rows: usize,
    pub cols: usize,
    pub entries: Vec<BigInt>,
}

impl IntMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<BigInt>) -> Result<Self> {
        if rows * cols != entries.len() {
            return Err(Error::MatrixShape {
                rows,
                cols,
                len: entries.len(),
            });
        }
        Ok(IntMatrix { rows, cols, entries })
    }

    pub fn from_i64(rows: usize, cols: usize, entries: &[i64]) -> Result<Self> {
        IntMatrix::new(rows, cols, entries.iter().map(|&e| BigInt::from(e)).collect())
    }

    pub fn identity(n: usize) -> Self {
        let mut entries = vec![BigInt::zero(); n * n];
        for i in 0..n {
            entries[i * n + i] = BigInt::one();
        }
        IntMatrix {
            rows: n,
            cols: n,
            entries,
        }
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.entries[i * self.cols + j]
    }

    /// Copy the strict upper triangle onto the lower (forces symmetry).
    pub fn symmetrize_upper_to_lower(&self) -> Self {
        let mut m = self.clone();
        for i in 0..m.rows {
            for j in 0..i.min(m.cols) {
                m.entries[i * m.cols + j] = self.get(j, i).clone();
            }
        }
        m
    }

    /// Copy the strict lower triangle onto the upper.
    pub fn symmetrize_lower_to_upper(&self) -> Self {
        let mut m = self.clone();
        for i in 0..m.rows {
            for j in (i + 1)..m.cols {
                m.entries[i * m.cols + j] = self.get(j, i).clone();
            }
        }
        m
    }

    pub fn is_symmetric(&self) -> bool {
        self.rows == self.cols
            && (0..self.rows).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }

    /// Exact determinant by fraction-free Bareiss elimination. All
    /// intermediate divisions are exact integer divisions; no floating point.
    pub fn det(&self) -> Result<BigInt> {
        if self.rows != self.cols {
            return Err(Error::NonSquareMatrix {
                rows: self.rows,
                cols: self.cols,
            });
        }
        let n = self.rows;
        if n == 0 {
            return Ok(BigInt::one());
        }
        let mut m = self.entries.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if m[k * n + k].is_zero() {
                // Pivot: swap in a row with a nonzero entry in column k.
                let Some(swap) = (k + 1..n).find(|&i| !m[i * n + k].is_zero()) else {
                    return Ok(BigInt::zero());
                };
                for j in 0..n {
                    m.swap(k * n + j, swap * n + j);
                }
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let t = &m[i * n + j] * &m[k * n + k] - &m[i * n + k] * &m[k * n + j];
                    m[i * n + j] = t / &prev;
                }
                m[i * n + k] = BigInt::zero();
            }
            prev = m[k * n + k].clone();
        }
        let d = m[(n - 1) * n + (n - 1)].clone();
        Ok(if sign < 0 { -d } else { d })
    }

    /// Load a matrix from CSV text: one row per line, comma-separated
    /// integers, all rows the same length. Blank lines are skipped.
    pub fn from_csv_str(text: &str) -> Result<Self> {
        let mut entries = Vec::new();
        let mut cols = None;
        let mut rows = 0;
        for line in text.lines() {
            let line = line.trim();
            if line.is_empty() {
                continue;
            }
            let row: std::result::Result<Vec<BigInt>, _> = line
                .split(',')
                .map(|t| t.trim().parse::<BigInt>())
                .collect();
            let row = row.map_err(|e| Error::Fixture(format!("bad integer in CSV: {e}")))?;
            match cols {
                None => cols = Some(row.len()),
                Some(c) if c != row.len() => {
                    return Err(Error::Fixture(format!(
                        "ragged CSV: row {} has {} entries, expected {}",
                        rows + 1,
                        row.len(),
                        c
                    )))
                }
                _ => {}
            }
            rows += 1;
            entries.extend(row);
        }
        IntMatrix::new(rows, cols.unwrap_or(0), entries)
    }

    pub fn from_csv_file(path: &Path) -> Result<Self> {
        IntMatrix::from_csv_str(&std::fs::read_to_string(path)?)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn det_cofactor(m: &IntMatrix) -> BigInt {
        let n = m.rows;
        if n == 0 {
            return BigInt::one();
        }
        if n == 1 {
            return m.get(0, 0).clone();
        }
        let mut acc = BigInt::zero();
        for j in 0..n {
            if m.get(0, j).is_zero() {
                continue;
            }
            let mut sub = Vec::with_capacity((n - 1) * (n - 1));
            for i in 1..n {
                for jj in 0..n {
                    if jj != j {
                        sub.push(m.get(i, jj).clone());
                    }
                }
            }
            let minor = det_cofactor(&IntMatrix::new(n - 1, n - 1, sub).unwrap());
            let term = m.get(0, j) * minor;
            if j % 2 == 0 {
                acc += term;
            } else {
                acc -= term;
            }
        }
        acc
    }

    #[test]
    fn identity_det_one() {
        assert_eq!(IntMatrix::identity(5).det().unwrap(), BigInt::one());
    }

    #[test]
    fn non_square_rejected() {
        let m = IntMatrix::from_i64(2, 3, &[1, 2, 3, 4, 5, 6]).unwrap();
        assert!(matches!(m.det(), Err(Error::NonSquareMatrix { .. })));
    }

    #[test]
    fn shape_mismatch_rejected() {
        assert!(matches!(
            IntMatrix::from_i64(2, 2, &[1, 2, 3]),
            Err(Error::MatrixShape { .. })
        ));
    }

    #[test]
    fn zero_pivot_needs_swap() {
        let m = IntMatrix::from_i64(2, 2, &[0, 1, 1, 0]).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::from(-1));
    }

    #[test]
    fn singular_det_zero() {
        let m = IntMatrix::from_i64(3, 3, &[1, 2, 3, 2, 4, 6, 1, 0, 1]).unwrap();
        assert_eq!(m.det().unwrap(), BigInt::zero());
    }

    #[test]
    fn bareiss_matches_cofactor_on_random_4x4() {
        let mut state = 0x9e3779b97f4a7c15u64;
        for _ in 0..200 {
            let mut ents = [0i64; 16];
            for e in ents.iter_mut() {
                state = state.wrapping_mul(6364136223846793005).wrapping_add(1442695040888963407);
                *e = ((state >> 40) % 19) as i64 - 9;
            }
            let m = IntMatrix::from_i64(4, 4, &ents).unwrap();
            assert_eq!(m.det().unwrap(), det_cofactor(&m));
        }
    }

    #[test]
    fn csv_roundtrip() {
        let m = IntMatrix::from_csv_str("12,0\n0,6\n").unwrap();
        assert_eq!(m.rows, 2);
        assert_eq!(m.det().unwrap(), BigInt::from(72));
        assert!(IntMatrix::from_csv_str("1,2\n3\n").is_err());
    }

    #[test]
    fn symmetrizations() {
        let m = IntMatrix::from_i64(2, 2, &[1, 5, 7, 2]).unwrap();
        let up = m.symmetrize_upper_to_lower();
        assert_eq!(up.get(1, 0), &BigInt::from(5));
        let lo = m.symmetrize_lower_to_upper();
        assert_eq!(lo.get(0, 1), &BigInt::from(7));
        assert!(up.is_symmetric() && lo.is_symmetric() && !m.is_symmetric());
    }
}
