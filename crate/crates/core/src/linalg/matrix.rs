use std::fmt;

use crate::cyclo::CycloNum;
use crate::error::{Error, Result};

/// Dense row-major matrix over a cyclotomic field.
#[derive(Clone, PartialEq, Eq)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    order: u32,
    entries: Vec<CycloNum>,
}

impl ExactMatrix {
    pub fn zeros(rows: usize, cols: usize, order: u32) -> Self {
        ExactMatrix {
            rows,
            cols,
            order,
            entries: vec![CycloNum::zero(order); rows * cols],
        }
    }

    pub fn identity(n: usize, order: u32) -> Self {
        let mut m = Self::zeros(n, n, order);
        for i in 0..n {
            m.set(i, i, CycloNum::one(order));
        }
        m
    }

    pub fn from_fn(
        rows: usize,
        cols: usize,
        order: u32,
        mut f: impl FnMut(usize, usize) -> CycloNum,
    ) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                let x = f(i, j);
                assert_eq!(x.order(), order, "entry from a different field");
                entries.push(x);
            }
        }
        ExactMatrix {
            rows,
            cols,
            order,
            entries,
        }
    }

    pub fn from_ints(rows: &[Vec<i64>], order: u32) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        Self::from_fn(r, c, order, |i, j| CycloNum::from_int(order, rows[i][j]))
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(cols: &[Vec<CycloNum>], order: u32) -> Self {
        let c = cols.len();
        let r = cols.first().map_or(0, Vec::len);
        Self::from_fn(r, c, order, |i, j| cols[j][i].clone())
    }

    pub fn diagonal(d: &[CycloNum], order: u32) -> Self {
        let n = d.len();
        Self::from_fn(n, n, order, |i, j| {
            if i == j {
                d[i].clone()
            } else {
                CycloNum::zero(order)
            }
        })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn order(&self) -> u32 {
        self.order
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &CycloNum {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, x: CycloNum) {
        self.entries[i * self.cols + j] = x;
    }

    pub fn column(&self, j: usize) -> Vec<CycloNum> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn row(&self, i: usize) -> Vec<CycloNum> {
        self.entries[i * self.cols..(i + 1) * self.cols].to_vec()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(CycloNum::is_zero)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, self.order, |i, j| self.get(j, i).clone())
    }

    /// Lifts every entry into the field of order `m`.
    pub fn lift(&self, m: u32) -> Result<Self> {
        let entries = self
            .entries
            .iter()
            .map(|x| x.lift(m))
            .collect::<Result<Vec<_>>>()?;
        Ok(ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            order: m,
            entries,
        })
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.cols != rhs.rows || self.order != rhs.order {
            return Err(Error::Parameter(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols, self.order);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = rhs.get(k, j);
                    if !b.is_zero() {
                        let idx = i * out.cols + j;
                        out.entries[idx] += &(a * b);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[CycloNum]) -> Vec<CycloNum> {
        assert_eq!(v.len(), self.cols);
        (0..self.rows)
            .map(|i| {
                let mut acc = CycloNum::zero(self.order);
                for (j, x) in v.iter().enumerate() {
                    let a = self.get(i, j);
                    if !a.is_zero() && !x.is_zero() {
                        acc += &(a * x);
                    }
                }
                acc
            })
            .collect()
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, self.order, |i, j| {
            self.get(i, j) + rhs.get(i, j)
        })
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        Self::from_fn(self.rows, self.cols, self.order, |i, j| {
            self.get(i, j) - rhs.get(i, j)
        })
    }

    pub fn scale(&self, c: &CycloNum) -> Self {
        Self::from_fn(self.rows, self.cols, self.order, |i, j| self.get(i, j) * c)
    }

    /// `M - λI`.
    pub fn shift(&self, lambda: &CycloNum) -> Self {
        let mut m = self.clone();
        for i in 0..self.rows.min(self.cols) {
            let v = m.get(i, i) - lambda;
            m.set(i, i, v);
        }
        m
    }

    pub fn pow(&self, e: u32) -> Self {
        let mut acc = Self::identity(self.rows, self.order);
        for _ in 0..e {
            acc = acc.mul(self).expect("square matrix");
        }
        acc
    }

    /// Submatrix on the given row and column index lists.
    pub fn select(&self, rows: &[usize], cols: &[usize]) -> Self {
        Self::from_fn(rows.len(), cols.len(), self.order, |i, j| {
            self.get(rows[i], cols[j]).clone()
        })
    }

    /// Reduced row echelon form and pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(piv) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            if piv != r {
                for j in 0..m.cols {
                    m.entries.swap(piv * m.cols + j, r * m.cols + j);
                }
            }
            let inv = m.get(r, c).inv().expect("nonzero pivot");
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let f = m.get(i, c).clone();
                for j in c..m.cols {
                    if m.get(r, j).is_zero() {
                        continue;
                    }
                    let v = m.get(i, j) - &(&f * m.get(r, j));
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Structural("inverse of a non-square matrix".into()));
        }
        let n = self.rows;
        let aug = Self::from_fn(n, 2 * n, self.order, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                CycloNum::one(self.order)
            } else {
                CycloNum::zero(self.order)
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return Err(Error::Structural("singular matrix".into()));
        }
        Ok(Self::from_fn(n, n, self.order, |i, j| r.get(i, j + n).clone()))
    }

    /// Solves `self · X = rhs` for square invertible `self`.
    pub fn solve(&self, rhs: &Self) -> Result<Self> {
        self.inverse()?.mul(rhs)
    }

    /// Solves `self · x = b`, returning any solution if the system is consistent.
    pub fn solve_vec(&self, b: &[CycloNum]) -> Option<Vec<CycloNum>> {
        let n = self.cols;
        let aug = Self::from_fn(self.rows, n + 1, self.order, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else {
                b[i].clone()
            }
        });
        let (r, pivots) = aug.rref();
        if pivots.last() == Some(&n) {
            return None;
        }
        let mut x = vec![CycloNum::zero(self.order); n];
        for (row, &c) in pivots.iter().enumerate() {
            x[c] = r.get(row, n).clone();
        }
        Some(x)
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ExactMatrix {}x{} (order {})", self.rows, self.cols, self.order)?;
        for i in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|j| self.get(i, j).to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        Ok(())
    }
}
