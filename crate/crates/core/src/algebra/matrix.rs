use std::collections::BTreeMap;
use std::fmt;

use super::field::Field;
use super::frac::{PolyZ, RatFuncZ};
use super::poly::Poly;
use crate::error::AlgebraError;

/// A row-sparse matrix over an exact field. Stored entries are nonzero.
#[derive(Clone, PartialEq, Debug)]
pub struct SparseMatrix<F> {
    rows: usize,
    cols: usize,
    data: Vec<BTreeMap<usize, F>>,
}

impl<F: Field> SparseMatrix<F> {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self {
            rows,
            cols,
            data: vec![BTreeMap::new(); rows],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.set(i, i, F::one());
        }
        m
    }

    pub fn from_dense(rows: Vec<Vec<F>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        let mut m = Self::zeros(r, c);
        for (i, row) in rows.into_iter().enumerate() {
            assert_eq!(row.len(), c, "ragged dense matrix");
            for (j, v) in row.into_iter().enumerate() {
                m.set(i, j, v);
            }
        }
        m
    }

    pub fn from_triplets(rows: usize, cols: usize, t: impl IntoIterator<Item = (usize, usize, F)>) -> Self {
        let mut m = Self::zeros(rows, cols);
        for (i, j, v) in t {
            m.add_to(i, j, v);
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> F {
        self.data[i].get(&j).cloned().unwrap_or_else(F::zero)
    }

    pub fn get_ref(&self, i: usize, j: usize) -> Option<&F> {
        self.data[i].get(&j)
    }

    pub fn set(&mut self, i: usize, j: usize, v: F) {
        assert!(i < self.rows && j < self.cols, "index ({i},{j}) out of bounds");
        if v.is_zero() {
            self.data[i].remove(&j);
        } else {
            self.data[i].insert(j, v);
        }
    }

    pub fn add_to(&mut self, i: usize, j: usize, v: F) {
        if v.is_zero() {
            return;
        }
        let cur = self.data[i].remove(&j);
        let next = match cur {
            Some(c) => c + &v,
            None => v,
        };
        self.set(i, j, next);
    }

    pub fn row(&self, i: usize) -> &BTreeMap<usize, F> {
        &self.data[i]
    }

    pub fn nnz(&self) -> usize {
        self.data.iter().map(BTreeMap::len).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(BTreeMap::is_empty)
    }

    /// Iterate over stored `(row, col, value)` triplets in row-major order.
    pub fn iter(&self) -> impl Iterator<Item = (usize, usize, &F)> {
        self.data
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().map(move |(j, v)| (i, *j, v)))
    }

    pub fn transpose(&self) -> Self {
        let mut t = Self::zeros(self.cols, self.rows);
        for (i, j, v) in self.iter() {
            t.data[j].insert(i, v.clone());
        }
        t
    }

    pub fn map<G: Field>(&self, f: impl Fn(&F) -> G) -> SparseMatrix<G> {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.iter() {
            out.set(i, j, f(v));
        }
        out
    }

    pub fn try_map<G: Field, E>(&self, f: impl Fn(&F) -> Result<G, E>) -> Result<SparseMatrix<G>, E> {
        let mut out = SparseMatrix::zeros(self.rows, self.cols);
        for (i, j, v) in self.iter() {
            out.set(i, j, f(v)?);
        }
        Ok(out)
    }

    pub fn scale(&self, c: &F) -> Self {
        if c.is_zero() {
            return Self::zeros(self.rows, self.cols);
        }
        self.map(|v| v.clone() * c)
    }

    pub fn add(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_same_shape(rhs)?;
        let mut out = self.clone();
        for (i, j, v) in rhs.iter() {
            out.add_to(i, j, v.clone());
        }
        Ok(out)
    }

    pub fn sub(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        self.check_same_shape(rhs)?;
        let mut out = self.clone();
        for (i, j, v) in rhs.iter() {
            out.add_to(i, j, -v.clone());
        }
        Ok(out)
    }

    fn check_same_shape(&self, rhs: &Self) -> Result<(), AlgebraError> {
        if self.rows != rhs.rows || self.cols != rhs.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} vs {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        Ok(())
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self, AlgebraError> {
        if self.cols != rhs.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, rhs.rows, rhs.cols
            )));
        }
        let mut out = Self::zeros(self.rows, rhs.cols);
        for (i, row) in self.data.iter().enumerate() {
            let mut acc: BTreeMap<usize, F> = BTreeMap::new();
            for (k, a) in row {
                for (j, b) in &rhs.data[*k] {
                    let t = a.clone() * b;
                    match acc.remove(j) {
                        Some(s) => {
                            acc.insert(*j, s + &t);
                        }
                        None => {
                            acc.insert(*j, t);
                        }
                    }
                }
            }
            acc.retain(|_, v| !v.is_zero());
            out.data[i] = acc;
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[F]) -> Result<Vec<F>, AlgebraError> {
        if v.len() != self.cols {
            return Err(AlgebraError::DimensionMismatch(format!(
                "{}x{} times vector of length {}",
                self.rows,
                self.cols,
                v.len()
            )));
        }
        Ok(self
            .data
            .iter()
            .map(|row| {
                row.iter()
                    .filter(|(j, _)| !v[**j].is_zero())
                    .fold(F::zero(), |acc, (j, a)| acc + &(a.clone() * &v[*j]))
            })
            .collect())
    }

    /// Kronecker product `self ⊗ rhs`, with `(i1, i2) ↦ i1 * rhs.rows + i2`.
    pub fn kron(&self, rhs: &Self) -> Self {
        let mut out = Self::zeros(self.rows * rhs.rows, self.cols * rhs.cols);
        for (i1, j1, a) in self.iter() {
            for (i2, j2, b) in rhs.iter() {
                out.data[i1 * rhs.rows + i2].insert(j1 * rhs.cols + j2, a.clone() * b);
            }
        }
        out
    }

    /// Restrict to the given row and column index lists.
    pub fn submatrix(&self, rows: &[usize], cols: &[usize]) -> Self {
        let pos: BTreeMap<usize, usize> = cols.iter().enumerate().map(|(k, c)| (*c, k)).collect();
        let mut out = Self::zeros(rows.len(), cols.len());
        for (ri, r) in rows.iter().enumerate() {
            for (c, v) in &self.data[*r] {
                if let Some(k) = pos.get(c) {
                    out.data[ri].insert(*k, v.clone());
                }
            }
        }
        out
    }

    /// Stack matrices with equal column counts on top of each other.
    pub fn vstack(blocks: &[Self]) -> Result<Self, AlgebraError> {
        let cols = blocks.first().map_or(0, |b| b.cols);
        let mut data = Vec::new();
        for b in blocks {
            if b.cols != cols {
                return Err(AlgebraError::DimensionMismatch("vstack column counts differ".into()));
            }
            data.extend(b.data.iter().cloned());
        }
        Ok(Self {
            rows: data.len(),
            cols,
            data,
        })
    }

    pub fn to_dense(&self) -> Vec<Vec<F>> {
        (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).collect())
            .collect()
    }

    /// Row echelon form and pivot columns.
    pub fn echelon(&self) -> Echelon<F> {
        Echelon::new(self)
    }

    pub fn rank(&self) -> usize {
        self.echelon().pivots.len()
    }

    /// A basis of `{ v : self · v = 0 }`.
    pub fn nullspace(&self) -> Vec<Vec<F>> {
        self.echelon().nullspace()
    }

    /// Some `x` with `self · x = b`, or `None` if inconsistent.
    pub fn solve(&self, b: &[F]) -> Result<Option<Vec<F>>, AlgebraError> {
        if b.len() != self.rows {
            return Err(AlgebraError::DimensionMismatch(format!(
                "rhs length {} for {} rows",
                b.len(),
                self.rows
            )));
        }
        let mut aug = Self::zeros(self.rows, self.cols + 1);
        for (i, j, v) in self.iter() {
            aug.data[i].insert(j, v.clone());
        }
        for (i, v) in b.iter().enumerate() {
            aug.set(i, self.cols, v.clone());
        }
        let ech = aug.echelon();
        if ech.pivots.last() == Some(&self.cols) {
            return Ok(None);
        }
        let mut x = vec![F::zero(); self.cols];
        ech.back_substitute(&mut x, Some(self.cols));
        Ok(Some(x))
    }
}

/// Row echelon form with unit pivots.
#[derive(Clone, Debug)]
pub struct Echelon<F> {
    cols: usize,
    rows: Vec<BTreeMap<usize, F>>,
    pivots: Vec<usize>,
}

impl<F: Field> Echelon<F> {
    fn new(m: &SparseMatrix<F>) -> Self {
        let mut pending: Vec<BTreeMap<usize, F>> =
            m.data.iter().filter(|r| !r.is_empty()).cloned().collect();
        let mut rows = Vec::new();
        let mut pivots = Vec::new();
        for col in 0..m.cols {
            if pending.is_empty() {
                break;
            }
            // sparsest row with a nonzero in this column
            let Some(pi) = (0..pending.len())
                .filter(|&r| pending[r].keys().next() == Some(&col))
                .min_by_key(|&r| (!pending[r][&col].is_atomic(), pending[r].len()))
            else {
                continue;
            };
            let mut prow = pending.swap_remove(pi);
            let pinv = prow[&col].inv().expect("nonzero pivot");
            if !pinv.is_one() {
                for v in prow.values_mut() {
                    *v = v.clone() * &pinv;
                }
            }
            for row in pending.iter_mut() {
                if row.keys().next() != Some(&col) {
                    continue;
                }
                let a = row.remove(&col).expect("leading entry");
                for (c, v) in prow.iter().skip(1) {
                    let t = a.clone() * v;
                    let sum = match row.remove(c) {
                        Some(s) => s - &t,
                        None => -t,
                    };
                    if !sum.is_zero() {
                        row.insert(*c, sum);
                    }
                }
            }
            pending.retain(|r| !r.is_empty());
            rows.push(prow);
            pivots.push(col);
        }
        Self {
            cols: m.cols,
            rows,
            pivots,
        }
    }

    pub fn rank(&self) -> usize {
        self.pivots.len()
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// Fill pivot coordinates of `x` so every echelon row is satisfied; free
    /// coordinates must be set by the caller. A column index `rhs` is
    /// treated as the right-hand side with value 1.
    fn back_substitute(&self, x: &mut [F], rhs: Option<usize>) {
        for (row, &pc) in self.rows.iter().zip(&self.pivots).rev() {
            let mut s = F::zero();
            for (c, v) in row.iter().skip(1) {
                if Some(*c) == rhs {
                    s = s - v;
                } else if !x[*c].is_zero() {
                    s = s + &(v.clone() * &x[*c]);
                }
            }
            x[pc] = (-s).div(&row[&pc]).expect("nonzero pivot");
        }
    }

    pub fn nullspace(&self) -> Vec<Vec<F>> {
        let is_pivot: Vec<bool> = {
            let mut v = vec![false; self.cols];
            for &p in &self.pivots {
                v[p] = true;
            }
            v
        };
        (0..self.cols)
            .filter(|&c| !is_pivot[c])
            .map(|free| {
                let mut x = vec![F::zero(); self.cols];
                x[free] = F::one();
                self.back_substitute(&mut x, None);
                x
            })
            .collect()
    }
}

/// Kernel basis of `m`; `rank + nullity = cols`.
pub fn solve_nullspace<F: Field>(m: &SparseMatrix<F>) -> Vec<Vec<F>> {
    m.nullspace()
}

/// Monic least common multiple of the `z`-denominators of all entries.
pub fn lcm_denominators(m: &SparseMatrix<RatFuncZ>) -> PolyZ {
    m.iter()
        .map(|(_, _, v)| v.denom())
        .filter(|d| !d.is_one())
        .fold(Poly::one(), |acc, d| Poly::lcm(&acc, d))
}

impl<F: Field> fmt::Display for SparseMatrix<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}x{} ({} nonzero)", self.rows, self.cols, self.nnz())?;
        for (i, j, v) in self.iter() {
            writeln!(f, "  ({i}, {j}): {v}")?;
        }
        Ok(())
    }
}
