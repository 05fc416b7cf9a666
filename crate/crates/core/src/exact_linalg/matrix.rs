use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Dense rectangular matrix of rationals, row-major.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Rational>,
}

impl Matrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![Rational::zero(); rows * cols] }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(f(i, j));
            }
        }
        Self { rows, cols, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let cols = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::DimensionMismatch("ragged rows".into()));
        }
        let n = rows.len();
        Ok(Self { rows: n, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.cols + j]
    }

    fn set(&mut self, i: usize, j: usize, v: Rational) {
        self.data[i * self.cols + j] = v;
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::DimensionMismatch(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(Matrix::from_fn(self.rows, other.cols, |i, j| {
            (0..self.cols).fold(Rational::zero(), |acc, t| acc + self.get(i, t) * other.get(t, j))
        }))
    }

    /// Exact determinant of a square matrix.
    pub fn det(&self) -> Result<Rational> {
        if self.rows != self.cols {
            return Err(Error::DimensionMismatch(format!(
                "determinant of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        Ok(bareiss_det(self.rows, |i, j| self.get(i, j)))
    }

    /// Some `W` with `self * W = rhs`, or `None` when the system is
    /// inconsistent. Free variables are set to zero.
    pub fn solve(&self, rhs: &Matrix) -> Result<Option<Matrix>> {
        if self.rows != rhs.rows {
            return Err(Error::DimensionMismatch(format!(
                "system with {} equations and a right-hand side with {} rows",
                self.rows, rhs.rows
            )));
        }
        let (n, m, q) = (self.rows, self.cols, rhs.cols);
        let mut aug = Matrix::from_fn(n, m + q, |i, j| {
            if j < m { self.get(i, j).clone() } else { rhs.get(i, j - m).clone() }
        });
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..m {
            let Some(p) = (row..n).find(|&r| !aug.get(r, col).is_zero()) else {
                continue;
            };
            aug.swap_rows(row, p);
            let inv = aug.get(row, col).recip();
            for j in col..m + q {
                let v = aug.get(row, j) * &inv;
                aug.set(row, j, v);
            }
            for r in 0..n {
                if r != row && !aug.get(r, col).is_zero() {
                    let factor = aug.get(r, col).clone();
                    for j in col..m + q {
                        let v = aug.get(r, j) - &factor * aug.get(row, j);
                        aug.set(r, j, v);
                    }
                }
            }
            pivots.push(col);
            row += 1;
            if row == n {
                break;
            }
        }
        if (row..n).any(|r| (m..m + q).any(|j| !aug.get(r, j).is_zero())) {
            return Ok(None);
        }
        let mut w = Matrix::zeros(m, q);
        for (r, &c) in pivots.iter().enumerate() {
            for j in 0..q {
                w.set(c, j, aug.get(r, m + j).clone());
            }
        }
        Ok(Some(w))
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a != b {
            for j in 0..self.cols {
                self.data.swap(a * self.cols + j, b * self.cols + j);
            }
        }
    }
}

/// Dense symmetric matrix of rationals. Symmetry is enforced on
/// construction.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SymMatrix {
    n: usize,
    data: Vec<Rational>,
}

impl SymMatrix {
    /// Builds from the upper triangle: `f(i, j)` is only called for `i <= j`.
    pub fn from_fn(n: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut data = vec![Rational::zero(); n * n];
        for i in 0..n {
            for j in i..n {
                let v = f(i, j);
                data[j * n + i] = v.clone();
                data[i * n + j] = v;
            }
        }
        Self { n, data }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let m = Matrix::from_rows(rows)?;
        Self::try_from(m)
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    /// Assembles `[[a, b], [bᵀ, c]]`.
    pub fn from_blocks(a: &SymMatrix, b: &Matrix, c: &SymMatrix) -> Result<Self> {
        let (p, q) = (a.order(), c.order());
        if b.rows() != p || b.cols() != q {
            return Err(Error::DimensionMismatch(format!(
                "off-diagonal block is {}x{}, expected {p}x{q}",
                b.rows(),
                b.cols()
            )));
        }
        Ok(Self::from_fn(p + q, |i, j| match (i < p, j < p) {
            (true, true) => a.get(i, j).clone(),
            (true, false) => b.get(i, j - p).clone(),
            (false, false) => c.get(i - p, j - p).clone(),
            (false, true) => unreachable!("upper triangle only"),
        }))
    }

    pub fn order(&self) -> usize {
        self.n
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.data[i * self.n + j]
    }

    pub fn rows(&self) -> impl Iterator<Item = &[Rational]> {
        self.data.chunks(self.n.max(1)).take(self.n)
    }

    /// The principal submatrix on `indices`, in the given order.
    pub fn principal(&self, indices: &[usize]) -> Self {
        Self::from_fn(indices.len(), |i, j| self.get(indices[i], indices[j]).clone())
    }

    pub fn leading(&self, p: usize) -> Self {
        let idx: Vec<usize> = (0..p).collect();
        self.principal(&idx)
    }

    /// `Pᵀ M P` for the permutation sending position `i` to `perm[i]`.
    pub fn permuted(&self, perm: &[usize]) -> Self {
        self.principal(perm)
    }

    pub fn scaled(&self, c: &Rational) -> Self {
        Self { n: self.n, data: self.data.iter().map(|v| v * c).collect() }
    }

    pub fn to_matrix(&self) -> Matrix {
        Matrix { rows: self.n, cols: self.n, data: self.data.clone() }
    }
}

impl TryFrom<Matrix> for SymMatrix {
    type Error = Error;

    fn try_from(m: Matrix) -> Result<Self> {
        if m.rows != m.cols {
            return Err(Error::DimensionMismatch(format!("{}x{} is not square", m.rows, m.cols)));
        }
        for i in 0..m.rows {
            for j in i + 1..m.cols {
                if m.get(i, j) != m.get(j, i) {
                    return Err(Error::DimensionMismatch(format!("entry ({i},{j}) breaks symmetry")));
                }
            }
        }
        Ok(Self { n: m.rows, data: m.data })
    }
}

impl fmt::Display for SymMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for row in self.rows() {
            let cells: Vec<String> = row.iter().map(|v| v.to_string()).collect();
            writeln!(f, "[{}]", cells.join(", "))?;
        }
        Ok(())
    }
}

/// Fraction-free Bareiss elimination. Each row is first scaled to integers
/// by the lcm of its denominators; the scaling is divided out at the end.
fn bareiss_det<'a>(n: usize, entry: impl Fn(usize, usize) -> &'a Rational) -> Rational {
    if n == 0 {
        return Rational::one();
    }
    let mut scale = BigInt::one();
    let mut a: Vec<Vec<BigInt>> = (0..n)
        .map(|i| {
            let l = (0..n).fold(BigInt::one(), |acc, j| acc.lcm(entry(i, j).denom()));
            scale *= &l;
            (0..n).map(|j| entry(i, j).numer() * (&l / entry(i, j).denom())).collect()
        })
        .collect();
    let mut negate = false;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if a[k][k].is_zero() {
            match (k + 1..n).find(|&r| !a[r][k].is_zero()) {
                Some(r) => {
                    a.swap(k, r);
                    negate = !negate;
                }
                None => return Rational::zero(),
            }
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let v = (&a[i][j] * &a[k][k] - &a[i][k] * &a[k][j]) / &prev;
                a[i][j] = v;
            }
        }
        prev = a[k][k].clone();
    }
    let d = Rational::new(a[n - 1][n - 1].clone(), scale);
    if negate { -d } else { d }
}

pub fn det(m: &SymMatrix) -> Rational {
    bareiss_det(m.order(), |i, j| m.get(i, j))
}

/// `[d_1, ..., d_n]` where `d_p` is the determinant of the top-left `p x p`
/// block.
pub fn leading_minors(m: &SymMatrix) -> Vec<Rational> {
    (1..=m.order()).map(|p| bareiss_det(p, |i, j| m.get(i, j))).collect()
}

/// Exact positive-semidefiniteness by repeated Schur complementation on the
/// first diagonal entry. A zero pivot is only admissible when its whole row
/// vanishes, in which case the row and column are dropped.
pub fn is_psd(m: &SymMatrix) -> bool {
    let mut n = m.order();
    let mut a: Vec<Vec<Rational>> = m.rows().map(<[Rational]>::to_vec).collect();
    while n > 0 {
        let pivot = a[0][0].clone();
        if pivot.is_negative() {
            return false;
        }
        if pivot.is_zero() {
            if a[0].iter().any(|v| !v.is_zero()) {
                return false;
            }
            a = a[1..].iter().map(|row| row[1..].to_vec()).collect();
        } else {
            let inv = pivot.recip();
            let head: Vec<Rational> = a[0][1..].to_vec();
            a = (1..n)
                .map(|i| {
                    let lead = &head[i - 1] * &inv;
                    (1..n).map(|j| &a[i][j] - &lead * &head[j - 1]).collect()
                })
                .collect();
        }
        n -= 1;
    }
    true
}

/// Positivity of `[[a, b], [bᵀ, c]]` through the block criterion: `a >= 0`,
/// `a w = b` solvable, and `c - wᵀ a w >= 0`.
pub fn smuljan_psd(a: &SymMatrix, b: &Matrix, c: &SymMatrix) -> Result<bool> {
    if b.rows() != a.order() || b.cols() != c.order() {
        return Err(Error::DimensionMismatch(format!(
            "blocks {0}x{0}, {1}x{2}, {3}x{3}",
            a.order(),
            b.rows(),
            b.cols(),
            c.order()
        )));
    }
    if !is_psd(a) {
        return Ok(false);
    }
    let am = a.to_matrix();
    let Some(w) = am.solve(b)? else {
        return Ok(false);
    };
    let waw = w.transpose().mul(&am)?.mul(&w)?;
    let rest = SymMatrix::from_fn(c.order(), |i, j| c.get(i, j) - waw.get(i, j));
    Ok(is_psd(&rest))
}
