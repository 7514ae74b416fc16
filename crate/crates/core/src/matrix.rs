//! Dense matrices over the rationals with exact arithmetic.
//!
//! Everything here works on [`BigRational`] entries, so no operation ever
//! rounds. Rank and determinant use fraction-free (Bareiss) elimination on an
//! integer rescaling of the rows; inverse and kernel use Gauss-Jordan over ℚ.

use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub fn rat(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

pub fn rat_big(n: BigInt) -> Rational {
    Rational::from_integer(n)
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ExactMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl ExactMatrix {
    pub fn new(rows: usize, cols: usize, entries: Vec<Rational>) -> Result<Self> {
        if entries.len() != rows * cols {
            return Err(Error::Shape(format!(
                "{} entries for a {}x{} matrix",
                entries.len(),
                rows,
                cols
            )));
        }
        Ok(ExactMatrix { rows, cols, entries })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        ExactMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        Self::from_fn(n, n, |i, j| if i == j { Rational::one() } else { Rational::zero() })
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                entries.push(f(i, j));
            }
        }
        ExactMatrix { rows, cols, entries }
    }

    /// Builds a matrix from integer rows. Panics on ragged input; meant for
    /// literal data.
    pub fn from_i64_rows<R: AsRef<[i64]>>(rows: &[R]) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.as_ref().len());
        assert!(
            rows.iter().all(|row| row.as_ref().len() == c),
            "ragged integer rows"
        );
        Self::from_fn(r, c, |i, j| rat(rows[i].as_ref()[j]))
    }

    pub fn column_vector(v: &[Rational]) -> Self {
        ExactMatrix {
            rows: v.len(),
            cols: 1,
            entries: v.to_vec(),
        }
    }

    pub fn column_i64(v: &[i64]) -> Self {
        Self::from_fn(v.len(), 1, |i, _| rat(v[i]))
    }

    /// Matrix whose columns are the given vectors, all of length `dim`.
    pub fn from_columns(dim: usize, columns: &[Vec<Rational>]) -> Result<Self> {
        if let Some(bad) = columns.iter().find(|c| c.len() != dim) {
            return Err(Error::Shape(format!(
                "column of length {} where {} expected",
                bad.len(),
                dim
            )));
        }
        Ok(Self::from_fn(dim, columns.len(), |i, j| columns[j][i].clone()))
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn entries(&self) -> &[Rational] {
        &self.entries
    }

    pub fn get(&self, i: usize, j: usize) -> &Rational {
        &self.entries[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: Rational) {
        self.entries[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[Rational] {
        &self.entries[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<Rational> {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self.get(j, i).clone())
    }

    fn same_shape(&self, other: &Self, what: &str) -> Result<()> {
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::Shape(format!(
                "{} of {}x{} and {}x{}",
                what, self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "sum")?;
        Ok(self.zip_with(other, |a, b| a + b))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.same_shape(other, "difference")?;
        Ok(self.zip_with(other, |a, b| a - b))
    }

    fn zip_with(&self, other: &Self, f: impl Fn(&Rational, &Rational) -> Rational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self
                .entries
                .iter()
                .zip(&other.entries)
                .map(|(a, b)| f(a, b))
                .collect(),
        }
    }

    pub fn neg(&self) -> Self {
        self.scale(&-Rational::one())
    }

    pub fn scale(&self, s: &Rational) -> Self {
        ExactMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|e| e * s).collect(),
        }
    }

    /// Exact product `self * other`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Shape(format!(
                "product of {}x{} and {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = other.get(k, j);
                    if !b.is_zero() {
                        out.entries[i * other.cols + j] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    /// Ordered product of a non-empty slice, leftmost factor first.
    pub fn product<'a>(factors: impl IntoIterator<Item = &'a ExactMatrix>) -> Result<Self> {
        let mut iter = factors.into_iter();
        let first = iter
            .next()
            .ok_or_else(|| Error::Shape("empty product".into()))?
            .clone();
        iter.try_fold(first, |acc, m| acc.mul(m))
    }

    pub fn pow(&self, exp: u32) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape("power of a non-square matrix".into()));
        }
        let mut acc = Self::identity(self.rows);
        for _ in 0..exp {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    pub fn trace(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape("trace of a non-square matrix".into()));
        }
        Ok((0..self.rows).map(|i| self.get(i, i).clone()).sum())
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn is_integral(&self) -> bool {
        self.entries.iter().all(Rational::is_integer)
    }

    pub fn is_symmetric(&self) -> bool {
        self.is_square() && *self == self.transpose()
    }

    pub fn is_antisymmetric(&self) -> bool {
        self.is_square() && *self == self.transpose().neg()
    }

    /// Rows rescaled by the lcm of their denominators, so elimination can run
    /// over ℤ. Returns the integer rows and the product of the scale factors.
    fn integer_rows(&self) -> (Vec<Vec<BigInt>>, BigInt) {
        let mut scale_product = BigInt::one();
        let rows = (0..self.rows)
            .map(|i| {
                let row = self.row(i);
                let lcm = row
                    .iter()
                    .fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
                scale_product *= &lcm;
                row.iter()
                    .map(|e| e.numer() * (&lcm / e.denom()))
                    .collect()
            })
            .collect();
        (rows, scale_product)
    }

    /// Bareiss elimination in place; returns the rank and, for square input,
    /// the determinant of the integer matrix.
    fn bareiss(mut m: Vec<Vec<BigInt>>, cols: usize) -> (usize, BigInt) {
        let rows = m.len();
        let mut rank = 0;
        let mut prev = BigInt::one();
        let mut sign = BigInt::one();
        for col in 0..cols {
            if rank == rows {
                break;
            }
            let Some(pivot) = (rank..rows).find(|&r| !m[r][col].is_zero()) else {
                continue;
            };
            if pivot != rank {
                m.swap(pivot, rank);
                sign = -sign;
            }
            for r in rank + 1..rows {
                for c in col + 1..cols {
                    let v = (&m[rank][col] * &m[r][c] - &m[r][col] * &m[rank][c]) / &prev;
                    m[r][c] = v;
                }
                m[r][col] = BigInt::zero();
            }
            prev = m[rank][col].clone();
            rank += 1;
        }
        let det = if rank == rows && rows == cols {
            if rows == 0 {
                BigInt::one()
            } else {
                sign * &m[rows - 1][cols - 1]
            }
        } else {
            BigInt::zero()
        };
        (rank, det)
    }

    /// Rank over ℚ.
    pub fn rank(&self) -> usize {
        let (rows, _) = self.integer_rows();
        Self::bareiss(rows, self.cols).0
    }

    pub fn determinant(&self) -> Result<Rational> {
        if !self.is_square() {
            return Err(Error::Shape("determinant of a non-square matrix".into()));
        }
        let (rows, scale) = self.integer_rows();
        let (_, det) = Self::bareiss(rows, self.cols);
        Ok(Rational::new(det, scale))
    }

    /// Reduced row echelon form over ℚ together with the pivot columns.
    pub fn rref(&self) -> (Self, Vec<usize>) {
        let mut m = self.clone();
        let mut pivots = Vec::new();
        let mut r = 0;
        for c in 0..m.cols {
            if r == m.rows {
                break;
            }
            let Some(p) = (r..m.rows).find(|&i| !m.get(i, c).is_zero()) else {
                continue;
            };
            m.swap_rows(p, r);
            let inv = m.get(r, c).recip();
            for j in c..m.cols {
                let v = m.get(r, j) * &inv;
                m.set(r, j, v);
            }
            for i in 0..m.rows {
                if i == r || m.get(i, c).is_zero() {
                    continue;
                }
                let factor = m.get(i, c).clone();
                for j in c..m.cols {
                    let v = m.get(i, j) - &factor * m.get(r, j);
                    m.set(i, j, v);
                }
            }
            pivots.push(c);
            r += 1;
        }
        (m, pivots)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.entries.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    /// Exact inverse via Gauss-Jordan on `[self | I]`.
    pub fn inverse(&self) -> Result<Self> {
        if !self.is_square() {
            return Err(Error::Shape(format!(
                "inverse of a {}x{} matrix",
                self.rows, self.cols
            )));
        }
        let n = self.rows;
        let augmented = Self::from_fn(n, 2 * n, |i, j| {
            if j < n {
                self.get(i, j).clone()
            } else if j - n == i {
                Rational::one()
            } else {
                Rational::zero()
            }
        });
        let (reduced, pivots) = augmented.rref();
        if pivots.len() < n || pivots[n - 1] >= n {
            return Err(Error::Singular);
        }
        Ok(Self::from_fn(n, n, |i, j| reduced.get(i, n + j).clone()))
    }

    /// Basis of the right kernel `{w : self * w = 0}`.
    ///
    /// Vectors are primitive integer vectors whose first nonzero coordinate is
    /// positive, ordered by the position of that coordinate.
    pub fn kernel_basis(&self) -> Vec<Vec<BigInt>> {
        let (reduced, pivots) = self.rref();
        let mut basis: Vec<Vec<BigInt>> = (0..self.cols)
            .filter(|c| !pivots.contains(c))
            .map(|free| {
                let mut v = vec![Rational::zero(); self.cols];
                v[free] = Rational::one();
                for (r, &p) in pivots.iter().enumerate() {
                    v[p] = -reduced.get(r, free).clone();
                }
                primitive_integer_vector(&v)
            })
            .collect();
        basis.sort_by_key(|v| v.iter().position(|x| !x.is_zero()));
        basis
    }

    /// Integer entries, or `None` if any entry is fractional.
    pub fn to_integer_rows(&self) -> Option<Vec<Vec<BigInt>>> {
        if !self.is_integral() {
            return None;
        }
        Some(
            (0..self.rows)
                .map(|i| self.row(i).iter().map(|e| e.to_integer()).collect())
                .collect(),
        )
    }

    /// Compact rendering such as `[[1,-2],[0,1]]`; fractions print as `p/q`.
    pub fn render(&self) -> String {
        let mut s = String::from("[");
        for i in 0..self.rows {
            if i > 0 {
                s.push(',');
            }
            s.push('[');
            for j in 0..self.cols {
                if j > 0 {
                    s.push(',');
                }
                s.push_str(&format!("{}", self.get(i, j)));
            }
            s.push(']');
        }
        s.push(']');
        s
    }
}

impl fmt::Debug for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

impl fmt::Display for ExactMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.render())
    }
}

/// Clears denominators and content of a rational vector and makes the first
/// nonzero coordinate positive.
pub fn primitive_integer_vector(v: &[Rational]) -> Vec<BigInt> {
    let lcm = v.iter().fold(BigInt::one(), |acc, e| acc.lcm(e.denom()));
    let mut ints: Vec<BigInt> = v.iter().map(|e| e.numer() * (&lcm / e.denom())).collect();
    let gcd = ints.iter().fold(BigInt::zero(), |acc, e| acc.gcd(e));
    if !gcd.is_zero() {
        for x in &mut ints {
            *x /= &gcd;
        }
    }
    if ints.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_negative()) {
        for x in &mut ints {
            *x = -x.clone();
        }
    }
    ints
}

pub fn mat_mul(a: &ExactMatrix, b: &ExactMatrix) -> Result<ExactMatrix> {
    a.mul(b)
}

pub fn mat_inverse(a: &ExactMatrix) -> Result<ExactMatrix> {
    a.inverse()
}

pub fn mat_rank(a: &ExactMatrix) -> usize {
    a.rank()
}

pub fn mat_kernel_basis(a: &ExactMatrix) -> Vec<Vec<BigInt>> {
    a.kernel_basis()
}
