//! Dense integer matrices with arbitrary-precision entries.
//!
//! Everything downstream (boundary maps, intersection forms, coordinate
//! transforms) is stored in this one representation. Entries are
//! [`BigInt`], so elimination never overflows no matter how large the
//! intermediate coefficients grow.

use std::fmt;
use std::ops::{Index, IndexMut};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::textio::{LineReader, ParseError};

/// A `rows x cols` integer matrix in row-major order.
///
/// Zero-dimensional matrices (no rows or no columns) are legal; they show
/// up as the boundary maps past the ends of a chain complex.
#[derive(Clone, PartialEq, Eq)]
pub struct IntegerMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<BigInt>,
}

impl IntegerMatrix {
    /// All-zero matrix.
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntegerMatrix {
            rows,
            cols,
            entries: vec![BigInt::zero(); rows * cols],
        }
    }

    /// Square identity matrix.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    /// Build from nested rows. Panics if the rows are ragged.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let nrows = rows.len();
        let ncols = rows.first().map_or(0, Vec::len);
        let mut entries = Vec::with_capacity(nrows * ncols);
        for row in rows {
            assert_eq!(row.len(), ncols, "ragged rows");
            entries.extend(row.iter().cloned().map(Into::into));
        }
        IntegerMatrix {
            rows: nrows,
            cols: ncols,
            entries,
        }
    }

    /// Build entry-by-entry from a closure.
    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            for c in 0..cols {
                m[(r, c)] = f(r, c);
            }
        }
        m
    }

    /// Square diagonal matrix with the given entries.
    pub fn diagonal<T: Into<BigInt> + Clone>(diag: &[T]) -> Self {
        let mut m = Self::zeros(diag.len(), diag.len());
        for (i, d) in diag.iter().enumerate() {
            m[(i, i)] = d.clone().into();
        }
        m
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

    /// Entries on the main diagonal.
    pub fn diagonal_entries(&self) -> Vec<BigInt> {
        (0..self.rows.min(self.cols))
            .map(|i| self[(i, i)].clone())
            .collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// True when every off-diagonal entry vanishes.
    pub fn is_diagonal(&self) -> bool {
        for r in 0..self.rows {
            for c in 0..self.cols {
                if r != c && !self[(r, c)].is_zero() {
                    return false;
                }
            }
        }
        true
    }

    pub fn is_symmetric(&self) -> bool {
        if !self.is_square() {
            return false;
        }
        for r in 0..self.rows {
            for c in 0..r {
                if self[(r, c)] != self[(c, r)] {
                    return false;
                }
            }
        }
        true
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |r, c| self[(c, r)].clone())
    }

    /// Matrix product. Panics on a dimension mismatch; zero entries on the
    /// left factor are skipped, which makes products with sparse boundary
    /// maps cheap.
    pub fn mul(&self, other: &IntegerMatrix) -> IntegerMatrix {
        assert_eq!(
            self.cols, other.rows,
            "product dimension mismatch: {}x{} * {}x{}",
            self.rows, self.cols, other.rows, other.cols
        );
        let mut out = IntegerMatrix::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let b = &other[(k, j)];
                    if b.is_zero() {
                        continue;
                    }
                    let idx = i * out.cols + j;
                    out.entries[idx] += a * b;
                }
            }
        }
        out
    }

    /// Matrix-vector product. Panics if `v.len() != cols`.
    pub fn mul_vec(&self, v: &[BigInt]) -> Vec<BigInt> {
        assert_eq!(v.len(), self.cols, "vector length mismatch");
        let mut out = vec![BigInt::zero(); self.rows];
        for r in 0..self.rows {
            for c in 0..self.cols {
                let a = &self[(r, c)];
                if a.is_zero() || v[c].is_zero() {
                    continue;
                }
                out[r] += a * &v[c];
            }
        }
        out
    }

    pub fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for c in 0..self.cols {
            self.entries.swap(i * self.cols + c, j * self.cols + c);
        }
    }

    pub fn swap_cols(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for r in 0..self.rows {
            self.entries.swap(r * self.cols + i, r * self.cols + j);
        }
    }

    /// row_i += q * row_j
    pub fn add_row_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for c in 0..self.cols {
            let src = self[(j, c)].clone();
            if src.is_zero() {
                continue;
            }
            self[(i, c)] += q * src;
        }
    }

    /// col_i += q * col_j
    pub fn add_col_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for r in 0..self.rows {
            let src = self[(r, j)].clone();
            if src.is_zero() {
                continue;
            }
            self[(r, i)] += q * src;
        }
    }

    pub fn negate_row(&mut self, i: usize) {
        for c in 0..self.cols {
            let e = &mut self[(i, c)];
            if !e.is_zero() {
                *e = -e.clone();
            }
        }
    }

    pub fn negate_col(&mut self, j: usize) {
        for r in 0..self.rows {
            let e = &mut self[(r, j)];
            if !e.is_zero() {
                *e = -e.clone();
            }
        }
    }

    /// Copy of rows `lo..` as a new matrix.
    pub fn rows_from(&self, lo: usize) -> IntegerMatrix {
        Self::from_fn(self.rows - lo, self.cols, |r, c| self[(r + lo, c)].clone())
    }

    /// Copy of columns `lo..` as a new matrix.
    pub fn cols_from(&self, lo: usize) -> IntegerMatrix {
        Self::from_fn(self.rows, self.cols - lo, |r, c| self[(r, c + lo)].clone())
    }

    pub fn column(&self, j: usize) -> Vec<BigInt> {
        (0..self.rows).map(|r| self[(r, j)].clone()).collect()
    }

    /// Exact determinant of a square matrix via fraction-free (Bareiss)
    /// elimination. Independent of the Smith normal form path.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = 1i32;
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a[(k, k)].is_zero() {
                let Some(swap) = (k + 1..n).find(|&r| !a[(r, k)].is_zero()) else {
                    return BigInt::zero();
                };
                a.swap_rows(k, swap);
                sign = -sign;
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let num = &a[(k, k)] * &a[(i, j)] - &a[(i, k)] * &a[(k, j)];
                    a[(i, j)] = num / &prev; // exact by Bareiss
                }
                a[(i, k)] = BigInt::zero();
            }
            prev = a[(k, k)].clone();
        }
        let det = a[(n - 1, n - 1)].clone();
        if sign < 0 {
            -det
        } else {
            det
        }
    }

    /// Read a matrix in the text format: a `rows cols` header line followed
    /// by `rows` lines of `cols` whitespace-separated integers.
    pub fn parse_block(reader: &mut LineReader<'_>) -> Result<Self, ParseError> {
        let (line_no, header) = reader.next_content_line("matrix header `rows cols`")?;
        let dims: Vec<&str> = header.split_whitespace().collect();
        if dims.len() != 2 {
            return Err(ParseError::new(line_no, "expected `rows cols` header"));
        }
        let rows: usize = dims[0]
            .parse()
            .map_err(|_| ParseError::new(line_no, "invalid row count"))?;
        let cols: usize = dims[1]
            .parse()
            .map_err(|_| ParseError::new(line_no, "invalid column count"))?;
        let mut m = Self::zeros(rows, cols);
        for r in 0..rows {
            let (ln, line) = reader.next_content_line("matrix row")?;
            let fields: Vec<&str> = line.split_whitespace().collect();
            if fields.len() != cols {
                return Err(ParseError::new(
                    ln,
                    format!("expected {} entries, found {}", cols, fields.len()),
                ));
            }
            for (c, field) in fields.iter().enumerate() {
                m[(r, c)] = field
                    .parse()
                    .map_err(|_| ParseError::new(ln, format!("invalid integer `{field}`")))?;
            }
        }
        Ok(m)
    }

    /// Parse a whole string holding exactly one matrix block.
    pub fn parse_text(text: &str) -> Result<Self, ParseError> {
        let mut reader = LineReader::new(text);
        let m = Self::parse_block(&mut reader)?;
        reader.expect_end()?;
        Ok(m)
    }

    /// Serialize in the text format accepted by [`IntegerMatrix::parse_text`].
    pub fn to_text(&self) -> String {
        let mut out = format!("{} {}\n", self.rows, self.cols);
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            out.push_str(&row.join(" "));
            out.push('\n');
        }
        out
    }
}

impl Index<(usize, usize)> for IntegerMatrix {
    type Output = BigInt;

    fn index(&self, (r, c): (usize, usize)) -> &BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &self.entries[r * self.cols + c]
    }
}

impl IndexMut<(usize, usize)> for IntegerMatrix {
    fn index_mut(&mut self, (r, c): (usize, usize)) -> &mut BigInt {
        debug_assert!(r < self.rows && c < self.cols);
        &mut self.entries[r * self.cols + c]
    }
}

impl fmt::Debug for IntegerMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "IntegerMatrix {}x{} [", self.rows, self.cols)?;
        for r in 0..self.rows {
            let row: Vec<String> = (0..self.cols).map(|c| self[(r, c)].to_string()).collect();
            writeln!(f, "  [{}]", row.join(", "))?;
        }
        write!(f, "]")
    }
}

/// Convenience for tests and callers with small vectors.
pub fn bigvec<T: Into<BigInt> + Clone>(v: &[T]) -> Vec<BigInt> {
    v.iter().cloned().map(Into::into).collect()
}

/// Greatest common divisor of a slice, nonnegative; empty or all-zero
/// input gives zero.
pub fn gcd_all(values: &[BigInt]) -> BigInt {
    use num_integer::Integer;
    values
        .iter()
        .fold(BigInt::zero(), |acc, v| acc.gcd(v))
        .abs()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn product_and_identity() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        let id = IntegerMatrix::identity(2);
        assert_eq!(a.mul(&id), a);
        assert_eq!(id.mul(&a), a);
        let b = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        let ab = a.mul(&b);
        assert_eq!(ab, IntegerMatrix::from_rows(&[vec![2, 1], vec![4, 3]]));
    }

    #[test]
    fn determinant_small() {
        let a = IntegerMatrix::from_rows(&[vec![1, 2], vec![3, 4]]);
        assert_eq!(a.determinant(), BigInt::from(-2));
        let b = IntegerMatrix::from_rows(&[vec![2, 0, 0], vec![0, 3, 0], vec![0, 0, 5]]);
        assert_eq!(b.determinant(), BigInt::from(30));
        let singular = IntegerMatrix::from_rows(&[vec![1, 2], vec![2, 4]]);
        assert_eq!(singular.determinant(), BigInt::zero());
        assert_eq!(IntegerMatrix::zeros(0, 0).determinant(), BigInt::one());
    }

    #[test]
    fn determinant_needs_pivot_swap() {
        let a = IntegerMatrix::from_rows(&[vec![0, 1], vec![1, 0]]);
        assert_eq!(a.determinant(), BigInt::from(-1));
    }

    #[test]
    fn text_roundtrip() {
        let a = IntegerMatrix::from_rows(&[vec![1, -2, 3], vec![0, 5, -6]]);
        let text = a.to_text();
        assert_eq!(text, "2 3\n1 -2 3\n0 5 -6\n");
        assert_eq!(IntegerMatrix::parse_text(&text).unwrap(), a);
    }

    #[test]
    fn text_rejects_bad_shapes() {
        assert!(IntegerMatrix::parse_text("2\n1 2\n").is_err());
        assert!(IntegerMatrix::parse_text("1 3\n1 2\n").is_err());
        assert!(IntegerMatrix::parse_text("1 1\nx\n").is_err());
        // trailing garbage
        assert!(IntegerMatrix::parse_text("1 1\n4\n7\n").is_err());
    }

    #[test]
    fn zero_dimension_matrices() {
        let m = IntegerMatrix::parse_text("0 5\n").unwrap();
        assert_eq!((m.rows(), m.cols()), (0, 5));
        let t = m.transpose();
        assert_eq!((t.rows(), t.cols()), (5, 0));
        assert!(t.mul(&m).is_zero());
    }

    #[test]
    fn gcd_all_conventions() {
        assert_eq!(gcd_all(&bigvec::<i64>(&[])), BigInt::zero());
        assert_eq!(gcd_all(&bigvec(&[0, 0])), BigInt::zero());
        assert_eq!(gcd_all(&bigvec(&[-4, 6])), BigInt::from(2));
        assert_eq!(gcd_all(&bigvec(&[2, 4, 6])), BigInt::from(2));
    }
}
