//! Dense exact matrices, block partitions, and linear solving.
//!
//! Matrices are row-major over a fixed [`Field`]. All public indices are
//! 1-based: entry (1,1) is the top-left corner, partition blocks are numbered
//! 1..=t. Sequences (basis vectors, pivot lists) stay 0-based like any Rust
//! slice.

use std::fmt;

use crate::error::{Error, Result};
use crate::field::{Field, Scalar};

/// An ordered partition (n1, ..., nt) of n; every part is positive.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Partition {
    sizes: Vec<usize>,
}

impl Partition {
    pub fn new(sizes: Vec<usize>) -> Result<Self> {
        if sizes.is_empty() || sizes.iter().any(|&s| s == 0) {
            return Err(Error::EmptyPart);
        }
        Ok(Partition { sizes })
    }

    /// Number of blocks t.
    pub fn t(&self) -> usize {
        self.sizes.len()
    }

    /// Total matrix size n = n1 + ... + nt.
    pub fn n(&self) -> usize {
        self.sizes.iter().sum()
    }

    /// Size of block i (1-based).
    pub fn size(&self, i: usize) -> usize {
        assert!((1..=self.t()).contains(&i), "block index {i} out of range");
        self.sizes[i - 1]
    }

    /// Rows of block i are offset(i)+1 ..= offset(i)+size(i).
    pub fn offset(&self, i: usize) -> usize {
        assert!((1..=self.t()).contains(&i), "block index {i} out of range");
        self.sizes[..i - 1].iter().sum()
    }

    pub fn sizes(&self) -> &[usize] {
        &self.sizes
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.sizes.iter().map(|s| s.to_string()).collect();
        write!(f, "({})", parts.join(","))
    }
}

/// Dense row-major matrix over an exact field.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct Mat {
    field: Field,
    rows: usize,
    cols: usize,
    entries: Vec<Scalar>,
}

impl Mat {
    pub fn zero(field: Field, rows: usize, cols: usize) -> Mat {
        Mat {
            field,
            rows,
            cols,
            entries: vec![field.zero(); rows * cols],
        }
    }

    pub fn identity(field: Field, n: usize) -> Mat {
        let mut m = Mat::zero(field, n, n);
        for i in 1..=n {
            m.set(i, i, field.one());
        }
        m
    }

    /// Unit matrix E_pq of shape rows x cols (1-based p, q).
    pub fn unit(field: Field, rows: usize, cols: usize, p: usize, q: usize) -> Result<Mat> {
        if !(1..=rows).contains(&p) || !(1..=cols).contains(&q) {
            return Err(Error::IndexOutOfRange(format!(
                "unit ({p},{q}) in a {rows}x{cols} matrix"
            )));
        }
        let mut m = Mat::zero(field, rows, cols);
        m.set(p, q, field.one());
        Ok(m)
    }

    pub fn from_fn(
        field: Field,
        rows: usize,
        cols: usize,
        mut f: impl FnMut(usize, usize) -> Scalar,
    ) -> Mat {
        let mut m = Mat::zero(field, rows, cols);
        for r in 1..=rows {
            for c in 1..=cols {
                m.set(r, c, f(r, c));
            }
        }
        m
    }

    /// Convenience constructor from integer literals.
    pub fn from_i64(field: Field, rows: &[&[i64]]) -> Result<Mat> {
        let r = rows.len();
        let c = rows.first().map_or(0, |row| row.len());
        if rows.iter().any(|row| row.len() != c) {
            return Err(Error::DimMismatch("ragged rows".into()));
        }
        Ok(Mat::from_fn(field, r, c, |i, j| {
            field.from_i64(rows[i - 1][j - 1])
        }))
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    fn idx(&self, r: usize, c: usize) -> usize {
        assert!(
            (1..=self.rows).contains(&r) && (1..=self.cols).contains(&c),
            "entry ({r},{c}) out of range for {}x{}",
            self.rows,
            self.cols
        );
        (r - 1) * self.cols + (c - 1)
    }

    pub fn at(&self, r: usize, c: usize) -> &Scalar {
        &self.entries[self.idx(r, c)]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Scalar) {
        let i = self.idx(r, c);
        self.entries[i] = v;
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Scalar::is_zero)
    }

    fn check_same_shape(&self, other: &Mat, op: &str) -> Result<()> {
        if self.field != other.field {
            return Err(Error::DimMismatch(format!("{op}: different fields")));
        }
        if self.rows != other.rows || self.cols != other.cols {
            return Err(Error::DimMismatch(format!(
                "{op}: {}x{} vs {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other, "add")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.add(a, b))
            .collect();
        Ok(Mat { entries, ..*self })
    }

    pub fn sub(&self, other: &Mat) -> Result<Mat> {
        self.check_same_shape(other, "sub")?;
        let entries = self
            .entries
            .iter()
            .zip(&other.entries)
            .map(|(a, b)| self.field.sub(a, b))
            .collect();
        Ok(Mat { entries, ..*self })
    }

    pub fn neg(&self) -> Mat {
        let entries = self.entries.iter().map(|a| self.field.neg(a)).collect();
        Mat { entries, ..*self }
    }

    pub fn scale(&self, k: &Scalar) -> Mat {
        let entries = self.entries.iter().map(|a| self.field.mul(k, a)).collect();
        Mat { entries, ..*self }
    }

    pub fn mul(&self, other: &Mat) -> Result<Mat> {
        if self.field != other.field {
            return Err(Error::DimMismatch("mul: different fields".into()));
        }
        if self.cols != other.rows {
            return Err(Error::DimMismatch(format!(
                "mul: {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let f = self.field;
        let mut out = Mat::zero(f, self.rows, other.cols);
        for r in 1..=self.rows {
            for k in 1..=self.cols {
                let a = self.at(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 1..=other.cols {
                    let b = other.at(k, c);
                    if b.is_zero() {
                        continue;
                    }
                    let v = f.add(out.at(r, c), &f.mul(a, b));
                    out.set(r, c, v);
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> Mat {
        Mat::from_fn(self.field, self.cols, self.rows, |r, c| {
            self.at(c, r).clone()
        })
    }

    pub fn row_vec(&self, r: usize) -> Vec<Scalar> {
        (1..=self.cols).map(|c| self.at(r, c).clone()).collect()
    }

    pub fn col_vec(&self, c: usize) -> Vec<Scalar> {
        (1..=self.rows).map(|r| self.at(r, c).clone()).collect()
    }

    /// Submatrix at block position (i,j) of the partition (1-based).
    pub fn block(&self, part: &Partition, i: usize, j: usize) -> Result<Mat> {
        self.check_square(part)?;
        check_block_index(part, i, j)?;
        let (ro, co) = (part.offset(i), part.offset(j));
        Ok(Mat::from_fn(
            self.field,
            part.size(i),
            part.size(j),
            |r, c| self.at(ro + r, co + c).clone(),
        ))
    }

    /// n x n matrix that is zero outside block (i,j), where it equals `b`.
    pub fn embed_block(part: &Partition, b: &Mat, i: usize, j: usize) -> Result<Mat> {
        check_block_index(part, i, j)?;
        if b.rows != part.size(i) || b.cols != part.size(j) {
            return Err(Error::DimMismatch(format!(
                "embed_block: {}x{} into block ({i},{j}) of size {}x{}",
                b.rows,
                b.cols,
                part.size(i),
                part.size(j)
            )));
        }
        let n = part.n();
        let (ro, co) = (part.offset(i), part.offset(j));
        let mut m = Mat::zero(b.field, n, n);
        for r in 1..=b.rows {
            for c in 1..=b.cols {
                m.set(ro + r, co + c, b.at(r, c).clone());
            }
        }
        Ok(m)
    }

    fn check_square(&self, part: &Partition) -> Result<()> {
        if self.rows != part.n() || self.cols != part.n() {
            return Err(Error::DimMismatch(format!(
                "{}x{} matrix against a partition of {}",
                self.rows,
                self.cols,
                part.n()
            )));
        }
        Ok(())
    }

    /// True iff every block strictly below the diagonal is zero.
    pub fn is_block_upper(&self, part: &Partition) -> Result<bool> {
        self.check_square(part)?;
        for i in 1..=part.t() {
            for j in 1..i {
                if !self.block(part, i, j)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// True iff every block on or below the diagonal is zero.
    pub fn is_strict_block_upper(&self, part: &Partition) -> Result<bool> {
        self.check_square(part)?;
        for i in 1..=part.t() {
            for j in 1..=i {
                if !self.block(part, i, j)?.is_zero() {
                    return Ok(false);
                }
            }
        }
        Ok(true)
    }

    /// Reduced row echelon form. Returns the RREF and the pivot columns
    /// (1-based, strictly increasing).
    pub fn rref(&self) -> (Mat, Vec<usize>) {
        let mut red = RowReducer::new(self.field, self.cols);
        for r in 1..=self.rows {
            red.insert(self.row_vec(r));
        }
        let pivots = red.pivots().iter().map(|c| c + 1).collect();
        let mut out = Mat::zero(self.field, self.rows, self.cols);
        for (r, row) in red.rows().iter().enumerate() {
            for (c, v) in row.iter().enumerate() {
                out.set(r + 1, c + 1, v.clone());
            }
        }
        (out, pivots)
    }

    pub fn rank(&self) -> usize {
        self.rref().1.len()
    }

    /// Basis of the right nullspace as column vectors.
    ///
    /// One vector per free column, sorted by free column; each vector has
    /// entry 1 at its own free column and 0 at every other free column.
    pub fn nullspace(&self) -> Vec<Mat> {
        let mut red = RowReducer::new(self.field, self.cols);
        for r in 1..=self.rows {
            red.insert(self.row_vec(r));
        }
        red.nullspace_cols()
            .into_iter()
            .map(|v| {
                let mut m = Mat::zero(self.field, self.cols, 1);
                for (i, x) in v.into_iter().enumerate() {
                    m.set(i + 1, 1, x);
                }
                m
            })
            .collect()
    }

    /// One solution of `self * x = b` (b has matching rows, any column count),
    /// or None if the system is inconsistent.
    pub fn solve(&self, b: &Mat) -> Result<Option<Mat>> {
        if self.field != b.field {
            return Err(Error::DimMismatch("solve: different fields".into()));
        }
        if self.rows != b.rows {
            return Err(Error::DimMismatch(format!(
                "solve: {}x{} against rhs with {} rows",
                self.rows, self.cols, b.rows
            )));
        }
        let f = self.field;
        let aug_cols = self.cols + b.cols;
        let mut red = RowReducer::new(f, aug_cols);
        for r in 1..=self.rows {
            let mut row = self.row_vec(r);
            row.extend(b.row_vec(r));
            red.insert(row);
        }
        // a pivot inside the rhs columns means the system is inconsistent
        if red.pivots().iter().any(|&c| c >= self.cols) {
            return Ok(None);
        }
        let mut x = Mat::zero(f, self.cols, b.cols);
        for (k, &p) in red.pivots().iter().enumerate() {
            for c in 1..=b.cols {
                x.set(p + 1, c, red.rows()[k][self.cols + c - 1].clone());
            }
        }
        Ok(Some(x))
    }
}

fn check_block_index(part: &Partition, i: usize, j: usize) -> Result<()> {
    if !(1..=part.t()).contains(&i) || !(1..=part.t()).contains(&j) {
        return Err(Error::IndexOutOfRange(format!(
            "block ({i},{j}) for a partition with t = {}",
            part.t()
        )));
    }
    Ok(())
}

impl fmt::Display for Mat {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let strs: Vec<Vec<String>> = (1..=self.rows)
            .map(|r| (1..=self.cols).map(|c| self.at(r, c).to_string()).collect())
            .collect();
        let width = strs
            .iter()
            .flatten()
            .map(String::len)
            .max()
            .unwrap_or(1);
        for (i, row) in strs.iter().enumerate() {
            if i > 0 {
                writeln!(f)?;
            }
            write!(f, "[")?;
            for (j, s) in row.iter().enumerate() {
                if j > 0 {
                    write!(f, " ")?;
                }
                write!(f, "{s:>width$}")?;
            }
            write!(f, "]")?;
        }
        if self.rows == 0 {
            write!(f, "[]")?;
        }
        Ok(())
    }
}

/// Incremental Gauss-Jordan elimination.
///
/// Rows are kept in reduced row echelon form at all times: each stored row
/// has a leading 1 at its pivot column, that column is zero in every other
/// stored row, and rows are sorted by pivot column.
pub struct RowReducer {
    field: Field,
    width: usize,
    rows: Vec<Vec<Scalar>>,
    pivots: Vec<usize>,
}

impl RowReducer {
    pub fn new(field: Field, width: usize) -> Self {
        RowReducer {
            field,
            width,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn rank(&self) -> usize {
        self.rows.len()
    }

    /// Pivot columns, 0-based, strictly increasing.
    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    pub fn rows(&self) -> &[Vec<Scalar>] {
        &self.rows
    }

    pub fn width(&self) -> usize {
        self.width
    }

    /// Reduces `row` against the stored rows in place.
    pub fn reduce(&self, row: &mut [Scalar]) {
        assert_eq!(row.len(), self.width);
        let f = self.field;
        for (k, &p) in self.pivots.iter().enumerate() {
            if row[p].is_zero() {
                continue;
            }
            let coef = row[p].clone();
            let prow = &self.rows[k];
            for c in p..self.width {
                if !prow[c].is_zero() {
                    row[c] = f.sub(&row[c], &f.mul(&coef, &prow[c]));
                }
            }
        }
    }

    /// True iff `row` lies in the span of the inserted rows.
    pub fn contains(&self, row: &[Scalar]) -> bool {
        let mut r = row.to_vec();
        self.reduce(&mut r);
        r.iter().all(Scalar::is_zero)
    }

    /// Inserts a row; returns its pivot column (0-based) if it was
    /// independent of the rows already present.
    pub fn insert(&mut self, mut row: Vec<Scalar>) -> Option<usize> {
        self.reduce(&mut row);
        let p = row.iter().position(|x| !x.is_zero())?;
        let f = self.field;
        let inv = f.inv(&row[p]).expect("leading entry is nonzero");
        for c in p..self.width {
            if !row[c].is_zero() {
                row[c] = f.mul(&row[c], &inv);
            }
        }
        // clear the new pivot column from every stored row
        for k in 0..self.rows.len() {
            if self.rows[k][p].is_zero() {
                continue;
            }
            let coef = self.rows[k][p].clone();
            for c in p..self.width {
                if !row[c].is_zero() {
                    self.rows[k][c] = f.sub(&self.rows[k][c], &f.mul(&coef, &row[c]));
                }
            }
        }
        let pos = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(pos, p);
        self.rows.insert(pos, row);
        Some(p)
    }

    /// Kernel basis of the inserted rows seen as a coefficient matrix.
    pub fn nullspace_cols(&self) -> Vec<Vec<Scalar>> {
        let f = self.field;
        let mut out = Vec::new();
        let mut next_pivot = 0;
        for c in 0..self.width {
            if next_pivot < self.pivots.len() && self.pivots[next_pivot] == c {
                next_pivot += 1;
                continue;
            }
            let mut v = vec![f.zero(); self.width];
            v[c] = f.one();
            for (k, &p) in self.pivots.iter().enumerate() {
                v[p] = f.neg(&self.rows[k][c]);
            }
            out.push(v);
        }
        out
    }
}
