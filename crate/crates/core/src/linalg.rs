//! Dense exact linear algebra over the rationals.

use std::fmt;
use std::ops::{Index, IndexMut};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::scalar::Scalar;

#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize, Default)]
#[serde(transparent)]
pub struct Vector(pub Vec<Scalar>);

impl Vector {
    pub fn zeros(len: usize) -> Self {
        Vector(vec![Scalar::zero(); len])
    }

    pub fn unit(len: usize, i: usize) -> Self {
        let mut v = Self::zeros(len);
        v.0[i] = Scalar::one();
        v
    }

    pub fn from_ints(xs: &[i64]) -> Self {
        Vector(xs.iter().map(|&x| Scalar::from_int(x)).collect())
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_zero(&self) -> bool {
        self.0.iter().all(Scalar::is_zero)
    }

    pub fn entries(&self) -> &[Scalar] {
        &self.0
    }

    pub fn iter(&self) -> std::slice::Iter<'_, Scalar> {
        self.0.iter()
    }

    /// Nonzero entries as `(index, value)` pairs.
    pub fn support(&self) -> impl Iterator<Item = (usize, &Scalar)> {
        self.0.iter().enumerate().filter(|(_, x)| !x.is_zero())
    }

    pub fn add(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn sub(&self, other: &Vector) -> Vector {
        debug_assert_eq!(self.len(), other.len());
        Vector(self.0.iter().zip(&other.0).map(|(a, b)| a - b).collect())
    }

    pub fn scale(&self, c: &Scalar) -> Vector {
        Vector(self.0.iter().map(|a| a * c).collect())
    }

    /// `self += c * other`
    pub fn axpy(&mut self, c: &Scalar, other: &Vector) {
        if c.is_zero() {
            return;
        }
        for (a, b) in self.0.iter_mut().zip(&other.0) {
            a.add_mul(c, b);
        }
    }

    pub fn dot(&self, other: &Vector) -> Scalar {
        let mut acc = Scalar::zero();
        for (a, b) in self.0.iter().zip(&other.0) {
            acc.add_mul(a, b);
        }
        acc
    }

    pub fn neg(&self) -> Vector {
        Vector(self.0.iter().map(|a| -a).collect())
    }

    pub fn to_strings(&self) -> Vec<String> {
        self.0.iter().map(Scalar::to_string).collect()
    }
}

impl Index<usize> for Vector {
    type Output = Scalar;
    fn index(&self, i: usize) -> &Scalar {
        &self.0[i]
    }
}

impl IndexMut<usize> for Vector {
    fn index_mut(&mut self, i: usize) -> &mut Scalar {
        &mut self.0[i]
    }
}

impl fmt::Debug for Vector {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[{}]", self.to_strings().join(", "))
    }
}

impl FromIterator<Scalar> for Vector {
    fn from_iter<I: IntoIterator<Item = Scalar>>(iter: I) -> Self {
        Vector(iter.into_iter().collect())
    }
}

/// Row-major dense matrix.
#[derive(Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Matrix {
    rows: usize,
    cols: usize,
    data: Vec<Scalar>,
}

impl Matrix {
    pub fn new(rows: usize, cols: usize, data: Vec<Scalar>) -> Result<Self> {
        if data.len() != rows * cols {
            return Err(Error::Dimension(format!(
                "{} entries for a {rows}x{cols} matrix",
                data.len()
            )));
        }
        Ok(Matrix { rows, cols, data })
    }

    pub fn zeros(rows: usize, cols: usize) -> Self {
        Matrix {
            rows,
            cols,
            data: vec![Scalar::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = Scalar::one();
        }
        m
    }

    pub fn from_ints(rows: usize, cols: usize, xs: &[i64]) -> Self {
        Self::new(rows, cols, xs.iter().map(|&x| Scalar::from_int(x)).collect())
            .expect("shape matches")
    }

    pub fn from_rows(rows: &[Vector], cols: usize) -> Self {
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.0.iter().cloned());
        }
        Matrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Matrix whose columns are the given vectors.
    pub fn from_columns(columns: &[Vector], rows: usize) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "ragged columns");
            for (i, x) in c.support() {
                m[(i, j)] = x.clone();
            }
        }
        m
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn data(&self) -> &[Scalar] {
        &self.data
    }

    pub fn row(&self, i: usize) -> Vector {
        Vector(self.data[i * self.cols..(i + 1) * self.cols].to_vec())
    }

    pub fn column(&self, j: usize) -> Vector {
        (0..self.rows).map(|i| self[(i, j)].clone()).collect()
    }

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn is_identity(&self) -> bool {
        self.is_square() && *self == Self::identity(self.rows)
    }

    pub fn transpose(&self) -> Matrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t[(j, i)] = self[(i, j)].clone();
            }
        }
        t
    }

    pub fn mul_vec(&self, v: &Vector) -> Result<Vector> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!(
                "vector of length {} against {} columns",
                v.len(),
                self.cols
            )));
        }
        let mut out = Vector::zeros(self.rows);
        for (j, x) in v.support() {
            for i in 0..self.rows {
                out.0[i].add_mul(&self[(i, j)], x);
            }
        }
        Ok(out)
    }

    pub fn mul(&self, other: &Matrix) -> Result<Matrix> {
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "{}x{} times {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    out.data[i * other.cols + j].add_mul(a, &other[(k, j)]);
                }
            }
        }
        Ok(out)
    }

    pub fn rank(&self) -> usize {
        rref(self).1.len()
    }

    /// Exact inverse, `None` if singular or not square.
    pub fn inverse(&self) -> Option<Matrix> {
        if !self.is_square() {
            return None;
        }
        let n = self.rows;
        let mut aug = Self::zeros(n, 2 * n);
        for i in 0..n {
            for j in 0..n {
                aug[(i, j)] = self[(i, j)].clone();
            }
            aug[(i, n + i)] = Scalar::one();
        }
        let (r, pivots) = rref(&aug);
        if pivots.len() < n || pivots[n - 1] != n - 1 {
            return None;
        }
        let mut inv = Self::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                inv[(i, j)] = r[(i, n + j)].clone();
            }
        }
        Some(inv)
    }

    pub fn to_string_rows(&self) -> Vec<Vec<String>> {
        (0..self.rows)
            .map(|i| self.row(i).to_strings())
            .collect()
    }
}

impl Index<(usize, usize)> for Matrix {
    type Output = Scalar;
    fn index(&self, (i, j): (usize, usize)) -> &Scalar {
        &self.data[i * self.cols + j]
    }
}

impl IndexMut<(usize, usize)> for Matrix {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut Scalar {
        &mut self.data[i * self.cols + j]
    }
}

impl fmt::Debug for Matrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "Matrix {}x{}", self.rows, self.cols)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

/// Eliminate column `col` from `target` using a row whose entry at `col` is 1.
fn eliminate(target: &mut [Scalar], pivot_row: &[Scalar], nz: &[usize], col: usize) {
    let factor = target[col].clone();
    if factor.is_zero() {
        return;
    }
    for &k in nz {
        let d = &factor * &pivot_row[k];
        target[k] -= &d;
    }
}

/// Reduced row-echelon form and the pivot columns.
///
/// Pivot rows are chosen as the first candidate whose entry is `±1`, else the
/// first nonzero, so the result is a deterministic function of the input.
pub fn rref(m: &Matrix) -> (Matrix, Vec<usize>) {
    let (rows, cols) = (m.rows, m.cols);
    let mut a: Vec<Vec<Scalar>> = (0..rows)
        .map(|i| m.data[i * cols..(i + 1) * cols].to_vec())
        .collect();
    let mut pivots = Vec::new();
    let mut r = 0;
    for c in 0..cols {
        if r == rows {
            break;
        }
        let mut chosen = None;
        for (i, row) in a.iter().enumerate().skip(r) {
            let x = &row[c];
            if x.is_zero() {
                continue;
            }
            if chosen.is_none() {
                chosen = Some(i);
            }
            if matches!(x, Scalar::Small(1, 1) | Scalar::Small(-1, 1)) {
                chosen = Some(i);
                break;
            }
        }
        let Some(p) = chosen else { continue };
        a.swap(r, p);
        let inv = a[r][c].recip().expect("nonzero pivot");
        if !inv.is_one() {
            for x in a[r].iter_mut() {
                if !x.is_zero() {
                    *x *= &inv;
                }
            }
        }
        let pivot_row = a[r].clone();
        let nz: Vec<usize> = (0..cols).filter(|&k| !pivot_row[k].is_zero()).collect();
        for (i, row) in a.iter_mut().enumerate() {
            if i != r {
                eliminate(row, &pivot_row, &nz, c);
            }
        }
        pivots.push(c);
        r += 1;
    }
    let data = a.into_iter().flatten().collect();
    (Matrix { rows, cols, data }, pivots)
}

/// Basis of `{ v : m v = 0 }`, one vector per free column in increasing order.
pub fn kernel_basis(m: &Matrix) -> Vec<Vector> {
    let (r, pivots) = rref(m);
    let mut is_pivot = vec![false; m.cols];
    for &p in &pivots {
        is_pivot[p] = true;
    }
    (0..m.cols)
        .filter(|&f| !is_pivot[f])
        .map(|f| {
            let mut v = Vector::zeros(m.cols);
            v.0[f] = Scalar::one();
            for (row, &p) in pivots.iter().enumerate() {
                v.0[p] = -&r[(row, f)];
            }
            v
        })
        .collect()
}

/// Basis of the column space: the pivot columns of `m` itself.
pub fn image_basis(m: &Matrix) -> Vec<Vector> {
    let (_, pivots) = rref(m);
    pivots.into_iter().map(|j| m.column(j)).collect()
}

/// Some `v` with `m v = b`, or `None` when the system is inconsistent.
pub fn solve(m: &Matrix, b: &Vector) -> Result<Option<Vector>> {
    if b.len() != m.rows {
        return Err(Error::Dimension(format!(
            "right-hand side of length {} against {} rows",
            b.len(),
            m.rows
        )));
    }
    let mut aug = Matrix::zeros(m.rows, m.cols + 1);
    for i in 0..m.rows {
        for j in 0..m.cols {
            aug[(i, j)] = m[(i, j)].clone();
        }
        aug[(i, m.cols)] = b[i].clone();
    }
    let (r, pivots) = rref(&aug);
    if pivots.last() == Some(&m.cols) {
        return Ok(None);
    }
    let mut v = Vector::zeros(m.cols);
    for (row, &p) in pivots.iter().enumerate() {
        v.0[p] = r[(row, m.cols)].clone();
    }
    Ok(Some(v))
}

/// Incrementally maintained row space in reduced echelon form.
///
/// `reduce` returns the canonical representative of a vector modulo the
/// subspace, which is what makes class equality decidable.
#[derive(Clone, Debug)]
pub struct Subspace {
    ambient: usize,
    rows: Vec<Vector>,
    pivots: Vec<usize>,
}

impl Subspace {
    pub fn new(ambient: usize) -> Self {
        Subspace {
            ambient,
            rows: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn spanned_by<'a>(ambient: usize, vs: impl IntoIterator<Item = &'a Vector>) -> Self {
        let mut s = Self::new(ambient);
        for v in vs {
            s.insert(v);
        }
        s
    }

    pub fn ambient(&self) -> usize {
        self.ambient
    }

    pub fn dim(&self) -> usize {
        self.rows.len()
    }

    /// The reduced echelon basis.
    pub fn basis(&self) -> &[Vector] {
        &self.rows
    }

    pub fn reduce(&self, v: &Vector) -> Vector {
        let mut out = v.clone();
        for (row, &p) in self.rows.iter().zip(&self.pivots) {
            if !out.0[p].is_zero() {
                let c = -&out.0[p];
                out.axpy(&c, row);
            }
        }
        out
    }

    pub fn contains(&self, v: &Vector) -> bool {
        self.reduce(v).is_zero()
    }

    /// Adds `v` to the span; returns whether the dimension grew.
    pub fn insert(&mut self, v: &Vector) -> bool {
        assert_eq!(v.len(), self.ambient, "vector outside ambient space");
        let mut r = self.reduce(v);
        let Some(p) = r.0.iter().position(|x| !x.is_zero()) else {
            return false;
        };
        let inv = r.0[p].recip().expect("nonzero");
        r = r.scale(&inv);
        for row in &mut self.rows {
            if !row.0[p].is_zero() {
                let c = -&row.0[p];
                row.axpy(&c, &r);
            }
        }
        let at = self.pivots.partition_point(|&q| q < p);
        self.pivots.insert(at, p);
        self.rows.insert(at, r);
        true
    }
}

/// Vectors from `ambient` whose classes form a basis of `span(ambient) / span(sub)`.
///
/// Candidates are scanned in the given order and kept when independent of
/// everything before them, so callers control which representatives win.
pub fn quotient_representatives(sub: &[Vector], ambient: &[Vector]) -> Result<Vec<Vector>> {
    let Some(len) = sub.first().or(ambient.first()).map(Vector::len) else {
        return Ok(Vec::new());
    };
    let span = Subspace::spanned_by(len, ambient);
    if let Some(bad) = sub.iter().find(|v| !span.contains(v)) {
        return Err(Error::NotContained(format!("{bad:?}")));
    }
    let mut acc = Subspace::spanned_by(len, sub);
    Ok(ambient
        .iter()
        .filter(|v| acc.insert(v))
        .cloned()
        .collect())
}
