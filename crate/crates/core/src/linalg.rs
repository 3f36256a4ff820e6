//! Exact rational linear algebra over `BigRational`.
//!
//! Matrices act on column vectors: entry `(r, c)` is the coefficient of `e_r`
//! in the image of `e_c`. A rank-3 tensor `T` with dims `(d1, d2, d3)` encodes
//! the bilinear map `(e_i, e_j) -> sum_k T[i][j][k] e_k`.

use std::collections::BTreeSet;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num::{BigInt, BigRational, One, Signed, Zero};

use crate::error::{Error, Result};

pub type Rational = BigRational;
pub type Vector = Vec<Rational>;

pub fn int(n: i64) -> Rational {
    Rational::from_integer(BigInt::from(n))
}

/// `n / d` in lowest terms. Panics if `d == 0`.
pub fn frac(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

/// Parses `"p"` or `"p/q"` (optional sign on `p`, surrounding whitespace ignored).
pub fn parse_rational(s: &str) -> Result<Rational> {
    let t = s.trim();
    let bad = |m: &str| Error::parse(format!("rational {s:?}"), m);
    let (num, den) = match t.split_once('/') {
        Some((n, d)) => (n.trim(), Some(d.trim())),
        None => (t, None),
    };
    let n: BigInt = num.parse().map_err(|_| bad("numerator is not an integer"))?;
    match den {
        None => Ok(Rational::from_integer(n)),
        Some(d) => {
            let d: BigInt = d.parse().map_err(|_| bad("denominator is not an integer"))?;
            if d.is_zero() {
                return Err(bad("zero denominator"));
            }
            Ok(Rational::new(n, d))
        }
    }
}

/// Canonical text form: `"p"` when the denominator is one, otherwise `"p/q"`.
pub fn format_rational(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

pub fn zero_vector(n: usize) -> Vector {
    vec![Rational::zero(); n]
}

pub fn unit_vector(n: usize, i: usize) -> Vector {
    let mut v = zero_vector(n);
    v[i] = Rational::one();
    v
}

pub fn is_zero_vector(v: &[Rational]) -> bool {
    v.iter().all(Zero::is_zero)
}

/// `acc += c * v`
pub fn axpy(acc: &mut [Rational], c: &Rational, v: &[Rational]) {
    debug_assert_eq!(acc.len(), v.len());
    if c.is_zero() {
        return;
    }
    for (a, b) in acc.iter_mut().zip(v) {
        if !b.is_zero() {
            *a += c * b;
        }
    }
}

pub fn add_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x + y).collect()
}

pub fn sub_vectors(a: &[Rational], b: &[Rational]) -> Vector {
    a.iter().zip(b).map(|(x, y)| x - y).collect()
}

pub fn scale_vector(c: &Rational, v: &[Rational]) -> Vector {
    v.iter().map(|x| c * x).collect()
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatMatrix {
    rows: usize,
    cols: usize,
    entries: Vec<Rational>,
}

impl fmt::Debug for RatMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatMatrix{}x{}[", self.rows, self.cols)?;
        for r in 0..self.rows {
            if r > 0 {
                write!(f, "; ")?;
            }
            let row: Vec<String> = self.row(r).iter().map(format_rational).collect();
            write!(f, "{}", row.join(" "))?;
        }
        write!(f, "]")
    }
}

impl RatMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        RatMatrix {
            rows,
            cols,
            entries: vec![Rational::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.entries[i * n + i] = Rational::one();
        }
        m
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> Rational) -> Self {
        let mut entries = Vec::with_capacity(rows * cols);
        for r in 0..rows {
            for c in 0..cols {
                entries.push(f(r, c));
            }
        }
        RatMatrix { rows, cols, entries }
    }

    pub fn from_rows(rows: Vec<Vec<Rational>>) -> Result<Self> {
        let n = rows.len();
        let m = rows.first().map_or(0, Vec::len);
        if rows.iter().any(|r| r.len() != m) {
            return Err(Error::dims("ragged matrix rows"));
        }
        Ok(RatMatrix {
            rows: n,
            cols: m,
            entries: rows.into_iter().flatten().collect(),
        })
    }

    /// Builds the matrix whose `c`-th column is `columns[c]`.
    pub fn from_columns(rows: usize, columns: &[Vector]) -> Result<Self> {
        if columns.iter().any(|c| c.len() != rows) {
            return Err(Error::dims("column length differs from row count"));
        }
        Ok(Self::from_fn(rows, columns.len(), |r, c| columns[c][r].clone()))
    }

    pub fn diagonal(diag: &[Rational]) -> Self {
        let n = diag.len();
        Self::from_fn(n, n, |r, c| if r == c { diag[r].clone() } else { Rational::zero() })
    }

    /// Matrix from flat row-major coordinates (the layout used for operator spaces).
    pub fn from_flat(rows: usize, cols: usize, flat: &[Rational]) -> Self {
        assert_eq!(flat.len(), rows * cols);
        RatMatrix {
            rows,
            cols,
            entries: flat.to_vec(),
        }
    }

    pub fn as_flat(&self) -> &[Rational] {
        &self.entries
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

    pub fn get(&self, r: usize, c: usize) -> &Rational {
        &self.entries[r * self.cols + c]
    }

    pub fn set(&mut self, r: usize, c: usize, v: Rational) {
        self.entries[r * self.cols + c] = v;
    }

    pub fn row(&self, r: usize) -> &[Rational] {
        &self.entries[r * self.cols..(r + 1) * self.cols]
    }

    pub fn column(&self, c: usize) -> Vector {
        (0..self.rows).map(|r| self.get(r, c).clone()).collect()
    }

    pub fn to_rows(&self) -> Vec<Vector> {
        (0..self.rows).map(|r| self.row(r).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    pub fn is_identity(&self) -> bool {
        self.is_square()
            && (0..self.rows).all(|r| {
                (0..self.cols).all(|c| {
                    let v = self.get(r, c);
                    if r == c {
                        v.is_one()
                    } else {
                        v.is_zero()
                    }
                })
            })
    }

    pub fn apply(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.cols, "vector length {} vs {} columns", v.len(), self.cols);
        let mut out = zero_vector(self.rows);
        for (c, x) in v.iter().enumerate() {
            if x.is_zero() {
                continue;
            }
            for (r, o) in out.iter_mut().enumerate() {
                let m = self.get(r, c);
                if !m.is_zero() {
                    *o += m * x;
                }
            }
        }
        out
    }

    pub fn try_mul(&self, other: &RatMatrix) -> Result<RatMatrix> {
        if self.cols != other.rows {
            return Err(Error::dims(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let mut out = RatMatrix::zeros(self.rows, other.cols);
        for r in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(r, k);
                if a.is_zero() {
                    continue;
                }
                for c in 0..other.cols {
                    let b = other.get(k, c);
                    if !b.is_zero() {
                        out.entries[r * other.cols + c] += a * b;
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn transpose(&self) -> RatMatrix {
        Self::from_fn(self.cols, self.rows, |r, c| self.get(c, r).clone())
    }

    pub fn scale(&self, s: &Rational) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| s * x).collect(),
        }
    }

    pub fn pow(&self, k: u32) -> RatMatrix {
        assert!(self.is_square(), "pow of a non-square matrix");
        let mut out = RatMatrix::identity(self.rows);
        for _ in 0..k {
            out = &out * self;
        }
        out
    }

    /// `diag(self, other)` acting on the direct sum of the two spaces.
    pub fn block_diag(&self, other: &RatMatrix) -> RatMatrix {
        let rows = self.rows + other.rows;
        let cols = self.cols + other.cols;
        Self::from_fn(rows, cols, |r, c| {
            if r < self.rows && c < self.cols {
                self.get(r, c).clone()
            } else if r >= self.rows && c >= self.cols {
                other.get(r - self.rows, c - self.cols).clone()
            } else {
                Rational::zero()
            }
        })
    }

    pub fn commutes_with(&self, other: &RatMatrix) -> Result<bool> {
        if !self.is_square() || self.rows != other.rows || !other.is_square() {
            return Err(Error::dims("commutation check needs square matrices of equal size"));
        }
        Ok((self * other) == (other * self))
    }

    pub fn rank(&self) -> usize {
        let mut ech = RowEchelon::new(self.cols);
        for r in 0..self.rows {
            ech.insert_dense(self.row(r));
        }
        ech.rank()
    }

    pub fn nullspace(&self) -> SubspaceBasis {
        nullspace_of_rows(self.cols, (0..self.rows).map(|r| dense_to_sparse(self.row(r))))
    }

    pub fn invert(&self) -> Result<RatMatrix> {
        if !self.is_square() {
            return Err(Error::dims("inverse of a non-square matrix"));
        }
        let n = self.rows;
        let mut a: Vec<Vector> = self.to_rows();
        let mut inv: Vec<Vector> = RatMatrix::identity(n).to_rows();
        for col in 0..n {
            let Some(p) = (col..n).find(|&r| !a[r][col].is_zero()) else {
                return Err(Error::SingularMatrix { rank: self.rank(), dim: n });
            };
            a.swap(col, p);
            inv.swap(col, p);
            let pivot = a[col][col].clone();
            for x in a[col].iter_mut().chain(inv[col].iter_mut()) {
                *x /= &pivot;
            }
            for r in 0..n {
                if r == col || a[r][col].is_zero() {
                    continue;
                }
                let f = a[r][col].clone();
                let (prow, pinv) = (a[col].clone(), inv[col].clone());
                axpy(&mut a[r], &-f.clone(), &prow);
                axpy(&mut inv[r], &-f, &pinv);
            }
        }
        RatMatrix::from_rows(inv)
    }
}

impl Mul for &RatMatrix {
    type Output = RatMatrix;
    fn mul(self, rhs: &RatMatrix) -> RatMatrix {
        self.try_mul(rhs).expect("matrix product dimension mismatch")
    }
}

impl Add for &RatMatrix {
    type Output = RatMatrix;
    fn add(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: add_vectors(&self.entries, &rhs.entries),
        }
    }
}

impl Sub for &RatMatrix {
    type Output = RatMatrix;
    fn sub(self, rhs: &RatMatrix) -> RatMatrix {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: sub_vectors(&self.entries, &rhs.entries),
        }
    }
}

impl Neg for &RatMatrix {
    type Output = RatMatrix;
    fn neg(self) -> RatMatrix {
        RatMatrix {
            rows: self.rows,
            cols: self.cols,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatTensor3 {
    dims: [usize; 3],
    entries: Vec<Rational>,
}

impl fmt::Debug for RatTensor3 {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatTensor3{:?}{{", self.dims)?;
        let mut first = true;
        for (i, j, k, v) in self.nonzero_entries() {
            if !first {
                write!(f, ", ")?;
            }
            first = false;
            write!(f, "({i},{j},{k}):{}", format_rational(v))?;
        }
        write!(f, "}}")
    }
}

impl RatTensor3 {
    pub fn zeros(d1: usize, d2: usize, d3: usize) -> Self {
        RatTensor3 {
            dims: [d1, d2, d3],
            entries: vec![Rational::zero(); d1 * d2 * d3],
        }
    }

    /// Fills fiber `(i, j)` with `f(i, j)`, which must have length `d3`.
    pub fn from_fibers(d1: usize, d2: usize, d3: usize, mut f: impl FnMut(usize, usize) -> Vector) -> Self {
        let mut entries = Vec::with_capacity(d1 * d2 * d3);
        for i in 0..d1 {
            for j in 0..d2 {
                let fib = f(i, j);
                assert_eq!(fib.len(), d3, "fiber length");
                entries.extend(fib);
            }
        }
        RatTensor3 { dims: [d1, d2, d3], entries }
    }

    pub fn from_flat(dims: [usize; 3], flat: &[Rational]) -> Self {
        assert_eq!(flat.len(), dims[0] * dims[1] * dims[2]);
        RatTensor3 {
            dims,
            entries: flat.to_vec(),
        }
    }

    pub fn as_flat(&self) -> &[Rational] {
        &self.entries
    }

    pub fn dims(&self) -> [usize; 3] {
        self.dims
    }

    fn index(&self, i: usize, j: usize, k: usize) -> usize {
        (i * self.dims[1] + j) * self.dims[2] + k
    }

    pub fn get(&self, i: usize, j: usize, k: usize) -> &Rational {
        &self.entries[self.index(i, j, k)]
    }

    pub fn set(&mut self, i: usize, j: usize, k: usize, v: Rational) {
        let idx = self.index(i, j, k);
        self.entries[idx] = v;
    }

    pub fn fiber(&self, i: usize, j: usize) -> &[Rational] {
        let start = self.index(i, j, 0);
        &self.entries[start..start + self.dims[2]]
    }

    pub fn nonzero_entries(&self) -> impl Iterator<Item = (usize, usize, usize, &Rational)> + '_ {
        let [_, d2, d3] = self.dims;
        self.entries
            .iter()
            .enumerate()
            .filter(|(_, v)| !v.is_zero())
            .map(move |(idx, v)| (idx / (d2 * d3), (idx / d3) % d2, idx % d3, v))
    }

    pub fn is_zero(&self) -> bool {
        self.entries.iter().all(Zero::is_zero)
    }

    /// Evaluates the bilinear map on `(x, y)`.
    pub fn apply(&self, x: &[Rational], y: &[Rational]) -> Vector {
        assert_eq!(x.len(), self.dims[0], "first argument length");
        assert_eq!(y.len(), self.dims[1], "second argument length");
        let mut out = zero_vector(self.dims[2]);
        for (i, xi) in x.iter().enumerate() {
            if xi.is_zero() {
                continue;
            }
            for (j, yj) in y.iter().enumerate() {
                if yj.is_zero() {
                    continue;
                }
                let fib = self.fiber(i, j);
                if fib.iter().all(Zero::is_zero) {
                    continue;
                }
                let c = xi * yj;
                axpy(&mut out, &c, fib);
            }
        }
        out
    }

    /// Tensor of `(x, y) -> T(y, x)`, i.e. composition with the flip.
    pub fn swap12(&self) -> Result<RatTensor3> {
        let [d1, d2, d3] = self.dims;
        if d1 != d2 {
            return Err(Error::dims(format!("swap12 needs d1 == d2, got {d1} and {d2}")));
        }
        Ok(Self::from_fibers(d1, d2, d3, |i, j| self.fiber(j, i).to_vec()))
    }

    /// `T o (left (x) right)`: the tensor of `(x, y) -> T(left x, right y)`.
    pub fn precompose(&self, left: &RatMatrix, right: &RatMatrix) -> RatTensor3 {
        assert_eq!(left.rows(), self.dims[0]);
        assert_eq!(right.rows(), self.dims[1]);
        let lcols: Vec<Vector> = (0..left.cols()).map(|c| left.column(c)).collect();
        let rcols: Vec<Vector> = (0..right.cols()).map(|c| right.column(c)).collect();
        Self::from_fibers(left.cols(), right.cols(), self.dims[2], |i, j| self.apply(&lcols[i], &rcols[j]))
    }

    /// `m o T`.
    pub fn postcompose(&self, m: &RatMatrix) -> RatTensor3 {
        assert_eq!(m.cols(), self.dims[2]);
        Self::from_fibers(self.dims[0], self.dims[1], m.rows(), |i, j| m.apply(self.fiber(i, j)))
    }

    pub fn scale(&self, s: &Rational) -> RatTensor3 {
        RatTensor3 {
            dims: self.dims,
            entries: self.entries.iter().map(|x| s * x).collect(),
        }
    }
}

impl Add for &RatTensor3 {
    type Output = RatTensor3;
    fn add(self, rhs: &RatTensor3) -> RatTensor3 {
        assert_eq!(self.dims, rhs.dims);
        RatTensor3 {
            dims: self.dims,
            entries: add_vectors(&self.entries, &rhs.entries),
        }
    }
}

impl Sub for &RatTensor3 {
    type Output = RatTensor3;
    fn sub(self, rhs: &RatTensor3) -> RatTensor3 {
        assert_eq!(self.dims, rhs.dims);
        RatTensor3 {
            dims: self.dims,
            entries: sub_vectors(&self.entries, &rhs.entries),
        }
    }
}

impl Neg for &RatTensor3 {
    type Output = RatTensor3;
    fn neg(self) -> RatTensor3 {
        RatTensor3 {
            dims: self.dims,
            entries: self.entries.iter().map(|x| -x).collect(),
        }
    }
}

pub type SparseRow = Vec<(usize, Rational)>;

pub fn dense_to_sparse(v: &[Rational]) -> SparseRow {
    v.iter()
        .enumerate()
        .filter(|(_, x)| !x.is_zero())
        .map(|(i, x)| (i, x.clone()))
        .collect()
}

/// Incremental row reduction over sparse rows.
///
/// Each stored row has leading coefficient one at its pivot and no entries
/// left of it. `into_rref` finishes the back substitution.
pub(crate) struct RowEchelon {
    ncols: usize,
    rows: Vec<(usize, SparseRow)>,
    pivot_row: Vec<Option<usize>>,
    acc: Vec<Rational>,
}

impl RowEchelon {
    pub(crate) fn new(ncols: usize) -> Self {
        RowEchelon {
            ncols,
            rows: Vec::new(),
            pivot_row: vec![None; ncols],
            acc: vec![Rational::zero(); ncols],
        }
    }

    pub(crate) fn rank(&self) -> usize {
        self.rows.len()
    }

    pub(crate) fn insert_dense(&mut self, row: &[Rational]) -> bool {
        self.insert(dense_to_sparse(row))
    }

    /// Reduces `row` against the stored pivots. Returns true (and stores the
    /// remainder) when it was independent.
    pub(crate) fn insert(&mut self, row: SparseRow) -> bool {
        let rest = self.reduce_sparse(row);
        let Some((lead, lead_val)) = rest.first().cloned() else {
            return false;
        };
        let inv = lead_val.recip();
        let normalized: SparseRow = rest.into_iter().map(|(c, v)| (c, v * &inv)).collect();
        self.pivot_row[lead] = Some(self.rows.len());
        self.rows.push((lead, normalized));
        true
    }

    /// Remainder of `row` after eliminating every stored pivot column.
    pub(crate) fn reduce_sparse(&mut self, row: SparseRow) -> SparseRow {
        let mut live: BTreeSet<usize> = BTreeSet::new();
        for (c, v) in row {
            assert!(c < self.ncols, "column {c} out of range {}", self.ncols);
            if v.is_zero() {
                continue;
            }
            self.acc[c] += v;
            live.insert(c);
        }
        let mut rest = SparseRow::new();
        while let Some(c) = live.pop_first() {
            let val = std::mem::replace(&mut self.acc[c], Rational::zero());
            if val.is_zero() {
                continue;
            }
            match self.pivot_row[c] {
                Some(p) => {
                    for (col, x) in &self.rows[p].1 {
                        if *col == c {
                            continue;
                        }
                        self.acc[*col] -= &val * x;
                        live.insert(*col);
                    }
                }
                None => rest.push((c, val)),
            }
        }
        rest
    }

    /// Reduced row echelon form, rows ordered by pivot column.
    pub(crate) fn into_rref(mut self) -> Vec<(usize, SparseRow)> {
        let mut order: Vec<usize> = (0..self.rows.len()).collect();
        order.sort_by_key(|&i| std::cmp::Reverse(self.rows[i].0));
        for idx in order {
            let (pivot, row) = std::mem::take(&mut self.rows[idx]);
            let mut acc: Vec<(usize, Rational)> = Vec::new();
            let mut live: BTreeSet<usize> = BTreeSet::new();
            for (c, v) in row {
                self.acc[c] += v;
                live.insert(c);
            }
            while let Some(c) = live.pop_first() {
                let val = std::mem::replace(&mut self.acc[c], Rational::zero());
                if val.is_zero() {
                    continue;
                }
                match self.pivot_row[c] {
                    // rows with a larger pivot are already fully reduced
                    Some(p) if c != pivot => {
                        for (col, x) in &self.rows[p].1 {
                            if *col == c {
                                continue;
                            }
                            self.acc[*col] -= &val * x;
                            live.insert(*col);
                        }
                    }
                    _ => acc.push((c, val)),
                }
            }
            self.rows[idx] = (pivot, acc);
        }
        let mut rows = self.rows;
        rows.sort_by_key(|r| r.0);
        rows
    }
}

/// Basis of `{v : row . v = 0 for every row}`, returned in reduced echelon form.
pub fn nullspace_of_rows(ncols: usize, rows: impl IntoIterator<Item = SparseRow>) -> SubspaceBasis {
    let mut ech = RowEchelon::new(ncols);
    for row in rows {
        ech.insert(row);
    }
    let rref = ech.into_rref();
    let mut is_pivot = vec![false; ncols];
    for (p, _) in &rref {
        is_pivot[*p] = true;
    }
    let mut kernel: Vec<Vector> = (0..ncols)
        .filter(|&c| !is_pivot[c])
        .map(|c| unit_vector(ncols, c))
        .collect();
    let free_index: Vec<Option<usize>> = {
        let mut k = 0;
        (0..ncols)
            .map(|c| {
                if is_pivot[c] {
                    None
                } else {
                    k += 1;
                    Some(k - 1)
                }
            })
            .collect()
    };
    for (p, row) in &rref {
        for (c, v) in row {
            if let Some(f) = free_index[*c] {
                kernel[f][*p] = -v.clone();
            }
        }
    }
    SubspaceBasis::from_spanning(ncols, kernel)
}

/// A subspace of `Q^n` stored as the rows of its reduced row echelon basis,
/// which is unique for the subspace.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SubspaceBasis {
    ambient_dim: usize,
    vectors: Vec<Vector>,
    pivots: Vec<usize>,
}

impl SubspaceBasis {
    pub fn zero(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: Vec::new(),
            pivots: Vec::new(),
        }
    }

    pub fn full(ambient_dim: usize) -> Self {
        SubspaceBasis {
            ambient_dim,
            vectors: (0..ambient_dim).map(|i| unit_vector(ambient_dim, i)).collect(),
            pivots: (0..ambient_dim).collect(),
        }
    }

    /// Echelonized basis of the span of `spanning` (which may be dependent).
    pub fn from_spanning(ambient_dim: usize, spanning: impl IntoIterator<Item = Vector>) -> Self {
        let mut ech = RowEchelon::new(ambient_dim);
        for v in spanning {
            assert_eq!(v.len(), ambient_dim, "spanning vector length");
            ech.insert_dense(&v);
        }
        let rref = ech.into_rref();
        let pivots = rref.iter().map(|(p, _)| *p).collect();
        let vectors = rref
            .into_iter()
            .map(|(_, row)| {
                let mut v = zero_vector(ambient_dim);
                for (c, x) in row {
                    v[c] = x;
                }
                v
            })
            .collect();
        SubspaceBasis {
            ambient_dim,
            vectors,
            pivots,
        }
    }

    pub fn ambient_dim(&self) -> usize {
        self.ambient_dim
    }

    pub fn dim(&self) -> usize {
        self.vectors.len()
    }

    pub fn vectors(&self) -> &[Vector] {
        &self.vectors
    }

    pub fn pivots(&self) -> &[usize] {
        &self.pivots
    }

    /// `v` minus its component along the pivot columns; zero iff `v` lies in the span.
    pub fn reduce(&self, v: &[Rational]) -> Vector {
        assert_eq!(v.len(), self.ambient_dim);
        let mut r = v.to_vec();
        for (p, b) in self.pivots.iter().zip(&self.vectors) {
            if r[*p].is_zero() {
                continue;
            }
            let c = -r[*p].clone();
            axpy(&mut r, &c, b);
        }
        r
    }

    pub fn contains(&self, v: &[Rational]) -> bool {
        is_zero_vector(&self.reduce(v))
    }

    /// Coordinates of `v` in this basis, if `v` is in the span.
    pub fn coordinates(&self, v: &[Rational]) -> Option<Vector> {
        if !self.contains(v) {
            return None;
        }
        Some(self.pivots.iter().map(|p| v[*p].clone()).collect())
    }

    pub fn is_subspace_of(&self, other: &SubspaceBasis) -> bool {
        self.ambient_dim == other.ambient_dim && self.vectors.iter().all(|v| other.contains(v))
    }

    /// Columns that are not pivots: the standard vectors at these positions
    /// span a complement of this subspace.
    pub fn complement_columns(&self) -> Vec<usize> {
        let mut is_pivot = vec![false; self.ambient_dim];
        for p in &self.pivots {
            is_pivot[*p] = true;
        }
        (0..self.ambient_dim).filter(|c| !is_pivot[*c]).collect()
    }
}

pub fn nullspace(m: &RatMatrix) -> SubspaceBasis {
    m.nullspace()
}

pub fn invert(m: &RatMatrix) -> Result<RatMatrix> {
    m.invert()
}

pub fn tensor_swap12(t: &RatTensor3) -> Result<RatTensor3> {
    t.swap12()
}

pub fn commute_check(m: &RatMatrix, n: &RatMatrix) -> Result<bool> {
    m.commutes_with(n)
}

/// Sign-aware absolute comparison helper used in reports.
pub fn is_positive(r: &Rational) -> bool {
    r.is_positive()
}
