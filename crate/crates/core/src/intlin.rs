//! Exact integer and rational linear algebra.
//!
//! Everything here works over arbitrary-precision integers. Matrices are
//! stored row-major; a `0 x n` matrix is a legal value and represents the
//! trivial map.

use std::fmt;
use std::ops::Mul;

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Coordinate vector with integer entries.
pub type IntVector = Vec<BigInt>;

#[derive(Clone, PartialEq, Eq, Hash)]
pub struct IntMatrix {
    rows: usize,
    cols: usize,
    data: Vec<BigInt>,
}

impl IntMatrix {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix {
            rows,
            cols,
            data: vec![BigInt::zero(); rows * cols],
        }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = BigInt::one();
        }
        m
    }

    /// Builds a matrix from row-major data. Panics if the length is wrong.
    pub fn from_vec(rows: usize, cols: usize, data: Vec<BigInt>) -> Self {
        assert_eq!(data.len(), rows * cols, "data length does not match shape");
        IntMatrix { rows, cols, data }
    }

    /// Builds a matrix from rows. Panics on ragged input.
    pub fn from_rows<T: Into<BigInt> + Clone>(rows: &[Vec<T>]) -> Self {
        let cols = rows.first().map_or(0, Vec::len);
        let mut data = Vec::with_capacity(rows.len() * cols);
        for r in rows {
            assert_eq!(r.len(), cols, "ragged rows");
            data.extend(r.iter().cloned().map(Into::into));
        }
        IntMatrix {
            rows: rows.len(),
            cols,
            data,
        }
    }

    /// Builds a matrix whose columns are the given vectors, each of length `rows`.
    pub fn from_columns(rows: usize, columns: &[IntVector]) -> Self {
        let mut m = Self::zeros(rows, columns.len());
        for (j, c) in columns.iter().enumerate() {
            assert_eq!(c.len(), rows, "column length does not match");
            for (i, x) in c.iter().enumerate() {
                m.data[i * columns.len() + j] = x.clone();
            }
        }
        m
    }

    pub fn diagonal<T: Into<BigInt> + Clone>(entries: &[T]) -> Self {
        let n = entries.len();
        let mut m = Self::zeros(n, n);
        for (i, x) in entries.iter().enumerate() {
            m.data[i * n + i] = x.clone().into();
        }
        m
    }

    /// Block-diagonal sum `a ⊕ b`.
    pub fn block_diag(a: &IntMatrix, b: &IntMatrix) -> Self {
        let mut m = Self::zeros(a.rows + b.rows, a.cols + b.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m.set(i, j, a.get(i, j).clone());
            }
        }
        for i in 0..b.rows {
            for j in 0..b.cols {
                m.set(a.rows + i, a.cols + j, b.get(i, j).clone());
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

    pub fn is_square(&self) -> bool {
        self.rows == self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &BigInt {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, value: BigInt) {
        self.data[i * self.cols + j] = value;
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> IntVector {
        (0..self.rows).map(|i| self.get(i, j).clone()).collect()
    }

    pub fn columns(&self) -> Vec<IntVector> {
        (0..self.cols).map(|j| self.column(j)).collect()
    }

    pub fn to_rows(&self) -> Vec<Vec<BigInt>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn select_columns(&self, which: &[usize]) -> IntMatrix {
        let mut m = Self::zeros(self.rows, which.len());
        for i in 0..self.rows {
            for (k, &j) in which.iter().enumerate() {
                m.set(i, k, self.get(i, j).clone());
            }
        }
        m
    }

    /// Horizontal concatenation `[self | other]`.
    pub fn hstack(&self, other: &IntMatrix) -> IntMatrix {
        assert_eq!(self.rows, other.rows, "row counts differ");
        let mut m = Self::zeros(self.rows, self.cols + other.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m.set(i, j, self.get(i, j).clone());
            }
            for j in 0..other.cols {
                m.set(i, self.cols + j, other.get(i, j).clone());
            }
        }
        m
    }

    pub fn transpose(&self) -> IntMatrix {
        let mut t = Self::zeros(self.cols, self.rows);
        for i in 0..self.rows {
            for j in 0..self.cols {
                t.set(j, i, self.get(i, j).clone());
            }
        }
        t
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    /// First `(row, col)` with `m[row][col] != m[col][row]`, scanning the upper triangle.
    pub fn first_asymmetry(&self) -> Option<(usize, usize)> {
        if !self.is_square() {
            return Some((0, 0));
        }
        for i in 0..self.rows {
            for j in i + 1..self.cols {
                if self.get(i, j) != self.get(j, i) {
                    return Some((i, j));
                }
            }
        }
        None
    }

    pub fn is_symmetric(&self) -> bool {
        self.first_asymmetry().is_none()
    }

    /// Matrix-vector product.
    pub fn mul_vec(&self, x: &[BigInt]) -> IntVector {
        assert_eq!(x.len(), self.cols, "vector length does not match");
        (0..self.rows)
            .map(|i| dot(self.row(i), x))
            .collect()
    }

    /// `self^T * g * self`, the Gram matrix of the columns under `g`.
    pub fn congruent(&self, g: &IntMatrix) -> IntMatrix {
        &(&self.transpose() * g) * self
    }

    /// Exact determinant by fraction-free (Bareiss) elimination.
    pub fn determinant(&self) -> BigInt {
        assert!(self.is_square(), "determinant of a non-square matrix");
        let n = self.rows;
        if n == 0 {
            return BigInt::one();
        }
        let mut a = self.clone();
        let mut sign = BigInt::one();
        let mut prev = BigInt::one();
        for k in 0..n - 1 {
            if a.get(k, k).is_zero() {
                match (k + 1..n).find(|&r| !a.get(r, k).is_zero()) {
                    Some(r) => {
                        a.swap_rows(k, r);
                        sign = -sign;
                    }
                    None => return BigInt::zero(),
                }
            }
            for i in k + 1..n {
                for j in k + 1..n {
                    let v = (a.get(i, j) * a.get(k, k) - a.get(i, k) * a.get(k, j)) / &prev;
                    a.set(i, j, v);
                }
            }
            prev = a.get(k, k).clone();
        }
        sign * a.get(n - 1, n - 1)
    }

    pub fn is_unimodular(&self) -> bool {
        self.is_square() && self.determinant().abs().is_one()
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// row[target] += factor * row[src]
    pub(crate) fn add_row_multiple(&mut self, target: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for j in 0..self.cols {
            let v = self.get(src, j) * factor;
            self.data[target * self.cols + j] += v;
        }
    }

    /// col[target] += factor * col[src]
    pub(crate) fn add_col_multiple(&mut self, target: usize, src: usize, factor: &BigInt) {
        if factor.is_zero() {
            return;
        }
        for i in 0..self.rows {
            let v = self.get(i, src) * factor;
            self.data[i * self.cols + target] += v;
        }
    }

    pub(crate) fn negate_row(&mut self, r: usize) {
        for j in 0..self.cols {
            let v = -self.get(r, j);
            self.set(r, j, v);
        }
    }
}

impl fmt::Debug for IntMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "IntMatrix{}x{}", self.rows, self.cols)?;
        f.debug_list()
            .entries((0..self.rows).map(|i| {
                self.row(i)
                    .iter()
                    .map(ToString::to_string)
                    .collect::<Vec<_>>()
                    .join(" ")
            }))
            .finish()
    }
}

impl Mul for &IntMatrix {
    type Output = IntMatrix;

    fn mul(self, rhs: &IntMatrix) -> IntMatrix {
        assert_eq!(self.cols, rhs.rows, "inner dimensions do not match");
        let mut out = IntMatrix::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    out.data[i * rhs.cols + j] += a * rhs.get(k, j);
                }
            }
        }
        out
    }
}

impl Serialize for IntMatrix {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        crate::json::serialize_rows(&self.to_rows(), self.cols, s)
    }
}

impl<'de> Deserialize<'de> for IntMatrix {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let (rows, cols) = crate::json::deserialize_rows(d)?;
        let mut m = IntMatrix::zeros(rows.len(), cols);
        for (i, r) in rows.into_iter().enumerate() {
            for (j, x) in r.into_iter().enumerate() {
                m.set(i, j, x);
            }
        }
        Ok(m)
    }
}

pub fn dot(a: &[BigInt], b: &[BigInt]) -> BigInt {
    a.iter().zip(b).map(|(x, y)| x * y).sum()
}

/// Non-negative gcd of the entries; zero for the zero vector.
pub fn vector_gcd(v: &[BigInt]) -> BigInt {
    v.iter().fold(BigInt::zero(), |g, x| g.gcd(x))
}

pub fn is_primitive(v: &[BigInt]) -> bool {
    vector_gcd(v).is_one()
}

/// Integer coefficients `c` with `sum c_i a_i = gcd(a)`.
pub fn bezout_coefficients(a: &[BigInt]) -> (BigInt, IntVector) {
    let mut coeffs = vec![BigInt::zero(); a.len()];
    let mut g = BigInt::zero();
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        let e = g.extended_gcd(x);
        // e.gcd = e.x * g + e.y * x
        for c in coeffs.iter_mut().take(i) {
            *c *= &e.x;
        }
        coeffs[i] = e.y;
        g = e.gcd;
    }
    if g.is_negative() {
        g = -g;
        for c in &mut coeffs {
            *c = -&*c;
        }
    }
    (g, coeffs)
}

/// Row-style Hermite normal form: returns `(h, u)` with `u` unimodular and
/// `u * m = h`. Pivots are positive, entries above a pivot lie in `[0, pivot)`,
/// and zero rows sit at the bottom.
pub fn hermite_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix) {
    let mut h = m.clone();
    let mut u = IntMatrix::identity(m.rows);
    let mut p = 0;
    for col in 0..m.cols {
        if p == m.rows {
            break;
        }
        loop {
            let best = (p..m.rows)
                .filter(|&r| !h.get(r, col).is_zero())
                .min_by(|&a, &b| h.get(a, col).abs().cmp(&h.get(b, col).abs()));
            let Some(best) = best else { break };
            h.swap_rows(p, best);
            u.swap_rows(p, best);
            let mut clean = true;
            for r in p + 1..m.rows {
                if h.get(r, col).is_zero() {
                    continue;
                }
                let q = -h.get(r, col).div_floor(h.get(p, col));
                h.add_row_multiple(r, p, &q);
                u.add_row_multiple(r, p, &q);
                if !h.get(r, col).is_zero() {
                    clean = false;
                }
            }
            if clean {
                break;
            }
        }
        if h.get(p, col).is_zero() {
            continue;
        }
        if h.get(p, col).is_negative() {
            h.negate_row(p);
            u.negate_row(p);
        }
        for r in 0..p {
            let q = -h.get(r, col).div_floor(h.get(p, col));
            h.add_row_multiple(r, p, &q);
            u.add_row_multiple(r, p, &q);
        }
        p += 1;
    }
    (h, u)
}

/// Smith normal form: returns `(d, u, v)` with `u`, `v` unimodular,
/// `u * m * v = d` diagonal, non-negative, and `d_1 | d_2 | ...`.
pub fn smith_normal_form(m: &IntMatrix) -> (IntMatrix, IntMatrix, IntMatrix) {
    let (rows, cols) = (m.rows, m.cols);
    let mut d = m.clone();
    let mut u = IntMatrix::identity(rows);
    let mut v = IntMatrix::identity(cols);
    for t in 0..rows.min(cols) {
        loop {
            let mut best: Option<(usize, usize)> = None;
            for i in t..rows {
                for j in t..cols {
                    let x = d.get(i, j);
                    if !x.is_zero()
                        && best.map_or(true, |(bi, bj)| x.abs() < d.get(bi, bj).abs())
                    {
                        best = Some((i, j));
                    }
                }
            }
            let Some((bi, bj)) = best else {
                return (d, u, v);
            };
            d.swap_rows(t, bi);
            u.swap_rows(t, bi);
            d.swap_cols(t, bj);
            v.swap_cols(t, bj);

            let mut clean = true;
            for r in t + 1..rows {
                let q = -d.get(r, t).div_floor(d.get(t, t));
                d.add_row_multiple(r, t, &q);
                u.add_row_multiple(r, t, &q);
                clean &= d.get(r, t).is_zero();
            }
            for c in t + 1..cols {
                let q = -d.get(t, c).div_floor(d.get(t, t));
                d.add_col_multiple(c, t, &q);
                v.add_col_multiple(c, t, &q);
                clean &= d.get(t, c).is_zero();
            }
            if !clean {
                continue;
            }
            let pivot = d.get(t, t).clone();
            let offender = (t + 1..rows)
                .find(|&r| (t + 1..cols).any(|c| !d.get(r, c).is_multiple_of(&pivot)));
            match offender {
                Some(r) => {
                    let one = BigInt::one();
                    d.add_row_multiple(t, r, &one);
                    u.add_row_multiple(t, r, &one);
                }
                None => break,
            }
        }
        if d.get(t, t).is_negative() {
            d.negate_row(t);
            u.negate_row(t);
        }
    }
    (d, u, v)
}

/// Diagonal of a Smith form (length `min(rows, cols)`).
pub fn elementary_divisors(m: &IntMatrix) -> IntVector {
    let (d, _, _) = smith_normal_form(m);
    (0..m.rows.min(m.cols)).map(|i| d.get(i, i).clone()).collect()
}

/// Solves `a * x = b` over the integers. Returns `None` when no integral
/// solution exists; when `a` is singular, free coordinates are set to zero.
pub fn solve_integral(a: &IntMatrix, b: &IntMatrix) -> Option<IntMatrix> {
    assert!(a.is_square(), "solve_integral requires a square matrix");
    assert_eq!(a.rows, b.rows, "right-hand side has the wrong height");
    let n = a.rows;
    let (d, u, v) = smith_normal_form(a);
    let ub = &u * b;
    let mut y = IntMatrix::zeros(n, b.cols);
    for i in 0..n {
        let di = d.get(i, i);
        for j in 0..b.cols {
            let r = ub.get(i, j);
            if di.is_zero() {
                if !r.is_zero() {
                    return None;
                }
            } else {
                let (q, rem) = r.div_rem(di);
                if !rem.is_zero() {
                    return None;
                }
                y.set(i, j, q);
            }
        }
    }
    Some(&v * &y)
}

/// Inverse of a unimodular matrix.
pub fn unimodular_inverse(a: &IntMatrix) -> Option<IntMatrix> {
    if !a.is_unimodular() {
        return None;
    }
    solve_integral(a, &IntMatrix::identity(a.rows))
}

/// Basis (as columns) of the left kernel `{x : x^T m = 0}`. The basis spans a
/// saturated sublattice of `Z^rows`.
pub fn left_kernel(m: &IntMatrix) -> IntMatrix {
    let (h, u) = hermite_normal_form(m);
    let zero_rows: Vec<usize> = (0..h.rows).filter(|&i| h.row(i).iter().all(Zero::is_zero)).collect();
    let mut k = IntMatrix::zeros(m.rows, zero_rows.len());
    for (c, &r) in zero_rows.iter().enumerate() {
        for i in 0..m.rows {
            k.set(i, c, u.get(r, i).clone());
        }
    }
    k
}

/// Rank over the rationals.
pub fn rank(m: &IntMatrix) -> usize {
    let (h, _) = hermite_normal_form(m);
    (0..h.rows).filter(|&i| h.row(i).iter().any(|x| !x.is_zero())).count()
}

/// Completes a primitive vector to a unimodular matrix whose first column is `c`.
pub fn complete_to_basis(c: &[BigInt]) -> Option<IntMatrix> {
    if !is_primitive(c) {
        return None;
    }
    let col = IntMatrix::from_columns(c.len(), &[c.to_vec()]);
    let (h, u) = hermite_normal_form(&col);
    debug_assert!(h.get(0, 0).is_one());
    // u * c = e_1, so u^{-1} has c as its first column.
    unimodular_inverse(&u)
}

/// Inertia indices of a symmetric matrix over the rationals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Inertia {
    pub n_plus: usize,
    pub n_minus: usize,
    pub n_zero: usize,
}

impl Inertia {
    pub fn signature(&self) -> i64 {
        self.n_plus as i64 - self.n_minus as i64
    }
}

/// Counts positive, negative and zero inertia indices by exact rational
/// congruence diagonalization.
pub fn signature_of_symmetric(m: &IntMatrix) -> Result<Inertia> {
    if let Some((row, col)) = m.first_asymmetry() {
        return Err(Error::NotSymmetric { row, col });
    }
    let n = m.rows;
    let mut a: Vec<Vec<BigRational>> = m
        .to_rows()
        .into_iter()
        .map(|r| r.into_iter().map(BigRational::from_integer).collect())
        .collect();
    let mut inertia = Inertia {
        n_plus: 0,
        n_minus: 0,
        n_zero: 0,
    };
    // Active indices still to be eliminated.
    let mut active: Vec<usize> = (0..n).collect();
    while !active.is_empty() {
        let pivot = match active.iter().position(|&i| !a[i][i].is_zero()) {
            Some(p) => p,
            None => {
                let pair = active.iter().enumerate().find_map(|(pi, &i)| {
                    active
                        .iter()
                        .find(|&&j| j != i && !a[i][j].is_zero())
                        .map(|&j| (pi, j))
                });
                let Some((pi, j)) = pair else {
                    inertia.n_zero += active.len();
                    break;
                };
                // x_i <- x_i + x_j; the new diagonal is 2 a_ij != 0.
                let i = active[pi];
                for k in 0..n {
                    let t = a[j][k].clone();
                    a[i][k] += t;
                }
                for k in 0..n {
                    let t = a[k][j].clone();
                    a[k][i] += t;
                }
                pi
            }
        };
        let p = active.remove(pivot);
        let d = a[p][p].clone();
        if d.is_positive() {
            inertia.n_plus += 1;
        } else {
            inertia.n_minus += 1;
        }
        for &i in &active {
            if a[i][p].is_zero() {
                continue;
            }
            let factor = &a[i][p] / &d;
            for &k in &active {
                let t = &factor * &a[p][k];
                a[i][k] -= t;
            }
            a[i][p] = BigRational::zero();
        }
        // Row p is read by every update above, so clear it only afterwards.
        for &i in &active {
            a[p][i] = BigRational::zero();
        }
    }
    Ok(inertia)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn m(rows: &[&[i64]]) -> IntMatrix {
        IntMatrix::from_rows(&rows.iter().map(|r| r.to_vec()).collect::<Vec<_>>())
    }

    fn is_row_hnf(h: &IntMatrix) -> bool {
        let mut last_pivot: Option<usize> = None;
        let mut seen_zero = false;
        for i in 0..h.rows() {
            match h.row(i).iter().position(|x| !x.is_zero()) {
                None => seen_zero = true,
                Some(c) => {
                    if seen_zero || last_pivot.is_some_and(|lp| c <= lp) {
                        return false;
                    }
                    let pivot = h.get(i, c);
                    if !pivot.is_positive() {
                        return false;
                    }
                    for r in 0..i {
                        let x = h.get(r, c);
                        if x.is_negative() || x >= pivot {
                            return false;
                        }
                    }
                    last_pivot = Some(c);
                }
            }
        }
        true
    }

    /// Brute force: is `target` an integer combination of the rows of `m`
    /// with coefficients in [-bound, bound]?
    fn in_row_lattice(m: &IntMatrix, target: &[BigInt], bound: i64) -> bool {
        assert_eq!(m.rows(), 2);
        for a in -bound..=bound {
            for b in -bound..=bound {
                let ok = (0..m.cols()).all(|j| {
                    BigInt::from(a) * m.get(0, j) + BigInt::from(b) * m.get(1, j) == target[j]
                });
                if ok {
                    return true;
                }
            }
        }
        false
    }

    #[test]
    fn hnf_identity_and_zero() {
        let id = IntMatrix::identity(3);
        assert_eq!(hermite_normal_form(&id), (id.clone(), id.clone()));
        let z = IntMatrix::zeros(2, 2);
        assert_eq!(hermite_normal_form(&z), (z.clone(), IntMatrix::identity(2)));
    }

    #[test]
    fn hnf_small_example() {
        let a = m(&[&[2, 4], &[6, 8]]);
        let (h, u) = hermite_normal_form(&a);
        assert_eq!(h, m(&[&[2, 0], &[0, 4]]));
        assert!(is_row_hnf(&h));
        assert_eq!(&u * &a, h);
        let b = m(&[&[3, 5, 7], &[1, 1, 1], &[4, 6, 8]]);
        let (hb, ub) = hermite_normal_form(&b);
        assert!(is_row_hnf(&hb));
        assert_eq!(&ub * &b, hb);
        assert!(u.determinant().abs().is_one());
        // Same row lattice, checked by brute-force combination search.
        for i in 0..2 {
            assert!(in_row_lattice(&a, h.row(i), 10));
            assert!(in_row_lattice(&h, a.row(i), 10));
        }
    }

    #[test]
    fn hnf_of_zero_by_n_matrix() {
        let e = IntMatrix::zeros(0, 3);
        let (h, u) = hermite_normal_form(&e);
        assert_eq!(h.rows(), 0);
        assert_eq!(u.rows(), 0);
    }

    #[test]
    fn snf_examples() {
        assert_eq!(elementary_divisors(&m(&[&[2, 0], &[0, 3]])), vec![1.into(), BigInt::from(6)]);
        let a = m(&[&[1, 1, 1, 1], &[1, -1, 1, -1]]);
        let (d, u, v) = smith_normal_form(&a);
        assert_eq!(d, m(&[&[1, 0, 0, 0], &[0, 2, 0, 0]]));
        assert_eq!(&(&u * &a) * &v, d);
        let id = IntMatrix::identity(3);
        assert_eq!(smith_normal_form(&id).0, id);
    }

    #[test]
    fn solve_examples() {
        let id = IntMatrix::identity(3);
        let b = m(&[&[5], &[-2], &[7]]);
        assert_eq!(solve_integral(&id, &b), Some(b.clone()));
        let a = IntMatrix::diagonal(&[1, 1, -1, -1]);
        let b = m(&[&[0], &[0], &[1], &[0]]);
        assert_eq!(solve_integral(&a, &b), Some(m(&[&[0], &[0], &[-1], &[0]])));
        assert_eq!(solve_integral(&m(&[&[2]]), &m(&[&[1]])), None);
    }

    #[test]
    fn signature_examples() {
        let s = signature_of_symmetric(&IntMatrix::diagonal(&[1, -1])).unwrap();
        assert_eq!((s.n_plus, s.n_minus, s.n_zero), (1, 1, 0));
        let s = signature_of_symmetric(&m(&[&[0, 1], &[1, 0]])).unwrap();
        assert_eq!((s.n_plus, s.n_minus, s.n_zero), (1, 1, 0));
        let s = signature_of_symmetric(&IntMatrix::diagonal(&[1, 1, -1, -1])).unwrap();
        assert_eq!((s.n_plus, s.n_minus, s.n_zero), (2, 2, 0));
        let s = signature_of_symmetric(&m(&[&[1, 1], &[1, 1]])).unwrap();
        assert_eq!((s.n_plus, s.n_minus, s.n_zero), (1, 0, 1));
        // diag(1, -1, 2) in a non-diagonal basis; needs two elimination rounds.
        let s = signature_of_symmetric(&m(&[&[10, -8, 3], &[-8, 6, -2], &[3, -2, 1]])).unwrap();
        assert_eq!((s.n_plus, s.n_minus, s.n_zero), (2, 1, 0));
        assert_eq!(
            signature_of_symmetric(&m(&[&[1, 2], &[3, 1]])),
            Err(Error::NotSymmetric { row: 0, col: 1 })
        );
    }

    #[test]
    fn determinant_values() {
        assert_eq!(m(&[&[0, 1], &[1, 0]]).determinant(), BigInt::from(-1));
        assert_eq!(m(&[&[2, 4], &[6, 8]]).determinant(), BigInt::from(-8));
        assert_eq!(IntMatrix::zeros(0, 0).determinant(), BigInt::one());
        assert_eq!(m(&[&[0, 0, 1], &[0, 1, 0], &[1, 0, 0]]).determinant(), BigInt::from(-1));
    }

    #[test]
    fn bezout_recovers_gcd() {
        let a: Vec<BigInt> = [6, 10, 15].iter().map(|&x| BigInt::from(x)).collect();
        let (g, c) = bezout_coefficients(&a);
        assert!(g.is_one());
        assert_eq!(dot(&a, &c), g);
        let a: Vec<BigInt> = [0, -4].iter().map(|&x| BigInt::from(x)).collect();
        let (g, c) = bezout_coefficients(&a);
        assert_eq!(g, BigInt::from(4));
        assert_eq!(dot(&a, &c), g);
    }

    #[test]
    fn left_kernel_is_saturated() {
        let a = m(&[&[2], &[4], &[1]]);
        let k = left_kernel(&a);
        assert_eq!(k.cols(), 2);
        assert!((&k.transpose() * &a).is_zero());
        assert!(elementary_divisors(&k).iter().all(One::is_one));
    }

    #[test]
    fn completion_has_requested_first_column() {
        let c: Vec<BigInt> = [3, 5, -7].iter().map(|&x| BigInt::from(x)).collect();
        let b = complete_to_basis(&c).unwrap();
        assert_eq!(b.column(0), c);
        assert!(b.is_unimodular());
        let not_primitive: Vec<BigInt> = [2, 4].iter().map(|&x| BigInt::from(x)).collect();
        assert!(complete_to_basis(&not_primitive).is_none());
    }
}
