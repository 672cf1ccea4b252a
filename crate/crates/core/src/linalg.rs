//! Exact linear algebra over ℤ, ℚ and prime fields.
//!
//! All the lattice work (saturated kernels, elementary divisors) runs in
//! arbitrary precision; the mod-p side uses plain `u64` arithmetic.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::rings::Rational;

/// Dense integer matrix, row major.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntMat {
    pub rows: usize,
    pub cols: usize,
    data: Vec<BigInt>,
}

impl IntMat {
    pub fn zeros(rows: usize, cols: usize) -> Self {
        Self { rows, cols, data: vec![BigInt::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m[(i, i)] = BigInt::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<BigInt>>) -> Self {
        let r = rows.len();
        let c = rows.first().map_or(0, Vec::len);
        assert!(rows.iter().all(|row| row.len() == c));
        Self { rows: r, cols: c, data: rows.concat() }
    }

    pub fn from_fn(rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> BigInt) -> Self {
        let mut m = Self::zeros(rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j);
            }
        }
        m
    }

    pub fn row(&self, i: usize) -> &[BigInt] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.cols, self.rows, |i, j| self[(j, i)].clone())
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        let mut out = Self::zeros(self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = &self[(i, k)];
                if a.is_zero() {
                    continue;
                }
                for j in 0..rhs.cols {
                    let b = &rhs[(k, j)];
                    if !b.is_zero() {
                        let prod = a * b;
                        out[(i, j)] += prod;
                    }
                }
            }
        }
        out
    }

    pub fn trace(&self) -> BigInt {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).map(|i| self[(i, i)].clone()).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(Zero::is_zero)
    }

    fn swap_rows(&mut self, i: usize, j: usize) {
        if i == j {
            return;
        }
        for k in 0..self.cols {
            self.data.swap(i * self.cols + k, j * self.cols + k);
        }
    }

    /// `row_i += q * row_j`.
    fn add_multiple(&mut self, i: usize, j: usize, q: &BigInt) {
        if q.is_zero() {
            return;
        }
        for k in 0..self.cols {
            let t = &self[(j, k)] * q;
            self[(i, k)] += t;
        }
    }

}

impl std::ops::Index<(usize, usize)> for IntMat {
    type Output = BigInt;
    fn index(&self, (i, j): (usize, usize)) -> &BigInt {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for IntMat {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut BigInt {
        &mut self.data[i * self.cols + j]
    }
}

/// Basis of the saturated integer kernel `{x ∈ ℤ^cols : A·x = 0}`.
///
/// Row-reduces `[Aᵀ | I]` by unimodular operations; the rows whose left
/// block vanishes carry a kernel basis in the right block. The kernel of
/// an integer matrix is saturated by construction.
pub fn integer_kernel(a: &IntMat) -> Vec<Vec<BigInt>> {
    let n = a.cols; // ambient dimension
    let r = a.rows;
    let mut m = IntMat::zeros(n, r + n);
    for i in 0..n {
        for j in 0..r {
            m[(i, j)] = a[(j, i)].clone();
        }
        m[(i, r + i)] = BigInt::one();
    }
    let mut pivot_row = 0usize;
    for col in 0..r {
        loop {
            // smallest nonzero entry of this column at or below pivot_row
            let mut best: Option<(usize, BigInt)> = None;
            for i in pivot_row..n {
                let v = &m[(i, col)];
                if v.is_zero() {
                    continue;
                }
                let mag = v.abs();
                if best.as_ref().is_none_or(|(_, b)| &mag < b) {
                    best = Some((i, mag));
                }
            }
            let Some((piv, _)) = best else { break };
            m.swap_rows(pivot_row, piv);
            let mut finished = true;
            for i in pivot_row + 1..n {
                if m[(i, col)].is_zero() {
                    continue;
                }
                let q = -(&m[(i, col)] / &m[(pivot_row, col)]);
                m.add_multiple(i, pivot_row, &q);
                if !m[(i, col)].is_zero() {
                    finished = false; // remainder left, next sweep shrinks it
                }
            }
            if finished {
                pivot_row += 1;
                break;
            }
        }
        if pivot_row == n {
            break;
        }
    }
    (pivot_row..n)
        .map(|i| (0..n).map(|j| m[(i, r + j)].clone()).collect())
        .collect()
}

/// Elementary divisors (Smith normal form diagonal, ungapped) of an
/// integer matrix.
pub fn elementary_divisors(a: &IntMat) -> Vec<BigInt> {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut divisors = Vec::new();
    let mut top = 0usize;
    let mut left = 0usize;
    while top < rows && left < cols {
        // locate the smallest nonzero entry in the remaining block
        let mut best: Option<(usize, usize, BigInt)> = None;
        for i in top..rows {
            for j in left..cols {
                let v = &m[(i, j)];
                if v.is_zero() {
                    continue;
                }
                let mag = v.abs();
                if best.as_ref().is_none_or(|(_, _, b)| &mag < b) {
                    best = Some((i, j, mag));
                }
            }
        }
        let Some((pi, pj, _)) = best else { break };
        m.swap_rows(top, pi);
        for i in 0..rows {
            m.data.swap(i * cols + left, i * cols + pj);
        }
        // clear row and column with Euclidean steps
        let mut clean = false;
        while !clean {
            clean = true;
            for i in top + 1..rows {
                if m[(i, left)].is_zero() {
                    continue;
                }
                let q = -(&m[(i, left)] / &m[(top, left)]);
                m.add_multiple(i, top, &q);
                if !m[(i, left)].is_zero() {
                    m.swap_rows(top, i);
                    clean = false;
                }
            }
            for j in left + 1..cols {
                if m[(top, j)].is_zero() {
                    continue;
                }
                let q = -(&m[(top, j)] / &m[(top, left)]);
                for i in 0..rows {
                    let t = &m[(i, left)] * &q;
                    m[(i, j)] += t;
                }
                if !m[(top, j)].is_zero() {
                    for i in 0..rows {
                        m.data.swap(i * cols + left, i * cols + j);
                    }
                    clean = false;
                }
            }
        }
        divisors.push(m[(top, left)].abs());
        top += 1;
        left += 1;
    }
    // enforce the divisibility chain
    let mut changed = true;
    while changed {
        changed = false;
        for i in 1..divisors.len() {
            let (a, b) = (divisors[i - 1].clone(), divisors[i].clone());
            if !(&b % &a).is_zero() {
                let g = num_integer::Integer::gcd(&a, &b);
                let l = &a * &b / &g;
                divisors[i - 1] = g;
                divisors[i] = l;
                changed = true;
            }
        }
    }
    divisors
}

/// Determinant by fraction-free (Bareiss) elimination.
pub fn determinant(a: &IntMat) -> BigInt {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    if n == 0 {
        return BigInt::one();
    }
    let mut m = a.clone();
    let mut sign = 1i8;
    let mut prev = BigInt::one();
    for k in 0..n - 1 {
        if m[(k, k)].is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !m[(i, k)].is_zero()) else {
                return BigInt::zero();
            };
            m.swap_rows(k, swap);
            sign = -sign;
        }
        for i in k + 1..n {
            for j in k + 1..n {
                let num = &m[(i, j)] * &m[(k, k)] - &m[(i, k)] * &m[(k, j)];
                m[(i, j)] = num / &prev;
            }
            m[(i, k)] = BigInt::zero();
        }
        prev = m[(k, k)].clone();
    }
    let d = m[(n - 1, n - 1)].clone();
    if sign < 0 {
        -d
    } else {
        d
    }
}

/// Characteristic polynomial coefficients of `det(tI - A)`, highest
/// degree first, by the Faddeev-LeVerrier recursion (all divisions are
/// exact over ℤ).
pub fn charpoly(a: &IntMat) -> Vec<BigInt> {
    assert_eq!(a.rows, a.cols);
    let n = a.rows;
    let mut coeffs = vec![BigInt::one()];
    let mut m = a.clone();
    for k in 1..=n {
        let c = -(m.trace() / BigInt::from(k));
        coeffs.push(c.clone());
        if k == n {
            break;
        }
        for i in 0..n {
            m[(i, i)] += &c;
        }
        m = a.mul(&m);
    }
    coeffs
}

/// Exact rank over ℚ by fraction-free elimination.
pub fn rank(a: &IntMat) -> usize {
    let mut m = a.clone();
    let (rows, cols) = (m.rows, m.cols);
    let mut rank = 0usize;
    let mut row = 0usize;
    for col in 0..cols {
        let Some(piv) = (row..rows).find(|&i| !m[(i, col)].is_zero()) else {
            continue;
        };
        m.swap_rows(row, piv);
        for i in row + 1..rows {
            if m[(i, col)].is_zero() {
                continue;
            }
            let (pc, ic) = (m[(row, col)].clone(), m[(i, col)].clone());
            for j in col..cols {
                let v = &m[(i, j)] * &pc - &m[(row, j)] * &ic;
                m[(i, j)] = v;
            }
            // keep entries from blowing up
            let g = m
                .row(i)
                .iter()
                .fold(BigInt::zero(), |acc, v| num_integer::Integer::gcd(&acc, v));
            if g > BigInt::one() {
                for j in 0..cols {
                    let v = &m[(i, j)] / &g;
                    m[(i, j)] = v;
                }
            }
        }
        row += 1;
        rank += 1;
        if row == rows {
            break;
        }
    }
    rank
}

/// Solves `A·X = B` exactly over ℚ for square invertible `A`.
/// Returns `None` when `A` is singular.
pub fn solve_rational(a: &IntMat, b: &IntMat) -> Option<Vec<Vec<Rational>>> {
    assert_eq!(a.rows, a.cols);
    assert_eq!(a.rows, b.rows);
    let n = a.rows;
    let k = b.cols;
    let mut m: Vec<Vec<Rational>> = (0..n)
        .map(|i| {
            (0..n + k)
                .map(|j| {
                    if j < n {
                        Rational::from_integer(a[(i, j)].clone())
                    } else {
                        Rational::from_integer(b[(i, j - n)].clone())
                    }
                })
                .collect()
        })
        .collect();
    for col in 0..n {
        let piv = (col..n).find(|&i| !m[i][col].is_zero())?;
        m.swap(col, piv);
        let inv = m[col][col].recip();
        for j in col..n + k {
            m[col][j] = &m[col][j] * &inv;
        }
        for i in 0..n {
            if i == col || m[i][col].is_zero() {
                continue;
            }
            let f = m[i][col].clone();
            for j in col..n + k {
                let v = &m[i][j] - &(&f * &m[col][j]);
                m[i][j] = v;
            }
        }
    }
    Some(m.into_iter().map(|row| row[n..].to_vec()).collect())
}

/// Solves `A·x = b` over ℚ for a (possibly non-square) `A` with full
/// column rank; returns `None` when the system is inconsistent.
pub fn solve_via_gram(a: &IntMat, b: &[BigInt]) -> Option<Vec<Rational>> {
    // x solves Ax = b iff it solves (AᵀA)x = Aᵀb and the residual is 0.
    let at = a.transpose();
    let gram = at.mul(a);
    let rhs = IntMat::from_fn(a.cols, 1, |i, _| {
        (0..a.rows).map(|k| &at[(i, k)] * &b[k]).sum()
    });
    let x = solve_rational(&gram, &rhs)?;
    let x: Vec<Rational> = x.into_iter().map(|mut r| r.remove(0)).collect();
    // verify Ax = b
    for i in 0..a.rows {
        let mut acc = Rational::zero();
        for j in 0..a.cols {
            acc += Rational::from_integer(a[(i, j)].clone()) * &x[j];
        }
        if acc != Rational::from_integer(b[i].clone()) {
            return None;
        }
    }
    Some(x)
}

/// Dense matrix over `F_p`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MatFp {
    pub p: u64,
    pub rows: usize,
    pub cols: usize,
    data: Vec<u64>,
}

impl MatFp {
    pub fn zeros(p: u64, rows: usize, cols: usize) -> Self {
        Self { p, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(p: u64, n: usize) -> Self {
        let mut m = Self::zeros(p, n, n);
        for i in 0..n {
            m[(i, i)] = 1;
        }
        m
    }

    pub fn from_int(p: u64, a: &IntMat) -> Self {
        let mut m = Self::zeros(p, a.rows, a.cols);
        for i in 0..a.rows {
            for j in 0..a.cols {
                m[(i, j)] = reduce_mod(&a[(i, j)], p);
            }
        }
        m
    }

    pub fn from_fn(p: u64, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut m = Self::zeros(p, rows, cols);
        for i in 0..rows {
            for j in 0..cols {
                m[(i, j)] = f(i, j) % p;
            }
        }
        m
    }

    pub fn mul(&self, rhs: &Self) -> Self {
        assert_eq!(self.cols, rhs.rows);
        assert_eq!(self.p, rhs.p);
        let mut out = Self::zeros(self.p, self.rows, rhs.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self[(i, k)];
                if a == 0 {
                    continue;
                }
                for j in 0..rhs.cols {
                    out[(i, j)] = (out[(i, j)] + a * rhs[(k, j)]) % self.p;
                }
            }
        }
        out
    }

    pub fn add(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o = (*o + r) % self.p;
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        assert_eq!((self.rows, self.cols), (rhs.rows, rhs.cols));
        let mut out = self.clone();
        for (o, r) in out.data.iter_mut().zip(&rhs.data) {
            *o = (*o + self.p - r) % self.p;
        }
        out
    }

    pub fn neg(&self) -> Self {
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = (self.p - *o) % self.p;
        }
        out
    }

    pub fn scale(&self, k: u64) -> Self {
        let k = k % self.p;
        let mut out = self.clone();
        for o in out.data.iter_mut() {
            *o = *o * k % self.p;
        }
        out
    }

    pub fn trace(&self) -> u64 {
        assert_eq!(self.rows, self.cols);
        (0..self.rows).fold(0, |acc, i| (acc + self[(i, i)]) % self.p)
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        Self::from_fn(self.p, self.cols, self.rows, |i, j| self[(j, i)])
    }

    fn rref_in_place(&mut self) -> Vec<usize> {
        let mut pivots = Vec::new();
        let mut row = 0;
        for col in 0..self.cols {
            let Some(piv) = (row..self.rows).find(|&i| self[(i, col)] != 0) else {
                continue;
            };
            for k in 0..self.cols {
                self.data.swap(row * self.cols + k, piv * self.cols + k);
            }
            let inv = mod_inverse(self[(row, col)], self.p);
            for k in col..self.cols {
                self[(row, k)] = self[(row, k)] * inv % self.p;
            }
            for i in 0..self.rows {
                if i == row || self[(i, col)] == 0 {
                    continue;
                }
                let f = self[(i, col)];
                for k in col..self.cols {
                    let v = (self[(i, k)] + (self.p - f) * self[(row, k)]) % self.p;
                    self[(i, k)] = v;
                }
            }
            pivots.push(col);
            row += 1;
            if row == self.rows {
                break;
            }
        }
        pivots
    }

    pub fn rank(&self) -> usize {
        let mut m = self.clone();
        m.rref_in_place().len()
    }

    /// Pivot columns of the reduced row echelon form.
    pub fn pivot_columns(&self) -> Vec<usize> {
        let mut m = self.clone();
        m.rref_in_place()
    }

    /// Basis of `{x : A·x = 0}` as rows.
    pub fn nullspace(&self) -> Vec<Vec<u64>> {
        let mut m = self.clone();
        let pivots = m.rref_in_place();
        let pivot_set: std::collections::HashSet<usize> = pivots.iter().copied().collect();
        let free: Vec<usize> = (0..self.cols).filter(|c| !pivot_set.contains(c)).collect();
        let mut basis = Vec::new();
        for &f in &free {
            let mut v = vec![0u64; self.cols];
            v[f] = 1;
            for (r, &pc) in pivots.iter().enumerate() {
                // pivot row r: x_pc = -Σ_free m[r][f]·x_f
                v[pc] = (self.p - m[(r, f)]) % self.p;
            }
            basis.push(v);
        }
        basis
    }

    /// Solves `A·X = B` column-wise; `None` when inconsistent. Solutions
    /// are unique only when `A` has full column rank.
    pub fn solve(&self, b: &MatFp) -> Option<MatFp> {
        assert_eq!(self.rows, b.rows);
        assert_eq!(self.p, b.p);
        let mut m = Self::zeros(self.p, self.rows, self.cols + b.cols);
        for i in 0..self.rows {
            for j in 0..self.cols {
                m[(i, j)] = self[(i, j)];
            }
            for j in 0..b.cols {
                m[(i, self.cols + j)] = b[(i, j)];
            }
        }
        let pivots = m.rref_in_place();
        // inconsistent iff a pivot falls in the augmented block
        if pivots.iter().any(|&c| c >= self.cols) {
            return None;
        }
        let mut x = Self::zeros(self.p, self.cols, b.cols);
        for (r, &pc) in pivots.iter().enumerate() {
            for j in 0..b.cols {
                x[(pc, j)] = m[(r, self.cols + j)];
            }
        }
        Some(x)
    }

    /// Inverse of a square invertible matrix.
    pub fn inverse(&self) -> Option<MatFp> {
        assert_eq!(self.rows, self.cols);
        let x = self.solve(&Self::identity(self.p, self.rows))?;
        if x.mul(self) == Self::identity(self.p, self.rows) {
            Some(x)
        } else {
            None
        }
    }
}

impl std::ops::Index<(usize, usize)> for MatFp {
    type Output = u64;
    fn index(&self, (i, j): (usize, usize)) -> &u64 {
        &self.data[i * self.cols + j]
    }
}

impl std::ops::IndexMut<(usize, usize)> for MatFp {
    fn index_mut(&mut self, (i, j): (usize, usize)) -> &mut u64 {
        &mut self.data[i * self.cols + j]
    }
}

pub fn reduce_mod(v: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    let m = v.mod_floor(&BigInt::from(p));
    m.to_u64_digits().1.first().copied().unwrap_or(0)
}

pub fn mod_inverse(a: u64, p: u64) -> u64 {
    // Fermat; p is prime and a ≠ 0 mod p
    let (mut base, mut e, mut acc) = (a % p, p - 2, 1u64);
    assert!(base != 0, "zero has no inverse");
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * base % p;
        }
        base = base * base % p;
        e >>= 1;
    }
    acc
}

#[cfg(test)]
mod tests {
    use super::*;

    fn int(rows: &[&[i64]]) -> IntMat {
        IntMat::from_rows(rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect())
    }

    #[test]
    fn kernel_of_simple_map() {
        // x + y + z = 0 has a rank-2 saturated kernel
        let a = int(&[&[1, 1, 1]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 2);
        for v in &k {
            let s: BigInt = v.iter().sum();
            assert!(s.is_zero());
        }
        // saturation: elementary divisors of the kernel basis are units
        let b = IntMat::from_rows(k);
        assert!(elementary_divisors(&b).iter().all(|d| d.is_one()));
    }

    #[test]
    fn kernel_detects_saturation_not_just_spanning() {
        // the kernel of [2 -2] is spanned by (1,1), not (2,2)
        let a = int(&[&[2, -2]]);
        let k = integer_kernel(&a);
        assert_eq!(k.len(), 1);
        assert_eq!(k[0][0].abs(), BigInt::one());
    }

    #[test]
    fn smith_divisors() {
        let a = int(&[&[2, 4, 4], &[-6, 6, 12], &[10, 4, 16]]);
        let d = elementary_divisors(&a);
        assert_eq!(d, vec![BigInt::from(2), BigInt::from(2), BigInt::from(156)]);
    }

    #[test]
    fn determinant_and_charpoly() {
        let a = int(&[&[2, 1], &[1, 1]]);
        assert_eq!(determinant(&a), BigInt::one());
        // det(tI - A) = t² - 3t + 1
        assert_eq!(
            charpoly(&a),
            vec![BigInt::one(), BigInt::from(-3), BigInt::one()]
        );
        let b = int(&[&[0, 0, 1], &[1, 0, -3], &[0, 1, 0]]);
        assert_eq!(charpoly(&b).len(), 4);
        assert_eq!(determinant(&b), BigInt::one());
    }

    #[test]
    fn rational_solving() {
        let a = int(&[&[2, 0], &[1, 3]]);
        let b = int(&[&[4], &[5]]);
        let x = solve_rational(&a, &b).unwrap();
        assert_eq!(x[0][0], Rational::from_integer(BigInt::from(2)));
        assert_eq!(x[1][0], Rational::new(BigInt::from(3), BigInt::from(3)));
    }

    #[test]
    fn overdetermined_solving() {
        let a = int(&[&[1, 0], &[0, 1], &[1, 1]]);
        let b = vec![BigInt::from(2), BigInt::from(3), BigInt::from(5)];
        let x = solve_via_gram(&a, &b).unwrap();
        assert_eq!(x[0], Rational::from_integer(BigInt::from(2)));
        let bad = vec![BigInt::from(2), BigInt::from(3), BigInt::from(6)];
        assert!(solve_via_gram(&a, &bad).is_none());
    }

    #[test]
    fn fp_rank_nullspace_solve() {
        let a = MatFp::from_fn(5, 3, 3, |i, j| ((i + j) % 5) as u64);
        assert_eq!(a.rank(), 2);
        let ns = a.nullspace();
        assert_eq!(ns.len(), 1);
        // A·n = 0
        for row in 0..3 {
            let mut acc = 0;
            for col in 0..3 {
                acc = (acc + a[(row, col)] * ns[0][col]) % 5;
            }
            assert_eq!(acc, 0);
        }
        let id = MatFp::identity(7, 4);
        assert_eq!(id.inverse().unwrap(), id);
    }

    #[test]
    fn rank_matches_fraction_free() {
        let a = int(&[&[1, 2, 3], &[2, 4, 6], &[0, 1, 1]]);
        assert_eq!(rank(&a), 2);
    }
}
