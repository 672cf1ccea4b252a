//! Sparse exterior algebra of `H₁(Σ_g, ℤ)` on the standard basis
//! `a_1, …, a_g, b_1, …, b_g`.
//!
//! Monomials are 2g-bit masks (bits `0…g-1` are the `a_i`, bits `g…2g-1`
//! the `b_i`) with wedge factors normalized to the ascending order
//! `a_1 < … < a_g < b_1 < … < b_g`; every sign in the module is the
//! parity of the sorting permutation. The monomial basis is orthonormal
//! for the inner product and symplectic for the skew form, with the
//! complex structure `J a_i = b_i`, `J b_i = -a_i` tying the two
//! together by `(x, Jy) = ⟨x, y⟩`.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::{Error, Result};

pub type Mask = u32;

/// Sparse integer element of `∧*H₁(Σ_g)`: monomial mask → coefficient,
/// no stored zeros.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MultiVector {
    genus: usize,
    terms: BTreeMap<Mask, BigInt>,
}

/// Parity of the permutation merging two disjoint sorted masks: counts
/// the factor crossings of `left ∧ right`.
fn merge_sign(left: Mask, right: Mask) -> i8 {
    debug_assert_eq!(left & right, 0);
    let mut crossings = 0u32;
    let mut l = left;
    while l != 0 {
        let bit = l.trailing_zeros();
        // factors of `right` strictly below this factor of `left`
        crossings += (right & ((1 << bit) - 1)).count_ones();
        l &= l - 1;
    }
    if crossings.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

impl MultiVector {
    pub fn zero(genus: usize) -> Self {
        assert!(2 * genus <= Mask::BITS as usize);
        Self { genus, terms: BTreeMap::new() }
    }

    pub fn scalar(genus: usize, value: impl Into<BigInt>) -> Self {
        let mut v = Self::zero(genus);
        v.add_term(0, value.into());
        v
    }

    pub fn monomial(genus: usize, mask: Mask, coeff: impl Into<BigInt>) -> Self {
        assert!(mask < (1 << (2 * genus)) as Mask || 2 * genus == Mask::BITS as usize);
        let mut v = Self::zero(genus);
        v.add_term(mask, coeff.into());
        v
    }

    /// The basis class `a_i` (1-indexed).
    pub fn a(genus: usize, i: usize) -> Self {
        assert!((1..=genus).contains(&i));
        Self::monomial(genus, 1 << (i - 1), 1)
    }

    /// The basis class `b_i` (1-indexed).
    pub fn b(genus: usize, i: usize) -> Self {
        assert!((1..=genus).contains(&i));
        Self::monomial(genus, 1 << (genus + i - 1), 1)
    }

    /// The standard symplectic form `ω_g = Σ_i a_i ∧ b_i`.
    pub fn omega(genus: usize) -> Self {
        let mut v = Self::zero(genus);
        for i in 0..genus {
            v.add_term((1 << i) | (1 << (genus + i)), BigInt::one());
        }
        v
    }

    /// The handle-body state `Ω_g = a_1 ∧ … ∧ a_g`.
    pub fn handle_body_state(genus: usize) -> Self {
        Self::monomial(genus, ((1u64 << genus) - 1) as Mask, 1)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn terms(&self) -> impl Iterator<Item = (Mask, &BigInt)> {
        self.terms.iter().map(|(m, c)| (*m, c))
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn coeff(&self, mask: Mask) -> BigInt {
        self.terms.get(&mask).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, mask: Mask, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.terms.entry(mask).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.terms.remove(&mask);
        }
    }

    pub fn add(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, c.clone());
        }
        out
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        let mut out = self.clone();
        for (m, c) in &rhs.terms {
            out.add_term(*m, -c.clone());
        }
        out
    }

    pub fn neg(&self) -> Self {
        Self {
            genus: self.genus,
            terms: self.terms.iter().map(|(m, c)| (*m, -c.clone())).collect(),
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero(self.genus);
        }
        Self {
            genus: self.genus,
            terms: self.terms.iter().map(|(m, c)| (*m, c * k)).collect(),
        }
    }

    /// Degree of the lowest-mask term, if homogeneous; `None` for 0 or
    /// mixed-degree elements.
    pub fn homogeneous_degree(&self) -> Option<u32> {
        let mut deg = None;
        for m in self.terms.keys() {
            let d = m.count_ones();
            match deg {
                None => deg = Some(d),
                Some(prev) if prev != d => return None,
                _ => {}
            }
        }
        deg
    }

    /// The degree-`d` part.
    pub fn degree_part(&self, d: u32) -> Self {
        Self {
            genus: self.genus,
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.count_ones() == d)
                .map(|(m, c)| (*m, c.clone()))
                .collect(),
        }
    }

    fn check_genus(&self, rhs: &Self) -> Result<()> {
        if self.genus != rhs.genus {
            return Err(Error::GenusMismatch(self.genus, rhs.genus));
        }
        Ok(())
    }
}

/// Graded-commutative exterior product.
pub fn wedge(x: &MultiVector, y: &MultiVector) -> Result<MultiVector> {
    x.check_genus(y)?;
    let mut out = MultiVector::zero(x.genus);
    for (mx, cx) in &x.terms {
        for (my, cy) in &y.terms {
            if mx & my != 0 {
                continue;
            }
            let sign = merge_sign(*mx, *my);
            let c = if sign > 0 { cx * cy } else { -(cx * cy) };
            out.add_term(mx | my, c);
        }
    }
    Ok(out)
}

/// Inner product making the monomial basis orthonormal.
pub fn inner(x: &MultiVector, y: &MultiVector) -> Result<BigInt> {
    x.check_genus(y)?;
    let mut acc = BigInt::zero();
    // iterate the smaller support
    let (small, big) = if x.terms.len() <= y.terms.len() { (x, y) } else { (y, x) };
    for (m, c) in &small.terms {
        if let Some(d) = big.terms.get(m) {
            acc += c * d;
        }
    }
    Ok(acc)
}

/// Multiplicative extension of `J a_i = b_i`, `J b_i = -a_i`.
pub fn jmap(x: &MultiVector) -> MultiVector {
    let g = x.genus as u32;
    let mut out = MultiVector::zero(x.genus);
    for (m, c) in &x.terms {
        // each a-bit maps to the matching b-bit, each b-bit to minus the
        // a-bit; the image mask swaps the two halves
        let a_part = m & ((1 << g) - 1);
        let b_part = m >> g;
        let image = (a_part << g) | b_part;
        let mut sign = if b_part.count_ones().is_multiple_of(2) { 1i8 } else { -1 };
        // image factors arrive as (b_{i}.. then a_{j}..); every former
        // a-factor crosses every former b-factor when re-sorting
        let inversions = a_part.count_ones() * b_part.count_ones();
        if inversions % 2 == 1 {
            sign = -sign;
        }
        out.add_term(image, if sign > 0 { c.clone() } else { -c.clone() });
    }
    out
}

/// Contraction `μ(x).v`: the inner-product adjoint of `ν(Jx)`, so
/// `⟨μ(x)v, w⟩ = ⟨v, (Jx) ∧ w⟩` for all `w`.
pub fn contract(x: &MultiVector, v: &MultiVector) -> Result<MultiVector> {
    x.check_genus(v)?;
    let jx = jmap(x);
    let mut out = MultiVector::zero(x.genus);
    for (mu, cu) in &jx.terms {
        for (mv, cv) in &v.terms {
            if mu & !mv != 0 {
                continue;
            }
            let rest = mv & !mu;
            let sign = merge_sign(*mu, rest);
            let c = if sign > 0 { cu * cv } else { -(cu * cv) };
            out.add_term(rest, c);
        }
    }
    Ok(out)
}

/// Degree-one homology class in `(a, b)` coordinates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct HomologyClass {
    pub genus: usize,
    pub coords: Vec<i64>,
}

impl HomologyClass {
    pub fn new(genus: usize, coords: Vec<i64>) -> Result<Self> {
        if coords.len() != 2 * genus {
            return Err(Error::InconsistentInput(format!(
                "homology class needs {} coordinates, got {}",
                2 * genus,
                coords.len()
            )));
        }
        Ok(Self { genus, coords })
    }

    pub fn to_multivector(&self) -> MultiVector {
        let mut v = MultiVector::zero(self.genus);
        for (i, c) in self.coords.iter().enumerate() {
            v.add_term(1 << i, BigInt::from(*c));
        }
        v
    }
}

/// Integer 2g×2g matrix acting on `(a, b)` coordinates and preserving
/// the skew form `(a_i, b_i) = 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SymplecticMatrix {
    genus: usize,
    entries: Vec<i64>,
}

impl SymplecticMatrix {
    pub fn identity(genus: usize) -> Self {
        let n = 2 * genus;
        let mut entries = vec![0; n * n];
        for i in 0..n {
            entries[i * n + i] = 1;
        }
        Self { genus, entries }
    }

    pub fn from_rows(genus: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let n = 2 * genus;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InconsistentInput(format!(
                "matrix must be {n}x{n} for genus {genus}"
            )));
        }
        let m = Self { genus, entries: rows.concat() };
        if !m.is_symplectic() {
            return Err(Error::InconsistentInput(
                "matrix does not preserve the skew form".into(),
            ));
        }
        Ok(m)
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn entry(&self, row: usize, col: usize) -> i64 {
        self.entries[row * 2 * self.genus + col]
    }

    pub fn rows(&self) -> Vec<Vec<i64>> {
        self.entries.chunks(2 * self.genus).map(<[i64]>::to_vec).collect()
    }

    /// The complex structure `J` as a symplectic matrix.
    pub fn complex_structure(genus: usize) -> Self {
        let n = 2 * genus;
        let mut entries = vec![0; n * n];
        for i in 0..genus {
            // J a_i = b_i, J b_i = -a_i (columns give images)
            entries[(genus + i) * n + i] = 1;
            entries[i * n + (genus + i)] = -1;
        }
        Self { genus, entries }
    }

    pub fn mul(&self, rhs: &Self) -> Result<Self> {
        if self.genus != rhs.genus {
            return Err(Error::GenusMismatch(self.genus, rhs.genus));
        }
        let n = 2 * self.genus;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for k in 0..n {
                let aik = self.entries[i * n + k];
                if aik == 0 {
                    continue;
                }
                for j in 0..n {
                    entries[i * n + j] = entries[i * n + j]
                        .checked_add(
                            aik.checked_mul(rhs.entries[k * n + j]).expect("entry overflow"),
                        )
                        .expect("entry overflow");
                }
            }
        }
        Ok(Self { genus: self.genus, entries })
    }

    /// Skew form of two coordinate vectors: `(a_i, b_i) = 1`,
    /// `(b_i, a_i) = -1`, all other pairings 0.
    pub fn skew_product(genus: usize, x: &[i64], y: &[i64]) -> i64 {
        let mut acc: i128 = 0;
        for i in 0..genus {
            acc += x[i] as i128 * y[genus + i] as i128;
            acc -= x[genus + i] as i128 * y[i] as i128;
        }
        i64::try_from(acc).expect("skew product overflow")
    }

    pub fn is_symplectic(&self) -> bool {
        let n = 2 * self.genus;
        let col = |j: usize| -> Vec<i64> { (0..n).map(|i| self.entries[i * n + j]).collect() };
        for i in 0..n {
            let ci = col(i);
            for j in i + 1..n {
                let expect = if j == i + self.genus { 1 } else { 0 };
                if Self::skew_product(self.genus, &ci, &col(j)) != expect {
                    return false;
                }
            }
        }
        true
    }

    /// Symplectic transvection `x ↦ x + (x, v)·v` (its inverse for
    /// `power = -1`).
    pub fn transvection(genus: usize, v: &[i64], power: i64) -> Self {
        let n = 2 * genus;
        assert_eq!(v.len(), n);
        let mut entries = vec![0i64; n * n];
        // column j of the matrix is e_j + power·(e_j, v)·v
        for j in 0..n {
            let mut e = vec![0i64; n];
            e[j] = 1;
            let s = Self::skew_product(genus, &e, v);
            for i in 0..n {
                entries[i * n + j] = e[i] + power * s * v[i];
            }
        }
        Self { genus, entries }
    }

    pub fn transpose(&self) -> Self {
        let n = 2 * self.genus;
        let mut entries = vec![0i64; n * n];
        for i in 0..n {
            for j in 0..n {
                entries[j * n + i] = self.entries[i * n + j];
            }
        }
        Self { genus: self.genus, entries }
    }

    /// Inverse of a symplectic matrix: `M⁻¹ = S⁻¹ Mᵀ S` with `S` the
    /// skew-form matrix.
    pub fn inverse(&self) -> Self {
        let g = self.genus;
        let n = 2 * g;
        let t = self.transpose();
        // S maps a_i ↦ -b_i? No: S e_i = column i of the pairing matrix.
        // Conjugating by S: (S⁻¹ Mᵀ S)_{ij} with S e_i = e_{g+i}, S e_{g+i} = -e_i.
        let mut entries = vec![0i64; n * n];
        let sgn = |k: usize| if k < g { 1i64 } else { -1 };
        let shift = |k: usize| if k < g { k + g } else { k - g };
        for i in 0..n {
            for j in 0..n {
                // (S⁻¹ Mᵀ S)_{ij} = s_i⁻¹-factor · Mᵀ_{shift(i), shift(j)} · s_j-factor
                let v = t.entries[shift(i) * n + shift(j)];
                entries[i * n + j] = sgn(i) * sgn(j) * v;
            }
        }
        let inv = Self { genus: g, entries };
        debug_assert_eq!(self.mul(&inv).unwrap(), Self::identity(g));
        inv
    }

    /// Column `j` as a degree-one multivector.
    pub fn column_class(&self, j: usize) -> MultiVector {
        let n = 2 * self.genus;
        let mut v = MultiVector::zero(self.genus);
        for i in 0..n {
            v.add_term(1 << i, BigInt::from(self.entries[i * n + j]));
        }
        v
    }

    /// Image of a coordinate vector.
    pub fn apply(&self, x: &[i64]) -> Vec<i64> {
        let n = 2 * self.genus;
        (0..n)
            .map(|i| {
                let mut acc: i128 = 0;
                for j in 0..n {
                    acc += self.entries[i * n + j] as i128 * x[j] as i128;
                }
                i64::try_from(acc).expect("overflow applying matrix")
            })
            .collect()
    }

    pub fn trace(&self) -> i64 {
        let n = 2 * self.genus;
        (0..n).map(|i| self.entries[i * n + i]).sum()
    }
}

/// Asserts the compatibility of the fixed conventions: `(a_i, b_i) = 1`
/// under the skew form, `b_i = J a_i`, and `(x, Jy) = ⟨x, y⟩` on
/// degree-one classes. Cheap enough to run once at program start.
pub fn check_conventions() {
    let g = 2;
    for i in 0..2 * g {
        for j in 0..2 * g {
            let jy = jmap(&MultiVector::monomial(g, 1 << j, 1));
            let (jmask, jcoeff) = jy.terms().next().expect("nonzero image");
            let mut ycoords = vec![0i64; 2 * g];
            ycoords[jmask.trailing_zeros() as usize] =
                i64::try_from(jcoeff.clone()).expect("unit coefficient");
            let mut xcoords = vec![0i64; 2 * g];
            xcoords[i] = 1;
            let skew = SymplecticMatrix::skew_product(g, &xcoords, &ycoords);
            assert_eq!(skew, i64::from(i == j), "(x, Jy) = <x, y> fails at ({i}, {j})");
        }
    }
    let j = SymplecticMatrix::complex_structure(g);
    assert!(j.is_symplectic(), "J must preserve the skew form");
}

/// Multiplicative extension of the linear symplectic action to `∧*H`.
pub fn sp_action(m: &SymplecticMatrix, x: &MultiVector) -> Result<MultiVector> {
    if m.genus() != x.genus() {
        return Err(Error::GenusMismatch(m.genus(), x.genus()));
    }
    let g = x.genus();
    let columns: Vec<MultiVector> = (0..2 * g).map(|j| m.column_class(j)).collect();
    let mut out = MultiVector::zero(g);
    for (mask, c) in x.terms() {
        let mut acc = MultiVector::scalar(g, 1);
        let mut rem = mask;
        while rem != 0 {
            let bit = rem.trailing_zeros() as usize;
            acc = wedge(&acc, &columns[bit])?;
            if acc.is_zero() {
                break;
            }
            rem &= rem - 1;
        }
        out = out.add(&acc.scaled(c));
    }
    Ok(out)
}
