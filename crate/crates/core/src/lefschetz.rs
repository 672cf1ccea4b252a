//! The Lefschetz sl₂ action `(E, F, Ĥ)` on `∧*H₁(Σ_g)` and its
//! decomposition into irreducible components `V^(j)` as saturated
//! integer lattices.
//!
//! `E` wedges with `ω_g`, `F` is its inner-product adjoint and `Ĥ`
//! scales a homogeneous form by `deg - g`. The component `V^(j)(Σ_g)`
//! is `ker F` in degree `g + 1 - j`.
//!
//! Both `E` and `F` preserve the handle pattern of a monomial (which
//! handles carry a lone `a`, a lone `b`, both letters, or neither), so
//! the kernel computation splits into small independent sectors indexed
//! by the frozen pattern. Each sector kernel is a saturated integer
//! lattice obtained by integer row reduction, and the union over
//! sectors is a saturated basis of the whole component.

use std::collections::BTreeMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exterior::{contract, inner, wedge, Mask, MultiVector};
use crate::linalg::{integer_kernel, IntMat};
use crate::rings::Rational;

/// `E.x = ω_g ∧ x`.
pub fn raise(x: &MultiVector) -> MultiVector {
    wedge(&MultiVector::omega(x.genus()), x).expect("same genus")
}

/// `F = E*`, contraction with `ω_g` (which is `J`-invariant).
pub fn lower(x: &MultiVector) -> MultiVector {
    contract(&MultiVector::omega(x.genus()), x).expect("same genus")
}

/// `Ĥ.x = (deg(x) - g)·x` extended over homogeneous pieces.
pub fn weight(x: &MultiVector) -> MultiVector {
    let g = x.genus();
    let mut out = MultiVector::zero(g);
    for (mask, c) in x.terms() {
        let h = BigInt::from(mask.count_ones() as i64 - g as i64);
        out.add_term(mask, c * h);
    }
    out
}

/// `E^k`.
pub fn raise_power(x: &MultiVector, k: usize) -> MultiVector {
    let mut v = x.clone();
    for _ in 0..k {
        v = raise(&v);
    }
    v
}

/// Dimension of `V^(j)(Σ_g)`: `C(2g, g+1-j) - C(2g, g-1-j)`.
pub fn component_dimension(g: usize, j: usize) -> usize {
    if j == 0 || j > g + 1 {
        return 0;
    }
    let d = (g + 1 - j) as i64;
    (binomial(2 * g, d) - binomial(2 * g, d - 2)) as usize
}

pub fn binomial(n: usize, k: i64) -> u128 {
    if k < 0 || k as usize > n {
        return 0;
    }
    let k = (k as usize).min(n - k as usize);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc
}

/// Frozen handle pattern of a sector: handles carrying a lone `a`
/// letter and handles carrying a lone `b` letter. The remaining handles
/// are free and hold complete `a_i ∧ b_i` pairs.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SectorKey {
    pub lone_a: Mask,
    pub lone_b: Mask,
}

/// Contiguous slice of a component basis living in one sector.
#[derive(Debug, Clone)]
pub struct Sector {
    pub key: SectorKey,
    /// ambient monomial masks of the sector, ascending
    pub masks: Vec<Mask>,
    /// basis index range inside the component
    pub range: std::ops::Range<usize>,
    /// integer Gram block of the basis vectors in this sector
    pub gram: IntMat,
}

/// Saturated integer basis of `V^(j)(Σ_g) = ker F ∩ {deg = g+1-j}`,
/// with per-sector Gram data.
#[derive(Debug, Clone)]
pub struct LefschetzComponent {
    pub genus: usize,
    pub index: usize,
    pub basis: Vec<MultiVector>,
    pub sectors: Vec<Sector>,
}

impl LefschetzComponent {
    pub fn dimension(&self) -> usize {
        self.basis.len()
    }

    pub fn degree(&self) -> usize {
        self.genus + 1 - self.index
    }

    /// All degree-d monomial masks of the ambient space, ascending.
    pub fn ambient_masks(&self) -> Vec<Mask> {
        let d = self.degree() as u32;
        let top: u64 = 1u64 << (2 * self.genus);
        (0..top).map(|m| m as Mask).filter(|m| m.count_ones() == d).collect()
    }

    /// Basis matrix with one column per basis vector over the given
    /// ambient monomials.
    pub fn basis_matrix(&self, masks: &[Mask]) -> IntMat {
        let pos: BTreeMap<Mask, usize> = masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut b = IntMat::zeros(masks.len(), self.basis.len());
        for (col, v) in self.basis.iter().enumerate() {
            for (mask, c) in v.terms() {
                b[(pos[&mask], col)] = c.clone();
            }
        }
        b
    }

    pub fn sector_basis_matrix(&self, sector: &Sector) -> IntMat {
        let pos: BTreeMap<Mask, usize> =
            sector.masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut b = IntMat::zeros(sector.masks.len(), sector.range.len());
        for (col, idx) in sector.range.clone().enumerate() {
            for (mask, c) in self.basis[idx].terms() {
                b[(pos[&mask], col)] = c.clone();
            }
        }
        b
    }

    /// Exact coordinates of `v` in this basis; `None` when `v` is not in
    /// the rational span.
    pub fn coordinates(&self, v: &MultiVector) -> Option<Vec<Rational>> {
        if v.genus() != self.genus {
            return None;
        }
        // solve sector by sector; support outside the sectors means the
        // vector is not in the span
        let mut coords = vec![Rational::zero(); self.basis.len()];
        let mut seen = MultiVector::zero(self.genus);
        for sector in &self.sectors {
            let rhs: Vec<BigInt> = sector.masks.iter().map(|m| v.coeff(*m)).collect();
            if rhs.iter().all(Zero::is_zero) {
                continue;
            }
            let b = self.sector_basis_matrix(sector);
            let x = crate::linalg::solve_via_gram(&b, &rhs)?;
            for (k, xi) in x.into_iter().enumerate() {
                coords[sector.range.start + k] = xi;
            }
            for m in &sector.masks {
                seen.add_term(*m, v.coeff(*m));
            }
        }
        if &seen == v {
            Some(coords)
        } else {
            None
        }
    }

    /// Reassembles a coordinate vector into an ambient multivector.
    pub fn from_coordinates(&self, coords: &[BigInt]) -> MultiVector {
        let mut v = MultiVector::zero(self.genus);
        for (c, b) in coords.iter().zip(&self.basis) {
            v = v.add(&b.scaled(c));
        }
        v
    }
}

type ComponentCache = Mutex<BTreeMap<(usize, usize), Arc<LefschetzComponent>>>;

fn component_cache() -> &'static ComponentCache {
    static CACHE: OnceLock<ComponentCache> = OnceLock::new();
    CACHE.get_or_init(|| Mutex::new(BTreeMap::new()))
}

/// The component `V^(j)(Σ_g)` as a saturated lattice; results are cached
/// per `(g, j)`. Out-of-range indices give the empty component.
pub fn component_basis(g: usize, j: usize) -> Arc<LefschetzComponent> {
    if let Some(hit) = component_cache().lock().unwrap().get(&(g, j)) {
        return hit.clone();
    }
    let built = Arc::new(build_component(g, j));
    component_cache().lock().unwrap().insert((g, j), built.clone());
    built
}

fn build_component(g: usize, j: usize) -> LefschetzComponent {
    let mut comp =
        LefschetzComponent { genus: g, index: j, basis: Vec::new(), sectors: Vec::new() };
    if j == 0 || j > g + 1 {
        return comp;
    }
    let d = g + 1 - j;
    let all_handles: Mask = ((1u64 << g) - 1) as Mask;
    // enumerate frozen patterns with |lone_a| + |lone_b| + 2·pairs = d
    for lone_a in subsets_of(all_handles) {
        for lone_b in subsets_of(all_handles & !lone_a) {
            let frozen = (lone_a.count_ones() + lone_b.count_ones()) as usize;
            if frozen > d || !(d - frozen).is_multiple_of(2) {
                continue;
            }
            let pairs = (d - frozen) / 2;
            let free = all_handles & !lone_a & !lone_b;
            if pairs > free.count_ones() as usize {
                continue;
            }
            build_sector(g, SectorKey { lone_a, lone_b }, pairs, free, &mut comp);
        }
    }
    comp
}

fn sector_mask(g: usize, key: SectorKey, pair_handles: &[u32]) -> Mask {
    let mut m = key.lone_a | (key.lone_b << g);
    for h in pair_handles {
        m |= (1 << h) | (1 << (g as u32 + h));
    }
    m
}

fn build_sector(g: usize, key: SectorKey, pairs: usize, free: Mask, comp: &mut LefschetzComponent) {
    let free_handles: Vec<u32> = bits_of(free);
    let masks: Vec<Mask> = k_subsets(&free_handles, pairs)
        .iter()
        .map(|subset| sector_mask(g, key, subset))
        .collect();
    if masks.is_empty() {
        return;
    }
    let kernel_coords: Vec<Vec<BigInt>> = if pairs == 0 {
        vec![vec![BigInt::one()]]
    } else {
        // F restricted to the sector lands in the same pattern with one
        // pair removed
        let image_masks: Vec<Mask> = k_subsets(&free_handles, pairs - 1)
            .iter()
            .map(|subset| sector_mask(g, key, subset))
            .collect();
        let image_pos: BTreeMap<Mask, usize> =
            image_masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
        let mut f_mat = IntMat::zeros(image_masks.len(), masks.len());
        for (col, m) in masks.iter().enumerate() {
            let fm = lower(&MultiVector::monomial(g, *m, 1));
            for (im, c) in fm.terms() {
                f_mat[(image_pos[&im], col)] = c.clone();
            }
        }
        integer_kernel(&f_mat)
    };
    if kernel_coords.is_empty() {
        return;
    }
    let start = comp.basis.len();
    for coords in &kernel_coords {
        let mut v = MultiVector::zero(g);
        for (mask, c) in masks.iter().zip(coords) {
            v.add_term(*mask, c.clone());
        }
        // deterministic sign: first nonzero coordinate positive
        let flip = v.terms().next().is_some_and(|(_, c)| c < &BigInt::zero());
        if flip {
            v = v.neg();
        }
        comp.basis.push(v);
    }
    let range = start..comp.basis.len();
    let dim = range.len();
    let mut gram = IntMat::zeros(dim, dim);
    for (i, bi) in comp.basis[range.clone()].iter().enumerate() {
        for (k, bk) in comp.basis[range.clone()].iter().enumerate() {
            gram[(i, k)] = inner(bi, bk).expect("same genus");
        }
    }
    comp.sectors.push(Sector { key, masks, range, gram });
}

fn bits_of(mask: Mask) -> Vec<u32> {
    let mut out = Vec::new();
    let mut m = mask;
    while m != 0 {
        out.push(m.trailing_zeros());
        m &= m - 1;
    }
    out
}

fn subsets_of(mask: Mask) -> Vec<Mask> {
    let mut subs: Vec<Mask> = Vec::new();
    let mut s: Mask = 0;
    loop {
        subs.push(s);
        if s == mask {
            break;
        }
        s = s.wrapping_sub(mask) & mask;
    }
    subs.sort_unstable();
    subs
}

fn k_subsets(items: &[u32], k: usize) -> Vec<Vec<u32>> {
    fn rec(items: &[u32], k: usize, from: usize, pick: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if pick.len() == k {
            out.push(pick.clone());
            return;
        }
        for i in from..items.len() {
            pick.push(items[i]);
            rec(items, k, i + 1, pick, out);
            pick.pop();
        }
    }
    let mut out = Vec::new();
    rec(items, k, 0, &mut Vec::with_capacity(k), &mut out);
    out
}

/// One sl₂-string slice of a Lefschetz decomposition: coefficients of
/// `E^level` applied to the primitive basis of `V^(index)`.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionPiece {
    pub index: usize,
    pub level: usize,
    pub coords: Vec<Rational>,
}

/// Expresses `x` uniquely as `Σ_{j, level} E^level(primitive vectors)`;
/// [`reassemble`] inverts this exactly.
pub fn decompose(x: &MultiVector) -> Vec<DecompositionPiece> {
    let g = x.genus();
    let mut out = Vec::new();
    for d in 0..=(2 * g as u32) {
        let part = x.degree_part(d);
        if part.is_zero() {
            continue;
        }
        // degree-d block = ⊕_level E^level V^(g+1-d+2·level)
        let mut columns: Vec<MultiVector> = Vec::new();
        let mut layout: Vec<(usize, usize, usize)> = Vec::new();
        for level in 0..=(d as usize / 2) {
            let j_signed = g as i64 + 1 - d as i64 + 2 * level as i64;
            // the sl2 string of V_j stops at level j-1: E^level kills the
            // primitives beyond it
            if j_signed < 1 || level as i64 > j_signed - 1 {
                continue;
            }
            let j = j_signed as usize;
            let dim = component_dimension(g, j);
            if dim == 0 {
                continue;
            }
            let comp = component_basis(g, j);
            for b in &comp.basis {
                columns.push(raise_power(b, level));
            }
            layout.push((j, level, dim));
        }
        let masks: Vec<Mask> = {
            let top: u64 = 1u64 << (2 * g);
            (0..top).map(|m| m as Mask).filter(|m| m.count_ones() == d).collect()
        };
        let mat = IntMat::from_fn(masks.len(), columns.len(), |i, jx| columns[jx].coeff(masks[i]));
        let rhs: Vec<BigInt> = masks.iter().map(|m| part.coeff(*m)).collect();
        let solution = crate::linalg::solve_via_gram(&mat, &rhs)
            .expect("sl2 strings span each degree block over the rationals");
        let mut offset = 0usize;
        for (j, level, dim) in layout {
            let coords = solution[offset..offset + dim].to_vec();
            offset += dim;
            if coords.iter().any(|c| !c.is_zero()) {
                out.push(DecompositionPiece { index: j, level, coords });
            }
        }
    }
    out
}

/// Rebuilds the multivector described by [`decompose`]; panics when the
/// pieces do not assemble integrally.
pub fn reassemble(g: usize, pieces: &[DecompositionPiece]) -> MultiVector {
    let mut acc_num = MultiVector::zero(g);
    let mut denom = BigInt::one();
    for piece in pieces {
        let comp = component_basis(g, piece.index);
        for (c, b) in piece.coords.iter().zip(&comp.basis) {
            if c.is_zero() {
                continue;
            }
            let term = raise_power(b, piece.level);
            let new_denom = &denom * c.denom();
            acc_num = acc_num.scaled(c.denom());
            acc_num = acc_num.add(&term.scaled(&(c.numer() * &denom)));
            denom = new_denom;
        }
    }
    let mut out = MultiVector::zero(g);
    for (m, c) in acc_num.terms() {
        let (q, r) = num_integer::Integer::div_rem(c, &denom);
        assert!(r.is_zero(), "non-integral reassembly");
        out.add_term(m, q);
    }
    out
}

/// Primitive (F-kernel) component of a homogeneous multivector as an
/// exact numerator/denominator pair with positive reduced denominator.
pub fn primitive_part(x: &MultiVector) -> (MultiVector, BigInt) {
    let g = x.genus();
    let Some(d) = x.homogeneous_degree() else {
        assert!(x.is_zero(), "primitive part needs a homogeneous input");
        return (MultiVector::zero(g), BigInt::one());
    };
    let j = g as i64 + 1 - d as i64;
    let mut num = MultiVector::zero(g);
    let mut den = BigInt::one();
    for piece in decompose(x) {
        if piece.level != 0 || piece.index as i64 != j {
            continue;
        }
        let comp = component_basis(g, piece.index);
        for (c, b) in piece.coords.iter().zip(&comp.basis) {
            if c.is_zero() {
                continue;
            }
            let new_den = &den * c.denom();
            num = num.scaled(c.denom());
            num = num.add(&b.scaled(&(c.numer() * &den)));
            den = new_den;
        }
    }
    let mut content =
        num.terms().fold(BigInt::zero(), |acc, (_, c)| num_integer::Integer::gcd(&acc, c));
    content = num_integer::Integer::gcd(&content, &den);
    if content > BigInt::one() {
        let mut reduced = MultiVector::zero(g);
        for (m, c) in num.terms() {
            reduced.add_term(m, c / &content);
        }
        num = reduced;
        den /= content;
    }
    (num, den)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::{sp_action, SymplecticMatrix};
    use crate::linalg::elementary_divisors;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    #[test]
    fn sl2_generator_examples() {
        let g = 3;
        // F(a_i ∧ b_i) = 1
        for i in 1..=g {
            let ab = wedge(&MultiVector::a(g, i), &MultiVector::b(g, i)).unwrap();
            assert_eq!(lower(&ab), MultiVector::scalar(g, 1));
        }
        // E(1) = ω and F(ω) = g, so (FE - EF)(1) = g·1 = -Ĥ(1)
        let one = MultiVector::scalar(g, 1);
        assert_eq!(raise(&one), MultiVector::omega(g));
        assert_eq!(lower(&MultiVector::omega(g)), MultiVector::scalar(g, g as i64));
        let comm = lower(&raise(&one)).sub(&raise(&lower(&one)));
        assert_eq!(comm, MultiVector::scalar(g, g as i64));
        assert_eq!(weight(&one), MultiVector::scalar(g, -(g as i64)));
    }

    #[test]
    fn commutator_is_weight_operator() {
        // [E, F] = Ĥ in the convention fixed by the sign of Ĥ below
        for g in 1..=4 {
            for mask in 0..(1u64 << (2 * g)) {
                let m = MultiVector::monomial(g, mask as Mask, 1);
                let ef_minus_fe = raise(&lower(&m)).sub(&lower(&raise(&m)));
                assert_eq!(ef_minus_fe, weight(&m), "g={g} mask={mask:#b}");
            }
        }
    }

    #[test]
    fn component_dimensions() {
        assert_eq!(component_basis(2, 1).dimension(), 5);
        assert_eq!(component_basis(2, 3).dimension(), 1);
        assert_eq!(component_basis(2, 3).basis, vec![MultiVector::scalar(2, 1)]);
        assert_eq!(component_basis(1, 2).dimension(), 1);
        for g in 1..=4 {
            for j in 1..=g + 1 {
                let comp = component_basis(g, j);
                assert_eq!(comp.dimension(), component_dimension(g, j), "g={g} j={j}");
                for b in &comp.basis {
                    assert!(lower(b).is_zero());
                    assert_eq!(b.homogeneous_degree(), Some((g + 1 - j) as u32));
                }
            }
        }
    }

    #[test]
    fn component_dimension_against_rational_kernel() {
        // brute-force oracle: rational nullity of F on the whole degree
        // block, no sector splitting
        for (g, j) in [(2usize, 1usize), (2, 2), (3, 2)] {
            let d = (g + 1 - j) as u32;
            let masks: Vec<Mask> = (0..1u64 << (2 * g))
                .map(|m| m as Mask)
                .filter(|m| m.count_ones() == d)
                .collect();
            let image_masks: Vec<Mask> = (0..1u64 << (2 * g))
                .map(|m| m as Mask)
                .filter(|m| d >= 2 && m.count_ones() == d - 2)
                .collect();
            let mat = IntMat::from_fn(image_masks.len(), masks.len(), |i, c| {
                lower(&MultiVector::monomial(g, masks[c], 1)).coeff(image_masks[i])
            });
            let nullity = masks.len() - crate::linalg::rank(&mat);
            assert_eq!(component_basis(g, j).dimension(), nullity, "g={g} j={j}");
        }
    }

    #[test]
    fn multiplicity_identity() {
        for g in 1..=6 {
            let total: usize = (1..=g + 1).map(|j| j * component_dimension(g, j)).sum();
            assert_eq!(total, 1 << (2 * g), "g={g}");
        }
    }

    #[test]
    fn saturation_unit_divisors() {
        for g in 1..=4 {
            for j in 1..=g + 1 {
                let comp = component_basis(g, j);
                if comp.dimension() == 0 {
                    continue;
                }
                let b = comp.basis_matrix(&comp.ambient_masks());
                let divisors = elementary_divisors(&b);
                assert_eq!(divisors.len(), comp.dimension());
                assert!(divisors.iter().all(|d| d.is_one()), "g={g} j={j}");
            }
        }
    }

    #[test]
    fn raising_injective_above_middle() {
        // full-rank check of E on each component with j >= 2
        for g in 2..=4 {
            for j in 2..=g + 1 {
                let comp = component_basis(g, j);
                if comp.dimension() == 0 {
                    continue;
                }
                let images: Vec<MultiVector> = comp.basis.iter().map(raise).collect();
                let masks: Vec<Mask> = {
                    let d = (comp.degree() + 2) as u32;
                    (0..1u64 << (2 * g)).map(|m| m as Mask).filter(|m| m.count_ones() == d).collect()
                };
                let mat = IntMat::from_fn(masks.len(), images.len(), |i, c| {
                    images[c].coeff(masks[i])
                });
                assert_eq!(
                    crate::linalg::rank(&mat),
                    comp.dimension(),
                    "E not injective on V^({j})(S_{g})"
                );
            }
        }
    }

    #[test]
    fn decompose_omega_and_primitives() {
        let g = 3;
        let pieces = decompose(&MultiVector::omega(g));
        assert_eq!(pieces.len(), 1);
        assert_eq!((pieces[0].index, pieces[0].level), (g + 1, 1));
        let pieces = decompose(&MultiVector::a(g, 1));
        assert_eq!(pieces.len(), 1);
        assert_eq!((pieces[0].index, pieces[0].level), (g, 0));
        assert!(lower(&MultiVector::a(g, 1)).is_zero());
    }

    #[test]
    fn decompose_reassemble_round_trip() {
        let mut rng = StdRng::seed_from_u64(11);
        for g in 1..=4 {
            for _ in 0..25 {
                let mut x = MultiVector::zero(g);
                for _ in 0..rng.gen_range(0..6) {
                    let mask = rng.gen_range(0..(1u64 << (2 * g))) as Mask;
                    x.add_term(mask, BigInt::from(rng.gen_range(-4i64..=4)));
                }
                let pieces = decompose(&x);
                assert_eq!(reassemble(g, &pieces), x, "g={g}");
            }
        }
    }

    #[test]
    fn components_are_sp_invariant() {
        let g = 3;
        let comp = component_basis(g, 2);
        let m = SymplecticMatrix::transvection(g, &[1, 0, -1, 0, 1, 1], 1)
            .mul(&SymplecticMatrix::transvection(g, &[0, 1, 0, 1, 0, 0], -1))
            .unwrap();
        for b in &comp.basis {
            let image = sp_action(&m, b).unwrap();
            assert!(comp.coordinates(&image).is_some());
        }
    }

    #[test]
    fn primitive_part_halves_when_needed() {
        // x = a1∧a2∧b2 at g=3 has primitive part x - ω∧a1/2
        let g = 3;
        let x = wedge(
            &wedge(&MultiVector::a(g, 1), &MultiVector::a(g, 2)).unwrap(),
            &MultiVector::b(g, 2),
        )
        .unwrap();
        let (num, den) = primitive_part(&x);
        assert_eq!(den, BigInt::from(2));
        // 2x - num = ω ∧ a1
        let diff = x.scaled(&BigInt::from(2)).sub(&num);
        let expected = wedge(&MultiVector::omega(g), &MultiVector::a(g, 1)).unwrap();
        assert_eq!(diff, expected);
        assert!(lower(&num).is_zero());
    }
}
