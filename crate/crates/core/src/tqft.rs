//! The lattice TQFT functor on cobordism words: mapping classes act by
//! the induced symplectic action on `∧*H₁`, a 1-handle attachment sends
//! `α ↦ α ∧ a_{g+1}`, and the dual 2-handle attachment is its
//! inner-product adjoint.
//!
//! Traces of a genus-preserving word on the Lefschetz components give
//! the fundamental torsion weights `Δ^(j)`, and the Lefschetz trace
//! `Σ_d (-t)^{d-g}·tr_d` recovers the Alexander polynomial of the
//! covering cobordism.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};
use rand::Rng;

use crate::exterior::{inner, sp_action, Mask, MultiVector, SymplecticMatrix};
use crate::lefschetz::{binomial, component_basis};
use crate::linalg::{self, IntMat};
use crate::rings::{quantum_integer, symmetrize_and_normalize, LaurentPolynomial, QuantumSign};
use crate::{Error, Result};

/// One elementary cobordism.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Generator {
    /// Mapping class acting through its symplectic image.
    Mcg(SymplecticMatrix),
    /// 1-handle attachment `Σ_g → Σ_{g+1}`, `α ↦ α ∧ a_{g+1}`.
    AddHandle,
    /// Dual 2-handle attachment `Σ_g → Σ_{g-1}`, the adjoint of
    /// `AddHandle`.
    RemoveHandle,
}

/// Composable word of elementary cobordisms, applied left to right.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CobordismWord {
    start_genus: usize,
    ops: Vec<Generator>,
}

impl CobordismWord {
    pub fn new(start_genus: usize, ops: Vec<Generator>) -> Result<Self> {
        let mut g = start_genus;
        for (i, op) in ops.iter().enumerate() {
            match op {
                Generator::Mcg(m) => {
                    if m.genus() != g {
                        return Err(Error::InvalidWord(format!(
                            "op {i}: mapping class at genus {} but word is at genus {g}",
                            m.genus()
                        )));
                    }
                }
                Generator::AddHandle => g += 1,
                Generator::RemoveHandle => {
                    if g == 0 {
                        return Err(Error::InvalidWord(format!(
                            "op {i}: cannot remove a handle at genus 0"
                        )));
                    }
                    g -= 1;
                }
            }
        }
        Ok(Self { start_genus, ops })
    }

    pub fn mapping_class(m: SymplecticMatrix) -> Self {
        Self { start_genus: m.genus(), ops: vec![Generator::Mcg(m)] }
    }

    pub fn start_genus(&self) -> usize {
        self.start_genus
    }

    pub fn end_genus(&self) -> usize {
        let mut g = self.start_genus;
        for op in &self.ops {
            match op {
                Generator::Mcg(_) => {}
                Generator::AddHandle => g += 1,
                Generator::RemoveHandle => g -= 1,
            }
        }
        g
    }

    pub fn ops(&self) -> &[Generator] {
        &self.ops
    }

    /// Words containing handles are defined only up to a global sign.
    pub fn has_handles(&self) -> bool {
        self.ops.iter().any(|op| !matches!(op, Generator::Mcg(_)))
    }

    fn require_trace_shape(&self) -> Result<()> {
        if self.start_genus != self.end_genus() {
            return Err(Error::InvalidWord(format!(
                "trace needs start genus = end genus, got {} -> {}",
                self.start_genus,
                self.end_genus()
            )));
        }
        Ok(())
    }
}

/// `α ↦ α ∧ a_{g+1}` with the mask re-indexed into genus `g+1`.
fn add_handle(x: &MultiVector) -> MultiVector {
    let g = x.genus();
    let new_a = 1u32 << g; // a_{g+1}
    let mut out = MultiVector::zero(g + 1);
    for (m, c) in x.terms() {
        let a_part = m & ((1 << g) - 1);
        let b_part = m >> g;
        let lifted: Mask = a_part | (b_part << (g + 1));
        // a_{g+1} passes the b-letters of the monomial when sorted in
        let sign_flip = b_part.count_ones() % 2 == 1;
        out.add_term(lifted | new_a, if sign_flip { -c.clone() } else { c.clone() });
    }
    out
}

/// Adjoint of [`add_handle`]: kills monomials without `a_g` or with
/// `b_g`, strips `a_g` from the rest.
fn remove_handle(x: &MultiVector) -> MultiVector {
    let g = x.genus();
    assert!(g >= 1);
    let a_bit = 1u32 << (g - 1);
    let b_bit = 1u32 << (2 * g - 1);
    let mut out = MultiVector::zero(g - 1);
    for (m, c) in x.terms() {
        if m & a_bit == 0 || m & b_bit != 0 {
            continue;
        }
        let a_part = (m & !a_bit) & ((1 << g) - 1);
        let b_part = m >> g; // b_g absent
        let dropped: Mask = a_part | (b_part << (g - 1));
        let sign_flip = b_part.count_ones() % 2 == 1;
        out.add_term(dropped, if sign_flip { -c.clone() } else { c.clone() });
    }
    out
}

/// Applies the word's functor image to a state at the start genus.
pub fn apply_word(word: &CobordismWord, x: &MultiVector) -> Result<MultiVector> {
    if x.genus() != word.start_genus {
        return Err(Error::GenusMismatch(word.start_genus, x.genus()));
    }
    let mut v = x.clone();
    for op in &word.ops {
        v = match op {
            Generator::Mcg(m) => sp_action(m, &v)?,
            Generator::AddHandle => add_handle(&v),
            Generator::RemoveHandle => remove_handle(&v),
        };
    }
    Ok(v)
}

/// Full integer matrix of the word on the monomial bases
/// (`2^{2g_end} × 2^{2g_start}`).
pub fn functor_matrix(word: &CobordismWord) -> Result<IntMat> {
    let rows = 1usize << (2 * word.end_genus());
    let cols = 1usize << (2 * word.start_genus);
    let mut mat = IntMat::zeros(rows, cols);
    for col in 0..cols {
        let image = apply_word(word, &MultiVector::monomial(word.start_genus, col as Mask, 1))?;
        for (m, c) in image.terms() {
            mat[(m as usize, col)] = c.clone();
        }
    }
    Ok(mat)
}

/// `⟨Ω_g, ψ̄·Ω_g⟩` for the standard Heegaard-splitting regluing; equals
/// `±|H₁(M_ψ)|`, and 0 exactly when `b₁(M_ψ) ≥ 1`.
pub fn heegaard_invariant(psi: &SymplecticMatrix) -> BigInt {
    let omega = MultiVector::handle_body_state(psi.genus());
    let image = sp_action(psi, &omega).expect("same genus");
    inner(&omega, &image).expect("same genus")
}

/// Fundamental torsion weights of a genus-preserving word.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WeightVector {
    pub genus: usize,
    pub weights: BTreeMap<usize, BigInt>,
    /// set when the word contains handle attachments, whose functor
    /// image is defined only up to a global sign
    pub sign_ambiguous: bool,
}

impl WeightVector {
    pub fn from_entries(genus: usize, entries: &[(usize, i64)]) -> Self {
        let weights = entries
            .iter()
            .filter(|(_, v)| *v != 0)
            .map(|(j, v)| (*j, BigInt::from(*v)))
            .collect();
        Self { genus, weights, sign_ambiguous: false }
    }

    pub fn weight(&self, j: usize) -> BigInt {
        self.weights.get(&j).cloned().unwrap_or_default()
    }

    pub fn max_index(&self) -> usize {
        self.weights.keys().next_back().copied().unwrap_or(0)
    }

    pub fn negated(&self) -> Self {
        Self {
            genus: self.genus,
            weights: self.weights.iter().map(|(j, v)| (*j, -v.clone())).collect(),
            sign_ambiguous: self.sign_ambiguous,
        }
    }
}

/// Trace of the word on each Lefschetz component `V^(j)`, computed by
/// compressing with the saturated basis and solving the Gram system
/// exactly; every compressed entry must come out integral.
pub fn fundamental_weights(word: &CobordismWord) -> Result<WeightVector> {
    word.require_trace_shape()?;
    let g = word.start_genus;
    let mut weights = BTreeMap::new();
    for j in 1..=g + 1 {
        let comp = component_basis(g, j);
        if comp.dimension() == 0 {
            continue;
        }
        let images: Vec<MultiVector> =
            comp.basis.iter().map(|b| apply_word(word, b)).collect::<Result<_>>()?;
        let mut trace = BigInt::zero();
        for sector in &comp.sectors {
            let n = sector.range.len();
            let d = IntMat::from_fn(n, n, |r, c| {
                inner(&comp.basis[sector.range.start + r], &images[sector.range.start + c])
                    .expect("same genus")
            });
            let x = linalg::solve_rational(&sector.gram, &d)
                .expect("sector Gram blocks are positive definite");
            for (i, row) in x.iter().enumerate() {
                for entry in row {
                    if !entry.denom().is_one() {
                        return Err(Error::NonIntegralTrace);
                    }
                }
                trace += row[i].numer();
            }
        }
        if !trace.is_zero() {
            weights.insert(j, trace);
        }
    }
    Ok(WeightVector { genus: g, weights, sign_ambiguous: word.has_handles() })
}

/// Lefschetz trace `Σ_d (-t)^{d-g}·trace(word on degree d)`; equals
/// `Σ_j [j]_{-t}·Δ^(j)` exactly.
pub fn alexander_trace(word: &CobordismWord) -> Result<LaurentPolynomial> {
    word.require_trace_shape()?;
    let g = word.start_genus;
    let mut degree_traces: BTreeMap<u32, BigInt> = BTreeMap::new();
    for mask in 0..(1u64 << (2 * g)) {
        let m = MultiVector::monomial(g, mask as Mask, 1);
        let image = apply_word(word, &m)?;
        let diag = image.coeff(mask as Mask);
        if !diag.is_zero() {
            *degree_traces.entry((mask as Mask).count_ones()).or_default() += diag;
        }
    }
    let mut poly = LaurentPolynomial::zero();
    for (d, tr) in degree_traces {
        let e = d as i64 - g as i64;
        // (-t)^e = (-1)^e t^e
        let c = if e.rem_euclid(2) == 0 { tr } else { -tr };
        poly.add_term(e, c);
    }
    Ok(poly)
}

/// Expansion `Σ_j [j]_{-t}·Δ^(j)` of a weight vector.
pub fn weights_to_polynomial(w: &WeightVector) -> LaurentPolynomial {
    let mut poly = LaurentPolynomial::zero();
    for (j, v) in &w.weights {
        let term = quantum_integer(*j as u64, QuantumSign::MinusQ).scaled(v);
        poly = &poly + &term;
    }
    poly
}

/// `±t^{-g}·|Tors|·det(A⁺ - t·A⁻)`, symmetrized and sign-normalized.
pub fn alexander_from_presentation(
    a_plus: &IntMat,
    a_minus: &IntMat,
    torsion_order: u64,
    g: usize,
) -> Result<LaurentPolynomial> {
    let n = 2 * g;
    if a_plus.rows != n || a_plus.cols != n || a_minus.rows != n || a_minus.cols != n {
        return Err(Error::InconsistentInput(format!("presentation matrices must be {n}x{n}")));
    }
    // det(A⁺ - tA⁻) has degree ≤ 2g: interpolate at 2g+1 integer points
    let points: Vec<i64> = (0..=n as i64).map(|k| k - g as i64).collect();
    let values: Vec<BigInt> = points
        .iter()
        .map(|&t| {
            let m =
                IntMat::from_fn(n, n, |i, j| &a_plus[(i, j)] - BigInt::from(t) * &a_minus[(i, j)]);
            linalg::determinant(&m)
        })
        .collect();
    let vand = IntMat::from_fn(n + 1, n + 1, |i, j| BigInt::from(points[i]).pow(j as u32));
    let rhs = IntMat::from_fn(n + 1, 1, |i, _| values[i].clone());
    let coeffs = linalg::solve_rational(&vand, &rhs).expect("distinct interpolation points");
    let mut det_poly = LaurentPolynomial::zero();
    for (e, c) in coeffs.iter().enumerate() {
        assert!(c[0].denom().is_one(), "interpolating an integer polynomial");
        det_poly.add_term(e as i64, c[0].numer().clone());
    }
    let shifted = det_poly.shifted(-(g as i64)).scaled(&BigInt::from(torsion_order));
    symmetrize_and_normalize(&shifted)
}

/// Exponent of the half-projective composition law: the rank of the
/// Mayer-Vietoris connecting map from component counts. Any strictly
/// positive value forces the composite functor image to vanish in an
/// `x = 0` theory.
pub fn halfprojective_exponent(
    b0_intersection: u64,
    b0_c1: u64,
    b0_c2: u64,
    b0_union: u64,
) -> Result<u64> {
    let rank = b0_intersection as i64 - (b0_c1 as i64 + b0_c2 as i64 - b0_union as i64);
    if rank < 0 {
        return Err(Error::NegativeRank);
    }
    Ok(rank as u64)
}

/// Random element of `Sp(2g, ℤ)` as a word of at most `len` elementary
/// symplectic transvections; membership is exact by construction.
pub fn random_symplectic(g: usize, len: usize, rng: &mut impl Rng) -> SymplecticMatrix {
    let n = 2 * g;
    let mut m = SymplecticMatrix::identity(g);
    for _ in 0..len {
        let mut v = vec![0i64; n];
        let i = rng.gen_range(0..n);
        v[i] = 1;
        if rng.gen_bool(0.6) {
            let j = rng.gen_range(0..n);
            if j != i {
                v[j] = if rng.gen_bool(0.5) { 1 } else { -1 };
            }
        }
        let power = if rng.gen_bool(0.5) { 1 } else { -1 };
        m = m.mul(&SymplecticMatrix::transvection(g, &v, power)).expect("same genus");
    }
    debug_assert!(m.is_symplectic());
    m
}

/// Symmetrized characteristic polynomial `t^{-g}·det(t·I - ψ̄)`.
pub fn symmetrized_charpoly(psi: &SymplecticMatrix) -> LaurentPolynomial {
    let g = psi.genus();
    let n = 2 * g;
    let a = IntMat::from_fn(n, n, |i, j| BigInt::from(psi.entry(i, j)));
    let coeffs = linalg::charpoly(&a);
    // coefficients arrive highest-degree first
    let mut poly = LaurentPolynomial::zero();
    for (k, c) in coeffs.into_iter().enumerate() {
        poly.add_term((n - k) as i64 - g as i64, c);
    }
    poly
}

/// Number of degree-`d` monomials at genus `g`.
pub fn degree_dimension(g: usize, d: usize) -> u128 {
    binomial(2 * g, d as i64)
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_traits::Signed;
    use rand::rngs::StdRng;
    use rand::SeedableRng;

    fn fig8() -> SymplecticMatrix {
        SymplecticMatrix::from_rows(1, &[vec![2, 1], vec![1, 1]]).unwrap()
    }

    fn trefoil() -> SymplecticMatrix {
        SymplecticMatrix::from_rows(1, &[vec![1, 1], vec![-1, 0]]).unwrap()
    }

    #[test]
    fn functor_matrix_examples() {
        let empty = CobordismWord::new(1, vec![]).unwrap();
        assert_eq!(functor_matrix(&empty).unwrap(), IntMat::identity(4));

        // birth then death of a handle at genus 0 is the identity scalar
        let word =
            CobordismWord::new(0, vec![Generator::AddHandle, Generator::RemoveHandle]).unwrap();
        assert_eq!(functor_matrix(&word).unwrap(), IntMat::identity(1));

        let m = fig8();
        let word = CobordismWord::mapping_class(m.clone());
        let full = functor_matrix(&word).unwrap();
        // the degree-1 block is the matrix itself
        for i in 0..2 {
            for j in 0..2 {
                assert_eq!(full[(1 << i, 1 << j)], BigInt::from(m.entry(i, j)));
            }
        }
    }

    #[test]
    fn word_validation() {
        assert!(CobordismWord::new(0, vec![Generator::RemoveHandle]).is_err());
        assert!(CobordismWord::new(2, vec![Generator::Mcg(fig8())]).is_err());
    }

    #[test]
    fn heegaard_examples() {
        assert_eq!(heegaard_invariant(&SymplecticMatrix::identity(3)), BigInt::one());
        // g=1: [[p,q],[r,s]] gives p
        let m = SymplecticMatrix::from_rows(1, &[vec![3, 1], vec![2, 1]]).unwrap();
        assert_eq!(heegaard_invariant(&m), BigInt::from(3));
        for n in -4i64..=4 {
            let m = SymplecticMatrix::from_rows(1, &[vec![1, 0], vec![n, 1]]).unwrap();
            assert_eq!(heegaard_invariant(&m), BigInt::one());
        }
    }

    #[test]
    fn heegaard_matches_lattice_order() {
        // |H₁| of the reglued splitting is |ℤ^{2g}/(span(b) + ψ̄·span(a))|
        let mut rng = StdRng::seed_from_u64(5);
        for g in 1..=2 {
            for _ in 0..20 {
                let psi = random_symplectic(g, 12, &mut rng);
                let n = 2 * g;
                let lattice = IntMat::from_fn(n, n, |i, j| {
                    if j < g {
                        BigInt::from(i64::from(i == g + j)) // b_j column
                    } else {
                        BigInt::from(psi.entry(i, j - g)) // ψ̄ a_{j-g} column
                    }
                });
                let order = linalg::determinant(&lattice).abs();
                assert_eq!(heegaard_invariant(&psi).abs(), order);
            }
        }
    }

    #[test]
    fn fundamental_weight_examples() {
        let w = fundamental_weights(&CobordismWord::mapping_class(fig8())).unwrap();
        assert_eq!(w.weight(1), BigInt::from(3));
        assert_eq!(w.weight(2), BigInt::from(1));

        let w = fundamental_weights(&CobordismWord::mapping_class(trefoil())).unwrap();
        assert_eq!(w.weight(1), BigInt::from(1));
        assert_eq!(w.weight(2), BigInt::from(1));

        let w = fundamental_weights(&CobordismWord::mapping_class(SymplecticMatrix::identity(2)))
            .unwrap();
        assert_eq!(
            (w.weight(1), w.weight(2), w.weight(3)),
            (BigInt::from(5), BigInt::from(4), BigInt::from(1))
        );
        assert!(!w.sign_ambiguous);
    }

    #[test]
    fn alexander_trace_examples() {
        let id1 = CobordismWord::mapping_class(SymplecticMatrix::identity(1));
        assert_eq!(
            alexander_trace(&id1).unwrap(),
            LaurentPolynomial::from_terms([(1i64, -1i64), (0, 2), (-1, -1)])
        );
        let f8 = CobordismWord::mapping_class(fig8());
        assert_eq!(
            alexander_trace(&f8).unwrap(),
            LaurentPolynomial::from_terms([(1i64, -1i64), (0, 3), (-1, -1)])
        );
        let id2 = CobordismWord::mapping_class(SymplecticMatrix::identity(2));
        assert_eq!(
            alexander_trace(&id2).unwrap(),
            LaurentPolynomial::from_terms([(2i64, 1i64), (1, -4), (0, 6), (-1, -4), (-2, 1)])
        );
    }

    #[test]
    fn trace_equals_quantum_expansion() {
        let mut rng = StdRng::seed_from_u64(9);
        for g in 1..=3 {
            for _ in 0..12 {
                let psi = random_symplectic(g, 14, &mut rng);
                let word = CobordismWord::mapping_class(psi);
                let lhs = alexander_trace(&word).unwrap();
                let rhs = weights_to_polynomial(&fundamental_weights(&word).unwrap());
                assert_eq!(lhs, rhs, "g={g}");
            }
        }
    }

    #[test]
    fn trace_matches_characteristic_polynomial() {
        let mut rng = StdRng::seed_from_u64(17);
        for g in 1..=3 {
            for _ in 0..12 {
                let psi = random_symplectic(g, 14, &mut rng);
                let lhs = alexander_trace(&CobordismWord::mapping_class(psi.clone())).unwrap();
                let mut rhs = symmetrized_charpoly(&psi);
                if g % 2 == 1 {
                    rhs = rhs.scaled(&BigInt::from(-1));
                }
                assert_eq!(lhs, rhs, "g={g}");
            }
        }
    }

    #[test]
    fn conjugation_invariance_of_weights() {
        let mut rng = StdRng::seed_from_u64(23);
        for g in 1..=2 {
            for _ in 0..10 {
                let psi = random_symplectic(g, 10, &mut rng);
                let phi = random_symplectic(g, 10, &mut rng);
                let conj = phi.mul(&psi).unwrap().mul(&phi.inverse()).unwrap();
                let w1 = fundamental_weights(&CobordismWord::mapping_class(psi)).unwrap();
                let w2 = fundamental_weights(&CobordismWord::mapping_class(conj)).unwrap();
                assert_eq!(w1.weights, w2.weights);
            }
        }
    }

    #[test]
    fn trace_at_one_is_lattice_determinant() {
        let mut rng = StdRng::seed_from_u64(31);
        for g in 1..=3 {
            for _ in 0..8 {
                let psi = random_symplectic(g, 12, &mut rng);
                let n = 2 * g;
                let id_minus = IntMat::from_fn(n, n, |i, j| {
                    BigInt::from(i64::from(i == j)) - BigInt::from(psi.entry(i, j))
                });
                let lhs = alexander_trace(&CobordismWord::mapping_class(psi)).unwrap().eval_one();
                let rhs = linalg::determinant(&id_minus);
                assert_eq!(lhs.abs(), rhs.abs(), "g={g}");
            }
        }
    }

    #[test]
    fn presentation_formula_examples() {
        let id = IntMat::identity(2);
        let p = alexander_from_presentation(&id, &id, 1, 1).unwrap();
        assert_eq!(p, LaurentPolynomial::from_terms([(1i64, 1i64), (0, -2), (-1, 1)]));

        // tors = 3 scales by 3
        let p3 = alexander_from_presentation(&id, &id, 3, 1).unwrap();
        assert_eq!(p3, p.scaled(&BigInt::from(3)));

        // A⁺ = H₁(ψ), A⁻ = I reproduces the mapping-torus polynomial
        let psi = fig8();
        let aplus = IntMat::from_fn(2, 2, |i, j| BigInt::from(psi.entry(i, j)));
        let from_pres = alexander_from_presentation(&aplus, &id, 1, 1).unwrap();
        let from_trace = symmetrize_and_normalize(
            &alexander_trace(&CobordismWord::mapping_class(psi)).unwrap(),
        )
        .unwrap();
        assert_eq!(from_pres, from_trace);
    }

    #[test]
    fn handle_words_flag_and_weights() {
        let word =
            CobordismWord::new(1, vec![Generator::AddHandle, Generator::RemoveHandle]).unwrap();
        let w = fundamental_weights(&word).unwrap();
        assert!(w.sign_ambiguous);
        // birth/death around genus 1 composes to the identity
        assert_eq!(w.weight(1), BigInt::from(2));
        assert_eq!(w.weight(2), BigInt::from(1));
    }

    #[test]
    fn halfprojective_exponent_examples() {
        assert_eq!(halfprojective_exponent(1, 1, 1, 1).unwrap(), 0);
        assert_eq!(halfprojective_exponent(2, 1, 1, 1).unwrap(), 1);
        assert_eq!(halfprojective_exponent(3, 1, 1, 1).unwrap(), 2);
        assert_eq!(halfprojective_exponent(0, 1, 1, 1), Err(Error::NegativeRank));
    }
}
