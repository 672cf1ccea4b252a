//! Casson-invariant matrix elements for Dehn twists on bounding curves,
//! the linking form `θ₀` and its operator form, the Casson-Morita
//! cocycle on `U = ∧³H/(ω∧H)`, the `s`-form, eigenspace data of the
//! restricted Casimir operators, and Morita's `η`.
//!
//! A genus-h bounding curve is described by a symplectic basis
//! `u_1..u_h, v_1..v_h` of the subsurface it bounds; the restricted sl₂
//! generated by `E_C = ν(ω_C)` and `F_C = μ(ω_C)` gives the twist value
//! `λ*(D_C) = -⟨Ω_g, E_C F_C Ω_g⟩`.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exterior::{contract, inner, wedge, HomologyClass, Mask, MultiVector, SymplecticMatrix};
use crate::lefschetz::{binomial, component_basis, component_dimension, primitive_part};
use crate::linalg::IntMat;
use crate::rings::Rational;
use crate::{Error, Result};

/// Genus-h subsurface data for a bounding curve: `(u_i, v_j) = δ_ij`,
/// `(u_i, u_j) = (v_i, v_j) = 0` under the skew form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundingCurveSpec {
    pub genus: usize,
    pub subgenus: usize,
    pub u: Vec<HomologyClass>,
    pub v: Vec<HomologyClass>,
}

impl BoundingCurveSpec {
    pub fn new(
        genus: usize,
        subgenus: usize,
        u: Vec<HomologyClass>,
        v: Vec<HomologyClass>,
    ) -> Result<Self> {
        if subgenus == 0 || subgenus >= genus {
            return Err(Error::InvalidCurveSpec(format!(
                "subsurface genus must satisfy 0 < h < g, got h={subgenus} g={genus}"
            )));
        }
        if u.len() != subgenus || v.len() != subgenus {
            return Err(Error::InvalidCurveSpec(format!(
                "need {subgenus} u- and v-classes"
            )));
        }
        for (idx, c) in u.iter().chain(v.iter()).enumerate() {
            if c.genus != genus {
                return Err(Error::InvalidCurveSpec(format!("class {idx} has wrong genus")));
            }
        }
        let spec = Self { genus, subgenus, u, v };
        spec.check_symplectic()?;
        Ok(spec)
    }

    /// Standard curve `C₀^(h)` with `u_i = a_i`, `v_i = b_i`.
    pub fn standard(genus: usize, subgenus: usize) -> Self {
        let unit = |k: usize| {
            let mut coords = vec![0i64; 2 * genus];
            coords[k] = 1;
            HomologyClass { genus, coords }
        };
        Self {
            genus,
            subgenus,
            u: (0..subgenus).map(unit).collect(),
            v: (0..subgenus).map(|i| unit(genus + i)).collect(),
        }
    }

    fn check_symplectic(&self) -> Result<()> {
        let g = self.genus;
        for i in 0..self.subgenus {
            for j in 0..self.subgenus {
                let uu = SymplecticMatrix::skew_product(g, &self.u[i].coords, &self.u[j].coords);
                let vv = SymplecticMatrix::skew_product(g, &self.v[i].coords, &self.v[j].coords);
                let uv = SymplecticMatrix::skew_product(g, &self.u[i].coords, &self.v[j].coords);
                let expect = i64::from(i == j);
                if uu != 0 || vv != 0 || uv != expect {
                    return Err(Error::InvalidCurveSpec(format!(
                        "pairings fail at (i,j)=({i},{j}): (u,u)={uu} (v,v)={vv} (u,v)={uv}"
                    )));
                }
            }
        }
        Ok(())
    }

    /// `ω_C = Σ_i u_i ∧ v_i`.
    pub fn omega(&self) -> MultiVector {
        let mut w = MultiVector::zero(self.genus);
        for (u, v) in self.u.iter().zip(&self.v) {
            w = w.add(&wedge(&u.to_multivector(), &v.to_multivector()).expect("same genus"));
        }
        w
    }

    /// Transports the curve data along a symplectic map.
    pub fn transformed(&self, m: &SymplecticMatrix) -> Result<Self> {
        let push = |c: &HomologyClass| HomologyClass {
            genus: self.genus,
            coords: m.apply(&c.coords),
        };
        Self::new(
            self.genus,
            self.subgenus,
            self.u.iter().map(push).collect(),
            self.v.iter().map(push).collect(),
        )
    }
}

/// The restricted sl₂ operators attached to a bounding curve.
pub struct RestrictedOps {
    omega_c: MultiVector,
}

impl RestrictedOps {
    pub fn new(spec: &BoundingCurveSpec) -> Self {
        Self { omega_c: spec.omega() }
    }

    pub fn raise(&self, x: &MultiVector) -> MultiVector {
        wedge(&self.omega_c, x).expect("same genus")
    }

    pub fn lower(&self, x: &MultiVector) -> MultiVector {
        contract(&self.omega_c, x).expect("same genus")
    }

    /// `Ĥ_C = [E_C, F_C]`.
    pub fn weight(&self, x: &MultiVector) -> MultiVector {
        self.raise(&self.lower(x)).sub(&self.lower(&self.raise(x)))
    }

    /// `4·Q_C = 4·E_C F_C + Ĥ_C(Ĥ_C - 2)`, kept integral.
    pub fn casimir4(&self, x: &MultiVector) -> MultiVector {
        let ef4 = self.raise(&self.lower(x)).scaled(&BigInt::from(4));
        ef4.add(&self.d4(x))
    }

    /// `4·D_C = Ĥ_C(Ĥ_C - 2)`.
    pub fn d4(&self, x: &MultiVector) -> MultiVector {
        let h = self.weight(x);
        self.weight(&h).sub(&h.scaled(&BigInt::from(2)))
    }
}

/// `λ*(D_C) = -⟨Ω_g, E_C F_C Ω_g⟩`.
pub fn casson_twist(spec: &BoundingCurveSpec) -> BigInt {
    let ops = RestrictedOps::new(spec);
    let omega = MultiVector::handle_body_state(spec.genus);
    -inner(&omega, &ops.raise(&ops.lower(&omega))).expect("same genus")
}

/// `⟨Ω, D_C Ω⟩ - ⟨Ω, Q_C Ω⟩` as an exact rational; equals the twist.
pub fn casson_twist_via_casimir(spec: &BoundingCurveSpec) -> Rational {
    let ops = RestrictedOps::new(spec);
    let omega = MultiVector::handle_body_state(spec.genus);
    let d4 = inner(&omega, &ops.d4(&omega)).expect("same genus");
    let q4 = inner(&omega, &ops.casimir4(&omega)).expect("same genus");
    Rational::new(d4 - q4, BigInt::from(4))
}

/// Integer linking matrix `l₀` on the standard basis; its antisymmetric
/// part must be the skew form.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LinkingForm {
    pub genus: usize,
    entries: Vec<i64>,
}

impl LinkingForm {
    /// `l₀(a_i, b_j) = δ_ij`, all other basis pairings 0.
    pub fn standard(genus: usize) -> Self {
        let n = 2 * genus;
        let mut entries = vec![0i64; n * n];
        for i in 0..genus {
            entries[i * n + (genus + i)] = 1;
        }
        Self { genus, entries }
    }

    pub fn from_rows(genus: usize, rows: &[Vec<i64>]) -> Result<Self> {
        let n = 2 * genus;
        if rows.len() != n || rows.iter().any(|r| r.len() != n) {
            return Err(Error::InconsistentInput(format!("linking matrix must be {n}x{n}")));
        }
        let form = Self { genus, entries: rows.concat() };
        // l₀(x,y) - l₀(y,x) is the intersection number
        for i in 0..n {
            for j in 0..n {
                let skew = form.entries[i * n + j] - form.entries[j * n + i];
                let expect = if j == i + genus {
                    1
                } else if i == j + genus {
                    -1
                } else {
                    0
                };
                if skew != expect {
                    return Err(Error::InconsistentInput(format!(
                        "antisymmetric part is not the intersection form at ({i},{j})"
                    )));
                }
            }
        }
        Ok(form)
    }

    pub fn pair(&self, x: usize, y: usize) -> i64 {
        self.entries[x * 2 * self.genus + y]
    }
}

/// Formal sum of `(2-form) ⊗ (2-form)` tensors with integer weights.
pub type TwoTensor = Vec<(MultiVector, MultiVector, BigInt)>;

/// Multilinear extension of
/// `θ₀(a∧b ⊗ c∧d) = l₀(a,c)l₀(b,d) - l₀(a,d)l₀(b,c)`.
pub fn theta0(tensor: &TwoTensor, l: &LinkingForm) -> BigInt {
    let mut acc = BigInt::zero();
    for (alpha, beta, coeff) in tensor {
        let mut part = BigInt::zero();
        for (ma, ca) in alpha.terms() {
            let (x1, x2) = two_bits(ma);
            for (mb, cb) in beta.terms() {
                let (y1, y2) = two_bits(mb);
                let val = l.pair(x1, y1) * l.pair(x2, y2) - l.pair(x1, y2) * l.pair(x2, y1);
                part += ca * cb * BigInt::from(val);
            }
        }
        acc += part * coeff;
    }
    acc
}

fn two_bits(mask: Mask) -> (usize, usize) {
    assert_eq!(mask.count_ones(), 2, "decomposable 2-form monomial expected");
    let first = mask.trailing_zeros() as usize;
    let second = (mask & (mask - 1)).trailing_zeros() as usize;
    (first, second)
}

/// `⟨Ω_g, ν(α)μ(β)Ω_g⟩`.
pub fn psi_pair(alpha: &MultiVector, beta: &MultiVector) -> Result<BigInt> {
    if alpha.genus() != beta.genus() {
        return Err(Error::GenusMismatch(alpha.genus(), beta.genus()));
    }
    let omega = MultiVector::handle_body_state(alpha.genus());
    let pulled = contract(beta, &omega)?;
    inner(&omega, &wedge(alpha, &pulled)?)
}

/// `θ₀` of a tensor through the operator form `Σ ⟨Ω, ν(α)μ(β)Ω⟩`.
pub fn theta0_via_operators(tensor: &TwoTensor) -> Result<BigInt> {
    let mut acc = BigInt::zero();
    for (alpha, beta, coeff) in tensor {
        acc += psi_pair(alpha, beta)? * coeff;
    }
    Ok(acc)
}

/// Element of `U = ∧³H/(ω_g∧H)`, stored with the representative it was
/// built from and its canonical primitive part (which may be rational)
/// for class equality.
#[derive(Debug, Clone)]
pub struct UClass {
    genus: usize,
    representative: MultiVector,
    primitive_num: MultiVector,
    primitive_den: BigInt,
}

impl UClass {
    pub fn new(representative: MultiVector) -> Result<Self> {
        let genus = representative.genus();
        if genus < 3 {
            return Err(Error::Precondition(format!(
                "U classes need genus >= 3, got {genus}"
            )));
        }
        if representative.homogeneous_degree() != Some(3) && !representative.is_zero() {
            return Err(Error::Precondition("representative must be a 3-form".into()));
        }
        let (primitive_num, primitive_den) = primitive_part(&representative);
        Ok(Self { genus, representative, primitive_num, primitive_den })
    }

    pub fn genus(&self) -> usize {
        self.genus
    }

    pub fn representative(&self) -> &MultiVector {
        &self.representative
    }

    /// Canonical primitive representative as numerator/denominator.
    pub fn primitive(&self) -> (&MultiVector, &BigInt) {
        (&self.primitive_num, &self.primitive_den)
    }

    /// Class equality in `U`: equality of primitive parts.
    pub fn class_eq(&self, other: &Self) -> bool {
        self.genus == other.genus
            && self.primitive_num.scaled(&other.primitive_den)
                == other.primitive_num.scaled(&self.primitive_den)
    }

    pub fn is_zero_class(&self) -> bool {
        self.primitive_num.is_zero()
    }

    /// Pushes the class along a symplectic map.
    pub fn transformed(&self, m: &SymplecticMatrix) -> Result<Self> {
        Self::new(crate::exterior::sp_action(m, &self.representative)?)
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        if self.genus != other.genus {
            return Err(Error::GenusMismatch(self.genus, other.genus));
        }
        Self::new(self.representative.add(&other.representative))
    }
}

/// The Casson-Morita cocycle matrix element
/// `-⟨Ω_g, ν(τ₁φ)μ(τ₁ψ)Ω_g⟩` evaluated on stored representatives.
pub fn casson_cocycle(u1: &UClass, u2: &UClass) -> Result<BigInt> {
    if u1.genus != u2.genus {
        return Err(Error::GenusMismatch(u1.genus, u2.genus));
    }
    Ok(-psi_pair(&u1.representative, &u2.representative)?)
}

/// `s(α, β) = (α, Π_L β)`: project `β` onto `∧³` of the Lagrangian
/// spanned by the `a_i`, then pair with the degree-3 extension of the
/// skew form (a 3×3 pairing determinant on decomposables).
pub fn s_form(alpha: &MultiVector, beta: &MultiVector) -> Result<BigInt> {
    if alpha.genus() != beta.genus() {
        return Err(Error::GenusMismatch(alpha.genus(), beta.genus()));
    }
    let g = alpha.genus();
    let a_mask: Mask = ((1u64 << g) - 1) as Mask;
    let mut acc = BigInt::zero();
    for (mb, cb) in beta.terms() {
        if mb & !a_mask != 0 {
            continue; // contains a b-letter, killed by the projection
        }
        let ys = three_bits(mb);
        for (ma, ca) in alpha.terms() {
            let xs = three_bits(ma);
            let det = skew_det3(g, xs, ys);
            if det != 0 {
                acc += ca * cb * BigInt::from(det);
            }
        }
    }
    Ok(acc)
}

fn three_bits(mask: Mask) -> [usize; 3] {
    assert_eq!(mask.count_ones(), 3, "3-form monomial expected");
    let mut out = [0usize; 3];
    let mut m = mask;
    for slot in &mut out {
        *slot = m.trailing_zeros() as usize;
        m &= m - 1;
    }
    out
}

fn basis_skew(g: usize, x: usize, y: usize) -> i64 {
    if y == x + g {
        1
    } else if x == y + g {
        -1
    } else {
        0
    }
}

fn skew_det3(g: usize, xs: [usize; 3], ys: [usize; 3]) -> i64 {
    let m = |i: usize, j: usize| basis_skew(g, xs[i], ys[j]);
    m(0, 0) * (m(1, 1) * m(2, 2) - m(1, 2) * m(2, 1))
        - m(0, 1) * (m(1, 0) * m(2, 2) - m(1, 2) * m(2, 0))
        + m(0, 2) * (m(1, 0) * m(2, 1) - m(1, 1) * m(2, 0))
}

/// Which restricted operator to diagonalize.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CasimirKind {
    /// `Q_C` restricted to `V^(1)(Σ_g)`
    Q,
    /// `D_C` restricted to degree-g forms
    D,
}

/// Exact spectrum `{(j²-1)/4 : j = 1..h'+1}` with its eigenspace
/// dimensions on the restriction named by `kind`.
pub fn eigenspace_data(spec: &BoundingCurveSpec, kind: CasimirKind) -> Vec<(Rational, u128)> {
    let g = spec.genus;
    let h = spec.subgenus;
    let hp = h.min(g - h);
    let eigenvalue = |j: usize| {
        Rational::new(BigInt::from((j * j) as i64 - 1), BigInt::from(4))
    };
    match kind {
        CasimirKind::Q => (1..=hp + 1)
            .map(|j| {
                let dim = component_dimension(h, j) as u128
                    * component_dimension(g - h, j) as u128;
                (eigenvalue(j), dim)
            })
            .collect(),
        CasimirKind::D => {
            // D = ¼Ĥ_C(Ĥ_C-2) on ∧^m(Σ_h)⊗∧^{g-m}(Σ_{g-h}) has Ĥ_C
            // eigenvalue m-h, so the (j²-1)/4 eigenspace collects
            // m-h = 1±j
            let mut dims: std::collections::BTreeMap<usize, u128> = Default::default();
            for m in 0..=2 * h {
                let lam = m as i64 - h as i64;
                // λ(λ-2) = j²-1 with j ≥ 0: j = |λ-1|
                let j = (lam - 1).unsigned_abs() as usize;
                let count = binomial(2 * h, m as i64) * binomial(2 * (g - h), g as i64 - m as i64);
                if count > 0 {
                    *dims.entry(j).or_default() += count;
                }
            }
            dims.into_iter().map(|(j, dim)| (eigenvalue(j), dim)).collect()
        }
    }
}

/// `η(D_C) = h(h-1)/6`.
pub fn morita_eta(h: u64) -> Rational {
    Rational::new(BigInt::from(h) * BigInt::from(h.saturating_sub(1)), BigInt::from(6))
}

/// A generator `a∧b ↔ c∧d - a∧c ↔ b∧d + a∧d ↔ b∧c` of the subspace T₀,
/// together with its `θ₀` value for the standard linking form.
#[derive(Debug, Clone)]
pub struct T0Witness {
    pub basis_indices: [usize; 4],
    pub tensor: TwoTensor,
    pub theta0_value: BigInt,
}

fn symmetrizer(x: &MultiVector, y: &MultiVector, coeff: i64) -> TwoTensor {
    vec![
        (x.clone(), y.clone(), BigInt::from(coeff)),
        (y.clone(), x.clone(), BigInt::from(coeff)),
    ]
}

/// Generator of T₀ attached to four degree-one classes.
pub fn t0_generator(a: &MultiVector, b: &MultiVector, c: &MultiVector, d: &MultiVector) -> TwoTensor {
    let ab = wedge(a, b).expect("same genus");
    let cd = wedge(c, d).expect("same genus");
    let ac = wedge(a, c).expect("same genus");
    let bd = wedge(b, d).expect("same genus");
    let ad = wedge(a, d).expect("same genus");
    let bc = wedge(b, c).expect("same genus");
    let mut t = symmetrizer(&ab, &cd, 1);
    t.extend(symmetrizer(&ac, &bd, -1));
    t.extend(symmetrizer(&ad, &bc, 1));
    t
}

/// Searches basis 4-tuples for a T₀ generator with `θ₀ ≠ 0` under the
/// standard linking form, proving that `θ₀` does not factor through
/// T/T₀.
pub fn t0_witness(g: usize) -> Result<T0Witness> {
    if g < 2 {
        return Err(Error::Precondition("witness search needs genus >= 2".into()));
    }
    let l = LinkingForm::standard(g);
    let basis: Vec<MultiVector> =
        (0..2 * g).map(|i| MultiVector::monomial(g, 1 << i, 1)).collect();
    for i1 in 0..2 * g {
        for i2 in 0..2 * g {
            for i3 in 0..2 * g {
                for i4 in 0..2 * g {
                    let tensor =
                        t0_generator(&basis[i1], &basis[i2], &basis[i3], &basis[i4]);
                    let value = theta0(&tensor, &l);
                    if !value.is_zero() {
                        return Ok(T0Witness {
                            basis_indices: [i1, i2, i3, i4],
                            tensor,
                            theta0_value: value,
                        });
                    }
                }
            }
        }
    }
    Err(Error::NoWitnessFound(g))
}

/// Matrix of `4·Q_C` compressed onto `V^(1)(Σ_g)`, exact and integral.
pub fn casimir4_on_invariants(spec: &BoundingCurveSpec) -> Result<IntMat> {
    let comp = component_basis(spec.genus, 1);
    let ops = RestrictedOps::new(spec);
    let dim = comp.dimension();
    let mut mat = IntMat::zeros(dim, dim);
    for (col, b) in comp.basis.iter().enumerate() {
        let image = ops.casimir4(b);
        let coords = comp
            .coordinates(&image)
            .ok_or_else(|| Error::InvalidCurveSpec("Q_C does not preserve V^(1)".into()))?;
        for (row, c) in coords.iter().enumerate() {
            if !c.denom().is_one() {
                return Err(Error::NonIntegralTrace);
            }
            mat[(row, col)] = c.numer().clone();
        }
    }
    Ok(mat)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exterior::jmap;
    use crate::linalg;
    use rand::rngs::StdRng;
    use rand::{Rng, SeedableRng};

    fn hclass(g: usize, coords: &[i64]) -> HomologyClass {
        HomologyClass::new(g, coords.to_vec()).unwrap()
    }

    fn explicit_g2_curve() -> BoundingCurveSpec {
        // u₁ = a₁ + b₂, v₁ = a₂ + 2b₁
        BoundingCurveSpec::new(
            2,
            1,
            vec![hclass(2, &[1, 0, 0, 1])],
            vec![hclass(2, &[0, 1, 2, 0])],
        )
        .unwrap()
    }

    #[test]
    fn restricted_operator_basics() {
        let spec = BoundingCurveSpec::standard(3, 2);
        let ops = RestrictedOps::new(&spec);
        let one = MultiVector::scalar(3, 1);
        // E_C(1) = Σ_{i<=h} a_i ∧ b_i
        let mut expect = MultiVector::zero(3);
        for i in 1..=2 {
            expect = expect
                .add(&wedge(&MultiVector::a(3, i), &MultiVector::b(3, i)).unwrap());
        }
        assert_eq!(ops.raise(&one), expect);
        // Ĥ_C(1) = -h
        assert_eq!(ops.weight(&one), MultiVector::scalar(3, -2));
        // Q_C - D_C = E_C F_C
        let x = MultiVector::handle_body_state(3);
        let q_minus_d = ops.casimir4(&x).sub(&ops.d4(&x));
        assert_eq!(q_minus_d, ops.raise(&ops.lower(&x)).scaled(&BigInt::from(4)));
    }

    #[test]
    fn restricted_weight_matches_explicit_formula() {
        // Ĥ_C = -h + Σ ν(u_i)ν(u_i)* + ν(v_i)ν(v_i)* on the full basis
        for (g, h) in [(2usize, 1usize), (3, 1), (3, 2)] {
            let spec = BoundingCurveSpec::standard(g, h);
            let ops = RestrictedOps::new(&spec);
            for mask in 0..(1u64 << (2 * g)) {
                let x = MultiVector::monomial(g, mask as Mask, 1);
                let mut rhs = x.scaled(&BigInt::from(-(h as i64)));
                for c in spec.u.iter().chain(spec.v.iter()) {
                    let cv = c.to_multivector();
                    // ν(c)ν(c)* = ν(c)∘μ(J⁻¹c); since μ(x) = ν(Jx)*,
                    // ν(c)* = μ(J⁻¹c) = -μ(Jc) on degree-one c
                    let jc = jmap(&cv);
                    let pulled = contract(&jc, &x).unwrap().neg();
                    rhs = rhs.add(&wedge(&cv, &pulled).unwrap());
                }
                assert_eq!(ops.weight(&x), rhs, "g={g} h={h} mask={mask:#b}");
            }
        }
    }

    #[test]
    fn casson_twist_examples() {
        // standard curves give 0
        for g in 2..=5 {
            for h in 1..g {
                assert_eq!(casson_twist(&BoundingCurveSpec::standard(g, h)), BigInt::zero());
            }
        }
        // the explicit genus-2 curve gives 2
        assert_eq!(casson_twist(&explicit_g2_curve()), BigInt::from(2));
        // and agrees with the Casimir route
        assert_eq!(
            casson_twist_via_casimir(&explicit_g2_curve()),
            Rational::from_integer(BigInt::from(2))
        );
    }

    #[test]
    fn casson_twist_brute_force_oracle() {
        // independent route: materialize ν(ω_C) as a matrix, take its
        // transpose against ν(Jω_C) for μ, and contract Ω_g by matrices
        let spec = explicit_g2_curve();
        let g = 2;
        let dim = 1usize << (2 * g);
        let omega_c = spec.omega();
        let nu = IntMat::from_fn(dim, dim, |i, j| {
            wedge(&omega_c, &MultiVector::monomial(g, j as Mask, 1))
                .unwrap()
                .coeff(i as Mask)
        });
        let j_omega = jmap(&omega_c);
        let nu_j = IntMat::from_fn(dim, dim, |i, j| {
            wedge(&j_omega, &MultiVector::monomial(g, j as Mask, 1))
                .unwrap()
                .coeff(i as Mask)
        });
        let mu = nu_j.transpose();
        let ef = nu.mul(&mu);
        let omega_idx = (1usize << g) - 1; // mask of a₁∧…∧a_g
        assert_eq!(-ef[(omega_idx, omega_idx)].clone(), BigInt::from(2));
    }

    #[test]
    fn twist_invariant_under_lagrangian_conjugation() {
        let mut rng = StdRng::seed_from_u64(77);
        let spec = explicit_g2_curve();
        let base = casson_twist(&spec);
        for trial in 0..20 {
            let m = random_lagrangian_conjugator(2, trial % 2 == 1, &mut rng);
            let moved = spec.transformed(&m).unwrap();
            assert_eq!(casson_twist(&moved), base, "trial {trial}");
        }
    }

    pub(super) fn random_lagrangian_conjugator(
        g: usize,
        swap: bool,
        rng: &mut impl Rng,
    ) -> SymplecticMatrix {
        // block diag(P, P^{-T}) preserves both spans; composing with J
        // swaps them
        let p = random_unimodular(g, rng);
        let p_inv_t = invert_unimodular_transpose(&p);
        let n = 2 * g;
        let mut rows = vec![vec![0i64; n]; n];
        for i in 0..g {
            for j in 0..g {
                rows[i][j] = p[i][j];
                rows[g + i][g + j] = p_inv_t[i][j];
            }
        }
        let block = SymplecticMatrix::from_rows(g, &rows).unwrap();
        if swap {
            block.mul(&SymplecticMatrix::complex_structure(g)).unwrap()
        } else {
            block
        }
    }

    fn random_unimodular(n: usize, rng: &mut impl Rng) -> Vec<Vec<i64>> {
        let mut m = vec![vec![0i64; n]; n];
        for (i, row) in m.iter_mut().enumerate() {
            row[i] = 1;
        }
        for _ in 0..6 {
            let i = rng.gen_range(0..n);
            let j = rng.gen_range(0..n);
            if i == j {
                continue;
            }
            let c = rng.gen_range(-2i64..=2);
            for k in 0..n {
                m[i][k] += c * m[j][k];
            }
        }
        m
    }

    fn invert_unimodular_transpose(p: &[Vec<i64>]) -> Vec<Vec<i64>> {
        let n = p.len();
        let a = IntMat::from_fn(n, n, |i, j| BigInt::from(p[i][j]));
        let inv = linalg::solve_rational(&a, &IntMat::identity(n)).unwrap();
        let mut out = vec![vec![0i64; n]; n];
        for i in 0..n {
            for j in 0..n {
                assert!(inv[i][j].denom().is_one());
                // transpose of the inverse
                out[j][i] = i64::try_from(inv[i][j].numer().clone()).unwrap();
            }
        }
        out
    }

    #[test]
    fn theta0_examples() {
        let g = 2;
        let l = LinkingForm::standard(g);
        let a1b1 = wedge(&MultiVector::a(g, 1), &MultiVector::b(g, 1)).unwrap();
        let tensor: TwoTensor = vec![(a1b1.clone(), a1b1, BigInt::one())];
        assert_eq!(theta0(&tensor, &l), BigInt::zero());

        // t_C = -ω_C ⊗ ω_C vanishes for the standard curve
        let spec = BoundingCurveSpec::standard(3, 2);
        let t_c: TwoTensor = vec![(spec.omega(), spec.omega(), -BigInt::one())];
        assert_eq!(theta0(&t_c, &LinkingForm::standard(3)), BigInt::zero());
        assert_eq!(theta0(&t_c, &LinkingForm::standard(3)), casson_twist(&spec));
    }

    #[test]
    fn theta0_is_bilinear() {
        let g = 2;
        let l = LinkingForm::standard(g);
        let a1a2 = wedge(&MultiVector::a(g, 1), &MultiVector::a(g, 2)).unwrap();
        let b1b2 = wedge(&MultiVector::b(g, 1), &MultiVector::b(g, 2)).unwrap();
        let a1b2 = wedge(&MultiVector::a(g, 1), &MultiVector::b(g, 2)).unwrap();
        let t1: TwoTensor = vec![(a1a2.clone(), b1b2.clone(), BigInt::from(2))];
        let t2: TwoTensor = vec![(a1b2, b1b2, BigInt::from(-3))];
        let mut sum = t1.clone();
        sum.extend(t2.clone());
        assert_eq!(theta0(&sum, &l), theta0(&t1, &l) + theta0(&t2, &l));
    }

    #[test]
    fn theta0_matches_operator_form() {
        // the operator route and the linking-form route agree with the
        // standard form on random decomposable-pair tensors
        let mut rng = StdRng::seed_from_u64(13);
        for g in 2..=4 {
            let l = LinkingForm::standard(g);
            for _ in 0..25 {
                let mut tensor = TwoTensor::new();
                for _ in 0..rng.gen_range(1..4) {
                    let pick = |rng: &mut StdRng| loop {
                        let m = rng.gen_range(0..(1u64 << (2 * g))) as Mask;
                        if m.count_ones() == 2 {
                            return MultiVector::monomial(g, m, 1);
                        }
                    };
                    tensor.push((pick(&mut rng), pick(&mut rng), BigInt::from(rng.gen_range(-3i64..=3))));
                }
                assert_eq!(
                    theta0(&tensor, &l),
                    theta0_via_operators(&tensor).unwrap(),
                    "g={g}"
                );
            }
        }
    }

    #[test]
    fn psi_pair_examples() {
        let g = 2;
        let a1b1 = wedge(&MultiVector::a(g, 1), &MultiVector::b(g, 1)).unwrap();
        assert_eq!(psi_pair(&a1b1, &a1b1).unwrap(), BigInt::zero());
        let a1a2 = wedge(&MultiVector::a(g, 1), &MultiVector::a(g, 2)).unwrap();
        let b1b2 = wedge(&MultiVector::b(g, 1), &MultiVector::b(g, 2)).unwrap();
        assert_eq!(psi_pair(&a1a2, &b1b2).unwrap(), BigInt::one());
        assert_eq!(psi_pair(&b1b2, &a1a2).unwrap(), BigInt::zero());
    }

    fn wedge3(x: &MultiVector, y: &MultiVector, z: &MultiVector) -> MultiVector {
        wedge(&wedge(x, y).unwrap(), z).unwrap()
    }

    #[test]
    fn cocycle_examples() {
        let g = 3;
        let aaa = wedge3(&MultiVector::a(g, 1), &MultiVector::a(g, 2), &MultiVector::a(g, 3));
        let bbb = wedge3(&MultiVector::b(g, 1), &MultiVector::b(g, 2), &MultiVector::b(g, 3));
        let ua = UClass::new(aaa.clone()).unwrap();
        let ub = UClass::new(bbb.clone()).unwrap();
        assert_eq!(casson_cocycle(&ua, &ub).unwrap(), BigInt::one());
        assert_eq!(casson_cocycle(&ua, &ua).unwrap(), BigInt::zero());
        assert_eq!(casson_cocycle(&ub, &ua).unwrap(), BigInt::zero());
    }

    #[test]
    fn cocycle_well_defined_against_primitive_shifts() {
        // shifting a representative by ω∧x leaves the value unchanged
        // when the other slot is primitive
        let g = 3;
        let aaa = wedge3(&MultiVector::a(g, 1), &MultiVector::a(g, 2), &MultiVector::a(g, 3));
        let bbb = wedge3(&MultiVector::b(g, 1), &MultiVector::b(g, 2), &MultiVector::b(g, 3));
        let shift = wedge(&MultiVector::omega(g), &MultiVector::b(g, 2)).unwrap();
        let ua = UClass::new(aaa.clone()).unwrap();
        let ub = UClass::new(bbb.clone()).unwrap();
        let ub_shifted = UClass::new(bbb.add(&shift)).unwrap();
        assert!(ub.class_eq(&ub_shifted));
        assert_eq!(
            casson_cocycle(&ua, &ub).unwrap(),
            casson_cocycle(&ua, &ub_shifted).unwrap()
        );
    }

    #[test]
    fn s_form_examples() {
        let g = 3;
        let aaa = wedge3(&MultiVector::a(g, 1), &MultiVector::a(g, 2), &MultiVector::a(g, 3));
        let bbb = wedge3(&MultiVector::b(g, 1), &MultiVector::b(g, 2), &MultiVector::b(g, 3));
        assert_eq!(s_form(&bbb, &aaa).unwrap(), BigInt::from(-1));
        assert_eq!(s_form(&aaa, &bbb).unwrap(), BigInt::zero());

        // ω∧H is in the left and right null space
        let mut rng = StdRng::seed_from_u64(19);
        for _ in 0..20 {
            let x = MultiVector::monomial(g, 1 << rng.gen_range(0..2 * g), 1);
            let left = wedge(&MultiVector::omega(g), &x).unwrap();
            let mut beta = MultiVector::zero(g);
            for _ in 0..3 {
                let m = rng.gen_range(0..(1u64 << (2 * g))) as Mask;
                if m.count_ones() == 3 {
                    beta.add_term(m, BigInt::from(rng.gen_range(-2i64..=2)));
                }
            }
            assert_eq!(s_form(&left, &beta).unwrap(), BigInt::zero());
            assert_eq!(s_form(&beta, &left).unwrap(), BigInt::zero());
        }
    }

    #[test]
    fn cocycle_slot_dictionary_against_s_form() {
        // empirical comparison on all primitive basis pairs at g=3:
        // the operator cocycle on (u, v) matches -s(v, u)
        let g = 3;
        let comp = component_basis(g, g - 2);
        assert_eq!(comp.degree(), 3);
        for x in &comp.basis {
            for y in &comp.basis {
                let ux = UClass::new(x.clone()).unwrap();
                let uy = UClass::new(y.clone()).unwrap();
                let lhs = casson_cocycle(&ux, &uy).unwrap();
                let rhs = -s_form(y, x).unwrap();
                assert_eq!(lhs, rhs, "slot dictionary");
            }
        }
    }

    #[test]
    fn eigenspace_examples() {
        use crate::rings::rational_from_str;
        let spec = BoundingCurveSpec::standard(2, 1);
        let data = eigenspace_data(&spec, CasimirKind::Q);
        let eigenvalues: Vec<Rational> = data.iter().map(|(e, _)| e.clone()).collect();
        assert_eq!(
            eigenvalues,
            vec![rational_from_str("0").unwrap(), rational_from_str("3/4").unwrap()]
        );

        let spec = BoundingCurveSpec::standard(4, 2);
        let data = eigenspace_data(&spec, CasimirKind::Q);
        let dims: Vec<u128> = data.iter().map(|(_, d)| *d).collect();
        assert_eq!(dims, vec![25, 16, 1]);
        assert_eq!(dims.iter().sum::<u128>(), 42);
    }

    #[test]
    fn q_eigenspaces_brute_force() {
        // diagonalize 4Q on V^(1)(Σ_g) exactly and compare dimensions
        for (g, h) in [(2usize, 1usize), (3, 1), (3, 2)] {
            let spec = BoundingCurveSpec::standard(g, h);
            let q4 = casimir4_on_invariants(&spec).unwrap();
            let expected = eigenspace_data(&spec, CasimirKind::Q);
            for (eig, dim) in &expected {
                // eigenvalue of 4Q is 4·eig, an integer
                let four_eig = (eig * Rational::from_integer(BigInt::from(4))).to_integer();
                let shifted = IntMat::from_fn(q4.rows, q4.cols, |i, j| {
                    if i == j {
                        q4[(i, j)].clone() - &four_eig
                    } else {
                        q4[(i, j)].clone()
                    }
                });
                let nullity = q4.rows - linalg::rank(&shifted);
                assert_eq!(nullity as u128, *dim, "g={g} h={h} eig={eig}");
            }
        }
    }

    #[test]
    fn d_eigenspaces_brute_force() {
        // diagonalize 4D on the degree-g block
        for (g, h) in [(2usize, 1usize), (3, 1)] {
            let spec = BoundingCurveSpec::standard(g, h);
            let ops = RestrictedOps::new(&spec);
            let masks: Vec<Mask> = (0..1u64 << (2 * g))
                .map(|m| m as Mask)
                .filter(|m| m.count_ones() == g as u32)
                .collect();
            let pos: std::collections::BTreeMap<Mask, usize> =
                masks.iter().enumerate().map(|(i, m)| (*m, i)).collect();
            let mut d4 = IntMat::zeros(masks.len(), masks.len());
            for (col, m) in masks.iter().enumerate() {
                let image = ops.d4(&MultiVector::monomial(g, *m, 1));
                for (im, c) in image.terms() {
                    d4[(pos[&im], col)] = c.clone();
                }
            }
            let expected = eigenspace_data(&spec, CasimirKind::D);
            let mut total = 0u128;
            for (eig, dim) in &expected {
                let four_eig = (eig * Rational::from_integer(BigInt::from(4))).to_integer();
                let shifted = IntMat::from_fn(d4.rows, d4.cols, |i, j| {
                    if i == j {
                        d4[(i, j)].clone() - &four_eig
                    } else {
                        d4[(i, j)].clone()
                    }
                });
                let nullity = d4.rows - linalg::rank(&shifted);
                assert_eq!(nullity as u128, *dim, "g={g} h={h} eig={eig}");
                total += dim;
            }
            assert_eq!(total, masks.len() as u128);
        }
    }

    #[test]
    fn eta_values() {
        use crate::rings::rational_from_str;
        assert_eq!(morita_eta(1), rational_from_str("0").unwrap());
        assert_eq!(morita_eta(3), rational_from_str("1").unwrap());
        assert_eq!(morita_eta(4), rational_from_str("2").unwrap());
    }

    #[test]
    fn t0_witness_exists_at_genus_two() {
        let w = t0_witness(2).unwrap();
        assert!(!w.theta0_value.is_zero());
        // frozen regression: the first tuple found and its value
        assert_eq!(w.basis_indices, [0, 1, 2, 3]);
        assert_eq!(w.theta0_value, BigInt::one());
    }

    #[test]
    fn theta0_symmetrizer_is_twice_on_symmetric_args() {
        let g = 2;
        let l = LinkingForm::standard(g);
        let mut rng = StdRng::seed_from_u64(29);
        for _ in 0..20 {
            let pick = |rng: &mut StdRng| loop {
                let m = rng.gen_range(0..(1u64 << (2 * g))) as Mask;
                if m.count_ones() == 2 {
                    return MultiVector::monomial(g, m, 1);
                }
            };
            let x = pick(&mut rng);
            let sym = symmetrizer(&x, &x, 1);
            let single: TwoTensor = vec![(x.clone(), x.clone(), BigInt::one())];
            assert_eq!(theta0(&sym, &l), theta0(&single, &l) * BigInt::from(2));
        }
    }
}
