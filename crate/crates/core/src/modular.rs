//! Mod-p reductions of the Lefschetz components, their quotient
//! theories, the `E^k` resolutions, p-modular torsion weights with the
//! mod-p Alexander/Lescop formulas, and the Specht-module checks.
//!
//! Reducing a saturated component `V^(j)_ℤ` mod p keeps its dimension
//! but can degenerate the pairing; the quotient by the radical is the
//! irreducible theory `V̄^(j)_p`, resolved by `E^k` maps between
//! components with indices `c_i = ip + k` (i even) and `(i+1)p - k`
//! (i odd). Traces on the quotients are the p-modular weights, which
//! also arise by folding the integral weights with alternating signs.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::exterior::{Mask, MultiVector};
use crate::lefschetz::{binomial, component_basis, lower, raise_power, LefschetzComponent, SectorKey};
use crate::linalg::{integer_kernel, reduce_mod, IntMat, MatFp};
use crate::rings::{cyclotomic_reduce, quantum_integer, QuantumSign, Rational, TruncatedPoly};
use crate::tqft::{alexander_trace, apply_word, fundamental_weights, CobordismWord};
use crate::{Error, Result};

/// Mod-p data of a Lefschetz component: the reduced basis keeps the
/// integral dimension (saturation), the pairing may degenerate.
#[derive(Debug, Clone)]
pub struct ModularComponent {
    pub p: u64,
    pub genus: usize,
    pub index: usize,
    pub component: std::sync::Arc<LefschetzComponent>,
    /// Gram matrix of the reduced basis over `F_p`
    pub gram_p: MatFp,
    /// rows spanning the radical of the pairing, in basis coordinates
    pub null_basis: Vec<Vec<u64>>,
    /// pivot columns of the Gram matrix, a basis of the quotient
    pub pivots: Vec<usize>,
    pub quotient_dim: usize,
}

impl ModularComponent {
    pub fn ambient_dim(&self) -> usize {
        self.component.dimension()
    }

    /// Trace over the quotient `V̄^(j)_p` of an integral action matrix
    /// given in basis coordinates.
    pub fn quotient_trace(&self, action: &IntMat) -> u64 {
        if self.quotient_dim == 0 {
            return 0;
        }
        let p = self.p;
        let dim = self.ambient_dim();
        let x = MatFp::from_int(p, action);
        // class coordinates of x·ē_q: c = G_PP⁻¹·(G[P,:]·x)[:,q]
        let np = self.pivots.len();
        let g_rows = MatFp::from_fn(p, np, dim, |r, c| self.gram_p[(self.pivots[r], c)]);
        let gx = g_rows.mul(&x);
        let g_pp = MatFp::from_fn(p, np, np, |r, c| self.gram_p[(self.pivots[r], self.pivots[c])]);
        let rhs = MatFp::from_fn(p, np, np, |r, c| gx[(r, self.pivots[c])]);
        let y = g_pp.solve(&rhs).expect("pivot Gram block is invertible");
        y.trace()
    }
}

/// Reduces `V^(j)(Σ_g)` mod p: Gram rank, radical, quotient dimension.
pub fn modular_component(g: usize, j: usize, p: u64) -> ModularComponent {
    let component = component_basis(g, j);
    let dim = component.dimension();
    let mut gram_p = MatFp::zeros(p, dim, dim);
    for sector in &component.sectors {
        for (r, row) in sector.range.clone().enumerate() {
            for (c, col) in sector.range.clone().enumerate() {
                gram_p[(row, col)] = reduce_mod(&sector.gram[(r, c)], p);
            }
        }
    }
    let null_basis = gram_p.nullspace();
    let pivots = gram_p.pivot_columns();
    let quotient_dim = pivots.len();
    ModularComponent { p, genus: g, index: j, component, gram_p, null_basis, pivots, quotient_dim }
}

/// The induced `F_p`-linear map `E^k: V^(j)_p → V^(j-2k)_p` on reduced
/// bases, after verifying the integral containment
/// `E^k·V^(j)_ℤ ⊆ V^(j-2k)_ℤ + p·∧H`.
pub fn ek_map(g: usize, j: usize, k: usize, p: u64) -> Result<MatFp> {
    if j % p as usize != k % p as usize {
        return Err(Error::Precondition(format!(
            "E^k needs j ≡ k mod p, got j={j} k={k} p={p}"
        )));
    }
    if j < 2 * k + 1 {
        return Err(Error::Precondition("target index j-2k must be ≥ 1".to_string()));
    }
    let source = component_basis(g, j);
    let target = component_basis(g, j - 2 * k);
    let mut mat = MatFp::zeros(p, target.dimension(), source.dimension());
    if source.dimension() == 0 {
        return Ok(mat);
    }
    let by_key: BTreeMap<SectorKey, usize> =
        target.sectors.iter().enumerate().map(|(i, s)| (s.key, i)).collect();
    for (src_idx, sector) in source.sectors.iter().enumerate() {
        let _ = src_idx;
        for col in sector.range.clone() {
            let image = raise_power(&source.basis[col], k);
            if image.terms().all(|(_, c)| reduce_mod(c, p) == 0) {
                continue;
            }
            let Some(&tgt_idx) = by_key.get(&sector.key) else {
                return Err(Error::ContainmentViolation);
            };
            let tsector = &target.sectors[tgt_idx];
            // reduced image supported on the target sector masks
            let support_ok = image
                .terms()
                .all(|(m, c)| reduce_mod(c, p) == 0 || tsector.masks.contains(&m));
            if !support_ok {
                return Err(Error::ContainmentViolation);
            }
            let basis = target.sector_basis_matrix(tsector);
            let b_p = MatFp::from_int(p, &basis);
            let rhs = MatFp::from_fn(p, tsector.masks.len(), 1, |r, _| {
                reduce_mod(&image.coeff(tsector.masks[r]), p)
            });
            let Some(x) = b_p.solve(&rhs) else {
                return Err(Error::ContainmentViolation);
            };
            for (row_local, row_global) in tsector.range.clone().enumerate() {
                mat[(row_global, col)] = x[(row_local, 0)];
            }
        }
    }
    Ok(mat)
}

/// Resolution indices `c_0 = k, c_1 = 2p-k, c_2 = 2p+k, …` truncated at
/// the first index exceeding `g+1`.
pub fn resolution_indices(k: usize, p: u64, g: usize) -> Vec<usize> {
    let p = p as usize;
    let mut out = Vec::new();
    let mut i = 0usize;
    loop {
        let c = if i.is_multiple_of(2) { i * p + k } else { (i + 1) * p - k };
        if c > g + 1 {
            break;
        }
        out.push(c);
        i += 1;
    }
    out
}

#[derive(Debug, Clone)]
pub struct ResolutionNode {
    pub index: usize,
    pub dimension: usize,
    /// rank of the incoming map from the next component (0 at the end)
    pub incoming_rank: usize,
    /// nullity of the outgoing map (to the previous component, or onto
    /// the quotient at the head)
    pub outgoing_nullity: usize,
    pub exact: bool,
}

#[derive(Debug, Clone)]
pub struct ResolutionReport {
    pub k: usize,
    pub p: u64,
    pub genus: usize,
    pub indices: Vec<usize>,
    pub quotient_dim: usize,
    pub radical_dim: usize,
    pub nodes: Vec<ResolutionNode>,
    pub pass: bool,
}

/// Verifies exactness of the truncated resolution
/// `… → V^(c_1)_p → V^(k)_p → V̄^(k)_p → 0`.
pub fn resolution_check(k: usize, p: u64, g: usize) -> Result<ResolutionReport> {
    if k == 0 || k >= p as usize {
        return Err(Error::Precondition(format!("need 0 < k < p, got k={k} p={p}")));
    }
    let indices = resolution_indices(k, p, g);
    let head = modular_component(g, k, p);
    let radical_dim = head.ambient_dim() - head.quotient_dim;
    // maps f_i: V^(c_i) -> V^(c_{i-1})
    let mut maps: Vec<MatFp> = Vec::new();
    for i in 1..indices.len() {
        let e = (indices[i] - indices[i - 1]) / 2;
        maps.push(ek_map(g, indices[i], e, p)?);
    }
    let mut nodes = Vec::new();
    let mut pass = true;
    for (i, &c) in indices.iter().enumerate() {
        let dim = component_basis(g, c).dimension();
        let outgoing_nullity = if i == 0 {
            // head: kernel of the quotient projection is the radical
            radical_dim
        } else {
            dim - maps[i - 1].rank()
        };
        let incoming_rank = if i + 1 < indices.len() { maps[i].rank() } else { 0 };
        // composite vanishing for adjacent maps
        let composite_zero = if i >= 1 && i < maps.len() {
            let prev = &maps[i - 1];
            let this = &maps[i];
            prev.mul(this).is_zero()
        } else if i == 0 && !maps.is_empty() {
            // image of f_1 lies in the radical: Ḡ·f₁ = 0
            head.gram_p.mul(&maps[0]).is_zero()
        } else {
            true
        };
        let exact = composite_zero && incoming_rank == outgoing_nullity;
        if !exact {
            pass = false;
        }
        nodes.push(ResolutionNode { index: c, dimension: dim, incoming_rank, outgoing_nullity, exact });
    }
    if !pass {
        let bad = nodes.iter().find(|n| !n.exact).unwrap();
        return Err(Error::ExactnessFailure(format!(
            "node V^({}) of the (k={k}, p={p}, g={g}) resolution: dim {}, incoming rank {}, outgoing nullity {}",
            bad.index, bad.dimension, bad.incoming_rank, bad.outgoing_nullity
        )));
    }
    Ok(ResolutionReport {
        k,
        p,
        genus: g,
        indices,
        quotient_dim: head.quotient_dim,
        radical_dim,
        nodes,
        pass,
    })
}

/// Integer matrix of a genus-preserving word on a component basis.
pub fn word_matrix_on_component(
    word: &CobordismWord,
    comp: &LefschetzComponent,
) -> Result<IntMat> {
    let dim = comp.dimension();
    let mut mat = IntMat::zeros(dim, dim);
    for (col, b) in comp.basis.iter().enumerate() {
        let image = apply_word(word, b)?;
        let coords = comp
            .coordinates(&image)
            .ok_or(Error::NonIntegralTrace)?;
        for (row, c) in coords.iter().enumerate() {
            if !c.denom().is_one() {
                return Err(Error::NonIntegralTrace);
            }
            mat[(row, col)] = c.numer().clone();
        }
    }
    Ok(mat)
}

/// p-modular fundamental weights by both routes — quotient traces and
/// the alternating fold of the integral weights — which must agree.
pub fn pmod_weights(word: &CobordismWord, p: u64) -> Result<BTreeMap<usize, u64>> {
    let g = word.start_genus();
    let integral = fundamental_weights(word)?;
    let mut out = BTreeMap::new();
    for k in 1..p as usize {
        // route A: trace on the quotient component
        let trace_route = if k <= g + 1 {
            let modular = modular_component(g, k, p);
            if modular.ambient_dim() == 0 {
                0
            } else {
                let action = word_matrix_on_component(word, &modular.component)?;
                modular.quotient_trace(&action)
            }
        } else {
            0
        };
        // route B: alternating fold of integral weights
        let mut fold = BigInt::zero();
        for (i, c) in resolution_indices(k, p, g).into_iter().enumerate() {
            let w = integral.weight(c);
            if i % 2 == 0 {
                fold += w;
            } else {
                fold -= w;
            }
        }
        let fold_route = reduce_mod(&fold, p);
        if trace_route != fold_route {
            return Err(Error::Mismatch(format!(
                "p-modular weight k={k}: quotient trace {trace_route} vs weight fold {fold_route}"
            )));
        }
        out.insert(k, trace_route);
    }
    Ok(out)
}

/// Both routes to the mod-p Alexander image: the weight expansion
/// `Σ_k [k]_{-ζ_p}·Δ̄^(k)` and the direct cyclotomic reduction of the
/// Lefschetz trace.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PModAlexander {
    pub from_weights: TruncatedPoly,
    pub direct: TruncatedPoly,
}

pub fn pmod_alexander(word: &CobordismWord, p: u64) -> Result<PModAlexander> {
    let weights = pmod_weights(word, p)?;
    let m = (p - 1) as usize;
    let mut from_weights = TruncatedPoly::zero(p, m);
    for (k, residue) in &weights {
        let base = cyclotomic_reduce(&quantum_integer(*k as u64, QuantumSign::MinusQ), p);
        from_weights = from_weights.add(&base.scale(*residue));
    }
    let direct = cyclotomic_reduce(&alexander_trace(word)?, p);
    if from_weights != direct {
        // handle words carry a global sign ambiguity
        let negated = direct.scale(p - 1);
        if !(word.has_handles() && from_weights == negated) {
            return Err(Error::Mismatch(format!(
                "mod-{p} Alexander: weights route {:?} vs direct route {:?}",
                from_weights.coeffs(),
                direct.coeffs()
            )));
        }
    }
    Ok(PModAlexander { from_weights, direct })
}

/// Mod-p reductions `L̄^(k)_p` of the Lescop coefficients, `k = 1..p-1`.
pub fn lescop_table_mod(p: u64) -> Vec<u64> {
    assert!(p >= 5, "1/12 needs p ≥ 5");
    (1..p).map(|k| reduce_rational_mod(&crate::lescop::lescop_coefficient(k), p)).collect()
}

fn reduce_rational_mod(r: &Rational, p: u64) -> u64 {
    let num = reduce_mod(r.numer(), p);
    let den = reduce_mod(r.denom(), p);
    assert!(den != 0, "denominator not invertible mod {p}");
    num * crate::linalg::mod_inverse(den, p) % p
}

/// `Σ_k L̄^(k)_p·Δ̄^(k)` for p-modular weights.
pub fn lescop_mod_p(weights: &BTreeMap<usize, u64>, p: u64) -> u64 {
    assert!(p >= 5);
    let table = lescop_table_mod(p);
    let mut acc = 0u64;
    for (k, residue) in weights {
        if *k >= 1 && *k < p as usize {
            acc = (acc + table[k - 1] * residue) % p;
        }
    }
    acc
}

/// Realization of a two-row Specht module as the all-pairs weight
/// sector of a Lefschetz component, with its Gram data.
#[derive(Debug, Clone)]
pub struct SpechtRealization {
    pub n: usize,
    /// component index; the partition is
    /// `[(n+c-1)/2, (n-c+1)/2]`
    pub c: usize,
    /// handle subsets of size `(n+1-c)/2` carrying `a∧b` pairs
    pub subsets: Vec<u32>,
    /// kernel basis, rows = subsets, cols = basis vectors
    pub basis: IntMat,
}

impl SpechtRealization {
    pub fn dimension(&self) -> usize {
        self.basis.cols
    }

    pub fn row_partition(&self) -> (usize, usize) {
        (((self.n + self.c - 1) / 2), (self.n - self.c).div_ceil(2))
    }
}

/// `dim 𝒮^(c)` for the two-row partition of `n` attached to component
/// index `c`; zero when the partition is invalid.
pub fn specht_dimension(n: usize, c: usize) -> u128 {
    if c < 1 || c > n + 1 || !(n + 1).wrapping_sub(c).is_multiple_of(2) {
        return 0;
    }
    let lam2 = (n + 1 - c) / 2;
    binomial(n, lam2 as i64) - binomial(n, lam2 as i64 - 1)
}

/// Builds the all-pairs sector kernel of `V^(c)(Σ_n)` directly.
pub fn specht_realization(n: usize, c: usize) -> Result<SpechtRealization> {
    if specht_dimension(n, c) == 0 {
        return Ok(SpechtRealization { n, c, subsets: vec![], basis: IntMat::zeros(0, 0) });
    }
    let boxes = (n + 1 - c) / 2;
    let subsets = handle_subsets(n, boxes);
    let kernel: Vec<Vec<BigInt>> = if boxes == 0 {
        vec![vec![BigInt::one()]]
    } else {
        let image_subsets = handle_subsets(n, boxes - 1);
        let image_pos: BTreeMap<u32, usize> =
            image_subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
        let mut f_mat = IntMat::zeros(image_subsets.len(), subsets.len());
        for (col, s) in subsets.iter().enumerate() {
            let fm = lower(&MultiVector::monomial(n, pairs_mask(n, *s), 1));
            for (im, coeff) in fm.terms() {
                let handles = im & ((1 << n) - 1);
                f_mat[(image_pos[&handles], col)] = coeff.clone();
            }
        }
        integer_kernel(&f_mat)
    };
    let mut basis = IntMat::zeros(subsets.len(), kernel.len());
    for (col, v) in kernel.iter().enumerate() {
        for (row, coeff) in v.iter().enumerate() {
            basis[(row, col)] = coeff.clone();
        }
    }
    Ok(SpechtRealization { n, c, subsets, basis })
}

fn pairs_mask(n: usize, handles: u32) -> Mask {
    let mut m: Mask = 0;
    let mut h = handles;
    while h != 0 {
        let bit = h.trailing_zeros();
        m |= (1 << bit) | (1 << (n as u32 + bit));
        h &= h - 1;
    }
    m
}

fn handle_subsets(n: usize, k: usize) -> Vec<u32> {
    let mut out = Vec::new();
    fn rec(n: usize, k: usize, from: usize, acc: u32, out: &mut Vec<u32>) {
        if k == 0 {
            out.push(acc);
            return;
        }
        for i in from..n {
            rec(n, k - 1, i + 1, acc | (1 << i), out);
        }
    }
    rec(n, k, 0, 0, &mut out);
    out
}

/// Integral character of a handle permutation on the realization.
pub fn specht_character(real: &SpechtRealization, perm: &[usize]) -> Result<BigInt> {
    if real.dimension() == 0 {
        return Ok(BigInt::zero());
    }
    let pos: BTreeMap<u32, usize> =
        real.subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let permute = |s: u32| -> u32 {
        let mut out = 0u32;
        let mut rem = s;
        while rem != 0 {
            let bit = rem.trailing_zeros() as usize;
            out |= 1 << perm[bit];
            rem &= rem - 1;
        }
        out
    };
    // trace of G⁻¹·Bᵀ·(P·B) through one exact solve
    let dim = real.dimension();
    let rows = real.subsets.len();
    let mut permuted = IntMat::zeros(rows, dim);
    for row in 0..rows {
        let target = pos[&permute(real.subsets[row])];
        for col in 0..dim {
            permuted[(target, col)] = real.basis[(row, col)].clone();
        }
    }
    let bt = real.basis.transpose();
    let gram = bt.mul(&real.basis);
    let rhs = bt.mul(&permuted);
    let x = crate::linalg::solve_rational(&gram, &rhs).ok_or(Error::NonIntegralTrace)?;
    let mut trace = crate::rings::Rational::zero();
    for (col, row) in x.iter().enumerate() {
        if !row[col].denom().is_one() {
            return Err(Error::NonIntegralTrace);
        }
        trace += row[col].clone();
    }
    Ok(trace.to_integer())
}

/// Gram matrix of the realization mod p.
pub fn specht_gram_p(real: &SpechtRealization, p: u64) -> MatFp {
    let bt = real.basis.transpose();
    MatFp::from_int(p, &bt.mul(&real.basis))
}

/// Trace of a handle permutation on the quotient `𝒟` (realization mod
/// the pairing radical).
pub fn specht_quotient_trace(real: &SpechtRealization, perm: &[usize], p: u64) -> Result<u64> {
    let gram = specht_gram_p(real, p);
    let pivots = gram.pivot_columns();
    if pivots.is_empty() {
        return Ok(0);
    }
    let pos: BTreeMap<u32, usize> =
        real.subsets.iter().enumerate().map(|(i, s)| (*s, i)).collect();
    let permute = |s: u32| -> u32 {
        let mut out = 0u32;
        let mut rem = s;
        while rem != 0 {
            let bit = rem.trailing_zeros() as usize;
            out |= 1 << perm[bit];
            rem &= rem - 1;
        }
        out
    };
    let dim = real.dimension();
    // action mod p on basis coordinates: solve B̄·X = P̄·B̄
    let b_p = MatFp::from_int(p, &real.basis);
    let pb = MatFp::from_fn(p, real.subsets.len(), dim, |row, col| {
        // (P·B)[row, col] = B[σ⁻¹(row), col]; build by scattering
        let _ = (row, col);
        0
    });
    let mut pb = pb;
    for row in 0..real.subsets.len() {
        let target = pos[&permute(real.subsets[row])];
        for col in 0..dim {
            pb[(target, col)] = b_p[(row, col)];
        }
    }
    let x = b_p.solve(&pb).ok_or(Error::NonIntegralTrace)?;
    // quotient trace via the pivot compression
    let np = pivots.len();
    let g_rows = MatFp::from_fn(p, np, dim, |r, c| gram[(pivots[r], c)]);
    let gx = g_rows.mul(&x);
    let g_pp = MatFp::from_fn(p, np, np, |r, c| gram[(pivots[r], pivots[c])]);
    let rhs = MatFp::from_fn(p, np, np, |r, c| gx[(r, pivots[c])]);
    let y = g_pp.solve(&rhs).expect("pivot Gram block invertible");
    Ok(y.trace())
}

#[derive(Debug, Clone)]
pub struct SpechtReport {
    pub n: usize,
    pub k: usize,
    pub p: u64,
    pub indices: Vec<usize>,
    pub specht_dims: Vec<u128>,
    pub irreducible_dim: usize,
    pub alternating_dim: i128,
    pub dim_identity: bool,
    /// per sampled permutation: (quotient trace, folded character mod p)
    pub trace_checks: Vec<(u64, u64, bool)>,
    pub pass: bool,
}

/// Checks `dim 𝒟^(k)_p = Σ (-1)^i dim 𝒮^(c_i)` and the induced
/// character identity on sampled permutations.
pub fn specht_check(
    n: usize,
    k: usize,
    p: u64,
    permutations: &[Vec<usize>],
) -> Result<SpechtReport> {
    if k == 0 || k >= p as usize {
        return Err(Error::Precondition(format!("need 0 < k < p, got k={k}")));
    }
    if (n + 1) % 2 != k % 2 {
        return Err(Error::Precondition(format!(
            "need k ≡ n+1 mod 2 for a two-row partition, got n={n} k={k}"
        )));
    }
    let indices = resolution_indices(k, p, n + 1);
    let realizations: Vec<SpechtRealization> =
        indices.iter().map(|&c| specht_realization(n, c)).collect::<Result<_>>()?;
    let specht_dims: Vec<u128> = indices.iter().map(|&c| specht_dimension(n, c)).collect();
    for (real, dim) in realizations.iter().zip(&specht_dims) {
        if real.dimension() as u128 != *dim {
            return Err(Error::DimensionMismatch(format!(
                "realization of S^({}) at n={n} has dim {}, formula gives {dim}",
                real.c,
                real.dimension()
            )));
        }
    }
    let head = &realizations[0];
    let irreducible_dim = specht_gram_p(head, p).rank();
    let alternating_dim: i128 = specht_dims
        .iter()
        .enumerate()
        .map(|(i, d)| if i % 2 == 0 { *d as i128 } else { -(*d as i128) })
        .sum();
    let dim_identity = irreducible_dim as i128 == alternating_dim;
    let mut trace_checks = Vec::new();
    let mut pass = dim_identity;
    for perm in permutations {
        if perm.len() != n {
            return Err(Error::Precondition(format!("permutation must have length {n}")));
        }
        let quotient = specht_quotient_trace(head, perm, p)?;
        let mut fold = BigInt::zero();
        for (i, real) in realizations.iter().enumerate() {
            let chi = specht_character(real, perm)?;
            if i % 2 == 0 {
                fold += chi;
            } else {
                fold -= chi;
            }
        }
        let folded = reduce_mod(&fold, p);
        let ok = quotient == folded;
        if !ok {
            pass = false;
        }
        trace_checks.push((quotient, folded, ok));
    }
    if !pass {
        return Err(Error::ExactnessFailure(format!(
            "Specht check n={n} k={k} p={p}: dim identity {dim_identity} ({irreducible_dim} vs {alternating_dim}), trace failures {:?}",
            trace_checks.iter().filter(|(_, _, ok)| !ok).collect::<Vec<_>>()
        )));
    }
    Ok(SpechtReport {
        n,
        k,
        p,
        indices,
        specht_dims,
        irreducible_dim,
        alternating_dim,
        dim_identity,
        trace_checks,
        pass,
    })
}

#[derive(Debug, Clone)]
pub struct FibonacciReport {
    pub genus: usize,
    pub dim_k1: usize,
    pub dim_k4: usize,
    pub expected: u128,
    pub pass: bool,
}

/// `dim V̄^(1)₅(Σ_g) + dim V̄^(4)₅(Σ_g) = 5^{g/2}·f_{g-1}` for even g.
pub fn fibonacci_dim_check(g: usize) -> Result<FibonacciReport> {
    if !g.is_multiple_of(2) || g == 0 {
        return Err(Error::Precondition("Fibonacci dimension check needs even g ≥ 2".into()));
    }
    let dim_k1 = modular_component(g, 1, 5).quotient_dim;
    let dim_k4 = modular_component(g, 4, 5).quotient_dim;
    let fib = {
        let mut f = (0u128, 1u128);
        for _ in 0..g - 1 {
            f = (f.1, f.0 + f.1);
        }
        f.0 // f_{g-1}
    };
    let expected = 5u128.pow(g as u32 / 2) * fib;
    let pass = (dim_k1 + dim_k4) as u128 == expected;
    if !pass {
        return Err(Error::DimensionMismatch(format!(
            "genus {g}: {dim_k1} + {dim_k4} != {expected}"
        )));
    }
    Ok(FibonacciReport { genus: g, dim_k1, dim_k4, expected, pass })
}
