//! The Lescop invariant from Alexander data and from fundamental
//! torsion weights, plus the exact basis change between the two.
//!
//! `λ_L = ½Δ''(1) - Δ(1)/12` on symmetrized polynomials, and
//! `λ_L = Σ_j L^(j)·Δ^(j)` with `L^(j) = (-1)^{j-1}·j(2j²-3)/12` on
//! sign-normalized weight vectors. `weights_from_alexander` inverts the
//! triangular expansion `Δ = Σ_j [j]_{-t}·Δ^(j)` exactly.

use num_bigint::BigInt;
use num_traits::{Signed, Zero};

use crate::rings::{
    quantum_integer, symmetrize_and_normalize, LaurentPolynomial, QuantumSign, Rational,
};
use crate::tqft::WeightVector;
use crate::{Error, Result};

/// Lescop value with its sign certainty. The denominator always
/// divides 12.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LescopValue {
    pub value: Rational,
    /// false when `Δ(1) = 0`, where the sign convention `Δ(1) ≥ 0` does
    /// not pin the global sign of `Δ''(1)`
    pub sign_certain: bool,
}

/// `L^(j) = (-1)^{j-1}·j(2j²-3)/12`.
pub fn lescop_coefficient(j: u64) -> Rational {
    assert!(j >= 1);
    let jj = BigInt::from(j);
    let numerator = &jj * (BigInt::from(2) * &jj * &jj - BigInt::from(3));
    let signed = if j % 2 == 1 { numerator } else { -numerator };
    Rational::new(signed, BigInt::from(12))
}

/// `λ_L = ½Δ''(1) - Δ(1)/12` after sign normalization.
pub fn lescop_from_alexander(d: &LaurentPolynomial) -> Result<LescopValue> {
    let normalized = symmetrize_and_normalize(d)?;
    let at_one = normalized.eval_one();
    let second = normalized.second_derivative_at_one();
    let value = Rational::new(second.clone(), BigInt::from(2))
        - Rational::new(at_one.clone(), BigInt::from(12));
    Ok(LescopValue { value, sign_certain: !at_one.is_zero() })
}

/// `Δ(1)` of the quantum-integer expansion: `Σ_j (-1)^{j-1}·j·Δ^(j)`.
pub fn weights_value_at_one(w: &WeightVector) -> BigInt {
    let mut acc = BigInt::zero();
    for (j, v) in &w.weights {
        let signed = if j % 2 == 1 { BigInt::from(*j as i64) } else { -BigInt::from(*j as i64) };
        acc += signed * v;
    }
    acc
}

/// Flips the global sign so the expansion value at `t = 1` is ≥ 0; ties
/// are broken by a positive top-index weight.
pub fn normalize_weights(w: &WeightVector) -> WeightVector {
    let at_one = weights_value_at_one(w);
    let flip = if at_one.is_zero() {
        // tie-break on the top weight
        w.weight(w.max_index()).is_negative()
    } else {
        at_one.is_negative()
    };
    if flip {
        w.negated()
    } else {
        w.clone()
    }
}

/// `λ_L = Σ_j L^(j)·Δ^(j)` on the sign-normalized weights.
pub fn lescop_from_weights(w: &WeightVector) -> LescopValue {
    let normalized = normalize_weights(w);
    let mut value = Rational::zero();
    for (j, v) in &normalized.weights {
        value += lescop_coefficient(*j as u64) * Rational::from_integer(v.clone());
    }
    let at_one = weights_value_at_one(&normalized);
    LescopValue { value, sign_certain: !at_one.is_zero() }
}

/// Inverts `Δ = Σ_j [j]_{-t}·Δ^(j)` from the top degree down. The input
/// is centered by a monomial shift (no global sign change), so the
/// round trip `Σ_j [j]_{-t}·weights(d)_j = d` holds for palindromic
/// inputs.
pub fn weights_from_alexander(d: &LaurentPolynomial) -> Result<WeightVector> {
    if d.is_zero() {
        return Ok(WeightVector { genus: 0, weights: Default::default(), sign_ambiguous: false });
    }
    let lo = d.min_exponent().unwrap();
    let hi = d.max_exponent().unwrap();
    if (lo + hi).rem_euclid(2) != 0 {
        return Err(Error::NotSymmetrizable);
    }
    let centered = d.shifted(-(lo + hi) / 2);
    if !centered.is_palindromic() {
        return Err(Error::NotSymmetrizable);
    }
    let mut rest = centered;
    let mut weights = std::collections::BTreeMap::new();
    while !rest.is_zero() {
        let top = rest.max_exponent().unwrap();
        if top < 0 {
            return Err(Error::NonIntegralWeight(format!("residual {rest}")));
        }
        let j = (top + 1) as usize;
        // [j]_{-t} has top coefficient (-1)^{j-1}
        let lead = rest.coeff(top);
        let delta = if j % 2 == 1 { lead } else { -lead };
        let term = quantum_integer(j as u64, QuantumSign::MinusQ).scaled(&delta);
        rest = &rest - &term;
        if let Some(new_top) = rest.max_exponent() {
            if new_top >= top {
                return Err(Error::NonIntegralWeight(format!("residual {rest}")));
            }
        }
        weights.insert(j, delta);
    }
    let genus = weights.keys().next_back().map_or(0, |j| j.saturating_sub(1));
    Ok(WeightVector { genus, weights, sign_ambiguous: false })
}
