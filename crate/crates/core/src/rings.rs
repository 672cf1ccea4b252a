//! Exact scalar arithmetic: Laurent polynomials over ℤ, truncated
//! polynomial quotients of prime fields, and arbitrary-precision rationals.

use std::collections::BTreeMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use crate::{Error, Result};

/// Arbitrary-precision rational number, kept reduced with positive
/// denominator by `num_rational`.
pub type Rational = num_rational::BigRational;

/// Parses a rational from the `"a/b"` (or plain `"a"`) wire form.
pub fn rational_from_str(s: &str) -> Result<Rational> {
    let parse_int = |t: &str| -> Result<BigInt> {
        t.trim()
            .parse::<BigInt>()
            .map_err(|e| Error::InconsistentInput(format!("bad integer {t:?}: {e}")))
    };
    match s.split_once('/') {
        Some((num, den)) => {
            let den = parse_int(den)?;
            if den.is_zero() {
                return Err(Error::InconsistentInput("zero denominator".into()));
            }
            Ok(Rational::new(parse_int(num)?, den))
        }
        None => Ok(Rational::from_integer(parse_int(s)?)),
    }
}

/// Renders a rational in the `"a/b"` wire form (`"a"` when integral).
pub fn rational_to_string(r: &Rational) -> String {
    if r.denom().is_one() {
        r.numer().to_string()
    } else {
        format!("{}/{}", r.numer(), r.denom())
    }
}

/// Single-variable Laurent polynomial over ℤ.
///
/// Stored sparsely as exponent → coefficient with no explicit zeros; the
/// empty map is 0.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct LaurentPolynomial {
    coeffs: BTreeMap<i64, BigInt>,
}

impl LaurentPolynomial {
    pub fn zero() -> Self {
        Self::default()
    }

    pub fn one() -> Self {
        Self::monomial(0, BigInt::one())
    }

    /// `c · t^e`.
    pub fn monomial(exponent: i64, coeff: impl Into<BigInt>) -> Self {
        let mut coeffs = BTreeMap::new();
        let c = coeff.into();
        if !c.is_zero() {
            coeffs.insert(exponent, c);
        }
        Self { coeffs }
    }

    pub fn from_terms<I, C>(terms: I) -> Self
    where
        I: IntoIterator<Item = (i64, C)>,
        C: Into<BigInt>,
    {
        let mut p = Self::zero();
        for (e, c) in terms {
            p.add_term(e, c.into());
        }
        p
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    pub fn coeff(&self, exponent: i64) -> BigInt {
        self.coeffs.get(&exponent).cloned().unwrap_or_default()
    }

    pub fn terms(&self) -> impl Iterator<Item = (i64, &BigInt)> {
        self.coeffs.iter().map(|(e, c)| (*e, c))
    }

    pub fn min_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next().copied()
    }

    pub fn max_exponent(&self) -> Option<i64> {
        self.coeffs.keys().next_back().copied()
    }

    pub fn add_term(&mut self, exponent: i64, coeff: BigInt) {
        if coeff.is_zero() {
            return;
        }
        let entry = self.coeffs.entry(exponent).or_default();
        *entry += coeff;
        if entry.is_zero() {
            self.coeffs.remove(&exponent);
        }
    }

    /// Multiplies by `t^shift`.
    pub fn shifted(&self, shift: i64) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (e + shift, c.clone())).collect(),
        }
    }

    /// Substitutes `t ↦ t⁻¹`.
    pub fn mirrored(&self) -> Self {
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (-e, c.clone())).collect(),
        }
    }

    pub fn scaled(&self, k: &BigInt) -> Self {
        if k.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, c * k)).collect(),
        }
    }

    /// Evaluation at `t = 1`; a ring homomorphism onto ℤ.
    pub fn eval_one(&self) -> BigInt {
        self.coeffs.values().sum()
    }

    /// Evaluation at `t = -1`.
    pub fn eval_minus_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(e, c)| if e.rem_euclid(2) == 0 { c.clone() } else { -c.clone() })
            .sum()
    }

    /// Second derivative evaluated at `t = 1`, computed termwise as
    /// `Σ_j j(j-1)·coeff(j)` over the Laurent expansion.
    pub fn second_derivative_at_one(&self) -> BigInt {
        self.coeffs
            .iter()
            .map(|(e, c)| BigInt::from(*e) * BigInt::from(e - 1) * c)
            .sum()
    }

    /// `coeff(j) = coeff(-j)` for every exponent.
    pub fn is_palindromic(&self) -> bool {
        self.coeffs.iter().all(|(e, c)| &self.coeff(-e) == c)
    }
}

impl Add for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn add(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, c.clone());
        }
        out
    }
}

impl Sub for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn sub(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = self.clone();
        for (e, c) in &rhs.coeffs {
            out.add_term(*e, -c.clone());
        }
        out
    }
}

impl Neg for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn neg(self) -> LaurentPolynomial {
        LaurentPolynomial {
            coeffs: self.coeffs.iter().map(|(e, c)| (*e, -c.clone())).collect(),
        }
    }
}

impl Mul for &LaurentPolynomial {
    type Output = LaurentPolynomial;
    fn mul(self, rhs: &LaurentPolynomial) -> LaurentPolynomial {
        let mut out = LaurentPolynomial::zero();
        for (e1, c1) in &self.coeffs {
            for (e2, c2) in &rhs.coeffs {
                out.add_term(e1 + e2, c1 * c2);
            }
        }
        out
    }
}

impl fmt::Display for LaurentPolynomial {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (e, c) in self.coeffs.iter().rev() {
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
                first = false;
            } else if c.is_negative() {
                write!(f, " - ")?;
            } else {
                write!(f, " + ")?;
            }
            let lead = c.abs();
            match e {
                0 => write!(f, "{lead}")?,
                1 if lead.is_one() => write!(f, "t")?,
                1 => write!(f, "{lead}*t")?,
                _ if lead.is_one() => write!(f, "t^{e}")?,
                _ => write!(f, "{lead}*t^{e}")?,
            }
        }
        Ok(())
    }
}

/// Sign variant for quantum integers: substitute `q = t` or `q = -t`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum QuantumSign {
    Q,
    MinusQ,
}

/// The quantum integer `[n]_q = (q^n - q^{-n})/(q - q^{-1})` as a Laurent
/// polynomial in `t`, with `q` substituted per `sign_variant`.
///
/// `[n]_{-t} = (-1)^{n-1} [n]_t`, so evaluation at `t = 1` gives
/// `(-1)^{n-1} n` in the `MinusQ` variant.
pub fn quantum_integer(n: u64, sign_variant: QuantumSign) -> LaurentPolynomial {
    assert!(n >= 1, "quantum integer needs n >= 1");
    let mut p = LaurentPolynomial::zero();
    let n = n as i64;
    let mut e = n - 1;
    while e >= 1 - n {
        let c = match sign_variant {
            QuantumSign::Q => BigInt::one(),
            // (-t)^e contributes (-1)^e; all exponents share parity n-1.
            QuantumSign::MinusQ => {
                if e.rem_euclid(2) == 0 {
                    BigInt::one()
                } else {
                    -BigInt::one()
                }
            }
        };
        p.add_term(e, c);
        e -= 2;
    }
    p
}

/// Shifts `p` by the unique centering monomial and fixes the global sign
/// so the result is palindromic with value ≥ 0 at `t = 1`.
///
/// When the value at 1 is 0 the sign is fixed by a positive top-degree
/// coefficient. Fails with `NotSymmetrizable` when no monomial shift
/// makes the polynomial palindromic.
pub fn symmetrize_and_normalize(p: &LaurentPolynomial) -> Result<LaurentPolynomial> {
    if p.is_zero() {
        return Ok(LaurentPolynomial::zero());
    }
    let lo = p.min_exponent().unwrap();
    let hi = p.max_exponent().unwrap();
    if (lo + hi).rem_euclid(2) != 0 {
        return Err(Error::NotSymmetrizable);
    }
    let centered = p.shifted(-(lo + hi) / 2);
    if !centered.is_palindromic() {
        return Err(Error::NotSymmetrizable);
    }
    let at_one = centered.eval_one();
    let flip = if at_one.is_zero() {
        centered.coeff(centered.max_exponent().unwrap()).is_negative()
    } else {
        at_one.is_negative()
    };
    Ok(if flip { -&centered } else { centered })
}

/// Element of `F_p[y]/y^m`: residues of `y^0 … y^{m-1}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncatedPoly {
    p: u64,
    coeffs: Vec<u64>,
}

impl TruncatedPoly {
    pub fn zero(p: u64, m: usize) -> Self {
        assert!(p >= 3 && m >= 1);
        Self { p, coeffs: vec![0; m] }
    }

    pub fn one(p: u64, m: usize) -> Self {
        let mut t = Self::zero(p, m);
        t.coeffs[0] = 1;
        t
    }

    pub fn from_coeffs(p: u64, coeffs: Vec<u64>) -> Self {
        assert!(p >= 3 && !coeffs.is_empty());
        let coeffs = coeffs.into_iter().map(|c| c % p).collect();
        Self { p, coeffs }
    }

    pub fn modulus(&self) -> u64 {
        self.p
    }

    pub fn truncation(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[u64] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.iter().all(|&c| c == 0)
    }

    /// The generator `y`.
    pub fn gen(p: u64, m: usize) -> Self {
        let mut t = Self::zero(p, m);
        if m > 1 {
            t.coeffs[1] = 1;
        }
        t
    }

    pub fn scalar(p: u64, m: usize, value: &BigInt) -> Self {
        let mut t = Self::zero(p, m);
        t.coeffs[0] = reduce_bigint(value, p);
        t
    }

    pub fn add(&self, rhs: &Self) -> Self {
        self.compatible(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a + b) % self.p)
            .collect();
        Self { p: self.p, coeffs }
    }

    pub fn sub(&self, rhs: &Self) -> Self {
        self.compatible(rhs);
        let coeffs = self
            .coeffs
            .iter()
            .zip(&rhs.coeffs)
            .map(|(a, b)| (a + self.p - b) % self.p)
            .collect();
        Self { p: self.p, coeffs }
    }

    /// Product with truncation of powers `≥ m`.
    pub fn mul(&self, rhs: &Self) -> Self {
        self.compatible(rhs);
        let m = self.coeffs.len();
        let mut coeffs = vec![0u64; m];
        for (i, a) in self.coeffs.iter().enumerate() {
            if *a == 0 {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                if i + j >= m {
                    break;
                }
                coeffs[i + j] = (coeffs[i + j] + a * b) % self.p;
            }
        }
        Self { p: self.p, coeffs }
    }

    pub fn scale(&self, k: u64) -> Self {
        let k = k % self.p;
        let coeffs = self.coeffs.iter().map(|c| c * k % self.p).collect();
        Self { p: self.p, coeffs }
    }

    pub fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one(self.p, self.coeffs.len());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            base = base.mul(&base);
            e >>= 1;
        }
        acc
    }

    fn compatible(&self, rhs: &Self) {
        assert_eq!(self.p, rhs.p, "modulus mismatch");
        assert_eq!(self.coeffs.len(), rhs.coeffs.len(), "truncation mismatch");
    }
}

fn reduce_bigint(value: &BigInt, p: u64) -> u64 {
    use num_integer::Integer;
    let m = value.mod_floor(&BigInt::from(p));
    let digits = m.to_u64_digits().1;
    digits.first().copied().unwrap_or(0)
}

/// Image of an integer Laurent polynomial under `t ↦ 1 + y` in
/// `F_p[y]/y^{p-1}`, with `t⁻¹ ↦ Σ_{i<p-1} (-y)^i`.
pub fn cyclotomic_reduce(poly: &LaurentPolynomial, prime: u64) -> TruncatedPoly {
    assert!(prime >= 3, "prime must be >= 3");
    let m = (prime - 1) as usize;
    let t = {
        let mut v = TruncatedPoly::zero(prime, m);
        v.coeffs[0] = 1;
        if m > 1 {
            v.coeffs[1] = 1;
        }
        v
    };
    // (1+y)^{-1} = 1 - y + y^2 - ... truncated at y^{p-1}.
    let t_inv = {
        let mut v = TruncatedPoly::zero(prime, m);
        for i in 0..m {
            v.coeffs[i] = if i % 2 == 0 { 1 } else { prime - 1 };
        }
        v
    };
    let mut out = TruncatedPoly::zero(prime, m);
    for (e, c) in poly.terms() {
        let base = if e >= 0 { t.pow(e as u64) } else { t_inv.pow((-e) as u64) };
        out = out.add(&base.scale(reduce_bigint(c, prime)));
    }
    out
}
