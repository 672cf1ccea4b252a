//! Self-contained check suites runnable from the CLI: each suite
//! re-verifies a family of structural identities on seeded random data
//! and reports one pass/fail line per check.

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};
use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use serde_json::{json, Value};

use crate::casson::{
    casson_twist, theta0, theta0_via_operators, BoundingCurveSpec, LinkingForm, TwoTensor,
};
use crate::exterior::{contract, inner, jmap, wedge, Mask, MultiVector};
use crate::lefschetz::{component_basis, component_dimension, lower, raise, weight};
use crate::lescop::{lescop_from_alexander, lescop_from_weights, weights_from_alexander};
use crate::linalg::elementary_divisors;
use crate::modular::{fibonacci_dim_check, pmod_alexander, resolution_check};
use crate::rings::LaurentPolynomial;
use crate::tqft::{
    alexander_trace, fundamental_weights, random_symplectic, symmetrized_charpoly,
    weights_to_polynomial, CobordismWord,
};
use crate::{Error, Result};

#[derive(Debug, Clone)]
pub struct CheckResult {
    pub name: String,
    pub pass: bool,
    pub detail: String,
}

#[derive(Debug, Clone)]
pub struct SuiteReport {
    pub suite: String,
    pub seed: u64,
    pub gmax: usize,
    pub p: u64,
    pub checks: Vec<CheckResult>,
    pub pass: bool,
}

impl SuiteReport {
    pub fn to_value(&self) -> Value {
        json!({
            "suite": self.suite,
            "seed": self.seed,
            "gmax": self.gmax,
            "p": self.p,
            "checks": self.checks.iter().map(|c| json!({
                "name": c.name, "pass": c.pass, "detail": c.detail,
            })).collect::<Vec<_>>(),
            "pass": self.pass,
        })
    }
}

pub const SUITES: &[&str] =
    &["exterior", "lefschetz", "tqft", "lescop", "casson", "jm", "pmod", "cut", "all"];

/// Runs one named suite (or `all`) with bounded sizes.
pub fn run_suite(suite: &str, gmax: usize, p: u64, seed: u64) -> Result<SuiteReport> {
    let gmax = gmax.clamp(1, 4);
    let mut checks = Vec::new();
    let run_all = suite == "all";
    let mut matched = run_all;
    if run_all || suite == "exterior" {
        matched = true;
        exterior_suite(gmax, seed, &mut checks);
    }
    if run_all || suite == "lefschetz" {
        matched = true;
        lefschetz_suite(gmax, &mut checks);
    }
    if run_all || suite == "tqft" {
        matched = true;
        tqft_suite(gmax, seed, &mut checks);
    }
    if run_all || suite == "lescop" {
        matched = true;
        lescop_suite(seed, &mut checks);
    }
    if run_all || suite == "casson" {
        matched = true;
        casson_suite(gmax, seed, &mut checks);
    }
    if run_all || suite == "jm" {
        matched = true;
        jm_suite(seed, &mut checks);
    }
    if run_all || suite == "pmod" {
        matched = true;
        pmod_suite(gmax, p, seed, &mut checks);
    }
    if run_all || suite == "cut" {
        matched = true;
        cut_suite(seed, &mut checks);
    }
    if !matched {
        return Err(Error::Precondition(format!(
            "unknown suite {suite:?} (expected one of {SUITES:?})"
        )));
    }
    let pass = checks.iter().all(|c| c.pass);
    Ok(SuiteReport { suite: suite.to_string(), seed, gmax, p, checks, pass })
}

fn random_multivector(g: usize, rng: &mut StdRng) -> MultiVector {
    let mut x = MultiVector::zero(g);
    for _ in 0..rng.gen_range(1..5) {
        let mask = rng.gen_range(0..(1u64 << (2 * g))) as Mask;
        x.add_term(mask, BigInt::from(rng.gen_range(-4i64..=4)));
    }
    x
}

fn push(checks: &mut Vec<CheckResult>, name: &str, pass: bool, detail: String) {
    checks.push(CheckResult { name: name.to_string(), pass, detail });
}

fn exterior_suite(gmax: usize, seed: u64, checks: &mut Vec<CheckResult>) {
    let mut rng = StdRng::seed_from_u64(seed);
    let mut assoc = true;
    let mut adjoint = true;
    let mut trials = 0;
    for g in 1..=gmax {
        for _ in 0..20 {
            trials += 1;
            let (x, y, z) =
                (random_multivector(g, &mut rng), random_multivector(g, &mut rng), random_multivector(g, &mut rng));
            let lhs = wedge(&wedge(&x, &y).unwrap(), &z).unwrap();
            let rhs = wedge(&x, &wedge(&y, &z).unwrap()).unwrap();
            assoc &= lhs == rhs;
            for d in 1..=3u32 {
                let xd = x.degree_part(d);
                let lhs = inner(&contract(&xd, &y).unwrap(), &z).unwrap();
                let rhs = inner(&y, &wedge(&jmap(&xd), &z).unwrap()).unwrap();
                adjoint &= lhs == rhs;
            }
        }
    }
    push(checks, "wedge associativity", assoc, format!("{trials} random triples, g <= {gmax}"));
    push(checks, "contraction adjoint to J-twisted wedge", adjoint, format!("{trials} random triples"));
}

fn lefschetz_suite(gmax: usize, checks: &mut Vec<CheckResult>) {
    let mut commutator = true;
    for g in 1..=gmax.min(3) {
        for mask in 0..(1u64 << (2 * g)) {
            let m = MultiVector::monomial(g, mask as Mask, 1);
            let lhs = raise(&lower(&m)).sub(&lower(&raise(&m)));
            commutator &= lhs == weight(&m);
        }
    }
    push(checks, "[E, F] = H on the monomial basis", commutator, format!("g <= {}", gmax.min(3)));

    let mut dims = true;
    let mut saturated = true;
    for g in 1..=gmax {
        let mut total = 0usize;
        for j in 1..=g + 1 {
            let comp = component_basis(g, j);
            dims &= comp.dimension() == component_dimension(g, j);
            total += j * comp.dimension();
            if comp.dimension() > 0 && g <= 3 {
                let b = comp.basis_matrix(&comp.ambient_masks());
                saturated &= elementary_divisors(&b).iter().all(One::is_one);
            }
        }
        dims &= total == 1 << (2 * g);
    }
    push(checks, "component dimensions and multiplicity identity", dims, format!("g <= {gmax}"));
    push(checks, "saturation: unit elementary divisors", saturated, "g <= 3".into());
}

fn tqft_suite(gmax: usize, seed: u64, checks: &mut Vec<CheckResult>) {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x7151);
    let mut charpoly_ok = true;
    let mut expansion_ok = true;
    let mut trials = 0;
    for g in 1..=gmax.min(3) {
        for _ in 0..10 {
            trials += 1;
            let psi = random_symplectic(g, 14, &mut rng);
            let word = CobordismWord::mapping_class(psi.clone());
            let trace = alexander_trace(&word).unwrap();
            let mut oracle = symmetrized_charpoly(&psi);
            if g % 2 == 1 {
                oracle = oracle.scaled(&BigInt::from(-1));
            }
            charpoly_ok &= trace == oracle;
            expansion_ok &=
                trace == weights_to_polynomial(&fundamental_weights(&word).unwrap());
        }
    }
    push(checks, "Lefschetz trace matches characteristic polynomial", charpoly_ok, format!("{trials} words"));
    push(checks, "trace equals quantum-integer weight expansion", expansion_ok, format!("{trials} words"));
}

fn lescop_suite(seed: u64, checks: &mut Vec<CheckResult>) {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x1e5c);
    let mut round_trip = true;
    let mut agreement = true;
    for _ in 0..100 {
        let mut poly = LaurentPolynomial::zero();
        for e in 0..=rng.gen_range(0..5i64) {
            let c = rng.gen_range(-5i64..=5);
            poly.add_term(e, BigInt::from(c));
            if e > 0 {
                poly.add_term(-e, BigInt::from(c));
            }
        }
        let w = weights_from_alexander(&poly).unwrap();
        round_trip &= weights_to_polynomial(&w) == poly;
        if poly.eval_one().is_positive() {
            agreement &= lescop_from_weights(&w).value
                == lescop_from_alexander(&poly).unwrap().value;
        }
    }
    push(checks, "weight basis change round trip", round_trip, "100 symmetric polynomials".into());
    push(checks, "Lescop route agreement when value at 1 is positive", agreement, "filtered corpus".into());
}

fn casson_suite(gmax: usize, seed: u64, checks: &mut Vec<CheckResult>) {
    let mut rng = StdRng::seed_from_u64(seed ^ 0xca55);
    let mut lemma = true;
    let mut count = 0;
    for g in 2..=gmax.max(2) {
        let l = LinkingForm::standard(g);
        for _ in 0..25 {
            count += 1;
            let mut tensor = TwoTensor::new();
            for _ in 0..rng.gen_range(1..4) {
                let pick = |rng: &mut StdRng| loop {
                    let m = rng.gen_range(0..(1u64 << (2 * g))) as Mask;
                    if m.count_ones() == 2 {
                        return MultiVector::monomial(g, m, 1);
                    }
                };
                tensor.push((
                    pick(&mut rng),
                    pick(&mut rng),
                    BigInt::from(rng.gen_range(-3i64..=3)),
                ));
            }
            lemma &= theta0(&tensor, &l) == theta0_via_operators(&tensor).unwrap();
        }
    }
    push(checks, "linking form matches operator matrix elements", lemma, format!("{count} tensors"));

    let mut standard_zero = true;
    for g in 2..=gmax.max(2) {
        for h in 1..g {
            standard_zero &= casson_twist(&BoundingCurveSpec::standard(g, h)).is_zero();
        }
    }
    push(checks, "standard bounding curves have twist value 0", standard_zero, format!("g <= {}", gmax.max(2)));
}

fn jm_suite(seed: u64, checks: &mut Vec<CheckResult>) {
    use crate::casson::UClass;
    use crate::johnson_morita::{check_solvable, extended_rep, ElementBlocks, SolvableSample};
    let mut rng = StdRng::seed_from_u64(seed ^ 0x1a3);
    let g = 3;
    let primitives = component_basis(g, g - 2).basis.clone();
    let omega: Vec<BigInt> = component_basis(g, 1)
        .coordinates(&MultiVector::handle_body_state(g))
        .expect("handle-body state lies in the invariant component")
        .into_iter()
        .map(|c| c.numer().clone())
        .collect();
    let mut homomorphism = true;
    let mut relations = true;
    for _ in 0..10 {
        let s1 = random_symplectic(g, 6, &mut rng);
        let s2 = random_symplectic(g, 6, &mut rng);
        let u1 = UClass::new(primitives[rng.gen_range(0..primitives.len())].clone()).unwrap();
        let u2 = UClass::new(primitives[rng.gen_range(0..primitives.len())].clone()).unwrap();
        let r1 = extended_rep(&u1, &s1, 1).unwrap();
        let r2 = extended_rep(&u2, &s2, 1).unwrap();
        let prod = extended_rep(
            &u1.add(&u2.transformed(&s1).unwrap()).unwrap(),
            &s1.mul(&s2).unwrap(),
            1,
        )
        .unwrap();
        homomorphism &= r1.full_matrix().mul(&r2.full_matrix()) == prod.full_matrix();
        let elements = [("x", r1), ("y", r2), ("xy", prod)]
            .into_iter()
            .map(|(name, r)| {
                (name.to_string(), ElementBlocks::zero_order(r.top, r.bottom, r.bridge))
            })
            .collect();
        let sample = SolvableSample {
            modulus: None,
            w1_dim: component_dimension(g, 4),
            w0_dim: component_dimension(g, 1),
            omega: omega.clone(),
            elements,
            pairs: vec![("x".into(), "y".into(), "xy".into())],
        };
        relations &= check_solvable(&sample).map(|r| r.pass).unwrap_or(false);
    }
    push(checks, "extended representation is a homomorphism", homomorphism, "10 pairs at genus 3".into());
    push(checks, "zero-order block model satisfies the coboundary relations", relations, "10 samples".into());
}

fn pmod_suite(gmax: usize, p: u64, seed: u64, checks: &mut Vec<CheckResult>) {
    let mut rng = StdRng::seed_from_u64(seed ^ 0x90d);
    let mut routes = true;
    let mut count = 0;
    for g in 1..=gmax.min(3) {
        for _ in 0..6 {
            count += 1;
            let word = CobordismWord::mapping_class(random_symplectic(g, 12, &mut rng));
            match pmod_alexander(&word, p) {
                Ok(r) => routes &= r.from_weights == r.direct,
                Err(_) => routes = false,
            }
        }
    }
    push(checks, "mod-p weight and reduction routes agree", routes, format!("{count} words at p = {p}"));

    let mut resolutions = true;
    for k in 1..(p as usize).min(5) {
        for g in 1..=gmax {
            resolutions &= resolution_check(k, p, g).is_ok();
        }
    }
    push(checks, "quotient resolutions exact", resolutions, format!("k < {p}, g <= {gmax}"));

    let mut fib = true;
    for g in [2usize, 4] {
        if g <= gmax.max(2) * 2 {
            fib &= fibonacci_dim_check(g).is_ok();
        }
    }
    push(checks, "quotient dimension Fibonacci identity", fib, "g in {2, 4}".into());
}

fn cut_suite(seed: u64, checks: &mut Vec<CheckResult>) {
    let mut rng = StdRng::seed_from_u64(seed ^ 0xc07);
    let mut genus_one = true;
    for _ in 0..50 {
        let psi = random_symplectic(1, 12, &mut rng);
        genus_one &=
            crate::cut::delta5_literal(&psi) == crate::cut::delta5_trace(&psi).unwrap();
    }
    push(checks, "literal and trace delta5 agree at genus one", genus_one, "50 matrices".into());

    let sigma2 = crate::cut::cut_report(&crate::cut::CutInput::Monodromy(
        crate::exterior::SymplecticMatrix::identity(2),
    ))
    .unwrap();
    push(
        checks,
        "product of a genus-two surface and the circle carries no certificate",
        sigma2.upper == Some(sigma2.b1) && sigma2.delta5_trace == 0,
        format!("literal fold misfires as documented: {}", sigma2.delta5_literal),
    );
}
