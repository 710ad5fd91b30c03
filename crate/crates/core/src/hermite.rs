//! Monic Hermite polynomials and exact Gaussian expectations.
//!
//! Everything here is closed-form and exact: these are the limit objects the
//! finite product computations converge to, so they double as the reference
//! side of the convergence reports.

use crate::Rational;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Dense univariate polynomial over rationals, coefficients ascending,
/// trailing zeros trimmed (the zero polynomial has no coefficients).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct UniPoly {
    coeffs: Vec<Rational>,
}

impl UniPoly {
    pub fn zero() -> Self {
        UniPoly { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        UniPoly::from_coeffs(vec![Rational::one()])
    }

    pub fn x() -> Self {
        UniPoly::from_coeffs(vec![Rational::zero(), Rational::one()])
    }

    pub fn from_coeffs(coeffs: Vec<Rational>) -> Self {
        let mut p = UniPoly { coeffs };
        p.trim();
        p
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(Zero::is_zero) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree of the zero polynomial is reported as 0.
    pub fn degree(&self) -> usize {
        self.coeffs.len().saturating_sub(1)
    }

    pub fn coeff(&self, i: usize) -> Rational {
        self.coeffs.get(i).cloned().unwrap_or_else(Rational::zero)
    }

    pub fn coeffs(&self) -> &[Rational] {
        &self.coeffs
    }

    pub fn add(&self, other: &UniPoly) -> UniPoly {
        let n = self.coeffs.len().max(other.coeffs.len());
        let coeffs = (0..n).map(|i| self.coeff(i) + other.coeff(i)).collect();
        UniPoly::from_coeffs(coeffs)
    }

    pub fn sub(&self, other: &UniPoly) -> UniPoly {
        self.add(&other.scale(&-Rational::one()))
    }

    pub fn scale(&self, q: &Rational) -> UniPoly {
        UniPoly::from_coeffs(self.coeffs.iter().map(|c| c * q).collect())
    }

    pub fn mul(&self, other: &UniPoly) -> UniPoly {
        if self.is_zero() || other.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = vec![Rational::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        UniPoly::from_coeffs(coeffs)
    }

    /// Multiplication by `x`.
    pub fn mul_x(&self) -> UniPoly {
        if self.is_zero() {
            return UniPoly::zero();
        }
        let mut coeffs = Vec::with_capacity(self.coeffs.len() + 1);
        coeffs.push(Rational::zero());
        coeffs.extend(self.coeffs.iter().cloned());
        UniPoly::from_coeffs(coeffs)
    }

    pub fn pow(&self, n: u32) -> UniPoly {
        let mut out = UniPoly::one();
        for _ in 0..n {
            out = out.mul(self);
        }
        out
    }

    pub fn eval_f64(&self, x: f64) -> f64 {
        self.coeffs
            .iter()
            .rev()
            .fold(0.0, |acc, c| acc * x + c.to_f64().unwrap_or(f64::NAN))
    }
}

/// Monic Hermite polynomial `H_n` for the standard Gaussian weight:
/// `H_0 = 1`, `H_1 = x`, `x H_n = H_{n+1} + n H_{n-1}`.
pub fn monic_hermite(n: u32) -> UniPoly {
    let mut prev = UniPoly::one();
    if n == 0 {
        return prev;
    }
    let mut cur = UniPoly::x();
    for j in 1..n {
        let next = cur
            .mul_x()
            .sub(&prev.scale(&Rational::from_integer(j.into())));
        prev = cur;
        cur = next;
    }
    cur
}

/// The same polynomials reached through the product-identity reduction:
/// seeded at `p_1 = x`, `p_2 = x^2 - 1`, with `p_{n+1} = x p_n - n p_{n-1}`
/// (the correction terms of the full recurrence vanish in the limit).
/// Coincides with [`monic_hermite`]; computing it independently keeps the
/// cross-check honest.
pub fn reduction_polynomial(n: u32) -> UniPoly {
    assert!(n >= 1, "reduction polynomials start at n = 1");
    let mut prev = UniPoly::x();
    if n == 1 {
        return prev;
    }
    let mut cur = UniPoly::from_coeffs(vec![-Rational::one(), Rational::zero(), Rational::one()]);
    for j in 2..n {
        let next = cur
            .mul_x()
            .sub(&prev.scale(&Rational::from_integer(j.into())));
        prev = cur;
        cur = next;
    }
    cur
}

/// `E[g^n]` for standard Gaussian `g`: zero for odd `n`, `(2k)!/(2^k k!)`
/// for `n = 2k`.
pub fn gaussian_moment(n: u32) -> Rational {
    if n % 2 == 1 {
        return Rational::zero();
    }
    let k = n / 2;
    let mut num = BigInt::one();
    for i in 1..=n {
        num *= i;
    }
    let mut den = BigInt::one();
    for i in 1..=k {
        den *= i;
    }
    den *= BigInt::from(2u32).pow(k);
    Rational::new(num, den)
}

/// `E[p(g)]` for standard Gaussian `g`, termwise from the moment sequence.
pub fn expect_gaussian(p: &UniPoly) -> Rational {
    p.coeffs()
        .iter()
        .enumerate()
        .map(|(i, c)| c * gaussian_moment(i as u32))
        .sum()
}

/// `E[H_k(g)^m]` for the monic Hermite polynomial, exact.
pub fn hermite_power_expectation(k: u32, m: u32) -> Rational {
    expect_gaussian(&monic_hermite(k).pow(m))
}

/// The `m`-th moment of the limit law `c^{k/2} (1/k!) H_k(g)`:
/// `c^{km/2} (1/k!)^m E[H_k(g)^m]`. Odd `k*m` makes the expectation vanish
/// by parity, so the result stays an exact rational for every input.
pub fn limit_moment(c: &Rational, k: u32, m: u32) -> Rational {
    let km = k as u64 * m as u64;
    if km % 2 == 1 {
        return Rational::zero();
    }
    let expect = hermite_power_expectation(k, m);
    if expect.is_zero() {
        return expect;
    }
    let mut kfact = BigInt::one();
    for i in 1..=k {
        kfact *= i;
    }
    let c_pow = pow_rational(c, km / 2);
    let scale = Rational::new(BigInt::one(), kfact.pow(m));
    c_pow * scale * expect
}

fn pow_rational(c: &Rational, e: u64) -> Rational {
    let mut out = Rational::one();
    for _ in 0..e {
        out *= c;
    }
    out
}
