//! Truncated multivariate polynomials over big rationals.
//!
//! A `TruncPoly` lives in the quotient where every monomial whose exponent in
//! variable `v` exceeds a fixed per-variable cap is identically zero. The
//! caps are part of the value's shape, fixed at construction; every binary
//! operation demands identical shapes. Multiplication simply drops products
//! that leave the box — for coefficient extraction this is lossless, because
//! exponents only ever grow, so nothing above the caps can come back down to
//! a coefficient we read off.
//!
//! Storage is a sparse association from exponent vectors to nonzero rational
//! coefficients, kept in a sorted map: representation is canonical, equality
//! is structural, iteration order is deterministic.

use crate::Rational;
use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};
use std::collections::{BTreeMap, HashMap};

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum PolyError {
    #[error("shape mismatch: caps {0:?} vs {1:?}")]
    ShapeMismatch(Vec<u32>, Vec<u32>),
    #[error("exponent {exp} of variable {var} exceeds cap {cap}")]
    ExponentOutOfRange { var: usize, exp: u32, cap: u32 },
    #[error("exponent vector has {got} entries, shape has {want} variables")]
    ArityMismatch { got: usize, want: usize },
}

/// The box of admissible exponents: one inclusive cap per variable.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PolyShape {
    caps: Vec<u32>,
}

impl PolyShape {
    pub fn new(caps: Vec<u32>) -> Self {
        // Guard the dense accumulator's index arithmetic.
        let mut size: u128 = 1;
        for &c in &caps {
            size = size.saturating_mul(c as u128 + 1);
        }
        assert!(size <= u64::MAX as u128, "exponent box too large to index");
        PolyShape { caps }
    }

    pub fn var_count(&self) -> usize {
        self.caps.len()
    }

    pub fn caps(&self) -> &[u32] {
        &self.caps
    }

    /// Number of lattice points in the box.
    fn box_size(&self) -> u64 {
        self.caps.iter().map(|&c| c as u64 + 1).product()
    }

    pub fn check_exps(&self, exps: &[u32]) -> Result<(), PolyError> {
        if exps.len() != self.caps.len() {
            return Err(PolyError::ArityMismatch {
                got: exps.len(),
                want: self.caps.len(),
            });
        }
        for (var, (&e, &cap)) in exps.iter().zip(&self.caps).enumerate() {
            if e > cap {
                return Err(PolyError::ExponentOutOfRange { var, exp: e, cap });
            }
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TruncPoly {
    shape: PolyShape,
    terms: BTreeMap<Vec<u32>, Rational>,
}

impl TruncPoly {
    pub fn zero(shape: PolyShape) -> Self {
        TruncPoly {
            shape,
            terms: BTreeMap::new(),
        }
    }

    pub fn one(shape: PolyShape) -> Self {
        Self::constant(shape, Rational::one())
    }

    pub fn constant(shape: PolyShape, q: Rational) -> Self {
        let mut p = Self::zero(shape);
        if !q.is_zero() {
            p.terms.insert(vec![0; p.shape.var_count()], q);
        }
        p
    }

    pub fn monomial(shape: PolyShape, exps: &[u32], coeff: Rational) -> Result<Self, PolyError> {
        shape.check_exps(exps)?;
        let mut p = Self::zero(shape);
        if !coeff.is_zero() {
            p.terms.insert(exps.to_vec(), coeff);
        }
        Ok(p)
    }

    pub fn shape(&self) -> &PolyShape {
        &self.shape
    }

    pub fn term_count(&self) -> usize {
        self.terms.len()
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    /// Terms in lexicographic exponent order, coefficients all nonzero.
    pub fn terms(&self) -> impl Iterator<Item = (&[u32], &Rational)> {
        self.terms.iter().map(|(e, q)| (e.as_slice(), q))
    }

    /// Coefficient of the given exponent vector (zero when absent); the
    /// vector must lie inside the box.
    pub fn coeff(&self, exps: &[u32]) -> Result<Rational, PolyError> {
        self.shape.check_exps(exps)?;
        Ok(self.terms.get(exps).cloned().unwrap_or_else(Rational::zero))
    }

    pub fn add(&self, other: &TruncPoly) -> Result<TruncPoly, PolyError> {
        self.expect_same_shape(other)?;
        let mut out = self.clone();
        out.add_assign(other);
        Ok(out)
    }

    pub(crate) fn add_assign(&mut self, other: &TruncPoly) {
        debug_assert_eq!(self.shape, other.shape);
        for (e, q) in &other.terms {
            add_term(&mut self.terms, e, q.clone());
        }
    }

    /// Adds `coeff * x^shift * other`, truncating at the caps. The workhorse
    /// for building factor-trace polynomials.
    pub(crate) fn add_assign_shifted(
        &mut self,
        other: &TruncPoly,
        shift: &[u32],
        coeff: &Rational,
    ) {
        debug_assert_eq!(self.shape, other.shape);
        debug_assert_eq!(shift.len(), self.shape.var_count());
        if coeff.is_zero() {
            return;
        }
        let caps = self.shape.caps.clone();
        'term: for (e, q) in &other.terms {
            let mut out = Vec::with_capacity(e.len());
            for ((&a, &b), &cap) in e.iter().zip(shift).zip(&caps) {
                let s = a + b;
                if s > cap {
                    continue 'term;
                }
                out.push(s);
            }
            add_term(&mut self.terms, &out, q * coeff);
        }
    }

    pub fn scale(&self, q: &Rational) -> TruncPoly {
        if q.is_zero() {
            return TruncPoly::zero(self.shape.clone());
        }
        TruncPoly {
            shape: self.shape.clone(),
            terms: self.terms.iter().map(|(e, c)| (e.clone(), c * q)).collect(),
        }
    }

    /// Truncating product. Coefficients are accumulated as big integers over
    /// a common denominator (the lcm of each operand's denominators), which
    /// keeps the inner loop in integer arithmetic; results are reduced back
    /// to canonical rationals at the end.
    pub fn mul(&self, other: &TruncPoly) -> Result<TruncPoly, PolyError> {
        self.expect_same_shape(other)?;
        let caps = &self.shape.caps;
        let (ta, da) = integer_scaled(&self.terms);
        let (tb, db) = integer_scaled(&other.terms);
        let denom = da * db;
        // Iterate the smaller operand in the outer loop.
        let (ta, tb) = if ta.len() <= tb.len() {
            (&ta, &tb)
        } else {
            (&tb, &ta)
        };

        let box_size = self.shape.box_size();
        let mut out = TruncPoly::zero(self.shape.clone());
        const DENSE_LIMIT: u64 = 1 << 18;
        if box_size <= DENSE_LIMIT {
            // Dense accumulator indexed by mixed-radix encoding.
            let mut strides = vec![0u64; caps.len()];
            let mut s = 1u64;
            for (v, &cap) in caps.iter().enumerate().rev() {
                strides[v] = s;
                s *= cap as u64 + 1;
            }
            let encode =
                |e: &[u32]| -> u64 { e.iter().zip(&strides).map(|(&x, &st)| x as u64 * st).sum() };
            let mut acc: Vec<BigInt> = vec![BigInt::zero(); box_size as usize];
            let mut hit: Vec<bool> = vec![false; box_size as usize];
            let mut sum = vec![0u32; caps.len()];
            for (ea, na) in ta {
                'inner: for (eb, nb) in tb {
                    for v in 0..caps.len() {
                        let s = ea[v] + eb[v];
                        if s > caps[v] {
                            continue 'inner;
                        }
                        sum[v] = s;
                    }
                    let idx = encode(&sum) as usize;
                    acc[idx] += na * nb;
                    hit[idx] = true;
                }
            }
            let mut exps = vec![0u32; caps.len()];
            for (idx, num) in acc.into_iter().enumerate() {
                if !hit[idx] || num.is_zero() {
                    continue;
                }
                let mut rem = idx as u64;
                for v in 0..caps.len() {
                    exps[v] = (rem / strides[v]) as u32;
                    rem %= strides[v];
                }
                out.terms
                    .insert(exps.clone(), Rational::new(num, denom.clone()));
            }
        } else {
            let mut acc: HashMap<Vec<u32>, BigInt> = HashMap::new();
            let mut sum = vec![0u32; caps.len()];
            for (ea, na) in ta {
                'inner2: for (eb, nb) in tb {
                    for v in 0..caps.len() {
                        let s = ea[v] + eb[v];
                        if s > caps[v] {
                            continue 'inner2;
                        }
                        sum[v] = s;
                    }
                    *acc.entry(sum.clone()).or_insert_with(BigInt::zero) += na * nb;
                }
            }
            for (e, num) in acc {
                if !num.is_zero() {
                    out.terms.insert(e, Rational::new(num, denom.clone()));
                }
            }
        }
        Ok(out)
    }

    /// `self^n` by binary exponentiation; `n = 0` gives the constant one.
    pub fn pow(&self, mut n: u64) -> TruncPoly {
        let mut result = TruncPoly::one(self.shape.clone());
        if n == 0 {
            return result;
        }
        let mut base = self.clone();
        loop {
            if n & 1 == 1 {
                result = result.mul(&base).expect("same shape by construction");
            }
            n >>= 1;
            if n == 0 {
                return result;
            }
            base = base.mul(&base).expect("same shape by construction");
        }
    }

    fn expect_same_shape(&self, other: &TruncPoly) -> Result<(), PolyError> {
        if self.shape != other.shape {
            return Err(PolyError::ShapeMismatch(
                self.shape.caps.clone(),
                other.shape.caps.clone(),
            ));
        }
        Ok(())
    }
}

fn add_term(terms: &mut BTreeMap<Vec<u32>, Rational>, exps: &[u32], q: Rational) {
    if q.is_zero() {
        return;
    }
    match terms.get_mut(exps) {
        Some(cur) => {
            *cur += q;
            if cur.is_zero() {
                terms.remove(exps);
            }
        }
        None => {
            terms.insert(exps.to_vec(), q);
        }
    }
}

/// Rewrites `terms` as integer numerators over the lcm of all denominators.
fn integer_scaled(terms: &BTreeMap<Vec<u32>, Rational>) -> (Vec<(Vec<u32>, BigInt)>, BigInt) {
    let mut denom = BigInt::one();
    for q in terms.values() {
        denom = denom.lcm(q.denom());
    }
    let scaled = terms
        .iter()
        .map(|(e, q)| (e.clone(), q.numer() * (&denom / q.denom())))
        .collect();
    (scaled, denom)
}
