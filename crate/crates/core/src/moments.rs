//! Exact moments of the product-power random variables.
//!
//! Everything here computes normalized-trace moments for the N-fold
//! Cartesian power *without materializing it*: the normalized trace of an
//! N-fold tensor product factorizes, so the moment of a product of
//! placement sums is a coefficient of `f^N`, where
//! `f(u_1, …, u_m) = (1/|V|) Tr[T_1(u_1) ⋯ T_m(u_m)]`
//! is a polynomial built on the single factor graph. Binary exponentiation
//! of the truncated polynomial makes N in the millions routine.

use crate::graph::Graph;
use crate::matrix::IntSymMatrix;
use crate::poly::{PolyError, PolyShape, TruncPoly};
use crate::scaled::{rational_to_f64, ScaledValue};
use crate::Rational;
use num_bigint::{BigInt, Sign};
use num_traits::{One, Zero};
use std::fmt;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum MomentError {
    #[error("order n = {n} out of range 1..=N (N = {n_copies})")]
    OrderOutOfRange { n: u32, n_copies: u64 },
    #[error("need at least one copy (N >= 1)")]
    ZeroCopies,
    #[error("moment power m must be >= 1")]
    ZeroPower,
    #[error("pencil matrix is {got}x{got}, factor graph has {want} vertices")]
    DimensionMismatch { got: usize, want: usize },
    #[error(transparent)]
    Poly(#[from] PolyError),
}

/// A partition of `k`, stored as multiplicities: `counts[h-1]` parts of
/// size `h`, trailing zeros trimmed. The weight is `Σ h·counts[h-1]`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Partition {
    counts: Vec<u32>,
}

impl Partition {
    pub fn from_counts(counts: &[u32]) -> Self {
        let mut counts = counts.to_vec();
        while counts.last() == Some(&0) {
            counts.pop();
        }
        Partition { counts }
    }

    pub fn from_parts(parts: &[u32]) -> Self {
        let mut counts = Vec::new();
        for &p in parts {
            assert!(p >= 1, "parts must be positive");
            if counts.len() < p as usize {
                counts.resize(p as usize, 0);
            }
            counts[p as usize - 1] += 1;
        }
        Partition { counts }
    }

    /// Multiplicity vector; index `h-1` counts the parts of size `h`.
    pub fn counts(&self) -> &[u32] {
        &self.counts
    }

    /// The partitioned integer `k`.
    pub fn weight(&self) -> u32 {
        self.counts
            .iter()
            .enumerate()
            .map(|(i, &j)| (i as u32 + 1) * j)
            .sum()
    }

    /// Number of parts.
    pub fn part_count(&self) -> u32 {
        self.counts.iter().sum()
    }

    /// Parts in descending order.
    pub fn parts(&self) -> Vec<u32> {
        let mut out = Vec::new();
        for (i, &j) in self.counts.iter().enumerate().rev() {
            for _ in 0..j {
                out.push(i as u32 + 1);
            }
        }
        out
    }

    /// The all-ones partition (every part equal to 1)?
    pub fn is_all_ones(&self) -> bool {
        self.counts.len() <= 1
    }

    pub fn max_part(&self) -> u32 {
        self.counts.len() as u32
    }
}

impl fmt::Display for Partition {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts = self.parts();
        if parts.is_empty() {
            return write!(f, "0");
        }
        let s: Vec<String> = parts.iter().map(u32::to_string).collect();
        write!(f, "{}", s.join("+"))
    }
}

/// All partitions of `k ≥ 1`, in ascending lexicographic order of the
/// descending part tuples — the all-ones partition first, the single part
/// `(k)` last.
pub fn partitions(k: u32) -> Vec<Partition> {
    assert!(k >= 1, "partitions are enumerated for k >= 1");
    fn rec(k: u32, cap: u32, prefix: &mut Vec<u32>, out: &mut Vec<Partition>) {
        if k == 0 {
            out.push(Partition::from_parts(prefix));
            return;
        }
        for p in 1..=cap.min(k) {
            prefix.push(p);
            rec(k - p, p, prefix, out);
            prefix.pop();
        }
    }
    let mut out = Vec::new();
    rec(k, k, &mut Vec::new(), &mut out);
    out
}

/// One term of a pencil: the matrix enters tagged with the monomial
/// `Π u_i^{exps[i]}`.
#[derive(Debug, Clone)]
pub struct PencilTerm {
    pub exps: Vec<u32>,
    pub matrix: IntSymMatrix,
}

/// Exact moment of one product-power random variable.
#[derive(Debug, Clone)]
pub struct MomentResult {
    /// Number of tensor copies N.
    pub n_copies: u64,
    /// The order parameter of the variable (k for distance graphs, n for
    /// elementary sums and their relatives, the weight for partitions).
    pub order: u32,
    /// The moment power m.
    pub power: u32,
    /// The exact un-normalized moment.
    pub raw: ScaledValue,
    /// The normalization divides by `N^(scale_half/2)`.
    pub scale_half: u32,
    /// `raw / N^(scale_half/2)` as a double — the only inexact field.
    pub normalized: f64,
}

impl MomentResult {
    /// The normalized moment as an exact rational, when it is one (no
    /// residual square root of the mean degree or of N).
    pub fn normalized_exact(&self) -> Option<Rational> {
        if self.raw.is_zero() {
            return Some(Rational::zero());
        }
        let q = self.raw.as_rational()?;
        if self.scale_half % 2 != 0 {
            return None;
        }
        Some(q / Rational::from_integer(big_pow(self.n_copies, self.scale_half / 2)))
    }
}

fn big_pow(base: u64, exp: u32) -> BigInt {
    BigInt::from(base).pow(exp)
}

/// `raw / N^(scale_half/2)` as a double, computed through exact rationals
/// so that astronomically large intermediates cannot degrade it.
pub fn normalized_f64(raw: &ScaledValue, c: &Rational, n_copies: u64, scale_half: u32) -> f64 {
    if raw.is_zero() {
        return 0.0;
    }
    let q = raw.rational_part();
    if raw.half_power() == 0 && scale_half % 2 == 0 {
        let exact = q / Rational::from_integer(big_pow(n_copies, scale_half / 2));
        return rational_to_f64(&exact);
    }
    // The value is q·c^(e/2)/N^(s/2); square it to stay rational, convert,
    // and restore the sign of q.
    let mut sq = q * q;
    if raw.half_power() == 1 {
        sq *= c;
    }
    sq /= Rational::from_integer(big_pow(n_copies, scale_half));
    let mag = rational_to_f64(&sq).sqrt();
    if q.numer().sign() == Sign::Minus {
        -mag
    } else {
        mag
    }
}

type RatMat = Vec<Rational>;

fn int_to_rational(m: &IntSymMatrix) -> RatMat {
    m.raw()
        .iter()
        .map(|&e| Rational::from_integer(e.into()))
        .collect()
}

/// Core of the engine: the single-factor normalized trace polynomial
/// `f = (1/|V|) Tr[T_1 ⋯ T_m]`, where pencil `j` lists the terms of
/// `T_j` as (monomial, matrix) pairs over the shared variable set.
fn trace_poly(v: usize, shape: &PolyShape, pencils: &[Vec<(Vec<u32>, RatMat)>]) -> TruncPoly {
    let mut cur: Vec<TruncPoly> = (0..v * v)
        .map(|i| {
            if i % (v + 1) == 0 {
                TruncPoly::one(shape.clone())
            } else {
                TruncPoly::zero(shape.clone())
            }
        })
        .collect();
    for pencil in pencils {
        let mut next: Vec<TruncPoly> = (0..v * v).map(|_| TruncPoly::zero(shape.clone())).collect();
        for (exps, mat) in pencil {
            for l in 0..v {
                for y in 0..v {
                    let coef = &mat[l * v + y];
                    if coef.is_zero() {
                        continue;
                    }
                    for x in 0..v {
                        if !cur[x * v + l].is_zero() {
                            next[x * v + y].add_assign_shifted(&cur[x * v + l], exps, coef);
                        }
                    }
                }
            }
        }
        cur = next;
    }
    let mut f = TruncPoly::zero(shape.clone());
    for x in 0..v {
        f.add_assign(&cur[x * v + x]);
    }
    f.scale(&Rational::new(BigInt::one(), BigInt::from(v as u64)))
}

/// Public pencil interface over integer symmetric matrices. Every term of
/// every pencil must be supplied explicitly (including identity terms); the
/// variable set and caps come from `shape`.
pub fn factor_trace_poly(
    g: &Graph,
    shape: &PolyShape,
    pencils: &[Vec<PencilTerm>],
) -> Result<TruncPoly, MomentError> {
    let v = g.vertex_count() as usize;
    let mut converted = Vec::with_capacity(pencils.len());
    for pencil in pencils {
        let mut terms = Vec::with_capacity(pencil.len());
        for t in pencil {
            if t.matrix.dim() != v {
                return Err(MomentError::DimensionMismatch {
                    got: t.matrix.dim(),
                    want: v,
                });
            }
            shape.check_exps(&t.exps)?;
            terms.push((t.exps.clone(), int_to_rational(&t.matrix)));
        }
        converted.push(terms);
    }
    Ok(trace_poly(v, shape, &converted))
}

fn validate(n_copies: u64, m: u32) -> Result<(), MomentError> {
    if n_copies == 0 {
        return Err(MomentError::ZeroCopies);
    }
    if m == 0 {
        return Err(MomentError::ZeroPower);
    }
    Ok(())
}

/// Extracts `coeff(target)` from `f^N`.
fn power_coefficient(
    f: &TruncPoly,
    n_copies: u64,
    target: &[u32],
) -> Result<Rational, MomentError> {
    Ok(f.pow(n_copies).coeff(target)?)
}

fn result_plain(
    n_copies: u64,
    order: u32,
    power: u32,
    raw: Rational,
    scale_half: u32,
    c: &Rational,
) -> MomentResult {
    let raw = ScaledValue::from_rational(raw);
    let normalized = normalized_f64(&raw, c, n_copies, scale_half);
    MomentResult {
        n_copies,
        order,
        power,
        raw,
        scale_half,
        normalized,
    }
}

/// `φ((A^[N,k])^m)`: moment of the distance-k adjacency of the N-th
/// Cartesian power, exact for any N. Normalization divides by `N^(km/2)`.
pub fn moment_distance_k(
    g: &Graph,
    n_copies: u64,
    k: u32,
    m: u32,
) -> Result<MomentResult, MomentError> {
    validate(n_copies, m)?;
    let shape = PolyShape::new(vec![k; m as usize]);
    let mut pencils = Vec::with_capacity(m as usize);
    for j in 0..m as usize {
        let mut terms = Vec::new();
        for h in 0..=g.diameter().min(k) {
            let mut exps = vec![0u32; m as usize];
            exps[j] = h;
            terms.push((exps, int_to_rational(&g.distance_k_matrix(h))));
        }
        pencils.push(terms);
    }
    let f = trace_poly(g.vertex_count() as usize, &shape, &pencils);
    let raw = power_coefficient(&f, n_copies, &vec![k; m as usize])?;
    Ok(result_plain(n_copies, k, m, raw, k * m, &g.mean_degree()))
}

/// `φ((A^(N,n))^m)` for the order-n elementary sum of adjacency
/// placements. Normalization divides by `N^(nm/2)`.
pub fn moment_elementary(
    g: &Graph,
    n_copies: u64,
    n: u32,
    m: u32,
) -> Result<MomentResult, MomentError> {
    validate(n_copies, m)?;
    if n < 1 || n as u64 > n_copies {
        return Err(MomentError::OrderOutOfRange { n, n_copies });
    }
    let raw = elementary_raw(g, n_copies, n, m)?;
    Ok(result_plain(n_copies, n, m, raw, n * m, &g.mean_degree()))
}

fn elementary_raw(g: &Graph, n_copies: u64, n: u32, m: u32) -> Result<Rational, MomentError> {
    let shape = PolyShape::new(vec![n; m as usize]);
    let a = int_to_rational(&g.adjacency());
    let id = int_to_rational(&IntSymMatrix::identity(g.vertex_count() as usize));
    let mut pencils = Vec::with_capacity(m as usize);
    for j in 0..m as usize {
        let mut unit = vec![0u32; m as usize];
        unit[j] = 1;
        pencils.push(vec![
            (vec![0u32; m as usize], id.clone()),
            (unit, a.clone()),
        ]);
    }
    let f = trace_poly(g.vertex_count() as usize, &shape, &pencils);
    power_coefficient(&f, n_copies, &vec![n; m as usize])
}

/// `φ(C(λ)^m)` for the partition term `C(λ)`: placements of the
/// distance-h matrices with multiplicities from `λ`, summed over all
/// arrangements into distinct slots. Normalization divides by
/// `N^(km/2)` with `k` the weight of `λ`.
pub fn moment_partition(
    g: &Graph,
    n_copies: u64,
    lam: &Partition,
    m: u32,
) -> Result<MomentResult, MomentError> {
    validate(n_copies, m)?;
    let active: Vec<(u32, u32)> = lam
        .counts()
        .iter()
        .enumerate()
        .filter(|&(_, &j)| j > 0)
        .map(|(i, &j)| (i as u32 + 1, j))
        .collect();
    let per_factor = active.len();
    let nvars = per_factor * m as usize;
    let mut caps = Vec::with_capacity(nvars);
    for _ in 0..m {
        caps.extend(active.iter().map(|&(_, j)| j));
    }
    let shape = PolyShape::new(caps.clone());
    let v = g.vertex_count() as usize;
    let id = int_to_rational(&IntSymMatrix::identity(v));
    let mut pencils = Vec::with_capacity(m as usize);
    for j in 0..m as usize {
        let mut terms = vec![(vec![0u32; nvars], id.clone())];
        for (pos, &(h, _)) in active.iter().enumerate() {
            let mut exps = vec![0u32; nvars];
            exps[j * per_factor + pos] = 1;
            terms.push((exps, int_to_rational(&g.distance_k_matrix(h))));
        }
        pencils.push(terms);
    }
    let f = trace_poly(v, &shape, &pencils);
    let raw = power_coefficient(&f, n_copies, &caps)?;
    Ok(result_plain(
        n_copies,
        lam.weight(),
        m,
        raw,
        lam.weight() * m,
        &g.mean_degree(),
    ))
}

/// `φ(F^(N,n)(b²−1)^m)` where the correction sum places the normalized
/// adjacency `b = A/√c` in `n−1` slots and `b²−1` in one slot, over all
/// arrangements. The raw value carries the exact half-powers of `c`; the
/// normalization divides by `N^((n+1)m/2)`.
pub fn moment_z(g: &Graph, n_copies: u64, n: u32, m: u32) -> Result<MomentResult, MomentError> {
    validate(n_copies, m)?;
    if n < 1 || n as u64 > n_copies {
        return Err(MomentError::OrderOutOfRange { n, n_copies });
    }
    let v = g.vertex_count() as usize;
    let c = g.mean_degree();
    let a = int_to_rational(&g.adjacency());
    let id = int_to_rational(&IntSymMatrix::identity(v));
    // Y = A²/c − I, the centered square of b.
    let mut y = vec![Rational::zero(); v * v];
    let adj = g.adjacency();
    for x in 0..v {
        for z in 0..v {
            let mut s: i64 = 0;
            for l in 0..v {
                s += adj.get(x, l) * adj.get(l, z);
            }
            let mut q = Rational::from_integer(s.into()) / &c;
            if x == z {
                q -= Rational::one();
            }
            y[x * v + z] = q;
        }
    }
    // Variables: (t_j, s_j) per factor — t counts adjacency picks (cap
    // n−1), s counts the single centered-square pick (cap 1).
    let m_us = m as usize;
    let mut caps = Vec::with_capacity(2 * m_us);
    for _ in 0..m {
        caps.push(n - 1);
        caps.push(1);
    }
    let shape = PolyShape::new(caps.clone());
    let mut pencils = Vec::with_capacity(m_us);
    for j in 0..m_us {
        let mut t_exp = vec![0u32; 2 * m_us];
        t_exp[2 * j] = 1;
        let mut s_exp = vec![0u32; 2 * m_us];
        s_exp[2 * j + 1] = 1;
        pencils.push(vec![
            (vec![0u32; 2 * m_us], id.clone()),
            (t_exp, a.clone()),
            (s_exp, y.clone()),
        ]);
    }
    let f = trace_poly(v, &shape, &pencils);
    let coeff = power_coefficient(&f, n_copies, &caps)?;
    // Each factor contributes n−1 copies of A still to be divided by √c.
    let raw = fold_c_half_powers(coeff, (n - 1) * m, &c);
    let normalized = normalized_f64(&raw, &c, n_copies, (n + 1) * m);
    Ok(MomentResult {
        n_copies,
        order: n,
        power: m,
        raw,
        scale_half: (n + 1) * m,
        normalized,
    })
}

/// `φ(B^m)` for `B = n!·b^(N,n)/N^(n/2)`: the Hermite-normalized
/// elementary sum. Raw is `(n!)^m·φ((A^(N,n))^m)·c^(−nm/2)` exactly; the
/// normalized field divides by `N^(nm/2)` and is the real moment of `B`.
pub fn moment_b(g: &Graph, n_copies: u64, n: u32, m: u32) -> Result<MomentResult, MomentError> {
    validate(n_copies, m)?;
    if n < 1 || n as u64 > n_copies {
        return Err(MomentError::OrderOutOfRange { n, n_copies });
    }
    let c = g.mean_degree();
    let mut fact = BigInt::one();
    for i in 2..=n {
        fact *= BigInt::from(i);
    }
    let mut q = elementary_raw(g, n_copies, n, m)?;
    q *= Rational::from_integer(fact.pow(m));
    let raw = fold_c_half_powers(q, n * m, &c);
    let normalized = normalized_f64(&raw, &c, n_copies, n * m);
    Ok(MomentResult {
        n_copies,
        order: n,
        power: m,
        raw,
        scale_half: n * m,
        normalized,
    })
}

/// Divides by `c^(w/2)` exactly: whole powers into the rational part, a
/// leftover `√c` into the parity tag.
fn fold_c_half_powers(mut q: Rational, w: u32, c: &Rational) -> ScaledValue {
    if q.is_zero() {
        return ScaledValue::zero();
    }
    let whole = (w + 1) / 2;
    if whole > 0 {
        let mut cw = Rational::one();
        for _ in 0..whole {
            cw *= c;
        }
        q /= cw;
    }
    // Odd w: q·c^(−(w+1)/2)·√c = q·c^(−w/2).
    ScaledValue::new(q, (w % 2) as u8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::brute;

    fn q(n: i64, d: i64) -> Rational {
        Rational::new(n.into(), d.into())
    }

    #[test]
    fn partitions_order_and_count() {
        let p1 = partitions(1);
        assert_eq!(p1.len(), 1);
        assert_eq!(p1[0].parts(), vec![1]);

        let p2 = partitions(2);
        assert_eq!(p2.len(), 2);
        assert_eq!(p2[0].counts(), &[2]); // 1+1 first
        assert_eq!(p2[1].counts(), &[0, 1]); // then 2

        let p4 = partitions(4);
        assert_eq!(p4.len(), 5);
        assert!(p4[0].is_all_ones());
        assert_eq!(p4[0].part_count(), 4);
        assert_eq!(p4.last().unwrap().parts(), vec![4]);
        for lam in &p4 {
            assert_eq!(lam.weight(), 4);
        }

        assert_eq!(partitions(6).len(), 11);
        assert_eq!(partitions(4)[1].to_string(), "2+1+1");
    }

    #[test]
    fn partition_from_parts_roundtrip() {
        let lam = Partition::from_parts(&[3, 1, 1]);
        assert_eq!(lam.counts(), &[2, 0, 1]);
        assert_eq!(lam.weight(), 5);
        assert_eq!(lam.part_count(), 3);
        assert_eq!(lam.max_part(), 3);
        assert_eq!(
            Partition::from_counts(&[2, 0, 1, 0, 0]).counts(),
            &[2, 0, 1]
        );
    }

    #[test]
    fn trace_poly_reference_values() {
        // K_2, two factors of I + u_j A: f = 1 + u1·u2.
        let g = Graph::family("K:2").unwrap();
        let shape = PolyShape::new(vec![1, 1]);
        let id = IntSymMatrix::identity(2);
        let a = g.adjacency();
        let pencil = |j: usize| {
            let mut unit = vec![0u32; 2];
            unit[j] = 1;
            vec![
                PencilTerm {
                    exps: vec![0, 0],
                    matrix: id.clone(),
                },
                PencilTerm {
                    exps: unit,
                    matrix: a.clone(),
                },
            ]
        };
        let f = factor_trace_poly(&g, &shape, &[pencil(0), pencil(1)]).unwrap();
        assert_eq!(f.coeff(&[0, 0]).unwrap(), Rational::one());
        assert_eq!(f.coeff(&[1, 1]).unwrap(), Rational::one());
        assert_eq!(f.coeff(&[1, 0]).unwrap(), Rational::zero());
        assert_eq!(f.term_count(), 2);

        // One factor only: the linear term dies on the zero diagonal.
        let shape1 = PolyShape::new(vec![1]);
        let f1 = factor_trace_poly(
            &g,
            &shape1,
            &[vec![
                PencilTerm {
                    exps: vec![0],
                    matrix: id.clone(),
                },
                PencilTerm {
                    exps: vec![1],
                    matrix: a.clone(),
                },
            ]],
        )
        .unwrap();
        assert_eq!(f1.term_count(), 1);
        assert_eq!(f1.coeff(&[0]).unwrap(), Rational::one());

        // K_3 with full distance pencils: f = 1 + 2 u1 u2.
        let k3 = Graph::family("K:3").unwrap();
        let shape2 = PolyShape::new(vec![2, 2]);
        let dp = |j: usize| {
            (0..=1u32)
                .map(|h| {
                    let mut exps = vec![0u32; 2];
                    exps[j] = h;
                    PencilTerm {
                        exps,
                        matrix: k3.distance_k_matrix(h),
                    }
                })
                .collect::<Vec<_>>()
        };
        let f2 = factor_trace_poly(&k3, &shape2, &[dp(0), dp(1)]).unwrap();
        assert_eq!(f2.coeff(&[1, 1]).unwrap(), q(2, 1));
        assert_eq!(f2.coeff(&[0, 0]).unwrap(), Rational::one());
        assert_eq!(f2.term_count(), 2);
    }

    #[test]
    fn trace_poly_rejects_wrong_dimension() {
        let g = Graph::family("K:3").unwrap();
        let shape = PolyShape::new(vec![1]);
        let err = factor_trace_poly(
            &g,
            &shape,
            &[vec![PencilTerm {
                exps: vec![1],
                matrix: IntSymMatrix::identity(2),
            }]],
        )
        .unwrap_err();
        assert!(matches!(
            err,
            MomentError::DimensionMismatch { got: 2, want: 3 }
        ));
    }

    #[test]
    fn distance_moment_reference_values() {
        let k2 = Graph::family("K:2").unwrap();
        // Hypercube distance-2 degree: φ((A^[3,2])²) = C(3,2) = 3.
        let r = moment_distance_k(&k2, 3, 2, 2).unwrap();
        assert_eq!(r.raw.as_rational().unwrap(), &q(3, 1));
        // CSV anchor: N=4 gives raw 6, normalized 6/16.
        let r4 = moment_distance_k(&k2, 4, 2, 2).unwrap();
        assert_eq!(r4.raw.as_rational().unwrap(), &q(6, 1));
        assert_eq!(r4.normalized, 0.375);
        assert_eq!(r4.normalized_exact().unwrap(), q(3, 8));
        // Odd power of a traceless variable.
        assert!(moment_distance_k(&k2, 3, 2, 1).unwrap().raw.is_zero());
        // k beyond N·diam: the zero matrix.
        assert!(moment_distance_k(&k2, 3, 5, 2).unwrap().raw.is_zero());
        // k = 0: the identity, all moments 1.
        let r0 = moment_distance_k(&k2, 3, 0, 4).unwrap();
        assert_eq!(r0.raw.as_rational().unwrap(), &Rational::one());
        assert_eq!(r0.normalized, 1.0);
    }

    #[test]
    fn distance_moment_matches_brute_oracle() {
        for tag in ["P:3", "C:5", "S:3"] {
            let g = Graph::family(tag).unwrap();
            for n_copies in 1..=2u64 {
                for k in 0..=3u32 {
                    let explicit =
                        brute::distance_k_adjacency(&g, n_copies as u32, k, 4096).unwrap();
                    let oracle = brute::trace_moments(&explicit, 4).unwrap();
                    for m in 1..=4u32 {
                        let fast = moment_distance_k(&g, n_copies, k, m).unwrap();
                        assert_eq!(
                            fast.raw.as_rational().unwrap(),
                            &oracle[m as usize],
                            "{tag} N={n_copies} k={k} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn elementary_moment_reference_values() {
        let k3 = Graph::family("K:3").unwrap();
        // φ((A^(2,1))²) = 2·φ(A²) = 4.
        let r = moment_elementary(&k3, 2, 1, 2).unwrap();
        assert_eq!(r.raw.as_rational().unwrap(), &q(4, 1));
        assert!(moment_elementary(&k3, 2, 1, 1).unwrap().raw.is_zero());
        assert!(matches!(
            moment_elementary(&k3, 2, 3, 2),
            Err(MomentError::OrderOutOfRange { n: 3, n_copies: 2 })
        ));
        // Complete factor graph: the elementary sum *is* the distance graph.
        let k2 = Graph::family("K:2").unwrap();
        for m in 1..=4u32 {
            for (n_copies, n) in [(3u64, 2u32), (3, 3), (2, 2)] {
                let e = moment_elementary(&k2, n_copies, n, m).unwrap();
                let d = moment_distance_k(&k2, n_copies, n, m).unwrap();
                assert_eq!(e.raw.as_rational(), d.raw.as_rational());
            }
        }
    }

    #[test]
    fn partition_moment_reference_values() {
        // P_3, single distance-2 part, two copies: raw = 2·φ((D²)²) = 4/3.
        let p3 = Graph::family("P:3").unwrap();
        let lam = Partition::from_counts(&[0, 1]);
        let r = moment_partition(&p3, 2, &lam, 2).unwrap();
        assert_eq!(r.raw.as_rational().unwrap(), &q(4, 3));
        assert!(moment_partition(&p3, 2, &lam, 1).unwrap().raw.is_zero());

        // All-ones partition reduces to the elementary sum.
        let c5 = Graph::family("C:5").unwrap();
        let ones = Partition::from_counts(&[2]);
        for m in 1..=3u32 {
            let a = moment_partition(&c5, 3, &ones, m).unwrap();
            let b = moment_elementary(&c5, 3, 2, m).unwrap();
            assert_eq!(a.raw.as_rational(), b.raw.as_rational());
        }

        // Part beyond the diameter: zero matrix.
        let k3 = Graph::family("K:3").unwrap();
        let far = Partition::from_counts(&[0, 1]);
        assert!(moment_partition(&k3, 2, &far, 2).unwrap().raw.is_zero());
    }

    #[test]
    fn partition_moment_matches_brute_oracle() {
        for tag in ["P:3", "C:5"] {
            let g = Graph::family(tag).unwrap();
            for k in 1..=3u32 {
                for lam in partitions(k) {
                    let explicit = brute::partition_term_matrix(&g, 2, lam.counts(), 4096).unwrap();
                    let oracle = brute::trace_moments(&explicit, 3).unwrap();
                    for m in 1..=3u32 {
                        let fast = moment_partition(&g, 2, &lam, m).unwrap();
                        assert_eq!(
                            fast.raw.as_rational().unwrap(),
                            &oracle[m as usize],
                            "{tag} lam={lam} m={m}"
                        );
                    }
                }
            }
        }
    }

    #[test]
    fn z_moment_reference_values() {
        // Involution adjacency: b² = 1, the correction vanishes identically.
        let k2 = Graph::family("K:2").unwrap();
        for n in 1..=2u32 {
            for m in 1..=3u32 {
                assert!(moment_z(&k2, 3, n, m).unwrap().raw.is_zero());
            }
        }
        // K_3: φ(z²) = 1/(2N) exactly.
        let k3 = Graph::family("K:3").unwrap();
        for n_copies in [4u64, 16] {
            let r = moment_z(&k3, n_copies, 1, 2).unwrap();
            assert_eq!(
                r.normalized_exact().unwrap(),
                q(1, 2 * n_copies as i64),
                "N={n_copies}"
            );
        }
        // Single factors with a zero-mean slot die at m=1.
        assert!(moment_z(&k3, 4, 1, 1).unwrap().raw.is_zero());
        assert!(moment_z(&k3, 4, 2, 1).unwrap().raw.is_zero());
    }

    #[test]
    fn b_moment_reference_values() {
        // Variance normalization: second moment of B at n=1 is exactly 1,
        // for any graph (including non-square mean degree).
        for tag in ["K:2", "K:3", "C:5", "S:3", "P:4"] {
            let g = Graph::family(tag).unwrap();
            let r = moment_b(&g, 8, 1, 2).unwrap();
            assert_eq!(r.normalized_exact().unwrap(), Rational::one(), "{tag}");
        }
        // CLT closed form for K_3: φ((b^(N,1)/√N)⁴) = 3 − (3/2)/N.
        let k3 = Graph::family("K:3").unwrap();
        let r = moment_b(&k3, 1024, 1, 4).unwrap();
        assert_eq!(r.normalized_exact().unwrap(), q(3, 1) - q(3, 2048));
        // K_2, n=2, m=2, N=4: 4·C(4,2)/16 = 3/2.
        let k2 = Graph::family("K:2").unwrap();
        let r = moment_b(&k2, 4, 2, 2).unwrap();
        assert_eq!(r.normalized_exact().unwrap(), q(3, 2));
    }

    #[test]
    fn huge_copy_counts_stay_exact_and_finite() {
        // N = 2^20: exercises binary exponentiation and the conversion of
        // astronomically large exact rationals to doubles.
        let k2 = Graph::family("K:2").unwrap();
        let n: u64 = 1 << 20;
        let r = moment_distance_k(&k2, n, 2, 2).unwrap();
        let expect = q((n as i64 - 1) * n as i64 / 2, 1);
        assert_eq!(r.raw.as_rational().unwrap(), &expect);
        let norm = r.normalized_exact().unwrap();
        assert_eq!(norm, q(n as i64 - 1, 2 * n as i64));
        let f = r.normalized;
        assert!(f.is_finite());
        assert!((f - 0.5).abs() < 1e-5 && (f - 0.5).abs() > 0.0);
    }

    #[test]
    fn odd_scale_half_normalization_is_real() {
        // K_3, k=1, m=3: raw = N·φ(A³) = 2N, normalized = 2N/N^{3/2} = 2/√N.
        let k3 = Graph::family("K:3").unwrap();
        let r = moment_distance_k(&k3, 16, 1, 3).unwrap();
        assert_eq!(r.raw.as_rational().unwrap(), &q(32, 1));
        assert_eq!(r.scale_half, 3);
        assert!(r.normalized_exact().is_none());
        assert!((r.normalized - 0.5).abs() < 1e-14);
    }
}
