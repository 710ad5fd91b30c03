//! Brute-force oracle: explicit matrices on the product vertex set.
//!
//! Everything in this module works directly on the `|V|^N`-dimensional
//! space, guarded by a size ceiling. It is deliberately definitional — sums
//! over subsets and arrangements of tensor placements, dense integer matrix
//! powers, a from-scratch cyclic Jacobi eigensolver — so that the fast
//! generating-function engine has something independent to be checked
//! against exactly.

use crate::graph::Graph;
use crate::matrix::IntSymMatrix;
use crate::scaled::ScaledValue;
use crate::Rational;
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive, Zero};

/// Default bound on the explicit dimension `|V|^N`; keeps oracle runs at
/// interactive speeds.
pub const DEFAULT_EXPLICIT_CEILING: u64 = 4096;

/// Convergence threshold for the Jacobi sweep: the off-diagonal Frobenius
/// norm must drop below this.
pub const JACOBI_TOL: f64 = 1e-12;

pub const JACOBI_MAX_SWEEPS: u32 = 100;

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum BruteError {
    #[error("explicit dimension {required} exceeds ceiling {ceiling}")]
    SizeCeilingExceeded { required: u128, ceiling: u64 },
    #[error("order n = {n} must satisfy 1 <= n <= N = {n_copies}")]
    BadOrder { n: u32, n_copies: u32 },
    #[error("matrix power overflows 64-bit entries (power {power})")]
    PowerOverflow { power: u32 },
    #[error("Jacobi sweep limit {sweeps} reached, off-diagonal residual {residual:e}")]
    NonConvergence { residual: f64, sweeps: u32 },
}

/// A vertex of `G^N`: one coordinate per factor copy.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProductVertex(pub Vec<u32>);

/// Rank of a product vertex in the mixed-radix order where the *first*
/// coordinate is most significant (matching the tensor-product convention
/// used by the placement builders).
pub fn rank(coords: &[u32], factor_size: u32) -> u64 {
    coords
        .iter()
        .fold(0u64, |acc, &c| acc * factor_size as u64 + c as u64)
}

pub fn unrank(mut r: u64, factor_size: u32, copies: u32) -> ProductVertex {
    let mut coords = vec![0u32; copies as usize];
    for i in (0..copies as usize).rev() {
        coords[i] = (r % factor_size as u64) as u32;
        r /= factor_size as u64;
    }
    ProductVertex(coords)
}

/// Distance in `G^N` is the sum of coordinatewise distances in `G`.
pub fn product_distance(g: &Graph, x: &[u32], y: &[u32]) -> u32 {
    assert_eq!(x.len(), y.len(), "coordinate arity mismatch");
    x.iter()
        .zip(y)
        .map(|(&a, &b)| g.distances().get(a, b))
        .sum()
}

fn explicit_dim(g: &Graph, n_copies: u32, ceiling: u64) -> Result<usize, BruteError> {
    let mut dim: u128 = 1;
    for _ in 0..n_copies {
        dim *= g.vertex_count() as u128;
        if dim > ceiling as u128 {
            return Err(BruteError::SizeCeilingExceeded {
                required: dim,
                ceiling,
            });
        }
    }
    Ok(dim as usize)
}

/// All coordinate vectors, indexed by rank.
fn coordinate_table(g: &Graph, n_copies: u32, dim: usize) -> Vec<Vec<u32>> {
    (0..dim as u64)
        .map(|r| unrank(r, g.vertex_count(), n_copies).0)
        .collect()
}

/// Adjacency matrix of the distance-k graph of `G^N`: a one exactly where
/// the product distance equals `k`.
pub fn distance_k_adjacency(
    g: &Graph,
    n_copies: u32,
    k: u32,
    ceiling: u64,
) -> Result<IntSymMatrix, BruteError> {
    let dim = explicit_dim(g, n_copies, ceiling)?;
    let coords = coordinate_table(g, n_copies, dim);
    Ok(IntSymMatrix::from_fn(dim, |x, y| {
        (product_distance(g, &coords[x], &coords[y]) == k) as i64
    }))
}

/// One tensor placement: entry `(x, y)` of the Kronecker product that puts
/// `letters[a[i]]` in slot `i` (entries given as dense rational factors).
/// Identity slots are marked by `usize::MAX`.
fn placement_entry(
    factors: &[Vec<Rational>],
    assignment: &[usize],
    v: usize,
    x: &[u32],
    y: &[u32],
) -> Option<Rational> {
    let mut acc = Rational::one();
    for (i, &a) in assignment.iter().enumerate() {
        let (xi, yi) = (x[i] as usize, y[i] as usize);
        if a == usize::MAX {
            if xi != yi {
                return None;
            }
        } else {
            let q = &factors[a][xi * v + yi];
            if q.is_zero() {
                return None;
            }
            acc *= q;
        }
    }
    Some(acc)
}

/// Sums the Kronecker placements of `letters` over all assignments to
/// distinct slots: `letters[l].1` copies of matrix `letters[l].0` are placed,
/// every slot holds at most one letter, the rest hold the identity.
fn placement_sum(
    g: &Graph,
    n_copies: u32,
    letters: &[(Vec<Rational>, u32)],
    ceiling: u64,
) -> Result<Vec<Rational>, BruteError> {
    let dim = explicit_dim(g, n_copies, ceiling)?;
    let v = g.vertex_count() as usize;
    let coords = coordinate_table(g, n_copies, dim);
    let factors: Vec<Vec<Rational>> = letters.iter().map(|(m, _)| m.clone()).collect();
    let counts: Vec<u32> = letters.iter().map(|&(_, c)| c).collect();
    let mut acc = vec![Rational::zero(); dim * dim];

    // Enumerate assignment vectors slot by slot (multiset permutations with
    // an implicit identity letter filling the rest).
    let mut assignment = vec![usize::MAX; n_copies as usize];
    let mut remaining = counts.clone();
    fn recurse(
        slot: usize,
        n_copies: usize,
        assignment: &mut Vec<usize>,
        remaining: &mut Vec<u32>,
        emit: &mut impl FnMut(&[usize]),
    ) {
        let left: u32 = remaining.iter().sum();
        if left == 0 {
            emit(assignment);
            return;
        }
        if slot >= n_copies || left > (n_copies - slot) as u32 {
            return;
        }
        // Leave this slot as identity.
        recurse(slot + 1, n_copies, assignment, remaining, emit);
        for l in 0..remaining.len() {
            if remaining[l] == 0 {
                continue;
            }
            remaining[l] -= 1;
            assignment[slot] = l;
            recurse(slot + 1, n_copies, assignment, remaining, emit);
            assignment[slot] = usize::MAX;
            remaining[l] += 1;
        }
    }
    recurse(
        0,
        n_copies as usize,
        &mut assignment,
        &mut remaining,
        &mut |a: &[usize]| {
            for x in 0..dim {
                for y in 0..dim {
                    if let Some(q) = placement_entry(&factors, a, v, &coords[x], &coords[y]) {
                        acc[x * dim + y] += q;
                    }
                }
            }
        },
    );
    Ok(acc)
}

fn dense_rational_adjacency(m: &IntSymMatrix) -> Vec<Rational> {
    m.raw()
        .iter()
        .map(|&e| Rational::from_integer(e.into()))
        .collect()
}

fn to_int_matrix(dim: usize, data: Vec<Rational>) -> IntSymMatrix {
    IntSymMatrix::from_fn(dim, |x, y| {
        let q = &data[x * dim + y];
        debug_assert!(q.is_integer());
        q.to_integer().to_i64().expect("entry fits i64")
    })
}

/// The elementary sum of order `n`: the sum over all `n`-element slot
/// subsets of the placements of the adjacency matrix. Requires
/// `1 <= n <= N`.
pub fn elementary_sum_matrix(
    g: &Graph,
    n_copies: u32,
    n: u32,
    ceiling: u64,
) -> Result<IntSymMatrix, BruteError> {
    if n < 1 || n > n_copies {
        return Err(BruteError::BadOrder { n, n_copies });
    }
    let a = dense_rational_adjacency(&g.adjacency());
    let dim = explicit_dim(g, n_copies, ceiling)?;
    let data = placement_sum(g, n_copies, &[(a, n)], ceiling)?;
    Ok(to_int_matrix(dim, data))
}

/// The partition term for multiplicities `counts` (`counts[h-1]` copies of
/// the distance-h matrix), summed over all arrangements into distinct slots.
/// Parts beyond the diameter or more parts than slots give the zero matrix.
pub fn partition_term_matrix(
    g: &Graph,
    n_copies: u32,
    counts: &[u32],
    ceiling: u64,
) -> Result<IntSymMatrix, BruteError> {
    let dim = explicit_dim(g, n_copies, ceiling)?;
    let letters: Vec<(Vec<Rational>, u32)> = counts
        .iter()
        .enumerate()
        .filter(|&(_, &j)| j > 0)
        .map(|(i, &j)| {
            let h = i as u32 + 1;
            (dense_rational_adjacency(&g.distance_k_matrix(h)), j)
        })
        .collect();
    let total: u32 = letters.iter().map(|&(_, j)| j).sum();
    if total > n_copies {
        return Ok(IntSymMatrix::zeros(dim));
    }
    let data = placement_sum(g, n_copies, &letters, ceiling)?;
    Ok(to_int_matrix(dim, data))
}

/// Dense rational matrix carrying a half-power of the mean degree: the
/// value is `q * c^(e/2)` entrywise. Used for exact identities between
/// mean-degree-normalized placement sums.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ScaledMat {
    dim: usize,
    e: u8,
    q: Vec<Rational>,
}

impl ScaledMat {
    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn half_power(&self) -> u8 {
        self.e
    }

    pub fn entry(&self, x: usize, y: usize) -> ScaledValue {
        ScaledValue::new(self.q[x * self.dim + y].clone(), self.e)
    }

    pub fn add(&self, other: &ScaledMat) -> Option<ScaledMat> {
        if self.dim != other.dim {
            return None;
        }
        let (a, b) = (self, other);
        // A matrix of zeros can absorb the other side's half-power.
        let all_zero = |m: &ScaledMat| m.q.iter().all(Zero::is_zero);
        if a.e != b.e {
            if all_zero(a) {
                return Some(b.clone());
            }
            if all_zero(b) {
                return Some(a.clone());
            }
            return None;
        }
        Some(ScaledMat {
            dim: a.dim,
            e: a.e,
            q: a.q.iter().zip(&b.q).map(|(x, y)| x + y).collect(),
        })
    }

    pub fn scale(&self, s: &Rational) -> ScaledMat {
        ScaledMat {
            dim: self.dim,
            e: self.e,
            q: self.q.iter().map(|x| x * s).collect(),
        }
    }

    /// Matrix product, folding whole powers of `c` into the rational part.
    pub fn matmul(&self, other: &ScaledMat, c: &Rational) -> ScaledMat {
        assert_eq!(self.dim, other.dim, "dimension mismatch");
        let dim = self.dim;
        let mut q = vec![Rational::zero(); dim * dim];
        for x in 0..dim {
            for l in 0..dim {
                let a = &self.q[x * dim + l];
                if a.is_zero() {
                    continue;
                }
                for y in 0..dim {
                    let b = &other.q[l * dim + y];
                    if !b.is_zero() {
                        q[x * dim + y] += a * b;
                    }
                }
            }
        }
        let e = self.e + other.e;
        if e == 2 {
            for entry in &mut q {
                *entry *= c;
            }
        }
        ScaledMat { dim, e: e % 2, q }
    }
}

/// `Y = A^2 / c - I` on the factor graph: the centered square of the
/// mean-degree-normalized adjacency.
fn centered_square(g: &Graph) -> Vec<Rational> {
    let v = g.vertex_count() as usize;
    let a = g.adjacency();
    let c = g.mean_degree();
    let mut out = vec![Rational::zero(); v * v];
    for x in 0..v {
        for y in 0..v {
            let mut s: i64 = 0;
            for l in 0..v {
                s += a.get(x, l) * a.get(l, y);
            }
            let mut q = Rational::from_integer(s.into()) / &c;
            if x == y {
                q -= Rational::one();
            }
            out[x * v + y] = q;
        }
    }
    out
}

/// Elementary sum of the mean-degree-normalized adjacency `b = A/sqrt(c)`,
/// as an exact scaled matrix (`e = n mod 2`). Order 0 is the empty
/// placement, i.e. the identity.
pub fn scaled_elementary_matrix(
    g: &Graph,
    n_copies: u32,
    n: u32,
    ceiling: u64,
) -> Result<ScaledMat, BruteError> {
    if n > n_copies {
        return Err(BruteError::BadOrder { n, n_copies });
    }
    let dim = explicit_dim(g, n_copies, ceiling)?;
    let a = dense_rational_adjacency(&g.adjacency());
    let q = placement_sum(g, n_copies, &[(a, n)], ceiling)?;
    Ok(fold_half_powers(dim, q, n, &g.mean_degree()))
}

/// The correction sum: `b` in `n - 1` slots and `Y = b^2 - 1` in one slot,
/// summed over all arrangements into distinct slots (`e = (n-1) mod 2`).
pub fn correction_sum_matrix(
    g: &Graph,
    n_copies: u32,
    n: u32,
    ceiling: u64,
) -> Result<ScaledMat, BruteError> {
    if n < 1 || n > n_copies {
        return Err(BruteError::BadOrder { n, n_copies });
    }
    let dim = explicit_dim(g, n_copies, ceiling)?;
    let a = dense_rational_adjacency(&g.adjacency());
    let y = centered_square(g);
    let letters: Vec<(Vec<Rational>, u32)> = if n == 1 {
        vec![(y, 1)]
    } else {
        vec![(a, n - 1), (y, 1)]
    };
    let q = placement_sum(g, n_copies, &letters, ceiling)?;
    Ok(fold_half_powers(dim, q, n - 1, &g.mean_degree()))
}

/// Divides by `c^(w/2)`: whole part into the rationals, parity into `e`.
fn fold_half_powers(dim: usize, mut q: Vec<Rational>, w: u32, c: &Rational) -> ScaledMat {
    let whole = (w + 1) / 2; // ceil(w/2); for odd w one sqrt(c) remains
    if whole > 0 {
        let mut cw = Rational::one();
        for _ in 0..whole {
            cw *= c;
        }
        for entry in &mut q {
            *entry /= &cw;
        }
    }
    // Odd w: q * c^(-(w+1)/2) * sqrt(c) = q * c^(-w/2), so dividing by the
    // rounded-up whole power and carrying one sqrt(c) in `e` is exact.
    let e = (w % 2) as u8;
    ScaledMat { dim, e, q }
}

/// Exact normalized trace of `M^power`: `Tr(M^power) / dim`.
pub fn trace_moment(m: &IntSymMatrix, power: u32) -> Result<Rational, BruteError> {
    Ok(trace_moments(m, power)?.pop().expect("nonempty"))
}

/// Normalized traces of `M^j` for `j = 0..=power`, sharing the matrix
/// powers: only `ceil(power/2) - 1` dense multiplications are needed, since
/// `Tr(M^{a+b})` pairs the entries of `M^a` and `M^b` for symmetric `M`.
pub fn trace_moments(m: &IntSymMatrix, power: u32) -> Result<Vec<Rational>, BruteError> {
    let dim = m.dim();
    let half = power.div_ceil(2).max(1) as usize;
    // powers[j] = entries of M^{j+1}
    let mut powers: Vec<Vec<i64>> = vec![m.raw().to_vec()];
    for j in 1..half {
        let next = int_matmul(dim, &powers[j - 1], m.raw()).ok_or(BruteError::PowerOverflow {
            power: j as u32 + 1,
        })?;
        powers.push(next);
    }
    let denom = BigInt::from(dim);
    let mut out = Vec::with_capacity(power as usize + 1);
    for j in 0..=power {
        let tr: BigInt = match j {
            0 => BigInt::from(dim),
            _ => {
                let a = ((j as usize) / 2).max(1);
                let b = j as usize - a;
                if b == 0 {
                    let p = &powers[a - 1];
                    (0..dim).map(|i| BigInt::from(p[i * dim + i])).sum()
                } else {
                    let pa = &powers[a - 1];
                    let pb = &powers[b - 1];
                    let mut acc = BigInt::zero();
                    for x in 0..dim {
                        for y in 0..dim {
                            // M^b symmetric, so (M^b)_{yx} = (M^b)_{xy}.
                            acc += BigInt::from(pa[x * dim + y]) * BigInt::from(pb[x * dim + y]);
                        }
                    }
                    acc
                }
            }
        };
        out.push(Rational::new(tr, denom.clone()));
    }
    Ok(out)
}

fn int_matmul(dim: usize, a: &[i64], b: &[i64]) -> Option<Vec<i64>> {
    let mut out = vec![0i64; dim * dim];
    for x in 0..dim {
        for l in 0..dim {
            let av = a[x * dim + l];
            if av == 0 {
                continue;
            }
            let av = av as i128;
            for y in 0..dim {
                let add = av * b[l * dim + y] as i128;
                let cur = out[x * dim + y] as i128 + add;
                out[x * dim + y] = i64::try_from(cur).ok()?;
            }
        }
    }
    Some(out)
}

/// Eigenvalues of a symmetric integer matrix by the cyclic Jacobi method,
/// ascending. Sweeps rotate every off-diagonal pair; convergence is reached
/// when the off-diagonal Frobenius norm drops below `tol`.
pub fn jacobi_eigenvalues(
    m: &IntSymMatrix,
    tol: f64,
    max_sweeps: u32,
) -> Result<Vec<f64>, BruteError> {
    let n = m.dim();
    let mut a = m.to_f64_vec();
    let off = |a: &[f64]| -> f64 {
        let mut s = 0.0;
        for p in 0..n {
            for q in 0..n {
                if p != q {
                    s += a[p * n + q] * a[p * n + q];
                }
            }
        }
        s.sqrt()
    };
    let mut residual = off(&a);
    let mut sweeps = 0;
    while residual > tol {
        if sweeps == max_sweeps {
            return Err(BruteError::NonConvergence { residual, sweeps });
        }
        for p in 0..n {
            for q in p + 1..n {
                let apq = a[p * n + q];
                if apq == 0.0 {
                    continue;
                }
                let theta = (a[q * n + q] - a[p * n + p]) / (2.0 * apq);
                let t = {
                    let s = if theta >= 0.0 { 1.0 } else { -1.0 };
                    s / (theta.abs() + (theta * theta + 1.0).sqrt())
                };
                let c = 1.0 / (t * t + 1.0).sqrt();
                let s = t * c;
                // A <- J^T A J with the rotation in the (p, q) plane.
                for i in 0..n {
                    let aip = a[i * n + p];
                    let aiq = a[i * n + q];
                    a[i * n + p] = c * aip - s * aiq;
                    a[i * n + q] = s * aip + c * aiq;
                }
                for j in 0..n {
                    let apj = a[p * n + j];
                    let aqj = a[q * n + j];
                    a[p * n + j] = c * apj - s * aqj;
                    a[q * n + j] = s * apj + c * aqj;
                }
            }
        }
        sweeps += 1;
        residual = off(&a);
    }
    let mut eigs: Vec<f64> = (0..n).map(|i| a[i * n + i]).collect();
    eigs.sort_unstable_by(f64::total_cmp);
    Ok(eigs)
}

pub fn jacobi_eigenvalues_default(m: &IntSymMatrix) -> Result<Vec<f64>, BruteError> {
    jacobi_eigenvalues(m, JACOBI_TOL, JACOBI_MAX_SWEEPS)
}

/// Histogram of `values / scale` over `bins` equal bins spanning
/// `[lo, hi]`. A value sitting exactly on an interior edge counts in the
/// bin to its right; `hi` itself counts in the last bin; everything outside
/// the range lands in `below`/`above`.
#[derive(Debug, Clone, PartialEq, serde::Serialize)]
pub struct Histogram {
    pub edges: Vec<f64>,
    pub counts: Vec<u64>,
    pub below: u64,
    pub above: u64,
    pub total: u64,
}

pub fn spectral_histogram(values: &[f64], scale: f64, bins: u32, lo: f64, hi: f64) -> Histogram {
    assert!(bins > 0 && lo < hi, "need bins > 0 and lo < hi");
    assert!(scale > 0.0, "scale must be positive");
    let width = (hi - lo) / bins as f64;
    let edges: Vec<f64> = (0..=bins).map(|i| lo + i as f64 * width).collect();
    let mut counts = vec![0u64; bins as usize];
    let mut below = 0;
    let mut above = 0;
    for &v in values {
        let x = v / scale;
        if x < lo {
            below += 1;
        } else if x > hi {
            above += 1;
        } else {
            let idx = (((x - lo) / width) as usize).min(bins as usize - 1);
            counts[idx] += 1;
        }
    }
    Histogram {
        edges,
        counts,
        below,
        above,
        total: values.len() as u64,
    }
}
