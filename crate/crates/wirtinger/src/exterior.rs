//! Exterior-algebra core: skew-symmetric matrices, Pfaffians, canonical
//! forms, and metric-aware orthonormalization.
//!
//! The top of the Kähler-angle pipeline is linear algebra over a single
//! oriented subspace: orthonormalize a spanning set against the ambient
//! metric, pull the Kähler form back to a skew matrix [`SkewMatrix`], and
//! reduce it — either all the way to a scalar with [`pfaffian`], or to its
//! canonical block form with [`skew_canonical`] when the individual
//! principal cosines are wanted.
//!
//! Two routes exist to the same scalar on purpose: [`pfaffian`] is the
//! production evaluator, while [`wedge_power_oracle`] recomputes the value
//! as an explicit perfect-matching sum with independently computed
//! permutation signs. Tests hold the two within tolerance of each other;
//! neither shares code with the other.

use nalgebra::{DMatrix, DVector};

use crate::error::{Error, Result};
use crate::tolerances::Tolerances;

/// Largest dimension accepted by [`wedge_power_oracle`]; the matching sum
/// has (n−1)!! terms and is meant as an oracle, not a production path.
pub const ORACLE_LIMIT: usize = 12;

/// Dimension at which [`pfaffian`] switches from direct recursive expansion
/// to Householder tridiagonalization.
const PFAFFIAN_DIRECT_LIMIT: usize = 8;

/// A real skew-symmetric matrix of even dimension.
///
/// Only the strict upper triangle is stored, so `Ω_ij = −Ω_ji` holds exactly
/// by construction rather than to rounding error; consumers never need to
/// symmetrize. Dense inputs are antisymmetrized on entry by averaging.
#[derive(Debug, Clone, PartialEq)]
pub struct SkewMatrix {
    n: usize,
    /// Strict upper triangle in row-major order: entry `(i, j)` with `i < j`
    /// lives at `i(2n − i − 1)/2 + (j − i − 1)`.
    upper: Vec<f64>,
}

impl SkewMatrix {
    /// Builds an `n × n` skew matrix from a generator giving the strict
    /// upper-triangle entries `f(i, j)` for `i < j`.
    ///
    /// Fails with [`Error::OddDimension`] for odd `n` and
    /// [`Error::NonFinite`] if the generator produces NaN or infinity.
    pub fn from_fn<F: FnMut(usize, usize) -> f64>(n: usize, mut f: F) -> Result<Self> {
        if n % 2 != 0 {
            return Err(Error::OddDimension { n });
        }
        let mut upper = Vec::with_capacity(n * (n - 1) / 2);
        for i in 0..n {
            for j in (i + 1)..n {
                let value = f(i, j);
                if !value.is_finite() {
                    return Err(Error::NonFinite { row: i, col: j });
                }
                upper.push(value);
            }
        }
        Ok(SkewMatrix { n, upper })
    }

    /// Builds a skew matrix from a dense square matrix, antisymmetrizing by
    /// `(a_ij − a_ji)/2`. A matrix that is already skew passes through with
    /// its entries unchanged.
    pub fn from_dense(m: &DMatrix<f64>) -> Result<Self> {
        if m.nrows() != m.ncols() {
            return Err(Error::DimensionMismatch {
                expected: m.nrows(),
                got: m.ncols(),
            });
        }
        Self::from_fn(m.nrows(), |i, j| 0.5 * (m[(i, j)] - m[(j, i)]))
    }

    /// The zero form in dimension `n`.
    pub fn zeros(n: usize) -> Result<Self> {
        Self::from_fn(n, |_, _| 0.0)
    }

    /// Canonical block-diagonal skew matrix with 2×2 blocks
    /// `[[0, λ_k], [−λ_k, 0]]` down the diagonal.
    pub fn block_diagonal(lambdas: &[f64]) -> Result<Self> {
        Self::from_fn(2 * lambdas.len(), |i, j| {
            if j == i + 1 && i % 2 == 0 {
                lambdas[i / 2]
            } else {
                0.0
            }
        })
    }

    /// Matrix dimension `n` (always even).
    pub fn size(&self) -> usize {
        self.n
    }

    /// Half dimension `m = n / 2`.
    pub fn half(&self) -> usize {
        self.n / 2
    }

    /// Entry `Ω_ij`, with the sign resolved from packed storage.
    pub fn get(&self, i: usize, j: usize) -> f64 {
        debug_assert!(i < self.n && j < self.n);
        use std::cmp::Ordering;
        match i.cmp(&j) {
            Ordering::Less => self.upper[self.index(i, j)],
            Ordering::Equal => 0.0,
            Ordering::Greater => -self.upper[self.index(j, i)],
        }
    }

    fn index(&self, i: usize, j: usize) -> usize {
        i * (2 * self.n - i - 1) / 2 + (j - i - 1)
    }

    /// Dense copy, exactly skew by storage.
    pub fn to_dense(&self) -> DMatrix<f64> {
        DMatrix::from_fn(self.n, self.n, |i, j| self.get(i, j))
    }

    /// Largest absolute entry.
    pub fn max_norm(&self) -> f64 {
        self.upper.iter().fold(0.0, |acc, x| acc.max(x.abs()))
    }

    /// Matrix-vector product `Ω v`.
    pub fn apply(&self, v: &DVector<f64>) -> Result<DVector<f64>> {
        if v.len() != self.n {
            return Err(Error::DimensionMismatch {
                expected: self.n,
                got: v.len(),
            });
        }
        let mut out = DVector::zeros(self.n);
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                let w = self.upper[self.index(i, j)];
                out[i] += w * v[j];
                out[j] -= w * v[i];
            }
        }
        Ok(out)
    }
}

/// Canonical form of a skew matrix: an orientation-preserving orthogonal
/// `rotation` `R` with `Rᵀ Ω R = blockdiag([[0, λ_k], [−λ_k, 0]])`.
///
/// The `lambdas` are ordered by descending absolute value; at most the last
/// one is negative (the sign absorbed to keep `det R = +1`). For a Kähler
/// form pulled back to a subspace these are the principal Kähler cosines,
/// and their product is the Pfaffian.
#[derive(Debug, Clone)]
pub struct CanonicalForm {
    /// Orthogonal matrix with determinant `+1`.
    pub rotation: DMatrix<f64>,
    /// Block coefficients `λ_1, …, λ_m`, `|λ_1| ≥ … ≥ |λ_m|`.
    pub lambdas: Vec<f64>,
}

/// Metric-aware modified Gram–Schmidt with re-orthogonalization.
///
/// Produces a frame that is orthonormal for the inner product `⟨u, v⟩ = uᵀ G v`
/// and spans the same ordered subspace as `vectors`, preserving orientation:
/// each output vector is the previous ones' orthogonal complement component
/// of the corresponding input, scaled positively. One full re-orthogonalization
/// pass keeps Gram residuals at the `1e-12` level even for nearly dependent
/// inputs that survive the rank check.
///
/// Fails with [`Error::RankDeficient`] when the input Gram determinant falls
/// below `rank` (relative to the product of its diagonal), and with
/// [`Error::BadMetric`] if `metric` is not symmetric positive definite.
pub fn orthonormalize(
    vectors: &[DVector<f64>],
    metric: &DMatrix<f64>,
) -> Result<Vec<DVector<f64>>> {
    let tol = Tolerances::DEFAULT;
    if vectors.is_empty() {
        return Err(Error::DimensionMismatch {
            expected: 1,
            got: 0,
        });
    }
    let dim = vectors[0].len();
    for v in vectors {
        if v.len() != dim {
            return Err(Error::DimensionMismatch {
                expected: dim,
                got: v.len(),
            });
        }
    }
    check_spd_metric(metric, dim)?;

    // Relative rank test on the input Gram matrix: det(Γ) against the product
    // of its diagonal (the Hadamard bound, i.e. the determinant of the same
    // vectors if they were orthogonal).
    let k = vectors.len();
    let gram = DMatrix::from_fn(k, k, |i, j| (metric * &vectors[j]).dot(&vectors[i]));
    let mut scale = 1.0_f64;
    for i in 0..k {
        let d = gram[(i, i)];
        if d <= 0.0 {
            return Err(Error::RankDeficient {
                det: 0.0,
                threshold: tol.rank,
            });
        }
        scale *= d;
    }
    let det = gram.determinant();
    let threshold = tol.rank * scale;
    if det <= threshold {
        return Err(Error::RankDeficient { det, threshold });
    }

    let mut frame: Vec<DVector<f64>> = Vec::with_capacity(k);
    for x in vectors {
        let mut v = x.clone();
        // Two projection passes: classical "twice is enough" re-orthogonalization.
        for _ in 0..2 {
            for e in &frame {
                let coeff = (metric * &v).dot(e);
                v -= e * coeff;
            }
        }
        let norm2 = (metric * &v).dot(&v);
        if norm2 <= 0.0 {
            return Err(Error::RankDeficient {
                det,
                threshold: tol.rank,
            });
        }
        v /= norm2.sqrt();
        frame.push(v);
    }
    Ok(frame)
}

/// Verifies that `metric` is a `dim × dim` symmetric positive definite matrix.
pub(crate) fn check_spd_metric(metric: &DMatrix<f64>, dim: usize) -> Result<()> {
    let tol = Tolerances::DEFAULT;
    if metric.nrows() != dim || metric.ncols() != dim {
        return Err(Error::DimensionMismatch {
            expected: dim,
            got: metric.nrows().max(metric.ncols()),
        });
    }
    for i in 0..dim {
        for j in 0..dim {
            if !metric[(i, j)].is_finite() {
                return Err(Error::NonFinite { row: i, col: j });
            }
        }
    }
    let asym = (metric - metric.transpose()).abs().max();
    let scale = metric.abs().max().max(1.0);
    if asym > tol.algebraic * scale {
        return Err(Error::BadMetric {
            reason: format!("asymmetry {asym:.3e} exceeds {:.3e}", tol.algebraic * scale),
        });
    }
    let eigen = nalgebra::SymmetricEigen::try_new(metric.clone(), f64::EPSILON, 0)
        .ok_or(Error::ConvergenceFailure)?;
    let max = eigen.eigenvalues.max();
    let min = eigen.eigenvalues.min();
    if !(max > 0.0) || min <= tol.spectrum * max {
        return Err(Error::BadMetric {
            reason: format!("eigenvalue range [{min:.3e}, {max:.3e}] is not positive definite"),
        });
    }
    Ok(())
}

/// Pfaffian of a skew-symmetric matrix.
///
/// For `n ≤ 8` this is direct recursive expansion along the first row; above
/// that, Householder skew-tridiagonalization with the reflector count tracked
/// so the similarity's determinant sign can be undone: for tridiagonal skew
/// `T`, `Pf(T) = b_1 b_3 b_5 ⋯` over the odd superdiagonal entries, and
/// `Pf(Ω) = det(Q) · Pf(QᵀΩQ)`.
///
/// `Pf(Ω)² = det(Ω)`, and for the canonical block form the Pfaffian is the
/// product of the block coefficients.
pub fn pfaffian(omega: &SkewMatrix) -> f64 {
    let n = omega.size();
    if n == 0 {
        return 1.0;
    }
    if n <= PFAFFIAN_DIRECT_LIMIT {
        let mut active: Vec<usize> = (0..n).collect();
        pfaffian_expand(omega, &mut active)
    } else {
        pfaffian_tridiagonal(omega.to_dense())
    }
}

/// Recursive first-row expansion: `Pf(Ω) = Σ_{j} (−1)^j Ω_{i₀ i_j} Pf(minor)`
/// over the remaining active indices.
fn pfaffian_expand(omega: &SkewMatrix, active: &mut Vec<usize>) -> f64 {
    if active.is_empty() {
        return 1.0;
    }
    let i0 = active[0];
    let mut total = 0.0;
    let mut sign = 1.0;
    for pos in 1..active.len() {
        let j = active[pos];
        let weight = omega.get(i0, j);
        if weight != 0.0 {
            let mut minor: Vec<usize> = active
                .iter()
                .copied()
                .filter(|&idx| idx != i0 && idx != j)
                .collect();
            total += sign * weight * pfaffian_expand(omega, &mut minor);
        }
        sign = -sign;
    }
    total
}

/// Householder reduction to skew-tridiagonal form with sign tracking.
fn pfaffian_tridiagonal(mut a: DMatrix<f64>) -> f64 {
    let n = a.nrows();
    let mut sign = 1.0_f64;
    for k in 0..(n - 2) {
        // Reflect column k below the subdiagonal onto ±e_{k+1}.
        let tail = a.view((k + 1, k), (n - k - 1, 1)).into_owned();
        let norm = tail.norm();
        if norm == 0.0 {
            continue;
        }
        let mut v = tail;
        // Choose the sign that avoids cancellation in v = x ∓ |x| e₁.
        let alpha = if v[0] >= 0.0 { -norm } else { norm };
        v[0] -= alpha;
        let vnorm = v.norm();
        if vnorm <= f64::EPSILON * norm {
            continue;
        }
        v /= vnorm;
        // Apply P = I − 2vvᵀ from both sides on the trailing block; each
        // reflector contributes det = −1 to the accumulated similarity.
        let rows = n - k - 1;
        {
            let mut block = a.view_mut((k + 1, 0), (rows, n));
            let correction = &v * (v.transpose() * &block * 2.0);
            block -= correction;
        }
        {
            let mut block = a.view_mut((0, k + 1), (n, rows));
            let correction = (&block * &v * 2.0) * v.transpose();
            block -= correction;
        }
        sign = -sign;
    }
    let mut pf = sign;
    let mut i = 0;
    while i + 1 < n {
        pf *= a[(i, i + 1)];
        i += 2;
    }
    pf
}

/// Orthogonal reduction of a skew matrix to canonical 2×2 block form.
///
/// Works through the symmetric positive semidefinite square `S = ΩᵀΩ`: each
/// eigenvalue `μ = λ²` of `S` has a two-dimensional invariant subspace from
/// which an orthonormal pair `(u, v := −Ωu/λ)` is drawn; pairs are assembled
/// in descending `|λ|` order, the kernel is padded with zero blocks, and a
/// possible orientation defect is absorbed by negating the final pair's
/// second column (flipping the sign of the smallest-magnitude `λ`). The
/// eigensolver's rotation ambiguity inside clustered eigenspaces is harmless
/// here: the pairing map commutes with `Ω`, so any orthonormal choice of `u`
/// reproduces the block structure to rounding error.
pub fn skew_canonical(omega: &SkewMatrix) -> Result<CanonicalForm> {
    let tol = Tolerances::DEFAULT;
    let n = omega.size();
    if n == 0 {
        return Ok(CanonicalForm {
            rotation: DMatrix::identity(0, 0),
            lambdas: Vec::new(),
        });
    }
    let dense = omega.to_dense();
    let square = dense.transpose() * &dense;
    let eigen = nalgebra::SymmetricEigen::try_new(square, f64::EPSILON, 0)
        .ok_or(Error::ConvergenceFailure)?;

    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&a, &b| {
        eigen.eigenvalues[b]
            .partial_cmp(&eigen.eigenvalues[a])
            .expect("symmetric eigenvalues are finite")
    });

    let lambda_floor = tol.rank * (1.0 + omega.max_norm());
    let mut chosen: Vec<DVector<f64>> = Vec::with_capacity(n);
    let mut pairs: Vec<(f64, DVector<f64>, DVector<f64>)> = Vec::with_capacity(n / 2);
    let mut kernel: Vec<DVector<f64>> = Vec::new();

    for &idx in &order {
        let direction = eigen.eigenvectors.column(idx).into_owned();
        let Some(u) = complement_component(direction, &chosen) else {
            // This eigenvector lies in the span already consumed by an
            // earlier pair (it is the partner direction); skip it.
            continue;
        };
        let image = omega.apply(&u)?;
        let lam = image.norm();
        if lam <= lambda_floor {
            chosen.push(u.clone());
            kernel.push(u);
            continue;
        }
        let v = complement_component(-image / lam, &chosen)
            .unwrap_or_else(|| -omega.apply(&u).expect("dimension checked") / lam);
        pairs.push((lam, u.clone(), v.clone()));
        chosen.push(u);
        chosen.push(v);
    }

    if kernel.len() % 2 != 0 {
        // Cannot happen for an exactly skew matrix of even dimension; guard
        // against a silently wrong pairing if the eigensolver misbehaves.
        return Err(Error::ConvergenceFailure);
    }
    let mut kernel_iter = kernel.into_iter();
    while let (Some(u), Some(v)) = (kernel_iter.next(), kernel_iter.next()) {
        pairs.push((0.0, u, v));
    }

    // Descending |λ|; the assembly order already provides it, but make the
    // contract explicit. All λ are still non-negative here, so the tie rule
    // (non-negative before negative) cannot be violated by a stable sort.
    pairs.sort_by(|a, b| {
        b.0.abs()
            .partial_cmp(&a.0.abs())
            .expect("lambdas are finite")
    });

    let mut rotation = DMatrix::zeros(n, n);
    let mut lambdas = Vec::with_capacity(n / 2);
    for (block, (lam, u, v)) in pairs.iter().enumerate() {
        rotation.set_column(2 * block, u);
        rotation.set_column(2 * block + 1, v);
        lambdas.push(*lam);
    }

    if rotation.determinant() < 0.0 {
        // Flip the last block's second column: λ_m → −λ_m, det → +1. For a
        // zero block this changes nothing but the column sign.
        let m = n / 2;
        let flipped = -rotation.column(n - 1).into_owned();
        rotation.set_column(n - 1, &flipped);
        if lambdas[m - 1] != 0.0 {
            lambdas[m - 1] = -lambdas[m - 1];
        }
    }

    Ok(CanonicalForm { rotation, lambdas })
}

/// Component of `x` orthogonal to the orthonormal set `basis`, normalized;
/// `None` if the residual is too short to trust its direction.
fn complement_component(x: DVector<f64>, basis: &[DVector<f64>]) -> Option<DVector<f64>> {
    let mut r = x;
    for _ in 0..2 {
        for e in basis {
            let coeff = r.dot(e);
            r -= e * coeff;
        }
    }
    let norm = r.norm();
    // The input is a unit vector; a residual below 1/2 means it mostly lived
    // in the existing span and its complement direction is unreliable.
    if norm < 0.5 {
        None
    } else {
        Some(r / norm)
    }
}

/// Independent combinatorial oracle for the Pfaffian: the perfect-matching
/// sum `Σ_M sgn(M) Π_{(i,j) ∈ M} Ω_ij`, with each matching's sign computed
/// from scratch as the inversion parity of its flattened index sequence.
///
/// Exponential on purpose — `(n−1)!!` terms — and refuses dimensions above
/// [`ORACLE_LIMIT`] with [`Error::TooLarge`]. Kept free of any code shared
/// with [`pfaffian`] so the two can check each other.
pub fn wedge_power_oracle(omega: &SkewMatrix) -> Result<f64> {
    let n = omega.size();
    if n > ORACLE_LIMIT {
        return Err(Error::TooLarge {
            n,
            limit: ORACLE_LIMIT,
        });
    }
    let mut total = 0.0;
    let free: Vec<usize> = (0..n).collect();
    let mut sequence = Vec::with_capacity(n);
    matching_sum(omega, &free, &mut sequence, 1.0, &mut total);
    Ok(total)
}

fn matching_sum(
    omega: &SkewMatrix,
    free: &[usize],
    sequence: &mut Vec<usize>,
    product: f64,
    total: &mut f64,
) {
    if free.is_empty() {
        *total += inversion_sign(sequence) * product;
        return;
    }
    let i = free[0];
    for pos in 1..free.len() {
        let j = free[pos];
        let rest: Vec<usize> = free[1..].iter().copied().filter(|&idx| idx != j).collect();
        sequence.push(i);
        sequence.push(j);
        matching_sum(omega, &rest, sequence, product * omega.get(i, j), total);
        sequence.pop();
        sequence.pop();
    }
}

/// Parity of the permutation written as a sequence, by counting inversions.
fn inversion_sign(sequence: &[usize]) -> f64 {
    let mut inversions = 0usize;
    for a in 0..sequence.len() {
        for b in (a + 1)..sequence.len() {
            if sequence[a] > sequence[b] {
                inversions += 1;
            }
        }
    }
    if inversions % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn skew_from_entries(n: usize, f: impl FnMut(usize, usize) -> f64) -> SkewMatrix {
        SkewMatrix::from_fn(n, f).expect("valid test matrix")
    }

    /// Frozen integer examples, evaluated independently with exact rational
    /// arithmetic over all perfect matchings.
    #[test]
    fn pfaffian_frozen_values() {
        let two = skew_from_entries(2, |_, _| 7.5);
        assert_eq!(pfaffian(&two), 7.5);

        // Upper entries 1..=6 in row-major order.
        let mut counter = 0.0;
        let four = skew_from_entries(4, |_, _| {
            counter += 1.0;
            counter
        });
        assert_eq!(pfaffian(&four), 8.0);

        let six = skew_from_entries(6, |i, j| (((i + 1) * (j + 1)) % 7) as f64 - 3.0);
        assert!((pfaffian(&six) - (-5.0)).abs() < 1e-12);

        let eight = skew_from_entries(8, |i, j| ((3 * i + 5 * j) % 11) as f64 - 5.0);
        assert!((pfaffian(&eight) - (-120.0)).abs() < 1e-10);

        // Dimension 10 exercises the tridiagonalization path; the reference
        // value is exact (and its square matches the determinant).
        let ten = skew_from_entries(10, |i, j| ((2 * i + 7 * j + 3) % 13) as f64 - 6.0);
        let pf = pfaffian(&ten);
        assert!(
            (pf - (-51694.0)).abs() < 1e-7 * 51694.0,
            "pfaffian {pf} drifted from frozen -51694"
        );
    }

    #[test]
    fn pfaffian_of_blocks_is_product() {
        let lambdas = [2.0, 3.0, -0.5];
        let omega = SkewMatrix::block_diagonal(&lambdas).unwrap();
        assert!((pfaffian(&omega) - (-3.0)).abs() < 1e-14);
    }

    #[test]
    fn pfaffian_zero_row_vanishes() {
        let omega = skew_from_entries(6, |i, j| if i == 2 || j == 2 { 0.0 } else { 1.3 });
        assert_eq!(wedge_power_oracle(&omega).unwrap(), 0.0);
        assert!(pfaffian(&omega).abs() < 1e-14);
    }

    #[test]
    fn oracle_matches_frozen_values() {
        let six = skew_from_entries(6, |i, j| (((i + 1) * (j + 1)) % 7) as f64 - 3.0);
        assert!((wedge_power_oracle(&six).unwrap() - (-5.0)).abs() < 1e-12);
        let ten = skew_from_entries(10, |i, j| ((2 * i + 7 * j + 3) % 13) as f64 - 6.0);
        assert!((wedge_power_oracle(&ten).unwrap() + 51694.0).abs() < 1e-8 * 51694.0);
    }

    #[test]
    fn oracle_refuses_large_dimensions() {
        let omega = SkewMatrix::zeros(14).unwrap();
        match wedge_power_oracle(&omega) {
            Err(Error::TooLarge { n: 14, limit }) => assert_eq!(limit, ORACLE_LIMIT),
            other => panic!("expected TooLarge, got {other:?}"),
        }
    }

    #[test]
    fn odd_dimension_rejected() {
        assert!(matches!(
            SkewMatrix::from_fn(5, |_, _| 1.0),
            Err(Error::OddDimension { n: 5 })
        ));
    }

    #[test]
    fn from_dense_antisymmetrizes_exactly() {
        let m = DMatrix::from_fn(4, 4, |i, j| (3 * i + j * j) as f64 * 0.37 + 0.1);
        let skew = SkewMatrix::from_dense(&m).unwrap();
        for i in 0..4 {
            for j in 0..4 {
                assert_eq!(skew.get(i, j), -skew.get(j, i));
            }
        }
    }

    #[test]
    fn canonical_form_reconstructs() {
        let omega = skew_from_entries(6, |i, j| ((i * 5 + j * 3) % 9) as f64 * 0.25 - 1.0);
        let form = skew_canonical(&omega).unwrap();
        let r = &form.rotation;
        let n = omega.size();

        let ortho = (r.transpose() * r - DMatrix::identity(n, n)).abs().max();
        assert!(ortho < 1e-12, "orthogonality residual {ortho}");
        assert!((r.determinant() - 1.0).abs() < 1e-10);

        let block = SkewMatrix::block_diagonal(&form.lambdas)
            .unwrap()
            .to_dense();
        let residual = (r.transpose() * omega.to_dense() * r - block).abs().max();
        assert!(
            residual < 1e-10 * (1.0 + omega.max_norm()),
            "reconstruction residual {residual}"
        );

        for w in form.lambdas.windows(2) {
            assert!(w[0].abs() >= w[1].abs() - 1e-14);
        }
        for lam in &form.lambdas[..form.lambdas.len() - 1] {
            assert!(*lam >= 0.0);
        }
    }

    #[test]
    fn canonical_form_of_zero_matrix() {
        let omega = SkewMatrix::zeros(6).unwrap();
        let form = skew_canonical(&omega).unwrap();
        assert_eq!(form.lambdas, vec![0.0, 0.0, 0.0]);
        let n = 6;
        let ortho = (form.rotation.transpose() * &form.rotation - DMatrix::identity(n, n))
            .abs()
            .max();
        assert!(ortho < 1e-12);
        assert!((form.rotation.determinant() - 1.0).abs() < 1e-10);
    }

    #[test]
    fn canonical_form_with_kernel_blocks() {
        // Rank-2 form in dimension 6: one genuine block, two kernel blocks.
        let base = SkewMatrix::block_diagonal(&[1.5, 0.0, 0.0]).unwrap();
        let form = skew_canonical(&base).unwrap();
        assert!((form.lambdas[0].abs() - 1.5).abs() < 1e-12);
        assert!(form.lambdas[1].abs() < 1e-12);
        assert!(form.lambdas[2].abs() < 1e-12);
        let block = SkewMatrix::block_diagonal(&form.lambdas)
            .unwrap()
            .to_dense();
        let r = &form.rotation;
        let residual = (r.transpose() * base.to_dense() * r - block).abs().max();
        assert!(residual < 1e-10 * 2.5);
    }

    #[test]
    fn orthonormalize_euclidean_identity_frame() {
        let metric = DMatrix::identity(4, 4);
        let vectors = vec![
            DVector::from_vec(vec![2.0, 0.0, 0.0, 0.0]),
            DVector::from_vec(vec![1.0, 1.0, 0.0, 0.0]),
            DVector::from_vec(vec![0.0, 3.0, 4.0, 0.0]),
        ];
        let frame = orthonormalize(&vectors, &metric).unwrap();
        for (i, u) in frame.iter().enumerate() {
            for (j, v) in frame.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                assert!((u.dot(v) - expected).abs() < 1e-12);
            }
        }
        // Orientation: the leading component of the first output keeps the
        // sign of the first input.
        assert!(frame[0][0] > 0.0);
    }

    #[test]
    fn orthonormalize_detects_rank_deficiency() {
        let metric = DMatrix::identity(3, 3);
        let vectors = vec![
            DVector::from_vec(vec![1.0, 2.0, 0.0]),
            DVector::from_vec(vec![2.0, 4.0, 1e-14]),
        ];
        assert!(matches!(
            orthonormalize(&vectors, &metric),
            Err(Error::RankDeficient { .. })
        ));
    }

    #[test]
    fn orthonormalize_rejects_indefinite_metric() {
        let metric = DMatrix::from_diagonal(&DVector::from_vec(vec![1.0, -1.0]));
        let vectors = vec![DVector::from_vec(vec![1.0, 0.0])];
        assert!(matches!(
            orthonormalize(&vectors, &metric),
            Err(Error::BadMetric { .. })
        ));
    }

    #[test]
    fn orthonormalize_with_scaled_metric() {
        let metric = DMatrix::from_diagonal(&DVector::from_vec(vec![4.0, 0.25]));
        let vectors = vec![
            DVector::from_vec(vec![1.0, 1.0]),
            DVector::from_vec(vec![0.0, 1.0]),
        ];
        let frame = orthonormalize(&vectors, &metric).unwrap();
        for (i, u) in frame.iter().enumerate() {
            for (j, v) in frame.iter().enumerate() {
                let expected = if i == j { 1.0 } else { 0.0 };
                let inner = (&metric * v).dot(u);
                assert!((inner - expected).abs() < 1e-12);
            }
        }
    }
}
