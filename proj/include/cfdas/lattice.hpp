// SPDX-License-Identifier: MIT
/**
 * @file lattice.hpp
 * @brief Effective-noise geometry and shortest-vector machinery for
 *        integer-combination receivers.
 *
 * A receiver that decodes the integer combination a of K unit-power
 * codewords through channel h at a given SNR sees effective noise variance
 *
 *   σ²(h, a) = aᴴ (snr⁻¹ I + h hᴴ)⁻¹ a
 *            = snr (‖a‖² − snr |hᴴa|² / (1 + snr ‖h‖²)),
 *
 * after MMSE scaling α = snr · hᴴa / (1 + snr ‖h‖²). The achievable rate is
 * log₂⁺(snr / σ²). Minimising σ² over nonzero Gaussian-integer vectors a is
 * a shortest-lattice-vector problem in the basis F = Lᴴ where L Lᴴ equals
 * the positive-definite form above; this header provides the pipeline:
 * Cholesky factor → complex LLL reduction → sphere enumeration → argmin.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "cfdas/errors.hpp"
#include "cfdas/types.hpp"

namespace cfdas {

// ---------------------------------------------------------------------------
// Exact Gaussian-integer matrix helpers (used for unimodular bookkeeping).
// ---------------------------------------------------------------------------

/// Exact A·x over the Gaussian integers.
GIntVec gint_matvec(const GIntMat& a, const GIntVec& x);
/// Exact A·B over the Gaussian integers.
GIntMat gint_matmul(const GIntMat& a, const GIntMat& b);
/// Identity matrix.
GIntMat gint_identity(int n);
/// Exact determinant by fraction-free (Bareiss) elimination; intermediates
/// are widened to 128-bit components. Square input required.
GaussianInt gint_det(const GIntMat& m);
/// True iff |det| = 1, i.e. det ∈ {1, −1, j, −j}.
bool gint_is_unimodular(const GIntMat& m);

// ---------------------------------------------------------------------------
// Effective noise variance and rate.
// ---------------------------------------------------------------------------

/// σ² and the MMSE scaling α for one receiver/coefficient pair.
struct NoiseVariance {
  double sigma2 = 0.0;
  cplx alpha{0.0, 0.0};
};

/// Evaluate σ²(h, a) via the rank-one closed form (no matrix inversion).
/// Throws ZeroVector if a = 0, Error on dimension mismatch or snr ≤ 0.
NoiseVariance effective_noise_variance(const CVec& h, const GIntVec& a, double snr);

/// log₂⁺(snr / σ²(h, a)) in bits.
double computation_rate(const CVec& h, const GIntVec& a, double snr);

/// Lower-triangular L with L Lᴴ = (snr⁻¹ I + h hᴴ)⁻¹, so σ²(h,a) = ‖Lᴴa‖².
/// Built from the explicit rank-one inverse, which is positive definite for
/// every h and snr > 0.
CMat cholesky_factor(const CVec& h, double snr);

// ---------------------------------------------------------------------------
// Complex LLL reduction over Z[j].
// ---------------------------------------------------------------------------

/// A reduced lattice basis together with the exact change of basis:
/// original · unimodular = basis.
struct ReducedBasis {
  CMat basis;          ///< Columns are the reduced generators.
  GIntMat unimodular;  ///< Gaussian-integer U with |det U| = 1.
};

/// Complex LLL with Gaussian-integer size reduction (|Re μ| ≤ ½, |Im μ| ≤ ½)
/// and Lovász parameter delta ∈ (0.25, 1]. Throws RankDeficient if the
/// columns are dependent, ConfigError for delta out of range.
ReducedBasis lll_reduce(const CMat& basis, double delta = 0.75);

/// All nonzero Gaussian-integer coefficient vectors z with
/// ‖basis·z‖ ≤ radius, one representative per {z, −z} pair (the partner
/// carries the same norm, so callers never need both). Schnorr–Euchner
/// depth-first enumeration on the realified lattice. Throws RadiusTooLarge
/// if the expected or actual point count exceeds `cap`.
std::vector<GIntVec> enumerate_short_vectors(const ReducedBasis& basis,
                                             double radius,
                                             std::int64_t cap = 1000000);

// ---------------------------------------------------------------------------
// Coefficient search.
// ---------------------------------------------------------------------------

/// Best integer coefficient vector for one receiver row.
struct CofSolution {
  GIntVec a;            ///< Minimising coefficients, first nonzero entry in
                        ///< the closed first quadrant (Re > 0, Im ≥ 0).
  cplx alpha{0.0, 0.0}; ///< MMSE scaling for a.
  double sigma2 = 0.0;  ///< Effective noise variance at a.
  double rate = 0.0;    ///< log₂⁺(snr / sigma2).
};

/// Globally minimise σ²(h, a) over nonzero a ∈ Z[j]^K: Cholesky → LLL →
/// sphere of radius (1 + 1e-9)·‖shortest reduced column‖ → exact argmin.
/// Ties within 1e-12 relative σ² resolve to the lexicographically smallest
/// canonicalised vector, making the output deterministic.
/// Throws ZeroVector for h = 0; sub-operation errors propagate.
CofSolution find_best_coefficients(const CVec& h, double snr,
                                   double delta = 0.75,
                                   std::int64_t enum_cap = 1000000);

/// Rotate a by a unit so its first nonzero entry has Re > 0, Im ≥ 0.
/// σ² is invariant under this rotation. Zero vectors pass through.
GIntVec canonicalize_quadrant(const GIntVec& a);

/// Strict lexicographic order on Gaussian-integer vectors (entrywise, real
/// component before imaginary). Used only to break exact ties.
bool gint_lex_less(const GIntVec& x, const GIntVec& y);

}  // namespace cfdas
