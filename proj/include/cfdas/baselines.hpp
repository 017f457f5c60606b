// SPDX-License-Identifier: MIT
/**
 * @file baselines.hpp
 * @brief Reference schemes: QMF (finite and symmetric-ring limit forms),
 *        QF, DF, CDPC, CZFB, ZFB, the per-antenna DPC sum capacity, and the
 *        alternating power-allocation strategy for the symmetric ring model.
 */
#pragma once

#include <cstdint>

#include "cfdas/errors.hpp"
#include "cfdas/types.hpp"

namespace cfdas {

/// Parameters of the symmetric cellular ring model: unit direct gain and
/// gain `gamma` to the two adjacent cells.
struct WynerParams {
  double gamma = 0.7;  ///< Inter-cell gain, in [0, 1].
  int l = 0;           ///< Cell count; l <= 0 means the infinite ring.
  double snr = 1.0;    ///< Linear transmit SNR.
  double r0 = 1.0;     ///< Backhaul rate in bits per channel use.
};

/// Throws ConfigError when gamma ∉ [0,1], snr < 0, or r0 < 0.
void validate_wyner(const WynerParams& params);

/// Alternating power split: odd transmitters use power β, even ones 2−β,
/// producing the two effective three-tap channels seen at odd/even
/// receivers.
struct PowerAllocation {
  double beta = 1.0;
  CVec h_odd;   ///< [γ√(2−β), √β, γ√(2−β)]
  CVec h_even;  ///< [γ√β, √(2−β), γ√β]
};

/// Builds the two effective channels for a given β ∈ [0,1].
PowerAllocation wyner_effective_channels(double gamma, double beta);

/// Quantize-map-and-forward sum rate over an L×K uplink channel:
///   max_{r ∈ [0,r0]} min_{S ⊆ [1:L]} |S|(r0−r)
///     + log₂det(I + snr(1−2^{−r}) H(Sᶜ)H(Sᶜ)ᴴ).
/// The bracketed objective is concave in r, so a coarse grid plus
/// golden-section refinement finds the maximizer. Throws TooManyRelays for
/// L > 12 (the inner minimum enumerates 2^L subsets).
double qmf_rate(const CMat& h, double snr, double r0);

/// Per-user quantize-map-and-forward rate in the infinite symmetric ring:
/// returns F(r*) where F(r) = ∫₀¹ log₂(1 + snr(1−2^{−r})(1+2γcos2πθ)²) dθ
/// and r* solves F(r) = r0 − r (unique: F increasing, right side
/// decreasing). F is evaluated by adaptive Simpson quadrature (abs. tol
/// 1e-9) and the root by bisection; the fixed-point residual of the
/// returned solution is below 1e-6. Requires the infinite model (l ≤ 0).
double qmf_wyner_per_user(const WynerParams& params);

/// Quantize-and-forward (no binning) sum rate:
///   log₂det(I + snr·D·HHᴴ), D = diag(1/(1+D_ℓ)),
///   D_ℓ = (1+snr‖h_ℓ‖²)/(2^{r0}−1).
/// r0 = 0 returns 0 by convention.
double qf_rate(const CMat& h, double snr, double r0);

/// Per-user decode-and-forward rate in the symmetric ring:
/// min{max(R₁,R₂), r0} with R₁ = log₂(1+snr/(1+2γ²snr)) and
/// R₂ = min{½log₂(1+2γ²snr), ⅓log₂(1+(1+2γ²)snr)}.
double df_wyner_rate(const WynerParams& params);

/// Tolerances and iteration budgets for the broadcast sum-capacity solver.
struct BcCapacityOptions {
  double tol = 1e-5;     ///< Certificate gap required for convergence.
  int max_outer = 4000;  ///< Outer (noise-weight) iterations.
  int max_inner = 4000;  ///< Inner (user-power) iterations per outer step.
};

/// Sum capacity of a Gaussian vector broadcast channel under per-antenna
/// power constraints, in bits. `user_rows` is K×L with row k the (already
/// noise-normalized) channel of user k; `per_antenna_power[ℓ]` bounds
/// E|x_ℓ|². Computed through the dual minimax
///   min_{q ≥ 0, Σ q_ℓ P_ℓ = T₀} max_{p ≥ 0, Σ p_k ≤ T₀}
///     log₂det(diag q + Σ_k p_k ĥ_k ĥ_kᴴ) − log₂det(diag q),  T₀ = Σ P_ℓ,
/// by projected gradient on both levels; the run stops when the convexity
/// certificate bounds the distance to the optimum by `tol`. Deterministic.
/// Throws NonConvergence (with the best lower/upper bound pair) if the
/// certificate is still open after the iteration budget.
double bc_sum_capacity_per_antenna(const CMat& user_rows,
                                   const RVec& per_antenna_power,
                                   const BcCapacityOptions& opt = {});

/// Full-cooperation upper bound: the dual objective at unit noise weights,
/// i.e. the multiple-access sum capacity with pooled power `total_power`.
/// bc_sum_capacity_per_antenna(R, P) ≤ this value at total_power = ΣP_ℓ.
double mac_sum_capacity_total_power(const CMat& user_rows, double total_power,
                                    const BcCapacityOptions& opt = {});

/// Compressed dirty-paper coding sum rate: per-antenna signal power
/// snr(2^{r0}−1)/2^{r0}, user-ℓ effective noise 1 + ‖h̃_ℓ‖²·snr·2^{−r0}
/// (forwarded quantization noise), then the per-antenna BC sum capacity of
/// the normalized channel. r0 = 0 returns 0.
double cdpc_rate(const CMat& hd, double snr, double r0,
                 const BcCapacityOptions& opt = {});

/// Compressed zero-forcing beamforming sum rate over a square invertible
/// downlink channel (rows = users):
///   Σ_ℓ log₂(1 + (snr/‖b_ℓ‖²)/(1 + (1+‖h̃_ℓ‖²snr)/(2^{r0}−1))),
/// with b_ℓ the ℓ-th column of B = Hd⁻¹, the precoding vector that carries
/// user ℓ's stream (this pairing is invariant under user reordering and
/// makes the sum-power accounting exact). r0 = 0 returns 0. Throws Singular.
double czfb_rate(const CMat& hd, double snr, double r0);

/// Power accounting for plain zero-forcing beamforming with B = Hd⁻¹.
enum class ZfbNormalization {
  worst_antenna,  ///< One common symbol power snr / max_m‖row_m(B)‖²:
                  ///< antenna m radiates ρ·‖row_m(B)‖², so the per-antenna
                  ///< limit binds at the worst row (matches the
                  ///< integer-forcing power rule at Ã = I).
  per_stream,     ///< Stream ℓ gets power snr/‖col_ℓ(B)‖², the accounting
                  ///< the compressed variant approaches at large r0.
};

/// Zero-forcing beamforming sum rate: the default worst-antenna rule gives
/// L·log₂(1+snr/max_m‖row_m(B)‖²); the per-stream rule gives
/// Σ_ℓ log₂(1+snr/‖col_ℓ(B)‖²) (never smaller, by convexity of
/// t ↦ log₂(1+snr/t) and max_m‖row_m‖² ≥ ‖B‖²_F/L). Throws Singular.
double zfb_rate(const CMat& hd, double snr,
                ZfbNormalization norm = ZfbNormalization::worst_antenna);

/// Dirty-paper-coding sum capacity of the downlink under per-antenna power
/// snr and unit noise (bc_sum_capacity_per_antenna on hd directly).
double dpc_sum_capacity(const CMat& hd, double snr,
                        const BcCapacityOptions& opt = {});

enum class WynerScheme { cof, rcof };

struct PowerAllocationResult {
  double beta = 1.0;  ///< Optimized power split.
  double rate = 0.0;  ///< Per-user achievable rate at that split.
};

/// Optimizes the alternating power split β ∈ [0,1] for the ring model:
/// grid step 0.005 plus golden-section refinement around the grid best.
/// For each β the odd/even effective channels get their own best integer
/// coefficients; the objective is min{r0, R_odd, R_even} for `cof` (one
/// common code) and ½(min{r0,R_odd} + min{r0,R_even}) for `rcof` (two
/// codes). With a prime p > 0 the per-receiver rates are the quantized
/// ones, max{0, 2log₂p − H(ζ)}; with p = 0 the unquantized computation
/// rates.
PowerAllocationResult wyner_power_allocation(const WynerParams& params,
                                             WynerScheme scheme,
                                             std::int64_t p = 0);

}  // namespace cfdas
