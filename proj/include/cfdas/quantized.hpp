// SPDX-License-Identifier: MIT
/**
 * @file quantized.hpp
 * @brief Scalar-quantized receiver variants.
 *
 * When each receive point applies an ideal uniform scalar quantizer with
 * step τ/p on the shaping interval τ (τ = √(6·snr) so dithered transmit
 * symbols meet the unit power constraint), the end-to-end channel from
 * finite-field input symbols to quantized outputs collapses to an additive
 * noise channel over F_{p^2}:
 *
 *   u = ⊕_k q_k c_k ⊕ ζ,
 *
 * where ζ is the discrete wrap of the scaled residual noise. The discrete
 * noise ν on each real component follows the folded-Gaussian pmf built
 * from Φ(x) = Q((2x−1)/(2σ_ε)) − Q((2x+1)/(2σ_ε)):
 *
 *   P(ν = 0) = Φ(0) + 2 Σ_{m≥1} Φ(p·m),
 *   P(ν = β) = Σ_{m≥0} [Φ(v + p·m) + Φ(p − v + p·m)],  v = g(β) ∈ {1,…,p−1},
 *
 * with σ_ε = σ_ξ/√2 and σ_ξ² = (p/τ)²·σ²(h, a). Rates follow as
 * 2·log₂p − H(ζ) per receiver, combined like their unquantized
 * counterparts. A symbol-exact simulation of the full transmit/receive
 * chain is provided; its output must equal the algebraic form bit-exactly
 * for every realization.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "cfdas/gfield.hpp"
#include "cfdas/schemes.hpp"
#include "cfdas/types.hpp"

namespace cfdas {

/// Scalar quantization grid: step τ/p on the shaping interval [0, τ).
struct QuantGrid {
  std::int64_t p = 0;
  double tau = 0.0;
  double snr = 0.0;
};

/// Grid with τ = √(6·snr): a dithered symbol, uniform on the centered
/// τ-cell, then meets E|x|² = τ²/6 = snr per complex symbol.
QuantGrid make_quant_grid(std::int64_t p, double snr);

/// Discrete noise distribution of one real component ν ∈ Z_p; the complex
/// noise ζ is two i.i.d. copies.
struct NoisePmf {
  std::int64_t p = 0;
  std::vector<double> probs;  ///< Length p, indexed by the lift g(β).
  double sigma_eps = 0.0;     ///< Std-dev of the underlying real Gaussian.
  double raw_mass = 0.0;      ///< Pre-renormalization total (truncation
                              ///< diagnostic; 1 − raw_mass was clipped).
};

/// Folded-Gaussian pmf of the quantized residual for one receiver row.
/// m_max bounds the wrap sum (the default covers everything beyond double
/// precision for the regimes of interest); the pmf is renormalized.
NoisePmf effective_noise_pmf(const CVec& h, const GIntVec& a, const QuantGrid& grid,
                             int m_max = 2);

/// Entropy of the complex discrete noise in bits: H(ζ) = 2·H(ν).
double noise_entropy(const NoisePmf& pmf);

/// Uplink quantized sum rate: identical block structure to the
/// infinite-precision uplink, with per-row rate 2log₂p − H(ζ(h_ℓ, a_ℓ)).
/// Throws RankDeficient when the system matrix is singular.
RateReport qcof_sum_rate(const CMat& h, double snr, std::int64_t p, double r0);

/// Linear (one-shot) quantized uplink: the central processor decodes from
/// all K quantized observations jointly, so rates add across rows instead
/// of taking block minima: 2K·log₂p − Σ_k H(ζ_k). Requires every backhaul
/// link to carry a full symbol, 2log₂p ≤ r0; throws BackhaulTooSmall
/// otherwise, RankDeficient on singular systems.
RateReport lqf_sum_rate(const CMat& h, double snr, std::int64_t p, double r0);

/// Downlink quantized sum rate: Σ_ℓ min{r0, 2log₂p − H(ζ_ℓ)} over a square
/// effective channel. Throws RankDeficient.
RateReport rqcof_sum_rate(const CMat& hd, double snr, std::int64_t p, double r0);

// ---------------------------------------------------------------------------
// Symbol-exact simulation of the quantized chain.
// ---------------------------------------------------------------------------

/// Representative of v modulo width·Z in [0, width).
double mod_interval(double v, double width);
/// Representative of v modulo width·Z in [−width/2, width/2).
double mod_interval_centered(double v, double width);
/// Quantize to the (τ/p)-grid, then fold into Z_p: returns
/// round(v·p/τ) mod p in [0, p). Rounding is floor(x + 1/2) (ties up).
std::int64_t quantize_fold(double v, const QuantGrid& grid);

/// Map field symbols to dithered transmit samples:
/// x_k = [ (τ/p)·g(c_k) + d_k ] mod τZ[j], centered representative
/// (components in [−τ/2, τ/2), meeting the power constraint on average).
CMat quant_modulate(const QuantGrid& grid, const FqMat& symbols, const CMat& dithers);

/// MMSE scalings for each row of (H, A) — the default receiver choice.
CVec mmse_alphas(const CMat& h, const GIntMat& a, double snr);

/// Full receiver chain, one output symbol per (receiver, time):
/// r = α·y − Σ_k a_k d_k, n = round(r·p/τ), u = g⁻¹([n] mod pZ[j]),
/// with y = H·x + z and x from quant_modulate. `alphas` has one entry per
/// receiver row (use mmse_alphas for the standard choice; pass 1 to study
/// unscaled reception). Throws Error on any shape mismatch.
FqMat simulate_quantized_symbols(const CMat& h, const GIntMat& a,
                                 const QuantGrid& grid, const FqMat& symbols,
                                 const CMat& dithers, const CMat& noise,
                                 const CVec& alphas);

/// The algebraic equivalent u = ⊕_k q_k c_k ⊕ ζ with
/// ζ = g⁻¹([round((p/τ)·ξ)] mod pZ[j]) and ξ = Σ_k(α h_k − a_k)x_k + α z
/// evaluated on the same realizations. Must agree with the chain above
/// symbol-for-symbol.
FqMat quantized_symbols_algebraic(const CMat& h, const GIntMat& a,
                                  const QuantGrid& grid, const FqMat& symbols,
                                  const CMat& dithers, const CMat& noise,
                                  const CVec& alphas);

}  // namespace cfdas
