// SPDX-License-Identifier: MIT
/**
 * @file ifb.hpp
 * @brief Integer-forcing beamforming for the large-backhaul downlink:
 *        precode with B = Hd⁻¹·Ã so each user sees an exact integer
 *        combination of the lattice streams, with Ã chosen by lattice
 *        reduction of the inverse channel.
 */
#pragma once

#include <cstdint>

#include "cfdas/types.hpp"

namespace cfdas {

/// One downlink precoding design. All streams share a common power ρ;
/// antenna m radiates ρ·‖row_m(B)‖², so the per-antenna limit snr binds at
/// the worst row and ρ = snr / max_row_power.
struct IfbDesign {
  GIntMat a_tilde;  ///< L×L integer effective channel; full rank over C and
                    ///< |det| = 1 for designs produced by this module.
  CMat b;           ///< Precoder with Hd·B = Ã (within 1e-9).
  double max_row_power = 0.0;  ///< max_m ‖row_m(B)‖² > 0.
};

/// The zero-forcing special case: Ã = I, B = Hd⁻¹. Requires a square
/// invertible channel; its identity matrix is invertible modulo every
/// prime, so this design always evaluates. Throws ConfigError, Singular.
IfbDesign make_zfb_design(const CMat& hd);

/// Deterministic search for the best design at the given snr. Candidates:
/// the identity (evaluated first, so plain zero forcing is never beaten by
/// a tie), the unimodular transform of a complex LLL reduction of the
/// columns of Hd⁻¹ (taken in a canonical column order so user reordering
/// cannot change the outcome), its column sign/permutation variants, and
/// greedy single-column replacements drawn from a short-vector enumeration
/// of the reduced basis. Every candidate is scored by the achieved sum
/// rate and the best strictly-improving one is kept. Throws ConfigError,
/// Singular.
IfbDesign ifb_design(const CMat& hd, double snr);

/// Sum rate of a design: user ℓ decodes the integer combination in row ℓ
/// of Ã at effective snr = snr / max_row_power, earning
/// log₂⁺(snr_eff + 1/‖ã_ℓ‖²); the effective channel equals Ã exactly, so
/// there is no alignment penalty. The integer layer needs [Ã] mod p
/// invertible: throws RankDeficientModP otherwise (callers retry with the
/// next candidate, e.g. make_zfb_design). `selected` lists all L users.
/// Throws ConfigError, InvalidPrime.
RateReport ifb_sum_rate(const IfbDesign& design, double snr, std::int64_t p);

}  // namespace cfdas
