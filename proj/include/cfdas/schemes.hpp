// SPDX-License-Identifier: MIT
/**
 * @file schemes.hpp
 * @brief Infinite-precision integer-combination schemes: uplink sum rate
 *        with network decomposition, and the downlink reverse variant with
 *        finite-field precoding.
 *
 * Uplink: each receive point independently picks its best integer
 * coefficient vector a_ℓ; the reductions q_ℓ = [a_ℓ] mod p form the system
 * matrix Q. The network splits into independent sub-networks — connected
 * components of the bipartite nonzero pattern of Q — and each sub-network
 * is limited by its slowest equation, clamped by the backhaul rate r0.
 *
 * Downlink: the roles reverse. The central processor precodes messages with
 * Q̃⁻¹ over F_{p^2}; each user decodes its own message, so per-user rates
 * are clamped individually with no block minimum.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "cfdas/gfield.hpp"
#include "cfdas/lattice.hpp"
#include "cfdas/types.hpp"

namespace cfdas {

/// Per-receiver coefficient choices for one channel realization.
struct SystemMatrix {
  CMat h;                            ///< The channel the rows were built from.
  GIntMat a;                         ///< L×K integer coefficients, row per receiver.
  FqMat q;                           ///< A reduced entrywise mod p.
  std::vector<double> per_row_rate;  ///< Computation rate of each row.
  std::vector<cplx> alpha;           ///< MMSE scaling per row.
  std::vector<bool> usable;          ///< False when q row is all zero (the
                                     ///< row contributes no equation).
  std::int64_t p = 0;
  double snr = 0.0;
};

/// Restriction of a system to a subset of its rows (selection output).
SystemMatrix subsystem(const SystemMatrix& s, const std::vector<int>& rows);

/// Connected components of the bipartite nonzero pattern of Q. Isolated
/// rows or columns form singleton blocks.
struct NetworkDecomposition {
  struct Block {
    std::vector<int> rows;
    std::vector<int> cols;
  };
  std::vector<Block> blocks;
};

/// Run the coefficient search on every row of H (receivers × users).
/// A zero channel row gets the unit coefficient vector and rate 0 rather
/// than an error: the receiver simply contributes nothing.
/// Throws Error if H contains NaN.
SystemMatrix build_system_matrix(const CMat& h, double snr, std::int64_t p,
                                 double delta = 0.75);

/// Bipartite connected components (breadth-first search, deterministic
/// order: discovery by lowest row index, then lowest column index).
NetworkDecomposition network_decompose(const FqMat& q);

/// Uplink sum rate: Σ over blocks of |rows| · min{r0, slowest row in block}.
/// per_receiver_rates[ℓ] holds ℓ's clamped block minimum, so the entries
/// sum to sum_rate. Requires square full-rank Q; throws RankDeficient
/// otherwise (callers may map that to a zero-rate outage sample).
RateReport cof_sum_rate(const SystemMatrix& s, double r0);

/// Downlink sum rate over a square effective channel Hd (users × transmit
/// points): Σ_ℓ min{r0, computation rate of user ℓ}. Requires the reduced
/// coefficient matrix to be invertible mod p; throws RankDeficient.
RateReport rcof_sum_rate(const CMat& hd, double snr, std::int64_t p, double r0,
                         double delta = 0.75);

/// Finite-field precoding: Qd⁻¹ · messages over F_{p^2}. Throws Singular.
FqMat ff_precode(const FqMat& qd, const FqMat& messages);

}  // namespace cfdas
