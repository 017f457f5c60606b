// SPDX-License-Identifier: MIT
/**
 * @file selection.hpp
 * @brief Receiver/user subset selection over the finite-field matroid.
 *
 * Full-rank row subsets of a matrix over F_{p^2} form the bases of a
 * matroid, so a rank-respecting greedy pass over rows sorted by weight is
 * exactly optimal for linear objectives (sum of chosen weights) and for
 * the bottleneck (max-min) objective; for the uplink sum-rate objective
 * with network decomposition the greedy runs per sub-network and is exact
 * unless a chosen sub-network decomposes further (flagged).
 */
#pragma once

#include <cstdint>
#include <vector>

#include "cfdas/gfield.hpp"
#include "cfdas/schemes.hpp"
#include "cfdas/types.hpp"

namespace cfdas {

struct SelectionResult {
  std::vector<int> chosen;           ///< Selected row indices, ascending.
  double objective = 0.0;            ///< Scheme objective of the selection.
  bool full_rank = false;            ///< Chosen rows span the column space.
  bool possibly_suboptimal = false;  ///< Set when optimality is not
                                     ///< guaranteed (see at_select_cof).
};

/// Greedy basis selection: rows sorted by weight descending (stable on the
/// original index for ties), accepted iff they increase rank over F_{p^2},
/// stopping at n = column count. Exactly optimal for linear and max-min
/// objectives by the matroid exchange property. objective = sum of chosen
/// weights. Throws NoBasis when rank(q) < n.
SelectionResult greedy_select(const FqMat& q, const std::vector<double>& weights);

/// Uplink selection for the block-min sum rate: decompose the full L×K
/// system, greedy-select |cols| rows inside each sub-network with weights
/// min{r0, per-row rate}, take the union, and report the uplink sum rate
/// of the selected square system. Within each sub-network the greedy
/// maximizes the bottleneck rate exactly, so the result is optimal
/// whenever no full-rank selection can split a sub-network (e.g. dense or
/// block-dense systems). Selections that do split can occasionally score
/// higher; `possibly_suboptimal` is set when the chosen rows themselves
/// re-decompose. Throws NoBasis when rank(Q) < K.
SelectionResult at_select_cof(const SystemMatrix& s, double r0);

/// Uplink selection for the linear one-shot objective: greedy with weights
/// min{r0, 2log₂p − H(ζ_ℓ)}; exactly optimal. Requires 2log₂p ≤ r0
/// (BackhaulTooSmall) and rank(Q) = K (NoBasis).
SelectionResult at_select_lqf(const SystemMatrix& s, double r0);

/// Downlink user selection: greedy over rows of the K×L reduced matrix
/// with caller-supplied clamped weights; exactly optimal (linear
/// objective over the same matroid). Throws NoBasis.
SelectionResult ut_select_downlink(const FqMat& qd, const std::vector<double>& weights);

enum class SelectionObjective { max_min, linear };

/// Reference oracle: enumerate every full-rank subset of `target` rows and
/// return the objective maximizer (ties: lexicographically smallest index
/// set). Throws TooLarge when C(m, target) > 10⁵, NoBasis when no
/// full-rank subset exists.
SelectionResult exhaustive_select(const FqMat& q, const std::vector<double>& weights,
                                  SelectionObjective objective, int target);

}  // namespace cfdas
