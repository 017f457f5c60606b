// SPDX-License-Identifier: MIT
/**
 * @file selection.cpp
 * @brief Matroid greedy selection and the exhaustive oracle.
 */
#include "cfdas/selection.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <sstream>

#include "cfdas/quantized.hpp"

namespace cfdas {

namespace {

/// Incremental independence tester over F_{p^2}: keeps an echelon basis of
/// accepted rows; a candidate is independent iff it has a nonzero residue
/// after elimination against the basis.
class RankTracker {
 public:
  /// Returns true (and absorbs the row) iff it increases the rank.
  bool try_add(FqVec row) {
    for (size_t b = 0; b < basis_.size(); ++b) {
      const FqElem lead = row[pivot_[b]];  // copy: the loop below mutates row
      if (!lead.is_zero()) {
        for (size_t c = 0; c < row.size(); ++c)
          row[c] = fq_sub(row[c], fq_mul(lead, basis_[b][c]));
      }
    }
    for (size_t c = 0; c < row.size(); ++c) {
      if (!row[c].is_zero()) {
        const FqElem inv = fq_inverse(row[c]);
        for (auto& e : row) e = fq_mul(e, inv);
        basis_.push_back(std::move(row));
        pivot_.push_back(c);
        return true;
      }
    }
    return false;
  }
  size_t rank() const { return basis_.size(); }

 private:
  std::vector<FqVec> basis_;   // normalized so basis_[b][pivot_[b]] = 1
  std::vector<size_t> pivot_;
};

std::vector<int> sorted_by_weight(const std::vector<double>& weights) {
  std::vector<int> order(weights.size());
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](int a, int b) {
    return weights[static_cast<size_t>(a)] > weights[static_cast<size_t>(b)];
  });
  return order;
}

}  // namespace

SelectionResult greedy_select(const FqMat& q, const std::vector<double>& weights) {
  if (q.empty()) throw Error("greedy_select: empty matrix");
  if (weights.size() != q.size())
    throw Error("greedy_select: one weight per row required");
  const int n = static_cast<int>(q[0].size());

  SelectionResult res;
  RankTracker tracker;
  for (int idx : sorted_by_weight(weights)) {
    if (static_cast<int>(tracker.rank()) == n) break;
    if (tracker.try_add(q[static_cast<size_t>(idx)])) {
      res.chosen.push_back(idx);
      res.objective += weights[static_cast<size_t>(idx)];
    }
  }
  if (static_cast<int>(tracker.rank()) < n) {
    std::ostringstream os;
    os << "greedy_select: rows span only rank " << tracker.rank() << " < " << n;
    throw NoBasis(os.str());
  }
  std::sort(res.chosen.begin(), res.chosen.end());
  res.full_rank = true;
  return res;
}

SelectionResult at_select_cof(const SystemMatrix& s, double r0) {
  const int rows = static_cast<int>(s.q.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(s.q[0].size());
  if (fq_rank(s.q) < cols) {
    std::ostringstream os;
    os << "at_select_cof: no full-rank subset exists (rank < " << cols << ")";
    throw NoBasis(os.str());
  }

  const NetworkDecomposition dec = network_decompose(s.q);
  SelectionResult res;
  size_t blocks_with_cols = 0;
  for (const auto& block : dec.blocks) {
    if (block.cols.empty()) continue;  // isolated rows are never selected
    ++blocks_with_cols;
    // Restrict to the block and greedily pick |cols| of its rows using the
    // clamped per-row rates as weights.
    FqMat sub(block.rows.size(), FqVec(block.cols.size()));
    std::vector<double> w(block.rows.size());
    for (size_t r = 0; r < block.rows.size(); ++r) {
      for (size_t c = 0; c < block.cols.size(); ++c)
        sub[r][c] = s.q[static_cast<size_t>(block.rows[r])]
                       [static_cast<size_t>(block.cols[c])];
      w[r] = std::min(r0, s.per_row_rate[static_cast<size_t>(block.rows[r])]);
    }
    SelectionResult local = greedy_select(sub, w);  // full rank guaranteed
    for (int li : local.chosen) res.chosen.push_back(block.rows[static_cast<size_t>(li)]);
  }
  std::sort(res.chosen.begin(), res.chosen.end());

  const SystemMatrix chosen_sys = subsystem(s, res.chosen);
  res.objective = cof_sum_rate(chosen_sys, r0).sum_rate;
  res.full_rank = true;
  // The per-block greedy maximizes each block's bottleneck rate, which is
  // exact when every full-rank selection keeps the sub-networks whole; a
  // selection that splits one may score differently, so flag the cases
  // where the chosen rows themselves re-decompose.
  const NetworkDecomposition after = network_decompose(chosen_sys.q);
  size_t after_with_cols = 0;
  for (const auto& b : after.blocks)
    if (!b.cols.empty()) ++after_with_cols;
  res.possibly_suboptimal = after_with_cols > blocks_with_cols;
  return res;
}

SelectionResult at_select_lqf(const SystemMatrix& s, double r0) {
  const double symbol_bits = 2.0 * std::log2(static_cast<double>(s.p));
  if (symbol_bits > r0) {
    std::ostringstream os;
    os << "at_select_lqf: backhaul r0 = " << r0 << " below the symbol size "
       << symbol_bits << " bits";
    throw BackhaulTooSmall(os.str());
  }
  const QuantGrid grid = make_quant_grid(s.p, s.snr);
  std::vector<double> weights(s.q.size());
  for (size_t l = 0; l < s.q.size(); ++l) {
    const CVec hl = s.h.row(static_cast<Eigen::Index>(l)).transpose();
    const double rate =
        std::max(0.0, symbol_bits - noise_entropy(effective_noise_pmf(hl, s.a[l], grid)));
    weights[l] = std::min(r0, rate);
  }
  try {
    return greedy_select(s.q, weights);
  } catch (const NoBasis& e) {
    throw NoBasis(std::string("at_select_lqf: ") + e.what());
  }
}

SelectionResult ut_select_downlink(const FqMat& qd, const std::vector<double>& weights) {
  try {
    return greedy_select(qd, weights);
  } catch (const NoBasis& e) {
    throw NoBasis(std::string("ut_select_downlink: ") + e.what());
  }
}

SelectionResult exhaustive_select(const FqMat& q, const std::vector<double>& weights,
                                  SelectionObjective objective, int target) {
  if (q.empty()) throw Error("exhaustive_select: empty matrix");
  if (weights.size() != q.size())
    throw Error("exhaustive_select: one weight per row required");
  const int m = static_cast<int>(q.size());
  if (target < 0 || target > m)
    throw Error("exhaustive_select: target size out of range");

  double count = 1.0;  // C(m, target), overflow-safe in double
  for (int i = 0; i < target; ++i)
    count = count * static_cast<double>(m - i) / static_cast<double>(i + 1);
  if (count > 1e5) {
    std::ostringstream os;
    os << "exhaustive_select: C(" << m << "," << target << ") ≈ " << count
       << " subsets exceed the 1e5 enumeration budget";
    throw TooLarge(os.str());
  }

  std::vector<int> idx(static_cast<size_t>(target));
  std::iota(idx.begin(), idx.end(), 0);
  SelectionResult best;
  bool found = false;
  while (true) {
    FqMat sub;
    for (int i : idx) sub.push_back(q[static_cast<size_t>(i)]);
    if (target == 0 || fq_rank(sub) == target) {
      double obj;
      if (objective == SelectionObjective::linear) {
        obj = 0.0;
        for (int i : idx) obj += weights[static_cast<size_t>(i)];
      } else {
        obj = std::numeric_limits<double>::infinity();
        for (int i : idx) obj = std::min(obj, weights[static_cast<size_t>(i)]);
        if (target == 0) obj = 0.0;
      }
      // Strictly better wins; exact ties go to the smaller index set so the
      // oracle is deterministic.
      if (!found || obj > best.objective ||
          (obj == best.objective && idx < best.chosen)) {
        best.chosen = idx;
        best.objective = obj;
        best.full_rank = true;
        found = true;
      }
    }
    // Next combination in lexicographic order.
    int pos = target - 1;
    while (pos >= 0 && idx[static_cast<size_t>(pos)] == m - target + pos) --pos;
    if (pos < 0) break;
    ++idx[static_cast<size_t>(pos)];
    for (int j = pos + 1; j < target; ++j)
      idx[static_cast<size_t>(j)] = idx[static_cast<size_t>(j - 1)] + 1;
  }
  if (!found)
    throw NoBasis("exhaustive_select: no full-rank subset of the requested size");
  return best;
}

}  // namespace cfdas
