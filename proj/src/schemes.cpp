// SPDX-License-Identifier: MIT
/**
 * @file schemes.cpp
 * @brief Uplink/downlink integer-combination sum rates.
 */
#include "cfdas/schemes.hpp"

#include <cmath>
#include <deque>
#include <sstream>

namespace cfdas {

SystemMatrix build_system_matrix(const CMat& h, double snr, std::int64_t p,
                                 double delta) {
  validate_gaussian_prime(p);
  if (!h.allFinite()) throw Error("build_system_matrix: channel contains NaN/Inf");
  const Eigen::Index rows = h.rows(), cols = h.cols();
  if (rows == 0 || cols == 0) throw Error("build_system_matrix: empty channel");

  SystemMatrix s;
  s.h = h;
  s.p = p;
  s.snr = snr;
  s.a.resize(static_cast<size_t>(rows));
  s.q.resize(static_cast<size_t>(rows));
  s.per_row_rate.resize(static_cast<size_t>(rows));
  s.alpha.resize(static_cast<size_t>(rows));
  s.usable.resize(static_cast<size_t>(rows));

  for (Eigen::Index l = 0; l < rows; ++l) {
    const CVec hl = h.row(l).transpose();
    GIntVec a;
    cplx alpha;
    double rate;
    if (hl.norm() == 0.0) {
      // Dead receiver: any coefficient choice sees σ² = snr·‖a‖² ≥ snr, so
      // the rate is 0 regardless; pick the unit vector for determinism.
      a.assign(static_cast<size_t>(cols), GaussianInt{0, 0});
      a[0] = {1, 0};
      const NoiseVariance nv = effective_noise_variance(hl, a, snr);
      alpha = nv.alpha;
      rate = log2_pos(snr / nv.sigma2);
    } else {
      CofSolution sol = find_best_coefficients(hl, snr, delta);
      a = sol.a;
      alpha = sol.alpha;
      rate = sol.rate;
    }
    s.a[static_cast<size_t>(l)] = a;
    s.q[static_cast<size_t>(l)] = mod_p_reduce(GIntMat{a}, p)[0];
    s.per_row_rate[static_cast<size_t>(l)] = rate;
    s.alpha[static_cast<size_t>(l)] = alpha;
    bool nonzero = false;
    for (const auto& e : s.q[static_cast<size_t>(l)]) nonzero = nonzero || !e.is_zero();
    s.usable[static_cast<size_t>(l)] = nonzero;
  }
  return s;
}

SystemMatrix subsystem(const SystemMatrix& s, const std::vector<int>& rows) {
  SystemMatrix out;
  out.p = s.p;
  out.snr = s.snr;
  out.h.resize(static_cast<Eigen::Index>(rows.size()), s.h.cols());
  for (size_t i = 0; i < rows.size(); ++i) {
    const int r = rows[i];
    if (r < 0 || static_cast<size_t>(r) >= s.q.size())
      throw Error("subsystem: row index out of range");
    out.h.row(static_cast<Eigen::Index>(i)) = s.h.row(r);
    out.a.push_back(s.a[static_cast<size_t>(r)]);
    out.q.push_back(s.q[static_cast<size_t>(r)]);
    out.per_row_rate.push_back(s.per_row_rate[static_cast<size_t>(r)]);
    out.alpha.push_back(s.alpha[static_cast<size_t>(r)]);
    out.usable.push_back(s.usable[static_cast<size_t>(r)]);
  }
  return out;
}

NetworkDecomposition network_decompose(const FqMat& q) {
  const int rows = static_cast<int>(q.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(q[0].size());
  // Bipartite BFS; node ids: 0..rows-1 are rows, rows..rows+cols-1 columns.
  std::vector<int> comp(static_cast<size_t>(rows + cols), -1);
  int n_comp = 0;
  for (int start = 0; start < rows + cols; ++start) {
    if (comp[static_cast<size_t>(start)] >= 0) continue;
    std::deque<int> queue{start};
    comp[static_cast<size_t>(start)] = n_comp;
    while (!queue.empty()) {
      int node = queue.front();
      queue.pop_front();
      if (node < rows) {
        for (int c = 0; c < cols; ++c)
          if (!q[static_cast<size_t>(node)][static_cast<size_t>(c)].is_zero() &&
              comp[static_cast<size_t>(rows + c)] < 0) {
            comp[static_cast<size_t>(rows + c)] = n_comp;
            queue.push_back(rows + c);
          }
      } else {
        int c = node - rows;
        for (int r = 0; r < rows; ++r)
          if (!q[static_cast<size_t>(r)][static_cast<size_t>(c)].is_zero() &&
              comp[static_cast<size_t>(r)] < 0) {
            comp[static_cast<size_t>(r)] = n_comp;
            queue.push_back(r);
          }
      }
    }
    ++n_comp;
  }
  NetworkDecomposition out;
  out.blocks.resize(static_cast<size_t>(n_comp));
  for (int r = 0; r < rows; ++r)
    out.blocks[static_cast<size_t>(comp[static_cast<size_t>(r)])].rows.push_back(r);
  for (int c = 0; c < cols; ++c)
    out.blocks[static_cast<size_t>(comp[static_cast<size_t>(rows + c)])].cols.push_back(c);
  return out;
}

RateReport cof_sum_rate(const SystemMatrix& s, double r0) {
  if (r0 < 0.0) throw Error("cof_sum_rate: r0 must be nonnegative");
  const int rows = static_cast<int>(s.q.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(s.q[0].size());
  if (rows != cols) {
    std::ostringstream os;
    os << "cof_sum_rate: system matrix is " << rows << "×" << cols
       << ", expected square (select receivers first)";
    throw Error(os.str());
  }
  const int rank = fq_rank(s.q);
  if (rank < cols) {
    std::ostringstream os;
    os << "cof_sum_rate: system matrix rank " << rank << " < " << cols;
    throw RankDeficient(os.str());
  }

  const NetworkDecomposition dec = network_decompose(s.q);
  RateReport rep;
  rep.per_receiver_rates.assign(static_cast<size_t>(rows), 0.0);
  for (const auto& block : dec.blocks) {
    double block_min = r0;
    for (int r : block.rows)
      block_min = std::min(block_min, s.per_row_rate[static_cast<size_t>(r)]);
    for (int r : block.rows)
      rep.per_receiver_rates[static_cast<size_t>(r)] = block_min;
    rep.sum_rate += static_cast<double>(block.rows.size()) * block_min;
  }
  rep.outage = rep.sum_rate == 0.0;
  return rep;
}

RateReport rcof_sum_rate(const CMat& hd, double snr, std::int64_t p, double r0,
                         double delta) {
  if (r0 < 0.0) throw Error("rcof_sum_rate: r0 must be nonnegative");
  if (hd.rows() != hd.cols())
    throw Error("rcof_sum_rate: effective downlink channel must be square");
  SystemMatrix s = build_system_matrix(hd, snr, p, delta);
  const int n = static_cast<int>(hd.rows());
  const int rank = fq_rank(s.q);
  if (rank < n) {
    std::ostringstream os;
    os << "rcof_sum_rate: reduced coefficient matrix rank " << rank << " < " << n;
    throw RankDeficient(os.str());
  }
  RateReport rep;
  rep.per_receiver_rates.resize(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    const double rate = std::min(r0, s.per_row_rate[static_cast<size_t>(l)]);
    rep.per_receiver_rates[static_cast<size_t>(l)] = rate;
    rep.sum_rate += rate;
  }
  rep.outage = rep.sum_rate == 0.0;
  return rep;
}

FqMat ff_precode(const FqMat& qd, const FqMat& messages) {
  if (qd.empty() || messages.empty()) throw Error("ff_precode: empty input");
  if (qd.size() != messages.size())
    throw Error("ff_precode: row count of messages must match Qd");
  return fq_matmul(fq_inverse_matrix(qd), messages);  // Singular propagates
}

}  // namespace cfdas
