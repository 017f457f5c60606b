// SPDX-License-Identifier: MIT
/**
 * @file ifb.cpp
 * @brief Integer-forcing beamforming design search and rate evaluation.
 */
#include "cfdas/ifb.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <sstream>
#include <vector>

#include "cfdas/errors.hpp"
#include "cfdas/gfield.hpp"
#include "cfdas/lattice.hpp"

namespace cfdas {

namespace {

Eigen::FullPivLU<CMat> checked_lu(const CMat& hd) {
  if (hd.size() == 0 || hd.rows() != hd.cols())
    throw ConfigError("integer forcing: channel matrix must be square");
  if (!hd.allFinite())
    throw Error("integer forcing: channel matrix has non-finite entries");
  Eigen::FullPivLU<CMat> lu(hd);
  if (!lu.isInvertible())
    throw Singular("integer forcing: channel matrix is singular");
  return lu;
}

double max_row_power_of(const CMat& b) {
  double mrp = 0.0;
  for (Eigen::Index m = 0; m < b.rows(); ++m)
    mrp = std::max(mrp, b.row(m).squaredNorm());
  return mrp;
}

IfbDesign assemble(const Eigen::FullPivLU<CMat>& lu, GIntMat a_tilde) {
  IfbDesign d;
  d.b = lu.solve(to_cmat(a_tilde));
  d.a_tilde = std::move(a_tilde);
  d.max_row_power = max_row_power_of(d.b);
  return d;
}

/// Theorem objective: sum of per-user rates at the common stream power.
double design_rate(const IfbDesign& d, double snr) {
  const double snr_eff = snr / d.max_row_power;
  double sum = 0.0;
  for (const GIntVec& row : d.a_tilde)
    sum += computation_rate(to_cvec(row), row, snr_eff);
  return sum;
}

GIntMat gint_identity_mat(Eigen::Index n) {
  GIntMat eye(static_cast<size_t>(n),
              GIntVec(static_cast<size_t>(n), GaussianInt{0, 0}));
  for (size_t i = 0; i < static_cast<size_t>(n); ++i) eye[i][i] = {1, 0};
  return eye;
}

/// Column c of a row-major integer matrix.
GIntVec column_of(const GIntMat& m, size_t c) {
  GIntVec col(m.size());
  for (size_t r = 0; r < m.size(); ++r) col[r] = m[r][c];
  return col;
}

void set_column(GIntMat& m, size_t c, const GIntVec& col) {
  for (size_t r = 0; r < m.size(); ++r) m[r][c] = col[r];
}

/// Deterministic column order for the inverse channel: by ascending norm,
/// ties broken lexicographically on (Re, Im) down the column. Permuting
/// the users permutes these columns, so the ordered generator matrix — and
/// with it the whole design search — is unchanged.
std::vector<Eigen::Index> canonical_column_order(const CMat& g) {
  std::vector<Eigen::Index> order(static_cast<size_t>(g.cols()));
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&](Eigen::Index a, Eigen::Index b) {
    const double na = g.col(a).squaredNorm(), nb = g.col(b).squaredNorm();
    if (na != nb) return na < nb;
    for (Eigen::Index r = 0; r < g.rows(); ++r) {
      const cplx x = g(r, a), y = g(r, b);
      if (x.real() != y.real()) return x.real() < y.real();
      if (x.imag() != y.imag()) return x.imag() < y.imag();
    }
    return false;
  });
  return order;
}

/// First-quadrant canonicalization of every column (multiplies columns by
/// units, which changes neither row norms of Ã nor row norms of B beyond
/// unit phases). Kept in the candidate set for completeness.
GIntMat canonicalize_columns(const GIntMat& m) {
  GIntMat out = m;
  for (size_t c = 0; c < out[0].size(); ++c)
    set_column(out, c, canonicalize_quadrant(column_of(out, c)));
  return out;
}

/// Columns sorted by (norm, lexicographic) — a permutation variant.
GIntMat sort_columns(const GIntMat& m) {
  const size_t n = m[0].size();
  std::vector<GIntVec> cols(n);
  for (size_t c = 0; c < n; ++c) cols[c] = column_of(m, c);
  std::sort(cols.begin(), cols.end(), [](const GIntVec& a, const GIntVec& b) {
    std::int64_t na = 0, nb = 0;
    for (const auto& e : a) na += e.norm2();
    for (const auto& e : b) nb += e.norm2();
    if (na != nb) return na < nb;
    for (size_t i = 0; i < a.size(); ++i) {
      if (a[i].re != b[i].re) return a[i].re < b[i].re;
      if (a[i].im != b[i].im) return a[i].im < b[i].im;
    }
    return false;
  });
  GIntMat out = m;
  for (size_t c = 0; c < n; ++c) set_column(out, c, cols[c]);
  return out;
}

}  // namespace

IfbDesign make_zfb_design(const CMat& hd) {
  const auto lu = checked_lu(hd);
  return assemble(lu, gint_identity_mat(hd.rows()));
}

IfbDesign ifb_design(const CMat& hd, double snr) {
  if (!(snr >= 0.0) || !std::isfinite(snr))
    throw ConfigError("integer forcing: snr must be finite and nonnegative");
  const auto lu = checked_lu(hd);
  const Eigen::Index ll = hd.rows();
  const CMat hinv = lu.solve(CMat::Identity(ll, ll));

  IfbDesign best = assemble(lu, gint_identity_mat(ll));
  if (snr == 0.0) return best;  // every design rates 0; keep zero forcing
  double best_rate = design_rate(best, snr);
  const auto consider = [&](GIntMat cand) {
    if (!gint_is_unimodular(cand)) return false;
    IfbDesign d = assemble(lu, std::move(cand));
    const double r = design_rate(d, snr);
    if (r > best_rate + 1e-12) {
      best = std::move(d);
      best_rate = r;
      return true;
    }
    return false;
  };

  // LLL-reduce the lattice spanned by the columns of Hd⁻¹, presented in
  // canonical order. basis = G·U with G = Hd⁻¹·Π, so the integer matrix
  // reaching that basis (B = Hd⁻¹·Ã = basis) is Ã = Π·U.
  const std::vector<Eigen::Index> order = canonical_column_order(hinv);
  CMat gen(ll, ll);
  for (Eigen::Index c = 0; c < ll; ++c) gen.col(c) = hinv.col(order[c]);
  const ReducedBasis red = lll_reduce(gen);

  const size_t n = static_cast<size_t>(ll);
  GIntMat lll_cand(n, GIntVec(n, GaussianInt{0, 0}));
  for (size_t r = 0; r < n; ++r)  // row Π(r) of Ã is row r of U
    lll_cand[static_cast<size_t>(order[r])] = red.unimodular[r];
  consider(lll_cand);
  consider(canonicalize_columns(lll_cand));
  consider(sort_columns(lll_cand));

  // Candidate-column pool: lattice points of L(Hd⁻¹) enumerated out to 1.3×
  // the longest reduced basis vector, shortest first, expressed as integer
  // coordinates in the Hd⁻¹ frame (candidate columns of Ã). A dense spectrum
  // (enumeration overflow) just skips the pool phases.
  double radius = 0.0;
  for (Eigen::Index c = 0; c < ll; ++c)
    radius = std::max(radius, red.basis.col(c).norm());
  std::vector<GIntVec> coords;
  try {
    coords = enumerate_short_vectors(red, radius * 1.3 * (1.0 + 1e-9), 200000);
  } catch (const RadiusTooLarge&) {
    coords.clear();
  }
  std::stable_sort(coords.begin(), coords.end(),
                   [&](const GIntVec& a, const GIntVec& b) {
                     return (red.basis * to_cvec(a)).squaredNorm() <
                            (red.basis * to_cvec(b)).squaredNorm();
                   });
  if (coords.size() > 400) coords.resize(400);
  std::vector<GIntVec> pool;
  pool.reserve(coords.size());
  for (const GIntVec& z : coords) {
    GIntVec w(n, GaussianInt{0, 0});
    for (size_t r = 0; r < n; ++r) {
      GaussianInt acc{0, 0};
      for (size_t c = 0; c < n; ++c)
        acc = acc + red.unimodular[r][c] * z[c];
      w[static_cast<size_t>(order[r])] = acc;
    }
    pool.push_back(std::move(w));
  }

  // Greedy single-column replacements from the pool, repeated to a fixed
  // point (an accepted swap can unlock further ones).
  const auto pool_sweep = [&](size_t cap) {
    bool any = false;
    const size_t m = std::min(cap, pool.size());
    for (size_t i = 0; i < m; ++i)
      for (size_t c = 0; c < n; ++c) {
        GIntMat cand = best.a_tilde;
        if (column_of(cand, c) == pool[i]) continue;
        set_column(cand, c, pool[i]);
        if (consider(std::move(cand))) any = true;
      }
    return any;
  };

  // Elementary column operations, col_c ← col_c + u·col_s with unit u: these
  // keep the design unimodular and can trade target-row size against stream
  // power (e.g. shrink Ã rows while the worst antenna row of B is pinned by
  // another column). Greedy passes to a fixed point, with a safety cap.
  const GaussianInt units[4] = {{1, 0}, {-1, 0}, {0, 1}, {0, -1}};
  const auto colops_fix = [&]() {
    bool any = false, improved = true;
    for (int pass = 0; improved && pass < 64; ++pass) {
      improved = false;
      for (size_t c = 0; c < n; ++c)
        for (size_t s = 0; s < n; ++s) {
          if (s == c) continue;
          for (const GaussianInt& u : units) {
            GIntMat cand = best.a_tilde;
            for (size_t r = 0; r < n; ++r)
              cand[r][c] = cand[r][c] + u * cand[r][s];
            if (consider(std::move(cand))) improved = any = true;
          }
        }
    }
    return any;
  };

  // Alternate the two local moves until neither improves.
  const auto local_opt = [&](size_t cap) {
    for (int round = 0; round < 16; ++round) {
      bool a = false;
      for (int pass = 0; pass < 16 && pool_sweep(cap); ++pass) a = true;
      const bool b = colops_fix();
      if (!a && !b) break;
    }
  };
  local_opt(pool.size());

  // Basin hopping: the greedy fixed point is a local optimum; forced random
  // column operations (unimodularity preserved) followed by re-optimization
  // escape it. The generator seed is a fixed constant, so the whole search
  // stays deterministic in the channel matrix, and hops act on columns only,
  // which keeps it equivariant under user (row) reordering.
  IfbDesign champion = best;
  double champion_rate = best_rate;
  std::mt19937_64 hop_rng(0x9e3779b97f4a7c15ULL);
  std::uniform_int_distribution<size_t> pick(0, n - 1);
  std::uniform_int_distribution<int> upick(0, 3);
  for (int restart = 0; n >= 2 && restart < 6; ++restart) {
    GIntMat seed = champion.a_tilde;
    for (int k = 0; k < 2; ++k) {
      const size_t c = pick(hop_rng);
      size_t s = pick(hop_rng);
      while (s == c) s = pick(hop_rng);
      const GaussianInt u = units[upick(hop_rng)];
      for (size_t r = 0; r < n; ++r) seed[r][c] = seed[r][c] + u * seed[r][s];
    }
    best = assemble(lu, std::move(seed));
    best_rate = design_rate(best, snr);
    local_opt(std::min<size_t>(100, pool.size()));
    if (best_rate > champion_rate + 1e-12) {
      champion = best;
      champion_rate = best_rate;
    }
  }
  return champion;
}

RateReport ifb_sum_rate(const IfbDesign& design, double snr, std::int64_t p) {
  validate_gaussian_prime(p);
  if (!(snr >= 0.0) || !std::isfinite(snr))
    throw ConfigError("integer forcing: snr must be finite and nonnegative");
  const size_t n = design.a_tilde.size();
  if (n == 0 || design.a_tilde[0].size() != n)
    throw ConfigError("integer forcing: design matrix must be square");
  if (design.b.rows() != static_cast<Eigen::Index>(n) ||
      design.b.cols() != static_cast<Eigen::Index>(n))
    throw ConfigError("integer forcing: precoder dimensions mismatch");
  if (!(design.max_row_power > 0.0) || !std::isfinite(design.max_row_power))
    throw ConfigError("integer forcing: max_row_power must be positive");

  if (fq_rank(design.a_tilde, p) != static_cast<int>(n)) {
    std::ostringstream os;
    os << "integer forcing: design matrix is singular modulo " << p;
    throw RankDeficientModP(os.str());
  }

  RateReport report;
  report.per_receiver_rates.resize(n, 0.0);
  report.selected.resize(n);
  std::iota(report.selected.begin(), report.selected.end(), 0);
  if (snr > 0.0) {
    const double snr_eff = snr / design.max_row_power;
    for (size_t l = 0; l < n; ++l) {
      const double r =
          computation_rate(to_cvec(design.a_tilde[l]), design.a_tilde[l], snr_eff);
      report.per_receiver_rates[l] = r;
      report.sum_rate += r;
    }
  }
  report.outage = report.sum_rate == 0.0;
  return report;
}

}  // namespace cfdas
