// SPDX-License-Identifier: MIT
/**
 * @file quantized.cpp
 * @brief Discrete noise pmf, quantized rate formulas, exact symbol chain.
 */
#include "cfdas/quantized.hpp"

#include <cmath>
#include <sstream>

namespace cfdas {

namespace {

/// Gaussian tail Q(x) = P(N(0,1) > x).
double gauss_q(double x) { return 0.5 * std::erfc(x / std::sqrt(2.0)); }

std::int64_t mod_pos_int(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

void validate_grid(const QuantGrid& g) {
  validate_gaussian_prime(g.p);
  if (g.tau <= 0.0 || g.snr <= 0.0)
    throw Error("quantized: grid requires positive tau and snr");
  if (std::abs(g.tau * g.tau - 6.0 * g.snr) > 1e-9 * g.tau * g.tau)
    throw Error("quantized: grid violates tau^2 = 6 snr");
}

}  // namespace

QuantGrid make_quant_grid(std::int64_t p, double snr) {
  validate_gaussian_prime(p);
  if (snr <= 0.0) throw Error("make_quant_grid: snr must be positive");
  return {p, std::sqrt(6.0 * snr), snr};
}

NoisePmf effective_noise_pmf(const CVec& h, const GIntVec& a, const QuantGrid& grid,
                             int m_max) {
  validate_grid(grid);
  if (m_max < 0) throw Error("effective_noise_pmf: m_max must be nonnegative");
  const double sigma2 = effective_noise_variance(h, a, grid.snr).sigma2;  // ZeroVector propagates
  const double pp = static_cast<double>(grid.p);
  const double sigma_xi2 = (pp / grid.tau) * (pp / grid.tau) * sigma2;
  const double sigma_eps = std::sqrt(sigma_xi2 / 2.0);

  // Probability that the quantized residual falls in the unit cell at x.
  auto phi = [&](double x) {
    return gauss_q((2.0 * x - 1.0) / (2.0 * sigma_eps)) -
           gauss_q((2.0 * x + 1.0) / (2.0 * sigma_eps));
  };

  NoisePmf pmf;
  pmf.p = grid.p;
  pmf.sigma_eps = sigma_eps;
  pmf.probs.assign(static_cast<size_t>(grid.p), 0.0);

  // Balanced wrap sum: every residue class contributes the same number of
  // unit cells (2·m_max + 1), centered on its smallest-magnitude
  // representative. An uneven cell count per class would bias the
  // renormalized tail toward the classes with more cells; this form keeps
  // the truncation even-handed (exactly uniform in the wide-sigma limit).
  // The noise is symmetric, so v and p - v share one computed value.
  const std::int64_t half = (grid.p - 1) / 2;
  for (std::int64_t v = 0; v <= half; ++v) {
    double pv = 0.0;
    for (int m = -m_max; m <= m_max; ++m)
      pv += phi(std::abs(static_cast<double>(v) + pp * static_cast<double>(m)));
    pmf.probs[static_cast<size_t>(v)] = pv;
    if (v > 0) pmf.probs[static_cast<size_t>(grid.p - v)] = pv;
  }

  double mass = 0.0;
  for (double v : pmf.probs) mass += v;
  pmf.raw_mass = mass;
  if (mass <= 0.0) throw Error("effective_noise_pmf: degenerate mass");
  for (double& v : pmf.probs) v /= mass;
  return pmf;
}

double noise_entropy(const NoisePmf& pmf) {
  if (pmf.probs.empty()) throw Error("noise_entropy: empty pmf");
  double h = 0.0;
  for (double v : pmf.probs) {
    if (v < -1e-12) throw Error("noise_entropy: negative probability");
    if (v > 0.0) h -= v * std::log2(v);
  }
  return 2.0 * h;  // complex noise = two i.i.d. real components
}

RateReport qcof_sum_rate(const CMat& h, double snr, std::int64_t p, double r0) {
  SystemMatrix s = build_system_matrix(h, snr, p);
  const QuantGrid grid = make_quant_grid(p, snr);
  for (Eigen::Index l = 0; l < h.rows(); ++l) {
    const CVec hl = h.row(l).transpose();
    const NoisePmf pmf = effective_noise_pmf(hl, s.a[static_cast<size_t>(l)], grid);
    const double rate =
        std::max(0.0, 2.0 * std::log2(static_cast<double>(p)) - noise_entropy(pmf));
    s.per_row_rate[static_cast<size_t>(l)] = rate;
  }
  return cof_sum_rate(s, r0);  // same decomposition/clamp structure
}

RateReport lqf_sum_rate(const CMat& h, double snr, std::int64_t p, double r0) {
  const double symbol_bits = 2.0 * std::log2(static_cast<double>(p));
  if (symbol_bits > r0) {
    std::ostringstream os;
    os << "lqf_sum_rate: backhaul r0 = " << r0 << " cannot carry one symbol of "
       << symbol_bits << " bits";
    throw BackhaulTooSmall(os.str());
  }
  SystemMatrix s = build_system_matrix(h, snr, p);
  const int rows = static_cast<int>(s.q.size());
  const int cols = rows == 0 ? 0 : static_cast<int>(s.q[0].size());
  if (rows != cols) throw Error("lqf_sum_rate: system matrix must be square");
  const int rank = fq_rank(s.q);
  if (rank < cols) {
    std::ostringstream os;
    os << "lqf_sum_rate: system matrix rank " << rank << " < " << cols;
    throw RankDeficient(os.str());
  }
  const QuantGrid grid = make_quant_grid(p, snr);
  RateReport rep;
  rep.per_receiver_rates.resize(static_cast<size_t>(rows));
  for (Eigen::Index l = 0; l < h.rows(); ++l) {
    const CVec hl = h.row(l).transpose();
    const NoisePmf pmf = effective_noise_pmf(hl, s.a[static_cast<size_t>(l)], grid);
    const double rate = std::max(0.0, symbol_bits - noise_entropy(pmf));
    rep.per_receiver_rates[static_cast<size_t>(l)] = rate;
    rep.sum_rate += rate;
  }
  rep.outage = rep.sum_rate == 0.0;
  return rep;
}

RateReport rqcof_sum_rate(const CMat& hd, double snr, std::int64_t p, double r0) {
  if (r0 < 0.0) throw Error("rqcof_sum_rate: r0 must be nonnegative");
  if (hd.rows() != hd.cols())
    throw Error("rqcof_sum_rate: effective downlink channel must be square");
  SystemMatrix s = build_system_matrix(hd, snr, p);
  const int n = static_cast<int>(hd.rows());
  const int rank = fq_rank(s.q);
  if (rank < n) {
    std::ostringstream os;
    os << "rqcof_sum_rate: reduced coefficient matrix rank " << rank << " < " << n;
    throw RankDeficient(os.str());
  }
  const QuantGrid grid = make_quant_grid(p, snr);
  const double symbol_bits = 2.0 * std::log2(static_cast<double>(p));
  RateReport rep;
  rep.per_receiver_rates.resize(static_cast<size_t>(n));
  for (int l = 0; l < n; ++l) {
    const CVec hl = hd.row(l).transpose();
    const NoisePmf pmf = effective_noise_pmf(hl, s.a[static_cast<size_t>(l)], grid);
    const double rate =
        std::min(r0, std::max(0.0, symbol_bits - noise_entropy(pmf)));
    rep.per_receiver_rates[static_cast<size_t>(l)] = rate;
    rep.sum_rate += rate;
  }
  rep.outage = rep.sum_rate == 0.0;
  return rep;
}

// ---------------------------------------------------------------------------
// Symbol-exact chain.
// ---------------------------------------------------------------------------

double mod_interval(double v, double width) {
  double r = v - width * std::floor(v / width);
  if (r >= width) r -= width;  // guard against floor rounding at the edge
  if (r < 0.0) r += width;
  return r;
}

double mod_interval_centered(double v, double width) {
  double r = v - width * std::floor(v / width + 0.5);
  if (r >= width / 2.0) r -= width;
  if (r < -width / 2.0) r += width;
  return r;
}

std::int64_t quantize_fold(double v, const QuantGrid& grid) {
  const double scaled = v * static_cast<double>(grid.p) / grid.tau;
  const auto n = static_cast<std::int64_t>(std::floor(scaled + 0.5));
  return mod_pos_int(n, grid.p);
}

CMat quant_modulate(const QuantGrid& grid, const FqMat& symbols, const CMat& dithers) {
  validate_grid(grid);
  const auto rows = static_cast<Eigen::Index>(symbols.size());
  if (rows == 0) throw Error("quant_modulate: no symbols");
  const auto cols = static_cast<Eigen::Index>(symbols[0].size());
  if (dithers.rows() != rows || dithers.cols() != cols)
    throw Error("quant_modulate: dither shape mismatch");
  const double step = grid.tau / static_cast<double>(grid.p);
  CMat x(rows, cols);
  for (Eigen::Index k = 0; k < rows; ++k)
    for (Eigen::Index t = 0; t < cols; ++t) {
      const FqElem& c = symbols[static_cast<size_t>(k)][static_cast<size_t>(t)];
      if (c.p != grid.p) throw Error("quant_modulate: symbol modulus mismatch");
      const cplx point(step * static_cast<double>(c.a), step * static_cast<double>(c.b));
      const cplx v = point + dithers(k, t);
      x(k, t) = cplx(mod_interval_centered(v.real(), grid.tau),
                     mod_interval_centered(v.imag(), grid.tau));
    }
  return x;
}

CVec mmse_alphas(const CMat& h, const GIntMat& a, double snr) {
  if (static_cast<size_t>(h.rows()) != a.size())
    throw Error("mmse_alphas: row count mismatch");
  CVec alphas(h.rows());
  for (Eigen::Index l = 0; l < h.rows(); ++l)
    alphas(l) =
        effective_noise_variance(h.row(l).transpose(), a[static_cast<size_t>(l)], snr)
            .alpha;
  return alphas;
}

namespace {

void validate_chain_shapes(const CMat& h, const GIntMat& a, const FqMat& symbols,
                           const CMat& dithers, const CMat& noise, const CVec& alphas) {
  const Eigen::Index l = h.rows(), k = h.cols();
  if (static_cast<Eigen::Index>(a.size()) != l ||
      (l > 0 && static_cast<Eigen::Index>(a[0].size()) != k))
    throw Error("quantized chain: coefficient matrix shape mismatch");
  if (static_cast<Eigen::Index>(symbols.size()) != k)
    throw Error("quantized chain: one symbol row per user required");
  const auto t = static_cast<Eigen::Index>(symbols.empty() ? 0 : symbols[0].size());
  if (dithers.rows() != k || dithers.cols() != t)
    throw Error("quantized chain: dither shape mismatch");
  if (noise.rows() != l || noise.cols() != t)
    throw Error("quantized chain: noise shape mismatch");
  if (alphas.size() != l)
    throw Error("quantized chain: one alpha per receiver required");
}

}  // namespace

FqMat simulate_quantized_symbols(const CMat& h, const GIntMat& a,
                                 const QuantGrid& grid, const FqMat& symbols,
                                 const CMat& dithers, const CMat& noise,
                                 const CVec& alphas) {
  validate_grid(grid);
  validate_chain_shapes(h, a, symbols, dithers, noise, alphas);
  const CMat x = quant_modulate(grid, symbols, dithers);
  const CMat y = h * x + noise;

  const Eigen::Index rows = h.rows();
  const auto t = static_cast<Eigen::Index>(symbols[0].size());
  FqMat u(static_cast<size_t>(rows),
          FqVec(static_cast<size_t>(t), FqElem{0, 0, grid.p}));
  for (Eigen::Index l = 0; l < rows; ++l) {
    // Dither cancellation uses the exact integer coefficients.
    CVec arow = to_cvec(a[static_cast<size_t>(l)]);
    for (Eigen::Index s = 0; s < t; ++s) {
      cplx r = alphas(l) * y(l, s);
      for (Eigen::Index k = 0; k < h.cols(); ++k) r -= arow(k) * dithers(k, s);
      u[static_cast<size_t>(l)][static_cast<size_t>(s)] = {
          quantize_fold(r.real(), grid), quantize_fold(r.imag(), grid), grid.p};
    }
  }
  return u;
}

FqMat quantized_symbols_algebraic(const CMat& h, const GIntMat& a,
                                  const QuantGrid& grid, const FqMat& symbols,
                                  const CMat& dithers, const CMat& noise,
                                  const CVec& alphas) {
  validate_grid(grid);
  validate_chain_shapes(h, a, symbols, dithers, noise, alphas);
  const CMat x = quant_modulate(grid, symbols, dithers);

  const Eigen::Index rows = h.rows();
  const Eigen::Index k = h.cols();
  const auto t = static_cast<Eigen::Index>(symbols[0].size());
  FqMat u(static_cast<size_t>(rows),
          FqVec(static_cast<size_t>(t), FqElem{0, 0, grid.p}));
  for (Eigen::Index l = 0; l < rows; ++l) {
    const GIntVec& al = a[static_cast<size_t>(l)];
    for (Eigen::Index s = 0; s < t; ++s) {
      // ξ = Σ_k (α h_k − a_k) x_k + α z: everything the integer part of the
      // receiver cannot absorb.
      cplx xi = alphas(l) * noise(l, s);
      for (Eigen::Index kk = 0; kk < k; ++kk)
        xi += (alphas(l) * h(l, kk) - al[static_cast<size_t>(kk)].to_complex()) * x(kk, s);
      // ζ components: round((p/τ)·ξ) folded into Z_p; quantize_fold applies
      // the p/τ scaling itself, so ξ goes in directly.
      const std::int64_t zr = quantize_fold(xi.real(), grid);
      const std::int64_t zi = quantize_fold(xi.imag(), grid);
      // ⊕ q_k c_k: exact integer accumulation, folded at the end.
      std::int64_t acc_re = 0, acc_im = 0;
      for (Eigen::Index kk = 0; kk < k; ++kk) {
        const GaussianInt& q = al[static_cast<size_t>(kk)];
        const FqElem& c = symbols[static_cast<size_t>(kk)][static_cast<size_t>(s)];
        acc_re += q.re * c.a - q.im * c.b;
        acc_im += q.re * c.b + q.im * c.a;
      }
      u[static_cast<size_t>(l)][static_cast<size_t>(s)] = {
          mod_pos_int(acc_re + zr, grid.p), mod_pos_int(acc_im + zi, grid.p), grid.p};
    }
  }
  return u;
}

}  // namespace cfdas
