// SPDX-License-Identifier: MIT
/**
 * @file test_quantized.cpp
 * @brief Quantized-variant tests.
 *
 * The pmf formula is validated against a Monte Carlo histogram of the
 * actual folding process (round a Gaussian, reduce mod p), and the
 * symbolic chain against its algebraic closed form, bit-exactly.
 */
#include <doctest.h>

#include <cmath>
#include <random>

#include "cfdas/quantized.hpp"

using namespace cfdas;

namespace {

/// Build a pmf whose σ_ε equals `s` exactly: with h = [1], a = [m],
/// σ_ξ² = p²·m²/(6(1+snr)), so snr = p²m²/(12 s²) − 1 for suitable m.
NoisePmf pmf_with_sigma(std::int64_t p, double s, int m_max = 2) {
  const double pd = static_cast<double>(p);
  std::int64_t m = 1;
  while (pd * pd * static_cast<double>(m * m) <= 12.0 * s * s) ++m;
  const double snr =
      pd * pd * static_cast<double>(m * m) / (12.0 * s * s) - 1.0;
  CVec h(1);
  h << cplx(1.0, 0.0);
  NoisePmf pmf = effective_noise_pmf(h, {{m, 0}}, make_quant_grid(p, snr), m_max);
  REQUIRE(pmf.sigma_eps == doctest::Approx(s).epsilon(1e-9));
  return pmf;
}

/// Empirical pmf of round(N(0, σ_ε²)) mod p.
std::vector<double> mc_histogram(std::int64_t p, double sigma_eps, int n,
                                 std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, sigma_eps);
  std::vector<double> hist(static_cast<size_t>(p), 0.0);
  for (int i = 0; i < n; ++i) {
    const auto q = static_cast<std::int64_t>(std::floor(gauss(rng) + 0.5));
    hist[static_cast<size_t>(((q % p) + p) % p)] += 1.0 / n;
  }
  return hist;
}

double total_variation(const std::vector<double>& a, const std::vector<double>& b) {
  double tv = 0.0;
  for (size_t i = 0; i < a.size(); ++i) tv += std::abs(a[i] - b[i]);
  return tv / 2.0;
}

CMat rayleigh_mat(int rows, int cols, std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  CMat h(rows, cols);
  for (int r = 0; r < rows; ++r)
    for (int c = 0; c < cols; ++c) h(r, c) = cplx(gauss(rng), gauss(rng)) / std::sqrt(2.0);
  return h;
}

}  // namespace

TEST_CASE("quantization grid ties tau to snr") {
  QuantGrid g = make_quant_grid(7, 10.0);
  CHECK(g.tau == doctest::Approx(std::sqrt(60.0)).epsilon(1e-12));
  CHECK_THROWS_AS(make_quant_grid(13, 10.0), InvalidPrime);
  CHECK_THROWS_AS(make_quant_grid(7, 0.0), Error);
}

TEST_CASE("noise pmf: normalization, symmetry, limits") {
  CVec h(1);
  h << cplx(1.0, 0.0);

  SUBCASE("huge snr concentrates at zero") {
    NoisePmf pmf = effective_noise_pmf(h, {{1, 0}}, make_quant_grid(7, 1e8));
    CHECK(pmf.probs[0] == doctest::Approx(1.0).epsilon(1e-9));
  }
  SUBCASE("wide residual flattens toward uniform") {
    // a = [1000] inflates σ² so σ_ε ≫ p; even truncated sums renormalize
    // to nearly uniform. A larger m_max sharpens nothing material.
    NoisePmf pmf = effective_noise_pmf(h, {{1000, 0}}, make_quant_grid(7, 1.0), 5);
    for (double v : pmf.probs) CHECK(v == doctest::Approx(1.0 / 7.0).epsilon(2e-3));
  }
  SUBCASE("normalization and symmetry across sigma range") {
    for (std::int64_t p : {7LL, 11LL}) {
      for (double s : {0.3, 1.0, 3.0, 10.0}) {
        NoisePmf pmf = pmf_with_sigma(p, s);
        double mass = 0.0;
        for (double v : pmf.probs) {
          CHECK(v >= 0.0);
          mass += v;
        }
        CHECK(mass == doctest::Approx(1.0).epsilon(1e-9));
        for (std::int64_t v = 1; v < p; ++v)
          CHECK(pmf.probs[static_cast<size_t>(v)] ==
                doctest::Approx(pmf.probs[static_cast<size_t>(p - v)]).epsilon(1e-12));
      }
    }
  }
  SUBCASE("zero coefficient vector rejected") {
    CHECK_THROWS_AS(effective_noise_pmf(h, {{0, 0}}, make_quant_grid(7, 1.0)),
                    ZeroVector);
  }
}

TEST_CASE("noise pmf matches the Monte Carlo folding histogram") {
  std::mt19937 rng(79);
  // The acceptance gate runs the full 10⁶-sample grid; this is the fast
  // version at 2·10⁵ samples with a proportionally wider tolerance.
  for (std::int64_t p : {7LL, 11LL}) {
    for (double s : {0.3, 1.0, 3.0}) {
      NoisePmf pmf = pmf_with_sigma(p, s);
      auto hist = mc_histogram(p, s, 200000, rng);
      CHECK(total_variation(pmf.probs, hist) <= 0.02);
    }
  }
}

TEST_CASE("noise entropy: point mass, uniform, frozen example") {
  NoisePmf point{7, {1, 0, 0, 0, 0, 0, 0}, 0.01, 1.0};
  CHECK(noise_entropy(point) == doctest::Approx(0.0));

  NoisePmf uniform{7, std::vector<double>(7, 1.0 / 7.0), 100.0, 1.0};
  CHECK(noise_entropy(uniform) == doctest::Approx(2.0 * std::log2(7.0)).epsilon(1e-12));

  NoisePmf frozen{7, {0.9, 0.05, 0, 0, 0, 0, 0.05}, 0.5, 1.0};
  CHECK(noise_entropy(frozen) == doctest::Approx(1.138).epsilon(1e-3));
}

TEST_CASE("uplink quantized rate: noiseless cap and weak-row drag") {
  const std::int64_t p = 7;
  const double cap = 2.0 * std::log2(7.0);
  CMat h = CMat::Identity(3, 3);
  RateReport r = qcof_sum_rate(h, 1e8, p, 10.0);
  CHECK(r.sum_rate == doctest::Approx(3.0 * cap).epsilon(1e-6));

  // One nearly dead receiver drags its (singleton) block toward zero. The
  // floor is not exactly zero: the dead row's residual has σ_ε ≈ 2.02, and
  // a mod-7 wrapped Gaussian at that width still deviates from uniform by
  // ρ ≈ 2·exp(−2π²σ_ε²/p²) ≈ 0.39, leaving ≈ ρ²/(2 ln 2) ≈ 0.10 bit.
  CMat h2 = CMat::Identity(2, 2);
  h2(1, 1) = 1e-6;
  RateReport r2 = qcof_sum_rate(h2, 100.0, p, 100.0);
  CHECK(r2.per_receiver_rates[1] <= 0.15);
  CHECK(r2.per_receiver_rates[0] > 1.0);
}

TEST_CASE("quantization never beats the unquantized rate (within approximation error)") {
  std::mt19937 rng(83);
  int flagged = 0;
  for (int trial = 0; trial < 60; ++trial) {
    CMat h = rayleigh_mat(3, 3, rng);
    double snr = (trial % 2 == 0) ? 10.0 : 316.0;
    SystemMatrix s = build_system_matrix(h, snr, 7);
    QuantGrid grid = make_quant_grid(7, snr);
    for (int l = 0; l < 3; ++l) {
      const CVec hl = h.row(l).transpose();
      const double qrate =
          2.0 * std::log2(7.0) -
          noise_entropy(effective_noise_pmf(hl, s.a[static_cast<size_t>(l)], grid));
      const double urate = s.per_row_rate[static_cast<size_t>(l)];
      CHECK(qrate <= urate + 2.0);  // hard sanity band
      if (qrate > urate + 0.05) ++flagged;
    }
  }
  // Gaussian-approximation slack: genuine dominance may be crossed only
  // within modeling error; surface it without failing the suite.
  WARN_LE(flagged, 3);
}

TEST_CASE("linear one-shot uplink: cap, backhaul floor, dominance over block-min") {
  const std::int64_t p = 7;
  const double cap = 2.0 * std::log2(7.0);
  CMat h = CMat::Identity(3, 3);
  CHECK(lqf_sum_rate(h, 1e8, p, 100.0).sum_rate == doctest::Approx(3 * cap).epsilon(1e-6));
  CHECK_THROWS_AS(lqf_sum_rate(h, 1e8, p, 5.0), BackhaulTooSmall);

  std::mt19937 rng(89);
  std::bernoulli_distribution coin(0.6);
  int done = 0;
  while (done < 20) {
    CMat hh = rayleigh_mat(3, 3, rng);
    for (int r = 0; r < 3; ++r)
      for (int c = 0; c < 3; ++c)
        if (!coin(rng)) hh(r, c) = 0.0;
    RateReport lqf, qcof;
    try {
      lqf = lqf_sum_rate(hh, 50.0, p, 100.0);
      qcof = qcof_sum_rate(hh, 50.0, p, 100.0);
    } catch (const RankDeficient&) {
      continue;
    }
    // With r0 above every per-row value, summing rows dominates block-mins.
    CHECK(lqf.sum_rate >= qcof.sum_rate - 1e-9);
    ++done;
  }
}

TEST_CASE("downlink quantized rate: caps and conventions") {
  const std::int64_t p = 7;
  const double cap = 2.0 * std::log2(7.0);
  CMat hd = CMat::Identity(4, 4);
  CHECK(rqcof_sum_rate(hd, 1e8, p, 100.0).sum_rate ==
        doctest::Approx(4 * cap).epsilon(1e-6));
  CHECK(rqcof_sum_rate(hd, 1e8, p, 3.0).sum_rate == doctest::Approx(12.0).epsilon(1e-6));
  CHECK(rqcof_sum_rate(hd, 10.0, p, 0.0).sum_rate == 0.0);
}

TEST_CASE("interval folding and sawtooth commutation") {
  QuantGrid g = make_quant_grid(7, 3.0);
  CHECK(mod_interval(-1.0, 4.0) == doctest::Approx(3.0));
  CHECK(mod_interval(9.5, 4.0) == doctest::Approx(1.5));
  CHECK(mod_interval_centered(3.9, 4.0) == doctest::Approx(-0.1));

  std::mt19937 rng(97);
  std::uniform_real_distribution<double> wide(-50.0 * g.tau, 50.0 * g.tau);
  for (int i = 0; i < 100000; ++i) {
    const double v = wide(rng);
    // Quantize-then-fold equals fold-then-quantize(-then-fold).
    CHECK(quantize_fold(mod_interval(v, g.tau), g) == quantize_fold(v, g));
  }
}

TEST_CASE("receiver chain equals the algebraic symbol form, bit-exactly") {
  std::mt19937 rng(101);
  std::normal_distribution<double> gauss(0.0, 1.0);
  int done = 0;
  while (done < 200) {
    const std::int64_t p = (done % 2 == 0) ? 7 : 11;
    const int k = 2 + done % 2, l = k;
    const double snr = (done % 3 == 0) ? 1.0 : 20.0;
    CMat h = rayleigh_mat(l, k, rng);
    SystemMatrix s = build_system_matrix(h, snr, p);
    QuantGrid grid = make_quant_grid(p, snr);
    const int t = 4;

    FqMat c(static_cast<size_t>(k), FqVec(static_cast<size_t>(t)));
    std::uniform_int_distribution<std::int64_t> sym(0, p - 1);
    for (auto& row : c)
      for (auto& e : row) e = {sym(rng), sym(rng), p};
    CMat dith(k, t), noise(l, t);
    std::uniform_real_distribution<double> unif(0.0, grid.tau);
    for (int r = 0; r < k; ++r)
      for (int s2 = 0; s2 < t; ++s2) dith(r, s2) = cplx(unif(rng), unif(rng));
    for (int r = 0; r < l; ++r)
      for (int s2 = 0; s2 < t; ++s2)
        noise(r, s2) = cplx(gauss(rng), gauss(rng)) / std::sqrt(2.0);

    const CVec alphas = (done % 5 == 0) ? CVec::Ones(l).eval()
                                        : mmse_alphas(h, s.a, snr);
    FqMat chain = simulate_quantized_symbols(h, s.a, grid, c, dith, noise, alphas);
    FqMat algebra = quantized_symbols_algebraic(h, s.a, grid, c, dith, noise, alphas);
    CHECK(chain == algebra);
    ++done;
  }
}

TEST_CASE("integer channel with unit scaling and no noise is error-free") {
  std::mt19937 rng(103);
  const std::int64_t p = 7;
  const double snr = 10.0;
  QuantGrid grid = make_quant_grid(p, snr);
  // H = A: an exactly integer channel. α = 1 leaves no residual at all.
  GIntMat a = {{{1, 0}, {2, -1}}, {{0, 1}, {1, 1}}};
  CMat h = to_cmat(a);
  const int t = 8;
  FqMat c(2, FqVec(static_cast<size_t>(t)));
  std::uniform_int_distribution<std::int64_t> sym(0, p - 1);
  for (auto& row : c)
    for (auto& e : row) e = {sym(rng), sym(rng), p};
  CMat dith(2, t);
  std::uniform_real_distribution<double> unif(0.0, grid.tau);
  for (int r = 0; r < 2; ++r)
    for (int s = 0; s < t; ++s) dith(r, s) = cplx(unif(rng), unif(rng));
  CMat zero = CMat::Zero(2, t);

  FqMat u = simulate_quantized_symbols(h, a, grid, c, dith, zero, CVec::Ones(2));
  // Expected: u = ⊕_k q_k c_k with no noise symbol at all.
  FqMat q = mod_p_reduce(a, p);
  for (int s = 0; s < t; ++s) {
    FqVec col(2);
    for (int k = 0; k < 2; ++k) col[static_cast<size_t>(k)] = c[static_cast<size_t>(k)][static_cast<size_t>(s)];
    FqVec expect = fq_matvec(q, col);
    for (int l = 0; l < 2; ++l)
      CHECK(u[static_cast<size_t>(l)][static_cast<size_t>(s)] == expect[static_cast<size_t>(l)]);
  }
}

TEST_CASE("single-user chain matches the hand formula") {
  std::mt19937 rng(107);
  std::normal_distribution<double> gauss(0.0, 1.0);
  const std::int64_t p = 7;
  const double snr = 5.0;
  QuantGrid grid = make_quant_grid(p, snr);
  CMat h(1, 1);
  h << cplx(1.0, 0.0);
  GIntMat a = {{{1, 0}}};
  std::uniform_int_distribution<std::int64_t> sym(0, p - 1);
  std::uniform_real_distribution<double> unif(0.0, grid.tau);
  for (int trial = 0; trial < 100; ++trial) {
    FqMat c = {{{sym(rng), sym(rng), p}}};
    CMat dith(1, 1), noise(1, 1);
    dith(0, 0) = cplx(unif(rng), unif(rng));
    noise(0, 0) = cplx(gauss(rng), gauss(rng)) / std::sqrt(2.0);
    FqMat u = simulate_quantized_symbols(h, a, grid, c, dith, noise, CVec::Ones(1));
    // u = c ⊕ fold(round((p/τ)·z)).
    FqElem zeta{quantize_fold(noise(0, 0).real(), grid),
                quantize_fold(noise(0, 0).imag(), grid), p};
    CHECK(u[0][0] == fq_add(c[0][0], zeta));
  }
}
