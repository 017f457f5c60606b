// SPDX-License-Identifier: MIT
/**
 * @file test_baselines.cpp
 * @brief Reference-scheme rates: closed-form anchors, brute-force grid
 *        oracles for the minimax capacity solver, limits, and dominance.
 */
#include <algorithm>
#include <cmath>
#include <complex>
#include <random>
#include <vector>

#include "cfdas/baselines.hpp"
#include "cfdas/errors.hpp"
#include "cfdas/lattice.hpp"
#include "doctest.h"

using namespace cfdas;

namespace {

CMat rayleigh(Eigen::Index rows, Eigen::Index cols, std::mt19937_64& rng) {
  std::normal_distribution<double> gauss(0.0, std::sqrt(0.5));
  CMat h(rows, cols);
  for (Eigen::Index i = 0; i < rows; ++i)
    for (Eigen::Index j = 0; j < cols; ++j) h(i, j) = cplx(gauss(rng), gauss(rng));
  return h;
}

/// Trapezoid-rule oracle for the ring-model integral; independent of the
/// adaptive Simpson implementation under test.
double ring_integral_oracle(double gamma, double snr, double r) {
  const double c = snr * (1.0 - std::pow(2.0, -r));
  const int n = 40000;
  double sum = 0.0;
  for (int i = 0; i <= n; ++i) {
    const double theta = static_cast<double>(i) / n;
    const double gain = 1.0 + 2.0 * gamma * std::cos(2.0 * std::acos(-1.0) * theta);
    const double v = std::log2(1.0 + c * gain * gain);
    sum += (i == 0 || i == n) ? 0.5 * v : v;
  }
  return sum / n;
}

}  // namespace

TEST_CASE("qmf: zero backhaul and zero snr give rate zero") {
  CMat h(2, 2);
  h << cplx(1, 0), cplx(0.5, 0.25), cplx(-0.75, 1), cplx(0, -0.5);
  CHECK(qmf_rate(h, 10.0, 0.0) == 0.0);
  CHECK(qmf_rate(h, 0.0, 3.0) == 0.0);
}

TEST_CASE("qmf: saturates to the full log-det bound at large backhaul") {
  std::mt19937_64 rng(7001);
  for (int t = 0; t < 6; ++t) {
    const Eigen::Index ll = 2 + t % 3, kk = 1 + t % 2;
    const CMat h = rayleigh(ll, kk, rng);
    const double snr = (t % 2) ? 100.0 : 4.0;
    const CMat g = CMat::Identity(kk, kk) + snr * h.adjoint() * h;
    const double full = std::log2(std::real(g.determinant()));
    const double rate = qmf_rate(h, snr, 60.0);
    CHECK(rate == doctest::Approx(full).epsilon(1e-9));
  }
}

TEST_CASE("qmf: high snr pushes the rate toward the backhaul cut") {
  CMat h(2, 1);
  h << cplx(1, 0), cplx(0.5, -0.5);
  const double rate = qmf_rate(h, 1e6, 1.0);
  CHECK(rate <= 2.0 + 1e-12);
  CHECK(rate >= 0.98 * 2.0);
}

TEST_CASE("qmf: monotone in backhaul and snr") {
  std::mt19937_64 rng(7002);
  const CMat h = rayleigh(3, 2, rng);
  double prev = 0.0;
  for (double r0 : {0.5, 1.0, 2.0, 4.0, 8.0}) {
    const double v = qmf_rate(h, 10.0, r0);
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
  CHECK(qmf_rate(h, 20.0, 2.0) >= qmf_rate(h, 10.0, 2.0) - 1e-9);
}

TEST_CASE("qmf: relay count above the enumeration limit is rejected") {
  const CMat h = CMat::Ones(13, 1);
  CHECK_THROWS_AS(qmf_rate(h, 1.0, 1.0), TooManyRelays);
}

TEST_CASE("ring qmf: zero endpoints and finite model rejection") {
  WynerParams params;
  params.gamma = 0.6;
  params.snr = 10.0;
  params.r0 = 0.0;
  CHECK(qmf_wyner_per_user(params) == 0.0);
  params.r0 = 2.0;
  params.snr = 0.0;
  CHECK(qmf_wyner_per_user(params) == 0.0);
  params.snr = 10.0;
  params.l = 4;
  CHECK_THROWS_AS(qmf_wyner_per_user(params), ConfigError);
}

TEST_CASE("ring qmf: fixed-point residual against a trapezoid oracle") {
  WynerParams params;
  params.gamma = 0.7;
  params.snr = std::pow(10.0, 2.5);
  for (double r0 : {1.0, 3.0, 7.0}) {
    params.r0 = r0;
    const double rate = qmf_wyner_per_user(params);
    CHECK(rate > 0.0);
    CHECK(rate < r0);
    // The implementation returns F(r*) with F(r*) = r0 − r*, so r* = r0 − rate.
    const double r_star = r0 - rate;
    const double f_oracle = ring_integral_oracle(params.gamma, params.snr, r_star);
    CHECK(std::abs(f_oracle - rate) <= 1e-6);
  }
}

TEST_CASE("ring qmf: interference-free case matches the scalar fixed point") {
  WynerParams params;
  params.gamma = 0.0;
  params.snr = 50.0;
  params.r0 = 4.0;
  // F(r) = log2(1 + snr(1−2^{−r})): solve F(r) = r0 − r by bisection.
  double lo = 0.0, hi = params.r0;
  const auto f = [&](double r) {
    return std::log2(1.0 + params.snr * (1.0 - std::pow(2.0, -r)));
  };
  for (int i = 0; i < 200; ++i) {
    const double mid = 0.5 * (lo + hi);
    (f(mid) - (params.r0 - mid) < 0.0 ? lo : hi) = mid;
  }
  CHECK(qmf_wyner_per_user(params) == doctest::Approx(f(0.5 * (lo + hi))).epsilon(1e-7));
}

TEST_CASE("ring qmf: nondecreasing in backhaul") {
  WynerParams params;
  params.gamma = 0.4;
  params.snr = 30.0;
  double prev = 0.0;
  for (double r0 : {0.5, 1.0, 2.0, 4.0}) {
    params.r0 = r0;
    const double v = qmf_wyner_per_user(params);
    CHECK(v >= prev - 1e-9);
    prev = v;
  }
}

TEST_CASE("qf: scalar closed form, limits, and log-det dominance") {
  CMat h1(1, 1);
  h1 << cplx(1, 0);
  CHECK(qf_rate(h1, 1.0, 1.0) == doctest::Approx(std::log2(4.0 / 3.0)).epsilon(1e-14));
  CHECK(qf_rate(h1, 1.0, 0.0) == 0.0);

  std::mt19937_64 rng(7003);
  for (int t = 0; t < 5; ++t) {
    const CMat h = rayleigh(3, 2, rng);
    const double snr = 8.0;
    const CMat g = CMat::Identity(2, 2) + snr * h.adjoint() * h;
    const double full = std::log2(std::real(g.determinant()));
    CHECK(qf_rate(h, snr, 60.0) == doctest::Approx(full).epsilon(1e-9));
    CHECK(qf_rate(h, snr, 2.0) <= full + 1e-9);
    CHECK(qf_rate(h, snr, 2.0) >= 0.0);
  }
}

TEST_CASE("df: no-interference form, branch structure, and backhaul clamp") {
  WynerParams params;
  params.gamma = 0.0;
  params.snr = 15.0;
  params.r0 = 10.0;
  CHECK(df_wyner_rate(params) == doctest::Approx(std::log2(16.0)).epsilon(1e-14));
  params.r0 = 1.5;
  CHECK(df_wyner_rate(params) == doctest::Approx(1.5).epsilon(1e-14));

  params.gamma = 0.7;
  params.snr = std::pow(10.0, 2.5);
  params.r0 = 100.0;
  const double g2 = 0.49;
  const double r1 = std::log2(1.0 + params.snr / (1.0 + 2.0 * g2 * params.snr));
  const double r2 = std::min(0.5 * std::log2(1.0 + 2.0 * g2 * params.snr),
                             std::log2(1.0 + (1.0 + 2.0 * g2) * params.snr) / 3.0);
  CHECK(df_wyner_rate(params) == doctest::Approx(std::max(r1, r2)).epsilon(1e-14));
}

TEST_CASE("bc capacity: single-user scalar closed form") {
  for (double p : {0.5, 1.0, 10.0}) {
    CMat rows(1, 1);
    rows << cplx(1, 0);
    const RVec power = RVec::Constant(1, p);
    CHECK(bc_sum_capacity_per_antenna(rows, power) ==
          doctest::Approx(std::log2(1.0 + p)).epsilon(1e-6));
  }
}

TEST_CASE("bc capacity: two-antenna single-user saddle point") {
  CMat rows(1, 2);
  rows << cplx(1, 0), cplx(1, 0);
  const RVec power = RVec::Ones(2);
  // Inner max gives log2(1 + 2p/(q1 q2)) at p = 2; the outer min over
  // q1 + q2 = 2 is at q = (1,1): log2(5).
  CHECK(bc_sum_capacity_per_antenna(rows, power) ==
        doctest::Approx(std::log2(5.0)).epsilon(3e-5));
}

TEST_CASE("bc capacity: orthogonal users decouple") {
  CMat rows(2, 2);
  rows << cplx(2, 0), cplx(0, 0), cplx(0, 0), cplx(1, 0);
  const RVec power = RVec::Ones(2);
  CHECK(bc_sum_capacity_per_antenna(rows, power) ==
        doctest::Approx(std::log2(5.0) + 1.0).epsilon(3e-5));
}

TEST_CASE("bc capacity: two-user grid-search oracle") {
  std::mt19937_64 rng(7004);
  const CMat rows = rayleigh(2, 2, rng);
  const RVec power = RVec::Ones(2) * 1.5;
  const double total = power.sum();

  const auto phi = [&](double q1, double q2, double p1, double p2) {
    CMat w(2, 2);
    w.setZero();
    w(0, 0) = q1;
    w(1, 1) = q2;
    w += p1 * rows.row(0).adjoint() * rows.row(0);
    w += p2 * rows.row(1).adjoint() * rows.row(1);
    const double det = std::real(w(0, 0) * w(1, 1) - w(0, 1) * w(1, 0));
    return std::log2(det) - std::log2(q1 * q2);
  };
  const int n = 1500;
  double outer_min = std::numeric_limits<double>::infinity();
  for (int i = 1; i < n; ++i) {  // q1·P1 + q2·P2 = total, strictly interior
    const double q1 = total / power[0] * i / n;
    const double q2 = (total - q1 * power[0]) / power[1];
    double inner_max = 0.0;
    for (int j = 0; j <= n; ++j) {
      const double p1 = total * j / n;
      inner_max = std::max(inner_max, phi(q1, q2, p1, total - p1));
    }
    outer_min = std::min(outer_min, inner_max);
  }
  const double solved = bc_sum_capacity_per_antenna(rows, power);
  CHECK(solved == doctest::Approx(outer_min).epsilon(3e-3));
}

TEST_CASE("bc capacity: iteration starvation raises nonconvergence with bounds") {
  std::mt19937_64 rng(7005);
  const CMat rows = rayleigh(3, 3, rng);
  const RVec power = RVec::Ones(3) * 10.0;
  BcCapacityOptions opt;
  opt.tol = 1e-12;
  opt.max_outer = 1;
  opt.max_inner = 2;
  try {
    bc_sum_capacity_per_antenna(rows, power, opt);
    FAIL("expected NonConvergence");
  } catch (const NonConvergence& e) {
    CHECK(e.lower_bound <= e.upper_bound);
    CHECK(std::isfinite(e.upper_bound));
  }
}

TEST_CASE("bc capacity: input validation") {
  CMat rows(1, 2);
  rows << cplx(1, 0), cplx(0, 1);
  CHECK_THROWS_AS(bc_sum_capacity_per_antenna(rows, RVec::Ones(3)), ConfigError);
  RVec bad = RVec::Ones(2);
  bad[1] = 0.0;
  CHECK_THROWS_AS(bc_sum_capacity_per_antenna(rows, bad), ConfigError);
  CHECK(bc_sum_capacity_per_antenna(CMat::Zero(2, 2), RVec::Ones(2)) == 0.0);
}

TEST_CASE("mac capacity: pooled power dominates per-antenna splitting") {
  std::mt19937_64 rng(7006);
  for (int t = 0; t < 5; ++t) {
    const CMat rows = rayleigh(2 + t % 2, 3, rng);
    const RVec power = RVec::Ones(3) * (1.0 + t);
    const double per_antenna = bc_sum_capacity_per_antenna(rows, power);
    const double pooled = mac_sum_capacity_total_power(rows, power.sum());
    CHECK(per_antenna <= pooled + 2e-5);
  }
}

TEST_CASE("beamforming chain: zfb and czfb closed forms and limits") {
  const double snr = 9.0;
  CMat eye = CMat::Identity(1, 1);
  const double r0 = 2.0;
  const double denom = std::pow(2.0, r0) - 1.0;
  const double expected = std::log2(1.0 + snr / (1.0 + (1.0 + snr) / denom));
  CHECK(czfb_rate(eye, snr, r0) == doctest::Approx(expected).epsilon(1e-14));
  CHECK(czfb_rate(eye, snr, 0.0) == 0.0);
  CHECK(zfb_rate(eye, snr) == doctest::Approx(std::log2(1.0 + snr)).epsilon(1e-14));

  CMat eye3 = CMat::Identity(3, 3);
  CHECK(zfb_rate(eye3, snr, ZfbNormalization::worst_antenna) ==
        doctest::Approx(3.0 * std::log2(1.0 + snr)).epsilon(1e-14));
  CHECK(zfb_rate(eye3, snr, ZfbNormalization::per_stream) ==
        doctest::Approx(3.0 * std::log2(1.0 + snr)).epsilon(1e-14));

  std::mt19937_64 rng(7007);
  for (int t = 0; t < 8; ++t) {
    const CMat hd = rayleigh(3, 3, rng);
    // Large backhaul removes the quantization penalty: czfb tends to the
    // per-stream zero-forcing rate.
    CHECK(czfb_rate(hd, snr, 60.0) ==
          doctest::Approx(zfb_rate(hd, snr, ZfbNormalization::per_stream))
              .epsilon(1e-9));
    // Worst-antenna power never beats per-stream power: follows from
    // convexity of t ↦ log2(1+snr/t) and max_m‖row_m‖² ≥ ‖B‖²_F/L.
    CHECK(zfb_rate(hd, snr, ZfbNormalization::worst_antenna) <=
          zfb_rate(hd, snr, ZfbNormalization::per_stream) + 1e-12);
  }
}

TEST_CASE("beamforming: singular channels are rejected") {
  CMat hd(2, 2);
  hd << cplx(1, 0), cplx(2, 0), cplx(2, 0), cplx(4, 0);
  CHECK_THROWS_AS(czfb_rate(hd, 1.0, 1.0), Singular);
  CHECK_THROWS_AS(zfb_rate(hd, 1.0), Singular);
  CHECK_THROWS_AS(czfb_rate(CMat::Ones(2, 3), 1.0, 1.0), ConfigError);
}

TEST_CASE("beamforming rates are invariant under user reordering") {
  std::mt19937_64 rng(7008);
  const CMat hd = rayleigh(4, 4, rng);
  CMat perm = CMat::Zero(4, 4);
  perm(0, 2) = perm(1, 0) = perm(2, 3) = perm(3, 1) = cplx(1, 0);
  CHECK(czfb_rate(perm * hd, 12.0, 3.0) ==
        doctest::Approx(czfb_rate(hd, 12.0, 3.0)).epsilon(1e-12));
  for (ZfbNormalization norm :
       {ZfbNormalization::worst_antenna, ZfbNormalization::per_stream}) {
    CHECK(zfb_rate(perm * hd, 12.0, norm) ==
          doctest::Approx(zfb_rate(hd, 12.0, norm)).epsilon(1e-12));
  }
}

TEST_CASE("downlink dominance: czfb <= cdpc <= dpc <= pooled mac") {
  std::mt19937_64 rng(7009);
  for (int t = 0; t < 12; ++t) {
    const Eigen::Index ll = 2 + t % 2;
    const CMat hd = rayleigh(ll, ll, rng);
    const double snr = (t % 3 == 0) ? 4.0 : 40.0;
    const double r0 = (t % 2) ? 2.5 : 5.0;
    const double czfb = czfb_rate(hd, snr, r0);
    const double cdpc = cdpc_rate(hd, snr, r0);
    const double dpc = dpc_sum_capacity(hd, snr);
    const double pooled =
        mac_sum_capacity_total_power(hd, snr * static_cast<double>(ll));
    CHECK(czfb <= cdpc + 1e-9);
    CHECK(cdpc <= dpc + 2e-5);
    CHECK(dpc <= pooled + 2e-5);
  }
}

TEST_CASE("cdpc: zero backhaul or zero snr sends nothing") {
  CMat hd = CMat::Identity(2, 2);
  CHECK(cdpc_rate(hd, 10.0, 0.0) == 0.0);
  CHECK(cdpc_rate(hd, 0.0, 3.0) == 0.0);
}

TEST_CASE("power allocation: uniform split channels") {
  const PowerAllocation pa = wyner_effective_channels(0.7, 1.0);
  CHECK(pa.h_odd(0) == cplx(0.7, 0.0));
  CHECK(pa.h_odd(1) == cplx(1.0, 0.0));
  CHECK(pa.h_odd(2) == cplx(0.7, 0.0));
  CHECK((pa.h_even - pa.h_odd).norm() == 0.0);
  CHECK_THROWS_AS(wyner_effective_channels(0.7, 1.5), ConfigError);
}

TEST_CASE("power allocation: optimized split dominates the uniform one") {
  WynerParams params;
  params.gamma = 0.7;
  params.snr = std::pow(10.0, 2.5);
  for (double r0 : {2.0, 6.0}) {
    params.r0 = r0;
    for (WynerScheme scheme : {WynerScheme::cof, WynerScheme::rcof}) {
      const PowerAllocationResult res = wyner_power_allocation(params, scheme);
      CHECK(res.beta >= 0.0);
      CHECK(res.beta <= 1.0);
      const PowerAllocation uniform = wyner_effective_channels(params.gamma, 1.0);
      const double ro =
          std::min(r0, find_best_coefficients(uniform.h_odd, params.snr).rate);
      const double re =
          std::min(r0, find_best_coefficients(uniform.h_even, params.snr).rate);
      const double uniform_rate =
          scheme == WynerScheme::cof ? std::min(ro, re) : 0.5 * (ro + re);
      CHECK(res.rate >= uniform_rate - 1e-12);
    }
  }
}

TEST_CASE("power allocation: averaging beats the common-rate bottleneck") {
  WynerParams params;
  params.gamma = 0.5;
  params.snr = 100.0;
  params.r0 = 8.0;
  const double cof = wyner_power_allocation(params, WynerScheme::cof).rate;
  const double rcof = wyner_power_allocation(params, WynerScheme::rcof).rate;
  CHECK(rcof >= cof - 1e-12);
}

TEST_CASE("power allocation: no inter-cell gain reduces to the scalar channel") {
  WynerParams params;
  params.gamma = 0.0;
  params.snr = 20.0;
  params.r0 = 50.0;
  const PowerAllocationResult res =
      wyner_power_allocation(params, WynerScheme::rcof);
  // (1+snr·β)(1+snr·(2−β)) is maximized at β = 1 where the derivative
  // vanishes, so refinement probes may land a whisker inside the interval;
  // the rate itself is pinned because β = 1 is evaluated first.
  CHECK(std::abs(res.beta - 1.0) <= 5e-3);
  CHECK(res.rate >= std::log2(21.0) - 1e-12);
  CHECK(res.rate <= std::log2(21.0) + 1e-9);
}

TEST_CASE("power allocation: quantized rates stay near the unquantized ones") {
  WynerParams params;
  params.gamma = 0.7;
  params.snr = std::pow(10.0, 2.5);
  params.r0 = 10.0;
  const double plain = wyner_power_allocation(params, WynerScheme::rcof).rate;
  const double quant = wyner_power_allocation(params, WynerScheme::rcof, 251).rate;
  CHECK(quant >= 0.0);
  CHECK(quant <= params.r0 + 1e-12);
  CHECK(quant >= plain - 1.0);
  CHECK(quant <= plain + 1e-9);
}

TEST_CASE("wyner parameter validation") {
  WynerParams params;
  params.gamma = 1.2;
  CHECK_THROWS_AS(validate_wyner(params), ConfigError);
  params.gamma = 0.5;
  params.snr = -1.0;
  CHECK_THROWS_AS(validate_wyner(params), ConfigError);
  params.snr = 1.0;
  params.r0 = -0.5;
  CHECK_THROWS_AS(validate_wyner(params), ConfigError);
}
