// SPDX-License-Identifier: MIT
/**
 * @file test_ifb.cpp
 * @brief Integer-forcing beamforming: anchors on identity/unitary channels,
 *        exhaustive unimodular-box oracles at L = 2, dominance over zero
 *        forcing, permutation invariance, and failure modes.
 */
#include <algorithm>
#include <cmath>
#include <random>
#include <vector>

#include "cfdas/baselines.hpp"
#include "cfdas/errors.hpp"
#include "cfdas/gfield.hpp"
#include "cfdas/ifb.hpp"
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

bool is_identity(const GIntMat& m) {
  for (size_t r = 0; r < m.size(); ++r)
    for (size_t c = 0; c < m[r].size(); ++c) {
      const GaussianInt want{r == c ? 1 : 0, 0};
      if (m[r][c] != want) return false;
    }
  return true;
}

double rate_of(const IfbDesign& d, double snr) {
  double mrp = 0.0;
  for (Eigen::Index m = 0; m < d.b.rows(); ++m)
    mrp = std::max(mrp, d.b.row(m).squaredNorm());
  double sum = 0.0;
  for (const GIntVec& row : d.a_tilde)
    sum += computation_rate(to_cvec(row), row, snr / mrp);
  return sum;
}

/// Exhaustive search over unimodular 2×2 Gaussian-integer matrices with all
/// entry components in [−box, box]: the best achievable sum rate.
double best_rate_in_box(const CMat& hd, double snr, int box) {
  const CMat hinv = hd.inverse();
  std::vector<GaussianInt> entries;
  for (int re = -box; re <= box; ++re)
    for (int im = -box; im <= box; ++im) entries.push_back({re, im});
  double best = 0.0;
  GIntMat cand(2, GIntVec(2, GaussianInt{0, 0}));
  for (const auto& a : entries)
    for (const auto& b : entries)
      for (const auto& c : entries)
        for (const auto& d : entries) {
          const GaussianInt det = a * d - b * c;
          if (det.norm2() != 1) continue;
          cand[0][0] = a;
          cand[0][1] = b;
          cand[1][0] = c;
          cand[1][1] = d;
          IfbDesign design;
          design.b = hinv * to_cmat(cand);
          design.a_tilde = cand;
          best = std::max(best, rate_of(design, snr));
        }
  return best;
}

}  // namespace

TEST_CASE("identity channel: integer forcing collapses to zero forcing") {
  const CMat eye = CMat::Identity(3, 3);
  const IfbDesign design = ifb_design(eye, 10.0);
  CHECK(is_identity(design.a_tilde));
  CHECK((design.b - eye).norm() <= 1e-12);
  CHECK(design.max_row_power == doctest::Approx(1.0).epsilon(1e-14));
  const RateReport report = ifb_sum_rate(design, 10.0, 251);
  CHECK(report.sum_rate == doctest::Approx(3.0 * std::log2(11.0)).epsilon(1e-12));
  CHECK(report.per_receiver_rates.size() == 3);
  CHECK_FALSE(report.outage);
  CHECK(report.sum_rate ==
        doctest::Approx(zfb_rate(eye, 10.0)).epsilon(1e-12));
}

TEST_CASE("unitary channel: the identity stays optimal") {
  std::mt19937_64 rng(8001);
  const Eigen::HouseholderQR<CMat> qr(rayleigh(3, 3, rng));
  const CMat q = qr.householderQ() * CMat::Identity(3, 3);
  const IfbDesign design = ifb_design(q, 40.0);
  CHECK(is_identity(design.a_tilde));
  CHECK(ifb_sum_rate(design, 40.0, 251).sum_rate ==
        doctest::Approx(3.0 * std::log2(41.0)).epsilon(1e-9));
}

TEST_CASE("unitary 2x2: no unimodular candidate in a box beats the identity") {
  std::mt19937_64 rng(8002);
  const Eigen::HouseholderQR<CMat> qr(rayleigh(2, 2, rng));
  const CMat q = qr.householderQ() * CMat::Identity(2, 2);
  const double snr = 100.0;
  const IfbDesign design = ifb_design(q, snr);
  const double returned = ifb_sum_rate(design, snr, 251).sum_rate;
  const double oracle = best_rate_in_box(q, snr, 2);
  CHECK(returned == doctest::Approx(2.0 * std::log2(1.0 + snr)).epsilon(1e-9));
  CHECK(oracle <= returned + 1e-9);
}

TEST_CASE("near-singular channel: reduction beats plain zero forcing") {
  CMat hd(2, 2);
  hd << cplx(1, 0), cplx(1, 0), cplx(1, 0), cplx(1.05, 0);
  const double snr = 1e6;
  const IfbDesign design = ifb_design(hd, snr);
  const IfbDesign zf = make_zfb_design(hd);

  // Sum transmit power strictly below the zero-forcing value.
  CHECK(design.b.squaredNorm() < zf.b.squaredNorm() - 1.0);
  // The returned rate dominates both zero forcing and everything an
  // exhaustive |Re|,|Im| ≤ 3 unimodular search can reach.
  const double returned = ifb_sum_rate(design, snr, 251).sum_rate;
  const double zf_rate = ifb_sum_rate(zf, snr, 251).sum_rate;
  const double oracle = best_rate_in_box(hd, snr, 3);
  CHECK(returned > zf_rate + 0.5);
  CHECK(returned >= oracle - 1e-9);
  CHECK(gint_is_unimodular(design.a_tilde));
}

TEST_CASE("random square channels: dominance, consistency, determinism") {
  std::mt19937_64 rng(8003);
  const double snr = 100.0;
  for (int t = 0; t < 50; ++t) {
    const Eigen::Index ll = (t % 5 == 4) ? 5 : 3;
    const CMat hd = rayleigh(ll, ll, rng);
    if (std::abs(hd.determinant()) < 1e-6) continue;
    const IfbDesign design = ifb_design(hd, snr);
    const IfbDesign zf = make_zfb_design(hd);
    CHECK(gint_is_unimodular(design.a_tilde));
    CHECK((hd * design.b - to_cmat(design.a_tilde)).norm() <=
          1e-9 * std::max(1.0, to_cmat(design.a_tilde).norm()));

    const RateReport rep = ifb_sum_rate(design, snr, 251);
    const RateReport zrep = ifb_sum_rate(zf, snr, 251);
    CHECK(rep.sum_rate >= zrep.sum_rate - 1e-12);
    double acc = 0.0;
    for (double r : rep.per_receiver_rates) acc += r;
    CHECK(rep.sum_rate == doctest::Approx(acc).epsilon(1e-12));
    CHECK(rep.outage == (rep.sum_rate == 0.0));

    // Zero-forcing special case agrees with the baseline module exactly.
    CHECK(zrep.sum_rate == doctest::Approx(zfb_rate(hd, snr)).epsilon(1e-12));
  }

  const CMat hd = rayleigh(4, 4, rng);
  const IfbDesign d1 = ifb_design(hd, snr);
  const IfbDesign d2 = ifb_design(hd, snr);
  CHECK(d1.a_tilde == d2.a_tilde);
}

TEST_CASE("user reordering leaves the sum rate unchanged") {
  std::mt19937_64 rng(8004);
  const CMat hd = rayleigh(4, 4, rng);
  CMat perm = CMat::Zero(4, 4);
  perm(0, 2) = perm(1, 0) = perm(2, 3) = perm(3, 1) = cplx(1, 0);
  const double snr = 200.0;
  const RateReport a = ifb_sum_rate(ifb_design(hd, snr), snr, 251);
  const RateReport b = ifb_sum_rate(ifb_design(perm * hd, snr), snr, 251);
  CHECK(a.sum_rate == doctest::Approx(b.sum_rate).epsilon(1e-9));
  std::vector<double> ra = a.per_receiver_rates, rb = b.per_receiver_rates;
  std::sort(ra.begin(), ra.end());
  std::sort(rb.begin(), rb.end());
  for (size_t i = 0; i < ra.size(); ++i)
    CHECK(ra[i] == doctest::Approx(rb[i]).epsilon(1e-9));
}

TEST_CASE("stream power scaling: a uniform gain of 2 costs a factor 4") {
  const CMat hd = 0.5 * CMat::Identity(2, 2);
  const IfbDesign design = make_zfb_design(hd);
  CHECK(design.max_row_power == doctest::Approx(4.0).epsilon(1e-14));
  CHECK(ifb_sum_rate(design, 36.0, 251).sum_rate ==
        doctest::Approx(2.0 * std::log2(1.0 + 9.0)).epsilon(1e-12));
}

TEST_CASE("designs singular modulo p are rejected, but only modulo that p") {
  IfbDesign design;
  design.a_tilde = {{GaussianInt{7, 0}, GaussianInt{0, 0}},
                    {GaussianInt{0, 0}, GaussianInt{1, 0}}};
  design.b = to_cmat(design.a_tilde);
  design.max_row_power = 49.0;
  CHECK_THROWS_AS(ifb_sum_rate(design, 10.0, 7), RankDeficientModP);
  CHECK(ifb_sum_rate(design, 10.0, 11).sum_rate >= 0.0);
}

TEST_CASE("integer forcing input validation") {
  CHECK_THROWS_AS(ifb_design(CMat::Ones(2, 3), 1.0), ConfigError);
  CHECK_THROWS_AS(ifb_design(CMat::Ones(2, 2), 1.0), Singular);
  CHECK_THROWS_AS(ifb_design(CMat::Identity(2, 2), -1.0), ConfigError);
  CHECK_THROWS_AS(make_zfb_design(CMat::Ones(3, 3)), Singular);

  const IfbDesign good = make_zfb_design(CMat::Identity(2, 2));
  CHECK_THROWS_AS(ifb_sum_rate(good, 1.0, 4), InvalidPrime);
  CHECK_THROWS_AS(ifb_sum_rate(good, -1.0, 7), ConfigError);
  IfbDesign bad = good;
  bad.max_row_power = 0.0;
  CHECK_THROWS_AS(ifb_sum_rate(bad, 1.0, 7), ConfigError);
  IfbDesign empty;
  CHECK_THROWS_AS(ifb_sum_rate(empty, 1.0, 7), ConfigError);
}

TEST_CASE("zero snr: zero forcing returned, rates all zero") {
  const CMat eye = CMat::Identity(2, 2);
  const IfbDesign design = ifb_design(eye, 0.0);
  CHECK(is_identity(design.a_tilde));
  const RateReport rep = ifb_sum_rate(design, 0.0, 7);
  CHECK(rep.sum_rate == 0.0);
  CHECK(rep.outage);
}
