// SPDX-License-Identifier: MIT
/**
 * @file types.hpp
 * @brief Shared scalar/matrix typedefs and small POD types.
 */
#pragma once

#include <Eigen/Dense>
#include <cmath>
#include <complex>
#include <cstdint>
#include <vector>

namespace cfdas {

using cplx = std::complex<double>;

using CVec = Eigen::VectorXcd;   ///< Complex column vector.
using CMat = Eigen::MatrixXcd;   ///< Complex dense matrix.
using RVec = Eigen::VectorXd;    ///< Real column vector.
using RMat = Eigen::MatrixXd;    ///< Real dense matrix.

/// Gaussian integer a + jb with 64-bit components. All lattice coefficients
/// and finite-field lifts in this library fit comfortably in 64 bits;
/// intermediates that could overflow (determinants) widen to 128 bits
/// internally.
struct GaussianInt {
  std::int64_t re = 0;
  std::int64_t im = 0;

  GaussianInt() = default;
  GaussianInt(std::int64_t r, std::int64_t i) : re(r), im(i) {}

  bool operator==(const GaussianInt& o) const { return re == o.re && im == o.im; }
  bool operator!=(const GaussianInt& o) const { return !(*this == o); }

  GaussianInt operator+(const GaussianInt& o) const { return {re + o.re, im + o.im}; }
  GaussianInt operator-(const GaussianInt& o) const { return {re - o.re, im - o.im}; }
  GaussianInt operator-() const { return {-re, -im}; }
  GaussianInt operator*(const GaussianInt& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }

  bool is_zero() const { return re == 0 && im == 0; }
  /// Squared Euclidean norm |a|^2 + |b|^2.
  std::int64_t norm2() const { return re * re + im * im; }
  /// Complex conjugate a - jb.
  GaussianInt conj() const { return {re, -im}; }

  std::complex<double> to_complex() const {
    return {static_cast<double>(re), static_cast<double>(im)};
  }
};

/// Dense matrix of Gaussian integers (row-major nested vectors; these stay
/// small — dimensions are numbers of users/antennas, not samples).
using GIntMat = std::vector<std::vector<GaussianInt>>;
using GIntVec = std::vector<GaussianInt>;

/// Convert a Gaussian-integer matrix to complex floating point.
inline CMat to_cmat(const GIntMat& m) {
  if (m.empty()) return CMat(0, 0);
  CMat out(static_cast<Eigen::Index>(m.size()), static_cast<Eigen::Index>(m[0].size()));
  for (Eigen::Index r = 0; r < out.rows(); ++r)
    for (Eigen::Index c = 0; c < out.cols(); ++c)
      out(r, c) = m[static_cast<size_t>(r)][static_cast<size_t>(c)].to_complex();
  return out;
}

/// Convert a Gaussian-integer vector to a complex Eigen vector.
inline CVec to_cvec(const GIntVec& v) {
  CVec out(static_cast<Eigen::Index>(v.size()));
  for (Eigen::Index i = 0; i < out.size(); ++i)
    out(i) = v[static_cast<size_t>(i)].to_complex();
  return out;
}

/// log2(x) clamped below at zero; the universal rate-formula guard.
inline double log2_pos(double x) { return x > 1.0 ? std::log2(x) : 0.0; }

/// Per-scheme result for one channel draw. The Monte Carlo harness wraps
/// this with trial metadata before serialization.
struct RateReport {
  double sum_rate = 0.0;
  std::vector<double> per_receiver_rates;  ///< One entry per receiver/user.
  bool outage = false;                     ///< True iff sum_rate == 0.
  std::vector<int> selected;               ///< Chosen indices, when a
                                           ///< selection step applies.
};

}  // namespace cfdas
