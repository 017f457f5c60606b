// SPDX-License-Identifier: MIT
/**
 * @file lattice.cpp
 * @brief Shortest-vector pipeline: Cholesky → complex LLL → enumeration.
 */
#include "cfdas/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <sstream>

namespace cfdas {

// ---------------------------------------------------------------------------
// Exact Gaussian-integer helpers.
// ---------------------------------------------------------------------------

GIntVec gint_matvec(const GIntMat& a, const GIntVec& x) {
  if (a.empty()) return {};
  if (a[0].size() != x.size()) throw Error("gint_matvec: dimension mismatch");
  GIntVec out(a.size());
  for (size_t r = 0; r < a.size(); ++r) {
    GaussianInt acc{0, 0};
    for (size_t c = 0; c < x.size(); ++c) acc = acc + a[r][c] * x[c];
    out[r] = acc;
  }
  return out;
}

GIntMat gint_matmul(const GIntMat& a, const GIntMat& b) {
  if (a.empty() || b.empty()) return {};
  if (a[0].size() != b.size()) throw Error("gint_matmul: dimension mismatch");
  GIntMat out(a.size(), GIntVec(b[0].size()));
  for (size_t r = 0; r < a.size(); ++r)
    for (size_t c = 0; c < b[0].size(); ++c) {
      GaussianInt acc{0, 0};
      for (size_t k = 0; k < b.size(); ++k) acc = acc + a[r][k] * b[k][c];
      out[r][c] = acc;
    }
  return out;
}

GIntMat gint_identity(int n) {
  GIntMat id(static_cast<size_t>(n), GIntVec(static_cast<size_t>(n), {0, 0}));
  for (int i = 0; i < n; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = {1, 0};
  return id;
}

namespace {

/// Gaussian integer with 128-bit components, for exact determinants.
struct G128 {
  __int128 re = 0;
  __int128 im = 0;
  bool is_zero() const { return re == 0 && im == 0; }
};

G128 g128_mul(const G128& a, const G128& b) {
  return {a.re * b.re - a.im * b.im, a.re * b.im + a.im * b.re};
}

G128 g128_sub(const G128& a, const G128& b) { return {a.re - b.re, a.im - b.im}; }

/// Exact quotient x / d in Z[j]; throws if the division is not exact,
/// which for the fraction-free elimination below can only mean overflow.
G128 g128_div_exact(const G128& x, const G128& d) {
  __int128 n = d.re * d.re + d.im * d.im;
  G128 num = g128_mul(x, {d.re, -d.im});
  if (n == 0 || num.re % n != 0 || num.im % n != 0)
    throw Error("gint_det: inexact division (entries too large for exact arithmetic)");
  return {num.re / n, num.im / n};
}

}  // namespace

GaussianInt gint_det(const GIntMat& m) {
  const size_t n = m.size();
  if (n == 0) return {1, 0};
  for (const auto& row : m)
    if (row.size() != n) throw Error("gint_det: matrix is not square");

  std::vector<std::vector<G128>> w(n, std::vector<G128>(n));
  for (size_t r = 0; r < n; ++r)
    for (size_t c = 0; c < n; ++c) w[r][c] = {m[r][c].re, m[r][c].im};

  // Fraction-free (Bareiss) elimination: every division is exact.
  G128 prev{1, 0};
  int sign = 1;
  for (size_t k = 0; k + 1 < n; ++k) {
    if (w[k][k].is_zero()) {
      size_t swap_row = k + 1;
      while (swap_row < n && w[swap_row][k].is_zero()) ++swap_row;
      if (swap_row == n) return {0, 0};
      std::swap(w[k], w[swap_row]);
      sign = -sign;
    }
    for (size_t i = k + 1; i < n; ++i)
      for (size_t j = k + 1; j < n; ++j)
        w[i][j] = g128_div_exact(
            g128_sub(g128_mul(w[i][j], w[k][k]), g128_mul(w[i][k], w[k][j])), prev);
    prev = w[k][k];
  }
  G128 d = w[n - 1][n - 1];
  if (sign < 0) d = {-d.re, -d.im};
  auto fits = [](__int128 v) {
    return v >= std::numeric_limits<std::int64_t>::min() &&
           v <= std::numeric_limits<std::int64_t>::max();
  };
  if (!fits(d.re) || !fits(d.im))
    throw Error("gint_det: determinant exceeds 64-bit range");
  return {static_cast<std::int64_t>(d.re), static_cast<std::int64_t>(d.im)};
}

bool gint_is_unimodular(const GIntMat& m) {
  if (m.empty()) return true;
  for (const auto& row : m)
    if (row.size() != m.size()) return false;
  return gint_det(m).norm2() == 1;
}

// ---------------------------------------------------------------------------
// Effective noise variance.
// ---------------------------------------------------------------------------

NoiseVariance effective_noise_variance(const CVec& h, const GIntVec& a, double snr) {
  if (snr <= 0.0) throw Error("effective_noise_variance: snr must be positive");
  if (h.size() != static_cast<Eigen::Index>(a.size()))
    throw Error("effective_noise_variance: h and a dimensions differ");
  bool nonzero = false;
  for (const auto& e : a) nonzero = nonzero || !e.is_zero();
  if (!nonzero)
    throw ZeroVector("effective_noise_variance: coefficient vector a is zero");

  const CVec ac = to_cvec(a);
  const double h2 = h.squaredNorm();
  const double a2 = ac.squaredNorm();
  const cplx hHa = h.dot(ac);  // hᴴ a
  const double denom = 1.0 + snr * h2;

  NoiseVariance out;
  out.sigma2 = snr * (a2 - snr * std::norm(hHa) / denom);
  out.alpha = snr * hHa / denom;
  // The quadratic form is positive definite (smallest eigenvalue
  // snr / (1 + snr‖h‖²)); guard only against floating-point cancellation.
  if (out.sigma2 <= 0.0) out.sigma2 = std::numeric_limits<double>::min();
  return out;
}

double computation_rate(const CVec& h, const GIntVec& a, double snr) {
  return log2_pos(snr / effective_noise_variance(h, a, snr).sigma2);
}

CMat cholesky_factor(const CVec& h, double snr) {
  if (snr <= 0.0) throw Error("cholesky_factor: snr must be positive");
  const Eigen::Index k = h.size();
  const double denom = 1.0 + snr * h.squaredNorm();
  CMat g = snr * CMat::Identity(k, k) - (snr * snr / denom) * (h * h.adjoint());
  // Positive definite by construction; escalate jitter only if rounding in
  // the rank-one update defeats LLT at extreme condition numbers.
  for (double jitter : {0.0, 1e-15, 1e-12, 1e-9}) {
    Eigen::LLT<CMat> llt(g + jitter * snr * CMat::Identity(k, k));
    if (llt.info() == Eigen::Success) return llt.matrixL();
  }
  throw Error("cholesky_factor: factorization failed");
}

// ---------------------------------------------------------------------------
// Complex LLL.
// ---------------------------------------------------------------------------

namespace {

GaussianInt round_gaussian(const cplx& z) {
  return {std::llround(z.real()), std::llround(z.imag())};
}

/// Gram–Schmidt data for the current basis: coefficients mu (strictly lower
/// triangle) and squared norms of the orthogonalized columns.
void gram_schmidt(const CMat& b, CMat& mu, RVec& bstar_norm2, CMat& bstar) {
  const Eigen::Index n = b.cols();
  bstar = b;
  mu = CMat::Zero(n, n);
  bstar_norm2.resize(n);
  for (Eigen::Index k = 0; k < n; ++k) {
    for (Eigen::Index j = 0; j < k; ++j) {
      mu(k, j) = bstar.col(j).dot(b.col(k)) / bstar_norm2(j);
      bstar.col(k) -= mu(k, j) * bstar.col(j);
    }
    bstar_norm2(k) = bstar.col(k).squaredNorm();
  }
}

}  // namespace

ReducedBasis lll_reduce(const CMat& basis, double delta) {
  if (!(delta > 0.25 && delta <= 1.0)) {
    std::ostringstream os;
    os << "lll_reduce: delta = " << delta << " outside (0.25, 1]";
    throw ConfigError(os.str());
  }
  const Eigen::Index n = basis.cols();
  if (n == 0 || basis.rows() == 0) throw Error("lll_reduce: empty basis");
  {
    Eigen::ColPivHouseholderQR<CMat> qr(basis);
    if (qr.rank() < n) {
      std::ostringstream os;
      os << "lll_reduce: basis has rank " << qr.rank() << " < " << n << " columns";
      throw RankDeficient(os.str());
    }
  }

  ReducedBasis out{basis, gint_identity(static_cast<int>(n))};
  CMat& b = out.basis;
  GIntMat& u = out.unimodular;

  CMat mu, bstar;
  RVec bn2;
  Eigen::Index k = 1;
  // Swap count is provably bounded for delta < 1; the cap only matters for
  // delta == 1 where we return the best-effort (still valid) basis.
  long guard = 100000 + 10000 * static_cast<long>(n) * static_cast<long>(n);
  while (k < n && guard-- > 0) {
    gram_schmidt(b, mu, bn2, bstar);
    // Size-reduce column k against all earlier columns (high to low; lower
    // reductions do not disturb the mu values already used).
    for (Eigen::Index l = k - 1; l >= 0; --l) {
      GaussianInt r = round_gaussian(mu(k, l));
      if (r.is_zero()) continue;
      const cplx rc = r.to_complex();
      b.col(k) -= rc * b.col(l);
      for (size_t row = 0; row < u.size(); ++row)
        u[row][static_cast<size_t>(k)] =
            u[row][static_cast<size_t>(k)] - r * u[row][static_cast<size_t>(l)];
      for (Eigen::Index j = 0; j < l; ++j) mu(k, j) -= rc * mu(l, j);
      mu(k, l) -= rc;
    }
    if (bn2(k) >= (delta - std::norm(mu(k, k - 1))) * bn2(k - 1)) {
      ++k;
    } else {
      b.col(k).swap(b.col(k - 1));
      for (size_t row = 0; row < u.size(); ++row)
        std::swap(u[row][static_cast<size_t>(k)], u[row][static_cast<size_t>(k - 1)]);
      k = std::max<Eigen::Index>(1, k - 1);
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Sphere enumeration (Schnorr–Euchner on the realified lattice).
// ---------------------------------------------------------------------------

namespace {

/// Depth-first enumeration state over an upper-triangular real matrix R.
struct Enumerator {
  const RMat& r;
  double radius2;
  std::int64_t cap;
  std::int64_t found = 0;
  std::vector<std::int64_t> x;
  std::vector<GIntVec>* out;
  int half_dim;  // complex dimension K; real dimension is 2K

  void emit() {
    // One representative per ± pair: keep the vector whose first nonzero
    // real coordinate is positive.
    int first_nonzero = -1;
    for (size_t i = 0; i < x.size(); ++i)
      if (x[i] != 0) {
        first_nonzero = static_cast<int>(i);
        break;
      }
    if (first_nonzero < 0 || x[static_cast<size_t>(first_nonzero)] < 0) return;
    if (++found > cap)
      throw RadiusTooLarge("enumerate_short_vectors: point count exceeds cap");
    GIntVec z(static_cast<size_t>(half_dim));
    for (int i = 0; i < half_dim; ++i)
      z[static_cast<size_t>(i)] = {x[static_cast<size_t>(i)],
                                   x[static_cast<size_t>(i + half_dim)]};
    out->push_back(std::move(z));
  }

  void descend(int level, double used2) {
    if (level < 0) {
      emit();
      return;
    }
    double rem = radius2 - used2;
    if (rem < 0) return;
    double center = 0.0;
    for (size_t j = static_cast<size_t>(level) + 1; j < x.size(); ++j)
      center -= r(level, static_cast<Eigen::Index>(j)) * static_cast<double>(x[j]);
    const double diag = r(level, level);
    center /= diag;
    const double w = std::sqrt(rem) / std::abs(diag);
    const auto lo = static_cast<std::int64_t>(std::ceil(center - w - 1e-12));
    const auto hi = static_cast<std::int64_t>(std::floor(center + w + 1e-12));
    for (std::int64_t v = lo; v <= hi; ++v) {
      const double d = diag * (static_cast<double>(v) - center);
      const double add = d * d;
      if (used2 + add > radius2) continue;
      x[static_cast<size_t>(level)] = v;
      descend(level - 1, used2 + add);
    }
    x[static_cast<size_t>(level)] = 0;
  }
};

}  // namespace

std::vector<GIntVec> enumerate_short_vectors(const ReducedBasis& basis,
                                             double radius, std::int64_t cap) {
  if (radius <= 0.0) throw Error("enumerate_short_vectors: radius must be positive");
  const Eigen::Index kc = basis.basis.cols();
  const Eigen::Index rows = basis.basis.rows();
  if (kc == 0) return {};

  // Realify: complex B (rows×K) becomes [[Re, −Im], [Im, Re]] (2·rows × 2K);
  // the coefficient vector stacks real parts over imaginary parts.
  RMat br(2 * rows, 2 * kc);
  br.topLeftCorner(rows, kc) = basis.basis.real();
  br.topRightCorner(rows, kc) = -basis.basis.imag();
  br.bottomLeftCorner(rows, kc) = basis.basis.imag();
  br.bottomRightCorner(rows, kc) = basis.basis.real();

  Eigen::HouseholderQR<RMat> qr(br);
  const RMat qr_full = qr.matrixQR();
  RMat r = RMat(qr_full.topRows(2 * kc)).triangularView<Eigen::Upper>();
  for (Eigen::Index i = 0; i < r.rows(); ++i) {
    if (std::abs(r(i, i)) < 1e-12 * (1.0 + br.norm()))
      throw RankDeficient("enumerate_short_vectors: basis is rank deficient");
    if (r(i, i) < 0) r.row(i) = -r.row(i);
  }

  // Volume heuristic: expected point count ≈ vol(ball) / det(lattice).
  double log_points = 0.0;
  const auto n_real = static_cast<double>(2 * kc);
  log_points += (n_real / 2.0) * std::log(M_PI) + n_real * std::log(radius);
  log_points -= std::lgamma(n_real / 2.0 + 1.0);
  for (Eigen::Index i = 0; i < r.rows(); ++i) log_points -= std::log(r(i, i));
  if (log_points > std::log(4.0 * static_cast<double>(cap) + 64.0)) {
    std::ostringstream os;
    os << "enumerate_short_vectors: radius " << radius << " admits ≈ "
       << std::exp(log_points) << " lattice points, above the cap of " << cap;
    throw RadiusTooLarge(os.str());
  }

  std::vector<GIntVec> result;
  Enumerator en{r,
                radius * radius * (1.0 + 1e-9),
                cap,
                0,
                std::vector<std::int64_t>(static_cast<size_t>(2 * kc), 0),
                &result,
                static_cast<int>(kc)};
  en.descend(static_cast<int>(2 * kc) - 1, 0.0);
  return result;
}

// ---------------------------------------------------------------------------
// Coefficient search.
// ---------------------------------------------------------------------------

GIntVec canonicalize_quadrant(const GIntVec& a) {
  const GaussianInt* first = nullptr;
  for (const auto& e : a)
    if (!e.is_zero()) {
      first = &e;
      break;
    }
  if (!first) return a;
  // Exactly one of the four unit rotations puts the leading entry into the
  // half-open quadrant Re > 0, Im ≥ 0.
  static const GaussianInt units[4] = {{1, 0}, {0, 1}, {-1, 0}, {0, -1}};
  for (const auto& u : units) {
    GaussianInt rotated = u * (*first);
    if (rotated.re > 0 && rotated.im >= 0) {
      GIntVec out(a.size());
      for (size_t i = 0; i < a.size(); ++i) out[i] = u * a[i];
      return out;
    }
  }
  throw Error("canonicalize_quadrant: unreachable");
}

bool gint_lex_less(const GIntVec& x, const GIntVec& y) {
  const size_t n = std::min(x.size(), y.size());
  for (size_t i = 0; i < n; ++i) {
    if (x[i].re != y[i].re) return x[i].re < y[i].re;
    if (x[i].im != y[i].im) return x[i].im < y[i].im;
  }
  return x.size() < y.size();
}

CofSolution find_best_coefficients(const CVec& h, double snr, double delta,
                                   std::int64_t enum_cap) {
  if (h.size() == 0 || h.norm() == 0.0)
    throw ZeroVector("find_best_coefficients: channel vector is zero");
  if (snr <= 0.0) throw Error("find_best_coefficients: snr must be positive");

  const CMat f = cholesky_factor(h, snr).adjoint();
  const ReducedBasis red = lll_reduce(f, delta);

  double best_norm = red.basis.col(0).norm();
  for (Eigen::Index c = 1; c < red.basis.cols(); ++c)
    best_norm = std::min(best_norm, red.basis.col(c).norm());
  const double rho = best_norm * (1.0 + 1e-9);

  const auto candidates = enumerate_short_vectors(red, rho, enum_cap);
  // The sphere radius covers the shortest reduced column, so the list is
  // nonempty by construction.
  CofSolution best;
  bool have = false;
  for (const auto& z : candidates) {
    GIntVec a = canonicalize_quadrant(gint_matvec(red.unimodular, z));
    const double sigma2 = effective_noise_variance(h, a, snr).sigma2;
    if (!have || sigma2 < best.sigma2 * (1.0 - 1e-12)) {
      best.a = a;
      best.sigma2 = sigma2;
      have = true;
    } else if (sigma2 <= best.sigma2 * (1.0 + 1e-12) && gint_lex_less(a, best.a)) {
      best.a = a;
      best.sigma2 = sigma2;
    }
  }
  if (!have) throw Error("find_best_coefficients: enumeration returned no candidates");

  const NoiseVariance nv = effective_noise_variance(h, best.a, snr);
  best.sigma2 = nv.sigma2;
  best.alpha = nv.alpha;
  best.rate = log2_pos(snr / nv.sigma2);
  return best;
}

}  // namespace cfdas
