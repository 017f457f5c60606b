// SPDX-License-Identifier: MIT
/**
 * @file gfield.cpp
 * @brief Implementation of F_{p^2} arithmetic and linear algebra.
 */
#include "cfdas/gfield.hpp"

#include <cmath>
#include <sstream>

namespace cfdas {

namespace {

std::int64_t mod_pos(std::int64_t v, std::int64_t p) {
  std::int64_t r = v % p;
  return r < 0 ? r + p : r;
}

bool is_prime(std::int64_t n) {
  if (n < 2) return false;
  if (n % 2 == 0) return n == 2;
  for (std::int64_t d = 3; d * d <= n; d += 2)
    if (n % d == 0) return false;
  return true;
}

/// Scalar inverse in F_p via extended Euclid.
std::int64_t mod_inverse(std::int64_t v, std::int64_t p) {
  std::int64_t t = 0, new_t = 1, r = p, new_r = mod_pos(v, p);
  while (new_r != 0) {
    std::int64_t q = r / new_r;
    std::int64_t tmp = t - q * new_t;
    t = new_t;
    new_t = tmp;
    tmp = r - q * new_r;
    r = new_r;
    new_r = tmp;
  }
  // r is gcd(v, p); p prime and v != 0 mod p guarantee r == 1 here.
  return mod_pos(t, p);
}

void check_same_modulus(const FqElem& x, const FqElem& y) {
  if (x.p != y.p) {
    std::ostringstream os;
    os << "mixed moduli in field arithmetic: " << x.p << " vs " << y.p;
    throw Error(os.str());
  }
}

void check_rectangular(const FqMat& m, const char* what) {
  if (m.empty()) throw Error(std::string(what) + ": empty matrix");
  for (const auto& row : m)
    if (row.size() != m[0].size())
      throw Error(std::string(what) + ": ragged matrix");
}

}  // namespace

void validate_gaussian_prime(std::int64_t p) {
  std::ostringstream os;
  if (!is_prime(p)) {
    os << "modulus " << p << " is not prime";
    throw InvalidPrime(os.str());
  }
  if (p == 2) {
    throw InvalidPrime(
        "p = 2 does not give a field on Gaussian integers: 1 + j is a zero "
        "divisor since (1 + j)(1 - j) = 2 ≡ 0");
  }
  if (p % 4 == 1) {
    os << "p = " << p
       << " ≡ 1 (mod 4): x^2 + 1 factors over F_p, so Gaussian integers mod "
          "p contain zero divisors and do not form a field; use a prime ≡ 3 "
          "(mod 4)";
    throw InvalidPrime(os.str());
  }
}

FqElem mod_p_reduce(const GaussianInt& z, std::int64_t p) {
  validate_gaussian_prime(p);
  return {mod_pos(z.re, p), mod_pos(z.im, p), p};
}

FqMat mod_p_reduce(const GIntMat& m, std::int64_t p) {
  validate_gaussian_prime(p);
  FqMat out(m.size());
  for (size_t r = 0; r < m.size(); ++r) {
    out[r].resize(m[r].size());
    for (size_t c = 0; c < m[r].size(); ++c)
      out[r][c] = {mod_pos(m[r][c].re, p), mod_pos(m[r][c].im, p), p};
  }
  return out;
}

FqElem fq_add(const FqElem& x, const FqElem& y) {
  check_same_modulus(x, y);
  return {mod_pos(x.a + y.a, x.p), mod_pos(x.b + y.b, x.p), x.p};
}

FqElem fq_sub(const FqElem& x, const FqElem& y) {
  check_same_modulus(x, y);
  return {mod_pos(x.a - y.a, x.p), mod_pos(x.b - y.b, x.p), x.p};
}

FqElem fq_neg(const FqElem& x) { return {mod_pos(-x.a, x.p), mod_pos(-x.b, x.p), x.p}; }

FqElem fq_mul(const FqElem& x, const FqElem& y) {
  check_same_modulus(x, y);
  // Components stay below p < 2^31 in practice, so 64-bit products cannot
  // overflow; reduce after each bilinear form anyway.
  std::int64_t re = mod_pos(x.a * y.a - x.b * y.b, x.p);
  std::int64_t im = mod_pos(x.a * y.b + x.b * y.a, x.p);
  return {re, im, x.p};
}

FqElem fq_inverse(const FqElem& x) {
  if (x.is_zero()) throw ZeroInverse("inverse of zero requested in F_{p^2}");
  // (a + jb)^{-1} = (a - jb) (a^2 + b^2)^{-1}; the norm a^2 + b^2 is nonzero
  // mod p because -1 is a quadratic nonresidue for p ≡ 3 (mod 4).
  std::int64_t n = mod_pos(x.a * x.a + x.b * x.b, x.p);
  std::int64_t ninv = mod_inverse(n, x.p);
  return {mod_pos(x.a * ninv, x.p), mod_pos(-x.b * ninv, x.p), x.p};
}

namespace {

/// Row-reduce `m` in place to echelon form, returning the rank. If
/// `companion` is non-null it receives the same row operations (used to
/// build inverses) and must have the same number of rows.
int row_reduce(FqMat& m, FqMat* companion) {
  const int rows = static_cast<int>(m.size());
  const int cols = static_cast<int>(m[0].size());
  int rank = 0;
  for (int col = 0; col < cols && rank < rows; ++col) {
    // Deterministic pivot: first nonzero entry scanning down from `rank`.
    int pivot = -1;
    for (int r = rank; r < rows; ++r) {
      if (!m[r][col].is_zero()) {
        pivot = r;
        break;
      }
    }
    if (pivot < 0) continue;
    std::swap(m[pivot], m[rank]);
    if (companion) std::swap((*companion)[pivot], (*companion)[rank]);
    FqElem inv = fq_inverse(m[rank][col]);
    for (int c = 0; c < cols; ++c) m[rank][c] = fq_mul(m[rank][c], inv);
    if (companion)
      for (auto& e : (*companion)[rank]) e = fq_mul(e, inv);
    for (int r = 0; r < rows; ++r) {
      if (r == rank || m[r][col].is_zero()) continue;
      FqElem f = m[r][col];
      for (int c = 0; c < cols; ++c)
        m[r][c] = fq_sub(m[r][c], fq_mul(f, m[rank][c]));
      if (companion) {
        for (size_t c = 0; c < (*companion)[r].size(); ++c)
          (*companion)[r][c] =
              fq_sub((*companion)[r][c], fq_mul(f, (*companion)[rank][c]));
      }
    }
    ++rank;
  }
  return rank;
}

}  // namespace

int fq_rank(const FqMat& m) {
  if (m.empty()) return 0;
  check_rectangular(m, "fq_rank");
  FqMat work = m;
  return row_reduce(work, nullptr);
}

int fq_rank(const GIntMat& m, std::int64_t p) {
  if (m.empty()) return 0;
  return fq_rank(mod_p_reduce(m, p));
}

FqMat fq_identity(int n, std::int64_t p) {
  FqMat id(static_cast<size_t>(n), FqVec(static_cast<size_t>(n), FqElem{0, 0, p}));
  for (int i = 0; i < n; ++i) id[static_cast<size_t>(i)][static_cast<size_t>(i)] = {1, 0, p};
  return id;
}

FqMat fq_inverse_matrix(const FqMat& m) {
  check_rectangular(m, "fq_inverse_matrix");
  const int n = static_cast<int>(m.size());
  if (static_cast<int>(m[0].size()) != n)
    throw Error("fq_inverse_matrix: matrix is not square");
  FqMat work = m;
  FqMat inv = fq_identity(n, m[0][0].p);
  int rank = row_reduce(work, &inv);
  if (rank < n) {
    std::ostringstream os;
    os << "matrix is singular over F_{p^2}: rank " << rank << " < " << n;
    throw Singular(os.str());
  }
  return inv;
}

FqVec fq_solve(const FqMat& a, const FqVec& b) {
  check_rectangular(a, "fq_solve");
  if (a.size() != b.size()) throw Error("fq_solve: dimension mismatch");
  FqMat inv = fq_inverse_matrix(a);  // throws Singular if not invertible
  return fq_matvec(inv, b);
}

FqVec fq_matvec(const FqMat& a, const FqVec& x) {
  check_rectangular(a, "fq_matvec");
  if (a[0].size() != x.size()) throw Error("fq_matvec: dimension mismatch");
  const std::int64_t p = a[0][0].p;
  FqVec out(a.size(), FqElem{0, 0, p});
  for (size_t r = 0; r < a.size(); ++r)
    for (size_t c = 0; c < x.size(); ++c)
      out[r] = fq_add(out[r], fq_mul(a[r][c], x[c]));
  return out;
}

FqMat fq_matmul(const FqMat& a, const FqMat& b) {
  check_rectangular(a, "fq_matmul");
  check_rectangular(b, "fq_matmul");
  if (a[0].size() != b.size()) throw Error("fq_matmul: dimension mismatch");
  const std::int64_t p = a[0][0].p;
  FqMat out(a.size(), FqVec(b[0].size(), FqElem{0, 0, p}));
  for (size_t r = 0; r < a.size(); ++r)
    for (size_t k = 0; k < b.size(); ++k) {
      if (a[r][k].is_zero()) continue;
      for (size_t c = 0; c < b[0].size(); ++c)
        out[r][c] = fq_add(out[r][c], fq_mul(a[r][k], b[k][c]));
    }
  return out;
}

GIntMat fq_lift(const FqMat& m) {
  GIntMat out(m.size());
  for (size_t r = 0; r < m.size(); ++r) {
    out[r].resize(m[r].size());
    for (size_t c = 0; c < m[r].size(); ++c) out[r][c] = m[r][c].lift();
  }
  return out;
}

}  // namespace cfdas
