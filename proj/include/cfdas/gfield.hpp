// SPDX-License-Identifier: MIT
/**
 * @file gfield.hpp
 * @brief Arithmetic over F_{p^2} realised as Gaussian integers modulo p.
 *
 * For a prime p ≡ 3 (mod 4) the polynomial x^2 + 1 is irreducible over F_p,
 * so the Gaussian integers reduced componentwise mod p form the field with
 * p^2 elements. Elements are stored with both components as canonical
 * representatives in [0, p). Inversion uses the conjugate trick
 *   (a + jb)^{-1} = (a - jb) · (a^2 + b^2)^{-1} mod p,
 * valid because a^2 + b^2 ≡ 0 (mod p) only for the zero element when
 * p ≡ 3 (mod 4).
 *
 * Matrix routines (rank, inverse, linear solve) run fraction-free Gaussian
 * elimination with a deterministic pivot rule: the first nonzero entry in
 * the current column, scanning from the lowest row index.
 */
#pragma once

#include <cstdint>
#include <vector>

#include "cfdas/errors.hpp"
#include "cfdas/types.hpp"

namespace cfdas {

/// Element of F_{p^2}: a + jb with a, b in [0, p). Carries its modulus so
/// mixed-modulus arithmetic can be rejected loudly.
struct FqElem {
  std::int64_t a = 0;
  std::int64_t b = 0;
  std::int64_t p = 0;

  bool operator==(const FqElem& o) const { return a == o.a && b == o.b && p == o.p; }
  bool operator!=(const FqElem& o) const { return !(*this == o); }
  bool is_zero() const { return a == 0 && b == 0; }

  /// Lift back to a Gaussian integer with components in [0, p).
  GaussianInt lift() const { return {a, b}; }
};

using FqMat = std::vector<std::vector<FqElem>>;
using FqVec = std::vector<FqElem>;

/// Throws InvalidPrime unless p is a prime with p ≡ 3 (mod 4), i.e. unless
/// the Gaussian integers mod p form a field. The message names the failing
/// condition (not prime, p = 2, or p ≡ 1 mod 4, the latter because x^2 + 1
/// splits and zero divisors such as those with a^2 + b^2 ≡ 0 appear).
void validate_gaussian_prime(std::int64_t p);

/// Canonical reduction of a Gaussian integer: both components mapped to
/// [0, p). Handles negative inputs (true mathematical mod, not C++ '%').
FqElem mod_p_reduce(const GaussianInt& z, std::int64_t p);

/// Componentwise reduction of a whole matrix.
FqMat mod_p_reduce(const GIntMat& m, std::int64_t p);

FqElem fq_add(const FqElem& x, const FqElem& y);
FqElem fq_sub(const FqElem& x, const FqElem& y);
FqElem fq_neg(const FqElem& x);
FqElem fq_mul(const FqElem& x, const FqElem& y);

/// Multiplicative inverse; throws ZeroInverse on the zero element.
FqElem fq_inverse(const FqElem& x);

/// Rank of a matrix over F_{p^2} by Gaussian elimination.
int fq_rank(const FqMat& m);
/// Convenience overload: reduce an integer matrix mod p first.
int fq_rank(const GIntMat& m, std::int64_t p);

/// Inverse of a square matrix over F_{p^2}; throws Singular if rank < n
/// (message reports the achieved rank).
FqMat fq_inverse_matrix(const FqMat& m);

/// Solve A x = b over F_{p^2} for square invertible A; throws Singular
/// otherwise.
FqVec fq_solve(const FqMat& a, const FqVec& b);

/// A x for matrices/vectors over F_{p^2}.
FqVec fq_matvec(const FqMat& a, const FqVec& x);
/// A B for matrices over F_{p^2}.
FqMat fq_matmul(const FqMat& a, const FqMat& b);

/// Identity matrix over F_{p^2}.
FqMat fq_identity(int n, std::int64_t p);

/// Lift every entry to a Gaussian integer with components in [0, p).
GIntMat fq_lift(const FqMat& m);

}  // namespace cfdas
