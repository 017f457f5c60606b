// SPDX-License-Identifier: MIT
/**
 * @file errors.hpp
 * @brief Exception hierarchy used across the library.
 *
 * Every recoverable contract violation throws a subclass of cfdas::Error so
 * callers (and the simulation harness) can distinguish bad configuration
 * from genuine runtime failures. Each exception carries a human-readable
 * message naming the offending quantity.
 */
#pragma once

#include <stdexcept>
#include <string>

namespace cfdas {

/// Base class for all library errors.
class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& msg) : std::runtime_error(msg) {}
};

/// Configuration input failed validation (bad JSON, out-of-range parameter).
class ConfigError : public Error {
 public:
  explicit ConfigError(const std::string& msg) : Error(msg) {}
};

/// A prime modulus was requested that does not yield a field on the
/// Gaussian integers (p = 2 or p ≡ 1 mod 4).
class InvalidPrime : public Error {
 public:
  explicit InvalidPrime(const std::string& msg) : Error(msg) {}
};

/// Multiplicative inverse of zero requested in a finite field.
class ZeroInverse : public Error {
 public:
  explicit ZeroInverse(const std::string& msg) : Error(msg) {}
};

/// An all-zero vector was supplied where a nonzero one is required.
class ZeroVector : public Error {
 public:
  explicit ZeroVector(const std::string& msg) : Error(msg) {}
};

/// A matrix that must be invertible is singular.
class Singular : public Error {
 public:
  explicit Singular(const std::string& msg) : Error(msg) {}
};

/// A matrix that must have full rank does not.
class RankDeficient : public Error {
 public:
  explicit RankDeficient(const std::string& msg) : Error(msg) {}
};

/// An integer matrix became singular after reduction modulo p.
class RankDeficientModP : public Error {
 public:
  explicit RankDeficientModP(const std::string& msg) : Error(msg) {}
};

/// Greedy selection could not assemble a full-rank subset.
class NoBasis : public Error {
 public:
  explicit NoBasis(const std::string& msg) : Error(msg) {}
};

/// An exhaustive search space exceeds the configured budget.
class TooLarge : public Error {
 public:
  explicit TooLarge(const std::string& msg) : Error(msg) {}
};

/// Subset-enumeration baseline asked to handle more relays than supported.
class TooManyRelays : public Error {
 public:
  explicit TooManyRelays(const std::string& msg) : Error(msg) {}
};

/// Backhaul capacity is below the minimum a scheme needs to operate.
class BackhaulTooSmall : public Error {
 public:
  explicit BackhaulTooSmall(const std::string& msg) : Error(msg) {}
};

/// Sphere enumeration radius admits more lattice points than the cap allows.
class RadiusTooLarge : public Error {
 public:
  explicit RadiusTooLarge(const std::string& msg) : Error(msg) {}
};

/// An iterative solver failed to reach its tolerance within its budget.
/// Carries the best bracket found so callers can still use the bounds.
class NonConvergence : public Error {
 public:
  NonConvergence(const std::string& msg, double lower, double upper)
      : Error(msg), lower_bound(lower), upper_bound(upper) {}
  double lower_bound;  ///< Best certified lower bound on the answer.
  double upper_bound;  ///< Best certified upper bound on the answer.
};

}  // namespace cfdas
