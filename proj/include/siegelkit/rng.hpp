#pragma once

#include <cstdint>
#include <initializer_list>

#include "siegelkit/matrix.hpp"

namespace siegelkit {

/// Deterministic counter-based generator (splitmix64 output function over a
/// strided counter). Streams are derived by hashing, never by sharing state,
/// so samples can run in any order or thread and still reproduce exactly.
class Rng {
 public:
  explicit Rng(std::uint64_t key);

  /// Hashes the parts into a stream key.
  static std::uint64_t derive_key(std::initializer_list<std::uint64_t> parts);
  static Rng derive(std::initializer_list<std::uint64_t> parts) { return Rng(derive_key(parts)); }

  std::uint64_t next_u64();

  /// Uniform in [0, 1) with 128-bit granularity, rounded to the working
  /// precision.
  BigFloat uniform01();
  BigFloat uniform(const BigFloat& lo, const BigFloat& hi);

  /// Standard normal via Box-Muller (pairs are cached).
  BigFloat normal();

  /// Uniform in [0, n), n >= 1.
  BigInt below(const BigInt& n);
  int below_int(int n);

 private:
  std::uint64_t state_;
  bool have_spare_ = false;
  BigFloat spare_;
};

/// Orthonormalization of a matrix with independent standard-normal entries.
RealMatrix random_orthogonal(Index n, Rng& rng, const Precision& prec);

/// Product of `word_length` elementary row operations (shears with
/// coefficients in [-max_coeff, max_coeff] \ {0}, occasional adjacent swaps).
/// det is exactly +-1.
IntegerMatrix random_unimodular(Index n, Rng& rng, int word_length, int max_coeff = 2);

}  // namespace siegelkit
