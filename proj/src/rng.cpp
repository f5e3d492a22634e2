#include "siegelkit/rng.hpp"

#include "siegelkit/decomp.hpp"

namespace siegelkit {

namespace {

constexpr std::uint64_t kGolden = 0x9E3779B97F4A7C15ULL;

std::uint64_t mix(std::uint64_t x) {
  x += kGolden;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ULL;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBULL;
  return x ^ (x >> 31);
}

}  // namespace

Rng::Rng(std::uint64_t key) : state_(mix(key ^ 0x6A09E667F3BCC909ULL)) {}

std::uint64_t Rng::derive_key(std::initializer_list<std::uint64_t> parts) {
  std::uint64_t key = 0x243F6A8885A308D3ULL;
  for (std::uint64_t p : parts) key = mix(key ^ mix(p));
  return key;
}

std::uint64_t Rng::next_u64() {
  state_ += kGolden;
  return mix(state_);
}

BigFloat Rng::uniform01() {
  std::uint64_t hi = next_u64();
  std::uint64_t lo = next_u64();
  return ldexp(BigFloat(hi), -64) + ldexp(BigFloat(lo), -128);
}

BigFloat Rng::uniform(const BigFloat& lo, const BigFloat& hi) {
  return lo + (hi - lo) * uniform01();
}

BigFloat Rng::normal() {
  if (have_spare_) {
    have_spare_ = false;
    return spare_;
  }
  BigFloat u1 = uniform01();
  while (u1 == 0) u1 = uniform01();
  BigFloat u2 = uniform01();
  BigFloat r = sqrt(BigFloat(-2) * log(u1));
  BigFloat theta = 8 * atan(BigFloat(1)) * u2;
  spare_ = r * sin(theta);
  have_spare_ = true;
  return r * cos(theta);
}

BigInt Rng::below(const BigInt& n) {
  if (n < 1) throw DomainError("Rng::below requires n >= 1");
  if (n == 1) return BigInt(0);
  unsigned bits = msb(n) + 1;
  unsigned words = (bits + 63) / 64;
  for (;;) {
    BigInt candidate(0);
    for (unsigned w = 0; w < words; ++w) candidate = (candidate << 64) | BigInt(next_u64());
    candidate >>= (words * 64 - bits);
    if (candidate < n) return candidate;
  }
}

int Rng::below_int(int n) { return static_cast<int>(below(BigInt(n))); }

RealMatrix random_orthogonal(Index n, Rng& rng, const Precision& prec) {
  ScopedPrecision scope(prec);
  for (;;) {
    RealMatrix g(n, n);
    for (Index i = 0; i < n; ++i)
      for (Index j = 0; j < n; ++j) g(i, j) = rng.normal();
    try {
      return iwasawa(g, prec).kappa;
    } catch (const NearSingular&) {
      // Resample; a normal matrix is almost never singular.
    }
  }
}

IntegerMatrix random_unimodular(Index n, Rng& rng, int word_length, int max_coeff) {
  IntegerMatrix u = IntegerMatrix::Identity(n, n);
  if (n < 2) return u;
  for (int w = 0; w < word_length; ++w) {
    int op = rng.below_int(4);
    if (op == 0) {
      Index i = rng.below_int(static_cast<int>(n) - 1);
      u.row(i).swap(u.row(i + 1));
    } else {
      Index i = rng.below_int(static_cast<int>(n));
      Index j = rng.below_int(static_cast<int>(n) - 1);
      if (j >= i) ++j;
      int c = 1 + rng.below_int(max_coeff);
      if (rng.below_int(2)) c = -c;
      u.row(i) += BigInt(c) * u.row(j);
    }
  }
  return u;
}

}  // namespace siegelkit
