// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 nttkit contributors

#ifndef NTTKIT_MODARITH_HPP
#define NTTKIT_MODARITH_HPP

/// \file
/// Scalar arithmetic over word-sized prime fields: Barrett reduction,
/// widening multiplies parameterized by the accumulator width (2^52 or 2^64),
/// and branchless small-input reduction. Everything here is a pure function
/// of its arguments; Modulus and MultiplyFactor are immutable once built and
/// safe to share across threads.

#include <algorithm>
#include <bit>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <initializer_list>
#include <stdexcept>

namespace nttkit {

using uint128_t = unsigned __int128;

// Range/contract checks are active in debug and test builds. Define
// NTTKIT_ENABLE_CHECKS to 0/1 to force either way.
#ifndef NTTKIT_ENABLE_CHECKS
#ifdef NDEBUG
#define NTTKIT_ENABLE_CHECKS 0
#else
#define NTTKIT_ENABLE_CHECKS 1
#endif
#endif

namespace detail {
[[noreturn]] inline void check_fail(const char* expr, const char* msg,
                                    const char* file, int line) {
  std::fprintf(stderr, "%s:%d: check failed: %s (%s)\n", file, line, msg, expr);
  std::abort();
}
}  // namespace detail

#if NTTKIT_ENABLE_CHECKS
#define NTTKIT_CHECK(cond, msg) \
  ((cond) ? (void)0 : ::nttkit::detail::check_fail(#cond, msg, __FILE__, __LINE__))
#else
#define NTTKIT_CHECK(cond, msg) ((void)0)
#endif

/// Exclusive upper bound on supported moduli: q < 2^62.
inline constexpr uint64_t kModulusBound = uint64_t{1} << 62;

namespace detail {

constexpr uint64_t mul_mod_u64(uint64_t a, uint64_t b, uint64_t m) {
  return static_cast<uint64_t>(static_cast<uint128_t>(a) * b % m);
}

constexpr uint64_t pow_mod_u64(uint64_t base, uint64_t exp, uint64_t m) {
  uint64_t result = 1 % m;
  base %= m;
  while (exp != 0) {
    if (exp & 1) result = mul_mod_u64(result, base, m);
    base = mul_mod_u64(base, base, m);
    exp >>= 1;
  }
  return result;
}

}  // namespace detail

/// Deterministic Miller-Rabin primality test; the first twelve prime
/// witnesses decide primality for every 64-bit integer.
constexpr bool is_prime(uint64_t n) {
  constexpr uint64_t witnesses[] = {2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37};
  if (n < 2) return false;
  for (uint64_t p : witnesses) {
    if (n % p == 0) return n == p;
  }
  uint64_t d = n - 1;
  const int s = std::countr_zero(d);
  d >>= s;
  for (uint64_t a : witnesses) {
    uint64_t x = detail::pow_mod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool composite = true;
    for (int i = 1; i < s; ++i) {
      x = detail::mul_mod_u64(x, x, n);
      if (x == n - 1) {
        composite = false;
        break;
      }
    }
    if (composite) return false;
  }
  return true;
}

/// A word-sized prime modulus with its precomputed Barrett constants.
///
/// bits = floor(log2 q) + 1 and barrett_factor = floor(2^(63+bits) / q).
/// Every odd prime satisfies q > 2^(bits-1), so the factor fits one word;
/// q = 2 would need 2^64 and is rejected along with composites and values
/// outside [3, 2^62).
class Modulus {
 public:
  explicit Modulus(uint64_t q) {
    if (q < 3 || q >= kModulusBound || !is_prime(q)) {
      throw std::invalid_argument("Modulus: value must be a prime in [3, 2^62)");
    }
    value_ = q;
    bits_ = static_cast<unsigned>(std::bit_width(q));
    barrett_factor_ = static_cast<uint64_t>((uint128_t{1} << (63 + bits_)) / q);
  }

  uint64_t value() const noexcept { return value_; }
  unsigned bits() const noexcept { return bits_; }
  /// The shift L in barrett_factor = floor(2^L / q); L = 63 + bits.
  unsigned barrett_shift() const noexcept { return 63 + bits_; }
  uint64_t barrett_factor() const noexcept { return barrett_factor_; }

  friend bool operator==(const Modulus&, const Modulus&) = default;

 private:
  uint64_t value_;
  uint64_t barrett_factor_;
  unsigned bits_;
};

/// High word of the 2k-bit product of two k-bit operands, k in {52, 64}.
template <int BitShift>
constexpr uint64_t mul_hi(uint64_t a, uint64_t b) {
  static_assert(BitShift == 52 || BitShift == 64, "accumulator width is 52 or 64");
  if constexpr (BitShift == 52) {
    NTTKIT_CHECK(a >> 52 == 0 && b >> 52 == 0, "mul_hi<52>: operands must be < 2^52");
  }
  return static_cast<uint64_t>((static_cast<uint128_t>(a) * b) >> BitShift);
}

/// Low k bits of the product of two k-bit operands.
template <int BitShift>
constexpr uint64_t mul_lo(uint64_t a, uint64_t b) {
  static_assert(BitShift == 52 || BitShift == 64, "accumulator width is 52 or 64");
  if constexpr (BitShift == 52) {
    NTTKIT_CHECK(a >> 52 == 0 && b >> 52 == 0, "mul_lo<52>: operands must be < 2^52");
    return (a * b) & ((uint64_t{1} << 52) - 1);
  } else {
    return a * b;
  }
}

/// Low k bits of acc + a*b. The 52-bit variant masks the accumulated sum
/// back to 52 bits, mirroring an integer FMA whose 52-bit lanes live in
/// 64-bit registers.
template <int BitShift>
constexpr uint64_t mul_lo_add(uint64_t acc, uint64_t a, uint64_t b) {
  static_assert(BitShift == 52 || BitShift == 64, "accumulator width is 52 or 64");
  if constexpr (BitShift == 52) {
    NTTKIT_CHECK(a >> 52 == 0 && b >> 52 == 0, "mul_lo_add<52>: operands must be < 2^52");
    return (acc + a * b) & ((uint64_t{1} << 52) - 1);
  } else {
    return acc + a * b;
  }
}

/// A multiplier W paired with its quotient precomputation W' = floor(W*beta/q),
/// enabling modular products that estimate the quotient from one high multiply.
struct MultiplyFactor {
  uint64_t operand;  ///< W, in [0, q)
  uint64_t precon;   ///< floor(W * 2^BitShift / q), < 2^BitShift

  friend bool operator==(const MultiplyFactor&, const MultiplyFactor&) = default;
};

template <int BitShift>
inline MultiplyFactor precompute_factor(uint64_t w, const Modulus& m) {
  static_assert(BitShift == 52 || BitShift == 64, "accumulator width is 52 or 64");
  NTTKIT_CHECK(w < m.value(), "precompute_factor: operand must be < q");
  NTTKIT_CHECK(static_cast<uint128_t>(m.value()) * 4 <= uint128_t{1} << BitShift,
               "precompute_factor: requires q < beta/4");
  return {w, static_cast<uint64_t>((static_cast<uint128_t>(w) << BitShift) / m.value())};
}

/// Exact d mod q for d < 2^(63+bits), division-free.
///
/// Barrett quotient estimate: c3 = high word of (d >> (bits-1)) * k with
/// k = floor(2^(63+bits) / q). Over this input envelope the estimate can
/// undershoot the true quotient by up to two, so the tail applies two
/// branchless conditional subtractions instead of one.
inline uint64_t barrett_reduce(uint128_t d, const Modulus& m) {
  NTTKIT_CHECK(d >> m.barrett_shift() == 0, "barrett_reduce: d must be < 2^(63+bits)");
  const uint64_t q = m.value();
  const uint64_t c1 = static_cast<uint64_t>(d >> (m.bits() - 1));
  const uint64_t c3 = mul_hi<64>(c1, m.barrett_factor());
  uint64_t r = static_cast<uint64_t>(d) - c3 * q;  // true value < 3q, wraps exactly
  r = std::min(r, r - 2 * q);
  r = std::min(r, r - q);
  return r;
}

/// (a * b) mod q via Barrett reduction; operands must already be reduced.
inline uint64_t mul_mod(uint64_t a, uint64_t b, const Modulus& m) {
  NTTKIT_CHECK(a < m.value() && b < m.value(), "mul_mod: operands must be < q");
  return barrett_reduce(static_cast<uint128_t>(a) * b, m);
}

/// (a * b) mod q through the full-width product and hardware division.
/// Slow; serves as the independent reference for mul_mod.
constexpr uint64_t naive_mul_mod(uint64_t a, uint64_t b, uint64_t q) {
  return static_cast<uint64_t>(static_cast<uint128_t>(a) * b % q);
}

/// x mod q for x < factor*q, factor in {1, 2, 4, 8}, using exactly
/// log2(factor) compare-free conditional subtractions: min(x, x - kq) keeps
/// x when the subtraction wraps.
constexpr uint64_t small_mod(uint64_t x, uint64_t q, uint64_t factor) {
  NTTKIT_CHECK(factor == 1 || factor == 2 || factor == 4 || factor == 8,
               "small_mod: factor must be 1, 2, 4 or 8");
  NTTKIT_CHECK(x < static_cast<uint128_t>(factor) * q, "small_mod: x must be < factor*q");
  if (factor == 8) x = std::min(x, x - 4 * q);
  if (factor >= 4) x = std::min(x, x - 2 * q);
  if (factor >= 2) x = std::min(x, x - q);
  return x;
}

/// base^exp mod q by square-and-multiply over Barrett products.
inline uint64_t pow_mod(uint64_t base, uint64_t exp, const Modulus& m) {
  uint64_t result = 1;
  base %= m.value();
  while (exp != 0) {
    if (exp & 1) result = mul_mod(result, base, m);
    base = mul_mod(base, base, m);
    exp >>= 1;
  }
  return result;
}

/// Multiplicative inverse mod a prime, via Fermat: x^(q-2).
inline uint64_t inv_mod(uint64_t x, const Modulus& m) {
  x %= m.value();
  if (x == 0) {
    throw std::invalid_argument("inv_mod: zero is not invertible");
  }
  return pow_mod(x, m.value() - 2, m);
}

}  // namespace nttkit

#endif  // NTTKIT_MODARITH_HPP
