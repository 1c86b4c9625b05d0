// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 nttkit contributors

#ifndef NTTKIT_ELTWISE_HPP
#define NTTKIT_ELTWISE_HPP

/// \file
/// Element-wise vector kernels over Z_q with lazy input range contracts:
/// addition, negation, vector-vector modular multiplication (integer-Barrett
/// and floating-point variants) and vector-scalar fused multiply-add.

#include <cmath>
#include <cstdint>
#include <limits>
#include <optional>
#include <span>
#include <stdexcept>

#include "nttkit/modarith.hpp"
#include "nttkit/ntt.hpp"

namespace nttkit {

namespace detail {

inline void require_equal_sizes(size_t r, size_t a, size_t b) {
  if (r != a || a != b) {
    throw std::invalid_argument("eltwise: operand lengths must match");
  }
}

#if NTTKIT_ENABLE_CHECKS
inline void check_range(std::span<const uint64_t> v, uint64_t factor, const Modulus& m,
                        const char* what) {
  const uint128_t bound = static_cast<uint128_t>(factor) * m.value();
  for (uint64_t x : v) {
    NTTKIT_CHECK(x < bound, what);
  }
}
#else
inline void check_range(std::span<const uint64_t>, uint64_t, const Modulus&, const char*) {}
#endif

}  // namespace detail

/// result[i] = (a[i] + b[i]) mod q. Inputs must already be reduced.
inline void eltwise_add_mod(std::span<uint64_t> result, std::span<const uint64_t> a,
                            std::span<const uint64_t> b, const Modulus& m) {
  detail::require_equal_sizes(result.size(), a.size(), b.size());
  detail::check_range(a, 1, m, "eltwise_add_mod: element must be < q");
  detail::check_range(b, 1, m, "eltwise_add_mod: element must be < q");
  const uint64_t q = m.value();
  for (size_t i = 0; i < result.size(); ++i) {
    const uint64_t s = a[i] + b[i];  // < 2q < 2^63
    result[i] = std::min(s, s - q);
  }
}

/// result[i] = (q - a[i]) mod q, so zero stays zero.
inline void eltwise_neg_mod(std::span<uint64_t> result, std::span<const uint64_t> a,
                            const Modulus& m) {
  if (result.size() != a.size()) {
    throw std::invalid_argument("eltwise: operand lengths must match");
  }
  detail::check_range(a, 1, m, "eltwise_neg_mod: element must be < q");
  const uint64_t q = m.value();
  for (size_t i = 0; i < result.size(); ++i) {
    result[i] = a[i] == 0 ? 0 : q - a[i];
  }
}

namespace detail {

template <int InputModFactor>
inline void mult_mod_int_loop(uint64_t* r, const uint64_t* a, const uint64_t* b, size_t n,
                              const Modulus& m) {
  const uint64_t q = m.value();
  const uint64_t twice_q = 2 * q;
  const uint64_t barr = m.barrett_factor();
  const unsigned shift = m.bits() - 1;
  for (size_t i = 0; i < n; ++i) {
    const uint64_t x = small_mod(a[i], q, InputModFactor);
    const uint64_t y = small_mod(b[i], q, InputModFactor);
    const uint128_t prod = static_cast<uint128_t>(x) * y;
    const uint64_t c1 = static_cast<uint64_t>(prod >> shift);
    const uint64_t c3 = mul_hi<64>(c1, barr);
    uint64_t c4 = static_cast<uint64_t>(prod) - c3 * q;
    c4 = std::min(c4, c4 - twice_q);
    c4 = std::min(c4, c4 - q);
    r[i] = c4;
  }
}

/// 1/q as a double rounded toward +infinity, so that u >= 1/q exactly.
inline double inv_modulus_round_up(uint64_t q) {
  const double qd = static_cast<double>(q);
  double u = 1.0 / qd;
  const double p = u * qd;
  const double e = std::fma(u, qd, -p);  // p + e == u*q exactly
  if (p < 1.0 || (p == 1.0 && e < 0.0)) {
    u = std::nextafter(u, std::numeric_limits<double>::infinity());
  }
  return u;
}

template <int InputModFactor>
inline void mult_mod_float_loop(uint64_t* r, const uint64_t* a, const uint64_t* b, size_t n,
                                const Modulus& m) {
  const uint64_t q = m.value();
  const double qd = static_cast<double>(q);
  const double u = inv_modulus_round_up(q);
  for (size_t i = 0; i < n; ++i) {
    // Conversions are exact: operands are below q < 2^50 after reduction.
    const double x = static_cast<double>(small_mod(a[i], q, InputModFactor));
    const double y = static_cast<double>(small_mod(b[i], q, InputModFactor));
    const double h = x * y;
    const double l = std::fma(x, y, -h);  // rounding error; h + l == x*y
    const double c = std::floor(h * u);   // quotient estimate, off by at most one
    const double d = std::fma(-c, qd, h);
    double g = d + l;                     // == x*y - c*q exactly
    if (g < 0.0) g += qd;
    if (g >= qd) g -= qd;
    r[i] = static_cast<uint64_t>(g);
  }
}

}  // namespace detail

/// Exclusive modulus bound for the floating-point multiply path. Below 2^50
/// the binary64 quotient estimate is off by at most one in either direction,
/// which the two final corrections absorb; larger moduli must take the
/// integer path.
inline constexpr uint64_t kFloatPathBound = uint64_t{1} << 50;

/// Integer-Barrett element-wise multiply: result[i] = a[i]*b[i] mod q for
/// inputs in [0, input_mod_factor*q). Requires input_mod_factor*q < 2^63.
inline void eltwise_mult_mod_int(std::span<uint64_t> result, std::span<const uint64_t> a,
                                 std::span<const uint64_t> b, const Modulus& m,
                                 uint64_t input_mod_factor) {
  detail::require_equal_sizes(result.size(), a.size(), b.size());
  if (input_mod_factor != 1 && input_mod_factor != 2 && input_mod_factor != 4) {
    throw std::invalid_argument("eltwise_mult_mod: input_mod_factor must be 1, 2 or 4");
  }
  if (static_cast<uint128_t>(input_mod_factor) * m.value() >= (uint128_t{1} << 63)) {
    throw std::invalid_argument("eltwise_mult_mod_int: requires input_mod_factor*q < 2^63");
  }
  detail::check_range(a, input_mod_factor, m, "eltwise_mult_mod: element out of declared range");
  detail::check_range(b, input_mod_factor, m, "eltwise_mult_mod: element out of declared range");
  switch (input_mod_factor) {
    case 1: detail::mult_mod_int_loop<1>(result.data(), a.data(), b.data(), result.size(), m); break;
    case 2: detail::mult_mod_int_loop<2>(result.data(), a.data(), b.data(), result.size(), m); break;
    default: detail::mult_mod_int_loop<4>(result.data(), a.data(), b.data(), result.size(), m); break;
  }
}

/// Floating-point element-wise multiply; exact for q < 2^50. Inputs in
/// [0, input_mod_factor*q) are reduced before the double-precision product.
inline void eltwise_mult_mod_float(std::span<uint64_t> result, std::span<const uint64_t> a,
                                   std::span<const uint64_t> b, const Modulus& m,
                                   uint64_t input_mod_factor) {
  detail::require_equal_sizes(result.size(), a.size(), b.size());
  if (input_mod_factor != 1 && input_mod_factor != 2 && input_mod_factor != 4) {
    throw std::invalid_argument("eltwise_mult_mod: input_mod_factor must be 1, 2 or 4");
  }
  if (m.value() >= kFloatPathBound) {
    throw std::invalid_argument("eltwise_mult_mod_float: requires q < 2^50");
  }
  detail::check_range(a, input_mod_factor, m, "eltwise_mult_mod: element out of declared range");
  detail::check_range(b, input_mod_factor, m, "eltwise_mult_mod: element out of declared range");
  switch (input_mod_factor) {
    case 1: detail::mult_mod_float_loop<1>(result.data(), a.data(), b.data(), result.size(), m); break;
    case 2: detail::mult_mod_float_loop<2>(result.data(), a.data(), b.data(), result.size(), m); break;
    default: detail::mult_mod_float_loop<4>(result.data(), a.data(), b.data(), result.size(), m); break;
  }
}

/// result[i] = (a[i] * b[i]) mod q with inputs in [0, input_mod_factor*q).
/// Takes the floating-point path when q < 2^50, else the integer path; the
/// two agree exactly wherever both apply.
inline void eltwise_mult_mod(std::span<uint64_t> result, std::span<const uint64_t> a,
                             std::span<const uint64_t> b, const Modulus& m,
                             uint64_t input_mod_factor) {
  if (m.value() < kFloatPathBound) {
    eltwise_mult_mod_float(result, a, b, m, input_mod_factor);
  } else {
    eltwise_mult_mod_int(result, a, b, m, input_mod_factor);
  }
}

namespace detail {

template <int BitShift, int InputModFactor>
inline void fma_mod_loop(uint64_t* r, const uint64_t* a, uint64_t y, const uint64_t* z,
                         size_t n, const Modulus& m) {
  const uint64_t q = m.value();
  // y_barr = floor(y << BitShift / q); one high multiply then recovers the
  // quotient of x*y by q to within one.
  const uint64_t y_barr = static_cast<uint64_t>((static_cast<uint128_t>(y) << BitShift) / q);
  for (size_t i = 0; i < n; ++i) {
    const uint64_t x = small_mod(a[i], q, InputModFactor);
    uint64_t v = x * y - mul_hi<BitShift>(x, y_barr) * q;  // in [0, 2q)
    v = std::min(v, v - q);
    if (z != nullptr) {
      v += small_mod(z[i], q, InputModFactor);  // < 2q
      v = std::min(v, v - q);
    }
    r[i] = v;
  }
}

template <int BitShift>
inline void fma_mod_dispatch(uint64_t* r, const uint64_t* a, uint64_t y, const uint64_t* z,
                             size_t n, const Modulus& m, uint64_t input_mod_factor) {
  switch (input_mod_factor) {
    case 1: fma_mod_loop<BitShift, 1>(r, a, y, z, n, m); break;
    case 2: fma_mod_loop<BitShift, 2>(r, a, y, z, n, m); break;
    case 4: fma_mod_loop<BitShift, 4>(r, a, y, z, n, m); break;
    default: fma_mod_loop<BitShift, 8>(r, a, y, z, n, m); break;
  }
}

}  // namespace detail

/// Maximum modulus accepted by eltwise_fma_mod: q < 2^61.
inline constexpr uint64_t kFmaModulusBound = uint64_t{1} << 61;

/// result[i] = (a[i] * y + z[i]) mod q, z treated as zero when absent.
/// Inputs in [0, input_mod_factor*q), factor in {1, 2, 4, 8}; the scalar y
/// must be reduced. BitShift selects the accumulator width of the quotient
/// estimate and requires input_mod_factor*q < 2^BitShift.
template <int BitShift>
inline void eltwise_fma_mod(std::span<uint64_t> result, std::span<const uint64_t> a, uint64_t y,
                            std::optional<std::span<const uint64_t>> z, const Modulus& m,
                            uint64_t input_mod_factor) {
  static_assert(BitShift == 52 || BitShift == 64);
  if (result.size() != a.size() || (z.has_value() && z->size() != a.size())) {
    throw std::invalid_argument("eltwise: operand lengths must match");
  }
  if (input_mod_factor != 1 && input_mod_factor != 2 && input_mod_factor != 4 &&
      input_mod_factor != 8) {
    throw std::invalid_argument("eltwise_fma_mod: input_mod_factor must be 1, 2, 4 or 8");
  }
  if (m.value() >= kFmaModulusBound) {
    throw std::invalid_argument("eltwise_fma_mod: requires q < 2^61");
  }
  if (y >= m.value()) {
    throw std::invalid_argument("eltwise_fma_mod: scalar must be < q");
  }
  if (static_cast<uint128_t>(input_mod_factor) * m.value() >= (uint128_t{1} << BitShift)) {
    throw std::invalid_argument("eltwise_fma_mod: requires input_mod_factor*q < 2^BitShift");
  }
  detail::check_range(a, input_mod_factor, m, "eltwise_fma_mod: element out of declared range");
  if (z.has_value()) {
    detail::check_range(*z, input_mod_factor, m, "eltwise_fma_mod: element out of declared range");
  }
  detail::fma_mod_dispatch<BitShift>(result.data(), a.data(), y,
                                     z.has_value() ? z->data() : nullptr, result.size(), m,
                                     input_mod_factor);
}

/// eltwise_fma_mod with the accumulator width chosen automatically: 52 when
/// input_mod_factor*q < 2^52, else 64.
inline void eltwise_fma_mod(std::span<uint64_t> result, std::span<const uint64_t> a, uint64_t y,
                            std::optional<std::span<const uint64_t>> z, const Modulus& m,
                            uint64_t input_mod_factor) {
  if (static_cast<uint128_t>(input_mod_factor) * m.value() < (uint128_t{1} << 52)) {
    eltwise_fma_mod<52>(result, a, y, z, m, input_mod_factor);
  } else {
    eltwise_fma_mod<64>(result, a, y, z, m, input_mod_factor);
  }
}

// CoeffVec conveniences; results are always fully reduced.

inline CoeffVec eltwise_add_mod(const CoeffVec& a, const CoeffVec& b, const Modulus& m) {
  CoeffVec out(std::vector<uint64_t>(a.size()), 1);
  eltwise_add_mod(out.data, a.data, b.data, m);
  return out;
}

inline CoeffVec eltwise_neg_mod(const CoeffVec& a, const Modulus& m) {
  CoeffVec out(std::vector<uint64_t>(a.size()), 1);
  eltwise_neg_mod(out.data, a.data, m);
  return out;
}

inline CoeffVec eltwise_mult_mod(const CoeffVec& a, const CoeffVec& b, const Modulus& m,
                                 uint64_t input_mod_factor) {
  NTTKIT_CHECK(a.bound_factor <= input_mod_factor && b.bound_factor <= input_mod_factor,
               "eltwise_mult_mod: CoeffVec bound exceeds input_mod_factor");
  CoeffVec out(std::vector<uint64_t>(a.size()), 1);
  eltwise_mult_mod(out.data, a.data, b.data, m, input_mod_factor);
  return out;
}

inline CoeffVec eltwise_fma_mod(const CoeffVec& a, uint64_t y, const CoeffVec* z,
                                const Modulus& m, uint64_t input_mod_factor) {
  CoeffVec out(std::vector<uint64_t>(a.size()), 1);
  std::optional<std::span<const uint64_t>> zs;
  if (z != nullptr) zs = std::span<const uint64_t>(z->data);
  eltwise_fma_mod(out.data, a.data, y, zs, m, input_mod_factor);
  return out;
}

}  // namespace nttkit

#endif  // NTTKIT_ELTWISE_HPP
