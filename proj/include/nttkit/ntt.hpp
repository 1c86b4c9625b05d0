// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 nttkit contributors

#ifndef NTTKIT_NTT_HPP
#define NTTKIT_NTT_HPP

/// \file
/// Negacyclic number-theoretic transform over Z_q with bit-reversed forward
/// outputs and lazy-reduction butterflies.
///
/// The forward transform is the radix-2 Cooley-Tukey decimation with merged
/// twiddles (powers of the 2n'th root psi consumed in bit-reversed order);
/// the inverse is the matching Gentleman-Sande decimation followed by a
/// standalone n^{-1} scaling pass. Butterflies use Harvey's redundant
/// representation - [0, 4q) forward, [0, 2q) inverse - with quotients
/// estimated from precomputed floor(W*beta/q) factors.
///
/// References:
///  - David Harvey, "Faster arithmetic for number-theoretic transforms" (2014)
///  - Patrick Longa, Michael Naehrig, "Speeding up the Number Theoretic
///    Transform for Faster Ideal Lattice-Based Cryptography" (2016)

#include <cstdint>
#include <optional>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "nttkit/modarith.hpp"

namespace nttkit {

inline constexpr uint64_t kMaxNttSize = uint64_t{1} << 20;

/// Reverse the low log2n bits of i.
constexpr uint64_t bit_reverse(uint64_t i, unsigned log2n) {
  NTTKIT_CHECK(log2n < 64 && (log2n == 0 ? i == 0 : i >> log2n == 0),
               "bit_reverse: index must have log2n bits");
  uint64_t r = 0;
  for (unsigned b = 0; b < log2n; ++b) {
    r = (r << 1) | (i & 1);
    i >>= 1;
  }
  return r;
}

/// In-place bit-reversal permutation of a power-of-two-length span. Involution.
template <typename T>
void bit_reverse_permute(std::span<T> v) {
  const uint64_t n = v.size();
  NTTKIT_CHECK(n != 0 && (n & (n - 1)) == 0, "bit_reverse_permute: length must be a power of two");
  const unsigned log2n = static_cast<unsigned>(std::bit_width(n) - 1);
  for (uint64_t i = 0; i < n; ++i) {
    const uint64_t j = bit_reverse(i, log2n);
    if (i < j) std::swap(v[i], v[j]);
  }
}

/// Residue vector paired with its declared range bound: every element is
/// promised to be below bound_factor * q. The bound is bookkeeping for the
/// lazy-reduction contracts; it is validated only in checked builds.
struct CoeffVec {
  std::vector<uint64_t> data;
  uint64_t bound_factor = 1;

  CoeffVec() = default;
  explicit CoeffVec(std::vector<uint64_t> d, uint64_t factor = 1)
      : data(std::move(d)), bound_factor(factor) {}

  uint64_t size() const noexcept { return data.size(); }

  bool within_bound(const Modulus& m) const {
    const uint128_t bound = static_cast<uint128_t>(bound_factor) * m.value();
    for (uint64_t x : data) {
      if (x >= bound) return false;
    }
    return true;
  }
};

namespace detail {

/// -q modulo the accumulator width.
template <int BitShift>
constexpr uint64_t negated_modulus(uint64_t q) {
  if constexpr (BitShift == 52) {
    return (uint64_t{1} << 52) - q;
  } else {
    return ~q + 1;
  }
}

/// w*x mod q in [0, 2q) from the precomputed quotient factor:
/// qhat = floor(w_precon * x / beta), result = w*x - qhat*q (mod beta).
/// Exact for x < beta since the estimate error stays below 2q.
template <int BitShift>
constexpr uint64_t mul_factor_lazy(uint64_t x, uint64_t w, uint64_t w_precon, uint64_t neg_q) {
  const uint64_t qhat = mul_hi<BitShift>(w_precon, x);
  return mul_lo_add<BitShift>(mul_lo<BitShift>(w, x), qhat, neg_q);
}

template <int BitShift, bool InputLessThanMod>
constexpr void fwd_butterfly(uint64_t& x0, uint64_t& x1, uint64_t w, uint64_t w_precon,
                             uint64_t twice_q, uint64_t neg_q) {
  uint64_t u = x0;
  if constexpr (!InputLessThanMod) {
    u = std::min(u, u - twice_q);  // [0, 4q) -> [0, 2q)
  }
  const uint64_t t = mul_factor_lazy<BitShift>(x1, w, w_precon, neg_q);
  x0 = u + t;
  x1 = u + twice_q - t;
}

template <int BitShift, bool InputLessThanMod>
constexpr void inv_butterfly(uint64_t& x0, uint64_t& x1, uint64_t w, uint64_t w_precon,
                             uint64_t twice_q, uint64_t neg_q) {
  // t = x0 - x1 + 2q computed through the wrapped x1 - 2q; always in (0, 4q)
  const uint64_t x1_minus_2q = x1 - twice_q;
  uint64_t t = x0 - x1_minus_2q;
  if constexpr (BitShift == 52) {
    t &= (uint64_t{1} << 52) - 1;  // 52-bit accumulator discipline; masked before use
  }
  uint64_t sum = x0 + x1;
  if constexpr (!InputLessThanMod) {
    sum = std::min(sum, sum - twice_q);
  }
  x0 = sum;
  x1 = mul_factor_lazy<BitShift>(t, w, w_precon, neg_q);
}

}  // namespace detail

/// One forward lazy butterfly: y0 = x0 + w*x1, y1 = x0 - w*x1 (mod q), with
/// inputs and outputs in the redundant range [0, 4q). Requires q < beta/4.
template <int BitShift>
inline std::pair<uint64_t, uint64_t> harvey_forward_butterfly(uint64_t x0, uint64_t x1,
                                                              const MultiplyFactor& w,
                                                              const Modulus& m) {
  static_assert(BitShift == 52 || BitShift == 64);
  const uint64_t q = m.value();
  NTTKIT_CHECK(static_cast<uint128_t>(q) * 4 <= uint128_t{1} << BitShift,
               "harvey_forward_butterfly: requires q < beta/4");
  NTTKIT_CHECK(x0 < 4 * q && x1 < 4 * q, "harvey_forward_butterfly: inputs must be < 4q");
  detail::fwd_butterfly<BitShift, false>(x0, x1, w.operand, w.precon, 2 * q,
                                         detail::negated_modulus<BitShift>(q));
  NTTKIT_CHECK(x0 < 4 * q && x1 < 4 * q, "harvey_forward_butterfly: outputs must be < 4q");
  return {x0, x1};
}

/// One inverse lazy butterfly: y0 = x0 + x1, y1 = w*(x0 - x1) (mod q), with
/// inputs and outputs in [0, 2q). Requires q < beta/4.
template <int BitShift>
inline std::pair<uint64_t, uint64_t> harvey_inverse_butterfly(uint64_t x0, uint64_t x1,
                                                              const MultiplyFactor& w,
                                                              const Modulus& m) {
  static_assert(BitShift == 52 || BitShift == 64);
  const uint64_t q = m.value();
  NTTKIT_CHECK(static_cast<uint128_t>(q) * 4 <= uint128_t{1} << BitShift,
               "harvey_inverse_butterfly: requires q < beta/4");
  NTTKIT_CHECK(x0 < 2 * q && x1 < 2 * q, "harvey_inverse_butterfly: inputs must be < 2q");
  detail::inv_butterfly<BitShift, false>(x0, x1, w.operand, w.precon, 2 * q,
                                         detail::negated_modulus<BitShift>(q));
  NTTKIT_CHECK(x0 < 2 * q && x1 < 2 * q, "harvey_inverse_butterfly: outputs must be < 2q");
  return {x0, x1};
}

/// Smallest primitive `order`'th root of unity mod q, for a power-of-two
/// order dividing q-1. Successive candidate generators g are raised to
/// (q-1)/order until one yields a primitive root w0 (w0^(order/2) == -1);
/// the minimum then lies among the odd powers of w0.
inline uint64_t minimal_primitive_root(uint64_t order, const Modulus& m) {
  const uint64_t q = m.value();
  if (order == 0 || (order & (order - 1)) != 0 || (q - 1) % order != 0) {
    throw std::invalid_argument("minimal_primitive_root: order must be a power of two dividing q-1");
  }
  if (order == 1) return 1;
  const uint64_t half = order / 2;
  const uint64_t exp = (q - 1) / order;
  uint64_t w0 = 0;
  for (uint64_t g = 2; g < q; ++g) {
    const uint64_t w = pow_mod(g, exp, m);
    if (pow_mod(w, half, m) == q - 1) {
      w0 = w;
      break;
    }
  }
  NTTKIT_CHECK(w0 != 0, "minimal_primitive_root: no candidate found");
  const uint64_t w0_sq = mul_mod(w0, w0, m);
  uint64_t current = w0;
  uint64_t best = w0;
  for (uint64_t i = 1; i < half; ++i) {
    current = mul_mod(current, w0_sq, m);
    best = std::min(best, current);
  }
  return best;
}

/// Precomputed tables for negacyclic transforms of length n over Z_q.
///
/// Stores the powers of the primitive 2n'th root psi (and of psi^{-1}) in
/// bit-reversed order together with their quotient precomputations for the
/// active accumulator width, plus n^{-1} mod q for the inverse scaling pass.
/// Immutable after construction; concurrent transforms on distinct buffers
/// are safe.
class NttTables {
 public:
  /// Builds tables with the minimal primitive root and an automatically
  /// selected accumulator width (2^52 when 4q < 2^52, else 2^64).
  NttTables(uint64_t n, const Modulus& m) : NttTables(n, m, std::nullopt, select_bit_shift(m)) {}

  NttTables(uint64_t n, const Modulus& m, uint64_t root)
      : NttTables(n, m, std::optional<uint64_t>(root), select_bit_shift(m)) {}

  /// Full-control constructor; bit_shift must be 52 or 64, and 52 requires
  /// 4q < 2^52. A supplied root must be a primitive 2n'th root of unity.
  NttTables(uint64_t n, const Modulus& m, std::optional<uint64_t> root, int bit_shift)
      : m_(m), n_(n), bit_shift_(bit_shift) {
    if (n < 2 || n > kMaxNttSize || (n & (n - 1)) != 0) {
      throw std::invalid_argument("NttTables: n must be a power of two in [2, 2^20]");
    }
    log2n_ = static_cast<unsigned>(std::bit_width(n) - 1);
    if (m.value() % (2 * n) != 1) {
      throw std::invalid_argument("NttTables: q must satisfy q == 1 (mod 2n)");
    }
    if (bit_shift != 52 && bit_shift != 64) {
      throw std::invalid_argument("NttTables: accumulator width must be 52 or 64");
    }
    if (bit_shift == 52 && 4 * static_cast<uint128_t>(m.value()) >= (uint128_t{1} << 52)) {
      throw std::invalid_argument("NttTables: 52-bit accumulator requires 4q < 2^52");
    }
    if (root.has_value()) {
      const uint64_t w = *root;
      if (w == 0 || w >= m.value() || pow_mod(w, n, m) != m.value() - 1) {
        throw std::invalid_argument("NttTables: root is not a primitive 2n'th root of unity");
      }
      psi_ = w;
    } else {
      psi_ = minimal_primitive_root(2 * n, m);
    }
    psi_inv_ = inv_mod(psi_, m);
    if (bit_shift_ == 52) {
      build_tables<52>();
    } else {
      build_tables<64>();
    }
  }

  uint64_t size() const noexcept { return n_; }
  unsigned log2_size() const noexcept { return log2n_; }
  const Modulus& modulus() const noexcept { return m_; }
  uint64_t root() const noexcept { return psi_; }
  uint64_t inv_root() const noexcept { return psi_inv_; }
  int bit_shift() const noexcept { return bit_shift_; }
  const MultiplyFactor& inv_size() const noexcept { return n_inv_; }

  /// psi^i at index bit_reverse(i), with the matching precon array.
  std::span<const uint64_t> root_powers_rev() const noexcept { return psi_rev_; }
  std::span<const uint64_t> root_precons_rev() const noexcept { return psi_precon_rev_; }
  std::span<const uint64_t> inv_root_powers_rev() const noexcept { return psi_inv_rev_; }
  std::span<const uint64_t> inv_root_precons_rev() const noexcept { return psi_inv_precon_rev_; }

  /// Forward negacyclic transform; output is bit-reversed.
  ///
  /// Inputs must lie in [0, input_mod_factor*q) with factor 1, 2 or 4;
  /// outputs land in [0, output_mod_factor*q) with factor 1 or 4. result and
  /// operand may alias fully (in-place) or must not overlap at all.
  void forward(std::span<uint64_t> result, std::span<const uint64_t> operand,
               uint64_t input_mod_factor, uint64_t output_mod_factor) const {
    if (input_mod_factor != 1 && input_mod_factor != 2 && input_mod_factor != 4) {
      throw std::invalid_argument("forward: input_mod_factor must be 1, 2 or 4");
    }
    if (output_mod_factor != 1 && output_mod_factor != 4) {
      throw std::invalid_argument("forward: output_mod_factor must be 1 or 4");
    }
    prepare(result, operand, input_mod_factor);
    if (bit_shift_ == 52) {
      forward_impl<52>(result.data(), input_mod_factor);
    } else {
      forward_impl<64>(result.data(), input_mod_factor);
    }
    if (output_mod_factor == 1) {
      for (uint64_t& x : result) x = small_mod(x, m_.value(), 4);
    }
  }

  /// Inverse transform of a bit-reversed input back to standard order,
  /// including the n^{-1} scaling. Factors: input 1 or 2, output 1 or 2.
  void inverse(std::span<uint64_t> result, std::span<const uint64_t> operand,
               uint64_t input_mod_factor, uint64_t output_mod_factor) const {
    if (input_mod_factor != 1 && input_mod_factor != 2) {
      throw std::invalid_argument("inverse: input_mod_factor must be 1 or 2");
    }
    if (output_mod_factor != 1 && output_mod_factor != 2) {
      throw std::invalid_argument("inverse: output_mod_factor must be 1 or 2");
    }
    prepare(result, operand, input_mod_factor);
    if (bit_shift_ == 52) {
      inverse_impl<52>(result.data(), input_mod_factor);
    } else {
      inverse_impl<64>(result.data(), input_mod_factor);
    }
    if (output_mod_factor == 1) {
      for (uint64_t& x : result) x = small_mod(x, m_.value(), 2);
    }
  }

  CoeffVec forward(const CoeffVec& in, uint64_t input_mod_factor, uint64_t output_mod_factor) const {
    NTTKIT_CHECK(in.bound_factor <= input_mod_factor, "forward: CoeffVec bound exceeds input_mod_factor");
    CoeffVec out(std::vector<uint64_t>(in.data.size()), output_mod_factor);
    forward(out.data, in.data, input_mod_factor, output_mod_factor);
    return out;
  }

  CoeffVec inverse(const CoeffVec& in, uint64_t input_mod_factor, uint64_t output_mod_factor) const {
    NTTKIT_CHECK(in.bound_factor <= input_mod_factor, "inverse: CoeffVec bound exceeds input_mod_factor");
    CoeffVec out(std::vector<uint64_t>(in.data.size()), output_mod_factor);
    inverse(out.data, in.data, input_mod_factor, output_mod_factor);
    return out;
  }

 private:
  static int select_bit_shift(const Modulus& m) {
    return 4 * static_cast<uint128_t>(m.value()) < (uint128_t{1} << 52) ? 52 : 64;
  }

  void prepare(std::span<uint64_t> result, std::span<const uint64_t> operand,
               uint64_t input_mod_factor) const {
    if (result.size() != n_ || operand.size() != n_) {
      throw std::invalid_argument("transform: buffer length must equal n");
    }
#if NTTKIT_ENABLE_CHECKS
    const uint128_t bound = static_cast<uint128_t>(input_mod_factor) * m_.value();
    for (uint64_t x : operand) {
      NTTKIT_CHECK(x < bound, "transform: input element out of declared range");
    }
#endif
    if (result.data() != operand.data()) {
      std::copy(operand.begin(), operand.end(), result.begin());
    }
  }

  template <int BitShift>
  void build_tables() {
    psi_rev_.resize(n_);
    psi_precon_rev_.resize(n_);
    psi_inv_rev_.resize(n_);
    psi_inv_precon_rev_.resize(n_);
    uint64_t fwd = 1;
    uint64_t inv = 1;
    for (uint64_t i = 0; i < n_; ++i) {
      const uint64_t r = bit_reverse(i, log2n_);
      psi_rev_[r] = fwd;
      psi_inv_rev_[r] = inv;
      psi_precon_rev_[r] = precompute_factor<BitShift>(fwd, m_).precon;
      psi_inv_precon_rev_[r] = precompute_factor<BitShift>(inv, m_).precon;
      fwd = mul_mod(fwd, psi_, m_);
      inv = mul_mod(inv, psi_inv_, m_);
    }
    n_inv_ = precompute_factor<BitShift>(inv_mod(n_ % m_.value(), m_), m_);
  }

  template <int BitShift>
  void forward_impl(uint64_t* a, uint64_t input_mod_factor) const {
    const uint64_t q = m_.value();
    const uint64_t twice_q = 2 * q;
    const uint64_t neg_q = detail::negated_modulus<BitShift>(q);
    const uint64_t* w_arr = psi_rev_.data();
    const uint64_t* wp_arr = psi_precon_rev_.data();
    uint64_t t = n_ >> 1;
    uint64_t m = 1;
    if (input_mod_factor == 1) {
      // First stage on fully reduced input: the [0,2q) pre-reduction is a no-op.
      const uint64_t w = w_arr[1];
      const uint64_t wp = wp_arr[1];
      uint64_t* y = a + t;
      for (uint64_t j = 0; j < t; ++j) {
        detail::fwd_butterfly<BitShift, true>(a[j], y[j], w, wp, twice_q, neg_q);
      }
      m = 2;
      t >>= 1;
    }
    for (; m < n_; m <<= 1, t >>= 1) {
      for (uint64_t i = 0; i < m; ++i) {
        const uint64_t w = w_arr[m + i];
        const uint64_t wp = wp_arr[m + i];
        uint64_t* x = a + 2 * i * t;
        uint64_t* y = x + t;
        for (uint64_t j = 0; j < t; ++j) {
          detail::fwd_butterfly<BitShift, false>(x[j], y[j], w, wp, twice_q, neg_q);
        }
      }
    }
  }

  template <int BitShift>
  void inverse_impl(uint64_t* a, uint64_t input_mod_factor) const {
    const uint64_t q = m_.value();
    const uint64_t twice_q = 2 * q;
    const uint64_t neg_q = detail::negated_modulus<BitShift>(q);
    const uint64_t* w_arr = psi_inv_rev_.data();
    const uint64_t* wp_arr = psi_inv_precon_rev_.data();
    uint64_t t = 1;
    uint64_t m = n_;
    if (input_mod_factor == 1) {
      // First stage on reduced input: x0 + x1 < 2q without the conditional subtract.
      const uint64_t h = m >> 1;
      for (uint64_t i = 0; i < h; ++i) {
        detail::inv_butterfly<BitShift, true>(a[2 * i], a[2 * i + 1], w_arr[h + i],
                                              wp_arr[h + i], twice_q, neg_q);
      }
      m = h;
      t = 2;
    }
    for (; m > 1; m >>= 1, t <<= 1) {
      const uint64_t h = m >> 1;
      uint64_t j1 = 0;
      for (uint64_t i = 0; i < h; ++i) {
        const uint64_t w = w_arr[h + i];
        const uint64_t wp = wp_arr[h + i];
        uint64_t* x = a + j1;
        uint64_t* y = x + t;
        for (uint64_t j = 0; j < t; ++j) {
          detail::inv_butterfly<BitShift, false>(x[j], y[j], w, wp, twice_q, neg_q);
        }
        j1 += 2 * t;
      }
    }
    // Standalone n^{-1} scaling pass; keeps elements in [0, 2q).
    for (uint64_t j = 0; j < n_; ++j) {
      a[j] = detail::mul_factor_lazy<BitShift>(a[j], n_inv_.operand, n_inv_.precon, neg_q);
    }
  }

  Modulus m_;
  uint64_t n_;
  unsigned log2n_ = 0;
  int bit_shift_;
  uint64_t psi_ = 0;
  uint64_t psi_inv_ = 0;
  std::vector<uint64_t> psi_rev_;
  std::vector<uint64_t> psi_precon_rev_;
  std::vector<uint64_t> psi_inv_rev_;
  std::vector<uint64_t> psi_inv_precon_rev_;
  MultiplyFactor n_inv_{0, 0};
};

enum class NttDirection { forward, inverse };

/// O(n^2) negacyclic transform straight from the definitions, for cross-checking
/// the fast path on small sizes. Uses only full-width division arithmetic;
/// nothing is shared with the Barrett/Harvey implementation.
///
/// forward: out[bit_reverse(i)] = sum_j psi^j a_j omega^(i*j), omega = psi^2.
/// inverse: consumes a bit-reversed input and returns
///          n^{-1} psi^{-i} sum_j a~_j omega^(-i*j) in standard order.
inline std::vector<uint64_t> reference_ntt(std::span<const uint64_t> a, const Modulus& m,
                                           uint64_t psi, NttDirection dir) {
  const uint64_t q = m.value();
  const uint64_t n = a.size();
  NTTKIT_CHECK(n >= 2 && (n & (n - 1)) == 0, "reference_ntt: length must be a power of two >= 2");
  const unsigned log2n = static_cast<unsigned>(std::bit_width(n) - 1);

  auto naive_pow = [q](uint64_t base, uint64_t exp) {
    uint64_t r = 1;
    base %= q;
    while (exp != 0) {
      if (exp & 1) r = naive_mul_mod(r, base, q);
      base = naive_mul_mod(base, base, q);
      exp >>= 1;
    }
    return r;
  };

  std::vector<uint64_t> out(n);
  if (dir == NttDirection::forward) {
    const uint64_t omega = naive_mul_mod(psi, psi, q);
    for (uint64_t i = 0; i < n; ++i) {
      const uint64_t wi = naive_pow(omega, i);
      uint64_t acc = 0;
      uint64_t coeff = 1;  // psi^j * omega^(i*j), advanced by psi*omega^i
      const uint64_t step = naive_mul_mod(psi, wi, q);
      for (uint64_t j = 0; j < n; ++j) {
        acc = (acc + naive_mul_mod(a[j], coeff, q)) % q;
        coeff = naive_mul_mod(coeff, step, q);
      }
      out[bit_reverse(i, log2n)] = acc;
    }
  } else {
    std::vector<uint64_t> standard(a.begin(), a.end());
    bit_reverse_permute(std::span<uint64_t>(standard));
    const uint64_t psi_inv = naive_pow(psi, 2 * n - 1);
    const uint64_t omega_inv = naive_mul_mod(psi_inv, psi_inv, q);
    const uint64_t n_inv = naive_pow(n % q, q - 2);
    for (uint64_t i = 0; i < n; ++i) {
      uint64_t acc = 0;
      uint64_t coeff = 1;
      const uint64_t step = naive_pow(omega_inv, i);
      for (uint64_t j = 0; j < n; ++j) {
        acc = (acc + naive_mul_mod(standard[j], coeff, q)) % q;
        coeff = naive_mul_mod(coeff, step, q);
      }
      acc = naive_mul_mod(acc, naive_pow(psi_inv, i), q);
      out[i] = naive_mul_mod(acc, n_inv, q);
    }
  }
  return out;
}

}  // namespace nttkit

#endif  // NTTKIT_NTT_HPP
