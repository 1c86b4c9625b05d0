// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 nttkit contributors

#ifndef NTTKIT_RING_HPP
#define NTTKIT_RING_HPP

/// \file
/// Polynomial multiplication in R_q = Z_q[X]/(X^n + 1). X^n == -1, so degree
/// wraparound flips the sign of the folded coefficients.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <vector>

#include "nttkit/eltwise.hpp"
#include "nttkit/ntt.hpp"

namespace nttkit {

/// Negacyclic product of two fully reduced polynomials, via the lazy
/// transform pipeline: forward with outputs left in [0, 4q), element-wise
/// multiply consuming factor-4 inputs, inverse fully reduced. The transforms
/// only need one reduction pass this way instead of three.
///
/// result may alias f or g. Requires q < 2^61 so the factor-4 products stay
/// inside the multiply kernels' range.
inline void poly_mult_mod(std::span<uint64_t> result, std::span<const uint64_t> f,
                          std::span<const uint64_t> g, const NttTables& tables) {
  const uint64_t n = tables.size();
  if (result.size() != n || f.size() != n || g.size() != n) {
    throw std::invalid_argument("poly_mult_mod: operand lengths must equal n");
  }
  if (tables.modulus().value() >= kFmaModulusBound) {
    throw std::invalid_argument("poly_mult_mod: requires q < 2^61");
  }
  std::vector<uint64_t> f_hat(n);
  std::vector<uint64_t> g_hat(n);
  tables.forward(f_hat, f, 1, 4);
  tables.forward(g_hat, g, 1, 4);
  eltwise_mult_mod(result, f_hat, g_hat, tables.modulus(), 4);
  tables.inverse(result, result, 1, 1);
}

inline CoeffVec poly_mult_mod(const CoeffVec& f, const CoeffVec& g, const NttTables& tables) {
  NTTKIT_CHECK(f.bound_factor == 1 && g.bound_factor == 1,
               "poly_mult_mod: operands must be fully reduced");
  CoeffVec out(std::vector<uint64_t>(f.size()), 1);
  poly_mult_mod(out.data, f.data, g.data, tables);
  return out;
}

/// Schoolbook negacyclic convolution,
///   c_i = sum_{j<=i} f_j g_{i-j} - sum_{j>i} f_j g_{n+i-j}  (mod q).
/// O(n^2); the reference for poly_mult_mod.
inline std::vector<uint64_t> naive_negacyclic(std::span<const uint64_t> f,
                                              std::span<const uint64_t> g, uint64_t q) {
  if (f.size() != g.size()) {
    throw std::invalid_argument("naive_negacyclic: operand lengths must match");
  }
  const uint64_t n = f.size();
  std::vector<uint64_t> c(n, 0);
  for (uint64_t i = 0; i < n; ++i) {
    uint64_t plus = 0;
    uint64_t minus = 0;
    for (uint64_t j = 0; j <= i; ++j) {
      plus = (plus + naive_mul_mod(f[j], g[i - j], q)) % q;
    }
    for (uint64_t j = i + 1; j < n; ++j) {
      minus = (minus + naive_mul_mod(f[j], g[n + i - j], q)) % q;
    }
    c[i] = (plus + q - minus) % q;
  }
  return c;
}

}  // namespace nttkit

#endif  // NTTKIT_RING_HPP
