// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 nttkit contributors

#include "nttkit/ring.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace nttkit {
namespace {

TEST(NaiveNegacyclic, TrivialCases) {
  const std::vector<uint64_t> zero(4, 0);
  EXPECT_EQ(naive_negacyclic(zero, zero, 17), zero);

  std::vector<uint64_t> delta(4, 0);
  delta[0] = 1;
  EXPECT_EQ(naive_negacyclic(delta, delta, 17), delta);
}

TEST(NaiveNegacyclic, SchoolbookExample) {
  // (1 + 2X + 3X^2 + 4X^3)(5 + 6X + 7X^2 + 8X^3) mod (X^4 + 1, 17)
  const std::vector<uint64_t> f{1, 2, 3, 4};
  const std::vector<uint64_t> g{5, 6, 7, 8};
  EXPECT_EQ(naive_negacyclic(f, g, 17), (std::vector<uint64_t>{12, 15, 2, 9}));
}

TEST(PolyMultMod, RingIdentity) {
  testutil::Rng rng(51);
  const Modulus m(97);
  const NttTables t(16, m);
  const std::vector<uint64_t> g = rng.vector_below(16, 97);
  std::vector<uint64_t> one(16, 0);
  one[0] = 1;
  std::vector<uint64_t> out(16);
  poly_mult_mod(out, one, g, t);
  EXPECT_EQ(out, g);
}

TEST(PolyMultMod, DegreeWraparoundIsNegacyclic) {
  // X * X^(n-1) == X^n == -1
  const Modulus m(97);
  const NttTables t(8, m);
  std::vector<uint64_t> x(8, 0);
  x[1] = 1;
  std::vector<uint64_t> xn1(8, 0);
  xn1[7] = 1;
  std::vector<uint64_t> out(8);
  poly_mult_mod(out, x, xn1, t);
  std::vector<uint64_t> want(8, 0);
  want[0] = 96;
  EXPECT_EQ(out, want);
}

TEST(PolyMultMod, MonomialSignTable) {
  // X^i * X^j carries +1 when i+j < n and -1 after wrapping, for all pairs.
  const Modulus m(97);
  const uint64_t n = 8;
  const NttTables t(n, m);
  for (uint64_t i = 0; i < n; ++i) {
    for (uint64_t j = 0; j < n; ++j) {
      std::vector<uint64_t> xi(n, 0);
      std::vector<uint64_t> xj(n, 0);
      xi[i] = 1;
      xj[j] = 1;
      std::vector<uint64_t> out(n);
      poly_mult_mod(out, xi, xj, t);
      std::vector<uint64_t> want(n, 0);
      if (i + j < n) {
        want[i + j] = 1;
      } else {
        want[i + j - n] = m.value() - 1;
      }
      ASSERT_EQ(out, want) << "i=" << i << " j=" << j;
    }
  }
}

TEST(PolyMultMod, MatchesNaiveOracle) {
  testutil::Rng rng(53);
  for (uint64_t n = 2; n <= 256; n <<= 1) {
    for (unsigned bits : {20u, 30u, 50u, 61u}) {
      const auto primes = testutil::ntt_primes(bits, n, 1);
      ASSERT_FALSE(primes.empty());
      const Modulus m(primes[0]);
      const NttTables t(n, m);
      for (int rep = 0; rep < 4; ++rep) {
        std::vector<uint64_t> f = rng.vector_below(n, m.value());
        std::vector<uint64_t> g = rng.vector_below(n, m.value());
        f[0] = m.value() - 1;  // boundary coefficient
        std::vector<uint64_t> out(n);
        poly_mult_mod(out, f, g, t);
        ASSERT_EQ(out, naive_negacyclic(f, g, m.value())) << "n=" << n << " q=" << m.value();
      }
    }
  }
}

TEST(PolyMultMod, CommutesAndAssociates) {
  testutil::Rng rng(55);
  const Modulus m(testutil::ntt_primes(50, 64, 1)[0]);
  const NttTables t(64, m);
  for (int rep = 0; rep < 5; ++rep) {
    const std::vector<uint64_t> f = rng.vector_below(64, m.value());
    const std::vector<uint64_t> g = rng.vector_below(64, m.value());
    const std::vector<uint64_t> h = rng.vector_below(64, m.value());
    std::vector<uint64_t> fg(64), gf(64);
    poly_mult_mod(fg, f, g, t);
    poly_mult_mod(gf, g, f, t);
    ASSERT_EQ(fg, gf);
    std::vector<uint64_t> fg_h(64), gh(64), f_gh(64);
    poly_mult_mod(fg_h, fg, h, t);
    poly_mult_mod(gh, g, h, t);
    poly_mult_mod(f_gh, f, gh, t);
    ASSERT_EQ(fg_h, f_gh);
  }
}

TEST(PolyMultMod, AliasingAndErrors) {
  testutil::Rng rng(57);
  const Modulus m(97);
  const NttTables t(16, m);
  std::vector<uint64_t> f = rng.vector_below(16, 97);
  const std::vector<uint64_t> g = rng.vector_below(16, 97);
  std::vector<uint64_t> out(16);
  poly_mult_mod(out, f, g, t);
  poly_mult_mod(f, f, g, t);  // result aliases the first operand
  EXPECT_EQ(f, out);

  std::vector<uint64_t> short_buf(8);
  EXPECT_THROW(poly_mult_mod(short_buf, f, g, t), std::invalid_argument);

  const uint64_t q62 = testutil::ntt_primes(62, 16, 1)[0];
  const NttTables t62(16, Modulus(q62));
  EXPECT_THROW(poly_mult_mod(out, f, g, t62), std::invalid_argument);
}

TEST(PolyMultMod, CoeffVecPipeline) {
  testutil::Rng rng(59);
  const Modulus m(testutil::ntt_primes(30, 32, 1)[0]);
  const NttTables t(32, m);
  const CoeffVec f(rng.vector_below(32, m.value()), 1);
  const CoeffVec g(rng.vector_below(32, m.value()), 1);
  const CoeffVec prod = poly_mult_mod(f, g, t);
  EXPECT_EQ(prod.bound_factor, 1u);
  EXPECT_EQ(prod.data, naive_negacyclic(f.data, g.data, m.value()));
}

}  // namespace
}  // namespace nttkit
