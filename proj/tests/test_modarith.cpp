// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 nttkit contributors

#include "nttkit/modarith.hpp"

#include <gtest/gtest.h>

#include "test_util.hpp"

namespace nttkit {
namespace {

TEST(Modulus, PrecomputesBarrettConstants) {
  const Modulus m(17);
  EXPECT_EQ(m.value(), 17u);
  EXPECT_EQ(m.bits(), 5u);
  EXPECT_EQ(m.barrett_shift(), 68u);
  EXPECT_EQ(m.barrett_factor(), static_cast<uint64_t>((uint128_t{1} << 68) / 17));
}

TEST(Modulus, FactorFitsOneWordForEveryAcceptedPrime) {
  for (unsigned bits : {2u, 5u, 20u, 30u, 50u, 61u}) {
    for (uint64_t q : testutil::primes_with_bits(bits, 3)) {
      const Modulus m(q);
      // floor(2^(63+bits)/q) < 2^64 exactly because q > 2^(bits-1)
      EXPECT_EQ((uint128_t{1} << m.barrett_shift()) / q >> 64, 0u) << q;
      EXPECT_EQ(m.barrett_factor(), static_cast<uint64_t>((uint128_t{1} << m.barrett_shift()) / q));
    }
  }
}

TEST(Modulus, RejectsOutOfRangeAndComposite) {
  EXPECT_THROW(Modulus(0), std::invalid_argument);
  EXPECT_THROW(Modulus(1), std::invalid_argument);
  // 2 is prime but floor(2^65/2) = 2^64 does not fit a word
  EXPECT_THROW(Modulus(2), std::invalid_argument);
  EXPECT_THROW(Modulus(15), std::invalid_argument);
  EXPECT_THROW(Modulus(uint64_t{1} << 62), std::invalid_argument);
  EXPECT_THROW(Modulus((uint64_t{1} << 62) + 57), std::invalid_argument);
  EXPECT_NO_THROW(Modulus(3));
  EXPECT_NO_THROW(Modulus((uint64_t{1} << 62) - 57));  // 4611686018427387847 is prime
}

TEST(IsPrime, KnownValues) {
  EXPECT_FALSE(is_prime(0));
  EXPECT_FALSE(is_prime(1));
  EXPECT_TRUE(is_prime(2));
  EXPECT_TRUE(is_prime(3));
  EXPECT_FALSE(is_prime(561));      // Carmichael
  EXPECT_FALSE(is_prime(341));      // 2-pseudoprime
  EXPECT_TRUE(is_prime(786433));    // 3 * 2^18 + 1
  EXPECT_TRUE(is_prime((uint64_t{1} << 61) - 1));  // Mersenne
  EXPECT_FALSE(is_prime((uint64_t{1} << 62) - 1));
  EXPECT_FALSE(is_prime(uint64_t{3215031751}));  // strong pseudoprime to bases 2,3,5,7
}

TEST(BarrettReduce, Examples) {
  const Modulus m(17);
  EXPECT_EQ(barrett_reduce(0, m), 0u);
  EXPECT_EQ(barrett_reduce(100, m), 15u);
  EXPECT_EQ(barrett_reduce(uint128_t{17} * (uint64_t{1} << 50) + 3, m), 3u);
}

// Near the top of the d < 2^(63+bits) envelope the quotient estimate can be
// short by two, so a single conditional subtraction is not enough. For q=17
// the raw remainder at d = 2^68-33 is exactly 2q.
TEST(BarrettReduce, NeedsSecondConditionalSubtraction) {
  const Modulus m(17);
  const uint128_t top = uint128_t{1} << 68;
  EXPECT_EQ(barrett_reduce(top - 33, m), 0u);
  EXPECT_EQ(barrett_reduce(top - 49, m), 1u);
  EXPECT_EQ(barrett_reduce(top - 50, m), 0u);
}

TEST(BarrettReduce, QuotientBoundaries) {
  testutil::Rng rng(7);
  for (unsigned bits : {5u, 20u, 30u, 50u, 61u}) {
    for (uint64_t q : testutil::primes_with_bits(bits, 2)) {
      const Modulus m(q);
      const uint128_t envelope = uint128_t{1} << m.barrett_shift();
      for (uint64_t k : {uint64_t{0}, uint64_t{1}, uint64_t{12345}}) {
        for (int delta : {-1, 0, 1}) {
          const uint128_t d = uint128_t{k} * q + static_cast<uint128_t>(int64_t{delta} + 1) - 1;
          if (d >= envelope) continue;
          EXPECT_EQ(barrett_reduce(d, m), static_cast<uint64_t>(d % q));
        }
      }
      // top of the envelope, where the quotient estimate is weakest
      for (int i = 0; i < 2000; ++i) {
        const uint128_t d = envelope - 1 - rng.below(1 << 20);
        EXPECT_EQ(barrett_reduce(d, m), static_cast<uint64_t>(d % q));
      }
      for (int i = 0; i < 5000; ++i) {
        const uint128_t d =
            (static_cast<uint128_t>(rng.next()) << 64 | rng.next()) % envelope;
        ASSERT_EQ(barrett_reduce(d, m), static_cast<uint64_t>(d % q));
      }
    }
  }
}

TEST(MulMod, Examples) {
  const Modulus m17(17);
  for (uint64_t x = 0; x < 17; ++x) {
    EXPECT_EQ(mul_mod(1, x, m17), x);
  }
  EXPECT_EQ(mul_mod(16, 16, m17), 1u);

  const Modulus big((uint64_t{1} << 61) - 1);
  const uint64_t a = big.value() - 1;
  EXPECT_EQ(mul_mod(a, a, big), naive_mul_mod(a, a, big.value()));
}

TEST(MulMod, AgreesWithNaiveAcrossBitClasses) {
  testutil::Rng rng(11);
  for (unsigned bits : {20u, 30u, 50u, 61u}) {
    for (uint64_t q : testutil::primes_with_bits(bits, 3)) {
      const Modulus m(q);
      for (uint64_t x : {uint64_t{0}, uint64_t{1}, q - 2, q - 1}) {
        for (uint64_t y : {uint64_t{0}, uint64_t{1}, q - 2, q - 1}) {
          ASSERT_EQ(mul_mod(x, y, m), naive_mul_mod(x, y, q));
        }
      }
      for (int i = 0; i < 100000; ++i) {
        const uint64_t x = rng.below(q);
        const uint64_t y = rng.below(q);
        ASSERT_EQ(mul_mod(x, y, m), naive_mul_mod(x, y, q)) << q << " " << x << " " << y;
      }
    }
  }
}

TEST(NaiveMulMod, Examples) {
  EXPECT_EQ(naive_mul_mod(3, 4, 17), 12u);
  EXPECT_EQ(naive_mul_mod(0, 123456, 97), 0u);
  EXPECT_EQ(naive_mul_mod(1, 1, 2), 1u);
}

TEST(SmallMod, Examples) {
  EXPECT_EQ(small_mod(5, 17, 2), 5u);
  EXPECT_EQ(small_mod(33, 17, 2), 16u);
  EXPECT_EQ(small_mod(135, 17, 8), 16u);  // exercises all three stages
}

TEST(SmallMod, ExhaustiveSmallPrimeAndRandomLarge) {
  for (uint64_t f : {1u, 2u, 4u, 8u}) {
    for (uint64_t x = 0; x < f * 17; ++x) {
      ASSERT_EQ(small_mod(x, 17, f), x % 17);
    }
  }
  testutil::Rng rng(13);
  const uint64_t q = testutil::primes_with_bits(50, 1)[0];
  for (uint64_t f : {1u, 2u, 4u, 8u}) {
    for (int i = 0; i < 10000; ++i) {
      const uint64_t x = rng.below(f * q);
      ASSERT_EQ(small_mod(x, q, f), x % q);
    }
    ASSERT_EQ(small_mod(f * q - 1, q, f), (f * q - 1) % q);
  }
}

TEST(MulHiLo, PowerSplitExamples) {
  EXPECT_EQ(mul_hi<64>(uint64_t{1} << 32, uint64_t{1} << 32), 1u);
  EXPECT_EQ(mul_hi<52>(uint64_t{1} << 26, uint64_t{1} << 26), 1u);
  const uint128_t wide = uint128_t{0xDEADBEEF} * 0xCAFEBABE;
  EXPECT_EQ(mul_hi<64>(0xDEADBEEF, 0xCAFEBABE), static_cast<uint64_t>(wide >> 64));
  EXPECT_EQ(mul_lo<64>(3, 5), 15u);
  EXPECT_EQ(mul_lo<52>(uint64_t{1} << 51, 2), 0u);
  EXPECT_EQ(mul_lo_add<52>(7, 3, 5), 22u);
}

TEST(MulHiLo, ReconstructsFullProduct) {
  testutil::Rng rng(17);
  for (int i = 0; i < 50000; ++i) {
    const uint64_t a = rng.next();
    const uint64_t b = rng.next();
    const uint128_t whole = (static_cast<uint128_t>(mul_hi<64>(a, b)) << 64) | mul_lo<64>(a, b);
    ASSERT_EQ(whole, static_cast<uint128_t>(a) * b);

    const uint64_t a52 = a & ((uint64_t{1} << 52) - 1);
    const uint64_t b52 = b & ((uint64_t{1} << 52) - 1);
    const uint128_t whole52 =
        (static_cast<uint128_t>(mul_hi<52>(a52, b52)) << 52) | mul_lo<52>(a52, b52);
    ASSERT_EQ(whole52, static_cast<uint128_t>(a52) * b52);
  }
}

TEST(PrecomputeFactor, Examples) {
  const Modulus m17(17);
  EXPECT_EQ(precompute_factor<64>(0, m17).precon, 0u);
  EXPECT_EQ(precompute_factor<64>(1, m17).precon,
            static_cast<uint64_t>((uint128_t{1} << 64) / 17));
  EXPECT_EQ(precompute_factor<52>(8, m17).precon,
            static_cast<uint64_t>((uint128_t{8} << 52) / 17));
  EXPECT_EQ(precompute_factor<64>(1, m17).precon, 1085102592571150095ull);
}

// The quotient-error bound behind the lazy butterflies: for any W < q and
// X < 4q, the estimated quotient leaves W*X - Q*q inside [0, 2q).
TEST(PrecomputeFactor, HarveyQuotientBound) {
  testutil::Rng rng(19);
  for (unsigned bits : {5u, 20u, 30u, 49u}) {
    for (uint64_t q : testutil::primes_with_bits(bits, 2)) {
      if (4 * static_cast<uint128_t>(q) >= (uint128_t{1} << 52)) continue;
      const Modulus m(q);
      for (int i = 0; i < 20000; ++i) {
        const uint64_t w = rng.below(q);
        const uint64_t x = rng.below(4 * q);
        const MultiplyFactor f64 = precompute_factor<64>(w, m);
        const uint128_t err64 =
            static_cast<uint128_t>(w) * x - static_cast<uint128_t>(mul_hi<64>(f64.precon, x)) * q;
        ASSERT_LT(err64, 2 * static_cast<uint128_t>(q));
        const MultiplyFactor f52 = precompute_factor<52>(w, m);
        const uint128_t err52 =
            static_cast<uint128_t>(w) * x - static_cast<uint128_t>(mul_hi<52>(f52.precon, x)) * q;
        ASSERT_LT(err52, 2 * static_cast<uint128_t>(q));
      }
    }
  }
}

TEST(PowMod, Examples) {
  const Modulus m17(17);
  EXPECT_EQ(pow_mod(2, 4, m17), 16u);
  EXPECT_EQ(pow_mod(2, 0, m17), 1u);
  testutil::Rng rng(23);
  const Modulus m(testutil::primes_with_bits(50, 1)[0]);
  for (int i = 0; i < 200; ++i) {
    const uint64_t base = rng.below(m.value());
    uint64_t expected = 1;
    const uint64_t exp = rng.below(64);
    for (uint64_t e = 0; e < exp; ++e) expected = naive_mul_mod(expected, base, m.value());
    ASSERT_EQ(pow_mod(base, exp, m), expected);
  }
}

TEST(InvMod, InvertsAndRejectsZero) {
  const Modulus m17(17);
  EXPECT_EQ(inv_mod(1, m17), 1u);
  EXPECT_EQ(inv_mod(4, m17), 13u);
  EXPECT_THROW(inv_mod(0, m17), std::invalid_argument);
  EXPECT_THROW(inv_mod(17, m17), std::invalid_argument);  // 17 mod 17 == 0

  testutil::Rng rng(29);
  const Modulus m(testutil::primes_with_bits(61, 1)[0]);
  for (int i = 0; i < 500; ++i) {
    const uint64_t x = 1 + rng.below(m.value() - 1);
    ASSERT_EQ(mul_mod(x, inv_mod(x, m), m), 1u);
  }
}

}  // namespace
}  // namespace nttkit
