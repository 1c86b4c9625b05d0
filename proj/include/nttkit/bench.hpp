// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 nttkit contributors

#ifndef NTTKIT_BENCH_HPP
#define NTTKIT_BENCH_HPP

/// \file
/// Benchmark harness comparing the lazy-reduction kernels against eager-%
/// baselines. Inputs are generated deterministically from a seed, every
/// optimized variant is verified against the naive one before any timing is
/// reported, and results come out as CSV, JSON or a human-readable table.
///
/// Timing uses the monotonic steady clock, median over repetitions, one warm
/// iteration per repetition and no CPU pinning.

#include <algorithm>
#include <chrono>
#include <cstdint>
#include <functional>
#include <optional>
#include <ostream>
#include <random>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include <json.hpp>

#include "nttkit/eltwise.hpp"
#include "nttkit/modarith.hpp"
#include "nttkit/ntt.hpp"
#include "nttkit/ring.hpp"

namespace nttkit::bench {

enum class Kernel { fwd_ntt, inv_ntt, eltwise_mult, eltwise_fma, eltwise_add, poly_mult };
enum class Variant { naive, optimized_64, optimized_52, flt };
enum class Format { csv, json, table };

inline constexpr Kernel kAllKernels[] = {Kernel::fwd_ntt,      Kernel::inv_ntt,
                                         Kernel::eltwise_mult, Kernel::eltwise_fma,
                                         Kernel::eltwise_add,  Kernel::poly_mult};

inline const char* to_string(Kernel k) {
  switch (k) {
    case Kernel::fwd_ntt: return "fwd_ntt";
    case Kernel::inv_ntt: return "inv_ntt";
    case Kernel::eltwise_mult: return "eltwise_mult";
    case Kernel::eltwise_fma: return "eltwise_fma";
    case Kernel::eltwise_add: return "eltwise_add";
    case Kernel::poly_mult: return "poly_mult";
  }
  return "?";
}

inline const char* to_string(Variant v) {
  switch (v) {
    case Variant::naive: return "naive";
    case Variant::optimized_64: return "optimized_64";
    case Variant::optimized_52: return "optimized_52";
    case Variant::flt: return "float";
  }
  return "?";
}

inline std::optional<Kernel> kernel_from_string(const std::string& s) {
  for (Kernel k : kAllKernels) {
    if (s == to_string(k)) return k;
  }
  return std::nullopt;
}

inline std::optional<Variant> variant_from_string(const std::string& s) {
  for (Variant v : {Variant::naive, Variant::optimized_64, Variant::optimized_52, Variant::flt}) {
    if (s == to_string(v)) return v;
  }
  return std::nullopt;
}

/// One benchmark measurement row.
struct Record {
  Kernel kernel;
  uint64_t n;
  unsigned q_bits;
  Variant variant;
  double median_ns;
  double speedup_vs_naive;

  friend bool operator==(const Record&, const Record&) = default;
};

struct Config {
  std::vector<Kernel> kernels{std::begin(kAllKernels), std::end(kAllKernels)};
  std::vector<uint64_t> sizes{1024, 4096, 16384};
  std::vector<unsigned> q_bits{50};
  unsigned reps = 10;
  uint64_t seed = 20260809;

  void validate() const {
    if (kernels.empty() || sizes.empty() || q_bits.empty()) {
      throw std::invalid_argument("bench config: kernels, sizes and q_bits must be non-empty");
    }
    for (uint64_t n : sizes) {
      if (n < 2 || n > kMaxNttSize || (n & (n - 1)) != 0) {
        throw std::invalid_argument("bench config: sizes must be powers of two in [2, 2^20]");
      }
    }
    for (unsigned b : q_bits) {
      if (b < 4 || b > 61) {
        throw std::invalid_argument("bench config: q_bits must lie in [4, 61]");
      }
    }
    if (reps < 10) {
      throw std::invalid_argument("bench config: at least 10 repetitions required");
    }
  }
};

/// Raised when an optimized variant disagrees with the naive baseline.
struct VerificationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

/// Deterministic values below `bound`; same seed, same vector, everywhere.
inline std::vector<uint64_t> deterministic_vector(size_t n, uint64_t bound, uint64_t seed) {
  std::mt19937_64 eng(seed);
  std::vector<uint64_t> v(n);
  for (uint64_t& x : v) x = eng() % bound;
  return v;
}

/// Smallest prime with exactly q_bits bits satisfying q == 1 (mod 2n).
inline uint64_t bench_prime(unsigned q_bits, uint64_t n) {
  const uint64_t two_n = 2 * n;
  const uint64_t lo = uint64_t{1} << (q_bits - 1);
  const uint64_t hi = uint64_t{1} << q_bits;
  for (uint64_t c = ((lo - 1 + two_n - 1) / two_n) * two_n + 1; c < hi; c += two_n) {
    if (c >= lo && is_prime(c)) return c;
  }
  throw std::invalid_argument("bench: no " + std::to_string(q_bits) + "-bit prime with q == 1 mod " +
                              std::to_string(two_n));
}

namespace detail {

// Eager-% baselines: same loop structures, per-butterfly naive_mul_mod, full
// reduction at every step.

inline void naive_forward_ntt(uint64_t* a, const NttTables& t) {
  const uint64_t q = t.modulus().value();
  const uint64_t n = t.size();
  std::span<const uint64_t> w_arr = t.root_powers_rev();
  uint64_t len = n >> 1;
  for (uint64_t m = 1; m < n; m <<= 1, len >>= 1) {
    for (uint64_t i = 0; i < m; ++i) {
      const uint64_t w = w_arr[m + i];
      uint64_t* x = a + 2 * i * len;
      uint64_t* y = x + len;
      for (uint64_t j = 0; j < len; ++j) {
        const uint64_t x0 = x[j];
        const uint64_t wx1 = naive_mul_mod(w, y[j], q);
        x[j] = (x0 + wx1) % q;
        y[j] = (x0 + q - wx1) % q;
      }
    }
  }
}

inline void naive_inverse_ntt(uint64_t* a, const NttTables& t) {
  const uint64_t q = t.modulus().value();
  const uint64_t n = t.size();
  std::span<const uint64_t> w_arr = t.inv_root_powers_rev();
  uint64_t len = 1;
  for (uint64_t m = n; m > 1; m >>= 1, len <<= 1) {
    const uint64_t h = m >> 1;
    uint64_t j1 = 0;
    for (uint64_t i = 0; i < h; ++i) {
      const uint64_t w = w_arr[h + i];
      uint64_t* x = a + j1;
      uint64_t* y = x + len;
      for (uint64_t j = 0; j < len; ++j) {
        const uint64_t x0 = x[j];
        const uint64_t x1 = y[j];
        x[j] = (x0 + x1) % q;
        y[j] = naive_mul_mod((x0 + q - x1) % q, w, q);
      }
      j1 += 2 * len;
    }
  }
  const uint64_t n_inv = t.inv_size().operand;
  for (uint64_t j = 0; j < n; ++j) {
    a[j] = naive_mul_mod(a[j], n_inv, q);
  }
}

struct KernelSetup {
  std::vector<std::pair<Variant, std::function<void()>>> runs;  // write into `out`
  std::vector<uint64_t> out;
};

using Clock = std::chrono::steady_clock;

inline double time_once(const std::function<void()>& fn) {
  const auto t0 = Clock::now();
  fn();
  const auto t1 = Clock::now();
  return std::chrono::duration<double, std::nano>(t1 - t0).count();
}

// Median of `reps` samples; each repetition runs one warm iteration and then
// a calibrated batch sized to out-grow clock granularity.
inline double median_time_ns(const std::function<void()>& fn, unsigned reps) {
  constexpr double kMinBatchNs = 2e5;
  fn();
  const double once = std::max(time_once(fn), 1.0);
  const uint64_t iters = std::max<uint64_t>(1, static_cast<uint64_t>(kMinBatchNs / once));
  std::vector<double> samples(reps);
  for (double& s : samples) {
    fn();  // warm
    const auto t0 = Clock::now();
    for (uint64_t it = 0; it < iters; ++it) fn();
    const auto t1 = Clock::now();
    s = std::chrono::duration<double, std::nano>(t1 - t0).count() / static_cast<double>(iters);
  }
  std::sort(samples.begin(), samples.end());
  const size_t mid = samples.size() / 2;
  return samples.size() % 2 == 1 ? samples[mid] : 0.5 * (samples[mid - 1] + samples[mid]);
}

}  // namespace detail

/// Runs the configured benchmarks. Every optimized variant is checked for
/// exact agreement with the naive baseline on the same deterministic inputs
/// before it is timed; a mismatch raises VerificationError. Records appear
/// in kernel, size, q_bits, variant order.
inline std::vector<Record> run_bench(const Config& config) {
  config.validate();
  std::vector<Record> records;

  for (Kernel kernel : config.kernels) {
    for (uint64_t n : config.sizes) {
      for (unsigned q_bits : config.q_bits) {
        const uint64_t q = bench_prime(q_bits, n);
        const Modulus m(q);
        const uint64_t record_seed =
            config.seed ^ (static_cast<uint64_t>(kernel) << 40) ^ (n << 8) ^ q_bits;
        const std::vector<uint64_t> a = deterministic_vector(n, q, record_seed);
        const std::vector<uint64_t> b = deterministic_vector(n, q, record_seed + 1);
        const uint64_t y = deterministic_vector(1, q, record_seed + 2)[0];

        const bool has_52 = 4 * static_cast<uint128_t>(q) < (uint128_t{1} << 52);
        const NttTables t64(n, m, std::nullopt, 64);
        std::optional<NttTables> t52;
        if (has_52) t52.emplace(n, m, std::nullopt, 52);

        // The naive variant writes the reference output; each optimized
        // variant must reproduce it exactly.
        std::vector<uint64_t> ref(n);
        std::vector<uint64_t> out(n);
        std::vector<std::pair<Variant, std::function<void()>>> runs;

        switch (kernel) {
          case Kernel::fwd_ntt: {
            runs.emplace_back(Variant::naive, [&a, &ref, &t64] {
              std::copy(a.begin(), a.end(), ref.begin());
              detail::naive_forward_ntt(ref.data(), t64);
            });
            runs.emplace_back(Variant::optimized_64, [&a, &out, &t64] { t64.forward(out, a, 1, 1); });
            if (has_52) {
              runs.emplace_back(Variant::optimized_52,
                                [&a, &out, &t52] { t52->forward(out, a, 1, 1); });
            }
            break;
          }
          case Kernel::inv_ntt: {
            runs.emplace_back(Variant::naive, [&a, &ref, &t64] {
              std::copy(a.begin(), a.end(), ref.begin());
              detail::naive_inverse_ntt(ref.data(), t64);
            });
            runs.emplace_back(Variant::optimized_64, [&a, &out, &t64] { t64.inverse(out, a, 1, 1); });
            if (has_52) {
              runs.emplace_back(Variant::optimized_52,
                                [&a, &out, &t52] { t52->inverse(out, a, 1, 1); });
            }
            break;
          }
          case Kernel::eltwise_mult: {
            runs.emplace_back(Variant::naive, [&a, &b, &ref, q] {
              for (size_t i = 0; i < ref.size(); ++i) ref[i] = naive_mul_mod(a[i], b[i], q);
            });
            runs.emplace_back(Variant::optimized_64, [&a, &b, &out, &m] {
              eltwise_mult_mod_int(out, a, b, m, 1);
            });
            if (q < kFloatPathBound) {
              runs.emplace_back(Variant::flt, [&a, &b, &out, &m] {
                eltwise_mult_mod_float(out, a, b, m, 1);
              });
            }
            break;
          }
          case Kernel::eltwise_fma: {
            runs.emplace_back(Variant::naive, [&a, &b, y, &ref, q] {
              for (size_t i = 0; i < ref.size(); ++i) {
                ref[i] = static_cast<uint64_t>(
                    (static_cast<uint128_t>(a[i]) * y + b[i]) % q);
              }
            });
            runs.emplace_back(Variant::optimized_64, [&a, &b, y, &out, &m] {
              eltwise_fma_mod<64>(out, a, y, std::span<const uint64_t>(b), m, 1);
            });
            if (q < (uint64_t{1} << 52)) {
              runs.emplace_back(Variant::optimized_52, [&a, &b, y, &out, &m] {
                eltwise_fma_mod<52>(out, a, y, std::span<const uint64_t>(b), m, 1);
              });
            }
            break;
          }
          case Kernel::eltwise_add: {
            runs.emplace_back(Variant::naive, [&a, &b, &ref, q] {
              for (size_t i = 0; i < ref.size(); ++i) ref[i] = (a[i] + b[i]) % q;
            });
            runs.emplace_back(Variant::optimized_64,
                              [&a, &b, &out, &m] { eltwise_add_mod(out, a, b, m); });
            break;
          }
          case Kernel::poly_mult: {
            runs.emplace_back(Variant::naive, [&a, &b, &ref, &t64, q, n] {
              std::vector<uint64_t> fa(a);
              std::vector<uint64_t> fb(b);
              detail::naive_forward_ntt(fa.data(), t64);
              detail::naive_forward_ntt(fb.data(), t64);
              for (uint64_t i = 0; i < n; ++i) ref[i] = naive_mul_mod(fa[i], fb[i], q);
              detail::naive_inverse_ntt(ref.data(), t64);
            });
            runs.emplace_back(Variant::optimized_64,
                              [&a, &b, &out, &t64] { poly_mult_mod(out, a, b, t64); });
            if (has_52) {
              runs.emplace_back(Variant::optimized_52,
                                [&a, &b, &out, &t52] { poly_mult_mod(out, a, b, *t52); });
            }
            break;
          }
        }

        // Verify first, then time.
        runs.front().second();
        for (size_t v = 1; v < runs.size(); ++v) {
          std::fill(out.begin(), out.end(), 0);
          runs[v].second();
          if (out != ref) {
            throw VerificationError(std::string("bench verification failed: ") + to_string(kernel) +
                                    " n=" + std::to_string(n) + " variant " +
                                    to_string(runs[v].first));
          }
        }

        double naive_median = 0.0;
        for (const auto& [variant, fn] : runs) {
          const double med = detail::median_time_ns(fn, config.reps);
          if (variant == Variant::naive) naive_median = med;
          records.push_back(Record{kernel, n, q_bits, variant, med,
                                   variant == Variant::naive ? 1.0 : naive_median / med});
        }
      }
    }
  }
  return records;
}

inline void emit(std::span<const Record> records, Format format, std::ostream& os) {
  switch (format) {
    case Format::csv: {
      os << "kernel,n,q_bits,variant,median_ns,speedup_vs_naive\n";
      char line[160];
      for (const Record& r : records) {
        std::snprintf(line, sizeof(line), "%s,%llu,%u,%s,%.1f,%.4f\n", to_string(r.kernel),
                      static_cast<unsigned long long>(r.n), r.q_bits, to_string(r.variant),
                      r.median_ns, r.speedup_vs_naive);
        os << line;
      }
      break;
    }
    case Format::json: {
      nlohmann::json arr = nlohmann::json::array();
      for (const Record& r : records) {
        arr.push_back({{"kernel", to_string(r.kernel)},
                       {"n", r.n},
                       {"q_bits", r.q_bits},
                       {"variant", to_string(r.variant)},
                       {"median_ns", r.median_ns},
                       {"speedup_vs_naive", r.speedup_vs_naive}});
      }
      os << arr.dump(2) << '\n';
      break;
    }
    case Format::table: {
      os << "# steady clock, median over repetitions, 1 warm iteration per rep, no CPU pinning\n";
      char line[160];
      std::snprintf(line, sizeof(line), "%-14s %8s %7s %-14s %14s %10s\n", "kernel", "n", "q_bits",
                    "variant", "median_ns", "speedup");
      os << line;
      for (const Record& r : records) {
        std::snprintf(line, sizeof(line), "%-14s %8llu %7u %-14s %14.1f %9.2fx\n",
                      to_string(r.kernel), static_cast<unsigned long long>(r.n), r.q_bits,
                      to_string(r.variant), r.median_ns, r.speedup_vs_naive);
        os << line;
      }
      break;
    }
  }
}

/// Parses records from the JSON emit format; inverse of emit(Format::json).
inline std::vector<Record> records_from_json(const std::string& text) {
  const nlohmann::json arr = nlohmann::json::parse(text);
  std::vector<Record> records;
  for (const auto& item : arr) {
    const auto kernel = kernel_from_string(item.at("kernel").get<std::string>());
    const auto variant = variant_from_string(item.at("variant").get<std::string>());
    if (!kernel || !variant) {
      throw std::invalid_argument("records_from_json: unknown kernel or variant name");
    }
    records.push_back(Record{*kernel, item.at("n").get<uint64_t>(),
                             item.at("q_bits").get<unsigned>(), *variant,
                             item.at("median_ns").get<double>(),
                             item.at("speedup_vs_naive").get<double>()});
  }
  return records;
}

}  // namespace nttkit::bench

#endif  // NTTKIT_BENCH_HPP
