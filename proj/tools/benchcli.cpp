// SPDX-License-Identifier: Apache-2.0
// Copyright (c) 2026 nttkit contributors

// Benchmark and verification harness for the nttkit kernels.
//
// Compares the lazy-reduction implementations (Barrett/Harvey, 2^64 and 2^52
// accumulators, floating-point multiply) against eager-% baselines over
// deterministic seeded inputs. Every optimized result is checked against the
// baseline before its timing is reported.
//
// Exit codes: 0 success, 2 configuration error, 3 verification failure.

#include <fstream>
#include <iostream>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "nttkit/bench.hpp"

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitVerificationFailure = 3;

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"nttkit benchmark harness: optimized vs naive finite-field kernels"};

  std::string kernel = "all";
  std::vector<uint64_t> sizes{1024, 4096, 16384};
  std::vector<unsigned> q_bits{50};
  unsigned reps = 10;
  uint64_t seed = 20260809;
  std::string format = "table";
  std::string out_path;

  app.add_option("--kernel", kernel,
                 "Kernel to benchmark: fwd_ntt, inv_ntt, eltwise_mult, eltwise_fma, "
                 "eltwise_add, poly_mult, or all")
      ->capture_default_str();
  app.add_option("--n", sizes, "Transform/vector lengths (comma separated, powers of two)")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--q-bits", q_bits, "Modulus sizes in bits (comma separated)")
      ->delimiter(',')
      ->capture_default_str();
  app.add_option("--reps", reps, "Timing repetitions per record (>= 10)")->capture_default_str();
  app.add_option("--seed", seed, "Seed for deterministic input generation")->capture_default_str();
  app.add_option("--format", format, "Output format: csv, json or table")
      ->check(CLI::IsMember({"csv", "json", "table"}))
      ->capture_default_str();
  app.add_option("--out", out_path, "Write results to this file instead of stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }

  nttkit::bench::Config config;
  config.sizes = sizes;
  config.q_bits = q_bits;
  config.reps = reps;
  config.seed = seed;
  if (kernel != "all") {
    const auto k = nttkit::bench::kernel_from_string(kernel);
    if (!k) {
      std::cerr << "unknown kernel: " << kernel << "\n";
      return kExitConfigError;
    }
    config.kernels = {*k};
  }

  std::vector<nttkit::bench::Record> records;
  try {
    records = nttkit::bench::run_bench(config);
  } catch (const nttkit::bench::VerificationError& e) {
    std::cerr << e.what() << "\n";
    return kExitVerificationFailure;
  } catch (const std::invalid_argument& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }

  const nttkit::bench::Format fmt = format == "csv"    ? nttkit::bench::Format::csv
                                    : format == "json" ? nttkit::bench::Format::json
                                                       : nttkit::bench::Format::table;
  if (out_path.empty()) {
    nttkit::bench::emit(records, fmt, std::cout);
  } else {
    std::ofstream out(out_path);
    if (!out) {
      std::cerr << "cannot open output path: " << out_path << "\n";
      return kExitConfigError;
    }
    nttkit::bench::emit(records, fmt, out);
  }
  return 0;
}
