#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "gfz/operators.hpp"

namespace gfz {

struct BenchRecord {
  Family family = Family::Linear;
  int n = 0;
  int f = 0;
  int k = 0;
  double median_seconds = 0.0;
  int reps = 0;
  double density = 0.0;  // 2m / (n (n-1))
};

struct BenchConfig {
  std::vector<Family> families{Family::Linear, Family::Polynomial, Family::Rational};
  std::vector<int> sizes{500, 1000, 2000};
  int k = 4;           // polynomial order / rational solve order parameter
  int reps = 3;
  int features = 16;
  double expected_degree = 8.0;
  double fixed_p = 0.0;  // when > 0 overrides expected_degree (dense scaling)
  uint64_t seed = 42;
};

struct BenchResult {
  std::vector<BenchRecord> records;
  bool ordering_ok = true;  // rational >= polynomial >= linear at the largest size
  std::string log;
};

/// Times one spatial application per (family, size) on a fixed synthetic
/// workload: linear = single-hop filter, polynomial = order-k filter,
/// rational = restart filter (sparse solve). Medians over reps; a thrown-away
/// warm-up precedes timing, and reps are increased when the timer cannot
/// resolve the workload.
BenchResult run_bench(const BenchConfig& config);

std::string bench_to_csv(const std::vector<BenchRecord>& records);

}  // namespace gfz
