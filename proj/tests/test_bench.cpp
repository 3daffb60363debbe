#include "doctest.h"
#include "gfz/bench.hpp"
#include "gfz/synth.hpp"
#include "helpers.hpp"

using namespace gfz;

TEST_CASE("bench plumbing") {
  BenchConfig cfg;
  cfg.families = {Family::Linear};
  cfg.sizes = {100};
  cfg.reps = 3;
  BenchResult result = run_bench(cfg);
  REQUIRE(result.records.size() == 1);
  CHECK(result.records[0].n == 100);
  CHECK(result.records[0].median_seconds > 0.0);
  CHECK(result.records[0].reps >= 3);
  std::string csv = bench_to_csv(result.records);
  CHECK(csv.find("linear,100,16") != std::string::npos);

  CHECK_GFZ_ERROR(run_bench([] {
                    BenchConfig bad;
                    bad.sizes = {200, 100};
                    return bad;
                  }()),
                  ErrorCode::Parameter);
}

TEST_CASE("bench workloads are deterministic") {
  BenchConfig cfg;
  cfg.sizes = {300};
  Graph a = erdos_renyi(300, cfg.expected_degree / 299.0, cfg.seed);
  Graph b = erdos_renyi(300, cfg.expected_degree / 299.0, cfg.seed);
  CHECK(graph_content_hash(a) == graph_content_hash(b));
  FeatureMatrix xa = random_features(300, cfg.features, cfg.seed + 1);
  FeatureMatrix xb = random_features(300, cfg.features, cfg.seed + 1);
  CHECK((xa - xb).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("dense single-hop cost grows superlinearly") {
  // With p fixed the edge count scales with n^2, so one application grows
  // clearly faster than n. 4x nodes should cost well over 4x; generous
  // slack keeps this robust to timer noise.
  BenchConfig cfg;
  cfg.families = {Family::Linear};
  cfg.sizes = {500, 2000};
  cfg.reps = 5;
  cfg.fixed_p = 0.5;
  BenchResult result = run_bench(cfg);
  REQUIRE(result.records.size() == 2);
  double t_small = result.records[0].median_seconds;
  double t_large = result.records[1].median_seconds;
  CHECK(t_large >= 6.0 * t_small);
}
