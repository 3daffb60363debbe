#include <set>

#include "doctest.h"
#include "gfz/sampler.hpp"
#include "gfz/synth.hpp"
#include "helpers.hpp"

using namespace gfz;

namespace {

double max_row_tv(const Eigen::MatrixXd& got, const Eigen::MatrixXd& want) {
  double worst = 0.0;
  for (int i = 0; i < got.rows(); ++i)
    worst = std::max(worst, total_variation(got.row(i), want.row(i)));
  return worst;
}

}  // namespace

TEST_CASE("first-order walks") {
  SUBCASE("K2 walks alternate endpoints") {
    WalkCorpus corpus = sample_walks(oracle::k2(), 9, 4, 1);
    for (const auto& walk : corpus.walks) {
      REQUIRE(walk.size() == 9);
      for (size_t i = 0; i + 1 < walk.size(); ++i) CHECK(walk[i] != walk[i + 1]);
    }
  }
  SUBCASE("same seed reproduces the corpus byte for byte") {
    Graph g = random_connected_graph(12, 3.0, 2);
    WalkCorpus a = sample_walks(g, 10, 5, 42);
    WalkCorpus b = sample_walks(g, 10, 5, 42);
    CHECK(corpus_to_string(a) == corpus_to_string(b));
    WalkCorpus c = sample_walks(g, 10, 5, 43);
    CHECK(corpus_to_string(a) != corpus_to_string(c));
  }
  SUBCASE("every sampled transition is an edge") {
    Graph g = random_connected_graph(15, 4.0, 3);
    std::set<std::pair<int, int>> edge_set;
    for (const Edge& e : g.edges) {
      edge_set.insert({e.u, e.v});
      edge_set.insert({e.v, e.u});
    }
    for (const auto& corpus :
         {sample_walks(g, 12, 6, 7), sample_walks_2nd(g, 2.0, 0.5, 12, 6, 7)}) {
      for (const auto& walk : corpus.walks)
        for (size_t i = 0; i + 1 < walk.size(); ++i)
          CHECK(edge_set.count({walk[i], walk[i + 1]}) == 1);
    }
  }
  SUBCASE("star center steps uniformly over the leaves") {
    Graph star = star_graph(5);
    // 100k+ center departures: every even position of a center-started walk.
    WalkCorpus corpus = sample_walks(star, 41, 850, 11);
    Eigen::VectorXd counts = Eigen::VectorXd::Zero(6);
    for (const auto& walk : corpus.walks)
      for (size_t i = 0; i + 1 < walk.size(); ++i)
        if (walk[i] == 0) counts[walk[i + 1]] += 1.0;
    CHECK(counts.sum() >= 100000);
    Eigen::VectorXd dist = counts / counts.sum();
    Eigen::VectorXd uniform = Eigen::VectorXd::Zero(6);
    for (int leaf = 1; leaf <= 5; ++leaf) uniform[leaf] = 0.2;
    CHECK(total_variation(dist, uniform) <= 0.02);
  }
  SUBCASE("isolated nodes and short lengths are refused") {
    Graph iso = Graph::from_edge_list({{0, 1, 1.0}}, 3);
    CHECK_GFZ_ERROR(sample_walks(iso, 5, 1, 0), ErrorCode::DegenerateInput);
    CHECK_GFZ_ERROR(sample_walks(oracle::k2(), 1, 1, 0), ErrorCode::Parameter);
    CHECK_GFZ_ERROR(sample_walks_2nd(oracle::k2(), 1.0, 1.0, 2, 1, 0), ErrorCode::Parameter);
  }
}

TEST_CASE("empirical transitions approach the row-normalized adjacency") {
  SUBCASE("K2 transitions are forced") {
    WalkCorpus corpus = sample_walks(oracle::k2(), 6, 3, 5);
    TransitionEstimate est = empirical_transition(corpus);
    CHECK(est.probs(0, 1) == 1.0);
    CHECK(est.probs(1, 0) == 1.0);
    CHECK(est.visited[0]);
  }
  SUBCASE("P3 at 100k steps is within 0.02 TV per row") {
    Graph p3 = oracle::p3();
    WalkCorpus corpus = sample_walks(p3, 35, 1000, 17);  // 3 * 1000 * 34 > 100k steps
    CHECK(corpus.total_steps() >= 100000);
    TransitionEstimate est = empirical_transition(corpus);
    Eigen::MatrixXd want = oracle::dense_normalize(p3, NormKind::RwLeft);
    CHECK(max_row_tv(est.probs, want) <= 0.02);
  }
  SUBCASE("weighted edges bias the draw") {
    Graph g = Graph::from_edge_list({{0, 1, 3.0}, {0, 2, 1.0}, {1, 2, 1.0}});
    WalkCorpus corpus = sample_walks(g, 30, 2000, 19);
    TransitionEstimate est = empirical_transition(corpus);
    Eigen::MatrixXd want = oracle::dense_normalize(g, NormKind::RwLeft);
    CHECK(max_row_tv(est.probs, want) <= 0.02);
  }
  SUBCASE("unvisited rows are flagged") {
    WalkCorpus fake;
    fake.n = 3;
    fake.params = {3, 1, 0, std::nullopt};
    fake.walks = {{0, 1, 0}};
    TransitionEstimate est = empirical_transition(fake);
    CHECK(est.visited[0]);
    CHECK(est.visited[1]);
    CHECK(!est.visited[2]);
    CHECK(est.probs.row(2).cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("second-order walks") {
  SUBCASE("p = q = 1 reduces to first-order statistics") {
    Graph p3 = oracle::p3();
    WalkCorpus corpus = sample_walks_2nd(p3, 1.0, 1.0, 35, 1000, 23);
    CHECK(corpus.total_steps() >= 100000);
    TransitionEstimate est = empirical_transition(corpus);
    Eigen::MatrixXd want = oracle::dense_normalize(p3, NormKind::RwLeft);
    CHECK(max_row_tv(est.probs, want) <= 0.02);
  }
  SUBCASE("huge p suppresses returns on a triangle") {
    WalkCorpus corpus = sample_walks_2nd(oracle::triangle(), 1e6, 1.0, 40, 300, 29);
    size_t returns = 0, moves = 0;
    for (const auto& walk : corpus.walks) {
      for (size_t i = 2; i < walk.size(); ++i) {
        ++moves;
        if (walk[i] == walk[i - 2]) ++returns;
      }
    }
    CHECK(static_cast<double>(returns) / moves <= 0.01);
  }
  SUBCASE("huge q pins the walker to the previous neighborhood") {
    // On a path no move except the return stays within the previous node's
    // neighborhood, so the walker oscillates between the last two nodes.
    WalkCorpus corpus = sample_walks_2nd(path_graph(6), 1.0, 1e6, 30, 200, 31);
    size_t returns = 0, moves = 0;
    for (const auto& walk : corpus.walks) {
      for (size_t i = 2; i < walk.size(); ++i) {
        ++moves;
        if (walk[i] == walk[i - 2]) ++returns;
      }
    }
    CHECK(static_cast<double>(returns) / moves >= 0.99);
  }
}

TEST_CASE("windowed co-occurrence approaches the averaged power sum") {
  Graph g = random_connected_graph(10, 3.0, 37);
  const int window = 3;
  WalkCorpus corpus = sample_walks(g, 24, 6000, 41);
  TransitionEstimate est = co_occurrence(corpus, window);
  Eigen::MatrixXd m = oracle::dense_normalize(g, NormKind::RwLeft);
  Eigen::MatrixXd want = Eigen::MatrixXd::Zero(g.n, g.n);
  Eigen::MatrixXd power = Eigen::MatrixXd::Identity(g.n, g.n);
  for (int r = 1; r <= window; ++r) {
    power = power * m;
    want += power;
  }
  want /= window;
  CHECK(max_row_tv(est.probs, want) <= 0.05);
}

TEST_CASE("corpus serialization") {
  WalkCorpus corpus = sample_walks(oracle::p3(), 4, 2, 3);
  std::string text = corpus_to_string(corpus);
  CHECK(text.find('\n') != std::string::npos);
  // One line per walk, space-separated ids.
  size_t lines = std::count(text.begin(), text.end(), '\n');
  CHECK(lines == corpus.walks.size());
}
