#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "gfz/graph.hpp"

namespace gfz {

struct WalkParams {
  int length = 0;     // nodes per walk
  int per_node = 0;   // walks started from every node
  uint64_t seed = 0;
  std::optional<std::pair<double, double>> pq;  // set for second-order walks
};

/// A bag of sampled node paths. Every consecutive pair is an edge; every
/// path has exactly params.length nodes. The corpus is a pure function of
/// (graph, params): walk (start, index) draws from its own derived stream.
struct WalkCorpus {
  int n = 0;
  std::vector<std::vector<int>> walks;
  WalkParams params;

  size_t total_steps() const {
    return walks.empty() ? 0 : walks.size() * (walks.front().size() - 1);
  }
};

/// First-order walks; each step drawn proportionally to edge weight.
WalkCorpus sample_walks(const Graph& g, int length, int per_node, uint64_t seed);

/// Second-order walks: candidate weights are scaled 1/p for the return
/// move, 1 for moves staying within the previous node's neighborhood, and
/// 1/q for moves leaving it.
WalkCorpus sample_walks_2nd(const Graph& g, double p, double q, int length, int per_node,
                            uint64_t seed);

struct TransitionEstimate {
  Eigen::MatrixXd probs;       // row-normalized step counts
  std::vector<bool> visited;   // rows with zero outgoing observations are false
};

TransitionEstimate empirical_transition(const WalkCorpus& corpus);

/// Row-normalized forward co-occurrence counts within the window: for each
/// position with a full window ahead, every offset r in 1..t contributes one
/// (walk[i], walk[i+r]) pair.
TransitionEstimate co_occurrence(const WalkCorpus& corpus, int window);

/// Half the L1 distance between two row distributions.
double total_variation(const Eigen::VectorXd& a, const Eigen::VectorXd& b);

/// One walk per line, space-separated node ids.
std::string corpus_to_string(const WalkCorpus& corpus);
void write_corpus(const std::string& path, const WalkCorpus& corpus);

}  // namespace gfz
