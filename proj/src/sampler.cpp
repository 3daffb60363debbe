#include "gfz/sampler.hpp"

#include <algorithm>
#include <fstream>

#include "gfz/error.hpp"
#include "gfz/rng.hpp"

namespace gfz {

namespace {

struct NeighborTable {
  // CSR-style neighbor lists, sorted by id, with cumulative weights for
  // O(log deg) weighted draws.
  std::vector<std::vector<int>> ids;
  std::vector<std::vector<double>> cums;

  explicit NeighborTable(const Graph& g) : ids(g.n), cums(g.n) {
    std::vector<std::vector<std::pair<int, double>>> adj(g.n);
    for (const Edge& e : g.edges) {
      adj[e.u].emplace_back(e.v, e.w);
      adj[e.v].emplace_back(e.u, e.w);
    }
    for (int v = 0; v < g.n; ++v) {
      std::sort(adj[v].begin(), adj[v].end());
      double acc = 0.0;
      for (auto& [to, w] : adj[v]) {
        ids[v].push_back(to);
        acc += w;
        cums[v].push_back(acc);
      }
    }
  }

  bool has_edge(int u, int v) const {
    return std::binary_search(ids[u].begin(), ids[u].end(), v);
  }

  int draw(int v, SplitMix64& rng) const {
    double r = rng.next_double() * cums[v].back();
    size_t i = std::lower_bound(cums[v].begin(), cums[v].end(), r) - cums[v].begin();
    if (i >= ids[v].size()) i = ids[v].size() - 1;
    return ids[v][i];
  }

  double weight_at(int v, size_t i) const {
    return cums[v][i] - (i == 0 ? 0.0 : cums[v][i - 1]);
  }
};

void check_walkable(const Graph& g, int length, int per_node, int min_length) {
  if (length < min_length)
    fail(ErrorCode::Parameter, "walk length must be >= " + std::to_string(min_length));
  if (per_node < 1) fail(ErrorCode::Parameter, "per_node must be >= 1");
  for (int v = 0; v < g.n; ++v)
    if (g.degrees[v] <= 0.0)
      fail(ErrorCode::DegenerateInput, "node " + std::to_string(v) + " is isolated; walks stall");
}

}  // namespace

WalkCorpus sample_walks(const Graph& g, int length, int per_node, uint64_t seed) {
  check_walkable(g, length, per_node, 2);
  NeighborTable table(g);
  WalkCorpus corpus;
  corpus.n = g.n;
  corpus.params = {length, per_node, seed, std::nullopt};
  corpus.walks.reserve(static_cast<size_t>(g.n) * per_node);
  for (int start = 0; start < g.n; ++start) {
    for (int widx = 0; widx < per_node; ++widx) {
      SplitMix64 rng(mix_seed(seed, static_cast<uint64_t>(start), static_cast<uint64_t>(widx)));
      std::vector<int> walk;
      walk.reserve(length);
      walk.push_back(start);
      int cur = start;
      for (int s = 1; s < length; ++s) {
        cur = table.draw(cur, rng);
        walk.push_back(cur);
      }
      corpus.walks.push_back(std::move(walk));
    }
  }
  return corpus;
}

WalkCorpus sample_walks_2nd(const Graph& g, double p, double q, int length, int per_node,
                            uint64_t seed) {
  if (!(p > 0.0) || !(q > 0.0)) fail(ErrorCode::Parameter, "need p > 0 and q > 0");
  check_walkable(g, length, per_node, 3);
  NeighborTable table(g);
  WalkCorpus corpus;
  corpus.n = g.n;
  corpus.params = {length, per_node, seed, std::make_pair(p, q)};
  corpus.walks.reserve(static_cast<size_t>(g.n) * per_node);
  std::vector<double> cum;
  for (int start = 0; start < g.n; ++start) {
    for (int widx = 0; widx < per_node; ++widx) {
      SplitMix64 rng(mix_seed(seed, static_cast<uint64_t>(start), static_cast<uint64_t>(widx)));
      std::vector<int> walk;
      walk.reserve(length);
      walk.push_back(start);
      int cur = table.draw(start, rng);
      walk.push_back(cur);
      int prev = start;
      for (int s = 2; s < length; ++s) {
        const auto& nbrs = table.ids[cur];
        cum.resize(nbrs.size());
        double acc = 0.0;
        for (size_t i = 0; i < nbrs.size(); ++i) {
          int x = nbrs[i];
          double bias = (x == prev) ? 1.0 / p : (table.has_edge(prev, x) ? 1.0 : 1.0 / q);
          acc += table.weight_at(cur, i) * bias;
          cum[i] = acc;
        }
        double r = rng.next_double() * acc;
        size_t pick = std::lower_bound(cum.begin(), cum.end(), r) - cum.begin();
        if (pick >= nbrs.size()) pick = nbrs.size() - 1;
        prev = cur;
        cur = nbrs[pick];
        walk.push_back(cur);
      }
      corpus.walks.push_back(std::move(walk));
    }
  }
  return corpus;
}

TransitionEstimate empirical_transition(const WalkCorpus& corpus) {
  if (corpus.walks.empty()) fail(ErrorCode::DegenerateInput, "empty corpus");
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(corpus.n, corpus.n);
  for (const auto& walk : corpus.walks)
    for (size_t i = 0; i + 1 < walk.size(); ++i) counts(walk[i], walk[i + 1]) += 1.0;
  TransitionEstimate est;
  est.visited.assign(corpus.n, false);
  est.probs = Eigen::MatrixXd::Zero(corpus.n, corpus.n);
  for (int v = 0; v < corpus.n; ++v) {
    double total = counts.row(v).sum();
    if (total > 0.0) {
      est.visited[v] = true;
      est.probs.row(v) = counts.row(v) / total;
    }
  }
  return est;
}

TransitionEstimate co_occurrence(const WalkCorpus& corpus, int window) {
  if (corpus.walks.empty()) fail(ErrorCode::DegenerateInput, "empty corpus");
  if (window < 1) fail(ErrorCode::Parameter, "window must be >= 1");
  Eigen::MatrixXd counts = Eigen::MatrixXd::Zero(corpus.n, corpus.n);
  for (const auto& walk : corpus.walks) {
    if (static_cast<int>(walk.size()) <= window) continue;
    for (size_t i = 0; i + window < walk.size(); ++i)
      for (int r = 1; r <= window; ++r) counts(walk[i], walk[i + r]) += 1.0;
  }
  TransitionEstimate est;
  est.visited.assign(corpus.n, false);
  est.probs = Eigen::MatrixXd::Zero(corpus.n, corpus.n);
  for (int v = 0; v < corpus.n; ++v) {
    double total = counts.row(v).sum();
    if (total > 0.0) {
      est.visited[v] = true;
      est.probs.row(v) = counts.row(v) / total;
    }
  }
  return est;
}

double total_variation(const Eigen::VectorXd& a, const Eigen::VectorXd& b) {
  if (a.size() != b.size()) fail(ErrorCode::DimensionMismatch, "distribution sizes differ");
  return 0.5 * (a - b).cwiseAbs().sum();
}

std::string corpus_to_string(const WalkCorpus& corpus) {
  std::string out;
  for (const auto& walk : corpus.walks) {
    for (size_t i = 0; i < walk.size(); ++i) {
      out += std::to_string(walk[i]);
      out += (i + 1 < walk.size()) ? ' ' : '\n';
    }
  }
  return out;
}

void write_corpus(const std::string& path, const WalkCorpus& corpus) {
  std::ofstream out(path, std::ios::binary);
  if (!out) fail(ErrorCode::Io, "cannot write corpus: " + path);
  out << corpus_to_string(corpus);
}

}  // namespace gfz
