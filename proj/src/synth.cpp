#include "gfz/synth.hpp"

#include <cmath>
#include <set>

#include "gfz/error.hpp"
#include "gfz/rng.hpp"

namespace gfz {

Graph path_graph(int n) {
  if (n < 2) fail(ErrorCode::Parameter, "path needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  return Graph::from_edge_list(edges);
}

Graph cycle_graph(int n) {
  if (n < 3) fail(ErrorCode::Parameter, "cycle needs n >= 3");
  std::vector<Edge> edges;
  for (int i = 0; i + 1 < n; ++i) edges.push_back({i, i + 1, 1.0});
  edges.push_back({0, n - 1, 1.0});
  return Graph::from_edge_list(edges);
}

Graph complete_graph(int n) {
  if (n < 2) fail(ErrorCode::Parameter, "complete graph needs n >= 2");
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) edges.push_back({i, j, 1.0});
  return Graph::from_edge_list(edges);
}

Graph star_graph(int leaves) {
  if (leaves < 1) fail(ErrorCode::Parameter, "star needs >= 1 leaf");
  std::vector<Edge> edges;
  for (int i = 1; i <= leaves; ++i) edges.push_back({0, i, 1.0});
  return Graph::from_edge_list(edges);
}

Graph erdos_renyi(int n, double p, uint64_t seed) {
  if (n < 2) fail(ErrorCode::Parameter, "need n >= 2");
  if (!(p >= 0.0) || p > 1.0) fail(ErrorCode::Parameter, "need 0 <= p <= 1");
  SplitMix64 rng(mix_seed(seed, 0x45524e47ULL));
  std::vector<Edge> edges;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j)
      if (rng.next_double() < p) edges.push_back({i, j, 1.0});
  return Graph::from_edge_list(edges, n);
}

Graph random_connected_graph(int n, double avg_degree, uint64_t seed, bool ensure_odd_cycle) {
  if (n < 2) fail(ErrorCode::Parameter, "need n >= 2");
  SplitMix64 rng(mix_seed(seed, 0x52434f4eULL));
  std::set<std::pair<int, int>> seen;
  std::vector<Edge> edges;
  auto add = [&](int u, int v) {
    if (u == v) return false;
    auto key = std::minmax(u, v);
    if (!seen.insert(key).second) return false;
    edges.push_back({key.first, key.second, 1.0});
    return true;
  };
  // Random spanning tree: attach each node to a uniform earlier node.
  for (int v = 1; v < n; ++v) add(static_cast<int>(rng.next_below(v)), v);
  long long target_extra =
      std::max(0LL, static_cast<long long>(avg_degree * n / 2.0) - (n - 1));
  long long guard = 20LL * target_extra + 100;
  while (target_extra > 0 && guard-- > 0) {
    int u = static_cast<int>(rng.next_below(n));
    int v = static_cast<int>(rng.next_below(n));
    if (add(u, v)) --target_extra;
  }
  if (ensure_odd_cycle && n >= 3) {
    // A triangle anywhere makes the graph non-bipartite; close one over an
    // existing edge (or find one already closed).
    bool closed = false;
    const size_t fixed_count = edges.size();
    for (size_t ei = 0; ei < fixed_count && !closed; ++ei) {
      int u = edges[ei].u, v = edges[ei].v;
      for (int w = 0; w < n && !closed; ++w) {
        if (w == u || w == v) continue;
        bool wu = seen.count(std::minmax(w, u)) > 0;
        bool wv = seen.count(std::minmax(w, v)) > 0;
        if (wu && wv) closed = true;
        else if (wu) closed = add(w, v);
        else if (wv) closed = add(w, u);
      }
    }
  }
  return Graph::from_edge_list(edges, n);
}

FeatureMatrix random_features(int n, int f, uint64_t seed) {
  SplitMix64 rng(mix_seed(seed, 0x46454154ULL));
  FeatureMatrix x(n, f);
  for (int i = 0; i < n; ++i) {
    for (int j = 0; j < f; ++j) {
      // Box-Muller
      double u1 = std::max(rng.next_double(), 1e-12);
      double u2 = rng.next_double();
      x(i, j) = std::sqrt(-2.0 * std::log(u1)) * std::cos(2.0 * M_PI * u2);
    }
  }
  return x;
}

}  // namespace gfz
