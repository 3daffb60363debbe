#pragma once

#include <cstdint>

#include "gfz/graph.hpp"

namespace gfz {

Graph path_graph(int n);
Graph cycle_graph(int n);
Graph complete_graph(int n);
/// Center node 0 with `leaves` spokes.
Graph star_graph(int leaves);

/// G(n, p) with unit weights; may be disconnected.
Graph erdos_renyi(int n, double p, uint64_t seed);

/// Random spanning tree plus extra random edges up to roughly the expected
/// average degree; always connected. ensure_odd_cycle adds one
/// triangle-closing edge so the result is never bipartite.
Graph random_connected_graph(int n, double avg_degree, uint64_t seed,
                             bool ensure_odd_cycle = false);

/// Standard-normal N x F features, reproducible from the seed.
FeatureMatrix random_features(int n, int f, uint64_t seed);

}  // namespace gfz
