#include "gfz/graph.hpp"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <fstream>
#include <set>
#include <sstream>

#include "gfz/error.hpp"

namespace gfz {

Graph Graph::from_edge_list(const std::vector<Edge>& edges, int n_hint) {
  Graph g;
  std::set<std::pair<int, int>> seen;
  int max_id = -1;
  g.edges.reserve(edges.size());
  for (const Edge& e : edges) {
    if (e.u < 0 || e.v < 0) fail(ErrorCode::Parse, "negative node id");
    if (e.u == e.v) fail(ErrorCode::Parse, "self-loop on node " + std::to_string(e.u));
    if (!(e.w > 0.0) || !std::isfinite(e.w))
      fail(ErrorCode::Parse, "edge weight must be a positive finite real");
    auto key = std::minmax(e.u, e.v);
    if (!seen.insert(key).second)
      fail(ErrorCode::Parse, "duplicate undirected edge (" + std::to_string(e.u) + ", " +
                                 std::to_string(e.v) + ")");
    g.edges.push_back({key.first, key.second, e.w});
    max_id = std::max(max_id, key.second);
  }
  g.n = max_id + 1;
  if (n_hint >= 0) {
    if (n_hint < g.n) fail(ErrorCode::Parse, "node count smaller than max id + 1");
    g.n = n_hint;
  }
  if (g.n < 1) fail(ErrorCode::Parse, "graph must have at least one node");
  g.degrees = Eigen::VectorXd::Zero(g.n);
  for (const Edge& e : g.edges) {
    g.degrees[e.u] += e.w;
    g.degrees[e.v] += e.w;
  }
  return g;
}

Graph load_edge_list(const std::string& path) {
  std::ifstream in(path);
  if (!in) fail(ErrorCode::Io, "cannot open edge list: " + path);
  std::vector<Edge> edges;
  std::string line;
  int lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line.erase(hash);
    std::istringstream ls(line);
    long long u, v;
    if (!(ls >> u)) continue;  // blank or comment-only line
    double w = 1.0;
    if (!(ls >> v)) fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": expected `u v [w]`");
    std::string rest;
    if (ls >> rest) {
      try {
        size_t pos = 0;
        w = std::stod(rest, &pos);
        if (pos != rest.size()) throw std::invalid_argument(rest);
      } catch (const std::exception&) {
        fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": bad weight `" + rest + "`");
      }
      std::string extra;
      if (ls >> extra)
        fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": trailing tokens");
    }
    if (u < 0 || v < 0 || u > 1 << 30 || v > 1 << 30)
      fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": node id out of range");
    // Cases the loader can see locally get line numbers; duplicates are
    // caught in from_edge_list.
    if (u == v) fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": self-loop");
    if (!(w > 0.0) || !std::isfinite(w))
      fail(ErrorCode::Parse, path + ":" + std::to_string(lineno) + ": weight must be > 0");
    edges.push_back({static_cast<int>(u), static_cast<int>(v), w});
  }
  if (edges.empty()) fail(ErrorCode::Parse, path + ": no edges");
  return Graph::from_edge_list(edges);
}

void save_edge_list(const std::string& path, const Graph& g) {
  std::ofstream out(path);
  if (!out) fail(ErrorCode::Io, "cannot write edge list: " + path);
  out << "# n=" << g.n << "\n";
  for (const Edge& e : g.edges) {
    out << e.u << '\t' << e.v;
    if (e.w != 1.0) out << '\t' << e.w;
    out << '\n';
  }
}

const char* norm_kind_name(NormKind kind) {
  switch (kind) {
    case NormKind::RawAdjacency: return "raw-adjacency";
    case NormKind::Laplacian: return "laplacian";
    case NormKind::RwLeft: return "rw-left";
    case NormKind::RwRight: return "rw-right";
    case NormKind::Sym: return "sym";
    case NormKind::RenormLeft: return "renorm-left";
    case NormKind::RenormRight: return "renorm-right";
    case NormKind::RenormSym: return "renorm-sym";
    case NormKind::SymLaplacian: return "sym-laplacian";
    case NormKind::RenormSymLaplacian: return "renorm-sym-laplacian";
  }
  return "?";
}

NormKind norm_kind_from_name(const std::string& name) {
  for (NormKind k : {NormKind::RawAdjacency, NormKind::Laplacian, NormKind::RwLeft,
                     NormKind::RwRight, NormKind::Sym, NormKind::RenormLeft,
                     NormKind::RenormRight, NormKind::RenormSym, NormKind::SymLaplacian,
                     NormKind::RenormSymLaplacian}) {
    if (name == norm_kind_name(k)) return k;
  }
  fail(ErrorCode::Parameter, "unknown normalization kind: " + name);
}

bool is_symmetric_kind(NormKind kind) {
  switch (kind) {
    case NormKind::RawAdjacency:
    case NormKind::Laplacian:
    case NormKind::Sym:
    case NormKind::RenormSym:
    case NormKind::SymLaplacian:
    case NormKind::RenormSymLaplacian: return true;
    default: return false;
  }
}

bool is_laplacian_kind(NormKind kind) {
  return kind == NormKind::Laplacian || kind == NormKind::SymLaplacian ||
         kind == NormKind::RenormSymLaplacian;
}

bool is_renormalized_kind(NormKind kind) {
  return kind == NormKind::RenormLeft || kind == NormKind::RenormRight ||
         kind == NormKind::RenormSym || kind == NormKind::RenormSymLaplacian;
}

NormKind laplacian_of(NormKind adjacency_kind) {
  switch (adjacency_kind) {
    case NormKind::Sym: return NormKind::SymLaplacian;
    case NormKind::RenormSym: return NormKind::RenormSymLaplacian;
    default:
      fail(ErrorCode::UnsupportedKind,
           std::string("no symmetric Laplacian pairs with kind ") + norm_kind_name(adjacency_kind));
  }
}

NormKind adjacency_of(NormKind laplacian_kind) {
  switch (laplacian_kind) {
    case NormKind::SymLaplacian: return NormKind::Sym;
    case NormKind::RenormSymLaplacian: return NormKind::RenormSym;
    default:
      fail(ErrorCode::UnsupportedKind,
           std::string("kind ") + norm_kind_name(laplacian_kind) + " is not a paired Laplacian");
  }
}

SparseMat adjacency(const Graph& g) {
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * g.edges.size());
  for (const Edge& e : g.edges) {
    trips.emplace_back(e.u, e.v, e.w);
    trips.emplace_back(e.v, e.u, e.w);
  }
  SparseMat a(g.n, g.n);
  a.setFromTriplets(trips.begin(), trips.end());
  return a;
}

namespace {

Eigen::VectorXd inverse_power(const Eigen::VectorXd& deg, double exponent, NormKind kind,
                              ZeroDegreePolicy policy) {
  Eigen::VectorXd out(deg.size());
  for (int i = 0; i < deg.size(); ++i) {
    if (deg[i] <= 0.0) {
      if (policy == ZeroDegreePolicy::Strict)
        fail(ErrorCode::DegenerateInput, std::string("kind ") + norm_kind_name(kind) +
                                             " requires positive degree, node " + std::to_string(i) +
                                             " is isolated");
      out[i] = 0.0;
    } else {
      out[i] = std::pow(deg[i], exponent);
    }
  }
  return out;
}

SparseMat scale_rows(const Eigen::VectorXd& s, const SparseMat& m) {
  return s.asDiagonal() * m;
}

SparseMat identity_sparse(int n) {
  SparseMat id(n, n);
  id.setIdentity();
  return id;
}

}  // namespace

NormalizedMatrix normalize(const Graph& g, NormKind kind, ZeroDegreePolicy policy) {
  SparseMat a = adjacency(g);
  const int n = g.n;
  SparseMat values;
  switch (kind) {
    case NormKind::RawAdjacency: values = a; break;
    case NormKind::Laplacian: {
      SparseMat d(n, n);
      d = g.degrees.asDiagonal();
      values = d - a;
      break;
    }
    case NormKind::RwLeft:
      values = scale_rows(inverse_power(g.degrees, -1.0, kind, policy), a);
      break;
    case NormKind::RwRight:
      values = a * inverse_power(g.degrees, -1.0, kind, policy).asDiagonal();
      break;
    case NormKind::Sym: {
      Eigen::VectorXd s = inverse_power(g.degrees, -0.5, kind, policy);
      values = s.asDiagonal() * a * s.asDiagonal();
      break;
    }
    case NormKind::SymLaplacian: {
      Eigen::VectorXd s = inverse_power(g.degrees, -0.5, kind, policy);
      SparseMat sym = s.asDiagonal() * a * s.asDiagonal();
      values = identity_sparse(n) - sym;
      break;
    }
    case NormKind::RenormLeft:
    case NormKind::RenormRight:
    case NormKind::RenormSym:
    case NormKind::RenormSymLaplacian: {
      SparseMat atilde = a + identity_sparse(n);
      Eigen::VectorXd dtilde = g.degrees.array() + 1.0;
      if (kind == NormKind::RenormLeft) {
        values = scale_rows(dtilde.cwiseInverse(), atilde);
      } else if (kind == NormKind::RenormRight) {
        values = atilde * dtilde.cwiseInverse().asDiagonal();
      } else {
        Eigen::VectorXd s = dtilde.array().rsqrt();
        SparseMat sym = s.asDiagonal() * atilde * s.asDiagonal();
        values = (kind == NormKind::RenormSym) ? sym : SparseMat(identity_sparse(n) - sym);
      }
      break;
    }
  }
  values.makeCompressed();
  return {kind, std::move(values)};
}

FeatureMatrix matrix_power_apply(const NormalizedMatrix& m, int k, const FeatureMatrix& x) {
  if (k < 0) fail(ErrorCode::Parameter, "power must be >= 0");
  if (m.values.cols() != x.rows())
    fail(ErrorCode::DimensionMismatch,
         "matrix is " + std::to_string(m.n()) + "x" + std::to_string(m.n()) + " but signal has " +
             std::to_string(x.rows()) + " rows");
  FeatureMatrix z = x;
  for (int i = 0; i < k; ++i) z = m.values * z;
  return z;
}

uint64_t graph_content_hash(const Graph& g) {
  uint64_t h = 0xcbf29ce484222325ULL;
  auto mix = [&h](uint64_t v) {
    for (int b = 0; b < 8; ++b) {
      h ^= (v >> (8 * b)) & 0xff;
      h *= 0x100000001b3ULL;
    }
  };
  mix(static_cast<uint64_t>(g.n));
  mix(g.edges.size());
  for (const Edge& e : g.edges) {
    mix(static_cast<uint64_t>(e.u));
    mix(static_cast<uint64_t>(e.v));
    uint64_t wbits;
    static_assert(sizeof(double) == sizeof(uint64_t));
    std::memcpy(&wbits, &e.w, sizeof(wbits));
    mix(wbits);
  }
  return h;
}

}  // namespace gfz
