#pragma once

#include <Eigen/Dense>
#include <Eigen/Sparse>
#include <cstdint>
#include <string>
#include <vector>

namespace gfz {

using FeatureMatrix = Eigen::MatrixXd;
using SparseMat = Eigen::SparseMatrix<double>;

struct Edge {
  int u = 0;
  int v = 0;
  double w = 1.0;
};

/// Undirected weighted graph. Node ids are dense 0..n-1 (n is inferred as
/// max id + 1 when not given). Each undirected edge is recorded once; the
/// raw edge list never contains self-loops or duplicates — self-loops enter
/// only through the renormalized matrix kinds.
struct Graph {
  int n = 0;
  std::vector<Edge> edges;
  Eigen::VectorXd degrees;  // weighted row sums of the adjacency

  /// Validates and canonicalizes an edge list (u < v). n_hint, when >= 0,
  /// allows trailing isolated nodes beyond max id + 1.
  static Graph from_edge_list(const std::vector<Edge>& edges, int n_hint = -1);

  double min_degree() const { return n == 0 ? 0.0 : degrees.minCoeff(); }
  double total_degree() const { return degrees.sum(); }
};

/// Parses `u<TAB>v[<TAB>w]` lines; `#` starts a comment. Malformed input
/// reports the offending 1-based line number.
Graph load_edge_list(const std::string& path);

void save_edge_list(const std::string& path, const Graph& g);

enum class NormKind {
  RawAdjacency,        // A
  Laplacian,           // D - A
  RwLeft,              // D^-1 A
  RwRight,             // A D^-1
  Sym,                 // D^-1/2 A D^-1/2
  RenormLeft,          // D~^-1 A~,  A~ = A + I
  RenormRight,         // A~ D~^-1
  RenormSym,           // D~^-1/2 A~ D~^-1/2
  SymLaplacian,        // I - Sym
  RenormSymLaplacian,  // I - RenormSym
};

const char* norm_kind_name(NormKind kind);
NormKind norm_kind_from_name(const std::string& name);

/// True for kinds whose matrix is symmetric for undirected graphs.
bool is_symmetric_kind(NormKind kind);
/// True for the I - (normalized adjacency) kinds.
bool is_laplacian_kind(NormKind kind);
/// True for kinds built from A + I.
bool is_renormalized_kind(NormKind kind);
/// The Laplacian paired with an adjacency-form kind (Sym -> SymLaplacian,
/// RenormSym -> RenormSymLaplacian); throws for kinds without one.
NormKind laplacian_of(NormKind adjacency_kind);
/// Inverse of laplacian_of.
NormKind adjacency_of(NormKind laplacian_kind);

/// What to do when a kind divides by a zero degree: Strict refuses the
/// graph, ZeroRow zeroes the affected entries. Renormalized kinds never
/// divide by zero and ignore the policy.
enum class ZeroDegreePolicy { Strict, ZeroRow };

struct NormalizedMatrix {
  NormKind kind = NormKind::RawAdjacency;
  SparseMat values;

  int n() const { return static_cast<int>(values.rows()); }
};

SparseMat adjacency(const Graph& g);

NormalizedMatrix normalize(const Graph& g, NormKind kind,
                           ZeroDegreePolicy policy = ZeroDegreePolicy::Strict);

/// M^k X by k successive sparse products; M^k itself is never formed.
FeatureMatrix matrix_power_apply(const NormalizedMatrix& m, int k, const FeatureMatrix& x);

/// FNV-1a over (n, canonical edge list); stable across runs, used to key
/// spectral-basis cache files.
uint64_t graph_content_hash(const Graph& g);

}  // namespace gfz
