#pragma once

#include <functional>
#include <string>

#include "gfz/graph.hpp"

namespace gfz {

/// Eigendecomposition M = U diag(lambdas) U^T of a symmetric normalized
/// matrix. Eigenvalues are ascending; each eigenvector's largest-magnitude
/// entry is made positive so outputs are deterministic up to degeneracy.
struct SpectralBasis {
  Eigen::VectorXd lambdas;
  Eigen::MatrixXd U;
  NormKind source_kind = NormKind::SymLaplacian;

  int n() const { return static_cast<int>(lambdas.size()); }
};

constexpr int kDefaultSpectralCap = 5000;

/// Densifies and decomposes. Only sym / renorm-sym and their Laplacians are
/// accepted; anything larger than `cap` nodes is refused rather than
/// silently thrashing.
SpectralBasis eigendecompose(const NormalizedMatrix& m, int cap = kDefaultSpectralCap);

/// X_hat = U^T X
FeatureMatrix gft(const SpectralBasis& basis, const FeatureMatrix& x);
/// X = U X_hat
FeatureMatrix inverse_gft(const SpectralBasis& basis, const FeatureMatrix& xhat);

using ResponseFn = std::function<double(double)>;

/// Z = U diag(g(lambda)) U^T X. g must be finite on every eigenvalue.
/// keep_lowest >= 0 truncates to that many lowest-frequency components;
/// the default keeps all n.
FeatureMatrix apply_response(const SpectralBasis& basis, const ResponseFn& g,
                             const FeatureMatrix& x, int keep_lowest = -1);

// --- binary cache ----------------------------------------------------------
// Layout: magic "GFZB1", little-endian u64 n, lambdas (n f64), U row-major
// (n*n f64). The source kind is part of the cache key, not the payload.

void save_basis(const std::string& path, const SpectralBasis& basis);
SpectralBasis load_basis(const std::string& path, NormKind source_kind);

/// Filename-friendly key: hash of graph content plus the decomposed kind.
std::string basis_cache_key(const Graph& g, NormKind kind);

}  // namespace gfz
