#pragma once

#include <Eigen/Dense>
#include <Eigen/Eigenvalues>
#include <cmath>
#include <functional>

#include "gfz/error.hpp"
#include "gfz/graph.hpp"

// Test-only oracles, kept independent of the library's sparse construction
// path: everything here goes through dense Eigen arithmetic straight from
// the edge list.
namespace oracle {

inline Eigen::MatrixXd dense_adjacency(const gfz::Graph& g) {
  Eigen::MatrixXd a = Eigen::MatrixXd::Zero(g.n, g.n);
  for (const gfz::Edge& e : g.edges) {
    a(e.u, e.v) += e.w;
    a(e.v, e.u) += e.w;
  }
  return a;
}

inline Eigen::MatrixXd dense_normalize(const gfz::Graph& g, gfz::NormKind kind) {
  using gfz::NormKind;
  Eigen::MatrixXd a = dense_adjacency(g);
  Eigen::VectorXd d = a.rowwise().sum();
  Eigen::MatrixXd id = Eigen::MatrixXd::Identity(g.n, g.n);
  auto dinv = [](const Eigen::VectorXd& v, double e) {
    Eigen::VectorXd out(v.size());
    for (int i = 0; i < v.size(); ++i) out[i] = v[i] > 0 ? std::pow(v[i], e) : 0.0;
    return out;
  };
  switch (kind) {
    case NormKind::RawAdjacency: return a;
    case NormKind::Laplacian: return Eigen::MatrixXd(d.asDiagonal()) - a;
    case NormKind::RwLeft: return dinv(d, -1.0).asDiagonal() * a;
    case NormKind::RwRight: return a * dinv(d, -1.0).asDiagonal();
    case NormKind::Sym: return dinv(d, -0.5).asDiagonal() * a * dinv(d, -0.5).asDiagonal();
    case NormKind::SymLaplacian:
      return id - dense_normalize(g, NormKind::Sym);
    default: break;
  }
  Eigen::MatrixXd at = a + id;
  Eigen::VectorXd dt = at.rowwise().sum();
  switch (kind) {
    case NormKind::RenormLeft: return dinv(dt, -1.0).asDiagonal() * at;
    case NormKind::RenormRight: return at * dinv(dt, -1.0).asDiagonal();
    case NormKind::RenormSym:
      return dinv(dt, -0.5).asDiagonal() * at * dinv(dt, -0.5).asDiagonal();
    case NormKind::RenormSymLaplacian:
      return id - Eigen::MatrixXd(dinv(dt, -0.5).asDiagonal() * at * dinv(dt, -0.5).asDiagonal());
    default: gfz::fail(gfz::ErrorCode::Parameter, "oracle: unhandled kind");
  }
}

/// Dense matrix function f(M) X = V g(mu) V^T X via a fresh dense
/// eigendecomposition of the oracle-normalized matrix.
inline Eigen::MatrixXd dense_filter(const gfz::Graph& g, gfz::NormKind kind,
                                    const std::function<double(double)>& weight,
                                    const Eigen::MatrixXd& x) {
  Eigen::MatrixXd m = dense_normalize(g, kind);
  Eigen::SelfAdjointEigenSolver<Eigen::MatrixXd> es(m);
  Eigen::VectorXd w = es.eigenvalues().unaryExpr(weight);
  return es.eigenvectors() * w.asDiagonal() * es.eigenvectors().transpose() * x;
}

inline gfz::Graph k2() { return gfz::Graph::from_edge_list({{0, 1, 1.0}}); }

inline gfz::Graph p3() { return gfz::Graph::from_edge_list({{0, 1, 1.0}, {1, 2, 1.0}}); }

inline gfz::Graph triangle() {
  return gfz::Graph::from_edge_list({{0, 1, 1.0}, {1, 2, 1.0}, {0, 2, 1.0}});
}

}  // namespace oracle

#define CHECK_GFZ_ERROR(expr, expected_code)                    \
  do {                                                          \
    bool caught_ = false;                                       \
    try {                                                       \
      (void)(expr);                                             \
    } catch (const gfz::Error& e_) {                            \
      caught_ = true;                                           \
      CHECK(e_.code() == (expected_code));                      \
    }                                                           \
    CHECK_MESSAGE(caught_, "expected an error from " #expr);    \
  } while (0)
