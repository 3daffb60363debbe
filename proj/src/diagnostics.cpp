#include "gfz/diagnostics.hpp"

#include <Eigen/SparseLU>
#include <cmath>
#include <cstdio>

#include "gfz/error.hpp"
#include "gfz/spectral.hpp"

namespace gfz {

Eigen::VectorXd lowpass_profile(const Eigen::VectorXd& lambdas, double bias) {
  Eigen::VectorXd w = (Eigen::VectorXd::Constant(lambdas.size(), bias) - lambdas).cwiseAbs();
  double total = w.sum();
  if (!(total > 0.0))
    fail(ErrorCode::DegenerateInput, "all eigenvalues equal the bias; profile undefined");
  return w / total;
}

double dirichlet_energy(const NormalizedMatrix& laplacian, const FeatureMatrix& z) {
  if (!is_laplacian_kind(laplacian.kind))
    fail(ErrorCode::KindMismatch, std::string("dirichlet_energy needs a Laplacian kind, got ") +
                                      norm_kind_name(laplacian.kind));
  if (z.rows() != laplacian.n())
    fail(ErrorCode::DimensionMismatch, "signal rows must match the Laplacian size");
  return (z.transpose() * (laplacian.values * z)).trace();
}

namespace {

double max_pairwise_row_distance(const FeatureMatrix& z) {
  double best = 0.0;
  for (Eigen::Index i = 0; i < z.rows(); ++i)
    for (Eigen::Index j = i + 1; j < z.rows(); ++j)
      best = std::max(best, (z.row(i) - z.row(j)).norm());
  return best;
}

NormKind trajectory_laplacian_kind(NormKind kind) {
  if (is_laplacian_kind(kind)) return kind;
  if (is_renormalized_kind(kind)) return NormKind::RenormSymLaplacian;
  if (kind == NormKind::RawAdjacency) return NormKind::Laplacian;
  return NormKind::SymLaplacian;
}

}  // namespace

std::vector<TrajectoryStep> smoothing_trajectory(const OperatorSpec& spec, const Graph& g,
                                                 const FeatureMatrix& x, int k_max) {
  if (k_max < 1) fail(ErrorCode::Parameter, "k_max must be >= 1");
  if (x.rows() != g.n) fail(ErrorCode::DimensionMismatch, "signal rows must match node count");
  NormalizedMatrix lap = normalize(g, trajectory_laplacian_kind(spec.norm_kind));
  Eigen::VectorXd pi = is_renormalized_kind(spec.norm_kind)
                           ? Eigen::VectorXd(g.degrees.array() + 1.0)
                           : g.degrees;
  pi /= pi.sum();
  Eigen::RowVectorXd stationary_row = pi.transpose() * x;
  const double scale = std::max(x.cwiseAbs().maxCoeff(), 1e-300);

  std::vector<TrajectoryStep> steps;
  steps.reserve(k_max);
  FeatureMatrix z = x;
  for (int k = 1; k <= k_max; ++k) {
    z = apply_spatial(spec, g, z);
    if (!z.allFinite())
      fail(ErrorCode::Numeric, "trajectory overflowed at step " + std::to_string(k));
    TrajectoryStep step;
    step.k = k;
    step.max_row_dist = max_pairwise_row_distance(z) / scale;
    step.dirichlet = dirichlet_energy(lap, z);
    double sd = 0.0;
    for (Eigen::Index i = 0; i < z.rows(); ++i)
      sd = std::max(sd, (z.row(i) - stationary_row).norm());
    step.stationary_dist = sd / scale;
    steps.push_back(step);
  }
  return steps;
}

std::string trajectory_to_csv(const std::vector<TrajectoryStep>& steps) {
  std::string out = "k,max_row_dist,dirichlet,stationary_dist\n";
  char buf[128];
  for (const TrajectoryStep& s : steps) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g,%.12g\n", s.k, s.max_row_dist, s.dirichlet,
                  s.stationary_dist);
    out += buf;
  }
  return out;
}

FeatureMatrix analytic_label_prop(const NormalizedMatrix& laplacian, const FeatureMatrix& y,
                                  double alpha) {
  if (!is_laplacian_kind(laplacian.kind))
    fail(ErrorCode::KindMismatch, "analytic_label_prop needs a Laplacian kind");
  if (!(alpha > 0.0)) fail(ErrorCode::Parameter, "alpha must be > 0");
  if (y.rows() != laplacian.n())
    fail(ErrorCode::DimensionMismatch, "signal rows must match the Laplacian size");
  SparseMat id(laplacian.n(), laplacian.n());
  id.setIdentity();
  SparseMat lhs = id + alpha * laplacian.values;
  Eigen::SparseLU<SparseMat> lu;
  lu.compute(lhs);
  if (lu.info() != Eigen::Success) fail(ErrorCode::Numeric, "label propagation solve failed");
  FeatureMatrix z = lu.solve(y);
  double resid = (lhs * z - y).cwiseAbs().maxCoeff();
  double scale = 1.0 + y.cwiseAbs().maxCoeff();
  if (!(resid <= 1e-10 * scale))
    fail(ErrorCode::Numeric, "label propagation residual " + std::to_string(resid));
  return z;
}

bool is_bipartite(const Graph& g) {
  SpectralBasis basis = eigendecompose(normalize(g, NormKind::Sym, ZeroDegreePolicy::ZeroRow));
  return basis.lambdas.minCoeff() <= -(1.0 - 1e-9);
}

}  // namespace gfz
