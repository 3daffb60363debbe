#pragma once

#include <vector>

#include "gfz/graph.hpp"
#include "gfz/operators.hpp"

namespace gfz {

/// w(lambda_i) = |bias - lambda_i| / sum_j |bias - lambda_j|: the relative
/// weight a linear filter with the given bias assigns to each frequency.
/// Always a probability vector; affine in lambda once bias >= max lambda.
Eigen::VectorXd lowpass_profile(const Eigen::VectorXd& lambdas, double bias);

/// Tr(Z^T L Z) for a Laplacian kind; the variation of Z across edges.
double dirichlet_energy(const NormalizedMatrix& laplacian, const FeatureMatrix& z);

struct TrajectoryStep {
  int k = 0;
  double max_row_dist = 0.0;    // max pairwise row distance / max|X|
  double dirichlet = 0.0;       // Tr(Z^T L Z) against the kind's Laplacian
  double stationary_dist = 0.0; // max row distance to the degree-stationary row / max|X|
};

/// Applies the filter k_max times and records collapse metrics per step.
/// The stationary reference row is pi^T X with pi proportional to degrees
/// (self-loop degrees for renormalized kinds).
std::vector<TrajectoryStep> smoothing_trajectory(const OperatorSpec& spec, const Graph& g,
                                                 const FeatureMatrix& x, int k_max);

std::string trajectory_to_csv(const std::vector<TrajectoryStep>& steps);

/// Closed-form propagation-with-regularization: solves (I + alpha L) Z = Y.
FeatureMatrix analytic_label_prop(const NormalizedMatrix& laplacian, const FeatureMatrix& y,
                                  double alpha);

/// Spectral test: smallest eigenvalue of the symmetric normalized adjacency
/// at -1 (within 1e-9). Random-walk powers oscillate on such graphs.
bool is_bipartite(const Graph& g);

}  // namespace gfz
