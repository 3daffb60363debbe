#pragma once

#include <map>
#include <string>
#include <vector>

#include "gfz/graph.hpp"
#include "gfz/polynomials.hpp"
#include "gfz/spectral.hpp"

namespace gfz {

enum class Family { Linear, Polynomial, Rational };

const char* family_name(Family f);

/// A named graph filter: a rational matrix function P(M)/Q(M) of a
/// normalized adjacency M, applied either in closed spatial form or through
/// the eigenbasis of the paired Laplacian. Linear and polynomial filters
/// keep Q == 1; rational filters are normalized so q0 == 1.
///
/// With M = I - L the induced frequency response on Laplacian eigenvalues
/// is g(lambda) = P(1 - lambda) / Q(1 - lambda).
struct OperatorSpec {
  std::string name;
  NormKind norm_kind = NormKind::Sym;
  Poly p_coeffs;
  Poly q_coeffs{1.0};
  Family family = Family::Linear;

  double response(double lambda) const;
  bool is_identity_denominator() const;
};

namespace op {

// Linear filters (first-order neighborhoods).
OperatorSpec gcn();                     // I + M over renorm-sym; response 2 - lambda
OperatorSpec gcn_renorm();              // M itself over renorm-sym; response 1 - lambda
OperatorSpec sage_mean();               // I + M over sym; response 2 - lambda
OperatorSpec gin(double eps);           // (1 + eps) I + M over sym; response 2 + eps - lambda

// Polynomial filters (finite neighborhoods of higher order).
/// theta are Chebyshev coefficients over the rescaled Laplacian
/// 2 L / lambda_max - I; converted to monomial coefficients in M at
/// construction. The default lambda_max = 2 matches the usual convention.
OperatorSpec chebnet(const Poly& theta, double lambda_max = 2.0);
OperatorSpec deepwalk(int t);           // (I + M + ... + M^t) / (t + 1)
OperatorSpec dcnn(const Poly& w);       // w1 M + w2 M^2 + ... (no constant term)
OperatorSpec gdc_ppr(double alpha);     // diffusion weights alpha (1-alpha)^k
OperatorSpec gdc_heat(double s);        // diffusion weights e^-s s^k / k!
OperatorSpec node2vec(double p, double q);  // 1/p I + (1 - 1/q) M + 1/q M^2
OperatorSpec line_sdne(double alpha);   // M + alpha M^2
OperatorSpec sgc(int k);                // M^k over renorm-sym

// Rational filters (propagation with restart / reverse aggregation).
OperatorSpec auto_regressive(double alpha);  // ((1+alpha) I - alpha M)^-1
OperatorSpec ppnp(double alpha);             // alpha (I - (1-alpha) M)^-1
OperatorSpec arma(double a, double b);       // b (I - a M)^-1
OperatorSpec parwalks(double beta);          // beta ((1+beta) I - M)^-1
OperatorSpec rationalnet(const Poly& p, const Poly& q);

/// One propagation step with the given normalization: Z = M X.
OperatorSpec propagation(NormKind kind);

}  // namespace op

/// Same filter over a different normalization (spatial route only unless the
/// kind is symmetric).
OperatorSpec with_norm(OperatorSpec spec, NormKind kind);

/// Family widenings; outputs are numerically identical filters.
OperatorSpec as_polynomial(const OperatorSpec& spec);
OperatorSpec as_rational(const OperatorSpec& spec);

/// k-fold application of a polynomial filter collapsed into one spec
/// (coefficient convolution).
OperatorSpec power_spec(const OperatorSpec& spec, int k);

struct SolveOptions {
  int direct_cap = 5000;      // SparseLU below this, iterative above
  double residual_tol = 1e-10;
  int max_iterations_per_n = 10;
};

/// Z = P(M) X for polynomial filters (Horner, repeated sparse products);
/// for rational filters solves Q(M) Z = P(M) X.
FeatureMatrix apply_spatial(const OperatorSpec& spec, const Graph& g, const FeatureMatrix& x,
                            const SolveOptions& opts = {});

/// Z = U diag(P(1-lambda)/Q(1-lambda)) U^T X. The basis must come from the
/// Laplacian paired with spec.norm_kind.
FeatureMatrix apply_spectral(const OperatorSpec& spec, const SpectralBasis& basis,
                             const FeatureMatrix& x);

/// Z = (W ⊙ A) X: externally supplied per-edge weights masked onto the edge
/// set; entries of W off the edge set are ignored.
FeatureMatrix masked_aggregate(const Eigen::MatrixXd& w, const Graph& g, const FeatureMatrix& x);

struct EquivalenceReport {
  std::string name;
  double max_err = 0.0;
  double mean_err = 0.0;
  bool pass = false;
};

/// Runs both routes on the same input and reports the elementwise gap.
/// pass == (max_err <= tol * (1 + max|X|)).
EquivalenceReport verify_equivalence(const OperatorSpec& spec, const Graph& g,
                                     const FeatureMatrix& x, double tol,
                                     int cap = kDefaultSpectralCap);

/// The built-in catalog: one spec per covered propagation rule, with fixed
/// default parameters.
std::vector<OperatorSpec> default_registry();

/// Text table: name, family, norm kind, p, q. Consumed by the CLI `list`
/// command.
std::string format_catalog(const std::vector<OperatorSpec>& specs);

/// Parameter names -> values (scalars are single-element lists). Unknown
/// names or out-of-range values throw.
using OpParams = std::map<std::string, std::vector<double>>;
OperatorSpec make_operator(const std::string& name, const OpParams& params = {});

}  // namespace gfz
