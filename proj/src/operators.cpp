#include "gfz/operators.hpp"

#include <Eigen/IterativeLinearSolvers>
#include <Eigen/SparseLU>
#include <algorithm>
#include <cmath>
#include <sstream>

#include "gfz/error.hpp"

namespace gfz {

const char* family_name(Family f) {
  switch (f) {
    case Family::Linear: return "linear";
    case Family::Polynomial: return "polynomial";
    case Family::Rational: return "rational";
  }
  return "?";
}

double OperatorSpec::response(double lambda) const {
  double x = 1.0 - lambda;
  return poly_eval(p_coeffs, x) / poly_eval(q_coeffs, x);
}

bool OperatorSpec::is_identity_denominator() const {
  return q_coeffs.size() == 1 && q_coeffs[0] == 1.0;
}

namespace {

OperatorSpec make_poly_spec(std::string name, NormKind kind, Poly p, Family family) {
  if (p.empty()) fail(ErrorCode::Parameter, name + ": empty coefficient list");
  OperatorSpec spec;
  spec.name = std::move(name);
  spec.norm_kind = kind;
  spec.p_coeffs = std::move(p);
  spec.q_coeffs = {1.0};
  spec.family = family;
  return spec;
}

/// Rejects denominators with a root on [-1, 1], the spectrum hull of every
/// symmetric normalized adjacency.
void check_denominator(const std::string& name, const Poly& q) {
  const int grid = 4001;
  double prev = poly_eval(q, -1.0);
  double min_abs = std::abs(prev);
  for (int i = 1; i < grid; ++i) {
    double x = -1.0 + 2.0 * i / (grid - 1);
    double v = poly_eval(q, x);
    min_abs = std::min(min_abs, std::abs(v));
    if (v == 0.0 || (v < 0.0) != (prev < 0.0))
      fail(ErrorCode::SingularOperator,
           name + ": denominator has a root inside [-1, 1] of the matrix argument");
    prev = v;
  }
  if (min_abs < 1e-12)
    fail(ErrorCode::SingularOperator, name + ": denominator nearly vanishes on [-1, 1]");
}

OperatorSpec make_rational_spec(std::string name, NormKind kind, Poly p, Poly q) {
  if (p.empty() || q.empty()) fail(ErrorCode::Parameter, name + ": empty coefficient list");
  if (q[0] == 0.0)
    fail(ErrorCode::Parameter, name + ": denominator bias must be nonzero to normalize q0 = 1");
  double q0 = q[0];
  for (double& c : q) c /= q0;
  for (double& c : p) c /= q0;
  check_denominator(name, q);
  OperatorSpec spec;
  spec.name = std::move(name);
  spec.norm_kind = kind;
  spec.p_coeffs = std::move(p);
  spec.q_coeffs = std::move(q);
  spec.family = Family::Rational;
  return spec;
}

}  // namespace

namespace op {

OperatorSpec gcn() {
  return make_poly_spec("gcn", NormKind::RenormSym, {1.0, 1.0}, Family::Linear);
}

OperatorSpec gcn_renorm() {
  return make_poly_spec("gcn-renorm", NormKind::RenormSym, {0.0, 1.0}, Family::Linear);
}

OperatorSpec sage_mean() {
  return make_poly_spec("sage_mean", NormKind::Sym, {1.0, 1.0}, Family::Linear);
}

OperatorSpec gin(double eps) {
  if (eps < 0.0) fail(ErrorCode::Parameter, "gin: eps must be >= 0");
  // The unnormalized form (1+eps) I + A only pairs with a spectral route on
  // regular graphs; the registry form scales A symmetrically.
  return make_poly_spec("gin", NormKind::Sym, {1.0 + eps, 1.0}, Family::Linear);
}

OperatorSpec chebnet(const Poly& theta, double lambda_max) {
  if (theta.empty()) fail(ErrorCode::Parameter, "chebnet: empty coefficient list");
  if (!(lambda_max > 0.0)) fail(ErrorCode::Parameter, "chebnet: lambda_max must be > 0");
  // Coefficients come in over T_k(2 L / lambda_max - I). In the adjacency
  // argument x = 1 - lambda this rescaled variable is
  // (2/lambda_max - 1) - (2/lambda_max) x... substituting lambda = 1 - x:
  //   2 (1 - x) / lambda_max - 1 = (2/lambda_max - 1) + (-2/lambda_max) x.
  const double a = 2.0 / lambda_max - 1.0;
  const double b = -2.0 / lambda_max;
  Poly p{0.0};
  for (size_t k = 0; k < theta.size(); ++k) {
    Poly tk = poly_affine_substitute(chebyshev_monomial(static_cast<int>(k)), a, b);
    p = poly_add(p, poly_scale(tk, theta[k]));
  }
  return make_poly_spec("chebnet", NormKind::Sym, poly_trim(p, 0.0), Family::Polynomial);
}

OperatorSpec deepwalk(int t) {
  if (t < 1) fail(ErrorCode::Parameter, "deepwalk: window must be >= 1");
  Poly p(static_cast<size_t>(t) + 1, 1.0 / (t + 1));
  return make_poly_spec("deepwalk", NormKind::Sym, std::move(p), Family::Polynomial);
}

OperatorSpec dcnn(const Poly& w) {
  if (w.empty()) fail(ErrorCode::Parameter, "dcnn: empty coefficient list");
  Poly p;
  p.reserve(w.size() + 1);
  p.push_back(0.0);  // powers start at M^1
  p.insert(p.end(), w.begin(), w.end());
  return make_poly_spec("dcnn", NormKind::Sym, std::move(p), Family::Polynomial);
}

OperatorSpec gdc_ppr(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) fail(ErrorCode::Parameter, "gdc-ppr: need 0 < alpha <= 1");
  Poly p;
  double coeff = alpha;
  double tail = 1.0;  // mass not yet emitted
  for (int k = 0; k <= 100000; ++k) {
    p.push_back(coeff);
    tail -= coeff;
    coeff *= (1.0 - alpha);
    if (tail < 1e-9) break;
    if (k == 100000) fail(ErrorCode::Parameter, "gdc-ppr: diffusion tail did not converge");
  }
  OperatorSpec spec = make_poly_spec("gdc-ppr", NormKind::Sym, std::move(p), Family::Polynomial);
  return spec;
}

OperatorSpec gdc_heat(double s) {
  if (!(s >= 0.0)) fail(ErrorCode::Parameter, "gdc-heat: need s >= 0");
  Poly p;
  double coeff = std::exp(-s);
  if (coeff == 0.0) fail(ErrorCode::Parameter, "gdc-heat: diffusion tail did not converge");
  double tail = 1.0;
  for (int k = 0; k <= 100000; ++k) {
    p.push_back(coeff);
    tail -= coeff;
    coeff *= s / (k + 1);
    if (tail < 1e-9) break;
    if (k == 100000) fail(ErrorCode::Parameter, "gdc-heat: diffusion tail did not converge");
  }
  return make_poly_spec("gdc-heat", NormKind::Sym, std::move(p), Family::Polynomial);
}

OperatorSpec node2vec(double p, double q) {
  if (!(p > 0.0) || !(q > 0.0)) fail(ErrorCode::Parameter, "node2vec: need p > 0 and q > 0");
  return make_poly_spec("node2vec", NormKind::Sym, {1.0 / p, 1.0 - 1.0 / q, 1.0 / q},
                        Family::Polynomial);
}

OperatorSpec line_sdne(double alpha) {
  if (!(alpha >= 0.0)) fail(ErrorCode::Parameter, "line_sdne: need alpha >= 0");
  return make_poly_spec("line_sdne", NormKind::Sym, {0.0, 1.0, alpha}, Family::Polynomial);
}

OperatorSpec sgc(int k) {
  if (k < 1) fail(ErrorCode::Parameter, "sgc: order must be >= 1");
  Poly p(static_cast<size_t>(k) + 1, 0.0);
  p.back() = 1.0;
  return make_poly_spec("sgc", NormKind::RenormSym, std::move(p), Family::Polynomial);
}

OperatorSpec auto_regressive(double alpha) {
  if (!(alpha > 0.0)) fail(ErrorCode::Parameter, "auto_regressive: need alpha > 0");
  return make_rational_spec("auto_regressive", NormKind::Sym, {1.0}, {1.0 + alpha, -alpha});
}

OperatorSpec ppnp(double alpha) {
  if (!(alpha > 0.0) || alpha > 1.0) fail(ErrorCode::Parameter, "ppnp: need 0 < alpha <= 1");
  return make_rational_spec("ppnp", NormKind::RenormSym, {alpha}, {1.0, -(1.0 - alpha)});
}

OperatorSpec arma(double a, double b) {
  return make_rational_spec("arma", NormKind::RenormSym, {b}, {1.0, -a});
}

OperatorSpec parwalks(double beta) {
  if (!(beta > 0.0)) fail(ErrorCode::Parameter, "parwalks: need beta > 0");
  return make_rational_spec("parwalks", NormKind::RenormSym, {beta}, {1.0 + beta, -1.0});
}

OperatorSpec rationalnet(const Poly& p, const Poly& q) {
  return make_rational_spec("rationalnet", NormKind::Sym, p, q);
}

OperatorSpec propagation(NormKind kind) {
  return make_poly_spec("propagate", kind, {0.0, 1.0}, Family::Linear);
}

}  // namespace op

OperatorSpec with_norm(OperatorSpec spec, NormKind kind) {
  spec.norm_kind = kind;
  return spec;
}

OperatorSpec as_polynomial(const OperatorSpec& spec) {
  if (spec.family == Family::Rational)
    fail(ErrorCode::Parameter, spec.name + ": rational filters do not reduce to polynomials");
  OperatorSpec out = spec;
  out.family = Family::Polynomial;
  return out;
}

OperatorSpec as_rational(const OperatorSpec& spec) {
  OperatorSpec out = spec;
  out.family = Family::Rational;
  return out;
}

OperatorSpec power_spec(const OperatorSpec& spec, int k) {
  if (k < 1) fail(ErrorCode::Parameter, "power_spec: k must be >= 1");
  if (!spec.is_identity_denominator())
    fail(ErrorCode::Parameter, "power_spec: only polynomial filters can be expanded");
  OperatorSpec out = spec;
  out.name = spec.name + "^" + std::to_string(k);
  out.p_coeffs = poly_pow(spec.p_coeffs, k);
  out.family = Family::Polynomial;
  return out;
}

namespace {

FeatureMatrix horner_apply(const Poly& p, const SparseMat& m, const FeatureMatrix& x) {
  FeatureMatrix z = p.back() * x;
  for (size_t i = p.size() - 1; i-- > 0;) {
    z = m * z;
    if (p[i] != 0.0) z += p[i] * x;
  }
  return z;
}

SparseMat materialize_poly(const Poly& p, const SparseMat& m) {
  const int n = static_cast<int>(m.rows());
  SparseMat id(n, n);
  id.setIdentity();
  SparseMat acc = p[0] * id;
  SparseMat power = id;
  for (size_t i = 1; i < p.size(); ++i) {
    power = (power * m).eval();
    if (p[i] != 0.0) acc = (acc + p[i] * power).eval();
  }
  acc.makeCompressed();
  return acc;
}

/// True when Q(M) is symmetric positive definite: symmetric kind with a
/// known spectrum hull on which Q stays positive.
bool spd_system(const OperatorSpec& spec) {
  double lo, hi;
  switch (spec.norm_kind) {
    case NormKind::Sym:
    case NormKind::RenormSym: lo = -1.0, hi = 1.0; break;
    case NormKind::SymLaplacian:
    case NormKind::RenormSymLaplacian: lo = 0.0, hi = 2.0; break;
    default: return false;  // unbounded (raw) or non-symmetric kinds
  }
  const int grid = 512;
  for (int i = 0; i <= grid; ++i) {
    double x = lo + (hi - lo) * i / grid;
    if (poly_eval(spec.q_coeffs, x) <= 0.0) return false;
  }
  return true;
}

FeatureMatrix solve_rational(const OperatorSpec& spec, const SparseMat& m, const FeatureMatrix& x,
                             const SolveOptions& opts) {
  SparseMat lhs = materialize_poly(spec.q_coeffs, m);
  FeatureMatrix rhs = horner_apply(spec.p_coeffs, m, x);
  const int n = static_cast<int>(m.rows());
  FeatureMatrix z;
  if (n <= opts.direct_cap) {
    Eigen::SparseLU<SparseMat> lu;
    lu.compute(lhs);
    if (lu.info() != Eigen::Success) {
      fail(ErrorCode::SingularOperator,
           spec.name +
               ": direct factorization failed, Q(M) is singular (condition estimate: infinite)");
    }
    z = lu.solve(rhs);
  } else if (spd_system(spec)) {
    Eigen::ConjugateGradient<SparseMat, Eigen::Lower | Eigen::Upper> cg;
    cg.setTolerance(opts.residual_tol * 1e-2);
    cg.setMaxIterations(static_cast<Eigen::Index>(opts.max_iterations_per_n) * n);
    cg.compute(lhs);
    z = cg.solve(rhs);
  } else {
    Eigen::BiCGSTAB<SparseMat> bicg;
    bicg.setTolerance(opts.residual_tol * 1e-2);
    bicg.setMaxIterations(static_cast<Eigen::Index>(opts.max_iterations_per_n) * n);
    bicg.compute(lhs);
    z = bicg.solve(rhs);
  }
  double scale = 1.0 + rhs.cwiseAbs().maxCoeff();
  double resid = (lhs * z - rhs).cwiseAbs().maxCoeff();
  if (!std::isfinite(resid) || resid > opts.residual_tol * scale) {
    // Rough conditioning estimate from the residual amplification.
    std::ostringstream msg;
    msg << spec.name << ": solve residual " << resid << " exceeds " << opts.residual_tol * scale
        << " (estimated condition >= " << scale / std::max(resid, 1e-300) << ")";
    fail(ErrorCode::SingularOperator, msg.str());
  }
  return z;
}

}  // namespace

FeatureMatrix apply_spatial(const OperatorSpec& spec, const Graph& g, const FeatureMatrix& x,
                            const SolveOptions& opts) {
  if (x.rows() != g.n)
    fail(ErrorCode::DimensionMismatch, "graph has " + std::to_string(g.n) +
                                           " nodes but signal has " + std::to_string(x.rows()) +
                                           " rows");
  NormalizedMatrix m = normalize(g, spec.norm_kind);
  if (spec.is_identity_denominator()) return horner_apply(spec.p_coeffs, m.values, x);
  return solve_rational(spec, m.values, x, opts);
}

FeatureMatrix apply_spectral(const OperatorSpec& spec, const SpectralBasis& basis,
                             const FeatureMatrix& x) {
  NormKind expected = laplacian_of(spec.norm_kind);
  if (basis.source_kind != expected)
    fail(ErrorCode::KindMismatch, spec.name + " expects a basis of " +
                                      norm_kind_name(expected) + ", got " +
                                      norm_kind_name(basis.source_kind));
  return apply_response(
      basis, [&spec](double lambda) { return spec.response(lambda); }, x);
}

FeatureMatrix masked_aggregate(const Eigen::MatrixXd& w, const Graph& g, const FeatureMatrix& x) {
  if (w.rows() != g.n || w.cols() != g.n)
    fail(ErrorCode::DimensionMismatch, "weight matrix must be n x n");
  if (x.rows() != g.n) fail(ErrorCode::DimensionMismatch, "signal rows must match node count");
  if (!w.allFinite()) fail(ErrorCode::Parameter, "weight matrix has non-finite entries");
  std::vector<Eigen::Triplet<double>> trips;
  trips.reserve(2 * g.edges.size());
  for (const Edge& e : g.edges) {
    trips.emplace_back(e.u, e.v, w(e.u, e.v) * e.w);
    trips.emplace_back(e.v, e.u, w(e.v, e.u) * e.w);
  }
  SparseMat masked(g.n, g.n);
  masked.setFromTriplets(trips.begin(), trips.end());
  return masked * x;
}

EquivalenceReport verify_equivalence(const OperatorSpec& spec, const Graph& g,
                                     const FeatureMatrix& x, double tol, int cap) {
  if (!is_symmetric_kind(spec.norm_kind))
    fail(ErrorCode::KindMismatch,
         spec.name + ": spectral route needs a symmetric normalization, got " +
             norm_kind_name(spec.norm_kind));
  SpectralBasis basis = eigendecompose(normalize(g, laplacian_of(spec.norm_kind)), cap);
  FeatureMatrix spatial = apply_spatial(spec, g, x);
  FeatureMatrix spectral = apply_spectral(spec, basis, x);
  Eigen::MatrixXd diff = (spatial - spectral).cwiseAbs();
  EquivalenceReport report;
  report.name = spec.name;
  report.max_err = diff.maxCoeff();
  report.mean_err = diff.mean();
  report.pass = report.max_err <= tol * (1.0 + x.cwiseAbs().maxCoeff());
  return report;
}

std::vector<OperatorSpec> default_registry() {
  return {
      op::gcn(),
      op::gcn_renorm(),
      op::sage_mean(),
      op::gin(0.5),
      op::chebnet({1.0, -1.0, 0.5}),
      op::deepwalk(3),
      op::dcnn({0.6, 0.3, 0.1}),
      op::gdc_ppr(0.15),
      op::gdc_heat(1.0),
      op::node2vec(2.0, 0.5),
      op::line_sdne(1.0),
      op::sgc(2),
      op::auto_regressive(1.0),
      op::ppnp(0.1),
      op::arma(0.5, 0.25),
      op::parwalks(1.0),
      op::rationalnet({0.2, 0.3, 0.1}, {1.0, 0.0, 0.25}),
  };
}

std::string format_catalog(const std::vector<OperatorSpec>& specs) {
  std::ostringstream out;
  auto coeffs = [](const Poly& p) {
    std::ostringstream s;
    s << "[";
    for (size_t i = 0; i < p.size(); ++i) s << (i ? "," : "") << p[i];
    s << "]";
    return s.str();
  };
  out << "name\tfamily\tnorm\tp_coeffs\tq_coeffs\n";
  for (const OperatorSpec& spec : specs) {
    out << spec.name << '\t' << family_name(spec.family) << '\t' << norm_kind_name(spec.norm_kind)
        << '\t' << coeffs(spec.p_coeffs) << '\t' << coeffs(spec.q_coeffs) << '\n';
  }
  return out.str();
}

namespace {

double scalar_param(const OpParams& params, const std::string& key, double fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  if (it->second.size() != 1) fail(ErrorCode::Parameter, key + " expects a single value");
  return it->second[0];
}

Poly list_param(const OpParams& params, const std::string& key, const Poly& fallback) {
  auto it = params.find(key);
  if (it == params.end()) return fallback;
  return it->second;
}

}  // namespace

OperatorSpec make_operator(const std::string& name, const OpParams& params) {
  OperatorSpec spec;
  if (name == "gcn") spec = op::gcn();
  else if (name == "gcn-renorm") spec = op::gcn_renorm();
  else if (name == "sage_mean") spec = op::sage_mean();
  else if (name == "gin") spec = op::gin(scalar_param(params, "eps", 0.5));
  else if (name == "chebnet")
    spec = op::chebnet(list_param(params, "theta", {1.0, -1.0, 0.5}),
                       scalar_param(params, "lambda_max", 2.0));
  else if (name == "deepwalk")
    spec = op::deepwalk(static_cast<int>(scalar_param(params, "t", 3)));
  else if (name == "dcnn") spec = op::dcnn(list_param(params, "w", {0.6, 0.3, 0.1}));
  else if (name == "gdc-ppr") spec = op::gdc_ppr(scalar_param(params, "alpha", 0.15));
  else if (name == "gdc-heat") spec = op::gdc_heat(scalar_param(params, "s", 1.0));
  else if (name == "node2vec")
    spec = op::node2vec(scalar_param(params, "p", 2.0), scalar_param(params, "q", 0.5));
  else if (name == "line_sdne") spec = op::line_sdne(scalar_param(params, "alpha", 1.0));
  else if (name == "sgc") spec = op::sgc(static_cast<int>(scalar_param(params, "k", 2)));
  else if (name == "auto_regressive")
    spec = op::auto_regressive(scalar_param(params, "alpha", 1.0));
  else if (name == "ppnp") spec = op::ppnp(scalar_param(params, "alpha", 0.1));
  else if (name == "arma")
    spec = op::arma(scalar_param(params, "a", 0.5), scalar_param(params, "b", 0.25));
  else if (name == "parwalks") spec = op::parwalks(scalar_param(params, "beta", 1.0));
  else if (name == "rationalnet")
    spec = op::rationalnet(list_param(params, "p", {0.2, 0.3, 0.1}),
                           list_param(params, "q", {1.0, 0.0, 0.25}));
  else if (name == "propagate")
    spec = op::propagation(NormKind::Sym);
  else
    fail(ErrorCode::Parameter, "unknown operator: " + name);
  return spec;
}

}  // namespace gfz
