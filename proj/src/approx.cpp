#include "gfz/approx.hpp"

#include <Eigen/Dense>
#include <algorithm>
#include <cmath>
#include <cstdio>
#include <limits>

#include "gfz/error.hpp"

namespace gfz {

const char* target_kind_name(TargetKind kind) {
  switch (kind) {
    case TargetKind::SignStep: return "sign";
    case TargetKind::AbsKink: return "abs";
    case TargetKind::SqrtKink: return "sqrt";
    case TargetKind::RationalBump: return "bump";
    case TargetKind::ClippedSine: return "clipsine";
    case TargetKind::Tabulated: return "tabulated";
  }
  return "?";
}

TargetKind target_kind_from_name(const std::string& name) {
  if (name == "sign" || name == "sign-step") return TargetKind::SignStep;
  if (name == "abs" || name == "abs-kink") return TargetKind::AbsKink;
  if (name == "sqrt" || name == "sqrt-kink") return TargetKind::SqrtKink;
  if (name == "bump" || name == "rational-bump") return TargetKind::RationalBump;
  if (name == "clipsine" || name == "clipped-sine") return TargetKind::ClippedSine;
  fail(ErrorCode::Parameter, "unknown target: " + name);
}

namespace {

double eval_kind(TargetKind kind, double x) {
  switch (kind) {
    case TargetKind::SignStep: return x >= 0.0 ? 1.0 : -1.0;
    case TargetKind::AbsKink: return std::abs(x - 0.5);
    case TargetKind::SqrtKink: return std::sqrt(std::abs(x - 0.5));
    case TargetKind::RationalBump: return x / (10.0 * std::abs(x - 0.5) + 1.0);
    case TargetKind::ClippedSine: return std::max(0.5, std::sin(x + x * x)) - x / 20.0;
    case TargetKind::Tabulated: break;
  }
  fail(ErrorCode::Parameter, "tabulated targets have no closed form");
}

}  // namespace

TargetResponse TargetResponse::make(TargetKind kind, double lo, double hi, int samples) {
  if (!(lo < hi)) fail(ErrorCode::Parameter, "target domain needs lo < hi");
  if (samples < 2) fail(ErrorCode::Parameter, "target grid needs at least 2 samples");
  if (kind == TargetKind::Tabulated)
    fail(ErrorCode::Parameter, "use TargetResponse::tabulated for tabulated targets");
  TargetResponse t;
  t.kind = kind;
  t.lo = lo;
  t.hi = hi;
  t.samples = samples;
  t.xs.resize(samples);
  t.fs.resize(samples);
  for (int i = 0; i < samples; ++i) {
    double x = lo + (hi - lo) * i / (samples - 1);
    t.xs[i] = x;
    t.fs[i] = eval_kind(kind, x);
  }
  return t;
}

TargetResponse TargetResponse::tabulated(std::vector<double> xs, std::vector<double> fs) {
  if (xs.size() != fs.size() || xs.size() < 2)
    fail(ErrorCode::Parameter, "tabulated target needs matching xs/fs with >= 2 points");
  if (!std::is_sorted(xs.begin(), xs.end()))
    fail(ErrorCode::Parameter, "tabulated xs must be ascending");
  for (double v : fs)
    if (!std::isfinite(v)) fail(ErrorCode::Parameter, "tabulated values must be finite");
  TargetResponse t;
  t.kind = TargetKind::Tabulated;
  t.lo = xs.front();
  t.hi = xs.back();
  t.samples = static_cast<int>(xs.size());
  t.xs = std::move(xs);
  t.fs = std::move(fs);
  return t;
}

double TargetResponse::eval(double x) const {
  if (kind != TargetKind::Tabulated) return eval_kind(kind, x);
  auto it = std::lower_bound(xs.begin(), xs.end(), x);
  if (it == xs.begin()) return fs.front();
  if (it == xs.end()) return fs.back();
  size_t i = static_cast<size_t>(it - xs.begin());
  double t = (x - xs[i - 1]) / (xs[i] - xs[i - 1]);
  return (1.0 - t) * fs[i - 1] + t * fs[i];
}

double eval_fit(const FitResult& fit, double x) {
  return poly_eval(fit.num, x) / poly_eval(fit.den, x);
}

namespace {

// Domain is mapped to t in [-1, 1] for conditioning; final coefficients are
// reported in the original variable.
struct DomainMap {
  double a, b;  // t = a + b x
  explicit DomainMap(const TargetResponse& target)
      : a(-(target.lo + target.hi) / (target.hi - target.lo)), b(2.0 / (target.hi - target.lo)) {}
  double to_t(double x) const { return a + b * x; }
};

struct ErrorPair {
  double full;
  double windowed;
};

ErrorPair grid_errors(const TargetResponse& target, const Poly& num_x, const Poly& den_x) {
  double full = 0.0, windowed = 0.0;
  for (int i = 0; i < target.samples; ++i) {
    double x = target.xs[i];
    double err = std::abs(poly_eval(num_x, x) / poly_eval(den_x, x) - target.fs[i]);
    full = std::max(full, err);
    if (!target.has_jump() || std::abs(x - target.jump_at) > target.exclusion)
      windowed = std::max(windowed, err);
  }
  return {full, windowed};
}

Poly to_x_coords(const Poly& in_t, const DomainMap& map) {
  // p(t) with t = a + b x.
  return poly_affine_substitute(in_t, map.a, map.b);
}

}  // namespace

FitResult poly_fit(const TargetResponse& target, int degree) {
  if (degree < 0) fail(ErrorCode::Parameter, "poly_fit: degree must be >= 0");
  if (degree >= target.samples)
    fail(ErrorCode::Parameter, "poly_fit: degree must be below the grid size");
  DomainMap map(target);
  const int m = target.samples;
  // Chebyshev-basis design matrix for numerical sanity at higher degree.
  Eigen::MatrixXd design(m, degree + 1);
  for (int i = 0; i < m; ++i) {
    double t = map.to_t(target.xs[i]);
    double prev = 1.0, cur = t;
    for (int k = 0; k <= degree; ++k) {
      if (k == 0) design(i, k) = 1.0;
      else if (k == 1) design(i, k) = t;
      else {
        double next = 2.0 * t * cur - prev;
        prev = cur;
        cur = next;
        design(i, k) = cur;
      }
    }
  }
  Eigen::VectorXd rhs = Eigen::Map<const Eigen::VectorXd>(target.fs.data(), m);
  Eigen::VectorXd cheb = design.colPivHouseholderQr().solve(rhs);
  Poly in_t{0.0};
  for (int k = 0; k <= degree; ++k)
    in_t = poly_add(in_t, poly_scale(chebyshev_monomial(k), cheb[k]));
  FitResult fit;
  fit.num = to_x_coords(in_t, map);
  fit.den = {1.0};
  fit.iterations = 1;
  ErrorPair err = grid_errors(target, fit.num, fit.den);
  fit.max_error = err.full;
  fit.max_error_windowed = err.windowed;
  return fit;
}

FitResult chebyshev_fit(const TargetResponse& target, int degree) {
  if (degree < 0) fail(ErrorCode::Parameter, "chebyshev_fit: degree must be >= 0");
  if (degree >= target.samples)
    fail(ErrorCode::Parameter, "chebyshev_fit: degree must be below the grid size");
  DomainMap map(target);
  const int nodes = degree + 1;
  std::vector<double> fvals(nodes);
  for (int j = 0; j < nodes; ++j) {
    double tj = std::cos(M_PI * (j + 0.5) / nodes);
    double xj = (tj - map.a) / map.b;
    fvals[j] = target.eval(xj);
  }
  Poly in_t{0.0};
  for (int k = 0; k <= degree; ++k) {
    double ck = 0.0;
    for (int j = 0; j < nodes; ++j) ck += fvals[j] * std::cos(M_PI * k * (j + 0.5) / nodes);
    ck *= (k == 0 ? 1.0 : 2.0) / nodes;
    in_t = poly_add(in_t, poly_scale(chebyshev_monomial(k), ck));
  }
  FitResult fit;
  fit.num = to_x_coords(in_t, map);
  fit.den = {1.0};
  fit.iterations = 1;
  ErrorPair err = grid_errors(target, fit.num, fit.den);
  fit.max_error = err.full;
  fit.max_error_windowed = err.windowed;
  return fit;
}

namespace {

bool pole_free(const Poly& den_t, double guard = 1e-8) {
  const int grid = 2001;
  double prev = poly_eval(den_t, -1.0);
  for (int i = 0; i < grid; ++i) {
    double t = -1.0 + 2.0 * i / (grid - 1);
    double v = poly_eval(den_t, t);
    if (std::abs(v) < guard || (v < 0.0) != (prev < 0.0)) return false;
    prev = v;
  }
  return true;
}

}  // namespace

FitResult rational_fit(const TargetResponse& target, int num_degree, int den_degree) {
  if (num_degree < 0 || den_degree < 0)
    fail(ErrorCode::Parameter, "rational_fit: degrees must be >= 0");
  if (num_degree + den_degree + 1 >= target.samples)
    fail(ErrorCode::Parameter, "rational_fit: too many coefficients for the grid");
  DomainMap map(target);
  const int m = target.samples;
  const int cols = num_degree + 1 + den_degree;
  std::vector<double> ts(m);
  for (int i = 0; i < m; ++i) ts[i] = map.to_t(target.xs[i]);

  Poly q_prev{1.0};
  Poly best_num, best_den;
  ErrorPair best{std::numeric_limits<double>::infinity(),
                 std::numeric_limits<double>::infinity()};
  double last_sup = std::numeric_limits<double>::infinity();
  int used_iterations = 0;

  Eigen::MatrixXd design(m, cols);
  Eigen::VectorXd rhs(m);
  for (int iter = 0; iter < 50; ++iter) {
    used_iterations = iter + 1;
    for (int i = 0; i < m; ++i) {
      double t = ts[i];
      double w = 1.0 / std::max(std::abs(poly_eval(q_prev, t)), 1e-12);
      double pw = 1.0;
      for (int k = 0; k <= num_degree; ++k) {
        design(i, k) = w * pw;
        pw *= t;
      }
      pw = t;
      for (int k = 1; k <= den_degree; ++k) {
        design(i, num_degree + k) = -w * target.fs[i] * pw;
        pw *= t;
      }
      rhs[i] = w * target.fs[i];
    }
    Eigen::VectorXd sol = design.colPivHouseholderQr().solve(rhs);
    Poly p_t(sol.data(), sol.data() + num_degree + 1);
    Poly q_t{1.0};
    for (int k = 1; k <= den_degree; ++k) q_t.push_back(sol[num_degree + k]);

    // Damp toward the previous pole-free denominator if this one crosses
    // zero on the domain.
    double gamma = 1.0;
    Poly q_try = q_t;
    int attempts = 0;
    while (!pole_free(q_try) && attempts < 12) {
      gamma *= 0.5;
      q_try = poly_add(poly_scale(q_t, gamma), poly_scale(q_prev, 1.0 - gamma));
      q_try[0] = 1.0;
      ++attempts;
    }
    if (!pole_free(q_try)) {
      if (std::isfinite(best.full)) break;  // keep the best pole-free iterate
      fail(ErrorCode::FitFailure,
           "rational_fit: denominator keeps a pole inside the domain after damping");
    }
    if (attempts > 0) {
      // Refit the numerator against the damped denominator.
      Eigen::MatrixXd ndesign(m, num_degree + 1);
      Eigen::VectorXd nrhs(m);
      for (int i = 0; i < m; ++i) {
        double t = ts[i];
        double qv = poly_eval(q_try, t);
        double w = 1.0 / std::max(std::abs(poly_eval(q_prev, t)), 1e-12);
        double pw = 1.0;
        for (int k = 0; k <= num_degree; ++k) {
          ndesign(i, k) = w * pw;
          pw *= t;
        }
        nrhs[i] = w * target.fs[i] * qv;
      }
      Eigen::VectorXd nsol = ndesign.colPivHouseholderQr().solve(nrhs);
      p_t.assign(nsol.data(), nsol.data() + num_degree + 1);
      q_t = q_try;
    }

    Poly num_x = to_x_coords(p_t, map);
    Poly den_x = to_x_coords(q_t, map);
    ErrorPair err = grid_errors(target, num_x, den_x);
    bool better = target.has_jump()
                      ? std::tie(err.windowed, err.full) < std::tie(best.windowed, best.full)
                      : err.full < best.full;
    if (better) {
      best = err;
      best_num = num_x;
      best_den = den_x;
    }
    if (std::abs(last_sup - err.full) < 1e-10) break;
    last_sup = err.full;
    q_prev = q_t;
  }

  if (!std::isfinite(best.full)) fail(ErrorCode::FitFailure, "rational_fit: no usable iterate");
  // Normalize so the constant denominator coefficient is 1.
  if (std::abs(best_den[0]) < 1e-300)
    fail(ErrorCode::FitFailure, "rational_fit: denominator bias vanished, cannot normalize");
  double q0 = best_den[0];
  for (double& c : best_den) c /= q0;
  for (double& c : best_num) c /= q0;

  FitResult fit;
  fit.num = std::move(best_num);
  fit.den = std::move(best_den);
  fit.max_error = best.full;
  fit.max_error_windowed = best.windowed;
  fit.iterations = used_iterations;
  return fit;
}

std::vector<CurveRow> convergence_curve(const TargetResponse& target,
                                        const std::vector<int>& budgets) {
  if (budgets.empty()) fail(ErrorCode::Parameter, "convergence_curve: empty budget list");
  if (!std::is_sorted(budgets.begin(), budgets.end()))
    fail(ErrorCode::Parameter, "convergence_curve: budgets must be ascending");
  std::vector<CurveRow> rows;
  for (int k : budgets) {
    CurveRow row;
    row.budget = k;
    try {
      FitResult pf = poly_fit(target, k);
      row.poly_error = target.has_jump() ? pf.max_error_windowed : pf.max_error;
      row.poly_ok = true;
    } catch (const Error& e) {
      row.note += std::string("poly: ") + e.what() + "; ";
    }
    try {
      int half = (k + 1) / 2;
      FitResult rf = rational_fit(target, half, half);
      row.rational_error = target.has_jump() ? rf.max_error_windowed : rf.max_error;
      row.rational_ok = true;
    } catch (const Error& e) {
      row.note += std::string("rational: ") + e.what();
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

std::string curve_to_csv(const std::vector<CurveRow>& rows) {
  std::string out = "K,poly_error,rational_error\n";
  char buf[96];
  for (const CurveRow& row : rows) {
    std::snprintf(buf, sizeof(buf), "%d,%.12g,%.12g\n", row.budget,
                  row.poly_ok ? row.poly_error : std::numeric_limits<double>::quiet_NaN(),
                  row.rational_ok ? row.rational_error : std::numeric_limits<double>::quiet_NaN());
    out += buf;
  }
  return out;
}

std::pair<double, double> fit_line(const std::vector<double>& xs, const std::vector<double>& ys) {
  if (xs.size() != ys.size() || xs.size() < 2)
    fail(ErrorCode::Parameter, "fit_line: need matching xs/ys with >= 2 points");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  const double n = static_cast<double>(xs.size());
  for (size_t i = 0; i < xs.size(); ++i) {
    sx += xs[i];
    sy += ys[i];
    sxx += xs[i] * xs[i];
    sxy += xs[i] * ys[i];
  }
  double denom = n * sxx - sx * sx;
  if (std::abs(denom) < 1e-300) fail(ErrorCode::Parameter, "fit_line: degenerate abscissae");
  double slope = (n * sxy - sx * sy) / denom;
  double intercept = (sy - slope * sx) / n;
  return {slope, intercept};
}

}  // namespace gfz
