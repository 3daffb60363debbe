#pragma once

#include <string>
#include <utility>
#include <vector>

#include "gfz/polynomials.hpp"

namespace gfz {

enum class TargetKind { SignStep, AbsKink, SqrtKink, RationalBump, ClippedSine, Tabulated };

const char* target_kind_name(TargetKind kind);
TargetKind target_kind_from_name(const std::string& name);

/// A scalar function on [lo, hi] materialized on a uniform grid. Sup errors
/// for step targets are additionally reported with a +-exclusion window
/// around the jump, where any continuous approximant is pinned near the
/// half-jump.
struct TargetResponse {
  TargetKind kind = TargetKind::SignStep;
  double lo = -1.0;
  double hi = 1.0;
  int samples = 2000;
  std::vector<double> xs;
  std::vector<double> fs;
  double jump_at = 0.0;    // only meaningful when has_jump()
  double exclusion = 0.05;

  static TargetResponse make(TargetKind kind, double lo, double hi, int samples = 2000);
  static TargetResponse tabulated(std::vector<double> xs, std::vector<double> fs);

  bool has_jump() const { return kind == TargetKind::SignStep; }
  /// Analytic evaluation; tabulated targets interpolate linearly.
  double eval(double x) const;
};

struct FitResult {
  Poly num;
  Poly den{1.0};
  double max_error = 0.0;           // sup over the full grid
  double max_error_windowed = 0.0;  // sup excluding the jump window (== max_error otherwise)
  int iterations = 0;
};

double eval_fit(const FitResult& fit, double x);

/// Least-squares polynomial of the given degree on the target grid.
FitResult poly_fit(const TargetResponse& target, int degree);

/// Chebyshev interpolation at degree+1 Chebyshev nodes, returned in
/// monomial form.
FitResult chebyshev_fit(const TargetResponse& target, int degree);

/// Iteratively reweighted least squares on P - f Q with weights 1/|Q_prev|
/// (q0 pinned to 1), damped to keep the denominator pole-free on the
/// domain. Stops when the sup error stalls or after 50 rounds.
FitResult rational_fit(const TargetResponse& target, int num_degree, int den_degree);

struct CurveRow {
  int budget = 0;
  double poly_error = 0.0;
  double rational_error = 0.0;
  bool poly_ok = false;
  bool rational_ok = false;
  std::string note;
};

/// Budget sweep: polynomial degree K against rational (ceil(K/2), ceil(K/2)).
/// Fit failures are recorded per row rather than thrown.
std::vector<CurveRow> convergence_curve(const TargetResponse& target,
                                        const std::vector<int>& budgets);

std::string curve_to_csv(const std::vector<CurveRow>& rows);

/// Simple least-squares line fit; returns {slope, intercept}.
std::pair<double, double> fit_line(const std::vector<double>& xs, const std::vector<double>& ys);

}  // namespace gfz
