#include "gfz/polynomials.hpp"

#include <cmath>
#include <cstddef>

#include "gfz/error.hpp"

namespace gfz {

double poly_eval(const Poly& coeffs, double x) {
  double v = 0.0;
  for (size_t i = coeffs.size(); i-- > 0;) v = v * x + coeffs[i];
  return v;
}

Poly poly_add(const Poly& a, const Poly& b) {
  Poly out(std::max(a.size(), b.size()), 0.0);
  for (size_t i = 0; i < a.size(); ++i) out[i] += a[i];
  for (size_t i = 0; i < b.size(); ++i) out[i] += b[i];
  return out;
}

Poly poly_scale(const Poly& a, double s) {
  Poly out = a;
  for (double& c : out) c *= s;
  return out;
}

Poly poly_mul(const Poly& a, const Poly& b) {
  if (a.empty() || b.empty()) return {};
  Poly out(a.size() + b.size() - 1, 0.0);
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j) out[i + j] += a[i] * b[j];
  return out;
}

Poly poly_pow(const Poly& a, int k) {
  if (k < 0) fail(ErrorCode::Parameter, "polynomial power must be >= 0");
  Poly out{1.0};
  Poly base = a;
  while (k > 0) {
    if (k & 1) out = poly_mul(out, base);
    k >>= 1;
    if (k > 0) base = poly_mul(base, base);
  }
  return out;
}

Poly poly_affine_substitute(const Poly& p, double a, double b) {
  Poly out{0.0};
  Poly arg{a, b};
  Poly arg_pow{1.0};
  for (size_t i = 0; i < p.size(); ++i) {
    out = poly_add(out, poly_scale(arg_pow, p[i]));
    if (i + 1 < p.size()) arg_pow = poly_mul(arg_pow, arg);
  }
  return out;
}

Poly chebyshev_monomial(int k) {
  if (k < 0) fail(ErrorCode::Parameter, "Chebyshev index must be >= 0");
  if (k == 0) return {1.0};
  if (k == 1) return {0.0, 1.0};
  Poly prev{1.0}, cur{0.0, 1.0};
  for (int i = 2; i <= k; ++i) {
    Poly next = poly_mul({0.0, 2.0}, cur);
    for (size_t j = 0; j < prev.size(); ++j) next[j] -= prev[j];
    prev = std::move(cur);
    cur = std::move(next);
  }
  return cur;
}

Poly poly_trim(const Poly& a, double tol) {
  size_t sz = a.size();
  while (sz > 1 && std::abs(a[sz - 1]) <= tol) --sz;
  return Poly(a.begin(), a.begin() + sz);
}

int poly_degree(const Poly& a) {
  for (size_t i = a.size(); i-- > 0;)
    if (a[i] != 0.0) return static_cast<int>(i);
  return 0;
}

}  // namespace gfz
