#pragma once

#include <vector>

namespace gfz {

// Dense polynomial coefficients, ascending powers (index = power).
using Poly = std::vector<double>;

double poly_eval(const Poly& coeffs, double x);  // Horner

Poly poly_add(const Poly& a, const Poly& b);
Poly poly_scale(const Poly& a, double s);
Poly poly_mul(const Poly& a, const Poly& b);
Poly poly_pow(const Poly& a, int k);

/// Coefficients of p(a + b*x) given coefficients of p(y).
Poly poly_affine_substitute(const Poly& p, double a, double b);

/// Monomial coefficients of the Chebyshev polynomial T_k.
Poly chebyshev_monomial(int k);

/// Drop trailing near-zero coefficients (keeps at least the constant term).
Poly poly_trim(const Poly& a, double tol = 0.0);

int poly_degree(const Poly& a);

}  // namespace gfz
