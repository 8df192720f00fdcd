#pragma once

#include <cstddef>
#include <functional>
#include <span>

#include "idepca/expr.hpp"

namespace idepca {

inline constexpr double kDefaultTol = 1e-10;
inline constexpr int kMaxQuadDepth = 60;

struct QuadResult {
  double value = 0.0;
  double error_estimate = 0.0;  // absolute, >= 0
  std::size_t evaluations = 0;
};

// Fills out[i] = f(xs[i]).
using BatchIntegrand = std::function<void(std::span<const double> xs, std::span<double> out)>;

// Adaptive Simpson with bisection. A panel is accepted when the two-half
// estimate differs from the whole-panel estimate by at most 15 * tol_local;
// tol_local halves at every bisection. The signed value honours orientation
// (lo > hi negates the result of integrating over [hi, lo]).
//
// Throws Error(SingularIntegrand) with the abscissa of the first non-finite
// sample, or Error(NoConvergence) past kMaxQuadDepth bisections.
QuadResult integrate_batch(const BatchIntegrand& f, double lo, double hi, double tol = kDefaultTol);
QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, double tol = kDefaultTol);

// A(s, T) = integral of a(u) du from s to T.
double exponent(const Expr& a, double s, double T, double tol = kDefaultTol);

// Integral from lo to hi of exp(A(s, T)) * b(s) ds, with the inner exponent
// computed at tol / 10.
QuadResult transported_integral(const Expr& a, const Expr& b, double lo, double hi, double T,
                                double tol = kDefaultTol);

}  // namespace idepca
