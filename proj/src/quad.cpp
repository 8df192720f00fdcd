#include "idepca/quad.hpp"

#include <cmath>
#include <limits>
#include <vector>

#include "idepca/error.hpp"
#include "idepca/kernels.hpp"

namespace idepca {
namespace {

struct Panel {
  double a, m, b;
  double fa, fm, fb;
  double whole;
  double tol;
  int depth;
};

constexpr std::size_t kMaxEvaluations = 20'000'000;
constexpr double kRoundoff = 64.0 * std::numeric_limits<double>::epsilon();

void check_finite(std::span<const double> xs, std::span<const double> fx) {
  if (kernels::active().all_finite(fx.data(), fx.size())) return;
  for (std::size_t i = 0; i < fx.size(); ++i)
    if (!std::isfinite(fx[i]))
      throw Error(Errc::SingularIntegrand, "non-finite integrand sample").with_abscissa(xs[i]);
}

inline double simpson(double a, double b, double fa, double fm, double fb) {
  return (b - a) / 6.0 * (fa + 4.0 * fm + fb);
}

QuadResult integrate_forward(const BatchIntegrand& f, double lo, double hi, double tol) {
  QuadResult result;
  double xs0[3] = {lo, 0.5 * (lo + hi), hi};
  double fs0[3];
  f(xs0, fs0);
  check_finite(xs0, fs0);
  result.evaluations = 3;

  std::vector<Panel> level{{lo, xs0[1], hi, fs0[0], fs0[1], fs0[2], simpson(lo, hi, fs0[0], fs0[1], fs0[2]), tol, 0}};
  std::vector<Panel> next;
  std::vector<double> xs;
  std::vector<double> fx;

  while (!level.empty()) {
    xs.resize(2 * level.size());
    fx.resize(xs.size());
    for (std::size_t i = 0; i < level.size(); ++i) {
      const Panel& p = level[i];
      xs[2 * i] = 0.5 * (p.a + p.m);
      xs[2 * i + 1] = 0.5 * (p.m + p.b);
    }
    f(xs, fx);
    check_finite(xs, fx);
    result.evaluations += xs.size();
    if (result.evaluations > kMaxEvaluations)
      throw Error(Errc::NoConvergence, "evaluation budget exhausted");

    next.clear();
    for (std::size_t i = 0; i < level.size(); ++i) {
      const Panel& p = level[i];
      const double flm = fx[2 * i];
      const double frm = fx[2 * i + 1];
      const double left = simpson(p.a, p.m, p.fa, flm, p.fm);
      const double right = simpson(p.m, p.b, p.fm, frm, p.fb);
      const double diff = left + right - p.whole;
      // Second clause: the halves agree to rounding, so further bisection only
      // chases noise (absolute tol below the integrand's resolution).
      if (std::fabs(diff) <= 15.0 * p.tol ||
          std::fabs(diff) <= kRoundoff * (std::fabs(left) + std::fabs(right))) {
        result.value += left + right + diff / 15.0;
        result.error_estimate += std::fabs(diff) / 15.0;
        continue;
      }
      if (p.depth + 1 > kMaxQuadDepth) {
        throw Error(Errc::NoConvergence, "bisection depth exceeded").with_abscissa(p.m);
      }
      next.push_back({p.a, xs[2 * i], p.m, p.fa, flm, p.fm, left, 0.5 * p.tol, p.depth + 1});
      next.push_back({p.m, xs[2 * i + 1], p.b, p.fm, frm, p.fb, right, 0.5 * p.tol, p.depth + 1});
    }
    level.swap(next);
  }
  return result;
}

}  // namespace

QuadResult integrate_batch(const BatchIntegrand& f, double lo, double hi, double tol) {
  if (!std::isfinite(lo) || !std::isfinite(hi))
    throw Error(Errc::InvalidArgument, "integration bounds must be finite");
  if (!(tol > 0.0)) throw Error(Errc::InvalidArgument, "tolerance must be positive");
  if (lo == hi) {
    double x = lo;
    double fx = 0.0;
    f({&x, 1}, {&fx, 1});
    check_finite({&x, 1}, {&fx, 1});
    return {0.0, 0.0, 1};
  }
  if (lo > hi) {
    QuadResult r = integrate_forward(f, hi, lo, tol);
    r.value = -r.value;
    return r;
  }
  return integrate_forward(f, lo, hi, tol);
}

QuadResult integrate(const std::function<double(double)>& f, double lo, double hi, double tol) {
  return integrate_batch(
      [&f](std::span<const double> xs, std::span<double> out) {
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = f(xs[i]);
      },
      lo, hi, tol);
}

double exponent(const Expr& a, double s, double T, double tol) {
  return integrate_batch([&a](std::span<const double> xs, std::span<double> out) { a.eval_batch(xs, out); }, s, T,
                         tol)
      .value;
}

QuadResult transported_integral(const Expr& a, const Expr& b, double lo, double hi, double T, double tol) {
  const double inner_tol = tol / 10.0;
  return integrate_batch(
      [&](std::span<const double> xs, std::span<double> out) {
        thread_local std::vector<double> bx;
        bx.resize(xs.size());
        for (std::size_t i = 0; i < xs.size(); ++i) out[i] = std::exp(exponent(a, xs[i], T, inner_tol));
        b.eval_batch(xs, bx);
        kernels::active().mul(out.data(), bx.data(), out.data(), xs.size());
      },
      lo, hi, tol);
}

}  // namespace idepca
