#include "idepca/reduction.hpp"

#include <cmath>
#include <cstdio>
#include <string>

#include "idepca/error.hpp"

namespace idepca {
namespace {

template <class F>
auto at_index(long n, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw e.with_index(n);
  }
}

double relative_difference(double x, double y) {
  const double scale = std::max(std::fabs(x), std::fabs(y));
  if (scale == 0.0) return 0.0;
  return std::fabs(x - y) / scale;
}

}  // namespace

double compute_an(const ProblemSpec& spec, long n, double tol) {
  return at_index(n, [&] {
    const double f = spec.impulse.factor(n + 1);
    const double nd = static_cast<double>(n);
    return f * std::exp(exponent(spec.a, nd, nd + 1.0, tol));
  });
}

double compute_bn(const ProblemSpec& spec, long n, double tol) {
  return at_index(n, [&] {
    const double f = spec.impulse.factor(n + 1);
    const double nd = static_cast<double>(n);
    return f * transported_integral(spec.a, spec.b, nd, nd + 1.0, nd + 1.0, tol).value;
  });
}

double compute_alpha(std::span<const double> a_seq, long n0, long n) {
  if (n < n0 || static_cast<std::size_t>(n - n0) > a_seq.size())
    throw Error(Errc::IndexOutOfRange, "alpha needs a_j for j in [n0, n)").with_index(n);
  double alpha = 1.0;
  for (long j = n0; j < n; ++j) {
    const double aj = a_seq[static_cast<std::size_t>(j - n0)];
    if (aj == 0.0) throw Error(Errc::ZeroCoefficient, "a_j = 0 in alpha product").with_index(j);
    alpha = alpha / aj;
  }
  return alpha;
}

double compute_qn(const DiscreteSystem& ds, long n) {
  const long other = ds.direction == Direction::Delayed ? n - ds.k : n + ds.k;
  if (!ds.alpha_seq.contains(other) || !ds.alpha_seq.contains(n + 1) || !ds.b_seq.contains(n))
    throw Error(Errc::IndexOutOfRange, "Q_n needs alpha at n+1 and n-+k").with_index(n);
  return ds.alpha(n + 1) * ds.b(n) / ds.alpha(other);
}

double closed_form_qn(const ProblemSpec& spec, long n, double tol) {
  return at_index(n, [&] {
    const double nd = static_cast<double>(n);
    double product = 1.0;
    double target = 0.0;
    if (spec.direction == Direction::Delayed) {
      for (long j = n - spec.k + 1; j <= n; ++j) product = product / spec.impulse.factor(j);
      target = nd - spec.k;
    } else {
      for (long j = n + 1; j <= n + spec.k; ++j) product = product * spec.impulse.factor(j);
      target = nd + spec.k;
    }
    return product * transported_integral(spec.a, spec.b, nd, nd + 1.0, target, tol).value;
  });
}

DiscreteSystem assemble_discrete_system(long n0, Direction direction, int k, std::span<const double> a_seq,
                                        std::span<const double> b_seq) {
  if (k < 1) throw Error(Errc::InvalidArgument, "k must be at least 1");
  if (a_seq.size() != b_seq.size() || a_seq.empty())
    throw Error(Errc::InvalidArgument, "a_seq and b_seq must be non-empty and of equal length");

  DiscreteSystem ds;
  ds.n0 = n0;
  ds.horizon = n0 + static_cast<long>(a_seq.size());
  ds.direction = direction;
  ds.k = k;
  ds.a_seq = {n0, {a_seq.begin(), a_seq.end()}};
  ds.b_seq = {n0, {b_seq.begin(), b_seq.end()}};

  ds.alpha_seq.first = n0;
  ds.alpha_seq.values.reserve(a_seq.size() + 1);
  ds.alpha_seq.values.push_back(1.0);
  for (long n = n0; n < ds.horizon; ++n) {
    const double an = ds.a(n);
    if (an == 0.0) throw Error(Errc::ZeroCoefficient, "a_n = 0 makes alpha undefined").with_index(n);
    ds.alpha_seq.values.push_back(ds.alpha_seq.values.back() / an);
  }

  const long q_lo = direction == Direction::Delayed ? n0 + k : n0;
  const long q_hi = direction == Direction::Delayed ? ds.horizon - 1 : ds.horizon - k;
  ds.q_seq.first = q_lo;
  for (long n = q_lo; n <= q_hi; ++n) ds.q_seq.values.push_back(compute_qn(ds, n));
  return ds;
}

DiscreteSystem build_discrete_system(const ProblemSpec& spec, double tol) {
  spec.validate();

  IndexedSeq factors{spec.n0 + 1, {}};
  for (long n = spec.n0 + 1; n <= spec.horizon; ++n) factors.values.push_back(spec.impulse.factor(n));

  std::vector<double> a_seq;
  std::vector<double> b_seq;
  for (long n = spec.n0; n < spec.horizon; ++n) {
    a_seq.push_back(compute_an(spec, n, tol));
    b_seq.push_back(compute_bn(spec, n, tol));
  }

  DiscreteSystem ds = assemble_discrete_system(spec.n0, spec.direction, spec.k, a_seq, b_seq);
  ds.factor_seq = std::move(factors);

  ds.q_closed_seq.first = ds.q_seq.first;
  for (long n = ds.q_seq.first; n <= ds.q_seq.last(); ++n) {
    double closed = closed_form_qn(spec, n, tol);
    // An absolute tolerance cannot resolve a Q_n that is small through
    // cancellation inside the integral; tighten both routes at that index.
    for (double t = tol / 1000.0; !(relative_difference(ds.q(n), closed) <= kDualRouteTolerance) && t >= tol * 1e-9;
         t /= 1000.0) {
      ds.b_seq.values[static_cast<std::size_t>(n - ds.n0)] = compute_bn(spec, n, t);
      ds.q_seq.values[static_cast<std::size_t>(n - ds.q_seq.first)] = compute_qn(ds, n);
      closed = closed_form_qn(spec, n, t);
    }
    ds.q_closed_seq.values.push_back(closed);
    const double rel = relative_difference(ds.q(n), closed);
    if (!(rel <= kDualRouteTolerance)) {
      char buf[160];
      std::snprintf(buf, sizeof buf, "alpha-ratio Q_n = %.17g vs closed form %.17g (relative difference %.3g)",
                    ds.q(n), closed, rel);
      throw Error(Errc::DiagnosticMismatch, buf).with_index(n);
    }
  }
  return ds;
}

double dual_route_discrepancy(const DiscreteSystem& ds) {
  double worst = 0.0;
  for (long n = ds.q_closed_seq.first; n <= ds.q_closed_seq.last(); ++n)
    worst = std::max(worst, relative_difference(ds.q(n), ds.q_closed_seq.at(n)));
  return worst;
}

}  // namespace idepca
