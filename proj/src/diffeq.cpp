#include "idepca/diffeq.hpp"

#include <cmath>
#include <cstdint>
#include <string>
#include <vector>

#include "idepca/error.hpp"
#include "idepca/kernels.hpp"

namespace idepca {
namespace {

void check_init(const DiscreteSystem& ds, std::span<const double> init) {
  if (init.size() != static_cast<std::size_t>(ds.k) + 1)
    throw Error(Errc::InvalidArgument, "initial window must hold k + 1 = " + std::to_string(ds.k + 1) + " values");
}

long other_index(const DiscreteSolution& sol, long n) {
  return sol.direction == Direction::Delayed ? n - sol.k : n + sol.k;
}

}  // namespace

std::string_view to_string(Sign s) {
  switch (s) {
    case Sign::Oscillatory: return "Oscillatory";
    case Sign::EventuallyPositive: return "EventuallyPositive";
    case Sign::EventuallyNegative: return "EventuallyNegative";
    case Sign::Inconclusive: return "Inconclusive";
  }
  return "Inconclusive";
}

DiscreteSolution DiscreteSolution::slice(long lo, long hi) const {
  DiscreteSolution out{*this};
  const auto v = z.view(lo, hi);
  out.z.first = std::max(lo, z.first);
  out.z.values.assign(v.begin(), v.end());
  return out;
}

DiscreteSolution solve_delayed(const DiscreteSystem& ds, std::span<const double> init) {
  if (ds.direction != Direction::Delayed) throw Error(Errc::WrongDirection, "solve_delayed needs a delayed system");
  check_init(ds, init);
  DiscreteSolution sol;
  sol.direction = Direction::Delayed;
  sol.k = ds.k;
  sol.z.first = ds.n0 - ds.k;
  sol.z.values.assign(init.begin(), init.end());
  sol.z.values.reserve(static_cast<std::size_t>(ds.horizon - sol.z.first + 1));
  for (long n = ds.n0; n < ds.horizon; ++n) {
    const double next = ds.a(n) * sol.z.at(n) + ds.b(n) * sol.z.at(n - ds.k);
    if (!std::isfinite(next)) {
      sol.overflow_index = n + 1;
      break;
    }
    sol.z.values.push_back(next);
  }
  return sol;
}

DiscreteSolution solve_advanced(const DiscreteSystem& ds, std::span<const double> init) {
  if (ds.direction != Direction::Advanced) throw Error(Errc::WrongDirection, "solve_advanced needs an advanced system");
  check_init(ds, init);
  DiscreteSolution sol;
  sol.direction = Direction::Advanced;
  sol.k = ds.k;
  sol.z.first = ds.n0;
  sol.z.values.assign(init.begin(), init.end());
  sol.z.values.reserve(static_cast<std::size_t>(ds.horizon - ds.n0 + 1));

  // Each step produces z_{n+k}; z_{n+1} is already known because n+1 < n+k
  // (k >= 2), or is the unknown itself (k = 1).
  for (long n = ds.n0 + 1; n + ds.k <= ds.horizon; ++n) {
    const double an = ds.a(n);
    const double bn = ds.b(n);
    double next = 0.0;
    if (ds.k == 1) {
      if (bn == 1.0) throw Error(Errc::DegenerateAdvance, "b_n = 1 with k = 1").with_index(n);
      next = an * sol.z.at(n) / (1.0 - bn);
    } else {
      if (bn == 0.0) throw Error(Errc::DivisionByZero, "b_n = 0 in rearranged advance").with_index(n);
      next = (sol.z.at(n + 1) - an * sol.z.at(n)) / bn;
    }
    if (!std::isfinite(next)) {
      sol.overflow_index = n + ds.k;
      break;
    }
    sol.z.values.push_back(next);
  }
  return sol;
}

DiscreteSolution solve(const DiscreteSystem& ds, std::span<const double> init) {
  return ds.direction == Direction::Delayed ? solve_delayed(ds, init) : solve_advanced(ds, init);
}

IndexedSeq reduce_to_y(const DiscreteSystem& ds, const DiscreteSolution& sol) {
  IndexedSeq y;
  y.first = std::max(sol.n_lo(), ds.alpha_seq.first);
  const long hi = std::min(sol.n_hi(), ds.alpha_seq.last());
  for (long n = y.first; n <= hi; ++n) y.values.push_back(ds.alpha(n) * sol.at(n));
  return y;
}

std::pair<long, long> recursion_range(const DiscreteSystem& ds, const DiscreteSolution& sol) {
  if (ds.direction == Direction::Delayed) {
    return {std::max(ds.n0, sol.n_lo() + ds.k), std::min(ds.horizon - 1, sol.n_hi() - 1)};
  }
  return {ds.n0 + 1, std::min(ds.horizon - 1, sol.n_hi() - ds.k)};
}

double recursion_residual(const DiscreteSystem& ds, const DiscreteSolution& sol) {
  const auto [lo, hi] = recursion_range(ds, sol);
  double worst = 0.0;
  for (long n = lo; n <= hi; ++n) {
    const double lhs = sol.at(n + 1);
    const double r = lhs - ds.a(n) * sol.at(n) - ds.b(n) * sol.at(other_index(sol, n));
    worst = std::max(worst, std::fabs(r) / std::max(1.0, std::fabs(lhs)));
  }
  return worst;
}

double reduced_residual(const DiscreteSystem& ds, const DiscreteSolution& sol) {
  const IndexedSeq y = reduce_to_y(ds, sol);
  auto [lo, hi] = recursion_range(ds, sol);
  lo = std::max(lo, ds.q_seq.first);
  hi = std::min(hi, ds.q_seq.last());
  double worst = 0.0;
  for (long n = lo; n <= hi; ++n) {
    const long m = other_index(sol, n);
    if (!y.contains(n + 1) || !y.contains(m) || !y.contains(n)) continue;
    const double driven = ds.q(n) * y.at(m);
    const double r = (y.at(n + 1) - y.at(n)) - driven;
    // Rounding in the identity scales with the largest term it combines.
    const double scale = std::max({std::fabs(y.at(n + 1)), std::fabs(y.at(n)), std::fabs(driven)});
    if (scale > 0.0) worst = std::max(worst, std::fabs(r) / scale);
  }
  return worst;
}

long tail_start(long lo, long hi, double tail_fraction) {
  if (!(tail_fraction > 0.0 && tail_fraction <= 1.0))
    throw Error(Errc::InvalidArgument, "tail fraction must lie in (0, 1]");
  return hi - static_cast<long>(std::floor(tail_fraction * static_cast<double>(hi - lo)));
}

OscillationVerdictDiscrete discrete_oscillation_check(const DiscreteSolution& sol, double tail_fraction, int window) {
  const int w = window > 0 ? window : 2 * (sol.k + 1);
  const long lo = sol.n_lo();
  const long hi = sol.n_hi();
  if (sol.z.empty()) throw Error(Errc::TooShort, "empty solution");
  const long s = tail_start(lo, hi, tail_fraction);
  if (hi - s + 1 < 2L * w)
    throw Error(Errc::TooShort, "tail holds " + std::to_string(hi - s + 1) + " points, need " +
                                    std::to_string(2 * w));

  const auto& k = kernels::active();
  std::vector<std::uint8_t> change(sol.z.size() > 0 ? sol.z.size() - 1 : 0);
  k.sign_changes(sol.z.values.data(), sol.z.size(), change.data());

  OscillationVerdictDiscrete out;
  out.tail_window = {s, hi};
  for (std::size_t i = change.size(); i-- > 0;) {
    if (change[i]) {
      out.last_sign_change = lo + static_cast<long>(i);
      break;
    }
  }

  // Sliding windows of w consecutive pair starts within [s, hi - 1].
  bool every_window = true;
  bool any_change = false;
  long last_change = s - 1 - w;  // sentinel: no change seen yet
  for (long n = s; n <= hi - 1; ++n) {
    if (change[static_cast<std::size_t>(n - lo)]) {
      any_change = true;
      last_change = n;
    }
    if (n - s + 1 >= w && last_change < n - w + 1) {
      every_window = false;
    }
  }
  if (any_change && every_window) {
    out.verdict = Sign::Oscillatory;
    return out;
  }
  if (!any_change) {
    const auto tail = sol.z.view(s, hi);
    const auto mm = k.min_max(tail.data(), tail.size());
    if (mm.min > 0.0) {
      out.verdict = Sign::EventuallyPositive;
      return out;
    }
    if (mm.max < 0.0) {
      out.verdict = Sign::EventuallyNegative;
      return out;
    }
  }
  out.verdict = Sign::Inconclusive;
  return out;
}

}  // namespace idepca
