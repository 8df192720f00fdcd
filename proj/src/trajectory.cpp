#include "idepca/trajectory.hpp"

#include <cmath>
#include <string>

#include "idepca/error.hpp"
#include "idepca/kernels.hpp"
#include "idepca/quad.hpp"

namespace idepca {
namespace {

long other_index(Direction d, int k, long n) { return d == Direction::Delayed ? n - k : n + k; }

// z(t) on [n, n+1] from z_n and the deviating value, without the jump.
double propagate(const ProblemSpec& spec, double n, double t, double zn, double z_other, double tol) {
  const double transported = transported_integral(spec.a, spec.b, n, t, t, tol).value;
  return std::exp(exponent(spec.a, n, t, tol)) * zn + z_other * transported;
}

}  // namespace

std::pair<long, long> trajectory_intervals(const DiscreteSystem& ds, const DiscreteSolution& sol) {
  if (ds.direction == Direction::Delayed) return {ds.n0, std::min(sol.n_hi(), ds.horizon)};
  return {ds.n0 + 1, std::min(sol.n_hi() - ds.k, ds.horizon - 1) + 1};
}

Trajectory reconstruct(const ProblemSpec& spec, const DiscreteSystem& ds, const DiscreteSolution& sol,
                       int samples_per_interval, double tol) {
  if (samples_per_interval < 1) throw Error(Errc::InvalidArgument, "samples_per_interval must be positive");
  const auto [first, end] = trajectory_intervals(ds, sol);
  if (end <= first) throw Error(Errc::TooShort, "solution too short to reconstruct any interval");

  Trajectory traj;
  traj.first_interval = first;
  traj.last_node = end;
  traj.direction = ds.direction;
  traj.k = ds.k;
  traj.samples.reserve(static_cast<std::size_t>(end - first) * static_cast<std::size_t>(samples_per_interval) + 1);
  traj.nodes.reserve(static_cast<std::size_t>(end - first));

  const double step = 1.0 / samples_per_interval;
  for (long n = first; n < end; ++n) {
    try {
      const double nd = static_cast<double>(n);
      const double zn = sol.at(n);
      const double z_other = sol.at(other_index(ds.direction, ds.k, n));
      traj.samples.push_back({nd, zn});
      for (int j = 1; j < samples_per_interval; ++j) {
        const double t = nd + j * step;
        traj.samples.push_back({t, propagate(spec, nd, t, zn, z_other, tol)});
      }
      const double left = propagate(spec, nd, nd + 1.0, zn, z_other, tol);
      const double factor = spec.impulse.factor(n + 1);
      traj.nodes.push_back({n + 1, left, sol.at(n + 1), factor});
    } catch (const Error& e) {
      throw e.with_index(n);
    }
  }
  traj.samples.push_back({static_cast<double>(end), sol.at(end)});
  return traj;
}

OscillationVerdictContinuous continuous_oscillation_check(const Trajectory& traj, double tail_fraction,
                                                          int window_intervals) {
  const long w = window_intervals > 0 ? window_intervals : 2L * (traj.k + 1);
  const long lo = traj.first_interval;
  const long hi = traj.last_node;
  const long s = tail_start(lo, hi, tail_fraction);
  if (hi - s < 2 * w)
    throw Error(Errc::TooShort, "tail spans " + std::to_string(hi - s) + " intervals, need " + std::to_string(2 * w));

  const auto& k = kernels::active();
  const std::size_t intervals = static_cast<std::size_t>(hi - lo);
  const std::size_t per = (traj.samples.size() - 1) / intervals;

  // Extremes of each closed interval [m, m+1]: its samples, the left limit at
  // m+1 and the value z(m+1).
  std::vector<kernels::MinMax> ext(intervals);
  std::vector<double> zs(per + 2);
  for (std::size_t m = 0; m < intervals; ++m) {
    for (std::size_t j = 0; j < per; ++j) zs[j] = traj.samples[m * per + j].z;
    zs[per] = traj.nodes[m].z_left;
    zs[per + 1] = traj.samples[(m + 1) * per].z;
    ext[m] = k.min_max(zs.data(), zs.size());
  }

  OscillationVerdictContinuous out;
  out.tail_window = {s, hi};

  bool every_block = true;
  for (long p = s; p + w <= hi; ++p) {
    double mn = ext[static_cast<std::size_t>(p - lo)].min;
    double mx = ext[static_cast<std::size_t>(p - lo)].max;
    for (long m = p + 1; m < p + w; ++m) {
      mn = std::min(mn, ext[static_cast<std::size_t>(m - lo)].min);
      mx = std::max(mx, ext[static_cast<std::size_t>(m - lo)].max);
    }
    if (!(mn <= 0.0 && mx >= 0.0)) {
      every_block = false;
      break;
    }
  }
  if (every_block) {
    out.verdict = Sign::Oscillatory;
    return out;
  }

  double mn = ext[static_cast<std::size_t>(s - lo)].min;
  double mx = ext[static_cast<std::size_t>(s - lo)].max;
  for (long m = s + 1; m < hi; ++m) {
    mn = std::min(mn, ext[static_cast<std::size_t>(m - lo)].min);
    mx = std::max(mx, ext[static_cast<std::size_t>(m - lo)].max);
  }
  if (mn > 0.0) {
    out.verdict = Sign::EventuallyPositive;
  } else if (mx < 0.0) {
    out.verdict = Sign::EventuallyNegative;
  } else {
    out.verdict = Sign::Inconclusive;
  }
  return out;
}

double max_node_discontinuity(const Trajectory& traj) {
  double worst = 0.0;
  for (const auto& node : traj.nodes)
    worst = std::max(worst, std::fabs(node.z_left - node.z_right) / std::max(1.0, std::fabs(node.z_left)));
  return worst;
}

double node_consistency(const DiscreteSystem& ds, const DiscreteSolution& sol, const Trajectory& traj) {
  double worst = 0.0;
  for (const auto& node : traj.nodes) {
    const long n = node.n - 1;
    const double target = sol.at(node.n);
    const double driven_a = ds.a(n) * sol.at(n);
    const double driven_b = ds.b(n) * sol.at(other_index(ds.direction, ds.k, n));
    const double scale = std::max({std::fabs(target), std::fabs(driven_a), std::fabs(driven_b)});
    const double diff = std::fabs(node.jump_factor * node.z_left - target);
    if (scale > 0.0) worst = std::max(worst, diff / scale);
  }
  return worst;
}

}  // namespace idepca
