#pragma once

// Continuous solution z(t) rebuilt from the discrete skeleton. On [n, n+1)
//
//   z(t) = exp(A(n, t)) z_n + z_{n-+k} * int_n^t exp(A(s, t)) b(s) ds,
//
// with A(s, t) = int_s^t a, and z(n) = (1 + c_n) z(n^-) at the nodes.

#include <vector>

#include "idepca/diffeq.hpp"
#include "idepca/problem.hpp"
#include "idepca/reduction.hpp"

namespace idepca {

inline constexpr int kDefaultSamplesPerInterval = 32;

struct TrajectorySample {
  double t = 0.0;
  double z = 0.0;  // right-continuous value
};

struct TrajectoryNode {
  long n = 0;
  double z_left = 0.0;   // z(n^-)
  double z_right = 0.0;  // z(n) = z_n of the discrete solution
  double jump_factor = 1.0;
};

struct Trajectory {
  // Strictly increasing in t; node times carry z(n), the last sample is the
  // final node.
  std::vector<TrajectorySample> samples;
  // Every node reached from the left, in increasing n.
  std::vector<TrajectoryNode> nodes;
  long first_interval = 0;  // samples cover [first_interval, last_node]
  long last_node = 0;
  Direction direction = Direction::Delayed;
  int k = 1;
};

// Delayed systems are rebuilt on [n0, n_hi]; advanced ones on
// [n0 + 1, n_hi - k + 1], where the difference equation holds and the
// advanced value z_{n+k} exists.
Trajectory reconstruct(const ProblemSpec& spec, const DiscreteSystem& ds, const DiscreteSolution& sol,
                       int samples_per_interval = kDefaultSamplesPerInterval, double tol = kDefaultTol);

// Interval range [first, last) that reconstruct() will cover for this solution.
std::pair<long, long> trajectory_intervals(const DiscreteSystem& ds, const DiscreteSolution& sol);

struct OscillationVerdictContinuous {
  Sign verdict = Sign::Inconclusive;
  std::pair<long, long> tail_window{0, 0};  // in node indices
};

// Blocks [p, p + window_intervals] of the tail, sliding by one interval, must
// each hold a sample <= 0 and a sample >= 0 (left limits count as samples).
// window_intervals = 0 selects 2(k + 1).
OscillationVerdictContinuous continuous_oscillation_check(const Trajectory& traj, double tail_fraction = 0.5,
                                                          int window_intervals = 0);

// Largest |z_left - z_right| / max(1, |z_left|) over the nodes.
double max_node_discontinuity(const Trajectory& traj);

// Largest |factor * z_left(n) - z_n| / scale(n) over the nodes, where scale is
// the magnitude of the largest term of the recursion producing z_n.
double node_consistency(const DiscreteSystem& ds, const DiscreteSolution& sol, const Trajectory& traj);

}  // namespace idepca
