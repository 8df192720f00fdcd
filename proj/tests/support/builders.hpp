#pragma once

#include <vector>

#include "idepca/problem.hpp"
#include "idepca/reduction.hpp"

namespace idepca::testing {

inline ProblemSpec make_spec(const char* a, const char* b, Direction dir, int k, ImpulseSpec impulse, long n0,
                             long horizon, std::vector<double> window = {}) {
  ProblemSpec s;
  s.a = parse(a, "t");
  s.b = parse(b, "t");
  s.direction = dir;
  s.k = k;
  s.impulse = std::move(impulse);
  s.n0 = n0;
  s.horizon = horizon;
  s.initial_window = window.empty() ? std::vector<double>(static_cast<std::size_t>(k) + 1, 1.0) : std::move(window);
  return s;
}

inline ProblemSpec example1(long horizon = 50) {
  return make_spec("-1", "-1/3", Direction::Delayed, 3, ImpulseSpec(ConstantFactor{0.5}), 0, horizon);
}

inline ProblemSpec example2(long horizon = 100) {
  return make_spec("1/t", "1/t", Direction::Advanced, 5, ImpulseSpec(ConstantFactor{0.5}), 1, horizon);
}

// System with constant raw coefficients over [n0, n0 + len).
inline DiscreteSystem constant_system(Direction dir, int k, double a, double b, long len = 200, long n0 = 0) {
  const std::vector<double> as(static_cast<std::size_t>(len), a);
  const std::vector<double> bs(static_cast<std::size_t>(len), b);
  return assemble_discrete_system(n0, dir, k, as, bs);
}

}  // namespace idepca::testing
