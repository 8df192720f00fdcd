#pragma once

#include <optional>
#include <span>
#include <string_view>
#include <utility>

#include "idepca/reduction.hpp"
#include "idepca/sequence.hpp"

namespace idepca {

struct DiscreteSolution {
  IndexedSeq z;  // z_n over [n_lo, n_hi]
  Direction direction = Direction::Delayed;
  int k = 1;
  // First index whose value overflowed; the recursion stopped before it.
  std::optional<long> overflow_index;

  long n_lo() const noexcept { return z.first; }
  long n_hi() const noexcept { return z.last(); }
  double at(long n) const { return z.at(n); }
  // Restriction to [lo, hi] (clipped).
  DiscreteSolution slice(long lo, long hi) const;
};

enum class Sign { Oscillatory, EventuallyPositive, EventuallyNegative, Inconclusive };
std::string_view to_string(Sign s);

struct OscillationVerdictDiscrete {
  Sign verdict = Sign::Inconclusive;
  std::optional<long> last_sign_change;  // last n with z_n z_{n+1} <= 0
  std::pair<long, long> tail_window{0, 0};
};

// z_{n+1} = a_n z_n + b_n z_{n-k} for n = n0 .. horizon-1; init holds
// z_{n0-k} .. z_{n0}.
DiscreteSolution solve_delayed(const DiscreteSystem& ds, std::span<const double> init);

// z_{n+1} = a_n z_n + b_n z_{n+k} imposed for n0 < n <= horizon - k; init holds
// z_{n0} .. z_{n0+k}. Solved forward as z_{n+k} = (z_{n+1} - a_n z_n) / b_n
// (k >= 2) or z_{n+1} = a_n z_n / (1 - b_n) (k = 1).
DiscreteSolution solve_advanced(const DiscreteSystem& ds, std::span<const double> init);

DiscreteSolution solve(const DiscreteSystem& ds, std::span<const double> init);

// y_n = alpha_n z_n wherever both are defined.
IndexedSeq reduce_to_y(const DiscreteSystem& ds, const DiscreteSolution& sol);

// Indices n at which the original recursion is imposed and all of its terms
// are available in the solution.
std::pair<long, long> recursion_range(const DiscreteSystem& ds, const DiscreteSolution& sol);

// max over recursion_range of |z_{n+1} - a_n z_n - b_n z_{n-+k}| / max(1, |z_{n+1}|).
double recursion_residual(const DiscreteSystem& ds, const DiscreteSolution& sol);

// max |Delta y_n - Q_n y_{n-+k}| over the indices where Q_n and the recursion
// are both defined, each relative to the largest of |y_{n+1}|, |y_n|,
// |Q_n y_{n-+k}|.
double reduced_residual(const DiscreteSystem& ds, const DiscreteSolution& sol);

// First index of the examined tail of [lo, hi]: hi - floor(fraction * (hi - lo)).
long tail_start(long lo, long hi, double tail_fraction);

// window = 0 selects the default 2(k + 1). Throws TooShort when the tail holds
// fewer than 2 * window points.
OscillationVerdictDiscrete discrete_oscillation_check(const DiscreteSolution& sol, double tail_fraction = 0.5,
                                                      int window = 0);

}  // namespace idepca
