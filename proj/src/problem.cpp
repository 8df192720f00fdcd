#include "idepca/problem.hpp"

#include <cmath>
#include <string>

#include "idepca/error.hpp"

namespace idepca {

std::string_view to_string(Direction d) { return d == Direction::Delayed ? "delayed" : "advanced"; }

double ImpulseSpec::factor(long n) const {
  const double f = std::visit(
      [n](const auto& form) -> double {
        using T = std::decay_t<decltype(form)>;
        if constexpr (std::is_same_v<T, NoImpulse>) {
          return 1.0;
        } else if constexpr (std::is_same_v<T, ConstantFactor>) {
          return form.factor;
        } else if constexpr (std::is_same_v<T, FactorFormula>) {
          return form.factor(static_cast<double>(n));
        } else {
          if (n >= 0 && static_cast<std::size_t>(n) < form.table.size()) return form.table[static_cast<std::size_t>(n)];
          return form.fallback;
        }
      },
      form_);
  if (!std::isfinite(f)) throw Error(Errc::NonFiniteImpulseFactor, "1 + c_n is not finite").with_index(n);
  if (f == 0.0) throw Error(Errc::ZeroImpulseFactor, "1 + c_n = 0").with_index(n);
  return f;
}

void ProblemSpec::validate() const {
  auto fail = [](const std::string& what) { throw Error(Errc::InvalidArgument, what); };
  if (k < 1) fail("k must be at least 1");
  if (horizon <= n0 + k) fail("horizon must exceed n0 + k");
  if (initial_window.size() != static_cast<std::size_t>(k) + 1)
    fail("initial_window must hold k + 1 = " + std::to_string(k + 1) + " values");
  for (double v : initial_window)
    if (!std::isfinite(v)) fail("initial_window values must be finite");
  if (!std::isfinite(t_start)) fail("t_start must be finite");
  // Delayed Q_n needs a on [n - k, n + 1] with n - k >= n0, so n0 is the
  // earliest time ever touched.
  if (static_cast<double>(n0) < t_start) fail("n0 must not precede t_start");
  if (a.variable() != "t" || b.variable() != "t") fail("a and b must be expressions in t");
}

}  // namespace idepca
