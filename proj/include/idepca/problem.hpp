#pragma once

#include <string_view>
#include <variant>
#include <vector>

#include "idepca/expr.hpp"

namespace idepca {

// [t - k] (Delayed) or [t + k] (Advanced) as the deviating argument.
enum class Direction { Delayed, Advanced };

std::string_view to_string(Direction d);

struct NoImpulse {};
struct ConstantFactor {
  double factor = 1.0;  // 1 + c_n for every n
};
struct FactorFormula {
  Expr factor;  // 1 + c_n as an expression in "n"
};
// table[n] is 1 + c_n for absolute node index n >= 0; other indices use fallback.
struct FactorTable {
  std::vector<double> table;
  double fallback = 1.0;
};

// Jump law z(n) = (1 + c_n) z(n^-) at integer nodes.
class ImpulseSpec {
 public:
  using Form = std::variant<NoImpulse, ConstantFactor, FactorFormula, FactorTable>;

  ImpulseSpec() = default;
  ImpulseSpec(Form form) : form_(std::move(form)) {}  // NOLINT(google-explicit-constructor)

  // 1 + c_n. Throws ZeroImpulseFactor / NonFiniteImpulseFactor with index n.
  double factor(long n) const;
  bool is_none() const noexcept { return std::holds_alternative<NoImpulse>(form_); }
  const Form& form() const noexcept { return form_; }

 private:
  Form form_;
};

struct ProblemSpec {
  Expr a;  // in t
  Expr b;  // in t
  Direction direction = Direction::Delayed;
  int k = 1;  // delay, or advance l for Advanced
  ImpulseSpec impulse;
  // k + 1 values: z at n0-k..n0 (Delayed) or n0..n0+k (Advanced).
  std::vector<double> initial_window;
  long n0 = 0;
  long horizon = 0;
  // Left end of the time domain; a and b need only be finite on [t_start, inf).
  double t_start = 0.0;

  // Structural checks (k, horizon, window size, n0 >= t_start). Throws
  // Error(InvalidArgument).
  void validate() const;
};

}  // namespace idepca
