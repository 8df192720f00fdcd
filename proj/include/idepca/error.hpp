#pragma once

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>

namespace idepca {

enum class Errc {
  Parse,
  Schema,
  InvalidArgument,
  SingularIntegrand,
  NoConvergence,
  ZeroImpulseFactor,
  NonFiniteImpulseFactor,
  ZeroCoefficient,
  DivisionByZero,
  DegenerateAdvance,
  IndexOutOfRange,
  DiagnosticMismatch,
  WrongDirection,
  AdvanceTooSmall,
  TooShort,
};

std::string_view to_string(Errc code);

// Single exception type for the library. Numeric failures that happen while
// sweeping an index range carry that index.
class Error : public std::runtime_error {
 public:
  Error(Errc code, const std::string& message);

  Errc code() const noexcept { return code_; }
  const std::string& detail() const noexcept { return detail_; }
  std::optional<long> index() const noexcept { return index_; }
  std::optional<double> abscissa() const noexcept { return abscissa_; }

  Error with_index(long n) const;
  Error with_abscissa(double x) const;

  // Standing-hypothesis violations on user input (exit code 2) as opposed to
  // numeric breakdowns (exit code 3).
  bool is_input_error() const noexcept;

 private:
  Error(Errc code, std::string detail, std::optional<long> index, std::optional<double> abscissa);
  static std::string compose(Errc code, const std::string& detail, std::optional<long> index,
                             std::optional<double> abscissa);

  Errc code_;
  std::string detail_;
  std::optional<long> index_;
  std::optional<double> abscissa_;
};

class ParseError : public Error {
 public:
  ParseError(std::size_t position, const std::string& message);
  std::size_t position() const noexcept { return position_; }
  const std::string& message() const noexcept { return message_; }

 private:
  std::size_t position_;
  std::string message_;
};

}  // namespace idepca
