#include "idepca/error.hpp"

#include <sstream>
#include <utility>

namespace idepca {

std::string_view to_string(Errc code) {
  switch (code) {
    case Errc::Parse: return "ParseError";
    case Errc::Schema: return "SchemaError";
    case Errc::InvalidArgument: return "InvalidArgument";
    case Errc::SingularIntegrand: return "SingularIntegrand";
    case Errc::NoConvergence: return "NoConvergence";
    case Errc::ZeroImpulseFactor: return "ZeroImpulseFactor";
    case Errc::NonFiniteImpulseFactor: return "NonFiniteImpulseFactor";
    case Errc::ZeroCoefficient: return "ZeroCoefficient";
    case Errc::DivisionByZero: return "DivisionByZero";
    case Errc::DegenerateAdvance: return "DegenerateAdvance";
    case Errc::IndexOutOfRange: return "IndexOutOfRange";
    case Errc::DiagnosticMismatch: return "DiagnosticMismatch";
    case Errc::WrongDirection: return "WrongDirection";
    case Errc::AdvanceTooSmall: return "AdvanceTooSmall";
    case Errc::TooShort: return "TooShort";
  }
  return "Unknown";
}

Error::Error(Errc code, const std::string& message) : Error(code, message, std::nullopt, std::nullopt) {}

Error::Error(Errc code, std::string detail, std::optional<long> index, std::optional<double> abscissa)
    : std::runtime_error(compose(code, detail, index, abscissa)),
      code_(code),
      detail_(std::move(detail)),
      index_(index),
      abscissa_(abscissa) {}

std::string Error::compose(Errc code, const std::string& detail, std::optional<long> index,
                           std::optional<double> abscissa) {
  std::ostringstream os;
  os << to_string(code);
  if (index) os << " at index n=" << *index;
  if (abscissa) {
    os.precision(17);
    os << " (abscissa " << *abscissa << ")";
  }
  if (!detail.empty()) os << ": " << detail;
  return os.str();
}

Error Error::with_index(long n) const {
  // The innermost index is the meaningful one; keep it if already set.
  return Error(code_, detail_, index_ ? index_ : std::optional<long>(n), abscissa_);
}

Error Error::with_abscissa(double x) const { return Error(code_, detail_, index_, x); }

bool Error::is_input_error() const noexcept {
  switch (code_) {
    case Errc::Parse:
    case Errc::Schema:
    case Errc::InvalidArgument:
    case Errc::ZeroImpulseFactor:
    case Errc::NonFiniteImpulseFactor:
    case Errc::WrongDirection:
    case Errc::AdvanceTooSmall:
      return true;
    default:
      return false;
  }
}

ParseError::ParseError(std::size_t position, const std::string& message)
    : Error(Errc::Parse, "offset " + std::to_string(position) + ": " + message),
      position_(position),
      message_(message) {}

}  // namespace idepca
